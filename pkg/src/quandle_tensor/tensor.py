"""Canonical tensor product X (x) X, its involutions, quotients and 1-handle reports."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

import numpy as np

from .core import (
    GoodInvolution,
    Quandle,
    QuandleError,
    QuandleHom,
    check_good_involution,
    symmetric_double,
    validate_good_involution,
)
from .orbits import UnionFind, pair_orbit_labels

__all__ = [
    "TensorProduct",
    "ClassInvolution",
    "QuotientSet",
    "HandleReport",
    "tensor_product",
    "class_of",
    "tau_map",
    "rho_map",
    "quotient",
    "induced_map",
    "handle_report",
]

Pair = tuple[int, int]


class DescentError(RuntimeError):
    """A map on X x X failed to be constant on tensor classes."""


@dataclass(frozen=True, eq=False)
class TensorProduct:
    """Partition of X x X into orbits of the diagonal action.

    ``class_id[a, b]`` is the id of the class of ``(a, b)``; class ids follow
    the lexicographic order of the classes' least pairs, which are ``reps``.
    """

    quandle: Quandle
    class_id: np.ndarray = field(repr=False)

    @property
    def n(self) -> int:
        return self.quandle.n

    def __len__(self):
        return len(self.reps)

    def __repr__(self):
        return f"TensorProduct(n={self.n}, classes={len(self)})"

    def class_of(self, a: int, b: int) -> int:
        self.quandle._check(a, b)
        return int(self.class_id[a, b])

    @cached_property
    def reps(self) -> list[Pair]:
        flat = self.class_id.ravel()
        _, first = np.unique(flat, return_index=True)
        return [divmod(int(i), self.n) for i in first]

    @cached_property
    def classes(self) -> list[list[Pair]]:
        flat = self.class_id.ravel()
        order = np.argsort(flat, kind="stable")
        bounds = np.searchsorted(flat[order], np.arange(len(self.reps) + 1))
        n = self.n
        return [
            [divmod(int(i), n) for i in order[lo:hi]]
            for lo, hi in zip(bounds[:-1], bounds[1:])
        ]

    def sizes(self) -> list[int]:
        return np.bincount(self.class_id.ravel()).tolist()

    def partition(self) -> frozenset[frozenset[Pair]]:
        return frozenset(frozenset(c) for c in self.classes)


def tensor_product(q: Quandle) -> TensorProduct:
    """Orbit partition of X x X under ``(a, b) -> (a * y, b * y)``.

    Each right translation permutes the finite set X x X, so orbits under the
    ``*``-translations alone are already orbits of the free group action.
    """
    labels = pair_orbit_labels(q.table).reshape(q.n, q.n)
    labels.setflags(write=False)
    return TensorProduct(q, labels)


def class_of(T: TensorProduct, a: int, b: int) -> int:
    return T.class_of(a, b)


@dataclass(frozen=True)
class ClassInvolution:
    name: str
    map: tuple[int, ...]

    @property
    def order(self) -> int:
        return 1 if all(i == c for i, c in enumerate(self.map)) else 2

    def __call__(self, c: int) -> int:
        return self.map[c]


def _descend(T: TensorProduct, image_ids: np.ndarray, what: str) -> tuple[int, ...]:
    """Turn a pair-level map (given as target class ids per pair) into a class map."""
    reps = np.array(T.reps)
    m = image_ids[reps[:, 0], reps[:, 1]]
    bad = np.argwhere(m[T.class_id] != image_ids)
    if len(bad):
        a, b = bad[0]
        raise DescentError(f"{what} is not well defined on the class of ({a}, {b})")
    return tuple(int(c) for c in m)


def tau_map(T: TensorProduct) -> ClassInvolution:
    """``[a, b] -> [b, a]``."""
    return ClassInvolution("tau", _descend(T, T.class_id.T, "tau"))


def rho_map(T: TensorProduct, rho) -> ClassInvolution:
    """``[a, b] -> [rho(a), rho(b)]`` for a good involution ``rho``.

    ``rho`` may be a :class:`GoodInvolution` or a plain array; either way it
    must be an involution satisfying S1 on ``T.quandle``, otherwise it does not
    descend and :class:`QuandleError` is raised.
    """
    r = rho.rho if isinstance(rho, GoodInvolution) else np.asarray(rho, dtype=np.int64)
    if isinstance(rho, GoodInvolution) and rho.quandle != T.quandle:
        raise QuandleError("involution belongs to a different quandle")
    bad = [v for v in check_good_involution(T.quandle, r) if v.axiom in ("involution", "S1")]
    if bad:
        raise QuandleError(f"involution does not descend to the tensor product: {bad[0]}")
    images = T.class_id[r[:, None], r[None, :]]
    return ClassInvolution("rho", _descend(T, images, "rho"))


@dataclass(frozen=True)
class QuotientSet:
    blocks: tuple[tuple[int, ...], ...]
    generator_names: tuple[str, ...]

    def __len__(self):
        return len(self.blocks)

    @cached_property
    def block_of(self) -> dict[int, int]:
        return {c: i for i, block in enumerate(self.blocks) for c in block}

    @property
    def name(self) -> str:
        return ",".join(self.generator_names)


def quotient(T: TensorProduct, invs: Sequence[ClassInvolution]) -> QuotientSet:
    """Orbits of class ids under the group generated by ``invs``.

    Blocks are sorted tuples of class ids, ordered by their least id.
    """
    uf = UnionFind(len(T))
    for inv in invs:
        if len(inv.map) != len(T):
            raise QuandleError(f"{inv.name} acts on {len(inv.map)} classes, expected {len(T)}")
        for c, d in enumerate(inv.map):
            uf.union(c, d)
    return QuotientSet(
        tuple(tuple(g) for g in uf.groups()), tuple(inv.name for inv in invs)
    )


def induced_map(
    f: QuandleHom,
    TX: TensorProduct,
    TY: TensorProduct,
    rho_x=None,
    rho_y=None,
) -> tuple[int, ...]:
    """``[a, b] -> [f(a), f(b)]`` as a tuple indexed by the class ids of ``TX``.

    Well-definedness and commutation with ``tau`` are checked on every pair;
    when both involutions are given, commutation with ``rho`` is checked too.
    """
    if f.source != TX.quandle or f.target != TY.quandle:
        raise QuandleError("tensor products are not built over the hom's source and target")
    m = f.map
    fmap = _descend(TX, TY.class_id[m[:, None], m[None, :]], "f (x) f")
    tx, ty = tau_map(TX), tau_map(TY)
    if any(fmap[tx(c)] != ty(fmap[c]) for c in range(len(TX))):
        raise DescentError("f (x) f does not commute with tau")
    if rho_x is not None and rho_y is not None:
        rx, ry = rho_map(TX, rho_x), rho_map(TY, rho_y)
        if any(fmap[rx(c)] != ry(fmap[c]) for c in range(len(TX))):
            raise DescentError("f (x) f does not commute with rho")
    return fmap


def class_labels(T: TensorProduct) -> list[str]:
    from .dihedral import dihedral_class_label

    labels = []
    for a, b in T.reps:
        name = dihedral_class_label(T.quandle.family, a, b)
        labels.append(str(name) if name is not None else f"[{a},{b}]")
    return labels


@dataclass
class HandleInventory:
    """Classes of one tensor product and the blocks of one of its quotients."""

    classes: list[str]
    blocks: list[list[str]]
    quotient: str


@dataclass
class HandleReport:
    """Counts of strong/weak 1-handle classes, oriented and unoriented.

    ``oriented`` describes X (x) X and X (x) X / <tau> with X playing the knot
    quandle; ``unoriented`` describes the full knot symmetric quandle's tensor
    product and its quotient by <tau, rho>.  Either may be absent.
    """

    strong_oriented: int | None = None
    weak_oriented: int | None = None
    strong_all: int | None = None
    weak_all: int | None = None
    oriented: HandleInventory | None = None
    unoriented: HandleInventory | None = None

    def counts(self) -> dict[str, int | None]:
        return {
            "strong_oriented": self.strong_oriented,
            "weak_oriented": self.weak_oriented,
            "strong_all": self.strong_all,
            "weak_all": self.weak_all,
        }


def _inventory(T: TensorProduct, Q: QuotientSet) -> HandleInventory:
    labels = class_labels(T)
    return HandleInventory(
        labels, [[labels[c] for c in block] for block in Q.blocks], Q.name
    )


def handle_report(q: Quandle, rho=None, *, double: bool = False) -> HandleReport:
    """Classify 1-handles through tensor products of ``q``.

    * no ``rho``, ``double=False``: ``q`` plays the knot quandle; only the
      oriented counts are filled in.
    * ``double=True``: ``q`` plays the knot quandle and its symmetric double
      plays the full knot symmetric quandle; all four counts are filled in.
    * ``rho`` given: ``(q, rho)`` plays the knot symmetric quandle.  All four
      counts are computed on ``q`` itself.
    """
    if double and rho is not None:
        raise QuandleError("pass either rho or double=True, not both")
    report = HandleReport()
    T = tensor_product(q)
    tq = quotient(T, [tau_map(T)])
    report.strong_oriented, report.weak_oriented = len(T), len(tq)
    report.oriented = _inventory(T, tq)

    if double:
        full, rho = symmetric_double(q)
    elif rho is not None:
        full = q
        if not isinstance(rho, GoodInvolution):
            rho = validate_good_involution(q, rho)
        elif rho.quandle != q:
            raise QuandleError("involution belongs to a different quandle")
    else:
        return report

    TF = T if full is q else tensor_product(full)
    wq = quotient(TF, [tau_map(TF), rho_map(TF, rho)])
    report.strong_all, report.weak_all = len(TF), len(wq)
    report.unoriented = _inventory(TF, wq)
    return report
