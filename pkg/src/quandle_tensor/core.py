"""Finite quandles and symmetric quandles on the carrier {0, ..., n-1}.

A quandle is stored as a dense ``n x n`` table for ``x * y``; the table for
``x ~* y`` (the inverse operation) is derived by inverting each column
permutation.  All objects here are immutable once built.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .orbits import UnionFind

__all__ = [
    "Violation",
    "QuandleError",
    "AxiomError",
    "BoundError",
    "Quandle",
    "GoodInvolution",
    "QuandleHom",
    "check_quandle",
    "validate_quandle",
    "op",
    "inv_op",
    "act_word",
    "left_act_word",
    "make_dihedral",
    "make_conjugation",
    "make_trivial",
    "check_good_involution",
    "validate_good_involution",
    "enumerate_good_involutions",
    "involutions",
    "symmetric_double",
    "encode_doubled",
    "decode_doubled",
    "check_hom",
    "validate_hom",
    "double_hom",
    "connected_components",
]


class QuandleError(ValueError):
    """Malformed input: wrong shape, out-of-range entries, bad elements."""


class BoundError(QuandleError):
    """A search would exceed its configured size bound."""


@dataclass(frozen=True, order=True)
class Violation:
    axiom: str
    witness: tuple[int, ...]

    def __str__(self):
        return f"{self.axiom} fails at {self.witness}"


class AxiomError(QuandleError):
    """Raised when a structure fails its axioms; carries every witness found."""

    def __init__(self, what: str, violations: Sequence[Violation]):
        self.violations = list(violations)
        head = ", ".join(str(v) for v in self.violations[:3])
        more = len(self.violations) - 3
        if more > 0:
            head += f" (+{more} more)"
        super().__init__(f"not a {what}: {head}")


def _frozen(a) -> np.ndarray:
    a = np.array(a, dtype=np.int64)
    a.setflags(write=False)
    return a


def _as_table(table) -> np.ndarray:
    try:
        t = np.asarray(table, dtype=np.int64)
    except (TypeError, ValueError) as exc:
        raise QuandleError(f"table is not an integer matrix: {exc}") from None
    if t.ndim != 2 or t.shape[0] != t.shape[1]:
        raise QuandleError(f"table must be square, got shape {t.shape}")
    if t.shape[0] == 0:
        raise QuandleError("table is empty")
    n = t.shape[0]
    bad = np.argwhere((t < 0) | (t >= n))
    if len(bad):
        x, y = bad[0]
        raise QuandleError(f"entry [{x}][{y}] = {t[x, y]} is outside 0..{n - 1}")
    return t


def _invert_columns(t: np.ndarray) -> np.ndarray:
    n = t.shape[0]
    inv = np.empty_like(t)
    xs = np.arange(n)
    for y in range(n):
        inv[t[:, y], y] = xs
    return inv


@dataclass(frozen=True, eq=False)
class Quandle:
    """A validated finite quandle.

    Build instances through :func:`validate_quandle` or the ``make_*``
    constructors; the raw initializer trusts its arguments.

    ``family`` optionally records how the quandle was constructed, e.g.
    ``("dihedral", 5)`` or ``("double", ("dihedral", 5))``.  Reports use it to
    attach closed-form class names.
    """

    table: np.ndarray
    inv_table: np.ndarray
    family: tuple | None = None

    @property
    def n(self) -> int:
        return self.table.shape[0]

    def __len__(self):
        return self.n

    def __eq__(self, other):
        if not isinstance(other, Quandle):
            return NotImplemented
        return np.array_equal(self.table, other.table)

    def __hash__(self):
        return hash(self.table.tobytes())

    def __repr__(self):
        tag = f", family={self.family!r}" if self.family else ""
        return f"Quandle(n={self.n}{tag})"

    def op(self, x: int, y: int) -> int:
        self._check(x, y)
        return int(self.table[x, y])

    def inv_op(self, x: int, y: int) -> int:
        self._check(x, y)
        return int(self.inv_table[x, y])

    def _check(self, *elements):
        for e in elements:
            if not 0 <= e < self.n:
                raise QuandleError(f"element {e} is outside 0..{self.n - 1}")

    def rows(self) -> list[list[int]]:
        return self.table.tolist()


def check_quandle(table, inv_table=None) -> list[Violation]:
    """Return every axiom violation of ``table`` (empty list if it is a quandle).

    Violations are reported as ``Q1`` (witness ``(x,)``), ``Q2`` (column ``y``
    is not a bijection: witness ``(x1, x2, y)`` with ``x1 * y == x2 * y``),
    ``Q3`` (witness ``(x, y, z)``) and ``inv`` when a supplied inverse table
    disagrees with the one derived from ``table`` (witness ``(x, y)``).
    """
    t = _as_table(table)
    n = t.shape[0]
    out = []

    for x in np.flatnonzero(t[np.arange(n), np.arange(n)] != np.arange(n)):
        out.append(Violation("Q1", (int(x),)))

    bijective = True
    for y in range(n):
        col = t[:, y]
        seen = {}
        for x, v in enumerate(col.tolist()):
            if v in seen:
                out.append(Violation("Q2", (seen[v], x, y)))
                bijective = False
            else:
                seen[v] = x

    for z in range(n):
        lhs = t[t, z]
        cz = t[:, z]
        rhs = t[cz[:, None], cz[None, :]]
        for x, y in np.argwhere(lhs != rhs):
            out.append(Violation("Q3", (int(x), int(y), z)))

    if inv_table is not None:
        given = _as_table(inv_table)
        if given.shape != t.shape:
            raise QuandleError("inverse table shape differs from table shape")
        if bijective:
            for x, y in np.argwhere(given != _invert_columns(t)):
                out.append(Violation("inv", (int(x), int(y))))

    return sorted(out)


def validate_quandle(table, inv_table=None, family=None) -> Quandle:
    """Check all quandle axioms on ``table`` and return the :class:`Quandle`.

    Raises :class:`AxiomError` listing every violation, or
    :class:`QuandleError` for malformed input.
    """
    violations = check_quandle(table, inv_table)
    if violations:
        raise AxiomError("quandle", violations)
    t = _as_table(table)
    return Quandle(_frozen(t), _frozen(_invert_columns(t)), family)


def op(q: Quandle, x: int, y: int) -> int:
    return q.op(x, y)


def inv_op(q: Quandle, x: int, y: int) -> int:
    return q.inv_op(x, y)


def act_word(q: Quandle, x: int, word: Iterable[tuple[int, int]]) -> int:
    """Right action of a free-group word: ``x * ^e1 x1 * ^e2 x2 ...``.

    ``word`` is a sequence of ``(letter, sign)`` with sign ``+1`` for ``*``
    and ``-1`` for ``~*``.
    """
    q._check(x)
    for letter, sign in word:
        q._check(letter)
        if sign == 1:
            x = q.table[x, letter]
        elif sign == -1:
            x = q.inv_table[x, letter]
        else:
            raise QuandleError(f"sign must be +1 or -1, got {sign}")
    return int(x)


def left_act_word(q: Quandle, x: int, word: Sequence[tuple[int, int]]) -> int:
    """Left action ``g . x = x . g^-1``."""
    return act_word(q, x, [(a, -s) for a, s in reversed(list(word))])


def make_dihedral(n: int) -> Quandle:
    """Dihedral quandle R_n: ``x * y = x ~* y = 2y - x (mod n)``."""
    if n < 1:
        raise QuandleError("dihedral quandle needs n >= 1")
    x = np.arange(n)
    t = (2 * x[None, :] - x[:, None]) % n
    return Quandle(_frozen(t), _frozen(t), ("dihedral", n))


def make_trivial(n: int) -> Quandle:
    if n < 1:
        raise QuandleError("trivial quandle needs n >= 1")
    t = np.repeat(np.arange(n)[:, None], n, axis=1)
    return Quandle(_frozen(t), _frozen(t), ("trivial", n))


def _check_group(g: np.ndarray, inverse: np.ndarray) -> list[str]:
    n = g.shape[0]
    e = np.arange(n)
    problems = []
    if not (np.array_equal(g[0], e) and np.array_equal(g[:, 0], e)):
        problems.append("element 0 is not the identity")
    if inverse.shape != (n,) or inverse.min() < 0 or inverse.max() >= n:
        problems.append("inverse array has wrong length or range")
        return problems
    if not (np.all(g[e, inverse] == 0) and np.all(g[inverse, e] == 0)):
        problems.append("inverse array does not give inverses")
    # (ab)c == a(bc) for all a, b, c
    lhs = g[g[:, :, None], e[None, None, :]]
    rhs = g[e[:, None, None], g[None, :, :]]
    bad = np.argwhere(lhs != rhs)
    if len(bad):
        a, b, c = bad[0]
        problems.append(f"not associative at ({a}, {b}, {c})")
    return problems


def make_conjugation(group_table, inverse) -> Quandle:
    """Conjugation quandle of a group: ``a * b = b^-1 a b``, ``a ~* b = b a b^-1``.

    The Cayley table must have its identity at index 0.
    """
    g = _as_table(group_table)
    inv = np.asarray(inverse, dtype=np.int64)
    problems = _check_group(g, inv)
    if problems:
        raise QuandleError("not a group: " + "; ".join(problems))
    a = np.arange(g.shape[0])
    t = g[g[inv[None, :], a[:, None]], a[None, :]]
    it = g[g[a[None, :], a[:, None]], inv[None, :]]
    return Quandle(_frozen(t), _frozen(it), ("conjugation", g.shape[0]))


@dataclass(frozen=True, eq=False)
class GoodInvolution:
    quandle: Quandle
    rho: np.ndarray

    def __call__(self, x: int) -> int:
        return int(self.rho[x])

    def __eq__(self, other):
        if not isinstance(other, GoodInvolution):
            return NotImplemented
        return self.quandle == other.quandle and np.array_equal(self.rho, other.rho)

    def __hash__(self):
        return hash(self.rho.tobytes())

    def __repr__(self):
        return f"GoodInvolution({self.rho.tolist()})"

    def tolist(self) -> list[int]:
        return self.rho.tolist()


def _as_map(q_n: int, images, what: str, target_n: int | None = None) -> np.ndarray:
    target_n = q_n if target_n is None else target_n
    r = np.asarray(images, dtype=np.int64)
    if r.shape != (q_n,):
        raise QuandleError(f"{what} must have length {q_n}, got shape {r.shape}")
    if len(r) and (r.min() < 0 or r.max() >= target_n):
        raise QuandleError(f"{what} has entries outside 0..{target_n - 1}")
    return r


def check_good_involution(q: Quandle, rho) -> list[Violation]:
    """Violations of involutivity, S1 and S2 for ``rho`` on ``q``."""
    r = _as_map(q.n, rho, "involution")
    t, it = q.table, q.inv_table
    out = [Violation("involution", (int(x),)) for x in np.flatnonzero(r[r] != np.arange(q.n))]
    # S1: rho(x * y) == rho(x) * y
    for x, y in np.argwhere(r[t] != t[r, :]):
        out.append(Violation("S1", (int(x), int(y))))
    # S2: x * rho(y) == x ~* y
    for x, y in np.argwhere(t[:, r] != it):
        out.append(Violation("S2", (int(x), int(y))))
    return sorted(out)


def validate_good_involution(q: Quandle, rho) -> GoodInvolution:
    violations = check_good_involution(q, rho)
    if violations:
        raise AxiomError("good involution", violations)
    return GoodInvolution(q, _frozen(_as_map(q.n, rho, "involution")))


def involutions(n: int):
    """Yield every involution of {0..n-1} as a tuple, in lexicographic order."""
    img = [None] * n

    def rec(i):
        while i < n and img[i] is not None:
            i += 1
        if i == n:
            yield tuple(img)
            return
        # i is the smallest free point; it is fixed or paired with a later j
        img[i] = i
        yield from rec(i + 1)
        for j in range(i + 1, n):
            if img[j] is None:
                img[i], img[j] = j, i
                yield from rec(i + 1)
                img[j] = None
        img[i] = None

    yield from rec(0)


def enumerate_good_involutions(q: Quandle, bound: int = 10) -> list[GoodInvolution]:
    """All good involutions of ``q`` by exhaustive search over involutions."""
    if q.n > bound:
        raise BoundError(f"n = {q.n} exceeds the enumeration bound {bound}")
    t, it = q.table, q.inv_table
    found = []
    for cand in involutions(q.n):
        r = np.array(cand, dtype=np.int64)
        if np.array_equal(t[:, r], it) and np.array_equal(r[t], t[r, :]):
            found.append(GoodInvolution(q, _frozen(r)))
    found.sort(key=lambda g: tuple(g.tolist()))
    return found


def encode_doubled(n: int, x: int, sign: str) -> int:
    """Index of ``x^+`` (``x``) or ``x^-`` (``n + x``) in the symmetric double."""
    if not 0 <= x < n:
        raise QuandleError(f"element {x} is outside 0..{n - 1}")
    if sign == "+":
        return x
    if sign == "-":
        return n + x
    raise QuandleError(f"sign must be '+' or '-', got {sign!r}")


def decode_doubled(n: int, a: int) -> tuple[int, str]:
    if not 0 <= a < 2 * n:
        raise QuandleError(f"element {a} is outside 0..{2 * n - 1}")
    return (a, "+") if a < n else (a - n, "-")


def symmetric_double(q: Quandle) -> tuple[Quandle, GoodInvolution]:
    """The symmetric double D(q) together with the copy-swapping involution.

    ``x^s * y^+ = (x * y)^s`` and ``x^s * y^- = (x ~* y)^s``; the inverse
    operation swaps the roles of ``*`` and ``~*``.
    """
    n = q.n
    t, it = q.table, q.inv_table
    top = np.hstack([t, it])
    inv_top = np.hstack([it, t])
    table = np.vstack([top, top + n])
    inv_table = np.vstack([inv_top, inv_top + n])
    family = ("double", q.family) if q.family else None
    d = Quandle(_frozen(table), _frozen(inv_table), family)
    swap = np.concatenate([np.arange(n, 2 * n), np.arange(n)])
    return d, GoodInvolution(d, _frozen(swap))


@dataclass(frozen=True, eq=False)
class QuandleHom:
    source: Quandle
    target: Quandle
    map: np.ndarray = field(repr=False)

    def __call__(self, x: int) -> int:
        return int(self.map[x])

    def tolist(self) -> list[int]:
        return self.map.tolist()


def check_hom(f, source: Quandle, target: Quandle) -> list[Violation]:
    """Pairs ``(x, y)`` with ``f(x * y) != f(x) * f(y)``."""
    m = _as_map(source.n, f, "map", target.n)
    bad = np.argwhere(m[source.table] != target.table[m[:, None], m[None, :]])
    return [Violation("hom", (int(x), int(y))) for x, y in bad]


def validate_hom(f, source: Quandle, target: Quandle) -> QuandleHom:
    violations = check_hom(f, source, target)
    if violations:
        raise AxiomError("quandle homomorphism", violations)
    return QuandleHom(source, target, _frozen(_as_map(source.n, f, "map", target.n)))


def double_hom(f: QuandleHom) -> QuandleHom:
    """Extend ``f`` to the symmetric doubles by ``x^s -> f(x)^s``."""
    dx, _ = symmetric_double(f.source)
    dy, _ = symmetric_double(f.target)
    m = np.concatenate([f.map, f.map + f.target.n])
    return validate_hom(m, dx, dy)


def connected_components(q: Quandle) -> list[list[int]]:
    """Orbits of the carrier under all right translations, sorted by least element."""
    uf = UnionFind(q.n)
    for x, row in enumerate(q.table.tolist()):
        for v in row:
            uf.union(x, v)
    return uf.groups()
