"""Closed-form tensor products of dihedral quandles R_n and their symmetric doubles.

Classes are labelled ``E(k)`` (odd n) or ``E(k)_i`` (even n, ``i`` the parity
of the first coordinate), decorated with ``^{e,d}`` on the double.  Everything
here is built straight from the formulas; :func:`cross_check` compares it with
the generic orbit engine.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .core import decode_doubled, encode_doubled, make_dihedral, symmetric_double
from .tensor import quotient, rho_map, tau_map, tensor_product

__all__ = [
    "DihedralClassLabel",
    "distance",
    "dihedral_class_label",
    "closed_form_tensor",
    "closed_form_double_tensor",
    "closed_form_quotient",
    "closed_form_count",
    "QUOTIENTS",
    "Comparison",
    "CrossCheckReport",
    "cross_check",
]

SIGNS = ("+", "-")
QUOTIENTS = ("tensor/tau", "double/tau", "double/rho", "double/tau,rho")


@dataclass(frozen=True, order=True)
class DihedralClassLabel:
    k: int
    parity: int | None = None
    signs: tuple[str, str] | None = None

    def __str__(self):
        s = f"E({self.k})"
        if self.parity is not None:
            s += f"_{self.parity}"
        if self.signs is not None:
            s += "^{%s,%s}" % self.signs
        return s

    def with_signs(self, e: str, d: str) -> "DihedralClassLabel":
        return DihedralClassLabel(self.k, self.parity, (e, d))


def distance(n: int, x: int, y: int) -> int:
    """Circular distance on Z/nZ, a value in ``0..n//2``."""
    if n < 1:
        raise ValueError("n must be positive")
    for v in (x, y):
        if not 0 <= v < n:
            raise ValueError(f"element {v} is outside 0..{n - 1}")
    d = (x - y) % n
    return min(d, n - d)


def _base_label(n: int, a: int, b: int) -> DihedralClassLabel:
    return DihedralClassLabel(distance(n, a, b), a % 2 if n % 2 == 0 else None)


def dihedral_class_label(family, a: int, b: int) -> DihedralClassLabel | None:
    """Closed-form name of the class of ``(a, b)``, or None for other families."""
    if not family:
        return None
    if family[0] == "dihedral":
        return _base_label(family[1], a, b)
    if family[0] == "double" and family[1] and family[1][0] == "dihedral":
        n = family[1][1]
        (x, e), (y, d) = decode_doubled(n, a), decode_doubled(n, b)
        return _base_label(n, x, y).with_signs(e, d)
    return None


def _half(n: int) -> int:
    return (n - 1) // 2 if n % 2 else n // 2


def _base_labels(n: int) -> list[DihedralClassLabel]:
    m = _half(n)
    if n % 2:
        return [DihedralClassLabel(k) for k in range(m + 1)]
    return [DihedralClassLabel(k, i) for k in range(m + 1) for i in (0, 1)]


def _base_class(n: int, label: DihedralClassLabel) -> list[tuple[int, int]]:
    k = label.k
    starts = range(n) if label.parity is None else range(label.parity, n, 2)
    return sorted({(i, (i + s) % n) for i in starts for s in (k, -k)})


def closed_form_tensor(n: int) -> list[tuple[DihedralClassLabel, list[tuple[int, int]]]]:
    """Classes of R_n (x) R_n from the formulas, as ``(label, sorted pairs)``."""
    if n < 1:
        raise ValueError("n must be positive")
    return [(lab, _base_class(n, lab)) for lab in _base_labels(n)]


def closed_form_double_tensor(n: int) -> list[tuple[DihedralClassLabel, list[tuple[int, int]]]]:
    """Classes of D(R_n) (x) D(R_n), pairs given in the doubled encoding."""
    out = []
    for lab, pairs in closed_form_tensor(n):
        for e, d in product(SIGNS, SIGNS):
            cls = sorted((encode_doubled(n, x, e), encode_doubled(n, y, d)) for x, y in pairs)
            out.append((lab.with_signs(e, d), cls))
    return out


def closed_form_count(n: int, which: str) -> int:
    """Sizes of the tensor products and quotients as closed-form counts in ``m``."""
    m = _half(n)
    odd_n, odd_m = n % 2 == 1, m % 2 == 1
    counts = {
        "tensor": m + 1 if odd_n else 2 * m + 2,
        "double": 4 * (m + 1) if odd_n else 8 * (m + 1),
        "tensor/tau": m + 1 if odd_n else (3 * (m + 1) // 2 if odd_m else 3 * m // 2 + 2),
        "double/tau": 3 * (m + 1) if odd_n else (5 * (m + 1) if odd_m else 5 * m + 6),
        "double/rho": 2 * (m + 1) if odd_n else 4 * (m + 1),
        "double/tau,rho": 2 * (m + 1) if odd_n else (3 * (m + 1) if odd_m else 3 * m + 4),
    }
    if which not in counts:
        raise ValueError(f"unknown selector {which!r}; expected one of {sorted(counts)}")
    return counts[which]


def closed_form_quotient(n: int, which: str) -> list[list[DihedralClassLabel]]:
    """Blocks of a quotient, listed by label in the closed-form layout."""
    if which not in QUOTIENTS:
        raise ValueError(f"unknown selector {which!r}; expected one of {QUOTIENTS}")
    m = _half(n)
    E = DihedralClassLabel
    blocks = []
    for k in range(m + 1):
        if n % 2:
            e = E(k)
            if which == "tensor/tau":
                blocks.append([e])
            elif which == "double/tau":
                blocks += [
                    [e.with_signs("+", "+")],
                    [e.with_signs("-", "-")],
                    [e.with_signs("+", "-"), e.with_signs("-", "+")],
                ]
            else:
                blocks += [
                    [e.with_signs("+", "+"), e.with_signs("-", "-")],
                    [e.with_signs("+", "-"), e.with_signs("-", "+")],
                ]
            continue

        e0, e1 = E(k, 0), E(k, 1)
        if which == "tensor/tau":
            blocks += [[e0], [e1]] if k % 2 == 0 else [[e0, e1]]
        elif which == "double/rho" or (which == "double/tau,rho" and k % 2 == 0):
            for e in (e0, e1):
                blocks += [
                    [e.with_signs("+", "+"), e.with_signs("-", "-")],
                    [e.with_signs("+", "-"), e.with_signs("-", "+")],
                ]
        elif which == "double/tau,rho":
            blocks += [
                [s.with_signs(a, a) for s in (e0, e1) for a in SIGNS],
                [s.with_signs(a, b) for s in (e0, e1) for a, b in (("+", "-"), ("-", "+"))],
            ]
        elif k % 2 == 0:
            for e in (e0, e1):
                blocks += [
                    [e.with_signs("+", "+")],
                    [e.with_signs("-", "-")],
                    [e.with_signs("+", "-"), e.with_signs("-", "+")],
                ]
        else:
            blocks += [
                [e0.with_signs("+", "+"), e1.with_signs("+", "+")],
                [e0.with_signs("-", "-"), e1.with_signs("-", "-")],
                [e0.with_signs("+", "-"), e1.with_signs("-", "+")],
                [e1.with_signs("+", "-"), e0.with_signs("-", "+")],
            ]
    return blocks


@dataclass
class Comparison:
    name: str
    expected: object
    actual: object
    ok: bool


@dataclass
class CrossCheckReport:
    n: int
    comparisons: list[Comparison] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.comparisons)

    def add(self, name, expected, actual, ok=None):
        self.comparisons.append(
            Comparison(name, expected, actual, expected == actual if ok is None else ok)
        )


def _partition(classes) -> frozenset:
    return frozenset(frozenset(pairs) for _, pairs in classes)


def _check_blocks(report, name, T, closed, labelled, generic):
    # map labels to engine class ids through any member pair
    ids = {lab: T.class_of(*pairs[0]) for lab, pairs in labelled}
    expected = frozenset(frozenset(ids[lab] for lab in block) for block in closed)
    actual = frozenset(frozenset(block) for block in generic.blocks)
    report.add(f"{name} blocks", len(expected), len(actual), expected == actual)


def cross_check(n: int, include_double: bool = True) -> CrossCheckReport:
    """Compare the closed forms for R_n (and D(R_n)) with the generic engine."""
    if n < 1:
        raise ValueError("n must be positive")
    report = CrossCheckReport(n)
    if n <= 2:
        report.notes.append(f"n = {n}: formulas applied literally (m = {_half(n)})")

    q = make_dihedral(n)
    T = tensor_product(q)
    closed = closed_form_tensor(n)
    report.add("tensor count", closed_form_count(n, "tensor"), len(T))
    report.add("tensor partition", len(closed), len(T), _partition(closed) == T.partition())
    tq = quotient(T, [tau_map(T)])
    report.add("tensor/tau count", closed_form_count(n, "tensor/tau"), len(tq))
    _check_blocks(report, "tensor/tau", T, closed_form_quotient(n, "tensor/tau"), closed, tq)

    if include_double:
        d, rho = symmetric_double(q)
        TD = tensor_product(d)
        dclosed = closed_form_double_tensor(n)
        report.add("double count", closed_form_count(n, "double"), len(TD))
        report.add("double partition", len(dclosed), len(TD), _partition(dclosed) == TD.partition())
        tau, r = tau_map(TD), rho_map(TD, rho)
        for which, invs in (
            ("double/tau", [tau]),
            ("double/rho", [r]),
            ("double/tau,rho", [tau, r]),
        ):
            qs = quotient(TD, invs)
            report.add(f"{which} count", closed_form_count(n, which), len(qs))
            _check_blocks(report, which, TD, closed_form_quotient(n, which), dclosed, qs)
    return report
