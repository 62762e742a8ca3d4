"""One test per acceptance criterion; the conftest prints a PASS/FAIL line for each."""

import json
import random
import subprocess
import sys
import textwrap
import time
from pathlib import Path

import pytest

import oracles
import zoo
from quandle_tensor import (
    handle_report,
    make_dihedral,
    make_trivial,
    quotient,
    rho_map,
    symmetric_double,
    tau_map,
    tensor_product,
    validate_quandle,
)
from quandle_tensor.core import encode_doubled
from quandle_tensor.dihedral import closed_form_tensor, cross_check, distance
from quandle_tensor.present import check_assignment, enumerate_homs, handle_invariant, parse_presentation

GOLDEN = Path(__file__).parent / "golden"


def half(n):
    return (n - 1) // 2 if n % 2 else n // 2


def partition(T):
    return frozenset(frozenset(c) for c in T.classes)


def lifted(q):
    out = set()
    for cls in tensor_product(q).classes:
        for e in "+-":
            for d in "+-":
                out.add(frozenset((encode_doubled(q.n, a, e), encode_doubled(q.n, b, d)) for a, b in cls))
    return frozenset(out)


def random_tables(count=50, max_n=8, seed=20240601):
    rng = random.Random(seed)
    return [zoo.random_quandle(rng, max_n) for _ in range(count)]


@pytest.mark.criterion(1, "dihedral tensor counts and closed-form partitions")
def test_dihedral_tensor_counts():
    start = time.perf_counter()
    for n in range(1, 22):
        T = tensor_product(make_dihedral(n))
        m = half(n)
        assert len(T) == (m + 1 if n % 2 else 2 * m + 2), n
        assert partition(T) == frozenset(frozenset(p) for _, p in closed_form_tensor(n)), n
    elapsed = time.perf_counter() - start
    print(f"n = 1..21 in {elapsed:.3f} s")
    assert elapsed < 1.0


@pytest.mark.criterion(2, "dihedral tensor quotient by tau")
def test_dihedral_tau_counts():
    for n in range(1, 22):
        T = tensor_product(make_dihedral(n))
        m = half(n)
        if n % 2:
            expected = m + 1
        else:
            expected = 3 * (m + 1) // 2 if m % 2 else 3 * m // 2 + 2
        assert len(quotient(T, [tau_map(T)])) == expected, n


@pytest.mark.criterion(3, "symmetric double counts and quotients")
def test_double_counts():
    for n in range(1, 16):
        d, rho = symmetric_double(make_dihedral(n))
        T = tensor_product(d)
        m = half(n)
        tau, r = tau_map(T), rho_map(T, rho)
        counts = (len(T), len(quotient(T, [tau])), len(quotient(T, [r])), len(quotient(T, [tau, r])))
        if n % 2:
            expected = (2 * n + 2, 3 * (m + 1), 2 * (m + 1), 2 * (m + 1))
        else:
            if n > 14:
                continue
            expected = (
                4 * n + 8,
                5 * (m + 1) if m % 2 else 5 * m + 6,
                4 * (m + 1),
                3 * (m + 1) if m % 2 else 3 * m + 4,
            )
        assert counts == expected, n
        rep = cross_check(n)
        assert rep.ok, [c for c in rep.comparisons if not c.ok]
    # spot values
    for n, expected in ((5, (12, 9, 6, 6)), (4, (24, 16, 12, 10))):
        d, rho = symmetric_double(make_dihedral(n))
        T = tensor_product(d)
        tau, r = tau_map(T), rho_map(T, rho)
        got = (len(T), len(quotient(T, [tau])), len(quotient(T, [r])), len(quotient(T, [tau, r])))
        assert got == expected, n


@pytest.mark.criterion(4, "double classes are the signed lifts of base classes")
def test_double_lift_property():
    mismatches = []
    quandles = [make(n) for n in range(1, 13) for make in (make_dihedral, make_trivial)]
    quandles += [validate_quandle(t) for t in random_tables()]
    for q in quandles:
        if partition(tensor_product(symmetric_double(q)[0])) != lifted(q):
            mismatches.append(q)
    assert mismatches == []


@pytest.mark.criterion(5, "handle reports for the two worked examples")
def test_handle_reports():
    for n in range(3, 16, 2):
        m = half(n)
        r = handle_report(make_dihedral(n), double=True)
        assert r.counts() == {
            "strong_oriented": m + 1,
            "weak_oriented": m + 1,
            "strong_all": 2 * n + 2,
            "weak_all": n + 1,
        }, n
        p = handle_report(make_dihedral(n), list(range(n)))
        assert (p.strong_all, p.weak_all) == (m + 1, m + 1), n


@pytest.mark.criterion(6, "engine partitions equal the breadth-first oracle")
def test_oracle_equivalence():
    quandles = [make_dihedral(n) for n in range(1, 22)]
    quandles += [symmetric_double(make_dihedral(n))[0] for n in range(1, 16)]
    quandles += [make_trivial(n) for n in range(1, 13)]
    quandles += [symmetric_double(make_trivial(n))[0] for n in range(1, 13)]
    tables = [validate_quandle(t) for t in random_tables()]
    quandles += tables + [symmetric_double(q)[0] for q in tables]
    bad = [q for q in quandles if partition(tensor_product(q)) != oracles.bfs_pair_orbits(q.rows())]
    assert bad == []


def _signed(pairs, e, d):
    return sorted((x + (3 if e == "-" else 0), y + (3 if d == "-" else 0)) for x, y in pairs)


# transcribed from the worked examples for R_3 and D(R_3)
R3_LISTING = {
    "[0,0]": [(0, 0), (1, 1), (2, 2)],
    "[0,1]": [(0, 1), (0, 2), (1, 0), (1, 2), (2, 0), (2, 1)],
}
SIGN_PAIRS = [("+", "+"), ("+", "-"), ("-", "+"), ("-", "-")]
DR3_LISTING = {(k, s): _signed(pairs, *s) for k, pairs in R3_LISTING.items() for s in SIGN_PAIRS}


def _blocks(rule):
    return {frozenset(frozenset(map(tuple, DR3_LISTING[c])) for c in block) for block in rule}


def _listed_quotients():
    ks = list(R3_LISTING)
    pp, mm, pm, mp = SIGN_PAIRS[0], SIGN_PAIRS[3], SIGN_PAIRS[1], SIGN_PAIRS[2]
    tau = [[(k, pp)] for k in ks] + [[(k, mm)] for k in ks] + [[(k, pm), (k, mp)] for k in ks]
    rho = [[(k, pp), (k, mm)] for k in ks] + [[(k, pm), (k, mp)] for k in ks]
    return {"tau": _blocks(tau), "rho": _blocks(rho), "tau,rho": _blocks(rho)}


@pytest.mark.criterion(7, "R_3 and D(R_3) inventories match the worked listings")
def test_golden_listings():
    r3 = json.loads((GOLDEN / "r3_tensor.json").read_text())
    assert {frozenset(map(tuple, c)) for c in r3["classes"]} == {
        frozenset(p) for p in R3_LISTING.values()
    }
    assert r3["quotients"]["tau"] == [[0], [1]]

    dr3 = json.loads((GOLDEN / "dr3_tensor.json").read_text())
    classes = [frozenset(map(tuple, c)) for c in dr3["classes"]]
    assert set(classes) == {frozenset(p) for p in DR3_LISTING.values()}
    assert len(classes) == 8
    for name, expected in _listed_quotients().items():
        got = {frozenset(classes[c] for c in block) for block in dr3["quotients"][name]}
        assert got == expected, name

    # the frozen files still agree with a live computation
    d, _ = symmetric_double(make_dihedral(3))
    assert set(classes) == set(partition(tensor_product(d)))


def _generated(q, elems):
    out = set(elems)
    while True:
        new = {q.op(x, y) for x in out for y in out} | {q.inv_op(x, y) for x in out for y in out}
        if new <= out:
            return out
        out |= new


@pytest.mark.criterion(8, "twist-spun presentation suite")
def test_presentation_suite():
    failures = []
    for m, n in ((1, 3), (2, 5), (3, 7)):
        q = make_dihedral(n)
        P = parse_presentation(f"gens a b\nrel b = a^((b a)^{m})\nrel b^(a^2) = b")
        homs = enumerate_homs(P, q)
        assert homs, n
        assert all(check_assignment(P, q, h) == [] for h in homs)
        for h in homs:
            if len(_generated(q, [h["a"], h["b"]])) != n:
                continue
            inv = handle_invariant(P, h, q, "a", "b")
            if distance(n, *inv.rep) != 1:
                failures.append(f"R_{n} {h}: class {inv.label}")
    print(f"{len(failures)} surjective assignments off the distance-1 class")
    for line in failures[:6]:
        print("  " + line)
    assert failures == []


PERF_SCRIPT = textwrap.dedent(
    """
    import resource, time
    from quandle_tensor import make_dihedral, tensor_product
    q = make_dihedral(500)
    t0 = time.perf_counter()
    T = tensor_product(q)
    dt = time.perf_counter() - t0
    rss = resource.getrusage(resource.RUSAGE_SELF).ru_maxrss * 1024
    print(dt, rss, len(T))
    """
)


@pytest.mark.criterion(9, "tensor_product(R_500) under 10 s and 1 GB")
def test_performance():
    out = subprocess.run([sys.executable, "-c", PERF_SCRIPT], capture_output=True, text=True, check=True)
    seconds, rss, classes = out.stdout.split()
    seconds, rss = float(seconds), int(rss)
    print(f"R_500: {seconds:.2f} s, peak RSS {rss / 2**20:.0f} MiB, {classes} classes")
    assert int(classes) == 502
    assert seconds < 10
    assert rss < 2**30
