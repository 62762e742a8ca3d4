"""Text and JSON renderings of tensor products, handle reports and checks.

The JSON documents are the stable output channel; text is for people.
"""

from __future__ import annotations

import json

from .tensor import ClassInvolution, HandleReport, QuotientSet, TensorProduct, class_labels


def dumps(doc) -> str:
    return json.dumps(doc, separators=(",", ":")) + "\n"


def tensor_document(
    T: TensorProduct,
    tau: ClassInvolution | None = None,
    rho: ClassInvolution | None = None,
    quotients: list[QuotientSet] = (),
) -> dict:
    counts = {"classes": len(T)}
    for Q in quotients:
        counts[Q.name] = len(Q)
    return {
        "n": T.n,
        "classes": [[list(p) for p in c] for c in T.classes],
        "reps": [list(p) for p in T.reps],
        "tau": list(tau.map) if tau else None,
        "rho": list(rho.map) if rho else None,
        "quotients": {Q.name: [list(b) for b in Q.blocks] for Q in quotients},
        "counts": counts,
    }


def _pairs(pairs) -> str:
    return "{" + ", ".join(f"({a},{b})" for a, b in pairs) + "}"


def tensor_text(T, tau=None, rho=None, quotients=()) -> str:
    labels = class_labels(T)
    out = [f"tensor product of a quandle of order {T.n}: {len(T)} classes"]
    for i, (lab, cls) in enumerate(zip(labels, T.classes)):
        out.append(f"  {i}: {lab} = {_pairs(cls)}")
    for inv in (tau, rho):
        if inv is not None:
            out.append(f"{inv.name}: " + " ".join(f"{c}->{d}" for c, d in enumerate(inv.map)))
    for Q in quotients:
        out.append(f"quotient by <{Q.name}>: {len(Q)} blocks")
        for block in Q.blocks:
            out.append("  {" + ", ".join(labels[c] for c in block) + "}")
    return "\n".join(out) + "\n"


def handle_document(r: HandleReport) -> dict:
    doc = {"counts": r.counts()}
    for key in ("oriented", "unoriented"):
        inv = getattr(r, key)
        doc[key] = None if inv is None else {
            "classes": inv.classes,
            "quotient": inv.quotient,
            "blocks": inv.blocks,
        }
    return doc


def handle_text(r: HandleReport) -> str:
    out = []
    names = {
        "strong_oriented": "strong, oriented",
        "weak_oriented": "weak, oriented",
        "strong_all": "strong, all",
        "weak_all": "weak, all",
    }
    for key, value in r.counts().items():
        if value is not None:
            out.append(f"{names[key]:>17}: {value}")
    for key in ("oriented", "unoriented"):
        inv = getattr(r, key)
        if inv is None:
            continue
        out.append(f"{key} classes: " + " ".join(inv.classes))
        out.append(f"{key} blocks mod <{inv.quotient}>: " + " ".join(
            "{" + ", ".join(b) + "}" for b in inv.blocks
        ))
    return "\n".join(out) + "\n"


def crosscheck_document(reports) -> dict:
    return {
        "ok": all(r.ok for r in reports),
        "results": [
            {
                "n": r.n,
                "ok": r.ok,
                "notes": r.notes,
                "comparisons": [
                    {"name": c.name, "expected": c.expected, "actual": c.actual, "ok": c.ok}
                    for c in r.comparisons
                ],
            }
            for r in reports
        ],
    }


def crosscheck_text(reports) -> str:
    out = []
    for r in reports:
        for c in r.comparisons:
            status = "pass" if c.ok else "FAIL"
            out.append(f"n={r.n:<3} {c.name:<24} expected {c.expected!s:<5} got {c.actual!s:<5} {status}")
        for note in r.notes:
            out.append(f"n={r.n:<3} note: {note}")
    passed = sum(c.ok for r in reports for c in r.comparisons)
    total = sum(len(r.comparisons) for r in reports)
    out.append(f"{passed}/{total} comparisons passed")
    return "\n".join(out) + "\n"
