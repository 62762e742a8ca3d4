"""Command-line entry point: ``qtensor <command> ...``.

Quandle arguments are ``.qdl`` paths or the built-ins ``dihedral:N`` and
``trivial:N``.  Exit status is 0 on success, 1 when a validation fails and 2
for parse or usage errors.
"""

from __future__ import annotations

import argparse
import re
import sys
from pathlib import Path

from . import report as rpt
from .core import (
    AxiomError,
    BoundError,
    QuandleError,
    check_good_involution,
    check_quandle,
    connected_components,
    make_dihedral,
    make_trivial,
    symmetric_double,
    validate_good_involution,
    validate_quandle,
)
from .dihedral import cross_check
from .present import (
    PresentationError,
    enumerate_homs,
    handle_invariant,
    parse_expr,
    parse_presentation,
)
from .qdl import QdlError, format_qdl, load_quandle, read_qdl
from .tensor import handle_report, quotient, rho_map, tau_map, tensor_product

VALIDATION_FAILED = 1
USAGE = 2


class UsageError(Exception):
    pass


def _builtin(arg):
    m = re.fullmatch(r"(dihedral|trivial):(\d+)", arg)
    if not m:
        return None
    n = int(m.group(2))
    if n < 1:
        raise UsageError(f"{arg}: n must be positive")
    return make_dihedral(n) if m.group(1) == "dihedral" else make_trivial(n)


def load_source(arg):
    """Return ``(quandle, involution or None)`` for a path or a built-in name."""
    q = _builtin(arg)
    if q is not None:
        return q, None
    return load_quandle(read_qdl(arg))


def _parse_rho(text):
    try:
        return [int(v) for v in re.split(r"[,\s]+", text.strip()) if v]
    except ValueError:
        raise UsageError(f"--rho: expected integers, got {text!r}") from None


def _involution(args, q, file_rho):
    if getattr(args, "rho", None) is not None:
        return validate_good_involution(q, _parse_rho(args.rho))
    return file_rho


def _emit(args, doc, text):
    sys.stdout.write(rpt.dumps(doc) if args.format == "json" else text)


def cmd_check(args):
    q_builtin = _builtin(args.quandle)
    if q_builtin is not None:
        table, inverse, involution = q_builtin.table, None, None
    else:
        qf = read_qdl(args.quandle)
        table, inverse, involution = qf.table, qf.inverse, qf.involution
    if args.rho is not None:
        involution = _parse_rho(args.rho)
    violations = check_quandle(table, inverse)
    inv_violations = []
    if involution is not None and not violations:
        inv_violations = check_good_involution(validate_quandle(table), involution)
    n = len(table)
    doc = {
        "n": n,
        "quandle": not violations,
        "violations": [[v.axiom, list(v.witness)] for v in violations],
        "involution": None if involution is None else not inv_violations,
        "involution_violations": [[v.axiom, list(v.witness)] for v in inv_violations],
    }
    lines = [f"quandle of order {n}: " + ("valid" if not violations else f"{len(violations)} violation(s)")]
    lines += [f"  {v}" for v in violations]
    if involution is not None:
        if violations:
            lines.append("involution: not checked (table is not a quandle)")
        else:
            lines.append("involution: " + ("good" if not inv_violations else f"{len(inv_violations)} violation(s)"))
            lines += [f"  {v}" for v in inv_violations]
    _emit(args, doc, "\n".join(lines) + "\n")
    return VALIDATION_FAILED if violations or inv_violations else 0


def cmd_tensor(args):
    q, file_rho = load_source(args.quandle)
    T = tensor_product(q)
    tau = tau_map(T)
    rho = _involution(args, q, file_rho)
    r = rho_map(T, rho) if rho is not None else None
    quotients = []
    for sel in args.quotient or ():
        names = sel.split(",")
        if any(name not in ("tau", "rho") for name in names):
            raise UsageError(f"--quotient: expected tau, rho or tau,rho, got {sel!r}")
        if "rho" in names and r is None:
            raise UsageError("--quotient with rho needs an involution in the file or --rho")
        quotients.append(quotient(T, [tau if name == "tau" else r for name in names]))
    _emit(args, rpt.tensor_document(T, tau, r, quotients), rpt.tensor_text(T, tau, r, quotients))
    return 0


def cmd_double(args):
    q, _ = load_source(args.quandle)
    d, rho = symmetric_double(q)
    text = format_qdl(d, rho, comment=f"symmetric double of {args.quandle}")
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_components(args):
    q, _ = load_source(args.quandle)
    comps = connected_components(q)
    text = f"{len(comps)} component(s)\n" + "".join(
        "  {" + ", ".join(map(str, c)) + "}\n" for c in comps
    )
    _emit(args, {"n": q.n, "components": comps}, text)
    return 0


def cmd_dihedral_verify(args):
    if args.max < args.min or args.min < 1:
        raise UsageError("need 1 <= --min <= --max")
    reports = [cross_check(n, include_double=not args.no_double) for n in range(args.min, args.max + 1)]
    _emit(args, rpt.crosscheck_document(reports), rpt.crosscheck_text(reports))
    return 0 if all(r.ok for r in reports) else VALIDATION_FAILED


def _read_presentation(path):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"{path}: cannot read file: {exc.strerror}") from None
    try:
        return parse_presentation(text)
    except PresentationError as exc:
        where = ":".join(str(v) for v in (path, exc.line, exc.col) if v is not None)
        raise UsageError(f"{where}: {exc.message}") from None


def cmd_homs(args):
    P = _read_presentation(args.presentation)
    q, _ = load_source(args.quandle)
    homs = enumerate_homs(P, q, cap=args.cap)
    doc = {"generators": list(P.generators), "count": len(homs), "assignments": [list(h.images) for h in homs]}
    text = "".join(f"{h}\n" for h in homs) + f"{len(homs)} assignment(s)\n"
    _emit(args, doc, text)
    return 0


def _parse_assign(text, generators):
    out = {}
    for part in filter(None, (p.strip() for p in text.split(","))):
        name, eq, value = part.partition("=")
        if not eq or not value.strip().lstrip("-").isdigit():
            raise UsageError(f"--assign: expected name=int, got {part!r}")
        out[name.strip()] = int(value)
    missing = [g for g in generators if g not in out]
    extra = [g for g in out if g not in generators]
    if missing or extra:
        raise UsageError(f"--assign: missing {missing}, unknown {extra}")
    return out


def cmd_invariant(args):
    P = _read_presentation(args.presentation)
    q, file_rho = load_source(args.quandle)
    rho = _involution(args, q, file_rho) if args.mode == "weak" else None
    asg = _parse_assign(args.assign, P.generators)
    try:
        w1, w2 = (parse_expr(w, P.generators) for w in args.pair)
    except PresentationError as exc:
        raise UsageError(f"--pair: {exc}") from None
    inv = handle_invariant(P, asg, q, w1, w2, mode=args.mode, rho=rho)
    doc = {
        "mode": inv.mode,
        "pair": list(inv.pair),
        "class": inv.class_id,
        "rep": list(inv.rep),
        "label": inv.label,
        "quotient": inv.quotient,
        "block": list(inv.block) if inv.block is not None else None,
    }
    text = f"pair {inv.pair} lies in class {inv.class_id} {inv.label}\n"
    if inv.block is not None:
        text += f"block mod <{inv.quotient}>: {{{', '.join(inv.block_labels)}}}\n"
    _emit(args, doc, text)
    return 0


def cmd_handles(args):
    q, file_rho = load_source(args.quandle)
    rho = None if args.double else _involution(args, q, file_rho)
    r = handle_report(q, rho, double=args.double)
    _emit(args, rpt.handle_document(r), rpt.handle_text(r))
    return 0


def build_parser():
    p = argparse.ArgumentParser(prog="qtensor", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help, quandle=True, rho=False):
        s = sub.add_parser(name, help=help)
        s.set_defaults(func=func)
        s.add_argument("--format", choices=("text", "json"), default="text")
        if quandle:
            s.add_argument("quandle", help=".qdl file, dihedral:N or trivial:N")
        if rho:
            s.add_argument("--rho", help="good involution as an inline array, e.g. 0,1,2")
        return s

    add("check", cmd_check, "validate quandle axioms and the involution", rho=True)
    s = add("tensor", cmd_tensor, "tensor product classes and quotients", rho=True)
    s.add_argument("--quotient", action="append", help="tau, rho or tau,rho (repeatable)")
    s = add("double", cmd_double, "write the symmetric double as .qdl")
    s.add_argument("-o", "--output")
    add("components", cmd_components, "connected components")
    s = add("dihedral-verify", cmd_dihedral_verify, "closed forms vs generic engine", quandle=False)
    s.add_argument("--max", type=int, required=True)
    s.add_argument("--min", type=int, default=1)
    s.add_argument("--no-double", action="store_true")

    s = sub.add_parser("homs", help="enumerate homomorphisms from a presentation")
    s.set_defaults(func=cmd_homs)
    s.add_argument("--format", choices=("text", "json"), default="text")
    s.add_argument("presentation")
    s.add_argument("quandle")
    s.add_argument("--cap", type=int, default=10**7)

    s = sub.add_parser("invariant", help="1-handle invariant of a word pair")
    s.set_defaults(func=cmd_invariant)
    s.add_argument("--format", choices=("text", "json"), default="text")
    s.add_argument("presentation")
    s.add_argument("quandle")
    s.add_argument("--assign", required=True, help="e.g. a=0,b=1")
    s.add_argument("--pair", nargs=2, required=True, metavar="EXPR")
    s.add_argument("--mode", choices=("strong", "weak"), default="strong")
    s.add_argument("--rho")

    s = add("handles", cmd_handles, "1-handle classification counts", rho=True)
    s.add_argument("--double", action="store_true", help="use the symmetric double as the full quandle")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, QdlError, PresentationError, BoundError) as exc:
        print(f"qtensor: error: {exc}", file=sys.stderr)
        return USAGE
    except (AxiomError, QuandleError) as exc:
        print(f"qtensor: {args.quandle if hasattr(args, 'quandle') else ''}: {exc}", file=sys.stderr)
        return VALIDATION_FAILED


if __name__ == "__main__":
    sys.exit(main())
