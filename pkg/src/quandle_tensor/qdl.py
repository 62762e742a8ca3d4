"""Reading and writing the plain-text ``.qdl`` quandle format.

::

    # R_3
    quandle
    n 3
    table
    0 2 1
    2 1 0
    1 0 2
    involution 0 1 2

Optional extras: a ``names <n names>`` line after ``n`` (labels for display
only), and an ``inverse`` block of n rows after the table, which is
cross-checked against the inverse derived from ``table``.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .core import GoodInvolution, Quandle, validate_good_involution, validate_quandle

__all__ = ["QdlError", "QdlFile", "parse_qdl", "read_qdl", "load_quandle", "format_qdl"]


class QdlError(ValueError):
    def __init__(self, message: str, line: int | None = None, source: str | None = None):
        self.line, self.source = line, source
        where = ":".join(str(p) for p in (source, line) if p is not None)
        super().__init__(f"{where}: {message}" if where else message)


@dataclass
class QdlFile:
    n: int
    table: list[list[int]]
    inverse: list[list[int]] | None = None
    involution: list[int] | None = None
    names: list[str] | None = None


def _ints(words, lineno, source):
    try:
        return [int(w) for w in words]
    except ValueError:
        raise QdlError(f"expected integers, got {' '.join(words)!r}", lineno, source) from None


def parse_qdl(text: str, source: str | None = None) -> QdlFile:
    """Parse ``.qdl`` text; only the layout is checked here, not the axioms."""
    lines = [
        (i, raw.split()) for i, raw in enumerate(text.splitlines(), 1)
        if raw.strip() and not raw.lstrip().startswith("#")
    ]
    pos = 0

    def need(keyword):
        nonlocal pos
        if pos >= len(lines):
            raise QdlError(f"expected {keyword!r}, got end of file", None, source)
        lineno, words = lines[pos]
        if words[0] != keyword:
            raise QdlError(f"expected {keyword!r}, got {words[0]!r}", lineno, source)
        pos += 1
        return lineno, words[1:]

    def rows(n):
        nonlocal pos
        out = []
        for _ in range(n):
            if pos >= len(lines):
                raise QdlError(f"table needs {n} rows, file ended after {len(out)}", None, source)
            lineno, words = lines[pos]
            row = _ints(words, lineno, source)
            if len(row) != n:
                raise QdlError(f"row has {len(row)} entries, expected {n}", lineno, source)
            bad = [v for v in row if not 0 <= v < n]
            if bad:
                raise QdlError(f"entry {bad[0]} is outside 0..{n - 1}", lineno, source)
            out.append(row)
            pos += 1
        return out

    lineno, rest = need("quandle")
    if rest:
        raise QdlError("unexpected text after 'quandle'", lineno, source)
    lineno, rest = need("n")
    if len(rest) != 1:
        raise QdlError("expected 'n <int>'", lineno, source)
    (n,) = _ints(rest, lineno, source)
    if n < 1:
        raise QdlError(f"n must be positive, got {n}", lineno, source)
    qf = QdlFile(n, [])
    if pos < len(lines) and lines[pos][1][0] == "names":
        lineno, names = need("names")
        if len(names) != n or len(set(names)) != n:
            raise QdlError(f"'names' needs {n} distinct names", lineno, source)
        qf.names = names
    need("table")
    qf.table = rows(n)
    while pos < len(lines):
        lineno, words = lines[pos]
        if words[0] == "inverse" and qf.inverse is None:
            pos += 1
            qf.inverse = rows(n)
        elif words[0] == "involution" and qf.involution is None:
            pos += 1
            inv = _ints(words[1:], lineno, source)
            if len(inv) != n or any(not 0 <= v < n for v in inv):
                raise QdlError(f"involution needs {n} entries in 0..{n - 1}", lineno, source)
            qf.involution = inv
        else:
            raise QdlError(f"unexpected line starting {words[0]!r}", lineno, source)
    return qf


def read_qdl(path) -> QdlFile:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise QdlError(f"cannot read file: {exc.strerror}", None, str(path)) from None
    return parse_qdl(text, str(path))


def load_quandle(qf: QdlFile) -> tuple[Quandle, GoodInvolution | None]:
    """Validate a parsed file; raises :class:`~quandle_tensor.core.AxiomError` on failure."""
    q = validate_quandle(qf.table, qf.inverse)
    rho = validate_good_involution(q, qf.involution) if qf.involution is not None else None
    return q, rho


def format_qdl(q: Quandle, rho=None, comment: str | None = None) -> str:
    out = []
    if comment:
        out += [f"# {line}" for line in comment.splitlines()]
    out += ["quandle", f"n {q.n}", "table"]
    out += [" ".join(map(str, row)) for row in q.table.tolist()]
    if rho is not None:
        r = rho.tolist() if hasattr(rho, "tolist") else list(rho)
        out.append("involution " + " ".join(map(str, r)))
    return "\n".join(out) + "\n"
