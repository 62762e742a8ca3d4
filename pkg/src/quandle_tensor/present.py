"""Finitely presented quandles: parsing, evaluation in finite quandles, hom search.

The ``.qpres`` text format::

    # comments run to end of line
    gens a b
    rel b = a^((b a)^2)
    rel b^(a^2) = b

Statements are separated by newlines (or ``/``).  In an expression ``*`` and
``~`` (the inverse operation) are left-associative; ``x^(g)`` applies the
free-group word ``g`` to ``x`` by the right action, so ``x^(a^-1)`` is
``x ~ a``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Mapping, Sequence, Union

import numpy as np

from .core import BoundError, GoodInvolution, Quandle, QuandleError, act_word, validate_good_involution
from .tensor import quotient, rho_map, tau_map, tensor_product

__all__ = [
    "Gen",
    "Op",
    "InvOp",
    "Exp",
    "WordExpr",
    "Presentation",
    "Assignment",
    "PresentationError",
    "parse_presentation",
    "parse_expr",
    "format_expr",
    "format_presentation",
    "eval_word",
    "flatten_gword",
    "enumerate_homs",
    "check_assignment",
    "HandleInvariant",
    "handle_invariant",
    "pair_invariant",
]


@dataclass(frozen=True)
class Gen:
    name: str


@dataclass(frozen=True)
class Op:
    left: "WordExpr"
    right: "WordExpr"


@dataclass(frozen=True)
class InvOp:
    left: "WordExpr"
    right: "WordExpr"


@dataclass(frozen=True)
class Exp:
    """``base`` acted on by the free-group word ``gword`` of ``(generator, exponent)`` letters."""

    base: "WordExpr"
    gword: tuple[tuple[str, int], ...]


WordExpr = Union[Gen, Op, InvOp, Exp]


@dataclass(frozen=True)
class Presentation:
    generators: tuple[str, ...]
    relations: tuple[tuple[WordExpr, WordExpr], ...] = ()


class PresentationError(ValueError):
    def __init__(self, message: str, line: int | None = None, col: int | None = None):
        self.message, self.line, self.col = message, line, col
        where = f"line {line}" + (f", col {col}" if col is not None else "") if line else ""
        super().__init__(f"{where}: {message}" if where else message)


_TOKEN = re.compile(r"\s*(?:(?P<int>-?\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<sym>[*~^()=]))")


def _tokenize(text: str, line: int, offset: int = 0):
    # offset: columns preceding text on its source line
    tokens, pos = [], 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            bad = len(text[:pos]) + len(text[pos:]) - len(text[pos:].lstrip())
            raise PresentationError(f"unexpected character {text[bad]!r}", line, offset + bad + 1)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), offset + m.start(kind) + 1))
        pos = m.end()
    return tokens


class _Parser:
    """Recursive descent over one statement's tokens."""

    def __init__(self, tokens, generators, line):
        self.tokens = tokens
        self.i = 0
        self.generators = generators
        self.line = line

    def error(self, message):
        col = self.tokens[self.i][2] if self.i < len(self.tokens) else None
        raise PresentationError(message, self.line, col)

    def peek(self):
        return self.tokens[self.i][1] if self.i < len(self.tokens) else None

    def kind(self):
        return self.tokens[self.i][0] if self.i < len(self.tokens) else None

    def take(self, expected=None):
        if self.i >= len(self.tokens):
            self.error(f"expected {expected!r}, got end of input" if expected else "unexpected end of input")
        tok = self.tokens[self.i]
        if expected is not None and tok[1] != expected:
            self.error(f"expected {expected!r}, got {tok[1]!r}")
        self.i += 1
        return tok

    def name(self):
        if self.kind() != "name":
            self.error(f"expected a generator, got {self.peek()!r}" if self.peek() else "expected a generator")
        _, value, col = self.take()
        if value not in self.generators:
            raise PresentationError(f"unknown generator {value!r}", self.line, col)
        return value

    def expr(self):
        left = self.term()
        while self.peek() in ("*", "~"):
            sym = self.take()[1]
            right = self.term()
            left = Op(left, right) if sym == "*" else InvOp(left, right)
        return left

    def term(self):
        base = self.atom()
        if self.peek() == "^":
            self.take("^")
            self.take("(")
            word = self.gword()
            self.take(")")
            return Exp(base, tuple(word))
        return base

    def atom(self):
        if self.peek() == "(":
            self.take("(")
            e = self.expr()
            if self.peek() != ")":
                self.error("unbalanced parentheses")
            self.take(")")
            return e
        return Gen(self.name())

    def gword(self):
        letters = []
        while self.peek() is not None and self.peek() != ")":
            letters += self.gfactor()
        if not letters:
            self.error("empty word in exponent")
        return letters

    def gfactor(self):
        if self.peek() == "(":
            self.take("(")
            inner = self.gword()
            if self.peek() != ")":
                self.error("unbalanced parentheses")
            self.take(")")
            e = self.exponent()
            if e > 0:
                return inner * e
            return [(g, -x) for g, x in reversed(inner)] * (-e)
        g = self.name()
        return [(g, self.exponent())]

    def exponent(self):
        if self.peek() != "^":
            return 1
        self.take("^")
        if self.kind() != "int":
            self.error("expected an integer exponent")
        _, value, col = self.take()
        if int(value) == 0:
            raise PresentationError("zero exponent", self.line, col)
        return int(value)

    def done(self):
        if self.i < len(self.tokens):
            tok = self.tokens[self.i]
            if tok[1] == ")":
                self.error("unbalanced parentheses")
            self.error(f"unexpected {tok[1]!r}")


def _statements(text: str):
    """Yield ``(line, column offset, statement)`` with the offset of the statement's text."""
    for lineno, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0]
        start = 0
        for part in body.split("/"):
            if part.strip():
                yield lineno, start + len(part) - len(part.lstrip()), part.strip()
            start += len(part) + 1


def parse_presentation(text: str) -> Presentation:
    """Parse ``.qpres`` text into a :class:`Presentation`."""
    generators = None
    relations = []
    for lineno, col, stmt in _statements(text):
        keyword, _, rest = stmt.partition(" ")
        rest_col = col + len(keyword) + 1
        if keyword == "gens":
            if generators is not None:
                raise PresentationError("duplicate 'gens' statement", lineno)
            names = rest.split()
            for g in names:
                if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", g):
                    raise PresentationError(f"bad generator name {g!r}", lineno)
            if len(set(names)) != len(names):
                raise PresentationError("repeated generator name", lineno)
            generators = tuple(names)
        elif keyword == "rel":
            if generators is None:
                raise PresentationError("'rel' before 'gens'", lineno)
            lhs_text, eq, rhs_text = rest.partition("=")
            if not eq:
                raise PresentationError("relation needs '='", lineno)
            if not lhs_text.strip() or not rhs_text.strip():
                raise PresentationError("empty relation side", lineno)
            relations.append(
                (
                    parse_expr(lhs_text, generators, lineno, rest_col),
                    parse_expr(rhs_text, generators, lineno, rest_col + len(lhs_text) + 1),
                )
            )
        else:
            raise PresentationError(f"expected 'gens' or 'rel', got {keyword!r}", lineno)
    if generators is None:
        raise PresentationError("missing 'gens' statement")
    return Presentation(generators, tuple(relations))


def parse_expr(text: str, generators: Sequence[str], line: int = 1, offset: int = 0) -> WordExpr:
    tokens = _tokenize(text, line, offset)
    if not tokens:
        raise PresentationError("empty expression", line)
    p = _Parser(tokens, set(generators), line)
    e = p.expr()
    p.done()
    return e


def _format_letters(gword) -> str:
    return " ".join(g if e == 1 else f"{g}^{e}" for g, e in gword)


def format_expr(w: WordExpr) -> str:
    if isinstance(w, Gen):
        return w.name
    if isinstance(w, (Op, InvOp)):
        sym = "*" if isinstance(w, Op) else "~"
        right = format_expr(w.right)
        if isinstance(w.right, (Op, InvOp)):
            right = f"({right})"
        return f"{format_expr(w.left)} {sym} {right}"
    base = format_expr(w.base)
    if not isinstance(w.base, Gen):
        base = f"({base})"
    return f"{base}^({_format_letters(w.gword)})"


def format_presentation(P: Presentation) -> str:
    lines = ["gens " + " ".join(P.generators)]
    lines += [f"rel {format_expr(l)} = {format_expr(r)}" for l, r in P.relations]
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class Assignment:
    generators: tuple[str, ...]
    images: tuple[int, ...]

    def __getitem__(self, name: str) -> int:
        return self.images[self.generators.index(name)]

    def as_dict(self) -> dict[str, int]:
        return dict(zip(self.generators, self.images))

    def __str__(self):
        return ",".join(f"{g}={v}" for g, v in zip(self.generators, self.images))


def _lookup(asg, name):
    try:
        return asg[name]
    except (KeyError, ValueError):
        raise QuandleError(f"no image assigned to generator {name!r}") from None


def flatten_gword(gword, asg) -> list[tuple[int, int]]:
    """Expand ``(generator, exponent)`` letters into ``(element, +-1)`` steps."""
    out = []
    for g, e in gword:
        out += [(_lookup(asg, g), 1 if e > 0 else -1)] * abs(e)
    return out


def eval_word(q: Quandle, asg: Assignment | Mapping[str, int], w: WordExpr) -> int:
    if isinstance(w, Gen):
        v = _lookup(asg, w.name)
        q._check(v)
        return int(v)
    if isinstance(w, Op):
        return q.op(eval_word(q, asg, w.left), eval_word(q, asg, w.right))
    if isinstance(w, InvOp):
        return q.inv_op(eval_word(q, asg, w.left), eval_word(q, asg, w.right))
    return act_word(q, eval_word(q, asg, w.base), flatten_gword(w.gword, asg))


def _eval_many(q: Quandle, values: dict[str, np.ndarray], w: WordExpr) -> np.ndarray:
    # evaluates w for a whole batch of assignments at once
    if isinstance(w, Gen):
        return values[w.name]
    if isinstance(w, Op):
        return q.table[_eval_many(q, values, w.left), _eval_many(q, values, w.right)]
    if isinstance(w, InvOp):
        return q.inv_table[_eval_many(q, values, w.left), _eval_many(q, values, w.right)]
    x = _eval_many(q, values, w.base)
    for g, e in w.gword:
        t = q.table if e > 0 else q.inv_table
        for _ in range(abs(e)):
            x = t[x, values[g]]
    return x


def enumerate_homs(P: Presentation, q: Quandle, cap: int = 10**7, chunk: int = 1 << 16) -> list[Assignment]:
    """All generator images in ``q`` satisfying every relation, in lexicographic order."""
    g = len(P.generators)
    total = q.n**g
    if total > cap:
        raise BoundError(f"search space {q.n}^{g} = {total} exceeds the cap {cap}")
    found = []
    shape = (q.n,) * g
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total))
        cols = np.unravel_index(idx, shape) if g else ()
        values = dict(zip(P.generators, cols))
        ok = np.ones(len(idx), dtype=bool)
        for lhs, rhs in P.relations:
            ok &= _eval_many(q, values, lhs) == _eval_many(q, values, rhs)
        for i in np.flatnonzero(ok):
            found.append(Assignment(P.generators, tuple(int(c[i]) for c in cols)))
    return found


def check_assignment(P: Presentation, q: Quandle, asg) -> list[int]:
    """Indices of relations that fail under ``asg``."""
    return [
        i for i, (l, r) in enumerate(P.relations) if eval_word(q, asg, l) != eval_word(q, asg, r)
    ]


@dataclass
class HandleInvariant:
    """Value of a 1-handle invariant: a tensor class, or its block in a quotient."""

    mode: str
    pair: tuple[int, int]
    class_id: int
    rep: tuple[int, int]
    label: str
    quotient: str | None = None
    block: tuple[int, ...] | None = None
    block_labels: tuple[str, ...] | None = None

    @property
    def value(self):
        return self.class_id if self.mode == "strong" else self.block


def _label(q: Quandle, a: int, b: int) -> str:
    from .dihedral import dihedral_class_label

    lab = dihedral_class_label(q.family, a, b)
    return str(lab) if lab is not None else f"[{a},{b}]"


def pair_invariant(q: Quandle, pair: tuple[int, int], mode: str = "strong", rho=None) -> HandleInvariant:
    """Class of ``pair`` in ``q (x) q``, or its block in the quotient by tau (and rho)."""
    if mode not in ("strong", "weak"):
        raise ValueError(f"mode must be 'strong' or 'weak', got {mode!r}")
    if rho is not None and not isinstance(rho, GoodInvolution):
        rho = validate_good_involution(q, rho)
    T = tensor_product(q)
    c = T.class_of(*pair)
    rep = T.reps[c]
    inv = HandleInvariant(mode, tuple(pair), c, rep, _label(q, *rep))
    if mode == "weak":
        invs = [tau_map(T)] + ([rho_map(T, rho)] if rho is not None else [])
        Q = quotient(T, invs)
        inv.quotient = Q.name
        inv.block = Q.blocks[Q.block_of[c]]
        inv.block_labels = tuple(_label(q, *T.reps[d]) for d in inv.block)
    return inv


def handle_invariant(
    P: Presentation,
    asg: Assignment | Mapping[str, int],
    q: Quandle,
    w1: WordExpr | str,
    w2: WordExpr | str,
    mode: str = "strong",
    rho=None,
) -> HandleInvariant:
    """Push the 1-handle designated by the word pair ``(w1, w2)`` through ``asg``.

    ``asg`` must satisfy every relation of ``P``; strong mode returns the class
    of ``(eval(w1), eval(w2))`` in ``q (x) q``, weak mode its block modulo
    ``<tau>`` or, with ``rho``, ``<tau, rho>``.
    """
    if isinstance(w1, str):
        w1 = parse_expr(w1, P.generators)
    if isinstance(w2, str):
        w2 = parse_expr(w2, P.generators)
    failed = check_assignment(P, q, asg)
    if failed:
        raise QuandleError(f"assignment does not satisfy relation(s) {failed}")
    pair = (eval_word(q, asg, w1), eval_word(q, asg, w2))
    return pair_invariant(q, pair, mode, rho)
