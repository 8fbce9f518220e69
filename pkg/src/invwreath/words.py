"""Generator symbols, free words, typed paths and tensor terms, together
with evaluation onto the wreath structures, the translation maps between
alphabets, prefix/suffix separation, and canonical/normal forms.

Text syntax (whitespace separated, round-trips with the printers):

    s1 e2 e          adjacent swap, domain omission, the one-generator omission
    x@1  x@1;3       letter x at slot 1; letter x at slot 1 with slot 3 zeroed
    s1:4 e2:4 x@1:4  the same generators tagged with their level
    f1,2             transfer: 2 -> 1, slot 1 removed
    lam3 rho3        inclusion 3->4 and its partial inverse 4->3
    X U Ubar         the tensor edges
    1                the empty word; i3 the empty path/term at level 3
    (o t1 t2), (p t1 t2)   term composition and term tensor
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache

from . import pperm, wreath
from .base import BasePresentation, MTuple, adjoin_zero, ones_on, pinned, unit_at
from .pperm import PartialBijection
from .wreath import WreathElement

__all__ = [
    "ParseError",
    "Sym",
    "s_", "e_", "pe", "x_", "bx", "f_", "xc", "sl", "el", "xl", "lam", "rho",
    "TX", "TU", "TUBAR",
    "token", "word_text", "parse_monoid_word",
    "Path", "path_text", "parse_path", "edge_dr",
    "TIdent", "TEdge", "TComp", "TTens",
    "term_d", "term_r", "tcompose", "ttensor", "pad_term",
    "term_text", "parse_term",
    "sym_image", "eval_word", "eval_path", "eval_term",
    "psi1_word", "psi2_word", "hat_edge", "hat_path", "plus_word", "reverse_word",
    "translate",
    "separate",
    "min_separation_rules", "sing_separation_rules",
    "word_for_monoid_element", "word_for_pperm", "word_for_singular_pperm",
    "leveled_word", "lift_word_i", "lift_word_ij",
    "canonical_word",
    "normal_form_wreath_word", "reassemble_wreath",
    "normal_form_singular_tuple", "reassemble_singular", "sorting_relabel", "relabel_tuple",
    "x_mn_decompose",
]


class ParseError(ValueError):
    """Malformed word/path/term text."""


# ---------------------------------------------------------------------------
# symbols

@dataclass(frozen=True)
class Sym:
    """One generator symbol.  ``kind`` selects the family; unused fields
    stay at their defaults so symbols hash and compare structurally."""

    kind: str
    letter: str = ""
    i: int = 0
    j: int = 0
    n: int = 0


def s_(i: int) -> Sym:
    if i < 1:
        raise ValueError(f"swap index {i} must be positive")
    return Sym("s", i=i)


def e_(i: int) -> Sym:
    if i < 1:
        raise ValueError(f"omit index {i} must be positive")
    return Sym("e", i=i)


def pe() -> Sym:
    return Sym("pe")


def x_(letter: str, i: int) -> Sym:
    if i < 1:
        raise ValueError(f"slot {i} must be positive")
    return Sym("x", letter=letter, i=i)


def bx(letter: str) -> Sym:
    return Sym("bx", letter=letter)


def f_(i: int, j: int) -> Sym:
    if i == j or i < 1 or j < 1:
        raise ValueError(f"transfer indices ({i},{j}) must be distinct and positive")
    return Sym("f", i=i, j=j)


def xc(letter: str, i: int, j: int) -> Sym:
    if i == j or i < 1 or j < 1:
        raise ValueError(f"pinned slots ({i},{j}) must be distinct and positive")
    return Sym("xc", letter=letter, i=i, j=j)


def sl(i: int, n: int) -> Sym:
    if not 1 <= i < n:
        raise ValueError(f"leveled swap s{i}:{n} needs 1 <= i < n")
    return Sym("sl", i=i, n=n)


def el(i: int, n: int) -> Sym:
    if not 1 <= i <= n:
        raise ValueError(f"leveled omit e{i}:{n} needs 1 <= i <= n")
    return Sym("el", i=i, n=n)


def xl(letter: str, i: int, n: int) -> Sym:
    if not 1 <= i <= n:
        raise ValueError(f"leveled letter {letter}@{i}:{n} needs 1 <= i <= n")
    return Sym("xl", letter=letter, i=i, n=n)


def lam(n: int) -> Sym:
    if n < 0:
        raise ValueError("level must be nonnegative")
    return Sym("lam", n=n)


def rho(n: int) -> Sym:
    if n < 0:
        raise ValueError("level must be nonnegative")
    return Sym("rho", n=n)


TX = Sym("TX")
TU = Sym("TU")
TUBAR = Sym("TUbar")

Word = tuple  # tuple[Sym, ...]


def token(sym: Sym) -> str:
    k = sym.kind
    if k == "s":
        return f"s{sym.i}"
    if k == "e":
        return f"e{sym.i}"
    if k == "pe":
        return "e"
    if k == "x":
        return f"{sym.letter}@{sym.i}"
    if k == "bx":
        return sym.letter
    if k == "f":
        return f"f{sym.i},{sym.j}"
    if k == "xc":
        return f"{sym.letter}@{sym.i};{sym.j}"
    if k == "sl":
        return f"s{sym.i}:{sym.n}"
    if k == "el":
        return f"e{sym.i}:{sym.n}"
    if k == "xl":
        return f"{sym.letter}@{sym.i}:{sym.n}"
    if k == "lam":
        return f"lam{sym.n}"
    if k == "rho":
        return f"rho{sym.n}"
    if k == "TX":
        return "X"
    if k == "TU":
        return "U"
    if k == "TUbar":
        return "Ubar"
    raise ValueError(f"unknown symbol kind {k!r}")


_TOKEN_PATTERNS = (
    (re.compile(r"X$"), lambda m: TX),
    (re.compile(r"U$"), lambda m: TU),
    (re.compile(r"Ubar$"), lambda m: TUBAR),
    (re.compile(r"s(\d+):(\d+)$"), lambda m: sl(int(m.group(1)), int(m.group(2)))),
    (re.compile(r"s(\d+)$"), lambda m: s_(int(m.group(1)))),
    (re.compile(r"e(\d+):(\d+)$"), lambda m: el(int(m.group(1)), int(m.group(2)))),
    (re.compile(r"e(\d+)$"), lambda m: e_(int(m.group(1)))),
    (re.compile(r"e$"), lambda m: pe()),
    (re.compile(r"f(\d+),(\d+)$"), lambda m: f_(int(m.group(1)), int(m.group(2)))),
    (re.compile(r"lam(\d+)$"), lambda m: lam(int(m.group(1)))),
    (re.compile(r"rho(\d+)$"), lambda m: rho(int(m.group(1)))),
    (re.compile(r"([a-z][a-z0-9_]*)@(\d+):(\d+)$"),
     lambda m: xl(m.group(1), int(m.group(2)), int(m.group(3)))),
    (re.compile(r"([a-z][a-z0-9_]*)@(\d+);(\d+)$"),
     lambda m: xc(m.group(1), int(m.group(2)), int(m.group(3)))),
    (re.compile(r"([a-z][a-z0-9_]*)@(\d+)$"), lambda m: x_(m.group(1), int(m.group(2)))),
    (re.compile(r"([a-z][a-z0-9_]*)$"), lambda m: bx(m.group(1))),
)

_IDENT_RE = re.compile(r"i(\d+)$")


def _parse_token(tok: str) -> Sym:
    for pattern, build in _TOKEN_PATTERNS:
        m = pattern.match(tok)
        if m:
            try:
                return build(m)
            except ValueError as exc:
                raise ParseError(f"bad token {tok!r}: {exc}") from None
    raise ParseError(f"unrecognized token {tok!r}")


def word_text(word) -> str:
    return " ".join(token(s) for s in word) if word else "1"


def parse_monoid_word(text: str):
    """Parse a word over the level-free alphabets.  ``1`` tokens are the
    empty word and may appear anywhere."""
    out = []
    for pos, tok in enumerate(text.split()):
        if tok == "1":
            continue
        if _IDENT_RE.match(tok):
            raise ParseError(f"token {pos}: {tok!r} is a path identity, not a monoid word")
        sym = _parse_token(tok)
        if sym.kind in ("sl", "el", "xl", "lam", "rho", "TX", "TU", "TUbar"):
            raise ParseError(f"token {pos}: {tok!r} is not a monoid-word symbol")
        out.append(sym)
    return tuple(out)


# ---------------------------------------------------------------------------
# typed paths

def edge_dr(sym: Sym) -> tuple[int, int]:
    """Source and target level of a path edge."""
    if sym.kind in ("sl", "el", "xl"):
        return sym.n, sym.n
    if sym.kind == "lam":
        return sym.n, sym.n + 1
    if sym.kind == "rho":
        return sym.n + 1, sym.n
    raise ValueError(f"{token(sym)} is not a path edge")


@dataclass(frozen=True)
class Path:
    """Edge sequence with an explicit source level (needed when empty)."""

    src: int
    edges: tuple[Sym, ...]

    def __post_init__(self):
        cur = self.src
        for sym in self.edges:
            d, r = edge_dr(sym)
            if d != cur:
                raise ValueError(f"edge {token(sym)} starts at {d}, expected {cur}")
            cur = r

    @property
    def tgt(self) -> int:
        cur = self.src
        for sym in self.edges:
            cur = edge_dr(sym)[1]
        return cur

    def __len__(self) -> int:
        return len(self.edges)


def path_text(path: Path) -> str:
    if not path.edges:
        return f"i{path.src}"
    return " ".join(token(s) for s in path.edges)


def parse_path(text: str) -> Path:
    toks = text.split()
    if not toks:
        raise ParseError("empty path text needs an explicit i<n> token")
    edges = []
    src = None
    for pos, tok in enumerate(toks):
        m = _IDENT_RE.match(tok)
        if m:
            level = int(m.group(1))
            if src is None:
                src = level
            elif _path_tgt(src, edges) != level:
                raise ParseError(f"token {pos}: identity i{level} breaks the chain")
            continue
        sym = _parse_token(tok)
        try:
            d, r = edge_dr(sym)
        except ValueError as exc:
            raise ParseError(f"token {pos}: {exc}") from None
        if src is None:
            src = d
        edges.append(sym)
    try:
        return Path(src, tuple(edges))
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def _path_tgt(src, edges):
    cur = src
    for sym in edges:
        cur = edge_dr(sym)[1]
    return cur


# ---------------------------------------------------------------------------
# tensor terms

@dataclass(frozen=True)
class TIdent:
    n: int


@dataclass(frozen=True)
class TEdge:
    sym: Sym


@dataclass(frozen=True)
class TComp:
    left: object
    right: object


@dataclass(frozen=True)
class TTens:
    left: object
    right: object


_TENSOR_EDGE_DR = {"TX": (2, 2), "TU": (1, 0), "TUbar": (0, 1), "bx": (1, 1)}


def term_d(t) -> int:
    if isinstance(t, TIdent):
        return t.n
    if isinstance(t, TEdge):
        return _TENSOR_EDGE_DR[t.sym.kind][0]
    if isinstance(t, TComp):
        return term_d(t.left)
    if isinstance(t, TTens):
        return term_d(t.left) + term_d(t.right)
    raise TypeError(f"not a term: {t!r}")


def term_r(t) -> int:
    if isinstance(t, TIdent):
        return t.n
    if isinstance(t, TEdge):
        return _TENSOR_EDGE_DR[t.sym.kind][1]
    if isinstance(t, TComp):
        return term_r(t.right)
    if isinstance(t, TTens):
        return term_r(t.left) + term_r(t.right)
    raise TypeError(f"not a term: {t!r}")


def tcompose(left, right) -> TComp:
    if term_r(left) != term_d(right):
        raise ValueError(
            f"cannot compose terms: r(left)={term_r(left)} != d(right)={term_d(right)}")
    return TComp(left, right)


def ttensor(left, right) -> TTens:
    return TTens(left, right)


def tedge(sym: Sym) -> TEdge:
    if sym.kind not in _TENSOR_EDGE_DR:
        raise ValueError(f"{token(sym)} is not a tensor edge")
    return TEdge(sym)


def pad_term(core, m: int, n: int):
    """``core`` with identity blocks of widths ``m`` and ``n`` on either
    side; zero-width blocks are dropped."""
    t = core
    if m > 0:
        t = ttensor(TIdent(m), t)
    if n > 0:
        t = ttensor(t, TIdent(n))
    return t


def compose_chain(terms):
    """Left-to-right composite of a nonempty term sequence."""
    out = terms[0]
    for t in terms[1:]:
        out = tcompose(out, t)
    return out


def term_text(t) -> str:
    if isinstance(t, TIdent):
        return f"i{t.n}"
    if isinstance(t, TEdge):
        return token(t.sym)
    if isinstance(t, TComp):
        return f"(o {term_text(t.left)} {term_text(t.right)})"
    if isinstance(t, TTens):
        return f"(p {term_text(t.left)} {term_text(t.right)})"
    raise TypeError(f"not a term: {t!r}")


def parse_term(text: str):
    toks = text.replace("(", " ( ").replace(")", " ) ").split()
    if not toks:
        raise ParseError("empty term text")
    pos = 0

    def expr():
        nonlocal pos
        if pos >= len(toks):
            raise ParseError("unexpected end of term")
        tok = toks[pos]
        if tok == "(":
            pos += 1
            if pos >= len(toks) or toks[pos] not in ("o", "p"):
                raise ParseError(f"token {pos}: expected 'o' or 'p' after '('")
            op = toks[pos]
            pos += 1
            parts = []
            while pos < len(toks) and toks[pos] != ")":
                parts.append(expr())
            if pos >= len(toks):
                raise ParseError("missing ')'")
            pos += 1
            if len(parts) < 2:
                raise ParseError(f"operator {op!r} needs at least two arguments")
            out = parts[0]
            for t in parts[1:]:
                try:
                    out = tcompose(out, t) if op == "o" else ttensor(out, t)
                except ValueError as exc:
                    raise ParseError(str(exc)) from None
            return out
        pos += 1
        m = _IDENT_RE.match(tok)
        if m:
            return TIdent(int(m.group(1)))
        sym = _parse_token(tok)
        try:
            return tedge(sym)
        except ValueError as exc:
            raise ParseError(str(exc)) from None

    out = expr()
    if pos != len(toks):
        raise ParseError(f"trailing tokens from position {pos}")
    return out


# ---------------------------------------------------------------------------
# evaluation

def sym_image(sym: Sym, base: BasePresentation, n: int | None = None) -> WreathElement:
    """Concrete diagram named by a symbol.  Level-free symbols need the
    ambient level ``n``."""
    monoid = base.require_evaluation()
    k = sym.kind
    if k in ("s", "e", "pe", "x", "bx", "f", "xc") and n is None:
        raise ValueError(f"symbol {token(sym)} needs an ambient level")
    if k == "s":
        return wreath.embed_map(monoid, pperm.swap_adjacent(sym.i, n))
    if k == "e":
        return wreath.embed_map(monoid, pperm.omit(sym.i, n))
    if k == "pe":
        return wreath.embed_map(monoid, pperm.omit(1, n))
    if k == "x":
        return WreathElement(
            unit_at(monoid, base.image_of(sym.letter), sym.i, n), pperm.identity(n))
    if k == "bx":
        return WreathElement(
            unit_at(monoid, base.image_of(sym.letter), 1, n), pperm.identity(n))
    if k == "f":
        return wreath.embed_map(monoid, pperm.transfer(sym.i, sym.j, n))
    if k == "xc":
        return WreathElement(
            pinned(monoid, base.image_of(sym.letter), sym.i, sym.j, n),
            pperm.omit(sym.j, n))
    if k == "sl":
        return wreath.embed_map(monoid, pperm.swap_adjacent(sym.i, sym.n))
    if k == "el":
        return wreath.embed_map(monoid, pperm.omit(sym.i, sym.n))
    if k == "xl":
        return WreathElement(
            unit_at(monoid, base.image_of(sym.letter), sym.i, sym.n),
            pperm.identity(sym.n))
    if k == "lam":
        return wreath.embed_map(monoid, pperm.inclusion(sym.n))
    if k == "rho":
        return wreath.embed_map(monoid, pperm.projection(sym.n))
    if k == "TX":
        return wreath.embed_map(monoid, pperm.swap2())
    if k == "TU":
        return wreath.embed_map(monoid, pperm.drop1())
    if k == "TUbar":
        return wreath.embed_map(monoid, pperm.lift1())
    raise ValueError(f"unknown symbol kind {k!r}")


def eval_word(word, base: BasePresentation, n: int) -> WreathElement:
    """Left fold of the generator images, starting at the identity."""
    monoid = base.require_evaluation()
    m0 = adjoin_zero(monoid)
    out = wreath.identity_element(monoid, n)
    for sym in word:
        out = wreath.compose(m0, out, sym_image(sym, base, n))
    return out


def eval_path(path: Path, base: BasePresentation) -> WreathElement:
    monoid = base.require_evaluation()
    m0 = adjoin_zero(monoid)
    out = wreath.identity_element(monoid, path.src)
    for sym in path.edges:
        out = wreath.compose(m0, out, sym_image(sym, base))
    return out


def eval_term(term, base: BasePresentation) -> WreathElement:
    monoid = base.require_evaluation()
    m0 = adjoin_zero(monoid)

    def rec(t):
        if isinstance(t, TIdent):
            return wreath.identity_element(monoid, t.n)
        if isinstance(t, TEdge):
            return sym_image(t.sym, base, n=1 if t.sym.kind == "bx" else None)
        if isinstance(t, TComp):
            return wreath.compose(m0, rec(t.left), rec(t.right))
        if isinstance(t, TTens):
            return wreath.tensor(rec(t.left), rec(t.right))
        raise TypeError(f"not a term: {t!r}")

    return rec(term)


# ---------------------------------------------------------------------------
# translation maps

def _conjugators(i: int):
    """Descending and ascending swap chains moving slot 1 to slot i."""
    down = tuple(s_(k) for k in range(i - 1, 0, -1))
    up = tuple(s_(k) for k in range(1, i))
    return down, up


def psi1_word(word):
    """Rewrite over the full alphabet into the small one, conjugating the
    slot-i generators down to slot 1."""
    out = []
    for sym in word:
        if sym.kind == "s":
            out.append(sym)
        elif sym.kind == "e":
            down, up = _conjugators(sym.i)
            out.extend(down + (pe(),) + up)
        elif sym.kind == "x":
            down, up = _conjugators(sym.i)
            out.extend(down + (bx(sym.letter),) + up)
        else:
            raise ValueError(f"{token(sym)} is not in the source alphabet of psi1")
    return tuple(out)


def psi2_word(word):
    """Inclusion of the small alphabet into the full one at slot 1."""
    out = []
    for sym in word:
        if sym.kind == "s":
            out.append(sym)
        elif sym.kind == "pe":
            out.append(e_(1))
        elif sym.kind == "bx":
            out.append(x_(sym.letter, 1))
        else:
            raise ValueError(f"{token(sym)} is not in the source alphabet of psi2")
    return tuple(out)


def hat_edge(sym: Sym):
    """Tensor term realizing a path edge: the local picture padded by
    identity blocks."""
    k = sym.kind
    if k == "sl":
        return pad_term(tedge(TX), sym.i - 1, sym.n - sym.i - 1)
    if k == "el":
        return pad_term(ttensor(tedge(TU), tedge(TUBAR)), sym.i - 1, sym.n - sym.i)
    if k == "xl":
        return pad_term(tedge(bx(sym.letter)), sym.i - 1, sym.n - sym.i)
    if k == "lam":
        return pad_term(tedge(TUBAR), sym.n, 0)
    if k == "rho":
        return pad_term(tedge(TU), sym.n, 0)
    raise ValueError(f"{token(sym)} is not a path edge")


def hat_path(path: Path):
    if not path.edges:
        return TIdent(path.src)
    return compose_chain([hat_edge(sym) for sym in path.edges])


def plus_word(word):
    """Re-tag leveled symbols one level up (same slots)."""
    out = []
    for sym in word:
        if sym.kind == "sl":
            out.append(sl(sym.i, sym.n + 1))
        elif sym.kind == "el":
            out.append(el(sym.i, sym.n + 1))
        elif sym.kind == "xl":
            out.append(xl(sym.letter, sym.i, sym.n + 1))
        else:
            raise ValueError(f"{token(sym)} is not a leveled symbol")
    return tuple(out)


def reverse_word(word):
    """Reverse a word of swaps; evaluates to the inverse map."""
    for sym in word:
        if sym.kind not in ("s", "sl"):
            raise ValueError(f"{token(sym)} is not a swap")
    return tuple(reversed(word))


def translate(obj, which: str):
    """Dispatch over the named translation maps."""
    if which == "psi1":
        return psi1_word(obj)
    if which == "psi2":
        return psi2_word(obj)
    if which == "hat":
        return hat_path(obj) if isinstance(obj, Path) else hat_edge(obj)
    if which == "plus":
        return plus_word(obj)
    if which == "reverse":
        return reverse_word(obj)
    raise ValueError(f"unknown translation {which!r}")


# ---------------------------------------------------------------------------
# separation of mixed words

def _split_rule(rep, is_x):
    k = 0
    while k < len(rep) and is_x(rep[k]):
        k += 1
    u, v = rep[:k], rep[k:]
    if any(is_x(s) for s in v):
        raise ValueError(f"replacement {word_text(rep)} is not of shape X* Y*")
    return u, v


def separate(word, is_x, rules, condition: str = "prefix"):
    """Rewrite a mixed word into X-part then Y-part using the rule table
    ``rules[(y, x)] -> replacement`` for ``y x``.

    ``condition="prefix"`` requires every replacement to carry at most one
    X letter; ``condition="suffix"`` at most one Y letter.  The result is a
    single flat word ``u + v``.
    """
    if condition not in ("prefix", "suffix"):
        raise ValueError(f"unknown condition {condition!r}")
    split = {}
    for key, rep in rules.items():
        u, v = _split_rule(rep, is_x)
        if condition == "prefix" and len(u) > 1:
            raise ValueError(
                f"rule for {token(key[0])} {token(key[1])} has X part longer than 1")
        if condition == "suffix" and len(v) > 1:
            raise ValueError(
                f"rule for {token(key[0])} {token(key[1])} has Y part longer than 1")
        split[key] = (u, v)

    if condition == "prefix":
        def push_left(v, z):
            # v in Y*, z in X; returns (u, v') with len(u) <= 1
            if not v:
                return (z,), ()
            u1, v1 = split[(v[-1], z)]
            if not u1:
                return (), v[:-1] + v1
            u2, v2 = push_left(v[:-1], u1[0])
            return u2, v2 + v1

        u, v = [], ()
        for z in word:
            if is_x(z):
                u2, v = push_left(v, z)
                u.extend(u2)
            else:
                v = v + (z,)
        return tuple(u) + v

    def push_right(z, u):
        # z in Y, u in X*; returns (u', v) with len(v) <= 1
        if not u:
            return (), (z,)
        u1, v1 = split[(z, u[0])]
        if not v1:
            return u1 + u[1:], ()
        u2, v2 = push_right(v1[0], u[1:])
        return u1 + u2, v2

    u, v = (), ()
    for z in reversed(word):
        if is_x(z):
            u = (z,) + u
        else:
            u, v2 = push_right(z, u)
            v = v2 + v
    return u + v


def min_separation_rules(base: BasePresentation, n: int):
    """Rules pushing slot letters left past swaps and omissions; every
    replacement has at most one slot letter, so the prefix condition holds."""
    rules = {}
    for x in base.alphabet:
        for i in range(1, n):
            for j in range(1, n + 1):
                if j == i:
                    rules[(s_(i), x_(x, i))] = (x_(x, i + 1), s_(i))
                elif j == i + 1:
                    rules[(s_(i), x_(x, i + 1))] = (x_(x, i), s_(i))
                else:
                    rules[(s_(i), x_(x, j))] = (x_(x, j), s_(i))
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                if j == i:
                    rules[(e_(i), x_(x, i))] = (e_(i),)
                else:
                    rules[(e_(i), x_(x, j))] = (x_(x, j), e_(i))
    return (lambda sym: sym.kind == "x"), rules


def sing_separation_rules(base: BasePresentation, n: int):
    """Rules pushing omissions left past pinned letters; replacements have
    at most one pinned letter, so the suffix condition holds."""
    rules = {}
    for x in base.alphabet:
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                if i == j:
                    continue
                for k in range(1, n + 1):
                    if k == j:
                        rules[(xc(x, i, j), e_(k))] = (e_(j), xc(x, i, j))
                    elif k == i:
                        rules[(xc(x, i, j), e_(k))] = (e_(i), e_(j))
                    else:
                        rules[(xc(x, i, j), e_(k))] = (e_(k), xc(x, i, j))
    return (lambda sym: sym.kind == "e"), rules


# ---------------------------------------------------------------------------
# canonical witness words

@lru_cache(maxsize=None)
def word_for_monoid_element(base: BasePresentation):
    """Shortest-first witness word per monoid element (letters in alphabet
    order), keyed by element index."""
    monoid = base.require_evaluation()
    words = {monoid.identity: ()}
    frontier = [monoid.identity]
    while frontier:
        nxt = []
        for a in frontier:
            for letter in base.alphabet:
                b = monoid.mul(a, base.image_of(letter))
                if b not in words:
                    words[b] = words[a] + (letter,)
                    nxt.append(b)
        frontier = nxt
    return words


@lru_cache(maxsize=None)
def word_for_pperm(n: int, popova: bool = False):
    """Witness words over the swap/omit alphabet for every partial
    bijection at level ``n``, by breadth-first closure from the identity."""
    if popova:
        gens = [(s_(i), pperm.swap_adjacent(i, n)) for i in range(1, n)]
        if n >= 1:
            gens.append((pe(), pperm.omit(1, n)))
    else:
        gens = [(s_(i), pperm.swap_adjacent(i, n)) for i in range(1, n)]
        gens.extend((e_(i), pperm.omit(i, n)) for i in range(1, n + 1))
    words = {pperm.identity(n): ()}
    frontier = [pperm.identity(n)]
    while frontier:
        nxt = []
        for alpha in frontier:
            for sym, g in gens:
                beta = alpha.compose(g)
                if beta not in words:
                    words[beta] = words[alpha] + (sym,)
                    nxt.append(beta)
        frontier = nxt
    return words


@lru_cache(maxsize=None)
def word_for_singular_pperm(n: int):
    """Witness words over the transfer alphabet for every strictly partial
    bijection at level ``n`` (no empty word: closure starts from the
    generators themselves)."""
    gens = [(f_(i, j), pperm.transfer(i, j, n))
            for i in range(1, n + 1) for j in range(1, n + 1) if i != j]
    words = {}
    frontier = []
    for sym, g in gens:
        if g not in words:
            words[g] = (sym,)
            frontier.append(g)
    while frontier:
        nxt = []
        for alpha in frontier:
            for sym, g in gens:
                beta = alpha.compose(g)
                if beta not in words:
                    words[beta] = words[alpha] + (sym,)
                    nxt.append(beta)
        frontier = nxt
    return words


def lift_word_i(letters, i: int):
    """Slot-tagged copy of a base word; empty stays empty."""
    return tuple(x_(x, i) for x in letters)


def lift_word_ij(letters, i: int, j: int):
    """Pinned copy of a base word; the empty word becomes the omission at
    the pinned slot."""
    if not letters:
        return (e_(j),)
    return tuple(xc(x, i, j) for x in letters)


def leveled_word(word, level: int):
    """Tag a level-free word with an explicit level."""
    out = []
    for sym in word:
        if sym.kind == "s":
            out.append(sl(sym.i, level))
        elif sym.kind == "e":
            out.append(el(sym.i, level))
        elif sym.kind == "x":
            out.append(xl(sym.letter, sym.i, level))
        else:
            raise ValueError(f"cannot level {token(sym)}")
    return tuple(out)


def _require_plain_labels(elem: WreathElement, monoid):
    if elem.tup != ones_on(monoid, elem.pmap.dom, elem.pmap.m):
        raise ValueError("element carries nontrivial labels")


def _wreath_factor_words(elem: WreathElement, base: BasePresentation):
    """Slot words and map word of the canonical factorization
    tuple-then-map, at the element's own level (an endo-element)."""
    monoid = base.require_evaluation()
    n = elem.dom_size
    mwords = word_for_monoid_element(base)
    parts = []
    for i in range(1, n + 1):
        v = elem.tup.entries[i - 1]
        parts.append(mwords[v - 1] if v else ())
    return parts, word_for_pperm(n)[elem.pmap]


def canonical_word(elem, kind: str, base: BasePresentation, n: int | None = None):
    """A word/path/term over the chosen alphabet evaluating to ``elem``."""
    monoid = base.require_evaluation()
    if kind in ("r-in", "r-in-popova"):
        alpha = elem.pmap if isinstance(elem, WreathElement) else elem
        if isinstance(elem, WreathElement):
            _require_plain_labels(elem, monoid)
        return word_for_pperm(alpha.m, popova=(kind == "r-in-popova"))[alpha]
    if kind == "r-min":
        parts, w2 = _wreath_factor_words(elem, base)
        out = []
        for i, letters in enumerate(parts, start=1):
            out.extend(lift_word_i(letters, i))
        return tuple(out) + w2
    if kind == "r-min-small":
        return psi1_word(canonical_word(elem, "r-min", base))
    if kind == "r-sing-in":
        alpha = elem.pmap if isinstance(elem, WreathElement) else elem
        if isinstance(elem, WreathElement):
            _require_plain_labels(elem, monoid)
        if alpha.is_total_bijection():
            raise ValueError("units have no word over the transfer alphabet")
        return word_for_singular_pperm(alpha.m)[alpha]
    if kind == "r-sing-tuples":
        a = elem.tup if isinstance(elem, WreathElement) else elem
        if isinstance(elem, WreathElement) and \
                elem.pmap != pperm.partial_identity(a.support, len(a)):
            raise ValueError("element is not an embedded tuple")
        return _singular_tuple_word(a, base)
    if kind == "r-m-sing-in":
        if is_full_permutation(elem):
            raise ValueError("units have no word over the singular alphabet")
        a = elem.tup
        slot = _singular_tuple_word(a, base)
        return slot + word_for_singular_pperm(elem.pmap.m)[_strip_labels(elem)]
    if kind == "omega-mi":
        return _category_path(elem, base)
    if kind in ("xi-i", "xi-mi"):
        return hat_path(_category_path(elem, base))
    raise ValueError(f"unknown kind {kind!r}")


def is_full_permutation(elem: WreathElement) -> bool:
    return elem.pmap.is_total_bijection()


def _strip_labels(elem: WreathElement) -> PartialBijection:
    return elem.pmap


def _singular_tuple_word(a: MTuple, base: BasePresentation):
    n = len(a)
    support = set(a.support)
    missing = [k for k in range(1, n + 1) if k not in support]
    if not missing:
        raise ValueError("tuple has full support; not in the singular part")
    pin = missing[-1]
    mwords = word_for_monoid_element(base)
    out = [e_(k) for k in missing]
    for i in sorted(support):
        out.extend(lift_word_ij(mwords[a.entries[i - 1] - 1], i, pin))
    return tuple(out)


def _category_path(elem: WreathElement, base: BasePresentation) -> Path:
    """Factor a labelled partial bijection ``m -> n`` through the larger
    level: inclusions up then an endo word, or an endo word then
    projections down."""
    m, n = elem.dom_size, elem.cod_size
    monoid = base.require_evaluation()
    if m <= n:
        padded = WreathElement(
            MTuple(elem.tup.entries + (0,) * (n - m)),
            PartialBijection(n, n, elem.pmap.images + (0,) * (n - m)))
        parts, w2 = _wreath_factor_words(padded, base)
        word = []
        for i, letters in enumerate(parts, start=1):
            word.extend(lift_word_i(letters, i))
        word = tuple(word) + w2
        edges = tuple(lam(k) for k in range(m, n)) + leveled_word(word, n)
        return Path(m, edges)
    inner = WreathElement(
        elem.tup,
        PartialBijection(m, m, elem.pmap.images))
    parts, w2 = _wreath_factor_words(inner, base)
    word = []
    for i, letters in enumerate(parts, start=1):
        word.extend(lift_word_i(letters, i))
    word = tuple(word) + w2
    edges = leveled_word(word, m) + tuple(rho(k) for k in range(m - 1, n - 1, -1))
    return Path(m, edges)


# ---------------------------------------------------------------------------
# normal forms

def normal_form_wreath_word(word, base: BasePresentation, n: int):
    """Slot-sorted shape: per-slot base words followed by a map word, with
    empty slot words off the domain of the map part.  Computed by
    evaluating and re-factoring canonically."""
    elem = eval_word(word, base, n)
    return _wreath_factor_words(elem, base)


def reassemble_wreath(parts, map_word):
    out = []
    for i, letters in enumerate(parts, start=1):
        out.extend(lift_word_i(letters, i))
    return tuple(out) + tuple(map_word)


def sorting_relabel(support, n: int):
    """Permutation of ``1..n`` (as a tuple, slot i maps to sigma[i-1])
    sending the support to an initial segment, order preserved on both
    parts."""
    support = sorted(support)
    rest = [k for k in range(1, n + 1) if k not in set(support)]
    sigma = [0] * n
    for new, old in enumerate(support + rest, start=1):
        sigma[old - 1] = new
    return tuple(sigma)


def relabel_tuple(a: MTuple, sigma) -> MTuple:
    out = [0] * len(a)
    for i, v in enumerate(a.entries, start=1):
        out[sigma[i - 1] - 1] = v
    return MTuple(tuple(out))


def normal_form_singular_tuple(word, base: BasePresentation, n: int):
    """Initial-segment shape for words evaluating to singular tuples:
    returns ``(q, sigma, slot_words)`` where ``sigma`` is the sorting
    relabel applied to the evaluated tuple, and the reassembled word over
    the relabelled coordinates is omissions of ``q+1..n`` followed by
    pinned slot words ``1..q``."""
    elem = eval_word(word, base, n)
    a = elem.tup
    q = len(a.support)
    if q == n:
        raise ValueError("word does not evaluate into the singular part")
    sigma = sorting_relabel(a.support, n)
    b = relabel_tuple(a, sigma)
    mwords = word_for_monoid_element(base)
    slot_words = tuple(mwords[b.entries[k - 1] - 1] for k in range(1, q + 1))
    return q, sigma, slot_words


def reassemble_singular(q: int, n: int, slot_words):
    out = [e_(k) for k in range(q + 1, n + 1)]
    for i, letters in enumerate(slot_words, start=1):
        out.extend(lift_word_ij(letters, i, n))
    return tuple(out)


# ---------------------------------------------------------------------------
# tensor decompositions of padded edges

def x_mn_decompose(sym: Sym, m: int, n: int):
    """A padded edge as a term, and a path whose edgewise tensor
    realization evaluates to the same element."""
    if sym.kind == "TX":
        term = pad_term(tedge(TX), m, n)
        path = Path(m + n + 2, (sl(m + 1, m + n + 2),))
        return term, path
    if sym.kind == "bx":
        term = pad_term(tedge(sym), m, n)
        path = Path(m + n + 1, (xl(sym.letter, m + 1, m + n + 1),))
        return term, path
    if sym.kind == "TU":
        term = pad_term(tedge(TU), m, n)
        edges = tuple(sl(k, m + n + 1) for k in range(m + 1, m + n + 1)) + (rho(m + n),)
        return term, Path(m + n + 1, edges)
    if sym.kind == "TUbar":
        term = pad_term(tedge(TUBAR), m, n)
        edges = (lam(m + n),) + tuple(sl(k, m + n + 1) for k in range(m + n, m, -1))
        return term, Path(m + n, edges)
    raise ValueError(f"{token(sym)} is not a tensor edge")
