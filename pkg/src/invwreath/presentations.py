"""Builders for the generator-and-relation presentations of the wreath
structures, parameterized by the base presentation and a level or object cap.

Kinds and flavors:

    r-in            monoid     swap/omit alphabet at one level
    r-in-popova     monoid     swaps plus a single omission
    r-min           monoid     swap/omit plus one slot alphabet per position
    r-min-small     monoid     swaps, one omission, bare base letters
    omega-mi        category   leveled alphabet plus inclusion/projection edges
    xi-i            tensor     the three untyped edges
    xi-mi           tensor     the three edges plus the base letters
    r-sing-in       semigroup  transfer alphabet
    r-sing-tuples   semigroup  omissions plus pinned slot letters
    r-m-sing-in     semigroup  union of the two singular alphabets

Instantiation policy, fixed for reproducible output: schemas are emitted in
the order listed per kind; index tuples run lexicographically over all
values for which every mentioned symbol is well formed, plus any stated
constraint; chained equalities ``a = b = c`` contribute the adjacent pairs
``(a, b)`` and ``(b, c)``; a schema whose two sides swap under exchanging a
symmetric index pair is instantiated once per unordered choice.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .base import BasePresentation
from .words import (
    Path,
    Sym,
    TIdent,
    bx,
    compose_chain,
    e_,
    f_,
    lam,
    lift_word_i,
    lift_word_ij,
    el,
    path_text,
    pe,
    rho,
    s_,
    sl,
    sym_image,
    tcompose,
    tedge,
    term_text,
    token,
    ttensor,
    TX,
    TU,
    TUBAR,
    word_text,
    x_,
    xc,
    xl,
)

__all__ = [
    "KINDS",
    "KIND_FLAVOR",
    "Presentation",
    "build",
    "generator_images",
    "emit_text",
    "emit_json",
]

KIND_FLAVOR = {
    "r-in": "monoid",
    "r-in-popova": "monoid",
    "r-min": "monoid",
    "r-min-small": "monoid",
    "omega-mi": "category",
    "xi-i": "tensor",
    "xi-mi": "tensor",
    "r-sing-in": "semigroup",
    "r-sing-tuples": "semigroup",
    "r-m-sing-in": "semigroup",
}

KINDS = tuple(KIND_FLAVOR)


@dataclass(frozen=True)
class Presentation:
    kind: str
    flavor: str
    base: BasePresentation
    n: int | None
    cap: int | None
    alphabet: tuple[Sym, ...]
    relations: tuple


def build(kind: str, base: BasePresentation, n: int | None = None,
          cap: int | None = None) -> Presentation:
    """Instantiate a presentation kind at level ``n`` (monoid/semigroup
    kinds) or up to object ``cap`` (the category kind)."""
    if kind not in KIND_FLAVOR:
        raise ValueError(f"unknown presentation kind {kind!r}")
    flavor = KIND_FLAVOR[kind]
    if flavor in ("monoid", "semigroup"):
        if n is None:
            raise ValueError(f"kind {kind} needs a level n")
        floor = {"r-in": 0, "r-in-popova": 1, "r-min": 0, "r-min-small": 1}.get(kind, 2)
        if n < floor:
            raise ValueError(f"kind {kind} needs n >= {floor}")
    elif kind == "omega-mi":
        if cap is None or cap < 0:
            raise ValueError("the category kind needs an object cap >= 0")
    builder = _BUILDERS[kind]
    alphabet, relations = builder(base, n, cap)
    return Presentation(kind, flavor, base, n if flavor in ("monoid", "semigroup") else None,
                        cap if kind == "omega-mi" else None,
                        tuple(alphabet), tuple(relations))


# ---------------------------------------------------------------------------
# level-free monoid kinds

def _r_in_core(n):
    rels = []
    for i in range(1, n):                                     # swaps are involutions
        rels.append(((s_(i), s_(i)), ()))
    for i in range(1, n):                                     # distant swaps commute
        for j in range(i + 2, n):
            rels.append(((s_(i), s_(j)), (s_(j), s_(i))))
    for i in range(1, n - 1):                                 # braid
        rels.append(((s_(i), s_(i + 1), s_(i)), (s_(i + 1), s_(i), s_(i + 1))))
    return rels


def _r_in(base, n, cap):
    alphabet = [s_(i) for i in range(1, n)] + [e_(i) for i in range(1, n + 1)]
    rels = _r_in_core(n)
    for i in range(1, n + 1):                                 # omissions are idempotent
        rels.append(((e_(i), e_(i)), (e_(i),)))
    for i in range(1, n + 1):                                 # omissions commute
        for j in range(i + 1, n + 1):
            rels.append(((e_(i), e_(j)), (e_(j), e_(i))))
    for i in range(1, n):                                     # swap past an untouched omission
        for j in range(1, n + 1):
            if j not in (i, i + 1):
                rels.append(((s_(i), e_(j)), (e_(j), s_(i))))
    for i in range(1, n):                                     # swap carries the omitted slot
        rels.append(((s_(i), e_(i)), (e_(i + 1), s_(i))))
    for i in range(1, n):                                     # swap dies under both omissions
        rels.append(((e_(i), e_(i + 1), s_(i)), (e_(i), e_(i + 1))))
    return alphabet, rels


def _popova_core(n):
    rels = _r_in_core(n)
    rels.append(((pe(), pe()), (pe(),)))
    if n >= 2:
        w = (pe(), s_(1), pe(), s_(1))
        rels.append((w, (pe(), s_(1), pe())))
        rels.append(((pe(), s_(1), pe()), (s_(1), pe(), s_(1), pe())))
    for i in range(2, n):
        rels.append(((pe(), s_(i)), (s_(i), pe())))
    return rels


def _r_in_popova(base, n, cap):
    alphabet = [s_(i) for i in range(1, n)] + [pe()]
    return alphabet, _popova_core(n)


def _r_min(base, n, cap):
    letters = base.alphabet
    alphabet = [s_(i) for i in range(1, n)] + [e_(i) for i in range(1, n + 1)]
    alphabet += [x_(x, i) for i in range(1, n + 1) for x in letters]
    _, rels = _r_in(base, n, cap)
    for (u, v) in base.relations:                             # base relations per slot
        for i in range(1, n + 1):
            rels.append((lift_word_i(u, i), lift_word_i(v, i)))
    for i in range(1, n + 1):                                 # distinct slots commute
        for j in range(i + 1, n + 1):
            for x in letters:
                for y in letters:
                    rels.append(((x_(x, i), x_(y, j)), (x_(y, j), x_(x, i))))
    for i in range(1, n):                                     # swap past an untouched slot
        for j in range(1, n + 1):
            if j not in (i, i + 1):
                for x in letters:
                    rels.append(((s_(i), x_(x, j)), (x_(x, j), s_(i))))
    for i in range(1, n):                                     # swap moves the slot up
        for x in letters:
            rels.append(((s_(i), x_(x, i)), (x_(x, i + 1), s_(i))))
    for i in range(1, n + 1):                                 # omission past other slots
        for j in range(1, n + 1):
            if j != i:
                for x in letters:
                    rels.append(((e_(i), x_(x, j)), (x_(x, j), e_(i))))
    for i in range(1, n + 1):                                 # omission absorbs its own slot
        for x in letters:
            rels.append(((e_(i), x_(x, i)), (e_(i),)))
            rels.append(((e_(i),), (x_(x, i), e_(i))))
    return alphabet, rels


def _r_min_small(base, n, cap):
    letters = base.alphabet
    alphabet = [s_(i) for i in range(1, n)] + [pe()] + [bx(x) for x in letters]
    rels = _popova_core(n)
    for (u, v) in base.relations:                             # base relations verbatim
        rels.append((tuple(bx(x) for x in u), tuple(bx(x) for x in v)))
    for i in range(2, n):                                     # high swaps miss slot 1
        for x in letters:
            rels.append(((s_(i), bx(x)), (bx(x), s_(i))))
    if n >= 2:
        for x in letters:                                     # slot 1 and conjugated slot 2
            for y in letters:
                rels.append(((bx(x), s_(1), bx(y), s_(1)),
                             (s_(1), bx(y), s_(1), bx(x))))
        for x in letters:
            rels.append(((pe(), s_(1), bx(x), s_(1)),
                         (s_(1), bx(x), s_(1), pe())))
    for x in letters:                                         # omission absorbs slot 1
        rels.append(((pe(), bx(x)), (bx(x), pe())))
        rels.append(((bx(x), pe()), (pe(),)))
    return alphabet, rels


# ---------------------------------------------------------------------------
# category kind

def _level_edges(letters, n):
    out = [sl(i, n) for i in range(1, n)]
    out += [el(i, n) for i in range(1, n + 1)]
    out += [xl(x, i, n) for i in range(1, n + 1) for x in letters]
    return out


def _omega_mi(base, n, cap):
    letters = base.alphabet
    alphabet = []
    for k in range(cap + 1):
        alphabet.extend(_level_edges(letters, k))
    for k in range(cap):
        alphabet.append(lam(k))
        alphabet.append(rho(k))

    def loop(k, *syms):
        return Path(k, tuple(syms))

    rels = []
    for k in range(cap + 1):
        for i in range(1, k):
            rels.append((loop(k, sl(i, k), sl(i, k)), loop(k)))
        for i in range(1, k + 1):
            rels.append((loop(k, el(i, k), el(i, k)), loop(k, el(i, k))))
        for i in range(1, k + 1):
            for j in range(i + 1, k + 1):
                rels.append((loop(k, el(i, k), el(j, k)), loop(k, el(j, k), el(i, k))))
        for i in range(1, k):
            for j in range(1, k + 1):
                if j not in (i, i + 1):
                    rels.append((loop(k, sl(i, k), el(j, k)), loop(k, el(j, k), sl(i, k))))
        for i in range(1, k):
            rels.append((loop(k, sl(i, k), el(i, k)), loop(k, el(i + 1, k), sl(i, k))))
            rels.append((loop(k, el(i, k), el(i + 1, k), sl(i, k)),
                         loop(k, el(i, k), el(i + 1, k))))
        for i in range(1, k):
            for j in range(i + 2, k):
                rels.append((loop(k, sl(i, k), sl(j, k)), loop(k, sl(j, k), sl(i, k))))
        for i in range(1, k - 1):
            rels.append((loop(k, sl(i, k), sl(i + 1, k), sl(i, k)),
                         loop(k, sl(i + 1, k), sl(i, k), sl(i + 1, k))))
        for (u, v) in base.relations:
            for i in range(1, k + 1):
                rels.append((loop(k, *_leveled_slot(u, i, k)),
                             loop(k, *_leveled_slot(v, i, k))))
        for i in range(1, k + 1):
            for j in range(i + 1, k + 1):
                for x in letters:
                    for y in letters:
                        rels.append((loop(k, xl(x, i, k), xl(y, j, k)),
                                     loop(k, xl(y, j, k), xl(x, i, k))))
        for i in range(1, k):
            for j in range(1, k + 1):
                if j not in (i, i + 1):
                    for x in letters:
                        rels.append((loop(k, sl(i, k), xl(x, j, k)),
                                     loop(k, xl(x, j, k), sl(i, k))))
        for i in range(1, k):
            for x in letters:
                rels.append((loop(k, sl(i, k), xl(x, i, k)),
                             loop(k, xl(x, i + 1, k), sl(i, k))))
        for i in range(1, k + 1):
            for j in range(1, k + 1):
                if j != i:
                    for x in letters:
                        rels.append((loop(k, el(i, k), xl(x, j, k)),
                                     loop(k, xl(x, j, k), el(i, k))))
        for i in range(1, k + 1):
            for x in letters:
                rels.append((loop(k, el(i, k), xl(x, i, k)), loop(k, el(i, k))))
                rels.append((loop(k, el(i, k)), loop(k, xl(x, i, k), el(i, k))))
    for k in range(cap):
        rels.append((Path(k, (lam(k), rho(k))), Path(k, ())))
        rels.append((Path(k + 1, (rho(k), lam(k))), Path(k + 1, (el(k + 1, k + 1),))))
        for i in range(1, k):
            rels.append((Path(k, (sl(i, k), lam(k))), Path(k, (lam(k), sl(i, k + 1)))))
        for i in range(1, k + 1):
            rels.append((Path(k, (el(i, k), lam(k))), Path(k, (lam(k), el(i, k + 1)))))
        for i in range(1, k + 1):
            for x in letters:
                rels.append((Path(k, (xl(x, i, k), lam(k))),
                             Path(k, (lam(k), xl(x, i, k + 1)))))
        for i in range(1, k):
            rels.append((Path(k + 1, (rho(k), sl(i, k))), Path(k + 1, (sl(i, k + 1), rho(k)))))
        for i in range(1, k + 1):
            rels.append((Path(k + 1, (rho(k), el(i, k))), Path(k + 1, (el(i, k + 1), rho(k)))))
        for i in range(1, k + 1):
            for x in letters:
                rels.append((Path(k + 1, (rho(k), xl(x, i, k))),
                             Path(k + 1, (xl(x, i, k + 1), rho(k)))))
    return alphabet, rels


def _leveled_slot(word, i, k):
    return tuple(xl(x, i, k) for x in word)


# ---------------------------------------------------------------------------
# tensor kinds

def _word_chain(word, letters_to_edges):
    if not word:
        return TIdent(1)
    return compose_chain([letters_to_edges(x) for x in word])


def _xi_core():
    I = TIdent(1)
    X = tedge(TX)
    U = tedge(TU)
    Ub = tedge(TUBAR)
    XI = ttensor(X, I)
    IX = ttensor(I, X)
    rels = [
        (tcompose(X, X), TIdent(2)),
        (tcompose(tcompose(XI, IX), XI), tcompose(tcompose(IX, XI), IX)),
        (tcompose(Ub, U), TIdent(0)),
        (tcompose(X, ttensor(U, I)), ttensor(I, U)),
        (tcompose(ttensor(Ub, I), X), ttensor(I, Ub)),
    ]
    return rels


def _xi_i(base, n, cap):
    return [TX, TU, TUBAR], _xi_core()


def _xi_mi(base, n, cap):
    letters = base.alphabet
    alphabet = [TX, TU, TUBAR] + [bx(x) for x in letters]
    I = TIdent(1)
    X = tedge(TX)
    U = tedge(TU)
    Ub = tedge(TUBAR)
    rels = []
    for (u, v) in base.relations:                             # base relations as loops at 1
        rels.append((_word_chain(u, lambda c: tedge(bx(c))),
                     _word_chain(v, lambda c: tedge(bx(c)))))
    rels.extend(_xi_core())
    for x in letters:                                         # swap carries a label across
        xe = tedge(bx(x))
        rels.append((tcompose(X, ttensor(xe, I)), tcompose(ttensor(I, xe), X)))
    for x in letters:                                         # labels die against the caps
        rels.append((tcompose(tedge(bx(x)), U), U))
    for x in letters:
        rels.append((tcompose(Ub, tedge(bx(x))), Ub))
    return alphabet, rels


# ---------------------------------------------------------------------------
# singular kinds

def _ordered_pairs(n):
    return [(i, j) for i in range(1, n + 1) for j in range(1, n + 1) if i != j]


def _r_sing_in(base, n, cap):
    alphabet = [f_(i, j) for i, j in _ordered_pairs(n)]
    rels = []
    for i, j in _ordered_pairs(n):                            # transfer is regular
        rels.append(((f_(i, j), f_(j, i), f_(i, j)), (f_(i, j),)))
    for i, j in _ordered_pairs(n):                            # cube equals square
        rels.append(((f_(i, j),) * 3, (f_(i, j),) * 2))
    for i in range(1, n + 1):                                 # squares agree across the pair
        for j in range(i + 1, n + 1):
            rels.append(((f_(i, j),) * 2, (f_(j, i),) * 2))
    pairs = _ordered_pairs(n)
    for a, (i, j) in enumerate(pairs):                        # disjoint transfers commute
        for (k, l) in pairs[a + 1:]:
            if {i, j} & {k, l}:
                continue
            rels.append(((f_(i, j), f_(k, l)), (f_(k, l), f_(i, j))))
    for i in range(1, n + 1):                                 # projections at i agree
        for j in range(1, n + 1):
            if j == i:
                continue
            for k in range(j + 1, n + 1):
                if k == i:
                    continue
                rels.append(((f_(i, j), f_(j, i)), (f_(i, k), f_(k, i))))
    for i, j in _ordered_pairs(n):                            # sliding a shared slot
        for k in range(1, n + 1):
            if k in (i, j):
                continue
            rels.append(((f_(i, j), f_(i, k)), (f_(j, k), f_(i, j))))
            rels.append(((f_(j, k), f_(i, j)), (f_(i, k), f_(j, k))))
    for i in range(1, n + 1):                                 # three-cycles match transposed
        for j in range(i + 1, n + 1):
            for k in range(1, n + 1):
                if k in (i, j):
                    continue
                rels.append(((f_(k, i), f_(i, j), f_(j, k)),
                             (f_(k, j), f_(j, i), f_(i, k))))
    for i, j in _ordered_pairs(n):                            # cycle then move elsewhere
        for k in range(1, n + 1):
            if k in (i, j):
                continue
            for l in range(1, n + 1):
                if l in (i, j, k):
                    continue
                rels.append(((f_(k, i), f_(i, j), f_(j, k), f_(k, l)),
                             (f_(k, l), f_(l, i), f_(i, j), f_(j, l))))
    return alphabet, rels


def _r_sing_tuples(base, n, cap):
    letters = base.alphabet
    alphabet = [e_(i) for i in range(1, n + 1)]
    alphabet += [xc(x, i, j) for i in range(1, n + 1)
                 for j in range(1, n + 1) if j != i for x in letters]
    rels = []
    for i in range(1, n + 1):
        rels.append(((e_(i), e_(i)), (e_(i),)))
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            rels.append(((e_(i), e_(j)), (e_(j), e_(i))))
    for (u, v) in base.relations:                             # base relations, pinned
        for i, j in _ordered_pairs(n):
            rels.append((lift_word_ij(u, i, j), lift_word_ij(v, i, j)))
    for i, j in _ordered_pairs(n):                            # untouched omission slides and re-pins
        for k in range(1, n + 1):
            if k in (i, j):
                continue
            for x in letters:
                rels.append(((xc(x, i, j), e_(k)), (e_(k), xc(x, i, j))))
                rels.append(((e_(k), xc(x, i, j)), (e_(j), xc(x, i, k))))
    for i, j in _ordered_pairs(n):                            # pinned slot absorbs its omission
        for x in letters:
            rels.append(((xc(x, i, j), e_(j)), (e_(j), xc(x, i, j))))
            rels.append(((e_(j), xc(x, i, j)), (xc(x, i, j),)))
    for i, j in _ordered_pairs(n):                            # omitting the labelled slot
        for x in letters:
            rels.append(((xc(x, i, j), e_(i)), (e_(i), xc(x, i, j))))
            rels.append(((e_(i), xc(x, i, j)), (e_(i), e_(j))))
    for i in range(1, n + 1):                                 # same pin, different slots commute
        for j in range(i + 1, n + 1):
            for k in range(1, n + 1):
                if k in (i, j):
                    continue
                for x in letters:
                    for y in letters:
                        rels.append(((xc(x, i, k), xc(y, j, k)),
                                     (xc(y, j, k), xc(x, i, k))))
    return alphabet, rels


def _r_m_sing_in(base, n, cap):
    letters = base.alphabet
    f_alpha, f_rels = _r_sing_in(base, n, cap)
    t_alpha, t_rels = _r_sing_tuples(base, n, cap)
    alphabet = f_alpha + t_alpha
    rels = list(f_rels) + list(t_rels)
    for i, j in _ordered_pairs(n):                            # transfer and back omits i
        rels.append(((f_(i, j), f_(j, i)), (e_(i),)))
    for i, j in _ordered_pairs(n):                            # label crosses its own transfer
        for x in letters:
            rels.append(((f_(i, j), xc(x, i, j)), (xc(x, j, i), f_(i, j))))
    for i, j in _ordered_pairs(n):                            # label at the moved slot
        for k in range(1, n + 1):
            if k in (i, j):
                continue
            for x in letters:
                rels.append(((f_(i, j), xc(x, i, k)), (xc(x, j, k), f_(i, j))))
    for i, j in _ordered_pairs(n):                            # pin at the dead slot
        for k in range(1, n + 1):
            # k must differ from i (the pinned letter needs k != i) but k = j
            # is meaningful and included
            if k == i:
                continue
            for x in letters:
                rels.append(((f_(i, j), xc(x, k, i)), (xc(x, k, i), e_(j))))
    for i, j in _ordered_pairs(n):                            # label rides into the transfer
        for k in range(1, n + 1):
            # k must differ from j; this covers distinct i,j,k as well as k = i
            if k == j:
                continue
            for x in letters:
                rels.append(((f_(i, j), xc(x, j, k)), (f_(i, j), f_(k, j))))
    for i, j in _ordered_pairs(n):                            # pin at the target slot
        for k in range(1, n + 1):
            if k in (i, j):
                continue
            for x in letters:
                rels.append(((f_(i, j), xc(x, k, j)), (xc(x, k, i), f_(i, j))))
    for i, j in _ordered_pairs(n):                            # fully disjoint
        for k, l in _ordered_pairs(n):
            if {i, j} & {k, l}:
                continue
            for x in letters:
                rels.append(((f_(i, j), xc(x, k, l)), (xc(x, k, l), f_(i, j))))
    return alphabet, rels


_BUILDERS = {
    "r-in": _r_in,
    "r-in-popova": _r_in_popova,
    "r-min": _r_min,
    "r-min-small": _r_min_small,
    "omega-mi": _omega_mi,
    "xi-i": _xi_i,
    "xi-mi": _xi_mi,
    "r-sing-in": _r_sing_in,
    "r-sing-tuples": _r_sing_tuples,
    "r-m-sing-in": _r_m_sing_in,
}


# ---------------------------------------------------------------------------
# generator images and emission

def generator_images(p: Presentation) -> dict:
    """Total map from the alphabet to concrete elements.  Needs a base
    monoid table."""
    p.base.require_evaluation()
    out = {}
    for sym in p.alphabet:
        if sym.kind == "bx":
            level = 1 if p.flavor == "tensor" else p.n
            out[sym] = sym_image(sym, p.base, level)
        elif p.flavor in ("monoid", "semigroup"):
            out[sym] = sym_image(sym, p.base, p.n)
        else:
            out[sym] = sym_image(sym, p.base)
    return out


def _side_text(side, flavor: str) -> str:
    if flavor in ("monoid", "semigroup"):
        return word_text(side)
    if flavor == "category":
        return path_text(side)
    return term_text(side)


def _side_tokens(side, flavor: str):
    if flavor in ("monoid", "semigroup"):
        return [token(s) for s in side]
    if flavor == "category":
        return [path_text(side)] if not side.edges else [token(s) for s in side.edges]
    return _side_text(side, flavor)


def emit_text(p: Presentation) -> str:
    """One relation per line, ``lhs = rhs``, after a short comment header."""
    lines = []
    scope = f"n: {p.n}" if p.n is not None else (f"cap: {p.cap}" if p.cap is not None else "cap: none")
    lines.append(f"# kind: {p.kind}  flavor: {p.flavor}  {scope}  monoid: {p.base.name or 'custom'}")
    lines.append("# generators: " + (" ".join(token(s) for s in p.alphabet) or "(none)"))
    for lhs, rhs in p.relations:
        lines.append(f"{_side_text(lhs, p.flavor)} = {_side_text(rhs, p.flavor)}")
    return "\n".join(lines) + "\n"


def emit_json(p: Presentation) -> str:
    obj = {
        "kind": p.kind,
        "flavor": p.flavor,
        "n": p.n,
        "cap": p.cap,
        "monoid": p.base.name or "custom",
        "alphabet": [token(s) for s in p.alphabet],
        "relations": [
            [_side_tokens(lhs, p.flavor), _side_tokens(rhs, p.flavor)]
            for lhs, rhs in p.relations
        ],
    }
    return json.dumps(obj, indent=2) + "\n"
