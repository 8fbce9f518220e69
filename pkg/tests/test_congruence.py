"""Coset-style enumeration against brute-force cardinalities."""

import dataclasses

import pytest

from invwreath import wreath
from invwreath.base import builtin
from invwreath.congruence import UnsupportedFlavorError, enumerate_congruence
from invwreath.pperm import count_partial_bijections
from invwreath.presentations import build
from invwreath.words import parse_monoid_word as w

TRIV = builtin("trivial")
C2 = builtin("c2")


def test_plain_kind_counts():
    for n, want in ((2, 7), (3, 34), (4, 209)):
        assert enumerate_congruence(build("r-in", TRIV, n=n)).size == want
        assert enumerate_congruence(build("r-in-popova", TRIV, n=n)).size == want


def test_degenerate_levels():
    assert enumerate_congruence(build("r-in", TRIV, n=0)).size == 1
    assert enumerate_congruence(build("r-in", TRIV, n=1)).size == 2
    assert enumerate_congruence(build("r-in-popova", TRIV, n=1)).size == 2


def test_wreath_kind_counts():
    for base, n in ((C2, 2), (C2, 3), (builtin("sl2"), 2), (builtin("c3"), 2)):
        want = wreath.count_wreath(base.monoid, n, n)
        assert enumerate_congruence(build("r-min", base, n=n)).size == want
        assert enumerate_congruence(build("r-min-small", base, n=n)).size == want


def test_singular_counts():
    import math
    for n in (2, 3, 4):
        got = enumerate_congruence(build("r-sing-in", TRIV, n=n))
        assert got.size == count_partial_bijections(n, n) - math.factorial(n)
        assert got.empty_class_untouched
    assert enumerate_congruence(build("r-sing-tuples", C2, n=2)).size == 5
    assert enumerate_congruence(build("r-sing-tuples", C2, n=3)).size == 19
    assert enumerate_congruence(build("r-m-sing-in", C2, n=2)).size == 9
    assert enumerate_congruence(build("r-m-sing-in", C2, n=3)).size == \
        wreath.count_wreath(C2.monoid, 3, 3, "singular-monoid")


def test_category_counts():
    p = build("omega-mi", C2, cap=2)
    table = enumerate_congruence(p, headroom=2)
    assert table.status == "complete"
    for m in range(3):
        for n in range(3):
            assert table.hom_sizes[(m, n)] == wreath.hom_count(C2.monoid, m, n)


def test_tensor_unsupported():
    with pytest.raises(UnsupportedFlavorError):
        enumerate_congruence(build("xi-i", C2))


def test_budget_exhaustion_is_inconclusive_not_wrong():
    table = enumerate_congruence(build("r-in", TRIV, n=3), budget=10)
    assert table.status == "budget-exceeded"
    assert table.size is None


def test_unsound_extra_relation_collapses():
    # adding a wrong identification merges classes: strictly fewer than 7
    p = build("r-in", TRIV, n=2)
    bad = dataclasses.replace(
        p, relations=p.relations + ((w("s1 s1"), w("e1")),))
    table = enumerate_congruence(bad)
    assert table.status == "complete" and table.size < 7


def test_monotonicity_against_sound_target():
    # dropping relations can only coarsen upward (or diverge); with the
    # absorbing relation removed the count stays above the true size
    p = build("r-in", TRIV, n=2)
    kept = tuple(rel for rel in p.relations if rel != (w("e1 e2 s1"), w("e1 e2")))
    weak = dataclasses.replace(p, relations=kept)
    table = enumerate_congruence(weak, budget=2000)
    if table.status == "complete":
        assert table.size > 7
    else:
        assert table.size is None


def test_determinism():
    a = enumerate_congruence(build("r-m-sing-in", C2, n=3))
    b = enumerate_congruence(build("r-m-sing-in", C2, n=3))
    assert (a.size, a.nodes_created) == (b.size, b.nodes_created)


def test_table_solves_the_word_problem():
    import random

    from invwreath.words import eval_word

    rng = random.Random(17)
    p = build("r-min", C2, n=2)
    table = enumerate_congruence(p)
    for _ in range(500):
        u = tuple(rng.choice(p.alphabet) for _ in range(rng.randrange(0, 7)))
        v = tuple(rng.choice(p.alphabet) for _ in range(rng.randrange(0, 7)))
        semantic = eval_word(u, C2, 2) == eval_word(v, C2, 2)
        assert (table.trace(0, u) == table.trace(0, v)) == semantic


def test_category_table_traces_paths():
    from invwreath.words import eval_path

    import random

    rng = random.Random(18)
    from invwreath.words import edge_dr
    p = build("omega-mi", C2, cap=2)
    table = enumerate_congruence(p)
    by_src = {}
    for sym in p.alphabet:
        by_src.setdefault(edge_dr(sym)[0], []).append(sym)
    from invwreath.words import Path
    seen = {}
    for _ in range(300):
        src = rng.randrange(0, 3)
        cur, edges = src, []
        for _ in range(rng.randrange(0, 6)):
            sym = rng.choice(by_src[cur])
            edges.append(sym)
            cur = edge_dr(sym)[1]
        path = Path(src, tuple(edges))
        cls = table.trace(src, path.edges)
        elem = eval_path(path, C2)
        if cls in seen:
            assert seen[cls] == elem
        else:
            seen[cls] = elem
    # distinct classes name distinct elements
    assert len(set(map(lambda e: (e.tup, e.pmap), seen.values()))) == len(seen)
