"""Coset-style enumeration of presented monoids, semigroups and categories.

The engine builds the right Cayley graph of the presented structure: nodes
are classes of words (or typed paths), edges are right multiplication by a
generator.  Every relation is traced at every node; traces that end at
distinct nodes queue a coincidence, which is processed to a fixpoint by a
union-find merge that unions the rows.  Nodes are defined breadth-first:
each node, in creation order, first has all relations traced (filling
missing transitions along the way) and then has its remaining row entries
filled with fresh nodes.  On completion the alive-node count is the
cardinality of the presented structure.

For semigroup presentations the same run is performed over all words
including the empty one; since no relation side is empty, the root class
stays a singleton and is excluded from the reported size.

For category presentations nodes carry source and target objects and the
table is truncated at a bound: transitions through objects above the bound
are left undefined and relation traces blocked by the bound are skipped.
Counts can therefore only be too coarse, never too fine; callers compare
against a brute-force target and widen the bound if needed.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .presentations import Presentation, build
from .words import edge_dr

__all__ = [
    "UnsupportedFlavorError",
    "CongruenceTable",
    "enumerate_congruence",
    "DEFAULT_MONOID_BUDGET",
    "DEFAULT_CATEGORY_BUDGET",
]

DEFAULT_MONOID_BUDGET = 50_000
DEFAULT_CATEGORY_BUDGET = 20_000

_UNDEF = -1


class UnsupportedFlavorError(ValueError):
    """Completeness enumeration is not available for this flavor."""


class _BudgetExceeded(Exception):
    pass


@dataclass
class CongruenceTable:
    """Outcome of one enumeration run.

    On completion the compressed right Cayley graph is attached:
    ``transitions[c][g]`` is the class reached from class ``c`` by
    generator ``g`` (``-1`` where truncated, category flavor only), and
    ``roots`` maps each start object to its identity class (flat flavors
    use the single key 0).  ``gen_index`` maps alphabet symbols to ``g``.
    """

    flavor: str
    status: str                       # "complete" | "budget-exceeded"
    size: int | None = None           # monoid/semigroup class count
    hom_sizes: dict | None = None     # category: (src, tgt) -> class count
    nodes_created: int = 0
    empty_class_untouched: bool | None = None
    bound: int | None = None
    transitions: list | None = None
    roots: dict | None = None
    gen_index: dict | None = None
    notes: dict = field(default_factory=dict)

    def trace(self, start_object: int, word) -> int:
        """Class reached from the identity at ``start_object`` by reading
        ``word`` (a sequence of alphabet symbols)."""
        cur = self.roots[start_object]
        for sym in word:
            cur = self.transitions[cur][self.gen_index[sym]]
            if cur < 0:
                raise ValueError("trace leaves the truncated table")
        return cur


class _Engine:
    """Table plus union-find over integer generator ids."""

    def __init__(self, ngens: int, budget: int):
        self.ngens = ngens
        self.budget = budget
        self.rows: list[list[int] | None] = []
        self.parent: list[int] = []

    def new_node(self) -> int:
        if len(self.rows) >= self.budget:
            raise _BudgetExceeded
        idx = len(self.rows)
        self.rows.append([_UNDEF] * self.ngens)
        self.parent.append(idx)
        return idx

    def find(self, a: int) -> int:
        parent = self.parent
        root = a
        while parent[root] != root:
            root = parent[root]
        while parent[a] != root:
            parent[a], a = root, parent[a]
        return root

    def merge(self, a: int, b: int):
        """Union classes, keeping the smaller index; union rows, queueing
        secondary coincidences until stable."""
        queue = [(a, b)]
        while queue:
            a, b = queue.pop()
            a, b = self.find(a), self.find(b)
            if a == b:
                continue
            if b < a:
                a, b = b, a
            self.on_merge(a, b)
            self.parent[b] = a
            row_b = self.rows[b]
            self.rows[b] = None
            row_a = self.rows[a]
            for x in range(self.ngens):
                t = row_b[x]
                if t != _UNDEF:
                    if row_a[x] == _UNDEF:
                        row_a[x] = t
                    else:
                        queue.append((row_a[x], t))

    def on_merge(self, a: int, b: int):
        pass

    def scan(self, p: int, word) -> tuple[int, int]:
        """Follow ``word`` from ``p`` through defined entries; return the
        last node reached and how many letters were consumed."""
        cur = p
        for k, x in enumerate(word):
            t = self.rows[cur][x]
            if t == _UNDEF:
                return cur, k
            cur = self.find(t)
        return cur, len(word)

    def scan_and_fill(self, p: int, u, v):
        """Trace the relation ``u = v`` at ``p``: deduce the final
        transition when only it is missing, merge completed endpoints, and
        otherwise fill the first missing slot with a fresh node and rescan.
        ``define(node, gen)`` may return ``None`` to abandon the trace."""
        while True:
            p = self.find(p)
            a, i = self.scan(p, u)
            b, j = self.scan(p, v)
            if i == len(u) and j == len(v):
                if a != b:
                    self.merge(a, b)
                return
            if i == len(u) and j == len(v) - 1:
                self.rows[b][v[j]] = a
                return
            if j == len(v) and i == len(u) - 1:
                self.rows[a][u[i]] = b
                return
            node, gen = (a, u[i]) if i < len(u) else (b, v[j])
            fresh = self.define(node, gen)
            if fresh is None:
                return
            self.rows[node][gen] = fresh

    def define(self, node: int, gen: int) -> int | None:
        return self.new_node()

    def alive(self):
        return [i for i in range(len(self.rows)) if self.parent[i] == i]

    def compressed(self):
        """Alive classes renumbered consecutively, with their rows."""
        alive = self.alive()
        renumber = {node: k for k, node in enumerate(alive)}
        table = [
            [renumber[self.find(t)] if t != _UNDEF else _UNDEF
             for t in self.rows[node]]
            for node in alive
        ]
        return renumber, table


def _index_relations(p: Presentation):
    gen_index = {sym: k for k, sym in enumerate(p.alphabet)}
    if p.flavor == "category":
        rels = [
            (lhs.src,
             tuple(gen_index[s] for s in lhs.edges),
             tuple(gen_index[s] for s in rhs.edges))
            for lhs, rhs in p.relations
        ]
    else:
        rels = [
            (tuple(gen_index[s] for s in lhs), tuple(gen_index[s] for s in rhs))
            for lhs, rhs in p.relations
        ]
    return gen_index, rels


def _enumerate_flat(p: Presentation, budget: int) -> CongruenceTable:
    gen_index, rels = _index_relations(p)
    eng = _Engine(len(p.alphabet), budget)
    eng.new_node()
    try:
        idx = 0
        while idx < len(eng.rows):
            if eng.parent[idx] != idx:
                idx += 1
                continue
            dead = False
            for u, v in rels:
                eng.scan_and_fill(idx, u, v)
                if eng.parent[idx] != idx:
                    # the class was folded into an earlier, fully processed node
                    dead = True
                    break
            if not dead:
                row = eng.rows[idx]
                for x in range(eng.ngens):
                    if row[x] == _UNDEF:
                        row[x] = eng.new_node()
            idx += 1
    except _BudgetExceeded:
        return CongruenceTable(p.flavor, "budget-exceeded", nodes_created=len(eng.rows))

    alive = eng.alive()
    renumber, table = eng.compressed()
    roots = {0: renumber[eng.find(0)]}
    if p.flavor == "semigroup":
        root_alive = eng.find(0) == 0
        no_in_edges = all(
            eng.find(t) != 0
            for i in alive
            for t in eng.rows[i]
            if t != _UNDEF
        )
        if not (root_alive and no_in_edges):
            raise AssertionError("empty-word class was touched in a semigroup run")
        return CongruenceTable(p.flavor, "complete", size=len(alive) - 1,
                               nodes_created=len(eng.rows), empty_class_untouched=True,
                               transitions=table, roots=roots, gen_index=gen_index)
    return CongruenceTable(p.flavor, "complete", size=len(alive),
                           nodes_created=len(eng.rows),
                           transitions=table, roots=roots, gen_index=gen_index)


class _TypedEngine(_Engine):
    """Category variant: nodes carry (source, target) objects, transitions
    stay within the object bound, one root per source object."""

    def __init__(self, edges_dr, bound: int, per_root_budget: int, roots: int):
        super().__init__(len(edges_dr), per_root_budget * roots)
        self.dr = edges_dr
        self.bound = bound
        self.per_root_budget = per_root_budget
        self.dobj: list[int] = []
        self.robj: list[int] = []
        self.created_per_root: dict[int, int] = {}

    def typed_node(self, d: int, r: int) -> int:
        count = self.created_per_root.get(d, 0)
        if count >= self.per_root_budget:
            raise _BudgetExceeded
        self.created_per_root[d] = count + 1
        idx = self.new_node()
        self.dobj.append(d)
        self.robj.append(r)
        return idx

    def define(self, node: int, gen: int) -> int | None:
        d, r = self.dr[gen]
        if d != self.robj[node] or r > self.bound:
            return None
        return self.typed_node(self.dobj[node], r)

    def on_merge(self, a: int, b: int):
        if (self.dobj[a], self.robj[a]) != (self.dobj[b], self.robj[b]):
            raise AssertionError("attempt to merge nodes of different types")


def _enumerate_category(p: Presentation, budget: int, headroom: int) -> CongruenceTable:
    bound = p.cap + headroom
    wide = build(p.kind, p.base, cap=bound)
    gen_index, rels = _index_relations(wide)
    rels_by_src: dict[int, list] = {}
    for src, u, v in rels:
        rels_by_src.setdefault(src, []).append((u, v))
    dr = [edge_dr(sym) for sym in wide.alphabet]

    eng = _TypedEngine(dr, bound, budget, p.cap + 1)
    try:
        for m in range(p.cap + 1):
            eng.typed_node(m, m)
        idx = 0
        while idx < len(eng.rows):
            if eng.parent[idx] != idx:
                idx += 1
                continue
            dead = False
            for u, v in rels_by_src.get(eng.robj[idx], ()):
                eng.scan_and_fill(idx, u, v)
                if eng.parent[idx] != idx:
                    dead = True
                    break
            if not dead:
                row = eng.rows[idx]
                r_here = eng.robj[idx]
                for gen in range(eng.ngens):
                    d, r = dr[gen]
                    if d == r_here and r <= eng.bound and row[gen] == _UNDEF:
                        row[gen] = eng.typed_node(eng.dobj[idx], r)
            idx += 1
    except _BudgetExceeded:
        return CongruenceTable(p.flavor, "budget-exceeded",
                               nodes_created=len(eng.rows), bound=bound)

    # nodes above the cap only exist to close relation traces; their counts
    # are truncation artifacts and are not reported
    hom: dict[tuple[int, int], int] = {}
    for i in eng.alive():
        if eng.robj[i] > p.cap:
            continue
        key = (eng.dobj[i], eng.robj[i])
        hom[key] = hom.get(key, 0) + 1
    renumber, table = eng.compressed()
    roots = {m: renumber[eng.find(m)] for m in range(p.cap + 1)}
    return CongruenceTable(p.flavor, "complete", hom_sizes=hom,
                           nodes_created=len(eng.rows), bound=bound,
                           transitions=table, roots=roots, gen_index=gen_index)


def enumerate_congruence(p: Presentation, budget: int | None = None,
                         headroom: int = 2) -> CongruenceTable:
    """Enumerate the structure presented by ``p``.

    Monoid and semigroup flavors return a total class count; the category
    flavor returns per-hom-set counts for objects up to the cap, computed
    with excursions allowed ``headroom`` objects above it.  Tensor flavors
    have no completeness enumeration.
    """
    if p.flavor == "tensor":
        raise UnsupportedFlavorError(
            "tensor congruences have no completeness enumeration here")
    if p.flavor in ("monoid", "semigroup"):
        return _enumerate_flat(p, budget or DEFAULT_MONOID_BUDGET)
    return _enumerate_category(p, budget or DEFAULT_CATEGORY_BUDGET, headroom)
