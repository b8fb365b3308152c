"""The merged labelled graph: quotient by the stable level partition.

Vertices that receive exactly the same labelled words of every length are
identified; an edge survives per (source class, target class, label)
triple.  The merged presentation keeps every labelled-path statistic of
the original while making each vertex class a singleton, which is what the
dynamics module needs when single vertices are not themselves family
members.

``verify_merge`` checks the transport identities that justify using the
merged graph in place of the original: ranges, sources, level classes, the
complement-closed families, and intersections all correspond across the
quotient.  The word-indexed checks run over the product of the two subset
automata to a fixed point, so they cover all words, not a bounded sample.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Optional

from lgca.accommodating import bar_accommodating, is_weakly_left_resolving
from lgca.graph import Edge, LabelledGraph, VertexSet, Word, format_word


def _class_name(members) -> str:
    return "+".join(members)


@dataclass(frozen=True)
class MergedLabelledGraph:
    """The quotient graph together with the vertex and edge projections."""

    base: LabelledGraph
    graph: LabelledGraph
    vertex_map: dict[str, str]
    edge_map: dict[Edge, Edge]

    def lift_set(self, B) -> VertexSet:
        """All base vertices whose class lies in ``B`` (a set over the
        merged graph)."""
        B = self.graph._coerce_set(B)
        mask = 0
        for v, cls in self.vertex_map.items():
            if cls in B:
                mask |= 1 << self.base.index[v]
        return VertexSet(self.base, mask)

    def project_set(self, A) -> VertexSet:
        """The classes met by ``A`` (a set over the base graph)."""
        A = self.base._coerce_set(A)
        return self.graph.vertex_set({self.vertex_map[v] for v in A})


def merge(g: LabelledGraph) -> MergedLabelledGraph:
    """Quotient ``g`` by its stable partition, identifying equally
    labelled parallel edges between the same classes."""
    partition, _ = g.stable_partition()
    names = {}
    order = []
    for cls in sorted(partition.classes, key=lambda c: (c.mask & -c.mask)):
        name = _class_name(list(cls))
        order.append(name)
        for v in cls:
            names[v] = name
    edge_map: dict[Edge, Edge] = {}
    merged_edges: list[Edge] = []
    seen = set()
    for e in g.edges:
        me = Edge(names[e.src], names[e.dst], e.label)
        edge_map[e] = me
        if me not in seen:
            seen.add(me)
            merged_edges.append(me)
    merged = LabelledGraph(order, merged_edges)
    return MergedLabelledGraph(
        base=g, graph=merged, vertex_map=names, edge_map=edge_map
    )


@dataclass(frozen=True)
class MergeCheck:
    name: str
    ok: bool
    witness: Optional[str] = None


@dataclass(frozen=True)
class MergeReport:
    checks: tuple[MergeCheck, ...]

    @property
    def all_pass(self) -> bool:
        return all(c.ok for c in self.checks)

    def failures(self) -> tuple[MergeCheck, ...]:
        return tuple(c for c in self.checks if not c.ok)


def _range_transport_check(m: MergedLabelledGraph, start_base, start_merged):
    """Walk the product of the two forward subset automata and require the
    lift of the merged-side state to equal the base-side state everywhere.
    Terminates because there are finitely many state pairs."""
    g, f = m.base, m.graph
    start = (start_base.mask, start_merged.mask)
    seen = {start}
    queue = deque([(start, ())])
    while queue:
        (sm, tm), word = queue.popleft()
        for a in g.alphabet:
            nsm = g._apply(sm, a) if a in g._step else 0
            ntm = f._apply(tm, a) if a in f._step else 0
            if nsm == 0 and ntm == 0:
                continue
            nword = word + (a,)
            lifted = m.lift_set(VertexSet(f, ntm)).mask
            if lifted != nsm:
                return False, nword
            state = (nsm, ntm)
            if state not in seen:
                seen.add(state)
                queue.append((state, nword))
    return True, None


def _source_transport_check(m: MergedLabelledGraph):
    """Reverse analogue: source sets of each word project onto the merged
    source sets.  States are pairs of source sets, words grow by
    prepending, and the fixed point covers all words."""
    g, f = m.base, m.graph

    def back(graph, mask, a):
        table = graph._step.get(a)
        if table is None:
            return 0
        out = 0
        for i in range(len(graph.vertices)):
            if table[i] & mask:
                out |= 1 << i
        return out

    start = (g.full_set.mask, f.full_set.mask)
    seen = {start}
    queue = deque([(start, ())])
    while queue:
        (sm, tm), word = queue.popleft()
        for a in g.alphabet:
            nsm = back(g, sm, a)
            ntm = back(f, tm, a)
            if nsm == 0 and ntm == 0:
                continue
            nword = (a,) + word
            projected = m.project_set(VertexSet(g, nsm)).mask
            if projected != ntm:
                return False, nword
            state = (nsm, ntm)
            if state not in seen:
                seen.add(state)
                queue.append((state, nword))
    return True, None


def verify_merge(m: MergedLabelledGraph, family_cap: int = 1024) -> MergeReport:
    """Check the transport identities between the base labelled space and
    its merged form.  Failures indicate a violated hypothesis upstream
    (typically a base family that is not weakly left-resolving); they are
    reported, not raised."""
    g, f = m.base, m.graph
    checks: list[MergeCheck] = []

    def record(name, ok, witness=None):
        checks.append(MergeCheck(name=name, ok=ok, witness=witness))

    bar_e = bar_accommodating(g)
    bar_f = bar_accommodating(f)

    # per-class and global range transport
    ok_all, witness = True, None
    for cls in sorted({m.vertex_map[v] for v in g.vertices}):
        base_side = m.lift_set(f.vertex_set([cls]))
        ok, w = _range_transport_check(m, base_side, f.vertex_set([cls]))
        if not ok:
            ok_all, witness = False, f"class {cls}, word {format_word(w)}"
            break
    if ok_all:
        ok, w = _range_transport_check(m, g.full_set, f.full_set)
        if not ok:
            ok_all, witness = False, f"word {format_word(w)}"
    record("range-transport", ok_all, witness)

    ok, w = _source_transport_check(m)
    record("source-transport", ok, None if ok else f"word {format_word(w)}")

    # level classes commute with the projection
    _, lstar_e = g.stable_partition()
    _, lstar_f = f.stable_partition()
    ok_all, witness = True, None
    for level in range(1, max(lstar_e, lstar_f) + 2):
        for v in g.vertices:
            lhs = m.project_set(g.generalized_vertex(v, level))
            rhs = f.generalized_vertex(m.vertex_map[v], level)
            if lhs != rhs:
                ok_all, witness = False, f"vertex {v}, level {level}"
                break
        if not ok_all:
            break
    record("level-transport", ok_all, witness)

    members = (
        bar_e.family if len(bar_e) <= family_cap else (bar_e.atoms or bar_e.family)
    )

    ok_all, witness = True, None
    for A in members:
        for B in members:
            if m.project_set(A & B) != m.project_set(A) & m.project_set(B):
                ok_all, witness = False, f"{A!r}, {B!r}"
                break
        if not ok_all:
            break
    record("intersection-transport", ok_all, witness)

    ok_all, witness = True, None
    for A in members:
        if m.lift_set(m.project_set(A)) != A:
            ok_all, witness = False, repr(A)
            break
    record("lift-roundtrip", ok_all, witness)

    projected = {m.project_set(A).mask for A in bar_e.family}
    f_masks = {A.mask for A in bar_f.family}
    ok_all = projected == f_masks and len(bar_e) == len(bar_f)
    record(
        "family-bijection",
        ok_all,
        None if ok_all else f"|base family|={len(bar_e)}, |merged family|={len(bar_f)}",
    )

    ok_all, witness = True, None
    for A in members:
        for a in g.alphabet:
            lhs = m.project_set(g.relative_range(A, [a]))
            rhs = f.relative_range(m.project_set(A), [a])
            if lhs != rhs:
                ok_all, witness = False, f"{A!r}, symbol {a}"
                break
        if not ok_all:
            break
    record("range-equivariance", ok_all, witness)

    singles_ok = all(
        f.vertex_set([v]) in bar_f for v in f.vertices
    )
    record(
        "singleton-classes",
        singles_ok,
        None
        if singles_ok
        else "some merged vertex is not separated by the merged family",
    )

    wlr, cex = is_weakly_left_resolving(f, bar_f)
    record(
        "merged-wlr",
        wlr,
        None if wlr else f"({cex[0]!r},{cex[1]!r},{cex[2]})",
    )

    return MergeReport(checks=tuple(checks))
