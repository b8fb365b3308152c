"""Finite labelled graphs: parsing, labelled-path combinatorics, and
the level partitions by incoming label languages.

A labelled graph is a finite directed graph together with a label on each
edge.  Words are tuples of label symbols; a word is *realized* if some path
carries it.  The central operations are the relative range ``r(A, word)``
(targets of word-labelled paths starting in ``A``) and the level
equivalences ``v ~ w at depth l`` (the two vertices receive exactly the
same labelled words of length <= l).

Vertex sets are bitmask-backed against the graph's vertex order, so the
whole module works on integers internally.  Everything is immutable after
construction and safe to share between threads.
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple, Sequence


class LabelledGraphError(Exception):
    """Base class for graph construction and parse errors."""


class GraphSyntaxError(LabelledGraphError):
    """Malformed graph source; carries the 1-based line number."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class SinkVertexError(LabelledGraphError):
    """A vertex with no outgoing edge; carries the vertex name."""

    def __init__(self, vertex):
        self.vertex = vertex
        super().__init__(f"vertex {vertex!r} has no outgoing edge (sink)")


class DuplicateEdgeError(LabelledGraphError):
    """The same (source, target, label) triple was given twice."""


class DuplicateEdgeWarning(UserWarning):
    """Parallel same-labelled edges in the source were collapsed."""


class UnknownSymbolWarning(UserWarning):
    """A word used a symbol outside the graph's alphabet."""


class Edge(NamedTuple):
    src: str
    dst: str
    label: str


Word = tuple[str, ...]


def as_word(symbols) -> Word:
    """Coerce ``symbols`` to a word (nonempty tuple of label symbols).

    A plain string is read as a sequence of single-character symbols;
    anything else is consumed as an iterable of symbol tokens.
    """
    if isinstance(symbols, str):
        word = tuple(symbols)
    else:
        word = tuple(symbols)
    if not word:
        raise ValueError("words must have length >= 1")
    if not all(isinstance(a, str) and a for a in word):
        raise ValueError(f"word symbols must be nonempty strings: {word!r}")
    return word


def format_word(word: Word) -> str:
    """Render a word compactly: concatenated if all symbols are single
    characters, dot-separated otherwise."""
    if all(len(a) == 1 for a in word):
        return "".join(word)
    return ".".join(word)


class VertexSet:
    """An immutable subset of a graph's vertices.

    Supports the usual set algebra through operators (``|``, ``&``, ``-``,
    ``<=``) and iterates members in the graph's vertex order.
    """

    __slots__ = ("graph", "mask")

    def __init__(self, graph: "LabelledGraph", mask: int):
        object.__setattr__(self, "graph", graph)
        object.__setattr__(self, "mask", mask)

    def __setattr__(self, name, value):
        raise AttributeError("VertexSet is immutable")

    def _coerce(self, other) -> int:
        if not isinstance(other, VertexSet):
            return NotImplemented
        if other.graph is not self.graph and other.graph != self.graph:
            raise ValueError("vertex sets belong to different graphs")
        return other.mask

    def __or__(self, other):
        m = self._coerce(other)
        return VertexSet(self.graph, self.mask | m)

    def __and__(self, other):
        m = self._coerce(other)
        return VertexSet(self.graph, self.mask & m)

    def __sub__(self, other):
        m = self._coerce(other)
        return VertexSet(self.graph, self.mask & ~m)

    def __le__(self, other):
        m = self._coerce(other)
        return self.mask & ~m == 0

    def __lt__(self, other):
        m = self._coerce(other)
        return self.mask != m and self.mask & ~m == 0

    def __ge__(self, other):
        m = self._coerce(other)
        return m & ~self.mask == 0

    def isdisjoint(self, other) -> bool:
        return self.mask & self._coerce(other) == 0

    def __contains__(self, vertex) -> bool:
        i = self.graph.index.get(vertex)
        return i is not None and self.mask >> i & 1 == 1

    def __iter__(self) -> Iterator[str]:
        for i, v in enumerate(self.graph.vertices):
            if self.mask >> i & 1:
                yield v

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __bool__(self) -> bool:
        return self.mask != 0

    def __eq__(self, other):
        if not isinstance(other, VertexSet):
            return NotImplemented
        return self.mask == other.mask and (
            self.graph is other.graph or self.graph == other.graph
        )

    def __hash__(self):
        return hash(self.mask)

    def __repr__(self):
        return "{" + ",".join(self) + "}"


@dataclass(frozen=True)
class LevelPartition:
    """The partition of the vertices by label languages up to ``level``.

    ``stabilized`` marks that deeper levels induce the same partition, so
    the classes are exactly the infinite-depth generalized vertices.
    """

    level: int
    classes: tuple[VertexSet, ...]
    stabilized: bool

    def class_of(self, vertex) -> VertexSet:
        for cls in self.classes:
            if vertex in cls:
                return cls
        raise KeyError(vertex)

    def as_sets(self) -> frozenset[int]:
        return frozenset(c.mask for c in self.classes)


class LabelledGraph:
    """A finite directed graph with labelled edges and no sinks.

    ``vertices`` fixes the vertex order (first appearance in the source);
    ``edges`` are (source, target, label) triples.  The alphabet is the set
    of labels actually used, sorted lexicographically.
    """

    def __init__(self, vertices: Sequence[str], edges: Iterable[tuple[str, str, str]]):
        self.vertices: tuple[str, ...] = tuple(vertices)
        self.index: dict[str, int] = {v: i for i, v in enumerate(self.vertices)}
        if len(self.index) != len(self.vertices):
            raise LabelledGraphError("duplicate vertex in vertex list")
        edge_list = []
        seen = set()
        for e in edges:
            e = Edge(*e)
            if e in seen:
                raise DuplicateEdgeError(
                    f"duplicate edge {e.src} -> {e.dst} labelled {e.label!r}"
                )
            seen.add(e)
            for endpoint in (e.src, e.dst):
                if endpoint not in self.index:
                    raise LabelledGraphError(f"edge endpoint {endpoint!r} not a vertex")
            edge_list.append(e)
        if not edge_list:
            raise LabelledGraphError("a labelled graph needs at least one edge")
        self.edges: tuple[Edge, ...] = tuple(edge_list)
        self.alphabet: tuple[str, ...] = tuple(sorted({e.label for e in self.edges}))

        sources = {e.src for e in self.edges}
        for v in self.vertices:
            if v not in sources:
                raise SinkVertexError(v)

        n = len(self.vertices)
        # per-label, per-vertex target and source bitmasks
        self._step: dict[str, list[int]] = {a: [0] * n for a in self.alphabet}
        self._rstep: dict[str, list[int]] = {a: [0] * n for a in self.alphabet}
        for e in self.edges:
            i, j = self.index[e.src], self.index[e.dst]
            self._step[e.label][i] |= 1 << j
            self._rstep[e.label][j] |= 1 << i
        self._full_mask = (1 << n) - 1
        self._range_family: dict[int, int] | None = None

    # -- basic structure ------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, LabelledGraph):
            return NotImplemented
        return self.vertices == other.vertices and self.edges == other.edges

    def __hash__(self):
        return hash((self.vertices, self.edges))

    def __repr__(self):
        return (
            f"LabelledGraph({len(self.vertices)} vertices, "
            f"{len(self.edges)} edges, alphabet {{{','.join(self.alphabet)}}})"
        )

    @property
    def empty_set(self) -> VertexSet:
        return VertexSet(self, 0)

    @property
    def full_set(self) -> VertexSet:
        return VertexSet(self, self._full_mask)

    def vertex_set(self, members) -> VertexSet:
        """Build a VertexSet from an iterable of vertex names."""
        mask = 0
        for v in members:
            try:
                mask |= 1 << self.index[v]
            except KeyError:
                raise KeyError(f"unknown vertex {v!r}") from None
        return VertexSet(self, mask)

    def singleton(self, vertex) -> VertexSet:
        return self.vertex_set([vertex])

    def _sets(self, masks) -> tuple[VertexSet, ...]:
        return tuple(VertexSet(self, m) for m in masks)

    # -- ranges and label sets -------------------------------------------

    def _apply(self, mask: int, symbol: str) -> int:
        table = self._step[symbol]
        out = 0
        while mask:
            low = mask & -mask
            out |= table[low.bit_length() - 1]
            mask ^= low
        return out

    def relative_range(self, A: VertexSet, word) -> VertexSet:
        """Targets of ``word``-labelled paths starting in ``A``.

        Unknown symbols make the result empty and raise an
        UnknownSymbolWarning.
        """
        word = as_word(word)
        mask = self._coerce_set(A).mask
        for a in word:
            if a not in self._step:
                warnings.warn(
                    f"symbol {a!r} not in alphabet", UnknownSymbolWarning, stacklevel=2
                )
                return self.empty_set
            mask = self._apply(mask, a)
        return VertexSet(self, mask)

    def range_of_word(self, word) -> VertexSet:
        """r(word): targets of all paths labelled ``word``."""
        return self.relative_range(self.full_set, word)

    def source_of_word(self, word) -> VertexSet:
        """s(word): sources of all paths labelled ``word``."""
        word = as_word(word)
        n = len(self.vertices)
        mask = self._full_mask
        for a in reversed(word):
            if a not in self._step:
                warnings.warn(
                    f"symbol {a!r} not in alphabet", UnknownSymbolWarning, stacklevel=2
                )
                return self.empty_set
            table = self._step[a]
            mask = sum(1 << i for i in range(n) if table[i] & mask)
        return VertexSet(self, mask)

    def labels_out(self, A: VertexSet) -> frozenset[str]:
        """Labels of edges leaving ``A``."""
        A = self._coerce_set(A)
        return frozenset(e.label for e in self.edges if e.src in A)

    def labels_in(self, A: VertexSet) -> frozenset[str]:
        """Labels of edges entering ``A``."""
        A = self._coerce_set(A)
        return frozenset(e.label for e in self.edges if e.dst in A)

    def _coerce_set(self, A) -> VertexSet:
        if isinstance(A, VertexSet):
            if A.graph is not self and A.graph != self:
                raise ValueError("vertex set belongs to a different graph")
            return A
        return self.vertex_set(A)

    # -- level partitions --------------------------------------------------

    def _ranges_by_level(self) -> dict[int, int]:
        """All distinct nonempty range sets r(word), each with the least
        word length realizing it (subset construction from the ranges of
        single symbols)."""
        if self._range_family is None:
            first_level: dict[int, int] = {}
            frontier = []
            for a in self.alphabet:
                m = self._apply(self._full_mask, a)
                if m and m not in first_level:
                    first_level[m] = 1
                    frontier.append(m)
            level = 1
            while frontier:
                level += 1
                new = []
                for m in frontier:
                    for a in self.alphabet:
                        mm = self._apply(m, a)
                        if mm and mm not in first_level:
                            first_level[mm] = level
                            new.append(mm)
                frontier = new
            self._range_family = first_level
        return self._range_family

    def _signature_partition(self, level: int | None) -> tuple[VertexSet, ...]:
        """Group vertices by membership across the range sets seen up to
        ``level`` (all levels when None); this is exactly equality of the
        incoming label languages truncated at ``level``."""
        family = self._ranges_by_level()
        if level is None:
            masks = list(family)
        else:
            masks = [m for m, l in family.items() if l <= level]
        groups: dict[tuple[int, ...], int] = {}
        for i in range(len(self.vertices)):
            sig = tuple(sorted(m for m in masks if m >> i & 1))
            groups[sig] = groups.get(sig, 0) | (1 << i)
        classes = sorted(groups.values(), key=lambda m: (m & -m).bit_length())
        return self._sets(classes)

    def level_partition(self, level: int) -> LevelPartition:
        """The partition by label languages of length <= ``level``."""
        if level < 1:
            raise ValueError("level must be >= 1")
        classes = self._signature_partition(level)
        stable = self._signature_partition(None)
        return LevelPartition(
            level=level,
            classes=classes,
            stabilized=frozenset(c.mask for c in classes)
            == frozenset(c.mask for c in stable),
        )

    def stable_partition(self) -> tuple[LevelPartition, int]:
        """The infinite-depth partition together with the first level that
        already induces it."""
        stable = self._signature_partition(None)
        stable_key = frozenset(c.mask for c in stable)
        level = 1
        while frozenset(c.mask for c in self._signature_partition(level)) != stable_key:
            level += 1
        return LevelPartition(level=level, classes=stable, stabilized=True), level

    def generalized_vertex(self, vertex, level: int) -> VertexSet:
        """The class of ``vertex`` at depth ``level``: all vertices that
        receive exactly the same labelled words of length <= level."""
        if level < 1:
            raise ValueError("level must be >= 1")
        if vertex not in self.index:
            raise KeyError(f"unknown vertex {vertex!r}")
        return self.level_partition(level).class_of(vertex)

    # -- serialization ---------------------------------------------------

    def to_dsl(self) -> str:
        lines = [f"edge {e.src} {e.dst} {e.label}" for e in self.edges]
        return "\n".join(lines) + "\n"

    def to_dot(self) -> str:
        lines = ["digraph labelled_graph {", "  rankdir=LR;"]
        for v in self.vertices:
            lines.append(f'  "{v}";')
        for e in self.edges:
            lines.append(f'  "{e.src}" -> "{e.dst}" [label="{e.label}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_json_dict(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "alphabet": list(self.alphabet),
            "edges": [{"src": e.src, "dst": e.dst, "label": e.label} for e in self.edges],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2) + "\n"


def parse_graph(text: str) -> LabelledGraph:
    """Parse the edge-list DSL.

    Lines are ``edge <src> <dst> <label>``; ``#`` starts a comment and
    blank lines are skipped.  Vertices are declared implicitly in order of
    first appearance.  Repeated identical edge lines are collapsed with a
    DuplicateEdgeWarning (parallel equally-labelled edges are
    indistinguishable to every analysis here).
    """
    vertices: list[str] = []
    seen_vertices = set()
    edges: list[Edge] = []
    seen_edges = set()

    def note_vertex(v):
        if v not in seen_vertices:
            seen_vertices.add(v)
            vertices.append(v)

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if fields[0] != "edge":
            raise GraphSyntaxError(f"unknown directive {fields[0]!r}", line=lineno)
        if len(fields) != 4:
            raise GraphSyntaxError(
                f"expected 'edge <src> <dst> <label>', got {len(fields) - 1} fields",
                line=lineno,
            )
        e = Edge(fields[1], fields[2], fields[3])
        if e in seen_edges:
            warnings.warn(
                f"line {lineno}: duplicate edge {e.src} -> {e.dst} "
                f"labelled {e.label!r} collapsed",
                DuplicateEdgeWarning,
                stacklevel=2,
            )
            continue
        seen_edges.add(e)
        note_vertex(e.src)
        note_vertex(e.dst)
        edges.append(e)

    if not edges:
        raise GraphSyntaxError("no edges in input")
    return LabelledGraph(vertices, edges)


def parse_graph_file(path) -> LabelledGraph:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_graph(fh.read())


def label_isomorphic(g: LabelledGraph, h: LabelledGraph) -> bool:
    """Whether some vertex bijection carries the labelled edges of ``g``
    exactly onto those of ``h``.  Brute force over signature-compatible
    bijections; meant for the small graphs this package handles."""
    if len(g.vertices) != len(h.vertices) or len(g.edges) != len(h.edges):
        return False
    if g.alphabet != h.alphabet:
        return False

    def signature(graph, v):
        outs = sorted((e.label, e.src == e.dst) for e in graph.edges if e.src == v)
        ins = sorted((e.label, e.src == e.dst) for e in graph.edges if e.dst == v)
        return (tuple(outs), tuple(ins))

    gsig = {v: signature(g, v) for v in g.vertices}
    hsig = {v: signature(h, v) for v in h.vertices}
    candidates = {v: [w for w in h.vertices if hsig[w] == gsig[v]] for v in g.vertices}
    h_edges = set(h.edges)
    order = sorted(g.vertices, key=lambda v: len(candidates[v]))

    def extend(i, mapping, used):
        if i == len(order):
            return all(
                Edge(mapping[e.src], mapping[e.dst], e.label) in h_edges
                for e in g.edges
            )
        v = order[i]
        for w in candidates[v]:
            if w in used:
                continue
            mapping[v] = w
            ok = all(
                Edge(mapping[e.src], mapping[e.dst], e.label) in h_edges
                for e in g.edges
                if e.src in mapping and e.dst in mapping
            )
            if ok and extend(i + 1, mapping, used | {w}):
                return True
            del mapping[v]
        return False

    return extend(0, {}, set())
