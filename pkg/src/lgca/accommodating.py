"""Accommodating families of vertex sets.

An accommodating family contains every word range, and is closed under
finite unions, intersections and relative ranges; the complement-closed
variant is additionally closed under set difference.  Two canonical
families matter:

* the minimal one, generated by the single-symbol ranges;
* the complement-closed one, which on a finite graph is the Boolean
  algebra over the stable-partition classes whenever those classes behave
  well under one-step ranges (the common, weakly left-resolving case).
  When a one-step range cuts a class, that Boolean algebra is not closed
  under relative ranges and a generic fixed-point closure is used instead;
  the result is flagged.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Iterator, Optional

from lgca.graph import LabelledGraph, VertexSet


class FallbackFamilyWarning(UserWarning):
    """The class-based construction failed and the generic closure ran."""


class NotWeaklyLeftResolvingError(Exception):
    """An operation requiring weak left-resolving got a family without it."""

    def __init__(self, witness):
        self.witness = witness
        A, B, a = witness
        super().__init__(
            f"not weakly left-resolving: r({A!r},{a}) ∩ r({B!r},{a}) "
            f"!= r({A & B!r},{a})"
        )


@dataclass(frozen=True)
class AccommodatingSet:
    """A finite family of vertex sets, canonically ordered.

    ``atoms`` is the partition of the family's union into minimal cells and
    is present exactly when the family is the Boolean algebra over those
    cells (plus the empty set).  ``fallback`` marks that the generic
    closure had to run for a complement-closed family.
    """

    graph: LabelledGraph
    family: tuple[VertexSet, ...]
    kind: str
    atoms: Optional[tuple[VertexSet, ...]] = None
    fallback: bool = False

    def __contains__(self, item) -> bool:
        if not isinstance(item, VertexSet):
            return False
        return item.mask in self._masks()

    def _masks(self) -> frozenset[int]:
        return frozenset(s.mask for s in self.family)

    def __iter__(self) -> Iterator[VertexSet]:
        return iter(self.family)

    def __len__(self) -> int:
        return len(self.family)

    def member(self, vertices) -> VertexSet:
        """The family member with the given vertices; KeyError if absent."""
        vs = self.graph.vertex_set(vertices)
        if vs not in self:
            raise KeyError(f"{vs!r} is not in the family")
        return vs

    def is_complement_closed(self) -> bool:
        masks = self._masks()
        return all(x & ~y in masks for x in masks for y in masks)

    def to_json_dict(self) -> dict:
        return {
            "kind": self.kind,
            "fallback": self.fallback,
            "atoms": None
            if self.atoms is None
            else [sorted(a) for a in self.atoms],
            "family": [sorted(s) for s in self.family],
        }

    def validate(self) -> list[str]:
        """Check the closure properties directly; returns human-readable
        violations (empty when the family is accommodating)."""
        problems = []
        g = self.graph
        masks = self._masks()
        if 0 not in masks:
            problems.append("empty set missing")
        for a in g.alphabet:
            if g.range_of_word([a]).mask not in masks:
                problems.append(f"range of symbol {a!r} missing")
        for s in self.family:
            for a in g.alphabet:
                if g.relative_range(s, [a]).mask not in masks:
                    problems.append(f"not closed under ranges: r({s!r},{a})")
        for x in self.family:
            for y in self.family:
                if (x | y).mask not in masks:
                    problems.append(f"not closed under union: {x!r} | {y!r}")
                if (x & y).mask not in masks:
                    problems.append(f"not closed under intersection: {x!r} & {y!r}")
        if self.kind == "bar" and not self.is_complement_closed():
            problems.append("not closed under relative complement")
        return problems


def _canonical(graph, masks) -> tuple[VertexSet, ...]:
    ordered = sorted(set(masks), key=lambda m: (m.bit_count(), m))
    return tuple(VertexSet(graph, m) for m in ordered)


def _derive_atoms(graph, masks) -> Optional[tuple[VertexSet, ...]]:
    """Minimal cells of the membership signature; returned only when the
    family is exactly the Boolean algebra they generate (with the empty
    set)."""
    masks = set(masks)
    union = 0
    for m in masks:
        union |= m
    cells: dict[tuple[int, ...], int] = {}
    for i in range(len(graph.vertices)):
        if not union >> i & 1:
            continue
        sig = tuple(sorted(m for m in masks if m >> i & 1))
        cells[sig] = cells.get(sig, 0) | (1 << i)
    atoms = sorted(cells.values(), key=lambda m: (m & -m).bit_length())
    if len(atoms) > 20:
        return None
    expected = set()
    for bits in range(1 << len(atoms)):
        m = 0
        for j in range(len(atoms)):
            if bits >> j & 1:
                m |= atoms[j]
        expected.add(m)
    if expected != masks:
        return None
    return tuple(VertexSet(graph, m) for m in atoms)


def _close_family(graph, seed_masks, complements: bool) -> set[int]:
    """Fixed-point closure under unions, intersections, relative ranges,
    and (optionally) set differences."""
    masks = set(seed_masks)
    masks.add(0)
    while True:
        new = set()
        for m in masks:
            for a in graph.alphabet:
                r = graph._apply(m, a)
                if r not in masks:
                    new.add(r)
        current = list(masks | new)
        for i, x in enumerate(current):
            for y in current[i:]:
                for z in (x | y, x & y):
                    if z not in masks:
                        new.add(z)
                if complements:
                    for z in (x & ~y, y & ~x):
                        if z not in masks:
                            new.add(z)
        if not new:
            return masks
        masks |= new


def minimal_accommodating(g: LabelledGraph) -> AccommodatingSet:
    """The smallest accommodating family: the closure of the symbol ranges
    under relative ranges, intersections and unions (empty set adjoined)."""
    seed = [g.range_of_word([a]).mask for a in g.alphabet]
    masks = _close_family(g, seed, complements=False)
    family = _canonical(g, masks)
    return AccommodatingSet(
        graph=g, family=family, kind="minimal", atoms=_derive_atoms(g, masks)
    )


def bar_accommodating(g: LabelledGraph) -> AccommodatingSet:
    """The smallest complement-closed accommodating family.

    Fast path: the stable-partition classes are taken as atoms and the
    family is their Boolean algebra; this is valid exactly when every
    one-step range of an atom is a union of atoms (word ranges themselves
    are always unions of atoms).  Otherwise the generic fixed-point closure
    over the minimal family plus all generalized vertices runs, and the
    result carries ``fallback=True``.
    """
    partition, lstar = g.stable_partition()
    atom_masks = [c.mask for c in partition.classes]
    union_ok = _saturation_checker(atom_masks)

    clean = True
    for m in atom_masks:
        for a in g.alphabet:
            if not union_ok(g._apply(m, a)):
                clean = False
                break
        if not clean:
            break

    if clean:
        masks = set()
        k = len(atom_masks)
        for bits in range(1 << k):
            m = 0
            for j in range(k):
                if bits >> j & 1:
                    m |= atom_masks[j]
            masks.add(m)
        return AccommodatingSet(
            graph=g,
            family=_canonical(g, masks),
            kind="bar",
            atoms=tuple(VertexSet(g, m) for m in atom_masks),
        )

    warnings.warn(
        "stable classes are cut by one-step ranges; "
        "falling back to the generic complement closure",
        FallbackFamilyWarning,
        stacklevel=2,
    )
    seed = {g.range_of_word([a]).mask for a in g.alphabet}
    for level in range(1, lstar + 1):
        for cls in g.level_partition(level).classes:
            seed.add(cls.mask)
    masks = _close_family(g, seed, complements=True)
    return AccommodatingSet(
        graph=g,
        family=_canonical(g, masks),
        kind="bar",
        atoms=_derive_atoms(g, masks),
        fallback=True,
    )


def _saturation_checker(atom_masks):
    def is_union_of_atoms(mask):
        cover = 0
        for am in atom_masks:
            if am & mask:
                if am & ~mask:
                    return False
                cover |= am
        return cover == mask

    return is_union_of_atoms


def custom_accommodating(g: LabelledGraph, sets) -> AccommodatingSet:
    """Wrap an explicit family after validating the closure laws."""
    masks = {g._coerce_set(s).mask for s in sets}
    masks.add(0)
    family = AccommodatingSet(
        graph=g, family=_canonical(g, masks), kind="custom", atoms=_derive_atoms(g, masks)
    )
    problems = family.validate()
    if problems:
        raise ValueError("not an accommodating family: " + "; ".join(problems[:3]))
    return family


def is_weakly_left_resolving(
    g: LabelledGraph, family: AccommodatingSet
) -> tuple[bool, Optional[tuple[VertexSet, VertexSet, str]]]:
    """Check r(A,a) ∩ r(B,a) == r(A∩B,a) over the family; single symbols
    suffice since longer words factor through one-step ranges.

    With an atom decomposition only disjointness of the atoms' one-step
    ranges needs checking; otherwise all pairs are tried.  Returns the
    verdict and a counterexample triple (A, B, symbol) on failure.
    """
    if family.atoms is not None:
        for i, A in enumerate(family.atoms):
            for B in family.atoms[i + 1 :]:
                for a in g.alphabet:
                    ra = g._apply(A.mask, a)
                    rb = g._apply(B.mask, a)
                    if ra & rb:
                        return False, (A, B, a)
        return True, None
    for i, A in enumerate(family.family):
        for B in family.family[i:]:
            both = A & B
            for a in g.alphabet:
                ra = g._apply(A.mask, a)
                rb = g._apply(B.mask, a)
                rab = g._apply(both.mask, a)
                if ra & rb != rab:
                    return False, (A, B, a)
    return True, None


def is_set_finite(g: LabelledGraph, family: AccommodatingSet) -> bool:
    """Every member emits finitely many labels.  Trivially true on a finite
    graph; checked explicitly so custom families stay honest."""
    return all(len(g.labels_out(A)) < float("inf") for A in family)


def is_receiver_set_finite(g: LabelledGraph, family: AccommodatingSet) -> bool:
    """Every member receives finitely many labels; see is_set_finite."""
    return all(len(g.labels_in(A)) < float("inf") for A in family)
