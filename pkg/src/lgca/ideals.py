"""Hereditary saturated subfamilies, the gauge-invariant ideal lattice, and
quotient labelled spaces.

A hereditary saturated subfamily of an accommodating family indexes a
gauge-invariant ideal of the associated algebra.  On a finite family every
such subfamily is the down-set of its union, so a single maximal vertex set
``M`` represents it; the enumeration therefore scans family members rather
than subfamilies.

A hereditary saturated set also induces a quotient labelled space: family
members are identified when they differ inside ``M`` only, with canonical
representatives ``A - M``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from lgca.accommodating import AccommodatingSet
from lgca.graph import VertexSet, as_word


class QuotientNotWLRError(Exception):
    """The induced quotient space fails weak left-resolving; carries a
    witness triple of class representatives and a symbol."""

    def __init__(self, witness):
        self.witness = witness
        A, B, a = witness
        super().__init__(
            f"quotient space not weakly left-resolving at ([{A!r}],[{B!r}],{a})"
        )


@dataclass(frozen=True)
class HereditarySaturatedSet:
    """Down-set of ``max_element`` inside ``base``; hereditary: one-step
    ranges of the maximal element stay inside it; saturated: any family
    member whose one-step ranges all land inside also lies inside."""

    base: AccommodatingSet
    max_element: VertexSet

    @property
    def family(self) -> tuple[VertexSet, ...]:
        return tuple(A for A in self.base if A <= self.max_element)

    @property
    def is_trivial(self) -> bool:
        return not self.max_element

    @property
    def is_whole(self) -> bool:
        top = max(
            (s.mask for s in self.base.family), key=lambda m: (m.bit_count(), m)
        )
        return self.max_element.mask == top

    def __contains__(self, A) -> bool:
        return isinstance(A, VertexSet) and A in self.base and A <= self.max_element

    def __le__(self, other: "HereditarySaturatedSet") -> bool:
        return self.max_element <= other.max_element

    def __repr__(self):
        return f"HereditarySaturatedSet(max={self.max_element!r})"


def _require_members(base: AccommodatingSet, sets) -> list[VertexSet]:
    out = []
    for A in sets:
        A = base.graph._coerce_set(A)
        if A not in base:
            raise ValueError(f"{A!r} is not a member of the family")
        out.append(A)
    return out


def is_hereditary(
    base: AccommodatingSet, candidate: Iterable[VertexSet]
) -> tuple[bool, Optional[str]]:
    """Definitional check: closed under one-step relative ranges, pairwise
    unions, and family subsets.  Returns a violation description."""
    g = base.graph
    members = _require_members(base, candidate)
    masks = {A.mask for A in members}
    for A in members:
        for a in g.alphabet:
            if g._apply(A.mask, a) not in masks:
                return False, f"r({A!r},{a}) escapes the subfamily"
    for A in members:
        for B in members:
            if (A.mask | B.mask) not in masks:
                return False, f"{A!r} | {B!r} escapes the subfamily"
    for A in members:
        for X in base:
            if X <= A and X.mask not in masks:
                return False, f"family subset {X!r} of {A!r} missing"
    return True, None


def is_saturated(
    base: AccommodatingSet, candidate: Iterable[VertexSet]
) -> tuple[bool, Optional[str]]:
    """Definitional check: if every one-step range of a family member lies
    in the subfamily, the member itself must."""
    g = base.graph
    members = _require_members(base, candidate)
    masks = {A.mask for A in members}
    for A in base:
        if A.mask in masks:
            continue
        if all(g._apply(A.mask, a) in masks for a in g.alphabet):
            return False, f"{A!r} has all one-step ranges inside but is missing"
    return True, None


def hs_closure(base: AccommodatingSet, sets) -> HereditarySaturatedSet:
    """Smallest hereditary saturated subfamily containing ``sets``,
    computed on maximal elements: alternate range closure and saturation
    until the fixed point."""
    g = base.graph
    members = _require_members(base, sets)
    m = 0
    for A in members:
        m |= A.mask
    while True:
        changed = True
        while changed:
            changed = False
            for a in g.alphabet:
                r = g._apply(m, a)
                if r & ~m:
                    m |= r
                    changed = True
        grew = False
        for A in base:
            if A.mask & ~m == 0:
                continue
            if all(g._apply(A.mask, a) & ~m == 0 for a in g.alphabet):
                m |= A.mask
                grew = True
        if not grew:
            break
    result = VertexSet(g, m)
    if result not in base:
        raise RuntimeError(f"closure {result!r} escaped the family")
    return HereditarySaturatedSet(base=base, max_element=result)


def _is_hs_max(base: AccommodatingSet, mask: int) -> bool:
    g = base.graph
    if any(g._apply(mask, a) & ~mask for a in g.alphabet):
        return False
    for A in base:
        if A.mask & ~mask == 0:
            continue
        if all(g._apply(A.mask, a) & ~mask == 0 for a in g.alphabet):
            return False
    return True


def enumerate_hs(base: AccommodatingSet) -> tuple[HereditarySaturatedSet, ...]:
    """All hereditary saturated subfamilies, as down-sets of their maximal
    elements, sorted by size then mask (an inclusion-compatible order).
    The first entry is always the trivial one (empty maximal element)."""
    found = [
        HereditarySaturatedSet(base=base, max_element=A)
        for A in base
        if _is_hs_max(base, A.mask)
    ]
    found.sort(key=lambda h: (h.max_element.mask.bit_count(), h.max_element.mask))
    return tuple(found)


def hasse_edges(lattice: Iterable[HereditarySaturatedSet]) -> list[tuple[int, int]]:
    """Cover relations (i, j): lattice[i] < lattice[j] with nothing between."""
    items = list(lattice)
    edges = []
    for i, low in enumerate(items):
        for j, high in enumerate(items):
            if i == j or not low.max_element < high.max_element:
                continue
            if any(
                low.max_element < mid.max_element < high.max_element
                for k, mid in enumerate(items)
                if k not in (i, j)
            ):
                continue
            edges.append((i, j))
    return edges


@dataclass(frozen=True)
class IdealDescriptor:
    """What generates the ideal, and what survives in the quotient."""

    max_element: VertexSet
    generators: tuple[VertexSet, ...]
    restricted_alphabet: tuple[str, ...]
    is_zero: bool
    is_whole: bool

    @property
    def monomial_shape(self) -> str:
        if self.is_zero:
            return "0"
        return f"span of s_w p_A s_u* with A <= {self.max_element!r}"


def ideal_descriptor(H: HereditarySaturatedSet) -> IdealDescriptor:
    g = H.base.graph
    restricted = tuple(
        a for a in g.alphabet if g.range_of_word([a]).mask & ~H.max_element.mask
    )
    return IdealDescriptor(
        max_element=H.max_element,
        generators=H.family,
        restricted_alphabet=restricted,
        is_zero=H.is_trivial,
        is_whole=H.is_whole,
    )


@dataclass(frozen=True)
class QuotientLabelledSpace:
    """Classes of the family modulo ``H``: two members are identified when
    they agree outside ``M = H.max_element``, so ``A - M`` is the canonical
    representative.  Relative ranges descend to classes, over the symbols
    whose full range is not swallowed by ``M``."""

    base: AccommodatingSet
    H: HereditarySaturatedSet
    classes: tuple[VertexSet, ...]
    restricted_alphabet: tuple[str, ...]

    @property
    def graph(self):
        return self.base.graph

    def class_of(self, A) -> VertexSet:
        A = self.graph._coerce_set(A)
        if A not in self.base:
            raise ValueError(f"{A!r} is not a member of the family")
        return A - self.H.max_element

    def zero_class(self) -> VertexSet:
        return self.graph.empty_set

    def relative_range(self, A, word) -> VertexSet:
        """Range of a class along a word over the restricted alphabet."""
        word = as_word(word)
        for a in word:
            if a not in self.restricted_alphabet:
                raise ValueError(f"symbol {a!r} not in the restricted alphabet")
        A = self.graph._coerce_set(A)
        return self.graph.relative_range(A, word) - self.H.max_element

    def labels_out(self, A) -> tuple[str, ...]:
        """Restricted symbols with a nonzero class range from [A]."""
        rep = self.class_of(A) if A in self.base else self.graph._coerce_set(A)
        return tuple(
            a
            for a in self.restricted_alphabet
            if self.relative_range(rep, [a])
        )


def quotient_space(
    base: AccommodatingSet, H: HereditarySaturatedSet, check_pairs: bool = True
) -> QuotientLabelledSpace:
    """Build the quotient labelled space for a hereditary saturated ``H``.

    Verifies, on families small enough, that the representative map agrees
    with the defining relation (A ~ B iff A and B have a common union with
    some member of H), that class operations are well-defined, that the
    quotient is weakly left-resolving, and that a class with no nonzero
    restricted range is the zero class.
    """
    g = base.graph
    if H.base is not base and H.base != base:
        raise ValueError("hereditary saturated set belongs to a different family")
    if not base.is_complement_closed():
        raise ValueError(
            "quotient spaces need a complement-closed family; "
            "this one is not closed under set difference"
        )
    M = H.max_element
    reps = tuple(
        dict.fromkeys(A - M for A in base.family)
    )
    restricted = tuple(
        a for a in g.alphabet if g.range_of_word([a]).mask & ~M.mask
    )
    space = QuotientLabelledSpace(
        base=base, H=H, classes=reps, restricted_alphabet=restricted
    )

    if check_pairs and len(base) <= 128:
        hmasks = [A.mask for A in H.family]
        for A in base:
            for B in base:
                definitional = any(A.mask | w == B.mask | w for w in hmasks)
                assert definitional == ((A - M) == (B - M)), (
                    "representative map disagrees with the defining relation"
                )

    # weak left-resolving on classes, single symbols
    for i, X in enumerate(reps):
        for Y in reps[i:]:
            for a in restricted:
                lhs = space.relative_range(X, [a]) & space.relative_range(Y, [a])
                rhs = space.relative_range(X & Y, [a])
                if lhs != rhs:
                    raise QuotientNotWLRError((X, Y, a))

    # a class whose restricted one-step ranges all vanish is the zero class
    for X in reps:
        if X and all(not space.relative_range(X, [a]) for a in restricted):
            raise RuntimeError(
                f"saturation failure in the quotient: [{X!r}] has no nonzero "
                "restricted range but is not the zero class"
            )
    return space
