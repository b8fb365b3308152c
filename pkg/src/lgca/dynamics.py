"""Word periodicity, disagreeability, strong cofinality, and the
simplicity verdict.

A word is *agreeable* for a bound l when it has a period at most
min(l, length-1); equivalently it is a prefix-suffix overlap with offset
at most l.  A labelled space is *disagreeable* when every level class
emits arbitrarily long words that are not agreeable for that level.
*Strong cofinality* asks that, along every infinite labelled path, the
range of the depth-1 class of any of its source vertices eventually lands
inside the label-reachable set of every level class.

The decision procedures:

* disagreeability per (class, level) is exact: a product of the class's
  subset automaton with a period-viability tracker.  Killing every period
  at most l is an absorbing event, and the graph has no sinks, so
  arbitrarily long non-agreeable words exist iff an all-dead product state
  is reachable.
* disagreeability of the whole space is three-valued: refutations are
  exact; confirmations come either from a branching certificate (a
  reachable subset-automaton state inside a strongly connected component
  with two distinct outgoing letters staying in the component, which pumps
  words avoiding every fixed period) or, failing that, from exhausting
  levels up to a bound, which leaves the verdict UNKNOWN.
* strong cofinality is exact: since vertex sets are finite, the union of
  ranges over all labelled paths from a class collapses to its
  label-reachable set R, and a violation is an infinite run of the pair
  automaton (range from the vertex, range from its depth-1 class) staying
  in states whose class-side range escapes R -- a reachable cycle of bad
  states, found by search and reported as a lasso witness.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field
from typing import Optional

from lgca.accommodating import (
    NotWeaklyLeftResolvingError,
    bar_accommodating,
    is_weakly_left_resolving,
)
from lgca.graph import LabelledGraph, VertexSet, Word, as_word, format_word


class Verdict(enum.Enum):
    CONFIRMED = "CONFIRMED"
    REFUTED = "REFUTED"
    UNKNOWN = "UNKNOWN"

    def __str__(self):
        return self.value


def minimal_period(word: Word) -> int:
    """Smallest p >= 1 with word[i] == word[i+p] everywhere, via the
    border (failure function) array; a word of length n with no shorter
    period returns n."""
    word = as_word(word)
    n = len(word)
    fail = [0] * (n + 1)
    k = 0
    for i in range(1, n):
        while k and word[i] != word[k]:
            k = fail[k]
        if word[i] == word[k]:
            k += 1
        fail[i + 1] = k
    return n - fail[n]


def is_agreeable(word, bound: int) -> bool:
    """Whether the word overlaps itself with an offset of at most
    ``bound``: it equals prefix+tail and head+suffix with the affix length
    at most min(bound, length-1)."""
    if bound < 1:
        raise ValueError("bound must be >= 1")
    word = as_word(word)
    return minimal_period(word) <= min(bound, len(word) - 1)


@dataclass(frozen=True)
class ClassLevelResult:
    """Exact verdict for one (class, level): CONFIRMED carries a shortest
    witness word with no period <= level."""

    verdict: Verdict
    class_set: VertexSet
    level: int
    witness: Optional[Word] = None


def is_disagreeable_class(g: LabelledGraph, C: VertexSet, level: int) -> ClassLevelResult:
    """Decide whether ``C`` emits arbitrarily long words that are not
    agreeable for ``level``.

    Product state: (set of endpoints of the word read so far, window of
    the last ``level`` symbols, set of still-viable periods).  Losing all
    periods is absorbing, so reachability of an all-dead state with a
    nonempty endpoint set settles the question; breadth-first order makes
    the witness shortest.
    """
    if level < 1:
        raise ValueError("level must be >= 1")
    C = g._coerce_set(C)
    all_periods = frozenset(range(1, level + 1))
    start = (C.mask, (), all_periods)
    seen = {start}
    queue = deque([(start, ())])
    while queue:
        (mask, window, viable), word = queue.popleft()
        for a in g.alphabet:
            nmask = g._apply(mask, a)
            if not nmask:
                continue
            nviable = frozenset(
                p for p in viable if len(window) < p or window[-p] == a
            )
            nword = word + (a,)
            if not nviable:
                witness = nword
                assert minimal_period(witness) > level
                assert g.relative_range(C, witness)
                return ClassLevelResult(
                    verdict=Verdict.CONFIRMED,
                    class_set=C,
                    level=level,
                    witness=witness,
                )
            nwindow = (window + (a,))[-level:]
            state = (nmask, nwindow, nviable)
            if state not in seen:
                seen.add(state)
                queue.append((state, nword))
    return ClassLevelResult(verdict=Verdict.REFUTED, class_set=C, level=level)


@dataclass(frozen=True)
class BranchingCertificate:
    """A reachable state of the class's subset automaton carrying two
    distinct outgoing letters inside one strongly connected component.
    Two distinct equal-length return words then exist, and padding one
    with enough copies of the other defeats every fixed period bound."""

    class_set: VertexSet
    state: VertexSet
    letters: tuple[str, str]
    path: Word


def _branching_certificate(
    g: LabelledGraph, C: VertexSet
) -> Optional[BranchingCertificate]:
    # subset automaton from C (nonempty states only)
    start = C.mask
    if not start:
        return None
    states = {start: ()}
    order = [start]
    trans: dict[int, dict[str, int]] = {}
    queue = deque([start])
    while queue:
        m = queue.popleft()
        trans[m] = {}
        for a in g.alphabet:
            t = g._apply(m, a)
            if not t:
                continue
            trans[m][a] = t
            if t not in states:
                states[t] = states[m] + (a,)
                order.append(t)
                queue.append(t)

    # strongly connected components (iterative Tarjan)
    index = {}
    low = {}
    on_stack = set()
    stack = []
    comp = {}
    counter = [0]
    comp_id = [0]
    for root in order:
        if root in index:
            continue
        work = [(root, iter(sorted(trans[root].values())))]
        index[root] = low[root] = counter[0]
        counter[0] += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            node, it = work[-1]
            advanced = False
            for child in it:
                if child not in index:
                    index[child] = low[child] = counter[0]
                    counter[0] += 1
                    stack.append(child)
                    on_stack.add(child)
                    work.append((child, iter(sorted(trans[child].values()))))
                    advanced = True
                    break
                if child in on_stack:
                    low[node] = min(low[node], index[child])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[node])
            if low[node] == index[node]:
                while True:
                    member = stack.pop()
                    on_stack.discard(member)
                    comp[member] = comp_id[0]
                    if member == node:
                        break
                comp_id[0] += 1

    for m in order:
        inside = [a for a, t in sorted(trans[m].items()) if comp[t] == comp[m]]
        if len(inside) >= 2:
            return BranchingCertificate(
                class_set=C,
                state=VertexSet(g, m),
                letters=(inside[0], inside[1]),
                path=states[m],
            )
    return None


@dataclass(frozen=True)
class DisagreeableReport:
    verdict: Verdict
    level_bound: int
    refuted_class: Optional[VertexSet] = None
    refuted_level: Optional[int] = None
    certificates: tuple[BranchingCertificate, ...] = ()
    confirmed_up_to: Optional[int] = None

    def summary(self) -> str:
        if self.verdict is Verdict.REFUTED:
            return (
                f"REFUTED: every long word from {self.refuted_class!r} is "
                f"agreeable for bound {self.refuted_level}"
            )
        if self.verdict is Verdict.CONFIRMED:
            return "CONFIRMED: every stable class carries a branching certificate"
        return (
            f"UNKNOWN: no refutation up to level {self.confirmed_up_to}, "
            "and some stable class has no branching certificate"
        )


def _recheck_refutation(g, C, level, cap=4000) -> bool:
    """Bounded sanity check of a per-class refutation: every realized word
    from ``C`` a little longer than the bound must carry a period within
    the bound."""
    budget = [cap]

    def walk(mask, word):
        if budget[0] <= 0:
            return True
        budget[0] -= 1
        if len(word) > level and minimal_period(word) > level:
            return False
        if len(word) >= level + 2:
            return True
        for a in g.alphabet:
            nmask = g._apply(mask, a)
            if nmask and not walk(nmask, word + (a,)):
                return False
        return True

    return walk(C.mask, ())


def is_disagreeable(g: LabelledGraph, level_bound: int = 8) -> DisagreeableReport:
    """Three-valued disagreeability verdict.

    Certificates settle all levels at once, and every level class contains
    a stable class, so certificates on all stable classes confirm the
    space.  Otherwise levels are swept up to ``level_bound``; any exact
    per-(class, level) refutation refutes the space.
    """
    stable, lstar = g.stable_partition()
    certificates = []
    uncertified = []
    for cls in stable.classes:
        cert = _branching_certificate(g, cls)
        if cert is None:
            uncertified.append(cls)
        else:
            certificates.append(cert)
    if not uncertified:
        return DisagreeableReport(
            verdict=Verdict.CONFIRMED,
            level_bound=level_bound,
            certificates=tuple(certificates),
        )

    certified_masks = [c.class_set.mask for c in certificates]
    for level in range(1, level_bound + 1):
        partition = g.level_partition(min(level, lstar))
        for cls in partition.classes:
            if any(cm & cls.mask == cm for cm in certified_masks):
                continue  # contains a certified stable class
            result = is_disagreeable_class(g, cls, level)
            if result.verdict is Verdict.REFUTED:
                if not _recheck_refutation(g, cls, level):
                    raise RuntimeError(
                        "internal error: refutation failed re-validation at "
                        f"({cls!r}, {level})"
                    )
                return DisagreeableReport(
                    verdict=Verdict.REFUTED,
                    level_bound=level_bound,
                    refuted_class=cls,
                    refuted_level=level,
                    certificates=tuple(certificates),
                )
    return DisagreeableReport(
        verdict=Verdict.UNKNOWN,
        level_bound=level_bound,
        certificates=tuple(certificates),
        confirmed_up_to=level_bound,
    )


def label_reachable(g: LabelledGraph, C: VertexSet) -> VertexSet:
    """Union of the ranges of all labelled paths out of ``C``: the least
    fixed point of one-step range expansion."""
    C = g._coerce_set(C)
    reach = 0
    for a in g.alphabet:
        reach |= g._apply(C.mask, a)
    while True:
        grown = reach
        for a in g.alphabet:
            grown |= g._apply(reach | C.mask, a)
        if grown == reach:
            return VertexSet(g, reach)
        reach = grown


@dataclass(frozen=True)
class Lasso:
    """An eventually periodic labelled word prefix . cycle^infinity."""

    prefix: Word
    cycle: Word

    def __str__(self):
        head = format_word(self.prefix) if self.prefix else ""
        return f"{head}({format_word(self.cycle)})^inf"


@dataclass(frozen=True)
class CofinalityReport:
    verdict: Verdict
    witness_vertex: Optional[str] = None
    witness_class: Optional[VertexSet] = None
    witness: Optional[Lasso] = None

    def summary(self) -> str:
        if self.verdict is Verdict.CONFIRMED:
            return "CONFIRMED: strongly cofinal"
        return (
            f"REFUTED: along x = {self.witness}, the depth-1 class of "
            f"{self.witness_vertex} never ranges into the label-reachable "
            f"set of {self.witness_class!r}"
        )


def _distinct_classes(g: LabelledGraph) -> list[VertexSet]:
    _, lstar = g.stable_partition()
    seen = set()
    out = []
    for level in range(1, lstar + 1):
        for cls in g.level_partition(level).classes:
            if cls.mask not in seen:
                seen.add(cls.mask)
                out.append(cls)
    return out


def _check_lasso(g, w, cls, reach_mask, lasso: Lasso) -> bool:
    """Independent re-validation of a cofinality refutation: walk the
    lasso with the public range operation and confirm every visited pair
    stays bad and the cycle really closes."""
    S = g.singleton(w)
    T = g.generalized_vertex(w, 1)

    def step(S, T, word):
        for a in word:
            S = g.relative_range(S, [a])
            T = g.relative_range(T, [a])
            if not S or not (T.mask & ~reach_mask):
                return None
        return S, T

    state = step(S, T, lasso.prefix) if lasso.prefix else (S, T)
    if state is None:
        return False
    after = step(*state, lasso.cycle)
    return after == state if after else False


def is_strongly_cofinal(g: LabelledGraph) -> CofinalityReport:
    """Exact strong-cofinality decision.

    Requires the complement-closed family to be weakly left-resolving;
    raises NotWeaklyLeftResolvingError otherwise.
    """
    bar = bar_accommodating(g)
    ok, witness = is_weakly_left_resolving(g, bar)
    if not ok:
        raise NotWeaklyLeftResolvingError(witness)

    classes = _distinct_classes(g)
    reaches = {cls.mask: label_reachable(g, cls).mask for cls in classes}
    full = g.full_set.mask
    targets = [cls for cls in classes if reaches[cls.mask] != full]
    if not targets:
        return CofinalityReport(verdict=Verdict.CONFIRMED)

    for w in g.vertices:
        # pair automaton: (range from {w}, range from the depth-1 class)
        S0 = g.singleton(w).mask
        T0 = g.generalized_vertex(w, 1).mask
        start = (S0, T0)
        pair_trans: dict[tuple[int, int], dict[str, tuple[int, int]]] = {}
        queue = deque([start])
        seen = {start}
        while queue:
            S, T = queue.popleft()
            moves = {}
            for a in g.alphabet:
                nS = g._apply(S, a)
                if not nS:
                    continue
                nT = g._apply(T, a)
                moves[a] = (nS, nT)
                if (nS, nT) not in seen:
                    seen.add((nS, nT))
                    queue.append((nS, nT))
            pair_trans[(S, T)] = moves

        for cls in targets:
            R = reaches[cls.mask]

            def bad(state):
                return state[1] & ~R != 0

            # nodes reachable from start through bad states only
            reach_bad = set()
            parents = {}
            frontier = deque()
            for a, nxt in sorted(pair_trans[start].items()):
                if bad(nxt) and nxt not in reach_bad:
                    reach_bad.add(nxt)
                    parents[nxt] = (start, a)
                    frontier.append(nxt)
            while frontier:
                node = frontier.popleft()
                for a, nxt in sorted(pair_trans[node].items()):
                    if bad(nxt) and nxt not in reach_bad:
                        reach_bad.add(nxt)
                        parents[nxt] = (node, a)
                        frontier.append(nxt)

            # a cycle within the bad region gives an infinite bad run
            cycle_edge = None
            for node in reach_bad:
                for a, nxt in sorted(pair_trans[node].items()):
                    if nxt in reach_bad:
                        # does nxt reach node again through bad states?
                        probe = {nxt}
                        dq = deque([nxt])
                        path_back = {nxt: ()}
                        while dq:
                            cur = dq.popleft()
                            if cur == node:
                                break
                            for b, onward in sorted(pair_trans[cur].items()):
                                if onward in reach_bad and onward not in probe:
                                    probe.add(onward)
                                    path_back[onward] = path_back[cur] + (b,)
                                    dq.append(onward)
                        if node in path_back or node == nxt:
                            back = path_back.get(node, ())
                            cycle_edge = (node, (a,) + back)
                            break
                if cycle_edge:
                    break

            if cycle_edge:
                node, cycle_word = cycle_edge
                prefix = []
                cur = node
                while cur != start:
                    prev, a = parents[cur]
                    prefix.append(a)
                    cur = prev
                lasso = Lasso(prefix=tuple(reversed(prefix)), cycle=cycle_word)
                if not _check_lasso(g, w, cls, R, lasso):
                    raise RuntimeError(
                        f"internal error: lasso witness failed re-validation: "
                        f"{w}, {cls!r}, {lasso}"
                    )
                return CofinalityReport(
                    verdict=Verdict.REFUTED,
                    witness_vertex=w,
                    witness_class=cls,
                    witness=lasso,
                )
    return CofinalityReport(verdict=Verdict.CONFIRMED)


@dataclass(frozen=True)
class SimplicityVerdict:
    verdict: Verdict
    cofinality: CofinalityReport
    disagreeability: DisagreeableReport

    @property
    def simple(self) -> Optional[bool]:
        if self.verdict is Verdict.CONFIRMED:
            return True
        if self.verdict is Verdict.REFUTED:
            return False
        return None

    def summary(self) -> str:
        if self.verdict is Verdict.CONFIRMED:
            return "SIMPLE"
        if self.verdict is Verdict.REFUTED:
            reasons = []
            if self.cofinality.verdict is Verdict.REFUTED:
                reasons.append("not strongly cofinal")
            if self.disagreeability.verdict is Verdict.REFUTED:
                reasons.append("not disagreeable")
            return "NOT SIMPLE (" + ", ".join(reasons) + ")"
        return "UNKNOWN (disagreeability undecided at this level bound)"


def is_simple(g: LabelledGraph, level_bound: int = 8) -> SimplicityVerdict:
    """Simplicity of the algebra of the complement-closed labelled space:
    the conjunction of strong cofinality (exact) and disagreeability
    (three-valued; UNKNOWN propagates)."""
    cof = is_strongly_cofinal(g)
    dis = is_disagreeable(g, level_bound=level_bound)
    if cof.verdict is Verdict.REFUTED or dis.verdict is Verdict.REFUTED:
        verdict = Verdict.REFUTED
    elif dis.verdict is Verdict.UNKNOWN:
        verdict = Verdict.UNKNOWN
    else:
        verdict = Verdict.CONFIRMED
    return SimplicityVerdict(verdict=verdict, cofinality=cof, disagreeability=dis)
