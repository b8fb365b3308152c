"""Exact symbolic calculus for the spanning monomials of a labelled-space
algebra and of its quotients.

An element is a finite linear combination of monomials s_w p_A s_u*, where
w and u are label words (either may be absent, leaving a bare projection
side) and A is a family member.  Coefficients are Gaussian rationals, so
equality of canonical forms is decidable and exact.

Normalization replaces A by its intersection with the ranges of both
words; a monomial vanishes exactly when that intersection is empty.
Products follow the prefix comparison of the inner words: the shorter
inner word must be a prefix of the other, the leftover travels into a
relative range, and everything else multiplies to zero.

In quotient mode the same calculus runs on class representatives with
words restricted to the symbols that survive the quotient.

Canonical equality is sound but not claimed complete: two sums are equal
whenever their canonical forms coincide after splitting projections over
the family's atoms and padding both sides to a common word length.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from lgca.accommodating import AccommodatingSet, bar_accommodating
from lgca.graph import LabelledGraph, VertexSet, Word, as_word, format_word
from lgca.ideals import HereditarySaturatedSet, QuotientLabelledSpace


@dataclass(frozen=True)
class QQi:
    """Gaussian rational a + b*i with exact Fraction parts."""

    re: Fraction
    im: Fraction = Fraction(0)

    @staticmethod
    def of(value) -> "QQi":
        if isinstance(value, QQi):
            return value
        if isinstance(value, (int, Fraction)):
            return QQi(Fraction(value))
        if isinstance(value, complex) and value.real == int(value.real) and (
            value.imag == int(value.imag)
        ):
            return QQi(Fraction(int(value.real)), Fraction(int(value.imag)))
        raise TypeError(f"cannot coerce {value!r} to a Gaussian rational")

    def __add__(self, other):
        other = QQi.of(other)
        return QQi(self.re + other.re, self.im + other.im)

    def __sub__(self, other):
        other = QQi.of(other)
        return QQi(self.re - other.re, self.im - other.im)

    def __mul__(self, other):
        other = QQi.of(other)
        return QQi(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __radd__ = __add__
    __rmul__ = __mul__

    def __neg__(self):
        return QQi(-self.re, -self.im)

    def conjugate(self) -> "QQi":
        return QQi(self.re, -self.im)

    def __bool__(self):
        return bool(self.re or self.im)

    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"({self.re}{sign}{abs(self.im)}i)"


I = QQi(Fraction(0), Fraction(1))
ONE = QQi(Fraction(1))


@dataclass(frozen=True)
class Monomial:
    """s_left p_A s_right* in normalized form: A is already cut down to the
    ranges of both words (class representatives in quotient mode), and is
    nonempty.  Empty word tuples mean a bare projection side."""

    left: Word
    projection: VertexSet
    right: Word

    @property
    def gauge_degree(self) -> int:
        return len(self.left) - len(self.right)

    def __str__(self):
        parts = []
        if self.left:
            parts.append(f"s_{format_word(self.left)}")
        parts.append(f"p{self.projection!r}")
        if self.right:
            parts.append(f"s_{format_word(self.right)}*")
        return " ".join(parts)

    def sort_key(self):
        return (
            len(self.left),
            self.left,
            len(self.right),
            self.right,
            self.projection.mask,
        )


def gauge_degree(m: Monomial) -> int:
    return m.gauge_degree


class TermAlgebra:
    """Context for building and multiplying term sums over one labelled
    space, or over a quotient of it."""

    def __init__(
        self,
        graph: LabelledGraph,
        family: Optional[AccommodatingSet] = None,
        quotient: Optional[QuotientLabelledSpace] = None,
    ):
        self.graph = graph
        self.quotient = quotient
        self._family = quotient.base if quotient is not None else family

    @property
    def family(self) -> AccommodatingSet:
        if self._family is None:
            self._family = bar_accommodating(self.graph)
        return self._family

    @property
    def alphabet(self) -> tuple[str, ...]:
        if self.quotient is not None:
            return self.quotient.restricted_alphabet
        return self.graph.alphabet

    def same_mode(self, other: "TermAlgebra") -> bool:
        return self.graph == other.graph and self.quotient == other.quotient

    # -- mode-aware range arithmetic ------------------------------------

    def _check_word(self, word: Word):
        for a in word:
            if a not in self.alphabet:
                raise ValueError(f"symbol {a!r} not available in this mode")

    def range_of(self, word: Word) -> VertexSet:
        r = self.graph.range_of_word(word)
        if self.quotient is not None:
            r = r - self.quotient.H.max_element
        return r

    def rel_range(self, A: VertexSet, word: Word) -> VertexSet:
        r = self.graph.relative_range(A, word)
        if self.quotient is not None:
            r = r - self.quotient.H.max_element
        return r

    def atoms(self) -> tuple[VertexSet, ...]:
        base_atoms = self.family.atoms
        if base_atoms is None:
            raise ValueError(
                "family has no atom decomposition; canonical equality "
                "needs a complement-closed family"
            )
        if self.quotient is None:
            return base_atoms
        M = self.quotient.H.max_element
        return tuple(a for a in base_atoms if not a <= M)

    # -- constructors ----------------------------------------------------

    def monomial(self, left, projection, right) -> Optional[Monomial]:
        """Normalized monomial, or None when it is zero."""
        left = as_word(left) if left else ()
        right = as_word(right) if right else ()
        self._check_word(left)
        self._check_word(right)
        A = self.graph._coerce_set(projection)
        if self.quotient is not None:
            A = self.quotient.class_of(A) if A in self.family else A - self.quotient.H.max_element
        mask = A.mask
        if left:
            mask &= self.range_of(left).mask
        if right:
            mask &= self.range_of(right).mask
        if not mask:
            return None
        return Monomial(left=left, projection=VertexSet(self.graph, mask), right=right)

    def term(self, left, projection, right, coeff=1) -> "TermSum":
        m = self.monomial(left, projection, right)
        if m is None:
            return self.zero()
        return TermSum(self, {m: QQi.of(coeff)})

    def s(self, symbol: str) -> "TermSum":
        """The partial isometry of one symbol."""
        return self.term((symbol,), self.graph.full_set, ())

    def p(self, vertices) -> "TermSum":
        """The projection of a family member."""
        A = self.graph._coerce_set(vertices)
        if A not in self.family:
            raise ValueError(f"{A!r} is not a member of the family")
        return self.term((), A, ())

    def zero(self) -> "TermSum":
        return TermSum(self, {})

    # -- monomial product ---------------------------------------------------

    def _mul_monomials(self, x: Monomial, y: Monomial) -> Optional[Monomial]:
        beta, gamma = x.right, y.left
        if len(gamma) >= len(beta):
            if gamma[: len(beta)] != beta:
                return None
            tail = gamma[len(beta) :]
            if tail:
                A = self.rel_range(x.projection, tail) & y.projection
            else:
                A = x.projection & y.projection
            if not A:
                return None
            return self.monomial(x.left + tail, A, y.right)
        if beta[: len(gamma)] != gamma:
            return None
        tail = beta[len(gamma) :]
        A = x.projection & self.rel_range(y.projection, tail)
        if not A:
            return None
        return self.monomial(x.left, A, y.right + tail)


class TermSum:
    """A finite linear combination of monomials with Gaussian-rational
    coefficients; zero terms are never stored."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: TermAlgebra, terms: dict[Monomial, QQi]):
        self.algebra = algebra
        self.terms = {m: c for m, c in terms.items() if c}

    # -- linear structure ------------------------------------------------

    def _require_same_mode(self, other: "TermSum"):
        if not self.algebra.same_mode(other.algebra):
            raise ValueError("term sums live in different algebras")

    def __add__(self, other: "TermSum") -> "TermSum":
        self._require_same_mode(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, QQi(Fraction(0))) + c
        return TermSum(self.algebra, out)

    def __sub__(self, other: "TermSum") -> "TermSum":
        return self + (-other)

    def __neg__(self) -> "TermSum":
        return TermSum(self.algebra, {m: -c for m, c in self.terms.items()})

    def scale(self, scalar) -> "TermSum":
        c = QQi.of(scalar)
        return TermSum(self.algebra, {m: c * v for m, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, TermSum):
            self._require_same_mode(other)
            out: dict[Monomial, QQi] = {}
            for mx, cx in self.terms.items():
                for my, cy in other.terms.items():
                    mz = self.algebra._mul_monomials(mx, my)
                    if mz is not None:
                        out[mz] = out.get(mz, QQi(Fraction(0))) + cx * cy
            return TermSum(self.algebra, out)
        return self.scale(other)

    def __rmul__(self, scalar):
        return self.scale(scalar)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, TermSum):
            return NotImplemented
        return self.algebra.same_mode(other.algebra) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # -- star structure -----------------------------------------------------

    def adjoint(self) -> "TermSum":
        out = {}
        for m, c in self.terms.items():
            flipped = Monomial(left=m.right, projection=m.projection, right=m.left)
            out[flipped] = c.conjugate()
        return TermSum(self.algebra, out)

    # -- expansion, gauge, membership -------------------------------------

    def expand(self, level: int) -> "TermSum":
        """Pad every monomial whose shorter word side is below ``level``
        using the one-step projection expansion; the result is equal in
        the algebra."""
        if level < 0:
            raise ValueError("level must be >= 0")
        algebra = self.algebra
        out: dict[Monomial, QQi] = {}
        stack = list(self.terms.items())
        while stack:
            m, c = stack.pop()
            if min(len(m.left), len(m.right)) >= level:
                out[m] = out.get(m, QQi(Fraction(0))) + c
                continue
            for a in algebra.alphabet:
                A = algebra.rel_range(m.projection, (a,))
                if not A:
                    continue
                padded = algebra.monomial(m.left + (a,), A, m.right + (a,))
                if padded is not None:
                    stack.append((padded, c))
        return TermSum(algebra, out)

    def gauge_degrees(self) -> frozenset[int]:
        return frozenset(m.gauge_degree for m in self.terms)

    def is_gauge_fixed(self) -> bool:
        """Fixed by the whole circle action: every monomial has balanced
        word lengths."""
        return self.gauge_degrees() <= {0}

    def gauge_transform(self, k: int = 1) -> "TermSum":
        """The circle action at the fourth root of unity i^k: each
        monomial picks up i^(k * degree)."""
        phases = (ONE, I, -ONE, -I)
        out = {}
        for m, c in self.terms.items():
            out[m] = c * phases[(m.gauge_degree * k) % 4]
        return TermSum(self.algebra, out)

    # -- canonical equality ----------------------------------------------

    def _atom_split(self) -> "TermSum":
        atoms = self.algebra.atoms()
        out: dict[Monomial, QQi] = {}
        for m, c in self.terms.items():
            for atom in atoms:
                piece = atom & m.projection
                if not piece:
                    continue
                if piece != atom:
                    raise ValueError(
                        f"projection {m.projection!r} is not a union of atoms"
                    )
                mm = Monomial(left=m.left, projection=atom, right=m.right)
                out[mm] = out.get(mm, QQi(Fraction(0))) + c
        return TermSum(self.algebra, out)

    def canonical(self, level: Optional[int] = None) -> "TermSum":
        """Expand to a common word length and split projections over the
        family atoms.  Canonical forms of equal elements built from the
        defining identities coincide; distinct canonical forms are not
        claimed to separate elements."""
        if level is None:
            level = max(
                (max(len(m.left), len(m.right)) for m in self.terms), default=0
            )
        return self.expand(level)._atom_split()

    def equals(self, other: "TermSum") -> bool:
        """Sound one-sided equality through canonical forms."""
        self._require_same_mode(other)
        level = 0
        for x in (self, other):
            for m in x.terms:
                level = max(level, len(m.left), len(m.right))
        return self.canonical(level).terms == other.canonical(level).terms

    # -- rendering -----------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        bits = []
        for m in sorted(self.terms, key=Monomial.sort_key):
            c = self.terms[m]
            if c == ONE:
                bits.append(str(m))
            else:
                bits.append(f"{c} {m}")
        return "  +  ".join(bits)

    def __repr__(self):
        return f"TermSum({self})"


def in_ideal(m: Optional[Monomial], H: HereditarySaturatedSet) -> bool:
    """Whether the (normalized) monomial lies in the ideal indexed by
    ``H``: its projection set is contained in the maximal element.  The
    zero monomial (None) is in every ideal."""
    if m is None:
        return True
    return m.projection <= H.max_element


def term_in_ideal(x: TermSum, H: HereditarySaturatedSet) -> bool:
    return all(in_ideal(m, H) for m in x.terms)


def quotient_map(x: TermSum, Q: QuotientLabelledSpace) -> TermSum:
    """Push a base term sum into the quotient algebra: words using symbols
    killed by the quotient vanish, projections pass to class
    representatives, and monomials whose class is zero vanish."""
    if x.algebra.quotient is not None:
        raise ValueError("term sum is already in a quotient algebra")
    target = TermAlgebra(x.algebra.graph, quotient=Q)
    restricted = set(Q.restricted_alphabet)
    out = target.zero()
    for m, c in x.terms.items():
        if any(a not in restricted for a in m.left + m.right):
            continue
        out = out + target.term(m.left, m.projection, m.right, coeff=c)
    return out
