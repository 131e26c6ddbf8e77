"""Graded free algebras over Laurent coefficients, twisted adjoint relations,
and exact graded dimensions of the quotient algebra U_t^+(T).

Generators are indexed by vertex position (0-based); a word is a tuple of
positions. Coefficients are Laurent polynomials in ``v`` (the twist ``t``).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .scalars import QSqrt
from .unitform import RootSet, UnitForm, ad_exponent

Word = tuple[int, ...]
Vector = tuple[int, ...]

DEFAULT_WORD_CAP = 8


class NonHomogeneous(ValueError):
    pass


class IncompleteRoots(ValueError):
    pass


class ZeroSpecialization(ValueError):
    pass


class CapExceeded(RuntimeError):
    pass


class LaurentPoly:
    """Finite sum of c_k v^k with rational c_k; zero coefficients are dropped."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[int, object] | None = None):
        self.terms: dict[int, Fraction] = {}
        for k, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                self.terms[int(k)] = c

    @classmethod
    def monomial(cls, k: int, c=1) -> "LaurentPoly":
        return cls({k: c})

    @classmethod
    def const(cls, c) -> "LaurentPoly":
        return cls({0: c})

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.const(other)
        return isinstance(other, LaurentPoly) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return LaurentPoly(out)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other) -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly.const(other)
        out: dict[int, Fraction] = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                out[k1 + k2] = out.get(k1 + k2, 0) + c1 * c2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def evaluate(self, value):
        """Exact value at v = ``value`` (Fraction, int or QSqrt)."""
        total = None
        for k, c in self.terms.items():
            term = (value ** k) * c
            total = term if total is None else total + term
        if total is None:
            return value * 0 if isinstance(value, QSqrt) else Fraction(0)
        return total

    def norm1(self) -> Fraction:
        return sum((abs(c) for c in self.terms.values()), Fraction(0))

    def __repr__(self) -> str:
        return f"LaurentPoly({self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for k in sorted(self.terms):
            c = self.terms[k]
            if k == 0:
                parts.append(str(c))
                continue
            mono = "v" if k == 1 else f"v^{k}" if k > 0 else f"v^({k})"
            if c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def to_json(self) -> dict[str, str]:
        return {str(k): str(c) for k, c in sorted(self.terms.items())}


ONE = LaurentPoly.const(1)


class NCElement:
    """Finite linear combination of words with LaurentPoly coefficients."""

    __slots__ = ("terms", "n")

    def __init__(self, n: int, terms: Mapping[Word, LaurentPoly] | None = None):
        self.n = n
        self.terms: dict[Word, LaurentPoly] = {
            tuple(w): c for w, c in (terms or {}).items() if c
        }

    @classmethod
    def generator(cls, n: int, i: int) -> "NCElement":
        return cls(n, {(i,): ONE})

    @classmethod
    def word(cls, n: int, w: Sequence[int], coeff: LaurentPoly = ONE) -> "NCElement":
        return cls(n, {tuple(w): coeff})

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, NCElement) and self.terms == other.terms

    def __add__(self, other: "NCElement") -> "NCElement":
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out[w] + c if w in out else c
        return NCElement(self.n, out)

    def __neg__(self) -> "NCElement":
        return NCElement(self.n, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other: "NCElement") -> "NCElement":
        return self + (-other)

    def __mul__(self, other) -> "NCElement":
        if isinstance(other, NCElement):
            out: dict[Word, LaurentPoly] = {}
            for w1, c1 in self.terms.items():
                for w2, c2 in other.terms.items():
                    w = w1 + w2
                    prod = c1 * c2
                    out[w] = out[w] + prod if w in out else prod
            return NCElement(self.n, out)
        return NCElement(self.n, {w: c * other for w, c in self.terms.items()})

    def scale(self, c: LaurentPoly) -> "NCElement":
        return NCElement(self.n, {w: x * c for w, x in self.terms.items()})

    def degrees(self) -> set[Vector]:
        return {content(w, self.n) for w in self.terms}

    def degree(self) -> Vector:
        degs = self.degrees()
        if len(degs) != 1:
            raise NonHomogeneous(f"element has degrees {sorted(degs)}")
        return degs.pop()

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def format(self, labels: Sequence[str] | None = None) -> str:
        labels = labels or [str(k + 1) for k in range(self.n)]
        if not self.terms:
            return "0"
        parts = []
        for w in sorted(self.terms):
            c = self.terms[w]
            mono = "*".join(f"e{labels[i]}" for i in w) or "1"
            cs = str(c)
            if cs == "1":
                parts.append(mono)
            elif cs == "-1":
                parts.append(f"-{mono}")
            elif len(c.terms) == 1:
                parts.append(f"{cs}*{mono}")
            else:
                parts.append(f"({cs})*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def to_json(self) -> list:
        return [[list(w), c.to_json()] for w, c in sorted(self.terms.items())]

    def __repr__(self) -> str:
        return f"NCElement({self.format()})"


def content(word: Sequence[int], n: int) -> Vector:
    out = [0] * n
    for i in word:
        out[i] += 1
    return tuple(out)


def words_of_degree(alpha: Sequence[int]) -> list[Word]:
    """All distinct words whose letter content is ``alpha``, in lexicographic order."""
    letters = [i for i, m in enumerate(alpha) for _ in range(m)]
    return sorted(set(itertools.permutations(letters)))


def ad(T: UnitForm, x: NCElement, y: NCElement) -> NCElement:
    """Twisted adjoint x*y - v^e y*x with e the ad-exponent of (deg x, deg y)."""
    if not x or not y:
        return NCElement(T.n)
    e = ad_exponent(T, x.degree(), y.degree())
    return x * y - (y * x).scale(LaurentPoly.monomial(e))


def twisted_commutator(x: NCElement, y: NCElement, k: int = 1) -> NCElement:
    """[x, y]_{v^k} = v^k x y - y x."""
    return (x * y).scale(LaurentPoly.monomial(k)) - y * x


def nested_ad(T: UnitForm, seq: Sequence[int], _memo: dict | None = None) -> NCElement:
    """ad(e_{s1}, ad(e_{s2}, ... ad(e_{s(k-1)}, e_{sk})...))."""
    memo = _memo if _memo is not None else {}
    seq = tuple(seq)
    if seq in memo:
        return memo[seq]
    if len(seq) == 1:
        out = NCElement.generator(T.n, seq[0])
    else:
        out = ad(T, NCElement.generator(T.n, seq[0]), nested_ad(T, seq[1:], memo))
    memo[seq] = out
    return out


@dataclass(frozen=True)
class RelationGenerator:
    sequence: Word
    degree: Vector
    element: NCElement


@dataclass
class Presentation:
    form: UnitForm
    roots: RootSet
    relations: list[RelationGenerator]
    discarded_zero: int = 0
    _towers: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def n(self) -> int:
        return self.form.n

    def by_degree(self) -> dict[Vector, list[RelationGenerator]]:
        out: dict[Vector, list[RelationGenerator]] = {}
        for r in self.relations:
            out.setdefault(r.degree, []).append(r)
        return out


def generate_relations(T: UnitForm, roots: RootSet, keep_zero: bool = False) -> Presentation:
    """All nested ad-elements whose tail content is a positive root and whose
    full content is not.
    """
    if roots is None or not isinstance(roots, RootSet):
        raise IncompleteRoots("a certified RootSet is required")
    memo: dict = {}
    rels: list[RelationGenerator] = []
    zero = 0
    for beta in roots:
        for tail in words_of_degree(beta):
            for i in range(T.n):
                full = tuple(b + int(k == i) for k, b in enumerate(beta))
                if full in roots:
                    continue
                seq = (i,) + tail
                elem = nested_ad(T, seq, memo)
                if not elem:
                    zero += 1
                    if not keep_zero:
                        continue
                rels.append(RelationGenerator(seq, full, elem))
    rels.sort(key=lambda r: (sum(r.degree), r.degree, r.sequence))
    return Presentation(T, roots, rels, zero)


def specialize(x: NCElement, value) -> dict[Word, object]:
    """Evaluate every coefficient at v = value exactly (value != 0)."""
    if not value:
        raise ZeroSpecialization("v cannot be specialized to 0")
    out = {}
    for w, c in x.terms.items():
        s = c.evaluate(value)
        if s:
            out[w] = s
    return out


# ---------------------------------------------------------------------------
# Exact graded quotients
# ---------------------------------------------------------------------------


class GenericField:
    """The rational function field Q(v), backed by sympy."""

    name = "generic"

    def __init__(self):
        from sympy import QQ
        from sympy.polys.fields import field as sym_field

        self.QQ = QQ
        self.K, self.v = sym_field("v", QQ)
        self.zero = self.K.zero
        self.one = self.K.one

    def convert(self, c: LaurentPoly):
        out = self.K.zero
        for k, a in c.terms.items():
            out += self.K(self.QQ(a.numerator, a.denominator)) * self.v ** k
        return out


class ValueField:
    """Q or Q(sqrt q), reached by specializing v to a nonzero exact value."""

    def __init__(self, value, name: str | None = None):
        if not value:
            raise ZeroSpecialization("v cannot be specialized to 0")
        self.value = value
        self.name = name or str(value)
        self.one = value / value
        self.zero = self.one - self.one

    def convert(self, c: LaurentPoly):
        return c.evaluate(self.value) + self.zero


def field_for(mode) -> GenericField | ValueField:
    """``mode`` is 'generic', 1, a Fraction, a QSqrt, or 'sqrt:<q>'."""
    if mode == "generic":
        return GenericField()
    if isinstance(mode, str) and mode.startswith("sqrt:"):
        q = int(mode.split(":", 1)[1])
        return ValueField(QSqrt(0, 1, q), f"sqrt({q})")
    if isinstance(mode, QSqrt):
        return ValueField(mode, str(mode))
    return ValueField(Fraction(mode))


class _Slice:
    __slots__ = ("standard", "xcoords", "rows", "pivots", "free", "essential")

    def __init__(self):
        self.standard: list[Word] = []
        self.xcoords: list[tuple[int, Word]] = []
        self.rows: list[list] = []
        self.pivots: list[int] = []
        self.free: list[int] = []
        self.essential: list[int] = []


class GradedQuotient:
    """Free algebra on n generators modulo the two-sided ideal generated by
    homogeneous ``relations``, computed degree by degree.

    For each degree a the quotient F[a]/I[a] is presented inside
    X_a = sum_i e_i (x) Q[a - a_i]; its kernel image is spanned by
    (w - NF(w)) e_j for nonstandard words w of smaller degree and by the
    generators of degree a.
    """

    def __init__(self, n: int, relations: Iterable[NCElement], fld, word_cap: int = DEFAULT_WORD_CAP):
        self.n = n
        self.field = fld
        self.word_cap = word_cap
        self.gens: dict[Vector, list[dict[Word, object]]] = {}
        for rel in relations:
            if not rel:
                continue
            deg = rel.degree()
            conv = {w: fld.convert(c) for w, c in rel.terms.items()}
            conv = {w: c for w, c in conv.items() if c != fld.zero}
            if conv:
                self.gens.setdefault(deg, []).append(conv)
        self._slices: dict[Vector, _Slice] = {}
        self._nf: dict[Word, list] = {}

    # -- core -------------------------------------------------------------

    def _slice(self, alpha: Vector) -> _Slice:
        sl = self._slices.get(alpha)
        if sl is not None:
            return sl
        if sum(alpha) > self.word_cap:
            raise CapExceeded(f"degree {alpha} exceeds the word-length cap {self.word_cap}")
        sl = _Slice()
        zero, one = self.field.zero, self.field.one
        if not any(alpha):
            sl.standard = [()]
            sl.free = [0]
            self._slices[alpha] = sl
            return sl
        for i in range(self.n):
            if alpha[i]:
                sub = self._slice(_minus(alpha, i))
                sl.xcoords.extend((i, s) for s in sub.standard)
        index = {c: k for k, c in enumerate(sl.xcoords)}
        width = len(sl.xcoords)
        rows: list[list] = []
        pivots: list[int] = []

        def add_row(vec: list) -> bool:
            vec = _reduce(vec, rows, pivots, zero)
            lead = next((k for k, x in enumerate(vec) if x != zero), None)
            if lead is None:
                return False
            inv = one / vec[lead]
            vec = [x * inv for x in vec]
            for r in range(len(rows)):
                f = rows[r][lead]
                if f != zero:
                    rows[r] = [a - f * b for a, b in zip(rows[r], vec)]
            rows.append(vec)
            pivots.append(lead)
            return True

        for j in range(self.n):
            if not alpha[j]:
                continue
            beta = _minus(alpha, j)
            prev = self._slice(beta)
            std = set(prev.standard)
            for w in words_of_degree(beta):
                if w in std:
                    continue
                vec = self._xvec(w + (j,), index, width)
                for s, c in zip(prev.standard, self.normal_form_word(w)):
                    if c != zero:
                        other = self._xvec(s + (j,), index, width)
                        vec = [a - c * b for a, b in zip(vec, other)]
                add_row(vec)
        for k, g in enumerate(self.gens.get(alpha, [])):
            vec = [zero] * width
            for w, c in g.items():
                other = self._xvec(w, index, width)
                vec = [a + c * b for a, b in zip(vec, other)]
            if add_row(vec):
                sl.essential.append(k)
        sl.rows, sl.pivots = rows, pivots
        pivset = set(pivots)
        sl.free = [k for k in range(width) if k not in pivset]
        sl.standard = [(sl.xcoords[k][0],) + sl.xcoords[k][1] for k in sl.free]
        self._slices[alpha] = sl
        return sl

    def _xvec(self, w: Word, index: dict, width: int) -> list:
        zero = self.field.zero
        vec = [zero] * width
        head, tail = w[0], w[1:]
        sub = self._slice(content(tail, self.n))
        for s, c in zip(sub.standard, self.normal_form_word(tail)):
            if c != zero:
                vec[index[(head, s)]] = c
        return vec

    def normal_form_word(self, w: Word) -> list:
        """Coordinates of the class of ``w`` on the standard words of its degree."""
        w = tuple(w)
        if w in self._nf:
            return self._nf[w]
        alpha = content(w, self.n)
        sl = self._slice(alpha)
        if not w:
            out = [self.field.one]
        else:
            index = {c: k for k, c in enumerate(sl.xcoords)}
            vec = _reduce(self._xvec(w, index, len(sl.xcoords)), sl.rows, sl.pivots, self.field.zero)
            out = [vec[k] for k in sl.free]
        self._nf[w] = out
        return out

    # -- public -------------------------------------------------------------

    def dim(self, alpha: Sequence[int]) -> int:
        return len(self._slice(tuple(alpha)).standard)

    def ideal_rank(self, alpha: Sequence[int]) -> int:
        return len(words_of_degree(alpha)) - self.dim(alpha)

    def standard_words(self, alpha: Sequence[int]) -> list[Word]:
        return list(self._slice(tuple(alpha)).standard)

    def essential_generators(self, alpha: Sequence[int]) -> list[int]:
        """Indices of degree-alpha generators not implied by lower-degree ones."""
        return list(self._slice(tuple(alpha)).essential)

    def normal_form(self, terms: Mapping[Word, object]) -> list:
        """Class of a homogeneous combination {word: field element}."""
        degs = {content(w, self.n) for w in terms}
        if len(degs) > 1:
            raise NonHomogeneous(f"degrees {sorted(degs)}")
        if not degs:
            return []
        zero = self.field.zero
        alpha = degs.pop()
        out = [zero] * self.dim(alpha)
        for w, c in terms.items():
            out = [a + c * b for a, b in zip(out, self.normal_form_word(w))]
        return out

    def contains(self, x: NCElement) -> bool:
        """Membership of a homogeneous element in the ideal."""
        conv = {w: self.field.convert(c) for w, c in x.terms.items()}
        return all(c == self.field.zero for c in self.normal_form(conv))


def _minus(alpha: Vector, i: int) -> Vector:
    return tuple(a - int(k == i) for k, a in enumerate(alpha))


def _reduce(vec: list, rows: list[list], pivots: list[int], zero) -> list:
    for row, pc in zip(rows, pivots):
        f = vec[pc]
        if f != zero:
            vec = [a - f * b for a, b in zip(vec, row)]
    return vec


def quotient(P: Presentation, mode="generic", word_cap: int = DEFAULT_WORD_CAP) -> GradedQuotient:
    key = (str(mode), word_cap)
    tower = P._towers.get(key)
    if tower is None:
        tower = GradedQuotient(P.n, (r.element for r in P.relations), field_for(mode), word_cap)
        P._towers[key] = tower
    return tower


def graded_dimension(P: Presentation, alpha: Sequence[int], mode="generic",
                     word_cap: int = DEFAULT_WORD_CAP) -> int:
    """dim U[alpha] where mode is 'generic' (v transcendental) or a value for v."""
    if sum(alpha) > word_cap:
        raise CapExceeded(f"|alpha| = {sum(alpha)} exceeds the word-length cap {word_cap}")
    return quotient(P, mode, word_cap).dim(tuple(alpha))


def degrees_up_to(n: int, total: int) -> list[Vector]:
    """All nonzero alpha in N^n with |alpha| <= total, by increasing size."""
    out = [a for a in itertools.product(range(total + 1), repeat=n) if 0 < sum(a) <= total]
    out.sort(key=lambda a: (sum(a), tuple(-x for x in a)))
    return out


def serre_element(n: int, i: int, j: int) -> NCElement:
    """e_i^2 e_j - (v + v^-1) e_i e_j e_i + e_j e_i^2."""
    return NCElement(n, {
        (i, i, j): ONE,
        (i, j, i): LaurentPoly({1: -1, -1: -1}),
        (j, i, i): ONE,
    })




def exact_rank(rows: Sequence[Sequence], zero, one) -> int:
    """Rank of a matrix over any exact field given its zero and one."""
    work = [list(r) for r in rows]
    ncols = len(work[0]) if work else 0
    rank = 0
    for c in range(ncols):
        pr = next((i for i in range(rank, len(work)) if work[i][c] != zero), None)
        if pr is None:
            continue
        work[rank], work[pr] = work[pr], work[rank]
        inv = one / work[rank][c]
        lead = [x * inv for x in work[rank]]
        work[rank] = lead
        for i in range(rank + 1, len(work)):
            f = work[i][c]
            if f != zero:
                work[i] = [x - f * y for x, y in zip(work[i], lead)]
        rank += 1
    return rank
