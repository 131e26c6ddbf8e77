"""Hall numbers, the twisted Hall algebra, and verification of the map
e_i -> [S_i] from the quantized presentation.

Basis elements of the Hall algebra are isomorphism classes, identified with
their Krull-Schmidt multiplicity vectors over an ``IndecompTable``.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from . import gflinalg as gf
from .gflinalg import CapExceeded
from .presentation import GradedQuotient, Presentation, degrees_up_to, exact_rank, quotient
from .quiver import BoundQuiver
from .repmod import (
    END_CAP,
    IndecompTable,
    Representation,
    decompose,
    dim_hom,
    direct_sum,
    end_aut_counts,
    make_rep,
    path_matrix,
    zero_rep,
)
from .scalars import QSqrt
from .unitform import bilinear, kostant_partitions, nu, unit_form_of

DEFAULT_DEGREE_BOUND = 6
COCYCLE_CAP = 10 ** 6

IsoClass = tuple[int, ...]
HallElement = dict  # IsoClass -> QSqrt, zero coefficients never stored


class DegreeOutOfBounds(ValueError):
    pass


class RelationNonzero(AssertionError):
    pass


class DimensionMismatch(AssertionError):
    pass


def _add_into(acc: dict, key, value) -> None:
    new = acc[key] + value if key in acc else value
    if new:
        acc[key] = new
    else:
        acc.pop(key, None)


class HallAlgebra:
    """Twisted Hall algebra of the bound representations, truncated by total dimension."""

    def __init__(self, table: IndecompTable, degree_bound: int = DEFAULT_DEGREE_BOUND):
        self.table = table
        self.bq: BoundQuiver = table.bq
        self.p = self.q = table.p
        self.bound = degree_bound
        self.form = unit_form_of(self.bq)
        self._classes: dict[tuple, list[IsoClass]] = {}
        self._reps: dict[IsoClass, Representation] = {}
        self._classify: dict[Representation, IsoClass] = {}
        self._profiles: dict[tuple, Counter] = {}
        self._products: dict[tuple, dict] = {}
        self._ext_profiles: dict[tuple, tuple[Counter, int]] = {}
        self._aut: dict[IsoClass, int] = {}
        self._words: dict[tuple, dict] = {(): {self.zero_class: self.one}}

    # -- classes --------------------------------------------------------------

    @property
    def n_indec(self) -> int:
        return len(self.table.reps)

    @property
    def zero_class(self) -> IsoClass:
        return (0,) * self.n_indec

    @property
    def one(self) -> QSqrt:
        return QSqrt(1, 0, self.q)

    def unit(self, k: int, m: int = 1) -> IsoClass:
        return tuple(m if j == k else 0 for j in range(self.n_indec))

    def simple_class(self, vertex_index: int) -> IsoClass:
        target = tuple(int(j == vertex_index) for j in range(self.bq.n))
        for k, r in enumerate(self.table.reps):
            if r.dims == target:
                return self.unit(k)
        raise KeyError(f"no simple at vertex index {vertex_index}")

    def dim_of(self, cls: IsoClass) -> tuple[int, ...]:
        return tuple(
            sum(m * r.dims[i] for m, r in zip(cls, self.table.reps)) for i in range(self.bq.n)
        )

    def classes_of_degree(self, alpha: Sequence[int]) -> list[IsoClass]:
        alpha = tuple(alpha)
        if alpha in self._classes:
            return self._classes[alpha]
        dims = [r.dims for r in self.table.reps]
        out: list[IsoClass] = []

        def rec(k: int, rest: tuple, mult: list[int]) -> None:
            if k == len(dims):
                if not any(rest):
                    out.append(tuple(mult))
                return
            d = dims[k]
            m = 0
            while True:
                nxt = tuple(x - m * y for x, y in zip(rest, d))
                if min(nxt) < 0:
                    break
                rec(k + 1, nxt, mult + [m])
                m += 1

        rec(0, alpha, [])
        out.sort()
        self._classes[alpha] = out
        return out

    def basis(self, max_total: int | None = None) -> list[IsoClass]:
        top = self.bound if max_total is None else max_total
        out = [self.zero_class]
        for alpha in degrees_up_to(self.bq.n, top):
            out.extend(self.classes_of_degree(alpha))
        return out

    def representative(self, cls: IsoClass) -> Representation:
        rep = self._reps.get(cls)
        if rep is None:
            parts = [r for m, r in zip(cls, self.table.reps) for _ in range(m)]
            rep = direct_sum(self.bq, parts, self.p) if parts else zero_rep(self.bq, self.p)
            self._reps[cls] = rep
            self._classify[rep] = cls
        return rep

    def classify(self, rep: Representation) -> IsoClass:
        cls = self._classify.get(rep)
        if cls is None:
            options = self.classes_of_degree(rep.dims)
            cls = options[0] if len(options) == 1 else decompose(self.bq, self.table, rep)
            self._classify[rep] = cls
        return cls

    def hall_graded_dim(self, alpha: Sequence[int]) -> int:
        """Number of iso classes of degree alpha (multisets of indecomposables)."""
        return len(self.classes_of_degree(alpha))

    # -- automorphisms --------------------------------------------------------

    def aut_order(self, cls: IsoClass, cap: int = END_CAP) -> int:
        """|Aut R| = q^(dim End R - sum m_l^2) * prod |GL_{m_l}(F_q)| for sums of bricks."""
        if cls in self._aut:
            return self._aut[cls]
        tab = self.table
        if all(tab.is_brick[k] for k, m in enumerate(cls) if m):
            dim_end = sum(
                cls[k] * cls[l] * tab.hom[k][l]
                for k in range(self.n_indec) for l in range(self.n_indec)
            )
            rad = dim_end - sum(m * m for m in cls)
            out = self.q ** rad
            for m in cls:
                out *= gf.gl_order(m, self.q)
        else:
            out = end_aut_counts(self.bq, self.representative(cls), cap)[1]
        self._aut[cls] = out
        return out

    # -- subobject counting -----------------------------------------------------

    def iter_subreps(self, R: Representation, dims: Sequence[int]):
        """Yield (sub, quotient) representations for every subrepresentation of
        R with the given dimension vector."""
        bq, p = self.bq, self.p
        order = list(reversed(bq.quiver.topological_order()))
        idx = bq.quiver.index
        chosen: dict[int, tuple[list[list[int]], list[int]]] = {}

        def rec(pos: int):
            if pos == len(order):
                yield self._sub_and_quotient(R, chosen)
                return
            i = idx(order[pos])
            n_i, d_i = R.dims[i], dims[i]
            constraint: list[list[int]] = []
            for k, a in enumerate(bq.arrows):
                if idx(a.source) != i:
                    continue
                j = idx(a.target)
                basis_j, piv_j = chosen[j]
                # column c is the image of e_c in R_j / U_j
                cols = [
                    gf.reduce_vector([R.maps[k][r][c] for r in range(R.dims[j])], basis_j, piv_j, p)
                    for c in range(n_i)
                ]
                constraint.extend(gf.transpose(cols, R.dims[j]) if cols else [])
            allowed = gf.solve_kernel(constraint, p, n_i)
            if d_i > len(allowed):
                return
            for sub in gf.iter_subspaces(len(allowed), d_i, p):
                vecs = gf.matmul(sub, allowed, p, len(allowed)) if sub else []
                red, _, piv = gf.rref(vecs, p, n_i)
                chosen[i] = (red, piv)
                yield from rec(pos + 1)
            chosen.pop(i, None)

        yield from rec(0)

    def _sub_and_quotient(self, R: Representation, chosen) -> tuple[Representation, Representation]:
        bq, p = self.bq, self.p
        idx = bq.quiver.index
        sub_dims = [len(chosen[i][0]) for i in range(bq.n)]
        quo_dims = [R.dims[i] - sub_dims[i] for i in range(bq.n)]
        free = [[c for c in range(R.dims[i]) if c not in chosen[i][1]] for i in range(bq.n)]
        sub_maps, quo_maps = [], []
        for k, a in enumerate(bq.arrows):
            i, j = idx(a.source), idx(a.target)
            mat = [list(r) for r in R.maps[k]]
            basis_i = chosen[i][0]
            basis_j, piv_j = chosen[j]
            sm = gf.zeros(sub_dims[j], sub_dims[i])
            for col, u in enumerate(basis_i):
                image = gf.matvec(mat, u, p)
                for row, pc in enumerate(piv_j):
                    sm[row][col] = image[pc]
            qm = gf.zeros(quo_dims[j], quo_dims[i])
            for col, c in enumerate(free[i]):
                image = [mat[r][c] for r in range(R.dims[j])]
                red = gf.reduce_vector(image, basis_j, piv_j, p)
                for row, c2 in enumerate(free[j]):
                    qm[row][col] = red[c2]
            sub_maps.append(sm)
            quo_maps.append(qm)
        sub = make_rep(bq, sub_dims, sub_maps, p, check=False)
        quo = make_rep(bq, quo_dims, quo_maps, p, check=False)
        return sub, quo

    def subobject_profile(self, R_cls: IsoClass, dims: Sequence[int]) -> Counter:
        """Counter over (quotient class, subobject class) for subobjects of R with given dims."""
        key = (R_cls, tuple(dims))
        prof = self._profiles.get(key)
        if prof is None:
            prof = Counter()
            R = self.representative(R_cls)
            for sub, quo in self.iter_subreps(R, dims):
                prof[(self.classify(quo), self.classify(sub))] += 1
            self._profiles[key] = prof
        return prof

    def hall_number(self, M: IsoClass, N: IsoClass, R: IsoClass) -> int:
        """F^R_{M,N}: subobjects X of R with X ~ N and R/X ~ M."""
        dM, dN, dR = self.dim_of(M), self.dim_of(N), self.dim_of(R)
        if tuple(a + b for a, b in zip(dM, dN)) != dR:
            return 0
        return self.subobject_profile(R, dN).get((M, N), 0)

    # -- the extension-counting route -------------------------------------------

    def _extension_data(self, V: Representation, W: Representation):
        """Cocycle space Z (block tuples c with [[W, c], [0, V]] bound) and dim of coboundaries."""
        bq, p = self.bq, self.p
        idx = bq.quiver.index
        shapes = []
        for a in bq.arrows:
            i, j = idx(a.source), idx(a.target)
            shapes.append((W.dims[j], V.dims[i]))
        nvars = sum(r * c for r, c in shapes)

        def unpack(vec):
            out, pos = [], 0
            for r, c in shapes:
                out.append([list(vec[pos + k * c:pos + (k + 1) * c]) for k in range(r)])
                pos += r * c
            return out

        def middle(cs) -> Representation:
            maps = []
            for k, a in enumerate(bq.arrows):
                i, j = idx(a.source), idx(a.target)
                top = [list(W.maps[k][r]) + cs[k][r] for r in range(W.dims[j])]
                bottom = [[0] * W.dims[i] + list(V.maps[k][r]) for r in range(V.dims[j])]
                maps.append(top + bottom)
            dims = [w + v for w, v in zip(W.dims, V.dims)]
            return make_rep(bq, dims, maps, p, check=False)

        def constraint(vec) -> list[int]:
            E = middle(unpack(vec))
            out = []
            for rel in bq.relations:
                s, t = idx(rel.source), idx(rel.target)
                total = gf.zeros(E.dims[t], E.dims[s])
                for c, path in rel.terms:
                    pm = path_matrix(bq, E, path)
                    total = [[(x + c * y) % p for x, y in zip(r1, r2)] for r1, r2 in zip(total, pm)]
                out.extend(total[r][W.dims[s] + col]
                           for r in range(W.dims[t]) for col in range(V.dims[s]))
            return out

        units = [[int(k == m) for k in range(nvars)] for m in range(nvars)]
        cols = [constraint(u) for u in units]
        height = len(cols[0]) if cols else 0
        cmat = gf.transpose(cols, height) if cols else []
        Z = gf.solve_kernel(cmat, p, nvars)

        # coboundaries: h = (h_i: V_i -> W_i) maps to W_rho h_i - h_j V_rho
        hshapes = [(W.dims[i], V.dims[i]) for i in range(bq.n)]
        hvars = sum(r * c for r, c in hshapes)
        delta_cols = []
        for m in range(hvars):
            hs, pos = [], 0
            for r, c in hshapes:
                hs.append([[int(pos + k * c + l == m) for l in range(c)] for k in range(r)])
                pos += r * c
            image = []
            for k, a in enumerate(bq.arrows):
                i, j = idx(a.source), idx(a.target)
                Wm, Vm = W.maps[k], V.maps[k]
                for r in range(W.dims[j]):
                    for c in range(V.dims[i]):
                        left = sum(Wm[r][t] * hs[i][t][c] for t in range(W.dims[i]))
                        right = sum(hs[j][r][t] * Vm[t][c] for t in range(V.dims[j]))
                        image.append((left - right) % p)
            delta_cols.append(image)
        dim_b = gf.rank(gf.transpose(delta_cols, nvars), p, hvars) if delta_cols and nvars else 0
        return Z, nvars, dim_b, unpack, middle

    def extension_profile(self, V_cls: IsoClass, W_cls: IsoClass, cap: int = COCYCLE_CAP) -> tuple[Counter, int]:
        """Counter of middle-term classes over all cocycles, and dim of the coboundary space."""
        key = (V_cls, W_cls)
        if key in self._ext_profiles:
            return self._ext_profiles[key]
        V, W = self.representative(V_cls), self.representative(W_cls)
        Z, nvars, dim_b, unpack, middle = self._extension_data(V, W)
        if self.p ** len(Z) > cap:
            raise CapExceeded(f"{self.p}^{len(Z)} cocycles exceed cap {cap}")
        prof = Counter()
        for coeffs in itertools.product(range(self.p), repeat=len(Z)):
            vec = [0] * nvars
            for c, z in zip(coeffs, Z):
                if c:
                    vec = [(x + c * y) % self.p for x, y in zip(vec, z)]
            prof[self.classify(middle(unpack(vec)))] += 1
        self._ext_profiles[key] = (prof, dim_b)
        return prof, dim_b

    def hall_number_via_ext(self, M: IsoClass, N: IsoClass, R: IsoClass) -> int:
        """|Ext(M,N)_R| / |Hom(M,N)| * |Aut R| / (|Aut M| |Aut N|)."""
        dM, dN, dR = self.dim_of(M), self.dim_of(N), self.dim_of(R)
        if tuple(a + b for a, b in zip(dM, dN)) != dR:
            return 0
        prof, dim_b = self.extension_profile(M, N)
        ext_r = Fraction(prof.get(R, 0), self.p ** dim_b)
        hom = self.p ** dim_hom(self.bq, self.representative(M), self.representative(N))
        value = ext_r / hom * Fraction(self.aut_order(R), self.aut_order(M) * self.aut_order(N))
        if value.denominator != 1:
            raise ArithmeticError(f"non-integral Hall number {value} for {M}, {N}, {R}")
        return int(value)

    # -- products -----------------------------------------------------------------

    def twist_exponent(self, M: IsoClass, N: IsoClass) -> int:
        return bilinear(self.form, self.dim_of(M), self.dim_of(N))

    def basis_product(self, M: IsoClass, N: IsoClass, twisted: bool = True) -> dict:
        key = (M, N, twisted)
        if key in self._products:
            return self._products[key]
        dM, dN = self.dim_of(M), self.dim_of(N)
        total = tuple(a + b for a, b in zip(dM, dN))
        if sum(total) > self.bound:
            raise DegreeOutOfBounds(f"degree {total} exceeds the table bound {self.bound}")
        scale = QSqrt.sqrt_power(self.twist_exponent(M, N), self.q) if twisted else self.one
        out: dict = {}
        for R in self.classes_of_degree(total):
            f = self.subobject_profile(R, dN).get((M, N), 0)
            if f:
                out[R] = scale * f
        self._products[key] = out
        return out

    def product(self, x: dict, y: dict, twisted: bool = True) -> dict:
        out: dict = {}
        for M, a in x.items():
            for N, b in y.items():
                ab = a * b
                for R, c in self.basis_product(M, N, twisted).items():
                    _add_into(out, R, ab * c)
        return out

    def element(self, cls: IsoClass) -> dict:
        return {cls: self.one}

    def word_image(self, word: Sequence[int]) -> dict:
        """[S_{w1}] . [S_{w2}] . ... . [S_{wk}]."""
        word = tuple(word)
        if word not in self._words:
            prefix = self.word_image(word[:-1])
            self._words[word] = self.product(prefix, self.element(self.simple_class(word[-1])))
        return self._words[word]

    def evaluate(self, terms: dict) -> dict:
        """Image of {word: QSqrt} under e_i -> [S_i]."""
        out: dict = {}
        for w, c in terms.items():
            for R, x in self.word_image(w).items():
                _add_into(out, R, c * x)
        return out


# ---------------------------------------------------------------------------
# Verification reports
# ---------------------------------------------------------------------------


@dataclass
class AssociativityReport:
    triples: int
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


def verify_associativity(hall: HallAlgebra, max_total: int = 5, twisted: bool = True) -> AssociativityReport:
    """(x y) z = x (y z) for every basis triple with total degree <= max_total."""
    by_size: dict[int, list[IsoClass]] = {}
    for cls in hall.basis(max_total):
        by_size.setdefault(sum(hall.dim_of(cls)), []).append(cls)
    report = AssociativityReport(0)
    sizes = sorted(by_size)
    for a, b, c in itertools.product(sizes, repeat=3):
        if a + b + c > max_total:
            continue
        for x, y, z in itertools.product(by_size[a], by_size[b], by_size[c]):
            ex, ey, ez = hall.element(x), hall.element(y), hall.element(z)
            left = hall.product(hall.product(ex, ey, twisted), ez, twisted)
            right = hall.product(ex, hall.product(ey, ez, twisted), twisted)
            report.triples += 1
            if left != right:
                report.failures.append((x, y, z))
    return report


@dataclass
class HallconReport:
    checked: list = field(default_factory=list)
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return bool(self.checked) and not self.failures


def verify_hallcon(hall: HallAlgebra) -> HallconReport:
    """F^{M+S_i}_{S_i,M} = q^(nu(m,a_i) - nu(a_i,m)) F^{M+S_i}_{M,S_i} for indecomposable M."""
    report = HallconReport()
    T, q = hall.form, hall.q
    for k, rep in enumerate(hall.table.reps):
        if rep.total + 1 > hall.bound:
            continue
        M = hall.unit(k)
        for i in range(hall.bq.n):
            S = hall.simple_class(i)
            R = tuple(a + b for a, b in zip(M, S))
            left = hall.hall_number(S, M, R)
            right = hall.hall_number(M, S, R)
            a_i = T.simple(i)
            e = nu(T, rep.dims, a_i) - nu(T, a_i, rep.dims)
            row = (rep.dims, i, left, right, e)
            report.checked.append(row)
            if Fraction(left) != Fraction(q) ** e * right:
                report.failures.append(row)
    return report


@dataclass
class OracleReport:
    triples: int
    mismatches: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.triples > 0 and not self.mismatches


def verify_hall_oracle(hall: HallAlgebra, max_total: int = 4) -> OracleReport:
    """hall_number == hall_number_via_ext on every basis triple with |dim R| <= max_total."""
    report = OracleReport(0)
    for alpha in degrees_up_to(hall.bq.n, max_total):
        for R in hall.classes_of_degree(alpha):
            for beta in itertools.product(*(range(a + 1) for a in alpha)):
                gamma = tuple(a - b for a, b in zip(alpha, beta))
                for N in hall.classes_of_degree(beta):
                    for M in hall.classes_of_degree(gamma):
                        direct = hall.hall_number(M, N, R)
                        via = hall.hall_number_via_ext(M, N, R)
                        report.triples += 1
                        if direct != via:
                            report.mismatches.append((M, N, R, direct, via))
    return report


@dataclass
class RhoReport:
    q: int
    relations_checked: int = 0
    nonzero: list = field(default_factory=list)
    dims: dict = field(default_factory=dict)
    image_ranks: dict = field(default_factory=dict)

    @property
    def homomorphism_verified(self) -> bool:
        return self.relations_checked > 0 and not self.nonzero

    @property
    def dimensions_match(self) -> bool:
        return all(u == h for u, h in self.dims.values())

    @property
    def surjective(self) -> bool:
        return all(r == self.dims[a][1] for a, r in self.image_ranks.items())

    @property
    def isomorphism_verified(self) -> bool | None:
        if self.q == 2:
            return None
        return self.homomorphism_verified and self.dimensions_match and self.surjective

    @property
    def passed(self) -> bool:
        return self.homomorphism_verified and (self.q == 2 or bool(self.isomorphism_verified))

    def to_dict(self) -> dict:
        return {
            "q": self.q,
            "relations_checked": self.relations_checked,
            "nonzero_relations": [list(s) for s in self.nonzero],
            "homomorphism_verified": self.homomorphism_verified,
            "isomorphism_verified": self.isomorphism_verified,
            "dimensions": [
                {"alpha": list(a), "presentation": u, "hall": h,
                 "image_rank": self.image_ranks.get(a)}
                for a, (u, h) in sorted(self.dims.items(), key=lambda kv: (sum(kv[0]), kv[0]))
            ],
        }


def rho_verify(P: Presentation, hall: HallAlgebra, max_total: int = 5,
               check_image: bool = True, raise_on_failure: bool = False) -> RhoReport:
    """Check that every relation maps to zero under e_i -> [S_i] with v = sqrt(q),
    and that graded dimensions of the presentation and the Hall algebra agree."""
    q = hall.q
    sq = QSqrt(0, 1, q)
    report = RhoReport(q)
    for rel in P.relations:
        if sum(rel.degree) > hall.bound:
            raise DegreeOutOfBounds(f"relation degree {rel.degree} beyond table bound {hall.bound}")
        terms = {w: c.evaluate(sq) for w, c in rel.element.terms.items()}
        image = hall.evaluate({w: c for w, c in terms.items() if c})
        report.relations_checked += 1
        if image:
            report.nonzero.append(rel.sequence)
    if raise_on_failure and report.nonzero:
        raise RelationNonzero(f"relations {report.nonzero[:3]} do not vanish")
    tower: GradedQuotient = quotient(P, f"sqrt:{q}")
    for alpha in degrees_up_to(P.n, max_total):
        report.dims[alpha] = (tower.dim(alpha), hall.hall_graded_dim(alpha))
        if check_image:
            classes = hall.classes_of_degree(alpha)
            pos = {c: k for k, c in enumerate(classes)}
            rows = []
            for w in tower.standard_words(alpha):
                vec = [QSqrt(0, 0, q)] * len(classes)
                for cls, x in hall.word_image(w).items():
                    vec[pos[cls]] = x
                rows.append(vec)
            report.image_ranks[alpha] = exact_rank(rows, QSqrt(0, 0, q), QSqrt(1, 0, q))
    if raise_on_failure and q != 2 and not report.dimensions_match:
        raise DimensionMismatch("graded dimensions differ")
    return report


def multiset_dim(table: IndecompTable, alpha: Sequence[int]) -> int:
    """Count of multisets of indecomposable dimension vectors summing to alpha."""
    return kostant_partitions(alpha, [r.dims for r in table.reps])


def hall_number(bq: BoundQuiver, table: IndecompTable, M: Representation, N: Representation,
                R: Representation, hall: HallAlgebra | None = None) -> int:
    hall = hall or HallAlgebra(table)
    if tuple(a + b for a, b in zip(M.dims, N.dims)) != R.dims:
        return 0
    return hall.hall_number(hall.classify(M), hall.classify(N), hall.classify(R))


def hall_number_via_ext(bq: BoundQuiver, table: IndecompTable, M: Representation, N: Representation,
                        R: Representation, hall: HallAlgebra | None = None) -> int:
    hall = hall or HallAlgebra(table)
    if tuple(a + b for a, b in zip(M.dims, N.dims)) != R.dims:
        return 0
    return hall.hall_number_via_ext(hall.classify(M), hall.classify(N), hall.classify(R))


def classes_json(hall: HallAlgebra, classes: Iterable[IsoClass]) -> list:
    return [list(c) for c in classes]


def nonvanishing(hall: HallAlgebra, named: Iterable[tuple[str, object]]) -> list[str]:
    """Names of the elements (NCElements over Laurent coefficients) whose image
    under e_i -> [S_i] at v = sqrt(q) is nonzero."""
    sq = QSqrt(0, 1, hall.q)
    bad = []
    for name, x in named:
        terms = {w: c.evaluate(sq) for w, c in x.terms.items()}
        if hall.evaluate({w: c for w, c in terms.items() if c}):
            bad.append(name)
    return bad
