"""Bound representations over F_p: Hom, End/Aut, projectives, syzygies, Ext,
indecomposable enumeration, directed ordering and Krull-Schmidt decomposition.

A representation stores one matrix per arrow (quiver arrow order) with
``dim(target)`` rows and ``dim(source)`` columns.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from . import gflinalg as gf
from .gflinalg import CapExceeded
from .quiver import BoundQuiver, Path, enumerate_paths, relation_counts
from .unitform import RootSet, bilinear, positive_roots, unit_form_of

END_CAP = 10 ** 7
TUPLE_CAP = 2 * 10 ** 6
DIM_CAP = 3
TOTAL_DIM_CAP = 8
RESOLUTION_CAP = 6

Vector = tuple[int, ...]
Mat = tuple[tuple[int, ...], ...]


class ShapeMismatch(ValueError):
    pass


class DirectednessFailure(RuntimeError):
    pass


class RootBijectionFailure(RuntimeError):
    pass


class InconsistentDecomposition(RuntimeError):
    pass


class ResolutionTooLong(RuntimeError):
    pass


class GlobalDimensionTooLarge(RuntimeError):
    pass


@dataclass(frozen=True)
class Representation:
    dims: Vector
    maps: tuple[Mat, ...]
    p: int

    @property
    def total(self) -> int:
        return sum(self.dims)

    def matrix(self, k: int) -> list[list[int]]:
        return [list(r) for r in self.maps[k]]

    def to_dict(self) -> dict:
        return {"dims": list(self.dims), "maps": [[list(r) for r in m] for m in self.maps]}


def _freeze(m: Iterable[Iterable[int]]) -> Mat:
    return tuple(tuple(r) for r in m)


def make_rep(bq: BoundQuiver, dims: Sequence[int], maps: Sequence, p: int, check: bool = True) -> Representation:
    """Build a representation; ``maps`` is a list (arrow order) or a dict by arrow name."""
    if isinstance(maps, dict):
        maps = [maps.get(a.name) for a in bq.arrows]
    frozen = []
    for a, m in zip(bq.arrows, maps):
        rows, cols = dims[bq.quiver.index(a.target)], dims[bq.quiver.index(a.source)]
        if m is None:
            m = gf.zeros(rows, cols)
        m = [[x % p for x in r] for r in m]
        if len(m) != rows or any(len(r) != cols for r in m):
            raise ShapeMismatch(f"arrow {a.name} needs a {rows}x{cols} matrix")
        frozen.append(_freeze(m))
    if len(frozen) != len(bq.arrows):
        raise ShapeMismatch("one matrix per arrow is required")
    rep = Representation(tuple(dims), tuple(frozen), p)
    if check and not is_bound(bq, rep):
        raise ValueError("representation does not satisfy the relations")
    return rep


def zero_rep(bq: BoundQuiver, p: int) -> Representation:
    return make_rep(bq, [0] * bq.n, [None] * len(bq.arrows), p)


def simple(bq: BoundQuiver, vertex: str, p: int) -> Representation:
    return make_rep(bq, bq.simple_vector(vertex), [None] * len(bq.arrows), p)


def direct_sum(bq: BoundQuiver, reps: Sequence[Representation], p: int) -> Representation:
    dims = [sum(r.dims[i] for r in reps) for i in range(bq.n)]
    maps = []
    for k, a in enumerate(bq.arrows):
        s, t = bq.quiver.index(a.source), bq.quiver.index(a.target)
        block = gf.zeros(dims[t], dims[s])
        ro = co = 0
        for r in reps:
            for i, row in enumerate(r.maps[k]):
                block[ro + i][co:co + r.dims[s]] = list(row)
            ro += r.dims[t]
            co += r.dims[s]
        maps.append(block)
    return make_rep(bq, dims, maps, p, check=False)


def _mul(a, b, p: int, inner: int) -> list[list[int]]:
    return gf.matmul([list(r) for r in a], [list(r) for r in b], p, inner)


def path_matrix(bq: BoundQuiver, rep: Representation, path: Path) -> list[list[int]]:
    """V_path = V_{a_k} ... V_{a_1} for a path applied a_1 first."""
    idx = bq.quiver.index
    n0 = rep.dims[idx(path.source)]
    acc = gf.identity(n0)
    for name in path.arrows:
        k = next(j for j, a in enumerate(bq.arrows) if a.name == name)
        src = bq.arrows[k].source
        inner = rep.dims[idx(src)]
        # an empty middle space leaves no rows to read the width from
        acc = _mul(rep.maps[k], acc, rep.p, inner) if inner else gf.zeros(len(rep.maps[k]), n0)
    return acc


def is_bound(bq: BoundQuiver, rep: Representation) -> bool:
    for k, a in enumerate(bq.arrows):
        rows, cols = rep.dims[bq.quiver.index(a.target)], rep.dims[bq.quiver.index(a.source)]
        m = rep.maps[k]
        if len(m) != rows or any(len(r) != cols for r in m):
            raise ShapeMismatch(f"arrow {a.name} carries a {len(m)}-row matrix, expected {rows}x{cols}")
    for rel in bq.relations:
        rows = rep.dims[bq.quiver.index(rel.target)]
        cols = rep.dims[bq.quiver.index(rel.source)]
        total = gf.zeros(rows, cols)
        for c, path in rel.terms:
            pm = path_matrix(bq, rep, path)
            total = [[(x + c * y) % rep.p for x, y in zip(r1, r2)] for r1, r2 in zip(total, pm)]
        if any(any(r) for r in total):
            return False
    return True


# ---------------------------------------------------------------------------
# Hom spaces
# ---------------------------------------------------------------------------


def _offsets(V: Representation, W: Representation) -> list[int]:
    offs, acc = [], 0
    for vi, wi in zip(V.dims, W.dims):
        offs.append(acc)
        acc += vi * wi
    offs.append(acc)
    return offs


def _hom_system(bq: BoundQuiver, V: Representation, W: Representation) -> tuple[list[list[int]], int]:
    """Rows of the linear system f_j V_rho - W_rho f_i = 0 over all arrows."""
    p = V.p
    offs = _offsets(V, W)
    nvars = offs[-1]
    rows = []
    for k, a in enumerate(bq.arrows):
        i, j = bq.quiver.index(a.source), bq.quiver.index(a.target)
        vi, wj, wi, vj = V.dims[i], W.dims[j], W.dims[i], V.dims[j]
        Vr, Wr = V.maps[k], W.maps[k]
        for r in range(wj):
            for c in range(vi):
                eq = [0] * nvars
                for t in range(vj):
                    if Vr[t][c]:
                        eq[offs[j] + r * vj + t] += Vr[t][c]
                for t in range(wi):
                    if Wr[r][t]:
                        eq[offs[i] + t * vi + c] -= Wr[r][t]
                rows.append([x % p for x in eq])
    return rows, nvars


def _unflatten(vec: Sequence[int], V: Representation, W: Representation) -> tuple[Mat, ...]:
    offs = _offsets(V, W)
    out = []
    for i, (vi, wi) in enumerate(zip(V.dims, W.dims)):
        chunk = vec[offs[i]:offs[i + 1]]
        out.append(tuple(tuple(chunk[r * vi:(r + 1) * vi]) for r in range(wi)))
    return tuple(out)


def hom_basis(bq: BoundQuiver, V: Representation, W: Representation) -> list[tuple[Mat, ...]]:
    """Basis of intertwiners f = (f_i: V_i -> W_i) with f_j V_rho = W_rho f_i."""
    rows, nvars = _hom_system(bq, V, W)
    return [_unflatten(v, V, W) for v in gf.solve_kernel(rows, V.p, nvars)]


def dim_hom(bq: BoundQuiver, V: Representation, W: Representation) -> int:
    if not V.total or not W.total:
        return 0
    rows, nvars = _hom_system(bq, V, W)
    return nvars - gf.rank(rows, V.p, nvars)


def _combinations(basis: Sequence[tuple[Mat, ...]], p: int, cap: int):
    if p ** len(basis) > cap:
        raise CapExceeded(f"{p}^{len(basis)} elements exceed the cap {cap}")
    for coeffs in itertools.product(range(p), repeat=len(basis)):
        yield coeffs, _combine(basis, coeffs, p)


def _combine(basis, coeffs, p: int) -> tuple[list[list[int]], ...]:
    if not basis:
        return ()
    out = [[[0] * len(r) for r in block] for block in basis[0]]
    for c, elem in zip(coeffs, basis):
        if c:
            for blk_out, blk in zip(out, elem):
                for r_out, r in zip(blk_out, blk):
                    for k, x in enumerate(r):
                        r_out[k] = (r_out[k] + c * x) % p
    return tuple(out)


def _tuple_invertible(f, p: int) -> bool:
    return all(gf.is_invertible(block, p) for block in f if block)


def end_aut_counts(bq: BoundQuiver, V: Representation, cap: int = END_CAP) -> tuple[int, int]:
    """(|End V|, |Aut V|), Aut counted exhaustively over End."""
    basis = hom_basis(bq, V, V)
    aut = 0
    for _, f in _combinations(basis, V.p, cap):
        if _tuple_invertible(f, V.p):
            aut += 1
    return V.p ** len(basis), aut


def is_isomorphic(bq: BoundQuiver, V: Representation, W: Representation, cap: int = END_CAP) -> bool:
    if V.dims != W.dims:
        return False
    basis = hom_basis(bq, V, W)
    for coeffs, f in _combinations(basis, V.p, cap):
        if any(coeffs) and _tuple_invertible(f, V.p):
            return True
    return False


def _compose(f, g, dims_mid: Sequence[int], p: int):
    """(f o g) blockwise: g: U -> V, f: V -> W."""
    return tuple(gf.matmul([list(r) for r in fb], [list(r) for r in gb], p, dm)
                 for fb, gb, dm in zip(f, g, dims_mid))


def is_indecomposable(bq: BoundQuiver, V: Representation, cap: int = END_CAP) -> bool:
    """No idempotent of End(V) other than 0 and the identity."""
    if V.total == 0:
        return False
    basis = hom_basis(bq, V, V)
    if len(basis) == 1:
        return True
    p = V.p
    ident = tuple(_freeze(gf.identity(d)) for d in V.dims)
    for coeffs, e in _combinations(basis, p, cap):
        if not any(coeffs):
            continue
        frozen = tuple(_freeze(b) for b in e)
        if frozen == ident:
            continue
        if tuple(_freeze(b) for b in _compose(e, e, V.dims, p)) == frozen:
            return False
    return True


# ---------------------------------------------------------------------------
# Projectives, syzygies and Ext
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Projective:
    vertex: str
    rep: Representation
    basis_paths: tuple[tuple[Path, ...], ...]


def _ideal_slice(bq: BoundQuiver, i: str, j: str, p: int) -> tuple[list[Path], list[list[int]], list[int]]:
    """Paths i -> j and the RREF of the ideal's (i, j) slice in path coordinates."""
    paths = enumerate_paths(bq.quiver, i, j)
    pos = {pa.arrows: k for k, pa in enumerate(paths)}
    gens = []
    for rel in bq.relations:
        for u in enumerate_paths(bq.quiver, i, rel.source):
            for w in enumerate_paths(bq.quiver, rel.target, j):
                vec = [0] * len(paths)
                for c, path in rel.terms:
                    vec[pos[u.arrows + path.arrows + w.arrows]] += c
                gens.append([x % p for x in vec])
    red, _, piv = gf.rref(gens, p, len(paths))
    return paths, red, piv


def projective(bq: BoundQuiver, vertex: str, p: int) -> Projective:
    """P_i: paths starting at i modulo the ideal, arrows acting by extension."""
    slices = {j: _ideal_slice(bq, vertex, j, p) for j in bq.vertices}
    basis = {}
    for j, (paths, _, piv) in slices.items():
        basis[j] = [k for k in range(len(paths)) if k not in set(piv)]
    dims = [len(basis[j]) for j in bq.vertices]
    maps = []
    for a in bq.arrows:
        src_paths = slices[a.source][0]
        tgt_paths, red, piv = slices[a.target]
        pos = {pa.arrows: k for k, pa in enumerate(tgt_paths)}
        tgt_basis = basis[a.target]
        m = gf.zeros(len(tgt_basis), len(basis[a.source]))
        for col, k in enumerate(basis[a.source]):
            vec = [0] * len(tgt_paths)
            vec[pos[src_paths[k].arrows + (a.name,)]] = 1
            vec = gf.reduce_vector(vec, red, piv, p)
            for row, b in enumerate(tgt_basis):
                m[row][col] = vec[b]
        maps.append(m)
    rep = make_rep(bq, dims, maps, p, check=False)
    paths = tuple(tuple(slices[j][0][k] for k in basis[j]) for j in bq.vertices)
    return Projective(vertex, rep, paths)


def projectives(bq: BoundQuiver, p: int) -> list[Projective]:
    return [projective(bq, v, p) for v in bq.vertices]


def top_generators(bq: BoundQuiver, V: Representation) -> list[tuple[int, list[int]]]:
    """Elements (vertex index, vector) lifting a basis of V / rad V."""
    p = V.p
    gens = []
    for j in range(bq.n):
        d = V.dims[j]
        if not d:
            continue
        images = []
        for k, a in enumerate(bq.arrows):
            if bq.quiver.index(a.target) == j:
                cols = V.dims[bq.quiver.index(a.source)]
                images.extend(gf.transpose([list(r) for r in V.maps[k]], cols))
        _, _, piv = gf.rref(images, p, d)
        for c in range(d):
            if c not in piv:
                vec = [0] * d
                vec[c] = 1
                gens.append((j, vec))
    return gens


@dataclass
class Syzygy:
    """0 -> omega -> cover -> V -> 0 with cover = sum of P_{top[k]}."""

    top: list[int]
    cover: Representation
    omega: Representation


def syzygy(bq: BoundQuiver, V: Representation, projs: Sequence[Projective] | None = None) -> Syzygy:
    p = V.p
    projs = projs or projectives(bq, p)
    gens = top_generators(bq, V)
    top = [j for j, _ in gens]
    cover = direct_sum(bq, [projs[j].rep for j in top], p) if top else zero_rep(bq, p)
    # epimorphism cover -> V, vertex by vertex: basis path pi of generator g maps to V_pi(x_g)
    kernels = []
    for k in range(bq.n):
        cols = []
        for j, x in gens:
            for path in projs[j].basis_paths[k]:
                pm = path_matrix(bq, V, path)
                cols.append(gf.matvec(pm, x, p))
        mat = gf.transpose(cols, V.dims[k]) if cols else []
        if cols and gf.rank(mat, p, len(cols)) != V.dims[k]:
            raise RuntimeError("projective cover is not surjective")
        if not cols and V.dims[k]:
            raise RuntimeError("projective cover is not surjective")
        kernels.append(gf.kernel_with_free(mat, p, len(cols)))
    omega_dims = [len(b) for b, _ in kernels]
    maps = []
    for idx, a in enumerate(bq.arrows):
        s, t = bq.quiver.index(a.source), bq.quiver.index(a.target)
        big = [list(r) for r in cover.maps[idx]]
        tb, tfree = kernels[t]
        m = gf.zeros(omega_dims[t], omega_dims[s])
        for col, vec in enumerate(kernels[s][0]):
            image = gf.matvec(big, vec, p)
            for row, f in enumerate(tfree):
                m[row][col] = image[f]
        maps.append(m)
    omega = make_rep(bq, omega_dims, maps, p, check=False)
    return Syzygy(top, cover, omega)


@dataclass
class ProjResolution:
    """Minimal projective resolution: ``terms[k]`` lists the vertices of P_k."""

    terms: list[list[int]]
    syzygies: list[Representation]
    cover_dims: list[int]

    @property
    def length(self) -> int:
        return len(self.terms) - 1 if self.terms else 0

    def exact(self) -> bool:
        """dim P_k = dim Omega^k + dim Omega^{k+1} at every stage (rank count)."""
        return all(
            self.cover_dims[k] == self.syzygies[k].total + self.syzygies[k + 1].total
            for k in range(len(self.terms))
        )


def resolution(bq: BoundQuiver, V: Representation, cap: int = RESOLUTION_CAP,
               projs: Sequence[Projective] | None = None) -> ProjResolution:
    projs = projs or projectives(bq, V.p)
    terms, syz, pdims = [], [V], []
    current = V
    while current.total:
        if len(terms) > cap:
            raise ResolutionTooLong(f"projective resolution longer than {cap}")
        step = syzygy(bq, current, projs)
        terms.append(step.top)
        pdims.append(step.cover.total)
        syz.append(step.omega)
        current = step.omega
    return ProjResolution(terms, syz, pdims)


def projective_dimension(bq: BoundQuiver, V: Representation, cap: int = RESOLUTION_CAP) -> int:
    return resolution(bq, V, cap).length


def ext_dim(bq: BoundQuiver, V: Representation, W: Representation, k: int,
            cap: int = RESOLUTION_CAP, projs: Sequence[Projective] | None = None) -> int:
    """dim Ext^k(V, W), classifying 0 -> W -> E -> V -> 0 for k = 1.

    Uses dimension shifting through syzygies of V:
    dim Ext^1(X, W) = dim Hom(Omega X, W) - dim Hom(P(X), W) + dim Hom(X, W).
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    if k == 0:
        return dim_hom(bq, V, W)
    if k > cap:
        raise ResolutionTooLong(f"Ext^{k} requested beyond cap {cap}")
    projs = projs or projectives(bq, V.p)
    X = V
    for _ in range(k - 1):
        X = syzygy(bq, X, projs).omega
        if not X.total:
            return 0
    step = syzygy(bq, X, projs)
    hom_cover = sum(W.dims[j] for j in step.top)
    return dim_hom(bq, step.omega, W) - hom_cover + dim_hom(bq, X, W)


def gldim(bq: BoundQuiver, p: int = 3, cap: int = RESOLUTION_CAP) -> int:
    projs = projectives(bq, p)
    return max((resolution(bq, simple(bq, v, p), cap, projs).length for v in bq.vertices), default=0)


def require_gldim_at_most_two(bq: BoundQuiver, p: int = 3) -> int:
    g = gldim(bq, p)
    if g > 2:
        raise GlobalDimensionTooLarge(f"global dimension {g} > 2")
    return g


@dataclass
class EulerReport:
    hom: int
    ext1: int
    ext2: int
    ext3: int
    form: int

    @property
    def passed(self) -> bool:
        return self.ext3 == 0 and self.hom - self.ext1 + self.ext2 == self.form


def euler_check(bq: BoundQuiver, V: Representation, W: Representation,
                projs: Sequence[Projective] | None = None) -> EulerReport:
    projs = projs or projectives(bq, V.p)
    T = unit_form_of(bq)
    return EulerReport(
        dim_hom(bq, V, W),
        ext_dim(bq, V, W, 1, projs=projs),
        ext_dim(bq, V, W, 2, projs=projs),
        ext_dim(bq, V, W, 3, projs=projs),
        bilinear(T, V.dims, W.dims),
    )


@dataclass
class RConsistency:
    r: dict[tuple[str, str], int]
    ext2: dict[tuple[str, str], int]

    @property
    def warnings(self) -> list[str]:
        return [
            f"r({i},{j}) = {self.r[(i, j)]} but dim Ext^2(S_{i}, S_{j}) = {self.ext2[(i, j)]}"
            for (i, j) in self.r if self.r[(i, j)] != self.ext2[(i, j)]
        ]


def r_consistency(bq: BoundQuiver, p: int = 3) -> RConsistency:
    projs = projectives(bq, p)
    simples = {v: simple(bq, v, p) for v in bq.vertices}
    ext2 = {
        (i, j): ext_dim(bq, simples[i], simples[j], 2, projs=projs)
        for i in bq.vertices for j in bq.vertices
    }
    return RConsistency(relation_counts(bq), ext2)


# ---------------------------------------------------------------------------
# Indecomposables
# ---------------------------------------------------------------------------


def iter_bound_reps(bq: BoundQuiver, dims: Sequence[int], p: int, cap: int = TUPLE_CAP):
    shapes = [(dims[bq.quiver.index(a.target)], dims[bq.quiver.index(a.source)]) for a in bq.arrows]
    entries = sum(r * c for r, c in shapes)
    if p ** entries > cap:
        raise CapExceeded(f"{p}^{entries} matrix tuples for dimension vector {tuple(dims)} exceed cap {cap}")
    for flat in itertools.product(range(p), repeat=entries):
        maps, pos = [], 0
        for r, c in shapes:
            maps.append(tuple(tuple(flat[pos + i * c:pos + (i + 1) * c]) for i in range(r)))
            pos += r * c
        rep = Representation(tuple(dims), tuple(maps), p)
        if is_bound(bq, rep):
            yield rep


def indecomposables_of_dim(bq: BoundQuiver, dims: Sequence[int], p: int,
                           cap: int = TUPLE_CAP, end_cap: int = END_CAP) -> list[Representation]:
    """One representative per iso class of indecomposables with the given dims."""
    found: list[Representation] = []
    for rep in iter_bound_reps(bq, dims, p, cap):
        if any(is_isomorphic(bq, rep, f, end_cap) for f in found):
            continue
        if is_indecomposable(bq, rep, end_cap):
            found.append(rep)
    return found


@dataclass
class IndecompTable:
    bq: BoundQuiver
    p: int
    reps: list[Representation]
    hom: list[list[int]]
    ext1: list[list[int]]
    roots: RootSet
    extra_dims: list[Vector] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.reps)

    @property
    def dims(self) -> list[Vector]:
        return [r.dims for r in self.reps]

    @cached_property
    def end_aut(self) -> list[tuple[int, int]]:
        return [end_aut_counts(self.bq, r) for r in self.reps]

    @cached_property
    def is_brick(self) -> list[bool]:
        return [self.hom[k][k] == 1 for k in range(len(self.reps))]

    def bijection_holds(self) -> bool:
        return sorted(self.dims) == sorted(self.roots.roots)

    def ordering_ok(self) -> bool:
        n = len(self.reps)
        return all(
            (k <= l or self.hom[k][l] == 0) and (k > l or self.ext1[k][l] == 0)
            for k in range(n) for l in range(n)
        )

    def index_of(self, rep: Representation) -> int:
        for k, r in enumerate(self.reps):
            if is_isomorphic(self.bq, r, rep):
                return k
        raise KeyError("not an indecomposable of the table")

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "quiver": self.bq.to_dict(),
            "indecomposables": [
                {"index": k, "dims": list(r.dims), "maps": r.to_dict()["maps"],
                 "end": self.end_aut[k][0], "aut": self.end_aut[k][1]}
                for k, r in enumerate(self.reps)
            ],
            "hom": self.hom,
            "ext1": self.ext1,
            "roots": [list(r) for r in self.roots],
            "root_bijection": self.bijection_holds(),
            "ordering_ok": self.ordering_ok(),
        }

    @classmethod
    def from_dict(cls, bq: BoundQuiver, data: dict, roots: RootSet) -> "IndecompTable":
        p = data["p"]
        reps = [make_rep(bq, e["dims"], e["maps"], p) for e in data["indecomposables"]]
        table = cls(bq, p, reps, data["hom"], data["ext1"], roots)
        table.__dict__["end_aut"] = [(e["end"], e["aut"]) for e in data["indecomposables"]]
        return table


def directed_order(hom: list[list[int]], ext1: list[list[int]], keys: Sequence) -> list[int]:
    """Order with Hom(V_k, V_l) = 0 for k > l and Ext^1(V_k, V_l) = 0 for k <= l.

    Nonzero Hom(a, b) puts a before b; nonzero Ext^1(a, b) puts b before a.
    Ties are broken by ``keys``.
    """
    n = len(hom)
    before = {k: set() for k in range(n)}
    for a in range(n):
        if ext1[a][a]:
            raise DirectednessFailure(f"Ext^1 of indecomposable {a} with itself is nonzero")
        for b in range(n):
            if a == b:
                continue
            if hom[a][b]:
                before[b].add(a)
            if ext1[a][b]:
                before[a].add(b)
    order: list[int] = []
    remaining = set(range(n))
    while remaining:
        ready = [k for k in remaining if before[k] <= set(order)]
        if not ready:
            raise DirectednessFailure("Hom/Ext^1 relations contain a cycle")
        k = min(ready, key=lambda x: keys[x])
        order.append(k)
        remaining.remove(k)
    return order


def enumerate_indecomposables(bq: BoundQuiver, p: int, roots: RootSet | None = None,
                              diagnostic: bool = False, dim_cap: int = DIM_CAP,
                              total_cap: int = TOTAL_DIM_CAP, tuple_cap: int = TUPLE_CAP,
                              strict: bool = True) -> IndecompTable:
    """Indecomposables whose dimension vectors are positive roots of T_Q
    (every vector within the caps when ``diagnostic``), in directed order.

    With ``strict`` a failed root bijection raises for p != 2.
    """
    roots = roots or positive_roots(unit_form_of(bq))
    candidates = list(roots)
    if diagnostic:
        box = itertools.product(range(dim_cap + 1), repeat=bq.n)
        candidates = sorted(
            (v for v in box if 0 < sum(v) <= total_cap),
            key=lambda v: (sum(v), tuple(-x for x in v)),
        )
    reps: list[Representation] = []
    for dims in candidates:
        reps.extend(indecomposables_of_dim(bq, dims, p, tuple_cap))
    projs = projectives(bq, p)
    hom = [[dim_hom(bq, a, b) for b in reps] for a in reps]
    ext1 = [[ext_dim(bq, a, b, 1, projs=projs) for b in reps] for a in reps]
    keys = [(sum(r.dims), tuple(-x for x in r.dims)) for r in reps]
    order = directed_order(hom, ext1, keys)
    reps = [reps[k] for k in order]
    hom = [[hom[a][b] for b in order] for a in order]
    ext1 = [[ext1[a][b] for b in order] for a in order]
    table = IndecompTable(bq, p, reps, hom, ext1, roots)
    table.extra_dims = sorted({r.dims for r in reps} - set(roots.roots))
    if strict and p != 2 and not table.bijection_holds():
        raise RootBijectionFailure(
            f"indecomposable dimension vectors {sorted(table.dims)} differ from the roots {list(roots)}")
    return table


def decompose(bq: BoundQuiver, table: IndecompTable, M: Representation) -> tuple[int, ...]:
    """Multiplicity of each table indecomposable in M, from Hom(V_k, M) dimensions."""
    n = len(table.reps)
    cand = [k for k in range(n) if all(x <= y for x, y in zip(table.reps[k].dims, M.dims))]
    h = {k: dim_hom(bq, table.reps[k], M) for k in cand}
    mult = [0] * n
    for k in reversed(cand):
        rest = h[k] - sum(mult[l] * table.hom[k][l] for l in cand if l > k)
        m, r = divmod(rest, table.hom[k][k])
        if r or m < 0:
            raise InconsistentDecomposition(f"no integral solution at indecomposable {k}")
        mult[k] = m
    total = tuple(sum(mult[k] * table.reps[k].dims[i] for k in range(n)) for i in range(bq.n))
    if total != M.dims:
        raise InconsistentDecomposition(f"summands have total dimension {total}, expected {M.dims}")
    return tuple(mult)
