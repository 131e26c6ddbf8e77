"""Brute-force reference computations that share no code with the library
beyond the plain data types."""

import itertools
import math

import sympy
from sympy.polys.matrices import DomainMatrix


def rank_mod_p(rows, ncols, p):
    if not rows:
        return 0
    dm = DomainMatrix([[sympy.GF(p)(x) for x in r] for r in rows], (len(rows), ncols), sympy.GF(p))
    return dm.rank()


def all_matrices(r, c, p):
    for flat in itertools.product(range(p), repeat=r * c):
        yield [list(flat[k * c:(k + 1) * c]) for k in range(r)]


def mul(a, b, p, r, k, c):
    return [[sum(a[i][t] * b[t][j] for t in range(k)) % p for j in range(c)] for i in range(r)]


def morphisms(bq, V, W):
    """Every tuple (f_i: V_i -> W_i) commuting with all arrows."""
    idx = bq.quiver.index
    spaces = [list(all_matrices(W.dims[i], V.dims[i], V.p)) for i in range(bq.n)]
    for f in itertools.product(*spaces):
        ok = True
        for k, a in enumerate(bq.arrows):
            i, j = idx(a.source), idx(a.target)
            left = mul(W.maps[k], f[i], V.p, W.dims[j], W.dims[i], V.dims[i])
            right = mul(f[j], V.maps[k], V.p, W.dims[j], V.dims[j], V.dims[i])
            if left != right:
                ok = False
                break
        if ok:
            yield f


def hom_count(bq, V, W):
    return sum(1 for _ in morphisms(bq, V, W))


def invertible(m, p):
    n = len(m)
    if n == 0:
        return True
    return rank_mod_p(m, n, p) == n


def isomorphic(bq, V, W):
    if V.dims != W.dims:
        return False
    return any(all(invertible(fi, V.p) for fi in f) for f in morphisms(bq, V, W))


def aut_count(bq, V):
    return sum(1 for f in morphisms(bq, V, V) if all(invertible(fi, V.p) for fi in f))


def subspaces(n, p):
    """All subspaces of F_p^n as frozensets of vectors."""
    seen = set()
    vectors = list(itertools.product(range(p), repeat=n))
    for k in range(n + 1):
        for gens in itertools.combinations(vectors, k):
            span = set()
            for coeffs in itertools.product(range(p), repeat=k):
                span.add(tuple(sum(c * g[t] for c, g in zip(coeffs, gens)) % p for t in range(n)))
            seen.add(frozenset(span))
    return seen


def gl_count(n, p):
    return sum(1 for m in all_matrices(n, n, p) if invertible(m, p))


def gaussian_count(n, k, p):
    return sum(1 for s in subspaces(n, p) if len(s) == p ** k)


def subrep_quotient_pairs(bq, R):
    """For every subrepresentation: its dims and (sub, quotient) as raw maps.

    Subspaces are kept as vector sets; bases are chosen greedily.
    """
    p = R.p
    idx = bq.quiver.index
    spaces = [sorted(subspaces(R.dims[i], p), key=len) for i in range(bq.n)]

    def apply(k, v):
        return tuple(sum(R.maps[k][r][c] * v[c] for c in range(len(v))) % p
                     for r in range(len(R.maps[k])))

    for choice in itertools.product(*spaces):
        if all(all(apply(k, v) in choice[idx(a.target)] for v in choice[idx(a.source)])
               for k, a in enumerate(bq.arrows)):
            yield choice


def basis_of(space, n, p):
    basis = []
    span = {tuple([0] * n)}
    for v in sorted(space):
        if v not in span:
            basis.append(v)
            span = {tuple((x + c * y) % p for x, y in zip(s, v)) for s in span for c in range(p)}
    return basis


def hall_count(bq, R, M, N):
    """#{X subrep of R : X ~ N, R/X ~ M} by exhaustive search."""
    from hallq.repmod import make_rep

    p = R.p
    idx = bq.quiver.index
    total = 0
    for choice in subrep_quotient_pairs(bq, R):
        dims = [round(math.log(len(s), p)) for s in choice]
        if tuple(dims) != N.dims:
            continue
        bases = [basis_of(s, R.dims[i], p) for i, s in enumerate(choice)]
        # complete each basis to one of the whole space
        full = []
        for i, b in enumerate(bases):
            ext = list(b)
            span = set(choice[i])
            for e in itertools.product(range(p), repeat=R.dims[i]):
                if e not in span:
                    ext.append(e)
                    span = {tuple((x + c * y) % p for x, y in zip(s, e)) for s in span for c in range(p)}
            full.append(ext)
        sub_maps, quo_maps = [], []
        for k, a in enumerate(bq.arrows):
            i, j = idx(a.source), idx(a.target)
            # coordinates of R_a(basis vectors) in the adapted basis at j
            inv = sympy.Matrix(full[j]).T.inv_mod(p) if full[j] else None
            coords = []
            for v in full[i]:
                img = [sum(R.maps[k][r][c] * v[c] for c in range(len(v))) % p for r in range(R.dims[j])]
                coords.append([int(x) % p for x in (inv * sympy.Matrix(img))] if inv is not None else [])
            dj, di = len(bases[j]), len(bases[i])
            sub_maps.append([[coords[c][r] for c in range(di)] for r in range(dj)])
            quo_maps.append([[coords[c][r] for c in range(di, R.dims[i])] for r in range(dj, R.dims[j])])
        X = make_rep(bq, dims, sub_maps, p)
        Y = make_rep(bq, [R.dims[i] - dims[i] for i in range(bq.n)], quo_maps, p)
        if isomorphic(bq, X, N) and isomorphic(bq, Y, M):
            total += 1
    return total


def words_with_content(alpha):
    letters = [i for i, a in enumerate(alpha) for _ in range(a)]
    return sorted(set(itertools.permutations(letters)))


def free_graded_dim(alpha, relations, value=None):
    """dim of the degree-alpha slice of the free algebra modulo the two-sided
    ideal generated by ``relations`` (NCElements), by ranking every u*r*w.

    ``value`` None means generic v; otherwise coefficients are evaluated at it
    (a sympy number).
    """
    v = sympy.Symbol("v")
    K = sympy.QQ.frac_field(v) if value is None else sympy.QQ.algebraic_field(value) \
        if not value.is_Rational else sympy.QQ
    words = words_with_content(alpha)
    index = {w: k for k, w in enumerate(words)}
    rows = []
    for r in relations:
        (deg,) = {tuple(sum(1 for x in w if x == i) for i in range(len(alpha))) for w in r.terms}
        rest = tuple(a - d for a, d in zip(alpha, deg))
        if min(rest) < 0:
            continue
        for outer in words_with_content(rest):
            for cut in range(len(outer) + 1):
                u, w = outer[:cut], outer[cut:]
                row = [K.zero] * len(words)
                for word, coeff in r.terms.items():
                    expr = sum(sympy.Rational(c.numerator, c.denominator) * v ** k
                               for k, c in coeff.terms.items())
                    if value is not None:
                        expr = expr.subs(v, value)
                    row[index[u + word + w]] += K.from_sympy(sympy.expand(expr))
                rows.append(row)
    if not rows:
        return len(words)
    return len(words) - DomainMatrix(rows, (len(rows), len(words)), K).rank()


def multiset_count(alpha, parts):
    """Number of multisets from ``parts`` summing to alpha, by plain recursion."""
    parts = sorted(set(map(tuple, parts)))

    def go(rest, start):
        if not any(rest):
            return 1
        total = 0
        for k in range(start, len(parts)):
            nxt = tuple(a - b for a, b in zip(rest, parts[k]))
            if min(nxt) >= 0:
                total += go(nxt, k)
        return total

    return go(tuple(alpha), 0)
