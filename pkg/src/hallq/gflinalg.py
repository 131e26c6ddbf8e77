"""Exact linear algebra over prime fields F_p.

Matrices are plain row lists (``list[list[int]]``) with entries in ``[0, p)``.
Functions that may see a matrix with zero rows take the column count
explicitly.
"""

from __future__ import annotations

import itertools
from typing import Iterator, Sequence

Matrix = list[list[int]]

SUBSPACE_CAP = 2_000_000


class CapExceeded(RuntimeError):
    """An exhaustive enumeration would exceed its configured cap."""


class NotSquare(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, int(n ** 0.5) + 1))


def zeros(rows: int, cols: int) -> Matrix:
    return [[0] * cols for _ in range(rows)]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a: Matrix, b: Matrix, p: int, inner: int | None = None) -> Matrix:
    """a (r x k) times b (k x c). ``inner`` is only needed when k == 0."""
    k = len(b) if inner is None else inner
    cols = len(b[0]) if b else 0
    out = []
    for row in a:
        acc = [0] * cols
        for t in range(k):
            x = row[t]
            if x:
                brow = b[t]
                for c in range(cols):
                    acc[c] += x * brow[c]
        out.append([v % p for v in acc])
    return out


def matvec(a: Matrix, v: Sequence[int], p: int) -> list[int]:
    return [sum(x * y for x, y in zip(row, v)) % p for row in a]


def transpose(a: Matrix, cols: int) -> Matrix:
    return [[a[r][c] for r in range(len(a))] for c in range(cols)]


def rref(m: Matrix, p: int, cols: int | None = None) -> tuple[Matrix, int, list[int]]:
    """Reduced row-echelon form. Returns (nonzero rows, rank, pivot columns)."""
    ncols = cols if cols is not None else (len(m[0]) if m else 0)
    work = [[x % p for x in row] for row in m]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(work)) if work[i][c]), None)
        if pr is None:
            continue
        work[r], work[pr] = work[pr], work[r]
        inv = pow(work[r][c], p - 2, p)
        lead = [(x * inv) % p for x in work[r]]
        work[r] = lead
        for i in range(len(work)):
            if i != r and work[i][c]:
                f = work[i][c]
                work[i] = [(x - f * y) % p for x, y in zip(work[i], lead)]
        pivots.append(c)
        r += 1
        if r == len(work):
            break
    return work[:r], r, pivots


def rank(m: Matrix, p: int, cols: int | None = None) -> int:
    return rref(m, p, cols)[1]


def solve_kernel(m: Matrix, p: int, cols: int | None = None) -> Matrix:
    """Basis of {x : m x = 0}, of size cols - rank."""
    return kernel_with_free(m, p, cols)[0]


def kernel_with_free(m: Matrix, p: int, cols: int | None = None) -> tuple[Matrix, list[int]]:
    """Kernel basis plus its free columns: basis[k] is 1 at free[k], 0 at the other free columns."""
    ncols = cols if cols is not None else (len(m[0]) if m else 0)
    red, _, pivots = rref(m, p, ncols)
    pivset = set(pivots)
    basis, frees = [], []
    for free in range(ncols):
        if free in pivset:
            continue
        vec = [0] * ncols
        vec[free] = 1
        for row, pc in zip(red, pivots):
            vec[pc] = (-row[free]) % p
        basis.append(vec)
        frees.append(free)
    return basis, frees


def is_invertible(m: Matrix, p: int) -> bool:
    if any(len(row) != len(m) for row in m):
        raise NotSquare(f"{len(m)} rows, row lengths {sorted({len(r) for r in m})}")
    return rank(m, p, len(m)) == len(m)


def reduce_vector(vec: Sequence[int], basis_rref: Matrix, pivots: Sequence[int], p: int) -> list[int]:
    """Subtract the RREF rows so that all pivot coordinates of ``vec`` vanish."""
    out = list(vec)
    for row, pc in zip(basis_rref, pivots):
        f = out[pc]
        if f:
            out = [(x - f * y) % p for x, y in zip(out, row)]
    return out


def in_span(vec: Sequence[int], basis_rref: Matrix, pivots: Sequence[int], p: int) -> bool:
    return not any(reduce_vector(vec, basis_rref, pivots, p))


def gaussian_binomial(n: int, k: int, p: int) -> int:
    """Number of k-dimensional subspaces of F_p^n, by the product formula."""
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= p ** (n - i) - 1
        den *= p ** (i + 1) - 1
    return num // den


def gl_order(n: int, p: int) -> int:
    out = 1
    for i in range(n):
        out *= p ** n - p ** i
    return out


def iter_subspaces(n: int, k: int, p: int) -> Iterator[Matrix]:
    """Yield each k-dimensional subspace of F_p^n once, as its RREF basis."""
    for pivots in itertools.combinations(range(n), k):
        free_slots = [
            (r, c)
            for r, pc in enumerate(pivots)
            for c in range(pc + 1, n)
            if c not in pivots
        ]
        for values in itertools.product(range(p), repeat=len(free_slots)):
            rows = zeros(k, n)
            for r, pc in enumerate(pivots):
                rows[r][pc] = 1
            for (r, c), x in zip(free_slots, values):
                rows[r][c] = x
            yield rows


def enumerate_subspaces(n: int, k: int, p: int, cap: int = SUBSPACE_CAP) -> list[Matrix]:
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got k={k}, n={n}")
    if gaussian_binomial(n, k, p) > cap:
        raise CapExceeded(f"{gaussian_binomial(n, k, p)} subspaces of F_{p}^{n} exceed cap {cap}")
    return list(iter_subspaces(n, k, p))


def iter_vectors(n: int, p: int) -> Iterator[tuple[int, ...]]:
    return itertools.product(range(p), repeat=n)


def iter_matrices(rows: int, cols: int, p: int) -> Iterator[Matrix]:
    for flat in itertools.product(range(p), repeat=rows * cols):
        yield [list(flat[r * cols:(r + 1) * cols]) for r in range(rows)]
