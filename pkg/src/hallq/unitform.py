"""Integral unit forms, their bilinear forms, the nu twist, and positive roots."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Sequence

from .quiver import BoundQuiver, relation_counts

DEFAULT_ROOT_CAP = 6

Vector = tuple[int, ...]


class IndexMismatch(ValueError):
    pass


class CapTooSmall(RuntimeError):
    pass


@dataclass(frozen=True)
class UnitForm:
    """T(b) = sum b_i^2 + sum_{i != j} a_ij b_i b_j.

    ``coeffs[i][j]`` holds a_ij for i != j; the diagonal entries are ignored.
    """

    index: tuple[str, ...]
    coeffs: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return len(self.index)

    def a(self, i: int, j: int) -> int:
        return 0 if i == j else self.coeffs[i][j]

    def simple(self, i: int) -> Vector:
        return tuple(int(k == i) for k in range(self.n))

    def _check(self, *vectors: Sequence[int]) -> None:
        for v in vectors:
            if len(v) != self.n:
                raise IndexMismatch(f"vector of length {len(v)} for a form on {self.n} indices")

    def to_dict(self) -> dict:
        return {
            "index": list(self.index),
            "a": {f"{self.index[i]},{self.index[j]}": self.a(i, j)
                  for i in range(self.n) for j in range(self.n)
                  if i != j and self.a(i, j)},
        }

    def pretty(self) -> str:
        terms = [f"b{v}^2" for v in self.index]
        for i in range(self.n):
            for j in range(self.n):
                c = self.a(i, j)
                if i != j and c:
                    sign = "+" if c > 0 else "-"
                    mag = "" if abs(c) == 1 else str(abs(c))
                    terms.append(f"{sign} {mag}b{self.index[i]}b{self.index[j]}")
        return " + ".join(terms[: self.n]) + "".join(f" {t}" for t in terms[self.n:])


def unit_form_of(bq: BoundQuiver) -> UnitForm:
    """T_Q: a_ij = r(i, j) - (number of arrows i -> j)."""
    r = relation_counts(bq)
    verts = bq.vertices
    coeffs = tuple(
        tuple(
            0 if i == j else r[(i, j)] - int(bq.quiver.has_arrow(i, j))
            for j in verts
        )
        for i in verts
    )
    return UnitForm(verts, coeffs)


def from_coefficients(n: int, entries: dict[tuple[int, int], int], index=None) -> UnitForm:
    """Unit form on n indices from {(i, j): a_ij} with 0-based positions."""
    index = tuple(index) if index else tuple(str(k + 1) for k in range(n))
    rows = [[0] * n for _ in range(n)]
    for (i, j), c in entries.items():
        if i == j:
            raise ValueError("unit forms have fixed diagonal")
        rows[i][j] = c
    return UnitForm(index, tuple(tuple(r) for r in rows))


def evaluate(T: UnitForm, b: Sequence[int]) -> int:
    return bilinear(T, b, b)


def bilinear(T: UnitForm, b: Sequence[int], c: Sequence[int]) -> int:
    T._check(b, c)
    total = sum(x * y for x, y in zip(b, c))
    for i in range(T.n):
        if b[i]:
            row = T.coeffs[i]
            total += b[i] * sum(row[j] * c[j] for j in range(T.n) if j != i)
    return total


def _negative_part(T: UnitForm, b: Sequence[int], c: Sequence[int]) -> int:
    return sum(
        min(T.a(i, j), 0) * b[i] * c[j]
        for i in range(T.n) for j in range(T.n) if i != j
    )


def bilinear0(T: UnitForm, b: Sequence[int], c: Sequence[int]) -> int:
    """Bilinear form with every a_ij replaced by min(a_ij, 0)."""
    T._check(b, c)
    return sum(x * y for x, y in zip(b, c)) + _negative_part(T, b, c)


def nu(T: UnitForm, b: Sequence[int], c: Sequence[int]) -> int:
    T._check(b, c)
    if _negative_part(T, b, c) != 0:
        return 0
    return bilinear0(T, b, c)


def ad_exponent(T: UnitForm, b: Sequence[int], c: Sequence[int]) -> int:
    """Exponent of t in ad_x(y) = xy - t^e yx for deg x = b, deg y = c."""
    return (bilinear(T, b, c) - bilinear(T, c, b)
            + 2 * nu(T, c, b) - 2 * nu(T, b, c))


@dataclass(frozen=True)
class RootSet:
    roots: tuple[Vector, ...]
    cap: int

    def __contains__(self, v) -> bool:
        return tuple(v) in self._lookup

    def __iter__(self):
        return iter(self.roots)

    def __len__(self) -> int:
        return len(self.roots)

    @cached_property
    def _lookup(self) -> frozenset:
        return frozenset(self.roots)

    @property
    def max_height(self) -> int:
        return max((sum(r) for r in self.roots), default=0)


def _box(n: int, cap: int):
    for v in itertools.product(range(cap + 1), repeat=n):
        if any(v):
            yield v


def positive_roots(T: UnitForm, cap: int = DEFAULT_ROOT_CAP) -> RootSet:
    """All b >= 0, b != 0 with T(b) = 1 inside the box [0, cap]^n.

    Raises CapTooSmall if a root touches the box boundary, since completeness
    of the enumeration is then not certified.
    """
    if cap < 1:
        raise ValueError("cap must be >= 1")
    roots = [v for v in _box(T.n, cap) if evaluate(T, v) == 1]
    touching = [v for v in roots if cap in v]
    if touching:
        raise CapTooSmall(f"root {touching[0]} reaches the search cap {cap}")
    roots.sort(key=lambda v: (sum(v), tuple(-x for x in v)))
    return RootSet(tuple(roots), cap)


def is_weakly_positive(T: UnitForm, cap: int = DEFAULT_ROOT_CAP) -> bool:
    """True iff T(b) > 0 for every nonzero b in [0, cap]^n (box-bounded test)."""
    return all(evaluate(T, v) > 0 for v in _box(T.n, cap))


def kostant_partitions(alpha: Sequence[int], parts: Sequence[Vector]) -> int:
    """Number of multisets of ``parts`` (with repetition) summing to ``alpha``."""
    parts = [tuple(p) for p in parts]
    target = tuple(alpha)

    @lru_cache(maxsize=None)
    def count(rest: Vector, start: int) -> int:
        if not any(rest):
            return 1
        total = 0
        for k in range(start, len(parts)):
            p = parts[k]
            nxt = tuple(x - y for x, y in zip(rest, p))
            if min(nxt) >= 0:
                total += count(nxt, k)
        return total

    return count(target, 0)
