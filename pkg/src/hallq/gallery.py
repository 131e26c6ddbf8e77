"""The four worked examples: bound quivers and their published relation lists.

Each golden relation is matched against the generated ideal by slice
membership at generic v, and the quotient dimension in its degree is compared
with the quotient by the published relation set.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .presentation import (
    GradedQuotient,
    NCElement,
    Presentation,
    degrees_up_to,
    field_for,
    quotient,
    serre_element,
    twisted_commutator,
)
from .quiver import BoundQuiver, chain, validate


class GoldenMismatch(AssertionError):
    pass


RHOMBUS_ARROWS = [("a1", 1, 2), ("a2", 2, 4), ("b1", 1, 3), ("b2", 3, 4)]


def example_quiver(n: int, length: int = 4) -> BoundQuiver:
    if n == 1:
        return validate({
            "vertices": [1, 2, 3],
            "arrows": [("a", 1, 2), ("b", 2, 3)],
            "relations": [[(1, ["a", "b"])]],
        })
    if n == 2:
        if length < 3:
            raise ValueError("chain example needs at least 3 vertices")
        return chain(length, [[f"a{k}" for k in range(1, length)]])
    if n == 3:
        return validate({"vertices": [1, 2, 3, 4], "arrows": RHOMBUS_ARROWS,
                         "relations": [[(1, ["a1", "a2"]), (-1, ["b1", "b2"])]]})
    if n == 4:
        return validate({"vertices": [1, 2, 3, 4], "arrows": RHOMBUS_ARROWS,
                         "relations": [[(1, ["a1", "a2"])], [(1, ["b1", "b2"])]]})
    raise ValueError(f"no example {n}; choose 1..4")


def _e(n: int, i: int) -> NCElement:
    return NCElement.generator(n, i - 1)


def _tc(x: NCElement, y: NCElement, k: int) -> NCElement:
    return twisted_commutator(x, y, k)


def _label(name: str, x: NCElement) -> tuple[str, NCElement]:
    return name, x


def _standard(bq: BoundQuiver, skip: set) -> list[tuple[str, NCElement]]:
    """Quantum Serre relations along edges, plain commutators otherwise."""
    n = bq.n
    verts = bq.vertices
    edges = {frozenset((a.source, a.target)) for a in bq.arrows}
    out = []
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            if frozenset((verts[i], verts[j])) in edges:
                out.append(_label(f"serre({verts[i]},{verts[j]})", serre_element(n, i, j)))
            elif i < j and (i + 1, j + 1) not in skip:
                out.append(_label(f"[e{verts[i]},e{verts[j]}]", _tc(_e(n, i + 1), _e(n, j + 1), 0)))
    return out


def _nested_chain(n: int) -> NCElement:
    """[e_1,[e_2,...,[e_{n-1},e_n]_t...]_t] with the outer bracket untwisted."""
    x = _e(n, n)
    for i in range(n - 1, 1, -1):
        x = _tc(_e(n, i), x, 1)
    return _tc(_e(n, 1), x, 0)


def golden_relations(n: int, length: int = 4) -> tuple[list, list]:
    """(extra relations, full published relation set) as labelled elements."""
    bq = example_quiver(n, length)
    if n in (1, 2):
        m = bq.n
        extras = [
            _label(f"[e{m},e1]_t", _tc(_e(m, m), _e(m, 1), 1)),
            _label("[e1,[e2,...]_t]", _nested_chain(m)),
        ]
        return extras, _standard(bq, {(1, m)}) + extras
    e = lambda i: _e(4, i)  # noqa: E731
    if n == 3:
        extras = [
            _label("[e4,e1]_t", _tc(e(4), e(1), 1)),
            _label("[e1,[e2,e4]_t]", _tc(e(1), _tc(e(2), e(4), 1), 0)),
            _label("[e1,[e3,e4]_t]", _tc(e(1), _tc(e(3), e(4), 1), 0)),
        ]
    else:
        extras = [
            _label("[e1,[e2,e4]_t]_{t^-1}", _tc(e(1), _tc(e(2), e(4), 1), -1)),
            _label("[e1,[e3,e4]_t]_{t^-1}", _tc(e(1), _tc(e(3), e(4), 1), -1)),
            _label("[e4,e1]_{t^2}", _tc(e(4), e(1), 2)),
            _label("[e1,[e2,[e3,e4]_t]_t]", _tc(e(1), _tc(e(2), _tc(e(3), e(4), 1), 1), 0)),
        ]
    return extras, _standard(bq, {(1, 4)}) + extras


@dataclass
class GoldenMatch:
    name: str
    degree: tuple
    member: bool
    dim_generated: int
    dim_published: int

    @property
    def passed(self) -> bool:
        return self.member and self.dim_generated == self.dim_published


@dataclass
class GalleryReport:
    example: int
    matches: list[GoldenMatch] = field(default_factory=list)
    # alpha -> (generated, published) quotient dims for every small degree
    dims: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return bool(self.matches) and all(m.passed for m in self.matches)

    def to_dict(self) -> dict:
        return {
            "example": self.example,
            "passed": self.passed,
            "golden": [
                {"relation": m.name, "degree": list(m.degree), "in_ideal": m.member,
                 "dim_generated": m.dim_generated, "dim_published": m.dim_published,
                 "passed": m.passed}
                for m in self.matches
            ],
            "dimensions": [
                {"alpha": list(a), "generated": g, "published": p}
                for a, (g, p) in self.dims.items()
            ],
        }


def match_golden(P: Presentation, n: int, length: int = 4, max_total: int = 5) -> GalleryReport:
    extras, published = golden_relations(n, length)
    generated: GradedQuotient = quotient(P, "generic")
    listed = GradedQuotient(P.n, [x for _, x in published], field_for("generic"))
    report = GalleryReport(n)
    for name, x in extras:
        alpha = x.degree()
        report.matches.append(GoldenMatch(
            name, alpha, generated.contains(x), generated.dim(alpha), listed.dim(alpha)))
    for alpha in degrees_up_to(P.n, max_total):
        report.dims[alpha] = (generated.dim(alpha), listed.dim(alpha))
    return report


__all__ = [
    "GoldenMismatch",
    "GalleryReport",
    "GoldenMatch",
    "example_quiver",
    "golden_relations",
    "match_golden",
]
