"""Bound quivers: parsing, validation and path combinatorics.

Paths are stored in application order: ``("a", "b")`` means apply ``a`` first,
then ``b`` (the composite usually written ``ba``).
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence


class QuiverError(ValueError):
    """Base class for invalid quiver descriptions."""


class LoopFound(QuiverError):
    pass


class MultipleArrow(QuiverError):
    pass


class OrientedCycle(QuiverError):
    pass


class BadRelation(QuiverError):
    pass


class UnknownVertex(QuiverError):
    pass


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str


@dataclass(frozen=True)
class Path:
    source: str
    target: str
    arrows: tuple[str, ...] = ()

    def __len__(self) -> int:
        return len(self.arrows)


@dataclass(frozen=True)
class Relation:
    terms: tuple[tuple[int, Path], ...]
    source: str
    target: str


@dataclass(frozen=True)
class Quiver:
    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...]

    def index(self, vertex: str) -> int:
        return self.vertices.index(vertex)

    def arrow(self, name: str) -> Arrow:
        for a in self.arrows:
            if a.name == name:
                return a
        raise KeyError(name)

    def out_arrows(self, vertex: str) -> list[Arrow]:
        return [a for a in self.arrows if a.source == vertex]

    def has_arrow(self, i: str, j: str) -> bool:
        return any(a.source == i and a.target == j for a in self.arrows)

    def topological_order(self) -> list[str]:
        indeg = {v: 0 for v in self.vertices}
        for a in self.arrows:
            indeg[a.target] += 1
        ready = [v for v in self.vertices if indeg[v] == 0]
        order = []
        while ready:
            v = ready.pop(0)
            order.append(v)
            for a in self.out_arrows(v):
                indeg[a.target] -= 1
                if indeg[a.target] == 0:
                    ready.append(a.target)
        if len(order) != len(self.vertices):
            raise OrientedCycle("arrows contain an oriented cycle")
        return order


@dataclass(frozen=True)
class BoundQuiver:
    quiver: Quiver
    relations: tuple[Relation, ...] = ()

    @property
    def vertices(self) -> tuple[str, ...]:
        return self.quiver.vertices

    @property
    def arrows(self) -> tuple[Arrow, ...]:
        return self.quiver.arrows

    @property
    def n(self) -> int:
        return len(self.quiver.vertices)

    def simple_vector(self, vertex: str) -> tuple[int, ...]:
        k = self.quiver.index(vertex)
        return tuple(int(j == k) for j in range(self.n))

    def to_dict(self) -> dict:
        return {
            "vertices": list(self.quiver.vertices),
            "arrows": [[a.name, a.source, a.target] for a in self.quiver.arrows],
            "relations": [
                [[c, list(p.arrows)] for c, p in rel.terms] for rel in self.relations
            ],
        }

    def to_text(self) -> str:
        lines = [f"vertex {v}" for v in self.quiver.vertices]
        lines += [f"arrow {a.name} {a.source} {a.target}" for a in self.quiver.arrows]
        for rel in self.relations:
            parts = [f"{c}*{','.join(p.arrows)}" for c, p in rel.terms]
            lines.append("relation " + " + ".join(parts))
        return "\n".join(lines) + "\n"

    def canonical_hash(self) -> str:
        blob = json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()[:16]


def make_path(quiver: Quiver, arrows: Sequence[str]) -> Path:
    if not arrows:
        raise BadRelation("empty path")
    try:
        objs = [quiver.arrow(name) for name in arrows]
    except KeyError as exc:
        raise BadRelation(f"unknown arrow {exc.args[0]!r}") from None
    for a, b in zip(objs, objs[1:]):
        if a.target != b.source:
            raise BadRelation(f"arrows {a.name} and {b.name} do not compose")
    return Path(objs[0].source, objs[-1].target, tuple(arrows))


def validate(spec: dict) -> BoundQuiver:
    """Build a BoundQuiver from a raw description.

    ``spec`` has keys ``vertices`` (ids), ``arrows`` (triples name, source,
    target) and optionally ``relations`` (each a list of ``(coeff, [arrows])``).
    """
    vertices = tuple(str(v) for v in spec.get("vertices", ()))
    if len(set(vertices)) != len(vertices):
        raise QuiverError("duplicate vertex id")
    arrows = []
    seen_pairs = set()
    names = set()
    for name, src, tgt in spec.get("arrows", ()):
        name, src, tgt = str(name), str(src), str(tgt)
        for v in (src, tgt):
            if v not in vertices:
                raise UnknownVertex(f"arrow {name} uses unknown vertex {v!r}")
        if src == tgt:
            raise LoopFound(f"arrow {name} is a loop at {src}")
        if (src, tgt) in seen_pairs:
            raise MultipleArrow(f"more than one arrow {src}->{tgt}")
        if name in names:
            raise QuiverError(f"duplicate arrow id {name}")
        seen_pairs.add((src, tgt))
        names.add(name)
        arrows.append(Arrow(name, src, tgt))
    quiver = Quiver(vertices, tuple(arrows))
    quiver.topological_order()

    relations = []
    for raw in spec.get("relations", ()):
        terms = []
        for coeff, path_arrows in raw:
            coeff = int(coeff)
            path = make_path(quiver, [str(a) for a in path_arrows])
            if len(path) < 2:
                raise BadRelation("relation paths must have length >= 2")
            terms.append((coeff, path))
        if not terms or all(c == 0 for c, _ in terms):
            raise BadRelation("relation has no nonzero coefficient")
        ends = {(p.source, p.target) for _, p in terms}
        if len(ends) != 1:
            raise BadRelation("relation mixes endpoints")
        (src, tgt), = ends
        relations.append(Relation(tuple(terms), src, tgt))
    return BoundQuiver(quiver, tuple(relations))


def parse_text(text: str) -> BoundQuiver:
    """Parse the line-oriented quiver format into a validated BoundQuiver."""
    spec: dict = {"vertices": [], "arrows": [], "relations": []}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        keyword, _, rest = line.partition(" ")
        fields = rest.split()
        if keyword == "vertex" and len(fields) == 1:
            spec["vertices"].append(fields[0])
        elif keyword == "arrow" and len(fields) == 3:
            spec["arrows"].append(tuple(fields))
        elif keyword == "relation" and fields:
            spec["relations"].append(_parse_relation(rest, lineno))
        else:
            raise QuiverError(f"line {lineno}: cannot parse {raw!r}")
    return validate(spec)


def _parse_relation(text: str, lineno: int) -> list:
    terms = []
    for chunk in text.replace(" ", "").replace("-", "+-").split("+"):
        if not chunk:
            continue
        coeff, star, arrows = chunk.partition("*")
        if not star:
            coeff, arrows = ("-1", chunk[1:]) if chunk.startswith("-") else ("1", chunk)
        if coeff in ("", "+"):
            coeff = "1"
        elif coeff == "-":
            coeff = "-1"
        try:
            value = Fraction(coeff)
        except ValueError:
            raise BadRelation(f"line {lineno}: bad coefficient {coeff!r}") from None
        if value.denominator != 1:
            raise BadRelation(f"line {lineno}: coefficients must be integers")
        terms.append((int(value), arrows.split(",")))
    return terms


def load(path) -> BoundQuiver:
    """Read a quiver file: JSON (same shape as ``to_dict``) or the line format."""
    with open(path) as fh:
        text = fh.read()
    if text.lstrip().startswith("{"):
        return validate(json.loads(text))
    return parse_text(text)


def enumerate_paths(quiver: Quiver, i: str, j: str) -> list[Path]:
    """All paths from ``i`` to ``j``; includes the trivial path when i == j."""
    for v in (i, j):
        if v not in quiver.vertices:
            raise UnknownVertex(v)
    found: list[Path] = []

    def walk(v: str, trail: tuple[str, ...]) -> None:
        if v == j:
            found.append(Path(i, j, trail))
        for a in quiver.out_arrows(v):
            walk(a.target, trail + (a.name,))

    walk(i, ())
    return found


def paths_from(quiver: Quiver, i: str) -> list[Path]:
    out = []
    for j in quiver.vertices:
        out.extend(enumerate_paths(quiver, i, j))
    return out


def relation_counts(bq: BoundQuiver) -> dict[tuple[str, str], int]:
    """r(i, j): number of relations from i to j, for every ordered pair."""
    counts = {(i, j): 0 for i in bq.vertices for j in bq.vertices}
    for rel in bq.relations:
        counts[(rel.source, rel.target)] += 1
    return counts


def chain(n: int, relations: Iterable[Sequence[str]] = ()) -> BoundQuiver:
    """Linearly oriented A_n: 1 -> 2 -> ... -> n with arrows a1..a(n-1)."""
    return validate({
        "vertices": [str(k) for k in range(1, n + 1)],
        "arrows": [(f"a{k}", str(k), str(k + 1)) for k in range(1, n)],
        "relations": [[(1, list(r))] for r in relations],
    })
