"""Quivers, paths, relations and presentations.

Paths are stored in traversal order: ``Path(src, tgt, (a, b))`` means "do a,
then b".  In the algebra the product ``x * y`` applies ``y`` first, so the
word of ``x * y`` is ``word(y) + word(x)``.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field as dc_field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .errors import (GradingRankMismatch, MalformedInput, NonAdmissibleRelation,
                     NonParallelRelation, UnknownVertex)
from .linalg import QQ

Degree = Tuple[int, ...]


def natural_key(s: str):
    """Sort key treating digit runs as integers: d2 < d10."""
    return tuple((0, int(t), "") if t.isdigit() else (1, 0, t) for t in re.findall(r"\d+|\D+", s))


def add_deg(a: Degree, b: Degree) -> Degree:
    return tuple(x + y for x, y in zip(a, b))


@dataclass(frozen=True)
class Arrow:
    id: str
    source: str
    target: str
    degree: Degree = (0,)
    label: Optional[str] = None


@dataclass(frozen=True)
class Path:
    source: str
    target: str
    arrows: Tuple[str, ...] = ()

    @property
    def is_trivial(self) -> bool:
        return not self.arrows

    def __len__(self):
        return len(self.arrows)

    def __str__(self):
        if not self.arrows:
            return f"e_{self.source}"
        return ".".join(reversed(self.arrows))


def trivial(v: str) -> Path:
    return Path(v, v, ())


def compose_paths(p: Path, q: Path) -> Optional[Path]:
    """``p ∘ q``: traverse q, then p.  ``None`` if q does not end where p starts."""
    if q.target != p.source:
        return None
    return Path(q.source, p.target, q.arrows + p.arrows)


class Quiver:
    def __init__(self, vertices: Sequence[str], arrows: Iterable[Arrow],
                 labels: Optional[Dict[str, str]] = None):
        self.vertices: Tuple[str, ...] = tuple(vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise MalformedInput("duplicate vertex identifier")
        self.arrows: Tuple[Arrow, ...] = tuple(arrows)
        self.labels = dict(labels or {})
        vs = set(self.vertices)
        self._by_id: Dict[str, Arrow] = {}
        for a in self.arrows:
            if a.id in self._by_id:
                raise MalformedInput(f"duplicate arrow identifier {a.id!r}")
            for end in (a.source, a.target):
                if end not in vs:
                    raise UnknownVertex(f"arrow {a.id!r} uses undeclared vertex {end!r}")
            self._by_id[a.id] = a

    def arrow(self, aid: str) -> Arrow:
        try:
            return self._by_id[aid]
        except KeyError:
            raise MalformedInput(f"unknown arrow {aid!r}") from None

    def has_arrow(self, aid: str) -> bool:
        return aid in self._by_id

    def path(self, arrow_ids: Sequence[str], source: Optional[str] = None) -> Path:
        """Build a path from traversal-ordered arrow ids, checking composability."""
        if not arrow_ids:
            if source is None:
                raise MalformedInput("empty path needs a vertex")
            if source not in self.vertices:
                raise UnknownVertex(source)
            return trivial(source)
        arrs = [self.arrow(a) for a in arrow_ids]
        for x, y in zip(arrs, arrs[1:]):
            if x.target != y.source:
                raise MalformedInput(f"arrows {x.id} and {y.id} are not composable")
        return Path(arrs[0].source, arrs[-1].target, tuple(arrow_ids))

    def out_arrows(self, v: str) -> List[Arrow]:
        return [a for a in self.arrows if a.source == v]

    def in_arrows(self, v: str) -> List[Arrow]:
        return [a for a in self.arrows if a.target == v]

    def is_connected(self) -> bool:
        if not self.vertices:
            return True
        adj = {v: set() for v in self.vertices}
        for a in self.arrows:
            adj[a.source].add(a.target)
            adj[a.target].add(a.source)
        seen = {self.vertices[0]}
        stack = [self.vertices[0]]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == len(self.vertices)

    def is_acyclic(self) -> bool:
        indeg = {v: 0 for v in self.vertices}
        for a in self.arrows:
            indeg[a.target] += 1
        ready = [v for v, d in indeg.items() if d == 0]
        done = 0
        while ready:
            v = ready.pop()
            done += 1
            for a in self.out_arrows(v):
                indeg[a.target] -= 1
                if indeg[a.target] == 0:
                    ready.append(a.target)
        return done == len(self.vertices)

    def __repr__(self):
        return f"Quiver({len(self.vertices)} vertices, {len(self.arrows)} arrows)"


@dataclass
class Relation:
    terms: List[Tuple[object, Path]] = dc_field(default_factory=list)

    def is_zero(self) -> bool:
        return not self.terms


class Presentation:
    """Quiver + Z^k grading + relations.

    ``projection`` maps Z^k degrees to Z; it defaults to the last coordinate.
    """

    def __init__(self, quiver: Quiver, relations: Iterable[Relation] = (), grading_rank: int = 1,
                 projection: Optional[Degree] = None, name: str = "",
                 potential=None, cut=None):
        self.quiver = quiver
        self.grading_rank = grading_rank
        self.name = name
        self.potential = potential
        self.cut = cut
        if grading_rank < 1:
            raise GradingRankMismatch("grading rank must be at least 1")
        for a in quiver.arrows:
            if len(a.degree) != grading_rank:
                raise GradingRankMismatch(
                    f"arrow {a.id!r} has degree of length {len(a.degree)}, expected {grading_rank}")
        if projection is None:
            projection = tuple([0] * (grading_rank - 1) + [1])
        if len(projection) != grading_rank:
            raise GradingRankMismatch("projection length differs from grading rank")
        self.projection = tuple(projection)
        rels = []
        for rel in relations:
            terms = [(QQ(c), p) for c, p in rel.terms if c]
            self._check_relation(terms)
            rels.append(Relation(terms))
        self.relations = rels
        self.homogeneous = all(len({self.degree(p) for _, p in r.terms}) <= 1 for r in rels)

    def _check_relation(self, terms):
        ends = {(p.source, p.target) for _, p in terms}
        if len(ends) > 1:
            raise NonParallelRelation(f"relation terms are not parallel: {sorted(ends)}")
        for _, p in terms:
            for aid in p.arrows:
                self.quiver.arrow(aid)

    def check_admissible(self):
        for r in self.relations:
            for _, p in r.terms:
                if len(p) < 2:
                    raise NonAdmissibleRelation(f"relation term {p} has length {len(p)} < 2")

    def degree(self, p: Path) -> Degree:
        d = tuple([0] * self.grading_rank)
        for aid in p.arrows:
            d = add_deg(d, self.quiver.arrow(aid).degree)
        return d

    def project(self, deg: Degree) -> int:
        return sum(x * y for x, y in zip(deg, self.projection))

    # -- JSON -----------------------------------------------------------------

    def to_json(self) -> dict:
        q = self.quiver

        def enc_path(p: Path):
            if p.is_trivial:
                return {"vertex": p.source}
            return list(p.arrows)

        out = {
            "vertices": list(q.vertices),
            "arrows": [{"id": a.id, "from": a.source, "to": a.target, "degree": list(a.degree)}
                       for a in q.arrows],
            "grading_rank": self.grading_rank,
            "relations": [[{"coeff": QQ.fmt(c), "path": enc_path(p)} for c, p in r.terms]
                          for r in self.relations],
        }
        if self.projection != tuple([0] * (self.grading_rank - 1) + [1]):
            out["projection"] = list(self.projection)
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2) + "\n"

    @classmethod
    def from_json(cls, data: dict, name: str = "") -> "Presentation":
        try:
            vertices = [str(v) for v in data["vertices"]]
            rank = int(data.get("grading_rank", 1))
            arrows = []
            for i, a in enumerate(data["arrows"]):
                try:
                    deg = tuple(int(x) for x in a.get("degree", [0] * rank))
                    arrows.append(Arrow(str(a["id"]), str(a["from"]), str(a["to"]), deg))
                except KeyError as exc:
                    raise MalformedInput(f"arrows[{i}]: missing field {exc}") from None
                except (TypeError, ValueError, AttributeError):
                    raise MalformedInput(f"arrows[{i}].degree: expected a list of integers") from None
            q = Quiver(vertices, arrows)
            rels = []
            for i, rel in enumerate(data.get("relations", [])):
                terms = []
                for j, t in enumerate(rel):
                    where = f"relations[{i}][{j}]"
                    if "coeff" not in t or "path" not in t:
                        raise MalformedInput(f"{where}: needs 'coeff' and 'path'")
                    try:
                        c = QQ(str(t["coeff"]))
                    except MalformedInput as exc:
                        raise MalformedInput(f"{where}.coeff: {exc}") from None
                    pth = t["path"]
                    if isinstance(pth, dict):
                        p = q.path([], source=str(pth.get("vertex")))
                    else:
                        try:
                            p = q.path([str(x) for x in pth])
                        except MalformedInput as exc:
                            raise type(exc)(f"{where}: {exc}") from None
                    terms.append((c, p))
                rels.append(Relation(terms))
            proj = data.get("projection")
            return cls(q, rels, rank, tuple(proj) if proj else None, name)
        except (TypeError, ValueError, AttributeError) as exc:
            raise MalformedInput(f"malformed presentation: {exc}") from exc
        except KeyError as exc:
            raise MalformedInput(f"presentation is missing field {exc}") from None

    @classmethod
    def loads(cls, text: str, name: str = "") -> "Presentation":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise MalformedInput(f"line {exc.lineno}: {exc.msg}") from None
        if not isinstance(data, dict):
            raise MalformedInput("presentation must be a JSON object")
        return cls.from_json(data, name)

    def __repr__(self):
        return (f"Presentation({self.name or 'anonymous'}: {len(self.quiver.vertices)} vertices, "
                f"{len(self.quiver.arrows)} arrows, {len(self.relations)} relations)")
