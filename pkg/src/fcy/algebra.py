"""Finite-dimensional quotients kQ/I with explicit bases.

An element is a plain ``dict`` from basis index to scalar.  Products follow
composition order: ``alg.multiply(x, y)`` applies ``y`` first.
"""
from __future__ import annotations

from typing import Dict, Iterable, List, Optional, Tuple

from .errors import MalformedInput
from .groebner import RewritingSystem
from .linalg import QQ
from .quiver import Degree, Path, Presentation, natural_key, trivial

Element = Dict[int, object]


def canonical_arrow_order(pres: Presentation) -> List[str]:
    return sorted((a.id for a in pres.quiver.arrows), key=lambda s: (natural_key(s), s))


class FiniteDimAlgebra:
    def __init__(self, pres: Presentation, system: RewritingSystem, arrow_order: List[str], field):
        self.presentation = pres
        self.field = field
        self.quiver = pres.quiver
        self.vertices: Tuple[str, ...] = pres.quiver.vertices
        self.grading_rank = pres.grading_rank
        self.homogeneous = pres.homogeneous
        self._system = system
        self._arrows = arrow_order
        self._arrow_index = {a: i for i, a in enumerate(arrow_order)}
        q = pres.quiver
        zero_deg = tuple([0] * pres.grading_rank)

        self.basis: List[Path] = [trivial(v) for v in self.vertices]
        self.words: List[Tuple[int, ...]] = [() for _ in self.vertices]
        for w in system.normal_words():
            ids = tuple(arrow_order[i] for i in w)
            self.basis.append(q.path(ids))
            self.words.append(w)
        self.index: Dict[Path, int] = {p: i for i, p in enumerate(self.basis)}
        self._word_index = {w: i for i, w in enumerate(self.words) if w}
        self.idem: Dict[str, int] = {v: i for i, v in enumerate(self.vertices)}
        self.src: List[str] = [p.source for p in self.basis]
        self.tgt: List[str] = [p.target for p in self.basis]
        self.deg: List[Degree] = [pres.degree(p) if p.arrows else zero_deg for p in self.basis]
        self._mult: Dict[Tuple[int, int], Element] = {}
        self.arrow_basis: Dict[str, Optional[int]] = {
            a.id: self.index.get(Path(a.source, a.target, (a.id,))) for a in q.arrows}

    # -- basics -----------------------------------------------------------

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self):
        return len(self.basis)

    def __repr__(self):
        return f"FiniteDimAlgebra(dim={self.dim}, vertices={len(self.vertices)})"

    def length(self, i: int) -> int:
        return len(self.words[i])

    def project(self, deg: Degree) -> int:
        return self.presentation.project(deg)

    def peirce(self, source: str, target: str) -> List[int]:
        """Basis of e_target · A · e_source."""
        return [i for i in range(self.dim) if self.src[i] == source and self.tgt[i] == target]

    def starting_at(self, v: str) -> List[int]:
        """Basis of the left projective A e_v."""
        return [i for i in range(self.dim) if self.src[i] == v]

    def ending_at(self, v: str) -> List[int]:
        """Basis of e_v A."""
        return [i for i in range(self.dim) if self.tgt[i] == v]

    def unit(self) -> Element:
        return {self.idem[v]: self.field.one for v in self.vertices}

    def arrow_element(self, aid: str) -> Element:
        i = self.arrow_basis.get(aid)
        return {} if i is None else {i: self.field.one}

    def label(self, i: int) -> str:
        return str(self.basis[i])

    # -- multiplication ---------------------------------------------------

    def mult_basis(self, i: int, j: int) -> Element:
        """b_i · b_j (b_j applied first)."""
        if self.src[i] != self.tgt[j]:
            return {}
        key = (i, j)
        got = self._mult.get(key)
        if got is not None:
            return got
        if not self.words[j]:
            res = {i: self.field.one}
        elif not self.words[i]:
            res = {j: self.field.one}
        else:
            nf = self._system.normal_form_word(self.words[j] + self.words[i])
            res = {self._word_index[w]: c for w, c in nf.items()}
        self._mult[key] = res
        return res

    def multiply(self, x: Element, y: Element) -> Element:
        zero = self.field.zero
        out: Element = {}
        for i, a in x.items():
            if not a:
                continue
            for j, b in y.items():
                if not b or self.src[i] != self.tgt[j]:
                    continue
                ab = a * b
                for k, c in self.mult_basis(i, j).items():
                    v = out.get(k, zero) + ab * c
                    if v:
                        out[k] = v
                    else:
                        out.pop(k, None)
        return out

    def path_element(self, p: Path) -> Element:
        """Normal form of an arbitrary path of the quiver."""
        if p.is_trivial:
            return {self.idem[p.source]: self.field.one}
        w = tuple(self._arrow_index[a] for a in p.arrows)
        nf = self._system.normal_form_word(w)
        return {self._word_index[v]: c for v, c in nf.items()}

    def element(self, terms: Iterable[Tuple[object, Path]]) -> Element:
        out: Element = {}
        for c, p in terms:
            out = add(out, scale(self.path_element(p), self.field(c), self.field), self.field)
        return out

    def is_connected(self) -> bool:
        return self.quiver.is_connected()


def add(x: Element, y: Element, field=QQ) -> Element:
    out = dict(x)
    for k, v in y.items():
        s = out.get(k, field.zero) + v
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def sub(x: Element, y: Element, field=QQ) -> Element:
    return add(x, {k: -v for k, v in y.items()}, field)


def scale(x: Element, c, field=QQ) -> Element:
    if not c:
        return {}
    return {k: v * c for k, v in x.items() if v}


def quotient_basis(pres: Presentation, max_len: int = 64, field=QQ) -> FiniteDimAlgebra:
    """Gröbner-complete the relations and return the quotient with its normal-word basis."""
    if max_len < 1:
        raise MalformedInput("max_len must be positive")
    pres.check_admissible()
    order = canonical_arrow_order(pres)
    idx = {a: i for i, a in enumerate(order)}
    q = pres.quiver
    system = RewritingSystem(field, [q.arrow(a).source for a in order],
                             [q.arrow(a).target for a in order])
    polys = []
    for rel in pres.relations:
        poly: dict = {}
        for c, p in rel.terms:
            w = tuple(idx[a] for a in p.arrows)
            v = poly.get(w, field.zero) + field(c)
            if v:
                poly[w] = v
            else:
                poly.pop(w, None)
        if poly:
            polys.append(poly)
    system.complete(polys, max_len)
    return FiniteDimAlgebra(pres, system, order, field)


def is_connected(alg: FiniteDimAlgebra) -> bool:
    return alg.is_connected()
