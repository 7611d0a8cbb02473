"""Builders for the algebra families: Dynkin preprojectives, higher type A,
Jacobi algebras with cuts, the cobweb quiver and a few small examples."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .errors import (CutNotConsistent, CycleNotClosed, InvalidDynkin, InvalidParameters,
                     MalformedInput)
from .linalg import QQ
from .quiver import Arrow, Presentation, Quiver, Relation, natural_key


# -- Dynkin data ---------------------------------------------------------------

@dataclass(frozen=True)
class DynkinData:
    type: str
    n: int
    h: int
    R: int
    rho: Dict[str, str]

    @property
    def name(self) -> str:
        return f"{self.type}_{self.n}"

    def rho_is_identity(self) -> bool:
        return all(k == v for k, v in self.rho.items())


def dynkin_edges(type_: str, n: int) -> List[Tuple[int, int]]:
    type_ = type_.upper()
    if type_ == "A" and n >= 1:
        return [(i, i + 1) for i in range(1, n)]
    if type_ == "D" and n >= 4:
        return [(i, i + 1) for i in range(1, n - 2)] + [(n - 2, n - 1), (n - 2, n)]
    if type_ == "E" and n in (6, 7, 8):
        branch = {6: 3, 7: 4, 8: 5}[n]
        return [(i, i + 1) for i in range(1, n - 1)] + [(branch, n)]
    raise InvalidDynkin(f"{type_}_{n} is not a simply-laced Dynkin diagram")


def dynkin_data(type_: str, n: int) -> DynkinData:
    type_ = type_.upper()
    dynkin_edges(type_, n)  # validates
    if type_ == "A":
        h, R = n + 1, n * (n + 1) // 2
        rho = {i: n + 1 - i for i in range(1, n + 1)}
    elif type_ == "D":
        h, R = 2 * n - 2, n * (n - 1)
        rho = {i: i for i in range(1, n + 1)}
        if n % 2:
            rho[n - 1], rho[n] = n, n - 1
    else:
        h, R = {6: (12, 36), 7: (18, 63), 8: (30, 120)}[n]
        rho = {i: i for i in range(1, n + 1)}
        if n == 6:
            rho.update({1: 5, 5: 1, 2: 4, 4: 2})
    return DynkinData(type_, n, h, R, {str(k): str(v) for k, v in rho.items()})


def dynkin(type_: str, n: int, orientation: Optional[Dict[Tuple[int, int], bool]] = None):
    """Dynkin quiver and its data.

    ``orientation`` maps an edge ``(i, j)`` with i < j to True to reverse it;
    by default every edge points toward the higher label.
    """
    edges = dynkin_edges(type_, n)
    orientation = orientation or {}
    arrows = []
    for k, (i, j) in enumerate(edges, start=1):
        if orientation.get((i, j)):
            i, j = j, i
        arrows.append(Arrow(f"a{k}", str(i), str(j), (0,)))
    q = Quiver([str(i) for i in range(1, n + 1)], arrows)
    return q, dynkin_data(type_, n)


def star(aid: str) -> str:
    return aid + "*"


def double_quiver(q: Quiver, path_length: bool = False) -> Quiver:
    arrows = []
    for a in q.arrows:
        arrows.append(Arrow(a.id, a.source, a.target, (1,) if path_length else (0,)))
    for a in q.arrows:
        arrows.append(Arrow(star(a.id), a.target, a.source, (1,)))
    return Quiver(q.vertices, arrows, q.labels)


def classical_preprojective(q: Quiver, path_length: bool = False, name: str = "") -> Presentation:
    """Doubled quiver modulo Σ(a a* − a* a), split vertex by vertex."""
    if not q.is_acyclic():
        raise MalformedInput("classical preprojective construction needs an acyclic quiver")
    qq = double_quiver(q, path_length)
    rels = []
    for v in q.vertices:
        terms = []
        for a in q.arrows:
            if a.target == v:   # a a*: do a*, then a
                terms.append((Fraction(1), qq.path([star(a.id), a.id])))
            if a.source == v:   # a* a: do a, then a*
                terms.append((Fraction(-1), qq.path([a.id, star(a.id)])))
        if terms:
            rels.append(Relation(terms))
    return Presentation(qq, rels, 1, name=name or "preprojective")


def preprojective_dynkin(type_: str, n: int, path_length: bool = False):
    q, data = dynkin(type_, n)
    return classical_preprojective(q, path_length, name=f"dynkin:{data.type}:{n}"), data


# -- higher type A ---------------------------------------------------------------

def _vid(x: Sequence[int]) -> str:
    return ",".join(map(str, x))


def typeA_vertices(d: int, s: int) -> List[Tuple[int, ...]]:
    out = [x for x in itertools.product(range(s), repeat=d + 1) if sum(x) == s - 1]
    return sorted(out, reverse=True)


def typeA_shift(d: int, i: int) -> Tuple[int, ...]:
    """f_i for 1 ≤ i ≤ d+1."""
    f = [0] * (d + 1)
    if i <= d:
        f[i] += 1       # e_{i+1}
        f[i - 1] -= 1   # − e_i
    else:
        f[0] += 1
        f[d] -= 1
    return tuple(f)


def typeA_arrow_id(i: int, x: Sequence[int]) -> str:
    return f"a{i}@{_vid(x)}"


def higher_typeA(d: int, s: int) -> Presentation:
    if d < 1 or s < 2:
        raise InvalidParameters(f"need d >= 1 and s >= 2, got d={d}, s={s}")
    verts = typeA_vertices(d, s)
    vset = set(verts)
    shifts = {i: typeA_shift(d, i) for i in range(1, d + 2)}

    def plus(x, i):
        y = tuple(a + b for a, b in zip(x, shifts[i]))
        return y if y in vset else None

    arrows = []
    for x in verts:
        for i in range(1, d + 2):
            y = plus(x, i)
            if y is not None:
                deg = tuple(1 if k == i - 1 else 0 for k in range(d + 1))
                arrows.append(Arrow(typeA_arrow_id(i, x), _vid(x), _vid(y), deg))
    q = Quiver([_vid(x) for x in verts], arrows)
    rels = []
    for x in verts:
        for i in range(1, d + 2):
            y = plus(x, i)
            if y is None:
                continue
            for j in range(1, d + 2):
                if j == i:
                    continue
                z = plus(y, j)
                if z is None:
                    continue
                first = q.path([typeA_arrow_id(i, x), typeA_arrow_id(j, y)])
                w = plus(x, j)
                if w is None:
                    rels.append(Relation([(Fraction(1), first)]))
                elif i < j:
                    second = q.path([typeA_arrow_id(j, x), typeA_arrow_id(i, w)])
                    rels.append(Relation([(Fraction(1), first), (Fraction(-1), second)]))
    return Presentation(q, rels, d + 1, name=f"typeA:d={d}:s={s}")


def typeA_sigma(d: int, s: int) -> Dict[str, str]:
    """The vertex rotation (x_1,…,x_{d+1}) ↦ (x_{d+1}, x_1, …, x_d)."""
    return {_vid(x): _vid((x[-1],) + x[:-1]) for x in typeA_vertices(d, s)}


# -- potentials, cuts, Jacobi algebras ------------------------------------------

def _rotate_min(arrows: Tuple[str, ...]) -> Tuple[str, ...]:
    key = lambda t: [(natural_key(a), a) for a in t]
    rots = [arrows[i:] + arrows[:i] for i in range(len(arrows))]
    return min(rots, key=key)


class Potential:
    """A formal sum of cycles, each stored in its least rotation."""

    def __init__(self, quiver: Quiver, terms: Iterable[Tuple[object, Sequence[str]]] = ()):
        self.quiver = quiver
        acc: Dict[Tuple[str, ...], Fraction] = {}
        for c, arrows in terms:
            arrows = tuple(arrows)
            if not arrows:
                raise CycleNotClosed("empty cycle in potential")
            p = quiver.path(arrows)
            if p.source != p.target:
                raise CycleNotClosed(f"potential term {'/'.join(arrows)} is not a cycle")
            key = _rotate_min(arrows)
            acc[key] = acc.get(key, Fraction(0)) + QQ(c)
        self.terms: List[Tuple[Fraction, Tuple[str, ...]]] = sorted(
            ((c, k) for k, c in acc.items() if c), key=lambda t: [(natural_key(a), a) for a in t[1]])

    def __eq__(self, other):
        return isinstance(other, Potential) and self.terms == other.terms

    def __len__(self):
        return len(self.terms)

    def to_json(self) -> dict:
        return {"cycles": [{"coeff": QQ.fmt(c), "path": list(p)} for c, p in self.terms]}

    @classmethod
    def from_json(cls, quiver: Quiver, data: dict) -> "Potential":
        try:
            return cls(quiver, [(QQ(str(t["coeff"])), [str(a) for a in t["path"]])
                                for t in data["cycles"]])
        except (KeyError, TypeError) as exc:
            raise MalformedInput(f"malformed potential: {exc}") from None


def cyclic_derivative(w: Potential, aid: str) -> Relation:
    q = w.quiver
    a = q.arrow(aid)
    acc: Dict[Tuple[str, ...], Fraction] = {}
    for c, cyc in w.terms:
        for i, b in enumerate(cyc):
            if b == aid:
                rest = cyc[i + 1:] + cyc[:i]
                acc[rest] = acc.get(rest, Fraction(0)) + c
    terms = []
    for rest, c in sorted(acc.items(), key=lambda t: [(natural_key(x), x) for x in t[0]]):
        if c:
            terms.append((c, q.path(rest, source=a.target)))
    return Relation(terms)


def check_cut(w: Potential, cut: Iterable[str]):
    cut = set(cut)
    for a in cut:
        w.quiver.arrow(a)
    for c, cyc in w.terms:
        hits = sum(1 for a in cyc if a in cut)
        if hits != 1:
            raise CutNotConsistent(f"cycle {'/'.join(cyc)} meets the cut {hits} times")


def jacobi_presentation(q: Quiver, w: Potential, cut: Iterable[str], name: str = "jacobi") -> Presentation:
    cut = list(cut)
    check_cut(w, cut)
    cs = set(cut)
    graded = Quiver(q.vertices, [Arrow(a.id, a.source, a.target, (1,) if a.id in cs else (0,))
                                 for a in q.arrows], q.labels)
    w = Potential(graded, [(c, p) for c, p in w.terms])
    rels = [cyclic_derivative(w, a.id) for a in graded.arrows]
    return Presentation(graded, rels, 1, name=name, potential=w, cut=tuple(cut))


def cut_subalgebra(p: Presentation, cut: Optional[Iterable[str]] = None) -> Presentation:
    """Degree-zero part of a cut Jacobi presentation."""
    if p.potential is None:
        raise MalformedInput("cut_subalgebra needs a presentation built by jacobi_presentation")
    cut = set(p.cut if cut is None else cut)
    q = p.quiver
    sub = Quiver(q.vertices, [Arrow(a.id, a.source, a.target, (0,)) for a in q.arrows
                              if a.id not in cut], q.labels)
    rels = []
    for a in q.arrows:
        if a.id in cut:
            r = cyclic_derivative(p.potential, a.id)
            rels.append(Relation([(c, sub.path(path.arrows, source=path.source)) for c, path in r.terms]))
    return Presentation(sub, rels, 1, name=(p.name or "jacobi") + ":cut")


# -- the cobweb --------------------------------------------------------------------

def _aid(u: str, v: str) -> str:
    return f"{u}{v}"


def cobweb_builtin():
    """Cobweb quiver with potential (pentagon + triangles − quadrilaterals) and its cut."""
    cs = [f"c{i}" for i in range(1, 6)]
    ds = [f"d{i}" for i in range(1, 11)]
    edges: List[Tuple[str, str]] = []
    for i in range(1, 6):
        edges.append((f"c{i}", f"c{i % 5 + 1}"))
    for i in range(1, 6):
        edges += [(f"d{2 * i - 1}", f"d{2 * i}"), (f"d{2 * i}", f"c{i}"), (f"c{i}", f"d{2 * i - 1}")]
    outer = [("d1", "d10"), ("d3", "d2"), ("d5", "d4"), ("d7", "d6"), ("d9", "d8")]
    edges += outer
    q = Quiver(cs + ds, [Arrow(_aid(u, v), u, v, (0,)) for u, v in edges])

    terms = [(Fraction(1), [_aid(f"c{i}", f"c{i % 5 + 1}") for i in range(1, 6)])]
    for i in range(1, 6):
        a, b, c = f"d{2 * i - 1}", f"d{2 * i}", f"c{i}"
        terms.append((Fraction(1), [_aid(a, b), _aid(b, c), _aid(c, a)]))
    for i in range(1, 6):
        # the quadrilateral behind the outer arrow ending at d_{2i}
        ci, cn = f"c{i}", f"c{i % 5 + 1}"
        top = f"d{2 * i % 10 + 1}"  # d_{2i+1}, with d11 = d1
        dn = f"d{2 * i}"
        terms.append((Fraction(-1), [_aid(top, dn), _aid(dn, ci), _aid(ci, cn), _aid(cn, top)]))
    w = Potential(q, terms)
    cut = ["c1c2", "d1d2", "d3d4", "d5d6", "d7d8", "d9d10", "d5d4", "d7d6", "d9d8", "d1d10"]
    return q, w, cut


def cobweb_presentation() -> Presentation:
    q, w, cut = cobweb_builtin()
    return jacobi_presentation(q, w, cut, name="cobweb")


def cobweb_rotation() -> Dict[str, str]:
    rot = {f"c{i}": f"c{(i + 1) % 5 + 1}" for i in range(1, 6)}
    rot.update({f"d{j}": f"d{(j + 3) % 10 + 1}" for j in range(1, 11)})
    return rot


# -- small examples -----------------------------------------------------------------

def eg_twistorno() -> Presentation:
    """1 ⇄ 2 with α in degree 0, β in degree 1, all paths of length 2 zero."""
    q = Quiver(["1", "2"], [Arrow("alpha", "1", "2", (0,)), Arrow("beta", "2", "1", (1,))])
    rels = [Relation([(Fraction(1), q.path(["alpha", "beta"]))]),
            Relation([(Fraction(1), q.path(["beta", "alpha"]))])]
    return Presentation(q, rels, 1, name="eg:twistorno")


def path_algebra(q: Quiver, name: str = "path") -> Presentation:
    return Presentation(q, [], len(q.arrows[0].degree) if q.arrows else 1, name=name)


# -- BBK reference --------------------------------------------------------------------

@dataclass(frozen=True)
class BBKReference:
    vertex_map: Dict[str, str]
    arrow_images: Dict[str, Tuple[int, str]]   # arrow id -> (sign, image arrow id)


def bbk_nakayama_reference(q: Quiver, data: DynkinData) -> BBKReference:
    """β: ρ on vertices, β(a) = ρ̄(a), β(a*) = sgn(deg ρ̄(a*)) ρ̄(a*), with sgn(p) = (−1)^p."""
    if not q.is_acyclic():
        raise InvalidDynkin("BBK reference needs the Dynkin quiver itself")
    rho = data.rho
    by_ends: Dict[Tuple[str, str], Tuple[str, int]] = {}
    for a in q.arrows:
        by_ends[(a.source, a.target)] = (a.id, 0)
        by_ends[(a.target, a.source)] = (star(a.id), 1)
    images: Dict[str, Tuple[int, str]] = {}
    for a in q.arrows:
        img, _ = by_ends[(rho[a.source], rho[a.target])]
        images[a.id] = (1, img)
        img_s, deg_s = by_ends[(rho[a.target], rho[a.source])]
        images[star(a.id)] = ((-1) ** deg_s, img_s)
    return BBKReference(dict(rho), images)


# -- family lookup ------------------------------------------------------------------------

def family(name: str) -> Presentation:
    """Resolve ``dynkin:A:4``, ``typeA:d=2:s=3``, ``cobweb``, ``eg:twistorno``."""
    parts = name.strip().split(":")
    try:
        if parts[0] == "dynkin" and len(parts) == 3:
            return preprojective_dynkin(parts[1], int(parts[2]))[0]
        if parts[0] == "typeA" and len(parts) == 3:
            kv = dict(p.split("=", 1) for p in parts[1:])
            return higher_typeA(int(kv["d"]), int(kv["s"]))
    except (ValueError, KeyError) as exc:
        raise MalformedInput(f"bad family name {name!r}") from exc
    if name == "cobweb":
        return cobweb_presentation()
    if name == "eg:twistorno":
        return eg_twistorno()
    raise MalformedInput(f"unknown family {name!r}")
