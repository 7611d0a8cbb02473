"""Socles, Frobenius forms, Nakayama automorphisms and their orders.

Conventions used throughout:

* ``soc(A e_i)`` is the socle of the left projective at ``i``: elements
  starting at ``i`` killed by every arrow applied after them.  Its target is
  ``nu(i)``.
* The degree adjuster is ``ell(i) = deg soc(A e_i)``.  With this choice a
  Nakayama automorphism sends a homogeneous ``a: i -> j`` of degree ``p`` to
  degree ``p + ell(j) - ell(i)``.
* ``lam(x a) = lam(alpha(a) x)`` defines ``alpha``.
"""
from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field as dc_field
from typing import Dict, List, Optional, Sequence, Tuple

from .algebra import Element, FiniteDimAlgebra, add, scale
from .errors import (InternalNondegeneracyFailure, InvariantViolation, MalformedInput,
                     NoOrderFound, NonHomogeneousSocle, NotConnected, NotFrobenius,
                     NotHomogeneous, FcyError)
from .linalg import QQ, invert, matvec, nullspace
from .quiver import Degree, add_deg

log = logging.getLogger(__name__)


class VerificationFailure(FcyError):
    pass


# -- characters --------------------------------------------------------------

@dataclass(frozen=True)
class Character:
    """chi: Z^k -> field^x, given by the images of the generators."""

    images: Tuple[object, ...]
    name: str = "chi"

    def __post_init__(self):
        if any(not x for x in self.images):
            raise MalformedInput("character values must be nonzero")

    @property
    def rank(self) -> int:
        return len(self.images)

    def __call__(self, deg: Degree):
        out = None
        for x, e in zip(self.images, deg):
            t = x ** e
            out = t if out is None else out * t
        return out

    def is_trivial(self) -> bool:
        return all(x == 1 for x in self.images)

    @classmethod
    def trivial(cls, rank: int = 1, field=QQ) -> "Character":
        return cls(tuple([field.one] * rank), "tr")

    @classmethod
    def sign(cls, rank: int = 1, projection: Optional[Sequence[int]] = None, power: int = 1,
             field=QQ) -> "Character":
        """sgn^power composed with the Z-projection."""
        projection = projection or [0] * (rank - 1) + [1]
        imgs = tuple(field(-1) if (power * p) % 2 else field.one for p in projection)
        name = "sgn" if power == 1 else f"sgn^{power}"
        return cls(imgs, name)

    @classmethod
    def scalar(cls, value, rank: int = 1, projection: Optional[Sequence[int]] = None,
               field=QQ) -> "Character":
        projection = projection or [0] * (rank - 1) + [1]
        v = field(value)
        return cls(tuple(v ** p for p in projection), field.fmt(v))


def parse_character(spec: str, rank: int = 1, projection=None, d: int = 1, field=QQ) -> Character:
    s = spec.strip()
    if s == "tr":
        return Character.trivial(rank, field)
    if s == "sgn":
        return Character.sign(rank, projection, 1, field)
    if s.startswith("sgn^"):
        e = s[4:]
        try:
            power = d if e == "d" else int(e)
        except ValueError:
            raise MalformedInput(f"bad character {spec!r}") from None
        return Character.sign(rank, projection, power, field) if power % 2 else \
            Character(tuple([field.one] * rank), f"sgn^{power}")
    try:
        value = QQ(s)
    except MalformedInput:
        raise MalformedInput(f"bad character {spec!r}; expected tr, sgn, sgn^d or a rational") from None
    if not value:
        raise MalformedInput("character value must be nonzero")
    return Character.scalar(value, rank, projection, field)


# -- socles ---------------------------------------------------------------------

@dataclass
class SocleData:
    radical: List[int]
    left: Dict[str, List[Element]]    # soc(A e_i) basis per vertex i
    right: Dict[str, List[Element]]   # soc(e_i A) basis per vertex i

    def right_socle(self) -> List[Element]:
        return [x for v in self.right for x in self.right[v]]


def _blocks(alg: FiniteDimAlgebra, idx: List[int], by_source: bool):
    """Group basis indices by the other endpoint and, when graded, by degree."""
    out: Dict[tuple, List[int]] = {}
    for i in idx:
        end = alg.src[i] if by_source else alg.tgt[i]
        key = (end, alg.deg[i]) if alg.homogeneous else (end,)
        out.setdefault(key, []).append(i)
    return [out[k] for k in sorted(out, key=lambda k: (alg.vertices.index(k[0]),) + k[1:])]


def _annihilated(alg: FiniteDimAlgebra, cols: List[int], arrows: List[int], left: bool) -> List[Element]:
    """Kernel of x -> (a·x)_a (left) or x -> (x·a)_a on span(cols)."""
    f = alg.field
    images = []
    for c in cols:
        vec = {}
        for a in arrows:
            prod = alg.mult_basis(a, c) if left else alg.mult_basis(c, a)
            for k, v in prod.items():
                vec[(a, k)] = v
        images.append(vec)
    rows = sorted({r for vec in images for r in vec})
    if not rows:
        return [{c: f.one} for c in cols]
    m = [[vec.get(r, f.zero) for vec in images] for r in rows]
    return [{cols[j]: x for j, x in enumerate(v) if x} for v in nullspace(m, f)]


def radical_and_socle(alg: FiniteDimAlgebra) -> SocleData:
    arrows = [i for i in range(alg.dim) if alg.length(i) == 1]
    radical = [i for i in range(alg.dim) if alg.length(i) > 0]
    left: Dict[str, List[Element]] = {}
    right: Dict[str, List[Element]] = {}
    for v in alg.vertices:
        left[v] = []
        for block in _blocks(alg, alg.starting_at(v), by_source=False):
            t = alg.tgt[block[0]]
            out = [a for a in arrows if alg.src[a] == t]
            left[v] += _annihilated(alg, block, out, left=True)
        right[v] = []
        for block in _blocks(alg, alg.ending_at(v), by_source=True):
            s = alg.src[block[0]]
            inn = [a for a in arrows if alg.tgt[a] == s]
            right[v] += _annihilated(alg, block, inn, left=False)
    return SocleData(radical, left, right)


def selfinjectivity_test(alg: FiniteDimAlgebra, socle: Optional[SocleData] = None) -> Dict[str, str]:
    """Return the Nakayama permutation or raise :class:`NotFrobenius`."""
    socle = socle or radical_and_socle(alg)
    nu: Dict[str, str] = {}
    for v in alg.vertices:
        gens = socle.left[v]
        if len(gens) != 1:
            raise NotFrobenius(f"socle of the projective A e_{v} has dimension {len(gens)}, not 1")
        nu[v] = alg.tgt[next(iter(gens[0]))]
    seen: Dict[str, str] = {}
    for v in alg.vertices:
        if nu[v] in seen:
            raise NotFrobenius(
                f"Nakayama map is not a bijection: soc(A e_{seen[nu[v]]}) and soc(A e_{v}) "
                f"are both simple at vertex {nu[v]}")
        seen[nu[v]] = v
    for v in alg.vertices:
        gens = socle.right[v]
        if len(gens) != 1:
            raise NotFrobenius(f"socle of the projective e_{v} A has dimension {len(gens)}, not 1")
        s = alg.src[next(iter(gens[0]))]
        if nu[s] != v:
            raise NotFrobenius(f"left and right socles disagree at vertex {v}")
    return nu


# -- Frobenius forms ---------------------------------------------------------------

@dataclass
class FrobeniusForm:
    alg: FiniteDimAlgebra
    lam: Dict[int, object]
    nu: Dict[str, str]
    socle: Dict[str, Element]          # chosen generator of soc(A e_i)
    coefficients: Dict[str, object]
    right_socle: Dict[str, Element] = dc_field(default_factory=dict)   # generator of soc(e_i A)

    def __call__(self, x: Element):
        f = self.alg.field
        return sum((c * self.lam[k] for k, c in x.items() if k in self.lam), f.zero)

    def pair(self, i: int, j: int):
        """lam(b_i · b_j)."""
        return self(self.alg.mult_basis(i, j))


def _pairing_block(form: FrobeniusForm, xs: List[int], as_: List[int]):
    return [[form.pair(x, a) for a in as_] for x in xs]


def frobenius_form(alg: FiniteDimAlgebra, nu: Optional[Dict[str, str]] = None,
                   coefficients: Optional[Dict[str, object]] = None,
                   socle: Optional[SocleData] = None) -> FrobeniusForm:
    """lam = Σ_i c_i · (dual functional of the socle generator of A e_i)."""
    f = alg.field
    socle = socle or radical_and_socle(alg)
    if nu is None:
        nu = selfinjectivity_test(alg, socle)
    coefficients = {v: f.one for v in alg.vertices} if coefficients is None else \
        {v: f(coefficients[v]) for v in alg.vertices}
    lam: Dict[int, object] = {}
    gens: Dict[str, Element] = {}
    for v in alg.vertices:
        w = socle.left[v][0]
        k = max(w)
        gens[v] = w
        lam[k] = coefficients[v] / w[k]
    form = FrobeniusForm(alg, lam, nu, gens, coefficients, {v: socle.right[v][0] for v in alg.vertices})
    for i in alg.vertices:
        for j in alg.vertices:
            as_ = alg.peirce(i, j)
            xs = alg.peirce(j, nu[i])
            if len(as_) != len(xs):
                raise InternalNondegeneracyFailure(
                    f"pairing e_{nu[i]}Ae_{j} x e_{j}Ae_{i} is {len(xs)}x{len(as_)}")
            if as_ and invert(_pairing_block(form, xs, as_), f) is None:
                raise InternalNondegeneracyFailure(f"pairing block ({i},{j}) is singular")
    return form


def bilinear_matrix(form: FrobeniusForm):
    """Dense B[x][y] = lam(b_x b_y) over the whole basis (for checks)."""
    n = form.alg.dim
    return [[form.pair(x, y) for y in range(n)] for x in range(n)]


def random_coefficients(alg: FiniteDimAlgebra, seed: int) -> Dict[str, object]:
    rng = random.Random(seed)
    f = alg.field
    out = {}
    for v in alg.vertices:
        c = 0
        while not f(c):
            c = rng.randint(-50, 50)
        out[v] = f(c)
    return out


# -- degree-adjusted automorphisms ---------------------------------------------------

@dataclass
class DegreeAdjustedAutomorphism:
    alg: FiniteDimAlgebra
    columns: List[Element]                       # alpha(b_j)
    ell: Dict[str, Degree]
    vertex_map: Optional[Dict[str, str]] = None  # set when alpha permutes the e_i

    def apply(self, x: Element) -> Element:
        f = self.alg.field
        out: Element = {}
        for j, c in x.items():
            for k, v in self.columns[j].items():
                s = out.get(k, f.zero) + c * v
                if s:
                    out[k] = s
                else:
                    out.pop(k, None)
        return out

    def is_identity(self) -> bool:
        one = self.alg.field.one
        return all(col == {j: one} for j, col in enumerate(self.columns))

    def fixes_vertices(self) -> bool:
        return self.vertex_map is not None and all(k == v for k, v in self.vertex_map.items())

    def ell_projected(self) -> Dict[str, int]:
        return {v: self.alg.project(d) for v, d in self.ell.items()}


def identity_da(alg: FiniteDimAlgebra) -> DegreeAdjustedAutomorphism:
    zero = tuple([0] * alg.grading_rank)
    return DegreeAdjustedAutomorphism(alg, [{j: alg.field.one} for j in range(alg.dim)],
                                      {v: zero for v in alg.vertices}, {v: v for v in alg.vertices})


def compose_da(first: DegreeAdjustedAutomorphism, second: DegreeAdjustedAutomorphism
               ) -> DegreeAdjustedAutomorphism:
    """(second ∘ first, ell_1 + ell_2 ∘ nu_1)."""
    if first.alg is not second.alg:
        raise MalformedInput("composing automorphisms of different algebras")
    cols = [second.apply(c) for c in first.columns]
    vm = None
    if first.vertex_map is not None and second.vertex_map is not None:
        vm = {v: second.vertex_map[first.vertex_map[v]] for v in first.vertex_map}
    ell = {v: add_deg(first.ell[v], second.ell[first.vertex_map[v]]) for v in first.ell} \
        if first.vertex_map is not None else dict(first.ell)
    return DegreeAdjustedAutomorphism(first.alg, cols, ell, vm)


def da_power(da: DegreeAdjustedAutomorphism, k: int) -> DegreeAdjustedAutomorphism:
    out = identity_da(da.alg)
    for _ in range(k):
        out = compose_da(out, da)
    return out


def chi_twist(da: DegreeAdjustedAutomorphism, chi: Character) -> DegreeAdjustedAutomorphism:
    alg = da.alg
    if chi.rank != alg.grading_rank:
        raise MalformedInput(f"character of rank {chi.rank} on a rank-{alg.grading_rank} grading")
    if not alg.homogeneous and not chi.is_trivial():
        raise NotHomogeneous("a nontrivial character twist needs a homogeneous presentation")
    cols = [scale(c, chi(alg.deg[j]), alg.field) for j, c in enumerate(da.columns)]
    return DegreeAdjustedAutomorphism(alg, cols, dict(da.ell), da.vertex_map)


def automorphism_from_generators(alg: FiniteDimAlgebra, vertex_map: Dict[str, str],
                                 arrow_images: Dict[str, Element],
                                 ell: Optional[Dict[str, Degree]] = None) -> DegreeAdjustedAutomorphism:
    """Extend images of idempotents and arrows multiplicatively to the basis."""
    f = alg.field
    cols: List[Element] = []
    for j, p in enumerate(alg.basis):
        if p.is_trivial:
            cols.append({alg.idem[vertex_map[p.source]]: f.one})
            continue
        img = arrow_images[p.arrows[0]]
        for aid in p.arrows[1:]:
            img = alg.multiply(arrow_images[aid], img)
        cols.append(img)
    zero = tuple([0] * alg.grading_rank)
    return DegreeAdjustedAutomorphism(alg, cols, ell or {v: zero for v in alg.vertices}, dict(vertex_map))


# -- Nakayama ----------------------------------------------------------------------

def degree_adjuster(alg: FiniteDimAlgebra, form: FrobeniusForm) -> Dict[str, Degree]:
    """ell(e_i) = degree of the socle of the left projective A e_i.

    The right projective e_i A gives the same values permuted by nu, which
    keeps orbit sums but breaks homogeneity unless nu commutes with them.
    """
    if not alg.homogeneous:
        raise NotHomogeneous("degree adjuster needs a homogeneous presentation")
    ell = {}
    for v in alg.vertices:
        degs = {alg.deg[k] for k in form.socle[v]}
        if len(degs) != 1:
            raise NonHomogeneousSocle(f"socle generator of A e_{v} is not homogeneous")
        ell[v] = degs.pop()
    return ell


def nakayama_automorphism(alg: FiniteDimAlgebra, form: FrobeniusForm,
                          verify: bool = True) -> DegreeAdjustedAutomorphism:
    """The alpha with lam(x a) = lam(alpha(a) x), solved one Peirce block at a time."""
    f = alg.field
    nu = form.nu
    cols: List[Element] = [dict() for _ in range(alg.dim)]
    for i in alg.vertices:
        for j in alg.vertices:
            as_ = alg.peirce(i, j)
            if not as_:
                continue
            xs = alg.peirce(j, nu[i])
            bs = alg.peirce(nu[i], nu[j])
            m = [[form.pair(b, x) for b in bs] for x in xs]
            inv = invert(m, f) if len(xs) == len(bs) else None
            if inv is None:
                raise InternalNondegeneracyFailure(f"cannot solve for alpha on e_{j}Ae_{i}")
            for a in as_:
                rhs = [form.pair(x, a) for x in xs]
                sol = matvec(inv, rhs, f)
                cols[a] = {b: c for b, c in zip(bs, sol) if c}
    ell = degree_adjuster(alg, form) if alg.homogeneous else \
        {v: tuple([0] * alg.grading_rank) for v in alg.vertices}
    da = DegreeAdjustedAutomorphism(alg, cols, ell, dict(nu))
    if verify:
        bad = check_automorphism(da)
        if bad:
            raise VerificationFailure(bad)
    return da


def check_automorphism(da: DegreeAdjustedAutomorphism) -> Optional[str]:
    """None when alpha is unital, permutes the e_i as recorded, and is multiplicative."""
    alg = da.alg
    f = alg.field
    if da.apply(alg.unit()) != alg.unit():
        return "alpha is not unital"
    if da.vertex_map is not None:
        for v, w in da.vertex_map.items():
            if da.columns[alg.idem[v]] != {alg.idem[w]: f.one}:
                return f"alpha(e_{v}) is not e_{w}"
    for i in range(alg.dim):
        for j in range(alg.dim):
            if alg.src[i] != alg.tgt[j]:
                continue
            lhs = da.apply(alg.mult_basis(i, j))
            rhs = alg.multiply(da.columns[i], da.columns[j])
            if lhs != rhs:
                return f"alpha not multiplicative on ({alg.label(i)}, {alg.label(j)})"
    return None


def check_homogeneity(da: DegreeAdjustedAutomorphism) -> Optional[str]:
    """Every term of alpha(a) for a: i -> j of degree p sits in degree p + ell(j) - ell(i)."""
    alg = da.alg
    for a in range(alg.dim):
        i, j = alg.src[a], alg.tgt[a]
        want = tuple(p + y - x for p, x, y in zip(alg.deg[a], da.ell[i], da.ell[j]))
        for b in da.columns[a]:
            if alg.deg[b] != want:
                return f"alpha({alg.label(a)}) has a term {alg.label(b)} of degree {alg.deg[b]}, expected {want}"
            if da.vertex_map is not None and (alg.src[b], alg.tgt[b]) != (da.vertex_map[i], da.vertex_map[j]):
                return f"alpha({alg.label(a)}) leaves its Peirce block"
    return None


# -- inner automorphisms -------------------------------------------------------------

def is_inner(alg: FiniteDimAlgebra, alpha, vertex_map: Optional[Dict[str, str]] = None,
             degree_zero: bool = False, seed: int = 0, tries: int = 32,
             relative_to: Optional[DegreeAdjustedAutomorphism] = None) -> Optional[Element]:
    """A unit u with alpha(g)·u = u·g for all generators g, or None if none exists.

    ``alpha`` is a :class:`DegreeAdjustedAutomorphism` or a list of columns.
    With ``relative_to=beta`` the equation becomes alpha(g)·u = u·beta(g),
    i.e. alpha and beta differ by an inner automorphism.

    An element is a unit exactly when its coefficients on all e_i are nonzero,
    so a vanishing idempotent coordinate on the whole solution space proves
    that no unit exists.
    """
    if isinstance(alpha, DegreeAdjustedAutomorphism):
        vertex_map = alpha.vertex_map if vertex_map is None else vertex_map
        cols = alpha.columns
    else:
        cols = alpha
    f = alg.field
    unknowns = list(range(alg.dim))
    if vertex_map is not None:
        right_map = {v: v for v in alg.vertices}
        if relative_to is not None:
            right_map = relative_to.vertex_map
        if right_map is not None:
            allowed = {(right_map[v], vertex_map[v]) for v in alg.vertices}
            unknowns = [b for b in unknowns if (alg.src[b], alg.tgt[b]) in allowed]
    if degree_zero:
        unknowns = [b for b in unknowns if alg.project(alg.deg[b]) == 0]
    idem_cols = {v: unknowns.index(alg.idem[v]) for v in alg.vertices if alg.idem[v] in unknowns}
    if len(idem_cols) < len(alg.vertices):
        return None
    gens = [alg.idem[v] for v in alg.vertices] + [i for i in range(alg.dim) if alg.length(i) == 1]
    images = []
    for b in unknowns:
        vec = {}
        for g in gens:
            right = alg.mult_basis(b, g) if relative_to is None else \
                alg.multiply({b: f.one}, relative_to.columns[g])
            d = add(alg.multiply(cols[g], {b: f.one}), scale(right, f(-1), f), f)
            for k, v in d.items():
                vec[(g, k)] = v
        images.append(vec)
    rows = sorted({r for vec in images for r in vec})
    if rows:
        m = [[vec.get(r, f.zero) for vec in images] for r in rows]
        basis = nullspace(m, f)
    else:
        basis = [[f.one if i == j else f.zero for j in range(len(unknowns))] for i in range(len(unknowns))]
    if not basis:
        return None
    forms = list(idem_cols.values())
    if any(all(not v[c] for v in basis) for c in forms):
        return None

    def unit_from(coeffs):
        vec = [sum((c * v[t] for c, v in zip(coeffs, basis)), f.zero) for t in range(len(unknowns))]
        if all(vec[c] for c in forms):
            return {unknowns[t]: x for t, x in enumerate(vec) if x}
        return None

    m_ = len(basis)
    for k in range(m_):
        u = unit_from([f.one if t == k else f.zero for t in range(m_)])
        if u is not None:
            return u
    rng = random.Random(seed)
    for _ in range(tries):
        u = unit_from([f(rng.randint(1, 1 << 16)) for _ in range(m_)])
        if u is not None:
            return u
    # each idempotent coordinate of Σ x^t v_t is a nonzero polynomial of degree < m_,
    # so some x among the first V*m_ + 1 integers avoids every root
    for x in range(1, len(forms) * m_ + 2):
        u = unit_from([f(x) ** t for t in range(m_)])
        if u is not None:
            return u
    return None


# -- orders ------------------------------------------------------------------------------

@dataclass
class OrderResult:
    k: int
    N: int
    used_inner: bool
    strict_order: Optional[int]
    ell_k: Dict[str, Degree] = dc_field(default_factory=dict)


def da_order(alg: FiniteDimAlgebra, da: DegreeAdjustedAutomorphism, k_max: int = 64,
             allow_inner: bool = True, seed: int = 0) -> OrderResult:
    """Smallest k with (alpha, ell)^k ≅ (id, N) and N constant."""
    if not alg.is_connected():
        raise NotConnected("order criterion needs a connected algebra")
    if k_max < 1:
        raise MalformedInput("k_max must be positive")
    power = da
    found: Optional[OrderResult] = None
    for k in range(1, k_max + 1):
        if k > 1:
            power = compose_da(power, da)
        if not power.fixes_vertices():
            continue
        values = set(power.ell_projected().values())
        strict = power.is_identity()
        if strict and len(values) != 1:
            raise InvariantViolation(f"alpha^{k} = id but the adjuster takes values {sorted(values)}")
        if found is not None:
            if strict:
                found.strict_order = k
                return found
            continue
        if len(values) != 1:
            continue
        if strict:
            return OrderResult(k, values.pop(), False, k, dict(power.ell))
        if allow_inner and is_inner(alg, power, degree_zero=True, seed=seed) is not None:
            found = OrderResult(k, values.pop(), True, None, dict(power.ell))
    if found is not None:
        return found
    raise NoOrderFound(f"no k <= {k_max} with alpha^k equivalent to a shift")
