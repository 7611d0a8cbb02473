"""Z-graded categories built from graded algebras.

Morphisms are referred to by hashable labels.  ``homs[(x, y, p)]`` lists the
labels spanning C^p(x, y) and ``compose(g, f)`` returns the product g∘f as a
``{label: coeff}`` dict.  Only rank-one gradings are handled here; algebras
with a Z^k grading are viewed through their attached projection.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Callable, Dict, Hashable, List, Optional, Tuple

from .algebra import FiniteDimAlgebra
from .errors import MalformedInput, WindowTooSmall
from .frobenius import Character, DegreeAdjustedAutomorphism, FrobeniusForm
from .linalg import invert


class GradedCategory:
    def __init__(self, objects: List[Hashable], homs: Dict[tuple, List[Hashable]],
                 compose: Callable[[Hashable, Hashable], Dict[Hashable, object]],
                 ends: Dict[Hashable, tuple], field, identities: Optional[Dict[Hashable, Hashable]] = None):
        self.objects = list(objects)
        self.homs = {k: v for k, v in homs.items() if v}
        self._compose = compose
        self.ends = ends            # label -> (source, target, degree)
        self.field = field
        self.identities = identities or {}

    def hom(self, x, y, p) -> List[Hashable]:
        return self.homs.get((x, y, p), [])

    def degrees(self) -> List[int]:
        return sorted({p for (_, _, p) in self.homs})

    def compose(self, g, f) -> Dict[Hashable, object]:
        if self.ends[g][0] != self.ends[f][1]:
            raise MalformedInput("morphisms are not composable")
        return self._compose(g, f)

    def dims(self) -> Dict[tuple, int]:
        return {k: len(v) for k, v in self.homs.items()}


def base_category(alg: FiniteDimAlgebra) -> GradedCategory:
    """Objects are vertices; C^p(x, y) = e_y A^p e_x."""
    homs: Dict[tuple, List[int]] = {}
    ends = {}
    for i in range(alg.dim):
        p = alg.project(alg.deg[i])
        key = (alg.src[i], alg.tgt[i], p)
        homs.setdefault(key, []).append(i)
        ends[i] = key

    def compose(g, f):
        return dict(alg.mult_basis(g, f))

    return GradedCategory(list(alg.vertices), homs, compose, ends, alg.field,
                          {v: alg.idem[v] for v in alg.vertices})


@dataclass
class EquivariantWindow:
    base: GradedCategory
    lo: int
    hi: int
    objects: List[tuple] = dc_field(default_factory=list)
    homs: Dict[tuple, List[tuple]] = dc_field(default_factory=dict)

    def hom(self, a, b) -> List[tuple]:
        return self.homs.get((a, b), [])

    def compose(self, g, f) -> Dict[tuple, object]:
        """Labels are (base label, level of the source object)."""
        (gl, gp), (fl, fp) = g, f
        fsrc, ftgt, fdeg = self.base.ends[fl]
        if gp != fp + fdeg:
            raise MalformedInput("window morphisms are not composable")
        return {(l, fp): c for l, c in self.base.compose(gl, fl).items()}

    def shift(self, obj):
        x, p = obj
        if p + 1 > self.hi:
            return None
        return (x, p + 1)

    def shift_morphism(self, label):
        l, p = label
        if p + 1 + self.base.ends[l][2] > self.hi or p + 1 > self.hi:
            return None
        return (l, p + 1)


def smash_window(c: GradedCategory, lo: int, hi: int) -> EquivariantWindow:
    if lo > hi:
        raise MalformedInput(f"empty window [{lo}, {hi}]")
    w = EquivariantWindow(c, lo, hi)
    w.objects = [(x, p) for p in range(lo, hi + 1) for x in c.objects]
    for (x, y, d), labels in c.homs.items():
        for p in range(lo, hi + 1):
            q = p + d
            if lo <= q <= hi:
                w.homs[((x, p), (y, q))] = [(l, p) for l in labels]
    return w


def orbit_of_window(e: EquivariantWindow) -> GradedCategory:
    """(D/Z)^p(x, y) = D((x,0), (y,p)), composition g∘f = F^p(g)∘f."""
    if not (e.lo <= 0 <= e.hi):
        raise WindowTooSmall(f"window [{e.lo}, {e.hi}] does not contain degree 0")
    base = e.base
    homs: Dict[tuple, List[tuple]] = {}
    ends = {}
    for x in base.objects:
        for y in base.objects:
            for p in range(e.lo, e.hi + 1):
                labels = e.hom((x, 0), (y, p))
                if labels:
                    homs[(x, y, p)] = labels
                    for l in labels:
                        ends[l] = (x, y, p)

    def compose(g, f):
        gl, _ = g
        _, _, p = ends[f]
        _, _, q = ends[g]
        if not (e.lo <= p + q <= e.hi):
            raise WindowTooSmall(f"composite of degree {p + q} leaves the window [{e.lo}, {e.hi}]")
        return e.compose((gl, p), f)

    return GradedCategory(list(base.objects), homs, compose, ends, base.field,
                          {x: (base.identities[x], 0) for x in base.identities})


def roundtrip(c: GradedCategory, lo: int, hi: int) -> dict:
    """Compare orbit_of_window(smash_window(c)) with c on the window."""
    outside = [p for p in c.degrees() if not (lo <= p <= hi)]
    if outside:
        raise WindowTooSmall(f"degree {outside[0]} lies outside the window [{lo}, {hi}]")
    o = orbit_of_window(smash_window(c, lo, hi))
    problems = []
    for x in c.objects:
        for y in c.objects:
            for p in range(lo, hi + 1):
                mine = c.hom(x, y, p)
                theirs = o.hom(x, y, p)
                if [(l, 0) for l in mine] != list(theirs):
                    problems.append(f"hom({x},{y})^{p}: {len(mine)} vs {len(theirs)}")
    compared = 0
    for (x, y, p), fs in c.homs.items():
        for (y2, z, q), gs in c.homs.items():
            if y2 != y or not (lo <= p + q <= hi):
                continue
            for f in fs:
                for g in gs:
                    want = {(l, 0): v for l, v in c.compose(g, f).items()}
                    got = o.compose((g, 0), (f, 0))
                    compared += 1
                    if want != got:
                        problems.append(f"composition {g}∘{f} differs")
    shift = shift_check(smash_window(c, lo, hi))
    return {"window": [lo, hi], "pass": not problems and shift["pass"], "compositions_compared": compared,
            "problems": problems[:5], "shift": shift}


def shift_check(w: EquivariantWindow) -> dict:
    """F(g∘f) = F(g)∘F(f) wherever everything stays in the window."""
    checked = 0
    for (a, b), fs in w.homs.items():
        for (b2, c), gs in w.homs.items():
            if b2 != b or c[1] + 1 > w.hi:
                continue
            for f in fs:
                for g in gs:
                    lhs = {(l, p + 1): v for (l, p), v in w.compose(g, f).items()}
                    rhs = w.compose(w.shift_morphism(g), w.shift_morphism(f))
                    checked += 1
                    if lhs != rhs:
                        return {"pass": False, "checked": checked, "witness": [str(g), str(f)]}
    return {"pass": True, "checked": checked}


# -- Serre structures ---------------------------------------------------------------

@dataclass
class SerreData:
    S: Dict[Hashable, Hashable]
    ell: Dict[Hashable, int]
    kappa: Dict[tuple, Tuple[List, List, List[List]]]  # (x,y,p) -> (fs, gs, K[f][g])
    functor: DegreeAdjustedAutomorphism                # S on morphisms (alpha^chi)
    form: FrobeniusForm


def serre_structure(c: GradedCategory, form: FrobeniusForm, twisted: DegreeAdjustedAutomorphism) -> SerreData:
    """kappa_{x,y}(f)(g) = lam(g∘f) for f in C^p(x,y), g in C^{ell(x)-p}(y, Sx)."""
    alg = form.alg
    ell = {v: alg.project(d) for v, d in twisted.ell.items()}
    S = dict(form.nu)
    kappa = {}
    for (x, y, p), fs in c.homs.items():
        gs = c.hom(y, S[x], ell[x] - p)
        mat = [[form(c.compose(g, f)) for g in gs] for f in fs]
        kappa[(x, y, p)] = (list(fs), list(gs), mat)
    return SerreData(S, ell, kappa, twisted, form)


def _kappa_value(sd: SerreData, key, f_coeffs: Dict, g_coeffs: Dict, field):
    fs, gs, mat = sd.kappa[key]
    fi = {l: i for i, l in enumerate(fs)}
    gi = {l: j for j, l in enumerate(gs)}
    total = field.zero
    for f, a in f_coeffs.items():
        for g, b in g_coeffs.items():
            total += a * b * mat[fi[f]][gi[g]]
    return total


def verify_serre(c: GradedCategory, sd: SerreData, chi: Character) -> dict:
    """Check the stored kappa against lam, both naturality identities, and nondegeneracy."""
    f_ = c.field
    alg = sd.form.alg
    out = {}

    # kappa really is the pairing lam(g∘f)
    bad = None
    for (x, y, p), (fs, gs, mat) in sd.kappa.items():
        for i, f in enumerate(fs):
            for j, g in enumerate(gs):
                if mat[i][j] != sd.form(c.compose(g, f)):
                    bad = bad or {"slice": [x, y, p], "f": alg.label(f), "g": alg.label(g)}
    out["pairing"] = {"pass": bad is None, **({"witness": bad} if bad else {})}

    # nondegeneracy: every slice square and invertible
    bad = None
    for key, (fs, gs, mat) in sd.kappa.items():
        if len(fs) != len(gs) or invert(mat, f_) is None:
            bad = {"slice": list(key)}
            break
    out["nondegenerate"] = {"pass": bad is None, **({"witness": bad} if bad else {})}

    # left: kappa_{x,z}(h∘f)(k) = kappa_{x,y}(f)(k∘h)
    bad, checked = None, 0
    for (x, y, p), fs in c.homs.items():
        for (y2, z, q), hs in c.homs.items():
            if y2 != y:
                continue
            ks = c.hom(z, sd.S[x], sd.ell[x] - p - q)
            if not ks:
                continue
            for f in fs:
                for h in hs:
                    hf = c.compose(h, f)
                    for k in ks:
                        lhs = _kappa_value(sd, (x, z, p + q), hf, {k: f_.one}, f_) if hf else f_.zero
                        kh = c.compose(k, h)
                        rhs = _kappa_value(sd, (x, y, p), {f: f_.one}, kh, f_) if kh else f_.zero
                        checked += 1
                        if lhs != rhs and bad is None:
                            bad = {"f": alg.label(f), "h": alg.label(h), "k": alg.label(k)}
    out["left_naturality"] = {"pass": bad is None, "checked": checked, **({"witness": bad} if bad else {})}

    # right: kappa_{x,y}(g)(S(f)∘k) = chi(deg f) kappa_{w,y}(g∘f)(k)
    bad, checked = None, 0
    for (w, x, p), fs in c.homs.items():
        for (x2, y, q), gs in c.homs.items():
            if x2 != x:
                continue
            ks = c.hom(y, sd.S[w], sd.ell[w] - p - q)
            if not ks:
                continue
            for f in fs:
                sf = sd.functor.columns[f]
                weight = chi(alg.deg[f])
                for g in gs:
                    gf = c.compose(g, f)
                    for k in ks:
                        sfk = alg.multiply(sf, {k: f_.one})
                        lhs = _kappa_value(sd, (x, y, q), {g: f_.one}, sfk, f_) if sfk else f_.zero
                        rhs = weight * _kappa_value(sd, (w, y, p + q), gf, {k: f_.one}, f_) if gf else f_.zero
                        checked += 1
                        if lhs != rhs and bad is None:
                            bad = {"f": alg.label(f), "g": alg.label(g), "k": alg.label(k)}
    out["right_naturality"] = {"pass": bad is None, "checked": checked, **({"witness": bad} if bad else {})}
    out["pass"] = all(v["pass"] for v in out.values() if isinstance(v, dict))
    return out


def corrupt_kappa(sd: SerreData, key=None, i: int = 0, j: int = 0, delta=1) -> SerreData:
    """Copy of sd with one kappa entry perturbed (for fault-injection tests)."""
    kappa = {k: (fs, gs, [row[:] for row in mat]) for k, (fs, gs, mat) in sd.kappa.items()}
    if key is None:
        key = next(k for k, (fs, gs, _) in sorted(kappa.items(), key=lambda t: str(t[0])) if fs and gs)
    fs, gs, mat = kappa[key]
    mat[i][j] = mat[i][j] + delta
    return SerreData(sd.S, sd.ell, kappa, sd.functor, sd.form)
