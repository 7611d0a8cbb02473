"""The end-to-end pipeline: presentation -> Calabi-Yau report."""
from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field as dc_field
from typing import Dict, List, Optional, Tuple

from .algebra import FiniteDimAlgebra, quotient_basis
from .constructions import BBKReference, bbk_nakayama_reference, dynkin, preprojective_dynkin
from .errors import NoOrderFound, NotConnected, NotFrobenius
from .frobenius import (DegreeAdjustedAutomorphism, automorphism_from_generators,
                        check_automorphism, chi_twist, compose_da, da_order, frobenius_form, is_inner,
                        nakayama_automorphism, parse_character, random_coefficients,
                        radical_and_socle, selfinjectivity_test)
from .linalg import QQ

log = logging.getLogger(__name__)

REPORT_KEYS = ("family", "field", "dim", "frobenius", "reason", "verdict", "nu", "ell", "character",
               "k", "N", "m", "d", "cy", "alpha_order_strict", "used_inner", "connected",
               "homogeneous")


def permutation_cycles(perm: Dict[str, str], order) -> List[List[str]]:
    seen = set()
    out = []
    for v in order:
        if v in seen:
            continue
        cyc = [v]
        seen.add(v)
        w = perm[v]
        while w != v:
            cyc.append(w)
            seen.add(w)
            w = perm[w]
        out.append(cyc)
    return out


@dataclass
class CYReport:
    family: str = ""
    field: str = "q"
    dim: Optional[int] = None
    frobenius: bool = False
    reason: Optional[str] = None
    verdict: str = ""
    nu: Optional[List[List[str]]] = None
    ell: Optional[Dict[str, List[int]]] = None
    character: str = ""
    k: Optional[int] = None
    N: Optional[int] = None
    m: Optional[int] = None
    d: int = 1
    cy: Optional[Tuple[int, int]] = None
    alpha_order_strict: Optional[int] = None
    used_inner: bool = False
    connected: bool = True
    homogeneous: bool = True
    category_checks: Optional[dict] = None
    # not serialized
    algebra: Optional[FiniteDimAlgebra] = dc_field(default=None, repr=False, compare=False)
    nakayama: Optional[DegreeAdjustedAutomorphism] = dc_field(default=None, repr=False, compare=False)
    twisted: Optional[DegreeAdjustedAutomorphism] = dc_field(default=None, repr=False, compare=False)
    form: object = dc_field(default=None, repr=False, compare=False)

    def to_json(self) -> dict:
        out = {}
        for key in REPORT_KEYS:
            v = getattr(self, key)
            out[key] = list(v) if isinstance(v, tuple) else v
        if self.category_checks is not None:
            out["category_checks"] = self.category_checks
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, ensure_ascii=False) + "\n"

    def tsv(self, header: bool = True) -> str:
        def cell(v):
            if v is None:
                return ""
            if isinstance(v, bool):
                return "true" if v else "false"
            if isinstance(v, (list, dict, tuple)):
                return json.dumps(v, separators=(",", ":"), ensure_ascii=False)
            return str(v).replace("\t", " ").replace("\n", " ")
        data = self.to_json()
        lines = []
        if header:
            lines.append("\t".join(data))
        lines.append("\t".join(cell(v) for v in data.values()))
        return "\n".join(lines) + "\n"


def analyze(pres, d: int = 1, chi="sgn^d", k_max: int = 64, max_len: int = 64,
            allow_inner: bool = True, seed: int = 0, field=QQ, form_seed: Optional[int] = None,
            alg: Optional[FiniteDimAlgebra] = None) -> CYReport:
    """Run the whole pipeline.  Only DimensionBoundExceeded escapes as an exception."""
    if alg is None:
        alg = quotient_basis(pres, max_len=max_len, field=field)
    if isinstance(chi, str):
        chi = parse_character(chi, pres.grading_rank, pres.projection, d, field)
    rep = CYReport(family=pres.name, field=field.name, dim=alg.dim, d=d, character=chi.name,
                   connected=alg.is_connected(), homogeneous=alg.homogeneous, algebra=alg)
    socle = radical_and_socle(alg)
    try:
        nu = selfinjectivity_test(alg, socle)
    except NotFrobenius as exc:
        rep.reason = exc.reason
        rep.verdict = "not-frobenius"
        return rep
    rep.frobenius = True
    rep.nu = permutation_cycles(nu, alg.vertices)
    coeffs = random_coefficients(alg, form_seed) if form_seed is not None else None
    form = frobenius_form(alg, nu, coeffs, socle)
    da = nakayama_automorphism(alg, form)
    rep.form = form
    rep.nakayama = da
    rep.ell = {v: list(da.ell[v]) for v in alg.vertices}
    twisted = chi_twist(da, chi)
    rep.twisted = twisted
    try:
        res = da_order(alg, twisted, k_max=k_max, allow_inner=allow_inner, seed=seed)
    except NotConnected as exc:
        rep.reason = str(exc)
        rep.verdict = "not-connected"
        return rep
    except NoOrderFound as exc:
        rep.reason = str(exc)
        rep.verdict = "no-order-found"
        return rep
    rep.k, rep.N = res.k, res.N
    rep.m = res.k + res.N
    rep.cy = (d * res.N, rep.m)
    rep.alpha_order_strict = res.strict_order
    rep.used_inner = res.used_inner
    rep.verdict = "fractional-cy"
    return rep


# -- Dynkin specifics -------------------------------------------------------------

def bbk_automorphism(alg: FiniteDimAlgebra, ref: BBKReference) -> DegreeAdjustedAutomorphism:
    f = alg.field
    images = {aid: ({alg.arrow_basis[img]: f(sign)} if alg.arrow_basis[img] is not None else {})
              for aid, (sign, img) in ref.arrow_images.items()}
    return automorphism_from_generators(alg, ref.vertex_map, images)


@dataclass
class BBKCheck:
    name: str
    beta_is_automorphism: bool
    agrees_up_to_inner: bool
    alpha_inner: bool
    alpha_squared_inner: bool
    alpha_is_identity: bool

    @property
    def order_two(self) -> bool:
        return (not self.alpha_inner) and self.alpha_squared_inner


def bbk_check(type_: str, n: int, field=QQ, seed: int = 0) -> BBKCheck:
    q, data = dynkin(type_, n)
    pres, _ = preprojective_dynkin(type_, n)
    alg = quotient_basis(pres, field=field)
    form = frobenius_form(alg)
    alpha = nakayama_automorphism(alg, form)
    beta = bbk_automorphism(alg, bbk_nakayama_reference(q, data))
    beta_ok = check_automorphism(beta) is None
    agrees = is_inner(alg, alpha, seed=seed, relative_to=beta) is not None
    sq = compose_da(alpha, alpha)
    return BBKCheck(data.name, beta_ok, agrees,
                    is_inner(alg, alpha, seed=seed) is not None,
                    is_inner(alg, sq, seed=seed) is not None,
                    alpha.is_identity())

