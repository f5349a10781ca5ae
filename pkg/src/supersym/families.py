"""Orthogonal families by Gram-Schmidt over the dominance order.

Shared by the Jack (alpha) and Macdonald (q,t) constructions: project each
monomial against every strictly lower member, then assert the full Gram
matrix is diagonal (the overdetermined part of the definition).
"""

from __future__ import annotations

from functools import lru_cache

from .params import ParamRational
from .expansion import (
    SymExpansion,
    m_to_p,
    z_alpha,
    z_qt,
    z_unit,
    _binom2_sign,
)
from .superpartition import enumerate_sector


_VARIANT_NPARAMS = {"alpha": 1, "qt": 2, "unit": 0}


def _weight(variant, spart, nparams):
    if variant == "alpha":
        return z_alpha(spart)
    if variant == "qt":
        return z_qt(spart)
    return z_unit(spart, nparams)


def _pairing(pf, pg, variant, nparams):
    out = ParamRational.zero(nparams)
    for k, c in pf.coeffs.items():
        d = pg.coeffs.get(k)
        if d is None:
            continue
        out = out + c * d * _weight(variant, k, nparams) * _binom2_sign(k.m, nparams)
    return out


@lru_cache(maxsize=None)
def gram_family(n, m, variant):
    """All P_Lambda of a sector in the m basis, plus norms, by Gram-Schmidt.

    Returns (polys, norms): dicts keyed by superpartition; norms carry the
    global fermionic sign, i.e. they are <P, P> as defined.
    """
    nparams = _VARIANT_NPARAMS[variant]
    sector = enumerate_sector(n, m)
    order = list(reversed(sector))  # least dominant first
    polys = {}
    pforms = {}
    norms = {}
    for lam in order:
        f = SymExpansion.unit("m", lam, nparams)
        fp = m_to_p(lam, nparams)
        for mu in order:
            if mu == lam:
                break
            if not lam.dominates(mu):
                continue
            c = _pairing(fp, pforms[mu], variant, nparams) / norms[mu]
            if c.is_zero():
                continue
            f = f - polys[mu].scale(c)
            fp = fp - pforms[mu].scale(c)
        polys[lam] = f
        pforms[lam] = fp
        norms[lam] = _pairing(fp, fp, variant, nparams)
        if norms[lam].is_zero():
            raise RuntimeError(f"degenerate norm for {lam} in variant {variant}")
    # full orthogonality, incomparable pairs included
    for i, lam in enumerate(order):
        for mu in order[:i]:
            if not _pairing(pforms[lam], pforms[mu], variant, nparams).is_zero():
                raise RuntimeError(
                    f"Gram-Schmidt lost orthogonality: {lam} vs {mu} ({variant})"
                )
    return polys, norms


def family_member(spart, variant):
    polys, _ = gram_family(spart.n, spart.m, variant)
    return polys[spart]


def family_norm(spart, variant):
    _, norms = gram_family(spart.n, spart.m, variant)
    return norms[spart]


def expand_in_family(f, variant):
    """Coefficients of an m-basis expansion in the P family, by peeling."""
    rest = f
    out = {}
    guard = 0
    while not rest.is_zero():
        guard += 1
        if guard > 100000:
            raise RuntimeError("family expansion did not terminate")
        lead = max(rest.coeffs, key=lambda k: (k.star(), k.circled()))
        c = rest.coeffs[lead]
        p = family_member(lead, variant)
        out[lead] = c
        rest = rest - p.scale(c)
    return out
