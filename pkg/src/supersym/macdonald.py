"""Macdonald superpolynomials: eigenoperators built from supercharges,
the T_q inversion, norms, specializations, Kostka matrices, dualities,
and limiting families.
"""

from __future__ import annotations

from functools import lru_cache

from .params import ParamPolynomial, ParamRational, PoleError, poly_divexact
from .superpoly import SuperPolynomial
from .superpartition import (
    SuperPartition,
    enumerate_sector,
    partitions,
)
from .expansion import (
    SymExpansion,
    apply_omega_qt,
    apply_phi_t,
    apply_rho_qt,
    apply_tq,
    convert_m_to_p,
    convert_p_to_m,
    convert_to_m,
    gen_g_qt,
    to_explicit,
    _binom2_sign,
)
from .families import family_member, family_norm, gram_family


def mac_P(spart):
    """P_Lambda(q,t) in the monomial basis."""
    return family_member(spart, "qt")


def mac_family(n, m):
    return gram_family(n, m, "qt")[0]


def mac_b(spart):
    """The dual normalization b = sign / <P,P>."""
    return _binom2_sign(spart.m, 2) / family_norm(spart, "qt")


def mac_Q(spart):
    return mac_P(spart).scale(mac_b(spart))


# -- fractions with factored binomial denominators --------------------------------------
#
# Every denominator met in the supercharge calculus is a product of atoms
# x_i - q^a t^b x_j; keeping the factorization makes lcm addition exact.


def _atom_poly(key, nvars):
    i, j, a, b = key
    q = ParamRational.var(0, 2)
    t = ParamRational.var(1, 2)
    coeff = q ** a * t ** b
    mono_i = SuperPolynomial.x_var(i, nvars, 2)
    mono_j = SuperPolynomial.x_var(j, nvars, 2).scale(coeff)
    return mono_i - mono_j


class FracSuper:
    """num / prod(atoms**mult) with a theta-free factored denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        self.num = num
        self.den = {} if den is None else den

    @property
    def nvars(self):
        return self.num.nvars

    def is_zero(self):
        return self.num.is_zero()

    def scale(self, c):
        return FracSuper(self.num.scale(c), dict(self.den))

    def mul_poly(self, p):
        return FracSuper(self.num * p, dict(self.den))

    def div_atom(self, key, times=1):
        den = dict(self.den)
        den[key] = den.get(key, 0) + times
        return FracSuper(self.num, den)

    def mul_atom_poly(self, key, times=1):
        num = self.num
        ap = _atom_poly(key, self.nvars)
        for _ in range(times):
            num = num * ap
        return FracSuper(num, dict(self.den))

    def __add__(self, other):
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        lcm = dict(self.den)
        for k, v in other.den.items():
            lcm[k] = max(lcm.get(k, 0), v)
        a = self.num
        for k, v in lcm.items():
            need = v - self.den.get(k, 0)
            if need:
                ap = _atom_poly(k, self.nvars)
                for _ in range(need):
                    a = a * ap
        b = other.num
        for k, v in lcm.items():
            need = v - other.den.get(k, 0)
            if need:
                ap = _atom_poly(k, other.nvars)
                for _ in range(need):
                    b = b * ap
        return FracSuper(a + b, lcm)

    def __sub__(self, other):
        return self + other.scale(ParamRational.from_int(-1, 2))

    def dtheta(self, i):
        return FracSuper(self.num.dtheta(i), dict(self.den))

    def theta_mul(self, i):
        return FracSuper(self.num.theta_mul(i), dict(self.den))

    def tau(self, k, power=1):
        """x_k -> q^power x_k applied to numerator and denominator."""
        q = ParamRational.var(0, 2)
        num = self.num.scale_x(k, q ** power)
        den = {}
        scal = ParamRational.one(2)
        for (i, j, a, b), v in self.den.items():
            if i == k and j == k:
                den[(i, j, a, b)] = den.get((i, j, a, b), 0) + v
                scal = scal * q ** (power * v)
            elif i == k:
                # q^power x_i - q^a t^b x_j = q^power (x_i - q^(a-power) t^b x_j)
                den[(i, j, a - power, b)] = den.get((i, j, a - power, b), 0) + v
                scal = scal * q ** (power * v)
            elif j == k:
                den[(i, j, a + power, b)] = den.get((i, j, a + power, b), 0) + v
            else:
                den[(i, j, a, b)] = den.get((i, j, a, b), 0) + v
        return FracSuper(num.scale(scal.inverse()), den)

    def to_polynomial(self):
        out = self.num
        for k, v in self.den.items():
            ap = _atom_poly(k, self.nvars)
            for _ in range(v):
                out = out.exact_div(ap)
        return out


def _sectors(num):
    """Group numerator terms by theta support."""
    out = {}
    for (xe, th), c in num.terms.items():
        out.setdefault(th, {})[(xe, ())] = c
    return {
        th: SuperPolynomial(num.nvars, num.nparams, terms)
        for th, terms in out.items()
    }


# -- the supercharges -------------------------------------------------------------------


def charge_Q1(fr, nvars):
    out = FracSuper(SuperPolynomial.zero(nvars, 2))
    for i in range(nvars):
        out = out + fr.tau(i, -1).theta_mul(i)
    return out


def charge_Q4(fr, nvars):
    out = FracSuper(SuperPolynomial.zero(nvars, 2))
    for i in range(nvars):
        out = out + fr.theta_mul(i)
    return out


def _atom(i, j, a, b):
    return (i, j, a, b)


def charge_Q2(fr, nvars):
    """Q2 = sum_i A_i(1/t) dtheta_i with A_i(1/t) = t^(1-N) prod (x_i - t x_j)/(x_i - x_j)."""
    t = ParamRational.var(1, 2)
    out = FracSuper(SuperPolynomial.zero(nvars, 2))
    for i in range(nvars):
        g = fr.dtheta(i)
        if g.is_zero():
            continue
        for j in range(nvars):
            if j == i:
                continue
            g = g.mul_atom_poly(_atom(i, j, 0, 1))
            g = g.div_atom(_atom(i, j, 0, 0))
        out = out + g.scale(t ** (1 - nvars))
    return out


def charge_Q3(fr, nvars):
    """Q3 = sum_i A_i(t) xi_i tau_i dtheta_i, sector by sector.

    After cancellation the sector-I multiplier is
    t^(N-1) prod_{j in I}(x_i - (qt)^-1 x_j)/(x_i - q^-1 x_j)
            prod_{j notin I}(x_i - t^-1 x_j)/(x_i - x_j).
    """
    t = ParamRational.var(1, 2)
    out = FracSuper(SuperPolynomial.zero(nvars, 2))
    for sector, part in _sectors(fr.num).items():
        piece = FracSuper(part, dict(fr.den))
        for i in sector:
            g = piece.dtheta(i).tau(i, 1)
            rest = tuple(k for k in sector if k != i)
            for j in rest:
                g = g.mul_atom_poly(_atom(i, j, -1, -1))
                g = g.div_atom(_atom(i, j, -1, 0))
            for j in range(nvars):
                if j == i or j in rest:
                    continue
                g = g.mul_atom_poly(_atom(i, j, 0, -1))
                g = g.div_atom(_atom(i, j, 0, 0))
            out = out + g.scale(t ** (nvars - 1))
    return out


def op_DN1(fr, nvars):
    t = ParamRational.var(1, 2)
    ab = charge_Q1(charge_Q2(fr, nvars), nvars) + charge_Q2(
        charge_Q1(fr, nvars), nvars
    )
    return ab.scale(t ** (nvars - 1))


def op_DN1_bar(fr, nvars):
    t = ParamRational.var(1, 2)
    ab = charge_Q3(charge_Q4(fr, nvars), nvars) + charge_Q4(
        charge_Q3(fr, nvars), nvars
    )
    return ab.scale(t ** (1 - nvars))


def op_DN2(fr, nvars):
    q = ParamRational.var(0, 2)
    t = ParamRational.var(1, 2)
    one = ParamRational.one(2)
    acc = FracSuper(SuperPolynomial.zero(nvars, 2))
    for i in range(nvars):
        for j in range(nvars):
            g = fr.dtheta(j)
            if g.is_zero():
                continue
            g = g.theta_mul(i)
            g = g.mul_poly(SuperPolynomial.x_var(j, nvars, 2))
            for k in range(nvars):
                if k == j:
                    continue
                g = g.mul_atom_poly(_atom(j, k, 0, 1))
                g = g.div_atom(_atom(j, k, 0, 0))
            g = g.scale(t ** (1 - nvars))
            g = g.div_atom(_atom(j, i, 0, 1))
            acc = acc + g.tau(i, -1)
    acc = acc.scale((q - one) * (t - one) * q.inverse() * t ** (nvars - 1))
    return acc + op_DN1(fr, nvars)


def op_DN2_bar(fr, nvars):
    """The circled-eigenvalue partner of DN1bar.

    Per sector J and i in J the combined A_i(t) xi_i multiplier reduces to
    t^(N-1) prod_{k in J\\i}(x_i - (qt)^-1 x_k)/(x_i - q^-1 x_k)
            prod_{k notin J}(x_i - t^-1 x_k)/(x_i - x_k).
    """
    q = ParamRational.var(0, 2)
    t = ParamRational.var(1, 2)
    one = ParamRational.one(2)
    acc = FracSuper(SuperPolynomial.zero(nvars, 2))
    for sector, part in _sectors(fr.num).items():
        piece = FracSuper(part, dict(fr.den))
        for i in sector:
            base = piece.tau(i, 1)
            rest = tuple(k for k in sector if k != i)
            for k in rest:
                base = base.mul_atom_poly(_atom(i, k, -1, -1))
                base = base.div_atom(_atom(i, k, -1, 0))
            for k in range(nvars):
                if k == i or k in rest:
                    continue
                base = base.mul_atom_poly(_atom(i, k, 0, -1))
                base = base.div_atom(_atom(i, k, 0, 0))
            base = base.dtheta(i)
            base = base.mul_poly(SuperPolynomial.x_var(i, nvars, 2))
            base = base.scale(t ** (nvars - 1))
            for j in range(nvars):
                # divide by (t x_i - x_j) = -(x_j - t x_i)
                g = base.theta_mul(j)
                g = g.div_atom(_atom(j, i, 0, 1))
                g = g.scale(-one)
                acc = acc + g
    acc = acc.scale((q - one) * (t - one) * t ** (1 - nvars))
    return acc + op_DN1_bar(fr, nvars)


def op_E1(fr, nvars):
    q = ParamRational.var(0, 2)
    one = ParamRational.one(2)
    d1 = op_DN1(fr, nvars)
    d2 = op_DN2(fr, nvars)
    return (d1 - d2).scale(q / (q - one))


def op_E2(fr, nvars):
    q = ParamRational.var(0, 2)
    t = ParamRational.var(1, 2)
    one = ParamRational.one(2)
    d1 = op_DN1_bar(fr, nvars).scale(q)
    d2 = op_DN2_bar(fr, nvars)
    out = (d1 - d2).scale((q - one).inverse())
    shift = ParamRational.zero(2)
    for i in range(1, nvars + 1):
        shift = shift + t ** (1 - i)
    return out - fr.scale(shift)


_MAC_OPS = {
    "Q1": charge_Q1,
    "Q2": charge_Q2,
    "Q3": charge_Q3,
    "Q4": charge_Q4,
    "DN1": op_DN1,
    "DN1bar": op_DN1_bar,
    "DN2": op_DN2,
    "DN2bar": op_DN2_bar,
    "E1": op_E1,
    "E2": op_E2,
}


def apply_mac_operator(f, which, nvars):
    """Apply a supercharge-built operator to an explicit superpolynomial."""
    op = _MAC_OPS[which]
    fr = op(FracSuper(f), nvars)
    try:
        return fr.to_polynomial()
    except ValueError as exc:
        raise ValueError(
            f"operator {which} left a nonzero remainder; input not symmetric?"
        ) from exc


def d_eigenvalue(lam_partition, nvars, inverse=False):
    """d_(N,lambda)(q,t) = sum q^(-lambda_i) t^(i-1)."""
    q = ParamRational.var(0, 2)
    t = ParamRational.var(1, 2)
    if inverse:
        q, t = q.inverse(), t.inverse()
    lam = tuple(lam_partition) + (0,) * (nvars - len(lam_partition))
    out = ParamRational.zero(2)
    for i in range(nvars):
        out = out + q ** (-lam[i]) * t ** i
    return out


def e1_eigenvalue(spart):
    q = ParamRational.var(0, 2)
    t = ParamRational.var(1, 2)
    star = spart.star()
    circ = spart.circled()
    out = ParamRational.zero(2)
    for i in range(len(circ)):
        s = star[i] if i < len(star) else 0
        if circ[i] != s:
            out = out + q ** (-s) * t ** i
    return out


def e2_eigenvalue(spart):
    q = ParamRational.var(0, 2)
    t = ParamRational.var(1, 2)
    one = ParamRational.one(2)
    star = spart.star()
    circ = spart.circled()
    out = ParamRational.zero(2)
    for i in range(len(circ)):
        s = star[i] if i < len(star) else 0
        if circ[i] == s:
            out = out + (q ** s - one) * t ** (-i)
    return out


# -- T_q inversion ------------------------------------------------------------------------


def swap_invert_params(f):
    """Coefficientwise q -> 1/q, t -> 1/t."""
    q = ParamRational.var(0, 2)
    t = ParamRational.var(1, 2)
    return f.map_coefficients(
        lambda c: c.substitute({0: q.inverse(), 1: t.inverse()})
    )


def tq_inversion_check(spart):
    """T_q P(q,t) = q^(|ferm|) P(1/q, 1/t)."""
    p = mac_P(spart)
    lhs = apply_tq(p)
    q = ParamRational.var(0, 2)
    rhs = swap_invert_params(p).scale(q ** sum(spart.ferm))
    return lhs == rhs


# -- norm and specializations ----------------------------------------------------------------


def norm_qt(spart):
    """q^(|ferm|) prod (q,t)-hooks over the bosonic cells."""
    q = ParamRational.var(0, 2)
    out = q ** sum(spart.ferm)
    for (i, j) in spart.bosonic_cells():
        out = out * ParamRational(spart.hook_up_qt(i, j), spart.hook_lo_qt(i, j))
    return out


def norm_qt_direct(spart):
    return family_norm(spart, "qt") * _binom2_sign(spart.m, 2)


def hook_lo_qt_product(spart):
    out = ParamPolynomial.const(1, 2)
    for (i, j) in spart.bosonic_cells():
        out = out * spart.hook_lo_qt(i, j)
    return out


def u_values(spart, nvars):
    """The u_Lambda point: x_(w(i)) = q^(-star_i) t^(i-1)."""
    q = ParamRational.var(0, 2)
    t = ParamRational.var(1, 2)
    parts = list(spart.parts(nvars))
    star = sorted(parts, reverse=True)
    slots = [None] * nvars
    used = [False] * nvars
    for rank, value in enumerate(star):
        for pos in range(nvars):
            if not used[pos] and parts[pos] == value:
                used[pos] = True
                slots[pos] = q ** (-value) * t ** rank
                break
    return slots


def specialize_u(f_m, omega, nvars):
    """f(u_Omega): project to the first fermionic sector, then substitute."""
    degs = {k.m for k in f_m.coeffs}
    if len(degs) > 1:
        raise ValueError("mixed fermionic degrees under specialization")
    m = degs.pop() if degs else 0
    expl = to_explicit(f_m, nvars)
    g = expl.theta_coefficient(tuple(range(m)))
    g = g.divide_by_vandermonde(m)
    return g.substitute_x_values(u_values(omega, nvars))


def epsilon_qt(f_m, nvars):
    degs = {k.m for k in f_m.coeffs}
    m = degs.pop() if degs else 0
    staircase = SuperPartition(tuple(range(m - 1, -1, -1)), ()) if m else SuperPartition((), ())
    return specialize_u(f_m, staircase, nvars)


def epsilon_formula(spart, nvars):
    """The product formula for P(epsilon_(q,t))."""
    q = ParamRational.var(0, 2)
    t = ParamRational.var(1, 2)
    one = ParamRational.one(2)
    m = spart.m
    circ = spart.circled()
    n_circ_delta = 0
    for i, row in enumerate(circ, start=1):
        cut = m + 1 - i if i <= m else 0
        n_circ_delta += (i - 1) * (row - cut)
    ferm = spart.ferm
    lam_pair = [ferm[i] - (m - 1 - i) for i in range(m)]
    deg_lam = sum(lam_pair)
    n_lam = sum(i * v for i, v in enumerate(lam_pair))
    num = t ** (spart.zeta() + n_circ_delta) * q ** (
        -((m - 1) * deg_lam - n_lam)
    )
    prod = ParamRational.one(2)
    for (i, j) in spart.skew_cells():
        prod = prod * (one - q ** (j - 1) * t ** (nvars - (i - 1)))
    return num * prod / ParamRational.from_poly(hook_lo_qt_product(spart))


def symmetry_check(spart_a, spart_b, nvars=None):
    """tilde-P_A(u_B) = tilde-P_B(u_A) for equal-degree superpartitions."""
    if spart_a.sector() != spart_b.sector():
        raise ValueError("symmetry check needs equal degrees")
    if nvars is None:
        nvars = max(spart_a.length(), spart_b.length(), 1)
    pa = mac_P(spart_a)
    pb = mac_P(spart_b)
    lhs = specialize_u(pa, spart_b, nvars) / epsilon_qt(pa, nvars)
    rhs = specialize_u(pb, spart_a, nvars) / epsilon_qt(pb, nvars)
    return lhs == rhs


# -- limits of the family ---------------------------------------------------------------------


def _subst_qt(f, q_to=None, t_to=None):
    assignment = {}
    if q_to is not None:
        assignment[0] = q_to
    if t_to is not None:
        assignment[1] = t_to
    return f.map_coefficients(lambda c: c.substitute_partial(assignment))


def _coeff_limit_infinity(c):
    """Value at q = t = infinity via the diagonal reciprocal substitution."""
    u = ParamRational.var(0, 1)
    g = c.substitute_partial(
        {0: u.inverse(), 1: u.inverse()}, nparams_out=1, embed={}
    )
    val = g.substitute({0: ParamRational.zero(1)})
    return ParamRational.fraction(
        val.num.const_value(), val.den.const_value(), 2
    )


def limit_qt_zero(c):
    zero = ParamRational.zero(2)
    return c.substitute_partial({0: zero, 1: zero})


def specialize_family(spart, target, jack_alpha=None):
    """Limits of P(q,t): Hall-Littlewood, monomial, elementary, Schur-type,
    and the Jack limit q = t^a, t -> 1."""
    p = mac_P(spart)
    if target == "hl":
        zero = ParamRational.zero(2)
        return p.map_coefficients(lambda c: c.substitute_partial({0: zero}))
    if target == "t1":
        one = ParamRational.one(2)
        return p.map_coefficients(lambda c: c.substitute_partial({1: one}))
    if target == "q1":
        one = ParamRational.one(2)
        return p.map_coefficients(lambda c: c.substitute_partial({0: one}))
    if target == "schur":
        return p.map_coefficients(limit_qt_zero)
    if target == "schur_bar":
        return p.map_coefficients(_coeff_limit_infinity)
    if target == "jack":
        if jack_alpha is None:
            raise ValueError("the Jack limit needs an integer exponent")
        return p.map_coefficients(lambda c: _jack_limit_coeff(c, jack_alpha))
    raise ValueError(f"unknown specialization target {target!r}")


def _poly_eval_at_one_t(p):
    total = 0
    for e, c in p.terms.items():
        total += c
    return total


def _divide_t_minus_one(p):
    """Exact division of a univariate (t) polynomial by (t - 1)."""
    t_minus = ParamPolynomial(1, {(1,): 1, (0,): -1})
    return poly_divexact(p, t_minus)


def _jack_limit_coeff(c, a):
    t1 = ParamRational.var(0, 1)
    g = c.substitute_partial({0: t1 ** a}, nparams_out=1, embed={1: 0})
    num, den = g.num, g.den
    while _poly_eval_at_one_t(num) == 0 and _poly_eval_at_one_t(den) == 0:
        num = _divide_t_minus_one(num)
        den = _divide_t_minus_one(den)
    dval = _poly_eval_at_one_t(den)
    if dval == 0:
        raise PoleError("pole in the Jack limit")
    nval = _poly_eval_at_one_t(num)
    return ParamRational.fraction(nval, dval, 1)


# -- modified Macdonalds and Kostka matrices ------------------------------------------------


@lru_cache(maxsize=None)
def schur_family(n, m, bar=False):
    """s (q=t=0) or sbar (q=t=infinity) for a whole sector, via the limits."""
    out = {}
    for lam in enumerate_sector(n, m):
        out[lam] = specialize_family(lam, "schur_bar" if bar else "schur")
    return out


def modified_macdonald(spart):
    """H = phi_t applied to the integral form h_lo * P."""
    j = mac_P(spart).scale(ParamRational.from_poly(hook_lo_qt_product(spart)))
    return convert_p_to_m(apply_phi_t(convert_m_to_p(j)))


def expand_in_schur(f_m, n, m):
    fam = schur_family(n, m)
    rest = f_m
    out = {}
    guard = 0
    while not rest.is_zero():
        guard += 1
        if guard > 10000:
            raise RuntimeError("schur expansion did not terminate")
        lead = max(rest.coeffs, key=lambda k: (k.star(), k.circled()))
        c = rest.coeffs[lead]
        out[lead] = c
        rest = rest - fam[lead].scale(c)
    return out


@lru_cache(maxsize=None)
def kostka_matrix(n, m):
    """K[omega][lambda](q,t) from the Schur expansion of the modified family."""
    sector = enumerate_sector(n, m)
    mat = {}
    for lam in sector:
        h = modified_macdonald(lam)
        col = expand_in_schur(h, n, m)
        for om, c in col.items():
            mat[(om, lam)] = c
    return mat


def positivity_check(n, m):
    """Entries must be polynomials in q, t with nonnegative coefficients."""
    failures = []
    mat = kostka_matrix(n, m)
    for (om, lam), c in mat.items():
        if not c.is_polynomial():
            failures.append(f"K[{om.to_text()},{lam.to_text()}] not polynomial")
        elif any(v < 0 for v in c.num.terms.values()):
            failures.append(f"K[{om.to_text()},{lam.to_text()}] has negative terms")
    for lam in enumerate_sector(n, m):
        if not mat.get((lam, lam), ParamRational.zero(2)).is_one():
            failures.append(f"K[{lam.to_text()},{lam.to_text()}] != 1")
    return failures


# -- dualities --------------------------------------------------------------------------------


def _swap_params_inverse(f):
    """q -> 1/t, t -> 1/q coefficientwise."""
    q = ParamRational.var(0, 2)
    t = ParamRational.var(1, 2)
    return f.map_coefficients(lambda c: c.substitute({0: t.inverse(), 1: q.inverse()}))


def _swap_params(f):
    q = ParamRational.var(0, 2)
    t = ParamRational.var(1, 2)
    return f.map_coefficients(lambda c: c.substitute({0: t, 1: q}))


def duality_qt_check(spart):
    """omega_qt P(q,t) = sign (q/t)^n Q_(conj)(1/t, 1/q)."""
    q = ParamRational.var(0, 2)
    t = ParamRational.var(1, 2)
    lhs = convert_to_m(apply_omega_qt(mac_P(spart)))
    conj = spart.conjugate()
    rhs = _swap_params_inverse(mac_Q(conj)).scale(
        _binom2_sign(spart.m, 2) * (q / t) ** spart.n
    )
    return lhs == rhs


def second_duality_check(spart):
    """rho_qt P(q,t) = t^(|conj ferm|) Q_(conj)(t,q)."""
    t = ParamRational.var(1, 2)
    lhs = convert_to_m(convert_p_to_m(apply_rho_qt(mac_P(spart))))
    conj = spart.conjugate()
    rhs = _swap_params(mac_Q(conj)).scale(t ** sum(conj.ferm))
    return lhs == rhs
