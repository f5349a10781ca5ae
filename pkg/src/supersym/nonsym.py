"""Non-symmetric Jack and Macdonald polynomials and their operator algebra:
Dunkl and Cherednik operators, the Hecke action, Bruhat order on
compositions, and the symmetrization maps back to superspace.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import permutations

from .params import ParamRational
from .superpoly import SuperPolynomial, x_diff
from .superpartition import SuperPartition, partition_dominates
from .expansion import SymExpansion, collect_explicit


# -- compositions ------------------------------------------------------------------


def comp_sorted(eta):
    return tuple(sorted(eta, reverse=True))


def comp_degree(eta):
    return sum(eta)


def min_perm(eta):
    """Minimal-length w with eta = w . sorted(eta); w[i] is the slot of
    the i-th entry of the sorted word, ties assigned left to right."""
    order = sorted(range(len(eta)), key=lambda i: (-eta[i], i))
    w = [0] * len(eta)
    for rank, slot in enumerate(order):
        w[rank] = slot
    return tuple(w)


def perm_bruhat_leq(u, v):
    """Strong Bruhat order via the rank-matrix criterion."""
    n = len(u)
    for i in range(1, n):
        su = sorted(u[:i], reverse=True)
        sv = sorted(v[:i], reverse=True)
        for a, b in zip(su, sv):
            if a > b:
                return False
    return True


def bruhat_less(nu, eta):
    """nu strictly precedes eta in the Bruhat order on compositions."""
    if len(nu) != len(eta) or comp_degree(nu) != comp_degree(eta):
        raise ValueError("compositions must share length and degree")
    if nu == eta:
        return False
    np_, ep = comp_sorted(nu), comp_sorted(eta)
    if np_ != ep:
        return partition_dominates(ep, np_)
    wn, we = min_perm(nu), min_perm(eta)
    return wn != we and perm_bruhat_leq(wn, we)


def eta_hat(eta, i):
    """The arm count entering the Dunkl/Cherednik eigenvalues.

    Ties are resolved oppositely to the printed count: earlier equal
    entries do not contribute, later equal ones do.  This is the reading
    under which x^eta with eta a partition-sorted composition carries the
    stated spectrum in the standard Bruhat orientation.
    """
    return sum(1 for j in range(i) if eta[j] > eta[i]) + sum(
        1 for j in range(i + 1, len(eta)) if eta[j] >= eta[i]
    )


def bruhat_lower_set(eta):
    """All compositions strictly below eta, plus eta itself, Bruhat-sorted
    descending (eta first)."""
    n = len(eta)
    ep = comp_sorted(eta)
    out = [eta]
    seen = {eta}
    from .superpartition import partitions

    for lam in partitions(comp_degree(eta)):
        if len(lam) > n:
            continue
        lam_p = tuple(lam) + (0,) * (n - len(lam))
        if not partition_dominates(ep, tuple(lam)):
            continue
        for nu in set(permutations(lam_p)):
            if nu in seen:
                continue
            if bruhat_less(nu, eta):
                out.append(nu)
                seen.add(nu)
    head, tail = out[0], out[1:]
    tail.sort(key=lambda nu: (comp_sorted(nu), min_perm(nu)), reverse=True)
    return [head] + tail


# -- operators on explicit polynomials ------------------------------------------------


def dunkl(f, i, nvars):
    """Dunkl-type operator D_{i+1} acting on a (super)polynomial.

    The displayed operator is written for reversed variable indexing; this
    is its conjugate under x_k -> x_{N+1-k}, the form that is triangular in
    the standard Bruhat orientation with x^eta leading.  Exchange operators
    act on the x variables only; on symmetric superpolynomial input the
    literal action realizes the projected operator.
    """
    alpha = ParamRational.var(0, 1)
    out = f.dx(i).x_mul(i).scale(alpha)
    for j in range(nvars):
        if j == i:
            continue
        diff = f - f.swap_x(i, j)
        quot = diff.exact_div(x_diff(i, j, nvars, f.nparams))
        out = out + quot.x_mul(j if j < i else i)
    c = (i + 1) - nvars
    if c:
        out = out + f.scale(ParamRational.from_int(c, f.nparams))
    return out


def demazure_lusztig(f, i, nvars):
    """T_i = t + (t x_i - x_{i+1})/(x_i - x_{i+1}) (K_i - 1)."""
    t = ParamRational.var(1, 2)
    diff = f.swap_x(i, i + 1) - f
    quot = diff.exact_div(x_diff(i, i + 1, nvars, 2))
    return f.scale(t) + quot.x_mul(i).scale(t) - quot.x_mul(i + 1)


def demazure_lusztig_inv(f, i, nvars):
    t = ParamRational.var(1, 2)
    one = ParamRational.one(2)
    return demazure_lusztig(f, i, nvars).scale(t.inverse()) + f.scale(
        t.inverse() - one
    )


def q_shift(f, i, power=1):
    q = ParamRational.var(0, 2)
    return f.scale_x(i, q ** power)


def omega_op(f, nvars):
    """The cycling operator K_{N-1} ... K_1 tau_1."""
    out = q_shift(f, 0)
    for i in range(nvars - 1):
        out = out.swap_x(i, i + 1)
    return out


def _reverse_vars(f):
    n = f.nvars
    return f.apply_permutation(tuple(n - 1 - i for i in range(n)))


def cherednik_displayed(f, i, nvars):
    """Y_{i+1} = t^(i+1-N) T_{i+1} ... T_{N-1} omega T_1^{-1} ... T_i^{-1}.

    Factors act right to left, so the inverse generators apply in
    descending index order before omega.
    """
    t = ParamRational.var(1, 2)
    out = f
    for j in range(i - 1, -1, -1):
        out = demazure_lusztig_inv(out, j, nvars)
    out = omega_op(out, nvars)
    for j in range(nvars - 2, i - 1, -1):
        out = demazure_lusztig(out, j, nvars)
    return out.scale(t ** (i + 1 - nvars))


def cherednik(f, i, nvars):
    """The Cherednik operator in the standard Bruhat orientation.

    Conjugate of the displayed tower under variable reversal, matching the
    Dunkl convention above.
    """
    return _reverse_vars(cherednik_displayed(_reverse_vars(f), nvars - 1 - i, nvars))


def x_monomial(eta, nparams):
    return SuperPolynomial(
        len(eta), nparams, {(tuple(eta), ()): ParamRational.one(nparams)}
    )


# -- the non-symmetric polynomials -----------------------------------------------------


class NonSymPoly:
    """Triangular expansion of E_eta over x monomials."""

    __slots__ = ("family", "eta", "coeffs")

    def __init__(self, family, eta, coeffs):
        self.family = family
        self.eta = eta
        self.coeffs = coeffs

    def to_superpoly(self):
        nparams = 1 if self.family == "jack" else 2
        terms = {
            (tuple(nu), ()): c for nu, c in self.coeffs.items() if not c.is_zero()
        }
        return SuperPolynomial(len(self.eta), nparams, terms)


def _jack_eigenvalue(eta, i):
    alpha = ParamRational.var(0, 1)
    return alpha * ParamRational.from_int(eta[i], 1) - ParamRational.from_int(
        eta_hat(eta, i), 1
    )


def _mac_eigenvalue(eta, i):
    q = ParamRational.var(0, 2)
    t = ParamRational.var(1, 2)
    return q ** eta[i] * t ** (-eta_hat(eta, i))


_GENERIC_COEFFS = (1, 3, 17, 86, 433, 2111, 10007, 48817, 238849, 1171777)


@lru_cache(maxsize=10000)
def nonsym_poly(family, eta):
    """E_eta by a triangular solve against a generic diagonal combination.

    The defining eigen-relations for every individual operator are asserted
    afterwards for the Jack family (and can be asserted for Macdonald via
    ``check_eigen_relations``).
    """
    nvars = len(eta)
    nparams = 1 if family == "jack" else 2
    lower = bruhat_lower_set(eta)
    coeffs_generic = _GENERIC_COEFFS[:nvars]

    def gen_op(f):
        out = SuperPolynomial.zero(nvars, nparams)
        for i, c in enumerate(coeffs_generic):
            ci = ParamRational.from_int(c, nparams)
            if family == "jack":
                out = out + dunkl(f, i, nvars).scale(ci)
            else:
                out = out + cherednik(f, i, nvars).scale(ci)
        return out

    def gen_eig(nu):
        out = ParamRational.zero(nparams)
        for i, c in enumerate(coeffs_generic):
            ev = _jack_eigenvalue(nu, i) if family == "jack" else _mac_eigenvalue(nu, i)
            out = out + ev * ParamRational.from_int(c, nparams)
        return out

    index = {nu: k for k, nu in enumerate(lower)}
    columns = {}
    for nu in lower:
        img = gen_op(x_monomial(nu, nparams))
        col = {}
        for (xe, _), c in img.terms.items():
            if xe not in index:
                if not c.is_zero():
                    raise RuntimeError(
                        f"operator not Bruhat-triangular at {nu}: escaped to {xe}"
                    )
                continue
            col[xe] = c
        columns[nu] = col

    lam_eta = gen_eig(eta)
    sol = {eta: ParamRational.one(nparams)}
    for nu in lower[1:]:
        acc = ParamRational.zero(nparams)
        for mu, c in sol.items():
            v = columns[mu].get(nu)
            if v is not None:
                acc = acc + c * v
        lam_nu = gen_eig(nu)
        denom = lam_eta - lam_nu
        if denom.is_zero():
            raise RuntimeError(f"generic eigenvalue collision between {eta} and {nu}")
        diag = columns[nu].get(nu)
        if diag is None or diag != lam_nu:
            raise RuntimeError(f"diagonal mismatch for {nu}")
        c_nu = acc / denom
        if not c_nu.is_zero():
            sol[nu] = c_nu
    return NonSymPoly(family, eta, sol)


def check_eigen_relations(poly):
    """Assert every Dunkl/Cherednik eigen-relation on a built E_eta."""
    nvars = len(poly.eta)
    f = poly.to_superpoly()
    for i in range(nvars):
        if poly.family == "jack":
            img = dunkl(f, i, nvars)
            ev = _jack_eigenvalue(poly.eta, i)
        else:
            img = cherednik(f, i, nvars)
            ev = _mac_eigenvalue(poly.eta, i)
        if img != f.scale(ev):
            return False
    return True


# -- Hecke symmetrizers -----------------------------------------------------------------


def _perm_length(p):
    n = len(p)
    return sum(1 for i in range(n) for j in range(i + 1, n) if p[i] > p[j])


def hecke_orbit(f, index_range, nvars):
    """Images T_sigma f for sigma over the symmetric group of the block.

    ``index_range`` lists the adjacent-transposition labels of a contiguous
    block, so the block has one more letter than generators.  Returns a dict
    permutation -> (length, image); built along weak order so every T_sigma
    uses one reduced word (well-definedness is a test).
    """
    base = tuple(range(len(index_range) + 1))
    images = {base: (0, f)}
    frontier = [base]
    while frontier:
        nxt = []
        for p in frontier:
            lp, img = images[p]
            for a, gen in enumerate(index_range):
                q = list(p)
                q[a], q[a + 1] = q[a + 1], q[a]
                q = tuple(q)
                if _perm_length(q) != lp + 1 or q in images:
                    continue
                images[q] = (lp + 1, demazure_lusztig(img, gen, nvars))
                nxt.append(q)
        frontier = nxt
    return images


def hecke_symmetrizer(f, index_range, sign, nvars):
    """U^+ (sign=+1) or U^- (sign=-1) over a contiguous index range."""
    t = ParamRational.var(1, 2)
    out = SuperPolynomial.zero(nvars, 2)
    for _, (lp, img) in hecke_orbit(f, index_range, nvars).items():
        if sign > 0:
            out = out + img
        else:
            factor = (-(t.inverse())) ** lp
            out = out + img.scale(factor)
    return out


# -- symmetrization to superspace ----------------------------------------------------------


def reversed_composition(spart, nvars):
    """Lambda^R: reversed fermionic entries then reversed padded bosonic."""
    parts = spart.parts(nvars)
    m = spart.m
    return tuple(reversed(parts[:m])) + tuple(reversed(parts[m:]))


def nonsym_for_symmetrization(family, spart, nvars):
    """E_{Lambda^R} in the displayed orientation.

    The symmetrization identities are written for operators indexed in
    reverse, so the required eigpolynomial is the variable reversal of the
    standard-orientation E at the reversed composition.
    """
    eta_displayed = reversed_composition(spart, nvars)
    eta_std = tuple(reversed(eta_displayed))
    return _reverse_vars(nonsym_poly(family, eta_std).to_superpoly())


def _theta_prefix(f, m):
    out = f
    for i in range(m - 1, -1, -1):
        out = out.theta_mul(i)
    return out


def symmetrize_jack(spart, nvars):
    """(sJJJvsEEE): the super-Jack from the non-symmetric Jack E_{Lambda^R}."""
    from .expansion import aut_order

    m = spart.m
    e = nonsym_for_symmetrization("jack", spart, nvars)
    dressed = _theta_prefix(e, m)
    acc = SuperPolynomial.zero(nvars, 1)
    for perm in permutations(range(nvars)):
        acc = acc + dressed.apply_permutation(perm)
    sign = -1 if (m * (m - 1) // 2) % 2 else 1
    scale = ParamRational.fraction(sign, aut_order(spart.bos), 1)
    return collect_explicit(acc.scale(scale))


def symmetrize_macdonald(spart, nvars):
    """Hecke-dressed symmetrization of E_{Lambda^R}, unit leading monomial."""
    m = spart.m
    e = nonsym_for_symmetrization("mac", spart, nvars)
    g = hecke_symmetrizer(e, list(range(m, nvars - 1)), +1, nvars)
    g = hecke_symmetrizer(g, list(range(0, m - 1)), -1, nvars)
    t = ParamRational.var(1, 2)
    vial = SuperPolynomial.one(nvars, 2)
    for i in range(m):
        for j in range(i + 1, m):
            vial = vial * (
                SuperPolynomial.x_var(i, nvars, 2) - SuperPolynomial.x_var(j, nvars, 2)
            )
    dressed = _theta_prefix(vial * g, m)
    denom_all = SuperPolynomial.one(nvars, 2)
    pair_factors = {}
    for i in range(nvars):
        for j in range(nvars):
            if i != j:
                fac = SuperPolynomial.x_var(i, nvars, 2).scale(t) - SuperPolynomial.x_var(
                    j, nvars, 2
                )
                pair_factors[(i, j)] = fac
                denom_all = denom_all * fac
    acc = SuperPolynomial.zero(nvars, 2)
    for perm in permutations(range(nvars)):
        img = dressed.apply_permutation(perm)
        cof = SuperPolynomial.one(nvars, 2)
        skip_ordered = {(perm[i], perm[j]) for i in range(m) for j in range(i + 1, m)}
        for key, fac in pair_factors.items():
            if key not in skip_ordered:
                cof = cof * fac
        acc = acc + img * cof
    quot = acc.exact_div(denom_all)
    exp = collect_explicit(quot)
    lead = exp.coefficient(spart)
    if lead.is_zero():
        raise RuntimeError(f"symmetrization of {spart} lost its leading term")
    return exp.scale(lead.inverse())


def symmetrize_to_super(family, spart, nvars):
    if family == "jack":
        return symmetrize_jack(spart, nvars)
    if family == "mac":
        return symmetrize_macdonald(spart, nvars)
    raise ValueError(f"unknown family {family!r}")


# -- conserved towers from e_r of the Cherednik operators -----------------------------------


def conserved_tower(spart, nvars, r, which, mac_poly_m):
    """Apply an e_r(Y)-type conserved operator to P_spart and return the
    verified eigenvalue.

    ``mac_poly_m`` is the monomial expansion of the Macdonald
    superpolynomial; ``which`` selects the plain or q-dressed tower.
    """
    from itertools import combinations
    from .expansion import to_explicit

    q = ParamRational.var(0, 2)
    t = ParamRational.var(1, 2)
    m = spart.m
    f = to_explicit(mac_poly_m, nvars)
    w = f.theta_coefficient(tuple(range(m)))
    w = w.divide_by_vandermonde(m)
    for i in range(m):
        for j in range(i + 1, m):
            w = w * (
                SuperPolynomial.x_var(i, nvars, 2).scale(t)
                - SuperPolynomial.x_var(j, nvars, 2)
            )
    acc = SuperPolynomial.zero(nvars, 2)
    for subset in combinations(range(nvars), r):
        img = w
        for i in subset:
            img = cherednik_displayed(img, i, nvars)
            if which == "second" and i < m:
                img = img.scale(q)
        acc = acc + img
    for i in range(m):
        for j in range(i + 1, m):
            acc = acc.exact_div(
                SuperPolynomial.x_var(i, nvars, 2).scale(t)
                - SuperPolynomial.x_var(j, nvars, 2)
            )
    vand = SuperPolynomial.one(nvars, 2)
    for i in range(m):
        for j in range(i + 1, m):
            vand = vand * x_diff(i, j, nvars, 2)
    acc = acc * vand
    dressed = _theta_prefix(acc, m)
    total = SuperPolynomial.zero(nvars, 2)
    for perm in permutations(range(nvars)):
        total = total + dressed.apply_permutation(perm)
    sym = collect_explicit(total)
    base = collect_explicit(
        _sum_sn_orbit(_theta_prefix(f.theta_coefficient(tuple(range(m))), m), nvars)
    )
    lead = sym.coefficient(spart)
    blead = base.coefficient(spart)
    eig = lead / blead
    if sym != base.scale(eig):
        raise RuntimeError(f"tower image of {spart} is not proportional to P")
    return eig


def _sum_sn_orbit(f, nvars):
    out = SuperPolynomial.zero(nvars, f.nparams)
    for perm in permutations(range(nvars)):
        out = out + f.apply_permutation(perm)
    return out


def tower_eigenvalue(spart, nvars, r, which):
    """e_r evaluated on the inverse-parameter spectral vector of the tower."""
    from itertools import combinations

    q = ParamRational.var(0, 2)
    t = ParamRational.var(1, 2)
    lam = spart.star() if which == "first" else spart.circled()
    lam = tuple(lam) + (0,) * (nvars - len(lam))
    vals = [q ** lam[i] * t ** (-(i)) for i in range(nvars)]
    out = ParamRational.zero(2)
    for subset in combinations(range(nvars), r):
        term = ParamRational.one(2)
        for i in subset:
            term = term * vals[i]
        out = out + term
    return out


# -- operator words and the kappa projection -------------------------------------------------
#
# A word is a tuple of primitive factors applied right to left:
#   ("mul", num, den)  multiply by num/den (theta-free superpolynomials)
#   ("dx", i)          partial derivative
#   ("K", i, j)        exchange of x_i and x_j
#   ("kappa", i, j)    exchange of theta_i and theta_j
#   ("theta", i)       left multiplication by theta_i
#   ("dtheta", i)      left Grassmann derivative
# An operator is a list of (ParamRational coefficient, word) summands.


def word_normal_order(word):
    """Move every K factor to the right end, conjugating what it crosses."""
    word = list(word)
    changed = True
    while changed:
        changed = False
        for k in range(len(word) - 1):
            a, b = word[k], word[k + 1]
            if a[0] != "K" or b[0] == "K":
                continue
            i, j = a[1], a[2]

            def sw(x):
                return j if x == i else i if x == j else x

            if b[0] == "mul":
                nb = ("mul", b[1].swap_x(i, j), b[2].swap_x(i, j))
            elif b[0] == "dx":
                nb = ("dx", sw(b[1]))
            elif b[0] in ("theta", "dtheta"):
                nb = (b[0], b[1])
            elif b[0] == "kappa":
                nb = b
            else:
                raise ValueError(f"unknown factor {b!r}")
            word[k], word[k + 1] = nb, a
            changed = True
    return tuple(word)


def project_kappa(operator):
    """Replace right-normal-ordered K factors by their theta realization."""
    out = []
    for coeff, word in operator:
        word = word_normal_order(word)
        new = tuple(
            ("kappa", f[1], f[2]) if f[0] == "K" else f for f in word
        )
        out.append((coeff, new))
    return out


def apply_word(word, f):
    """Evaluate a word on a superpolynomial, tracking a common denominator."""
    num = f
    den = SuperPolynomial.one(f.nvars, f.nparams)
    for factor in reversed(word):
        kind = factor[0]
        if kind == "mul":
            num = num * factor[1]
            den = den * factor[2]
        elif kind == "dx":
            i = factor[1]
            num = num.dx(i) * den - num * den.dx(i)
            den = den * den
        elif kind == "K":
            num = num.swap_x(factor[1], factor[2])
            den = den.swap_x(factor[1], factor[2])
        elif kind == "kappa":
            num = num.swap_theta(factor[1], factor[2])
        elif kind == "theta":
            num = num.theta_mul(factor[1])
        elif kind == "dtheta":
            num = num.dtheta(factor[1])
        else:
            raise ValueError(f"unknown factor {factor!r}")
    return num, den


def apply_operator(operator, f, master_den=None):
    """Evaluate a sum of words; the result must be polynomial.

    ``master_den`` is a common multiple of every word denominator; without
    it the denominators are accumulated pairwise.
    """
    if master_den is not None:
        total = SuperPolynomial.zero(f.nvars, f.nparams)
        for coeff, word in operator:
            num, den = apply_word(word, f)
            if num.is_zero():
                continue
            total = total + (num * master_den.exact_div(den)).scale(coeff)
        return total.exact_div(master_den)
    total_num = SuperPolynomial.zero(f.nvars, f.nparams)
    total_den = SuperPolynomial.one(f.nvars, f.nparams)
    for coeff, word in operator:
        num, den = apply_word(word, f)
        total_num = total_num * den + num.scale(coeff) * total_den
        total_den = total_den * den
    return total_num.exact_div(total_den)


def vandermonde_power(nvars, nparams, r):
    out = SuperPolynomial.one(nvars, nparams)
    for i in range(nvars):
        for j in range(i + 1, nvars):
            for _ in range(r):
                out = out * x_diff(i, j, nvars, nparams)
    return out


def dunkl_word(i, nvars, nparams=1):
    """The Dunkl operator D_{i+1} as an operator expression."""
    alpha = ParamRational.var(0, 1)
    one = SuperPolynomial.one(nvars, nparams)
    terms = [
        (alpha, (("mul", SuperPolynomial.x_var(i, nvars, nparams), one), ("dx", i))),
    ]
    if i + 1 - nvars:
        terms.append((ParamRational.from_int(i + 1 - nvars, nparams), ()))
    for j in range(nvars):
        if j == i:
            continue
        top = SuperPolynomial.x_var(j if j < i else i, nvars, nparams)
        bot = x_diff(i, j, nvars, nparams)
        terms.append((ParamRational.one(nparams), (("mul", top, bot),)))
        terms.append(
            (
                ParamRational.from_int(-1, nparams),
                (("mul", top, bot), ("K", i, j)),
            )
        )
    return terms


def compose_operators(a, b):
    return [(ca * cb, wa + wb) for ca, wa in a for cb, wb in b]


def operator_power(op, r):
    out = [(ParamRational.one(op[0][0].nparams if op else 1), ())]
    for _ in range(r):
        out = compose_operators(out, op)
    return out


def hr_operator(r, nvars):
    """H_r: the kappa projection of sum_i D_i^r."""
    out = []
    for i in range(nvars):
        out.extend(operator_power(dunkl_word(i, nvars), r))
    return project_kappa(out)


def is_operator(s, nvars):
    """I_s: the kappa projection of sum_i theta_i dtheta_i D_i^s."""
    out = []
    for i in range(nvars):
        word = operator_power(dunkl_word(i, nvars), s)
        dressed = [
            (c, (("theta", i), ("dtheta", i)) + w) for c, w in word
        ]
        out.extend(dressed)
    return project_kappa(out)
