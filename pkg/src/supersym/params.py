"""Exact coefficient arithmetic: sparse integer polynomials in formal
parameters and their normalized ratios.

The parameter alphabet is positional: arity 0 is plain rationals, arity 1
is used for the alpha deformation, arity 2 for the (q, t) deformation.
"""

from __future__ import annotations

from math import gcd as _igcd


class PoleError(ZeroDivisionError):
    """Raised when a substitution makes a denominator vanish."""


def _grlex_key(exp):
    return (sum(exp), exp)


class ParamPolynomial:
    """Sparse multivariate polynomial over the integers.

    Terms map exponent tuples (length ``nparams``) to nonzero int
    coefficients.  Instances are immutable; all operations return new
    objects.
    """

    __slots__ = ("nparams", "terms", "_hash")

    def __init__(self, nparams, terms):
        self.nparams = nparams
        self.terms = {e: c for e, c in terms.items() if c}
        self._hash = None

    # -- constructors -------------------------------------------------

    @classmethod
    def const(cls, c, nparams):
        zero = (0,) * nparams
        return cls(nparams, {zero: int(c)} if c else {})

    @classmethod
    def var(cls, i, nparams, power=1):
        e = [0] * nparams
        e[i] = power
        return cls(nparams, {tuple(e): 1})

    # -- predicates ----------------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_const(self):
        if not self.terms:
            return True
        zero = (0,) * self.nparams
        return len(self.terms) == 1 and zero in self.terms

    def const_value(self):
        if not self.is_const():
            raise ValueError("not a constant polynomial")
        return self.terms.get((0,) * self.nparams, 0)

    def total_degree(self):
        return max((sum(e) for e in self.terms), default=0)

    def degree_in(self, i):
        return max((e[i] for e in self.terms), default=0)

    # -- ring operations -----------------------------------------------

    def __add__(self, other):
        t = dict(self.terms)
        for e, c in other.terms.items():
            s = t.get(e, 0) + c
            if s:
                t[e] = s
            else:
                t.pop(e, None)
        return ParamPolynomial(self.nparams, t)

    def __neg__(self):
        return ParamPolynomial(self.nparams, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return ParamPolynomial(self.nparams, {})
            return ParamPolynomial(
                self.nparams, {e: c * other for e, c in self.terms.items()}
            )
        t = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = t.get(e, 0) + c1 * c2
                if s:
                    t[e] = s
                else:
                    del t[e]
        return ParamPolynomial(self.nparams, t)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        out = ParamPolynomial.const(1, self.nparams)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        return (
            isinstance(other, ParamPolynomial)
            and self.nparams == other.nparams
            and self.terms == other.terms
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nparams, frozenset(self.terms.items())))
        return self._hash

    # -- leading data under graded lex ----------------------------------

    def leading_exponent(self):
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        return max(self.terms, key=_grlex_key)

    def leading_coeff(self):
        return self.terms[self.leading_exponent()]

    def int_content(self):
        g = 0
        for c in self.terms.values():
            g = _igcd(g, abs(c))
        return g

    def map_exponents(self, f):
        t = {}
        for e, c in self.terms.items():
            e2 = f(e)
            t[e2] = t.get(e2, 0) + c
        return ParamPolynomial(self.nparams, t)

    def divexact_int(self, k):
        return ParamPolynomial(self.nparams, {e: c // k for e, c in self.terms.items()})

    # -- substitution ----------------------------------------------------

    def substitute(self, assignment):
        """Substitute parameters by ParamRational values.

        ``assignment`` maps parameter index -> ParamRational (all in the
        same target arity).  Unassigned parameters must not occur.
        """
        if not assignment:
            raise ValueError("empty assignment")
        target = next(iter(assignment.values()))
        out = ParamRational.zero(target.nparams)
        for e, c in self.terms.items():
            term = ParamRational.from_int(c, target.nparams)
            for i, p in enumerate(e):
                if p == 0:
                    continue
                if i not in assignment:
                    raise ValueError(f"parameter {i} not assigned")
                term = term * assignment[i] ** p
            out = out + term
        return out

    def substitute_partial(self, assignment, nparams_out, embed):
        """Substitute some parameters, re-embedding the untouched ones.

        ``embed`` maps old parameter index -> new index for parameters not
        in ``assignment``; values in ``assignment`` are ParamRational of
        arity ``nparams_out``.
        """
        out = ParamRational.zero(nparams_out)
        for e, c in self.terms.items():
            exp = [0] * nparams_out
            term = ParamRational.from_int(c, nparams_out)
            for i, p in enumerate(e):
                if p == 0:
                    continue
                if i in assignment:
                    term = term * assignment[i] ** p
                else:
                    exp[embed[i]] += p
            mono = ParamPolynomial(nparams_out, {tuple(exp): 1})
            out = out + term * ParamRational(mono, ParamPolynomial.const(1, nparams_out))
        return out

    # -- display ---------------------------------------------------------

    def to_string(self, names=None):
        if not self.terms:
            return "0"
        if names is None:
            names = _default_names(self.nparams)
        parts = []
        for e in sorted(self.terms, key=_grlex_key, reverse=True):
            c = self.terms[e]
            factors = []
            for name, p in zip(names, e):
                if p == 1:
                    factors.append(name)
                elif p > 1:
                    factors.append(f"{name}^{p}")
            if not factors:
                body = str(abs(c))
            else:
                body = "*".join(factors)
                if abs(c) != 1:
                    body = f"{abs(c)}*{body}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"ParamPolynomial({self.to_string()})"


def _default_names(nparams):
    if nparams == 1:
        return ("alpha",)
    if nparams == 2:
        return ("q", "t")
    return tuple(f"x{i}" for i in range(nparams))


# -- gcd machinery -------------------------------------------------------


def _to_univariate(p, i):
    """View ``p`` as a dict degree-in-i -> ParamPolynomial without i."""
    out = {}
    for e, c in p.terms.items():
        d = e[i]
        rest = e[:i] + (0,) + e[i + 1 :]
        out.setdefault(d, {})[rest] = c
    return {
        d: ParamPolynomial(p.nparams, terms) for d, terms in out.items()
    }


def _from_univariate(coeffs, i):
    terms = {}
    for d, poly in coeffs.items():
        for e, c in poly.terms.items():
            e2 = list(e)
            e2[i] = d
            terms[tuple(e2)] = c
    return ParamPolynomial(
        next(iter(coeffs.values())).nparams if coeffs else 0, terms
    )


def _poly_content(p, i):
    """gcd of the coefficients of ``p`` viewed as univariate in param i."""
    g = None
    for coeff in _to_univariate(p, i).values():
        g = coeff if g is None else poly_gcd(g, coeff)
        if g.is_const() and abs(g.const_value()) == 1:
            break
    return g


def _uni_pseudo_rem(a, b, i):
    """Pseudo-remainder of a by b, both univariate in param i."""
    ua = _to_univariate(a, i)
    ub = _to_univariate(b, i)
    db = max(ub)
    lb = ub[db]
    r = dict(ua)
    dr = max(r) if r else -1
    while r and dr >= db:
        lead = r[dr]
        r = {d: c * lb for d, c in r.items()}
        for d, c in ub.items():
            d2 = d + dr - db
            cur = r.get(d2, ParamPolynomial(a.nparams, {}))
            upd = cur - lead * c
            if upd.is_zero():
                r.pop(d2, None)
            else:
                r[d2] = upd
        r = {d: c for d, c in r.items() if not c.is_zero()}
        dr = max(r) if r else -1
    if not r:
        return ParamPolynomial(a.nparams, {})
    return _from_univariate(r, i)


def poly_gcd(a, b):
    """gcd in Z[params] via content/primitive-part with a univariate core.

    Result is normalized to a positive leading coefficient in graded lex.
    """
    if a.is_zero():
        g = b
    elif b.is_zero():
        g = a
    elif a.nparams == 0:
        g = ParamPolynomial.const(
            _igcd(abs(a.const_value()), abs(b.const_value())), 0
        )
    else:
        g = _gcd_rec(a, b, a.nparams - 1)
    if g.is_zero():
        return g
    if g.terms[g.leading_exponent()] < 0:
        g = -g
    return g


def _gcd_rec(a, b, i):
    if a.is_zero():
        return b
    if b.is_zero():
        return a
    if a.degree_in(i) == 0 and b.degree_in(i) == 0:
        if i == 0:
            ca = a.int_content()
            cb = b.int_content()
            return ParamPolynomial.const(_igcd(ca, cb), a.nparams)
        return _gcd_rec(a, b, i - 1)
    ca = _poly_content(a, i)
    cb = _poly_content(b, i)
    cg = poly_gcd(ca, cb)
    pa = poly_divexact(a, ca)
    pb = poly_divexact(b, cb)
    # primitive PRS in parameter i
    if pa.degree_in(i) < pb.degree_in(i):
        pa, pb = pb, pa
    while not pb.is_zero():
        r = _uni_pseudo_rem(pa, pb, i)
        pa = pb
        if r.is_zero():
            pb = r
        else:
            pb = poly_divexact(r, _poly_content(r, i))
    return cg * pa


def poly_divexact(a, b):
    """Exact division in Z[params]; raises if the division is not exact."""
    if b.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    if a.is_zero():
        return a
    if b.is_const():
        k = b.const_value()
        out = {}
        for e, c in a.terms.items():
            q, r = divmod(c, k)
            if r:
                raise ValueError("inexact polynomial division")
            out[e] = q
        return ParamPolynomial(a.nparams, out)
    rem = dict(a.terms)
    quo = {}
    eb = b.leading_exponent()
    cb = b.terms[eb]
    while rem:
        ea = max(rem, key=_grlex_key)
        ca = rem[ea]
        eq = tuple(x - y for x, y in zip(ea, eb))
        if any(x < 0 for x in eq):
            raise ValueError("inexact polynomial division")
        q, r = divmod(ca, cb)
        if r:
            raise ValueError("inexact polynomial division")
        quo[eq] = q
        for e2, c2 in b.terms.items():
            e = tuple(x + y for x, y in zip(eq, e2))
            s = rem.get(e, 0) - q * c2
            if s:
                rem[e] = s
            else:
                rem.pop(e, None)
    return ParamPolynomial(a.nparams, quo)


class ParamRational:
    """Normalized ratio of ParamPolynomials over the same alphabet.

    Invariants: the denominator is nonzero with positive leading
    coefficient in graded lex, gcd(num, den) is 1, and zero is 0/1.
    Equal values therefore have identical representations.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den, _normalized=False):
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if not _normalized:
            num, den = _normalize(num, den)
        self.num = num
        self.den = den
        self._hash = None

    # -- constructors ----------------------------------------------------

    @classmethod
    def zero(cls, nparams):
        return cls.from_int(0, nparams)

    @classmethod
    def one(cls, nparams):
        return cls.from_int(1, nparams)

    @classmethod
    def from_int(cls, c, nparams):
        return cls(
            ParamPolynomial.const(c, nparams),
            ParamPolynomial.const(1, nparams),
            _normalized=True,
        )

    @classmethod
    def fraction(cls, a, b, nparams):
        return cls(
            ParamPolynomial.const(a, nparams), ParamPolynomial.const(b, nparams)
        )

    @classmethod
    def from_poly(cls, p):
        return cls(p, ParamPolynomial.const(1, p.nparams), _normalized=True)

    @classmethod
    def var(cls, i, nparams, power=1):
        if power >= 0:
            return cls.from_poly(ParamPolynomial.var(i, nparams, power))
        return cls(
            ParamPolynomial.const(1, nparams),
            ParamPolynomial.var(i, nparams, -power),
            _normalized=True,
        )

    # -- predicates ------------------------------------------------------

    def is_zero(self):
        return self.num.is_zero()

    def is_one(self):
        return self.num == self.den

    def is_polynomial(self):
        return self.den.is_const() and self.den.const_value() == 1

    def is_int(self, k=None):
        if not (self.num.is_const() and self.den.is_const()):
            return False
        if self.den.const_value() != 1:
            return False
        return True if k is None else self.num.const_value() == k

    @property
    def nparams(self):
        return self.num.nparams

    # -- field operations --------------------------------------------------

    def __add__(self, other):
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.den == other.den:
            return ParamRational(self.num + other.num, self.den)
        g = poly_gcd(self.den, other.den)
        if g.is_const() and g.const_value() == 1:
            return ParamRational(
                self.num * other.den + other.num * self.den, self.den * other.den
            )
        db = poly_divexact(other.den, g)
        da = poly_divexact(self.den, g)
        return ParamRational(self.num * db + other.num * da, self.den * db)

    def __neg__(self):
        return ParamRational(-self.num, self.den, _normalized=True)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            other = ParamRational.from_int(other, self.nparams)
        if self.is_zero() or other.is_zero():
            return ParamRational.zero(self.nparams)
        g1 = poly_gcd(self.num, other.den)
        g2 = poly_gcd(other.num, self.den)
        n1 = self.num if g1.is_const() and g1.const_value() == 1 else poly_divexact(self.num, g1)
        d2 = other.den if g1.is_const() and g1.const_value() == 1 else poly_divexact(other.den, g1)
        n2 = other.num if g2.is_const() and g2.const_value() == 1 else poly_divexact(other.num, g2)
        d1 = self.den if g2.is_const() and g2.const_value() == 1 else poly_divexact(self.den, g2)
        return ParamRational(n1 * n2, d1 * d2)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational")
        return self * ParamRational(other.den, other.num)

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return ParamRational(self.den, self.num)

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        out = ParamRational.one(self.nparams)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        return (
            isinstance(other, ParamRational)
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    # -- substitution and limits -------------------------------------------

    def substitute(self, assignment):
        """Full substitution of every parameter by a ParamRational."""
        num = self.num.substitute(assignment)
        den = self.den.substitute(assignment)
        if den.is_zero():
            raise PoleError(f"pole at substitution of {self.to_string()}")
        return num / den

    def substitute_partial(self, assignment, nparams_out=None, embed=None):
        """Substitute a subset of parameters (e.g. q only)."""
        if nparams_out is None:
            nparams_out = self.nparams
        if embed is None:
            embed = {i: i for i in range(self.nparams)}
        num = self.num.substitute_partial(assignment, nparams_out, embed)
        den = self.den.substitute_partial(assignment, nparams_out, embed)
        if den.is_zero():
            raise PoleError(f"pole at substitution of {self.to_string()}")
        return num / den

    def evaluate_rational(self, values):
        """Evaluate at integer-fraction points given as (a, b) pairs."""
        from fractions import Fraction

        def ev(p):
            out = Fraction(0)
            for e, c in p.terms.items():
                t = Fraction(c)
                for (a, b), pw in zip(values, e):
                    t *= Fraction(a, b) ** pw
                out += t
            return out

        den = ev(self.den)
        if den == 0:
            raise PoleError(f"pole evaluating {self.to_string()}")
        return ev(self.num) / den

    def limit_at_infinity(self):
        """Limit as every parameter tends to infinity along the diagonal.

        Implemented by the reciprocal substitution u = 1/param followed by
        evaluation at u = 0; degrees decide the outcome.
        """
        dn = self.num.total_degree()
        dd = self.den.total_degree()
        if dn > dd:
            raise PoleError("divergent limit at infinity")
        if dn < dd:
            return ParamRational.zero(self.nparams)
        top = lambda p, d: ParamPolynomial(
            p.nparams, {e: c for e, c in p.terms.items() if sum(e) == d}
        )
        return ParamRational(top(self.num, dn), top(self.den, dd))

    # -- display -------------------------------------------------------------

    def to_string(self, names=None):
        if self.is_polynomial():
            return self.num.to_string(names)
        ns = self.num.to_string(names)
        ds = self.den.to_string(names)
        if len(self.num.terms) > 1:
            ns = f"({ns})"
        if len(self.den.terms) > 1:
            ds = f"({ds})"
        return f"{ns}/{ds}"

    def __repr__(self):
        return f"ParamRational({self.to_string()})"


def _normalize(num, den):
    if num.is_zero():
        return num, ParamPolynomial.const(1, num.nparams)
    g = poly_gcd(num, den)
    if not (g.is_const() and g.const_value() == 1):
        num = poly_divexact(num, g)
        den = poly_divexact(den, g)
    if den.terms[den.leading_exponent()] < 0:
        num, den = -num, -den
    return num, den


def rat_normalize(num, den):
    """Spec entry point: canonical reduced form of num/den."""
    return ParamRational(num, den)
