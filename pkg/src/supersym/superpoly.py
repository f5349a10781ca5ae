"""Explicit superpolynomials: N commuting variables x_i and N anticommuting
variables theta_i with ParamRational coefficients.

A term is keyed by (x-exponent tuple of length N, sorted tuple of theta
indices); reordering signs are absorbed into the coefficient at build time.
"""

from __future__ import annotations

import heapq

from .params import ParamRational


def _merge_sign(a, b):
    """Sign of sorting the concatenation of two sorted disjoint tuples."""
    inv = 0
    for x in a:
        for y in b:
            if x > y:
                inv += 1
    return -1 if inv % 2 else 1


def sort_sign(word):
    """Sign of the permutation sorting ``word`` ascending; 0 on repeats."""
    inv = 0
    n = len(word)
    for i in range(n):
        for j in range(i + 1, n):
            if word[i] == word[j]:
                return 0
            if word[i] > word[j]:
                inv += 1
    return -1 if inv % 2 else 1


class SuperPolynomial:
    __slots__ = ("nvars", "nparams", "terms")

    def __init__(self, nvars, nparams, terms=None):
        self.nvars = nvars
        self.nparams = nparams
        self.terms = {} if terms is None else {
            k: c for k, c in terms.items() if not c.is_zero()
        }

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, nvars, nparams):
        return cls(nvars, nparams, {})

    @classmethod
    def one(cls, nvars, nparams):
        key = ((0,) * nvars, ())
        return cls(nvars, nparams, {key: ParamRational.one(nparams)})

    @classmethod
    def x_var(cls, i, nvars, nparams, power=1):
        e = [0] * nvars
        e[i] = power
        return cls(nvars, nparams, {(tuple(e), ()): ParamRational.one(nparams)})

    @classmethod
    def theta_var(cls, i, nvars, nparams):
        key = ((0,) * nvars, (i,))
        return cls(nvars, nparams, {key: ParamRational.one(nparams)})

    @classmethod
    def monomial(cls, xexp, thetas, coeff):
        sign = sort_sign(thetas)
        if sign == 0:
            return cls(len(xexp), coeff.nparams, {})
        key = (tuple(xexp), tuple(sorted(thetas)))
        c = coeff if sign == 1 else -coeff
        return cls(len(xexp), coeff.nparams, {key: c})

    # -- predicates ----------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return (
            isinstance(other, SuperPolynomial)
            and self.nvars == other.nvars
            and self.terms == other.terms
        )

    def fermionic_degrees(self):
        return {len(th) for _, th in self.terms}

    # -- additive structure ----------------------------------------------------

    def __add__(self, other):
        t = dict(self.terms)
        for k, c in other.terms.items():
            s = t.get(k)
            s = c if s is None else s + c
            if s.is_zero():
                t.pop(k, None)
            else:
                t[k] = s
        return SuperPolynomial(self.nvars, self.nparams, t)

    def __neg__(self):
        return SuperPolynomial(
            self.nvars, self.nparams, {k: -c for k, c in self.terms.items()}
        )

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        if c.is_zero():
            return SuperPolynomial.zero(self.nvars, self.nparams)
        return SuperPolynomial(
            self.nvars, self.nparams, {k: v * c for k, v in self.terms.items()}
        )

    # -- multiplication ----------------------------------------------------------

    def __mul__(self, other):
        out = {}
        for (e1, t1), c1 in self.terms.items():
            for (e2, t2), c2 in other.terms.items():
                if t1 and t2 and set(t1) & set(t2):
                    continue
                sign = _merge_sign(t1, t2) if (t1 and t2) else 1
                e = tuple(a + b for a, b in zip(e1, e2))
                th = tuple(sorted(t1 + t2))
                c = c1 * c2
                if sign < 0:
                    c = -c
                key = (e, th)
                s = out.get(key)
                s = c if s is None else s + c
                if s.is_zero():
                    out.pop(key, None)
                else:
                    out[key] = s
        return SuperPolynomial(self.nvars, self.nparams, out)

    # -- derivatives ----------------------------------------------------------

    def dx(self, i):
        out = {}
        for (e, th), c in self.terms.items():
            if e[i] == 0:
                continue
            e2 = list(e)
            e2[i] -= 1
            key = (tuple(e2), th)
            s = out.get(key)
            add = c * e[i]
            s = add if s is None else s + add
            if s.is_zero():
                out.pop(key, None)
            else:
                out[key] = s
        return SuperPolynomial(self.nvars, self.nparams, out)

    def dtheta(self, i):
        """Left Grassmann derivative with respect to theta_i."""
        out = {}
        for (e, th), c in self.terms.items():
            if i not in th:
                continue
            pos = th.index(i)
            th2 = th[:pos] + th[pos + 1 :]
            key = (e, th2)
            add = c if pos % 2 == 0 else -c
            s = out.get(key)
            s = add if s is None else s + add
            if s.is_zero():
                out.pop(key, None)
            else:
                out[key] = s
        return SuperPolynomial(self.nvars, self.nparams, out)

    def theta_mul(self, i):
        """Left multiplication by theta_i."""
        out = {}
        for (e, th), c in self.terms.items():
            if i in th:
                continue
            pos = sum(1 for j in th if j < i)
            th2 = tuple(sorted(th + (i,)))
            add = c if pos % 2 == 0 else -c
            out[(e, th2)] = add
        return SuperPolynomial(self.nvars, self.nparams, out)

    def x_mul(self, i, power=1):
        out = {}
        for (e, th), c in self.terms.items():
            e2 = list(e)
            e2[i] += power
            out[(tuple(e2), th)] = c
        return SuperPolynomial(self.nvars, self.nparams, out)

    # -- variable permutations ---------------------------------------------------

    def swap_x(self, i, j):
        out = {}
        for (e, th), c in self.terms.items():
            e2 = list(e)
            e2[i], e2[j] = e2[j], e2[i]
            key = (tuple(e2), th)
            s = out.get(key)
            s = c if s is None else s + c
            if s.is_zero():
                out.pop(key, None)
            else:
                out[key] = s
        return SuperPolynomial(self.nvars, self.nparams, out)

    def apply_permutation(self, perm):
        """Diagonal action: x_i -> x_perm[i], theta_i -> theta_perm[i]."""
        out = {}
        for (e, th), c in self.terms.items():
            e2 = [0] * self.nvars
            for i, p in enumerate(e):
                e2[perm[i]] = p
            word = tuple(perm[i] for i in th)
            sign = sort_sign(word)
            key = (tuple(e2), tuple(sorted(word)))
            add = c if sign == 1 else -c
            s = out.get(key)
            s = add if s is None else s + add
            if s.is_zero():
                out.pop(key, None)
            else:
                out[key] = s
        return SuperPolynomial(self.nvars, self.nparams, out)

    def swap_diag(self, i, j):
        perm = list(range(self.nvars))
        perm[i], perm[j] = perm[j], perm[i]
        return self.apply_permutation(perm)

    def swap_theta(self, i, j):
        out = {}
        for (e, th), c in self.terms.items():
            word = tuple(j if k == i else i if k == j else k for k in th)
            sign = sort_sign(word)
            key = (e, tuple(sorted(word)))
            add = c if sign == 1 else -c
            s = out.get(key)
            s = add if s is None else s + add
            if s.is_zero():
                out.pop(key, None)
            else:
                out[key] = s
        return SuperPolynomial(self.nvars, self.nparams, out)

    # -- substitutions -------------------------------------------------------------

    def scale_x(self, i, factor):
        """x_i -> factor * x_i with factor a ParamRational."""
        out = {}
        for (e, th), c in self.terms.items():
            out[(e, th)] = c * factor ** e[i] if e[i] else c
        return SuperPolynomial(self.nvars, self.nparams, out)

    def theta_coefficient(self, thetas):
        """Coefficient of the ordered product theta_{i1}...theta_{ik}."""
        want = tuple(sorted(thetas))
        sign = sort_sign(tuple(thetas))
        out = {}
        for (e, th), c in self.terms.items():
            if th == want:
                out[(e, ())] = c if sign == 1 else -c
        return SuperPolynomial(self.nvars, self.nparams, out)

    def substitute_x_values(self, values):
        """Evaluate every x_i at a ParamRational; thetas must be absent."""
        nparams = self.nparams
        out = ParamRational.zero(nparams)
        for (e, th), c in self.terms.items():
            if th:
                raise ValueError("cannot evaluate terms with theta factors")
            term = c
            for v, p in zip(values, e):
                if p:
                    term = term * v ** p
            out = out + term
        return out

    # -- division -------------------------------------------------------------------

    def exact_div(self, divisor):
        """Exact division by a theta-free divisor; error on remainder."""
        if divisor.is_zero():
            raise ZeroDivisionError("division by zero superpolynomial")
        for (_, th) in divisor.terms:
            if th:
                raise ValueError("divisor must be free of theta variables")
        sectors = {}
        for (e, th), c in self.terms.items():
            sectors.setdefault(th, {})[e] = c
        div = {e: c for (e, _), c in divisor.terms.items()}
        elead = max(div)
        clead = div[elead]
        out = {}
        for th, num in sectors.items():
            quo = _sector_exact_div(num, div, elead, clead)
            for e, c in quo.items():
                out[(e, th)] = c
        return SuperPolynomial(self.nvars, self.nparams, out)

    def divide_by_vandermonde(self, m):
        """Exact division by prod_{i<j<m}(x_i - x_j) over the first m slots."""
        out = self
        for i in range(m):
            for j in range(i + 1, m):
                d = SuperPolynomial.x_var(i, self.nvars, self.nparams) - \
                    SuperPolynomial.x_var(j, self.nvars, self.nparams)
                out = out.exact_div(d)
        return out

    # -- misc ------------------------------------------------------------------------

    def map_coefficients(self, f):
        return SuperPolynomial(
            self.nvars, self.nparams, {k: f(c) for k, c in self.terms.items()}
        )

    def is_diagonally_symmetric(self):
        for i in range(self.nvars - 1):
            if self.swap_diag(i, i + 1) != self:
                return False
        return True

    def __repr__(self):
        if not self.terms:
            return "SuperPolynomial(0)"
        bits = []
        for (e, th), c in sorted(self.terms.items()):
            var = "".join(f"t{i+1}" for i in th)
            var += "".join(
                f"x{i+1}^{p}" if p > 1 else f"x{i+1}" for i, p in enumerate(e) if p
            )
            bits.append(f"({c.to_string()})*{var or '1'}")
        return "SuperPolynomial(" + " + ".join(bits) + ")"


def _sector_exact_div(num, div, elead, clead):
    rem = dict(num)
    quo = {}
    heap = [tuple(-x for x in e) for e in rem]
    heapq.heapify(heap)
    while heap:
        neg = heapq.heappop(heap)
        ea = tuple(-x for x in neg)
        ca = rem.get(ea)
        if ca is None:
            continue
        del rem[ea]
        eq = tuple(x - y for x, y in zip(ea, elead))
        if any(x < 0 for x in eq):
            raise ValueError("inexact division of superpolynomial")
        q = ca / clead
        quo[eq] = q
        for e2, c2 in div.items():
            if e2 == elead:
                continue
            e = tuple(x + y for x, y in zip(eq, e2))
            s = rem.get(e)
            upd = -(q * c2) if s is None else s - q * c2
            if upd.is_zero():
                rem.pop(e, None)
            else:
                if s is None:
                    heapq.heappush(heap, tuple(-x for x in e))
                rem[e] = upd
    if rem:
        raise ValueError("inexact division of superpolynomial")
    return quo


def x_diff(i, j, nvars, nparams):
    """The binomial x_i - x_j."""
    return SuperPolynomial.x_var(i, nvars, nparams) - SuperPolynomial.x_var(
        j, nvars, nparams
    )
