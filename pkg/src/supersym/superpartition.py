"""Superpartitions: the label set for symmetric superfunctions.

A superpartition pairs a strictly decreasing fermionic part (last entry may
be zero) with an ordinary partition.  The equivalent star/circled picture
and its diagram statistics live here too.
"""

from __future__ import annotations

from functools import lru_cache

from .params import ParamPolynomial


class SuperPartitionError(ValueError):
    pass


def _is_strict_desc(seq):
    return all(a > b for a, b in zip(seq, seq[1:]))


def _is_weak_desc(seq):
    return all(a >= b for a, b in zip(seq, seq[1:]))


def partition_conjugate(lam):
    if not lam:
        return ()
    out = []
    for j in range(1, lam[0] + 1):
        out.append(sum(1 for x in lam if x >= j))
    return tuple(out)


def partition_dominates(lam, mu):
    """lam >= mu in dominance; both must have equal weight."""
    s1 = s2 = 0
    for k in range(max(len(lam), len(mu))):
        s1 += lam[k] if k < len(lam) else 0
        s2 += mu[k] if k < len(mu) else 0
        if s1 < s2:
            return False
    return True

def partition_contains(lam, mu):
    """mu subseteq lam entrywise."""
    for k, x in enumerate(mu):
        if x > (lam[k] if k < len(lam) else 0):
            return False
    return True


def partitions(n, max_part=None):
    """All partitions of n with parts bounded by max_part, lex-descending."""
    if max_part is None:
        max_part = n
    if n == 0:
        return [()]
    out = []
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions(n - first, first):
            out.append((first,) + rest)
    return out


class SuperPartition:
    """Immutable superpartition (Lambda^a; Lambda^s)."""

    __slots__ = ("ferm", "bos", "_hash")

    def __init__(self, ferm, bos):
        ferm = tuple(int(x) for x in ferm)
        bos = tuple(int(x) for x in bos)
        if any(x < 0 for x in ferm):
            raise SuperPartitionError("fermionic parts must be nonnegative")
        if not _is_strict_desc(ferm):
            raise SuperPartitionError("fermionic part must be strictly decreasing")
        if any(x <= 0 for x in bos):
            raise SuperPartitionError("bosonic parts must be positive")
        if not _is_weak_desc(bos):
            raise SuperPartitionError("bosonic part must be weakly decreasing")
        self.ferm = ferm
        self.bos = bos
        self._hash = hash((ferm, bos))

    # -- basic data -----------------------------------------------------------

    @property
    def m(self):
        return len(self.ferm)

    @property
    def n(self):
        return sum(self.ferm) + sum(self.bos)

    def sector(self):
        return (self.n, self.m)

    def length(self):
        return len(self.ferm) + len(self.bos)

    def parts(self, nslots=None):
        """The entries as written, zero-padded to ``nslots`` if given."""
        out = list(self.ferm) + list(self.bos)
        if nslots is not None:
            if nslots < len(out):
                raise SuperPartitionError("too few slots for this superpartition")
            out += [0] * (nslots - len(out))
        return tuple(out)

    def __eq__(self, other):
        return (
            isinstance(other, SuperPartition)
            and self.ferm == other.ferm
            and self.bos == other.bos
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"SuperPartition({self.to_text()})"

    # -- text and JSON forms ------------------------------------------------------

    def to_text(self):
        a = ",".join(str(x) for x in self.ferm)
        s = ",".join(str(x) for x in self.bos)
        return f"({a};{s})"

    @classmethod
    def from_text(cls, text):
        t = text.strip()
        if not (t.startswith("(") and t.endswith(")")):
            raise SuperPartitionError(f"malformed superpartition text: {text!r}")
        body = t[1:-1]
        if ";" not in body:
            raise SuperPartitionError(f"missing ';' in superpartition: {text!r}")
        a, s = body.split(";", 1)
        parse = lambda side: tuple(
            int(tok) for tok in side.split(",") if tok.strip() != ""
        )
        try:
            return cls(parse(a), parse(s))
        except ValueError as exc:
            raise SuperPartitionError(str(exc)) from exc

    def to_json(self):
        return {"a": list(self.ferm), "s": list(self.bos)}

    @classmethod
    def from_json(cls, obj):
        return cls(tuple(obj["a"]), tuple(obj["s"]))

    # -- star / circled description ----------------------------------------------

    def star(self):
        return tuple(
            sorted((x for x in self.ferm + self.bos if x > 0), reverse=True)
        )

    def circled(self):
        raised = tuple(x + 1 for x in self.ferm)
        return tuple(sorted(raised + self.bos, reverse=True))

    def star_rows(self):
        """Row lengths of the star diagram aligned with circled rows."""
        circ = self.circled()
        return tuple(
            circ[i] - (1 if i in self.fermionic_rows() else 0)
            for i in range(len(circ))
        )

    @lru_cache(maxsize=None)
    def _row_data(self):
        """Rows of the superdiagram: list of (star length, fermionic flag).

        Rows follow the circled diagram; a fermionic row ends in a circle.
        Ties sort box-rows above circle-rows of the same star length, which
        reproduces the unique valid diagram.
        """
        rows = [(x, True) for x in self.ferm] + [(x, False) for x in self.bos]
        rows.sort(key=lambda r: (r[0] + (1 if r[1] else 0), r[0]), reverse=True)
        return tuple(rows)

    def fermionic_rows(self):
        return frozenset(
            i for i, (_, f) in enumerate(self._row_data()) if f
        )

    def fermionic_columns(self):
        cols = []
        for i, (star, f) in enumerate(self._row_data()):
            if f:
                cols.append(star + 1)
        return frozenset(cols)

    def conjugate(self):
        star_c = partition_conjugate(self.star())
        circ_c = partition_conjugate(self.circled())
        return SuperPartition.from_star_circled(star_c, circ_c)

    @classmethod
    def from_star_circled(cls, star, circled):
        star = tuple(x for x in star if x > 0)
        circled = tuple(x for x in circled if x > 0)
        ls, lc = len(star), len(circled)
        if lc < ls:
            raise SuperPartitionError("circled shorter than star")
        ferm, bos = [], []
        for i in range(lc):
            s = star[i] if i < ls else 0
            c = circled[i]
            if c == s:
                bos.append(s)
            elif c == s + 1:
                ferm.append(s)
            else:
                raise SuperPartitionError("circled/star differ by more than one box")
        try:
            sp = cls(tuple(ferm), tuple(x for x in bos if x > 0))
        except SuperPartitionError as exc:
            raise SuperPartitionError(f"invalid star/circled pair: {exc}") from exc
        if sp.star() != star or sp.circled() != circled:
            raise SuperPartitionError("pair violates the m-strip condition")
        return sp

    # -- orders ----------------------------------------------------------------------

    def compare(self, other):
        """Dominance comparison: 'eq', 'le', 'ge' or 'incomparable'."""
        if self == other:
            return "eq"
        if self.sector() != other.sector():
            return "incomparable"
        ge = partition_dominates(self.star(), other.star()) and partition_dominates(
            self.circled(), other.circled()
        )
        le = partition_dominates(other.star(), self.star()) and partition_dominates(
            other.circled(), self.circled()
        )
        if ge:
            return "ge"
        if le:
            return "le"
        return "incomparable"

    def dominates(self, other):
        return self.compare(other) in ("eq", "ge")

    def leq(self, other):
        return self.compare(other) in ("eq", "le")

    def includes(self, other):
        """other subseteq self in the star and circled pictures."""
        return partition_contains(self.star(), other.star()) and partition_contains(
            self.circled(), other.circled()
        )

    # -- diagram statistics --------------------------------------------------------

    def cells_star(self):
        return [
            (i + 1, j + 1)
            for i, row in enumerate(self.star())
            for j in range(row)
        ]

    def cells_circled(self):
        return [
            (i + 1, j + 1)
            for i, row in enumerate(self.circled())
            for j in range(row)
        ]

    def bosonic_cells(self):
        frows = {i + 1 for i in self.fermionic_rows()}
        fcols = self.fermionic_columns()
        return [
            (i, j)
            for (i, j) in self.cells_star()
            if not (i in frows and j in fcols)
        ]

    def fermionic_cells(self):
        frows = {i + 1 for i in self.fermionic_rows()}
        fcols = self.fermionic_columns()
        return [
            (i, j) for (i, j) in self.cells_star() if i in frows and j in fcols
        ]

    def skew_cells(self):
        """Cells of circled / staircase delta^(m+1)."""
        m = self.m
        out = []
        for i, row in enumerate(self.circled(), start=1):
            start = m + 1 - i if i <= m else 0
            for j in range(start + 1, row + 1):
                out.append((i, j))
        return out

    def zeta(self):
        """Number of bosonic boxes lying above fermionic boxes."""
        bos = set(self.bosonic_cells())
        total = 0
        for (i, j) in self.fermionic_cells():
            total += sum(1 for i2 in range(1, i) if (i2, j) in bos)
        return total

    def arm(self, i, j, shape="star"):
        lam = self.star() if shape == "star" else self.circled()
        if i > len(lam) or j > lam[i - 1]:
            raise SuperPartitionError(f"cell ({i},{j}) outside {shape} diagram")
        return lam[i - 1] - j

    def leg(self, i, j, shape="star"):
        lam = self.star() if shape == "star" else self.circled()
        conj = partition_conjugate(lam)
        if j > len(conj) or i > conj[j - 1]:
            raise SuperPartitionError(f"cell ({i},{j}) outside {shape} diagram")
        return conj[j - 1] - i

    def hook_up_alpha(self, i, j):
        """alpha*(a_star + 1) + leg_circled as a polynomial in alpha."""
        a = self.arm(i, j, "star")
        l = self.leg(i, j, "circled")
        return ParamPolynomial(1, {(1,): a + 1, (0,): l}) if l else ParamPolynomial(
            1, {(1,): a + 1}
        )

    def hook_lo_alpha(self, i, j):
        a = self.arm(i, j, "circled")
        l = self.leg(i, j, "star")
        terms = {(0,): l + 1}
        if a:
            terms[(1,)] = a
        return ParamPolynomial(1, terms)

    def hook_up_qt(self, i, j):
        """1 - q^(a_star+1) t^(leg_circled)."""
        a = self.arm(i, j, "star") + 1
        l = self.leg(i, j, "circled")
        return ParamPolynomial(2, {(0, 0): 1, (a, l): -1})

    def hook_lo_qt(self, i, j):
        """1 - q^(a_circled) t^(leg_star + 1)."""
        a = self.arm(i, j, "circled")
        l = self.leg(i, j, "star") + 1
        return ParamPolynomial(2, {(0, 0): 1, (a, l): -1})

    # -- admissibility --------------------------------------------------------------

    def is_admissible(self, k, r, nvars):
        parts = self.parts(nvars)
        circ = [parts[i] + (1 if i < self.m else 0) for i in range(nvars)]
        star = sorted(parts, reverse=True)
        circ = sorted(circ, reverse=True)
        return all(
            circ[i] - star[i + k] >= r for i in range(nvars - k)
        )

    # -- pair-of-partitions correspondence --------------------------------------------

    def pair(self):
        """(lambda, mu) with lambda = ferm - staircase, mu = bos."""
        m = self.m
        lam = tuple(
            self.ferm[i] - (m - 1 - i) for i in range(m)
        )
        if any(x < 0 for x in lam):
            raise SuperPartitionError("fermionic part below the staircase")
        lam = tuple(x for x in lam if x > 0)
        return lam, self.bos

    @classmethod
    def from_pair(cls, lam, mu, m):
        lam = tuple(lam)
        if len(lam) > m:
            raise SuperPartitionError("lambda has more parts than the fermionic degree")
        ferm = tuple(
            (lam[i] if i < len(lam) else 0) + (m - 1 - i) for i in range(m)
        )
        return cls(ferm, tuple(mu))

    def is_stable(self):
        lam, mu = self.pair()
        return self.m >= sum(lam) + sum(mu)


def sp(ferm, bos=()):
    return SuperPartition(tuple(ferm), tuple(bos))


def empty_sp():
    return SuperPartition((), ())


def sp_min(n, m):
    """The dominance-minimal element of SPar(n|m)."""
    nhat = n - m * (m - 1) // 2
    if nhat < 0:
        raise SuperPartitionError(f"no superpartitions in sector ({n}|{m})")
    return SuperPartition(tuple(range(m - 1, -1, -1)), (1,) * nhat)


def _linear_key(spart):
    return (spart.star(), spart.circled())


@lru_cache(maxsize=None)
def enumerate_sector(n, m, max_len=None):
    """All of SPar(n|m) in the fixed linear extension of dominance.

    Most dominant first: sorted descending by (star, circled) in lex order,
    which refines the dominance order.
    """
    out = []
    ferm_choices = _strict_partitions(n, m)
    for fsum, ferm in ferm_choices:
        for bos in partitions(n - fsum):
            spart = SuperPartition(ferm, bos)
            if max_len is not None and spart.length() > max_len:
                continue
            out.append(spart)
    out.sort(key=_linear_key, reverse=True)
    return tuple(out)


def _strict_partitions(n, m):
    """Strictly decreasing m-tuples of distinct nonnegative ints summing <= n."""
    results = []

    def rec(remaining_slots, max_next, total, acc):
        if remaining_slots == 0:
            results.append((total, tuple(acc)))
            return
        lo = remaining_slots - 1  # room for the strictly smaller tail
        for v in range(max_next, lo - 1, -1):
            if total + v > n:
                continue
            tail_min = (remaining_slots - 1) * (remaining_slots - 2) // 2
            if total + v + tail_min > n:
                continue
            acc.append(v)
            rec(remaining_slots - 1, v - 1, total + v, acc)
            acc.pop()

    rec(m, n, 0, [])
    return results


def hasse_covers(sector):
    """Cover relations of dominance on a sector, as (upper, lower) pairs."""
    elems = list(sector)
    covers = []
    for a in elems:
        lower = [b for b in elems if b != a and a.dominates(b)]
        for b in lower:
            strictly_between = any(
                c != b and c.dominates(b) for c in lower if c != b
            )
            if not strictly_between:
                covers.append((a, b))
    return covers
