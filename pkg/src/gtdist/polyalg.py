"""Exact polynomial and rational-function arithmetic over Q.

Coordinates are tableau entries x[k,i] with 1 <= i <= k <= n, indexed by the
pair (k, i).  All scalars are gmpy2.mpq rationals; nothing here ever rounds.

Monomials are packed into a single Python int, 16 bits of exponent per
variable, so that multiplying monomials is integer addition.  A Polynomial is
a sparse dict {packed_monomial: coefficient}.  Rational functions keep their
denominators factored as multisets of canonically scaled linear forms; the
only division ever needed is exact synthetic division by such a form.
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import Iterable, Mapping

from gmpy2 import mpq

Q = mpq
QONE = mpq(1)
QZERO = mpq(0)

EXP_BITS = 16
EXP_MASK = (1 << EXP_BITS) - 1


def parse_q(text: str) -> mpq:
    """Parse 'p/q' or 'p' into an exact rational."""
    return mpq(text.strip())


def render_q(q) -> str:
    return str(mpq(q))


class PoleError(ArithmeticError):
    """Evaluation at a zero of a denominator factor."""


@lru_cache(maxsize=None)
def var_table(n: int) -> "VarTable":
    return VarTable(n)


class VarTable:
    """Variable universe for a fixed n: the n(n+1)/2 pairs (k,i), i <= k.

    Fixes the packing layout and the canonical variable order (sorted pairs).
    """

    __slots__ = ("n", "vars", "index", "offset", "count")

    def __init__(self, n: int):
        assert n >= 1
        self.n = n
        self.vars = tuple((k, i) for k in range(1, n + 1) for i in range(1, k + 1))
        self.index = {v: j for j, v in enumerate(self.vars)}
        self.offset = {v: EXP_BITS * j for j, v in enumerate(self.vars)}
        self.count = len(self.vars)

    def check(self, v) -> tuple[int, int]:
        if v not in self.index:
            raise KeyError(f"variable {v} not valid for n={self.n}")
        return v

    def decode(self, key: int) -> tuple[tuple[tuple[int, int], int], ...]:
        out = []
        j = 0
        while key:
            e = key & EXP_MASK
            if e:
                out.append((self.vars[j], e))
            key >>= EXP_BITS
            j += 1
        return tuple(out)

    def encode(self, exps: Mapping[tuple[int, int], int]) -> int:
        key = 0
        for v, e in exps.items():
            if e < 0:
                raise ValueError("negative exponent")
            if e:
                key += e << self.offset[self.check(v)]
        return key

    def degree(self, key: int) -> int:
        d = 0
        while key:
            d += key & EXP_MASK
            key >>= EXP_BITS
        return d

    def exponent(self, key: int, v) -> int:
        return (key >> self.offset[v]) & EXP_MASK


def _mono_str(tab: VarTable, key: int) -> str:
    parts = []
    for (k, i), e in tab.decode(key):
        s = f"x{k}{i}" if tab.n < 10 else f"x[{k},{i}]"
        parts.append(s if e == 1 else f"{s}^{e}")
    return "*".join(parts) if parts else "1"


class Polynomial:
    """Sparse multivariate polynomial with exact rational coefficients."""

    __slots__ = ("tab", "terms")

    def __init__(self, tab: VarTable, terms: dict):
        self.tab = tab
        self.terms = terms  # packed monomial -> mpq, no zero values

    # -- constructors ----------------------------------------------------

    @staticmethod
    def zero(tab: VarTable) -> "Polynomial":
        return Polynomial(tab, {})

    @staticmethod
    def const(tab: VarTable, c) -> "Polynomial":
        c = mpq(c)
        return Polynomial(tab, {0: c} if c else {})

    @staticmethod
    def variable(tab: VarTable, v) -> "Polynomial":
        return Polynomial(tab, {1 << tab.offset[tab.check(v)]: QONE})

    @staticmethod
    def linear(tab: VarTable, const, coeffs: Mapping) -> "Polynomial":
        terms = {}
        c = mpq(const)
        if c:
            terms[0] = c
        for v, a in coeffs.items():
            a = mpq(a)
            if a:
                terms[1 << tab.offset[tab.check(v)]] = a
        return Polynomial(tab, terms)

    # -- ring operations -------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        out = dict(a)
        for k, c in b.items():
            s = out.get(k)
            if s is None:
                out[k] = c
            else:
                s = s + c
                if s:
                    out[k] = s
                else:
                    del out[k]
        return Polynomial(self.tab, out)

    def __neg__(self):
        return Polynomial(self.tab, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k)
            if s is None:
                out[k] = -c
            else:
                s = s - c
                if s:
                    out[k] = s
                else:
                    del out[k]
        return Polynomial(self.tab, out)

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            a, b = self.terms, other.terms
            if not a or not b:
                return Polynomial.zero(self.tab)
            if len(a) < len(b):
                a, b = b, a
            out = {}
            for k2, c2 in b.items():
                for k1, c1 in a.items():
                    k = k1 + k2
                    c = c1 * c2
                    s = out.get(k)
                    if s is None:
                        out[k] = c
                    else:
                        s = s + c
                        if s:
                            out[k] = s
                        else:
                            del out[k]
            return Polynomial(self.tab, out)
        c = mpq(other)
        if not c:
            return Polynomial.zero(self.tab)
        return Polynomial(self.tab, {k: v * c for k, v in self.terms.items()})

    def __rmul__(self, other):
        return self.__mul__(other)

    def __eq__(self, other):
        return isinstance(other, Polynomial) and self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    # -- structure -------------------------------------------------------

    def total_degree(self) -> int:
        return max((self.tab.degree(k) for k in self.terms), default=0)

    def degree_in(self, v) -> int:
        off = self.tab.offset[v]
        return max(((k >> off) & EXP_MASK for k in self.terms), default=0)

    def leading_key(self) -> int:
        # deterministic: largest packed monomial
        return max(self.terms)

    def content_split(self):
        """Return (scalar, primitive) with scalar*primitive == self.

        primitive has integer coefficients with gcd 1 and a positive
        coefficient on the largest monomial; the zero polynomial splits as
        (1, 0).
        """
        if not self.terms:
            return QONE, self
        num_gcd = 0
        den_lcm = 1
        for c in self.terms.values():
            num_gcd = math.gcd(num_gcd, int(c.numerator))
            den_lcm = den_lcm * int(c.denominator) // math.gcd(den_lcm, int(c.denominator))
        scale = mpq(num_gcd, den_lcm)
        if self.terms[self.leading_key()] < 0:
            scale = -scale
        inv = 1 / scale
        return scale, Polynomial(self.tab, {k: c * inv for k, c in self.terms.items()})

    # -- substitution and calculus ----------------------------------------

    def shift_subst(self, offsets: Mapping) -> "Polynomial":
        """Substitute x[v] -> x[v] - offsets[v] (pullback along the shift)."""
        tab = self.tab
        active = [(v, int(m)) for v, m in offsets.items() if m]
        if not active or not self.terms:
            return self
        offs = [(tab.offset[tab.check(v)], m) for v, m in active]
        out: dict = {}
        for key, coeff in self.terms.items():
            parts = [(key, coeff)]
            for off, m in offs:
                e = (key >> off) & EXP_MASK
                if e:
                    parts = self._expand_var(parts, off, e, m)
            for k0, c0 in parts:
                s = out.get(k0)
                if s is None:
                    out[k0] = c0
                else:
                    s = s + c0
                    if s:
                        out[k0] = s
                    else:
                        del out[k0]
        return Polynomial(tab, out)

    @staticmethod
    def _expand_var(parts, off, e, m):
        """Expand (x - m)^e at one variable slot for every pending term."""
        unit = 1 << off
        neg = mpq(-m)
        binoms = [mpq(math.comb(e, j)) * neg ** (e - j) for j in range(e + 1)]
        nxt = []
        for k0, c0 in parts:
            base = k0 - e * unit
            for j in range(e + 1):
                b = binoms[j]
                if b:
                    nxt.append((base + j * unit, c0 * b))
        return nxt

    def permute_vars(self, varmap: Mapping) -> "Polynomial":
        """Rename variables by varmap (injective on its domain)."""
        tab = self.tab
        moved = {tab.offset[tab.check(a)]: tab.offset[tab.check(b)]
                 for a, b in varmap.items() if a != b}
        if not moved:
            return self
        out = {}
        for key, coeff in self.terms.items():
            k2 = key
            add = 0
            for src, dst in moved.items():
                e = (key >> src) & EXP_MASK
                if e:
                    k2 -= e << src
                    add += e << dst
            k2 += add
            if k2 in out:
                raise ValueError("variable map is not injective")
            out[k2] = coeff
        return Polynomial(tab, out)

    def derive(self, v) -> "Polynomial":
        off = self.tab.offset[self.tab.check(v)]
        unit = 1 << off
        out = {}
        for key, coeff in self.terms.items():
            e = (key >> off) & EXP_MASK
            if e:
                out[key - unit] = coeff * e
        return Polynomial(self.tab, out)

    def eval_at(self, values: Mapping) -> mpq:
        tab = self.tab
        total = QZERO
        powcache: dict = {}
        for key, coeff in self.terms.items():
            acc = coeff
            for v, e in tab.decode(key):
                p = powcache.get((v, e))
                if p is None:
                    p = mpq(values[v]) ** e
                    powcache[(v, e)] = p
                acc = acc * p
            total = total + acc
        return total

    def eval_partial(self, values: Mapping) -> "Polynomial":
        """Substitute exact values for a subset of the variables."""
        tab = self.tab
        offs = {tab.offset[tab.check(v)]: mpq(c) for v, c in values.items()}
        out = {}
        powcache: dict = {}
        for key, coeff in self.terms.items():
            k2 = key
            acc = coeff
            for off, val in offs.items():
                e = (key >> off) & EXP_MASK
                if e:
                    k2 -= e << off
                    p = powcache.get((off, e))
                    if p is None:
                        p = val ** e
                        powcache[(off, e)] = p
                    acc = acc * p
            if not acc:
                continue
            s = out.get(k2)
            if s is None:
                out[k2] = acc
            else:
                s = s + acc
                if s:
                    out[k2] = s
                else:
                    del out[k2]
        return Polynomial(tab, out)

    def truncate(self, max_degree: int) -> "Polynomial":
        tab = self.tab
        return Polynomial(tab, {k: c for k, c in self.terms.items()
                                if tab.degree(k) <= max_degree})

    def homogeneous_component(self, degree: int) -> "Polynomial":
        tab = self.tab
        return Polynomial(tab, {k: c for k, c in self.terms.items()
                                if tab.degree(k) == degree})

    def mul_truncated(self, other: "Polynomial", max_degree: int) -> "Polynomial":
        tab = self.tab
        out = {}
        deg = tab.degree
        bd = [(k, deg(k), c) for k, c in other.terms.items()]
        for k1, c1 in self.terms.items():
            d1 = deg(k1)
            room = max_degree - d1
            if room < 0:
                continue
            for k2, d2, c2 in bd:
                if d2 > room:
                    continue
                k = k1 + k2
                c = c1 * c2
                s = out.get(k)
                if s is None:
                    out[k] = c
                else:
                    s = s + c
                    if s:
                        out[k] = s
                    else:
                        del out[k]
        return Polynomial(tab, out)

    def __str__(self):
        if not self.terms:
            return "0"
        keys = sorted(self.terms, key=lambda k: (-self.tab.degree(k), -k))
        parts = []
        for k in keys:
            c = self.terms[k]
            mono = _mono_str(self.tab, k)
            if mono == "1":
                parts.append(render_q(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{render_q(c)}*{mono}")
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out

    __repr__ = __str__


def divide_exact_by_linear(p: Polynomial, factor: "LinearFactor"):
    """Exact division of p by a linear form; None if the remainder is nonzero.

    Synthetic division along the lexicographically first variable carried by
    the factor, which makes the quotient deterministic.
    """
    tab = p.tab
    pivot = factor.coeffs[0][0]
    a = mpq(factor.coeffs[0][1])
    off = tab.offset[pivot]
    unit = 1 << off
    # rest = factor - a*pivot, as a polynomial
    rest_terms = {}
    if factor.const:
        rest_terms[0] = mpq(factor.const)
    for v, c in factor.coeffs[1:]:
        rest_terms[1 << tab.offset[v]] = mpq(c)
    rest = Polynomial(tab, rest_terms)

    # bucket terms of p by pivot exponent
    buckets: dict[int, dict] = {}
    top = 0
    for key, coeff in p.terms.items():
        e = (key >> off) & EXP_MASK
        buckets.setdefault(e, {})[key - e * unit] = coeff
        if e > top:
            top = e
    quot: dict = {}
    carry = Polynomial.zero(tab)
    inv_a = 1 / a
    for e in range(top, 0, -1):
        lead = Polynomial(tab, buckets.get(e, {})) + carry
        if lead.is_zero:
            carry = Polynomial.zero(tab)
            continue
        q_e = lead * inv_a  # coefficient of pivot^(e-1) in the quotient
        for k, c in q_e.terms.items():
            kk = k + (e - 1) * unit
            s = quot.get(kk)
            if s is None:
                quot[kk] = c
            else:
                s = s + c
                if s:
                    quot[kk] = s
                else:
                    del quot[kk]
        carry = -(q_e * rest)
    remainder = Polynomial(tab, buckets.get(0, {})) + carry
    if not remainder.is_zero:
        return None
    return Polynomial(tab, quot)


class LinearFactor:
    """Canonically scaled linear form: primitive integer coefficients, the
    first (lexicographically) nonzero coefficient positive, rational constant.
    """

    __slots__ = ("tab", "const", "coeffs", "_hash")

    def __init__(self, tab: VarTable, const, coeffs: tuple):
        self.tab = tab
        self.const = mpq(const)
        self.coeffs = coeffs  # tuple of ((k,i), int), sorted by variable
        self._hash = hash((self.const, self.coeffs))

    @staticmethod
    def build(tab: VarTable, const, coeffs: Mapping):
        """Canonicalize const + sum(c_v * x_v). Returns (factor, scale) with
        factor == scale * input; scale is the factor to multiply into a
        rational function's scalar when this replaces a denominator entry.
        """
        items = sorted((tab.check(v), mpq(c)) for v, c in coeffs.items() if mpq(c))
        if not items:
            raise ValueError("linear factor needs at least one variable")
        num_gcd = 0
        den_lcm = 1
        for _, c in items:
            num_gcd = math.gcd(num_gcd, int(c.numerator))
            den_lcm = den_lcm * int(c.denominator) // math.gcd(den_lcm, int(c.denominator))
        scale = mpq(den_lcm, num_gcd)
        if items[0][1] < 0:
            scale = -scale
        canon = tuple((v, int(c * scale)) for v, c in items)
        return LinearFactor(tab, mpq(const) * scale, canon), scale

    def sort_key(self):
        return (self.coeffs, self.const)

    def as_polynomial(self) -> Polynomial:
        terms = {}
        if self.const:
            terms[0] = mpq(self.const)
        for v, c in self.coeffs:
            terms[1 << self.tab.offset[v]] = mpq(c)
        return Polynomial(self.tab, terms)

    def eval_at(self, values: Mapping) -> mpq:
        acc = mpq(self.const)
        for v, c in self.coeffs:
            acc = acc + c * mpq(values[v])
        return acc

    def shifted(self, offsets: Mapping) -> "LinearFactor":
        # f(x - m): coefficients unchanged, constant drops by <coeffs, m>
        delta = 0
        for v, c in self.coeffs:
            m = offsets.get(v)
            if m:
                delta += c * int(m)
        if not delta:
            return self
        return LinearFactor(self.tab, self.const - delta, self.coeffs)

    def permuted(self, varmap: Mapping):
        """Rename variables; returns (factor, sign) since reordering may flip
        the leading coefficient."""
        items = sorted((varmap.get(v, v), c) for v, c in self.coeffs)
        sign = 1
        if items[0][1] < 0:
            sign = -1
            items = [(v, -c) for v, c in items]
        return LinearFactor(self.tab, sign * self.const, tuple(items)), sign

    def coeff_of(self, v) -> int:
        for w, c in self.coeffs:
            if w == v:
                return c
        return 0

    def __eq__(self, other):
        return (isinstance(other, LinearFactor) and self.const == other.const
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return self._hash

    def __str__(self):
        return str(self.as_polynomial())

    __repr__ = __str__


class RationalFunction:
    """scalar * num / prod(factor^mult), kept in a canonical normalized form.

    Invariants: no denominator factor divides the numerator; the numerator is
    primitive with positive leading coefficient (the scalar absorbs content);
    zero is (scalar 1, num 0, empty denominator).  Equality is therefore
    structural.
    """

    __slots__ = ("tab", "scalar", "num", "den")

    def __init__(self, tab, scalar, num, den):
        self.tab = tab
        self.scalar = scalar
        self.num = num
        self.den = den  # tuple of (LinearFactor, mult), sorted

    # -- constructors ----------------------------------------------------

    @staticmethod
    def build(num: Polynomial, den: Iterable = (), scalar=QONE) -> "RationalFunction":
        tab = num.tab
        scalar = mpq(scalar)
        counts: dict[LinearFactor, int] = {}
        for entry in den:
            f, m = entry if isinstance(entry, tuple) else (entry, 1)
            if m:
                counts[f] = counts.get(f, 0) + m
        if num.is_zero:
            return RationalFunction(tab, QONE, num, ())
        # cancel factors dividing the numerator
        for f in list(counts):
            while counts[f] > 0:
                q = divide_exact_by_linear(num, f)
                if q is None:
                    break
                num = q
                counts[f] -= 1
            if counts[f] == 0:
                del counts[f]
            if num.is_zero:
                return RationalFunction(tab, QONE, num, ())
        content, num = num.content_split()
        scalar = scalar * content
        if not scalar:
            return RationalFunction(tab, QONE, Polynomial.zero(tab), ())
        den_t = tuple(sorted(counts.items(), key=lambda it: it[0].sort_key()))
        return RationalFunction(tab, scalar, num, den_t)

    @staticmethod
    def from_poly(p: Polynomial) -> "RationalFunction":
        return RationalFunction.build(p)

    @staticmethod
    def const(tab: VarTable, c) -> "RationalFunction":
        return RationalFunction.build(Polynomial.const(tab, c))

    @staticmethod
    def zero(tab: VarTable) -> "RationalFunction":
        return RationalFunction(tab, QONE, Polynomial.zero(tab), ())

    @staticmethod
    def one(tab: VarTable) -> "RationalFunction":
        return RationalFunction.build(Polynomial.const(tab, 1))

    # -- predicates -------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    def as_polynomial(self):
        """The numerator scaled back, when the denominator is trivial."""
        if self.den:
            return None
        return self.num * self.scalar

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, RationalFunction):
            return NotImplemented
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        da = dict(self.den)
        db = dict(other.den)
        lcm = dict(da)
        for f, m in db.items():
            if lcm.get(f, 0) < m:
                lcm[f] = m
        na = self.num * self.scalar
        for f, m in lcm.items():
            extra = m - da.get(f, 0)
            for _ in range(extra):
                na = na * f.as_polynomial()
        nb = other.num * other.scalar
        for f, m in lcm.items():
            extra = m - db.get(f, 0)
            for _ in range(extra):
                nb = nb * f.as_polynomial()
        return RationalFunction.build(na + nb, lcm.items())

    def __neg__(self):
        if self.is_zero:
            return self
        return RationalFunction(self.tab, -self.scalar, self.num, self.den)

    def __sub__(self, other):
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, RationalFunction):
            if self.is_zero or other.is_zero:
                return RationalFunction.zero(self.tab)
            counts: dict[LinearFactor, int] = dict(self.den)
            for f, m in other.den:
                counts[f] = counts.get(f, 0) + m
            return RationalFunction.build(self.num * other.num, counts.items(),
                                          self.scalar * other.scalar)
        if isinstance(other, Polynomial):
            return RationalFunction.build(self.num * other, self.den, self.scalar)
        c = mpq(other)
        if not c or self.is_zero:
            return RationalFunction.zero(self.tab)
        return RationalFunction(self.tab, self.scalar * c, self.num, self.den)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __eq__(self, other):
        return (isinstance(other, RationalFunction) and self.scalar == other.scalar
                and self.den == other.den and self.num == other.num)

    def values_equal(self, other: "RationalFunction") -> bool:
        """Equality by cross multiplication, independent of the normal form."""
        left = self.num * self.scalar
        for f, m in other.den:
            for _ in range(m):
                left = left * f.as_polynomial()
        right = other.num * other.scalar
        for f, m in self.den:
            for _ in range(m):
                right = right * f.as_polynomial()
        return left == right

    # -- calculus ----------------------------------------------------------

    def derive(self, v) -> "RationalFunction":
        """Quotient rule; each denominator factor is linear so its derivative
        is the integer coefficient on v."""
        if self.is_zero:
            return self
        num_d = self.num.derive(v)
        if not self.den:
            return RationalFunction.build(num_d, (), self.scalar)
        distinct = [f for f, _ in self.den]
        prod_all = Polynomial.const(self.tab, 1)
        for f in distinct:
            prod_all = prod_all * f.as_polynomial()
        total = num_d * prod_all
        for idx, (f, m) in enumerate(self.den):
            c = f.coeff_of(v)
            if not c:
                continue
            prod_others = Polynomial.const(self.tab, 1)
            for jdx, g in enumerate(distinct):
                if jdx != idx:
                    prod_others = prod_others * g.as_polynomial()
            total = total - (m * c) * (self.num * prod_others)
        new_den = [(f, m + 1) for f, m in self.den]
        return RationalFunction.build(total, new_den, self.scalar)

    def shifted(self, offsets: Mapping) -> "RationalFunction":
        """Pullback along a shift: substitute x -> x - offsets."""
        if self.is_zero:
            return self
        num = self.num.shift_subst(offsets)
        den = [(f.shifted(offsets), m) for f, m in self.den]
        return RationalFunction.build(num, den, self.scalar)

    def permuted(self, varmap: Mapping) -> "RationalFunction":
        if self.is_zero:
            return self
        num = self.num.permute_vars(varmap)
        scalar = self.scalar
        den = []
        for f, m in self.den:
            g, sign = f.permuted(varmap)
            den.append((g, m))
            if sign < 0:
                scalar = scalar * ((-1) ** m)
        return RationalFunction.build(num, den, scalar)

    def eval_at(self, values: Mapping) -> mpq:
        acc = self.scalar * self.num.eval_at(values)
        for f, m in self.den:
            val = f.eval_at(values)
            if not val:
                raise PoleError(f"denominator factor {f} vanishes at the point")
            acc = acc / val ** m
        return acc

    def is_holomorphic_at(self, values: Mapping) -> bool:
        return all(f.eval_at(values) for f, _ in self.den)

    def __str__(self):
        s = ""
        if self.scalar != 1:
            s = f"({render_q(self.scalar)})*"
        out = f"{s}({self.num})"
        if self.den:
            parts = []
            for f, m in self.den:
                parts.append(f"({f})" + (f"^{m}" if m > 1 else ""))
            out += " / " + "*".join(parts)
        return out

    __repr__ = __str__


class PointAssignment:
    """A total assignment of exact rationals to all variables for some n."""

    __slots__ = ("n", "values")

    def __init__(self, n: int, values: Mapping):
        tab = var_table(n)
        vals = {}
        for v in tab.vars:
            if v not in values:
                raise ValueError(f"point is missing coordinate {v}")
            vals[v] = mpq(values[v])
        extra = set(values) - set(tab.vars)
        if extra:
            raise ValueError(f"point has coordinates outside n={n}: {sorted(extra)}")
        self.n = n
        self.values = vals

    def __getitem__(self, v):
        return self.values[v]

    def __eq__(self, other):
        return (isinstance(other, PointAssignment) and self.n == other.n
                and self.values == other.values)

    def __hash__(self):
        return hash((self.n, tuple(self.as_sorted_items())))

    def as_sorted_items(self):
        return sorted(self.values.items())

    @staticmethod
    def parse(text: str, n: int | None = None) -> "PointAssignment":
        """Parse lines of the form 'k,i=p/q' into a point."""
        values = {}
        top = 0
        for raw in text.splitlines():
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            lhs, rhs = line.split("=", 1)
            k_s, i_s = lhs.split(",")
            k, i = int(k_s), int(i_s)
            values[(k, i)] = parse_q(rhs)
            top = max(top, k)
        return PointAssignment(n if n is not None else top, values)

    def render(self) -> str:
        return "\n".join(f"{k},{i}={render_q(c)}" for (k, i), c in self.as_sorted_items())


# -- localization and jets ---------------------------------------------------
#
# Everything downstream that extracts derivative data at a base point does it
# through these: recentre a polynomial / rational function at a point, keeping
# a chosen set of variables as formal deviations (the same VarIndex keys are
# reused; a kept variable then means "x_v - point[v]").

def localize_poly(p: Polynomial, point: Mapping, keep: frozenset) -> Polynomial:
    tab = p.tab
    out: dict = {}
    powcache: dict = {}
    binom = math.comb
    for key, coeff in p.terms.items():
        parts = [(0, coeff)]
        for v, e in tab.decode(key):
            if v in keep:
                c0 = mpq(point[v])
                off = tab.offset[v]
                if c0:
                    nxt = []
                    for j in range(e + 1):
                        p_j = powcache.get((v, e - j))
                        if p_j is None:
                            p_j = c0 ** (e - j)
                            powcache[(v, e - j)] = p_j
                        w = binom(e, j) * p_j
                        for k0, a0 in parts:
                            nxt.append((k0 + (j << off), a0 * w))
                    parts = nxt
                else:
                    parts = [(k0 + (e << off), a0) for k0, a0 in parts]
            else:
                val = powcache.get((v, -e))
                if val is None:
                    val = mpq(point[v]) ** e
                    powcache[(v, -e)] = val
                if not val:
                    parts = []
                    break
                parts = [(k0, a0 * val) for k0, a0 in parts]
        for k0, a0 in parts:
            s = out.get(k0)
            if s is None:
                out[k0] = a0
            else:
                s = s + a0
                if s:
                    out[k0] = s
                else:
                    del out[k0]
    return Polynomial(tab, out)


def localize_rf(rf: RationalFunction, point: Mapping, keep: frozenset) -> RationalFunction:
    """Recentre a rational function at a point, keeping `keep` as deviations.

    Denominator factors whose kept part vanishes become constants: zero means
    a genuine pole (raised), nonzero is folded into the scalar.
    """
    if rf.is_zero:
        return rf
    tab = rf.tab
    num = localize_poly(rf.num, point, keep)
    scalar = rf.scalar
    den = []
    for f, m in rf.den:
        const = mpq(f.const)
        kept = {}
        for v, c in f.coeffs:
            const = const + c * mpq(point[v])
            if v in keep:
                kept[v] = c
        if kept:
            g, scale = LinearFactor.build(tab, const, kept)
            den.append((g, m))
            scalar = scalar * scale ** m
        else:
            if not const:
                raise PoleError(f"denominator factor {f} vanishes identically at the point")
            scalar = scalar / const ** m
    return RationalFunction.build(num, den, scalar)


def poly_jet(p: Polynomial, order: int) -> Polynomial:
    return p.truncate(order)


def rf_jet(rf: RationalFunction, order: int) -> Polynomial:
    """Taylor jet at 0 of a localized rational function whose denominator
    factors are all units (nonzero constant term)."""
    if rf.is_zero:
        return Polynomial.zero(rf.tab)
    tab = rf.tab
    jet = rf.num.truncate(order) * rf.scalar
    for f, m in rf.den:
        c0 = mpq(f.const)
        if not c0:
            raise PoleError(f"factor {f} is singular at 0; divide it out first")
        lin = Polynomial(tab, {1 << tab.offset[v]: mpq(-c, c0) for v, c in f.coeffs})
        inv = Polynomial.const(tab, 1)
        powr = Polynomial.const(tab, 1)
        for _ in range(order):
            powr = powr.mul_truncated(lin, order)
            if powr.is_zero:
                break
            inv = inv + powr
        inv = inv * (1 / c0)
        for _ in range(m):
            jet = jet.mul_truncated(inv, order)
    return jet
