"""Exact multivariate polynomials and rational functions over the rationals.

Variables are ``x_1..x_m`` followed by one ``hbar[a]`` per edge id.  Every
variable has cohomological degree 2.  Terms are stored as a dict from
exponent tuples to nonzero ``int`` or ``Fraction`` coefficients; integral
fractions are collapsed back to ``int`` to keep the fast path fast.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd as igcd
from typing import Iterable, Mapping, Sequence


class VarTableMismatch(ValueError):
    pass


class DivisibilityError(ArithmeticError):
    """Raised by :func:`exact_divide`; ``remainder`` is a nonzero witness."""

    def __init__(self, dividend, divisor, remainder):
        super().__init__(f"{divisor} does not divide {dividend} (remainder witness {remainder})")
        self.dividend = dividend
        self.divisor = divisor
        self.remainder = remainder


class InvariantError(AssertionError):
    """An internal identity that must always hold was violated."""


class PoleError(ZeroDivisionError):
    """A denominator vanished at an evaluation point; resample."""


def _norm(c):
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def _div(a, b):
    if type(a) is int and type(b) is int:
        q, r = divmod(a, b)
        if r == 0:
            return q
    return _norm(Fraction(a) / b)


@dataclass(frozen=True)
class VarTable:
    m: int
    hbar_ids: tuple = ()
    xnames: tuple | None = None

    def __post_init__(self):
        object.__setattr__(self, "hbar_ids", tuple(self.hbar_ids))
        if self.xnames is not None:
            object.__setattr__(self, "xnames", tuple(self.xnames))
            if len(self.xnames) != self.m:
                raise ValueError("xnames must have length m")
        if len(set(self.hbar_ids)) != len(self.hbar_ids):
            raise ValueError("duplicate hbar ids")

    @property
    def nvars(self) -> int:
        return self.m + len(self.hbar_ids)

    def name(self, i: int) -> str:
        if i < self.m:
            return self.xnames[i] if self.xnames else f"x{i + 1}"
        return f"hbar[{self.hbar_ids[i - self.m]}]"

    def hbar_index(self, a) -> int:
        try:
            return self.m + self.hbar_ids.index(a)
        except ValueError:
            raise KeyError(f"unknown hbar id {a!r}") from None


class MultiPoly:
    """Immutable polynomial; ``terms`` maps exponent tuples to coefficients."""

    __slots__ = ("vt", "terms", "_hash")

    def __init__(self, vt: VarTable, terms: Mapping | None = None, _trusted: bool = False):
        self.vt = vt
        if _trusted:
            self.terms = terms
        else:
            n = vt.nvars
            clean = {}
            for e, c in (terms or {}).items():
                e = tuple(e)
                if len(e) != n:
                    raise ValueError(f"exponent {e} has wrong length for {n} variables")
                c = _norm(c)
                if c:
                    clean[e] = clean.get(e, 0) + c
                    if not clean[e]:
                        del clean[e]
            self.terms = clean
        self._hash = None

    # constructors
    @classmethod
    def zero(cls, vt):
        return cls(vt, {}, True)

    @classmethod
    def const(cls, vt, c):
        c = _norm(c)
        return cls(vt, {(0,) * vt.nvars: c} if c else {}, True)

    @classmethod
    def one(cls, vt):
        return cls.const(vt, 1)

    @classmethod
    def var(cls, vt, i: int, power: int = 1):
        e = [0] * vt.nvars
        e[i] = power
        return cls(vt, {tuple(e): 1}, True)

    @classmethod
    def x(cls, vt, k: int, power: int = 1):
        """``x_k`` with 1-based ``k``."""
        if not 1 <= k <= vt.m:
            raise IndexError(f"x{k} out of range for m={vt.m}")
        return cls.var(vt, k - 1, power)

    @classmethod
    def hbar(cls, vt, a, power: int = 1):
        return cls.var(vt, vt.hbar_index(a), power)

    @classmethod
    def monomial(cls, vt, exps, c=1):
        return cls(vt, {tuple(exps): c})

    # basic queries
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_value(self):
        return self.terms.get((0,) * self.vt.nvars, 0)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def degree(self) -> int:
        """Cohomological degree of a homogeneous polynomial (2 per variable)."""
        degs = {sum(e) for e in self.terms}
        if len(degs) > 1:
            raise ValueError("polynomial is not homogeneous")
        return 2 * degs.pop() if degs else 0

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def degree_in(self, i: int) -> int:
        return max((e[i] for e in self.terms), default=-1)

    def variables(self) -> set[int]:
        s = set()
        for e in self.terms:
            s.update(i for i, k in enumerate(e) if k)
        return s

    def sorted_terms(self):
        """Terms in descending graded-lex order."""
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

    def leading_coefficient(self):
        if not self.terms:
            return 0
        return max(self.terms.items(), key=lambda t: (sum(t[0]), t[0]))[1]

    # arithmetic
    def _check(self, other):
        if other.vt is not self.vt and other.vt != self.vt:
            raise VarTableMismatch(f"{self.vt} vs {other.vt}")

    def _coerce(self, other):
        if isinstance(other, MultiPoly):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return MultiPoly.const(self.vt, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other.terms:
            return self
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = _norm(v)
            else:
                out.pop(e, None)
        return MultiPoly(self.vt, out, True)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.vt, {e: -c for e, c in self.terms.items()}, True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        c = _norm(c)
        if not c:
            return MultiPoly.zero(self.vt)
        if c == 1:
            return self
        return MultiPoly(self.vt, {e: _norm(v * c) for e, v in self.terms.items()}, True)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        self._check(other)
        a, b = self.terms, other.terms
        if not a or not b:
            return MultiPoly.zero(self.vt)
        if len(a) < len(b):
            a, b = b, a
        out: dict = {}
        get = out.get
        for eb, cb in b.items():
            for ea, ca in a.items():
                e = tuple([x + y for x, y in zip(ea, eb)])
                out[e] = get(e, 0) + ca * cb
        return MultiPoly(self.vt, {e: _norm(c) for e, c in out.items() if c}, True)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = MultiPoly.one(self.vt)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("division by zero")
            return self.scale(Fraction(1) / other)
        if isinstance(other, MultiPoly):
            return RatFunc(self, other)
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.constant_value() == other
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.vt == other.vt and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.vt, frozenset(self.terms.items())))
        return self._hash

    # symmetric group action and Demazure operators
    def permute(self, w: Sequence[int]) -> MultiPoly:
        """``(w f)(x) = f(x_{w(1)}, ..., x_{w(m)})`` for 0-based one-line ``w``."""
        m = self.vt.m
        if len(w) != m:
            raise ValueError(f"permutation of length {len(w)} on {m} x-variables")
        out = {}
        for e, c in self.terms.items():
            ne = list(e)
            for k in range(m):
                ne[w[k]] = e[k]
            out[tuple(ne)] = c
        return MultiPoly(self.vt, out, True)

    def swap(self, t: int) -> MultiPoly:
        """``s_t f`` for 1-based ``t``."""
        a, b = t - 1, t
        out = {}
        for e, c in self.terms.items():
            ne = list(e)
            ne[a], ne[b] = e[b], e[a]
            out[tuple(ne)] = c
        return MultiPoly(self.vt, out, True)

    def demazure(self, t: int) -> MultiPoly:
        """``(s_t f - f) / (x_t - x_{t+1})`` computed termwise in closed form."""
        if not 1 <= t < self.vt.m:
            raise IndexError(f"demazure index {t} out of range for m={self.vt.m}")
        a_, b_ = t - 1, t
        out: dict = {}
        for e, c in self.terms.items():
            a, b = e[a_], e[b_]
            if a == b:
                continue
            lo, hi, sign = (b, a, -c) if a > b else (a, b, c)
            base = list(e)
            for i in range(hi - lo):
                base[a_] = lo + i
                base[b_] = hi - 1 - i
                k = tuple(base)
                out[k] = out.get(k, 0) + sign
        return MultiPoly(self.vt, {e: c for e, c in out.items() if c}, True)

    # substitution and evaluation
    def substitute(self, target: VarTable, images: Sequence[MultiPoly]) -> MultiPoly:
        """Replace variable ``i`` by ``images[i]`` (polynomials over ``target``)."""
        if len(images) != self.vt.nvars:
            raise ValueError("need one image per variable")
        cache: dict = {}

        def power(i, k):
            key = (i, k)
            if key not in cache:
                cache[key] = images[i] ** k
            return cache[key]

        acc = MultiPoly.zero(target)
        for e, c in self.terms.items():
            t = MultiPoly.const(target, c)
            for i, k in enumerate(e):
                if k:
                    t = t * power(i, k)
            acc = acc + t
        return acc

    def evaluate(self, values: Sequence, modulus: int | None = None):
        """Exact value at ``values`` (one per variable); reduced mod ``modulus`` if given."""
        total = 0
        if modulus is None:
            for e, c in self.terms.items():
                t = c
                for v, k in zip(values, e):
                    if k:
                        t = t * v**k
                total += t
            return _norm(total) if isinstance(total, Fraction) else total
        p = modulus
        for e, c in self.terms.items():
            if type(c) is Fraction:
                t = c.numerator * pow(c.denominator, -1, p) % p
            else:
                t = c % p
            for v, k in zip(values, e):
                if k:
                    t = t * pow(v, k, p) % p
            total += t
        return total % p

    def __call__(self, *values):
        return self.evaluate(values)

    # serialization
    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                self.vt.name(i) + (f"^{k}" if k > 1 else "") for i, k in enumerate(e) if k
            )
            neg = c < 0
            a = -c if neg else c
            if mono:
                body = mono if a == 1 else f"{a}*{mono}"
            else:
                body = str(a)
            if not parts:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append((" - " if neg else " + ") + body)
        return "".join(parts)

    def __repr__(self):
        return f"MultiPoly({self})"


# division and gcd

def _coeffs_in(f: MultiPoly, i: int) -> dict[int, MultiPoly]:
    """Coefficients of ``f`` viewed as a polynomial in variable ``i``."""
    buckets: dict[int, dict] = {}
    for e, c in f.terms.items():
        k = e[i]
        if k:
            e = e[:i] + (0,) + e[i + 1:]
        buckets.setdefault(k, {})[e] = c
    return {k: MultiPoly(f.vt, t, True) for k, t in buckets.items()}


def _lead_in(f: MultiPoly, i: int) -> tuple[int, MultiPoly]:
    d = f.degree_in(i)
    t = {e[:i] + (0,) + e[i + 1:]: c for e, c in f.terms.items() if e[i] == d}
    return d, MultiPoly(f.vt, t, True)


def _shift(f: MultiPoly, i: int, k: int) -> MultiPoly:
    if not k:
        return f
    return MultiPoly(f.vt, {e[:i] + (e[i] + k,) + e[i + 1:]: c for e, c in f.terms.items()}, True)


def exact_divide(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    """``h`` with ``f == g*h``; raises :class:`DivisibilityError` otherwise."""
    f._check(g)
    if g.is_zero():
        raise ZeroDivisionError("exact_divide by the zero polynomial")
    if f.is_zero():
        return f
    if g.is_constant():
        return f.scale(Fraction(1) / g.constant_value()) if g.constant_value() != 1 else f
    i = min(g.variables())
    dg, lcg = _lead_in(g, i)
    q = MultiPoly.zero(f.vt)
    r = f
    while not r.is_zero():
        dr, lcr = _lead_in(r, i)
        if dr < dg:
            raise DivisibilityError(f, g, r)
        try:
            t = exact_divide(lcr, lcg)
        except DivisibilityError:
            raise DivisibilityError(f, g, r) from None
        t = _shift(t, i, dr - dg)
        q = q + t
        r = r - t * g
    return q


def divides(g: MultiPoly, f: MultiPoly) -> bool:
    try:
        exact_divide(f, g)
    except DivisibilityError:
        return False
    return True


def _primitive_normalize(f: MultiPoly) -> MultiPoly:
    """Scale to integer coefficients with content 1 and positive leading term."""
    if f.is_zero():
        return f
    den = 1
    for c in f.terms.values():
        if type(c) is Fraction:
            den = den * c.denominator // igcd(den, c.denominator)
    nums = [int(c * den) for c in f.terms.values()]
    g = 0
    for n in nums:
        g = igcd(g, n)
    s = Fraction(den, g)
    if f.leading_coefficient() < 0:
        s = -s
    return f.scale(s)


def _content_in(f: MultiPoly, i: int) -> MultiPoly:
    g = None
    for c in _coeffs_in(f, i).values():
        g = c if g is None else gcd(g, c)
        if g.is_constant():
            return MultiPoly.one(f.vt)
    return g


def _prem(a: MultiPoly, b: MultiPoly, i: int) -> MultiPoly:
    db, lcb = _lead_in(b, i)
    r = a
    while not r.is_zero():
        dr, lcr = _lead_in(r, i)
        if dr < db:
            break
        r = r * lcb - _shift(lcr, i, dr - db) * b
    return r


def gcd(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    """Multivariate gcd by content / primitive-part recursion with a primitive PRS.

    Recurses on the variable of smallest degree.  The result is normalized to
    integer coefficients with content 1 and a positive leading coefficient.
    """
    f._check(g)
    if f.is_zero():
        return _primitive_normalize(g)
    if g.is_zero():
        return _primitive_normalize(f)
    if f.is_constant() or g.is_constant():
        return MultiPoly.one(f.vt)
    vs = f.variables() | g.variables()
    i = min(vs, key=lambda v: (max(f.degree_in(v), g.degree_in(v)), v))
    cf, cg = _content_in(f, i), _content_in(g, i)
    c = gcd(cf, cg)
    pf, pg = exact_divide(f, cf), exact_divide(g, cg)
    if pf.degree_in(i) <= 0 or pg.degree_in(i) <= 0:
        return _primitive_normalize(c)
    a, b = (pf, pg) if pf.degree_in(i) >= pg.degree_in(i) else (pg, pf)
    while True:
        r = _prem(a, b, i)
        if r.is_zero():
            break
        if r.degree_in(i) <= 0:
            return _primitive_normalize(c)
        a, b = b, exact_divide(r, _content_in(r, i))
    return _primitive_normalize(c * exact_divide(b, _content_in(b, i)))


# rational functions

def _factor_key(f: MultiPoly):
    return (sum(1 for _ in f.terms), tuple(sorted(f.terms.items(), key=lambda t: t[0])))


class RatFunc:
    """``num / prod(f**k for f, k in den)`` with the denominator kept factored.

    Each denominator factor is primitive with positive leading coefficient;
    scalar units live in the numerator.  In exact mode the fraction is reduced
    after every operation: linear factors (irreducible) by trial division,
    other factors by :func:`gcd`.  ``lazy=True`` skips reduction (fraction-free
    mode); equality is decided by cross-multiplication in both modes.
    """

    __slots__ = ("num", "den", "lazy")

    def __init__(self, num: MultiPoly, den=None, lazy: bool = False, _trusted: bool = False):
        self.num = num
        self.lazy = lazy
        if _trusted:
            self.den = den
            return
        factors: dict = {}
        if den is None:
            pass
        elif isinstance(den, MultiPoly):
            self._absorb(factors, den, 1)
        else:
            for f, k in den:
                self._absorb(factors, f, k)
        self.den = factors
        if not lazy:
            self._reduce()

    def _absorb(self, factors, f: MultiPoly, k: int):
        if f.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if k == 0:
            return
        if f.is_constant():
            self.num = self.num.scale(Fraction(1) / f.constant_value() ** k)
            return
        p = _primitive_normalize(f)
        unit = _div(f.leading_coefficient(), p.leading_coefficient())
        self.num = self.num.scale(Fraction(1) / Fraction(unit) ** k)
        factors[p] = factors.get(p, 0) + k

    def _reduce(self):
        if self.num.is_zero():
            self.den = {}
            return
        for f in list(self.den):
            k = self.den[f]
            if f.total_degree() == 1:
                while k:
                    try:
                        self.num = exact_divide(self.num, f)
                    except DivisibilityError:
                        break
                    k -= 1
                if k:
                    self.den[f] = k
                else:
                    del self.den[f]
            else:
                while k:
                    g = gcd(self.num, f)
                    if g.is_constant():
                        break
                    self.num = exact_divide(self.num, g)
                    rest = exact_divide(f, g)
                    k -= 1
                    if k:
                        self.den[f] = k
                    else:
                        del self.den[f]
                    if not rest.is_constant():
                        self._absorb(self.den, rest, 1)
                    else:
                        self.num = self.num.scale(Fraction(1) / rest.constant_value())
                    break

    # construction helpers
    @classmethod
    def from_poly(cls, f: MultiPoly):
        return cls(f, {}, _trusted=True)

    @property
    def vt(self):
        return self.num.vt

    def denominator(self) -> MultiPoly:
        d = MultiPoly.one(self.vt)
        for f, k in self.den.items():
            d = d * f**k
        return d

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return not self.den

    def _lift(self, other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, MultiPoly):
            return RatFunc.from_poly(other)
        if isinstance(other, (int, Fraction)):
            return RatFunc.from_poly(MultiPoly.const(self.vt, other))
        return NotImplemented

    def _make(self, num, den, lazy):
        r = RatFunc(num, den, lazy=lazy, _trusted=True)
        if not lazy:
            r._reduce()
        return r

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        if other.num.is_zero():
            return self
        if self.num.is_zero():
            return other
        lazy = self.lazy or other.lazy
        den = dict(self.den)
        for f, k in other.den.items():
            if den.get(f, 0) < k:
                den[f] = k
        a, b = self.num, other.num
        for f, k in den.items():
            ka, kb = k - self.den.get(f, 0), k - other.den.get(f, 0)
            if ka:
                a = a * f**ka
            if kb:
                b = b * f**kb
        return self._make(a + b, den, lazy)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, dict(self.den), self.lazy, _trusted=True)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return RatFunc(self.num.scale(other), dict(self.den) if other else {}, self.lazy, _trusted=True)
        other = self._lift(other)
        if other is NotImplemented:
            return other
        if self.num.is_zero() or other.num.is_zero():
            return RatFunc.from_poly(MultiPoly.zero(self.vt))
        den = dict(self.den)
        for f, k in other.den.items():
            den[f] = den.get(f, 0) + k
        return self._make(self.num * other.num, den, self.lazy or other.lazy)

    __rmul__ = __mul__

    def inverse(self) -> RatFunc:
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero rational function")
        num = MultiPoly.one(self.vt)
        for f, k in self.den.items():
            num = num * f**k
        return RatFunc(num, self.num, lazy=self.lazy)

    def __truediv__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._lift(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return RatFunc(self.num**k, {f: e * k for f, e in self.den.items()}, self.lazy, _trusted=True)

    def __eq__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return (self - other).num.is_zero()

    __hash__ = None

    def permute(self, w) -> RatFunc:
        return RatFunc(self.num.permute(w), [(f.permute(w), k) for f, k in self.den.items()], lazy=self.lazy)

    def evaluate(self, values, modulus: int | None = None):
        d = 1
        for f, k in self.den.items():
            v = f.evaluate(values, modulus)
            if v == 0:
                raise PoleError(f"denominator factor {f} vanishes")
            d = d * v**k if modulus is None else d * pow(v, k, modulus) % modulus
        n = self.num.evaluate(values, modulus)
        if modulus is None:
            return _norm(Fraction(n) / d)
        return n * pow(d, -1, modulus) % modulus

    def __str__(self):
        if not self.den:
            return str(self.num)
        den = "*".join(f"({f})" + (f"^{k}" if k > 1 else "") for f, k in sorted(self.den.items(), key=lambda t: str(t[0])))
        return f"({self.num})/({den})"

    __repr__ = __str__


def product_ratio(vt: VarTable, nums: Iterable[MultiPoly], dens: Iterable[MultiPoly], lazy: bool = False) -> RatFunc:
    """``prod(nums) / prod(dens)``, cancelling factors equal up to a scalar before expanding."""
    unit = Fraction(1)
    counts: dict = {}
    for sign, fs in ((1, nums), (-1, dens)):
        for f in fs:
            if f.is_constant():
                c = f.constant_value()
                if c == 0 and sign < 0:
                    raise ZeroDivisionError("zero factor in denominator")
                unit = unit * c if sign > 0 else unit / c
                continue
            q = _primitive_normalize(f)
            u = Fraction(f.leading_coefficient()) / q.leading_coefficient()
            unit = unit * u if sign > 0 else unit / u
            counts[q] = counts.get(q, 0) + sign
    num = MultiPoly.const(vt, unit)
    den = []
    for f, k in counts.items():
        if k > 0:
            num = num * f**k
        elif k < 0:
            den.append((f, -k))
    return RatFunc(num, den, lazy=lazy)


def as_ratfunc(f) -> RatFunc:
    return f if isinstance(f, RatFunc) else RatFunc.from_poly(f)


@dataclass
class EvalPoint:
    """Rational coordinates for every variable of a :class:`VarTable`."""

    vt: VarTable
    values: tuple
    seed: int | None = None
    window: int = field(default=2**31)

    @classmethod
    def random(cls, vt: VarTable, rng: random.Random, window: int = 2**31, seed=None):
        return cls(vt, tuple(rng.randint(-window, window) for _ in range(vt.nvars)), seed, window)

    @classmethod
    def from_mapping(cls, vt: VarTable, mapping: Mapping[str, object], seed=None):
        vals = []
        for i in range(vt.nvars):
            vals.append(Fraction(mapping.get(vt.name(i), 0)))
        return cls(vt, tuple(_norm(v) for v in vals), seed)


def evaluate(f, point: EvalPoint, modulus: int | None = None):
    """Evaluate a polynomial or rational function; raises :class:`PoleError` at a pole."""
    return f.evaluate(point.values, modulus)


def random_poly(vt: VarTable, rng: random.Random, maxdeg: int, nterms: int = 6, coeff: int = 9,
                x_only: bool = False) -> MultiPoly:
    n = vt.m if x_only else vt.nvars
    terms = {}
    for _ in range(nterms):
        d = rng.randint(0, maxdeg)
        e = [0] * vt.nvars
        for _ in range(d):
            e[rng.randrange(n)] += 1 if n else 0
        terms[tuple(e)] = terms.get(tuple(e), 0) + rng.randint(-coeff, coeff)
    return MultiPoly(vt, terms)


def monomials(nvars: int, degree: int) -> Iterable[tuple]:
    """Exponent tuples of total degree exactly ``degree`` in ``nvars`` variables."""
    if nvars == 0:
        if degree == 0:
            yield ()
        return
    if nvars == 1:
        yield (degree,)
        return
    for k in range(degree, -1, -1):
        for rest in monomials(nvars - 1, degree - k):
            yield (k,) + rest
