"""Exact scalar tower over the rationals.

Every matrix entry in this package is drawn from one of four rings, all
implemented here with exact arithmetic and a unique stored form:

  Fraction        -- arbitrary-precision rationals (stdlib, re-exported
                     as ``Rational``)
  MultiPoly       -- polynomials over Q in the fixed variables (s, u, v, h)
  RatFunc         -- quotients of MultiPolys, kept fully reduced
  TruncatedSeries -- h-power series cut at a fixed order with RatFunc
                     coefficients free of h

The variable set is global and ordered s < u < v < h.  Monomials are
compared in graded lexicographic order (total degree first, then h is the
most significant variable).  A RatFunc is canonical when gcd(num, den) = 1,
the denominator has coprime integer coefficients, and the denominator's
leading coefficient is positive; equality is then structural.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as _int_gcd

from .errors import (
    DivisionByZero,
    EvalPole,
    OrderMismatch,
    ParseError,
    PoleAtExpansionPoint,
    SubstitutionPole,
)

Rational = Fraction

VARS = ("s", "u", "v", "h")
NVARS = len(VARS)
VAR_INDEX = {name: i for i, name in enumerate(VARS)}

_ZERO_EXP = (0,) * NVARS
_F0 = Fraction(0)
_F1 = Fraction(1)


def _grlex_key(exp):
    # total degree first; ties broken with h most significant
    return (sum(exp), exp[::-1])


class MultiPoly:
    """Sparse polynomial over Q in (s, u, v, h).

    Stored as a dict mapping exponent 4-tuples to nonzero Fractions; the
    stored form is unique for equal polynomials.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        merged: dict = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for exp, coeff in items:
                exp = tuple(exp)
                if len(exp) != NVARS or any(e < 0 for e in exp):
                    raise ValueError(f"bad exponent vector {exp!r}")
                c = merged.get(exp, _F0) + Fraction(coeff)
                if c:
                    merged[exp] = c
                else:
                    merged.pop(exp, None)
        self.terms = merged

    @classmethod
    def _raw(cls, terms: dict) -> "MultiPoly":
        # trusted constructor: terms already merged, zero-free
        p = object.__new__(cls)
        p.terms = terms
        return p

    @classmethod
    def const(cls, c) -> "MultiPoly":
        c = Fraction(c)
        return cls._raw({_ZERO_EXP: c} if c else {})

    @classmethod
    def variable(cls, name: str) -> "MultiPoly":
        exp = [0] * NVARS
        exp[VAR_INDEX[name]] = 1
        return cls._raw({tuple(exp): _F1})

    # -- queries ------------------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def is_const(self) -> bool:
        return not self.terms or self.terms.keys() == {_ZERO_EXP}

    def is_one(self) -> bool:
        return self.terms.get(_ZERO_EXP) == 1 and len(self.terms) == 1

    def const_value(self) -> Fraction:
        if not self.is_const():
            raise ValueError("not a constant polynomial")
        return self.terms.get(_ZERO_EXP, _F0)

    def used_vars(self) -> set:
        used = set()
        for exp in self.terms:
            for i, e in enumerate(exp):
                if e:
                    used.add(i)
        return used

    def degree_in(self, vi: int) -> int:
        if not self.terms:
            return -1
        return max(exp[vi] for exp in self.terms)

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(exp) for exp in self.terms)

    def leading_exp(self):
        return max(self.terms, key=_grlex_key)

    def leading_coeff(self) -> Fraction:
        return self.terms[self.leading_exp()]

    # -- ring operations ----------------------------------------------

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == ({_ZERO_EXP: Fraction(other)} if other else {})
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __neg__(self):
        return MultiPoly._raw({e: -c for e, c in self.terms.items()})

    def __add__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        if not self.terms:
            return other
        if not other.terms:
            return self
        out = dict(self.terms)
        for exp, c in other.terms.items():
            s = out.get(exp, _F0) + c
            if s:
                out[exp] = s
            else:
                out.pop(exp, None)
        return MultiPoly._raw(out)

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return _as_poly(other) + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            if not c:
                return _P_ZERO
            return MultiPoly._raw({e: k * c for e, k in self.terms.items()})
        if not isinstance(other, MultiPoly):
            return NotImplemented
        if not self.terms or not other.terms:
            return _P_ZERO
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exp = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(exp, _F0) + c1 * c2
                if s:
                    out[exp] = s
                else:
                    out.pop(exp, None)
        return MultiPoly._raw(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = _P_ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- evaluation and substitution ----------------------------------

    def eval(self, point: dict) -> Fraction:
        """Evaluate at a full point {var name: Fraction}."""
        vals = tuple(Fraction(point[name]) for name in VARS)
        total = _F0
        for exp, c in self.terms.items():
            term = c
            for vi, e in enumerate(exp):
                if e:
                    term *= vals[vi] ** e
            total += term
        return total

    def subst(self, var: str, expr: "MultiPoly") -> "MultiPoly":
        """Substitute a polynomial for one variable."""
        return self.subst_map({var: expr})

    def subst_map(self, mapping: dict) -> "MultiPoly":
        """Simultaneously substitute polynomials for several variables."""
        exprs = {VAR_INDEX[name]: _as_poly(val) for name, val in mapping.items()}
        out = _P_ZERO
        pow_cache: dict = {}
        for exp, c in self.terms.items():
            term = MultiPoly.const(c)
            rest = [0] * NVARS
            for vi, e in enumerate(exp):
                if not e:
                    continue
                if vi in exprs:
                    key = (vi, e)
                    if key not in pow_cache:
                        pow_cache[key] = exprs[vi] ** e
                    term = term * pow_cache[key]
                else:
                    rest[vi] = e
            if any(rest):
                term = term * MultiPoly._raw({tuple(rest): _F1})
            out = out + term
        return out

    # -- printing ------------------------------------------------------

    def __str__(self):
        return poly_to_str(self)

    def __repr__(self):
        return f"MultiPoly({poly_to_str(self)})"


def _as_poly(x):
    if isinstance(x, MultiPoly):
        return x
    if isinstance(x, (int, Fraction)):
        return MultiPoly.const(x)
    return NotImplemented


_P_ZERO = MultiPoly._raw({})
_P_ONE = MultiPoly._raw({_ZERO_EXP: _F1})

P_S = MultiPoly.variable("s")
P_U = MultiPoly.variable("u")
P_V = MultiPoly.variable("v")
P_H = MultiPoly.variable("h")


def poly_normalize(raw_terms) -> MultiPoly:
    """Merge duplicate monomials and drop zero coefficients."""
    return MultiPoly(raw_terms)


# ---------------------------------------------------------------------------
# content, primitive parts, exact division, gcd
# ---------------------------------------------------------------------------

def _rational_content(p: MultiPoly) -> Fraction:
    """Positive rational c such that p/c has coprime integer coefficients."""
    num_gcd = 0
    den_lcm = 1
    for c in p.terms.values():
        num_gcd = _int_gcd(num_gcd, abs(c.numerator))
        den_lcm = den_lcm * c.denominator // _int_gcd(den_lcm, c.denominator)
    return Fraction(num_gcd, den_lcm)


def _pos_primitive(p: MultiPoly) -> MultiPoly:
    """Scale to coprime integer coefficients with positive leading coefficient."""
    if not p.terms:
        return _P_ZERO
    c = _rational_content(p)
    if p.leading_coeff() < 0:
        c = -c
    inv = 1 / c
    return MultiPoly._raw({e: k * inv for e, k in p.terms.items()})


def poly_divexact(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    """Exact quotient a/b; raises ValueError when b does not divide a."""
    if not b.terms:
        raise DivisionByZero("division by the zero polynomial")
    if not a.terms:
        return _P_ZERO
    if b.is_const():
        inv = 1 / b.const_value()
        return MultiPoly._raw({e: c * inv for e, c in a.terms.items()})
    lead_b = b.leading_exp()
    lc_b = b.terms[lead_b]
    rem = dict(a.terms)
    quo: dict = {}
    while rem:
        lead_r = max(rem, key=_grlex_key)
        diff = tuple(er - eb for er, eb in zip(lead_r, lead_b))
        if any(d < 0 for d in diff):
            raise ValueError("inexact polynomial division")
        qc = rem[lead_r] / lc_b
        quo[diff] = qc
        for eb, cb in b.terms.items():
            exp = tuple(d + e for d, e in zip(diff, eb))
            s = rem.get(exp, _F0) - qc * cb
            if s:
                rem[exp] = s
            else:
                rem.pop(exp, None)
    return MultiPoly._raw(quo)


def poly_divides(b: MultiPoly, a: MultiPoly) -> bool:
    try:
        poly_divexact(a, b)
        return True
    except ValueError:
        return False


# univariate views: p as sum_k coeff_k * var^k with MultiPoly coefficients

def _univ_coeffs(p: MultiPoly, vi: int) -> dict:
    out: dict = {}
    for exp, c in p.terms.items():
        k = exp[vi]
        rest = exp[:vi] + (0,) + exp[vi + 1:]
        bucket = out.setdefault(k, {})
        bucket[rest] = bucket.get(rest, _F0) + c
    return {k: MultiPoly._raw({e: c for e, c in bucket.items() if c})
            for k, bucket in out.items()}


def _from_univ(coeffs: dict, vi: int) -> MultiPoly:
    out: dict = {}
    for k, poly in coeffs.items():
        for exp, c in poly.terms.items():
            e = list(exp)
            e[vi] += k
            out[tuple(e)] = c
    return MultiPoly._raw(out)


def _content_wrt(p: MultiPoly, vi: int) -> MultiPoly:
    cont = _P_ZERO
    for coeff in _univ_coeffs(p, vi).values():
        cont = poly_gcd(cont, coeff)
        if cont.is_one():
            break
    return cont


def _primitive_wrt(p: MultiPoly, vi: int) -> MultiPoly:
    cont = _content_wrt(p, vi)
    return poly_divexact(p, cont)


def _prem(f: MultiPoly, g: MultiPoly, vi: int) -> MultiPoly:
    """Pseudo-remainder of f by g in the variable vi."""
    dg = g.degree_in(vi)
    cg = _univ_coeffs(g, vi)
    lc_g = cg[dg]
    r = f
    while r.terms and r.degree_in(vi) >= dg:
        dr = r.degree_in(vi)
        cr = _univ_coeffs(r, vi)
        lc_r = cr[dr]
        shift = [0] * NVARS
        shift[vi] = dr - dg
        mono = MultiPoly._raw({tuple(shift): _F1})
        r = r * lc_g - g * (lc_r * mono)
    return r


def poly_gcd(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    """Greatest common divisor, normalized to coprime integer coefficients
    with positive leading coefficient; gcd(0, b) is the normalized b."""
    if not a.terms:
        return _pos_primitive(b)
    if not b.terms:
        return _pos_primitive(a)
    if a.is_const() or b.is_const():
        return _P_ONE
    if a.terms == b.terms:
        return _pos_primitive(a)
    va, vb = a.used_vars(), b.used_vars()
    vi = max(va | vb)
    if vi not in va:
        return poly_gcd(a, _content_wrt(b, vi))
    if vi not in vb:
        return poly_gcd(_content_wrt(a, vi), b)
    ca = _content_wrt(a, vi)
    cb = _content_wrt(b, vi)
    cont = poly_gcd(ca, cb)
    f = poly_divexact(a, ca)
    g = poly_divexact(b, cb)
    if f.degree_in(vi) < g.degree_in(vi):
        f, g = g, f
    # primitive remainder sequence in the main variable
    while True:
        r = _prem(f, g, vi)
        if not r.terms:
            result = g
            break
        if r.degree_in(vi) == 0:
            # common divisor is free of the main variable, hence divides
            # the (trivial) contents of the primitive parts
            return _pos_primitive(cont)
        f, g = g, _primitive_wrt(r, vi)
    return _pos_primitive(cont * _primitive_wrt(result, vi))


def poly_lcm(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    if not a.terms or not b.terms:
        return _P_ZERO
    g = poly_gcd(a, b)
    return _pos_primitive(poly_divexact(a * b, g))


# ---------------------------------------------------------------------------
# rational functions
# ---------------------------------------------------------------------------

class RatFunc:
    """Reduced quotient of two MultiPolys; the field Q(s, u, v, h).

    The stored form is canonical: gcd(num, den) = 1, the denominator is
    primitive with integer coefficients, and its leading coefficient is
    positive.  Equality and hashing are structural.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = _as_poly(num)
        den = _P_ONE if den is None else _as_poly(den)
        if num is NotImplemented or den is NotImplemented:
            raise TypeError("RatFunc components must be polynomial-like")
        if not den.terms:
            raise DivisionByZero("zero denominator")
        if not num.terms:
            self.num = _P_ZERO
            self.den = _P_ONE
            return
        if not den.is_one():
            g = poly_gcd(num, den)
            if not g.is_one():
                num = poly_divexact(num, g)
                den = poly_divexact(den, g)
        if den.is_const():
            num = num * (1 / den.const_value())
            den = _P_ONE
        else:
            c = _rational_content(den)
            if den.leading_coeff() < 0:
                c = -c
            if c != 1:
                inv = 1 / c
                den = MultiPoly._raw({e: k * inv for e, k in den.terms.items()})
                num = num * inv
        self.num = num
        self.den = den

    @classmethod
    def _raw(cls, num: MultiPoly, den: MultiPoly) -> "RatFunc":
        # trusted: operands already canonical
        x = object.__new__(cls)
        x.num = num
        x.den = den
        return x

    @classmethod
    def const(cls, c) -> "RatFunc":
        return cls._raw(MultiPoly.const(c), _P_ONE)

    @classmethod
    def variable(cls, name: str) -> "RatFunc":
        return cls._raw(MultiPoly.variable(name), _P_ONE)

    # -- queries ------------------------------------------------------

    def __bool__(self):
        return bool(self.num.terms)

    def is_const(self) -> bool:
        return self.num.is_const() and self.den.is_one()

    def const_value(self) -> Fraction:
        if not self.is_const():
            raise ValueError("not a constant rational function")
        return self.num.const_value()

    def used_vars(self) -> set:
        return self.num.used_vars() | self.den.used_vars()

    def __eq__(self, other):
        other = _as_ratfunc(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    # -- field operations ----------------------------------------------

    def __neg__(self):
        return RatFunc._raw(-self.num, self.den)

    def __add__(self, other):
        other = _as_ratfunc(other)
        if other is NotImplemented:
            return NotImplemented
        if not self.num.terms:
            return other
        if not other.num.terms:
            return self
        if self.den.terms == other.den.terms:
            return RatFunc(self.num + other.num, self.den)
        if self.den.is_one():
            return RatFunc(self.num * other.den + other.num, other.den)
        if other.den.is_one():
            return RatFunc(self.num + other.num * self.den, self.den)
        g = poly_gcd(self.den, other.den)
        if g.is_one():
            num = self.num * other.den + other.num * self.den
            den = self.den * other.den
            # reduced fractions with coprime denominators stay reduced
            return RatFunc._raw(num, den) if num.terms else _RF_ZERO
        return RatFunc(self.num * other.den + other.num * self.den,
                       self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_ratfunc(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return _as_ratfunc(other) + (-self)

    def __mul__(self, other):
        other = _as_ratfunc(other)
        if other is NotImplemented:
            return NotImplemented
        if not self.num.terms or not other.num.terms:
            return _RF_ZERO
        a_num, a_den = self.num, self.den
        b_num, b_den = other.num, other.den
        if not b_den.is_one():
            g = poly_gcd(a_num, b_den)
            if not g.is_one():
                a_num = poly_divexact(a_num, g)
                b_den = poly_divexact(b_den, g)
        if not a_den.is_one():
            g = poly_gcd(b_num, a_den)
            if not g.is_one():
                b_num = poly_divexact(b_num, g)
                a_den = poly_divexact(a_den, g)
        num = a_num * b_num
        den = a_den * b_den
        if den.is_one():
            return RatFunc._raw(num, den)
        # cross-cancelled product of reduced fractions is reduced; only the
        # denominator normalization may still move a rational unit around
        c = _rational_content(den)
        if den.leading_coeff() < 0:
            c = -c
        if c != 1:
            inv = 1 / c
            den = MultiPoly._raw({e: k * inv for e, k in den.terms.items()})
            num = num * inv
        return RatFunc._raw(num, den)

    __rmul__ = __mul__

    def inv(self) -> "RatFunc":
        if not self.num.terms:
            raise DivisionByZero("inverse of the zero function")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        other = _as_ratfunc(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inv()

    def __rtruediv__(self, other):
        return _as_ratfunc(other) * self.inv()

    # -- evaluation / substitution / expansion --------------------------

    def eval(self, point: dict) -> Fraction:
        dval = self.den.eval(point)
        if not dval:
            raise EvalPole(f"denominator vanishes at {point!r}")
        return self.num.eval(point) / dval

    def subst(self, var: str, expr) -> "RatFunc":
        return self.subst_map({var: expr})

    def subst_map(self, mapping: dict) -> "RatFunc":
        mapping = {name: _as_poly(val) for name, val in mapping.items()}
        den = self.den.subst_map(mapping)
        if not den.terms:
            raise SubstitutionPole(
                f"substitution {sorted(mapping)} kills the denominator")
        return RatFunc(self.num.subst_map(mapping), den)

    def series_in_h(self, order: int) -> "TruncatedSeries":
        return TruncatedSeries.from_ratfunc(self, order)

    def __str__(self):
        return ratfunc_to_str(self)

    def __repr__(self):
        return f"RatFunc({ratfunc_to_str(self)})"


def _as_ratfunc(x):
    if isinstance(x, RatFunc):
        return x
    if isinstance(x, (int, Fraction)):
        return RatFunc.const(x)
    if isinstance(x, MultiPoly):
        return RatFunc._raw(x, _P_ONE) if x.terms else _RF_ZERO
    return NotImplemented


_RF_ZERO = RatFunc._raw(_P_ZERO, _P_ONE)
_RF_ONE = RatFunc._raw(_P_ONE, _P_ONE)

RF_S = RatFunc.variable("s")
RF_U = RatFunc.variable("u")
RF_V = RatFunc.variable("v")
RF_H = RatFunc.variable("h")


def ratfunc(num, den=None) -> RatFunc:
    """Convenience constructor accepting ints, Fractions and MultiPolys."""
    return RatFunc(num, den)


# ---------------------------------------------------------------------------
# truncated power series in h
# ---------------------------------------------------------------------------

_H_IDX = VAR_INDEX["h"]


class TruncatedSeries:
    """Power series in h modulo h^(order+1), coefficients in Q(s, u, v)."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs):
        coeffs = tuple(_as_ratfunc(c) for c in coeffs)
        if len(coeffs) != order + 1:
            raise ValueError("need exactly order+1 coefficients")
        for c in coeffs:
            if _H_IDX in c.used_vars():
                raise ValueError("series coefficients must not involve h")
        self.order = order
        self.coeffs = coeffs

    @classmethod
    def from_ratfunc(cls, x: RatFunc, order: int) -> "TruncatedSeries":
        """Expand x around h = 0 by exact long division."""
        num_by_h = _univ_coeffs(x.num, _H_IDX)
        den_by_h = _univ_coeffs(x.den, _H_IDX)
        d0 = den_by_h.get(0)
        if d0 is None or not d0.terms:
            raise PoleAtExpansionPoint("denominator vanishes at h = 0")
        d0_inv = RatFunc(_P_ONE, d0)
        coeffs = []
        for k in range(order + 1):
            acc = _as_ratfunc(num_by_h.get(k, _P_ZERO))
            for j in range(1, k + 1):
                dj = den_by_h.get(j)
                if dj is not None and dj.terms:
                    acc = acc - _as_ratfunc(dj) * coeffs[k - j]
            coeffs.append(acc * d0_inv)
        return cls(order, coeffs)

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __add__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        if self.order != other.order:
            raise OrderMismatch(f"orders {self.order} and {other.order}")
        return TruncatedSeries(
            self.order, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        if self.order != other.order:
            raise OrderMismatch(f"orders {self.order} and {other.order}")
        out = [_RF_ZERO] * (self.order + 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j in range(self.order + 1 - i):
                b = other.coeffs[j]
                if b:
                    out[i + j] = out[i + j] + a * b
        return TruncatedSeries(self.order, out)

    def resum(self) -> RatFunc:
        """Sum_k coeffs[k] h^k as an element of Q(s, u, v, h)."""
        h = _RF_ONE
        total = _RF_ZERO
        for c in self.coeffs:
            total = total + c * h
            h = h * RF_H
        return total

    def __repr__(self):
        inner = " + ".join(f"({c})*h^{k}" for k, c in enumerate(self.coeffs))
        return f"TruncatedSeries[{inner} + O(h^{self.order + 1})]"


def series_from_ratfunc(x: RatFunc, order: int) -> TruncatedSeries:
    return TruncatedSeries.from_ratfunc(x, order)


# ---------------------------------------------------------------------------
# string grammar:  terms "p/q*s^a*u^b*v^c*h^d" joined by " + ",
# rational functions as "num / den"
# ---------------------------------------------------------------------------

def poly_to_str(p: MultiPoly) -> str:
    if not p.terms:
        return "0/1"
    parts = []
    for exp in sorted(p.terms, key=_grlex_key, reverse=True):
        c = p.terms[exp]
        piece = f"{c.numerator}/{c.denominator}"
        for vi, e in enumerate(exp):
            if e:
                piece += f"*{VARS[vi]}^{e}"
        parts.append(piece)
    return " + ".join(parts)


def poly_from_str(text: str) -> MultiPoly:
    text = text.strip()
    if not text:
        raise ParseError("empty polynomial string")
    terms = []
    for chunk in text.split("+"):
        chunk = chunk.strip()
        if not chunk:
            raise ParseError(f"empty term in {text!r}")
        factors = chunk.split("*")
        coeff_txt = factors[0].strip()
        try:
            coeff = Fraction(coeff_txt)
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad coefficient {coeff_txt!r}") from exc
        exp = [0] * NVARS
        for factor in factors[1:]:
            factor = factor.strip()
            if "^" in factor:
                name, _, power = factor.partition("^")
                try:
                    e = int(power)
                except ValueError as exc:
                    raise ParseError(f"bad exponent in {factor!r}") from exc
            else:
                name, e = factor, 1
            name = name.strip()
            if name not in VAR_INDEX:
                raise ParseError(f"unknown variable {name!r}")
            if e < 0:
                raise ParseError(f"negative exponent in {factor!r}")
            exp[VAR_INDEX[name]] += e
        terms.append((tuple(exp), coeff))
    return MultiPoly(terms)


def ratfunc_to_str(x: RatFunc) -> str:
    if x.den.is_one():
        return poly_to_str(x.num)
    return f"{poly_to_str(x.num)} / {poly_to_str(x.den)}"


def ratfunc_from_str(text: str) -> RatFunc:
    if " / " in text:
        num_txt, _, den_txt = text.partition(" / ")
        return RatFunc(poly_from_str(num_txt), poly_from_str(den_txt))
    return RatFunc(poly_from_str(text))
