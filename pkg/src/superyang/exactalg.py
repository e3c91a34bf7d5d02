"""Exact rational arithmetic and sparse polynomials in u and v.

Coefficients are ``fractions.Fraction`` (normalized to ``int`` when the
denominator is 1, which keeps the hot loops cheap).  A ``Poly`` maps
exponent pairs ``(deg_u, deg_v)`` to nonzero coefficients.  Rational
functions of u are ``RationalScalar`` pairs compared by cross-multiplication.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import sympy

Number = Union[int, Fraction]
Terms = Dict[Tuple[int, int], Number]


def rat(x) -> Number:
    """Coerce ints, Fractions and "p/q" strings to a normalized rational."""
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, str):
        return rat(Fraction(x.strip()))
    if isinstance(x, sympy.Rational):
        return rat(Fraction(int(x.p), int(x.q)))
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def _norm(c: Number) -> Number:
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def rat_to_str(c: Number) -> str:
    c = Fraction(c)
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def _add_into(acc: Terms, terms: Terms, scale: Number = 1) -> None:
    for k, c in terms.items():
        s = acc.get(k, 0) + c * scale
        if s:
            acc[k] = _norm(s)
        elif k in acc:
            del acc[k]


def _mul_into(acc: Terms, a: Terms, b: Terms, scale: Number = 1) -> None:
    """acc += scale * a * b, in place."""
    for (i1, j1), c1 in a.items():
        c1 = c1 * scale
        for (i2, j2), c2 in b.items():
            k = (i1 + i2, j1 + j2)
            s = acc.get(k, 0) + c1 * c2
            if s:
                acc[k] = _norm(s)
            else:
                acc.pop(k, None)


class Poly:
    """Sparse polynomial in u, v with exact rational coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Terms] = None, _trusted: bool = False):
        if terms is None:
            self.terms: Terms = {}
        elif _trusted:
            self.terms = terms
        else:
            clean: Terms = {}
            for (i, j), c in terms.items():
                if i < 0 or j < 0:
                    raise ValueError("negative exponent")
                c = rat(c)
                if c:
                    clean[(int(i), int(j))] = c
            self.terms = clean

    # constructors
    @staticmethod
    def const(c) -> "Poly":
        c = rat(c)
        return Poly({(0, 0): c} if c else {}, _trusted=True)

    @staticmethod
    def monomial(i: int, j: int = 0, c=1) -> "Poly":
        return Poly({(i, j): c})

    @staticmethod
    def u() -> "Poly":
        return Poly({(1, 0): 1}, _trusted=True)

    @staticmethod
    def v() -> "Poly":
        return Poly({(0, 1): 1}, _trusted=True)

    @staticmethod
    def from_coeffs(coeffs: Sequence, var: str = "u") -> "Poly":
        """coeffs[k] is the coefficient of var**k."""
        if var == "u":
            return Poly({(k, 0): c for k, c in enumerate(coeffs)})
        return Poly({(0, k): c for k, c in enumerate(coeffs)})

    @staticmethod
    def from_roots(roots: Iterable, var: str = "u") -> "Poly":
        p = Poly.const(1)
        x = Poly.u() if var == "u" else Poly.v()
        for r in roots:
            p = p * (x - Poly.const(r))
        return p

    # arithmetic
    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            return other
        return Poly.const(other)

    def __add__(self, other) -> "Poly":
        other = self._coerce(other)
        acc = dict(self.terms)
        _add_into(acc, other.terms)
        return Poly(acc, _trusted=True)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly({k: -c for k, c in self.terms.items()}, _trusted=True)

    def __sub__(self, other) -> "Poly":
        other = self._coerce(other)
        acc = dict(self.terms)
        _add_into(acc, other.terms, -1)
        return Poly(acc, _trusted=True)

    def __rsub__(self, other) -> "Poly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            c = rat(other)
            if not c:
                return Poly()
            return Poly({k: _norm(v * c) for k, v in self.terms.items()}, _trusted=True)
        acc: Terms = {}
        _mul_into(acc, self.terms, other.terms)
        return Poly(acc, _trusted=True)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative power")
        out = Poly.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.terms == other.terms
        try:
            return self.terms == Poly.const(other).terms
        except TypeError:
            return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    # inspection
    def deg_u(self) -> int:
        return max((i for i, _ in self.terms), default=-1)

    def deg_v(self) -> int:
        return max((j for _, j in self.terms), default=-1)

    def degree(self) -> int:
        return max((i + j for i, j in self.terms), default=-1)

    def is_univariate(self) -> bool:
        return all(j == 0 for _, j in self.terms)

    def is_constant(self) -> bool:
        return all(k == (0, 0) for k in self.terms)

    def constant_term(self) -> Number:
        return self.terms.get((0, 0), 0)

    def coeffs(self) -> List[Number]:
        """Coefficient list of a univariate polynomial in u, lowest first."""
        self._require_univariate()
        out = [0] * (self.deg_u() + 1)
        for (i, _), c in self.terms.items():
            out[i] = c
        return out

    def leading_coeff(self) -> Number:
        self._require_univariate()
        if not self.terms:
            return 0
        return self.terms[(self.deg_u(), 0)]

    def is_monic(self) -> bool:
        return bool(self.terms) and self.leading_coeff() == 1

    def _require_univariate(self) -> None:
        if not self.is_univariate():
            raise ValueError("expected a polynomial in u alone")

    def __call__(self, u=0, v=0) -> Number:
        u, v = rat(u), rat(v)
        total: Number = 0
        for (i, j), c in self.terms.items():
            total += c * u**i * v**j
        return _norm(Fraction(total)) if isinstance(total, Fraction) else total

    # substitutions
    def neg_u(self) -> "Poly":
        return Poly({(i, j): (-c if i % 2 else c) for (i, j), c in self.terms.items()}, _trusted=True)

    def neg_v(self) -> "Poly":
        return Poly({(i, j): (-c if j % 2 else c) for (i, j), c in self.terms.items()}, _trusted=True)

    def swap(self) -> "Poly":
        return Poly({(j, i): c for (i, j), c in self.terms.items()}, _trusted=True)

    def shift_u(self, c) -> "Poly":
        """p(u + c)."""
        c = rat(c)
        if not c:
            return self
        shifted = Poly.u() + Poly.const(c)
        out: Terms = {}
        powers = {0: Poly.const(1)}
        for (i, j), a in sorted(self.terms.items()):
            if i not in powers:
                powers[i] = shifted ** i
            for (k, _), b in powers[i].terms.items():
                key = (k, j)
                s = out.get(key, 0) + a * b
                if s:
                    out[key] = _norm(s)
                else:
                    out.pop(key, None)
        return Poly(out, _trusted=True)

    def eval_u(self, c) -> "Poly":
        c = rat(c)
        out: Terms = {}
        for (i, j), a in self.terms.items():
            s = out.get((0, j), 0) + a * c**i
            if s:
                out[(0, j)] = _norm(s)
            else:
                out.pop((0, j), None)
        return Poly(out, _trusted=True)

    def eval_v(self, c) -> "Poly":
        return self.swap().eval_u(c).swap()

    def to_v(self) -> "Poly":
        """Rename u to v in a univariate polynomial."""
        self._require_univariate()
        return self.swap()

    def div_linear(self, r) -> Tuple["Poly", Number]:
        """Synthetic division by (u - r); returns (quotient, remainder)."""
        cs = self.coeffs()
        r = rat(r)
        if not cs:
            return Poly(), 0
        q = [0] * (len(cs) - 1)
        acc: Number = 0
        for k in range(len(cs) - 1, -1, -1):
            acc = _norm(acc * r + cs[k])
            if k > 0:
                q[k - 1] = acc
        return Poly.from_coeffs(q), acc

    def monic(self) -> "Poly":
        lc = self.leading_coeff()
        if not lc:
            raise ZeroDivisionError("zero polynomial has no monic form")
        return self if lc == 1 else self * (1 / Fraction(lc))

    # serialization / printing
    def sorted_terms(self) -> List[Tuple[Tuple[int, int], Number]]:
        return sorted(self.terms.items(), key=lambda kv: (-(kv[0][0] + kv[0][1]), -kv[0][0]))

    def to_json(self) -> list:
        return [[i, j, rat_to_str(c)] for (i, j), c in self.sorted_terms()]

    @staticmethod
    def from_json(data) -> "Poly":
        if isinstance(data, (int, str)) and not isinstance(data, bool):
            if isinstance(data, str) and any(ch.isalpha() for ch in data):
                return parse_poly(data)
            return Poly.const(rat(data))
        terms: Terms = {}
        for item in data:
            i, j, c = item
            c = rat(c)
            s = terms.get((int(i), int(j)), 0) + c
            terms[(int(i), int(j))] = s
        return Poly(terms)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (i, j), c in self.sorted_terms():
            mono = []
            if i:
                mono.append("u" if i == 1 else f"u^{i}")
            if j:
                mono.append("v" if j == 1 else f"v^{j}")
            mono_s = "*".join(mono)
            cf = Fraction(c)
            neg = cf < 0
            mag = -cf if neg else cf
            if mono_s:
                coef = "" if mag == 1 else (rat_to_str(mag) + "*")
                body = coef + mono_s
            else:
                body = rat_to_str(mag)
            parts.append(("-" if neg else "+", body))
        first_sign, first_body = parts[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self) -> str:
        return f"Poly({self})"


def poly_arith(a: Poly, b: Poly, op: str) -> Poly:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def substitute(p: Poly, which: str, c=None) -> Poly:
    """Apply one of the elementary substitutions.

    which: "shift" (u -> u+c), "neg_u", "neg_v", "swap" (u <-> v),
    "eval_u" (u -> c), "eval_v" (v -> c).
    """
    if which == "shift":
        return p.shift_u(c)
    if which == "neg_u":
        return p.neg_u()
    if which == "neg_v":
        return p.neg_v()
    if which == "swap":
        return p.swap()
    if which == "eval_u":
        return p.eval_u(c)
    if which == "eval_v":
        return p.eval_v(c)
    raise ValueError(f"unknown substitution {which!r}")


_U = sympy.Symbol("u")
_V = sympy.Symbol("v")


def parse_poly(text: str) -> Poly:
    """Parse a human-written polynomial such as "u^2 - 1/4" in u and v."""
    expr = sympy.sympify(text.replace("^", "**"), locals={"u": _U, "v": _V})
    sp = sympy.Poly(sympy.expand(expr), _U, _V, domain="QQ")
    return Poly({m: rat(sympy.Rational(c)) for m, c in sp.terms()})


def parse_scalar(text: str) -> "RationalScalar":
    """Parse a rational function of u such as "(u^2-1)/u^2"."""
    expr = sympy.sympify(text.replace("^", "**"), locals={"u": _U})
    num, den = sympy.fraction(sympy.together(expr))
    return RationalScalar(parse_poly(str(num)), parse_poly(str(den)))


def rational_roots(p: Poly) -> List[Number]:
    """All rational roots of a univariate polynomial, with multiplicity."""
    if p.is_zero():
        raise ValueError("the zero polynomial has every root")
    cs = [Fraction(c) for c in p.coeffs()]
    roots: List[Number] = []
    while cs and cs[0] == 0:
        roots.append(0)
        cs.pop(0)
    if len(cs) <= 1:
        return roots
    lcm = 1
    for c in cs:
        lcm = lcm * c.denominator // _gcd(lcm, c.denominator)
    ints = [int(c * lcm) for c in cs]
    a0, an = abs(ints[0]), abs(ints[-1])
    cands = set()
    for q in sympy.divisors(an):
        for pp in sympy.divisors(a0):
            cands.add(Fraction(pp, q))
            cands.add(Fraction(-pp, q))
    cur = Poly.from_coeffs(ints)
    for r in sorted(cands):
        while cur.deg_u() >= 1:
            quo, rem = cur.div_linear(r)
            if rem != 0:
                break
            roots.append(rat(r))
            cur = quo
    return sorted(roots)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


class RationalScalar:
    """A rational function num(u)/den(u); equality by cross-multiplication."""

    __slots__ = ("num", "den")
    __hash__ = None  # equality is not structural

    def __init__(self, num, den=None):
        num = num if isinstance(num, Poly) else Poly.const(num)
        den = Poly.const(1) if den is None else (den if isinstance(den, Poly) else Poly.const(den))
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if not (num.is_univariate() and den.is_univariate()):
            raise ValueError("rational scalars are functions of u alone")
        self.num = num
        self.den = den

    @staticmethod
    def one() -> "RationalScalar":
        return RationalScalar(Poly.const(1))

    @staticmethod
    def u_power(k: int) -> "RationalScalar":
        """u**k for any integer k."""
        if k >= 0:
            return RationalScalar(Poly.monomial(k))
        return RationalScalar(Poly.const(1), Poly.monomial(-k))

    def _coerce(self, other) -> "RationalScalar":
        if isinstance(other, RationalScalar):
            return other
        return RationalScalar(other if isinstance(other, Poly) else Poly.const(other))

    def __mul__(self, other) -> "RationalScalar":
        o = self._coerce(other)
        return RationalScalar(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RationalScalar":
        o = self._coerce(other)
        if o.num.is_zero():
            raise ZeroDivisionError("division by the zero function")
        return RationalScalar(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other) -> "RationalScalar":
        return self._coerce(other) / self

    def __add__(self, other) -> "RationalScalar":
        o = self._coerce(other)
        if self.den == o.den:
            return RationalScalar(self.num + o.num, self.den)
        return RationalScalar(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self) -> "RationalScalar":
        return RationalScalar(-self.num, self.den)

    def __sub__(self, other) -> "RationalScalar":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "RationalScalar":
        return self._coerce(other) - self

    def __pow__(self, n: int) -> "RationalScalar":
        if n >= 0:
            return RationalScalar(self.num**n, self.den**n)
        return RationalScalar(self.den ** (-n), self.num ** (-n))

    def __eq__(self, other) -> bool:
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self.num * o.den == o.num * self.den

    def neg_u(self) -> "RationalScalar":
        """f(-u)."""
        return RationalScalar(self.num.neg_u(), self.den.neg_u())

    def shift(self, c) -> "RationalScalar":
        """f(u + c)."""
        return RationalScalar(self.num.shift_u(c), self.den.shift_u(c))

    def is_even(self) -> bool:
        return self == self.neg_u()

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def value_at_infinity(self) -> Optional[Number]:
        """Limit as u -> infinity, or None when it diverges."""
        dn, dd = self.num.deg_u(), self.den.deg_u()
        if self.num.is_zero() or dn < dd:
            return 0
        if dn > dd:
            return None
        return rat(Fraction(self.num.leading_coeff()) / Fraction(self.den.leading_coeff()))

    def series(self, n: int) -> List[Number]:
        """First n coefficients c_0..c_{n-1} of the expansion sum c_k u^{-k}.

        Requires the function to be finite at infinity.
        """
        dn, dd = self.num.deg_u(), self.den.deg_u()
        if not self.num.is_zero() and dn > dd:
            raise ValueError("pole at infinity")
        # in w = 1/u: num(u)/den(u) = w^{dd-dn} * rev(num)(w) / rev(den)(w)
        a = [Fraction(c) for c in reversed(self.num.coeffs())] if not self.num.is_zero() else []
        b = [Fraction(c) for c in reversed(self.den.coeffs())]
        shift = dd - dn if a else 0
        a = [Fraction(0)] * shift + a
        out: List[Fraction] = []
        for k in range(n):
            s = a[k] if k < len(a) else Fraction(0)
            for j in range(1, min(k, len(b) - 1) + 1):
                s -= b[j] * out[k - j]
            out.append(s / b[0])
        return [rat(c) for c in out]

    def __call__(self, u) -> Number:
        d = self.den(u)
        if d == 0:
            raise ZeroDivisionError("pole")
        return rat(Fraction(self.num(u)) / Fraction(d))

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @staticmethod
    def from_json(data) -> "RationalScalar":
        if isinstance(data, str):
            return parse_scalar(data)
        if isinstance(data, (int, float)) and not isinstance(data, bool):
            return RationalScalar(Poly.const(rat(data)))
        return RationalScalar(Poly.from_json(data["num"]), Poly.from_json(data.get("den", [[0, 0, "1"]])))

    def normalized(self) -> "RationalScalar":
        """Same function with a monic denominator."""
        lc = self.den.leading_coeff()
        if lc == 1:
            return self
        inv = Fraction(1) / Fraction(lc)
        return RationalScalar(self.num * Poly.const(inv), self.den * Poly.const(inv))

    def __str__(self) -> str:
        f = self.normalized()
        if f.den == Poly.const(1):
            return str(f.num)
        return f"({f.num})/({f.den})"

    def __repr__(self) -> str:
        return f"RationalScalar({self})"


def scalar_eq(a: RationalScalar, b: RationalScalar) -> bool:
    return a.num * b.den == b.num * a.den


# exact linear algebra over Q (backed by sympy)

def _to_sympy_matrix(rows: Sequence[Sequence[Number]]) -> sympy.Matrix:
    return sympy.Matrix([[sympy.Rational(Fraction(c).numerator, Fraction(c).denominator) for c in row] for row in rows])


def rank_over_q(rows: Sequence[Sequence[Number]]) -> int:
    if not rows:
        return 0
    from sympy.polys.matrices import DomainMatrix

    dm = DomainMatrix([[sympy.QQ(Fraction(c).numerator, Fraction(c).denominator) for c in row] for row in rows],
                      (len(rows), len(rows[0])), sympy.QQ)
    return dm.rank()


def nullspace_over_q(rows: Sequence[Sequence[Number]], ncols: int) -> List[List[Number]]:
    """Basis of {x : rows . x = 0} as lists of rationals."""
    if not rows:
        return [[1 if i == j else 0 for i in range(ncols)] for j in range(ncols)]
    basis = _to_sympy_matrix(rows).nullspace()
    return [[rat(c) for c in vec] for vec in basis]
