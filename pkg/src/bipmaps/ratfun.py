r"""Exact univariate rational functions of the frustration variable u.

Every generating function in this package has coefficients in Q(u): the
spin-model substitutions introduce ubar = 1/u, and resumming unbounded
chains of degree-2 vertices produces denominators such as 1 - ubar^2.
Laurent polynomials are therefore not enough and we work in the full
fraction field.

A polynomial is a dense tuple of rationals, lowest degree first, with no
trailing zeros (the zero polynomial is the empty tuple).  A ``RatFunc``
keeps its fraction reduced with a monic denominator, so two equal values
are structurally equal.  Plain rationals (denominator 1, degree 0) are
the overwhelmingly common case and get fast paths throughout.
"""

from __future__ import annotations

try:
    from gmpy2 import mpq as Q
except ImportError:  # pragma: no cover - gmpy2 is optional
    from fractions import Fraction as Q

_Q0 = Q(0)
_Q1 = Q(1)

PZERO: tuple = ()
PONE = (_Q1,)


def ptrim(coeffs) -> tuple:
    """Drop trailing zeros and return the canonical tuple form."""
    n = len(coeffs)
    while n and coeffs[n - 1] == 0:
        n -= 1
    return tuple(coeffs[:n])


def pdeg(a) -> int:
    """Degree, with deg 0 = -1."""
    return len(a) - 1


def padd(a, b):
    if not a:
        return b
    if not b:
        return a
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return ptrim(out)


def pneg(a):
    return tuple(-c for c in a)


def psub(a, b):
    return padd(a, pneg(b))


def pmul(a, b):
    if not a or not b:
        return PZERO
    if len(a) == 1:
        c = a[0]
        return tuple(c * x for x in b)
    if len(b) == 1:
        c = b[0]
        return tuple(c * x for x in a)
    out = [_Q0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca == 0:
            continue
        for j, cb in enumerate(b):
            out[i + j] += ca * cb
    return ptrim(out)


def pscale(a, c):
    if c == 0 or not a:
        return PZERO
    return tuple(c * x for x in a)


def pdivmod(a, b):
    """Polynomial division over Q.  Requires b != 0."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if len(a) < len(b):
        return PZERO, a
    rem = list(a)
    quo = [_Q0] * (len(a) - len(b) + 1)
    inv_lead = 1 / b[-1]
    for i in range(len(a) - len(b), -1, -1):
        c = rem[i + len(b) - 1] * inv_lead
        if c != 0:
            quo[i] = c
            for j, cb in enumerate(b):
                rem[i + j] -= c * cb
    return ptrim(quo), ptrim(rem)


def pdiv_exact(a, b):
    q, r = pdivmod(a, b)
    if r:
        raise ArithmeticError("inexact polynomial division")
    return q


def pmonic(a):
    if not a or a[-1] == 1:
        return a
    inv = 1 / a[-1]
    return tuple(c * inv for c in a[:-1]) + (_Q1,)


def pgcd(a, b):
    """Monic gcd by the Euclidean algorithm."""
    while b:
        a, b = b, pdivmod(a, b)[1]
    return pmonic(a)


def ppow(a, n: int):
    out = PONE
    base = a
    while n:
        if n & 1:
            out = pmul(out, base)
        base = pmul(base, base)
        n >>= 1
    return out


def pshift(a, k: int):
    """Multiply by u^k (k >= 0)."""
    if not a:
        return a
    return (_Q0,) * k + tuple(a)


class RatFunc:
    r"""A reduced fraction of polynomials in u with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=PONE, *, _reduced=False):
        if not _reduced:
            num = ptrim(num)
            den = ptrim(den)
            if not den:
                raise ZeroDivisionError("rational function with zero denominator")
            if not num:
                den = PONE
            else:
                g = pgcd(num, den)
                if len(g) > 1:
                    num = pdiv_exact(num, g)
                    den = pdiv_exact(den, g)
                if den[-1] != 1:
                    inv = 1 / den[-1]
                    num = pscale(num, inv)
                    den = pmonic(den)
        self.num = num
        self.den = den

    # -- constructors ---------------------------------------------------

    @staticmethod
    def const(c) -> "RatFunc":
        c = Q(c)
        if c == 0:
            return RZERO
        if c == 1:
            return RONE
        return RatFunc((c,), PONE, _reduced=True)

    @staticmethod
    def from_pair(num, den) -> "RatFunc":
        return RatFunc(num, den)

    @staticmethod
    def u_power(k: int) -> "RatFunc":
        """u^k for any integer k (negative powers give 1/u^|k|)."""
        if k >= 0:
            return RatFunc(pshift(PONE, k), PONE, _reduced=True)
        return RatFunc(PONE, pshift(PONE, -k), _reduced=True)

    # -- predicates ------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.num

    def is_one(self) -> bool:
        return self.num == PONE and self.den == PONE

    def is_rational(self) -> bool:
        """True iff this is a constant (no u dependence)."""
        return len(self.num) <= 1 and self.den == PONE

    def is_polynomial(self) -> bool:
        return self.den == PONE

    def as_rational(self):
        if not self.is_rational():
            raise ValueError("not a constant rational")
        return self.num[0] if self.num else _Q0

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, RatFunc):
            return NotImplemented
        if not self.num:
            return other
        if not other.num:
            return self
        if self.den == PONE and other.den == PONE:
            return RatFunc(padd(self.num, other.num), PONE)
        if self.den == other.den:
            return RatFunc(padd(self.num, other.num), self.den)
        num = padd(pmul(self.num, other.den), pmul(other.num, self.den))
        return RatFunc(num, pmul(self.den, other.den))

    def __neg__(self):
        if not self.num:
            return self
        return RatFunc(pneg(self.num), self.den, _reduced=True)

    def __sub__(self, other):
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, RatFunc):
            return NotImplemented
        if not self.num or not other.num:
            return RZERO
        if self.is_one():
            return other
        if other.is_one():
            return self
        if self.den == PONE and other.den == PONE:
            return RatFunc(pmul(self.num, other.num), PONE)
        return RatFunc(pmul(self.num, other.num), pmul(self.den, other.den))

    def inverse(self) -> "RatFunc":
        if not self.num:
            raise ZeroDivisionError("inverse of zero rational function")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self * other.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = RONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        return (
            isinstance(other, RatFunc)
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self):
        return hash((self.num, self.den))

    def __bool__(self):
        return bool(self.num)

    # -- structure --------------------------------------------------------

    def laurent(self) -> dict:
        """Coefficients as a Laurent polynomial {exponent: rational}.

        Works exactly when the denominator is a power of u; raises
        otherwise (a genuine denominator signals a resummed series that
        has no Laurent expansion with finitely many terms).
        """
        k = pdeg(self.den)
        if self.den != pshift(PONE, k):
            raise ValueError("denominator is not a power of u")
        return {i - k: c for i, c in enumerate(self.num) if c != 0}

    def is_u_polynomial(self) -> bool:
        """True iff the value is a polynomial in u (no negative powers)."""
        return self.den == PONE

    def eval_at_one(self):
        """Exact value at u = 1 (denominator must not vanish there)."""
        d = sum(self.den, _Q0)
        if d == 0:
            raise ZeroDivisionError("denominator vanishes at u = 1")
        return sum(self.num, _Q0) / d

    def subst_u_power(self, m: int) -> "RatFunc":
        """Replace u by u^m (m >= 1)."""

        def blow(p):
            if not p:
                return p
            out = [_Q0] * ((len(p) - 1) * m + 1)
            for i, c in enumerate(p):
                out[i * m] = c
            return tuple(out)

        return RatFunc(blow(self.num), blow(self.den))

    # -- display ------------------------------------------------------------

    def __repr__(self):
        return f"RatFunc({format_ratfunc(self)!r})"

    def __str__(self):
        return format_ratfunc(self)


RZERO = RatFunc(PZERO, PONE, _reduced=True)
RONE = RatFunc(PONE, PONE, _reduced=True)
U = RatFunc.u_power(1)
UBAR = RatFunc.u_power(-1)
U_MINUS_UBAR = U - UBAR


def u_minus_ubar_power(k: int) -> RatFunc:
    """(u - 1/u)^k, the square of the half-frustration marker s."""
    return U_MINUS_UBAR**k


# -- canonical text form ------------------------------------------------------
#
# Printed fractions use integer-coefficient polynomials: both sides are
# rescaled by the lcm of the rational coefficients' denominators, then the
# common integer content is removed and the denominator's leading
# coefficient is made positive.  This is the form used in golden files.


def _int_pair(f: RatFunc):
    from math import gcd, lcm

    nden = [int(c.denominator) for c in f.num] or [1]
    dden = [int(c.denominator) for c in f.den]
    scale = lcm(*nden, *dden)
    num = [int(c * scale) for c in f.num]
    den = [int(c * scale) for c in f.den]
    content = 0
    for c in num + den:
        content = gcd(content, c)
    if content > 1:
        num = [c // content for c in num]
        den = [c // content for c in den]
    if den[-1] < 0:
        num = [-c for c in num]
        den = [-c for c in den]
    return num, den


def format_poly_int(coeffs) -> str:
    """Render an integer-coefficient polynomial in u, highest degree first."""
    if not coeffs:
        return "0"
    parts = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if i == 0:
            body = str(mag)
        else:
            up = "u" if i == 1 else f"u^{i}"
            body = up if mag == 1 else f"{mag}*{up}"
        parts.append((sign, body))
    if not parts:
        return "0"
    first_sign, first_body = parts[0]
    text = ("-" if first_sign == "-" else "") + first_body
    for sign, body in parts[1:]:
        text += f" {sign} {body}"
    return text


def format_ratfunc(f: RatFunc) -> str:
    num, den = _int_pair(f)
    if den == [1]:
        return format_poly_int(num)
    return f"({format_poly_int(num)})/({format_poly_int(den)})"


def parse_poly_int(text: str):
    """Parse the output of :func:`format_poly_int` back to a tuple over Q."""
    text = text.strip()
    if text in ("0", ""):
        return PZERO
    text = text.replace("-", "+-")
    terms = [t.strip() for t in text.split("+") if t.strip()]
    coeffs: dict[int, int] = {}
    for term in terms:
        neg = term.startswith("-")
        if neg:
            term = term[1:].strip()
        if "u" in term:
            head, _, tail = term.partition("u")
            head = head.strip().rstrip("*").strip()
            mag = int(head) if head else 1
            tail = tail.strip()
            exp = int(tail[1:]) if tail.startswith("^") else 1
        else:
            mag = int(term)
            exp = 0
        coeffs[exp] = coeffs.get(exp, 0) + (-mag if neg else mag)
    if not coeffs:
        return PZERO
    out = [_Q0] * (max(coeffs) + 1)
    for e, c in coeffs.items():
        out[e] = Q(c)
    return ptrim(out)


def parse_ratfunc(text: str) -> RatFunc:
    text = text.strip()
    if text.startswith("(") and ")/(" in text:
        numtxt, _, dentxt = text[1:-1].partition(")/(")
        return RatFunc(parse_poly_int(numtxt), parse_poly_int(dentxt))
    return RatFunc(parse_poly_int(text), PONE)
