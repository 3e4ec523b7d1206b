r"""Truncated multivariate power series over Q(u).

A :class:`Series` is a sparse mapping from monomials to :class:`RatFunc`
coefficients, truncated at a weighted degree fixed by its :class:`Grading`.
Variables are identified by ``(family, index)`` pairs; the supported
families are

* ``x``/``y``  -- indexed weights marking white/black vertices of a degree,
* ``X``/``Y``  -- model markers (vacant/occupied, or white/black spins),
* ``v``/``w``/``z``/``t`` -- auxiliary degree-2 and bookkeeping markers,
* ``s``        -- the half-frustration marker, reduced at the end of a
  pipeline through s^2 -> (u - 1/u); it always carries weight 0.

The charge variable of the tree equations is never stored in a Series:
charge indices are exact and live in the solver's charge families.

All arithmetic is exact and all operations truncate to the grading's
order, so a Series is a genuine element of the quotient ring.
"""

from __future__ import annotations

from bisect import bisect_right

from .ratfun import Q, RZERO, RONE, RatFunc, u_minus_ubar_power

VarId = tuple  # (family: str, index: int); index 0 for unindexed families
Monomial = tuple  # sorted tuple of (VarId, nonzero exponent)

_FAMILY_ORDER = {f: i for i, f in enumerate("tzvwsxyXY")}

MONE: Monomial = ()


def var(family: str, index: int = 0) -> VarId:
    return (family, index)


def var_name(v: VarId) -> str:
    family, index = v
    return family if index == 0 else f"{family}{index}"


def parse_var(name: str) -> VarId:
    head = name[0]
    tail = name[1:]
    return (head, int(tail) if tail else 0)


def _var_key(v: VarId):
    return (_FAMILY_ORDER.get(v[0], 99), v[1])


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    out = dict(a)
    for v, e in b:
        ne = out.get(v, 0) + e
        if ne:
            out[v] = ne
        else:
            del out[v]
    return tuple(sorted(out.items(), key=lambda it: _var_key(it[0])))


def mono_of(pairs) -> Monomial:
    out = {}
    for v, e in pairs:
        if e:
            out[v] = out.get(v, 0) + e
    return tuple(sorted(((v, e) for v, e in out.items() if e), key=lambda it: _var_key(it[0])))


def mono_exp(m: Monomial, v: VarId) -> int:
    for w, e in m:
        if w == v:
            return e
    return 0


def mono_name(m: Monomial) -> str:
    if not m:
        return "1"
    parts = []
    for v, e in m:
        parts.append(var_name(v) if e == 1 else f"{var_name(v)}^{e}")
    return " ".join(parts)


def parse_mono(text: str) -> Monomial:
    text = text.strip()
    if text == "1":
        return MONE
    pairs = []
    for part in text.split():
        if "^" in part:
            name, _, exp = part.partition("^")
            pairs.append((parse_var(name), int(exp)))
        else:
            pairs.append((parse_var(part), 1))
    return mono_of(pairs)


class Grading:
    """Weight assignment for variables plus the truncation order.

    Variables not listed get the default weight 1; the half-frustration
    marker ``s`` always weighs 0.  A weight-0 entry for any other
    variable is only legitimate for resummable degree-2 constants, which
    the solver forbids from appearing as stored Series variables anyway.
    """

    __slots__ = ("weights", "order", "_key", "_wd_cache")

    def __init__(self, order: int, weights: dict | None = None):
        w = dict(weights or {})
        w[("s", 0)] = 0
        self.weights = w
        self.order = order
        self._key = (order, tuple(sorted(w.items())))
        self._wd_cache: dict = {}

    def weight(self, v: VarId) -> int:
        return self.weights.get(v, 1)

    def wdeg(self, m: Monomial) -> int:
        cache = self._wd_cache
        d = cache.get(m)
        if d is None:
            d = 0
            for v, e in m:
                d += self.weights.get(v, 1) * e
            cache[m] = d
        return d

    def __eq__(self, other):
        return isinstance(other, Grading) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"Grading(order={self.order}, weights={self.weights})"


def grading(order: int, **family_weights) -> Grading:
    """Convenience: ``grading(4, x=..., y=...)`` style construction is not
    needed in practice; use ``Grading`` directly."""
    return Grading(order, family_weights)


class Series:
    __slots__ = ("grading", "terms")

    def __init__(self, grading: Grading, terms: dict | None = None):
        self.grading = grading
        self.terms = terms or {}

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(g: Grading) -> "Series":
        return Series(g, {})

    @staticmethod
    def one(g: Grading) -> "Series":
        return Series(g, {MONE: RONE})

    @staticmethod
    def const(g: Grading, c) -> "Series":
        c = _coerce(c)
        return Series(g, {MONE: c} if c else {})

    @staticmethod
    def variable(g: Grading, v: VarId, coeff=RONE, exp: int = 1) -> "Series":
        coeff = _coerce(coeff)
        if not coeff:
            return Series(g, {})
        m = mono_of([(v, exp)])
        if g.wdeg(m) > g.order:
            return Series(g, {})
        return Series(g, {m: coeff})

    # -- basic queries -----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def constant_term(self) -> RatFunc:
        return self.terms.get(MONE, RZERO)

    def coeff(self, m: Monomial) -> RatFunc:
        if self.grading.wdeg(m) > self.grading.order:
            raise ValueError(f"monomial {mono_name(m)} lies beyond the truncation order")
        return self.terms.get(m, RZERO)

    def slice(self, grade: int) -> dict:
        wd = self.grading.wdeg
        return {m: c for m, c in self.terms.items() if wd(m) == grade}

    def max_grade(self) -> int:
        wd = self.grading.wdeg
        return max((wd(m) for m in self.terms), default=-1)

    def __eq__(self, other):
        return (
            isinstance(other, Series)
            and self.grading == other.grading
            and self.terms == other.terms
        )

    def __bool__(self):
        return bool(self.terms)

    # -- ring operations ------------------------------------------------------

    def _check(self, other: "Series"):
        if self.grading != other.grading:
            raise ValueError("grading mismatch between series operands")

    def __add__(self, other):
        if not isinstance(other, Series):
            return NotImplemented
        self._check(other)
        if not self.terms:
            return other
        if not other.terms:
            return self
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m)
            s = c if s is None else s + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Series(self.grading, out)

    def __neg__(self):
        return Series(self.grading, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Series):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (RatFunc, int)) or type(other) is type(Q(1)):
            return self.scale(other)
        if not isinstance(other, Series):
            return NotImplemented
        self._check(other)
        a, b = self.terms, other.terms
        if not a or not b:
            return Series(self.grading, {})
        if len(a) > len(b):
            a, b = b, a
        g = self.grading
        N = g.order
        wd = g.wdeg
        bitems = sorted(((wd(m), m, c) for m, c in b.items()))
        bgrades = [it[0] for it in bitems]
        out: dict = {}
        for ma, ca in a.items():
            budget = N - wd(ma)
            hi = bisect_right(bgrades, budget)
            for i in range(hi):
                _, mb, cb = bitems[i]
                m = mono_mul(ma, mb)
                c = ca * cb
                s = out.get(m)
                s = c if s is None else s + c
                if s:
                    out[m] = s
                else:
                    del out[m]
        return Series(self.grading, out)

    __rmul__ = __mul__

    def scale(self, c) -> "Series":
        c = _coerce(c)
        if not c:
            return Series(self.grading, {})
        if c.is_one():
            return self
        return Series(self.grading, {m: x * c for m, x in self.terms.items()})

    def __pow__(self, n: int) -> "Series":
        if n < 0:
            raise ValueError("negative series power; use reciprocal explicitly")
        out = Series.one(self.grading)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    def reciprocal(self) -> "Series":
        c0 = self.constant_term()
        if not c0:
            raise ZeroDivisionError("reciprocal of a series with zero constant term")
        g = self.grading
        r = Series.const(g, c0.inverse())
        two = Series.const(g, RatFunc.const(2))
        # Newton iteration r <- r(2 - a r); the number of correct grades
        # doubles each round, so the loop is logarithmic in the order.
        for _ in range(max(1, g.order).bit_length() + 2):
            prod = self * r
            if prod == Series.one(g):
                return r
            r = r * (two - prod)
        if self * r != Series.one(g):
            raise ArithmeticError("reciprocal iteration failed to converge")
        return r

    # -- calculus and substitutions ---------------------------------------------

    def derivative(self, v: VarId) -> "Series":
        out = {}
        for m, c in self.terms.items():
            e = mono_exp(m, v)
            if e == 0:
                continue
            dm = mono_mul(m, ((v, -1),))
            nc = c * RatFunc.const(e)
            prev = out.get(dm)
            nc = nc if prev is None else prev + nc
            if nc:
                out[dm] = nc
        return Series(self.grading, out)

    def integrate_scaled(self, v: VarId) -> "Series":
        """Per-monomial v^k -> v^k / k, the ``dz/z`` integral from 0.

        Every monomial must contain v with exponent >= 1; a v-free
        monomial corresponds to a divergent integral and is an error.
        """
        out = {}
        for m, c in self.terms.items():
            e = mono_exp(m, v)
            if e < 1:
                raise ValueError(
                    f"integrate_scaled: monomial {mono_name(m)} has no {var_name(v)} factor"
                )
            out[m] = c * RatFunc.const(Q(1, e))
        return Series(self.grading, out)

    def reduce_s(self) -> "Series":
        """Fold even powers of s into coefficients via s^2 = u - 1/u."""
        s = ("s", 0)
        out = {}
        for m, c in self.terms.items():
            e = mono_exp(m, s)
            if e:
                if e % 2:
                    raise ValueError(f"odd power of s in monomial {mono_name(m)}")
                m = tuple((v, k) for v, k in m if v != s)
                c = c * u_minus_ubar_power(e // 2)
            prev = out.get(m)
            c = c if prev is None else prev + c
            if c:
                out[m] = c
            elif m in out:
                del out[m]
        return Series(self.grading, out)

    def substitute(self, images: dict, target: Grading | None = None) -> "Series":
        """Homomorphic image; unmapped variables map to themselves.

        Images may be Series (in the target grading), RatFunc constants or
        plain rationals.  A Series image with a nonzero constant term is
        rejected unless the substituted variable has weight 0, since the
        substitution could otherwise fail to terminate / lose truncation
        consistency.  Constant images are always allowed: they fold into
        coefficients (the caller owns the accuracy bookkeeping, as in the
        z -> 1/u resummation of the regular-map route).
        """
        g = target
        prepared: dict[VarId, object] = {}
        for v, img in images.items():
            if isinstance(img, Series):
                if g is None:
                    g = img.grading
                elif img.grading != g:
                    raise ValueError("substitution images live in mismatched gradings")
                prepared[v] = img
            else:
                prepared[v] = _coerce(img)
        if g is None:
            g = self.grading
        for v, img in prepared.items():
            if isinstance(img, Series) and img.constant_term() and self.grading.weight(v) != 0:
                raise ValueError(
                    f"substituting a series with nonzero constant term for weighted variable {var_name(v)}"
                )
        out = Series.zero(g)
        power_cache: dict = {}
        for m, c in self.terms.items():
            term = Series.const(g, c)
            for v, e in m:
                img = prepared.get(v)
                if img is None:
                    term = term * Series.variable(g, v, exp=e)
                elif isinstance(img, Series):
                    if e < 0:
                        raise ValueError("negative exponent on a series-valued substitution")
                    key = (v, e)
                    p = power_cache.get(key)
                    if p is None:
                        p = img**e
                        power_cache[key] = p
                    term = term * p
                else:
                    term = term.scale(img**e)
                if term.is_zero():
                    break
            out = out + term
        return out

    # -- canonical form ------------------------------------------------------------

    def sorted_terms(self):
        """Graded-lex order: by weighted degree, ties by the fixed VarId order."""
        wd = self.grading.wdeg

        def key(item):
            m, _ = item
            return (wd(m), tuple((_var_key(v), -e) for v, e in m))

        return sorted(self.terms.items(), key=key)

    def canonical_text(self) -> str:
        from .ratfun import format_ratfunc

        lines = [f"{mono_name(m)}\t{format_ratfunc(c)}" for m, c in self.sorted_terms()]
        return "\n".join(lines) + ("\n" if lines else "")

    def __repr__(self):
        n = len(self.terms)
        return f"Series({n} terms, order={self.grading.order})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            cs = str(c)
            if m == MONE:
                parts.append(cs)
            elif cs == "1":
                parts.append(mono_name(m))
            else:
                parts.append(f"({cs})*{mono_name(m)}")
        return " + ".join(parts)


def _coerce(c) -> RatFunc:
    if isinstance(c, RatFunc):
        return c
    return RatFunc.const(c)


def series_from_text(g: Grading, text: str) -> Series:
    """Parse the canonical text form back into a Series."""
    from .ratfun import parse_ratfunc

    terms = {}
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        mono_txt, _, coeff_txt = line.partition("\t")
        m = parse_mono(mono_txt)
        c = parse_ratfunc(coeff_txt)
        if c:
            terms[m] = c
    return Series(g, terms)


def assert_u_polynomial(s: Series) -> None:
    """Check that every coefficient is a polynomial in u with exponents >= 0."""
    for m, c in s.terms.items():
        if not c.is_u_polynomial():
            raise AssertionError(
                f"coefficient of {mono_name(m)} is not a polynomial in u: {c}"
            )
