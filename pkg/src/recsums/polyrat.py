"""Field-generic polynomials, canonical rational functions, truncated series.

Coefficients are Fractions or QuadElems (anything honoring the shared scalar
protocol of :mod:`recsums.qfield`).  Rational functions are kept in a canonical
reduced form: gcd(num, den) is a unit, and the denominator is scaled so its
constant term is 1 when possible (monic otherwise), so generating-function
denominators print in the familiar ``1 - x - x^2`` shape.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .qfield import NotRationalError, QuadElem, Scalar, rationalize


class EvalPoleError(ValueError):
    """Evaluation or expansion hit a zero of the denominator."""


class Polynomial:
    """Dense univariate polynomial; index = degree; no trailing zeros."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [c if isinstance(c, QuadElem) else Fraction(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @property
    def degree(self) -> int:
        # -1 for the zero polynomial
        return len(self.coeffs) - 1

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, QuadElem)):
            other = Polynomial([other])
        if not isinstance(other, Polynomial):
            return NotImplemented
        if len(self.coeffs) != len(other.coeffs):
            return False
        return all(a == b for a, b in zip(self.coeffs, other.coeffs))

    def __hash__(self):
        return hash(tuple(str(c) for c in self.coeffs))

    def coeff(self, k: int):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def __add__(self, other):
        if isinstance(other, (int, Fraction, QuadElem)):
            other = Polynomial([other])
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial([self.coeff(i) + other.coeff(i) for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return Polynomial([-c for c in self.coeffs])

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, QuadElem)):
            other = Polynomial([other])
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, QuadElem)):
            return self.scale(other)
        if not self.coeffs or not other.coeffs:
            return Polynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def scale(self, c) -> Polynomial:
        return Polynomial([a * c for a in self.coeffs])

    def shift(self, k: int) -> Polynomial:
        """Multiply by x^k."""
        if not self.coeffs:
            return self
        return Polynomial([Fraction(0)] * k + list(self.coeffs))

    def __call__(self, x):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __divmod__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        if not other:
            raise ZeroDivisionError("division by the zero polynomial")
        rem = list(self.coeffs)
        dn = len(other.coeffs)
        lead = other.coeffs[-1]
        quot = [Fraction(0)] * max(0, len(rem) - dn + 1)
        while len(rem) >= dn:
            c = rem[-1] / lead
            k = len(rem) - dn
            quot[k] = c
            for i, oc in enumerate(other.coeffs):
                rem[k + i] = rem[k + i] - c * oc
            while rem and not rem[-1]:
                rem.pop()
        return Polynomial(quot), Polynomial(rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def monic(self) -> Polynomial:
        if not self.coeffs:
            return self
        lead = self.coeffs[-1]
        return Polynomial([c / lead for c in self.coeffs])

    def __repr__(self):
        return f"Polynomial({list(self.coeffs)!r})"


def poly_gcd(p: Polynomial, q: Polynomial) -> Polynomial:
    """Euclidean gcd over the coefficient field, returned monic."""
    while q:
        p, q = q, p % q
    return p.monic() if p else p


@dataclass(frozen=True)
class PowerSeries:
    """Truncated exact power series: exactly `order` known coefficients."""

    coefficients: tuple
    order: int

    def __post_init__(self):
        object.__setattr__(self, "coefficients", tuple(self.coefficients))
        if len(self.coefficients) != self.order:
            raise ValueError("coefficient count must equal order")

    @classmethod
    def of(cls, coeffs) -> PowerSeries:
        coeffs = tuple(coeffs)
        return cls(coeffs, len(coeffs))

    def convolve(self, other: PowerSeries) -> PowerSeries:
        """Truncated Cauchy product, to the shorter of the two orders."""
        n = min(self.order, other.order)
        out = []
        for i in range(n):
            acc = Fraction(0)
            for j in range(i + 1):
                acc = acc + self.coefficients[j] * other.coefficients[i - j]
            out.append(acc)
        return PowerSeries.of(out)


class RationalFunction:
    """num/den in canonical form: gcd-reduced, den(0) = 1 when den(0) != 0."""

    __slots__ = ("num", "den")

    def __init__(self, num, den):
        if not isinstance(num, Polynomial):
            num = Polynomial(num)
        if not isinstance(den, Polynomial):
            den = Polynomial(den)
        if not den:
            raise ZeroDivisionError("zero denominator polynomial")
        g = poly_gcd(num, den)
        if g and g.degree > 0:
            num, den = num // g, den // g
        c0 = den.coeff(0)
        scale = c0 if c0 else den.coeffs[-1]
        if scale != 1:
            inv = 1 / scale if isinstance(scale, Fraction) else scale.invert()
            num = num.scale(inv)
            den = den.scale(inv)
        if not num:
            den = Polynomial([1])
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    @classmethod
    def zero(cls) -> RationalFunction:
        return cls(Polynomial(), Polynomial([1]))

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other):
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return RationalFunction(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, QuadElem)):
            return RationalFunction(self.num.scale(other), self.den)
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return RationalFunction(self.num * other.den, self.den * other.num)

    def evaluate(self, x):
        dv = self.den(x)
        if not dv:
            raise EvalPoleError(f"denominator vanishes at x = {x}")
        return self.num(x) / dv

    def expand(self, order: int) -> PowerSeries:
        """First `order` Maclaurin coefficients via the denominator recurrence.

        c_i = (num_i - sum_{j>=1} den_j c_{i-j}) / den_0, exact arithmetic.
        """
        d0 = self.den.coeff(0)
        if not d0:
            raise EvalPoleError("pole at the origin: den(0) = 0")
        coeffs = []
        dd = self.den.degree
        for i in range(order):
            acc = self.num.coeff(i)
            for j in range(1, min(i, dd) + 1):
                acc = acc - self.den.coeff(j) * coeffs[i - j]
            coeffs.append(acc / d0)
        return PowerSeries.of(coeffs)

    def __repr__(self):
        return f"RationalFunction({self.num!r}, {self.den!r})"


def descend(f: RationalFunction | Polynomial):
    """Re-type a Q(sqrt(D)) object over Q; every coefficient must be rational.

    A non-rational coefficient raises NotRationalError carrying the offender;
    callers treat that as an audit failure signal, not a crash.
    """
    if isinstance(f, Polynomial):
        return Polynomial([rationalize(c) for c in f.coeffs])
    return RationalFunction(descend(f.num), descend(f.den))


def lift(f: RationalFunction | Polynomial, disc: int):
    """Embed a rational-coefficient object into Q(sqrt(disc))."""
    if isinstance(f, Polynomial):
        return Polynomial(
            [QuadElem(rationalize(c), Fraction(0), disc) for c in f.coeffs]
        )
    return RationalFunction(lift(f.num, disc), lift(f.den, disc))


# --- plain-text / LaTeX rendering (ascending degree, explicit signs) -------


def _term_body(c: Fraction, k: int, latex: bool) -> str:
    mag = abs(c)
    if k == 0:
        return str(mag)
    if k == 1:
        xpart = "x"
    elif latex:
        xpart = f"x^{{{k}}}"
    else:
        xpart = f"x^{k}"
    if mag == 1:
        return xpart
    if mag.denominator == 1:
        return f"{mag}{xpart}"
    return f"({mag}){xpart}"


def _poly_terms(p: Polynomial, latex: bool) -> list[tuple[bool, str]]:
    terms = []
    for k, c in enumerate(p.coeffs):
        if not c:
            continue
        c = rationalize(c)
        terms.append((c < 0, _term_body(c, k, latex)))
    return terms


def poly_to_text(p: Polynomial, latex: bool = False) -> str:
    terms = _poly_terms(p, latex)
    if not terms:
        return "0"
    neg, body = terms[0]
    out = ("-" if neg else "") + body
    for neg, body in terms[1:]:
        out += (" - " if neg else " + ") + body
    return out


def rf_to_text(f: RationalFunction) -> str:
    num = poly_to_text(f.num)
    if f.den == Polynomial([1]):
        return num
    if len(_poly_terms(f.num, False)) > 1:
        num = f"({num})"
    return f"{num}/({poly_to_text(f.den)})"


def rf_to_latex(f: RationalFunction) -> str:
    num = poly_to_text(f.num, latex=True)
    if f.den == Polynomial([1]):
        return num
    return f"\\frac{{{num}}}{{{poly_to_text(f.den, latex=True)}}}"
