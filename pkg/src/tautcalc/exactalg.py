"""Exact arithmetic in the two parameters d and chi.

Everything downstream works over the fraction field Q(d, chi).  Polynomials
are stored sparsely as maps from exponent pairs to rational coefficients;
fractions keep an unreduced numerator/denominator pair (only integer content
is cancelled) and compare by cross-multiplication, so no multivariate gcd is
ever required.

Rational constants are plain ``fractions.Fraction`` values, which already
guarantee a reduced representation with positive denominator.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

BigRational = Fraction


class PoleError(ZeroDivisionError):
    """The denominator of a parametric fraction vanishes at the given point."""


class SingularSystemError(ValueError):
    """A linear system expected to be uniquely solvable is singular."""


def _as_fraction(c):
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise TypeError(f"cannot use {type(c).__name__} as an exact coefficient")


def _grlex_key(exponents):
    a, b = exponents
    return (a + b, a)


class ParamPoly:
    """Sparse polynomial in d and chi with exact rational coefficients.

    Terms are a map (a, b) -> coefficient for the monomial d^a * chi^b;
    zero coefficients are never stored.  The deterministic term order is
    graded lexicographic: total degree descending, then d-exponent
    descending.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for exps, c in terms.items():
                c = _as_fraction(c)
                if c:
                    clean[exps] = c
        self.terms = clean

    @classmethod
    def constant(cls, c):
        c = _as_fraction(c)
        return cls({(0, 0): c}) if c else cls()

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def one(cls):
        return cls({(0, 0): Fraction(1)})

    @classmethod
    def variable(cls, name):
        if name == "d":
            return cls({(1, 0): Fraction(1)})
        if name == "chi":
            return cls({(0, 1): Fraction(1)})
        raise ValueError(f"unknown parameter {name!r}")

    # -- ring structure -------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, ParamPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return ParamPoly.constant(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = dict(self.terms)
        for exps, c in other.terms.items():
            s = terms.get(exps, 0) + c
            if s:
                terms[exps] = s
            else:
                terms.pop(exps, None)
        out = ParamPoly.__new__(ParamPoly)
        out.terms = terms
        return out

    __radd__ = __add__

    def __neg__(self):
        out = ParamPoly.__new__(ParamPoly)
        out.terms = {exps: -c for exps, c in self.terms.items()}
        return out

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = {}
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                exps = (a1 + a2, b1 + b2)
                s = terms.get(exps, 0) + c1 * c2
                if s:
                    terms[exps] = s
                else:
                    terms.pop(exps, None)
        out = ParamPoly.__new__(ParamPoly)
        out.terms = terms
        return out

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        out = ParamPoly.one()
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    # -- inspection ------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return not self.terms or set(self.terms) == {(0, 0)}

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self.terms.get((0, 0), Fraction(0))

    def total_degree(self):
        if not self.terms:
            return -1
        return max(a + b for a, b in self.terms)

    def sorted_terms(self):
        """Terms in the canonical (graded-lex descending) order."""
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    def leading_coefficient(self):
        if not self.terms:
            return Fraction(0)
        return self.sorted_terms()[0][1]

    def content(self):
        """Largest positive rational c with self/c integral and primitive."""
        if not self.terms:
            return Fraction(0)
        num = 0
        den = 1
        for c in self.terms.values():
            num = gcd(num, abs(c.numerator))
            den = den * c.denominator // gcd(den, c.denominator)
        return Fraction(num, den)

    def evaluate(self, d_val, chi_val):
        total = Fraction(0)
        for (a, b), c in self.terms.items():
            total += c * Fraction(d_val) ** a * Fraction(chi_val) ** b
        return total

    # -- rendering -------------------------------------------------------

    @staticmethod
    def _monomial_str(a, b):
        parts = []
        if a == 1:
            parts.append("d")
        elif a > 1:
            parts.append(f"d^{a}")
        if b == 1:
            parts.append("chi")
        elif b > 1:
            parts.append(f"chi^{b}")
        return "*".join(parts)

    def __str__(self):
        if not self.terms:
            return "0"
        chunks = []
        for (a, b), c in self.sorted_terms():
            mono = self._monomial_str(a, b)
            mag = abs(c)
            if mono:
                body = mono if mag == 1 else f"{mag}*{mono}"
            else:
                body = str(mag)
            if not chunks:
                chunks.append(body if c > 0 else f"-{body}")
            else:
                chunks.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(chunks)

    def __repr__(self):
        return f"ParamPoly({self})"


class ParamFraction:
    """Element of Q(d, chi) stored as an unreduced num/den pair.

    Normalisation keeps both parts integral with coprime contents and the
    denominator's leading coefficient positive; equality is decided by
    cross-multiplication, so representatives sharing a polynomial factor
    still compare equal.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=1):
        if not isinstance(num, ParamPoly):
            num = ParamPoly.constant(num)
        if not isinstance(den, ParamPoly):
            den = ParamPoly.constant(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator in ParamFraction")
        self.num, self.den = self._normalize(num, den)

    @staticmethod
    def _normalize(num, den):
        if num.is_zero():
            return ParamPoly.zero(), ParamPoly.one()
        c_num = num.content()
        c_den = den.content()
        scale = Fraction(gcd(c_num.numerator, c_den.numerator),
                         (c_num.denominator * c_den.denominator)
                         // gcd(c_num.denominator, c_den.denominator))
        if den.leading_coefficient() < 0:
            scale = -scale
        inv = 1 / scale
        return num * inv, den * inv

    @classmethod
    def variable(cls, name):
        return cls(ParamPoly.variable(name))

    # -- coercion ---------------------------------------------------------

    @staticmethod
    def _coerce(other):
        if isinstance(other, ParamFraction):
            return other
        if isinstance(other, (int, Fraction, ParamPoly)):
            return ParamFraction(other)
        return None

    # -- field structure ----------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.den == other.den:
            return ParamFraction(self.num + other.num, self.den)
        return ParamFraction(self.num * other.den + other.num * self.den,
                             self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        out = ParamFraction.__new__(ParamFraction)
        out.num, out.den = -self.num, self.den
        return out

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return ParamFraction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if other.num.is_zero():
            raise ZeroDivisionError("division by zero ParamFraction")
        return ParamFraction(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other / self

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        out = ParamFraction(1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.num * other.den == other.num * self.den

    __hash__ = None

    def __bool__(self):
        return bool(self.num)

    # -- evaluation and rendering -----------------------------------------

    def is_zero(self):
        return self.num.is_zero()

    def specialize(self, d_val, chi_val):
        """Exact value at integer (or rational) parameters.

        Raises PoleError when the stored denominator vanishes there; this
        flags a degenerate parameter pair for the formula at hand.
        """
        bottom = self.den.evaluate(d_val, chi_val)
        if bottom == 0:
            raise PoleError(f"denominator {self.den} vanishes at "
                            f"(d, chi) = ({d_val}, {chi_val})")
        return self.num.evaluate(d_val, chi_val) / bottom

    def __str__(self):
        if self.den == ParamPoly.one():
            return str(self.num)
        den = str(self.den)
        if len(self.den.terms) > 1:
            den = f"({den})"
        return f"({self.num})/{den}"

    def __repr__(self):
        return f"ParamFraction({self})"


def frac_eq(lhs, rhs):
    """Equality in Q(d, chi) by cross-multiplication."""
    return ParamFraction._coerce(lhs) == ParamFraction._coerce(rhs)


D = ParamFraction.variable("d")
CHI = ParamFraction.variable("chi")


def solve_linear(matrix, rhs):
    """Solve a small square system by Gaussian elimination.

    Works over any exact field whose elements support the arithmetic
    operators and truthiness (Fraction, ParamFraction).  Raises
    SingularSystemError when no pivot can be found for some column.
    """
    n = len(matrix)
    rows = [list(row) + [b] for row, b in zip(matrix, rhs)]
    if any(len(row) != n + 1 for row in rows):
        raise ValueError("matrix must be square and match rhs length")
    for col in range(n):
        pivot_row = next((r for r in range(col, n) if rows[r][col]), None)
        if pivot_row is None:
            raise SingularSystemError(f"no pivot in column {col}")
        rows[col], rows[pivot_row] = rows[pivot_row], rows[col]
        pivot = rows[col][col]
        for r in range(n):
            if r == col or not rows[r][col]:
                continue
            factor = rows[r][col] / pivot
            for c in range(col, n + 1):
                rows[r][c] = rows[r][c] - factor * rows[col][c]
    return [rows[i][n] / rows[i][i] for i in range(n)]
