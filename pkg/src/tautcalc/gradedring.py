"""Free graded-commutative algebra kernel.

Elements are sparse sums of monomials in user-declared generator symbols
(the classes e_k(j) or c_k(j), plus ambient divisor variables such as H
and beta) with exact coefficients -- either plain Fractions for a
specialized parameter pair or ParamFraction for fully symbolic d, chi.
All generators sit in even degree, so the algebra is plainly commutative.

Ambient nilpotency (H^3 = 0, beta^3 = 0) is enforced at multiplication
time; anything above the algebra's tracked degree is silently truncated.
Quotients by monic rewrite rules (projective-bundle presentations) are
handled by normal_form / hilbert_series.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .exactalg import ParamFraction

_FAMILY_RANK = {"e": 0, "c": 1, "ambient": 2}


class NonNilpotentError(ValueError):
    """exp() applied to an element with a degree-0 part."""


@dataclass(frozen=True)
class GenSymbol:
    """A single generator: e_k(j), c_k(j), or an ambient divisor class."""

    family: str
    k: int = 0
    j: int = 0
    name: str = ""
    degree: int = 0
    nilpotency: int | None = None

    @classmethod
    def e(cls, k, j):
        return cls._indexed("e", k, j)

    @classmethod
    def c(cls, k, j):
        return cls._indexed("c", k, j)

    @classmethod
    def _indexed(cls, family, k, j):
        if k < 0 or j not in (0, 1, 2):
            raise ValueError(f"invalid index pair ({k}, {j})")
        if k + j - 1 < 0:
            raise ValueError(f"{family}_{k}({j}) has negative degree")
        return cls(family, k, j, degree=k + j - 1)

    @classmethod
    def ambient(cls, name, degree=1, nilpotency=None):
        if degree <= 0:
            raise ValueError("ambient variables must have positive degree")
        return cls("ambient", name=name, degree=degree, nilpotency=nilpotency)

    def sort_key(self):
        return (self.degree, _FAMILY_RANK[self.family], self.k, self.j, self.name)

    def __str__(self):
        if self.family == "ambient":
            return self.name
        return f"{self.family}_{self.k}({self.j})"


@dataclass(frozen=True)
class Monomial:
    """Product of symbol powers; factors kept sorted for hashing."""

    factors: tuple = ()

    @classmethod
    def from_pairs(cls, pairs):
        merged = {}
        for sym, exp in pairs:
            if exp < 0:
                raise ValueError("negative exponent")
            if exp:
                merged[sym] = merged.get(sym, 0) + exp
        for sym, exp in merged.items():
            if sym.nilpotency is not None and exp >= sym.nilpotency:
                raise ValueError(f"{sym}^{exp} exceeds nilpotency order")
        return cls(tuple(sorted(merged.items(), key=lambda p: p[0].sort_key())))

    @property
    def degree(self):
        return sum(sym.degree * exp for sym, exp in self.factors)

    def exponent(self, sym):
        for s, e in self.factors:
            if s == sym:
                return e
        return 0

    def symbols(self):
        return [sym for sym, _ in self.factors]

    def mul(self, other, max_degree=None):
        """Product monomial, or None when killed by nilpotency/truncation."""
        merged = dict(self.factors)
        for sym, exp in other.factors:
            merged[sym] = merged.get(sym, 0) + exp
        for sym, exp in merged.items():
            if sym.nilpotency is not None and exp >= sym.nilpotency:
                return None
        mono = Monomial(tuple(sorted(merged.items(), key=lambda p: p[0].sort_key())))
        if max_degree is not None and mono.degree > max_degree:
            return None
        return mono

    def without(self, sym, exp):
        """Divide out sym^exp (the power must be present)."""
        remaining = []
        found = 0
        for s, e in self.factors:
            if s == sym:
                found = e
                if e - exp > 0:
                    remaining.append((s, e - exp))
            else:
                remaining.append((s, e))
        if found < exp:
            raise ValueError(f"{self} is not divisible by {sym}^{exp}")
        return Monomial(tuple(remaining))

    def is_one(self):
        return not self.factors

    def __str__(self):
        if not self.factors:
            return "1"
        return "*".join(str(s) if e == 1 else f"{s}^{e}" for s, e in self.factors)


MONOMIAL_ONE = Monomial()


class GradedAlgebra:
    """Context for elements: tracked degree cap and eager scalar symbols.

    scalar_symbols maps a degree-0 generator to its value in the
    coefficient field; gen() substitutes it on the spot so monomials never
    contain invertible scalars.
    """

    def __init__(self, max_degree, scalar_symbols=None):
        if max_degree < 0:
            raise ValueError("max_degree must be non-negative")
        self.max_degree = max_degree
        self.scalar_symbols = dict(scalar_symbols or {})

    def zero(self):
        return AlgebraElement(self, {})

    def one(self):
        return self.scalar(1)

    def scalar(self, c):
        if not c:
            return self.zero()
        return AlgebraElement(self, {MONOMIAL_ONE: c})

    def gen(self, sym, exp=1):
        if sym in self.scalar_symbols:
            if exp != 1:
                return self.scalar(self.scalar_symbols[sym] ** exp)
            return self.scalar(self.scalar_symbols[sym])
        if sym.degree == 0:
            raise ValueError(f"degree-0 symbol {sym} has no declared value")
        mono = Monomial.from_pairs([(sym, exp)])
        if mono.degree > self.max_degree:
            return self.zero()
        return AlgebraElement(self, {mono: Fraction(1)})

    def element(self, terms):
        clean = {m: c for m, c in terms.items() if c and m.degree <= self.max_degree}
        return AlgebraElement(self, clean)


class AlgebraElement:
    """Sparse sum of monomials with exact coefficients."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra, terms):
        self.algebra = algebra
        self.terms = terms

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, AlgebraElement):
            return other
        if isinstance(other, (int, Fraction, ParamFraction)):
            return self.algebra.scalar(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = dict(self.terms)
        for m, c in other.terms.items():
            s = terms.get(m, 0) + c
            if s:
                terms[m] = s
            else:
                terms.pop(m, None)
        return AlgebraElement(self.algebra, terms)

    __radd__ = __add__

    def __neg__(self):
        return AlgebraElement(self.algebra, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, ParamFraction)):
            if not other:
                return self.algebra.zero()
            return AlgebraElement(self.algebra,
                                  {m: c * other for m, c in self.terms.items()})
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        max_degree = self.algebra.max_degree
        terms = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = m1.mul(m2, max_degree)
                if m is None:
                    continue
                s = terms.get(m, 0) + c1 * c2
                if s:
                    terms[m] = s
                else:
                    terms.pop(m, None)
        return AlgebraElement(self.algebra, terms)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        out = self.algebra.one()
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if set(self.terms) != set(other.terms):
            return False
        return all(self.terms[m] == other.terms[m] for m in self.terms)

    __hash__ = None

    def __bool__(self):
        return bool(self.terms)

    # -- structure --------------------------------------------------------

    def coeff(self, mono):
        return self.terms.get(mono, Fraction(0))

    def degrees(self):
        return sorted({m.degree for m in self.terms})

    def is_homogeneous(self, deg=None):
        ds = self.degrees()
        if not ds:
            return True
        if len(ds) > 1:
            return False
        return deg is None or ds[0] == deg

    def homogeneous_part(self, deg):
        return AlgebraElement(self.algebra,
                              {m: c for m, c in self.terms.items() if m.degree == deg})

    def extract(self, spec):
        """Coefficient of an exact ambient-variable pattern.

        spec is a Monomial in ambient variables or a {symbol: exponent}
        map (exponent 0 demands absence); the result is free of the
        matched variables while all other symbols stay untouched.
        """
        if isinstance(spec, Monomial):
            spec = dict(spec.factors)
        terms = {}
        for m, c in self.terms.items():
            if all(m.exponent(sym) == exp for sym, exp in spec.items()):
                rest = Monomial(tuple((s, e) for s, e in m.factors if s not in spec))
                s = terms.get(rest, 0) + c
                if s:
                    terms[rest] = s
                else:
                    terms.pop(rest, None)
        return AlgebraElement(self.algebra, terms)

    def exp(self, max_degree=None):
        """Truncated exponential sum_{m>=0} self^m / m! (exact).

        Requires a vanishing degree-0 part so that the sum terminates by
        nilpotency or by the degree cap.
        """
        if any(m.degree == 0 for m in self.terms):
            raise NonNilpotentError("exp of an element with a degree-0 term")
        cap = self.algebra.max_degree if max_degree is None else max_degree
        out = self.algebra.one()
        term = self.algebra.one()
        m = 0
        while True:
            m += 1
            if m > cap:
                break
            term = term * self * Fraction(1, m)
            if max_degree is not None:
                term = AlgebraElement(self.algebra,
                                      {mo: c for mo, c in term.terms.items()
                                       if mo.degree <= max_degree})
            if not term:
                break
            out = out + term
        return out

    def __str__(self):
        if not self.terms:
            return "0"
        ordered = sorted(self.terms.items(),
                         key=lambda t: (t[0].degree,
                                        tuple((s.sort_key(), e) for s, e in t[0].factors)))
        chunks = []
        for m, c in ordered:
            cs = str(c)
            if any(op in cs[1:] for op in "+-/") or "(" in cs:
                cs = f"({cs})"
            chunks.append(cs if m.is_one() else f"{cs}*{m}")
        return " + ".join(chunks)

    def __repr__(self):
        return f"AlgebraElement({self})"


# -- quotient presentations ------------------------------------------------


@dataclass(frozen=True)
class RewriteRule:
    """Replace a pure power symbol^exponent by a lower-order element."""

    symbol: GenSymbol
    exponent: int
    replacement: AlgebraElement

    def __post_init__(self):
        for m in self.replacement.terms:
            if m.exponent(self.symbol) >= self.exponent:
                raise ValueError("replacement must lower the rewritten power")


@dataclass(frozen=True)
class QuotientPresentation:
    """Graded quotient given by variables and terminating rewrite rules."""

    variables: tuple
    rules: tuple

    def bound(self, sym):
        """Smallest rewritable power of sym (None when unconstrained)."""
        bounds = [r.exponent for r in self.rules if r.symbol == sym]
        if sym.nilpotency is not None:
            bounds.append(sym.nilpotency)
        return min(bounds) if bounds else None


def normal_form(x, pres):
    """Fixed point of the rewriting system on every term of x."""
    done = {}
    work = dict(x.terms)
    while work:
        mono, coeff = work.popitem()
        rule = next((r for r in pres.rules
                     if mono.exponent(r.symbol) >= r.exponent), None)
        if rule is None:
            s = done.get(mono, 0) + coeff
            if s:
                done[mono] = s
            else:
                done.pop(mono, None)
            continue
        cofactor = AlgebraElement(x.algebra,
                                  {mono.without(rule.symbol, rule.exponent): Fraction(1)})
        for m, c in (rule.replacement * cofactor).terms.items():
            s = work.get(m, 0) + coeff * c
            if s:
                work[m] = s
            else:
                work.pop(m, None)
    return AlgebraElement(x.algebra, done)


def hilbert_series(pres, max_degree):
    """Graded dimensions of the quotient up to max_degree.

    Counts normal-form basis monomials, i.e. exponent vectors avoiding
    every rule's leading power.
    """
    dims = [0] * (max_degree + 1)
    ranges = []
    for sym in pres.variables:
        bound = pres.bound(sym)
        cap = max_degree // sym.degree
        if bound is not None:
            cap = min(cap, bound - 1)
        ranges.append(range(cap + 1))
    for exps in product(*ranges):
        deg = sum(e * sym.degree for e, sym in zip(exps, pres.variables))
        if deg <= max_degree:
            dims[deg] += 1
    return dims
