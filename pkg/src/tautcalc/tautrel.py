"""Relation engine for the moduli of one-dimensional plane sheaves.

The engine realises the vanishing of the Chern classes c_l of the rank-d
complex obtained by pushing the twisted Hom-complex down to the product of
the moduli space with the dual plane: Newton's identities convert the
Chern-character data ch_s into elementary symmetric functions, whose
vanishing for l >= d+1 produces homogeneous relations among the classes
e_k(j) after integrating out the dual-plane divisor beta.

Two computation paths coexist:

* a fully expanded path (concrete l, parameters either specialized to
  integers or kept symbolic) that builds the complete relation by
  partition enumeration and can certify that a relation kills a given
  class;
* a closed leading-term path (l = d + offset with d symbolic) that
  produces the 3x3 coefficient tables of the leading generators, their
  determinant, and the degree-d combination, as exact rational functions
  of d and chi.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial, gcd

from .exactalg import CHI, D, ParamFraction, SingularSystemError, solve_linear
from .gradedring import AlgebraElement, GenSymbol, GradedAlgebra, Monomial

BETA = GenSymbol.ambient("beta", 1, 3)
HPLANE = GenSymbol.ambient("H", 1, 3)


class DegreeMismatchError(ValueError):
    """A relation fed to kills() is not homogeneous of the target degree."""


class GenerationFailure(RuntimeError):
    """No planned combination of relations kills the named class."""

    def __init__(self, target, detail=""):
        self.target = target
        k, j = target
        msg = f"no relation combination kills e_{k}({j})"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


# -- ordering on index pairs -------------------------------------------------


def order_key(pair):
    """Sort key realising the total order on index pairs (k, j)."""
    k, j = pair
    return (k + j - 1, k)


def order_cmp(a, b):
    """-1, 0 or 1 according to the (degree, then k) order on (k, j)."""
    ka, kb = order_key(a), order_key(b)
    return (ka > kb) - (ka < kb)


# -- partitions ---------------------------------------------------------------


@lru_cache(maxsize=None)
def partition_multiplicities(ell):
    """All partitions of ell as ((part, multiplicity), ...) tuples."""
    out = []

    def rec(remaining, max_part, current):
        if remaining == 0:
            out.append(tuple(current))
            return
        for part in range(min(remaining, max_part), 0, -1):
            m = 1
            while part * m <= remaining:
                rec(remaining - part * m, part - 1, current + [(part, m)])
                m += 1

    rec(ell, ell, [])
    return tuple(out)


def newton_elementary(ell, powersums):
    """l-th elementary symmetric function from power sums p_1..p_l.

    Implements e_l = (-1)^l sum_m prod_s (-p_s)^{m_s} / (m_s! s^{m_s}),
    summing over all partitions m of l.
    """
    algebra = powersums[1].algebra
    total = algebra.zero()
    for partition in partition_multiplicities(ell):
        term = algebra.one()
        weight = Fraction(1)
        for s, m in partition:
            term = term * (-powersums[s]) ** m
            weight /= factorial(m) * s ** m
        total = total + weight * term
    return Fraction((-1) ** ell) * total


def newton_chern(ell, ch):
    """l-th Chern class of a complex from its Chern character parts.

    ch maps s -> ch_s; the power sums of the virtual roots are
    p_s = -s! ch_s, so e_l = (-1)^l sum_m prod_s ((s-1)! ch_s)^{m_s}/m_s!.
    """
    algebra = ch[1].algebra
    total = algebra.zero()
    for partition in partition_multiplicities(ell):
        term = algebra.one()
        weight = Fraction(1)
        for s, m in partition:
            term = term * ch[s] ** m
            weight *= Fraction(factorial(s - 1) ** m, factorial(m))
        total = total + weight * term
    return Fraction((-1) ** ell) * total


# -- the engine ---------------------------------------------------------------


@dataclass(frozen=True)
class ABClass:
    """A_s or B_s: the pushforward building blocks of ch_s."""

    s: int
    n: int
    kind: str
    value: AlgebraElement


@dataclass(frozen=True)
class Relation:
    """A vanishing combination of e-classes, tagged with its origin."""

    lhs: AlgebraElement
    ell: int
    n: int
    beta_power: int

    @property
    def degree(self):
        return self.ell - (2 - self.beta_power)

    def scaled_lhs(self):
        """lhs divided by (l-2)!, the normalisation used in the tables."""
        return self.lhs * Fraction(1, factorial(max(self.ell - 2, 0)))


# coefficients of (e_{s+1}(0), e_s(1), e_{s-1}(2)) inside A_s and B_s
def _a_triple(n):
    return (Fraction(1), Fraction(3, 2) - n, Fraction(n * n - 3 * n + 2, 2))


def _b_triple(n):
    return (Fraction(1), Fraction(1, 2) - n, Fraction(n * n - n, 2))


class RelationEngine:
    """Relation factory for one parameter pair (or fully symbolic d, chi)."""

    def __init__(self, d=None, chi=None, max_degree=12):
        if (d is None) != (chi is None):
            raise ValueError("specialize both of d, chi or neither")
        self.symbolic = d is None
        if self.symbolic:
            self.d, self.chi = D, CHI
        else:
            self.d, self.chi = Fraction(d), Fraction(chi)
        scalars = {
            GenSymbol.e(0, 1): -self.d,
            GenSymbol.e(1, 0): self.chi - Fraction(3, 2) * self.d,
        }
        self.alg = GradedAlgebra(max_degree, scalars)
        self._ch_cache = {}
        self._pow_cache = {}
        self._sum_cache = {}
        self._grr_cache = {}

    # -- basic classes ----------------------------------------------------

    def e_class(self, k, j):
        """e_k(j) as an element; out-of-range indices give 0."""
        if k < 0 or j not in (0, 1, 2) or k + j - 1 < 0:
            return self.alg.zero()
        return self.alg.gen(GenSymbol.e(k, j))

    def ab_value(self, s, n, kind):
        if s < 0:
            return self.alg.zero()
        triple = _a_triple(n) if kind == "A" else _b_triple(n)
        return (triple[0] * self.e_class(s + 1, 0)
                + triple[1] * self.e_class(s, 1)
                + triple[2] * self.e_class(s - 1, 2))

    def ab_class(self, s, n, kind):
        if s < 0 or n not in (1, 2, 3) or kind not in ("A", "B"):
            raise ValueError("need s >= 0, n in {1,2,3}, kind in {A,B}")
        return ABClass(s, n, kind, self.ab_value(s, n, kind))

    def b0(self, n):
        """B_0 = chi + (n-2) d, a scalar."""
        return self.chi + (n - 2) * self.d

    # -- Chern characters of the pushforward -------------------------------

    def ch_pushforward(self, n, s, mode="closed_form"):
        """ch_s of the derived pushforward, in e-classes and beta."""
        if n not in (1, 2, 3) or s < 0:
            raise ValueError("need n in {1,2,3} and s >= 0")
        if mode == "closed_form":
            key = (n, s)
            if key not in self._ch_cache:
                self._ch_cache[key] = self._ch_closed(n, s)
            return self._ch_cache[key]
        if mode == "derive_grr":
            return self._grr_series(n).homogeneous_part(s)
        raise ValueError(f"unknown mode {mode!r}")

    def _ch_closed(self, n, s):
        x = self.ab_value(s, n, "A")
        beta = self.alg.gen(BETA)
        for i in range(0, min(2, s) + 1):
            sign = Fraction((-1) ** (i + 1), factorial(i))
            x = x + sign * beta ** i * self.ab_value(s - i, n, "B")
        return x

    def _grr_series(self, n):
        """Full pushforward character recomputed from first principles.

        Multiplies ch of the dual family (L + M H + N H^2) by the incidence
        character 1 - exp(-(H+beta)), the twist exp(-nH) and td(P^2), then
        integrates over the plane by extracting the H^2 coefficient.
        """
        if n in self._grr_cache:
            return self._grr_cache[n]
        # terms carrying H^2 exceed the engine cap by 2 before extraction
        A = GradedAlgebra(self.alg.max_degree + 2, self.alg.scalar_symbols)
        h, beta = A.gen(HPLANE), A.gen(BETA)

        def e(k, j):
            return A.gen(GenSymbol.e(k, j)) if k + j - 1 >= 0 else A.zero()

        top = A.max_degree
        L = sum((e(k, 2) for k in range(top)), A.zero())
        M = sum((e(k, 1) for k in range(top + 1)), A.zero())
        N = sum((e(k, 0) for k in range(1, top + 2)), A.zero())
        ch_dual = L + M * h + N * h * h
        incidence = A.one() - (-(h + beta)).exp()
        twist = (Fraction(-n) * h).exp()
        todd = A.one() + Fraction(3, 2) * h + h * h
        pushed = (ch_dual * incidence * twist * todd).extract({HPLANE: 2})
        rebased = self.alg.element(dict(pushed.terms))
        self._grr_cache[n] = rebased
        return rebased

    # -- relations ---------------------------------------------------------

    def _ch_power(self, n, s, m):
        key = (n, s, m)
        if key not in self._pow_cache:
            if m == 1:
                self._pow_cache[key] = self.ch_pushforward(n, s)
            else:
                self._pow_cache[key] = (self._ch_power(n, s, m - 1)
                                        * self.ch_pushforward(n, s))
        return self._pow_cache[key]

    def relation_sum(self, ell, n):
        """Partition sum whose vanishing is the source of all relations.

        Equals (-1)^l times the l-th Chern class of the pushforward complex:
        sum over partitions m of l of prod_s ((s-1)! ch_s)^{m_s} / m_s!.
        """
        key = (ell, n)
        if key not in self._sum_cache:
            total = self.alg.zero()
            for partition in partition_multiplicities(ell):
                term = None
                weight = Fraction(1)
                for s, m in partition:
                    p = self._ch_power(n, s, m)
                    term = p if term is None else term * p
                    weight *= Fraction(factorial(s - 1) ** m, factorial(m))
                total = total + weight * term
            self._sum_cache[key] = total
        return self._sum_cache[key]

    def seed_relation_sum(self, ell, n, terms):
        """Install a precomputed partition sum (parallel workers)."""
        self._sum_cache[(ell, n)] = self.alg.element(dict(terms))

    def make_relation(self, ell, n, beta_power):
        """Integrate the vanishing Chern class against beta^beta_power.

        Picking the beta^(2-beta_power) coefficient yields a homogeneous
        element of degree l - (2 - beta_power) that vanishes on the moduli
        space whenever l >= d+1.
        """
        if beta_power not in (0, 1, 2):
            raise ValueError("beta_power must be 0, 1 or 2")
        if ell < 1:
            raise ValueError("need ell >= 1")
        lhs = self.relation_sum(ell, n).extract({BETA: 2 - beta_power})
        return Relation(lhs, ell, n, beta_power)

    # -- killing classes ----------------------------------------------------

    @staticmethod
    def linear_coeff(element, target):
        k, j = target
        return element.coeff(Monomial.from_pairs([(GenSymbol.e(k, j), 1)]))

    def kills(self, combo, target):
        """Does the linear combination of relations kill e_target?

        True iff the combination carries the target class linearly with a
        nonzero coefficient while every other symbol occurring anywhere in
        it (including inside products) is strictly smaller in the order.
        """
        k, j = target
        degree = k + j - 1
        combined = self.alg.zero()
        for coeff, rel in combo:
            if rel.lhs and not rel.lhs.is_homogeneous(degree):
                raise DegreeMismatchError(
                    f"relation (l={rel.ell}, n={rel.n}, beta^{rel.beta_power}) "
                    f"is not homogeneous of degree {degree}")
            combined = combined + coeff * rel.scaled_lhs()
        if not self.linear_coeff(combined, target):
            return False
        tkey = order_key(target)
        for mono in combined.terms:
            for sym in mono.symbols():
                pair = (sym.k, sym.j)
                if pair == target and mono.degree == degree \
                        and mono.exponent(sym) == 1 and len(mono.factors) == 1:
                    continue
                if order_key(pair) >= tkey:
                    return False
        return True

    def table_from_relations(self, ell, beta_power):
        """3x3 scaled leading-coefficient matrix read off full relations.

        Rows are the three degree-(l-2+beta_power) generators in descending
        order, columns n = 1, 2, 3; cross-checks the closed-form tables.
        """
        degree = ell - (2 - beta_power)
        rows = [(degree + 1, 0), (degree, 1), (degree - 1, 2)]
        entries = []
        for target in rows:
            line = []
            for n in (1, 2, 3):
                rel = self.make_relation(ell, n, beta_power)
                line.append(self.linear_coeff(rel.scaled_lhs(), target))
            entries.append(tuple(line))
        return rows, tuple(entries)


# -- symbolic coefficient tables ----------------------------------------------


def _index_label(offset):
    if offset == 0:
        return "d"
    if offset > 0:
        return f"d+{offset}"
    return f"d-{-offset}"


def _symbol_label(offset, j):
    idx = _index_label(offset)
    if offset == 0:
        return f"e_d({j})"
    return f"e_{{{idx}}}({j})"


@dataclass(frozen=True)
class CoeffTable:
    """Linear coefficients of the three leading generators in R_1..R_3.

    Entries are scaled by 1/(l-2)! exactly as displayed in the source
    tables; row_offsets (c, j) name the generator e_{d+c}(j).
    """

    ell_offset: int
    beta_power: int
    row_offsets: tuple
    entries: tuple

    @property
    def row_labels(self):
        return tuple(_symbol_label(c, j) for c, j in self.row_offsets)

    def entry(self, row, n):
        return self.entries[row][n - 1]

    def column(self, n):
        return tuple(row[n - 1] for row in self.entries)

    def specialize(self, d_val, chi_val):
        """Concrete row indices and Fraction entries at integer (d, chi)."""
        rows = [(d_val + c, j) for c, j in self.row_offsets]
        vals = tuple(tuple(e.specialize(d_val, chi_val) for e in row)
                     for row in self.entries)
        return rows, vals


def leading_coeff_table(ell_offset, beta_power):
    """Coefficient table for l = d + ell_offset, symbolically in d and chi.

    Only partitions of shape 1^{m1} 2^{m2} s contribute linearly to the
    three leading generators: the small parts must supply their scalar
    beta-parts (B_0 beta from ch_1, -B_0 beta^2/2 from ch_2) and the large
    part supplies the generators.  The factorial ratio (s-1)!/(l-2)! is a
    rational function of d, which is where the 1/(1-d) denominators of the
    degree-(d-1) table come from.
    """
    if beta_power not in (0, 1, 2):
        raise ValueError("beta_power must be 0, 1 or 2")
    if ell_offset < 1:
        raise ValueError("the tables need l >= d+1, i.e. ell_offset >= 1")
    j = beta_power
    ell = D + ell_offset
    degree_offset = ell_offset - (2 - j)
    rows = ((degree_offset + 1, 0), (degree_offset, 1), (degree_offset - 1, 2))
    columns = []
    for n in (1, 2, 3):
        b0 = CHI + (n - 2) * D
        col = [ParamFraction(0)] * 3
        for m1 in range(3):
            for m2 in range(2):
                i = (2 - j) - m1 - 2 * m2
                if i < 0:
                    continue
                small = m1 + 2 * m2
                if small == 0:
                    ratio = ell - 1
                elif small == 1:
                    ratio = ParamFraction(1)
                else:
                    ratio = 1 / (ell - 2)
                pref = (ratio * Fraction(1, factorial(m1) * factorial(m2))
                        * b0 ** m1 * (b0 * Fraction(-1, 2)) ** m2)
                if i == 0:
                    triple = (Fraction(0), Fraction(1), Fraction(1 - n))
                else:
                    sign = Fraction((-1) ** (i + 1), factorial(i))
                    triple = tuple(sign * t for t in _b_triple(n))
                for r in range(3):
                    if triple[r]:
                        col[r] = col[r] + pref * triple[r]
        columns.append(col)
    entries = tuple(tuple(columns[c][r] for c in range(3)) for r in range(3))
    return CoeffTable(ell_offset, beta_power, rows, entries)


STEP_PARAMS = {1: (1, 2), 2: (1, 1), 3: (1, 0), 4: (2, 0)}


def step_table(step, ell_offset=None):
    """The four tables of the killing procedure (step 1 takes any offset)."""
    if step not in STEP_PARAMS:
        raise ValueError("step must be 1, 2, 3 or 4")
    offset, beta_power = STEP_PARAMS[step]
    if ell_offset is not None:
        if step != 1:
            raise ValueError("only step 1 varies the offset")
        offset = ell_offset
    return leading_coeff_table(offset, beta_power)


def det_step3():
    """Determinant of the degree-(d-1) table; closed form
    chi (d-2)(d-chi)(d-2chi) / (4 (1-d)^2)."""
    e = step_table(3).entries
    return (e[0][0] * (e[1][1] * e[2][2] - e[1][2] * e[2][1])
            - e[0][1] * (e[1][0] * e[2][2] - e[1][2] * e[2][0])
            + e[0][2] * (e[1][0] * e[2][1] - e[1][1] * e[2][0]))


def step4_combination():
    """The degree-d combination S and its two decisive coefficients.

    S multiplies R_1 by (chi - d/2 - 1/2) and subtracts
    (chi - 3d/2 - 1/2) R_2; the top generator cancels by construction and
    the coefficient of e_d(1) comes out as (d-chi)(d-chi+1)/2.
    """
    table = step_table(4)
    c1 = CHI - D / 2 - Fraction(1, 2)
    c2 = CHI - 3 * D / 2 - Fraction(1, 2)
    top = c1 * table.entry(0, 1) - c2 * table.entry(0, 2)
    target = c1 * table.entry(1, 1) - c2 * table.entry(1, 2)
    return {"multipliers": (c1, c2), "top_coefficient": top,
            "target_coefficient": target}


# -- generation check ----------------------------------------------------------


@dataclass(frozen=True)
class TargetWitness:
    k: int
    j: int
    degree: int
    combination: tuple  # ((coefficient string, (ell, n, beta_power)), ...)
    leading_coefficient: str

    def to_dict(self):
        return {
            "target": f"e_{self.k}({self.j})",
            "degree": self.degree,
            "combination": [
                {"coefficient": c, "ell": e, "n": n, "beta_power": b}
                for c, (e, n, b) in self.combination
            ],
            "leading_coefficient": self.leading_coefficient,
        }


@dataclass
class GenerationReport:
    d: int
    chi: int
    max_target_degree: int
    witnesses: list = field(default_factory=list)
    warnings: list = field(default_factory=list)

    def to_dict(self):
        return {
            "d": self.d,
            "chi": self.chi,
            "max_target_degree": self.max_target_degree,
            "targets_killed": len(self.witnesses),
            "warnings": list(self.warnings),
            "witnesses": [w.to_dict() for w in self.witnesses],
        }


def _planned_sums(d, max_degree):
    """(ell, n) partition sums the generation plan will request."""
    jobs = [(ell, 1) for ell in range(d + 1, max_degree + 2)]
    jobs += [(ell, 2) for ell in range(d + 1, max(max_degree, d + 2) + 1)]
    jobs.append((d + 1, 3))
    return jobs


def _sum_worker(args):
    d, chi, alg_degree, ell, n = args
    engine = RelationEngine(d, chi, max_degree=alg_degree)
    return ell, n, dict(engine.relation_sum(ell, n).terms)


def verify_generation(d, chi, max_target_degree=None, workers=1):
    """Exhibit relation combinations killing every e_k(j) in the range.

    For each degree d-1 <= k+j-1 <= max_target_degree the returned report
    names an explicit combination of relations (l, n, beta_power) that
    kills e_k(j); the first target that cannot be killed raises
    GenerationFailure.
    """
    if d < 4 or not 0 < chi < d:
        raise ValueError("need d >= 4 and 0 < chi < d")
    if max_target_degree is None:
        max_target_degree = d + 2
    if max_target_degree < d + 2:
        raise ValueError("max_target_degree must be at least d + 2")
    report = GenerationReport(d, chi, max_target_degree)
    if gcd(d, chi) != 1:
        report.warnings.append(
            f"gcd({d}, {chi}) != 1: the moduli space is singular and the "
            "relations are not guaranteed to kill every class")
    engine = RelationEngine(d, chi, max_degree=max_target_degree + 2)
    if workers and workers > 1:
        from concurrent.futures import ProcessPoolExecutor

        jobs = [(d, chi, max_target_degree + 2, ell, n)
                for ell, n in _planned_sums(d, max_target_degree)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for ell, n, terms in pool.map(_sum_worker, jobs):
                engine.seed_relation_sum(ell, n, terms)

    def rel(ell, n, beta_power):
        return engine.make_relation(ell, n, beta_power)

    def step3_combo(target_row):
        rels = [rel(d + 1, n, 0) for n in (1, 2, 3)]
        rows = [(d, 0), (d - 1, 1), (d - 2, 2)]
        matrix = [[engine.linear_coeff(r.scaled_lhs(), row) for r in rels]
                  for row in rows]
        rhs = [Fraction(int(i == target_row)) for i in range(3)]
        try:
            sol = solve_linear(matrix, rhs)
        except SingularSystemError as exc:
            raise GenerationFailure(rows[target_row],
                                    f"degree-{d - 1} system is singular ({exc})")
        return [(c, rels[i]) for i, c in enumerate(sol) if c]

    def plan(target):
        k, j = target
        degree = k + j - 1
        if degree == d - 1:
            return step3_combo({0: 0, 1: 1, 2: 2}[j])
        if j == 0:
            return [(Fraction(1), rel(degree + 1, 1, 1))]
        if j == 1:
            if degree == d:
                c1 = Fraction(chi) - Fraction(d, 2) - Fraction(1, 2)
                c2 = Fraction(chi) - Fraction(3 * d, 2) - Fraction(1, 2)
                return [(c1, rel(d + 2, 1, 0)), (-c2, rel(d + 2, 2, 0))]
            return [(Fraction(1), rel(degree, 1, 2))]
        # j == 2: beta-integrated pair at l = degree + 1 in the boundary
        # degree d, plain beta^2 pair at l = degree above it
        if degree == d:
            return [(Fraction(1), rel(degree + 1, 1, 1)),
                    (Fraction(-1), rel(degree + 1, 2, 1))]
        return [(Fraction(1), rel(degree, 1, 2)),
                (Fraction(-1), rel(degree, 2, 2))]

    for degree in range(d - 1, max_target_degree + 1):
        for target in ((degree + 1, 0), (degree, 1), (degree - 1, 2)):
            combo = plan(target)
            if not engine.kills(combo, target):
                raise GenerationFailure(target,
                                        f"planned combination fails at degree {degree}")
            combined = engine.alg.zero()
            for c, r in combo:
                combined = combined + c * r.scaled_lhs()
            witness = TargetWitness(
                target[0], target[1], degree,
                tuple((str(c), (r.ell, r.n, r.beta_power)) for c, r in combo),
                str(engine.linear_coeff(combined, target)),
            )
            report.witnesses.append(witness)
    return report
