"""Parametric model of filiform algebras in an adapted basis.

Every filiform nilpotent algebra admits a basis with [e_1, e_i] = e_{i+1}
(indices past n are zero) in which all remaining brackets are forced by the
seed brackets

    [e_k, e_{k+1}] = sum over s of a[k,s] e_s

with (k, s) running over the parameter index set

    {(k, s) | 2 <= k <= n//2, 2k+1 <= s <= n}  union  {(n//2, n)}.

The extra (n//2, n) entry only adds something for even n: it is the shared
top coefficient of all brackets [e_i, e_j] with i + j = n + 1, which the
chain recursion propagates with alternating signs.  (For even n the seed
[e_{n/2}, e_{n/2+1}] has index sum n + 1, so its e_n term sits one step
past the usual support bound s >= i + j; for odd n those brackets vanish
identically.)

Brackets with j >= i + 2 are derived from the identity J(e_1, e_i, e_{j-1})
= 0, i.e. [e_i, e_j] = shift([e_i, e_{j-1}]) - [e_{i+1}, e_{j-1}] where
shift applies ad(e_1).  The Jacobi identities on triples without e_1 then
become quadratic polynomial constraints on the parameters; this module
generates them, specializes them, and analyzes the three-variable
subsystem that controls the n = 14 case.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Optional

from .core import LieAlgebra
from .errors import BadDimension, LienilError, MissingAssignment
from .fields import GF, QQ
from .multipoly import MultiPoly, poly_str, poly_to_json


def parameter_indices(n: int) -> list:
    """Sorted parameter index set of the dimension-n model."""
    if n < 3:
        raise BadDimension("adapted-basis model needs dimension >= 3")
    half = n // 2
    out = {(k, s) for k in range(2, half + 1) for s in range(2 * k + 1, n + 1)}
    if half >= 2:
        out.add((half, n))
    return sorted(out)


class SymbolicFiliform:
    """Bracket table with MultiPoly coefficients, dimension n.

    table maps (i, j) with 1 <= i < j <= n to {s: MultiPoly}; zero
    coordinates are not stored.
    """

    def __init__(self, n: int, table: dict):
        self.n = n
        self.table = table

    def pair(self, i: int, j: int) -> dict:
        if i == j:
            return {}
        if i < j:
            return self.table.get((i, j), {})
        return {s: -p for s, p in self.table.get((j, i), {}).items()}

    def parameters(self) -> list:
        return parameter_indices(self.n)


def _shift(vec: dict, n: int) -> dict:
    """Apply ad(e_1): e_s -> e_{s+1}, e_n -> 0, to a polynomial vector."""
    return {s + 1: p for s, p in vec.items() if s + 1 <= n}


def build_symbolic(n: int) -> SymbolicFiliform:
    if n < 3:
        raise BadDimension("adapted-basis model needs dimension >= 3")
    params = set(parameter_indices(n))
    table = {}
    for i in range(2, n):
        table[(1, i)] = {i + 1: MultiPoly.const(1)}
    for k in range(2, n):
        seed = {}
        for s in range(1, n + 1):
            if (k, s) in params:
                seed[s] = MultiPoly.variable((k, s))
        if seed:
            table[(k, k + 1)] = seed
    for gap in range(2, n - 1):
        for i in range(2, n - gap + 1):
            j = i + gap
            prev = table.get((i, j - 1), {})
            inner = table.get((i + 1, j - 1), {}) if i + 1 < j - 1 else {}
            vec = _shift(prev, n)
            for s, p in inner.items():
                q = vec.get(s, MultiPoly.zero()) - p
                if q.is_zero:
                    vec.pop(s, None)
                else:
                    vec[s] = q
            if vec:
                table[(i, j)] = vec
    sf = SymbolicFiliform(n, table)
    _check_support(sf)
    return sf


def _check_support(sf: SymbolicFiliform) -> None:
    # support bound: s >= i+j below the top, only e_n at index sum n+1,
    # nothing above
    n = sf.n
    for (i, j), vec in sf.table.items():
        if i == 1:
            continue
        for s in vec:
            if i + j <= n:
                assert s >= i + j, f"support violation at [{i},{j}] -> {s}"
            elif i + j == n + 1:
                assert s == n, f"top-chain violation at [{i},{j}] -> {s}"
            else:
                raise AssertionError(f"nonzero bracket [{i},{j}] past the top")


def symbolic_bracket(sf: SymbolicFiliform, a: int, vec: dict) -> dict:
    """[e_a, v] for a polynomial vector v = {s: poly}."""
    out = {}
    for s, p in vec.items():
        for t, q in sf.pair(a, s).items():
            r = out.get(t, MultiPoly.zero()) + p * q
            if r.is_zero:
                out.pop(t, None)
            else:
                out[t] = r
    return out


def _jacobi_vector(sf: SymbolicFiliform, a: int, b: int, c: int) -> dict:
    out = {}
    for x, (y, z) in ((a, (b, c)), (b, (c, a)), (c, (a, b))):
        for t, q in symbolic_bracket(sf, x, sf.pair(y, z)).items():
            r = out.get(t, MultiPoly.zero()) + q
            if r.is_zero:
                out.pop(t, None)
            else:
                out[t] = r
    return out


@dataclass(frozen=True)
class ConstraintRecord:
    """One Jacobi constraint: coordinate `s` of J(e_a, e_b, e_c) = 0."""

    triple: tuple
    coordinate: int
    poly: MultiPoly


def jacobi_constraints(sf: SymbolicFiliform) -> list:
    """All nonzero constraint polynomials from triples not containing e_1.

    Triples with e_1 are identically satisfied by construction of the
    recursion; `generator_triple_residuals` verifies that separately.
    """
    out = []
    for a, b, c in itertools.combinations(range(2, sf.n + 1), 3):
        vec = _jacobi_vector(sf, a, b, c)
        for s in sorted(vec):
            out.append(ConstraintRecord((a, b, c), s, vec[s]))
    return out


def generator_triple_residuals(sf: SymbolicFiliform) -> list:
    """Nonzero coordinates of J(e_1, e_b, e_c); empty iff the recursion is
    self-consistent (it always should be)."""
    out = []
    for b, c in itertools.combinations(range(2, sf.n + 1), 2):
        vec = _jacobi_vector(sf, 1, b, c)
        for s in sorted(vec):
            out.append(ConstraintRecord((1, b, c), s, vec[s]))
    return out


def top_coefficient_chain_ok(sf: SymbolicFiliform) -> bool:
    """Check the derived identity for brackets with index sum n + 1.

    For even n they all equal the (n//2, n) parameter times e_n with
    alternating signs anchored at the seed pair; for odd n they vanish.
    """
    n = sf.n
    if n % 2 == 0:
        alpha = MultiPoly.variable((n // 2, n))
        anchor = n // 2 - 1  # seed pair (n/2, n/2+1) sits at i = n/2 - 1
        for i in range(1, n - 1):
            lo, hi = i + 1, n - i
            if lo >= hi:
                continue
            expected = {n: alpha if (i - anchor) % 2 == 0 else -alpha}
            if sf.pair(lo, hi) != expected:
                return False
    else:
        for i in range(1, n - 1):
            lo, hi = i + 1, n - i
            if lo >= hi:
                continue
            if sf.pair(lo, hi):
                return False
    return True


# ---------------------------------------------------------------------------
# specialization
# ---------------------------------------------------------------------------

def filiform_parameters(L: LieAlgebra) -> dict:
    """Read the parameter assignment off a concrete adapted-basis algebra."""
    out = {}
    for k, s in parameter_indices(L.dim):
        out[(k, s)] = Fraction(L.brackets.get((k, k + 1), {}).get(s, 0))
    return out


def _require_total(assignment: dict, needed) -> None:
    missing = [v for v in needed if v not in assignment]
    if missing:
        raise MissingAssignment(f"no value for parameters {missing}")


def specialize(sf: SymbolicFiliform, assignment: dict, field=QQ) -> LieAlgebra:
    """Evaluate the symbolic table at a total parameter assignment."""
    _require_total(assignment, sf.parameters())
    if field == QQ:
        values = {v: Fraction(x) for v, x in assignment.items()}
        ev = lambda p: p.eval(values)
    else:
        values = {v: field.coerce(x) for v, x in assignment.items()}
        ev = lambda p: p.eval_in(field, values)
    table = {}
    for (i, j), vec in sf.table.items():
        terms = {}
        for s, p in vec.items():
            x = ev(p)
            if not field.is_zero(x):
                terms[s] = x
        if terms:
            table[(i, j)] = terms
    return LieAlgebra(sf.n, field, table)


def specialize_polys(polys, assignment: dict, field=QQ) -> list:
    """Evaluate a list of constraint polynomials at an assignment."""
    needed = set()
    for p in polys:
        needed.update(p.variables())
    _require_total(assignment, sorted(needed))
    if field == QQ:
        values = {v: Fraction(x) for v, x in assignment.items()}
        return [p.eval(values) for p in polys]
    values = {v: field.coerce(x) for v, x in assignment.items()}
    return [p.eval_in(field, values) for p in polys]


# ---------------------------------------------------------------------------
# the three-variable subsystem controlling n = 14
# ---------------------------------------------------------------------------

X1 = (4, 9)
X2 = (3, 7)
X3 = (2, 5)
TOP = (7, 14)


def dim14_reference_system() -> tuple:
    """The three quadratic relations in (x1, x2, x3) = (a[4,9], a[3,7], a[2,5])
    that an n = 14 adapted basis with nonzero top coefficient must satisfy."""
    x1 = MultiPoly.variable(X1)
    x2 = MultiPoly.variable(X2)
    x3 = MultiPoly.variable(X3)
    f1 = x1 * (x2 + 2 * x3)
    f2 = 3 * x1 * (x2 + 2 * x3 - 21 * x1) + 2 * (3 * x2 - x3) * (x2 - x3)
    f3 = x1 * (5 * x1 + 3 * x2)
    return (f1, f2, f3)


class UnsupportedSystem(LienilError):
    """The case-analysis solver met a polynomial it cannot split into
    rational linear factors."""


def _rational_sqrt(q: Fraction) -> Optional[Fraction]:
    if q < 0:
        return None
    rn, rd = isqrt(q.numerator), isqrt(q.denominator)
    if rn * rn == q.numerator and rd * rd == q.denominator:
        return Fraction(rn, rd)
    return None


def linear_factors(p: MultiPoly) -> Optional[list]:
    """Split p into homogeneous linear factors over Q, or None.

    Handles: plain linear forms, monomial variable factors, and quadratics
    in at most two variables via the discriminant.  Constant factors are
    dropped (they do not affect the zero set).
    """
    if p.is_zero:
        return []
    factors = []
    for v in p.variables():
        m = p.variable_multiplicity(v)
        if m:
            p = p.divide_variable_power(v, m)
            factors.extend([MultiPoly.variable(v)] * m)
    if p.degree() <= 0:
        return factors
    if p.degree() == 1:
        factors.append(p)
        return factors
    if p.degree() == 2:
        vs = p.variables()
        if len(vs) == 1:
            x = vs[0]
            a = p.terms.get(((x, 2),), Fraction(0))
            b = p.terms.get(((x, 1),), Fraction(0))
            c = p.constant_part()
            quad = _factor_quadratic(a, b, c, MultiPoly.variable(x), MultiPoly.const(1))
        elif len(vs) == 2 and all(sum(e for _, e in m) == 2 for m in p.terms):
            x, y = vs
            a = p.terms.get(((x, 2),), Fraction(0))
            b = p.terms.get(tuple(sorted(((x, 1), (y, 1)))), Fraction(0))
            c = p.terms.get(((y, 2),), Fraction(0))
            quad = _factor_quadratic(a, b, c, MultiPoly.variable(x), MultiPoly.variable(y))
        else:
            return None
        if quad is None:
            return None
        factors.extend(quad)
        return factors
    return None


def _factor_quadratic(a, b, c, X: MultiPoly, Y: MultiPoly) -> Optional[list]:
    """Factor a X^2 + b XY + c Y^2 into linear combinations of X and Y."""
    if a == 0:
        # b XY + c Y^2 = Y (b X + c Y)
        out = [Y]
        rest = b * X + c * Y
        if not rest.is_zero and rest.degree() >= 1:
            out.append(rest)
        return out
    disc = _rational_sqrt(b * b - 4 * a * c)
    if disc is None:
        return None
    r1 = (-b + disc) / (2 * a)
    r2 = (-b - disc) / (2 * a)
    return [X - r1 * Y, X - r2 * Y]


def _linear_to_row(p: MultiPoly) -> dict:
    row = {}
    for m, c in p.terms.items():
        (v, e), = m
        assert e == 1
        row[v] = c
    return row


def _row_to_poly(row: dict) -> MultiPoly:
    out = MultiPoly.zero()
    for v, c in row.items():
        out = out + c * MultiPoly.variable(v)
    return out


@dataclass(frozen=True)
class SolutionComponent:
    """A linear family of solutions: canonical RREF relations plus the free
    parameters not pinned by them."""

    relations: tuple
    free: tuple

    @property
    def dimension(self) -> int:
        return len(self.free)

    def contains_point(self, assignment: dict) -> bool:
        return all(r.eval({v: Fraction(assignment[v]) for v in r.variables()}) == 0
                   for r in self.relations)


@dataclass(frozen=True)
class BranchLeaf:
    path: tuple
    component: SolutionComponent


@dataclass(frozen=True)
class SystemAnalysis:
    """Full case analysis of a homogeneous polynomial system over Q."""

    variables: tuple
    leaves: tuple
    components: tuple  # maximal solution components

    def contains_point(self, assignment: dict) -> bool:
        return any(c.contains_point(assignment) for c in self.components)


def solve_homogeneous(polys, variables) -> SystemAnalysis:
    """Case-analysis solver: branch on rational linear factors.

    Only systems whose polynomials (after substituting accumulated linear
    relations) split into rational linear factors are supported; others
    raise UnsupportedSystem.
    """
    from .core import SparseEchelon

    variables = tuple(sorted(variables))
    leaves = []

    def substituted(p: MultiPoly, ech) -> MultiPoly:
        for pivot in sorted(ech.rows):
            row = ech.rows[pivot]
            repl = MultiPoly.zero()
            for v, c in row.items():
                if v != pivot:
                    repl = repl - c * MultiPoly.variable(v)
            p = p.substitute(pivot, repl)
        return p

    def descend(pending, ech, path):
        pending = [q for q in (substituted(p, ech) for p in pending) if not q.is_zero]
        if not pending:
            rel = tuple(_row_to_poly(r).normalized() for r in
                        (ech.rows[p] for p in sorted(ech.rows)))
            free = tuple(v for v in variables if v not in ech.rows)
            leaves.append(BranchLeaf(tuple(path), SolutionComponent(rel, free)))
            return
        pending.sort(key=lambda q: (q.degree(), len(q.terms), poly_str(q)))
        head, rest = pending[0], pending[1:]
        factors = linear_factors(head)
        if factors is None:
            raise UnsupportedSystem(f"cannot factor {head} into rational linear forms")
        seen = set()
        for fac in factors:
            fac = fac.normalized()
            if fac in seen:
                continue
            seen.add(fac)
            sub = SparseEchelon(QQ)
            for pivot in sorted(ech.rows):
                sub.insert(dict(ech.rows[pivot]))
            sub.insert(_linear_to_row(fac))
            descend(list(rest), sub, path + [poly_str(fac) + " = 0"])

    descend(list(polys), SparseEchelon(QQ), [])

    # dedupe leaves into maximal components
    uniq = []
    for leaf in leaves:
        if leaf.component not in uniq:
            uniq.append(leaf.component)

    def contains(big: SolutionComponent, small: SolutionComponent) -> bool:
        ech = SparseEchelon(QQ)
        for r in small.relations:
            ech.insert(_linear_to_row(r))
        return all(not ech.reduce(_linear_to_row(r)) for r in big.relations)

    maximal = [
        c
        for c in uniq
        if not any(d is not c and contains(d, c) and not contains(c, d) for d in uniq)
    ]
    return SystemAnalysis(variables, tuple(leaves), tuple(maximal))


def solve_mod_p(polys, variables, p: int) -> list:
    """Exhaustive solution scan of a system over F_p (small p)."""
    field = GF(p)
    variables = tuple(sorted(variables))
    sols = []
    for point in itertools.product(range(p), repeat=len(variables)):
        assignment = dict(zip(variables, point))
        if all(field.is_zero(q.eval_in(field, assignment)) for q in polys):
            sols.append(point)
    return sols


# ---------------------------------------------------------------------------
# extraction of the subsystem from the generated constraints
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SubsystemMatch:
    """A generated constraint equal (up to a scalar, after removing a power
    of the top parameter) to one of the reference polynomials."""

    reference_index: int
    triple: tuple
    coordinate: int
    top_power_removed: int
    scale: Fraction


@dataclass(frozen=True)
class SubsystemReport:
    reference: tuple
    candidates: tuple  # (record, top_power, reduced normalized poly)
    matches: tuple
    analysis: SystemAnalysis
    mod2_solutions: tuple

    @property
    def all_matched(self) -> bool:
        found = {m.reference_index for m in self.matches}
        return found == set(range(len(self.reference)))


def dim14_subsystem(records=None) -> SubsystemReport:
    """Locate the three-variable relations inside the n = 14 constraint set
    and solve the reference system.

    Every generated constraint is stripped of its top-parameter factor
    (a[7,14]^m, justified by the nonzero-top-coefficient reduction) and kept
    as a candidate if the remainder only involves x1, x2, x3.  Candidates
    are compared with the reference polynomials up to a nonzero scalar.
    """
    if records is None:
        records = jacobi_constraints(build_symbolic(14))
    xvars = {X1, X2, X3}
    reference = dim14_reference_system()
    ref_norm = [r.normalized() for r in reference]

    candidates = []
    for rec in records:
        m = rec.poly.variable_multiplicity(TOP)
        reduced = rec.poly.divide_variable_power(TOP, m)
        if set(reduced.variables()) <= xvars and not reduced.is_zero:
            candidates.append((rec, m, reduced))

    matches = []
    for idx, rn in enumerate(ref_norm):
        for rec, m, reduced in candidates:
            if reduced.normalized() == rn:
                scale = reduced.content() / reference[idx].content()
                matches.append(
                    SubsystemMatch(idx, rec.triple, rec.coordinate, m, scale)
                )

    analysis = solve_homogeneous(reference, [X1, X2, X3])
    mod2 = tuple(solve_mod_p(reference, [X1, X2, X3], 2))
    return SubsystemReport(
        reference=reference,
        candidates=tuple((rec, m, reduced.normalized()) for rec, m, reduced in candidates),
        matches=tuple(matches),
        analysis=analysis,
        mod2_solutions=mod2,
    )


def constraints_to_json(records) -> list:
    return [
        {
            "triple": list(rec.triple),
            "coordinate": rec.coordinate,
            "polynomial": poly_to_json(rec.poly),
        }
        for rec in records
    ]
