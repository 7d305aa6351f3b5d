"""Derivation algebras, positive gradings, semidirect extensions, and
verification of nilpotent-plus-nilpotent decompositions.

Matrices are dense nested lists of field scalars, row-major: D[m][k] is the
e_{m+1} coordinate of D(e_{k+1}).  The derivation solver reuses the sparse
elimination kernel from `core` with (row, col) pairs as column labels.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Optional

from .core import (
    LieAlgebra,
    SparseEchelon,
    Subspace,
    bracket_sparse,
    invariants,
    is_ideal,
    is_subalgebra,
    kernel_basis,
    matrix_rank,
    restrict_to_subalgebra,
)
from .errors import DimensionMismatch, NotADerivation
from .fields import QQ


def _check_matrix(L: LieAlgebra, D) -> None:
    if len(D) != L.dim or any(len(row) != L.dim for row in D):
        raise DimensionMismatch("matrix shape does not match algebra dimension")


def _column(L: LieAlgebra, D, k: int) -> dict:
    """D(e_k) as a sparse vector."""
    f = L.field
    return {m + 1: f.coerce(D[m][k - 1]) for m in range(L.dim) if not f.is_zero(D[m][k - 1])}


def is_derivation(L: LieAlgebra, D) -> bool:
    """Leibniz identity D[x,y] = [Dx,y] + [x,Dy] on every basis pair."""
    _check_matrix(L, D)
    f = L.field
    cols = {k: _column(L, D, k) for k in range(1, L.dim + 1)}
    for i in range(1, L.dim + 1):
        ei = {i: f.one}
        for j in range(i + 1, L.dim + 1):
            ej = {j: f.one}
            lhs = {}
            for k, c in L.pair(i, j).items():
                for m, x in cols[k].items():
                    y = f.add(lhs.get(m, f.zero), f.mul(c, x))
                    if f.is_zero(y):
                        lhs.pop(m, None)
                    else:
                        lhs[m] = y
            for side in (bracket_sparse(L, cols[i], ej), bracket_sparse(L, ei, cols[j])):
                for m, x in side.items():
                    y = f.sub(lhs.get(m, f.zero), x)
                    if f.is_zero(y):
                        lhs.pop(m, None)
                    else:
                        lhs[m] = y
            if lhs:
                return False
    return True


@dataclass
class DerivationSpace:
    """Canonical basis of all derivations of one algebra.

    Basis matrices are the RREF rows of the solution space of the Leibniz
    system, flattened row-major; `contains` tests membership by reduction.
    """

    algebra: LieAlgebra
    basis: list
    _echelon: SparseEchelon

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def contains(self, D) -> bool:
        _check_matrix(self.algebra, D)
        f = self.algebra.field
        vec = {}
        for m in range(self.algebra.dim):
            for k in range(self.algebra.dim):
                x = f.coerce(D[m][k])
                if not f.is_zero(x):
                    vec[(m + 1, k + 1)] = x
        return self._echelon.contains(vec)


def derivation_space(L: LieAlgebra) -> DerivationSpace:
    """Solve D[e_i,e_j] = [De_i,e_j] + [e_i,De_j] for all pairs.

    Unknowns are the n^2 entries D[m][k], labeled (m+1, k+1); one equation
    per pair (i, j) and coordinate m.
    """
    f = L.field
    n = L.dim

    def gamma(a, b):
        return L.pair(a, b)

    equations = []
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            cij = gamma(i, j)
            rows = [dict() for _ in range(n + 1)]  # rows[m] = equation at e_m
            for k, c in cij.items():
                for m in range(1, n + 1):
                    _acc(f, rows[m], (m, k), c)
            for l in range(1, n + 1):
                for m, c in gamma(l, j).items():
                    _acc(f, rows[m], (l, i), f.neg(c))
                for m, c in gamma(i, l).items():
                    _acc(f, rows[m], (l, j), f.neg(c))
            equations.extend(r for r in rows if r)

    columns = [(m, k) for m in range(1, n + 1) for k in range(1, n + 1)]
    kernel = kernel_basis(equations, columns, f)

    # canonicalize: RREF the kernel vectors themselves
    ech = SparseEchelon(f)
    for vec in kernel:
        ech.insert(vec)
    basis = []
    for row in ech.basis_rows():
        D = [[f.zero] * n for _ in range(n)]
        for (m, k), x in row.items():
            D[m - 1][k - 1] = x
        basis.append(D)
    return DerivationSpace(L, basis, ech)


def _acc(f, row: dict, key, val):
    y = f.add(row.get(key, f.zero), val)
    if f.is_zero(y):
        row.pop(key, None)
    else:
        row[key] = y


def diagonal_matrix(field, entries) -> list:
    n = len(entries)
    D = [[field.zero] * n for _ in range(n)]
    for t, w in enumerate(entries):
        D[t][t] = field.coerce(w)
    return D


def commutator(field, A, B) -> list:
    n = len(A)
    out = [[field.zero] * n for _ in range(n)]
    for m in range(n):
        for k in range(n):
            s = field.zero
            for l in range(n):
                s = field.add(s, field.sub(field.mul(A[m][l], B[l][k]), field.mul(B[m][l], A[l][k])))
            out[m][k] = s
    return out


# ---------------------------------------------------------------------------
# positive gradings
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GradingWitness:
    """Positive integer weights with w_i + w_j = w_k on every stored bracket.

    The induced diagonal matrix diag(w_1, ..., w_n) is then an invertible
    derivation.
    """

    weights: tuple

    def derivation_matrix(self, field=QQ) -> list:
        return diagonal_matrix(field, [field.from_int(w) for w in self.weights])


def grading_holds(L: LieAlgebra, weights) -> bool:
    if len(weights) != L.dim:
        raise DimensionMismatch("weight vector length does not match algebra")
    for (i, j), terms in L.brackets.items():
        for k in terms:
            if weights[i - 1] + weights[j - 1] != weights[k - 1]:
                return False
    return True


def find_positive_grading(
    L: LieAlgebra, bound: Optional[int] = None, max_candidates: int = 2_000_000
) -> Optional[GradingWitness]:
    """Search for positive integer weights making every bracket graded.

    Solves the homogeneous system w_i + w_j - w_k = 0 over Q, then scans
    integer values of the free coordinates in [1, bound] (default bound
    4n).  Coordinates constrained by no bracket are fixed at 1.  Among all
    positive integer points found, returns the one minimizing total weight
    and then the weight vector lexicographically; None if the scan finds no
    positive point.
    """
    n = L.dim
    if bound is None:
        bound = 4 * n
    ech = SparseEchelon(QQ)
    for (i, j), terms in L.brackets.items():
        for k in terms:
            row = {}
            for col, sgn in ((i, 1), (j, 1), (k, -1)):
                _acc(QQ, row, col, QQ.from_int(sgn))
            if row:
                ech.insert(row)
    pivots = set(ech.rows)
    constrained = set()
    for p, row in ech.rows.items():
        constrained.update(row)
    free = [c for c in range(1, n + 1) if c not in pivots]
    scan_free = [c for c in free if c in constrained]
    fixed_free = [c for c in free if c not in constrained]

    best = None
    examined = 0
    for values in itertools.product(range(1, bound + 1), repeat=len(scan_free)):
        examined += 1
        if examined > max_candidates:
            break
        assign = {c: QQ.one for c in fixed_free}
        assign.update({c: QQ.from_int(v) for c, v in zip(scan_free, values)})
        ok = True
        weights = [None] * n
        for c in free:
            weights[c - 1] = assign[c]
        for p, row in ech.rows.items():
            w = QQ.zero
            for c, coef in row.items():
                if c == p:
                    continue
                w = QQ.sub(w, QQ.mul(coef, assign[c]))
            if w.denominator != 1 or w < 1:
                ok = False
                break
            weights[p - 1] = w
        if not ok:
            continue
        ints = tuple(int(w) for w in weights)
        if any(w < 1 for w in ints):
            continue
        key = (sum(ints), ints)
        if best is None or key < best:
            best = key
    if best is None:
        return None
    return GradingWitness(best[1])


# ---------------------------------------------------------------------------
# semidirect extension by a derivation
# ---------------------------------------------------------------------------

def semidirect_extend(N: LieAlgebra, D) -> LieAlgebra:
    """Adjoin one generator acting as the derivation D.

    The result has dimension n+1 with [e_{n+1}, e_i] = D(e_i) on the
    embedded copy of N; when D is invertible this raises the derived length
    by exactly one.
    """
    _check_matrix(N, D)
    if not is_derivation(N, D):
        raise NotADerivation("matrix fails the Leibniz identity")
    f = N.field
    n = N.dim
    table = {key: dict(val) for key, val in N.brackets.items()}
    for i in range(1, n + 1):
        col = _column(N, D, i)
        if col:
            table[(i, n + 1)] = {m: f.neg(x) for m, x in col.items()}
    return LieAlgebra(n + 1, f, table)


def embedded_subspace(field, total_dim: int, S: Subspace) -> Subspace:
    """Pad a subspace of the first `S.ambient_dim` coordinates with zeros."""
    rows = [list(r) + [field.zero] * (total_dim - S.ambient_dim) for r in S.rows]
    return Subspace.span(field, total_dim, rows)


def is_nonsingular(field, D) -> bool:
    return matrix_rank(field, D) == len(D)


# ---------------------------------------------------------------------------
# decomposition verification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DecompositionReport:
    """Checks for a supplied decomposition g = a + b into two subspaces.

    `c_a`/`c_b` are nilpotency classes of the restricted subalgebras: an
    int, the string "not nilpotent", or None when the subspace is not
    bracket-closed.  `d_g` is the derived length of the ambient algebra or
    "not solvable".  `estimate_holds` evaluates d(g) <= c(a) + c(b) with
    non-nilpotent classes treated as infinite; None when a class is
    undefined.
    """

    spans: bool
    a_subalgebra: bool
    b_subalgebra: bool
    b_is_ideal: bool
    c_a: object
    c_b: object
    d_g: object
    estimate_holds: Optional[bool]


def _restricted_class(L: LieAlgebra, U: Subspace):
    if U.dim == 0:
        return 0
    sub = restrict_to_subalgebra(L, U)
    c = invariants(sub).nilpotency_class
    return c if c is not None else "not nilpotent"


def decomposition_check(L: LieAlgebra, A: Subspace, B: Subspace) -> DecompositionReport:
    for U in (A, B):
        if U.ambient_dim != L.dim:
            raise DimensionMismatch("subspace ambient dimension does not match algebra")
    spans = A.sum(B).dim == L.dim
    a_sub = is_subalgebra(L, A)
    b_sub = is_subalgebra(L, B)
    c_a = _restricted_class(L, A) if a_sub else None
    c_b = _restricted_class(L, B) if b_sub else None
    d = invariants(L).derived_length
    d_g = d if d is not None else "not solvable"
    if c_a is None or c_b is None:
        holds = None
    else:
        lhs = math.inf if d_g == "not solvable" else d_g
        rhs = (
            math.inf
            if "not nilpotent" in (c_a, c_b)
            else c_a + c_b
        )
        holds = lhs <= rhs
    return DecompositionReport(
        spans=spans,
        a_subalgebra=a_sub,
        b_subalgebra=b_sub,
        b_is_ideal=is_ideal(L, B),
        c_a=c_a,
        c_b=c_b,
        d_g=d_g,
        estimate_holds=holds,
    )
