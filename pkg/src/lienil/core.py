"""Structure-constant Lie algebras and the exact linear algebra behind them.

A `LieAlgebra` stores its bracket table sparsely, for index pairs i < j only;
antisymmetry is applied by the accessors.  Jacobi is *not* an invariant of
the type: candidate tables that fail it are representable on purpose (the
search and filiform modules need them) and `jacobi_check` reports failures
as data.

Subspaces are kept in reduced row-echelon form with normalized pivots, so
equality is structural, containment is a reduction to zero, and sums are
cheap.  The same sparse elimination kernel (`SparseEchelon`) also solves the
derivation systems in `derivations`, where column labels are matrix-entry
pairs instead of coordinate indices.  Pivoting is always "leftmost column,
first nonzero row": determinism over speed, which exact arithmetic permits.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import DimensionMismatch, FieldMismatch
from .fields import QQ


# ---------------------------------------------------------------------------
# sparse elimination kernel
# ---------------------------------------------------------------------------

class SparseEchelon:
    """Incremental reduced row echelon form over an exact field.

    Rows are dicts mapping column labels to nonzero scalars.  Labels only
    need a total order (ints for coordinates, (row, col) pairs for matrix
    entries).  Inserted rows are fully reduced against each other, pivots
    normalized to 1, so the stored rows are the canonical RREF basis of the
    row space, keyed by pivot label.
    """

    def __init__(self, field):
        self.field = field
        self.rows = {}  # pivot label -> sparse row

    @property
    def dim(self) -> int:
        return len(self.rows)

    def reduce(self, vec: dict) -> dict:
        """Return a copy of vec reduced against all stored rows."""
        f = self.field
        vec = {c: x for c, x in vec.items() if not f.is_zero(x)}
        for p in sorted(set(vec) & set(self.rows)):
            coef = vec.pop(p, None)
            if coef is None or f.is_zero(coef):
                continue
            for c, x in self.rows[p].items():
                if c == p:
                    continue
                y = f.sub(vec.get(c, f.zero), f.mul(coef, x))
                if f.is_zero(y):
                    vec.pop(c, None)
                else:
                    vec[c] = y
        return vec

    def insert(self, vec: dict):
        """Reduce vec and adjoin it if independent; return its pivot or None."""
        f = self.field
        vec = self.reduce(vec)
        if not vec:
            return None
        p = min(vec)
        inv = f.inv(vec[p])
        row = {c: f.mul(inv, x) for c, x in vec.items()}
        for q, other in self.rows.items():
            coef = other.get(p)
            if coef is None:
                continue
            for c, x in row.items():
                y = f.sub(other.get(c, f.zero), f.mul(coef, x))
                if f.is_zero(y):
                    other.pop(c, None)
                else:
                    other[c] = y
        self.rows[p] = row
        return p

    def pivots(self):
        return sorted(self.rows)

    def basis_rows(self):
        """Stored rows in pivot order (the canonical RREF basis)."""
        return [dict(self.rows[p]) for p in sorted(self.rows)]

    def contains(self, vec: dict) -> bool:
        return not self.reduce(vec)


def kernel_basis(rows, columns, field):
    """Canonical basis of the solution space of homogeneous equations.

    `rows` is an iterable of sparse equation rows over the given ordered
    column labels.  Returns one sparse vector per free column, with value 1
    at that column: the standard kernel basis read off the RREF.
    """
    ech = SparseEchelon(field)
    for r in rows:
        ech.insert(r)
    pivots = set(ech.rows)
    basis = []
    for free in columns:
        if free in pivots:
            continue
        vec = {free: field.one}
        for p, row in ech.rows.items():
            coef = row.get(free)
            if coef is not None and not field.is_zero(coef):
                vec[p] = field.neg(coef)
        basis.append(vec)
    return basis


def matrix_rank(field, rows) -> int:
    """Exact rank of a dense matrix given as nested lists of scalars."""
    ech = SparseEchelon(field)
    for row in rows:
        ech.insert({c: x for c, x in enumerate(row) if not field.is_zero(x)})
    return ech.dim


# ---------------------------------------------------------------------------
# subspaces
# ---------------------------------------------------------------------------

class Subspace:
    """A subspace of the coordinate n-space in canonical echelon form.

    `rows` is a tuple of dense coefficient tuples (entry t is the e_{t+1}
    coordinate), pivots strictly increasing, pivot entries 1 with zeros
    above and below.  Equality is structural equality of the basis.
    """

    __slots__ = ("ambient_dim", "field", "rows", "pivot_cols")

    def __init__(self, ambient_dim, field, rows, pivot_cols):
        self.ambient_dim = ambient_dim
        self.field = field
        self.rows = rows
        self.pivot_cols = pivot_cols

    # -- constructors ------------------------------------------------------

    @classmethod
    def span(cls, field, ambient_dim: int, vectors) -> "Subspace":
        """Echelonize a list of dense vectors (lists of scalars)."""
        ech = SparseEchelon(field)
        for v in vectors:
            if len(v) != ambient_dim:
                raise DimensionMismatch(
                    f"vector of length {len(v)} in ambient dim {ambient_dim}"
                )
            ech.insert({c: field.coerce(x) for c, x in enumerate(v) if not field.is_zero(x)})
        return cls._from_echelon(field, ambient_dim, ech)

    @classmethod
    def _from_echelon(cls, field, ambient_dim, ech: SparseEchelon) -> "Subspace":
        rows = []
        for r in ech.basis_rows():
            rows.append(tuple(r.get(c, field.zero) for c in range(ambient_dim)))
        return cls(ambient_dim, field, tuple(rows), tuple(ech.pivots()))

    @classmethod
    def zero(cls, field, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, field, (), ())

    @classmethod
    def full(cls, field, ambient_dim: int) -> "Subspace":
        rows = []
        for i in range(ambient_dim):
            row = [field.zero] * ambient_dim
            row[i] = field.one
            rows.append(tuple(row))
        return cls(ambient_dim, field, tuple(rows), tuple(range(ambient_dim)))

    @classmethod
    def coordinate_span(cls, field, ambient_dim: int, indices) -> "Subspace":
        """Span of unit vectors e_k for k in `indices` (1-based)."""
        rows = []
        for k in sorted(set(indices)):
            row = [field.zero] * ambient_dim
            row[k - 1] = field.one
            rows.append(tuple(row))
        return cls(ambient_dim, field, tuple(rows), tuple(k - 1 for k in sorted(set(indices))))

    # -- queries -----------------------------------------------------------

    @property
    def dim(self) -> int:
        return len(self.rows)

    def _echelon(self) -> SparseEchelon:
        ech = SparseEchelon(self.field)
        for p, row in zip(self.pivot_cols, self.rows):
            ech.rows[p] = {c: x for c, x in enumerate(row) if not self.field.is_zero(x)}
        return ech

    def contains_vector(self, v) -> bool:
        if len(v) != self.ambient_dim:
            raise DimensionMismatch("vector length does not match ambient dimension")
        f = self.field
        vec = {c: f.coerce(x) for c, x in enumerate(v) if not f.is_zero(x)}
        return self._echelon().contains(vec)

    def contains(self, other: "Subspace") -> bool:
        self._check_compatible(other)
        ech = self._echelon()
        return all(
            ech.contains({c: x for c, x in enumerate(row) if not self.field.is_zero(x)})
            for row in other.rows
        )

    def sum(self, other: "Subspace") -> "Subspace":
        self._check_compatible(other)
        ech = self._echelon()
        for row in other.rows:
            ech.insert({c: x for c, x in enumerate(row) if not self.field.is_zero(x)})
        return Subspace._from_echelon(self.field, self.ambient_dim, ech)

    def coordinates_of(self, v):
        """Coefficients of v in this basis; None if v is outside the span.

        Cheap because the basis is RREF: the coefficient of basis row q is
        just the v-entry at that row's pivot column.
        """
        f = self.field
        vec = {c: f.coerce(x) for c, x in enumerate(v) if not f.is_zero(x)}
        if not self._echelon().contains(vec):
            return None
        return [vec.get(p, f.zero) for p in self.pivot_cols]

    def _check_compatible(self, other):
        if self.ambient_dim != other.ambient_dim:
            raise DimensionMismatch("subspaces live in different ambient dimensions")
        if self.field != other.field:
            raise FieldMismatch("subspaces over different fields")

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.ambient_dim == other.ambient_dim
            and self.field == other.field
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.ambient_dim, self.field, self.rows))

    def __repr__(self):
        return f"Subspace(dim {self.dim} of {self.ambient_dim})"


# ---------------------------------------------------------------------------
# Lie algebras
# ---------------------------------------------------------------------------

class LieAlgebra:
    """Finite-dimensional algebra given by a sparse bracket table.

    brackets maps (i, j) with 1 <= i < j <= dim to {k: scalar} with
    1 <= k <= dim and no zero scalars.  [e_j, e_i] = -[e_i, e_j] is implied.
    """

    __slots__ = ("dim", "field", "brackets")

    def __init__(self, dim: int, field, brackets):
        if not isinstance(dim, int) or dim < 1:
            raise DimensionMismatch(f"dimension must be a positive int, got {dim!r}")
        table = {}
        for (i, j), terms in brackets.items():
            if not (1 <= i < j <= dim):
                raise DimensionMismatch(f"bad bracket pair ({i}, {j}) for dim {dim}")
            clean = {}
            for k, x in terms.items():
                if not (1 <= k <= dim):
                    raise DimensionMismatch(f"bad target index {k} for dim {dim}")
                x = field.coerce(x)
                if not field.is_zero(x):
                    clean[k] = x
            if clean:
                table[(i, j)] = dict(sorted(clean.items()))
        self.dim = dim
        self.field = field
        self.brackets = {key: table[key] for key in sorted(table)}

    def pair(self, i: int, j: int) -> dict:
        """Signed bracket [e_i, e_j] as {k: scalar}; i != j, any order."""
        if i < j:
            return self.brackets.get((i, j), {})
        if i == j:
            return {}
        f = self.field
        return {k: f.neg(x) for k, x in self.brackets.get((j, i), {}).items()}

    def __eq__(self, other):
        return (
            isinstance(other, LieAlgebra)
            and self.dim == other.dim
            and self.field == other.field
            and self.brackets == other.brackets
        )

    def __hash__(self):
        return hash(
            (
                self.dim,
                self.field,
                tuple((ij, tuple(t.items())) for ij, t in self.brackets.items()),
            )
        )

    def __repr__(self):
        return f"LieAlgebra(dim {self.dim} over {self.field!r}, {len(self.brackets)} brackets)"


def abelian(n: int, field=QQ) -> LieAlgebra:
    return LieAlgebra(n, field, {})


def bracket_sparse(L: LieAlgebra, xs: dict, ys: dict) -> dict:
    """Bracket of two sparse vectors ({index: scalar}, 1-based indices)."""
    f = L.field
    out = {}
    for i, xi in xs.items():
        if f.is_zero(xi):
            continue
        for j, yj in ys.items():
            if i == j or f.is_zero(yj):
                continue
            coef = f.mul(xi, yj)
            for k, c in L.pair(i, j).items():
                y = f.add(out.get(k, f.zero), f.mul(coef, c))
                if f.is_zero(y):
                    out.pop(k, None)
                else:
                    out[k] = y
    return out


def _to_sparse(field, v):
    return {t + 1: field.coerce(x) for t, x in enumerate(v) if not field.is_zero(x)}


def _to_dense(field, n, sparse):
    return [sparse.get(k, field.zero) for k in range(1, n + 1)]


def bracket_eval(L: LieAlgebra, x, y):
    """Bilinear antisymmetric extension of the table to dense vectors."""
    if len(x) != L.dim or len(y) != L.dim:
        raise DimensionMismatch("vector length does not match algebra dimension")
    out = bracket_sparse(L, _to_sparse(L.field, x), _to_sparse(L.field, y))
    return _to_dense(L.field, L.dim, out)


def basis_vector(L: LieAlgebra, k: int):
    v = [L.field.zero] * L.dim
    v[k - 1] = L.field.one
    return v


# ---------------------------------------------------------------------------
# Jacobi verification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class JacobiReport:
    """Violations of J(a,b,c) = [a,[b,c]] + [b,[c,a]] + [c,[a,b]] = 0.

    Each entry is ((a, b, c), residual) with the residual as a sparse
    vector; triples are in sorted order.  Empty list = the table is a Lie
    algebra.
    """

    dim: int
    violations: tuple

    @property
    def ok(self) -> bool:
        return not self.violations


def jacobi_check(L: LieAlgebra) -> JacobiReport:
    f = L.field
    violations = []
    for a in range(1, L.dim + 1):
        ea = {a: f.one}
        for b in range(a + 1, L.dim + 1):
            eb = {b: f.one}
            for c in range(b + 1, L.dim + 1):
                ec = {c: f.one}
                res = {}
                for left, pair in ((ea, (b, c)), (eb, (c, a)), (ec, (a, b))):
                    inner = L.pair(*pair)
                    for k, x in bracket_sparse(L, left, inner).items():
                        y = f.add(res.get(k, f.zero), x)
                        if f.is_zero(y):
                            res.pop(k, None)
                        else:
                            res[k] = y
                if res:
                    violations.append(((a, b, c), dict(sorted(res.items()))))
    return JacobiReport(L.dim, tuple(violations))


# ---------------------------------------------------------------------------
# series and invariants
# ---------------------------------------------------------------------------

def subspace_bracket(L: LieAlgebra, U: Subspace, V: Subspace) -> Subspace:
    """Span of all [u, v] over the two bases, in canonical echelon form."""
    if U.ambient_dim != L.dim or V.ambient_dim != L.dim:
        raise DimensionMismatch("subspace ambient dimension does not match algebra")
    f = L.field
    ech = SparseEchelon(f)
    for u in U.rows:
        us = {t + 1: x for t, x in enumerate(u) if not f.is_zero(x)}
        for v in V.rows:
            vs = {t + 1: x for t, x in enumerate(v) if not f.is_zero(x)}
            w = bracket_sparse(L, us, vs)
            if w:
                ech.insert({k - 1: x for k, x in w.items()})
    return Subspace._from_echelon(f, L.dim, ech)


def _series(L: LieAlgebra, step) -> list:
    """Common driver: iterate `step` from the full space.

    Returns [S_0, S_1, ...] where S_0 is the full space.  Stops after
    appending the first zero term, or just before the first repeat (so a
    non-terminating series ends with its stabilized nonzero value).
    """
    terms = [Subspace.full(L.field, L.dim)]
    while terms[-1].dim > 0:
        nxt = step(terms[-1])
        if nxt == terms[-1]:
            break
        terms.append(nxt)
    return terms


def lower_central_series(L: LieAlgebra) -> list:
    full = Subspace.full(L.field, L.dim)
    return _series(L, lambda prev: subspace_bracket(L, full, prev))


def derived_series(L: LieAlgebra) -> list:
    return _series(L, lambda prev: subspace_bracket(L, prev, prev))


def series_dims(terms) -> tuple:
    """Dimensions from the first proper term on (includes the final 0)."""
    return tuple(t.dim for t in terms[1:])


@dataclass(frozen=True)
class InvariantsReport:
    """Series profiles and the derived invariants of one algebra.

    Dimension sequences list the proper nonzero terms only, matching how
    bracket tables are usually tabulated; `nilpotency_class` and
    `derived_length` are None when the series stabilizes above zero.
    """

    dim: int
    lower_central_dims: tuple
    derived_dims: tuple
    nilpotency_class: Optional[int]
    derived_length: Optional[int]
    generator_count: int
    filiform: bool

    @property
    def nilpotent(self) -> bool:
        return self.nilpotency_class is not None

    @property
    def solvable(self) -> bool:
        return self.derived_length is not None


def _class_of(terms) -> Optional[int]:
    if terms[-1].dim == 0:
        return len(terms) - 1
    return None


def invariants(L: LieAlgebra) -> InvariantsReport:
    lcs = lower_central_series(L)
    der = derived_series(L)
    c = _class_of(lcs)
    d = _class_of(der)
    lc_dims = tuple(t.dim for t in lcs[1:] if t.dim > 0)
    de_dims = tuple(t.dim for t in der[1:] if t.dim > 0)
    gen = L.dim - der[1].dim if len(der) > 1 else L.dim
    return InvariantsReport(
        dim=L.dim,
        lower_central_dims=lc_dims,
        derived_dims=de_dims,
        nilpotency_class=c,
        derived_length=d,
        generator_count=gen,
        filiform=c is not None and c == L.dim - 1,
    )


def derived_layer_profile(L: LieAlgebra) -> Optional[tuple]:
    """Successive quotient dimensions of the derived series, e.g. (2,5,6,1).

    Entry i is dim g^(i-1)/g^(i); the last entry is the last nonzero term's
    dimension.  None if the algebra is not solvable.
    """
    der = derived_series(L)
    if der[-1].dim != 0:
        return None
    dims = [t.dim for t in der]
    return tuple(dims[i] - dims[i + 1] for i in range(len(dims) - 1))


def is_subalgebra(L: LieAlgebra, U: Subspace) -> bool:
    return U.contains(subspace_bracket(L, U, U))


def is_ideal(L: LieAlgebra, U: Subspace) -> bool:
    return U.contains(subspace_bracket(L, Subspace.full(L.field, L.dim), U))


def restrict_to_subalgebra(L: LieAlgebra, U: Subspace) -> LieAlgebra:
    """Structure constants of a bracket-closed subspace on its echelon basis."""
    if U.ambient_dim != L.dim:
        raise DimensionMismatch("subspace ambient dimension does not match algebra")
    f = L.field
    rows = [
        {t + 1: x for t, x in enumerate(row) if not f.is_zero(x)} for row in U.rows
    ]
    table = {}
    for r in range(len(rows)):
        for s in range(r + 1, len(rows)):
            w = bracket_sparse(L, rows[r], rows[s])
            dense = _to_dense(f, L.dim, w)
            coords = U.coordinates_of(dense)
            if coords is None:
                raise ValueError("subspace is not closed under the bracket")
            terms = {q + 1: x for q, x in enumerate(coords) if not f.is_zero(x)}
            if terms:
                table[(r + 1, s + 1)] = terms
    return LieAlgebra(U.dim, f, table)


# ---------------------------------------------------------------------------
# known dimension bounds for given derived length
# ---------------------------------------------------------------------------

# minimal dimension of a nilpotent algebra of derived length k over a
# characteristic-zero field; k=4 is only bracketed, witness has dim 14
ALPHA_KNOWN = {1: 1, 2: 3, 3: 6}
ALPHA_4_RANGE = (13, 14)
ALPHA_4_WITNESS_DIM = 14

# same for solvable algebras
BETA_KNOWN = {1: 1, 2: 2, 3: 4, 4: 7}


def bokut_lower_bound(k: int) -> int:
    """dim >= 2^(k-1) + 2k - 3 for nilpotent algebras of derived length k >= 4."""
    if k < 4:
        raise ValueError("bound only applies for derived length >= 4")
    return 2 ** (k - 1) + 2 * k - 3


def upper_bound(k: int) -> int:
    """The filiform witnesses give dim 2^k - 1 for every derived length k >= 2."""
    if k < 2:
        raise ValueError("witness family starts at derived length 2")
    return 2**k - 1
