"""Constructors for the named algebras used throughout, plus JSON load/save.

The JSON interchange format is the bit-exact contract shared with the CLI:

    {"field": "Q" | {"Fp": p},
     "dim": n,
     "brackets": [{"i": i, "j": j, "terms": [[k, "scalar"], ...]}, ...]}

with i < j, entries sorted by (i, j) and terms by k, scalars in the text
format of `fields`, and no zero terms.
"""

from __future__ import annotations

import json
from fractions import Fraction
from math import comb

from .core import LieAlgebra
from .errors import (
    BadDimension,
    DuplicateBracket,
    IndexOutOfRange,
    SchemaError,
)
from .fields import GF, QQ, field_from_json, field_to_json


def standard_filiform(n: int, field=QQ) -> LieAlgebra:
    """The graded filiform algebra with only [e_1, e_i] = e_{i+1}, 2 <= i <= n-1.

    n = 3 is the Heisenberg algebra.
    """
    if n < 3:
        raise BadDimension("standard filiform algebra needs dimension >= 3")
    table = {(1, i): {i + 1: field.one} for i in range(2, n)}
    return LieAlgebra(n, field, table)


def f910_coefficient(i: int, j: int) -> Fraction:
    """Closed-form bracket coefficient 6(j-i) / (j(j-1) C(j+i-2, i-2))."""
    return Fraction(6 * (j - i), j * (j - 1) * comb(j + i - 2, i - 2))


def f_nine_tenths(n: int) -> LieAlgebra:
    """The rational filiform family with [e_2, e_5] = 9/10 e_7.

    Brackets: [e_1, e_j] = e_{j+1} for 2 <= j <= n-1, and for 2 <= i < j
    with i + j <= n, [e_i, e_j] = f910_coefficient(i, j) e_{i+j}.  For
    n = 2^k - 1 the derived length is k.
    """
    if n < 3:
        raise BadDimension("family needs dimension >= 3")
    table = {(1, j): {j + 1: QQ.one} for j in range(2, n)}
    for i in range(2, n):
        for j in range(i + 1, n - i + 1):
            table[(i, j)] = {i + j: f910_coefficient(i, j)}
    return LieAlgebra(n, QQ, table)


# 14-dimensional rational nilpotent algebra with derived length 4 and
# nilpotency class 11, generated by e_1 and e_2; graded by the weights
# (1, 1, 2, 3, 4, 5, 5, 6, 7, 7, 8, 9, 10, 11)
_G14_TABLE = [
    (1, 2, 3, 1), (1, 3, 4, 1), (1, 4, 5, 1), (1, 5, 7, 1), (1, 6, 8, 1),
    (1, 8, 10, 1), (1, 9, 11, 1), (1, 11, 12, 1), (1, 12, 13, 1),
    (2, 5, 6, 1), (2, 7, 8, 2), (2, 8, 9, 2), (2, 10, 11, 1), (2, 13, 14, 1),
    (3, 4, 6, -1), (3, 5, 8, -1), (3, 6, 9, -2), (3, 7, 10, 2), (3, 8, 11, 1),
    (3, 10, 12, 1), (3, 12, 14, -1),
    (4, 5, 10, -3), (4, 6, 11, -3), (4, 10, 13, 1), (4, 11, 14, 1),
    (5, 6, 12, -3), (5, 8, 13, -1), (5, 9, 14, -1),
    (6, 7, 13, 2), (6, 8, 14, 1),
]


def g14() -> LieAlgebra:
    """The dimension-14 witness: d = 4, c = 11, layer profile (2, 5, 6, 1)."""
    table = {}
    for i, j, k, c in _G14_TABLE:
        table[(i, j)] = {k: Fraction(c)}
    return LieAlgebra(14, QQ, table)


# 12-dimensional algebra over F_2 with class 10 and derived length 4;
# in characteristic zero a table this small cannot reach derived length 4
# (the lower bound there is dimension 13), and the same table over Q is
# not even a Lie algebra
_BOKUT12_TABLE = [
    (1, 2, 4), (1, 3, 5), (1, 6, 7), (1, 8, 9), (1, 10, 11),
    (2, 5, 6), (2, 7, 8), (2, 9, 10),
    (3, 4, 6), (3, 7, 8), (3, 9, 10), (3, 11, 12),
    (4, 5, 7), (4, 6, 8), (4, 7, 9), (4, 8, 10), (4, 9, 11),
    (5, 6, 8), (5, 7, 9), (5, 8, 10), (5, 9, 11), (5, 10, 12),
    (6, 9, 12), (7, 8, 12),
]


def bokut12() -> LieAlgebra:
    F2 = GF(2)
    table = {(i, j): {k: F2.one} for i, j, k in _BOKUT12_TABLE}
    return LieAlgebra(12, F2, table)


def filiform6() -> LieAlgebra:
    """The 6-dimensional rational filiform algebra of derived length 3."""
    table = {(1, i): {i + 1: QQ.one} for i in range(2, 6)}
    table[(2, 5)] = {6: QQ.one}
    table[(3, 4)] = {6: Fraction(-1)}
    return LieAlgebra(6, QQ, table)


CATALOG = {
    "standard-filiform": standard_filiform,
    "f910": f_nine_tenths,
    "g14": g14,
    "bokut12": bokut12,
    "filiform6": filiform6,
}


# ---------------------------------------------------------------------------
# JSON interchange
# ---------------------------------------------------------------------------

def algebra_to_doc(L: LieAlgebra) -> dict:
    brackets = []
    for (i, j), terms in sorted(L.brackets.items()):
        brackets.append(
            {
                "i": i,
                "j": j,
                "terms": [[k, L.field.render(x)] for k, x in sorted(terms.items())],
            }
        )
    return {"field": field_to_json(L.field), "dim": L.dim, "brackets": brackets}


def save_json(L: LieAlgebra) -> str:
    return json.dumps(algebra_to_doc(L), indent=2) + "\n"


def algebra_from_doc(doc) -> LieAlgebra:
    if not isinstance(doc, dict):
        raise SchemaError("algebra document must be a JSON object")
    extra = set(doc) - {"field", "dim", "brackets"}
    if extra:
        raise SchemaError(f"unknown keys {sorted(extra)}")
    try:
        field = field_from_json(doc["field"])
    except KeyError:
        raise SchemaError("missing 'field'") from None
    except ValueError as e:
        raise SchemaError(str(e)) from None
    n = doc.get("dim")
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise SchemaError(f"bad 'dim': {n!r}")
    entries = doc.get("brackets")
    if not isinstance(entries, list):
        raise SchemaError("'brackets' must be a list")
    table = {}
    for entry in entries:
        if not isinstance(entry, dict) or set(entry) != {"i", "j", "terms"}:
            raise SchemaError(f"bad bracket entry: {entry!r}")
        i, j = entry["i"], entry["j"]
        for x in (i, j):
            if not isinstance(x, int) or isinstance(x, bool):
                raise SchemaError(f"bracket indices must be ints: {entry!r}")
        if not (1 <= i < j <= n):
            raise IndexOutOfRange(f"bracket pair ({i}, {j}) violates 1 <= i < j <= {n}")
        if (i, j) in table:
            raise DuplicateBracket(f"pair ({i}, {j}) listed twice")
        terms = {}
        if not isinstance(entry["terms"], list):
            raise SchemaError(f"'terms' must be a list in {entry!r}")
        for item in entry["terms"]:
            if not (isinstance(item, list) and len(item) == 2):
                raise SchemaError(f"bad term {item!r}")
            k, text = item
            if not isinstance(k, int) or isinstance(k, bool):
                raise SchemaError(f"term index must be an int: {item!r}")
            if not (1 <= k <= n):
                raise IndexOutOfRange(f"term index {k} outside [1, {n}]")
            if k in terms:
                raise DuplicateBracket(f"target {k} listed twice for pair ({i}, {j})")
            x = field.parse(text)
            if field.is_zero(x):
                raise SchemaError(f"zero coefficient stored for pair ({i}, {j})")
            terms[k] = x
        if terms:
            table[(i, j)] = terms
    return LieAlgebra(n, field, table)


def load_json(text: str) -> LieAlgebra:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaError(f"invalid JSON: {e}") from None
    return algebra_from_doc(doc)
