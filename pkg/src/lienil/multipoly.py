"""Sparse multivariate polynomials over Q for the filiform constraint system.

Variables are the parameter indices (k, s) of the adapted-basis model.  A
monomial is a sorted tuple of ((k, s), exponent) pairs with positive
exponents; the empty tuple is the constant monomial.  Terms are stored as a
dict monomial -> nonzero Fraction.  Canonical term order is graded
lexicographic with variables ordered by (k, s).
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


def _mono_mul(m1, m2):
    exps = dict(m1)
    for v, e in m2:
        exps[v] = exps.get(v, 0) + e
    return tuple(sorted(exps.items()))


def _mono_degree(m) -> int:
    return sum(e for _, e in m)


def _mono_key(m):
    # graded lex: higher degree first, then earlier variables with higher
    # exponents first; key sorts ascending so negate where needed
    return (-_mono_degree(m), tuple((v, -e) for v, e in m))


class MultiPoly:
    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for mono, coef in terms.items():
                coef = Fraction(coef)
                if coef != 0:
                    clean[mono] = clean.get(mono, Fraction(0)) + coef
                    if clean[mono] == 0:
                        del clean[mono]
        self.terms = clean

    # -- constructors --------------------------------------------------

    @classmethod
    def zero(cls) -> "MultiPoly":
        return cls()

    @classmethod
    def const(cls, c) -> "MultiPoly":
        return cls({(): Fraction(c)})

    @classmethod
    def variable(cls, v) -> "MultiPoly":
        return cls({((v, 1),): Fraction(1)})

    # -- ring operations -------------------------------------------------

    def __add__(self, other):
        other = _promote(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, Fraction(0)) + c
            if s == 0:
                out.pop(m, None)
            else:
                out[m] = s
        return MultiPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-_promote(other))

    def __rsub__(self, other):
        return _promote(other) + (-self)

    def __mul__(self, other):
        other = _promote(other)
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                s = out.get(m, Fraction(0)) + c1 * c2
                if s == 0:
                    out.pop(m, None)
                else:
                    out[m] = s
        return MultiPoly(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.const(other)
        return isinstance(other, MultiPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    # -- queries -----------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        if not self.terms:
            return -1
        return max(_mono_degree(m) for m in self.terms)

    def variables(self):
        vs = set()
        for m in self.terms:
            vs.update(v for v, _ in m)
        return sorted(vs)

    def constant_part(self) -> Fraction:
        return self.terms.get((), Fraction(0))

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: _mono_key(t[0]))

    def leading_coefficient(self) -> Fraction:
        if not self.terms:
            return Fraction(0)
        return self.sorted_terms()[0][1]

    # -- evaluation and substitution ---------------------------------------

    def eval(self, assignment: dict) -> Fraction:
        """Evaluate at rational values; assignment must cover all variables."""
        total = Fraction(0)
        for m, c in self.terms.items():
            v = c
            for var, e in m:
                v *= assignment[var] ** e
            total += v
        return total

    def eval_in(self, field, assignment: dict):
        """Evaluate in an arbitrary field; coefficients are mapped into it."""
        total = field.zero
        for m, c in self.terms.items():
            v = field.from_fraction(c)
            for var, e in m:
                x = field.coerce(assignment[var])
                for _ in range(e):
                    v = field.mul(v, x)
            total = field.add(total, v)
        return total

    def substitute(self, var, replacement: "MultiPoly") -> "MultiPoly":
        """Replace one variable by a polynomial."""
        out = MultiPoly.zero()
        for m, c in self.terms.items():
            factor = MultiPoly.const(c)
            for v, e in m:
                if v == var:
                    for _ in range(e):
                        factor = factor * replacement
                else:
                    factor = factor * MultiPoly({((v, e),): Fraction(1)})
            out = out + factor
        return out

    # -- normalization -------------------------------------------------

    def variable_multiplicity(self, var) -> int:
        """Largest e with var^e dividing every monomial (0 for the zero poly)."""
        if not self.terms:
            return 0
        return min(dict(m).get(var, 0) for m in self.terms)

    def divide_variable_power(self, var, e: int) -> "MultiPoly":
        if e == 0:
            return self
        out = {}
        for m, c in self.terms.items():
            exps = dict(m)
            if exps.get(var, 0) < e:
                raise ValueError(f"{var} does not divide all monomials {e} times")
            exps[var] -= e
            if exps[var] == 0:
                del exps[var]
            out[tuple(sorted(exps.items()))] = c
        return MultiPoly(out)

    def content(self) -> Fraction:
        """Positive rational content; sign chosen so the leading term is +."""
        if not self.terms:
            return Fraction(1)
        nums = 0
        dens = 1
        for c in self.terms.values():
            nums = gcd(nums, abs(c.numerator))
            dens = dens * c.denominator // gcd(dens, c.denominator)
        content = Fraction(nums, dens)
        if self.leading_coefficient() < 0:
            content = -content
        return content

    def normalized(self) -> "MultiPoly":
        """Scale to content 1 with positive leading coefficient."""
        if not self.terms:
            return self
        inv = 1 / self.content()
        return MultiPoly({m: c * inv for m, c in self.terms.items()})

    # -- rendering -----------------------------------------------------

    def __str__(self):
        return poly_str(self)

    def __repr__(self):
        return f"MultiPoly({poly_str(self)})"


def _promote(x):
    if isinstance(x, MultiPoly):
        return x
    if isinstance(x, (int, Fraction)):
        return MultiPoly.const(x)
    raise TypeError(f"cannot combine MultiPoly with {type(x).__name__}")


def _default_name(v):
    if isinstance(v, tuple) and len(v) == 2:
        return f"a[{v[0]},{v[1]}]"
    return str(v)


def poly_str(p: MultiPoly, names=None) -> str:
    if p.is_zero:
        return "0"
    name = names or _default_name
    pieces = []
    for m, c in p.sorted_terms():
        factors = []
        for v, e in m:
            factors.append(name(v) if e == 1 else f"{name(v)}^{e}")
        if not factors:
            body = str(abs(c))
        else:
            mono = "*".join(factors)
            body = mono if abs(c) == 1 else f"{abs(c)}*{mono}"
        sign = "-" if c < 0 else "+"
        pieces.append((sign, body))
    first_sign, first_body = pieces[0]
    out = ("-" if first_sign == "-" else "") + first_body
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out


def poly_to_json(p: MultiPoly) -> list:
    """Canonical JSON form: [[[var, exp], ...], "coefficient"] per term."""
    out = []
    for m, c in p.sorted_terms():
        mono = [[list(v), e] for v, e in m]
        out.append([mono, f"{c.numerator}/{c.denominator}" if c.denominator != 1 else str(c.numerator)])
    return out


def poly_from_json(data) -> MultiPoly:
    terms = {}
    for mono, coef in data:
        key = tuple(sorted((tuple(v), e) for v, e in mono))
        terms[key] = Fraction(coef)
    return MultiPoly(terms)
