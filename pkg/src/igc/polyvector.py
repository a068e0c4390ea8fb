"""Alternating multivector fields with wedge and Schouten bracket.

A polyvector is stored in the coordinate basis: a map from strictly
increasing index tuples (i1 < ... < ik) to Poly coefficients.  Expanding
every vector-field factor over d0..d{n-1} makes the wedge A-multilinear and
alternating by construction, so structural equality is equality.

Grading: the grade-k slice sits in cohomological degree -k+1, which makes
the Schouten bracket degree 0 and the wedge degree -1 (so the pair is not a
Gerstenhaber structure).  Koszul signs are taken with respect to the grade;
the shifted degree is bookkeeping only, exposed through `degree`.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping

from .chart_algebra import Poly, VField, render_combination, vf_bracket
from .errors import ChartMismatchError, DomainError

IndexTuple = tuple[int, ...]


def _sort_with_sign(indices: tuple[int, ...]) -> tuple[IndexTuple, int] | None:
    """Sorted index tuple and permutation sign; None when an index repeats."""
    idx = list(indices)
    sign = 1
    for i in range(1, len(idx)):
        j = i
        while j > 0 and idx[j - 1] > idx[j]:
            idx[j - 1], idx[j] = idx[j], idx[j - 1]
            sign = -sign
            j -= 1
    for a, b in zip(idx, idx[1:]):
        if a == b:
            return None
    return tuple(idx), sign


class Polyvector:
    """Sum of wedge monomials coeff * d_{i1} ^ ... ^ d_{ik}, grades k >= 1."""

    __slots__ = ("dim", "terms")

    def __init__(self, dim: int, terms: Mapping[IndexTuple, Poly] | None = None):
        clean: dict[IndexTuple, Poly] = {}
        for idx, p in (terms or {}).items():
            if p.dim != dim:
                raise ChartMismatchError("coefficient lives on a different chart")
            norm = _sort_with_sign(tuple(idx))
            if norm is None:
                continue
            key, sign = norm
            if not key:
                raise DomainError("polyvector monomials have grade >= 1")
            if any(i < 0 or i >= dim for i in key):
                raise DomainError(f"field index in {key} out of range")
            s = clean.get(key, Poly.zero(dim)) + p * sign
            if s.is_zero():
                clean.pop(key, None)
            else:
                clean[key] = s
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("Polyvector is immutable")

    @classmethod
    def zero(cls, dim: int) -> "Polyvector":
        return cls(dim, {})

    @classmethod
    def from_vfield(cls, v: VField) -> "Polyvector":
        return cls(v.dim, {(i,): v.coeffs[i] for i in range(v.dim)})

    def is_zero(self) -> bool:
        return not self.terms

    def grades(self) -> set[int]:
        return {len(idx) for idx in self.terms}

    def grade_slice(self, k: int) -> "Polyvector":
        return Polyvector(self.dim, {i: p for i, p in self.terms.items() if len(i) == k})

    def __add__(self, other):
        if not isinstance(other, Polyvector):
            return NotImplemented
        if self.dim != other.dim:
            raise ChartMismatchError("polyvectors live on different charts")
        out = dict(self.terms)
        for idx, p in other.terms.items():
            s = out.get(idx, Poly.zero(self.dim)) + p
            if s.is_zero():
                out.pop(idx, None)
            else:
                out[idx] = s
        return Polyvector(self.dim, out)

    def __sub__(self, other):
        if not isinstance(other, Polyvector):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return Polyvector(self.dim, {i: -p for i, p in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Poly)):
            return Polyvector(self.dim, {i: p * other for i, p in self.terms.items()})
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, Polyvector):
            return NotImplemented
        return self.dim == other.dim and self.terms == other.terms

    def __hash__(self):
        return hash((self.dim, tuple(sorted(self.terms.items()))))

    def __str__(self):
        order = sorted(self.terms, key=lambda i: (len(i), i))
        return render_combination(
            (self.terms[i], " ^ ".join(f"d{j}" for j in i)) for i in order
        )

    def __repr__(self):
        return f"Polyvector({self})"

    def to_json(self):
        grades: dict[str, list] = {}
        for idx in sorted(self.terms, key=lambda i: (len(i), i)):
            grades.setdefault(str(len(idx)), []).append(
                {"factors": [f"d{j}" for j in idx], "coeff": str(self.terms[idx])}
            )
        return {"grades": grades}


def wedge(p: Polyvector, q: Polyvector) -> Polyvector:
    """Alternating A-multilinear product; adds -1 in cohomological degree."""
    if p.dim != q.dim:
        raise ChartMismatchError("polyvectors live on different charts")
    out = Polyvector.zero(p.dim)
    acc: dict[IndexTuple, Poly] = {}
    for i1, c1 in p.terms.items():
        for i2, c2 in q.terms.items():
            norm = _sort_with_sign(i1 + i2)
            if norm is None:
                continue
            key, sign = norm
            s = acc.get(key, Poly.zero(p.dim)) + c1 * c2 * sign
            if s.is_zero():
                acc.pop(key, None)
            else:
                acc[key] = s
    return Polyvector(p.dim, acc)


def _monomial_factors(dim: int, idx: IndexTuple, coeff: Poly) -> list[VField]:
    """Factor list with the coefficient absorbed into the first field."""
    fields = [VField.basis(dim, i) for i in idx]
    fields[0] = fields[0] * coeff
    return fields


def schouten(p: Polyvector, q: Polyvector) -> Polyvector:
    """Schouten bracket, grade p+q-1, cohomological degree 0.

    On decomposable monomials a1^...^ap and b1^...^bq it is
    sum_{r,s} (-1)^{r+s} [a_r, b_s] ^ (a without a_r) ^ (b without b_s),
    with honest vector-field factors, so coefficient functions are handled
    by the bracket itself.
    """
    if p.dim != q.dim:
        raise ChartMismatchError("polyvectors live on different charts")
    dim = p.dim
    total = Polyvector.zero(dim)
    for i1, c1 in p.terms.items():
        fa = _monomial_factors(dim, i1, c1)
        for i2, c2 in q.terms.items():
            fb = _monomial_factors(dim, i2, c2)
            for r, ar in enumerate(fa):
                for s, bs in enumerate(fb):
                    br = vf_bracket(ar, bs)
                    if br.is_zero():
                        continue
                    term = Polyvector.from_vfield(br)
                    for rest in fa[:r] + fa[r + 1 :] + fb[:s] + fb[s + 1 :]:
                        term = wedge(term, Polyvector.from_vfield(rest))
                        if term.is_zero():
                            break
                    if (r + s) % 2:
                        term = -term
                    total = total + term
    return total


def degree(p: Polyvector) -> int:
    """Cohomological degree -k+1 of a homogeneous grade-k polyvector."""
    ks = p.grades()
    if len(ks) != 1:
        raise DomainError("degree is defined for nonzero homogeneous polyvectors only")
    return -ks.pop() + 1
