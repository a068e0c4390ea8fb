"""Free and relatively free Lie-Rinehart algebras over the chart ring.

Elements are A-linear combinations of standard bracketings of Lyndon words
in the coordinate generators d0..d{n-1}, where A = Q[x0..x{n-1}].  Two Lie
structures live here:

* the free bracket `free_bracket` -- bilinear over constants, with the
  Leibniz corrections  [x, f*y] - [f*x, y] = x(f)*y + y(f)*x  through the
  anchor, and bare monomials multiplied in the free Lie algebra;
* the extended classical bracket `lie_bracket_ext` -- the coordinate bracket
  on degree-1 elements, pushed through free-bracket monomials as a
  derivation:  [x, F[y,z]] = F[[x,y], z] + F[y, [x,z]].

A `RelativeSpec` marks a subset of generators as vertical (tangent to the
fibers of a projection).  In the relative algebra every bracket monomial of
length >= 2 that touches a vertical generator collapses:  [g, x] for
vertical g rewrites to the classical action of g on x, which vanishes on
bare coordinate generators, so only the Leibniz terms survive.  Making all
generators vertical collapses the algebra onto classical vector fields;
making none keeps it fully free.

Degrees are truncated at the chart's max_degree: a bracket whose result
would contain a longer surviving word raises DegreeOverflowError.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from . import lyndon
from .chart_algebra import ChartSpec, Poly, VField, render_combination
from .errors import ChartMismatchError, DegreeOverflowError, DomainError

Word = tuple[int, ...]


class LyndonWord:
    """An aperiodic word minimal among its rotations; basis label for monomials."""

    __slots__ = ("letters",)

    def __init__(self, letters: Sequence[int]):
        letters = tuple(int(a) for a in letters)
        if not lyndon.is_lyndon(letters):
            raise DomainError(f"{letters} is not a Lyndon word")
        object.__setattr__(self, "letters", letters)

    def __setattr__(self, name, value):
        raise AttributeError("LyndonWord is immutable")

    def __len__(self):
        return len(self.letters)

    def __eq__(self, other):
        return isinstance(other, LyndonWord) and self.letters == other.letters

    def __hash__(self):
        return hash(self.letters)

    def __lt__(self, other):
        # display order: short words first, then lexicographic
        return (len(self.letters), self.letters) < (len(other.letters), other.letters)

    def __repr__(self):
        return f"LyndonWord{self.letters}"


@dataclass(frozen=True)
class RelativeSpec:
    """Chart plus the set of generator indices tangent to the fibers."""

    chart: ChartSpec
    vertical: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "vertical", frozenset(self.vertical))
        if any(i < 0 or i >= self.chart.dim for i in self.vertical):
            raise DomainError("vertical index out of range for the chart")


class FreeLRElem:
    """A-combination of Lyndon bracket monomials: sum f_w * b(w)."""

    __slots__ = ("chart", "terms")

    def __init__(self, chart: ChartSpec, terms: Mapping[LyndonWord, Poly] | None = None):
        clean: dict[LyndonWord, Poly] = {}
        for w, p in (terms or {}).items():
            if not isinstance(w, LyndonWord):
                w = LyndonWord(w)
            if p.dim != chart.dim:
                raise ChartMismatchError("coefficient lives on a different chart")
            if len(w) > chart.max_degree:
                raise DegreeOverflowError(len(w), chart.max_degree)
            if any(a >= chart.dim for a in w.letters):
                raise DomainError(f"generator index in {w.letters} out of range")
            if not p.is_zero():
                clean[w] = p
        object.__setattr__(self, "chart", chart)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("FreeLRElem is immutable")

    @classmethod
    def zero(cls, chart: ChartSpec) -> "FreeLRElem":
        return cls(chart)

    @classmethod
    def generator(cls, chart: ChartSpec, i: int) -> "FreeLRElem":
        return cls(chart, {LyndonWord((i,)): Poly.const(chart.dim, 1)})

    @classmethod
    def from_vfield(cls, chart: ChartSpec, v: VField) -> "FreeLRElem":
        if v.dim != chart.dim:
            raise ChartMismatchError("field lives on a different chart")
        return cls(chart, {LyndonWord((i,)): v.coeffs[i] for i in range(v.dim)})

    def is_zero(self) -> bool:
        return not self.terms

    def is_classical(self) -> bool:
        """True when only length-1 words occur, i.e. the element is a vector field."""
        return all(len(w) == 1 for w in self.terms)

    def max_length(self) -> int:
        return max((len(w) for w in self.terms), default=0)

    def __add__(self, other):
        if not isinstance(other, FreeLRElem):
            return NotImplemented
        _check_chart(self, other)
        out = dict(self.terms)
        for w, p in other.terms.items():
            s = out.get(w, Poly.zero(self.chart.dim)) + p
            if s.is_zero():
                out.pop(w, None)
            else:
                out[w] = s
        return FreeLRElem(self.chart, out)

    def __sub__(self, other):
        if not isinstance(other, FreeLRElem):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return FreeLRElem(self.chart, {w: -p for w, p in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Poly)):
            return FreeLRElem(self.chart, {w: p * other for w, p in self.terms.items()})
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, FreeLRElem):
            return NotImplemented
        return self.chart == other.chart and self.terms == other.terms

    def __hash__(self):
        return hash((self.chart, tuple(sorted(self.terms.items(), key=lambda t: t[0].letters))))

    @staticmethod
    def _word_str(word: Word) -> str:
        if len(word) == 1:
            return f"d{word[0]}"
        u, v = lyndon.standard_factorization(word)
        return f"F[{FreeLRElem._word_str(u)},{FreeLRElem._word_str(v)}]"

    def __str__(self):
        # long monomials first, then lexicographic, matching F[..] nesting depth
        order = sorted(self.terms, key=lambda w: (-len(w), w.letters))
        return render_combination((self.terms[w], self._word_str(w.letters)) for w in order)

    def __repr__(self):
        return f"FreeLRElem({self})"

    def to_json(self):
        order = sorted(self.terms, key=lambda w: (len(w), w.letters))
        return [{"word": list(w.letters), "coeff": str(self.terms[w])} for w in order]


def _check_chart(u: FreeLRElem, v: FreeLRElem):
    if u.chart != v.chart:
        raise ChartMismatchError("elements live on different charts")


def lyndon_basis(n: int, d: int) -> list[LyndonWord]:
    """All Lyndon words of length d over n generators, sorted."""
    if n < 1 or d < 1:
        raise DomainError("alphabet size and length must be >= 1")
    return [LyndonWord(w) for w in lyndon.lyndon_words(n, d)]


def _drop_vertical(elem: FreeLRElem, vertical: frozenset[int]) -> FreeLRElem:
    """Normal form in the relative algebra: kill long words touching a vertical index."""
    if not vertical:
        return elem
    kept = {
        w: p
        for w, p in elem.terms.items()
        if len(w) == 1 or not (set(w.letters) & vertical)
    }
    if len(kept) == len(elem.terms):
        return elem
    return FreeLRElem(elem.chart, kept)


def anchor_apply(u: FreeLRElem, f: Poly) -> Poly:
    """Action of u on the chart ring through the anchor.

    Monomials act as nested commutators of the coordinate derivations, which
    commute, so only the degree-1 part contributes.
    """
    if f.dim != u.chart.dim:
        raise ChartMismatchError("polynomial lives on a different chart")
    out = Poly.zero(f.dim)
    for w, p in u.terms.items():
        if len(w) == 1:
            out = out + p * f.derive(w.letters[0])
    return out


def project_to_lie(u: FreeLRElem) -> VField:
    """Evaluate every bracket monomial as a classical nested bracket.

    Coordinate generators commute, so all words of length >= 2 evaluate to
    zero and the projection keeps exactly the degree-1 part.
    """
    coeffs = [Poly.zero(u.chart.dim) for _ in range(u.chart.dim)]
    for w, p in u.terms.items():
        if len(w) == 1:
            coeffs[w.letters[0]] = coeffs[w.letters[0]] + p
    return VField(coeffs)


def free_bracket(u: FreeLRElem, v: FreeLRElem, spec: RelativeSpec | None = None) -> FreeLRElem:
    """The free Lie-Rinehart bracket of u and v, in Lyndon normal form.

    Expands  [f*b(w), g*b(w')] = f*g*[b(w),b(w')] + f*w(g)*b(w') - g*w'(f)*b(w)
    with the bare monomial bracket rewritten into the Lyndon basis, then
    reduces vertical monomials when a RelativeSpec is given.
    """
    _check_chart(u, v)
    chart = u.chart
    vertical = spec.vertical if spec else frozenset()
    if spec and spec.chart != chart:
        raise ChartMismatchError("relative spec is for a different chart")
    u = _drop_vertical(u, vertical)
    v = _drop_vertical(v, vertical)

    acc: dict[Word, Poly] = {}

    def add(word: Word, p: Poly):
        if p.is_zero():
            return
        s = acc.get(word, Poly.zero(chart.dim)) + p
        if s.is_zero():
            acc.pop(word, None)
        else:
            acc[word] = s

    for w1, f in u.terms.items():
        for w2, g in v.terms.items():
            letters1, letters2 = w1.letters, w2.letters
            # bare monomial bracket; in the relative algebra any long word
            # containing a vertical letter is zero, so skip those wholesale
            if not (set(letters1) | set(letters2)) & vertical:
                fg = f * g
                if not fg.is_zero():
                    for word, c in lyndon.monomial_bracket(letters1, letters2).items():
                        if len(word) > chart.max_degree:
                            raise DegreeOverflowError(len(word), chart.max_degree)
                        add(word, fg * c)
            # Leibniz corrections through the anchor
            if len(letters1) == 1:
                add(letters2, f * g.derive(letters1[0]))
            if len(letters2) == 1:
                add(letters1, -(g * f.derive(letters2[0])))

    return FreeLRElem(chart, {LyndonWord(w): p for w, p in acc.items()})


def lie_bracket_ext(u: FreeLRElem, v: FreeLRElem) -> FreeLRElem:
    """The second Lie structure on the fully free algebra.

    Degree-1 against degree-1 is the classical coordinate bracket; against a
    free monomial F[y,z] the first argument acts as a derivation; a long
    first argument against a degree-1 second is lowered by antisymmetry.
    """
    _check_chart(u, v)
    out = FreeLRElem.zero(u.chart)
    for w1, f in u.terms.items():
        for w2, g in v.terms.items():
            out = out + _lie_term(u.chart, f, w1.letters, g, w2.letters)
    return out


def _lie_term(chart: ChartSpec, f: Poly, w1: Word, g: Poly, w2: Word) -> FreeLRElem:
    if len(w2) >= 2:
        # [x, g*m] = g*[x,m] + x(g)*m  with m = F[b(a), b(b)] expanded as a
        # derivation of the free bracket
        a, b = lyndon.standard_factorization(w2)
        one = Poly.const(chart.dim, 1)
        elem_a = FreeLRElem(chart, {LyndonWord(a): one})
        elem_b = FreeLRElem(chart, {LyndonWord(b): one})
        inner_a = _lie_term(chart, f, w1, one, a)
        inner_b = _lie_term(chart, f, w1, one, b)
        part = free_bracket(inner_a, elem_b) + free_bracket(elem_a, inner_b)
        part = part * g
        if len(w1) == 1:
            part = part + FreeLRElem(chart, {LyndonWord(w2): f * g.derive(w1[0])})
        return part
    if len(w1) == 1:
        # classical coordinate bracket of f*d_i and g*d_j
        i, j = w1[0], w2[0]
        out: dict[LyndonWord, Poly] = {}
        p = f * g.derive(i)
        if not p.is_zero():
            out[LyndonWord(w2)] = p
        q = g * f.derive(j)
        wi = LyndonWord(w1)
        out[wi] = out.get(wi, Poly.zero(chart.dim)) - q
        return FreeLRElem(chart, out)
    return -_lie_term(chart, g, w2, f, w1)


def vertical_reduce(expr, spec: RelativeSpec) -> FreeLRElem:
    """Normal form of a raw bracket expression in the relative algebra.

    The expression is either a FreeLRElem or a nested tuple built from
    ("gen", i), ("scale", poly, e), ("add", e1, e2) and ("bracket", e1, e2).
    The result carries length >= 2 monomials on horizontal generators only;
    applying the function twice gives the same answer.
    """
    chart = spec.chart
    if isinstance(expr, FreeLRElem):
        return _drop_vertical(expr, spec.vertical)
    if isinstance(expr, VField):
        return FreeLRElem.from_vfield(chart, expr)
    if not isinstance(expr, tuple) or not expr:
        raise DomainError(f"unrecognized expression node: {expr!r}")
    tag = expr[0]
    if tag == "gen":
        return FreeLRElem.generator(chart, expr[1])
    if tag == "scale":
        return vertical_reduce(expr[2], spec) * expr[1]
    if tag == "add":
        return vertical_reduce(expr[1], spec) + vertical_reduce(expr[2], spec)
    if tag == "bracket":
        return free_bracket(vertical_reduce(expr[1], spec), vertical_reduce(expr[2], spec), spec)
    raise DomainError(f"unrecognized expression node: {tag!r}")
