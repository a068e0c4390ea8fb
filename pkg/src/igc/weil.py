"""Weil algebras with square-zero generators and the k-field dictionary.

W_k is spanned by products of e_0..e_{k-1} with e_i^2 = 0 over the chart
ring, so elements are maps from subsets of {0..k-1} to Poly and products
convolve over disjoint subsets.  A point/field of the k-th iterated tangent
bundle is the same thing as a unital multiplicative map from the chart ring
into W_k tensor the chart ring whose empty part is the identity; such a
morphism is pinned down by its values on the coordinates x_i.

`kfield_to_weil` encodes a classical subset-indexed field as the morphism
whose phi part applies, for every splitting of phi into disjoint blocks
taken in decreasing subset-lex order, the corresponding composite of the
block fields.  `weil_to_kfield` inverts this by induction on subset size.

The partial cup product against a factor through V_m (all pairwise
generator products zero) is `weil_cup`: the m derivations enter multiplied
by the image of the V_m generators shifted past the first block times the
full first-block monomial e_0...e_{k-1}.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Callable, Mapping, Sequence

from .chart_algebra import ChartSpec, Poly, VField, vf_apply
from .errors import (
    ArityMismatchError,
    ChartMismatchError,
    DomainError,
    NotMultiplicativeError,
)
from .free_lr import project_to_lie
from .groupoid import KField

Subset = frozenset[int]


def _subset_key(s: Subset) -> tuple[int, ...]:
    return tuple(sorted(s))


class WeilElem:
    """Element of W_k over the chart ring: map from subsets to Poly parts."""

    __slots__ = ("arity", "dim", "parts")

    def __init__(self, arity: int, dim: int, parts: Mapping[Subset, Poly] | None = None):
        if arity < 0:
            raise DomainError("arity must be >= 0")
        clean: dict[Subset, Poly] = {}
        for phi, p in (parts or {}).items():
            phi = frozenset(phi)
            if any(i < 0 or i >= arity for i in phi):
                raise DomainError(f"generator index in {sorted(phi)} out of range for arity {arity}")
            if p.dim != dim:
                raise ChartMismatchError("part lives on a different chart")
            if not p.is_zero():
                clean[phi] = p
        object.__setattr__(self, "arity", arity)
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "parts", clean)

    def __setattr__(self, name, value):
        raise AttributeError("WeilElem is immutable")

    @classmethod
    def zero(cls, arity: int, dim: int) -> "WeilElem":
        return cls(arity, dim, {})

    @classmethod
    def unit(cls, arity: int, dim: int) -> "WeilElem":
        return cls(arity, dim, {frozenset(): Poly.const(dim, 1)})

    @classmethod
    def generator(cls, arity: int, dim: int, i: int) -> "WeilElem":
        return cls(arity, dim, {frozenset({i}): Poly.const(dim, 1)})

    @classmethod
    def scalar(cls, arity: int, p: Poly) -> "WeilElem":
        return cls(arity, p.dim, {frozenset(): p})

    def part(self, phi) -> Poly:
        return self.parts.get(frozenset(phi), Poly.zero(self.dim))

    def is_zero(self) -> bool:
        return not self.parts

    def __add__(self, other):
        if not isinstance(other, WeilElem):
            return NotImplemented
        self._check(other)
        out = dict(self.parts)
        for phi, p in other.parts.items():
            s = out.get(phi, Poly.zero(self.dim)) + p
            if s.is_zero():
                out.pop(phi, None)
            else:
                out[phi] = s
        return WeilElem(self.arity, self.dim, out)

    def __sub__(self, other):
        if not isinstance(other, WeilElem):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return WeilElem(self.arity, self.dim, {phi: -p for phi, p in self.parts.items()})

    def _check(self, other):
        if self.arity != other.arity:
            raise ArityMismatchError(f"arities differ: {self.arity} vs {other.arity}")
        if self.dim != other.dim:
            raise ChartMismatchError("elements live on different charts")

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Poly)):
            return WeilElem(self.arity, self.dim, {phi: p * other for phi, p in self.parts.items()})
        if not isinstance(other, WeilElem):
            return NotImplemented
        self._check(other)
        out: dict[Subset, Poly] = {}
        for phi, p in self.parts.items():
            for psi, q in other.parts.items():
                if phi & psi:
                    continue
                key = phi | psi
                s = out.get(key, Poly.zero(self.dim)) + p * q
                if s.is_zero():
                    out.pop(key, None)
                else:
                    out[key] = s
        return WeilElem(self.arity, self.dim, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise DomainError("Weil exponent must be a nonnegative integer")
        result = WeilElem.unit(self.arity, self.dim)
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other):
        if not isinstance(other, WeilElem):
            return NotImplemented
        return self.arity == other.arity and self.dim == other.dim and self.parts == other.parts

    def __hash__(self):
        return hash((self.arity, self.dim, tuple(sorted(self.parts.items(), key=lambda t: _subset_key(t[0])))))

    def set_generator_zero(self, i: int) -> "WeilElem":
        """Quotient by e_i = 0: drop subsets containing i and reindex the rest."""
        if not 0 <= i < self.arity:
            raise DomainError(f"generator index {i} out of range")
        remaining = [x for x in range(self.arity) if x != i]
        reindex = {old: new for new, old in enumerate(remaining)}
        return WeilElem(
            self.arity - 1,
            self.dim,
            {
                frozenset(reindex[x] for x in phi): p
                for phi, p in self.parts.items()
                if i not in phi
            },
        )

    def shift(self, offset: int, new_arity: int) -> "WeilElem":
        """Reindex every generator i to i + offset inside a larger algebra."""
        return WeilElem(
            new_arity,
            self.dim,
            {frozenset(x + offset for x in phi): p for phi, p in self.parts.items()},
        )

    def lift(self, new_arity: int) -> "WeilElem":
        return self.shift(0, new_arity)

    def __str__(self):
        if not self.parts:
            return "0"
        chunks = []
        for phi in sorted(self.parts, key=lambda s: (len(s), _subset_key(s))):
            mono = "".join(f"e{i}" for i in sorted(phi)) or "1"
            chunks.append(f"({self.parts[phi]})*{mono}" if phi else f"({self.parts[phi]})")
        return " + ".join(chunks)

    def __repr__(self):
        return f"WeilElem({self})"

    def to_json(self):
        return {
            ",".join(map(str, sorted(phi))): str(p)
            for phi, p in sorted(self.parts.items(), key=lambda t: (len(t[0]), _subset_key(t[0])))
        }


def weil_mul(a: WeilElem, b: WeilElem) -> WeilElem:
    """Product in W_k: convolution over disjoint subsets (e_i^2 = 0)."""
    return a * b


def _set_partitions(items: tuple[int, ...]):
    """All partitions of items into nonempty blocks (as tuples of frozensets)."""
    if not items:
        yield ()
        return
    first, rest = items[0], items[1:]
    for sub in _set_partitions(rest):
        for idx in range(len(sub)):
            yield sub[:idx] + (sub[idx] | {first},) + sub[idx + 1 :]
        yield sub + (frozenset({first}),)


def subset_operator_apply(fields: Mapping[Subset, VField], phi: Subset, f: Poly) -> Poly:
    """Order-|phi| part of the morphism attached to a classical field.

    Sums over partitions of phi; each partition contributes the composite of
    its block fields applied smallest block first (blocks compared
    subset-lexicographically).
    """
    total = Poly.zero(f.dim)
    for blocks in _set_partitions(tuple(sorted(phi))):
        if any(b not in fields for b in blocks):
            continue
        value = f
        for b in sorted(blocks, key=_subset_key):
            value = vf_apply(fields[b], value)
            if value.is_zero():
                break
        total = total + value
    return total


class WeilMorphism:
    """Unital multiplicative map from the chart ring into W_k over itself.

    Stored by the images of the coordinates; the image of any polynomial is
    the multiplicative extension.  A raw callable may be attached instead,
    in which case nothing guarantees multiplicativity -- `weil_to_kfield`
    probes for it and reports a witness on failure.
    """

    __slots__ = ("arity", "dim", "coord_images", "raw")

    def __init__(
        self,
        arity: int,
        dim: int,
        coord_images: Sequence[WeilElem],
        raw: Callable[[Poly], WeilElem] | None = None,
    ):
        coord_images = tuple(coord_images)
        if len(coord_images) != dim:
            raise DomainError("need one coordinate image per chart dimension")
        for i, w in enumerate(coord_images):
            if w.arity != arity or w.dim != dim:
                raise ArityMismatchError("coordinate image in the wrong Weil algebra")
            if raw is None and w.part(frozenset()) != Poly.var(dim, i):
                raise DomainError(f"empty part of image({'x%d' % i}) must be x{i}")
        object.__setattr__(self, "arity", arity)
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "coord_images", coord_images)
        object.__setattr__(self, "raw", raw)

    def __setattr__(self, name, value):
        raise AttributeError("WeilMorphism is immutable")

    @classmethod
    def from_callable(cls, arity: int, dim: int, fn: Callable[[Poly], WeilElem]) -> "WeilMorphism":
        images = [fn(Poly.var(dim, i)) for i in range(dim)]
        return cls(arity, dim, images, raw=fn)

    def image(self, f: Poly) -> WeilElem:
        if f.dim != self.dim:
            raise ChartMismatchError("polynomial lives on a different chart")
        if self.raw is not None:
            return self.raw(f)
        out = WeilElem.zero(self.arity, self.dim)
        for exps, c in f.terms.items():
            term = WeilElem.scalar(self.arity, Poly.const(self.dim, c))
            for i, e in enumerate(exps):
                if e:
                    term = term * self.coord_images[i] ** e
            out = out + term
        return out

    def restrict(self, i: int) -> "WeilMorphism":
        """Set generator e_i to zero, landing one arity down."""
        return WeilMorphism(
            self.arity - 1,
            self.dim,
            [w.set_generator_zero(i) for w in self.coord_images],
        )

    def __eq__(self, other):
        if not isinstance(other, WeilMorphism):
            return NotImplemented
        return (
            self.arity == other.arity
            and self.dim == other.dim
            and self.coord_images == other.coord_images
        )

    def __repr__(self):
        imgs = ", ".join(f"x{i} -> {w}" for i, w in enumerate(self.coord_images))
        return f"WeilMorphism({imgs})"


class CupFactorization:
    """Images of the V_m generators inside W_m, all pairwise products zero."""

    __slots__ = ("arity", "dim", "images")

    def __init__(self, arity: int, dim: int, images: Sequence[WeilElem]):
        images = tuple(images)
        if len(images) != arity:
            raise DomainError("need one image per V generator")
        for w in images:
            if w.arity != arity or w.dim != dim:
                raise ArityMismatchError("factorization image in the wrong Weil algebra")
        for a in images:
            for b in images:
                if not (a * b).is_zero():
                    raise DomainError(
                        "invalid factorization: generator images must have all pairwise products zero"
                    )
        object.__setattr__(self, "arity", arity)
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "images", images)

    def __setattr__(self, name, value):
        raise AttributeError("CupFactorization is immutable")

    @classmethod
    def canonical(cls, dim: int) -> "CupFactorization":
        """The coordinate embedding, available at arity 1 where it is valid."""
        return cls(1, dim, [WeilElem.generator(1, dim, 0)])


def kfield_to_weil(nu: KField) -> WeilMorphism:
    """Morphism form of a classical subset-indexed field."""
    if not nu.is_classical():
        raise DomainError("kfield_to_weil needs a classical field")
    k, dim = nu.arity, nu.chart.dim
    fields = {phi: project_to_lie(elem) for phi, elem in nu.components.items()}
    images = []
    for i in range(dim):
        xi = Poly.var(dim, i)
        parts: dict[Subset, Poly] = {frozenset(): xi}
        for size in range(1, k + 1):
            for phi in combinations(range(k), size):
                val = subset_operator_apply(fields, frozenset(phi), xi)
                if not val.is_zero():
                    parts[frozenset(phi)] = val
        images.append(WeilElem(k, dim, parts))
    return WeilMorphism(k, dim, images)


def weil_to_kfield(w: WeilMorphism, chart: ChartSpec | None = None) -> KField:
    """Recover the subset-indexed decomposition of a morphism.

    Components are extracted by induction on subset size, peeling composite
    terms off the stored parts.  The morphism is then probed for
    multiplicativity on low-degree monomial pairs; a failing pair is raised
    as a NotMultiplicativeError witness.
    """
    k, dim = w.arity, w.dim
    chart = chart or ChartSpec(dim, max_degree=max(2, k))
    coord_parts = [w.image(Poly.var(dim, i)) for i in range(dim)]
    for i, elem in enumerate(coord_parts):
        if elem.part(frozenset()) != Poly.var(dim, i):
            raise NotMultiplicativeError(Poly.const(dim, 1), Poly.var(dim, i))
    fields: dict[Subset, VField] = {}
    for size in range(1, k + 1):
        for phi_t in combinations(range(k), size):
            phi = frozenset(phi_t)
            coeffs = []
            for i in range(dim):
                val = coord_parts[i].part(phi)
                composite = Poly.zero(dim)
                for blocks in _set_partitions(phi_t):
                    if len(blocks) < 2:
                        continue
                    if any(b not in fields for b in blocks):
                        continue
                    part_val = Poly.var(dim, i)
                    for b in sorted(blocks, key=_subset_key):
                        part_val = vf_apply(fields[b], part_val)
                    composite = composite + part_val
                coeffs.append(val - composite)
            field = VField(coeffs)
            if not field.is_zero():
                fields[phi] = field
    _probe_multiplicative(w)
    return KField.from_vfields(chart, k, fields)


def _probe_multiplicative(w: WeilMorphism):
    """Check image(f*g) = image(f)*image(g) on monomials up to order arity+1."""
    dim, k = w.dim, w.arity
    monos = [Poly.var(dim, i) for i in range(dim)]
    quadratic = [monos[i] * monos[j] for i in range(dim) for j in range(i, dim)]
    probes = monos + quadratic
    for f in probes:
        for g in probes:
            if f.total_degree() + g.total_degree() > k + 1:
                continue
            if w.image(f * g) != w.image(f) * w.image(g):
                raise NotMultiplicativeError(f, g)


def weil_cup(x: WeilMorphism, fact: CupFactorization, derivations: Sequence[VField]) -> WeilMorphism:
    """Cup product of x with a factor through V_m given by m derivations.

    The result sends f to the lift of x(f) plus, for each j, the shifted
    factorization image of the j-th V generator times e_0...e_{k-1} times
    derivations[j](f).
    """
    if fact.dim != x.dim:
        raise ChartMismatchError("factorization lives on a different chart")
    m = fact.arity
    if len(derivations) != m:
        raise DomainError("need one derivation per V generator")
    for beta in derivations:
        if beta.dim != x.dim:
            raise ChartMismatchError("derivation lives on a different chart")
    k = x.arity
    total = k + m
    first_block = WeilElem(total, x.dim, {frozenset(range(k)): Poly.const(x.dim, 1)})
    multipliers = [fact.images[j].shift(k, total) * first_block for j in range(m)]
    images = []
    for i in range(x.dim):
        xi = Poly.var(x.dim, i)
        img = x.image(xi).lift(total)
        for j, beta in enumerate(derivations):
            img = img + multipliers[j] * vf_apply(beta, xi)
        images.append(img)
    return WeilMorphism(total, x.dim, images)
