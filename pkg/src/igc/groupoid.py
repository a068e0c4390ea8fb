"""Subset-indexed k-fields and the operations tying them together.

A k-field is a family of elements of the free Lie-Rinehart algebra indexed
by nonempty subsets of {0..k-1}; a missing subset means a zero component,
and a field whose components are all degree-1 is called classical.  The
module implements faces, additions over a shared face, strong differences,
cup and composition products, the two symmetric-group actions (free-bracket
flavored and classical-bracket flavored), the homotopy maps obtained as
their strong difference, the trivial-homotopy test, and the reduction of
homotopy-trivial fields to decomposable polyvectors.

Subsets are ordered subset-lexicographically: compare the increasingly
sorted index sequences lexicographically.  The swap action on a field, for
a permutation s fixing a subset phi, corrects the phi component by the sum
of brackets [a_{phi'}, a_{phi''}] over disjoint decompositions
phi = phi' | phi'' with phi' < phi'' and s(phi') > s(phi'').  For adjacent
transpositions this is folded over a word; homotopies use the same formula
instantiated directly on the transposition (i j), which is what keeps both
flavors equal outside components containing {i, j}.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations
from typing import Callable, Mapping, Sequence

from .chart_algebra import ChartSpec, VField
from .errors import (
    ArityMismatchError,
    ChartMismatchError,
    CupUndefinedError,
    DomainError,
    FacePreconditionError,
    NotClosedError,
    NotFlagReducibleError,
)
from .free_lr import FreeLRElem, free_bracket, lie_bracket_ext, project_to_lie
from .polyvector import Polyvector, wedge

Subset = frozenset[int]


@dataclass(frozen=True)
class Transposition:
    """The swap of two slot indices i < j."""

    i: int
    j: int

    def __post_init__(self):
        if not 0 <= self.i < self.j:
            raise DomainError(f"need 0 <= i < j, got ({self.i}, {self.j})")

    def apply(self, x: int) -> int:
        if x == self.i:
            return self.j
        if x == self.j:
            return self.i
        return x


def _subset_key(s: Subset) -> tuple[int, ...]:
    return tuple(sorted(s))


class KField:
    """Arity-k field: map from nonempty subsets of {0..k-1} to FreeLRElem."""

    __slots__ = ("chart", "arity", "components")

    def __init__(self, chart: ChartSpec, arity: int, components: Mapping[Subset, FreeLRElem] | None = None):
        if arity < 1:
            raise DomainError(f"arity must be >= 1, got {arity}")
        clean: dict[Subset, FreeLRElem] = {}
        for phi, elem in (components or {}).items():
            phi = frozenset(phi)
            if not phi or any(i < 0 or i >= arity for i in phi):
                raise DomainError(f"component index set {sorted(phi)} out of range for arity {arity}")
            if elem.chart != chart:
                raise ChartMismatchError("component lives on a different chart")
            if not elem.is_zero():
                clean[phi] = elem
        object.__setattr__(self, "chart", chart)
        object.__setattr__(self, "arity", arity)
        object.__setattr__(self, "components", clean)

    def __setattr__(self, name, value):
        raise AttributeError("KField is immutable")

    @classmethod
    def zero(cls, chart: ChartSpec, arity: int) -> "KField":
        return cls(chart, arity, {})

    @classmethod
    def from_vfields(cls, chart: ChartSpec, arity: int, components: Mapping[Subset, VField]) -> "KField":
        return cls(
            chart,
            arity,
            {phi: FreeLRElem.from_vfield(chart, v) for phi, v in components.items()},
        )

    def component(self, phi) -> FreeLRElem:
        return self.components.get(frozenset(phi), FreeLRElem.zero(self.chart))

    def support(self) -> set[Subset]:
        return set(self.components)

    def is_zero(self) -> bool:
        return not self.components

    @property
    def flavor(self) -> str:
        return "classical" if all(e.is_classical() for e in self.components.values()) else "free"

    def is_classical(self) -> bool:
        return self.flavor == "classical"

    def component_vfield(self, phi) -> VField:
        elem = self.component(phi)
        if not elem.is_classical():
            raise DomainError(f"component {sorted(frozenset(phi))} is not classical")
        return project_to_lie(elem)

    def __eq__(self, other):
        if not isinstance(other, KField):
            return NotImplemented
        return (
            self.chart == other.chart
            and self.arity == other.arity
            and self.components == other.components
        )

    def __hash__(self):
        items = tuple(sorted(self.components.items(), key=lambda t: _subset_key(t[0])))
        return hash((self.chart, self.arity, items))

    def __str__(self):
        parts = [f"arity={self.arity}"]
        for phi in sorted(self.components, key=_subset_key):
            parts.append(f"{','.join(map(str, sorted(phi)))}: {self.components[phi]}")
        return "K{" + "; ".join(parts) + "}"

    def __repr__(self):
        return f"KField({self})"

    def to_json(self):
        return {
            "arity": self.arity,
            "flavor": self.flavor,
            "components": {
                ",".join(map(str, sorted(phi))): self.components[phi].to_json()
                for phi in sorted(self.components, key=_subset_key)
            },
        }


def _check_compatible(mu: KField, nu: KField):
    if mu.chart != nu.chart:
        raise ChartMismatchError("fields live on different charts")
    if mu.arity != nu.arity:
        raise ArityMismatchError(f"arities differ: {mu.arity} vs {nu.arity}")


def face(nu: KField, i: int) -> KField:
    """Restrict to the face where slot i degenerates: keep subsets avoiding i."""
    k = nu.arity
    if not 0 <= i < k:
        raise DomainError(f"face index {i} out of range for arity {k}")
    if k == 1:
        raise DomainError("a 1-field has no faces")
    remaining = [x for x in range(k) if x != i]
    reindex = {old: new for new, old in enumerate(remaining)}
    comps = {
        frozenset(reindex[x] for x in phi): elem
        for phi, elem in nu.components.items()
        if i not in phi
    }
    return KField(nu.chart, k - 1, comps)


def add_over_face(mu: KField, nu: KField, psi) -> KField:
    """Fiberwise addition over the face psi of size k-1.

    Components inside psi must agree and are kept; all others add.
    """
    _check_compatible(mu, nu)
    k = mu.arity
    psi = frozenset(psi)
    if len(psi) != k - 1 or any(i < 0 or i >= k for i in psi):
        raise DomainError(f"psi must be a size-{k - 1} subset of the slot indices")
    for phi in sorted(set(mu.components) | set(nu.components), key=_subset_key):
        if phi <= psi and mu.component(phi) != nu.component(phi):
            raise FacePreconditionError(phi)
    comps: dict[Subset, FreeLRElem] = {}
    for phi in set(mu.components) | set(nu.components):
        if phi <= psi:
            comps[phi] = mu.component(phi)
        else:
            comps[phi] = mu.component(phi) + nu.component(phi)
    return KField(mu.chart, k, comps)


def strong_diff(mu: KField, nu: KField, pair: tuple[int, int]) -> KField:
    """Strong difference of two fields agreeing outside components with both i and j.

    The result has arity k-1 over the face deleting j: components avoiding i
    are copied, and a component containing i picks up the difference of the
    (component + {j}) entries.
    """
    _check_compatible(mu, nu)
    k = mu.arity
    i, j = pair
    if not 0 <= i < j < k:
        raise DomainError(f"need 0 <= i < j < arity, got ({i}, {j}) at arity {k}")
    for phi in sorted(set(mu.components) | set(nu.components), key=_subset_key):
        if not (i in phi and j in phi) and mu.component(phi) != nu.component(phi):
            raise FacePreconditionError(phi)
    remaining = [x for x in range(k) if x != j]
    reindex = {old: new for new, old in enumerate(remaining)}
    comps: dict[Subset, FreeLRElem] = {}
    for size in range(1, k):
        for chi in combinations(remaining, size):
            chi_set = frozenset(chi)
            if i in chi_set:
                elem = mu.component(chi_set | {j}) - nu.component(chi_set | {j})
            else:
                elem = mu.component(chi_set)
            if not elem.is_zero():
                comps[frozenset(reindex[x] for x in chi_set)] = elem
    return KField(mu.chart, k - 1, comps)


def cup(mu: KField, nu: KField) -> KField:
    """Partial cup product in decomposition form.

    Defined when the second factor is first order (no components of size
    >= 2).  The first factor keeps its components on the first k slots; the
    singleton {s} of the second lands at {0..k-1} + {k+s}; everything else
    is zero.
    """
    if mu.chart != nu.chart:
        raise ChartMismatchError("fields live on different charts")
    for phi in sorted(nu.components, key=_subset_key):
        if len(phi) >= 2:
            raise CupUndefinedError(phi)
    k, m = mu.arity, nu.arity
    first_block = frozenset(range(k))
    comps: dict[Subset, FreeLRElem] = dict(mu.components)
    for phi, elem in nu.components.items():
        (s,) = phi
        comps[first_block | {k + s}] = elem
    return KField(mu.chart, k + m, comps)


def compose(mu: KField, nu: KField) -> KField:
    """Composition product: mu on the first block, nu shifted to the second."""
    if mu.chart != nu.chart:
        raise ChartMismatchError("fields live on different charts")
    k = mu.arity
    comps: dict[Subset, FreeLRElem] = dict(mu.components)
    for phi, elem in nu.components.items():
        comps[frozenset(x + k for x in phi)] = elem
    return KField(mu.chart, k + nu.arity, comps)


def _bracket_for(flavor: str) -> Callable[[FreeLRElem, FreeLRElem], FreeLRElem]:
    if flavor == "free":
        return free_bracket
    if flavor == "lie":
        return lie_bracket_ext
    raise DomainError(f"unknown bracket flavor {flavor!r}; use 'free' or 'lie'")


def _all_subsets(k: int):
    for size in range(1, k + 1):
        yield from (frozenset(c) for c in combinations(range(k), size))


def _act_by_permutation(nu: KField, sigma: Callable[[int], int], flavor: str) -> KField:
    """One application of the swap-action formula for an involutive sigma."""
    k = nu.arity
    bracket = _bracket_for(flavor)
    comps: dict[Subset, FreeLRElem] = {}
    for phi in _all_subsets(k):
        image = frozenset(sigma(x) for x in phi)
        if image != phi:
            elem = nu.component(image)
        else:
            elem = nu.component(phi)
            for part1, part2 in _oriented_decompositions(phi):
                if _subset_key(frozenset(sigma(x) for x in part1)) > _subset_key(
                    frozenset(sigma(x) for x in part2)
                ):
                    a, b = nu.components.get(part1), nu.components.get(part2)
                    if a is not None and b is not None:
                        elem = elem + bracket(a, b)
        if not elem.is_zero():
            comps[phi] = elem
    return KField(nu.chart, k, comps)


def _oriented_decompositions(phi: Subset):
    """Unordered splittings of phi into two nonempty parts, oriented part1 < part2."""
    items = sorted(phi)
    first = items[0]
    rest = items[1:]
    for size in range(len(rest) + 1):
        for extra in combinations(rest, size):
            part_a = frozenset((first,) + extra)
            part_b = phi - part_a
            if not part_b:
                continue
            if _subset_key(part_a) < _subset_key(part_b):
                yield part_a, part_b
            else:
                yield part_b, part_a


def act(word: Sequence[int], nu: KField, flavor: str = "free") -> KField:
    """Apply a word of adjacent swaps s_i = (i, i+1), first letter first.

    The resulting permutation action satisfies the symmetric-group relations
    exactly, so the value depends only on the permutation the word spells.
    """
    k = nu.arity
    out = nu
    for i in word:
        if not isinstance(i, int) or not 0 <= i < k - 1:
            raise DomainError(f"malformed word: generator index {i!r} at arity {k}")
        swap = Transposition(i, i + 1)
        out = _act_by_permutation(out, swap.apply, flavor)
    return out


def act_transposition(nu: KField, i: int, j: int, flavor: str = "free") -> KField:
    """The swap-action formula taken directly on the transposition (i j).

    Unlike folding (i j) into adjacent swaps, this leaves every component not
    containing both i and j untouched up to relabeling, in both flavors.
    """
    k = nu.arity
    if not 0 <= i < j < k:
        raise DomainError(f"need 0 <= i < j < arity, got ({i}, {j}) at arity {k}")
    return _act_by_permutation(nu, Transposition(i, j).apply, flavor)


def _perm_to_word(perm: Sequence[int]) -> list[int]:
    """Adjacent-swap word whose act() application relabels components by perm."""
    lst = list(perm)
    swaps: list[int] = []
    changed = True
    while changed:
        changed = False
        for i in range(len(lst) - 1):
            if lst[i] > lst[i + 1]:
                lst[i], lst[i + 1] = lst[i + 1], lst[i]
                swaps.append(i)
                changed = True
    return swaps[::-1]


def homotopy(nu: KField, i: int, j: int) -> KField:
    """Strong difference of the free- and classical-flavored (i j) swaps.

    The two flavors only disagree on components containing both i and j, so
    the strong-difference precondition holds automatically; at arity k there
    are k*(k-1)/2 of these maps.
    """
    if nu.arity < 2:
        raise DomainError("homotopy needs arity >= 2")
    free_side = act_transposition(nu, i, j, "free")
    lie_side = act_transposition(nu, i, j, "lie")
    return strong_diff(free_side, lie_side, (i, j))


def is_trivial_homotopy(nu: KField) -> tuple[bool, tuple | None]:
    """Whether both swap flavors agree for every index pair.

    Returns (True, None) or (False, (i, j, phi, psi)) where phi, psi is a
    disjoint pair of component index sets whose free and classical brackets
    already differ.
    """
    k = nu.arity
    for i in range(k):
        for j in range(i + 1, k):
            free_side = act_transposition(nu, i, j, "free")
            lie_side = act_transposition(nu, i, j, "lie")
            if free_side == lie_side:
                continue
            witness = _bracket_witness(nu, i, j)
            return False, witness
    return True, None


def _bracket_witness(nu: KField, i: int, j: int) -> tuple:
    support = sorted(nu.components, key=_subset_key)
    for a in range(len(support)):
        for b in range(a + 1, len(support)):
            phi, psi = support[a], support[b]
            if phi & psi:
                continue
            if free_bracket(nu.components[phi], nu.components[psi]) != lie_bracket_ext(
                nu.components[phi], nu.components[psi]
            ):
                return (i, j, phi, psi)
    diff = frozenset(range(nu.arity))
    return (i, j, diff, diff)


def trivial_by_disjoint_pairs(nu: KField) -> tuple[bool, tuple | None]:
    """Characterization for classical fields: every disjoint supported pair
    must consist of equal components (or one of them be zero)."""
    if not nu.is_classical():
        raise DomainError("the disjoint-pair test applies to classical fields")
    support = sorted(nu.components, key=_subset_key)
    for a in range(len(support)):
        for b in range(a + 1, len(support)):
            phi, psi = support[a], support[b]
            if phi & psi:
                continue
            if nu.components[phi] != nu.components[psi]:
                return False, (phi, psi)
    return True, None


def embed_classical(nu: KField) -> KField:
    """Inclusion of a classical field into the free-coefficient world.

    Components are already stored as degree-1 elements, so this validates the
    flavor and returns the field; the left inverse is componentwise
    projection to classical fields.
    """
    if not nu.is_classical():
        raise DomainError("embed_classical expects a classical field")
    return nu


def lie_derivative_thin(beta: VField, alpha: VField) -> VField:
    """Lie derivative through the composition product's thin structure.

    Composes beta x alpha, swaps with the classical flavor, takes the strong
    difference against alpha x beta and reads the resulting 1-field; the
    value is the classical bracket [beta, alpha].
    """
    chart = ChartSpec(beta.dim, max_degree=2)
    one_beta = KField.from_vfields(chart, 1, {frozenset({0}): beta})
    one_alpha = KField.from_vfields(chart, 1, {frozenset({0}): alpha})
    swapped = act([0], compose(one_beta, one_alpha), "lie")
    diff = strong_diff(swapped, compose(one_alpha, one_beta), (0, 1))
    return diff.component_vfield({0})


def reduce_to_polyvector(nu: KField) -> Polyvector:
    """Cohomology class of a homotopy-trivial field as a decomposable polyvector.

    Projects components to classical fields, rejects fields with non-trivial
    homotopies (NotClosedError), hunts through the symmetric group for a
    relabeling whose support sits inside the flag chain {0} < {0,1} < ...,
    drops zero and repeated chain entries, and wedges what remains.
    """
    chart = nu.chart
    k = nu.arity
    classical = KField(
        chart,
        k,
        {
            phi: FreeLRElem.from_vfield(chart, project_to_lie(elem))
            for phi, elem in nu.components.items()
        },
    )
    ok, witness = is_trivial_homotopy(classical)
    if not ok:
        raise NotClosedError(witness)
    flags = [frozenset(range(m + 1)) for m in range(k)]
    flag_set = set(flags)
    for perm in permutations(range(k)):
        cand = act(_perm_to_word(perm), classical, "lie")
        if cand.support() <= flag_set:
            chain = [cand.component_vfield(flags[m]) for m in range(k)]
            chain = [v for v in chain if not v.is_zero()]
            deduped: list[VField] = []
            for v in chain:
                if not deduped or deduped[-1] != v:
                    deduped.append(v)
            if not deduped:
                return Polyvector.zero(chart.dim)
            out = Polyvector.from_vfield(deduped[0])
            for v in deduped[1:]:
                out = wedge(out, Polyvector.from_vfield(v))
            return out
    raise NotFlagReducibleError("no relabeling moves the support into the flag chain")
