"""Subset-indexed fields: faces, products, actions, homotopies, reduction."""

from random import Random

import pytest

from igc import (
    ChartSpec,
    CupUndefinedError,
    DomainError,
    FacePreconditionError,
    FreeLRElem,
    KField,
    NotClosedError,
    NotFlagReducibleError,
    Poly,
    Polyvector,
    VField,
    act,
    act_transposition,
    add_over_face,
    compose,
    cup,
    embed_classical,
    face,
    free_bracket,
    homotopy,
    is_trivial_homotopy,
    lie_bracket_ext,
    lie_derivative_thin,
    project_to_lie,
    reduce_to_polyvector,
    strong_diff,
    trivial_by_disjoint_pairs,
    wedge,
)
from igc.oracle import oracle_bracket, random_kfield, random_vfield

CHART = ChartSpec(2, 6)
X0 = Poly.var(2, 0)
D0V, D1V = VField.basis(2, 0), VField.basis(2, 1)


def one_field(v, chart=CHART):
    return KField.from_vfields(chart, 1, {frozenset({0}): v})


def two_field(a0, a1, a01, chart=CHART):
    return KField.from_vfields(
        chart, 2, {frozenset({0}): a0, frozenset({1}): a1, frozenset({0, 1}): a01}
    )


# faces and additions ---------------------------------------------------------


def test_face_examples():
    rng = Random(50)
    nu = two_field(*(random_vfield(rng, 2) for _ in range(3)))
    assert face(nu, 1) == one_field(nu.component_vfield({0}))
    assert face(KField.zero(CHART, 3), 0) == KField.zero(CHART, 2)
    with pytest.raises(DomainError):
        face(nu, 2)


def test_face_simplicial_identities():
    rng = Random(51)
    nu = random_kfield(rng, CHART, 4)
    for j in range(4):
        for i in range(j):
            assert face(face(nu, j), i) == face(face(nu, i), j - 1)


def test_add_over_face():
    rng = Random(52)
    a0, a1, a01, b1, b01 = (random_vfield(rng, 2) for _ in range(5))
    mu = two_field(a0, a1, a01)
    nu = two_field(a0, b1, b01)
    out = add_over_face(mu, nu, {0})
    assert out == two_field(a0, a1 + b1, a01 + b01)
    zero_compatible = two_field(a0, VField.zero(2), VField.zero(2))
    assert add_over_face(mu, zero_compatible, {0}) == mu
    bad = two_field(random_vfield(rng, 2), a1, a01)
    with pytest.raises(FacePreconditionError) as err:
        add_over_face(mu, bad, {0})
    assert err.value.subset == frozenset({0})


def test_add_over_face_arity_one_is_plain_addition():
    rng = Random(53)
    u, v = random_vfield(rng, 2), random_vfield(rng, 2)
    assert add_over_face(one_field(u), one_field(v), frozenset()) == one_field(u + v)


# strong difference ------------------------------------------------------------


def test_strong_diff_basic():
    rng = Random(54)
    a0, a1, a, b = (random_vfield(rng, 2) for _ in range(4))
    mu, nu = two_field(a0, a1, a), two_field(a0, a1, b)
    assert strong_diff(mu, nu, (0, 1)) == one_field(a - b)
    assert strong_diff(mu, mu, (0, 1)) == KField.zero(CHART, 1)
    bad = two_field(random_vfield(rng, 2), a1, b)
    with pytest.raises(FacePreconditionError):
        strong_diff(mu, bad, (0, 1))


def test_strong_diff_pipeline_bracket():
    alpha, beta = D0V, VField([Poly.zero(2), X0])
    swapped = act([0], compose(one_field(alpha), one_field(beta)), "lie")
    out = strong_diff(swapped, compose(one_field(beta), one_field(alpha)), (0, 1))
    assert out.component_vfield({0}) == D1V


def test_strong_diff_general_pair():
    rng = Random(55)
    nu = random_kfield(rng, CHART, 3)
    # build a partner differing only where {0, 2} is contained
    delta = random_vfield(rng, 2)
    comps = dict(nu.components)
    key = frozenset({0, 2})
    comps[key] = comps[key] + FreeLRElem.from_vfield(CHART, delta)
    mu = KField(CHART, 3, comps)
    out = strong_diff(mu, nu, (0, 2))
    assert out.component_vfield({0}) == delta


# cup and compose ---------------------------------------------------------------


def test_cup_examples():
    rng = Random(56)
    alpha, beta, gamma = (random_vfield(rng, 2) for _ in range(3))
    ab = cup(one_field(alpha), one_field(beta))
    assert ab == KField.from_vfields(
        CHART, 2, {frozenset({0}): alpha, frozenset({0, 1}): beta}
    )
    vertical = cup(KField.zero(CHART, 1), one_field(alpha))
    assert vertical == KField.from_vfields(CHART, 2, {frozenset({0, 1}): alpha})
    # chains associate onto the flag supports (right-nesting needs the
    # Weil-level cup, since beta cup gamma is no longer first order)
    left = cup(ab, one_field(gamma))
    assert left == KField.from_vfields(
        CHART,
        3,
        {frozenset({0}): alpha, frozenset({0, 1}): beta, frozenset({0, 1, 2}): gamma},
    )


def test_cup_definedness():
    rng = Random(57)
    second = random_kfield(rng, CHART, 2)
    with pytest.raises(CupUndefinedError) as err:
        cup(one_field(random_vfield(rng, 2)), second)
    assert err.value.subset == frozenset({0, 1})


def test_compose_examples():
    rng = Random(58)
    alpha, beta = random_vfield(rng, 2), random_vfield(rng, 2)
    out = compose(one_field(alpha), one_field(beta))
    assert out == KField.from_vfields(
        CHART, 2, {frozenset({0}): alpha, frozenset({1}): beta}
    )
    padded = compose(out, KField.zero(CHART, 1))
    assert padded.arity == 3 and padded.support() == out.support()


# symmetric-group action -----------------------------------------------------------


def test_act_swap_k2_formula():
    rng = Random(59)
    for _ in range(10):
        a0, a1, a01 = (random_vfield(rng, 2) for _ in range(3))
        nu = two_field(a0, a1, a01)
        assert act([0], nu, "lie") == two_field(a1, a0, a01 + oracle_bracket(a0, a1))


def test_act_equal_components_just_permute():
    rng = Random(60)
    alpha = random_vfield(rng, 2)
    nu = two_field(alpha, alpha, alpha)
    for flavor in ("free", "lie"):
        assert act([0], nu, flavor) == nu


def test_act_free_flavor_k2():
    nu = two_field(D0V, VField([Poly.zero(2), X0]), VField.zero(2))
    d0 = FreeLRElem.generator(CHART, 0)
    x0d1 = FreeLRElem.from_vfield(CHART, VField([Poly.zero(2), X0]))
    out = act([0], nu, "free")
    assert out.component({0}) == x0d1
    assert out.component({1}) == d0
    assert out.component({0, 1}) == free_bracket(d0, x0d1)


def test_act_word_is_componentwise_relabeling_on_commuting_fields():
    # constant multiples of one direction commute, so any word acts by pure
    # relabeling new[phi] = old[perm(phi)]
    from itertools import combinations, permutations

    from igc.groupoid import _perm_to_word

    k = 3
    consts = {}
    counter = 1
    for size in range(1, k + 1):
        for phi in combinations(range(k), size):
            consts[frozenset(phi)] = VField([Poly.const(2, counter), Poly.zero(2)])
            counter += 1
    nu = KField.from_vfields(CHART, k, consts)
    for perm in permutations(range(k)):
        out = act(_perm_to_word(perm), nu, "lie")
        for phi in consts:
            assert out.component_vfield(phi) == consts[frozenset(perm[x] for x in phi)]


def test_act_relations_spot():
    rng = Random(61)
    chart = ChartSpec(2, 8)
    nu = random_kfield(rng, chart, 3, degree=1, terms=1)
    for flavor in ("free", "lie"):
        assert act([0, 0], nu, flavor) == nu
        assert act([0, 1, 0], nu, flavor) == act([1, 0, 1], nu, flavor)


def test_act_malformed_word():
    nu = random_kfield(Random(62), CHART, 2)
    with pytest.raises(DomainError):
        act([1], nu, "lie")
    with pytest.raises(DomainError):
        act([0], nu, "classical")


# homotopies ---------------------------------------------------------------------


def test_homotopy_k2_formula():
    rng = Random(63)
    for _ in range(10):
        a0, a1, a01 = (random_vfield(rng, 2) for _ in range(3))
        nu = two_field(a0, a1, a01)
        e0 = FreeLRElem.from_vfield(CHART, a0)
        e1 = FreeLRElem.from_vfield(CHART, a1)
        want = KField(
            CHART, 1, {frozenset({0}): free_bracket(e0, e1) - lie_bracket_ext(e0, e1)}
        )
        h = homotopy(nu, 0, 1)
        assert h == want
        assert all(project_to_lie(c).is_zero() for c in h.components.values())


def test_homotopy_zero_leg_vanishes():
    rng = Random(64)
    a0, a01 = random_vfield(rng, 2), random_vfield(rng, 2)
    nu = two_field(a0, VField.zero(2), a01)
    assert homotopy(nu, 0, 1).is_zero()


def test_homotopy_arity_and_count():
    rng = Random(65)
    with pytest.raises(DomainError):
        homotopy(one_field(random_vfield(rng, 2)), 0, 1)
    chart = ChartSpec(2, 8)
    for k in (2, 3, 4):
        nu = random_kfield(rng, chart, k, degree=1, terms=1)
        pairs = [(i, j) for i in range(k) for j in range(i + 1, k)]
        assert len(pairs) == k * (k - 1) // 2
        for i, j in pairs:
            homotopy(nu, i, j)


def test_act_transposition_boundary_lemma():
    rng = Random(66)
    chart = ChartSpec(2, 8)
    nu = random_kfield(rng, chart, 3, degree=1, terms=1)
    for i, j in ((0, 1), (0, 2), (1, 2)):
        free_side = act_transposition(nu, i, j, "free")
        lie_side = act_transposition(nu, i, j, "lie")
        for phi in set(free_side.components) | set(lie_side.components):
            if not (i in phi and j in phi):
                assert free_side.component(phi) == lie_side.component(phi)


# trivial homotopies ----------------------------------------------------------------


def test_trivial_examples():
    rng = Random(67)
    alpha, beta = D0V, VField([Poly.zero(2), X0])
    assert is_trivial_homotopy(cup(one_field(alpha), one_field(beta)))[0]
    ok, witness = is_trivial_homotopy(compose(one_field(alpha), one_field(beta)))
    assert not ok
    assert witness == (0, 1, frozenset({0}), frozenset({1}))
    assert is_trivial_homotopy(KField.zero(CHART, 3))[0]


def test_trivial_characterizations_agree():
    rng = Random(68)
    chart = ChartSpec(2, 8)
    for idx in range(20):
        nu = random_kfield(rng, chart, 2 + idx % 3, degree=1, terms=1, density=0.7)
        assert is_trivial_homotopy(nu)[0] == trivial_by_disjoint_pairs(nu)[0]


# embedding and reduction --------------------------------------------------------------


def test_embed_classical():
    rng = Random(69)
    nu = random_kfield(rng, CHART, 2)
    assert embed_classical(nu) == nu
    free_comp = free_bracket(FreeLRElem.generator(CHART, 0), FreeLRElem.generator(CHART, 1))
    with pytest.raises(DomainError):
        embed_classical(KField(CHART, 1, {frozenset({0}): free_comp}))
    assert not is_trivial_homotopy(compose(one_field(D0V), one_field(VField([Poly.zero(2), X0]))))[0]


def test_reduce_examples():
    rng = Random(70)
    alpha, beta = random_vfield(rng, 2, degree=1, terms=1), random_vfield(rng, 2, degree=1, terms=1)
    got = reduce_to_polyvector(cup(one_field(alpha), one_field(beta)))
    assert got == wedge(Polyvector.from_vfield(alpha), Polyvector.from_vfield(beta))
    assert reduce_to_polyvector(one_field(alpha)) == Polyvector.from_vfield(alpha)
    assert reduce_to_polyvector(cup(one_field(alpha), one_field(alpha))) == Polyvector.from_vfield(alpha)
    assert reduce_to_polyvector(KField.zero(CHART, 2)).is_zero()


def test_reduce_not_closed():
    with pytest.raises(NotClosedError) as err:
        reduce_to_polyvector(compose(one_field(D0V), one_field(VField([Poly.zero(2), X0]))))
    assert err.value.witness[0:2] == (0, 1)


def test_reduce_not_flag_reducible():
    alpha = VField.basis(2, 0)
    nu = KField.from_vfields(CHART, 2, {frozenset({0}): alpha, frozenset({1}): alpha})
    with pytest.raises(NotFlagReducibleError):
        reduce_to_polyvector(nu)


def test_lie_derivative_thin():
    beta = VField([Poly.zero(2), X0])
    alpha = D0V
    assert lie_derivative_thin(beta, alpha) == -D1V
    assert lie_derivative_thin(alpha, alpha).is_zero()
    rng = Random(71)
    for _ in range(10):
        u, v = random_vfield(rng, 3), random_vfield(rng, 3)
        assert lie_derivative_thin(u, v) == oracle_bracket(u, v)
    # bilinear over constants
    assert lie_derivative_thin(beta * 3, alpha) == lie_derivative_thin(beta, alpha) * 3
