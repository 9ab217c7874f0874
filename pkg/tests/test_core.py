import numpy as np
import pytest

from capgroups import core
from capgroups.constructions import easterfield, easterfield_columns, easterfield_orders
from capgroups.core import (
    ActionNotInvertibleError,
    ActionNotWellDefinedError,
    ActionOrderError,
    DimensionError,
    EnumerationCapError,
    NotNormalError,
    NotPrimePowerError,
    OrdersError,
    center,
    comm,
    element_order,
    enumerate_group,
    frattini_rank,
    inv,
    lower_central_series,
    make_group,
    mul,
    normal_closure,
    order_mod_subgroup,
    power,
    subgroup_closure,
)

from oracles import AffineModel


@pytest.fixture(scope="module")
def k32():
    return easterfield(3, 2)


# make_group


def test_make_group_order_8():
    G = make_group(2, [2, 2], [[1, 0], [1, -1]])
    assert G.order == 8
    assert G.action == ((1, 0), (1, 1))


def test_make_group_cyclic():
    G = make_group(1, [9], [[1]])
    assert G.order == 9
    assert lower_central_series(G)[-1].is_trivial()
    assert len(lower_central_series(G)) == 2


def test_make_group_binomial_twist_cubes_to_identity():
    cols = easterfield_columns(3, 2)
    A = np.array(cols, dtype=np.int64).T
    # oracle: integer matrix power, reduced row-wise
    cube = np.linalg.matrix_power(A, 3) % np.array([9, 9, 3])[:, None]
    assert (cube == np.eye(3, dtype=np.int64)).all()
    G = make_group(3, [9, 9, 3], A.tolist())
    assert G.action_order == 3
    assert G.order == 729


def test_make_group_rejects_ill_defined_action():
    # x1 of order 2 cannot map to x0 of order 4
    with pytest.raises(ActionNotWellDefinedError):
        make_group(2, [4, 2], [[1, 1], [0, 1]])


def test_make_group_rejects_singular_action():
    with pytest.raises(ActionNotInvertibleError):
        make_group(2, [3, 3], [[1, 1], [0, 0]])


def test_make_group_rejects_action_order_not_dividing_m():
    with pytest.raises(ActionOrderError):
        make_group(2, [7], [[2]])


def test_make_group_rejects_mixed_primes():
    with pytest.raises(OrdersError):
        make_group(1, [2, 3], [[1, 0], [0, 1]])


def test_make_group_rejects_bad_shape():
    with pytest.raises(DimensionError):
        make_group(1, [2, 2], [[1, 0]])


# products


def test_conjugation_by_y(k32):
    y, x0 = k32.top(), k32.x(0)
    assert mul(k32, mul(k32, inv(k32, y), x0), y) == k32.element(0, [1, 1, 0])


def test_identity_law(k32):
    e = k32.identity()
    for g in enumerate_group(k32)[::7]:
        assert mul(k32, g, e) == g == mul(k32, e, g)


def test_associativity_random(rng):
    G = easterfield(2, 2)
    elems = enumerate_group(G)
    for _ in range(1000):
        a, b, c = (elems[i] for i in rng.integers(len(elems), size=3))
        assert mul(G, mul(G, a, b), c) == mul(G, a, mul(G, b, c))


def test_inverse_of_product_random(rng):
    G = easterfield(2, 2)
    elems = enumerate_group(G)
    for _ in range(1000):
        a, b = (elems[i] for i in rng.integers(len(elems), size=2))
        assert inv(G, mul(G, a, b)) == mul(G, inv(G, b), inv(G, a))


@pytest.mark.parametrize("p,r", [(2, 1), (2, 2), (3, 1), (3, 2), (5, 1), (5, 2), (7, 1)])
def test_comm_x0_y_is_x1(p, r):
    G = easterfield(p, r)
    assert comm(G, G.x(0), G.top()) == G.x(1)


def test_self_commutator_trivial(k32):
    for g in enumerate_group(k32)[::11]:
        assert comm(k32, g, g) == k32.identity()


def test_negative_power(k32):
    g = k32.element(1, [2, 5, 1])
    assert power(k32, g, -4) == inv(k32, power(k32, g, 4))
    assert power(k32, g, 0) == k32.identity()


def test_dimension_mismatch(k32):
    with pytest.raises(DimensionError):
        mul(k32, k32.identity(), core.GroupElement(0, (0, 0)))


def test_element_orders():
    G = easterfield(2, 1)
    assert element_order(G, G.top()) == 2
    assert element_order(G, G.identity()) == 1
    # brute-force oracle in the permutation model gives 4
    model = AffineModel(easterfield_orders(2, 1), easterfield_columns(2, 1))
    assert model.word(1, (1, 0)).order() == 4
    assert element_order(G, mul(G, G.top(), G.x(0))) == 4


@pytest.mark.parametrize("p,r", [(2, 2), (3, 2), (5, 1)])
def test_order_of_y_is_p(p, r):
    G = easterfield(p, r)
    assert element_order(G, G.top()) == p


# enumeration


@pytest.mark.parametrize("p,r,size", [(2, 1, 8), (3, 2, 729)])
def test_enumerate_counts(p, r, size):
    elems = enumerate_group(easterfield(p, r))
    assert len(elems) == size == len(set(elems))


def test_enumerate_trivial():
    G = make_group(1, [1], [[1]])
    assert enumerate_group(G) == [G.identity()]


def test_enumerate_cap():
    G = easterfield(3, 2, cap=100)
    with pytest.raises(EnumerationCapError, match="729"):
        enumerate_group(G)
    with pytest.raises(EnumerationCapError):
        center(G)


def test_codes_roundtrip(k32):
    for c, g in enumerate(enumerate_group(k32)):
        assert k32.code(g) == c
        assert k32.decode(c) == g


# closures


def test_closure_empty(k32):
    S = subgroup_closure(k32, [])
    assert len(S) == 1 and k32.identity() in S


def test_closure_x1(k32):
    assert len(subgroup_closure(k32, [k32.x(1)])) == 9


def test_closure_x1_x2_is_derived(k32):
    S = subgroup_closure(k32, [k32.x(1), k32.x(2)])
    assert S == lower_central_series(k32)[1]


def test_normal_closure_trivial(k32):
    assert normal_closure(k32, [k32.identity()]).is_trivial()


def test_normal_closure_x1(k32):
    N = normal_closure(k32, [k32.x(1)])
    assert N == subgroup_closure(k32, [k32.x(1), k32.x(2)])
    assert len(N) == 27


@pytest.mark.parametrize("p,r", [(2, 1), (2, 2), (2, 3), (3, 1), (5, 1)])
def test_normal_closure_of_generator_commutators_is_derived(p, r):
    G = easterfield(p, r)
    elems = enumerate_group(G)
    # oracle: closure of every element commutator
    oracle = subgroup_closure(G, {comm(G, a, b) for a in elems for b in elems})
    assert core.derived_subgroup(G) == oracle


# series, center, quotients


def test_lcs_abelian():
    G = make_group(1, [4, 2], [[1, 0], [0, 1]])
    series = lower_central_series(G)
    assert len(series) == 2 and series[1].is_trivial()


def test_lcs_k32_last_term(k32):
    series = lower_central_series(k32)
    assert len(series) - 1 == 4
    assert series[3] == subgroup_closure(k32, [power(k32, k32.x(1), 3)])
    assert len(series[3]) == 3


def test_center_contains_x1_power(k32):
    Z = center(k32)
    assert power(k32, k32.x(1), 3) in Z
    assert len(Z) == 9  # full-scan value, also the sympy oracle's


def test_center_of_abelian():
    G = make_group(1, [4, 2], [[1, 0], [0, 1]])
    assert len(center(G)) == 8


def test_order_mod_subgroup(k32):
    Z = center(k32)
    assert order_mod_subgroup(k32, k32.x(0), Z) == 9
    assert order_mod_subgroup(k32, k32.top(), Z) == 3
    whole = core.whole_group(k32)
    assert order_mod_subgroup(k32, k32.element(1, [3, 4, 1]), whole) == 1


def test_order_mod_subgroup_requires_normal(k32):
    S = subgroup_closure(k32, [k32.top()])
    with pytest.raises(NotNormalError):
        order_mod_subgroup(k32, k32.x(0), S)


def test_frattini_rank(k32):
    assert frattini_rank(k32) == 2
    assert frattini_rank(make_group(1, [5], [[1]])) == 1
    assert frattini_rank(k32, modulo=center(k32)) == 2


@pytest.mark.parametrize("p,r", [(2, 2), (3, 1), (3, 2), (5, 1)])
def test_frattini_from_all_pth_powers(p, r):
    G = easterfield(p, r)
    # oracle: every p-th power together with the derived subgroup
    powers = {power(G, g, p) for g in enumerate_group(G)}
    phi = subgroup_closure(G, list(powers) + list(core.derived_subgroup(G).generators))
    assert core.frattini_subgroup(G) == phi


def test_frattini_rank_needs_prime_power():
    G = make_group(2, [3], [[-1]])
    with pytest.raises(NotPrimePowerError):
        frattini_rank(G)
