"""Exact continued-fraction, lattice-chain and chart-atlas checks.

Two brute-force oracles carry most of the weight here: an exhaustive
evaluate/expand round trip over small coefficient tuples, and a DFS
that rediscovers each lattice chain from nothing but the three-term
recursion, the unit box and the endpoint conditions.
"""

import itertools
from fractions import Fraction
from math import gcd

import pytest

from sfkale.errors import InvalidPairError
from sfkale.hj import (
    chart_atlas,
    determinant_identity_holds,
    embedding_dimension,
    evaluate_fraction,
    format_monomial,
    hj_expand,
    invariant_monomials,
    lattice_chain,
    monomial_relation_holds,
    pairing,
    transition_cocycle_holds,
    transition_matrices,
)


def coprime_pairs(pmax):
    return [(p, q) for p in range(2, pmax + 1) for q in range(1, p) if gcd(p, q) == 1]


# ---------------------------------------------------------------- expansions


def test_expand_known_values():
    assert hj_expand(2, 1).coeffs == (2,)
    assert hj_expand(2, 1).dual_coeffs == (2,)
    assert hj_expand(5, 2).coeffs == (3, 2)
    assert hj_expand(5, 2).dual_coeffs == (2, 3)
    assert hj_expand(7, 3).coeffs == (3, 2, 2)
    assert hj_expand(7, 3).dual_coeffs == (2, 4)


@pytest.mark.parametrize("p", [2, 3, 7, 11, 50])
def test_expand_q1_pattern(p):
    exp = hj_expand(p, 1)
    assert exp.coeffs == (p,)
    assert exp.dual_coeffs == (2,) * (p - 1)


def test_expand_inverts_every_small_tuple():
    # every all->=2 tuple folds to a unique rational whose expansion
    # must reproduce the tuple; this pins both existence and uniqueness
    for length in range(1, 5):
        for coeffs in itertools.product(range(2, 7), repeat=length):
            value = evaluate_fraction(coeffs)
            exp = hj_expand(value.numerator, value.denominator)
            assert exp.coeffs == coeffs, (coeffs, value)


def test_round_trip_up_to_200():
    for p, q in coprime_pairs(200):
        exp = hj_expand(p, q)
        assert min(exp.coeffs) >= 2
        assert min(exp.dual_coeffs) >= 2
        assert evaluate_fraction(exp.coeffs) == Fraction(p, q)
        assert evaluate_fraction(exp.dual_coeffs) == Fraction(p, p - q)


def test_evaluate_fraction_values():
    assert evaluate_fraction([3, 2]) == Fraction(5, 2)
    assert evaluate_fraction([2, 2, 2]) == Fraction(4, 3)
    assert evaluate_fraction([7]) == 7


def test_evaluate_fraction_rejects():
    with pytest.raises(ValueError):
        evaluate_fraction([])
    with pytest.raises(ValueError):
        evaluate_fraction([2, 1])


@pytest.mark.parametrize(
    "p, q",
    [(4, 2), (5, 0), (5, 5), (1, 1), (5, 7), (2, -1)],
)
def test_expand_rejects_bad_pairs(p, q):
    with pytest.raises(InvalidPairError):
        hj_expand(p, q)


def test_expand_rejects_non_integers():
    with pytest.raises(InvalidPairError):
        hj_expand(5.0, 2)
    with pytest.raises(InvalidPairError):
        hj_expand(5, "2")


def test_embedding_dimension():
    assert embedding_dimension((2,)) == 3
    assert embedding_dimension((3, 2)) == 4
    assert embedding_dimension((7,)) == 8


# ------------------------------------------------------------------- chains


def test_chain_small_examples():
    half = Fraction(1, 2)
    chain = lattice_chain(2, 1)
    assert chain.points == ((0, 1), (half, half), (1, 0))
    assert chain.chain_coeffs == (2,)
    assert chain.m == 1

    chain = lattice_chain(5, 2)
    assert chain.points == (
        (0, 1),
        (Fraction(1, 5), Fraction(2, 5)),
        (Fraction(3, 5), Fraction(1, 5)),
        (1, 0),
    )
    assert chain.chain_coeffs == (3, 2)
    assert chain.m == 2


def _chains_by_search(p, q):
    """All multiplier chains from (0,1) to (1,0) inside the unit box."""
    t = next(t for t in range(1, p) if (1 + q * t) % p == 0)
    start = (Fraction(0), Fraction(1))
    second = (Fraction(1, p), Fraction(t, p))
    goal = (Fraction(1), Fraction(0))
    found = []

    def walk(path):
        if len(path) > p + 2:
            return
        if path[-1] == goal:
            found.append(tuple(path))
            return
        prev, cur = path[-2], path[-1]
        for kappa in range(2, p + 1):
            nxt = (kappa * cur[0] - prev[0], kappa * cur[1] - prev[1])
            if nxt[0] > 1 or nxt[1] < 0 or nxt[1] > 1:
                continue
            walk(path + [nxt])

    walk([start, second])
    return found


def test_chain_by_exhaustive_search():
    # the DFS knows nothing about continued fractions; for each pair it
    # must find exactly one admissible chain, and it must be ours
    for p, q in coprime_pairs(12):
        solutions = _chains_by_search(p, q)
        assert len(solutions) == 1, (p, q, solutions)
        assert solutions[0] == lattice_chain(p, q).points


def test_chain_structure_sweep():
    for p, q in coprime_pairs(60):
        chain = lattice_chain(p, q)
        pts = chain.points
        assert pts[0] == (0, 1) and pts[-1] == (1, 0)
        assert len(pts) == chain.m + 2
        assert chain.chain_coeffs == tuple(reversed(hj_expand(p, q).dual_coeffs))
        for s, t in pts:
            a, b = int(s * p), int(t * p)
            assert (a, b) == (s * p, t * p)  # denominators divide p
            assert (a + q * b) % p == 0  # invariance of x^a y^b
            assert 0 <= s <= 1 and 0 <= t <= 1
        for i in range(len(pts) - 1):
            assert pts[i][0] < pts[i + 1][0]
            assert pts[i][1] > pts[i + 1][1]
        assert determinant_identity_holds(chain)


# ---------------------------------------------------------------- monomials


def test_monomials_examples():
    mono = invariant_monomials(lattice_chain(2, 1))
    assert mono.exponents == ((0, 2), (1, 1), (2, 0))

    mono = invariant_monomials(lattice_chain(5, 2))
    assert mono.exponents == ((0, 5), (1, 2), (3, 1), (5, 0))
    assert mono.descending[:2] == ((5, 0), (3, 1))


def test_monomial_count_and_relations_sweep():
    for p, q in coprime_pairs(60):
        exp = hj_expand(p, q)
        chain = lattice_chain(p, q)
        mono = invariant_monomials(chain)
        assert len(mono.exponents) == len(exp.dual_coeffs) + 2
        assert len(mono.exponents) == embedding_dimension(exp.coeffs)
        assert mono.descending[0] == (p, 0)
        assert mono.descending[1] == (p - q, 1)
        assert monomial_relation_holds(chain)


def test_format_monomial():
    assert format_monomial((3, 1)) == "x^3 y"
    assert format_monomial((0, 0)) == "1"
    assert format_monomial((1, 0)) == "x"
    assert format_monomial((0, 2)) == "y^2"
    assert format_monomial((1, 1)) == "x y"


# ------------------------------------------------------------------- charts


def test_atlas_examples():
    atlas = chart_atlas(lattice_chain(2, 1))
    assert [(c.u, c.v) for c in atlas.charts] == [((2, 0), (-1, 1)), ((1, -1), (0, 2))]

    atlas = chart_atlas(lattice_chain(5, 2))
    assert [(c.u, c.v) for c in atlas.charts] == [
        ((5, 0), (-2, 1)),
        ((2, -1), (-1, 3)),
        ((1, -3), (0, 5)),
    ]


def test_pairing_duality_sweep():
    for p, q in coprime_pairs(50):
        chain = lattice_chain(p, q)
        atlas = chart_atlas(chain)
        assert len(atlas.charts) == chain.m + 1
        for chart in atlas.charts:
            lo = chain.points[chart.index]
            hi = chain.points[chart.index + 1]
            assert pairing(lo, chart.u) == 0
            assert pairing(hi, chart.u) == 1
            assert pairing(lo, chart.v) == 1
            assert pairing(hi, chart.v) == 0


def test_transition_cocycle_sweep():
    for p, q in coprime_pairs(60):
        atlas = chart_atlas(lattice_chain(p, q))
        assert transition_cocycle_holds(atlas)
        assert len(transition_matrices(atlas)) == len(atlas.chain_coeffs)


def test_package_root_reexports():
    import sfkale

    assert sfkale.hj_expand is hj_expand
    assert sfkale.lattice_chain is lattice_chain
