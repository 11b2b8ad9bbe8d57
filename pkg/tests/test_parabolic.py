import random

import pytest

import oracles
from conftest import ALL_TYPES, SMALL
from rescodim import kernels
from rescodim.errors import CapabilityError
from rescodim.parabolic import (SaturatedSubalgebra, all_base_parabolics,
                                contains_positive_system,
                                is_parabolic_for_some_base,
                                is_symmetric_cover, maximal_parabolic,
                                maximal_parabolic_table,
                                minimal_resonant_codimension,
                                parabolic_codimension, resonant_codimension,
                                standard_parabolic, verify_prop25)
from rescodim.roots import RootSystemType, root_system


def vectors(rs, roots):
    return {rs.roots[i] for i in roots}


def test_extreme_parabolics():
    rs = root_system("A", 3)
    assert standard_parabolic(rs, {1, 2, 3}).root_set == frozenset(range(len(rs.roots)))
    assert standard_parabolic(rs, set()).root_set == frozenset(rs.positives)
    assert resonant_codimension(rs, standard_parabolic(rs, {1, 2, 3})) == 0


def test_a2_excluding_alpha2():
    rs = root_system("A", 2)
    p = standard_parabolic(rs, {2})
    assert p.root_set == frozenset(rs.positives) | {rs.neg(1)}
    assert resonant_codimension(rs, p) == 2


def test_bc2_minimal_parabolic_codimension():
    rs = root_system("BC", 2)
    assert resonant_codimension(rs, standard_parabolic(rs, set())) == 4


def test_standard_parabolic_rejects_bad_labels():
    with pytest.raises(ValueError):
        standard_parabolic(root_system("A", 2), {3})


@pytest.mark.parametrize("n", range(1, 9))
def test_type_a_r_is_rank_attained_at_alpha1(n):
    rs = root_system("A", n)
    assert resonant_codimension(rs, maximal_parabolic(rs, 1)) == n
    assert minimal_resonant_codimension(rs) == n


def test_tables():
    assert maximal_parabolic_table(root_system("A", 3)) == [(1, 3), (2, 4), (3, 3)]
    assert maximal_parabolic_table(root_system("A", 4)) == [(1, 4), (2, 6), (3, 6), (4, 4)]
    assert min(c for _, c in maximal_parabolic_table(root_system("G2"))) == 5
    assert min(c for _, c in maximal_parabolic_table(root_system("C", 2))) == 3


@pytest.mark.parametrize("t", ALL_TYPES, ids=str)
def test_minimum_at_alpha1_and_bounded_by_every_standard_parabolic(t):
    rs = root_system(t)
    table = maximal_parabolic_table(rs)
    r = minimal_resonant_codimension(rs)
    assert table[0][1] == r
    if t.rank <= 5:
        for mask in range(2 ** t.rank - 1):
            levi = {j for j in range(1, t.rank + 1) if mask >> (j - 1) & 1}
            assert resonant_codimension(rs, standard_parabolic(rs, levi)) >= r


@pytest.mark.parametrize("t", ALL_TYPES, ids=str)
def test_standard_parabolics_closed_and_unique(t):
    rs = root_system(t)
    roots = set(rs.roots)
    rng = random.Random(str(t))
    for _ in range(6):
        levi = {j for j in range(1, t.rank + 1) if rng.random() < 0.5}
        p = standard_parabolic(rs, levi)
        vecs = vectors(rs, p.root_set)
        assert oracles.is_closed(vecs, roots)
        assert frozenset(rs.positives) <= p.root_set
        # generated by positives and the negative simple roots of the Levi
        gen = vectors(rs, rs.positives) | {rs.roots[rs.neg(j - 1)] for j in levi}
        assert oracles.vector_closure(gen, roots) == vecs
        assert is_parabolic_for_some_base(rs, p, method="halfspace")


@pytest.mark.parametrize("t", SMALL, ids=str)
def test_base_enumeration_agrees_with_cover_oracle(t):
    rs = root_system(t)
    roots = set(rs.roots)
    classes = [[rs.roots[m] for m in c.members] for c in rs.classes]
    parabolics = all_base_parabolics(rs)
    closed = oracles.closed_subsets_bruteforce(classes, roots)
    assert set(kernels.scan_closed(rs)[1]) == {sum(1 << i for i in s) for s in closed}
    for s in closed:
        vecs = {v for i in s for v in classes[i]}
        cover = oracles.parabolic_by_cover(vecs, roots)
        assert (s in parabolics) == cover
        assert is_parabolic_for_some_base(rs, s, method="halfspace") == cover
        assert is_symmetric_cover(rs, s) == cover


def test_a2_examples():
    rs = root_system("A", 2)
    everything = frozenset(range(rs.nclasses))
    assert is_parabolic_for_some_base(rs, everything)
    a1, a2, a12 = 0, 1, 2
    h = {a1, a2, a12, rs.neg_class(a1)}
    assert is_parabolic_for_some_base(rs, h)
    h2 = {a12, rs.neg_class(a12), a1, rs.neg_class(a1)}
    # a1 + (-a12) = -a2 is a root not in h2, so it is not even closed
    assert not kernels.is_closed(rs, h2)
    assert not is_parabolic_for_some_base(rs, h2)


def test_enumeration_capability_limit():
    rs = root_system("A", 4)
    with pytest.raises(CapabilityError, match="halfspace"):
        is_parabolic_for_some_base(rs, range(rs.nclasses), method="enumerate")
    assert is_parabolic_for_some_base(rs, range(rs.nclasses))


@pytest.mark.parametrize("t", SMALL, ids=str)
def test_prop_small_rank_exhaustive(t):
    rep = verify_prop25(root_system(t))
    assert rep.ok and rep.examined > 0 and not rep.counterexamples


def test_verify_rejects_large_rank():
    with pytest.raises(CapabilityError):
        verify_prop25(root_system("A", 4))


@pytest.mark.parametrize("t", [RootSystemType("B", 4), RootSystemType("D", 4), RootSystemType("F4", 4)], ids=str)
def test_halfspace_matches_cover_on_random_closed_sets(t):
    rs = root_system(t)
    roots = set(rs.roots)
    rng = random.Random(7)
    for _ in range(40):
        seed = [c for c in range(rs.nclasses) if rng.random() < 0.6]
        h = kernels.close_classes(rs, seed)
        vecs = {rs.roots[m] for c in h for m in rs.classes[c].members}
        assert is_parabolic_for_some_base(rs, h) == oracles.parabolic_by_cover(vecs, roots)


@pytest.mark.parametrize("t", SMALL[:5], ids=str)
def test_resonant_codimension_monotone(t):
    rs = root_system(t)
    _, masks = kernels.scan_closed(rs)
    sets = [frozenset(i for i in range(rs.nclasses) if m >> i & 1) for m in masks]
    for a in sets:
        for b in sets:
            if a <= b:
                assert resonant_codimension(rs, a) >= resonant_codimension(rs, b)


def test_positive_system_witness():
    rs = root_system("B", 3)
    p = standard_parabolic(rs, {2})
    s = contains_positive_system(rs, p)
    excluded = [c for c in range(rs.nclasses) if c not in p.classes]
    for c in excluded:
        assert sum(a * b for a, b in zip(rs.roots[rs.classes[c].representative], s)) < 0


@pytest.mark.parametrize("t", ALL_TYPES, ids=str)
def test_root_count_codimension_bounds_r(t):
    if not t.reduced:
        pytest.skip("root counts differ from dimensions only for non-reduced systems")
    rs = root_system(t)
    assert all(parabolic_codimension(rs, j) >= minimal_resonant_codimension(rs) for j in range(1, t.rank + 1))


def test_saturated_subalgebra_generated_by():
    rs = root_system("A", 2)
    h = SaturatedSubalgebra.generated_by(rs, [0, 1])
    assert h.classes == frozenset({0, 1, 2}) and h.is_closed and not h.is_everything
