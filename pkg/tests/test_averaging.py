import json
import random
from fractions import Fraction as F

import pytest

import oracles
from conftest import HIGHER_RANK
from rescodim import averaging, linalg
from rescodim.averaging import (CITATIONS, Rule, choose_base,
                                choose_beta_prime, random_functional, replay,
                                root_string, run_averaging, run_product,
                                select_beta_hat, select_s1, select_s2)
from rescodim.dims import GroupSpec
from rescodim.errors import (CallerOrderError, DegenerateInputError,
                             InfeasibleSelectionError, RankError,
                             SideConditionError)
from rescodim.roots import (HIGHEST_ROOT_FAMILIES, highest_root,
                            outside_lower_span, root_system,
                            second_highest_root)


def test_choose_base_identity_when_alpha1_pairs():
    rs = root_system("A", 3)
    assert choose_base(rs, rs.base[0]).is_identity


def test_choose_base_a2_alpha2():
    rs = root_system("A", 2)
    w = choose_base(rs, rs.base[1])
    assert 1 <= len(w.word) <= 3
    assert outside_lower_span(rs, w.apply(rs.base[1]))


def test_choose_base_zero():
    rs = root_system("B", 2)
    with pytest.raises(DegenerateInputError):
        choose_base(rs, (0, 0))
    with pytest.raises(DegenerateInputError):
        choose_base(root_system("A", 2), (1, 1, 1))


@pytest.mark.parametrize("n", range(2, 9))
def test_beta_hat_type_a_is_highest(n):
    rs = root_system("A", n)
    assert rs.coeffs[select_beta_hat(rs)] == (1,) * n


def test_beta_hat_c3_and_bc2():
    c3 = root_system("C", 3)
    assert select_beta_hat(c3) == second_highest_root(c3)
    bc2 = root_system("BC", 2)
    b = select_beta_hat(bc2)
    assert b == second_highest_root(bc2)
    v = bc2.roots[b]
    others = [w for w in bc2.roots if w != v and linalg.rank([v, w]) < 2 and linalg.dot(v, w) > 0]
    assert others == []


def test_beta_hat_needs_rank_two():
    with pytest.raises(RankError):
        select_beta_hat(root_system("A", 1))


@pytest.mark.parametrize("t", HIGHER_RANK, ids=str)
def test_beta_hat_remark_properties(t):
    rs = root_system(t)
    b = select_beta_hat(rs)
    want = highest_root(rs) if t.family in HIGHEST_ROOT_FAMILIES else second_highest_root(rs)
    assert b == want
    roots = set(rs.roots)
    for a in rs.base[1:]:
        assert linalg.add(rs.roots[b], a) not in roots
    chain = root_string(rs)
    assert chain[0] == rs.simple[0] and chain[-1] == b
    for x, y in zip(chain, chain[1:]):
        assert linalg.sub(rs.roots[y], rs.roots[x]) in rs.base[1:]
    # beta_hat and alpha_1 are never proportional
    assert linalg.rank([rs.roots[b], rs.base[0]]) == 2


def test_root_strings_small():
    a2 = root_system("A", 2)
    assert [a2.coeffs[i] for i in root_string(a2)] == [(1, 0), (1, 1)]
    a4 = root_system("A", 4)
    assert [a4.coeffs[i] for i in root_string(a4)] == [(1, 0, 0, 0), (1, 1, 0, 0), (1, 1, 1, 0), (1, 1, 1, 1)]
    g2 = root_system("G2")
    chain = root_string(g2)
    assert chain[-1] == second_highest_root(g2)


def test_s1_alpha1():
    rs = root_system("B", 3)
    s = select_s1(rs, rs.base[0])
    assert linalg.dot(rs.base[0], s) > 0
    assert all(linalg.dot(a, s) == 0 for a in rs.base[1:])
    assert all(isinstance(x, int) or x.denominator == 1 for x in s)


def test_s1_requires_base_change():
    rs = root_system("A", 3)
    with pytest.raises(CallerOrderError):
        select_s1(rs, rs.base[1])


@pytest.mark.parametrize("t", HIGHER_RANK, ids=str)
def test_s1_random_substitution(t):
    rs = root_system(t)
    rng = random.Random(f"s1 {t}")
    for _ in range(5):
        lam = random_functional(rs, rng)
        wl = rs.project(choose_base(rs, lam).apply(lam))
        s = select_s1(rs, wl)
        assert linalg.dot(wl, s) > 0
        assert all(linalg.dot(a, s) == 0 for a in rs.base[1:])


def test_s2_examples():
    rs = root_system("C", 3)
    bh = select_beta_hat(rs)
    s = select_s2(rs, bh, rs.base[0])
    assert linalg.dot(rs.roots[bh], s) == 0 and linalg.dot(rs.base[0], s) > 0
    with pytest.raises(InfeasibleSelectionError):
        select_s2(rs, bh, linalg.scale(3, rs.roots[bh]))


@pytest.mark.parametrize("t", HIGHER_RANK, ids=str)
def test_s2_random_substitution(t):
    rs = root_system(t)
    rng = random.Random(f"s2 {t}")
    bh = select_beta_hat(rs)
    for _ in range(5):
        lam2 = random_functional(rs, rng)
        bp = choose_beta_prime(rs, bh, lam2)
        s = select_s2(rs, bp, lam2)
        assert linalg.dot(rs.roots[bp], s) == 0 and linalg.dot(lam2, s) > 0


def test_beta_prime_case_split():
    rs = root_system("A", 3)
    bh = select_beta_hat(rs)
    generic = (F(3), F(1), F(0), F(-4))
    assert choose_beta_prime(rs, bh, generic) == bh
    assert choose_beta_prime(rs, bh, generic, prefer="alpha1") == 0
    assert choose_beta_prime(rs, bh, linalg.scale(2, rs.roots[bh])) == 0
    assert choose_beta_prime(rs, bh, rs.base[0], prefer="alpha1") == bh
    with pytest.raises(ValueError):
        choose_beta_prime(rs, bh, generic, prefer="delta")


def test_a2_generic_reaches_everything():
    rs = root_system("A", 2)
    tr = run_averaging(rs, (F(2), F(-1, 3), F(5)))
    assert tr.final.classes == frozenset(range(6)) and tr.final.a_invariant
    assert replay(tr)


def sl_lambda(n):
    return (F(1),) + (F(0),) * (n - 1)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_sl_concordance(n):
    rs = root_system("A", n - 1)
    tr = run_averaging(rs, sl_lambda(n))
    assert tr.base_change.is_identity
    # s1 on the line of log diag(6^-(n-1), 6, ..., 6)
    log_s1 = [-(n - 1)] + [1] * (n - 1)
    assert linalg.rank([tr.s1, log_s1]) == 1
    assert tuple(tr.s1) == tuple([n - 1] + [-1] * (n - 1))
    # U: unipotent lower-right block, i.e. e_i - e_j with 2 <= i < j
    block = {tuple(F(int(k == i) - int(k == j)) for k in range(n)) for i in range(1, n) for j in range(i + 1, n)}
    assert {rs.roots[i] for i in tr.u_roots} == block
    delta = tuple(F(int(k == 0) - int(k == n - 1)) for k in range(n))
    assert {rs.roots[i] for i in tr.u_prime_roots} == {delta}
    alt = run_averaging(rs, sl_lambda(n), prefer="alpha1")
    assert {rs.roots[i] for i in alt.u_prime_roots} == {rs.base[0]}
    # lambda2 proportional to delta forces U' = g^{alpha_1}
    forced = run_averaging(rs, sl_lambda(n), lambda2=linalg.scale(2, delta))
    assert {rs.roots[i] for i in forced.u_prime_roots} == {rs.base[0]}


def test_lambda2_must_be_positive_on_s1():
    rs = root_system("A", 3)
    with pytest.raises(SideConditionError):
        run_averaging(rs, sl_lambda(4), lambda2=(F(-1), F(0), F(0), F(0)))


def test_wrong_length_lambda():
    with pytest.raises(DegenerateInputError):
        run_averaging(root_system("A", 2), (1, 0))


@pytest.mark.parametrize("t", HIGHER_RANK, ids=str)
def test_steps_and_witnesses(t):
    rs = root_system(t)
    rng = random.Random(f"steps {t}")
    tr = run_averaging(rs, random_functional(rs, rng))
    rules = [st.rule for st in tr.steps]
    assert rules[:6] == [Rule.AVERAGE_OVER_U, Rule.AVERAGE_OVER_A, Rule.RATNER_NEGATION,
                         Rule.COMMUTATION_TRANSFER, Rule.AVERAGE_OVER_U, Rule.AVERAGE_OVER_A]
    for st in tr.steps:
        s, lam = st.exponent_witness
        assert linalg.dot(lam, s) > 0
        assert st.justification == CITATIONS[st.rule]
        if st.rule in (Rule.AVERAGE_OVER_U, Rule.COMMUTATION_TRANSFER):
            assert all(linalg.dot(rs.roots[i], s) == 0 for i in st.subgroup_roots)
    # oracle: the final classes cover every root and are closed
    roots = set(rs.roots)
    vecs = {rs.roots[m] for c in tr.final.classes for m in rs.classes[c].members}
    assert vecs == roots and oracles.is_closed(vecs, roots)


def test_determinism():
    rs = root_system("F4")
    lam = (F(1, 2), F(-3), F(2, 5), F(7))
    assert averaging.dumps(run_averaging(rs, lam)) == averaging.dumps(run_averaging(rs, lam))


@pytest.mark.parametrize("t", HIGHER_RANK[::3], ids=str)
def test_serialization_roundtrip(t):
    rs = root_system(t)
    tr = run_averaging(rs, random_functional(rs, random.Random(str(t))))
    text = averaging.dumps(tr)
    assert averaging.loads(text) == tr
    assert averaging.loads(averaging.dumps(tr, lines=False)) == tr
    assert replay(text) and replay(averaging.to_dict(tr))
    assert json.loads(text.splitlines()[0])["record"] == "header"


def tampered(tr, edit):
    d = averaging.to_dict(tr)
    edit(d)
    return d


def test_deleted_class_is_caught_at_its_step():
    rs = root_system("B", 3)
    tr = run_averaging(rs, (F(1), F(2), F(-3)))
    for k in (0, 3, len(tr.steps) - 1):
        d = tampered(tr, lambda d: d["steps"][k]["invariant"].pop())
        res = replay(d)
        assert not res and res.step == k


def test_deleted_subgroup_root_is_caught():
    rs = root_system("A", 4)
    tr = run_averaging(rs, (F(1), F(0), F(2), F(0), F(-1)))
    res = replay(tampered(tr, lambda d: d["steps"][0]["subgroup"].pop()))
    assert not res and res.step == 0


def test_forged_witness():
    rs = root_system("G2")
    tr = run_averaging(rs, (F(1), F(2), F(-3)))

    def flip(d):
        d["steps"][2]["witness"]["s"] = [str(-F(x)) for x in d["steps"][2]["witness"]["s"]]

    res = replay(tampered(tr, flip))
    assert not res and res.step == 2

    def zero(d):
        d["steps"][1]["witness"]["s"] = ["0"] * 3

    res = replay(tampered(tr, zero))
    assert not res and res.step == 1


def test_header_tampering():
    rs = root_system("C", 3)
    tr = run_averaging(rs, (F(1), F(1), F(-2)))
    res = replay(tampered(tr, lambda d: d.update(s1=["1", "1", "1"])))
    assert not res and res.step is None
    assert not replay("not a trace")
    assert not replay(tampered(tr, lambda d: d["steps"].pop()))


def test_wrong_citation():
    rs = root_system("A", 2)
    tr = run_averaging(rs, (F(1), F(0), F(0)))
    res = replay(tampered(tr, lambda d: d["steps"][1].update(citation="equidistribution-averaging")))
    assert not res and res.step == 1


def test_run_product():
    out = run_product(GroupSpec.parse("A2,B2*,G2"), [(1, 0, 0), None, (1, 2, -3)])
    assert out[1] is None and out[0].closure_is_everything and out[2].closure_is_everything
    with pytest.raises(RankError):
        run_product(GroupSpec.parse("A2,A1"), [(1, 0, 0), (1, 0)])
    with pytest.raises(ValueError):
        run_product(GroupSpec.parse("A2"), [])
