from fractions import Fraction as F
from math import gcd

import pytest

from mukailab import (GitData, GitDims, PreconditionError,
                      elliptic_gcd_reduce, enriques_reduce, euler_hilb,
                      filtration_stack_dim, git_weight, git_weight_factored,
                      lagrangian_fiber_dim, moduli_dim, mukai_square,
                      parabolic_euler, pss_bound, reduce_to_rank_one,
                      trace_rank_sequence, vector_stats)
from mukailab.lattice import k3_model

from helpers import (euclid_sequence, random_enriques_vector,
                     synthetic_git_data)


# --- rank-one reduction ------------------------------------------------------


def test_reduce_rank_one_trivial(abelian_u):
    tr = reduce_to_rank_one(1, 1, abelian_u.cls((0, 1)), 5, abelian_u)
    assert tr.steps == [] and tr.final.r == 1


def test_reduce_rank_one_worked_example(abelian_u):
    # (l, r, a) = (1, 2, -1), (c1^2) = 0: minimal lambda = 1, b = 2, k = 2
    tr = reduce_to_rank_one(1, 2, abelian_u.cls((0, 1)), -1, abelian_u)
    params = dict(tr.steps[0].params)
    assert (params["lambda"], params["b"], params["k"]) == (1, 2, 2)
    squares = {sq for sq, _ in tr.invariant_log}
    assert squares == {4}                        # <v^2> = -2*2*(-1) = 4
    assert {m for _, m in tr.invariant_log} == {1}
    assert tr.final.r == 1


def test_reduce_rank_one_random(abelian_u, rng):
    for _ in range(100):
        r = rng.randint(1, 6)
        while True:
            c = abelian_u.cls((rng.randint(-5, 5), rng.randint(-5, 5)))
            if c.content() and gcd(r, c.content()) == 1:
                break
        l = rng.randint(1, 4)
        while True:
            a = rng.randint(-8, 8)
            if a and gcd(l, a) == 1:
                break
        tr = reduce_to_rank_one(l, r, c, a, abelian_u)
        assert tr.final.r == 1
        assert len({sq for sq, _ in tr.invariant_log}) == 1
        assert {mult for _, mult in tr.invariant_log} == {1}


def test_reduce_rank_one_preconditions(abelian_u):
    with pytest.raises(PreconditionError):
        reduce_to_rank_one(2, 2, abelian_u.cls((1, 0)), 2, abelian_u)   # gcd(l, a) = 2
    with pytest.raises(PreconditionError):
        reduce_to_rank_one(1, 2, abelian_u.cls((2, 0)), 1, abelian_u)   # gcd(r, c) = 2


# --- Enriques reduction ------------------------------------------------------




def test_enriques_reduce_rank_one_input(enriques):
    v = enriques.vector(1, [0] * 10, F(-5, 2))
    red = enriques_reduce(v, enriques)
    assert red.trace.steps == []
    assert red.n == (mukai_square(v) + 1) / 2


def test_enriques_reduce_small_example(enriques):
    # r = 3, c = 0, s = 1: <v^2> = 3, n = 2, Euler number 90
    v = enriques.vector(3, [0] * 10, F(-1, 2))
    red = enriques_reduce(v, enriques)
    assert red.n == 2
    assert red.hodge.eval_ones() == euler_hilb(12, 2)[2]
    assert red.trace.final.r == 1


def test_enriques_reduce_random(enriques, rng):
    for _ in range(150):
        v = random_enriques_vector(enriques, rng)
        red = enriques_reduce(v, enriques)
        sq = mukai_square(v)
        assert red.trace.final.r == 1
        assert red.n == (sq + 1) / 2 and red.n >= 0
        assert {entry for entry in red.trace.invariant_log} == {(sq, 1)}


def test_enriques_reduce_errors(enriques):
    with pytest.raises(PreconditionError):
        enriques_reduce(enriques.vector(2, [0] * 10, 1), enriques)       # even rank
    with pytest.raises(PreconditionError):
        # primitive but <v^2> = -3 < -1
        enriques_reduce(enriques.vector(1, [0] * 10, F(3, 2)), enriques)
    with pytest.raises(PreconditionError):
        # non-primitive: (3, 0, -3/2) = 3 * (1, 0, -1/2)
        enriques_reduce(enriques.vector(3, [0] * 10, F(-3, 2)), enriques)


# --- elliptic Euclid reduction -------------------------------------------------




def test_elliptic_gcd_examples():
    tr = elliptic_gcd_reduce(1, 5)
    assert [s.move for s in tr.steps] == ["twist"] and tr.final == (1, 1)
    tr = elliptic_gcd_reduce(1, 1)
    assert tr.steps == []
    tr = elliptic_gcd_reduce(2, 1)
    assert [(s.move, s.after) for s in tr.steps] == [("fm_swap", (1, -2))]
    tr = elliptic_gcd_reduce(5, 2)
    assert [s.after for s in tr.steps] == [(2, -5), (2, 1), (1, -2)]
    assert trace_rank_sequence(tr, 5) == [5, 2, 1]


def test_elliptic_gcd_matches_euclid(rng):
    for _ in range(300):
        r = rng.randint(1, 60)
        d = rng.randint(-60, 60)
        if gcd(r, d) != 1:
            continue
        tr = elliptic_gcd_reduce(r, d)
        start = r if r > 1 else 1
        assert trace_rank_sequence(tr, r) == euclid_sequence(r, d)
        # twist steps never change the rank; transform steps swap in -rank
        for s in tr.steps:
            if s.move == "twist":
                assert s.before[0] == s.after[0]
            else:
                assert s.after == (s.before[1], -s.before[0])


def test_elliptic_gcd_rejects_common_factor():
    with pytest.raises(PreconditionError):
        elliptic_gcd_reduce(4, 2)


# --- filtration dimensions -----------------------------------------------------


def test_filtration_genus_zero_case(rng):
    # v_i = r_i sigma + a_i omega on an elliptic K3: dims = -r_i^2,
    # <v_i, v_j> = -2 r_i r_j, total -(sum r_i)^2
    m = k3_model(gram=((-2, 1), (1, 0)), names=("sigma", "f"), polarization=(1, 3))
    for _ in range(100):
        s = rng.randint(1, 5)
        rs = [rng.randint(1, 6) for _ in range(s)]
        vs = [m.vector(0, (ri, 0), rng.randint(-5, 5)) for ri in rs]
        dims = [-ri * ri for ri in rs]
        out = filtration_stack_dim(vs, dims, m)
        assert out.sum_form == -sum(rs) ** 2


def test_filtration_genus_one_case(rng):
    # v_i = r_i f + a_i omega: all pairings vanish, dims = r_i, total sum r_i
    m = k3_model(gram=((-2, 1), (1, 0)), names=("sigma", "f"), polarization=(1, 3))
    for _ in range(100):
        s = rng.randint(1, 5)
        rs = [rng.randint(1, 6) for _ in range(s)]
        vs = [m.vector(0, (0, ri), rng.randint(-5, 5)) for ri in rs]
        out = filtration_stack_dim(vs, [ri for ri in rs], m)
        assert out.sum_form == sum(rs)


def test_filtration_two_forms_agree(k3_u, rng):
    from mukailab.lattice import random_mukai_vector
    for _ in range(1000):
        s = rng.randint(1, 4)
        vs = [random_mukai_vector(k3_u, rng, span=4, denom=2) for _ in range(s)]
        dims = [mukai_square(v) + 1 for v in vs]
        out = filtration_stack_dim(vs, dims, k3_u)
        total = vs[0]
        for v in vs[1:]:
            total = total + v
        # with dims = <v_i^2> + 1, sum_form + deficit_form = <v^2> + 1
        assert out.sum_form + out.deficit_form == mukai_square(total) + 1


def test_filtration_empty():
    with pytest.raises(PreconditionError):
        filtration_stack_dim([], [], None)


# --- dimensions, bounds ----------------------------------------------------------


def test_moduli_dim(k3_u, enriques):
    v = k3_u.vector(1, (0, 0), -3)     # n = 4: coarse dim 2n = 8
    assert moduli_dim(v, k3_u, "coarse") == 8
    w = enriques.vector(3, [0] * 10, F(-1, 2))
    assert moduli_dim(w, enriques, "stack") == mukai_square(w) + 1
    with pytest.raises(PreconditionError):
        moduli_dim(enriques.vector(2, [0] * 10, 1), enriques)
    with pytest.raises(PreconditionError):
        moduli_dim(v, k3_u, "orbifold")


def test_lagrangian_fiber_dim(k3_u):
    # (xi^2) = 2g - 2 gives fiber dimension g
    for g in range(0, 6):
        xi = k3_u.cls((1, g))          # (xi^2) = 2g
        assert lagrangian_fiber_dim(xi) == g + 1


def test_pss_bound(abelian_u):
    v = abelian_u.vector(1, (1, 2), -1)
    sq, strict = pss_bound(v, abelian_u)
    assert strict
    v2 = abelian_u.vector(2, (0, 0), -2)      # m = 2, <v^2> = 8
    sq, strict = pss_bound(v2, abelian_u)
    assert sq == 8 and not strict
    v3 = abelian_u.vector(2, (0, 0), -4)      # m = 2, <v^2> = 16
    sq, strict = pss_bound(v3, abelian_u)
    assert sq == 16 and strict


# --- GIT weights and parabolic chi -----------------------------------------------




def test_git_weight_vanishes_on_trivial_blocks(rng):
    for _ in range(50):
        data = synthetic_git_data(rng)
        l = len(data.eps_i)
        dimV = data.h_m
        avw = data.a1 * data.n + data.h_m
        aiv = list(data.h_i_m)
        same = GitDims(dimV, dimV, avw, avw, tuple(aiv),
                       tuple(dimV - x for x in aiv))
        assert git_weight(same, data) == 0
        zero = GitDims(dimV, 0, avw, 0, tuple(aiv), tuple(0 for _ in aiv))
        assert git_weight(zero, data) == 0


def test_git_weight_matches_factored_form(rng):
    for _ in range(100):
        data = synthetic_git_data(rng)
        l = len(data.eps_i)
        dimV = data.h_m
        avw = data.a1 * data.n + data.h_m
        dimVp = rng.randint(1, dimV)
        dims = GitDims(dimV, dimVp, avw, rng.randint(0, 40),
                       tuple(data.h_i_m),
                       tuple(rng.randint(0, dimVp) for _ in range(l)))
        assert git_weight(dims, data) == git_weight_factored(dims, data)


def test_git_weight_linear_in_primed_block(rng):
    data = synthetic_git_data(rng)
    l = len(data.eps_i)
    dimV = data.h_m
    avw = data.a1 * data.n + data.h_m
    def weight(dimVp, avpw, kis):
        return git_weight(GitDims(dimV, dimVp, avw, avpw,
                                  tuple(data.h_i_m), tuple(kis)), data)
    w1 = weight(2, 10, [1] * l)
    w2 = weight(3, 4, [2] * l)
    w12 = weight(5, 14, [3] * l)
    assert w12 == w1 + w2


def test_parabolic_euler_examples():
    assert parabolic_euler(3, [2], [1], 5) == 5
    assert parabolic_euler(3, [2], [F(1, 2)], 5) == 3 + F(2, 2)


def test_parabolic_euler_random_single_weight(rng):
    for _ in range(200):
        chi_gr = F(rng.randint(-9, 9))
        chi_top = F(rng.randint(-9, 9))
        alpha = F(rng.randint(1, 8), 8)
        val = parabolic_euler(chi_top, [chi_gr], [alpha], chi_top + chi_gr)
        assert val == chi_top + alpha * chi_gr


def test_parabolic_euler_validation():
    with pytest.raises(PreconditionError):
        parabolic_euler(3, [2], [F(3, 2)], 5)          # weight above 1
    with pytest.raises(PreconditionError):
        parabolic_euler(3, [2], [F(1, 2)], 6)          # additivity broken
    with pytest.raises(PreconditionError):
        parabolic_euler(3, [2, 1], [F(3, 4), F(1, 4)], 6)   # ordering broken


def test_parabolic_euler_multi_step_mismatch_raises():
    # with an interior weight < 1 and chi(gr_1) != 0 the two displayed
    # forms differ; the operation reports the disagreement rather than
    # silently choosing one
    with pytest.raises(PreconditionError):
        parabolic_euler(5, [2, 3], [F(1, 4), F(1, 2)], 10)
    # trailing weights equal to one restore the identity
    assert parabolic_euler(5, [2, 3], [F(1, 4), 1], 10) == 5 + F(2, 4) + 3
