from fractions import Fraction as F

import pytest

from mukailab import (LatticeMismatchError, PreconditionError, chi_of, dual,
                      exp_class, gamma_of, k3_model, mukai_mul, mukai_pair,
                      mukai_square, twist, vector_of_gamma, vector_stats)
from mukailab.lattice import random_mukai_vector, random_ns_class


def pair_oracle(v, w):
    # direct expansion of the pairing, independent of mukai_pair
    gram = v.c.lattice.gram
    inter = sum(v.c.coords[i] * gram[i][j] * w.c.coords[j]
                for i in range(len(gram)) for j in range(len(gram)))
    return inter - v.r * w.t - v.t * w.r


def test_pair_omega_unit(k3_u):
    assert mukai_pair(k3_u.omega(), k3_u.unit()) == -1


@pytest.mark.parametrize("n", range(1, 8))
def test_pair_rank_one_square(k3_u, n):
    v = k3_u.vector(1, (0, 0), 1 - n)
    assert mukai_square(v) == pair_oracle(v, v) == 2 * n - 2


@pytest.mark.parametrize("n", range(1, 8))
def test_pair_rank_two_square(k3_u, n):
    v = k3_u.vector(2, (0, 0), 1 - 2 * n)
    assert mukai_square(v) == pair_oracle(v, v) == 8 * n - 4


def test_pair_lattice_mismatch(k3_u, enriques):
    with pytest.raises(LatticeMismatchError):
        mukai_pair(k3_u.unit(), enriques.unit())


def test_pair_symmetric_bilinear(k3_u, rng):
    for _ in range(1000):
        v = random_mukai_vector(k3_u, rng)
        w = random_mukai_vector(k3_u, rng)
        u = random_mukai_vector(k3_u, rng)
        a = F(rng.randint(-5, 5), rng.randint(1, 3))
        assert mukai_pair(v, w) == mukai_pair(w, v) == pair_oracle(v, w)
        assert mukai_pair(v + w.scale(a), u) == mukai_pair(v, u) + a * mukai_pair(w, u)


def test_mul_unit_and_omega(k3_u):
    v = k3_u.vector(3, (1, -2), F(5, 2))
    assert mukai_mul(k3_u.unit(), v) == v
    assert mukai_mul(k3_u.omega(), k3_u.omega()) == k3_u.zero_vector()


def test_mul_exp_square(k3_u):
    D = k3_u.cls((2, 3))
    v = k3_u.vector(1, D, 0)
    assert mukai_mul(v, v) == k3_u.vector(1, D.scale(2), D.self_intersection())


def test_mul_ring_laws(k3_u, rng):
    for _ in range(300):
        u, v, w = (random_mukai_vector(k3_u, rng) for _ in range(3))
        assert mukai_mul(u, v) == mukai_mul(v, u)
        assert mukai_mul(mukai_mul(u, v), w) == mukai_mul(u, mukai_mul(v, w))
        assert mukai_mul(k3_u.unit(), u) == u


def test_exp_class_basic(k3_u):
    assert exp_class(k3_u.ns.zero()) == k3_u.unit()
    D = k3_u.cls((1, 2))
    assert mukai_mul(exp_class(D), exp_class(-D)) == k3_u.unit()


def test_exp_class_riemann_roch(k3_u):
    # chi(O(D)) = (D^2)/2 + 2 on a K3 surface
    D = k3_u.cls((1, 3))
    v = twist(k3_u.structure_sheaf_vector(), D)
    assert v == k3_u.vector(1, D, 1 + D.self_intersection() / 2)
    assert chi_of(v, k3_u) == D.self_intersection() / 2 + 2


def test_exp_class_homomorphism(k3_u, rng):
    for _ in range(300):
        D1 = random_ns_class(k3_u.ns, rng)
        D2 = random_ns_class(k3_u.ns, rng)
        assert mukai_mul(exp_class(D1), exp_class(D2)) == exp_class(D1 + D2)


def test_dual_involution_and_isometry(k3_u, rng):
    assert dual(k3_u.unit()) == k3_u.unit()
    for _ in range(500):
        v = random_mukai_vector(k3_u, rng)
        w = random_mukai_vector(k3_u, rng)
        assert dual(dual(v)) == v
        assert mukai_pair(dual(v), dual(w)) == mukai_pair(v, w)
        # ring anti-involution fixing degree 0 and 4
        assert dual(mukai_mul(v, w)) == mukai_mul(dual(v), dual(w))
        assert dual(v).r == v.r and dual(v).t == v.t


def test_twist_isometry(k3_u, rng):
    for _ in range(500):
        v = random_mukai_vector(k3_u, rng)
        w = random_mukai_vector(k3_u, rng)
        D = random_ns_class(k3_u.ns, rng)
        assert mukai_pair(twist(v, D), twist(w, D)) == mukai_pair(v, w)


def test_vector_stats_examples(abelian_u, k3_u):
    st = vector_stats(abelian_u.vector(2, (0, 0), -4), abelian_u)
    assert st.multiplicity == 2
    assert st.primitive_part == abelian_u.vector(1, (0, 0), -2)
    assert vector_stats(k3_u.vector(1, (0, 0), -4), k3_u).multiplicity == 1
    with pytest.raises(PreconditionError):
        vector_stats(k3_u.zero_vector(), k3_u)


def test_vector_stats_square_scaling(k3_u, rng):
    for _ in range(400):
        v = k3_u.vector(rng.randint(-6, 6), (rng.randint(-6, 6), rng.randint(-6, 6)),
                        rng.randint(-6, 6))
        if v.is_zero():
            continue
        st = vector_stats(v, k3_u)
        assert mukai_square(v) == st.multiplicity ** 2 * mukai_square(st.primitive_part)


def test_multiplicity_invariant_under_integral_twist(k3_u, rng):
    # the lattice is even, so integral twists keep the vector integral
    for _ in range(300):
        v = k3_u.vector(rng.randint(-5, 5), (rng.randint(-5, 5), rng.randint(-5, 5)),
                        rng.randint(-5, 5))
        if v.is_zero():
            continue
        D = k3_u.cls((rng.randint(-4, 4), rng.randint(-4, 4)))
        assert vector_stats(twist(v, D), k3_u).multiplicity == \
            vector_stats(v, k3_u).multiplicity


def test_enriques_parity_multiplicity(enriques):
    # integral lattice is (r, c, 2t) with 2t = r mod 2
    c0 = [0] * 10
    v = enriques.vector(2, c0, 1)          # (r, c, t - r/2) = (2, 0, 0): m = 2
    assert vector_stats(v, enriques).multiplicity == 2
    v = enriques.vector(2, c0, 2)          # (2, 0, 1): m = 1 despite gcd(2,0,4) = 2
    assert vector_stats(v, enriques).multiplicity == 1
    bad = enriques.vector(1, c0, 1)        # 2t = 2 != 1 mod 2: not integral
    with pytest.raises(PreconditionError):
        vector_stats(bad, enriques)


def test_chi_of_conventions(k3_u, abelian_u, enriques):
    assert chi_of(k3_u.structure_sheaf_vector(), k3_u) == 2
    assert chi_of(enriques.structure_sheaf_vector(), enriques) == 1
    v = abelian_u.vector(3, (1, 2), F(7, 3))
    assert chi_of(v, abelian_u) == v.t


def test_gamma_of_examples(k3_u):
    ek3 = k3_model(gram=((-2, 1), (1, 0)), names=("sigma", "f"), polarization=(1, 3))
    g = gamma_of(ek3.vector(0, (1, 0), 1), ek3)
    assert (g.rank, g.c.coords, g.chi) == (0, (F(1), F(0)), 1)
    v = k3_u.vector(1, (0, 0), -3)
    assert gamma_of(v, k3_u).chi == -2
    for vec in (v, k3_u.vector(2, (1, 1), F(1, 2))):
        assert vector_of_gamma(gamma_of(vec, k3_u), k3_u) == vec
