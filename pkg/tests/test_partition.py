from fractions import Fraction as F

import pytest

from mukailab import (PartitionTerm, PreconditionError, enriques_lattice,
                      euler_hilb, hecke_block_sum, hecke_coset_transform,
                      hecke_zr, lattice_box_vectors, merge_terms,
                      multiplicity_chi, partition_z1, q_form, rank_side_terms)

LAT = enriques_lattice()
BOX0 = tuple((0, 0) for _ in range(10))


def small_box():
    # 36 vectors: sigma, f coefficients in [-1, 1], first two E8 coordinates in {0, 1}
    return ((-1, 1), (-1, 1), (0, 1), (0, 1)) + tuple((0, 0) for _ in range(6))


def test_q_form_signature():
    # Q = -(intersection form): positive on the E8 part, hyperbolic part mixed
    e1 = (0, 0, 1, 0, 0, 0, 0, 0, 0, 0)
    assert q_form(LAT, e1) == 2
    sig_plus_f = (1, 1) + (0,) * 8
    assert q_form(LAT, sig_plus_f) == -2


def test_lattice_box_count():
    assert len(lattice_box_vectors(LAT, small_box())) == 36
    assert lattice_box_vectors(LAT, BOX0) == [(0,) * 10]


def test_z1_terms_structure():
    terms = partition_z1(LAT, 2, BOX0)
    assert [t.hol_scalar for t in terms] == [F(-1, 2), F(1, 2), F(3, 2)]
    assert [t.coeff for t in terms] == [2, 24, 180]   # 2 * chi(X^[n])


def test_hecke_coset_phase_tracking():
    terms = partition_z1(LAT, 3, BOX0)
    moved = hecke_coset_transform(terms, (1, 1, 3), LAT)
    for before, after in zip(terms, moved):
        assert after.hol_scalar == before.hol_scalar / 3
        assert after.pos_coef == before.pos_coef / 3
        # phase = (2b/d) * exponent = (2/3)(n - 1/2) mod 1
        units = 2 * before.hol_scalar           # 2n - 1 at xi = 0
        assert after.phase == F(units.numerator, 3) % 1


def test_hecke_block_divisibility_filter():
    # sum over b keeps exactly the terms with d | 2n - 1 + Q(xi^2), with a
    # factor d^2 (one d from the filter, one from the measure)
    terms = partition_z1(LAT, 7, BOX0)
    block = hecke_block_sum(terms, 1, 3, LAT)
    kept = {t.hol_scalar: t.coeff for t in block}
    euler = euler_hilb(12, 7)
    expect = {}
    for n in range(8):
        if (2 * n - 1) % 3 == 0:
            expect[F(2 * n - 1, 6)] = 9 * 2 * euler[n]
    assert kept == expect


def test_hecke_block_equals_explicit_b_sum():
    # the filter agrees with literally summing the b-cosets as exact roots
    # of unity: group transformed terms by key-without-phase and sum the
    # full root-of-unity orbit (zero unless all phases vanish)
    terms = partition_z1(LAT, 5, small_box())
    d, a = 3, 1
    orbit = {}
    for b in range(d):
        for t in hecke_coset_transform(terms, (a, b, d), LAT):
            key = (t.xi, t.hol_scalar, t.pos_coef, t.neg_coef, t.x_scale)
            orbit.setdefault(key, []).append((t.phase, t.coeff))
    summed = []
    for key, parts in orbit.items():
        phases = sorted(p for p, _ in parts)
        coeff = parts[0][1]
        assert all(c == coeff for _, c in parts)
        if all(p == 0 for p in phases):
            total = d * coeff
        else:
            # nontrivial orbit: phases are (b*M/d mod 1) for d not dividing M;
            # the root-of-unity sum vanishes
            assert len(set(phases)) > 1
            total = 0
        if total:
            summed.append(PartitionTerm(key[0], d * total, key[1], key[2], key[3],
                                        x_scale=key[4]))
    assert merge_terms(summed) == hecke_block_sum(terms, a, d, LAT)


def test_hecke_zr_order_one_is_z1():
    box = small_box()
    assert hecke_zr(1, LAT, F(7, 2), box) == partition_z1(LAT, 4, box)


def test_evidence_identity_small_box():
    # (1/2) sum_b d Z^1((a tau + 2b)/d, 0) = sum_{rk w = d} d^2 chi(...) q^{...}
    box = small_box()
    n_max = 6
    z1 = partition_z1(LAT, n_max, box)
    for d in (1, 3):
        a = 3 // d
        lhs = merge_terms([PartitionTerm(t.xi, t.coeff / 2, t.hol_scalar,
                                         t.pos_coef, t.neg_coef, t.x_scale, t.phase)
                           for t in hecke_block_sum(z1, a, d, LAT)])
        rhs = rank_side_terms(d, a, LAT, n_max, box)
        assert lhs == rhs


def test_hecke_zr_even_rejected():
    with pytest.raises(PreconditionError):
        hecke_zr(4, LAT, 2, BOX0)


# --- conjectural Euler numbers ----------------------------------------------


def test_multiplicity_chi_primitive(enriques):
    v = enriques.vector(1, [0] * 10, F(-1, 2))      # <v^2> = 1
    assert multiplicity_chi(v, enriques) == 24
    v = enriques.vector(1, [0] * 10, F(1, 2))       # <v^2> = -1
    assert multiplicity_chi(v, enriques) == 2
    assert multiplicity_chi(v, enriques, per_determinant=True) == 1


def test_multiplicity_chi_triple(enriques):
    v = enriques.vector(3, [0] * 10, F(-3, 2))      # v = 3w, <w^2> = 1
    euler = euler_hilb(12, 5)
    assert multiplicity_chi(v, enriques) == 2 * euler[5] + F(2, 9) * euler[1]


def test_multiplicity_chi_even_rank(enriques):
    with pytest.raises(PreconditionError):
        multiplicity_chi(enriques.vector(2, [0] * 10, 1), enriques)


def test_hecke_zr_matches_multiplicity_chi(enriques):
    # order-3 transform at xi = 0: coefficients against the divisor formula
    terms = hecke_zr(3, LAT, F(9, 2), BOX0)
    coeffs = {t.hol_scalar: t.coeff for t in terms}
    for exponent, coeff in coeffs.items():
        sq = 6 * exponent                    # exponent = <v^2> / (2 r)
        t = -sq / 6                          # v = (3, 0, t): <v^2> = -6 t
        v = enriques.vector(3, [0] * 10, t)
        assert multiplicity_chi(v, enriques) == coeff
