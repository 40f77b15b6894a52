"""Shared builders and independent oracles used across the test modules."""

from fractions import Fraction as F
from math import gcd

from mukailab import (EllipticRelativeParams, elliptic_relative_map, k3_model,
                      mukai_square, vector_stats)


def k3_with_perp(n):
    """K3 with NS = ZH + ZD, (H^2) = 2, (D^2) = -2n, (H, D) = 0."""
    return k3_model(gram=((2, 0), (0, -2 * n)), names=("h", "d"), polarization=(1, 0))


def elliptic_k3(extra_rank=0):
    """Elliptic K3: (sigma^2) = -2, (sigma, f) = 1, optional f-perp summand."""
    n = 2 + extra_rank
    gram = [[0] * n for _ in range(n)]
    gram[0][0] = -2
    gram[0][1] = gram[1][0] = 1
    for i in range(2, n):
        gram[i][i] = -2
    names = ["sigma", "f"] + ["d%d" % i for i in range(extra_rank)]
    return k3_model(gram=tuple(tuple(r) for r in gram), names=tuple(names),
                    polarization=(1, 3) + (0,) * extra_rank)


def consistent_relative_map():
    """A relative-kernel transform whose data satisfies the K3 isometry
    constraint d^2 + d k + r chi_E0 - r^2 = 1."""
    m = elliptic_k3()
    r, d, k = 3, 2, 3          # 1 - d^2 - dk + r^2 = 0 mod r
    chi_E0 = (1 - d * d - d * k + r * r) // r
    params = EllipticRelativeParams(r=r, chi_O_sigma=1, chi_F0_f=7)
    return m, elliptic_relative_map(m, params, d, k, chi_E0)


def random_enriques_vector(m, rng):
    """Random primitive odd-rank integral vector with <v^2> >= -1."""
    while True:
        r = rng.choice((1, 3, 5, 7))
        c = m.cls([rng.randint(-2, 2) for _ in range(10)])
        s = 2 * rng.randint(-4, 4) + 1
        v = m.vector(r, c, F(-s, 2))
        if mukai_square(v) < -1:
            continue
        if vector_stats(v, m).multiplicity != 1:
            continue
        return v


def euclid_sequence(r, d):
    """Remainder sequence with remainders normalized into (0, m]."""
    seq = [r]
    prev, cur = r, d
    while seq[-1] != 1:
        cur = cur % prev
        if cur == 0:
            cur = prev
        seq.append(cur)
        prev, cur = cur, -prev
    return seq


def synthetic_git_data(rng):
    from mukailab import GitData
    l = rng.randint(1, 3)
    eps = [F(rng.randint(0, 3), 7) for _ in range(l)]
    return GitData(rng.randint(5, 30), tuple(rng.randint(0, 4) for _ in range(l)),
                   tuple(eps), rng.randint(1, 5), rng.randint(2, 9))


def brute_force_walls(g, H, box, m):
    """Independent wall scan: every effective decomposition by direct cone
    arithmetic, every integer n up to a bound from maximizing over box
    corners, wall kept iff the hyperplane meets the box."""
    xi, chi = g.c, g.chi
    xiH = xi.dot(H)
    lat = m.ns
    out = set()
    xi0, xi1 = int(xi.coords[0]), int(xi.coords[1])
    for u in range(0, xi0 + 1):
        for w in range(0, xi1 + 1):
            if (u, w) in ((0, 0), (xi0, xi1)):
                continue
            D = lat.cls((u, w))
            DH = D.dot(H)
            # functional of alpha: (D,alpha)(xi,H) - (xi,alpha)(D,H)
            wvec = [xiH * D.coords[i] - DH * xi.coords[i] for i in range(2)]
            coeffs = [sum(lat.gram[i][j] * wvec[j] for j in range(2)) for i in range(2)]
            if coeffs == [0, 0]:
                continue
            corners = [(lo, hi) for lo, hi in box]
            vals = [coeffs[0] * a + coeffs[1] * b
                    for a in corners[0] for b in corners[1]]
            n_bound = max(abs(x) for x in vals) + abs(chi * DH)
            for n in range(-int(n_bound) - 1, int(n_bound) + 2):
                off = n * xiH - chi * DH
                if not (min(vals) <= off <= max(vals)):
                    continue
                ints = [int(c) for c in coeffs] + [int(off)]
                g0 = 0
                for x in ints:
                    g0 = gcd(g0, abs(x))
                ints = [x // g0 for x in ints]
                lead = next((x for x in ints[:-1] if x), 0)
                if lead < 0:
                    ints = [-x for x in ints]
                out.add(((u, w), n, tuple(ints[:-1]), ints[-1]))
    return out
