"""Rank-r partition functions on an Enriques lattice and Hecke transforms.

A term of the rank-1 partition function is indexed by a Hilbert-scheme
level n and a lattice vector xi:

    2 chi(X^[n]) q^{(n - 1/2) + Q(xi_L^2)/2} qbar^{-Q(xi_R^2)/2} e^{Q(xi, x)},

where Q = -(intersection form) has signature (9,1) and (xi_L, xi_R) is
the split under an (unchosen) period point.  Terms are kept symbolic: the
split pieces are carried as tagged exponent coefficients on the vector
label, never as numbers, and the elliptic variable x stays at 0.

The Hecke transform of order r (odd) averages over the coset data (a, b, d):
tau -> (a tau + 2b)/d rescales both tagged exponents by a/d and multiplies
each term by the exact root of unity e^{2 pi i (2b/d) ((n-1/2)+Q(xi^2)/2)};
summation over b is the divisibility filter d | 2n-1+Q(xi^2).
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction

from .errors import PreconditionError
from .lattice import mukai_square, rat, vector_stats
from .series import euler_hilb, hecke_cosets

ENRIQUES_EULER = 12


@dataclass(frozen=True)
class PartitionTerm:
    """One symbolic term of a partition function.

    hol_scalar is the split-independent part of the holomorphic exponent;
    pos_coef / neg_coef multiply Q(xi_L^2) and Q(xi_R^2) respectively
    (always opposite, which keeps the phase computable without a period
    point).  ``phase`` is the exponent of an exact root of unity e^{2 pi i
    phase}; ``x_scale`` tracks the elliptic-variable substitution x -> a x.
    """

    xi: tuple
    coeff: Fraction
    hol_scalar: Fraction
    pos_coef: Fraction
    neg_coef: Fraction
    x_scale: int = 1
    phase: Fraction = Fraction(0)

    def key(self):
        return (self.xi, self.hol_scalar, self.pos_coef, self.neg_coef,
                self.x_scale, self.phase)


def q_form(lat, xi):
    """Q(xi^2) = -(xi . xi): positive definite on the 9-dimensional part."""
    return -lat.pair_coords(xi, xi)


def merge_terms(terms):
    acc = {}
    for t in terms:
        if all(x == 0 for x in t.xi):
            # split tags and the elliptic scaling are vacuous on xi = 0
            t = replace(t, pos_coef=Fraction(0), neg_coef=Fraction(0), x_scale=1)
        acc[t.key()] = acc.get(t.key(), Fraction(0)) + t.coeff
    out = [PartitionTerm(xi=xi, coeff=c, hol_scalar=hol, pos_coef=pos,
                         neg_coef=neg, x_scale=xs, phase=ph)
           for (xi, hol, pos, neg, xs, ph), c in acc.items() if c]
    out.sort(key=lambda t: (t.hol_scalar, t.xi, t.pos_coef, t.x_scale, t.phase))
    return out


def lattice_box_vectors(lat, box):
    """All integer vectors with coordinates in the given (lo, hi) bounds."""
    if len(box) != lat.rank:
        raise PreconditionError("box-shape")
    out = [()]
    for lo, hi in box:
        lo, hi = int(lo), int(hi)
        if lo > hi:
            raise PreconditionError("empty-box")
        out = [v + (x,) for v in out for x in range(lo, hi + 1)]
    return out


def partition_z1(lat, n_max, box):
    """Term list of the rank-1 partition function over a lattice box.

    The overall factor 2 carried by every coefficient is the torsion
    contribution of the second cohomology.
    """
    euler = euler_hilb(ENRIQUES_EULER, n_max)
    terms = []
    for xi in lattice_box_vectors(lat, box):
        for n in range(n_max + 1):
            terms.append(PartitionTerm(
                xi=xi,
                coeff=Fraction(2 * euler[n]),
                hol_scalar=Fraction(2 * n - 1, 2),
                pos_coef=Fraction(1, 2),
                neg_coef=Fraction(-1, 2),
            ))
    return merge_terms(terms)


def _phase_units(term, lat):
    """2 * (holomorphic - antiholomorphic exponent): an exact integer."""
    if term.pos_coef != -term.neg_coef:
        raise PreconditionError("tagged-exponents",
                                "terms must carry opposite split tags")
    val = 2 * (term.hol_scalar + term.pos_coef * q_form(lat, term.xi))
    if val.denominator != 1:
        raise PreconditionError("non-integral-phase")
    return val.numerator


def hecke_coset_transform(terms, coset, lat):
    """Apply tau -> (a tau + 2 b)/d, x -> a x to a term list (one coset).

    Exponents rescale by a/d; each term picks up the exact root of unity
    e^{2 pi i (2b/d) E} with E the term's pre-transform exponent value.
    """
    a, b, d = coset
    scale = Fraction(a, d)
    out = []
    for t in terms:
        units = _phase_units(t, lat)
        phase = (t.phase + Fraction(b * units, d)) % 1
        out.append(PartitionTerm(t.xi, t.coeff, scale * t.hol_scalar,
                                 scale * t.pos_coef, scale * t.neg_coef,
                                 x_scale=a * t.x_scale, phase=phase))
    return out


def hecke_block_sum(terms, a, d, lat):
    """sum_{0 <= b < d} d * (coset (a, b, d) transform), with the b-sum
    evaluated exactly: a term survives iff d divides its doubled exponent,
    contributing an extra factor d."""
    scale = Fraction(a, d)
    out = []
    for t in terms:
        units = _phase_units(t, lat)
        if t.phase != 0:
            raise PreconditionError("phase-collision",
                                    "block sum expects untransformed input terms")
        if units % d:
            continue
        out.append(PartitionTerm(t.xi, t.coeff * d * d, scale * t.hol_scalar,
                                 scale * t.pos_coef, scale * t.neg_coef,
                                 x_scale=a * t.x_scale))
    return merge_terms(out)


def hecke_zr(r, lat, order, box):
    """Hecke transform of order r of the rank-1 term list:

        Z^r = (1/r^2) sum_{(a,b,d)} d * Z^1((a tau + 2b)/d, a x),

    returned with all b-sums evaluated through the divisibility filter.
    ``order`` bounds the split-independent part of the output exponent, so
    every reported coefficient is complete: each divisor block is fed the
    rank-1 terms up to its own source level (a/d)(n - 1/2) <= order.
    """
    if r < 1 or r % 2 == 0:
        raise PreconditionError("even-r")
    order = rat(order)
    blocks = []
    seen = set()
    for a, b, d in hecke_cosets(r):
        if (a, d) in seen:
            continue
        seen.add((a, d))
        n_block = (order * d / a) + Fraction(1, 2)
        if n_block < 0:
            continue
        z1 = partition_z1(lat, int(n_block), box)
        blocks.extend(hecke_block_sum(z1, a, d, lat))
    inv = Fraction(1, r * r)
    return merge_terms([replace(t, coeff=t.coeff * inv) for t in blocks])


def rank_side_terms(d, a, lat, n_max, box):
    """The Mukai-vector side of the order-r evidence identity for one d | r:

        sum over w = (d, xi, -k/2) of
        d^2 chi(X^[(..w..^2+1)/2]) q^{(a/2d) <w^2>} (tagged split pieces),

    where k runs over the integers with k d = 2n - 1 + Q(xi^2), n <= n_max.
    """
    euler = euler_hilb(ENRIQUES_EULER, n_max)
    out = []
    for xi in lattice_box_vectors(lat, box):
        qv = q_form(lat, xi)
        for n in range(n_max + 1):
            if (2 * n - 1 + qv) % d:
                continue
            # <w^2> = 2n - 1 for w = (d, xi, -k/2); exponent (a/2d)<w^2>
            out.append(PartitionTerm(
                xi=xi,
                coeff=Fraction(d * d * euler[n]),
                hol_scalar=Fraction(a * (2 * n - 1), 2 * d),
                pos_coef=Fraction(a, 2 * d),
                neg_coef=Fraction(-a, 2 * d),
                x_scale=a,
            ))
    return merge_terms(out)


def multiplicity_chi(v, m, per_determinant=False):
    """Euler number the order-r conjecture assigns to a rank-odd class:

        sum over v = a*w (w integral) of (2/a^2) chi(X^[(<w^2>+1)/2]).

    Classes with <w^2> < -1 contribute 0.  ``per_determinant`` divides by
    the determinant-component factor 2.
    """
    if m.kind != "enriques":
        raise PreconditionError("surface-kind")
    if v.r.denominator != 1 or v.r <= 0 or v.r.numerator % 2 == 0:
        raise PreconditionError("even-rank", "rank must be odd and positive")
    stats = vector_stats(v, m)
    total = Fraction(0)
    needed = []
    for a in range(1, stats.multiplicity + 1):
        if stats.multiplicity % a:
            continue
        w = v.scale(Fraction(1, a))
        sq = mukai_square(w)
        if sq < -1:
            continue
        n2 = sq + 1
        if n2 % 2:
            raise PreconditionError("odd-square", "<w^2> must be odd on this lattice")
        needed.append((a, int(n2 // 2)))
    if not needed:
        return total
    euler = euler_hilb(ENRIQUES_EULER, max(n for _, n in needed))
    for a, n in needed:
        total += Fraction(2, a * a) * euler[n]
    return total / 2 if per_determinant else total
