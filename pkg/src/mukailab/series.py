"""Virtual-Hodge-polynomial arithmetic and generating series.

The coefficient ring R for stack invariants is the ring of Laurent
polynomials in (x, y) over Q: the class of a quot-scheme locus divided by
e(GL(N)), a polynomial in xy, lands there.  The wall-crossing recursions
use t := xy.

Conventions: for a smooth surface e(X) = sum (-1)^{p+q} h^{p,q} x^p y^q;
the Hilbert-scheme generating series is the standard product

    sum_n e(X^[n]) z^n
        = prod_{m>=1} prod_{p,q} (1 - x^{p+m-1} y^{q+m-1} z^m)^{-(-1)^{p+q} h^{p,q}}.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, gcd

from .errors import PreconditionError
from .lattice import rat


class LaurentPoly:
    """Finitely supported map (i, j) -> Q, representing sum c_ij x^i y^j."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for (i, j), c in (terms or {}).items():
            c = rat(c)
            if c:
                clean[(int(i), int(j))] = c
        self.terms = clean

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def one(cls):
        return cls({(0, 0): 1})

    @classmethod
    def monomial(cls, i, j, c=1):
        return cls({(i, j): c})

    @classmethod
    def xy(cls, k=1, c=1):
        """c * (xy)^k."""
        return cls({(k, k): c})

    @classmethod
    def constant(cls, c):
        return cls({(0, 0): c})

    def __eq__(self, other):
        return isinstance(other, LaurentPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, Fraction(0)) + c
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, str)):
            c = rat(other)
            return LaurentPoly({k: c * v for k, v in self.terms.items()})
        out = {}
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in other.terms.items():
                k = (i1 + i2, j1 + j2)
                out[k] = out.get(k, Fraction(0)) + c1 * c2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise PreconditionError("negative-power")
        out = LaurentPoly.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    @staticmethod
    def _coerce(x):
        if isinstance(x, LaurentPoly):
            return x
        return LaurentPoly.constant(rat(x))

    def coefficient(self, i, j):
        return self.terms.get((i, j), Fraction(0))

    def eval_ones(self):
        """Euler specialization x = y = 1."""
        return sum(self.terms.values(), Fraction(0))

    def is_diagonal(self):
        return all(i == j for i, j in self.terms)

    def xy_degree(self):
        """Top power of xy for a polynomial supported on the diagonal."""
        if not self.terms:
            raise PreconditionError("zero-polynomial")
        if not self.is_diagonal():
            raise PreconditionError("not-xy-polynomial")
        return max(i for i, _ in self.terms)

    def diagonal_coefficients(self):
        if not self.is_diagonal():
            raise PreconditionError("not-xy-polynomial")
        return {i: c for (i, _), c in self.terms.items()}

    def hodge_numbers(self):
        """h^{p,q} = (-1)^{p+q} * coefficient; surface support (0..2)^2 only."""
        out = {}
        for (p, q), c in self.terms.items():
            if not (0 <= p <= 2 and 0 <= q <= 2):
                raise PreconditionError("non-surface-hodge-data")
            if c.denominator != 1:
                raise PreconditionError("non-surface-hodge-data")
            h = (-1) ** (p + q) * c.numerator
            if h < 0:
                raise PreconditionError("non-surface-hodge-data")
            out[(p, q)] = h
        return out

    def sorted_terms(self):
        return sorted(self.terms.items())

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for (i, j), c in self.sorted_terms():
            mono = "x^%d y^%d" % (i, j)
            bits.append("%s %s" % (c, mono))
        return " + ".join(bits)


@dataclass(frozen=True)
class QSeries:
    """sum a_k q^{k/denom}, truncated: exponents above ``order`` are unknown.

    Arithmetic tracks the truncation order and refuses to report
    coefficients beyond it.
    """

    denom: int
    coeffs: dict
    order: Fraction

    def __post_init__(self):
        object.__setattr__(self, "order", rat(self.order))
        clean = {}
        for k, c in self.coeffs.items():
            c = rat(c)
            if c and Fraction(k, self.denom) <= self.order:
                clean[int(k)] = c
        object.__setattr__(self, "coeffs", clean)

    def coefficient(self, exponent):
        exponent = rat(exponent)
        if exponent > self.order:
            raise PreconditionError("beyond-truncation",
                                    "coefficient of q^%s unknown at order %s" % (exponent, self.order))
        k = exponent * self.denom
        if k.denominator != 1:
            return Fraction(0)
        return self.coeffs.get(k.numerator, Fraction(0))

    def min_exponent(self):
        if not self.coeffs:
            return Fraction(0)
        return Fraction(min(self.coeffs), self.denom)

    def __add__(self, other):
        denom = self.denom * other.denom // gcd(self.denom, other.denom)
        order = min(self.order, other.order)
        out = {}
        for s in (self, other):
            m = denom // s.denom
            for k, c in s.coeffs.items():
                out[k * m] = out.get(k * m, Fraction(0)) + c
        return QSeries(denom, out, order)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, str)):
            c = rat(other)
            return QSeries(self.denom, {k: c * v for k, v in self.coeffs.items()}, self.order)
        denom = self.denom * other.denom // gcd(self.denom, other.denom)
        order = min(self.order + other.min_exponent(),
                    other.order + self.min_exponent())
        out = {}
        m1, m2 = denom // self.denom, denom // other.denom
        for k1, c1 in self.coeffs.items():
            for k2, c2 in other.coeffs.items():
                k = k1 * m1 + k2 * m2
                if Fraction(k, denom) <= order:
                    out[k] = out.get(k, Fraction(0)) + c1 * c2
        return QSeries(denom, out, order)

    __rmul__ = __mul__

    def sorted_terms(self):
        return [(Fraction(k, self.denom), c) for k, c in sorted(self.coeffs.items())]


# ---------------------------------------------------------------------------
# e(GL(N)) and the Hilbert-scheme series


def e_gl(N):
    """Virtual Hodge polynomial of GL(N): prod_{i<N} ((xy)^N - (xy)^i)."""
    if N < 1:
        raise PreconditionError("gl-rank", "N must be >= 1")
    out = LaurentPoly.one()
    for i in range(N):
        out = out * (LaurentPoly.xy(N) - LaurentPoly.xy(i))
    return out


def _binomial_factor_coeffs(exponent, kmax):
    """z-coefficients of (1 - u z)^exponent up to z^kmax (u symbolic)."""
    out = []
    for k in range(kmax + 1):
        if exponent < 0:
            out.append(Fraction(comb(-exponent + k - 1, k)))
        else:
            out.append(Fraction((-1) ** k * comb(exponent, k)) if k <= exponent else Fraction(0))
    return out


def hilb_series(hodge_xy, n_max):
    """[e(X^[0]), ..., e(X^[n_max])] from the surface Hodge polynomial."""
    hodge = hodge_xy.hodge_numbers() if isinstance(hodge_xy, LaurentPoly) \
        else LaurentPoly.constant(hodge_xy).hodge_numbers()
    series = [LaurentPoly.one()] + [LaurentPoly.zero() for _ in range(n_max)]
    for m in range(1, n_max + 1):
        for (p, q), h in sorted(hodge.items()):
            if h == 0:
                continue
            exponent = -((-1) ** (p + q)) * h
            u = LaurentPoly.monomial(p + m - 1, q + m - 1)
            coeffs = _binomial_factor_coeffs(exponent, n_max // m)
            new = [LaurentPoly.zero() for _ in range(n_max + 1)]
            for n in range(n_max + 1):
                if not series[n]:
                    continue
                upow = LaurentPoly.one()
                for k in range(0, (n_max - n) // m + 1):
                    if coeffs[k]:
                        new[n + k * m] += series[n] * upow * coeffs[k]
                    upow = upow * u
            series = new
    return series


def euler_hilb(chi_X, n_max):
    """Integer coefficients of prod (1 - q^m)^{-chi_X} up to q^{n_max}."""
    out = [0] * (n_max + 1)
    out[0] = 1
    for m in range(1, n_max + 1):
        factors = _binomial_factor_coeffs(-chi_X, n_max // m)
        new = [0] * (n_max + 1)
        for n in range(n_max + 1):
            if out[n] == 0:
                continue
            for k in range(0, (n_max - n) // m + 1):
                new[n + k * m] += out[n] * factors[k]
        out = new
    return [int(x) for x in out]


def eta_inv12(order):
    """q^{-1/2} prod_{n>=1} (1 - q^n)^{-12} through the q^{order - 1/2} term.

    The coefficient of q^{n - 1/2} is the Euler number of the n-point
    Hilbert scheme of a surface with chi = 12.
    """
    if order < 0:
        raise PreconditionError("negative-order")
    euler = euler_hilb(12, order)
    coeffs = {2 * n - 1: euler[n] for n in range(order + 1)}
    return QSeries(2, coeffs, Fraction(2 * order - 1, 2))


# ---------------------------------------------------------------------------
# Hecke cosets


def hecke_cosets(r):
    """Upper-triangular coset data (a, b, d): a d = r, 0 <= b < d; r odd.

    The list has length sigma_1(r) = sum of divisors of r.
    """
    if r < 1 or r % 2 == 0:
        raise PreconditionError("even-r", "Hecke order must be odd and positive")
    out = []
    for d in range(1, r + 1):
        if r % d:
            continue
        a = r // d
        for b in range(d):
            out.append((a, b, d))
    return out


# ---------------------------------------------------------------------------
# Wall-crossing recursions (t := xy)


def wallcross_epoly(base, strata):
    """e on the wall from one side:

        e = base + sum_strata (xy)^{-sum_{i<j} (c_i, c_j)} prod_i e_i.

    Each stratum is (pairing_matrix, [factor polys]); the exponent must be
    an integer.
    """
    out = base
    for matrix, factors in strata:
        s = len(factors)
        if len(matrix) != s or any(len(row) != s for row in matrix):
            raise PreconditionError("stratum-shape")
        total = Fraction(0)
        for i in range(s):
            for j in range(i + 1, s):
                total += rat(matrix[i][j])
        if total.denominator != 1:
            raise PreconditionError("non-integer-exponent")
        term = LaurentPoly.xy(-total.numerator)
        for fpoly in factors:
            term = term * fpoly
        out = out + term
    return out


def elliptic_epoly_recursion(side, wall, terms):
    """Elliptic-surface specialization of the wall-crossing recursion:

        e = side + sum_k e_k1 * e_k2 * (xy)^{k*l},

    where (l, d) is the wall datum and each term is (k, e_k1, e_k2).
    Note the literal exponent sign differs from wallcross_epoly; the two
    statements are reconciled by t -> 1/t on strata of this shape.
    """
    l, d = wall
    l, d = int(l), int(d)
    if l <= 0:
        raise PreconditionError("malformed-datum", "fiber multiple l must be positive")
    out = side
    for k, e1, e2 in terms:
        k = int(k)
        if k <= 0:
            raise PreconditionError("malformed-datum", "k must be positive")
        out = out + e1 * e2 * LaurentPoly.xy(k * l)
    return out
