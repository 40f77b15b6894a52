"""Exact Mukai-lattice arithmetic.

Surfaces are modelled by their numerical data only: a Neron-Severi Gram
matrix, chi(O_X), an ample class, and an effective-cone oracle.  A Mukai
vector is a triple (r, c, t) where r is the rank, c a rational NS class
and t the coefficient of the point class omega.  The pairing is

    <v, w> = (c_v . c_w) - r_v t_w - t_v r_w,

so that <omega, 1> = -1.  Everything is immutable and computed over exact
rationals; no floating point appears anywhere in this package.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import LatticeMismatchError, PreconditionError


def rat(x):
    """Coerce int / Fraction / "p/q" string to an exact Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise PreconditionError("not-a-rational", repr(x))
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise PreconditionError("not-a-rational", repr(x))


def _gcd_many(values):
    g = 0
    for v in values:
        g = gcd(g, abs(v))
    return g


@dataclass(frozen=True)
class NSLattice:
    """A free Z-module with a symmetric integer intersection form."""

    gram: tuple
    basis_names: tuple

    def __post_init__(self):
        gram = tuple(tuple(int(x) for x in row) for row in self.gram)
        object.__setattr__(self, "gram", gram)
        object.__setattr__(self, "basis_names", tuple(self.basis_names))
        n = len(gram)
        if len(self.basis_names) != n:
            raise PreconditionError("basis-size", "need one name per basis vector")
        for i in range(n):
            if len(gram[i]) != n:
                raise PreconditionError("gram-not-square")
            for j in range(n):
                if gram[i][j] != gram[j][i]:
                    raise PreconditionError("gram-not-symmetric")

    @property
    def rank(self):
        return len(self.gram)

    def cls(self, coords):
        return NSClass(self, tuple(rat(x) for x in coords))

    def zero(self):
        return self.cls([0] * self.rank)

    def basis_class(self, i):
        return self.cls([1 if j == i else 0 for j in range(self.rank)])

    def named(self, name):
        return self.basis_class(self.basis_names.index(name))

    def pair_coords(self, a, b):
        total = Fraction(0)
        for i, ai in enumerate(a):
            if not ai:
                continue
            row = self.gram[i]
            total += ai * sum(row[j] * bj for j, bj in enumerate(b) if bj)
        return total


@dataclass(frozen=True)
class NSClass:
    """A rational divisor class in a fixed NS lattice basis."""

    lattice: NSLattice
    coords: tuple

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(rat(x) for x in self.coords))
        if len(self.coords) != self.lattice.rank:
            raise PreconditionError("coords-length", "expected rank %d" % self.lattice.rank)

    def _check(self, other):
        if self.lattice != other.lattice:
            raise LatticeMismatchError()

    def __add__(self, other):
        self._check(other)
        return NSClass(self.lattice, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        self._check(other)
        return NSClass(self.lattice, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        return NSClass(self.lattice, tuple(-a for a in self.coords))

    def scale(self, k):
        k = rat(k)
        return NSClass(self.lattice, tuple(k * a for a in self.coords))

    __mul__ = scale
    __rmul__ = scale

    def dot(self, other):
        """Intersection pairing (self . other) under the Gram form."""
        self._check(other)
        return self.lattice.pair_coords(self.coords, other.coords)

    def self_intersection(self):
        return self.dot(self)

    def is_zero(self):
        return all(a == 0 for a in self.coords)

    def is_integral(self):
        return all(a.denominator == 1 for a in self.coords)

    def content(self):
        """gcd of the (integral) coordinates; 0 for the zero class."""
        if not self.is_integral():
            raise PreconditionError("non-integral-class")
        return _gcd_many(a.numerator for a in self.coords)

    def int_coords(self):
        if not self.is_integral():
            raise PreconditionError("non-integral-class")
        return tuple(a.numerator for a in self.coords)


# ---------------------------------------------------------------------------
# Standard lattices


def hyperbolic_lattice(names=("e", "f")):
    """Rank-2 even unimodular lattice U: (e^2)=(f^2)=0, (e,f)=1."""
    return NSLattice(((0, 1), (1, 0)), names)


# Cartan matrix of E8 (node 8 hangs off node 5), negated.  Even, negative
# definite, unimodular; unimodularity is what makes the pairing functionals
# surjective onto Z for primitive classes.
_E8 = (
    (2, -1, 0, 0, 0, 0, 0, 0),
    (-1, 2, -1, 0, 0, 0, 0, 0),
    (0, -1, 2, -1, 0, 0, 0, 0),
    (0, 0, -1, 2, -1, 0, 0, 0),
    (0, 0, 0, -1, 2, -1, 0, -1),
    (0, 0, 0, 0, -1, 2, -1, 0),
    (0, 0, 0, 0, 0, -1, 2, 0),
    (0, 0, 0, 0, -1, 0, 0, 2),
)


def e8_minus_gram():
    return tuple(tuple(-x for x in row) for row in _E8)


def enriques_lattice():
    """(Z sigma + Z f) perp E8(-1): the torsion-free H^2 of an Enriques surface."""
    names = ("sigma", "f") + tuple("e%d" % i for i in range(1, 9))
    e8 = e8_minus_gram()
    gram = []
    for i in range(10):
        row = []
        for j in range(10):
            if i < 2 and j < 2:
                row.append(1 if i != j else 0)
            elif i >= 2 and j >= 2:
                row.append(e8[i - 2][j - 2])
            else:
                row.append(0)
        gram.append(tuple(row))
    return NSLattice(tuple(gram), names)


# ---------------------------------------------------------------------------
# Surface models


KINDS = ("abelian", "k3", "enriques", "elliptic-with-section", "generic")

_CHI_O = {"abelian": 0, "k3": 2, "enriques": 1}


@dataclass(frozen=True)
class SurfaceModel:
    """Numerical model of a surface: lattice, chi(O), polarization, cone.

    ``epsilon`` is the rank shift in t = chi - epsilon*r, meaningful for
    abelian (0) and K3 (1) surfaces; all chi conversions in this package go
    through the uniform rule chi = t + r*chi_O/2, which reproduces epsilon
    on those two kinds and gives the half-integral shift on Enriques.
    """

    kind: str
    ns: NSLattice
    chi_O: int
    polarization: NSClass
    epsilon: int = 0
    h1_O: int = 0
    half_integral: bool = False
    effective_generators: tuple = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise PreconditionError("unknown-kind", self.kind)
        if self.kind in _CHI_O and self.chi_O != _CHI_O[self.kind]:
            raise PreconditionError("chi-O-kind", "%s needs chi_O=%d" % (self.kind, _CHI_O[self.kind]))
        if self.kind in ("abelian", "k3") and self.epsilon != (0 if self.kind == "abelian" else 1):
            raise PreconditionError("epsilon-kind")
        if self.polarization.lattice != self.ns:
            raise LatticeMismatchError("polarization lives on a different lattice")
        if self.polarization.self_intersection() <= 0:
            raise PreconditionError("polarization-not-positive", "(H^2) must be > 0")
        gens = self.effective_generators
        if gens is not None:
            gens = tuple(gens)
            for g in gens:
                if g.lattice != self.ns:
                    raise LatticeMismatchError("effective generator on wrong lattice")
            if _solve_matrix_rank(gens) != len(gens):
                raise PreconditionError("dependent-generators",
                                        "effective cone generators must be linearly independent")
            object.__setattr__(self, "effective_generators", gens)

    @property
    def chi_shift(self):
        return Fraction(self.chi_O, 2)

    def cls(self, coords):
        return self.ns.cls(coords)

    def vector(self, r, c, t):
        if not isinstance(c, NSClass):
            c = self.ns.cls(c)
        elif c.lattice != self.ns:
            raise LatticeMismatchError()
        return MukaiVector(rat(r), c, rat(t))

    def omega(self):
        return self.vector(0, self.ns.zero(), 1)

    def unit(self):
        return self.vector(1, self.ns.zero(), 0)

    def zero_vector(self):
        return self.vector(0, self.ns.zero(), 0)

    def structure_sheaf_vector(self):
        """v(O_X) = (1, 0, chi(O_X) - epsilon-shift) = (1, 0, chi_O/2)."""
        return self.vector(1, self.ns.zero(), self.chi_shift)

    def effective(self, D):
        """Cone-membership test against the generator list."""
        gens = self.effective_generators
        if gens is None:
            raise PreconditionError("no-effective-oracle",
                                    "this model has no effective-cone generators")
        coeffs = _solve_in_span(gens, D)
        return coeffs is not None and all(x >= 0 for x in coeffs)


def _solve_matrix_rank(gens):
    rows = [list(g.coords) for g in gens]
    rank = 0
    cols = len(rows[0]) if rows else 0
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c] / rows[r][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        r += 1
        rank += 1
    return rank


def _solve_in_span(gens, D):
    """Solve D = sum lambda_i gens_i exactly; None if D is outside the span."""
    n = D.lattice.rank
    k = len(gens)
    aug = [[gens[j].coords[i] for j in range(k)] + [D.coords[i]] for i in range(n)]
    piv_cols = []
    r = 0
    for c in range(k):
        piv = next((i for i in range(r, n) if aug[i][c] != 0), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = 1 / aug[r][c]
        aug[r] = [x * inv for x in aug[r]]
        for i in range(n):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        piv_cols.append(c)
        r += 1
    for i in range(r, n):
        if aug[i][k] != 0:
            return None
    out = [Fraction(0)] * k
    for row, c in zip(range(r), piv_cols):
        out[c] = aug[row][k]
    return out


def abelian_model(gram=None, names=None, polarization=(1, 1), effective_generators=None):
    lat = NSLattice(gram, names) if gram is not None else hyperbolic_lattice()
    m = SurfaceModel("abelian", lat, 0, lat.cls(polarization), epsilon=0, h1_O=2,
                     effective_generators=None)
    return _with_gens(m, effective_generators)


def k3_model(gram=((0, 1), (1, 0)), names=("e", "f"), polarization=(1, 1),
             effective_generators=None):
    lat = NSLattice(gram, names)
    m = SurfaceModel("k3", lat, 2, lat.cls(polarization), epsilon=1)
    return _with_gens(m, effective_generators)


def elliptic_model(sigma_sq=-1, chi_O=1, polarization=(1, 3), effective=True):
    """Rank-2 elliptic surface with a section: NS = Z sigma + Z f.

    (sigma^2) = sigma_sq, (sigma,f) = 1, (f^2) = 0.  The default effective
    cone is the conservative one spanned by sigma and f.
    """
    lat = NSLattice(((sigma_sq, 1), (1, 0)), ("sigma", "f"))
    gens = (lat.basis_class(0), lat.basis_class(1)) if effective else None
    return SurfaceModel("elliptic-with-section", lat, chi_O, lat.cls(polarization),
                        effective_generators=gens)


def enriques_model(polarization=None):
    lat = enriques_lattice()
    if polarization is None:
        polarization = [1, 1] + [0] * 8
    return SurfaceModel("enriques", lat, 1, lat.cls(polarization), h1_O=0,
                        half_integral=True)


def generic_model(gram, names, polarization, chi_O=0, effective_generators=None):
    lat = NSLattice(gram, names)
    m = SurfaceModel("generic", lat, chi_O, lat.cls(polarization))
    return _with_gens(m, effective_generators)


def _with_gens(m, gens):
    if gens is None:
        return m
    gens = tuple(g if isinstance(g, NSClass) else m.ns.cls(g) for g in gens)
    return SurfaceModel(m.kind, m.ns, m.chi_O, m.polarization, epsilon=m.epsilon,
                        h1_O=m.h1_O, half_integral=m.half_integral,
                        effective_generators=gens)


# ---------------------------------------------------------------------------
# Mukai vectors


@dataclass(frozen=True)
class MukaiVector:
    """(rank, NS class, omega coefficient) with exact rational entries."""

    r: Fraction
    c: NSClass
    t: Fraction

    def __post_init__(self):
        object.__setattr__(self, "r", rat(self.r))
        object.__setattr__(self, "t", rat(self.t))

    def _check(self, other):
        if self.c.lattice != other.c.lattice:
            raise LatticeMismatchError()

    def __add__(self, other):
        self._check(other)
        return MukaiVector(self.r + other.r, self.c + other.c, self.t + other.t)

    def __sub__(self, other):
        self._check(other)
        return MukaiVector(self.r - other.r, self.c - other.c, self.t - other.t)

    def __neg__(self):
        return MukaiVector(-self.r, -self.c, -self.t)

    def scale(self, k):
        k = rat(k)
        return MukaiVector(k * self.r, self.c.scale(k), k * self.t)

    __mul__ = scale
    __rmul__ = scale

    def is_zero(self):
        return self.r == 0 and self.t == 0 and self.c.is_zero()


@dataclass(frozen=True)
class GammaTriple:
    """(rank, c_1, chi) image of a K-theory class."""

    rank: Fraction
    c: NSClass
    chi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "rank", rat(self.rank))
        object.__setattr__(self, "chi", rat(self.chi))

    def __neg__(self):
        return GammaTriple(-self.rank, -self.c, -self.chi)


def mukai_pair(v, w):
    """<v, w> = (c_v . c_w) - r_v t_w - t_v r_w.  Symmetric and bilinear."""
    v._check(w)
    return v.c.dot(w.c) - v.r * w.t - v.t * w.r


def mukai_square(v):
    return mukai_pair(v, v)


def mukai_mul(v, w):
    """Cup product in the even cohomology ring (omega^2 = 0)."""
    v._check(w)
    return MukaiVector(v.r * w.r,
                       v.c.scale(w.r) + w.c.scale(v.r),
                       v.r * w.t + w.r * v.t + v.c.dot(w.c))


def exp_class(D):
    """exp(D) = (1, D, (D^2)/2); a homomorphism (NS tensor Q, +) -> units."""
    return MukaiVector(1, D, D.self_intersection() / 2)


def twist(v, D):
    """v . exp(D): tensoring with a (rational) line-bundle class."""
    return mukai_mul(v, exp_class(D))


def dual(v):
    """(r, c, t) -> (r, -c, t); a pairing isometry and ring anti-involution."""
    return MukaiVector(v.r, -v.c, v.t)


@dataclass(frozen=True)
class VectorStats:
    square: Fraction
    isotropic: bool
    multiplicity: int
    primitive_part: MukaiVector


def integral_coordinates(v, m):
    """Coordinates of v in the integral Mukai lattice of the model.

    On abelian/K3 surfaces this is (r, c, t).  On an Enriques surface the
    integral lattice consists of (r, c, t) with 2t = r (mod 2), and
    (r, c, t - r/2) is a free coordinate system for it.
    """
    coords = [v.r, *v.c.coords]
    if m.half_integral:
        coords.append(v.t - v.r / 2)
    else:
        coords.append(v.t)
    out = []
    for x in coords:
        if x.denominator != 1:
            raise PreconditionError("non-integral-vector",
                                    "vector is not in the integral Mukai lattice")
        out.append(x.numerator)
    return tuple(out)


def vector_stats(v, m):
    """Square, isotropy, multiplicity m(v) and primitive part of v.

    v = m(v) * v_p with v_p primitive in the integral Mukai lattice.
    """
    if v.is_zero():
        raise PreconditionError("zero-vector")
    ints = integral_coordinates(v, m)
    mult = _gcd_many(ints)
    prim = v.scale(Fraction(1, mult))
    sq = mukai_square(v)
    return VectorStats(sq, sq == 0, mult, prim)


def chi_of(v, m):
    """Euler characteristic: chi = t + r*chi(O_X)/2."""
    return v.t + v.r * m.chi_shift


def gamma_of(v, m):
    """(rank, c_1, chi) triple of a Mukai vector."""
    return GammaTriple(v.r, v.c, chi_of(v, m))


def vector_of_gamma(g, m):
    """Inverse of gamma_of: t = chi - r*chi(O_X)/2."""
    return MukaiVector(g.rank, g.c, g.chi - g.rank * m.chi_shift)


# ---------------------------------------------------------------------------
# Random sampling (used by isometry checks and the property suites)


def random_ns_class(lat, rng, span=6, denom=4):
    coords = [Fraction(rng.randint(-span, span), rng.randint(1, denom)) for _ in range(lat.rank)]
    return NSClass(lat, tuple(coords))


def random_mukai_vector(model, rng, span=6, denom=4):
    q = lambda: Fraction(rng.randint(-span, span), rng.randint(1, denom))
    return MukaiVector(q(), random_ns_class(model.ns, rng, span, denom), q())


def random_integral_vector(model, rng, span=6):
    z = lambda: rng.randint(-span, span)
    c = model.ns.cls([z() for _ in range(model.ns.rank)])
    if model.half_integral:
        r = z()
        return MukaiVector(r, c, Fraction(r, 2) + z())
    return MukaiVector(z(), c, z())
