"""Twisted slopes, candidate walls and chamber paths for 1-dimensional classes.

Run:  python demos/03_walls_and_chambers.py
"""

from fractions import Fraction as F

import mukailab as M

# Rational elliptic surface with a section: gram [[-1, 1], [1, 0]].
el = M.elliptic_model()
H = el.cls((1, 3))

# The class of a section plus two fibers, Euler characteristic 1.
gamma = M.GammaTriple(0, el.cls((1, 2)), 1)
print("untwisted slope:", M.slope_dim1(gamma, el.ns.zero(), H))

# Walls in the twist-parameter plane alpha = u sigma + w f, |u|,|w| <= 2.
box = ((F(-2), F(2)), (F(-2), F(2)))
found = M.walls_dim1(gamma, H, box, el)
print("candidate walls in the box:", len(found),
      "on", len(M.unique_hyperplanes(found)), "distinct hyperplanes")
for w in found[:5]:
    print("  D = %-6s n = %2d   %s . alpha = %d"
          % (tuple(int(x) for x in w.D.coords), w.n, w.normal, w.offset))

# The fiber decomposition D = f at n = 0 gives the wall 3u - w + 1 = 0.
wall = next(w for w in found if tuple(w.D.coords) == (0, 1) and w.n == 0)
print("fiber wall:", wall.normal, "=", wall.offset)
alpha_on = el.cls((F(1, 3), 2))
print("locate a point on it:", M.chamber_locate(alpha_on, found))

# Crossing the box along a segment records an ordered flip chain.
a, b = el.cls((F(-1, 2), F(1, 3))), el.cls((F(1, 2), F(1, 3)))
for crossing in M.chamber_path(a, b, found):
    print("  cross wall %d at t = %s" % (crossing.index, crossing.t))

# The flip parameter between a rank-2 moduli space and its twisted version:
# on a K3 with H-perp = ZD, (D^2) = -2n, the single wall sits at t = 1/(4n).
n = 4
k3 = M.k3_model(gram=((2, 0), (0, -2 * n)), names=("h", "d"), polarization=(1, 0))
res = M.wall_solve_tf(k3.vector(2, (0, 0), 1 - 2 * n),
                      k3.vector(1, (0, 1), -n),
                      k3.polarization, k3.cls((0, 1)), k3)
print("flip parameter for n = %d:" % n, res.roots)
