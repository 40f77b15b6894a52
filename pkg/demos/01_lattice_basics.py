"""Mukai vectors and the even-cohomology pairing, start to finish.

Run:  python demos/01_lattice_basics.py
"""

from fractions import Fraction as F

import mukailab as M

# A K3 surface whose Neron-Severi lattice is the hyperbolic plane U:
# two classes e, f with (e^2) = (f^2) = 0 and (e, f) = 1.
k3 = M.k3_model()
print("model:", k3.kind, "NS rank", k3.ns.rank, "chi(O) =", k3.chi_O)

# The Mukai pairing <v, w> = (c_v . c_w) - r_v t_w - t_v r_w.
omega = k3.omega()          # the point class (0, 0, 1)
one = k3.unit()             # the fundamental class (1, 0, 0)
print("<omega, 1> =", M.mukai_pair(omega, one))

# Rank-one vectors of n points: v = (1, 0, 1 - n) has square 2n - 2,
# and the moduli space of ideal sheaves has dimension 2n.
for n in (2, 3, 4):
    v = k3.vector(1, (0, 0), 1 - n)
    print("n = %d:  <v^2> = %s,  coarse moduli dim = %s"
          % (n, M.mukai_square(v), M.moduli_dim(v, k3, "coarse")))

# Twisting by a line-bundle class is multiplication by exp(D) = (1, D, D^2/2);
# it preserves the pairing and the multiplicity.
D = k3.cls((1, 3))
vO = k3.structure_sheaf_vector()
vD = M.twist(vO, D)
print("v(O(D)) =", (vD.r, vD.c.coords, vD.t), " chi =", M.chi_of(vD, k3))

w = k3.vector(2, (4, -2), 6)
stats = M.vector_stats(w, k3)
print("w = 2 * primitive part:", stats.multiplicity, "*",
      (stats.primitive_part.r, stats.primitive_part.c.coords, stats.primitive_part.t))

# On an Enriques surface Mukai vectors are half-integral: v(O) = (1, 0, 1/2).
enr = M.enriques_model()
vO = enr.structure_sheaf_vector()
print("Enriques v(O):", (vO.r, vO.t), " chi =", M.chi_of(vO, enr))
print("parity lattice: (2, 0, 1) has multiplicity",
      M.vector_stats(enr.vector(2, [0] * 10, 1), enr).multiplicity,
      "but (2, 0, 2) is primitive:",
      M.vector_stats(enr.vector(2, [0] * 10, 2), enr).multiplicity == 1)
