"""Generating series: Hilbert schemes, eta powers, Hecke transforms.

Run:  python demos/04_series.py
"""

from fractions import Fraction as F

import mukailab as M
from mukailab.series import LaurentPoly as LP

# --- Hilbert-scheme Hodge polynomials ----------------------------------------
# e(X) = 1 + 10 xy + (xy)^2 is the Enriques surface; the product formula
# gives every e(X^[n]).
eX = LP({(0, 0): 1, (1, 1): 10, (2, 2): 1})
hs = M.hilb_series(eX, 4)
print("Euler numbers of X^[n]:", [h.eval_ones() for h in hs])
print("e(X^[2]) =", hs[2])

# The Euler specialization is the 12th power of the partition generating
# function, which also shows up as the q-expansion of eta^{-12}:
eta = M.eta_inv12(8)
print("eta^{-12} coefficients:",
      [(str(e), str(c)) for e, c in eta.sorted_terms()][:5])

# --- e(GL(N)) and stack normalization ------------------------------------------
for N in (1, 2, 3):
    print("e(GL(%d)) =" % N, M.e_gl(N))

# --- Wall-crossing recursion ------------------------------------------------------
# Crossing a wall adds one stratum per destabilizing filtration type, with
# an (xy)-power prefactor from the pairing of the factors.
base = LP({(2, 2): 1, (1, 1): 5, (0, 0): 1})
e1, e2 = LP({(1, 1): 1, (0, 0): 1}), LP({(0, 0): 3})
on_wall = M.wallcross_epoly(base, [([[0, 2], [2, 0]], [e1, e2])])
print("e on the wall:", on_wall)
recovered = on_wall - M.wallcross_epoly(LP.zero(), [([[0, 2], [2, 0]], [e1, e2])])
print("round trip recovers the chamber value:", recovered == base)

# --- Hecke transform of the rank-1 partition function ---------------------------
# Order 3, lattice vectors confined to a small box, elliptic variable 0.
lat = M.enriques_lattice()
box = ((-1, 1), (-1, 1)) + tuple((0, 0) for _ in range(8))
z3 = M.hecke_zr(3, lat, F(5, 2), box)
print("rank-3 partition terms (exponent, xi, coefficient):")
for t in z3:
    print("   q^%-5s xi=%s  %s" % (t.hol_scalar, t.xi[:2], t.coeff))

# At xi = 0 the coefficients reproduce the divisor-sum Euler numbers:
enr = M.enriques_model()
v = enr.vector(3, [0] * 10, F(-1, 2))     # <v^2> = 3, exponent 1/2
print("divisor formula for <v^2> = 3:", M.multiplicity_chi(v, enr))
