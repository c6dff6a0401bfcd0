"""A tour of the curvature machinery on the smallest groups.

Builds H_1 and Q_1, prints a few brackets, and walks from structure
constants to Christoffel symbols, the Riemann tensor, Ricci, and scalar
curvature -- first on the identity metric, then on a generic diagonal one.
"""
import numpy as np

from nilflow import (
    Family,
    MetricState,
    basis_vector,
    bracket,
    build_group,
    christoffel,
    ricci_general,
    ricci_specialized_diag,
    riemann,
    scalar_curvature,
    sigma_heisenberg,
)

np.set_printoptions(precision=6, suppress=True)

# --- the three-dimensional Heisenberg algebra ----------------------------

h1 = build_group(Family.HEISENBERG, 1)
e1, e2, e3 = (basis_vector(3, i) for i in range(3))
print("H_1: dim =", h1.dim, " center index =", h1.center_indices)
print("[e1, e2] =", bracket(h1, e1, e2))
print("[e2, e1] =", bracket(h1, e2, e1))
print("[e1, e3] =", bracket(h1, e1, e3), " (center is bracket-trivial)")

identity = MetricState.from_diag(np.ones(3))
gamma = christoffel(h1, identity).gamma
print("\nnonzero Christoffel symbols (identity metric):")
for i in range(3):
    for j in range(3):
        for k in range(3):
            if gamma[i, j, k] != 0.0:
                print(f"  nabla_e{i+1} e{j+1} has e{k+1}-component {gamma[i, j, k]:+.2f}")

r = riemann(h1, identity)
print("\nR(e1,e2,e2,e1) =", r[0, 1, 1, 0], " (sectional curvature of the plane e1^e2)")
print("R(e1,e3,e3,e1) =", r[0, 2, 2, 0])
print("Ricci          =", np.diag(ricci_general(h1, identity)))
print("scalar         =", scalar_curvature(h1, identity))

# --- a generic diagonal metric -------------------------------------------

d = np.array([1.3, 0.7, 2.1])
m = MetricState.from_diag(d)
print("\ndiagonal metric diag(1.3, 0.7, 2.1):")
print("Ricci (general engine)     =", np.diag(ricci_general(h1, m)))
print("Ricci (closed-form route)  =", ricci_specialized_diag(Family.HEISENBERG, d, 1))
print("Sigma = 1/(g1 g2)          =", sigma_heisenberg(d, 1))
print("note R_33 = g3^2 / (2 g1 g2) =", d[2] ** 2 / (2 * d[0] * d[1]))

# --- the seven-dimensional quaternion algebra ----------------------------

q1 = build_group(Family.QUATERNION, 1)
id7 = MetricState.from_diag(np.ones(7))
print("\nQ_1: dim =", q1.dim, " center indices =", q1.center_indices)
print("[X1, X2] =", bracket(q1, basis_vector(7, 0), basis_vector(7, 1)))
print("Ricci    =", np.diag(ricci_general(q1, id7)))
print("scalar   =", scalar_curvature(q1, id7))
