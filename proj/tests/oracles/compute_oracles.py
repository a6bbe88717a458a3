"""Independent oracle values frozen into the C++ tests.

Uses numpy only through routines that do not share code paths with the
library under test (characteristic-polynomial roots, general eigvals,
scipy Lyapunov solver, brute-force loops).
"""
import itertools
import numpy as np
import scipy.linalg as sla

np.set_printoptions(precision=17)
I3 = np.eye(3)

A12 = np.diag([1, 1, 2.0])
G1 = {
    (1, 2): A12, (2, 1): -np.diag([1, 1, 0.0]),
    (6, 5): np.array([[7, 1, 1], [1, 6, 0], [1, 0, 5.0]]),
    (5, 2): np.array([[10, 1, 2], [1, 8, 1], [2, 1, 12.0]]),
    (7, 6): np.diag([3.1, 3.1, 3.2]), (2, 6): -np.diag([0, 0, 1.0]),
    (3, 6): -0.1 * A12, (4, 3): A12,
}


def sgn(m):
    w = np.linalg.eigvalsh(m)
    if abs(w).max() < 1e-12:
        return 0
    return 1 if w.max() > 1e-12 else -1


def absm(m):
    return sgn(m) * m


def grounded(E, delta, n=7, d=3):
    L = np.zeros((n * d, n * d))
    U = sorted({a for (a, b), m in E.items() if sgn(m) < 0})
    for (a, b), m in E.items():
        L[d*(a-1):d*a, d*(b-1):d*b] -= m
        L[d*(a-1):d*a, d*(a-1):d*a] += absm(m)
    B = {}
    for i in U:
        B[i] = sum(absm(m) for (a, b), m in E.items() if a == i and sgn(m) < 0)
        L[d*(i-1):d*i, d*(i-1):d*i] += delta * B[i]
    return L, U, B


print("A65 eigenvalues via char-poly roots:", np.sort(np.roots(np.poly(G1[(6, 5)])).real))

# C_2 for G1 with the general (nonsymmetric) eigen routine
S = absm(G1[(2, 1)]) + absm(G1[(2, 6)])
M = absm(G1[(1, 2)]) + absm(G1[(5, 2)]) - absm(G1[(2, 1)]) - absm(G1[(2, 6)])
print("C_2(G1):", 0.5 * np.linalg.eigvals(np.linalg.solve(S, M)).real.max())

delta = 7.14399606948021 + 0.1
L, U, B = grounded(G1, delta)
print("L_B(G1) block(2,2):\n", L[3:6, 3:6])
P = sla.solve_continuous_lyapunov(-L.T, -np.eye(21))
print("P sym err", abs(P - P.T).max(), "lam P", np.linalg.eigvalsh(P)[[0, -1]])
print("residual", abs(-P @ L - L.T @ P + np.eye(21)).max())
lp = np.linalg.eigvalsh(P)
T = lp[-1] * np.log(1e6 * lp[-1] / lp[0])
print("decay horizon T for 1e-3:", T)
# Euler monotonicity: need dt*lambda_max(L^T P L) <= 1 roughly
print("lam_max(L'PL)", np.linalg.eigvalsh(L.T @ P @ L)[-1])

# drift at x=0 for G1 design, theta=[1,2,-1]
theta = np.array([1, 2, -1.0])
k1 = 1 + 2 / delta
x0 = k1 * theta
b = np.zeros(21)
for i, Bi in B.items():
    b[3*(i-1):3*i] = delta * Bi @ x0
print("drift block 3 at x=0:", b[6:9])
print("drift block 2 at x=0:", b[3:6])
