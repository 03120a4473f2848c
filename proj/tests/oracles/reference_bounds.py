#!/usr/bin/env python3
"""Independent reference computation of the state-conversion adversary bounds
used as frozen regression values in the C++ test suite.

Solves, for each bundled instance,

    minimize    tr(P) / <xi|xi>
    subject to  tr_B(L P L^+ - P) = tr_BC(|tau><tau| - |xi><xi|)
                P >= 0  (PSD on A (x) B)

with cvxpy on two different conic solvers (CLARABEL, SCS) and prints the
agreed optimal values.  Run from the repository root:

    python3 tests/oracles/reference_bounds.py

The values printed here are copied verbatim into tests/test_problems.cpp and
src/problems.cpp; re-run this script if an instance definition changes.
"""

import numpy as np
import cvxpy as cp


def dag(m):
    return m.conj().T


def partial_trace_keep_first(rho, d_keep, d_trace):
    """tr over the trailing factor of a (d_keep*d_trace) square matrix."""
    r = rho.reshape(d_keep, d_trace, d_keep, d_trace)
    return np.einsum("ikjk->ij", r)


def rdm_a(vec, da, dbc):
    """tr_BC |v><v| for v on A (x) (BC), A slowest."""
    m = vec.reshape(da, dbc)
    return m @ dag(m)


def adversary_bound(da, db, dc, L, xi, tau, solver):
    s = float(np.vdot(xi, xi).real)
    D = rdm_a(tau, da, db * dc) - rdm_a(xi, da, db * dc)
    P = cp.Variable((da * db, da * db), hermitian=True)
    lhs = cp.partial_trace(L @ P @ dag(L) - P, dims=(da, db), axis=1)
    cons = [P >> 0, lhs == cp.Constant(D)]
    prob = cp.Problem(cp.Minimize(cp.real(cp.trace(P)) / s), cons)
    kw = {}
    if solver == "SCS":
        kw = dict(eps=1e-11, max_iters=200000)
    prob.solve(solver=solver, **kw)
    return prob.status, prob.value


def basis_vec(d, k):
    v = np.zeros(d, dtype=complex)
    v[k] = 1.0
    return v


def kron3(a, b, c):
    return np.kron(np.kron(a, b), c)


def deutsch_phase():
    da, db, dc = 2, 2, 4
    I2 = np.eye(2)
    q = basis_vec(2, 1)
    L = np.kron(np.diag([1, 0]), I2) + np.kron(np.diag([0, 1]), I2 - 2 * np.outer(q, q))
    plus = np.array([1, 1]) / np.sqrt(2)
    xi = kron3(plus, basis_vec(2, 0), basis_vec(4, 0))
    tau = (kron3(basis_vec(2, 0), basis_vec(2, 0), basis_vec(4, 0))
           + kron3(basis_vec(2, 1), basis_vec(2, 0), basis_vec(4, 1))) / np.sqrt(2)
    return da, db, dc, L, xi, tau


def grover_phase(n):
    da, db = n, n + 1
    dc = da * db
    L = np.zeros((da * db, da * db), dtype=complex)
    for a in range(n):
        La = np.eye(db, dtype=complex)
        La[a + 1, a + 1] = -1.0
        L += np.kron(np.diag(basis_vec(n, a).real), La)
    xi = np.zeros(da * db * dc, dtype=complex)
    tau = np.zeros(da * db * dc, dtype=complex)
    for a in range(n):
        xi += kron3(basis_vec(da, a), basis_vec(db, 0), basis_vec(dc, 0))
        tau += kron3(basis_vec(da, a), basis_vec(db, 0), basis_vec(dc, a))
    xi /= np.sqrt(n)
    tau /= np.sqrt(n)
    return da, db, dc, L, xi, tau


def noisy_damp(p):
    da, db, dc = 2, 2, 4
    I2 = np.eye(2)
    K = np.diag([1.0, -np.sqrt(1.0 - p)])
    L = np.kron(np.diag([1, 0]), I2) + np.kron(np.diag([0, 1]), K)
    plus = np.array([1, 1]) / np.sqrt(2)
    xi = kron3(plus, basis_vec(2, 0), basis_vec(4, 0))
    tau = (kron3(basis_vec(2, 0), basis_vec(2, 0), basis_vec(4, 1))
           + np.sqrt(1.0 - p) * kron3(basis_vec(2, 1), basis_vec(2, 0), basis_vec(4, 2))) / np.sqrt(2)
    return da, db, dc, L, xi, tau


def main():
    np.set_printoptions(precision=12)
    instances = [
        ("deutsch_phase", deutsch_phase()),
        ("grover_phase(2)", grover_phase(2)),
        ("grover_phase(3)", grover_phase(3)),
        ("grover_phase(4)", grover_phase(4)),
        ("noisy_damp(0.3)", noisy_damp(0.3)),
    ]
    p = 0.3
    closed_noisy = 0.5 + 1.0 / (2.0 * (1.0 + np.sqrt(1.0 - p)) ** 2)
    print(f"noisy closed-form candidate: {closed_noisy:.12f}")
    for name, (da, db, dc, L, xi, tau) in instances:
        sv = np.linalg.svd(L, compute_uv=False)
        assert sv.max() <= 1 + 1e-12, (name, sv.max())
        vals = {}
        for solver in ("CLARABEL", "SCS"):
            status, val = adversary_bound(da, db, dc, L, xi, tau, solver)
            vals[solver] = (status, val)
        line = " ".join(f"{s}:{st}:{v:.12f}" for s, (st, v) in vals.items())
        print(f"{name:18s} {line}")


if __name__ == "__main__":
    main()
