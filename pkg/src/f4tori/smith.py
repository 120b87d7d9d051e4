"""Smith normal form of small integer matrices, with unimodular transforms,
and the linear algebra over Z/Q built on it."""
from __future__ import annotations

import numpy as np


def smith_normal_form(M) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Return (D, U, V) with U @ M @ V == D diagonal, d_i | d_{i+1}, d_i >= 0.

    U and V are unimodular.  Entries are Python ints (object arrays), so
    there is no overflow for the sizes used here.
    """
    A = np.array(M, dtype=object)
    m, n = A.shape
    U = np.eye(m, dtype=object)
    V = np.eye(n, dtype=object)

    def swap_rows(i, j):
        A[[i, j]] = A[[j, i]]
        U[[i, j]] = U[[j, i]]

    def swap_cols(i, j):
        A[:, [i, j]] = A[:, [j, i]]
        V[:, [i, j]] = V[:, [j, i]]

    for t in range(min(m, n)):
        while True:
            nz = [(abs(A[i, j]), i, j) for i in range(t, m) for j in range(t, n) if A[i, j] != 0]
            if not nz:
                break
            _, i, j = min(nz)
            swap_rows(t, i)
            swap_cols(t, j)
            p = A[t, t]
            done = True
            for i in range(t + 1, m):
                f = A[i, t] // p
                if f:
                    A[i] = A[i] - f * A[t]
                    U[i] = U[i] - f * U[t]
                if A[i, t] != 0:
                    done = False
            for j in range(t + 1, n):
                f = A[t, j] // p
                if f:
                    A[:, j] = A[:, j] - f * A[:, t]
                    V[:, j] = V[:, j] - f * V[:, t]
                if A[t, j] != 0:
                    done = False
            if not done:
                continue
            # divisibility: fold a row with a non-multiple entry into row t
            bad = [(i, j) for i in range(t + 1, m) for j in range(t + 1, n) if A[i, j] % p != 0]
            if not bad:
                break
            i, _ = bad[0]
            A[t] = A[t] + A[i]
            U[t] = U[t] + U[i]
        if A[t, t] < 0:
            A[t] = -A[t]
            U[t] = -U[t]
    return A, U, V


def invariant_factors(M) -> list[int]:
    """Nonzero diagonal of the Smith form, 1s included."""
    D, _, _ = smith_normal_form(M)
    return [int(D[i, i]) for i in range(min(D.shape)) if D[i, i] != 0]


def abelian_invariants(orders) -> list[int]:
    """Invariant factors (> 1) of the direct sum of cyclic groups of the given orders."""
    orders = [int(o) for o in orders]
    if not orders:
        return []
    return [d for d in invariant_factors(np.diag(orders)) if d != 1]


class UnsolvableError(ArithmeticError):
    pass


def solve_mod(M, b, Q: int) -> list[int]:
    """One solution x of M x = b (mod Q) for square M, or raise UnsolvableError."""
    D, U, V = smith_normal_form(M)
    c = U.dot(np.array([int(v) for v in b], dtype=object))
    y = []
    for i in range(D.shape[0]):
        d = int(D[i, i]) % Q
        ci = int(c[i]) % Q
        g = np.gcd(d, Q) if d else Q
        g = int(g)
        if ci % g:
            raise UnsolvableError(f"no solution mod {Q}")
        if d == 0:
            y.append(0)
            continue
        # d y = ci (mod Q)
        y.append((ci // g) * pow(d // g, -1, Q // g) % (Q // g))
    x = V.dot(np.array(y, dtype=object))
    return [int(v) % Q for v in x]


def kernel_mod(M, Q: int) -> tuple[list[int], list[list[int]]]:
    """Solutions of M x = 0 (mod Q) for square nonsingular M with d_i | Q.

    Returns (invariant factors > 1, generators) where generator i has order
    exactly factor i and the group they generate is the full kernel.
    """
    D, U, V = smith_normal_form(M)
    factors, gens = [], []
    for i in range(D.shape[0]):
        d = int(D[i, i])
        if d == 0 or Q % d:
            raise ValueError(f"invariant factor {d} does not divide {Q}")
        if d == 1:
            continue
        factors.append(d)
        gens.append([int(v) * (Q // d) % Q for v in V[:, i]])
    return factors, gens
