"""Cyclic Jacobi eigensolver for real symmetric matrices.

Rotations are applied in round-robin (tournament) order: each round pairs
every index with a distinct partner, so the ``n/2`` plane rotations of a
round commute and are applied together as one orthogonal matrix.  A sweep
is ``n - 1`` rounds and visits every off-diagonal pair exactly once.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

MAX_SWEEPS = 100


class JacobiConvergenceError(RuntimeError):
    pass


@dataclass(frozen=True)
class EigenSystem:
    values: np.ndarray  # ascending
    vectors: np.ndarray  # columns, matching values
    sweeps: int
    off_norm: float


def _rounds(n: int) -> list[tuple[np.ndarray, np.ndarray]]:
    players = list(range(n)) + ([-1] if n % 2 else [])
    k = len(players)
    out = []
    for _ in range(k - 1):
        ps, qs = [], []
        for i in range(k // 2):
            a, b = players[i], players[k - 1 - i]
            if a >= 0 and b >= 0:
                ps.append(min(a, b))
                qs.append(max(a, b))
        out.append((np.array(ps, dtype=np.int64), np.array(qs, dtype=np.int64)))
        players = [players[0]] + [players[-1]] + players[1:-1]
    return out


def off_diagonal_norm(A: np.ndarray) -> float:
    off = A - np.diag(np.diag(A))
    return float(np.sqrt(np.sum(off * off)))


def _sweep(A: np.ndarray, V: np.ndarray, rounds) -> tuple[np.ndarray, np.ndarray]:
    n = A.shape[0]
    for ps, qs in rounds:
        if ps.size == 0:
            continue
        apq = A[ps, qs]
        active = np.abs(apq) > 1e-300
        if not active.any():
            continue
        ps, qs, apq = ps[active], qs[active], apq[active]
        # B = J^T A J zeroes B[p, q] when tan(2 theta) = 2 a_pq / (a_qq - a_pp);
        # take the smallest such angle, |theta| <= pi/4
        den = A[qs, qs] - A[ps, ps]
        flat = den == 0
        theta = np.where(flat, np.pi / 4 * np.sign(apq), 0.5 * np.arctan(2 * apq / np.where(flat, 1.0, den)))
        c, s = np.cos(theta), np.sin(theta)
        J = np.eye(n)
        J[ps, ps] = c
        J[qs, qs] = c
        J[ps, qs] = s
        J[qs, ps] = -s
        A = J.T @ A @ J
        A = (A + A.T) / 2
        A[ps, qs] = 0.0
        A[qs, ps] = 0.0
        V = V @ J
    return A, V


def jacobi_eigh(A, tol: float | None = None, max_sweeps: int = MAX_SWEEPS) -> EigenSystem:
    """Eigen-decomposition of a real symmetric matrix; stops once the
    off-diagonal Frobenius norm drops below ``tol`` (default ``1e-10 * n``)."""
    A = np.array(A, dtype=float)
    n = A.shape[0]
    if A.shape != (n, n):
        raise ValueError("matrix must be square")
    if not np.allclose(A, A.T, atol=1e-12):
        raise ValueError("matrix must be symmetric")
    A = (A + A.T) / 2
    if tol is None:
        tol = 1e-10 * max(n, 1)
    V = np.eye(n)
    rounds = _rounds(n)
    sweeps = 0
    off = off_diagonal_norm(A)
    polished = off == 0.0
    while off >= tol or not polished:
        if off < tol:
            # one extra sweep past the threshold; convergence is quadratic, so
            # this takes the eigenvectors to working precision
            polished = True
        elif sweeps >= max_sweeps:
            raise JacobiConvergenceError(f"no convergence after {max_sweeps} sweeps (off-norm {off:.3g})")
        A, V = _sweep(A, V, rounds)
        sweeps += 1
        off = off_diagonal_norm(A)
    values = np.diag(A).copy()
    order = np.argsort(values, kind="stable")
    return EigenSystem(values[order], V[:, order], sweeps, off)
