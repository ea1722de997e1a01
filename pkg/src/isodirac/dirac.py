"""Discrete Dirac operators and the conditions under which they are Kasteleyn matrices."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cochain import S1, UnitCochain, curvature, evaluate, is_flat
from .errors import CurvatureIdentityFailed, InternalCheckError, NonSquare
from .homology import CycleBasis
from .spin import SpinCochain
from .surface import TWO_PI, RhombicSurface, walk_corner_angles

IDENTITY_TOL = 1e-9
CONDITION_TOL = 1e-9


def edge_weights(s: RhombicSurface, nu="dual") -> np.ndarray:
    """Edge weights: ``"dual"`` for dual edge lengths, ``"unit"`` for ones, or an array."""
    if isinstance(nu, str):
        if nu == "dual":
            return s.dual_lengths
        if nu == "unit":
            return np.ones(s.n_edges)
        raise ValueError(f"unknown weight scheme {nu!r}")
    w = np.asarray(nu, dtype=float)
    if w.shape != (s.n_edges,):
        raise ValueError("need one weight per edge")
    return w


def white_directions(s: RhombicSurface, offsets=None) -> np.ndarray:
    """Direction of every edge at its white endpoint relative to the reference there."""
    ang = np.array([s.direction(int(s.white_end[e]), e) for e in range(s.n_edges)])
    if offsets is not None:
        ang = ang - np.asarray(offsets, dtype=float)[s.white_end]
    return ang


def omega_v(s: RhombicSurface, offsets=None, check=True) -> UnitCochain:
    """exp(i * direction at the white endpoint) on every edge.

    ``offsets`` (one angle per vertex; black entries ignored) rotates the
    reference directions.  The curvature on each face is checked against
    ``-exp(i * theta_f / 2)``.
    """
    omega = UnitCochain(np.exp(1j * white_directions(s, offsets)), S1)
    if check:
        for f in range(s.n_faces):
            want = -np.exp(0.5j * s.face_angle[f])
            if abs(curvature(s, omega, f) - want) > IDENTITY_TOL:
                raise CurvatureIdentityFailed(f"face {f}: curvature identity fails")
    return omega


def condition_i(s: RhombicSurface, tol=CONDITION_TOL) -> bool:
    """Every face cone angle is an odd multiple of 2*pi."""
    k = np.round(s.face_angle / TWO_PI)
    return bool(np.all(np.abs(s.face_angle - k * TWO_PI) < tol) and np.all(k % 2 == 1))


def cycle_residue(s: RhombicSurface, cycle) -> float:
    """(black turning - white turning) along a cycle, folded to (-pi, pi]."""
    corners = walk_corner_angles(s, cycle)
    r = sum(a if not s.is_white[s.tail(d)] else -a for a, d in zip(corners, cycle))
    r = float(np.mod(r, TWO_PI))
    return r - TWO_PI if r > np.pi else r


def condition_ii(s: RhombicSurface, basis: CycleBasis, tol=CONDITION_TOL):
    """(all residues small, residues) for the basis cycles."""
    res = [cycle_residue(s, c) for c in basis.cycles]
    return all(abs(r) < tol for r in res), res


@dataclass(frozen=True)
class DiracMatrix:
    """Rows are white vertices, columns black vertices (surface vertex indices)."""

    matrix: np.ndarray
    rows: tuple[int, ...]
    cols: tuple[int, ...]


def twisted_adjacency(s: RhombicSurface, omega, nu="dual") -> DiracMatrix:
    """Matrix with entry sum of omega(e) * weight(e) over edges joining w and b."""
    vals = omega.values if isinstance(omega, (UnitCochain, SpinCochain)) else np.asarray(omega)
    rows = tuple(int(v) for v in s.white_vertices)
    cols = tuple(int(v) for v in s.black_vertices)
    ri = {v: k for k, v in enumerate(rows)}
    ci = {v: k for k, v in enumerate(cols)}
    m = np.zeros((len(rows), len(cols)), dtype=complex)
    w = edge_weights(s, nu)
    for e in range(s.n_edges):
        m[ri[int(s.white_end[e])], ci[int(s.black_end[e])]] += vals[e] * w[e]
    return DiracMatrix(m, rows, cols)


def dirac_matrix(s: RhombicSurface, spin: SpinCochain, nu="dual", offsets=None) -> DiracMatrix:
    """D[w, b] = sum over edges of lambda(e) * nu(e) * exp(i * direction at w)."""
    omega = omega_v(s, offsets, check=False)
    return twisted_adjacency(s, spin.values * omega.values, nu)


def determinant(d) -> complex:
    """Determinant by LU factorisation with partial pivoting."""
    m = d.matrix if isinstance(d, DiracMatrix) else np.asarray(d)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise NonSquare(f"matrix of shape {m.shape} has no determinant")
    if m.shape[0] == 0:
        return 1.0 + 0.0j
    return complex(np.linalg.det(m))


def kasteleyn_direct(s: RhombicSurface, spin: SpinCochain, basis: CycleBasis,
                     tol=IDENTITY_TOL) -> bool:
    """omega_V * lambda is flat and squares to 1 on every basis cycle."""
    omega = UnitCochain(omega_v(s, check=False).values * spin.values, S1)
    if not is_flat(s, omega, tol):
        return False
    return all(abs(evaluate(omega, c) ** 2 - 1.0) < tol for c in basis.cycles)


def is_kasteleyn(s: RhombicSurface, spin: SpinCochain, basis: CycleBasis,
                 cross_check=True) -> bool:
    """Whether D_lambda is a Kasteleyn matrix, from the two cone-angle conditions."""
    verdict = condition_i(s) and condition_ii(s, basis)[0]
    if cross_check and kasteleyn_direct(s, spin, basis) != verdict:
        raise InternalCheckError("direct Kasteleyn test disagrees with the conditions")
    return verdict
