"""Unit-complex and sign 1-cochains, Kasteleyn curvature and flat classes.

A cochain stores one value per edge, read on the edge oriented white to
black; traversing an edge black to white contributes the inverse value.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import InputError, OddVertexCount, SingularSolve
from .homology import CycleBasis, cycle_basis, peel_faces, tree_cotree
from .surface import RhombicSurface, dart_edge, dart_sign

FLAT_TOL = 1e-9
RENORMALIZE_EVERY = 64
S1 = "S1"
SIGN = "pm1"


@dataclass(frozen=True)
class UnitCochain:
    values: np.ndarray
    group: str = S1

    def __post_init__(self):
        v = np.asarray(self.values, dtype=complex)
        if self.group not in (S1, SIGN):
            raise InputError(f"unknown group {self.group!r}")
        if v.ndim != 1 or np.any(np.abs(np.abs(v) - 1.0) > 1e-12):
            raise InputError("cochain values must be unit complex numbers")
        if self.group == SIGN and np.any(np.abs(v.imag) > 1e-12):
            raise InputError("sign cochain values must be +1 or -1")
        object.__setattr__(self, "values", v)

    def __len__(self):
        return len(self.values)

    def __mul__(self, other):
        if isinstance(other, UnitCochain):
            group = SIGN if (self.group == SIGN and other.group == SIGN) else S1
            return UnitCochain(self.values * other.values, group)
        return NotImplemented

    def conj(self):
        return UnitCochain(self.values.conj(), self.group)


def ones(s: RhombicSurface, group=SIGN) -> UnitCochain:
    return UnitCochain(np.ones(s.n_edges, dtype=complex), group)


def sign_cochain(bits) -> UnitCochain:
    """(-1)^bits as a sign cochain."""
    bits = np.asarray(bits, dtype=np.int64) % 2
    return UnitCochain(np.where(bits == 1, -1.0, 1.0).astype(complex), SIGN)


def evaluate(omega, walk) -> complex:
    """Product of a cochain along a sequence of darts."""
    vals = omega.values if isinstance(omega, UnitCochain) else np.asarray(omega)
    acc = 1.0 + 0.0j
    for k, d in enumerate(walk, 1):
        x = vals[dart_edge(d)]
        acc *= x if dart_sign(d) > 0 else 1.0 / x
        if k % RENORMALIZE_EVERY == 0:
            acc /= abs(acc)
    return acc


def curvature(s: RhombicSurface, omega, f: int) -> complex:
    """Kasteleyn curvature of ``omega`` on face ``f``."""
    walk = s.faces[f].darts
    sign = -1.0 if (len(walk) // 2) % 2 == 0 else 1.0
    return sign * evaluate(omega, walk)


def curvatures(s: RhombicSurface, omega) -> np.ndarray:
    return np.array([curvature(s, omega, f) for f in range(s.n_faces)])


def is_flat(s: RhombicSurface, omega, tol=FLAT_TOL) -> bool:
    return bool(np.all(np.abs(curvatures(s, omega) - 1.0) < tol))


def gauge_move(s: RhombicSurface, omega: UnitCochain, v: int, g: complex) -> UnitCochain:
    """Multiply every edge at vertex ``v`` by ``g``."""
    vals = omega.values.copy()
    for e in s.rotation[v]:
        vals[e] *= g
    group = omega.group if omega.group == S1 or g in (1, -1) else S1
    return UnitCochain(vals, group)


def gauge(s: RhombicSurface, omega: UnitCochain, sigma) -> UnitCochain:
    """Gauge transform by a vertex function ``sigma`` (one unit value per vertex)."""
    sigma = np.asarray(sigma, dtype=complex)
    vals = omega.values * sigma[s.white_end] * sigma[s.black_end]
    group = omega.group if np.all(np.abs(sigma.imag) < 1e-12) else S1
    return UnitCochain(vals, group)


def make_flat(s: RhombicSurface, omega: UnitCochain) -> UnitCochain:
    """A flat cochain ``phi * omega`` with ``phi`` supported on a dual spanning tree."""
    if s.n_vertices % 2:
        raise OddVertexCount(f"{s.n_vertices} vertices; flat cochains need an even count")
    tc = tree_cotree(s)
    target = [1.0 / curvature(s, omega, f) for f in range(s.n_faces)]
    values = [1.0 + 0.0j] * s.n_edges
    mul = lambda a, b: a * b
    inv = lambda a: 1.0 / a
    residual = peel_faces(s, tc.cotree, values, target, mul, inv)
    if abs(residual - target[0]) > 1e-9:
        raise SingularSolve("curvature product is not 1 on the last face")
    phi = np.asarray(values, dtype=complex)
    phi /= np.abs(phi)
    if omega.group == SIGN:
        phi = np.where(phi.real > 0, 1.0, -1.0).astype(complex)
    return UnitCochain(phi * omega.values, omega.group)


def coboundary_potential(s: RhombicSurface, ratio) -> np.ndarray:
    """Vertex function sigma with sigma(w)*sigma(b) matching ``ratio`` on a BFS tree."""
    tc = tree_cotree(s)
    sigma = np.ones(s.n_vertices, dtype=complex)
    order = sorted(range(s.n_vertices), key=lambda v: tc.depth[v])
    for v in order[1:]:
        e = tc.parent_edge[v]
        u = s.other_end(e, v)
        sigma[v] = ratio[e] / sigma[u]
    return sigma


def are_equivalent(s: RhombicSurface, a: UnitCochain, b: UnitCochain, tol=FLAT_TOL) -> bool:
    """True iff ``b / a`` is a coboundary."""
    if a.group != b.group:
        raise InputError("cochains over different groups")
    ratio = b.values / a.values
    sigma = coboundary_potential(s, ratio)
    fitted = sigma[s.white_end] * sigma[s.black_end]
    return bool(np.all(np.abs(fitted - ratio) < tol))


def twist(omega: UnitCochain, cocycles, eps) -> UnitCochain:
    """``omega * (-1)^(sum_j eps_j cocycles[j])``."""
    bits = np.zeros(len(omega), dtype=np.int64)
    for e_j, c in zip(eps, cocycles):
        if e_j:
            bits += np.asarray(c, dtype=np.int64)
    return omega * sign_cochain(bits) if omega.group == SIGN else UnitCochain(
        omega.values * np.where(bits % 2, -1.0, 1.0), omega.group)


def sectors(n: int):
    """All eps in {0,1}^n in lexicographic order."""
    return [tuple(e) for e in itertools.product((0, 1), repeat=n)]


def flat_classes(s: RhombicSurface, group=SIGN, basis: CycleBasis | None = None):
    """One flat cochain per gauge class: a base twisted by every subset of dual cocycles."""
    if s.n_vertices % 2:
        raise OddVertexCount(f"{s.n_vertices} vertices; flat cochains need an even count")
    basis = basis or cycle_basis(s)
    base = make_flat(s, ones(s, group))
    return [twist(base, basis.beta, eps) for eps in sectors(basis.size)]


def kasteleyn_signs(s: RhombicSurface, basis: CycleBasis | None = None) -> UnitCochain:
    """The flat sign cochain tau with tau(C_j) = (-1)^(|C_j|/2 + 1) on every basis cycle."""
    basis = basis or cycle_basis(s)
    tau = make_flat(s, ones(s, SIGN))
    flips = []
    for c in basis.cycles:
        want = -1.0 if (len(c) // 2) % 2 == 0 else 1.0
        flips.append(int(evaluate(tau, c).real * want < 0))
    return twist(tau, basis.beta, flips)
