"""Discrete canonical bundle, discrete spin structures and their quadratic forms."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .cochain import S1, UnitCochain, evaluate, sectors, twist
from .errors import (
    EvenConeAngle,
    Gf2Inconsistent,
    HolonomyMismatch,
    NonIntegerWinding,
    NonIntegralConeAngle,
    NotPlusMinus2g,
    StarUnreachable,
)
from .homology import CycleBasis, peel_faces, tree_cotree
from .surface import TWO_PI, RhombicSurface, dart_edge, dart_sign, walk_corner_angles

CONE_TOL = 1e-9
SPIN_TOL = 1e-9
WINDING_TOL = 1e-6


def _multiple_of_two_pi(theta, tol=CONE_TOL):
    k = np.round(np.asarray(theta) / TWO_PI)
    return np.abs(np.asarray(theta) - k * TWO_PI) < tol, k.astype(int)


def cone_angles_integral(s: RhombicSurface) -> bool:
    ok_b, _ = _multiple_of_two_pi(s.vertex_angle[~s.is_white])
    ok_f, _ = _multiple_of_two_pi(s.face_angle)
    return bool(ok_b.all() and ok_f.all())


def cone_angles_odd(s: RhombicSurface) -> bool:
    ok_b, kb = _multiple_of_two_pi(s.vertex_angle[~s.is_white])
    ok_f, kf = _multiple_of_two_pi(s.face_angle)
    return bool(ok_b.all() and ok_f.all() and np.all(kb % 2 == 1) and np.all(kf % 2 == 1))


def holonomy_angle(s: RhombicSurface, walk) -> float:
    """Total left turning sum of a closed walk; kappa evaluates to exp(i * this)."""
    return float(sum(walk_corner_angles(s, walk)))


def canonical_cochain(s: RhombicSurface, basis: CycleBasis | None = None) -> UnitCochain:
    """The discrete canonical bundle: transports the frame at w to the frame at b."""
    if not cone_angles_integral(s):
        raise NonIntegralConeAngle("every cone angle must be a multiple of 2*pi")
    dir_w = np.array([s.direction(int(s.white_end[e]), e) for e in range(s.n_edges)])
    dir_b = np.array([s.direction(int(s.black_end[e]), e) for e in range(s.n_edges)])
    kappa = UnitCochain(np.exp(1j * (math.pi + dir_b - dir_w)), S1)
    for f in s.faces:
        if abs(evaluate(kappa, f.darts) - 1.0) > SPIN_TOL:
            raise HolonomyMismatch(f"kappa is not closed around face {f.index}")
    if basis is not None:
        for c in basis.cycles:
            if abs(evaluate(kappa, c) - np.exp(1j * holonomy_angle(s, c))) > SPIN_TOL:
                raise HolonomyMismatch("kappa disagrees with the turning angles of a basis cycle")
    return kappa


@dataclass(frozen=True)
class SpinCochain:
    """A unit cochain lambda with lambda^2 = kappa and lambda closed on every face."""

    lam: UnitCochain

    @property
    def values(self):
        return self.lam.values

    @property
    def branch(self) -> np.ndarray:
        """Angles in [0, 2*pi) with lambda(e) = exp(i * angle), edges white to black."""
        return np.mod(np.angle(self.lam.values), TWO_PI)

    def __len__(self):
        return len(self.lam)


def check_spin(s: RhombicSurface, spin: SpinCochain, kappa: UnitCochain, tol=SPIN_TOL):
    """Largest deviations of lambda^2 from kappa and of lambda(boundary f) from 1."""
    sq = float(np.max(np.abs(spin.values ** 2 - kappa.values)))
    closed = max(abs(evaluate(spin.lam, f.darts) - 1.0) for f in s.faces)
    return sq, float(closed)


def spin_base(s: RhombicSurface, kappa: UnitCochain) -> SpinCochain:
    """A spin structure from the principal square root of kappa, fixed up by signs."""
    half = np.mod(np.angle(kappa.values), TWO_PI) / 2.0
    raw = UnitCochain(np.exp(1j * half), S1)
    defects = []
    for f in s.faces:
        d = evaluate(raw, f.darts)
        if min(abs(d - 1.0), abs(d + 1.0)) > 1e-6:
            raise Gf2Inconsistent(f"kappa is not closed around face {f.index}")
        defects.append(1 if d.real > 0 else -1)
    # find signs sigma with sigma(boundary f) = defect(f), then divide them out
    tc = tree_cotree(s)
    signs = [1] * s.n_edges
    residual = peel_faces(s, tc.cotree, signs, defects, lambda a, b: a * b, lambda a: a)
    if residual != defects[0]:
        raise Gf2Inconsistent("sign correction does not close on the last face")
    lam = UnitCochain(raw.values * np.asarray(signs, dtype=float), S1)
    return SpinCochain(lam)


def spin_family(s: RhombicSurface, lam0: SpinCochain, basis: CycleBasis,
                cocycles=None) -> list[SpinCochain]:
    """All 2^(2g) twists of ``lam0``; sector order is lexicographic in eps.

    ``cocycles`` defaults to the dual cocycles of the basis, so the twist by
    eps flips the value on basis cycle j exactly when eps_j = 1.
    """
    cocycles = basis.beta if cocycles is None else cocycles
    return [SpinCochain(twist(lam0.lam, cocycles, eps)) for eps in sectors(basis.size)]


def star_target(s: RhombicSurface, cycle) -> complex:
    """Required value of a normalized spin structure on a basis cycle."""
    corners = walk_corner_angles(s, cycle)
    white_turn = sum(a for a, d in zip(corners, cycle) if s.is_white[s.tail(d)])
    sign = -1.0 if (len(cycle) // 2) % 2 == 0 else 1.0
    return sign * np.exp(1j * white_turn)


def star_normalize(s: RhombicSurface, spin: SpinCochain, basis: CycleBasis,
                   tol=1e-6) -> SpinCochain:
    """The member of the spin family of ``spin`` that takes the normalized values on the basis."""
    flips = []
    for c in basis.cycles:
        ratio = evaluate(spin.lam, c) / star_target(s, c)
        if abs(ratio - 1.0) < tol:
            flips.append(0)
        elif abs(ratio + 1.0) < tol:
            flips.append(1)
        else:
            raise StarUnreachable(
                f"spin value on a basis cycle is off by phase {np.angle(ratio):.6g}; "
                "the turning-angle condition on basis cycles fails")
    return SpinCochain(twist(spin.lam, basis.beta, flips))


@dataclass(frozen=True)
class QuadraticForm:
    """A Z/2 quadratic refinement of the intersection form, stored on a basis."""

    values: tuple[int, ...]
    Q: np.ndarray

    def __call__(self, x) -> int:
        x = np.asarray(x, dtype=np.int64) % 2
        lin = int(np.dot(x, self.values))
        quad = int(np.sum(np.triu(np.outer(x, x) * self.Q, 1)))
        return (lin + quad) % 2


def winding(s: RhombicSurface, spin: SpinCochain, cycle) -> float:
    """1 + |C|/2 + (sum of 2*branch - sum of turning angles) / (2*pi), unreduced."""
    b = spin.branch
    total = sum(2.0 * dart_sign(d) * b[dart_edge(d)] for d in cycle)
    total -= holonomy_angle(s, cycle)
    return 1.0 + len(cycle) / 2.0 + total / TWO_PI


def quadratic_form(s: RhombicSurface, spin: SpinCochain, basis: CycleBasis) -> QuadraticForm:
    if not cone_angles_odd(s):
        raise EvenConeAngle("quadratic form needs every cone angle an odd multiple of 2*pi")
    vals = []
    for c in basis.cycles:
        x = winding(s, spin, c)
        k = round(x)
        if abs(x - k) > WINDING_TOL:
            raise NonIntegerWinding(f"winding {x} is not an integer")
        vals.append(k % 2)
    return QuadraticForm(tuple(vals), np.asarray(basis.Q) % 2)


def arf_sum(q: QuadraticForm) -> int:
    n = len(q.values)
    return sum(1 - 2 * q(x) for x in sectors(n))


def arf(q: QuadraticForm) -> int:
    total = arf_sum(q)
    if abs(total) != 2 ** (len(q.values) // 2):
        raise NotPlusMinus2g(f"sum of (-1)^q is {total}")
    return 0 if total > 0 else 1
