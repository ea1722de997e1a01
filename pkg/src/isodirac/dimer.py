"""Perfect matchings by exhaustive enumeration, and the determinant formulas they test."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from .cochain import S1, UnitCochain, evaluate, kasteleyn_signs, sectors
from .dirac import condition_i, condition_ii, determinant, dirac_matrix, edge_weights, omega_v, twisted_adjacency
from .errors import ConditionsViolated, OddQ0Unresolvable
from .homology import CycleBasis, cycle_basis, reroute, replace_cycles
from .spin import (
    SpinCochain,
    arf,
    canonical_cochain,
    quadratic_form,
    spin_base,
    spin_family,
    star_normalize,
    star_target,
    winding,
)
from .surface import RhombicSurface

REL_TOL = 1e-9


@dataclass(frozen=True)
class DimerCensus:
    """All perfect matchings, each a sorted tuple of edge indices.

    ``classes[k]`` is the homology class of ``matchings[k]`` minus the base
    matching ``matchings[0]`` (empty when no basis was given).
    """

    matchings: tuple[tuple[int, ...], ...]
    classes: np.ndarray

    def __len__(self):
        return len(self.matchings)


def enumerate_matchings(s: RhombicSurface, basis: CycleBasis | None = None) -> DimerCensus:
    """Backtracking over the lowest unmatched vertex; deterministic order."""
    nv = s.n_vertices
    ng = 0 if basis is None else basis.size
    if len(s.white_vertices) != len(s.black_vertices):
        return DimerCensus((), np.zeros((0, ng), dtype=np.int64))
    incident = [[(e, s.other_end(e, v)) for e in sorted(s.rotation[v])] for v in range(nv)]
    matched = [False] * nv
    current, found = [], []

    def extend(start):
        v = start
        while v < nv and matched[v]:
            v += 1
        if v == nv:
            found.append(tuple(sorted(current)))
            return
        matched[v] = True
        for e, u in incident[v]:
            if not matched[u]:
                matched[u] = True
                current.append(e)
                extend(v + 1)
                current.pop()
                matched[u] = False
        matched[v] = False

    extend(0)
    if basis is None or not found:
        return DimerCensus(tuple(found), np.zeros((len(found), ng), dtype=np.int64))
    arr = np.array(found, dtype=np.int64)
    per_edge = basis.beta.T  # (E, 2g)
    raw = per_edge[arr].sum(axis=1)
    return DimerCensus(tuple(found), raw - raw[0])


def permanent_count(s: RhombicSurface) -> int:
    """Number of perfect matchings from Ryser's permanent formula (small graphs only)."""
    rows = {int(v): k for k, v in enumerate(s.white_vertices)}
    cols = {int(v): k for k, v in enumerate(s.black_vertices)}
    if len(rows) != len(cols):
        return 0
    n = len(rows)
    a = np.zeros((n, n), dtype=np.int64)
    for e in range(s.n_edges):
        a[rows[int(s.white_end[e])], cols[int(s.black_end[e])]] += 1
    total = 0
    for subset in range(1, 1 << n):
        picked = [j for j in range(n) if subset >> j & 1]
        sign = -1 if (n - len(picked)) % 2 else 1
        total += sign * int(np.prod(a[:, picked].sum(axis=1)))
    return total


def matching_weights(s: RhombicSurface, census: DimerCensus, nu="dual") -> np.ndarray:
    w = edge_weights(s, nu)
    if not len(census):
        return np.zeros(0)
    return np.prod(w[np.array(census.matchings, dtype=np.int64)], axis=1)


def partition_brute(s: RhombicSurface, census: DimerCensus, nu="dual") -> float:
    return float(matching_weights(s, census, nu).sum())


def partial_partitions(s: RhombicSurface, census: DimerCensus, nu="dual") -> dict:
    """Total weight of the matchings in each homology class."""
    out = {}
    for cls, wt in zip(map(tuple, census.classes.tolist()), matching_weights(s, census, nu)):
        out[cls] = out.get(cls, 0.0) + float(wt)
    return out


def sector_sign(eps, Q) -> int:
    n = len(eps)
    k = sum(eps[i] * eps[j] * int(Q[i, j]) for i in range(n) for j in range(i + 1, n))
    return -1 if k % 2 else 1


def normalized_spin(s: RhombicSurface, basis: CycleBasis) -> SpinCochain:
    """A spin structure taking the normalized values on the basis cycles."""
    kappa = canonical_cochain(s, basis)
    return star_normalize(s, spin_base(s, kappa), basis)


def sector_family(s: RhombicSurface, basis: CycleBasis, lam0: SpinCochain):
    """Twists of lam0 by the crossing cocycles of the basis cycles, one per sector."""
    return spin_family(s, lam0, basis, cocycles=basis.crossing)


def _require_conditions(s, basis):
    if not condition_i(s):
        raise ConditionsViolated("a face cone angle is not an odd multiple of 2*pi")
    ok, res = condition_ii(s, basis)
    if not ok:
        raise ConditionsViolated(f"turning-angle residues on basis cycles: {res}")


@dataclass(frozen=True)
class SectorResult:
    eps: tuple[int, ...]
    det: complex
    sign: int
    arf: int | None = None


def sector_determinants(s: RhombicSurface, basis: CycleBasis | None = None, nu="dual",
                        offsets=None, lam0: SpinCochain | None = None):
    basis = basis or cycle_basis(s)
    lam0 = lam0 or normalized_spin(s, basis)
    out = []
    for eps, lam in zip(sectors(basis.size), sector_family(s, basis, lam0)):
        d = determinant(dirac_matrix(s, lam, nu, offsets))
        out.append(SectorResult(eps, d, sector_sign(eps, basis.Q)))
    return out


def partition_via_determinants(s: RhombicSurface, basis: CycleBasis | None = None,
                               nu="dual", offsets=None) -> float:
    """(1/2^g) |sum over sectors of sign * det D|."""
    basis = basis or cycle_basis(s)
    _require_conditions(s, basis)
    rows = sector_determinants(s, basis, nu, offsets)
    return abs(sum(r.sign * r.det for r in rows)) / 2 ** basis.genus


def _normalized_parity(s, lam, cycle):
    """Parity of q on ``cycle`` after renormalizing ``lam`` for that cycle."""
    flip = 0 if abs(evaluate(lam.lam, cycle) / star_target(s, cycle) - 1.0) < 1e-6 else 1
    return (round(winding(s, lam, cycle)) + flip) % 2


def even_basis(s: RhombicSurface, basis: CycleBasis, max_depth: int = 4) -> CycleBasis:
    """Replace basis cycles by homologous simple cycles on which q_0 is even.

    Cycles are moved across one face at a time (breadth first, up to
    ``max_depth`` moves).  The dual cocycles and intersection form are unchanged.
    """
    lam = normalized_spin(s, basis)
    new = []
    for cycle in basis.cycles:
        found = _search_even(s, lam, cycle, max_depth)
        if found is None:
            raise OddQ0Unresolvable("no nearby cycle with even q_0 value")
        new.append(found)
    return replace_cycles(s, basis, new)


def _search_even(s, lam, cycle, max_depth):
    if _normalized_parity(s, lam, cycle) == 0:
        return cycle
    seen = {frozenset(cycle)}
    frontier = deque([(cycle, 0)])
    while frontier:
        c, depth = frontier.popleft()
        if depth == max_depth:
            continue
        faces = sorted({int(s.dart_face[d]) for d in c} | {int(s.dart_face[d ^ 1]) for d in c})
        for f in faces:
            for sign in (1, -1):
                nxt = reroute(s, c, f, sign)
                if nxt is None or frozenset(nxt) in seen:
                    continue
                if _normalized_parity(s, lam, nxt) == 0:
                    return nxt
                seen.add(frozenset(nxt))
                frontier.append((nxt, depth + 1))
    return None


def arf_sectors(s: RhombicSurface, basis: CycleBasis | None = None, nu="dual", offsets=None):
    """Per-sector determinants with Arf invariants, on a basis with even q_0."""
    basis = even_basis(s, basis or cycle_basis(s))
    lam0 = normalized_spin(s, basis)
    out = []
    for eps, lam in zip(sectors(basis.size), sector_family(s, basis, lam0)):
        d = determinant(dirac_matrix(s, lam, nu, offsets))
        a = arf(quadratic_form(s, lam, basis))
        out.append(SectorResult(eps, d, sector_sign(eps, basis.Q), a))
    return basis, out


def partition_via_arf(s: RhombicSurface, basis: CycleBasis | None = None, nu="dual",
                      offsets=None) -> float:
    """(1/2^g) |sum over sectors of (-1)^Arf * det D|."""
    basis = basis or cycle_basis(s)
    _require_conditions(s, basis)
    basis, rows = arf_sectors(s, basis, nu, offsets)
    return abs(sum((1 - 2 * r.arf) * r.det for r in rows)) / 2 ** basis.genus


def character_sum(s: RhombicSurface, census: DimerCensus, phi, nu="dual") -> complex:
    """sum over matchings of prod_j phi_j^(class_j) * weight."""
    phi = np.asarray(phi, dtype=complex)
    if not len(census):
        return 0.0 + 0.0j
    factors = np.prod(phi[None, :] ** census.classes, axis=1)
    return complex(np.sum(factors * matching_weights(s, census, nu)))


def character_cochain(s: RhombicSurface, basis: CycleBasis, phi) -> UnitCochain:
    """Flat cochain tau * prod_j phi_j^beta_j, worth tau(C_j) * phi_j on basis cycle j."""
    tau = kasteleyn_signs(s, basis)
    phi = np.asarray(phi, dtype=complex)
    vals = tau.values * np.prod(phi[:, None] ** basis.beta, axis=0)
    return UnitCochain(vals / np.abs(vals), S1)


def cochain_character(s: RhombicSurface, basis: CycleBasis, omega: UnitCochain) -> np.ndarray:
    """phi_j = omega(C_j) * tau(C_j), the character a flat cochain defines."""
    out = []
    for c in basis.cycles:
        sign = -1.0 if (len(c) // 2) % 2 == 0 else 1.0
        out.append(evaluate(omega, c) * sign)
    return np.array(out)


def twisted_determinant_sum(s: RhombicSurface, basis: CycleBasis, omega: UnitCochain,
                            nu="dual") -> complex:
    """(1/2^g) sum over sectors of sign * det of the omega-twisted adjacency matrix."""
    total = 0.0 + 0.0j
    for eps in sectors(basis.size):
        bits = np.zeros(s.n_edges, dtype=np.int64)
        for e_j, c in zip(eps, basis.crossing):
            if e_j:
                bits += c
        vals = omega.values * np.where(bits % 2, -1.0, 1.0)
        total += sector_sign(eps, basis.Q) * determinant(twisted_adjacency(s, vals, nu))
    return total / 2 ** basis.genus


def pf_k_check(s: RhombicSurface, census: DimerCensus, basis: CycleBasis, phi=None,
               omega: UnitCochain | None = None, nu="dual", tol=REL_TOL):
    """Compare |sum_alpha phi(alpha) Z_alpha| with the twisted determinant side.

    Give either a character ``phi`` (one unit number per basis cycle) or a flat
    cochain ``omega``; the character is then read off from ``omega``.
    Returns (lhs, rhs, passed).
    """
    if omega is None:
        omega = character_cochain(s, basis, phi)
    else:
        if not all(abs(evaluate(omega, f.darts) * (-1.0 if (len(f) // 2) % 2 == 0 else 1.0) - 1.0)
                   < 1e-9 for f in s.faces):
            raise ConditionsViolated("cochain is not Kasteleyn flat")
        phi = cochain_character(s, basis, omega)
    lhs = abs(character_sum(s, census, phi, nu))
    rhs = abs(twisted_determinant_sum(s, basis, omega, nu))
    return lhs, rhs, bool(abs(lhs - rhs) <= tol * max(lhs, rhs, 1e-300))


def dirac_cochain(s: RhombicSurface, spin: SpinCochain, offsets=None) -> UnitCochain:
    """omega_V * lambda; flat exactly when every face angle is an odd multiple of 2*pi."""
    if not condition_i(s):
        raise ConditionsViolated("a face cone angle is not an odd multiple of 2*pi")
    return UnitCochain(omega_v(s, offsets).values * spin.values, S1)
