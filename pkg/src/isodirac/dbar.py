"""The discrete d-bar operator on functions on black vertices.

Star-level functions take the rhombus angles of one white star (in
counterclockwise order) and the values at its black neighbours; the
surface-level wrappers read both off a :class:`RhombicSurface`.
"""
from __future__ import annotations

import numpy as np

from .surface import RhombicSurface

HOLOMORPHIC_TOL = 1e-9


def star_directions(alphas) -> np.ndarray:
    """Edge directions in a star: each edge bisects its rhombus, first edge at 0."""
    a = np.asarray(alphas, dtype=float)
    return np.concatenate(([0.0], np.cumsum(a)[:-1])) + (a - a[0]) / 2.0


def star_area_of(alphas, delta=1.0) -> float:
    return float(np.sum(delta ** 2 * np.sin(np.asarray(alphas, dtype=float))))


def star_dbar(alphas, delta, values, offset=0.0) -> complex:
    """(1 / (2 Area)) * sum_j nu_j exp(i theta_j) f(b_j) against a unit reference vector."""
    a = np.asarray(alphas, dtype=float)
    nu = 2.0 * delta * np.sin(a / 2.0)
    theta = star_directions(a) - offset
    return complex(np.sum(nu * np.exp(1j * theta) * np.asarray(values, dtype=complex))
                   / (2.0 * star_area_of(a, delta)))


def star_development(alphas, delta=1.0, offset=0.0):
    """Planar positions of the dual vertices x_0..x_m and black vertices b_1..b_m.

    The white vertex sits at the origin and the first edge points along
    angle ``-offset``.  Positions are produced by rotating one rhombus corner
    to the next, independently of :func:`star_directions`.
    """
    a = np.asarray(alphas, dtype=float)
    x = [delta * np.exp(-1j * (a[0] / 2.0 + offset))]
    for t in a:
        x.append(x[-1] * np.exp(1j * t))
    x = np.array(x)
    return x, x[:-1] + x[1:]


def star_coordinates(alphas, delta=1.0, offset=0.0) -> np.ndarray:
    """Black-vertex positions in the developed star."""
    return star_development(alphas, delta, offset)[1]


def star_morera(alphas, delta, values, offset=0.0) -> complex:
    """Discrete contour integral sum_j (x_j - x_{j-1}) f(b_j) around the developed star."""
    x, _ = star_development(alphas, delta, offset)
    return complex(np.sum(np.diff(x) * np.asarray(values, dtype=complex)))


def random_star(rng, degree: int, margin: float = 0.05) -> np.ndarray:
    """Random rhombus angles in (margin, pi - margin) summing to 2*pi."""
    if degree < 3:
        raise ValueError("a star needs at least three rhombi")
    while True:
        a = rng.dirichlet(np.ones(degree)) * 2.0 * np.pi
        if np.all(a > margin) and np.all(a < np.pi - margin):
            a[-1] = 2.0 * np.pi - a[:-1].sum()
            return a


# surface level

def _star(s: RhombicSurface, w: int):
    rot = s.rotation[w]
    return s.alpha[list(rot)], [int(s.black_end[e]) for e in rot]


def black_values(s: RhombicSurface, f) -> np.ndarray:
    """A function on black vertices as an array over all vertices (white entries 0)."""
    out = np.zeros(s.n_vertices, dtype=complex)
    if isinstance(f, dict):
        for k, v in f.items():
            out[s.vertex_index(k) if isinstance(k, str) else int(k)] = v
    else:
        arr = np.asarray(f, dtype=complex)
        if arr.shape == (s.n_vertices,):
            out[:] = arr
        elif arr.shape == (len(s.black_vertices),):
            out[s.black_vertices] = arr
        else:
            raise ValueError("function must give one value per black vertex or per vertex")
    out[s.white_vertices] = 0.0
    return out


def dbar_apply(s: RhombicSurface, f, w: int, offset: float = 0.0) -> complex:
    alphas, blacks = _star(s, w)
    vals = black_values(s, f)
    return star_dbar(alphas, s.delta, vals[blacks], offset)


def dbar_all(s: RhombicSurface, f, offsets=None) -> np.ndarray:
    vals = black_values(s, f)
    out = []
    for w in s.white_vertices:
        alphas, blacks = _star(s, int(w))
        off = 0.0 if offsets is None else float(offsets[w])
        out.append(star_dbar(alphas, s.delta, vals[blacks], off))
    return np.array(out)


def is_discrete_holomorphic(s: RhombicSurface, f, tol=HOLOMORPHIC_TOL) -> bool:
    return bool(np.all(np.abs(dbar_all(s, f)) < tol))


def morera_integral(s: RhombicSurface, f, w: int, offset: float = 0.0) -> complex:
    alphas, blacks = _star(s, w)
    vals = black_values(s, f)
    return star_morera(alphas, s.delta, vals[blacks], offset)
