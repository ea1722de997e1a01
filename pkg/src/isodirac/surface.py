"""Bipartite graphs isoradially embedded in flat surfaces with cone points.

The flat metric is stored combinatorially: a rotation system (counterclockwise
cyclic order of edges at every vertex), the rhombus angle of every edge at its
white endpoint, and the common circumradius ``delta``.  Every edge is the
diagonal of a rhombus of side ``delta``; the opposite rhombus angle sits at the
black endpoint and the two remaining angles ``pi - alpha`` sit at the centres of
the two adjacent faces.  Lengths, cone angles and edge directions all follow.

Oriented edges are *darts*: ``2*e`` runs white to black along edge ``e`` and
``2*e + 1`` runs black to white.  Closed walks are sequences of darts.
"""
from __future__ import annotations

import json
import math
from collections import deque
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import (
    DegenerateCorner,
    Disconnected,
    EulerMismatch,
    InputError,
    InvalidRotation,
    NonBipartite,
    NonPositiveAngle,
    NotIncident,
    WhiteAngleSum,
)

TWO_PI = 2.0 * math.pi
ANGLE_TOL = 1e-9


def dart(edge: int, from_white: bool = True) -> int:
    return 2 * edge + (0 if from_white else 1)


def dart_edge(d: int) -> int:
    return d >> 1


def dart_sign(d: int) -> int:
    """+1 for a white-to-black dart, -1 for black-to-white."""
    return -1 if d & 1 else 1


@dataclass(frozen=True)
class FaceWalk:
    """Boundary of a face, traversed with the face on the left.

    ``corners[k]`` is the vertex the k-th dart leaves from.
    """

    index: int
    darts: tuple[int, ...]
    corners: tuple[int, ...]

    def __len__(self):
        return len(self.darts)


class RhombicSurface:
    """A bipartite graph isoradially embedded in a closed flat surface.

    Vertices and edges are addressed by integer index; the string ids given at
    construction are kept for serialisation.  Instances are not mutated after
    construction.
    """

    def __init__(self, vertex_ids, is_white, edge_ids, white_end, black_end,
                 alpha, rotation, delta, *, require_genus=True):
        self.vertex_ids = tuple(str(v) for v in vertex_ids)
        self.is_white = np.asarray(is_white, dtype=bool)
        self.edge_ids = tuple(str(e) for e in edge_ids)
        self.white_end = np.asarray(white_end, dtype=int)
        self.black_end = np.asarray(black_end, dtype=int)
        self.alpha = np.asarray(alpha, dtype=float)
        self.rotation = tuple(tuple(int(e) for e in r) for r in rotation)
        self.delta = float(delta)
        self._vindex = {v: i for i, v in enumerate(self.vertex_ids)}
        self._eindex = {e: i for i, e in enumerate(self.edge_ids)}
        self._validate_combinatorics()
        self._derive_geometry()
        self._trace_faces()
        self._validate_topology(require_genus)

    # -- construction -----------------------------------------------------

    def _validate_combinatorics(self):
        nv, ne = len(self.vertex_ids), len(self.edge_ids)
        if len(self._vindex) != nv or len(self._eindex) != ne:
            raise InputError("duplicate vertex or edge id")
        if self.is_white.shape != (nv,) or len(self.rotation) != nv:
            raise InputError("vertex data of inconsistent length")
        if not (self.delta > 0 and math.isfinite(self.delta)):
            raise NonPositiveAngle(f"radius delta must be positive, got {self.delta}")
        for e in range(ne):
            w, b = self.white_end[e], self.black_end[e]
            if not (self.is_white[w] and not self.is_white[b]):
                raise NonBipartite(
                    f"edge {self.edge_ids[e]} joins {self.vertex_ids[w]} and "
                    f"{self.vertex_ids[b]}, which are not white and black")
            a = self.alpha[e]
            if not (0.0 < a < math.pi):
                raise NonPositiveAngle(
                    f"edge {self.edge_ids[e]}: rhombus angle {a} not in (0, pi)")
        seen = np.zeros((ne, 2), dtype=int)
        for v, rot in enumerate(self.rotation):
            for e in rot:
                if not 0 <= e < ne:
                    raise InvalidRotation(f"vertex {self.vertex_ids[v]}: unknown edge {e}")
                if self.white_end[e] == v:
                    seen[e, 0] += 1
                elif self.black_end[e] == v:
                    seen[e, 1] += 1
                else:
                    raise InvalidRotation(
                        f"edge {self.edge_ids[e]} listed at non-incident vertex "
                        f"{self.vertex_ids[v]}")
        if not np.all(seen == 1):
            bad = int(np.argwhere(seen != 1)[0][0])
            raise InvalidRotation(
                f"edge {self.edge_ids[bad]} must appear exactly once in the rotation "
                "of each endpoint")
        for v in np.flatnonzero(self.is_white):
            total = float(sum(self.alpha[e] for e in self.rotation[v]))
            if abs(total - TWO_PI) > ANGLE_TOL:
                raise WhiteAngleSum(
                    f"white vertex {self.vertex_ids[v]}: rhombus angles sum to "
                    f"{total!r}, expected 2*pi")

    def _derive_geometry(self):
        self.position = []
        self.directions = []
        theta = np.zeros(len(self.vertex_ids))
        for v, rot in enumerate(self.rotation):
            self.position.append({e: k for k, e in enumerate(rot)})
            a = self.alpha[list(rot)] if rot else np.zeros(0)
            # each edge bisects its rhombus, so consecutive edges are separated
            # by half of each of their two rhombus angles
            cum = np.concatenate(([0.0], np.cumsum(a)[:-1])) if len(a) else a
            self.directions.append(cum + (a - a[0]) / 2.0 if len(a) else a)
            theta[v] = float(a.sum())
        self.vertex_angle = theta

    def _trace_faces(self):
        ne = len(self.edge_ids)
        dart_face = np.full(2 * ne, -1, dtype=int)
        faces = []
        for start in range(2 * ne):
            if dart_face[start] >= 0:
                continue
            darts, corners = [], []
            d = start
            while dart_face[d] < 0:
                dart_face[d] = len(faces)
                darts.append(d)
                corners.append(self.tail(d))
                d = self.next_in_face(d)
            if d != start:
                raise InvalidRotation("face tracing did not close up")
            faces.append(FaceWalk(len(faces), tuple(darts), tuple(corners)))
        self.faces = tuple(faces)
        self.dart_face = dart_face
        self.face_angle = np.array(
            [sum(math.pi - self.alpha[dart_edge(d)] for d in f.darts) for f in faces])

    def _validate_topology(self, require_genus):
        if np.any(self.vertex_angle <= 0) or np.any(self.face_angle <= 0):
            raise NonPositiveAngle("every vertex and face needs a positive cone angle")
        if not self._connected():
            raise Disconnected("graph is not connected")
        chi = self.euler_characteristic
        if chi % 2 or chi > 2 or (require_genus and chi > 0):
            raise EulerMismatch(
                f"V - E + F = {chi}; a closed orientable surface of genus >= 1 "
                "is required")
        defect = float(np.sum(TWO_PI - self.vertex_angle[~self.is_white])
                       + np.sum(TWO_PI - self.face_angle))
        if abs(defect - TWO_PI * chi) > 1e-9 * max(1, len(self.edge_ids)):
            raise EulerMismatch(f"Gauss-Bonnet fails: total defect {defect}")

    def _connected(self):
        nv = len(self.vertex_ids)
        if nv == 0:
            return False
        seen = {0}
        queue = deque([0])
        while queue:
            v = queue.popleft()
            for e in self.rotation[v]:
                u = self.other_end(e, v)
                if u not in seen:
                    seen.add(u)
                    queue.append(u)
        return len(seen) == nv

    # -- combinatorics ----------------------------------------------------

    @property
    def n_vertices(self):
        return len(self.vertex_ids)

    @property
    def n_edges(self):
        return len(self.edge_ids)

    @property
    def n_faces(self):
        return len(self.faces)

    @property
    def euler_characteristic(self):
        return self.n_vertices - self.n_edges + self.n_faces

    @property
    def genus(self):
        return (2 - self.euler_characteristic) // 2

    @property
    def white_vertices(self):
        return np.flatnonzero(self.is_white)

    @property
    def black_vertices(self):
        return np.flatnonzero(~self.is_white)

    def vertex_index(self, vid):
        return self._vindex[str(vid)]

    def edge_index(self, eid):
        return self._eindex[str(eid)]

    def tail(self, d):
        e = dart_edge(d)
        return int(self.black_end[e] if d & 1 else self.white_end[e])

    def head(self, d):
        e = dart_edge(d)
        return int(self.white_end[e] if d & 1 else self.black_end[e])

    def other_end(self, e, v):
        w, b = int(self.white_end[e]), int(self.black_end[e])
        if v == w:
            return b
        if v == b:
            return w
        raise NotIncident(f"edge {self.edge_ids[e]} is not incident to {self.vertex_ids[v]}")

    def dart_from(self, e, v):
        """The dart along edge ``e`` leaving vertex ``v``."""
        if v == self.white_end[e]:
            return 2 * e
        if v == self.black_end[e]:
            return 2 * e + 1
        raise NotIncident(f"edge {self.edge_ids[e]} is not incident to {self.vertex_ids[v]}")

    def next_in_face(self, d):
        h = self.head(d)
        k = self.position[h][dart_edge(d)]
        nxt = self.rotation[h][k - 1]
        return self.dart_from(nxt, h)

    def walk_vertices(self, walk):
        return [self.tail(d) for d in walk]

    # -- metric -----------------------------------------------------------

    def edge_length(self, e):
        return 2.0 * self.delta * math.cos(self.alpha[e] / 2.0)

    def dual_length(self, e):
        return 2.0 * self.delta * math.sin(self.alpha[e] / 2.0)

    @property
    def dual_lengths(self):
        return 2.0 * self.delta * np.sin(self.alpha / 2.0)

    def direction(self, v, e):
        """Cumulative counterclockwise angle of edge ``e`` at ``v``, first edge at 0."""
        k = self.position[v].get(e)
        if k is None:
            raise NotIncident(f"edge {self.edge_ids[e]} is not incident to {self.vertex_ids[v]}")
        return float(self.directions[v][k])

    # -- serialisation ----------------------------------------------------

    def to_dict(self):
        return {
            "delta": self.delta,
            "vertices": [
                {"id": v, "color": "white" if w else "black"}
                for v, w in zip(self.vertex_ids, self.is_white)
            ],
            "rotations": {
                v: [self.edge_ids[e] for e in rot]
                for v, rot in zip(self.vertex_ids, self.rotation)
            },
            "edges": {
                self.edge_ids[e]: {
                    "white": self.vertex_ids[self.white_end[e]],
                    "black": self.vertex_ids[self.black_end[e]],
                    "alpha": float(self.alpha[e]),
                }
                for e in range(self.n_edges)
            },
        }

    def __repr__(self):
        return (f"RhombicSurface(V={self.n_vertices}, E={self.n_edges}, "
                f"F={self.n_faces}, genus={self.genus})")


def build_surface(spec, *, require_genus=True) -> RhombicSurface:
    """Validate a surface description (the JSON exchange format) and build it."""
    try:
        vertices = spec["vertices"]
        rotations = spec["rotations"]
        edges = spec["edges"]
        delta = spec.get("delta", 1.0)
    except (KeyError, TypeError, AttributeError) as exc:
        raise InputError(f"malformed surface description: {exc!r}") from None
    vertex_ids, is_white = [], []
    for item in vertices:
        color = item.get("color")
        if color not in ("white", "black"):
            raise InputError(f"vertex {item.get('id')!r}: color must be white or black")
        vertex_ids.append(str(item["id"]))
        is_white.append(color == "white")
    vindex = {v: i for i, v in enumerate(vertex_ids)}
    edge_ids = [str(e) for e in edges]
    eindex = {e: i for i, e in enumerate(edge_ids)}
    try:
        white_end = [vindex[str(edges[e]["white"])] for e in edges]
        black_end = [vindex[str(edges[e]["black"])] for e in edges]
        alpha = [float(edges[e]["alpha"]) for e in edges]
        rotation = [[eindex[str(e)] for e in rotations[v]] for v in vertex_ids]
    except KeyError as exc:
        raise InputError(f"unknown or missing id {exc}") from None
    return RhombicSurface(vertex_ids, is_white, edge_ids, white_end, black_end,
                          alpha, rotation, delta, require_genus=require_genus)


def load_surface(path) -> RhombicSurface:
    try:
        spec = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: not valid JSON ({exc})") from None
    return build_surface(spec)


def save_surface(s: RhombicSurface, path):
    Path(path).write_text(json.dumps(s.to_dict(), indent=1), encoding="utf-8")


def cone_angles(s: RhombicSurface) -> dict:
    """Cone angles at black vertices (keyed ``("vertex", id)``) and faces (``("face", k)``)."""
    out = {("vertex", s.vertex_ids[b]): float(s.vertex_angle[b]) for b in s.black_vertices}
    out.update({("face", f): float(t) for f, t in enumerate(s.face_angle)})
    return out


def singular_set(s: RhombicSurface, tol=ANGLE_TOL) -> dict:
    return {k: t for k, t in cone_angles(s).items() if abs(t - TWO_PI) > tol}


def edge_direction(s: RhombicSurface, w: int, e: int, offset: float = 0.0) -> float:
    """Angle at ``w`` from the reference direction to edge ``e``, in [0, 2*pi).

    The reference direction at a white vertex is its first listed edge;
    ``offset`` rotates it counterclockwise.
    """
    return (s.direction(w, e) - offset) % TWO_PI


def turning_angle(s: RhombicSurface, walk, v: int) -> float:
    """Angle on the left of a closed walk at vertex ``v``.

    Swept counterclockwise from the outgoing edge to the incoming edge; lies in
    (0, theta_v).  ``walk`` is a cyclic sequence of darts.
    """
    walk = list(walk)
    for k, d in enumerate(walk):
        if s.tail(d) == v:
            return corner_angle(s, walk[k - 1], d)
    raise NotIncident(f"walk does not pass through {s.vertex_ids[v]}")


def corner_angle(s: RhombicSurface, d_in: int, d_out: int) -> float:
    v = s.tail(d_out)
    if s.head(d_in) != v:
        raise InputError("darts do not meet at a vertex")
    e_in, e_out = dart_edge(d_in), dart_edge(d_out)
    if e_in == e_out:
        raise DegenerateCorner(f"walk backtracks along {s.edge_ids[e_in]}")
    theta = s.vertex_angle[v]
    return float((s.direction(v, e_in) - s.direction(v, e_out)) % theta)


def walk_corner_angles(s: RhombicSurface, walk):
    """Left angles at every vertex of a closed walk, aligned with ``walk``."""
    walk = list(walk)
    return [corner_angle(s, walk[k - 1], walk[k]) for k in range(len(walk))]


def star_area(s: RhombicSurface, w: int) -> float:
    return float(sum(s.delta ** 2 * math.sin(s.alpha[e]) for e in s.rotation[w]))
