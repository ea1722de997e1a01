"""Homology basis of a surface from its embedded graph.

A breadth-first spanning tree of the graph and a spanning tree of the dual
graph on the remaining edges leave exactly ``2g`` edges; each closes a tree
path into a basis cycle.  Dual integer cocycles come from peeling the dual
tree, and intersection numbers from pushing each cycle off to its left.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

import numpy as np

from . import gf2
from .errors import Disconnected, InputError, NotACycle, SingularSolve
from .surface import RhombicSurface, dart_edge, dart_sign


@dataclass(frozen=True)
class TreeCotree:
    tree: tuple[int, ...]
    cotree: tuple[int, ...]
    leftover: tuple[int, ...]
    parent_edge: tuple[int, ...]  # -1 at the root
    depth: tuple[int, ...]


@dataclass(frozen=True)
class CycleBasis:
    """Basis cycles, their dual integer cocycles and the mod-2 intersection form.

    ``cycles[j]`` is a tuple of darts; ``beta[j]`` is an integer cocycle on
    white-to-black oriented edges with ``beta[i](cycles[j]) == (i == j)``;
    ``crossing[j]`` counts (mod 2) how often the left push-off of
    ``cycles[j]`` crosses each edge, so ``crossing[i](cycles[j]) = Q[i, j]``.
    """

    cycles: tuple[tuple[int, ...], ...]
    beta: np.ndarray
    crossing: np.ndarray
    Q: np.ndarray
    leftover: tuple[int, ...] = field(default=())

    @property
    def size(self):
        return len(self.cycles)

    @property
    def genus(self):
        return len(self.cycles) // 2


def tree_cotree(s: RhombicSurface) -> TreeCotree:
    """BFS tree rooted at vertex 0, BFS dual tree rooted at face 0, and the rest."""
    nv, ne = s.n_vertices, s.n_edges
    parent = [-1] * nv
    depth = [-1] * nv
    depth[0] = 0
    in_tree = np.zeros(ne, dtype=bool)
    queue = deque([0])
    while queue:
        v = queue.popleft()
        for e in s.rotation[v]:
            u = s.other_end(e, v)
            if depth[u] < 0:
                depth[u] = depth[v] + 1
                parent[u] = e
                in_tree[e] = True
                queue.append(u)
    if min(depth) < 0:
        raise Disconnected("graph is not connected")

    in_cotree = np.zeros(ne, dtype=bool)
    seen = np.zeros(s.n_faces, dtype=bool)
    seen[0] = True
    queue = deque([0])
    while queue:
        f = queue.popleft()
        for d in s.faces[f].darts:
            e = dart_edge(d)
            if in_tree[e] or in_cotree[e]:
                continue
            g = s.dart_face[d ^ 1]
            if not seen[g]:
                seen[g] = True
                in_cotree[e] = True
                queue.append(g)
    tree = tuple(int(e) for e in np.flatnonzero(in_tree))
    cotree = tuple(int(e) for e in np.flatnonzero(in_cotree))
    leftover = tuple(int(e) for e in np.flatnonzero(~in_tree & ~in_cotree))
    return TreeCotree(tree, cotree, leftover, tuple(parent), tuple(depth))


def _tree_path(s, tc, a, b):
    """Darts of the tree path from vertex ``a`` to vertex ``b``."""
    up_a, up_b = [], []
    while a != b:
        if tc.depth[a] >= tc.depth[b]:
            e = tc.parent_edge[a]
            up_a.append(s.dart_from(e, a))
            a = s.other_end(e, a)
        else:
            e = tc.parent_edge[b]
            up_b.append(s.dart_from(e, s.other_end(e, b)))
            b = s.other_end(e, b)
    return up_a + up_b[::-1]


def peel_faces(s, cotree, values, target, mul, inv):
    """Fill in ``values`` on cotree edges so every face boundary product hits ``target``.

    ``values`` is a mutable list indexed by edge (entries on cotree edges are
    overwritten); ``target[f]`` is the required product around face ``f``.
    A dart running black to white contributes the inverse of the edge value.
    The root face (0) is not imposed; returns its residual product.
    """
    ne = s.n_edges
    open_edge = np.zeros(ne, dtype=bool)
    open_edge[list(cotree)] = True
    degree = np.zeros(s.n_faces, dtype=int)
    for e in cotree:
        degree[s.dart_face[2 * e]] += 1
        degree[s.dart_face[2 * e + 1]] += 1
    queue = deque(f for f in range(1, s.n_faces) if degree[f] == 1)

    def boundary(f, skip=-1):
        acc = None
        for d in s.faces[f].darts:
            e = dart_edge(d)
            if e == skip:
                continue
            x = values[e] if dart_sign(d) > 0 else inv(values[e])
            acc = x if acc is None else mul(acc, x)
        return acc

    while queue:
        f = queue.popleft()
        if degree[f] != 1:
            continue
        d_open = next(d for d in s.faces[f].darts if open_edge[dart_edge(d)])
        e = dart_edge(d_open)
        rest = boundary(f, skip=e)
        need = target[f] if rest is None else mul(target[f], inv(rest))
        values[e] = need if dart_sign(d_open) > 0 else inv(need)
        open_edge[e] = False
        degree[f] -= 1
        g = s.dart_face[d_open ^ 1]
        degree[g] -= 1
        if g != 0 and degree[g] == 1:
            queue.append(g)
    if open_edge.any():
        raise SingularSolve("dual tree peeling left edges undetermined")
    return boundary(0)


def evaluate(cochain, walk) -> int:
    """Signed sum of an additive cochain (white-to-black oriented) along darts."""
    return int(sum(dart_sign(d) * cochain[dart_edge(d)] for d in walk))


def crossing_cocycle(s: RhombicSurface, cycle) -> np.ndarray:
    """Crossing counts (mod 2) of the left push-off of a simple cycle.

    At every vertex of the cycle, the edges strictly inside the
    counterclockwise wedge from the outgoing to the incoming edge are crossed.
    """
    out = np.zeros(s.n_edges, dtype=np.int64)
    cycle = list(cycle)
    for k, d_out in enumerate(cycle):
        d_in = cycle[k - 1]
        v = s.tail(d_out)
        rot = s.rotation[v]
        n = len(rot)
        i_out = s.position[v][dart_edge(d_out)]
        i_in = s.position[v][dart_edge(d_in)]
        i = (i_out + 1) % n
        while i != i_in:
            out[rot[i]] += 1
            i = (i + 1) % n
    return out % 2


def _intersection_matrix(s, cycles, crossing):
    q = np.array([[evaluate(crossing[i], c) % 2 for c in cycles]
                  for i in range(len(cycles))], dtype=np.int64)
    return q


def cycle_basis(s: RhombicSurface) -> CycleBasis:
    tc = tree_cotree(s)
    ne = s.n_edges
    cycles = []
    for e in tc.leftover:
        w, b = int(s.white_end[e]), int(s.black_end[e])
        cycles.append(tuple([2 * e] + _tree_path(s, tc, b, w)))
    beta = np.zeros((len(cycles), ne), dtype=np.int64)
    add, neg = (lambda x, y: x + y), (lambda x: -x)
    for j, e in enumerate(tc.leftover):
        values = [0] * ne
        values[e] = 1
        residual = peel_faces(s, tc.cotree, values, [0] * s.n_faces, add, neg)
        if residual not in (0, None):
            raise SingularSolve("dual cocycle does not close on the root face")
        beta[j] = values
    pairing = np.array([[evaluate(beta[i], c) for c in cycles] for i in range(len(cycles))])
    if not np.array_equal(pairing, np.eye(len(cycles), dtype=int)):
        raise SingularSolve("dual cocycles do not pair to the identity")
    return _with_cycles(s, cycles, beta, tc.leftover)


def _with_cycles(s, cycles, beta, leftover=()):
    cycles = tuple(tuple(int(d) for d in c) for c in cycles)
    crossing = np.array([crossing_cocycle(s, c) for c in cycles], dtype=np.int64)
    crossing = crossing.reshape(len(cycles), s.n_edges)
    q = _intersection_matrix(s, cycles, crossing)
    if len(cycles):
        if not np.array_equal(q, q.T) or np.any(np.diag(q)):
            raise SingularSolve("intersection form is not alternating")
        if gf2.rank(q) != len(cycles):
            raise SingularSolve("intersection form is degenerate")
    return CycleBasis(cycles, beta, crossing, q, tuple(leftover))


def cycle_chain(s: RhombicSurface, walk) -> np.ndarray:
    """Signed edge coefficients (white-to-black positive) of a walk."""
    chain = np.zeros(s.n_edges, dtype=np.int64)
    for d in walk:
        chain[dart_edge(d)] += dart_sign(d)
    return chain


def boundary_of_chain(s: RhombicSurface, chain) -> np.ndarray:
    bd = np.zeros(s.n_vertices, dtype=np.int64)
    np.add.at(bd, s.black_end, chain)
    np.subtract.at(bd, s.white_end, chain)
    return bd


def homology_class(s: RhombicSurface, basis: CycleBasis, chain) -> np.ndarray:
    """Coordinates of a 1-cycle in the basis, as integers.

    ``chain`` holds one signed coefficient per edge (white-to-black positive).
    """
    chain = np.asarray(chain, dtype=np.int64)
    if chain.shape != (s.n_edges,):
        raise InputError("chain must have one coefficient per edge")
    if np.any(boundary_of_chain(s, chain)):
        raise NotACycle("chain has nonzero boundary")
    return basis.beta @ chain


def chain_to_cycle(s: RhombicSurface, chain):
    """Darts of a simple cycle with the given coefficients, or None.

    Returns None unless every coefficient is in {-1, 0, 1} and the support is
    a single cycle visiting each vertex at most once.
    """
    chain = np.asarray(chain)
    if np.any(np.abs(chain) > 1) or not chain.any():
        return None
    darts = [2 * int(e) + (0 if chain[e] > 0 else 1) for e in np.flatnonzero(chain)]
    leaving = {}
    for d in darts:
        v = s.tail(d)
        if v in leaving:
            return None
        leaving[v] = d
    if any(s.head(d) not in leaving for d in darts):
        return None
    start = darts[0]
    walk = [start]
    v = s.head(start)
    while v != s.tail(start):
        walk.append(leaving[v])
        v = s.head(leaving[v])
    if len(walk) != len(darts):
        return None
    return tuple(walk)


def reroute(s: RhombicSurface, cycle, face: int, sign: int = 1):
    """The cycle ``cycle + sign * boundary(face)`` if it is again simple, else None."""
    chain = cycle_chain(s, cycle) + sign * cycle_chain(s, s.faces[face].darts)
    return chain_to_cycle(s, chain)


def replace_cycles(s: RhombicSurface, basis: CycleBasis, new_cycles) -> CycleBasis:
    """Basis with homologous replacement cycles; dual cocycles are kept."""
    for old, new in zip(basis.cycles, new_cycles):
        if np.any(basis.beta @ (cycle_chain(s, new) - cycle_chain(s, old))):
            raise InputError("replacement cycle is not homologous to the original")
    return _with_cycles(s, new_cycles, basis.beta, basis.leftover)
