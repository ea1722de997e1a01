"""Constructors for example surfaces.

Every builder returns a fully validated :class:`RhombicSurface`.
"""
from __future__ import annotations

import math

import numpy as np

from .errors import AngleOutOfRange, ConstructionInvalid, InputError, WhiteDegreeTooSmall
from .surface import RhombicSurface, build_surface


def _assemble(vertices, edges, rotations, delta, require_genus=True):
    """Build from vertices [(id, is_white)], edges [(id, white, black, alpha)], rotations."""
    spec = {
        "delta": delta,
        "vertices": [{"id": v, "color": "white" if w else "black"} for v, w in vertices],
        "edges": {e: {"white": w, "black": b, "alpha": a} for e, w, b, a in edges},
        "rotations": rotations,
    }
    return build_surface(spec, require_genus=require_genus)


def honeycomb_torus(rows: int, cols: int, delta: float = 1.0) -> RhombicSurface:
    """Hexagonal lattice with rows x cols hexagons on a flat torus."""
    if rows < 1 or cols < 1:
        raise InputError("rows and cols must be at least 1")
    a = 2.0 * math.pi / 3.0
    vertices, edges, rot = [], [], {}
    w = lambda i, j: f"w{j % rows}_{i % cols}"
    b = lambda i, j: f"b{j % rows}_{i % cols}"
    for j in range(rows):
        for i in range(cols):
            vertices.append((w(i, j), True))
    for j in range(rows):
        for i in range(cols):
            vertices.append((b(i, j), False))
    for j in range(rows):
        for i in range(cols):
            # white edges point up, lower left and lower right
            tag = f"{j}_{i}"
            edges += [(f"u{tag}", w(i, j), b(i, j), a),
                      (f"l{tag}", w(i, j), b(i, j - 1), a),
                      (f"r{tag}", w(i, j), b(i + 1, j - 1), a)]
            rot[w(i, j)] = [f"u{tag}", f"l{tag}", f"r{tag}"]
    for j in range(rows):
        for i in range(cols):
            up = f"{(j + 1) % rows}_{i % cols}"
            upleft = f"{(j + 1) % rows}_{(i - 1) % cols}"
            rot[b(i, j)] = [f"l{up}", f"r{upleft}", f"u{j}_{i}"]
    return _assemble(vertices, edges, rot, delta)


def _row_angle(k):
    return math.pi / 3.0 if k % 2 == 0 else 2.0 * math.pi / 3.0


def rhombi_torus(m: int, n: int, row_angles=None, shift: int = 0,
                 delta: float = 1.0) -> RhombicSurface:
    """Flat torus tiled by ``m`` rows of rhombi, ``n`` graph vertices per level.

    Each row holds ``2n`` congruent rhombi with horizontal sides; the slanted
    sides of row ``k`` make the angle ``row_angles[k]`` with the horizontal
    (default alternating pi/3 and 2*pi/3, i.e. equilateral rhombi).  Graph
    vertices are every other lattice point, black on even levels and white on
    odd ones, and edges are the rhombus diagonals joining them.  The top level
    is glued to the bottom one after moving ``shift`` graph vertices to the right.
    """
    if m < 2 or m % 2 or n < 1:
        raise InputError("m must be even and at least 2, n at least 1")
    angles = [_row_angle(k) for k in range(m)] if row_angles is None else list(row_angles)
    if len(angles) != m:
        raise InputError(f"need {m} row angles, got {len(angles)}")
    for t in angles:
        if not 0.0 < t < math.pi:
            raise AngleOutOfRange(f"row angle {t} not in (0, pi)")
    cols = 2 * n

    def vid(j, k):
        j += 2 * shift * (k // m)
        return f"{'w' if k % 2 else 'b'}{k % m}_{j % cols}"

    vertices = []
    for k in range(m):
        for j in range(cols):
            if (j + k) % 2 == 0:
                vertices.append((vid(j, k), k % 2 == 1))
    vertices.sort(key=lambda x: not x[1])
    slots = {v: [None] * 4 for v, _ in vertices}
    edges = []
    for k in range(m):
        for j in range(cols):
            e = f"r{k}_{j}"
            if (j + k) % 2 == 0:
                lo, hi, a = vid(j, k), vid(j + 1, k + 1), angles[k]
                slots[lo][0] = e
                slots[hi][2] = e
            else:
                lo, hi, a = vid(j + 1, k), vid(j, k + 1), math.pi - angles[k]
                slots[lo][1] = e
                slots[hi][3] = e
            white, black = (lo, hi) if k % 2 else (hi, lo)
            edges.append((e, white, black, a))
    return _assemble(vertices, edges, slots, delta)


def _inside(poly, x, y):
    inside = False
    for (x0, y0), (x1, y1) in zip(poly, poly[1:] + poly[:1]):
        if (y0 > y) != (y1 > y) and x < x0 + (y - y0) * (x1 - x0) / (y1 - y0):
            inside = not inside
    return inside


def _on_segment(p, a, b):
    (x, y), (x0, y0), (x1, y1) = p, a, b
    return (abs((x1 - x0) * (y - y0) - (y1 - y0) * (x - x0)) < 1e-9
            and min(x0, x1) - 1e-9 <= x <= max(x0, x1) + 1e-9
            and min(y0, y1) - 1e-9 <= y <= max(y0, y1) + 1e-9)


def octagon_corners(shape=(4, 4, 2, 2), n: int = 1):
    """Corners of a right-angled octagon with turn pattern (+, +, +, -) twice."""
    a, b, c, d = shape
    pts = [(0, 0), (a, 0), (a, b), (a - c, b), (a - c, b - d), (-c, b - d), (-c, -d), (0, -d)]
    return [(n * x, n * y) for x, y in pts]


def genus2_octagon(n: int = 1, shape=(4, 4, 2, 2)) -> RhombicSurface:
    """Square lattice on an octagonal polyomino with opposite sides glued (genus 2).

    Graph vertices are the unit cells, coloured like a checkerboard; all eight
    corners meet in one point with cone angle 6*pi.
    """
    if n < 1:
        raise InputError("n must be at least 1")
    poly = octagon_corners(shape, n)
    sides = [(poly[i], poly[(i + 1) % 8]) for i in range(8)]
    shifts = []
    for i in range(8):
        # side i is glued to side i+4 with reversed orientation
        j = (i + 4) % 8
        shifts.append(np.subtract(poly[(j + 1) % 8], poly[i]))
    for i in range(4):
        ls = np.subtract(*sides[i][::-1])
        lo = np.subtract(*sides[i + 4][::-1])
        if not np.array_equal(ls, -lo):
            raise ConstructionInvalid("opposite sides are not parallel of equal length")
        if shifts[i].sum() % 2:
            raise ConstructionInvalid(
                f"shape {shape} at scale {n}: gluing breaks the checkerboard coloring")
    xs = [p[0] for p in poly]
    ys = [p[1] for p in poly]
    cells = [(x, y) for y in range(min(ys), max(ys)) for x in range(min(xs), max(xs))
             if _inside(poly, x + 0.5, y + 0.5)]
    cellset = set(cells)

    def step(cell, dx, dy):
        x, y = cell[0] + dx, cell[1] + dy
        if (x, y) in cellset:
            return (x, y)
        mid = (cell[0] + 0.5 + dx / 2.0, cell[1] + 0.5 + dy / 2.0)
        for i, (p, q) in enumerate(sides):
            if _on_segment(mid, p, q):
                t = shifts[i]
                target = (x + int(t[0]), y + int(t[1]))
                if target in cellset:
                    return target
        raise ConstructionInvalid(f"cannot glue across the boundary at {mid}")

    name = lambda c: f"{'w' if (c[0] + c[1]) % 2 == 0 else 'b'}{c[0]}_{c[1]}"
    vertices = sorted(((name(c), (c[0] + c[1]) % 2 == 0) for c in cells),
                      key=lambda v: not v[1])
    slots = {name(c): [None] * 4 for c in cells}
    edges = []
    for c in cells:
        for slot, (dx, dy) in ((0, (1, 0)), (1, (0, 1))):
            nb = step(c, dx, dy)
            e = f"{'h' if slot == 0 else 'v'}{c[0]}_{c[1]}"
            slots[name(c)][slot] = e
            if slots[name(nb)][slot + 2] is not None:
                raise ConstructionInvalid("inconsistent gluing")
            slots[name(nb)][slot + 2] = e
            white, black = (c, nb) if (c[0] + c[1]) % 2 == 0 else (nb, c)
            edges.append((e, name(white), name(black), math.pi / 2.0))
    return _assemble(vertices, edges, slots, math.sqrt(2.0) / 2.0)


def square_torus(rows: int, cols: int) -> RhombicSurface:
    """Square lattice on a rows x cols flat torus (both even); unit edges."""
    if rows < 2 or cols < 2 or rows % 2 or cols % 2:
        raise InputError("rows and cols must be even and at least 2")
    vertices, edges, rot = _square_pieces(rows, cols, "")
    return _assemble(vertices, edges, rot, math.sqrt(2.0) / 2.0)


def _square_pieces(rows, cols, tag):
    name = lambda x, y: f"{tag}{'w' if (x + y) % 2 == 0 else 'b'}{y % rows}_{x % cols}"
    vertices = sorted(((name(x, y), (x + y) % 2 == 0) for y in range(rows) for x in range(cols)),
                      key=lambda v: not v[1])
    rot = {v: [None] * 4 for v, _ in vertices}
    edges = []
    for y in range(rows):
        for x in range(cols):
            for slot, (dx, dy) in ((0, (1, 0)), (1, (0, 1))):
                e = f"{tag}{'h' if slot == 0 else 'v'}{y}_{x}"
                u, v = name(x, y), name(x + dx, y + dy)
                rot[u][slot] = e
                rot[v][slot + 2] = e
                white, black = (u, v) if (x + y) % 2 == 0 else (v, u)
                edges.append([e, white, black, math.pi / 2.0])
    return vertices, edges, rot


def slit_double_torus(size: int = 4) -> RhombicSurface:
    """Two square-lattice tori glued along a slit: genus 2 with two 4*pi faces.

    The horizontal edge at the origin of each copy has its black endpoint
    swapped with the other copy's, merging four squares into two octagons.
    """
    va, ea, ra = _square_pieces(size, size, "A")
    vb, eb, rb = _square_pieces(size, size, "B")
    ka = next(x for x in ea if x[0] == "Ah0_0")
    kb = next(x for x in eb if x[0] == "Bh0_0")
    black_a, black_b = ka[2], kb[2]
    ka[2], kb[2] = black_b, black_a
    rotations = {**ra, **rb}
    # each swapped edge takes over the slot of the edge it replaces
    rotations[black_a] = [kb[0] if e == ka[0] else e for e in rotations[black_a]]
    rotations[black_b] = [ka[0] if e == kb[0] else e for e in rotations[black_b]]
    edges = [tuple(x) for x in ea + eb]
    return _assemble(va + vb, edges, rotations, math.sqrt(2.0) / 2.0)


def realize_bipartite(white, black, edges, rotations, delta: float = 1.0,
                      require_genus: bool = True) -> RhombicSurface:
    """Embed an abstract bipartite map with symmetric white stars.

    ``edges`` maps an edge id to its (white, black) endpoints and
    ``rotations`` gives the counterclockwise edge order at every vertex.  Each
    rhombus angle is 2*pi divided by the degree of its white endpoint.
    """
    degree = {w: 0 for w in white}
    for e, (w, b) in edges.items():
        if w not in degree:
            raise InputError(f"edge {e}: {w} is not a white vertex")
        degree[w] += 1
    small = [w for w, d in degree.items() if d < 3]
    if small:
        raise WhiteDegreeTooSmall(f"white vertices of degree < 3: {small}")
    vertices = [(w, True) for w in white] + [(b, False) for b in black]
    edge_list = [(e, w, b, 2.0 * math.pi / degree[w]) for e, (w, b) in edges.items()]
    return _assemble(vertices, edge_list, {v: list(r) for v, r in rotations.items()},
                     delta, require_genus)


def k33_torus(delta: float = 1.0) -> RhombicSurface:
    """K_{3,3} with the cyclic orders that make it a hexagonal torus."""
    white = [f"w{k}" for k in range(3)]
    black = [f"b{k}" for k in range(3)]
    edges, rot = {}, {}
    for k in range(3):
        rot[f"w{k}"] = []
        for s in range(3):
            e = f"e{k}{(k + s) % 3}"
            edges[e] = (f"w{k}", f"b{(k + s) % 3}")
            rot[f"w{k}"].append(e)
    for k in range(3):
        rot[f"b{k}"] = [f"e{(k - 1) % 3}{k}", f"e{(k + 1) % 3}{k}", f"e{k}{k}"]
    return realize_bipartite(white, black, edges, rot, delta)
