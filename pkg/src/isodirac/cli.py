"""Command-line front end.

Exit status: 0 on success, 1 when a check fails, 2 on bad input.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import builders, cochain, dbar, dimer, dirac, homology, spin
from .errors import InputError
from .surface import cone_angles, load_surface, singular_set

MAX_BRUTE_VERTICES = 60


def _num(x):
    if isinstance(x, (complex, np.complexfloating)):
        return {"re": _num(x.real), "im": _num(x.imag)}
    if isinstance(x, (float, np.floating)):
        return float(f"{float(x):.12g}")
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, dict):
        return {str(k): _num(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, np.ndarray)):
        return [_num(v) for v in x]
    return x


def _fmt(x):
    if isinstance(x, (complex, np.complexfloating)):
        return f"{x.real:.12g}{x.imag:+.12g}i"
    if isinstance(x, (float, np.floating)):
        return f"{float(x):.12g}"
    return str(x)


class Report:
    def __init__(self, as_json):
        self.as_json = as_json
        self.data = {}

    def put(self, key, value, text=None):
        self.data[key] = value
        if not self.as_json:
            print(f"{key}: {text if text is not None else _fmt(value)}")

    def line(self, text):
        if not self.as_json:
            print(text)

    def finish(self, out=None):
        if self.as_json:
            json.dump(_num(self.data), out or sys.stdout, indent=1)
            (out or sys.stdout).write("\n")


# subcommands

def cmd_build(args, rep):
    kind = args.kind
    p = args.params
    if kind == "honeycomb":
        rows, cols = (int(p[0]), int(p[1])) if len(p) >= 2 else (3, 3)
        s = builders.honeycomb_torus(rows, cols)
    elif kind == "rtorus":
        m, n = (int(p[0]), int(p[1])) if len(p) >= 2 else (6, 6)
        angles = [float(a) for a in args.row_angles.split(",")] if args.row_angles else None
        s = builders.rhombi_torus(m, n, row_angles=angles, shift=args.shift)
    elif kind == "genus2":
        n = int(p[0]) if p else 1
        shape = tuple(int(v) for v in args.shape.split(",")) if args.shape else (4, 4, 2, 2)
        s = builders.genus2_octagon(n, shape)
    elif kind == "slit":
        s = builders.slit_double_torus(int(p[0]) if p else 4)
    elif kind == "realize":
        if not p:
            raise InputError("realize needs a graph file")
        g = _read_json(p[0])
        try:
            s = builders.realize_bipartite(g["white"], g["black"], g["edges"],
                                           g["rotations"], g.get("delta", 1.0))
        except KeyError as exc:
            raise InputError(f"graph file lacks field {exc}") from None
    else:
        raise InputError(f"unknown builder {kind}")
    text = json.dumps(s.to_dict(), indent=1)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    elif not args.json:
        print(text)
    rep.put("vertices", s.n_vertices)
    rep.put("edges", s.n_edges)
    rep.put("faces", s.n_faces)
    rep.put("genus", s.genus)
    if args.output:
        rep.put("output", args.output)
    return 0


def cmd_validate(args, rep):
    s = load_surface(args.surface)
    rep.put("vertices", s.n_vertices)
    rep.put("edges", s.n_edges)
    rep.put("faces", s.n_faces)
    rep.put("genus", s.genus)
    sing = singular_set(s)
    rep.put("singularities", [{"kind": k, "id": str(i), "angle": t, "angle_over_pi": t / math.pi}
                              for (k, i), t in sing.items()],
            text=", ".join(f"{k} {i} = {t / math.pi:.12g} pi" for (k, i), t in sing.items()) or "none")
    rep.put("valid", True)
    return 0


def cmd_homology(args, rep):
    s = load_surface(args.surface)
    b = homology.cycle_basis(s)
    rep.put("genus", b.genus)
    rep.put("cycle_lengths", [len(c) for c in b.cycles])
    rep.put("cycles", [[s.vertex_ids[v] for v in s.walk_vertices(c)] for c in b.cycles],
            text="; ".join(" ".join(s.vertex_ids[v] for v in s.walk_vertices(c)) for c in b.cycles))
    rep.put("intersection_matrix", b.Q.tolist())
    return 0


def cmd_kasteleyn(args, rep):
    s = load_surface(args.surface)
    b = homology.cycle_basis(s)
    classes = cochain.flat_classes(s, cochain.SIGN, b)
    out = []
    for eps, k in zip(cochain.sectors(b.size), classes):
        out.append({"eps": list(eps),
                    "signs": {s.edge_ids[e]: int(round(k.values[e].real)) for e in range(s.n_edges)}})
    rep.put("classes", out, text=f"{len(out)} classes of flat sign cochains")
    rep.line("(use --json for the edge signs)")
    return 0


def cmd_spins(args, rep):
    s = load_surface(args.surface)
    b = homology.cycle_basis(s)
    kappa = spin.canonical_cochain(s, b)
    lam0 = spin.spin_base(s, kappa)
    odd = spin.cone_angles_odd(s)
    rows = []
    for eps, lam in zip(cochain.sectors(b.size), spin.spin_family(s, lam0, b)):
        row = {"eps": list(eps),
               "values": [complex(cochain.evaluate(lam.lam, c)) for c in b.cycles]}
        if odd:
            q = spin.quadratic_form(s, lam, b)
            row["q"] = list(q.values)
            row["arf"] = spin.arf(q)
        rows.append(row)
        rep.line(f"eps={eps} values={[_fmt(v) for v in row['values']]}"
                 + (f" q={row['q']} arf={row['arf']}" if odd else ""))
    rep.data["structures"] = rows
    if not odd:
        rep.line("quadratic forms need every cone angle an odd multiple of 2 pi; skipped")
    return 0


def cmd_check(args, rep):
    s = load_surface(args.surface)
    b = homology.cycle_basis(s)
    ci = dirac.condition_i(s)
    cii, res = dirac.condition_ii(s, b)
    bad_faces = [(f, t) for f, t in enumerate(s.face_angle)
                 if abs(t / (2 * math.pi) - round(t / (2 * math.pi))) > 1e-9
                 or round(t / (2 * math.pi)) % 2 == 0]
    rep.put("condition_i", ci)
    rep.put("bad_faces", [{"face": f, "angle_over_pi": t / math.pi} for f, t in bad_faces],
            text=", ".join(f"face {f}: {t / math.pi:.12g} pi" for f, t in bad_faces) or "none")
    rep.put("condition_ii", cii)
    rep.put("residues", res, text=", ".join(_fmt(r) for r in res))
    return 0 if (ci and cii) else 1


def _guard(s):
    if s.n_vertices > MAX_BRUTE_VERTICES:
        raise InputError(f"{s.n_vertices} vertices; brute force is limited to {MAX_BRUTE_VERTICES}")


def cmd_dets(args, rep):
    s = load_surface(args.surface)
    b = homology.cycle_basis(s)
    dimer._require_conditions(s, b)
    basis, rows = dimer.arf_sectors(s, b, args.nu)
    out = []
    for r in rows:
        out.append({"eps": list(r.eps), "arf": r.arf, "det": r.det, "abs_det": abs(r.det)})
        rep.line(f"eps={r.eps} arf={r.arf} det={_fmt(r.det)} |det|={_fmt(abs(r.det))}")
    rep.data["sectors"] = out
    z = abs(sum((1 - 2 * r.arf) * r.det for r in rows)) / 2 ** basis.genus
    rep.put("Z_arf", z)
    return 0


def cmd_dbar(args, rep):
    s = load_surface(args.surface)
    raw = _read_json(args.function)
    f = {}
    for k, v in raw.items():
        if str(k) not in s._vindex:
            raise InputError(f"unknown vertex {k}")
        f[str(k)] = complex(v[0], v[1]) if isinstance(v, (list, tuple)) else complex(v)
    values = dbar.dbar_all(s, f)
    ids = [s.vertex_ids[w] for w in s.white_vertices]
    rep.put("values", {i: v for i, v in zip(ids, values)},
            text=", ".join(f"{i}={_fmt(v)}" for i, v in zip(ids, values)))
    rep.put("holomorphic", bool(np.all(np.abs(values) < dbar.HOLOMORPHIC_TOL)))
    return 0


def cmd_zcompare(args, rep):
    s = load_surface(args.surface)
    _guard(s)
    b = homology.cycle_basis(s)
    census = dimer.enumerate_matchings(s, b)
    z_brute = dimer.partition_brute(s, census, args.nu)
    rep.put("matchings", len(census))
    rep.put("Z_brute", z_brute)
    dimer._require_conditions(s, b)
    rows = dimer.sector_determinants(s, b, args.nu)
    z_pfd = abs(sum(r.sign * r.det for r in rows)) / 2 ** b.genus
    _, arows = dimer.arf_sectors(s, b, args.nu)
    z_arf = abs(sum((1 - 2 * r.arf) * r.det for r in arows)) / 2 ** b.genus
    rep.put("Z_pfd", z_pfd)
    rep.put("Z_arf", z_arf)
    rep.data["sectors"] = [{"eps": list(r.eps), "sign": r.sign, "det": r.det} for r in rows]
    for r in rows:
        rep.line(f"eps={r.eps} sign={r.sign:+d} det={_fmt(r.det)}")
    scale = max(z_brute, 1e-300)
    ok = abs(z_pfd - z_brute) <= 1e-9 * scale and abs(z_arf - z_brute) <= 1e-9 * scale
    if args.seed is not None:
        rng = np.random.default_rng(args.seed)
        phi = np.exp(2j * math.pi * rng.random(b.size))
        lhs, rhs, passed = dimer.pf_k_check(s, census, b, phi, nu=args.nu)
        rep.put("pfk_phi", list(phi), text=", ".join(_fmt(p) for p in phi))
        rep.put("pfk_lhs", lhs)
        rep.put("pfk_rhs", rhs)
        ok = ok and passed
    rep.put("pass", ok)
    return 0 if ok else 1


def _read_json(path):
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: not valid JSON ({exc})") from None


def make_parser():
    p = argparse.ArgumentParser(prog="isodirac", description=__doc__)
    p.add_argument("--json", action="store_true", help="machine-readable report")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, surface=True):
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
        if surface:
            sp.add_argument("surface", help="surface file (JSON)")
        sp.set_defaults(func=func)
        return sp

    b = add("build", cmd_build, "construct an example surface", surface=False)
    b.add_argument("kind", choices=["honeycomb", "rtorus", "genus2", "slit", "realize"])
    b.add_argument("params", nargs="*", help="sizes, or the graph file for realize")
    b.add_argument("-o", "--output", help="write the surface here instead of stdout")
    b.add_argument("--shift", type=int, default=0, help="rtorus: horizontal gluing shift")
    b.add_argument("--row-angles", help="rtorus: comma-separated slant angles per row")
    b.add_argument("--shape", help="genus2: octagon side parameters a,b,c,d")
    add("validate", cmd_validate, "validate a surface and list its singularities")
    add("homology", cmd_homology, "homology basis and intersection form")
    add("kasteleyn", cmd_kasteleyn, "all classes of flat sign cochains")
    add("spins", cmd_spins, "discrete spin structures, quadratic forms, Arf invariants")
    add("check", cmd_check, "check the two cone-angle conditions")
    d = add("dets", cmd_dets, "Dirac determinants per spin sector")
    d.add_argument("--nu", choices=["dual", "unit"], default="dual")
    f = add("dbar", cmd_dbar, "apply d-bar to a function on black vertices")
    f.add_argument("function", help="JSON map black vertex id -> value or [re, im]")
    z = add("zcompare", cmd_zcompare, "brute-force partition function vs determinant formulas")
    z.add_argument("--nu", choices=["dual", "unit"], default="dual")
    z.add_argument("--seed", type=int, help="also test a random character with this seed")
    return p


def run(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    rep = Report(args.json)
    try:
        code = args.func(args, rep)
    except InputError as exc:
        rep.data = {"error": type(exc).__name__, "message": str(exc)}
        if args.json:
            rep.finish()
        else:
            print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    rep.finish()
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
