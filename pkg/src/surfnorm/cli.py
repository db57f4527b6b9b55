"""``surfnorm`` command line.

Exit codes: 0 success, 1 domain error (or a failed ``verify``), 2 usage error
or unreadable input.  ``--json`` switches any subcommand to sorted,
indented JSON with rationals written as "p/q" strings.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .cover import classify_curve, orientation_cover
from .errors import SurfNormError
from .fileformat import dumps, load_document, parse_class, rat, rats, serialize_surface
from .homology import boundary_matrices, homology_h1
from .pairing import check_lagrangian, intersection_form
from .polyconstruct import (
    DEFAULT_MAX_ESCALATIONS,
    PrescriptionProblem,
    construct,
    verify_certificate,
    verify_prescription,
)
from .stablenorm import (
    DEFAULT_CIRCUIT_CAP,
    ball_svg,
    ball_to_json,
    circuit_decomposition,
    dual_norm,
    flat_of,
    stable_norm_certified,
    unit_ball,
)


class UsageError(Exception):
    pass


def chain_json(S, chain) -> dict:
    return {lab: rat(c) for lab, c in zip(S.labels, chain) if c}


def cover_maps(D) -> list[tuple]:
    S, T = D.base, D.total
    maps = []
    for t in range(T.n_edges):
        maps.append(("project", "edge", T.labels[t], S.labels[D.edge_projection[t]]))
    for t in range(T.n_edges):
        maps.append(("involution", "edge", T.labels[t], T.labels[D.edge_involution[t]]))
    for k in range(T.n_faces):
        maps.append(("project", "face", k, D.face_projection[k]))
    for k in range(T.n_faces):
        maps.append(("involution", "face", k, D.face_involution[k]))
    for v in range(T.n_vertices):
        maps.append(("project", "vertex", v, D.vertex_projection[v]))
    for v in range(T.n_vertices):
        maps.append(("involution", "vertex", v, D.vertex_involution[v]))
    return maps


# ------------------------------------------------------------ subcommands

def cmd_info(doc, args):
    S = doc.surface
    H = homology_h1(S)
    data = {
        "name": S.name, "vertices": S.n_vertices, "edges": S.n_edges, "faces": S.n_faces,
        "euler_characteristic": S.euler_characteristic, "orientable": S.is_orientable,
        "b1": H.free_rank, "torsion": list(H.torsion),
        "weights": {lab: rat(w) for lab, w in zip(S.labels, S.weights)},
    }
    lines = [f"{S.name}: V={S.n_vertices} E={S.n_edges} F={S.n_faces} chi={S.euler_characteristic}",
             f"orientable: {'yes' if S.is_orientable else 'no'}",
             f"b1 = {H.free_rank}, torsion {list(H.torsion)}"]
    return data, lines


def cmd_homology(doc, args):
    S = doc.surface
    H = homology_h1(S)
    d2, d1 = boundary_matrices(S)
    basis = [S.chain_tokens(z) for z in H.basis_cycles]
    data = {
        "rank": H.free_rank, "torsion": list(H.torsion), "basis_cycles": basis,
        "coordinate_map": [list(r) for r in H.coordinate_map], "d2": d2, "d1": d1,
    }
    lines = [f"rank {H.free_rank}", f"torsion {list(H.torsion)}"]
    lines += [f"  e{i + 1} = {' '.join(toks)}" for i, toks in enumerate(basis)]
    return data, lines


def cmd_cover(doc, args):
    D = orientation_cover(doc.surface)
    T = D.total
    text = serialize_surface(T, maps=cover_maps(D))
    if args.cover_output:
        Path(args.cover_output).write_text(text, encoding="utf-8")
    data = {
        "total": {"name": T.name, "vertices": T.n_vertices, "edges": T.n_edges, "faces": T.n_faces,
                  "euler_characteristic": T.euler_characteristic, "b1": len(D.I_star)},
        "I_star": [list(r) for r in D.I_star], "pi_star": [list(r) for r in D.pi_star],
        "E1": [rats(v) for v in D.E1_basis], "Em1": [rats(v) for v in D.Em1_basis],
        "lagrangian": check_lagrangian(D),
        "intersection_form": [list(r) for r in intersection_form(T).matrix],
    }
    lines = [f"cover {T.name}: chi={T.euler_characteristic} b1={len(D.I_star)}",
             f"dim E1 = {len(D.E1_basis)}, dim E-1 = {len(D.Em1_basis)}",
             f"lagrangian: {data['lagrangian']}"]
    if not args.cover_output:
        lines += ["", text.rstrip("\n")]
    return data, lines


def cmd_classify(doc, args):
    if not args.cycle:
        raise UsageError("classify needs --cycle")
    S = doc.surface
    ct = classify_curve(S, S.chain(args.cycle))
    data = {"sidedness": ct.sidedness, "type": ct.type,
            "lift_classes": [rats(c) for c in ct.lift_classes]}
    return data, [f"{ct.sidedness}, type {ct.type}"]


def _class_arg(args, what="--class"):
    if args.klass is None:
        raise UsageError(f"this subcommand needs {what}")
    return parse_class(args.klass)


def cmd_norm(doc, args):
    S = doc.surface
    h = _class_arg(args)
    cert = stable_norm_certified(S, h)
    parts = circuit_decomposition(S, cert.minimizer)
    data = {
        "class": rats(h), "value": rat(cert.value), "minimizer": chain_json(S, cert.minimizer),
        "covector": rats(cert.covector),
        "circuits": [{"circuit": S.chain_tokens(c), "weight": rat(w)} for c, w in parts],
    }
    return data, [rat(cert.value), "minimizer: " + json.dumps(data["minimizer"], sort_keys=True)]


def cmd_ball(doc, args):
    S = doc.surface
    B = unit_ball(S, args.cap_circuits)
    if args.svg:
        Path(args.svg).write_text(ball_svg(B), encoding="utf-8")
    data = ball_to_json(S, B)
    lines = [f"dim {B.dim}: {len(B.vertices)} vertices, {len(B.facets)} facets"]
    lines += ["  (" + ", ".join(v) + ")  <- " + " ".join(p)
              for v, p in zip(data["vertices"], data["provenance"])]
    return data, lines


def cmd_flat(doc, args):
    S = doc.surface
    h = _class_arg(args)
    F = flat_of(unit_ball(S, args.cap_circuits), h)
    data = {"class": rats(h), "dimension": F.dimension, "covector": rats(F.covector),
            "vertices": [rats(v) for v in F.vertices], "vertex_indices": list(F.vertex_indices)}
    return data, [f"face of dimension {F.dimension} with {len(F.vertices)} vertices",
                  "supporting covector (" + ", ".join(data["covector"]) + ")"]


def cmd_dual(doc, args):
    S = doc.surface
    c = _class_arg(args, "--class (the covector)")
    v = dual_norm(unit_ball(S, args.cap_circuits), c)
    return {"covector": rats(c), "value": rat(v)}, [rat(v)]


def _problem(doc, allow_crossings):
    if not doc.prescriptions:
        raise UsageError("input has no 'prescribe' lines")
    S = doc.surface
    cycles = [S.chain(toks) for _, toks in doc.prescriptions]
    targets = [r for r, _ in doc.prescriptions]
    return PrescriptionProblem(S, cycles, targets, allow_crossings)


def cmd_construct(doc, args):
    P = _problem(doc, args.allow_crossings)
    S_star, cert = construct(P, args.max_escalations)
    ok = verify_prescription(S_star, P) and verify_certificate(cert, P)
    text = serialize_surface(S_star, doc.prescriptions)
    if args.surface_output:
        Path(args.surface_output).write_text(text, encoding="utf-8")
    data = {"certificate": cert.to_json(), "verified": ok,
            "weights": {lab: rat(w) for lab, w in zip(S_star.labels, S_star.weights)}}
    lines = [f"certified after {cert.rounds} doubling(s), outside factor {cert.factor}",
             f"ball restricted to span matches Conv_s: {ok}"]
    if not args.surface_output:
        lines += ["", text.rstrip("\n")]
    return data, lines


def cmd_verify(doc, args):
    from .verify import run_checks
    results = run_checks(doc, allow_crossings=args.allow_crossings)
    data = {"checks": [{"name": n, "passed": ok} for n, ok in results],
            "passed": all(ok for _, ok in results)}
    lines = [f"{'PASS' if ok else 'FAIL'}  {n}" for n, ok in results]
    return data, lines


COMMANDS = {
    "info": (cmd_info, "surface summary: cells, Euler characteristic, orientability, H1"),
    "homology": (cmd_homology, "H1 over Z: rank, torsion, basis cycles"),
    "cover": (cmd_cover, "orientation double cover with its maps on homology"),
    "classify": (cmd_classify, "sidedness and type I/II of a simple closed curve"),
    "norm": (cmd_norm, "stable norm of a class, with a minimizer"),
    "ball": (cmd_ball, "exact unit ball of the stable norm"),
    "flat": (cmd_flat, "face of the unit ball containing a unit class"),
    "dual": (cmd_dual, "dual norm of a covector"),
    "construct": (cmd_construct, "reweight so the ball on span{c_i} is Conv_s(c_i / r_i)"),
    "verify": (cmd_verify, "run the invariant checks on a surface"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="surfnorm", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text)
        p.add_argument("path", help="surface file")
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.add_argument("-o", "--output", help="write the report here instead of stdout")
        if name in ("norm", "flat", "dual"):
            p.add_argument("--class", dest="klass", metavar="P/Q,...",
                           help="class (or covector for 'dual') as comma-separated rationals")
        if name == "classify":
            p.add_argument("--cycle", help='cycle as signed labels, e.g. "a -b"')
        if name in ("ball", "flat", "dual"):
            p.add_argument("--cap-circuits", type=int, default=DEFAULT_CIRCUIT_CAP, metavar="N")
        if name == "ball":
            p.add_argument("--svg", metavar="PATH", help="also draw the ball (or a 2-d slice)")
        if name == "cover":
            p.add_argument("--cover-output", metavar="PATH", help="write the cover surface file")
        if name in ("construct", "verify"):
            p.add_argument("--allow-crossings", action="store_true",
                           help="accept prescribed cycles that cross at a shared vertex")
        if name == "construct":
            p.add_argument("--max-escalations", type=int, default=DEFAULT_MAX_ESCALATIONS, metavar="N")
            p.add_argument("--surface-output", metavar="PATH", help="write the reweighted surface")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        doc = load_document(args.path)
    except (FileNotFoundError, IsADirectoryError, PermissionError) as exc:
        print(f"surfnorm: cannot read {args.path}: {exc.strerror or exc}", file=sys.stderr)
        return 2
    except SurfNormError as exc:
        print(f"surfnorm: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    func = COMMANDS[args.command][0]
    try:
        data, lines = func(doc, args)
    except UsageError as exc:
        print(f"surfnorm {args.command}: {exc}", file=sys.stderr)
        return 2
    except SurfNormError as exc:
        print(f"surfnorm: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    out = dumps(data) if args.json else "\n".join(lines) + "\n"
    if args.output:
        Path(args.output).write_text(out, encoding="utf-8")
    else:
        sys.stdout.write(out)
    if args.command == "verify" and not data["passed"]:
        return 1
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
