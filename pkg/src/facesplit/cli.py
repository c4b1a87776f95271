"""Command-line front end.

Subcommands: analyze / certify a configuration, generate labeled
configurations, inspect a matrix line (trinity), and plot epipolar
curves.  Exit codes: 0 completed, 2 certified-deficient (analyze and
certify), 1 error.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import exact as ex
from .generate import GenSpec, generate
from .projective import canonical, pfloat, rank_exact, rank_numeric
from .rank9 import Case1Evidence, Case2Evidence, Case3Evidence, rank9_certify
from .reconstruct import cayley_octad_membership
from .serialize import (
    config_to_json,
    dump_json,
    load_config,
    matrix_to_json,
    scalar_to_json,
    vector_to_json,
)
from .sevenpoint import certificate_residuals, rank7_certify
from .trinity import (
    LineInDeterminantalVariety,
    NonGenericLineError,
    cameras_from_f,
    line_to_cremona,
    matrix_line,
    quadric_from_line,
)
from .zmatrix import PointPairConfig, build_z, rank_and_nullspace

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_DEFICIENT = 2


def _line_report(line) -> dict:
    report = {
        "basis": [matrix_to_json(b) for b in line.basis],
        "generic": line.generic,
    }
    if not line.generic:
        report["failure"] = line.failure
        return report
    members = []
    for m in line.members:
        e_x, e_y = m.epipoles
        members.append({
            "param": [scalar_to_json(v) for v in m.param],
            "exact": m.exact,
            "matrix": matrix_to_json(m.matrix),
            "epipole_right": vector_to_json(e_x if not m.exact else canonical(e_x)),
            "epipole_left": vector_to_json(e_y if not m.exact else canonical(e_y)),
        })
    report["rank_two_members"] = members
    f = line_to_cremona(line)
    report["cremona_coefficients"] = vector_to_json(f.coeff_vector())
    return report


def _octad_section(cfg, basis) -> dict:
    """Find a usable rank-two member of a 4-dimensional nullspace and probe."""
    candidates = list(basis)
    n = len(basis)
    for i in range(n):
        for j in range(i + 1, n):
            candidates.append(basis[i] + basis[j])
            candidates.append(basis[i] - basis[j])
    for a in (2, 3):
        for i in range(n):
            for j in range(n):
                if i != j:
                    candidates.append(basis[i] + a * basis[j])
    for cand in candidates:
        if rank_exact(cand) != 2:
            continue
        annihilates = any(not any(v != 0 for v in cand @ x) or
                          not any(v != 0 for v in y @ cand)
                          for x, y in cfg.pairs)
        if annihilates:
            continue
        try:
            report = cayley_octad_membership(cfg, cand)
        except ValueError as exc:
            return {"status": "error", "detail": str(exc)}
        return {
            "status": "checked",
            "net_dimension": report.net_dimension,
            "members_verified": report.members_verified,
            "probe_status": report.probe_status,
            "fundamental_matrix": matrix_to_json(canonical(np.asarray(cand))),
        }
    return {"status": "skipped", "detail": "no rational rank-two member found"}


def _analyze_exact(cfg: PointPairConfig) -> dict:
    z = build_z(cfg)
    rank, basis = rank_and_nullspace(z)
    report = {
        "k": cfg.k,
        "backend": "exact",
        "rank": rank,
        "deficient": rank < cfg.k,
        "nullspace": [matrix_to_json(b) for b in basis],
    }
    if cfg.k == 6:
        report["quadric_net_dimension"] = max(len(basis) - 1, 0)
        if rank < 6 and len(basis) == 4:
            report["octad"] = _octad_section(cfg, basis)
    elif cfg.k == 7:
        cert = rank7_certify(cfg)
        report["certificate"] = {
            "values_x": [scalar_to_json(v) for v in cert.values_x],
            "values_y": [scalar_to_json(v) for v in cert.values_y],
            "values_all_zero": cert.values_all_zero,
            "curves_x_equal": list(cert.curves_x_equal),
            "curves_y_equal": list(cert.curves_y_equal),
            "x_curves_coincide": cert.x_curves_coincide,
            "y_curves_coincide": cert.y_curves_coincide,
            "semi_generic": cert.semi_generic,
            "deficient": cert.deficient,
            "inconclusive": cert.inconclusive,
            "flags": list(cert.flags),
            "curves_x": [None if c is None else vector_to_json(c.coeffs)
                         for c in cert.curves_x],
            "curves_y": [None if c is None else vector_to_json(c.coeffs)
                         for c in cert.curves_y],
        }
    elif cfg.k == 8 and rank < 8:
        if len(basis) == 2:
            line = matrix_line(basis[0], basis[1])
            report["witness_line"] = _line_report(line)
        else:
            report["witness_line"] = {
                "note": f"nullspace dimension {len(basis)} > 2: multiply deficient"}
    elif cfg.k == 9:
        cert = rank9_certify(cfg)
        section = {
            "deficient": cert.deficient,
            "multiply_deficient": cert.multiply_deficient,
        }
        if cert.T is not None:
            section["T"] = matrix_to_json(cert.T)
            section["rank_T"] = cert.rank_T
            ev = cert.evidence
            if isinstance(ev, Case1Evidence):
                section["case"] = 1
                section["line_x_normal"] = vector_to_json(ev.line_x_normal)
                section["line_y_normal"] = vector_to_json(ev.line_y_normal)
                section["memberships"] = list(ev.memberships)
            elif isinstance(ev, Case2Evidence):
                section["case"] = 2
                section["e"] = vector_to_json(ev.e)
                section["e_prime"] = vector_to_json(ev.e_prime)
                section["pencil_statuses"] = list(ev.statuses)
            elif isinstance(ev, Case3Evidence):
                section["case"] = 3
                section["residuals"] = [scalar_to_json(v) for v in ev.residuals]
        report["certificate"] = section
    return report


def _analyze_float(cfg: PointPairConfig, tol: float) -> dict:
    z = pfloat(build_z(cfg), complex_=False)
    rank = rank_numeric(z, tol if tol > 0 else 1e-8)
    report = {
        "k": cfg.k,
        "backend": "float",
        "rank": rank,
        "deficient": rank < cfg.k,
    }
    if cfg.k == 7:
        res_x, res_y = certificate_residuals(cfg)
        report["certificate_residuals_x"] = list(res_x)
        report["certificate_residuals_y"] = list(res_y)
    return report


def _pick_backend(args, cfg) -> str:
    if args.backend == "auto":
        return "exact" if cfg.exact else "float"
    return args.backend


def cmd_analyze(args) -> int:
    cfg = load_config(args.config)
    backend = _pick_backend(args, cfg)
    if backend == "float":
        report = _analyze_float(cfg.to_float(), args.tol)
    else:
        if not cfg.exact:
            print("error: exact backend requires exact (integer/rational) input;"
                  " use --backend float", file=sys.stderr)
            return EXIT_ERROR
        report = _analyze_exact(cfg)
    text = dump_json(report, args.out)
    if args.out is None:
        print(text)
    return EXIT_DEFICIENT if report["deficient"] else EXIT_OK


def cmd_certify(args) -> int:
    cfg = load_config(args.config)
    backend = _pick_backend(args, cfg)
    if backend == "float":
        report = _analyze_float(cfg.to_float(), args.tol)
    else:
        if not cfg.exact:
            print("error: exact backend requires exact (integer/rational) input;"
                  " use --backend float", file=sys.stderr)
            return EXIT_ERROR
        full = _analyze_exact(cfg)
        report = {k: full[k] for k in ("k", "backend", "rank", "deficient")}
        if "certificate" in full:
            report["certificate"] = full["certificate"]
    text = dump_json(report, args.out)
    if args.out is None:
        print(text)
    return EXIT_DEFICIENT if report["deficient"] else EXIT_OK


def cmd_generate(args) -> int:
    spec = GenSpec(mechanism=args.mechanism, seed=args.seed, k=args.k,
                   param=args.rank)
    cfg, truth = generate(spec)
    doc = config_to_json(cfg)
    dump_json(doc, args.out)
    sidecar = {"mechanism": truth.get("mechanism", args.mechanism),
               "seed": args.seed}
    if "T" in truth:
        sidecar["T"] = matrix_to_json(truth["T"])
    if "H" in truth:
        sidecar["H"] = matrix_to_json(truth["H"])
    if "line_normal" in truth:
        sidecar["line_normal"] = vector_to_json(truth["line_normal"])
    if "cremona" in truth:
        sidecar["cremona_coefficients"] = vector_to_json(truth["cremona"].coeff_vector())
    if "quadric" in truth:
        sidecar["quadric"] = matrix_to_json(truth["quadric"].gram)
    if "octad" in truth:
        sidecar["octad"] = [vector_to_json(p) for p in truth["octad"]]
    if "x7" in truth:
        sidecar["x7"] = vector_to_json(truth["x7"])
        sidecar["y7"] = vector_to_json(truth["y7"])
    dump_json(sidecar, args.out + ".truth.json")
    print(f"wrote {args.out} and {args.out}.truth.json")
    return EXIT_OK


def cmd_trinity(args) -> int:
    with open(args.line) as fh:
        doc = json.load(fh)
    try:
        b1 = ex.exact_array(doc["basis"][0])
        b2 = ex.exact_array(doc["basis"][1])
    except (KeyError, IndexError, TypeError):
        print("error: line JSON needs 'basis': [mat3, mat3]", file=sys.stderr)
        return EXIT_ERROR
    try:
        line = matrix_line(b1, b2)
    except (ValueError, LineInDeterminantalVariety) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    report = _line_report(line)
    if line.generic:
        first = line.members[0]
        if first.exact:
            cams = cameras_from_f(first.matrix)
            quad = quadric_from_line(line, first.matrix, cams)
            report["quadric"] = {
                "cameras": [matrix_to_json(cams.a1), matrix_to_json(cams.a2)],
                "gram": matrix_to_json(quad.gram),
                "permissible": quad.permissible,
            }
    text = dump_json(report, args.out)
    if args.out is None:
        print(text)
    return EXIT_OK if line.generic else EXIT_ERROR


def cmd_plot(args) -> int:
    from .plotting import plot_config, plot_curve_coeffs

    with open(args.config) as fh:
        doc = json.load(fh)
    if "coefficients" in doc:
        out = args.out or "curve.svg"
        plot_curve_coeffs([float(v) for v in doc["coefficients"]], out,
                          grid=args.grid)
        print(f"wrote {out}")
        return EXIT_OK
    cfg = load_config(args.config)
    stem = args.out or "curves"
    if stem.endswith(".svg"):
        stem = stem[: -len(".svg")]
    outputs = plot_config(cfg, stem, grid=args.grid)
    print("wrote " + ", ".join(outputs))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="facesplit",
        description="rank-deficiency certificates for point-pair configurations")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", default=None, help="output path (default stdout)")
    common.add_argument("--backend", choices=("auto", "exact", "float"),
                        default="auto",
                        help="exact certificates or float SVD ranks (auto: by input)")
    common.add_argument("--tol", type=float, default=0.0,
                        help="numeric rank tolerance for the float backend")

    p = sub.add_parser("analyze", parents=[common],
                       help="full report: rank, nullspace, k-specific certificate")
    p.add_argument("config")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("certify", parents=[common],
                       help="certificate and verdict only")
    p.add_argument("config")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("generate", help="emit a labeled configuration")
    p.add_argument("--mechanism", required=True,
                   help="cremona8 | quadric8 | cubic7 | chord7 | rankT9 | "
                        "octad6 | homography | collinear-side | random")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--rank", type=int, default=None, help="witness rank for rankT9")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("trinity", help="rank-two members, epipoles, Cremona, quadric")
    p.add_argument("line", help="JSON file with 'basis': [mat3, mat3]")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_trinity)

    p = sub.add_parser("plot", help="SVG of epipolar cubics or an explicit curve")
    p.add_argument("config")
    p.add_argument("--out", default=None)
    p.add_argument("--grid", type=int, default=800)
    p.set_defaults(func=cmd_plot)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except (ValueError, TypeError, KeyError, NonGenericLineError,
            LineInDeterminantalVariety, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
