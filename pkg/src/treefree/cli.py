"""Command line front end.

Exit codes are shared by every command: 0 affirmative, 1 negative or
violation, 2 input error.
"""

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from .embedding import build_tree
from .errors import (
    BoundViolated,
    DuplicatePoints,
    FourPointViolation,
    MetricError,
    NegativeDistance,
    NonzeroDiagonal,
    NotALine,
    NotSquare,
    NotSymmetric,
    TreeFreeError,
    TriangleViolation,
    UnsupportedPoint,
)
from .faces import NINE_CONDITIONS, quadruple_faces
from .freenorm import Molecule, cross_validate, norm, verify_certificate
from .gluing import check_gluing_bounds, validate_glued
from .metric import four_point_check, parse_metric
from .scalar import Arithmetic
from .tree import to_dot, to_newick, tree_to_json

SCHEMA = "treefree/1"
# a well-formed matrix that fails a metric axiom; anything else is malformed input
NOT_A_METRIC = (NotSymmetric, NegativeDistance, NonzeroDiagonal, TriangleViolation, DuplicatePoints)
OK, NEGATIVE, INPUT_ERROR = 0, 1, 2


@dataclass(frozen=True)
class RunConfig:
    mode: str = "exact"
    epsilon: float = 1e-9
    threads: int = 1
    output_format: str = "text"
    seed: int = 0

    def __post_init__(self):
        if self.mode == "float" and not self.epsilon > 0:
            raise ValueError("--eps must be positive in float mode")

    @property
    def arith(self):
        return Arithmetic(exact=self.mode == "exact", eps=self.epsilon)


class InputError(Exception):
    pass


def _read(path):
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _load_metric(path, cfg, merge=False, base=None):
    text = _read(path)
    fmt = "json" if str(path).lower().endswith(".json") else None
    try:
        return parse_metric(text, fmt, arith=cfg.arith, base=base, merge_duplicates=merge)
    except NotSquare as exc:
        raise InputError(str(exc)) from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc})") from None


def _load_molecule(path, M, cfg):
    try:
        obj = json.loads(_read(path))
        return Molecule.on(M, obj["coeffs"])
    except (json.JSONDecodeError, KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        if isinstance(exc, UnsupportedPoint):
            raise InputError(f"molecule charges unknown point {exc.args[0]!r}") from None
        raise InputError(f"{path}: malformed molecule ({exc})") from None


class Reporter:
    def __init__(self, cfg, out):
        self.cfg, self.out = cfg, out

    def value(self, v):
        ar = self.cfg.arith
        return ar.format(v) if ar.exact else float(v)

    def emit(self, payload, text):
        if self.cfg.output_format == "json":
            self.out.write(json.dumps({"schema": SCHEMA, **payload}, indent=2) + "\n")
        else:
            self.out.write(text.rstrip("\n") + "\n")


def _labels(M, idx):
    return [str(M.points[i]) for i in idx]


def cmd_validate(args, cfg, rep):
    try:
        M = _load_metric(args.metric, cfg, merge=args.merge_duplicates, base=args.base)
    except NOT_A_METRIC as exc:
        payload = {"valid": False, "error": type(exc).__name__, "message": str(exc)}
        for attr in ("witness", "pair", "index"):
            if hasattr(exc, attr):
                payload[attr] = getattr(exc, attr)
        rep.emit(payload, f"invalid: {type(exc).__name__}: {exc}")
        return NEGATIVE
    merged = {str(k): v for k, v in M.merged.items()}
    rep.emit({"valid": True, "points": [str(p) for p in M.points], "base": str(M.base_label), "merged": merged},
             f"valid metric on {M.n} points, base {M.base_label}" + (f", merged {merged}" if merged else ""))
    return OK


def _verdict_payload(M, v, rep):
    if v.holds:
        return {"holds": True}
    return {"holds": False, "witness": _labels(M, v.witness), "sums": [rep.value(s) for s in v.sums]}


def _verdict_text(M, v, rep):
    if v.holds:
        return "four-point condition holds"
    a, b, c, d = _labels(M, v.witness)
    s1, s2, s3 = (rep.value(s) for s in v.sums)
    return (f"four-point condition fails on ({a}, {b}, {c}, {d}):\n"
            f"  d({a},{b})+d({c},{d}) = {s1}\n  d({a},{c})+d({b},{d}) = {s2}\n  d({a},{d})+d({b},{c}) = {s3}")


def cmd_check4pt(args, cfg, rep):
    M = _load_metric(args.metric, cfg, merge=args.merge_duplicates, base=args.base)
    v = four_point_check(M, threads=cfg.threads)
    rep.emit(_verdict_payload(M, v, rep), _verdict_text(M, v, rep))
    return OK if v.holds else NEGATIVE


def cmd_embed(args, cfg, rep):
    M = _load_metric(args.metric, cfg, merge=args.merge_duplicates, base=args.base)
    try:
        R = build_tree(M)
    except FourPointViolation as exc:
        rep.emit({"refused": True, **_verdict_payload(M, exc.verdict, rep)}, _verdict_text(M, exc.verdict, rep))
        return NEGATIVE
    if args.tree_format == "newick":
        rep.out.write(to_newick(R.tree) + "\n")
    elif args.tree_format == "dot":
        rep.out.write(to_dot(R.tree))
    else:
        payload = {"schema": SCHEMA, "tree": tree_to_json(R.tree),
                   "point_map": {str(k): str(v) for k, v in R.point_map.items()}}
        rep.out.write(json.dumps(payload, indent=2) + "\n")
    return OK


def cmd_norm(args, cfg, rep):
    M = _load_metric(args.metric, cfg, merge=args.merge_duplicates, base=args.base)
    mu = _load_molecule(args.molecule, M, cfg)
    try:
        result = norm(M, mu, method=args.method)
    except (FourPointViolation, NotALine) as exc:
        rep.emit({"error": type(exc).__name__, "message": str(exc)}, f"method {args.method} not applicable: {exc}")
        return NEGATIVE
    payload = {"method": result.method, "value": rep.value(result.value)}
    lines = [f"norm = {rep.value(result.value)}  [{result.method}]"]
    cert = result.certificate or {}
    if "f" in cert:
        f = {str(k): rep.value(v) for k, v in cert["f"].items()}
        payload["certificate"] = {"f": f}
        lines.append("  witness f: " + ", ".join(f"{k}={v}" for k, v in f.items()))
    elif "g" in cert:
        g = [rep.value(v) for v in cert["g"]]
        payload["certificate"] = {"g": g}
        lines.append("  edge coordinates: " + " ".join(map(str, g)))
    status = OK
    if args.verify:
        results, agree = cross_validate(M, mu)
        certs = all(verify_certificate(M, mu, results[m]) for m in ("lp", "flow"))
        agree = agree and certs
        payload["verify"] = {"agree": agree, "certificates": certs,
                             "values": {k: rep.value(r.value) for k, r in results.items()}}
        lines += [f"  {k:9s}{rep.value(r.value)}" for k, r in results.items()]
        lines.append("  methods agree" if agree else "  DISAGREEMENT between methods")
        status = OK if agree else NEGATIVE
    rep.emit(payload, "\n".join(lines))
    return status


def _parse_quad(M, spec):
    if spec is None:
        if M.n < 4:
            raise InputError("classify4 needs at least four points")
        return (0, 1, 2, 3)
    labels = [s.strip() for s in spec.split(",")]
    if len(labels) != 4 or len(set(labels)) != 4:
        raise InputError("--quad needs four distinct labels")
    try:
        return tuple(M.index(lab) for lab in labels)
    except KeyError as exc:
        raise InputError(f"unknown point {exc.args[0]!r}") from None


def cmd_classify4(args, cfg, rep):
    M = _load_metric(args.metric, cfg, merge=args.merge_duplicates, base=args.base)
    q = quadruple_faces(M, _parse_quad(M, args.quad))
    table, payload_rows = [("labeling", *"abcdef", "fired", "cd", "shape", "verdict")], []
    for lab in q.labelings:
        vals = [rep.value(v) for v in lab.region.astuple()]
        verdict = "symmetric" if lab.report.symmetric_or_empty else "asymmetric"
        table.append((",".join(_labels(M, lab.labeling)), *map(str, vals),
                      ",".join(map(str, lab.report.fired_conditions)) or "-",
                      ",".join(k for k, v in lab.cd.items() if v) or "-",
                      lab.report.shape, verdict))
        payload_rows.append({
            "labeling": _labels(M, lab.labeling),
            "region": dict(zip("abcdef", vals)),
            "fired": [NINE_CONDITIONS[i - 1] for i in lab.report.fired_conditions],
            "cd": lab.cd,
            "shape": lab.report.shape,
            "symmetric_or_empty": lab.report.symmetric_or_empty,
            "brute_symmetry": lab.brute,
        })
    widths = [max(len(r[c]) for r in table) for c in range(len(table[0]))]
    rows = ["  ".join(cell.ljust(w) for cell, w in zip(r, widths)).rstrip() for r in table]
    rows.append(f"aggregate: {'all faces symmetric' if q.aggregate else 'asymmetric face found'}; "
                f"four-point on quadruple: {'holds' if q.four_point else 'fails'}")
    rep.emit({"quadruple": _labels(M, q.quadruple), "labelings": payload_rows, "aggregate": q.aggregate,
              "four_point": q.four_point}, "\n".join(rows))
    return OK if q.aggregate else NEGATIVE


def cmd_glue_check(args, cfg, rep):
    text = _read(args.glued)
    try:
        obj = json.loads(text)
        partition = {str(k): v for k, v in obj["partition"].items()}
        part_bases = {k: str(v) for k, v in obj.get("part_bases", {}).items()}
    except (json.JSONDecodeError, KeyError, AttributeError) as exc:
        raise InputError(f"{args.glued}: glued-space JSON needs 'partition' ({exc})") from None
    M = parse_metric(text, "json", arith=cfg.arith, base=args.base)
    # part labels come back from JSON as whatever type was written; match by string
    partition = {p: partition[str(p)] for p in M.points if str(p) in partition}
    bases = {g: b for g, b in ((g, part_bases.get(str(g))) for g in set(partition.values())) if b is not None}
    try:
        G = validate_glued(M, partition, bases)
    except (ValueError, TreeFreeError) as exc:
        raise InputError(str(exc)) from None
    mu = _load_molecule(args.molecule, M, cfg)
    try:
        r = check_gluing_bounds(G, mu)
        status = OK
    except BoundViolated:
        r = check_gluing_bounds(G, mu, strict=False)
        status = NEGATIVE

    def v(x):
        return None if x is None else rep.value(x)

    payload = {"alpha": v(G.alpha), "beta": v(G.beta), "decomposed": v(r.decomposed), "norm": v(r.norm),
               "phi_constant": v(r.phi_constant), "psi_constant": v(r.psi_constant),
               "phi_ratio": v(r.phi_ratio), "psi_ratio": v(r.psi_ratio),
               "part_bases": {str(k): str(b) for k, b in r.base_points.items()}, "holds": r.holds}
    text_out = "\n".join([
        f"alpha = {v(G.alpha)}, beta = {v(G.beta)}, part bases = {payload['part_bases']}",
        f"decomposed norm = {v(r.decomposed)}, free norm = {v(r.norm)}",
        f"decomposed/norm = {v(r.phi_ratio)} <= {v(r.phi_constant)}",
        f"norm/decomposed = {v(r.psi_ratio)} <= {v(r.psi_constant)}",
        "bounds hold" if r.holds else "BOUND VIOLATED",
    ])
    rep.emit(payload, text_out)
    return status


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--mode", choices=["exact", "float"], default="exact")
    common.add_argument("--eps", type=float, default=1e-9)
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--format", choices=["text", "json"], default="text", dest="output_format")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--merge-duplicates", action="store_true")
    common.add_argument("--base", default=None, help="label of the base point (default: file's base or first label)")

    parser = argparse.ArgumentParser(prog="treefree", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="check that a distance matrix is a metric")
    p.add_argument("metric")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("check4pt", parents=[common], help="decide the four-point condition")
    p.add_argument("metric")
    p.set_defaults(func=cmd_check4pt)

    p = sub.add_parser("embed", parents=[common], help="realize a tree metric as a weighted tree")
    p.add_argument("metric")
    p.add_argument("--tree-format", choices=["dot", "newick", "json"], default="newick")
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("norm", parents=[common], help="free-space norm of a molecule")
    p.add_argument("metric")
    p.add_argument("molecule")
    p.add_argument("--method", choices=["lp", "flow", "tree", "line", "auto"], default="auto")
    p.add_argument("--verify", action="store_true")
    p.set_defaults(func=cmd_norm)

    p = sub.add_parser("classify4", parents=[common], help="face symmetry table for a quadruple")
    p.add_argument("metric")
    p.add_argument("--quad", default=None, help="four comma-separated labels (default: first four points)")
    p.set_defaults(func=cmd_classify4)

    p = sub.add_parser("glue-check", parents=[common], help="check the gluing isomorphism constants")
    p.add_argument("glued")
    p.add_argument("molecule")
    p.set_defaults(func=cmd_glue_check)
    return parser


def main(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return INPUT_ERROR if exc.code else OK
    try:
        cfg = RunConfig(args.mode, args.eps, args.threads, args.output_format, args.seed)
    except ValueError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return INPUT_ERROR
    rep = Reporter(cfg, out)
    try:
        return args.func(args, cfg, rep)
    except (InputError, MetricError) as exc:
        sys.stderr.write(f"input error: {exc}\n")
        return INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
