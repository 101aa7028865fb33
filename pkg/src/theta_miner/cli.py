"""theta-miner command line.

Exit codes: 0 success, 1 verification failure, 2 usage or parameter error,
3 input/output or parse error. Errors are also written to stderr as a JSON line.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import certio
from .decomposition import distance_decomposition
from .generators import MODELS, generate
from .graph import GraphError, ParseError, from_edge_list, to_edge_list, verify_minor_model, verify_theta_certificate
from .oracles import SizeGuardError, brute_theta_girth, check_bound_lemma, check_loose_connectivity
from .packing import pack_k_theta, verify_packing
from .partitioner import grouped_partition
from .protrusion import verify_protrusion
from .theta import run_theorem4, run_theorem5, verify_outcome

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3


class CliError(Exception):
    def __init__(self, code, kind, message):
        super().__init__(message)
        self.code = code
        self.kind = kind


def _read_graph(path):
    try:
        if path in (None, "-"):
            data = sys.stdin.buffer.read()
        else:
            with open(path, "rb") as fh:
                data = fh.read()
    except OSError as exc:
        raise CliError(EXIT_IO, "io_error", str(exc)) from exc
    try:
        return from_edge_list(data)
    except ParseError as exc:
        raise CliError(EXIT_IO, "parse_error", str(exc)) from exc
    except GraphError as exc:
        raise CliError(EXIT_IO, "parse_error", str(exc)) from exc


def _emit(text, out):
    if out:
        try:
            with open(out, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            raise CliError(EXIT_IO, "io_error", str(exc)) from exc
    else:
        sys.stdout.write(text)


def _param(cond, message):
    if not cond:
        raise CliError(EXIT_USAGE, "parameter_error", message)


def _run_guarded(fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except SizeGuardError as exc:
        raise CliError(EXIT_USAGE, "size_guard", str(exc)) from exc
    except GraphError as exc:
        raise CliError(EXIT_USAGE, "parameter_error", str(exc)) from exc


def _finish(g, doc, ok_violations, args):
    _emit(certio.dumps(doc), args.output)
    if args.verify:
        ok, bad = ok_violations()
        if not ok:
            raise CliError(EXIT_VERIFY, "verification_failed", "; ".join(bad))
    return EXIT_OK


# ---------------------------------------------------------------- commands


def cmd_girth(args):
    _param(args.r >= 1, "r must be at least 1")
    g = _read_graph(args.graph)
    value = _run_guarded(brute_theta_girth, g, args.r)
    _emit(("infinity" if value == float("inf") else str(value)) + "\n", args.output)
    return EXIT_OK


def cmd_thm4(args):
    _param(args.r >= 2, "r must be at least 2")
    _param(args.delta >= 3 * args.r, f"delta must be at least 3r = {3 * args.r}")
    _param(args.z >= args.r, f"z must be at least r = {args.r}")
    g = _read_graph(args.graph)
    out = _run_guarded(run_theorem4, g, args.r, args.delta, args.z)
    doc = certio.outcome_to_dict(out)
    if out.kind == "low_degree_vertex":
        doc["delta"] = args.delta

    def check():
        if out.kind == "low_degree_vertex":
            ok = g.degree(out.vertex) < args.delta
            return ok, [] if ok else ["vertex degree is not below delta"]
        return verify_outcome(g, out, args.r, args.z)

    return _finish(g, doc, check, args)


def cmd_thm5(args):
    _param(args.r >= 2, "r must be at least 2")
    _param(args.w >= 0, "w must be nonnegative")
    g = _read_graph(args.graph)
    _param(args.r < args.z <= g.m, f"need r < z <= m (m = {g.m})")
    out = _run_guarded(run_theorem5, g, args.r, args.w, args.z)
    doc = certio.outcome_to_dict(out)

    def check():
        ok, bad = verify_outcome(g, out, args.r, args.z, args.w)
        if out.kind == "minor_model" and not out.bound_met:
            ok = False
            bad = bad + [f"quotient minimum degree {out.certificate.claimed_min_degree} is below the bound {out.bound}"]
        return ok, bad

    return _finish(g, doc, check, args)


def cmd_pack(args):
    _param(args.k >= 1 and args.r >= 1, "need k >= 1 and r >= 1")
    g = _read_graph(args.graph)
    cert = _run_guarded(pack_k_theta, g, args.k, args.r, args.seed)
    return _finish(g, cert.to_dict(), lambda: verify_packing(g, cert, args.k, args.r), args)


def cmd_gen(args):
    try:
        g = generate(args.model, n=args.n, d=args.d, m=args.m, r=args.r, seed=args.seed)
    except GraphError as exc:
        raise CliError(EXIT_USAGE, "parameter_error", str(exc)) from exc
    _emit(to_edge_list(g), args.output)
    return EXIT_OK


def cmd_verify(args):
    g = _read_graph(args.graph)
    try:
        with open(args.cert, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise CliError(EXIT_IO, "io_error", str(exc)) from exc
    try:
        cert = certio.loads(text)
    except GraphError as exc:
        raise CliError(EXIT_IO, "parse_error", str(exc)) from exc
    doc = json.loads(text)
    kind = doc["kind"]
    r = args.r if args.r is not None else doc.get("r")
    if kind == "theta":
        _param(r is not None, "theta verification needs -r")
        z = args.z if args.z is not None else g.m
        ok, bad = verify_theta_certificate(g, cert, r, z)
    elif kind == "minor_model":
        ok, actual = verify_minor_model(g, cert)
        bad = [] if ok else [f"quotient minimum degree {actual} is below the claim"]
        if ok and "bound" in doc and actual < doc["bound"]:
            ok, bad = False, [f"quotient minimum degree {actual} is below the bound {doc['bound']}"]
    elif kind == "protrusion":
        _param(r is not None, "protrusion verification needs -r")
        ok, bad = verify_protrusion(g, cert, 2 * r - 2, args.w if args.w is not None else 0)
    elif kind == "packing":
        _param(r is not None, "packing verification needs -r")
        ok, bad = verify_packing(g, cert, len(cert.models), r)
    elif kind == "low_degree_vertex":
        ok = g.degree(doc["vertex"]) < doc.get("delta", float("inf"))
        bad = [] if ok else ["vertex degree is not below delta"]
    else:
        raise CliError(EXIT_IO, "parse_error", f"unknown kind {kind}")
    _emit(certio.dumps({"kind": kind, "ok": ok, "violations": bad}), args.output)
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_dd(args):
    g = _read_graph(args.graph)
    _param(0 <= args.origin < g.n, "origin out of range")
    dd = _run_guarded(distance_decomposition, g, args.origin)
    _emit(certio.dumps(dd.to_dict()), args.output)
    return EXIT_OK


def cmd_partition(args):
    _param(args.d >= 1, "d must be at least 1")
    g = _read_graph(args.graph)
    gp = _run_guarded(grouped_partition, g, args.d)
    _emit(certio.dumps(gp.to_dict()), args.output)
    return EXIT_OK


def cmd_loose(args):
    _param(args.alpha >= 0 and args.beta >= 0, "alpha and beta must be nonnegative")
    g = _read_graph(args.graph)
    ok, wit = _run_guarded(check_loose_connectivity, g, args.alpha, args.beta)
    doc = {"kind": "loose_connectivity", "loosely_connected": ok}
    if wit is not None:
        doc["witness"] = {"a_side": list(wit.a_side), "b_side": list(wit.b_side), "separator": list(wit.separator)}
    _emit(certio.dumps(doc), args.output)
    return EXIT_OK


def cmd_bound_lemma(args):
    value = _run_guarded(check_bound_lemma, args.r, args.k)
    _emit(("true" if value else "false") + "\n", args.output)
    return EXIT_OK


# ---------------------------------------------------------------- parser


def build_parser():
    p = argparse.ArgumentParser(prog="theta-miner", description="Small theta_r-models, protrusions and minors.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, graph=True):
        if graph:
            sp.add_argument("graph", nargs="?", default="-", help="edge-list file (default: stdin)")
        sp.add_argument("-o", "--output", help="write here instead of stdout")

    sp = sub.add_parser("girth", help="exact theta_r-girth (brute force)")
    sp.add_argument("-r", "--r", type=int, required=True)
    common(sp)
    sp.set_defaults(func=cmd_girth)

    sp = sub.add_parser("thm4", help="low-degree vertex, small model, or dense minor")
    sp.add_argument("-r", "--r", type=int, required=True)
    sp.add_argument("--delta", type=int, required=True)
    sp.add_argument("-z", type=int, required=True)
    sp.add_argument("--verify", action="store_true")
    common(sp)
    sp.set_defaults(func=cmd_thm4)

    sp = sub.add_parser("thm5", help="small model, protrusion, or dense minor")
    sp.add_argument("-r", "--r", type=int, required=True)
    sp.add_argument("-w", type=int, required=True)
    sp.add_argument("-z", type=int, required=True)
    sp.add_argument("--verify", action="store_true")
    common(sp)
    sp.set_defaults(func=cmd_thm5)

    sp = sub.add_parser("pack", help="k vertex-disjoint theta_r-models")
    sp.add_argument("-k", type=int, required=True)
    sp.add_argument("-r", "--r", type=int, required=True)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--verify", action="store_true")
    common(sp)
    sp.set_defaults(func=cmd_pack)

    sp = sub.add_parser("gen", help="write a generated graph as an edge list")
    sp.add_argument("--model", required=True, choices=MODELS)
    sp.add_argument("-n", type=int)
    sp.add_argument("-d", type=int)
    sp.add_argument("-m", type=int)
    sp.add_argument("-r", "--r", type=int)
    sp.add_argument("--seed", type=int)
    common(sp, graph=False)
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("verify", help="check a certificate file against a graph")
    sp.add_argument("--cert", required=True)
    sp.add_argument("-r", "--r", type=int)
    sp.add_argument("-z", type=int)
    sp.add_argument("-w", type=int)
    common(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("dd", help="distance-decomposition from an origin")
    sp.add_argument("--origin", type=int, default=0)
    common(sp)
    sp.set_defaults(func=cmd_dd)

    sp = sub.add_parser("partition", help="d-grouped partition")
    sp.add_argument("-d", type=int, required=True)
    common(sp)
    sp.set_defaults(func=cmd_partition)

    sp = sub.add_parser("loose", help="(alpha, beta)-loose connectivity")
    sp.add_argument("--alpha", type=int, required=True)
    sp.add_argument("--beta", type=int, required=True)
    common(sp)
    sp.set_defaults(func=cmd_loose)

    sp = sub.add_parser("bound-lemma", help="exact check of the numeric bound lemma")
    sp.add_argument("-r", "--r", type=int, required=True)
    sp.add_argument("-k", type=int, required=True)
    common(sp, graph=False)
    sp.set_defaults(func=cmd_bound_lemma)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        sys.stderr.write(json.dumps({"error": exc.kind, "message": str(exc), "exit": exc.code}, sort_keys=True) + "\n")
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
