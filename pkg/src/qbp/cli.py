"""Command-line interface.

Subcommands: construct, certify, code, distance, decode, simulate, diagnose.
Exit status is 0 on success, 1 on validation failures (including usage
errors), and 2 on I/O failures.  Every output file embeds provenance (input
digests, tool version, config echo) under "result" and wall-clock data under
"timing"; repeated runs with the same seed are byte-identical outside
"timing".
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path
from typing import Optional, Sequence

from . import css, decoder, expansion, gf2, harness, jsonio, product
from .errors import BudgetExceededError, OracleUnavailableError, ValidationError
from .gf2 import F2Vector
from .graphs import GraphAction, graph_from_json
from .groups import action_from_json, group_from_json
from .jsonio import parse_rational


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:
        raise _UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="qbp", description="balanced-product CSS codes toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build a product complex from factor files")
    p.add_argument("--left", required=True, help="first factor graph JSON")
    p.add_argument("--right", required=True, help="second factor graph JSON")
    p.add_argument("--group", help="group JSON (omit for the hypergraph product)")
    p.add_argument("--actions", help="actions JSON with left_v0/left_v1/right_v0/right_v1 tables")
    p.add_argument("--out", required=True)

    p = sub.add_parser("certify", help="certify lossless expansion of a graph")
    p.add_argument("--graph", required=True)
    p.add_argument("--side", choices=["0to1", "1to0"], default="0to1")
    p.add_argument("--c", required=True, help="small-set fraction, exact rational")
    p.add_argument("--epsilon", required=True, help="loss parameter, exact rational")
    p.add_argument("--mode", choices=["exhaustive", "sampled"], default="exhaustive")
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=expansion.DEFAULT_CERTIFY_BUDGET)
    p.add_argument("--out")

    p = sub.add_parser("code", help="extract the CSS code and its parameters")
    p.add_argument("--complex", "--code", dest="complex", required=True)
    p.add_argument("--out-prefix", help="write <prefix>.hx.alist, <prefix>.hz.alist, <prefix>.json")
    p.add_argument("--format", choices=["json", "alist"], default="json",
                   help="stdout summary format when no prefix is given")

    p = sub.add_parser("distance", help="brute-force distance oracles")
    p.add_argument("--complex", "--code", dest="complex", required=True)
    p.add_argument("--which", choices=["x", "z", "both"], default="both")
    p.add_argument("--budget", type=int, default=css.DEFAULT_KERNEL_BUDGET)
    p.add_argument("--out")

    p = sub.add_parser("decode", help="decode one syndrome")
    p.add_argument("--complex", "--code", dest="complex", required=True)
    p.add_argument("--syndrome", required=True, help="JSON with length and support")
    p.add_argument("--epsilon", required=True)
    p.add_argument("--side", choices=["z", "x"], default="z",
                   help="z decodes an X syndrome on V11; x a Z syndrome on V00")
    p.add_argument("--cap", type=int, default=1 << 16)
    p.add_argument("--trace", help="write a JSON-lines trace here")
    p.add_argument("--out")

    p = sub.add_parser("simulate", help="Monte Carlo decoding campaign")
    p.add_argument("--complex", "--code", dest="complex", required=True)
    p.add_argument("--error-weight", type=int)
    p.add_argument("--iid-p", help="i.i.d. flip probability, exact rational")
    p.add_argument("--sweep", action="store_true", help="enumerate all supports of the given weight")
    p.add_argument("--trials", type=int, default=0)
    p.add_argument("--epsilon", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")

    p = sub.add_parser("diagnose", help="face-level region report for one error")
    p.add_argument("--complex", "--code", dest="complex", required=True)
    p.add_argument("--error", required=True, help="JSON with length n and support")
    p.add_argument("--epsilon", required=True, help="chain parameter, exact rational")
    p.add_argument("--epsilon-x", help="partition loss for the V00-V10 side (default: --epsilon)")
    p.add_argument("--epsilon-y", help="partition loss for the V00-V01 side (default: --epsilon)")
    p.add_argument("--out")
    return parser


def cli_dispatch(argv: Sequence[str]) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return 1
    started = time.time()
    try:
        result, inputs, out_path = _run(args)
    except (ValidationError, BudgetExceededError, OracleUnavailableError,
            ValueError, IndexError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 2
    if result is None:
        return 0             # the command already streamed its output
    result["provenance"] = jsonio.provenance_block(inputs, _config_echo(args))
    if out_path:
        try:
            jsonio.write_result(out_path, result, {"wall_seconds": time.time() - started})
        except OSError as exc:
            print(f"i/o error: {exc}", file=sys.stderr)
            return 2
    else:
        sys.stdout.write(jsonio.canonical_dumps({"result": result}))
    return 0


def _config_echo(args: argparse.Namespace) -> dict:
    echo = {}
    for key, value in sorted(vars(args).items()):
        if key in ("out", "out_prefix", "trace"):
            continue
        echo[key] = value
    return echo


def _load_json(path: str) -> dict:
    return json.loads(Path(path).read_text())


def _load_vector(path: str) -> F2Vector:
    obj = _load_json(path)
    try:
        return F2Vector.from_support(int(obj["length"]), obj["support"])
    except (KeyError, TypeError) as exc:
        raise ValidationError(f"malformed vector JSON in {path}: {exc}") from exc


def _run(args: argparse.Namespace) -> tuple[Optional[dict], dict, Optional[str]]:
    if args.command == "construct":
        return _cmd_construct(args)
    if args.command == "certify":
        return _cmd_certify(args)
    if args.command == "code":
        return _cmd_code(args)
    if args.command == "distance":
        return _cmd_distance(args)
    if args.command == "decode":
        return _cmd_decode(args)
    if args.command == "simulate":
        return _cmd_simulate(args)
    if args.command == "diagnose":
        return _cmd_diagnose(args)
    raise ValidationError(f"unknown command {args.command!r}")


def _cmd_construct(args) -> tuple[dict, dict, Optional[str]]:
    left = graph_from_json(_load_json(args.left))
    right = graph_from_json(_load_json(args.right))
    inputs = {"left": args.left, "right": args.right}
    if args.group or args.actions:
        if not (args.group and args.actions):
            raise ValidationError("--group and --actions must be given together")
        group = group_from_json(_load_json(args.group))
        acts = _load_json(args.actions)
        try:
            ax = GraphAction(group,
                             action_from_json({"act": acts["left_v0"]}, group),
                             action_from_json({"act": acts["left_v1"]}, group))
            ay = GraphAction(group,
                             action_from_json({"act": acts["right_v0"]}, group),
                             action_from_json({"act": acts["right_v1"]}, group))
        except KeyError as exc:
            raise ValidationError(f"actions JSON is missing table {exc}") from exc
        cpx = product.balanced_product(left, ax, right, ay)
        inputs.update({"group": args.group, "actions": args.actions})
    else:
        cpx = product.hypergraph_product(left, right)
    check = product.verify_chain_condition(cpx)
    print(f"chain condition: {'pass' if check.ok else f'FAIL at column {check.witness_column}'}")
    payload = product.complex_to_json(cpx)
    payload["provenance_files"] = {name: jsonio.file_digest(path)
                                   for name, path in inputs.items()}
    Path(args.out).write_text(jsonio.canonical_dumps(payload))
    summary = {
        "written": args.out,
        "v00": cpx.v00_size, "v10": cpx.v10_size,
        "v01": cpx.v01_size, "v11": cpx.v11_size,
        "faces": len(cpx.faces),
        "chain_condition": "pass" if check.ok else "fail",
    }
    return summary, inputs, None


def _cmd_certify(args) -> tuple[dict, dict, Optional[str]]:
    graph = graph_from_json(_load_json(args.graph))
    cert = expansion.certify_expansion(
        graph, args.side, parse_rational(args.c), parse_rational(args.epsilon),
        mode=args.mode, trials=args.trials, seed=args.seed, budget=args.budget,
    )
    return cert.to_json(), {"graph": args.graph}, args.out


def _cmd_code(args) -> tuple[Optional[dict], dict, Optional[str]]:
    cpx = product.complex_from_json(_load_json(args.complex))
    code = css.extract_code(cpx)
    params = css.code_params(code)
    manifest = css.export_manifest(code, params, {"complex": jsonio.file_digest(args.complex)})
    if args.out_prefix:
        prefix = Path(args.out_prefix)
        (prefix.parent or Path(".")).mkdir(parents=True, exist_ok=True)
        Path(f"{prefix}.hx.alist").write_text(gf2.to_alist(code.hx))
        Path(f"{prefix}.hz.alist").write_text(gf2.to_alist(code.hz))
        Path(f"{prefix}.json").write_text(jsonio.canonical_dumps(manifest))
        manifest = dict(manifest, written=[f"{prefix}.hx.alist", f"{prefix}.hz.alist", f"{prefix}.json"])
    elif args.format == "alist":
        sys.stdout.write(gf2.to_alist(code.hx))
        sys.stdout.write(gf2.to_alist(code.hz))
        return None, {"complex": args.complex}, None
    return manifest, {"complex": args.complex}, None


def _cmd_distance(args) -> tuple[dict, dict, Optional[str]]:
    cpx = product.complex_from_json(_load_json(args.complex))
    code = css.extract_code(cpx)
    out: dict = {}
    sides = ["x", "z"] if args.which == "both" else [args.which]
    for side in sides:
        report = css.brute_distance(code, side, budget=args.budget)
        out[f"d_{side}"] = report.d
        out[f"no_logicals_{side}"] = report.no_logicals
        out[f"kernel_dim_{side}"] = report.kernel_dim
    ds = [out.get("d_x"), out.get("d_z")]
    known = [d for d in ds if d is not None]
    out["d"] = min(known) if len(known) == len(sides) and known else None
    out["budget"] = args.budget
    return out, {"complex": args.complex}, args.out


def _cmd_decode(args) -> tuple[dict, dict, Optional[str]]:
    cpx = product.complex_from_json(_load_json(args.complex))
    code = css.extract_code(cpx)
    syndrome = _load_vector(args.syndrome)
    config = decoder.DecoderConfig(epsilon=parse_rational(args.epsilon), iteration_cap=args.cap)
    if args.side == "z":
        result = decoder.decode(code, syndrome, config)
    else:
        result = decoder.decode_x(code, syndrome, config)
    if args.trace:
        with open(args.trace, "w") as fh:
            for step in result.trace:
                fh.write(json.dumps(step.to_json(), sort_keys=True) + "\n")
    return result.to_json(), {"complex": args.complex, "syndrome": args.syndrome}, args.out


def _cmd_simulate(args) -> tuple[dict, dict, Optional[str]]:
    cpx = product.complex_from_json(_load_json(args.complex))
    code = css.extract_code(cpx)
    config = harness.ExperimentConfig(
        epsilon=parse_rational(args.epsilon),
        trials=args.trials,
        seed=args.seed,
        weight=args.error_weight,
        flip_probability=parse_rational(args.iid_p) if args.iid_p else None,
        sweep=args.sweep,
    )
    result = harness.run_simulation(code, config)
    payload = result.to_json()
    payload["config"] = config.echo()
    return payload, {"complex": args.complex}, args.out


def _cmd_diagnose(args) -> tuple[dict, dict, Optional[str]]:
    cpx = product.complex_from_json(_load_json(args.complex))
    code = css.extract_code(cpx)
    error = _load_vector(args.error)
    if error.length != code.n:
        raise ValidationError(f"error length {error.length} != n = {code.n}")
    v10, v01 = code.split_support(error)
    if cpx.degrees is None:
        raise ValidationError("diagnostics need biregular factors")
    eps = parse_rational(args.epsilon)
    eps_x = parse_rational(args.epsilon_x) if args.epsilon_x else eps
    eps_y = parse_rational(args.epsilon_y) if args.epsilon_y else eps
    part10 = expansion.tree_partition(cpx.subgraph("v00_v10"), v10, eps_x, cpx.degrees.down)
    part01 = expansion.tree_partition(cpx.subgraph("v00_v01"), v01, eps_y, cpx.degrees.right)
    report = decoder.region_diagnostics(cpx, v10, v01, part10, part01, epsilon=eps)
    payload = {
        "touched": report.touched_total,
        "stray": report.stray_total,
        "multihit": report.multihit_total,
        "excess": report.excess_total,
        "flipped": report.flipped_total,
        "lit": report.lit_total,
        "unique": report.unique_total,
        "syndrome_weight": report.syndrome_weight,
        "counting_bound_ok": report.counting_bound_ok,
        "chain_ok": report.chain_ok,
        "per_vertex": {str(k): v for k, v in sorted(report.per_vertex.items())},
    }
    return payload, {"complex": args.complex, "error": args.error}, args.out


def main() -> None:
    sys.exit(cli_dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
