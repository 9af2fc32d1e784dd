"""Command line entry points.

Exit codes: 0 success, 2 invalid input, 3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .bench import SweepSpec, read_ndjson, run_sweep, summarize, write_ndjson, write_summary_csv
from .chordal import NotChordalError
from .graphs import (
    GraphError,
    InternalInvariantError,
    InvalidInputError,
    read_edgelist,
    write_edgelist,
)
from .oracle import HiddenDag
from .search import SearchConfig, path_search, run_search, tree_search
from .synth import FAMILIES, GeneratorConfig, generate
from .verify import verification_number_atomic

EXIT_OK = 0
EXIT_INVALID_INPUT = 2
EXIT_INTERNAL = 3


def _load_hidden(path: str) -> HiddenDag:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            graph = read_edgelist(fh.read())
    except OSError as exc:
        raise InvalidInputError(f"cannot read {path}: {exc}") from exc
    return HiddenDag(graph)


def _cmd_gen(args: argparse.Namespace) -> int:
    params: dict = {}
    if args.family == "er_styled":
        params["rho"] = args.rho
    elif args.family == "tree_like":
        params["d_prop"] = args.d_prop
        params["e_min_prop"] = args.e_min_prop
        params["e_max_prop"] = args.e_max_prop
    else:
        params["p"] = args.p
    config = GeneratorConfig(family=args.family, n=args.n, seed=args.seed, params=params)
    hidden = generate(config)
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(write_edgelist(hidden.dag_copy()))
    sidecar = {
        "family": config.family,
        "n": config.n,
        "seed": config.seed,
        "params": params,
    }
    with open(args.out + ".json", "w", encoding="utf-8") as fh:
        json.dump(sidecar, fh, sort_keys=True, indent=2)
        fh.write("\n")
    return EXIT_OK


def _cmd_search(args: argparse.Namespace) -> int:
    hidden = _load_hidden(args.graph)
    if args.algo == "path":
        transcript = path_search(hidden, args.r)
    elif args.algo == "tree":
        transcript = tree_search(hidden, args.r)
    else:
        cfg = SearchConfig.for_instance(
            hidden.n, args.r, k=args.k, checks_enabled=args.checks
        )
        transcript = run_search(hidden, cfg)
    print(transcript.to_json())
    if not transcript.completed:
        raise InternalInvariantError("search ended without full orientation")
    return EXIT_OK


def _cmd_verify(args: argparse.Namespace) -> int:
    hidden = _load_hidden(args.graph)
    nu1, witness = verification_number_atomic(hidden.dag_copy())
    print(json.dumps({"nu1": nu1, "witness": sorted(witness)}, sort_keys=True))
    return EXIT_OK


def _cmd_bench(args: argparse.Namespace) -> int:
    try:
        with open(args.spec, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InvalidInputError(f"cannot load sweep spec {args.spec}: {exc}") from exc
    if args.master_seed is not None:
        data["master_seed"] = args.master_seed
    spec = SweepSpec.from_dict(data)
    results = run_sweep(spec, workers=args.workers)
    os.makedirs(args.out, exist_ok=True)
    out_path = os.path.join(args.out, "results.ndjson")
    write_ndjson(results, out_path)
    failures = sum(1 for r in results if r.error is not None)
    print(f"wrote {len(results)} trials to {out_path} ({failures} failures)")
    return EXIT_OK


def _cmd_summarize(args: argparse.Namespace) -> int:
    results = []
    try:
        names = sorted(os.listdir(args.in_dir))
    except OSError as exc:
        raise InvalidInputError(f"cannot list {args.in_dir}: {exc}") from exc
    for name in names:
        if name.endswith(".ndjson"):
            results.extend(read_ndjson(os.path.join(args.in_dir, name)))
    if not results:
        raise InvalidInputError(f"no .ndjson results under {args.in_dir}")
    rows = summarize(results)
    write_summary_csv(rows, args.csv)
    print(f"wrote {len(rows)} summary rows to {args.csv}")
    return EXIT_OK


def _bool_flag(value: str) -> bool:
    low = value.lower()
    if low in ("1", "true", "yes", "on"):
        return True
    if low in ("0", "false", "no", "off"):
        return False
    raise argparse.ArgumentTypeError(f"expected a boolean, got {value!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rounddag",
        description="Adaptive causal DAG discovery under a round budget",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("gen", help="generate a hidden ground-truth DAG")
    p_gen.add_argument("--family", choices=FAMILIES, required=True)
    p_gen.add_argument("--n", type=int, required=True)
    p_gen.add_argument("--seed", type=int, required=True)
    p_gen.add_argument("--rho", type=float, default=0.1)
    p_gen.add_argument("--p", type=float, default=0.03)
    p_gen.add_argument("--d-prop", dest="d_prop", type=float, default=0.4)
    p_gen.add_argument("--e-min-prop", dest="e_min_prop", type=float, default=0.2)
    p_gen.add_argument("--e-max-prop", dest="e_max_prop", type=float, default=0.5)
    p_gen.add_argument("--out", required=True)
    p_gen.set_defaults(func=_cmd_gen)

    p_search = sub.add_parser("search", help="run one discovery instance")
    p_search.add_argument("--graph", required=True)
    p_search.add_argument("--r", type=int, required=True)
    p_search.add_argument("--k", type=int, default=1)
    p_search.add_argument("--checks", type=_bool_flag, default=False)
    p_search.add_argument(
        "--algo", choices=("adaptive", "path", "tree"), default="adaptive"
    )
    p_search.set_defaults(func=_cmd_search)

    p_verify = sub.add_parser("verify", help="atomic verification number and witness")
    p_verify.add_argument("--graph", required=True)
    p_verify.set_defaults(func=_cmd_verify)

    p_bench = sub.add_parser("bench", help="run a benchmark sweep")
    p_bench.add_argument("--spec", required=True)
    p_bench.add_argument("--out", required=True)
    p_bench.add_argument("--master-seed", dest="master_seed", type=int, default=None)
    p_bench.add_argument("--workers", type=int, default=1)
    p_bench.set_defaults(func=_cmd_bench)

    p_sum = sub.add_parser("summarize", help="aggregate sweep results to CSV")
    p_sum.add_argument("--in", dest="in_dir", required=True)
    p_sum.add_argument("--csv", required=True)
    p_sum.set_defaults(func=_cmd_summarize)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InvalidInputError,) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID_INPUT
    except (InternalInvariantError, NotChordalError, AssertionError, GraphError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
