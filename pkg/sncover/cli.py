"""
Command-line front end.

    python -m sncover kron [2,1] [2,1] [2,1]
    python -m sncover --format structured saxl [3,2,1]
    python -m sncover certify rectsquare 2 3 1 -o rectsquare.cert
    python -m sncover verify rectsquare.cert --mode full

Exit codes: 0 success, 1 property violation, 2 usage error, 3 resource limit.
"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, Optional, Sequence

from pydantic import BaseModel, ValidationError

from . import __version__
from .certificates import deserialize, serialize, verify_certificate
from .characters import character, character_table
from .config import RunConfig, use_config
from .diagram import (
    Partition,
    blockwise_distance,
    conjugate,
    dimension,
    dist_rows,
    hook_lengths,
    hsum,
    staircase_decompose,
    vsum,
)
from .errors import InvalidArgumentError, SnCoverError
from .experiments import (
    constant_audit,
    criterion_experiment,
    distinct_rows_audit,
    faithful_power_check,
    finish_power_check,
    fourth_power_saxl,
    saxl_sweep,
    tau_power_boundary,
)
from .kronecker import (
    Support,
    covers,
    extended_kronecker,
    kronecker,
    min_cover_power,
    saxl_check,
    tensor_power_support,
    tensor_support,
)
from .lemmas import BUILDERS
from .plancherel_cover import (
    MeasuredSupport,
    affine_counterexample_demo,
    monotonicity_check,
    monotonicity_sweep,
    pigeonhole_check,
    pigeonhole_sweep,
    saxl_measure_trend,
)
from .random_partitions import (
    ALPHA_CLOSED_FORM,
    alpha_constant,
    coupled_cover_experiment,
    distrows_experiment,
    sample,
    shape_distance_experiment,
)
from .tablecache import dump_table
from .telemetry import configure_logging, get_tracer, setup_tracing

logger = logging.getLogger(__name__)
tracer = get_tracer()


class PropertyViolation(SnCoverError):
    """A check ran to completion and found a counterexample."""


def _param(token: str):
    if token.startswith("["):
        return Partition.parse(token)
    try:
        return int(token)
    except ValueError:
        return token


# -- command handlers ----------------------------------------------------------

def _cmd_dim(args):
    return dimension(args.partition)


def _cmd_hooks(args):
    return [
        {"row": i, "col": j, "hook": h.length, "arm": h.row_part, "leg": h.column_part}
        for (i, j), h in sorted(hook_lengths(args.partition).items())
    ]


def _cmd_conj(args):
    return conjugate(args.partition)


def _cmd_hsum(args):
    return hsum(args.left, args.right)


def _cmd_vsum(args):
    return vsum(args.left, args.right)


def _cmd_dist(args):
    return blockwise_distance(args.left, args.right)


def _cmd_distrows(args):
    return dist_rows(args.partition)


def _cmd_staircase_extract(args):
    chosen = args.chosen.rows if args.chosen is not None else None
    mu, nu = staircase_decompose(args.partition, args.r, chosen)
    return {"mu": str(mu), "nu": str(nu)}


def _cmd_char(args):
    return character(args.partition, args.cycle_type)


def _cmd_table(args):
    table = character_table(args.n)
    if args.format == "structured":
        return {
            "n": table.n,
            "irreps": [str(p) for p in table.irreps],
            "classes": [str(c) for c in table.classes],
            "values": [list(r) for r in table.values],
        }
    return dump_table(table).rstrip("\n")


def _cmd_kron(args):
    return kronecker(args.lam, args.mu, args.nu)


def _cmd_kron_ext(args):
    return extended_kronecker(args.partitions)


def _cmd_tensor(args):
    return tensor_support(args.left, args.right)


def _cmd_power(args):
    return tensor_power_support(args.partition, args.t)


def _cmd_covers(args):
    return covers(args.support)


def _cmd_saxl(args):
    if args.sweep is not None:
        return saxl_sweep(args.sweep)
    if args.partition is None:
        raise InvalidArgumentError("saxl needs a partition or --sweep N")
    return saxl_check(args.partition)


def _cmd_saxl_fourth(args):
    return fourth_power_saxl(args.r)


def _cmd_min_power(args):
    result = min_cover_power(args.partition, args.t_max)
    return {"status": result.status, "power": result.power, "support": str(result.support)}


def _cmd_certify(args):
    builder = BUILDERS.get(args.lemma)
    if builder is None:
        raise InvalidArgumentError(f"unknown lemma {args.lemma!r}; choose from {sorted(BUILDERS)}")
    try:
        cert = builder(*[_param(p) for p in args.params])
    except TypeError as exc:
        raise InvalidArgumentError(f"bad parameters for {args.lemma}: {exc}") from exc
    if args.check:
        verify_certificate(cert, "full")
    text = serialize(cert)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
        return f"✅ wrote {cert.conclusion} to {args.output}"
    return text.rstrip("\n")


def _cmd_verify(args):
    try:
        text = Path(args.file).read_text(encoding="utf-8")
    except OSError as exc:
        raise InvalidArgumentError(f"cannot read {args.file}: {exc}") from exc
    return verify_certificate(deserialize(text), args.mode)


def _cmd_sample(args):
    return sample(args.measure, args.n, args.seed, args.trial)


def _cmd_stats_distrows(args):
    run = shape_distance_experiment if args.shape else distrows_experiment
    stats = run(args.measure, args.n, args.trials, args.seed)
    if args.format == "structured":
        return stats
    return stats.model_dump(exclude={"dist_rows", "shape_distances"})


def _cmd_coupled_cover(args):
    result = coupled_cover_experiment(args.measure, args.k, args.n, args.trials, args.coupling, args.seed)
    return result if args.format == "structured" else result.model_dump(exclude={"samples"})


def _cmd_measure(args):
    return MeasuredSupport.of(args.support)


def _cmd_pigeonhole(args):
    if args.sweep is not None:
        result = pigeonhole_sweep(args.sweep, args.trials, args.seed)
        if not result.passed:
            raise PropertyViolation(f"pigeonhole failures: {result.failures}")
        return result
    if args.v is None or args.w is None:
        raise InvalidArgumentError("pigeonhole needs two supports or --sweep N")
    report = pigeonhole_check(args.v, args.w)
    if report.outcome == "fail":
        raise PropertyViolation(f"{args.v} x {args.w} has measure sum {report.measure_sum} but does not cover")
    return report


def _cmd_monotonicity(args):
    if args.sweep is not None:
        result = monotonicity_sweep(args.sweep)
        if not result.passed:
            raise PropertyViolation(f"monotonicity failures: {result.failures}")
        return result
    if args.v is None or args.partition is None:
        raise InvalidArgumentError("monotonicity needs a support and a partition or --sweep N")
    report = monotonicity_check(args.v, args.partition)
    if report.outcome == "fail":
        raise PropertyViolation(f"measure decreased tensoring {args.v} with {args.partition}")
    return report


def _cmd_measure_trend(args):
    return saxl_measure_trend(args.r_max)


def _cmd_affine_demo(args):
    return affine_counterexample_demo(args.p)


def _cmd_constant_audit(args):
    return constant_audit(args.n_min, args.n_max)


def _cmd_distinct_rows_audit(args):
    return distinct_rows_audit(args.n)


def _cmd_tau_boundary(args):
    return tau_power_boundary(args.n)


def _cmd_faithful(args):
    result = faithful_power_check(args.n)
    if not result.holds:
        raise PropertyViolation(f"unexpected covering behaviour for {result.unexpected}")
    return result


def _cmd_finish(args):
    return finish_power_check(args.n, args.k, args.h, args.variant)


def _cmd_criterion(args):
    return criterion_experiment(args.n, args.r, args.k, args.trials, args.seed)


def _cmd_alpha(args):
    value = alpha_constant(args.tolerance)
    return {"quadrature": value, "closed_form": ALPHA_CLOSED_FORM, "difference": abs(value - ALPHA_CLOSED_FORM)}


def _cmd_serve(args):
    from .server import main as serve

    serve()
    return None


# -- parser --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sncover", description="Tensor products covering Irrep(S_n).")
    parser.add_argument("--version", action="version", version=f"sncover {__version__}")
    parser.add_argument("--cap", type=int, help="oracle cap on n for Kronecker coefficients")
    parser.add_argument("--cache-dir", help="character table cache directory")
    parser.add_argument("--seed", type=int, help="base seed for random experiments")
    parser.add_argument("--trials", type=int, default=100, help="number of random trials")
    parser.add_argument("--format", choices=["table", "structured"], help="output format")
    parser.add_argument("--threads", type=int, help="worker processes")
    parser.add_argument("--trace", action="store_true", help="print OpenTelemetry spans to stdout")
    parser.add_argument("--log-level", help="logging level for the sncover logger")
    sub = parser.add_subparsers(dest="command", required=True)

    P = Partition.parse

    def add(name, handler, help_text):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(handler=handler)
        return p

    add("dim", _cmd_dim, "dimension by the hook length formula").add_argument("partition", type=P)
    add("hooks", _cmd_hooks, "hook lengths per cell").add_argument("partition", type=P)
    add("conj", _cmd_conj, "conjugate partition").add_argument("partition", type=P)
    for name, handler, text in (
        ("hsum", _cmd_hsum, "horizontal sum"),
        ("vsum", _cmd_vsum, "vertical sum"),
        ("dist", _cmd_dist, "blockwise distance"),
        ("tensor", _cmd_tensor, "support of a tensor product"),
    ):
        p = add(name, handler, text)
        p.add_argument("left", type=P)
        p.add_argument("right", type=P)
    add("distrows", _cmd_distrows, "number of distinct row lengths").add_argument("partition", type=P)

    p = add("staircase-extract", _cmd_staircase_extract, "split off a staircase")
    p.add_argument("partition", type=P)
    p.add_argument("r", type=int)
    p.add_argument("--chosen", type=P, help="row lengths to move into the staircase, e.g. [4,1]")

    p = add("char", _cmd_char, "character value chi^lam(rho)")
    p.add_argument("partition", type=P)
    p.add_argument("cycle_type", type=P)

    add("table", _cmd_table, "full character table of S_n").add_argument("n", type=int)

    p = add("kron", _cmd_kron, "Kronecker coefficient g(lam, mu, nu)")
    for name in ("lam", "mu", "nu"):
        p.add_argument(name, type=P)
    add("kron-ext", _cmd_kron_ext, "extended Kronecker coefficient").add_argument("partitions", type=P, nargs="+")

    p = add("power", _cmd_power, "support of a tensor power")
    p.add_argument("partition", type=P)
    p.add_argument("t", type=int)

    add("covers", _cmd_covers, "does a support contain every irreducible").add_argument("support", type=Support.parse)

    p = add("saxl", _cmd_saxl, "does the tensor square cover")
    p.add_argument("partition", type=P, nargs="?")
    p.add_argument("--sweep", type=int, metavar="N", help="check every partition of N")

    add("saxl-fourth", _cmd_saxl_fourth, "does the staircase fourth power cover").add_argument("r", type=int)

    p = add("min-power", _cmd_min_power, "least covering tensor power")
    p.add_argument("partition", type=P)
    p.add_argument("--t-max", type=int, default=64)

    p = add("certify", _cmd_certify, "build a certificate for a lemma instance")
    p.add_argument("lemma")
    p.add_argument("params", nargs="*")
    p.add_argument("-o", "--output")
    p.add_argument("--check", action="store_true", help="fully verify before writing")

    p = add("verify", _cmd_verify, "verify a certificate file")
    p.add_argument("file")
    p.add_argument("--mode", choices=["structural", "leaves", "full"], default="structural")

    p = add("sample", _cmd_sample, "draw one random partition")
    p.add_argument("measure", choices=["plancherel", "uniform"])
    p.add_argument("n", type=int)
    p.add_argument("--trial", type=int, default=0)

    p = add("stats-distrows", _cmd_stats_distrows, "distinct row statistics over random partitions")
    p.add_argument("measure", choices=["plancherel", "uniform"])
    p.add_argument("n", type=int)
    p.add_argument("--shape", action="store_true", help="also measure distance to the limit shape")

    p = add("exp-coupled-cover", _cmd_coupled_cover, "covering frequency of k random factors")
    p.add_argument("measure", choices=["plancherel", "uniform"])
    p.add_argument("k", type=int)
    p.add_argument("n", type=int)
    p.add_argument("--coupling", choices=["independent", "identical"], default="independent")

    add("measure", _cmd_measure, "Plancherel measure of a support").add_argument("support", type=Support.parse)

    p = add("pigeonhole", _cmd_pigeonhole, "M(V) + M(W) > 1 implies V x W covers")
    p.add_argument("v", type=Support.parse, nargs="?")
    p.add_argument("w", type=Support.parse, nargs="?")
    p.add_argument("--sweep", type=int, metavar="N")

    p = add("monotonicity", _cmd_monotonicity, "M(V x lam) >= M(V)")
    p.add_argument("v", type=Support.parse, nargs="?")
    p.add_argument("partition", type=P, nargs="?")
    p.add_argument("--sweep", type=int, metavar="N")

    add("measure-trend", _cmd_measure_trend, "M of staircase tensor squares").add_argument("r_max", type=int)
    add("affine-demo", _cmd_affine_demo, "uniform-measure counterexample in the affine group").add_argument(
        "p", type=int
    )

    p = add("constant-audit", _cmd_constant_audit, "empirical covering-power constant")
    p.add_argument("--n-min", type=int, default=5)
    p.add_argument("--n-max", type=int, default=10)

    add("distinct-rows-audit", _cmd_distinct_rows_audit, "t_min r^2 / n per partition").add_argument("n", type=int)
    add("tau-boundary", _cmd_tau_boundary, "coverage of tau_n powers n-2 and n").add_argument("n", type=int)
    add("faithful", _cmd_faithful, "every dim > 1 irreducible has a covering power").add_argument("n", type=int)

    p = add("finish", _cmd_finish, "two-row or hook finishing shape in a tensor power")
    for name in ("n", "k", "h"):
        p.add_argument(name, type=int)
    p.add_argument("variant", choices=["two_row", "hook"], nargs="?", default="two_row")

    p = add("criterion", _cmd_criterion, "covering frequency for pairs with shared rows")
    for name in ("n", "r", "k"):
        p.add_argument(name, type=int)

    p = add("alpha", _cmd_alpha, "quadrature for the Plancherel distinct-rows constant")
    p.add_argument("--tolerance", type=float, default=1e-9)

    add("serve", _cmd_serve, "run the MCP tool server over stdio")
    return parser


# -- output --------------------------------------------------------------------

def _plain(value: Any) -> Any:
    if isinstance(value, BaseModel):
        return value.model_dump(mode="json")
    if isinstance(value, (Partition, Support)):
        return str(value)
    if isinstance(value, dict):
        return {k: _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    return value


def _scalar(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return "-"
    if isinstance(value, (dict, list)):
        return json.dumps(value)
    return str(value)


def render(result: Any, fmt: str) -> str:
    data = _plain(result)
    records = data if isinstance(data, list) and all(isinstance(r, dict) for r in data) and data else None
    if fmt == "structured":
        if records is not None:
            return "\n".join(json.dumps(r) for r in records)
        return json.dumps(data if isinstance(data, dict) else {"result": data})
    if records is not None:
        header = list(records[0])
        lines = ["\t".join(header)]
        lines += ["\t".join(_scalar(r.get(h)) for h in header) for r in records]
        return "\n".join(lines)
    if isinstance(data, dict):
        width = max((len(k) for k in data), default=0)
        return "\n".join(f"{k.ljust(width)}  {_scalar(v)}" for k, v in data.items())
    return _scalar(data)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = RunConfig.from_env(
            oracle_cap=args.cap, cache_dir=args.cache_dir, seed=args.seed,
            output_format=args.format, threads=args.threads, log_level=args.log_level,
        )
    except ValidationError as exc:
        print(f"❌ invalid configuration: {exc}", file=sys.stderr)
        return 2
    args.seed = cfg.seed
    args.format = cfg.output_format
    configure_logging(cfg.log_level)
    setup_tracing(True if args.trace else None)

    with use_config(cfg), tracer.start_as_current_span(f"cli.{args.command}") as span:
        span.set_attribute("command", args.command)
        try:
            result = args.handler(args)
        except SnCoverError as exc:
            span.set_attribute("exit_code", exc.exit_code)
            print(f"❌ {type(exc).__name__}: {exc}", file=sys.stderr)
            return exc.exit_code
        if result is not None:
            print(render(result, cfg.output_format))
        span.set_attribute("exit_code", 0)
    return 0


if __name__ == "__main__":
    sys.exit(main())
