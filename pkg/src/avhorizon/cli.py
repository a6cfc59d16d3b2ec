"""Command-line interface.

Commands:

* catalog: project the builtin category catalog
* project: project scenarios from a JSON document
* sweep:   one-at-a-time parameter sweep for one scenario
* tornado: ranked low/high excursions for several parameters
* mc:      seeded Monte Carlo over parameter distributions
* schema:  print the scenario-document JSON schema

Exit codes: 0 on success, 1 on validation errors (reported as a single
"error: ..." line on standard error), 2 on usage errors (argparse).
All flags are long-form.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from .errors import ValidationError
from .report import ReportFormat, render, render_sensitivity
from .scenario import (
    CategoryScenario,
    builtin_catalog,
    load_scenarios,
    project,
    schema_json,
)
from .sensitivity import (
    DistributionKind,
    DistributionSpec,
    ParameterBounds,
    SweepSpec,
    monte_carlo,
    one_at_a_time,
    tornado,
)
from .timeline import PROJECTABLE_STAGES, Stage

__all__ = ["main", "build_parser"]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="avhorizon",
        description="Deployment-timeline projection for autonomous-vehicle categories.",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    catalog_parser = subparsers.add_parser(
        "catalog", help="project the builtin category catalog"
    )
    catalog_parser.add_argument(
        "--category", action="append",
        help="restrict to this category name (repeatable)",
    )
    _add_stage_flag(catalog_parser, default="all")
    _add_output_flags(catalog_parser)

    project_parser = subparsers.add_parser(
        "project", help="project scenarios from a JSON document"
    )
    project_parser.add_argument(
        "--file", required=True, help="scenario document path (JSON)"
    )
    project_parser.add_argument(
        "--category", action="append",
        help="restrict to this category name (repeatable)",
    )
    _add_stage_flag(project_parser, default="all")
    _add_output_flags(project_parser)

    sweep_parser = subparsers.add_parser(
        "sweep", help="one-at-a-time parameter sweep for one scenario"
    )
    _add_scenario_selection_flags(sweep_parser)
    sweep_parser.add_argument("--param", help="dotted parameter path, e.g. crow.beta")
    sweep_parser.add_argument(
        "--values", help="comma-separated values, e.g. 0.3,0.4,0.5"
    )
    sweep_parser.add_argument(
        "--grid", help="inclusive grid low:high:steps, e.g. 0.3:0.5:5"
    )
    sweep_parser.add_argument(
        "--spec-file", help="JSON sweep spec: {\"parameter_path\", \"values\"|\"grid\"}"
    )
    _add_stage_flag(sweep_parser, default="3")
    _add_output_flags(sweep_parser)

    tornado_parser = subparsers.add_parser(
        "tornado", help="ranked low/high excursions for several parameters"
    )
    _add_scenario_selection_flags(tornado_parser)
    tornado_parser.add_argument(
        "--bound", action="append",
        help="parameter bounds path=low,high (repeatable), e.g. crow.severity=1,5",
    )
    tornado_parser.add_argument(
        "--spec-file", help="JSON tornado spec: {\"bounds\": [...]}"
    )
    _add_stage_flag(tornado_parser, default="3")
    _add_output_flags(tornado_parser)

    mc_parser = subparsers.add_parser(
        "mc", help="seeded Monte Carlo over parameter distributions"
    )
    _add_scenario_selection_flags(mc_parser)
    mc_parser.add_argument(
        "--dist", action="append",
        help="distribution path=uniform:low,high or path=triangular:low,mode,high "
             "(repeatable)",
    )
    mc_parser.add_argument(
        "--spec-file", help="JSON distribution spec: {\"distributions\": [...]}"
    )
    mc_parser.add_argument(
        "--samples", type=int, default=1000, help="sample count (default 1000)"
    )
    mc_parser.add_argument(
        "--seed", type=int, default=0, help="64-bit generator seed (default 0)"
    )
    _add_stage_flag(mc_parser, default="3")
    _add_output_flags(mc_parser)

    schema_parser = subparsers.add_parser(
        "schema", help="print the scenario-document JSON schema"
    )
    _add_output_flags(schema_parser, with_format=False)

    return parser


def _add_stage_flag(parser: argparse.ArgumentParser, default: str) -> None:
    parser.add_argument(
        "--stage", default=default, choices=["1", "2", "3", "all"],
        help=f"deployment stage selector (default {default})",
    )


def _add_output_flags(parser: argparse.ArgumentParser, with_format: bool = True) -> None:
    if with_format:
        parser.add_argument(
            "--format", default="table",
            help="output format: table, csv, json, markdown (default table)",
        )
    parser.add_argument(
        "--output", help="write output to this path instead of standard output"
    )


def _add_scenario_selection_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--file", help="scenario document path (JSON); builtin catalog if omitted"
    )
    parser.add_argument(
        "--category", action="append",
        help="scenario to analyze (required when the source has several)",
    )


# ---------------------------------------------------------------------------
# Argument interpretation
# ---------------------------------------------------------------------------


def _select_scenarios(args: argparse.Namespace) -> tuple[CategoryScenario, ...]:
    source = getattr(args, "file", None)
    scenarios = load_scenarios(source) if source else builtin_catalog()
    if not args.category:
        return scenarios
    by_name = {s.name: s for s in scenarios}
    selected = []
    for name in args.category:
        if name not in by_name:
            raise ValidationError(
                f"unknown category {name!r}; valid categories: "
                + ", ".join(s.name for s in scenarios)
            )
        selected.append(by_name[name])
    return tuple(selected)


def _select_single_scenario(args: argparse.Namespace) -> CategoryScenario:
    selected = _select_scenarios(args)
    if len(selected) != 1:
        raise ValidationError(
            "sensitivity analyses need exactly one scenario; select it with "
            f"--category (got {len(selected)})"
        )
    return selected[0]


def _stages_for(selector: str) -> tuple[Stage, ...]:
    if selector == "all":
        return PROJECTABLE_STAGES
    return (Stage.from_key(selector),)


def _single_stage(selector: str) -> Stage:
    if selector == "all":
        raise ValidationError(
            "sensitivity analyses run at a single stage; pass --stage 2 or --stage 3"
        )
    return Stage.from_key(selector)


def _parse_float(text: str, context: str) -> float:
    try:
        return float(text)
    except ValueError:
        raise ValidationError(f"{context}: {text!r} is not a number") from None


def _parse_values_flag(text: str) -> tuple[float, ...]:
    parts = [p.strip() for p in text.split(",") if p.strip()]
    if not parts:
        raise ValidationError(f"--values needs at least one number, got {text!r}")
    return tuple(_parse_float(p, "--values") for p in parts)


def _parse_grid_flag(text: str) -> tuple[float, float, int]:
    parts = text.split(":")
    if len(parts) != 3:
        raise ValidationError(f"--grid must be low:high:steps, got {text!r}")
    low = _parse_float(parts[0], "--grid low")
    high = _parse_float(parts[1], "--grid high")
    try:
        steps = int(parts[2])
    except ValueError:
        raise ValidationError(f"--grid steps must be an integer, got {parts[2]!r}") from None
    return low, high, steps


def _parse_bound_flag(text: str) -> ParameterBounds:
    if "=" not in text:
        raise ValidationError(f"--bound must be path=low,high, got {text!r}")
    path, _, bounds_text = text.partition("=")
    parts = bounds_text.split(",")
    if len(parts) != 2:
        raise ValidationError(f"--bound must be path=low,high, got {text!r}")
    return ParameterBounds(
        parameter_path=path.strip(),
        low=_parse_float(parts[0], "--bound low"),
        high=_parse_float(parts[1], "--bound high"),
    )


def _parse_dist_flag(text: str) -> DistributionSpec:
    if "=" not in text:
        raise ValidationError(
            f"--dist must be path=uniform:low,high or path=triangular:low,mode,high, "
            f"got {text!r}"
        )
    path, _, spec_text = text.partition("=")
    kind_text, _, params_text = spec_text.partition(":")
    kind_text = kind_text.strip().lower()
    parts = [p.strip() for p in params_text.split(",") if p.strip()]
    if kind_text == "uniform":
        if len(parts) != 2:
            raise ValidationError(f"--dist uniform takes low,high; got {text!r}")
        return DistributionSpec(
            parameter_path=path.strip(),
            kind=DistributionKind.UNIFORM,
            low=_parse_float(parts[0], "--dist low"),
            high=_parse_float(parts[1], "--dist high"),
        )
    if kind_text == "triangular":
        if len(parts) != 3:
            raise ValidationError(f"--dist triangular takes low,mode,high; got {text!r}")
        return DistributionSpec(
            parameter_path=path.strip(),
            kind=DistributionKind.TRIANGULAR,
            low=_parse_float(parts[0], "--dist low"),
            mode=_parse_float(parts[1], "--dist mode"),
            high=_parse_float(parts[2], "--dist high"),
        )
    raise ValidationError(
        f"unknown distribution kind {kind_text!r}; expected uniform or triangular"
    )


def _load_spec_document(path: str, allowed_keys: set[str], context: str) -> dict:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except FileNotFoundError:
        raise ValidationError(f"{context} spec file not found: {path}") from None
    except OSError as exc:
        raise ValidationError(f"cannot read {context} spec file {path}: {exc}") from None
    try:
        document = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(
            f"{path}: not valid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}"
        ) from None
    if not isinstance(document, dict):
        raise ValidationError(f"{path}: {context} spec must be a JSON object")
    unknown = set(document) - allowed_keys
    if unknown:
        raise ValidationError(
            f"{path}: unknown {context} spec key(s) {sorted(unknown)}; "
            f"allowed: {sorted(allowed_keys)}"
        )
    return document


def _reject_flag_conflicts(parser: argparse.ArgumentParser, args: argparse.Namespace) -> None:
    """Mutually exclusive or missing flag structure is a usage error (exit 2)."""
    if args.command == "sweep":
        inline = [flag for flag, value in (("--param", args.param),
                                           ("--values", args.values),
                                           ("--grid", args.grid)) if value is not None]
        if args.spec_file and inline:
            parser.error(f"--spec-file cannot be combined with {', '.join(inline)}")
        if not args.spec_file:
            if args.param is None:
                parser.error("sweep requires --param with --values or --grid (or --spec-file)")
            if (args.values is None) == (args.grid is None):
                parser.error("sweep requires exactly one of --values or --grid")
    elif args.command == "tornado":
        if args.spec_file and args.bound:
            parser.error("--spec-file cannot be combined with --bound")
        if not args.spec_file and not args.bound:
            parser.error("tornado requires at least one --bound (or --spec-file)")
    elif args.command == "mc":
        if args.spec_file and args.dist:
            parser.error("--spec-file cannot be combined with --dist")
        if not args.spec_file and not args.dist:
            parser.error("mc requires at least one --dist (or --spec-file)")


def _sweep_spec_from_args(args: argparse.Namespace) -> SweepSpec:
    if args.spec_file:
        document = _load_spec_document(
            args.spec_file, {"parameter_path", "values", "grid"}, "sweep"
        )
        if "parameter_path" not in document:
            raise ValidationError(f"{args.spec_file}: sweep spec needs parameter_path")
        if ("values" in document) == ("grid" in document):
            raise ValidationError(
                f"{args.spec_file}: sweep spec needs exactly one of values or grid"
            )
        if "values" in document:
            if not isinstance(document["values"], list):
                raise ValidationError(f"{args.spec_file}: values must be an array")
            return SweepSpec(document["parameter_path"], tuple(document["values"]))
        grid = document["grid"]
        if not isinstance(grid, dict) or set(grid) != {"low", "high", "steps"}:
            raise ValidationError(
                f"{args.spec_file}: grid must be an object with low, high, steps"
            )
        return SweepSpec.from_grid(
            document["parameter_path"], grid["low"], grid["high"], grid["steps"]
        )
    if args.values is not None:
        return SweepSpec(args.param, _parse_values_flag(args.values))
    low, high, steps = _parse_grid_flag(args.grid)
    return SweepSpec.from_grid(args.param, low, high, steps)


def _bounds_from_args(args: argparse.Namespace) -> list[ParameterBounds]:
    if args.spec_file:
        document = _load_spec_document(args.spec_file, {"bounds"}, "tornado")
        if "bounds" not in document or not isinstance(document["bounds"], list):
            raise ValidationError(f"{args.spec_file}: tornado spec needs a bounds array")
        bounds = []
        for item in document["bounds"]:
            if not isinstance(item, dict) or set(item) != {"parameter_path", "low", "high"}:
                raise ValidationError(
                    f"{args.spec_file}: each bounds item needs exactly "
                    "parameter_path, low, high"
                )
            bounds.append(ParameterBounds(item["parameter_path"], item["low"], item["high"]))
        return bounds
    return [_parse_bound_flag(text) for text in args.bound]


def _distributions_from_args(args: argparse.Namespace) -> list[DistributionSpec]:
    if args.spec_file:
        document = _load_spec_document(args.spec_file, {"distributions"}, "distribution")
        if "distributions" not in document or not isinstance(document["distributions"], list):
            raise ValidationError(
                f"{args.spec_file}: distribution spec needs a distributions array"
            )
        distributions = []
        for item in document["distributions"]:
            if not isinstance(item, dict):
                raise ValidationError(
                    f"{args.spec_file}: each distribution must be an object"
                )
            unknown = set(item) - {"parameter_path", "kind", "low", "high", "mode"}
            if unknown:
                raise ValidationError(
                    f"{args.spec_file}: unknown distribution key(s) {sorted(unknown)}"
                )
            for required in ("parameter_path", "kind", "low", "high"):
                if required not in item:
                    raise ValidationError(
                        f"{args.spec_file}: distribution needs {required}"
                    )
            kind_text = str(item["kind"]).lower()
            if kind_text not in ("uniform", "triangular"):
                raise ValidationError(
                    f"{args.spec_file}: unknown distribution kind {item['kind']!r}"
                )
            distributions.append(
                DistributionSpec(
                    parameter_path=item["parameter_path"],
                    kind=DistributionKind(kind_text),
                    low=item["low"],
                    high=item["high"],
                    mode=item.get("mode"),
                )
            )
        return distributions
    return [_parse_dist_flag(text) for text in args.dist]


# ---------------------------------------------------------------------------
# Command execution
# ---------------------------------------------------------------------------


def _run_projection_command(args: argparse.Namespace) -> str:
    scenarios = _select_scenarios(args)
    stages = _stages_for(args.stage)
    results = [project(s, stage) for s in scenarios for stage in stages]
    return render(results, ReportFormat.from_key(args.format))


def _run_sweep(args: argparse.Namespace) -> str:
    scenario = _select_single_scenario(args)
    stage = _single_stage(args.stage)
    report = one_at_a_time(scenario, stage, _sweep_spec_from_args(args))
    return render_sensitivity(report, ReportFormat.from_key(args.format))


def _run_tornado(args: argparse.Namespace) -> str:
    scenario = _select_single_scenario(args)
    stage = _single_stage(args.stage)
    report = tornado(scenario, stage, _bounds_from_args(args))
    return render_sensitivity(report, ReportFormat.from_key(args.format))


def _run_mc(args: argparse.Namespace) -> str:
    scenario = _select_single_scenario(args)
    stage = _single_stage(args.stage)
    report = monte_carlo(
        scenario, stage, _distributions_from_args(args),
        sample_count=args.samples, seed=args.seed,
    )
    return render_sensitivity(report, ReportFormat.from_key(args.format))


_COMMANDS = {
    "catalog": _run_projection_command,
    "project": _run_projection_command,
    "sweep": _run_sweep,
    "tornado": _run_tornado,
    "mc": _run_mc,
    "schema": lambda args: schema_json(),
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _reject_flag_conflicts(parser, args)
    try:
        output = _COMMANDS[args.command](args)
        if args.output:
            Path(args.output).write_text(output, encoding="utf-8")
        else:
            sys.stdout.write(output)
    except ValidationError as exc:
        message = " ".join(str(exc).split())  # single line, collapsed whitespace
        print(f"error: {message}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
