"""Command-line interface: every library operation as a deterministic subcommand.

Structured results go out as JSON, fields in their plain text formats; ``-``
means stdin/stdout, so commands compose in pipes.  Exit codes: 0 success,
1 domain error (bad threshold, non-minimum vertex), 2 I/O or parse error,
3 pairing divergence.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from .errors import DivergenceError, FormatError, UsageError
from .grid import Connectivity, ScalarField
from .formats import read_field, sniff_format, write_field
from .pairing import (
    pair_by_dynamics,
    pair_by_persistence,
    pairing_signature,
    pairs_to_json,
    persistence_diagram,
)
from .pathdyn import dynamics_oracle
from .equivalence import GeneratorSpec, generate, sweep
from .morphology import (
    filter_dynamics,
    granulometric_curve,
    saliency,
    saliency_to_field,
    segment_pipeline,
    watershed,
)

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_IO = 2
EXIT_DIVERGENCE = 3


def _parse_shape(text: str) -> tuple:
    try:
        shape = tuple(int(part) for part in text.lower().split("x"))
    except ValueError:
        raise UsageError(f"bad shape {text!r}; expected forms like 256 or 32x32") from None
    if not shape or any(e < 1 for e in shape):
        raise UsageError(f"bad shape {text!r}; every extent must be >= 1")
    return shape


def _read_input(path: str, fmt: str | None, connectivity, invert: bool):
    if path == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(path, "r", encoding="ascii") as fh:
                text = fh.read()
        except OSError as exc:
            raise FormatError(f"cannot read {path}: {exc}") from None
    if fmt is None:
        fmt = sniff_format(text)
    field = read_field(text, fmt, connectivity)
    if invert:
        field = ScalarField(field.shape, -field.values, field.connectivity)
    return field, fmt


def _emit_text(text: str, path: str):
    if path == "-" or path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="ascii") as fh:
            fh.write(text)


def _emit_json(obj, path: str):
    _emit_text(json.dumps(obj, indent=2) + "\n", path)


def _emit_field(field: ScalarField, path: str, fmt: str, invert: bool):
    if invert:
        field = ScalarField(field.shape, -field.values, field.connectivity)
    _emit_text(write_field(field, fmt=fmt), path)


def _field_output_format(args, input_fmt: str, field: ScalarField) -> str:
    if getattr(args, "output_format", None):
        return args.output_format
    if input_fmt and (input_fmt != "csv-1d" or field.ndim == 1):
        return input_fmt
    return "csv-1d" if field.ndim == 1 else "field-nd"


def _labels_format(field: ScalarField) -> str:
    if field.ndim == 1:
        return "csv-1d"
    if field.ndim == 2:
        return "pgm-2d"
    return "field-nd"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dynpers",
        description="Minimum/1-saddle pairing by dynamics and persistence, plus the watershed pipeline.",
    )
    parser.add_argument(
        "--connectivity",
        choices=["axis", "full"],
        default="axis",
        help="grid neighborhood (default: axis)",
    )
    parser.add_argument(
        "--invert",
        action="store_true",
        help="negate the input so maxima are analyzed instead of minima",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_input(p):
        p.add_argument("input", nargs="?", default="-", help="input field path or - for stdin")
        p.add_argument("--format", choices=["csv-1d", "pgm-2d", "field-nd"], default=None)
        p.add_argument("--output", default="-", help="output path or - for stdout")

    p = sub.add_parser("pairs", help="minimum/saddle pairs as JSON")
    add_input(p)
    p.add_argument("--method", choices=["persistence", "dynamics", "both"], default="both")

    p = sub.add_parser("dynamics", help="dynamics value and witness saddle of one minimum")
    add_input(p)
    p.add_argument("--min", type=int, required=True, dest="min_vertex")

    p = sub.add_parser("diagram", help="persistence diagram points as JSON")
    add_input(p)
    p.add_argument(
        "--essential-death",
        choices=["omit", "max"],
        default="omit",
        help="drop the essential pair or give it the field maximum as death",
    )

    p = sub.add_parser("curve", help="granulometric curve as JSON")
    add_input(p)

    p = sub.add_parser("filter", help="cancel all pairs below a dynamics threshold")
    add_input(p)
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--output-format", choices=["csv-1d", "pgm-2d", "field-nd"], default=None)

    p = sub.add_parser("watershed", help="basin labels (csv-1d / pgm-2d / field-nd by dimension)")
    add_input(p)

    p = sub.add_parser("saliency", help="boundary saliency as JSON edge list or doubled grid")
    add_input(p)
    p.add_argument(
        "--as-field",
        action="store_true",
        help="emit the doubled-resolution interleaved field-nd instead of JSON",
    )

    p = sub.add_parser("segment", help="filter + watershed + curve in one JSON bundle")
    add_input(p)
    p.add_argument("--t", type=float, required=True)

    p = sub.add_parser("verify", help="equivalence sweep over generated fields")
    p.add_argument("--kind", choices=["gaussian_mixture", "poly_sine_1d", "uniform_random"],
                   default="uniform_random")
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--shape", default="64")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--bumps", type=int, default=3)
    p.add_argument("--fail-fast", action="store_true")
    p.add_argument("--no-oracle", action="store_true",
                   help="skip the per-minimum path oracle (pairings only)")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--output", default="-")

    p = sub.add_parser("gen", help="write a seeded test field")
    p.add_argument("--kind", choices=["gaussian_mixture", "poly_sine_1d", "uniform_random"],
                   default="uniform_random")
    p.add_argument("--shape", required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--bumps", type=int, default=3)
    p.add_argument("--amp", default="0:1", help="amplitude range lo:hi")
    p.add_argument("--output", default="-")
    p.add_argument("--output-format", choices=["csv-1d", "pgm-2d", "field-nd"], default=None)

    return parser


def _cmd_pairs(args, conn, invert) -> int:
    field, _ = _read_input(args.input, args.format, conn, invert)
    if args.method == "persistence":
        pairs = pair_by_persistence(field)
    elif args.method == "dynamics":
        pairs = pair_by_dynamics(field)
    else:
        per = pair_by_persistence(field)
        dyn = pair_by_dynamics(field)
        if pairing_signature(per) != pairing_signature(dyn):
            raise DivergenceError("persistence and dynamics pairings disagree on this field")
        pairs = per
    _emit_json(pairs_to_json(pairs), args.output)
    return EXIT_OK


def _cmd_dynamics(args, conn, invert) -> int:
    field, _ = _read_input(args.input, args.format, conn, invert)
    value, witness = dynamics_oracle(field, args.min_vertex)
    obj = {
        "min_index": args.min_vertex,
        "value": "inf" if math.isinf(value) else value,
        "witness": witness,
    }
    _emit_json(obj, args.output)
    return EXIT_OK


def _cmd_diagram(args, conn, invert) -> int:
    field, _ = _read_input(args.input, args.format, conn, invert)
    pairs = pair_by_persistence(field)
    sentinel = float(field.values.max()) if args.essential_death == "max" else None
    points = persistence_diagram(pairs, essential_death=sentinel)
    _emit_json([[b, d] for b, d in points], args.output)
    return EXIT_OK


def _cmd_curve(args, conn, invert) -> int:
    field, _ = _read_input(args.input, args.format, conn, invert)
    curve = granulometric_curve(pair_by_persistence(field))
    _emit_json(curve.to_json(), args.output)
    return EXIT_OK


def _cmd_filter(args, conn, invert) -> int:
    field, input_fmt = _read_input(args.input, args.format, conn, invert)
    filtered = filter_dynamics(field, args.t)
    _emit_field(filtered, args.output, _field_output_format(args, input_fmt, filtered), invert)
    return EXIT_OK


def _cmd_watershed(args, conn, invert) -> int:
    field, _ = _read_input(args.input, args.format, conn, invert)
    labels = watershed(field)
    label_field = ScalarField(field.shape, [float(l) for l in labels.labels], field.connectivity)
    _emit_text(write_field(label_field, fmt=_labels_format(field)), args.output)
    return EXIT_OK


def _cmd_saliency(args, conn, invert) -> int:
    field, _ = _read_input(args.input, args.format, conn, invert)
    sal = saliency(field)
    if args.as_field:
        _emit_text(write_field(saliency_to_field(sal), fmt="field-nd"), args.output)
    else:
        _emit_json(sal.to_json(), args.output)
    return EXIT_OK


def _cmd_segment(args, conn, invert) -> int:
    field, _ = _read_input(args.input, args.format, conn, invert)
    filtered, labels, pairs, curve = segment_pipeline(field, args.t)
    sign = -1.0 if invert else 1.0
    obj = {
        "threshold": args.t,
        "region_count": labels.region_count,
        "labels": list(labels.labels),
        "filtered": [sign * float(v) for v in filtered.values],
        "pairs": pairs_to_json(pairs),
        "curve": curve.to_json(),
    }
    _emit_json(obj, args.output)
    return EXIT_OK


def _cmd_verify(args, conn, invert) -> int:
    shape = _parse_shape(args.shape)
    specs = [
        GeneratorSpec(
            kind=args.kind,
            shape=shape,
            seed=args.seed + i,
            bumps=args.bumps,
            connectivity=conn,
        )
        for i in range(args.trials)
    ]
    report = sweep(
        specs,
        fail_fast=args.fail_fast,
        check_oracle=not args.no_oracle,
        threads=args.threads,
    )
    _emit_json(report.to_json(), args.output)
    return EXIT_OK if report.pairings_identical else EXIT_DIVERGENCE


def _cmd_gen(args, conn, invert) -> int:
    try:
        lo, hi = (float(part) for part in args.amp.split(":"))
    except ValueError:
        raise UsageError(f"bad amplitude range {args.amp!r}; expected lo:hi") from None
    spec = GeneratorSpec(
        kind=args.kind,
        shape=_parse_shape(args.shape),
        seed=args.seed,
        bumps=args.bumps,
        amplitude=(lo, hi),
        connectivity=conn,
    )
    field = generate(spec)
    fmt = args.output_format or ("csv-1d" if field.ndim == 1 else "field-nd")
    _emit_field(field, args.output, fmt, invert=False)
    return EXIT_OK


_COMMANDS = {
    "pairs": _cmd_pairs,
    "dynamics": _cmd_dynamics,
    "diagram": _cmd_diagram,
    "curve": _cmd_curve,
    "filter": _cmd_filter,
    "watershed": _cmd_watershed,
    "saliency": _cmd_saliency,
    "segment": _cmd_segment,
    "verify": _cmd_verify,
    "gen": _cmd_gen,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    conn = Connectivity(args.connectivity)
    try:
        return _COMMANDS[args.command](args, conn, args.invert)
    except DivergenceError as exc:
        print(f"dynpers: divergence: {exc}", file=sys.stderr)
        return EXIT_DIVERGENCE
    except FormatError as exc:
        print(f"dynpers: parse error: {exc}", file=sys.stderr)
        return EXIT_IO
    except UsageError as exc:
        print(f"dynpers: error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except OSError as exc:
        print(f"dynpers: i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


def entry() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    raise SystemExit(main())
