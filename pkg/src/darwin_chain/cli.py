"""`darwin-chain` command-line entry point.

    darwin-chain <selector> [--config FILE] [--set key=value]...
                 [--out PATH] [--format csv|json] [--unsafe-window]
                 [--sweep AXIS=SPEC]

Exit codes: 0 success, 1 usage or I/O error, 2 window-guard refusal,
3 sweep finished with failed points.  AXIS is omega, g, or t; SPEC is either
a comma list (0.1,0.5,1.0) or start:stop:step (1.5:2.5:0.05, inclusive).
Sweeps write one table per point plus index.json into --out (a directory).
"""

from __future__ import annotations

import argparse
import math
import sys

from darwin_chain import runio

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_GUARD = 2
EXIT_SWEEP = 3


class _Parser(argparse.ArgumentParser):
    # argparse exits with code 2 on bad flags, which is reserved for guard
    # refusals here; route usage problems to code 1 instead.
    def error(self, message: str):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _build_parser() -> _Parser:
    parser = _Parser(
        prog="darwin-chain",
        description=(
            "Exact qubit-dephasing simulator on an interacting oscillator "
            "ring: decoherence curves, non-Markovianity diagnostics, partial "
            "information plots, perturbation profiles, and a brute-force "
            "oracle cross-check. All quantities are in units of J."
        ),
    )
    parser.add_argument("selector", choices=runio.SELECTORS, help="analysis to run")
    parser.add_argument("--config", help="flat key=value config file")
    parser.add_argument(
        "--set",
        dest="overrides",
        action="append",
        default=[],
        metavar="KEY=VALUE",
        help="override a config key (repeatable)",
    )
    parser.add_argument("--out", help="output file (or directory for --sweep)")
    parser.add_argument("--format", choices=("csv", "json"), help="output format")
    parser.add_argument(
        "--unsafe-window",
        action="store_true",
        help="allow windows beyond the recurrence guard",
    )
    parser.add_argument(
        "--sweep",
        metavar="AXIS=SPEC",
        help="sweep omega, g, or t over a comma list or start:stop:step",
    )
    return parser


def _parse_spec(spec: str) -> list[float]:
    if ":" in spec:
        pieces = spec.split(":")
        if len(pieces) != 3:
            raise runio.ConfigError(f"range spec must be start:stop:step, got {spec!r}")
        start, stop, step = (float(p) for p in pieces)
        if step <= 0.0:
            raise runio.ConfigError("sweep step must be positive")
        if stop < start:
            raise runio.ConfigError("sweep stop below start")
        count = int(math.floor((stop - start) / step + 1e-9)) + 1
        return [start + i * step for i in range(count)]
    values = [float(p) for p in spec.split(",") if p.strip()]
    if not values:
        raise runio.ConfigError(f"empty sweep spec: {spec!r}")
    return values


def _gather_config(args: argparse.Namespace) -> runio.RunConfig:
    file_values = {}
    if args.config:
        try:
            with open(args.config, "r", encoding="utf-8") as handle:
                file_values = runio.parse_config_text(handle.read())
        except OSError as exc:
            raise runio.ConfigError(f"cannot read config {args.config}: {exc}") from exc
    overrides = {"selector": args.selector}
    for item in args.overrides:
        if "=" not in item:
            raise runio.ConfigError(f"--set expects KEY=VALUE, got {item!r}")
        key, _, value = item.partition("=")
        overrides[key.strip()] = value.strip()
    if args.out is not None:
        overrides["out"] = args.out
    if args.format is not None:
        overrides["format"] = args.format
    if args.unsafe_window:
        overrides["unsafe_window"] = "true"
    return runio.build_config(file_values, overrides)


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        config = _gather_config(args)
        if args.sweep:
            if "=" not in args.sweep:
                raise runio.ConfigError("--sweep expects AXIS=SPEC")
            axis, _, spec = args.sweep.partition("=")
            if config.out is None:
                raise runio.ConfigError("--sweep requires --out DIRECTORY")
            index = runio.sweep(
                config, axis.strip(), _parse_spec(spec), config.out, config.format
            )
            failed = [p for p in index["points"] if p["status"] != "ok"]
            for point in failed:
                print(
                    f"sweep point {point['file']} failed: {point['message']}",
                    file=sys.stderr,
                )
            return EXIT_SWEEP if failed else EXIT_OK
        table = runio.run(config)
        if config.out is None:
            sys.stdout.write(runio.emit_text(table, config.format))
        else:
            runio.emit(table, config.format, config.out)
        return EXIT_OK
    except runio.WindowGuardError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (runio.ConfigError, ValueError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
