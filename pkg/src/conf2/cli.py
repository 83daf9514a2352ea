"""Command-line entry point.

Surfaces are given as `--surface sphere | orientable:G | nonorientable:K`
or `--triangulation PATH`, repeatable and processed in the order written.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .report import RunConfig, emit_report, exit_code, run_pipeline


class _CollectSurface(argparse.Action):
    """Append ("kind"|"file", value) preserving command-line order."""

    def __call__(self, parser, namespace, values, option_string=None):
        items = list(getattr(namespace, self.dest) or [])
        source = "kind" if option_string == "--surface" else "file"
        items.append((source, values))
        setattr(namespace, self.dest, items)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="conf2",
        description=(
            "Mod-2 cohomology of ordered and unordered two-point "
            "configuration spaces of closed surfaces."
        ),
    )
    parser.add_argument(
        "--surface",
        action=_CollectSurface,
        dest="surfaces",
        metavar="LABEL",
        help="sphere, orientable:G, or nonorientable:K (repeatable)",
    )
    parser.add_argument(
        "--triangulation",
        action=_CollectSurface,
        dest="surfaces",
        metavar="PATH",
        help="triangulation file (repeatable)",
    )
    parser.add_argument("--no-oracle", action="store_true", help="skip the triangulation pipeline")
    parser.add_argument("--window", type=int, default=8, help="equivariant window, at least 4 (default 8)")
    parser.add_argument("--format", choices=("json", "md"), default="json", dest="output_format")
    parser.add_argument(
        "--paper-check",
        action="store_true",
        help="compare multiplicities against the stated classification tables",
    )
    parser.add_argument("--output", metavar="PATH", help="write the report here instead of stdout")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if not args.surfaces:
        parser.error("at least one --surface or --triangulation is required")
    try:
        cfg = RunConfig(
            surfaces=tuple(args.surfaces),
            oracle_enabled=not args.no_oracle,
            window=args.window,
            output_format=args.output_format,
            paper_check=args.paper_check,
        )
    except ValueError as exc:
        parser.error(str(exc))
    reports = run_pipeline(cfg)
    text = emit_report(reports, cfg.output_format)
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return exit_code(reports)


if __name__ == "__main__":
    raise SystemExit(main())
