"""Command-line front end."""
from __future__ import annotations

import argparse
import sys

from .report import RunConfig, dump_catalog, render_json, render_markdown, run


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bwres",
        description="Exact verification of the noncommutative-residue boundary "
                    "terms of spectral Einstein functionals on a 4d spin collar.")
    parser.add_argument("--operator", choices=("type1", "type2", "both"),
                        default="both", help="which operator pairing to run")
    parser.add_argument("--case", default=None,
                        help="only cases whose id contains this substring "
                             "(e.g. 'conn/II' or 'type1/grad')")
    parser.add_argument("--substitute", choices=("primitive", "geometric"),
                        default="geometric",
                        help="reporting basis for engine values")
    parser.add_argument("--format", choices=("json", "markdown"),
                        default="markdown", dest="output_format")
    parser.add_argument("--oracle", choices=("off", "arbitrate"), default="off",
                        help="numeric arbitration of reference mismatches")
    parser.add_argument("--convention", choices=("consistent", "reference"),
                        default="consistent",
                        help="symbol-catalog convention (see README)")
    parser.add_argument("--oracle-samples", type=int, default=3)
    parser.add_argument("--dump-catalog", action="store_true",
                        help="emit every stored symbol in canonical text form "
                             "and exit")
    parser.add_argument("--verbose", action="store_true",
                        help="include per-case pipeline traces")
    parser.add_argument("-o", "--output", default=None,
                        help="write the document to a file instead of stdout")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.dump_catalog:
        doc = dump_catalog(args.convention)
        text = render_json(doc)
        _emit(text, args.output)
        return 0
    config = RunConfig(operator_type=args.operator, case_filter=args.case,
                       substitution=args.substitute,
                       output_format=args.output_format, oracle=args.oracle,
                       convention=args.convention, verbose=args.verbose,
                       oracle_samples=args.oracle_samples)
    code, doc = run(config)
    text = render_json(doc) if config.output_format == "json" else render_markdown(doc)
    _emit(text, args.output)
    return code


def _emit(text: str, path):
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")


if __name__ == "__main__":
    sys.exit(main())
