"""
Command-line entry point.

    python cli.py count --primitive mod-add --n 4
    python cli.py verify --circuit montgomery-full --n 4 --modulus 13
    python cli.py estimate --n 1024 --t-cnot 2.85e-4 --coding-factor 1
    python cli.py factor --modulus 15 --seed 7
"""
import argparse
import sys

from commands.handlers import HANDLERS, run_command
from storage.report_sink import FileSink, StreamSink, set_sink
from utils.logger import level_from_name, setup_logger

# Flags every verb shares; handlers reject the ones they do not take
PASSED_THROUGH = [
    "circuit", "n", "modulus", "constant", "base", "window", "controlled", "direction",
    "primitive", "lowered", "sample", "seed", "t_cnot", "coding_factor", "n_values",
    "shots", "max_attempts", "bases", "format",
]


def _int_list(text):
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="shor_arith", description="CNOT-counted reversible arithmetic for Shor's algorithm")
    parser.add_argument("verb", choices=list(HANDLERS), help="command to run")
    parser.add_argument("--circuit", help="catalog circuit name")
    parser.add_argument("--n", type=int, help="register width in bits")
    parser.add_argument("--modulus", type=int)
    parser.add_argument("--constant", type=int)
    parser.add_argument("--base", type=int)
    parser.add_argument("--window", type=int)
    parser.add_argument("--controlled", action="store_true", default=None)
    parser.add_argument("--direction", choices=["left", "right"])
    parser.add_argument("--primitive", help="cost formula name")
    parser.add_argument("--lowered", action="store_true", default=None,
                        help="replace Toffolis by their Clifford+T network")
    parser.add_argument("--sample", type=int, help="verify this many random points")
    parser.add_argument("--seed", type=int)
    parser.add_argument("--t-cnot", dest="t_cnot", type=float)
    parser.add_argument("--coding-factor", dest="coding_factor", type=float)
    parser.add_argument("--n-values", dest="n_values", type=_int_list)
    parser.add_argument("--shots", type=int)
    parser.add_argument("--max-attempts", dest="max_attempts", type=int)
    parser.add_argument("--bases", type=_int_list, help="comma-separated bases to try in order")
    parser.add_argument("--format", choices=["json", "text"])
    parser.add_argument("--out", help="write output to this file instead of stdout")
    parser.add_argument("--log-level", dest="log_level", help="DEBUG, INFO, WARNING or ERROR")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    level = level_from_name(args.log_level)
    for package in ("commands", "estimation", "pipeline", "simulation", "synthesis", "utils"):
        setup_logger(package, level)

    sink = FileSink(args.out) if args.out else StreamSink()
    set_sink(sink)
    params = {name: getattr(args, name) for name in PASSED_THROUGH}
    return run_command(args.verb, params, sink)


if __name__ == "__main__":
    sys.exit(main())
