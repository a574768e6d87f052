"""
Command-line entry point for numerans.
"""
import argparse
import logging
import sys
from fractions import Fraction
from typing import Callable, Dict, List, Optional, TextIO

from pydantic import ValidationError

from automata.base import AutomatonSpec, step_word
from automata.builtins import BUILTIN_DESCRIPTIONS, BalancedDiff, get_builtin, prefix_closure
from automata.dfa_file import load_dfa_file
from config import get_config
from data import bundled_dfa_names, resolve_dfa_path
from models.errors import InputError, NumeransError, describe_error
from models.words import word_text
from services.adherence_service import max_word, min_word, validate_up_word
from services.counting_service import classify, count_u, count_v
from services.numeration_service import NumerationSystem, value_of, word_at
from services.oracle_service import enumerate_upto
from services.ratio_service import RatioStrategy, k_enclosure, rational_base_g
from services.reals_service import (Policy, convergence_table, divergence_demo, encode_real,
                                    endpoint_representations, hypotheses_report, interval_of, subdivide,
                                    value_of_infinite, value_of_prefix_stream)
from utils.formatting import (convergence_frame, format_decimal, format_real, interval_lines, intervals_frame,
                              records_frame, render)
from utils.monitoring import OperationMonitor, configure_logging

logger = logging.getLogger(__name__)

operation_monitor = OperationMonitor()


class CommandParser(argparse.ArgumentParser):
    """Argument parser that reports usage problems as input errors instead of exiting."""

    def error(self, message):
        raise InputError(message)


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise InputError(f"Expected a rational like 3/4 or 0.75, got {text!r}")


def build_spec(args) -> AutomatonSpec:
    """Automaton selected by ``--lang`` or ``--dfa``, closed under prefixes on request."""
    if args.dfa:
        spec = load_dfa_file(str(resolve_dfa_path(args.dfa)))
    else:
        spec = get_builtin(args.lang)
    if args.prefix_closure:
        spec = prefix_closure(spec)
    return spec


def build_system(args) -> NumerationSystem:
    strategy = RatioStrategy(args.strategy) if getattr(args, "strategy", None) else None
    return NumerationSystem(build_spec(args), strategy=strategy)


# Subcommand handlers: each returns the text written to standard output

def cmd_langs(args) -> str:
    rows = [{"name": name, "kind": "builtin", "description": text} for name, text in BUILTIN_DESCRIPTIONS.items()]
    rows += [{"name": name, "kind": "dfa", "description": "bundled DFA file (use --dfa)"}
             for name in bundled_dfa_names()]
    frame = records_frame(rows, ["name", "kind", "description"])
    return render(frame, args.csv)


def cmd_enumerate(args) -> str:
    system = build_system(args)
    language = enumerate_upto(system, args.n)
    frame = records_frame(({"val": i, "word": word_text(w)} for i, w in enumerate(language.words)),
                          ["val", "word"])
    return render(frame, args.csv)


def cmd_val(args) -> str:
    system = build_system(args)
    return f"{value_of(system, system.parse_word(args.word))}\n"


def cmd_rep(args) -> str:
    system = build_system(args)
    if args.value < 0:
        raise InputError(f"Values are nonnegative, got {args.value}")
    return f"{word_text(word_at(system, args.value))}\n"


def cmd_count(args) -> str:
    system = build_system(args)
    start = system.parse_word(args.start)
    state = step_word(system.spec, start)
    rows = ({"n": n, "u": str(count_u(system, state, n)), "v": str(count_v(system, state, n))}
            for n in range(args.n + 1))
    return render(records_frame(rows, ["n", "u", "v"]), args.csv)


def cmd_classify(args) -> str:
    growth = classify(build_spec(args))
    frame = records_frame([{
        "growth": str(growth),
        "uncountable_adherence": growth.uncountable_adherence,
        "uncountable_linfty": growth.uncountable_linfty,
    }], ["growth", "uncountable_adherence", "uncountable_linfty"])
    return render(frame, args.csv)


def cmd_minmax(args) -> str:
    system = build_system(args)
    prefix = system.parse_word(args.word)
    rows = [{"which": "min", "word": str(min_word(system, prefix))},
            {"which": "max", "word": str(max_word(system, prefix))}]
    if args.csv:
        return render(records_frame(rows, ["which", "word"]), True)
    return "".join(f"{row['which']}: {row['word']}\n" for row in rows)


def cmd_interval(args) -> str:
    system = build_system(args)
    interval = interval_of(system, system.parse_word(args.word))
    if args.csv:
        return render(intervals_frame([interval]), True)
    return interval_lines([interval])


def cmd_subdivide(args) -> str:
    system = build_system(args)
    children = subdivide(system, system.parse_word(args.word))
    if args.csv:
        return render(intervals_frame(children), True)
    return interval_lines(children)


def cmd_encode(args) -> str:
    system = build_system(args)
    word = encode_real(system, parse_rational(args.x), args.depth, Policy(args.policy))
    if args.csv:
        return render(records_frame([{"x": args.x, "depth": args.depth, "word": word_text(word)}],
                                    ["x", "depth", "word"]), True)
    return f"{word_text(word)}\n"


def cmd_decode(args) -> str:
    system = build_system(args)
    word = system.alphabet.parse_upword(args.word)
    if args.depth is not None:
        value = value_of_prefix_stream(system, word.letters(), args.depth)
    else:
        value = value_of_infinite(system, word)
    if args.csv:
        return render(records_frame([{"word": str(word), "lo": str(value.lo), "hi": str(value.hi),
                                      "certified": value.certified}],
                                    ["word", "lo", "hi", "certified"]), True)
    return f"{format_real(value, args.places)}\n"


def cmd_validate(args) -> str:
    system = build_system(args)
    return f"{validate_up_word(system, system.alphabet.parse_upword(args.word))}\n"


def cmd_endpoints(args) -> str:
    system = build_system(args)
    words = sorted(str(w) for w in endpoint_representations(system, parse_rational(args.x)))
    return "".join(f"{w}\n" for w in words)


def cmd_converge(args) -> str:
    system = build_system(args)
    table = convergence_table(system, system.alphabet.parse_upword(args.word), args.n)
    text = render(convergence_frame(table), args.csv)
    if table.note:
        logger.warning(f"Convergence table truncated: {table.note}")
        if not args.csv:
            text += f"# {table.note}\n"
    return text


def cmd_kbound(args) -> str:
    if args.n < 0:
        raise InputError(f"n must be nonnegative, got {args.n}")
    bound = k_enclosure(args.n)
    row = {"n": args.n, "G_n": str(rational_base_g(args.n)), "lo": format_decimal(bound.lo, args.places),
           "hi": format_decimal(bound.hi, args.places), "width": format_decimal(bound.width, args.places)}
    return render(records_frame([row], list(row)), args.csv)


def cmd_demo_nonprefix(args) -> str:
    system = NumerationSystem(BalancedDiff())
    report = divergence_demo(system, args.n)
    n = report.blocks
    lines = [
        f"val((ab)^{n})/v({2 * n}) = {format_decimal(report.even_ratio)}  (limit {report.even_limit})",
        f"val((ab)^{n}a)/v({2 * n + 1}) = {format_decimal(report.odd_ratio)}  (limit {report.odd_limit})",
        f"v({2 * n - 1})/v({2 * n}) = {format_decimal(report.staircase_even)}  (limit {report.staircase_even_limit})",
        f"v({2 * n})/v({2 * n + 1}) = {format_decimal(report.staircase_odd)}  (limit {report.staircase_odd_limit})",
    ]
    return "\n".join(lines) + "\n"


def cmd_hypotheses(args) -> str:
    system = build_system(args)
    report = hypotheses_report(system, args.n, args.depth)
    rows = [
        {"hypothesis": "H1", "holds": report.uncountable_adherence,
         "evidence": "adh(L) uncountable" if report.uncountable_adherence is not None else "unknown"},
        {"hypothesis": "H2", "holds": report.h2_holds,
         "evidence": f"u/v at n={report.h2_lengths}: gap {report.h2_gap:.3g}"},
        {"hypothesis": "H3", "holds": report.h3_holds,
         "evidence": f"r along {report.h3_path}: last {report.h3_ratios[-1]:.3g}" if report.h3_ratios else "none"},
    ]
    return render(records_frame(rows, ["hypothesis", "holds", "evidence"]), args.csv)


COMMANDS: Dict[str, Callable] = {
    "langs": cmd_langs,
    "enumerate": cmd_enumerate,
    "val": cmd_val,
    "rep": cmd_rep,
    "count": cmd_count,
    "classify": cmd_classify,
    "minmax": cmd_minmax,
    "interval": cmd_interval,
    "subdivide": cmd_subdivide,
    "encode": cmd_encode,
    "decode": cmd_decode,
    "validate": cmd_validate,
    "endpoints": cmd_endpoints,
    "converge": cmd_converge,
    "kbound": cmd_kbound,
    "demo-nonprefix": cmd_demo_nonprefix,
    "hypotheses": cmd_hypotheses,
}


def build_parser() -> CommandParser:
    output = CommandParser(add_help=False)
    output.add_argument("--csv", action="store_true", help="CSV output with a header row")
    output.add_argument("--verbose", action="store_true", help="log progress and timings to stderr")

    selector = CommandParser(add_help=False, parents=[output])
    source = selector.add_mutually_exclusive_group()
    source.add_argument("--lang", default="dyck", help="builtin language (see 'langs'), default dyck")
    source.add_argument("--dfa", help="DFA file path or bundled DFA name")
    selector.add_argument("--prefix-closure", action="store_true", help="use pref(L) instead of L")
    selector.add_argument("--strategy", choices=[s.value for s in RatioStrategy],
                          help="force a ratio strategy")

    parser = CommandParser(prog="numerans", description="Abstract numeration systems and real-number representation")
    commands = parser.add_subparsers(dest="command", metavar="command")
    commands.required = True

    commands.add_parser("langs", parents=[output], help="list builtin languages and bundled DFA files")

    p = commands.add_parser("enumerate", parents=[selector], help="words of length <= n in radix order")
    p.add_argument("-n", type=int, default=4)

    p = commands.add_parser("val", parents=[selector], help="value of a word")
    p.add_argument("word")

    p = commands.add_parser("rep", parents=[selector], help="word of a value")
    p.add_argument("value", type=int)

    p = commands.add_parser("count", parents=[selector], help="u(n) and v(n) for n = 0..N")
    p.add_argument("-n", type=int, default=10)
    p.add_argument("--from", dest="start", default="", help="count from the state reached by this word")

    commands.add_parser("classify", parents=[selector], help="growth class of a finite automaton")

    p = commands.add_parser("minmax", parents=[selector], help="least and greatest adherence words with a prefix")
    p.add_argument("word", nargs="?", default="")

    p = commands.add_parser("interval", parents=[selector], help="the interval I_y")
    p.add_argument("word", nargs="?", default="")

    p = commands.add_parser("subdivide", parents=[selector], help="children I_ya of I_y")
    p.add_argument("word", nargs="?", default="")

    p = commands.add_parser("encode", parents=[selector], help="center word of given length whose interval holds x")
    p.add_argument("x")
    p.add_argument("--depth", type=int, default=12)
    p.add_argument("--policy", choices=[policy.value for policy in Policy], default=Policy.RIGHTMOST.value)

    p = commands.add_parser("decode", parents=[selector], help="real value of an ultimately periodic word")
    p.add_argument("word")
    p.add_argument("--depth", type=int, help="bracket the value from a prefix of this length")
    p.add_argument("--places", type=int, default=0, help="also print a decimal rendering")

    p = commands.add_parser("validate", parents=[selector], help="is an ultimately periodic word in adh(L)")
    p.add_argument("word")

    p = commands.add_parser("endpoints", parents=[selector], help="both representations of a dyck interval endpoint")
    p.add_argument("x")

    p = commands.add_parser("converge", parents=[selector], help="val(w[0,n-1]) / v(n) for n = 1..N")
    p.add_argument("word")
    p.add_argument("-n", type=int, default=15)

    p = commands.add_parser("kbound", parents=[output], help="enclosure of the rational base constant K")
    p.add_argument("-n", type=int, default=60)
    p.add_argument("--places", type=int, default=10)

    p = commands.add_parser("demo-nonprefix", parents=[output], help="ratios without a limit on the balanced language")
    p.add_argument("-n", type=int, default=1000, help="number of ab blocks")

    p = commands.add_parser("hypotheses", parents=[selector], help="empirical check of the representation hypotheses")
    p.add_argument("-n", type=int, default=None)
    p.add_argument("--depth", type=int, default=24)

    return parser


def execute(argv: List[str], out: Optional[TextIO] = None, err: Optional[TextIO] = None) -> int:
    """
    Run one command.

    Args:
        argv: Arguments without the program name
        out: Standard output stream
        err: Diagnostic stream

    Returns:
        0 on success, 1 on malformed input, 2 on domain errors
    """
    out = out or sys.stdout
    err = err or sys.stderr
    command = argv[0] if argv else ""
    try:
        args = build_parser().parse_args(argv)
        if args.verbose:
            configure_logging("INFO")
            logger.info(f"Configuration: {get_config()}")
        with operation_monitor.track(args.command):
            text = COMMANDS[args.command](args)
        out.write(text)
        if args.verbose:
            logger.info(f"Operation metrics: {operation_monitor.get_system_health()}")
        return 0
    except ValidationError as e:
        error = InputError(str(e.errors()[0].get("msg", e)) if e.errors() else str(e))
    except NumeransError as e:
        error = e
    logger.error(f"Command {command!r} failed: {error.code}")
    err.write(describe_error(error) + "\n")
    return error.exit_code


def main() -> None:
    configure_logging()
    sys.exit(execute(sys.argv[1:]))


if __name__ == "__main__":
    main()
