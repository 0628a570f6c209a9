"""Command-line interface.

Exit codes: 0 on success, 1 when an asserted bound is violated, 2 on usage
or input errors.
"""
import argparse
import json
import os
import sys
from typing import List, Optional

import yaml

from FLAGREG.services.config import config
from FLAGREG.services.util.betti import (
    hochster_table, np_via_betti, np_via_cycles, regularity, systole
)
from FLAGREG.services.util.bounds import (
    js_lower_bounds, lemma3_check, thm1_verdict, thm2_verdict, thm4_verdict
)
from FLAGREG.services.util.catalog import generate_expression, parse_facets, serialize_facets
from FLAGREG.services.util.complex import SimplicialComplex, is_flag
from FLAGREG.services.util.errors import FlagregError, TheoremViolation
from FLAGREG.services.util.fields import default_field, parse_field
from FLAGREG.services.util.logutil import LoggingUtil
from FLAGREG.services.util.report import (
    AnalysisOptions, analyze, bound_json, has_violation, jsonable, report_json
)
from FLAGREG.services.util.structure import (
    is_closed_pseudomanifold, is_gorenstein, is_gorenstein_star, orientation, parity_orientable,
    top_cycle_check
)

logger = LoggingUtil.init_logging(__name__,
                                  config.get('logging_level'),
                                  config.get('logging_format')
                                  )

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2


def load_complex(args: argparse.Namespace) -> SimplicialComplex:
    if args.gen:
        return generate_expression(args.gen)
    if not args.file:
        raise FlagregError("give a facet file or --gen <expression>")
    if args.file == '-':
        return parse_facets(sys.stdin.read())
    with open(args.file) as stream:
        return parse_facets(stream.read())


def emit(data, as_json: bool) -> None:
    if as_json:
        print(json.dumps(data, indent=2))
    else:
        print(yaml.safe_dump(data, sort_keys=False, allow_unicode=True), end='')


def cmd_generate(args) -> int:
    text = serialize_facets(generate_expression(args.expression))
    if args.output:
        with open(args.output, 'w') as stream:
            stream.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_analyze(args) -> int:
    options = AnalysisOptions.from_strings(args.field or ['gf2'], args.checks or ['all'], args.limit)
    report = analyze(load_complex(args), options)
    emit(report_json(report), args.json)
    return EXIT_VIOLATION if has_violation(report) else EXIT_OK


def cmd_betti(args) -> int:
    table = hochster_table(load_complex(args), args.field_spec, limit=args.limit)
    if args.json:
        emit([{'i': i, 'j': j, 'beta': beta} for i, j, beta in table.sorted_entries()], True)
    else:
        print(table)
    return EXIT_OK


def cmd_reg(args) -> int:
    print(regularity(load_complex(args), args.field_spec, limit=args.limit))
    return EXIT_OK


def cmd_np(args) -> int:
    delta = load_complex(args)
    by_table = np_via_betti(delta, args.p, args.field_spec)
    data = {'p': args.p, 'via_betti': by_table.satisfied, 'witness': jsonable(by_table.witness)}
    if args.p >= 2 and is_flag(delta):
        by_cycles = np_via_cycles(delta, args.p)
        data.update({'via_cycles': by_cycles.satisfied, 'cycle': by_cycles.witness})
    emit(data, args.json)
    return EXIT_OK


def cmd_systole(args) -> int:
    value = systole(load_complex(args))
    print('none' if value is None else value)
    return EXIT_OK


def cmd_gorenstein(args) -> int:
    delta = load_complex(args)
    emit({'gorenstein': jsonable(is_gorenstein(delta, args.field_spec)),
          'gorenstein_star': jsonable(is_gorenstein_star(delta, args.field_spec))}, args.json)
    return EXIT_OK


def cmd_pm(args) -> int:
    delta = load_complex(args)
    verdict = is_closed_pseudomanifold(delta)
    data = {'pseudomanifold': jsonable(verdict)}
    if verdict:
        data['parity_orientable'] = jsonable(parity_orientable(delta))
        data['orientable'] = orientation(delta) is not None
        try:
            data['top_cycle'] = jsonable(top_cycle_check(delta, args.field_spec))
        except FlagregError as e:
            data['top_cycle'] = {'holds': False, 'reason': str(e)}
    emit(data, args.json)
    return EXIT_OK


def cmd_bounds(args) -> int:
    if args.lemma3:
        reports = [lemma3_check(args.k)]
    elif args.js:
        emit(jsonable(js_lower_bounds(args.d)._asdict()), args.json)
        return EXIT_OK
    elif args.thm:
        delta = load_complex(args)
        if args.thm == 1:
            reports = [thm1_verdict(delta, args.p, args.field_spec, limit=args.limit)]
        elif args.thm == 2:
            reports = [thm2_verdict(delta, args.field_spec, limit=args.limit)]
        else:
            reports = [thm4_verdict(delta)]
    else:
        raise FlagregError("choose --thm 1|2|4, --lemma3 or --js")
    emit([bound_json(report) for report in reports], args.json)
    return EXIT_VIOLATION if any(report.violated for report in reports) else EXIT_OK


def cmd_selftest(args) -> int:
    import pytest
    tests = os.path.join(os.path.dirname(__file__), 'tests')
    return EXIT_OK if pytest.main([tests, '-q'] + args.pytest_args) == 0 else EXIT_VIOLATION


def _input_arguments(parser: argparse.ArgumentParser, multi_field: bool = False) -> None:
    parser.add_argument('file', nargs='?', help="facet file, '-' for stdin")
    parser.add_argument('--gen', help="generator expression, e.g. 'cone(cycle(5))'")
    if multi_field:
        parser.add_argument('--field', action='append', help="gf2, gf<p> or q; repeatable")
    else:
        parser.add_argument('--field', default=None, help="gf2, gf<p> or q")
    parser.add_argument('--limit', type=int, default=None, help="Hochster vertex limit")
    parser.add_argument('--json', action='store_true', help="JSON output")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='flagreg', description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    commands = parser.add_subparsers(dest='command', required=True)

    generate = commands.add_parser('generate', help="write a catalog complex as a facet file")
    generate.add_argument('expression')
    generate.add_argument('-o', '--output')
    generate.set_defaults(handler=cmd_generate)

    analyze_parser = commands.add_parser('analyze', help="full analysis report")
    _input_arguments(analyze_parser, multi_field=True)
    analyze_parser.add_argument('--checks', action='append', help="all, structural or a comma list")
    analyze_parser.set_defaults(handler=cmd_analyze)

    for name, handler, help_text in (
            ('betti', cmd_betti, "graded Betti table"),
            ('reg', cmd_reg, "Castelnuovo-Mumford regularity"),
            ('systole', cmd_systole, "shortest induced cycle length"),
            ('gorenstein', cmd_gorenstein, "Gorenstein and Gorenstein* verdicts"),
            ('pm', cmd_pm, "pseudomanifold and orientability")):
        sub = commands.add_parser(name, help=help_text)
        _input_arguments(sub)
        sub.set_defaults(handler=handler)

    np_parser = commands.add_parser('np', help="property N_p")
    _input_arguments(np_parser)
    np_parser.add_argument('--p', type=int, required=True)
    np_parser.set_defaults(handler=cmd_np)

    bounds = commands.add_parser('bounds', help="bound verification")
    _input_arguments(bounds)
    bounds.add_argument('--thm', type=int, choices=(1, 2, 4))
    bounds.add_argument('--p', type=int, default=2, help="p for --thm 1")
    bounds.add_argument('--lemma3', action='store_true')
    bounds.add_argument('--k', type=int, default=3)
    bounds.add_argument('--js', action='store_true')
    bounds.add_argument('--d', type=int, default=2)
    bounds.set_defaults(handler=cmd_bounds)

    selftest = commands.add_parser('selftest', help="run the test suite")
    selftest.add_argument('pytest_args', nargs=argparse.REMAINDER)
    selftest.set_defaults(handler=cmd_selftest)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command != 'analyze' and hasattr(args, 'field'):
            args.field_spec = parse_field(args.field) if args.field else default_field()
        return args.handler(args)
    except TheoremViolation as e:
        logger.error(str(e))
        print(f"violation: {e}", file=sys.stderr)
        return EXIT_VIOLATION
    except (FlagregError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == '__main__':
    sys.exit(main())
