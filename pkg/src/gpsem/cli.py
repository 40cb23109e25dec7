"""Command-line driver.

Exit codes: 0 result (or completed exploration), 1 failure of the sampled
path, 2 parse/static/input error, 3 step limit, stuck configuration or
budget-limited exploration.
"""
from __future__ import annotations

import argparse
import sys
from typing import List, Optional

from .errors import GPError
from .frontend import load_program
from .hostgraph import parse_host, serialize_host
from .report import semantics_report
from .semantics import Budget, Interpreter, Outcome, rule_applications, trace_lines

EXIT_OK, EXIT_FAIL, EXIT_ERROR, EXIT_LIMIT = 0, 1, 2, 3


def _read(path: str) -> str:
    with open(path, encoding='utf-8') as f:
        return f.read()


def _budget(args) -> Budget:
    defaults = Budget()
    return Budget(
        max_steps_per_path=args.max_steps or defaults.max_steps_per_path,
        max_configurations=getattr(args, 'max_configs', None) or defaults.max_configurations,
        max_results=getattr(args, 'max_results', None) or defaults.max_results,
    )


def _load(args):
    program = load_program(_read(args.program))
    host = parse_host(_read(args.host)) if getattr(args, 'host', None) else None
    return program, host


def _sampled(args, out, with_trace: bool) -> int:
    program, host = _load(args)
    budget = _budget(args)
    run = Interpreter(program, budget).run_sampled(None, host, args.seed)
    if with_trace:
        for line in trace_lines(run.trace):
            print(line, file=out)
        print(f'# rule applications: {rule_applications(run.trace)}', file=out)
    if run.outcome is Outcome.RESULT:
        if with_trace:
            print('# verdict: result', file=out)
        out.write(serialize_host(run.graph))
        return EXIT_OK
    if run.outcome is Outcome.FAIL:
        print('# verdict: fail', file=out)
        return EXIT_FAIL
    if run.outcome is Outcome.STEP_LIMIT:
        print(f'# verdict: step limit ({budget.max_steps_per_path} steps)', file=out)
    else:
        print(f'# verdict: stuck', file=out)
        print(f'gp: {run.report}', file=sys.stderr)
    return EXIT_LIMIT


def cmd_run(args, out=sys.stdout) -> int:
    return _sampled(args, out, with_trace=False)


def cmd_trace(args, out=sys.stdout) -> int:
    return _sampled(args, out, with_trace=True)


def cmd_all(args, out=sys.stdout) -> int:
    program, host = _load(args)
    budget = _budget(args)
    rs = Interpreter(program, budget).run_all(None, host)
    report = semantics_report(rs, budget)
    out.write(report.json() + '\n' if args.json else report.text)
    return EXIT_OK if rs.complete else EXIT_LIMIT


def cmd_check(args, out=sys.stdout) -> int:
    load_program(_read(args.program))
    print(f'{args.program}: ok', file=out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='gp', description='Run GP graph programs.')
    sub = parser.add_subparsers(dest='command', required=True)

    def budget_flags(p, sampled):
        p.add_argument('--max-steps', type=int, help='maximum steps along one computation path')
        if not sampled:
            p.add_argument('--max-configs', type=int, help='maximum configurations explored')
            p.add_argument('--max-results', type=int, help='maximum distinct result graphs')

    for name, help_ in (('run', 'execute one nondeterministic run'),
                        ('trace', 'execute one run and print its derivation trace')):
        p = sub.add_parser(name, help=help_)
        p.add_argument('program')
        p.add_argument('host')
        p.add_argument('--seed', type=int, default=0)
        budget_flags(p, sampled=False)

    p = sub.add_parser('all', help='compute all results up to isomorphism')
    p.add_argument('program')
    p.add_argument('host')
    p.add_argument('--json', action='store_true', help='machine-readable output')
    budget_flags(p, sampled=False)

    p = sub.add_parser('check', help='parse and statically check a program')
    p.add_argument('program')
    return parser


COMMANDS = {'run': cmd_run, 'trace': cmd_trace, 'all': cmd_all, 'check': cmd_check}


def main(argv: Optional[List[str]] = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    for flag in ('max_steps', 'max_configs', 'max_results'):
        value = getattr(args, flag, None)
        if value is not None and value < 1:
            print(f'gp: --{flag.replace("_", "-")} must be positive', file=sys.stderr)
            return EXIT_ERROR
    try:
        return COMMANDS[args.command](args, out)
    except OSError as exc:
        print(f'gp: {exc.filename}: {exc.strerror}', file=sys.stderr)
        return EXIT_ERROR
    except GPError as exc:
        where = args.program
        print(f'gp: {where}: {exc}', file=sys.stderr)
        return EXIT_ERROR


if __name__ == '__main__':
    sys.exit(main())
