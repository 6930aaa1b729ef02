"""
Command-line front end.

    python run.py gb data/xy.ideal
    python run.py tor data/truncated_x4.mod --i 1 --n 1
    python run.py verify lemma-3.2 --p 3 --n 2

Exit status: 0 success or PASS, 1 mathematical FAIL, 2 INDETERMINATE
(a budget cap was hit), 3 input error.
"""

import argparse
import json
import logging
import sys
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

import sympy as sp

from .budget import Budget, BudgetExceededError
from .config import LOG_FILE, LOG_LEVEL, OUTPUT_FORMAT, default_budget
from .frobenius import FrobeniusPower, frobenius_module, tor_frobenius
from .groebner import (
    GroebnerIdeal,
    InhomogeneousIdealError,
    UnitIdealError,
    ZeroElementError,
    bracket_power,
    colon,
)
from .input_formats import InputFormatError, load_ideal, load_module, parse_sequence
from .koszul import IrregularSequenceError, prop43_check, tor_lengths
from .logger import log_report, setup_logging
from .modules import INFINITE, InfiniteLengthError, Length, ZeroModuleError, dimension, length
from .paperlab import (
    SCENARIO_IDS,
    Outcome,
    ScenarioFormatError,
    UnknownScenarioError,
    load_scenario,
    run_scenarios,
)
from .polynomial import FieldError, FrobeniusExponentError, PolynomialSyntaxError
from .resolutions import depth, minimal_resolution

logger = logging.getLogger(__name__)

SCHEMA = 'frobrig/1'

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INDETERMINATE = 2
EXIT_INPUT = 3

VERIFY_STATUS = {EXIT_OK: 'PASS', EXIT_FAIL: 'FAIL', EXIT_INDETERMINATE: 'INDETERMINATE'}

COMMANDS = ('gb', 'nf', 'colon', 'bracket', 'dim', 'length', 'depth', 'resolve', 'betti',
            'frobenius', 'tor', 'chi', 'check-prop43', 'verify')

INPUT_ERRORS = (InputFormatError, FieldError, PolynomialSyntaxError, InhomogeneousIdealError,
                UnknownScenarioError, ScenarioFormatError, FrobeniusExponentError,
                ZeroModuleError, InfiniteLengthError, IrregularSequenceError,
                UnitIdealError, ZeroElementError)


@dataclass(frozen=True)
class SessionConfig:
    """Everything one invocation needs."""
    command: str
    target: Optional[str] = None
    poly: Optional[str] = None
    sequence: Optional[str] = None
    p: Optional[int] = None
    n: Optional[int] = None
    i: Optional[int] = None
    steps: Optional[int] = None
    method: str = 'auto'
    output_format: str = OUTPUT_FORMAT
    budget: Budget = Budget()
    budget_overrides: Tuple[Tuple[str, float], ...] = ()

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ValueError(f"Unknown command '{self.command}'")
        if self.p is not None and not sp.isprime(self.p):
            raise FieldError(f"--p must be prime, got {self.p}")
        if self.n is not None and self.n < 1:
            raise ValueError(f"--n must be at least 1, got {self.n}")
        if self.i is not None and self.i < 0:
            raise ValueError(f"--i must be nonnegative, got {self.i}")
        if self.steps is not None and self.steps < 0:
            raise ValueError(f"--steps must be nonnegative, got {self.steps}")
        if self.output_format not in ('json', 'text'):
            raise ValueError(f"Unknown output format '{self.output_format}'")

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> 'SessionConfig':
        overrides = tuple((name, value) for name, value in (
            ('max_degree', args.max_degree),
            ('max_steps', args.max_steps),
            ('max_rank', args.max_rank),
            ('time_limit', args.time_limit),
        ) if value is not None)
        budget = replace(default_budget(), **dict(overrides))
        return cls(
            command=args.command,
            target=args.target,
            poly=args.poly,
            sequence=args.sequence,
            p=args.p,
            n=args.n,
            i=args.i,
            steps=args.steps,
            method=args.method,
            output_format=args.format,
            budget=budget,
            budget_overrides=overrides,
        )

    def require(self, name: str):
        value = getattr(self, name)
        if value is None:
            raise InputFormatError(f"Command '{self.command}' needs --{name}")
        return value


class _Parser(argparse.ArgumentParser):
    """Usage errors are input errors."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog='frobrig',
        description='Frobenius, Tor and Gröbner computations over graded quotients of F_p[x].')
    parser.add_argument('command', choices=COMMANDS)
    parser.add_argument('target', nargs='?',
                        help="input file, or a scenario id / 'all' for verify")
    parser.add_argument('--poly', help='polynomial for nf and colon')
    parser.add_argument('--sequence', help='comma-separated elements for chi and check-prop43')
    parser.add_argument('--p', type=int, help='characteristic override for verify')
    parser.add_argument('--n', type=int, help='Frobenius iterate, q = p^n')
    parser.add_argument('--i', type=int, help='homological index')
    parser.add_argument('--steps', type=int, help='resolution length')
    parser.add_argument('--method', choices=('auto', 'koszul'), default='auto', help='depth method')
    parser.add_argument('--format', choices=('json', 'text'), default=OUTPUT_FORMAT)
    parser.add_argument('--max-degree', type=int, dest='max_degree')
    parser.add_argument('--max-steps', type=int, dest='max_steps')
    parser.add_argument('--max-rank', type=int, dest='max_rank')
    parser.add_argument('--time-limit', type=float, dest='time_limit')
    parser.add_argument('--log-file', default=LOG_FILE)
    parser.add_argument('--verbose', action='store_true')
    return parser


def _length_json(value: Length):
    return str(value) if value is INFINITE else value


def _strings(polys) -> List[str]:
    return [str(f) for f in polys]


def _input(cfg: SessionConfig) -> Path:
    return Path(cfg.require('target'))


def _ideal(cfg: SessionConfig):
    ring, gens = load_ideal(_input(cfg))
    ideal = GroebnerIdeal(ring.ring, list(ring.defining.generators) + gens, budget=cfg.budget)
    return ring, gens, ideal


def _module(cfg: SessionConfig):
    module = load_module(_input(cfg))
    module.budget = cfg.budget
    return module


def _power(cfg: SessionConfig, module) -> FrobeniusPower:
    return FrobeniusPower.from_ring(module.ring, cfg.require('n'))


def _cmd_gb(cfg: SessionConfig) -> Tuple[int, Any]:
    _, _, ideal = _ideal(cfg)
    return EXIT_OK, _strings(ideal.basis)


def _cmd_nf(cfg: SessionConfig) -> Tuple[int, Any]:
    ring, _, ideal = _ideal(cfg)
    f = ring.ring.parse(cfg.require('poly'))
    return EXIT_OK, {'normal_form': str(ideal.normal_form(f))}


def _cmd_colon(cfg: SessionConfig) -> Tuple[int, Any]:
    ring, _, ideal = _ideal(cfg)
    f = ring.ring.parse(cfg.require('poly'))
    return EXIT_OK, _strings(colon(ideal, f).basis)


def _cmd_bracket(cfg: SessionConfig) -> Tuple[int, Any]:
    ring, gens, _ = _ideal(cfg)
    q = ring.p ** cfg.require('n')
    powered = bracket_power(GroebnerIdeal(ring.ring, gens, budget=cfg.budget), q)
    combined = GroebnerIdeal(ring.ring, list(ring.defining.generators) + list(powered.generators),
                             budget=cfg.budget)
    return EXIT_OK, {'q': q, 'basis': _strings(combined.basis)}


def _cmd_dim(cfg: SessionConfig) -> Tuple[int, Any]:
    module = _module(cfg)
    return EXIT_OK, {'dimension': -1 if module.is_zero else dimension(module)}


def _cmd_length(cfg: SessionConfig) -> Tuple[int, Any]:
    return EXIT_OK, {'length': _length_json(length(_module(cfg)))}


def _cmd_depth(cfg: SessionConfig) -> Tuple[int, Any]:
    module = _module(cfg)
    return EXIT_OK, {'depth': depth(module, cfg.method, cfg.budget), 'method': cfg.method}


def _cmd_resolve(cfg: SessionConfig) -> Tuple[int, Any]:
    module = _module(cfg)
    complex_, betti = minimal_resolution(module, cfg.require('steps'), cfg.budget)
    differentials = []
    for k in range(1, complex_.length + 1):
        differentials.append([_strings(row) for row in complex_.differential(k).rows()])
    return EXIT_OK, {
        'betti': betti.to_json(),
        'complete': betti.complete,
        'differentials': differentials,
        'twists': [list(complex_.twists(k)) for k in range(complex_.length + 1)],
    }


def _cmd_betti(cfg: SessionConfig) -> Tuple[int, Any]:
    module = _module(cfg)
    _, betti = minimal_resolution(module, cfg.require('steps'), cfg.budget)
    return EXIT_OK, {'betti': betti.to_json(), 'complete': betti.complete,
                     'totals': betti.totals(), 'table': betti.to_text()}


def _cmd_frobenius(cfg: SessionConfig) -> Tuple[int, Any]:
    module = _module(cfg)
    power = _power(cfg, module)
    image = frobenius_module(module, power)
    return EXIT_OK, {
        'n': power.n,
        'q': power.q,
        'twists': list(image.twists),
        'relations': [_strings(col) for col in image.relations],
        'length': _length_json(length(image)),
    }


def _cmd_tor(cfg: SessionConfig) -> Tuple[int, Any]:
    module = _module(cfg)
    power = _power(cfg, module)
    tor = tor_frobenius(module, power, cfg.require('i'), cfg.budget)
    return EXIT_OK, {'i': cfg.i, 'n': power.n, 'q': power.q,
                     'length': _length_json(length(tor)), 'zero': tor.is_zero}


def _cmd_chi(cfg: SessionConfig) -> Tuple[int, Any]:
    module = _module(cfg)
    sequence = parse_sequence(cfg.require('sequence'), module.ring)
    data = tor_lengths(module, sequence, cfg.budget)
    i = cfg.i or 0
    return EXIT_OK, {'i': i, 'chi': data.chi_i[i] if i < len(data.chi_i) else 0,
                     'chi_i': data.chi_i, 'tor_lengths': data.tor_lengths}


def _cmd_check_prop43(cfg: SessionConfig) -> Tuple[int, Any]:
    module = _module(cfg)
    sequence = parse_sequence(cfg.require('sequence'), module.ring)
    report = prop43_check(module, sequence, _power(cfg, module), cfg.budget)
    status = EXIT_FAIL if report.status == 'FAIL' else EXIT_OK
    return status, report.to_dict()


def _cmd_verify(cfg: SessionConfig) -> Tuple[int, Any]:
    target = cfg.require('target')
    ids = list(SCENARIO_IDS) if target == 'all' else [target]
    scenarios = []
    for scenario_id in ids:
        scenario = load_scenario(scenario_id)
        budget = replace(scenario.budget, **dict(cfg.budget_overrides))
        scenarios.append(scenario.with_overrides({'p': cfg.p, 'n': cfg.n}, budget))
    reports = run_scenarios(scenarios)
    statuses = {r.status for r in reports}
    if Outcome.FAIL in statuses:
        code = EXIT_FAIL
    elif Outcome.INDETERMINATE in statuses:
        code = EXIT_INDETERMINATE
    else:
        code = EXIT_OK
    return code, [r.to_dict() for r in reports] if target == 'all' else reports[0].to_dict()


HANDLERS = {
    'gb': _cmd_gb,
    'nf': _cmd_nf,
    'colon': _cmd_colon,
    'bracket': _cmd_bracket,
    'dim': _cmd_dim,
    'length': _cmd_length,
    'depth': _cmd_depth,
    'resolve': _cmd_resolve,
    'betti': _cmd_betti,
    'frobenius': _cmd_frobenius,
    'tor': _cmd_tor,
    'chi': _cmd_chi,
    'check-prop43': _cmd_check_prop43,
    'verify': _cmd_verify,
}


def dispatch(cfg: SessionConfig) -> Tuple[int, Dict[str, Any]]:
    """Run one command; returns the exit status and the report envelope.

    Budget exhaustion becomes INDETERMINATE with its reason code; input
    problems become exit status 3 with the error type and location.
    """
    envelope: Dict[str, Any] = {'schema': SCHEMA, 'command': cfg.command}
    try:
        code, result = HANDLERS[cfg.command](cfg)
        envelope['result'] = result
        if cfg.command == 'verify':
            envelope['status'] = VERIFY_STATUS[code]
        elif cfg.command == 'check-prop43':
            envelope['status'] = result['status']
    except BudgetExceededError as e:
        logger.warning(f"{cfg.command}: budget exhausted ({e})")
        code = EXIT_INDETERMINATE
        envelope['status'] = 'INDETERMINATE'
        envelope['reason'] = e.reason_code
        envelope['detail'] = e.detail
    except INPUT_ERRORS as e:
        logger.error(f"{cfg.command}: {type(e).__name__}: {e}")
        code = EXIT_INPUT
        envelope['error'] = {
            'type': type(e).__name__,
            'message': str(e),
            'line': getattr(e, 'line', None),
            'column': getattr(e, 'column', None),
        }
    return code, envelope


def render(envelope: Dict[str, Any], output_format: str) -> str:
    if output_format == 'json':
        return json.dumps(envelope, indent=2, sort_keys=True, ensure_ascii=False) + '\n'
    lines = [f"command: {envelope['command']}"]
    for key in ('status', 'reason', 'error'):
        if key in envelope:
            lines.append(f"{key}: {envelope[key]}")
    result = envelope.get('result')
    if isinstance(result, dict) and 'table' in result:
        lines.append(result['table'])
    elif isinstance(result, dict):
        lines += [f"{key}: {value}" for key, value in sorted(result.items())]
    elif isinstance(result, list):
        lines += [json.dumps(item, sort_keys=True) if isinstance(item, dict) else str(item)
                  for item in result]
    return '\n'.join(lines) + '\n'


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    level = logging.DEBUG if args.verbose else getattr(logging, LOG_LEVEL.upper(), logging.INFO)
    setup_logging(args.log_file, level)
    try:
        cfg = SessionConfig.from_args(args)
    except (ValueError, FieldError) as e:
        envelope = {'schema': SCHEMA, 'command': args.command,
                    'error': {'type': type(e).__name__, 'message': str(e), 'line': None, 'column': None}}
        sys.stdout.write(render(envelope, args.format))
        return EXIT_INPUT
    code, envelope = dispatch(cfg)
    log_report(envelope)
    sys.stdout.write(render(envelope, cfg.output_format))
    return code


if __name__ == '__main__':
    sys.exit(main())
