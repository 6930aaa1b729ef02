"""
The Frobenius functor on presented modules, Tor against f^n R, and the
rigidity predicates built on them.

On a presentation the functor raises every matrix entry to the q-th power
(q = p^n) and scales the twists by q. Tor_i(M, f^n R) is the homology of
the minimal resolution of M after the same substitution.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple

from .budget import Budget, BudgetExceededError
from .config import MAX_Q, MAX_WORKERS
from .groebner import QuotientRing
from .modules import (
    INFINITE,
    InfiniteLengthError,
    Length,
    PresentedModule,
    length,
)
from .polynomial import AmbientMismatchError, FrobeniusExponentError
from .resolutions import depth, homology, is_finite_pd, minimal_resolution

logger = logging.getLogger(__name__)


class Verdict(str, Enum):
    NOT_STRONGLY_RIGID = 'NOT_STRONGLY_RIGID'
    INCONCLUSIVE = 'INCONCLUSIVE'
    INDETERMINATE = 'INDETERMINATE'
    EQUAL = 'EQUAL'
    UNEQUAL = 'UNEQUAL'


class CheckStatus(str, Enum):
    PASS = 'PASS'
    FAIL = 'FAIL'
    INDETERMINATE = 'INDETERMINATE'


@dataclass(frozen=True)
class FrobeniusPower:
    """The n-th iterate of Frobenius on a quotient ring; q = p^n."""
    ring: QuotientRing
    n: int
    q: int

    def __post_init__(self):
        if self.n < 1:
            raise FrobeniusExponentError(f"Frobenius iterate must be positive, got {self.n}")
        if self.q != self.ring.p ** self.n:
            raise FrobeniusExponentError(f"q = {self.q} is not {self.ring.p}^{self.n}")

    @classmethod
    def from_ring(cls, ring: QuotientRing, n: int, max_q: int = MAX_Q) -> 'FrobeniusPower':
        """
        Raises:
            FrobeniusExponentError: If n < 1 or p^n exceeds max_q.
        """
        if n < 1:
            raise FrobeniusExponentError(f"Frobenius iterate must be positive, got {n}")
        q = ring.p ** n
        if q > max_q:
            raise FrobeniusExponentError(f"q = {ring.p}^{n} = {q} exceeds the cap {max_q}")
        return cls(ring, n, q)


def _length_value(value: Length):
    return str(value) if value is INFINITE else value


def frobenius_module(module: PresentedModule, power: FrobeniusPower) -> PresentedModule:
    """F^n(M): presentation entries to the q-th power, twists times q."""
    if module.ring != power.ring:
        raise AmbientMismatchError("Module and Frobenius power live over different rings")
    q = power.q
    relations = [[e.frobenius(q) for e in col] for col in module.relations]
    name = f"F^{power.n}({module.name})" if module.name else ''
    return PresentedModule(module.ring, [q * t for t in module.twists], relations,
                           name=name, budget=module.budget)


def tor_frobenius(module: PresentedModule, power: FrobeniusPower, i: int,
                  budget: Optional[Budget] = None) -> PresentedModule:
    """Tor_i(M, f^n R) as a presented module; Tor_0 is F^n(M).

    Raises:
        BudgetExceededError: If the resolution exceeds its caps.
    """
    if i < 0:
        raise ValueError(f"Tor index must be nonnegative, got {i}")
    if i == 0:
        return frobenius_module(module, power)
    budget = budget or module.budget
    complex_, _ = minimal_resolution(module, i + 1, budget)
    if i > complex_.length:
        return PresentedModule.zero(module.ring)
    return homology(complex_.frobenius(power.q), i, budget=budget)


def tor_length(module: PresentedModule, power: FrobeniusPower, i: int,
               budget: Optional[Budget] = None) -> Length:
    return length(tor_frobenius(module, power, i, budget))


@dataclass
class PshReport:
    """Tor vanishing against f^n R cross-checked with the pd verdict."""
    signature: str
    n: int
    q: int
    i_max: int
    tor_vanishes: Dict[int, Optional[bool]]
    pd_finite: Optional[bool]
    status: CheckStatus
    reason: Optional[str] = None
    betti: Dict[str, int] = field(default_factory=dict)

    def to_dict(self) -> Dict:
        data = asdict(self)
        data['status'] = self.status.value
        data['tor_vanishes'] = {str(i): v for i, v in sorted(self.tor_vanishes.items())}
        return data


def psh_vanishing_check(module: PresentedModule, power: FrobeniusPower, i_max: int,
                        budget: Optional[Budget] = None) -> PshReport:
    """Tor_i(M, f^n R) = 0 for 1 <= i <= i_max must agree with pd M < ∞.

    Finite pd with a nonvanishing Tor fails as FORWARD_VIOLATION; infinite
    pd with every Tor in range vanishing fails as CONVERSE_VIOLATION.
    Budget exhaustion anywhere makes the report INDETERMINATE.
    """
    budget = budget or module.budget
    report = PshReport(module.signature(), power.n, power.q, i_max, {}, None, CheckStatus.PASS)
    if module.is_zero:
        report.pd_finite = True
        report.reason = 'ZERO_MODULE'
        return report
    reasons: List[str] = []
    try:
        verdict = is_finite_pd(module, budget)
        report.pd_finite = verdict.finite
        report.betti = verdict.betti.to_json()
    except BudgetExceededError as e:
        reasons.append(e.reason_code)
    for i in range(1, i_max + 1):
        try:
            report.tor_vanishes[i] = tor_frobenius(module, power, i, budget).is_zero
        except BudgetExceededError as e:
            report.tor_vanishes[i] = None
            reasons.append(e.reason_code)
    values = list(report.tor_vanishes.values())
    if report.pd_finite is True and any(v is False for v in values):
        report.status, report.reason = CheckStatus.FAIL, 'FORWARD_VIOLATION'
        logger.error(f"Finite pd but nonvanishing Tor for {report.signature}")
    elif report.pd_finite is False and values and all(v is True for v in values):
        report.status, report.reason = CheckStatus.FAIL, 'CONVERSE_VIOLATION'
        logger.error(f"Infinite pd but Tor vanishes through {i_max} for {report.signature}")
    elif reasons:
        report.status, report.reason = CheckStatus.INDETERMINATE, reasons[0]
        logger.warning(f"Vanishing check indeterminate: {reasons[0]}")
    return report


@dataclass
class WitnessReport:
    verdict: Verdict
    n: int
    pd_finite: Optional[bool] = None
    frobenius_depth: Optional[int] = None
    betti: Dict[str, int] = field(default_factory=dict)
    assumptions: Dict[str, bool] = field(default_factory=dict)
    reason: Optional[str] = None

    def to_dict(self) -> Dict:
        data = asdict(self)
        data['verdict'] = self.verdict.value
        return data


def strong_rigidity_witness(module: PresentedModule, power: FrobeniusPower,
                            assumptions: Optional[Dict[str, bool]] = None,
                            budget: Optional[Budget] = None) -> WitnessReport:
    """Witness that f^n R is not strongly rigid.

    If f^n R were strongly rigid, every module of infinite projective
    dimension would have depth F^n(L) = 0. A module L with pd L = ∞ and
    depth F^n(L) > 0 is therefore a witness. Ring hypotheses such as
    Gorenstein or isolated singularity are taken from `assumptions`
    verbatim. Over a zero-dimensional ring the verdict is always INCONCLUSIVE.
    """
    budget = budget or module.budget
    report = WitnessReport(Verdict.INCONCLUSIVE, power.n, assumptions=dict(assumptions or {}))
    try:
        verdict = is_finite_pd(module, budget)
        report.pd_finite = verdict.finite
        report.betti = verdict.betti.to_json()
        if verdict.finite:
            return report
        image = frobenius_module(module, power)
        report.frobenius_depth = depth(image, budget=budget)
    except BudgetExceededError as e:
        report.verdict, report.reason = Verdict.INDETERMINATE, e.reason_code
        logger.warning(f"Strong rigidity witness indeterminate: {e}")
        return report
    if report.frobenius_depth > 0:
        report.verdict = Verdict.NOT_STRONGLY_RIGID
        logger.info(f"Witness found: pd = ∞ and depth F^{power.n}(L) = {report.frobenius_depth}")
    elif module.ring.dimension == 0:
        # every module over an artinian ring has depth zero
        report.reason = 'ZERO_DIMENSIONAL_RING'
    return report


@dataclass
class NumericalReport:
    n: int
    frobenius_length: int
    expected_length: int
    verdict: Verdict
    pd_finite: Optional[bool] = None
    status: CheckStatus = CheckStatus.PASS
    reason: Optional[str] = None

    def to_dict(self) -> Dict:
        data = asdict(self)
        data['verdict'] = self.verdict.value
        data['status'] = self.status.value
        return data


def numerical_rigidity_check(module: PresentedModule, power: FrobeniusPower,
                             complete_intersection: bool = False,
                             budget: Optional[Budget] = None) -> NumericalReport:
    """Compare ℓ(F^n(M)) with p^{nd} ℓ(M), d = dim R.

    Over a complete intersection equality forces pd M < ∞; when the caller
    declares the ring one, an equality without finite pd fails.

    Raises:
        InfiniteLengthError: If M does not have finite length.
    """
    budget = budget or module.budget
    base = length(module)
    if base is INFINITE:
        raise InfiniteLengthError("Numerical rigidity needs a module of finite length")
    image = length(frobenius_module(module, power))
    expected = power.q ** module.ring.dimension * base
    verdict = Verdict.EQUAL if image == expected else Verdict.UNEQUAL
    report = NumericalReport(power.n, image, expected, verdict)
    if verdict is Verdict.EQUAL and complete_intersection:
        try:
            report.pd_finite = is_finite_pd(module, budget).finite
        except BudgetExceededError as e:
            report.status, report.reason = CheckStatus.INDETERMINATE, e.reason_code
            return report
        if not report.pd_finite:
            report.status, report.reason = CheckStatus.FAIL, 'EQUALITY_WITHOUT_FINITE_PD'
            logger.error("Length equality over a complete intersection without finite pd")
    return report


@dataclass
class RigidityReport:
    """Tor lengths, Frobenius depths and verdicts for one module."""
    module: str
    signatures: Dict[str, str]
    tor_lengths: Dict[str, object]
    frobenius_depths: Dict[str, Optional[int]]
    pd_finite: Optional[bool]
    verdicts: Dict[str, str]
    assumptions: Dict[str, bool]

    def to_dict(self) -> Dict:
        return asdict(self)


def rigidity_report(module: PresentedModule, ns: Sequence[int], i_max: int,
                    assumptions: Optional[Dict[str, bool]] = None,
                    budget: Optional[Budget] = None,
                    max_workers: int = MAX_WORKERS) -> RigidityReport:
    """Evaluate the (i, n) grid of Tor lengths in parallel and assemble the verdicts."""
    budget = budget or module.budget
    powers = {n: FrobeniusPower.from_ring(module.ring, n) for n in ns}
    cells: List[Tuple[int, int]] = [(i, n) for n in ns for i in range(1, i_max + 1)]

    def evaluate(cell: Tuple[int, int]):
        i, n = cell
        try:
            return _length_value(tor_length(module, powers[n], i, budget))
        except BudgetExceededError as e:
            return e.reason_code

    with ThreadPoolExecutor(max_workers=max_workers) as executor:
        values = list(executor.map(evaluate, cells))

    signatures = {'module': module.signature()}
    depths: Dict[str, Optional[int]] = {}
    verdicts: Dict[str, str] = {}
    for n, power in powers.items():
        image = frobenius_module(module, power)
        signatures[f"F^{n}"] = image.signature()
        try:
            depths[str(n)] = depth(image, budget=budget) if not image.is_zero else None
        except BudgetExceededError:
            depths[str(n)] = None
        verdicts[f"strong_rigidity_witness,n={n}"] = strong_rigidity_witness(
            module, power, assumptions, budget).verdict.value
        if length(module) is not INFINITE:
            verdicts[f"numerical_rigidity,n={n}"] = numerical_rigidity_check(
                module, power, budget=budget).verdict.value
    try:
        pd_finite = is_finite_pd(module, budget).finite
    except BudgetExceededError:
        pd_finite = None
    return RigidityReport(
        module=module.name or signatures['module'],
        signatures=signatures,
        tor_lengths={f"{i},{n}": v for (i, n), v in zip(cells, values)},
        frobenius_depths=depths,
        pd_finite=pd_finite,
        verdicts=verdicts,
        assumptions=dict(assumptions or {}),
    )
