"""
Koszul complexes, Tor against R/x and higher Euler characteristics.
"""

import itertools
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Dict, List, Optional, Tuple

from .budget import Budget, BudgetExceededError
from .config import MAX_WORKERS
from .frobenius import FrobeniusPower, frobenius_module
from .groebner import InhomogeneousIdealError, QuotientRing, ZeroElementError, is_nonzerodivisor
from .modules import (
    INFINITE,
    GradedFreeModule,
    GradedMatrix,
    InfiniteLengthError,
    PresentedModule,
    dimension,
    length,
)
from .polynomial import Polynomial
from .resolutions import FreeComplex, depth, homology

logger = logging.getLogger(__name__)


class IrregularSequenceError(ArithmeticError):
    """The sequence is not regular on the ring."""


@dataclass(frozen=True)
class ElementSequence:
    """Homogeneous elements of positive degree, optionally certified regular."""
    elements: Tuple[Polynomial, ...]
    regularity: Optional[Tuple[bool, ...]] = None

    def __post_init__(self):
        object.__setattr__(self, 'elements', tuple(self.elements))
        for f in self.elements:
            if f.is_zero or not f.is_homogeneous() or f.degree < 1:
                raise InhomogeneousIdealError(
                    f"Sequence elements must be homogeneous of positive degree, got {f}")

    def __len__(self) -> int:
        return len(self.elements)

    def certify(self, ring: QuotientRing) -> 'ElementSequence':
        """Record for each k whether x_k is a nonzerodivisor on R/(x_1..x_{k-1})."""
        verdicts: List[bool] = []
        current = ring
        for f in self.elements:
            if verdicts and not verdicts[-1]:
                verdicts.append(False)
                continue
            try:
                verdicts.append(is_nonzerodivisor(f, current))
            except ZeroElementError:
                verdicts.append(False)
            current = current.quotient_by([f])
        return ElementSequence(self.elements, tuple(verdicts))

    @property
    def is_regular(self) -> bool:
        return self.regularity is not None and all(self.regularity)


def koszul_complex(sequence: ElementSequence, ring: QuotientRing) -> FreeComplex:
    """Exterior-algebra complex on the sequence; K_k has one basis element per k-subset."""
    if not len(sequence):
        raise ValueError("Koszul complex of an empty sequence")
    ambient = ring.ring
    c = len(sequence)
    degrees = [f.degree for f in sequence.elements]
    subsets = [list(itertools.combinations(range(c), k)) for k in range(c + 1)]
    modules = [GradedFreeModule(tuple(sum(degrees[s] for s in subset) for subset in level))
               for level in subsets]
    zero = ambient.zero()
    differentials = []
    for k in range(1, c + 1):
        index = {subset: pos for pos, subset in enumerate(subsets[k - 1])}
        columns = []
        for subset in subsets[k]:
            col = [zero] * len(subsets[k - 1])
            for t, s in enumerate(subset):
                face = subset[:t] + subset[t + 1:]
                entry = sequence.elements[s]
                col[index[face]] = entry if t % 2 == 0 else -entry
            columns.append(col)
        differentials.append(GradedMatrix(ambient, modules[k - 1].twists, modules[k].twists, columns))
    return FreeComplex(ring, modules, differentials)


def koszul_homology(sequence: ElementSequence, module: PresentedModule, i: int,
                    budget: Optional[Budget] = None) -> PresentedModule:
    """H_i(x; M)."""
    return homology(koszul_complex(sequence, module.ring), i, coefficients=module, budget=budget)


@dataclass
class EulerData:
    """ℓ(Tor_j(M, R/x)) for j = 0..c with the Euler characteristics they determine."""
    tor_lengths: List[int]
    chi: int = 0
    chi_i: List[int] = field(default_factory=list)

    def __post_init__(self):
        c = len(self.tor_lengths) - 1
        self.chi_i = [sum((-1) ** (j - i) * self.tor_lengths[j] for j in range(i, c + 1))
                      for i in range(c + 1)]
        self.chi = self.chi_i[0] if self.chi_i else 0

    def to_dict(self) -> Dict:
        return asdict(self)


def _certified(sequence: ElementSequence, ring: QuotientRing) -> ElementSequence:
    if sequence.regularity is None:
        sequence = sequence.certify(ring)
    if not sequence.is_regular:
        raise IrregularSequenceError(
            f"Sequence is not regular on the ring: verdicts {sequence.regularity}")
    return sequence


def tor_lengths(module: PresentedModule, sequence: ElementSequence,
                budget: Optional[Budget] = None, max_workers: int = MAX_WORKERS) -> EulerData:
    """Lengths of Tor_j(M, R/x) as Koszul homology of M.

    Raises:
        IrregularSequenceError: If x is not regular on R.
        InfiniteLengthError: If M/xM has infinite length.
    """
    _certified(sequence, module.ring)
    covolume = length(module.quotient_by(sequence.elements))
    if covolume is INFINITE:
        raise InfiniteLengthError("M/xM does not have finite length")
    complex_ = koszul_complex(sequence, module.ring)

    def measure(j: int) -> int:
        return length(homology(complex_, j, coefficients=module, budget=budget))

    with ThreadPoolExecutor(max_workers=max_workers) as executor:
        higher = list(executor.map(measure, range(1, len(sequence) + 1)))
    return EulerData([covolume] + higher)


def chi(module: PresentedModule, sequence: ElementSequence, i: int = 0,
        budget: Optional[Budget] = None) -> int:
    """χ_i(M, R/x)."""
    if i < 0:
        raise ValueError(f"Index must be nonnegative, got {i}")
    data = tor_lengths(module, sequence, budget)
    return data.chi_i[i] if i < len(data.chi_i) else 0


def _module_dimension(module: PresentedModule) -> int:
    return -1 if module.is_zero else dimension(module)


def serre_check(module: PresentedModule, sequence: ElementSequence,
                data: Optional[EulerData] = None) -> Dict:
    """χ(M, R/x) >= 0, with equality exactly when dim M < c."""
    data = data or tor_lengths(module, sequence)
    c = len(sequence)
    dim = _module_dimension(module)
    nonnegative = data.chi >= 0
    equality_matches = (data.chi == 0) == (dim < c)
    return {
        'chi': data.chi,
        'c': c,
        'dimension': dim,
        'nonnegative': nonnegative,
        'equality_matches_dimension': equality_matches,
        'status': 'PASS' if nonnegative and equality_matches else 'FAIL',
    }


@dataclass
class LichtenbaumReport:
    data: EulerData
    serre: Dict
    violations: List[str] = field(default_factory=list)
    status: str = 'PASS'

    def to_dict(self) -> Dict:
        return {'data': self.data.to_dict(), 'serre': self.serre,
                'violations': self.violations, 'status': self.status}


def lichtenbaum_check(module: PresentedModule, sequence: ElementSequence,
                      budget: Optional[Budget] = None) -> LichtenbaumReport:
    """χ_i >= 0 for i >= 1, with χ_i = 0 exactly when Tor_i = 0; plus the χ_0 statement."""
    data = tor_lengths(module, sequence, budget)
    report = LichtenbaumReport(data, serre_check(module, sequence, data))
    for i in range(1, len(data.tor_lengths)):
        if data.chi_i[i] < 0:
            report.violations.append(f"chi_{i} = {data.chi_i[i]} < 0")
        if (data.chi_i[i] == 0) != (data.tor_lengths[i] == 0):
            report.violations.append(
                f"chi_{i} = {data.chi_i[i]} but length Tor_{i} = {data.tor_lengths[i]}")
    if report.serre['status'] != 'PASS':
        report.violations.append(f"chi = {data.chi} against dim M = {report.serre['dimension']}")
    if report.violations:
        report.status = 'FAIL'
        logger.error(f"Euler characteristic violations: {report.violations}")
    return report


@dataclass
class Prop43Report:
    """Both sides of ℓ(F^n_{R/x}(M/xM)) >= q^c χ(M, R/x)."""
    status: str
    n: int
    q: int
    c: Optional[int] = None
    left: Optional[int] = None
    right: Optional[int] = None
    equality: Optional[bool] = None
    cohen_macaulay: Optional[bool] = None
    assumptions: Dict[str, str] = field(default_factory=dict)
    reason: Optional[str] = None

    def to_dict(self) -> Dict:
        return asdict(self)


def prop43_check(module: PresentedModule, sequence: ElementSequence, power: FrobeniusPower,
                 budget: Optional[Budget] = None) -> Prop43Report:
    """Check the Frobenius length inequality for a regular system of parameters of F^n(M).

    Hypothesis failures come back as UNMET_HYPOTHESIS. At equality the
    Cohen-Macaulay condition on F^n(M) is checked (depth = dim); finite pd
    at the minimal primes of M is recorded as an assumption.
    """
    ring = module.ring
    report = Prop43Report('UNMET_HYPOTHESIS', power.n, power.q)
    report.assumptions = {
        'complete_intersection_at_minimal_primes': 'assumed',
        'finite_pd_at_minimal_primes': 'assumed',
    }
    if module.is_zero or ring.dimension == 0:
        report.reason = 'ZERO_MODULE' if module.is_zero else 'ZERO_DIMENSIONAL_RING'
        return report
    certified = sequence.certify(ring)
    if not certified.is_regular:
        report.reason = 'IRREGULAR_SEQUENCE'
        return report
    dim_m = dimension(module)
    if dim_m == 0:
        report.reason = 'FINITE_LENGTH_MODULE'
        return report
    image = frobenius_module(module, power)
    if len(sequence) != dimension(image) or length(image.quotient_by(sequence.elements)) is INFINITE:
        report.reason = 'NOT_A_SYSTEM_OF_PARAMETERS'
        return report
    report.c = ring.dimension - dim_m
    reduced_ring = ring.quotient_by(sequence.elements)
    reduced_power = FrobeniusPower(reduced_ring, power.n, power.q)
    reduced = module.quotient_by(sequence.elements).over(reduced_ring)
    report.left = length(frobenius_module(reduced, reduced_power))
    report.right = power.q ** report.c * tor_lengths(module, certified, budget).chi
    report.equality = report.left == report.right
    report.status = 'PASS' if report.left >= report.right else 'FAIL'
    if report.equality:
        try:
            report.cohen_macaulay = depth(image, budget=budget) == dimension(image)
        except BudgetExceededError as e:
            report.reason = e.reason_code
    if report.status == 'FAIL':
        logger.error(f"Frobenius length inequality fails: {report.left} < {report.right}")
    return report
