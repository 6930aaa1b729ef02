"""
Degreewise linear algebra over F_p, independent of the Gröbner engine.

For a homogeneous ideal I the degree-d component I_d is spanned by the
products m*g with g a generator and m a monomial of degree d - deg g.
Writing those products as rows over the monomials of degree d and
row-reducing mod p gives dim I_d, hence the Hilbert function of S/I, and
ideal membership by a rank comparison. Modules are handled the same way on
the free module F_0 with the relation columns plus J*F_0.

Every answer is only claimed up to `degree_bound`.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .config import ORACLE_DEGREE_BOUND
from .groebner import QuotientRing, monomials_of_degree
from .modules import PresentedModule
from .polynomial import Monomial, PolyRing, Polynomial, monomial_mul

logger = logging.getLogger(__name__)

# A basis element of the free module: (generator position, monomial).
Slot = Tuple[int, Monomial]


class OracleDegreeError(ValueError):
    """A degree outside the range the oracle is allowed to answer for."""


def rank_mod_p(matrix: np.ndarray, p: int) -> int:
    """Rank of an integer matrix over F_p by Gaussian elimination.

    Entries stay below p, so every product fits in int64 for p < 2^31.
    """
    m = np.array(matrix, dtype=np.int64) % p
    if m.size == 0:
        return 0
    rows, cols = m.shape
    rank = 0
    for col in range(cols):
        if rank == rows:
            break
        nonzero = np.nonzero(m[rank:, col])[0]
        if nonzero.size == 0:
            continue
        pivot = rank + int(nonzero[0])
        if pivot != rank:
            m[[rank, pivot]] = m[[pivot, rank]]
        inv = pow(int(m[rank, col]), -1, p)
        m[rank] = (m[rank] * inv) % p
        below = np.nonzero(m[rank + 1:, col])[0] + rank + 1
        if below.size:
            m[below] = (m[below] - np.outer(m[below, col], m[rank])) % p
        rank += 1
    return rank


def _check_homogeneous(generators: Sequence[Polynomial]) -> None:
    for g in generators:
        if not g.is_homogeneous():
            raise ValueError(f"Oracle needs homogeneous generators, got {g}")


@dataclass
class DegreewiseOracle:
    """Span computations on the monomial basis of each degree up to a bound."""
    ring: PolyRing
    degree_bound: int = ORACLE_DEGREE_BOUND
    _bases: Dict[int, List[Monomial]] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if self.degree_bound < 0:
            raise ValueError(f"Degree bound must be nonnegative, got {self.degree_bound}")

    def _check_degree(self, degree: int) -> None:
        if degree > self.degree_bound:
            raise OracleDegreeError(f"Degree {degree} exceeds the oracle bound {self.degree_bound}")

    def monomial_basis(self, degree: int) -> List[Monomial]:
        if degree < 0:
            return []
        if degree not in self._bases:
            self._bases[degree] = monomials_of_degree(self.ring.nvars, degree)
        return self._bases[degree]

    # -- ideals -------------------------------------------------------

    def _span_rows(self, generators: Sequence[Polynomial], degree: int,
                   index: Dict[Monomial, int]) -> np.ndarray:
        rows = []
        for g in generators:
            if g.is_zero or g.degree > degree:
                continue
            for m in self.monomial_basis(degree - g.degree):
                row = np.zeros(len(index), dtype=np.int64)
                for e, c in g.terms:
                    row[index[monomial_mul(m, e)]] = c
                rows.append(row)
        if not rows:
            return np.zeros((0, len(index)), dtype=np.int64)
        return np.vstack(rows)

    def ideal_dimension(self, generators: Sequence[Polynomial], degree: int) -> int:
        """dim_k I_d."""
        self._check_degree(degree)
        _check_homogeneous(generators)
        basis = self.monomial_basis(degree)
        index = {m: k for k, m in enumerate(basis)}
        return rank_mod_p(self._span_rows(generators, degree, index), self.ring.p)

    def hilbert_function(self, generators: Sequence[Polynomial], degree: int) -> int:
        """dim_k (S/I)_d."""
        if degree < 0:
            return 0
        return len(self.monomial_basis(degree)) - self.ideal_dimension(generators, degree)

    def hilbert_series(self, generators: Sequence[Polynomial], upto: Optional[int] = None) -> List[int]:
        upto = self.degree_bound if upto is None else upto
        return [self.hilbert_function(generators, d) for d in range(upto + 1)]

    def contains(self, f: Polynomial, generators: Sequence[Polynomial]) -> bool:
        """Ideal membership, one homogeneous component at a time."""
        _check_homogeneous(generators)
        components: Dict[int, Dict[Monomial, int]] = {}
        for e, c in f.terms:
            components.setdefault(sum(e), {})[e] = c
        for degree, terms in sorted(components.items()):
            self._check_degree(degree)
            basis = self.monomial_basis(degree)
            index = {m: k for k, m in enumerate(basis)}
            span = self._span_rows(generators, degree, index)
            target = np.zeros((1, len(basis)), dtype=np.int64)
            for e, c in terms.items():
                target[0, index[e]] = c
            base_rank = rank_mod_p(span, self.ring.p)
            if rank_mod_p(np.vstack([span, target]), self.ring.p) != base_rank:
                return False
        return True

    # -- quotient rings and modules -----------------------------------

    def ring_hilbert_function(self, ring: QuotientRing, degree: int) -> int:
        """Uses the defining generators as given, not the reduced basis."""
        return self.hilbert_function(ring.defining.generators, degree)

    def module_hilbert_function(self, module: PresentedModule, degree: int) -> int:
        """dim_k M_d for M = coker(relations) over S/J."""
        self._check_degree(degree)
        slots: List[Slot] = [(pos, m) for pos, t in enumerate(module.twists)
                             for m in self.monomial_basis(degree - t)]
        if not slots:
            return 0
        index = {slot: k for k, slot in enumerate(slots)}
        rows = []
        zero = self.ring.zero()
        columns = [list(col) for col in module.relations]
        for pos in range(module.rank):
            for g in module.ring.defining.generators:
                col = [zero] * module.rank
                col[pos] = g
                columns.append(col)
        for col in columns:
            entries = [(pos, e) for pos, e in enumerate(col) if not e.is_zero]
            col_degree = entries[0][1].degree + module.twists[entries[0][0]]
            if col_degree > degree:
                continue
            for m in self.monomial_basis(degree - col_degree):
                row = np.zeros(len(slots), dtype=np.int64)
                for pos, e in entries:
                    for mono, c in e.terms:
                        row[index[(pos, monomial_mul(m, mono))]] = c
                rows.append(row)
        rank = rank_mod_p(np.vstack(rows), self.ring.p) if rows else 0
        return len(slots) - rank


@dataclass
class CrossCheck:
    """Degreewise comparison of engine and oracle answers."""
    label: str
    engine: List[int]
    oracle: List[int]
    membership_failures: List[str] = field(default_factory=list)

    @property
    def agrees(self) -> bool:
        return self.engine == self.oracle and not self.membership_failures

    def to_dict(self) -> Dict:
        return {'label': self.label, 'engine': self.engine, 'oracle': self.oracle,
                'membership_failures': self.membership_failures, 'agrees': self.agrees}


def crosscheck_ring(ring: QuotientRing, degree_bound: int = ORACLE_DEGREE_BOUND,
                    label: str = '') -> CrossCheck:
    """Hilbert function of S/J up to the bound, plus membership of every basis element."""
    oracle = DegreewiseOracle(ring.ring, degree_bound)
    engine = [ring.hilbert_function(d) for d in range(degree_bound + 1)]
    brute = [oracle.ring_hilbert_function(ring, d) for d in range(degree_bound + 1)]
    check = CrossCheck(label or ring.describe(), engine, brute)
    for g in ring.defining.basis:
        if g.degree <= degree_bound and not oracle.contains(g, ring.defining.generators):
            check.membership_failures.append(str(g))
    if not check.agrees:
        logger.error(f"Engine and oracle disagree on {check.label}: {check.engine} vs {check.oracle}")
    return check


def crosscheck_module(module: PresentedModule, degree_bound: int = ORACLE_DEGREE_BOUND,
                      label: str = '') -> CrossCheck:
    oracle = DegreewiseOracle(module.ambient, degree_bound)
    degrees = range(degree_bound + 1)
    check = CrossCheck(label or repr(module),
                       [module.hilbert_function(d) for d in degrees],
                       [oracle.module_hilbert_function(module, d) for d in degrees])
    if not check.agrees:
        logger.error(f"Engine and oracle disagree on {check.label}: {check.engine} vs {check.oracle}")
    return check
