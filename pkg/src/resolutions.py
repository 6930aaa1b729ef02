"""
Complexes of graded free modules: minimal resolutions, Betti tables,
projective dimension, depth and homology with coefficients.
"""

import functools
import itertools
import logging
import random
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .budget import Budget
from .groebner import QuotientRing
from .modules import (
    GradedFreeModule,
    GradedMatrix,
    PresentedModule,
    ZeroModuleError,
    column_degree,
    has_depth_zero,
    is_regular_element,
    kernel,
    minimal_generators,
)
from .polynomial import AmbientMismatchError, Polynomial
from .resolution_cache import CachedResolution, ResolutionCache, get_resolution_cache

logger = logging.getLogger(__name__)

_RANDOM_FORMS = 8


class NotAComplexError(ValueError):
    """Consecutive differentials do not compose to zero."""


class FreeComplex:
    """F_0 <- F_1 <- ... <- F_k over a quotient ring, d_i: F_i -> F_{i-1}."""

    def __init__(self, ring: QuotientRing, modules: Sequence[GradedFreeModule],
                 differentials: Sequence[GradedMatrix], check: bool = True):
        if len(modules) != len(differentials) + 1:
            raise ValueError(f"{len(modules)} free modules for {len(differentials)} differentials")
        for k, d in enumerate(differentials, start=1):
            if d.ring != ring.ring:
                raise AmbientMismatchError(f"Differential d_{k} lives in another ring")
            if d.target != modules[k - 1] or d.source != modules[k]:
                raise ValueError(f"Differential d_{k} does not match the free modules")
        self.ring = ring
        self.modules: Tuple[GradedFreeModule, ...] = tuple(modules)
        self.differentials: Tuple[GradedMatrix, ...] = tuple(differentials)
        if check:
            self.check()

    @property
    def length(self) -> int:
        return len(self.differentials)

    def rank(self, i: int) -> int:
        return self.modules[i].rank if 0 <= i < len(self.modules) else 0

    def twists(self, i: int) -> Tuple[int, ...]:
        return self.modules[i].twists if 0 <= i < len(self.modules) else ()

    def differential(self, i: int) -> Optional[GradedMatrix]:
        """d_i, or None where the map is zero from or into a zero module."""
        if 1 <= i <= self.length:
            return self.differentials[i - 1]
        return None

    def check(self) -> None:
        """Raises NotAComplexError unless every d_i ∘ d_{i+1} vanishes modulo the defining ideal."""
        for k in range(1, self.length):
            product = self.differentials[k - 1].compose(self.differentials[k])
            for col in product.columns:
                if any(not self.ring.normal_form(e).is_zero for e in col):
                    raise NotAComplexError(f"d_{k} ∘ d_{k + 1} is not zero")

    def is_minimal(self) -> bool:
        return not any(d.reduce(self.ring).has_unit_entry() for d in self.differentials)

    def frobenius(self, q: int) -> 'FreeComplex':
        """Base change along the q-th power Frobenius: entries to the q, twists times q."""
        return FreeComplex(
            self.ring,
            [GradedFreeModule(tuple(q * t for t in m.twists)) for m in self.modules],
            [d.frobenius(q) for d in self.differentials],
            check=False,
        )

    def __repr__(self) -> str:
        ranks = ' <- '.join(str(m.rank) for m in self.modules)
        return f"FreeComplex({ranks})"


@dataclass
class BettiTable:
    """Graded Betti numbers beta_{i,j} of a resolution computed to `steps`.

    `complete` is set when the resolution terminated, so every beta beyond
    the table is zero.
    """
    entries: Dict[Tuple[int, int], int] = field(default_factory=dict)
    steps: int = 0
    complete: bool = False

    @classmethod
    def from_complex(cls, complex_: FreeComplex, steps: int, complete: bool) -> 'BettiTable':
        entries: Dict[Tuple[int, int], int] = {}
        for i, module in enumerate(complex_.modules):
            for t in module.twists:
                entries[(i, t)] = entries.get((i, t), 0) + 1
        return cls(entries, steps, complete)

    def beta(self, i: int, j: int) -> int:
        return self.entries.get((i, j), 0)

    def total(self, i: int) -> int:
        return sum(b for (k, _), b in self.entries.items() if k == i)

    def totals(self) -> List[int]:
        top = max((i for i, _ in self.entries), default=-1)
        return [self.total(i) for i in range(top + 1)]

    @property
    def projective_dimension(self) -> Optional[int]:
        """Known only for a complete table; -1 for the zero module."""
        if not self.complete:
            return None
        return max((i for (i, _), b in self.entries.items() if b), default=-1)

    def to_json(self) -> Dict[str, int]:
        return {f"{i},{j}": b for (i, j), b in sorted(self.entries.items())}

    def to_text(self) -> str:
        """Rows indexed by j - i, columns by homological degree."""
        if not self.entries:
            return 'total: 0'
        top = max(i for i, _ in self.entries)
        rows = sorted({j - i for i, j in self.entries})
        width = max(len(str(b)) for b in list(self.entries.values()) + self.totals()) + 1
        lines = ['total:' + ''.join(str(self.total(i)).rjust(width) for i in range(top + 1))]
        for r in rows:
            cells = []
            for i in range(top + 1):
                b = self.beta(i, i + r)
                cells.append((str(b) if b else '.').rjust(width))
            lines.append(f"{r:>5}:" + ''.join(cells))
        return '\n'.join(lines)


def _to_cached(complex_: FreeComplex, betti: BettiTable) -> CachedResolution:
    return CachedResolution(
        twists=[m.twists for m in complex_.modules],
        differentials=[[[entry.terms for entry in col] for col in d.columns]
                       for d in complex_.differentials],
        betti=dict(betti.entries),
        complete=betti.complete,
        steps=betti.steps,
    )


def _from_cached(ring: QuotientRing, cached: CachedResolution) -> Tuple[FreeComplex, BettiTable]:
    ambient = ring.ring
    modules = [GradedFreeModule(t) for t in cached.twists]
    diffs = []
    for k, cols in enumerate(cached.differentials, start=1):
        columns = [[Polynomial(ambient, dict(terms)) for terms in col] for col in cols]
        diffs.append(GradedMatrix(ambient, cached.twists[k - 1], cached.twists[k], columns))
    betti = BettiTable(dict(cached.betti), cached.steps, cached.complete)
    return FreeComplex(ring, modules, diffs, check=False), betti


def _check_cached(cached: CachedResolution, budget: Budget) -> None:
    """A cached resolution is only returned when its budget would have allowed it."""
    for k in range(1, len(cached.differentials) + 1):
        budget.check_steps(k, 'minimal resolution')
        budget.check_rank(len(cached.twists[k]), f"resolution step {k}")


def minimal_resolution(module: PresentedModule, steps: int, budget: Optional[Budget] = None,
                       cache: Optional[ResolutionCache] = None) -> Tuple[FreeComplex, BettiTable]:
    """Minimal graded free resolution up to homological degree `steps`.

    Raises:
        BudgetExceededError: When a step, rank, degree or time cap is hit.
        ValueError: If steps is negative.
    """
    if steps < 0:
        raise ValueError(f"Number of steps must be nonnegative, got {steps}")
    budget = budget or module.budget
    if cache is None:
        cache = get_resolution_cache()
    key = ResolutionCache.make_key(module.canonical_text(), steps)
    cached = cache.get(key)
    if cached is not None:
        if budget is not None:
            _check_cached(cached, budget)
        return _from_cached(module.ring, cached)

    stopwatch = budget.start() if budget is not None else None
    ring = module.ring
    ambient = module.ambient
    minimal = module.minimal_presentation()
    modules = [GradedFreeModule(minimal.twists)]
    diffs: List[GradedMatrix] = []
    twists = list(minimal.twists)
    columns = list(minimal.relations)
    for k in range(1, steps + 1):
        if not columns:
            break
        if budget is not None:
            budget.check_steps(k, 'minimal resolution')
        source = [column_degree(col, twists) for col in columns]
        if budget is not None:
            budget.check_rank(len(source), f"resolution step {k}")
        diffs.append(GradedMatrix(ambient, twists, source, columns))
        modules.append(GradedFreeModule(tuple(source)))
        logger.info(f"Resolution step {k}: rank {len(source)}")
        if stopwatch is not None:
            stopwatch.check(f"resolution step {k}")
        if k == steps:
            break
        following = kernel(ring, twists, columns, source, budget=budget)
        columns = minimal_generators(ring, source, following, budget)
        twists = source
    complete = not columns or (len(diffs) < steps)
    complex_ = FreeComplex(ring, modules, diffs, check=False)
    betti = BettiTable.from_complex(complex_, steps, complete)
    cache.put(key, _to_cached(complex_, betti))
    return complex_, betti


@dataclass(frozen=True)
class PdVerdict:
    """Finite projective dimension test certified by a Betti table."""
    finite: bool
    projective_dimension: Optional[int]
    ring_depth: int
    betti: BettiTable

    def to_dict(self) -> Dict:
        return {
            'finite': self.finite,
            'projective_dimension': self.projective_dimension,
            'ring_depth': self.ring_depth,
            'betti': self.betti.to_json(),
        }


def is_finite_pd(module: PresentedModule, budget: Optional[Budget] = None) -> PdVerdict:
    """pd M < ∞ iff beta_{depth R + 1}(M) = 0, since a finite pd is at most depth R."""
    budget = budget or module.budget
    d = ring_depth(module.ring, budget)
    if module.is_zero:
        return PdVerdict(True, -1, d, BettiTable({}, d + 1, True))
    _, betti = minimal_resolution(module, d + 1, budget)
    finite = betti.total(d + 1) == 0
    pd = betti.projective_dimension if finite else None
    logger.info(f"pd test: beta_{d + 1} = {betti.total(d + 1)}, finite={finite}")
    return PdVerdict(finite, pd, d, betti)


def projective_dimension(module: PresentedModule, max_steps: int,
                         budget: Optional[Budget] = None) -> Optional[int]:
    """pd from a resolution that terminates within max_steps; None when it does not."""
    _, betti = minimal_resolution(module, max_steps, budget)
    return betti.projective_dimension


def _over_polynomial_ring(module: PresentedModule) -> PresentedModule:
    """The same module as a module over the ambient polynomial ring."""
    ambient = module.ambient
    base = QuotientRing.polynomial_ring(ambient)
    zero = ambient.zero()
    cols = list(module.relations)
    for g in module.ring.defining.basis:
        for i in range(module.rank):
            col = [zero] * module.rank
            col[i] = g
            cols.append(tuple(col))
    return PresentedModule(base, module.twists, cols, budget=module.budget)


def _koszul_depth(module: PresentedModule, budget: Optional[Budget]) -> int:
    # Auslander-Buchsbaum over the polynomial ring: depth = n - pd_S(M)
    n = module.ambient.nvars
    lifted = _over_polynomial_ring(module)
    _, betti = minimal_resolution(lifted, n + 1, budget)
    pd = betti.projective_dimension
    if pd is None:
        raise ArithmeticError("Resolution over the polynomial ring did not terminate")
    return n - pd


def _linear_candidates(module: PresentedModule, rng: random.Random):
    ambient = module.ambient
    gens = ambient.gens()
    yield from gens
    for a, b in itertools.combinations(gens, 2):
        yield a + b
    total = ambient.zero()
    for g in gens:
        total = total + g
    yield total
    for _ in range(_RANDOM_FORMS):
        form = ambient.zero()
        for g in gens:
            form = form + g.scale(rng.randrange(ambient.p))
        if not form.is_zero:
            yield form


def _regular_linear_form(module: PresentedModule, rng: random.Random) -> Optional[Polynomial]:
    for y in _linear_candidates(module, rng):
        if is_regular_element(y, module):
            return y
    return None


def depth(module: PresentedModule, method: str = 'auto', budget: Optional[Budget] = None,
          seed: int = 0) -> int:
    """Depth at the homogeneous maximal ideal.

    'koszul' reads it off the resolution over the ambient polynomial ring.
    'auto' peels off regular linear forms while one is found among the
    candidates and stops at the first quotient with nonzero socle; when no
    candidate is regular it finishes with the Koszul route.

    Raises:
        ZeroModuleError: If the module is zero.
    """
    if module.is_zero:
        raise ZeroModuleError("Depth of the zero module")
    budget = budget or module.budget
    if method == 'koszul':
        return _koszul_depth(module, budget)
    if method != 'auto':
        raise ValueError(f"Unknown depth method '{method}'")
    rng = random.Random(seed)
    current, found = module, 0
    while True:
        if has_depth_zero(current):
            return found
        y = _regular_linear_form(current, rng)
        if y is None:
            logger.info("No regular linear form among the candidates, finishing with Koszul depth")
            return found + _koszul_depth(current, budget)
        logger.debug(f"Regular linear form {y} at step {found + 1}")
        current = current.quotient_by([y])
        found += 1


@functools.lru_cache(maxsize=64)
def _ring_depth(ring: QuotientRing, budget: Optional[Budget]) -> int:
    if ring.is_polynomial_ring:
        return ring.nvars
    return depth(PresentedModule.free(ring), method='koszul', budget=budget)


def ring_depth(ring: QuotientRing, budget: Optional[Budget] = None) -> int:
    return _ring_depth(ring, budget)


def _tensor_relations(twists: Sequence[int], coefficients: PresentedModule) -> List[Tuple[Polynomial, ...]]:
    """Relations of F ⊗ U for a free module F with the given twists."""
    u = coefficients.rank
    zero = coefficients.ambient.zero()
    out = []
    for a in range(len(twists)):
        for rel in coefficients.relations:
            col = [zero] * (len(twists) * u)
            col[a * u:(a + 1) * u] = rel
            out.append(tuple(col))
    return out


def subquotient(ring: QuotientRing, twists: Sequence[int], generators: Sequence[Tuple[Polynomial, ...]],
                relations: Sequence[Tuple[Polynomial, ...]], budget: Optional[Budget] = None) -> PresentedModule:
    """<generators> / (<generators> ∩ (<relations> + J*F)) inside a free module F."""
    gens = [g for g in generators if column_degree(g, twists) is not None]
    if not gens:
        return PresentedModule.zero(ring)
    degrees = [column_degree(g, twists) for g in gens]
    found = kernel(ring, twists, gens, degrees, relations, budget=budget)
    return PresentedModule(ring, degrees, found, budget=budget)


def homology(complex_: FreeComplex, i: int, coefficients: Optional[PresentedModule] = None,
             budget: Optional[Budget] = None) -> PresentedModule:
    """H_i(C ⊗ U), minimally presented; U defaults to the ring itself."""
    if i < 0:
        raise ValueError(f"Homological index must be nonnegative, got {i}")
    ring = complex_.ring
    coefficients = coefficients or PresentedModule.free(ring)
    if coefficients.ring != ring:
        raise AmbientMismatchError("Coefficient module lives over another ring")
    if complex_.rank(i) == 0 or coefficients.rank == 0:
        return PresentedModule.zero(ring)
    ambient = ring.ring
    u_twists = coefficients.twists
    own = [t + s for t in complex_.twists(i) for s in u_twists]

    d_i = complex_.differential(i)
    if d_i is None:
        zero = ambient.zero()
        cycles = []
        for k in range(len(own)):
            col = [zero] * len(own)
            col[k] = ambient.one()
            cycles.append(tuple(col))
    else:
        tensored = d_i.kron_identity(u_twists)
        cycles = kernel(ring, tensored.target.twists, tensored.columns, tensored.source.twists,
                        _tensor_relations(complex_.twists(i - 1), coefficients), budget=budget)

    boundaries = _tensor_relations(complex_.twists(i), coefficients)
    d_next = complex_.differential(i + 1)
    if d_next is not None:
        boundaries += list(d_next.kron_identity(u_twists).columns)
    result = subquotient(ring, own, cycles, boundaries, budget)
    return result.minimal_presentation()
