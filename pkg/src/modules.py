"""
Graded free modules, graded matrices and finitely presented modules.

A PresentedModule over R = S/J is the cokernel of a graded matrix over the
ambient polynomial ring S, read modulo J. Every module computation runs
over S with J adjoined as the extra relations g*e_i, so one Buchberger
engine serves ideals, modules and kernels alike.
"""

import hashlib
import logging
import threading
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, List, Optional, Sequence, Tuple, Union

from .budget import Budget
from .groebner import GroebnerEngine, InitialIdeal, QuotientRing, Vector
from .polynomial import AmbientMismatchError, Polynomial, PolyRing

logger = logging.getLogger(__name__)

Column = Tuple[Polynomial, ...]


class ZeroModuleError(ValueError):
    """The operation is undefined on the zero module."""


class InfiniteLengthError(ArithmeticError):
    """A finite-length module was required."""


class Infinite(Enum):
    INFINITE = 'infinite'

    def __str__(self) -> str:
        return self.value


INFINITE = Infinite.INFINITE
Length = Union[int, Infinite]


@dataclass(frozen=True)
class GradedFreeModule:
    """Free module whose i-th basis element sits in degree twists[i]."""
    twists: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, 'twists', tuple(int(t) for t in self.twists))

    @property
    def rank(self) -> int:
        return len(self.twists)


def column_degree(column: Sequence[Polynomial], twists: Sequence[int]) -> Optional[int]:
    """Degree of a homogeneous column; None for the zero column.

    Raises:
        ValueError: If the column is not homogeneous for the given twists.
    """
    degrees = {sum(e) + t for entry, t in zip(column, twists) for e, _ in entry.terms}
    if not degrees:
        return None
    if len(degrees) > 1:
        raise ValueError(f"Column is not homogeneous: degrees {sorted(degrees)}")
    return degrees.pop()


def column_to_vector(column: Sequence[Polynomial], offset: int = 0) -> Vector:
    return {(i + offset, e): c for i, entry in enumerate(column) for e, c in entry.terms}


def vector_to_column(ring: PolyRing, vec: Vector, rank: int, offset: int = 0) -> Column:
    buckets = [{} for _ in range(rank)]
    for (pos, e), c in vec.items():
        k = pos - offset
        if 0 <= k < rank:
            buckets[k][e] = c
    return tuple(Polynomial(ring, b) for b in buckets)


def defining_vectors(ring: QuotientRing, rank: int, offset: int = 0) -> List[Vector]:
    """The relations g*e_i, g in the defining basis, for a free module of the given rank."""
    out = []
    for g in ring.defining.basis:
        for i in range(rank):
            out.append({(i + offset, e): c for e, c in g.terms})
    return out


def complete(engine: GroebnerEngine, vectors: Iterable[Vector]) -> GroebnerEngine:
    """Feed vectors by ascending degree and run the engine to completion."""
    for vec in sorted((v for v in vectors if v), key=engine.vector_degree):
        engine.add(vec)
    return engine.run()


class GradedMatrix:
    """Homogeneous map F_source -> F_target over the ambient ring, stored by columns."""

    def __init__(self, ring: PolyRing, target: Sequence[int], source: Sequence[int],
                 columns: Sequence[Sequence[Polynomial]]):
        self.ring = ring
        self.target = GradedFreeModule(tuple(target))
        self.source = GradedFreeModule(tuple(source))
        cols = tuple(tuple(c) for c in columns)
        if len(cols) != self.source.rank:
            raise ValueError(f"Expected {self.source.rank} columns, got {len(cols)}")
        for j, col in enumerate(cols):
            if len(col) != self.target.rank:
                raise ValueError(f"Column {j} has {len(col)} entries, expected {self.target.rank}")
            for entry in col:
                if entry.ring != ring:
                    raise AmbientMismatchError(f"Entry {entry} is not in {ring.variables}")
            degree = column_degree(col, self.target.twists)
            if degree is not None and degree != self.source.twists[j]:
                raise ValueError(f"Column {j} has degree {degree}, expected {self.source.twists[j]}")
        self.columns: Tuple[Column, ...] = cols

    @classmethod
    def from_columns(cls, ring: PolyRing, target: Sequence[int],
                     columns: Sequence[Sequence[Polynomial]]) -> 'GradedMatrix':
        source = []
        for col in columns:
            degree = column_degree(col, target)
            if degree is None:
                raise ValueError("Zero column has no degree; pass source twists explicitly")
            source.append(degree)
        return cls(ring, target, source, columns)

    @property
    def nrows(self) -> int:
        return self.target.rank

    @property
    def ncols(self) -> int:
        return self.source.rank

    def entry(self, i: int, j: int) -> Polynomial:
        return self.columns[j][i]

    def rows(self) -> List[List[Polynomial]]:
        return [[col[i] for col in self.columns] for i in range(self.nrows)]

    def is_zero(self) -> bool:
        return all(e.is_zero for col in self.columns for e in col)

    def compose(self, other: 'GradedMatrix') -> 'GradedMatrix':
        """self ∘ other."""
        if other.target.twists != self.source.twists:
            raise ValueError("Matrices are not composable")
        zero = self.ring.zero()
        cols = []
        for b in other.columns:
            out = [zero] * self.nrows
            for k, coeff in enumerate(b):
                if coeff.is_zero:
                    continue
                out = [acc + coeff * a for acc, a in zip(out, self.columns[k])]
            cols.append(tuple(out))
        return GradedMatrix(self.ring, self.target.twists, other.source.twists, cols)

    def frobenius(self, q: int) -> 'GradedMatrix':
        """Entries raised to the q-th power; twists scale by q."""
        return GradedMatrix(
            self.ring,
            [q * t for t in self.target.twists],
            [q * t for t in self.source.twists],
            [[e.frobenius(q) for e in col] for col in self.columns],
        )

    def kron_identity(self, twists: Sequence[int]) -> 'GradedMatrix':
        """self ⊗ id on a free module with the given twists; index (a, b) -> a*k + b."""
        k = len(twists)
        zero = self.ring.zero()
        target = [t + u for t in self.target.twists for u in twists]
        source = [t + u for t in self.source.twists for u in twists]
        cols = []
        for col in self.columns:
            for b in range(k):
                out = [zero] * (self.nrows * k)
                for a, entry in enumerate(col):
                    out[a * k + b] = entry
                cols.append(tuple(out))
        return GradedMatrix(self.ring, target, source, cols)

    def unit_entries(self) -> List[Tuple[int, int]]:
        return [(i, j) for j, col in enumerate(self.columns)
                for i, e in enumerate(col) if not e.is_zero and e.is_constant()]

    def has_unit_entry(self) -> bool:
        return bool(self.unit_entries())

    def reduce(self, ring: QuotientRing) -> 'GradedMatrix':
        return GradedMatrix(self.ring, self.target.twists, self.source.twists,
                            [[ring.normal_form(e) for e in col] for col in self.columns])

    def __eq__(self, other) -> bool:
        if not isinstance(other, GradedMatrix):
            return NotImplemented
        return (self.ring == other.ring and self.target == other.target
                and self.source == other.source and self.columns == other.columns)

    def __repr__(self) -> str:
        return f"GradedMatrix({self.nrows}x{self.ncols})"


def kernel(ring: QuotientRing, target_twists: Sequence[int], images: Sequence[Column],
           source_twists: Sequence[int], relations: Sequence[Column] = (),
           budget: Optional[Budget] = None) -> List[Column]:
    """Generators of {a in S^m : sum a_j images_j lies in <relations> + J*S^r}.

    Each image is tagged with its own unit vector in m extra positions placed
    after the r target positions; in the completed basis the elements led by a
    tag position carry no target terms and their tags generate the kernel.
    """
    r, m = len(target_twists), len(images)
    if m == 0:
        return []
    if budget is not None:
        budget.check_rank(r + m, 'kernel computation')
    ambient = ring.ring
    engine = GroebnerEngine(ambient, tuple(target_twists) + tuple(source_twists), budget)
    one = (0,) * ambient.nvars
    vectors = []
    for j, image in enumerate(images):
        vec = column_to_vector(image)
        vec[(r + j, one)] = 1
        vectors.append(vec)
    vectors.extend(column_to_vector(col) for col in relations)
    vectors.extend(defining_vectors(ring, r))
    vectors.extend(defining_vectors(ring, m, offset=r))
    complete(engine, vectors)
    out = []
    for vec in engine.reduced():
        if engine.lead(vec)[0] >= r:
            out.append(vector_to_column(ambient, vec, m, offset=r))
    logger.debug(f"Kernel of a {r}x{m} map: {len(out)} generators")
    return out


def minimal_generators(ring: QuotientRing, twists: Sequence[int], columns: Sequence[Column],
                       budget: Optional[Budget] = None) -> List[Column]:
    """A minimal subset of homogeneous columns generating their span modulo J*S^r.

    Columns are visited by ascending degree against a basis truncated at that
    degree; a column that reduces to zero is redundant. Inserting a reduced
    element of degree d creates no new pairs of degree d, so the truncation
    stays valid while the degree-d columns are processed.
    """
    ambient = ring.ring
    engine = GroebnerEngine(ambient, tuple(twists), budget)
    for vec in sorted(defining_vectors(ring, len(twists)), key=engine.vector_degree):
        engine.add(vec)
    keyed = []
    for idx, col in enumerate(columns):
        degree = column_degree(col, twists)
        if degree is not None:
            keyed.append((degree, idx, tuple(col)))
    keyed.sort(key=lambda t: (t[0], t[1]))
    kept = []
    for degree, _, col in keyed:
        engine.run(max_degree=degree)
        rest = engine.reduce(column_to_vector(col))
        if rest:
            kept.append(col)
            engine.add(rest)
    return kept


class PresentedModule:
    """coker(F_1 -> F_0) over a quotient ring.

    `twists` are the degrees of the generators; each relation is a column of
    ambient polynomials, stored in normal form modulo the defining ideal.
    Zero columns are dropped.
    """

    def __init__(self, ring: QuotientRing, twists: Sequence[int],
                 relations: Iterable[Sequence[Polynomial]] = (), name: str = '',
                 budget: Optional[Budget] = None):
        self.ring = ring
        self.twists: Tuple[int, ...] = tuple(int(t) for t in twists)
        self.name = name
        self.budget = budget
        cols = []
        for col in relations:
            col = tuple(col)
            if len(col) != len(self.twists):
                raise ValueError(f"Relation has {len(col)} entries for {len(self.twists)} generators")
            reduced = tuple(ring.normal_form(entry) for entry in col)
            if all(e.is_zero for e in reduced):
                continue
            column_degree(reduced, self.twists)
            cols.append(reduced)
        self.relations: Tuple[Column, ...] = tuple(cols)
        self._engine: Optional[GroebnerEngine] = None
        self._lock = threading.Lock()

    # -- constructors -------------------------------------------------

    @classmethod
    def free(cls, ring: QuotientRing, twists: Sequence[int] = (0,), name: str = '') -> 'PresentedModule':
        return cls(ring, twists, (), name=name)

    @classmethod
    def zero(cls, ring: QuotientRing) -> 'PresentedModule':
        return cls(ring, (), (), name='0')

    @classmethod
    def cyclic(cls, ring: QuotientRing, generators: Iterable[Polynomial], name: str = '') -> 'PresentedModule':
        """R/I for I generated by homogeneous `generators`."""
        return cls(ring, (0,), [(g,) for g in generators], name=name)

    @classmethod
    def from_rows(cls, ring: QuotientRing, rows: Sequence[Sequence[Polynomial]],
                  twists: Sequence[int], name: str = '') -> 'PresentedModule':
        if len(rows) != len(twists):
            raise ValueError(f"{len(rows)} rows for {len(twists)} generators")
        widths = {len(row) for row in rows}
        if len(widths) > 1:
            raise ValueError(f"Ragged presentation matrix: row lengths {sorted(widths)}")
        width = widths.pop() if widths else 0
        columns = [tuple(row[j] for row in rows) for j in range(width)]
        return cls(ring, twists, columns, name=name)

    # -- structure ----------------------------------------------------

    @property
    def ambient(self) -> PolyRing:
        return self.ring.ring

    @property
    def rank(self) -> int:
        return len(self.twists)

    def relation_degrees(self) -> List[int]:
        return [column_degree(col, self.twists) for col in self.relations]

    @property
    def presentation(self) -> GradedMatrix:
        return GradedMatrix(self.ambient, self.twists, self.relation_degrees(), self.relations)

    def direct_sum(self, other: 'PresentedModule') -> 'PresentedModule':
        if other.ring != self.ring:
            raise AmbientMismatchError("Direct sum of modules over different rings")
        zero = self.ambient.zero()
        r, s = self.rank, other.rank
        cols = [tuple(col) + (zero,) * s for col in self.relations]
        cols += [(zero,) * r + tuple(col) for col in other.relations]
        return PresentedModule(self.ring, self.twists + other.twists, cols, budget=self.budget)

    def over(self, ring: QuotientRing) -> 'PresentedModule':
        """The same presentation read over another quotient of the ambient ring."""
        if ring.ring != self.ambient:
            raise AmbientMismatchError("Target ring has a different ambient polynomial ring")
        return PresentedModule(ring, self.twists, self.relations, name=self.name, budget=self.budget)

    def quotient_by(self, elements: Iterable[Polynomial]) -> 'PresentedModule':
        """M / (elements) M."""
        zero = self.ambient.zero()
        cols = list(self.relations)
        for f in elements:
            for i in range(self.rank):
                col = [zero] * self.rank
                col[i] = f
                cols.append(tuple(col))
        return PresentedModule(self.ring, self.twists, cols, budget=self.budget)

    # -- relation module ----------------------------------------------

    def relation_engine(self) -> GroebnerEngine:
        """Sealed basis of the relation module U = <relations> + J*F_0."""
        if self._engine is None:
            with self._lock:
                if self._engine is None:
                    engine = GroebnerEngine(self.ambient, self.twists, self.budget)
                    vectors = [column_to_vector(col) for col in self.relations]
                    vectors.extend(defining_vectors(self.ring, self.rank))
                    complete(engine, vectors)
                    self._engine = engine.seal()
        return self._engine

    def normal_form(self, column: Sequence[Polynomial]) -> Column:
        vec = self.relation_engine().reduce(column_to_vector(column))
        return vector_to_column(self.ambient, vec, self.rank)

    def contains(self, column: Sequence[Polynomial]) -> bool:
        """Whether the element with these coordinates is zero in the module."""
        return not self.relation_engine().reduce(column_to_vector(column))

    def initial_modules(self) -> List[InitialIdeal]:
        leads = self.relation_engine().leading_terms()
        n = self.ambient.nvars
        return [InitialIdeal(n, [e for pos, e in leads if pos == i]) for i in range(self.rank)]

    @property
    def is_zero(self) -> bool:
        return all(init.is_unit for init in self.initial_modules())

    def hilbert_function(self, degree: int) -> int:
        return sum(init.hilbert_function(degree - t)
                   for init, t in zip(self.initial_modules(), self.twists))

    def minimal_presentation(self) -> 'PresentedModule':
        """Drop redundant generators by unit pivots, then redundant relations."""
        twists = list(self.twists)
        columns = [list(col) for col in self.relations]
        while True:
            pivot = _find_unit(columns)
            if pivot is None:
                break
            j, i = pivot
            pivot_col = columns.pop(j)
            inv = self.ambient.field.inverse(pivot_col[i].lc)
            reduced = []
            for col in columns:
                if not col[i].is_zero:
                    factor = col[i].scale(inv)
                    col = [c - factor * pc for c, pc in zip(col, pivot_col)]
                del col[i]
                reduced.append(col)
            columns = reduced
            del twists[i]
        pruned = PresentedModule(self.ring, twists, columns, budget=self.budget)
        kept = minimal_generators(self.ring, pruned.twists, pruned.relations, self.budget)
        return PresentedModule(self.ring, pruned.twists, kept, name=self.name, budget=self.budget)

    # -- identity -----------------------------------------------------

    def canonical_text(self) -> str:
        ring = self.ambient
        order = ring.order
        lines = [
            f"char {ring.p}",
            f"vars {','.join(ring.variables)}",
            f"order {order.kind.value} {','.join(str(i) for i in order.priority)}",
            "ideal " + '; '.join(str(g) for g in self.ring.defining.basis),
            "twists " + ','.join(str(t) for t in self.twists),
        ]
        lines += ['relation ' + '; '.join(str(e) for e in col) for col in self.relations]
        return '\n'.join(lines)

    def signature(self) -> str:
        return hashlib.md5(self.canonical_text().encode('utf-8')).hexdigest()

    def __eq__(self, other) -> bool:
        """Equal presentations: same ring and generators, same relation module."""
        if not isinstance(other, PresentedModule):
            return NotImplemented
        if self.ring != other.ring:
            return False
        if self.is_zero or other.is_zero:
            return self.is_zero and other.is_zero
        if self.twists != other.twists:
            return False
        return (all(other.contains(col) for col in self.relations)
                and all(self.contains(col) for col in other.relations))

    __hash__ = None

    def __repr__(self) -> str:
        label = f" {self.name}" if self.name else ''
        return f"PresentedModule{label}(rank={self.rank}, relations={len(self.relations)})"


def _find_unit(columns: List[List[Polynomial]]) -> Optional[Tuple[int, int]]:
    for j, col in enumerate(columns):
        for i, e in enumerate(col):
            if not e.is_zero and e.is_constant():
                return j, i
    return None


def syzygy(module: PresentedModule) -> PresentedModule:
    """First syzygy of the minimal presentation, presented as coker of the second syzygies."""
    minimal = module.minimal_presentation()
    ring = minimal.ring
    if not minimal.relations:
        return PresentedModule.zero(ring)
    source = minimal.relation_degrees()
    second = kernel(ring, minimal.twists, minimal.relations, source, budget=module.budget)
    second = minimal_generators(ring, source, second, module.budget)
    return PresentedModule(ring, source, second, budget=module.budget)


def hilbert_function(module: PresentedModule, degree: int) -> int:
    return module.hilbert_function(degree)


def dimension(module: PresentedModule) -> int:
    """Krull dimension from the initial module, position by position.

    Raises:
        ZeroModuleError: If the module is zero.
    """
    parts = [init.dimension() for init in module.initial_modules() if not init.is_unit]
    if not parts:
        raise ZeroModuleError("Dimension of the zero module")
    return max(parts)


def length(module: PresentedModule) -> Length:
    """Length as a count of standard monomials; INFINITE in positive dimension."""
    initials = module.initial_modules()
    live = [init for init in initials if not init.is_unit]
    if not live:
        return 0
    if max(init.dimension() for init in live) > 0:
        return INFINITE
    total = 0
    for init in live:
        degree = 0
        while True:
            count = init.hilbert_function(degree)
            if count == 0:
                break
            total += count
            degree += 1
    return total


def has_depth_zero(module: PresentedModule) -> bool:
    """Whether the socle (0 :_M m) is nonzero.

    Multiplication by all variables at once, M -> M^n, is injective exactly
    when the socle vanishes.

    Raises:
        ZeroModuleError: If the module is zero.
    """
    if module.is_zero:
        raise ZeroModuleError("Depth of the zero module")
    ambient = module.ambient
    n, r = ambient.nvars, module.rank
    zero = ambient.zero()
    gens = ambient.gens()
    images = []
    for j in range(r):
        col = [zero] * (r * n)
        for k in range(n):
            col[k * r + j] = gens[k]
        images.append(tuple(col))
    target = [t for _ in range(n) for t in module.twists]
    relations = []
    for k in range(n):
        for rel in module.relations:
            col = [zero] * (r * n)
            col[k * r:(k + 1) * r] = rel
            relations.append(tuple(col))
    socle = kernel(module.ring, target, images, [t + 1 for t in module.twists],
                   relations, budget=module.budget)
    return any(not module.contains(col) for col in socle)


def is_regular_element(element: Polynomial, module: PresentedModule) -> bool:
    """Whether multiplication by a homogeneous element is injective on the module.

    Raises:
        ZeroModuleError: If the module is zero.
    """
    if module.is_zero:
        raise ZeroModuleError("Regular elements on the zero module")
    if not element.is_homogeneous():
        raise ValueError(f"{element} is not homogeneous")
    y = module.ring.normal_form(element)
    if y.is_zero:
        return False
    zero = module.ambient.zero()
    r = module.rank
    images = []
    for j in range(r):
        col = [zero] * r
        col[j] = y
        images.append(tuple(col))
    found = kernel(module.ring, module.twists, images, [t + y.degree for t in module.twists],
                   module.relations, budget=module.budget)
    return all(module.contains(col) for col in found)
