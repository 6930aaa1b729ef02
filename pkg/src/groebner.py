"""
Buchberger completion and the ideal-theoretic toolbox.

The engine works on vectors of a graded free module S^r over the ambient
polynomial ring S (rank 1 is the ideal case). Terms are (position,
exponents) pairs compared position-over-term: a smaller position
dominates, then the ring's monomial order decides. Because positions
dominate, every basis element whose leading position is >= k has no
terms in positions < k, which is what the syzygy and kernel
computations in modules.py rely on.
"""

import heapq
import itertools
import logging
import threading
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .budget import Budget, Stopwatch
from .polynomial import (
    AmbientMismatchError,
    Monomial,
    MonomialOrder,
    OrderKind,
    Polynomial,
    PolyRing,
    monomial_divides,
    monomial_lcm,
    monomial_mul,
    monomial_quotient,
)

logger = logging.getLogger(__name__)

Term = Tuple[int, Monomial]
Vector = Dict[Term, int]

_TIME_CHECK_EVERY = 64


class ZeroElementError(ArithmeticError):
    """The element reduces to zero where a nonzero element is required."""


class UnitIdealError(ArithmeticError):
    """The ideal is the whole ring."""


class InhomogeneousIdealError(ValueError):
    """A defining ideal must be generated by homogeneous polynomials."""


def _negate(key: Tuple[int, ...]) -> Tuple[int, ...]:
    return tuple(-x for x in key)


def poly_to_vector(f: Polynomial, pos: int = 0) -> Vector:
    return {(pos, e): c for e, c in f.terms}


def vector_to_poly(ring: PolyRing, vec: Vector, pos: int = 0) -> Polynomial:
    return Polynomial(ring, {e: c for (k, e), c in vec.items() if k == pos})


class _Element:
    __slots__ = ('vec', 'lead', 'tail', 'degree')

    def __init__(self, vec: Vector, lead: Term, degree: int):
        self.vec = vec
        self.lead = lead
        self.tail = [(t, c) for t, c in vec.items() if t != lead]
        self.degree = degree


class GroebnerEngine:
    """Buchberger completion for a submodule of S^r under a position-over-term order.

    Pairs are processed by the normal strategy (smallest lcm degree, then
    smallest lcm in the order) with the coprime criterion in the ideal case
    and the chain criterion restricted to strictly smaller lcms.
    `run(max_degree=d)` leaves pairs above d pending, which gives a basis
    that is complete up to degree d for homogeneous input.
    """

    def __init__(self, ring: PolyRing, twists: Sequence[int] = (0,),
                 budget: Optional[Budget] = None, stopwatch: Optional[Stopwatch] = None):
        self.ring = ring
        self.p = ring.field.p
        self._mkey = ring.order.sort_key
        self.twists = tuple(twists)
        self.budget = budget
        self.stopwatch = stopwatch or (budget.start() if budget is not None else None)
        self.basis: List[_Element] = []
        self._by_pos: Dict[int, List[int]] = {}
        self._heap: List[tuple] = []
        self._pending = set()
        self._ideal_case = len(self.twists) == 1
        self.pairs_reduced = 0

    @classmethod
    def from_basis(cls, ring: PolyRing, vectors: Iterable[Vector],
                   twists: Sequence[int] = (0,)) -> 'GroebnerEngine':
        """A reducer over an already complete basis; no pairs are formed."""
        engine = cls(ring, twists)
        for vec in vectors:
            if vec:
                engine._append(engine._monic(vec))
        return engine

    # -- terms --------------------------------------------------------

    def term_key(self, term: Term) -> Tuple[int, ...]:
        return (-term[0],) + self._mkey(term[1])

    def term_degree(self, term: Term) -> int:
        return sum(term[1]) + self.twists[term[0]]

    def lead(self, vec: Vector) -> Term:
        return max(vec, key=self.term_key)

    def vector_degree(self, vec: Vector) -> int:
        return max(self.term_degree(t) for t in vec)

    # -- reduction ----------------------------------------------------

    def _reducer(self, term: Term) -> Optional[_Element]:
        pos, e = term
        for idx in self._by_pos.get(pos, ()):
            g = self.basis[idx]
            if monomial_divides(g.lead[1], e):
                return g
        return None

    def reduce(self, vec: Vector, full: bool = True) -> Vector:
        """Normal form of vec; with full=False stop at the first irreducible leading term."""
        p = self.p
        tk = self.term_key
        f = dict(vec)
        heap = [(_negate(tk(t)), t) for t in f]
        heapq.heapify(heap)
        rem: Vector = {}
        while heap:
            _, t = heapq.heappop(heap)
            c = f.pop(t, None)
            if c is None:
                continue
            g = self._reducer(t)
            if g is None:
                rem[t] = c
                if not full:
                    rem.update(f)
                    break
                continue
            shift = monomial_quotient(t[1], g.lead[1])
            for (gpos, ge), gc in g.tail:
                s = (gpos, monomial_mul(ge, shift))
                old = f.get(s)
                if old is None:
                    f[s] = (-c * gc) % p
                    heapq.heappush(heap, (_negate(tk(s)), s))
                else:
                    v = (old - c * gc) % p
                    if v:
                        f[s] = v
                    else:
                        del f[s]
        return rem

    # -- completion ---------------------------------------------------

    def _monic(self, vec: Vector) -> Vector:
        lead = self.lead(vec)
        c = vec[lead]
        if c == 1:
            return dict(vec)
        inv = pow(c, -1, self.p)
        return {t: v * inv % self.p for t, v in vec.items()}

    def _append(self, vec: Vector) -> _Element:
        lead = self.lead(vec)
        elem = _Element(vec, lead, self.term_degree(lead))
        self._by_pos.setdefault(lead[0], []).append(len(self.basis))
        self.basis.append(elem)
        return elem

    def add(self, vec: Vector) -> Optional[_Element]:
        """Reduce vec and, if it survives, insert it and queue its S-pairs."""
        if not vec:
            return None
        r = self.reduce(vec)
        if not r:
            return None
        r = self._monic(r)
        lead = self.lead(r)
        k = len(self.basis)
        for idx in self._by_pos.get(lead[0], ()):
            other = self.basis[idx]
            lcm = monomial_lcm(other.lead[1], lead[1])
            degree = sum(lcm) + self.twists[lead[0]]
            self._pending.add((idx, k))
            heapq.heappush(self._heap, (degree, self.term_key((lead[0], lcm)), idx, k))
        return self._append(r)

    def _chain_skip(self, i: int, j: int, pos: int, lcm: Monomial) -> bool:
        li, lj = self.basis[i].lead[1], self.basis[j].lead[1]
        for k in self._by_pos[pos]:
            if k == i or k == j:
                continue
            lk = self.basis[k].lead[1]
            if not monomial_divides(lk, lcm):
                continue
            if (min(i, k), max(i, k)) in self._pending or (min(j, k), max(j, k)) in self._pending:
                continue
            if monomial_lcm(li, lk) == lcm or monomial_lcm(lj, lk) == lcm:
                continue
            return True
        return False

    def _s_vector(self, gi: _Element, gj: _Element, lcm: Monomial) -> Vector:
        p = self.p
        si = monomial_quotient(lcm, gi.lead[1])
        sj = monomial_quotient(lcm, gj.lead[1])
        out: Vector = {}
        for (pos, e), c in gi.tail:
            out[(pos, monomial_mul(e, si))] = c
        for (pos, e), c in gj.tail:
            t = (pos, monomial_mul(e, sj))
            v = (out.get(t, 0) - c) % p
            if v:
                out[t] = v
            else:
                out.pop(t, None)
        return out

    def run(self, max_degree: Optional[int] = None) -> 'GroebnerEngine':
        """Process queued pairs, all of them or those of degree <= max_degree."""
        processed = 0
        while self._heap:
            degree, _, i, j = self._heap[0]
            if max_degree is not None and degree > max_degree:
                break
            heapq.heappop(self._heap)
            self._pending.discard((i, j))
            if self.budget is not None:
                self.budget.check_degree(degree, 'Buchberger completion')
            processed += 1
            if self.stopwatch is not None and processed % _TIME_CHECK_EVERY == 0:
                self.stopwatch.check('Buchberger completion')
            gi, gj = self.basis[i], self.basis[j]
            li, lj = gi.lead[1], gj.lead[1]
            lcm = monomial_lcm(li, lj)
            if self._ideal_case and all(a == 0 or b == 0 for a, b in zip(li, lj)):
                continue
            if self._chain_skip(i, j, gi.lead[0], lcm):
                continue
            self.pairs_reduced += 1
            self.add(self._s_vector(gi, gj, lcm))
        logger.debug(f"Completion pass: {processed} pairs popped, basis size {len(self.basis)}")
        return self

    def pending_degree(self) -> Optional[int]:
        return self._heap[0][0] if self._heap else None

    # -- results ------------------------------------------------------

    def reduced(self) -> List[Vector]:
        """The reduced basis of what has been completed so far.

        Sorted by position, then degree, then descending in the order.
        """
        elems = sorted(self.basis, key=lambda g: self.term_key(g.lead))
        minimal: List[_Element] = []
        for g in elems:
            if any(h.lead[0] == g.lead[0] and monomial_divides(h.lead[1], g.lead[1]) for h in minimal):
                continue
            minimal.append(g)
        reducer = GroebnerEngine(self.ring, self.twists)
        for g in minimal:
            reducer._append(g.vec)
        out = []
        for g in minimal:
            tail = reducer.reduce(dict(g.tail))
            tail[g.lead] = 1
            out.append(tail)
        return sorted(out, key=lambda v: self._output_key(v))

    def _output_key(self, vec: Vector):
        lead = self.lead(vec)
        return (lead[0], self.term_degree(lead), _negate(self._mkey(lead[1])))

    def seal(self) -> 'GroebnerEngine':
        """Complete, then replace the basis by the reduced basis."""
        self.run()
        reduced = self.reduced()
        self.basis, self._by_pos, self._heap, self._pending = [], {}, [], set()
        for vec in reduced:
            self._append(vec)
        return self

    def leading_terms(self) -> List[Term]:
        return [g.lead for g in self.basis]


class InitialIdeal:
    """Monomial ideal given by its minimal generators."""

    def __init__(self, nvars: int, monomials: Iterable[Monomial]):
        self.nvars = nvars
        ordered = sorted(set(tuple(m) for m in monomials), key=lambda m: (sum(m), m))
        minimal: List[Monomial] = []
        for m in ordered:
            if not any(monomial_divides(g, m) for g in minimal):
                minimal.append(m)
        self.leading_monomials: Tuple[Monomial, ...] = tuple(minimal)

    def contains(self, m: Monomial) -> bool:
        return any(monomial_divides(g, m) for g in self.leading_monomials)

    @property
    def is_unit(self) -> bool:
        return any(sum(g) == 0 for g in self.leading_monomials)

    def divisible_by_variable(self, index: int) -> List[Monomial]:
        return [g for g in self.leading_monomials if g[index] > 0]

    def dimension(self) -> int:
        """Largest size of a variable set containing the support of no generator.

        Returns -1 for the unit ideal.
        """
        if self.is_unit:
            return -1
        supports = [frozenset(i for i, x in enumerate(g) if x) for g in self.leading_monomials]
        for size in range(self.nvars, -1, -1):
            for subset in itertools.combinations(range(self.nvars), size):
                chosen = set(subset)
                if not any(s <= chosen for s in supports):
                    return size
        return 0

    def standard_monomials(self, degree: int) -> List[Monomial]:
        return [m for m in monomials_of_degree(self.nvars, degree) if not self.contains(m)]

    def hilbert_function(self, degree: int) -> int:
        if degree < 0:
            return 0
        return len(self.standard_monomials(degree))

    def __repr__(self) -> str:
        return f"InitialIdeal({self.leading_monomials})"


def monomials_of_degree(nvars: int, degree: int) -> List[Monomial]:
    out = []
    for combo in itertools.combinations_with_replacement(range(nvars), degree):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return out


def _poly_key(ring: PolyRing):
    key = ring.order.sort_key

    def sort_key(f: Polynomial):
        return (f.degree, _negate(key(f.lm)))
    return sort_key


class GroebnerIdeal:
    """An ideal of the ambient polynomial ring with its reduced Gröbner basis.

    The basis is computed at most once, on first access, and then sealed.
    """

    def __init__(self, ring: PolyRing, generators: Iterable[Polynomial],
                 budget: Optional[Budget] = None):
        gens = list(generators)
        for g in gens:
            if g.ring != ring:
                raise AmbientMismatchError(f"Generator {g} is not in {ring.variables}")
        self.ring = ring
        self.generators: Tuple[Polynomial, ...] = tuple(g for g in gens if not g.is_zero)
        self.budget = budget
        self._basis: Optional[Tuple[Polynomial, ...]] = None
        self._reducer: Optional[GroebnerEngine] = None
        self._lock = threading.Lock()

    @property
    def basis(self) -> Tuple[Polynomial, ...]:
        if self._basis is None:
            with self._lock:
                if self._basis is None:
                    self._basis = self._complete()
        return self._basis

    def _complete(self) -> Tuple[Polynomial, ...]:
        if not self.generators:
            return ()
        engine = GroebnerEngine(self.ring, budget=self.budget)
        for g in sorted(self.generators, key=_poly_key(self.ring)):
            engine.add(poly_to_vector(g))
        engine.run()
        basis = tuple(vector_to_poly(self.ring, v) for v in engine.reduced())
        logger.info(f"Reduced basis: {len(self.generators)} generators -> {len(basis)} elements "
                    f"({engine.pairs_reduced} S-pairs reduced)")
        return basis

    def _engine(self) -> GroebnerEngine:
        basis = self.basis
        if self._reducer is None:
            self._reducer = GroebnerEngine.from_basis(self.ring, [poly_to_vector(g) for g in basis])
        return self._reducer

    @property
    def is_zero(self) -> bool:
        return not self.generators

    @property
    def is_unit(self) -> bool:
        return any(g.is_constant() for g in self.basis)

    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.generators)

    def normal_form(self, f: Polynomial) -> Polynomial:
        if f.ring != self.ring:
            raise AmbientMismatchError(f"{f} is not in {self.ring.variables}")
        if self.is_zero or f.is_zero:
            return f
        return vector_to_poly(self.ring, self._engine().reduce(poly_to_vector(f)))

    def contains(self, f: Polynomial) -> bool:
        return self.normal_form(f).is_zero

    def contains_ideal(self, other: 'GroebnerIdeal') -> bool:
        return all(self.contains(g) for g in other.generators)

    def initial_ideal(self) -> InitialIdeal:
        return InitialIdeal(self.ring.nvars, [g.lm for g in self.basis])

    def verify(self) -> bool:
        """Every S-polynomial of the reduced basis reduces to zero."""
        basis = self.basis
        for f, g in itertools.combinations(basis, 2):
            if not self.normal_form(s_polynomial(f, g)).is_zero:
                return False
        return True

    def certificate(self) -> List[List[Polynomial]]:
        """Cofactors c with basis[k] = sum_j c[k][j] * generators[j]."""
        gens = self.generators
        if not gens:
            return []
        twists = (0,) + tuple(g.degree for g in gens)
        engine = GroebnerEngine(self.ring, twists, budget=self.budget)
        for j, g in enumerate(gens):
            vec = poly_to_vector(g)
            vec[(j + 1, (0,) * self.ring.nvars)] = 1
            engine.add(vec)
        engine.run()
        rows = []
        for b in self.basis:
            rest = engine.reduce(poly_to_vector(b))
            if any(pos == 0 for pos, _ in rest):
                raise ArithmeticError(f"Basis element {b} is not in the generated ideal")
            rows.append([-vector_to_poly(self.ring, rest, j + 1) for j in range(len(gens))])
        return rows

    def verify_certificate(self) -> bool:
        for b, cofactors in zip(self.basis, self.certificate()):
            total = self.ring.zero()
            for c, g in zip(cofactors, self.generators):
                total = total + c * g
            if total != b:
                return False
        return True

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroebnerIdeal):
            return NotImplemented
        return self.ring == other.ring and self.basis == other.basis

    def __hash__(self) -> int:
        return hash((self.ring, self.basis))

    def __repr__(self) -> str:
        return f"GroebnerIdeal({[str(g) for g in self.generators]})"


def buchberger(generators: Sequence[Polynomial], order=None,
               budget: Optional[Budget] = None) -> GroebnerIdeal:
    """Reduced Gröbner basis of the ideal generated by `generators`.

    An empty or all-zero input gives the zero ideal (check `is_zero`).

    Raises:
        AmbientMismatchError: If the generators live in different rings.
        ValueError: If there are no generators to infer the ring from.
    """
    if not generators:
        raise ValueError("No generators given; construct GroebnerIdeal(ring, []) for the zero ideal")
    ring = generators[0].ring
    for g in generators[1:]:
        if g.ring != ring:
            raise AmbientMismatchError(f"Generator {g} is not in {ring.variables}")
    if order is not None and order != ring.order:
        ring = ring.with_order(order)
        generators = [g.to_ring(ring) for g in generators]
    ideal = GroebnerIdeal(ring, generators, budget=budget)
    _ = ideal.basis
    return ideal


def normal_form(f: Polynomial, ideal: GroebnerIdeal) -> Polynomial:
    return ideal.normal_form(f)


def s_polynomial(f: Polynomial, g: Polynomial) -> Polynomial:
    lcm = monomial_lcm(f.lm, g.lm)
    field = f.ring.field
    a = f.mul_term(monomial_quotient(lcm, f.lm), field.inverse(f.lc))
    b = g.mul_term(monomial_quotient(lcm, g.lm), field.inverse(g.lc))
    return a - b


def bracket_power(ideal: GroebnerIdeal, q: int) -> GroebnerIdeal:
    """The ideal generated by q-th powers of the generators."""
    ideal.ring.field.power_exponent(q)
    return GroebnerIdeal(ideal.ring, [g.frobenius(q) for g in ideal.generators], budget=ideal.budget)


def intersection(first: GroebnerIdeal, second: GroebnerIdeal) -> GroebnerIdeal:
    """I ∩ J as the t-free part of t*I + (1-t)*J, t in a dominant block."""
    ring = first.ring
    if second.ring != ring:
        raise AmbientMismatchError("Intersection of ideals in different rings")
    if first.is_zero or second.is_zero:
        return GroebnerIdeal(ring, [])
    (t_name,) = ring.fresh_names(1)
    ext = ring.extend([t_name])
    t = ext.gen(t_name)
    gens = [t * g.to_ring(ext) for g in first.basis]
    gens += [(ext.one() - t) * h.to_ring(ext) for h in second.basis]
    completed = GroebnerIdeal(ext, gens, budget=first.budget).basis
    kept = [g for g in completed if all(e[-1] == 0 for e, _ in g.terms)]
    back = list(range(ring.nvars))
    return GroebnerIdeal(ring, [_contract(g, ring, back) for g in kept], budget=first.budget)


def _contract(f: Polynomial, ring: PolyRing, keep: Sequence[int]) -> Polynomial:
    return Polynomial(ring, {tuple(e[i] for i in keep): c for e, c in f.terms})


def eliminate(ideal: GroebnerIdeal, variables: Sequence[str]) -> GroebnerIdeal:
    """I ∩ F_p[remaining variables], by a block order that eliminates `variables` first."""
    ring = ideal.ring
    block = tuple(sorted(ring.index(v) for v in variables))
    elim_ring = ring.with_order(MonomialOrder(ring.order.kind, ring.order.priority, eliminate=block))
    completed = GroebnerIdeal(elim_ring, [g.to_ring(elim_ring) for g in ideal.generators],
                              budget=ideal.budget).basis
    kept = [g for g in completed if all(all(e[i] == 0 for i in block) for e, _ in g.terms)]
    return GroebnerIdeal(ring, [g.to_ring(ring) for g in kept], budget=ideal.budget)


def colon(ideal: GroebnerIdeal, f: Polynomial) -> GroebnerIdeal:
    """(I : f) = {g : g f in I}, from I ∩ (f) divided by f.

    Raises:
        ZeroElementError: If f is zero.
    """
    if f.ring != ideal.ring:
        raise AmbientMismatchError(f"{f} is not in {ideal.ring.variables}")
    if f.is_zero:
        raise ZeroElementError("Colon by the zero polynomial")
    if ideal.is_zero:
        return GroebnerIdeal(ideal.ring, [])
    if f.is_constant():
        return GroebnerIdeal(ideal.ring, ideal.basis, budget=ideal.budget)
    principal = GroebnerIdeal(ideal.ring, [f], budget=ideal.budget)
    meet = intersection(ideal, principal)
    return GroebnerIdeal(ideal.ring, [g.divide_exact(f) for g in meet.basis], budget=ideal.budget)


class QuotientRing:
    """F_p[variables] modulo a homogeneous ideal with sealed reduced basis."""

    def __init__(self, ring: PolyRing, defining: Optional[GroebnerIdeal] = None, name: str = ''):
        if defining is None:
            defining = GroebnerIdeal(ring, [])
        if defining.ring != ring:
            raise AmbientMismatchError("Defining ideal lives in another ring")
        for g in defining.generators:
            if not g.is_homogeneous():
                raise InhomogeneousIdealError(
                    f"Defining ideal must be homogeneous; generator {g} is not")
        self.ring = ring
        self.defining = defining
        self.name = name
        _ = defining.basis
        self._dimension: Optional[int] = None
        self._lock = threading.Lock()

    @classmethod
    def polynomial_ring(cls, ring: PolyRing, name: str = '') -> 'QuotientRing':
        return cls(ring, GroebnerIdeal(ring, []), name=name)

    @property
    def nvars(self) -> int:
        return self.ring.nvars

    @property
    def p(self) -> int:
        return self.ring.p

    @property
    def is_polynomial_ring(self) -> bool:
        return self.defining.is_zero

    def normal_form(self, f: Polynomial) -> Polynomial:
        return self.defining.normal_form(f)

    def element(self, text: str) -> Polynomial:
        return self.normal_form(self.ring.parse(text))

    def var(self, name: str) -> Polynomial:
        return self.normal_form(self.ring.gen(name))

    def is_zero(self, f: Polynomial) -> bool:
        return self.normal_form(f).is_zero

    def quotient_by(self, elements: Iterable[Polynomial], name: str = '') -> 'QuotientRing':
        gens = list(self.defining.basis) + [self.normal_form(f) for f in elements]
        return QuotientRing(self.ring, GroebnerIdeal(self.ring, gens, budget=self.defining.budget), name=name)

    def initial_ideal(self) -> InitialIdeal:
        return self.defining.initial_ideal()

    @property
    def dimension(self) -> int:
        if self._dimension is None:
            with self._lock:
                if self._dimension is None:
                    self._dimension = krull_dimension(self)
        return self._dimension

    @property
    def is_artinian(self) -> bool:
        return self.dimension == 0

    def hilbert_function(self, degree: int) -> int:
        return self.initial_ideal().hilbert_function(degree)

    def __eq__(self, other) -> bool:
        if not isinstance(other, QuotientRing):
            return NotImplemented
        return self.ring == other.ring and self.defining.basis == other.defining.basis

    def __hash__(self) -> int:
        return hash((self.ring, self.defining.basis))

    def describe(self) -> str:
        gens = ', '.join(str(g) for g in self.defining.basis) or '0'
        return f"F_{self.p}[{','.join(self.ring.variables)}]/({gens})"

    def __repr__(self) -> str:
        return f"QuotientRing({self.describe()})"


def is_nonzerodivisor(f: Polynomial, ring: QuotientRing) -> bool:
    """Whether multiplication by f is injective on the quotient ring.

    Raises:
        ZeroElementError: If f is zero in the ring.
    """
    reduced = ring.normal_form(f)
    if reduced.is_zero:
        raise ZeroElementError(f"{f} is zero in {ring.describe()}")
    if ring.defining.is_zero:
        return True
    quotient = colon(ring.defining, reduced)
    return all(ring.defining.contains(g) for g in quotient.generators)


def last_variable_criterion(name: str, ring: QuotientRing) -> Optional[bool]:
    """Initial-ideal test for the least significant variable of a graded reverse lex order.

    Returns True when no minimal generator of the initial ideal is divisible
    by the variable (then it is a nonzerodivisor), False when some is, and
    None when the order is not graded reverse lex with that variable last.
    """
    order = ring.ring.order
    index = ring.ring.index(name)
    if order.kind is not OrderKind.GREVLEX or order.eliminate or order.priority[-1] != index:
        return None
    return not ring.initial_ideal().divisible_by_variable(index)


def krull_dimension(ring: QuotientRing) -> int:
    """Krull dimension via independent sets of the initial ideal.

    Raises:
        UnitIdealError: For the zero ring.
    """
    initial = ring.initial_ideal()
    if initial.is_unit:
        raise UnitIdealError(f"{ring.describe()} is the zero ring")
    return initial.dimension()
