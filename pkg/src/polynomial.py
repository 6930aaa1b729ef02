"""
Exact arithmetic over prime fields and multivariate polynomials.

Polynomials are immutable: a ring descriptor plus a tuple of
(exponent vector, coefficient) pairs sorted strictly decreasing in the
ring's monomial order. Coefficients are residues in [0, p).
"""

import re
from dataclasses import dataclass, field as dc_field
from enum import Enum
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

import sympy as sp
from sympy.polys.polyerrors import BasePolynomialError
from sympy.parsing.sympy_parser import (
    convert_xor,
    implicit_multiplication,
    parse_expr,
    standard_transformations,
)

Monomial = Tuple[int, ...]

_MAX_CHARACTERISTIC = 2 ** 31


class FieldError(ValueError):
    """Invalid characteristic."""


class AmbientMismatchError(ValueError):
    """Operands live in different polynomial rings."""


class FrobeniusExponentError(ValueError):
    """Exponent is not a power of the characteristic."""


class PolynomialSyntaxError(ValueError):
    """Malformed polynomial text; column is 1-based."""

    def __init__(self, message: str, column: int = 1):
        super().__init__(message)
        self.column = column


@dataclass(frozen=True)
class PrimeField:
    """The field F_p for a prime p < 2^31."""
    p: int

    def __post_init__(self):
        if isinstance(self.p, bool) or not isinstance(self.p, int):
            raise FieldError(f"Characteristic must be an integer, got {self.p!r}")
        if self.p >= _MAX_CHARACTERISTIC:
            raise FieldError(f"Characteristic {self.p} exceeds 2^31")
        if not sp.isprime(self.p):
            raise FieldError(f"Characteristic {self.p} is not prime")

    def reduce(self, a: int) -> int:
        return a % self.p

    def inverse(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return pow(a, -1, self.p)

    def power_exponent(self, q: int) -> int:
        """Return n with q = p^n.

        Raises:
            FrobeniusExponentError: If q is not a positive power of p.
        """
        if isinstance(q, bool) or not isinstance(q, int) or q < self.p:
            raise FrobeniusExponentError(f"{q} is not a power of {self.p}")
        n, rest = 0, q
        while rest % self.p == 0:
            rest //= self.p
            n += 1
        if rest != 1:
            raise FrobeniusExponentError(f"{q} is not a power of {self.p}")
        return n

    def symmetric(self, a: int) -> int:
        """Representative of a in (-p/2, p/2], used for printing."""
        a %= self.p
        return a - self.p if a > self.p // 2 else a


class OrderKind(str, Enum):
    LEX = 'lex'
    GRLEX = 'grlex'
    GREVLEX = 'grevlex'


ORDER_ALIASES = {
    'lex': OrderKind.LEX,
    'grlex': OrderKind.GRLEX,
    'deglex': OrderKind.GRLEX,
    'graded-lex': OrderKind.GRLEX,
    'grevlex': OrderKind.GREVLEX,
    'degrevlex': OrderKind.GREVLEX,
    'graded-reverse-lex': OrderKind.GREVLEX,
}


class Ordering(Enum):
    LT = -1
    EQ = 0
    GT = 1


@dataclass(frozen=True)
class MonomialOrder:
    """A monomial order on exponent vectors.

    `priority` lists variable indices from most to least significant.
    Graded reverse lex: higher total degree wins; ties are broken by the
    least significant variable with unequal exponent, smaller exponent
    winning. `eliminate` names a dominant block: the total degree in
    those variables is compared before anything else.

    `sort_key(e)` is a flat tuple of ints; u > v iff key(u) > key(v).
    """
    kind: OrderKind
    priority: Tuple[int, ...]
    eliminate: Tuple[int, ...] = ()
    sort_key: Callable[[Monomial], Tuple[int, ...]] = dc_field(
        init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, 'kind', OrderKind(self.kind))
        if sorted(self.priority) != list(range(len(self.priority))):
            raise ValueError(f"Priority {self.priority} is not a permutation of the variables")
        if any(i not in self.priority for i in self.eliminate):
            raise ValueError(f"Elimination block {self.eliminate} outside the variables")
        object.__setattr__(self, 'sort_key', self._build_key())

    @classmethod
    def of(cls, kind: str, nvars: int, priority: Optional[Sequence[int]] = None) -> 'MonomialOrder':
        try:
            resolved = ORDER_ALIASES[str(kind).lower()]
        except KeyError:
            raise ValueError(f"Unknown monomial order '{kind}'")
        return cls(resolved, tuple(priority) if priority is not None else tuple(range(nvars)))

    @property
    def nvars(self) -> int:
        return len(self.priority)

    def _build_key(self) -> Callable[[Monomial], Tuple[int, ...]]:
        prio = self.priority
        rev = tuple(reversed(prio))
        if self.kind is OrderKind.LEX:
            def base(e):
                return tuple(e[i] for i in prio)
        elif self.kind is OrderKind.GRLEX:
            def base(e):
                return (sum(e),) + tuple(e[i] for i in prio)
        else:
            def base(e):
                return (sum(e),) + tuple(-e[i] for i in rev)
        if not self.eliminate:
            return base
        block = self.eliminate

        def key(e):
            return (sum(e[i] for i in block),) + base(e)
        return key

    def is_graded(self) -> bool:
        return self.kind is not OrderKind.LEX and not self.eliminate

    def __reduce__(self):
        # sort_key is a closure; rebuild it instead of pickling it
        return (MonomialOrder, (self.kind, self.priority, self.eliminate))


def compare(u: Monomial, v: Monomial, order: MonomialOrder) -> Ordering:
    """Compare two monomials in the given order.

    Raises:
        ValueError: If the exponent vectors have different lengths.
    """
    if len(u) != len(v) or len(u) != order.nvars:
        raise ValueError(f"Monomial length mismatch: {len(u)} vs {len(v)} (order on {order.nvars})")
    ku, kv = order.sort_key(u), order.sort_key(v)
    if ku == kv:
        return Ordering.EQ
    return Ordering.GT if ku > kv else Ordering.LT


def monomial_divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def monomial_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x if x >= y else y for x, y in zip(a, b))


def monomial_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def monomial_quotient(a: Monomial, b: Monomial) -> Monomial:
    """a / b, assuming b divides a."""
    return tuple(x - y for x, y in zip(a, b))


_IDENTIFIER = re.compile(r'[A-Za-z_][A-Za-z0-9_]*')
_ILLEGAL = re.compile(r'[^\sA-Za-z0-9_+\-*^()]')
_TRANSFORMS = standard_transformations + (implicit_multiplication, convert_xor)


@dataclass(frozen=True)
class PolyRing:
    """Ambient ring descriptor: F_p[variables] with a fixed monomial order."""
    field: PrimeField
    variables: Tuple[str, ...]
    order: MonomialOrder

    def __post_init__(self):
        if len(set(self.variables)) != len(self.variables):
            raise ValueError(f"Duplicate variable names in {self.variables}")
        if self.order.nvars != len(self.variables):
            raise ValueError("Order and variable count disagree")

    @classmethod
    def create(cls, p: int, variables: Iterable[str], order: str = 'grevlex',
               priority: Optional[Sequence[str]] = None) -> 'PolyRing':
        names = tuple(variables)
        prio = None if priority is None else [names.index(v) for v in priority]
        return cls(PrimeField(p), names, MonomialOrder.of(order, len(names), prio))

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def index(self, name: str) -> int:
        try:
            return self.variables.index(name)
        except ValueError:
            raise ValueError(f"Unknown variable '{name}'")

    def zero(self) -> 'Polynomial':
        return Polynomial(self, {})

    def one(self) -> 'Polynomial':
        return self.constant(1)

    def constant(self, c: int) -> 'Polynomial':
        return Polynomial(self, {(0,) * self.nvars: c})

    def monomial(self, exps: Sequence[int], coeff: int = 1) -> 'Polynomial':
        return Polynomial(self, {tuple(exps): coeff})

    def gen(self, name: str) -> 'Polynomial':
        exps = [0] * self.nvars
        exps[self.index(name)] = 1
        return self.monomial(exps)

    def gens(self) -> List['Polynomial']:
        return [self.gen(v) for v in self.variables]

    def symbols(self) -> Tuple[sp.Symbol, ...]:
        return tuple(sp.Symbol(v) for v in self.variables)

    def from_sympy(self, expr) -> 'Polynomial':
        """Convert an integer-coefficient sympy expression in this ring's symbols."""
        try:
            poly = sp.Poly(sp.expand(expr), *self.symbols(), domain='ZZ')
        except (BasePolynomialError, TypeError) as e:
            raise PolynomialSyntaxError(f"Not a polynomial with integer coefficients: {e}")
        return Polynomial(self, {tuple(e): int(c) for e, c in poly.terms()})

    def parse(self, text: str) -> 'Polynomial':
        return parse_polynomial(text, self)

    def with_order(self, order: MonomialOrder) -> 'PolyRing':
        return PolyRing(self.field, self.variables, order)

    def extend(self, names: Sequence[str]) -> 'PolyRing':
        """Append variables as a dominant elimination block.

        The new variables get the lowest priority inside the base order but
        are eliminated first.
        """
        n = self.nvars
        fresh = tuple(names)
        order = MonomialOrder(
            self.order.kind,
            self.order.priority + tuple(range(n, n + len(fresh))),
            eliminate=tuple(range(n, n + len(fresh))),
        )
        return PolyRing(self.field, self.variables + fresh, order)

    def fresh_names(self, count: int, stem: str = '_t') -> List[str]:
        names, k = [], 0
        while len(names) < count:
            candidate = f"{stem}{k}"
            if candidate not in self.variables:
                names.append(candidate)
            k += 1
        return names


class Polynomial:
    """Immutable polynomial in canonical form."""

    __slots__ = ('ring', 'terms', '_hash')

    def __init__(self, ring: PolyRing, terms: Dict[Monomial, int]):
        p = ring.field.p
        cleaned = {}
        for e, c in terms.items():
            c %= p
            if c:
                cleaned[tuple(e)] = c
        key = ring.order.sort_key
        self.ring = ring
        self.terms: Tuple[Tuple[Monomial, int], ...] = tuple(
            sorted(cleaned.items(), key=lambda t: key(t[0]), reverse=True))
        self._hash = None

    # -- structure ----------------------------------------------------

    def as_dict(self) -> Dict[Monomial, int]:
        return dict(self.terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def lm(self) -> Monomial:
        if not self.terms:
            raise ValueError("Zero polynomial has no leading monomial")
        return self.terms[0][0]

    @property
    def lc(self) -> int:
        if not self.terms:
            raise ValueError("Zero polynomial has no leading coefficient")
        return self.terms[0][1]

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e, _ in self.terms), default=-1)

    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e, _ in self.terms)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e, _ in self.terms}) <= 1

    def monic(self) -> 'Polynomial':
        if self.is_zero:
            return self
        return self.scale(self.ring.field.inverse(self.lc))

    # -- arithmetic ---------------------------------------------------

    def _check(self, other: 'Polynomial') -> None:
        if not isinstance(other, Polynomial):
            raise TypeError(f"Expected Polynomial, got {type(other).__name__}")
        if other.ring != self.ring:
            raise AmbientMismatchError(
                f"Ambient mismatch: {self.ring.variables} over F_{self.ring.p} vs "
                f"{other.ring.variables} over F_{other.ring.p}")

    def _coerce(self, other) -> 'Polynomial':
        if isinstance(other, int) and not isinstance(other, bool):
            return self.ring.constant(other)
        self._check(other)
        return other

    def __add__(self, other) -> 'Polynomial':
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms:
            out[e] = out.get(e, 0) + c
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self) -> 'Polynomial':
        return Polynomial(self.ring, {e: -c for e, c in self.terms})

    def __sub__(self, other) -> 'Polynomial':
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> 'Polynomial':
        return self._coerce(other) - self

    def __mul__(self, other) -> 'Polynomial':
        other = self._coerce(other)
        p = self.ring.field.p
        out: Dict[Monomial, int] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = monomial_mul(e1, e2)
                out[e] = (out.get(e, 0) + c1 * c2) % p
        return Polynomial(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> 'Polynomial':
        if k < 0:
            raise ValueError("Negative powers are not polynomials")
        result, base = self.ring.one(), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c: int) -> 'Polynomial':
        return Polynomial(self.ring, {e: c * v for e, v in self.terms})

    def mul_term(self, exps: Monomial, c: int = 1) -> 'Polynomial':
        return Polynomial(self.ring, {monomial_mul(e, exps): c * v for e, v in self.terms})

    def frobenius(self, q: int) -> 'Polynomial':
        """Return self^q for q a power of the characteristic.

        In characteristic p, (sum c m)^q = sum c^q m^q and c^q = c.
        """
        self.ring.field.power_exponent(q)
        return Polynomial(self.ring, {tuple(q * x for x in e): c for e, c in self.terms})

    def divide_exact(self, divisor: 'Polynomial') -> 'Polynomial':
        """Quotient of an exact division.

        Raises:
            ZeroDivisionError: If divisor is zero.
            ValueError: If divisor does not divide self.
        """
        self._check(divisor)
        quotients, remainder = divide(self, [divisor])
        if not remainder.is_zero:
            raise ValueError(f"{divisor} does not divide {self}")
        return quotients[0]

    def to_ring(self, ring: PolyRing, index_map: Optional[Sequence[int]] = None) -> 'Polynomial':
        """Re-express in another ring.

        index_map[i] is the target index of variable i; by default the
        variables are matched by name.
        """
        if index_map is None:
            index_map = [ring.index(v) for v in self.ring.variables]
        out = {}
        for e, c in self.terms:
            target = [0] * ring.nvars
            for i, x in enumerate(e):
                if x:
                    target[index_map[i]] += x
            out[tuple(target)] = c
        return Polynomial(ring, out)

    # -- comparison / printing ---------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, int) and not isinstance(other, bool):
            other = self.ring.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ring, self.terms))
        return self._hash

    def __bool__(self) -> bool:
        return not self.is_zero

    def __str__(self) -> str:
        if not self.terms:
            return '0'
        pieces = []
        for e, c in self.terms:
            c = self.ring.field.symmetric(c)
            mono = '*'.join(
                v if x == 1 else f"{v}^{x}"
                for v, x in zip(self.ring.variables, e) if x)
            if not mono:
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}"
            sign = '-' if c < 0 else '+'
            pieces.append((sign, body))
        first_sign, first_body = pieces[0]
        text = ('-' if first_sign == '-' else '') + first_body
        for sign, body in pieces[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self) -> str:
        return f"Polynomial({self})"


def poly_arith(a: Polynomial, b: Polynomial, op: str) -> Polynomial:
    """Add, subtract or multiply two polynomials of the same ring.

    Raises:
        AmbientMismatchError: If the rings differ.
        ValueError: If op is unknown.
    """
    a._check(b)
    if op == 'add':
        return a + b
    if op == 'sub':
        return a - b
    if op == 'mul':
        return a * b
    raise ValueError(f"Unknown operation '{op}'")


def frobenius_power(a: Polynomial, q: int) -> Polynomial:
    return a.frobenius(q)


def divide(f: Polynomial, divisors: Sequence[Polynomial]) -> Tuple[List[Polynomial], Polynomial]:
    """Division algorithm: f = sum q_i g_i + r with no term of r divisible by any lm(g_i).

    Divisors are tried in the given order.
    """
    ring = f.ring
    for g in divisors:
        f._check(g)
        if g.is_zero:
            raise ZeroDivisionError("Division by the zero polynomial")
    p = ring.field.p
    key = ring.order.sort_key
    leads = [(g.lm, ring.field.inverse(g.lc), g) for g in divisors]
    quotients: List[Dict[Monomial, int]] = [{} for _ in divisors]
    rest = dict(f.terms)
    remainder: Dict[Monomial, int] = {}
    while rest:
        m = max(rest, key=key)
        c = rest.pop(m)
        for i, (lm, inv, g) in enumerate(leads):
            if monomial_divides(lm, m):
                shift = monomial_quotient(m, lm)
                factor = c * inv % p
                quotients[i][shift] = (quotients[i].get(shift, 0) + factor) % p
                for e, gc in g.terms[1:]:
                    t = monomial_mul(e, shift)
                    v = (rest.get(t, 0) - factor * gc) % p
                    if v:
                        rest[t] = v
                    else:
                        rest.pop(t, None)
                break
        else:
            remainder[m] = c
    return [Polynomial(ring, q) for q in quotients], Polynomial(ring, remainder)


def parse_polynomial(text: str, ring: PolyRing) -> Polynomial:
    """Parse polynomial text such as 'x22*x33 - x23*x32' or '3 x^2 y'.

    Raises:
        PolynomialSyntaxError: On illegal characters, unknown variables or
            non-polynomial expressions; the column points at the culprit.
    """
    if not text.strip():
        raise PolynomialSyntaxError("Empty polynomial", column=1)
    bad = _ILLEGAL.search(text)
    if bad:
        raise PolynomialSyntaxError(f"Unexpected character {bad.group()!r}", column=bad.start() + 1)
    names = set(ring.variables)
    for match in _IDENTIFIER.finditer(text):
        if match.group() not in names:
            raise PolynomialSyntaxError(f"Unknown variable '{match.group()}'", column=match.start() + 1)
    local = {v: s for v, s in zip(ring.variables, ring.symbols())}
    try:
        expr = parse_expr(text, local_dict=local, transformations=_TRANSFORMS, evaluate=True)
    except SyntaxError as e:
        raise PolynomialSyntaxError(f"Syntax error: {e.msg}", column=e.offset or 1)
    except (TypeError, ValueError, sp.SympifyError) as e:
        raise PolynomialSyntaxError(f"Cannot parse '{text}': {e}")
    return ring.from_sympy(expr)
