import random

import pytest

from src.budget import Budget, BudgetExceededError
from src.groebner import (
    GroebnerIdeal,
    InhomogeneousIdealError,
    QuotientRing,
    UnitIdealError,
    ZeroElementError,
    bracket_power,
    buchberger,
    colon,
    eliminate,
    intersection,
    is_nonzerodivisor,
    last_variable_criterion,
)
from src.polynomial import AmbientMismatchError, MonomialOrder, PolyRing


def test_reduced_basis_of_a_zero_dimensional_ideal(xy2):
    ideal = buchberger([xy2.parse('x^2'), xy2.parse('x*y + y^2')])
    assert [str(g) for g in ideal.basis] == ['x^2', 'x*y + y^2', 'y^3']
    assert ideal.verify()
    assert ideal.verify_certificate()
    assert ideal.contains(xy2.parse('y^3'))
    assert not ideal.contains(xy2.parse('x*y'))
    # 1 + 2 + 1 standard monomials, nothing from degree 3 on
    initial = ideal.initial_ideal()
    assert [initial.hilbert_function(d) for d in range(5)] == [1, 2, 1, 0, 0]
    assert initial.dimension() == 0


def test_basis_does_not_depend_on_generator_order(xy2):
    gens = [xy2.parse('x^2'), xy2.parse('x*y + y^2'), xy2.parse('y^3 + x*y^2')]
    assert GroebnerIdeal(xy2, gens) == GroebnerIdeal(xy2, list(reversed(gens)))


def test_zero_ideal_and_empty_input(xy2):
    zero = GroebnerIdeal(xy2, [xy2.zero()])
    assert zero.is_zero
    assert zero.basis == ()
    assert zero.normal_form(xy2.parse('x + y')) == xy2.parse('x + y')
    with pytest.raises(ValueError):
        buchberger([])


def test_buchberger_in_another_order():
    ring = PolyRing.create(7, ['x', 'y', 'z'])
    gens = [ring.parse('x - y'), ring.parse('y - z')]
    lex = MonomialOrder.of('lex', 3)
    ideal = buchberger(gens, order=lex)
    assert ideal.ring.order == lex
    assert len(ideal.basis) == 2


def test_generators_from_another_ring_are_rejected(xy2):
    other = PolyRing.create(3, ['x', 'y'])
    with pytest.raises(AmbientMismatchError):
        GroebnerIdeal(xy2, [other.gen('x')])


def test_intersection_and_colon(xy2):
    x, y = xy2.gen('x'), xy2.gen('y')
    meet = intersection(GroebnerIdeal(xy2, [x]), GroebnerIdeal(xy2, [y]))
    assert meet == GroebnerIdeal(xy2, [x * y])
    quotient = colon(GroebnerIdeal(xy2, [x ** 2, x * y]), x)
    assert quotient == GroebnerIdeal(xy2, [x, y])
    with pytest.raises(ZeroElementError):
        colon(GroebnerIdeal(xy2, [x]), xy2.zero())


def test_elimination_keeps_the_remaining_relation():
    ring = PolyRing.create(7, ['x', 'y', 'z'])
    ideal = GroebnerIdeal(ring, [ring.parse('x - y'), ring.parse('y - z')])
    eliminated = eliminate(ideal, ['y'])
    assert len(eliminated.basis) == 1
    assert eliminated.contains(ring.parse('x - z'))


def test_bracket_power_in_characteristic_two(xy2):
    ideal = GroebnerIdeal(xy2, [xy2.parse('x + y')])
    assert bracket_power(ideal, 2).generators == (xy2.parse('x^2 + y^2'),)


def test_quotient_ring_dimension_and_nonzerodivisors(hypersurface):
    assert hypersurface.dimension == 1
    assert not hypersurface.is_artinian
    # x^2 + xy = x(x + y): y avoids both minimal primes, x does not
    assert is_nonzerodivisor(hypersurface.var('y'), hypersurface)
    assert not is_nonzerodivisor(hypersurface.var('x'), hypersurface)
    with pytest.raises(ZeroElementError):
        is_nonzerodivisor(hypersurface.element('x^2 + x*y'), hypersurface)


def test_last_variable_criterion(hypersurface):
    # in(x^2 + xy) = (x^2) under graded reverse lex
    assert last_variable_criterion('y', hypersurface) is True
    assert last_variable_criterion('x', hypersurface) is None


def test_quotient_ring_rejects_inhomogeneous_and_unit_ideals(xy2):
    with pytest.raises(InhomogeneousIdealError):
        QuotientRing(xy2, GroebnerIdeal(xy2, [xy2.parse('x^2 + y')]))
    zero_ring = QuotientRing(xy2, GroebnerIdeal(xy2, [xy2.one()]))
    with pytest.raises(UnitIdealError):
        _ = zero_ring.dimension


def test_degree_cap_interrupts_completion(xy2):
    ideal = GroebnerIdeal(xy2, [xy2.parse('x^2'), xy2.parse('x*y + y^2')], budget=Budget(max_degree=2))
    with pytest.raises(BudgetExceededError) as info:
        _ = ideal.basis
    assert info.value.reason_code == 'DEGREE_CAP'


@pytest.mark.parametrize('seed', [3, 11, 29])
def test_bracket_power_ignores_the_generating_set(seed):
    ring = PolyRing.create(3, ['x', 'y', 'z'])
    rng = random.Random(seed)
    gens = [ring.parse('x^2'), ring.parse('x*y'), ring.parse('y*z + z^2')]
    extra = gens[0] * rng.randrange(1, 3) + gens[1] * rng.randrange(1, 3) + gens[2] * rng.randrange(1, 3)
    redundant = gens + [extra]
    rng.shuffle(redundant)
    for q in (3, 9):
        assert bracket_power(GroebnerIdeal(ring, redundant), q) == bracket_power(GroebnerIdeal(ring, gens), q)


def test_colon_by_a_variable_in_three_variables():
    ring = PolyRing.create(2, ['x', 'y', 'z'])
    x, y = ring.gen('x'), ring.gen('y')
    assert colon(GroebnerIdeal(ring, [x * y]), y) == GroebnerIdeal(ring, [x])
