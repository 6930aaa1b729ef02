import random

import pytest

from src.frobenius import (
    CheckStatus,
    FrobeniusPower,
    Verdict,
    frobenius_module,
    numerical_rigidity_check,
    psh_vanishing_check,
    rigidity_report,
    strong_rigidity_witness,
    tor_frobenius,
    tor_length,
)
from src.groebner import GroebnerIdeal, QuotientRing
from src.modules import InfiniteLengthError, PresentedModule, dimension, length
from src.paperlab import enumerate_cyclic_modules
from src.polynomial import FrobeniusExponentError, PolyRing


@pytest.fixture
def truncated():
    """F_2[x]/(x^4)."""
    ring = PolyRing.create(2, ['x'])
    return QuotientRing(ring, GroebnerIdeal(ring, [ring.parse('x^4')]))


def test_frobenius_power_bounds(hypersurface):
    power = FrobeniusPower.from_ring(hypersurface, 2)
    assert power.q == 4
    with pytest.raises(FrobeniusExponentError):
        FrobeniusPower.from_ring(hypersurface, 0)
    with pytest.raises(FrobeniusExponentError):
        FrobeniusPower.from_ring(hypersurface, 5, max_q=16)
    with pytest.raises(FrobeniusExponentError):
        FrobeniusPower(hypersurface, 2, 8)


def test_frobenius_module_raises_entries_and_twists(hypersurface):
    y = hypersurface.var('y')
    module = PresentedModule(hypersurface, [1], [(y,)], name='M')
    image = frobenius_module(module, FrobeniusPower.from_ring(hypersurface, 1))
    assert image.twists == (2,)
    assert image.relations == ((hypersurface.ring.parse('y^2'),),)
    assert image.name == 'F^1(M)'


def test_tor_zero_is_the_frobenius_image(hypersurface):
    power = FrobeniusPower.from_ring(hypersurface, 1)
    module = PresentedModule.cyclic(hypersurface, [hypersurface.var('y')])
    assert tor_frobenius(module, power, 0) == frobenius_module(module, power)
    with pytest.raises(ValueError):
        tor_frobenius(module, power, -1)


def test_truncated_polynomial_ring(truncated):
    power = FrobeniusPower.from_ring(truncated, 1)
    module = PresentedModule.cyclic(truncated, [truncated.element('x^2')])
    # F(R/(x^2)) = R/(x^4) = R
    assert length(frobenius_module(module, power)) == 4
    assert tor_length(module, power, 1) == 4
    report = numerical_rigidity_check(module, power)
    assert (report.frobenius_length, report.expected_length) == (4, 2)
    assert report.verdict is Verdict.UNEQUAL
    witness = strong_rigidity_witness(module, power)
    assert witness.verdict is Verdict.INCONCLUSIVE
    assert witness.reason == 'ZERO_DIMENSIONAL_RING'


def test_residue_field_over_a_zero_dimensional_ring_is_inconclusive():
    ring = PolyRing.create(2, ['x'])
    artinian = QuotientRing(ring, GroebnerIdeal(ring, [ring.parse('x^2')]))
    residue = PresentedModule.cyclic(artinian, [artinian.var('x')], name='k')
    report = strong_rigidity_witness(residue, FrobeniusPower.from_ring(artinian, 1))
    assert report.verdict is Verdict.INCONCLUSIVE
    assert report.pd_finite is False
    # F(k) = R/(x^2) = R has x in its socle
    assert report.frobenius_depth == 0
    assert report.reason == 'ZERO_DIMENSIONAL_RING'


def test_numerical_equality_over_a_hypersurface(hypersurface):
    module = PresentedModule.cyclic(hypersurface, [hypersurface.var('y')])
    for n, expected in ((1, 4), (2, 8)):
        power = FrobeniusPower.from_ring(hypersurface, n)
        report = numerical_rigidity_check(module, power, complete_intersection=True)
        assert report.frobenius_length == expected == report.expected_length
        assert report.verdict is Verdict.EQUAL
        assert report.pd_finite is True
        assert report.status is CheckStatus.PASS
    infinite = PresentedModule.cyclic(hypersurface, [hypersurface.var('x')])
    with pytest.raises(InfiniteLengthError):
        numerical_rigidity_check(infinite, FrobeniusPower.from_ring(hypersurface, 1))


def test_vanishing_agrees_with_projective_dimension(hypersurface):
    power = FrobeniusPower.from_ring(hypersurface, 1)
    finite = psh_vanishing_check(PresentedModule.cyclic(hypersurface, [hypersurface.var('y')]), power, 2)
    assert finite.pd_finite is True
    assert finite.tor_vanishes == {1: True, 2: True}
    assert finite.status is CheckStatus.PASS
    # ann(x^2) = (x + y) but the boundaries are only (x + y)^2
    infinite = psh_vanishing_check(PresentedModule.cyclic(hypersurface, [hypersurface.var('x')]), power, 1)
    assert infinite.pd_finite is False
    assert infinite.tor_vanishes == {1: False}
    assert infinite.status is CheckStatus.PASS
    assert infinite.to_dict()['tor_vanishes'] == {'1': False}


def test_zero_module_passes_trivially(hypersurface):
    report = psh_vanishing_check(PresentedModule.zero(hypersurface),
                                 FrobeniusPower.from_ring(hypersurface, 1), 3)
    assert report.status is CheckStatus.PASS
    assert report.reason == 'ZERO_MODULE'


def test_witness_is_inconclusive_when_the_image_has_depth_zero(hypersurface):
    module = PresentedModule.cyclic(hypersurface, [hypersurface.var('x')])
    report = strong_rigidity_witness(module, FrobeniusPower.from_ring(hypersurface, 1),
                                     assumptions={'gorenstein': True})
    assert report.pd_finite is False
    # R/(x^2) = F_2[x, y]/(x^2, xy) has x in its socle
    assert report.frobenius_depth == 0
    assert report.verdict is Verdict.INCONCLUSIVE
    assert report.to_dict()['assumptions'] == {'gorenstein': True}


def test_rigidity_report_grid(hypersurface):
    module = PresentedModule.cyclic(hypersurface, [hypersurface.var('y')], name='R/(y)')
    report = rigidity_report(module, [1, 2], 2, max_workers=2)
    assert report.module == 'R/(y)'
    assert report.tor_lengths == {'1,1': 0, '2,1': 0, '1,2': 0, '2,2': 0}
    assert report.pd_finite is True
    assert report.verdicts['numerical_rigidity,n=2'] == 'EQUAL'
    assert report.verdicts['strong_rigidity_witness,n=1'] == 'INCONCLUSIVE'
    assert report.frobenius_depths == {'1': 0, '2': 0}


def sample_modules(ring, seed, count=4):
    rng = random.Random(seed)
    modules = enumerate_cyclic_modules(ring, 2, 12)
    return rng.sample(modules, min(count, len(modules)))


@pytest.mark.parametrize('seed', [0, 1])
@pytest.mark.parametrize('ring_name', ['plane', 'hypersurface'])
def test_frobenius_iterates_compose(seed, ring_name, request):
    ring = request.getfixturevalue(ring_name)
    one, two = FrobeniusPower.from_ring(ring, 1), FrobeniusPower.from_ring(ring, 2)
    for module in sample_modules(ring, seed):
        twice = frobenius_module(frobenius_module(module, one), one)
        assert twice == frobenius_module(module, two), module.name


@pytest.mark.parametrize('seed', [0, 1])
@pytest.mark.parametrize('ring_name', ['plane', 'hypersurface'])
def test_frobenius_commutes_with_direct_sums(seed, ring_name, request):
    ring = request.getfixturevalue(ring_name)
    power = FrobeniusPower.from_ring(ring, 1)
    first, second = sample_modules(ring, seed, 2)
    combined = frobenius_module(first.direct_sum(second), power)
    assert combined == frobenius_module(first, power).direct_sum(frobenius_module(second, power))


@pytest.mark.parametrize('seed', [0, 1])
@pytest.mark.parametrize('ring_name', ['plane', 'hypersurface'])
def test_frobenius_preserves_dimension(seed, ring_name, request):
    ring = request.getfixturevalue(ring_name)
    for n in (1, 2):
        power = FrobeniusPower.from_ring(ring, n)
        for module in sample_modules(ring, seed):
            assert dimension(frobenius_module(module, power)) == dimension(module), module.name
