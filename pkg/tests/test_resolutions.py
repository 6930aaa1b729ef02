import random

import pytest

from src.budget import Budget, BudgetExceededError
from src.modules import GradedFreeModule, GradedMatrix, PresentedModule, dimension, length
from src.paperlab import enumerate_cyclic_modules
from src.resolution_cache import ResolutionCache
from src.resolutions import (
    FreeComplex,
    NotAComplexError,
    depth,
    homology,
    is_finite_pd,
    minimal_resolution,
    projective_dimension,
    ring_depth,
)


@pytest.fixture
def cache(tmp_path):
    return ResolutionCache(cache_file=str(tmp_path / 'resolutions.pkl'), enable_persistence=False)


def residue_field(ring):
    return PresentedModule.cyclic(ring, [ring.var(v) for v in ring.ring.variables], name='k')


def test_koszul_resolution_of_the_residue_field(plane, cache):
    complex_, betti = minimal_resolution(residue_field(plane), 4, cache=cache)
    assert betti.complete
    assert betti.totals() == [1, 2, 1]
    assert betti.beta(1, 1) == 2 and betti.beta(2, 2) == 1
    assert betti.projective_dimension == 2
    assert complex_.is_minimal()
    complex_.check()
    assert betti.to_json() == {'0,0': 1, '1,1': 2, '2,2': 1}
    assert betti.to_text() == 'total: 1 2 1\n    0: 1 2 1'


def test_residue_field_of_a_hypersurface_has_infinite_resolution(hypersurface, cache):
    _, betti = minimal_resolution(residue_field(hypersurface), 3, cache=cache)
    assert not betti.complete
    assert betti.totals() == [1, 2, 2, 2]
    assert betti.beta(3, 3) == 2
    assert betti.projective_dimension is None


def test_finite_pd_is_decided_one_step_past_the_ring_depth(hypersurface):
    assert ring_depth(hypersurface) == 1
    y_quotient = is_finite_pd(PresentedModule.cyclic(hypersurface, [hypersurface.var('y')]))
    assert y_quotient.finite
    assert y_quotient.projective_dimension == 1
    x_quotient = is_finite_pd(PresentedModule.cyclic(hypersurface, [hypersurface.var('x')]))
    # ann(x) = (x + y), so the resolution never stops
    assert not x_quotient.finite
    assert x_quotient.projective_dimension is None
    assert x_quotient.to_dict()['ring_depth'] == 1


def test_zero_module_has_pd_minus_one(hypersurface):
    verdict = is_finite_pd(PresentedModule.zero(hypersurface))
    assert verdict.finite and verdict.projective_dimension == -1


def test_projective_dimension_needs_enough_steps(plane, cache):
    k = residue_field(plane)
    assert projective_dimension(k, 1) is None
    assert projective_dimension(k, 3) == 2


def test_depth_by_both_methods(plane, hypersurface):
    ring_itself = PresentedModule.free(hypersurface)
    assert depth(ring_itself) == 1
    assert depth(ring_itself, method='koszul') == 1
    assert depth(residue_field(plane)) == 0
    assert depth(PresentedModule.free(plane), method='koszul') == 2
    assert ring_depth(plane) == 2
    with pytest.raises(ValueError):
        depth(ring_itself, method='random')


def test_homology_with_coefficients(plane, cache):
    k = residue_field(plane)
    complex_, _ = minimal_resolution(k, 4, cache=cache)
    assert length(homology(complex_, 0)) == 1
    assert homology(complex_, 1).is_zero
    # Tor_i(k, k) has dimensions 1, 2, 1
    assert [length(homology(complex_, i, k)) for i in range(3)] == [1, 2, 1]
    assert homology(complex_, 5, k).is_zero
    with pytest.raises(ValueError):
        homology(complex_, -1)


def test_frobenius_of_a_complex_scales_twists(plane, cache):
    complex_, _ = minimal_resolution(residue_field(plane), 4, cache=cache)
    pushed = complex_.frobenius(2)
    assert pushed.twists(2) == (4,)
    assert pushed.differential(1).entry(0, 0) == plane.ring.parse('x^2')


def test_non_complexes_are_rejected(xy2, plane):
    x, y = xy2.gen('x'), xy2.gen('y')
    d1 = GradedMatrix(xy2, [0], [1, 1], [(x,), (y,)])
    d2 = GradedMatrix(xy2, [1, 1], [2], [(x, xy2.zero())])
    modules = [GradedFreeModule((0,)), GradedFreeModule((1, 1)), GradedFreeModule((2,))]
    with pytest.raises(NotAComplexError):
        FreeComplex(plane, modules, [d1, d2])
    with pytest.raises(ValueError):
        FreeComplex(plane, modules[:2], [d1, d2])


def test_step_cap_and_negative_steps(plane, cache):
    k = residue_field(plane)
    with pytest.raises(BudgetExceededError) as info:
        minimal_resolution(k, 3, budget=Budget(max_steps=1), cache=cache)
    assert info.value.reason_code == 'STEP_CAP'
    with pytest.raises(ValueError):
        minimal_resolution(k, -1, cache=cache)


def test_injected_cache_is_used_even_when_empty(plane, cache):
    k = residue_field(plane)
    # warm the global cache
    minimal_resolution(k, 3)
    with pytest.raises(BudgetExceededError):
        minimal_resolution(k, 3, budget=Budget(max_steps=1), cache=cache)
    minimal_resolution(k, 3, cache=cache)
    assert cache.get_stats()['misses'] == 2


def test_cached_resolutions_respect_the_budget(plane, cache):
    k = residue_field(plane)
    minimal_resolution(k, 3, cache=cache)
    with pytest.raises(BudgetExceededError) as info:
        minimal_resolution(k, 3, budget=Budget(max_steps=1), cache=cache)
    assert info.value.reason_code == 'STEP_CAP'
    with pytest.raises(BudgetExceededError) as info:
        minimal_resolution(k, 3, budget=Budget(max_rank=1), cache=cache)
    assert info.value.reason_code == 'RANK_CAP'
    assert cache.get_stats()['hits'] == 2


def test_repeated_resolutions_come_from_the_cache(plane, cache):
    k = residue_field(plane)
    first, _ = minimal_resolution(k, 2, cache=cache)
    second, betti = minimal_resolution(k, 2, cache=cache)
    assert cache.get_stats()['hits'] == 1
    assert second.differential(2) == first.differential(2)
    assert betti.totals() == [1, 2, 1]


@pytest.mark.parametrize('seed', [0, 1])
@pytest.mark.parametrize('ring_name', ['plane', 'hypersurface'])
def test_depth_bounds(seed, ring_name, request):
    ring = request.getfixturevalue(ring_name)
    rng = random.Random(seed)
    modules = rng.sample(enumerate_cyclic_modules(ring, 2, 12), 4)
    for module in modules:
        module_depth = depth(module)
        assert module_depth <= dimension(module), module.name
        verdict = is_finite_pd(module)
        if verdict.finite:
            # Auslander-Buchsbaum
            assert verdict.projective_dimension + module_depth == ring_depth(ring), module.name
