import pytest

from src import paperlab
from src.budget import Budget, BudgetExceededError
from src.paperlab import (
    Assertion,
    Expectation,
    Outcome,
    Provenance,
    Scenario,
    ScenarioFormatError,
    ScenarioReport,
    UnknownScenarioError,
    build_determinantal,
    complementary_minor,
    determinantal_power_family,
    enumerate_cyclic_modules,
    generate_artinian_frobenius_trivial,
    load_scenario,
    ring_from_text,
    run_scenario,
    run_scenarios,
)

SMALL_SCENARIO = """\
[scenario]
id = prop-4.3
description = two instances

[parameters]
p = 2
n = 1

[budget]
max_steps = 5

[expect]
satisfied_count = 1 | trivial | counted by hand
"""


def test_determinantal_ring():
    ring = build_determinantal(2)
    assert ring.nvars == 9
    assert len(ring.defining.generators) == 9
    ambient = ring.ring
    assert complementary_minor(ambient, 3, 3) == ambient.parse('x11*x22 - x12*x21')
    with pytest.raises(ValueError):
        build_determinantal(2, size=3, minors=4)


@pytest.mark.parametrize('n, size', [(2, 13), (3, 16)])
def test_power_family_size(n, size):
    ambient = build_determinantal(3).ring
    family = determinantal_power_family(ambient, n)
    assert len(family) == size
    assert ambient.parse(f'x11^{n}') in family


def test_artinian_generator_is_deterministic():
    first = generate_artinian_frobenius_trivial(3, 2, seed=7)
    second = generate_artinian_frobenius_trivial(3, 2, seed=7)
    assert [str(g) for g in first.defining.generators] == [str(g) for g in second.defining.generators]
    assert all(first.is_zero(g ** 3) for g in first.ring.gens())
    assert first.dimension == 0
    with pytest.raises(ValueError):
        generate_artinian_frobenius_trivial(3, 0, seed=1)


def test_ring_from_text():
    ring = ring_from_text(3, 'x, y : x^2 + x*y')
    assert ring.describe() == 'F_3[x,y]/(x^2 + x*y)'
    assert ring_from_text(2, 'x, y :').is_polynomial_ring
    with pytest.raises(ScenarioFormatError):
        ring_from_text(2, ' : x')


def test_enumerate_cyclic_modules(plane):
    modules = enumerate_cyclic_modules(plane, 1, 10)
    assert {m.name for m in modules} == {'R/(x)', 'R/(y)', 'R/(x, y)'}
    finite = enumerate_cyclic_modules(plane, 1, 10, finite_length_only=True)
    assert [m.name for m in finite] == ['R/(x, y)']
    assert len(enumerate_cyclic_modules(plane, 2, 2)) == 2


@pytest.mark.parametrize('text', ['4 | PUBLISHED', '4 | guessed | somewhere'])
def test_expectation_errors(text):
    with pytest.raises(ScenarioFormatError):
        Expectation.parse('count', text)


def test_scenario_text_and_overrides():
    scenario = Scenario.from_text(SMALL_SCENARIO)
    assert scenario.budget.max_steps == 5
    assert scenario.expectations['satisfied_count'] == Expectation('1', Provenance.TRIVIAL, 'counted by hand')
    changed = scenario.with_overrides({'p': 3, 'n': None}, Budget(max_degree=7))
    assert changed.parameters == {'p': '3', 'n': '1'}
    assert changed.budget.max_degree == 7
    assert scenario.parameters['p'] == '2'
    with pytest.raises(ScenarioFormatError):
        scenario.param('instances')
    with pytest.raises(ScenarioFormatError):
        Scenario.from_text("[scenario]\nid = x\n")


def test_load_scenario(tmp_path):
    assert load_scenario('prop-4.3').id == 'prop-4.3'
    with pytest.raises(UnknownScenarioError):
        load_scenario('lemma-9.9')
    (tmp_path / 'prop-4.3.ini').write_text(SMALL_SCENARIO.replace('id = prop-4.3', 'id = lichtenbaum'))
    with pytest.raises(ScenarioFormatError):
        load_scenario('prop-4.3', tmp_path)


def test_report_status_ordering():
    def report(*statuses):
        return ScenarioReport('s', {}, [Assertion(f'a{k}', s, None, None) for k, s in enumerate(statuses)])

    assert report().status is Outcome.PASS
    assert report(Outcome.PASS, Outcome.FLAGGED).status is Outcome.PASS
    assert report(Outcome.PASS, Outcome.INDETERMINATE).status is Outcome.INDETERMINATE
    assert report(Outcome.INDETERMINATE, Outcome.FAIL).status is Outcome.FAIL
    assert report(Outcome.FLAGGED).to_dict()['assertions'][0]['status'] == 'FLAGGED'


def test_frobenius_inequality_scenario():
    report = run_scenario(load_scenario('prop-4.3'))
    assert report.status is Outcome.PASS, report.to_text()
    assert report.assertion('satisfied_count').observed == '4'
    assert report.assertion('unmet_count').observed == '2'
    assert report.assertion('first_instance_sides').observed == '2,2'
    assert report.assertion('inequality_holds').provenance == 'PUBLISHED'


def test_budget_exhaustion_outside_a_check(monkeypatch):
    def capped(scenario, recorder):
        raise BudgetExceededError('DEGREE_CAP', 'completion: degree 5 > 4')

    monkeypatch.setitem(paperlab._RUNNERS, 'prop-4.3', capped)
    report = run_scenario(load_scenario('prop-4.3'))
    assert report.status is Outcome.INDETERMINATE
    assert report.assertion('budget').reason == 'DEGREE_CAP'


def test_unregistered_scenario_cannot_run():
    scenario = Scenario.from_text(SMALL_SCENARIO.replace('id = prop-4.3', 'id = elsewhere'))
    with pytest.raises(UnknownScenarioError):
        run_scenario(scenario)


@pytest.mark.slow
def test_numerical_rigidity_scenario():
    report = run_scenario(load_scenario('numerical-rigidity'))
    assert report.status is Outcome.PASS, report.to_text()
    assert report.assertion('truncated_verdict').observed == 'UNEQUAL'


@pytest.mark.slow
@pytest.mark.parametrize('scenario_id', [
    'lemma-3.2',
    'example-3.6',
    'remark-4.6',
    'kunz-regular',
    'psh-hypersurface',
    'artinian-frobenius-trivial',
    'lichtenbaum',
    'oracle-crosscheck',
])
def test_published_scenarios_pass(scenario_id):
    report, = run_scenarios([load_scenario(scenario_id)], max_workers=1)
    assert report.status is Outcome.PASS, report.to_text()


@pytest.mark.parametrize('p', [2, 3, 5])
@pytest.mark.parametrize('n', [2, 3])
def test_determinantal_basis_grid(p, n):
    report = run_scenario(load_scenario('lemma-3.2').with_overrides({'p': p, 'n': n}))
    assert report.status is Outcome.PASS, report.to_text()
    assert report.assertion('basis_family').observed == 'match'
    assert report.assertion('x33_nonzerodivisor').observed == 'true'


def test_heavy_scenarios_ship_with_raised_caps():
    assert load_scenario('example-3.6').budget.max_rank == 20000
    assert load_scenario('remark-4.6').budget.max_rank == 20000
    assert load_scenario('kunz-regular').budget.max_degree == 80
