import pytest

from src import config
from src.budget import Budget, BudgetExceededError, Stopwatch
from src.config import budget_setting, default_budget, get_config


def test_config_values_are_typed():
    assert isinstance(config.MAX_DEGREE, int)
    assert isinstance(config.TIME_LIMIT, float)
    assert config.OUTPUT_FORMAT in ('json', 'text')
    assert get_config('logging', 'level')


def test_missing_config_key():
    with pytest.raises(ValueError):
        get_config('engine', 'no_such_key')
    with pytest.raises(ValueError):
        get_config('no_such_section', 'max_degree')


def test_environment_overrides_budget_caps(monkeypatch):
    monkeypatch.setenv('FROBRIG_MAX_DEGREE', '17')
    monkeypatch.setenv('FROBRIG_TIME_LIMIT', '2.5')
    budget = default_budget()
    assert budget.max_degree == 17
    assert budget.time_limit == 2.5
    monkeypatch.setenv('FROBRIG_MAX_STEPS', 'many')
    with pytest.raises(ValueError):
        budget_setting('max_steps')
    with pytest.raises(ValueError):
        budget_setting('max_q')


@pytest.mark.parametrize('field', ['max_degree', 'max_steps', 'max_rank', 'time_limit'])
def test_caps_must_be_positive(field):
    with pytest.raises(ValueError):
        Budget(**{field: 0})


@pytest.mark.parametrize('check, reason', [
    (lambda b: b.check_degree(3, 'here'), 'DEGREE_CAP'),
    (lambda b: b.check_steps(3, 'here'), 'STEP_CAP'),
    (lambda b: b.check_rank(3, 'here'), 'RANK_CAP'),
])
def test_checks_raise_their_reason_code(check, reason):
    budget = Budget(max_degree=2, max_steps=2, max_rank=2)
    with pytest.raises(BudgetExceededError) as info:
        check(budget)
    assert info.value.reason_code == reason
    assert 'here' in info.value.detail


def test_caps_are_inclusive():
    budget = Budget(max_degree=2, max_steps=2, max_rank=2)
    budget.check_degree(2, 'edge')
    budget.check_steps(2, 'edge')
    budget.check_rank(2, 'edge')


def test_stopwatch_time_limit(monkeypatch):
    watch = Budget(time_limit=1.0).start()
    assert isinstance(watch, Stopwatch)
    watch.check('early')
    monkeypatch.setattr(watch, 'elapsed', lambda: 5.0)
    with pytest.raises(BudgetExceededError) as info:
        watch.check('late')
    assert info.value.reason_code == 'TIME_LIMIT'
