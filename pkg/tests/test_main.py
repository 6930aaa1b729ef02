import json
from pathlib import Path

import pytest

from src.main import EXIT_INDETERMINATE, EXIT_INPUT, EXIT_OK, SCHEMA, SessionConfig, build_parser, main
from src.polynomial import FieldError
from src.resolution_cache import clear_resolution_cache

DATA = Path(__file__).resolve().parent.parent / 'data'


@pytest.fixture(autouse=True)
def workspace(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    clear_resolution_cache()
    yield tmp_path
    clear_resolution_cache()


def run(capsys, tmp_path, *argv):
    code = main([*argv, '--log-file', str(tmp_path / 'frobrig.log')])
    envelope = json.loads(capsys.readouterr().out)
    assert envelope['schema'] == SCHEMA
    return code, envelope


def data(name):
    return str(DATA / name)


def test_groebner_commands(capsys, tmp_path):
    code, envelope = run(capsys, tmp_path, 'gb', data('xy.ideal'))
    assert code == EXIT_OK
    assert envelope['command'] == 'gb'
    assert envelope['result'] == ['x', 'y']
    _, envelope = run(capsys, tmp_path, 'nf', data('xy.ideal'), '--poly', 'x + y')
    assert envelope['result'] == {'normal_form': '0'}
    _, envelope = run(capsys, tmp_path, 'colon', data('xy.ideal'), '--poly', 'x')
    assert envelope['result'] == ['1']
    _, envelope = run(capsys, tmp_path, 'bracket', data('xy.ideal'), '--n', '1')
    assert envelope['result']['q'] == 2
    assert sorted(envelope['result']['basis']) == ['x^2', 'y^2']


def test_module_invariants(capsys, tmp_path):
    assert run(capsys, tmp_path, 'dim', data('hypersurface.mod'))[1]['result'] == {'dimension': 0}
    assert run(capsys, tmp_path, 'length', data('hypersurface.mod'))[1]['result'] == {'length': 1}
    assert run(capsys, tmp_path, 'depth', data('hypersurface.mod'))[1]['result'] == {
        'depth': 0, 'method': 'auto'}
    assert run(capsys, tmp_path, 'length', data('plane_line.mod'))[1]['result'] == {
        'length': 'infinite'}


def test_resolutions(capsys, tmp_path):
    code, envelope = run(capsys, tmp_path, 'betti', data('hypersurface.mod'), '--steps', '3')
    assert code == EXIT_OK
    assert envelope['result']['totals'] == [1, 2, 2, 2]
    assert envelope['result']['complete'] is False
    _, envelope = run(capsys, tmp_path, 'resolve', data('plane_line.mod'), '--steps', '3')
    result = envelope['result']
    assert result['betti'] == {'0,0': 1, '1,1': 1}
    assert result['differentials'] == [[['x']]]
    assert result['twists'] == [[0], [1]]


def test_frobenius_and_tor(capsys, tmp_path):
    _, envelope = run(capsys, tmp_path, 'frobenius', data('truncated_x4.mod'), '--n', '1')
    assert envelope['result']['q'] == 2
    assert envelope['result']['relations'] == []
    assert envelope['result']['length'] == 4
    _, envelope = run(capsys, tmp_path, 'tor', data('truncated_x4.mod'), '--i', '1', '--n', '1')
    assert envelope['result']['length'] == 4
    assert envelope['result']['zero'] is False


def test_euler_characteristic_and_inequality(capsys, tmp_path):
    _, envelope = run(capsys, tmp_path, 'chi', data('plane_line.mod'), '--sequence', 'y')
    assert envelope['result']['chi'] == 1
    assert envelope['result']['tor_lengths'] == [1, 0]
    code, envelope = run(capsys, tmp_path, 'check-prop43', data('plane_line.mod'),
                         '--sequence', 'y', '--n', '1')
    assert code == EXIT_OK
    assert envelope['status'] == 'PASS'
    assert envelope['result']['left'] == envelope['result']['right'] == 2


def test_reports_are_logged(capsys, tmp_path):
    run(capsys, tmp_path, 'gb', data('xy.ideal'))
    lines = (tmp_path / 'reports.jsonl').read_text().splitlines()
    assert json.loads(lines[-1])['result'] == ['x', 'y']


def test_input_errors(capsys, tmp_path):
    code, envelope = run(capsys, tmp_path, 'nf', data('xy.ideal'))
    assert code == EXIT_INPUT
    assert envelope['error']['type'] == 'InputFormatError'
    code, envelope = run(capsys, tmp_path, 'gb', str(tmp_path / 'missing.ideal'))
    assert code == EXIT_INPUT
    code, envelope = run(capsys, tmp_path, 'verify', 'prop-4.3', '--p', '4')
    assert code == EXIT_INPUT
    assert envelope['error']['type'] == 'FieldError'
    code, envelope = run(capsys, tmp_path, 'verify', 'no-such-scenario')
    assert code == EXIT_INPUT
    assert envelope['error']['type'] == 'UnknownScenarioError'


def test_syntax_error_reports_its_position(capsys, tmp_path):
    bad = tmp_path / 'bad.ideal'
    bad.write_text("char 2\nvars x, y\ngenerators:\nx, z\n")
    code, envelope = run(capsys, tmp_path, 'gb', str(bad))
    assert code == EXIT_INPUT
    assert (envelope['error']['line'], envelope['error']['column']) == (4, 4)


def test_usage_errors_exit_with_input_status():
    with pytest.raises(SystemExit) as info:
        main(['frobnicate'])
    assert info.value.code == EXIT_INPUT


def test_budget_exhaustion_is_indeterminate(capsys, tmp_path):
    code, envelope = run(capsys, tmp_path, 'betti', data('hypersurface.mod'), '--steps', '3',
                         '--max-steps', '1')
    assert code == EXIT_INDETERMINATE
    assert envelope['status'] == 'INDETERMINATE'
    assert envelope['reason'] == 'STEP_CAP'


def test_verify_scenario(capsys, tmp_path):
    code, envelope = run(capsys, tmp_path, 'verify', 'prop-4.3')
    assert code == EXIT_OK
    assert envelope['status'] == 'PASS'
    assert envelope['result']['id'] == 'prop-4.3'


def test_session_config_validation():
    args = build_parser().parse_args(['betti', 'M.mod', '--steps', '2', '--max-degree', '12'])
    cfg = SessionConfig.from_args(args)
    assert cfg.budget.max_degree == 12
    assert cfg.budget_overrides == (('max_degree', 12),)
    with pytest.raises(FieldError):
        SessionConfig('verify', p=6)
    with pytest.raises(ValueError):
        SessionConfig('tor', n=0)
    with pytest.raises(ValueError):
        SessionConfig('nope')
