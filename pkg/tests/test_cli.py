import csv
import io
import json
import os
import jsonschema
import numpy as np
import pytest
import pyteich as pt
from pyteich.cli import RunConfig, main, run_command, write_csv
from pyteich.cli.commands import REPORT_SCHEMA, SERIES_COLUMNS, SPECTRUM_COLUMNS
from pyteich.cli.run_config import RUN_CONFIG

def load_report(path: str) -> dict:
    with open(path, 'r') as report_file:
        return json.load(report_file)

def without_timing(report: dict) -> dict:
    return {key: val for key, val in report.items() if key != 'timing'}

@pytest.fixture(scope='module')
def report_schema() -> dict:
    with open(REPORT_SCHEMA, 'r') as schema_file:
        return json.load(schema_file)

@pytest.mark.cli
def test_config_defaults():
    config = RunConfig.import_ini(RUN_CONFIG, environ={})
    assert config.cutoff == 40.0 and config.n_terms == 20
    assert config.thresholds == [5.0, 10.0, 20.0, 30.0]
    assert config.verbose is False
    assert config['tolerance'] == 1e-6
    assert config.surface_point().traces == (3.0, 3.0, 3.0)
    assert config.slope('gamma_prime') == pt.Slope(1, 0)

@pytest.mark.cli
def test_config_round_trip(ini_path: str):
    config = RunConfig.import_default(cutoff=30.0, mu='1/2', thresholds=[2.0, 4.0])
    with open(ini_path, 'w') as ini_file:
        config.export_ini().write(ini_file)
    new_config = RunConfig.import_ini(ini_path, environ={})
    assert new_config.export_dict() == config.export_dict()
    assert new_config.slope('mu') == pt.Slope(1, 2)

@pytest.mark.cli
def test_config_environment():
    environ = {'PYTEICH_TOL': '1e-3', 'PYTEICH_THREADS': '2'}
    config = RunConfig.import_ini(RUN_CONFIG, environ=environ)
    assert config.tolerance == 1e-3 and config.num_threads == 2
    config = RunConfig.import_ini(RUN_CONFIG, environ=environ, tolerance=1e-4, num_threads=None)
    assert config.tolerance == 1e-4 and config.num_threads == 2

@pytest.mark.cli
def test_config_errors():
    with pytest.raises(ValueError):
        RunConfig.import_default(format='xml')
    with pytest.raises(ValueError):
        RunConfig.import_ini('not_a_file.ini')
    with pytest.raises(ValueError):
        RunConfig.import_default(f_name='gaussian').profile()
    with pytest.raises(ValueError):
        RunConfig.import_default(preset='near-cusp:small').surface_point()
    with pytest.raises(ValueError):
        RunConfig.import_default(preset='square').surface_point()

@pytest.mark.cli
def test_config_presets():
    assert RunConfig.import_default(x1=7.0, preset='hexagonal').surface_point().traces == \
           (3.0, 3.0, 3.0)
    point = RunConfig.import_default(preset='near-cusp:0.1').surface_point()
    assert point.traces[0] == pytest.approx(2.0 * np.cosh(0.05))
    first = RunConfig.import_default(preset='random', seed=7).surface_point()
    second = RunConfig.import_default(preset='random', seed=7).surface_point()
    assert first.traces == second.traces
    assert RunConfig.import_default(seed=0).seed > 0
    assert RunConfig.import_default(num_threads=0).num_threads >= 1

@pytest.mark.cli
def test_verify(temp_dir: str, report_schema: dict):
    path = os.path.join(temp_dir, 'verify.json')
    assert main(['verify', '--cutoff', '40', '--out', path]) == 0
    report = load_report(path)
    jsonschema.validate(report, report_schema)
    assert report['command'] == 'verify' and report['passed']
    assert [res['name'] for res in report['results']] == ['arctan', 'mcshane']
    assert report['config']['series']['cutoff'] == 40.0
    assert report['versions']['pyteich'] == pt.__version__

@pytest.mark.cli
def test_verify_boundary(temp_dir: str):
    path = os.path.join(temp_dir, 'verify_boundary.json')
    assert main(['verify', '--x1', '3.2', '--x2', '3.2', '--ldelta', '2', '--out', path]) == 0
    assert [res['name'] for res in load_report(path)['results']] == ['arctan']

@pytest.mark.cli
def test_verify_fails(temp_dir: str, report_schema: dict):
    path = os.path.join(temp_dir, 'verify_fail.json')
    assert main(['verify', '--cutoff', '0.5', '--out', path]) == 1
    report = load_report(path)
    jsonschema.validate(report, report_schema)
    assert not report['passed']
    assert report['results'][0]['terms_used'] == 0
    assert report['results'][0]['tail_bound'] is None

@pytest.mark.cli
def test_usage_errors(temp_dir: str):
    path = os.path.join(temp_dir, 'error.json')
    assert main(['variation', '--mu', '1:2', '--out', path]) == 2
    assert main(['verify', '--x1', '2.5', '--x2', '2.5', '--out', path]) == 2
    assert main(['degenerate', '--f', 'gaussian', '--out', path]) == 2
    assert not os.path.isfile(path)
    with pytest.raises(SystemExit):
        main(['fourier'])
    with pytest.raises(SystemExit):
        main(['verify', '--root', 'middle'])

@pytest.mark.cli
def test_spectrum_csv(temp_dir: str):
    path = os.path.join(temp_dir, 'spectrum.csv')
    assert main(['spectrum', '--cutoff', '10', '--format', 'csv', '--out', path]) == 0
    with open(path, 'r', newline='') as csv_file:
        rows = list(csv.reader(csv_file))
    assert tuple(rows[0]) == SPECTRUM_COLUMNS
    lengths = [float(row[3]) for row in rows[1:]]
    assert lengths == sorted(lengths)
    assert len(lengths) == len(pt.length_spectrum(pt.SurfacePoint.hexagonal(), 10.0))
    assert [float(row[2]) for row in rows[1:4]] == pytest.approx([3.0] * 3)
    with open(path, 'rb') as csv_file:
        raw = csv_file.read()
    assert raw.count(b'\r\n') == raw.count(b'\n') == len(rows)

@pytest.mark.cli
def test_spectrum_json(temp_dir: str, report_schema: dict):
    path = os.path.join(temp_dir, 'spectrum.json')
    assert main(['spectrum', '--cutoff', '12', '--thresholds', '6', '12',
                 '--out', path]) == 0
    report = load_report(path)
    jsonschema.validate(report, report_schema)
    result = report['results'][0]
    assert [threshold for threshold, _ in result['counts']] == [6.0, 12.0]
    assert result['collar_violations'] == 0 and result['product_violations'] == 0
    assert len(report['records']) == result['counts'][-1][1]

@pytest.mark.cli
def test_twist_orbit(temp_dir: str, report_schema: dict):
    path = os.path.join(temp_dir, 'twist_orbit.json')
    assert main(['twist-orbit', '--gamma', '1/1', '--gamma-prime', '1/0', '--n', '20',
                 '--out', path]) == 0
    report = load_report(path)
    jsonschema.validate(report, report_schema)
    telescoping, derivative = report['results']
    assert telescoping['name'] == 'telescoping'
    assert telescoping['target'] == pytest.approx(1.6821373, abs=1e-7)
    assert derivative['name'] == 'twist_derivative'

@pytest.mark.cli
def test_degenerate(temp_dir: str, report_schema: dict):
    path = os.path.join(temp_dir, 'degenerate.json')
    assert main(['degenerate', '--epsilon', '0.02', '--f', 'arctan', '--out', path]) == 0
    report = load_report(path)
    jsonschema.validate(report, report_schema)
    result = report['results'][0]
    assert result['name'] == 'arctan'
    assert result['target'] == pytest.approx(1.5 * np.pi)

@pytest.mark.cli
def test_variation(temp_dir: str, report_schema: dict):
    path = os.path.join(temp_dir, 'variation.json')
    assert main(['variation', '--mu', '0/1', '--cutoff', '20', '--out', path]) == 0
    report = load_report(path)
    jsonschema.validate(report, report_schema)
    assert report['results'][0]['components']['amplitude_violations'] == 0

@pytest.mark.cli
def test_series_csv():
    output, _ = run_command('verify', RunConfig.import_default(cutoff=20.0))
    stream = io.StringIO()
    write_csv(output, stream)
    rows = list(csv.reader(io.StringIO(stream.getvalue())))
    assert tuple(rows[0]) == SERIES_COLUMNS
    assert [row[0] for row in rows[1:]] == ['arctan', 'mcshane']
    assert float(rows[1][1]) == output.results[0]['value']

@pytest.mark.cli
def test_determinism():
    config = RunConfig.import_default(cutoff=25.0, num_threads=1)
    _, first = run_command('verify', config)
    _, second = run_command('verify', config)
    assert without_timing(first) == without_timing(second)
    with pytest.raises(ValueError):
        run_command('fourier', config)

@pytest.mark.cli
def test_invalid_report(temp_dir: str, monkeypatch):
    schema_path = os.path.join(temp_dir, 'strict_schema.json')
    with open(schema_path, 'w') as schema_file:
        json.dump({'type': 'object', 'required': ['signature']}, schema_file)
    monkeypatch.setattr('pyteich.cli.commands.REPORT_SCHEMA', schema_path)
    path = os.path.join(temp_dir, 'invalid.json')
    assert main(['verify', '--cutoff', '10', '--out', path]) == 1
    assert not os.path.isfile(path)
