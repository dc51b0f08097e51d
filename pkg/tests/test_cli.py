import csv
import io
import json

import pytest

from cli.plots import LogAxis, lorenz_svg
from cli.render import format_number, render
from main import main
from metrics.degenerate import Degenerate, Reason
from metrics.distribution import make_distribution
from metrics.lorenz import lorenz_curve


@pytest.fixture(autouse=True)
def no_override(monkeypatch):
    monkeypatch.delenv('SKEW_CONFIG', raising=False)


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


class TestRender:
    @pytest.mark.parametrize('value, text', [
        (0.0, '0'),
        (1 / 3, '0.3333333333'),
        (12345678901.5, '1.23456789e+10'),
        (7, '7'),
        (2.5e-7, '2.5e-07'),
        (True, 'true'),
    ])
    def test_format_number(self, value, text):
        assert format_number(value) == text

    def test_degenerate_cells(self):
        rows = [{'metric': 'share_ratio', 'value': Degenerate(Reason.ZERO_DENOMINATOR, 'zero bottom share')}]
        assert 'undefined (zero bottom share)' in render(rows, 'table')
        assert 'undefined (zero bottom share)' in render(rows, 'csv')
        payload = json.loads(render(rows, 'json'))
        assert payload == [{'metric': 'share_ratio', 'value': None, 'degeneracies': {'value': 'zero_denominator'}}]


class TestCompute:
    def test_table_sorted_by_gini(self, capsys, engagement_csv):
        code, out = run(capsys, 'compute', '--input', engagement_csv, '--dimension', 'engagement_type')
        assert code == 0
        order = [out.index(f"engagement_type={t}") for t in ('like', 'retweet', 'reply', 'quote')]
        assert order == sorted(order)
        assert 'undefined (zero bottom share)' in out

    def test_json_degeneracies(self, capsys, engagement_csv):
        code, out = run(capsys, 'compute', '--input', engagement_csv, '--dimension', 'engagement_type=reply',
                        '--format', 'json')
        assert code == 0
        (row,) = json.loads(out)
        assert row['slice'] == 'engagement_type=reply'
        assert row['gini'] == pytest.approx(0.8)
        assert row['share_ratio:80/20'] is None
        assert row['degeneracies']['share_ratio:80/20'] == 'zero_denominator'
        assert row['degeneracies']['equivalent_to_top:10'] == 'no_solution'

    def test_equal_slice(self, capsys, engagement_csv):
        _, out = run(capsys, 'compute', '--input', engagement_csv, '--dimension', 'engagement_type=like',
                     '--top-x', '20', '--epsilon', '0.5,2', '--format', 'json')
        (row,) = json.loads(out)
        assert row['gini'] == 0.0
        assert row['top_share:20'] == pytest.approx(20.0)
        assert 'atkinson:2' in row
        assert 'degeneracies' not in row

    def test_formats_carry_identical_values(self, capsys, engagement_csv):
        argv = ['compute', '--input', engagement_csv, '--dimension', 'engagement_type', '--epsilon', '0.5,1']
        _, as_json = run(capsys, *argv, '--format', 'json')
        _, as_csv = run(capsys, *argv, '--format', 'csv')
        _, as_table = run(capsys, *argv, '--format', 'table')
        json_rows = json.loads(as_json)
        csv_rows = list(csv.DictReader(io.StringIO(as_csv)))
        assert len(json_rows) == len(csv_rows) == 4
        for json_row, csv_row in zip(json_rows, csv_rows):
            for key, value in json_row.items():
                if key == 'degeneracies':
                    continue
                if value is None:
                    assert csv_row[key].startswith('undefined')
                elif isinstance(value, str):
                    assert csv_row[key] == value
                else:
                    assert csv_row[key] == format_number(value)
                    assert format_number(value) in as_table

    def test_inverted(self, capsys, engagement_csv):
        _, out = run(capsys, 'compute', '--input', engagement_csv, '--dimension', 'engagement_type=like',
                     '--inverted', '--format', 'json')
        (row,) = json.loads(out)
        assert row['100-equal_share'] == pytest.approx(50.0)
        assert 'equal_share' not in row

    def test_bootstrap_columns(self, capsys, engagement_csv):
        code, out = run(capsys, 'compute', '--input', engagement_csv, '--dimension', 'engagement_type',
                        '--bootstrap', '--resamples', '20', '--seed', '5', '--format', 'json')
        assert code == 0
        rows = {row['slice']: row for row in json.loads(out)}
        like = rows['engagement_type=like']
        assert (like['gini:ci_low'], like['gini:ci_high']) == (0.0, 0.0)
        retweet = rows['engagement_type=retweet']
        assert retweet['gini:ci_low'] <= retweet['gini:ci_high']
        assert rows['engagement_type=quote']['gini:ci_low'] is None

    def test_no_interval_columns_by_default(self, capsys, engagement_csv):
        _, out = run(capsys, 'compute', '--input', engagement_csv, '--format', 'json')
        assert not any(key.endswith(':ci_low') for key in json.loads(out)[0])

    def test_output_is_byte_identical(self, capsys, engagement_csv, tmp_path):
        paths = [tmp_path / 'a.csv', tmp_path / 'b.csv']
        for path in paths:
            assert main(['compute', '--input', engagement_csv, '--format', 'csv', '--out', str(path)]) == 0
        assert paths[0].read_bytes() == paths[1].read_bytes()
        assert capsys.readouterr().out == ''

    def test_missing_input_exits_one(self, tmp_path):
        assert main(['compute', '--input', str(tmp_path / 'absent.csv')]) == 1

    def test_malformed_input_exits_one(self, write_file):
        path = write_file('bad.csv', 'member_id,count\na,-4\n')
        assert main(['compute', '--input', path]) == 1

    def test_invalid_parameter_exits_two(self, engagement_csv):
        assert main(['compute', '--input', engagement_csv, '--top-x', '0']) == 2

    def test_usage_error_exits_two(self, engagement_csv):
        with pytest.raises(SystemExit) as excinfo:
            main(['compute', '--input', engagement_csv, '--format', 'xml'])
        assert excinfo.value.code == 2

    def test_filters(self, capsys, engagement_csv):
        _, out = run(capsys, 'compute', '--input', engagement_csv, '--dimension', 'engagement_type=retweet',
                     '--no-include-zeros', '--min-followers', '45', '--format', 'json')
        (row,) = json.loads(out)
        assert row['size'] == 1
        assert row['total'] == 3


class TestLorenz:
    def test_csv_and_svg(self, capsys, engagement_csv, tmp_path):
        svg = tmp_path / 'lorenz.svg'
        code, out = run(capsys, 'lorenz', '--input', engagement_csv, '--dimension', 'engagement_type=reply',
                        '--svg', str(svg))
        assert code == 0
        rows = list(csv.DictReader(io.StringIO(out)))
        assert len(rows) == 6
        assert (rows[-1]['population'], rows[-1]['share']) == ('1', '1')
        text = svg.read_text(encoding='utf-8')
        assert text.startswith('<svg') and text.count('<polyline') == 2

    def test_log_axis(self):
        axis = LogAxis(1e-6)
        assert axis(0.0) == 0.0
        assert axis(1e-6) == pytest.approx(0.1)
        assert axis(1.0) == pytest.approx(1.0)
        assert axis(1e-3) == pytest.approx(0.55)

    def test_log_svg_samples_diagonal(self):
        curves = {'d': lorenz_curve(make_distribution([0, 1, 2, 50]))}
        text = lorenz_svg(curves, log_y=True)
        diagonal = text.split('<polyline')[1]
        assert diagonal.count(',') > 100


class TestBootstrapCommand:
    def test_deterministic_across_workers(self, capsys, engagement_csv):
        argv = ['bootstrap', '--input', engagement_csv, '--dimension', 'engagement_type', '--metric', 'gini',
                '--metric', 'top_share:20', '--resamples', '40', '--seed', '3', '--format', 'json']
        _, serial = run(capsys, *argv, '--workers', '1')
        _, parallel = run(capsys, *argv, '--workers', '4')
        assert serial == parallel
        rows = json.loads(serial)
        assert [r['slice'] for r in rows][:2] == ['engagement_type=like'] * 2
        assert all(r['seed'] == 3 for r in rows if 'seed' in r)

    def test_undefined_metric_is_not_an_error(self, capsys, engagement_csv):
        code, out = run(capsys, 'bootstrap', '--input', engagement_csv, '--dimension', 'engagement_type=reply',
                        '--metric', 'share_ratio:80/20', '--resamples', '20', '--format', 'json')
        assert code == 0
        assert json.loads(out)[0]['ci_low'] is None

    def test_bad_metric_exits_two(self, engagement_csv):
        assert main(['bootstrap', '--input', engagement_csv, '--metric', 'median']) == 2


class TestCompare:
    def test_difference_row(self, capsys, engagement_csv):
        code, out = run(capsys, 'compare', '--input', engagement_csv, '--dimension', 'engagement_type=like',
                        '--dimension', 'engagement_type=retweet', '--resamples', '30', '--format', 'json')
        assert code == 0
        (row,) = json.loads(out)
        assert row['metric'] == 'gini'
        assert row['point'] == pytest.approx(-0.7)
        assert isinstance(row['distinguishable'], bool)

    def test_needs_two_slices(self, engagement_csv):
        assert main(['compare', '--input', engagement_csv, '--dimension', 'engagement_type=like']) == 2


class TestBins:
    def test_channels_and_plot_data(self, capsys, engagement_csv, tmp_path):
        plot = tmp_path / 'bins.csv'
        code, out = run(capsys, 'bins', '--input', engagement_csv, '--channel', 'engagement_type=like',
                        '--channel', 'engagement_type=retweet', '--bins', 'edges:0,25,60', '--format', 'json',
                        '--plot-out', str(plot))
        assert code == 0
        payload = json.loads(out)
        assert [row['flag'] for row in payload['engagement_type=retweet']] == ['zero_total', '']
        comparison = payload['comparison']
        assert comparison[1]['engagement_type=retweet:gini'] == pytest.approx(0.5)
        assert comparison[1]['engagement_type=retweet:gini_delta'] == pytest.approx(0.5)
        assert comparison[0]['engagement_type=retweet:gini'] is None
        assert plot.read_text(encoding='utf-8').startswith('bin,low,high,')

    def test_unknown_covariate_exits_two(self, engagement_csv):
        assert main(['bins', '--input', engagement_csv, '--covariate', 'age']) == 2


class TestDecomposeAndProfile:
    def test_decompose_sections(self, capsys, engagement_csv):
        code, out = run(capsys, 'decompose', '--input', engagement_csv, '--dimension', 'engagement_type=retweet',
                        '--bins', 'edges:0,25,60', '--format', 'json')
        assert code == 0
        payload = json.loads(out)
        assert set(payload) == {'subgroups', 'gini', 'atkinson'}
        assert payload['gini'][0]['pooled_gini'] == pytest.approx(0.7)
        assert payload['gini'][0]['degenerate_groups'] == '000 [0, 25)'
        assert payload['atkinson'][0]['residual'] == pytest.approx(0.0, abs=1e-9)
        assert payload['subgroups'][-1]['slice'] == 'pooled'

    def test_profile(self, capsys, engagement_csv):
        code, out = run(capsys, 'profile', '--input', engagement_csv, '--dimension', 'engagement_type',
                        '--format', 'json')
        assert code == 0
        rows = json.loads(out)
        assert [r['slice'] for r in rows] == [
            'engagement_type=like', 'engagement_type=retweet', 'engagement_type=reply', 'engagement_type=quote',
        ]
        assert rows[-1]['outcome_gini'] is None


class TestSynth:
    def test_writes_loadable_table(self, capsys, tmp_path):
        out = tmp_path / 'synth.csv'
        argv = ['synth', '--generator', 'poisson-mixture', '--size', '100', '--rates', '1,5',
                '--weights', '0.5,0.5', '--seed', '4', '--dimension', 'channel=home', '--out', str(out)]
        assert main(argv) == 0
        first = out.read_bytes()
        assert main(argv) == 0
        assert out.read_bytes() == first
        lines = first.decode('utf-8').splitlines()
        assert lines[0] == 'member_id,channel,count'
        assert len(lines) == 101

        code, report = run(capsys, 'compute', '--input', str(out), '--format', 'json')
        assert code == 0
        assert json.loads(report)[0]['size'] == 100

    def test_spec_file_with_flag_override(self, write_file, tmp_path):
        spec = write_file('spec.yaml', 'generator: zero-inflated-lognormal\nsize: 50\nzero_fraction: 0.5\n')
        out = tmp_path / 'synth.tsv'
        assert main(['synth', '--spec', spec, '--size', '20', '--out', str(out)]) == 0
        lines = out.read_text(encoding='utf-8').splitlines()
        assert lines[0] == 'member_id\tcount'
        assert len(lines) == 21

    def test_invalid_spec_exits_two(self, tmp_path):
        out = tmp_path / 'synth.csv'
        assert main(['synth', '--rates', '1,2', '--weights', '0.5', '--out', str(out)]) == 2
