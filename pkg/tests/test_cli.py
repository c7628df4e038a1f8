"""Tests for the sdgverify command line."""

import json

import pytest

from sdgkernel import read_jsonl, settings
from sdgverify import build_parser, main, run_op


class TestExitCodes:
    """0 pass, 1 check failure, 2 usage or parse error."""

    def test_passing_check(self):
        assert main(['check', 'obtuse-triangle', '--trials', '1']) == 0

    def test_corrupt_check_fails(self):
        assert main(['check', 'external-touching', '--trials', '1', '--corrupt']) == 1

    def test_unknown_check(self):
        assert main(['check', 'no-such-check']) == 2

    def test_bad_dimension(self):
        assert main(['axioms', '--dim', '9', '--trials', '1']) == 2

    def test_zero_trials(self):
        assert main(['axioms', '--trials', '0']) == 0

    def test_argparse_errors_exit_two(self):
        with pytest.raises(SystemExit) as exc_info:
            build_parser().parse_args(['axioms', '--trials', 'many'])
        assert exc_info.value.code == 2


class TestReports:
    """Report files written by the CLI."""

    def test_jsonl_report(self, tmp_path):
        path = tmp_path / 'out.jsonl'
        code = main(['axioms', '--checks', 'obtuse-triangle,ray-semigroup', '--trials', '2',
                     '--seed', '7', '--report', str(path), '--no-timing'])
        assert code == 0
        rows = read_jsonl(path)
        assert [r['check_id'] for r in rows[:-1]] == ['obtuse-triangle'] * 2 + ['ray-semigroup'] * 2
        assert rows[-1]['passed'] == 4
        assert all('elapsed_ms' not in r for r in rows)

    def test_console_report(self, capsys):
        main(['check', 'order-robustness', '--trials', '1'])
        assert 'SDG VERIFICATION REPORT' in capsys.readouterr().out


class TestSceneCommands:
    """scene run and plot."""

    def test_scene_run(self, scene_file, tmp_path):
        csv_path = tmp_path / 'env.csv'
        assert main(['scene', 'run', str(scene_file), '--checks', 'collinear,huygens', '--csv', str(csv_path)]) == 0
        assert csv_path.read_text(encoding='utf-8').startswith('surface,s,index')

    def test_malformed_scene(self, tmp_path):
        path = tmp_path / 'bad.json'
        path.write_text(json.dumps({'dim': 2, 'points': {'a': [1]}}), encoding='utf-8')
        assert main(['scene', 'run', str(path)]) == 2

    def test_plot_to_file(self, scene_file, tmp_path):
        out = tmp_path / 'scene.svg'
        assert main(['plot', str(scene_file), '--svg', str(out), '--overlays', 'labels,touching']) == 0
        assert out.read_text(encoding='utf-8').startswith('<svg')

    def test_plot_rejects_solid_scene(self, tmp_path):
        path = tmp_path / 'solid.json'
        path.write_text(json.dumps({'dim': 3, 'points': {'a': [0, 0, 0]}}), encoding='utf-8')
        assert main(['plot', str(path)]) == 2


class TestOps:
    """Single kernel operations on JSON arguments."""

    def test_dist(self):
        assert run_op('dist', ['[0, 0]', '[3, 4]']) == 5

    def test_printed_json(self, capsys):
        assert main(['op', 'extrapolate', '[0,0]', '[3,4]', '5']) == 0
        assert json.loads(capsys.readouterr().out) == {'op': 'extrapolate', 'value': ['6', '8']}

    def test_sqrt_of_rational(self, capsys):
        main(['op', 'sqrt', '8'])
        assert json.loads(capsys.readouterr().out)['value'] == '2*sqrt(2)'

    def test_touching_point(self, capsys):
        main(['op', 'touching-point', '{"center": [0, 0], "radius": 2}', '{"center": [3, 0], "radius": 1}'])
        assert json.loads(capsys.readouterr().out)['value'] == ['external', ['2', '0']]

    def test_wrong_arity(self):
        assert main(['op', 'dist', '[0, 0]']) == 2


class TestSceneForms:
    """check and op on the named points of a scene file."""

    def test_collinear_triple(self, scene_file, capsys):
        assert main(['check', 'collinear', '--scene', str(scene_file), '--triple', 'a', 'b', 'c']) == 0
        assert json.loads(capsys.readouterr().out) == {'check': 'collinear', 'points': ['a', 'b', 'c'], 'value': True}

    def test_lifted_triple_is_not_collinear(self, scene_file, capsys):
        assert main(['check', 'collinear', '--scene', str(scene_file), '--triple', 'a', 'b_prime', 'c']) == 1
        assert json.loads(capsys.readouterr().out)['value'] is False

    def test_lifted_triple_keeps_triangle_equality(self, scene_file):
        assert main(['check', 'triangle', '--scene', str(scene_file), '--triple', 'a', 'b_prime', 'c']) == 0

    def test_unknown_triple_predicate(self, scene_file):
        assert main(['check', 'obtuse-triangle', '--scene', str(scene_file), '--triple', 'a', 'b', 'c']) == 2

    def test_unknown_point_name(self, scene_file):
        assert main(['check', 'collinear', '--scene', str(scene_file), '--triple', 'a', 'b', 'zz']) == 2

    def test_triple_needs_scene(self):
        assert main(['check', 'collinear', '--triple', 'a', 'b', 'c']) == 2

    def test_extrapolate_named_points(self, scene_file, capsys):
        assert main(['op', 'extrapolate', '--scene', str(scene_file), 'a', 'b', '--s', '5/2']) == 0
        assert json.loads(capsys.readouterr().out) == {'op': 'extrapolate', 'value': ['5/2', '0']}

    def test_named_spheres(self, scene_file, capsys):
        assert main(['op', 'touching-point', '--scene', str(scene_file), 'A', 'C']) == 0
        assert json.loads(capsys.readouterr().out)['value'] == ['external', ['2', '0']]

    def test_json_arguments_still_accepted(self, scene_file):
        assert main(['op', 'dist', '--scene', str(scene_file), 'a', '[0, 4]']) == 0


class TestListChecks:
    def test_lists_every_check(self, capsys):
        assert main(['list-checks']) == 0
        out = capsys.readouterr().out
        assert 'unclean-touching-set' in out
        assert '[dim 3]' in out


class TestOverrides:
    def test_sqrt_depth_cap_flag(self, restore_settings):
        main(['--sqrt-depth-cap', '3', 'list-checks'])
        assert settings.sqrt_depth_cap == 3
