"""Tests for the command-line interface."""
import json

import app.cli as cli_module
from app.verification import Mismatch, VerificationReport


def test_grammar_text(runner):
    result = runner.invoke(args=['grammar', '--n', '0'])
    assert result.exit_code == 0
    assert result.output == 'S\nK\nS R0\nK R0\nS R0 R0\n'


def test_grammar_json(runner):
    result = runner.invoke(args=['grammar', '--n', '1', '--format', 'json'])
    assert result.exit_code == 0
    data = json.loads(result.output)
    assert data['count'] == 12
    assert data['n'] == 1
    assert data['schema_version'] == 1
    assert len(data['productions']) == 12


def test_grammar_output_file(runner, tmp_path):
    target = tmp_path / 'r0.txt'
    result = runner.invoke(args=['grammar', '--n', '0', '--output', str(target)])
    assert result.exit_code == 0
    assert target.read_text() == 'S\nK\nS R0\nK R0\nS R0 R0\n'


def test_grammar_rejects_bad_indices(runner):
    assert runner.invoke(args=['grammar', '--n', '-1']).exit_code == 2
    assert runner.invoke(args=['grammar', '--n', '9']).exit_code == 2
    assert runner.invoke(args=['grammar']).exit_code == 2


def test_sizes(runner):
    result = runner.invoke(args=['sizes', '--max-n', '2', '--format', 'json'])
    assert result.exit_code == 0
    rows = json.loads(result.output)['sizes']
    assert [row['count'] for row in rows] == [5, 12, 75]
    assert rows[0]['potential'] == 1
    assert [row['short'] for row in rows] == [3, 4, 5]
    assert all(row['max_length'] <= 2 * row['n'] + 2 for row in rows)


def test_sizes_text(runner):
    result = runner.invoke(args=['sizes', '--max-n', '0'])
    assert result.exit_code == 0
    lines = result.output.splitlines()
    assert lines[0].split() == ['n', 'count', 'short', 'max_length', 'potential']
    assert lines[1].split() == ['0', '5', '3', '2', '1']


def test_series_csv(runner):
    result = runner.invoke(args=['series', '--n', '0', '--kmax', '3'])
    assert result.exit_code == 0
    assert result.output == 'n,k,r\n0,0,2\n0,1,4\n0,2,12\n0,3,40\n'


def test_series_json(runner):
    result = runner.invoke(
        args=['series', '--n', '1', '--kmax', '2', '--format', 'json']
    )
    assert result.exit_code == 0
    assert json.loads(result.output)['coefficients'] == [0, 0, 4]


def test_series_limits_kmax(runner):
    result = runner.invoke(args=['series', '--n', '0', '--kmax', '41'])
    assert result.exit_code == 2


def test_classify(runner):
    for text, expected in [
        ('K S K', 'InSteps(1)'),
        ('S', 'InSteps(0)'),
        ('S K K S', 'InSteps(2)'),
    ]:
        result = runner.invoke(args=['classify', '--term', text, '--max-n', '3'])
        assert result.exit_code == 0
        assert result.output == expected + '\n'


def test_classify_not_within(runner):
    result = runner.invoke(
        args=['classify', '--term', 'K S K', '--max-n', '0']
    )
    assert result.output == 'NotWithin(0)\n'


def test_classify_trace(runner):
    result = runner.invoke(
        args=['classify', '--term', 'S K K S', '--max-n', '3', '--trace']
    )
    assert result.exit_code == 0
    assert result.output.splitlines() == [
        '  0  S K K S', '  1  K S (K S)', '  2  S', 'InSteps(2)',
    ]


def test_classify_rejects_bad_terms(runner):
    result = runner.invoke(args=['classify', '--term', 'S (K'])
    assert result.exit_code == 2


def test_classify_rejects_deeply_nested_terms(runner):
    term = 'S (' * 1500 + 'K' + ')' * 1500
    result = runner.invoke(args=['classify', '--term', term])
    assert result.exit_code == 2
    assert 'nested deeper than' in result.output


def test_verify(runner):
    result = runner.invoke(
        args=['verify', '--max-size', '2', '--max-n', '1', '--fuel', '8']
    )
    assert result.exit_code == 0
    assert result.output.splitlines()[-1] == '22 terms checked, 0 mismatches'


def test_verify_json(runner):
    result = runner.invoke(args=[
        'verify', '--max-size', '2', '--max-n', '1', '--fuel', '8',
        '--format', 'json',
    ])
    assert result.exit_code == 0
    data = json.loads(result.output)
    assert data['census'][1][2] == 4
    assert data['ok'] is True


def test_verify_exits_with_one_on_mismatch(runner, monkeypatch):
    def broken(max_size, max_n, fuel, store, jobs):
        return VerificationReport(
            max_size=0,
            max_n=0,
            fuel=fuel,
            census=[[2]],
            beyond=[0],
            exhausted=[0],
            mismatches=[Mismatch('S', 'soundness', 'forced')],
            checked=2,
        )

    monkeypatch.setattr(cli_module, 'run_verification', broken)
    result = runner.invoke(args=['verify', '--max-size', '0', '--max-n', '0'])
    assert result.exit_code == 1
    assert 'MISMATCH soundness: S: forced' in result.output
