"""Command-line interface, registered on the Flask CLI.

Run as ``flask --app normalOrder <command>`` or ``python normalOrder.py
<command>``. Results go to stdout (or ``--output``), logging to stderr.
Exit codes: 0 success, 1 verification mismatch, 2 usage error.
"""
import csv
import functools

import click
from flask import json

from app import app, current_store
from app.counting import series as series_of
from app.errors import GrammarError, TermSyntaxError
from app.grammar import dump_grammar, reduction_grammar
from app.membership import InSteps, classify as classify_term
from app.terms import parse_term, reduction_trace
from app.trees import is_short, nonterminal, potential
from app.verification import run_verification

NATURAL = click.IntRange(min=0)
POSITIVE = click.IntRange(min=1)


def _usage_errors(command):
    """Turns engine errors into click usage errors (exit code 2)."""
    @functools.wraps(command)
    def wrapper(*args, **kwargs):
        try:
            return command(*args, **kwargs)
        except TermSyntaxError as err:
            raise click.BadParameter(str(err), param_hint="'--term'")
        except GrammarError as err:
            raise click.UsageError(str(err))
    return wrapper


def _within_limit(n: int, force: bool, option: str) -> int:
    limit = app.config['MAX_GRAMMAR_INDEX']
    if n > limit and not force:
        raise click.BadParameter(
            f'{n} exceeds MAX_GRAMMAR_INDEX={limit}; pass --force to build it',
            param_hint=f"'{option}'",
        )
    return n


def _dumps(payload: dict) -> str:
    payload = {'schema_version': app.config['SCHEMA_VERSION'], **payload}
    return json.dumps(payload, indent=2)


force_option = click.option(
    '--force', is_flag=True, help='Allow indices above MAX_GRAMMAR_INDEX.'
)
output_option = click.option(
    '--output', '-o', type=click.File('w'), default='-',
    help='Write the result to a file instead of stdout.',
)


@app.cli.command('grammar')
@click.option('--n', 'n', type=NATURAL, required=True, help='Grammar index.')
@click.option(
    '--format', 'fmt', type=click.Choice(['text', 'json']), default='text',
)
@output_option
@force_option
@_usage_errors
def grammar_command(n, fmt, output, force):
    """Print the productions of R_n in canonical order."""
    _within_limit(n, force, '--n')
    grammar = reduction_grammar(n, current_store())
    if fmt == 'json':
        click.echo(_dumps({
            'n': n,
            'count': len(grammar),
            'productions': [str(p) for p in grammar.productions],
        }), file=output)
    else:
        click.echo(dump_grammar(grammar), file=output, nl=False)


@app.cli.command('sizes')
@click.option('--max-n', type=NATURAL, required=True)
@click.option(
    '--format', 'fmt', type=click.Choice(['text', 'json']), default='text',
)
@force_option
@_usage_errors
def sizes_command(max_n, fmt, force):
    """Print the size table of R_0 .. R_max-n."""
    _within_limit(max_n, force, '--max-n')
    rows = size_rows(max_n)
    if fmt == 'json':
        click.echo(_dumps({'sizes': rows}))
        return
    click.echo(
        f'{"n":>3} {"count":>8} {"short":>5} {"max_length":>10} {"potential":>9}'
    )
    for row in rows:
        click.echo(
            f'{row["n"]:>3} {row["count"]:>8} {row["short"]:>5} '
            f'{row["max_length"]:>10} {row["potential"]:>9}'
        )


def size_rows(max_n: int) -> list[dict]:
    store = current_store()
    rows = []
    for n in range(max_n + 1):
        grammar = reduction_grammar(n, store)
        rows.append({
            'n': n,
            'count': len(grammar),
            'short': sum(map(is_short, grammar.productions)),
            'max_length': grammar.max_length,
            'potential': potential(nonterminal(n), store),
        })
    return rows


@app.cli.command('series')
@click.option('--n', 'n', type=NATURAL, required=True)
@click.option('--kmax', type=NATURAL, required=True)
@click.option(
    '--format', 'fmt', type=click.Choice(['csv', 'json']), default='csv',
)
@output_option
@force_option
@_usage_errors
def series_command(n, kmax, fmt, output, force):
    """Print r_{n,0} .. r_{n,kmax}, the counting series of R_n."""
    _within_limit(n, force, '--n')
    if kmax > app.config['MAX_SERIES_KMAX'] and not force:
        raise click.BadParameter(
            f'{kmax} exceeds MAX_SERIES_KMAX={app.config["MAX_SERIES_KMAX"]}',
            param_hint="'--kmax'",
        )
    store = current_store()
    reduction_grammar(n, store)
    result = series_of(n, kmax, store)
    if fmt == 'json':
        click.echo(_dumps({
            'n': n,
            'kmax': kmax,
            'coefficients': list(result.coefficients),
        }), file=output)
        return
    writer = csv.writer(output, lineterminator='\n')
    writer.writerow(['n', 'k', 'r'])
    writer.writerows(result.rows())


@app.cli.command('classify')
@click.option('--term', required=True, help='SK-term, e.g. "S K K S".')
@click.option('--max-n', type=NATURAL, default=app.config['DEFAULT_MAX_N'])
@click.option('--fuel', type=NATURAL, default=app.config['DEFAULT_FUEL'])
@click.option('--trace', is_flag=True, help='Also print the reduction.')
@force_option
@_usage_errors
def classify_command(term, max_n, fuel, trace, force):
    """Classify a term by the number of steps it takes to normalise."""
    _within_limit(max_n, force, '--max-n')
    parsed = parse_term(term, app.config['MAX_TERM_DEPTH'])
    store = current_store()
    reduction_grammar(max_n, store)
    if trace:
        for step, reduct in enumerate(reduction_trace(parsed, fuel)):
            click.echo(f'{step:>3}  {reduct}')
    result = classify_term(parsed, max_n, store)
    if isinstance(result, InSteps):
        click.echo(f'InSteps({result.steps})')
    else:
        click.echo(f'NotWithin({result.max_n})')


@app.cli.command('verify')
@click.option(
    '--max-size', type=NATURAL, default=app.config['DEFAULT_MAX_SIZE'],
)
@click.option('--max-n', type=NATURAL, default=app.config['DEFAULT_MAX_N'])
@click.option('--fuel', type=NATURAL, default=app.config['DEFAULT_FUEL'])
@click.option('--jobs', type=POSITIVE, default=app.config['DEFAULT_JOBS'])
@click.option(
    '--format', 'fmt', type=click.Choice(['text', 'json']), default='text',
)
@force_option
@click.pass_context
@_usage_errors
def verify_command(ctx, max_size, max_n, fuel, jobs, fmt, force):
    """Check every term up to max-size against R_0 .. R_max-n.

    Exits with status 1 if any mismatch is found.
    """
    _within_limit(max_n, force, '--max-n')
    report = run_verification(max_size, max_n, fuel, current_store(), jobs)
    if fmt == 'json':
        click.echo(_dumps(report.to_dict()))
    else:
        _echo_report(report)
    if not report.ok:
        ctx.exit(1)


def _echo_report(report) -> None:
    sizes = range(report.max_size + 1)
    click.echo('census (rows: steps n, columns: size k)')
    click.echo('    k ' + ' '.join(f'{k:>8}' for k in sizes))
    for n, row in enumerate(report.census):
        click.echo(f'n={n:<3} ' + ' '.join(f'{count:>8}' for count in row))
    click.echo(
        f'>{report.max_n:<4} ' + ' '.join(f'{count:>8}' for count in report.beyond)
    )
    click.echo(
        'fuel  ' + ' '.join(f'{count:>8}' for count in report.exhausted)
    )
    for mismatch in report.mismatches:
        click.echo(f'MISMATCH {mismatch.kind}: {mismatch.term}: {mismatch.detail}')
    click.echo(
        f'{report.checked} terms checked, {len(report.mismatches)} mismatches'
    )
