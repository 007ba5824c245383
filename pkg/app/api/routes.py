"""JSON routes mirroring the CLI commands.

All endpoints are read-only GETs. Query arguments are validated by the
forms in `app.api.forms`; every response carries `schema_version`.
"""
from flask import jsonify, request

from app import app, current_store
from app.api.forms import ClassifyForm, SeriesForm, SizesForm
from app.cli import size_rows
from app.counting import series
from app.errors import GrammarError, MissingGrammarError
from app.grammar import reduction_grammar
from app.membership import InSteps, classify
from app.terms import parse_term


def _respond(payload: dict, status: int = 200):
    payload = {'schema_version': app.config['SCHEMA_VERSION'], **payload}
    return jsonify(payload), status


def _invalid(form):
    return _respond({'error': form.errors}, 400)


@app.errorhandler(MissingGrammarError)
def missing_grammar(err):
    return _respond({'error': str(err)}, 404)


@app.errorhandler(GrammarError)
def grammar_error(err):
    """Bad input such as an unparsable term."""
    return _respond({'error': str(err)}, 400)


@app.route('/api/grammar/<int:n>')
def api_grammar(n):
    """Productions of R_n in canonical order.

    Returns:
        - 200 with n, count and productions.
        - 400 if n exceeds MAX_GRAMMAR_INDEX.
    """
    limit = app.config['MAX_GRAMMAR_INDEX']
    if n > limit:
        return _respond(
            {'error': f'Grammar index must be at most {limit}.'}, 400
        )
    grammar = reduction_grammar(n, current_store())
    return _respond({
        'n': n,
        'count': len(grammar),
        'productions': [str(p) for p in grammar.productions],
    })


@app.route('/api/sizes')
def api_sizes():
    form = SizesForm(formdata=request.args)
    if not form.validate():
        return _invalid(form)
    return _respond({'sizes': size_rows(form.max_n.data)})


@app.route('/api/series')
def api_series():
    form = SeriesForm(formdata=request.args)
    if not form.validate():
        return _invalid(form)
    n, kmax = form.n.data, form.kmax.data
    store = current_store()
    reduction_grammar(n, store)
    result = series(n, kmax, store)
    return _respond({
        'n': n,
        'kmax': kmax,
        'coefficients': list(result.coefficients),
    })


@app.route('/api/classify')
def api_classify():
    """Grammar classification of `term` among R_0 .. R_max_n.

    Returns:
        - 200 with outcome 'in_steps' and the step count, or outcome
          'not_within' and steps null.
        - 400 on invalid arguments or an unparsable term.
    """
    form = ClassifyForm(formdata=request.args)
    if not form.validate():
        return _invalid(form)
    max_n = form.max_n.data
    if max_n is None:
        max_n = app.config['DEFAULT_MAX_N']
    term = parse_term(form.term.data, app.config['MAX_TERM_DEPTH'])
    store = current_store()
    reduction_grammar(max_n, store)
    result = classify(term, max_n, store)
    if isinstance(result, InSteps):
        return _respond({
            'term': str(term), 'outcome': 'in_steps', 'steps': result.steps,
        })
    return _respond({
        'term': str(term), 'outcome': 'not_within', 'steps': None,
        'max_n': result.max_n,
    })
