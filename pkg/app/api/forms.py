"""Flask-WTF forms validating the query arguments of the JSON API."""
from flask import current_app
from flask_wtf import FlaskForm
from wtforms import IntegerField, StringField
from wtforms.validators import (
    DataRequired,
    InputRequired,
    NumberRange,
    Optional,
    ValidationError,
)


def within_grammar_limit(self, field):
    """Validator rejecting grammar indices above MAX_GRAMMAR_INDEX."""
    limit = current_app.config['MAX_GRAMMAR_INDEX']
    if field.data is not None and field.data > limit:
        raise ValidationError(f'Grammar index must be at most {limit}.')


def within_series_limit(self, field):
    """Validator rejecting kmax above MAX_SERIES_KMAX."""
    limit = current_app.config['MAX_SERIES_KMAX']
    if field.data is not None and field.data > limit:
        raise ValidationError(f'kmax must be at most {limit}.')


class QueryForm(FlaskForm):
    """Base for forms read from the query string rather than a POST body."""

    class Meta:
        csrf = False


class SizesForm(QueryForm):
    max_n = IntegerField(
        'max_n',
        validators=[InputRequired(), NumberRange(min=0), within_grammar_limit],
    )


class SeriesForm(QueryForm):
    n = IntegerField(
        'n',
        validators=[InputRequired(), NumberRange(min=0), within_grammar_limit],
    )
    kmax = IntegerField(
        'kmax',
        validators=[InputRequired(), NumberRange(min=0), within_series_limit],
    )


class ClassifyForm(QueryForm):
    """`max_n` falls back to DEFAULT_MAX_N when omitted."""
    term = StringField('term', validators=[DataRequired()])
    max_n = IntegerField(
        'max_n',
        validators=[Optional(), NumberRange(min=0), within_grammar_limit],
    )
