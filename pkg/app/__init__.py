"""Initialises the Flask application, the grammar store and the CLI."""
from flask import Flask, current_app

from config import Config
from app.grammar import GrammarStore


app = Flask(__name__)
app.config.from_object(Config)
app.logger.setLevel(app.config['LOG_LEVEL'])

app.extensions['grammar_store'] = GrammarStore(
    membership_cache_size=app.config['MEMBERSHIP_CACHE_SIZE'],
)
if app.config['PRELOAD_GRAMMARS']:
    app.extensions['grammar_store'].ensure(app.config['PRELOAD_GRAMMARS'] - 1)


def current_store() -> GrammarStore:
    """The GrammarStore shared by every request and command of this app."""
    return current_app.extensions['grammar_store']


from app import cli
from app.api import routes
