"""Shared fixtures: one grammar store built up to R_3, the app and clients."""
import pytest

from app import app as flask_app
from app.grammar import GrammarStore


@pytest.fixture(scope='session')
def store():
    """R_0 .. R_3, shared by the whole session."""
    store = GrammarStore()
    store.ensure(3)
    return store


@pytest.fixture(scope='session')
def large_store():
    """R_0 .. R_4, for tests marked slow."""
    store = GrammarStore()
    store.ensure(4)
    return store


@pytest.fixture
def app(store):
    flask_app.config.update(TESTING=True)
    flask_app.extensions['grammar_store'] = store
    return flask_app


@pytest.fixture
def client(app):
    return app.test_client()


@pytest.fixture
def runner(app):
    return app.test_cli_runner()
