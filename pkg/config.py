"""Application configuration: grammar limits, defaults and logging."""
import os


def _int(name: str, default: int) -> int:
    return int(os.environ.get(name) or default)


class Config:
    # The API only reads query arguments, there is nothing to protect
    WTF_CSRF_ENABLED = False

    # Largest R_n built without --force; R_5 takes far longer than R_4
    MAX_GRAMMAR_INDEX = _int('MAX_GRAMMAR_INDEX', 4)
    # Grammars constructed when the app starts
    PRELOAD_GRAMMARS = _int('PRELOAD_GRAMMARS', 0)

    DEFAULT_FUEL = _int('DEFAULT_FUEL', 64)
    DEFAULT_MAX_SIZE = _int('DEFAULT_MAX_SIZE', 6)
    DEFAULT_MAX_N = _int('DEFAULT_MAX_N', 3)
    DEFAULT_JOBS = _int('DEFAULT_JOBS', 1)
    MAX_SERIES_KMAX = _int('MAX_SERIES_KMAX', 40)
    # Deepest parenthesis nesting accepted in term and tree text
    MAX_TERM_DEPTH = _int('MAX_TERM_DEPTH', 100)
    # Entries kept in the (grammar, term) membership memo before eviction
    MEMBERSHIP_CACHE_SIZE = _int('MEMBERSHIP_CACHE_SIZE', 200_000)

    SCHEMA_VERSION = 1

    LOG_LEVEL = os.environ.get('LOG_LEVEL') or 'WARNING'
