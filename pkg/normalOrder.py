"""Entrypoint for the normal-order reduction grammar engine."""
from app import app, current_store
from app import counting, grammar, membership, terms, trees


@app.shell_context_processor
def make_shell_context():
    """Provide names and objects to the Flask shell for quick access."""
    return {
        'store': current_store(),
        'terms': terms,
        'trees': trees,
        'grammar': grammar,
        'membership': membership,
        'counting': counting,
        'parse_term': terms.parse_term,
        'parse_tree': trees.parse_tree,
        }

if __name__ == "__main__":
    with app.app_context():
        app.cli.main(prog_name='normalOrder')
