"""Tests for the JSON API."""


def test_grammar(client):
    response = client.get('/api/grammar/0')
    assert response.status_code == 200
    data = response.get_json()
    assert data['count'] == 5
    assert data['productions'] == ['S', 'K', 'S R0', 'K R0', 'S R0 R0']
    assert data['schema_version'] == 1


def test_grammar_above_limit(client):
    response = client.get('/api/grammar/9')
    assert response.status_code == 400
    assert 'error' in response.get_json()


def test_sizes(client):
    response = client.get('/api/sizes', query_string={'max_n': 2})
    assert response.status_code == 200
    rows = response.get_json()['sizes']
    assert [row['count'] for row in rows] == [5, 12, 75]


def test_sizes_validation(client):
    assert client.get('/api/sizes').status_code == 400
    assert client.get('/api/sizes?max_n=-1').status_code == 400
    assert client.get('/api/sizes?max_n=abc').status_code == 400
    response = client.get('/api/sizes?max_n=9')
    assert response.status_code == 400
    assert 'max_n' in response.get_json()['error']


def test_series(client):
    response = client.get('/api/series', query_string={'n': 1, 'kmax': 2})
    assert response.status_code == 200
    assert response.get_json()['coefficients'] == [0, 0, 4]


def test_series_validation(client):
    assert client.get('/api/series?n=1').status_code == 400
    assert client.get('/api/series?n=1&kmax=41').status_code == 400


def test_classify(client):
    response = client.get('/api/classify', query_string={'term': 'S K K S'})
    assert response.status_code == 200
    assert response.get_json()['outcome'] == 'in_steps'
    assert response.get_json()['steps'] == 2


def test_classify_not_within(client):
    response = client.get(
        '/api/classify', query_string={'term': 'K S K', 'max_n': 0}
    )
    data = response.get_json()
    assert data['outcome'] == 'not_within'
    assert data['steps'] is None


def test_classify_bad_term(client):
    response = client.get('/api/classify', query_string={'term': 'S X'})
    assert response.status_code == 400
    assert 'position 2' in response.get_json()['error']


def test_classify_missing_term(client):
    assert client.get('/api/classify').status_code == 400


def test_classify_rejects_deeply_nested_terms(client):
    term = 'S (' * 1500 + 'K' + ')' * 1500
    response = client.get('/api/classify', query_string={'term': term})
    assert response.status_code == 400
    assert 'nested deeper than' in response.get_json()['error']


def test_classify_depth_limit_follows_config(app, client):
    term = 'S (' * 5 + 'K' + ')' * 5
    app.config['MAX_TERM_DEPTH'] = 4
    try:
        response = client.get('/api/classify', query_string={'term': term})
    finally:
        app.config['MAX_TERM_DEPTH'] = 100
    assert response.status_code == 400
