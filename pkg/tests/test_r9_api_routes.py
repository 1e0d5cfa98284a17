"""
R9 — JSON API
Highlights:
- Every endpoint answers with a report; HTTP 200 for ok, 400 for invalid input, 422 for a violation.
- The app-wide seed can be overridden per request with ?seed=.
"""
from formats import example_payloads, resolution_to_json
from rational_curves import normal_resolution


def test_index_lists_endpoints(client):
    resp = client.get('/api/')
    assert resp.status_code == 200
    data = resp.get_json()
    assert '/api/curve/analyze' in data['endpoints']
    assert '/api/selftest' in data['endpoints']
    assert set(data['examples']) == {'curve', 'line', 'section'}

# --- curves ------------------------------------------------------------------

def test_analyze_twisted_cubic(client):
    resp = client.post('/api/curve/analyze', json=example_payloads()['curve'])
    assert resp.status_code == 200
    data = resp.get_json()
    assert data['h0'] == [12, 6, 0]
    assert data['seed'] == 7


def test_analyze_without_body_is_invalid(client):
    resp = client.post('/api/curve/analyze')
    assert resp.status_code == 400
    assert resp.get_json()['status'] == 'invalid'


def test_random_curve_requires_parameters(client):
    assert client.get('/api/curve/random?n=3').status_code == 400
    assert client.get('/api/curve/random?d=three&n=3').status_code == 400


def test_random_curve_uses_generator_seed(client):
    first = client.get('/api/curve/random?d=3&n=3&generator=4').get_json()
    second = client.get('/api/curve/random?d=3&n=3&generator=4').get_json()
    assert first == second
    assert first['generator_seed'] == 4


def test_seed_override(client):
    resp = client.get('/api/curve/table?d=3&n=3&count=1&seed=12')
    assert resp.status_code == 200
    data = resp.get_json()
    assert data['seed'] == 12
    assert len(data['rows']) == 1
    assert client.get('/api/curve/table?d=3&n=3&seed=-1').status_code == 400

# --- bundles -----------------------------------------------------------------

def test_bundle_h0_twist(client, twisted_cubic):
    body = resolution_to_json(normal_resolution(twisted_cubic))
    data = client.post('/api/bundle/h0?twist=-3', json=body).get_json()
    assert data['h0'] == 6
    assert data['h1'] == 0


def test_bundle_splitting(client, twisted_cubic):
    body = resolution_to_json(normal_resolution(twisted_cubic))
    data = client.post('/api/bundle/splitting', json=body).get_json()
    assert data['splitting'] == [5, 5]
    assert data['rank'] == 2


def test_generic_section_violation_is_422(client):
    resp = client.get('/api/bundle/generic-section?h0=16,8,2&rank=8&variant=printed')
    assert resp.status_code == 422
    assert resp.get_json()['criterion'] == 'generic_splitting'


def test_generic_section_ok(client):
    resp = client.get('/api/bundle/generic-section?h0=12,6&rank=6')
    assert resp.status_code == 200
    assert resp.get_json()['splitting'] == {'1': 6}

# --- quadric -----------------------------------------------------------------

def test_quadric_real_line(client):
    data = client.post('/api/quadric/real', json=example_payloads()['line']).get_json()
    assert data['degenerate'] is False
    assert data['splitting'] == 'O(1)^4'


def test_quadric_classify_degenerate(client):
    body = {'a': [1, 0, 0, 0], 'b': [0, 1, 0, 0], 'c': [0, 0, 1, 0], 'd': [0, 0, 0, 1]}
    data = client.post('/api/quadric/classify', json=body).get_json()
    assert data['degenerate'] is True
    assert 'x_infinity' not in data


def test_quadric_real_rejects_raw_lines(client):
    body = {'a': [1, 0, 0, 0], 'b': [0, 1, 0, 0], 'c': [0, 0, 1, 0], 'd': [0, 0, 0, 1]}
    assert client.post('/api/quadric/real', json=body).status_code == 400


def test_quadric_fibration(client):
    body = {'q0': ['1', '0'], 'q1': ['1', '0'], 'p0': ['0', '1'], 'p1': ['0', '-1']}
    data = client.post('/api/quadric/fibration', json=body).get_json()
    assert data['fibration'] == [['1', '0'], ['-1', '0']]
    assert data['x_infinity'] is True


def test_quadric_orbit(client):
    t = {'q0': ['1', '0'], 'q1': ['1', '0'], 'p0': ['0', '1'], 'p1': ['1', '0']}
    scaled = {'q0': ['2', '0'], 'q1': ['2', '0'], 'p0': ['0', '1'], 'p1': ['1', '0']}
    data = client.post('/api/quadric/orbit', json={'first': t, 'second': scaled}).get_json()
    assert data['equivalent'] is True
    assert data['u'] == ['2', '0']
    assert data['r'] == '2'
    assert client.post('/api/quadric/orbit', json={'first': t}).status_code == 400


def test_quadric_metric_at_point(client):
    data = client.post('/api/quadric/metric', json=example_payloads()['line']).get_json()
    assert data['signature'] == [8, 8]
    assert data['length'] == '-1'
    assert data['hx_nondegenerate'] is True


def test_quadric_convention(client):
    data = client.get('/api/quadric/convention').get_json()
    assert data['certified'] is True
    assert data['printed_certified'] is False

# --- blow-up, modules and selftest -------------------------------------------

def test_blowup_classify_real_section(client):
    data = client.post('/api/blowup/classify', json={'coords': ['1', 'i', 'i', '1', '2']}).get_json()
    assert data['stratum'] == 'off_divisor'
    assert data['real'] is True
    assert data['quaternion'] == ['1/2', '1/2i']


def test_blowup_module(client):
    data = client.post('/api/blowup/module', json=example_payloads()['section']).get_json()
    assert data['certificate'] == 'exact_pass'
    assert len(data['maps']) == 2


def test_module_certify(client):
    body = {'maps': [[['1'], ['0']], [['0'], ['1']]]}
    data = client.post('/api/module/certify', json=body).get_json()
    assert data['certificate'] == 'exact_pass'
    assert (data['r'], data['k'], data['n']) == (2, 1, 2)


def test_selftest_endpoint(client):
    resp = client.get('/api/selftest?suite=bundles&scale=0.02')
    assert resp.status_code == 200
    assert resp.get_json()['failed'] == []
    resp = client.get('/api/selftest?suite=bundles&scale=0.02&recursion=printed')
    assert resp.status_code == 422


def test_selftest_unknown_suite(client):
    assert client.get('/api/selftest?suite=everything').status_code == 400
