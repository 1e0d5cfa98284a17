"""
API Routes - index, generic module certificates and the selftest
"""

from dataclasses import replace

from flask import Blueprint, current_app, jsonify, request

import kron_service as svc
from formats import example_payloads
from .common import json_body, request_config, respond

api_bp = Blueprint('api', __name__, url_prefix='/api')


@api_bp.route('/')
def index():
    """Endpoint list with example request bodies."""
    rules = sorted(rule.rule for rule in current_app.url_map.iter_rules() if rule.rule.startswith('/api'))
    return jsonify({'endpoints': rules, 'examples': example_payloads()})


@api_bp.route('/module/certify', methods=['POST'])
def module_certify():
    return respond(svc.module_certificate(json_body(), config=request_config()))


@api_bp.route('/selftest')
def selftest():
    """
    Run the acceptance criteria.
    ?suite= picks a subset, ?recursion=printed forces the negative control,
    ?scale= shrinks every sample size.
    """
    config = request_config()
    scale = request.args.get('scale', type=float)
    if scale is not None:
        config = replace(config, scale=scale)
    report = svc.selftest_report(
        request.args.get('suite', 'all'), request.args.get('recursion', 'corrected'), config=config
    )
    return respond(report)
