"""
Curve Routes - rational curves in P^n
"""

from flask import Blueprint

import kron_service as svc
from .common import int_arg, json_body, request_config, respond

curve_bp = Blueprint('curve', __name__, url_prefix='/api/curve')


@curve_bp.route('/analyze', methods=['POST'])
def analyze():
    """Validate the posted curve and report its normal bundle data."""
    return respond(svc.analyze_curve(json_body(), config=request_config()))


@curve_bp.route('/random')
def random_curve():
    """Analyze the curve drawn from ?d=&n=&generator=."""
    config = request_config()
    report = svc.analyze_random_curve(
        int_arg('d'), int_arg('n'), int_arg('generator', config.seed), config=config
    )
    return respond(report)


@curve_bp.route('/table')
def table():
    return respond(svc.random_curve_table(int_arg('d'), int_arg('n'), int_arg('count', 10), config=request_config()))
