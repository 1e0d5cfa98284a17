"""
Bundle Routes - cohomology and splitting of bundles on P^1
"""

from flask import Blueprint, request

import kron_service as svc
from .common import int_arg, json_body, request_config, respond

bundle_bp = Blueprint('bundle', __name__, url_prefix='/api/bundle')


@bundle_bp.route('/h0', methods=['POST'])
def h0():
    """h0/h1 at ?twist=, or the whole table when no twist is given."""
    twist = int_arg('twist') if 'twist' in request.args else None
    return respond(svc.bundle_h0(json_body(), twist, config=request_config()))


@bundle_bp.route('/splitting', methods=['POST'])
def splitting():
    return respond(svc.bundle_splitting(json_body(), config=request_config()))


@bundle_bp.route('/generic-section')
def generic_section():
    h0_list = svc.parse_h0_list(request.args.get('h0', ''))
    variant = request.args.get('variant', 'corrected')
    return respond(svc.bundle_generic_section(h0_list, int_arg('rank'), variant, config=request_config()))
