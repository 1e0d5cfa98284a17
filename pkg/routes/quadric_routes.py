"""
Quadric Routes - lines on the incidence quadric
"""

from flask import Blueprint, request

import kron_service as svc
from .common import json_body, request_config, respond

quadric_bp = Blueprint('quadric', __name__, url_prefix='/api/quadric')


@quadric_bp.route('/classify', methods=['POST'])
def classify():
    return respond(svc.quadric_classify(json_body(), config=request_config()))


@quadric_bp.route('/real', methods=['POST'])
def real():
    return respond(svc.quadric_real(json_body(), config=request_config()))


@quadric_bp.route('/fibration', methods=['POST'])
def fibration():
    return respond(svc.quadric_fibration(json_body(), config=request_config()))


@quadric_bp.route('/orbit', methods=['POST'])
def orbit():
    """Body {"first": tuple, "second": tuple}."""
    body = json_body()
    if not isinstance(body, dict):
        body = {}
    return respond(svc.quadric_orbit(body.get('first'), body.get('second'), config=request_config()))


@quadric_bp.route('/metric', methods=['GET', 'POST'])
def metric():
    point = json_body() if request.method == 'POST' else None
    return respond(svc.quadric_metric(point, config=request_config()))


@quadric_bp.route('/convention')
def convention():
    return respond(svc.quadric_convention(config=request_config()))
