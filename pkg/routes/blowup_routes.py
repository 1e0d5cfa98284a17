"""
Blowup Routes - sections of the blown-up P^3
"""

from flask import Blueprint

import kron_service as svc
from .common import json_body, request_config, respond

blowup_bp = Blueprint('blowup', __name__, url_prefix='/api/blowup')


@blowup_bp.route('/classify', methods=['POST'])
def classify():
    return respond(svc.blowup_classify(json_body(), config=request_config()))


@blowup_bp.route('/module', methods=['POST'])
def module():
    return respond(svc.blowup_module_report(json_body(), config=request_config()))
