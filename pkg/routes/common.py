"""
Helpers shared by the JSON blueprints.
"""

from dataclasses import replace

from flask import current_app, jsonify, request

from config import RunConfig, parse_seed
from errors import InvalidInputError

HTTP_STATUS = {'ok': 200, 'invalid': 400, 'violation': 422}


def respond(report):
    return jsonify(report), HTTP_STATUS.get(report.get('status'), 500)


def request_config() -> RunConfig:
    """App-wide RunConfig with an optional ?seed= override."""
    config = current_app.config['KRON']
    seed = request.args.get('seed')
    if seed is not None:
        config = replace(config, seed=parse_seed(seed))
    return config


def json_body():
    """Parsed JSON body, or None when there is none; services reject None."""
    return request.get_json(silent=True)


def int_arg(name: str, default=None) -> int:
    raw = request.args.get(name)
    if raw is None:
        if default is None:
            raise InvalidInputError(f"Query parameter {name!r} is required.")
        return default
    try:
        return int(raw)
    except ValueError:
        raise InvalidInputError(f"Query parameter {name!r} must be an integer.")
