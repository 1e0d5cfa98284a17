"""
Flask application entry point for the Kronecker twistor toolkit.

The application factory wires the JSON blueprints from the routes package
and exposes the `kron` command group as `flask kron ...`.
"""

from typing import Optional

from flask import Flask, jsonify

from cli import kron
from config import RunConfig
from errors import InvalidInputError
from routes import register_blueprints


def create_app(config: Optional[RunConfig] = None):
    """
    Application factory function to create and configure Flask app.

    Args:
        config: Run settings shared by every request; defaults to the
            environment (KRON_SEED) on top of the module defaults.

    Returns:
        Flask: Configured Flask application instance
    """
    app = Flask(__name__)
    app.config["KRON"] = config or RunConfig.from_env()

    @app.errorhandler(InvalidInputError)
    def invalid_request(exc):
        app.logger.info("rejected request: %s", exc)
        return jsonify({"status": "invalid", "error": str(exc)}), 400

    register_blueprints(app)
    app.cli.add_command(kron)
    return app


if __name__ == '__main__':
    app = create_app()
    app.run(debug=True, host='127.0.0.1', port=5000)
