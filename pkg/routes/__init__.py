"""
Routes Package - Initialize all route blueprints
"""

from .api_routes import api_bp
from .blowup_routes import blowup_bp
from .bundle_routes import bundle_bp
from .curve_routes import curve_bp
from .quadric_routes import quadric_bp


def register_blueprints(app):
    """Register all route blueprints with the Flask app."""
    app.register_blueprint(api_bp)
    app.register_blueprint(curve_bp)
    app.register_blueprint(bundle_bp)
    app.register_blueprint(quadric_bp)
    app.register_blueprint(blowup_bp)
