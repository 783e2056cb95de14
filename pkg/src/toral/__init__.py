"""Spatial graphs on the standard torus: arrangements, minors and chirality certificates."""

__version__ = "0.1.0"
