"""Initial degrees of symbolic powers of point ideals, with exact arithmetic."""
__version__ = "0.1.0"
