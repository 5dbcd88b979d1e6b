"""Colored HOMFLY-PT invariants of rational knots and links via skein, quiver and winding-number routes."""
__version__ = "0.1.0"
