"""qh-alcove: quantum cohomology of G/P and the polytope of conjugacy-class products."""

try:
    from qh_alcove._version import __version__
except ImportError:
    __version__ = "0.0.0.dev0"

__all__ = ["__version__"]
