"""shiftlab: exact symbolic dynamics on finite groups, Z, and rotation codings."""

__version__ = "0.1.0"
