"""Resource estimation and logical compilation for fault-tolerant quantum chemistry."""

__version__ = "0.1.0"
