"""Element orders in covers of simple linear and unitary groups."""

__version__ = "0.1.0"
