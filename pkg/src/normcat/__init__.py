"""normcat: seminorms and norms on finite categories, and the distances they induce."""

__version__ = "0.1.0"
