"""jkforge: exact truncated computations with non-unital algebras, simplex
function algebras, classifying maps and polynomial homotopy certificates."""

__version__ = "0.1.0"
