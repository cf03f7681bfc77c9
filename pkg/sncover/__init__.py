"""sncover: covering the irreducibles of S_n with tensor products."""

__version__ = "0.1.0"

from .diagram import Partition, conjugate, dimension, hsum, vsum  # noqa: E402
from .kronecker import Support, covers, kronecker, min_cover_power, tensor_support  # noqa: E402

__all__ = [
    "Partition",
    "Support",
    "__version__",
    "conjugate",
    "covers",
    "dimension",
    "hsum",
    "kronecker",
    "min_cover_power",
    "tensor_support",
    "vsum",
]
