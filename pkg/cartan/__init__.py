"""
Cartan CR curvature of Levi-nondegenerate real hypersurfaces in C^2.
Jet kernel, expression language and the graph / implicit invariant engines.
"""
__version__ = "0.1.0"

from .errors import CartanError  # noqa: F401
from .expr_lang import parse  # noqa: F401
from .graph_engine import GraphHypersurface, cartan_invariant_graph  # noqa: F401
from .implicit_engine import ImplicitHypersurface, cartan_locus_iw  # noqa: F401
from .implicit_graph import ImplicitGraph  # noqa: F401
from .levi import psh_check  # noqa: F401
