"""Mapper / JCN discretizations of PL maps with certified Reeb-space
approximation bounds.

The heavy lifting lives in the `_reebmapper` extension module; this
package re-exports its surface.
"""

try:
    from ._reebmapper import *  # noqa: F401,F403  (installed wheel layout)
    from ._reebmapper import __doc__ as _doc
except ImportError:  # build-tree layout: extension on PYTHONPATH
    from _reebmapper import *  # noqa: F401,F403
    from _reebmapper import __doc__ as _doc

__doc__ = _doc
__all__ = [
    "Space",
    "Cover",
    "ReebGraph",
    "load_mesh",
    "parse_mesh_json",
    "fixture",
    "uniform_cover",
    "auto_cover",
    "image_bbox",
    "mapper",
    "jcn",
    "critical_values",
    "reeb_graph",
    "geometric_mapper",
    "rgraph_isomorphic",
    "components",
    "colimit_equivalence_check",
    "verify_interleaving",
    "certified_upper_bound",
    "convergence_csv",
    "tolerance",
    "set_tolerance",
]
