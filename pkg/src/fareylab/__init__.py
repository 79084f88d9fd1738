"""Finite Farey graphs, the class K, block structure and expanded-language predicates."""
from .errors import AmalgamationError, CapError, FareyError, GraphError, ModelSpecError, NotStrongError
from .graph import Graph, canonical_form, geodesics, induced_embeddings
from .farey import ColoredFarey, EdgeColor, build_level, level_counts, union_limit_view
from .kclass import is_in_K, is_strong, peel, removable_vertices
from .amalgam import AmalgamResult, amalgamate_in_K, free_amalgam
from .models import ModelSpec, TreeEdge, build_generic, build_tree_model, t_compliance
from .decomp import acl, build_g_tree, conv_m, edge_equivalence_classes, gate, is_independent

__version__ = "0.1.0"
