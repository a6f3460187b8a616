"""Metapath search and projections for metagraphs."""

from .core import (
    DuplicateEdge,
    DuplicateElement,
    Edge,
    ElementNotInGeneratingSet,
    InvalidEdgeId,
    Metagraph,
    MetagraphError,
    Metapath,
    UnknownElement,
    forward_closure,
    is_grounded,
    is_metapath,
    metapath_accounting,
)
from .generators import HnInstance, InvalidN, InvalidParams, gen_hn, gen_random
from .io import (
    DocumentSyntaxError,
    SemanticError,
    VersionError,
    export_dot,
    parse_metagraph,
    serialize_metagraph,
    serialize_projection,
)
from .oracle import BudgetExceeded, Factorization, enumerate_dominant_metapaths_oracle, factorize_metapath, is_irreducible
from .pathfinding import get_all_metapaths, get_single_metapath, get_superpath
from .projection import (
    EmptyPath,
    ProjectionResult,
    SubsetNotInGeneratingSet,
    bbp_oracle,
    projection_edge,
    tpp,
    tpp_oracle,
)
from .settrie import SetTrie, SetTrieMultiMap

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
