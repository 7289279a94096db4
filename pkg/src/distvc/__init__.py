"""Distance VC-dimension of graphs and the Erdos-Posa property of ball hypergraphs."""

from .balls import BallHypergraph, DistanceVCResult, b_all, b_ell, distance_vc, self_duality_check
from .disconnect import (
    DisconnectingFamily,
    ShatterCertificate,
    equidistant_disconnecting,
    shatter_certificate,
    verify_disconnecting,
)
from .errors import CapExceeded, Infeasible, InvariantViolation
from .generators import GnlGraph, cograph_with_tree, family, gnl, pairs_hypergraph
from .graph import Cross, EdgeOrder, Graph, ball, find_crosses, lex_min_path
from .harness import InstanceReport, check_instance, dsw_bound, run_experiments
from .hypergraph import (
    Hypergraph,
    dual,
    packing_number,
    pq_property,
    transversality,
    two_vc_dimension,
    vc_dimension,
)
from .interference import InterferenceMatrix, proper_submatrix, ramsey_extract
from .minors import MinorModel, PairWitness, extract_clique_minor, find_pair_witnesses, verify_minor_model
from .pairs import PairContext, build_pair_context, escape_analysis, independent_subpair, jump_paths
from .rank import TernaryTree, balanced_edge, cutrank, neighborhood_partition, width
from .verdict import Verdict

__version__ = "0.1.0"
