"""Neighbor-set k-anonymity and (k,l)-anonymity for simple graphs, structural
re-identification attacks, and n-confusion for tables."""

from .anonymity import (AnonymityReport, Definition, is_feder_kl, is_k_anonymous,
                        is_k_degree_anonymous, is_k_neighborhood_anonymous,
                        is_kl_anonymous_def1, is_kl_anonymous_def2, k_candidate_check,
                        largest_l_alg2, largest_l_alg3, largest_l_exact_def1,
                        largest_l_exact_def2, max_k)
from .anonymize import alg1_anonymize, alg4_boost, cluster_rows, generalize
from .attack import attack_report, candidate_set, gen_example6
from .clustering import Clustering
from .errors import BudgetError, CapabilityError, GraphAnonError, ParameterError, ParseError
from .graph import (Graph, generate, induced_subgraph, load_edge_list, neighbor_partition,
                    neighbor_vector, save_edge_list)
from .similarity import SimilarityKind, sim_2path, sim_l1, similarity_matrix

__version__ = "0.1.0"
