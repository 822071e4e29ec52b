"""Multiplicative 3-Sidon sets: factorization splits, hexagon encoding,
edge ledgers, Omega census and small exact searches."""

__version__ = "0.1.0"

from .arith import FactorSieve, big_omega, build_sieve, factor_desc, prime_pi
from .decompose import (Case, Decomposition, enumerate_valid_splits, lemma_decompose,
                        min_v_decompose)
from .encode import EdgeGraph, Hexagon, build_graph, find_hexagon, hexagon_to_solution
from .errors import BudgetExceeded, InvalidArgument, OutOfRange
from .extremal import (bound_furedi_balanced, bound_furedi_unbalanced, bound_gyori,
                       brute_force_ex_c6, brute_force_ex_c6_bipartite, is_c6_free)
from .ledger import (BoundConstants, PartitionLedger, census, g3_bound_report,
                     partition_edges, theoretical_caps)
from .sidonkit import (SearchResult, Violation, base_construction, exact_max_3sidon,
                       greedy_3sidon, verify_k_sidon, verify_square_free_products)
