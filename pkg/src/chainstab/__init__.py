"""Exact stability calculus for holomorphic chains and Higgs fixed-point data."""
from .core import (CapExceeded, ChainError, ChainType, HiggsFixedType, HNType,
                   alpha_higgs, canonical_json)
from .calculus import (chi_chain, chi_hom, chain_to_higgs, higgs_to_chain,
                       hn_codim, hn_stratum_dim, pic_dim_identity, slope, stack_dim,
                       weight)
from .stability import Wall, existence_necessary, is_critical, test_chains
from .walls import Segment, perturb_to_single_walls, walls_on_segment
from .hn import (enumerate_flip_types, is_maximal_type, maximal_pair_feasible,
                 maximal_summand_pattern, opposite_type)
from .atlas import enumerate_components, wt_order_dag
from .pathfinder import find_path, verify_certificate

__version__ = "0.1.0"
