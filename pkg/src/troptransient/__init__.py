"""Exact max-plus matrix powers: CSR decompositions, transients and their bounds."""

from .core import (
    NEG_INF,
    TropMatrix,
    identity,
    kleene_star,
    mat_add,
    mat_mul,
    mat_pow,
    scalar_mul,
)
from .csr import CsrTriple, csr_of, csr_term
from .errors import *  # noqa: F401,F403
from .factor import Factorization, LiftPair, lift, related_components, verify_factorization
from .generate import generate_with_rank, random_irreducible
from .graph import (
    CyclicClassDecomposition,
    DigraphProfile,
    cyclic_classes,
    diagonal_blocks,
    enumerate_elementary_cycles,
    longest_elementary_path,
    profile,
)
from .schemes import (
    SchemeChoice,
    WeakExpansion,
    b_cycle_threshold,
    b_hartmann_arguelles,
    b_nachtigall,
    max_balancing,
)
from .transients import TransientResult, measure_T, measure_T1, measure_T2

__version__ = "0.1.0"
