"""Finite combinatorics of free dimension: Boolean atoms, independence,
Sauer-Shelah witnesses, interval and initial chain algebras, free products,
and a cover refinement calculus.

Everything here is a finite shadow of statements about infinite compacta and
Boolean algebras; passing checks are evidence, not proofs.
"""
from .setsys import (
    AtomPartition,
    SetFamily,
    Signature,
    TraceSet,
    atoms,
    binomial_bound,
    independence_number,
    is_independent,
    is_irredundant,
    realized_trace,
    sauer_shelah_find,
)
from .algebras import (
    ChainCuts,
    ClassDCertificate,
    ProductFamily,
    Pseudotree,
    certify_class_d,
    chain_initial_segments,
    free_product,
    growth_bound_report,
    heindorf_check,
    ica_bound_report,
    initial_chains,
    wellmet_closure,
)
from .coverlab import (
    Cover,
    CountingParams,
    GrowthWitness,
    SeparatedInstance,
    atoms_refinement,
    build_grid_instance,
    counting_check,
    exponent_fit,
    find_min_n,
    good_cover_floor,
    interval_joint_refinement,
    is_good,
    is_refinement,
    oscillation,
    product_cover,
    push_cover,
    restrict_cover,
    separated_family,
    witness_check,
)

__version__ = "0.1.0"
