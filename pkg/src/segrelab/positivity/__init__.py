"""Theorem checkers, lemma verifier, lattice searches, families and scanners."""

from .criteria import (
    blowup_segre_bound_holds,
    bundle_from_invariants,
    check_abelian,
    check_blowup,
    check_enriques,
    check_enriques_conjecture,
    check_general_type,
    check_k3,
)
from .families import (
    FamilyReport,
    enriques_small_cases,
    family_abelian_line_bundle,
    family_blowup_line_bundle,
    family_k3_line_bundle,
    family_lazarsfeld_mukai,
    family_semihomogeneous,
    family_ulrich,
)
from .lattice import bs_obstruction_blowup, bs_obstruction_rank1, seshadri_lower_bound
from .lemma import LemmaReport, LemmaViolation, verify_lemma_claim, verify_positivity_lemma
from .scan import (
    SCANNERS,
    ScanReport,
    ScanRow,
    positivity_thresholds,
    scan_abelian,
    scan_blowup,
    scan_curve,
    scan_enriques,
    scan_general_type,
    scan_k3,
    scan_lemma,
    scan_quot,
)
