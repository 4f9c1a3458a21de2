"""Calculus definitions and the proof checker."""

from seqcalc.calculi.sequent import Sequent, parse_sequent, print_sequent
from seqcalc.calculi.proof import (
    Proof,
    ProofSyntaxError,
    parse_proof,
    parse_proof_file,
    print_proof,
    proof_size,
)
from seqcalc.calculi.check import (
    CALCULI,
    CheckReport,
    Violation,
    calculus_logic,
    check_proof,
    end_sequent,
    in_subcalculus,
    proof_depth,
)

__all__ = [
    "Sequent",
    "parse_sequent",
    "print_sequent",
    "Proof",
    "ProofSyntaxError",
    "parse_proof",
    "parse_proof_file",
    "print_proof",
    "proof_size",
    "CALCULI",
    "CheckReport",
    "Violation",
    "calculus_logic",
    "check_proof",
    "end_sequent",
    "in_subcalculus",
    "proof_depth",
]
