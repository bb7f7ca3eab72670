"""Symbolic calculus for 4-manifold handle diagrams.

Diagrams record dotted circles (1-handles doubling as free-group
generators), framed 2-handles with reduced attaching words and pairwise
linking numbers, and counts of 3-/4-handles.  On top of that sit the
handle moves with exact bookkeeping, exact homology and
intersection-form invariants, the Gluck twist with its surgery
companions, and a line-oriented text format for all of it.
"""

from .canonical import InvalidDiagramError, canonical_form, canonical_hash, canonical_relabel
from .diagram import (
    FreeWord,
    HandleDiagram,
    LinkingData,
    TwoHandle,
    UnknownGeneratorError,
    exponent_vector,
    reduce_word,
    validate,
)
from .gluck import (
    CertificateError,
    CertTerm,
    SphericalClassCertificate,
    Verdict,
    check_gluck_triviality_hypothesis,
    gluck_twist,
    represent_spherical_class,
    surger_sphere,
    trivialize_gluck,
)
from .invariants import (
    FormData,
    IntMatrix,
    InvariantSummary,
    boundary_matrix,
    congruence_diagonalize,
    full_gram,
    has_odd_square_class,
    homology_summary,
    intersection_form,
    invariant_factors,
    invariant_summary,
    is_free_trivial,
    kernel_basis,
    restricted_gram,
    smith_normal_form,
)
from .lang import (
    ParseError,
    SourceSpan,
    format_word,
    parse_certificate,
    parse_diagram,
    parse_script,
    parse_word,
    serialize_diagram,
)
from .moves import (
    CancelPair12,
    CancelPair23,
    ExchangeDotToZero,
    ExchangeZeroToDot,
    GluckTwist,
    IntroducePair12,
    IntroducePair23,
    LogStep,
    Move,
    MoveError,
    MoveLog,
    MoveScript,
    SlideDot,
    SlideHandle,
    Surger,
    apply_move,
    apply_script,
    cancel_pair_12,
    cancel_pair_23,
    exchange_dot_to_zero,
    exchange_zero_to_dot,
    format_move,
    format_script,
    introduce_cancelling_pair,
    replay_log,
    slide_dot,
    slide_two_handle,
)

__all__ = [
    "CancelPair12",
    "CancelPair23",
    "CertTerm",
    "CertificateError",
    "ExchangeDotToZero",
    "ExchangeZeroToDot",
    "FormData",
    "FreeWord",
    "GluckTwist",
    "HandleDiagram",
    "IntMatrix",
    "IntroducePair12",
    "IntroducePair23",
    "InvalidDiagramError",
    "InvariantSummary",
    "LinkingData",
    "LogStep",
    "Move",
    "MoveError",
    "MoveLog",
    "MoveScript",
    "ParseError",
    "SlideDot",
    "SlideHandle",
    "SourceSpan",
    "SphericalClassCertificate",
    "Surger",
    "TwoHandle",
    "UnknownGeneratorError",
    "Verdict",
    "apply_move",
    "apply_script",
    "boundary_matrix",
    "cancel_pair_12",
    "cancel_pair_23",
    "canonical_form",
    "canonical_hash",
    "canonical_relabel",
    "check_gluck_triviality_hypothesis",
    "congruence_diagonalize",
    "exchange_dot_to_zero",
    "exchange_zero_to_dot",
    "exponent_vector",
    "format_move",
    "format_script",
    "format_word",
    "full_gram",
    "gluck_twist",
    "has_odd_square_class",
    "homology_summary",
    "intersection_form",
    "introduce_cancelling_pair",
    "invariant_factors",
    "invariant_summary",
    "is_free_trivial",
    "kernel_basis",
    "parse_certificate",
    "parse_diagram",
    "parse_script",
    "parse_word",
    "reduce_word",
    "replay_log",
    "represent_spherical_class",
    "restricted_gram",
    "serialize_diagram",
    "slide_dot",
    "slide_two_handle",
    "smith_normal_form",
    "surger_sphere",
    "trivialize_gluck",
    "validate",
]

__version__ = "0.1.0"
