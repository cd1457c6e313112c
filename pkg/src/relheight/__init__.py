"""Certified Weil heights, Mahler measures, multiplicative ranks, and
fully explicit height lower bounds for algebraic numbers over number
fields."""

from .boundeval import (
    BoundReport,
    ConstantsConfig,
    amoroso_delsinne_floor,
    amoroso_viada_floor,
    delsinne_constants,
    delsinne_product_floor,
    dobrowolski_floor,
    f1_g1_crossing,
    gl3_order,
    phi_constant_C,
    rosser_totient_floor,
    theorem1_bound,
    theorem2_bound,
    voutier_f1,
    voutier_g1,
    voutier_height_floor,
)
from .corpus import CorpusEntry, iter_corpus, load_corpus
from .errors import (
    CertificationFailure,
    DegreeLimitError,
    DomainError,
    HypothesisViolation,
    InputError,
    NotAFieldError,
    PrecisionExhausted,
    RelHeightError,
    ZeroPolynomialError,
)
from .exactpoly import (
    IntPolynomial,
    cyclotomic,
    euler_phi,
    factor_rationals,
    kronecker_test,
    poly,
)
from .heights import (
    AlgebraicNumber,
    RealInterval,
    mahler_measure,
    power,
    root_of_unity_order,
    weil_height,
)
from .logscalar import LogScalar
from .multrank import (
    RankResult,
    RelationLattice,
    brute_force_rank,
    find_relations,
    log_embedding_matrix,
    multiplicative_rank,
    verify_relation,
)
from .numfield import (
    NumberField,
    RelativeData,
    factor_over_field,
    field_torsion_order,
    lemma31_subfield_degree,
    make_field,
    rational_field,
    relative_data,
    relative_degree,
)
from .rootcert import ComplexBox, RootSet, isolate_roots, refine

__version__ = "1.0.0"

__all__ = [
    "AlgebraicNumber",
    "BoundReport",
    "CertificationFailure",
    "ComplexBox",
    "ConstantsConfig",
    "CorpusEntry",
    "DegreeLimitError",
    "DomainError",
    "HypothesisViolation",
    "InputError",
    "IntPolynomial",
    "LogScalar",
    "NotAFieldError",
    "NumberField",
    "PrecisionExhausted",
    "RankResult",
    "RealInterval",
    "RelHeightError",
    "RelationLattice",
    "RelativeData",
    "RootSet",
    "ZeroPolynomialError",
    "amoroso_delsinne_floor",
    "amoroso_viada_floor",
    "brute_force_rank",
    "cyclotomic",
    "delsinne_constants",
    "delsinne_product_floor",
    "dobrowolski_floor",
    "euler_phi",
    "f1_g1_crossing",
    "factor_over_field",
    "factor_rationals",
    "field_torsion_order",
    "find_relations",
    "gl3_order",
    "isolate_roots",
    "iter_corpus",
    "kronecker_test",
    "lemma31_subfield_degree",
    "load_corpus",
    "log_embedding_matrix",
    "mahler_measure",
    "make_field",
    "multiplicative_rank",
    "phi_constant_C",
    "poly",
    "power",
    "rational_field",
    "refine",
    "relative_data",
    "relative_degree",
    "root_of_unity_order",
    "rosser_totient_floor",
    "theorem1_bound",
    "theorem2_bound",
    "verify_relation",
    "voutier_f1",
    "voutier_g1",
    "voutier_height_floor",
    "weil_height",
]
