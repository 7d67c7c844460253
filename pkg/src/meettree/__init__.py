"""Finite meet-trees, their quantifier-free types, and type decompositions."""

from ._kernels import BACKEND
from .errors import (
    BudgetExceeded,
    CutUncovered,
    DuplicateNodeError,
    EmbeddingError,
    FormulaParseError,
    InconsistentInputs,
    InvalidTreeError,
    MeetTreeError,
    MissingAnchor,
    NonMeetClosedError,
    NotAnEdgeError,
    RealisedTypeError,
    SproutMonoidMismatch,
    UnknownNodeError,
)
from .dommonoid import (
    CONE_TYPES,
    EMPTY_ELEMENT,
    NAT,
    MonoidElement,
    MultisetMonoid,
    NatMonoid,
    class_of_tuple,
    leq,
    monoid_from_json,
    monoid_to_json,
    mul,
    render_element,
    wort,
)
from .enumerate_ext import entails, enumerate_extensions
from .expansion import (
    DTR,
    ConeQuotient,
    ExpandedStructure,
    Signature,
    cone_quotient,
    decorate_random,
    eval_formula,
    induced_structure,
    term_value,
    validate_expansion,
)
from .formulas import (
    And,
    Cmp,
    Meet,
    Not,
    Or,
    Rel,
    constraints_to_text,
    parse_constraints,
    parse_formula,
    term,
    to_text,
)
from .qftype import (
    QfType,
    check_qftype,
    make_terms,
    qf_type_of,
    qftype_from_json,
    qftype_to_json,
    restrict,
    shift_vars,
    type_constraints,
    var_name,
)
from .reconstruct import reconstruct_pair_type
from .serialize import structure_from_json, structure_to_json, to_dot
from .symtype import (
    DOM_EQUIVALENT,
    EMPTY_CUT,
    IA,
    IB,
    II,
    IIIA,
    IIIB,
    KINDS,
    ORTHOGONAL,
    REALISED,
    REALISED_ABSORBED,
    ExistingCone,
    Graft,
    NewCone,
    SymbolicCut,
    SymbolicType1,
    classify_point,
    graft_of,
    is_equidominant,
    relate,
    sprout_of,
    symbolic_catalog,
    symtype_from_json,
    symtype_to_json,
)
from .tameness import (
    Above,
    InCutBelow,
    NewConeAbove,
    TameCounterexample,
    generic_point_types,
    tame_check,
    tame_report,
    tame_search,
)
from .tree import (
    AddBelowRoot,
    AddBetween,
    AddNewCone,
    ExtensionMove,
    MeetTree,
    Violation,
    amalgamate,
    compare,
    cone_child,
    extend,
    induced_tree,
    is_le,
    meet,
    meet_closure,
    one_point_moves,
    random_tree,
    validate,
)
from .witness import MeetWitness, check_witness, meet_witness

__all__ = [
    "BACKEND",
    "MeetTree",
    "Violation",
    "validate",
    "compare",
    "meet",
    "is_le",
    "meet_closure",
    "cone_child",
    "ExtensionMove",
    "AddNewCone",
    "AddBetween",
    "AddBelowRoot",
    "extend",
    "one_point_moves",
    "random_tree",
    "amalgamate",
    "induced_tree",
    "Signature",
    "DTR",
    "ExpandedStructure",
    "ConeQuotient",
    "validate_expansion",
    "decorate_random",
    "cone_quotient",
    "induced_structure",
    "term_value",
    "eval_formula",
    "enumerate_extensions",
    "entails",
    "Above",
    "NewConeAbove",
    "InCutBelow",
    "generic_point_types",
    "TameCounterexample",
    "tame_check",
    "tame_search",
    "tame_report",
    "Meet",
    "Cmp",
    "Rel",
    "Not",
    "And",
    "Or",
    "term",
    "parse_formula",
    "parse_constraints",
    "to_text",
    "constraints_to_text",
    "QfType",
    "make_terms",
    "var_name",
    "qf_type_of",
    "check_qftype",
    "restrict",
    "shift_vars",
    "type_constraints",
    "qftype_to_json",
    "qftype_from_json",
    "reconstruct_pair_type",
    "structure_to_json",
    "structure_from_json",
    "to_dot",
    "REALISED",
    "IA",
    "IB",
    "II",
    "IIIA",
    "IIIB",
    "KINDS",
    "ORTHOGONAL",
    "DOM_EQUIVALENT",
    "REALISED_ABSORBED",
    "EMPTY_CUT",
    "SymbolicCut",
    "ExistingCone",
    "NewCone",
    "SymbolicType1",
    "Graft",
    "classify_point",
    "relate",
    "is_equidominant",
    "graft_of",
    "sprout_of",
    "symbolic_catalog",
    "symtype_to_json",
    "symtype_from_json",
    "NatMonoid",
    "MultisetMonoid",
    "NAT",
    "CONE_TYPES",
    "MonoidElement",
    "EMPTY_ELEMENT",
    "mul",
    "leq",
    "wort",
    "class_of_tuple",
    "render_element",
    "monoid_to_json",
    "monoid_from_json",
    "MeetWitness",
    "meet_witness",
    "check_witness",
    "MeetTreeError",
    "InvalidTreeError",
    "UnknownNodeError",
    "DuplicateNodeError",
    "NotAnEdgeError",
    "EmbeddingError",
    "NonMeetClosedError",
    "CutUncovered",
    "MissingAnchor",
    "InconsistentInputs",
    "BudgetExceeded",
    "FormulaParseError",
    "SproutMonoidMismatch",
    "RealisedTypeError",
]

__version__ = "0.1.0"
