"""Extended causal models: structural equations plus a normality order on worlds."""

from .causation import CauseQuery, Grading, Verdict, actual_cause, grade, sufficient_condition
from .cost import CostReport, representation_cost
from .defaults import CompactSpec, Comparison, apply_rule2, compile_spec, expand_rule1, normality_order
from .dsl import format_document, load, load_file, parse_document, parse_expr, parse_model
from .errors import *  # noqa: F401,F403
from .export import export_order, network_from_json, network_to_json
from .expr import BinOp, Call, Const, IfThenElse, Table, Var
from .model import (
    CausalModel,
    Signature,
    World,
    build_model,
    check_acyclic,
    counterfactually_depends,
    enumerate_worlds,
    intervene,
    solve,
)
from .network import (
    AtomOrder,
    Cpt,
    FormalProduct,
    PlausibilisticNetwork,
    close_atom_order,
    compare_products,
    induced_order,
    world_plausibility,
)
from .plausibility import (
    BOTTOM,
    TOP,
    PlausibilityValue,
    check_cpm_axioms,
    check_independence,
    compare_values,
    conditional_plausibility,
)
from .preorder import Preorder, Relation, equivalence_class, lift_preorder
