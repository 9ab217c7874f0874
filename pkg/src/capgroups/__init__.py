"""Exact verification of capable p-group witnesses."""

from .capability import (
    PredictedTerm,
    WitnessReport,
    check_lemma,
    expected_lcs,
    exponent_gap,
    scan,
    verify_witness,
    witness_easterfield,
)
from .constructions import EasterfieldSpec, binomial, dihedral, easterfield, easterfield_subgroup
from .core import (
    DEFAULT_CAP,
    GroupElement,
    GroupError,
    SplitGroup,
    Subgroup,
    center,
    comm,
    element_order,
    enumerate_group,
    frattini_rank,
    inv,
    lower_central_series,
    make_group,
    mul,
    normal_closure,
    order_mod_subgroup,
    power,
    subgroup_closure,
)

__version__ = "0.1.0"
