"""chibox: construction, symbolic algebra, profiling and costing of the chi family.

The package is organized as:

  boolmap     truth tables and the mapping algebra (+, compose, Hadamard),
              permutation machinery, ANF and degrees
  families    constructors for chi, chi_{n,m}, theta_{m,k}, chi'_{n,3},
              cchi and block concatenation
  thetagroup  coefficient-vector algebra of the unit group G_{n,m}
  metrics     differential, Walsh, boomerang and DLCT spectra
  cost        gate-equivalent area and latency-stage estimation
  cli         the chibox command line tool
"""

from .boolmap import (
    MAX_N,
    AnfTable,
    CycleReport,
    NotAPermutation,
    TruthTable,
    anf,
    bits_of,
    component_degree,
    compose,
    constant_table,
    cycle_structure,
    fixed_points,
    from_anf,
    hadamard,
    identity_table,
    invert,
    is_permutation,
    iterate,
    pointwise_add,
    shift,
    table_degree,
    table_from_entries,
    table_from_json,
    table_to_json,
    word_from_bits,
)
from .cost import (
    GATE_KINDS,
    TECHNOLOGIES,
    CircuitTemplate,
    GateLibrary,
    GateUnavailableError,
    area_estimate,
    cchi_template,
    chi_prime3_template,
    chi_template,
    dump_gate_libraries,
    latency_stages,
    load_gate_libraries,
    load_gate_library,
    shipped_gate_csv,
    shipped_libraries,
    template_by_name,
)
from .families import (
    FamilyParseError,
    FamilySpec,
    build,
    make_cchi,
    make_chi,
    make_chi_nm,
    make_chi_prime3,
    make_concat,
    make_theta,
    parse_family,
    spec_string,
)
from .metrics import (
    DOM_A_NONZERO,
    DOM_AB_NONZERO,
    DOM_ALL_PAIRS,
    SpectrumReport,
    boomerang_spectrum,
    differential_spectrum,
    dlct_spectrum,
    render_spectrum,
    report_to_json,
    walsh_spectrum,
    walsh_values,
)
from .thetagroup import (
    NonUnitError,
    ThetaComb,
    bitstring,
    chi_comb,
    comb_from_bitstring,
    comb_to_table,
    element_order,
    fixed_point_predicate,
    group_inverse,
    group_mul,
    identity_comb,
    is_involution,
    iterate_coeffs,
    order_exponent,
    predicate_fixed_set,
)

__version__ = "1.0.0"
