"""Hash-family construction, verification, and covering-array composition."""

from .ca import (
    CaReport,
    CoverageWitness,
    CoveringArray,
    compose_dhf,
    compose_hetgen,
    compose_phf,
    full_factorial_ca,
    greedy_ca,
    normalize_constant_rows,
    parse_ca,
    serialize_ca,
    verify_ca,
)
from .catalog import DHF_4_10, PHF_4_5
from .construct import (
    DISTINCT,
    BipartiteColoring,
    Covering,
    FractalIngredient,
    all_d_subsets_covering,
    append_distinct_rows,
    best_factor_pair,
    blackburn_compose,
    construct_52,
    construct_d1,
    construct_dgen,
    construct_dn1,
    construct_dn2,
    construct_dn3,
    construct_dn4,
    construct_dn5,
    cyclic_covering,
    dhhf3,
    easy_product,
    extend_strength,
    konig_edge_color,
    parse_covering,
    serialize_covering,
    varbb_extend,
)
from .core import (
    HashFamily,
    Partition,
    VerifyReport,
    canonicalize,
    concat_disjoint,
    parse,
    serialize,
)
from .tables import (
    ANOMALY_KEYS,
    DiffReport,
    ExistenceTable,
    FixtureRecord,
    TableEntry,
)
from .verify import (
    BoundCheckResult,
    SingletonArray,
    UncoveredSubsetError,
    alpha_of,
    check_column_bound,
    check_niu_cao,
    check_singleton_cover,
    count_separating_rows,
    dhhf_check_count,
    fractal_check_count,
    implies_perfect,
    is_fractal_by_singletons,
    restricted_growth_strings,
    rgs_total,
    sample_verify,
    separates,
    singleton_array,
    verify_covering,
    verify_dhhf,
    verify_fractal,
    verify_phf,
)

__version__ = "0.1.0"

__all__ = [
    "ANOMALY_KEYS",
    "BipartiteColoring",
    "BoundCheckResult",
    "CaReport",
    "CoverageWitness",
    "Covering",
    "CoveringArray",
    "DHF_4_10",
    "DISTINCT",
    "DiffReport",
    "ExistenceTable",
    "FixtureRecord",
    "FractalIngredient",
    "HashFamily",
    "PHF_4_5",
    "Partition",
    "SingletonArray",
    "TableEntry",
    "UncoveredSubsetError",
    "VerifyReport",
    "all_d_subsets_covering",
    "alpha_of",
    "append_distinct_rows",
    "best_factor_pair",
    "blackburn_compose",
    "canonicalize",
    "check_column_bound",
    "check_niu_cao",
    "check_singleton_cover",
    "compose_dhf",
    "compose_hetgen",
    "compose_phf",
    "concat_disjoint",
    "construct_52",
    "construct_d1",
    "construct_dgen",
    "construct_dn1",
    "construct_dn2",
    "construct_dn3",
    "construct_dn4",
    "construct_dn5",
    "count_separating_rows",
    "cyclic_covering",
    "dhhf3",
    "dhhf_check_count",
    "easy_product",
    "extend_strength",
    "fractal_check_count",
    "full_factorial_ca",
    "greedy_ca",
    "implies_perfect",
    "is_fractal_by_singletons",
    "konig_edge_color",
    "normalize_constant_rows",
    "parse",
    "parse_ca",
    "parse_covering",
    "restricted_growth_strings",
    "rgs_total",
    "sample_verify",
    "separates",
    "serialize",
    "serialize_ca",
    "serialize_covering",
    "singleton_array",
    "verify_ca",
    "verify_covering",
    "verify_dhhf",
    "verify_fractal",
    "verify_phf",
]
