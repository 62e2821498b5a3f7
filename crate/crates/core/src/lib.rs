//! Exact counting of 1-factors and 1-factorizations of uniform hypergraphs,
//! permanents of multidimensional (0,1)-matrices, and exact verification of
//! the upper bounds that relate them.
//!
//! ```
//! use hyperfactor::{count_one_factors, permanent, Hypergraph, SearchConfig};
//!
//! let g = Hypergraph::complete(6, 3).unwrap();
//! let cfg = SearchConfig::default();
//! assert_eq!(count_one_factors(&g, &cfg).unwrap(), 10u32.into());
//! let per = permanent(&g.adjacency_tensor().unwrap(), &cfg).unwrap();
//! assert!(per >= 1000u32.into());
//! ```

pub mod bounds;
pub mod error;
pub mod factorization;
mod format;
pub mod generate;
pub mod hypergraph;
pub mod latin;
pub mod numeric;
pub mod permanent;
pub mod search;
pub mod tensor;

pub use bounds::{
    check_conjecture_d3, check_corollary_degrees, check_dow_gibson, check_lemma4,
    check_permanent_root, check_proof_identities, check_schrijver, check_theorem4,
    check_theorem5_partite, check_trivial, factorization_bound_main_terms, mu, phi_complete_exact,
    CheckReport, MainTerm, MainTermsReport, MuValue, ProofIdentities, Relation, Verdict,
};
pub use error::{Error, Result};
pub use factorization::{
    count_factorizations, count_one_factors, count_proper_decompositions,
    count_proper_edge_colorings, count_proper_edge_colorings_with, count_proper_orientations,
    d_factor_classes, d_factor_of_tuple, d_tuples_of_factors, enumerate_one_factors,
    for_each_proper_orientation, gamma_size, multiplicity_product, orientation_to_diagonal,
    DFactorClass, FactorizationCount, OneFactor, Orientation,
};
pub use hypergraph::{
    balanced_partite_hypergraph, BipartiteGraph, Edge, Hypergraph, PartiteHypergraph,
};
pub use latin::{
    build_u, count_latin_fixed_column, count_latin_fixed_column_direct, count_latin_squares,
    for_each_latin_square, latin_lower_bound, satisfies_latin_lower_bound, LatinSquare,
};
pub use numeric::{binomial, factorial, LogValue};
pub use permanent::{
    asym_main_term, dow_gibson_bound, permanent, permanent_2d_int, permanent_2d_ryser,
    schrijver_lower_bound, trivial_upper_bound, BoundComparison, ComparisonMethod, DowGibsonBound,
    IntMatrix2D,
};
pub use search::{SearchConfig, DEFAULT_NODE_BUDGET};
pub use tensor::{is_diagonal, BoolTensor, Diagonal, MultiIndex};
