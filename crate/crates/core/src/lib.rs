//! Exact Abelian Turaev–Viro invariants and U(1)-BF partition functions of
//! closed oriented manifolds given as cellular chain complexes.
//!
//! All quantities are computed with arbitrary-precision integers and
//! rationals. Most invariants can be obtained in several independent ways
//! (brute-force enumeration, Smith normal form, homological closed forms),
//! which the test suites compare against each other.

pub mod complex;
pub mod enumerate;
pub mod error;
pub mod homology;
pub mod intlinalg;
pub mod invariants;

pub use complex::{
    build_lens, build_point, build_sphere3_figure, build_sphere_minimal, tensor_product,
    ChainComplex, Labeling,
};
pub use enumerate::{EnumerationCap, Strategy};
pub use error::{Error, Result};
pub use homology::{
    cocycle_count_recursion_check, count_cocycles, ensure_connected, hom_to_zk_size, homology,
    homology_all, mod_k_cohomology_size, CocycleMethod, HomologyGroup, ModKSizes, RecursionCheck,
};
pub use intlinalg::{count_kernel_mod_k, rank, smith_normal_form, IntMatrix, SnfResult};
pub use invariants::{
    bf_partition, bf_partition_from_pairing, bf_tv_factor, bf_tv_relation_check,
    discrete_bf_double_sum, pairing_sum, pairing_sum_float, tv_closed_form, tv_invariant, BfMethod,
    BfValue, DiscreteBfValue, Normalization, RelationReport, TorsionPairing, TvMethod, TvValue,
};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;
