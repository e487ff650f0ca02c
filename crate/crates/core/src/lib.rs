//! Exact multiplier systems of the weight-one eta quotients
//! `eta((tau-1)/3) eta((tau+1)/3)` and `eta((tau-1)/4) eta((tau+1)/4)` on the
//! theta-type groups `Gamma_{theta,N} = {a = d, b = -c mod N}`, with kernel
//! classification, coset and cusp tools, and a numerical oracle.

pub mod arith;
pub mod cosets;
pub mod error;
pub mod kernels;
pub mod multiplier;
pub mod oracle;
pub mod report;
pub mod root24;
pub mod sl2z;
pub mod verify;

pub use cosets::{coset_rep_of, coset_reps, cusp_class_count, cusp_equivalent, index, CuspPoint};
pub use error::{Error, Result};
pub use kernels::lemma::{verify_residue_lemma, LemmaId, LemmaReport};
pub use kernels::{
    in_kernel_by_congruence, in_kernel_by_value, kernel_coset_reps, KernelFamily, PowerClass,
};
pub use multiplier::{
    branch_of, f_value, g_value, membership, nu, nu_eta, nu_f, nu_g, nu_power,
    nu_via_decomposition, FFormula, GFormula, Level, MultiplierBranch,
};
pub use oracle::{
    check_eta_transformation, check_transformation, eta, f_eval, g_eval, HalfPlanePoint,
    OracleConfig, VerificationReport,
};
pub use report::{CheckResult, Verdict};
pub use root24::Root24;
pub use sl2z::{Generator, Mat2, ResidueMat, Sampler};
pub use verify::{run_suite, run_suites, Suite, SuiteConfig};
