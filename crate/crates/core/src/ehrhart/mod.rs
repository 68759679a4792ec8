//! Ehrhart functions of triangles: exact lattice-point counts of integer
//! dilates, quasipolynomial fits, certified minimal periods for rational
//! triangles and range-limited verification for irrational ones.

mod count;
mod quasi;
mod scan;
mod shear;

pub use count::{count_lattice_points, FieldCounter, LatticeCounter, RationalCounter};
pub use quasi::{
    certify_minimal_period, certify_with_cap, count_table, ehrhart_equivalent, fit_quasipolynomial,
    verify_period_on_range, Certificate, CountTable, Divergence, EquivalenceReport,
    QuasiPolynomial, RangeReport, DEFAULT_DEN_CAP,
};
pub use scan::{scan_open_problem, ScanEntry};
pub use shear::HalfShearCounter;

use num_bigint::BigInt;
use thiserror::Error;

use crate::factory::FactoryError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EhrhartError {
    #[error("residue class {class} mod {period} has fewer than three samples")]
    InsufficientSamples { period: u64, class: u64 },
    #[error(
        "period {period} is inconsistent at t = {t}: fit predicts {expected}, count is {actual}"
    )]
    InconsistentFit {
        period: u64,
        t: u64,
        expected: String,
        actual: BigInt,
    },
    #[error("denominator {den} exceeds the certification cap {cap}")]
    BudgetExceeded { den: BigInt, cap: u64 },
    #[error("period must be positive")]
    ZeroPeriod,
    #[error(transparent)]
    Factory(#[from] FactoryError),
}
