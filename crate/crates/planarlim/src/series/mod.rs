//! Truncated formal power series: univariate on the t^(1/2) grid and
//! multivariate in the coupling constants a_1, a_2, ... indexed by partitions.

pub mod multi;
pub mod partition;
pub mod useries;

pub use multi::{grade_specialize, Filtration, Grading, MultiSeries};
pub use partition::Partition;
pub use useries::{set_t_one, USeries};

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum SeriesError {
    #[error("log requires constant term 1")]
    LogConstantTerm,
    #[error("exp requires zero constant term")]
    ExpConstantTerm,
    #[error("division by a series with zero leading coefficient beyond the Laurent budget")]
    ZeroDivisor,
    #[error("face grading with a_1 or a_2 present and not zeroed")]
    FaceGradingLowVariables,
    #[error("antiderivative of t^-1")]
    LogTerm,
    #[error("square root of a series whose leading term is not a square")]
    NotASquare,
}
