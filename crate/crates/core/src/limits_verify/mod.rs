//! Limit estimation and machine checks of the limit theorems.

mod checks;
mod limit;
mod report;
mod suite;
mod torres;

pub use checks::{verify_3d, verify_4d, verify_corner_limits, verify_lt, verify_multi_lt, VerifyConfig};
pub use limit::{corner_limit, directional_limit, LimitResult, Sample, Schedule};
pub use report::{Relation, VerificationReport, VerifyError};
pub use suite::{run_suite, AngleSampler, Suite};
pub use torres::{
    predict_lt_limit_2comp, predict_torres, verify_torres, EtaPrediction, LtLimitPrediction, MidpointCheck,
    SigmaPrediction, TorresCase, TorresPrediction,
};
