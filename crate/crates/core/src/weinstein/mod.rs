//! Liouville fields, Morse data and boundary transversality for the
//! genus-zero Weinstein trisection of S² × S².

pub mod liouville;
pub mod morse;
pub mod steps;
pub mod transversality;

pub use liouville::{
    liouville_field, liouville_from_jet, liouville_residual, product_liouville, ChartedPotential,
    LiouvilleField,
};
pub use morse::{
    classify_critical_point, find_critical_points, CriticalPoint, CriticalPointSearch,
    NewtonOptions, SeedFailure,
};
pub use steps::{
    configure_step1, configure_step2, configure_step2_with, corrected_g1_pole, Step1, Step2,
    Step2Mode, StepPotential,
};
pub use transversality::{
    check_transversality, stratum_decomposition, CornerSet, Factor, FirstRegion,
    StratumDecomposition, StratumKind, StratumResult, StratumPlan, TransversalityReport,
};
