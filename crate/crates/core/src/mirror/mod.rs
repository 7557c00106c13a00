//! Mirror charts over the series field: conic-bundle mirror equations,
//! chart superpotentials, wall-crossing transition maps, and the support
//! bookkeeping that glues chart-local data into a single fiber.

pub mod glue;
pub mod laurent;
pub mod superpotential;
pub mod support;

pub use glue::{
    chart_vars, expand_units, glue_eq, monodromy_check, wall_crossing_apply, MonodromyReport,
    WallCrossing,
};
pub use superpotential::{
    gluing_check, global_superpotential, mirror_equation, superpotential_u1, superpotential_u2,
    DiscCorrection, DiscCorrectionTable, GlobalSuperpotential, GluingReport,
};
pub use support::{
    support_transform, BlowupSupportData, ChartCoordinates, LoopCoord, SupportReport,
    ToricSupportData,
};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MirrorError {
    #[error("correction table references point index {0} outside A")]
    CorrectionOutsideA(usize),
    #[error("facet {0} has no unique minimizer over A; lifting is non-generic")]
    NonUniqueAlphaMin(usize),
    #[error("expansion requires a nonnegative unit power, found {0}")]
    NegativeUnitPower(i64),
    #[error("chart label {0} out of range")]
    BadChartLabel(usize),
    #[error("holonomy data disagrees across charts for coordinate `{0}`")]
    InconsistentHolonomy(String),
    #[error(transparent)]
    Laurent(#[from] laurent::LaurentError),
}
