//! Coordinate-space differential operators, numeric matrix elements and
//! closed-form predictions.

mod cartesian;
mod catalogue;
mod matrix;
mod operator;
mod predict;

pub use cartesian::{boson_letter, boson_to_operator, partial_x, position};
pub use catalogue::{build_operator, catalogue_d2, OperatorName};
pub use matrix::{
    completeness, component_operator, matrix_element_numeric, routes, run_component, run_oracle,
    target_wave, Basis, MatrixElementRow, OracleOutcome, OracleSpec, Picture, Projector, Route,
};
pub use operator::{cos_phase, sin_phase, DiffOperator, Exps, Term};
pub use predict::{
    predict_osc, predict_sw, prediction_map, reduced_matrix_element, Component, Prediction, Rme,
    RmeKind,
};
