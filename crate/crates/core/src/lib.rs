pub mod cli;
pub mod exactfield;
pub mod formulas;
pub mod graphembed;
pub mod matrix;
pub mod minkowski;
pub mod plans;
pub mod relalg;
pub mod sampling;
pub mod transforms;
pub mod witnesses;
