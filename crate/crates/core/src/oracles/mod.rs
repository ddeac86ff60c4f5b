//! Independent reference computations used to cross-check the residue formulas.

pub mod closed;
pub mod joint;
pub mod lattice;
pub mod szenes;
pub mod witten;

pub use closed::{svol_value, thaddeus_value, PiRational};
pub use joint::{joint_expansion_residue, random_expression, RootFraction};
pub use lattice::LatticeSumConfig;
pub use szenes::{szenes_check, SzenesFunction, SzenesReport};
pub use witten::{witten_sum, WittenReport};
