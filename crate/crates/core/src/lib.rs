pub mod diffcalc;
pub mod error;
pub mod extended;
pub mod field;
pub mod grid;
pub mod kinematics;
pub mod waves;
pub mod dispersion;
pub mod lorentz_int;
pub mod kg_lattice;
pub mod tridiag;
pub mod verify;
pub mod cli;
