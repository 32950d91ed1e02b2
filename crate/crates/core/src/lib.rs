pub mod autos;
pub mod decomposer;
pub mod error;
pub mod liealg;
pub mod linalg;
pub mod group;
pub mod json;
pub mod matrix;
pub mod recover;
pub mod rings;
pub mod roots;
pub mod verify;
