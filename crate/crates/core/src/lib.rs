pub mod algebra;
pub mod complexes;
pub mod excision;
pub mod format;
pub mod hochschild;
pub mod linalg;
pub mod rational;

pub use rational::Rational;
