pub mod algebra;
pub mod cli;
pub mod corpus;
pub mod criteria;
pub mod error;
pub mod group;
pub mod groupoid;
pub mod io;
pub mod linalg;
pub mod spectral;
pub mod suite;
pub mod transformation;
