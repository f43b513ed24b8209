pub mod abacus;
pub mod cli;
pub mod cyclotomic;
pub mod expr;
pub mod klr;
pub mod linalg;
pub mod quiver;
