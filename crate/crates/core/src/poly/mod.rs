pub mod expr;
pub mod free;
pub mod groebner;
pub mod matrix;
pub mod monomial;
pub mod order;
pub mod polynomial;
pub mod syzygy;
