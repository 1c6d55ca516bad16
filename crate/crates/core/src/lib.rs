pub mod cli;
pub mod descent;
pub mod diff;
pub mod expr;
pub mod limits;
pub mod quad;
pub mod series;
