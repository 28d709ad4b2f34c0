//! Exact computer algebra for Bethe-algebra difference and differential
//! operators and the (gl_n, gl_m) duality between them.

pub mod arith;
pub mod ore;
pub mod glk;
pub mod par;
pub mod yangian;
pub mod error;
pub mod report;
pub mod unm;
pub mod rep;
pub mod duality;
pub mod cli;
