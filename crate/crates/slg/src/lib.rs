//! Library surface of the command-line front end: description-file parsing,
//! formula evaluation, rendering, and the command implementations.

pub mod commands;
pub mod descr;
pub mod expr;
pub mod render;
