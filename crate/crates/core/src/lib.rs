//! Exact workbench for Petri-map kernels of limit linear series on chains of
//! elliptic curves.
//!
//! The modules build on each other in order: [`numerology`] for the integer
//! arithmetic, [`elliptic_pic`] for bundle classes on one component,
//! [`fillings`] for the rectangle combinatorics, [`chain_sections`] for
//! vanishing orders and kernel elements, and [`exact_oracle`] for checking
//! all of it on honest curves over prime fields.

pub mod chain_sections;
pub mod cli;
pub mod elliptic_pic;
pub mod exact_oracle;
pub mod fillings;
pub mod numerology;
