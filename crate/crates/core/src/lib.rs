//! Tools for packing cut complements in subcubic graphs.
//!
//! The crate covers three things:
//!
//! * the menu calculus on complete binary trees and the exhaustive
//!   menu-set search that certifies every weight-2 edge of a girth-17
//!   cubic graph can be repaired locally ([`menus`]),
//! * the local-improvement solver that turns the all-ones labeling into
//!   four pairwise disjoint cut complements ([`optimizer`]),
//! * conversions and verifiers for the equivalent certificate forms:
//!   disjoint cut complements, homomorphisms into projective cubes and
//!   cut-continuous maps to odd cycles ([`equivalences`]).

pub mod cli;
pub mod equivalences;
pub mod graphs;
pub mod labeling;
pub mod menus;
pub mod optimizer;

pub use graphs::{EdgeSet, Graph, GraphError, VertexSet};
pub use labeling::{CostTable, Label, Labeling};
pub use menus::{Menu, MenuSet};
