//! Domain types, the relation signature table and the indexed model graph.

mod builder;
mod graph;
mod id;
mod kinds;
mod records;
mod schema;

pub use builder::{ModelBuilder, Origin};
pub use graph::{ModelGraph, QueryError};
pub use id::ElementId;
pub use kinds::*;
pub use records::*;
pub use schema::{Relation, Triple};
