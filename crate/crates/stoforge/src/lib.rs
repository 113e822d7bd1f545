//! Toolkit for building, integrating, reasoning over, and analyzing a
//! knowledge graph of Industry 4.0 standards and standardization frameworks.

pub mod analytics;
pub mod rdf;
pub mod store;
pub mod reasoner;
pub mod vocab;
