//! Orientably-regular embeddings of the complete multipartite graphs
//! `K_{m[n]}`: the four group families and their maps, invariants,
//! isomorphism and chirality tests, and a brute-force census over
//! `Aut(K_{m[n]})` for small cases.

pub mod census;
pub mod cli;
pub mod families;
pub mod fpgroups;
pub mod graphs;
pub mod maps;
pub mod numtheory;
pub mod permgroup;

mod error;

pub use error::Error;
