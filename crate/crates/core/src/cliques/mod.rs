//! The coding graph and the clique machinery built on it.
//!
//! Vertices are packets; an edge joins two packets no receiver wants
//! together. Cliques are valid coding sets, maximal cliques are maximal
//! coding sets, and colourings of the complement are clique partitions.

mod coloring;
mod enumerate;
mod exact;
mod graph;
mod heuristic;

pub use coloring::{chromatic_number, chromatic_number_with_limit, CHROMATIC_LIMIT};
pub use enumerate::{enumerate_maximal_cliques, enumerate_maximal_cliques_with, maximal_cliques_within, CliqueList};
pub use exact::{
    clique_number, exact_max_clique, exact_max_clique_with, exact_max_clique_within, maximum_cliques_within,
};
pub use graph::IdncGraph;
pub use heuristic::{heuristic_max_clique, heuristic_max_clique_within, HeuristicClique};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::MAX_PACKETS;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliqueError {
    #[error("graph has {vertices} vertices, above the exact-search limit of {limit}")]
    TooLarge { vertices: usize, limit: usize },
    #[error("vertex {vertex} is out of range for {n_vertices} vertices")]
    VertexOutOfRange { vertex: usize, n_vertices: usize },
}

/// Which clique finder a partition or bound uses.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CliqueFinder {
    /// Maximum cliques by exhaustive enumeration.
    #[default]
    Exact,
    /// The greedy highest-degree search.
    Heuristic,
}

/// Size cap for exhaustive clique searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CliqueLimits {
    pub max_vertices: usize,
}

impl Default for CliqueLimits {
    fn default() -> Self {
        CliqueLimits {
            max_vertices: MAX_PACKETS,
        }
    }
}

impl CliqueLimits {
    pub fn check(&self, vertices: usize) -> Result<(), CliqueError> {
        if vertices > self.max_vertices {
            Err(CliqueError::TooLarge {
                vertices,
                limit: self.max_vertices,
            })
        } else {
            Ok(())
        }
    }
}
