//! Strict instantly decodable network coding (IDNC) for single-hop erasure
//! broadcast.
//!
//! * [`model`]: feedback matrices, conflicts, decodability and delay accounting.
//! * [`cliques`]: the coding graph, maximal-clique enumeration, heuristic and
//!   exact maximum cliques, and a chromatic-number oracle.
//! * [`solver`]: optimal minimum collections, the hybrid greedy coder, the
//!   greedy clique partition and the heuristic semi-online coder.
//! * [`bounds`]: throughput and decoding-delay bounds.
//! * [`sim`]: erasure-broadcast sessions and Monte Carlo harnesses.
//! * [`cli`]: the `idnc` command-line front end.

pub mod bounds;
pub mod cli;
pub mod cliques;
pub mod model;
pub mod sim;
pub mod solver;
