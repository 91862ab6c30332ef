use crate::model::{ConflictMatrix, PacketSet, StateFeedbackMatrix, MAX_PACKETS};

use super::CliqueError;

/// Undirected graph on packet vertices; `i` and `j` are adjacent iff the
/// packets do not conflict and may therefore share a coding set.
///
/// Adjacency is one bitset row per vertex, so neighbourhood intersection is
/// a single AND.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IdncGraph {
    adj: Vec<PacketSet>,
}

impl IdncGraph {
    pub fn edgeless(n: usize) -> Self {
        assert!(n <= MAX_PACKETS, "graph size {n} exceeds {MAX_PACKETS}");
        IdncGraph {
            adj: vec![PacketSet::EMPTY; n],
        }
    }

    pub fn complete(n: usize) -> Self {
        assert!(n <= MAX_PACKETS, "graph size {n} exceeds {MAX_PACKETS}");
        let all = PacketSet::full(n);
        IdncGraph {
            adj: (0..n).map(|v| all.difference(PacketSet::singleton(v))).collect(),
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, CliqueError> {
        if n > MAX_PACKETS {
            return Err(CliqueError::TooLarge {
                vertices: n,
                limit: MAX_PACKETS,
            });
        }
        let mut g = IdncGraph::edgeless(n);
        for &(i, j) in edges {
            if i >= n || j >= n {
                return Err(CliqueError::VertexOutOfRange {
                    vertex: i.max(j),
                    n_vertices: n,
                });
            }
            if i != j {
                g.add_edge(i, j);
            }
        }
        Ok(g)
    }

    /// Connects every pair of non-conflicting packets.
    pub fn from_conflicts(c: &ConflictMatrix) -> Self {
        let n = c.n_packets();
        let mut g = IdncGraph::edgeless(n);
        for i in 0..n {
            for j in i + 1..n {
                if !c.conflicts(i, j) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    pub fn from_sfm(sfm: &StateFeedbackMatrix) -> Self {
        Self::from_conflicts(&ConflictMatrix::from_sfm(sfm))
    }

    /// The conflict matrix this graph encodes (non-edges are conflicts).
    pub fn to_conflicts(&self) -> ConflictMatrix {
        let n = self.n_vertices();
        let mut c = ConflictMatrix::new(n).expect("size already bounded");
        for i in 0..n {
            for j in i + 1..n {
                c.set(i, j, !self.has_edge(i, j));
            }
        }
        c
    }

    fn add_edge(&mut self, i: usize, j: usize) {
        self.adj[i].insert(j);
        self.adj[j].insert(i);
    }

    pub fn n_vertices(&self) -> usize {
        self.adj.len()
    }

    pub fn vertices(&self) -> PacketSet {
        PacketSet::full(self.adj.len())
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adj[i].contains(j)
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> PacketSet {
        self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.len()).sum::<usize>() / 2
    }

    /// Largest vertex degree (0 for the empty graph).
    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(|a| a.len()).max().unwrap_or(0)
    }

    /// Same vertices, opposite adjacency, no self-loops.
    pub fn complement(&self) -> IdncGraph {
        let all = self.vertices();
        IdncGraph {
            adj: self
                .adj
                .iter()
                .enumerate()
                .map(|(v, a)| all.difference(*a).difference(PacketSet::singleton(v)))
                .collect(),
        }
    }

    /// Subgraph induced by `keep`, with vertices renumbered densely in
    /// ascending order of their original index.
    pub fn induced(&self, keep: PacketSet) -> IdncGraph {
        let ids = keep.to_vec();
        let mut g = IdncGraph::edgeless(ids.len());
        for (a, &i) in ids.iter().enumerate() {
            for (b, &j) in ids.iter().enumerate().skip(a + 1) {
                if self.has_edge(i, j) {
                    g.add_edge(a, b);
                }
            }
        }
        g
    }

    pub fn is_clique(&self, set: PacketSet) -> bool {
        set.iter()
            .all(|v| set.difference(PacketSet::singleton(v)).is_subset(self.adj[v]))
    }

    /// Vertices of `within` outside `set` that are adjacent to every member.
    pub fn common_neighbors(&self, set: PacketSet, within: PacketSet) -> PacketSet {
        set.iter()
            .fold(within.difference(set), |acc, v| acc.intersection(self.adj[v]))
    }

    /// A clique that no vertex of the graph can extend.
    pub fn is_maximal_clique(&self, set: PacketSet) -> bool {
        self.is_maximal_clique_within(set, self.vertices())
    }

    pub fn is_maximal_clique_within(&self, set: PacketSet, within: PacketSet) -> bool {
        !set.is_empty() && set.is_subset(within) && self.is_clique(set) && self.common_neighbors(set, within).is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::fixtures::golden_sfm;

    #[test]
    fn golden_graph_edges() {
        let g = IdncGraph::from_sfm(&golden_sfm());
        assert_eq!(g.edge_count(), 7);
        for (i, j) in [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (2, 5), (3, 6)] {
            assert!(g.has_edge(i - 1, j - 1), "missing ({i},{j})");
        }
        assert_eq!(g.degree(1), 4);
        assert_eq!(g.complement().edge_count(), 15 - 7);
        assert_eq!(g.to_conflicts(), ConflictMatrix::from_sfm(&golden_sfm()));
    }

    #[test]
    fn complement_examples() {
        assert_eq!(IdncGraph::edgeless(3).complement(), IdncGraph::complete(3));
        let g = IdncGraph::from_sfm(&golden_sfm());
        assert_eq!(g.complement().complement(), g);
        assert_eq!(IdncGraph::edgeless(0).complement().n_vertices(), 0);
    }

    #[test]
    fn induced_subgraph_renumbers() {
        let g = IdncGraph::from_sfm(&golden_sfm());
        // keep p2, p3, p5 -> edges (2,3), (2,5)
        let h = g.induced([1usize, 2, 4].into_iter().collect());
        assert_eq!(h.n_vertices(), 3);
        assert!(h.has_edge(0, 1) && h.has_edge(0, 2) && !h.has_edge(1, 2));
    }

    #[test]
    fn out_of_range_edge_is_rejected() {
        assert_eq!(
            IdncGraph::from_edges(3, &[(0, 3)]),
            Err(CliqueError::VertexOutOfRange {
                vertex: 3,
                n_vertices: 3
            })
        );
    }
}
