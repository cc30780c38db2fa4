//! Arrival-ordered simple undirected graph with irrevocable vertex deletion.
//!
//! Vertices are identified by their 0-based arrival index. Edges may point at
//! deleted vertices: reinsertion gadgets copy neighborhoods over the whole
//! revealed graph, and the offline optimum is evaluated on all of it.

use std::fmt;

use thiserror::Error;

/// Arrival index of a revealed vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct VertexId(pub usize);

impl VertexId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<usize> for VertexId {
    fn from(i: usize) -> Self {
        VertexId(i)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {0} has not been revealed")]
    Unrevealed(VertexId),
    #[error("vertex {0} is already deleted")]
    AlreadyDeleted(VertexId),
    #[error("vertex {0} listed twice")]
    Duplicate(VertexId),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OnlineGraph {
    // Sorted ascending; a new vertex always has the largest id so pushes keep order.
    neighbors: Vec<Vec<VertexId>>,
    deleted: Vec<bool>,
    advice: Vec<bool>,
    deletion_log: Vec<VertexId>,
}

impl OnlineGraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Number of revealed vertices.
    pub fn len(&self) -> usize {
        self.neighbors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.neighbors.is_empty()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.len()).map(VertexId)
    }

    pub fn contains(&self, v: VertexId) -> bool {
        v.0 < self.len()
    }

    fn check(&self, v: VertexId) -> Result<(), GraphError> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(GraphError::Unrevealed(v))
        }
    }

    /// Reveals a new vertex adjacent to `neighbors` (alive or deleted).
    pub fn add_vertex(&mut self, neighbors: &[VertexId], advice: bool) -> Result<VertexId, GraphError> {
        let mut nbrs = neighbors.to_vec();
        nbrs.sort_unstable();
        for w in nbrs.windows(2) {
            if w[0] == w[1] {
                return Err(GraphError::Duplicate(w[0]));
            }
        }
        for &u in &nbrs {
            self.check(u)?;
        }
        let id = VertexId(self.len());
        for &u in &nbrs {
            self.neighbors[u.0].push(id);
        }
        self.neighbors.push(nbrs);
        self.deleted.push(false);
        self.advice.push(advice);
        Ok(id)
    }

    /// Deletes every vertex of `s`. All-or-nothing: on error the graph is unchanged.
    pub fn delete_vertices(&mut self, s: &[VertexId]) -> Result<(), GraphError> {
        for (i, &v) in s.iter().enumerate() {
            self.check(v)?;
            if self.deleted[v.0] {
                return Err(GraphError::AlreadyDeleted(v));
            }
            if s[..i].contains(&v) {
                return Err(GraphError::Duplicate(v));
            }
        }
        for &v in s {
            self.deleted[v.0] = true;
            self.deletion_log.push(v);
        }
        Ok(())
    }

    pub fn is_alive(&self, v: VertexId) -> bool {
        self.contains(v) && !self.deleted[v.0]
    }

    pub fn is_deleted(&self, v: VertexId) -> bool {
        self.contains(v) && self.deleted[v.0]
    }

    pub fn advice(&self, v: VertexId) -> bool {
        self.advice[v.0]
    }

    pub fn advice_bits(&self) -> &[bool] {
        &self.advice
    }

    /// Per-vertex alive flags, indexed by arrival index.
    pub fn alive_mask(&self) -> Vec<bool> {
        self.deleted.iter().map(|d| !d).collect()
    }

    pub fn alive(&self) -> Vec<VertexId> {
        self.vertices().filter(|&v| self.is_alive(v)).collect()
    }

    pub fn deleted_count(&self) -> usize {
        self.deletion_log.len()
    }

    /// Deleted vertices in the order they were deleted.
    pub fn deletion_log(&self) -> &[VertexId] {
        &self.deletion_log
    }

    /// All neighbors of `v`, alive or deleted, ascending.
    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.neighbors[v.0]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.neighbors[v.0].len()
    }

    pub fn alive_neighbors(&self, v: VertexId) -> Result<Vec<VertexId>, GraphError> {
        self.check(v)?;
        Ok(self.neighbors[v.0].iter().copied().filter(|&u| !self.deleted[u.0]).collect())
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        let (a, b) = if self.neighbors[u.0].len() <= self.neighbors[v.0].len() { (u, v) } else { (v, u) };
        self.neighbors[a.0].binary_search(&b).is_ok()
    }

    /// Neighbors of `v` with a smaller arrival index: exactly what was given at reveal time.
    pub fn backward_neighbors(&self, v: VertexId) -> &[VertexId] {
        let nbrs = &self.neighbors[v.0];
        let cut = nbrs.partition_point(|&u| u < v);
        &nbrs[..cut]
    }

    pub fn edge_count(&self) -> usize {
        self.neighbors.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Same vertices, edges and advice with no deletions: the offline graph G.
    pub fn offline(&self) -> OnlineGraph {
        OnlineGraph {
            neighbors: self.neighbors.clone(),
            deleted: vec![false; self.len()],
            advice: self.advice.clone(),
            deletion_log: Vec::new(),
        }
    }

    pub fn set_advice(&mut self, bits: &[bool]) {
        assert_eq!(bits.len(), self.len(), "advice length must match vertex count");
        self.advice.copy_from_slice(bits);
    }
}
