//! The forbidden pattern H and induced-copy search.
//!
//! Copies are identified by their vertex set. Each set is reported once, with the
//! lexicographically least pattern-to-host mapping, and copies are ordered
//! lexicographically by their sorted vertex tuple. The online engine and the
//! exact solver both rely on this order being reproducible.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::graph::{OnlineGraph, VertexId};

/// Largest supported pattern size.
pub const MAX_PATTERN_SIZE: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PatternError {
    #[error("pattern needs at least 2 vertices, got {0}")]
    TooSmall(usize),
    #[error("pattern has {0} vertices; at most {MAX_PATTERN_SIZE} are supported")]
    TooLarge(usize),
    #[error("pattern is disconnected")]
    Disconnected,
    #[error("self-loop on pattern vertex {0}")]
    SelfLoop(usize),
    #[error("unknown builtin pattern `{0}`")]
    UnknownBuiltin(String),
    #[error("malformed pattern `{0}`")]
    Malformed(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct PatternTraits {
    pub has_true_twin_pair: bool,
    pub has_false_twin_pair: bool,
    pub is_two_connected: bool,
    pub is_path: bool,
}

#[derive(Clone, Debug)]
struct SearchPlan {
    order: Vec<usize>,
    // parent[i] is an earlier position adjacent (in H) to position i
    parent: Vec<usize>,
}

/// A fixed, connected forbidden pattern on vertices `0..k`.
#[derive(Clone, Debug)]
pub struct PatternGraph {
    name: Option<String>,
    adj: Vec<u16>,
    traits: PatternTraits,
    plans: Vec<SearchPlan>,
}

impl PartialEq for PatternGraph {
    fn eq(&self, other: &Self) -> bool {
        self.adj == other.adj
    }
}

impl Eq for PatternGraph {}

impl PatternGraph {
    pub fn from_edges(k: usize, edges: &[(usize, usize)]) -> Result<Self, PatternError> {
        if k < 2 {
            return Err(PatternError::TooSmall(k));
        }
        if k > MAX_PATTERN_SIZE {
            return Err(PatternError::TooLarge(k));
        }
        let mut adj = vec![0u16; k];
        for &(a, b) in edges {
            if a >= k || b >= k {
                return Err(PatternError::Malformed(format!("edge {a}-{b} outside 0..{k}")));
            }
            if a == b {
                return Err(PatternError::SelfLoop(a));
            }
            adj[a] |= 1 << b;
            adj[b] |= 1 << a;
        }
        if !mask_connected(&adj, full_mask(k)) {
            return Err(PatternError::Disconnected);
        }
        let traits = compute_traits(&adj);
        let plans = (0..k).map(|root| plan_from(&adj, root)).collect();
        Ok(Self { name: None, adj, traits, plans })
    }

    /// Builtins: `K2..K8`, `C3..C8`, `P2..P8`, `S2..S7` (star with that many leaves).
    pub fn builtin(name: &str) -> Result<Self, PatternError> {
        let unknown = || PatternError::UnknownBuiltin(name.to_string());
        let (kind, size) = name.split_at(1);
        let n: usize = size.parse().map_err(|_| unknown())?;
        let edges: Vec<(usize, usize)> = match kind {
            "K" if (2..=MAX_PATTERN_SIZE).contains(&n) => {
                (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect()
            }
            "C" if (3..=MAX_PATTERN_SIZE).contains(&n) => (0..n).map(|a| (a, (a + 1) % n)).collect(),
            "P" if (2..=MAX_PATTERN_SIZE).contains(&n) => (0..n - 1).map(|a| (a, a + 1)).collect(),
            "S" if (2..MAX_PATTERN_SIZE).contains(&n) => (1..=n).map(|leaf| (0, leaf)).collect(),
            _ => return Err(unknown()),
        };
        let k = if kind == "S" { n + 1 } else { n };
        let mut h = Self::from_edges(k, &edges)?;
        h.name = Some(name.to_string());
        Ok(h)
    }

    /// Parses `K3`-style builtin names or `edges 0-1,1-2,...`.
    pub fn parse(spec: &str) -> Result<Self, PatternError> {
        let spec = spec.trim();
        let Some(list) = spec.strip_prefix("edges ") else {
            return Self::builtin(spec);
        };
        let mut edges = Vec::new();
        for item in list.split(',') {
            let (a, b) = item.split_once('-').ok_or_else(|| PatternError::Malformed(item.to_string()))?;
            let a: usize = a.trim().parse().map_err(|_| PatternError::Malformed(item.to_string()))?;
            let b: usize = b.trim().parse().map_err(|_| PatternError::Malformed(item.to_string()))?;
            edges.push((a, b));
        }
        let k = edges.iter().map(|&(a, b)| a.max(b) + 1).max().unwrap_or(0);
        Self::from_edges(k, &edges)
    }

    /// Canonical textual form: the builtin name, or `edges a-b,...` with a < b sorted.
    pub fn spec_string(&self) -> String {
        match &self.name {
            Some(n) => n.clone(),
            None => {
                let parts: Vec<String> = self.edges().iter().map(|(a, b)| format!("{a}-{b}")).collect();
                format!("edges {}", parts.join(","))
            }
        }
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn k(&self) -> usize {
        self.adj.len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a] >> b & 1 == 1
    }

    pub fn degree(&self, a: usize) -> usize {
        self.adj[a].count_ones() as usize
    }

    pub fn neighbors(&self, a: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.k()).filter(move |&b| self.has_edge(a, b))
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let k = self.k();
        (0..k).flat_map(|a| (a + 1..k).map(move |b| (a, b))).filter(|&(a, b)| self.has_edge(a, b)).collect()
    }

    pub fn traits(&self) -> PatternTraits {
        self.traits
    }
}

impl fmt::Display for PatternGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.spec_string())
    }
}

fn full_mask(k: usize) -> u16 {
    ((1u32 << k) - 1) as u16
}

fn mask_connected(adj: &[u16], mask: u16) -> bool {
    if mask == 0 {
        return true;
    }
    let start = mask.trailing_zeros() as usize;
    let mut seen = 1u16 << start;
    let mut stack = vec![start];
    while let Some(a) = stack.pop() {
        let mut fresh = adj[a] & mask & !seen;
        seen |= fresh;
        while fresh != 0 {
            let b = fresh.trailing_zeros() as usize;
            fresh &= fresh - 1;
            stack.push(b);
        }
    }
    seen == mask
}

fn compute_traits(adj: &[u16]) -> PatternTraits {
    let k = adj.len();
    let mut t = PatternTraits::default();
    for u in 0..k {
        for v in u + 1..k {
            let open_u = adj[u];
            let open_v = adj[v];
            if open_u == open_v {
                t.has_false_twin_pair = true;
            }
            if open_u | (1 << u) == open_v | (1 << v) {
                t.has_true_twin_pair = true;
            }
        }
    }
    t.is_two_connected = k >= 3 && articulation_points(adj).is_empty();
    let edge_count: u32 = adj.iter().map(|m| m.count_ones()).sum::<u32>() / 2;
    t.is_path = edge_count as usize == k - 1 && adj.iter().all(|m| m.count_ones() <= 2);
    t
}

/// Articulation vertices of a connected graph via DFS low-link values.
fn articulation_points(adj: &[u16]) -> Vec<usize> {
    fn dfs(
        adj: &[u16],
        u: usize,
        parent: Option<usize>,
        timer: &mut usize,
        disc: &mut [usize],
        low: &mut [usize],
        cut: &mut [bool],
    ) {
        *timer += 1;
        disc[u] = *timer;
        low[u] = *timer;
        let mut children = 0;
        for v in 0..adj.len() {
            if adj[u] >> v & 1 == 0 || Some(v) == parent {
                continue;
            }
            if disc[v] == 0 {
                children += 1;
                dfs(adj, v, Some(u), timer, disc, low, cut);
                low[u] = low[u].min(low[v]);
                if parent.is_some() && low[v] >= disc[u] {
                    cut[u] = true;
                }
            } else {
                low[u] = low[u].min(disc[v]);
            }
        }
        if parent.is_none() && children > 1 {
            cut[u] = true;
        }
    }
    let k = adj.len();
    let (mut disc, mut low, mut cut) = (vec![0; k], vec![0; k], vec![false; k]);
    let mut timer = 0;
    dfs(adj, 0, None, &mut timer, &mut disc, &mut low, &mut cut);
    (0..k).filter(|&v| cut[v]).collect()
}

fn plan_from(adj: &[u16], root: usize) -> SearchPlan {
    let k = adj.len();
    let mut order = vec![root];
    let mut parent = vec![0];
    let mut placed = 1u16 << root;
    let mut head = 0;
    while head < order.len() {
        let u = order[head];
        for v in 0..k {
            if adj[u] >> v & 1 == 1 && placed >> v & 1 == 0 {
                placed |= 1 << v;
                order.push(v);
                parent.push(head);
            }
        }
        head += 1;
    }
    SearchPlan { order, parent }
}

/// Recomputes the traits of `h` from its adjacency.
pub fn classify_pattern(h: &PatternGraph) -> PatternTraits {
    compute_traits(&h.adj)
}

/// An induced copy of H: `mapping[q]` is the host vertex playing pattern vertex `q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct InducedCopy {
    pub vertices: Vec<VertexId>,
    pub mapping: Vec<VertexId>,
}

impl InducedCopy {
    pub fn contains(&self, v: VertexId) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }
}

struct Matcher<'a> {
    g: &'a OnlineGraph,
    h: &'a PatternGraph,
    present: &'a [bool],
    degree: Vec<usize>,
}

impl<'a> Matcher<'a> {
    fn new(g: &'a OnlineGraph, h: &'a PatternGraph, present: &'a [bool]) -> Self {
        assert_eq!(present.len(), g.len(), "vertex mask length mismatch");
        let degree = g
            .vertices()
            .map(|v| if present[v.0] { g.neighbors(v).iter().filter(|u| present[u.0]).count() } else { 0 })
            .collect();
        Self { g, h, present, degree }
    }

    /// Copies through `root`. With `min_anchor`, every other vertex must exceed `root`.
    fn rooted(&self, root: VertexId, min_anchor: bool, out: &mut BTreeMap<Vec<VertexId>, Vec<VertexId>>) {
        if !self.present[root.0] {
            return;
        }
        let k = self.h.k();
        let mut img = vec![VertexId(0); k];
        img[0] = root;
        for q in 0..k {
            if self.degree[root.0] < self.h.degree(q) {
                continue;
            }
            let plan = &self.h.plans[q];
            self.extend(plan, 1, &mut img, min_anchor, out);
        }
    }

    fn extend(
        &self,
        plan: &SearchPlan,
        pos: usize,
        img: &mut [VertexId],
        min_anchor: bool,
        out: &mut BTreeMap<Vec<VertexId>, Vec<VertexId>>,
    ) {
        let k = img.len();
        if pos == k {
            let mut mapping = vec![VertexId(0); k];
            for (i, &q) in plan.order.iter().enumerate() {
                mapping[q] = img[i];
            }
            let mut set = img.to_vec();
            set.sort_unstable();
            out.entry(set)
                .and_modify(|m| {
                    if mapping < *m {
                        *m = mapping.clone();
                    }
                })
                .or_insert(mapping);
            return;
        }
        let q = plan.order[pos];
        let anchor = img[0];
        let via = img[plan.parent[pos]];
        'cand: for &c in self.g.neighbors(via) {
            if !self.present[c.0] || (min_anchor && c <= anchor) || c == anchor {
                continue;
            }
            if self.degree[c.0] < self.h.degree(q) || img[1..pos].contains(&c) {
                continue;
            }
            for (&u, &pu) in img[..pos].iter().zip(&plan.order) {
                if self.g.has_edge(u, c) != self.h.has_edge(pu, q) {
                    continue 'cand;
                }
            }
            img[pos] = c;
            self.extend(plan, pos + 1, img, min_anchor, out);
        }
    }
}

fn into_copies(found: BTreeMap<Vec<VertexId>, Vec<VertexId>>) -> impl Iterator<Item = InducedCopy> {
    found.into_iter().map(|(vertices, mapping)| InducedCopy { vertices, mapping })
}

/// Induced copies of `h` among vertices with `present[v]`, in canonical order.
pub fn find_copies_in(g: &OnlineGraph, h: &PatternGraph, present: &[bool], limit: Option<usize>) -> Vec<InducedCopy> {
    let limit = limit.unwrap_or(usize::MAX);
    let matcher = Matcher::new(g, h, present);
    let mut copies = Vec::new();
    if limit == 0 {
        return copies;
    }
    for anchor in g.vertices() {
        let mut found = BTreeMap::new();
        matcher.rooted(anchor, true, &mut found);
        // copies anchored at a smaller minimum vertex sort first
        copies.extend(into_copies(found));
        if copies.len() >= limit {
            copies.truncate(limit);
            break;
        }
    }
    copies
}

/// Induced copies among the alive vertices of `g`, canonical order, at most `limit`.
pub fn find_copies(g: &OnlineGraph, h: &PatternGraph, limit: Option<usize>) -> Vec<InducedCopy> {
    find_copies_in(g, h, &g.alive_mask(), limit)
}

pub fn first_copy_in(g: &OnlineGraph, h: &PatternGraph, present: &[bool]) -> Option<InducedCopy> {
    find_copies_in(g, h, present, Some(1)).pop()
}

/// All copies among `present` that contain `v`, canonical order.
pub fn copies_containing(g: &OnlineGraph, h: &PatternGraph, present: &[bool], v: VertexId) -> Vec<InducedCopy> {
    let matcher = Matcher::new(g, h, present);
    let mut found = BTreeMap::new();
    matcher.rooted(v, false, &mut found);
    into_copies(found).collect()
}

pub fn is_h_free_in(g: &OnlineGraph, h: &PatternGraph, present: &[bool]) -> bool {
    first_copy_in(g, h, present).is_none()
}

pub fn is_h_free(g: &OnlineGraph, h: &PatternGraph) -> bool {
    find_copies(g, h, Some(1)).is_empty()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, edges: &[(usize, usize)]) -> OnlineGraph {
        let mut g = OnlineGraph::new();
        for v in 0..n {
            let nbrs: Vec<VertexId> = edges
                .iter()
                .filter_map(|&(a, b)| {
                    let (a, b) = (a.min(b), a.max(b));
                    (b == v).then_some(VertexId(a))
                })
                .collect();
            g.add_vertex(&nbrs, false).unwrap();
        }
        g
    }

    fn ids(xs: &[usize]) -> Vec<VertexId> {
        xs.iter().copied().map(VertexId).collect()
    }

    fn k4() -> OnlineGraph {
        graph(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
    }

    #[test]
    fn classify_k3() {
        let t = classify_pattern(&PatternGraph::builtin("K3").unwrap());
        assert!(t.has_true_twin_pair && !t.has_false_twin_pair && t.is_two_connected);
    }

    #[test]
    fn classify_p3() {
        let t = PatternGraph::builtin("P3").unwrap().traits();
        assert_eq!(
            t,
            PatternTraits {
                has_true_twin_pair: false,
                has_false_twin_pair: true,
                is_two_connected: false,
                is_path: true
            }
        );
    }

    #[test]
    fn classify_c4() {
        let t = PatternGraph::builtin("C4").unwrap().traits();
        assert!(t.has_false_twin_pair && !t.has_true_twin_pair && t.is_two_connected && !t.is_path);
    }

    #[test]
    fn k2_is_not_two_connected() {
        let t = PatternGraph::builtin("K2").unwrap().traits();
        assert!(!t.is_two_connected && t.is_path && t.has_true_twin_pair);
    }

    #[test]
    fn disconnected_pattern_rejected() {
        assert_eq!(PatternGraph::from_edges(4, &[(0, 1), (2, 3)]).unwrap_err(), PatternError::Disconnected);
        assert_eq!(PatternGraph::from_edges(1, &[]).unwrap_err(), PatternError::TooSmall(1));
        assert!(PatternGraph::builtin("Q4").is_err());
        assert!(PatternGraph::builtin("K9").is_err());
    }

    #[test]
    fn parse_edge_list_and_spec_string() {
        let h = PatternGraph::parse("edges 1-0,1-2,2-3").unwrap();
        assert_eq!(h.k(), 4);
        assert_eq!(h.spec_string(), "edges 0-1,1-2,2-3");
        assert_eq!(h, PatternGraph::builtin("P4").unwrap());
        assert_eq!(PatternGraph::parse("S3").unwrap().k(), 4);
        assert!(PatternGraph::parse("edges 0-1,x").is_err());
    }

    #[test]
    fn triangle_has_one_copy() {
        let g = graph(3, &[(0, 1), (1, 2), (0, 2)]);
        let copies = find_copies(&g, &PatternGraph::builtin("K3").unwrap(), None);
        assert_eq!(copies.len(), 1);
        assert_eq!(copies[0].vertices, ids(&[0, 1, 2]));
    }

    #[test]
    fn k4_has_no_induced_c4() {
        assert!(find_copies(&k4(), &PatternGraph::builtin("C4").unwrap(), None).is_empty());
    }

    #[test]
    fn path_p3_copies_in_order() {
        let g = graph(4, &[(0, 1), (1, 2), (2, 3)]);
        let copies = find_copies(&g, &PatternGraph::builtin("P3").unwrap(), None);
        let sets: Vec<_> = copies.iter().map(|c| c.vertices.clone()).collect();
        assert_eq!(sets, vec![ids(&[0, 1, 2]), ids(&[1, 2, 3])]);
        // endpoints map to 0 and 2, least mapping puts the smaller endpoint first
        assert_eq!(copies[0].mapping, ids(&[0, 1, 2]));
    }

    #[test]
    fn limit_truncates_in_canonical_order() {
        let g = graph(4, &[(0, 1), (1, 2), (2, 3)]);
        let copies = find_copies(&g, &PatternGraph::builtin("P3").unwrap(), Some(1));
        assert_eq!(copies.len(), 1);
        assert_eq!(copies[0].vertices, ids(&[0, 1, 2]));
    }

    #[test]
    fn h_free_cases() {
        let edgeless = graph(5, &[]);
        for name in ["K2", "P3", "C4"] {
            assert!(is_h_free(&edgeless, &PatternGraph::builtin(name).unwrap()));
        }
        let k3 = PatternGraph::builtin("K3").unwrap();
        assert!(!is_h_free(&graph(3, &[(0, 1), (1, 2), (0, 2)]), &k3));
        let mut g = k4();
        g.delete_vertices(&ids(&[0, 1])).unwrap();
        assert!(is_h_free(&g, &k3));
    }

    #[test]
    fn copies_skip_deleted_vertices() {
        let mut g = k4();
        g.delete_vertices(&ids(&[2])).unwrap();
        let copies = find_copies(&g, &PatternGraph::builtin("K3").unwrap(), None);
        assert_eq!(copies.len(), 1);
        assert_eq!(copies[0].vertices, ids(&[0, 1, 3]));
    }

    #[test]
    fn containing_matches_filter() {
        let g = k4();
        let h = PatternGraph::builtin("K3").unwrap();
        let all = find_copies(&g, &h, None);
        let with3: Vec<_> = all.into_iter().filter(|c| c.contains(VertexId(3))).collect();
        assert_eq!(copies_containing(&g, &h, &g.alive_mask(), VertexId(3)), with3);
    }
}
