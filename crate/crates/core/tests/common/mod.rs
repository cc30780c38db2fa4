//! Brute-force oracles shared by the integration tests. Nothing here uses the
//! library's search code: copies come from k-subsets and permutations, optima
//! from plain subset enumeration.
#![allow(dead_code)]

use hdel_core::graph::{OnlineGraph, VertexId};
use hdel_core::pattern::PatternGraph;
use rand::Rng;

pub type Set = u128;

pub fn adjacency(g: &OnlineGraph) -> Vec<Set> {
    assert!(g.len() <= 128, "oracle handles at most 128 vertices");
    g.vertices().map(|v| g.neighbors(v).iter().fold(0, |acc, u| acc | (1u128 << u.0))).collect()
}

fn combinations(pool: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, out: &mut dyn FnMut(&[usize])) {
    if cur.len() == k {
        out(cur);
        return;
    }
    for i in start..pool.len() {
        if pool.len() - i < k - cur.len() {
            break;
        }
        cur.push(pool[i]);
        combinations(pool, k, i + 1, cur, out);
        cur.pop();
    }
}

fn permutations(items: &mut Vec<usize>, depth: usize, found: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    if depth == items.len() {
        return found(items);
    }
    for i in depth..items.len() {
        items.swap(depth, i);
        if permutations(items, depth + 1, found) {
            items.swap(depth, i);
            return true;
        }
        items.swap(depth, i);
    }
    false
}

/// Whether pattern vertex `i ↦ subset[perm[i]]` is an induced isomorphism for some permutation.
pub fn is_induced_copy(adj: &[Set], h: &PatternGraph, subset: &[usize]) -> bool {
    let k = h.k();
    let edges = (0..k)
        .flat_map(|a| (a + 1..k).map(move |b| (a, b)))
        .filter(|&(a, b)| adj[subset[a]] >> subset[b] & 1 == 1)
        .count();
    if edges != h.edges().len() {
        return false;
    }
    let mut perm: Vec<usize> = subset.to_vec();
    permutations(&mut perm, 0, &mut |image| {
        (0..k).all(|a| (a + 1..k).all(|b| h.has_edge(a, b) == (adj[image[a]] >> image[b] & 1 == 1)))
    })
}

/// Vertex sets of all induced copies among `present`, in ascending lexicographic order.
pub fn copies(g: &OnlineGraph, h: &PatternGraph, present: &[bool]) -> Vec<Vec<usize>> {
    let adj = adjacency(g);
    let pool: Vec<usize> = (0..g.len()).filter(|&v| present[v]).collect();
    let mut out = Vec::new();
    combinations(&pool, h.k(), 0, &mut Vec::new(), &mut |s| {
        if is_induced_copy(&adj, h, s) {
            out.push(s.to_vec());
        }
    });
    out
}

pub fn all_copies(g: &OnlineGraph, h: &PatternGraph) -> Vec<Vec<usize>> {
    copies(g, h, &vec![true; g.len()])
}

pub fn to_set(vs: &[usize]) -> Set {
    vs.iter().fold(0, |acc, v| acc | (1u128 << v))
}

/// Every subset of `0..n` with at most `max_size` elements that meets every copy.
pub fn hitting_sets_up_to(n: usize, copies: &[Set], max_size: usize) -> Vec<Vec<usize>> {
    let pool: Vec<usize> = (0..n).collect();
    let mut out = Vec::new();
    for size in 0..=max_size.min(n) {
        combinations(&pool, size, 0, &mut Vec::new(), &mut |s| {
            let set = to_set(s);
            if copies.iter().all(|c| c & set != 0) {
                out.push(s.to_vec());
            }
        });
    }
    out
}

/// Size of a minimum hitting set, by increasing subset size.
pub fn min_hitting(n: usize, copies: &[Set]) -> usize {
    let pool: Vec<usize> = (0..n).collect();
    for size in 0..=n {
        let mut found = false;
        combinations(&pool, size, 0, &mut Vec::new(), &mut |s| {
            if !found {
                let set = to_set(s);
                found = copies.iter().all(|c| c & set != 0);
            }
        });
        if found {
            return size;
        }
    }
    unreachable!("the full vertex set hits everything")
}

pub fn min_deletion(g: &OnlineGraph, h: &PatternGraph) -> usize {
    let sets: Vec<Set> = all_copies(g, h).iter().map(|c| to_set(c)).collect();
    min_hitting(g.len(), &sets)
}

pub fn random_graph(rng: &mut impl Rng, n: usize, prob: f64) -> OnlineGraph {
    let mut g = OnlineGraph::new();
    for v in 0..n {
        let nbrs: Vec<VertexId> = (0..v).filter(|_| rng.gen::<f64>() < prob).map(VertexId).collect();
        g.add_vertex(&nbrs, false).unwrap();
    }
    g
}

fn pattern_nbrs(h: &PatternGraph, v: usize) -> Vec<usize> {
    (0..h.k()).filter(|&u| u != v && h.has_edge(u, v)).collect()
}

/// Adjacent pair with equal closed neighborhoods.
pub fn has_true_twins(h: &PatternGraph) -> bool {
    let k = h.k();
    (0..k).any(|u| {
        (u + 1..k).any(|v| {
            let mut nu = pattern_nbrs(h, u);
            nu.push(u);
            let mut nv = pattern_nbrs(h, v);
            nv.push(v);
            nu.sort();
            nv.sort();
            h.has_edge(u, v) && nu == nv
        })
    })
}

/// Non-adjacent pair with equal open neighborhoods.
pub fn has_false_twins(h: &PatternGraph) -> bool {
    let k = h.k();
    (0..k).any(|u| (u + 1..k).any(|v| !h.has_edge(u, v) && pattern_nbrs(h, u) == pattern_nbrs(h, v)))
}

fn connected_without(h: &PatternGraph, removed: Option<usize>) -> bool {
    let k = h.k();
    let alive: Vec<usize> = (0..k).filter(|&v| Some(v) != removed).collect();
    let Some(&start) = alive.first() else { return true };
    let mut seen = vec![false; k];
    let mut stack = vec![start];
    seen[start] = true;
    while let Some(v) = stack.pop() {
        for u in pattern_nbrs(h, v) {
            if Some(u) != removed && !seen[u] {
                seen[u] = true;
                stack.push(u);
            }
        }
    }
    alive.iter().all(|&v| seen[v])
}

/// At least three vertices and connected after removing any single vertex.
pub fn is_two_connected(h: &PatternGraph) -> bool {
    h.k() >= 3 && connected_without(h, None) && (0..h.k()).all(|v| connected_without(h, Some(v)))
}

/// Some ordering makes the edges exactly the consecutive pairs.
pub fn is_path(h: &PatternGraph) -> bool {
    let k = h.k();
    let mut order: Vec<usize> = (0..k).collect();
    permutations(&mut order, 0, &mut |o| (0..k).all(|i| (i + 1..k).all(|j| h.has_edge(o[i], o[j]) == (j == i + 1))))
}
