//! Girth and short-cycle analysis of the bipartite incidence (Tanner)
//! graph, plus the geometric search for triples of conics whose pairwise
//! tangencies realise 6-cycles.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::field::FieldSpec;
use crate::geometry::{enumerate_conics, tangency_flag, Conic, ConicFamily, Flag};
use crate::gf2::SparseBinaryMatrix;
use crate::incidence::IncidenceStructure;

/// The bipartite graph with point vertices on one side and block (check)
/// vertices on the other.
#[derive(Debug, Clone)]
pub struct BipartiteGraph {
    point_adj: Vec<Vec<u32>>,
    block_adj: Vec<Vec<u32>>,
}

impl BipartiteGraph {
    /// Builds a graph from per-block point lists.
    pub fn from_block_lists(n_points: usize, blocks: Vec<Vec<u32>>) -> Self {
        let mut point_adj = vec![Vec::new(); n_points];
        for (b, members) in blocks.iter().enumerate() {
            for &p in members {
                point_adj[p as usize].push(b as u32);
            }
        }
        for adj in point_adj.iter_mut() {
            adj.sort_unstable();
        }
        let mut block_adj = blocks;
        for adj in block_adj.iter_mut() {
            adj.sort_unstable();
        }
        Self { point_adj, block_adj }
    }

    pub fn from_structure(structure: &IncidenceStructure) -> Self {
        let blocks = structure
            .blocks()
            .iter()
            .map(|b| b.members().iter().map(|&p| p as u32).collect())
            .collect();
        Self::from_block_lists(structure.n_points(), blocks)
    }

    /// Rows of the matrix become block vertices, columns point vertices.
    pub fn from_matrix(m: &SparseBinaryMatrix) -> Self {
        let blocks = m.rows().map(|r| r.iter().map(|&c| c as u32).collect()).collect();
        Self::from_block_lists(m.n_cols(), blocks)
    }

    pub fn n_points(&self) -> usize {
        self.point_adj.len()
    }

    pub fn n_blocks(&self) -> usize {
        self.block_adj.len()
    }

    pub fn n_edges(&self) -> usize {
        self.block_adj.iter().map(|b| b.len()).sum()
    }

    pub fn point_neighbors(&self, p: usize) -> &[u32] {
        &self.point_adj[p]
    }

    pub fn block_neighbors(&self, b: usize) -> &[u32] {
        &self.block_adj[b]
    }

    pub fn point_degrees(&self) -> Vec<usize> {
        self.point_adj.iter().map(|a| a.len()).collect()
    }

    pub fn block_degrees(&self) -> Vec<usize> {
        self.block_adj.iter().map(|a| a.len()).collect()
    }

    // unified vertex numbering: points first, then blocks
    fn neighbors(&self, v: usize) -> &[u32] {
        if v < self.n_points() {
            &self.point_adj[v]
        } else {
            &self.block_adj[v - self.n_points()]
        }
    }

    fn vertex_of_neighbor(&self, v: usize, w: u32) -> usize {
        if v < self.n_points() {
            self.n_points() + w as usize
        } else {
            w as usize
        }
    }
}

/// Length of the shortest cycle, or None for a forest. BFS from every point
/// vertex with parent-edge exclusion; since every cycle of a bipartite
/// graph alternates sides, rooting on the point side is enough. The search
/// depth shrinks as better bounds are found, and 4 is an early exit (no
/// shorter cycle exists in a simple bipartite graph).
pub fn girth(g: &BipartiteGraph) -> Option<usize> {
    let n = g.n_points() + g.n_blocks();
    let mut best = usize::MAX;
    let mut dist = vec![u32::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut touched: Vec<usize> = Vec::new();
    let mut queue: std::collections::VecDeque<usize> = std::collections::VecDeque::new();

    for root in 0..g.n_points() {
        if best == 4 {
            break;
        }
        for &v in &touched {
            dist[v] = u32::MAX;
            parent[v] = usize::MAX;
        }
        touched.clear();
        queue.clear();

        dist[root] = 0;
        touched.push(root);
        queue.push_back(root);
        while let Some(u) = queue.pop_front() {
            let du = dist[u] as usize;
            // a vertex at depth d can only close a cycle of length >= 2d
            if 2 * du + 2 > best {
                continue;
            }
            for &w in g.neighbors(u) {
                let v = g.vertex_of_neighbor(u, w);
                if dist[v] == u32::MAX {
                    dist[v] = dist[u] + 1;
                    parent[v] = u;
                    touched.push(v);
                    if 2 * (du + 1) < best {
                        queue.push_back(v);
                    }
                } else if v != parent[u] && u != parent[v] {
                    let cycle = du + dist[v] as usize + 1;
                    if cycle < best {
                        best = cycle;
                    }
                }
            }
        }
    }
    (best != usize::MAX).then_some(best)
}

/// Exact number of 6-cycles. Enumerates closed walks
/// P1 - B1 - P2 - B3 - P3 - B2 - P1 rooted at each point with an unordered
/// block pair {B1, B2}; each cycle is then seen once per point, so the
/// total is divided by 3.
pub fn count_6_cycles(g: &BipartiteGraph) -> u64 {
    let total: u64 = (0..g.n_points())
        .into_par_iter()
        .map(|p1| {
            let mut acc = 0u64;
            let blocks = g.point_neighbors(p1);
            for (i, &b1) in blocks.iter().enumerate() {
                for &b2 in &blocks[i + 1..] {
                    for &p2 in g.block_neighbors(b1 as usize) {
                        if p2 as usize == p1 {
                            continue;
                        }
                        for &p3 in g.block_neighbors(b2 as usize) {
                            if p3 as usize == p1 || p3 == p2 {
                                continue;
                            }
                            acc += common_blocks_excluding(g, p2, p3, b1, b2);
                        }
                    }
                }
            }
            acc
        })
        .sum();
    debug_assert_eq!(total % 3, 0);
    total / 3
}

fn common_blocks_excluding(g: &BipartiteGraph, p2: u32, p3: u32, b1: u32, b2: u32) -> u64 {
    let (mut i, mut j) = (0, 0);
    let a = g.point_neighbors(p2 as usize);
    let b = g.point_neighbors(p3 as usize);
    let mut count = 0;
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                if a[i] != b1 && a[i] != b2 {
                    count += 1;
                }
                i += 1;
                j += 1;
            }
        }
    }
    count
}

/// Exact number of 8-cycles, for graphs without 4-cycles (all graphs built
/// here have girth at least 6).
///
/// Path-join method: for each ordered pair of points (u, v), every 8-cycle
/// through u, v as opposite vertices is a pair of internally disjoint
/// length-4 paths. From the C(paths, 2) pairs we subtract the degenerate
/// closures: pairs sharing their first block, pairs sharing their last
/// block, and pairs where one path's first block is the other's last
/// (possible only when u and v share a block). Absence of 4-cycles
/// guarantees these cases are mutually exclusive and that distinct paths
/// never share their middle point. Each cycle is counted once per
/// orientation and once per opposite point pair, so the ordered total is
/// divided by 4.
pub fn count_8_cycles(g: &BipartiteGraph) -> u64 {
    let n_points = g.n_points();
    // flat edge ids on the block side for per-(block, point) counters
    let mut block_edge_offset = vec![0usize; g.n_blocks() + 1];
    for b in 0..g.n_blocks() {
        block_edge_offset[b + 1] = block_edge_offset[b] + g.block_neighbors(b).len();
    }
    let n_edges = block_edge_offset[g.n_blocks()];

    let total: u64 = (0..n_points)
        .into_par_iter()
        .map(|u| {
            let mut w_count = vec![0u64; n_points];
            let mut touched_v: Vec<usize> = Vec::new();
            let mut g_count = vec![0u64; n_edges];
            let mut touched_edges: Vec<usize> = Vec::new();
            let mut s_count = vec![0u64; n_points];
            let mut f_scratch = vec![0u64; n_points];
            let mut f_touched: Vec<usize> = Vec::new();

            let mut share_first = 0u64;
            for &b1 in g.point_neighbors(u) {
                for v in f_touched.drain(..) {
                    f_scratch[v] = 0;
                }
                for &x in g.block_neighbors(b1 as usize) {
                    if x as usize == u {
                        continue;
                    }
                    for &b2 in g.point_neighbors(x as usize) {
                        if b2 == b1 {
                            continue;
                        }
                        let base = block_edge_offset[b2 as usize];
                        for (j, &v) in g.block_neighbors(b2 as usize).iter().enumerate() {
                            let v = v as usize;
                            if v == u || v == x as usize {
                                continue;
                            }
                            if w_count[v] == 0 {
                                touched_v.push(v);
                            }
                            w_count[v] += 1;
                            if f_scratch[v] == 0 {
                                f_touched.push(v);
                            }
                            f_scratch[v] += 1;
                            let e = base + j;
                            if g_count[e] == 0 {
                                touched_edges.push(e);
                            }
                            g_count[e] += 1;
                        }
                    }
                }
                // close out this first block: pairs of paths that share it,
                // and the per-v path counts through it when b1 also
                // contains v (then b1 is the unique u-v common block)
                for &v in &f_touched {
                    let f = f_scratch[v];
                    share_first += f * (f - 1) / 2;
                    if g.block_neighbors(b1 as usize).binary_search(&(v as u32)).is_ok() {
                        s_count[v] = f;
                    }
                }
            }

            let mut pair_total = 0u64;
            for &v in &touched_v {
                let w = w_count[v];
                pair_total += w * (w - 1) / 2;
            }
            let mut share_last = 0u64;
            for &e in &touched_edges {
                let gc = g_count[e];
                share_last += gc * (gc - 1) / 2;
            }
            let mut share_cross = 0u64;
            for &v in &touched_v {
                if s_count[v] > 0 {
                    // t = paths ending with the common block = its g counter
                    let b0 = *g
                        .point_neighbors(u)
                        .iter()
                        .find(|&&b| {
                            g.block_neighbors(b as usize).binary_search(&(v as u32)).is_ok()
                        })
                        .expect("s_count only set when a common block exists");
                    let pos = g
                        .block_neighbors(b0 as usize)
                        .binary_search(&(v as u32))
                        .expect("v lies in b0");
                    let t = g_count[block_edge_offset[b0 as usize] + pos];
                    share_cross += s_count[v] * t;
                }
            }
            for &v in &touched_v {
                w_count[v] = 0;
                s_count[v] = 0;
            }
            for &e in &touched_edges {
                g_count[e] = 0;
            }

            pair_total - share_first - share_last - share_cross
        })
        .sum();
    debug_assert_eq!(total % 4, 0);
    total / 4
}

/// Unordered triples of conics whose three pairwise tangency flags are
/// distinct; these are exactly the triples realising 6-cycles of the
/// family's incidence graph. Stops after `limit` triples.
///
/// The pair scan is quadratic in the q^3 - q^2 conics, so this is meant
/// for small q.
pub fn find_c3_configurations(
    family: ConicFamily,
    spec: &FieldSpec,
    limit: usize,
) -> Vec<[Conic; 3]> {
    let conics = enumerate_conics(family, spec);
    let n = conics.len();
    let mut partners: Vec<Vec<(usize, Flag)>> = vec![Vec::new(); n];
    let mut pair_flags: HashMap<(usize, usize), Flag> = HashMap::new();

    let found: Vec<((usize, usize), Flag)> = (0..n)
        .into_par_iter()
        .flat_map_iter(|i| {
            let conics = &conics;
            let spec_ref = spec;
            (i + 1..n).filter_map(move |j| {
                tangency_flag(spec_ref, &conics[i], &conics[j]).map(|f| ((i, j), f))
            })
        })
        .collect();
    for ((i, j), flag) in found {
        partners[i].push((j, flag));
        partners[j].push((i, flag));
        pair_flags.insert((i, j), flag);
    }

    let mut out = Vec::new();
    for a in 0..n {
        let list = &partners[a];
        for (ib, &(b, flag_ab)) in list.iter().enumerate() {
            if b < a {
                continue;
            }
            for &(c, flag_ac) in &list[ib + 1..] {
                if c < a || flag_ab == flag_ac {
                    continue;
                }
                let key = if b < c { (b, c) } else { (c, b) };
                if let Some(&flag_bc) = pair_flags.get(&key) {
                    if flag_bc != flag_ab && flag_bc != flag_ac {
                        out.push([conics[a], conics[b.min(c)], conics[b.max(c)]]);
                        if out.len() >= limit {
                            return out;
                        }
                    }
                }
            }
        }
    }
    out
}
