//! Bottleneck distance between direct sums of staircase interval modules.
//!
//! A threshold `delta` is feasible when the summands can be partially
//! matched so that matched pairs are within `delta` and every leftover
//! summand has trivial threshold at most `delta`. Feasibility is a perfect
//! matching question on a graph padded with one dummy per summand; the
//! distance is the least feasible candidate.

use std::collections::VecDeque;

use serde::Serialize;

use crate::extreal::ExtendedScalar;
use crate::interleaving::interleaving_distance;
use crate::interval::IntervalModule;
use crate::par::Execution;

/// Pairwise interleaving distances plus each summand's trivial threshold.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceMatrix {
    pub entries: Vec<Vec<ExtendedScalar>>,
    pub row_triv: Vec<ExtendedScalar>,
    pub col_triv: Vec<ExtendedScalar>,
}

impl DistanceMatrix {
    pub fn rows(&self) -> usize {
        self.row_triv.len()
    }

    pub fn cols(&self) -> usize {
        self.col_triv.len()
    }

    pub fn transpose(&self) -> DistanceMatrix {
        let entries = (0..self.cols())
            .map(|j| (0..self.rows()).map(|i| self.entries[i][j].clone()).collect())
            .collect();
        DistanceMatrix {
            entries,
            row_triv: self.col_triv.clone(),
            col_triv: self.row_triv.clone(),
        }
    }
}

pub fn pairwise_matrix(ms: &IntervalModule, ns: &IntervalModule) -> DistanceMatrix {
    pairwise_matrix_with(ms, ns, Execution::default())
}

pub fn pairwise_matrix_with(ms: &IntervalModule, ns: &IntervalModule, exec: Execution) -> DistanceMatrix {
    let (m, n) = (ms.len(), ns.len());
    let flat = exec.map(m * n, |k| interleaving_distance(&ms.summands[k / n], &ns.summands[k % n]));
    let entries = if n == 0 {
        vec![Vec::new(); m]
    } else {
        flat.chunks(n).map(<[ExtendedScalar]>::to_vec).collect()
    };
    DistanceMatrix {
        entries,
        row_triv: ms.summands.iter().map(|s| s.trivial_threshold()).collect(),
        col_triv: ns.summands.iter().map(|s| s.trivial_threshold()).collect(),
    }
}

/// A witnessing partial matching: index pairs `(i, j)` plus the summands
/// left unmatched on each side.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Matching {
    pub pairs: Vec<(usize, usize)>,
    pub unmatched_left: Vec<usize>,
    pub unmatched_right: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BottleneckResult {
    pub distance: ExtendedScalar,
    pub matching: Matching,
}

/// Hopcroft-Karp on a bipartite graph given by left adjacency lists.
struct HopcroftKarp<'a> {
    adj: &'a [Vec<usize>],
    pair_left: Vec<Option<usize>>,
    pair_right: Vec<Option<usize>>,
    dist: Vec<usize>,
}

impl<'a> HopcroftKarp<'a> {
    const FAR: usize = usize::MAX;

    fn run(adj: &'a [Vec<usize>], right: usize) -> Self {
        let mut hk = HopcroftKarp {
            adj,
            pair_left: vec![None; adj.len()],
            pair_right: vec![None; right],
            dist: vec![0; adj.len()],
        };
        while hk.layer() {
            for u in 0..adj.len() {
                if hk.pair_left[u].is_none() {
                    hk.augment(u);
                }
            }
        }
        hk
    }

    fn layer(&mut self) -> bool {
        let mut queue = VecDeque::new();
        for u in 0..self.adj.len() {
            if self.pair_left[u].is_none() {
                self.dist[u] = 0;
                queue.push_back(u);
            } else {
                self.dist[u] = Self::FAR;
            }
        }
        let mut found = false;
        while let Some(u) = queue.pop_front() {
            for &v in &self.adj[u] {
                match self.pair_right[v] {
                    None => found = true,
                    Some(w) if self.dist[w] == Self::FAR => {
                        self.dist[w] = self.dist[u] + 1;
                        queue.push_back(w);
                    }
                    Some(_) => {}
                }
            }
        }
        found
    }

    fn augment(&mut self, u: usize) -> bool {
        for k in 0..self.adj[u].len() {
            let v = self.adj[u][k];
            let free = match self.pair_right[v] {
                None => true,
                Some(w) => self.dist[w] == self.dist[u] + 1 && self.augment(w),
            };
            if free {
                self.pair_left[u] = Some(v);
                self.pair_right[v] = Some(u);
                return true;
            }
        }
        self.dist[u] = Self::FAR;
        false
    }

    fn size(&self) -> usize {
        self.pair_left.iter().filter(|p| p.is_some()).count()
    }
}

/// Perfect matching on the padded graph at threshold `delta`, if any.
///
/// Left nodes are the `M_i` followed by one dummy per `N_j`; right nodes are
/// the `N_j` followed by one dummy per `M_i`. Real nodes come first in every
/// adjacency list so ties resolve toward matching real summands.
fn padded_matching(mat: &DistanceMatrix, delta: &ExtendedScalar) -> Option<Matching> {
    let (m, n) = (mat.rows(), mat.cols());
    let mut adj: Vec<Vec<usize>> = Vec::with_capacity(m + n);
    for i in 0..m {
        let mut a: Vec<usize> = (0..n).filter(|&j| mat.entries[i][j] <= *delta).collect();
        if mat.row_triv[i] <= *delta {
            a.push(n + i);
        }
        adj.push(a);
    }
    for j in 0..n {
        let mut a = Vec::with_capacity(m + 1);
        if mat.col_triv[j] <= *delta {
            a.push(j);
        }
        a.extend(n..n + m);
        adj.push(a);
    }
    let hk = HopcroftKarp::run(&adj, n + m);
    if hk.size() < m + n {
        return None;
    }
    let mut out = Matching::default();
    for i in 0..m {
        match hk.pair_left[i] {
            Some(j) if j < n => out.pairs.push((i, j)),
            _ => out.unmatched_left.push(i),
        }
    }
    for j in 0..n {
        if hk.pair_right[j].is_some_and(|u| u >= m) {
            out.unmatched_right.push(j);
        }
    }
    Some(out)
}

/// Whether the summands can be matched within `delta`.
pub fn delta_matched(mat: &DistanceMatrix, delta: &ExtendedScalar) -> bool {
    padded_matching(mat, delta).is_some()
}

pub fn bottleneck_distance(ms: &IntervalModule, ns: &IntervalModule) -> BottleneckResult {
    bottleneck_from_matrix(&pairwise_matrix(ms, ns))
}

pub fn bottleneck_distance_with(ms: &IntervalModule, ns: &IntervalModule, exec: Execution) -> BottleneckResult {
    bottleneck_from_matrix(&pairwise_matrix_with(ms, ns, exec))
}

/// Least feasible threshold among the matrix entries, trivial thresholds
/// and 0, found by binary search since feasibility only grows with `delta`.
pub fn bottleneck_from_matrix(mat: &DistanceMatrix) -> BottleneckResult {
    let mut cands: Vec<ExtendedScalar> = mat
        .entries
        .iter()
        .flatten()
        .chain(&mat.row_triv)
        .chain(&mat.col_triv)
        .filter(|v| v.is_finite())
        .cloned()
        .chain([ExtendedScalar::zero()])
        .collect();
    cands.sort();
    cands.dedup();
    let (mut lo, mut hi) = (0, cands.len());
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if delta_matched(mat, &cands[mid]) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    let distance = cands.get(lo).cloned().unwrap_or(ExtendedScalar::PosInf);
    let matching = padded_matching(mat, &distance).expect("every summand can be left unmatched at +inf");
    BottleneckResult { distance, matching }
}
