//! Brute-force ground truth for the fast algorithms.
//!
//! Nothing here calls the validity or trivializability tests, the diagonal
//! search on chains or the intersection sweep. Interleavings are checked
//! straight from the definition: every map between interval modules is a
//! scalar per connected component of the overlap, and scalars can be taken
//! to be 0 or 1, so the search space is finite.
//!
//! All membership questions are answered on a symbolic sample grid. Along
//! each axis the relevant coordinates `c_0 < ... < c_k` cut the line into
//! points and open gaps; sample `2i + 1` stands for `c_i` itself and sample
//! `2i` for the gap just below `c_i` (sample `2k + 2` is the gap above
//! `c_k`). Every region involved is a union of cells of that grid, so one
//! sample per cell decides everything.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::bottleneck::{pairwise_matrix_with, DistanceMatrix};
use crate::extreal::{ExtendedScalar, Point, Rational};
use crate::interleaving::CandidateSet;
use crate::interval::{IntervalModule, StaircaseInterval};
use crate::par::Execution;

/// Default cap on the number of overlap components, i.e. at most `2^12`
/// assignments per probe.
pub const DEFAULT_MAX_COMPONENTS: usize = 12;

/// Default cap on `m + n` for exhaustive matching enumeration.
pub const MAX_MATCHING_SUMMANDS: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{found} overlap components exceed the limit of {limit}")]
    TooManyComponents { found: usize, limit: usize },
    #[error("{summands} summands exceed the matching enumeration limit of {limit}")]
    SizeLimitExceeded { summands: usize, limit: usize },
    #[error("the oracle only handles intervals with finite vertices")]
    InfiniteCoordinate,
}

#[derive(Clone, Copy, Debug)]
pub struct OracleConfig {
    pub max_components: usize,
    pub exec: Execution,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            max_components: DEFAULT_MAX_COMPONENTS,
            exec: Execution::default(),
        }
    }
}

/// One axis of the sample grid.
struct Axis {
    cuts: Vec<Rational>,
}

impl Axis {
    fn new(mut cuts: Vec<Rational>) -> Self {
        cuts.sort();
        cuts.dedup();
        Axis { cuts }
    }

    fn len(&self) -> usize {
        2 * self.cuts.len() + 1
    }

    /// Sample holding `v + s * eta` for an infinitesimal `eta > 0`.
    fn locate(&self, v: &Rational, s: i8) -> usize {
        match self.cuts.binary_search(v) {
            Ok(k) => (2 * k + 1).wrapping_add_signed(s as isize),
            Err(k) => 2 * k,
        }
    }

    fn exact(&self, v: &Rational) -> usize {
        let k = self.cuts.binary_search(v).expect("coordinate is a cut");
        2 * k + 1
    }

    /// A symbolic representative `(value, sign)` of each sample.
    fn representative(&self, i: usize) -> (&Rational, i8) {
        let k = self.cuts.len();
        if i == 2 * k {
            (&self.cuts[k - 1], 1)
        } else if i % 2 == 1 {
            (&self.cuts[i / 2], 0)
        } else {
            (&self.cuts[i / 2], -1)
        }
    }

    /// For each sample, the sample containing it after moving by `d`.
    fn translation(&self, d: &Rational) -> Vec<usize> {
        (0..self.len())
            .map(|i| {
                let (v, s) = self.representative(i);
                self.locate(&(v + d), s)
            })
            .collect()
    }
}

/// A boolean raster over the sample grid.
#[derive(Clone)]
struct Raster {
    nx: usize,
    ny: usize,
    cells: Vec<bool>,
}

impl Raster {
    fn new(nx: usize, ny: usize) -> Self {
        Raster { nx, ny, cells: vec![false; nx * ny] }
    }

    fn get(&self, i: usize, j: usize) -> bool {
        self.cells[i * self.ny + j]
    }

    fn set(&mut self, i: usize, j: usize, v: bool) {
        self.cells[i * self.ny + j] = v;
    }

    fn and(&self, other: &Raster) -> Raster {
        let cells = self.cells.iter().zip(&other.cells).map(|(a, b)| *a && *b).collect();
        Raster { nx: self.nx, ny: self.ny, cells }
    }

    fn and_not(&self, other: &Raster) -> Raster {
        let cells = self.cells.iter().zip(&other.cells).map(|(a, b)| *a && !*b).collect();
        Raster { nx: self.nx, ny: self.ny, cells }
    }

    /// `out(i, j)` = some marked cell at or below-left of `(i, j)`.
    fn or_below_left(&self) -> Raster {
        let mut out = self.clone();
        for i in 0..self.nx {
            for j in 0..self.ny {
                let v = out.get(i, j)
                    || (i > 0 && out.get(i - 1, j))
                    || (j > 0 && out.get(i, j - 1));
                out.set(i, j, v);
            }
        }
        out
    }

    /// `out(i, j)` = some marked cell at or above-right of `(i, j)`.
    fn or_above_right(&self) -> Raster {
        let mut out = self.clone();
        for i in (0..self.nx).rev() {
            for j in (0..self.ny).rev() {
                let v = out.get(i, j)
                    || (i + 1 < self.nx && out.get(i + 1, j))
                    || (j + 1 < self.ny && out.get(i, j + 1));
                out.set(i, j, v);
            }
        }
        out
    }

    /// Labels 4-connected components of the set cells.
    fn components(&self) -> (Vec<Option<usize>>, usize) {
        let mut label = vec![None; self.cells.len()];
        let mut count = 0;
        let mut stack = Vec::new();
        for start in 0..self.cells.len() {
            if !self.cells[start] || label[start].is_some() {
                continue;
            }
            label[start] = Some(count);
            stack.push(start);
            while let Some(c) = stack.pop() {
                let (i, j) = (c / self.ny, c % self.ny);
                let mut visit = |ni: usize, nj: usize| {
                    let n = ni * self.ny + nj;
                    if self.cells[n] && label[n].is_none() {
                        label[n] = Some(count);
                        stack.push(n);
                    }
                };
                if i > 0 {
                    visit(i - 1, j);
                }
                if i + 1 < self.nx {
                    visit(i + 1, j);
                }
                if j > 0 {
                    visit(i, j - 1);
                }
                if j + 1 < self.ny {
                    visit(i, j + 1);
                }
            }
            count += 1;
        }
        (label, count)
    }
}

fn finite(v: &ExtendedScalar) -> Result<&Rational, OracleError> {
    v.as_finite().ok_or(OracleError::InfiniteCoordinate)
}

/// Vertex coordinates of an interval, each moved by `-d`.
fn coords(i: &StaircaseInterval, d: &Rational) -> Result<(Vec<Rational>, Vec<Rational>), OracleError> {
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for v in i.all_vertices() {
        xs.push(finite(&v.x)? - d);
        ys.push(finite(&v.y)? - d);
    }
    Ok((xs, ys))
}

struct Grid {
    x: Axis,
    y: Axis,
}

impl Grid {
    fn from_intervals(parts: &[(&StaircaseInterval, Rational)]) -> Result<Grid, OracleError> {
        let mut xs = Vec::new();
        let mut ys = Vec::new();
        for (i, d) in parts {
            let (a, b) = coords(i, d)?;
            xs.extend(a);
            ys.extend(b);
        }
        Ok(Grid { x: Axis::new(xs), y: Axis::new(ys) })
    }

    fn blank(&self) -> Raster {
        Raster::new(self.x.len(), self.y.len())
    }

    /// Cells of `i - d`. A closed staircase is the set of points lying above
    /// some lower-chain vertex and below some upper-chain vertex.
    fn membership(&self, i: &StaircaseInterval, d: &Rational) -> Result<Raster, OracleError> {
        let (vl, vu) = i.boundary_vertices();
        let mut lows = self.blank();
        for v in vl {
            lows.set(self.x.exact(&(finite(&v.x)? - d)), self.y.exact(&(finite(&v.y)? - d)), true);
        }
        let mut highs = self.blank();
        for v in vu {
            highs.set(self.x.exact(&(finite(&v.x)? - d)), self.y.exact(&(finite(&v.y)? - d)), true);
        }
        Ok(lows.or_below_left().and(&highs.or_above_right()))
    }
}

/// Bit pattern of 0/1 scalars, one per component; 0 off the overlap.
fn scalar(label: &[Option<usize>], cell: usize, bits: u64) -> bool {
    label[cell].is_some_and(|c| bits >> c & 1 == 1)
}

/// Whether the component-constant map with scalars `bits` is a morphism
/// from `src` to `dst`. Only steps between neighbouring samples are checked;
/// longer comparisons compose from these.
fn is_morphism(src: &Raster, dst: &Raster, label: &[Option<usize>], bits: u64) -> bool {
    let ny = src.ny;
    for i in 0..src.nx {
        for j in 0..ny {
            let p = i * ny + j;
            let fp = scalar(label, p, bits);
            for (ok, q) in [(i + 1 < src.nx, p + ny), (j + 1 < ny, p + 1)] {
                if !ok {
                    continue;
                }
                let lhs = scalar(label, q, bits) && src.cells[p] && src.cells[q];
                let rhs = dst.cells[p] && dst.cells[q] && fp;
                if lhs != rhs {
                    return false;
                }
            }
        }
    }
    true
}

/// Whether the modules of `m` and `n` are `delta`-interleaved.
pub fn oracle_is_interleaved(m: &StaircaseInterval, n: &StaircaseInterval, delta: &Rational) -> Result<bool, OracleError> {
    oracle_is_interleaved_with(m, n, delta, &OracleConfig::default())
}

pub fn oracle_is_interleaved_with(
    m: &StaircaseInterval,
    n: &StaircaseInterval,
    delta: &Rational,
    cfg: &OracleConfig,
) -> Result<bool, OracleError> {
    assert!(delta.is_positive(), "interleavings are probed at positive shifts");
    let zero = Rational::zero();
    let two = delta * BigInt::from(2);
    let mut parts = Vec::new();
    for k in [&zero, delta, &two] {
        parts.push((m, k.clone()));
        parts.push((n, k.clone()));
    }
    let grid = Grid::from_intervals(&parts)?;
    let in_m = grid.membership(m, &zero)?;
    let in_n = grid.membership(n, &zero)?;
    let in_m1 = grid.membership(m, delta)?;
    let in_n1 = grid.membership(n, delta)?;
    let in_m2 = grid.membership(m, &two)?;
    let in_n2 = grid.membership(n, &two)?;

    // phi: M -> N(. + delta) lives on M ∩ (N - delta); psi the other way.
    let (phi_label, c1) = in_m.and(&in_n1).components();
    let (psi_label, c2) = in_n.and(&in_m1).components();
    if c1 + c2 > cfg.max_components {
        return Err(OracleError::TooManyComponents { found: c1 + c2, limit: cfg.max_components });
    }

    let phis: Vec<u64> = (0..1u64 << c1).filter(|&b| is_morphism(&in_m, &in_n1, &phi_label, b)).collect();
    let psis: Vec<u64> = (0..1u64 << c2).filter(|&b| is_morphism(&in_n, &in_m1, &psi_label, b)).collect();

    let tx = grid.x.translation(delta);
    let ty = grid.y.translation(delta);
    let ny = in_m.ny;
    let moved = |p: usize| tx[p / ny] * ny + ty[p % ny];
    let round_m = in_m.and(&in_m2);
    let round_n = in_n.and(&in_n2);

    // Triangles: M_x -> N_{x+delta} -> M_{x+2delta} must equal the internal
    // map of M, and symmetrically for N.
    let triangles = |a: u64, b: u64| {
        (0..in_m.cells.len()).all(|p| {
            let q = moved(p);
            round_m.cells[p] == (scalar(&phi_label, p, a) && scalar(&psi_label, q, b))
                && round_n.cells[p] == (scalar(&psi_label, p, b) && scalar(&phi_label, q, a))
        })
    };
    let pairs = phis.len() as u64 * psis.len() as u64;
    Ok(cfg.exec.any(pairs, |k| {
        let a = phis[(k / psis.len() as u64) as usize];
        let b = psis[(k % psis.len() as u64) as usize];
        triangles(a, b)
    }))
}

/// Diagonal distance from `x` to a chain given by its vertices, by checking
/// every edge separately.
pub fn brute_dl(x: &Point, chain: &[Point]) -> ExtendedScalar {
    let (Some(px), Some(py)) = (x.x.as_finite(), x.y.as_finite()) else {
        unimplemented!("brute_dl takes finite points")
    };
    let c = py - px;
    let mut best: Option<Rational> = None;
    let mut consider = |hx: Rational| {
        let d = (&hx - px).abs();
        if best.as_ref().is_none_or(|b| d < *b) {
            best = Some(d);
        }
    };
    if chain.len() == 1 {
        let v = &chain[0];
        if let (Some(vx), Some(vy)) = (v.x.as_finite(), v.y.as_finite()) {
            if vy - vx == c {
                consider(vx.clone());
            }
        }
    }
    for e in chain.windows(2) {
        let (a, b) = (&e[0], &e[1]);
        if a.x == b.x {
            let Some(ex) = a.x.as_finite() else { continue };
            let y = ExtendedScalar::Finite(ex + &c);
            if b.y <= y && y <= a.y {
                consider(ex.clone());
            }
        } else {
            let Some(ey) = a.y.as_finite() else { continue };
            let x = ExtendedScalar::Finite(ey - &c);
            if a.x <= x && x <= b.x {
                consider(ey - &c);
            }
        }
    }
    best.map_or(ExtendedScalar::PosInf, ExtendedScalar::Finite)
}

/// Candidate distances recomputed with [`brute_dl`].
pub fn oracle_candidates(m: &StaircaseInterval, n: &StaircaseInterval) -> CandidateSet {
    let chains = [m.lower().vertices(), n.lower().vertices(), m.upper().vertices(), n.upper().vertices()];
    let mut values = Vec::new();
    for v in m.all_vertices().chain(n.all_vertices()) {
        for c in chains {
            let d = brute_dl(v, c);
            values.push(d.half());
            values.push(d);
        }
    }
    CandidateSet::from_values(values)
}

/// Smallest candidate `d` whose successor shift `d + eps` admits an
/// interleaving, by an ascending scan.
pub fn oracle_distance(m: &StaircaseInterval, n: &StaircaseInterval) -> Result<ExtendedScalar, OracleError> {
    oracle_distance_with(m, n, &OracleConfig::default())
}

pub fn oracle_distance_with(
    m: &StaircaseInterval,
    n: &StaircaseInterval,
    cfg: &OracleConfig,
) -> Result<ExtendedScalar, OracleError> {
    if !m.all_vertices().chain(n.all_vertices()).all(Point::is_finite) {
        return Err(OracleError::InfiniteCoordinate);
    }
    let s = oracle_candidates(m, n);
    for d in &s.finite_values {
        if oracle_is_interleaved_with(m, n, &(d + &s.epsilon), cfg)? {
            return Ok(ExtendedScalar::Finite(d.clone()));
        }
    }
    Ok(ExtendedScalar::PosInf)
}

/// Bottleneck distance by enumerating every partial matching.
pub fn oracle_bottleneck(ms: &IntervalModule, ns: &IntervalModule) -> Result<ExtendedScalar, OracleError> {
    let total = ms.len() + ns.len();
    if total > MAX_MATCHING_SUMMANDS {
        return Err(OracleError::SizeLimitExceeded { summands: total, limit: MAX_MATCHING_SUMMANDS });
    }
    Ok(oracle_bottleneck_matrix(&pairwise_matrix_with(ms, ns, Execution::Sequential)))
}

pub fn oracle_bottleneck_matrix(mat: &DistanceMatrix) -> ExtendedScalar {
    fn go(mat: &DistanceMatrix, i: usize, used: &mut Vec<bool>, cost: ExtendedScalar, best: &mut ExtendedScalar) {
        if i == mat.rows() {
            let mut c = cost;
            for (j, u) in used.iter().enumerate() {
                if !u {
                    c = c.max(mat.col_triv[j].clone());
                }
            }
            if c < *best {
                *best = c;
            }
            return;
        }
        go(mat, i + 1, used, cost.clone().max(mat.row_triv[i].clone()), best);
        for j in 0..mat.cols() {
            if !used[j] {
                used[j] = true;
                go(mat, i + 1, used, cost.clone().max(mat.entries[i][j].clone()), best);
                used[j] = false;
            }
        }
    }
    let mut best = ExtendedScalar::PosInf;
    go(mat, 0, &mut vec![false; mat.cols()], ExtendedScalar::zero(), &mut best);
    best
}

/// The pointwise definition of validity: below every point of `q`, `m`
/// lies inside `n`, and above every point of `q`, `n` lies inside `m`.
pub fn pointwise_valid(q: &StaircaseInterval, m: &StaircaseInterval, n: &StaircaseInterval) -> Result<bool, OracleError> {
    let zero = Rational::zero();
    let grid = Grid::from_intervals(&[(q, zero.clone()), (m, zero.clone()), (n, zero.clone())])?;
    let in_q = grid.membership(q, &zero)?;
    let in_m = grid.membership(m, &zero)?;
    let in_n = grid.membership(n, &zero)?;
    let below = in_m.and_not(&in_n).or_below_left();
    let above = in_n.and_not(&in_m).or_above_right();
    Ok(!in_q.cells.iter().enumerate().any(|(p, &inside)| inside && (below.cells[p] || above.cells[p])))
}

/// Exact point membership from the vertex characterization.
fn vertex_contains(i: &StaircaseInterval, p: &Point) -> bool {
    let (vl, vu) = i.boundary_vertices();
    vl.iter().any(|v| v.le(p)) && vu.iter().any(|u| p.le(u))
}

/// Largest pointwise trivialization radius of `q` over a fine sample of its
/// points: every cut coordinate and every midpoint between cuts.
pub fn raster_d_triv(q: &StaircaseInterval, m: &StaircaseInterval, n: &StaircaseInterval) -> Result<ExtendedScalar, OracleError> {
    let zero = Rational::zero();
    let grid = Grid::from_intervals(&[(q, zero.clone()), (m, zero.clone()), (n, zero)])?;
    let refine = |cuts: &[Rational]| {
        let mut out = cuts.to_vec();
        out.extend(cuts.windows(2).map(|w| (&w[0] + &w[1]) / BigInt::from(2)));
        out
    };
    let xs = refine(&grid.x.cuts);
    let ys = refine(&grid.y.cuts);
    let mut best: Option<ExtendedScalar> = None;
    for x in &xs {
        for y in &ys {
            let p = Point::new(x.clone(), y.clone());
            if !vertex_contains(q, &p) {
                continue;
            }
            let d = brute_dl(&p, m.upper().vertices()).max(brute_dl(&p, n.lower().vertices())).half();
            if best.as_ref().is_none_or(|b| d > *b) {
                best = Some(d);
            }
        }
    }
    Ok(best.expect("intervals contain their vertices"))
}

/// Number of connected pieces of `a ∩ b`, counted on the raster alone.
pub fn raster_overlap(a: &StaircaseInterval, b: &StaircaseInterval) -> Result<usize, OracleError> {
    let zero = Rational::zero();
    let grid = Grid::from_intervals(&[(a, zero.clone()), (b, zero.clone())])?;
    let both = grid.membership(a, &zero)?.and(&grid.membership(b, &zero)?);
    Ok(both.components().1)
}
