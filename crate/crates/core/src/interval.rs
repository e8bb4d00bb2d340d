//! Staircase intervals in the extended plane.
//!
//! An interval is stored as its two boundary chains. Both run from the
//! top-left extreme `P` to the bottom-right extreme `Q`; along each chain `x`
//! never decreases and `y` never increases, and every edge is horizontal or
//! vertical. The lower chain bounds the region from below-left and the upper
//! chain from above-right. The chains may share edges (thin whiskers) and
//! touch at pinch points.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::extreal::{diag_dist, ExtendedScalar, Point, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IntervalError {
    #[error("{chain} chain has no vertices")]
    EmptyChain { chain: ChainSide },
    #[error("{chain} chain is not monotone at vertex {index}")]
    NonMonotoneChain { chain: ChainSide, index: usize },
    #[error("{chain} chain edge {index} is neither horizontal nor vertical")]
    NonRectilinearEdge { chain: ChainSide, index: usize },
    #[error("lower and upper chains do not share both endpoints")]
    ChainsEndpointMismatch,
    #[error("upper chain passes below the lower chain near x = {at}")]
    EmptyRegion { at: ExtendedScalar },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ChainSide {
    Lower,
    Upper,
}

impl std::fmt::Display for ChainSide {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ChainSide::Lower => "lower",
            ChainSide::Upper => "upper",
        })
    }
}

/// A rectilinear chain, x non-decreasing and y non-increasing, with no
/// repeated or collinear-interior vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonotoneChain {
    vertices: Vec<Point>,
}

impl MonotoneChain {
    /// Checks and canonicalizes a vertex list: repeated vertices are dropped
    /// and runs of collinear vertices are merged.
    pub fn new(points: Vec<Point>, side: ChainSide) -> Result<Self, IntervalError> {
        if points.is_empty() {
            return Err(IntervalError::EmptyChain { chain: side });
        }
        let mut out: Vec<Point> = Vec::with_capacity(points.len());
        for (i, p) in points.into_iter().enumerate() {
            if let Some(prev) = out.last() {
                if *prev == p {
                    continue;
                }
                if prev.x != p.x && prev.y != p.y {
                    return Err(IntervalError::NonRectilinearEdge { chain: side, index: i - 1 });
                }
                if p.x < prev.x || p.y > prev.y {
                    return Err(IntervalError::NonMonotoneChain { chain: side, index: i });
                }
            }
            while out.len() >= 2 {
                let (a, b) = (&out[out.len() - 2], &out[out.len() - 1]);
                if (a.x == b.x && b.x == p.x) || (a.y == b.y && b.y == p.y) {
                    out.pop();
                } else {
                    break;
                }
            }
            out.push(p);
        }
        Ok(MonotoneChain { vertices: out })
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn first(&self) -> &Point {
        &self.vertices[0]
    }

    pub fn last(&self) -> &Point {
        self.vertices.last().expect("chains are nonempty")
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn shifted(&self, d: &Rational) -> MonotoneChain {
        MonotoneChain {
            vertices: self.vertices.iter().map(|p| p.shifted(d)).collect(),
        }
    }

    /// y of the last vertex with `x <= at`.
    fn y_last_le(&self, at: &ExtendedScalar) -> &ExtendedScalar {
        let k = self.vertices.partition_point(|v| v.x <= *at);
        &self.vertices[k - 1].y
    }

    /// y of the first vertex with `x >= at`.
    fn y_first_ge(&self, at: &ExtendedScalar) -> &ExtendedScalar {
        let k = self.vertices.partition_point(|v| v.x < *at);
        &self.vertices[k].y
    }

    fn x_range_contains(&self, x: &ExtendedScalar) -> bool {
        self.first().x <= *x && *x <= self.last().x
    }

    /// The y-range `[ymin, ymax]` of the chain's points on the vertical line
    /// at `x`, or `None` if `x` is outside the chain's x-range.
    pub fn column_span(&self, x: &ExtendedScalar) -> Option<(&ExtendedScalar, &ExtendedScalar)> {
        self.x_range_contains(x)
            .then(|| (self.y_last_le(x), self.y_first_ge(x)))
    }

    /// The x-range `[xmin, xmax]` of the chain's points on the horizontal line
    /// at `y`, or `None` if `y` is outside the chain's y-range.
    pub fn row_span(&self, y: &ExtendedScalar) -> Option<(&ExtendedScalar, &ExtendedScalar)> {
        if *y > self.first().y || *y < self.last().y {
            return None;
        }
        let first = self.vertices.partition_point(|v| v.y > *y);
        let last = self.vertices.partition_point(|v| v.y >= *y) - 1;
        Some((&self.vertices[first].x, &self.vertices[last].x))
    }

    pub fn contains_point(&self, p: &Point) -> bool {
        match self.column_span(&p.x) {
            Some((lo, hi)) => *lo <= p.y && p.y <= *hi,
            None => false,
        }
    }

    /// The unique finite point where the line `y = x + c` meets the chain.
    ///
    /// Along the finite part of a chain `y - x` strictly decreases, so a
    /// binary search over vertices locates the crossing edge. Vertices at
    /// infinity sort to the appropriate end.
    pub fn diagonal_hit(&self, c: &Rational) -> Option<Point> {
        let vs = &self.vertices;
        let target = ExtendedScalar::Finite(c.clone());
        let k = vs.partition_point(|v| intercept_key(v) >= target);
        if k > 0 {
            let v = &vs[k - 1];
            if v.intercept().as_ref() == Some(c) {
                return Some(v.clone());
            }
        }
        if k == 0 || k == vs.len() {
            return None;
        }
        let (a, b) = (&vs[k - 1], &vs[k]);
        if a.x == b.x {
            let x = a.x.as_finite()?;
            Some(Point::new(x.clone(), x + c))
        } else {
            let y = a.y.as_finite()?;
            Some(Point::new(y - c, y.clone()))
        }
    }
}

/// Sort key for the diagonal search: the intercept `y - x` for finite
/// vertices, `+inf` for vertices on the top or left side at infinity and
/// `-inf` for the bottom or right side.
fn intercept_key(v: &Point) -> ExtendedScalar {
    use ExtendedScalar::*;
    match (&v.x, &v.y) {
        (Finite(x), Finite(y)) => Finite(y - x),
        (_, PosInf) | (NegInf, _) => PosInf,
        _ => NegInf,
    }
}

/// The columns of a region sampled at its breakpoints and on the open slabs
/// between consecutive breakpoints. Columns are closed `[lo, hi]` ranges and
/// may be empty (`lo > hi`).
#[derive(Clone, Debug)]
pub(crate) struct ColumnProfile {
    pub xs: Vec<ExtendedScalar>,
    pub at: Vec<(ExtendedScalar, ExtendedScalar)>,
    pub slabs: Vec<(ExtendedScalar, ExtendedScalar)>,
}

fn nonempty(c: &(ExtendedScalar, ExtendedScalar)) -> bool {
    c.0 <= c.1
}

impl ColumnProfile {
    /// Splits the profile into maximal runs of nonempty columns and builds
    /// one interval per run.
    pub fn components(&self) -> Vec<StaircaseInterval> {
        let mut out = Vec::new();
        let mut start: Option<usize> = None;
        for i in 0..self.xs.len() {
            if !nonempty(&self.at[i]) {
                continue;
            }
            if start.is_none() {
                start = Some(i);
            }
            let continues = i + 1 < self.xs.len() && nonempty(&self.slabs[i]);
            if !continues {
                if let Some(s) = start.take() {
                    out.push(self.build(s, i));
                }
            }
        }
        out
    }

    /// Builds the interval covering breakpoints `i..=j`.
    fn build(&self, i: usize, j: usize) -> StaircaseInterval {
        let xs = &self.xs;
        let (l0, h0) = &self.at[i];
        let mut lower = vec![Point::new(xs[i].clone(), h0.clone()), Point::new(xs[i].clone(), l0.clone())];
        let mut upper = vec![Point::new(xs[i].clone(), h0.clone())];
        for k in i..j {
            let (ls, hs) = &self.slabs[k];
            let (l1, h1) = &self.at[k + 1];
            lower.push(Point::new(xs[k].clone(), ls.clone()));
            lower.push(Point::new(xs[k + 1].clone(), ls.clone()));
            lower.push(Point::new(xs[k + 1].clone(), l1.clone()));
            upper.push(Point::new(xs[k].clone(), hs.clone()));
            upper.push(Point::new(xs[k + 1].clone(), hs.clone()));
            upper.push(Point::new(xs[k + 1].clone(), h1.clone()));
        }
        upper.push(Point::new(xs[j].clone(), self.at[j].0.clone()));
        StaircaseInterval::new(lower, upper).expect("column profiles yield valid staircases")
    }
}

/// A closed staircase interval given by its lower and upper boundary chains.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StaircaseInterval {
    lower: MonotoneChain,
    upper: MonotoneChain,
}

impl StaircaseInterval {
    /// Validates and canonicalizes a pair of chains.
    pub fn new(lower: Vec<Point>, upper: Vec<Point>) -> Result<Self, IntervalError> {
        if lower.is_empty() {
            return Err(IntervalError::EmptyChain { chain: ChainSide::Lower });
        }
        if upper.is_empty() {
            return Err(IntervalError::EmptyChain { chain: ChainSide::Upper });
        }
        if lower.first() != upper.first() || lower.last() != upper.last() {
            return Err(IntervalError::ChainsEndpointMismatch);
        }
        let lower = MonotoneChain::new(lower, ChainSide::Lower)?;
        let upper = MonotoneChain::new(upper, ChainSide::Upper)?;
        let iv = StaircaseInterval { lower, upper };
        let profile = iv.profile();
        for (x, c) in profile.xs.iter().zip(&profile.at) {
            if !nonempty(c) {
                return Err(IntervalError::EmptyRegion { at: x.clone() });
            }
        }
        for (x, c) in profile.xs.iter().zip(&profile.slabs) {
            if !nonempty(c) {
                return Err(IntervalError::EmptyRegion { at: x.clone() });
            }
        }
        Ok(iv)
    }

    /// The axis-aligned rectangle `[x0, x1] x [y0, y1]`.
    pub fn rectangle(
        x0: ExtendedScalar,
        y0: ExtendedScalar,
        x1: ExtendedScalar,
        y1: ExtendedScalar,
    ) -> Result<Self, IntervalError> {
        let p = Point::new(x0.clone(), y1.clone());
        let q = Point::new(x1.clone(), y0.clone());
        StaircaseInterval::new(
            vec![p.clone(), Point::new(x0, y0), q.clone()],
            vec![p, Point::new(x1, y1), q],
        )
    }

    pub fn lower(&self) -> &MonotoneChain {
        &self.lower
    }

    pub fn upper(&self) -> &MonotoneChain {
        &self.upper
    }

    /// The top-left extreme `P`.
    pub fn top_left(&self) -> &Point {
        self.lower.first()
    }

    /// The bottom-right extreme `Q`.
    pub fn bottom_right(&self) -> &Point {
        self.lower.last()
    }

    /// Number of chain vertices, the size measure used for complexity.
    pub fn vertex_count(&self) -> usize {
        self.lower.len() + self.upper.len()
    }

    /// Vertices of the lower and upper chains.
    pub fn boundary_vertices(&self) -> (&[Point], &[Point]) {
        (self.lower.vertices(), self.upper.vertices())
    }

    pub fn all_vertices(&self) -> impl Iterator<Item = &Point> {
        self.lower.vertices().iter().chain(self.upper.vertices())
    }

    /// The region's column `[lo, hi]` at `x`, or `None` outside its x-range.
    pub fn column(&self, x: &ExtendedScalar) -> Option<(ExtendedScalar, ExtendedScalar)> {
        let (lo, _) = self.lower.column_span(x)?;
        let (_, hi) = self.upper.column_span(x)?;
        Some((lo.clone(), hi.clone()))
    }

    /// The region's row `[lo, hi]` at `y`, or `None` outside its y-range.
    pub fn row(&self, y: &ExtendedScalar) -> Option<(ExtendedScalar, ExtendedScalar)> {
        let (lo, _) = self.lower.row_span(y)?;
        let (_, hi) = self.upper.row_span(y)?;
        Some((lo.clone(), hi.clone()))
    }

    pub fn contains(&self, p: &Point) -> bool {
        match self.column(&p.x) {
            Some((lo, hi)) => lo <= p.y && p.y <= hi,
            None => false,
        }
    }

    /// The interval of the shifted module `M(. + d)`, i.e. the region moved
    /// by `-d` along the diagonal.
    pub fn shift(&self, d: &Rational) -> StaircaseInterval {
        let neg = -d;
        StaircaseInterval {
            lower: self.lower.shifted(&neg),
            upper: self.upper.shifted(&neg),
        }
    }

    /// Moves the region by `+d` along the diagonal.
    pub fn translate(&self, d: &Rational) -> StaircaseInterval {
        StaircaseInterval {
            lower: self.lower.shifted(d),
            upper: self.upper.shifted(d),
        }
    }

    /// Half the largest diagonal extent of the region: the module is
    /// `2 delta`-trivial exactly when `delta >= tau`.
    pub fn trivial_threshold(&self) -> ExtendedScalar {
        self.lower
            .vertices()
            .iter()
            .map(|v| diag_dist(v, &self.upper))
            .max()
            .expect("chains are nonempty")
            .half()
    }

    /// Sorted distinct x-coordinates of all vertices.
    pub(crate) fn breakpoints(&self) -> Vec<ExtendedScalar> {
        merge_sorted(
            self.lower.vertices().iter().map(|v| &v.x),
            self.upper.vertices().iter().map(|v| &v.x),
        )
    }

    pub(crate) fn profile(&self) -> ColumnProfile {
        let xs = self.breakpoints();
        let at = xs
            .iter()
            .map(|x| self.column(x).expect("breakpoints lie in the x-range"))
            .collect();
        let slabs = xs
            .windows(2)
            .map(|w| (self.lower.y_last_le(&w[0]).clone(), self.upper.y_first_ge(&w[1]).clone()))
            .collect();
        ColumnProfile { xs, at, slabs }
    }

    /// Column on the open slab `(a, b)` where `a < b` are consecutive
    /// breakpoints of some refinement of this interval's breakpoints.
    pub(crate) fn slab_column(&self, a: &ExtendedScalar, b: &ExtendedScalar) -> (ExtendedScalar, ExtendedScalar) {
        (self.lower.y_last_le(a).clone(), self.upper.y_first_ge(b).clone())
    }
}

/// Free-function form of [`StaircaseInterval::new`].
pub fn validate(lower: Vec<Point>, upper: Vec<Point>) -> Result<StaircaseInterval, IntervalError> {
    StaircaseInterval::new(lower, upper)
}

/// Merges two sorted sequences into a sorted, deduplicated vector.
pub(crate) fn merge_sorted<'a>(
    a: impl Iterator<Item = &'a ExtendedScalar>,
    b: impl Iterator<Item = &'a ExtendedScalar>,
) -> Vec<ExtendedScalar> {
    let mut a = a.peekable();
    let mut b = b.peekable();
    let mut out: Vec<ExtendedScalar> = Vec::new();
    loop {
        let next = match (a.peek(), b.peek()) {
            (Some(x), Some(y)) => {
                if x <= y {
                    a.next()
                } else {
                    b.next()
                }
            }
            (Some(_), None) => a.next(),
            (None, Some(_)) => b.next(),
            (None, None) => break,
        }
        .expect("peeked");
        if out.last() != Some(next) {
            out.push(next.clone());
        }
    }
    out
}

/// A direct sum of staircase interval modules.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IntervalModule {
    pub summands: Vec<StaircaseInterval>,
}

impl IntervalModule {
    pub fn new(summands: Vec<StaircaseInterval>) -> Self {
        IntervalModule { summands }
    }

    pub fn len(&self) -> usize {
        self.summands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    /// Pointwise dimension at `p`.
    pub fn dim_at(&self, p: &Point) -> usize {
        self.summands.iter().filter(|s| s.contains(p)).count()
    }
}

impl From<StaircaseInterval> for IntervalModule {
    fn from(s: StaircaseInterval) -> Self {
        IntervalModule { summands: vec![s] }
    }
}
