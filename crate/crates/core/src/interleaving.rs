//! Interleaving distance between two staircase interval modules.
//!
//! The search has two ingredients. Restricting both modules to the diagonal
//! through a vertex gives a pair of 1-parameter bars whose interleaving
//! distance is a lower bound; the largest such bound over all vertices is
//! `delta_star`. Above that bound the answer is the least candidate `d` for
//! which every intersection component of `M` with `N` shifted by a hair more
//! than `d` (and vice versa) is either valid or trivializable.

use num_traits::{One, Zero};

use crate::extreal::{diag_dist, DiagonalLine, ExtendedScalar, Point, Rational};
use crate::intersection::{d_triv, intersect_components, is_valid_with_step, step_below_gaps};
use crate::interval::StaircaseInterval;
use crate::par::Execution;

/// The intersection of an interval with a diagonal line, as a range of
/// signed offsets from the line's anchor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SliceInterval {
    Empty,
    Span { lo: ExtendedScalar, hi: ExtendedScalar },
}

impl SliceInterval {
    pub fn span(lo: impl Into<ExtendedScalar>, hi: impl Into<ExtendedScalar>) -> Self {
        SliceInterval::Span { lo: lo.into(), hi: hi.into() }
    }

    /// Half the length of the bar, its distance to the zero module.
    pub fn half_length(&self) -> ExtendedScalar {
        match self {
            SliceInterval::Empty => ExtendedScalar::zero(),
            SliceInterval::Span { lo, hi } => match (lo, hi) {
                (ExtendedScalar::Finite(a), ExtendedScalar::Finite(b)) => ExtendedScalar::Finite(b - a).half(),
                _ => ExtendedScalar::PosInf,
            },
        }
    }
}

/// Restriction of `i` to `line`.
pub fn slice(i: &StaircaseInterval, line: &DiagonalLine) -> SliceInterval {
    use ExtendedScalar::Finite;
    let a = &line.anchor;
    match (&a.x, &a.y) {
        (Finite(x0), Finite(y0)) => {
            let c = y0 - x0;
            let offset = |p: Point| Finite(p.x.as_finite().expect("diagonal hits are finite") - x0);
            let lo = i.lower().diagonal_hit(&c).map(offset);
            let hi = i.upper().diagonal_hit(&c).map(offset);
            match (lo, hi) {
                (Some(lo), Some(hi)) => SliceInterval::Span { lo, hi },
                (Some(lo), None) => SliceInterval::Span { lo, hi: ExtendedScalar::PosInf },
                (None, Some(hi)) => SliceInterval::Span { lo: ExtendedScalar::NegInf, hi },
                (None, None) if i.contains(a) => SliceInterval::span(ExtendedScalar::NegInf, ExtendedScalar::PosInf),
                (None, None) => SliceInterval::Empty,
            }
        }
        (Finite(x0), y_inf) => finite_part(i.row(y_inf), x0),
        (x_inf, Finite(y0)) => finite_part(i.column(x_inf), y0),
        _ if i.contains(a) => SliceInterval::span(0, 0),
        _ => SliceInterval::Empty,
    }
}

/// Offsets of the finite part of a row or column at infinity.
fn finite_part(range: Option<(ExtendedScalar, ExtendedScalar)>, origin: &Rational) -> SliceInterval {
    match range {
        Some((lo, hi)) if lo != ExtendedScalar::PosInf && hi != ExtendedScalar::NegInf => SliceInterval::Span {
            lo: lo.sub_finite(origin),
            hi: hi.sub_finite(origin),
        },
        _ => SliceInterval::Empty,
    }
}

/// Interleaving distance between two 1-parameter interval modules: either
/// slide one bar onto the other or kill both.
pub fn interleave_1d(a: &SliceInterval, b: &SliceInterval) -> ExtendedScalar {
    let kill = a.half_length().max(b.half_length());
    match (a, b) {
        (SliceInterval::Span { lo: a0, hi: a1 }, SliceInterval::Span { lo: b0, hi: b1 }) => {
            let slide = ExtendedScalar::abs_diff(a0, b0).max(ExtendedScalar::abs_diff(a1, b1));
            slide.min(kill)
        }
        _ => kill,
    }
}

/// The largest 1-parameter lower bound over diagonals through vertices.
pub fn delta_star(m: &StaircaseInterval, n: &StaircaseInterval) -> ExtendedScalar {
    m.all_vertices()
        .chain(n.all_vertices())
        .map(|v| {
            let line = DiagonalLine::through(v.clone());
            interleave_1d(&slice(m, &line), &slice(n, &line))
        })
        .max()
        .expect("intervals have vertices")
}

/// Finite candidates for the distance, sorted and distinct, with a flag for
/// `+inf` and a step smaller than half of every gap between candidates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CandidateSet {
    pub finite_values: Vec<Rational>,
    pub contains_infinity: bool,
    pub epsilon: Rational,
}

impl CandidateSet {
    pub fn from_values(values: impl IntoIterator<Item = ExtendedScalar>) -> Self {
        let mut contains_infinity = false;
        let mut finite_values = Vec::new();
        for v in values {
            match v {
                ExtendedScalar::Finite(r) => finite_values.push(r),
                _ => contains_infinity = true,
            }
        }
        finite_values.sort();
        finite_values.dedup();
        let epsilon = finite_values
            .windows(2)
            .map(|w| &w[1] - &w[0])
            .min()
            .map_or_else(Rational::one, |gap| gap / num_bigint::BigInt::from(2));
        CandidateSet { finite_values, contains_infinity, epsilon }
    }

    pub fn contains(&self, v: &ExtendedScalar) -> bool {
        match v {
            ExtendedScalar::Finite(r) => self.finite_values.binary_search(r).is_ok(),
            _ => self.contains_infinity,
        }
    }
}

/// Diagonal distances from every vertex of either interval to each of the
/// four boundary chains, together with their halves.
pub fn candidate_set(m: &StaircaseInterval, n: &StaircaseInterval) -> CandidateSet {
    let chains = [m.lower(), n.lower(), m.upper(), n.upper()];
    let values = m
        .all_vertices()
        .chain(n.all_vertices())
        .flat_map(|v| chains.iter().map(move |c| diag_dist(v, c)))
        .flat_map(|d| {
            let h = d.half();
            [d, h]
        });
    CandidateSet::from_values(values)
}

/// Checks every component of `m ∩ n(. + d)`: valid or trivializable below `d`.
fn components_ok(m: &StaircaseInterval, n: &StaircaseInterval, d: &Rational) -> bool {
    let shifted = n.shift(d);
    let bound = ExtendedScalar::Finite(d.clone());
    let eps = step_below_gaps(m, &shifted);
    intersect_components(m, &shifted)
        .iter()
        .all(|q| is_valid_with_step(q, m, &shifted, &eps) || d_triv(q, m, &shifted) < bound)
}

/// The structural half of the interleaving criterion at shift `dprime`.
pub fn probe(m: &StaircaseInterval, n: &StaircaseInterval, dprime: &Rational) -> bool {
    probe_with(m, n, dprime, Execution::Sequential)
}

pub fn probe_with(m: &StaircaseInterval, n: &StaircaseInterval, dprime: &Rational, exec: Execution) -> bool {
    debug_assert!(*dprime > Rational::zero());
    let (a, b) = exec.join(|| components_ok(m, n, dprime), || components_ok(n, m, dprime));
    a && b
}

/// Exact interleaving distance between the interval modules of `m` and `n`.
pub fn interleaving_distance(m: &StaircaseInterval, n: &StaircaseInterval) -> ExtendedScalar {
    interleaving_distance_with(m, n, Execution::Sequential)
}

pub fn interleaving_distance_with(m: &StaircaseInterval, n: &StaircaseInterval, exec: Execution) -> ExtendedScalar {
    let lower = match delta_star(m, n) {
        ExtendedScalar::Finite(r) => r,
        _ => return ExtendedScalar::PosInf,
    };
    let s = candidate_set(m, n);
    let start = s.finite_values.partition_point(|v| *v < lower);
    let cands = &s.finite_values[start..];
    // d_I <= d holds on an up-closed set of candidates, and between two
    // candidates nothing changes, so probing just above d decides it.
    let (mut lo, mut hi) = (0, cands.len());
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if probe_with(m, n, &(&cands[mid] + &s.epsilon), exec) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    cands.get(lo).map_or(ExtendedScalar::PosInf, |d| ExtendedScalar::Finite(d.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extreal::{rat, ratio};
    use ExtendedScalar::{NegInf, PosInf};

    fn sq(a: i64, b: i64) -> StaircaseInterval {
        StaircaseInterval::rectangle(a.into(), a.into(), b.into(), b.into()).unwrap()
    }

    fn line(x: impl Into<ExtendedScalar>, y: impl Into<ExtendedScalar>) -> DiagonalLine {
        DiagonalLine::through(Point::new(x, y))
    }

    #[test]
    fn slices_of_square() {
        assert_eq!(slice(&sq(0, 2), &line(0, 0)), SliceInterval::span(0, 2));
        assert_eq!(slice(&sq(0, 2), &line(0, 2)), SliceInterval::span(0, 0));
        assert_eq!(slice(&sq(0, 2), &line(5, 0)), SliceInterval::Empty);
        assert_eq!(slice(&sq(0, 2), &line(3, 4)), SliceInterval::span(-3, -2));
    }

    #[test]
    fn slices_of_unbounded_regions() {
        let quadrant = StaircaseInterval::rectangle(0.into(), 0.into(), PosInf, PosInf).unwrap();
        assert_eq!(slice(&quadrant, &line(1, 0)), SliceInterval::span(0, PosInf));
        assert_eq!(slice(&quadrant, &line(5, PosInf)), SliceInterval::span(-5, PosInf));
        assert_eq!(slice(&quadrant, &line(PosInf, PosInf)), SliceInterval::span(0, 0));
        assert_eq!(slice(&quadrant, &line(NegInf, 0)), SliceInterval::Empty);
        let plane = StaircaseInterval::rectangle(NegInf, NegInf, PosInf, PosInf).unwrap();
        assert_eq!(slice(&plane, &line(3, 1)), SliceInterval::span(NegInf, PosInf));
    }

    #[test]
    fn one_dimensional_distance() {
        let d = |a: SliceInterval, b: SliceInterval| interleave_1d(&a, &b);
        assert_eq!(d(SliceInterval::span(0, 10), SliceInterval::span(2, 8)), ExtendedScalar::int(2));
        assert_eq!(d(SliceInterval::span(0, 2), SliceInterval::span(10, 12)), ExtendedScalar::int(1));
        assert_eq!(d(SliceInterval::span(0, 4), SliceInterval::Empty), ExtendedScalar::int(2));
        assert_eq!(d(SliceInterval::Empty, SliceInterval::Empty), ExtendedScalar::int(0));
        assert_eq!(d(SliceInterval::span(0, PosInf), SliceInterval::span(1, PosInf)), ExtendedScalar::int(1));
        assert_eq!(d(SliceInterval::span(0, PosInf), SliceInterval::Empty), PosInf);
    }

    #[test]
    fn delta_star_examples() {
        assert_eq!(delta_star(&sq(0, 2), &sq(0, 2)), ExtendedScalar::int(0));
        assert_eq!(delta_star(&sq(0, 2), &sq(1, 3)), ExtendedScalar::int(1));
        assert_eq!(delta_star(&sq(0, 2), &sq(30, 32)), ExtendedScalar::int(1));
    }

    #[test]
    fn candidates() {
        let s = candidate_set(&sq(0, 2), &sq(0, 2));
        for v in [0, 1, 2] {
            assert!(s.finite_values.contains(&rat(v)));
        }
        // Every diagonal through a corner of one square also crosses the
        // other, so all distances are finite here.
        assert!(!candidate_set(&sq(0, 2), &sq(10, 12)).contains_infinity);
        let low = StaircaseInterval::rectangle(10.into(), 0.into(), 11.into(), 1.into()).unwrap();
        assert!(candidate_set(&sq(0, 2), &low).contains_infinity);
        let p = StaircaseInterval::new(vec![Point::new(1, 1)], vec![Point::new(1, 1)]).unwrap();
        let s = candidate_set(&p, &p);
        assert_eq!(s.finite_values, vec![rat(0)]);
        assert_eq!(s.epsilon, rat(1));
    }

    #[test]
    fn probes() {
        let eps = ratio(1, 100);
        assert!(probe(&sq(0, 2), &sq(1, 3), &(rat(1) + &eps)));
        assert!(!probe(&sq(0, 2), &sq(1, 3), &ratio(1, 2)));
        assert!(probe(&sq(0, 2), &sq(30, 32), &(rat(1) + &eps)));
    }

    #[test]
    fn distances() {
        assert_eq!(interleaving_distance(&sq(0, 2), &sq(0, 2)), ExtendedScalar::int(0));
        assert_eq!(interleaving_distance(&sq(0, 2), &sq(1, 3)), ExtendedScalar::int(1));
        assert_eq!(interleaving_distance(&sq(0, 2), &sq(30, 32)), ExtendedScalar::int(1));
        let quadrant = StaircaseInterval::rectangle(0.into(), 0.into(), PosInf, PosInf).unwrap();
        let q2 = StaircaseInterval::rectangle(3.into(), 1.into(), PosInf, PosInf).unwrap();
        assert_eq!(interleaving_distance(&quadrant, &q2), ExtendedScalar::int(3));
        assert_eq!(interleaving_distance(&quadrant, &sq(0, 2)), PosInf);
    }
}
