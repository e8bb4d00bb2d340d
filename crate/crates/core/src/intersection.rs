//! Connected components of the intersection of two staircase intervals and
//! the two tests the interleaving search runs on each of them.

use crate::extreal::{diag_dist, ExtendedScalar, Point, Rational};
use crate::interval::{merge_sorted, ColumnProfile, StaircaseInterval};

/// Connected components of `a ∩ b`, ordered left to right.
///
/// Distinct components occupy disjoint x-ranges: a closed column at a
/// breakpoint always covers the open slabs on both sides of it, so the
/// intersection is connected across any run of nonempty columns. A single
/// sweep over the merged breakpoints therefore finds every component.
pub fn intersect_components(a: &StaircaseInterval, b: &StaircaseInterval) -> Vec<StaircaseInterval> {
    let left = (&a.top_left().x).max(&b.top_left().x);
    let right = (&a.bottom_right().x).min(&b.bottom_right().x);
    if left > right {
        return Vec::new();
    }
    let (ba, bb) = (a.breakpoints(), b.breakpoints());
    let in_range = |x: &&ExtendedScalar| *x >= left && *x <= right;
    let xs = merge_sorted(ba.iter().filter(in_range), bb.iter().filter(in_range));
    let meet = |(l1, h1): (ExtendedScalar, ExtendedScalar), (l2, h2): (ExtendedScalar, ExtendedScalar)| {
        (l1.max(l2), h1.min(h2))
    };
    let at = xs
        .iter()
        .map(|x| meet(a.column(x).expect("in range"), b.column(x).expect("in range")))
        .collect();
    let slabs = xs
        .windows(2)
        .map(|w| meet(a.slab_column(&w[0], &w[1]), b.slab_column(&w[0], &w[1])))
        .collect();
    ColumnProfile { xs, at, slabs }.components()
}

/// Whether the identity on `q` extends by zero to a morphism from the module
/// of `m` to the module of `n`.
///
/// The lower boundary vertices of `q` must lie on the lower chain of `m` and
/// its upper boundary vertices on the upper chain of `n`. For closed regions
/// that is not quite enough: a vertex of `q` can sit on an edge of `m` that
/// carries on past it, leaving points of `m` just below or to the left that
/// are not in `n`. So each lower vertex is also probed one step to the left
/// and one step down, and each upper vertex one step right and one step up,
/// with the step shorter than any gap between coordinates.
pub fn is_valid(q: &StaircaseInterval, m: &StaircaseInterval, n: &StaircaseInterval) -> bool {
    is_valid_with_step(q, m, n, &step_below_gaps(m, n))
}

/// [`is_valid`] with the probing step supplied, so callers checking many
/// components of one intersection compute it once.
pub(crate) fn is_valid_with_step(q: &StaircaseInterval, m: &StaircaseInterval, n: &StaircaseInterval, eps: &Rational) -> bool {
    let (vl, vu) = q.boundary_vertices();
    if !vl.iter().all(|v| m.lower().contains_point(v)) || !vu.iter().all(|v| n.upper().contains_point(v)) {
        return false;
    }
    let leaks = |v: &Point, from: &StaircaseInterval, into: &StaircaseInterval, d: &Rational| {
        let moved = [
            Point::new(v.x.add_finite(d), v.y.clone()),
            Point::new(v.x.clone(), v.y.add_finite(d)),
        ];
        moved.iter().any(|p| p != v && from.contains(p) && !into.contains(p))
    };
    let back = -eps.clone();
    !vl.iter().any(|v| leaks(v, m, n, &back)) && !vu.iter().any(|v| leaks(v, n, m, eps))
}

/// Half the smallest positive gap between finite coordinates of `m` and `n`.
/// Vertices of their intersection reuse those coordinates.
pub(crate) fn step_below_gaps(m: &StaircaseInterval, n: &StaircaseInterval) -> Rational {
    let mut coords: Vec<&Rational> = m
        .all_vertices()
        .chain(n.all_vertices())
        .flat_map(|p| [p.x.as_finite(), p.y.as_finite()])
        .flatten()
        .collect();
    coords.sort();
    coords.dedup();
    let gap = coords.windows(2).map(|w| w[1] - w[0]).min().unwrap_or_else(|| Rational::from_integer(1.into()));
    gap / Rational::from_integer(2.into())
}

/// Pointwise trivialization radius: half the larger of the diagonal
/// distances from `x` to the upper chain of `m` and to the lower chain of `n`.
pub fn d_triv_at(x: &Point, m: &StaircaseInterval, n: &StaircaseInterval) -> ExtendedScalar {
    diag_dist(x, m.upper()).max(diag_dist(x, n.lower())).half()
}

/// Supremum of [`d_triv_at`] over `q`. Along any edge of `q` the distance to
/// an upper chain only shrinks and the distance to a lower chain only grows
/// as one moves up-right, so the supremum is attained at a vertex.
pub fn d_triv(q: &StaircaseInterval, m: &StaircaseInterval, n: &StaircaseInterval) -> ExtendedScalar {
    q.all_vertices()
        .map(|v| d_triv_at(v, m, n))
        .max()
        .expect("intervals have vertices")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extreal::rat;
    use ExtendedScalar::PosInf;

    fn pts(v: &[(i64, i64)]) -> Vec<Point> {
        v.iter().map(|&(x, y)| Point::new(x, y)).collect()
    }

    fn rect(x0: i64, y0: i64, x1: i64, y1: i64) -> StaircaseInterval {
        StaircaseInterval::rectangle(x0.into(), y0.into(), x1.into(), y1.into()).unwrap()
    }

    #[test]
    fn overlapping_squares() {
        let c = intersect_components(&rect(0, 0, 2, 2), &rect(1, 1, 3, 3));
        assert_eq!(c, vec![rect(1, 1, 2, 2)]);
    }

    #[test]
    fn disjoint_squares() {
        assert!(intersect_components(&rect(0, 0, 1, 1), &rect(2, 2, 3, 3)).is_empty());
        assert!(intersect_components(&rect(0, 0, 1, 1), &rect(0, 2, 1, 3)).is_empty());
    }

    #[test]
    fn touching_squares_meet_in_a_segment() {
        let c = intersect_components(&rect(0, 0, 1, 1), &rect(1, 0, 2, 1));
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].lower().vertices(), pts(&[(1, 1), (1, 0)]).as_slice());
        let c = intersect_components(&rect(0, 0, 1, 1), &rect(1, 1, 2, 2));
        assert_eq!(c[0].lower().vertices(), pts(&[(1, 1)]).as_slice());
    }

    #[test]
    fn two_components() {
        // An L-shape along the axes and a square nested in its corner gap
        // overlap in two separate pieces.
        let l = StaircaseInterval::new(
            pts(&[(0, 4), (0, 0), (4, 0)]),
            pts(&[(0, 4), (1, 4), (1, 1), (4, 1), (4, 0)]),
        )
        .unwrap();
        let bar = StaircaseInterval::new(
            pts(&[(0, 3), (0, 2), (2, 2), (2, 0), (3, 0)]),
            pts(&[(0, 3), (3, 3), (3, 0)]),
        )
        .unwrap();
        let c = intersect_components(&l, &bar);
        assert_eq!(c, vec![rect(0, 2, 1, 3), rect(2, 0, 3, 1)]);
    }

    #[test]
    fn l_and_anti_l() {
        let l = StaircaseInterval::new(
            pts(&[(0, 3), (0, 0), (3, 0)]),
            pts(&[(0, 3), (1, 3), (1, 1), (3, 1), (3, 0)]),
        )
        .unwrap();
        let anti = StaircaseInterval::new(
            pts(&[(0, 3), (0, 2), (2, 2), (2, 0), (3, 0)]),
            pts(&[(0, 3), (3, 3), (3, 0)]),
        )
        .unwrap();
        let c = intersect_components(&l, &anti);
        assert_eq!(c, vec![rect(0, 2, 1, 3), rect(2, 0, 3, 1)]);
    }

    #[test]
    fn validity_examples() {
        let q = rect(1, 1, 2, 2);
        assert!(!is_valid(&q, &rect(0, 0, 2, 2), &rect(1, 1, 3, 3)));
        assert!(is_valid(&q, &rect(1, 1, 3, 3), &rect(0, 0, 2, 2)));
        assert_eq!(d_triv(&q, &rect(0, 0, 2, 2), &rect(1, 1, 3, 3)), ExtendedScalar::frac(1, 2));
    }

    #[test]
    fn validity_of_shifted_copy() {
        let m = rect(0, 0, 2, 2);
        let n = m.shift(&rat(1));
        let q = intersect_components(&m, &n);
        assert_eq!(q, vec![rect(0, 0, 1, 1)]);
        assert!(is_valid(&q[0], &m, &n));
        assert!(!is_valid(&q[0], &n, &m));
    }

    #[test]
    fn vertex_on_a_longer_edge_is_not_enough() {
        // Every vertex of q lies on the right chain, but m reaches left of
        // (6, 2) where n does not.
        let m = StaircaseInterval::new(
            pts(&[(5, 8), (5, 2), (6, 2), (6, 1), (7, 1)]),
            pts(&[(5, 8), (6, 8), (6, 6), (7, 6), (7, 1)]),
        )
        .unwrap();
        let n = rect(6, 0, 7, 2);
        let q = intersect_components(&m, &n);
        assert_eq!(q, vec![rect(6, 1, 7, 2)]);
        assert!(!is_valid(&q[0], &m, &n));
        // A point of m inside a segment of n that reaches upward.
        let dot = rect(1, 0, 1, 0);
        let bar = rect(1, -1, 1, 4);
        assert!(!is_valid(&dot, &dot, &bar));
        assert!(is_valid(&dot, &dot, &rect(1, -1, 1, 0)));
    }

    #[test]
    fn trivialization_radius() {
        let m = rect(0, 0, 2, 2);
        let q = rect(0, 0, 1, 1);
        // (0, 0) is two units below the top-right corner of m.
        assert_eq!(d_triv(&q, &m, &m), ExtendedScalar::int(1));
        let quadrant = StaircaseInterval::rectangle(0.into(), 0.into(), PosInf, PosInf).unwrap();
        assert_eq!(d_triv(&q, &quadrant, &m), PosInf);
    }
}
