//! Dimension functions on finite n-dimensional grids and the dimension
//! distance between them.
//!
//! Grid functions take integer values on `{0..k_1-1} x ... x {0..k_n-1}`.
//! Below the grid they are 0. The cumulative positive and negative parts
//! `f_sum_plus` and `f_sum_minus` are continued above the grid with their
//! last value along each axis, so shifted lookups are always defined.

use ndarray::{ArrayD, Axis, Dimension, IxDyn, Slice};
use thiserror::Error;

use crate::extreal::{ExtendedScalar, Point, Rational};
use crate::interval::IntervalModule;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DimError {
    #[error("grid shapes differ: {left:?} vs {right:?}")]
    ShapeMismatch { left: Vec<usize>, right: Vec<usize> },
    #[error("{values} values do not fill a grid of shape {shape:?}")]
    BadLength { shape: Vec<usize>, values: usize },
    #[error("interval modules live on 2-dimensional grids, got {0} axes")]
    NotPlanar(usize),
}

/// An integer-valued function on a finite grid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridFunction {
    pub values: ArrayD<i64>,
}

/// The differential of a grid function; same representation.
pub type GridDifferential = GridFunction;

impl GridFunction {
    pub fn new(shape: &[usize], values: Vec<i64>) -> Result<Self, DimError> {
        let n = values.len();
        ArrayD::from_shape_vec(IxDyn(shape), values)
            .map(|values| GridFunction { values })
            .map_err(|_| DimError::BadLength { shape: shape.to_vec(), values: n })
    }

    pub fn zeros(shape: &[usize]) -> Self {
        GridFunction { values: ArrayD::zeros(IxDyn(shape)) }
    }

    pub fn shape(&self) -> &[usize] {
        self.values.shape()
    }

    /// Values in row-major order.
    pub fn to_vec(&self) -> Vec<i64> {
        self.values.iter().copied().collect()
    }

    /// Value at a possibly out-of-grid index: 0 if any coordinate is
    /// negative, otherwise clamped to the last index on each axis.
    fn at_extended(&self, idx: &[i64]) -> i64 {
        if idx.iter().any(|&i| i < 0) {
            return 0;
        }
        let clamped: Vec<usize> = idx
            .iter()
            .zip(self.shape())
            .map(|(&i, &k)| (i as usize).min(k - 1))
            .collect();
        self.values[IxDyn(&clamped)]
    }
}

/// Inclusion-exclusion over the unit cube below each point, with zeros below
/// the grid. Computed as a backward difference along each axis in turn.
pub fn differential(f: &GridFunction) -> GridDifferential {
    let mut d = f.values.clone();
    for ax in 0..d.ndim() {
        let prev = d.clone();
        let mut tail = d.slice_axis_mut(Axis(ax), Slice::from(1..));
        tail -= &prev.slice_axis(Axis(ax), Slice::from(..-1));
    }
    GridFunction { values: d }
}

/// Sum over the lower set of each point; inverse of [`differential`].
pub fn accumulate(d: &GridDifferential) -> GridFunction {
    let mut f = d.values.clone();
    for ax in 0..f.ndim() {
        f.accumulate_axis_inplace(Axis(ax), |&prev, cur| *cur += prev);
    }
    GridFunction { values: f }
}

/// Cumulative positive and negative parts of the differential.
pub fn split_sums(f: &GridFunction) -> (GridFunction, GridFunction) {
    let d = differential(f);
    let plus = GridFunction { values: d.values.mapv(|v| v.max(0)) };
    let minus = GridFunction { values: d.values.mapv(|v| v.min(0)) };
    (accumulate(&plus), accumulate(&minus))
}

/// `out(x) = early(x + delta) + late(x - delta)` on every grid point.
fn shifted_sum(early: &GridFunction, late: &GridFunction, delta: usize) -> GridFunction {
    let values = ArrayD::from_shape_fn(IxDyn(early.shape()), |ix| {
        let x: Vec<i64> = ix.slice().iter().map(|&i| i as i64).collect();
        shifted_at(early, late, &x, delta as i64)
    });
    GridFunction { values }
}

/// Births moved `delta` earlier and deaths `delta` later.
pub fn extend(f: &GridFunction, delta: usize) -> GridFunction {
    let (plus, minus) = split_sums(f);
    shifted_sum(&plus, &minus, delta)
}

/// Births moved `delta` later and deaths `delta` earlier.
pub fn shrink(f: &GridFunction, delta: usize) -> GridFunction {
    let (plus, minus) = split_sums(f);
    shifted_sum(&minus, &plus, delta)
}

/// `early(x + delta) + late(x - delta)` at a possibly out-of-grid index.
fn shifted_at(early: &GridFunction, late: &GridFunction, x: &[i64], delta: i64) -> i64 {
    let up: Vec<i64> = x.iter().map(|&i| i + delta).collect();
    let down: Vec<i64> = x.iter().map(|&i| i - delta).collect();
    early.at_extended(&up) + late.at_extended(&down)
}

/// Whether `holds` is true on the grid padded by `delta` above. Past the
/// padding every lookup is clamped, so the answer is the same as on the
/// whole continued domain. Below the grid both sides of the comparisons
/// used here hold trivially, since `f_sum_plus >= 0 >= f_sum_minus`.
fn on_padded_grid(shape: &[usize], delta: usize, holds: impl Fn(&[i64]) -> bool) -> bool {
    let padded: Vec<usize> = shape.iter().map(|&k| k + delta).collect();
    ndarray::indices(IxDyn(&padded)).into_iter().all(|ix| {
        let x: Vec<i64> = ix.slice().iter().map(|&i| i as i64).collect();
        holds(&x)
    })
}

/// Distances in grid units; `None` means no shift up to the grid size works.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DimensionDistance {
    pub d_minus: Option<usize>,
    pub d_plus: Option<usize>,
    pub d_zero: Option<usize>,
}

/// Whether `f` and `g` are within `delta` by shrinking.
pub fn within_shrink(f: &GridFunction, g: &GridFunction, delta: usize) -> bool {
    let ((fp, fm), (gp, gm), d) = (split_sums(f), split_sums(g), delta as i64);
    on_padded_grid(f.shape(), delta, |x| {
        shifted_at(&gm, &gp, x, d) <= f.at_extended(x) && shifted_at(&fm, &fp, x, d) <= g.at_extended(x)
    })
}

/// Whether `f` and `g` are within `delta` by extension.
pub fn within_extend(f: &GridFunction, g: &GridFunction, delta: usize) -> bool {
    let ((fp, fm), (gp, gm), d) = (split_sums(f), split_sums(g), delta as i64);
    on_padded_grid(f.shape(), delta, |x| {
        f.at_extended(x) <= shifted_at(&gp, &gm, x, d) && g.at_extended(x) <= shifted_at(&fp, &fm, x, d)
    })
}

/// Least `delta` in `0..=k` satisfying a monotone predicate.
fn least(k: usize, ok: impl Fn(usize) -> bool) -> Option<usize> {
    if !ok(k) {
        return None;
    }
    let (mut lo, mut hi) = (0, k);
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if ok(mid) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Some(lo)
}

pub fn dimension_distance(f: &GridFunction, g: &GridFunction) -> Result<DimensionDistance, DimError> {
    if f.shape() != g.shape() {
        return Err(DimError::ShapeMismatch { left: f.shape().to_vec(), right: g.shape().to_vec() });
    }
    let k = f.shape().iter().copied().max().unwrap_or(0);
    let d_minus = least(k, |d| within_shrink(f, g, d));
    let d_plus = least(k, |d| within_extend(f, g, d));
    let d_zero = match (d_minus, d_plus) {
        (Some(a), Some(b)) => Some(a.min(b)),
        (a, b) => a.or(b),
    };
    Ok(DimensionDistance { d_minus, d_plus, d_zero })
}

/// Samples the pointwise dimension of `ms` at `origin + spacing * index`.
pub fn dimension_function(
    ms: &IntervalModule,
    shape: &[usize],
    origin: &[Rational],
    spacing: &Rational,
) -> Result<GridFunction, DimError> {
    if shape.len() != 2 || origin.len() != 2 {
        return Err(DimError::NotPlanar(shape.len().max(origin.len())));
    }
    let coord = |axis: usize, i: usize| ExtendedScalar::Finite(&origin[axis] + spacing * Rational::from_integer(i.into()));
    let values = ArrayD::from_shape_fn(IxDyn(shape), |ix| {
        let p = Point::new(coord(0, ix[0]), coord(1, ix[1]));
        ms.dim_at(&p) as i64
    });
    Ok(GridFunction { values })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extreal::rat;
    use crate::interval::StaircaseInterval;

    fn line(v: &[i64]) -> GridFunction {
        GridFunction::new(&[v.len()], v.to_vec()).unwrap()
    }

    #[test]
    fn one_dimensional_differential() {
        let f = line(&[1, 1, 1, 1, 0, 0]);
        assert_eq!(differential(&f).to_vec(), vec![1, 0, 0, 0, -1, 0]);
        assert_eq!(accumulate(&differential(&f)), f);
        assert_eq!(differential(&GridFunction::zeros(&[3, 3])), GridFunction::zeros(&[3, 3]));
    }

    #[test]
    fn rectangle_differential() {
        let mut f = GridFunction::zeros(&[5, 5]);
        for i in 1..=2 {
            for j in 1..=2 {
                f.values[IxDyn(&[i, j])] = 1;
            }
        }
        let d = differential(&f);
        for ((i, j), v) in (0..5).flat_map(|i| (0..5).map(move |j| (i, j))).zip(d.to_vec()) {
            let want = match (i, j) {
                (1, 1) | (3, 3) => 1,
                (1, 3) | (3, 1) => -1,
                _ => 0,
            };
            assert_eq!(v, want, "at ({i}, {j})");
        }
        assert_eq!(accumulate(&d), f);
    }

    #[test]
    fn extend_and_shrink_by_hand() {
        let f = line(&[1, 1, 1, 1, 0, 0]);
        let (plus, minus) = split_sums(&f);
        assert_eq!(plus.to_vec(), vec![1, 1, 1, 1, 1, 1]);
        assert_eq!(minus.to_vec(), vec![0, 0, 0, 0, -1, -1]);
        assert_eq!(shrink(&f, 1).to_vec(), vec![0, 1, 1, 0, 0, 0]);
        assert_eq!(extend(&f, 1).to_vec(), vec![1, 1, 1, 1, 1, 0]);
        assert_eq!(extend(&f, 0), f);
        assert_eq!(shrink(&f, 0), f);
    }

    #[test]
    fn distances() {
        let f = line(&[1, 1, 1, 1, 0, 0]);
        let g = line(&[0, 1, 1, 0, 0, 0]);
        let d = dimension_distance(&f, &g).unwrap();
        assert_eq!(d.d_minus, Some(1));
        assert_eq!(dimension_distance(&f, &f).unwrap().d_zero, Some(0));
        assert!(matches!(dimension_distance(&f, &line(&[1])), Err(DimError::ShapeMismatch { .. })));
    }

    #[test]
    fn sampled_dimension() {
        let sq = StaircaseInterval::rectangle(0.into(), 0.into(), 2.into(), 2.into()).unwrap();
        let f = dimension_function(&IntervalModule::new(vec![sq.clone(), sq]), &[5, 5], &[rat(0), rat(0)], &rat(1)).unwrap();
        assert_eq!(f.values.iter().sum::<i64>(), 18);
        assert_eq!(f.values[IxDyn(&[2, 2])], 2);
        assert_eq!(f.values[IxDyn(&[3, 2])], 0);
        let z = dimension_function(&IntervalModule::default(), &[3, 3], &[rat(0), rat(0)], &rat(1)).unwrap();
        assert_eq!(z, GridFunction::zeros(&[3, 3]));
    }
}
