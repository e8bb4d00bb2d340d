//! Exact extended-real scalars and points of the extended plane.
//!
//! Every coordinate and every distance in the crate is an [`ExtendedScalar`]:
//! an arbitrary-precision rational or one of the two symbolic infinities.
//! Adding a finite amount to an infinity leaves it unchanged.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::interval::MonotoneChain;

/// Arbitrary-precision rational number.
pub type Rational = BigRational;

/// Builds an integer-valued [`Rational`].
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Builds the rational `num / den`. Panics if `den == 0`.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// A value of the extended real line: `-inf < every rational < +inf`.
///
/// Variant order matters: the derived `Ord` is the total order of the
/// extended line. Finite values are always held in reduced form because
/// `BigRational` normalizes on construction.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtendedScalar {
    NegInf,
    Finite(Rational),
    PosInf,
}

impl ExtendedScalar {
    pub fn zero() -> Self {
        ExtendedScalar::Finite(Rational::zero())
    }

    pub fn int(n: i64) -> Self {
        ExtendedScalar::Finite(rat(n))
    }

    pub fn frac(num: i64, den: i64) -> Self {
        ExtendedScalar::Finite(ratio(num, den))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExtendedScalar::Finite(_))
    }

    pub fn is_infinite(&self) -> bool {
        !self.is_finite()
    }

    pub fn as_finite(&self) -> Option<&Rational> {
        match self {
            ExtendedScalar::Finite(r) => Some(r),
            _ => None,
        }
    }

    /// `self + d` for a finite `d`; infinities absorb.
    pub fn add_finite(&self, d: &Rational) -> Self {
        match self {
            ExtendedScalar::Finite(r) => ExtendedScalar::Finite(r + d),
            inf => inf.clone(),
        }
    }

    /// `self - d` for a finite `d`; infinities absorb.
    pub fn sub_finite(&self, d: &Rational) -> Self {
        match self {
            ExtendedScalar::Finite(r) => ExtendedScalar::Finite(r - d),
            inf => inf.clone(),
        }
    }

    pub fn neg(&self) -> Self {
        match self {
            ExtendedScalar::NegInf => ExtendedScalar::PosInf,
            ExtendedScalar::PosInf => ExtendedScalar::NegInf,
            ExtendedScalar::Finite(r) => ExtendedScalar::Finite(-r),
        }
    }

    pub fn half(&self) -> Self {
        match self {
            ExtendedScalar::Finite(r) => ExtendedScalar::Finite(r / BigInt::from(2)),
            inf => inf.clone(),
        }
    }

    pub fn double(&self) -> Self {
        match self {
            ExtendedScalar::Finite(r) => ExtendedScalar::Finite(r * BigInt::from(2)),
            inf => inf.clone(),
        }
    }

    /// Coordinate difference `|a - b|` on the extended line.
    ///
    /// Equal infinities differ by 0; an infinity against anything else
    /// differs by `+inf`.
    pub fn abs_diff(a: &Self, b: &Self) -> Self {
        use ExtendedScalar::*;
        match (a, b) {
            (Finite(x), Finite(y)) => Finite((x - y).abs()),
            (PosInf, PosInf) | (NegInf, NegInf) => Self::zero(),
            _ => PosInf,
        }
    }

    /// Clamps `self` into `[lo, hi]`; requires `lo <= hi`.
    /// Nearest float, for display only.
    pub fn approx(&self) -> f64 {
        match self {
            ExtendedScalar::NegInf => f64::NEG_INFINITY,
            ExtendedScalar::Finite(r) => r.to_f64().unwrap_or(f64::NAN),
            ExtendedScalar::PosInf => f64::INFINITY,
        }
    }

    pub fn clamp_to(&self, lo: &Self, hi: &Self) -> Self {
        debug_assert!(lo <= hi);
        if self < lo {
            lo.clone()
        } else if self > hi {
            hi.clone()
        } else {
            self.clone()
        }
    }
}

/// `a + d` with `+-inf` absorbing; `d` must be finite.
pub fn ext_add(a: &ExtendedScalar, d: &Rational) -> ExtendedScalar {
    a.add_finite(d)
}

impl From<Rational> for ExtendedScalar {
    fn from(r: Rational) -> Self {
        ExtendedScalar::Finite(r)
    }
}

impl From<i64> for ExtendedScalar {
    fn from(n: i64) -> Self {
        ExtendedScalar::int(n)
    }
}

impl PartialEq<Rational> for ExtendedScalar {
    fn eq(&self, other: &Rational) -> bool {
        self.as_finite() == Some(other)
    }
}

impl PartialOrd<Rational> for ExtendedScalar {
    fn partial_cmp(&self, other: &Rational) -> Option<Ordering> {
        Some(match self {
            ExtendedScalar::NegInf => Ordering::Less,
            ExtendedScalar::PosInf => Ordering::Greater,
            ExtendedScalar::Finite(r) => r.cmp(other),
        })
    }
}

impl fmt::Display for ExtendedScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedScalar::NegInf => f.write_str("-inf"),
            ExtendedScalar::PosInf => f.write_str("inf"),
            ExtendedScalar::Finite(r) => write!(f, "{r}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid scalar {text:?}: {reason}")]
pub struct ScalarParseError {
    pub text: String,
    pub reason: &'static str,
}

/// Parses `"inf"`, `"-inf"`, integers, fractions `"p/q"` and plain decimals
/// such as `"-1.25"`. Decimals are converted exactly.
impl FromStr for ExtendedScalar {
    type Err = ScalarParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |reason| ScalarParseError {
            text: s.to_string(),
            reason,
        };
        let t = s.trim();
        match t {
            "inf" | "+inf" | "infinity" | "+infinity" => return Ok(ExtendedScalar::PosInf),
            "-inf" | "-infinity" => return Ok(ExtendedScalar::NegInf),
            "" => return Err(err("empty")),
            _ => {}
        }
        if let Some((num, den)) = t.split_once('/') {
            let num: BigInt = num.trim().parse().map_err(|_| err("bad numerator"))?;
            let den: BigInt = den.trim().parse().map_err(|_| err("bad denominator"))?;
            if den.is_zero() {
                return Err(err("zero denominator"));
            }
            return Ok(ExtendedScalar::Finite(Rational::new(num, den)));
        }
        if let Some((int_part, frac_part)) = t.split_once('.') {
            let negative = int_part.starts_with('-');
            let digits_ok = |d: &str| d.chars().all(|c| c.is_ascii_digit());
            let int_digits = int_part.trim_start_matches(['-', '+']);
            if !digits_ok(int_digits) || !digits_ok(frac_part) || (int_digits.is_empty() && frac_part.is_empty()) {
                return Err(err("bad decimal"));
            }
            let whole: BigInt = if int_digits.is_empty() {
                BigInt::zero()
            } else {
                int_digits.parse().map_err(|_| err("bad decimal"))?
            };
            let scale = BigInt::from(10).pow(frac_part.len() as u32);
            let frac: BigInt = if frac_part.is_empty() {
                BigInt::zero()
            } else {
                frac_part.parse().map_err(|_| err("bad decimal"))?
            };
            let mut value = Rational::new(whole * &scale + frac, scale);
            if negative {
                value = -value;
            }
            return Ok(ExtendedScalar::Finite(value));
        }
        let n: BigInt = t.parse().map_err(|_| err("not a number"))?;
        Ok(ExtendedScalar::Finite(Rational::from_integer(n)))
    }
}

/// A point of the extended plane.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Point {
    pub x: ExtendedScalar,
    pub y: ExtendedScalar,
}

impl Point {
    pub fn new(x: impl Into<ExtendedScalar>, y: impl Into<ExtendedScalar>) -> Self {
        Point { x: x.into(), y: y.into() }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    /// Componentwise order of the plane.
    pub fn le(&self, other: &Point) -> bool {
        self.x <= other.x && self.y <= other.y
    }

    /// `self + d * (1, 1)`.
    pub fn shifted(&self, d: &Rational) -> Point {
        Point {
            x: self.x.add_finite(d),
            y: self.y.add_finite(d),
        }
    }

    /// `y - x`, the intercept of the diagonal through a finite point.
    pub(crate) fn intercept(&self) -> Option<Rational> {
        match (&self.x, &self.y) {
            (ExtendedScalar::Finite(x), ExtendedScalar::Finite(y)) => Some(y - x),
            _ => None,
        }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Max-norm distance between two points of the extended plane.
pub fn dist_inf(p: &Point, q: &Point) -> ExtendedScalar {
    let dx = ExtendedScalar::abs_diff(&p.x, &q.x);
    let dy = ExtendedScalar::abs_diff(&p.y, &q.y);
    dx.max(dy)
}

/// The slope-one line `{anchor + a * (1, 1) : a real}`.
///
/// With one infinite anchor coordinate the line runs along that side of the
/// boundary at infinity; with two it collapses to the anchor itself.
#[derive(Clone, Debug)]
pub struct DiagonalLine {
    pub anchor: Point,
}

impl DiagonalLine {
    pub fn through(anchor: Point) -> Self {
        DiagonalLine { anchor }
    }

    /// Position of `p` on the line as a signed offset from the anchor, or
    /// `None` if `p` is not on the line.
    pub fn offset_of(&self, p: &Point) -> Option<Rational> {
        use ExtendedScalar::Finite;
        let a = &self.anchor;
        match (&a.x, &a.y, &p.x, &p.y) {
            (Finite(ax), Finite(ay), Finite(px), Finite(py)) => {
                let d = px - ax;
                (py - ay == d).then_some(d)
            }
            (Finite(ax), ay, Finite(px), py) if ay.is_infinite() && ay == py => Some(px - ax),
            (ax, Finite(ay), px, Finite(py)) if ax.is_infinite() && ax == px => Some(py - ay),
            _ if a.x.is_infinite() && a.y.is_infinite() => (a == p).then(Rational::zero),
            _ => None,
        }
    }
}

impl PartialEq for DiagonalLine {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = (&self.anchor, &other.anchor);
        match (a.is_finite(), b.is_finite()) {
            (true, true) => a.intercept() == b.intercept(),
            (false, false) => match (a.x.is_infinite(), a.y.is_infinite()) {
                (true, true) => a == b,
                (true, false) => a.x == b.x && b.y.is_finite(),
                (false, true) => a.y == b.y && b.x.is_finite(),
                (false, false) => unreachable!(),
            },
            _ => false,
        }
    }
}

impl Eq for DiagonalLine {}

/// Where a diagonal meets a chain: the meeting point, its signed offset
/// along the diagonal, and the max-norm distance from the anchor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Projection {
    pub point: Point,
    pub offset: Rational,
    pub dist: ExtendedScalar,
}

impl Projection {
    fn new(point: Point, offset: Rational) -> Self {
        let dist = ExtendedScalar::Finite(offset.abs());
        Projection { point, offset, dist }
    }
}

/// Projects `x` along its diagonal onto `chain`.
///
/// For a finite anchor the diagonal crosses a monotone chain at most once.
/// When the anchor sits on the boundary at infinity the diagonal can overlap
/// a whole edge at infinity; the nearest point of that overlap is returned.
/// `None` means the diagonal misses the chain, i.e. distance `+inf`.
pub fn diag_project_chain(x: &Point, chain: &MonotoneChain) -> Option<Projection> {
    use ExtendedScalar::Finite;
    match (&x.x, &x.y) {
        (Finite(a), Finite(b)) => {
            let c = b - a;
            let hit = chain.diagonal_hit(&c)?;
            let offset = hit.x.as_finite().expect("diagonal hits are finite") - a;
            Some(Projection::new(hit, offset))
        }
        (Finite(a), y_inf) => {
            let (lo, hi) = chain.row_span(y_inf)?;
            let b = nearest_finite(a, lo, hi)?;
            let offset = &b - a;
            Some(Projection::new(Point::new(b, y_inf.clone()), offset))
        }
        (x_inf, Finite(b)) => {
            let (lo, hi) = chain.column_span(x_inf)?;
            let c = nearest_finite(b, lo, hi)?;
            let offset = &c - b;
            Some(Projection::new(Point::new(x_inf.clone(), c), offset))
        }
        _ => chain
            .contains_point(x)
            .then(|| Projection::new(x.clone(), Rational::zero())),
    }
}

/// `dl(x, chain)`: `+inf` when the diagonal misses.
pub fn diag_dist(x: &Point, chain: &MonotoneChain) -> ExtendedScalar {
    diag_project_chain(x, chain).map_or(ExtendedScalar::PosInf, |p| p.dist)
}

/// Nearest finite value to `a` inside `[lo, hi]`, if that range holds any
/// finite value.
fn nearest_finite(a: &Rational, lo: &ExtendedScalar, hi: &ExtendedScalar) -> Option<Rational> {
    if lo > hi || *lo == ExtendedScalar::PosInf || *hi == ExtendedScalar::NegInf {
        return None;
    }
    let c = ExtendedScalar::Finite(a.clone()).clamp_to(lo, hi);
    c.as_finite().cloned()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::StaircaseInterval;
    use ExtendedScalar::{NegInf, PosInf};

    fn square(a: i64, b: i64) -> StaircaseInterval {
        StaircaseInterval::rectangle(a.into(), a.into(), b.into(), b.into()).unwrap()
    }

    #[test]
    fn add_absorbs_infinity() {
        assert_eq!(ext_add(&PosInf, &rat(5)), PosInf);
        assert_eq!(ext_add(&ExtendedScalar::int(3), &rat(2)), ExtendedScalar::int(5));
        assert_eq!(ext_add(&NegInf, &rat(-7)), NegInf);
    }

    #[test]
    fn order_is_total() {
        let mut v = vec![PosInf, ExtendedScalar::int(3), NegInf, ExtendedScalar::frac(-1, 2)];
        v.sort();
        assert_eq!(v, vec![NegInf, ExtendedScalar::frac(-1, 2), ExtendedScalar::int(3), PosInf]);
    }

    #[test]
    fn max_norm_distance() {
        assert_eq!(dist_inf(&Point::new(0, 0), &Point::new(2, 1)), ExtendedScalar::int(2));
        assert_eq!(dist_inf(&Point::new(3, PosInf), &Point::new(5, PosInf)), ExtendedScalar::int(2));
        assert_eq!(dist_inf(&Point::new(0, 0), &Point::new(0, PosInf)), PosInf);
        assert_eq!(dist_inf(&Point::new(NegInf, 0), &Point::new(PosInf, 0)), PosInf);
    }

    #[test]
    fn parse_and_print() {
        assert_eq!("1/3".parse::<ExtendedScalar>().unwrap(), ExtendedScalar::frac(1, 3));
        assert_eq!("-1.25".parse::<ExtendedScalar>().unwrap(), ExtendedScalar::frac(-5, 4));
        assert_eq!(".5".parse::<ExtendedScalar>().unwrap(), ExtendedScalar::frac(1, 2));
        assert_eq!("4/2".parse::<ExtendedScalar>().unwrap(), ExtendedScalar::int(2));
        assert_eq!("inf".parse::<ExtendedScalar>().unwrap(), PosInf);
        assert_eq!("-inf".parse::<ExtendedScalar>().unwrap(), NegInf);
        assert!("1/0".parse::<ExtendedScalar>().is_err());
        assert!("abc".parse::<ExtendedScalar>().is_err());
        assert!("1.2.3".parse::<ExtendedScalar>().is_err());
        assert_eq!(ExtendedScalar::frac(6, -4).to_string(), "-3/2");
        assert_eq!(ExtendedScalar::int(7).to_string(), "7");
        assert_eq!(PosInf.to_string(), "inf");
    }

    #[test]
    fn projection_hits_corner() {
        let sq = square(0, 2);
        let p = diag_project_chain(&Point::new(3, 3), sq.upper()).unwrap();
        assert_eq!(p.point, Point::new(2, 2));
        assert_eq!(p.dist, ExtendedScalar::int(1));
    }

    #[test]
    fn projection_onto_lower_edge() {
        let sq = square(0, 2);
        let p = diag_project_chain(&Point::new(0, -1), sq.lower()).unwrap();
        assert_eq!(p.point, Point::new(1, 0));
        assert_eq!(p.dist, ExtendedScalar::int(1));
        assert_eq!(p.offset, rat(1));
    }

    #[test]
    fn projection_misses() {
        let sq = square(0, 2);
        assert!(diag_project_chain(&Point::new(5, 0), sq.lower()).is_none());
        assert_eq!(diag_dist(&Point::new(5, 0), sq.lower()), PosInf);
    }

    #[test]
    fn projection_along_boundary_at_infinity() {
        // [0, 4] x [0, +inf]: the top edge lies at infinity.
        let strip = StaircaseInterval::rectangle(0.into(), 0.into(), 4.into(), PosInf).unwrap();
        let p = diag_project_chain(&Point::new(7, PosInf), strip.upper()).unwrap();
        assert_eq!(p.point, Point::new(4, PosInf));
        assert_eq!(p.dist, ExtendedScalar::int(3));
        let p = diag_project_chain(&Point::new(2, PosInf), strip.upper()).unwrap();
        assert_eq!(p.dist, ExtendedScalar::zero());
        // The corner at infinity is its own diagonal.
        let corner = Point::new(PosInf, PosInf);
        assert!(diag_project_chain(&corner, strip.upper()).is_none());
        let plane = StaircaseInterval::rectangle(NegInf, NegInf, PosInf, PosInf).unwrap();
        assert_eq!(diag_dist(&corner, plane.upper()), ExtendedScalar::zero());
    }

    #[test]
    fn diagonal_line_equality() {
        let a = DiagonalLine::through(Point::new(0, 1));
        let b = DiagonalLine::through(Point::new(5, 6));
        let c = DiagonalLine::through(Point::new(5, 5));
        assert_eq!(a, b);
        assert_ne!(a, c);
        let top1 = DiagonalLine::through(Point::new(0, PosInf));
        let top2 = DiagonalLine::through(Point::new(9, PosInf));
        assert_eq!(top1, top2);
        assert_ne!(top1, DiagonalLine::through(Point::new(0, NegInf)));
        assert_eq!(a.offset_of(&Point::new(3, 4)), Some(rat(3)));
        assert_eq!(a.offset_of(&Point::new(3, 3)), None);
        assert_eq!(top1.offset_of(&Point::new(-2, PosInf)), Some(rat(-2)));
    }
}
