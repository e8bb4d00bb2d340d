//! Seeded generators of random staircase intervals and modules, for tests,
//! benchmarks and the CLI's self-check.

use rand::seq::index::sample;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::extreal::{ExtendedScalar, Point};
use crate::interval::{IntervalModule, StaircaseInterval};

pub use rand::SeedableRng;

pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `k` distinct sorted integers strictly between `a` and `b`.
fn interior_cuts(rng: &mut impl Rng, a: i64, b: i64, k: usize) -> Vec<i64> {
    let room = (b - a - 1).max(0) as usize;
    let mut cuts: Vec<i64> = sample(rng, room, k.min(room)).into_iter().map(|i| a + 1 + i as i64).collect();
    cuts.sort_unstable();
    cuts
}

/// `k` values in `[0, top]`, non-increasing.
fn falling(rng: &mut impl Rng, top: i64, k: usize) -> Vec<i64> {
    let mut v: Vec<i64> = (0..k).map(|_| rng.random_range(0..=top)).collect();
    v.sort_unstable_by(|a, b| b.cmp(a));
    v
}

/// Staircase from step positions and step heights of both boundaries.
fn from_steps(a: i64, b: i64, low_cuts: &[i64], lows: &[i64], high_cuts: &[i64], highs: &[i64]) -> Option<StaircaseInterval> {
    let p = |x: i64, y: i64| Point::new(x, y);
    let top = highs[0];
    let floor = *lows.last().expect("nonempty");
    let mut lower = vec![p(a, top), p(a, lows[0])];
    for (i, &x) in low_cuts.iter().enumerate() {
        lower.push(p(x, lows[i]));
        lower.push(p(x, lows[i + 1]));
    }
    lower.push(p(b, floor));
    let mut upper = vec![p(a, top)];
    for (i, &x) in high_cuts.iter().enumerate() {
        upper.push(p(x, highs[i]));
        upper.push(p(x, highs[i + 1]));
    }
    upper.push(p(b, highs[highs.len() - 1]));
    upper.push(p(b, floor));
    StaircaseInterval::new(lower, upper).ok()
}

/// A random staircase with integer vertices in `[0, size]^2` and at most
/// `max_steps` steps on each boundary and at most `2 * max_steps + 2`
/// vertices per chain. Points and segments come up occasionally.
pub fn random_staircase(rng: &mut impl Rng, size: i64, max_steps: usize) -> StaircaseInterval {
    loop {
        let a = rng.random_range(0..=size);
        let b = rng.random_range(a..=size);
        let k1 = rng.random_range(0..=max_steps);
        let k2 = rng.random_range(0..=max_steps);
        let low_cuts = interior_cuts(rng, a, b, k1);
        let high_cuts = interior_cuts(rng, a, b, k2);
        let lows = falling(rng, size, low_cuts.len() + 1);
        let highs = falling(rng, size, high_cuts.len() + 1);
        let cap = 2 * max_steps + 2;
        if let Some(s) = from_steps(a, b, &low_cuts, &lows, &high_cuts, &highs) {
            if s.lower().len() <= cap && s.upper().len() <= cap {
                return s;
            }
        }
    }
}

/// A module with `count` random summands.
pub fn random_module(rng: &mut impl Rng, count: usize, size: i64, max_steps: usize) -> IntervalModule {
    IntervalModule::new((0..count).map(|_| random_staircase(rng, size, max_steps)).collect())
}

/// A large staircase with exactly `steps` steps on each boundary: the lower
/// boundary is a random descending walk and the upper one is the same walk
/// lifted by `gap` with every step moved one unit to the right.
pub fn long_staircase(rng: &mut impl Rng, steps: usize, gap: i64) -> StaircaseInterval {
    let mut xs = Vec::with_capacity(steps);
    let mut x = 0i64;
    for _ in 0..steps {
        x += rng.random_range(2..=4);
        xs.push(x);
    }
    let b = x + rng.random_range(2..=4);
    let mut lows = Vec::with_capacity(steps + 1);
    let mut y = 4 * steps as i64 + gap;
    for _ in 0..=steps {
        lows.push(y);
        y -= rng.random_range(1..=3);
    }
    let high_cuts: Vec<i64> = xs.iter().map(|&c| c + 1).collect();
    let highs: Vec<i64> = lows.iter().map(|&l| l + gap).collect();
    from_steps(0, b, &xs, &lows, &high_cuts, &highs).expect("lifted walks bound a region")
}

/// Sends any coordinate equal to `0` to `-inf` and any equal to `size` to
/// `+inf`, producing unbounded variants of grid-bounded staircases.
pub fn unbounded_variant(s: &StaircaseInterval, size: i64) -> Option<StaircaseInterval> {
    let lift = |v: &ExtendedScalar| {
        if *v == ExtendedScalar::int(0) {
            ExtendedScalar::NegInf
        } else if *v == ExtendedScalar::int(size) {
            ExtendedScalar::PosInf
        } else {
            v.clone()
        }
    };
    let map = |vs: &[Point]| vs.iter().map(|p| Point::new(lift(&p.x), lift(&p.y))).collect();
    StaircaseInterval::new(map(s.lower().vertices()), map(s.upper().vertices())).ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generated_staircases_respect_bounds() {
        let mut r = rng(7);
        for _ in 0..200 {
            let s = random_staircase(&mut r, 8, 3);
            assert!(s.lower().len() <= 8 && s.upper().len() <= 8);
            for v in s.all_vertices() {
                assert!(v.x >= ExtendedScalar::int(0) && v.x <= ExtendedScalar::int(8));
                assert!(v.y >= ExtendedScalar::int(0) && v.y <= ExtendedScalar::int(8));
            }
        }
    }

    #[test]
    fn long_staircase_size() {
        let s = long_staircase(&mut rng(1), 100, 5);
        assert_eq!(s.vertex_count(), 4 * 100 + 6);
    }

    #[test]
    fn seeds_are_reproducible() {
        let a = random_staircase(&mut rng(3), 8, 3);
        let b = random_staircase(&mut rng(3), 8, 3);
        assert_eq!(a, b);
    }
}
