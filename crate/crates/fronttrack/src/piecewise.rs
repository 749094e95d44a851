//! Piecewise constant spatial functions with exact norms, total variation,
//! and cell-average projection of initial data.
//!
//! A function is stored as sorted breakpoints x_1 < ... < x_m and m + 1
//! interval values for (-inf, x_1), (x_1, x_2), ..., (x_m, inf). The
//! unbounded end intervals model open boundaries: solutions live on the whole
//! line with constant tails.

use crate::error::{FtError, Result};

/// Positions closer than this are merged by [`PiecewiseConstantFn::normalize`];
/// collisions can produce coincident breakpoints.
const POSITION_MERGE_TOL: f64 = 1e-14;

/// Adjacent values closer than this are merged by `normalize`.
const VALUE_MERGE_TOL: f64 = 1e-14;

/// 16-point Gauss-Legendre nodes on [-1, 1] (positive half; symmetric).
const GAUSS16_NODES: [f64; 8] = [
    0.095_012_509_837_637_44,
    0.281_603_550_779_258_9,
    0.458_016_777_657_227_4,
    0.617_876_244_402_643_8,
    0.755_404_408_355_003,
    0.865_631_202_387_831_8,
    0.944_575_023_073_232_6,
    0.989_400_934_991_649_9,
];

/// 16-point Gauss-Legendre weights matching [`GAUSS16_NODES`].
const GAUSS16_WEIGHTS: [f64; 8] = [
    0.189_450_610_455_068_6,
    0.182_603_415_044_923_6,
    0.169_156_519_395_002_6,
    0.149_595_988_816_576_76,
    0.124_628_971_255_534_03,
    0.095_158_511_682_492_59,
    0.062_253_523_938_647_706,
    0.027_152_459_411_754_037,
];

/// A step function: sorted breakpoints plus one value per interval,
/// including the two unbounded end intervals.
#[derive(Debug, Clone, PartialEq)]
pub struct PiecewiseConstantFn {
    breakpoints: Vec<f64>,
    values: Vec<f64>,
}

impl PiecewiseConstantFn {
    /// Builds a step function; breakpoints must be strictly increasing and
    /// `values.len() == breakpoints.len() + 1`.
    pub fn new(breakpoints: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if values.len() != breakpoints.len() + 1 {
            return Err(FtError::Config(format!(
                "{} breakpoints require {} values, got {}",
                breakpoints.len(),
                breakpoints.len() + 1,
                values.len()
            )));
        }
        if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(FtError::Config("breakpoints must be strictly increasing".into()));
        }
        if breakpoints.iter().chain(values.iter()).any(|v| !v.is_finite()) {
            return Err(FtError::Config("non-finite breakpoint or value".into()));
        }
        Ok(PiecewiseConstantFn {
            breakpoints,
            values,
        })
    }

    /// The constant function.
    pub fn constant(v: f64) -> Self {
        PiecewiseConstantFn {
            breakpoints: Vec::new(),
            values: vec![v],
        }
    }

    /// Builds from possibly tied breakpoints (e.g. fronts sampled right at a
    /// collision time) and normalizes the result.
    pub(crate) fn from_raw(breakpoints: Vec<f64>, values: Vec<f64>) -> Self {
        debug_assert_eq!(values.len(), breakpoints.len() + 1);
        let mut f = PiecewiseConstantFn {
            breakpoints,
            values,
        };
        f.normalize();
        debug_assert!(f.breakpoints.windows(2).all(|w| w[0] < w[1]));
        f
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Value of the interval containing x. At a breakpoint the right limit
    /// is returned.
    pub fn sample_at(&self, x: f64) -> f64 {
        self.values[self.breakpoints.partition_point(|&b| b <= x)]
    }

    /// Sum of |value jumps| across all breakpoints.
    pub fn total_variation(&self) -> f64 {
        self.values.windows(2).map(|w| (w[1] - w[0]).abs()).sum()
    }

    /// Smallest and largest interval value.
    pub fn value_hull(&self) -> (f64, f64) {
        let lo = self.values.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        (lo, hi)
    }

    /// Exact integral over a finite window.
    pub fn integral(&self, window: (f64, f64)) -> f64 {
        let mut total = 0.0;
        for (lo, hi) in self.partition_within(window) {
            total += self.sample_at(0.5 * (lo + hi)) * (hi - lo);
        }
        total
    }

    fn partition_within(&self, window: (f64, f64)) -> Vec<(f64, f64)> {
        let (w0, w1) = window;
        let mut cuts = vec![w0];
        for &b in &self.breakpoints {
            if b > w0 && b < w1 {
                cuts.push(b);
            }
        }
        cuts.push(w1);
        cuts.windows(2).map(|w| (w[0], w[1])).collect()
    }

    /// Merges coincident breakpoints (within 1e-14) and adjacent equal
    /// values, dropping the zero-width slivers that collisions can produce.
    pub fn normalize(&mut self) {
        if self.breakpoints.is_empty() {
            return;
        }
        let mut bps = Vec::with_capacity(self.breakpoints.len());
        let mut vals = Vec::with_capacity(self.values.len());
        vals.push(self.values[0]);
        for (i, &b) in self.breakpoints.iter().enumerate() {
            let right = self.values[i + 1];
            match bps.last() {
                Some(&last) if b - last <= POSITION_MERGE_TOL => {
                    // zero-width interval: keep the outermost states
                    *vals.last_mut().unwrap() = right;
                    // the breakpoint may have become redundant
                    if vals.len() >= 2
                        && (vals[vals.len() - 1] - vals[vals.len() - 2]).abs() <= VALUE_MERGE_TOL
                    {
                        bps.pop();
                        vals.pop();
                    }
                }
                _ => {
                    if (right - vals.last().unwrap()).abs() <= VALUE_MERGE_TOL {
                        continue;
                    }
                    bps.push(b);
                    vals.push(right);
                }
            }
        }
        self.breakpoints = bps;
        self.values = vals;
    }

    /// Exact integral of |a - b| over a finite window, computed on the merged
    /// breakpoint partition.
    pub fn l1_distance(a: &Self, b: &Self, window: (f64, f64)) -> f64 {
        let (w0, w1) = window;
        debug_assert!(w0.is_finite() && w1.is_finite() && w0 <= w1);
        let mut cuts: Vec<f64> = Vec::with_capacity(a.breakpoints.len() + b.breakpoints.len() + 2);
        cuts.push(w0);
        cuts.extend(a.breakpoints.iter().copied().filter(|&x| x > w0 && x < w1));
        cuts.extend(b.breakpoints.iter().copied().filter(|&x| x > w0 && x < w1));
        cuts.push(w1);
        cuts.sort_unstable_by(f64::total_cmp);
        let mut total = 0.0;
        for w in cuts.windows(2) {
            let len = w[1] - w[0];
            if len <= 0.0 {
                continue;
            }
            let mid = 0.5 * (w[0] + w[1]);
            total += (a.sample_at(mid) - b.sample_at(mid)).abs() * len;
        }
        total
    }

    /// One 16-point Gauss cell average per cell, in cell order.
    pub(crate) fn cell_averages(
        u0: impl Fn(f64) -> f64,
        domain: (f64, f64),
        n_cells: usize,
    ) -> Result<Vec<f64>> {
        if n_cells == 0 {
            return Err(FtError::Config("n_cells must be at least 1".into()));
        }
        let (a, b) = domain;
        if !a.is_finite() || !b.is_finite() || a >= b {
            return Err(FtError::Config(format!("bad domain [{}, {}]", a, b)));
        }
        let dx = (b - a) / n_cells as f64;
        let mut values = Vec::with_capacity(n_cells);
        for j in 0..n_cells {
            let c = a + dx * (j as f64 + 0.5);
            let h = 0.5 * dx;
            let mut avg = 0.0;
            for (x, w) in GAUSS16_NODES.iter().zip(GAUSS16_WEIGHTS.iter()) {
                avg += w * (u0(c + h * x) + u0(c - h * x));
            }
            values.push(0.5 * avg);
        }
        Ok(values)
    }

    /// Projects an integrable function onto cell averages over `n_cells`
    /// uniform cells of `domain`, extended by its end-cell values outside.
    ///
    /// Cell averages use a fixed 16-point Gauss rule, exact far beyond the
    /// 1e-12 level for the smooth data used here, so projection noise stays
    /// out of convergence tables.
    pub fn project_cell_averages(
        u0: impl Fn(f64) -> f64,
        domain: (f64, f64),
        n_cells: usize,
    ) -> Result<Self> {
        let values = Self::cell_averages(u0, domain, n_cells)?;
        let (a, b) = domain;
        let dx = (b - a) / n_cells as f64;
        let breakpoints = (1..n_cells).map(|j| a + dx * j as f64).collect();
        let mut f = PiecewiseConstantFn {
            breakpoints,
            values,
        };
        f.normalize();
        Ok(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn step(x0: f64, left: f64, right: f64) -> PiecewiseConstantFn {
        PiecewiseConstantFn::new(vec![x0], vec![left, right]).unwrap()
    }

    /// Midpoint-rule oracle for integral of |a - b|, independent of the
    /// merged-partition path.
    fn l1_quadrature(
        a: &PiecewiseConstantFn,
        b: &PiecewiseConstantFn,
        window: (f64, f64),
        points: usize,
    ) -> f64 {
        let h = (window.1 - window.0) / points as f64;
        (0..points)
            .map(|i| {
                let x = window.0 + (i as f64 + 0.5) * h;
                (a.sample_at(x) - b.sample_at(x)).abs() * h
            })
            .sum()
    }

    /// Adaptive Simpson quadrature to `tol`, used as the projection oracle.
    fn adaptive_simpson(f: &impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
        fn simpson(f: &impl Fn(f64) -> f64, a: f64, m: f64, b: f64) -> f64 {
            (b - a) / 6.0 * (f(a) + 4.0 * f(m) + f(b))
        }
        fn rec(
            f: &impl Fn(f64) -> f64,
            a: f64,
            b: f64,
            whole: f64,
            tol: f64,
            depth: u32,
        ) -> f64 {
            let m = 0.5 * (a + b);
            let left = simpson(f, a, 0.5 * (a + m), m);
            let right = simpson(f, m, 0.5 * (m + b), b);
            if depth == 0 || (left + right - whole).abs() <= 15.0 * tol {
                left + right + (left + right - whole) / 15.0
            } else {
                rec(f, a, m, left, tol / 2.0, depth - 1) + rec(f, m, b, right, tol / 2.0, depth - 1)
            }
        }
        let m = 0.5 * (a + b);
        rec(f, a, b, simpson(f, a, m, b), tol, 50)
    }

    #[test]
    fn sample_right_limit_convention() {
        let s = step(-0.5, 0.5, 2.0);
        assert_eq!(s.sample_at(-0.6), 0.5);
        assert_eq!(s.sample_at(-0.5), 2.0);
        assert_eq!(s.sample_at(3.0), 2.0);
        let c = PiecewiseConstantFn::constant(4.2);
        assert_eq!(c.sample_at(-7.0), 4.2);
        assert_eq!(c.sample_at(7.0), 4.2);
    }

    #[test]
    fn total_variation_examples() {
        assert_eq!(PiecewiseConstantFn::constant(3.0).total_variation(), 0.0);
        assert_eq!(step(-0.5, 0.5, 2.0).total_variation(), 1.5);
        let three =
            PiecewiseConstantFn::new(vec![0.0, 1.0], vec![0.0, 1.0, 0.0]).unwrap();
        assert_eq!(three.total_variation(), 2.0);
    }

    #[test]
    fn l1_distance_examples() {
        let zero = PiecewiseConstantFn::constant(0.0);
        assert_eq!(
            PiecewiseConstantFn::l1_distance(&zero, &zero, (-2.0, 2.0)),
            0.0
        );
        let ind = PiecewiseConstantFn::new(vec![0.0, 0.5], vec![0.0, 1.0, 0.0]).unwrap();
        let d = PiecewiseConstantFn::l1_distance(&zero, &ind, (-1.0, 1.0));
        assert!((d - 0.5).abs() < 1e-15);
    }

    #[test]
    fn l1_distance_matches_quadrature_oracle() {
        // fixed pseudo-random 20-piece pair on (-1, 1); breakpoints snapped
        // to the quadrature cell edges so the midpoint rule is itself exact
        let points = 1_000_000usize;
        let h = 2.0 / points as f64;
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        let mut mk = |n: usize| {
            let mut bps: Vec<f64> = (0..n)
                .map(|_| -1.0 + (2.0 * next() / h).round() * h)
                .filter(|&x| x > -1.0 && x < 1.0)
                .collect();
            bps.sort_unstable_by(f64::total_cmp);
            bps.dedup();
            let vals = (0..=bps.len()).map(|_| 4.0 * next() - 2.0).collect();
            PiecewiseConstantFn::new(bps, vals).unwrap()
        };
        let a = mk(20);
        let b = mk(20);
        let exact = PiecewiseConstantFn::l1_distance(&a, &b, (-1.0, 1.0));
        let approx = l1_quadrature(&a, &b, (-1.0, 1.0), points);
        assert!((exact - approx).abs() < 1e-6, "exact={} approx={}", exact, approx);
    }

    #[test]
    fn project_constant_and_aligned_step() {
        let c = PiecewiseConstantFn::project_cell_averages(|_| 2.0, (-1.0, 1.0), 7).unwrap();
        assert_eq!(c.values(), &[2.0]);
        // jump at a cell boundary is reproduced exactly
        let s = PiecewiseConstantFn::project_cell_averages(
            |x| if x < -0.5 { 0.5 } else { 2.0 },
            (-1.0, 1.0),
            8,
        )
        .unwrap();
        assert_eq!(s.breakpoints(), &[-0.5]);
        assert_eq!(s.values(), &[0.5, 2.0]);
    }

    #[test]
    fn project_bump_cell_average_matches_adaptive_quadrature() {
        let u0 = |x: f64| 2.0 + (-100.0 * (x + 0.75) * (x + 0.75)).exp();
        let p = PiecewiseConstantFn::project_cell_averages(u0, (-1.0, 1.0), 8).unwrap();
        let oracle = adaptive_simpson(&u0, -1.0, -0.75, 1e-14) / 0.25;
        let got = p.sample_at(-0.9);
        assert!((got - oracle).abs() < 1e-12, "got={} oracle={}", got, oracle);
    }

    #[test]
    fn projection_tv_bounded_by_datum_tv() {
        // realizes TV(u0_delta) <= TV(u0) for monotone-per-cell data
        let u0 = |x: f64| 2.0 + (-100.0 * (x + 0.75) * (x + 0.75)).exp();
        for n in [8, 16, 64, 256] {
            let p = PiecewiseConstantFn::project_cell_averages(u0, (-1.0, 1.0), n).unwrap();
            assert!(p.total_variation() <= 2.0 + 1e-12);
        }
        let s = |x: f64| if x < 0.3 { 1.0 } else { -1.0 };
        let p = PiecewiseConstantFn::project_cell_averages(s, (-1.0, 1.0), 13).unwrap();
        assert!(p.total_variation() <= 2.0 + 1e-12);
    }

    #[test]
    fn projection_error_bounded_by_tv_times_dx() {
        // step misaligned with the grid (odd cell count): the L1 projection
        // error is at most TV(u0) * dx
        let u0 = |x: f64| if x < -0.5 { 0.5 } else { 2.0 };
        for n in [7usize, 13, 31] {
            let p = PiecewiseConstantFn::project_cell_averages(u0, (-1.0, 1.0), n).unwrap();
            let dx = 2.0 / n as f64;
            let pts = 2_000_000;
            let h = 2.0 / pts as f64;
            let err: f64 = (0..pts)
                .map(|i| {
                    let x = -1.0 + (i as f64 + 0.5) * h;
                    (u0(x) - p.sample_at(x)).abs() * h
                })
                .sum();
            assert!(err <= 1.5 * dx + 1e-6, "n={} err={} bound={}", n, err, 1.5 * dx);
        }
    }

    #[test]
    fn projection_error_halves_for_lipschitz_datum() {
        let u0 = |x: f64| 1.0 - x.abs();
        let err = |n: usize| {
            let p = PiecewiseConstantFn::project_cell_averages(u0, (-1.0, 1.0), n).unwrap();
            let pts = 1_000_000;
            let h = 2.0 / pts as f64;
            (0..pts)
                .map(|i| {
                    let x = -1.0 + (i as f64 + 0.5) * h;
                    (u0(x) - p.sample_at(x)).abs() * h
                })
                .sum::<f64>()
        };
        let mut prev = err(10);
        for n in [20, 40, 80] {
            let e = err(n);
            let ratio = e / prev;
            assert!((ratio - 0.5).abs() < 0.05, "n={} ratio={}", n, ratio);
            prev = e;
        }
    }

    #[test]
    fn normalize_merges_slivers_and_equal_values() {
        let mut f = PiecewiseConstantFn {
            breakpoints: vec![0.0, 0.0, 1.0, 2.0],
            values: vec![1.0, 5.0, 2.0, 2.0, 3.0],
        };
        f.normalize();
        assert_eq!(f.breakpoints(), &[0.0, 2.0]);
        assert_eq!(f.values(), &[1.0, 2.0, 3.0]);
    }

    proptest! {
        #[test]
        fn l1_symmetry_and_triangle(
            raw_a in proptest::collection::vec((-1.0f64..1.0, -2.0f64..2.0), 1..12),
            raw_b in proptest::collection::vec((-1.0f64..1.0, -2.0f64..2.0), 1..12),
            raw_c in proptest::collection::vec((-1.0f64..1.0, -2.0f64..2.0), 1..12),
        ) {
            let mk = |raw: Vec<(f64, f64)>| {
                let mut bps: Vec<f64> = raw.iter().map(|p| p.0).collect();
                bps.sort_unstable_by(f64::total_cmp);
                bps.dedup();
                let vals: Vec<f64> = raw.iter().map(|p| p.1).take(bps.len()).chain([0.0]).collect();
                PiecewiseConstantFn::new(bps[..vals.len()-1].to_vec(), vals).unwrap()
            };
            let (a, b, c) = (mk(raw_a), mk(raw_b), mk(raw_c));
            let w = (-1.0, 1.0);
            let ab = PiecewiseConstantFn::l1_distance(&a, &b, w);
            let ba = PiecewiseConstantFn::l1_distance(&b, &a, w);
            prop_assert_eq!(ab, ba);
            let ac = PiecewiseConstantFn::l1_distance(&a, &c, w);
            let bc = PiecewiseConstantFn::l1_distance(&b, &c, w);
            prop_assert!(ac <= ab + bc + 1e-12);
        }
    }
}
