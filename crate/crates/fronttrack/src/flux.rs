//! Strictly monotone fluxes, their piecewise linear interpolants, inverses,
//! and the adapted-constant chain across spatial interfaces.
//!
//! The solver works with fluxes f that are strictly increasing in the state,
//! f'(u) >= alpha > 0 on a working range, and satisfy f(0) = 0. A spatially
//! varying flux is a sorted list of interface positions xi_1 < ... < xi_N
//! with one state flux per subdomain D_i = (xi_i, xi_{i+1}).
//!
//! The front tracking method replaces each analytic flux by the piecewise
//! linear interpolant through the grid points (j*delta, f(j*delta)), j in Z,
//! restricted to the working range.

use std::fmt;
use std::sync::Arc;

use crate::error::{FtError, Result};

/// Slack used when checking whether a chained or inverted state still lies
/// in a working range; absorbs floating point rounding at range endpoints.
const RANGE_SLACK: f64 = 1e-9;

/// Number of samples used by the monotonicity check and by
/// [`lipschitz_distance`].
const SLOPE_SAMPLES: usize = 100_000;

type Closure = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// The analytic form of a flux; `Custom` carries user closures with an
/// analytic derivative.
#[derive(Clone)]
enum FluxKind {
    Identity,
    Linear { a: f64 },
    Burgers,
    Power { exponent: f64, scale: f64 },
    Custom { eval: Closure, deriv: Closure },
}

/// A strictly monotone flux on a working state range.
///
/// `alpha` is the sampled infimum of the derivative on the working range; it
/// is nonnegative by construction and strictly positive whenever the range
/// stays away from degenerate points of the flux.
#[derive(Clone)]
pub struct MonotoneFlux {
    kind: FluxKind,
    working_range: (f64, f64),
    alpha: f64,
    name: String,
}

impl fmt::Debug for MonotoneFlux {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MonotoneFlux")
            .field("name", &self.name)
            .field("working_range", &self.working_range)
            .field("alpha", &self.alpha)
            .finish()
    }
}

impl MonotoneFlux {
    fn build(kind: FluxKind, range: (f64, f64), name: String) -> Result<Self> {
        if !range.0.is_finite() || !range.1.is_finite() || range.0 >= range.1 {
            return Err(FtError::InvalidFlux {
                name,
                reason: format!("empty working range [{}, {}]", range.0, range.1),
            });
        }
        let mut flux = MonotoneFlux {
            kind,
            working_range: range,
            alpha: 0.0,
            name,
        };
        flux.alpha = flux.validate()?;
        Ok(flux)
    }

    /// Samples the flux on the working range and checks strict monotonicity,
    /// a nonnegative derivative, and f(0) = 0 when 0 is in range. Returns the
    /// sampled infimum of the derivative.
    fn validate(&self) -> Result<f64> {
        let (lo, hi) = self.working_range;
        let n = 1000;
        let mut alpha = f64::INFINITY;
        let mut prev = self.eval(lo);
        for i in 0..=n {
            let u = lo + (hi - lo) * i as f64 / n as f64;
            let d = self.deriv(u);
            if d < -1e-12 {
                return Err(FtError::InvalidFlux {
                    name: self.name.clone(),
                    reason: format!("derivative {} < 0 at u = {}", d, u),
                });
            }
            alpha = alpha.min(d);
            if i > 0 {
                let v = self.eval(u);
                if v <= prev {
                    return Err(FtError::InvalidFlux {
                        name: self.name.clone(),
                        reason: format!("not strictly increasing near u = {}", u),
                    });
                }
                prev = v;
            }
        }
        if lo <= 0.0 && 0.0 <= hi && self.eval(0.0).abs() > 1e-12 {
            return Err(FtError::InvalidFlux {
                name: self.name.clone(),
                reason: format!("f(0) = {} != 0", self.eval(0.0)),
            });
        }
        Ok(alpha.max(0.0))
    }

    /// The identity flux f(u) = u (pure transport).
    pub fn identity(range: (f64, f64)) -> Result<Self> {
        Self::build(FluxKind::Identity, range, "identity".into())
    }

    /// Scaled linear flux f(u) = a u with a > 0.
    pub fn linear(a: f64, range: (f64, f64)) -> Result<Self> {
        Self::build(FluxKind::Linear { a }, range, format!("linear:{}", a))
    }

    /// Burgers flux f(u) = u^2 / 2, monotone on nonnegative states.
    pub fn burgers(range: (f64, f64)) -> Result<Self> {
        Self::build(FluxKind::Burgers, range, "burgers".into())
    }

    /// Power law flux f(u) = scale * u^exponent on nonnegative states.
    pub fn power(exponent: f64, scale: f64, range: (f64, f64)) -> Result<Self> {
        Self::build(
            FluxKind::Power { exponent, scale },
            range,
            format!("power:{}:{}", exponent, scale),
        )
    }

    /// Flux from user closures; `deriv` must be the analytic derivative of
    /// `eval`. The inverse falls back to safeguarded Newton iteration.
    pub fn custom(
        name: impl Into<String>,
        eval: impl Fn(f64) -> f64 + Send + Sync + 'static,
        deriv: impl Fn(f64) -> f64 + Send + Sync + 'static,
        range: (f64, f64),
    ) -> Result<Self> {
        Self::build(
            FluxKind::Custom {
                eval: Arc::new(eval),
                deriv: Arc::new(deriv),
            },
            range,
            name.into(),
        )
    }

    /// Parses a catalog name: `identity`, `linear:<a>`, `burgers`,
    /// `power:<m>` or `power:<m>:<scale>`.
    pub fn from_name(name: &str, range: (f64, f64)) -> Result<Self> {
        let parts: Vec<&str> = name.split(':').collect();
        let bad = |msg: &str| FtError::Config(format!("flux `{}`: {}", name, msg));
        match parts[0] {
            "identity" => Self::identity(range),
            "burgers" => Self::burgers(range),
            "linear" => {
                let a = parts
                    .get(1)
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| bad("expected linear:<a>"))?;
                Self::linear(a, range)
            }
            "power" => {
                let m = parts
                    .get(1)
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| bad("expected power:<m>[:<scale>]"))?;
                let scale = match parts.get(2) {
                    Some(s) => s.parse().map_err(|_| bad("bad scale"))?,
                    None => 1.0,
                };
                Self::power(m, scale, range)
            }
            _ => Err(bad("unknown flux name")),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn working_range(&self) -> (f64, f64) {
        self.working_range
    }

    /// Sampled infimum of the derivative on the working range.
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Same flux restricted to a different working range.
    pub fn with_range(&self, range: (f64, f64)) -> Result<Self> {
        Self::build(self.kind.clone(), range, self.name.clone())
    }

    pub fn eval(&self, u: f64) -> f64 {
        match &self.kind {
            FluxKind::Identity => u,
            FluxKind::Linear { a } => a * u,
            FluxKind::Burgers => 0.5 * u * u,
            FluxKind::Power { exponent, scale } => scale * u.powf(*exponent),
            FluxKind::Custom { eval, .. } => eval(u),
        }
    }

    pub fn deriv(&self, u: f64) -> f64 {
        match &self.kind {
            FluxKind::Identity => 1.0,
            FluxKind::Linear { a } => *a,
            FluxKind::Burgers => u,
            FluxKind::Power { exponent, scale } => scale * exponent * u.powf(exponent - 1.0),
            FluxKind::Custom { deriv, .. } => deriv(u),
        }
    }

    /// Inverse of the flux: the unique u with f(u) = p.
    ///
    /// Catalog fluxes invert in closed form; custom fluxes use safeguarded
    /// Newton iteration with bisection fallback to a 1e-13 state tolerance.
    /// Errors if the preimage leaves the working range.
    pub fn inverse(&self, p: f64) -> Result<f64> {
        let u = match &self.kind {
            FluxKind::Identity => p,
            FluxKind::Linear { a } => p / a,
            FluxKind::Burgers => {
                if p < 0.0 {
                    return Err(FtError::OutOfRange {
                        what: "flux value",
                        value: p,
                        lo: 0.0,
                        hi: f64::INFINITY,
                    });
                }
                (2.0 * p).sqrt()
            }
            FluxKind::Power { exponent, scale } => (p / scale).powf(1.0 / exponent),
            FluxKind::Custom { .. } => self.newton_inverse(p)?,
        };
        let (lo, hi) = self.working_range;
        if u < lo - RANGE_SLACK || u > hi + RANGE_SLACK {
            return Err(FtError::OutOfRange {
                what: "inverted state",
                value: u,
                lo,
                hi,
            });
        }
        Ok(u)
    }

    /// Inverse without the working-range membership check; used when ranges
    /// are still being derived. For custom fluxes the Newton bracket grows
    /// geometrically from the working range until it encloses `p`.
    pub(crate) fn inverse_unchecked(&self, p: f64) -> Result<f64> {
        match &self.kind {
            FluxKind::Identity => Ok(p),
            FluxKind::Linear { a } => Ok(p / a),
            FluxKind::Burgers => {
                if p < 0.0 {
                    return Err(FtError::OutOfRange {
                        what: "flux value",
                        value: p,
                        lo: 0.0,
                        hi: f64::INFINITY,
                    });
                }
                Ok((2.0 * p).sqrt())
            }
            FluxKind::Power { exponent, scale } => Ok((p / scale).powf(1.0 / exponent)),
            FluxKind::Custom { .. } => {
                let (mut lo, mut hi) = self.working_range;
                let mut width = hi - lo;
                for _ in 0..200 {
                    if self.eval(lo) <= p && p <= self.eval(hi) {
                        return self.newton_on(p, lo, hi);
                    }
                    if p < self.eval(lo) {
                        lo -= width;
                    } else {
                        hi += width;
                    }
                    width *= 2.0;
                }
                Err(FtError::OutOfRange {
                    what: "flux value",
                    value: p,
                    lo: self.eval(lo),
                    hi: self.eval(hi),
                })
            }
        }
    }

    fn newton_inverse(&self, p: f64) -> Result<f64> {
        let (lo, hi) = self.working_range;
        let (flo, fhi) = (self.eval(lo), self.eval(hi));
        if p < flo - RANGE_SLACK || p > fhi + RANGE_SLACK {
            return Err(FtError::OutOfRange {
                what: "flux value",
                value: p,
                lo: flo,
                hi: fhi,
            });
        }
        self.newton_on(p, lo, hi)
    }

    /// Safeguarded Newton iteration on a bracketing interval, bisection
    /// fallback, 1e-13 state tolerance.
    fn newton_on(&self, p: f64, mut lo: f64, mut hi: f64) -> Result<f64> {
        let mut u = 0.5 * (lo + hi);
        for _ in 0..200 {
            let r = self.eval(u) - p;
            if r > 0.0 {
                hi = u;
            } else {
                lo = u;
            }
            let d = self.deriv(u);
            let mut next = if d > 0.0 { u - r / d } else { f64::NAN };
            if !(next > lo && next < hi) {
                next = 0.5 * (lo + hi);
            }
            if (next - u).abs() <= 1e-13 * u.abs().max(1.0) {
                return Ok(next);
            }
            u = next;
        }
        Ok(u)
    }

    /// Lipschitz constant of the flux on an interval (max sampled derivative).
    pub fn lipschitz_on(&self, range: (f64, f64)) -> f64 {
        let n = 1000;
        (0..=n)
            .map(|i| self.deriv(range.0 + (range.1 - range.0) * i as f64 / n as f64))
            .fold(0.0, f64::max)
    }

    /// The flux u -> f(u) + eps * u; used by flux-perturbation studies.
    pub fn perturbed_linear(&self, eps: f64) -> Result<Self> {
        let base = self.clone();
        let base_d = self.clone();
        Self::custom(
            format!("{}+{}u", self.name, eps),
            move |u| base.eval(u) + eps * u,
            move |u| base_d.deriv(u) + eps,
            self.working_range,
        )
    }

    /// The flux u -> k * f(u); used by coefficient-perturbation studies.
    pub fn scaled(&self, k: f64) -> Result<Self> {
        let base = self.clone();
        let base_d = self.clone();
        Self::custom(
            format!("{}*{}", k, self.name),
            move |u| k * base.eval(u),
            move |u| k * base_d.deriv(u),
            self.working_range,
        )
    }
}

/// Piecewise linear interpolant of a flux on the state grid j*delta.
///
/// Breakpoints are u_i = (j0 + i) * delta; the stored values are the exact
/// flux values there, so evaluation at a breakpoint reproduces the stored
/// value bitwise.
#[derive(Debug, Clone)]
pub struct PiecewiseLinearFlux {
    delta: f64,
    j0: i64,
    values: Vec<f64>,
    slopes: Vec<f64>,
}

impl PiecewiseLinearFlux {
    /// Interpolates `f` at the grid points j*delta covering `range`.
    ///
    /// Errors if the sampled values are not strictly increasing, which
    /// signals that `f` violates f' >= alpha > 0 somewhere on the range.
    pub fn interpolate(f: &MonotoneFlux, delta: f64, range: (f64, f64)) -> Result<Self> {
        if !delta.is_finite() || delta <= 0.0 {
            return Err(FtError::Config(format!("delta = {} must be positive", delta)));
        }
        let (lo, hi) = range;
        if !lo.is_finite() || !hi.is_finite() || lo > hi {
            return Err(FtError::Config(format!("bad state range [{}, {}]", lo, hi)));
        }
        let mut j0 = (lo / delta).floor() as i64;
        while j0 as f64 * delta > lo {
            j0 -= 1;
        }
        let mut j1 = (hi / delta).ceil() as i64;
        while (j1 as f64) * delta < hi {
            j1 += 1;
        }
        j1 = j1.max(j0 + 1);
        let values: Vec<f64> = (j0..=j1).map(|j| f.eval(j as f64 * delta)).collect();
        let slopes: Vec<f64> = values.windows(2).map(|w| (w[1] - w[0]) / delta).collect();
        if slopes.iter().any(|&s| s <= 0.0) {
            return Err(FtError::InvalidFlux {
                name: f.name().into(),
                reason: format!(
                    "sampled values not strictly increasing on [{}, {}] at spacing {}",
                    lo, hi, delta
                ),
            });
        }
        Ok(PiecewiseLinearFlux {
            delta,
            j0,
            values,
            slopes,
        })
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn n_breakpoints(&self) -> usize {
        self.values.len()
    }

    /// State of the i-th breakpoint.
    pub fn breakpoint(&self, i: usize) -> f64 {
        (self.j0 + i as i64) as f64 * self.delta
    }

    /// Stored flux value at the i-th breakpoint.
    pub fn value(&self, i: usize) -> f64 {
        self.values[i]
    }

    pub fn u_min(&self) -> f64 {
        self.breakpoint(0)
    }

    pub fn u_max(&self) -> f64 {
        self.breakpoint(self.values.len() - 1)
    }

    pub fn value_range(&self) -> (f64, f64) {
        (self.values[0], *self.values.last().unwrap())
    }

    /// Smallest segment slope; positive by construction.
    pub fn min_slope(&self) -> f64 {
        self.slopes.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Largest segment slope = Lipschitz constant of the interpolant.
    pub fn lipschitz_constant(&self) -> f64 {
        self.slopes.iter().copied().fold(0.0, f64::max)
    }

    pub fn contains(&self, u: f64) -> bool {
        u >= self.u_min() && u <= self.u_max()
    }

    /// Index of the segment containing u (clamped at the ends).
    fn segment_of(&self, u: f64) -> usize {
        let n = self.values.len();
        let mut i = ((u / self.delta).floor() as i64 - self.j0).clamp(0, n as i64 - 2) as usize;
        while i > 0 && u < self.breakpoint(i) {
            i -= 1;
        }
        while i + 2 < n && u >= self.breakpoint(i + 1) {
            i += 1;
        }
        i
    }

    /// Evaluates the interpolant; breakpoint states reproduce the stored
    /// values bitwise. Outside the grid the end segments are extended
    /// linearly; callers validate ranges where that matters.
    pub fn eval(&self, u: f64) -> f64 {
        let i = self.segment_of(u);
        let du = u - self.breakpoint(i);
        if du == 0.0 {
            self.values[i]
        } else if u == self.breakpoint(i + 1) {
            // the topmost breakpoint resolves to the last segment
            self.values[i + 1]
        } else {
            self.values[i] + self.slopes[i] * du
        }
    }

    /// Slope of the segment containing u (right-continuous at breakpoints).
    pub fn slope_at(&self, u: f64) -> f64 {
        self.slopes[self.segment_of(u)]
    }

    /// Inverts the interpolant: binary search over the stored values, then
    /// exact linear inversion on the segment.
    pub fn invert(&self, p: f64) -> Result<f64> {
        let (plo, phi) = self.value_range();
        if p < plo || p > phi {
            return Err(FtError::OutOfRange {
                what: "flux value",
                value: p,
                lo: plo,
                hi: phi,
            });
        }
        let k = self.values.partition_point(|&v| v <= p);
        if k == self.values.len() {
            return Ok(self.u_max());
        }
        // values[k-1] <= p < values[k]
        let i = k - 1;
        let dp = p - self.values[i];
        if dp == 0.0 {
            Ok(self.breakpoint(i))
        } else {
            Ok(self.breakpoint(i) + dp / self.slopes[i])
        }
    }

    /// Indices of breakpoints strictly inside the open interval (a, b).
    pub(crate) fn breakpoints_strictly_inside(&self, a: f64, b: f64) -> std::ops::Range<usize> {
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        let n = self.values.len();
        let mut i = (((lo / self.delta).floor() as i64) - self.j0 + 1).clamp(0, n as i64) as usize;
        while i < n && self.breakpoint(i) <= lo {
            i += 1;
        }
        let mut j = i;
        while j < n && self.breakpoint(j) < hi {
            j += 1;
        }
        i..j
    }
}

/// A spatially varying flux: interface positions plus one state flux per
/// subdomain. `coefficient_values` optionally records the scalar coefficient
/// of each subdomain for coefficient-perturbation studies.
#[derive(Debug, Clone)]
pub struct SpatialFlux {
    interfaces: Vec<f64>,
    subdomain_fluxes: Vec<MonotoneFlux>,
    coefficient_values: Option<Vec<f64>>,
}

impl SpatialFlux {
    pub fn new(interfaces: Vec<f64>, subdomain_fluxes: Vec<MonotoneFlux>) -> Result<Self> {
        if subdomain_fluxes.len() != interfaces.len() + 1 {
            return Err(FtError::Config(format!(
                "{} interfaces require {} fluxes, got {}",
                interfaces.len(),
                interfaces.len() + 1,
                subdomain_fluxes.len()
            )));
        }
        if interfaces.windows(2).any(|w| w[0] >= w[1]) {
            return Err(FtError::Config("interfaces must be strictly increasing".into()));
        }
        Ok(SpatialFlux {
            interfaces,
            subdomain_fluxes,
            coefficient_values: None,
        })
    }

    pub fn with_coefficients(mut self, k: Vec<f64>) -> Result<Self> {
        if k.len() != self.subdomain_fluxes.len() {
            return Err(FtError::Config("one coefficient per subdomain required".into()));
        }
        self.coefficient_values = Some(k);
        Ok(self)
    }

    pub fn interfaces(&self) -> &[f64] {
        &self.interfaces
    }

    pub fn fluxes(&self) -> &[MonotoneFlux] {
        &self.subdomain_fluxes
    }

    pub fn coefficient_values(&self) -> Option<&[f64]> {
        self.coefficient_values.as_deref()
    }

    /// Index of the subdomain containing x. Exactly at an interface the left
    /// subdomain is reported.
    pub fn subdomain_of(&self, x: f64) -> usize {
        self.interfaces.partition_point(|&xi| xi < x)
    }

    /// The state flux acting at position x.
    pub fn flux_at(&self, x: f64) -> &MonotoneFlux {
        &self.subdomain_fluxes[self.subdomain_of(x)]
    }

    /// Applies a map to every subdomain flux (perturbation studies).
    pub fn map_fluxes(
        &self,
        f: impl FnMut(&MonotoneFlux) -> Result<MonotoneFlux>,
    ) -> Result<SpatialFlux> {
        let fluxes: Result<Vec<_>> = self.subdomain_fluxes.iter().map(f).collect();
        Ok(SpatialFlux {
            interfaces: self.interfaces.clone(),
            subdomain_fluxes: fluxes?,
            coefficient_values: self.coefficient_values.clone(),
        })
    }

    /// The adapted-constant chain: c_0 = c and f^(i+1)(c_{i+1}) = f^(i)(c_i),
    /// so the flux value is constant along the chain.
    pub fn adapted_constants(&self, c: f64) -> Result<Vec<f64>> {
        let mut out = Vec::with_capacity(self.subdomain_fluxes.len());
        out.push(c);
        for i in 1..self.subdomain_fluxes.len() {
            let p = self.subdomain_fluxes[i - 1].eval(out[i - 1]);
            out.push(self.subdomain_fluxes[i].inverse(p)?);
        }
        Ok(out)
    }

    /// Interpolates every subdomain flux at spacing `delta` on its own state
    /// range.
    pub fn interpolate(&self, delta: f64, ranges: &[(f64, f64)]) -> Result<SpatialFluxDelta> {
        if ranges.len() != self.subdomain_fluxes.len() {
            return Err(FtError::Config("one state range per subdomain required".into()));
        }
        let fluxes: Result<Vec<_>> = self
            .subdomain_fluxes
            .iter()
            .zip(ranges)
            .map(|(f, &r)| PiecewiseLinearFlux::interpolate(f, delta, r))
            .collect();
        Ok(SpatialFluxDelta {
            interfaces: self.interfaces.clone(),
            subdomain_fluxes: fluxes?,
        })
    }

    /// Per-subdomain state ranges needed by a run with datum hull
    /// `[hull.0, hull.1]`: each subdomain may additionally see the image of
    /// its left neighbor's range under the interface map, padded by `pad`.
    pub fn required_ranges(&self, hull: (f64, f64), pad: f64) -> Result<Vec<(f64, f64)>> {
        let mut ranges = Vec::with_capacity(self.subdomain_fluxes.len());
        let mut cur = hull;
        ranges.push((cur.0 - pad, cur.1 + pad));
        for i in 1..self.subdomain_fluxes.len() {
            let lo = self.subdomain_fluxes[i]
                .inverse(self.subdomain_fluxes[i - 1].eval(cur.0))?;
            let hi = self.subdomain_fluxes[i]
                .inverse(self.subdomain_fluxes[i - 1].eval(cur.1))?;
            cur = (lo.min(hull.0), hi.max(hull.1));
            ranges.push((cur.0 - pad, cur.1 + pad));
        }
        Ok(ranges)
    }
}

/// A spatially varying flux whose subdomain fluxes are piecewise linear;
/// the input consumed by the front tracking evolution.
#[derive(Debug, Clone)]
pub struct SpatialFluxDelta {
    interfaces: Vec<f64>,
    subdomain_fluxes: Vec<PiecewiseLinearFlux>,
}

impl SpatialFluxDelta {
    pub fn new(interfaces: Vec<f64>, subdomain_fluxes: Vec<PiecewiseLinearFlux>) -> Result<Self> {
        if subdomain_fluxes.len() != interfaces.len() + 1 {
            return Err(FtError::Config(format!(
                "{} interfaces require {} fluxes, got {}",
                interfaces.len(),
                interfaces.len() + 1,
                subdomain_fluxes.len()
            )));
        }
        if interfaces.windows(2).any(|w| w[0] >= w[1]) {
            return Err(FtError::Config("interfaces must be strictly increasing".into()));
        }
        Ok(SpatialFluxDelta {
            interfaces,
            subdomain_fluxes,
        })
    }

    pub fn interfaces(&self) -> &[f64] {
        &self.interfaces
    }

    pub fn fluxes(&self) -> &[PiecewiseLinearFlux] {
        &self.subdomain_fluxes
    }

    pub fn subdomain_of(&self, x: f64) -> usize {
        self.interfaces.partition_point(|&xi| xi < x)
    }

    pub fn flux_at(&self, x: f64) -> &PiecewiseLinearFlux {
        &self.subdomain_fluxes[self.subdomain_of(x)]
    }

    /// Smallest segment slope over all subdomains (lower bound on every
    /// front speed).
    pub fn min_slope(&self) -> f64 {
        self.subdomain_fluxes
            .iter()
            .map(|f| f.min_slope())
            .fold(f64::INFINITY, f64::min)
    }

    /// The adapted-constant chain under the piecewise linear fluxes; the
    /// solver's interface states live on exactly these values.
    pub fn adapted_constants(&self, c: f64) -> Result<Vec<f64>> {
        let mut out = Vec::with_capacity(self.subdomain_fluxes.len());
        out.push(c);
        for i in 1..self.subdomain_fluxes.len() {
            let p = self.subdomain_fluxes[i - 1].eval(out[i - 1]);
            out.push(self.subdomain_fluxes[i].invert(p)?);
        }
        Ok(out)
    }
}

/// Lipschitz distance between the derivatives of two fluxes on a common
/// range: sup over a dense sample grid of |a'(u) - b'(u)|.
///
/// Works on analytic fluxes and piecewise linear interpolants alike; samples
/// are taken at subinterval midpoints so breakpoint slope jumps are seen from
/// one side, deterministically.
pub fn lipschitz_distance(a: &dyn SlopeEval, b: &dyn SlopeEval, range: (f64, f64)) -> f64 {
    let (lo, hi) = range;
    let h = (hi - lo) / SLOPE_SAMPLES as f64;
    let mut sup: f64 = 0.0;
    for i in 0..SLOPE_SAMPLES {
        let u = lo + (i as f64 + 0.5) * h;
        sup = sup.max((a.slope(u) - b.slope(u)).abs());
    }
    sup
}

/// Anything with a pointwise slope; implemented by analytic and piecewise
/// linear fluxes so [`lipschitz_distance`] can mix them.
pub trait SlopeEval {
    fn slope(&self, u: f64) -> f64;
}

impl SlopeEval for MonotoneFlux {
    fn slope(&self, u: f64) -> f64 {
        self.deriv(u)
    }
}

impl SlopeEval for PiecewiseLinearFlux {
    fn slope(&self, u: f64) -> f64 {
        self.slope_at(u)
    }
}
