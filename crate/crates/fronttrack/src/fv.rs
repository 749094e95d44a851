//! Reference upwind finite volume scheme for the same problem.
//!
//! With f_u >= alpha > 0 all information moves right, so the upwind flux
//! coincides with the Godunov and Engquist-Osher fluxes:
//!
//!   u_j <- u_j - lambda * (f_j(u_j) - f_{j-1}(u_{j-1}))
//!
//! where f_j is the flux of the subdomain containing the center of cell j.
//! The coefficient is sampled at cell centers, so a flux interface falls
//! between two cells and the discrete Rankine-Hugoniot coupling is implicit
//! in the upwind difference. The left ghost cell carries the constant left
//! tail of the initial datum; the right boundary is pure outflow.

use crate::error::{FtError, Result};
use crate::flux::SpatialFlux;
use crate::piecewise::PiecewiseConstantFn;

/// Uniform grid state of the upwind scheme.
#[derive(Debug, Clone)]
pub struct FVGrid {
    domain: (f64, f64),
    dx: f64,
    dt: f64,
    lambda: f64,
    time: f64,
    cell_values: Vec<f64>,
    /// Subdomain index per cell (flux of the cell center).
    cell_subdomain: Vec<usize>,
    flux: SpatialFlux,
    left_ghost: f64,
}

impl FVGrid {
    /// Projects the initial datum to cell averages and validates the CFL
    /// condition `lambda * max flux Lipschitz constant <= 1`, where the
    /// Lipschitz constants are taken over the states each subdomain can see
    /// (initial hull plus its interface images).
    pub fn new(
        sf: &SpatialFlux,
        u0: impl Fn(f64) -> f64,
        n_cells: usize,
        lambda: f64,
        domain: (f64, f64),
    ) -> Result<Self> {
        if !lambda.is_finite() || lambda <= 0.0 {
            return Err(FtError::Config(format!("lambda = {} must be positive", lambda)));
        }
        let cell_values = PiecewiseConstantFn::cell_averages(&u0, domain, n_cells)?;
        let dx = (domain.1 - domain.0) / n_cells as f64;
        let cell_subdomain: Vec<usize> = (0..n_cells)
            .map(|j| sf.subdomain_of(domain.0 + dx * (j as f64 + 0.5)))
            .collect();

        let hull = {
            let lo = cell_values.iter().copied().fold(f64::INFINITY, f64::min);
            let hi = cell_values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            (lo, hi)
        };
        // the discrete maximum principle keeps cell values inside the
        // adapted hull of the initial data, so the Lipschitz constants are
        // taken over exactly that hull
        let ranges = sf.required_ranges(hull, 0.0)?;
        let max_lip = sf
            .fluxes()
            .iter()
            .zip(&ranges)
            .map(|(f, &r)| f.lipschitz_on(r))
            .fold(0.0, f64::max);
        let product = lambda * max_lip;
        if product > 1.0 + 1e-12 {
            return Err(FtError::CflViolation { product });
        }

        let left_ghost = cell_values[0];
        Ok(FVGrid {
            domain,
            dx,
            dt: lambda * dx,
            lambda,
            time: 0.0,
            cell_values,
            cell_subdomain,
            flux: sf.clone(),
            left_ghost,
        })
    }

    pub fn dx(&self) -> f64 {
        self.dx
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn time(&self) -> f64 {
        self.time
    }

    pub fn cell_values(&self) -> &[f64] {
        &self.cell_values
    }

    /// Total mass `sum_j u_j dx` on the grid.
    pub fn mass(&self) -> f64 {
        self.cell_values.iter().sum::<f64>() * self.dx
    }

    /// Boundary fluxes (inflow at the left edge, outflow at the right edge)
    /// for the current state; mass changes by `dt * (inflow - outflow)` per
    /// step.
    pub fn boundary_fluxes(&self) -> (f64, f64) {
        let inflow = self.flux.fluxes()[0].eval(self.left_ghost);
        let last = *self.cell_values.last().unwrap();
        let outflow = self.flux.fluxes()[*self.cell_subdomain.last().unwrap()].eval(last);
        (inflow, outflow)
    }

    /// One upwind step of size `dt` (defaults to the CFL step).
    pub fn step(&mut self, dt: Option<f64>) {
        let dt = dt.unwrap_or(self.dt);
        let r = dt / self.dx;
        let fluxes = self.flux.fluxes();
        let mut prev_flux = fluxes[0].eval(self.left_ghost);
        for j in 0..self.cell_values.len() {
            let here = fluxes[self.cell_subdomain[j]].eval(self.cell_values[j]);
            self.cell_values[j] -= r * (here - prev_flux);
            prev_flux = here;
        }
        self.time += dt;
    }

    /// The cell-average staircase, extended by the end cells outside the
    /// domain.
    pub fn solution(&self) -> PiecewiseConstantFn {
        let n = self.cell_values.len();
        let breakpoints = (1..n)
            .map(|j| self.domain.0 + self.dx * j as f64)
            .collect();
        PiecewiseConstantFn::from_raw(breakpoints, self.cell_values.clone())
    }
}

/// Runs the upwind scheme to `end_time` (the final step is shortened to land
/// exactly on it) and returns the cell-average staircase.
pub fn fv_solve(
    sf: &SpatialFlux,
    u0: impl Fn(f64) -> f64,
    n_cells: usize,
    lambda: f64,
    end_time: f64,
    domain: (f64, f64),
) -> Result<PiecewiseConstantFn> {
    let mut grid = FVGrid::new(sf, u0, n_cells, lambda, domain)?;
    while grid.time() < end_time - 1e-14 {
        let dt = grid.dt().min(end_time - grid.time());
        grid.step(Some(dt));
    }
    Ok(grid.solution())
}
