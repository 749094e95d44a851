//! Event-driven front tracking: initialization from Riemann problems,
//! collision prediction and resolution, interface crossings, and solution
//! sampling.
//!
//! A solution is a finite set of fronts, each a discontinuity moving at a
//! constant Rankine-Hugoniot speed; interface fronts are pinned at the flux
//! interfaces forever. Between events every front moves on a straight line,
//! so the next event is the minimum of pairwise collision times of adjacent
//! fronts. All wave speeds are positive, hence a front can only catch its
//! right neighbor or run into an interface on its right.
//!
//! Events at equal times are processed left to right by position; stale
//! events are discarded through per-front generation stamps.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{FtError, Result};
use crate::flux::{SpatialFlux, SpatialFluxDelta};
use crate::piecewise::PiecewiseConstantFn;
use crate::riemann::{solve_riemann_interface, solve_riemann_single, WaveFan};

/// Datum breakpoints closer than this to an interface are nudged left so the
/// interface Riemann problems see distinct one-sided traces.
const INTERFACE_NUDGE: f64 = 1e-12;

/// Whether a front moves or is pinned at a flux interface.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FrontKind {
    Moving,
    /// Pinned at interface `i` of the spatial flux.
    Interface(usize),
}

/// A discontinuity of the piecewise constant solution.
#[derive(Debug, Clone, Copy)]
pub struct Front {
    /// Position at time `born_at`.
    pub position: f64,
    pub born_at: f64,
    /// Rankine-Hugoniot speed; 0 for interface fronts.
    pub speed: f64,
    pub left_state: f64,
    pub right_state: f64,
    pub kind: FrontKind,
}

impl Front {
    pub fn position_at(&self, t: f64) -> f64 {
        self.position + self.speed * (t - self.born_at)
    }

    pub fn is_interface(&self) -> bool {
        matches!(self.kind, FrontKind::Interface(_))
    }
}

/// Time at which front `a` (left of `b` at time `now`) catches front `b`,
/// or `None` when they never meet. Interface fronts are stationary targets.
pub fn predict_collision(a: &Front, b: &Front, now: f64) -> Option<f64> {
    if a.is_interface() {
        return None;
    }
    let sb = if b.is_interface() { 0.0 } else { b.speed };
    if a.speed <= sb {
        return None;
    }
    let gap = b.position_at(now) - a.position_at(now);
    Some(now + (gap / (a.speed - sb)).max(0.0))
}

/// A scheduled meeting of two adjacent fronts, identified by slot ids and
/// generation stamps that invalidate the event if either front has been
/// consumed or rewired since scheduling.
#[derive(Debug, Clone, Copy)]
pub struct CollisionEvent {
    pub time: f64,
    pub position: f64,
    seq: u64,
    left: u32,
    right: u32,
    left_gen: u32,
    right_gen: u32,
}

impl PartialEq for CollisionEvent {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for CollisionEvent {}
impl PartialOrd for CollisionEvent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for CollisionEvent {
    /// Later events sort larger; ties in time resolve left to right by
    /// position, then by insertion order.
    fn cmp(&self, other: &Self) -> Ordering {
        self.time
            .total_cmp(&other.time)
            .then(self.position.total_cmp(&other.position))
            .then(self.seq.cmp(&other.seq))
    }
}

/// Run counters and invariant residuals accumulated during the evolution.
#[derive(Debug, Clone, Default)]
pub struct RunStats {
    /// Events processed (collisions + interface crossings).
    pub events: u64,
    pub collisions: u64,
    pub interface_crossings: u64,
    /// High-water mark of simultaneously alive fronts.
    pub max_fronts: usize,
    /// Largest |speed * (u_r - u_l) - (f(u_r) - f(u_l))| over all moving
    /// fronts ever created.
    pub max_rh_residual: f64,
    /// Largest |g(u-) - f(u+)| over all interface front updates.
    pub max_interface_residual: f64,
    /// Largest cumulative total-variation increase between interface
    /// crossings (nonpositive when the evolution is entropy correct).
    pub max_tv_drift: f64,
    /// Hull of all states ever carried by a front.
    pub state_min: f64,
    pub state_max: f64,
}

/// One recorded front trajectory; alive fronts have `died_at = +inf`.
#[derive(Debug, Clone, Copy)]
pub struct HistorySegment {
    pub born_at: f64,
    pub died_at: f64,
    pub position: f64,
    pub speed: f64,
    pub left_state: f64,
    pub right_state: f64,
    pub interface: bool,
}

impl HistorySegment {
    /// Time at which this front crosses position x, if it does while alive.
    fn crossing_time(&self, x: f64) -> Option<f64> {
        if self.interface || self.speed <= 0.0 {
            return None;
        }
        let t = self.born_at + (x - self.position) / self.speed;
        (t >= self.born_at && t <= self.died_at).then_some(t)
    }
}

/// Evolution controls.
#[derive(Debug, Clone)]
pub struct TrackingOptions {
    /// Record every front trajectory (needed for flux time traces).
    pub record_history: bool,
    /// Safety cap on processed events; exceeding it aborts the run.
    pub event_cap: u64,
}

impl Default for TrackingOptions {
    fn default() -> Self {
        TrackingOptions {
            record_history: false,
            event_cap: 10_000_000,
        }
    }
}

struct Slot {
    front: Front,
    prev: Option<u32>,
    next: Option<u32>,
    /// Subdomain the front lives in; moving fronts never leave theirs.
    subdomain: usize,
    gen: u32,
    alive: bool,
    history_idx: usize,
}

/// The full state of one front tracking run.
pub struct FrontTrackingState {
    flux: SpatialFluxDelta,
    datum: PiecewiseConstantFn,
    slots: Vec<Slot>,
    head: Option<u32>,
    time: f64,
    queue: BinaryHeap<std::cmp::Reverse<CollisionEvent>>,
    seq: u64,
    alive: usize,
    tv_drift: f64,
    stats: RunStats,
    options: TrackingOptions,
    history: Vec<HistorySegment>,
}

impl FrontTrackingState {
    /// Solves the Riemann problems of a piecewise constant datum under a
    /// piecewise linear spatial flux and schedules the initial collisions.
    ///
    /// Datum breakpoints that coincide with an interface are first nudged
    /// left by 1e-12 so left and right traces stay distinct.
    pub fn initialize(
        flux: SpatialFluxDelta,
        u0_delta: &PiecewiseConstantFn,
        options: TrackingOptions,
    ) -> Result<Self> {
        let mut datum_bps = u0_delta.breakpoints().to_vec();
        for bp in &mut datum_bps {
            if flux
                .interfaces()
                .iter()
                .any(|&xi| (*bp - xi).abs() < INTERFACE_NUDGE)
            {
                *bp -= INTERFACE_NUDGE;
            }
        }
        let values = u0_delta.values().to_vec();
        let datum = PiecewiseConstantFn::new(datum_bps.clone(), values.clone())?;

        let mut state = FrontTrackingState {
            flux,
            datum: datum.clone(),
            slots: Vec::new(),
            head: None,
            time: 0.0,
            queue: BinaryHeap::new(),
            seq: 0,
            alive: 0,
            tv_drift: 0.0,
            stats: RunStats {
                state_min: f64::INFINITY,
                state_max: f64::NEG_INFINITY,
                ..RunStats::default()
            },
            options,
            history: Vec::new(),
        };
        for &v in &values {
            state.stats.state_min = state.stats.state_min.min(v);
            state.stats.state_max = state.stats.state_max.max(v);
        }

        // Seed fronts in position order: datum jumps spawn single-flux fans,
        // interfaces spawn an interface front plus its right-moving fan.
        let mut seeds: Vec<(f64, bool, usize)> = Vec::new(); // (pos, is_interface, idx)
        for (i, &x) in datum.breakpoints().iter().enumerate() {
            seeds.push((x, false, i));
        }
        for (k, &xi) in state.flux.interfaces().iter().enumerate() {
            seeds.push((xi, true, k));
        }
        seeds.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));

        let mut tail: Option<u32> = None;
        for (x, is_interface, idx) in seeds {
            if is_interface {
                let trace = datum.sample_at(x);
                let k = idx;
                let sol = solve_riemann_interface(
                    &state.flux.fluxes()[k],
                    &state.flux.fluxes()[k + 1],
                    trace,
                    trace,
                )?;
                let residual = (state.flux.fluxes()[k].eval(trace)
                    - state.flux.fluxes()[k + 1].eval(sol.u_star))
                .abs();
                state.stats.max_interface_residual =
                    state.stats.max_interface_residual.max(residual);
                let id = state.push_front(
                    Front {
                        position: x,
                        born_at: 0.0,
                        speed: 0.0,
                        left_state: trace,
                        right_state: sol.u_star,
                        kind: FrontKind::Interface(k),
                    },
                    k,
                    tail,
                );
                tail = Some(id);
                tail = state.append_fan(&sol.right_fan, x, 0.0, k + 1, tail);
            } else {
                let (vl, vr) = (datum.values()[idx], datum.values()[idx + 1]);
                if vl == vr {
                    continue;
                }
                let k = state.flux.subdomain_of(x);
                let fan = solve_riemann_single(&state.flux.fluxes()[k], vl, vr)?;
                tail = state.append_fan(&fan, x, 0.0, k, tail);
            }
        }

        // schedule every adjacent pair
        let mut cur = state.head;
        while let Some(i) = cur {
            if let Some(j) = state.slots[i as usize].next {
                state.schedule(i, j);
            }
            cur = state.slots[i as usize].next;
        }
        state.debug_check_invariants();
        Ok(state)
    }

    pub fn time(&self) -> f64 {
        self.time
    }

    pub fn stats(&self) -> &RunStats {
        &self.stats
    }

    pub fn flux(&self) -> &SpatialFluxDelta {
        &self.flux
    }

    /// Projected initial datum actually used (after interface nudging).
    pub fn initial_datum(&self) -> &PiecewiseConstantFn {
        &self.datum
    }

    /// Recorded front trajectories (empty unless history was enabled).
    pub fn history(&self) -> &[HistorySegment] {
        &self.history
    }

    /// Alive fronts in left-to-right order at the current time.
    pub fn fronts(&self) -> Vec<Front> {
        let mut out = Vec::with_capacity(self.alive);
        let mut cur = self.head;
        while let Some(i) = cur {
            out.push(self.slots[i as usize].front);
            cur = self.slots[i as usize].next;
        }
        out
    }

    fn push_front(&mut self, front: Front, subdomain: usize, after: Option<u32>) -> u32 {
        let id = self.slots.len() as u32;
        let history_idx = if self.options.record_history {
            self.history.push(HistorySegment {
                born_at: front.born_at,
                died_at: f64::INFINITY,
                position: front.position,
                speed: front.speed,
                left_state: front.left_state,
                right_state: front.right_state,
                interface: front.is_interface(),
            });
            self.history.len() - 1
        } else {
            usize::MAX
        };
        self.stats.state_min = self.stats.state_min.min(front.left_state.min(front.right_state));
        self.stats.state_max = self.stats.state_max.max(front.left_state.max(front.right_state));
        let (prev, next) = match after {
            Some(p) => {
                let next = self.slots[p as usize].next;
                self.slots[p as usize].next = Some(id);
                if let Some(n) = next {
                    self.slots[n as usize].prev = Some(id);
                }
                (Some(p), next)
            }
            None => {
                let next = self.head;
                self.head = Some(id);
                if let Some(n) = next {
                    self.slots[n as usize].prev = Some(id);
                }
                (None, next)
            }
        };
        self.slots.push(Slot {
            front,
            prev,
            next,
            subdomain,
            gen: 0,
            alive: true,
            history_idx,
        });
        self.alive += 1;
        self.stats.max_fronts = self.stats.max_fronts.max(self.alive);
        id
    }

    /// Inserts all jumps of a fan after `tail` at position x and time t;
    /// returns the new tail. Records the Rankine-Hugoniot residual of every
    /// created front.
    fn append_fan(&mut self, fan: &WaveFan, x: f64, t: f64, subdomain: usize, tail: Option<u32>) -> Option<u32> {
        let mut tail = tail;
        {
            let fd = &self.flux.fluxes()[subdomain];
            let mut max_res = self.stats.max_rh_residual;
            for (s, a, b) in fan.jumps() {
                max_res = max_res.max((s * (b - a) - (fd.eval(b) - fd.eval(a))).abs());
            }
            self.stats.max_rh_residual = max_res;
        }
        for (s, a, b) in fan.jumps() {
            let id = self.push_front(
                Front {
                    position: x,
                    born_at: t,
                    speed: s,
                    left_state: a,
                    right_state: b,
                    kind: FrontKind::Moving,
                },
                subdomain,
                tail,
            );
            tail = Some(id);
        }
        tail
    }

    fn kill(&mut self, id: u32) {
        let slot = &mut self.slots[id as usize];
        slot.alive = false;
        slot.gen = slot.gen.wrapping_add(1);
        let (prev, next) = (slot.prev, slot.next);
        if slot.history_idx != usize::MAX {
            self.history[slot.history_idx].died_at = self.time;
        }
        match prev {
            Some(p) => self.slots[p as usize].next = next,
            None => self.head = next,
        }
        if let Some(n) = next {
            self.slots[n as usize].prev = prev;
        }
        self.alive -= 1;
    }

    fn schedule(&mut self, left: u32, right: u32) {
        let a = &self.slots[left as usize].front;
        let b = &self.slots[right as usize].front;
        let Some(t) = predict_collision(a, b, self.time) else {
            return;
        };
        let position = if b.is_interface() {
            b.position
        } else {
            a.position_at(t)
        };
        let ev = CollisionEvent {
            time: t,
            position,
            seq: self.seq,
            left,
            right,
            left_gen: self.slots[left as usize].gen,
            right_gen: self.slots[right as usize].gen,
        };
        self.seq += 1;
        self.queue.push(std::cmp::Reverse(ev));
    }

    /// Processes all events up to time T, then advances the surviving fronts
    /// to their positions at T.
    pub fn advance(&mut self, end_time: f64) -> Result<()> {
        if end_time < self.time {
            return Err(FtError::Config(format!(
                "cannot advance backwards from {} to {}",
                self.time, end_time
            )));
        }
        while let Some(std::cmp::Reverse(ev)) = self.queue.peek().copied() {
            if ev.time > end_time {
                break;
            }
            self.queue.pop();
            let (l, r) = (ev.left as usize, ev.right as usize);
            if !self.slots[l].alive
                || !self.slots[r].alive
                || self.slots[l].gen != ev.left_gen
                || self.slots[r].gen != ev.right_gen
                || self.slots[l].next != Some(ev.right)
            {
                continue; // stale
            }
            self.time = ev.time;
            self.stats.events += 1;
            if self.stats.events > self.options.event_cap {
                return Err(FtError::NonTermination {
                    cap: self.options.event_cap,
                });
            }
            match self.slots[r].front.kind {
                FrontKind::Interface(k) => self.cross_interface(ev.left, ev.right, k)?,
                FrontKind::Moving => self.collide(ev)?,
            }
            self.debug_check_invariants();
        }
        let t = end_time;
        let mut cur = self.head;
        while let Some(i) = cur {
            let f = &mut self.slots[i as usize].front;
            f.position = f.position_at(t);
            f.born_at = t;
            cur = self.slots[i as usize].next;
        }
        self.time = t;
        Ok(())
    }

    /// A moving front hits interface k: it is absorbed, the interface front
    /// takes its left state, and the re-solved interface Riemann problem
    /// emits a fan into the right subdomain.
    fn cross_interface(&mut self, moving: u32, iface: u32, k: usize) -> Result<()> {
        let u_l = self.slots[moving as usize].front.left_state;
        let old_right = self.slots[iface as usize].front.right_state;
        self.kill(moving);

        let sol = solve_riemann_interface(
            &self.flux.fluxes()[k],
            &self.flux.fluxes()[k + 1],
            u_l,
            old_right,
        )?;
        let residual = (self.flux.fluxes()[k].eval(u_l)
            - self.flux.fluxes()[k + 1].eval(sol.u_star))
        .abs();
        self.stats.max_interface_residual = self.stats.max_interface_residual.max(residual);
        self.stats.state_min = self.stats.state_min.min(sol.u_star);
        self.stats.state_max = self.stats.state_max.max(sol.u_star);

        let slot = &mut self.slots[iface as usize];
        slot.front.left_state = u_l;
        slot.front.right_state = sol.u_star;
        slot.gen = slot.gen.wrapping_add(1);
        if slot.history_idx != usize::MAX {
            let pos = slot.front.position;
            self.history[slot.history_idx].died_at = self.time;
            let idx = self.history.len();
            self.history.push(HistorySegment {
                born_at: self.time,
                died_at: f64::INFINITY,
                position: pos,
                speed: 0.0,
                left_state: u_l,
                right_state: sol.u_star,
                interface: true,
            });
            self.slots[iface as usize].history_idx = idx;
        }

        let xi = self.slots[iface as usize].front.position;
        let tail = self.append_fan(&sol.right_fan, xi, self.time, k + 1, Some(iface));
        // new adjacencies: previous front vs interface, fan tail vs old next
        if let Some(p) = self.slots[iface as usize].prev {
            self.schedule(p, iface);
        }
        if let Some(tail) = tail {
            if let Some(n) = self.slots[tail as usize].next {
                self.schedule(tail, n);
            }
        }
        self.stats.interface_crossings += 1;
        self.tv_drift = 0.0;
        Ok(())
    }

    /// Two adjacent moving fronts merge; the Riemann problem of the outer
    /// states replaces them, re-centered at the collision point.
    fn collide(&mut self, ev: CollisionEvent) -> Result<()> {
        let (l, r) = (ev.left, ev.right);
        let a = self.slots[l as usize].front;
        let b = self.slots[r as usize].front;
        debug_assert_eq!(a.right_state, b.left_state);
        debug_assert_eq!(self.slots[l as usize].subdomain, self.slots[r as usize].subdomain);
        let x = ev.position;
        let k = self.slots[l as usize].subdomain;
        let (u_l, u_m, u_r) = (a.left_state, a.right_state, b.right_state);
        let p = self.slots[l as usize].prev;
        self.kill(l);
        self.kill(r);

        let fan = solve_riemann_single(&self.flux.fluxes()[k], u_l, u_r)?;
        let tv_before = (u_m - u_l).abs() + (u_r - u_m).abs();
        self.tv_drift += fan.total_variation() - tv_before;
        self.stats.max_tv_drift = self.stats.max_tv_drift.max(self.tv_drift);

        let tail = self.append_fan(&fan, x, self.time, k, p);
        let first_new = match p {
            Some(p) => self.slots[p as usize].next,
            None => self.head,
        };
        if let (Some(p), Some(f)) = (p, first_new) {
            self.schedule(p, f);
        }
        if let Some(t) = tail.or(p) {
            if let Some(n) = self.slots[t as usize].next {
                self.schedule(t, n);
            }
        } else if let (None, Some(h)) = (p, self.head) {
            // fan empty and no left neighbor: new head pair
            if let Some(n) = self.slots[h as usize].next {
                self.schedule(h, n);
            }
        }
        self.stats.collisions += 1;
        Ok(())
    }

    /// The staircase carried by the fronts at the current time; zero-width
    /// artifacts from just-processed collisions are merged away.
    pub fn sample_solution(&self) -> PiecewiseConstantFn {
        let mut cur = self.head;
        let Some(first) = cur else {
            return PiecewiseConstantFn::constant(self.datum.values()[0]);
        };
        let mut breakpoints = Vec::with_capacity(self.alive);
        let mut values = Vec::with_capacity(self.alive + 1);
        values.push(self.slots[first as usize].front.left_state);
        while let Some(i) = cur {
            let f = &self.slots[i as usize].front;
            breakpoints.push(f.position_at(self.time));
            values.push(f.right_state);
            cur = self.slots[i as usize].next;
        }
        PiecewiseConstantFn::from_raw(breakpoints, values)
    }

    /// Walks the list asserting order and state continuity (debug builds).
    fn debug_check_invariants(&self) {
        if cfg!(debug_assertions) {
            let mut cur = self.head;
            let mut prev: Option<&Slot> = None;
            while let Some(i) = cur {
                let slot = &self.slots[i as usize];
                if let Some(p) = prev {
                    let gap = slot.front.position_at(self.time) - p.front.position_at(self.time);
                    debug_assert!(gap >= -1e-9, "fronts out of order: gap = {}", gap);
                    debug_assert!(
                        (p.front.right_state - slot.front.left_state).abs() < 1e-9,
                        "state continuity violated"
                    );
                }
                prev = Some(slot);
                cur = slot.next;
            }
        }
    }
}

/// State of position x over time, reconstructed from the recorded front
/// trajectories: the initial datum value at x followed by one change per
/// front crossing.
pub fn state_trace(
    state: &FrontTrackingState,
    x: f64,
    end_time: f64,
) -> Vec<(f64, f64)> {
    let mut crossings: Vec<(f64, f64, f64)> = state
        .history()
        .iter()
        .filter_map(|seg| {
            let t = seg.crossing_time(x)?;
            (t > 0.0 && t <= end_time).then_some((t, seg.speed, seg.left_state))
        })
        .collect();
    // simultaneous crossings apply fastest first so the slowest (leftmost)
    // front decides the value
    crossings.sort_by(|a, b| a.0.total_cmp(&b.0).then(b.1.total_cmp(&a.1)));
    let mut out = vec![(0.0, state.initial_datum().sample_at(x))];
    for (t, _, left) in crossings {
        out.push((t, left));
    }
    out
}

/// Exact integral over (0, T) of |f(k(x), u(x, t)) - f(k(y), u(y, t))|,
/// the quantity controlled by the spatial Lipschitz continuity of the flux.
pub fn flux_trace_distance(state: &FrontTrackingState, x: f64, y: f64, end_time: f64) -> f64 {
    let to_flux = |pos: f64, trace: Vec<(f64, f64)>| -> Vec<(f64, f64)> {
        let fd = state.flux().flux_at(pos);
        trace.into_iter().map(|(t, u)| (t, fd.eval(u))).collect()
    };
    let fx = to_flux(x, state_trace(state, x, end_time));
    let fy = to_flux(y, state_trace(state, y, end_time));
    let mut total = 0.0;
    let (mut i, mut j) = (0, 0);
    let mut t_cur = 0.0;
    while t_cur < end_time {
        let next_x = fx.get(i + 1).map_or(f64::INFINITY, |p| p.0);
        let next_y = fy.get(j + 1).map_or(f64::INFINITY, |p| p.0);
        let t_next = next_x.min(next_y).min(end_time);
        total += (fx[i].1 - fy[j].1).abs() * (t_next - t_cur);
        if next_x <= t_next {
            i += 1;
        }
        if next_y <= t_next {
            j += 1;
        }
        t_cur = t_next;
    }
    total
}

/// Everything produced by one front tracking solve.
pub struct FrontTrackingRun {
    pub solution: PiecewiseConstantFn,
    pub datum: PiecewiseConstantFn,
    pub state: FrontTrackingState,
}

/// Runs the full method: interpolates each subdomain flux at spacing
/// `delta`, projects the initial datum onto cells of width `delta`,
/// evolves to `end_time`, and samples the staircase.
pub fn run_front_tracking(
    sf: &SpatialFlux,
    u0: impl Fn(f64) -> f64,
    delta: f64,
    end_time: f64,
    domain: (f64, f64),
    options: TrackingOptions,
) -> Result<FrontTrackingRun> {
    if !delta.is_finite() || delta <= 0.0 {
        return Err(FtError::Config(format!("delta = {} must be positive", delta)));
    }
    let len = domain.1 - domain.0;
    let n_cells = (len / delta).round();
    if n_cells < 1.0 || ((n_cells * delta - len) / len).abs() > 1e-9 {
        return Err(FtError::Config(format!(
            "domain length {} is not a multiple of delta = {}",
            len, delta
        )));
    }
    let u0_delta = PiecewiseConstantFn::project_cell_averages(u0, domain, n_cells as usize)?;
    let hull = u0_delta.value_hull();
    let ranges = sf.required_ranges(hull, delta)?;
    let sfd = sf.interpolate(delta, &ranges)?;
    let mut state = FrontTrackingState::initialize(sfd, &u0_delta, options)?;
    state.advance(end_time)?;
    Ok(FrontTrackingRun {
        solution: state.sample_solution(),
        datum: u0_delta,
        state,
    })
}

/// [`run_front_tracking`] returning only the solution staircase.
pub fn front_tracking_solve(
    sf: &SpatialFlux,
    u0: impl Fn(f64) -> f64,
    delta: f64,
    end_time: f64,
    domain: (f64, f64),
) -> Result<PiecewiseConstantFn> {
    run_front_tracking(sf, u0, delta, end_time, domain, TrackingOptions::default())
        .map(|run| run.solution)
}
