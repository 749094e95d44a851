//! Cross-module oracle checks: the exact front tracking evolution against
//! an independently computed fine-grid upwind (Godunov) solution.

use fronttrack::{
    front_tracking_solve, fv_solve, MonotoneFlux, PiecewiseConstantFn, SpatialFlux,
};

/// For a single Riemann datum the wave fan, evaluated at time T before any
/// boundary effect, must match a fine-grid Godunov solve of the same datum
/// within C * dx_fine. The shock case sits at 0.8 * dx; the rarefaction case
/// carries an extra slowly-growing corner contribution, still well below
/// C = 6 at this resolution.
#[test]
fn fan_matches_fine_godunov_solve() {
    let f = MonotoneFlux::burgers((0.0, 2.5)).unwrap();
    let sf = SpatialFlux::new(vec![], vec![f]).unwrap();
    let n_fine = 2048usize;
    let dx_fine = 2.0 / n_fine as f64;
    for (u_l, u_r) in [(0.5, 2.0), (2.0, 0.5)] {
        let u0 = move |x: f64| if x < 0.0 { u_l } else { u_r };
        let ft = front_tracking_solve(&sf, u0, 1.0 / 512.0, 0.4, (-1.0, 1.0)).unwrap();
        let fv = fv_solve(&sf, u0, n_fine, 0.4, 0.4, (-1.0, 1.0)).unwrap();
        let d = PiecewiseConstantFn::l1_distance(&ft, &fv, (-1.0, 1.0));
        assert!(
            d <= 6.0 * dx_fine,
            "({}, {}): distance {} exceeds {}",
            u_l,
            u_r,
            d,
            6.0 * dx_fine
        );
    }
}

/// Three subdomains, two interfaces: transport into Burgers into a steeper
/// linear flux. The exact evolution and the independent upwind solve must
/// agree within the upwind scheme's own accuracy, and the adapted-state
/// machinery must hold at both interfaces at once.
#[test]
fn multi_interface_problem_cross_validates() {
    let sf = SpatialFlux::new(
        vec![-0.3, 0.4],
        vec![
            MonotoneFlux::identity((0.2, 2.6)).unwrap(),
            MonotoneFlux::burgers((0.2, 2.6)).unwrap(),
            MonotoneFlux::linear(2.0, (0.02, 2.6)).unwrap(),
        ],
    )
    .unwrap();
    let u0 = |x: f64| if x < -0.7 { 0.5 } else { 2.0 };

    // chain of the left tail: 0.5 -> sqrt(2*0.5) = 1 -> 0.5/2 = 0.25
    assert_eq!(sf.adapted_constants(0.5).unwrap(), vec![0.5, 1.0, 0.25]);

    let run = fronttrack::run_front_tracking(
        &sf,
        u0,
        1.0 / 128.0,
        0.8,
        (-1.0, 1.0),
        fronttrack::TrackingOptions::default(),
    )
    .unwrap();
    let stats = run.state.stats();
    assert!(stats.max_rh_residual < 1e-10);
    assert!(stats.max_interface_residual < 1e-10);
    assert!(stats.max_tv_drift <= 1e-12);
    assert!(stats.interface_crossings > 0);

    let fv = fv_solve(&sf, u0, 2048, 0.25, 0.8, (-1.0, 1.0)).unwrap();
    let d = PiecewiseConstantFn::l1_distance(&run.solution, &fv, (-1.0, 1.0));
    assert!(d < 0.05, "FT vs FV distance {}", d);
}

/// The same comparison across a flux interface: transport-to-Burgers Riemann
/// datum placed at the interface itself.
#[test]
fn interface_fan_matches_fine_godunov_solve() {
    let sf = SpatialFlux::new(
        vec![0.0],
        vec![
            MonotoneFlux::identity((0.0, 2.5)).unwrap(),
            MonotoneFlux::burgers((0.0, 2.5)).unwrap(),
        ],
    )
    .unwrap();
    let n_fine = 2048usize;
    let dx_fine = 2.0 / n_fine as f64;
    let u0 = |x: f64| if x < 0.0 { 0.5 } else { 2.0 };
    let ft = front_tracking_solve(&sf, u0, 1.0 / 512.0, 0.4, (-1.0, 1.0)).unwrap();
    let fv = fv_solve(&sf, u0, n_fine, 0.4, 0.4, (-1.0, 1.0)).unwrap();
    let d = PiecewiseConstantFn::l1_distance(&ft, &fv, (-1.0, 1.0));
    assert!(d <= 6.0 * dx_fine, "distance {} exceeds {}", d, 6.0 * dx_fine);
}
