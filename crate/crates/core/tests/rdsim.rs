mod common;

use std::f64::consts::PI;

use common::*;
use fracstab::fode::{solve_nonlinear, Scheme, TimeGrid, Trajectory};
use fracstab::io::read_csv;
use fracstab::linalg::{eigenvalues, DenseMatrix};
use fracstab::rdsim::*;
use fracstab::specfun::mittag_leffler_real;
use fracstab::stability::{mode_matrix, turing_roots, RDSpec};
use fracstab::Error;
use proptest::prelude::*;
use rand::Rng;

fn interval(length: f64, bc: Boundary, modes: usize) -> DomainSpec<f64> {
    DomainSpec::interval(length, bc, modes).unwrap()
}

fn uniform(t_end: f64, steps: usize) -> TimeGrid<f64> {
    TimeGrid::uniform(t_end, steps).unwrap()
}

fn turing_spec(alpha: f64) -> RDSpec<f64> {
    RDSpec::new(DenseMatrix::from_rows(&[vec![1.0, -1.0], vec![2.0, -1.5]]).unwrap(), vec![0.01, 1.0], alpha).unwrap()
}

fn turing_reaction(u: &[f64], out: &mut [f64]) {
    out[0] = u[0] - u[1] - u[0].powi(3);
    out[1] = 2.0 * u[0] - 1.5 * u[1] - u[1].powi(3);
}

#[test]
fn eigenbasis_examples() {
    let mus = eigenbasis(&interval(PI, Boundary::Neumann, 3)).mus();
    for (m, e) in mus.iter().zip([0.0, 1.0, 4.0]) {
        assert!((m - e).abs() < 1e-14);
    }
    let mus = eigenbasis(&interval(1.0, Boundary::Dirichlet, 2)).mus();
    assert!((mus[0] - PI * PI).abs() < 1e-12 && (mus[1] - 4.0 * PI * PI).abs() < 1e-12);

    let rect = eigenbasis(&DomainSpec::rectangle(PI, PI, Boundary::Neumann, 4).unwrap());
    let mut merged: Vec<f64> = (0..4).flat_map(|k| (0..4).map(move |l| (k * k + l * l) as f64)).collect();
    merged.sort_by(f64::total_cmp);
    assert_eq!(rect.len(), 16);
    for (m, e) in rect.mus().iter().zip(&merged) {
        assert!((m - e).abs() < 1e-12);
    }
    assert!(rect.mus().windows(2).all(|w| w[0] <= w[1]));
}

#[test]
fn eigenbasis_is_orthonormal() {
    for domain in [
        interval(2.5, Boundary::Neumann, 5),
        interval(2.5, Boundary::Dirichlet, 5),
        DomainSpec::rectangle(1.0, 2.0, Boundary::Dirichlet, 3).unwrap(),
        DomainSpec::rectangle(1.5, 1.0, Boundary::Neumann, 3).unwrap(),
    ] {
        let basis = eigenbasis(&domain);
        let lengths = domain.lengths();
        for b in 0..basis.len() {
            for c in 0..basis.len() {
                let ip = if lengths.len() == 1 {
                    gl_integrate(|x| basis.eval(b, &[x]) * basis.eval(c, &[x]), 0.0, lengths[0], 40)
                } else {
                    gl_integrate(
                        |x| gl_integrate(|y| basis.eval(b, &[x, y]) * basis.eval(c, &[x, y]), 0.0, lengths[1], 20),
                        0.0,
                        lengths[0],
                        20,
                    )
                };
                let expected = if b == c { 1.0 } else { 0.0 };
                assert!((ip - expected).abs() < 1e-10, "{domain:?}: <{b},{c}> = {ip}");
            }
            let mean = if lengths.len() == 1 {
                gl_integrate(|x| basis.eval(b, &[x]), 0.0, lengths[0], 40)
            } else {
                gl_integrate(|x| gl_integrate(|y| basis.eval(b, &[x, y]), 0.0, lengths[1], 20), 0.0, lengths[0], 20)
            };
            assert!((mean - basis.integral(b)).abs() < 1e-10);
        }
    }
}

#[test]
fn eigenfunctions_solve_the_eigenproblem() {
    // −Δw = μw checked by central differences at interior points.
    let basis = eigenbasis(&DomainSpec::rectangle(2.0, 1.0, Boundary::Dirichlet, 3).unwrap());
    let h = 1e-4;
    for b in 0..basis.len() {
        let (x, y): (f64, f64) = (0.37, 0.61);
        let w = basis.eval(b, &[x, y]);
        let lap = (basis.eval(b, &[x + h, y])
            + basis.eval(b, &[x - h, y])
            + basis.eval(b, &[x, y + h])
            + basis.eval(b, &[x, y - h])
            - 4.0 * w)
            / (h * h);
        assert!((-lap - basis.functions[b].mu * w).abs() < 1e-5 * basis.functions[b].mu, "b {b}");
    }
}

#[test]
fn transform_round_trip() {
    let mut r = rng(4);
    for domain in [
        interval(3.0, Boundary::Neumann, 12),
        interval(3.0, Boundary::Dirichlet, 12),
        DomainSpec::rectangle(1.0, 2.0, Boundary::Neumann, 6).unwrap(),
        DomainSpec::rectangle(1.0, 2.0, Boundary::Dirichlet, 6).unwrap(),
    ] {
        let grid = Collocation::dealiased(&domain).unwrap();
        let coeffs: Vec<f64> = (0..2 * grid.basis().len()).map(|_| r.gen_range(-1.0..1.0)).collect();
        let f = Field::from_coefficients(2, grid.basis().len(), coeffs.clone()).unwrap();
        let back = Field::from_values(&grid, &f.values(&grid)).unwrap();
        for (a, b) in back.coefficients().iter().zip(&coeffs) {
            assert!((a - b).abs() < 1e-10, "{domain:?}");
        }
        let l2: f64 = coeffs.iter().map(|c| c * c).sum::<f64>().sqrt();
        assert!((f.l2_norm() - l2).abs() < 1e-14);
    }
}

#[test]
fn under_resolved_grid_is_rejected() {
    assert!(Collocation::new(&interval(1.0, Boundary::Neumann, 8), 7).is_err());
    assert!(Collocation::new(&interval(1.0, Boundary::Dirichlet, 8), 8).is_err());
    assert!(Collocation::new(&interval(1.0, Boundary::Dirichlet, 8), 9).is_ok());
}

#[test]
fn linear_constant_mode_is_stationary() {
    let d = interval(PI, Boundary::Neumann, 6);
    let spec = RDSpec::new(DenseMatrix::zeros(1), vec![1.0], 0.5).unwrap();
    let u0 = Field::single_mode(1, 6, 0, &[1.0]).unwrap();
    let tr = simulate_linear_rd(&spec, &d, &u0, &uniform(10.0, 20), RdOptions::default()).unwrap();
    for m in 0..tr.len() {
        assert_eq!(tr.field(m).coefficients(), u0.coefficients());
    }
    assert_eq!(tr.trajectory.scheme, Scheme::ModeResolvent);
}

#[test]
fn linear_dirichlet_sine_decays_like_mittag_leffler() {
    let d = interval(PI, Boundary::Dirichlet, 4);
    let grid = Collocation::dealiased(&d).unwrap();
    let u0 = Field::from_fn(&grid, 1, |x| vec![x[0].sin()]).unwrap();
    let amp = (PI / 2.0).sqrt();
    assert!((u0.coefficients()[0] - amp).abs() < 1e-12);
    let spec = RDSpec::new(DenseMatrix::zeros(1), vec![1.0], 0.7).unwrap();
    let tr = simulate_linear_rd(&spec, &d, &u0, &uniform(5.0, 25), RdOptions::default()).unwrap();
    for (m, &t) in tr.times().iter().enumerate() {
        let e = mittag_leffler_real(0.7, 1.0, -t.powf(0.7)).unwrap();
        assert!((tr.mode_series(0)[m][0] - amp * e).abs() < 1e-10);
    }
}

#[test]
fn linear_modes_do_not_exchange_energy() {
    let d = interval(PI, Boundary::Neumann, 8);
    let spec = turing_spec(0.6);
    let grid = uniform(4.0, 16);
    let mut r = rng(8);
    let coeffs: Vec<f64> = (0..16).map(|_| r.gen_range(-1.0..1.0)).collect();
    let full = simulate_linear_rd(
        &spec,
        &d,
        &Field::from_coefficients(2, 8, coeffs.clone()).unwrap(),
        &grid,
        RdOptions::default(),
    )
    .unwrap();
    for b in 0..8 {
        let single = Field::single_mode(2, 8, b, &[coeffs[b], coeffs[8 + b]]).unwrap();
        let alone = simulate_linear_rd(&spec, &d, &single, &grid, RdOptions::default()).unwrap();
        for m in 0..grid.steps() + 1 {
            let f = alone.field(m);
            for c in 0..8 {
                let leak = f.mode(c).iter().map(|x| x.abs()).fold(0.0, f64::max);
                if c != b {
                    assert!(leak < 1e-10);
                }
            }
            let (x, y) = (full.mode_series(b)[m].clone(), alone.mode_series(b)[m].clone());
            assert!((x[0] - y[0]).abs() < 1e-12 && (x[1] - y[1]).abs() < 1e-12);
        }
    }
}

#[test]
fn linear_turing_mode_follows_its_leading_eigenvalue() {
    let alpha = 0.8;
    let spec = turing_spec(alpha);
    let d = interval(PI, Boundary::Neumann, 12);
    let k = 7;
    let mu = (k * k) as f64;
    let lam = eigenvalues(&mode_matrix(&spec, mu).unwrap()).unwrap().iter().map(|z| z.re).fold(f64::MIN, f64::max);
    assert!(lam > 0.0);
    let rate = lam.powf(1.0 / alpha);
    let t_end = 30.0 / rate;
    let u0 = Field::single_mode(2, 12, k, &[1e-3, 1e-3]).unwrap();
    let tr = simulate_linear_rd(&spec, &d, &u0, &uniform(t_end, 200), RdOptions::default()).unwrap();
    let fit = fit_samples(tr.times(), &tr.mode_norms(k), (0.5 * t_end, t_end), RateKind::ExponentialGrowth).unwrap();
    assert!((fit.value / rate - 1.0).abs() < 0.02, "{} vs {rate}", fit.value);
}

#[test]
fn linear_neumann_mean_is_conserved() {
    let d = interval(2.0, Boundary::Neumann, 10);
    let grid = Collocation::dealiased(&d).unwrap();
    let u0 = Field::from_fn(&grid, 2, |x| vec![1.0 + x[0] * (2.0 - x[0]), (3.0 * x[0]).cos()]).unwrap();
    let spec = RDSpec::new(DenseMatrix::zeros(2), vec![0.3, 1.7], 0.4).unwrap();
    let tr = simulate_linear_rd(&spec, &d, &u0, &uniform(20.0, 40), RdOptions::default()).unwrap();
    let m0 = tr.means(0);
    for m in 0..tr.len() {
        let mm = tr.means(m);
        assert!((mm[0] - m0[0]).abs() < 1e-9 && (mm[1] - m0[1]).abs() < 1e-9);
    }
}

#[test]
fn rectangle_product_mode_decays_with_its_eigenvalue() {
    let d = DomainSpec::rectangle(1.0, 2.0, Boundary::Dirichlet, 3).unwrap();
    let basis = eigenbasis(&d);
    let b = basis.position(&[2, 1]).unwrap();
    let mu = basis.functions[b].mu;
    assert!((mu - (4.0 * PI * PI + PI * PI / 4.0)).abs() < 1e-12);
    let spec = RDSpec::new(DenseMatrix::zeros(1), vec![0.05], 0.5).unwrap();
    let u0 = Field::single_mode(1, basis.len(), b, &[1.0]).unwrap();
    let tr = simulate_linear_rd(&spec, &d, &u0, &uniform(2.0, 10), RdOptions::default()).unwrap();
    for (m, &t) in tr.times().iter().enumerate() {
        let e = mittag_leffler_real(0.5, 1.0, -0.05 * mu * t.sqrt()).unwrap();
        assert!((tr.mode_series(b)[m][0] - e).abs() < 1e-12);
    }
}

#[test]
fn linear_output_stride_and_blow_up() {
    let d = interval(PI, Boundary::Neumann, 4);
    let spec = turing_spec(0.9);
    let u0 = Field::single_mode(2, 4, 2, &[1.0, 0.0]).unwrap();
    let opts = RdOptions { output_stride: 7, ..RdOptions::default() };
    let tr = simulate_linear_rd(&spec, &d, &u0, &uniform(2.0, 20), opts).unwrap();
    assert_eq!(tr.times().len(), 4);
    assert_eq!(*tr.times().last().unwrap(), 2.0);

    let opts = RdOptions { blow_up_ceiling: 10.0, ..RdOptions::default() };
    let tr = simulate_linear_rd(&spec, &d, &u0, &uniform(50.0, 50), opts).unwrap();
    assert!(tr.trajectory.is_truncated());
    assert!(tr.trajectory.norms().iter().all(|&x| x <= 10.0));

    let wrong = Field::single_mode(1, 4, 0, &[1.0]).unwrap();
    assert!(matches!(
        simulate_linear_rd(&spec, &d, &wrong, &uniform(1.0, 4), RdOptions::default()),
        Err(Error::DimensionMismatch { .. })
    ));
}

#[test]
fn nonlinear_without_reaction_matches_linear() {
    let d = interval(PI, Boundary::Dirichlet, 6);
    let grid = Collocation::dealiased(&d).unwrap();
    let u0 = Field::from_fn(&grid, 2, |x| vec![x[0] * (PI - x[0]), (2.0 * x[0]).sin()]).unwrap();
    let tg = uniform(3.0, 60);
    let nl = simulate_nonlinear_rd(
        0.6,
        |_: &[f64], o: &mut [f64]| o.fill(0.0),
        &[1.0, 0.2],
        &d,
        &u0,
        &tg,
        RdOptions::default(),
    )
    .unwrap();
    let spec = RDSpec::new(DenseMatrix::zeros(2), vec![1.0, 0.2], 0.6).unwrap();
    let li = simulate_linear_rd(&spec, &d, &u0, &tg, RdOptions::default()).unwrap();
    for (a, b) in nl.trajectory.states.iter().zip(&li.trajectory.states) {
        for (x, y) in a.iter().zip(b) {
            assert!((x - y).abs() < 1e-12);
        }
    }
}

#[test]
fn nonlinear_constant_field_follows_the_ode() {
    let length = 2.0;
    let d = interval(length, Boundary::Neumann, 8);
    let grid = Collocation::dealiased(&d).unwrap();
    let u0 = Field::from_fn(&grid, 1, |_| vec![0.1]).unwrap();
    let tg = uniform(10.0, 200);
    let g = |u: &[f64], o: &mut [f64]| o[0] = u[0] - u[0].powi(3);
    let pde = simulate_nonlinear_rd(0.7, g, &[1.0], &d, &u0, &tg, RdOptions::default()).unwrap();
    let ode = solve_nonlinear(0.7, g, &[0.1], &tg).unwrap();
    for m in 0..pde.len() {
        assert!((pde.means(m)[0] - ode.states[m][0]).abs() < 1e-8);
        let sup = pde.field(m).values(&grid)[0].iter().map(|v| (v - ode.states[m][0]).abs()).fold(0.0, f64::max);
        assert!(sup < 1e-8);
    }
}

#[test]
fn nonlinear_neumann_mean_is_conserved_without_reaction() {
    let d = DomainSpec::rectangle(1.0, 1.5, Boundary::Neumann, 5).unwrap();
    let grid = Collocation::dealiased(&d).unwrap();
    let u0 = Field::from_fn(&grid, 1, |x| vec![(PI * x[0]).cos() + x[1]]).unwrap();
    let tr = simulate_nonlinear_rd(
        0.5,
        |_: &[f64], o: &mut [f64]| o.fill(0.0),
        &[0.4],
        &d,
        &u0,
        &uniform(5.0, 50),
        RdOptions::default(),
    )
    .unwrap();
    let m0 = tr.means(0)[0];
    assert!(tr.trajectory.states.iter().enumerate().all(|(m, _)| (tr.means(m)[0] - m0).abs() < 1e-9));
}

#[test]
fn nonlinear_turing_pattern_selects_a_window_mode() {
    let alpha = 0.8;
    let d = interval(PI, Boundary::Neumann, 16);
    let mut r = rng(3);
    let coeffs: Vec<f64> = (0..32).map(|_| 1e-3 * r.gen_range(-1.0..1.0)).collect();
    let u0 = Field::from_coefficients(2, 16, coeffs).unwrap();
    let opts = RdOptions { output_stride: 60, ..RdOptions::default() };
    let tr = simulate_nonlinear_rd(alpha, turing_reaction, &[0.01, 1.0], &d, &u0, &uniform(30.0, 600), opts).unwrap();
    assert!(!tr.trajectory.is_truncated());
    let (lo, hi) = turing_roots(1.0, -1.0, 2.0, -1.5, 0.01, 1.0).unwrap();
    let mus = tr.basis.mus();
    let inside: Vec<usize> = (0..16).filter(|&b| mus[b] > lo && mus[b] < hi).collect();
    let outside: Vec<usize> = (0..16).filter(|b| !inside.contains(b)).collect();
    let energy = tr.mode_energies();
    let sum = |m: usize, set: &[usize]| set.iter().map(|&b| energy[m][b]).sum::<f64>();
    // Linear phase: the first stored interval (t ≤ 3).
    assert!(sum(1, &inside) > 10.0 * sum(0, &inside));
    assert!(sum(1, &outside) < sum(0, &outside));
    let last = energy.len() - 1;
    let dominant = (1..16).max_by(|&a, &b| energy[last][a].total_cmp(&energy[last][b])).unwrap();
    assert!(mus[dominant] > lo && mus[dominant] < hi, "dominant mode {dominant}");
    assert!(energy[last][dominant] > 0.5);
}

#[test]
fn nonlinear_time_refinement_converges() {
    let d = interval(PI, Boundary::Neumann, 6);
    let grid = Collocation::dealiased(&d).unwrap();
    let u0 = Field::from_fn(&grid, 1, |x| vec![0.5 + 0.3 * x[0].cos()]).unwrap();
    let g = |u: &[f64], o: &mut [f64]| o[0] = u[0] * (1.0 - u[0]);
    let terminal: Vec<Vec<f64>> = [40, 80, 160]
        .iter()
        .map(|&n| {
            let tr = simulate_nonlinear_rd(0.7, g, &[0.5], &d, &u0, &uniform(2.0, n), RdOptions::default()).unwrap();
            tr.trajectory.last().unwrap().to_vec()
        })
        .collect();
    let diff = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
    let (d1, d2) = (diff(&terminal[0], &terminal[1]), diff(&terminal[1], &terminal[2]));
    assert!(d2 < d1 / 2.0, "{d1:e} {d2:e}");
}

#[test]
fn fit_rate_examples() {
    let t = log_space(1.0, 1e3, 60);
    let v: Vec<f64> = t.iter().map(|x| x.powf(-0.5)).collect();
    let f = fit_samples(&t, &v, (1.0, 1e3), RateKind::AlgebraicDecay).unwrap();
    assert!((f.value + 0.5).abs() < 1e-6);
    let t: Vec<f64> = (0..50).map(|i| 0.2 * i as f64).collect();
    let v: Vec<f64> = t.iter().map(|x| (0.3 * x).exp()).collect();
    let f = fit_samples(&t, &v, (0.0, 10.0), RateKind::ExponentialGrowth).unwrap();
    assert!((f.value - 0.3).abs() < 1e-6);

    // ‖u(t)‖ = E_{1/2}(−t^{1/2}) for the first Dirichlet mode of (0, π).
    let d = interval(PI, Boundary::Dirichlet, 2);
    let spec = RDSpec::new(DenseMatrix::zeros(1), vec![1.0], 0.5).unwrap();
    let u0 = Field::single_mode(1, 2, 0, &[1.0]).unwrap();
    let tr =
        simulate_linear_rd(&spec, &d, &u0, &TimeGrid::graded(1e4, 200, 2.0).unwrap(), RdOptions::default()).unwrap();
    let slope = fit_rate(&tr.trajectory, (1e2, 1e4), RateKind::AlgebraicDecay).unwrap();
    assert!((slope + 0.5).abs() < 0.025, "{slope}");

    assert!(matches!(fit_rate(&tr.trajectory, (1e2, 2e4), RateKind::AlgebraicDecay), Err(Error::InvalidParameter(_))));
    assert!(matches!(
        fit_rate(&tr.trajectory, (9.8e3, 1e4), RateKind::AlgebraicDecay),
        Err(Error::InsufficientData(_))
    ));
}

#[test]
fn fit_reads_back_written_trajectories() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("decay.csv");
    let d = interval(PI, Boundary::Dirichlet, 2);
    let spec = RDSpec::new(DenseMatrix::zeros(1), vec![1.0], 0.8).unwrap();
    let u0 = Field::single_mode(1, 2, 0, &[1.0]).unwrap();
    let tr =
        simulate_linear_rd(&spec, &d, &u0, &TimeGrid::graded(1e4, 200, 2.0).unwrap(), RdOptions::default()).unwrap();
    tr.write(&path).unwrap();
    let back: Trajectory<f64> = Trajectory::read(&path).unwrap();
    assert_eq!(back.alpha, 0.8);
    let a = fit_trajectory(&tr.trajectory, (1e2, 1e4), RateKind::AlgebraicDecay).unwrap();
    let b = fit_trajectory(&back, (1e2, 1e4), RateKind::AlgebraicDecay).unwrap();
    assert_eq!(a.value, b.value);
    assert!((a.value + 0.8).abs() < 0.04);
    let json = a.to_json();
    assert_eq!(json["kind"], "algebraic_decay");
    assert_eq!(json["samples"], a.samples);
}

#[test]
fn snapshot_and_energy_files() {
    let dir = tempfile::tempdir().unwrap();
    let d = DomainSpec::rectangle(1.0, 2.0, Boundary::Neumann, 3).unwrap();
    let grid = Collocation::dealiased(&d).unwrap();
    let u0 = Field::from_fn(&grid, 2, |x| vec![1.0 + (PI * x[0]).cos(), 0.5 * (PI * x[1] / 2.0).cos()]).unwrap();
    let spec = RDSpec::new(DenseMatrix::zeros(2), vec![0.1, 0.2], 0.5).unwrap();
    let tr = simulate_linear_rd(&spec, &d, &u0, &uniform(1.0, 4), RdOptions::default()).unwrap();

    let snap = dir.path().join("snap.csv");
    tr.write_snapshot(&snap, &grid, 0).unwrap();
    let (header, rows) = read_csv(&snap).unwrap();
    assert_eq!(header, ["x", "y", "u_1", "u_2"]);
    assert_eq!(rows.len(), grid.len());
    for row in &rows {
        assert!((row[2] - (1.0 + (PI * row[0]).cos())).abs() < 1e-12);
        assert!((row[3] - 0.5 * (PI * row[1] / 2.0).cos()).abs() < 1e-12);
    }
    let side = fracstab::io::read_json(&snap.with_extension("json")).unwrap();
    assert_eq!(side["index"], 0);
    assert_eq!(side["domain"]["bc"], "neumann");
    assert!(tr.write_snapshot(&snap, &grid, 99).is_err());

    let energy = dir.path().join("energy.csv");
    tr.write_mode_energy(&energy).unwrap();
    let (header, rows) = read_csv(&energy).unwrap();
    assert_eq!(header.len(), 1 + tr.basis.len());
    assert_eq!(header[0], "t");
    assert_eq!(rows.len(), 5);
    let e0 = tr.mode_energies();
    for (row, e) in rows.iter().zip(&e0) {
        for (x, y) in row[1..].iter().zip(e) {
            assert_eq!(x, y);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn band_limited_fields_round_trip(seed in 0u64..10_000, k in 1usize..20, dirichlet in any::<bool>(), length in 0.5f64..10.0) {
        let bc = if dirichlet { Boundary::Dirichlet } else { Boundary::Neumann };
        let d = interval(length, bc, k);
        let grid = Collocation::dealiased(&d).unwrap();
        let mut r = rng(seed);
        let coeffs: Vec<f64> = (0..k).map(|_| r.gen_range(-1.0..1.0)).collect();
        let f = Field::from_coefficients(1, k, coeffs.clone()).unwrap();
        let back = Field::from_values(&grid, &f.values(&grid)).unwrap();
        for (a, b) in back.coefficients().iter().zip(&coeffs) {
            prop_assert!((a - b).abs() < 1e-10);
        }
    }

    #[test]
    fn stable_modes_decay_algebraically(k in 12usize..16, alpha in prop::sample::select(vec![0.5, 0.8])) {
        let d = interval(PI, Boundary::Neumann, 16);
        let spec = turing_spec(alpha);
        let u0 = Field::single_mode(2, 16, k, &[1.0, 1.0]).unwrap();
        let tr = simulate_linear_rd(&spec, &d, &u0, &TimeGrid::graded(1e4, 300, 3.0).unwrap(), RdOptions::default()).unwrap();
        let f = fit_samples(tr.times(), &tr.mode_norms(k), (1e2, 1e4), RateKind::AlgebraicDecay).unwrap();
        prop_assert!((f.value + alpha).abs() <= 0.05 * alpha, "k {} slope {}", k, f.value);
    }
}
