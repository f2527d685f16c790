use fracstab::fode::{solve_nonlinear_with, PeceOptions, TimeGrid, Trajectory};
use fracstab::io::{read_json, sidecar_path};

fn quadratic(alpha: f64, ceiling: f64) -> Trajectory<f64> {
    let opts = PeceOptions { blow_up_ceiling: ceiling, ..PeceOptions::default() };
    let grid = TimeGrid::graded(4.0, 64, 1.5).unwrap();
    solve_nonlinear_with(alpha, |u: &[f64], o: &mut [f64]| o[0] = u[0] * u[0], &[1.0], &grid, opts).unwrap()
}

#[test]
fn repeated_runs_write_identical_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.csv"), dir.path().join("b.csv"));
    quadratic(0.6, 1e6).write(&a).unwrap();
    quadratic(0.6, 1e6).write(&b).unwrap();
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(std::fs::read(sidecar_path(&a)).unwrap(), std::fs::read(sidecar_path(&b)).unwrap());
}

#[test]
fn truncated_runs_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("blow.csv");
    let tr = quadratic(0.9, 50.0);
    let cut = tr.blow_up.expect("u' = u² from 1 blows up before t = 4");
    tr.write(&path).unwrap();

    let side = read_json(&sidecar_path(&path)).unwrap();
    assert_eq!(side["truncated"]["index"], cut.index);
    assert_eq!(side["spacing"]["kind"], "graded");
    assert_eq!(side["version"], env!("CARGO_PKG_VERSION"));

    let back: Trajectory<f64> = Trajectory::read(&path).unwrap();
    assert_eq!(back.times, tr.times);
    assert_eq!(back.states, tr.states);
    assert_eq!(back.blow_up, tr.blow_up);
    assert_eq!(back.grid.nodes(), tr.grid.nodes());
    assert_eq!(back.scheme, tr.scheme);
    assert!(back.complete().is_err());
}

#[test]
fn tables_without_sidecars_are_readable() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bare.csv");
    std::fs::write(&path, "t,x_1\n0,1\n0.5,0.25\n1,0.125\n").unwrap();
    let tr: Trajectory<f64> = Trajectory::read(&path).unwrap();
    assert_eq!(tr.len(), 3);
    assert_eq!(tr.component(0), vec![1.0, 0.25, 0.125]);
    assert!(!tr.is_truncated());
    std::fs::write(&path, "time,x\n0,1\n").unwrap();
    assert!(Trajectory::<f64>::read(&path).is_err());
}
