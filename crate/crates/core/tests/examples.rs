use std::path::Path;

use shiftpart::instance::InstanceSpec;
use shiftpart::{flat_value_scan, QuadratureGrid, ShiftResult, ShiftSolver};

fn solve(spec: InstanceSpec) -> ShiftResult {
    let inst = spec.build(Path::new(".")).unwrap();
    let grid = QuadratureGrid::build(&inst.source, &inst.resolution).unwrap();
    ShiftSolver::new(&grid, &inst.spec, &inst.targets, inst.solve.clone())
        .unwrap()
        .solve()
        .unwrap()
}

#[test]
fn sup_norm_small_mass_does_not_partition() {
    let low = solve(InstanceSpec::sup_norm_example(1.0 / 32.0, 512));
    assert!((low.boundary.boundary_measure - 1.0 / 16.0).abs() < 5e-3);
    assert!(!low.boundary.is_mu_partition);
    let mid = solve(InstanceSpec::sup_norm_example(1.0 / 8.0, 512));
    assert!(mid.boundary.is_mu_partition);
}

#[test]
fn taxicab_even_split_ties_the_middle_band() {
    let half = solve(InstanceSpec::taxicab_example(0.5, 512));
    assert!((half.boundary.boundary_measure - 0.125).abs() < 5e-3);
    let quarter = solve(InstanceSpec::taxicab_example(0.25, 512));
    assert!(quarter.boundary.is_mu_partition);
}

#[test]
fn predicted_sets_from_atoms() {
    for (spec, expected) in [
        (
            InstanceSpec::sup_norm_example(0.5, 1024),
            [(1.0 / 16.0, 7.0 / 16.0), (9.0 / 16.0, 15.0 / 16.0)],
        ),
        (
            InstanceSpec::taxicab_example(0.5, 1024),
            [(1.0 / 16.0, 7.0 / 16.0), (9.0 / 16.0, 15.0 / 16.0)],
        ),
    ] {
        let inst = spec.build(Path::new(".")).unwrap();
        let grid = QuadratureGrid::build(&inst.source, &inst.resolution).unwrap();
        let scan = flat_value_scan(&grid, &inst.spec, &inst.targets, 0, 1, inst.scan).unwrap();
        let set = scan.predicted_partition_set();
        assert_eq!(set.len(), 2, "{set:?}");
        for (got, want) in set.iter().zip(expected) {
            assert!(
                (got.0 - want.0).abs() < 2e-3 && (got.1 - want.1).abs() < 2e-3,
                "{set:?}"
            );
        }
    }
}
