use steklov::analysis::{
    convergence_study, reports_to_csv, ExactSolution, Selection, StudyOptions, StudyProblem,
};
use steklov::boundary::{BoundarySpec, Builtin};
use steklov::quadrature::Tolerance;
use steklov::solvers::{solve, ProblemKind};
use steklov::spectrum::{build_spectrum, read_cache, write_cache, SelectionPolicy};
use steklov::{Error, Rectangle};

#[test]
fn solving_from_a_cache_matches_a_fresh_build() {
    let rect = Rectangle::new(0.8).unwrap();
    let fresh = build_spectrum(&rect, SelectionPolicy::Global(30)).unwrap();
    let cached = read_cache(&write_cache(&fresh).unwrap()).unwrap();
    let g = Builtin::F3.function(&rect, 1.0);
    let a = solve(
        ProblemKind::Dirichlet,
        &g,
        &fresh,
        false,
        None,
        Tolerance::default(),
    )
    .unwrap();
    let b = solve(
        ProblemKind::Dirichlet,
        &g,
        &cached,
        false,
        None,
        Tolerance::default(),
    )
    .unwrap();
    for (x, y) in a.coefficients.values.iter().zip(&b.coefficients.values) {
        assert!((x - y).abs() <= 1e-12);
    }
}

#[test]
fn grid_output_is_deterministic() {
    let rect = Rectangle::unit_square();
    let spec = build_spectrum(&rect, SelectionPolicy::PerFamily(3)).unwrap();
    let g = Builtin::Bd1.function(&rect, 1.0);
    let csv = || {
        let u = solve(
            ProblemKind::Neumann,
            &g,
            &spec,
            false,
            None,
            Tolerance::default(),
        )
        .unwrap();
        let exact = |x: f64, y: f64| ExactSolution::Linear.value(x, y);
        u.eval_grid(21, 21).unwrap().to_csv(Some(&exact), 10)
    };
    let first = csv();
    assert_eq!(first, csv());
    assert_eq!(first.lines().count(), 1 + 21 * 21);
    assert!(first.starts_with("x,y,u,exact,error\n"));
}

#[test]
fn incompatible_neumann_data_is_rejected() {
    let rect = Rectangle::unit_square();
    let spec = build_spectrum(&rect, SelectionPolicy::PerFamily(2)).unwrap();
    let g = Builtin::F2.function(&rect, 1.0);
    let err = solve(
        ProblemKind::Neumann,
        &g,
        &spec,
        false,
        None,
        Tolerance::default(),
    )
    .unwrap_err();
    assert!(matches!(err, Error::IncompatibleNeumann { .. }), "{err}");
}

#[test]
fn boundary_specs_from_the_command_line_forms() {
    let rect = Rectangle::unit_square();
    let builtin = BoundarySpec::from_cli("builtin:bd3")
        .unwrap()
        .build(&rect, 1.0)
        .unwrap();
    let expr = BoundarySpec::from_cli("expr:exp(x)*sin(y)")
        .unwrap()
        .build(&rect, 1.0)
        .unwrap();
    let sides = BoundarySpec::from_cli(r#"{"sides": {"G1": "2*(exp(1)*sin(y))", "G3": 0}}"#)
        .unwrap()
        .build(&rect, 1.0)
        .unwrap();
    let spec = build_spectrum(&rect, SelectionPolicy::PerFamily(2)).unwrap();
    let u = solve(
        ProblemKind::Robin { b: 1.0 },
        &sides,
        &spec,
        false,
        None,
        Tolerance::default(),
    )
    .unwrap();
    assert!(u.value(0.0, 0.0).is_finite());
    // bd3 on the right side is the Robin data of exp(x) sin(y)
    let s = steklov::Side::Right;
    assert!((builtin.value(&rect, s, 0.4) - 2.0 * 1f64.exp() * 0.4f64.sin()).abs() < 1e-14);
    assert!((expr.value(&rect, s, 0.4) - 1f64.exp() * 0.4f64.sin()).abs() < 1e-14);
}

#[test]
fn study_reports_round_trip_through_csv() {
    let rect = Rectangle::unit_square();
    let problem = StudyProblem {
        kind: ProblemKind::Robin { b: 1.0 },
        data: Builtin::Bd3.function(&rect, 1.0),
        rect,
        exact: Some(ExactSolution::ExpSin),
    };
    let study = convergence_study(
        &problem,
        Selection::Global,
        &[1, 2, 3],
        &StudyOptions::default(),
    )
    .unwrap();
    assert!(study.monotone);
    let reports = study.reports();
    for r in &reports {
        assert!(r.robin_bound.unwrap() > 0.0);
        assert!(r.err_sup_interior.unwrap() <= r.err_sup_boundary * 1.000001);
    }
    let csv = reports_to_csv(&reports);
    assert_eq!(csv.lines().count(), 4);
    assert!(convergence_study(
        &problem,
        Selection::Global,
        &[3, 2],
        &StudyOptions::default()
    )
    .is_err());
}
