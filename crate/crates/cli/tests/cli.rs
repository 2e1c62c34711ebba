use std::fs;
use std::path::Path;

use korteweg_cli::{parse_config, run_cli_with, Config, EXIT_FAILURE, EXIT_OK, EXIT_USAGE};
use korteweg_core::models::{ModelKind, Route};
use korteweg_core::timestep::Preset;
use proptest::prelude::*;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("korteweg").chain(args.iter().copied());
    let code = run_cli_with(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn config_file(dir: &Path, body: &str) -> String {
    let out = dir.join("out");
    let path = dir.join("run.cfg");
    fs::write(&path, format!("output_dir = {}\n{body}", out.display())).unwrap();
    path.display().to_string()
}

#[test]
fn empty_input_gives_defaults() {
    assert_eq!(parse_config("").unwrap(), Config::default());
    assert_eq!(parse_config("# only a comment\n\n").unwrap(), Config::default());
}

#[test]
fn equal_phase_volumes_are_rejected() {
    let e = parse_config("tau1 = 1.0\ntau2 = 1.0\n").unwrap_err();
    assert!(e.message.contains("tau* must be nonzero"), "{e}");
    assert_eq!((e.line, e.key.as_str()), (2, "tau2"));
}

#[test]
fn unknown_and_malformed_keys_name_line_and_key() {
    let e = parse_config("n = 32\nviscosity = 1\n").unwrap_err();
    assert_eq!((e.line, e.key.as_str()), (2, "viscosity"));
    let e = parse_config("n = many\n").unwrap_err();
    assert_eq!((e.line, e.key.as_str()), (1, "n"));
    let e = parse_config("Model = nsk\n").unwrap_err();
    assert_eq!(e.key, "Model");
    let e = parse_config("eta = -1\n").unwrap_err();
    assert_eq!((e.line, e.key.as_str()), (1, "eta"));
    let e = parse_config("n = 4\n").unwrap_err();
    assert_eq!(e.key, "n");
    let e = parse_config("grids = 64,100\n").unwrap_err();
    assert_eq!(e.key, "grids");
    let e = parse_config("identities = stress_xy\n").unwrap_err();
    assert_eq!(e.key, "identities");
    let e = parse_config("n = 32\nn = 64\n").unwrap_err();
    assert_eq!((e.line, e.key.as_str()), (2, "n"));
}

#[test]
fn default_dump_round_trips() {
    let cfg = Config::default();
    assert_eq!(parse_config(&cfg.dump()).unwrap(), cfg);
}

proptest! {
    #[test]
    fn dump_then_parse_is_identity(
        model in 0usize..5,
        gibbs in any::<bool>(),
        tau2 in 0.1f64..2.0,
        contrast in 0.01f64..2.0,
        lambda in 0.0f64..1.0,
        eps in 1e-6f64..1.0,
        n in 8usize..512,
        length in 0.1f64..100.0,
        preset in 0usize..4,
        rho0 in 0.5f64..3.0,
        seed in any::<u64>(),
        end_time in 0.0f64..10.0,
        dt in proptest::option::of(1e-6f64..1.0),
        output_every in 1usize..1000,
        base in 8usize..64,
        levels in 2usize..4,
        tol in 1e-14f64..1e-6,
    ) {
        let mut cfg = Config {
            model: ModelKind::ALL[model],
            route: if gibbs { Route::Gibbs } else { Route::Korteweg },
            n,
            length,
            preset: Preset::ALL[preset],
            end_time,
            dt,
            output_every,
            grids: (0..levels).map(|l| base << l).collect(),
            ..Config::default()
        };
        cfg.params.tau2 = tau2;
        cfg.params.tau1 = tau2 + contrast;
        cfg.params.lambda = lambda;
        cfg.params.eps = eps;
        cfg.preset_params.rho0 = rho0;
        cfg.preset_params.seed = seed;
        cfg.thresholds.algebraic = tol;
        cfg.residuals = vec!["work_flux".into(), "entropy/nsk".into()];
        cfg.identities = vec!["stress".into(), "kinematic".into()];
        prop_assert_eq!(parse_config(&cfg.dump()).unwrap(), cfg);
    }
}

#[test]
fn verify_all_identities_passes() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config_file(dir.path(), "grids = 64,128\n");
    let (code, out, err) = run(&["verify", &cfg, "--identity", "all"]);
    assert_eq!(code, EXIT_OK, "{out}{err}");
    assert!(out.contains("28 of 28 identities pass"));
    for line in out.lines().filter(|l| l.contains(" 128 ")) {
        let order = line.split_whitespace().last().unwrap();
        assert!(order == "exact" || order.parse::<f64>().unwrap() >= 1.9, "{line}");
    }
    let csv = fs::read_to_string(dir.path().join("out/verify.csv")).unwrap();
    assert!(csv.starts_with("identity,n,linf,l2,order,term,term_linf\n"));
    assert!(csv.lines().count() > 56);
}

#[test]
fn mutated_checker_fails_with_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config_file(dir.path(), "grids = 32,64\n");
    let (code, out, _) = run(&["verify", &cfg, "--identity", "stress_ac", "--mutation", "omit_zeta_eps"]);
    assert_eq!(code, EXIT_FAILURE);
    assert!(out.contains("FAIL"));
    let (code, _, err) = run(&["verify", &cfg, "--mutation", "typo"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("typo"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["frobnicate"]).0, EXIT_USAGE);
    assert_eq!(run(&["verify", "x.cfg", "--bogus"]).0, EXIT_USAGE);
    assert_eq!(run(&[]).0, EXIT_USAGE);
    let (code, _, err) = run(&["simulate", "/nonexistent/run.cfg"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("cannot read"));
    let dir = tempfile::tempdir().unwrap();
    let cfg = config_file(dir.path(), "tau1 = 1.0\ntau2 = 1.0\n");
    let (code, _, err) = run(&["simulate", &cfg]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("tau* must be nonzero"));
    assert!(!dir.path().join("out").exists());
    let cfg = config_file(dir.path(), "dim = 2\n");
    assert_eq!(run(&["simulate", &cfg]).0, EXIT_USAGE);
    assert_eq!(run(&["--help"]).0, EXIT_OK);
}

#[test]
fn uniform_simulation_keeps_entropy_constant() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config_file(dir.path(), "preset = uniform\nrho0 = 2\nend_time = 0.5\noutput_every = 2\nn = 32\n");
    let (code, out, err) = run(&["simulate", &cfg]);
    assert_eq!(code, EXIT_OK, "{out}{err}");
    let csv = fs::read_to_string(dir.path().join("out/diagnostics.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next().unwrap(), "t,mass,momentum,energy,entropy,sigma_integral,min_theta,min_sigma");
    let entropy: Vec<f64> = lines.map(|l| l.split(',').nth(4).unwrap().parse().unwrap()).collect();
    assert!(entropy.len() > 2);
    assert!(entropy.iter().all(|s| (s - entropy[0]).abs() <= 1e-14 * entropy[0].abs().max(1.0)));
    let snap = fs::read_to_string(dir.path().join("out/snapshot_0000_rho.csv")).unwrap();
    assert!(snap.starts_with("x,value\n"));
    assert_eq!(snap.lines().count(), 33);
    let leftovers = fs::read_dir(dir.path().join("out"))
        .unwrap()
        .filter(|e| e.as_ref().unwrap().file_name().to_string_lossy().ends_with(".tmp"));
    assert_eq!(leftovers.count(), 0);
}

#[test]
fn simulation_with_residual_columns() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config_file(
        dir.path(),
        "model = nsac_reduced\nn = 32\nend_time = 0.05\nresiduals = work_flux,entropy_balance/nsac_reduced\n",
    );
    assert_eq!(run(&["simulate", &cfg]).0, EXIT_OK);
    let csv = fs::read_to_string(dir.path().join("out/diagnostics.csv")).unwrap();
    assert!(csv.lines().next().unwrap().ends_with(",work_flux,entropy_balance/nsac_reduced"));
}

#[test]
fn unstable_fixed_step_exits_one_and_keeps_output() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config_file(dir.path(), "n = 32\ndt = 5\nend_time = 100\noutput_every = 1\n");
    let (code, _, err) = run(&["simulate", &cfg]);
    assert_eq!(code, EXIT_FAILURE);
    assert!(err.contains("run stopped"));
    assert!(dir.path().join("out/diagnostics.csv").exists());
}

#[test]
fn converge_prints_orders_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config_file(dir.path(), "identities = kinematic,work_flux\ngrids = 32,64,128\n");
    let (code, out, _) = run(&["converge", &cfg]);
    assert_eq!(code, EXIT_OK);
    assert!(out.lines().any(|l| l.starts_with("kinematic") && l.contains(" 128 ")));
    assert!(out.lines().any(|l| l.starts_with("work_flux") && l.ends_with("exact")));
    let csv = fs::read_to_string(dir.path().join("out/converge.csv")).unwrap();
    assert_eq!(csv.lines().count(), 5);
}

#[test]
fn dump_config_prints_effective_values() {
    let (code, out, _) = run(&["dump-config"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(parse_config(&out).unwrap(), Config::default());
    let dir = tempfile::tempdir().unwrap();
    let cfg = config_file(dir.path(), "model = nsch_general\nn = 128\n");
    let (code, out, _) = run(&["dump-config", &cfg]);
    assert_eq!(code, EXIT_OK);
    let parsed = parse_config(&out).unwrap();
    assert_eq!(parsed.model, ModelKind::NschGeneral);
    assert_eq!(parsed.n, 128);
}
