//! Subcommand implementations.

use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;

use korteweg_core::constitutive::Material;
use korteweg_core::fields::{snapshot_csv, write_atomic, ScalarField};
use korteweg_core::reduction::{passes, summary_table, Identity, Manufactured, Mutation, ResidualReport};
use korteweg_core::timestep::{simulate as run_scenario, Scenario, Trajectory};

use crate::config::{parse_config, Config};
use crate::CliError;

pub fn load(path: &Path) -> Result<Config, CliError> {
    let text =
        std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    parse_config(&text).map_err(CliError::Config)
}

/// Expands names and groups, dropping repeats.
fn expand(names: &[String]) -> Result<Vec<Identity>, CliError> {
    let mut out: Vec<Identity> = Vec::new();
    for name in names {
        for id in Identity::parse_group(name)? {
            if !out.contains(&id) {
                out.push(id);
            }
        }
    }
    Ok(out)
}

fn write_output(dir: &Path, name: &str, contents: &str) -> Result<(), CliError> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::Usage(format!("cannot create {}: {e}", dir.display())))?;
    let path = dir.join(name);
    write_atomic(&path, contents).map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))
}

fn emit(out: &mut dyn Write, text: &str) {
    let _ = out.write_all(text.as_bytes());
}

pub fn scenario(cfg: &Config) -> Result<Scenario, CliError> {
    let material = Material::new(cfg.params)?;
    let mut sc = Scenario::new(cfg.model, material, cfg.grid(), cfg.preset);
    sc.route = cfg.route;
    sc.preset_params = cfg.preset_params;
    sc.end_time = cfg.end_time;
    sc.cfl = cfg.cfl;
    sc.output_every = cfg.output_every;
    sc.fixed_dt = cfg.dt;
    sc.residuals = expand(&cfg.residuals)?;
    Ok(sc)
}

fn write_snapshots(dir: &Path, tr: &Trajectory) -> Result<usize, CliError> {
    let mut files = 0;
    for (k, snap) in tr.snapshots.iter().enumerate() {
        let st = &snap.state;
        let mut fields: Vec<(&str, &ScalarField)> = vec![("rho", &st.rho), ("theta", &st.theta)];
        let names = ["u", "v"];
        for (axis, c) in st.u.comps().iter().enumerate() {
            fields.push((names[axis], c));
        }
        if let Some(chi) = &st.chi {
            fields.push(("chi", chi));
        }
        for (name, f) in fields {
            write_output(dir, &format!("snapshot_{k:04}_{name}.csv"), &snapshot_csv(f))?;
            files += 1;
        }
    }
    let mut index = String::from("index,t\n");
    for (k, snap) in tr.snapshots.iter().enumerate() {
        let _ = writeln!(index, "{k},{:e}", snap.t);
    }
    write_output(dir, "snapshots.csv", &index)?;
    Ok(files + 1)
}

pub fn simulate(cfg: &Config, out: &mut dyn Write) -> Result<(), CliError> {
    let sc = scenario(cfg)?;
    let tr = run_scenario(&sc)?;
    let dir = &cfg.output_dir;
    write_output(dir, "diagnostics.csv", &tr.diagnostics_csv())?;
    let files = write_snapshots(dir, &tr)?;

    let (first, last) = (&tr.diagnostics[0], tr.diagnostics.last().expect("initial row"));
    let rel = |a: f64, b: f64| if a == 0.0 { b - a } else { (b - a) / a.abs() };
    let mut s = String::new();
    let _ = writeln!(s, "model {} preset {} n {}", cfg.model, cfg.preset, cfg.n);
    let _ = writeln!(s, "steps {} final time {:.6}", tr.steps, tr.final_time());
    let _ = writeln!(s, "mass drift {:.3e}", rel(first.mass, last.mass));
    let _ = writeln!(s, "energy drift {:.3e}", rel(first.energy, last.energy));
    let _ = writeln!(s, "entropy change {:.6e}", last.entropy - first.entropy);
    let _ = writeln!(s, "entropy production {:.6e}", last.sigma_integral);
    let _ = writeln!(s, "budget residual {:.3e}", last.entropy - first.entropy - last.sigma_integral);
    let _ = writeln!(s, "wrote diagnostics.csv and {files} snapshot files to {}", dir.display());
    emit(out, &s);

    match &tr.abort {
        Some(a) => Err(CliError::Failure(format!("run stopped at step {} (t = {:e}): {}", a.step, a.t, a.error))),
        None => Ok(()),
    }
}

fn studies(
    cfg: &Config,
    ids: &[Identity],
    mutation: Mutation,
) -> Result<Vec<(Identity, Vec<ResidualReport>)>, CliError> {
    let material = Material::new(cfg.params)?;
    let family = Manufactured::default();
    let grids = cfg.study_grids();
    ids.iter().map(|id| Ok((*id, id.study(&material, &family, &grids, mutation)?))).collect()
}

fn report_csv(results: &[(Identity, Vec<ResidualReport>)]) -> String {
    let mut csv = format!("{}\n", ResidualReport::CSV_HEADER);
    for r in results.iter().flat_map(|(_, reports)| reports) {
        csv.push_str(&r.csv_rows());
    }
    csv
}

pub fn verify(
    cfg: &Config,
    identity: Option<&str>,
    mutation: Option<&str>,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let ids = match identity {
        Some(name) => expand(&[name.to_string()])?,
        None => expand(&cfg.identities)?,
    };
    let mutation = match mutation {
        Some(m) => Mutation::parse(m).ok_or_else(|| CliError::Usage(format!("unknown mutation '{m}'")))?,
        None => Mutation::None,
    };
    let results = studies(cfg, &ids, mutation)?;
    let all: Vec<ResidualReport> = results.iter().flat_map(|(_, r)| r.clone()).collect();
    let mut s = summary_table(&all);
    s.push('\n');
    let mut failed = 0;
    for (id, reports) in &results {
        let ok = passes(id, reports, &cfg.thresholds);
        failed += usize::from(!ok);
        let _ = writeln!(s, "{:<36} {}", id.name(), if ok { "PASS" } else { "FAIL" });
    }
    let _ = writeln!(s, "{} of {} identities pass", results.len() - failed, results.len());
    emit(out, &s);
    write_output(&cfg.output_dir, "verify.csv", &report_csv(&results))?;
    if failed > 0 {
        return Err(CliError::Failure(format!("{failed} identities below threshold")));
    }
    Ok(())
}

pub fn converge(cfg: &Config, out: &mut dyn Write) -> Result<(), CliError> {
    let ids = expand(&cfg.identities)?;
    let results = studies(cfg, &ids, Mutation::None)?;
    let mut table = format!("{:<36} {:>7} {:>7} {:>12} {:>8}\n", "identity", "coarse", "fine", "linf", "order");
    let mut csv = String::from("identity,n_coarse,n_fine,linf_fine,order\n");
    for (id, reports) in &results {
        for pair in reports.windows(2) {
            let order = pair[1].order.map(|o| o.to_string()).unwrap_or_else(|| "-".into());
            let _ = writeln!(
                table,
                "{:<36} {:>7} {:>7} {:>12.4e} {:>8}",
                id.name(),
                pair[0].n,
                pair[1].n,
                pair[1].linf,
                order
            );
            let _ = writeln!(csv, "{},{},{},{:e},{}", id.name(), pair[0].n, pair[1].n, pair[1].linf, order);
        }
    }
    emit(out, &table);
    write_output(&cfg.output_dir, "converge.csv", &csv)?;
    write_output(&cfg.output_dir, "converge_reports.csv", &report_csv(&results))?;
    Ok(())
}
