//! Command implementations and output writers.

use std::fmt::Write as _;
use std::path::PathBuf;

use aoi_core::aoi::aoi_transform;
use aoi_core::dist::Theta;
use aoi_core::inversion::EulerInversion;
use aoi_core::kernels::compute_constants;
use aoi_core::optimize::{default_theta_grid, sweep};
use aoi_core::sim::{aggregate, simulate_replication, Policy, SimConfig, SimResult};
use aoi_core::Complex;
use rayon::prelude::*;

use crate::spec::{parse_grid, parse_theta_grid, Cli, Command, Defaults, Format, PolicyArg};
use crate::CliError;

pub fn run(cli: Cli) -> Result<(), CliError> {
    let defaults = Defaults::load(cli.config.as_ref())?;
    let format = cli.format;
    let out = cli.out;
    match cli.command {
        Command::Mean { model } => {
            let m = model.resolve(&defaults)?;
            cmd_mean(m, format, out.as_ref())
        }
        Command::Transform { model, s_grid } => {
            let m = model.resolve(&defaults)?;
            let grid_lit = s_grid
                .or_else(|| defaults.str("s-grid"))
                .unwrap_or_else(|| "0.1:10:100".into());
            cmd_transform(m, &parse_grid(&grid_lit)?, format, out.as_ref())
        }
        Command::Tail {
            model,
            nu_grid,
            epsilon,
            inv_terms,
            inv_avg,
            inv_discount,
        } => {
            let m = model.resolve(&defaults)?;
            let mut inv = EulerInversion::default();
            if let Some(v) = inv_terms.or_else(|| defaults.u64("inv-terms").map(|v| v as usize)) {
                inv.terms = v;
            }
            if let Some(v) = inv_avg.or_else(|| defaults.u64("inv-avg").map(|v| v as usize)) {
                inv.euler_terms = v;
            }
            if let Some(v) = inv_discount.or_else(|| defaults.f64("inv-discount")) {
                inv.discount = v;
            }
            let epsilon = epsilon.or_else(|| defaults.f64("epsilon"));
            let nu_grid = match nu_grid.or_else(|| defaults.str("nu-grid")) {
                Some(lit) => Some(parse_grid(&lit)?),
                None => None,
            };
            cmd_tail(m, inv, epsilon, nu_grid, format, out.as_ref())
        }
        Command::Sweep {
            lambda,
            dist,
            theta_grid,
        } => {
            let lambda = lambda
                .or_else(|| defaults.f64("lambda"))
                .ok_or_else(|| CliError::malformed("missing required --lambda"))?;
            let dist_lit = dist
                .or_else(|| defaults.str("dist"))
                .ok_or_else(|| CliError::malformed("missing required --dist"))?;
            let service: aoi_core::dist::ServiceDistribution = dist_lit.parse()?;
            let thetas = match theta_grid.or_else(|| defaults.str("theta-grid")) {
                Some(lit) => parse_theta_grid(&lit)?,
                None => default_theta_grid(service.mean()),
            };
            cmd_sweep(lambda, &service, &thetas, format, out.as_ref())
        }
        Command::Simulate {
            model,
            sim,
            policy,
            nu_grid,
        } => {
            let m = model.resolve(&defaults)?;
            let policy = policy
                .or_else(|| match defaults.str("policy").as_deref() {
                    Some("p2theta") => Some(PolicyArg::P2theta),
                    Some("variant") => Some(PolicyArg::Variant),
                    Some("b1") => Some(PolicyArg::B1),
                    Some("b2") => Some(PolicyArg::B2),
                    _ => None,
                })
                .map_or(Policy::P2Theta, Policy::from);
            let nu_grid = match nu_grid.or_else(|| defaults.str("nu-grid")) {
                Some(lit) => Some(parse_grid(&lit)?),
                None => None,
            };
            let cfg = sim.resolve(&defaults, m, policy, nu_grid)?;
            cmd_simulate(&cfg, out.as_ref())
        }
        Command::Validate { model, sim } => {
            let m = model.resolve(&defaults)?;
            let cfg = sim.resolve(&defaults, m, Policy::P2Theta, None)?;
            cmd_validate(&cfg)
        }
    }
}

fn write_output(out: Option<&PathBuf>, content: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, content)?,
        None => print!("{content}"),
    }
    Ok(())
}

fn num(x: f64) -> String {
    format!("{x:.12e}")
}

fn run_simulation(cfg: &SimConfig) -> Result<SimResult, CliError> {
    let stats: Result<Vec<_>, _> = (0..cfg.replications)
        .into_par_iter()
        .map(|r| simulate_replication(cfg, r))
        .collect();
    Ok(aggregate(cfg, &stats?))
}

fn cmd_mean(
    m: aoi_core::dist::ModelParams,
    format: Option<Format>,
    out: Option<&PathBuf>,
) -> Result<(), CliError> {
    let constants = compute_constants(&m);
    let a = aoi_transform(&m)?;
    let content = match format {
        Some(Format::Json) => format!(
            "{}\n",
            serde_json::json!({
                "mean_aoi": a.mean_aoi(),
                "q": constants.q,
                "p0": constants.p0,
                "p1": constants.p1,
                "mean_cycle": a.mean_cycle(),
                "rho": m.rho(),
            })
        ),
        _ => format!(
            "mean_aoi = {:.9}\nq = {:.9}\np0 = {:.9}\np1 = {:.9}\nmean_cycle = {:.9}\nrho = {:.9}\n",
            a.mean_aoi(),
            constants.q,
            constants.p0,
            constants.p1,
            a.mean_cycle(),
            m.rho(),
        ),
    };
    write_output(out, &content)
}

fn cmd_transform(
    m: aoi_core::dist::ModelParams,
    s_grid: &[f64],
    format: Option<Format>,
    out: Option<&PathBuf>,
) -> Result<(), CliError> {
    let a = aoi_transform(&m)?;
    let rows: Vec<(f64, f64)> = s_grid
        .iter()
        .map(|&s| (s, a.phi(Complex::new(s, 0.0)).re))
        .collect();
    let content = match format {
        Some(Format::Json) => {
            let items: Vec<_> = rows
                .iter()
                .map(|(s, phi)| serde_json::json!({ "s": s, "phi": phi }))
                .collect();
            format!("{}\n", serde_json::json!(items))
        }
        _ => {
            let mut csv = String::from("s,phi\n");
            for (s, phi) in rows {
                let _ = writeln!(csv, "{},{}", num(s), num(phi));
            }
            csv
        }
    };
    write_output(out, &content)
}

fn cmd_tail(
    m: aoi_core::dist::ModelParams,
    inv: EulerInversion,
    epsilon: Option<f64>,
    nu_grid: Option<Vec<f64>>,
    format: Option<Format>,
    out: Option<&PathBuf>,
) -> Result<(), CliError> {
    let a = aoi_transform(&m)?;
    if let Some(eps) = epsilon {
        let nu = inv.find_threshold(&a, eps)?;
        let content = match format {
            Some(Format::Json) => format!("{}\n", serde_json::json!({ "epsilon": eps, "nu": nu })),
            Some(Format::Csv) => format!("epsilon,nu\n{},{}\n", num(eps), num(nu)),
            None => format!("nu = {nu:.9}\n"),
        };
        return write_output(out, &content);
    }
    let grid = nu_grid.unwrap_or_else(|| {
        let scale = m.service.mean() + 1.0 / m.lambda;
        (1..=150).map(|k| 0.1 * scale * k as f64).collect()
    });
    let rows: Vec<(f64, f64)> = grid
        .iter()
        .map(|&nu| (nu, inv.ccdf(&a, nu).value))
        .collect();
    let content = match format {
        Some(Format::Json) => {
            let items: Vec<_> = rows
                .iter()
                .map(|(nu, p)| serde_json::json!({ "nu": nu, "ccdf": p }))
                .collect();
            format!("{}\n", serde_json::json!(items))
        }
        _ => {
            let mut csv = String::from("nu,ccdf\n");
            for (nu, p) in rows {
                let _ = writeln!(csv, "{},{}", num(nu), num(p));
            }
            csv
        }
    };
    write_output(out, &content)
}

fn cmd_sweep(
    lambda: f64,
    service: &aoi_core::dist::ServiceDistribution,
    thetas: &[Theta],
    format: Option<Format>,
    out: Option<&PathBuf>,
) -> Result<(), CliError> {
    let res = sweep(lambda, service, thetas)?;
    let content = match format {
        Some(Format::Json) => {
            let items: Vec<_> = res
                .grid
                .iter()
                .map(|p| {
                    serde_json::json!({
                        "theta": p.theta.to_string(),
                        "mean_aoi": p.mean.clone().ok(),
                    })
                })
                .collect();
            format!(
                "{}\n",
                serde_json::json!({
                    "grid": items,
                    "best_theta": res.best_theta.to_string(),
                    "best_mean": res.best_mean,
                })
            )
        }
        _ => {
            let mut csv = String::from("theta,mean_aoi\n");
            for p in &res.grid {
                let mean = match &p.mean {
                    Ok(v) => num(*v),
                    Err(_) => "nan".into(),
                };
                let _ = writeln!(csv, "{},{mean}", p.theta);
            }
            csv
        }
    };
    write_output(out, &content)
}

fn cmd_simulate(cfg: &SimConfig, out: Option<&PathBuf>) -> Result<(), CliError> {
    let res = run_simulation(cfg)?;
    let json = format!(
        "{}\n",
        serde_json::to_string_pretty(&res).map_err(|e| CliError::malformed(e.to_string()))?
    );
    match out {
        None => print!("{json}"),
        Some(path) => {
            std::fs::write(path, &json)?;
            let mut csv = String::from("nu,prob\n");
            for &(nu, p) in &res.ccdf_samples {
                let _ = writeln!(csv, "{},{}", num(nu), num(p));
            }
            std::fs::write(path.with_extension("csv"), csv)?;
        }
    }
    Ok(())
}

fn cmd_validate(cfg: &SimConfig) -> Result<(), CliError> {
    let a = aoi_transform(&cfg.model)?;
    let constants = compute_constants(&cfg.model);
    let res = run_simulation(cfg)?;

    let mean_diff = (res.mean_aoi - a.mean_aoi()).abs();
    let mean_budget = 3.0 * res.mean_aoi_ci_halfwidth;
    let mean_ok = mean_diff <= mean_budget;
    let p0_diff = (res.p0_empirical - constants.p0).abs();
    let p0_budget = 3.0 * res.p0_empirical_se;
    let p0_ok = p0_diff <= p0_budget;

    println!("model: {}", cfg.model);
    println!(
        "mean_aoi: analytic = {:.6}, simulated = {:.6} +- {:.6} (95% CI, {} reps)",
        a.mean_aoi(),
        res.mean_aoi,
        res.mean_aoi_ci_halfwidth,
        res.replications
    );
    println!(
        "mean check: |diff| = {:.2e} vs budget {:.2e} -> {}",
        mean_diff,
        mean_budget,
        if mean_ok { "PASS" } else { "FAIL" }
    );
    println!(
        "p0: analytic = {:.6}, empirical = {:.6} +- {:.6}",
        constants.p0, res.p0_empirical, res.p0_empirical_se
    );
    println!(
        "p0 check: |diff| = {:.2e} vs budget {:.2e} -> {}",
        p0_diff,
        p0_budget,
        if p0_ok { "PASS" } else { "FAIL" }
    );
    println!("overall: {}", if mean_ok && p0_ok { "PASS" } else { "FAIL" });
    if mean_ok && p0_ok {
        Ok(())
    } else {
        Err(CliError::validation(format!(
            "simulation disagrees with analytics: mean diff {:.3e} (budget {:.3e}), p0 diff {:.3e} (budget {:.3e})",
            mean_diff, mean_budget, p0_diff, p0_budget
        )))
    }
}
