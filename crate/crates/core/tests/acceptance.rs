//! Acceptance suite: one test per release criterion, each printing a
//! `[criterion N] PASS/FAIL` line (visible with `--nocapture`).
//!
//! Every tolerance is pinned here; the Monte-Carlo criteria run against
//! fixed seeds so the suite is deterministic.

use std::time::Instant;

use aoi_core::aoi::aoi_transform;
use aoi_core::dist::{ModelParams, ServiceDistribution, Theta};
use aoi_core::inversion::EulerInversion;
use aoi_core::kernels::{build_conditional, compute_constants};
use aoi_core::optimize::sweep;
use aoi_core::sim::{
    alpha_at_times, empirical_kernels, simulate, Policy, SimConfig,
    CHI_SQUARE_1DF_CRIT_1PERMILLE,
};
use aoi_core::Complex;

fn report(n: u32, ok: bool, detail: &str) {
    println!("[criterion {n}] {}: {detail}", if ok { "PASS" } else { "FAIL" });
}

fn model(lambda: f64, theta: Theta, service: ServiceDistribution) -> ModelParams {
    ModelParams::new(lambda, theta, service).unwrap()
}

fn exp_service(mu: f64) -> ServiceDistribution {
    ServiceDistribution::exponential(mu).unwrap()
}

fn det_service(d: f64) -> ServiceDistribution {
    ServiceDistribution::deterministic(d).unwrap()
}

fn mix_service() -> ServiceDistribution {
    ServiceDistribution::mixture_det_exp(0.5, 1.0, 1.0).unwrap()
}

fn c(re: f64) -> Complex {
    Complex::new(re, 0.0)
}

/// Criterion 1: exponential service with an infinite threshold has mean AoI
/// `1/mu + 1/lambda`, to 1e-6, in under a second.
#[test]
fn criterion_1_exponential_closed_form() {
    let start = Instant::now();
    let mut worst = 0.0f64;
    for (lambda, expect) in [(1.0, 2.0), (0.5, 3.0), (2.0, 1.5)] {
        let a = aoi_transform(&model(lambda, Theta::Infinite, exp_service(1.0))).unwrap();
        worst = worst.max((a.mean_aoi() - expect).abs());
    }
    let elapsed = start.elapsed();
    let ok = worst <= 1e-6 && elapsed.as_secs_f64() < 1.0;
    report(1, ok, &format!("max |mean - closed form| = {worst:.2e}, {elapsed:?}"));
    assert!(ok, "worst deviation {worst:.3e}, elapsed {elapsed:?}");
}

/// Independent one-line oracle: zero-threshold mean AoI under deterministic
/// service at load `rho` (unit mean service).
fn det_pushout_mean(rho: f64) -> f64 {
    (1.0 - (-rho).exp()) * (1.0 + 1.0 / rho)
        + ((-rho).exp() + rho * (-rho).exp() + 0.5 * rho * rho)
            / (rho * rho + rho * (-rho).exp())
}

/// Criterion 2: deterministic service with zero threshold matches the
/// closed-form mean at loads 0.5, 1, 2, to 1e-5, in under a second.
#[test]
fn criterion_2_deterministic_pushout_closed_form() {
    let start = Instant::now();
    assert!(
        (det_pushout_mean(1.0) - 2.167652).abs() <= 1e-5,
        "oracle spot value drifted: {}",
        det_pushout_mean(1.0)
    );
    let mut worst = 0.0f64;
    for rho in [0.5, 1.0, 2.0] {
        let a = aoi_transform(&model(rho, Theta::Finite(0.0), det_service(1.0))).unwrap();
        worst = worst.max((a.mean_aoi() - det_pushout_mean(rho)).abs());
    }
    let elapsed = start.elapsed();
    let ok = worst <= 1e-5 && elapsed.as_secs_f64() < 1.0;
    report(2, ok, &format!("max |mean - closed form| = {worst:.2e}, {elapsed:?}"));
    assert!(ok, "worst deviation {worst:.3e}, elapsed {elapsed:?}");
}

/// Criterion 3: for the half-deterministic/half-exponential unit-mean
/// mixture, the threshold-1 mean is expected to undercut both endpoint
/// policies at every load up to 0.8.
#[test]
fn criterion_3_mixture_interior_dip() {
    let start = Instant::now();
    let thetas: Vec<Theta> = (0..=12)
        .map(|k| Theta::Finite(0.25 * k as f64))
        .chain([Theta::Infinite])
        .collect();
    let mut lines = Vec::new();
    let mut ok = true;
    for rho in [0.2, 0.4, 0.6, 0.8] {
        let res = sweep(rho, &mix_service(), &thetas).unwrap();
        let at = |t: f64| {
            res.grid
                .iter()
                .find(|p| p.theta.as_f64() == t)
                .unwrap()
                .mean
                .clone()
                .unwrap()
        };
        let (m0, m1) = (at(0.0), at(1.0));
        let minf = res.mean_at_infinity.clone().unwrap();
        let dip = m1 < m0 && m1 < minf;
        ok &= dip;
        lines.push(format!(
            "rho={rho}: theta0={m0:.6} theta1={m1:.6} thetaInf={minf:.6} dip={dip}"
        ));
    }
    let elapsed = start.elapsed();
    ok &= elapsed.as_secs_f64() < 10.0;
    report(3, ok, &lines.join("; "));
    assert!(
        ok,
        "interior dip at theta=1 absent for this mixture: {}. The simulator \
         independently confirms these analytic orderings (zero-threshold wins \
         at every load); genuine interior minima do occur for other service \
         laws, e.g. mix:0.5,det=5,exp=2 at lambda=0.3.",
        lines.join("; ")
    );
}

/// Criterion 4: simulated mean AoI (1e6 arrivals x 10 replications) agrees
/// with the analytic mean within 3 CI halfwidths, and empirical p0 with the
/// embedded-chain p0 within 3 standard errors, across six configurations.
#[test]
fn criterion_4_simulation_agreement() {
    let start = Instant::now();
    let configs: [(f64, Theta, ServiceDistribution, &str); 6] = [
        (1.0, Theta::Infinite, exp_service(1.0), "exp inf"),
        (1.0, Theta::Finite(0.0), exp_service(1.0), "exp 0"),
        (1.0, Theta::Finite(0.0), det_service(1.0), "det 0"),
        (1.0, Theta::Finite(0.5), det_service(1.0), "det 0.5"),
        (0.5, Theta::Finite(0.5), mix_service(), "mix 0.5"),
        (0.8, Theta::Infinite, mix_service(), "mix inf"),
    ];
    let mut ok = true;
    let mut lines = Vec::new();
    for (i, (lambda, theta, service, name)) in configs.into_iter().enumerate() {
        let m = model(lambda, theta, service);
        let analytic = aoi_transform(&m).unwrap().mean_aoi();
        let p0 = compute_constants(&m).p0;
        let mut cfg = SimConfig::new(m, Policy::P2Theta);
        cfg.horizon_events = 1_000_000;
        cfg.replications = 10;
        cfg.seed = 2024 + i as u64;
        let res = simulate(&cfg).unwrap();
        let mean_ok = (res.mean_aoi - analytic).abs() <= 3.0 * res.mean_aoi_ci_halfwidth;
        let p0_ok = (res.p0_empirical - p0).abs() <= 3.0 * res.p0_empirical_se;
        ok &= mean_ok && p0_ok;
        lines.push(format!(
            "{name}: sim={:.5}+-{:.5} ana={analytic:.5} ({}), p0 {:.5} vs {p0:.5} ({})",
            res.mean_aoi,
            res.mean_aoi_ci_halfwidth,
            if mean_ok { "ok" } else { "OFF" },
            res.p0_empirical,
            if p0_ok { "ok" } else { "OFF" },
        ));
    }
    let elapsed = start.elapsed();
    ok &= elapsed.as_secs_f64() < 120.0;
    report(4, ok, &format!("{} [{elapsed:?}]", lines.join("; ")));
    assert!(ok, "{}", lines.join("\n"));
}

/// Criterion 5: Monte-Carlo cycle and age transforms per occupancy
/// transition (>= 1e5 cycles) match the analytic conditional transforms at
/// s in {0.5, 1, 2} within 3 standard errors. This pins down the form of
/// the queued-age transforms against the independent simulation.
#[test]
fn criterion_5_conditional_transform_oracle() {
    let m = model(1.0, Theta::Finite(0.5), det_service(1.0));
    let (_, ct) = build_conditional(&m);
    let mut cfg = SimConfig::new(m, Policy::P2Theta);
    cfg.horizon_events = 500_000;
    cfg.replications = 1;
    cfg.seed = 31;
    let svals = [0.5, 1.0, 2.0];
    let ek = empirical_kernels(&cfg, &svals).unwrap();
    let mut ok = ek.cycles_observed >= 100_000;
    let mut worst = 0.0f64;
    for i in 0..2 {
        for j in 0..2 {
            for point in &ek.cells[i][j] {
                let s = c(point.s);
                let cyc = ct.cycle(i, j, s).unwrap().re;
                let age = ct.age(i, j, s).unwrap().re;
                // The 1e-9 floor covers summation roundoff in zero-variance
                // (purely atomic) cells.
                let dc = (point.cycle_mean - cyc).abs() / (3.0 * point.cycle_se + 1e-9);
                let da = (point.age_mean - age).abs() / (3.0 * point.age_se + 1e-9);
                worst = worst.max(dc.max(da));
                ok &= dc <= 1.0 && da <= 1.0;
            }
        }
    }
    report(
        5,
        ok,
        &format!(
            "{} cycles, worst deviation {worst:.2} of the 3-sigma budget",
            ek.cycles_observed
        ),
    );
    assert!(ok, "worst deviation {worst:.3} of 3-sigma budget");
}

/// Criterion 6: transform normalization and shape properties, plus
/// inversion consistency (monotone CCDF whose integral recovers the mean to
/// 0.5%).
#[test]
fn criterion_6_transform_property_suite() {
    let configs = [
        model(1.0, Theta::Finite(0.5), det_service(1.0)),
        model(0.8, Theta::Finite(1.0), mix_service()),
        model(1.0, Theta::Infinite, exp_service(1.0)),
    ];
    let inv = EulerInversion::default();
    let mut ok = true;
    let mut lines = Vec::new();
    for m in configs {
        let name = format!("{m}");
        let (_, ct) = build_conditional(&m);
        let k = ct.kernels();
        let s0 = c(1e-6);
        let mut norm_err = (k.j_hat(s0).re - 1.0).abs().max((k.f0_hat(s0).re - 1.0).abs());
        if let Some(v) = k.f1_hat(s0) {
            norm_err = norm_err.max((v.re - 1.0).abs());
        }
        if let Some(v) = k.h_hat(s0) {
            norm_err = norm_err.max((v.re - 1.0).abs());
        }
        for i in 0..2 {
            for j in 0..2 {
                if ct.defined(i, j) {
                    norm_err = norm_err.max((ct.cycle(i, j, s0).unwrap().re - 1.0).abs());
                    norm_err = norm_err.max((ct.age(i, j, s0).unwrap().re - 1.0).abs());
                }
            }
        }
        let a = aoi_transform(&m).unwrap();
        norm_err = norm_err.max((a.phi(s0).re - 1.0).abs());
        let norms_ok = norm_err <= 1e-4;

        let mut phi_monotone = true;
        let mut prev = f64::INFINITY;
        for k in 1..=100 {
            let v = a.phi(c(0.1 * k as f64)).re;
            phi_monotone &= v <= prev + 1e-12;
            prev = v;
        }

        let mean = a.mean_aoi();
        let hi = inv.find_threshold(&a, 1e-4).unwrap().max(10.0 * mean) * 1.2;
        let n = 800;
        let mut integral = 0.0;
        let mut prev_pt = (0.0, 1.0);
        let mut ccdf_monotone = true;
        for k in 1..=n {
            let nu = hi * k as f64 / n as f64;
            let v = inv.ccdf(&a, nu).value;
            // Euler summation rings by a few 1e-6 right at atoms of the
            // service law (where the CCDF has a kink); away from kinks the
            // monotonicity error stays below 1e-6.
            ccdf_monotone &= v <= prev_pt.1 + 5e-6;
            integral += 0.5 * (prev_pt.1 + v) * (nu - prev_pt.0);
            prev_pt = (nu, v);
        }
        let integral_ok = (integral - mean).abs() <= 5e-3 * mean;
        ok &= norms_ok && phi_monotone && ccdf_monotone && integral_ok;
        lines.push(format!(
            "[{name}] norm_err={norm_err:.1e} phi_monotone={phi_monotone} \
             ccdf_monotone={ccdf_monotone} integral={integral:.5} vs mean={mean:.5}"
        ));
    }
    report(6, ok, &lines.join("; "));
    assert!(ok, "{}", lines.join("\n"));
}

/// Criterion 7: the post-departure occupancy sequence is i.i.d.; the
/// chi-square independence statistic over 1e6 consecutive transition pairs
/// stays under the 0.1% critical value.
#[test]
fn criterion_7_occupancy_iid() {
    let m = model(1.0, Theta::Finite(0.5), det_service(1.0));
    let mut cfg = SimConfig::new(m, Policy::P2Theta);
    cfg.horizon_events = 2_200_000;
    cfg.replications = 1;
    cfg.seed = 7;
    let ek = empirical_kernels(&cfg, &[]).unwrap();
    let enough = ek.cycles_observed >= 1_000_000;
    let ok = enough && ek.chi_square < CHI_SQUARE_1DF_CRIT_1PERMILLE;
    report(
        7,
        ok,
        &format!(
            "chi^2 = {:.3} over {} cycles (crit 10.8276)",
            ek.chi_square, ek.cycles_observed
        ),
    );
    assert!(ok, "chi^2 = {}, cycles = {}", ek.chi_square, ek.cycles_observed);
}

/// Criterion 8: with common random numbers, the two-cell blocking system is
/// never fresher than the two-cell pushout system: zero violations over
/// 1e4 sampled instants per run.
#[test]
fn criterion_8_pathwise_domination() {
    let runs: [(f64, ServiceDistribution, u64); 3] = [
        (1.0, det_service(1.0), 11),
        (1.0, det_service(1.0), 12),
        (0.7, mix_service(), 13),
    ];
    let mut ok = true;
    let mut lines = Vec::new();
    for (lambda, service, seed) in runs {
        let m = model(lambda, Theta::Finite(0.0), service);
        let mut p2 = SimConfig::new(m, Policy::P2Theta);
        p2.horizon_events = 120_000;
        p2.replications = 1;
        p2.seed = seed;
        let mut b2 = p2.clone();
        b2.policy = Policy::B2;
        let t_max = 0.9 * p2.horizon_events as f64 / lambda;
        let n = 10_000;
        let times: Vec<f64> = (1..=n).map(|k| t_max * k as f64 / n as f64).collect();
        let ap = alpha_at_times(&p2, &times).unwrap();
        let ab = alpha_at_times(&b2, &times).unwrap();
        let mut violations = 0usize;
        assert_eq!(ap.len(), ab.len());
        assert_eq!(ap.len(), n as usize);
        for ((t, alpha_p), (t_b, alpha_b)) in ap.iter().zip(&ab) {
            assert_eq!(t, t_b);
            if *alpha_p > alpha_b + 1e-9 {
                violations += 1;
            }
        }
        ok &= violations == 0;
        lines.push(format!("seed {seed}: {} instants, {violations} violations", ap.len()));
    }
    report(8, ok, &lines.join("; "));
    assert!(ok, "{}", lines.join("; "));
}
