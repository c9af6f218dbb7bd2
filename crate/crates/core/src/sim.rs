//! Event-driven simulation of the two-cell preemption/push-out queue and its
//! comparison policies.
//!
//! The simulator implements only the policy rules and exact sawtooth
//! accounting, none of the transform analytics, so it serves as an
//! independent oracle for every analytic result. Age is integrated in closed
//! form per inter-departure segment (the sawtooth is linear with slope one
//! between successful deliveries), which removes discretization bias
//! entirely.
//!
//! Randomness comes from counter-based ChaCha streams: stream `2r` drives
//! the arrival process of replication `r` and stream `2r + 1` its service
//! draws, consumed one draw per service initiation. Two runs with the same
//! seed but different policies therefore see identical arrivals and
//! identical per-initiation service times, which is exactly the coupling
//! needed for common-random-number policy comparisons.

use alloc::vec;
use alloc::vec::Vec;

// Float-math methods resolve through the trait when built without std.
#[allow(unused_imports)]
use num_traits::Float;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dist::{ModelParams, Theta};
use crate::Error;

/// Queueing policy applied at arrival instants.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub enum Policy {
    /// Preempt the in-service message when its elapsed service is at most
    /// the threshold, otherwise replace the waiting message.
    P2Theta,
    /// Join the queue when the elapsed service is strictly between 0 and the
    /// threshold, otherwise capture the server.
    P2ThetaVariant,
    /// Blocking, non-preemptive, single message: busy-server arrivals drop.
    B1,
    /// Blocking, non-preemptive, two messages: arrivals drop when both cells
    /// are occupied.
    B2,
}

/// Simulation configuration.
#[derive(Debug, Clone)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct SimConfig {
    pub model: ModelParams,
    pub policy: Policy,
    /// Arrivals generated per replication.
    pub horizon_events: u64,
    /// Leading fraction of arrivals discarded before measurement starts.
    pub warmup_fraction: f64,
    pub replications: u32,
    pub seed: u64,
    /// Thresholds at which the empirical AoI CCDF is reported; a grid scaled
    /// to the model's time constants is derived when absent.
    pub ccdf_grid: Option<Vec<f64>>,
}

impl SimConfig {
    pub fn new(model: ModelParams, policy: Policy) -> Self {
        Self {
            model,
            policy,
            horizon_events: 1_000_000,
            warmup_fraction: 0.1,
            replications: 10,
            seed: 1,
            ccdf_grid: None,
        }
    }

    pub fn validate(&self) -> Result<(), Error> {
        if self.horizon_events < 10_000 {
            return Err(Error::InvalidConfig(alloc::format!(
                "horizon_events must be >= 10000, got {}",
                self.horizon_events
            )));
        }
        if !(0.0..0.5).contains(&self.warmup_fraction) {
            return Err(Error::InvalidConfig(alloc::format!(
                "warmup_fraction must be in [0, 0.5), got {}",
                self.warmup_fraction
            )));
        }
        if self.replications < 1 {
            return Err(Error::InvalidConfig("replications must be >= 1".into()));
        }
        if let Some(grid) = &self.ccdf_grid {
            if grid.windows(2).any(|w| w[1] <= w[0]) {
                return Err(Error::InvalidConfig("ccdf grid must be increasing".into()));
            }
        }
        Ok(())
    }

    fn grid(&self) -> Vec<f64> {
        match &self.ccdf_grid {
            Some(g) => g.clone(),
            None => {
                let scale = self.model.service.mean() + 1.0 / self.model.lambda;
                let n = 150usize;
                (0..=n).map(|k| 15.0 * scale * k as f64 / n as f64).collect()
            }
        }
    }
}

/// Aggregated simulation output.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct SimResult {
    /// Time-average AoI, averaged over replications.
    pub mean_aoi: f64,
    /// Normal-approximation 95% confidence halfwidth (1.96 standard errors)
    /// across replication means; zero for a single replication.
    pub mean_aoi_ci_halfwidth: f64,
    /// Empirical `P(alpha > nu)` per grid threshold (fraction of measured
    /// time the sawtooth spent above `nu`).
    pub ccdf_samples: Vec<(f64, f64)>,
    /// Fraction of departures leaving an empty system.
    pub p0_empirical: f64,
    /// Binomial standard error of `p0_empirical`.
    pub p0_empirical_se: f64,
    /// Mean time between successful departures.
    pub mean_cycle_empirical: f64,
    pub replications: u32,
    pub deliveries: u64,
}

/// Per-replication raw measurements; aggregation over replications is a
/// plain (order-independent) sum.
#[derive(Debug, Clone)]
pub struct RepStats {
    pub aoi_time_integral: f64,
    pub measured_time: f64,
    pub deliveries: u64,
    pub empty_departures: u64,
    pub cycle_time_total: f64,
    pub ccdf_time_above: Vec<f64>,
    pub counters: RunCounters,
}

impl RepStats {
    pub fn mean_aoi(&self) -> f64 {
        self.aoi_time_integral / self.measured_time
    }
}

/// Structural event counts, used by invariant checks.
#[derive(Debug, Clone, Copy, Default)]
pub struct RunCounters {
    pub arrivals: u64,
    pub service_starts: u64,
    pub preemptions: u64,
    /// Preemptions of a message that had strictly positive elapsed service.
    pub preemptions_after_start: u64,
    /// Queue push-outs (a waiting message replaced by a newer one).
    pub pushouts: u64,
    /// Arrivals dropped by the blocking policies.
    pub drops: u64,
    /// Whether the waiting cell was ever occupied.
    pub cell2_used: bool,
    pub end_time: f64,
}

/// Observer over the measured part of a run. The sawtooth is reported as
/// contiguous segments `[t0, t1)` on which `alpha(t) = t - age_base`;
/// departures carry the closing cycle length and the delivered message's
/// age.
trait EventSink {
    fn segment(&mut self, _t0: f64, _t1: f64, _age_base: f64) {}
    fn departure(&mut self, _cycle: f64, _age: f64, _k_prev: u8, _k_now: u8) {}
}

#[derive(Clone, Copy)]
struct InService {
    arrival: f64,
    start: f64,
    completion: f64,
}

fn exp_draw<R: Rng + ?Sized>(rng: &mut R, rate: f64) -> f64 {
    let u: f64 = rng.gen();
    -(1.0 - u).ln() / rate
}

/// Core event loop: Poisson arrivals against the policy rule, exact segment
/// emission after warmup. Returns the structural counters.
fn run<S: EventSink>(
    model: &ModelParams,
    policy: Policy,
    horizon: u64,
    warmup_fraction: f64,
    arrivals_rng: &mut ChaCha8Rng,
    services_rng: &mut ChaCha8Rng,
    sink: &mut S,
) -> RunCounters {
    let lambda = model.lambda;
    let theta = model.theta;
    let warm_count = (warmup_fraction * horizon as f64) as u64;

    let mut counters = RunCounters::default();
    let mut cell1: Option<InService> = None;
    let mut cell2: Option<f64> = None;
    // Convention: the system starts empty with a phantom delivery at time 0.
    let mut delivered_max = 0.0f64;
    let mut last_departure = 0.0f64;
    let mut k_state: u8 = 0;
    let mut active = warm_count == 0;
    let mut seg_lo = 0.0f64;
    let mut t = 0.0f64;
    let mut next_arrival = exp_draw(arrivals_rng, lambda);
    let mut arrivals = 0u64;

    while arrivals < horizon {
        let next_completion = cell1.map_or(f64::INFINITY, |c| c.completion);
        if next_completion <= next_arrival {
            // Successful departure.
            t = next_completion;
            let served = cell1.take().expect("busy server");
            let k_now = u8::from(cell2.is_some());
            if active {
                sink.segment(seg_lo, t, delivered_max);
                seg_lo = t;
                sink.departure(t - last_departure, t - served.arrival, k_state, k_now);
            }
            // The variant policy can deliver a message older than one already
            // delivered; information age only improves on fresher deliveries.
            delivered_max = delivered_max.max(served.arrival);
            last_departure = t;
            k_state = k_now;
            if let Some(queued) = cell2.take() {
                let service = model.service.sample(services_rng);
                counters.service_starts += 1;
                cell1 = Some(InService {
                    arrival: queued,
                    start: t,
                    completion: t + service,
                });
            }
        } else {
            // Arrival.
            t = next_arrival;
            arrivals += 1;
            match cell1 {
                None => {
                    debug_assert!(cell2.is_none(), "waiting cell requires a busy server");
                    let service = model.service.sample(services_rng);
                    counters.service_starts += 1;
                    cell1 = Some(InService {
                        arrival: t,
                        start: t,
                        completion: t + service,
                    });
                }
                Some(in_service) => {
                    let elapsed = t - in_service.start;
                    let preempt = match (policy, theta) {
                        (Policy::P2Theta, Theta::Infinite) => Some(true),
                        (Policy::P2Theta, Theta::Finite(th)) => Some(elapsed <= th),
                        (Policy::P2ThetaVariant, Theta::Infinite) => Some(false),
                        (Policy::P2ThetaVariant, Theta::Finite(th)) => {
                            Some(!(elapsed > 0.0 && elapsed < th))
                        }
                        (Policy::B1, _) => None,
                        (Policy::B2, _) => {
                            if cell2.is_none() {
                                Some(false)
                            } else {
                                None
                            }
                        }
                    };
                    match preempt {
                        Some(true) => {
                            counters.preemptions += 1;
                            if elapsed > 0.0 {
                                counters.preemptions_after_start += 1;
                            }
                            let service = model.service.sample(services_rng);
                            counters.service_starts += 1;
                            cell1 = Some(InService {
                                arrival: t,
                                start: t,
                                completion: t + service,
                            });
                        }
                        Some(false) => {
                            if cell2.is_some() {
                                counters.pushouts += 1;
                            }
                            cell2 = Some(t);
                            counters.cell2_used = true;
                        }
                        None => counters.drops += 1,
                    }
                }
            }
            if !active && arrivals >= warm_count {
                active = true;
                seg_lo = t;
            }
            next_arrival = t + exp_draw(arrivals_rng, lambda);
        }
    }
    if active && t > seg_lo {
        sink.segment(seg_lo, t, delivered_max);
    }
    counters.arrivals = arrivals;
    counters.end_time = t;
    counters
}

/// Sink computing the exact AoI time integral plus time-above-threshold per
/// CCDF grid point (range updates via a difference array).
struct MeasureSink<'a> {
    grid: &'a [f64],
    aoi_integral: f64,
    measured: f64,
    full_cover: Vec<f64>,
    partial: Vec<f64>,
    deliveries: u64,
    empty_departures: u64,
    cycle_total: f64,
    measure_start: Option<f64>,
}

impl<'a> MeasureSink<'a> {
    fn new(grid: &'a [f64]) -> Self {
        Self {
            grid,
            aoi_integral: 0.0,
            measured: 0.0,
            full_cover: vec![0.0; grid.len() + 1],
            partial: vec![0.0; grid.len()],
            deliveries: 0,
            empty_departures: 0,
            cycle_total: 0.0,
            measure_start: None,
        }
    }

    fn time_above(self) -> Vec<f64> {
        // Prefix-sum the range updates and fold in the partial overlaps.
        // Cancellation in the prefix can leave -1e-16-level dust on
        // thresholds the sawtooth never reached; these are time durations,
        // so floor them at zero.
        let mut acc = 0.0;
        let mut out = Vec::with_capacity(self.grid.len());
        for (i, p) in self.partial.iter().enumerate() {
            acc += self.full_cover[i];
            out.push((acc + p).max(0.0));
        }
        out
    }
}

impl EventSink for MeasureSink<'_> {
    fn segment(&mut self, t0: f64, t1: f64, age_base: f64) {
        if t1 <= t0 {
            return;
        }
        self.measure_start.get_or_insert(t0);
        let len = t1 - t0;
        // alpha rises linearly from (t0 - age_base) to (t1 - age_base).
        self.aoi_integral += len * (0.5 * (t0 + t1) - age_base);
        self.measured += len;
        let alpha_lo = t0 - age_base;
        let alpha_hi = t1 - age_base;
        // Fully covered thresholds: nu <= alpha_lo.
        let full = self.grid.partition_point(|&nu| nu <= alpha_lo);
        if full > 0 {
            self.full_cover[0] += len;
            self.full_cover[full] -= len;
        }
        // Partially covered: alpha_lo < nu < alpha_hi.
        let hi = self.grid.partition_point(|&nu| nu < alpha_hi);
        for i in full..hi {
            self.partial[i] += t1 - (age_base + self.grid[i]);
        }
    }

    fn departure(&mut self, cycle: f64, _age: f64, _k_prev: u8, k_now: u8) {
        self.deliveries += 1;
        self.cycle_total += cycle;
        if k_now == 0 {
            self.empty_departures += 1;
        }
    }
}

fn rng_pair(seed: u64, rep: u32) -> (ChaCha8Rng, ChaCha8Rng) {
    let mut arrivals = ChaCha8Rng::seed_from_u64(seed);
    arrivals.set_stream(2 * rep as u64);
    let mut services = ChaCha8Rng::seed_from_u64(seed);
    services.set_stream(2 * rep as u64 + 1);
    (arrivals, services)
}

/// One replication; replications are independent and may run concurrently.
pub fn simulate_replication(cfg: &SimConfig, rep: u32) -> Result<RepStats, Error> {
    cfg.validate()?;
    let grid = cfg.grid();
    let (mut arrivals_rng, mut services_rng) = rng_pair(cfg.seed, rep);
    let mut sink = MeasureSink::new(&grid);
    let counters = run(
        &cfg.model,
        cfg.policy,
        cfg.horizon_events,
        cfg.warmup_fraction,
        &mut arrivals_rng,
        &mut services_rng,
        &mut sink,
    );
    let measured = sink.measured;
    let stats = RepStats {
        aoi_time_integral: sink.aoi_integral,
        measured_time: measured,
        deliveries: sink.deliveries,
        empty_departures: sink.empty_departures,
        cycle_time_total: sink.cycle_total,
        ccdf_time_above: sink.time_above(),
        counters,
    };
    Ok(stats)
}

/// Order-independent aggregation of replication measurements.
pub fn aggregate(cfg: &SimConfig, reps: &[RepStats]) -> SimResult {
    let grid = cfg.grid();
    let r = reps.len();
    let means: Vec<f64> = reps.iter().map(RepStats::mean_aoi).collect();
    let mean = means.iter().sum::<f64>() / r as f64;
    let ci = if r > 1 {
        let var = means.iter().map(|m| (m - mean) * (m - mean)).sum::<f64>() / (r - 1) as f64;
        1.96 * (var / r as f64).sqrt()
    } else {
        0.0
    };
    let total_time: f64 = reps.iter().map(|s| s.measured_time).sum();
    let deliveries: u64 = reps.iter().map(|s| s.deliveries).sum();
    let empty: u64 = reps.iter().map(|s| s.empty_departures).sum();
    let p0 = empty as f64 / deliveries as f64;
    let p0_se = (p0 * (1.0 - p0) / deliveries as f64).sqrt();
    let ccdf = grid
        .iter()
        .enumerate()
        .map(|(i, &nu)| {
            let above: f64 = reps.iter().map(|s| s.ccdf_time_above[i]).sum();
            (nu, above / total_time)
        })
        .collect();
    SimResult {
        mean_aoi: mean,
        mean_aoi_ci_halfwidth: ci,
        ccdf_samples: ccdf,
        p0_empirical: p0,
        p0_empirical_se: p0_se,
        mean_cycle_empirical: reps.iter().map(|s| s.cycle_time_total).sum::<f64>()
            / deliveries as f64,
        replications: r as u32,
        deliveries,
    }
}

/// Full simulation: all replications sequentially, then aggregation.
pub fn simulate(cfg: &SimConfig) -> Result<SimResult, Error> {
    cfg.validate()?;
    let reps: Result<Vec<_>, _> = (0..cfg.replications)
        .map(|r| simulate_replication(cfg, r))
        .collect();
    Ok(aggregate(cfg, &reps?))
}

/// The AoI sawtooth sampled at the given (increasing) instants, from one
/// replication with no warmup. Instants beyond the run's end are omitted,
/// and two runs sharing `cfg.seed` end at the same final arrival, so
/// common-random-number comparisons stay index-aligned.
pub fn alpha_at_times(cfg: &SimConfig, times: &[f64]) -> Result<Vec<(f64, f64)>, Error> {
    cfg.validate()?;
    struct SampleSink<'a> {
        times: &'a [f64],
        next: usize,
        out: Vec<(f64, f64)>,
    }
    impl EventSink for SampleSink<'_> {
        fn segment(&mut self, t0: f64, t1: f64, age_base: f64) {
            while self.next < self.times.len() && self.times[self.next] < t1 {
                let t = self.times[self.next];
                if t >= t0 {
                    self.out.push((t, t - age_base));
                }
                self.next += 1;
            }
        }
    }
    let (mut arrivals_rng, mut services_rng) = rng_pair(cfg.seed, 0);
    let mut sink = SampleSink {
        times,
        next: 0,
        out: Vec::with_capacity(times.len()),
    };
    run(
        &cfg.model,
        cfg.policy,
        cfg.horizon_events,
        0.0,
        &mut arrivals_rng,
        &mut services_rng,
        &mut sink,
    );
    Ok(sink.out)
}

/// Empirical per-transition transform estimate at one `s` value.
#[derive(Debug, Clone, Copy)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct LstPoint {
    pub s: f64,
    pub cycle_mean: f64,
    pub cycle_se: f64,
    pub age_mean: f64,
    pub age_se: f64,
}

/// Empirical Markov-renewal observables collected at successful departures.
#[derive(Debug, Clone)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct EmpiricalKernels {
    /// Transition counts of consecutive occupancies `(K_{n-1}, K_n)`.
    pub counts: [[u64; 2]; 2],
    /// Per-cell transform estimates at the requested `s` values.
    pub cells: [[Vec<LstPoint>; 2]; 2],
    pub p0_hat: f64,
    pub p0_se: f64,
    /// Independence statistic of the 2x2 transition table
    /// (one degree of freedom under the i.i.d. hypothesis).
    pub chi_square: f64,
    /// Pearson correlation between a departure's age and the following
    /// cycle length, given the occupancy it left behind.
    pub age_next_cycle_corr: [f64; 2],
    pub corr_pairs: [u64; 2],
    /// Cells with fewer than 1000 observations; their estimates are noisy.
    pub low_sample_cells: Vec<(u8, u8)>,
    pub cycles_observed: u64,
}

/// 0.1% critical value of the chi-square distribution with one degree of
/// freedom.
pub const CHI_SQUARE_1DF_CRIT_1PERMILLE: f64 = 10.8276;

/// Independence statistic for a 2x2 contingency table; zero when a marginal
/// vanishes (no evidence against independence).
pub fn chi_square_independence(counts: [[u64; 2]; 2]) -> f64 {
    let n = (counts[0][0] + counts[0][1] + counts[1][0] + counts[1][1]) as f64;
    if n == 0.0 {
        return 0.0;
    }
    let row = [
        (counts[0][0] + counts[0][1]) as f64,
        (counts[1][0] + counts[1][1]) as f64,
    ];
    let col = [
        (counts[0][0] + counts[1][0]) as f64,
        (counts[0][1] + counts[1][1]) as f64,
    ];
    let mut x2 = 0.0;
    for i in 0..2 {
        for j in 0..2 {
            let expected = row[i] * col[j] / n;
            if expected == 0.0 {
                return 0.0;
            }
            let diff = counts[i][j] as f64 - expected;
            x2 += diff * diff / expected;
        }
    }
    x2
}

/// Records `(K_{n-1}, K_n, cycle, age)` at successful departures and reduces
/// them to per-cell empirical transforms with standard errors.
pub fn empirical_kernels(cfg: &SimConfig, s_values: &[f64]) -> Result<EmpiricalKernels, Error> {
    cfg.validate()?;
    if cfg.policy != Policy::P2Theta {
        return Err(Error::InvalidConfig(
            "empirical kernels are defined for the threshold policy only".into(),
        ));
    }

    #[derive(Clone, Copy, Default)]
    struct MeanVar {
        sum: f64,
        sum_sq: f64,
    }
    impl MeanVar {
        fn push(&mut self, x: f64) {
            self.sum += x;
            self.sum_sq += x * x;
        }
        fn finish(&self, n: u64) -> (f64, f64) {
            let n = n as f64;
            let mean = self.sum / n;
            let var = ((self.sum_sq - self.sum * self.sum / n) / (n - 1.0)).max(0.0);
            (mean, (var / n).sqrt())
        }
    }

    #[derive(Clone, Copy, Default)]
    struct CorrAcc {
        n: u64,
        sa: f64,
        sc: f64,
        saa: f64,
        scc: f64,
        sac: f64,
    }
    impl CorrAcc {
        fn push(&mut self, a: f64, c: f64) {
            self.n += 1;
            self.sa += a;
            self.sc += c;
            self.saa += a * a;
            self.scc += c * c;
            self.sac += a * c;
        }
        fn pearson(&self) -> f64 {
            if self.n < 2 {
                return 0.0;
            }
            let n = self.n as f64;
            let cov = self.sac - self.sa * self.sc / n;
            let va = self.saa - self.sa * self.sa / n;
            let vc = self.scc - self.sc * self.sc / n;
            if va <= 0.0 || vc <= 0.0 {
                return 0.0;
            }
            cov / (va * vc).sqrt()
        }
    }

    struct KernelSink<'a> {
        s_values: &'a [f64],
        counts: [[u64; 2]; 2],
        cycle_acc: [[Vec<MeanVar>; 2]; 2],
        age_acc: [[Vec<MeanVar>; 2]; 2],
        prev: Option<(f64, u8)>,
        corr: [CorrAcc; 2],
    }
    impl EventSink for KernelSink<'_> {
        fn departure(&mut self, cycle: f64, age: f64, k_prev: u8, k_now: u8) {
            let (i, j) = (k_prev as usize, k_now as usize);
            self.counts[i][j] += 1;
            for (idx, &s) in self.s_values.iter().enumerate() {
                self.cycle_acc[i][j][idx].push((-s * cycle).exp());
                self.age_acc[i][j][idx].push((-s * age).exp());
            }
            if let Some((prev_age, prev_k)) = self.prev {
                debug_assert_eq!(prev_k, k_prev);
                self.corr[prev_k as usize].push(prev_age, cycle);
            }
            self.prev = Some((age, k_now));
        }
    }

    let make_acc = || {
        [
            [
                vec![MeanVar::default(); s_values.len()],
                vec![MeanVar::default(); s_values.len()],
            ],
            [
                vec![MeanVar::default(); s_values.len()],
                vec![MeanVar::default(); s_values.len()],
            ],
        ]
    };
    let mut sink = KernelSink {
        s_values,
        counts: [[0; 2]; 2],
        cycle_acc: make_acc(),
        age_acc: make_acc(),
        prev: None,
        corr: [CorrAcc::default(); 2],
    };
    for rep in 0..cfg.replications {
        let (mut arrivals_rng, mut services_rng) = rng_pair(cfg.seed, rep);
        sink.prev = None; // pairs never straddle replications
        run(
            &cfg.model,
            cfg.policy,
            cfg.horizon_events,
            cfg.warmup_fraction,
            &mut arrivals_rng,
            &mut services_rng,
            &mut sink,
        );
    }

    let mut cells: [[Vec<LstPoint>; 2]; 2] = Default::default();
    let mut low = Vec::new();
    for i in 0..2 {
        for j in 0..2 {
            let n = sink.counts[i][j];
            if n < 1000 {
                low.push((i as u8, j as u8));
            }
            if n >= 2 {
                for (idx, &s) in s_values.iter().enumerate() {
                    let (cm, cse) = sink.cycle_acc[i][j][idx].finish(n);
                    let (am, ase) = sink.age_acc[i][j][idx].finish(n);
                    cells[i][j].push(LstPoint {
                        s,
                        cycle_mean: cm,
                        cycle_se: cse,
                        age_mean: am,
                        age_se: ase,
                    });
                }
            }
        }
    }
    let total: u64 = sink.counts.iter().flatten().sum();
    let empty = sink.counts[0][0] + sink.counts[1][0];
    let p0 = empty as f64 / total as f64;
    Ok(EmpiricalKernels {
        counts: sink.counts,
        cells,
        p0_hat: p0,
        p0_se: (p0 * (1.0 - p0) / total as f64).sqrt(),
        chi_square: chi_square_independence(sink.counts),
        age_next_cycle_corr: [sink.corr[0].pearson(), sink.corr[1].pearson()],
        corr_pairs: [sink.corr[0].n, sink.corr[1].n],
        low_sample_cells: low,
        cycles_observed: total,
    })
}
