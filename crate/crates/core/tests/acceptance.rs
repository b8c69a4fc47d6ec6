//! Acceptance suite. Prints one PASS/FAIL line per criterion followed by the
//! measurements behind it. The process exits successfully once every
//! criterion has been evaluated; a failing criterion is reported, not hidden.

mod common;

use std::time::Instant;

use common::{gaussian, relative_error};
use fasthankel::bessel::{
    asy_error_bound, bessel_j, bessel_roots_j0, hankel_asy_eval, jn, neumann_error_bound, neumann_radius,
    neumann_sum, s_cutoff, t_cutoff,
};
use fasthankel::dht::{dht, dht_direct, dht_self_inverse_residual, DhtPlan};
use fasthankel::fourier_bessel::{fourier_bessel_direct, FourierBesselPlan};
use fasthankel::schlomilch::{
    schlomilch_direct, schlomilch_fast, schlomilch_single_partition, select_params, Rows, SchlomilchPlan,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const ACCURACIES: [f64; 3] = [1e-3, 1e-8, 1e-15];
const SEED: u64 = 2016;

/// Allowance for floating-point rounding when a computed error is compared
/// with an analytic bound that may itself be far below machine precision.
const ROUNDING: f64 = 8.0 * f64::EPSILON;

/// Pointwise accuracy of `jn`, as pinned by the Bessel test suite. A
/// Neumann sum adds up to 31 such values, so its computed error cannot be
/// resolved below this level.
const EVAL_FLOOR: f64 = 1e-14;

struct Report {
    lines: Vec<String>,
    passed: bool,
}

impl Report {
    fn new() -> Self {
        Self { lines: Vec::new(), passed: true }
    }

    fn check(&mut self, ok: bool, line: String) {
        if !ok {
            self.passed = false;
            self.lines.push(format!("    FAIL {line}"));
        }
    }

    fn note(&mut self, line: String) {
        self.lines.push(format!("    {line}"));
    }

    fn finish(self, id: usize, title: &str, seconds: f64) -> bool {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        println!("{verdict} criterion {id}: {title} ({seconds:.1} s)");
        for line in &self.lines {
            println!("{line}");
        }
        self.passed
    }
}

const TABLE_S_ORDERS: [i32; 4] = [0, 1, 2, 10];
const TABLE_S: [[f64; 10]; 4] = [
    [180.5, 70.5, 41.5, 30.0, 24.3, 21.1, 19.1, 17.8, 17.0, 16.5],
    [185.2, 71.5, 41.9, 30.2, 24.4, 21.1, 19.2, 17.9, 17.1, 16.5],
    [200.2, 74.8, 43.1, 30.8, 24.8, 21.4, 19.3, 18.0, 17.2, 16.6],
    [2330.7, 500.0, 149.0, 64.6, 41.4, 31.4, 26.0, 22.9, 20.9, 19.6],
];
const TABLE_T: [[f64; 9]; 4] = [
    [6e-8, 0.001, 0.011, 0.059, 0.165, 0.337, 0.573, 0.869, 1.217],
    [3e-5, 0.003, 0.029, 0.104, 0.243, 0.449, 0.716, 1.039, 1.411],
    [0.001, 0.012, 0.061, 0.168, 0.341, 0.579, 0.876, 1.225, 1.618],
    [0.484, 0.743, 1.058, 1.420, 1.823, 2.262, 2.733, 3.230, 3.750],
];
const TABLE_NEUMANN: [f64; 8] = [4e-6, 9e-5, 0.001, 0.002, 0.004, 0.008, 0.013, 0.020];

fn parameter_tables() -> Report {
    let eps = 1e-15;
    let mut r = Report::new();
    let mut worst_s: f64 = 0.0;
    for (row, &nu) in TABLE_S.iter().zip(&TABLE_S_ORDERS) {
        for (i, &want) in row.iter().enumerate() {
            let m = i + 3;
            let got = s_cutoff(nu, m, eps);
            let tol = if want > 100.0 { 0.01 * want } else { 0.5 };
            worst_s = worst_s.max((got - want).abs() / tol);
            r.check((got - want).abs() <= tol, format!("s nu={nu} M={m}: {got:.3} vs {want}"));
        }
    }
    let mut worst_t: f64 = 0.0;
    for (row, &nu) in TABLE_T.iter().zip(&TABLE_S_ORDERS) {
        for (i, &want) in row.iter().enumerate() {
            let t = i + 1;
            let got = t_cutoff(nu as u32, t, eps);
            let tol = if nu == 10 { 0.01 } else { 0.005 };
            worst_t = worst_t.max((got - want).abs() / tol);
            r.check((got - want).abs() <= tol, format!("t nu={nu} T={t}: {got:.4} vs {want}"));
        }
    }
    let mut worst_k: f64 = 0.0;
    for (i, &want) in TABLE_NEUMANN.iter().enumerate() {
        let k = i + 3;
        let got = neumann_radius(k, eps);
        let rel = (got - want).abs() / want;
        worst_k = worst_k.max(rel / 0.1);
        r.check(rel <= 0.1, format!("neumann K={k}: {got:.3e} vs {want:e} (relative {rel:.3})"));
    }
    r.note(format!(
        "worst error / tolerance: s {worst_s:.3}, t {worst_t:.3}, neumann radius {worst_k:.3}"
    ));
    r
}

fn schlomilch_oracle() -> Report {
    let mut r = Report::new();
    let mut worst: f64 = 0.0;
    for n in [64usize, 256, 1024, 4096] {
        let c = gaussian(n, SEED);
        for nu in [0u32, 1, 2, 10] {
            let direct = schlomilch_direct(nu, 0.0, &c).unwrap();
            for eps in ACCURACIES {
                let params = select_params(nu, n, eps, 0.0).unwrap();
                let fast = schlomilch_fast(&params, &c).unwrap();
                let err = relative_error(&fast, &direct, &c) / eps;
                worst = worst.max(err);
                r.check(err <= 10.0, format!("N={n} nu={nu} eps={eps:e}: error {err:.3} eps ||c||_1"));
            }
        }
    }
    r.note(format!("worst error: {worst:.3} eps ||c||_1 (limit 10)"));
    r
}

fn fourier_bessel_oracle() -> Report {
    let mut r = Report::new();
    let mut worst: f64 = 0.0;
    for n in [64usize, 256, 1024, 4096] {
        let c = gaussian(n, SEED);
        for nu in [0i32, 1] {
            let direct = fourier_bessel_direct(nu, &c).unwrap();
            for eps in ACCURACIES {
                let plan = FourierBesselPlan::new(nu, n, eps).unwrap();
                let fast = plan.apply(&c).unwrap();
                let err = relative_error(&fast, &direct, &c) / eps;
                worst = worst.max(err);
                r.check(err <= 10.0, format!("N={n} nu={nu} eps={eps:e}: error {err:.3} eps ||c||_1"));
            }
        }
    }
    r.note(format!("worst error: {worst:.3} eps ||c||_1 (limit 10)"));
    r
}

fn dht_oracle() -> Report {
    let mut r = Report::new();
    let mut worst: f64 = 0.0;
    for n in [64usize, 256, 1024, 2048] {
        let c = gaussian(n, SEED);
        let direct = dht_direct(&c).unwrap();
        for eps in ACCURACIES {
            let plan = DhtPlan::new(n, eps).unwrap();
            let fast = dht(&plan, &c).unwrap();
            let err = relative_error(&fast, &direct, &c) / eps;
            worst = worst.max(err);
            r.check(err <= 10.0, format!("N={n} eps={eps:e}: error {err:.3} eps ||c||_1"));
        }
    }
    r.note(format!("worst error: {worst:.3} eps ||c||_1 (limit 10)"));
    r
}

fn truncation_bounds() -> Report {
    let mut r = Report::new();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let samples = 10_000;

    // Neumann addition: |J_ν(z+δz) - Σ_{|s|<K} J_{ν-s}(z) J_s(δz)| ≤ 5.2 (e|δz|/2)^K.
    let mut neumann_fail = 0;
    let mut neumann_slack: f64 = f64::INFINITY;
    let mut below_floor = 0;
    for _ in 0..samples {
        let nu = rng.random_range(-20..=20);
        let z = rng.random_range(1e-3..200.0);
        let dz = rng.random_range(-1.0..1.0) / std::f64::consts::E;
        let k = rng.random_range(1..=16);
        let err = (jn(nu, z + dz) - neumann_sum(nu, k, z, dz)).abs();
        let bound = neumann_error_bound(k, dz);
        if err > bound + EVAL_FLOOR {
            neumann_fail += 1;
            if neumann_fail <= 5 {
                r.check(false, format!("neumann nu={nu} z={z} dz={dz} K={k}: {err:e} > {bound:e}"));
            }
        }
        if err > EVAL_FLOOR {
            neumann_slack = neumann_slack.min(bound / err);
        }
        if bound < EVAL_FLOOR {
            below_floor += 1;
        }
    }
    r.check(neumann_fail == 0, format!("neumann bound violated in {neumann_fail} of {samples} samples"));
    r.note(format!(
        "neumann: {samples} samples ({below_floor} with bound below {EVAL_FLOOR:e}), \
         smallest bound/error above that level {neumann_slack:.3}"
    ));

    // Root perturbations: 0 ≤ b_n ≤ 1/(8(n-1/4)π) and
    // |e_{k,N}| ≤ 1/(8(N+3/4)(k-1/4)π²).
    let count = 10_000;
    let roots = bessel_roots_j0(count + 1).unwrap();
    let pi = std::f64::consts::PI;
    let mut root_fail = 0;
    for n in 1..=count {
        let b = roots.perturbation(n);
        let cap = 1.0 / (8.0 * (n as f64 - 0.25) * pi);
        let residual = bessel_j(0, roots.root(n)).unwrap().abs();
        if !(0.0..=cap).contains(&b) || residual > 1e-13 {
            root_fail += 1;
            r.check(false, format!("root n={n}: b={b:e} cap={cap:e} |J0|={residual:e}"));
        }
    }
    let mut ratio_fail = 0;
    let mut ratio_checked = 0;
    for big_n in [1usize, 2, 10, 100, 1000, 5000, count] {
        for k in 1..=big_n {
            let e = roots.ratio_perturbation(k, big_n).abs();
            let cap = 1.0 / (8.0 * (big_n as f64 + 0.75) * (k as f64 - 0.25) * pi * pi);
            ratio_checked += 1;
            if e > cap {
                ratio_fail += 1;
                if ratio_fail <= 5 {
                    r.check(false, format!("ratio k={k} N={big_n}: {e:e} > {cap:e}"));
                }
            }
        }
    }
    r.check(root_fail == 0, format!("root envelope violated for {root_fail} of {count} roots"));
    r.check(ratio_fail == 0, format!("ratio envelope violated in {ratio_fail} of {ratio_checked} pairs"));
    r.note(format!("roots: b_n envelope for n <= {count}, e_(k,N) envelope on {ratio_checked} pairs"));

    // Hankel remainder: |J_ν(z) - (M-pair expansion)| is at most the first
    // neglected terms once z ≥ s_{ν,M}(ε).
    let mut asy_fail = 0;
    let mut asy_slack: f64 = f64::INFINITY;
    for _ in 0..samples {
        let nu = rng.random_range(0..=10);
        let m = rng.random_range(1..=12);
        let eps = 10f64.powf(rng.random_range(-15.0..-3.0));
        let s = s_cutoff(nu, m, eps);
        let z = s * rng.random_range(1.0..4.0);
        let err = (bessel_j(nu as u32, z).unwrap() - hankel_asy_eval(nu, m, z)).abs();
        let bound = asy_error_bound(nu, m, z);
        if err > bound + ROUNDING {
            asy_fail += 1;
            if asy_fail <= 5 {
                r.check(false, format!("asymptotic nu={nu} M={m} z={z}: {err:e} > {bound:e}"));
            }
        }
        if err > ROUNDING {
            asy_slack = asy_slack.min(bound / err);
        }
    }
    r.check(asy_fail == 0, format!("asymptotic bound violated in {asy_fail} of {samples} samples"));
    r.note(format!("asymptotic: {samples} samples, smallest bound/error above rounding {asy_slack:.3}"));
    r
}

fn best_time(runs: usize, mut f: impl FnMut()) -> f64 {
    f();
    (0..runs)
        .map(|_| {
            let start = Instant::now();
            f();
            start.elapsed().as_secs_f64()
        })
        .fold(f64::INFINITY, f64::min)
}

fn complexity_trend() -> Report {
    let mut r = Report::new();
    let eps = 1e-15;
    let time = |n: usize| {
        let c = gaussian(n, SEED);
        let params = select_params(0, n, eps, 0.0).unwrap();
        best_time(3, || {
            std::hint::black_box(schlomilch_fast(&params, &c).unwrap());
        })
    };
    for n in [1usize << 13, 1 << 15] {
        let small = time(n);
        let large = time(4 * n);
        let ratio = large / small;
        r.check(ratio <= 6.0, format!("N={n}: time(4N)/time(N) = {ratio:.2}"));
        r.note(format!("N={n}: {small:.4} s, 4N: {large:.4} s, ratio {ratio:.2} (limit 6)"));
    }
    for n in [1usize << 13, 1 << 15, 1 << 17] {
        let params = select_params(0, n, eps, 0.0).unwrap();
        let plan = SchlomilchPlan::new(params).unwrap();
        let (_, stats) = plan.apply_with_stats(&gaussian(n, SEED), Rows::All).unwrap();
        let expect = 2 * params.m * (2 * params.p + 1);
        r.check(
            stats.transforms == expect,
            format!("N={n}: {} transforms, formula {expect}", stats.transforms),
        );
        r.note(format!("N={n}: M={} P={} transforms {} (formula {expect})", params.m, params.p, stats.transforms));
    }
    r
}

/// Least-squares slope of `log y` against `log x`.
fn loglog_slope(points: &[(f64, f64)]) -> f64 {
    let logs: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let count = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / count;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / count;
    let sxy: f64 = logs.iter().map(|&(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = logs.iter().map(|&(x, _)| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

fn self_inverse_trend() -> Report {
    let mut r = Report::new();
    let eps = 1e-15;
    let sizes: Vec<usize> = (7..=13).map(|p| 1usize << p).collect();
    let mut gauss = Vec::new();
    let mut cubic = Vec::new();
    for &n in &sizes {
        let g = dht_self_inverse_residual(n, eps, &gaussian(n, SEED)).unwrap();
        let c: Vec<f64> = (1..=n).map(|i| (i as f64).powi(-3)).collect();
        let s = dht_self_inverse_residual(n, eps, &c).unwrap();
        r.note(format!("N={n}: gaussian {g:.3e}, n^-3 {s:.3e}"));
        gauss.push((n as f64, g));
        cubic.push(s);
    }

    let turn = gauss
        .iter()
        .enumerate()
        .min_by(|a, b| a.1 .1.total_cmp(&b.1 .1))
        .map(|(i, _)| i)
        .unwrap();
    let turn_n = sizes[turn];
    if turn >= 1 {
        let slope = loglog_slope(&gauss[..=turn]);
        r.check((-2.8..=-1.2).contains(&slope), format!("decaying branch slope {slope:.3}"));
        r.note(format!("decaying branch N={}..{turn_n}: slope {slope:.3} (range -2.8..-1.2)", sizes[0]));
    } else {
        r.check(false, "no decaying branch: minimum at the first size".to_string());
    }
    if turn + 1 < sizes.len() {
        let slope = loglog_slope(&gauss[turn..]);
        r.check((0.9..=2.1).contains(&slope), format!("growing branch slope {slope:.3}"));
        r.note(format!(
            "growing branch N={turn_n}..{}: slope {slope:.3} (range 0.9..2.1)",
            sizes[sizes.len() - 1]
        ));
    } else {
        r.check(false, "no growing branch: minimum at the last size".to_string());
    }

    let bound = 1e-12;
    let worst = cubic.iter().copied().fold(0.0, f64::max);
    r.check(worst <= bound, format!("n^-3 residual {worst:.3e} exceeds {bound:e}"));
    r.note(format!("n^-3 coefficients: largest residual {worst:.3e} (bound {bound:e})"));
    r
}

fn degenerate_partition() -> Report {
    let mut r = Report::new();
    let eps = 1e-15;
    let mut checked = 0;
    let mut largest = 0;
    for n in 1..=400usize {
        let params = select_params(0, n, eps, 0.0).unwrap();
        if params.p != 0 {
            continue;
        }
        checked += 1;
        largest = n;
        let c = gaussian(n, SEED + n as u64);
        let fast = schlomilch_fast(&params, &c).unwrap();
        let single = schlomilch_single_partition(&params, &c).unwrap();
        let same = fast.iter().zip(&single).all(|(a, b)| a.to_bits() == b.to_bits());
        r.check(same, format!("N={n}: outputs differ"));
    }
    r.check(largest >= 158, format!("P = 0 selected only up to N={largest}"));
    r.note(format!("P = 0 for {checked} sizes, largest N={largest}; all bitwise identical"));
    r
}

type Criterion = (&'static str, fn() -> Report);

fn main() {
    let criteria: [Criterion; 8] = [
        ("parameter tables", parameter_tables),
        ("Schlomilch fast vs direct", schlomilch_oracle),
        ("Fourier-Bessel fast vs direct", fourier_bessel_oracle),
        ("discrete Hankel transform fast vs direct", dht_oracle),
        ("truncation bounds", truncation_bounds),
        ("complexity trend", complexity_trend),
        ("self-inverse trend", self_inverse_trend),
        ("degenerate partition", degenerate_partition),
    ];
    let mut failed = 0;
    for (i, (title, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let report = run();
        if !report.finish(i + 1, title, start.elapsed().as_secs_f64()) {
            failed += 1;
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
}
