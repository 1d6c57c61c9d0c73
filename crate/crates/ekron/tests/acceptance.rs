//! Acceptance suite: one PASS/FAIL line per criterion. Targets come from
//! oracles computed here, independent of the library's own constants.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use ekron::commands;
use ekron::config::{Format, RunConfig};
use ekron::formats;
use ekron_core::ek::{self, EkOptions, Route, ZeroSumOptions};
use ekron_core::special::{self, Point};
use ekron_core::{li, stream, FieldSpec};

const X_MAX: u64 = 10_000_000;
const A1_RAW_TOL: f64 = 1e-2;
const A1_TOL: f64 = 1e-3;
const A1_SECONDS: f64 = 60.0;
const A2_TOL: f64 = 1e-2;
/// The literal A2 target, `2s_1 − γ²` evaluated with `s_1 = −0.0728…`.
const A2_LITERAL: f64 = -0.4788096;
const A3_TOL: f64 = 2e-2;
const A3_SECONDS: f64 = 600.0;
const A4_TOL: f64 = 1e-2;
const A4_MIN_ZEROS: usize = 10_000;
const A5_TOL: f64 = 1e-9;
const A5_SPECIAL_TOL: f64 = 1e-12;
const A6_TOL: f64 = 1e-3;
const A7_X_MAX: u64 = 1_000_000;

/// Euler's constant: `H_n − log n − 1/(2n) + Σ B_2k/(2k n^2k)`, `n = 10^4`.
fn gamma_oracle() -> f64 {
    let n = 10_000u32;
    let h: f64 = (1..=n).rev().map(|k| 1.0 / k as f64).sum();
    let nf = n as f64;
    h - nf.ln() - 0.5 / nf + 1.0 / (12.0 * nf * nf) - 1.0 / (120.0 * nf.powi(4))
}

/// The first Stieltjes limit `lim (Σ_{m≤N} log m/m − (log N)²/2)` by
/// Euler-Maclaurin at `N = 10^4`.
fn stieltjes_one_limit() -> f64 {
    let n = 10_000u32;
    let s: f64 = (1..=n).rev().map(|m| (m as f64).ln() / m as f64).sum();
    let nf = n as f64;
    let l = nf.ln();
    let f = l / nf;
    let d1 = (1.0 - l) / (nf * nf);
    let d3 = (11.0 - 6.0 * l) / nf.powi(4);
    s - l * l / 2.0 - f / 2.0 - d1 / 12.0 + d3 / 720.0
}

fn line(id: &str, pass: bool, detail: String) -> bool {
    println!("{id} {} {detail}", if pass { "PASS" } else { "FAIL" });
    pass
}

fn a1() -> bool {
    let target = gamma_oracle();
    let t = Instant::now();
    let est = ek::ek_dirichlet(&FieldSpec::rational(), 0, X_MAX, &EkOptions::default()).unwrap();
    let secs = t.elapsed().as_secs_f64();
    let (raw_err, err) = ((est.raw_partial - target).abs(), (est.value - target).abs());
    line(
        "A1",
        raw_err <= A1_RAW_TOL && err <= A1_TOL && secs <= A1_SECONDS,
        format!(
            "raw={:.7} |raw-g|={raw_err:.2e} (tol {A1_RAW_TOL:.0e}) value={:.7} |value-g|={err:.2e} (tol {A1_TOL:.0e}) time={secs:.1}s",
            est.raw_partial, est.value
        ),
    )
}

fn a2() -> bool {
    let g = gamma_oracle();
    // ζ = 1/(s−1) + γ + Σ s_n (s−1)^n with s_n = ((−1)^n/n!)·(Stieltjes limit)
    let s1 = -stieltjes_one_limit();
    let target = 2.0 * s1 - g * g;
    let est = ek::ek_dirichlet(&FieldSpec::rational(), 1, X_MAX, &EkOptions::default()).unwrap();
    let err = (est.value - target).abs();
    println!(
        "A2 INFO literal target {A2_LITERAL} uses s_1 with the opposite sign; |value-literal|={:.3e}",
        (est.value - A2_LITERAL).abs()
    );
    line(
        "A2",
        err <= A2_TOL,
        format!("value={:.7} target=2s_1-g^2={target:.7} |diff|={err:.2e} (tol {A2_TOL:.0e})", est.value),
    )
}

fn a3() -> bool {
    let fields = vec![
        FieldSpec::rational(),
        FieldSpec::quadratic(-1).unwrap(),
        FieldSpec::quadratic(5).unwrap(),
        FieldSpec::cyclotomic(5).unwrap(),
    ];
    let mut cfg = RunConfig::new(fields, vec![0, 1, 2, 3], X_MAX, vec![Route::Dirichlet, Route::Ihara]);
    cfg.threads = 1;
    let t = Instant::now();
    let estimates = commands::estimate_all(&cfg).unwrap();
    let secs = t.elapsed().as_secs_f64();
    let rows = commands::cross_rows(&estimates, 2);
    let mut ok = rows.len() == 16 && secs <= A3_SECONDS;
    let mut worst = (0.0f64, String::new());
    for row in &rows {
        let good = row.pass && row.max_abs_diff <= A3_TOL;
        if !good {
            println!("A3 row FAIL {} r={} diff={:.3e} bars={:.3e}", row.field, row.r, row.max_abs_diff, row.error_bar_sum);
        }
        ok &= good;
        if row.max_abs_diff >= worst.0 {
            worst = (row.max_abs_diff, format!("{} r={} (bars {:.3e})", row.field, row.r, row.error_bar_sum));
        }
    }
    line(
        "A3",
        ok,
        format!(
            "{} rows, max |d-i|={:.3e} at {} (tol {A3_TOL:.0e} and summed bars) time={secs:.1}s",
            rows.len(),
            worst.0,
            worst.1
        ),
    )
}

fn a4() -> bool {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/zeta_zeros_10k.txt");
    let file = match std::fs::File::open(&path) {
        Ok(f) => f,
        Err(e) => return line("A4", false, format!("cannot open {}: {e}", path.display())),
    };
    let zeros = formats::load_zero_table(std::io::BufReader::new(file), "zeta".into()).unwrap();
    let q = FieldSpec::rational();
    let mut ok = zeros.len() >= A4_MIN_ZEROS;
    let mut detail = format!("{} ordinates;", zeros.len());
    for r in [1, 2] {
        let z = ek::ek_zero_sum(&q, r, &zeros, &ZeroSumOptions::default()).unwrap();
        let d = ek::ek_dirichlet(&q, r, X_MAX, &EkOptions::default()).unwrap();
        let diff = (z.value - d.value).abs();
        ok &= diff <= A4_TOL;
        detail += &format!(" r={r} zero_sum={:.7} dirichlet={:.7} |diff|={diff:.2e};", z.value, d.value);
    }
    line("A4", ok, format!("{detail} tol {A4_TOL:.0e}"))
}

fn chi_prime(d: i64, p: u64) -> i32 {
    if d.rem_euclid(p as i64) == 0 {
        return 0;
    }
    if p == 2 {
        return if d.rem_euclid(8) == 1 { 1 } else { -1 };
    }
    let (mut acc, mut b, mut e) = (1u64, d.rem_euclid(p as i64) as u64, (p - 1) / 2);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    if acc == 1 {
        1
    } else {
        -1
    }
}

fn a5() -> bool {
    const N: usize = 1_000_000;
    let mut spf = vec![0u32; N + 1];
    for i in 2..=N {
        if spf[i] == 0 {
            for j in (i..=N).step_by(i) {
                if spf[j] == 0 {
                    spf[j] = i as u32;
                }
            }
        }
    }
    let prime_power = |n: usize| {
        let p = spf[n] as usize;
        let mut m = n;
        let mut k = 0;
        while m.is_multiple_of(p) {
            m /= p;
            k += 1;
        }
        (m == 1).then_some((p as u64, k))
    };
    let mut failures = Vec::new();

    for disc in [-4i64, 5, -3] {
        let k = FieldSpec::quadratic_from_discriminant(disc).unwrap();
        let s = stream::lambda_stream(&k, N as u64).unwrap();
        let bad = (2..=N).find(|&n| {
            let expect = prime_power(n).map_or(0.0, |(p, e)| (p as f64).ln() * (1 + chi_prime(disc, p).pow(e)) as f64);
            (s.value(n as u64) - expect).abs() > A5_TOL * expect.max(1.0)
        });
        if let Some(n) = bad {
            failures.push(format!("lambda identity D={disc} n={n}"));
        }
    }

    let fields: Vec<FieldSpec> = [FieldSpec::rational()]
        .into_iter()
        .chain([-1, 5, -3, 2, -5, 13].map(|d| FieldSpec::quadratic(d).unwrap()))
        .chain([3, 4, 5, 7, 8, 12, 15, 16].map(|m| FieldSpec::cyclotomic(m).unwrap()))
        .collect();
    for k in &fields {
        for p in (2..=10_000usize).filter(|&n| spf[n] as usize == n) {
            if k.split_prime(p as u64).unwrap().degree() != k.degree as u64 {
                failures.push(format!("splitting degree {} p={p}", k.label));
            }
        }
    }

    let grid: Vec<f64> = (1..=40).map(|i| 1.0 + 1.4f64.powi(i)).collect();
    for k in &fields[..4] {
        let table = stream::phi_table(k, &grid, 4).unwrap();
        for r in 0..=4 {
            for (c, &x) in grid.iter().enumerate() {
                let bound = k.degree as f64 * x.ln().powi(r as i32 + 1);
                if table.get(r, c).value > bound * (1.0 + A5_TOL) {
                    failures.push(format!("phi bound {} r={r} x={x}", k.label));
                }
            }
        }
    }
    let pts: Vec<f64> = (2..=10_000).map(|n| n as f64 + 1.0).collect();
    let table = stream::phi_table(&FieldSpec::rational(), &pts, 0).unwrap();
    for (c, &x) in pts.iter().enumerate() {
        if table.get(0, c).value > (x - 1.0).ln() * (1.0 + A5_TOL) {
            failures.push(format!("phi_Q(0, n+1) > log n at n={}", x - 1.0));
        }
    }

    for k in &fields {
        for r in 1..=8u32 {
            let expect = k.r1 as f64 / 2f64.powi(r as i32 + 1) * special::polygamma_at(Point::Half, r).unwrap()
                + k.r2 as f64 * special::polygamma_at(Point::One, r).unwrap();
            let got = special::gamma_tilde_deriv(k, r).unwrap().value;
            if (got - expect).abs() > A5_SPECIAL_TOL * expect.abs().max(1.0) {
                failures.push(format!("gamma tilde {} r={r}", k.label));
            }
        }
    }

    for i in 0..20 {
        let x = 1.0 + 99.0 * ((i as f64 + 0.5) * 0.618_033_988_749_895).fract();
        let (l, q) = (x.ln(), (1.0 + x) / (1.0 - x));
        let f = special::f_orders(x, 3).unwrap();
        let f2 = l.powi(3) / 3.0 + q * l * l + 2.0 * l;
        let f3 = l.powi(4) / 4.0 + q * l.powi(3) + 6.0 * (2.0 + q * l + l * l / 2.0);
        if (f[2] - f2).abs() > A5_SPECIAL_TOL * f2.abs().max(1.0) || (f[3] - f3).abs() > A5_SPECIAL_TOL * f3.abs().max(1.0) {
            failures.push(format!("f recursion x={x}"));
        }
    }

    let detail = if failures.is_empty() {
        "lambda identity, splitting degrees, phi bounds, gamma tilde, f recursion".to_string()
    } else {
        failures.iter().take(5).cloned().collect::<Vec<_>>().join("; ")
    };
    line("A5", failures.is_empty(), detail)
}

fn a6() -> bool {
    let g = gamma_oracle();
    let target = 1.0 + g / 2.0 - 0.5 * (4.0 * std::f64::consts::PI).ln();
    let q = FieldSpec::rational();
    let est = ek::ek_dirichlet(&q, 0, X_MAX, &EkOptions::default()).unwrap();
    let lam = li::li_coefficient(&q, 1, &[est]).unwrap();
    let err = (lam.value - target).abs();
    line("A6", err <= A6_TOL, format!("lambda_1={:.7} target={target:.7} |diff|={err:.2e} (tol {A6_TOL:.0e})", lam.value))
}

fn a7() -> bool {
    let scan_text = |threads: usize| {
        let mut cfg = RunConfig::new(commands::quadratic_family(-500, -3), vec![1], A7_X_MAX, vec![Route::Dirichlet]);
        cfg.format = Format::Csv;
        cfg.threads = threads;
        commands::scan(&cfg).unwrap()
    };
    let one = scan_text(1);
    let many = scan_text(8);
    let header: Vec<&str> = commands::SCAN_CSV_HEADER.split(',').collect();
    let col = header.iter().position(|&h| h == "ratio").unwrap();
    let rows: Vec<&str> = one.lines().skip(1).collect();
    let finite = rows.iter().all(|r| {
        // labels carry no commas, so a plain split is safe here
        r.split(',').nth(col).and_then(|v| v.parse::<f64>().ok()).is_some_and(f64::is_finite)
    });
    let expected = commands::quadratic_family(-500, -3).len();
    line(
        "A7",
        finite && one == many && rows.len() == expected,
        format!(
            "{} fields, ratios finite={finite}, threads 1 vs 8 byte-identical={}",
            rows.len(),
            one == many
        ),
    )
}

fn main() -> ExitCode {
    let results = [a1(), a2(), a3(), a4(), a5(), a6(), a7()];
    let passed = results.iter().filter(|&&p| p).count();
    println!("acceptance: {passed}/{} criteria passed", results.len());
    if passed == results.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
