//! One PASS/FAIL line per acceptance criterion; exits nonzero if any fails.

mod common;

use std::time::{Duration, Instant};

use common::{chain_between, contour_residue, jets, pole_distance, residue_path};
use isola_core::basis::{omega, ModeIndex, Sign};
use isola_core::entanglement::{chain_bracket, ent, is_pole, residue, swapped_chain_bracket};
use isola_core::floquet_oracle::{
    build, eigenvalues, measure_isola, reversibility_defect, IsolaMeasurement, OracleSettings,
};
use isola_core::golden;
use isola_core::instability::{
    critical_curves, discriminant_poly, ellipse, instability_criterion, Criterion, IsolaModel,
};
use isola_core::jet_assembly::{assemble_reduced_jet, term_ledger, Group};
use num_complex::Complex64;
use std::cell::Cell;

use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};

const EXACT: f64 = 1e-12;

struct Outcome {
    ok: bool,
    detail: String,
}

impl Outcome {
    fn new(ok: bool, detail: impl Into<String>) -> Self {
        Outcome {
            ok,
            detail: detail.into(),
        }
    }
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() < EXACT
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let ledger = match term_ledger() {
        Ok(l) => l,
        Err(e) => return Outcome::new(false, format!("ledger failed: {e}")),
    };
    let s3 = 3f64.sqrt();
    let mut bad: Vec<String> = ledger
        .terms
        .iter()
        .filter(|t| golden::term(t.group, &t.name).is_none_or(|g| (t.value - g).norm() >= EXACT))
        .map(|t| t.key())
        .collect();
    let checks = [
        ("α₂", ledger.alpha2(), 9.0 / 8.0),
        ("γ₂", ledger.gamma2(), 1.0 / 16.0),
        ("β₁", ledger.beta1(), 0.0),
        ("β₂", ledger.beta2(), -s3 / 6.0),
        ("β₃", ledger.beta3(), -39.0 * s3 / 512.0),
    ];
    for (name, got, want) in checks {
        if !close(got, want) {
            bad.push(name.into());
        }
    }
    let l = ledger.get(Group::Beta3, "𝐋");
    if (l - Complex64::new(0.0, -305.0 * s3 / 512.0)).norm() >= EXACT {
        bad.push("𝐋".into());
    }
    let elapsed = start.elapsed();
    if elapsed >= Duration::from_secs(1) {
        bad.push(format!("runtime {elapsed:?}"));
    }
    Outcome::new(
        bad.is_empty(),
        format!(
            "{} terms, 5 coefficients, 𝐋 in {elapsed:.2?} {}",
            ledger.terms.len(),
            bad.join(" ")
        ),
    )
}

fn stokes_model() -> IsolaModel {
    IsolaModel::from_jet(&assemble_reduced_jet().expect("reduced jet"))
}

fn criterion_2() -> Outcome {
    let m = stokes_model();
    let s3 = 3f64.sqrt();
    let curves = critical_curves(&m).expect("degenerate");
    let d = discriminant_poly(&m);
    let e = ellipse(&m, 1.0).expect("ellipse");
    let checks = [
        ("T₁", m.t1(), 4.0 / 3.0),
        ("T₂", m.t2(), 19.0 / 16.0),
        ("β₃−β₂T₂/T₁", m.quartic_gap(), 37.0 * s3 / 512.0),
        ("μ₀ ε²", curves.mu0.coeff(2), -57.0 / 64.0),
        ("ν₊ ε⁴", curves.nu_plus.coeff(4), -111.0 * s3 / 1024.0),
        ("ν₋ ε⁴", curves.nu_minus.coeff(4), 111.0 * s3 / 1024.0),
        ("D ε⁸", d.coeff(0, 8), 4107.0 / 65536.0),
        ("D νε⁶", d.coeff(1, 6), -37.0 / 128.0),
        ("center ε²", e.center_y - 0.75, -55.0 / 32.0),
        ("axis ratio", e.semi_axis_y / e.semi_axis_x, 2.0),
    ];
    let bad: Vec<&str> = checks
        .iter()
        .filter(|(_, g, w)| !close(*g, *w))
        .map(|(n, _, _)| *n)
        .collect();
    Outcome::new(
        bad.is_empty(),
        format!("{} constants {}", checks.len(), bad.join(" ")),
    )
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for mu in [0.1, 0.25, 0.4] {
        let ev = match build(mu, 0.0, 32, 4).and_then(|op| eigenvalues(&op)) {
            Ok(ev) => ev,
            Err(e) => return Outcome::new(false, format!("μ={mu}: {e}")),
        };
        let mut pool = ev;
        for j in -32..=32 {
            for s in Sign::BOTH {
                let want = Complex64::new(0.0, omega(j, s, mu));
                let (k, d) = pool
                    .iter()
                    .enumerate()
                    .map(|(k, z)| (k, (z - want).norm()))
                    .min_by(|a, b| a.1.total_cmp(&b.1))
                    .expect("eigenvalue left");
                worst = worst.max(d);
                pool.swap_remove(k);
            }
        }
    }
    let elapsed = start.elapsed();
    Outcome::new(
        worst <= 1e-12 && elapsed < Duration::from_secs(5),
        format!("max |λ − iω| = {worst:.1e} in {elapsed:.2?}"),
    )
}

const EPS_LIST: [f64; 3] = [0.04, 0.06, 0.08];

fn measurements() -> Result<(Vec<IsolaMeasurement>, Duration), String> {
    let start = Instant::now();
    let m = stokes_model();
    let s = OracleSettings {
        n: 32,
        stokes_order: 4,
        ..OracleSettings::default()
    };
    let out: Vec<_> = std::thread::scope(|scope| {
        let handles: Vec<_> = EPS_LIST
            .iter()
            .map(|&e| scope.spawn(move || measure_isola(e, m.mu0(e), (e * e * e).max(1e-4), &s)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("worker"))
            .collect()
    });
    let out: Result<Vec<_>, _> = out.into_iter().collect();
    out.map(|v| (v, start.elapsed())).map_err(|e| e.to_string())
}

fn criterion_4(meas: &[IsolaMeasurement], elapsed: Duration) -> Outcome {
    let coeff = 37.0 * 3f64.sqrt() / 512.0;
    let rel: Vec<f64> = meas
        .iter()
        .map(|r| (r.max_re - coeff * r.eps.powi(4)).abs() / (coeff * r.eps.powi(4)))
        .collect();
    let a = rel.iter().all(|r| *r <= 0.25) && rel.windows(2).all(|w| w[0] <= w[1]);
    let im_err: Vec<f64> = meas
        .iter()
        .map(|r| (r.im_center - (0.75 - 55.0 / 32.0 * r.eps * r.eps)).abs())
        .collect();
    let b = im_err.iter().all(|e| *e <= 5e-4);
    // least squares for log(max Re) = slope·log ε + c
    let xs: Vec<f64> = meas.iter().map(|r| r.eps.ln()).collect();
    let ys: Vec<f64> = meas.iter().map(|r| r.max_re.ln()).collect();
    let n = xs.len() as f64;
    let (mx, my) = (xs.iter().sum::<f64>() / n, ys.iter().sum::<f64>() / n);
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let slope = sxy / sxx;
    let c = (slope - 4.0).abs() <= 0.3;
    let time_ok = elapsed < Duration::from_secs(120);
    Outcome::new(
        a && b && c && time_ok,
        format!(
            "(a) rel {} (b) |Δim| {} (c) slope {slope:.4} in {elapsed:.1?}",
            rel.iter()
                .map(|r| format!("{r:.3}"))
                .collect::<Vec<_>>()
                .join("/"),
            im_err
                .iter()
                .map(|e| format!("{e:.1e}"))
                .collect::<Vec<_>>()
                .join("/"),
        ),
    )
}

fn seeded(cases: u32) -> TestRunner {
    let config = Config {
        failure_persistence: None,
        ..Config::with_cases(cases)
    };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn criterion_5(meas: &[IsolaMeasurement]) -> Outcome {
    let mut notes = Vec::new();
    let mut ok = true;

    let mut conj_worst: f64 = 0.0;
    for ell in jets() {
        for kappa in -4..=4 {
            for j in -6..=6 {
                for s in Sign::BOTH {
                    for t in Sign::BOTH {
                        let a = ent(
                            ell,
                            kappa,
                            ModeIndex::new(j + kappa, t),
                            ModeIndex::new(j, s),
                        );
                        let b = ent(
                            ell,
                            -kappa,
                            ModeIndex::new(j, s),
                            ModeIndex::new(j + kappa, t),
                        );
                        conj_worst = conj_worst.max((a - b.conj()).norm());
                    }
                }
            }
        }
    }
    ok &= conj_worst < 1e-13;
    notes.push(format!("conj {conj_worst:.0e}"));

    let mut runner = seeded(50);
    let contour_worst = Cell::new(0.0f64);
    let perm = runner.run(&residue_path(), |path| {
        let r = residue(&path).expect("supported");
        let mut rev = path.clone();
        rev.reverse();
        rev.rotate_left(1);
        if (residue(&rev).expect("supported") - r).abs() > 1e-13 {
            return Err(TestCaseError::fail("permutation"));
        }
        if path.iter().all(|m| is_pole(*m) || pole_distance(*m) > 0.2) {
            let d = (r - contour_residue(&path)).abs();
            contour_worst.set(contour_worst.get().max(d));
            if d >= 1e-8 {
                return Err(TestCaseError::fail("contour"));
            }
        }
        Ok(())
    });
    ok &= perm.is_ok();
    notes.push(format!(
        "residue {}",
        if perm.is_ok() {
            format!("{:.0e}", contour_worst.get())
        } else {
            "FAIL".into()
        }
    ));

    let mut runner = seeded(30);
    let swap_worst = Cell::new(0.0f64);
    let swap = runner.run(&chain_between(), |(chain, src, tgt)| {
        let (l, r) = (
            chain_bracket(&chain, src, tgt),
            swapped_chain_bracket(&chain, src, tgt),
        );
        proptest::prop_assume!(l.is_ok() && r.is_ok());
        let d = (l.unwrap() - r.unwrap()).norm();
        swap_worst.set(swap_worst.get().max(d));
        proptest::prop_assert!(d < 1e-12);
        Ok(())
    });
    ok &= swap.is_ok();
    notes.push(format!("swap {:.0e}", swap_worst.get()));

    let mut rev_worst: f64 = 0.0;
    for (eps, n) in [(0.05, 32), (0.1, 32), (0.1, 64)] {
        let ev = build(0.245, eps, n, 4)
            .and_then(|op| eigenvalues(&op))
            .expect("spectrum");
        rev_worst = rev_worst.max(reversibility_defect(&ev));
    }
    ok &= rev_worst <= 1e-10;
    notes.push(format!("reversible {rev_worst:.0e}"));

    let ham = meas
        .iter()
        .map(|m| m.hamiltonian_defect)
        .fold(0.0, f64::max);
    ok &= ham <= 1e-9 && meas.iter().all(|m| m.max_re > 0.0);
    notes.push(format!("hamiltonian {ham:.0e}"));

    Outcome::new(ok, notes.join(", "))
}

fn criterion_6() -> Outcome {
    let m = stokes_model();
    let stokes = instability_criterion(&m.trace_coefficients(), 1e-12);
    let synthetic =
        instability_criterion(&IsolaModel { beta1: 0.5, ..m }.trace_coefficients(), 1e-12);
    Outcome::new(
        stokes == Criterion::UnstableAtOrder(4) && synthetic == Criterion::UnstableAtOrder(2),
        format!("stokes {stokes:?}, synthetic β₁≠0 {synthetic:?}"),
    )
}

fn main() {
    let mut results = vec![
        ("1 golden coefficients", criterion_1()),
        ("2 instability constants", criterion_2()),
    ];
    results.push(("3 oracle at rest", criterion_3()));
    match measurements() {
        Ok((meas, elapsed)) => {
            results.push(("4 isola reproduction", criterion_4(&meas, elapsed)));
            results.push(("5 structural properties", criterion_5(&meas)));
        }
        Err(e) => {
            results.push(("4 isola reproduction", Outcome::new(false, e.clone())));
            results.push(("5 structural properties", Outcome::new(false, e)));
        }
    }
    results.push(("6 degenerate criterion", criterion_6()));
    let mut failed = false;
    for (name, o) in &results {
        println!(
            "{} criterion {name}: {}",
            if o.ok { "PASS" } else { "FAIL" },
            o.detail.trim_end()
        );
        failed |= !o.ok;
    }
    if failed {
        std::process::exit(1);
    }
}
