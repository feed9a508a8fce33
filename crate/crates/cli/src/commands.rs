use anyhow::Context;
use isola_core::floquet_oracle::{
    build, convergence_check, eigenvalues as oracle_eigenvalues, measure_isola,
    reversibility_defect, trace_isola, OracleSettings, Tracking,
};
use isola_core::golden;
use isola_core::instability::{
    critical_curves, discriminant_poly, eigenvalues, ellipse, max_growth_rate, IsolaModel, Regime,
};
use isola_core::jet_assembly::{assemble_reduced_jet, term_ledger, ReducedMatrixJet};

use crate::config::Settings;
use crate::output::{emit, Cell, Table};
use crate::{Mismatch, UsageError};

fn model(jet: &ReducedMatrixJet) -> IsolaModel {
    IsolaModel::from_jet(jet)
}

struct Check {
    id: String,
    label: String,
    got: (f64, f64),
    want: (f64, f64),
}

fn real(id: &str, label: &str, got: f64, want: f64) -> Check {
    Check {
        id: id.into(),
        label: label.into(),
        got: (got, 0.0),
        want: (want, 0.0),
    }
}

fn golden_checks() -> anyhow::Result<Vec<Check>> {
    let ledger = term_ledger()?;
    let jet = assemble_reduced_jet()?;
    let m = model(&jet);
    let curves = critical_curves(&m)?;
    let d = discriminant_poly(&m);
    let e = ellipse(&m, 1.0)?;
    let mut out = Vec::new();
    for t in &ledger.terms {
        let want = golden::term(t.group, &t.name)
            .with_context(|| format!("no reference value for {}", t.key()))?;
        out.push(Check {
            id: t.key(),
            label: format!("{} coefficient of {}", t.name, t.group.monomial()),
            got: (t.value.re, t.value.im),
            want: (want.re, want.im),
        });
    }
    let s3 = 3f64.sqrt();
    out.extend([
        real("alpha2", "α₂ = 9/8", ledger.alpha2(), golden::ALPHA2),
        real("gamma2", "γ₂ = 1/16", ledger.gamma2(), golden::GAMMA2),
        real("beta1", "β₁ = 0", ledger.beta1(), golden::BETA1),
        real("beta2", "β₂ = −√3/6", ledger.beta2(), golden::beta2()),
        real("beta3", "β₃ = −39√3/512", ledger.beta3(), golden::beta3()),
        real("T1", "T₁ = 4/3", m.t1(), golden::T1),
        real("T2", "T₂ = 19/16", m.t2(), golden::T2),
        real(
            "quartic-gap",
            "β₃ − β₂T₂/T₁ = 37√3/512",
            m.quartic_gap(),
            37.0 * s3 / 512.0,
        ),
        real(
            "mu0-eps2",
            "μ₀ ε² coefficient = −57/64",
            curves.mu0.coeff(2),
            golden::MU0_EPS2,
        ),
        real(
            "nu-plus-eps4",
            "ν₊ ε⁴ coefficient = −111√3/1024",
            curves.nu_plus.coeff(4),
            golden::nu_plus_eps4(),
        ),
        real(
            "nu-minus-eps4",
            "ν₋ ε⁴ coefficient = 111√3/1024",
            curves.nu_minus.coeff(4),
            -golden::nu_plus_eps4(),
        ),
        real(
            "D-eps8",
            "D ε⁸ coefficient = 4107/65536",
            d.coeff(0, 8),
            golden::D_EPS8,
        ),
        real(
            "D-nu-eps6",
            "D νε⁶ coefficient = −37/128",
            d.coeff(1, 6),
            golden::D_NU_EPS6,
        ),
        real(
            "center-eps2",
            "isola center ε² coefficient = −55/32",
            e.center_y - m.omega_star,
            golden::CENTER_EPS2,
        ),
        real(
            "midpoint-nu",
            "midpoint ν coefficient = 4/3",
            0.5 * (m.gamma1 - m.alpha1),
            golden::MIDPOINT_NU,
        ),
        real(
            "axis-ratio",
            "ellipse axis ratio = 2",
            e.semi_axis_y / e.semi_axis_x,
            golden::AXIS_RATIO,
        ),
    ]);
    Ok(out)
}

fn parse_inject(s: &str) -> Result<(String, f64), UsageError> {
    let (name, delta) = s
        .rsplit_once('=')
        .ok_or_else(|| UsageError(format!("--inject expects NAME=DELTA, got {s}")))?;
    let delta = delta
        .parse()
        .map_err(|_| UsageError(format!("--inject delta is not a number: {delta}")))?;
    Ok((name.to_string(), delta))
}

pub fn verify(s: &Settings, inject: &[String]) -> anyhow::Result<()> {
    let mut checks = golden_checks()?;
    for raw in inject {
        let (name, delta) = parse_inject(raw)?;
        let c = checks
            .iter_mut()
            .find(|c| c.id == name)
            .ok_or_else(|| UsageError(format!("--inject: no row named {name}")))?;
        c.got.0 += delta;
    }
    let mut table = Table::new(
        "verify",
        &[
            "status", "name", "got_re", "got_im", "want_re", "want_im", "label",
        ],
    );
    let mut failed = 0;
    let width = checks
        .iter()
        .map(|c| c.id.chars().count())
        .max()
        .unwrap_or(0);
    for c in &checks {
        let err = (c.got.0 - c.want.0).hypot(c.got.1 - c.want.1);
        let ok = err <= s.tol;
        failed += usize::from(!ok);
        let status = if ok { "PASS" } else { "FAIL" };
        println!(
            "{status}  {:<width$}  {:>24}  {:>24}  {}",
            c.id,
            fmt_complex(c.got),
            fmt_complex(c.want),
            c.label,
        );
        table.push(vec![
            status.into(),
            c.id.clone().into(),
            c.got.0.into(),
            c.got.1.into(),
            c.want.0.into(),
            c.want.1.into(),
            c.label.clone().into(),
        ]);
    }
    println!(
        "{}/{} rows pass (tolerance {:e})",
        checks.len() - failed,
        checks.len(),
        s.tol
    );
    if s.out.is_some() {
        emit(s, &[table])?;
    }
    if failed > 0 {
        return Err(Mismatch(failed).into());
    }
    Ok(())
}

fn fmt_complex((re, im): (f64, f64)) -> String {
    if im == 0.0 {
        format!("{re:.12}")
    } else if re == 0.0 {
        format!("{im:.12}i")
    } else {
        format!("{re:.12}{im:+.12}i")
    }
}

pub fn coeffs(s: &Settings) -> anyhow::Result<()> {
    let ledger = term_ledger()?;
    let mut terms = Table::new("terms", &["group", "name", "monomial", "re", "im"]);
    for t in &ledger.terms {
        terms.push(vec![
            t.group.slug().into(),
            t.name.clone().into(),
            t.group.monomial().into(),
            t.value.re.into(),
            t.value.im.into(),
        ]);
    }
    let jet = assemble_reduced_jet()?;
    let mut entries = Table::new("jet", &["entry", "delta_power", "eps_power", "value"]);
    for (name, map) in [
        ("alpha", &jet.alpha),
        ("beta", &jet.beta),
        ("gamma", &jet.gamma),
    ] {
        for (&(i, n), v) in map {
            entries.push(vec![
                name.into(),
                (i as usize).into(),
                (n as usize).into(),
                (*v).into(),
            ]);
        }
    }
    let m = model(&jet);
    let mut derived = Table::new("derived", &["name", "value"]);
    let curves = critical_curves(&m)?;
    let d = discriminant_poly(&m);
    for (name, v) in [
        ("T1", m.t1()),
        ("T2", m.t2()),
        ("quartic_gap", m.quartic_gap()),
        ("mu0_eps2", m.mu0_eps2()),
        ("nu_plus_eps4", curves.nu_plus.coeff(4)),
        ("nu_minus_eps4", curves.nu_minus.coeff(4)),
        ("D_eps8", d.coeff(0, 8)),
        ("D_nu_eps6", d.coeff(1, 6)),
        ("center_eps2", m.center_eps2()),
    ] {
        derived.push(vec![name.into(), v.into()]);
    }
    emit(s, &[terms, entries, derived])
}

fn grid(center: f64, width: f64, samples: usize) -> Vec<f64> {
    (0..samples)
        .map(|k| center - 0.5 * width + width * k as f64 / (samples - 1) as f64)
        .collect()
}

fn regime(r: Regime) -> &'static str {
    match r {
        Regime::InsideIsola => "inside",
        Regime::Outside => "outside",
        Regime::Collision => "collision",
    }
}

fn rel(got: f64, want: f64) -> f64 {
    (got - want).abs() / want.abs()
}

pub fn isola(s: &Settings) -> anyhow::Result<()> {
    let n = s.single_trunc()?;
    let m = model(&assemble_reduced_jet()?);
    let curves = critical_curves(&m)?;
    let oracle = OracleSettings {
        n,
        stokes_order: s.stokes_order,
        tracking: Tracking::default(),
    };
    // rejects a bad truncation or Stokes order before any sweep work
    build(m.mu_bar, 0.0, n, s.stokes_order)?;
    let mut curve = Table::new(
        "curve",
        &[
            "eps", "mu", "re_plus", "im_plus", "re_minus", "im_minus", "source", "status",
        ],
    );
    let mut summary = Table::new(
        "summary",
        &[
            "eps",
            "theory_mu_center",
            "theory_max_re",
            "theory_im_center",
            "theory_width",
            "oracle_mu_center",
            "oracle_max_re",
            "oracle_im_center",
            "oracle_width",
            "rel_dev_max_re",
            "abs_dev_im_center",
            "rel_dev_width",
            "status",
        ],
    );
    for &eps in &s.eps {
        let center = s.mu_center.unwrap_or_else(|| m.mu0(eps));
        let width = s.mu_width.unwrap_or_else(|| (4.0 * eps.powi(4)).max(1e-6));
        let mus = grid(center, width, s.samples);
        for &mu in &mus {
            let p = eigenvalues(&m, mu, eps);
            curve.push(vec![
                eps.into(),
                mu.into(),
                p.plus.re.into(),
                p.plus.im.into(),
                p.minus.re.into(),
                p.minus.im.into(),
                "theory".into(),
                regime(p.regime).into(),
            ]);
        }
        for sample in trace_isola(eps, &mus, &oracle) {
            let (vals, status) = match sample.pair {
                Ok([a, b]) => ([a.re, a.im, b.re, b.im], "ok".to_string()),
                Err(e) => ([f64::NAN; 4], format!("failed: {e}")),
            };
            let mut row = vec![eps.into(), sample.mu.into()];
            row.extend(vals.map(Cell::from));
            row.extend(["oracle".into(), status.into()]);
            curve.push(row);
        }

        let peak = max_growth_rate(&m, eps)?;
        let t_center = m.mu0(eps) + peak.nu_re;
        let t_im = ellipse(&m, eps)?.center_y;
        let t_width = curves.nu_minus.eval(eps) - curves.nu_plus.eval(eps);
        let mut row: Vec<Cell> = vec![
            eps.into(),
            t_center.into(),
            peak.rate.into(),
            t_im.into(),
            t_width.into(),
        ];
        match measure_isola(eps, center, 0.5 * width, &oracle) {
            Ok(r) => {
                row.extend([r.mu_center, r.max_re, r.im_center, r.width].map(Cell::from));
                row.extend(
                    [
                        rel(r.max_re, peak.rate),
                        (r.im_center - t_im).abs(),
                        rel(r.width, t_width),
                    ]
                    .map(Cell::from),
                );
                row.push("ok".into());
            }
            Err(e) => {
                row.extend([f64::NAN; 7].map(Cell::from));
                row.push(format!("failed: {e}").into());
            }
        }
        summary.push(row);
    }
    for r in &summary.rows {
        let v: Vec<String> = r
            .iter()
            .map(|c| match c {
                Cell::Num(x) => format!("{x:.4e}"),
                Cell::Int(n) => n.to_string(),
                Cell::Text(t) => t.clone(),
            })
            .collect();
        eprintln!(
            "eps {}: max Re oracle {} theory {} (rel {}), Im center oracle {} theory {} (abs {}), width rel {} [{}]",
            v[0], v[6], v[2], v[9], v[7], v[3], v[10], v[11], v[12]
        );
    }
    emit(s, &[curve, summary])
}

pub fn spectrum_cmd(s: &Settings) -> anyhow::Result<()> {
    let n = s.single_trunc()?;
    let eps = s.single_eps()?;
    if !(0.0..0.5).contains(&s.mu) {
        eprintln!(
            "warning: mu = {} lies outside the first Brillouin zone [0, 1/2); computing anyway",
            s.mu
        );
    }
    let op = build(s.mu, eps, n, s.stokes_order)?;
    let mut ev = oracle_eigenvalues(&op)?;
    let tracked = match Tracking::default().select(&ev) {
        Ok(p) => Some(p),
        Err(e) => {
            eprintln!("warning: {e}; no tracked pair");
            None
        }
    };
    let defect = reversibility_defect(&ev);
    ev.sort_by(|a, b| a.im.total_cmp(&b.im).then(a.re.total_cmp(&b.re)));
    let mut table = Table::new("spectrum", &["re", "im", "tracked"]);
    for z in &ev {
        let on = tracked.is_some_and(|p| p.contains(z));
        table.push(vec![z.re.into(), z.im.into(), usize::from(on).into()]);
    }
    let vals = tracked.map_or([f64::NAN; 4], |[a, b]| [a.re, a.im, b.re, b.im]);
    let mut pair = Table::new(
        "pair",
        &[
            "mu",
            "eps",
            "trunc",
            "re_plus",
            "im_plus",
            "re_minus",
            "im_minus",
            "reversibility_defect",
        ],
    );
    let mut row: Vec<Cell> = vec![s.mu.into(), eps.into(), n.into()];
    row.extend(vals.map(Cell::from));
    row.push(defect.into());
    pair.push(row);
    emit(s, &[table, pair])
}

pub fn convergence(s: &Settings) -> anyhow::Result<()> {
    let eps = s.single_eps()?;
    let rows = convergence_check(s.mu, eps, &s.trunc, s.stokes_order, Tracking::default())?;
    let mut table = Table::new(
        "convergence",
        &[
            "trunc", "re_plus", "im_plus", "re_minus", "im_minus", "delta",
        ],
    );
    for r in rows {
        let [a, b] = r.pair;
        table.push(vec![
            r.n.into(),
            a.re.into(),
            a.im.into(),
            b.re.into(),
            b.im.into(),
            r.delta.map(Cell::from).unwrap_or_else(|| "".into()),
        ]);
    }
    emit(s, &[table])
}
