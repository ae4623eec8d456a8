//! The subcommands. Each returns the text to emit and an exit code.

use killform_core::catalog;
use killform_core::classifier::{
    check_casimir_kernel, check_cont_seeded, check_lemma2, check_lemma_l1_seeded, check_p1,
    check_sym_corollary, classify_with_tol, e0, fixed_point, k1_residual, Applicability, Branch,
};
use killform_core::curvature::self_dual_basis;
use killform_core::operators::{casimir, curv_action, r_plus};
use killform_core::{HolonomyAlgebra, Multivector, SkewEndo, Vector};
use serde::Serialize;
use serde_json::{json, Value};

use crate::format::{self, sci};
use crate::model::ResolvedModel;
use crate::{InputError, Output, EXIT_CHECK, EXIT_OK};

#[derive(Debug, Clone, Copy)]
pub struct Options {
    pub seed: u64,
    pub tol: f64,
    pub human: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            seed: 0,
            tol: killform_core::DEFAULT_TOL,
            human: false,
        }
    }
}

fn json_text(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialise");
    s.push('\n');
    s
}

pub fn catalog() -> Output {
    catalog_with(false)
}

pub fn catalog_with(human: bool) -> Output {
    let kinds = [
        ("sphere", "sphere n kappa", "round sphere of dimension n, sectional curvature kappa (default 1)"),
        ("flat", "flat n", "flat space of dimension n"),
        ("cpn", "cpn m", "complex projective space of complex dimension m, holomorphic sectional curvature 4"),
        ("product", "product factors", "Riemannian product; --factors like sphere:2:1,cpn:2,flat:3"),
        ("weyl4", "weyl4 [n]", "self-dual Weyl tensor of R^4, extended by zero to R^n (default n = 4)"),
        ("file", "file <path>", "JSON curvature file {\"n\": int, \"entries\": [{\"i\",\"j\",\"k\",\"l\",\"value\"}]}, one based indices"),
    ];
    let standard: Vec<String> = catalog::standard().iter().map(|m| m.id()).collect();
    let probes: Vec<String> = catalog::probes().iter().map(|m| m.id()).collect();
    if human {
        let rows: Vec<Vec<String>> = kinds
            .iter()
            .map(|(_, usage, about)| vec![usage.to_string(), about.to_string()])
            .collect();
        let mut text = format::table(&["model", "description"], &rows);
        text.push_str(&format!("\nstandard models: {}\n", standard.join(" ")));
        text.push_str(&format!("probe models: {}\n", probes.join(" ")));
        return Output {
            text,
            code: EXIT_OK,
            message: None,
        };
    }
    let kinds: Vec<Value> = kinds
        .iter()
        .map(|(kind, usage, about)| json!({"kind": kind, "usage": usage, "description": about}))
        .collect();
    Output {
        text: json_text(&json!({
            "kinds": kinds,
            "standard": standard,
            "probes": probes,
        })),
        code: EXIT_OK,
        message: None,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub p: Option<usize>,
    pub status: Status,
    pub residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Check {
    fn measured(name: impl Into<String>, p: Option<usize>, residual: f64, tol: f64) -> Self {
        Check {
            name: name.into(),
            p,
            status: if residual < tol {
                Status::Pass
            } else {
                Status::Fail
            },
            residual: Some(residual),
            note: None,
        }
    }

    fn skipped(name: impl Into<String>, p: Option<usize>, why: &str) -> Self {
        Check {
            name: name.into(),
            p,
            status: Status::Skipped,
            residual: None,
            note: Some(why.to_string()),
        }
    }

    fn failed(name: impl Into<String>, p: Option<usize>, why: String) -> Self {
        Check {
            name: name.into(),
            p,
            status: Status::Fail,
            residual: None,
            note: Some(why),
        }
    }

    fn label(&self) -> String {
        match self.p {
            Some(p) => format!("{} (p={p})", self.name),
            None => self.name.clone(),
        }
    }
}

/// Degrees to verify: `"all"` or a single integer in `0..=n`.
pub fn parse_degrees(text: &str, n: usize) -> Result<Vec<usize>, InputError> {
    if text == "all" {
        return Ok((0..=n).collect());
    }
    let p: usize = text
        .parse()
        .map_err(|_| InputError(format!("--p must be an integer or 'all', got '{text}'")))?;
    if p > n {
        return Err(InputError(format!("degree {p} outside 0..={n}")));
    }
    Ok(vec![p])
}

pub fn verify_checks(model: &ResolvedModel, degrees: &[usize], opts: Options) -> Vec<Check> {
    let r = &model.tensor;
    let n = r.n();
    let tol = opts.tol;
    let scale = r.norm().max(1.0);
    let h = HolonomyAlgebra::generate(r);
    let mut checks = Vec::new();

    let q1 = casimir(r, 1).expect("degree 1 is in range");
    checks.push(Check::measured(
        "casimir_ricci",
        None,
        (&q1.matrix - r.ricci()).amax() / scale,
        tol,
    ));

    for &p in degrees {
        let at = Some(p);
        match check_lemma_l1_seeded(r, p, opts.seed) {
            Ok(v) => checks.push(Check::measured("lemma_l1", at, v, tol)),
            Err(e) => checks.push(Check::failed("lemma_l1", at, e.to_string())),
        }

        let q = casimir(r, p).expect("degree checked");
        let asym = (&q.matrix - q.matrix.transpose()).amax() / scale;
        checks.push(Check::measured("casimir_symmetric", at, asym, tol));
        match model.compact_type() {
            Some(true) => {
                let min = q
                    .matrix
                    .clone()
                    .symmetric_eigenvalues()
                    .iter()
                    .copied()
                    .fold(f64::INFINITY, f64::min);
                let negative = if min.is_finite() {
                    (-min).max(0.0)
                } else {
                    0.0
                };
                checks.push(Check::measured(
                    "casimir_nonnegative",
                    at,
                    negative / scale,
                    tol,
                ));
                match check_casimir_kernel(r, &h, p) {
                    Ok(cmp) if cmp.joint_kernel_dim == cmp.casimir_kernel_dim => {
                        checks.push(Check::measured("casimir_kernel", at, cmp.distance, tol))
                    }
                    Ok(cmp) => checks.push(Check::failed(
                        "casimir_kernel",
                        at,
                        format!(
                            "holonomy-fixed forms have dimension {}, Casimir kernel {}",
                            cmp.joint_kernel_dim, cmp.casimir_kernel_dim
                        ),
                    )),
                    Err(e) => checks.push(Check::failed("casimir_kernel", at, e.to_string())),
                }
            }
            Some(false) => {
                let why = "not the curvature of a compact-type symmetric space";
                checks.push(Check::skipped("casimir_nonnegative", at, why));
                checks.push(Check::skipped("casimir_kernel", at, why));
            }
            None => {
                let why = "model type unknown for file input";
                checks.push(Check::skipped("casimir_nonnegative", at, why));
                checks.push(Check::skipped("casimir_kernel", at, why));
            }
        }

        if p >= 1 {
            match check_p1(&h, p - 1) {
                Ok(Applicability::Residual(v)) => checks.push(Check::measured("p1", at, v, tol)),
                Ok(Applicability::Skipped(why)) => checks.push(Check::skipped("p1", at, why)),
                Err(e) => checks.push(Check::failed("p1", at, e.to_string())),
            }
        }

        if p == 0 || p >= n {
            continue;
        }
        let fp = match fixed_point(r, p) {
            Ok(fp) => fp,
            Err(e) => {
                checks.push(Check::failed("fixed_point", at, e.to_string()));
                continue;
            }
        };
        match check_sym_corollary(r, &fp.e) {
            Ok(v) => checks.push(Check::measured("sym_corollary", at, v, tol)),
            Err(e) => checks.push(Check::failed("sym_corollary", at, e.to_string())),
        }
        match check_lemma2(r, &fp.e) {
            Ok(v) => checks.push(Check::measured("lemma2", at, v, tol)),
            Err(e) => checks.push(Check::failed("lemma2", at, e.to_string())),
        }
        for k in 1..=3.min(n - p) {
            let name = format!("cont_k{k}");
            match check_cont_seeded(r, &fp.e, k, opts.seed) {
                Ok(v) => checks.push(Check::measured(name, at, v, tol)),
                Err(e) => checks.push(Check::failed(name, at, e.to_string())),
            }
        }
    }
    checks
}

pub fn verify(model: &ResolvedModel, p: &str, opts: Options) -> Result<Output, InputError> {
    let degrees = parse_degrees(p, model.tensor.n())?;
    let checks = verify_checks(model, &degrees, opts);
    let failed: Vec<String> = checks
        .iter()
        .filter(|c| c.status == Status::Fail)
        .map(Check::label)
        .collect();
    let code = if failed.is_empty() {
        EXIT_OK
    } else {
        EXIT_CHECK
    };
    let message = (!failed.is_empty()).then(|| format!("failed checks: {}", failed.join(", ")));
    let text = if opts.human {
        let rows: Vec<Vec<String>> = checks
            .iter()
            .map(|c| {
                vec![
                    c.name.clone(),
                    c.p.map(|p| p.to_string()).unwrap_or_else(|| "-".into()),
                    format!("{:?}", c.status).to_lowercase(),
                    c.residual.map(sci).unwrap_or_else(|| "-".into()),
                    c.note.clone().unwrap_or_default(),
                ]
            })
            .collect();
        let mut text = format!("model {} (n = {})\n", model.id, model.tensor.n());
        text.push_str(&format::table(
            &["check", "p", "status", "residual", "note"],
            &rows,
        ));
        text.push_str(if failed.is_empty() {
            "all checks passed\n"
        } else {
            "some checks failed\n"
        });
        text
    } else {
        json_text(&json!({
            "model": model.id,
            "n": model.tensor.n(),
            "degrees": degrees,
            "seed": opts.seed,
            "tol": opts.tol,
            "passed": failed.is_empty(),
            "failed": failed,
            "checks": checks,
        }))
    };
    Ok(Output {
        text,
        code,
        message,
    })
}

/// `β = e1^e3 − e2^e4` in `ℝⁿ`, wedged with `e5 ^ … ^ e_{p+2}` when `p > 2`.
pub fn beta_direction(n: usize, p: usize) -> Option<Multivector> {
    if n < 4 || p < 2 || p + 2 > n {
        return None;
    }
    let beta = &Multivector::blade(n, &[0, 2]) - &Multivector::blade(n, &[1, 3]);
    if p == 2 {
        return Some(beta);
    }
    let tail: Vec<usize> = (4..p + 2).collect();
    beta.wedge(&Multivector::blade(n, &tail)).ok()
}

fn beta_record(model: &ResolvedModel, p: usize, tol: f64) -> Option<Value> {
    model.weyl4_dim()?;
    let r = &model.tensor;
    let u = beta_direction(r.n(), p)?;
    let v = u.grade_vector(p) / u.norm();
    let residual = k1_residual(r, p, &v).ok()?;
    let distance = e0(r, p).ok()?.distance_to(&v);
    Some(json!({
        "form": format::form(&u),
        "k1_residual": residual,
        "distance_to_E0": distance,
        "excluded": distance > tol,
    }))
}

pub fn classify(model: &ResolvedModel, p: usize, opts: Options) -> Result<Output, InputError> {
    let r = &model.tensor;
    let n = r.n();
    if p < 1 || p + 1 > n {
        return Err(InputError(format!(
            "classify needs 1 <= p <= {}, got {p}",
            n.saturating_sub(1)
        )));
    }
    let mut report = classify_with_tol(r, p, opts.tol)?.with_model(&model.id);
    let l1 = check_lemma_l1_seeded(r, p, opts.seed)?;
    for (name, v) in report.residuals.iter_mut() {
        if name == "lemma_l1" {
            *v = l1;
        }
    }
    let beta = beta_record(model, p, opts.tol);
    let code = if report.branch == Branch::Inconsistent {
        EXIT_CHECK
    } else {
        EXIT_OK
    };
    let message = (code != EXIT_OK).then(|| {
        format!(
            "{} at p={p}: E is all of the degree {p} forms with nonzero Weyl tensor",
            model.id
        )
    });
    let text = if opts.human {
        let d = &report.dims;
        let f = &report.flags;
        let mut rows = vec![
            vec!["model".into(), report.model.clone()],
            vec!["n, p".into(), format!("{n}, {p}")],
            vec!["branch".into(), report.branch.to_string()],
            vec!["dim E0, F0".into(), format!("{}, {}", d.e0, d.f0)],
            vec!["dim E, F".into(), format!("{}, {}", d.e, d.f)],
            vec!["kahler".into(), f.kahler.to_string()],
            vec!["irreducible".into(), f.irreducible.to_string()],
            vec!["holonomy dim".into(), f.holonomy_dim.to_string()],
            vec!["weyl norm".into(), sci(f.weyl_norm)],
            vec![
                "R+ vanishes on E".into(),
                f.r_plus_vanishes_on_e.to_string(),
            ],
        ];
        for (name, v) in &report.residuals {
            rows.push(vec![format!("residual {name}"), sci(*v)]);
        }
        let trace: Vec<String> = report
            .trace
            .steps
            .iter()
            .map(|(k, e, f)| format!("{k}:({e},{f})"))
            .collect();
        rows.push(vec!["trace".into(), trace.join(" ")]);
        if let Some(b) = &beta {
            rows.push(vec![
                "beta direction".into(),
                format!(
                    "{} k1 residual {} distance to E0 {} excluded {}",
                    b["form"].as_str().unwrap_or_default(),
                    sci(b["k1_residual"].as_f64().unwrap_or(f64::NAN)),
                    sci(b["distance_to_E0"].as_f64().unwrap_or(f64::NAN)),
                    b["excluded"]
                ),
            ]);
        }
        for w in &report.warnings {
            rows.push(vec!["warning".into(), w.clone()]);
        }
        format::table(&["field", "value"], &rows)
    } else {
        let mut value = format::report_json(&report);
        value["seed"] = json!(opts.seed);
        value["tol"] = json!(opts.tol);
        if let Some(b) = beta {
            value["beta_direction"] = b;
        }
        json_text(&value)
    };
    Ok(Output {
        text,
        code,
        message,
    })
}

/// Tolerance for the closed-form comparisons in the demo.
pub const DEMO_TOL: f64 = 1e-10;

fn verdict(ok: bool) -> &'static str {
    if ok {
        "OK"
    } else {
        "MISMATCH"
    }
}

pub fn weyl_demo() -> Output {
    let r = killform_core::CurvatureTensor::self_dual_weyl4();
    let [alpha, beta, gamma] = self_dual_basis();
    let j = SkewEndo::from_two_form(&beta);
    let omega = Multivector::volume(4);
    let e = |i| Vector::basis(4, i);
    let mut t = String::new();
    let mut failed: Vec<&str> = Vec::new();

    t.push_str("self-dual Weyl tensor on R^4: R(alpha) = alpha, R(beta) = -beta, R(gamma) = 0, zero on anti-self-dual 2-forms\n");
    t.push_str(&format!("alpha = {}\n", format::form(&alpha)));
    t.push_str(&format!("beta  = {}\n", format::form(&beta)));
    t.push_str(&format!("gamma = {}\n", format::form(&gamma)));
    t.push_str(&format!("omega = {}\n", format::form(&omega)));
    t.push_str("J = skew endomorphism of beta\n\n");

    let mut worst: f64 = 0.0;
    for i in 0..4 {
        let got = r_plus(&r, &e(i), &beta).expect("degree in range");
        let want = omega
            .contract(&j.apply(&e(i)).expect("dimension 4"))
            .expect("dimension 4");
        worst = worst.max(got.max_abs_diff(&want));
        t.push_str(&format!(
            "R+(e{k})beta = {:<24} J(e{k}) ⌟ omega = {}\n",
            format::form(&got),
            format::form(&want),
            k = i + 1
        ));
    }
    let ok = worst < DEMO_TOL;
    if !ok {
        failed.push("R+(X)beta = J(X) ⌟ omega");
    }
    t.push_str(&format!(
        "R+(X)beta = J(X) ⌟ omega: {} (max deviation {})\n\n",
        verdict(ok),
        sci(worst)
    ));

    let combination = &r_plus(&r, &e(1), &beta)
        .and_then(|u| u.contract(&e(0)))
        .expect("dimension 4")
        - &r_plus(&r, &e(0), &beta)
            .and_then(|u| u.contract(&e(1)))
            .expect("dimension 4");
    let dev = combination.max_abs_diff(&gamma);
    let ok = dev < DEMO_TOL;
    if !ok {
        failed.push("gamma identity");
    }
    t.push_str(&format!(
        "e1 ⌟ R+(e2)beta - e2 ⌟ R+(e1)beta = {}\n",
        format::form(&combination)
    ));
    t.push_str(&format!(
        "gamma identity: {} (max deviation {})\n\n",
        verdict(ok),
        sci(dev)
    ));

    let curv = curv_action(&r, &e(0), &e(1), &beta).expect("dimension 4");
    let dev = curv.max_abs_diff(&Multivector::zero(4));
    let ok = dev < DEMO_TOL;
    if !ok {
        failed.push("R_(e1,e2)beta = 0");
    }
    t.push_str(&format!("R_(e1,e2)beta = {}\n", format::form(&curv)));
    t.push_str(&format!(
        "R_(e1,e2)beta = 0: {} (max deviation {})\n",
        verdict(ok),
        sci(dev)
    ));
    let to_minus_gamma = curv.max_abs_diff(&-&gamma);
    t.push_str(&format!(
        "R_(e1,e2)beta = -gamma: {} (max deviation {})\n",
        verdict(to_minus_gamma < DEMO_TOL),
        sci(to_minus_gamma)
    ));
    let k1 = k1_residual(&r, 2, &(beta.grade_vector(2) / beta.norm())).expect("degree 2");
    t.push_str(&format!(
        "(k1) residual of beta: {} so beta is {}a candidate direction\n",
        sci(k1),
        if k1 < DEMO_TOL { "" } else { "not " }
    ));

    let all_ok = failed.is_empty();
    t.push_str(if all_ok {
        "\nall closed forms match\n"
    } else {
        "\nsome closed forms do not match\n"
    });
    Output {
        text: t,
        code: if all_ok { EXIT_OK } else { EXIT_CHECK },
        message: (!all_ok).then(|| format!("weyl demo mismatch: {}", failed.join(", "))),
    }
}
