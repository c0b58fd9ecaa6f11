use anyhow::{bail, Context, Result};
use num_complex::Complex64;
use serde_json::{json, Value};

use entwit::hilbert::QuantumState;
use entwit::operators::{block_spin, quadratures, spin_ops};
use entwit::optimize::{c_matrix, min_eigenvalue, psi2_scan, quadratic_form, vmax_from_lambda};
use entwit::polyid::{check_expressions, expand, parse, verify_report, Identity};
use entwit::states::{
    bell, default_fock_cutoff, squeezed_cutoff, squeezed_vacuum, vacuum_mixture, StateSpec,
};
use entwit::witnesses::{
    four_variance, multipartite, ramanujan_witness, schmidt_optimal_witness, uffink,
    variance_product, variance_sum, WitnessReport,
};

use crate::opspec::OpSpec;
use crate::report::ReportDocument;
use crate::{BellCondition, Command, Condition, IdentityName};

/// Leading eigenvector entries echoed by `cmatrix`.
const EIGENVECTOR_HEAD: usize = 8;

pub fn run(command: Command) -> Result<ReportDocument> {
    match command {
        Command::Cmatrix { n, p, tol } => cmatrix(n, p, tol),
        Command::Psi2 { scan } => psi2(scan),
        Command::Mixture { p, coeffs, cutoff } => mixture(p, &coeffs, cutoff),
        Command::Squeezed { lambda, cutoff } => squeezed(lambda, cutoff),
        Command::Bell {
            parties,
            condition,
            n,
        } => bell_command(parties, condition, n),
        Command::Schmidt { alpha, beta } => schmidt(alpha, beta),
        Command::Identity { name, n } => identity(name, n),
        Command::Eval { expr_lhs, expr_rhs } => eval(&expr_lhs, &expr_rhs),
        Command::Witness {
            state,
            ops,
            condition,
            n,
        } => witness(&state, &ops, condition, n),
    }
}

fn to_json(report: &WitnessReport) -> Value {
    serde_json::to_value(report).expect("report serializes")
}

fn cmatrix(n: usize, p: f64, tol: f64) -> Result<ReportDocument> {
    let m = c_matrix(n);
    let pair = min_eigenvalue(&m, tol)?;
    let vmax = vmax_from_lambda(pair.value, p)?;
    let head: Vec<f64> = pair.vector.iter().take(EIGENVECTOR_HEAD).copied().collect();
    Ok(ReportDocument::new(
        "cmatrix",
        json!({ "n": n, "p": p, "tol": tol }),
        json!({
            "lambda_min": pair.value,
            "eigenvector_head": head,
            "residual": m.residual(pair.value, &pair.vector),
            "V_max": vmax,
        }),
        json!({ "truncation": n }),
    ))
}

fn psi2(grid: usize) -> Result<ReportDocument> {
    let scan = psi2_scan(grid)?;
    let c1 = (1.0 - scan.argbest * scan.argbest).max(0.0).sqrt();
    let mut results = serde_json::to_value(&scan)?;
    results["c1_at_best"] = json!(c1);
    Ok(ReportDocument::new(
        "psi2",
        json!({ "scan": grid }),
        results,
        json!({ "mode": default_fock_cutoff(2) }),
    ))
}

fn mixture(p: f64, coeffs: &[f64], cutoff: Option<usize>) -> Result<ReportDocument> {
    let norm = coeffs.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm == 0.0 || !norm.is_finite() {
        bail!("coefficients must be finite and not all zero");
    }
    let c: Vec<f64> = coeffs.iter().map(|x| x / norm).collect();
    let d = cutoff.unwrap_or_else(|| default_fock_cutoff(c.len()));
    let state = vacuum_mixture(p, &c, d)?;
    let q = quadratures(d)?;
    let report = variance_product(&q.x, &q.p, &q.p, &q.x, &state)?;
    let form = quadratic_form(&c);
    Ok(ReportDocument::new(
        "mixture",
        json!({ "p": p, "coeffs": coeffs, "cutoff": cutoff }),
        json!({
            "report": to_json(&report),
            "normalized_coeffs": c,
            "quadratic_form": form,
            "predicted_product": 0.25 + p * form,
        }),
        json!({ "mode": d }),
    ))
}

fn squeezed(lambda: f64, cutoff: Option<usize>) -> Result<ReportDocument> {
    let d = match cutoff {
        Some(d) => d,
        None => squeezed_cutoff(lambda)?,
    };
    let state = squeezed_vacuum(lambda, d)?;
    let blk = block_spin(d)?;
    let report = variance_product(&blk.x, &blk.y, &blk.x, &blk.y, &state)?;
    let l2 = lambda * lambda;
    let closed = ((1.0 + l2) / (1.0 - l2)).powi(2);
    let diff = report.v.map(|v| (v - closed).abs());
    Ok(ReportDocument::new(
        "squeezed",
        json!({ "lambda": lambda, "cutoff": cutoff }),
        json!({
            "report": to_json(&report),
            "V_closed_form": closed,
            "V_abs_diff": diff,
        }),
        json!({ "mode": d }),
    ))
}

fn bell_command(parties: usize, condition: BellCondition, n: u32) -> Result<ReportDocument> {
    let condition_name = match condition {
        BellCondition::Variance => "variance",
        BellCondition::Ramanujan => "ramanujan",
        BellCondition::Uffink => "uffink",
    };
    let state = bell(parties)?;
    let s = spin_ops();
    let report = match condition {
        BellCondition::Variance => multipartite(
            &vec![s.x.clone(); parties],
            &vec![s.y.clone(); parties],
            &state,
        )?,
        BellCondition::Ramanujan | BellCondition::Uffink if parties != 2 => {
            bail!("the {condition_name} condition is bipartite; use --parties 2")
        }
        BellCondition::Ramanujan => ramanujan_witness(&s.x, &s.y, &s.x, &s.y, &state, n)?,
        BellCondition::Uffink => uffink(&s.x, &s.y, &s.x, &s.y, &state)?,
    };
    Ok(ReportDocument::new(
        "bell",
        json!({ "parties": parties, "condition": condition_name, "n": n }),
        json!({ "report": to_json(&report) }),
        json!({}),
    ))
}

fn schmidt(alpha: Complex64, beta: Complex64) -> Result<ReportDocument> {
    let w = schmidt_optimal_witness(alpha, beta)?;
    let ab = (alpha * beta).norm();
    Ok(ReportDocument::new(
        "schmidt",
        json!({ "alpha": [alpha.re, alpha.im], "beta": [beta.re, beta.im] }),
        json!({
            "report": to_json(&w.report),
            "abs_alpha_beta": ab,
            "predicted_lhs": 1.0 - 4.0 * ab * ab,
        }),
        json!({}),
    ))
}

fn identity(name: IdentityName, n: u32) -> Result<ReportDocument> {
    let id = match name {
        IdentityName::ComplexNorm => Identity::ComplexNorm,
        IdentityName::Ramanujan => Identity::Ramanujan,
    };
    let check = verify_report(id, n)?;
    Ok(ReportDocument::new(
        "identity",
        json!({ "name": id.to_string(), "n": n }),
        json!({
            "valid": check.valid,
            "difference": check.difference.to_string(),
            "numeric_agreements": check.numeric_agreements,
            "numeric_samples": check.numeric_samples,
        }),
        json!({}),
    ))
}

fn eval(lhs_text: &str, rhs_text: &str) -> Result<ReportDocument> {
    let lhs = parse(lhs_text).context("parsing --expr-lhs")?;
    let rhs = parse(rhs_text).context("parsing --expr-rhs")?;
    let check = check_expressions("eval", &lhs, &rhs)?;
    Ok(ReportDocument::new(
        "eval",
        json!({ "expr_lhs": lhs_text, "expr_rhs": rhs_text }),
        json!({
            "equal": check.valid,
            "lhs_expanded": expand(&lhs).to_string(),
            "rhs_expanded": expand(&rhs).to_string(),
            "difference": check.difference.to_string(),
            "numeric_agreements": check.numeric_agreements,
            "numeric_samples": check.numeric_samples,
        }),
        json!({}),
    ))
}

fn read_json<T: serde::de::DeserializeOwned>(arg: &str, what: &str) -> Result<T> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        std::fs::read_to_string(arg).with_context(|| format!("reading {what} file `{arg}`"))?
    };
    serde_json::from_str(&text).with_context(|| format!("invalid {what}"))
}

fn witness(state_arg: &str, ops_arg: &str, condition: Condition, n: u32) -> Result<ReportDocument> {
    let spec: StateSpec = read_json(state_arg, "state spec")?;
    let ops: OpSpec = read_json(ops_arg, "operator spec")?;
    let state: QuantumState = spec.build()?;
    let (unprimed, primed) = ops.resolve(state.dims())?;
    let report = if let Condition::Multipartite = condition {
        multipartite(&unprimed, &primed, &state)?
    } else {
        if unprimed.len() != 2 {
            bail!(
                "{} is a bipartite condition; the state must have exactly two factors",
                condition_name(condition)
            );
        }
        let (a, ap, b, bp) = (&unprimed[0], &primed[0], &unprimed[1], &primed[1]);
        match condition {
            Condition::VarianceProduct => variance_product(a, ap, b, bp, &state)?,
            Condition::VarianceSum => variance_sum(a, ap, b, bp, &state)?,
            Condition::Ramanujan => ramanujan_witness(a, ap, b, bp, &state, n)?,
            Condition::Uffink => uffink(a, ap, b, bp, &state)?,
            Condition::FourVariance => four_variance(a, ap, b, bp, &state)?,
            Condition::Multipartite => unreachable!("handled above"),
        }
    };
    let cutoffs = match spec.resolved_cutoff()? {
        Some(d) => json!({ "mode": d }),
        None => json!({}),
    };
    Ok(ReportDocument::new(
        "witness",
        json!({
            "state": serde_json::to_value(&spec)?,
            "ops": serde_json::to_value(&ops)?,
            "condition": condition_name(condition),
            "n": n,
        }),
        json!({ "report": to_json(&report) }),
        cutoffs,
    ))
}

fn condition_name(c: Condition) -> &'static str {
    match c {
        Condition::VarianceProduct => "variance_product",
        Condition::VarianceSum => "variance_sum",
        Condition::Multipartite => "multipartite",
        Condition::Ramanujan => "ramanujan",
        Condition::Uffink => "uffink",
        Condition::FourVariance => "four_variance",
    }
}
