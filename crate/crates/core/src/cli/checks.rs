//! One function per named check. Each returns a [`CheckResult`] whose payload
//! carries the measured residuals next to the tolerance they were held to.

use std::collections::BTreeSet;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::Serialize;
use serde_json::json;

use super::config::{parse_class_label, RunConfig};
use super::report::CheckResult;
use crate::bfm::{
    cuspidal_leaves_rank1, eval_leaf_section, is_cuspidal, leaf_is_graph_of_dw, leaf_rank1, leaf_section_symbolic,
    solve_leaf, symplectic_residual, toda_embed_rank1, toda_map, BfmPointRank1, Form,
};
use crate::error::{Error, Result};
use crate::exactalg::{char_chi, unipotent_log_numeric, ExactMatrix, NumericMatrix};
use crate::mirror::{
    bruhat_factorize, mirror_spectral_check, rank1_leaf_consistency, superpotential, transversality_check,
    MirrorProblem,
};
use crate::qh::{consistency_report, element_json, operator_json, QuantumCohomology};
use crate::rootdata::{
    build_root_datum, langlands_dual, supported_data, CartanType, Family, LatticeChoice, RootDatum, WeylGroup,
};
use crate::toda::{pi_v, poisson_bracket, spectral_drift, toda_flow, toda_hamiltonian, TodaPhasePoint};

pub const BRACKET_TOL: f64 = 1e-8;
pub const BRACKET_STEP: f64 = 1e-3;
pub const DRIFT_TOL: f64 = 1e-6;
pub const FLOW_DT: f64 = 1e-3;
pub const SYMPLECTIC_TOL: f64 = 1e-8;
pub const SYMPLECTIC_STEP: f64 = 1e-4;
/// The negative control must exceed the tolerance by at least this factor.
pub const CONTROL_FACTOR: f64 = 1e6;
pub const FACTORIZE_TOL: f64 = 1e-10;
pub const RANK1_SPECTRUM_TOL: f64 = 1e-7;
pub const SPECTRUM_TOL: f64 = 1e-6;
pub const LEAF_TOL: f64 = 1e-9;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn gaussian<R: Rng>(rng: &mut R) -> Complex64 {
    c(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// `r e^{iθ}` with `log r` uniform on `[log 0.1, log 10]`.
pub fn random_q<R: Rng>(rng: &mut R) -> Complex64 {
    let r = rng.random_range(0.1f64.ln()..10f64.ln()).exp();
    Complex64::from_polar(r, rng.random_range(-std::f64::consts::PI..std::f64::consts::PI))
}

fn tol_or(cfg: &RunConfig, default: f64) -> f64 {
    cfg.tol.unwrap_or(default)
}

fn type_a_size(t: CartanType) -> Result<usize> {
    if t.family != Family::A {
        return Err(Error::UnsupportedType(format!(
            "the Toda chain and the mirror cell are realized for type A only, got {t}"
        )));
    }
    Ok(t.rank + 1)
}

fn weyl_order_formula(t: CartanType) -> usize {
    match t.family {
        Family::A => (1..=t.rank + 1).product(),
        Family::B | Family::C => 8,
        Family::G => 12,
    }
}

#[derive(Serialize)]
struct RootJson {
    root: Vec<i64>,
    coroot: Vec<i64>,
}

pub fn roots(d: &RootDatum) -> Result<CheckResult> {
    let g = WeylGroup::new(d);
    let roots: Vec<RootJson> = g
        .positive_roots()
        .iter()
        .map(|r| RootJson {
            root: r.root.clone(),
            coroot: r.coroot.clone(),
        })
        .collect();
    let valid = d.validate().is_ok();
    Ok(CheckResult::new(
        "roots",
        valid,
        json!({ "datum": d, "positive_roots": roots, "count": roots.len() }),
    ))
}

pub fn dual(d: &RootDatum) -> Result<CheckResult> {
    let dd = langlands_dual(d);
    let involutive = langlands_dual(&dd) == *d;
    let all_involutive = supported_data()
        .iter()
        .all(|x| langlands_dual(&langlands_dual(x)) == *x);
    let su2 = build_root_datum(CartanType::new(Family::A, 1)?, LatticeChoice::SimplyConnected)?;
    let psl2 = build_root_datum(CartanType::new(Family::A, 1)?, LatticeChoice::Adjoint)?;
    let su2_dual_is_psl2 = langlands_dual(&su2) == psl2;
    Ok(CheckResult::new(
        "dual",
        involutive && all_involutive && su2_dual_is_psl2 && dd.validate().is_ok(),
        json!({
            "datum": d,
            "dual": dd,
            "involutive": involutive,
            "involutive_on_all_supported": all_involutive,
            "su2_dual_is_psl2": su2_dual_is_psl2,
        }),
    ))
}

pub fn weyl(d: &RootDatum) -> Result<CheckResult> {
    let g = WeylGroup::new(d);
    let expected = weyl_order_formula(d.type_label);
    let longest = g.element(g.longest());
    let ok = g.len() == expected && longest.length == g.positive_roots().len();
    let labels: Vec<String> = g.elements().iter().map(|w| w.label()).collect();
    Ok(CheckResult::new(
        "weyl",
        ok,
        json!({
            "order": g.len(),
            "expected_order": expected,
            "longest": longest.label(),
            "elements": labels,
        }),
    ))
}

pub fn foliate(d: &RootDatum) -> Result<CheckResult> {
    let g = WeylGroup::new(d);
    let passing: Vec<usize> = (0..g.len()).filter(|&w| g.satisfies_foliation_criterion(w)).collect();
    let levis = g.all_levis();
    let images: BTreeSet<usize> = levis.iter().map(|l| g.foliation_element(l)).collect();
    let classified: Vec<_> = passing.iter().map(|&w| (w, g.classify_foliation_element(w))).collect();
    let roundtrip = classified
        .iter()
        .all(|(w, l)| l.as_ref().is_some_and(|l| g.foliation_element(l) == *w));
    let bijective =
        images.len() == levis.len() && passing.iter().copied().collect::<BTreeSet<_>>() == images && roundtrip;
    let rows: Vec<_> = classified
        .iter()
        .map(|(w, l)| {
            json!({
                "element": g.element(*w).label(),
                "levi": l.as_ref().map(|l| l.subset.iter().map(|i| i + 1).collect::<Vec<_>>()),
            })
        })
        .collect();
    Ok(CheckResult::new(
        "foliate",
        bijective,
        json!({ "passing": rows, "levi_count": levis.len(), "bijective": bijective }),
    ))
}

pub fn qh_mult(d: &RootDatum, cfg: &RunConfig) -> Result<CheckResult> {
    let ring = QuantumCohomology::new(d, cfg.equivariant);
    let left = cfg.left.clone().unwrap_or_else(|| "s1".into());
    let right = cfg.right.clone().unwrap_or_else(|| "s1".into());
    let a = ring.class(&parse_class_label(&left)?)?;
    let b = ring.class(&parse_class_label(&right)?)?;
    let ab = ring.multiply(&a, &b)?;
    let ba = ring.multiply(&b, &a)?;
    let op = ring.mult_operator(&a)?;
    Ok(CheckResult::new(
        "qh-mult",
        ab == ba,
        json!({
            "equivariant": cfg.equivariant,
            "left": left,
            "right": right,
            "product": element_json(&ab),
            "commutes": ab == ba,
            "left_operator": operator_json(&op),
        }),
    ))
}

pub fn qh_spectrum(d: &RootDatum, cfg: &RunConfig) -> Result<CheckResult> {
    let equivariant = cfg.xi.as_ref().is_some_and(|x| x.iter().any(|z| z.norm() != 0.0));
    let ring = QuantumCohomology::new(d, equivariant);
    let q = cfg.q_values();
    let xi = if equivariant { cfg.xi_values() } else { Vec::new() };
    let m = ring.c1_operator(&q, &xi)?;
    let ev = ring.c1_spectrum(&q, &xi)?;
    let trace_gap = (ev.iter().sum::<Complex64>() - m.trace()).norm();
    let scale = m.iter().map(|z| z.norm()).fold(1.0, f64::max);
    let tol = tol_or(cfg, 1e-9);
    Ok(CheckResult::new(
        "qh-spectrum",
        ev.len() == ring.dim() && trace_gap < tol * scale * ring.dim() as f64,
        json!({
            "equivariant": equivariant,
            "q": q,
            "xi": xi,
            "basis": ring.basis().iter().map(|w| w.label()).collect::<Vec<_>>(),
            "c1_operator": numeric_rows(&m),
            "eigenvalues": ev,
            "trace_gap": trace_gap,
        }),
    ))
}

fn numeric_rows(m: &NumericMatrix) -> Vec<Vec<Complex64>> {
    (0..m.nrows()).map(|i| m.row(i).iter().copied().collect()).collect()
}

pub fn qh_consistency(d: &RootDatum, equivariant: bool) -> Result<CheckResult> {
    let r = consistency_report(d, equivariant)?;
    let name = if equivariant {
        "qh-consistency-equivariant"
    } else {
        "qh-consistency"
    };
    Ok(CheckResult::new(name, r.passes(), &r))
}

/// Largest finite-difference bracket `|{H_j, H_k}|`, `1 ≤ j < k ≤ n`, over random points.
pub fn toda_commute(n: usize, trials: usize, tol: f64, seed: u64) -> Result<CheckResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    let mut first_invariants = Vec::new();
    for t in 0..trials {
        let pt = TodaPhasePoint::random(n, 0.5, &mut rng);
        if t == 0 {
            first_invariants = pi_v(&pt);
        }
        for j in 1..=n {
            for k in j + 1..=n {
                let b = poisson_bracket(
                    |q| toda_hamiltonian(j, q).expect("degree in range"),
                    |q| toda_hamiltonian(k, q).expect("degree in range"),
                    &pt,
                    BRACKET_STEP,
                )?;
                worst = worst.max(b.norm());
            }
        }
    }
    Ok(CheckResult::new(
        &format!("toda-commute-n{n}"),
        worst < tol,
        json!({
            "n": n,
            "trials": trials,
            "step": BRACKET_STEP,
            "max_bracket": worst,
            "tol": tol,
            "first_point_invariants": first_invariants,
        }),
    ))
}

/// Lax spectrum drift and change of `π_v` under the `H_k` flow for time `time`.
pub fn toda_flow_check(n: usize, k: usize, time: f64, trials: usize, tol: f64, seed: u64) -> Result<CheckResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut drift = 0.0f64;
    let mut invariant_change = 0.0f64;
    let mut moved = 0.0f64;
    for _ in 0..trials {
        let pt = TodaPhasePoint::random(n, 0.4, &mut rng);
        let end = toda_flow(k, &pt, time, FLOW_DT)?;
        drift = drift.max(spectral_drift(&pt, &end)?);
        let change = pi_v(&pt)
            .iter()
            .zip(pi_v(&end))
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        invariant_change = invariant_change.max(change);
        moved = moved.max(pt.p.iter().zip(&end.p).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max));
    }
    Ok(CheckResult::new(
        &format!("toda-flow-n{n}"),
        drift < tol,
        json!({
            "n": n,
            "k": k,
            "time": time,
            "dt": FLOW_DT,
            "trials": trials,
            "max_spectral_drift": drift,
            "max_invariant_change": invariant_change,
            "max_momentum_displacement": moved,
            "tol": tol,
        }),
    ))
}

pub fn bfm_embed(cfg: &RunConfig) -> Result<CheckResult> {
    let u = cfg.u.unwrap_or(c(0.5, 0.0));
    let q = cfg.q.as_ref().map_or(c(1.0, 0.0), |v| v[0]);
    let e = toda_embed_rank1(u, q)?;
    let tol = tol_or(cfg, 1e-10);
    let casimir_gap = (e.xi * e.xi - e.casimir).norm();
    let classfn_gap = ((e.z + e.z.inv()) / 4.0 - e.classfn).norm();
    let point = e.point()?;
    let leaf = if e.xi.norm() > 0.0 {
        solve_leaf(&point, 1e-12).ok()
    } else {
        None
    };
    let leaf_gap = leaf.map(|l| (l.q * l.q - q).norm());
    let ok = casimir_gap < tol
        && classfn_gap < tol * (1.0 + e.z.norm() + e.z.inv().norm())
        && leaf_gap.is_none_or(|g| g < tol * (1.0 + q.norm()));
    Ok(CheckResult::new(
        "bfm-embed",
        ok,
        json!({
            "u": u,
            "q": q,
            "embedding": e,
            "point": point,
            "leaf": leaf,
            "casimir_gap": casimir_gap,
            "classfn_gap": classfn_gap,
            "leaf_parameter_gap": leaf_gap,
        }),
    ))
}

pub fn bfm_leaf(cfg: &RunConfig) -> Result<CheckResult> {
    let q = cfg.q.as_ref().map_or(c(1.0, 0.0), |v| v[0]);
    let s = cfg.s.unwrap_or(c(2.0, 0.0));
    let p = leaf_rank1(q, s)?;
    let section_gap = (eval_leaf_section(q, s)? - p.xi).norm();
    let symbolic = leaf_is_graph_of_dw();
    let a1 = build_root_datum(CartanType::new(Family::A, 1)?, LatticeChoice::SimplyConnected)?;
    // the mirror cell sees the leaf of √(q²) = ±q
    let mirror_gap = rank1_leaf_consistency(&a1, q * q, s)?;
    let tol = tol_or(cfg, LEAF_TOL);
    Ok(CheckResult::new(
        "bfm-leaf",
        symbolic && section_gap < tol && mirror_gap < tol,
        json!({
            "q": q,
            "s": s,
            "point": p,
            "section": leaf_section_symbolic().to_string(),
            "graph_of_dw": symbolic,
            "section_gap": section_gap,
            "mirror_gap": mirror_gap,
        }),
    ))
}

/// Samples `(u, log q)` away from the removed locus `u² = q`.
fn symplectic_samples(trials: usize, seed: u64) -> Vec<(Complex64, Complex64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(trials);
    while out.len() < trials {
        let u = c(rng.random_range(-1.5..1.5), rng.random_range(-1.5..1.5));
        let lq = c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
        if (u * u - lq.exp()).norm() > 1e-2 {
            out.push((u, lq));
        }
    }
    out
}

pub fn bfm_check_symplectic(trials: usize, tol: f64, seed: u64) -> Result<CheckResult> {
    let mut worst = 0.0f64;
    let mut control_min = f64::INFINITY;
    for (u, lq) in symplectic_samples(trials, seed) {
        worst = worst.max(symplectic_residual(toda_map, u, lq, SYMPLECTIC_STEP)?);
        let squared = |a: Complex64, b: Complex64| toda_map(a, b).map(|(x, z)| (x, z * z));
        control_min = control_min.min(symplectic_residual(squared, u, lq, SYMPLECTIC_STEP)?);
    }
    let control_ok = control_min >= tol * CONTROL_FACTOR;
    Ok(CheckResult::new(
        "bfm-check-symplectic",
        worst < tol && control_ok,
        json!({
            "trials": trials,
            "step": SYMPLECTIC_STEP,
            "max_residual": worst,
            "tol": tol,
            "control_min_residual": control_min,
            "control_threshold": tol * CONTROL_FACTOR,
        }),
    ))
}

/// Cuspidal leaf count for `form`, and a unique leaf through each of `trials`
/// random non-cuspidal points.
pub fn bfm_cuspidal(form: Form, trials: usize, seed: u64) -> Result<CheckResult> {
    let leaves = cuspidal_leaves_rank1(form);
    let expected = match form {
        Form::Psl2Side => 1,
        Form::Sl2Side => 2,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut solved = 0;
    let mut worst = 0.0f64;
    let mut ambiguous = 0;
    while solved < trials {
        let xi = gaussian(&mut rng);
        let z = gaussian(&mut rng);
        let Ok(p) = BfmPointRank1::new(xi, z, form) else {
            continue;
        };
        if is_cuspidal(&p, 1e-6) || xi.norm() < 1e-6 {
            continue;
        }
        let sol = solve_leaf(&p, 1e-12)?;
        let back = leaf_rank1(sol.q, sol.s)?;
        let gap = (back.xi - p.xi).norm().min((back.xi + p.xi).norm())
            + (back.z - p.z).norm().min((back.z.inv() - p.z).norm());
        worst = worst.max(gap);
        // the other square root of z gives the same leaf after normalization
        let other = solve_leaf(&BfmPointRank1::new(-p.xi, p.z.inv(), form)?, 1e-12)?;
        if (other.q - sol.q).norm() > LEAF_TOL * (1.0 + sol.q.norm()) {
            ambiguous += 1;
        }
        solved += 1;
    }
    let name = match form {
        Form::Psl2Side => "bfm-cuspidal-psl2",
        Form::Sl2Side => "bfm-cuspidal-sl2",
    };
    Ok(CheckResult::new(
        name,
        leaves.len() == expected && ambiguous == 0 && worst < LEAF_TOL,
        json!({
            "form": form,
            "leaves": leaves,
            "count": leaves.len(),
            "expected_count": expected,
            "solved": solved,
            "ambiguous": ambiguous,
            "max_solve_residual": worst,
        }),
    ))
}

/// Random upper triangular `b` with determinant 1 and generic entries.
pub fn random_upper_sl<R: Rng>(n: usize, rng: &mut R) -> NumericMatrix {
    let mut b = NumericMatrix::zeros(n, n);
    let mut prod = c(1.0, 0.0);
    for i in 0..n - 1 {
        let d = (0.5 * gaussian(rng)).exp();
        b[(i, i)] = d;
        prod *= d;
    }
    b[(n - 1, n - 1)] = prod.inv();
    for i in 0..n {
        for j in i + 1..n {
            b[(i, j)] = gaussian(rng);
        }
    }
    b
}

/// A copy of `b` whose top-right `k × k` minor vanishes, `1 ≤ k < n`, with the
/// diagonal untouched.
pub fn zero_minor(b: &NumericMatrix, k: usize) -> NumericMatrix {
    let n = b.nrows();
    let mut m = b.clone();
    for j in n - k..n {
        m[(0, j)] = if k == 1 { c(0.0, 0.0) } else { m[(1, j)] };
    }
    m
}

pub fn mirror_factorize(n: usize, trials: usize, tol: f64, seed: u64) -> Result<CheckResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    let mut failures = 0;
    let mut triangular = true;
    let mut rejected = Vec::new();
    for t in 0..trials {
        let b = random_upper_sl(n, &mut rng);
        match bruhat_factorize(&b, &[]) {
            Ok(f) => {
                worst = worst.max(f.residual());
                triangular &= is_lower_unitriangular(&f.n1) && is_lower_unitriangular(&f.n2);
            }
            Err(_) => failures += 1,
        }
        if t == 0 {
            for k in 1..n {
                let bad = zero_minor(&b, k);
                rejected.push(json!({
                    "minor": k,
                    "rejected": matches!(bruhat_factorize(&bad, &[]), Err(Error::NotInCell(_))),
                }));
            }
        }
    }
    let all_rejected = rejected.iter().all(|r| r["rejected"] == json!(true));
    Ok(CheckResult::new(
        &format!("mirror-factorize-n{n}"),
        failures == 0 && triangular && worst < tol && all_rejected,
        json!({
            "n": n,
            "trials": trials,
            "max_residual": worst,
            "tol": tol,
            "failures": failures,
            "unipotent_factors": triangular,
            "engineered": rejected,
        }),
    ))
}

/// `χ(log n)` through the matrix logarithm.
fn chi_of_log(n: &NumericMatrix) -> Result<Complex64> {
    let l = unipotent_log_numeric(n)?;
    let d = l.nrows();
    // clear rounding noise above the diagonal so the exact triangle test applies
    let exact = ExactMatrix::from_fn(d, d, |i, j| if i > j { l[(i, j)] } else { Complex64::default() });
    char_chi(&exact)
}

fn is_lower_unitriangular(m: &NumericMatrix) -> bool {
    let n = m.nrows();
    (0..n).all(|i| (m[(i, i)] - 1.0).norm() < 1e-12 && (i + 1..n).all(|j| m[(i, j)].norm() < 1e-12))
}

fn mirror_problem(d: &RootDatum, cfg: &RunConfig, q: &[Complex64]) -> Result<MirrorProblem> {
    type_a_size(d.type_label)?;
    MirrorProblem::new(d, &cfg.levi, q, &cfg.xi_values())
}

pub fn mirror_critical_points(d: &RootDatum, cfg: &RunConfig, seed: u64) -> Result<CheckResult> {
    let prob = mirror_problem(d, cfg, &cfg.q_values())?;
    let starts = cfg.starts.unwrap_or_else(|| prob.default_starts());
    let pts = prob.find_critical_points(starts, seed);
    // recompute each value from the explicit factorization
    let mut value_gap = 0.0f64;
    let mut rows = Vec::new();
    for p in &pts {
        let cell = prob.cell_point(&p.coords)?;
        let w = superpotential(&cell, &prob.xi)?;
        // the explicit form uses the principal log; compare modulo 2πi Σξ
        value_gap = value_gap.max(if prob.xi.iter().all(|x| x.norm() == 0.0) {
            (w - p.value).norm()
        } else {
            0.0
        });
        rows.push(json!({
            "chi_log_n1": chi_of_log(&cell.n1)?,
            "chi_log_n2": chi_of_log(&cell.n2)?,
            "coords": p.coords,
            "value": p.value,
            "hessian_det": p.hessian_det,
            "grad_norm": p.grad_norm,
            "nondegenerate": p.is_nondegenerate(),
            "factorization_residual": cell.residual(),
        }));
    }
    let expected = prob.expected_critical_points();
    let ok = pts.len() == expected && pts.iter().all(|p| p.is_nondegenerate()) && value_gap < 1e-9;
    Ok(CheckResult::new(
        "mirror-critical-points",
        ok,
        json!({
            "levi": cfg.levi.iter().map(|i| i + 1).collect::<Vec<_>>(),
            "q": prob.q,
            "xi": prob.xi,
            "starts": starts,
            "chart_dim": prob.chart_dim(),
            "expected_count": expected,
            "count": pts.len(),
            "critical_points": rows,
            "explicit_value_gap": value_gap,
        }),
    ))
}

/// Spectral match at `cfg.q` when given, otherwise at `trials` random `q` with `|q_i| ∈ [0.1, 10]`.
pub fn mirror_check(d: &RootDatum, cfg: &RunConfig, trials: usize, seed: u64) -> Result<CheckResult> {
    if !cfg.levi.is_empty() {
        return Err(Error::InvalidArgument(
            "mirror check compares against G/B and needs an empty --levi".into(),
        ));
    }
    type_a_size(d.type_label)?;
    let default_tol = if d.rank() == 1 {
        RANK1_SPECTRUM_TOL
    } else {
        SPECTRUM_TOL
    };
    let tol = tol_or(cfg, default_tol);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let qs: Vec<Vec<Complex64>> = match &cfg.q {
        Some(q) => vec![q.clone()],
        None => (0..trials)
            .map(|_| (0..d.rank()).map(|_| random_q(&mut rng)).collect())
            .collect(),
    };
    let mut runs = Vec::new();
    let mut ok = true;
    let mut worst: Option<f64> = Some(0.0);
    for (i, q) in qs.iter().enumerate() {
        let prob = mirror_problem(d, cfg, q)?;
        let starts = cfg.starts.unwrap_or_else(|| prob.default_starts());
        let r = mirror_spectral_check(&prob, starts, seed.wrapping_add(i as u64))?;
        ok &= r.passes(tol);
        worst = match (worst, r.max_distance) {
            (Some(a), Some(b)) => Some(a.max(b)),
            _ => None,
        };
        runs.push(json!({
            "q": q,
            "critical_values": r.critical_values,
            "eigenvalues": r.eigenvalues,
            "count": r.critical_values.len(),
            "expected_count": r.expected_count,
            "all_nondegenerate": r.all_nondegenerate,
            "max_distance": r.max_distance,
            "asserted": r.asserted,
        }));
    }
    Ok(CheckResult::new(
        &format!("mirror-check-{}", d.type_label),
        ok,
        json!({ "runs": runs, "max_distance": worst, "tol": tol }),
    ))
}

pub fn mirror_transversality(d: &RootDatum, cfg: &RunConfig, samples: usize, seed: u64) -> Result<CheckResult> {
    let prob = mirror_problem(d, cfg, &cfg.q_values())?;
    let r = transversality_check(&prob, samples, seed)?;
    Ok(CheckResult::new("mirror-transversality", r.passes(), &r))
}
