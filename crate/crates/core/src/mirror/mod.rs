//! Type-A mirror of `G/L`: the cell `B₊ ∩ N w₀w_L⁻¹ q N`, the superpotential
//! `W = χ(log n₁) + χ(log n₂) − Σ ξ_i log α_i(b)` and its critical points.
//!
//! The cell is parametrized by the free strictly-lower entries of `n₂` (those
//! outside the Levi blocks). With `t = q` fixed, `g = w̄₀ w̄_L⁻¹ t n₂` is split
//! as `g = L U` and then `b = U`, `n₁ = L⁻¹`.

pub mod cell;
pub mod jet;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;

pub use cell::{
    antidiagonal_minors, bruhat_factorize, cell_representative, levi_blocks, w0_representative, CellPoint,
    SignedPermutation,
};
pub use jet::{Jet, Scalar};

use crate::error::{Error, Result};
use crate::exactalg::{bottleneck_matching, chi_of_log_numeric, NumericMatrix};
use crate::qh::QuantumCohomology;
use crate::rootdata::{Family, RootDatum, WeylGroup};

const NEWTON_MAX_ITER: usize = 200;
const GRAD_TOL: f64 = 1e-9;
const DEDUP_TOL: f64 = 1e-6;
const NONDEGENERATE_TOL: f64 = 1e-8;

#[derive(Clone, Debug, Serialize)]
pub struct MirrorProblem {
    pub datum: RootDatum,
    pub levi: Vec<usize>,
    pub q: Vec<Complex64>,
    pub xi: Vec<Complex64>,
    /// Matrix positions of the chart coordinates inside `n₂`.
    pub chart: Vec<(usize, usize)>,
    /// Torus element with `t_i / t_{i+1} = q_i` and `det t = 1`.
    pub torus: Vec<Complex64>,
    representative: SignedPermutation,
    reduced_word: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CriticalPoint {
    pub coords: Vec<Complex64>,
    pub value: Complex64,
    pub hessian_det: Complex64,
    pub grad_norm: f64,
}

impl CriticalPoint {
    pub fn is_nondegenerate(&self) -> bool {
        self.hessian_det.norm() > NONDEGENERATE_TOL
    }
}

fn finite(z: Complex64) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

/// Newton on the gradient with step halving whenever the gradient norm does not
/// decrease. Returns the final point and gradient norm when it drops below `1e-9`.
fn damped_newton<F>(eval: F, start: Vec<Complex64>) -> Option<(Vec<Complex64>, f64)>
where
    F: Fn(&[Complex64]) -> Result<(Complex64, Vec<Complex64>, NumericMatrix)>,
{
    let norm = |v: &[Complex64]| v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let mut x = start;
    let (_, mut g, mut h) = eval(&x).ok()?;
    let mut gn = norm(&g);
    for _ in 0..NEWTON_MAX_ITER {
        if gn < 1e-13 {
            break;
        }
        let rhs = nalgebra::DVector::from_iterator(g.len(), g.iter().map(|z| -z));
        let dx = h.clone().lu().solve(&rhs)?;
        let mut step = 1.0;
        let mut accepted = false;
        for _ in 0..40 {
            let trial: Vec<Complex64> = x.iter().zip(dx.iter()).map(|(a, b)| a + b * step).collect();
            if let Ok((_, g2, h2)) = eval(&trial) {
                let n2 = norm(&g2);
                if n2 < gn {
                    x = trial;
                    g = g2;
                    h = h2;
                    gn = n2;
                    accepted = true;
                    break;
                }
            }
            step *= 0.5;
        }
        if !accepted {
            break;
        }
    }
    (gn < GRAD_TOL).then_some((x, gn))
}

impl MirrorProblem {
    /// `xi` may be empty (all zero). For `i ∈ levi`, `q_i` must be 1 so that `t`
    /// is central in `L`.
    pub fn new(datum: &RootDatum, levi: &[usize], q: &[Complex64], xi: &[Complex64]) -> Result<Self> {
        if datum.type_label.family != Family::A {
            return Err(Error::UnsupportedType(format!(
                "mirror cell is realized for type A only, got {}",
                datum.type_label
            )));
        }
        let r = datum.rank();
        let n = r + 1;
        if q.len() != r {
            return Err(Error::InvalidArgument(format!("expected {r} quantum parameters")));
        }
        let xi = if xi.is_empty() {
            vec![Complex64::default(); r]
        } else {
            xi.to_vec()
        };
        if xi.len() != r {
            return Err(Error::InvalidArgument(format!("expected {r} equivariant parameters")));
        }
        if q.iter().chain(&xi).any(|z| !finite(*z)) {
            return Err(Error::InvalidArgument("non-finite parameter".into()));
        }
        if q.iter().any(|z| z.norm() == 0.0) {
            return Err(Error::Domain("quantum parameters must be nonzero".into()));
        }
        let mut levi = levi.to_vec();
        levi.sort_unstable();
        levi.dedup();
        if levi.iter().any(|&i| i >= r) {
            return Err(Error::InvalidArgument("Levi subset out of range".into()));
        }
        if levi.iter().any(|&i| q[i] != Complex64::new(1.0, 0.0)) {
            return Err(Error::InvalidArgument("q_i must be 1 on the Levi".into()));
        }
        let blocks = levi_blocks(n, &levi);
        let block_of = |i: usize| blocks.iter().position(|&(a, b)| a <= i && i < b).expect("covered");
        let chart: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (0..i).map(move |j| (i, j)))
            .filter(|&(i, j)| block_of(i) != block_of(j))
            .collect();
        if chart.is_empty() {
            return Err(Error::InvalidArgument("the cell is a point when L = G".into()));
        }
        // t'_n = 1, t'_i = q_i t'_{i+1}, then rescale to determinant 1
        let mut tp = vec![Complex64::new(1.0, 0.0); n];
        for i in (0..r).rev() {
            tp[i] = q[i] * tp[i + 1];
        }
        let det: Complex64 = tp.iter().product();
        let root = det.powf(1.0 / n as f64);
        let torus = tp.iter().map(|x| x / root).collect();
        let group = WeylGroup::new(datum);
        let reduced_word = group.element(group.longest()).reduced_word.clone();
        Ok(MirrorProblem {
            reduced_word,
            datum: datum.clone(),
            representative: cell_representative(n, &levi),
            levi,
            q: q.to_vec(),
            xi,
            chart,
            torus,
        })
    }

    pub fn size(&self) -> usize {
        self.datum.rank() + 1
    }

    pub fn chart_dim(&self) -> usize {
        self.chart.len()
    }

    /// `|W / W_L|`, the expected number of critical points for generic parameters.
    pub fn expected_critical_points(&self) -> usize {
        let g = WeylGroup::new(&self.datum);
        g.len() / g.parabolic(&self.levi).len()
    }

    fn n2_generic<S: Scalar>(&self, coords: &[S]) -> Vec<Vec<S>> {
        let n = self.size();
        let zero = coords[0].lift(Complex64::new(0.0, 0.0));
        let one = coords[0].lift(Complex64::new(1.0, 0.0));
        let mut n2 = vec![vec![zero; n]; n];
        for (i, row) in n2.iter_mut().enumerate() {
            row[i] = one.clone();
        }
        for (k, &(i, j)) in self.chart.iter().enumerate() {
            n2[i][j] = coords[k].clone();
        }
        n2
    }

    /// `(n₂, L, U)` with `w̄ t n₂ = L U`.
    fn factor_generic<S: Scalar>(&self, coords: &[S]) -> Result<(Vec<Vec<S>>, Vec<Vec<S>>, Vec<Vec<S>>)> {
        if coords.len() != self.chart_dim() {
            return Err(Error::InvalidArgument(format!(
                "expected {} chart coordinates",
                self.chart_dim()
            )));
        }
        let n2 = self.n2_generic(coords);
        let g: Vec<Vec<S>> = self
            .representative
            .entries
            .iter()
            .map(|&(k, s)| {
                let c = coords[0].lift(Complex64::new(s, 0.0) * self.torus[k]);
                n2[k].iter().map(|x| c.clone() * x.clone()).collect()
            })
            .collect();
        let (l, u) = cell::lu_generic(&g)?;
        Ok((n2, l, u))
    }

    /// `W` at chart coordinates over any scalar.
    pub fn superpotential_generic<S: Scalar>(&self, coords: &[S]) -> Result<S> {
        let (n2, l, u) = self.factor_generic(coords)?;
        let n = self.size();
        let mut w = coords[0].lift(Complex64::new(0.0, 0.0));
        for i in 0..n - 1 {
            // χ(log n₁) with n₁ = L⁻¹ is minus the subdiagonal of L
            w = w + n2[i + 1][i].clone() - l[i + 1][i].clone();
        }
        for i in 0..n - 1 {
            if self.xi[i] != Complex64::new(0.0, 0.0) {
                let ratio = u[i][i].clone() / u[i + 1][i + 1].clone();
                w = w - coords[0].lift(self.xi[i]) * ratio.ln();
            }
        }
        Ok(w)
    }

    pub fn superpotential_at(&self, coords: &[Complex64]) -> Result<Complex64> {
        self.superpotential_generic(coords)
    }

    /// Value, gradient and Hessian of `W`.
    pub fn derivatives(&self, coords: &[Complex64]) -> Result<(Complex64, Vec<Complex64>, NumericMatrix)> {
        let d = coords.len();
        let j = self.superpotential_generic(&Jet::seed(coords))?;
        if !finite(j.v) || j.g.iter().chain(&j.h).any(|z| !finite(*z)) {
            return Err(Error::Evaluation("non-finite derivatives".into()));
        }
        Ok((j.v, j.g, DMatrix::from_row_slice(d, d, &j.h)))
    }

    pub fn cell_point(&self, coords: &[Complex64]) -> Result<CellPoint> {
        let (n2, l, u) = self.factor_generic(coords)?;
        let n = self.size();
        let n1 = cell::lower_unitriangular_inverse(&l);
        Ok(CellPoint {
            b: NumericMatrix::from_fn(n, n, |i, j| u[i][j]),
            n1: NumericMatrix::from_fn(n, n, |i, j| n1[i][j]),
            t: self.torus.clone(),
            n2: NumericMatrix::from_fn(n, n, |i, j| n2[i][j]),
            levi: self.levi.clone(),
        })
    }

    /// Chart coordinates of `n₂ = Π_k (I + a_k E_{i_k+1, i_k})` along the ShortLex
    /// reduced word `i` of `w₀` (torus Levi only).
    pub fn factorized_to_chart<S: Scalar>(&self, a: &[S]) -> Vec<S> {
        let n = self.size();
        let zero = a[0].lift(Complex64::new(0.0, 0.0));
        let one = a[0].lift(Complex64::new(1.0, 0.0));
        let mut m = vec![vec![zero; n]; n];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = one.clone();
        }
        for (k, &i) in self.reduced_word.iter().enumerate() {
            // right multiplication adds a_k times column i+1 to column i
            for row in m.iter_mut() {
                let add = row[i + 1].clone() * a[k].clone();
                row[i] = row[i].clone() + add;
            }
        }
        self.chart.iter().map(|&(i, j)| m[i][j].clone()).collect()
    }

    /// Derivatives of `W` in the coordinates `u` with `a_k = exp(u_k)`.
    fn derivatives_log_factorized(&self, u: &[Complex64]) -> Result<(Complex64, Vec<Complex64>, NumericMatrix)> {
        let d = u.len();
        let a: Vec<Jet> = Jet::seed(u).iter().map(Scalar::exp).collect();
        let j = self.superpotential_generic(&self.factorized_to_chart(&a))?;
        if !finite(j.v) || j.g.iter().chain(&j.h).any(|z| !finite(*z)) {
            return Err(Error::Evaluation("non-finite derivatives".into()));
        }
        Ok((j.v, j.g, DMatrix::from_row_slice(d, d, &j.h)))
    }

    fn finish(&self, x: Vec<Complex64>) -> Option<CriticalPoint> {
        let (x, gn) = damped_newton(|y| self.derivatives(y), x)?;
        let (value, _, hess) = self.derivatives(&x).ok()?;
        Some(CriticalPoint {
            coords: x,
            value,
            hessian_det: hess.determinant(),
            grad_norm: gn,
        })
    }

    fn solve_from<R: Rng>(&self, rng: &mut R) -> Option<CriticalPoint> {
        let d = self.chart_dim();
        if self.levi.is_empty() {
            // log-factorized coordinates keep Newton away from the poles of W;
            // phases are uniform so no sign pattern of a is favored
            let u0: Vec<Complex64> = (0..d)
                .map(|_| {
                    Complex64::new(
                        rng.sample(StandardNormal),
                        rng.random_range(-std::f64::consts::PI..std::f64::consts::PI),
                    )
                })
                .collect();
            let (u, _) = damped_newton(|y| self.derivatives_log_factorized(y), u0)?;
            let a: Vec<Complex64> = u.iter().map(|z| z.exp()).collect();
            self.finish(self.factorized_to_chart(&a))
        } else {
            let x0: Vec<Complex64> = (0..d)
                .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
                .collect();
            self.finish(x0)
        }
    }

    /// Damped Newton on `∇W` from `starts` random starts, in parallel. Start `i`
    /// draws from stream `i` of a ChaCha generator keyed by `seed` and results are
    /// reduced in start order, so the output depends only on `seed`. Every returned
    /// point has chart-coordinate gradient norm below `1e-9`; points closer than
    /// `1e-6` are merged.
    pub fn find_critical_points(&self, starts: usize, seed: u64) -> Vec<CriticalPoint> {
        let found: Vec<Option<CriticalPoint>> = (0..starts)
            .into_par_iter()
            .map(|i| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(i as u64);
                self.solve_from(&mut rng)
            })
            .collect();
        let mut kept: Vec<CriticalPoint> = Vec::new();
        for p in found.into_iter().flatten() {
            let dup = kept.iter().any(|k| {
                k.coords
                    .iter()
                    .zip(&p.coords)
                    .map(|(a, b)| (a - b).norm())
                    .fold(0.0, f64::max)
                    < DEDUP_TOL
            });
            if !dup {
                kept.push(p);
            }
        }
        kept.sort_by(|a, b| {
            a.value
                .re
                .total_cmp(&b.value.re)
                .then(a.value.im.total_cmp(&b.value.im))
        });
        kept
    }

    /// Default sweep size `50·|W|`.
    pub fn default_starts(&self) -> usize {
        50 * WeylGroup::new(&self.datum).len()
    }
}

/// `W` from an explicit factorization: `χ(log n₁) + χ(log n₂) − Σ ξ_i log(b_ii / b_{i+1,i+1})`,
/// principal branch.
pub fn superpotential(pt: &CellPoint, xi: &[Complex64]) -> Result<Complex64> {
    let n = pt.b.nrows();
    if xi.len() + 1 != n && !xi.is_empty() {
        return Err(Error::InvalidArgument(format!(
            "expected {} equivariant parameters",
            n - 1
        )));
    }
    if (0..n).any(|i| pt.b[(i, i)].norm() == 0.0) {
        return Err(Error::Domain("zero diagonal entry in b".into()));
    }
    let mut w = chi_of_log_numeric(&pt.n1)? + chi_of_log_numeric(&pt.n2)?;
    for (i, x) in xi.iter().enumerate() {
        w -= x * (pt.b[(i, i)] / pt.b[(i + 1, i + 1)]).ln();
    }
    Ok(w)
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectralReport {
    pub critical_points: Vec<CriticalPoint>,
    pub critical_values: Vec<Complex64>,
    pub eigenvalues: Vec<Complex64>,
    pub expected_count: usize,
    pub all_nondegenerate: bool,
    /// Bottleneck distance; `None` when the multisets differ in size.
    pub max_distance: Option<f64>,
    /// Whether equality of spectra is asserted (only at `ξ = 0`).
    pub asserted: bool,
}

impl SpectralReport {
    pub fn passes(&self, tol: f64) -> bool {
        !self.asserted
            || (self.critical_values.len() == self.expected_count
                && self.all_nondegenerate
                && self.max_distance.is_some_and(|d| d < tol))
    }
}

/// Critical values of `W` against the spectrum of `c₁ ⋆` at the same `q`.
pub fn mirror_spectral_check(prob: &MirrorProblem, starts: usize, seed: u64) -> Result<SpectralReport> {
    if !prob.levi.is_empty() {
        return Err(Error::InvalidArgument("spectral check needs L = T".into()));
    }
    let equivariant = prob.xi.iter().any(|z| z.norm() != 0.0);
    let ring = QuantumCohomology::new(&prob.datum, equivariant);
    let xi = if equivariant { prob.xi.clone() } else { Vec::new() };
    let eigenvalues = ring.c1_spectrum(&prob.q, &xi)?;
    let critical_points = prob.find_critical_points(starts, seed);
    let critical_values: Vec<Complex64> = critical_points.iter().map(|p| p.value).collect();
    let max_distance = bottleneck_matching(&critical_values, &eigenvalues)
        .ok()
        .map(|m| m.max_distance);
    Ok(SpectralReport {
        all_nondegenerate: critical_points.iter().all(CriticalPoint::is_nondegenerate),
        expected_count: prob.expected_critical_points(),
        critical_points,
        critical_values,
        eigenvalues,
        max_distance,
        asserted: !equivariant,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct TransversalityReport {
    pub chart_dim: usize,
    pub expected_dim: usize,
    pub samples: usize,
    /// Smallest relevant singular value (the `(n²−1)`-th) over all samples.
    pub min_singular_value: f64,
    /// Dimension of `T B₊ ∩ T M` at every sample.
    pub intersection_dims: Vec<usize>,
    pub counterexample: Option<Vec<Complex64>>,
}

impl TransversalityReport {
    pub fn passes(&self) -> bool {
        self.counterexample.is_none()
            && self.chart_dim == self.expected_dim
            && self.intersection_dims.iter().all(|&d| d == self.expected_dim)
    }
}

const RANK_TOL: f64 = 1e-8;

/// Rank of `{Ad_{b⁻¹} 𝔫, 𝔫, 𝔟₊ ∩ 𝔰𝔩}` at sampled cell points; full rank in
/// `𝔰𝔩_n` means `B₊` and `M` meet transversally.
pub fn transversality_check(prob: &MirrorProblem, samples: usize, seed: u64) -> Result<TransversalityReport> {
    if !prob.levi.is_empty() {
        return Err(Error::InvalidArgument("transversality check needs L = T".into()));
    }
    let n = prob.size();
    let expected_dim = WeylGroup::new(&prob.datum)
        .element(WeylGroup::new(&prob.datum).longest())
        .length;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut min_sv = f64::INFINITY;
    let mut dims = Vec::new();
    let mut counterexample = None;
    let unit = |i: usize, j: usize| {
        let mut m = NumericMatrix::zeros(n, n);
        m[(i, j)] = Complex64::new(1.0, 0.0);
        m
    };
    let mut taken = 0;
    while taken < samples {
        let coords: Vec<Complex64> = (0..prob.chart_dim())
            .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
            .collect();
        let Ok(pt) = prob.cell_point(&coords) else { continue };
        let Some(binv) = pt.b.clone().try_inverse() else {
            continue;
        };
        taken += 1;
        let mut vecs: Vec<NumericMatrix> = Vec::new();
        for i in 0..n {
            for j in 0..i {
                vecs.push(&binv * unit(i, j) * &pt.b);
                vecs.push(unit(i, j));
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                vecs.push(unit(i, j));
            }
            if i + 1 < n {
                vecs.push(unit(i, i) - unit(i + 1, i + 1));
            }
        }
        let span = NumericMatrix::from_fn(n * n, vecs.len(), |r, c| vecs[c][(r / n, r % n)]);
        let sv = crate::exactalg::numeric::singular_values(&span);
        let relevant = sv[n * n - 2];
        let rank = sv.iter().filter(|&&s| s > RANK_TOL).count();
        dims.push(vecs.len() - rank);
        min_sv = min_sv.min(relevant);
        if relevant <= RANK_TOL && counterexample.is_none() {
            counterexample = Some(coords);
        }
    }
    Ok(TransversalityReport {
        chart_dim: prob.chart_dim(),
        expected_dim,
        samples,
        min_singular_value: min_sv,
        intersection_dims: dims,
        counterexample,
    })
}

/// Rank-one consistency of the mirror with the leaf formula: on the `A1` cell
/// at `q`, the section `ξ(s)` cut out by `dW = 0` with `s = √(b₁₁/b₂₂)` and the
/// point `(ξ, z = s²)` are compared with `leaf_rank1(√q, s)`. Returns the
/// largest coordinate discrepancy.
pub fn rank1_leaf_consistency(datum: &RootDatum, q: Complex64, s: Complex64) -> Result<f64> {
    if datum.rank() != 1 {
        return Err(Error::InvalidArgument("rank-one datum required".into()));
    }
    let root_q = q.sqrt();
    let prob = MirrorProblem::new(datum, &[], &[q], &[])?;
    let y = root_q * s;
    let seeds = Jet::seed(&[y]);
    let f = prob.superpotential_generic(&seeds)?;
    let (_, _, u) = prob.factor_generic(&seeds)?;
    let log_z = (u[0][0].clone() / u[1][1].clone()).ln();
    // dW = df − ξ dlog z = 0
    let xi = f.g[0] / log_z.g[0];
    let z = (u[0][0].clone() / u[1][1].clone()).v;
    let leaf = crate::bfm::leaf_rank1(root_q, s)?;
    Ok((xi - leaf.xi).norm().max((z - leaf.z).norm()))
}
