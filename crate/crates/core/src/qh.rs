//! (Equivariant) quantum cohomology of full flag varieties `G/B`.
//!
//! Products are generated by the quantum Chevalley rule
//!
//! ```text
//! σ_{s_i} ⋆ σ_w = (λ_i − wλ_i) σ_w
//!               + Σ_{β>0, ℓ(ws_β) = ℓ(w)+1}            <λ_i, β^∨> σ_{ws_β}
//!               + Σ_{β>0, ℓ(ws_β) = ℓ(w)+1−<2ρ, β^∨>}  <λ_i, β^∨> q^{β^∨} σ_{ws_β}
//! ```
//!
//! with `λ_i − wλ_i` written in simple roots and each simple root `α_k`
//! mapped to the equivariant parameter `xi{k}`. Quantum parameters are
//! `q{k}`, one per simple coroot. Coefficient ring variables are 1-based.

use std::collections::{BTreeMap, HashMap};
use std::sync::OnceLock;

use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactalg::{ExactMatrix, LaurentPoly, NumericMatrix, Rational};
use crate::rootdata::{RootDatum, WeylElement, WeylGroup};

pub fn q_name(k: usize) -> String {
    format!("q{}", k + 1)
}

pub fn xi_name(k: usize) -> String {
    format!("xi{}", k + 1)
}

/// A vector in the Schubert basis over the `q, ξ` coefficient ring.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct QhElement {
    coefficients: BTreeMap<WeylElement, LaurentPoly>,
}

impl QhElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(w: &WeylElement) -> Self {
        let mut coefficients = BTreeMap::new();
        coefficients.insert(w.clone(), LaurentPoly::one());
        QhElement { coefficients }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (WeylElement, LaurentPoly)>) -> Self {
        let mut out = QhElement::zero();
        for (w, c) in terms {
            out.add_term(&w, &c);
        }
        out
    }

    pub fn add_term(&mut self, w: &WeylElement, c: &LaurentPoly) {
        let cur = self.coefficients.remove(w).unwrap_or_default();
        let next = cur + c;
        if !next.is_zero() {
            self.coefficients.insert(w.clone(), next);
        }
    }

    pub fn coefficients(&self) -> &BTreeMap<WeylElement, LaurentPoly> {
        &self.coefficients
    }

    pub fn coefficient(&self, w: &WeylElement) -> LaurentPoly {
        self.coefficients.get(w).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn add(&self, other: &QhElement) -> QhElement {
        let mut out = self.clone();
        for (w, c) in &other.coefficients {
            out.add_term(w, c);
        }
        out
    }

    pub fn scale(&self, c: &LaurentPoly) -> QhElement {
        QhElement::from_terms(self.coefficients.iter().map(|(w, x)| (w.clone(), x * c)))
    }

    /// Apply `f` to every coefficient (e.g. specialization of parameters).
    pub fn try_map_coefficients(&self, f: impl Fn(&LaurentPoly) -> Result<LaurentPoly>) -> Result<QhElement> {
        let mut out = QhElement::zero();
        for (w, c) in &self.coefficients {
            out.add_term(w, &f(c)?);
        }
        Ok(out)
    }
}

/// The matrix of left multiplication by a fixed class, in basis order.
#[derive(Clone, Debug, PartialEq)]
pub struct MultOperator {
    pub basis: Vec<WeylElement>,
    /// `matrix[(v, w)]` is the coefficient of `σ_v` in `class ⋆ σ_w`.
    pub matrix: ExactMatrix<LaurentPoly>,
}

/// Quantum cohomology ring of `G/B` for one root datum.
#[derive(Debug)]
pub struct QuantumCohomology {
    group: WeylGroup,
    equivariant: bool,
    fundamental_weights: Vec<Vec<Rational>>,
    chevalley_ops: Vec<ExactMatrix<LaurentPoly>>,
    operators: OnceLock<Vec<ExactMatrix<LaurentPoly>>>,
}

impl QuantumCohomology {
    pub fn new(datum: &RootDatum, equivariant: bool) -> Self {
        let group = WeylGroup::new(datum);
        let r = datum.rank();
        // λ_i in simple-root coordinates: column i of the inverse Cartan matrix.
        let inv = datum.cartan().inverse().expect("Cartan matrices are invertible");
        let fundamental_weights = (0..r).map(|i| inv.column(i)).collect();
        let mut ring = QuantumCohomology {
            group,
            equivariant,
            fundamental_weights,
            chevalley_ops: Vec::new(),
            operators: OnceLock::new(),
        };
        ring.chevalley_ops = (0..r).map(|i| ring.chevalley_matrix(i)).collect();
        ring
    }

    pub fn group(&self) -> &WeylGroup {
        &self.group
    }

    pub fn is_equivariant(&self) -> bool {
        self.equivariant
    }

    pub fn rank(&self) -> usize {
        self.group.rank()
    }

    pub fn dim(&self) -> usize {
        self.group.len()
    }

    pub fn basis(&self) -> &[WeylElement] {
        self.group.elements()
    }

    /// `<x, β^∨>` for `x` in simple-root and `β^∨` in simple-coroot coordinates.
    fn pair(&self, x: &[Rational], coroot: &[i64]) -> Rational {
        let a = &self.group.datum().cartan_matrix;
        let mut acc = Rational::zero();
        for (k, xk) in x.iter().enumerate() {
            for (l, &dl) in coroot.iter().enumerate() {
                acc += xk * Rational::from_integer((dl * a[l][k]).into());
            }
        }
        acc
    }

    /// Chevalley expansion of `σ_{s_i} ⋆ σ_w` as `(basis index, coefficient)` pairs.
    fn chevalley_terms(&self, i: usize, w: usize) -> Vec<(usize, LaurentPoly)> {
        let g = &self.group;
        let lw = g.element(w).length as i64;
        let mut out: Vec<(usize, LaurentPoly)> = Vec::new();

        if self.equivariant {
            let lam = &self.fundamental_weights[i];
            let wl: Vec<Rational> = (0..self.rank())
                .map(|r| {
                    (0..self.rank()).fold(Rational::zero(), |acc, c| {
                        acc + Rational::from_integer(g.root_action(w)[(r, c)].into()) * &lam[c]
                    })
                })
                .collect();
            let diag = lam
                .iter()
                .zip(&wl)
                .enumerate()
                .fold(LaurentPoly::zero(), |acc, (k, (a, b))| {
                    acc + LaurentPoly::monomial(a - b, &[(&xi_name(k), 1)])
                });
            if !diag.is_zero() {
                out.push((w, diag));
            }
        }

        for beta in g.positive_roots() {
            let coeff = self.pair(&self.fundamental_weights[i], &beta.coroot);
            if coeff.is_zero() {
                continue;
            }
            let v = g.mul(w, g.reflection(beta));
            let lv = g.element(v).length as i64;
            if lv == lw + 1 {
                out.push((v, LaurentPoly::constant(coeff)));
            } else if lv == lw + 1 - beta.two_rho_pairing() {
                let names: Vec<String> = (0..self.rank()).map(q_name).collect();
                let powers: Vec<(&str, i32)> = beta
                    .coroot
                    .iter()
                    .enumerate()
                    .map(|(k, &d)| (names[k].as_str(), d as i32))
                    .collect();
                out.push((v, LaurentPoly::monomial(coeff, &powers)));
            }
        }
        out
    }

    fn chevalley_matrix(&self, i: usize) -> ExactMatrix<LaurentPoly> {
        let n = self.dim();
        let mut m = ExactMatrix::<LaurentPoly>::zeros(n, n);
        for w in 0..n {
            for (v, c) in self.chevalley_terms(i, w) {
                m[(v, w)] = m[(v, w)].clone() + &c;
            }
        }
        m
    }

    /// `σ_{s_i} ⋆ σ_w`.
    pub fn chevalley(&self, i: usize, w: &WeylElement) -> Result<QhElement> {
        if i >= self.rank() {
            return Err(Error::InvalidArgument(format!(
                "simple reflection index {i} out of range"
            )));
        }
        let wi = self
            .group
            .index_of(w)
            .ok_or_else(|| Error::InvalidArgument(format!("{} is not in this Weyl group", w.label())))?;
        Ok(self.vector_to_element(&self.chevalley_ops[i].column(wi)))
    }

    pub fn chevalley_operator(&self, i: usize) -> &ExactMatrix<LaurentPoly> {
        &self.chevalley_ops[i]
    }

    pub fn class(&self, word: &[usize]) -> Result<QhElement> {
        let i = self
            .group
            .index_of_word(word)
            .ok_or_else(|| Error::InvalidArgument(format!("invalid word {word:?}")))?;
        Ok(QhElement::basis(self.group.element(i)))
    }

    pub fn element_to_vector(&self, a: &QhElement) -> Result<Vec<LaurentPoly>> {
        let mut v = vec![LaurentPoly::zero(); self.dim()];
        for (w, c) in a.coefficients() {
            let i = self
                .group
                .index_of(w)
                .ok_or_else(|| Error::InvalidArgument(format!("{} is not in this Weyl group", w.label())))?;
            v[i] = c.clone();
        }
        Ok(v)
    }

    pub fn vector_to_element(&self, v: &[LaurentPoly]) -> QhElement {
        QhElement::from_terms(
            v.iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (self.group.element(i).clone(), c.clone())),
        )
    }

    /// `a ⋆ σ_{s_i}` computed with the Chevalley operator.
    pub fn multiply_by_divisor(&self, a: &QhElement, i: usize) -> Result<QhElement> {
        let v = self.element_to_vector(a)?;
        Ok(self.vector_to_element(&self.chevalley_ops[i].apply(&v)?))
    }

    /// Multiplication operators of every Schubert class, built level by level in
    /// length: the top-length terms of `σ_{s_j} ⋆ σ_u` have constant rational
    /// coefficients, so the operators of the next level are recovered by solving
    /// a rational linear system against `M_{s_j} M_u − (lower terms)`.
    pub fn operators(&self) -> &[ExactMatrix<LaurentPoly>] {
        self.operators.get_or_init(|| self.build_operators())
    }

    fn build_operators(&self) -> Vec<ExactMatrix<LaurentPoly>> {
        let n = self.dim();
        let g = &self.group;
        let max_len = g.element(g.longest()).length;
        let mut levels: Vec<Vec<usize>> = vec![Vec::new(); max_len + 1];
        for i in 0..n {
            levels[g.element(i).length].push(i);
        }
        let mut ops: Vec<Option<ExactMatrix<LaurentPoly>>> = vec![None; n];
        ops[g.identity()] = Some(ExactMatrix::identity(n));

        for k in 0..max_len {
            let targets = &levels[k + 1];
            let pos: HashMap<usize, usize> = targets.iter().enumerate().map(|(p, &v)| (v, p)).collect();
            let mut rows: Vec<Vec<Rational>> = Vec::new();
            let mut rhs: Vec<ExactMatrix<LaurentPoly>> = Vec::new();
            let mut rank = 0;
            'outer: for &u in &levels[k] {
                for j in 0..self.rank() {
                    if rank == targets.len() {
                        break 'outer;
                    }
                    let terms = self.chevalley_terms(j, u);
                    let mut row = vec![Rational::zero(); targets.len()];
                    for (v, c) in &terms {
                        if let Some(&p) = pos.get(v) {
                            row[p] += c
                                .as_constant()
                                .expect("top-degree Chevalley coefficients are constants");
                        }
                    }
                    let mut trial = rows.clone();
                    trial.push(row.clone());
                    let m = ExactMatrix::from_rows(trial).expect("rectangular");
                    if m.rank() <= rank {
                        continue;
                    }
                    rank += 1;
                    let mut r = self.chevalley_ops[j]
                        .matmul(ops[u].as_ref().expect("lower level built"))
                        .expect("square");
                    for (v, c) in &terms {
                        if !pos.contains_key(v) {
                            let lower = ops[*v].as_ref().expect("lower-length operator available");
                            r = r.sub(&lower.map(|x| x * c)).expect("square");
                        }
                    }
                    rows.push(row);
                    rhs.push(r);
                }
            }
            assert_eq!(rank, targets.len(), "divisor classes generate level {}", k + 1);
            let inv = ExactMatrix::from_rows(rows)
                .expect("square")
                .inverse()
                .expect("full rank");
            for (p, &v) in targets.iter().enumerate() {
                let mut acc = ExactMatrix::zeros(n, n);
                for (e, r) in rhs.iter().enumerate() {
                    let c = &inv[(p, e)];
                    if !c.is_zero() {
                        acc = acc.add(&r.map(|x| x.scale(c))).expect("square");
                    }
                }
                ops[v] = Some(acc);
            }
        }
        ops.into_iter().map(|m| m.expect("every level built")).collect()
    }

    pub fn mult_operator(&self, a: &QhElement) -> Result<MultOperator> {
        let n = self.dim();
        let ops = self.operators();
        let mut m = ExactMatrix::zeros(n, n);
        for (i, c) in self.element_to_vector(a)?.iter().enumerate() {
            if !c.is_zero() {
                m = m.add(&ops[i].map(|x| x * c))?;
            }
        }
        Ok(MultOperator {
            basis: self.basis().to_vec(),
            matrix: m,
        })
    }

    /// `a ⋆ b`.
    pub fn multiply(&self, a: &QhElement, b: &QhElement) -> Result<QhElement> {
        let ops = self.operators();
        let bv = self.element_to_vector(b)?;
        let mut out = vec![LaurentPoly::zero(); self.dim()];
        for (i, c) in self.element_to_vector(a)?.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (slot, x) in out.iter_mut().zip(ops[i].apply(&bv)?) {
                *slot = slot.clone() + &(x * c);
            }
        }
        Ok(self.vector_to_element(&out))
    }

    /// `c₁(G/B) = Σ_i <2ρ, α_i^∨> σ_{s_i} = 2 Σ_i σ_{s_i}`.
    pub fn c1_class(&self) -> QhElement {
        QhElement::from_terms((0..self.rank()).map(|i| {
            (
                self.group.element(self.group.simple_reflection(i)).clone(),
                LaurentPoly::from_int(2),
            )
        }))
    }

    pub fn c1_exact_operator(&self) -> ExactMatrix<LaurentPoly> {
        let n = self.dim();
        self.chevalley_ops.iter().fold(ExactMatrix::zeros(n, n), |acc, c| {
            acc.add(&c.scale(&LaurentPoly::from_int(2))).expect("square")
        })
    }

    /// Numeric specialization of `c₁ ⋆` at the given `q` and `ξ`.
    pub fn c1_operator(&self, q: &[Complex64], xi: &[Complex64]) -> Result<NumericMatrix> {
        let r = self.rank();
        if q.len() != r || (self.equivariant && xi.len() != r) || (!xi.is_empty() && xi.len() != r) {
            return Err(Error::InvalidArgument(format!("expected {r} values for q and ξ")));
        }
        if q.iter().chain(xi).any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidArgument("non-finite parameter".into()));
        }
        let mut vals: HashMap<String, Complex64> = HashMap::new();
        for k in 0..r {
            vals.insert(q_name(k), q[k]);
            vals.insert(xi_name(k), xi.get(k).copied().unwrap_or_default());
        }
        let m = self.c1_exact_operator();
        let n = self.dim();
        let mut out = NumericMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] = m[(i, j)].eval(&vals)?;
            }
        }
        Ok(out)
    }

    pub fn c1_spectrum(&self, q: &[Complex64], xi: &[Complex64]) -> Result<Vec<Complex64>> {
        crate::exactalg::eigenvalues(&self.c1_operator(q, xi)?)
    }
}

/// Outcome of the exact internal-consistency suite for one ring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConsistencyReport {
    pub type_label: String,
    pub equivariant: bool,
    /// `[C_i, C_j] = 0` for all Chevalley operators.
    pub operators_commute: bool,
    /// `σ_u ⋆ σ_v = σ_v ⋆ σ_u` for all basis pairs.
    pub commutative: bool,
    /// `(σ_i ⋆ σ_j) ⋆ σ_k = σ_i ⋆ (σ_j ⋆ σ_k)` for all simple classes.
    pub associative: bool,
    /// Every term `c ξ^a q^d σ_v` of `σ_u ⋆ σ_w` has `ℓ(v) + |a| + 2|d| = ℓ(u) + ℓ(w)`;
    /// in particular the `q = 0` part of a non-equivariant product is length graded.
    pub homogeneous: bool,
    /// At `q = 0` and `ξ = 0` only `ℓ(v) = ℓ(u) + ℓ(w)` survives.
    pub classical_graded: bool,
    /// Equivariant products at `ξ = 0` equal the non-equivariant ones (checked
    /// only for the equivariant ring).
    pub specializes: Option<bool>,
    pub triples_checked: usize,
    pub pairs_checked: usize,
}

impl ConsistencyReport {
    pub fn passes(&self) -> bool {
        self.operators_commute
            && self.commutative
            && self.associative
            && self.homogeneous
            && self.classical_graded
            && self.specializes.unwrap_or(true)
    }
}

fn term_degree(c: &LaurentPoly, e: &[i32]) -> i32 {
    c.vars()
        .iter()
        .zip(e)
        .map(|(name, &x)| if name.starts_with('q') { 2 * x } else { x })
        .sum()
}

fn drop_parameters(c: &LaurentPoly, rank: usize, names: fn(usize) -> String) -> Result<LaurentPoly> {
    (0..rank).try_fold(c.clone(), |acc, k| acc.specialize(&names(k), &Rational::zero()))
}

/// Run the exact consistency suite on `datum`.
pub fn consistency_report(datum: &RootDatum, equivariant: bool) -> Result<ConsistencyReport> {
    let ring = QuantumCohomology::new(datum, equivariant);
    let r = ring.rank();
    let g = ring.group();
    let simple: Vec<WeylElement> = (0..r).map(|i| g.element(g.simple_reflection(i)).clone()).collect();

    let mut operators_commute = true;
    for i in 0..r {
        for j in i + 1..r {
            operators_commute &= ring
                .chevalley_operator(i)
                .commutator(ring.chevalley_operator(j))?
                .is_zero_matrix();
        }
    }

    let mut associative = true;
    let mut triples = 0;
    for i in 0..r {
        for j in 0..r {
            for k in 0..r {
                let left = ring.multiply_by_divisor(&ring.chevalley(i, &simple[j])?, k)?;
                let right = ring.multiply_by_divisor(&ring.chevalley(j, &simple[k])?, i)?;
                associative &= left == right;
                triples += 1;
            }
        }
    }

    let plain = equivariant.then(|| QuantumCohomology::new(datum, false));
    let basis = ring.basis().to_vec();
    let mut commutative = true;
    let mut homogeneous = true;
    let mut classical_graded = true;
    let mut specializes = plain.as_ref().map(|_| true);
    let mut pairs = 0;
    for (a, u) in basis.iter().enumerate() {
        for w in &basis[a..] {
            let uw = ring.multiply(&QhElement::basis(u), &QhElement::basis(w))?;
            let wu = ring.multiply(&QhElement::basis(w), &QhElement::basis(u))?;
            commutative &= uw == wu;
            pairs += 1;
            for (v, c) in uw.coefficients() {
                for e in c.terms().keys() {
                    homogeneous &= v.length as i32 + term_degree(c, e) == (u.length + w.length) as i32;
                }
                let classical = drop_parameters(&drop_parameters(c, r, q_name)?, r, xi_name)?;
                if !classical.is_zero() {
                    classical_graded &= v.length == u.length + w.length;
                }
            }
            if let (Some(p), Some(flag)) = (&plain, specializes.as_mut()) {
                let lhs = uw.try_map_coefficients(|c| drop_parameters(c, r, xi_name))?;
                *flag &= lhs == p.multiply(&QhElement::basis(u), &QhElement::basis(w))?;
            }
        }
    }
    Ok(ConsistencyReport {
        type_label: datum.type_label.to_string(),
        equivariant,
        operators_commute,
        commutative,
        associative,
        homogeneous,
        classical_graded,
        specializes,
        triples_checked: triples,
        pairs_checked: pairs,
    })
}

/// One-shot form of [`QuantumCohomology::chevalley`].
pub fn quantum_chevalley(i: usize, w: &WeylElement, d: &RootDatum, equivariant: bool) -> Result<QhElement> {
    QuantumCohomology::new(d, equivariant).chevalley(i, w)
}

/// JSON view of a [`QhElement`]: basis label → canonical polynomial text.
pub fn element_json(a: &QhElement) -> serde_json::Value {
    let m: BTreeMap<String, String> = a
        .coefficients()
        .iter()
        .map(|(w, c)| (w.label(), c.to_string()))
        .collect();
    serde_json::to_value(m).expect("string map")
}

#[derive(Serialize)]
struct OperatorJson {
    basis: Vec<String>,
    /// `entries[v][w]`: coefficient map `monomial → rational` of `σ_v` in `class ⋆ σ_w`.
    entries: Vec<Vec<BTreeMap<String, String>>>,
}

fn coefficient_map(p: &LaurentPoly) -> BTreeMap<String, String> {
    p.terms()
        .iter()
        .map(|(e, c)| {
            let mono: Vec<String> = p
                .vars()
                .iter()
                .zip(e)
                .filter(|(_, &x)| x != 0)
                .map(|(v, &x)| if x == 1 { v.clone() } else { format!("{v}^{x}") })
                .collect();
            let key = if mono.is_empty() {
                "1".to_string()
            } else {
                mono.join("*")
            };
            (key, c.to_string())
        })
        .collect()
}

pub fn operator_json(op: &MultOperator) -> serde_json::Value {
    let n = op.basis.len();
    let j = OperatorJson {
        basis: op.basis.iter().map(|w| w.label()).collect(),
        entries: (0..n)
            .map(|v| (0..n).map(|w| coefficient_map(&op.matrix[(v, w)])).collect())
            .collect(),
    };
    serde_json::to_value(j).expect("serializable")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::{build_root_datum, LatticeChoice};

    fn ring(t: &str, eq: bool) -> QuantumCohomology {
        QuantumCohomology::new(
            &build_root_datum(t.parse().unwrap(), LatticeChoice::SimplyConnected).unwrap(),
            eq,
        )
    }

    #[test]
    fn a1_square_of_divisor() {
        let r = ring("A1", false);
        let s = r.group().element(1).clone();
        let e = r.group().element(0).clone();
        let p = r.chevalley(0, &s).unwrap();
        assert_eq!(p, QhElement::from_terms([(e.clone(), LaurentPoly::var("q1"))]));

        let r = ring("A1", true);
        let p = r.chevalley(0, &s).unwrap();
        assert_eq!(
            p,
            QhElement::from_terms([(e, LaurentPoly::var("q1")), (s, LaurentPoly::var("xi1"))])
        );
    }

    #[test]
    fn identity_times_divisor() {
        for t in ["A2", "B2", "G2"] {
            let r = ring(t, true);
            let e = r.group().element(0).clone();
            for i in 0..2 {
                let si = r.group().element(r.group().simple_reflection(i)).clone();
                assert_eq!(r.chevalley(i, &e).unwrap(), QhElement::basis(&si));
            }
        }
    }

    #[test]
    fn a2_square_has_unit_quantum_term() {
        let r = ring("A2", false);
        let s1 = r.class(&[0]).unwrap();
        let p = r.multiply(&s1, &s1).unwrap();
        let e = r.group().element(0);
        assert_eq!(p.coefficient(e), LaurentPoly::var("q1"));
    }

    #[test]
    fn unit_is_neutral() {
        let r = ring("A2", true);
        let one = r.class(&[]).unwrap();
        let a = r
            .class(&[0, 1])
            .unwrap()
            .add(&r.class(&[1]).unwrap().scale(&LaurentPoly::var("xi2")));
        assert_eq!(r.multiply(&a, &one).unwrap(), a);
        assert_eq!(r.multiply(&one, &a).unwrap(), a);
    }

    #[test]
    fn operators_send_unit_to_class() {
        let r = ring("B2", true);
        let ops = r.operators();
        let mut unit = vec![LaurentPoly::zero(); r.dim()];
        unit[0] = LaurentPoly::one();
        for (i, op) in ops.iter().enumerate() {
            let col = op.apply(&unit).unwrap();
            for (j, c) in col.iter().enumerate() {
                assert_eq!(c.is_one(), i == j);
                assert!(i == j || c.is_zero());
            }
        }
    }

    #[test]
    fn c1_a1_spectrum() {
        let r = ring("A1", false);
        let one = Complex64::new(1.0, 0.0);
        let mut ev = r.c1_spectrum(&[one], &[]).unwrap();
        ev.sort_by(|a, b| a.re.total_cmp(&b.re));
        assert!((ev[0] + 2.0).norm() < 1e-12 && (ev[1] - 2.0).norm() < 1e-12);
        let m = r.c1_operator(&[Complex64::new(0.0, 0.0)], &[]).unwrap();
        assert!((&m * &m).iter().all(|z| z.norm() == 0.0));
        assert!(r.c1_operator(&[Complex64::new(f64::NAN, 0.0)], &[]).is_err());
    }

    #[test]
    fn a2_square_is_two_terms() {
        let r = ring("A2", false);
        let s1 = r.class(&[0]).unwrap();
        let expect = r
            .class(&[1, 0])
            .unwrap()
            .add(&r.class(&[]).unwrap().scale(&LaurentPoly::var("q1")));
        assert_eq!(r.multiply(&s1, &s1).unwrap(), expect);
    }

    #[test]
    fn chevalley_operators_commute() {
        for t in ["A1", "A2", "A3", "B2", "C2", "G2"] {
            for eq in [false, true] {
                let r = ring(t, eq);
                for i in 0..r.rank() {
                    for j in i + 1..r.rank() {
                        let c = r.chevalley_operator(i).commutator(r.chevalley_operator(j)).unwrap();
                        assert!(c.is_zero_matrix(), "{t} eq={eq} [{i},{j}]");
                    }
                }
            }
        }
    }

    /// Every term `c ξ^a q^d σ_v` of `σ_u ⋆ σ_w` satisfies
    /// `ℓ(v) + |a| + 2|d| = ℓ(u) + ℓ(w)`.
    #[test]
    fn products_are_homogeneous() {
        for t in ["A2", "B2"] {
            let r = ring(t, true);
            let basis = r.basis().to_vec();
            for u in &basis {
                for w in &basis {
                    let p = r.multiply(&QhElement::basis(u), &QhElement::basis(w)).unwrap();
                    for (v, c) in p.coefficients() {
                        for (e, _) in c.terms() {
                            let deg: i32 = c
                                .vars()
                                .iter()
                                .zip(e)
                                .map(|(name, &x)| if name.starts_with('q') { 2 * x } else { x })
                                .sum();
                            assert_eq!(v.length as i32 + deg, (u.length + w.length) as i32);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn equivariant_specializes_to_ordinary() {
        let eqr = ring("B2", true);
        let plain = ring("B2", false);
        let basis = eqr.basis().to_vec();
        for u in &basis {
            for w in &basis {
                let a = eqr.multiply(&QhElement::basis(u), &QhElement::basis(w)).unwrap();
                let a0 = a
                    .try_map_coefficients(|c| {
                        c.specialize("xi1", &Rational::zero())?
                            .specialize("xi2", &Rational::zero())
                    })
                    .unwrap();
                let b = plain.multiply(&QhElement::basis(u), &QhElement::basis(w)).unwrap();
                assert_eq!(a0, b);
            }
        }
    }
}
