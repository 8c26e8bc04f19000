//! Multivariate Laurent polynomials with exact rational coefficients.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Shorthand for the rational `num / den`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// A Laurent polynomial over the rationals.
///
/// Variables are kept sorted by name and only variables that occur with a
/// nonzero exponent in some term are retained, so structural equality is
/// semantic equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    vars: Vec<String>,
    terms: BTreeMap<Vec<i32>, Rational>,
}

impl LaurentPoly {
    pub fn constant(c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c);
        }
        LaurentPoly {
            vars: Vec::new(),
            terms,
        }
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(Rational::from_integer(BigInt::from(c)))
    }

    pub fn var(name: &str) -> Self {
        Self::monomial(Rational::one(), &[(name, 1)])
    }

    /// `coeff * Π name^exp`; repeated names multiply.
    pub fn monomial(coeff: Rational, powers: &[(&str, i32)]) -> Self {
        let mut exps: BTreeMap<String, i32> = BTreeMap::new();
        for (name, e) in powers {
            *exps.entry((*name).to_string()).or_insert(0) += e;
        }
        let vars: Vec<String> = exps.keys().cloned().collect();
        let exp: Vec<i32> = exps.values().copied().collect();
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exp, coeff);
        }
        LaurentPoly { vars, terms }.normalized()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    /// Terms keyed by exponent vectors aligned with [`Self::vars`].
    pub fn terms(&self) -> &BTreeMap<Vec<i32>, Rational> {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_constant(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn constant_term(&self) -> Rational {
        let zero_exp = vec![0; self.vars.len()];
        self.terms.get(&zero_exp).cloned().unwrap_or_else(Rational::zero)
    }

    /// The rational value when the polynomial is constant.
    pub fn as_constant(&self) -> Option<Rational> {
        self.is_constant().then(|| self.constant_term())
    }

    fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.binary_search_by(|v| v.as_str().cmp(name)).ok()
    }

    /// Coefficient of the monomial `Π name^exp` (names absent from the list have exponent 0).
    pub fn coefficient(&self, powers: &[(&str, i32)]) -> Rational {
        let mut exp = vec![0; self.vars.len()];
        for (name, e) in powers {
            match self.var_index(name) {
                Some(i) => exp[i] += e,
                None if *e == 0 => {}
                None => return Rational::zero(),
            }
        }
        self.terms.get(&exp).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn min_exponent(&self, name: &str) -> i32 {
        match self.var_index(name) {
            Some(i) => self.terms.keys().map(|e| e[i]).min().unwrap_or(0),
            None => 0,
        }
    }

    pub fn max_exponent(&self, name: &str) -> i32 {
        match self.var_index(name) {
            Some(i) => self.terms.keys().map(|e| e[i]).max().unwrap_or(0),
            None => 0,
        }
    }

    /// Exponent of `name` in each term, in term order.
    pub fn exponents_of<'a>(&'a self, name: &str) -> impl Iterator<Item = i32> + 'a {
        let idx = self.var_index(name);
        self.terms.keys().map(move |e| idx.map(|i| e[i]).unwrap_or(0))
    }

    fn normalized(mut self) -> Self {
        self.terms.retain(|_, c| !c.is_zero());
        let used: Vec<bool> = (0..self.vars.len())
            .map(|i| self.terms.keys().any(|e| e[i] != 0))
            .collect();
        if used.iter().all(|u| *u) {
            return self;
        }
        let vars = self
            .vars
            .iter()
            .zip(&used)
            .filter(|(_, u)| **u)
            .map(|(v, _)| v.clone())
            .collect();
        let terms = std::mem::take(&mut self.terms)
            .into_iter()
            .map(|(e, c)| {
                let e: Vec<i32> = e.into_iter().zip(&used).filter(|(_, u)| **u).map(|(x, _)| x).collect();
                (e, c)
            })
            .collect();
        LaurentPoly { vars, terms }
    }

    fn merged_vars(a: &[String], b: &[String]) -> Vec<String> {
        let mut out: Vec<String> = a.iter().chain(b.iter()).cloned().collect();
        out.sort();
        out.dedup();
        out
    }

    fn aligned_terms(&self, vars: &[String]) -> BTreeMap<Vec<i32>, Rational> {
        if self.vars == vars {
            return self.terms.clone();
        }
        let pos: Vec<usize> = self
            .vars
            .iter()
            .map(|v| vars.binary_search(v).expect("variable missing from merged list"))
            .collect();
        self.terms
            .iter()
            .map(|(e, c)| {
                let mut ne = vec![0; vars.len()];
                for (k, &p) in pos.iter().enumerate() {
                    ne[p] = e[k];
                }
                (ne, c.clone())
            })
            .collect()
    }

    fn combine(&self, other: &Self, sign: i32) -> Self {
        let vars = Self::merged_vars(&self.vars, &other.vars);
        let mut terms = self.aligned_terms(&vars);
        for (e, c) in other.aligned_terms(&vars) {
            let entry = terms.entry(e).or_insert_with(Rational::zero);
            if sign > 0 {
                *entry += c;
            } else {
                *entry -= c;
            }
        }
        LaurentPoly { vars, terms }.normalized()
    }

    fn product(&self, other: &Self) -> Self {
        if self.terms.is_empty() || other.terms.is_empty() {
            return Self::zero();
        }
        let vars = Self::merged_vars(&self.vars, &other.vars);
        let a = self.aligned_terms(&vars);
        let b = other.aligned_terms(&vars);
        let mut terms: BTreeMap<Vec<i32>, Rational> = BTreeMap::new();
        for (ea, ca) in &a {
            for (eb, cb) in &b {
                let e: Vec<i32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                let entry = terms.entry(e).or_insert_with(Rational::zero);
                *entry += ca * cb;
            }
        }
        LaurentPoly { vars, terms }.normalized()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = acc.product(self);
        }
        acc
    }

    /// Single-term polynomials are units of the Laurent ring.
    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Inverse of a monomial; `None` for anything that is not a unit.
    pub fn monomial_inverse(&self) -> Option<Self> {
        let (e, c) = self.terms.iter().next()?;
        if self.terms.len() != 1 {
            return None;
        }
        let mut terms = BTreeMap::new();
        terms.insert(e.iter().map(|x| -x).collect(), c.recip());
        Some(LaurentPoly {
            vars: self.vars.clone(),
            terms,
        })
    }

    /// Integer power, negative exponents allowed for monomials only.
    pub fn powi(&self, k: i32) -> Result<Self> {
        if k >= 0 {
            return Ok(self.pow(k as u32));
        }
        let inv = self
            .monomial_inverse()
            .ok_or_else(|| Error::Domain("negative power of a non-unit".into()))?;
        Ok(inv.pow((-k) as u32))
    }

    /// Formal partial derivative.
    pub fn derivative(&self, name: &str) -> Self {
        let Some(i) = self.var_index(name) else {
            return Self::zero();
        };
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut ne = e.clone();
            ne[i] -= 1;
            terms.insert(ne, c * Rational::from_integer(BigInt::from(e[i])));
        }
        LaurentPoly {
            vars: self.vars.clone(),
            terms,
        }
        .normalized()
    }

    /// Replace `name` by `value`; negative powers need a unit replacement.
    pub fn substitute(&self, name: &str, value: &LaurentPoly) -> Result<Self> {
        let Some(i) = self.var_index(name) else {
            return Ok(self.clone());
        };
        let mut cache: HashMap<i32, LaurentPoly> = HashMap::new();
        let mut acc = Self::zero();
        for (e, c) in &self.terms {
            let k = e[i];
            let p = match cache.get(&k) {
                Some(p) => p.clone(),
                None => {
                    let p = value.powi(k)?;
                    cache.insert(k, p.clone());
                    p
                }
            };
            let mut rest = e.clone();
            rest[i] = 0;
            let mono = LaurentPoly {
                vars: self.vars.clone(),
                terms: std::iter::once((rest, c.clone())).collect(),
            }
            .normalized();
            acc = acc + mono.product(&p);
        }
        Ok(acc)
    }

    /// Specialize one variable to a rational constant.
    pub fn specialize(&self, name: &str, value: &Rational) -> Result<Self> {
        if value.is_zero() && self.min_exponent(name) < 0 {
            return Err(Error::Domain(format!(
                "cannot set {name} = 0 in a polynomial with negative powers of {name}"
            )));
        }
        self.substitute(name, &LaurentPoly::constant(value.clone()))
    }

    /// Numeric evaluation; every variable must be assigned.
    pub fn eval(&self, values: &HashMap<String, Complex64>) -> Result<Complex64> {
        let xs: Vec<Complex64> = self
            .vars
            .iter()
            .map(|v| {
                values
                    .get(v)
                    .copied()
                    .ok_or_else(|| Error::InvalidArgument(format!("no value for variable {v}")))
            })
            .collect::<Result<_>>()?;
        let mut acc = Complex64::new(0.0, 0.0);
        for (e, c) in &self.terms {
            let mut t = Complex64::new(rational_to_f64(c), 0.0);
            for (x, &k) in xs.iter().zip(e) {
                if k < 0 && *x == Complex64::new(0.0, 0.0) {
                    return Err(Error::Evaluation("negative power of zero".into()));
                }
                t *= x.powi(k);
            }
            acc += t;
        }
        if !acc.re.is_finite() || !acc.im.is_finite() {
            return Err(Error::Evaluation("non-finite value".into()));
        }
        Ok(acc)
    }
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

impl Zero for LaurentPoly {
    fn zero() -> Self {
        LaurentPoly::default()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for LaurentPoly {
    fn one() -> Self {
        LaurentPoly::from_int(1)
    }
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.combine(rhs, 1)
    }
}

impl Add<&LaurentPoly> for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.combine(rhs, 1)
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        self.combine(&rhs, 1)
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.combine(rhs, -1)
    }
}

impl Sub<&LaurentPoly> for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.combine(rhs, -1)
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        self.combine(&rhs, -1)
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.product(rhs)
    }
}

impl Mul<&LaurentPoly> for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.product(rhs)
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        self.product(&rhs)
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(mut self) -> LaurentPoly {
        for c in self.terms.values_mut() {
            *c = -c.clone();
        }
        self
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        LaurentPoly::from_int(c)
    }
}

impl From<Rational> for LaurentPoly {
    fn from(c: Rational) -> Self {
        LaurentPoly::constant(c)
    }
}

/// Canonical rendering: terms in descending exponent order (lexicographic in
/// the sorted variable list), coefficients as reduced fractions, explicit
/// `+`/`-` separators and `^` for exponents other than one.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let abs = c.abs();
            let mut factors: Vec<String> = Vec::new();
            let is_unit = abs.is_one();
            if !is_unit || e.iter().all(|x| *x == 0) {
                factors.push(abs.to_string());
            }
            for (v, &x) in self.vars.iter().zip(e) {
                match x {
                    0 => {}
                    1 => factors.push(v.clone()),
                    _ => factors.push(format!("{v}^{x}")),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> LaurentPoly {
        LaurentPoly::var("z")
    }

    #[test]
    fn shift_by_variable() {
        let zinv = LaurentPoly::monomial(rat(1, 1), &[("z", -1)]);
        let p = (z() + &zinv) * z();
        assert_eq!(p, z().pow(2) + LaurentPoly::one());
        assert_eq!(p.to_string(), "z^2 + 1");
    }

    #[test]
    fn cancellation_drops_variables() {
        let u = LaurentPoly::var("u");
        let q = LaurentPoly::var("q");
        let p = (u.pow(2) - &q) + q;
        assert_eq!(p, u.pow(2));
        assert_eq!(p.vars(), ["u".to_string()]);
        let zero = &u - &u;
        assert!(zero.is_zero());
        assert_eq!(zero, LaurentPoly::zero());
    }

    #[test]
    fn distinct_variables_stay_distinct() {
        let t = LaurentPoly::var("t");
        let a = LaurentPoly::var("a");
        let p = &t - &LaurentPoly::one();
        assert_eq!(p.coefficient(&[("a", 1)]), Rational::zero());
        assert_ne!(p, &a * &LaurentPoly::var("b"));
        assert_eq!((p * &a).num_terms(), 2);
    }

    #[test]
    fn rendering_signs_and_fractions() {
        let p = LaurentPoly::monomial(rat(-1, 2), &[("x", 1), ("y", -1)]) + LaurentPoly::from_int(3);
        assert_eq!(p.to_string(), "-1/2*x*y^-1 + 3");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        assert_eq!((-LaurentPoly::var("q")).to_string(), "-q");
    }

    #[test]
    fn derivative_and_substitution() {
        let s = LaurentPoly::var("s");
        let sinv = s.monomial_inverse().unwrap();
        let p = &s + &sinv;
        assert_eq!(p.derivative("s"), LaurentPoly::one() - sinv.pow(2));
        let q = LaurentPoly::var("q");
        let sub = p.substitute("s", &q.pow(2)).unwrap();
        assert_eq!(sub, q.pow(2) + q.monomial_inverse().unwrap().pow(2));
        assert!(p.substitute("s", &(LaurentPoly::one() + &q)).is_err());
    }

    #[test]
    fn specialize_rejects_pole_at_zero() {
        let p = LaurentPoly::monomial(rat(1, 1), &[("q", -1)]);
        assert!(p.specialize("q", &Rational::zero()).is_err());
        let r = (LaurentPoly::var("q") + LaurentPoly::var("x")).specialize("q", &Rational::zero());
        assert_eq!(r.unwrap(), LaurentPoly::var("x"));
    }

    #[test]
    fn eval_requires_all_variables() {
        let p = LaurentPoly::var("q") * LaurentPoly::var("x");
        let mut vals = HashMap::new();
        vals.insert("q".to_string(), Complex64::new(2.0, 0.0));
        assert!(p.eval(&vals).is_err());
        vals.insert("x".to_string(), Complex64::new(0.0, 1.0));
        assert_eq!(p.eval(&vals).unwrap(), Complex64::new(0.0, 2.0));
    }
}
