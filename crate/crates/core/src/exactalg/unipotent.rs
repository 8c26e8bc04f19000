//! Logarithms of unitriangular matrices and the regular character.

use num_complex::Complex64;
use num_traits::One;

use super::laurent::{rat, Rational};
use super::matrix::{ExactMatrix, RationalAlgebra, RingElem};
use super::numeric::NumericMatrix;
use crate::error::{Error, Result};

/// Which triangle a unipotent (or nilpotent) matrix lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Triangle {
    Upper,
    Lower,
}

fn unitriangular_side<T: RingElem>(n: &ExactMatrix<T>) -> Option<Triangle> {
    if n.is_upper_unitriangular() {
        Some(Triangle::Upper)
    } else if n.is_lower_unitriangular() {
        Some(Triangle::Lower)
    } else {
        None
    }
}

/// `log n = Σ_{k≥1} (-1)^{k+1} (n - I)^k / k`, a finite sum for unitriangular `n`.
pub fn unipotent_log<T: RationalAlgebra>(n: &ExactMatrix<T>) -> Result<ExactMatrix<T>> {
    if unitriangular_side(n).is_none() {
        return Err(Error::Domain("log requires a unitriangular matrix".into()));
    }
    let dim = n.rows();
    let nil = n.sub(&ExactMatrix::identity(dim))?;
    let mut power = nil.clone();
    let mut acc = ExactMatrix::zeros(dim, dim);
    for k in 1..dim.max(1) {
        let c = rat(if k % 2 == 1 { 1 } else { -1 }, k as i64);
        acc = acc.add(&power.map(|x| x.scale_rational(&c)))?;
        power = power.matmul(&nil)?;
    }
    Ok(acc)
}

/// `exp x = Σ x^k / k!` for strictly triangular `x`.
pub fn nilpotent_exp<T: RationalAlgebra>(x: &ExactMatrix<T>) -> Result<ExactMatrix<T>> {
    if !(x.is_strictly_upper() || x.is_strictly_lower()) {
        return Err(Error::Domain("exp requires a strictly triangular matrix".into()));
    }
    let dim = x.rows();
    let mut acc = ExactMatrix::identity(dim);
    let mut power = ExactMatrix::identity(dim);
    let mut fact = Rational::one();
    for k in 1..dim.max(1) {
        power = power.matmul(x)?;
        fact *= rat(k as i64, 1);
        acc = acc.add(&power.map(|v| v.scale_rational(&fact.recip())))?;
    }
    Ok(acc)
}

/// The regular character: sum of the entries next to the diagonal of a
/// strictly triangular matrix (superdiagonal for upper, subdiagonal for lower).
pub fn char_chi<T: RingElem>(x: &ExactMatrix<T>) -> Result<T> {
    let side = if x.is_strictly_upper() {
        Triangle::Upper
    } else if x.is_strictly_lower() {
        Triangle::Lower
    } else {
        return Err(Error::Domain("χ is defined on strictly triangular matrices".into()));
    };
    let n = x.rows();
    Ok((0..n.saturating_sub(1)).fold(T::zero(), |acc, i| match side {
        Triangle::Upper => acc + &x[(i, i + 1)],
        Triangle::Lower => acc + &x[(i + 1, i)],
    }))
}

fn numeric_side(n: &NumericMatrix, tol: f64) -> Option<Triangle> {
    if !n.is_square() {
        return None;
    }
    let d = n.nrows();
    let diag_ok = (0..d).all(|i| (n[(i, i)] - Complex64::new(1.0, 0.0)).norm() <= tol);
    let upper = (0..d).all(|i| (0..i).all(|j| n[(i, j)].norm() <= tol));
    let lower = (0..d).all(|i| (i + 1..d).all(|j| n[(i, j)].norm() <= tol));
    match (diag_ok, upper, lower) {
        (true, true, _) => Some(Triangle::Upper),
        (true, false, true) => Some(Triangle::Lower),
        _ => None,
    }
}

/// Floating-point counterpart of [`unipotent_log`]; the triangle test uses `1e-12`.
pub fn unipotent_log_numeric(n: &NumericMatrix) -> Result<NumericMatrix> {
    if numeric_side(n, 1e-12).is_none() {
        return Err(Error::Domain("log requires a unitriangular matrix".into()));
    }
    let dim = n.nrows();
    let nil = n - NumericMatrix::identity(dim, dim);
    let mut power = nil.clone();
    let mut acc = NumericMatrix::zeros(dim, dim);
    for k in 1..dim.max(1) {
        let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
        acc += &power * Complex64::new(sign / k as f64, 0.0);
        power = &power * &nil;
    }
    Ok(acc)
}

/// `χ(log n)` for a numeric unitriangular matrix. Higher powers of `n - I`
/// vanish next to the diagonal, so this is the adjacent-diagonal sum of `n - I`.
pub fn chi_of_log_numeric(n: &NumericMatrix) -> Result<Complex64> {
    let side = numeric_side(n, 1e-12).ok_or_else(|| Error::Domain("χ∘log requires a unitriangular matrix".into()))?;
    let d = n.nrows();
    Ok((0..d.saturating_sub(1))
        .map(|i| match side {
            Triangle::Upper => n[(i, i + 1)],
            Triangle::Lower => n[(i + 1, i)],
        })
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::laurent::LaurentPoly;
    use num_traits::Zero;

    fn q(rows: &[&[i64]]) -> ExactMatrix<Rational> {
        ExactMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| rat(x, 1)).collect()).collect()).unwrap()
    }

    #[test]
    fn log_two_by_two_symbolic() {
        let c = LaurentPoly::var("c");
        let n = ExactMatrix::from_rows(vec![
            vec![LaurentPoly::one(), c.clone()],
            vec![LaurentPoly::zero(), LaurentPoly::one()],
        ])
        .unwrap();
        let l = unipotent_log(&n).unwrap();
        assert_eq!(l[(0, 1)], c);
        assert!(l[(0, 0)].is_zero() && l[(1, 1)].is_zero() && l[(1, 0)].is_zero());
    }

    #[test]
    fn log_three_by_three_corner() {
        // (n-I)^2 has a single entry 1 in the corner, so log picks up -1/2 there.
        let n = q(&[&[1, 1, 0], &[0, 1, 1], &[0, 0, 1]]);
        let l = unipotent_log(&n).unwrap();
        assert_eq!(
            l,
            ExactMatrix::from_rows(vec![
                vec![rat(0, 1), rat(1, 1), rat(-1, 2)],
                vec![rat(0, 1), rat(0, 1), rat(1, 1)],
                vec![rat(0, 1), rat(0, 1), rat(0, 1)],
            ])
            .unwrap()
        );
    }

    #[test]
    fn log_identity_is_zero_and_exp_inverts() {
        assert!(unipotent_log(&ExactMatrix::<Rational>::identity(4))
            .unwrap()
            .is_zero_matrix());
        let n = q(&[&[1, 0, 0], &[3, 1, 0], &[-2, 5, 1]]);
        assert_eq!(nilpotent_exp(&unipotent_log(&n).unwrap()).unwrap(), n);
    }

    #[test]
    fn non_unitriangular_rejected() {
        assert!(unipotent_log(&q(&[&[2, 0], &[0, 1]])).is_err());
        assert!(unipotent_log(&q(&[&[1, 1], &[1, 1]])).is_err());
        assert!(char_chi(&q(&[&[1, 1], &[0, 0]])).is_err());
        let mut bad = NumericMatrix::identity(2, 2);
        bad[(1, 0)] = Complex64::new(1.0, 0.0);
        bad[(0, 1)] = Complex64::new(1.0, 0.0);
        assert!(unipotent_log_numeric(&bad).is_err());
    }

    #[test]
    fn chi_sums_adjacent_entries() {
        let a = LaurentPoly::var("a");
        let x = ExactMatrix::from_rows(vec![
            vec![LaurentPoly::zero(), a.clone()],
            vec![LaurentPoly::zero(), LaurentPoly::zero()],
        ])
        .unwrap();
        assert_eq!(char_chi(&x).unwrap(), a);
        let (p, r) = (LaurentPoly::var("p"), LaurentPoly::var("r"));
        let z = LaurentPoly::zero;
        let y = ExactMatrix::from_rows(vec![
            vec![z(), p.clone(), LaurentPoly::var("c")],
            vec![z(), z(), r.clone()],
            vec![z(), z(), z()],
        ])
        .unwrap();
        assert_eq!(char_chi(&y).unwrap(), p + r);
        assert_eq!(char_chi(&q(&[&[0, 0], &[7, 0]])).unwrap(), rat(7, 1));
    }

    #[test]
    fn numeric_log_matches_exact() {
        let n = q(&[&[1, 2, -1], &[0, 1, 3], &[0, 0, 1]]);
        let exact = unipotent_log(&n).unwrap();
        let num = NumericMatrix::from_fn(3, 3, |i, j| {
            Complex64::new(crate::exactalg::laurent::rational_to_f64(&n[(i, j)]), 0.0)
        });
        let l = unipotent_log_numeric(&num).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let e = crate::exactalg::laurent::rational_to_f64(&exact[(i, j)]);
                assert!((l[(i, j)].re - e).abs() < 1e-14);
            }
        }
        assert_eq!(chi_of_log_numeric(&num).unwrap(), Complex64::new(5.0, 0.0));
    }
}
