//! Open Toda chain of type `A_{n-1}` in Lax form, and the Kostant slice.

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::Zero;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactalg::{bottleneck_matching, eigenvalues, ExactMatrix, NumericMatrix, Rational};

/// Phase point `(x, p)` of the `n`-particle chain.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TodaPhasePoint {
    pub x: Vec<Complex64>,
    pub p: Vec<Complex64>,
}

impl TodaPhasePoint {
    pub fn new(x: Vec<Complex64>, p: Vec<Complex64>) -> Result<Self> {
        if x.len() != p.len() || x.is_empty() {
            return Err(Error::InvalidArgument("x and p must have equal nonzero length".into()));
        }
        Ok(TodaPhasePoint { x, p })
    }

    /// Complex Gaussian coordinates with standard deviation `scale` per real component.
    pub fn random<R: Rng + ?Sized>(n: usize, scale: f64, rng: &mut R) -> Self {
        let mut draw = || {
            Complex64::new(
                scale * rng.sample::<f64, _>(StandardNormal),
                scale * rng.sample::<f64, _>(StandardNormal),
            )
        };
        let x = (0..n).map(|_| draw()).collect();
        let p = (0..n).map(|_| draw()).collect();
        TodaPhasePoint { x, p }
    }

    pub fn dim(&self) -> usize {
        self.x.len()
    }

    /// `a_i = exp(x_i − x_{i+1})`.
    pub fn couplings(&self) -> Vec<Complex64> {
        self.x.windows(2).map(|w| (w[0] - w[1]).exp()).collect()
    }

    /// `L = E + b`: ones below the diagonal, `p` on it, `a` above it.
    pub fn lax(&self) -> NumericMatrix {
        let n = self.dim();
        let a = self.couplings();
        let mut l = DMatrix::zeros(n, n);
        for i in 0..n {
            l[(i, i)] = self.p[i];
            if i + 1 < n {
                l[(i + 1, i)] = Complex64::new(1.0, 0.0);
                l[(i, i + 1)] = a[i];
            }
        }
        l
    }

    fn is_finite(&self) -> bool {
        self.x
            .iter()
            .chain(&self.p)
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }

    fn axpy(&self, h: f64, dx: &[Complex64], dp: &[Complex64]) -> Self {
        TodaPhasePoint {
            x: self.x.iter().zip(dx).map(|(a, b)| a + b * h).collect(),
            p: self.p.iter().zip(dp).map(|(a, b)| a + b * h).collect(),
        }
    }
}

fn check_degree(k: usize, n: usize) -> Result<()> {
    if k == 0 || k > n {
        return Err(Error::InvalidArgument(format!(
            "Hamiltonian degree {k} outside 1..={n}"
        )));
    }
    Ok(())
}

/// `H_k = tr(L^k) / k`.
pub fn toda_hamiltonian(k: usize, pt: &TodaPhasePoint) -> Result<Complex64> {
    check_degree(k, pt.dim())?;
    let l = pt.lax();
    Ok(l.pow(k as u32).trace() / k as f64)
}

/// Analytic gradient `(∂H_k/∂x, ∂H_k/∂p)`.
pub fn hamiltonian_gradient(k: usize, pt: &TodaPhasePoint) -> Result<(Vec<Complex64>, Vec<Complex64>)> {
    check_degree(k, pt.dim())?;
    let n = pt.dim();
    let a = pt.couplings();
    let m = pt.lax().pow(k as u32 - 1);
    let dp = (0..n).map(|i| m[(i, i)]).collect();
    let dx = (0..n)
        .map(|i| {
            let mut g = Complex64::zero();
            if i + 1 < n {
                g += m[(i + 1, i)] * a[i];
            }
            if i > 0 {
                g -= m[(i, i - 1)] * a[i - 1];
            }
            g
        })
        .collect();
    Ok((dx, dp))
}

/// `{f, g} = Σ ∂f/∂x_i ∂g/∂p_i − ∂f/∂p_i ∂g/∂x_i` from central differences with
/// one Richardson step (`h` and `h/2`).
pub fn poisson_bracket<F, G>(f: F, g: G, pt: &TodaPhasePoint, h: f64) -> Result<Complex64>
where
    F: Fn(&TodaPhasePoint) -> Complex64,
    G: Fn(&TodaPhasePoint) -> Complex64,
{
    if !(1e-6..=1e-3).contains(&h) {
        return Err(Error::InvalidArgument(format!("step {h} outside [1e-6, 1e-3]")));
    }
    if !pt.is_finite() {
        return Err(Error::Evaluation("non-finite phase point".into()));
    }
    let n = pt.dim();
    let grad = |fun: &dyn Fn(&TodaPhasePoint) -> Complex64| -> Result<(Vec<Complex64>, Vec<Complex64>)> {
        let mut dx = Vec::with_capacity(n);
        let mut dp = Vec::with_capacity(n);
        for (is_p, out) in [(false, &mut dx), (true, &mut dp)] {
            for i in 0..n {
                let d = |step: f64| {
                    let mut plus = pt.clone();
                    let mut minus = pt.clone();
                    let (a, b) = if is_p {
                        (&mut plus.p, &mut minus.p)
                    } else {
                        (&mut plus.x, &mut minus.x)
                    };
                    a[i] += step;
                    b[i] -= step;
                    (fun(&plus) - fun(&minus)) / (2.0 * step)
                };
                let v = (4.0 * d(h / 2.0) - d(h)) / 3.0;
                if !(v.re.is_finite() && v.im.is_finite()) {
                    return Err(Error::Evaluation("non-finite derivative".into()));
                }
                out.push(v);
            }
        }
        Ok((dx, dp))
    };
    let (fx, fp) = grad(&f)?;
    let (gx, gp) = grad(&g)?;
    Ok((0..n).map(|i| fx[i] * gp[i] - fp[i] * gx[i]).sum())
}

/// Bracket of two Hamiltonians from the analytic gradients.
pub fn hamiltonian_bracket(j: usize, k: usize, pt: &TodaPhasePoint) -> Result<Complex64> {
    let (fx, fp) = hamiltonian_gradient(j, pt)?;
    let (gx, gp) = hamiltonian_gradient(k, pt)?;
    Ok((0..pt.dim()).map(|i| fx[i] * gp[i] - fp[i] * gx[i]).sum())
}

/// Flow of `H_k` for time `t` with fixed-step RK4 (`ẋ = ∂H/∂p`, `ṗ = −∂H/∂x`).
pub fn toda_flow(k: usize, pt: &TodaPhasePoint, t: f64, dt: f64) -> Result<TodaPhasePoint> {
    check_degree(k, pt.dim())?;
    if !(dt > 0.0) || !t.is_finite() {
        return Err(Error::InvalidArgument("flow needs dt > 0 and finite t".into()));
    }
    let steps = (t.abs() / dt).round() as usize;
    let h = if steps == 0 { 0.0 } else { t / steps as f64 };
    let field = |q: &TodaPhasePoint| -> Result<(Vec<Complex64>, Vec<Complex64>)> {
        let (gx, gp) = hamiltonian_gradient(k, q)?;
        Ok((gp, gx.into_iter().map(|v| -v).collect()))
    };
    let mut cur = pt.clone();
    for _ in 0..steps {
        let (k1x, k1p) = field(&cur)?;
        let (k2x, k2p) = field(&cur.axpy(h / 2.0, &k1x, &k1p))?;
        let (k3x, k3p) = field(&cur.axpy(h / 2.0, &k2x, &k2p))?;
        let (k4x, k4p) = field(&cur.axpy(h, &k3x, &k3p))?;
        let comb = |a: &[Complex64], b: &[Complex64], c: &[Complex64], d: &[Complex64]| -> Vec<Complex64> {
            (0..a.len())
                .map(|i| (a[i] + 2.0 * b[i] + 2.0 * c[i] + d[i]) / 6.0)
                .collect()
        };
        cur = cur.axpy(h, &comb(&k1x, &k2x, &k3x, &k4x), &comb(&k1p, &k2p, &k3p, &k4p));
        if !cur.is_finite() {
            return Err(Error::Evaluation("flow left the finite domain".into()));
        }
    }
    Ok(cur)
}

/// `π_v`: the invariant tuple `(H_2, …, H_n)`.
pub fn pi_v(pt: &TodaPhasePoint) -> Vec<Complex64> {
    (2..=pt.dim())
        .map(|k| toda_hamiltonian(k, pt).expect("degree in range"))
        .collect()
}

/// Bottleneck distance between Lax spectra of two phase points.
pub fn spectral_drift(a: &TodaPhasePoint, b: &TodaPhasePoint) -> Result<f64> {
    let ea = eigenvalues(&a.lax())?;
    let eb = eigenvalues(&b.lax())?;
    Ok(bottleneck_matching(&ea, &eb)?.max_distance)
}

/// Point of the Kostant slice with invariants `c_2, …, c_n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KostantSlicePoint {
    pub invariants: Vec<Rational>,
}

impl KostantSlicePoint {
    pub fn new(invariants: Vec<Rational>) -> Self {
        KostantSlicePoint { invariants }
    }

    pub fn dim(&self) -> usize {
        self.invariants.len() + 1
    }

    /// Companion form: ones below the diagonal and last column `(−c_n, …, −c_2, 0)`,
    /// whose characteristic polynomial is `λ^n + c_2 λ^{n−2} + … + c_n`.
    pub fn matrix(&self) -> ExactMatrix<Rational> {
        let n = self.dim();
        ExactMatrix::from_fn(n, n, |i, j| {
            if i == j + 1 {
                Rational::from_integer(1.into())
            } else if j == n - 1 && i + 1 < n {
                -self.invariants[n - 2 - i].clone()
            } else {
                Rational::zero()
            }
        })
    }

    /// Recover the invariants from the characteristic polynomial of `m`.
    pub fn from_matrix(m: &ExactMatrix<Rational>) -> Result<Self> {
        let cp = m.char_poly()?;
        if !cp[1].is_zero() {
            return Err(Error::Domain("slice matrices are traceless".into()));
        }
        Ok(KostantSlicePoint {
            invariants: cp[2..].to_vec(),
        })
    }

    /// Dimension of the centralizer in `gl_n`, i.e. the nullity of `ad`.
    pub fn centralizer_dim(&self) -> usize {
        let x = self.matrix();
        let n = x.rows();
        // ad_X(E_kl) = X E_kl − E_kl X, flattened row-major
        let ad = ExactMatrix::from_fn(n * n, n * n, |row, col| {
            let (i, j) = (row / n, row % n);
            let (k, l) = (col / n, col % n);
            let mut v = Rational::zero();
            if j == l {
                v += x[(i, k)].clone();
            }
            if i == k {
                v -= x[(l, j)].clone();
            }
            v
        });
        n * n - ad.rank()
    }

    pub fn is_regular(&self) -> bool {
        self.centralizer_dim() == self.dim()
    }
}
