//! Second-order forward-mode jets over `Complex64`.

use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;

/// Field-like scalar the mirror chart is written against, so one code path
/// yields values (`Complex64`) and value/gradient/Hessian triples ([`Jet`]).
pub trait Scalar:
    Clone + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Div<Output = Self> + Neg<Output = Self>
{
    /// A constant with the same shape as `self`.
    fn lift(&self, c: Complex64) -> Self;
    fn value(&self) -> Complex64;
    fn ln(&self) -> Self;
    fn exp(&self) -> Self;
}

impl Scalar for Complex64 {
    fn lift(&self, c: Complex64) -> Self {
        c
    }
    fn value(&self) -> Complex64 {
        *self
    }
    fn ln(&self) -> Self {
        Complex64::ln(*self)
    }
    fn exp(&self) -> Self {
        Complex64::exp(*self)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Jet {
    pub v: Complex64,
    pub g: Vec<Complex64>,
    /// Row-major `dim × dim`.
    pub h: Vec<Complex64>,
}

impl Jet {
    pub fn constant(v: Complex64, dim: usize) -> Self {
        Jet {
            v,
            g: vec![Complex64::default(); dim],
            h: vec![Complex64::default(); dim * dim],
        }
    }

    /// The `i`-th coordinate function evaluated at `v`.
    pub fn variable(v: Complex64, i: usize, dim: usize) -> Self {
        let mut j = Jet::constant(v, dim);
        j.g[i] = Complex64::new(1.0, 0.0);
        j
    }

    pub fn seed(point: &[Complex64]) -> Vec<Jet> {
        let d = point.len();
        point.iter().enumerate().map(|(i, &v)| Jet::variable(v, i, d)).collect()
    }

    pub fn dim(&self) -> usize {
        self.g.len()
    }

    /// Compose with a scalar function given `φ(v), φ'(v), φ''(v)`.
    fn chain(&self, f0: Complex64, f1: Complex64, f2: Complex64) -> Jet {
        let d = self.dim();
        let mut h = vec![Complex64::default(); d * d];
        for i in 0..d {
            for k in 0..d {
                h[i * d + k] = f1 * self.h[i * d + k] + f2 * self.g[i] * self.g[k];
            }
        }
        Jet {
            v: f0,
            g: self.g.iter().map(|x| f1 * x).collect(),
            h,
        }
    }

    pub fn recip(&self) -> Jet {
        let r = self.v.inv();
        self.chain(r, -r * r, 2.0 * r * r * r)
    }
}

impl Add for Jet {
    type Output = Jet;
    fn add(self, o: Jet) -> Jet {
        Jet {
            v: self.v + o.v,
            g: self.g.iter().zip(&o.g).map(|(a, b)| a + b).collect(),
            h: self.h.iter().zip(&o.h).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(self, o: Jet) -> Jet {
        Jet {
            v: self.v - o.v,
            g: self.g.iter().zip(&o.g).map(|(a, b)| a - b).collect(),
            h: self.h.iter().zip(&o.h).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        Jet {
            v: -self.v,
            g: self.g.iter().map(|a| -a).collect(),
            h: self.h.iter().map(|a| -a).collect(),
        }
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, o: Jet) -> Jet {
        let d = self.dim();
        let mut h = vec![Complex64::default(); d * d];
        for i in 0..d {
            for k in 0..d {
                h[i * d + k] =
                    self.v * o.h[i * d + k] + o.v * self.h[i * d + k] + self.g[i] * o.g[k] + o.g[i] * self.g[k];
            }
        }
        Jet {
            v: self.v * o.v,
            g: self.g.iter().zip(&o.g).map(|(a, b)| self.v * b + o.v * a).collect(),
            h,
        }
    }
}

impl Div for Jet {
    type Output = Jet;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: Jet) -> Jet {
        self * o.recip()
    }
}

impl Scalar for Jet {
    fn lift(&self, c: Complex64) -> Self {
        Jet::constant(c, self.dim())
    }
    fn value(&self) -> Complex64 {
        self.v
    }
    fn ln(&self) -> Self {
        let r = self.v.inv();
        self.chain(self.v.ln(), r, -r * r)
    }
    fn exp(&self) -> Self {
        let e = self.v.exp();
        self.chain(e, e, e)
    }
}
