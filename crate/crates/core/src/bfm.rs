//! Rank-one BFM spaces in coordinates `(ξ, z) ∈ ℂ × ℂ^×`.
//!
//! The PSL2 side is the blow-up of `ℂ × ℂ^× / {±1}` at `(0, 1)` with the proper
//! transform of the zero section removed; `(ξ, z) ~ (−ξ, z⁻¹)`. The SL2 side is
//! its double cover, blown up over both central points `z = ±1`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::{rat, LaurentPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Form {
    Psl2Side,
    Sl2Side,
}

impl Form {
    /// Central points of the torus, i.e. the blow-up centers.
    pub fn centers(self) -> Vec<Complex64> {
        match self {
            Form::Psl2Side => vec![Complex64::new(1.0, 0.0)],
            Form::Sl2Side => vec![Complex64::new(1.0, 0.0), Complex64::new(-1.0, 0.0)],
        }
    }
}

impl FromStr for Form {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "psl2" | "psl2-side" => Ok(Form::Psl2Side),
            "sl2" | "sl2-side" => Ok(Form::Sl2Side),
            _ => Err(Error::InvalidArgument(format!("unknown form '{s}'"))),
        }
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Form::Psl2Side => "psl2-side",
            Form::Sl2Side => "sl2-side",
        })
    }
}

fn finite(z: Complex64) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

/// True on the removed proper transform of the zero section: `ξ = 0` over a
/// non-central `z`.
pub fn is_removed_locus(xi: Complex64, z: Complex64, form: Form) -> bool {
    xi == Complex64::new(0.0, 0.0) && !form.centers().contains(&z)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BfmPointRank1 {
    pub xi: Complex64,
    pub z: Complex64,
    pub form: Form,
}

impl BfmPointRank1 {
    pub fn new(xi: Complex64, z: Complex64, form: Form) -> Result<Self> {
        if !finite(xi) || !finite(z) {
            return Err(Error::InvalidArgument("non-finite coordinates".into()));
        }
        if z == Complex64::new(0.0, 0.0) {
            return Err(Error::Domain("z must be nonzero".into()));
        }
        if is_removed_locus(xi, z, form) {
            return Err(Error::Domain(format!("({xi}, {z}) lies on the removed zero section")));
        }
        Ok(BfmPointRank1 { xi, z, form })
    }

    /// Fixed representative of the `±1` class on the PSL2 side: `Re ξ > 0`, then
    /// `Im ξ > 0`, then the lexicographically larger `z`. SL2-side points are returned as is.
    pub fn canonical(&self) -> Self {
        if self.form == Form::Sl2Side {
            return *self;
        }
        let other = BfmPointRank1 {
            xi: -self.xi,
            z: self.z.inv(),
            form: self.form,
        };
        let key = |p: &BfmPointRank1| (p.xi.re, p.xi.im, p.z.re, p.z.im);
        let (a, b) = (key(self), key(&other));
        let pick_self = if a.0 != b.0 {
            a.0 > b.0
        } else if a.1 != b.1 {
            a.1 > b.1
        } else if a.2 != b.2 {
            a.2 > b.2
        } else {
            a.3 >= b.3
        };
        if pick_self {
            *self
        } else {
            other
        }
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        let (a, b) = (self.canonical(), other.canonical());
        a.form == b.form && (a.xi - b.xi).norm() <= tol && (a.z - b.z).norm() <= tol
    }
}

/// Chart at a blow-up center `c`: `(ξ, b)` with `z = c + ξ b`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BlowupChartPoint {
    pub xi: Complex64,
    pub b: Complex64,
    pub center: Complex64,
}

impl BlowupChartPoint {
    pub fn from_point(p: &BfmPointRank1, center: Complex64) -> Result<Self> {
        if !p.form.centers().contains(&center) {
            return Err(Error::InvalidArgument(format!("{center} is not a blow-up center")));
        }
        if p.xi == Complex64::new(0.0, 0.0) {
            return Err(Error::Domain(
                "the exceptional direction is not determined by (0, z)".into(),
            ));
        }
        Ok(BlowupChartPoint {
            xi: p.xi,
            b: (p.z - center) / p.xi,
            center,
        })
    }

    pub fn to_point(&self, form: Form) -> Result<BfmPointRank1> {
        BfmPointRank1::new(self.xi, self.center + self.xi * self.b, form)
    }

    pub fn is_exceptional(&self) -> bool {
        self.xi == Complex64::new(0.0, 0.0)
    }
}

/// Image of `(u, q)` under the Toda inclusion.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TodaEmbedding {
    /// `ξ² = u² − q`
    pub casimir: Complex64,
    /// `(z + z⁻¹)/4 = u²/q − 1/2`
    pub classfn: Complex64,
    /// Sign-matched representative `ξ = √(u² − q)`, `z = (u − ξ)²/q`.
    pub xi: Complex64,
    pub z: Complex64,
    /// Chart coordinate at the center `z = 1`: `b = 2(ξ − u)/q`, regular at `ξ = 0`.
    pub chart: BlowupChartPoint,
}

pub fn toda_embed_rank1(u: Complex64, q: Complex64) -> Result<TodaEmbedding> {
    if q == Complex64::new(0.0, 0.0) {
        return Err(Error::Domain("q must be nonzero".into()));
    }
    if !finite(u) || !finite(q) {
        return Err(Error::InvalidArgument("non-finite input".into()));
    }
    let casimir = u * u - q;
    let classfn = u * u / q - 0.5;
    let xi = casimir.sqrt();
    let z = (u - xi) * (u - xi) / q;
    Ok(TodaEmbedding {
        casimir,
        classfn,
        xi,
        z,
        chart: BlowupChartPoint {
            xi,
            b: 2.0 * (xi - u) / q,
            center: Complex64::new(1.0, 0.0),
        },
    })
}

impl TodaEmbedding {
    pub fn point(&self) -> Result<BfmPointRank1> {
        if self.xi == Complex64::new(0.0, 0.0) {
            // the exceptional point over the center; carried by the chart
            return Ok(BfmPointRank1 {
                xi: self.xi,
                z: Complex64::new(1.0, 0.0),
                form: Form::Psl2Side,
            });
        }
        BfmPointRank1::new(self.xi, self.z, Form::Psl2Side)
    }
}

/// Point `(ξ = q(s − s⁻¹)/2, z = s²)` of the leaf `Λ(q)`.
pub fn leaf_rank1(q: Complex64, s: Complex64) -> Result<BfmPointRank1> {
    if s == Complex64::new(0.0, 0.0) {
        return Err(Error::Domain("s must be nonzero".into()));
    }
    let xi = q * (s - s.inv()) / 2.0;
    let z = s * s;
    if xi == Complex64::new(0.0, 0.0) {
        // s = ±1: the leaf passes through the exceptional divisor
        return Ok(BfmPointRank1 {
            xi,
            z,
            form: Form::Psl2Side,
        });
    }
    BfmPointRank1::new(xi, z, Form::Psl2Side)
}

/// Leaf section `ξ(s) = q(s − s⁻¹)/2` as a Laurent polynomial in `q, s`.
pub fn leaf_section_symbolic() -> LaurentPoly {
    let q = LaurentPoly::var("q");
    let s = LaurentPoly::var("s");
    let s_inv = LaurentPoly::monomial(rat(1, 1), &[("s", -1)]);
    (q * (s - s_inv)).scale(&rat(1, 2))
}

/// `W = q(s + s⁻¹)/2`, whose `s ∂_s`-derivative should be the leaf section.
pub fn leaf_potential_symbolic() -> LaurentPoly {
    let q = LaurentPoly::var("q");
    let s = LaurentPoly::var("s");
    let s_inv = LaurentPoly::monomial(rat(1, 1), &[("s", -1)]);
    (q * (s + s_inv)).scale(&rat(1, 2))
}

/// Exact check that the leaf is the graph of `dW` in `(log s, ξ)` coordinates.
pub fn leaf_is_graph_of_dw() -> bool {
    let w = leaf_potential_symbolic();
    LaurentPoly::var("s") * w.derivative("s") == leaf_section_symbolic()
}

pub fn eval_leaf_section(q: Complex64, s: Complex64) -> Result<Complex64> {
    let vals: HashMap<String, Complex64> = [("q".to_string(), q), ("s".to_string(), s)].into();
    leaf_section_symbolic().eval(&vals)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CuspidalLeaf {
    /// Central torus point the leaf sits over.
    pub center: Complex64,
    pub description: String,
}

pub fn cuspidal_leaves_rank1(form: Form) -> Vec<CuspidalLeaf> {
    form.centers()
        .into_iter()
        .map(|c| CuspidalLeaf {
            center: c,
            description: if c.re > 0.0 {
                "proper transform of the cotangent fiber at z = 1".to_string()
            } else {
                "proper transform of the cotangent fiber at z = -1".to_string()
            },
        })
        .collect()
}

pub fn is_cuspidal(p: &BfmPointRank1, tol: f64) -> bool {
    p.xi.norm() > tol && p.form.centers().iter().any(|c| (p.z - c).norm() <= tol)
}

/// Leaf through a non-cuspidal point. The two lifts `(q, s)` and `(−q, −s)`
/// describe the same leaf; the representative with `Re q > 0` (then `Im q > 0`) is returned.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LeafSolution {
    pub q: Complex64,
    pub s: Complex64,
}

pub fn solve_leaf(p: &BfmPointRank1, tol: f64) -> Result<LeafSolution> {
    if is_cuspidal(p, tol) {
        return Err(Error::Domain("point lies on a cuspidal leaf".into()));
    }
    if p.xi.norm() <= tol {
        return Err(Error::Domain(
            "leaf parameter undetermined on the exceptional divisor".into(),
        ));
    }
    let s = p.z.sqrt();
    let q = 2.0 * s * p.xi / (p.z - 1.0);
    let flip = q.re < 0.0 || (q.re == 0.0 && q.im < 0.0);
    Ok(if flip {
        LeafSolution { q: -q, s: -s }
    } else {
        LeafSolution { q, s }
    })
}

/// `|det J − 1|` for the Jacobian of `(a, b) ↦ (ξ, log z)` at `(a, b)`, where the
/// source carries `da ∧ db`. Central differences with one Richardson step; each
/// sampled image is moved to the `±1` representative nearest the base image so
/// that branch cuts of the map do not leak into the derivative.
pub fn symplectic_residual<M>(map: M, a: Complex64, b: Complex64, h: f64) -> Result<f64>
where
    M: Fn(Complex64, Complex64) -> Result<(Complex64, Complex64)>,
{
    if !(h > 0.0 && h <= 1e-2) {
        return Err(Error::InvalidArgument(format!("step {h} outside (0, 1e-2]")));
    }
    let (xi0, z0) = map(a, b)?;
    if is_removed_locus(xi0, z0, Form::Psl2Side) || z0 == Complex64::new(0.0, 0.0) {
        return Err(Error::Domain("map evaluated on the removed locus".into()));
    }
    let sample = |da: f64, db: f64| -> Result<(Complex64, Complex64)> {
        let (xi, z) = map(a + da, b + db)?;
        if z == Complex64::new(0.0, 0.0) {
            return Err(Error::Domain("z vanished".into()));
        }
        let direct = (xi - xi0).norm() + (z - z0).norm();
        let flipped = (-xi - xi0).norm() + (z.inv() - z0).norm();
        let (xi, z) = if flipped < direct { (-xi, z.inv()) } else { (xi, z) };
        Ok((xi - xi0, (z / z0).ln()))
    };
    let deriv = |along_a: bool| -> Result<(Complex64, Complex64)> {
        let d = |step: f64| -> Result<(Complex64, Complex64)> {
            let (da, db) = if along_a { (step, 0.0) } else { (0.0, step) };
            let (xp, lp) = sample(da, db)?;
            let (xm, lm) = sample(-da, -db)?;
            Ok(((xp - xm) / (2.0 * step), (lp - lm) / (2.0 * step)))
        };
        let (x1, l1) = d(h)?;
        let (x2, l2) = d(h / 2.0)?;
        Ok(((4.0 * x2 - x1) / 3.0, (4.0 * l2 - l1) / 3.0))
    };
    let (xi_a, lz_a) = deriv(true)?;
    let (xi_b, lz_b) = deriv(false)?;
    let det = xi_a * lz_b - xi_b * lz_a;
    if !finite(det) {
        return Err(Error::Evaluation("non-finite Jacobian".into()));
    }
    Ok((det - 1.0).norm())
}

/// The Toda inclusion in the source coordinates `(u, log q)`.
pub fn toda_map(u: Complex64, log_q: Complex64) -> Result<(Complex64, Complex64)> {
    let e = toda_embed_rank1(u, log_q.exp())?;
    Ok((e.xi, e.z))
}
