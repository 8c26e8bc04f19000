use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::{ExactMatrix, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    G,
}

/// Cartan type label such as `A2` or `B2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct CartanType {
    pub family: Family,
    pub rank: usize,
}

impl CartanType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => (1..=4).contains(&rank),
            Family::B | Family::C => rank == 2,
            Family::G => rank == 2,
        };
        if ok {
            Ok(CartanType { family, rank })
        } else {
            Err(Error::UnsupportedType(format!("{family:?}{rank}")))
        }
    }

    /// The type of the Langlands dual root system.
    pub fn dual(self) -> Self {
        let family = match self.family {
            Family::B => Family::C,
            Family::C => Family::B,
            f => f,
        };
        CartanType {
            family,
            rank: self.rank,
        }
    }

    /// Cartan matrix in Bourbaki numbering, `A[i][j] = <α_j, α_i^∨>`.
    pub fn cartan_matrix(self) -> Vec<Vec<i64>> {
        let n = self.rank;
        match self.family {
            Family::A => (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| match i.abs_diff(j) {
                            0 => 2,
                            1 => -1,
                            _ => 0,
                        })
                        .collect()
                })
                .collect(),
            // α1 long, α2 short
            Family::B => vec![vec![2, -1], vec![-2, 2]],
            // α1 short, α2 long
            Family::C => vec![vec![2, -2], vec![-1, 2]],
            // α1 short, α2 long
            Family::G => vec![vec![2, -3], vec![-1, 2]],
        }
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.rank)
    }
}

impl FromStr for CartanType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::UnsupportedType(s.to_string());
        let mut chars = s.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            Some('G') => Family::G,
            _ => return Err(bad()),
        };
        let rank: usize = chars.as_str().parse().map_err(|_| bad())?;
        CartanType::new(family, rank)
    }
}

impl From<CartanType> for String {
    fn from(t: CartanType) -> String {
        t.to_string()
    }
}

impl TryFrom<String> for CartanType {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

/// Which character lattice the datum carries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LatticeChoice {
    /// Character lattice = weight lattice; ambient basis = fundamental weights.
    SimplyConnected,
    /// Character lattice = root lattice; ambient basis = simple roots.
    Adjoint,
}

impl LatticeChoice {
    pub fn dual(self) -> Self {
        match self {
            LatticeChoice::SimplyConnected => LatticeChoice::Adjoint,
            LatticeChoice::Adjoint => LatticeChoice::SimplyConnected,
        }
    }
}

impl FromStr for LatticeChoice {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "simply-connected" | "sc" | "simply_connected" => Ok(LatticeChoice::SimplyConnected),
            "adjoint" | "ad" => Ok(LatticeChoice::Adjoint),
            _ => Err(Error::InvalidArgument(format!("unknown lattice choice '{s}'"))),
        }
    }
}

impl fmt::Display for LatticeChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LatticeChoice::SimplyConnected => "simply-connected",
            LatticeChoice::Adjoint => "adjoint",
        })
    }
}

/// A reduced root datum of semisimple rank ≤ 4.
///
/// Simple roots are integer vectors in a fixed basis of the character lattice
/// and simple coroots live in the dual basis, so the pairing is the plain dot
/// product. The lattice is never inferred: it is always carried explicitly.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RootDatum {
    pub type_label: CartanType,
    pub lattice: LatticeChoice,
    pub simple_roots: Vec<Vec<i64>>,
    pub simple_coroots: Vec<Vec<i64>>,
    pub cartan_matrix: Vec<Vec<i64>>,
}

pub fn build_root_datum(type_label: CartanType, lattice: LatticeChoice) -> Result<RootDatum> {
    let a = type_label.cartan_matrix();
    let n = type_label.rank;
    let unit = |i: usize| -> Vec<i64> { (0..n).map(|k| i64::from(k == i)).collect() };
    let (simple_roots, simple_coroots) = match lattice {
        // α_j = Σ_i A[i][j] ϖ_i, α_i^∨ = e_i
        LatticeChoice::SimplyConnected => (
            (0..n).map(|j| (0..n).map(|i| a[i][j]).collect()).collect(),
            (0..n).map(unit).collect(),
        ),
        // α_j = e_j, α_i^∨ = row i of A
        LatticeChoice::Adjoint => ((0..n).map(unit).collect(), a.clone()),
    };
    let d = RootDatum {
        type_label,
        lattice,
        simple_roots,
        simple_coroots,
        cartan_matrix: a,
    };
    d.validate()?;
    Ok(d)
}

pub fn langlands_dual(d: &RootDatum) -> RootDatum {
    let n = d.rank();
    RootDatum {
        type_label: d.type_label.dual(),
        lattice: d.lattice.dual(),
        simple_roots: d.simple_coroots.clone(),
        simple_coroots: d.simple_roots.clone(),
        cartan_matrix: (0..n)
            .map(|i| (0..n).map(|j| d.cartan_matrix[j][i]).collect())
            .collect(),
    }
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

impl RootDatum {
    pub fn rank(&self) -> usize {
        self.cartan_matrix.len()
    }

    /// `<x, α_i^∨>` for an ambient lattice vector `x`.
    pub fn pair_with_coroot(&self, x: &[i64], i: usize) -> i64 {
        dot(x, &self.simple_coroots[i])
    }

    pub fn cartan(&self) -> ExactMatrix<Rational> {
        let n = self.rank();
        ExactMatrix::from_fn(n, n, |i, j| Rational::from_integer(self.cartan_matrix[i][j].into()))
    }

    /// Check every structural invariant of the datum.
    pub fn validate(&self) -> Result<()> {
        let n = self.rank();
        let bad = |m: &str| Err(Error::InvalidArgument(format!("invalid root datum: {m}")));
        if self.simple_roots.len() != n || self.simple_coroots.len() != n {
            return bad("root/coroot count differs from rank");
        }
        if self
            .simple_roots
            .iter()
            .chain(&self.simple_coroots)
            .any(|v| v.len() != n)
        {
            return bad("ambient dimension differs from rank");
        }
        for i in 0..n {
            if self.cartan_matrix[i].len() != n {
                return bad("cartan matrix not square");
            }
            for j in 0..n {
                let a = self.cartan_matrix[i][j];
                if i == j && a != 2 {
                    return bad("cartan diagonal must be 2");
                }
                if i != j && (a > 0 || (a == 0) != (self.cartan_matrix[j][i] == 0)) {
                    return bad("cartan off-diagonal entries");
                }
                if dot(&self.simple_roots[j], &self.simple_coroots[i]) != a {
                    return bad("pairing of roots with coroots disagrees with cartan matrix");
                }
            }
        }
        // root lattice ⊆ X ⊆ weight lattice: simple roots are integral in the X
        // basis, and the basis of X pairs integrally with every coroot because
        // coroots are integer vectors. Independence makes the sandwich strict.
        let roots = ExactMatrix::from_fn(n, n, |i, j| Rational::from_integer(self.simple_roots[i][j].into()));
        if roots.rank() != n {
            return bad("simple roots are linearly dependent");
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> CartanType {
        s.parse().unwrap()
    }

    #[test]
    fn su2_and_psu2() {
        let sc = build_root_datum(t("A1"), LatticeChoice::SimplyConnected).unwrap();
        // α = 2ϖ, so the weight lattice is generated by α/2
        assert_eq!(sc.simple_roots, vec![vec![2]]);
        assert_eq!(sc.simple_coroots, vec![vec![1]]);
        let ad = build_root_datum(t("A1"), LatticeChoice::Adjoint).unwrap();
        assert_eq!(ad.simple_roots, vec![vec![1]]);
        assert_eq!(ad.simple_coroots, vec![vec![2]]);
        assert_eq!(langlands_dual(&sc), ad);
    }

    #[test]
    fn b2_cartan_convention() {
        let b2 = build_root_datum(t("B2"), LatticeChoice::SimplyConnected).unwrap();
        assert_eq!(b2.cartan_matrix, vec![vec![2, -1], vec![-2, 2]]);
        let dual = langlands_dual(&b2);
        assert_eq!(dual.type_label, t("C2"));
        assert_eq!(dual.lattice, LatticeChoice::Adjoint);
        assert_eq!(dual, build_root_datum(t("C2"), LatticeChoice::Adjoint).unwrap());
    }

    #[test]
    fn unsupported_types() {
        assert!(matches!("E8".parse::<CartanType>(), Err(Error::UnsupportedType(_))));
        assert!("A5".parse::<CartanType>().is_err());
        assert!("B3".parse::<CartanType>().is_err());
        assert!("A0".parse::<CartanType>().is_err());
    }

    #[test]
    fn json_shape() {
        let d = build_root_datum(t("A2"), LatticeChoice::Adjoint).unwrap();
        let v = serde_json::to_value(&d).unwrap();
        assert_eq!(v["type_label"], "A2");
        assert_eq!(v["lattice"], "adjoint");
        assert_eq!(v["cartan_matrix"][0][1], -1);
        let back: RootDatum = serde_json::from_value(v).unwrap();
        assert_eq!(back, d);
    }
}
