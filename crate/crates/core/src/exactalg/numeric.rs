//! Complex double-precision matrices and spectral helpers.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type NumericMatrix = DMatrix<Complex64>;

pub fn is_finite(m: &NumericMatrix) -> bool {
    m.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

/// Eigenvalues of a small dense complex matrix via the complex Schur form.
pub fn eigenvalues(m: &NumericMatrix) -> Result<Vec<Complex64>> {
    if !m.is_square() {
        return Err(Error::InvalidArgument("eigenvalues of non-square matrix".into()));
    }
    if !is_finite(m) {
        return Err(Error::Evaluation("non-finite matrix entries".into()));
    }
    if m.nrows() == 0 {
        return Ok(Vec::new());
    }
    let (_, t) = m.clone().schur().unpack();
    let n = t.nrows();
    // A complex Schur form is upper triangular; anything left below the
    // diagonal means the iteration did not converge.
    let scale = m.iter().map(|z| z.norm()).fold(1.0, f64::max);
    for i in 1..n {
        if t[(i, i - 1)].norm() > 1e-10 * scale {
            return Err(Error::Evaluation("Schur iteration did not triangularize".into()));
        }
    }
    Ok((0..n).map(|i| t[(i, i)]).collect())
}

/// Singular values in descending order.
pub fn singular_values(m: &NumericMatrix) -> Vec<f64> {
    let mut s: Vec<f64> = m.clone().svd(false, false).singular_values.iter().copied().collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

/// Result of a bottleneck assignment between two point multisets.
#[derive(Clone, Debug, PartialEq)]
pub struct Matching {
    /// `assignment[i]` is the index in the right-hand multiset matched to left `i`.
    pub assignment: Vec<usize>,
    /// Largest matched distance; minimal over all perfect matchings.
    pub max_distance: f64,
}

/// Perfect matching minimizing the largest matched distance.
pub fn bottleneck_matching(left: &[Complex64], right: &[Complex64]) -> Result<Matching> {
    if left.len() != right.len() {
        return Err(Error::InvalidArgument(format!(
            "cannot match {} points against {}",
            left.len(),
            right.len()
        )));
    }
    let n = left.len();
    if n == 0 {
        return Ok(Matching {
            assignment: Vec::new(),
            max_distance: 0.0,
        });
    }
    let dist: Vec<Vec<f64>> = left
        .iter()
        .map(|a| right.iter().map(|b| (a - b).norm()).collect())
        .collect();
    let mut thresholds: Vec<f64> = dist.iter().flatten().copied().collect();
    thresholds.sort_by(f64::total_cmp);
    thresholds.dedup();
    let (mut lo, mut hi) = (0usize, thresholds.len() - 1);
    let mut best = perfect_matching(&dist, thresholds[hi]).expect("complete graph has a matching");
    while lo < hi {
        let mid = (lo + hi) / 2;
        match perfect_matching(&dist, thresholds[mid]) {
            Some(m) => {
                best = m;
                hi = mid;
            }
            None => lo = mid + 1,
        }
    }
    let max_distance = best.iter().enumerate().map(|(i, &j)| dist[i][j]).fold(0.0, f64::max);
    Ok(Matching {
        assignment: best,
        max_distance,
    })
}

fn perfect_matching(dist: &[Vec<f64>], threshold: f64) -> Option<Vec<usize>> {
    let n = dist.len();
    let mut match_right: Vec<Option<usize>> = vec![None; n];
    for i in 0..n {
        let mut seen = vec![false; n];
        if !augment(i, dist, threshold, &mut seen, &mut match_right) {
            return None;
        }
    }
    let mut assignment = vec![0; n];
    for (j, m) in match_right.iter().enumerate() {
        assignment[m.expect("perfect matching covers every vertex")] = j;
    }
    Some(assignment)
}

fn augment(i: usize, dist: &[Vec<f64>], threshold: f64, seen: &mut [bool], match_right: &mut [Option<usize>]) -> bool {
    for j in 0..dist.len() {
        if dist[i][j] <= threshold && !seen[j] {
            seen[j] = true;
            if match_right[j].is_none() || augment(match_right[j].unwrap(), dist, threshold, seen, match_right) {
                match_right[j] = Some(i);
                return true;
            }
        }
    }
    false
}

/// Parse `3`, `-1.5`, `2i`, `1+2i`, `1e-3-4.5i`, `i`, `-i`.
pub fn parse_complex(s: &str) -> Result<Complex64> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let err = || Error::InvalidArgument(format!("cannot parse complex number '{s}'"));
    if t.is_empty() {
        return Err(err());
    }
    let Some(body) = t.strip_suffix('i').or_else(|| t.strip_suffix('j')) else {
        return t.parse::<f64>().map(|re| Complex64::new(re, 0.0)).map_err(|_| err());
    };
    // split at the last sign that is not part of an exponent
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re_part, im_part) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("", body),
    };
    let im = match im_part {
        "" | "+" => 1.0,
        "-" => -1.0,
        x => x.parse::<f64>().map_err(|_| err())?,
    };
    let re = if re_part.is_empty() {
        0.0
    } else {
        re_part.parse::<f64>().map_err(|_| err())?
    };
    Ok(Complex64::new(re, im))
}

pub fn parse_complex_list(s: &str) -> Result<Vec<Complex64>> {
    s.split(',').map(parse_complex).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn eigenvalues_of_rotation_generator() {
        let m = NumericMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(-1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]);
        let mut ev = eigenvalues(&m).unwrap();
        ev.sort_by(|a, b| a.im.total_cmp(&b.im));
        assert!((ev[0] - c(0.0, -1.0)).norm() < 1e-12);
        assert!((ev[1] - c(0.0, 1.0)).norm() < 1e-12);
    }

    #[test]
    fn eigenvalues_of_complex_triangular() {
        let m = NumericMatrix::from_row_slice(
            3,
            3,
            &[
                c(1.0, 2.0),
                c(3.0, 0.0),
                c(0.0, 1.0),
                c(0.0, 0.0),
                c(-2.0, 0.5),
                c(1.0, 1.0),
                c(0.0, 0.0),
                c(0.0, 0.0),
                c(0.3, -1.0),
            ],
        );
        let ev = eigenvalues(&m).unwrap();
        let expect = [c(1.0, 2.0), c(-2.0, 0.5), c(0.3, -1.0)];
        assert!(bottleneck_matching(&ev, &expect).unwrap().max_distance < 1e-10);
    }

    #[test]
    fn bottleneck_prefers_min_max() {
        let a = [c(0.0, 0.0), c(1.0, 0.0)];
        let b = [c(1.1, 0.0), c(0.1, 0.0)];
        let m = bottleneck_matching(&a, &b).unwrap();
        assert_eq!(m.assignment, vec![1, 0]);
        assert!((m.max_distance - 0.1).abs() < 1e-12);
        assert!(bottleneck_matching(&a, &b[..1]).is_err());
    }

    #[test]
    fn complex_parsing() {
        assert_eq!(parse_complex("3").unwrap(), c(3.0, 0.0));
        assert_eq!(parse_complex("1+2i").unwrap(), c(1.0, 2.0));
        assert_eq!(parse_complex("-i").unwrap(), c(0.0, -1.0));
        assert_eq!(parse_complex("1e-3-4.5i").unwrap(), c(1e-3, -4.5));
        assert_eq!(parse_complex("2.5i").unwrap(), c(0.0, 2.5));
        assert!(parse_complex("abc").is_err());
        assert_eq!(parse_complex_list("1,1").unwrap().len(), 2);
    }
}
