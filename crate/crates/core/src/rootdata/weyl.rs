use std::cmp::Ordering;
use std::collections::{HashMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use super::datum::RootDatum;
use crate::exactalg::{ExactMatrix, Rational};

type IntMatrix = ExactMatrix<i64>;

/// An element of the Weyl group with its ShortLex-minimal reduced word.
///
/// Reduced words are 0-based lists of simple reflection indices, read left to
/// right as the product `s_{w[0]} s_{w[1]} ...`. `action` is the matrix of the
/// element on the ambient character lattice (row-major, acting on column vectors).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeylElement {
    pub reduced_word: Vec<usize>,
    pub action: Vec<Vec<i64>>,
    pub length: usize,
}

impl Ord for WeylElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.length
            .cmp(&other.length)
            .then_with(|| self.reduced_word.cmp(&other.reduced_word))
            .then_with(|| self.action.cmp(&other.action))
    }
}

impl PartialOrd for WeylElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl WeylElement {
    /// Reduced word rendered 1-based, e.g. `s1s2s1`; the identity is `e`.
    pub fn label(&self) -> String {
        if self.reduced_word.is_empty() {
            "e".to_string()
        } else {
            self.reduced_word.iter().map(|i| format!("s{}", i + 1)).collect()
        }
    }
}

/// A positive root with its coroot, both in simple (co)root coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PositiveRoot {
    pub root: Vec<i64>,
    pub coroot: Vec<i64>,
}

impl PositiveRoot {
    /// `<2ρ, β^∨>`.
    pub fn two_rho_pairing(&self) -> i64 {
        2 * self.coroot.iter().sum::<i64>()
    }
}

/// A Levi subgroup containing the maximal torus, given by a set of simple roots.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LeviDescriptor {
    pub subset: Vec<usize>,
    /// Longest element `w_L` of the Levi's Weyl group.
    pub longest: WeylElement,
}

/// The full Weyl group of a root datum, enumerated in basis order
/// (length first, then ShortLex on reduced words).
#[derive(Clone, Debug)]
pub struct WeylGroup {
    datum: RootDatum,
    elements: Vec<WeylElement>,
    root_actions: Vec<IntMatrix>,
    by_root_action: HashMap<IntMatrix, usize>,
    by_word: HashMap<Vec<usize>, usize>,
    positive_roots: Vec<PositiveRoot>,
}

fn simple_reflection_on_roots(a: &[Vec<i64>], k: usize) -> IntMatrix {
    let n = a.len();
    IntMatrix::from_fn(n, n, |r, j| i64::from(r == j) - if r == k { a[k][j] } else { 0 })
}

fn simple_reflection_on_coroots(a: &[Vec<i64>], k: usize) -> IntMatrix {
    let n = a.len();
    IntMatrix::from_fn(n, n, |r, j| i64::from(r == j) - if r == k { a[j][k] } else { 0 })
}

fn simple_reflection_ambient(d: &RootDatum, k: usize) -> IntMatrix {
    let n = d.rank();
    let (al, co) = (&d.simple_roots[k], &d.simple_coroots[k]);
    IntMatrix::from_fn(n, n, |r, c| i64::from(r == c) - al[r] * co[c])
}

impl WeylGroup {
    pub fn new(datum: &RootDatum) -> Self {
        let n = datum.rank();
        let a = &datum.cartan_matrix;
        let gens_root: Vec<IntMatrix> = (0..n).map(|k| simple_reflection_on_roots(a, k)).collect();
        let gens_amb: Vec<IntMatrix> = (0..n).map(|k| simple_reflection_ambient(datum, k)).collect();

        let mut elements = Vec::new();
        let mut root_actions = Vec::new();
        let mut by_root_action = HashMap::new();
        let mut by_word = HashMap::new();
        let mut queue: VecDeque<(Vec<usize>, IntMatrix, IntMatrix)> = VecDeque::new();
        let id = IntMatrix::identity(n);
        by_root_action.insert(id.clone(), 0);
        queue.push_back((Vec::new(), id.clone(), id));
        // Breadth-first in lexicographic generator order: the first word to
        // reach an element is its ShortLex-minimal reduced word.
        while let Some((word, root_m, amb_m)) = queue.pop_front() {
            let idx = elements.len();
            by_word.insert(word.clone(), idx);
            elements.push(WeylElement {
                length: word.len(),
                action: amb_m.to_rows(),
                reduced_word: word.clone(),
            });
            root_actions.push(root_m.clone());
            for j in 0..n {
                let next = root_m.matmul(&gens_root[j]).expect("square");
                if by_root_action.contains_key(&next) {
                    continue;
                }
                by_root_action.insert(next.clone(), usize::MAX);
                let mut w = word.clone();
                w.push(j);
                queue.push_back((w, next, amb_m.matmul(&gens_amb[j]).expect("square")));
            }
        }
        for (i, m) in root_actions.iter().enumerate() {
            by_root_action.insert(m.clone(), i);
        }

        WeylGroup {
            datum: datum.clone(),
            positive_roots: positive_roots(a),
            elements,
            root_actions,
            by_root_action,
            by_word,
        }
    }

    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    pub fn rank(&self) -> usize {
        self.datum.rank()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[WeylElement] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &WeylElement {
        &self.elements[i]
    }

    pub fn positive_roots(&self) -> &[PositiveRoot] {
        &self.positive_roots
    }

    pub fn identity(&self) -> usize {
        0
    }

    /// Index of the longest element `w₀`.
    pub fn longest(&self) -> usize {
        self.elements.len() - 1
    }

    pub fn index_of(&self, w: &WeylElement) -> Option<usize> {
        self.by_word
            .get(&w.reduced_word)
            .copied()
            .filter(|&i| self.elements[i] == *w)
    }

    /// Index of the element represented by an arbitrary (not necessarily reduced) word.
    pub fn index_of_word(&self, word: &[usize]) -> Option<usize> {
        let n = self.rank();
        if word.iter().any(|&k| k >= n) {
            return None;
        }
        let m = word.iter().fold(IntMatrix::identity(n), |acc, &k| {
            acc.matmul(&simple_reflection_on_roots(&self.datum.cartan_matrix, k))
                .expect("square")
        });
        self.by_root_action.get(&m).copied()
    }

    pub fn simple_reflection(&self, k: usize) -> usize {
        self.by_word[&vec![k]]
    }

    /// Action on simple-root coordinates.
    pub fn root_action(&self, i: usize) -> &IntMatrix {
        &self.root_actions[i]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        let m = self.root_actions[a].matmul(&self.root_actions[b]).expect("square");
        self.by_root_action[&m]
    }

    pub fn inverse(&self, a: usize) -> usize {
        let mut w = self.elements[a].reduced_word.clone();
        w.reverse();
        self.index_of_word(&w).expect("inverse lies in the group")
    }

    /// Image of a vector given in simple-root coordinates.
    pub fn act_on_root(&self, i: usize, v: &[i64]) -> Vec<i64> {
        self.root_actions[i].apply(v).expect("dimension")
    }

    /// Number of positive roots sent to negative roots.
    pub fn inversion_count(&self, i: usize) -> usize {
        self.positive_roots
            .iter()
            .filter(|b| self.act_on_root(i, &b.root).iter().any(|&c| c < 0))
            .count()
    }

    /// The reflection `s_β` for a positive root, as a group index.
    pub fn reflection(&self, beta: &PositiveRoot) -> usize {
        let n = self.rank();
        let a = &self.datum.cartan_matrix;
        // s_β(α_j) = α_j - <α_j, β^∨> β
        let m = IntMatrix::from_fn(n, n, |r, j| {
            let pairing: i64 = (0..n).map(|l| beta.coroot[l] * a[l][j]).sum();
            i64::from(r == j) - pairing * beta.root[r]
        });
        self.by_root_action[&m]
    }

    /// Elements of the parabolic subgroup generated by `subset`.
    pub fn parabolic(&self, subset: &[usize]) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| self.elements[i].reduced_word.iter().all(|k| subset.contains(k)))
            .collect()
    }

    pub fn levi(&self, subset: &[usize]) -> LeviDescriptor {
        let mut s: Vec<usize> = subset.to_vec();
        s.sort_unstable();
        s.dedup();
        let longest = *self
            .parabolic(&s)
            .iter()
            .max_by_key(|&&i| self.elements[i].length)
            .expect("parabolic subgroup contains the identity");
        LeviDescriptor {
            subset: s,
            longest: self.elements[longest].clone(),
        }
    }

    /// All `2^rank` Levi subsets in increasing bitmask order.
    pub fn all_levis(&self) -> Vec<LeviDescriptor> {
        let n = self.rank();
        (0u32..(1 << n))
            .map(|mask| {
                let s: Vec<usize> = (0..n).filter(|k| mask & (1 << k) != 0).collect();
                self.levi(&s)
            })
            .collect()
    }

    /// `w₀ · w_L⁻¹`.
    pub fn foliation_element(&self, levi: &LeviDescriptor) -> usize {
        let wl = self.index_of(&levi.longest).expect("levi element in group");
        self.mul(self.longest(), self.inverse(wl))
    }

    fn is_simple_root(v: &[i64]) -> bool {
        v.iter().all(|&c| c == 0 || c == 1) && v.iter().sum::<i64>() == 1
    }

    /// Whether `w` sends each negative simple root either to a negative simple
    /// root or to a positive root.
    pub fn satisfies_foliation_criterion(&self, w: usize) -> bool {
        let n = self.rank();
        (0..n).all(|i| {
            let mut e = vec![0; n];
            e[i] = -1;
            let img = self.act_on_root(w, &e);
            let neg: Vec<i64> = img.iter().map(|c| -c).collect();
            Self::is_simple_root(&neg) || img.iter().all(|&c| c >= 0)
        })
    }

    /// The Levi `L` with `w = w₀ w_L⁻¹`, when `w` passes the foliation criterion.
    /// `L` is read off as the simple roots whose negatives stay simple and negative.
    pub fn classify_foliation_element(&self, w: usize) -> Option<LeviDescriptor> {
        if !self.satisfies_foliation_criterion(w) {
            return None;
        }
        let n = self.rank();
        let subset: Vec<usize> = (0..n)
            .filter(|&i| {
                let mut e = vec![0; n];
                e[i] = 1;
                Self::is_simple_root(&self.act_on_root(w, &e))
            })
            .collect();
        let levi = self.levi(&subset);
        (self.foliation_element(&levi) == w).then_some(levi)
    }

    /// Symmetrized form `(α_i, α_j)` on simple-root coordinates.
    pub fn inner_product(&self) -> ExactMatrix<Rational> {
        let a = &self.datum.cartan_matrix;
        let n = a.len();
        // d_i A[i][j] = d_j A[j][i]; propagate along the Dynkin diagram
        let mut d: Vec<Option<Rational>> = vec![None; n];
        for start in 0..n {
            if d[start].is_some() {
                continue;
            }
            d[start] = Some(Rational::from_integer(1.into()));
            let mut stack = vec![start];
            while let Some(i) = stack.pop() {
                for j in 0..n {
                    if i != j && a[i][j] != 0 && d[j].is_none() {
                        let di = d[i].clone().unwrap();
                        d[j] = Some(di * Rational::new(a[i][j].into(), a[j][i].into()));
                        stack.push(j);
                    }
                }
            }
        }
        ExactMatrix::from_fn(n, n, |i, j| {
            d[i].clone().unwrap() * Rational::from_integer(a[i][j].into())
        })
    }
}

fn positive_roots(a: &[Vec<i64>]) -> Vec<PositiveRoot> {
    let n = a.len();
    let gens_r: Vec<IntMatrix> = (0..n).map(|k| simple_reflection_on_roots(a, k)).collect();
    let gens_c: Vec<IntMatrix> = (0..n).map(|k| simple_reflection_on_coroots(a, k)).collect();
    let mut seen: HashSet<PositiveRoot> = HashSet::new();
    let mut stack: Vec<PositiveRoot> = (0..n)
        .map(|i| {
            let e: Vec<i64> = (0..n).map(|k| i64::from(k == i)).collect();
            PositiveRoot {
                root: e.clone(),
                coroot: e,
            }
        })
        .collect();
    while let Some(r) = stack.pop() {
        if !seen.insert(r.clone()) {
            continue;
        }
        for k in 0..n {
            let next = PositiveRoot {
                root: gens_r[k].apply(&r.root).expect("dimension"),
                coroot: gens_c[k].apply(&r.coroot).expect("dimension"),
            };
            if !seen.contains(&next) {
                stack.push(next);
            }
        }
    }
    let mut pos: Vec<PositiveRoot> = seen.into_iter().filter(|r| r.root.iter().all(|&c| c >= 0)).collect();
    pos.sort_by(|x, y| {
        x.root
            .iter()
            .sum::<i64>()
            .cmp(&y.root.iter().sum::<i64>())
            .then_with(|| y.root.cmp(&x.root))
    });
    pos
}

/// The full Weyl group of `d` in basis order.
pub fn weyl_elements(d: &RootDatum) -> Vec<WeylElement> {
    WeylGroup::new(d).elements
}

/// Free-standing form of [`WeylGroup::classify_foliation_element`].
pub fn classify_foliation_element(w: &WeylElement, d: &RootDatum) -> Option<LeviDescriptor> {
    let g = WeylGroup::new(d);
    let i = g.index_of(w)?;
    g.classify_foliation_element(i)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::{build_root_datum, LatticeChoice};

    fn group(t: &str) -> WeylGroup {
        WeylGroup::new(&build_root_datum(t.parse().unwrap(), LatticeChoice::SimplyConnected).unwrap())
    }

    #[test]
    fn orders() {
        for (t, order, npos) in [
            ("A1", 2, 1),
            ("A2", 6, 3),
            ("A3", 24, 6),
            ("A4", 120, 10),
            ("B2", 8, 4),
            ("C2", 8, 4),
            ("G2", 12, 6),
        ] {
            let g = group(t);
            assert_eq!(g.len(), order, "{t}");
            assert_eq!(g.positive_roots().len(), npos, "{t}");
            assert_eq!(g.element(g.longest()).length, npos, "{t}");
        }
    }

    #[test]
    fn a2_longest_word() {
        let g = group("A2");
        assert_eq!(g.element(g.longest()).reduced_word, vec![0, 1, 0]);
        assert_eq!(g.element(g.longest()).label(), "s1s2s1");
    }

    #[test]
    fn lengths_are_inversion_counts() {
        for t in ["A3", "B2", "G2"] {
            let g = group(t);
            for i in 0..g.len() {
                assert_eq!(g.inversion_count(i), g.element(i).length);
            }
        }
    }

    #[test]
    fn actions_preserve_inner_product() {
        for t in ["A3", "B2", "C2", "G2"] {
            let g = group(t);
            let b = g.inner_product();
            assert_eq!(b, b.transpose(), "{t}");
            for i in 0..g.len() {
                let w = g.root_action(i).map(|&x| Rational::from_integer(x.into()));
                assert_eq!(w.transpose().matmul(&b).unwrap().matmul(&w).unwrap(), b);
            }
        }
    }

    #[test]
    fn reduced_words_replay() {
        let g = group("B2");
        for (i, w) in g.elements().iter().enumerate() {
            assert_eq!(g.index_of_word(&w.reduced_word), Some(i));
            assert_eq!(g.mul(i, g.inverse(i)), g.identity());
        }
    }

    #[test]
    fn levi_longest_elements() {
        let g = group("A3");
        let l = g.levi(&[0, 1]);
        assert_eq!(l.longest.length, 3);
        let full = g.levi(&[0, 1, 2]);
        assert_eq!(full.longest, g.element(g.longest()).clone());
        assert_eq!(g.levi(&[]).longest.length, 0);
    }

    #[test]
    fn a2_s1_is_not_a_foliation_element() {
        let g = group("A2");
        let s1 = g.simple_reflection(0);
        assert!(!g.satisfies_foliation_criterion(s1));
        assert!(g.classify_foliation_element(s1).is_none());
        assert_eq!(
            g.classify_foliation_element(g.longest()).unwrap().subset,
            Vec::<usize>::new()
        );
        assert_eq!(g.classify_foliation_element(g.identity()).unwrap().subset, vec![0, 1]);
    }
}
