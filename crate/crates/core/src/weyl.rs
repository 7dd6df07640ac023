//! Weyl group elements and Coxeter combinatorics.
//!
//! An element is stored as the pair of integer matrices by which it acts on
//! weight coordinates and on coweight coordinates. The two are contragredient
//! (`pᵀ·h = 1`), so inversion is a transpose-and-swap and equality is plain
//! matrix equality. Words are recomputed on demand by descent stripping.

use std::collections::{HashMap, HashSet};
use std::fmt;

use itertools::Itertools;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::index_set::IndexSet;
use crate::matrix::{dot, Matrix};
use crate::realization::{Coweight, Realization, WeightVector};
use crate::{IntMatrix, Rational, LENGTH_SAFETY_BUDGET};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct WeylElement {
    p: IntMatrix,
    h: IntMatrix,
}

/// A real root with its coroot `h_α`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct RealRoot {
    pub root: WeightVector,
    /// Coefficients in the simple roots; uniformly signed.
    pub root_coords: Vec<i64>,
    pub coroot: Coweight,
    pub height: i64,
    pub positive: bool,
}

impl WeylElement {
    pub fn identity(dim: usize) -> Self {
        WeylElement { p: Matrix::identity(dim), h: Matrix::identity(dim) }
    }

    pub(crate) fn reflection(r: &Realization, i: usize) -> Self {
        let d = r.dim();
        let a = r.simple_root_ints(i);
        let delta = |j: usize, k: usize| (j == k) as i64;
        // σ_i λ = λ - λ(h_i) α_i and σ_i h = h - α_i(h) h_i.
        let p = Matrix::from_fn(d, d, |j, k| delta(j, k) - if k == i { a[j] } else { 0 });
        let h = Matrix::from_fn(d, d, |j, k| delta(j, k) - if j == i { a[k] } else { 0 });
        WeylElement { p, h }
    }

    pub fn dim(&self) -> usize {
        self.p.rows()
    }

    /// Matrix of the action on weight coordinates.
    pub fn weight_matrix(&self) -> &IntMatrix {
        &self.p
    }

    /// Matrix of the action on coweight coordinates.
    pub fn coweight_matrix(&self) -> &IntMatrix {
        &self.h
    }

    pub fn is_identity(&self) -> bool {
        self.p.is_identity()
    }

    pub fn multiply(&self, other: &WeylElement) -> Result<WeylElement> {
        if self.dim() != other.dim() {
            return Err(Error::RealizationMismatch);
        }
        Ok(self.mul(other))
    }

    pub(crate) fn mul(&self, other: &WeylElement) -> WeylElement {
        WeylElement { p: self.p.mul(&other.p), h: self.h.mul(&other.h) }
    }

    pub fn inverse(&self) -> WeylElement {
        WeylElement { p: self.h.transpose(), h: self.p.transpose() }
    }

    pub fn pow(&self, k: u32) -> WeylElement {
        (0..k).fold(WeylElement::identity(self.dim()), |acc, _| acc.mul(self))
    }

    pub fn act_weight(&self, lambda: &WeightVector) -> WeightVector {
        let q = self.p.map(|&x| Rational::from_integer(x.into()));
        WeightVector(q.mul_vec(&lambda.0))
    }

    pub fn act_ints(&self, v: &[i64]) -> Vec<i64> {
        self.p.mul_vec(v)
    }

    pub fn act_coweight(&self, h: &[i64]) -> Vec<i64> {
        self.h.mul_vec(h)
    }

    /// `pᵀ·h = 1`.
    pub fn is_contragredient(&self) -> bool {
        self.p.transpose().mul(&self.h).is_identity()
    }
}

impl fmt::Debug for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WeylElement{:?}", self.p)
    }
}

impl Realization {
    pub fn identity(&self) -> WeylElement {
        WeylElement::identity(self.dim())
    }

    pub fn simple_reflection(&self, i: usize) -> Result<WeylElement> {
        self.check_index(i)?;
        Ok(self.generator(i).clone())
    }

    /// Product `σ_{w[0]} σ_{w[1]} …`.
    pub fn from_word(&self, word: &[usize]) -> Result<WeylElement> {
        let mut x = self.identity();
        for &i in word {
            self.check_index(i)?;
            x = x.mul(self.generator(i));
        }
        Ok(x)
    }

    fn check_element(&self, x: &WeylElement) -> Result<()> {
        if x.dim() == self.dim() {
            Ok(())
        } else {
            Err(Error::RealizationMismatch)
        }
    }

    /// `i` with `x·α_i` negative.
    pub fn right_descents(&self, x: &WeylElement) -> IndexSet {
        // ht(x α_i) = α_i(pᵀ h_ρ) up to a positive factor.
        let u = x.p.vec_mul(self.height_coweight());
        (0..self.n()).filter(|&i| dot(self.simple_root_ints(i), &u) < 0).collect()
    }

    /// `i` with `x⁻¹·α_i` negative.
    pub fn left_descents(&self, x: &WeylElement) -> IndexSet {
        let u = x.h.mul_vec(self.height_coweight());
        (0..self.n()).filter(|&i| dot(self.simple_root_ints(i), &u) < 0).collect()
    }

    /// Reduced word, obtained by repeatedly stripping the smallest right
    /// descent. Multiplying the letters left to right gives back `x`.
    pub fn reduced_word(&self, x: &WeylElement) -> Vec<usize> {
        let mut cur = x.clone();
        let mut stripped = Vec::new();
        while let Some(i) = self.right_descents(&cur).min() {
            assert!(stripped.len() < LENGTH_SAFETY_BUDGET, "descent stripping exceeded its safety budget");
            cur = cur.mul(self.generator(i));
            stripped.push(i);
        }
        debug_assert!(cur.is_identity());
        stripped.reverse();
        stripped
    }

    pub fn length(&self, x: &WeylElement) -> usize {
        self.reduced_word(x).len()
    }

    /// Splits `x = rep · u` with `u ∈ W_J` and `rep ∈ W^J`.
    pub fn coset_decompose_right(&self, x: &WeylElement, j: IndexSet) -> (WeylElement, WeylElement) {
        let mut rep = x.clone();
        let mut stripped = Vec::new();
        while let Some(i) = self.right_descents(&rep).intersection(j).min() {
            rep = rep.mul(self.generator(i));
            stripped.push(i);
        }
        let u = stripped.iter().rev().fold(self.identity(), |acc, &i| acc.mul(self.generator(i)));
        (rep, u)
    }

    /// Splits `x = u · rep` with `u ∈ W_J` and `rep ∈ ^JW`.
    pub fn coset_decompose_left(&self, x: &WeylElement, j: IndexSet) -> (WeylElement, WeylElement) {
        let mut rep = x.clone();
        let mut stripped = Vec::new();
        while let Some(i) = self.left_descents(&rep).intersection(j).min() {
            rep = self.generator(i).mul(&rep);
            stripped.push(i);
        }
        let u = stripped.iter().fold(self.identity(), |acc, &i| self.generator(i).mul(&acc));
        let u = u.inverse();
        (u, rep)
    }

    /// Minimal length element of `x·W_J`.
    pub fn min_coset_rep_right(&self, x: &WeylElement, j: IndexSet) -> WeylElement {
        self.coset_decompose_right(x, j).0
    }

    /// Minimal length element of `W_J·x`.
    pub fn min_coset_rep_left(&self, x: &WeylElement, j: IndexSet) -> WeylElement {
        self.coset_decompose_left(x, j).1
    }

    /// Splits `x = a · rep · b` with `a ∈ W_A`, `b ∈ W_B` and `rep` the
    /// minimal element of `W_A x W_B`. Only `a` and `rep` are returned.
    pub fn double_coset_decompose(&self, x: &WeylElement, left: IndexSet, right: IndexSet) -> (WeylElement, WeylElement) {
        let mut rep = x.clone();
        let mut a = self.identity();
        loop {
            if let Some(i) = self.left_descents(&rep).intersection(left).min() {
                rep = self.generator(i).mul(&rep);
                a = a.mul(self.generator(i));
            } else if let Some(i) = self.right_descents(&rep).intersection(right).min() {
                rep = rep.mul(self.generator(i));
            } else {
                return (a, rep);
            }
        }
    }

    pub fn is_in_parabolic(&self, x: &WeylElement, j: IndexSet) -> bool {
        self.min_coset_rep_right(x, j).is_identity()
    }

    /// Elements of `W_J` grouped by length, up to `max_len`. Each shell is in
    /// a deterministic order.
    pub fn shells(&self, j: IndexSet, max_len: usize) -> Vec<Vec<WeylElement>> {
        let mut out = vec![vec![self.identity()]];
        for _ in 0..max_len {
            let last = out.last().unwrap();
            let mut seen = HashSet::new();
            let mut next = Vec::new();
            for x in last {
                let desc = self.right_descents(x);
                for i in j.difference(desc).iter() {
                    let y = x.mul(self.generator(i));
                    if seen.insert(y.clone()) {
                        next.push(y);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            out.push(next);
        }
        out
    }

    /// Deduplicated real roots `w·α_i` with `ℓ(w) ≤ bound`, with coroots.
    pub fn real_roots_up_to(&self, bound: usize) -> Vec<RealRoot> {
        let mut seen: HashMap<Vec<i64>, ()> = HashMap::new();
        let mut frontier: Vec<(Vec<i64>, Vec<i64>)> = Vec::new();
        let mut out = Vec::new();
        for i in 0..self.n() {
            let root = self.simple_root_ints(i).to_vec();
            let coroot = self.simple_coroot(i).0;
            if seen.insert(root.clone(), ()).is_none() {
                frontier.push((root, coroot));
            }
        }
        for depth in 0..=bound {
            let mut next = Vec::new();
            for (root, coroot) in &frontier {
                out.push(self.make_root(root, coroot));
                if depth == bound {
                    continue;
                }
                for g in &self.generators {
                    let (r2, c2) = (g.act_ints(root), g.act_coweight(coroot));
                    if seen.insert(r2.clone(), ()).is_none() {
                        next.push((r2, c2));
                    }
                }
            }
            frontier = next;
        }
        out
    }

    fn make_root(&self, root: &[i64], coroot: &[i64]) -> RealRoot {
        let w = WeightVector::from_ints(root);
        let coords = self.root_coordinates(&w).expect("real roots lie in the root lattice");
        let root_coords: Vec<i64> = coords.iter().map(|x| i64::try_from(x.to_integer()).expect("overflow")).collect();
        let height = root_coords.iter().sum();
        RealRoot { root: w, root_coords, coroot: Coweight(coroot.to_vec()), height, positive: height > 0 }
    }

    /// Positive real roots of height at most `max_height`, as simple-root
    /// coordinates, sorted by height and then lexicographically.
    ///
    /// Every positive real root other than a simple one lowers its height
    /// under some simple reflection, so climbing from the simple roots
    /// reaches all of them.
    pub fn positive_roots_by_height(&self, max_height: usize) -> Vec<Vec<i64>> {
        let n = self.n();
        let a = self.gcm().matrix();
        let mut seen: HashSet<Vec<i64>> = HashSet::new();
        let mut stack: Vec<Vec<i64>> = Vec::new();
        for i in 0..n {
            let mut e = vec![0; n];
            e[i] = 1;
            if max_height >= 1 {
                seen.insert(e.clone());
                stack.push(e);
            }
        }
        while let Some(c) = stack.pop() {
            let ht: i64 = c.iter().sum();
            for i in 0..n {
                let pairing: i64 = (0..n).map(|k| c[k] * a[(i, k)]).sum();
                if pairing < 0 && ht - pairing <= max_height as i64 {
                    let mut next = c.clone();
                    next[i] -= pairing;
                    if seen.insert(next.clone()) {
                        stack.push(next);
                    }
                }
            }
        }
        let mut out: Vec<_> = seen.into_iter().collect();
        out.sort_by_key(|c| (c.iter().sum::<i64>(), c.clone()));
        out
    }

    /// `xᵀ G x = G` for the form on `h*`.
    pub fn preserves_form(&self, x: &WeylElement) -> bool {
        let q = x.p.map(|&v| Rational::from_integer(v.into()));
        q.transpose().mul(self.gram_hstar()).mul(&q) == *self.gram_hstar()
    }

    /// Space-separated `s<i>` word (1-based) of a reduced expression.
    pub fn word_string(&self, x: &WeylElement) -> String {
        self.reduced_word(x).iter().map(|i| format!("s{}", i + 1)).join(" ")
    }

    pub(crate) fn check_same(&self, x: &WeylElement) -> Result<()> {
        self.check_element(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::gcm::CoxeterOrder;

    fn real(name: &str) -> Realization {
        Realization::new(catalog::by_name(name).unwrap())
    }

    #[test]
    fn simple_reflection_basics() {
        let r = real("A2");
        let s1 = r.simple_reflection(0).unwrap();
        assert!(s1.pow(2).is_identity());
        assert_eq!(s1.act_weight(&r.simple_root(0)), -&r.simple_root(0));
        assert_eq!(s1.act_weight(&r.fundamental_weight(1)), r.fundamental_weight(1));
        assert!(matches!(r.simple_reflection(2), Err(Error::IndexOutOfRange { .. })));
        assert!(s1.is_contragredient());
    }

    #[test]
    fn coxeter_relations_hold() {
        for (_, g) in catalog::all() {
            let r = Realization::new(g);
            for i in 0..r.n() {
                for j in 0..r.n() {
                    if i == j {
                        continue;
                    }
                    let st = r.from_word(&[i, j]).unwrap();
                    match r.gcm().coxeter_order(i, j).unwrap() {
                        CoxeterOrder::Finite(m) => {
                            assert!(st.pow(m).is_identity());
                            assert!((1..m).all(|k| !st.pow(k).is_identity()));
                        }
                        CoxeterOrder::Infinite => assert!((1..=12).all(|k| !st.pow(k).is_identity())),
                    }
                }
            }
        }
    }

    #[test]
    fn inverse_and_length() {
        let r = real("G2");
        let x = r.from_word(&[0, 1, 0]).unwrap();
        assert!(x.mul(&x.inverse()).is_identity());
        assert_eq!(r.length(&x), 3);
        assert_eq!(r.from_word(&r.reduced_word(&x)).unwrap(), x);
        assert_eq!(r.reduced_word(&r.identity()), Vec::<usize>::new());
        assert_eq!(r.right_descents(&r.identity()), IndexSet::empty());
        let s1 = r.simple_reflection(0).unwrap();
        assert_eq!(r.right_descents(&s1), IndexSet::singleton(0));
        assert_eq!(r.length(&s1), 1);
    }

    #[test]
    fn infinite_dihedral_growth() {
        let r = real("A1~");
        let shells = r.shells(IndexSet::full(2), 10);
        assert_eq!(shells.len(), 11);
        for (k, shell) in shells.iter().enumerate().skip(1) {
            assert_eq!(shell.len(), 2, "length {k}");
        }
    }

    #[test]
    fn coset_representatives_a2() {
        let r = real("A2");
        let j = IndexSet::singleton(0);
        let all: Vec<WeylElement> = r.shells(IndexSet::full(2), 3).into_iter().flatten().collect();
        assert_eq!(all.len(), 6);
        let mut right: Vec<Vec<usize>> =
            all.iter().map(|x| r.reduced_word(&r.min_coset_rep_right(x, j))).unique().collect();
        right.sort();
        assert_eq!(right, vec![vec![], vec![0, 1], vec![1]]);
        let mut left: Vec<Vec<usize>> =
            all.iter().map(|x| r.reduced_word(&r.min_coset_rep_left(x, j))).unique().collect();
        left.sort();
        assert_eq!(left, vec![vec![], vec![1], vec![1, 0]]);
        let s1 = r.simple_reflection(0).unwrap();
        assert!(r.min_coset_rep_left(&s1, j).is_identity());
        assert!(r.is_in_parabolic(&r.identity(), IndexSet::empty()));
        assert!(!r.is_in_parabolic(&r.simple_reflection(1).unwrap(), j));
    }

    #[test]
    fn coset_decompositions_recombine() {
        let r = real("A2~");
        for x in r.shells(IndexSet::full(3), 4).into_iter().flatten() {
            for j in IndexSet::full(3).subsets() {
                let (rep, u) = r.coset_decompose_right(&x, j);
                assert_eq!(rep.mul(&u), x);
                assert!(r.is_in_parabolic(&u, j));
                assert_eq!(r.length(&x), r.length(&rep) + r.length(&u));
                let (u, rep) = r.coset_decompose_left(&x, j);
                assert_eq!(u.mul(&rep), x);
                assert!(r.left_descents(&rep).is_disjoint(j));
            }
        }
    }

    #[test]
    fn real_roots() {
        let r = real("A2");
        let roots = r.real_roots_up_to(3);
        assert_eq!(roots.len(), 6);
        assert_eq!(roots.iter().filter(|x| x.positive).count(), 3);
        assert_eq!(roots[0].coroot, r.simple_coroot(0));

        // Affine A1: ±α_1 + kδ and ±α_2 + kδ with δ = α_1 + α_2.
        let r = real("A1~");
        let roots = r.real_roots_up_to(4);
        for root in &roots {
            let c = &root.root_coords;
            assert!((c[0] - c[1]).abs() == 1, "{c:?}");
        }
        assert!(roots.iter().any(|x| x.root_coords == vec![3, 2]));
    }

    #[test]
    fn positive_roots_by_height() {
        let r = real("A2");
        assert_eq!(r.positive_roots_by_height(2).len(), 3);
        let r = real("G2");
        assert_eq!(r.positive_roots_by_height(10).len(), 6);
        let r = real("A1~");
        // α_1, α_2 at height 1; 2α_1+α_2 and α_1+2α_2 at height 3.
        assert_eq!(r.positive_roots_by_height(3).len(), 4);
    }
}
