//! The Weyl monoid: classes `⟨R⟩σ` of pairs (face, Weyl element).
//!
//! `(R, σ) ~ (R', σ')` iff `R = R'` and `σ'σ⁻¹` fixes `R` pointwise. For
//! `R = w·R(Θ)` that fixator is `w W_Θ w⁻¹`, so each class has the unique
//! representative with `w⁻¹σ` minimal in `W_Θ·w⁻¹σ`.

use std::fmt;

use itertools::Itertools;
use serde::Serialize;

use crate::error::Result;
use crate::faces::{Face, IntersectStatus};
use crate::index_set::IndexSet;
use crate::realization::{Realization, WeightVector};
use crate::weyl::WeylElement;
use crate::DEFAULT_INTERSECT_BUDGET;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeylMonoidElement {
    face: Face,
    sigma: WeylElement,
}

impl WeylMonoidElement {
    pub fn face(&self) -> &Face {
        &self.face
    }

    pub fn sigma(&self) -> &WeylElement {
        &self.sigma
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum NormalFormFlavor {
    /// `σ1 ∈ W^{Θ∪Θ^⊥}`, `σ2 ∈ ^ΘW`.
    Type1,
    /// `σ1 ∈ W^Θ`, `σ2 ∈ ^{Θ∪Θ^⊥}W`.
    Type2,
}

/// `x = σ1 · ⟨R(Θ)⟩ · σ2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NormalForm {
    pub flavor: NormalFormFlavor,
    pub sigma1: WeylElement,
    pub theta: IndexSet,
    pub sigma2: WeylElement,
}

/// `x = u·⟨R(Ξ)⟩·v` with `u, v ∈ W_J` and `Ξ ⊆ J^∞`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParabolicWitness {
    pub u: WeylElement,
    pub xi: IndexSet,
    pub v: WeylElement,
}

/// Monoid operations over one realization with a fixed intersection budget.
#[derive(Clone, Copy)]
pub struct WeylMonoid<'r> {
    r: &'r Realization,
    budget: usize,
}

impl fmt::Debug for WeylMonoid<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("WeylMonoid").field("budget", &self.budget).finish()
    }
}

impl<'r> WeylMonoid<'r> {
    pub fn new(r: &'r Realization) -> Self {
        WeylMonoid { r, budget: DEFAULT_INTERSECT_BUDGET }
    }

    pub fn with_budget(r: &'r Realization, budget: usize) -> Self {
        WeylMonoid { r, budget }
    }

    pub fn realization(&self) -> &'r Realization {
        self.r
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    /// `⟨F⟩σ` in canonical form. `face` must be canonical.
    pub fn element(&self, face: Face, sigma: &WeylElement) -> WeylMonoidElement {
        let s = face.w.inverse().mul(sigma);
        let s = self.r.min_coset_rep_left(&s, face.theta);
        let sigma = face.w.mul(&s);
        WeylMonoidElement { face, sigma }
    }

    pub fn unit(&self) -> WeylMonoidElement {
        self.from_weyl(&self.r.identity())
    }

    pub fn from_weyl(&self, sigma: &WeylElement) -> WeylMonoidElement {
        WeylMonoidElement { face: self.r.whole_cone(), sigma: sigma.clone() }
    }

    pub fn idempotent(&self, face: &Face) -> WeylMonoidElement {
        self.element(face.clone(), &self.r.identity())
    }

    pub fn is_unit(&self, x: &WeylMonoidElement) -> bool {
        x.face.is_whole_cone()
    }

    /// `(R, σ)(S, τ) = (R ∩ σS, στ)`.
    pub fn multiply(&self, x: &WeylMonoidElement, y: &WeylMonoidElement) -> Result<(WeylMonoidElement, IntersectStatus)> {
        self.r.check_same(&x.sigma)?;
        self.r.check_same(&y.sigma)?;
        let moved = self.r.translate(&x.sigma, &y.face);
        let (face, status) = self.r.face_intersect(&x.face, &moved, self.budget)?;
        Ok((self.element(face, &x.sigma.mul(&y.sigma)), status))
    }

    /// Left-to-right product of a sequence, starting from the unit.
    pub fn product<'a>(&self, items: impl IntoIterator<Item = &'a WeylMonoidElement>) -> Result<(WeylMonoidElement, IntersectStatus)> {
        let mut acc = self.unit();
        let mut status = IntersectStatus::Exact;
        for x in items {
            let (next, s) = self.multiply(&acc, x)?;
            acc = next;
            status = status.and(s);
        }
        Ok((acc, status))
    }

    pub fn equals(&self, x: &WeylMonoidElement, y: &WeylMonoidElement) -> bool {
        x == y
    }

    /// The special set labelling the `W×W`-orbit of `x`.
    pub fn orbit_label(&self, x: &WeylMonoidElement) -> IndexSet {
        x.face.theta
    }

    pub fn normal_form(&self, x: &WeylMonoidElement, flavor: NormalFormFlavor) -> NormalForm {
        let theta = x.face.theta;
        let w = &x.face.w;
        let s = w.inverse().mul(&x.sigma);
        match flavor {
            NormalFormFlavor::Type1 => NormalForm { flavor, sigma1: w.clone(), theta, sigma2: s },
            NormalFormFlavor::Type2 => {
                // s = m·τ2 with m ∈ W_K; m moves across ⟨R(Θ)⟩ and W_Θ is absorbed.
                let k = theta.union(self.r.gcm().orthogonal_complement(theta));
                let (m, tau2) = self.r.coset_decompose_left(&s, k);
                let tau1 = self.r.min_coset_rep_right(&w.mul(&m), theta);
                NormalForm { flavor, sigma1: tau1, theta, sigma2: tau2 }
            }
        }
    }

    /// `σ1·⟨R(Θ)⟩·σ2 = ⟨σ1R(Θ)⟩σ1σ2`.
    pub fn reassemble(&self, nf: &NormalForm) -> WeylMonoidElement {
        let face = self.r.canonical_face(&nf.sigma1, nf.theta);
        self.element(face, &nf.sigma1.mul(&nf.sigma2))
    }

    /// Whether `nf` satisfies the coset minimality conditions of its flavor.
    pub fn is_normal(&self, nf: &NormalForm) -> bool {
        let k = nf.theta.union(self.r.gcm().orthogonal_complement(nf.theta));
        let (right, left) = match nf.flavor {
            NormalFormFlavor::Type1 => (k, nf.theta),
            NormalFormFlavor::Type2 => (nf.theta, k),
        };
        self.r.right_descents(&nf.sigma1).is_disjoint(right) && self.r.left_descents(&nf.sigma2).is_disjoint(left)
    }

    /// A witness for `x ∈ Ŵ_J`, or `None`.
    pub fn parabolic_decompose(&self, x: &WeylMonoidElement, j: IndexSet) -> Option<ParabolicWitness> {
        let theta = x.face.theta;
        if !theta.is_subset(self.r.gcm().infinite_part(j)) {
            return None;
        }
        // Minimal coset representatives of elements of W_J stay in W_J.
        let w = &x.face.w;
        let s = w.inverse().mul(&x.sigma);
        (self.r.is_in_parabolic(w, j) && self.r.is_in_parabolic(&s, j))
            .then(|| ParabolicWitness { u: w.clone(), xi: theta, v: s })
    }

    /// All classes `σ1·⟨R(Θ)⟩·σ2` in Type1 normal form with
    /// `ℓ(σ1) + ℓ(σ2) ≤ bound`, ordered by `(|Θ|, Θ, length, word)`.
    pub fn enumerate(&self, bound: usize) -> Vec<WeylMonoidElement> {
        let r = self.r;
        let all: Vec<(usize, WeylElement, Vec<usize>)> = r
            .shells(r.gcm().index_set(), bound)
            .into_iter()
            .enumerate()
            .flat_map(|(len, shell)| shell.into_iter().map(move |x| (len, x)))
            .map(|(len, x)| {
                let word = r.reduced_word(&x);
                (len, x, word)
            })
            .collect();
        let mut keyed = Vec::new();
        for special in r.gcm().enumerate_special() {
            let theta = special.theta;
            let k = theta.union(r.gcm().orthogonal_complement(theta));
            let lefts: Vec<_> = all.iter().filter(|(_, x, _)| r.right_descents(x).is_disjoint(k)).collect();
            let rights: Vec<_> = all.iter().filter(|(_, x, _)| r.left_descents(x).is_disjoint(theta)).collect();
            for (l1, w, word1) in &lefts {
                for (l2, s, word2) in &rights {
                    if l1 + l2 > bound {
                        continue;
                    }
                    let face = Face { theta, w: w.clone() };
                    let x = WeylMonoidElement { face, sigma: w.mul(s) };
                    keyed.push(((theta.sort_key(), l1 + l2, word1.clone(), word2.clone()), x));
                }
            }
        }
        keyed.sort_by(|a, b| a.0.cmp(&b.0));
        keyed.into_iter().map(|(_, x)| x).collect()
    }

    /// The action on `λ ∈ X`: `σλ` if it lies in `R`, otherwise `None`.
    pub fn apply(&self, x: &WeylMonoidElement, lambda: &WeightVector) -> Result<Option<WeightVector>> {
        self.r.smallest_face(lambda)?;
        let image = x.sigma.act_weight(lambda);
        Ok(self.r.contains_point(&x.face, &image)?.then_some(image))
    }

    /// Space-separated word `s.. e[..] s..` of the Type1 normal form, 1-based.
    /// The unit prints as `e[]`.
    pub fn word(&self, x: &WeylMonoidElement) -> String {
        let nf = self.normal_form(x, NormalFormFlavor::Type1);
        let letters = |y: &WeylElement| self.r.reduced_word(y).into_iter().map(|i| format!("s{}", i + 1)).collect_vec();
        let mut tokens = letters(&nf.sigma1);
        if !nf.theta.is_empty() {
            tokens.push(format!("e[{}]", nf.theta.to_one_based().iter().join(",")));
        }
        tokens.extend(letters(&nf.sigma2));
        if tokens.is_empty() {
            "e[]".to_string()
        } else {
            tokens.join(" ")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn real(name: &str) -> Realization {
        Realization::new(catalog::by_name(name).unwrap())
    }

    #[test]
    fn unit_and_group_part() {
        let r = real("A2");
        let m = WeylMonoid::new(&r);
        let s1 = r.simple_reflection(0).unwrap();
        let s2 = r.simple_reflection(1).unwrap();
        let (p, st) = m.multiply(&m.from_weyl(&s1), &m.from_weyl(&s2)).unwrap();
        assert_eq!(st, IntersectStatus::Exact);
        assert_eq!(p, m.from_weyl(&s1.mul(&s2)));
        assert_eq!(m.multiply(&m.unit(), &p).unwrap().0, p);
        assert_eq!(m.enumerate(3).len(), 6);
        assert_eq!(m.word(&m.unit()), "e[]");
        assert_eq!(m.idempotent(&r.whole_cone()), m.unit());
    }

    #[test]
    fn affine_absorbing_idempotent() {
        let r = real("A1~");
        let m = WeylMonoid::new(&r);
        let e = m.idempotent(&r.standard_face(IndexSet::full(2)).unwrap());
        let s1 = m.from_weyl(&r.simple_reflection(0).unwrap());
        let (es, _) = m.multiply(&e, &s1).unwrap();
        assert_eq!(es, e);
        let (se, _) = m.multiply(&s1, &e).unwrap();
        assert_eq!(se, e);
        let nf = m.normal_form(&es, NormalFormFlavor::Type1);
        assert!(nf.sigma1.is_identity() && nf.sigma2.is_identity());
        assert_eq!(m.word(&e), "e[1,2]");
        for k in 0..5 {
            assert_eq!(m.enumerate(k).len(), 2 * k + 2);
        }
    }

    #[test]
    fn apply_on_affine_weights() {
        let r = real("A1~");
        let m = WeylMonoid::new(&r);
        let e = m.idempotent(&r.standard_face(IndexSet::full(2)).unwrap());
        let l3 = r.fundamental_weight(2);
        assert_eq!(m.apply(&e, &l3).unwrap(), Some(l3.clone()));
        assert_eq!(m.apply(&e, &r.fundamental_weight(0)).unwrap(), None);
        assert_eq!(m.apply(&m.unit(), &l3).unwrap(), Some(l3));
    }

    #[test]
    fn parabolic_membership() {
        let r = real("A1~");
        let m = WeylMonoid::new(&r);
        let e = m.idempotent(&r.standard_face(IndexSet::full(2)).unwrap());
        let j1 = IndexSet::singleton(0);
        assert!(m.parabolic_decompose(&e, j1).is_none());
        assert!(m.parabolic_decompose(&e, IndexSet::full(2)).is_some());
        let s1 = m.from_weyl(&r.simple_reflection(0).unwrap());
        let s2 = m.from_weyl(&r.simple_reflection(1).unwrap());
        assert!(m.parabolic_decompose(&s1, j1).is_some());
        assert!(m.parabolic_decompose(&s2, j1).is_none());
        assert!(m.parabolic_decompose(&m.unit(), IndexSet::empty()).is_some());
    }

    #[test]
    fn normal_forms_on_tail_matrix() {
        let r = real("A1~-tail");
        let m = WeylMonoid::new(&r);
        for x in m.enumerate(4) {
            for flavor in [NormalFormFlavor::Type1, NormalFormFlavor::Type2] {
                let nf = m.normal_form(&x, flavor);
                assert!(m.is_normal(&nf), "{nf:?}");
                assert_eq!(m.reassemble(&nf), x);
            }
        }
    }
}
