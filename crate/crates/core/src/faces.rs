//! Tits cone geometry: chamber descent, facets and faces `w·R(Θ)`.
//!
//! A face is stored as a special set `Θ` and a Weyl element `w` that is
//! minimal in its coset `w·W_{Θ∪Θ^⊥}`; this pair is unique for each face.

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::index_set::IndexSet;
use crate::realization::{Realization, WeightVector};
use crate::weyl::WeylElement;
use crate::{Rational, DEFAULT_DESCENT_BUDGET};

/// Outcome of chamber descent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MembershipResult {
    /// `w·dominant` is the input and `dominant` lies in the closed chamber.
    InCone { w: WeylElement, dominant: WeightVector },
    /// The pairing with the kernel coweight of an affine component rules the
    /// point out.
    NotInCone(NonMembership),
    Unknown { steps: usize },
}

/// Certificate for a point outside the Tits cone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonMembership {
    /// Affine component whose kernel coweight `c` certifies the verdict.
    pub component: IndexSet,
    /// `λ(c)`; negative, or zero while `λ` is nonzero on the component.
    pub kernel_pairing: Rational,
}

/// `w·F_J` with `w` minimal in `w·W_J`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Facet {
    pub w: WeylElement,
    pub j: IndexSet,
}

/// The face `w·R(Θ)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Face {
    pub theta: IndexSet,
    pub w: WeylElement,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum IntersectStatus {
    Exact,
    BudgetExhausted,
}

impl IntersectStatus {
    pub fn and(self, other: IntersectStatus) -> IntersectStatus {
        if self == IntersectStatus::Exact {
            other
        } else {
            self
        }
    }
}

impl Face {
    /// Dimension of the linear span, `dim h* - |Θ|`.
    pub fn dim(&self) -> usize {
        self.w.dim() - self.theta.len()
    }

    pub fn is_whole_cone(&self) -> bool {
        self.theta.is_empty()
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "R({})", self.theta)
    }
}

fn to_i64(x: &num_bigint::BigInt) -> i64 {
    i64::try_from(x).expect("weight coordinate overflow")
}

impl Realization {
    /// Chamber descent by the smallest-index rule.
    pub fn to_dominant(&self, lambda: &WeightVector, budget: usize) -> Result<MembershipResult> {
        self.check_weight(lambda)?;
        let den = lambda.0.iter().fold(num_bigint::BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let ints: Vec<i64> = lambda.0.iter().map(|x| to_i64(&(x * Rational::from_integer(den.clone())).to_integer())).collect();
        Ok(match self.descend_ints(&ints, budget) {
            Descent::Dominant { word, dominant } => {
                let scale = Rational::new(num_bigint::BigInt::one(), den);
                let dominant = WeightVector::from_ints(&dominant).scale(&scale);
                MembershipResult::InCone { w: self.from_word(&word)?, dominant }
            }
            Descent::Outside(mut cert) => {
                cert.kernel_pairing /= Rational::from_integer(den);
                MembershipResult::NotInCone(cert)
            }
            Descent::Unknown(steps) => MembershipResult::Unknown { steps },
        })
    }

    /// Descent on an integral coordinate vector. The returned word `w`
    /// satisfies `w·dominant = λ`.
    pub(crate) fn descend_ints(&self, lambda: &[i64], budget: usize) -> Descent {
        for comp in &self.components {
            let Some(c) = &comp.kernel else { continue };
            let pairing: i64 = comp.set.iter().map(|i| c[i] * lambda[i]).sum();
            let vanishes = comp.set.iter().all(|i| lambda[i] == 0);
            if pairing < 0 || (pairing == 0 && !vanishes) {
                return Descent::Outside(NonMembership {
                    component: comp.set,
                    kernel_pairing: Rational::from_integer(pairing.into()),
                });
            }
        }
        let mut cur = lambda.to_vec();
        let mut word = Vec::new();
        while let Some(i) = (0..self.n()).find(|&i| cur[i] < 0) {
            if word.len() >= budget {
                return Descent::Unknown(word.len());
            }
            let c = cur[i];
            for (x, a) in cur.iter_mut().zip(self.simple_root_ints(i)) {
                *x -= c * a;
            }
            word.push(i);
        }
        Descent::Dominant { word, dominant: cur }
    }

    fn descend_or_err(&self, lambda: &[i64]) -> Result<(Vec<usize>, Vec<i64>)> {
        match self.descend_ints(lambda, DEFAULT_DESCENT_BUDGET) {
            Descent::Dominant { word, dominant } => Ok((word, dominant)),
            _ => Err(Error::NotInConeOrUnknown),
        }
    }

    fn facet_of_ints(&self, lambda: &[i64]) -> Result<Facet> {
        let (word, dominant) = self.descend_or_err(lambda)?;
        let j: IndexSet = (0..self.n()).filter(|&i| dominant[i] == 0).collect();
        let w = self.min_coset_rep_right(&self.from_word(&word)?, j);
        Ok(Facet { w, j })
    }

    fn integral_multiple(&self, lambda: &WeightVector) -> Result<Vec<i64>> {
        self.check_weight(lambda)?;
        let den = lambda.0.iter().fold(num_bigint::BigInt::one(), |acc, x| acc.lcm(x.denom()));
        Ok(lambda.0.iter().map(|x| to_i64(&(x * Rational::from_integer(den.clone())).to_integer())).collect())
    }

    /// The facet containing `λ`.
    pub fn facet_of(&self, lambda: &WeightVector) -> Result<Facet> {
        self.facet_of_ints(&self.integral_multiple(lambda)?)
    }

    /// The smallest face of the Tits cone containing `λ`.
    pub fn smallest_face(&self, lambda: &WeightVector) -> Result<Face> {
        self.smallest_face_ints(&self.integral_multiple(lambda)?)
    }

    pub(crate) fn smallest_face_ints(&self, lambda: &[i64]) -> Result<Face> {
        let facet = self.facet_of_ints(lambda)?;
        Ok(self.canonical_face(&facet.w, self.gcm().infinite_part(facet.j)))
    }

    /// `w·R(Θ)` with `w` reduced to the minimal element of `w·W_{Θ∪Θ^⊥}`.
    /// `theta` must be special.
    pub fn canonical_face(&self, w: &WeylElement, theta: IndexSet) -> Face {
        let k = theta.union(self.gcm().orthogonal_complement(theta));
        Face { theta, w: self.min_coset_rep_right(w, k) }
    }

    /// The standard face `R(Θ)`.
    pub fn standard_face(&self, theta: IndexSet) -> Result<Face> {
        self.gcm().special_set(theta)?;
        Ok(Face { theta, w: self.identity() })
    }

    /// The face `X`.
    pub fn whole_cone(&self) -> Face {
        Face { theta: IndexSet::empty(), w: self.identity() }
    }

    /// `σ·F`.
    pub fn translate(&self, sigma: &WeylElement, face: &Face) -> Face {
        self.canonical_face(&sigma.mul(&face.w), face.theta)
    }

    pub(crate) fn relint_ints(&self, face: &Face) -> Vec<i64> {
        let p: Vec<i64> = (0..self.dim()).map(|i| i64::from(!face.theta.contains(i))).collect();
        face.w.act_ints(&p)
    }

    /// A point of the relative interior: `w·Σ_{i∉Θ} Λ_i`.
    pub fn relint_point(&self, face: &Face) -> WeightVector {
        WeightVector::from_ints(&self.relint_ints(face))
    }

    /// The smallest face containing both faces.
    pub fn face_join(&self, a: &Face, b: &Face) -> Result<Face> {
        self.check_same(&a.w)?;
        self.check_same(&b.w)?;
        if a == b {
            return Ok(a.clone());
        }
        let p: Vec<i64> = self.relint_ints(a).iter().zip(self.relint_ints(b)).map(|(x, y)| x + y).collect();
        self.smallest_face_ints(&p)
    }

    /// `F ⊆ G`.
    pub fn face_contains(&self, outer: &Face, inner: &Face) -> Result<bool> {
        Ok(self.face_join(outer, inner)? == *outer)
    }

    /// Whether `λ` lies in `F`: `w⁻¹λ` is in the cone and vanishes on `h_i`
    /// for `i ∈ Θ`.
    pub fn contains_point(&self, face: &Face, lambda: &WeightVector) -> Result<bool> {
        let v = self.integral_multiple(lambda)?;
        let u = face.w.inverse().act_ints(&v);
        if face.theta.iter().any(|i| u[i] != 0) {
            return Ok(false);
        }
        match self.descend_ints(&u, DEFAULT_DESCENT_BUDGET) {
            Descent::Dominant { .. } => Ok(true),
            Descent::Outside(_) => Ok(false),
            Descent::Unknown(_) => Err(Error::NotInConeOrUnknown),
        }
    }

    /// `F1 ∩ F2`.
    ///
    /// Writing `F1 = w1·R(Θ1)`, `F2 = w2·R(Θ2)` and `K = Θ ∪ Θ^⊥`, the element
    /// `w1⁻¹w2` is reduced to its minimal double coset representative `τ` in
    /// `W_{K1} \ W / W_{K2}`. Then `R(Θ1) ∩ τR(Θ2)` is the union over
    /// `a ∈ W_{Θ1^⊥}` of the closed facets `a·F̄_{K0}`, where `K0` is `Θ1`
    /// together with the supports of the coroots `a⁻¹τ·h_j`, `j ∈ Θ2`, and the
    /// intersection is the join of their smallest faces. Elements `a` of
    /// length at most `ℓ(τ)` already produce every facet that matters, so the
    /// scan is exact once it reaches that length; below it, exactness is
    /// certified when the join already spans the linear intersection.
    pub fn face_intersect(&self, f1: &Face, f2: &Face, budget: usize) -> Result<(Face, IntersectStatus)> {
        self.check_same(&f1.w)?;
        self.check_same(&f2.w)?;
        if f1 == f2 || f2.is_whole_cone() {
            return Ok((f1.clone(), IntersectStatus::Exact));
        }
        if f1.is_whole_cone() {
            return Ok((f2.clone(), IntersectStatus::Exact));
        }
        let gcm = self.gcm();
        let (t1, t2) = (f1.theta, f2.theta);
        let perp1 = gcm.orthogonal_complement(t1);
        let k1 = t1.union(perp1);
        let k2 = t2.union(gcm.orthogonal_complement(t2));
        let sigma = f1.w.inverse().mul(&f2.w);
        let (c, tau) = self.double_coset_decompose(&sigma, k1, k2);
        let tau_len = self.length(&tau);

        let reach = tau_len.min(budget);
        let shells = self.shells(perp1, reach);
        let exhausted_group = shells.len() <= reach;
        let mut acc: Option<Face> = None;
        for a in shells.iter().flatten() {
            let m = a.inverse().mul(&tau);
            let mut k0 = t1;
            for j in t2.iter() {
                let mut e = vec![0; self.dim()];
                e[j] = 1;
                let g = m.act_coweight(&e);
                for (i, &x) in g.iter().enumerate() {
                    if x != 0 {
                        k0.insert(i);
                    }
                }
            }
            let candidate = self.canonical_face(a, gcm.infinite_part(k0));
            acc = Some(match acc {
                None => candidate,
                Some(prev) => self.face_join(&prev, &candidate)?,
            });
        }
        let g0 = acc.expect("the identity is always scanned");
        let status = if reach == tau_len || exhausted_group || g0.dim() == self.intersection_span_dim(t1, &tau, t2) {
            IntersectStatus::Exact
        } else {
            IntersectStatus::BudgetExhausted
        };
        let lead = f1.w.mul(&c);
        Ok((self.translate(&lead, &g0), status))
    }

    /// `dim {λ : λ(h_i) = 0 for i ∈ Θ1, λ(τh_j) = 0 for j ∈ Θ2}`.
    fn intersection_span_dim(&self, t1: IndexSet, tau: &WeylElement, t2: IndexSet) -> usize {
        let d = self.dim();
        let mut rows: Vec<Vec<Rational>> = Vec::new();
        let unit = |j: usize| (0..d).map(|k| i64::from(k == j)).collect::<Vec<i64>>();
        for i in t1.iter() {
            rows.push(unit(i).into_iter().map(|x| Rational::from_integer(x.into())).collect());
        }
        for j in t2.iter() {
            rows.push(tau.act_coweight(&unit(j)).into_iter().map(|x| Rational::from_integer(x.into())).collect());
        }
        if rows.is_empty() {
            return d;
        }
        d - crate::linalg::rank(&crate::Matrix::from_rows(&rows))
    }
}

pub(crate) enum Descent {
    Dominant { word: Vec<usize>, dominant: Vec<i64> },
    Outside(NonMembership),
    Unknown(usize),
}

/// `λ(h_i) ≥ 0` for every simple coroot.
pub fn is_dominant(r: &Realization, lambda: &WeightVector) -> bool {
    lambda.0.iter().take(r.n()).all(|x| !x.is_negative())
}

/// `true` when `λ` pairs to zero with every simple coroot of `J`.
pub fn vanishes_on(lambda: &WeightVector, j: IndexSet) -> bool {
    j.iter().all(|i| lambda.0[i].is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn real(name: &str) -> Realization {
        Realization::new(catalog::by_name(name).unwrap())
    }

    #[test]
    fn dominant_points_are_fixed() {
        let r = real("A2");
        let l = r.fundamental_weight(0);
        match r.to_dominant(&l, 10).unwrap() {
            MembershipResult::InCone { w, dominant } => {
                assert!(w.is_identity());
                assert_eq!(dominant, l);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn descent_from_a_reflected_weight() {
        let r = real("A2");
        let s1 = r.simple_reflection(0).unwrap();
        let l = s1.act_weight(&r.fundamental_weight(0));
        assert_eq!(l, &r.fundamental_weight(0) - &r.simple_root(0));
        match r.to_dominant(&l, 10).unwrap() {
            MembershipResult::InCone { w, dominant } => {
                assert_eq!(w, s1);
                assert_eq!(dominant, r.fundamental_weight(0));
            }
            other => panic!("{other:?}"),
        }
        let facet = r.facet_of(&l).unwrap();
        assert_eq!(facet, Facet { w: s1, j: IndexSet::singleton(1) });
    }

    #[test]
    fn affine_points_outside_the_cone() {
        let r = real("A1~");
        let l = WeightVector::from_ints(&[-1, 0, 0]);
        assert!(matches!(r.to_dominant(&l, 100).unwrap(), MembershipResult::NotInCone(_)));
        let l = WeightVector::from_ints(&[1, -1, 0]);
        assert!(matches!(r.to_dominant(&l, 100).unwrap(), MembershipResult::NotInCone(_)));
        assert_eq!(r.smallest_face(&l), Err(Error::NotInConeOrUnknown));
        assert!(matches!(r.to_dominant(&WeightVector::from_ints(&[1]), 1), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn indefinite_descent_can_run_out() {
        let r = real("H2(3,2)");
        // A point below the imaginary cone never reaches the chamber.
        let l = WeightVector::from_ints(&[-1, -1]);
        assert!(matches!(r.to_dominant(&l, 50).unwrap(), MembershipResult::Unknown { steps: 50 }));
    }

    #[test]
    fn standard_facets_and_faces() {
        let r = real("A1~");
        let zero = r.zero_weight();
        assert_eq!(r.facet_of(&zero).unwrap().j, IndexSet::full(2));
        let interior = r.facet_point(IndexSet::empty());
        assert_eq!(r.facet_of(&interior).unwrap(), Facet { w: r.identity(), j: IndexSet::empty() });
        let l3 = r.fundamental_weight(2);
        let f = r.smallest_face(&l3).unwrap();
        assert_eq!(f, r.standard_face(IndexSet::full(2)).unwrap());
        assert_eq!(r.relint_point(&f), l3);

        let r = real("A2");
        assert_eq!(r.smallest_face(&r.fundamental_weight(1)).unwrap(), r.whole_cone());
    }

    #[test]
    fn joins() {
        let r = real("A1~");
        let x = r.whole_cone();
        let ri = r.standard_face(IndexSet::full(2)).unwrap();
        assert_eq!(r.face_join(&ri, &x).unwrap(), x);
        assert_eq!(r.face_join(&ri, &ri).unwrap(), ri);
        assert!(r.face_contains(&x, &ri).unwrap());
        assert!(!r.face_contains(&ri, &x).unwrap());
    }

    #[test]
    fn intersections_of_nested_and_translated_faces() {
        let r = real("A1~");
        let x = r.whole_cone();
        let ri = r.standard_face(IndexSet::full(2)).unwrap();
        assert_eq!(r.face_intersect(&x, &ri, 8).unwrap(), (ri.clone(), IntersectStatus::Exact));
        let s1 = r.simple_reflection(0).unwrap();
        assert_eq!(r.translate(&s1, &ri), ri);

        let r = real("A1~-tail");
        let t = IndexSet::from_one_based(&[1, 2]).unwrap();
        let f = r.standard_face(t).unwrap();
        let s3 = r.simple_reflection(2).unwrap();
        let g = r.translate(&s3, &f);
        assert_ne!(f, g);
        let (meet, status) = r.face_intersect(&f, &g, 8).unwrap();
        assert_eq!(status, IntersectStatus::Exact);
        assert_eq!(meet, r.standard_face(IndexSet::full(3)).unwrap());
    }

    #[test]
    fn membership_of_relative_interior_points() {
        let r = real("A1~-tail");
        let t = IndexSet::from_one_based(&[1, 2]).unwrap();
        let f = r.standard_face(t).unwrap();
        assert!(r.contains_point(&f, &r.relint_point(&f)).unwrap());
        assert!(!r.contains_point(&f, &r.relint_point(&r.whole_cone())).unwrap());
        assert!(is_dominant(&r, &r.relint_point(&f)));
        assert!(vanishes_on(&r.relint_point(&f), t));
    }
}
