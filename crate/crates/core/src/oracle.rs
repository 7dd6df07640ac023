//! An extensional model of the Weyl monoid: partial maps on a finite,
//! orbit-closed sample of integral points of the Tits cone.
//!
//! Nothing here uses the canonical forms or face intersections of
//! [`crate::monoid`]. A class `⟨wR(Θ)⟩σ` sends `λ` to `σλ` when
//! `w⁻¹σλ` vanishes on `h_i` for all `i ∈ Θ`, and is undefined otherwise.

use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::hash::{Hash, Hasher};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::faces::IntersectStatus;
use crate::index_set::IndexSet;
use crate::monoid::{WeylMonoid, WeylMonoidElement};
use crate::realization::{Realization, WeightVector};

/// Default cap on the number of sample points.
pub const DEFAULT_SAMPLE_CAP: usize = 100_000;

/// Integral points of the Tits cone, closed under words of length at most
/// `depth` applied to the generating dominant points.
#[derive(Debug, Clone)]
pub struct WeightSample {
    points: Vec<Vec<i64>>,
    index: HashMap<Vec<i64>, usize>,
    depth: usize,
    fingerprint: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum MapValue {
    Undefined,
    Value(Vec<i64>),
    /// The composite left the sample, so the value is not determined.
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialMap {
    sample: u64,
    values: Vec<MapValue>,
}

impl WeightSample {
    /// Orbits of `p_Θ` for special `Θ` and of the fundamental weights under
    /// words of length at most `depth`.
    pub fn build(r: &Realization, depth: usize, cap: usize) -> Result<Self> {
        let mut seeds: Vec<Vec<i64>> =
            r.gcm().enumerate_special().iter().map(|s| Self::dominant_point(r, s.theta)).collect();
        seeds.extend((0..r.dim()).map(|i| (0..r.dim()).map(|k| i64::from(k == i)).collect()));
        Self::from_seeds(r, seeds, depth, cap)
    }

    /// Like [`WeightSample::build`], seeded additionally by `p_J` for every
    /// `J ⊆ I`.
    pub fn build_with_all_facets(r: &Realization, depth: usize, cap: usize) -> Result<Self> {
        let mut seeds: Vec<Vec<i64>> = r.gcm().index_set().subsets().map(|j| Self::dominant_point(r, j)).collect();
        seeds.extend((0..r.dim()).map(|i| (0..r.dim()).map(|k| i64::from(k == i)).collect()));
        Self::from_seeds(r, seeds, depth, cap)
    }

    fn dominant_point(r: &Realization, j: IndexSet) -> Vec<i64> {
        (0..r.dim()).map(|i| i64::from(!j.contains(i))).collect()
    }

    fn from_seeds(r: &Realization, seeds: Vec<Vec<i64>>, depth: usize, cap: usize) -> Result<Self> {
        let mut points: Vec<Vec<i64>> = Vec::new();
        let mut index = HashMap::new();
        let mut push = |p: Vec<i64>, points: &mut Vec<Vec<i64>>| -> Result<bool> {
            if index.contains_key(&p) {
                return Ok(false);
            }
            if points.len() == cap {
                return Err(Error::SampleOverflow(cap));
            }
            index.insert(p.clone(), points.len());
            points.push(p);
            Ok(true)
        };
        let mut frontier = Vec::new();
        for s in seeds {
            if push(s.clone(), &mut points)? {
                frontier.push(s);
            }
        }
        for _ in 0..depth {
            let mut next = Vec::new();
            for p in &frontier {
                for i in 0..r.n() {
                    let q = r.simple_reflection(i)?.act_ints(p);
                    if push(q.clone(), &mut points)? {
                        next.push(q);
                    }
                }
            }
            frontier = next;
        }
        let mut h = DefaultHasher::new();
        points.hash(&mut h);
        let fingerprint = h.finish();
        Ok(WeightSample { points, index, depth, fingerprint })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn contains(&self, lambda: &WeightVector) -> bool {
        lambda.to_ints().is_some_and(|v| self.index.contains_key(&v))
    }

    pub fn points(&self) -> impl Iterator<Item = WeightVector> + '_ {
        self.points.iter().map(|p| WeightVector::from_ints(p))
    }

    /// The partial map of `x` on this sample.
    pub fn to_partial_map(&self, x: &WeylMonoidElement) -> PartialMap {
        let w_inv = x.face().w.inverse();
        let theta = x.face().theta;
        let values = self
            .points
            .iter()
            .map(|p| {
                let image = x.sigma().act_ints(p);
                let back = w_inv.act_ints(&image);
                if theta.iter().all(|i| back[i] == 0) {
                    MapValue::Value(image)
                } else {
                    MapValue::Undefined
                }
            })
            .collect();
        PartialMap { sample: self.fingerprint, values }
    }

    /// `f ∘ g`: apply `g` first.
    pub fn compose(&self, f: &PartialMap, g: &PartialMap) -> Result<PartialMap> {
        if f.sample != self.fingerprint || g.sample != self.fingerprint {
            return Err(Error::SampleMismatch);
        }
        let values = g
            .values
            .iter()
            .map(|v| match v {
                MapValue::Value(mu) => match self.index.get(mu) {
                    Some(&k) => f.values[k].clone(),
                    None => MapValue::Unknown,
                },
                other => other.clone(),
            })
            .collect();
        Ok(PartialMap { sample: self.fingerprint, values })
    }
}

impl PartialMap {
    pub fn values(&self) -> &[MapValue] {
        &self.values
    }

    pub fn domain_size(&self) -> usize {
        self.values.iter().filter(|v| matches!(v, MapValue::Value(_))).count()
    }

    /// Equal at every point where both values are determined.
    pub fn agrees_where_known(&self, other: &PartialMap) -> Result<bool> {
        if self.sample != other.sample {
            return Err(Error::SampleMismatch);
        }
        Ok(self.values.iter().zip(&other.values).all(|(a, b)| {
            matches!(a, MapValue::Unknown) || matches!(b, MapValue::Unknown) || a == b
        }))
    }

    pub fn unknown_count(&self) -> usize {
        self.values.iter().filter(|v| matches!(v, MapValue::Unknown)).count()
    }
}

/// Composition of partial maps, `f` after `g`.
pub fn oracle_multiply(sample: &WeightSample, f: &PartialMap, g: &PartialMap) -> Result<PartialMap> {
    sample.compose(f, g)
}

/// Extensional equality on the sample. `true` means equal on the sample only.
pub fn oracle_equal(f: &PartialMap, g: &PartialMap) -> Result<bool> {
    if f.sample != g.sample {
        return Err(Error::SampleMismatch);
    }
    Ok(f.values == g.values)
}

/// Summary of comparing the monoid against the partial-map model on all
/// ordered pairs of a bounded enumeration.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CrossCheckReport {
    pub elements: usize,
    pub sample_points: usize,
    pub pairs: usize,
    pub exact_products: usize,
    pub budget_exhausted: usize,
    pub composition_mismatches: usize,
    pub equality_disagreements: usize,
}

impl CrossCheckReport {
    pub fn is_clean(&self) -> bool {
        self.composition_mismatches == 0 && self.equality_disagreements == 0
    }
}

/// Checks that products match composition and that equality matches
/// extensional equality, over all pairs of `elements`.
pub fn cross_check(m: &WeylMonoid<'_>, elements: &[WeylMonoidElement], sample: &WeightSample) -> Result<CrossCheckReport> {
    let maps: Vec<PartialMap> = elements.iter().map(|x| sample.to_partial_map(x)).collect();
    let mut report = CrossCheckReport {
        elements: elements.len(),
        sample_points: sample.len(),
        ..CrossCheckReport::default()
    };
    for (x, fx) in elements.iter().zip(&maps) {
        for (y, fy) in elements.iter().zip(&maps) {
            report.pairs += 1;
            if m.equals(x, y) != oracle_equal(fx, fy)? {
                report.equality_disagreements += 1;
            }
            let (xy, status) = m.multiply(x, y)?;
            if status == IntersectStatus::BudgetExhausted {
                report.budget_exhausted += 1;
                continue;
            }
            report.exact_products += 1;
            let composed = sample.compose(fx, fy)?;
            if !sample.to_partial_map(&xy).agrees_where_known(&composed)? {
                report.composition_mismatches += 1;
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::faces::vanishes_on;

    fn real(name: &str) -> Realization {
        Realization::new(catalog::by_name(name).unwrap())
    }

    #[test]
    fn finite_orbits() {
        let r = real("A2");
        let s = WeightSample::build(&r, 3, DEFAULT_SAMPLE_CAP).unwrap();
        for i in 0..2 {
            let l = r.fundamental_weight(i);
            let orbit: Vec<_> = r.shells(r.gcm().index_set(), 3).into_iter().flatten().map(|w| w.act_weight(&l)).collect();
            assert!(orbit.iter().all(|p| s.contains(p)));
        }
        // Orbits of Λ_1, Λ_2 (3 each) and of Λ_1 + Λ_2 (6).
        assert_eq!(s.len(), 12);
        assert!(matches!(WeightSample::build(&r, 3, 5), Err(Error::SampleOverflow(5))));
    }

    #[test]
    fn affine_fixed_point() {
        let r = real("A1~");
        let s = WeightSample::build(&r, 2, DEFAULT_SAMPLE_CAP).unwrap();
        assert!(s.contains(&r.fundamental_weight(2)));
        assert!(s.contains(&r.facet_point(IndexSet::full(2))));
        let m = WeylMonoid::new(&r);
        let e = m.idempotent(&r.standard_face(IndexSet::full(2)).unwrap());
        let f = s.to_partial_map(&e);
        for (p, v) in s.points().zip(f.values()) {
            let on_face = vanishes_on(&p, IndexSet::full(2));
            assert_eq!(matches!(v, MapValue::Value(_)), on_face);
        }
        let es = m.multiply(&e, &m.from_weyl(&r.simple_reflection(0).unwrap())).unwrap().0;
        assert!(oracle_equal(&s.to_partial_map(&es), &f).unwrap());
    }

    #[test]
    fn composition_identities() {
        let r = real("B2");
        let s = WeightSample::build(&r, 4, DEFAULT_SAMPLE_CAP).unwrap();
        let m = WeylMonoid::new(&r);
        let id = s.to_partial_map(&m.unit());
        let f = s.to_partial_map(&m.from_weyl(&r.from_word(&[0, 1]).unwrap()));
        assert_eq!(oracle_multiply(&s, &f, &id).unwrap(), f);
        assert_eq!(oracle_multiply(&s, &id, &f).unwrap(), f);
        let other = WeightSample::build(&r, 2, DEFAULT_SAMPLE_CAP).unwrap();
        assert_eq!(other.compose(&f, &id), Err(Error::SampleMismatch));
    }

    #[test]
    fn cross_check_small() {
        let r = real("A1~+A1");
        let m = WeylMonoid::new(&r);
        let s = WeightSample::build(&r, 6, DEFAULT_SAMPLE_CAP).unwrap();
        let report = cross_check(&m, &m.enumerate(2), &s).unwrap();
        assert!(report.is_clean(), "{report:?}");
        assert_eq!(report.budget_exhausted, 0);
    }
}
