//! Index data of the orbit stratification: the closure order on special
//! sets, orbit labels of monoid elements, principal open index sets and
//! finite big-cell proxies, with DOT and JSON output.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::index_set::IndexSet;
use crate::monoid::{WeylMonoid, WeylMonoidElement};
use crate::realization::Realization;

/// One `W×W`-orbit, labelled by a special set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitStratum {
    pub theta: IndexSet,
    /// Special sets containing `theta`; their orbits form the closure.
    pub closure: Vec<IndexSet>,
    /// `dim h* - |Θ|`.
    pub torus_rank: usize,
    /// Special sets contained in `theta`.
    pub slice_specials: Vec<IndexSet>,
}

/// Special sets ordered by inclusion, with covering pairs as indices into
/// `specials`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitPoset {
    pub specials: Vec<IndexSet>,
    pub hasse: Vec<(usize, usize)>,
    pub strata: Vec<OrbitStratum>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BirkhoffStratum {
    pub element: WeylMonoidElement,
    pub orbit: IndexSet,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StratumCount {
    pub theta: IndexSet,
    pub count: usize,
}

/// Finite data attached to the big cell of a special set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BigCellData {
    pub theta: IndexSet,
    pub torus_rank: usize,
    /// Fundamental weights `Λ_i`, `i ∉ Θ`, spanning the torus character
    /// lattice (1-based).
    pub weight_basis: Vec<usize>,
    /// Positive real roots of height at most `height_bound` outside the span
    /// of `α_j`, `j ∈ Θ`.
    pub positive_roots_outside: usize,
    pub height_bound: usize,
    pub slice_specials: Vec<IndexSet>,
    /// Root counts are truncated to a height window.
    pub window: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Dot,
    Json,
    Text,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dot" => Ok(Format::Dot),
            "json" => Ok(Format::Json),
            "text" => Ok(Format::Text),
            other => Err(Error::UnsupportedFormat(other.to_string())),
        }
    }
}

pub fn orbit_poset(r: &Realization) -> OrbitPoset {
    let specials: Vec<IndexSet> = r.gcm().enumerate_special().into_iter().map(|s| s.theta).collect();
    let below = |a: IndexSet, b: IndexSet| a != b && a.is_subset(b);
    let mut hasse = Vec::new();
    for (i, &a) in specials.iter().enumerate() {
        for (j, &b) in specials.iter().enumerate() {
            if below(a, b) && !specials.iter().any(|&c| below(a, c) && below(c, b)) {
                hasse.push((i, j));
            }
        }
    }
    let strata = specials
        .iter()
        .map(|&theta| OrbitStratum {
            theta,
            closure: specials.iter().copied().filter(|s| theta.is_subset(*s)).collect(),
            torus_rank: r.dim() - theta.len(),
            slice_specials: specials.iter().copied().filter(|s| s.is_subset(theta)).collect(),
        })
        .collect();
    OrbitPoset { specials, hasse, strata }
}

/// `enumerate(bound)`, each element tagged with its orbit label.
pub fn birkhoff_strata(m: &WeylMonoid<'_>, bound: usize) -> Vec<BirkhoffStratum> {
    m.enumerate(bound)
        .into_iter()
        .map(|element| {
            let orbit = m.orbit_label(&element);
            BirkhoffStratum { element, orbit }
        })
        .collect()
}

/// Number of strata per special set, in the order of the special sets.
pub fn stratum_counts(r: &Realization, strata: &[BirkhoffStratum]) -> Vec<StratumCount> {
    r.gcm()
        .enumerate_special()
        .into_iter()
        .map(|s| StratumCount { theta: s.theta, count: strata.iter().filter(|b| b.orbit == s.theta).count() })
        .collect()
}

/// Elements of `enumerate(bound)` lying in the parabolic submonoid of `theta`.
pub fn principal_open_index(m: &WeylMonoid<'_>, theta: IndexSet, bound: usize) -> Result<Vec<WeylMonoidElement>> {
    m.realization().gcm().special_set(theta)?;
    Ok(m.enumerate(bound).into_iter().filter(|x| m.parabolic_decompose(x, theta).is_some()).collect())
}

pub fn big_cell_data(r: &Realization, theta: IndexSet, height_bound: usize) -> Result<BigCellData> {
    r.gcm().special_set(theta)?;
    let positive_roots_outside = r
        .positive_roots_by_height(height_bound)
        .iter()
        .filter(|c| c.iter().enumerate().any(|(i, &x)| x != 0 && !theta.contains(i)))
        .count();
    let slice_specials =
        r.gcm().enumerate_special().into_iter().map(|s| s.theta).filter(|s| s.is_subset(theta)).collect();
    Ok(BigCellData {
        theta,
        torus_rank: r.dim() - theta.len(),
        weight_basis: (0..r.dim()).filter(|&i| !theta.contains(i)).map(|i| i + 1).collect(),
        positive_roots_outside,
        height_bound,
        slice_specials,
        window: format!("positive real roots of height <= {height_bound}"),
    })
}

#[derive(Serialize)]
struct PosetJson<'a> {
    specials: &'a [IndexSet],
    hasse: Vec<[usize; 2]>,
}

#[derive(Serialize)]
struct CombinedJson<'a> {
    specials: &'a [IndexSet],
    hasse: Vec<[usize; 2]>,
    strata: &'a [StratumCount],
}

fn hasse_pairs(p: &OrbitPoset) -> Vec<[usize; 2]> {
    p.hasse.iter().map(|&(a, b)| [a, b]).collect()
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn dot_graph(p: &OrbitPoset, label: impl Fn(usize) -> String) -> String {
    let mut out = String::from("digraph orbits {\n");
    for i in 0..p.specials.len() {
        writeln!(out, "  n{i} [label=\"{}\"];", label(i)).unwrap();
    }
    for &(a, b) in &p.hasse {
        writeln!(out, "  n{a} -> n{b};").unwrap();
    }
    out.push_str("}\n");
    out
}

/// DOT nodes are labelled `Θ={…}`; edges go from a set to its covers.
/// JSON hasse pairs are positions in `specials`.
pub fn emit_poset(p: &OrbitPoset, format: Format) -> Result<String> {
    match format {
        Format::Dot => Ok(dot_graph(p, |i| format!("Θ={}", p.specials[i]))),
        Format::Json => Ok(to_json(&PosetJson { specials: &p.specials, hasse: hasse_pairs(p) })),
        Format::Text => Err(Error::UnsupportedFormat("text".into())),
    }
}

pub fn emit_strata(p: &OrbitPoset, counts: &[StratumCount], format: Format) -> Result<String> {
    match format {
        Format::Json => Ok(to_json(&counts)),
        Format::Dot => Ok(dot_graph(p, |i| {
            let count = counts.iter().find(|c| c.theta == p.specials[i]).map_or(0, |c| c.count);
            format!("Θ={} ({count})", p.specials[i])
        })),
        Format::Text => Err(Error::UnsupportedFormat("text".into())),
    }
}

/// Poset and stratum counts in one JSON object.
pub fn emit_combined(p: &OrbitPoset, counts: &[StratumCount]) -> String {
    to_json(&CombinedJson { specials: &p.specials, hasse: hasse_pairs(p), strata: counts })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn real(name: &str) -> Realization {
        Realization::new(catalog::by_name(name).unwrap())
    }

    #[test]
    fn posets() {
        let p = orbit_poset(&real("A2"));
        assert_eq!(p.specials, vec![IndexSet::empty()]);
        assert!(p.hasse.is_empty());
        let p = orbit_poset(&real("A1~"));
        assert_eq!(p.hasse, vec![(0, 1)]);
        assert_eq!(p.strata[1].torus_rank, 1);
        let dot = emit_poset(&p, Format::Dot).unwrap();
        assert_eq!(dot.matches("label").count(), 2);
        assert_eq!(dot.matches("->").count(), 1);
        assert!(dot.contains("Θ={1,2}"));
        assert!(matches!(emit_poset(&p, Format::Text), Err(Error::UnsupportedFormat(_))));
        assert!(matches!("xml".parse::<Format>(), Err(Error::UnsupportedFormat(_))));
    }

    #[test]
    fn affine_strata_counts() {
        let r = real("A1~");
        let m = WeylMonoid::new(&r);
        let counts = stratum_counts(&r, &birkhoff_strata(&m, 3));
        assert_eq!(counts[0].count, 7);
        assert_eq!(counts[1].count, 1);
        let json = emit_strata(&orbit_poset(&r), &counts, Format::Json).unwrap();
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v[1]["theta"], serde_json::json!([1, 2]));
        assert_eq!(emit_strata(&orbit_poset(&r), &[], Format::Json).unwrap().trim(), "[]");
    }

    #[test]
    fn principal_open_sets() {
        let r = real("A1~");
        let m = WeylMonoid::new(&r);
        assert_eq!(principal_open_index(&m, IndexSet::empty(), 3).unwrap(), vec![m.unit()]);
        assert_eq!(principal_open_index(&m, IndexSet::full(2), 3).unwrap().len(), m.enumerate(3).len());
        assert!(matches!(principal_open_index(&m, IndexSet::singleton(0), 3), Err(Error::NotSpecial(_))));
    }

    #[test]
    fn big_cells() {
        let r = real("A2");
        let d = big_cell_data(&r, IndexSet::empty(), 2).unwrap();
        assert_eq!(d.positive_roots_outside, 3);
        assert_eq!(d.torus_rank, 2);
        let r = real("A1~");
        let d = big_cell_data(&r, IndexSet::full(2), 10).unwrap();
        assert_eq!(d.positive_roots_outside, 0);
        assert_eq!(d.torus_rank, 1);
        assert_eq!(d.weight_basis, vec![3]);
    }
}
