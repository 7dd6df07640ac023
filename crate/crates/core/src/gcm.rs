//! Generalized Cartan matrices: validation, symmetrizers, Dynkin components,
//! finite/affine/indefinite typing and special subsets.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::index_set::IndexSet;
use crate::linalg;
use crate::matrix::Matrix;
use crate::{IntMatrix, RatMatrix, Rational};

/// A validated, symmetrizable generalized Cartan matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct Gcm {
    a: IntMatrix,
    symmetrizer: Vec<i64>,
    symmetrized: RatMatrix,
    rank: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum ComponentType {
    Finite,
    Affine,
    Indefinite,
}

/// `m_ij` of the Coxeter presentation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum CoxeterOrder {
    Finite(u32),
    Infinite,
}

/// A special subset together with its typed connected components.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct SpecialSet {
    pub theta: IndexSet,
    pub components: Vec<(IndexSet, ComponentType)>,
}

/// JSON input accepted by the command line tool: `{"matrix": [[...], ...]}`.
#[derive(Debug, Clone, Deserialize, Serialize)]
pub struct GcmInput {
    pub matrix: Vec<Vec<i64>>,
}

impl Gcm {
    /// Validates `matrix` and computes its symmetrizer and rank.
    ///
    /// The symmetrizer `ε` satisfies `A = D·B` with `D = diag(ε)` and `B`
    /// symmetric; on each connected component it is scaled to coprime
    /// positive integers.
    pub fn new(matrix: Vec<Vec<i64>>) -> Result<Self> {
        let n = matrix.len();
        if n == 0 {
            return Err(Error::NotGcm("empty matrix".into()));
        }
        if n > 64 {
            return Err(Error::TooLarge(n));
        }
        if let Some(r) = matrix.iter().position(|row| row.len() != n) {
            return Err(Error::NotGcm(format!("row {} has length {}, expected {n}", r + 1, matrix[r].len())));
        }
        for i in 0..n {
            if matrix[i][i] != 2 {
                return Err(Error::NotGcm(format!("diagonal entry a_{0}{0} = {1} (must be 2)", i + 1, matrix[i][i])));
            }
            for j in 0..n {
                if i == j {
                    continue;
                }
                if matrix[i][j] > 0 {
                    return Err(Error::NotGcm(format!("off-diagonal entry a_{}{} = {} is positive", i + 1, j + 1, matrix[i][j])));
                }
                if (matrix[i][j] == 0) != (matrix[j][i] == 0) {
                    return Err(Error::NotGcm(format!(
                        "a_{0}{1} = {2} but a_{1}{0} = {3}",
                        i + 1,
                        j + 1,
                        matrix[i][j],
                        matrix[j][i]
                    )));
                }
            }
        }
        let a = Matrix::from_rows(&matrix);
        let symmetrizer = symmetrizer(&a)?;
        let symmetrized = Matrix::from_fn(n, n, |i, j| Rational::new(a[(i, j)].into(), symmetrizer[i].into()));
        let rank = linalg::rank(&a.map(|&x| Rational::from_integer(x.into())));
        Ok(Gcm { a, symmetrizer, symmetrized, rank })
    }

    pub fn from_input(input: &GcmInput) -> Result<Self> {
        Gcm::new(input.matrix.clone())
    }

    pub fn n(&self) -> usize {
        self.a.rows()
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.a[(i, j)]
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.a
    }

    /// Rank `l` of `A` over the rationals.
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn symmetrizer(&self) -> &[i64] {
        &self.symmetrizer
    }

    /// `B = D⁻¹A`, symmetric.
    pub fn symmetrized(&self) -> &RatMatrix {
        &self.symmetrized
    }

    pub fn index_set(&self) -> IndexSet {
        IndexSet::full(self.n())
    }

    fn check(&self, j: IndexSet) -> Result<()> {
        match j.bound() {
            b if b > self.n() => Err(Error::IndexOutOfRange { index: b, n: self.n() }),
            _ => Ok(()),
        }
    }

    fn adjacent(&self, i: usize, j: usize) -> bool {
        i != j && self.a[(i, j)] != 0
    }

    /// Connected components of the Dynkin graph restricted to `j`, ordered by
    /// their smallest member.
    pub fn components(&self, j: IndexSet) -> Result<Vec<IndexSet>> {
        self.check(j)?;
        Ok(self.components_unchecked(j))
    }

    fn components_unchecked(&self, j: IndexSet) -> Vec<IndexSet> {
        let mut rest = j;
        let mut out = Vec::new();
        while let Some(start) = rest.min() {
            let mut comp = IndexSet::singleton(start);
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for u in rest.iter() {
                    if !comp.contains(u) && self.adjacent(v, u) {
                        comp.insert(u);
                        stack.push(u);
                    }
                }
            }
            rest = rest.difference(comp);
            out.push(comp);
        }
        out
    }

    /// Type of a connected subset `c`, read off the inertia of `B` on `c`.
    pub fn classify_component(&self, c: IndexSet) -> Result<ComponentType> {
        self.check(c)?;
        if c.is_empty() || self.components_unchecked(c).len() != 1 {
            return Err(Error::NotConnected(c.to_string()));
        }
        Ok(self.classify_unchecked(c))
    }

    fn classify_unchecked(&self, c: IndexSet) -> ComponentType {
        let idx: Vec<usize> = c.iter().collect();
        let inertia = linalg::inertia(&self.symmetrized.principal(&idx));
        if inertia.is_positive_definite() {
            ComponentType::Finite
        } else if inertia.is_positive_semidefinite() && inertia.zero == 1 {
            ComponentType::Affine
        } else {
            ComponentType::Indefinite
        }
    }

    fn typed_components(&self, j: IndexSet) -> Vec<(IndexSet, ComponentType)> {
        self.components_unchecked(j).into_iter().map(|c| (c, self.classify_unchecked(c))).collect()
    }

    pub fn is_special(&self, theta: IndexSet) -> Result<bool> {
        self.check(theta)?;
        Ok(self.typed_components(theta).iter().all(|(_, t)| *t != ComponentType::Finite))
    }

    /// The special set `theta` with its components, or `NotSpecial`.
    pub fn special_set(&self, theta: IndexSet) -> Result<SpecialSet> {
        if !self.is_special(theta)? {
            return Err(Error::NotSpecial(theta.to_string()));
        }
        Ok(SpecialSet { theta, components: self.typed_components(theta) })
    }

    /// All special subsets, sorted by size and then lexicographically.
    pub fn enumerate_special(&self) -> Vec<SpecialSet> {
        if self.n() > 20 {
            log::warn!("enumerating special subsets of a rank {} matrix visits 2^{} subsets", self.n(), self.n());
        }
        let mut memo: HashMap<IndexSet, ComponentType> = HashMap::new();
        let mut out = Vec::new();
        for theta in self.index_set().subsets() {
            let comps = self.components_unchecked(theta);
            let mut typed = Vec::with_capacity(comps.len());
            let mut special = true;
            for c in comps {
                let t = *memo.entry(c).or_insert_with(|| self.classify_unchecked(c));
                if t == ComponentType::Finite {
                    special = false;
                    break;
                }
                typed.push((c, t));
            }
            if special {
                out.push(SpecialSet { theta, components: typed });
            }
        }
        out.sort_by_key(|s| s.theta.sort_key());
        out
    }

    /// `Θ^⊥ = {i : a_ij = 0 for all j ∈ Θ}`. Disjoint from `Θ` since `a_ii = 2`.
    pub fn orthogonal_complement(&self, theta: IndexSet) -> IndexSet {
        (0..self.n()).filter(|&i| theta.iter().all(|j| self.a[(i, j)] == 0)).collect()
    }

    /// `J^∞`: the union of the components of `j` that are not of finite type.
    pub fn infinite_part(&self, j: IndexSet) -> IndexSet {
        self.typed_components(j.intersection(self.index_set()))
            .into_iter()
            .filter(|(_, t)| *t != ComponentType::Finite)
            .fold(IndexSet::empty(), |acc, (c, _)| acc.union(c))
    }

    pub fn coxeter_order(&self, i: usize, j: usize) -> Result<CoxeterOrder> {
        for k in [i, j] {
            if k >= self.n() {
                return Err(Error::IndexOutOfRange { index: k + 1, n: self.n() });
            }
        }
        if i == j {
            return Err(Error::EqualIndices(i + 1));
        }
        Ok(match self.a[(i, j)] * self.a[(j, i)] {
            0 => CoxeterOrder::Finite(2),
            1 => CoxeterOrder::Finite(3),
            2 => CoxeterOrder::Finite(4),
            3 => CoxeterOrder::Finite(6),
            _ => CoxeterOrder::Infinite,
        })
    }

    /// Primitive positive integer vector `c` supported on the affine
    /// component `comp` with `Σ_i c_i a_ij = 0` for all `j`.
    pub(crate) fn affine_kernel(&self, comp: IndexSet) -> Vec<i64> {
        let idx: Vec<usize> = comp.iter().collect();
        let at = self.a.principal(&idx).transpose().map(|&x| Rational::from_integer(x.into()));
        let ker = linalg::nullspace(&at);
        debug_assert_eq!(ker.len(), 1);
        let v = &ker[0];
        let den = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let ints: Vec<BigInt> = v.iter().map(|x| (x * Rational::from_integer(den.clone())).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        let sign = if ints.iter().any(|x| x.is_negative()) { -BigInt::one() } else { BigInt::one() };
        let mut out = vec![0i64; self.n()];
        for (k, &i) in idx.iter().enumerate() {
            out[i] = i64::try_from(&ints[k] / &g * &sign).expect("kernel coefficient overflow");
        }
        out
    }
}

fn symmetrizer(a: &IntMatrix) -> Result<Vec<i64>> {
    let n = a.rows();
    let mut eps: Vec<Option<Rational>> = vec![None; n];
    for root in 0..n {
        if eps[root].is_some() {
            continue;
        }
        eps[root] = Some(Rational::one());
        let mut comp = vec![root];
        let mut stack = vec![root];
        while let Some(i) = stack.pop() {
            let ei = eps[i].clone().unwrap();
            for j in 0..n {
                if i == j || a[(i, j)] == 0 {
                    continue;
                }
                // a_ij / ε_i = a_ji / ε_j
                let ej = &ei * Rational::new(a[(j, i)].into(), a[(i, j)].into());
                match &eps[j] {
                    Some(existing) if *existing != ej => {
                        return Err(Error::NotSymmetrizable(format!(
                            "inconsistent symmetrizer ratio along a cycle through indices {} and {}",
                            i + 1,
                            j + 1
                        )));
                    }
                    Some(_) => {}
                    None => {
                        eps[j] = Some(ej);
                        comp.push(j);
                        stack.push(j);
                    }
                }
            }
        }
        let den = comp.iter().fold(BigInt::one(), |acc, &i| acc.lcm(eps[i].as_ref().unwrap().denom()));
        let nums: Vec<BigInt> =
            comp.iter().map(|&i| (eps[i].clone().unwrap() * Rational::from_integer(den.clone())).to_integer()).collect();
        let g = nums.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        for (&i, v) in comp.iter().zip(nums) {
            eps[i] = Some(Rational::from_integer(v / &g));
        }
    }
    eps.into_iter()
        .map(|e| {
            let e = e.unwrap().to_integer();
            i64::try_from(e).map_err(|_| Error::NotSymmetrizable("symmetrizer overflows i64".into()))
        })
        .collect()
}

impl fmt::Debug for Gcm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gcm({:?})", self.a)
    }
}

impl fmt::Display for ComponentType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ComponentType::Finite => "finite",
            ComponentType::Affine => "affine",
            ComponentType::Indefinite => "indefinite",
        };
        f.write_str(s)
    }
}

impl fmt::Display for CoxeterOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoxeterOrder::Finite(m) => write!(f, "{m}"),
            CoxeterOrder::Infinite => f.write_str("inf"),
        }
    }
}
