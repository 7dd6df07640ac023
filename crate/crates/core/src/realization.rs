//! The simply connected minimal free realization of a GCM.
//!
//! Coordinates: `H` has basis `h_1..h_d` (`d = 2n - l`) and `P` the dual basis
//! `Λ_1..Λ_d`, so a weight is stored as the vector of its pairings
//! `(λ(h_1), …, λ(h_d))` and a coweight as its coefficients in the `h_j`.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::gcm::{ComponentType, Gcm};
use crate::index_set::IndexSet;
use crate::linalg;
use crate::matrix::{dot, Matrix};
use crate::weyl::WeylElement;
use crate::{IntMatrix, RatMatrix, Rational};

/// A weight in `h*`, in fundamental-weight coordinates. Integral coordinates
/// mean the weight lies in `P`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightVector(pub Vec<Rational>);

/// An integral coweight in `h_j` coordinates.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct Coweight(pub Vec<i64>);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DominanceOrder {
    Equal,
    LessEq,
    GreaterEq,
    Incomparable,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct ComponentInfo {
    pub set: IndexSet,
    pub ty: ComponentType,
    /// Positive kernel coweight for affine components.
    pub kernel: Option<Vec<i64>>,
}

#[derive(Clone)]
pub struct Realization {
    gcm: Gcm,
    dim: usize,
    completion: Vec<usize>,
    alpha: IntMatrix,
    gram_h: RatMatrix,
    gram_hstar: RatMatrix,
    alpha_coords: RatMatrix,
    height_coweight: Vec<i64>,
    pub(crate) components: Vec<ComponentInfo>,
    pub(crate) generators: Vec<WeylElement>,
}

impl Realization {
    pub fn new(gcm: Gcm) -> Self {
        let n = gcm.n();
        let l = gcm.rank();
        let dim = 2 * n - l;
        let a = gcm.matrix();

        // α_i(h_j) = a_ji for j ≤ n, α_i(h_{n+k}) = δ_{i, c_k}.
        let alpha_with = |cols: &[usize]| {
            Matrix::from_fn(n, dim, |i, j| {
                if j < n {
                    a[(j, i)]
                } else if cols[j - n] == i {
                    1
                } else {
                    0
                }
            })
        };
        let to_q = |m: &IntMatrix| m.map(|&x| Rational::from_integer(x.into()));
        let completion = (0..n)
            .combinations(n - l)
            .find(|cols| linalg::rank(&to_q(&alpha_with(cols))) == n)
            .expect("a completion of the row basis always exists");
        let alpha = alpha_with(&completion);

        let eps = gcm.symmetrizer();
        let gram_h = Matrix::from_fn(dim, dim, |i, j| {
            if i < n {
                Rational::from_integer((alpha[(i, j)] * eps[i]).into())
            } else if j < n {
                Rational::from_integer((alpha[(j, i)] * eps[j]).into())
            } else {
                Rational::zero()
            }
        });
        let gram_hstar = linalg::inverse(&gram_h).expect("invariant form on h is nondegenerate");

        // Left inverse of the column matrix (α_1 … α_n): (M Mᵀ)⁻¹ M.
        let m = to_q(&alpha);
        let mmt_inv = linalg::inverse(&m.mul(&m.transpose())).expect("simple roots are independent");
        let alpha_coords = mmt_inv.mul(&m);

        // A coweight pairing to the same positive constant with every α_i.
        let ones = vec![Rational::one(); n];
        let hr = linalg::solve(&m, &ones).expect("simple roots are independent");
        let den = hr.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let height_coweight = hr
            .iter()
            .map(|x| i64::try_from((x * Rational::from_integer(den.clone())).to_integer()).expect("overflow"))
            .collect();

        let components = gcm
            .components(gcm.index_set())
            .expect("full index set is in range")
            .into_iter()
            .map(|set| {
                let ty = gcm.classify_component(set).expect("components are connected");
                let kernel = (ty == ComponentType::Affine).then(|| gcm.affine_kernel(set));
                ComponentInfo { set, ty, kernel }
            })
            .collect();

        let mut r = Realization {
            gcm,
            dim,
            completion,
            alpha,
            gram_h,
            gram_hstar,
            alpha_coords,
            height_coweight,
            components,
            generators: Vec::new(),
        };
        r.generators = (0..n).map(|i| WeylElement::reflection(&r, i)).collect();
        r
    }

    pub fn gcm(&self) -> &Gcm {
        &self.gcm
    }

    pub fn n(&self) -> usize {
        self.gcm.n()
    }

    /// `2n - l`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Indices `c_1 < … < c_{n-l}` (0-based) with `α_i(h_{n+k}) = δ_{i,c_k}`.
    pub fn completion_columns(&self) -> &[usize] {
        &self.completion
    }

    pub fn gram_h(&self) -> &RatMatrix {
        &self.gram_h
    }

    pub fn gram_hstar(&self) -> &RatMatrix {
        &self.gram_hstar
    }

    /// Row `i` is `α_i` in fundamental-weight coordinates.
    pub fn simple_root_matrix(&self) -> &IntMatrix {
        &self.alpha
    }

    pub fn simple_root_ints(&self, i: usize) -> &[i64] {
        self.alpha.row(i)
    }

    pub fn simple_root(&self, i: usize) -> WeightVector {
        WeightVector::from_ints(self.alpha.row(i))
    }

    pub fn simple_coroot(&self, i: usize) -> Coweight {
        let mut v = vec![0; self.dim];
        v[i] = 1;
        Coweight(v)
    }

    /// `Λ_i` for `i < dim`.
    pub fn fundamental_weight(&self, i: usize) -> WeightVector {
        let mut v = vec![Rational::zero(); self.dim];
        v[i] = Rational::one();
        WeightVector(v)
    }

    pub fn zero_weight(&self) -> WeightVector {
        WeightVector(vec![Rational::zero(); self.dim])
    }

    /// `Σ_{i ∉ J} Λ_i` over all `d` fundamental weights: zero exactly on the
    /// `h_j`, `j ∈ J`, and positive on the other simple coroots.
    pub fn facet_point(&self, j: IndexSet) -> WeightVector {
        WeightVector(
            (0..self.dim)
                .map(|i| if j.contains(i) { Rational::zero() } else { Rational::one() })
                .collect(),
        )
    }

    /// Integer coweight `h` with `α_i(h)` equal to one fixed positive
    /// constant for every `i`; its sign on a root is the sign of the height.
    pub fn height_coweight(&self) -> &[i64] {
        &self.height_coweight
    }

    pub(crate) fn generator(&self, i: usize) -> &WeylElement {
        &self.generators[i]
    }

    pub(crate) fn check_index(&self, i: usize) -> Result<()> {
        if i < self.n() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { index: i + 1, n: self.n() })
        }
    }

    pub(crate) fn check_weight(&self, w: &WeightVector) -> Result<()> {
        if w.0.len() == self.dim {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected: self.dim, got: w.0.len() })
        }
    }

    pub fn pairing(&self, lambda: &WeightVector, h: &Coweight) -> Result<Rational> {
        self.check_weight(lambda)?;
        if h.0.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: h.0.len() });
        }
        Ok(lambda.0.iter().zip(&h.0).fold(Rational::zero(), |acc, (x, &y)| acc + x * Rational::from_integer(y.into())))
    }

    /// Coordinates of `v` in the simple roots, or `None` if `v ∉ span(α_i)`.
    pub fn root_coordinates(&self, v: &WeightVector) -> Option<Vec<Rational>> {
        let k = self.alpha_coords.mul_vec(&v.0);
        let back = self.alpha.map(|&x| Rational::from_integer(x.into())).vec_mul(&k);
        (back == v.0).then_some(k)
    }

    /// Compares `λ` and `λ'` in the dominance order `λ ≤ λ' ⟺ λ' - λ ∈ Q₀⁺`.
    pub fn dominance_compare(&self, lambda: &WeightVector, other: &WeightVector) -> DominanceOrder {
        if lambda == other {
            return DominanceOrder::Equal;
        }
        let Some(k) = self.root_coordinates(&(other - lambda)) else {
            return DominanceOrder::Incomparable;
        };
        if !k.iter().all(|x| x.is_integer()) {
            DominanceOrder::Incomparable
        } else if k.iter().all(|x| !x.is_negative()) {
            DominanceOrder::LessEq
        } else if k.iter().all(|x| !x.is_positive()) {
            DominanceOrder::GreaterEq
        } else {
            DominanceOrder::Incomparable
        }
    }

    /// `p_J(λ) = Σ_{j ∈ J} λ(h_j) Λ_j`. `J` may include the extra indices
    /// `n..d`.
    pub fn project(&self, lambda: &WeightVector, j: IndexSet) -> Result<WeightVector> {
        self.check_weight(lambda)?;
        if j.bound() > self.dim {
            return Err(Error::IndexOutOfRange { index: j.bound(), n: self.dim });
        }
        Ok(WeightVector(
            lambda.0.iter().enumerate().map(|(i, x)| if j.contains(i) { x.clone() } else { Rational::zero() }).collect(),
        ))
    }

    /// `(λ | μ)` for the form induced on `h*`.
    pub fn form(&self, lambda: &WeightVector, mu: &WeightVector) -> Rational {
        dot(&self.gram_hstar.mul_vec(&lambda.0), &mu.0)
    }
}

impl fmt::Debug for Realization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Realization").field("gcm", &self.gcm).field("dim", &self.dim).finish()
    }
}

impl WeightVector {
    pub fn from_ints(v: &[i64]) -> Self {
        WeightVector(v.iter().map(|&x| Rational::from_integer(x.into())).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|x| x.is_integer())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        WeightVector(self.0.iter().map(|x| x * c).collect())
    }

    /// Coordinates as integers, if integral and in range.
    pub fn to_ints(&self) -> Option<Vec<i64>> {
        self.0.iter().map(|x| if x.is_integer() { i64::try_from(x.to_integer()).ok() } else { None }).collect()
    }
}

impl Add for &WeightVector {
    type Output = WeightVector;

    fn add(self, rhs: &WeightVector) -> WeightVector {
        assert_eq!(self.0.len(), rhs.0.len());
        WeightVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &WeightVector {
    type Output = WeightVector;

    fn sub(self, rhs: &WeightVector) -> WeightVector {
        assert_eq!(self.0.len(), rhs.0.len());
        WeightVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &WeightVector {
    type Output = WeightVector;

    fn neg(self) -> WeightVector {
        WeightVector(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0.iter().join(","))
    }
}

impl fmt::Debug for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for WeightVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        v.serialize(serializer)
    }
}
