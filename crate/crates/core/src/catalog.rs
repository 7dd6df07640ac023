//! Named generalized Cartan matrices used throughout the tests and examples.

use crate::gcm::Gcm;

/// `(name, matrix)` pairs: A2, B2, G2, affine A1, affine A2, a rank-2
/// indefinite matrix and the rank-3 block matrix `affine A1 ⊕ A1`.
pub const CATALOG: &[(&str, &[&[i64]])] = &[
    ("A2", &[&[2, -1], &[-1, 2]]),
    ("B2", &[&[2, -2], &[-1, 2]]),
    ("G2", &[&[2, -1], &[-3, 2]]),
    ("A1~", &[&[2, -2], &[-2, 2]]),
    ("A2~", &[&[2, -1, -1], &[-1, 2, -1], &[-1, -1, 2]]),
    ("H2(3,2)", &[&[2, -3], &[-2, 2]]),
    ("A1~+A1", &[&[2, -2, 0], &[-2, 2, 0], &[0, 0, 2]]),
];

/// Affine A1 with a finite tail: `{1,2}` is special but `{1,2}^⊥ = ∅`, so
/// its faces have infinitely many translates and intersections are not
/// trivial. The whole index set is of indefinite type.
pub const AFFINE_WITH_TAIL: &[&[i64]] = &[&[2, -2, 0], &[-2, 2, -1], &[0, -1, 2]];

pub fn gcm_from(rows: &[&[i64]]) -> Gcm {
    Gcm::new(rows.iter().map(|r| r.to_vec()).collect()).expect("catalog matrices are valid")
}

pub fn by_name(name: &str) -> Option<Gcm> {
    if name == "A1~-tail" {
        return Some(gcm_from(AFFINE_WITH_TAIL));
    }
    CATALOG.iter().find(|(n, _)| *n == name).map(|(_, m)| gcm_from(m))
}

/// The whole catalog as validated matrices.
pub fn all() -> Vec<(&'static str, Gcm)> {
    CATALOG.iter().map(|(n, m)| (*n, gcm_from(m))).collect()
}
