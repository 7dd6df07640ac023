//! Randomized invariants over the catalog and over random small matrices.

use kacmoody::{catalog, ComponentType, Error, Gcm, IndexSet, MembershipResult, Rational, Realization, WeightVector};
use proptest::prelude::*;

fn catalog_realization(k: usize) -> Realization {
    let all = catalog::all();
    Realization::new(all[k % all.len()].1.clone())
}

fn word_strategy() -> impl Strategy<Value = (usize, Vec<usize>)> {
    (0usize..7, prop::collection::vec(0usize..3, 0..10))
}

fn clamp(r: &Realization, word: &[usize]) -> Vec<usize> {
    word.iter().map(|i| i % r.n()).collect()
}

proptest! {
    #[test]
    fn reduced_words_are_reduced((k, word) in word_strategy()) {
        let r = catalog_realization(k);
        let x = r.from_word(&clamp(&r, &word)).unwrap();
        let red = r.reduced_word(&x);
        prop_assert_eq!(r.from_word(&red).unwrap(), x.clone());
        prop_assert!(red.len() <= word.len());
        prop_assert_eq!(red.len() % 2, word.len() % 2);
        prop_assert_eq!(r.length(&x.inverse()), red.len());
        prop_assert!(x.is_contragredient());
        prop_assert!(r.preserves_form(&x));
        for i in 0..r.n() {
            let xs = x.multiply(&r.simple_reflection(i).unwrap()).unwrap();
            prop_assert_eq!(r.right_descents(&x).contains(i), r.length(&xs) < red.len());
        }
    }

    #[test]
    fn coset_factors_multiply_back((k, word) in word_strategy(), bits in 0u64..8) {
        let r = catalog_realization(k);
        let x = r.from_word(&clamp(&r, &word)).unwrap();
        let j = IndexSet::from_bits(bits).intersection(r.gcm().index_set());
        let (rep, u) = r.coset_decompose_right(&x, j);
        prop_assert_eq!(rep.multiply(&u).unwrap(), x.clone());
        prop_assert!(r.right_descents(&rep).is_disjoint(j));
        prop_assert_eq!(r.length(&x), r.length(&rep) + r.length(&u));
        let (a, mid) = r.double_coset_decompose(&x, j, j);
        prop_assert!(r.left_descents(&mid).is_disjoint(j) && r.right_descents(&mid).is_disjoint(j));
        prop_assert!(r.is_in_parabolic(&a, j));
    }

    #[test]
    fn descent_recovers_dominant_points((k, word) in word_strategy(), coords in prop::collection::vec(0i64..5, 6)) {
        let r = catalog_realization(k);
        let w = r.from_word(&clamp(&r, &word)).unwrap();
        let dominant = WeightVector(coords[..r.dim()].iter().map(|&c| Rational::new(c.into(), 2.into())).collect());
        let point = w.act_weight(&dominant);
        match r.to_dominant(&point, 10_000).unwrap() {
            MembershipResult::InCone { w: v, dominant: d } => {
                prop_assert_eq!(&d, &dominant);
                prop_assert_eq!(v.act_weight(&d), point.clone());
                let facet = r.facet_of(&point).unwrap();
                prop_assert_eq!(facet.w.act_weight(&d), point);
            }
            other => prop_assert!(false, "{:?}", other),
        }
    }

    #[test]
    fn canonical_faces_are_stable((k, word) in word_strategy(), (_, word2) in word_strategy()) {
        let r = catalog_realization(k);
        let w = r.from_word(&clamp(&r, &word)).unwrap();
        for s in r.gcm().enumerate_special() {
            let f = r.canonical_face(&w, s.theta);
            prop_assert_eq!(r.canonical_face(&f.w, s.theta), f.clone());
            let k = s.theta.union(r.gcm().orthogonal_complement(s.theta));
            prop_assert!(r.right_descents(&f.w).is_disjoint(k));
            let u: Vec<usize> = clamp(&r, &word2).into_iter().filter(|&i| k.contains(i)).collect();
            let wu = w.multiply(&r.from_word(&u).unwrap()).unwrap();
            prop_assert_eq!(r.canonical_face(&wu, s.theta), f.clone());
            prop_assert_eq!(r.smallest_face(&r.relint_point(&f)).unwrap(), f);
        }
    }
}

/// A random matrix with a consistent zero pattern, rank at most 3.
fn gcm_strategy() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=3, prop::collection::vec((0i64..=4, 0i64..=4), 3)).prop_map(|(n, offs)| {
        let mut a = vec![vec![0; n]; n];
        let pairs = [(0, 1), (0, 2), (1, 2)];
        for (k, &(i, j)) in pairs.iter().enumerate() {
            if i < n && j < n {
                let (x, y) = offs[k];
                let (x, y) = if x == 0 || y == 0 { (0, 0) } else { (x, y) };
                a[i][j] = -x;
                a[j][i] = -y;
            }
        }
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 2;
        }
        a
    })
}

fn orbit_is_finite(a: &Gcm) -> bool {
    let n = a.n();
    let mut seen = std::collections::HashSet::new();
    let mut queue: std::collections::VecDeque<Vec<i64>> =
        (0..n).map(|k| (0..n).map(|t| i64::from(t == k)).collect()).collect();
    for v in &queue {
        seen.insert(v.clone());
    }
    while let Some(b) = queue.pop_front() {
        if seen.len() > 200 || b.iter().any(|c| c.abs() > 6) {
            return false;
        }
        for i in 0..n {
            let p: i64 = (0..n).map(|k| b[k] * a.entry(i, k)).sum();
            let mut next = b.clone();
            next[i] -= p;
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    true
}

proptest! {
    #[test]
    fn symmetrizer_and_types(rows in gcm_strategy()) {
        let g = match Gcm::new(rows.clone()) {
            Ok(g) => g,
            Err(Error::NotSymmetrizable(_)) => return Ok(()),
            Err(e) => return Err(TestCaseError::fail(format!("{e}"))),
        };
        let eps = g.symmetrizer();
        let b = g.symmetrized();
        for i in 0..g.n() {
            for j in 0..g.n() {
                prop_assert_eq!(Rational::from_integer(eps[i].into()) * &b[(i, j)], Rational::from_integer(rows[i][j].into()));
                prop_assert_eq!(&b[(i, j)], &b[(j, i)]);
            }
        }
        if g.components(g.index_set()).unwrap().len() == 1 {
            let finite = orbit_is_finite(&g);
            prop_assert_eq!(finite, g.classify_component(g.index_set()).unwrap() == ComponentType::Finite);
        }
        for j in g.index_set().subsets() {
            let inf = g.infinite_part(j);
            prop_assert!(g.is_special(inf).unwrap());
            prop_assert!(j.difference(inf).is_subset(g.orthogonal_complement(inf)));
        }
        let specials: Vec<IndexSet> = g.enumerate_special().into_iter().map(|s| s.theta).collect();
        for &a in &specials {
            for &c in &specials {
                if a.is_subset(g.orthogonal_complement(c)) {
                    prop_assert!(specials.contains(&a.union(c)));
                }
            }
        }
    }
}
