mod common;

use num_bigint::BigInt;
use polyfree_core::groups::{mccool_automorphism, mccool_automorphism_inverse, poison_p_alpha, Endomorphism, FreeWord, PoisonElement};
use polyfree_core::intlin::{kernel_basis, rank, IntMatrix};
use polyfree_core::linear::Lin;
use polyfree_core::lyndon::{expand, free_bracket, lyndon_words, FreeLieElement};
use polyfree_core::{AlgebraSpec, LieElement};
use proptest::prelude::*;

const TRUNC: usize = 9;

fn free_element(k: usize) -> impl Strategy<Value = FreeLieElement> {
    let words: Vec<_> = (1..=3).flat_map(|w| lyndon_words(k, w).unwrap()).collect();
    let n = words.len();
    prop::collection::vec((0..n, -3i64..=3), 1..5).prop_map(move |terms| {
        let lin: Lin<_> = terms.into_iter().map(|(i, c)| (words[i].clone(), BigInt::from(c))).collect();
        FreeLieElement::from_terms(lin, TRUNC)
    })
}

type Terms = Vec<(usize, i64)>;

fn layered_terms() -> impl Strategy<Value = Terms> {
    prop::collection::vec((0usize..1000, -2i64..=2), 1..4)
}

fn layered_element(spec: &AlgebraSpec, terms: &Terms) -> LieElement {
    let keys: Vec<_> = (1..=2).flat_map(|w| spec.weight_basis(w)).collect();
    let lin: Lin<_> = terms.iter().map(|&(i, c)| (keys[i % keys.len()].clone(), BigInt::from(c))).collect();
    spec.element(lin, 6)
}

fn poison_element() -> impl Strategy<Value = PoisonElement> {
    let gens = vec![PoisonElement::a(1), PoisonElement::a(2), PoisonElement::a(3), PoisonElement::phi(1), PoisonElement::phi(2)];
    prop::collection::vec((0..5usize, any::<bool>()), 0..8).prop_map(move |letters| {
        letters.into_iter().fold(PoisonElement::identity(), |acc, (i, inv)| {
            let g = if inv { gens[i].inverse() } else { gens[i].clone() };
            acc.multiply(&g)
        })
    })
}

fn mccool_product(n: usize) -> impl Strategy<Value = (Endomorphism, Endomorphism)> {
    let pairs: Vec<(usize, usize)> = (1..=n).flat_map(|i| (1..=n).filter(move |&j| j != i).map(move |j| (i, j))).collect();
    let m = pairs.len();
    prop::collection::vec((0..m, any::<bool>()), 0..5).prop_map(move |steps| {
        let mut f = Endomorphism::identity(n);
        let mut g = Endomorphism::identity(n);
        for (k, inv) in steps {
            let (i, j) = pairs[k];
            let (a, b) = (mccool_automorphism(n, i, j).unwrap(), mccool_automorphism_inverse(n, i, j).unwrap());
            let (a, b) = if inv { (b, a) } else { (a, b) };
            f = f.compose(&a);
            g = b.compose(&g);
        }
        (f, g)
    })
}

fn free_word(n: usize) -> impl Strategy<Value = FreeWord> {
    prop::collection::vec((0..n, any::<bool>()), 0..8)
        .prop_map(|letters| FreeWord::from_letters(letters.into_iter().map(|(g, inv)| (g, if inv { -1 } else { 1 }))).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn free_bracket_is_antisymmetric(x in free_element(3), y in free_element(3)) {
        let xy = free_bracket(&x, &y, TRUNC);
        let yx = free_bracket(&y, &x, TRUNC);
        prop_assert!(xy.add(&yx).is_zero());
    }

    #[test]
    fn free_bracket_satisfies_jacobi(x in free_element(3), y in free_element(3), z in free_element(3)) {
        let t = |a: &FreeLieElement, b: &FreeLieElement, c: &FreeLieElement| free_bracket(a, &free_bracket(b, c, TRUNC), TRUNC);
        prop_assert!(t(&x, &y, &z).add(&t(&y, &z, &x)).add(&t(&z, &x, &y)).is_zero());
    }

    #[test]
    fn free_bracket_matches_commutator(x in free_element(3), y in free_element(3)) {
        prop_assert_eq!(expand(&free_bracket(&x, &y, TRUNC)), expand(&x).commutator(&expand(&y)));
    }

    #[test]
    fn kernel_basis_is_exact(rows in 1usize..6, cols in 1usize..7, seed in prop::collection::vec(-4i64..=4, 42)) {
        let data: Vec<Vec<i64>> = (0..rows).map(|i| seed[i * cols..(i + 1) * cols].to_vec()).collect();
        let m = IntMatrix::from_rows(cols, &data).unwrap();
        let k = kernel_basis(&m);
        for v in k.basis().row_vecs() {
            prop_assert!(m.mul_vec(&v).unwrap().iter().all(|x| *x == BigInt::from(0)));
        }
        prop_assert_eq!(rank(&m) + k.rank(), cols);
        prop_assert!(k.is_saturated());
        let as_big: Vec<Vec<BigInt>> = data.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        let transposed: Vec<Vec<BigInt>> = (0..cols).map(|c| as_big.iter().map(|r| r[c].clone()).collect()).collect();
        prop_assert_eq!(common::rational_left_nullity(&transposed), k.rank());
    }

    #[test]
    fn poison_group_axioms(g in poison_element(), h in poison_element(), k in poison_element()) {
        prop_assert_eq!(g.multiply(&h).multiply(&k), g.multiply(&h.multiply(&k)));
        prop_assert!(g.multiply(&g.inverse()).is_identity());
        prop_assert!(g.inverse().multiply(&g).is_identity());
        prop_assert_eq!(g.multiply(&PoisonElement::identity()), g.clone());
    }

    #[test]
    fn p_alpha_is_a_homomorphism(g in poison_element(), h in poison_element()) {
        let (pg, ag) = poison_p_alpha(&g);
        let (ph, ah) = poison_p_alpha(&h);
        let (pgh, agh) = poison_p_alpha(&g.multiply(&h));
        prop_assert_eq!(pgh, pg.mul(&ph));
        prop_assert_eq!(agh, [ag[0] + ah[0], ag[1] + ah[1], ag[2] + ah[2]]);
    }

    #[test]
    fn mccool_products_invert(fg in mccool_product(4), w in free_word(4)) {
        let (f, g) = fg;
        prop_assert!(f.compose(&g).is_identity());
        prop_assert_eq!(g.apply(&f.apply(&w)), w);
    }

    #[test]
    fn composition_is_associative(a in mccool_product(3), b in mccool_product(3), c in mccool_product(3), w in free_word(3)) {
        let (a, b, c) = (a.0, b.0, c.0);
        prop_assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
        prop_assert_eq!(a.compose(&b).apply(&w), a.apply(&b.apply(&w)));
    }
}

fn layered_jacobi(spec: &AlgebraSpec, terms: [&Terms; 3]) -> Result<(), TestCaseError> {
    let [x, y, z] = terms.map(|t| layered_element(spec, t));
    let br = |a: &LieElement, b: &LieElement| spec.bracket(a, b, 6).unwrap();
    prop_assert!(br(&x, &y).add(&br(&y, &x)).unwrap().is_zero());
    let j = br(&x, &br(&y, &z)).add(&br(&y, &br(&z, &x))).unwrap().add(&br(&z, &br(&x, &y))).unwrap();
    prop_assert!(j.is_zero(), "{}", spec.format_element(&j));
    Ok(())
}

macro_rules! layered_jacobi_test {
    ($name:ident, $spec:expr) => {
        proptest! {
            #![proptest_config(ProptestConfig::with_cases(32))]
            #[test]
            fn $name(x in layered_terms(), y in layered_terms(), z in layered_terms()) {
                layered_jacobi(&$spec, [&x, &y, &z])?;
            }
        }
    };
}

layered_jacobi_test!(jacobi_mccool_plus_4, AlgebraSpec::mccool_plus(4).unwrap());
layered_jacobi_test!(jacobi_drinfeld_kohno_4, AlgebraSpec::drinfeld_kohno(4).unwrap());
layered_jacobi_test!(jacobi_monomial_2_2, AlgebraSpec::monomial_orbit(2, 2).unwrap());
layered_jacobi_test!(jacobi_surface_3_3, AlgebraSpec::surface_orbit(3, 3).unwrap());
layered_jacobi_test!(jacobi_poison, AlgebraSpec::poison_model().unwrap());
