use forest_shuffle::coalgebra::{counit_left, delta, delta_on_left, delta_on_right};
use forest_shuffle::decoration::Decoration;
use forest_shuffle::dual::{dual_combinatorial, dual_recursive};
use forest_shuffle::enumerate::{alphabet, random_forest, random_tree};
use forest_shuffle::linear::{flip, ForestComb, Q};
use forest_shuffle::parse::parse_forest;
use forest_shuffle::primitives::is_primitive;
use forest_shuffle::rota_baxter::{
    phi_bar, phi_bar_lin, word_diamond_lin, ForestRba, RbAlgebra, WordRba,
};
use forest_shuffle::shuffle::{diamond_product, forest_shuffle, star_product};
use forest_shuffle::tree::{Forest, RootedTree};
use forest_shuffle::word::{word_shuffle, Word, WordComb};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn forest_of(seed: u64, n: usize) -> Forest {
    if n == 0 {
        return Forest::empty();
    }
    random_forest(&mut ChaCha8Rng::seed_from_u64(seed), n, &alphabet(3))
}

fn tree_of(seed: u64, n: usize) -> RootedTree {
    random_tree(&mut ChaCha8Rng::seed_from_u64(seed), n, &alphabet(3))
}

fn lambda() -> impl Strategy<Value = Q> {
    (-3i64..=3, 1i64..=3).prop_map(|(p, q)| Q::new(p.into(), q.into()))
}

fn word() -> impl Strategy<Value = Word> {
    prop::collection::vec(0usize..3, 1..4)
        .prop_map(|ix| Word(ix.into_iter().map(|i| alphabet(3)[i].clone()).collect()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn render_then_parse_is_identity(seed: u64, n in 0usize..10) {
        let f = forest_of(seed, n);
        prop_assert_eq!(parse_forest(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn shuffle_is_commutative_with_unit(s1: u64, s2: u64, n in 0usize..4, m in 0usize..4, l in lambda()) {
        let (f, g) = (forest_of(s1, n), forest_of(s2, m));
        prop_assert_eq!(forest_shuffle(&f, &g, &l), forest_shuffle(&g, &f, &l));
        prop_assert_eq!(forest_shuffle(&f, &Forest::empty(), &l), ForestComb::basis(f.clone()));
        prop_assert_eq!(star_product(&f, &g, &l), star_product(&g, &f, &l));
    }

    #[test]
    fn diamond_is_commutative(s1: u64, s2: u64, n in 1usize..4, m in 1usize..4, l in lambda()) {
        let (f, g) = (forest_of(s1, n), forest_of(s2, m));
        prop_assert_eq!(diamond_product(&f, &g, &l).unwrap(), diamond_product(&g, &f, &l).unwrap());
    }

    #[test]
    fn linear_trees_shuffle_as_words(w in word(), v in word(), l in lambda()) {
        let expected = word_shuffle(&w, &v, &l).map_basis(Word::to_linear_tree);
        prop_assert_eq!(forest_shuffle(&w.to_linear_tree(), &v.to_linear_tree(), &l), expected);
    }

    #[test]
    fn delta_is_coassociative_with_left_counit(seed: u64, n in 1usize..10) {
        let t: Forest = tree_of(seed, n).into();
        let d = delta(&t).unwrap();
        prop_assert_eq!(delta_on_left(&d), delta_on_right(&d));
        prop_assert_eq!(counit_left(&d), ForestComb::basis(t));
    }

    #[test]
    fn dual_forms_agree_and_commute(seed: u64, n in 0usize..7) {
        let f = forest_of(seed, n);
        let d = dual_recursive(&f);
        prop_assert_eq!(&d, &dual_combinatorial(&f).unwrap());
        prop_assert_eq!(flip(&d), d);
    }

    #[test]
    fn rota_baxter_identity(s1: u64, s2: u64, n in 1usize..4, m in 1usize..4, l in lambda(), w in word(), v in word()) {
        let forests = ForestRba::new(l.clone());
        let r = forests.residual(&ForestComb::basis(forest_of(s1, n)), &ForestComb::basis(forest_of(s2, m))).unwrap();
        prop_assert!(r.is_zero(), "{}", r);
        let words = WordRba { lambda: l };
        let r = words.residual(&WordComb::basis(w), &WordComb::basis(v)).unwrap();
        prop_assert!(r.is_zero(), "{}", r);
    }

    #[test]
    fn phi_bar_is_multiplicative(s1: u64, s2: u64, n in 1usize..4, m in 1usize..4, l in 0i64..=1) {
        let l = Q::from_integer(l.into());
        let (f, g) = (forest_of(s1, n), forest_of(s2, m));
        let lhs = phi_bar_lin(&diamond_product(&f, &g, &l).unwrap(), &l).unwrap();
        let rhs = word_diamond_lin(&phi_bar(&f, &l).unwrap(), &phi_bar(&g, &l).unwrap(), &l).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn primitivity_ignores_decorations(seed: u64, n in 1usize..9) {
        let t = tree_of(seed, n);
        let bare = t.map_decorations(&mut |_| Decoration::unit());
        prop_assert_eq!(is_primitive(&t), is_primitive(&bare));
    }
}
