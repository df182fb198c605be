use proptest::prelude::*;
use tatecoh::exactlin::{elementary_divisors, smith_normal_form};
use tatecoh::{
    dual_complex, random_free_complex, tensor_complex, ElementaryAbelianGroup, GroupRingElement,
    GroupRingMatrix, IntMatrix, Integer,
};

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = IntMatrix> {
    proptest::collection::vec(-9i64..=9, rows * cols).prop_map(move |v| {
        IntMatrix::from_vec(rows, cols, v.into_iter().map(Integer::from).collect())
    })
}

fn group() -> impl Strategy<Value = ElementaryAbelianGroup> {
    prop_oneof![Just((2, 1)), Just((3, 1)), Just((2, 2)), Just((5, 1))]
        .prop_map(|(p, r)| ElementaryAbelianGroup::new(p, r).unwrap())
}

fn element(g: ElementaryAbelianGroup) -> impl Strategy<Value = GroupRingElement> {
    proptest::collection::vec(-4i64..=4, g.order())
        .prop_map(move |c| GroupRingElement::from_i64s(g, &c))
}

fn ring_matrix(
    g: ElementaryAbelianGroup,
    rows: usize,
    cols: usize,
) -> impl Strategy<Value = GroupRingMatrix> {
    proptest::collection::vec(element(g), rows * cols)
        .prop_map(move |e| GroupRingMatrix::from_entries(g, rows, cols, e).unwrap())
}

fn is_unimodular(m: &IntMatrix) -> bool {
    m.determinant().abs().is_one()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn smith_form_is_a_certified_diagonalisation(a in matrix(5, 5)) {
        let f = smith_normal_form(&a);
        prop_assert_eq!(&(&f.u * &a) * &f.v, f.s.clone());
        prop_assert!(is_unimodular(&f.u) && is_unimodular(&f.v));
        let d = f.diagonal();
        for w in d.windows(2) {
            prop_assert!(w[0].divides(&w[1]) || w[1].is_zero());
        }
        let mut prod = Integer::from(1);
        for x in &d {
            prod *= x;
        }
        prop_assert_eq!(prod, a.determinant().abs());
    }

    #[test]
    fn dense_and_sparse_smith_agree(a in matrix(5, 5), b in matrix(4, 6)) {
        for m in [a, b] {
            let dense: Vec<Integer> = smith_normal_form(&m).diagonal().into_iter().filter(|x| !x.is_zero()).collect();
            prop_assert_eq!(dense, elementary_divisors(&m));
        }
    }

    #[test]
    fn expand_is_multiplicative((g, a, b) in group().prop_flat_map(|g| (Just(g), ring_matrix(g, 2, 3), ring_matrix(g, 3, 2)))) {
        let ab = a.multiply(&b).unwrap();
        prop_assert_eq!(ab.expand(), &a.expand() * &b.expand());
        prop_assert_eq!(GroupRingMatrix::identity(g, 2).expand(), IntMatrix::identity(2 * g.order()));
    }

    #[test]
    fn antipode_is_a_ring_automorphism((a, b) in group().prop_flat_map(|g| (element(g), element(g)))) {
        let ab = a.ring_multiply(&b).unwrap();
        prop_assert_eq!(ab.antipode(), a.antipode().ring_multiply(&b.antipode()).unwrap());
        prop_assert_eq!(a.try_add(&b).unwrap().antipode(), a.antipode().try_add(&b.antipode()).unwrap());
        prop_assert_eq!(a.antipode().antipode(), a.clone());
        prop_assert_eq!(a.antipode().augmentation(), a.augmentation());
    }

    #[test]
    fn dual_is_an_involution_and_transposes(m in group().prop_flat_map(|g| ring_matrix(g, 2, 3))) {
        prop_assert_eq!(m.dual().dual(), m.clone());
        prop_assert_eq!(m.dual().expand(), m.expand().transpose());
    }

    #[test]
    fn random_complexes_are_complexes(seed in 0u64..1000, ranks in proptest::collection::vec(1usize..=3, 2..=4)) {
        let g = ElementaryAbelianGroup::new(2, 2).unwrap();
        let c = random_free_complex(g, &ranks, seed).unwrap();
        for i in c.lo() + 2..=c.hi() {
            prop_assert!(c.differential(i - 1).multiply(&c.differential(i)).unwrap().is_zero());
        }
        let d = dual_complex(&c);
        for i in d.lo() + 2..=d.hi() {
            prop_assert!(d.differential(i - 1).multiply(&d.differential(i)).unwrap().is_zero());
        }
    }

    #[test]
    fn euler_characteristic_equals_alternating_homology_rank(seed in 0u64..1000, ranks in proptest::collection::vec(1usize..=3, 1..=4)) {
        let g = ElementaryAbelianGroup::cyclic(3).unwrap();
        let c = random_free_complex(g, &ranks, seed).unwrap();
        let alt: i64 = (c.lo()..=c.hi())
            .map(|i| {
                let r = c.homology(i).unwrap().free_rank() as i64;
                if i % 2 == 0 { r } else { -r }
            })
            .sum();
        prop_assert_eq!(alt, c.euler_characteristic());
    }

    #[test]
    fn tensor_ranks_convolve_and_euler_multiplies(s1 in 0u64..100, s2 in 0u64..100, r1 in proptest::collection::vec(1usize..=2, 1..=3), r2 in proptest::collection::vec(1usize..=2, 1..=3)) {
        let g = ElementaryAbelianGroup::cyclic(2).unwrap();
        let a = random_free_complex(g, &r1, s1).unwrap();
        let b = random_free_complex(g, &r2, s2).unwrap();
        let t = tensor_complex(&a, &b).unwrap();
        for n in t.lo()..=t.hi() {
            let expected: usize = (a.lo()..=a.hi()).map(|i| a.rank(i) * b.rank(n - i)).sum();
            prop_assert_eq!(t.rank(n), expected);
        }
        prop_assert_eq!(t.euler_characteristic(), a.euler_characteristic() * b.euler_characteristic());
        for i in t.lo() + 2..=t.hi() {
            prop_assert!(t.differential(i - 1).multiply(&t.differential(i)).unwrap().is_zero());
        }
    }

    #[test]
    fn lattice_and_free_homology_agree(seed in 0u64..1000, ranks in proptest::collection::vec(1usize..=3, 2..=4)) {
        let g = ElementaryAbelianGroup::cyclic(2).unwrap();
        let c = random_free_complex(g, &ranks, seed).unwrap();
        let l = c.to_lattice();
        for i in c.lo()..=c.hi() {
            prop_assert_eq!(c.homology(i).unwrap(), l.homology(i).unwrap());
        }
    }
}
