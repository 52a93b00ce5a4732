mod common;

use coxring::exactmath::{int, rat};
use coxring::grading::*;
use num_bigint::BigInt;
use proptest::prelude::*;

fn m(rows: &[Vec<i64>]) -> IntMatrix {
    IntMatrix::from_i64(rows)
}

fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| x.into()).collect()
}

#[test]
fn snf_examples() {
    let id = IntMatrix::identity(3);
    let s = smith_normal_form(&id);
    common::check_snf(&id, &s).unwrap();
    assert_eq!(s.diagonal(), big(&[1, 1, 1]));

    let a = m(&[vec![2, 4], vec![6, 8]]);
    let s = smith_normal_form(&a);
    common::check_snf(&a, &s).unwrap();
    assert_eq!(s.diagonal(), big(&[2, 4]));
    assert_eq!(a.det(), BigInt::from(-8));

    let b = m(&[vec![1, 1], vec![0, 2]]);
    let s = smith_normal_form(&b);
    common::check_snf(&b, &s).unwrap();
    assert_eq!(s.diagonal(), big(&[1, 2]));
}

#[test]
fn cokernel_examples() {
    let z2 = FGAbelianGroup::free(2);
    let zero = GroupHom::new(z2.clone(), z2.clone(), IntMatrix::zeros(2, 2)).unwrap();
    assert_eq!(cokernel(&zero).0.to_string(), "Z^2");

    let source = FGAbelianGroup::free(2);
    let target = FGAbelianGroup::free(6);
    let f = IntMatrix::from_i64_columns(&[vec![1, 1, 0, 0, -1, -1], vec![0, 0, 1, 1, -1, -1]], 6);
    let (cok, proj) = cokernel(&GroupHom::new(source.clone(), target, f.clone()).unwrap());
    assert_eq!(cok.to_string(), "Z^4");
    for j in 0..2 {
        assert!(cok.is_zero(&proj.apply(&f.column(j))));
    }

    let f = IntMatrix::from_i64_columns(&[vec![1, 0], vec![1, 2]], 2);
    let (cok, _) = cokernel(&GroupHom::new(source, FGAbelianGroup::free(2), f).unwrap());
    assert_eq!(cok.summary(), GroupSummary { rank: 0, invariant_factors: vec!["2".into()] });
}

#[test]
fn homomorphisms_must_respect_relations() {
    let z = FGAbelianGroup::free(1);
    let z2 = FGAbelianGroup::from_invariants(0, &[2]);
    assert!(GroupHom::new(z2.clone(), z.clone(), m(&[vec![1]])).is_err());
    assert!(GroupHom::new(z, z2, m(&[vec![1]])).is_ok());
}

#[test]
fn lift_onto_free_examples() {
    let (l, onto) = lift_onto_free(&FGAbelianGroup::free(3)).unwrap();
    assert_eq!(l.rank(), 3);
    assert_eq!(onto.matrix(), &IntMatrix::identity(3));

    let (l, onto) = lift_onto_free(&FGAbelianGroup::from_invariants(0, &[2])).unwrap();
    assert_eq!(l.rank(), 1);
    assert!(onto.is_surjective());

    let g = FGAbelianGroup::from_invariants(4, &[2]);
    let (l, onto) = lift_onto_free(&g).unwrap();
    assert_eq!((l.rank(), l.is_free()), (5, true));
    assert!(onto.is_surjective());
}

#[test]
fn extend_character_examples() {
    let c = Character::new(vec![rat(3, 2), int(-5)]).unwrap();
    assert_eq!(extend_character(&c, &IntMatrix::identity(2)).unwrap(), c);

    let two = m(&[vec![2]]);
    let ext = extend_character(&Character::new(vec![int(4)]).unwrap(), &two).unwrap();
    assert!(ext.values()[0] == int(2) || ext.values()[0] == int(-2));
    assert_eq!(ext.restrict(&two).values(), &[int(4)]);
    assert_eq!(ext, extend_character(&Character::new(vec![int(4)]).unwrap(), &two).unwrap());

    assert!(matches!(
        extend_character(&Character::new(vec![int(2)]).unwrap(), &two),
        Err(CharacterError::Obstructed { .. })
    ));
    assert!(Character::new(vec![int(0)]).is_err());
}

#[test]
fn canonical_coordinates() {
    // Z^3 / <(1,1,1)> has canonical coordinates in Z^2
    let g = FGAbelianGroup::new(m(&[vec![1], vec![1], vec![1]]));
    assert_eq!(g.to_string(), "Z^2");
    assert!(g.is_zero(&big(&[1, 1, 1])));
    assert!(g.equal(&big(&[2, 0, 0]), &big(&[1, -1, -1])));
    let c = g.canonical(&big(&[0, 1, 0]));
    assert_eq!(g.canonical(&g.representative(&c)), c);
}

fn small_int_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=5, 1usize..=5)
        .prop_flat_map(|(r, c)| proptest::collection::vec(proptest::collection::vec(-9i64..=9, c), r))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn snf_is_certified(rows in small_int_matrix()) {
        let a = m(&rows);
        let s = smith_normal_form(&a);
        prop_assert!(common::check_snf(&a, &s).is_ok(), "{:?}", common::check_snf(&a, &s));
    }

    #[test]
    fn cokernel_is_presentation_independent(
        rows in small_int_matrix(),
        ops in proptest::collection::vec((0usize..5, 0usize..5, -3i64..=3), 0..6),
    ) {
        let a = m(&rows);
        // column operations and a duplicated column give the same subgroup
        let mut cols: Vec<Vec<i64>> = (0..a.cols())
            .map(|j| a.column(j).iter().map(|x| i64::try_from(x).unwrap()).collect())
            .collect();
        for (i, j, k) in ops {
            let (i, j) = (i % cols.len(), j % cols.len());
            if i != j {
                let add: Vec<i64> = cols[i].iter().zip(&cols[j]).map(|(x, y)| x + k * y).collect();
                cols[i] = add;
            }
        }
        cols.push(cols[0].clone());
        let b = IntMatrix::from_i64_columns(&cols, a.rows());
        prop_assert!(FGAbelianGroup::new(a).isomorphic(&FGAbelianGroup::new(b)));
    }

    #[test]
    fn lift_onto_free_is_surjective(rank in 0usize..3, factors in proptest::collection::vec(2i64..7, 0..3)) {
        let g = FGAbelianGroup::from_invariants(rank, &factors);
        let (l, onto) = lift_onto_free(&g).unwrap();
        prop_assert!(l.is_free());
        prop_assert_eq!(l.rank(), g.num_generators());
        prop_assert!(cokernel(&onto).0.is_trivial());
    }
}
