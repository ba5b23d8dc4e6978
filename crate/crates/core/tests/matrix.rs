//! The same sampling and rank code over GF(p), exact rationals and floats.

use nilcomm::commutant::{
    estimate_q, is_nilpotent, jordan_matrix, jordan_type_from_ranks, sample_ub, sample_ub_with,
    structural_support,
};
use nilcomm::partition::partitions_of;
use nilcomm::poset::vertices_of;
use nilcomm::uchain::lambda_u;
use nilcomm::{Field, MatrixF64, MatrixFp, MatrixQ, Partition, Poset, PrimeField};
use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn upto(n_max: usize) -> impl Iterator<Item = Partition> {
    (1..=n_max).flat_map(partitions_of)
}

#[test]
fn jordan_type_of_b_is_p_over_every_scalar() {
    let f = PrimeField::default();
    for p in upto(9) {
        let fp: MatrixFp = jordan_matrix(&p, &f);
        let q: MatrixQ = jordan_matrix(&p, &());
        let fl: MatrixF64 = jordan_matrix(&p, &());
        assert_eq!(jordan_type_from_ranks(&fp).unwrap(), p);
        assert_eq!(jordan_type_from_ranks(&q).unwrap(), p);
        assert_eq!(jordan_type_from_ranks(&fl).unwrap(), p);
        assert_eq!(
            jordan_type_from_ranks(&jordan_matrix::<f32>(&p, &())).unwrap(),
            p
        );
        assert_eq!(
            jordan_type_from_ranks(&jordan_matrix::<Rational64>(&p, &())).unwrap(),
            p
        );
    }
}

#[test]
fn samples_commute_and_are_nilpotent() {
    let f = PrimeField::default();
    for p in upto(8) {
        for seed in 0..3 {
            // sample_ub itself rejects non-commuting or non-nilpotent output
            let a = sample_ub(&p, &f, seed).unwrap();
            let n = p.n();
            let support = structural_support(&p);
            for i in 0..n {
                for j in 0..n {
                    if !support[i * n + j] {
                        assert!(a.matrix[(i, j)].is_zero(), "{p}: ({i},{j})");
                    }
                }
            }
        }
    }
}

#[test]
fn support_lies_inside_the_poset_order() {
    for p in upto(10) {
        let poset = Poset::build(&p);
        let basis = vertices_of(&p);
        let n = basis.len();
        let support = structural_support(&p);
        for (col, from) in basis.iter().enumerate() {
            for (row, to) in basis.iter().enumerate() {
                if row != col {
                    assert_eq!(
                        support[row * n + col],
                        poset.leq(from, to).unwrap(),
                        "{p}: {from} -> {to}"
                    );
                }
            }
        }
    }
}

/// Over the rationals with integer coefficients in `1..=1000`, the generic
/// type found is the same as over GF(p).
#[test]
fn rational_samples_agree_with_prime_field() {
    let f = PrimeField::default();
    for p in upto(7) {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let rational = (0..3)
            .map(|_| {
                let a = sample_ub_with::<BigRational, _>(&p, &(), || {
                    BigRational::from_integer(BigInt::from(rng.gen_range(1..=1000)))
                })
                .unwrap();
                jordan_type_from_ranks(&a.matrix).unwrap()
            })
            .max_by(|x, y| {
                if x.dominance_leq(y).unwrap() {
                    std::cmp::Ordering::Less
                } else {
                    std::cmp::Ordering::Greater
                }
            })
            .unwrap();
        let modular = estimate_q(&p, &f, 3, 9).unwrap().q;
        assert_eq!(rational, modular, "{p}");
        assert_eq!(modular, lambda_u(&p), "{p}");
    }
}

#[test]
fn float_samples_are_nilpotent() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let p: Partition = "3,2,2,1".parse().unwrap();
    let a = sample_ub_with::<f64, _>(&p, &(), || rng.gen_range(1.0..2.0)).unwrap();
    assert!(is_nilpotent(&a.matrix));
    assert_eq!(jordan_type_from_ranks(&a.matrix).unwrap(), lambda_u(&p));
}

#[test]
fn estimates_are_reproducible_from_the_seed() {
    let f = PrimeField::default();
    let p: Partition = "4,3,3,1".parse().unwrap();
    assert_eq!(
        estimate_q(&p, &f, 4, 5).unwrap(),
        estimate_q(&p, &f, 4, 5).unwrap()
    );
    let a = sample_ub(&p, &f, 5).unwrap().matrix;
    let b = sample_ub(&p, &f, 6).unwrap().matrix;
    assert_ne!(a, b);
}
