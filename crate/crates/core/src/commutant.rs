//! The Jordan matrix `B` of a partition, random elements of the nilpotent
//! subalgebra `U_B` of its centralizer, and Jordan types read off rank
//! profiles.
//!
//! Basis order is the vertex order of `D_P`: by block size, then block, then
//! position. `B` sends `(u, p, k)` to `(u + 1, p, k)` and kills `(p, p, k)`.
//!
//! A map from block `(q, k)` to block `(p, k')` commutes with `B` iff it is
//! determined by the image of `(1, q, k)`, which must lie in the last
//! `min(p, q)` positions of the target. So the coefficient of `(u', p, k')`
//! in `A·(u, q, k)` only depends on the offset `o = u' − u`, and is free for
//! `o ≥ max(0, p − q)`. The offset-0 coefficients between equal-size blocks
//! make up the semisimple part; `U_B` keeps them only from block `k` to a
//! later block `k' > k`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Field, Fp, PrimeField};
use crate::matrix::Matrix;
use crate::partition::Partition;
use crate::poset::{vertices_of, Poset, Vertex};
use crate::uchain::lambda_u;

pub fn jordan_matrix<T: Field>(partition: &Partition, ctx: &T::Context) -> Matrix<T> {
    let basis = vertices_of(partition);
    let mut b = Matrix::zeros(basis.len(), basis.len(), ctx);
    // consecutive basis vectors within a block differ by one in u
    for (i, v) in basis.iter().enumerate() {
        if v.u < v.p {
            b[(i + 1, i)] = T::one(ctx);
        }
    }
    b
}

/// The free coefficients coupling one Jordan block to another.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockCoupling<T> {
    /// `(size, index)` of the source block.
    pub source: (usize, usize),
    /// `(size, index)` of the target block.
    pub target: (usize, usize),
    /// `coeffs[j]` multiplies offset `max(0, p − q) + j`.
    pub coeffs: Vec<T>,
}

#[derive(Clone, Debug)]
pub struct CommutantElement<T: Field> {
    pub params: Vec<BlockCoupling<T>>,
    pub matrix: Matrix<T>,
}

fn blocks(partition: &Partition) -> Vec<(usize, usize)> {
    partition
        .multiplicities()
        .flat_map(|(p, m)| (1..=m).map(move |k| (p, k)))
        .collect()
}

/// Whether the coefficient at offset index `j` from block `src` to block
/// `dst` is allowed to be nonzero in `U_B`.
fn coupling_is_free(src: (usize, usize), dst: (usize, usize), j: usize) -> bool {
    !(src.0 == dst.0 && j == 0 && dst.1 <= src.1)
}

/// Assembles an element of `U_B` with coefficients drawn from `draw`.
/// Checks `AB = BA` and nilpotency before returning.
pub fn sample_ub_with<T, F>(
    partition: &Partition,
    ctx: &T::Context,
    mut draw: F,
) -> Result<CommutantElement<T>>
where
    T: Field,
    F: FnMut() -> T,
{
    let basis = vertices_of(partition);
    let n = basis.len();
    let index = |v: Vertex| basis.binary_search(&v).expect("basis vertex");
    let mut matrix = Matrix::zeros(n, n, ctx);
    let mut params = Vec::new();
    let blocks = blocks(partition);
    for &src in &blocks {
        for &dst in &blocks {
            let (q, k) = src;
            let (p, k2) = dst;
            let shift = p.saturating_sub(q);
            let coeffs: Vec<T> = (0..p.min(q))
                .map(|j| {
                    if coupling_is_free(src, dst, j) {
                        draw()
                    } else {
                        T::zero(ctx)
                    }
                })
                .collect();
            for u in 1..=q {
                for (j, c) in coeffs.iter().enumerate() {
                    let u2 = u + shift + j;
                    if u2 > p {
                        break;
                    }
                    let row = index(Vertex::new(u2, p, k2));
                    let col = index(Vertex::new(u, q, k));
                    matrix[(row, col)] = c.clone();
                }
            }
            params.push(BlockCoupling {
                source: src,
                target: dst,
                coeffs,
            });
        }
    }

    let b = jordan_matrix::<T>(partition, ctx);
    if matrix.mul(&b) != b.mul(&matrix) {
        return Err(Error::CommutationCheckFailed);
    }
    if !is_nilpotent(&matrix) {
        return Err(Error::NotNilpotent);
    }
    Ok(CommutantElement { params, matrix })
}

/// Uniformly random element of `U_B` over `GF(p)`, reproducible from `seed`.
pub fn sample_ub(
    partition: &Partition,
    field: &PrimeField,
    seed: u64,
) -> Result<CommutantElement<Fp>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sample_ub_with(partition, field, || field.random(&mut rng))
}

/// `support[i * n + j]`: entry `(i, j)` of an element of `U_B` can be
/// nonzero. Row is the target basis vector, column the source.
pub fn structural_support(partition: &Partition) -> Vec<bool> {
    let basis = vertices_of(partition);
    let n = basis.len();
    let mut support = vec![false; n * n];
    for (col, src) in basis.iter().enumerate() {
        for (row, dst) in basis.iter().enumerate() {
            let shift = dst.p.saturating_sub(src.p);
            if dst.u < src.u + shift {
                continue;
            }
            let j = dst.u - src.u - shift;
            support[row * n + col] = coupling_is_free((src.p, src.k), (dst.p, dst.k), j);
        }
    }
    support
}

fn powers_until_zero<T: Field>(a: &Matrix<T>) -> Option<Vec<Matrix<T>>> {
    let n = a.rows();
    let mut out = vec![a.clone()];
    while !out.last().unwrap().is_zero() {
        if out.len() >= n {
            return None;
        }
        let next = out.last().unwrap().mul(a);
        out.push(next);
    }
    Some(out)
}

pub fn is_nilpotent<T: Field>(a: &Matrix<T>) -> bool {
    a.rows() == 0 || powers_until_zero(a).is_some()
}

/// Jordan type of a nilpotent matrix. With `d_k = n − rank(A^k)`, the
/// number of blocks of size at least `k` is `d_k − d_{k−1}`; the type is the
/// conjugate of that sequence.
pub fn jordan_type_from_ranks<T: Field>(a: &Matrix<T>) -> Result<Partition> {
    let n = a.rows();
    if n == 0 {
        return Ok(Partition::empty());
    }
    let powers = powers_until_zero(a).ok_or(Error::NotNilpotent)?;
    let mut kernel_dims = vec![0];
    kernel_dims.extend(powers.iter().map(|m| n - m.rank()));
    let at_least: Vec<usize> = kernel_dims.windows(2).map(|w| w[1] - w[0]).collect();
    Ok(Partition::from_positive(at_least).conjugate())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QEstimate {
    pub seeds: Vec<u64>,
    pub types: Vec<Partition>,
    /// The sampled type that dominates all the others.
    pub q: Partition,
    /// How many samples had exactly that type.
    pub agreement: usize,
}

/// Seeds used for `samples` draws starting at `seed`.
pub fn sample_seeds(seed: u64, samples: usize) -> Vec<u64> {
    (0..samples as u64).map(|i| seed.wrapping_add(i)).collect()
}

/// Generic Jordan type of `U_B` estimated as the dominance maximum of the
/// sampled types. Fails if no sampled type dominates the rest.
pub fn estimate_q(
    partition: &Partition,
    field: &PrimeField,
    samples: usize,
    seed: u64,
) -> Result<QEstimate> {
    assert!(samples >= 1, "need at least one sample");
    let seeds = sample_seeds(seed, samples);
    let types = seeds
        .iter()
        .map(|&s| jordan_type_from_ranks(&sample_ub(partition, field, s)?.matrix))
        .collect::<Result<Vec<_>>>()?;
    let q = types
        .iter()
        .find(|cand| types.iter().all(|t| t.dominance_leq(cand).expect("same n")))
        .cloned()
        .ok_or_else(|| {
            Error::IncomparableSamples(types.iter().map(|t| t.parts().to_vec()).collect())
        })?;
    let agreement = types.iter().filter(|t| **t == q).count();
    Ok(QEstimate {
        seeds,
        types,
        q,
        agreement,
    })
}

/// `{"P", "prime", "seeds", "types", "Q_est", "lambda_U", "agree"}`.
#[derive(Clone, Debug, Serialize)]
pub struct MatrixReport {
    #[serde(rename = "P")]
    pub partition: Partition,
    pub prime: u64,
    pub seeds: Vec<u64>,
    pub types: Vec<Partition>,
    #[serde(rename = "Q_est")]
    pub q_est: Partition,
    #[serde(rename = "lambda_U")]
    pub lambda_u: Partition,
    pub agree: bool,
}

pub fn matrix_report(
    partition: &Partition,
    field: &PrimeField,
    samples: usize,
    seed: u64,
) -> Result<MatrixReport> {
    let est = estimate_q(partition, field, samples, seed)?;
    let lu = lambda_u(partition);
    Ok(MatrixReport {
        partition: partition.clone(),
        prime: field.modulus(),
        seeds: est.seeds,
        types: est.types,
        agree: est.q == lu,
        q_est: est.q,
        lambda_u: lu,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MismatchKind {
    /// `v < v'` but the coefficient was zero in every sample although the
    /// parametrization allows it; a sampling miss with probability about
    /// `1/p` per sample.
    SampledZero,
    /// `v < v'` but no element of `U_B` can have that coefficient.
    StructuralZero,
    /// `v` and `v'` are not ordered that way, yet some sample had a nonzero
    /// coefficient.
    UnorderedNonzero,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrderMismatch {
    pub from: Vertex,
    pub to: Vertex,
    pub kind: MismatchKind,
}

#[derive(Clone, Debug, Serialize)]
pub struct OrderReport {
    #[serde(rename = "P")]
    pub partition: Partition,
    pub prime: u64,
    pub seeds: Vec<u64>,
    /// Ordered pairs `v ≠ v'` examined.
    pub pairs_checked: usize,
    pub mismatches: Vec<OrderMismatch>,
}

/// Compares the strict order of `D_P` with "some sampled `A ∈ U_B` has a
/// nonzero `v'`-coefficient in `A·v`". Pairs `v = v'` are skipped.
pub fn order_criterion_check(
    partition: &Partition,
    field: &PrimeField,
    samples: usize,
    seed: u64,
) -> Result<OrderReport> {
    let poset = Poset::build(partition);
    let n = poset.len();
    let seeds = sample_seeds(seed, samples);
    let mut seen = vec![false; n * n];
    for &s in &seeds {
        let a = sample_ub(partition, field, s)?.matrix;
        for row in 0..n {
            for col in 0..n {
                if !a[(row, col)].is_zero() {
                    seen[row * n + col] = true;
                }
            }
        }
    }
    let support = structural_support(partition);
    let mut mismatches = Vec::new();
    for from in 0..n {
        for to in 0..n {
            if from == to {
                continue;
            }
            let idx = to * n + from;
            let kind = match (poset.lt_idx(from, to), seen[idx]) {
                (true, false) if support[idx] => Some(MismatchKind::SampledZero),
                (true, false) => Some(MismatchKind::StructuralZero),
                (false, true) => Some(MismatchKind::UnorderedNonzero),
                _ => None,
            };
            if let Some(kind) = kind {
                mismatches.push(OrderMismatch {
                    from: poset.vertex(from),
                    to: poset.vertex(to),
                    kind,
                });
            }
        }
    }
    Ok(OrderReport {
        partition: partition.clone(),
        prime: field.modulus(),
        seeds,
        pairs_checked: n * (n - 1),
        mismatches,
    })
}
