//! Batch verification over every partition of every `n` in a range.
//!
//! Each partition gets one [`PartitionRecord`]; anything that contradicts a
//! proved statement (or an internal consistency requirement) becomes a
//! [`Failure`]. Agreement between the sampled generic Jordan type and
//! `λ_U(P)` is still a conjecture, so by default it is only counted.

use rayon::prelude::*;
use serde::Serialize;

use crate::commutant::estimate_q;
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::greene::{greene_lambda, max_k_chain_union, oracle_max_k_chain_union};
use crate::partition::{partitions_of, Partition};
use crate::poset::Poset;
use crate::uchain::{
    all_specs, cardinality_closed_form, check_replacement, lambda_u, lambda_u_exhaustive,
    materialize, max_simple_u_chains, simple_cardinality, u_profile, Replacement,
};
use crate::uprocess::{
    enumerate_full_processes_capped, q_of_trace, union_as_uchain, DEFAULT_TRACE_CAP,
};

pub const SCHEMA_VERSION: u32 = 1;

/// Largest `n` a sweep accepts unless the caller raises it.
pub const DEFAULT_MAX_N: usize = 20;

#[derive(Clone, Debug)]
pub struct MatrixOptions {
    pub field: PrimeField,
    pub samples: usize,
    pub seed: u64,
}

/// Sizes up to which the expensive cross-checks run.
#[derive(Clone, Debug)]
pub struct Limits {
    /// Flow solver against subset-DP chain covers.
    pub flow_oracle_n: usize,
    /// Closed-form vs materialized cardinalities and DP vs brute-force `λ_U`.
    pub spec_search_n: usize,
    /// The anchor-replacement property.
    pub replacement_n: usize,
    pub replacement_max_r: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            flow_oracle_n: 8,
            spec_search_n: 12,
            replacement_n: 10,
            replacement_max_r: 3,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SweepOptions {
    pub n_min: usize,
    pub n_max: usize,
    pub max_n: usize,
    pub trace_cap: usize,
    pub matrix: Option<MatrixOptions>,
    /// Count `Q_est ≠ λ_U` as a failure.
    pub strict_conjecture: bool,
    pub limits: Limits,
}

impl SweepOptions {
    pub fn new(n_min: usize, n_max: usize) -> Self {
        SweepOptions {
            n_min,
            n_max,
            max_n: DEFAULT_MAX_N,
            trace_cap: DEFAULT_TRACE_CAP,
            matrix: None,
            strict_conjecture: false,
            limits: Limits::default(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    PartitionCount,
    /// `D_P` is acyclic and every generating edge is a cover.
    PosetStructure,
    /// Min-cost flow agrees with the exhaustive chain-cover search.
    FlowOracle,
    /// `λ_U(P) ≤ λ(P)` in dominance.
    LambdaUDominated,
    /// Consecutive parts of `λ_U(P)` differ by at least 2.
    LambdaUGaps,
    /// The `λ_U` dynamic program agrees with brute force over all specs.
    LambdaUSearch,
    /// Closed-form U-chain sizes agree with materialized vertex sets.
    ClosedForm,
    /// Some anchor of a spec can be swapped for a maximum simple chain's.
    Replacement,
    /// Trace enumeration finished (within the cap, without internal errors).
    ProcessEnumeration,
    /// Every full process has sizes `λ_U(P)`.
    ProcessAgreement,
    /// The first `r` removed chains cover exactly `u_r` vertices.
    PrefixUnion,
    /// The first `r` removed chains form a U-chain of the original poset.
    PrefixIsUChain,
    /// Each removed chain has at least two vertices (unless one is left)
    /// and its anchor pair meets the current partition.
    StepChain,
    /// The last partition of a full process is almost rectangular.
    LastStepRectangular,
    MatrixSampling,
    /// `Q_est` has `r_P` parts.
    QPartCount,
    /// The largest part of `Q_est` is the largest simple U-chain.
    QLargestPart,
    /// `λ_U(P) ≤ Q_est` in dominance.
    QDominatesLambdaU,
    /// `Q_est = λ_U(P)`; only a failure under strict mode.
    Conjecture,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    #[serde(rename = "P")]
    pub partition: Option<Partition>,
    pub check: Check,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PartitionRecord {
    #[serde(rename = "P")]
    pub partition: Partition,
    pub lambda: Option<Partition>,
    #[serde(rename = "lambda_U")]
    pub lambda_u: Partition,
    pub r: usize,
    pub processes: usize,
    pub all_agree: bool,
    #[serde(rename = "Q_est", skip_serializing_if = "Option::is_none")]
    pub q_est: Option<Partition>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PartitionCount {
    pub n: usize,
    pub enumerated: usize,
    pub expected: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ConjectureStats {
    pub checked: usize,
    pub agreeing: usize,
    pub disagreeing: Vec<Partition>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepReport {
    pub schema: u32,
    pub n_min: usize,
    pub n_max: usize,
    pub partition_counts: Vec<PartitionCount>,
    pub records: Vec<PartitionRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub conjecture: Option<ConjectureStats>,
    pub strict_conjecture: bool,
    pub failures: Vec<Failure>,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Number of partitions of each `m ≤ n` by Euler's pentagonal recurrence,
/// independent of the partition enumerator.
pub fn partition_counts(n: usize) -> Vec<u64> {
    let mut p = vec![0i64; n + 1];
    p[0] = 1;
    for m in 1..=n {
        let mut total = 0i64;
        for k in 1.. {
            let k = k as i64;
            let sign = if k % 2 == 1 { 1 } else { -1 };
            let mut any = false;
            for g in [k * (3 * k - 1) / 2, k * (3 * k + 1) / 2] {
                if g as usize <= m {
                    total += sign * p[m - g as usize];
                    any = true;
                }
            }
            if !any {
                break;
            }
        }
        p[m] = total;
    }
    p.into_iter().map(|x| x as u64).collect()
}

struct Checker<'a> {
    partition: &'a Partition,
    failures: Vec<Failure>,
}

impl Checker<'_> {
    fn fail(&mut self, check: Check, detail: impl Into<String>) {
        self.failures.push(Failure {
            partition: Some(self.partition.clone()),
            check,
            detail: detail.into(),
        });
    }

    fn ensure(&mut self, ok: bool, check: Check, detail: impl FnOnce() -> String) {
        if !ok {
            self.fail(check, detail());
        }
    }
}

struct Outcome {
    record: PartitionRecord,
    conjecture: Option<bool>,
    failures: Vec<Failure>,
}

fn check_partition(q: &Partition, opts: &SweepOptions) -> Outcome {
    let n = q.n();
    let mut c = Checker {
        partition: q,
        failures: Vec::new(),
    };
    let limits = &opts.limits;

    let poset = Poset::build(q);
    c.ensure(poset.is_acyclic(), Check::PosetStructure, || "cycle".into());
    let redundant = poset.redundant_edges();
    c.ensure(redundant.is_empty(), Check::PosetStructure, || {
        format!("edges implied by others: {redundant:?}")
    });

    if n <= limits.flow_oracle_n {
        for k in 1..=n {
            let flow = max_k_chain_union(&poset, k);
            match oracle_max_k_chain_union(&poset, k) {
                Ok(exact) => c.ensure(flow == exact, Check::FlowOracle, || {
                    format!("k = {k}: flow {flow}, exhaustive {exact}")
                }),
                Err(e) => c.fail(Check::FlowOracle, e.to_string()),
            }
        }
    }

    let lu = lambda_u(q);
    let lambda = match greene_lambda(&poset) {
        Ok(l) => Some(l),
        Err(e) => {
            c.fail(Check::LambdaUDominated, e.to_string());
            None
        }
    };
    if let Some(l) = &lambda {
        let ok = lu.dominance_leq(l).unwrap_or(false);
        c.ensure(ok, Check::LambdaUDominated, || {
            format!("λ_U = {lu}, λ = {l}")
        });
    }
    let gaps_ok = lu.parts().windows(2).all(|w| w[0] >= w[1] + 2);
    c.ensure(gaps_ok, Check::LambdaUGaps, || format!("λ_U = {lu}"));

    if n <= limits.spec_search_n {
        let brute = lambda_u_exhaustive(q);
        c.ensure(brute == lu, Check::LambdaUSearch, || {
            format!("dynamic program {lu}, brute force {brute}")
        });
        let top = q.max_part() + 1;
        for r in 1..=top.div_ceil(2) {
            for spec in all_specs(top, r) {
                let inst = materialize(q, &spec);
                let closed = cardinality_closed_form(q, &spec);
                c.ensure(closed == inst.union.len(), Check::ClosedForm, || {
                    format!(
                        "{spec}: closed form {closed}, vertices {}",
                        inst.union.len()
                    )
                });
                let strand_total: usize = inst.strands.iter().map(|s| s.len()).sum();
                let chains = inst
                    .strands
                    .iter()
                    .all(|s| poset.is_chain(s).unwrap_or(false));
                c.ensure(
                    chains && strand_total == inst.union.len(),
                    Check::ClosedForm,
                    || format!("{spec}: strands are not disjoint chains"),
                );
            }
        }
    }

    if n <= limits.replacement_n {
        let max = max_simple_u_chains(q).cardinality;
        for a in (1..=q.max_part()).filter(|&a| simple_cardinality(q, a) == max) {
            for r in 1..=limits.replacement_max_r {
                for spec in all_specs(q.max_part(), r) {
                    match check_replacement(q, &spec, a) {
                        Ok(Replacement::Failure { before, tried }) => c.fail(
                            Check::Replacement,
                            format!("{spec} with a = {a}: size {before}, tried {tried:?}"),
                        ),
                        Ok(_) => {}
                        Err(e) => c.fail(Check::Replacement, e.to_string()),
                    }
                }
            }
        }
    }

    let u = u_profile(q);
    let (processes, all_agree) = match enumerate_full_processes_capped(q, opts.trace_cap) {
        Ok(traces) => {
            let mut agree = true;
            for t in &traces {
                let seq = t.a_seq();
                match q_of_trace(t) {
                    Ok(qc) if qc == lu => {}
                    Ok(qc) => {
                        agree = false;
                        c.fail(
                            Check::ProcessAgreement,
                            format!("{seq:?} gives {qc}, λ_U = {lu}"),
                        );
                    }
                    Err(e) => {
                        agree = false;
                        c.fail(Check::ProcessAgreement, format!("{seq:?}: {e}"));
                    }
                }
                for r in 1..=t.steps.len() {
                    let covered = t.prefix_union(r).len();
                    let expected = u.get(r).copied().unwrap_or(n);
                    c.ensure(covered == expected, Check::PrefixUnion, || {
                        format!("{seq:?}, r = {r}: {covered} vertices, u_r = {expected}")
                    });
                    if let Err(e) = union_as_uchain(t, r) {
                        c.fail(Check::PrefixIsUChain, format!("{seq:?}, r = {r}: {e}"));
                    }
                }
                for step in &t.steps {
                    let size = step.removed_local.len();
                    let big_enough = size >= 2 || step.partition.n() == 1;
                    let meets = step.partition.mult(step.a) + step.partition.mult(step.a + 1) > 0;
                    c.ensure(big_enough && meets, Check::StepChain, || {
                        format!(
                            "{seq:?}: U_{} in {} has {size} vertices",
                            step.a, step.partition
                        )
                    });
                }
                if let Some(last) = t.steps.last() {
                    c.ensure(
                        last.partition.is_almost_rectangular(),
                        Check::LastStepRectangular,
                        || format!("{seq:?} ends at {}", last.partition),
                    );
                }
            }
            (traces.len(), agree)
        }
        Err(e) => {
            c.fail(Check::ProcessEnumeration, e.to_string());
            (0, false)
        }
    };

    let mut q_est = None;
    let mut conjecture = None;
    if let Some(m) = &opts.matrix {
        match estimate_q(q, &m.field, m.samples, m.seed) {
            Ok(est) => {
                let est = est.q;
                c.ensure(est.len() == q.r(), Check::QPartCount, || {
                    format!("Q_est = {est}, r_P = {}", q.r())
                });
                let index = max_simple_u_chains(q).cardinality;
                c.ensure(est.max_part() == index, Check::QLargestPart, || {
                    format!("Q_est = {est}, largest simple U-chain {index}")
                });
                let dominated = lu.dominance_leq(&est).unwrap_or(false);
                c.ensure(dominated, Check::QDominatesLambdaU, || {
                    format!("λ_U = {lu}, Q_est = {est}")
                });
                let holds = est == lu;
                if opts.strict_conjecture && !holds {
                    c.fail(Check::Conjecture, format!("λ_U = {lu}, Q_est = {est}"));
                }
                conjecture = Some(holds);
                q_est = Some(est);
            }
            Err(e) => c.fail(Check::MatrixSampling, e.to_string()),
        }
    }

    Outcome {
        record: PartitionRecord {
            partition: q.clone(),
            lambda,
            lambda_u: lu,
            r: q.r(),
            processes,
            all_agree,
            q_est,
        },
        conjecture,
        failures: c.failures,
    }
}

/// Runs every check on every partition of every `n` in
/// `opts.n_min..=opts.n_max`, in parallel across partitions. Records come
/// back in enumeration order.
pub fn sweep(opts: &SweepOptions) -> Result<SweepReport> {
    if opts.n_min < 1 || opts.n_min > opts.n_max || opts.n_max > opts.max_n {
        return Err(Error::InvalidRange {
            n_min: opts.n_min,
            n_max: opts.n_max,
            cap: opts.max_n,
        });
    }
    let expected = partition_counts(opts.n_max);
    let mut failures = Vec::new();
    let mut counts = Vec::new();
    let mut all = Vec::new();
    for (n, &want) in expected.iter().enumerate().skip(opts.n_min) {
        let parts: Vec<Partition> = partitions_of(n).collect();
        if parts.len() as u64 != want {
            failures.push(Failure {
                partition: None,
                check: Check::PartitionCount,
                detail: format!("n = {n}: enumerated {}, expected {}", parts.len(), want),
            });
        }
        counts.push(PartitionCount {
            n,
            enumerated: parts.len(),
            expected: want,
        });
        all.extend(parts);
    }

    let outcomes: Vec<Outcome> = all.par_iter().map(|q| check_partition(q, opts)).collect();

    let mut records = Vec::with_capacity(outcomes.len());
    let mut stats = opts.matrix.as_ref().map(|_| ConjectureStats::default());
    for o in outcomes {
        if let (Some(s), Some(holds)) = (stats.as_mut(), o.conjecture) {
            s.checked += 1;
            if holds {
                s.agreeing += 1;
            } else {
                s.disagreeing.push(o.record.partition.clone());
            }
        }
        failures.extend(o.failures);
        records.push(o.record);
    }

    Ok(SweepReport {
        schema: SCHEMA_VERSION,
        n_min: opts.n_min,
        n_max: opts.n_max,
        partition_counts: counts,
        records,
        conjecture: stats,
        strict_conjecture: opts.strict_conjecture,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pentagonal_counts() {
        let p = partition_counts(12);
        assert_eq!(&p[..8], &[1, 1, 2, 3, 5, 7, 11, 15]);
        assert_eq!(p[10], 42);
        assert_eq!(p[12], 77);
    }

    #[test]
    fn small_sweep_is_clean() {
        let report = sweep(&SweepOptions::new(1, 6)).unwrap();
        assert!(report.passed(), "{:?}", report.failures);
        assert_eq!(report.records.len(), 1 + 2 + 3 + 5 + 7 + 11);
        assert!(report.conjecture.is_none());
    }

    #[test]
    fn bad_ranges() {
        for (lo, hi) in [(3, 2), (0, 4), (1, DEFAULT_MAX_N + 1)] {
            assert!(matches!(
                sweep(&SweepOptions::new(lo, hi)),
                Err(Error::InvalidRange { .. })
            ));
        }
    }

    #[test]
    fn trace_cap_overflow_is_a_failure() {
        let mut opts = SweepOptions::new(4, 4);
        // (3,1) has two full processes
        opts.trace_cap = 1;
        let report = sweep(&opts).unwrap();
        assert!(report
            .failures
            .iter()
            .any(|f| f.check == Check::ProcessEnumeration));
    }

    #[test]
    fn matrix_sweep_counts_conjecture() {
        let mut opts = SweepOptions::new(4, 5);
        opts.matrix = Some(MatrixOptions {
            field: PrimeField::default(),
            samples: 3,
            seed: 42,
        });
        let report = sweep(&opts).unwrap();
        assert!(report.passed(), "{:?}", report.failures);
        let stats = report.conjecture.unwrap();
        assert_eq!(stats.checked, 5 + 7);
        assert!(report.records.iter().all(|r| r.q_est.is_some()));
    }
}
