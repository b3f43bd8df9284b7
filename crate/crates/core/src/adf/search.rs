use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::hypotheses::{hypotheses_hold, hypothesis_i_holds, hypothesis_ii_holds, list_is_non_crossing};
use super::instance::AdfInstance;
use super::{AdfError, AdfNum};

/// Random values are integers over this denominator.
pub const RANDOM_DENOMINATOR: i64 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum SearchMode {
    /// Every instance with entries from `grid`.
    Exhaustive { grid: Vec<i64>, dedupe: bool },
    /// `budget` instances with entries uniform in `[-bound, bound]`, in units
    /// of `1 / RANDOM_DENOMINATOR`.
    Random { bound: i64, budget: u64, seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchConfig {
    /// Allowed odd list lengths.
    pub lengths: Vec<usize>,
    pub mode: SearchMode,
}

impl SearchConfig {
    fn validate(&self) -> Result<(), AdfError> {
        if self.lengths.is_empty() {
            return Err(AdfError::NoLengths);
        }
        if let Some(&k) = self.lengths.iter().find(|k| *k % 2 == 0) {
            return Err(AdfError::EvenSearchLength(k));
        }
        if let SearchMode::Exhaustive { grid, .. } = &self.mode {
            if grid.is_empty() {
                return Err(AdfError::EmptyGrid);
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchReport {
    /// Instances examined. Exhaustive mode only combines lists that satisfy
    /// hypothesis (i) individually, so there `hyp_i == examined`.
    pub examined: u64,
    pub hyp_i: u64,
    pub hyp_ii: u64,
    pub hypotheses_hold: u64,
    /// Instances meeting both hypotheses with a non-negative sum.
    pub counterexamples: Vec<AdfInstance<i64>>,
    /// Entries of reported instances are integers over this.
    pub denominator: i64,
}

impl SearchReport {
    fn empty(denominator: i64) -> Self {
        SearchReport { examined: 0, hyp_i: 0, hyp_ii: 0, hypotheses_hold: 0, counterexamples: Vec::new(), denominator }
    }

    fn record(&mut self, inst: &AdfInstance<i64>, hyp_i_known: Option<bool>) {
        self.examined += 1;
        let i = hyp_i_known.unwrap_or_else(|| hypothesis_i_holds(inst));
        let ii = hypothesis_ii_holds(inst);
        self.hyp_i += i as u64;
        self.hyp_ii += ii as u64;
        if i && ii {
            self.hypotheses_hold += 1;
            if !inst.alternating_sum().is_negative() {
                self.counterexamples.push(inst.clone());
            }
        }
    }

    fn merge(mut self, other: SearchReport) -> Self {
        self.examined += other.examined;
        self.hyp_i += other.hyp_i;
        self.hyp_ii += other.hyp_ii;
        self.hypotheses_hold += other.hypotheses_hold;
        self.counterexamples.extend(other.counterexamples);
        self
    }
}

/// Smallest relabelling of `inst` under list permutations and reversal of
/// all three lists at once. Both leave the hypotheses and the sum unchanged.
pub fn canonical_form<T: AdfNum>(inst: &AdfInstance<T>) -> AdfInstance<T> {
    let sorted = |lists: [Vec<T>; 3]| {
        let mut l = lists;
        l.sort();
        l
    };
    let forward = sorted(inst.lists().clone());
    let backward = sorted(inst.lists().clone().map(|mut l| {
        l.reverse();
        l
    }));
    AdfInstance::new(forward.min(backward)).expect("relabelling keeps validity")
}

/// Whether all finite gaps of consecutive entries are pairwise distinct.
pub fn has_distinct_gaps<T: AdfNum>(inst: &AdfInstance<T>) -> bool {
    let mut seen = HashSet::new();
    (0..3).all(|i| (1..inst.k(i)).all(|p| seen.insert(inst.gap(i, p).expect("interior gap"))))
}

/// All injective sequences of length `k` from `grid` meeting hypothesis (i).
fn admissible_lists(grid: &[i64], k: usize) -> Vec<Vec<i64>> {
    fn extend(grid: &[i64], k: usize, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for &v in grid {
            if !cur.contains(&v) {
                cur.push(v);
                extend(grid, k, cur, out);
                cur.pop();
            }
        }
    }
    let mut all = Vec::new();
    extend(grid, k, &mut Vec::new(), &mut all);
    all.into_iter()
        .filter(|l| {
            let probe = AdfInstance::new([l.clone(), vec![0], vec![0]]).expect("odd distinct list");
            list_is_non_crossing(&probe, 0)
        })
        .collect()
}

/// Exhaustive or seeded random probe of the conjecture. Deterministic for a
/// fixed configuration.
pub fn search_counterexamples(config: &SearchConfig) -> Result<SearchReport, AdfError> {
    config.validate()?;
    let mut lengths = config.lengths.clone();
    lengths.sort_unstable();
    lengths.dedup();
    match &config.mode {
        SearchMode::Exhaustive { grid, dedupe } => {
            let mut grid = grid.clone();
            grid.sort_unstable();
            grid.dedup();
            // Lists failing (i) on their own are never combined.
            let pool: Vec<Vec<i64>> = lengths.iter().flat_map(|&k| admissible_lists(&grid, k)).collect();
            let firsts: Vec<usize> = (0..pool.len()).collect();
            let report = firsts
                .par_iter()
                .map(|&a| {
                    let mut rep = SearchReport::empty(1);
                    let b_start = if *dedupe { a } else { 0 };
                    for b in b_start..pool.len() {
                        let c_start = if *dedupe { b } else { 0 };
                        for c in c_start..pool.len() {
                            let inst = AdfInstance::new([pool[a].clone(), pool[b].clone(), pool[c].clone()])
                                .expect("admissible lists");
                            if *dedupe && canonical_form(&inst) != inst {
                                continue;
                            }
                            rep.record(&inst, Some(true));
                        }
                    }
                    rep
                })
                .reduce(|| SearchReport::empty(1), SearchReport::merge);
            let mut report = report;
            report.counterexamples.sort();
            Ok(report)
        }
        SearchMode::Random { bound, budget, seed } => {
            let report = (0..*budget)
                .into_par_iter()
                .map(|n| {
                    let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                    rng.set_stream(n);
                    let inst = random_instance(&mut rng, &lengths, *bound);
                    let mut rep = SearchReport::empty(RANDOM_DENOMINATOR);
                    rep.record(&inst, None);
                    rep
                })
                .reduce(|| SearchReport::empty(RANDOM_DENOMINATOR), SearchReport::merge);
            let mut report = report;
            report.counterexamples.sort();
            Ok(report)
        }
    }
}

/// Lists of lengths drawn from `lengths` with distinct entries uniform in
/// `[-bound, bound]`.
pub fn random_instance<R: Rng>(rng: &mut R, lengths: &[usize], bound: i64) -> AdfInstance<i64> {
    let lists = [0, 1, 2].map(|_| {
        let k = lengths[rng.gen_range(0..lengths.len())];
        let mut l: Vec<i64> = Vec::with_capacity(k);
        while l.len() < k {
            let v = rng.gen_range(-bound..=bound);
            if !l.contains(&v) {
                l.push(v);
            }
        }
        l
    });
    AdfInstance::new(lists).expect("odd distinct lists")
}

/// Rejection sampling for an instance meeting both hypotheses with distinct
/// gaps. `None` once `tries` draws are spent.
pub fn random_valid_instance<R: Rng>(rng: &mut R, lengths: &[usize], bound: i64, tries: usize) -> Option<AdfInstance<i64>> {
    (0..tries)
        .map(|_| random_instance(rng, lengths, bound))
        .find(|inst| has_distinct_gaps(inst) && hypotheses_hold(inst))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form_is_invariant() {
        let inst = AdfInstance::new([vec![3i64, 1, 2], vec![5], vec![-4]]).unwrap();
        let c = canonical_form(&inst);
        assert_eq!(canonical_form(&inst.permuted([2, 0, 1])), c);
        let reversed = AdfInstance::new([vec![2i64, 1, 3], vec![5], vec![-4]]).unwrap();
        assert_eq!(canonical_form(&reversed), c);
    }

    #[test]
    fn random_mode_is_deterministic() {
        let cfg = SearchConfig { lengths: vec![1, 3], mode: SearchMode::Random { bound: 1 << 20, budget: 300, seed: 7 } };
        assert_eq!(search_counterexamples(&cfg).unwrap(), search_counterexamples(&cfg).unwrap());
    }

    #[test]
    fn rejects_bad_configs() {
        let cfg = SearchConfig { lengths: vec![2], mode: SearchMode::Exhaustive { grid: vec![0, 1], dedupe: true } };
        assert_eq!(search_counterexamples(&cfg), Err(AdfError::EvenSearchLength(2)));
    }
}
