use serde::Serialize;

use super::instance::AdfInstance;
use super::ncs::{ncs_check, NcsViolation};
use super::xreal::XReal;
use super::AdfNum;

/// A failed instance of hypothesis (i): list `list`, indices `p < q`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ListViolation {
    pub list: usize,
    pub p: usize,
    pub q: usize,
    pub axiom: NcsViolation,
}

/// A failed instance of hypothesis (ii) at indices `p`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TripleViolation {
    pub p: [usize; 3],
    pub axiom: NcsViolation,
}

fn negated<T: AdfNum>(pair: [XReal<T>; 2]) -> [XReal<T>; 2] {
    pair.map(|v| -v)
}

fn list_violations<T: AdfNum>(inst: &AdfInstance<T>, i: usize, stop_early: bool, out: &mut Vec<ListViolation>) {
    let k = inst.k(i);
    for p in 0..=k {
        for q in ((p + 2)..=k).step_by(2) {
            if let Err(axiom) = ncs_check(&[inst.pair(i, p), negated(inst.pair(i, q))]) {
                out.push(ListViolation { list: i + 1, p, q, axiom });
                if stop_early {
                    return;
                }
            }
        }
    }
}

/// Every failure of the per-list non-crossing hypothesis.
pub fn check_hypothesis_i<T: AdfNum>(inst: &AdfInstance<T>) -> Vec<ListViolation> {
    let mut out = Vec::new();
    for i in 0..3 {
        list_violations(inst, i, false, &mut out);
    }
    out
}

/// Whether one list on its own satisfies hypothesis (i).
pub fn list_is_non_crossing<T: AdfNum>(inst: &AdfInstance<T>, i: usize) -> bool {
    let mut out = Vec::new();
    list_violations(inst, i, true, &mut out);
    out.is_empty()
}

pub fn hypothesis_i_holds<T: AdfNum>(inst: &AdfInstance<T>) -> bool {
    (0..3).all(|i| list_is_non_crossing(inst, i))
}

fn triple_violations<T: AdfNum>(inst: &AdfInstance<T>, stop_early: bool) -> Vec<TripleViolation> {
    let mut out = Vec::new();
    let k = [inst.k(0), inst.k(1), inst.k(2)];
    for parity in 0..2 {
        for p1 in (parity..=k[0]).step_by(2) {
            for p2 in (parity..=k[1]).step_by(2) {
                for p3 in (parity..=k[2]).step_by(2) {
                    let pairs = [inst.pair(0, p1), inst.pair(1, p2), inst.pair(2, p3)];
                    if let Err(axiom) = ncs_check(&pairs) {
                        out.push(TripleViolation { p: [p1, p2, p3], axiom });
                        if stop_early {
                            return out;
                        }
                    }
                }
            }
        }
    }
    out
}

/// Every failure of the triple non-crossing-sums hypothesis.
pub fn check_hypothesis_ii<T: AdfNum>(inst: &AdfInstance<T>) -> Vec<TripleViolation> {
    triple_violations(inst, false)
}

pub fn hypothesis_ii_holds<T: AdfNum>(inst: &AdfInstance<T>) -> bool {
    triple_violations(inst, true).is_empty()
}

/// Both hypotheses together.
pub fn hypotheses_hold<T: AdfNum>(inst: &AdfInstance<T>) -> bool {
    hypothesis_i_holds(inst) && hypothesis_ii_holds(inst)
}

/// Summary of one instance against the conjecture.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AdfVerdict<T> {
    pub hyp_i: bool,
    pub hyp_ii: bool,
    pub sum: T,
    /// `false` only for a counterexample: both hypotheses hold and `sum >= 0`.
    pub conjecture_consistent: bool,
    pub hyp_i_violations: Vec<ListViolation>,
    pub hyp_ii_violations: Vec<TripleViolation>,
}

pub fn adf_verdict<T: AdfNum>(inst: &AdfInstance<T>) -> AdfVerdict<T> {
    let hyp_i_violations = check_hypothesis_i(inst);
    let hyp_ii_violations = check_hypothesis_ii(inst);
    let hyp_i = hyp_i_violations.is_empty();
    let hyp_ii = hyp_ii_violations.is_empty();
    let sum = inst.alternating_sum();
    let conjecture_consistent = !(hyp_i && hyp_ii) || sum.is_negative();
    AdfVerdict { hyp_i, hyp_ii, sum, conjecture_consistent, hyp_i_violations, hyp_ii_violations }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inst(a: &[i64], b: &[i64], c: &[i64]) -> AdfInstance<i64> {
        AdfInstance::new([a.to_vec(), b.to_vec(), c.to_vec()]).unwrap()
    }

    #[test]
    fn single_lists() {
        assert!(hypothesis_i_holds(&inst(&[0, 2, 3], &[4], &[-9])));
        let bad = inst(&[-1, -4, -2], &[0], &[0]);
        assert!(!hypothesis_i_holds(&bad));
        assert!(check_hypothesis_i(&bad).iter().all(|v| v.list == 1));
    }

    #[test]
    fn triple_sums() {
        assert!(hypothesis_ii_holds(&inst(&[-1], &[0], &[0])));
        let v = check_hypothesis_ii(&inst(&[1], &[0], &[0]));
        assert_eq!(v[0].p, [0, 0, 0]);
    }

    #[test]
    fn verdicts() {
        let v = adf_verdict(&inst(&[-1], &[0], &[0]));
        assert!(v.hyp_i && v.hyp_ii && v.conjecture_consistent);
        assert_eq!(v.sum, -1);
        let v = adf_verdict(&inst(&[-1, -4, -2], &[0], &[0]));
        assert!(!v.hyp_i && v.conjecture_consistent);
        assert_eq!(v.sum, 1);
    }
}
