use serde::Serialize;

use super::cells::partition_v12;
use super::identities::{horizon, inclusio, inclusion_on_atoms};
use super::instance::AdfInstance;
use super::profile::{atoms_of, winding_profile_w12_0, winding_profile_wi, Atom};
use super::AdfNum;

/// Which inclusion argument applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TapPath {
    /// `W12^0 <= 1` everywhere.
    PairProfile,
    /// List `list` (1-based) has a single entry.
    Singleton { list: usize },
}

/// One endpoint of an interval; `None` is infinite.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Endpoint<T> {
    pub at: Option<T>,
    pub closed: bool,
}

/// A connected component of `{y : W12^0(y) = 0}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ZeroComponent<T> {
    pub lo: Endpoint<T>,
    pub hi: Endpoint<T>,
    /// Whether some `-y_(3,j)` lies in the component.
    pub meets_list3: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TapReport<T> {
    pub applicable: bool,
    pub path: Option<TapPath>,
    pub max_plateau: Option<i64>,
    pub inclusion: bool,
    pub strict: bool,
    /// Integrals compared by the inclusion argument (left must be smaller).
    pub lhs: Option<T>,
    pub rhs: Option<T>,
    pub sum: T,
    /// The integral comparison agrees with the sign of the alternating sum,
    /// and the sum is negative.
    pub confirmed: bool,
    pub zero_components: Vec<ZeroComponent<T>>,
}

/// Components of the zero set of `W12^0`, marked by whether they contain a
/// point `-y_(3,j)`.
pub fn zero_components<T: AdfNum>(inst: &AdfInstance<T>) -> Option<Vec<ZeroComponent<T>>> {
    let part = partition_v12(inst).ok()?;
    let w = winding_profile_w12_0(inst, &part);
    let marks: Vec<T> = inst.lists()[2].iter().map(|v| -v.clone()).collect();
    let atoms = atoms_of(w.breakpoints().into_iter().chain(marks.iter().cloned()).collect());
    let mut out = Vec::new();
    let mut k = 0;
    while k < atoms.len() {
        if w.atom_value2(&atoms[k]) != 0 {
            k += 1;
            continue;
        }
        let start = k;
        while k + 1 < atoms.len() && w.atom_value2(&atoms[k + 1]) == 0 {
            k += 1;
        }
        let lo = match &atoms[start] {
            Atom::LeftEnd => Endpoint { at: None, closed: false },
            Atom::Point(y) => Endpoint { at: Some(y.clone()), closed: true },
            Atom::RightOf(y) => Endpoint { at: Some(y.clone()), closed: false },
        };
        let hi = match &atoms[k] {
            Atom::Point(y) => Endpoint { at: Some(y.clone()), closed: true },
            _ if k + 1 == atoms.len() => Endpoint { at: None, closed: false },
            _ => match &atoms[k + 1] {
                Atom::Point(y) => Endpoint { at: Some(y.clone()), closed: false },
                _ => unreachable!("atoms alternate"),
            },
        };
        let meets_list3 = atoms[start..=k].iter().any(|a| matches!(a, Atom::Point(y) if marks.contains(y)));
        out.push(ZeroComponent { lo, hi, meets_list3 });
        k += 1;
    }
    Some(out)
}

/// Tries the inclusion arguments that prove the conjecture in special cases
/// and cross-checks their conclusion against the alternating sum.
pub fn tap_check<T: AdfNum>(inst: &AdfInstance<T>) -> TapReport<T> {
    let sum = inst.alternating_sum();
    let t = horizon(inst);
    let zero_components = zero_components(inst).unwrap_or_default();
    let mut rep = TapReport {
        applicable: false,
        path: None,
        max_plateau: None,
        inclusion: false,
        strict: false,
        lhs: None,
        rhs: None,
        sum: sum.clone(),
        confirmed: false,
        zero_components,
    };
    if let Ok(part) = partition_v12(inst) {
        let w120 = winding_profile_w12_0(inst, &part);
        let max = w120.plateaus().into_iter().max().unwrap_or(0);
        rep.max_plateau = Some(max);
        if max <= 1 {
            let (inclusion, strict) = inclusio(inst, &part);
            let lhs = winding_profile_wi(inst, 2).integral_from(&-t.clone());
            let rhs = w120.complement_integral_to(&t);
            return finish(rep, TapPath::PairProfile, inclusion, strict, lhs, rhs);
        }
    }
    if let Some(single) = (0..3).rev().find(|&i| inst.k(i) == 1) {
        let others: Vec<usize> = (0..3).filter(|&i| i != single).collect();
        let shift = inst.lists()[single][0].clone();
        let moved = AdfInstance::new([
            inst.lists()[others[0]].clone(),
            inst.lists()[others[1]].iter().map(|v| v.clone() + shift.clone()).collect(),
            vec![T::zero()],
        ])
        .expect("shifting keeps entries distinct");
        let w1 = winding_profile_wi(&moved, 0);
        let w2 = winding_profile_wi(&moved, 1);
        let points = w1.breakpoints().into_iter().chain(w2.breakpoints().into_iter().map(|v| -v)).collect();
        let (inclusion, strict) =
            inclusion_on_atoms(points, |a| w1.atom_value2(a) == 2, |a| w2.reflected_value2(a) == 0);
        let lhs = w1.integral_from(&-t.clone());
        let rhs = w2.complement_integral_to(&t);
        return finish(rep, TapPath::Singleton { list: single + 1 }, inclusion, strict, lhs, rhs);
    }
    rep
}

fn finish<T: AdfNum>(mut rep: TapReport<T>, path: TapPath, inclusion: bool, strict: bool, lhs: T, rhs: T) -> TapReport<T> {
    rep.applicable = true;
    rep.path = Some(path);
    rep.inclusion = inclusion;
    rep.strict = strict;
    let integral_says_negative = lhs < rhs;
    rep.confirmed = inclusion && strict && integral_says_negative && rep.sum.is_negative();
    rep.lhs = Some(lhs);
    rep.rhs = Some(rhs);
    rep
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn perturbative_example_is_applicable() {
        let inst = AdfInstance::new([vec![0i64, 100, 200], vec![0, 10, 20], vec![-1, -9, -21, -119, -111, -99, -201, -209, -221]])
            .unwrap();
        let rep = tap_check(&inst);
        assert!(rep.applicable && rep.confirmed, "{rep:?}");
        assert_eq!(rep.path, Some(TapPath::PairProfile));
        // The five zero intervals of the pair profile.
        assert_eq!(rep.zero_components.len(), 5);
        assert!(rep.zero_components.last().unwrap().hi.at.is_none());
    }

    #[test]
    fn almost_perturbative_example_is_not_applicable() {
        // s13 = 130 >= s21 = 100, so the pair profile reaches 2 on (100, 130).
        let inst = AdfInstance::new([vec![0i64, 100, 300], vec![0, 70, 130], vec![-499, -493, -482]]).unwrap();
        assert!(crate::adf::hypotheses_hold(&inst));
        let rep = tap_check(&inst);
        assert!(!rep.applicable);
        assert_eq!(rep.max_plateau, Some(2));
        let part = partition_v12(&inst).unwrap();
        let w = winding_profile_w12_0(&inst, &part);
        assert_eq!(w.atom_value2(&Atom::RightOf(100)), 4);
        assert_eq!(w.atom_value2(&Atom::RightOf(129)), 4);
        // The interval (s22, s23) is a zero component avoided by list 3.
        let closed_off = rep.zero_components.iter().find(|c| c.lo.at == Some(170)).unwrap();
        assert_eq!(closed_off.hi.at, Some(230));
        assert!(!closed_off.meets_list3);
    }

    #[test]
    fn singleton_path() {
        let inst = AdfInstance::new([vec![-3i64], vec![1], vec![0]]).unwrap();
        let rep = tap_check(&inst);
        assert!(rep.applicable && rep.confirmed);
    }
}
