use serde::Serialize;

use super::cells::{build_g12, V12Partition};
use super::instance::{ordered_pairs, AdfInstance};
use super::profile::{atoms_of, winding_profile_w12_0, winding_profile_wi, winding_profile_wii, Atom, WindingProfile};
use super::xreal::XReal;
use super::AdfNum;

/// Outcome of one identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub checks: Vec<IdentityCheck>,
}

impl IdentityReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &IdentityCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }

    fn push(&mut self, name: impl Into<String>, passed: bool) {
        self.checks.push(IdentityCheck { name: name.into(), passed });
    }
}

/// A horizon beyond every breakpoint of every profile of the instance.
pub fn horizon<T: AdfNum>(inst: &AdfInstance<T>) -> T {
    let m = inst.lists().iter().flatten().map(|v| v.abs()).max().unwrap_or_else(T::zero);
    let four = T::from_i64(4).expect("small");
    four * m + T::one()
}

/// Set inclusion `A ⊂ B` over the atoms of `points`, and whether no boundary
/// point of `A` is a boundary point of `B`.
pub fn inclusion_on_atoms<T: AdfNum>(
    points: Vec<T>,
    in_a: impl Fn(&Atom<T>) -> bool,
    in_b: impl Fn(&Atom<T>) -> bool,
) -> (bool, bool) {
    let atoms = atoms_of(points);
    let included = atoms.iter().all(|a| !in_a(a) || in_b(a));
    let boundary = |f: &dyn Fn(&Atom<T>) -> bool| -> Vec<usize> {
        (1..atoms.len())
            .step_by(2)
            .filter(|&k| {
                let left = f(&atoms[k - 1]);
                left != f(&atoms[k]) || left != f(&atoms[k + 1])
            })
            .collect()
    };
    let ba = boundary(&in_a);
    let bb = boundary(&in_b);
    let strict = ba.iter().all(|k| !bb.contains(k));
    (included, strict)
}

fn w120_check_points<T: AdfNum>(w3: &WindingProfile<T>, w120: &WindingProfile<T>) -> Vec<T> {
    w3.breakpoints().into_iter().map(|v| -v).chain(w120.breakpoints()).collect()
}

/// The inclusion `{W3(-y) = 1} ⊂ {W12^0(y) = 0}` and its strictness.
pub fn inclusio<T: AdfNum>(inst: &AdfInstance<T>, part: &V12Partition) -> (bool, bool) {
    let w3 = winding_profile_wi(inst, 2);
    let w120 = winding_profile_w12_0(inst, part);
    inclusion_on_atoms(w120_check_points(&w3, &w120), |a| w3.reflected_value2(a) == 2, |a| w120.atom_value2(a) == 0)
}

fn xsum<T: AdfNum>(a: &XReal<T>, b: &XReal<T>) -> XReal<T> {
    a.checked_add(b).expect("only -inf padding occurs")
}

/// Evaluates every identity exactly. On instances satisfying both
/// hypotheses with distinct finite gaps, every check should pass.
pub fn identity_suite<T: AdfNum>(inst: &AdfInstance<T>) -> IdentityReport {
    let mut rep = IdentityReport { checks: Vec::new() };
    let t = horizon(inst);
    let q: Vec<T> = (0..3).map(|i| inst.list_sum(i)).collect();

    for i in 0..3 {
        let w = winding_profile_wi(inst, i);
        rep.push(format!("fubini[{}]", i + 1), w.integral_from(&-t.clone()) == q[i].clone() + t.clone());
        // int_-T^inf (1 - W(-y)) dy = int_-inf^T (1 - W(u)) du.
        rep.push(format!("fubini_sym[{}]", i + 1), w.complement_integral_to(&t) == t.clone() - q[i].clone());
        let points_half = inst.lists()[i].iter().all(|v| w.value2_at(v) == 1);
        let plateaus_binary = w.plateaus().iter().all(|v| *v == 0 || *v == 1);
        rep.push(format!("jordan[{}]", i + 1), points_half && plateaus_binary);
    }
    for (i, i2, i3) in ordered_pairs() {
        if i > i2 {
            continue;
        }
        let w = winding_profile_wii(inst, i, i2);
        rep.push(
            format!("fubini_2[{}{}]", i + 1, i2 + 1),
            w.integral_from(&-t.clone()) == q[i].clone() + q[i2].clone() + t.clone(),
        );
        let vanishes = (0..=inst.k(i3) + 1).all(|j| w.value2(&-inst.y(i3, j)) == 0);
        rep.push(format!("pair_vanishing[{}{}]", i + 1, i2 + 1), vanishes);
    }
    for (i, i2, i3) in ordered_pairs() {
        rep.push(format!("gap_monotone[{}{}]", i + 1, i2 + 1), gap_monotone(&inst.permuted([i, i2, i3])));
    }

    let graph = match build_g12(inst) {
        Ok(g) => g,
        Err(_) => {
            rep.push("g12", false);
            return rep;
        }
    };
    rep.push("g12", graph.lines_balanced());
    let part = &graph.partition;
    let q12 = q[0].clone() + q[1].clone();

    let finite_cells = part.v0.iter().filter(|&&(a, b)| a >= 1 && a <= inst.k(0) && b >= 1 && b <= inst.k(1));
    let sam = finite_cells.fold(T::zero(), |acc, &(a, b)| {
        let s = inst.lists()[0][a - 1].clone() + inst.lists()[1][b - 1].clone();
        if (a + b) % 2 == 0 {
            acc + s
        } else {
            acc - s
        }
    });
    rep.push("sam", sam == q12);

    let mix = (0..=inst.k(2) + 1).all(|r| {
        let total: i32 = part
            .v1
            .iter()
            .map(|&(a, b)| {
                let s = xsum(&xsum(&inst.y(0, a), &inst.y(1, b)), &inst.y(2, r)).sgn();
                if (a + b) % 2 == 0 {
                    s
                } else {
                    -s
                }
            })
            .sum();
        total == 0
    });
    rep.push("mix", mix);

    let w120 = winding_profile_w12_0(inst, part);
    rep.push("cob", (0..=inst.k(2) + 1).all(|r| w120.value2(&-inst.y(2, r)) == 0));
    rep.push("fubini_w12_0", w120.integral_from(&-t.clone()) == q12.clone() + t.clone());
    rep.push("breathe", w120.complement_integral_to(&t) == t.clone() - q12);
    let (included, strict) = inclusio(inst, part);
    rep.push("inclusio", included);
    rep.push("inclusio_strict", strict);
    rep
}

/// For lists ordered `(i, i', i'')`: the winding number of list `i''` does
/// not see the pair with the smaller gap.
fn gap_monotone<T: AdfNum>(inst: &AdfInstance<T>) -> bool {
    let w = winding_profile_wi(inst, 2);
    let at = |a: XReal<T>, b: XReal<T>| w.value2(&-xsum(&a, &b));
    for p in 0..=inst.k(0) {
        for q in (0..=inst.k(1)).filter(|q| (p + q) % 2 == 0) {
            let (g1, g2) = (inst.gap(0, p), inst.gap(1, q));
            let le = match (&g1, &g2) {
                (_, None) => true,
                (None, Some(_)) => false,
                (Some(a), Some(b)) => a <= b,
            };
            let ge = match (&g1, &g2) {
                (None, _) => true,
                (Some(_), None) => false,
                (Some(a), Some(b)) => a >= b,
            };
            if le && [q, q + 1].iter().any(|&b| at(inst.y(0, p), inst.y(1, b)) != at(inst.y(0, p + 1), inst.y(1, b))) {
                return false;
            }
            if ge && [p, p + 1].iter().any(|&a| at(inst.y(0, a), inst.y(1, q)) != at(inst.y(0, a), inst.y(1, q + 1))) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn perturbative_example_passes_everything() {
        let inst = AdfInstance::new([vec![0i64, 100, 200], vec![0, 10, 20], vec![-1, -9, -21, -119, -111, -99, -201, -209, -221]])
            .unwrap();
        let rep = identity_suite(&inst);
        assert!(rep.all_passed(), "{:?}", rep.failures().collect::<Vec<_>>());
    }

    #[test]
    fn fubini_on_a_singleton() {
        let inst = AdfInstance::new([vec![5i64], vec![-7], vec![-9]]).unwrap();
        let w = winding_profile_wi(&inst, 0);
        assert_eq!(w.integral_from(&-10), 15);
        assert!(identity_suite(&inst).all_passed());
    }
}
