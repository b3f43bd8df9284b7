use num_traits::{One, Signed, Zero};

use super::BridgeError;
use crate::adf::{has_distinct_gaps, hypotheses_hold, AdfInstance};
use crate::geom::{CylCurve, Point};
use crate::scalar::{int, Rational};

type Q = Rational;

/// Period and area target; `None` picks the defaults.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RecipeParams {
    pub period: Option<Q>,
    /// Target for minus the total area of the three end graphs.
    pub area_target: Option<Q>,
}

/// Curves produced from an instance, together with the choices made.
#[derive(Debug, Clone, PartialEq)]
pub struct Recipe {
    pub curves: [CylCurve<Q>; 3],
    pub period: Q,
    pub area_target: Q,
    /// Depth of the tent subtracted from each end graph.
    pub bump: Q,
}

impl Recipe {
    /// Open interval of abscissae whose fibers read back the instance.
    pub fn reading_window(&self) -> (Q, Q) {
        let h = half(&self.period);
        (int(2) - &h, h - int(2))
    }

    /// Half the smallest positive vertex abscissa over the lifts.
    pub fn probe_abscissa(&self) -> Q {
        let smallest = self
            .curves
            .iter()
            .flat_map(|c| c.lift().iter().map(|p| p.x.clone()))
            .filter(|x| x.is_positive())
            .min()
            .unwrap_or_else(|| self.period.clone());
        half(&smallest)
    }
}

/// Decreasing map `[0, inf) -> (1, 2]` placing the vertical segments.
pub fn gadget(gap: &Q) -> Q {
    Q::one() + Q::one() / (Q::one() + gap)
}

fn half(v: &Q) -> Q {
    v / int(2)
}

fn default_period(inst: &AdfInstance<Q>) -> Q {
    let kmax = (0..3).map(|i| inst.k(i)).max().unwrap_or(1) as i64;
    let ymax = inst.lists().iter().flatten().map(|v| v.abs().ceil()).max().unwrap_or_else(Q::zero);
    int(8 * (1 + kmax)) * (Q::one() + ymax)
}

fn curve_lift(list: &[Q], period: &Q, bump: &Q) -> Vec<Point<Q>> {
    let k = list.len();
    let (left, right) = (-half(period), half(period));
    let mut pts = vec![Point::new(&left + Q::one(), list[0].clone())];
    for p in 0..k - 1 {
        let g = gadget(&(&list[p] - &list[p + 1]).abs());
        // 0-based p even is an odd 1-based index: the excursion goes right.
        let x = if p % 2 == 0 { &right - g } else { &left + g };
        pts.push(Point::new(x.clone(), list[p].clone()));
        pts.push(Point::new(x, list[p + 1].clone()));
    }
    pts.push(Point::new(&right - Q::one(), list[k - 1].clone()));
    let apex = half(&(&list[0] + &list[k - 1])) - bump;
    pts.push(Point::new(right, apex));
    pts
}

/// Three degree-one curves whose fibers just right of `x = 0` read back the
/// instance, joined across `x = L/2` by graphs of tent-shaped functions with
/// negative total sum.
pub fn build_curves(inst: &AdfInstance<Q>, params: &RecipeParams) -> Result<Recipe, BridgeError> {
    if !hypotheses_hold(inst) {
        return Err(BridgeError::Hypotheses);
    }
    if !has_distinct_gaps(inst) {
        return Err(BridgeError::TiedGaps);
    }
    let ends: Q = (0..3).map(|i| &inst.lists()[i][0] + inst.lists()[i].last().expect("non-empty")).sum();
    let firsts: Q = (0..3).map(|i| inst.lists()[i][0].clone()).sum();
    let lasts: Q = (0..3).map(|i| inst.lists()[i].last().expect("non-empty").clone()).sum();
    // Smallest tent depth keeping the sum of the three graphs at most -1.
    let min_bump = ((firsts.max(lasts) + Q::one()) / int(3)).max(Q::zero());
    let area_target = params.area_target.clone().unwrap_or_else(|| &min_bump * int(3) - &ends);
    let bump = (&ends + &area_target) / int(3);
    if bump.is_negative() {
        return Err(BridgeError::AreaTargetTooSmall { min: crate::format_rational(&-ends) });
    }
    let mut period = params.period.clone().unwrap_or_else(|| default_period(inst));
    if period <= int(4) {
        return Err(BridgeError::PeriodTooSmall);
    }
    let explicit = params.period.is_some();
    for _ in 0..16 {
        let curves: Vec<CylCurve<Q>> = inst
            .lists()
            .iter()
            .map(|l| CylCurve::new(period.clone(), curve_lift(l, &period, &bump), 1))
            .collect::<Result<_, _>>()?;
        let mut simple = true;
        for c in &curves {
            simple &= c.is_simple()?;
        }
        if simple {
            let curves: [CylCurve<Q>; 3] = curves.try_into().expect("three curves");
            return Ok(Recipe { curves, period, area_target, bump });
        }
        if explicit {
            break;
        }
        period *= int(2);
    }
    Err(BridgeError::NotSimple { tried: crate::format_rational(&period) })
}

/// `y dx` of the curves split over the strips of the fundamental domain
/// `[-L/2 + 1, L/2 + 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct AreaBreakdown {
    pub total: Q,
    /// Strip `[-L/2 + 2, L/2 - 2]`.
    pub middle: Q,
    /// Strips `[-L/2 + 1, -L/2 + 2]` and `[L/2 - 2, L/2 - 1]`.
    pub ends: Q,
    /// Strip `[L/2 - 1, L/2 + 1]`.
    pub graphs: Q,
}

impl AreaBreakdown {
    /// `total = (L - 4) Q - C1 - R` with `C1 = -ends`.
    pub fn identity_holds(&self, recipe: &Recipe, alternating_sum: &Q) -> bool {
        let c1 = -self.ends.clone();
        self.total == (&recipe.period - int(4)) * alternating_sum - c1 - &recipe.area_target
    }
}

fn strip_area(curve: &CylCurve<Q>, lo: &Q, hi: &Q) -> Q {
    let pts = curve.closed_lift();
    pts.windows(2)
        .map(|w| {
            let (a, b) = (&w[0], &w[1]);
            if a.x == b.x {
                return Q::zero();
            }
            let (l, r) = if a.x < b.x { (a, b) } else { (b, a) };
            let x0 = l.x.clone().max(lo.clone());
            let x1 = r.x.clone().min(hi.clone());
            if x0 >= x1 {
                return Q::zero();
            }
            let at = |x: &Q| &l.y + (&r.y - &l.y) * (x - &l.x) / (&r.x - &l.x);
            let piece = half(&(at(&x0) + at(&x1))) * (&x1 - &x0);
            if a.x < b.x {
                piece
            } else {
                -piece
            }
        })
        .sum()
}

/// Measures each strip of the built curves.
pub fn area_breakdown(recipe: &Recipe) -> AreaBreakdown {
    let h = half(&recipe.period);
    let one = Q::one();
    let two = int(2);
    let sum = |lo: &Q, hi: &Q| -> Q { recipe.curves.iter().map(|c| strip_area(c, lo, hi)).sum() };
    let middle = sum(&(&two - &h), &(&h - &two));
    let ends = sum(&(&one - &h), &(&two - &h)) + sum(&(&h - &two), &(&h - &one));
    let graphs = sum(&(&h - &one), &(&h + &one));
    let total = recipe.curves.iter().map(|c| c.area_one_period()).sum();
    AreaBreakdown { total, middle, ends, graphs }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inst(lists: [Vec<i64>; 3]) -> AdfInstance<Q> {
        AdfInstance::new(lists).unwrap().to_rational()
    }

    #[test]
    fn singleton_lists_give_tent_graphs() {
        let r = build_curves(&inst([vec![-1], vec![0], vec![0]]), &RecipeParams::default()).unwrap();
        assert_eq!(r.bump, Q::zero());
        assert_eq!(r.area_target, int(2));
        assert!(r.curves.iter().all(|c| c.degree() == 1 && c.is_simple().unwrap()));
        let a = area_breakdown(&r);
        assert_eq!(a.graphs, -r.area_target.clone());
        assert_eq!(a.middle, (&r.period - int(4)) * int(-1));
        assert!(a.identity_holds(&r, &int(-1)));
        assert_eq!(a.total, a.middle.clone() + a.ends.clone() + a.graphs.clone());
    }

    #[test]
    fn rejects_invalid_instances() {
        let bad = inst([vec![-1, -4, -2], vec![0], vec![0]]);
        assert_eq!(build_curves(&bad, &RecipeParams::default()), Err(BridgeError::Hypotheses));
        let ok = inst([vec![-1], vec![0], vec![0]]);
        let small = RecipeParams { period: Some(int(4)), area_target: None };
        assert_eq!(build_curves(&ok, &small), Err(BridgeError::PeriodTooSmall));
        let low = RecipeParams { period: None, area_target: Some(int(-5)) };
        assert!(matches!(build_curves(&ok, &low), Err(BridgeError::AreaTargetTooSmall { .. })));
    }

    #[test]
    fn gadget_is_decreasing_into_one_two() {
        assert_eq!(gadget(&Q::zero()), int(2));
        assert!(gadget(&int(3)) < gadget(&int(2)));
        assert!(gadget(&int(1000)) > Q::one());
    }
}
