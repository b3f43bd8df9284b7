//! End-to-end acceptance suite. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use peglab::adf::{
    adf_verdict, identity_suite, influence_free, non_crossing_sums, random_valid_instance,
    search_counterexamples, AdfInstance, SearchConfig, SearchMode, XReal,
};
use peglab::bridge::{area_breakdown, build_curves, fiber_extract, sai_check, trace_components, Recipe, RecipeParams};
use peglab::gen::{
    random_admissible_triple, random_cylinder_curve, random_lipschitz_pair, random_simple_polygon, random_trace,
    rotating_square_trace, seeded_rng,
};
use peglab::geom::{
    area_under, general_position_violation, is_simple_points, perturb_generic, signed_area, CylCurve, PlFunction, Point,
};
use peglab::pinch::{compress_curve, phi_n, phi_n_inv, PinchParams};
use peglab::square::{
    area_ineq_value, conserved_residual, find_all, find_inscribed_square, joint_inscribe, joint_inscribe_generic,
    trace_square_family, Shape,
};
use peglab::{int, rat, Rational};
use rand::Rng;
use rayon::prelude::*;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn tent_pair() -> (PlFunction<f64>, PlFunction<f64>) {
    let b = vec![-1.0, 0.0, 1.0];
    (PlFunction::on_interval(b.clone(), vec![0.0, -0.5, 0.0]).unwrap(), PlFunction::on_interval(b, vec![0.0, 0.5, 0.0]).unwrap())
}

fn conserved_integral() -> Outcome {
    let start = Instant::now();
    let bad = (0..1000u64)
        .into_par_iter()
        .filter(|&seed| {
            let mut rng = seeded_rng(seed);
            let points = 2 + (seed as usize % 49);
            conserved_residual(&random_trace(&mut rng, points, 10)) != int(0)
        })
        .count();
    ensure(bad == 0, || format!("{bad} of 1000 exact traces have non-zero residual"))?;
    let trace = rotating_square_trace(10_000);
    let residual = conserved_residual(&trace).abs();
    let last = trace.len() - 1;
    let rhs = (trace.a[last].powi(2) - trace.b[last].powi(2)) / 2.0 - (trace.a[0].powi(2) - trace.b[0].powi(2)) / 2.0;
    ensure(residual < 1e-6, || format!("rotating residual {residual:e}"))?;
    ensure((rhs + 0.5).abs() < 1e-12, || format!("rotating right-hand side {rhs}"))?;
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(10), || format!("took {elapsed:?}"))?;
    Ok(format!("1000 exact traces at 0, rotating residual {residual:.1e}, {elapsed:.2?}"))
}

fn inscribed_square() -> Outcome {
    let (f, g) = tent_pair();
    let best = find_inscribed_square(&f, &g, 1024, 1e-12).map_err(|e| e.to_string())?;
    ensure(best.max_residual() < 1e-8, || format!("tent residual {:e}", best.max_residual()))?;
    let all = find_all(&f, &g, &Shape::square(), 1024, 1e-12).map_err(|e| e.to_string())?;
    let corners = [(-1.0, -1.0), (1.0, -1.0), (1.0, 1.0), (-1.0, 1.0)].map(|(x, y)| (x / 3.0, y / 3.0));
    let symmetric = all.iter().any(|r| {
        corners.iter().all(|c| r.vertices.iter().any(|v| (v.x - c.0).abs() < 1e-6 && (v.y - c.1).abs() < 1e-6))
    });
    ensure(symmetric, || "symmetric square of side 2/3 not among the brackets".into())?;
    let failures: Vec<String> = (0..100u64)
        .into_par_iter()
        .filter_map(|seed| {
            let (f, g) = random_lipschitz_pair(&mut seeded_rng(seed), 6, 0.9);
            let run = || -> Result<(), String> {
                let r = find_inscribed_square(&f, &g, 2048, 1e-12).map_err(|e| e.to_string())?;
                ensure(r.max_residual() < 1e-6, || format!("residual {:e}", r.max_residual()))?;
                let family = trace_square_family(&f, &g, 2048).map_err(|e| e.to_string())?;
                ensure(is_simple_points(&family.curves[2], false), || "third vertex curve not simple".into())
            };
            run().err().map(|e| format!("seed {seed}: {e}"))
        })
        .collect();
    ensure(failures.is_empty(), || failures.join("; "))?;
    Ok(format!("tent residual {:.1e}, {} brackets, 100 random pairs verified", best.max_residual(), all.len()))
}

fn polygon_area() -> Outcome {
    let bad = (0..1000u64)
        .into_par_iter()
        .filter(|&seed| {
            let mut rng = seeded_rng(seed);
            let p = random_simple_polygon(&mut rng, 3 + seed as usize % 10, 10);
            area_under(&p) != -signed_area(&p).expect("simple closed polygon")
        })
        .count();
    ensure(bad == 0, || format!("{bad} of 1000 polygons disagree"))?;
    Ok("1000 polygons".into())
}

fn x(v: i64) -> XReal<i64> {
    XReal::Finite(v)
}

fn non_crossing_oracles() -> Outcome {
    // Grid of eight extended reals including -inf.
    let grid: Vec<XReal<i64>> = std::iter::once(XReal::NegInf).chain((-3..=3).map(x)).collect();
    let mut tuples = 0;
    for a1 in &grid {
        for a2 in &grid {
            for b1 in &grid {
                for b2 in &grid {
                    let t = [a1, a2, b1, b2];
                    if (0..4).any(|i| (i + 1..4).any(|j| t[i] == t[j])) {
                        continue;
                    }
                    tuples += 1;
                    let below = [a1, a2].iter().flat_map(|a| [b1, b2].map(|b| a < &b)).filter(|&lt| lt).count();
                    let verdict = non_crossing_sums(&[[a1.clone(), a2.clone()], [-b1.clone(), -b2.clone()]]);
                    ensure(verdict == (below % 2 == 0), || format!("m=2 disagreement at {t:?}"))?;
                }
            }
        }
    }
    let mut rng = seeded_rng(4);
    for _ in 0..10_000 {
        let t = random_admissible_triple(&mut rng, 30);
        let by_influence = influence_free(&t).map_err(|e| e.to_string())?;
        ensure(by_influence == non_crossing_sums(&t.map(|p| p.map(x))), || format!("m=3 disagreement at {t:?}"))?;
    }
    let fin = |p: [i64; 2]| p.map(x);
    ensure(non_crossing_sums(&[fin([0, 1]), fin([0, 6]), fin([-5, 1])]), || "{0,1},{0,6},{-5,1} should pass".into())?;
    ensure(!non_crossing_sums(&[fin([-3, 5]), fin([-3, 5]), fin([-3, 5])]), || "{-3,5} x3 should fail".into())?;
    Ok(format!("{tuples} m=2 tuples, 10000 m=3 triples, worked examples"))
}

fn conjecture_search() -> Outcome {
    let start = Instant::now();
    let config = SearchConfig { lengths: vec![1, 3], mode: SearchMode::Exhaustive { grid: (-3..=3).collect(), dedupe: true } };
    let r = search_counterexamples(&config).map_err(|e| e.to_string())?;
    ensure(r.counterexamples.is_empty(), || format!("counterexamples: {:?}", r.counterexamples))?;
    let v = adf_verdict(&AdfInstance::new([vec![-1, -4, -2], vec![0], vec![0]]).unwrap());
    ensure(!v.hyp_i && v.sum == 1, || format!("crossing-list example gave {v:?}"))?;
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(300), || format!("took {elapsed:?}"))?;
    Ok(format!("{} examined, {} meet both hypotheses, 0 counterexamples, {elapsed:.2?}", r.examined, r.hypotheses_hold))
}

fn valid_instance(seed: u64) -> AdfInstance<i64> {
    random_valid_instance(&mut seeded_rng(seed), &[1, 3, 5], 20, 1_000_000).expect("valid instance within budget")
}

fn identity_suite_on_random() -> Outcome {
    let failures: Vec<String> = (0..10_000u64)
        .into_par_iter()
        .filter_map(|seed| {
            let rep = identity_suite(&valid_instance(seed));
            let names: Vec<&str> = rep.failures().map(|c| c.name.as_str()).collect();
            (!names.is_empty()).then(|| format!("seed {seed}: {}", names.join(",")))
        })
        .collect();
    ensure(failures.is_empty(), || format!("{} failing instances, first {}", failures.len(), failures[0]))?;
    Ok("10000 instances, all identities exact".into())
}

fn nine_epsilon() -> Outcome {
    let eps = rat(1, 10);
    let y1: Vec<Rational> = [0, 10, 20].map(int).to_vec();
    let y2: Vec<Rational> = [0, 1, 2].map(int).to_vec();
    let s = |a: usize, b: usize| &y1[a - 1] + &y2[b - 1];
    let order = [(1, 1), (1, 2), (1, 3), (2, 3), (2, 2), (2, 1), (3, 1), (3, 2), (3, 3)];
    let y3: Vec<Rational> = order
        .iter()
        .enumerate()
        .map(|(j, &(a, b))| if j % 2 == 0 { -s(a, b) - &eps } else { -s(a, b) + &eps })
        .collect();
    let inst = AdfInstance::new([y1, y2, y3]).map_err(|e| e.to_string())?;
    let v = adf_verdict(&inst);
    ensure(v.hyp_i && v.hyp_ii, || "hypotheses fail".into())?;
    ensure(v.sum == rat(-9, 10), || format!("sum {}", v.sum))?;
    Ok("hypotheses hold, sum = -9/10".into())
}

fn built(seed: u64) -> (AdfInstance<Rational>, Recipe) {
    let inst = valid_instance(1_000_000 + seed).to_rational();
    let recipe = build_curves(&inst, &RecipeParams::default()).expect("valid instances build");
    (inst, recipe)
}

fn bridge_round_trip() -> Outcome {
    let failures: Vec<String> = (0..200u64)
        .into_par_iter()
        .filter_map(|seed| {
            let (inst, recipe) = built(seed);
            let run = || -> Result<(), String> {
                let delta = recipe.probe_abscissa();
                let fiber = fiber_extract(&recipe.curves, &delta).map_err(|e| e.to_string())?;
                ensure(&fiber == inst.lists(), || "fiber differs".into())?;
                for c in &recipe.curves {
                    ensure(c.is_simple().map_err(|e| e.to_string())?, || "curve not simple".into())?;
                }
                let sai = sai_check(&recipe.curves).map_err(|e| e.to_string())?;
                ensure(sai.witness.is_none(), || format!("zero-sum witness {:?}", sai.witness))?;
                let areas = area_breakdown(&recipe);
                ensure(areas.identity_holds(&recipe, &inst.alternating_sum()), || "area identity fails".into())
            };
            run().err().map(|e| format!("seed {seed}: {e}"))
        })
        .collect();
    ensure(failures.is_empty(), || failures.join("; "))?;
    Ok("200 instances".into())
}

fn dynamics() -> Outcome {
    let results: Vec<Result<Vec<i64>, String>> = (0..200u64)
        .into_par_iter()
        .map(|seed| {
            let (_, recipe) = built(seed);
            let curves = if general_position_violation(&recipe.curves).is_some() {
                let moved = perturb_generic(&recipe.curves, seed, &rat(1, 64)).map_err(|e| e.to_string())?;
                <[CylCurve<Rational>; 3]>::try_from(moved).expect("three curves")
            } else {
                recipe.curves.clone()
            };
            let orbits = trace_components(&curves, &rat(1, 3)).map_err(|e| format!("seed {seed}: {e}"))?;
            ensure(orbits.iter().all(|o| o.sign.is_some()), || format!("seed {seed}: sum changes sign"))?;
            ensure(orbits.iter().any(|o| o.degree.abs() >= 1), || format!("seed {seed}: no orbit winds around"))?;
            Ok(orbits.iter().map(|o| o.degree).collect())
        })
        .collect();
    let errors: Vec<&String> = results.iter().filter_map(|r| r.as_ref().err()).collect();
    ensure(errors.is_empty(), || errors.iter().map(|s| s.as_str()).collect::<Vec<_>>().join("; "))?;
    let orbits: usize = results.iter().map(|r| r.as_ref().map_or(0, Vec::len)).sum();
    Ok(format!("200 triples, {orbits} periodic orbits, all of constant sign"))
}

fn pinch() -> Outcome {
    let n = 64.0;
    let mut worst = 0.0f64;
    let mut worst_identity = 0.0f64;
    for i in 0..10_000 {
        let xv = -0.99 * n + 1.98 * n * i as f64 / 9_999.0;
        let p = Point::new(xv, ((i % 21) as f64 - 10.0) / 10.0);
        let back = phi_n_inv(&p, n).map_err(|e| e.to_string())?;
        let round = phi_n(&back, n);
        worst = worst.max((round.x - p.x).abs()).max((round.y - p.y).abs());
        let image = phi_n(&Point::new(xv, 1.0), n);
        worst_identity = worst_identity.max((image.y - (1.0 - (image.x / n).powi(2))).abs());
    }
    ensure(worst < 1e-9, || format!("round trip error {worst:e}"))?;
    ensure(worst_identity < 1e-12, || format!("sech^2 identity error {worst_identity:e}"))?;
    let flat = compress_curve(&CylCurve::constant(int(10), int(0)), PinchParams::new(64, 9).unwrap());
    ensure(flat.vertices().iter().all(|p| p.y == 0.0), || "flat curve leaves the axis".into())?;
    Ok(format!("round trip {worst:.1e}, identity {worst_identity:.1e}"))
}

fn joint_inscription() -> Outcome {
    let mut checked = 0;
    for c1 in -2..=2 {
        for c2 in -2..=2 {
            for c3 in -2..=2 {
                for c4 in -2..=2 {
                    let c = [c1, c2, c3, c4].map(|h| CylCurve::constant(int(10), int(h)));
                    let w = joint_inscribe(&c[0], &c[1], &c[2], &c[3]).map_err(|e| e.to_string())?;
                    ensure(w.is_some() == (c3 == c2 + c4 - c1), || format!("constant heights {c1} {c2} {c3} {c4}"))?;
                    checked += 1;
                }
            }
        }
    }
    let results: Vec<Result<(bool, bool), String>> = (0..100u64)
        .into_par_iter()
        .map(|seed| {
            let mut rng = seeded_rng(seed);
            // Small wiggles around random levels, so that both outcomes occur.
            let c: Vec<CylCurve<Rational>> = (0..4)
                .map(|_| {
                    let wiggle = random_cylinder_curve(&mut rng, 20, 6, 1, 0.9);
                    let level = int(rng.gen_range(-4..=4));
                    let lift = wiggle.lift().iter().map(|p| Point::new(p.x.clone(), &p.y + &level)).collect();
                    CylCurve::new(int(20), lift, 1).expect("shifted curve")
                })
                .collect();
            let (w, used) = joint_inscribe_generic([&c[0], &c[1], &c[2], &c[3]], seed, &rat(1, 64))
                .map_err(|e| format!("seed {seed}: {e}"))?;
            let value = area_ineq_value(&used[0], &used[1], &used[2], &used[3]);
            Ok((w.is_none(), w.is_none() && value == int(0)))
        })
        .collect();
    let errors: Vec<&String> = results.iter().filter_map(|r| r.as_ref().err()).collect();
    ensure(errors.is_empty(), || errors.iter().map(|s| s.as_str()).collect::<Vec<_>>().join("; "))?;
    let none = results.iter().filter(|r| matches!(r, Ok((true, _)))).count();
    let findings = results.iter().filter(|r| matches!(r, Ok((_, true)))).count();
    ensure(findings == 0, || format!("{findings} quadruples with no square and zero alternating area"))?;
    Ok(format!("{checked} constant quadruples exact; 100 random, {none} without a square, 0 findings"))
}

fn main() -> ExitCode {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 11] = [
        ("conserved integral", conserved_integral),
        ("inscribed square finder", inscribed_square),
        ("area under equals minus signed area", polygon_area),
        ("non-crossing oracles", non_crossing_oracles),
        ("counterexample search", conjecture_search),
        ("identity suite", identity_suite_on_random),
        ("nine-epsilon instance", nine_epsilon),
        ("bridge round trip", bridge_round_trip),
        ("collision dynamics", dynamics),
        ("pinch map", pinch),
        ("joint inscription", joint_inscription),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let took = start.elapsed();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS {name}: {detail} [{took:.2?}]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name}: {detail} [{took:.2?}]", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
