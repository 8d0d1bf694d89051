//! Acceptance suite: one PASS/FAIL line per criterion. Exits non-zero if
//! any criterion fails or exceeds its time budget.

use std::collections::HashSet;
use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tgk_core::game::{census_second_player_wins, winner, winner_by_phi, Winner};
use tgk_core::geometry::{euler_real, point_count, CellComplex};
use tgk_core::lattice::{rank_counts, rank_generating_function_by_enumeration};
use tgk_core::perm::{enumerate_s1xsn, Pattern, Permutation};
use tgk_core::poly::{estimate_event_probability, phi, phi_via_prunings};
use tgk_core::seq::{
    a_egf, a_recurrence_complement, a_recurrence_split, a_stirling_sequence, a_tree_census,
};
use tgk_core::tamari::{is_pentagon, verify_congruence, verify_lattice_operations, QuotientOracle};
use tgk_core::tree::{catalan, eastpush, gamma, gamma_inverse, rho, westpop};
use tgk_core::verify::{placement_rank_counts, signed_separator_total};
use tgk_core::{IntPolynomial, PlaneTree, RootedTree};

type Outcome = Result<String, String>;

struct Criterion {
    id: u32,
    name: &'static str,
    budget_secs: f64,
    run: fn() -> Outcome,
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn tree(s: &str) -> PlaneTree {
    s.parse().expect("valid tree literal")
}

fn poly(c: &[i64]) -> IntPolynomial {
    IntPolynomial::from_coefficients(c.to_vec())
}

fn random_tree(rng: &mut ChaCha8Rng, max: usize) -> PlaneTree {
    let n = rng.random_range(1..=max);
    PlaneTree::random(n, rng)
}

fn sequence_agreement() -> Outcome {
    let n_max = 10;
    let stirling = a_stirling_sequence(n_max).map_err(|e| e.to_string())?;
    let methods = [
        ("egf", a_egf(n_max).map_err(|e| e.to_string())?),
        (
            "split",
            a_recurrence_split(n_max).map_err(|e| e.to_string())?,
        ),
        (
            "complement",
            a_recurrence_complement(n_max).map_err(|e| e.to_string())?,
        ),
        (
            "tree census",
            (1..=n_max)
                .map(a_tree_census)
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| e.to_string())?,
        ),
        (
            "game census",
            (1..=n_max)
                .map(census_second_player_wins)
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| e.to_string())?,
        ),
    ];
    for (name, values) in &methods {
        ensure(*values == stirling, || {
            format!("{name} gives {values:?}, Stirling sum {stirling:?}")
        })?;
    }
    ensure(
        stirling[2] == BigInt::from(1) && stirling[4] == BigInt::from(8),
        || format!("a_3 = {}, a_5 = {}", stirling[2], stirling[4]),
    )?;
    let shown: Vec<String> = stirling.iter().map(ToString::to_string).collect();
    Ok(format!("a_1..a_10 = {}", shown.join(",")))
}

fn reference_polynomials() -> Outcome {
    let star =
        rank_generating_function_by_enumeration(&PlaneTree::star(2)).map_err(|e| e.to_string())?;
    ensure(star == poly(&[1, 2, 1]), || format!("star rgf {star}"))?;
    let path =
        rank_generating_function_by_enumeration(&PlaneTree::path(3)).map_err(|e| e.to_string())?;
    ensure(path == poly(&[1, 1, 1]), || format!("path rgf {path}"))?;

    let expected = poly(&[1, 2, 3, 4, 4, 3, 1]);
    for s in ["(() (() ((()))))", "((()) ((() ())))"] {
        let t = tree(s);
        let by_recursion = phi(&t);
        let by_lattice = rank_generating_function_by_enumeration(&t).map_err(|e| e.to_string())?;
        ensure(by_recursion == expected && by_lattice == expected, || {
            format!("{s}: recursion {by_recursion}, lattice {by_lattice}")
        })?;
    }

    let t3 = tree("((((() ()))) ((() () ())))");
    let recursion = phi(&t3);
    let prunings = phi_via_prunings(&t3).map_err(|e| e.to_string())?;
    let lattice = rank_generating_function_by_enumeration(&t3).map_err(|e| e.to_string())?;
    ensure(recursion == prunings && recursion == lattice, || {
        format!("T3 disagrees: {recursion} / {prunings} / {lattice}")
    })?;
    ensure(!recursion.is_unimodal(), || {
        format!("T3 polynomial {recursion} is unimodal")
    })?;
    Ok(format!("phi(T3) = {recursion}, not unimodal"))
}

fn pruning_sum_identity() -> Outcome {
    let mut count = 0;
    for n in 1..=10 {
        for t in RootedTree::enumerate(n) {
            let t = t.as_plane();
            let lhs = phi_via_prunings(t).map_err(|e| e.to_string())?;
            ensure(lhs == phi(t), || {
                format!("{t}: pruning sum {lhs} vs {}", phi(t))
            })?;
            count += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0003);
    for _ in 0..1000 {
        let t = random_tree(&mut rng, 16);
        let lhs = phi_via_prunings(&t).map_err(|e| e.to_string())?;
        ensure(lhs == phi(&t), || {
            format!("{t}: pruning sum {lhs} vs {}", phi(&t))
        })?;
    }
    Ok(format!(
        "{count} canonical trees with at most 10 vertices and 1000 random trees up to 16"
    ))
}

fn bijections() -> Outcome {
    for n in 1..=8 {
        let perms: Vec<Permutation> = enumerate_s1xsn(n).map_err(|e| e.to_string())?.collect();
        let mut images = HashSet::new();
        for p in &perms {
            let t = gamma(p);
            let back = gamma_inverse(&t).map_err(|e| e.to_string())?;
            ensure(back == *p, || format!("gamma_inverse(gamma({p})) = {back}"))?;
            images.insert(t.to_string());
        }
        ensure(images.len() == perms.len(), || {
            format!("n={n}: gamma is not injective")
        })?;

        let trees = PlaneTree::enumerate(n);
        let cat = catalan(n - 1) as usize;
        ensure(trees.len() == cat, || {
            format!("n={n}: {} plane trees", trees.len())
        })?;
        for (pattern, label) in [
            (Pattern::P213, eastpush as fn(&PlaneTree) -> _),
            (Pattern::P312, westpop as fn(&PlaneTree) -> _),
        ] {
            let avoiders: Vec<&Permutation> = perms.iter().filter(|p| p.avoids(pattern)).collect();
            ensure(avoiders.len() == cat, || {
                format!("n={n}: {} {pattern}-avoiders", avoiders.len())
            })?;
            let shapes: HashSet<PlaneTree> = avoiders.iter().map(|p| rho(&gamma(p))).collect();
            ensure(shapes.len() == cat, || {
                format!("n={n}: {pattern} shapes not distinct")
            })?;
            for p in &avoiders {
                let back = gamma_inverse(&label(&rho(&gamma(p)))).map_err(|e| e.to_string())?;
                ensure(back == **p, || format!("{pattern}: {p} returns as {back}"))?;
            }
            for t in &trees {
                let p = gamma_inverse(&label(t)).map_err(|e| e.to_string())?;
                ensure(p.avoids(pattern) && rho(&gamma(&p)) == *t, || {
                    format!("{pattern}: tree {t} gives {p}")
                })?;
            }
        }
    }
    let t = tree("((()) () (() ()))");
    let top = gamma_inverse(&eastpush(&t)).map_err(|e| e.to_string())?;
    let bottom = gamma_inverse(&westpop(&t)).map_err(|e| e.to_string())?;
    ensure(
        top.to_string() == "1,7,2,3,5,6,4" && bottom.to_string() == "1,3,2,4,6,7,5",
        || format!("worked pair gives {top} and {bottom}"),
    )?;
    Ok(format!("n <= 8; worked pair {top} / {bottom}"))
}

fn congruence() -> Outcome {
    for n in 1..=7 {
        let report = verify_congruence(n).map_err(|e| e.to_string())?;
        ensure(report.passed(), || report.to_string())?;
    }
    for n in 1..=6 {
        let report = verify_lattice_operations(n).map_err(|e| e.to_string())?;
        ensure(report.passed(), || report.to_string())?;
    }
    let oracle = QuotientOracle::new(4).map_err(|e| e.to_string())?;
    ensure(is_pentagon(&oracle), || {
        "n=4 quotient is not the pentagon".into()
    })?;
    Ok("congruence for n <= 7, join/meet for n <= 6, pentagon at n = 4".into())
}

fn game_geometry() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0006);
    let mut second = 0;
    for _ in 0..10_000 {
        let t = random_tree(&mut rng, 12);
        let w = winner(&t);
        let by_phi = winner_by_phi(&t).map_err(|e| e.to_string())?;
        ensure(w == by_phi, || format!("{t}: recursion {w}, phi {by_phi}"))?;
        let chi = euler_real(&t).map_err(|e| e.to_string())?;
        ensure((chi == 1) == (w == Winner::SecondPlayer), || {
            format!("{t}: chi_R = {chi}, winner {w}")
        })?;
        let cx = CellComplex::new(&t).map_err(|e| e.to_string())?;
        ensure(chi as usize == cx.cells().len() % 2, || {
            format!("{t}: chi_R = {chi} with {} prunings", cx.cells().len())
        })?;
        for q in [2u64, 3, 5, 7] {
            let fast = point_count(&t, q, true).map_err(|e| e.to_string())?.points;
            let direct = cx.point_count(&BigInt::from(q));
            ensure(fast == direct, || {
                format!("{t}: points({q}) {fast} vs {direct}")
            })?;
        }
        second += (w == Winner::SecondPlayer) as u32;
    }
    Ok(format!(
        "10000 random trees up to 12 vertices, {second} second-player wins"
    ))
}

fn monte_carlo() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0007);
    let mut worst: f64 = 0.0;
    for k in 0..20u64 {
        let t = random_tree(&mut rng, 10);
        for q in [-0.25, -0.5, -0.75] {
            let estimate =
                estimate_event_probability(&t, q, 100_000, 1000 + k).map_err(|e| e.to_string())?;
            let exact = phi(&t).evaluate_f64(q);
            let diff = (estimate.frequency() - exact).abs();
            worst = worst.max(diff);
            ensure(diff < 0.015, || {
                format!("{t} at q={q}: {} vs {exact}", estimate.frequency())
            })?;
        }
    }
    Ok(format!(
        "20 trees x 3 values of q, worst deviation {worst:.4}"
    ))
}

fn signed_set_identity() -> Outcome {
    let a = a_stirling_sequence(7).map_err(|e| e.to_string())?;
    for n in 1..=7 {
        let total = signed_separator_total(n).map_err(|e| e.to_string())?;
        ensure(BigInt::from(total) == a[n - 1], || {
            format!("n={n}: signed total {total}, a_n = {}", a[n - 1])
        })?;
        for p in enumerate_s1xsn(n).map_err(|e| e.to_string())? {
            let placements = placement_rank_counts(&p);
            let prunings = rank_counts(gamma(&p).shape()).map_err(|e| e.to_string())?;
            ensure(placements == prunings, || {
                format!("{p}: placements {placements:?}, prunings {prunings:?}")
            })?;
        }
    }
    Ok("n <= 7".into())
}

fn main() -> ExitCode {
    let criteria = [
        Criterion {
            id: 1,
            name: "sequence agreement",
            budget_secs: 30.0,
            run: sequence_agreement,
        },
        Criterion {
            id: 2,
            name: "reference polynomials",
            budget_secs: 30.0,
            run: reference_polynomials,
        },
        Criterion {
            id: 3,
            name: "pruning-sum identity",
            budget_secs: 60.0,
            run: pruning_sum_identity,
        },
        Criterion {
            id: 4,
            name: "bijection suite",
            budget_secs: 20.0,
            run: bijections,
        },
        Criterion {
            id: 5,
            name: "congruence and Tamari suite",
            budget_secs: 60.0,
            run: congruence,
        },
        Criterion {
            id: 6,
            name: "game/geometry consistency",
            budget_secs: 30.0,
            run: game_geometry,
        },
        Criterion {
            id: 7,
            name: "Monte-Carlo",
            budget_secs: 60.0,
            run: monte_carlo,
        },
        Criterion {
            id: 8,
            name: "signed-set identity",
            budget_secs: 60.0,
            run: signed_set_identity,
        },
    ];
    let mut failures = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let secs = start.elapsed().as_secs_f64();
        let (passed, detail) = match outcome {
            Ok(d) if secs <= c.budget_secs => (true, d),
            Ok(d) => (false, format!("{d}; exceeded {:.0}s budget", c.budget_secs)),
            Err(e) => (false, e),
        };
        failures += (!passed) as u32;
        println!(
            "{} criterion {}: {} ({detail}) [{secs:.2}s]",
            if passed { "PASS" } else { "FAIL" },
            c.id,
            c.name
        );
    }
    println!(
        "acceptance: {}/{} criteria passed",
        criteria.len() as u32 - failures,
        criteria.len()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
