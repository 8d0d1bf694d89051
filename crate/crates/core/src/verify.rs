//! Cross-identity checks shared by the test suites and the `verify`
//! command. Every check reports rather than panics.

use std::fmt;
use std::time::Instant;

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::Result;
use crate::game::{optimal_move, winner, winner_by_phi, Winner};
use crate::geometry::{euler_real, point_count, CellComplex};
use crate::lattice::{lattice_iso_check, rank_counts, rank_generating_function_by_enumeration};
use crate::perm::{enumerate_s1xsn, valid_separator_placements, Pattern, Permutation};
use crate::poly::{phi, phi_via_prunings};
use crate::seq::{a_stirling, rgf_census_capped, rgf_identity_lhs, Method};
use crate::tamari::{verify_congruence_capped, verify_lattice_operations_capped};
use crate::tree::{catalan, eastpush, gamma, gamma_inverse, rho, westpop, PlaneTree, RootedTree};
use crate::{CENSUS_CAP, WEAK_ORDER_CAP};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub details: String,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool, details: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            passed,
            details: details.into(),
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "CHECK {}: {} ({})", self.name, status, self.details)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, c) in self.checks.iter().enumerate() {
            if k > 0 {
                writeln!(f)?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Enumeration limits for the suite.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    pub census: usize,
    pub weak_order: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            census: CENSUS_CAP,
            weak_order: WEAK_ORDER_CAP,
        }
    }
}

/// Sum of signs over all valid separator placements of permutations of
/// size `n` fixing 1.
pub fn signed_separator_total(n: usize) -> Result<i64> {
    let mut total = 0i64;
    for p in enumerate_s1xsn(n)? {
        total += valid_separator_placements(&p)
            .map(|s| s.sign() as i64)
            .sum::<i64>();
    }
    Ok(total)
}

/// Number of valid separator placements of `p` with each separator count.
pub fn placement_rank_counts(p: &Permutation) -> Vec<usize> {
    let mut counts = vec![0; p.len()];
    for s in valid_separator_placements(p) {
        counts[s.rank()] += 1;
    }
    counts
}

fn summary<T: fmt::Display>(n: usize, ok_detail: String, bad: &[T]) -> (bool, String) {
    if bad.is_empty() {
        (true, ok_detail)
    } else {
        let shown: Vec<String> = bad.iter().take(3).map(ToString::to_string).collect();
        (
            false,
            format!("n={n}: {} violations, e.g. {}", bad.len(), shown.join("; ")),
        )
    }
}

fn check_from(name: &str, n: usize, ok_detail: String, bad: &[String]) -> Check {
    let (passed, details) = summary(n, ok_detail, bad);
    Check::new(name, passed, details)
}

fn sequence_checks(n: usize, caps: Caps) -> Result<Report> {
    let mut report = Report::new();
    let census_n = n.min(caps.census);
    let reference = Method::Stirling.sequence(n, caps.census)?;
    let mut bad = Vec::new();
    for m in Method::ALL {
        let upto = if m == Method::Census { census_n } else { n };
        let values = m.sequence(upto, caps.census)?;
        for (k, v) in values.iter().enumerate() {
            if *v != reference[k] {
                bad.push(format!(
                    "{m} gives a_{} = {v}, expected {}",
                    k + 1,
                    reference[k]
                ));
            }
        }
    }
    report.push(check_from(
        "seq.methods_agree",
        n,
        format!("a_1..a_{n} by five methods (census through {census_n})"),
        &bad,
    ));

    let a3 = a_stirling(3)?;
    let a5 = a_stirling(5)?;
    report.push(Check::new(
        "seq.known_values",
        a3 == BigInt::from(1) && a5 == BigInt::from(8),
        format!("a_3 = {a3}, a_5 = {a5}"),
    ));

    let negative: Vec<String> = reference
        .iter()
        .enumerate()
        .filter(|(_, v)| v.sign() == num_bigint::Sign::Minus)
        .map(|(k, v)| format!("a_{} = {v}", k + 1))
        .collect();
    report.push(check_from(
        "seq.nonnegative",
        n,
        format!("a_1..a_{n} >= 0"),
        &negative,
    ));

    let rgf_n = n.min(8).min(caps.census);
    let mut bad = Vec::new();
    for k in 1..=rgf_n {
        let lhs = rgf_identity_lhs(k)?;
        let census = rgf_census_capped(k, caps.census)?;
        if lhs != census {
            bad.push(format!("n={k}: {lhs} vs {census}"));
        }
    }
    report.push(check_from(
        "seq.rgf_identity",
        n,
        format!("sum of rgf over increasing trees for n <= {rgf_n}"),
        &bad,
    ));
    Ok(report)
}

fn bijection_checks(n: usize) -> Result<Report> {
    let mut report = Report::new();
    let perms: Vec<Permutation> = enumerate_s1xsn(n)?.collect();

    let mut bad = Vec::new();
    let mut images = std::collections::HashSet::new();
    for p in &perms {
        let t = gamma(p);
        if !t.is_increasing() || gamma_inverse(&t).ok().as_ref() != Some(p) {
            bad.push(p.to_string());
        }
        images.insert(t.to_string());
    }
    if images.len() != perms.len() {
        bad.push(format!(
            "{} distinct trees for {} permutations",
            images.len(),
            perms.len()
        ));
    }
    report.push(check_from(
        "tree.gamma_bijection",
        n,
        format!("n={n}: {} permutations", perms.len()),
        &bad,
    ));

    let trees = PlaneTree::enumerate(n);
    let expected = catalan(n - 1) as usize;
    for (pattern, name) in [
        (Pattern::P213, "tree.eastpush_bijection"),
        (Pattern::P312, "tree.westpop_bijection"),
    ] {
        let mut bad = Vec::new();
        let avoiders: Vec<&Permutation> = perms.iter().filter(|p| p.avoids(pattern)).collect();
        let mut shapes = std::collections::HashSet::new();
        for p in &avoiders {
            let shape = rho(&gamma(p));
            let labeled = match pattern {
                Pattern::P213 => eastpush(&shape),
                Pattern::P312 => westpop(&shape),
            };
            if gamma_inverse(&labeled).ok().as_ref() != Some(*p) {
                bad.push(p.to_string());
            }
            shapes.insert(shape);
        }
        for t in &trees {
            let labeled = match pattern {
                Pattern::P213 => eastpush(t),
                Pattern::P312 => westpop(t),
            };
            match gamma_inverse(&labeled) {
                Ok(p) if p.avoids(pattern) && rho(&gamma(&p)) == *t => {}
                _ => bad.push(format!("tree {t}")),
            }
        }
        if avoiders.len() != expected || shapes.len() != expected || trees.len() != expected {
            bad.push(format!(
                "{} avoiders, {} shapes, {} trees, Catalan = {expected}",
                avoiders.len(),
                shapes.len(),
                trees.len()
            ));
        }
        report.push(check_from(
            name,
            n,
            format!("n={n}: {expected} {pattern}-avoiders"),
            &bad,
        ));
    }
    Ok(report)
}

fn separator_checks(n: usize) -> Result<Report> {
    let mut report = Report::new();
    let total = signed_separator_total(n)?;
    let a = a_stirling(n)?;
    report.push(Check::new(
        "perm.signed_separator_sum",
        BigInt::from(total) == a,
        format!("n={n}: signed total {total}, a_n = {a}"),
    ));
    let mut bad = Vec::new();
    for p in enumerate_s1xsn(n)? {
        let placements = placement_rank_counts(&p);
        let prunings = rank_counts(gamma(&p).shape())?;
        if placements != prunings || !lattice_iso_check(&p) {
            bad.push(p.to_string());
        }
    }
    report.push(check_from(
        "lattice.separators_match_prunings",
        n,
        format!("n={n}: placements of every permutation vs prunings of its tree"),
        &bad,
    ));
    Ok(report)
}

fn tree_checks(n: usize) -> Result<Report> {
    let mut report = Report::new();
    let mut count = 0;
    let mut phi_bad = Vec::new();
    let mut game_bad = Vec::new();
    let mut geo_bad = Vec::new();
    for k in 1..=n {
        for rooted in RootedTree::enumerate(k) {
            count += 1;
            let t = rooted.as_plane();
            let p = phi(t);
            if phi_via_prunings(t)? != p || rank_generating_function_by_enumeration(t)? != p {
                phi_bad.push(t.to_string());
            }
            let w = winner(t);
            let strategy_ok = match optimal_move(t) {
                Some(m) => {
                    w == Winner::FirstPlayer
                        && winner(&t.subtree(t.children(0)[m - 1])) == Winner::SecondPlayer
                }
                None => w == Winner::SecondPlayer,
            };
            if winner_by_phi(t).ok() != Some(w) || !strategy_ok {
                game_bad.push(t.to_string());
            }
            let cx = CellComplex::new(t)?;
            let chi = euler_real(t)?;
            let counts_ok = [2u64, 3, 5, 7].iter().all(|&q| {
                point_count(t, q, true).map(|c| c.points).ok()
                    == Some(cx.point_count(&BigInt::from(q)))
            });
            if !counts_ok
                || (chi == 1) != (w == Winner::SecondPlayer)
                || chi as usize != cx.cells().len() % 2
            {
                geo_bad.push(t.to_string());
            }
        }
    }
    let detail = format!("{count} rooted trees with at most {n} vertices");
    report.push(check_from("poly.pruning_sum", n, detail.clone(), &phi_bad));
    report.push(check_from(
        "game.winner_matches_phi",
        n,
        detail.clone(),
        &game_bad,
    ));
    report.push(check_from("geometry.cell_identities", n, detail, &geo_bad));
    Ok(report)
}

/// Every identity the library implements, exhaustively at size `n`
/// (sequence values up to `n`, trees up to `n` vertices, permutations of
/// size `n`). The Tamari checks run at `n`, join and meet at `min(n, 6)`.
pub fn run_suite(n: usize, caps: Caps) -> Result<Report> {
    run_suite_timed(n, caps, |_, _| {})
}

/// As [`run_suite`], calling `progress(group, seconds)` after each group.
pub fn run_suite_timed(
    n: usize,
    caps: Caps,
    mut progress: impl FnMut(&str, f64),
) -> Result<Report> {
    if n == 0 {
        return Err(crate::Error::invalid("verify needs n >= 1"));
    }
    if n > caps.weak_order {
        return Err(crate::Error::CapExceeded {
            what: "verification suite",
            n,
            cap: caps.weak_order,
        });
    }
    let mut report = Report::new();
    let mut step =
        |name: &str, r: Result<Report>, report: &mut Report, started: Instant| -> Result<()> {
            report.extend(r?);
            progress(name, started.elapsed().as_secs_f64());
            Ok(())
        };
    let t = Instant::now();
    step("seq", sequence_checks(n, caps), &mut report, t)?;
    let t = Instant::now();
    step("bijections", bijection_checks(n), &mut report, t)?;
    let t = Instant::now();
    step("separators", separator_checks(n), &mut report, t)?;
    let t = Instant::now();
    step("trees", tree_checks(n), &mut report, t)?;
    let t = Instant::now();
    step(
        "tamari",
        verify_congruence_capped(n, caps.weak_order),
        &mut report,
        t,
    )?;
    let t = Instant::now();
    step(
        "tamari-lattice",
        verify_lattice_operations_capped(n.min(6), caps.weak_order),
        &mut report,
        t,
    )?;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_format() {
        let c = Check::new("x.y", true, "3 cases");
        assert_eq!(c.to_string(), "CHECK x.y: PASS (3 cases)");
        let d = Check::new("x.z", false, "oops");
        assert_eq!(d.to_string(), "CHECK x.z: FAIL (oops)");
        let mut r = Report::new();
        r.push(c);
        assert!(r.passed());
        r.push(d);
        assert!(!r.passed());
        assert_eq!(r.to_string().lines().count(), 2);
    }

    #[test]
    fn signed_sums() {
        let expected = [1, 0, 1, 1, 8, 26];
        for (n, &a) in (1..).zip(expected.iter()) {
            assert_eq!(signed_separator_total(n).unwrap(), a);
        }
    }

    #[test]
    fn suite_passes_small() {
        for n in 1..=5 {
            let r = run_suite(n, Caps::default()).unwrap();
            assert!(r.passed(), "{r}");
        }
        assert!(run_suite(9, Caps::default()).is_err());
    }
}
