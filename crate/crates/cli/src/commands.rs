use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde_json::{json, Value};

use tgk_core::game::{optimal_move, winner as game_winner};
use tgk_core::geometry::{euler_complex, euler_real, poincare_complex, point_count};
use tgk_core::lattice::{enumerate_prunings, rank_generating_function};
use tgk_core::perm::{enumerate_s1xsn, Pattern};
use tgk_core::poly::{estimate_event_probability, phi as phi_of, phi_via_prunings};
use tgk_core::seq::{stirling_table, Method};
use tgk_core::tamari::{
    fiber_capped, is_pentagon, tamari_join, tamari_meet, verify_congruence_capped,
    verify_lattice_operations_capped, QuotientOracle,
};
use tgk_core::tree::{eastpush, gamma as gamma_of, gamma_inverse, westpop};
use tgk_core::verify::{run_suite, Caps, Check, Report};
use tgk_core::{Error, IntPolynomial, LabeledTree, Permutation, PlaneTree, TamariElement};

use crate::Output;

type Result<T> = std::result::Result<T, Error>;

/// Largest number of prunings `prunings --list` prints.
const LIST_LIMIT: u64 = 1 << 20;

/// Enumeration caps, raised or lowered by `TGK_MAX_N`.
pub fn caps_from_env() -> Result<Caps> {
    match std::env::var("TGK_MAX_N") {
        Ok(v) => {
            let cap: usize = v.trim().parse().map_err(|_| {
                Error::InvalidArgument(format!("TGK_MAX_N must be a positive integer, got {v:?}"))
            })?;
            Ok(Caps {
                census: cap,
                weak_order: cap,
            })
        }
        Err(_) => Ok(Caps::default()),
    }
}

fn positive(n: usize, flag: &str) -> Result<()> {
    if n == 0 {
        Err(Error::InvalidArgument(format!("{flag} must be at least 1")))
    } else {
        Ok(())
    }
}

fn coefficients(p: &IntPolynomial) -> Vec<String> {
    p.coefficients().iter().map(ToString::to_string).collect()
}

pub fn seq(n: usize, method: Method, all_methods: bool, caps: Caps) -> Result<Output> {
    positive(n, "--n")?;
    if !all_methods {
        let values = method.sequence(n, caps.census)?;
        let mut text = String::new();
        for (k, v) in values.iter().enumerate() {
            if k > 0 {
                text.push('\n');
            }
            write!(text, "{}\t{v}", k + 1).unwrap();
        }
        let rows: Vec<Value> = values
            .iter()
            .enumerate()
            .map(|(k, v)| json!({ "n": k + 1, "a": v.to_string() }))
            .collect();
        return Ok(Output::new(
            text,
            json!({ "command": "seq", "method": method.name(), "values": rows }),
        ));
    }

    let census_n = n.min(caps.census);
    let mut columns: Vec<(Method, Vec<BigInt>)> = Vec::new();
    for m in Method::ALL {
        let upto = if m == Method::Census { census_n } else { n };
        columns.push((m, m.sequence(upto, caps.census)?));
    }
    let mut text = String::new();
    let mut rows = Vec::new();
    let mut all_agree = true;
    for k in 0..n {
        let present: Vec<(Method, &BigInt)> = columns
            .iter()
            .filter_map(|(m, v)| v.get(k).map(|x| (*m, x)))
            .collect();
        let reference = present[0].1;
        let agree = present.iter().all(|(_, v)| *v == reference);
        all_agree &= agree;
        let skipped = present.len() < Method::ALL.len();
        if k > 0 {
            text.push('\n');
        }
        write!(
            text,
            "{}\t{reference}\t{}",
            k + 1,
            if agree { "agree" } else { "DISAGREE" }
        )
        .unwrap();
        if !agree {
            for (m, v) in &present {
                write!(text, "\t{m}={v}").unwrap();
            }
        }
        if skipped {
            text.push_str("\t(census skipped)");
        }
        let by_method: serde_json::Map<String, Value> = present
            .iter()
            .map(|(m, v)| (m.name().to_string(), Value::String(v.to_string())))
            .collect();
        rows.push(json!({ "n": k + 1, "a": reference.to_string(), "agree": agree, "by_method": by_method }));
    }
    let mut out = Output::new(
        text,
        json!({ "command": "seq", "method": "all", "values": rows }),
    );
    out.ok = all_agree;
    Ok(out)
}

pub fn stirling(n: usize, k: Option<usize>) -> Result<Output> {
    let table = stirling_table(n);
    let row = &table[n];
    match k {
        Some(k) => {
            let value = row.get(k).ok_or_else(|| {
                Error::InvalidArgument(format!("c(n, k) needs k <= n, got n = {n}, k = {k}"))
            })?;
            Ok(Output::new(
                value.to_string(),
                json!({ "command": "stirling", "n": n, "k": k, "value": value.to_string() }),
            ))
        }
        None => {
            let text = row
                .iter()
                .enumerate()
                .map(|(k, c)| format!("{k}\t{c}"))
                .collect::<Vec<_>>()
                .join("\n");
            let values: Vec<String> = row.iter().map(ToString::to_string).collect();
            Ok(Output::new(
                text,
                json!({ "command": "stirling", "n": n, "row": values }),
            ))
        }
    }
}

pub fn gamma(perm: &Permutation) -> Output {
    let tree = gamma_of(perm);
    Output::new(
        tree.to_string(),
        json!({ "command": "gamma", "perm": perm.to_string(), "tree": tree.to_string() }),
    )
}

pub fn gamma_inv(tree: &LabeledTree) -> Result<Output> {
    let perm = gamma_inverse(tree)?;
    Ok(Output::new(
        perm.to_string(),
        json!({ "command": "gamma-inv", "tree": tree.to_string(), "perm": perm.to_string() }),
    ))
}

pub fn label(tree: &PlaneTree, east: bool) -> Result<Output> {
    let (mode, labeled) = if east {
        ("eastpush", eastpush(tree))
    } else {
        ("westpop", westpop(tree))
    };
    let perm = gamma_inverse(&labeled)?;
    Ok(Output::new(
        format!("{labeled}\n{perm}"),
        json!({ "command": "label", "mode": mode, "tree": tree.to_string(), "labeled": labeled.to_string(), "perm": perm.to_string() }),
    ))
}

pub fn avoid(
    pattern: Pattern,
    perm: Option<&Permutation>,
    n: Option<usize>,
    caps: Caps,
) -> Result<Output> {
    if let Some(p) = perm {
        let avoids = p.avoids(pattern);
        return Ok(Output::new(
            avoids.to_string(),
            json!({ "command": "avoid", "pattern": pattern.to_string(), "perm": p.to_string(), "avoids": avoids }),
        ));
    }
    let n = n.expect("clap requires --perm or --n");
    positive(n, "--n")?;
    if n > caps.census {
        return Err(Error::CapExceeded {
            what: "avoider listing",
            n,
            cap: caps.census,
        });
    }
    let avoiders: Vec<String> = enumerate_s1xsn(n)?
        .filter(|p| p.avoids(pattern))
        .map(|p| p.to_string())
        .collect();
    Ok(Output::new(
        avoiders.join("\n"),
        json!({ "command": "avoid", "pattern": pattern.to_string(), "n": n, "count": avoiders.len(), "avoiders": avoiders }),
    ))
}

/// Integers, fractions `a/b` and decimals `-0.25`, read exactly.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::InvalidArgument(format!("cannot read {s:?} as a number"));
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let num = BigInt::from_str(num.trim()).map_err(|_| bad())?;
        let den = BigInt::from_str(den.trim()).map_err(|_| bad())?;
        if den.is_zero() {
            return Err(Error::InvalidArgument(format!("zero denominator in {s:?}")));
        }
        return Ok(BigRational::new(num, den));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = whole.starts_with('-');
        let digits = whole.trim_start_matches(['-', '+']);
        let whole = if digits.is_empty() {
            BigInt::zero()
        } else {
            BigInt::from_str(digits).map_err(|_| bad())?
        };
        let scale = BigInt::from(10).pow(frac.len() as u32);
        let frac = BigInt::from_str(frac).map_err(|_| bad())?;
        let magnitude = BigRational::new(whole * &scale + frac, scale);
        return Ok(if negative { -magnitude } else { magnitude });
    }
    Ok(BigRational::from_integer(
        BigInt::from_str(s).map_err(|_| bad())?,
    ))
}

pub fn phi(tree: &PlaneTree, via_prunings: bool, eval: Option<&str>) -> Result<Output> {
    let (method, p) = if via_prunings {
        ("prunings", phi_via_prunings(tree)?)
    } else {
        ("recursion", phi_of(tree))
    };
    let mut doc = json!({
        "command": "phi",
        "tree": tree.to_string(),
        "via": method,
        "polynomial": p.to_string(),
        "coefficients": coefficients(&p),
    });
    let text = match eval {
        Some(q) => {
            let x = parse_rational(q)?;
            let value = p.evaluate(&x);
            doc["eval"] = json!({ "q": x.to_string(), "value": value.to_string() });
            value.to_string()
        }
        None => p.to_string(),
    };
    Ok(Output::new(text, doc))
}

pub fn prunings(tree: &PlaneTree, rgf: bool, list: bool) -> Result<Output> {
    let count = euler_complex(tree);
    let mut text = format!("count\t{count}");
    let mut doc =
        json!({ "command": "prunings", "tree": tree.to_string(), "count": count.to_string() });
    if rgf {
        let p = rank_generating_function(tree);
        write!(text, "\nrgf\t{p}").unwrap();
        doc["rgf"] = json!({ "polynomial": p.to_string(), "coefficients": coefficients(&p) });
    }
    if list {
        if count > BigInt::from(LIST_LIMIT) {
            return Err(Error::InvalidArgument(format!(
                "{count} prunings; listing is limited to {LIST_LIMIT}"
            )));
        }
        let mut items = Vec::new();
        for p in enumerate_prunings(tree)? {
            write!(text, "\n{}\t{}", p.rank(), p).unwrap();
            items.push(json!({ "rank": p.rank(), "pruning": p.to_string(), "tree": p.to_plane_tree().to_string() }));
        }
        doc["list"] = Value::Array(items);
    }
    Ok(Output::new(text, doc))
}

pub fn winner(tree: &PlaneTree) -> Output {
    let w = game_winner(tree);
    let mut text = w.to_string();
    let mv = optimal_move(tree).map(|k| {
        let subtree = tree.subtree(tree.children(tree.root())[k - 1]);
        write!(text, "\nmove {k} {subtree}").unwrap();
        json!({ "index": k, "subtree": subtree.to_string() })
    });
    Output::new(
        text,
        json!({ "command": "winner", "tree": tree.to_string(), "winner": w, "move": mv }),
    )
}

pub fn tamari_fiber(tree: &PlaneTree, caps: Caps) -> Result<Output> {
    let f = fiber_capped(tree, caps.weak_order)?;
    let mut text = format!(
        "top\t{}\nbottom\t{}\nsize\t{}",
        f.top,
        f.bottom,
        f.members.len()
    );
    for m in &f.members {
        write!(text, "\nmember\t{m}").unwrap();
    }
    let members: Vec<String> = f.members.iter().map(ToString::to_string).collect();
    Ok(Output::new(
        text,
        json!({
            "command": "tamari-fiber",
            "tree": tree.to_string(),
            "top": f.top.to_string(),
            "bottom": f.bottom.to_string(),
            "size": members.len(),
            "members": members,
        }),
    ))
}

pub fn tamari_binary(a: &PlaneTree, b: &PlaneTree, join: bool) -> Result<Output> {
    let (x, y) = (TamariElement::from_tree(a), TamariElement::from_tree(b));
    let (name, r) = if join {
        ("tamari-join", tamari_join(&x, &y)?)
    } else {
        ("tamari-meet", tamari_meet(&x, &y)?)
    };
    Ok(Output::new(
        r.to_string(),
        json!({
            "command": name,
            "a": a.to_string(),
            "b": b.to_string(),
            "result": r.to_string(),
            "fif": r.fif().targets(),
        }),
    ))
}

fn report_output(command: &str, n: usize, report: Report) -> Output {
    let passed = report.checks.iter().filter(|c| c.passed).count();
    let total = report.checks.len();
    let text = format!(
        "{report}\n{}: {passed}/{total} checks passed",
        if report.passed() { "PASS" } else { "FAIL" }
    );
    let ok = report.passed();
    let mut out = Output::new(
        text,
        json!({ "command": command, "n": n, "checks": report.checks, "passed": ok }),
    );
    out.ok = ok;
    out
}

pub fn tamari_verify(n: usize, caps: Caps) -> Result<Output> {
    positive(n, "--n")?;
    let mut report = verify_congruence_capped(n, caps.weak_order)?;
    report.extend(verify_lattice_operations_capped(n.min(6), caps.weak_order)?);
    if n == 4 {
        let oracle = QuotientOracle::with_cap(4, caps.weak_order)?;
        report.push(Check::new(
            "tamari.pentagon",
            is_pentagon(&oracle),
            format!(
                "n=4: {} classes, {} cover relations",
                oracle.len(),
                oracle.hasse_edges().len()
            ),
        ));
    }
    Ok(report_output("tamari-verify", n, report))
}

pub fn euler(tree: &PlaneTree, qs: &[u64], strict: bool) -> Result<Output> {
    let chi_r = euler_real(tree)?;
    let chi_c = euler_complex(tree);
    let poincare = poincare_complex(tree);
    let mut text = format!("chi_R\t{chi_r}\nchi_C\t{chi_c}\npoincare\t{poincare}");
    let mut warnings = Vec::new();
    let mut points = Vec::new();
    for &q in qs {
        let count = point_count(tree, q, strict)?;
        if !count.prime_power {
            warnings.push(format!(
                "q = {q} is not a prime power; points({q}) is only a polynomial value"
            ));
        }
        write!(text, "\npoints({q})\t{}", count.points).unwrap();
        points.push(count);
    }
    let mut out = Output::new(
        text,
        json!({
            "command": "euler",
            "tree": tree.to_string(),
            "chi_R": chi_r,
            "chi_C": chi_c.to_string(),
            "poincare": { "polynomial": poincare.to_string(), "coefficients": coefficients(&poincare) },
            "points": points,
        }),
    );
    out.warnings = warnings;
    Ok(out)
}

pub fn montecarlo(tree: &PlaneTree, q: f64, trials: u64, seed: u64) -> Result<Output> {
    let estimate = estimate_event_probability(tree, q, trials, seed)?;
    let exact = phi_of(tree).evaluate_f64(q);
    let freq = estimate.frequency();
    let text = format!(
        "trials\t{trials}\noccurrences\t{}\nfrequency\t{freq:.6}\nphi(q)\t{exact:.6}\ndifference\t{:.6}",
        estimate.occurrences,
        (freq - exact).abs()
    );
    Ok(Output::new(
        text,
        json!({
            "command": "montecarlo",
            "tree": tree.to_string(),
            "q": q,
            "seed": seed,
            "trials": trials,
            "occurrences": estimate.occurrences,
            "frequency": freq,
            "phi": exact,
        }),
    ))
}

pub fn verify(n: usize, caps: Caps) -> Result<Output> {
    let report = run_suite(n, caps)?;
    Ok(report_output("verify", n, report))
}
