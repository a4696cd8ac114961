//! Acceptance checks: one PASS/FAIL line per criterion, nonzero exit if any fails.
//!
//! Every criterion is evaluated strictly: an entry reported as `flagged` (a
//! documented discrepancy) does not count as reproduced unless the criterion
//! explicitly allows flagged entries.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_rational::BigRational;
use qcalc::algebra::{random_poly, random_word, Preset};
use qcalc::expr_io::{parse, parse_raw, print};
use qcalc::matrix::{self, VfGroup};
use qcalc::report::{Entry, Status};
use qcalc::runner::{self, numeric_verdict, Options};
use qcalc::{derivations, presets, reductions, rtensor, series, sigma, AlgebraError, NCPoly};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    ok: bool,
    detail: String,
}

/// Entries that are not `pass`, one per line.
fn non_passing(entries: &[Entry]) -> Vec<String> {
    entries
        .iter()
        .filter(|e| e.status != Status::Pass)
        .map(|e| format!("{} [{}]: {}", e.name, e.status.as_str(), e.note.as_deref().or(e.residual.as_deref()).unwrap_or("")))
        .collect()
}

fn all_pass(label: &str, entries: &[Entry]) -> Outcome {
    let bad = non_passing(entries);
    Outcome {
        ok: !entries.is_empty() && bad.is_empty(),
        detail: if bad.is_empty() {
            format!("{label}: {} entries exact", entries.len())
        } else {
            format!("{label}: {} of {} not reproduced: {}", bad.len(), entries.len(), bad.join(" | "))
        },
    }
}

fn combine(parts: Vec<Outcome>) -> Outcome {
    Outcome {
        ok: parts.iter().all(|p| p.ok),
        detail: parts.into_iter().map(|p| p.detail).collect::<Vec<_>>().join("; "),
    }
}

fn within(label: &str, elapsed: Duration, limit: Duration) -> Outcome {
    Outcome { ok: elapsed < limit, detail: format!("{label} in {:.2} s (limit {} s)", elapsed.as_secs_f64(), limit.as_secs()) }
}

fn run_suites(pattern: &str, skip: &[&str]) -> Vec<Entry> {
    let suites = runner::select(runner::catalogue(Vec::new()).unwrap(), pattern).unwrap();
    let suites: Vec<_> = suites.into_iter().filter(|s| !skip.contains(&s.name.as_str())).collect();
    runner::run(&suites, &Options::default()).suites.into_iter().flat_map(|s| s.entries).collect()
}

fn relation_suites() -> Outcome {
    let start = Instant::now();
    // The vector-field relations belong to the vector-field criterion.
    let entries = run_suites("relations/*", &["relations/vector_fields"]);
    combine(vec![all_pass("relation suites", &entries), within("evaluated", start.elapsed(), Duration::from_secs(5))])
}

fn centrality() -> Outcome {
    all_pass("centrality and dD_q = D_q tau", &derivations::centrality_entries())
}

fn r_and_f() -> Outcome {
    combine(vec![all_pass("RTT", &rtensor::rgg_entries()), all_pass("F-matrices", &rtensor::verify_f_equation())])
}

fn maurer_cartan() -> Outcome {
    // Squares of the forms and the closure of the calculus under d are
    // relation-table properties, reported separately.
    let entries: Vec<Entry> = derivations::maurer_cartan_entries()
        .into_iter()
        .filter(|e| !e.name.contains(")^2 = 0") && !e.name.starts_with("Gauss calculus"))
        .collect();
    let mc = entries.iter().filter(|e| e.name.contains("(dw + w^w)")).count();
    let mut out = all_pass("MC forms and structure equations", &entries);
    if mc != 8 {
        out.ok = false;
        out.detail.push_str(&format!("; expected 8 structure-equation entries, found {mc}"));
    }
    out
}

fn vector_fields() -> Outcome {
    let start = Instant::now();
    let mut parts = Vec::new();
    for (label, g) in [("SL_q(2,R)", VfGroup::SlR), ("SL_q(2)", VfGroup::Sl), ("GL_q(2) reduced", VfGroup::Gl)] {
        let entries = matrix::verify_vf_algebra(g, 3);
        // The literal GL relations are superseded by their reduced forms.
        let entries: Vec<Entry> = entries.into_iter().filter(|e| !e.name.ends_with("(as printed)") || g != VfGroup::Gl).collect();
        parts.push(all_pass(label, &entries));
    }
    parts.push(all_pass("vector-field suite", &run_suites("relations/vector_fields", &[])));
    parts.push(all_pass("gradients", &matrix::gradient_entries()));
    parts.push(within("evaluated", start.elapsed(), Duration::from_secs(30)));
    combine(parts)
}

fn reductions() -> Outcome {
    combine(vec![
        all_pass("surjections", &reductions::surjection_entries()),
        all_pass("star structures", &reductions::star_entries()),
        all_pass("classical limits", &reductions::classical_entries()),
    ])
}

fn sigma_model() -> Outcome {
    let start = Instant::now();
    let mut entries = sigma::wznw_entries();
    entries.extend(sigma::background_entries());
    entries.extend(sigma::wz_threeform_check());
    let fails: Vec<_> = entries.iter().filter(|e| e.is_fail()).map(|e| e.name.clone()).collect();
    let flagged = entries.iter().filter(|e| e.status == Status::Flagged).count();
    let ok = fails.is_empty() && flagged <= 2;
    combine(vec![
        Outcome {
            ok,
            detail: format!(
                "{} entries, {} failing, {flagged} flagged (at most 2 allowed){}",
                entries.len(),
                fails.len(),
                if fails.is_empty() { String::new() } else { format!(": {}", fails.join(" | ")) }
            ),
        },
        within("evaluated", start.elapsed(), Duration::from_secs(60)),
    ])
}

/// The printed coupling constants of the three coset examples.
const PRINTED_C: [&str; 3] = ["(2*q^4 - q^2 + 1)/2", "(q^6 + 1)/4", "(2*q^4 - q^2 + 1)/(2*q^2)"];

fn cosets() -> Outcome {
    let gl = presets::get("GLq2").unwrap();
    let mut parts = Vec::new();
    for (n, printed) in (1u8..=3).zip(PRINTED_C) {
        let want = parse(printed, &gl).unwrap().as_scalar().unwrap();
        let part = match sigma::coset_split_unchecked(n) {
            Ok(s) => Outcome { ok: s.c_n == want, detail: format!("c_{n}: engine {} vs printed {want}", s.c_n) },
            Err(e) => Outcome { ok: false, detail: format!("c_{n}: {e}") },
        };
        parts.push(part);
    }
    parts.push(all_pass("coset suite", &sigma::coset_entries()));
    combine(parts)
}

fn cq_model() -> Outcome {
    let s = presets::get("Cq_sigma1d").unwrap();
    let printed = parse("q^4*(q^2+1)/2*rho^-2*rho_t^2", &s).unwrap();
    let lagrangian = match sigma::cq_lagrangian() {
        Ok(l) => Outcome { ok: l == printed, detail: format!("L = {}", print(&s.sig, &l)) },
        Err(e) => Outcome { ok: false, detail: format!("L: {e}") },
    };
    combine(vec![lagrangian, all_pass("series through order 6", &series::cq_series_check(6))])
}

/// Identities `w = N(w)` (true) and `w = N(w) + q m` (false) for random words.
fn numeric_cross_check(count: usize, q0: &BigRational) -> Result<(usize, Vec<String>), AlgebraError> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let names = presets::names();
    let mut disagreements = Vec::new();
    let mut checked = 0;
    let mut attempts = 0;
    while checked < count && attempts < 50 * count {
        attempts += 1;
        let p = presets::get(names[attempts % names.len()]).unwrap();
        if p.side_relation().is_some() {
            continue;
        }
        let w = NCPoly::word(random_word(&p, &mut rng, 4));
        let Ok(normal) = p.normal_order(&w) else { continue };
        let extra = NCPoly::word(random_word(&p, &mut rng, 2));
        let rhs = if checked % 2 == 0 { print(&p.sig, &normal) } else { format!("{} + q*({})", print(&p.sig, &normal), print(&p.sig, &extra)) };
        let text = format!("{} - ({rhs})", print(&p.sig, &w));
        let symbolic = match parse(&text, &p) {
            Ok(x) => x.is_zero(),
            Err(_) => continue,
        };
        let specialized = p.specialize(q0)?;
        match numeric_verdict(&specialized, &text, q0) {
            Ok(v) if v == symbolic => {}
            Ok(v) => disagreements.push(format!("{} in {}: symbolic {symbolic}, numeric {v}", text, p.name)),
            Err(e) => disagreements.push(format!("{text}: {e}")),
        }
        checked += 1;
    }
    Ok((checked, disagreements))
}

fn engine_health() -> Outcome {
    let mut parts = vec![all_pass("confluence probe (500 words, length <= 6)", &derivations::confluence_entries(500, 6, 1))];

    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let names = presets::names();
    let (mut idem_bad, mut rt_bad, mut round_trips) = (Vec::new(), Vec::new(), 0);
    let mut i = 0;
    while round_trips < 1000 && i < 20_000 {
        let p: std::sync::Arc<Preset> = presets::get(names[i % names.len()]).unwrap();
        i += 1;
        let raw = random_poly(&p, &mut rng, 3, 4).filter(|w| !p.sig.is_null(w));
        let Ok(n1) = p.normal_order(&raw) else { continue };
        match p.normal_order(&n1) {
            Ok(n2) if n2 == n1 => {}
            _ => idem_bad.push(format!("{}: {}", p.name, print(&p.sig, &raw))),
        }
        let text = print(&p.sig, &n1);
        match parse(&text, &p) {
            Ok(back) if back == n1 => {}
            _ => rt_bad.push(format!("{}: {text}", p.name)),
        }
        // The raw (unordered) form must round-trip through the raw parser too.
        if parse_raw(&print(&p.sig, &raw), &p.sig).map(|b| b == raw).unwrap_or(false) {
            round_trips += 1;
        } else {
            rt_bad.push(format!("{} raw: {}", p.name, print(&p.sig, &raw)));
        }
    }
    parts.push(Outcome {
        ok: idem_bad.is_empty() && round_trips >= 1000,
        detail: format!("normal_order idempotent on {round_trips} random polynomials ({} violations)", idem_bad.len()),
    });
    parts.push(Outcome {
        ok: rt_bad.is_empty() && round_trips >= 1000,
        detail: format!("parse/print round trip on {round_trips} random polynomials ({} violations)", rt_bad.len()),
    });

    let q0 = BigRational::new(7.into(), 10.into());
    parts.push(match numeric_cross_check(200, &q0) {
        Ok((n, bad)) => Outcome {
            ok: n >= 200 && bad.is_empty(),
            detail: format!("numeric cross-check at q = 7/10 on {n} identities ({} disagreements)", bad.len()),
        },
        Err(e) => Outcome { ok: false, detail: format!("numeric cross-check: {e}") },
    });
    combine(parts)
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("relation suites normalize to zero", relation_suites),
        ("quantum determinant is central, dD_q = D_q tau", centrality),
        ("R-matrix and F-matrix consistency", r_and_f),
        ("Maurer-Cartan forms and structure equations", maurer_cartan),
        ("vector-field algebras and gradients", vector_fields),
        ("subgroup reductions and classical limits", reductions),
        ("WZNW density, backgrounds and WZ term", sigma_model),
        ("coset couplings and structure equations", cosets),
        ("C_q(2|0) Lagrangian and series solution", cq_model),
        ("engine health", engine_health),
    ];
    let mut failed = 0;
    for (i, (title, check)) in criteria.iter().enumerate() {
        let out = check();
        println!("criterion {:>2} {}: {title} -- {}", i + 1, if out.ok { "PASS" } else { "FAIL" }, out.detail);
        failed += usize::from(!out.ok);
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
