//! Suite registry and runner: identity suites read from JSON plus derivation
//! suites computed in code, evaluated concurrently and assembled into a
//! deterministic [`Report`].

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::Instant;

use globset::Glob;
use num_rational::BigRational;
use serde_json::json;

use crate::algebra::{GenId, NCPoly, Preset};
use crate::derivations;
use crate::error::{AlgebraError, LoadError};
use crate::expr_io::suite::{self, Bindings, Realize, SuiteEntry, SuiteFile};
use crate::expr_io::{parse, parse_at, parse_raw, print};
use crate::matrix::{self, VfGroup};
use crate::presets;
use crate::reductions;
use crate::report::{Entry, Report, Status, SuiteReport};
use crate::rtensor;
use crate::series;
use crate::sigma;

/// Run options; everything except `jobs` is recorded in the report.
#[derive(Clone, Debug)]
pub struct Options {
    /// Re-evaluate every identity at this rational `q` and compare verdicts.
    pub q_numeric: Option<BigRational>,
    pub seed: u64,
    /// Truncation order of the series checks.
    pub order: u32,
    /// Largest monomial degree the vector-field checks act on.
    pub max_degree: usize,
    /// Worker threads; `None` uses the global pool.
    pub jobs: Option<usize>,
    /// Record wall-clock times (makes reports run-dependent).
    pub timings: bool,
    /// Random words per preset in the confluence probe.
    pub samples: usize,
    /// Maximal length of those words.
    pub word_len: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            q_numeric: None,
            seed: 1,
            order: 6,
            max_degree: 3,
            jobs: None,
            timings: false,
            samples: 500,
            word_len: 6,
        }
    }
}

impl Options {
    fn to_json(&self) -> serde_json::Value {
        json!({
            "q": self.q_numeric.as_ref().map(|q| q.to_string()),
            "seed": self.seed,
            "order": self.order,
            "max_degree": self.max_degree,
            "samples": self.samples,
            "word_len": self.word_len,
            "timings": self.timings,
        })
    }
}

/// A suite computed in code.
#[derive(Clone, Copy)]
pub struct Derivation {
    pub name: &'static str,
    pub description: &'static str,
    pub run: fn(&Options) -> Vec<Entry>,
}

pub const DERIVATIONS: &[Derivation] = &[
    Derivation {
        name: "algebra/centrality",
        description: "the quantum determinant is central and dD_q = D_q Tr_q w",
        run: |_| derivations::centrality_entries(),
    },
    Derivation {
        name: "algebra/confluence",
        description: "overlap-ambiguity probe on random words in every preset",
        run: |o| derivations::confluence_entries(o.samples, o.word_len, o.seed),
    },
    Derivation {
        name: "matrix/rgg",
        description: "the RTT relations reproduce the GL_q(2) table and nothing else",
        run: |_| rtensor::rgg_entries(),
    },
    Derivation {
        name: "matrix/f_equation",
        description: "RFF = FFR and AD = 1 for the matched F-matrices",
        run: |_| rtensor::verify_f_equation(),
    },
    Derivation {
        name: "matrix/maurer_cartan",
        description: "Gauss and quantum-plane Maurer-Cartan forms and their structure equations",
        run: |_| derivations::maurer_cartan_entries(),
    },
    Derivation {
        name: "matrix/vector_fields",
        description: "vector-field algebras acting on all monomials up to the maximal degree",
        run: |o| {
            let mut out = Vec::new();
            for g in [VfGroup::SlR, VfGroup::Sl, VfGroup::Gl] {
                out.extend(matrix::verify_vf_algebra(g, o.max_degree));
            }
            out
        },
    },
    Derivation {
        name: "matrix/gradient",
        description: "gradients of the Gauss coordinates along the left-invariant forms",
        run: |_| matrix::gradient_entries(),
    },
    Derivation {
        name: "reductions/surjections",
        description: "surjections onto the subgroup calculi",
        run: |_| reductions::surjection_entries(),
    },
    Derivation {
        name: "reductions/star",
        description: "star structures of the unitary forms",
        run: |_| reductions::star_entries(),
    },
    Derivation {
        name: "reductions/classical",
        description: "q -> 1 limit of every preset",
        run: |_| reductions::classical_entries(),
    },
    Derivation {
        name: "sigma/wznw",
        description: "WZNW density Tr_q(w_mu w^mu) term by term",
        run: |_| sigma::wznw_entries(),
    },
    Derivation {
        name: "sigma/background",
        description: "background fields G_AB and B_AB",
        run: |_| sigma::background_entries(),
    },
    Derivation {
        name: "sigma/wz_term",
        description: "Wess-Zumino three-form as a total derivative",
        run: |_| sigma::wz_threeform_check(),
    },
    Derivation {
        name: "sigma/cosets",
        description: "coset splits, c_n(q) and structure equations",
        run: |_| sigma::coset_entries(),
    },
    Derivation {
        name: "sigma/variational",
        description: "infinitesimal transformations, postulated algebra and compatibility",
        run: |_| sigma::variational_suite(),
    },
    Derivation {
        name: "sigma/cq_model",
        description: "one-dimensional C_q(2|0) model: Lagrangian and equation of motion",
        run: |_| sigma::cq_model_eom(),
    },
    Derivation {
        name: "sigma/cq_series",
        description: "different-time relations of the series solution",
        run: |o| series::cq_series_check(o.order),
    },
];

#[derive(Clone)]
pub enum Source {
    Identities(SuiteFile),
    Derivation(Derivation),
}

#[derive(Clone)]
pub struct Suite {
    pub name: String,
    pub source: Source,
}

/// Built-in identity suites, derivation suites and `extra` files, sorted by name.
pub fn catalogue(extra: Vec<SuiteFile>) -> Result<Vec<Suite>, LoadError> {
    let mut all: BTreeMap<String, Source> = BTreeMap::new();
    for f in suite::builtin() {
        all.insert(f.suite.clone(), Source::Identities(f));
    }
    for d in DERIVATIONS {
        all.insert(d.name.to_string(), Source::Derivation(*d));
    }
    for f in extra {
        if all.contains_key(&f.suite) {
            return Err(LoadError::Malformed { name: f.suite.clone(), msg: "suite name already in use".into() });
        }
        all.insert(f.suite.clone(), Source::Identities(f));
    }
    Ok(all.into_iter().map(|(name, source)| Suite { name, source }).collect())
}

/// Suites whose name matches the glob; an empty match is an error.
pub fn select(suites: Vec<Suite>, pattern: &str) -> Result<Vec<Suite>, LoadError> {
    let m = Glob::new(pattern).map_err(|e| LoadError::Glob(format!("{pattern}: {e}")))?.compile_matcher();
    let chosen: Vec<Suite> = suites.into_iter().filter(|s| m.is_match(&s.name)).collect();
    if chosen.is_empty() {
        return Err(LoadError::UnknownSuite(pattern.into()));
    }
    Ok(chosen)
}

fn other(e: impl std::fmt::Display) -> AlgebraError {
    AlgebraError::Other(e.to_string())
}

fn difference_text(e: &SuiteEntry) -> String {
    format!("{} - ({})", e.lhs, e.rhs)
}

/// `lhs − rhs` parsed in `from` and mapped into `target` through the bindings;
/// generators without a binding keep their name.
fn bound_difference(b: &Bindings, e: &SuiteEntry, target: &Arc<Preset>) -> Result<NCPoly, AlgebraError> {
    let from = presets::get(&b.from).map_err(other)?;
    let raw = parse_raw(&difference_text(e), &from.sig).map_err(other)?;
    let mut images: Vec<NCPoly> = Vec::with_capacity(from.sig.gens.len());
    for g in &from.sig.gens {
        let img = match b.map.get(&g.name) {
            Some(text) => parse(text, target).map_err(other)?,
            None => NCPoly::gen(target.id(&g.name).map_err(|_| AlgebraError::MissingImage(g.name.clone()))?),
        };
        images.push(img);
    }
    let map = |g: GenId| images.get(g as usize).cloned();
    from.substitute(&raw, &map, target)
}

/// Evaluates one identity symbolically; a `flag` turns a failure into `flagged`.
pub fn evaluate_entry(bindings: Option<&Bindings>, e: &SuiteEntry) -> Entry {
    let result = (|| -> Result<(Arc<Preset>, NCPoly), AlgebraError> {
        match (e.realize, bindings) {
            (Some(Realize::Variation), _) => {
                let var = presets::get("SLq2R_var").map_err(other)?;
                Ok((var, sigma::realize_variation(&difference_text(e))?))
            }
            (None, Some(b)) => {
                let target = presets::get(&e.preset).map_err(other)?;
                let d = bound_difference(b, e, &target)?;
                Ok((target, d))
            }
            (None, None) => {
                let p = presets::get(&e.preset).map_err(other)?;
                let d = parse(&difference_text(e), &p).map_err(other)?;
                Ok((p, d))
            }
        }
    })();
    let entry = match result {
        Ok((p, d)) => Entry::zero(&e.name, &e.paper_ref, &p.sig, &d),
        Err(err) => Entry::error(&e.name, &e.paper_ref, err),
    };
    match &e.flag {
        Some(why) => entry.expect_discrepancy(why),
        None => entry,
    }
}

/// Whether `text` normal-orders to zero in `preset` specialized at `q0`.
pub fn numeric_verdict(specialized: &Preset, text: &str, q0: &BigRational) -> Result<bool, AlgebraError> {
    Ok(parse_at(text, specialized, q0).map_err(other)?.is_zero())
}

fn append_note(e: &mut Entry, note: String) {
    e.note = Some(match e.note.take() {
        Some(n) => format!("{n}; {note}"),
        None => note,
    });
}

/// Cross-checks a symbolic verdict at `q0`: agreement is noted, disagreement fails.
fn cross_check(e: &mut Entry, entry: &SuiteEntry, bindings: Option<&Bindings>, q0: &BigRational, cache: &SpecializedCache) {
    if entry.realize.is_some() || bindings.is_some() {
        append_note(e, format!("numeric check at q = {q0} not applicable"));
        return;
    }
    let symbolic_zero = e.residual.is_none();
    let verdict = cache.get(&entry.preset).and_then(|p| numeric_verdict(&p, &difference_text(entry), q0));
    match verdict {
        Ok(v) if v == symbolic_zero => append_note(e, format!("numeric check at q = {q0} agrees")),
        Ok(v) if !symbolic_zero && v => append_note(e, format!("numeric check at q = {q0}: residual vanishes at this point")),
        Ok(_) => {
            e.status = Status::Fail;
            append_note(e, format!("numeric check at q = {q0} disagrees with the symbolic verdict"));
        }
        Err(err) => append_note(e, format!("numeric check at q = {q0} skipped: {err}")),
    }
}

/// Presets specialized at the cross-check point, built once per run.
struct SpecializedCache {
    q0: Option<BigRational>,
    presets: BTreeMap<String, Result<Arc<Preset>, String>>,
}

impl SpecializedCache {
    fn new(q0: Option<&BigRational>, names: impl IntoIterator<Item = String>) -> Self {
        let mut presets = BTreeMap::new();
        if let Some(q0) = q0 {
            for n in names {
                let p = presets::get(&n)
                    .map_err(|e| e.to_string())
                    .and_then(|p| p.specialize(q0).map(Arc::new).map_err(|e| e.to_string()));
                presets.insert(n, p);
            }
        }
        SpecializedCache { q0: q0.cloned(), presets }
    }

    fn get(&self, name: &str) -> Result<Arc<Preset>, AlgebraError> {
        match self.presets.get(name) {
            Some(Ok(p)) => Ok(p.clone()),
            Some(Err(e)) => Err(AlgebraError::Other(e.clone())),
            None => Err(AlgebraError::Other(format!("preset `{name}` not specialized at {:?}", self.q0))),
        }
    }
}

enum Task<'a> {
    Identity { suite: usize, file: &'a SuiteFile, entry: &'a SuiteEntry },
    Derivation { suite: usize, d: Derivation },
}

fn timed<T>(on: bool, f: impl FnOnce() -> T) -> (T, Option<u64>) {
    let start = Instant::now();
    let out = f();
    (out, on.then(|| start.elapsed().as_millis() as u64))
}

/// Maps `f` over the tasks: on the rayon pool, or in order when `jobs` is 1
/// or the `parallel` feature is off.
fn map_tasks<T: Sync, R: Send>(items: &[T], jobs: Option<usize>, f: impl Fn(&T) -> R + Sync + Send) -> Vec<R> {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        let go = || items.par_iter().map(&f).collect();
        match jobs {
            Some(1) => {}
            Some(j) => {
                if let Ok(pool) = rayon::ThreadPoolBuilder::new().num_threads(j).build() {
                    return pool.install(go);
                }
            }
            None => return go(),
        }
    }
    #[cfg(not(feature = "parallel"))]
    let _ = jobs;
    items.iter().map(f).collect()
}

/// Runs the suites; entries are evaluated concurrently and sorted afterwards.
pub fn run(suites: &[Suite], opts: &Options) -> Report {
    let mut tasks = Vec::new();
    let mut used_presets = Vec::new();
    for (i, s) in suites.iter().enumerate() {
        match &s.source {
            Source::Identities(file) => {
                for entry in &file.entries {
                    used_presets.push(entry.preset.clone());
                    tasks.push(Task::Identity { suite: i, file, entry });
                }
            }
            Source::Derivation(d) => tasks.push(Task::Derivation { suite: i, d: *d }),
        }
    }
    used_presets.sort();
    used_presets.dedup();
    let cache = SpecializedCache::new(opts.q_numeric.as_ref(), used_presets);

    let results = map_tasks(&tasks, opts.jobs, |t| match t {
        Task::Identity { suite, file, entry } => {
            let (mut e, ms) = timed(opts.timings, || evaluate_entry(file.bindings.as_ref(), entry));
            if let Some(q0) = &opts.q_numeric {
                cross_check(&mut e, entry, file.bindings.as_ref(), q0, &cache);
            }
            e.wall_ms = ms;
            (*suite, vec![e], None)
        }
        Task::Derivation { suite, d } => {
            let (entries, ms) = timed(opts.timings, || (d.run)(opts));
            (*suite, entries, ms)
        }
    });

    let mut reports: Vec<SuiteReport> =
        suites.iter().map(|s| SuiteReport { suite: s.name.clone(), entries: Vec::new(), wall_ms: None }).collect();
    for (i, entries, ms) in results {
        reports[i].entries.extend(entries);
        if ms.is_some() {
            reports[i].wall_ms = ms;
        }
    }
    Report::new(opts.to_json(), reports)
}

/// Canonical text of a preset's rule table.
pub fn dump_preset(name: &str) -> Result<String, LoadError> {
    Ok(presets::get(name)?.dump())
}

/// A suite as JSON (identity suites) or its description (derivation suites).
pub fn dump_suite(name: &str, extra: Vec<SuiteFile>) -> Result<String, LoadError> {
    let suite = catalogue(extra)?
        .into_iter()
        .find(|s| s.name == name)
        .ok_or_else(|| LoadError::UnknownSuite(name.into()))?;
    Ok(match suite.source {
        Source::Identities(f) => f.to_json(),
        Source::Derivation(d) => format!("derivation suite {}: {}\n", d.name, d.description),
    })
}

/// Names accepted by [`dump_derivation`].
pub const DERIVATION_DUMPS: &[&str] = &[
    "background",
    "coset_mc",
    "coset_split_1",
    "coset_split_2",
    "coset_split_3",
    "cq_eom",
    "cq_lagrangian",
    "gauss_omega",
    "wz_threeform",
    "wznw_density",
];

fn poly_text(preset: &str, p: &NCPoly) -> Result<String, AlgebraError> {
    let pr = presets::get(preset).map_err(other)?;
    Ok(format!("{}\n", print(&pr.sig, p)))
}

/// Prints a derived object in the expression grammar.
pub fn dump_derivation(name: &str) -> Result<String, LoadError> {
    let fail = |e: AlgebraError| LoadError::Malformed { name: name.into(), msg: e.to_string() };
    let text = match name {
        "wznw_density" => sigma::wznw_density().and_then(|p| poly_text("SLq2R_sigma", &p)),
        "wz_threeform" => sigma::wz_threeform().and_then(|p| poly_text("SLq2R_gauss", &p)),
        "gauss_omega" => sigma::gauss_omega().map(|m| m.to_text()),
        "coset_mc" => sigma::coset_mc().map(|m| m.to_text()),
        "cq_lagrangian" => sigma::cq_lagrangian().and_then(|p| poly_text("Cq_sigma1d", &p)),
        "cq_eom" => sigma::cq_eom().and_then(|p| poly_text("Cq_sigma1d", &p)),
        "background" => sigma::wznw_density().and_then(|l| sigma::extract_background(&l)).and_then(|bg| {
            let s = presets::get("SLq2R_sigma").map_err(other)?;
            let mut out = String::new();
            for (label, m) in [("G", &bg.g), ("B", &bg.b)] {
                for (i, row) in m.iter().enumerate() {
                    for (j, e) in row.iter().enumerate() {
                        out.push_str(&format!("{label}[{},{}] = {}\n", sigma::FIELDS[i], sigma::FIELDS[j], print(&s.sig, e)));
                    }
                }
            }
            Ok(out)
        }),
        _ => match name.strip_prefix("coset_split_").and_then(|n| n.parse::<u8>().ok()) {
            Some(n) if (1..=3).contains(&n) => sigma::coset_split_unchecked(n).map(|c| {
                format!(
                    "omega =\n{}theta =\n{}c_{n} = {}\nsums to k^-1 dk: {}\n",
                    c.omega.to_text(),
                    c.theta.to_text(),
                    c.c_n,
                    c.sums_to_mc
                )
            }),
            _ => return Err(LoadError::UnknownDerivation(name.into())),
        },
    };
    text.map_err(fail)
}
