//! Presets: a named algebra given by an ordered generator list and a table of
//! rewrite rules, one per out-of-order pair of generators.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::poly::NCPoly;
use super::word::{GenId, Word};
use crate::error::AlgebraError;
use crate::scalars::QScalar;

/// Default bound on rewrite steps for a single normalization.
pub const DEFAULT_GUARD: usize = 5_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    /// Form degree: 0 for parameters, 1 for differentials and 1-forms.
    pub degree: u8,
    pub invertible: bool,
}

/// Generator names and lookup, shared by presets and the parser.
#[derive(Clone, Debug, Default)]
pub struct Signature {
    pub gens: Vec<Generator>,
    index: HashMap<String, GenId>,
    /// Extra spellings, e.g. `Dqi` for `Dq^-1`.
    aliases: Vec<(String, Word)>,
}

impl Signature {
    pub fn add(&mut self, name: &str, degree: u8, invertible: bool) -> GenId {
        assert!(degree <= 1, "generator degree must be 0 or 1");
        assert!(!self.index.contains_key(name), "duplicate generator `{name}`");
        let id = self.gens.len() as GenId;
        self.gens.push(Generator {
            name: name.to_string(),
            degree,
            invertible,
        });
        self.index.insert(name.to_string(), id);
        id
    }

    pub fn add_alias(&mut self, name: &str, w: Word) {
        self.aliases.push((name.to_string(), w));
    }

    pub fn id(&self, name: &str) -> Option<GenId> {
        self.index.get(name).copied()
    }

    /// Resolves a name to a word (generator or alias).
    pub fn lookup(&self, name: &str) -> Option<Word> {
        if let Some(g) = self.id(name) {
            return Some(Word::letter(g, 1));
        }
        self.aliases.iter().find(|(n, _)| n == name).map(|(_, w)| w.clone())
    }

    pub fn name(&self, g: GenId) -> &str {
        &self.gens[g as usize].name
    }

    pub fn gen(&self, g: GenId) -> &Generator {
        &self.gens[g as usize]
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn word_degree(&self, w: &Word) -> usize {
        w.runs()
            .iter()
            .map(|&(g, e)| self.gen(g).degree as usize * e.unsigned_abs() as usize)
            .sum()
    }

    /// Degree-1 letters square to zero; a word holding one twice in a run is null.
    pub fn is_null(&self, w: &Word) -> bool {
        w.runs()
            .iter()
            .any(|&(g, e)| self.gen(g).degree == 1 && e != 1)
    }

    pub fn word_text(&self, w: &Word) -> String {
        if w.is_one() {
            return "1".into();
        }
        let mut s = String::new();
        for (i, &(g, e)) in w.runs().iter().enumerate() {
            if i > 0 {
                s.push('*');
            }
            s.push_str(self.name(g));
            if e != 1 {
                let _ = write!(s, "^{e}");
            }
        }
        s
    }
}

/// One oriented rule `hi·lo → coef·lo·hi + tail` with `hi > lo`.
#[derive(Clone, Debug)]
pub struct Rule {
    pub hi: GenId,
    pub lo: GenId,
    pub coef: QScalar,
    pub tail: NCPoly,
    /// The relation as transcribed.
    pub text: String,
    pub citation: String,
    // Precomputed single-letter expansions of hi^±1·lo^±1.
    pp: NCPoly,
    pm: Option<NCPoly>,
    mp: Option<NCPoly>,
}

impl Rule {
    pub fn is_scalar(&self) -> bool {
        self.tail.is_zero()
    }

    /// The relation as a polynomial `hi·lo − coef·lo·hi − tail` (unordered words).
    pub fn relation(&self) -> NCPoly {
        let mut p = NCPoly::word(Word::from_runs(&[(self.hi, 1), (self.lo, 1)]));
        p.add_term(Word::from_runs(&[(self.lo, 1), (self.hi, 1)]), -&self.coef);
        p.sub(&self.tail)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Pair {
    Swap(usize),
    /// Mutually opaque generators (no relation, both orders are normal).
    Frozen,
    /// Declared unknown; hitting it is an error.
    Gap,
}

/// `first^i · M · last^l → first^(i-1) · κ(M)·M · replacement · last^(l-1)`,
/// e.g. the unimodular condition `ad = 1 + q bc`.
#[derive(Clone, Debug)]
pub struct SideRelation {
    pub first: GenId,
    pub last: GenId,
    pub replacement: NCPoly,
    pub text: String,
    pub citation: String,
}

/// Reduction strategy for the confluence probe.
#[derive(Clone, Copy, Debug)]
pub enum Strategy {
    Leftmost,
    Rightmost,
    Random(u64),
}

#[derive(Clone, Debug)]
pub struct Preset {
    pub name: String,
    pub description: String,
    pub sig: Signature,
    table: Vec<Option<Pair>>,
    rules: Vec<Rule>,
    side: Option<SideRelation>,
    dmap: Vec<Option<NCPoly>>,
    /// Operator algebras (vector fields) have a Lie-type classical limit.
    pub operator: bool,
    pub notes: Vec<String>,
    pub guard: usize,
}

impl Preset {
    pub fn n(&self) -> usize {
        self.sig.len()
    }

    pub fn id(&self, name: &str) -> Result<GenId, AlgebraError> {
        self.sig.id(name).ok_or_else(|| AlgebraError::UnknownGenerator(name.into()))
    }

    /// The generator as a polynomial; panics on unknown names (catalogue code only).
    pub fn g(&self, name: &str) -> NCPoly {
        NCPoly::gen(self.id(name).unwrap_or_else(|_| panic!("{}: no generator {name}", self.name)))
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn side_relation(&self) -> Option<&SideRelation> {
        self.side.as_ref()
    }

    pub fn rule_for(&self, hi: GenId, lo: GenId) -> Option<&Rule> {
        match self.pair(hi, lo) {
            Some(Pair::Swap(i)) => Some(&self.rules[i]),
            _ => None,
        }
    }

    pub fn is_frozen(&self, hi: GenId, lo: GenId) -> bool {
        self.pair(hi, lo) == Some(Pair::Frozen)
    }

    pub fn is_gap(&self, hi: GenId, lo: GenId) -> bool {
        self.pair(hi, lo) == Some(Pair::Gap)
    }

    fn pair(&self, hi: GenId, lo: GenId) -> Option<Pair> {
        self.table[hi as usize * self.n() + lo as usize]
    }

    /// Copy in which the rule for `hi·lo` is switched off (the pair becomes opaque).
    pub fn without_rule(&self, hi: GenId, lo: GenId) -> Preset {
        let mut p = self.clone();
        let n = p.n();
        p.table[hi as usize * n + lo as usize] = Some(Pair::Frozen);
        p
    }

    /// Copy without the side relation.
    pub fn without_side_relation(&self) -> Preset {
        let mut p = self.clone();
        p.side = None;
        p
    }

    pub fn differential(&self, g: GenId) -> Option<&NCPoly> {
        self.dmap.get(g as usize).and_then(|d| d.as_ref())
    }

    pub fn has_differential(&self) -> bool {
        self.dmap.iter().any(|d| d.is_some())
    }

    pub fn degree(&self, w: &Word) -> usize {
        self.sig.word_degree(w)
    }

    // ---- normal ordering -------------------------------------------------

    pub fn normal_order(&self, p: &NCPoly) -> Result<NCPoly, AlgebraError> {
        self.normal_order_with(p, Strategy::Leftmost)
    }

    pub fn normal_order_with(&self, p: &NCPoly, strategy: Strategy) -> Result<NCPoly, AlgebraError> {
        let mut rng = match strategy {
            Strategy::Random(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
            _ => None,
        };
        let mut pending: BTreeMap<Word, QScalar> = BTreeMap::new();
        for (w, c) in p.terms() {
            if !self.sig.is_null(w) {
                add_to(&mut pending, w.clone(), c.clone());
            }
        }
        let mut done = NCPoly::zero();
        let mut steps = 0usize;
        while let Some((w, c)) = pending.pop_last() {
            steps += 1;
            if steps > self.guard {
                return Err(AlgebraError::StepGuard(self.name.clone()));
            }
            match self.rewrite(&w, strategy, rng.as_mut())? {
                None => done.add_term(w, c),
                Some(expansion) => {
                    for (w2, k) in expansion {
                        if !self.sig.is_null(&w2) {
                            add_to(&mut pending, w2, &c * &k);
                        }
                    }
                }
            }
        }
        Ok(done)
    }

    /// Positions `i` where runs `i, i+1` are out of order and need rewriting.
    fn redexes(&self, w: &Word) -> Result<Vec<usize>, AlgebraError> {
        let runs = w.runs();
        let mut out = Vec::new();
        for i in 0..runs.len().saturating_sub(1) {
            let (u, v) = (runs[i].0, runs[i + 1].0);
            if u > v {
                match self.pair(u, v) {
                    Some(Pair::Swap(_)) => out.push(i),
                    Some(Pair::Frozen) => {}
                    Some(Pair::Gap) | None => {
                        return Err(AlgebraError::RuleGap {
                            preset: self.name.clone(),
                            hi: self.sig.name(u).into(),
                            lo: self.sig.name(v).into(),
                        })
                    }
                }
            }
        }
        Ok(out)
    }

    fn rewrite(
        &self,
        w: &Word,
        strategy: Strategy,
        rng: Option<&mut ChaCha8Rng>,
    ) -> Result<Option<Vec<(Word, QScalar)>>, AlgebraError> {
        let redexes = self.redexes(w)?;
        if redexes.is_empty() {
            return Ok(self.apply_side(w));
        }
        let i = match strategy {
            Strategy::Leftmost => redexes[0],
            Strategy::Rightmost => *redexes.last().unwrap(),
            Strategy::Random(_) => redexes[rng.expect("rng").gen_range(0..redexes.len())],
        };
        self.swap_at(w, i).map(Some)
    }

    fn swap_at(&self, w: &Word, i: usize) -> Result<Vec<(Word, QScalar)>, AlgebraError> {
        let runs = w.runs();
        let (u, e1) = runs[i];
        let (v, e2) = runs[i + 1];
        let Some(Pair::Swap(ri)) = self.pair(u, v) else { unreachable!() };
        let rule = &self.rules[ri];
        let prefix = Word::from_runs(&runs[..i]);
        let suffix = Word::from_runs(&runs[i + 2..]);
        if rule.is_scalar() {
            // whole runs commute up to c^(e1·e2)
            let mut nw = prefix;
            nw.push(v, e2);
            nw.push(u, e1);
            nw.extend(&suffix);
            let k = rule.coef.pow(e1 as i64 * e2 as i64)?;
            return Ok(vec![(nw, k)]);
        }
        let (s1, s2) = (e1.signum(), e2.signum());
        let middle = match (s1 > 0, s2 > 0) {
            (true, true) => &rule.pp,
            (true, false) => rule.pm.as_ref().ok_or_else(|| AlgebraError::NotInvertible(self.sig.name(v).into()))?,
            (false, true) => rule.mp.as_ref().ok_or_else(|| AlgebraError::NotInvertible(self.sig.name(u).into()))?,
            (false, false) => {
                return Err(AlgebraError::UnsupportedInverse {
                    preset: self.name.clone(),
                    hi: self.sig.name(u).into(),
                    lo: self.sig.name(v).into(),
                })
            }
        };
        let mut left = prefix;
        left.push(u, e1 - s1);
        let mut right = Word::letter(v, e2 - s2);
        right.extend(&suffix);
        Ok(middle
            .terms()
            .map(|(m, k)| {
                let mut nw = left.clone();
                nw.extend(m);
                nw.extend(&right);
                (nw, k.clone())
            })
            .collect())
    }

    fn apply_side(&self, w: &Word) -> Option<Vec<(Word, QScalar)>> {
        let side = self.side.as_ref()?;
        let runs = w.runs();
        let i = runs.iter().position(|&(g, e)| g == side.first && e > 0)?;
        let j = i + 1 + runs[i + 1..].iter().position(|&(g, _)| g == side.last)?;
        if runs[j].1 <= 0 {
            return None;
        }
        // move one `first` to the right through the runs in between
        let mut kappa = QScalar::one();
        for &(m, e) in &runs[i + 1..j] {
            let rule = self.rule_for(m, side.first).filter(|r| r.is_scalar())?;
            kappa = &kappa * &rule.coef.pow(-(e as i64)).ok()?;
        }
        let mut left = Word::from_runs(&runs[..i]);
        left.push(side.first, runs[i].1 - 1);
        for &(m, e) in &runs[i + 1..j] {
            left.push(m, e);
        }
        let mut right = Word::letter(side.last, runs[j].1 - 1);
        right.extend(&Word::from_runs(&runs[j + 1..]));
        Some(
            side.replacement
                .terms()
                .map(|(m, k)| {
                    let mut nw = left.clone();
                    nw.extend(m);
                    nw.extend(&right);
                    (nw, k * &kappa)
                })
                .collect(),
        )
    }

    /// True if the word needs no rewriting.
    pub fn is_normal(&self, w: &Word) -> Result<bool, AlgebraError> {
        Ok(self.redexes(w)?.is_empty() && self.apply_side(w).is_none() && !self.sig.is_null(w))
    }

    // ---- derived operations ----------------------------------------------

    pub fn mul(&self, a: &NCPoly, b: &NCPoly) -> Result<NCPoly, AlgebraError> {
        self.normal_order(&a.mul_raw(b))
    }

    pub fn mul_all(&self, factors: &[&NCPoly]) -> Result<NCPoly, AlgebraError> {
        let mut acc = NCPoly::one();
        for f in factors {
            acc = self.mul(&acc, f)?;
        }
        Ok(acc)
    }

    pub fn pow(&self, a: &NCPoly, n: u32) -> Result<NCPoly, AlgebraError> {
        let mut acc = NCPoly::one();
        for _ in 0..n {
            acc = self.mul(&acc, a)?;
        }
        Ok(acc)
    }

    /// `[a, b] = ab − ba`, normal-ordered.
    pub fn commutator(&self, a: &NCPoly, b: &NCPoly) -> Result<NCPoly, AlgebraError> {
        self.normal_order(&a.mul_raw(b).sub(&b.mul_raw(a)))
    }

    /// Homogeneous components by form degree, ascending; zero gives `[]`.
    pub fn grade_split(&self, p: &NCPoly) -> Vec<(usize, NCPoly)> {
        let mut parts: BTreeMap<usize, NCPoly> = BTreeMap::new();
        for (w, c) in p.terms() {
            parts.entry(self.degree(w)).or_default().add_term(w.clone(), c.clone());
        }
        parts.into_iter().collect()
    }

    /// Exterior derivative with the graded Leibniz rule, normal-ordered.
    pub fn ext_d(&self, p: &NCPoly) -> Result<NCPoly, AlgebraError> {
        let mut out = NCPoly::zero();
        for (w, c) in p.terms() {
            out.add_assign(&self.ext_d_word(w)?.scale(c));
        }
        self.normal_order(&out)
    }

    fn ext_d_word(&self, w: &Word) -> Result<NCPoly, AlgebraError> {
        // letters expanded one at a time: d(x1…xn) = Σ ± x1…d(xi)…xn
        let letters: Vec<(GenId, i32)> = w
            .runs()
            .iter()
            .flat_map(|&(g, e)| std::iter::repeat_n((g, e.signum()), e.unsigned_abs() as usize))
            .collect();
        let mut out = NCPoly::zero();
        let mut deg_before = 0usize;
        for (i, &(g, s)) in letters.iter().enumerate() {
            let dg = self
                .differential(g)
                .ok_or_else(|| AlgebraError::MissingDifferential(self.sig.name(g).into()))?;
            let x = NCPoly::word(Word::letter(g, s));
            let dletter = if s > 0 {
                dg.clone()
            } else {
                // d(x⁻¹) = −x⁻¹ dx x⁻¹
                x.mul_raw(dg).mul_raw(&x).neg()
            };
            let pre = Word::from_runs(&letters[..i]);
            let post = Word::from_runs(&letters[i + 1..]);
            let sign = if deg_before % 2 == 1 { -QScalar::one() } else { QScalar::one() };
            out.add_assign(
                &NCPoly::word(pre).mul_raw(&dletter).mul_raw(&NCPoly::word(post)).scale(&sign),
            );
            deg_before += self.sig.gen(g).degree as usize;
        }
        Ok(out)
    }

    /// Homomorphic image under `map`, normal-ordered in `target`.
    pub fn substitute(
        &self,
        p: &NCPoly,
        map: &dyn Fn(GenId) -> Option<NCPoly>,
        target: &Preset,
    ) -> Result<NCPoly, AlgebraError> {
        self.substitute_with(p, map, target, true)
    }

    /// [`Preset::substitute`] with the grading check optional (e.g. `d ↦ ∂_μ`,
    /// which sends 1-forms to degree-0 derivative symbols).
    pub fn substitute_with(
        &self,
        p: &NCPoly,
        map: &dyn Fn(GenId) -> Option<NCPoly>,
        target: &Preset,
        graded: bool,
    ) -> Result<NCPoly, AlgebraError> {
        let mut images: HashMap<(GenId, i32), NCPoly> = HashMap::new();
        let mut out = NCPoly::zero();
        for (w, c) in p.terms() {
            let mut acc = NCPoly::scalar(c.clone());
            for &(g, e) in w.runs() {
                let s = e.signum();
                if let std::collections::hash_map::Entry::Vacant(e) = images.entry((g, s)) {
                    let img = map(g).ok_or_else(|| AlgebraError::MissingImage(self.sig.name(g).into()))?;
                    for (iw, _) in img.terms() {
                        let d = target.degree(iw);
                        if graded && d != self.sig.gen(g).degree as usize {
                            return Err(AlgebraError::Grading(format!(
                                "image of `{}` has degree {d}",
                                self.sig.name(g)
                            )));
                        }
                    }
                    let img = if s > 0 { img } else { invert_monomial(&img, target, self.sig.name(g))? };
                    e.insert(img);
                }
                let img = &images[&(g, s)];
                for _ in 0..e.unsigned_abs() {
                    acc = target.mul(&acc, img)?;
                }
                if acc.is_zero() {
                    break;
                }
            }
            out.add_assign(&acc);
        }
        target.normal_order(&out)
    }

    /// Same algebra with every coefficient evaluated at `q = q0`.
    pub fn specialize(&self, q0: &num_rational::BigRational) -> Result<Preset, AlgebraError> {
        let ev = |c: &QScalar| -> Result<QScalar, AlgebraError> { Ok(QScalar::from_rational(&c.eval(q0)?)) };
        self.map_coefficients(&ev, &format!("{}@q={q0}", self.name))
    }

    /// The q → 1 algebra: rule coefficients and tails specialized at q = 1.
    pub fn classical(&self) -> Result<Preset, AlgebraError> {
        let ev = |c: &QScalar| -> Result<QScalar, AlgebraError> { Ok(QScalar::from_rational(&c.limit_q1()?)) };
        self.map_coefficients(&ev, &format!("{}@q=1", self.name))
    }

    fn map_coefficients(
        &self,
        f: &dyn Fn(&QScalar) -> Result<QScalar, AlgebraError>,
        name: &str,
    ) -> Result<Preset, AlgebraError> {
        let mp = |p: &NCPoly| -> Result<NCPoly, AlgebraError> {
            let mut out = NCPoly::zero();
            for (w, c) in p.terms() {
                out.add_term(w.clone(), f(c)?);
            }
            Ok(out)
        };
        let mut out = self.clone();
        out.name = name.to_string();
        for r in &mut out.rules {
            r.coef = f(&r.coef)?;
            r.tail = mp(&r.tail)?;
            r.pp = mp(&r.pp)?;
            r.pm = r.pm.as_ref().map(mp).transpose()?;
            r.mp = r.mp.as_ref().map(mp).transpose()?;
        }
        if let Some(s) = &mut out.side {
            s.replacement = mp(&s.replacement)?;
        }
        for d in out.dmap.iter_mut().flatten() {
            *d = mp(d)?;
        }
        Ok(out)
    }

    /// Audit listing of generators and rules.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "preset {}", self.name);
        if !self.description.is_empty() {
            let _ = writeln!(s, "  {}", self.description);
        }
        let _ = write!(s, "generators (in order):");
        for g in &self.sig.gens {
            let _ = write!(s, " {}[deg {}{}]", g.name, g.degree, if g.invertible { ", inv" } else { "" });
        }
        s.push('\n');
        let _ = writeln!(s, "rules:");
        for r in &self.rules {
            let _ = writeln!(
                s,
                "  {} -> {}    # {} | {}",
                self.sig.word_text(&Word::from_runs(&[(r.hi, 1), (r.lo, 1)])),
                crate::expr_io::print(&self.sig, &{
                    let mut p = NCPoly::term(Word::from_runs(&[(r.lo, 1), (r.hi, 1)]), r.coef.clone());
                    p.add_assign(&r.tail);
                    p
                }),
                r.text,
                r.citation
            );
        }
        if let Some(side) = &self.side {
            let _ = writeln!(s, "side relation: {}    # {}", side.text, side.citation);
        }
        let mut frozen = Vec::new();
        let mut gaps = Vec::new();
        for hi in 0..self.n() {
            for lo in 0..hi {
                let pair = format!("{}·{}", self.sig.name(hi as GenId), self.sig.name(lo as GenId));
                match self.pair(hi as GenId, lo as GenId) {
                    Some(Pair::Frozen) => frozen.push(pair),
                    Some(Pair::Gap) => gaps.push(pair),
                    _ => {}
                }
            }
        }
        if !frozen.is_empty() {
            let _ = writeln!(s, "opaque pairs: {}", frozen.join(", "));
        }
        if !gaps.is_empty() {
            let _ = writeln!(s, "unspecified pairs: {}", gaps.join(", "));
        }
        if self.has_differential() {
            let _ = writeln!(s, "differential:");
            for g in 0..self.n() {
                if let Some(d) = self.differential(g as GenId) {
                    let _ = writeln!(s, "  d({}) = {}", self.sig.name(g as GenId), crate::expr_io::print(&self.sig, d));
                }
            }
        }
        for n in &self.notes {
            let _ = writeln!(s, "note: {n}");
        }
        s
    }
}

fn add_to(map: &mut BTreeMap<Word, QScalar>, w: Word, c: QScalar) {
    if c.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match map.entry(w) {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            let s = o.get() + &c;
            if s.is_zero() {
                o.remove();
            } else {
                *o.get_mut() = s;
            }
        }
    }
}

/// Inverse of `c·w` for a word of invertible letters.
pub(crate) fn invert_monomial(p: &NCPoly, target: &Preset, name: &str) -> Result<NCPoly, AlgebraError> {
    if p.len() != 1 {
        return Err(AlgebraError::NotInvertible(name.into()));
    }
    let (w, c) = p.terms().next().unwrap();
    let mut inv = Word::one();
    for &(g, e) in w.runs().iter().rev() {
        if !target.sig.gen(g).invertible {
            return Err(AlgebraError::NotInvertible(target.sig.name(g).into()));
        }
        inv.push(g, -e);
    }
    Ok(NCPoly::term(inv, c.inv()?))
}

// ---- builder --------------------------------------------------------------

pub struct PresetBuilder {
    name: String,
    description: String,
    sig: Signature,
    pending: Vec<(String, String)>,
    commuting: Vec<(String, Vec<String>, String)>,
    frozen: Vec<Vec<String>>,
    side: Option<(String, String, String, String)>,
    dmap: Vec<(String, String)>,
    allow_gaps: bool,
    operator: bool,
    d_shift: usize,
    notes: Vec<String>,
    guard: usize,
}

impl PresetBuilder {
    pub fn new(name: &str) -> Self {
        PresetBuilder {
            name: name.into(),
            description: String::new(),
            sig: Signature::default(),
            pending: Vec::new(),
            commuting: Vec::new(),
            frozen: Vec::new(),
            side: None,
            dmap: Vec::new(),
            allow_gaps: false,
            operator: false,
            d_shift: 1,
            notes: Vec::new(),
            guard: DEFAULT_GUARD,
        }
    }

    pub fn describe(mut self, text: &str) -> Self {
        self.description = text.into();
        self
    }

    /// Degree-0 generators, in order.
    pub fn params(mut self, names: &[&str]) -> Self {
        for n in names {
            self.sig.add(n, 0, false);
        }
        self
    }

    /// An invertible degree-0 generator.
    pub fn inv_param(mut self, name: &str) -> Self {
        self.sig.add(name, 0, true);
        self
    }

    /// Degree-1 generators, in order.
    pub fn forms(mut self, names: &[&str]) -> Self {
        for n in names {
            self.sig.add(n, 1, false);
        }
        self
    }

    pub fn has_generator(&self, name: &str) -> bool {
        self.sig.id(name).is_some()
    }

    pub fn alias(mut self, name: &str, target: &str, exp: i32) -> Self {
        let g = self.sig.id(target).expect("alias target");
        self.sig.add_alias(name, Word::letter(g, exp));
        self
    }

    /// A relation `lhs = rhs` containing exactly one out-of-order two-letter word.
    pub fn rel(mut self, text: &str, citation: &str) -> Self {
        self.pending.push((text.into(), citation.into()));
        self
    }

    pub fn rels(mut self, texts: &[&str], citation: &str) -> Self {
        for t in texts {
            self.pending.push(((*t).into(), citation.into()));
        }
        self
    }

    /// `x` commutes with each of `others`.
    pub fn commute(mut self, x: &str, others: &[&str], citation: &str) -> Self {
        self.commuting
            .push((x.into(), others.iter().map(|s| s.to_string()).collect(), citation.into()));
        self
    }

    /// `x` commutes with every other generator.
    pub fn central(mut self, x: &str, citation: &str) -> Self {
        let others: Vec<String> = self.sig.gens.iter().map(|g| g.name.clone()).filter(|n| n != x).collect();
        self.commuting.push((x.into(), others, citation.into()));
        self
    }

    /// Pairs within the group carry no relation.
    pub fn frozen(mut self, names: &[&str]) -> Self {
        self.frozen.push(names.iter().map(|s| s.to_string()).collect());
        self
    }

    pub fn side_relation(mut self, first: &str, last: &str, replacement: &str, citation: &str) -> Self {
        self.side = Some((first.into(), last.into(), replacement.into(), citation.into()));
        self
    }

    /// `d(gen) = image`.
    pub fn d(mut self, gen: &str, image: &str) -> Self {
        self.dmap.push((gen.into(), image.into()));
        self
    }

    /// The map given by [`PresetBuilder::d`] preserves degree (a time derivative).
    pub fn degree_preserving_d(mut self) -> Self {
        self.d_shift = 0;
        self
    }

    pub fn allow_gaps(mut self) -> Self {
        self.allow_gaps = true;
        self
    }

    pub fn operator_algebra(mut self) -> Self {
        self.operator = true;
        self
    }

    pub fn note(mut self, text: &str) -> Self {
        self.notes.push(text.into());
        self
    }

    pub fn build(self) -> Result<Preset, AlgebraError> {
        let n = self.sig.len();
        let name = self.name.clone();
        let bad = |msg: String| AlgebraError::BadPreset { preset: name.clone(), msg };
        let parse = |t: &str| {
            crate::expr_io::parse_raw(t, &self.sig).map_err(|e| bad(format!("`{t}`: {e}")))
        };
        let mut table: Vec<Option<Pair>> = vec![None; n * n];
        let mut rules: Vec<Rule> = Vec::new();

        let mut install = |rule: Rule, table: &mut Vec<Option<Pair>>| -> Result<(), AlgebraError> {
            let slot = &mut table[rule.hi as usize * n + rule.lo as usize];
            if slot.is_some() {
                return Err(bad(format!(
                    "pair {}·{} covered twice (`{}`)",
                    self.sig.name(rule.hi),
                    self.sig.name(rule.lo),
                    rule.text
                )));
            }
            *slot = Some(Pair::Swap(rules.len()));
            rules.push(rule);
            Ok(())
        };

        for (text, cite) in &self.pending {
            let (l, r) = text
                .split_once('=')
                .ok_or_else(|| bad(format!("relation `{text}` has no `=`")))?;
            let rel = parse(l)?.sub(&parse(r)?);
            let rule = orient(&self.sig, &rel, text, cite).map_err(bad)?;
            install(rule, &mut table)?;
        }
        for (x, others, cite) in &self.commuting {
            let gx = self.sig.id(x).ok_or_else(|| bad(format!("unknown generator {x}")))?;
            for o in others {
                let go = self.sig.id(o).ok_or_else(|| bad(format!("unknown generator {o}")))?;
                let (hi, lo) = if gx > go { (gx, go) } else { (go, gx) };
                if table[hi as usize * n + lo as usize].is_some() {
                    continue;
                }
                let sign = if self.sig.gen(hi).degree == 1 && self.sig.gen(lo).degree == 1 { -1 } else { 1 };
                let text = format!("{}*{} = {}{}*{}", self.sig.name(hi), self.sig.name(lo),
                    if sign < 0 { "-" } else { "" }, self.sig.name(lo), self.sig.name(hi));
                let rule = make_rule(&self.sig, hi, lo, QScalar::int(sign), NCPoly::zero(), &text, cite);
                install(rule, &mut table)?;
            }
        }
        for group in &self.frozen {
            let ids: Vec<GenId> = group
                .iter()
                .map(|g| self.sig.id(g).ok_or_else(|| bad(format!("unknown generator {g}"))))
                .collect::<Result<_, _>>()?;
            for &a in &ids {
                for &b in &ids {
                    if a > b {
                        let slot = &mut table[a as usize * n + b as usize];
                        if slot.is_some() {
                            return Err(bad(format!("opaque pair {}·{} also has a rule", self.sig.name(a), self.sig.name(b))));
                        }
                        *slot = Some(Pair::Frozen);
                    }
                }
            }
        }
        for hi in 0..n {
            for lo in 0..hi {
                let slot = &mut table[hi * n + lo];
                if slot.is_none() {
                    if self.allow_gaps {
                        *slot = Some(Pair::Gap);
                    } else {
                        return Err(bad(format!(
                            "no rule for {}·{}",
                            self.sig.name(hi as GenId),
                            self.sig.name(lo as GenId)
                        )));
                    }
                }
            }
        }
        let side = match &self.side {
            None => None,
            Some((f, l, rep, cite)) => {
                let first = self.sig.id(f).ok_or_else(|| bad(format!("unknown generator {f}")))?;
                let last = self.sig.id(l).ok_or_else(|| bad(format!("unknown generator {l}")))?;
                Some(SideRelation {
                    first,
                    last,
                    replacement: parse(rep)?,
                    text: format!("{f}*{l} = {rep}"),
                    citation: cite.clone(),
                })
            }
        };
        let mut dmap = vec![None; n];
        for (g, img) in &self.dmap {
            let id = self.sig.id(g).ok_or_else(|| bad(format!("unknown generator {g}")))?;
            let p = parse(img)?;
            for (w, _) in p.terms() {
                let want = self.sig.gen(id).degree as usize + self.d_shift;
                if self.sig.word_degree(w) != want {
                    return Err(bad(format!("d({g}) = {img} is not of degree {want}")));
                }
            }
            dmap[id as usize] = Some(p);
        }
        let preset = Preset {
            name: self.name.clone(),
            description: self.description.clone(),
            sig: self.sig.clone(),
            table,
            rules,
            side,
            dmap,
            operator: self.operator,
            notes: self.notes.clone(),
            guard: self.guard,
        };
        // Termination audit: every right-hand side must normalize within the guard.
        for r in &preset.rules {
            preset
                .normal_order(&r.pp)
                .map_err(|e| bad(format!("rule `{}` does not normalize: {e}", r.text)))?;
        }
        Ok(preset)
    }
}

fn make_rule(sig: &Signature, hi: GenId, lo: GenId, coef: QScalar, tail: NCPoly, text: &str, cite: &str) -> Rule {
    let vu = Word::from_runs(&[(lo, 1), (hi, 1)]);
    let mut pp = NCPoly::term(vu, coef.clone());
    pp.add_assign(&tail);
    let cinv = coef.inv().expect("rule coefficient must be nonzero");
    let v = Word::letter(lo, 1);
    let u = Word::letter(hi, 1);
    let vi = Word::letter(lo, -1);
    let ui = Word::letter(hi, -1);
    // u·v⁻¹ = c⁻¹ v⁻¹u − c⁻¹ v⁻¹ T v⁻¹
    let pm = sig.gen(lo).invertible.then(|| {
        let mut p = NCPoly::term(vi.concat(&u), cinv.clone());
        p = p.sub(&NCPoly::word(vi.clone()).mul_raw(&tail).mul_raw(&NCPoly::word(vi.clone())).scale(&cinv));
        p
    });
    // u⁻¹·v = c⁻¹ v u⁻¹ − c⁻¹ u⁻¹ T u⁻¹
    let mp = sig.gen(hi).invertible.then(|| {
        let mut p = NCPoly::term(v.concat(&ui), cinv.clone());
        p = p.sub(&NCPoly::word(ui.clone()).mul_raw(&tail).mul_raw(&NCPoly::word(ui.clone())).scale(&cinv));
        p
    });
    Rule {
        hi,
        lo,
        coef,
        tail,
        text: text.into(),
        citation: cite.into(),
        pp,
        pm,
        mp,
    }
}

/// Turns `rel = 0` into `hi·lo → c·lo·hi + T`.
fn orient(sig: &Signature, rel: &NCPoly, text: &str, cite: &str) -> Result<Rule, String> {
    let candidates: Vec<(GenId, GenId, QScalar)> = rel
        .terms()
        .filter_map(|(w, c)| match w.runs() {
            [(u, 1), (v, 1)] if u > v => Some((*u, *v, c.clone())),
            _ => None,
        })
        .collect();
    let (hi, lo, k) = match candidates.as_slice() {
        [one] => one.clone(),
        [] => return Err(format!("relation `{text}` has no out-of-order pair")),
        _ => return Err(format!("relation `{text}` has several out-of-order pairs")),
    };
    let lhs = Word::from_runs(&[(hi, 1), (lo, 1)]);
    // hi·lo = −(rel − k·hi·lo)/k
    let rest = rel.filter(|w| *w != lhs).scale(&(-QScalar::one() / k));
    let vu = Word::from_runs(&[(lo, 1), (hi, 1)]);
    let coef = rest.coeff(&vu);
    if coef.is_zero() {
        return Err(format!("relation `{text}` lacks the swapped word"));
    }
    let tail = rest.filter(|w| *w != vu);
    let degree = sig.word_degree(&lhs);
    for (w, _) in tail.terms() {
        if sig.word_degree(w) != degree {
            return Err(format!("relation `{text}` mixes form degrees"));
        }
    }
    Ok(make_rule(sig, hi, lo, coef, tail, text, cite))
}
