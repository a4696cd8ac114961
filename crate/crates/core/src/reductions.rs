//! Surjections onto subgroup calculi, star structures and the classical limit.

use std::collections::HashMap;
use std::sync::Arc;

use crate::algebra::{GenId, NCPoly, Preset, Word};
use crate::error::AlgebraError;
use crate::expr_io::{parse, print};
use crate::matrix::{antipode, mat_mul, QMatrix};
use crate::presets::{self, load};
use crate::report::Entry;
use crate::scalars::{IntPoly, QScalar};

/// A generator assignment from one preset onto another.
///
/// Generators not listed in `images` map to the generator of the same name.
/// `section` lists, for target generators that are not plain renamings,
/// a source expression `s(x)` with `π(s(x)) = x`; it drives the check that
/// every target relation is generated by the source relations.
#[derive(Clone, Debug)]
pub struct Surjection {
    pub name: &'static str,
    pub reference: &'static str,
    pub source: &'static str,
    pub target: &'static str,
    pub images: &'static [(&'static str, &'static str)],
    pub section: &'static [(&'static str, &'static str)],
}

/// The reductions of the matched GL_q(2) calculus and of SL_q(2).
pub const CATALOGUE: &[Surjection] = &[
    Surjection {
        name: "GLq2 -> B_L^(2): b = 0, w2 = 0",
        reference: "surjection pi(b) = 0, pi(w2) = 0, pi(nab2) = 0 onto the lower Borel subgroup",
        source: "GLq2_matched",
        target: "BL2_forms",
        images: &[("b", "0"), ("w2", "0")],
        section: &[],
    },
    Surjection {
        name: "GLq2 -> B_U^(2): c = 0, w3 = 0",
        reference: "surjection pi(c) = 0, pi(w3) = 0, pi(nab3) = 0 onto the upper Borel subgroup",
        source: "GLq2_matched",
        target: "BU2_forms",
        images: &[("c", "0"), ("w3", "0")],
        section: &[],
    },
    Surjection {
        name: "GLq2 -> T_q: b = c = 0, w2 = w3 = 0",
        reference: "surjection pi(b) = pi(c) = 0 onto the diagonal torus",
        source: "GLq2_matched",
        target: "Tq_forms",
        images: &[("b", "0"), ("c", "0"), ("w2", "0"), ("w3", "0")],
        section: &[],
    },
    Surjection {
        name: "GLq2 -> SLq2: Dq = 1, w1bar = Tr_q w = 0",
        reference: "SL_q(2) calculus from the matched one: D_q = 1, satisfied by vanishing w1bar = Tr_q w",
        source: "GLq2_matched",
        target: "SLq2_forms",
        images: &[("Dq", "1"), ("wb1", "0"), ("wb4", "w1")],
        section: &[("w1", "wb4")],
    },
    Surjection {
        name: "SLq2 -> B_L: a = x, c = y, d = x^-1, b = 0, w2 = 0",
        reference: "surjection SL_q(2) -> B_L with pi(b) = 0, pi(w2) = 0",
        source: "SLq2_forms",
        target: "BL_forms",
        images: &[("a", "x"), ("b", "0"), ("c", "y"), ("d", "x^-1"), ("w2", "0")],
        section: &[("x", "a"), ("y", "c")],
    },
    Surjection {
        name: "SLq2 -> B_U: a = x^-1, b = y, d = x, c = 0, w3 = 0",
        reference: "surjection SL_q(2) -> B_U with pi(c) = 0, pi(w3) = 0",
        source: "SLq2_forms",
        target: "BU_forms",
        images: &[("a", "x^-1"), ("b", "y"), ("c", "0"), ("d", "x"), ("w3", "0")],
        section: &[("x", "d"), ("y", "b")],
    },
    Surjection {
        name: "SLq2 -> U_q(1): b = c = 0, d = a^-1",
        reference: "diagonal subgroup of SL_q(2): b = c = 0",
        source: "SLq2_forms",
        target: "Uq1_forms",
        images: &[("b", "0"), ("c", "0"), ("d", "a^-1"), ("w2", "0"), ("w3", "0")],
        section: &[],
    },
    Surjection {
        name: "SLq2 -> SU_q(2): b = -q c*, d = a*",
        reference: "unitary form g = (a, -q c*; c, a*) with a a* + q^2 c c* = 1",
        source: "SLq2_forms",
        target: "SUq2_forms",
        images: &[("b", "-q*cs"), ("d", "as")],
        section: &[("cs", "-q^-1*b"), ("as", "d")],
    },
    Surjection {
        name: "C_q(2|0) plane -> B_L forms: dx = x w1, dy = y w1 + x^-1 w3",
        reference: "quantum plane calculus from the lower Borel reduction: w = (x^-1 dx, 0; x dy - q y dx, -q^2 x^-1 dx)",
        source: "Cq_plane",
        target: "BL_forms",
        images: &[("dx", "x*w1"), ("dy", "y*w1 + x^-1*w3")],
        section: &[("w1", "x^-1*dx"), ("w3", "x*dy - q*y*dx")],
    },
    Surjection {
        name: "SL_q(2,R) Gauss -> C_q(2|0) coset: phi- = 0",
        reference: "coset parameters rho, phi+ with phi- = 0",
        source: "SLq2R_gauss",
        target: "Cq_gauss",
        images: &[("fm", "0"), ("d_fm", "0")],
        section: &[],
    },
];

/// A compiled surjection.
pub struct SurjectionMap {
    pub surj: Surjection,
    pub source: Arc<Preset>,
    pub target: Arc<Preset>,
    images: HashMap<GenId, NCPoly>,
}

fn parse_in(text: &str, p: &Preset) -> Result<NCPoly, AlgebraError> {
    parse(text, p).map_err(|e| AlgebraError::Other(format!("`{text}` in {}: {e}", p.name)))
}

impl SurjectionMap {
    pub fn new(surj: &Surjection) -> Result<Self, AlgebraError> {
        Self::with_presets(surj, load(surj.source)?, load(surj.target)?)
    }

    pub fn with_presets(surj: &Surjection, source: Arc<Preset>, target: Arc<Preset>) -> Result<Self, AlgebraError> {
        let mut images = HashMap::new();
        for (i, g) in source.sig.gens.iter().enumerate() {
            let img = match surj.images.iter().find(|(n, _)| *n == g.name) {
                Some((_, t)) => parse_in(t, &target)?,
                None => NCPoly::gen(target.id(&g.name)?),
            };
            images.insert(i as GenId, img);
        }
        Ok(SurjectionMap { surj: surj.clone(), source, target, images })
    }

    pub fn apply(&self, p: &NCPoly) -> Result<NCPoly, AlgebraError> {
        let map = |g: GenId| self.images.get(&g).cloned();
        self.source.substitute(p, &map, &self.target)
    }

    /// `s(x)` for a target generator.
    fn section(&self, x: GenId) -> Result<NCPoly, AlgebraError> {
        let name = self.target.sig.name(x);
        match self.surj.section.iter().find(|(n, _)| *n == name) {
            Some((_, t)) => parse_in(t, &self.source),
            None => Ok(NCPoly::gen(self.source.id(name)?)),
        }
    }

    /// Images of the source relations that do not vanish in the target.
    pub fn inconsistencies(&self) -> Result<Vec<String>, AlgebraError> {
        let mut bad = Vec::new();
        let mut rels: Vec<(String, NCPoly)> = self.source.rules().iter().map(|r| (r.text.clone(), r.relation())).collect();
        if let Some(s) = self.source.side_relation() {
            let w = NCPoly::word(Word::from_runs(&[(s.first, 1), (s.last, 1)]));
            rels.push((s.text.clone(), w.sub(&s.replacement)));
        }
        for (text, rel) in rels {
            let img = self.apply(&rel)?;
            if !img.is_zero() {
                bad.push(format!("{text} -> {}", print(&self.target.sig, &img)));
            }
        }
        Ok(bad)
    }

    /// Target rules not reproduced from the source rules through the section.
    pub fn ungenerated(&self) -> Result<Vec<String>, AlgebraError> {
        let mut bad = Vec::new();
        for r in self.target.rules() {
            let reduced = self.target.without_rule(r.hi, r.lo);
            let prod = self.source.normal_order(&self.section(r.hi)?.mul_raw(&self.section(r.lo)?))?;
            let map = |g: GenId| self.images.get(&g).cloned();
            let lhs = self.source.substitute(&prod, &map, &reduced)?;
            let rhs_raw = NCPoly::word(Word::from_runs(&[(r.lo, 1), (r.hi, 1)])).scale(&r.coef).add(&r.tail);
            let rhs = reduced.normal_order(&rhs_raw)?;
            let diff = lhs.sub(&rhs);
            if !diff.is_zero() {
                bad.push(format!("{}: off by {}", r.text, print(&self.target.sig, &diff)));
            }
        }
        Ok(bad)
    }

    /// Generators on which `π∘d ≠ d∘π`.
    pub fn d_mismatches(&self) -> Result<Vec<String>, AlgebraError> {
        let mut bad = Vec::new();
        if !self.source.has_differential() || !self.target.has_differential() {
            return Ok(bad);
        }
        for (i, g) in self.source.sig.gens.iter().enumerate() {
            let x = NCPoly::gen(i as GenId);
            if self.source.differential(i as GenId).is_none() {
                continue;
            }
            let lhs = self.apply(&self.source.ext_d(&x)?)?;
            let rhs = self.target.ext_d(&self.apply(&x)?)?;
            if lhs != rhs {
                bad.push(format!("{}: {}", g.name, print(&self.target.sig, &lhs.sub(&rhs))));
            }
        }
        Ok(bad)
    }
}

/// Homomorphic image of `p` under the surjection.
pub fn apply_surjection(map: &SurjectionMap, p: &NCPoly) -> Result<NCPoly, AlgebraError> {
    map.apply(p)
}

/// Consistency, generation and compatibility with `d` for one surjection.
pub fn check_surjection(surj: &Surjection) -> Vec<Entry> {
    let map = match SurjectionMap::new(surj) {
        Ok(m) => m,
        Err(e) => return vec![Entry::error(surj.name, surj.reference, e)],
    };
    let mut out = Vec::new();
    let mut push = |what: &str, r: Result<Vec<String>, AlgebraError>| {
        let name = format!("{}: {what}", surj.name);
        out.push(match r {
            Ok(v) if v.is_empty() => Entry::pass(name, surj.reference),
            Ok(v) => Entry::fail(name, surj.reference, v.join("; ")),
            Err(e) => Entry::error(name, surj.reference, e),
        });
    };
    push("source relations map to zero", map.inconsistencies());
    push("target relations are generated", map.ungenerated());
    push("commutes with d", map.d_mismatches());
    out
}

/// Every catalogued surjection plus the identity and a deliberately wrong map.
pub fn surjection_entries() -> Vec<Entry> {
    let mut out: Vec<Entry> = CATALOGUE.iter().flat_map(check_surjection).collect();
    out.extend(check_surjection(&Surjection {
        name: "identity GLq2_matched -> GLq2_matched",
        reference: "identity map",
        source: "GLq2_matched",
        target: "GLq2_matched",
        images: &[],
        section: &[],
    }));
    let wrong = Surjection {
        name: "wrong map b = 1",
        reference: "negative control",
        source: "GLq2",
        target: "Z_plus",
        images: &[("b", "1")],
        section: &[],
    };
    let failed = check_surjection(&wrong).iter().any(Entry::is_fail);
    out.push(Entry::check(
        "negative control: b = 1 is rejected",
        "negative control",
        failed,
        "the map b = 1 passed the consistency check",
    ));
    out
}

// ---- star structures -------------------------------------------------------

/// How `q` behaves under the involution.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QConj {
    /// `q* = q`.
    Real,
    /// `|q| = 1`: `q* = 1/q`.
    Unimodular,
}

/// An antilinear, antimultiplicative involution given on generators.
pub struct StarStructure {
    pub name: &'static str,
    pub reference: &'static str,
    pub preset: Arc<Preset>,
    pub mode: QConj,
    images: HashMap<GenId, NCPoly>,
}

/// `f(q) ↦ f(1/q)`.
pub fn conj_unimodular(c: &QScalar) -> QScalar {
    let rev = |p: &IntPoly| -> (IntPoly, usize) {
        let mut v = p.coeffs().to_vec();
        v.reverse();
        (IntPoly::from_coeffs(v), p.degree().unwrap_or(0))
    };
    let (n, dn) = rev(c.numer());
    let (d, dd) = rev(c.denom());
    // f(1/q) = q^-dn n(q) / (q^-dd d(q))
    let s = QScalar::new(n, d).expect("nonzero denominator");
    &s * &QScalar::q_pow(dd as i64 - dn as i64)
}

impl StarStructure {
    pub fn new(
        name: &'static str,
        reference: &'static str,
        preset: Arc<Preset>,
        mode: QConj,
        images: &[(&str, &str)],
    ) -> Result<Self, AlgebraError> {
        let mut map = HashMap::new();
        for (g, t) in images {
            map.insert(preset.id(g)?, parse_in(t, &preset)?);
        }
        Ok(StarStructure { name, reference, preset, mode, images: map })
    }

    fn conj(&self, c: &QScalar) -> QScalar {
        match self.mode {
            QConj::Real => c.clone(),
            QConj::Unimodular => conj_unimodular(c),
        }
    }

    /// `(c·x₁…x_n)* = c̄·x_n*…x₁*`, normal-ordered; generators of odd degree
    /// pick up the graded sign `(−1)^{k(k−1)/2}` for `k` of them.
    pub fn apply(&self, p: &NCPoly) -> Result<NCPoly, AlgebraError> {
        let mut out = NCPoly::zero();
        for (w, c) in p.terms() {
            let rev = w.reversed();
            let mut acc = NCPoly::scalar(self.conj(c));
            for &(g, e) in rev.runs() {
                let img = self
                    .images
                    .get(&g)
                    .ok_or_else(|| AlgebraError::MissingImage(self.preset.sig.name(g).into()))?;
                let img = if e > 0 {
                    img.clone()
                } else {
                    let inv = crate::algebra::invert_monomial(img, &self.preset, self.preset.sig.name(g))?;
                    inv
                };
                for _ in 0..e.unsigned_abs() {
                    acc = acc.mul_raw(&img);
                }
            }
            let k = self.preset.degree(w);
            if (k * k.saturating_sub(1) / 2) % 2 == 1 {
                acc = acc.neg();
            }
            out.add_assign(&acc);
        }
        self.preset.normal_order(&out)
    }

    /// Involution on generators, every rule mapped to zero, and `d∘* = *∘d`
    /// on degree-0 generators when the preset has a calculus.
    pub fn check(&self) -> Vec<Entry> {
        let mut out = Vec::new();
        let sig = &self.preset.sig;
        let mut involution = Vec::new();
        let mut rules = Vec::new();
        let mut dcompat = Vec::new();
        let run = |involution: &mut Vec<String>, rules: &mut Vec<String>, dcompat: &mut Vec<String>| -> Result<(), AlgebraError> {
            for (i, g) in sig.gens.iter().enumerate() {
                let x = NCPoly::gen(i as GenId);
                let back = self.apply(&self.apply(&x)?)?;
                if back != x {
                    involution.push(format!("{}** = {}", g.name, print(sig, &back)));
                }
                if g.degree == 0 && self.preset.differential(i as GenId).is_some() {
                    let lhs = self.apply(&self.preset.ext_d(&x)?)?;
                    let rhs = self.preset.ext_d(&self.apply(&x)?)?;
                    if lhs != rhs {
                        dcompat.push(format!("{}: {}", g.name, print(sig, &lhs.sub(&rhs))));
                    }
                }
            }
            let mut rels: Vec<(String, NCPoly)> = self.preset.rules().iter().map(|r| (r.text.clone(), r.relation())).collect();
            if let Some(s) = self.preset.side_relation() {
                let w = NCPoly::word(Word::from_runs(&[(s.first, 1), (s.last, 1)]));
                rels.push((s.text.clone(), w.sub(&s.replacement)));
            }
            for (text, r) in rels {
                let img = self.apply(&r)?;
                if !img.is_zero() {
                    rules.push(format!("({text})* = {}", print(sig, &img)));
                }
            }
            Ok(())
        };
        if let Err(e) = run(&mut involution, &mut rules, &mut dcompat) {
            return vec![Entry::error(format!("{}: star", self.name), self.reference, e)];
        }
        for (what, v) in [
            ("involutive on generators", involution),
            ("relations are star-invariant", rules),
            ("commutes with d", dcompat),
        ] {
            out.push(Entry::check(format!("{}: {what}", self.name), self.reference, v.is_empty(), v.join("; ")));
        }
        out
    }
}

/// The catalogued star structures.
pub fn star_structures() -> Result<Vec<StarStructure>, AlgebraError> {
    Ok(vec![
        StarStructure::new(
            "SU_q(2) with forms",
            "g^+ = g^-1, w^+ = -w; a a* + q^2 c c* = 1",
            load("SUq2_forms")?,
            QConj::Real,
            &[
                ("a", "as"),
                ("as", "a"),
                ("c", "cs"),
                ("cs", "c"),
                ("w1", "-w1"),
                ("w2", "-w3"),
                ("w3", "-w2"),
            ],
        )?,
        StarStructure::new(
            "U_q(2)",
            "g = (a, -q D_q c*; c, D_q a*), D_q D_q* = 1",
            load("Uq2_star")?,
            QConj::Real,
            &[("a", "as"), ("as", "a"), ("c", "cs"), ("cs", "c"), ("Dq", "Dq^-1")],
        )?,
        StarStructure::new(
            "GL_q(2,R), |q| = 1",
            "hermitian generators with |q| = 1",
            load("GLq2")?,
            QConj::Unimodular,
            &[("a", "a"), ("b", "b"), ("c", "c"), ("d", "d"), ("Dq", "Dq")],
        )?,
        StarStructure::new(
            "SL_q(2,R) Gauss parameters, |q| = 1",
            "hermitian rho, phi-, phi+ with |q| = 1",
            load("SLq2R_gauss")?,
            QConj::Unimodular,
            &[
                ("rho", "rho"),
                ("fm", "fm"),
                ("fp", "fp"),
                ("d_rho", "d_rho"),
                ("d_fm", "d_fm"),
                ("d_fp", "d_fp"),
            ],
        )?,
    ])
}

pub fn apply_star(p: &NCPoly, s: &StarStructure) -> Result<NCPoly, AlgebraError> {
    s.apply(p)
}

/// Star-structure checks plus the matrix identities of the unitary form.
pub fn star_entries() -> Vec<Entry> {
    let mut out = Vec::new();
    match star_structures() {
        Ok(ss) => {
            for s in &ss {
                out.extend(s.check());
            }
        }
        Err(e) => out.push(Entry::error("star structures", "star structures", e)),
    }
    out.extend(unitarity_entries());
    out.push(sp_entry());
    out
}

/// `g g⁺ = 1` for the SU_q(2) matrix `g = (a, −q c*; c, a*)`.
fn unitarity_entries() -> Vec<Entry> {
    const REF: &str = "unitarity g^+ = g^-1: a a* + q^2 c c* = 1, a* a + c* c = 1";
    let run = || -> Result<Vec<Entry>, AlgebraError> {
        let su = load("SUq2_forms")?;
        let g = QMatrix::parse(su.clone(), ["a", "-q*cs", "c", "as"])?;
        // g⁺: transpose and star entry-wise
        let ss = star_structures()?;
        let star = &ss[0];
        let gp = QMatrix::new(
            su.clone(),
            [
                [star.apply(g.get(0, 0))?, star.apply(g.get(1, 0))?],
                [star.apply(g.get(0, 1))?, star.apply(g.get(1, 1))?],
            ],
        )?;
        let s = antipode(&g)?;
        let mut out = Vec::new();
        out.push(Entry::check(
            "SU_q(2): g^+ equals the antipode (d, -b/q; -q c, a)",
            REF,
            gp.entries() == s.entries(),
            format!("g^+ =\n{}S(g) =\n{}", gp.to_text(), s.to_text()),
        ));
        for (label, m) in [("g g^+ = 1", mat_mul(&g, &gp)?), ("g^+ g = 1", mat_mul(&gp, &g)?)] {
            out.push(Entry::check(format!("SU_q(2): {label}"), REF, m.is_identity(), m.to_text()));
        }
        Ok(out)
    };
    run().unwrap_or_else(|e| vec![Entry::error("SU_q(2) unitarity", REF, e)])
}

/// `Tᵗ J = J T⁻¹` for SL_q(2) with `J = q^{1/2} J₂ = (0, 1; −q, 0)`: the
/// condition is linear in `J`, so the half-integer powers scale out.
fn sp_entry() -> Entry {
    const REF: &str = "Sp_q(2): T^t J2 = J2 T^-1, J2 = (0, q^-1/2; -q^1/2, 0)";
    let run = || -> Result<bool, AlgebraError> {
        let sl = load("SLq2_forms")?;
        let t = QMatrix::parse(sl.clone(), ["a", "b", "c", "d"])?;
        let tt = QMatrix::parse(sl.clone(), ["a", "c", "b", "d"])?;
        let j = QMatrix::parse(sl.clone(), ["0", "1", "-q", "0"])?;
        let lhs = mat_mul(&tt, &j)?;
        let rhs = mat_mul(&j, &crate::matrix::mat_inv_sl(&t)?)?;
        Ok(lhs.entries() == rhs.entries())
    };
    match run() {
        Ok(ok) => Entry::check("Sp_q(2) coincides with SL_q(2)", REF, ok, "T^t J != J T^-1")
            .with_note("J2 rescaled by q^(1/2); T^-1 is the unimodular inverse (d, -b/q; -q c, a)"),
        Err(e) => Entry::error("Sp_q(2) coincides with SL_q(2)", REF, e),
    }
}

// ---- classical limit ---------------------------------------------------------

/// Coefficients at `q = 1`, normal-ordered under the classical rules.
pub fn classical_limit(p: &NCPoly, preset: &Preset) -> Result<NCPoly, AlgebraError> {
    let classical = preset.classical()?;
    let mut out = NCPoly::zero();
    for (w, c) in p.terms() {
        out.add_term(w.clone(), QScalar::from_rational(&c.limit_q1()?));
    }
    classical.normal_order(&out)
}

/// Every preset's rules at `q = 1` are (anti)commutation relations; operator
/// algebras may keep Lie-type tails in which one of the two letters has been
/// consumed (`[f, ∇] = ∇f`, `[∇, ∇'] = ∇''`).
pub fn classical_entries() -> Vec<Entry> {
    let mut out = Vec::new();
    for name in presets::names() {
        let label = format!("{name}: classical rules are (anti)commutative");
        let reference = "classical limit q -> 1 is the nondeformed differential calculus";
        let p = match presets::get(name) {
            Ok(p) => p,
            Err(e) => {
                out.push(Entry::error(label, reference, e));
                continue;
            }
        };
        let c = match p.classical() {
            Ok(c) => c,
            Err(e) => {
                out.push(Entry::error(label, reference, e));
                continue;
            }
        };
        let mut bad = Vec::new();
        for r in c.rules() {
            let dh = c.sig.gen(r.hi).degree;
            let dl = c.sig.gen(r.lo).degree;
            let sign = if dh == 1 && dl == 1 { -QScalar::one() } else { QScalar::one() };
            let tail_ok = r.tail.is_zero() || (p.operator && r.tail.terms().all(|(w, _)| !(w.contains(r.hi) && w.contains(r.lo))));
            if r.coef != sign || !tail_ok {
                bad.push(format!("{} -> coef {}, tail {}", r.text, r.coef, print(&c.sig, &r.tail)));
            }
        }
        out.push(Entry::check(label, reference, bad.is_empty(), bad.join("; ")));
    }
    out
}
