//! 2×2 matrices over a preset: products, quantum determinant and traces,
//! the unimodular inverse, Maurer–Cartan forms and left vector fields.

use std::fmt::Write as _;
use std::sync::Arc;

use crate::algebra::{GenId, NCPoly, Preset, Signature, Word};
use crate::error::AlgebraError;
use crate::expr_io::{parse, parse_raw, print};
use crate::presets;
use crate::report::Entry;
use crate::scalars::QScalar;

/// A 2×2 matrix whose entries are normal-ordered in `preset`.
#[derive(Clone, Debug)]
pub struct QMatrix {
    preset: Arc<Preset>,
    e: [[NCPoly; 2]; 2],
}

impl QMatrix {
    pub fn new(preset: Arc<Preset>, e: [[NCPoly; 2]; 2]) -> Result<Self, AlgebraError> {
        let [[a, b], [c, d]] = e;
        let n = |p: NCPoly| preset.normal_order(&p);
        let e = [[n(a)?, n(b)?], [n(c)?, n(d)?]];
        Ok(QMatrix { preset, e })
    }

    /// Entries given as expression text, row-major.
    pub fn parse(preset: Arc<Preset>, entries: [&str; 4]) -> Result<Self, AlgebraError> {
        let p = |t: &str| parse(t, &preset).map_err(|e| AlgebraError::Other(format!("`{t}`: {e}")));
        let e = [[p(entries[0])?, p(entries[1])?], [p(entries[2])?, p(entries[3])?]];
        Ok(QMatrix { preset, e })
    }

    pub fn identity(preset: Arc<Preset>) -> Self {
        QMatrix {
            preset,
            e: [[NCPoly::one(), NCPoly::zero()], [NCPoly::zero(), NCPoly::one()]],
        }
    }

    pub fn preset(&self) -> &Arc<Preset> {
        &self.preset
    }

    pub fn get(&self, i: usize, j: usize) -> &NCPoly {
        &self.e[i][j]
    }

    /// Entries in the order `(1,1), (1,2), (2,1), (2,2)`.
    pub fn entries(&self) -> [&NCPoly; 4] {
        [&self.e[0][0], &self.e[0][1], &self.e[1][0], &self.e[1][1]]
    }

    pub fn map(&self, mut f: impl FnMut(&NCPoly) -> Result<NCPoly, AlgebraError>) -> Result<QMatrix, AlgebraError> {
        let e = [[f(&self.e[0][0])?, f(&self.e[0][1])?], [f(&self.e[1][0])?, f(&self.e[1][1])?]];
        QMatrix::new(self.preset.clone(), e)
    }

    pub fn add(&self, other: &QMatrix) -> Result<QMatrix, AlgebraError> {
        same_preset(self, other)?;
        let mut e = self.e.clone();
        for (i, row) in e.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                *x = x.add(&other.e[i][j]);
            }
        }
        Ok(QMatrix { preset: self.preset.clone(), e })
    }

    pub fn is_zero(&self) -> bool {
        self.entries().iter().all(|p| p.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.e[0][0] == NCPoly::one() && self.e[1][1] == NCPoly::one() && self.e[0][1].is_zero() && self.e[1][0].is_zero()
    }

    /// Entry-wise exterior derivative.
    pub fn ext_d(&self) -> Result<QMatrix, AlgebraError> {
        self.map(|p| self.preset.ext_d(p))
    }

    pub fn to_text(&self) -> String {
        let sig = &self.preset.sig;
        let mut s = String::new();
        for (i, j) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            let _ = writeln!(s, "  [{}{}] {}", i + 1, j + 1, print(sig, &self.e[i][j]));
        }
        s
    }
}

fn same_preset(m: &QMatrix, n: &QMatrix) -> Result<(), AlgebraError> {
    if Arc::ptr_eq(&m.preset, &n.preset) || m.preset.name == n.preset.name {
        Ok(())
    } else {
        Err(AlgebraError::PresetMismatch(m.preset.name.clone(), n.preset.name.clone()))
    }
}

pub fn mat_mul(m: &QMatrix, n: &QMatrix) -> Result<QMatrix, AlgebraError> {
    same_preset(m, n)?;
    let mut e: [[NCPoly; 2]; 2] = Default::default();
    for (i, row) in e.iter_mut().enumerate() {
        for (j, x) in row.iter_mut().enumerate() {
            *x = m.e[i][0].mul_raw(&n.e[0][j]).add(&m.e[i][1].mul_raw(&n.e[1][j]));
        }
    }
    QMatrix::new(m.preset.clone(), e)
}

/// `ad − q bc`.
pub fn det_q(m: &QMatrix) -> Result<NCPoly, AlgebraError> {
    let [a, b, c, d] = m.entries();
    let p = a.mul_raw(d).sub(&b.mul_raw(c).scale(&QScalar::q()));
    m.preset.normal_order(&p)
}

/// `q² M₁₁ + M₂₂` (the convention of the SL calculus, where `ω⁴ = −q²ω¹`).
pub fn tr_q_sl(m: &QMatrix) -> NCPoly {
    m.e[0][0].scale(&QScalar::q_pow(2)).add(&m.e[1][1])
}

/// `(2/(q+1/q)) (q M₁₁ + q⁻¹ M₂₂)` (the trace fixed by `dD_q = D_q Tr_q ω`).
pub fn tr_q_gl(m: &QMatrix) -> NCPoly {
    let k = (&QScalar::int(2) / &(&QScalar::q() + &QScalar::q_pow(-1))).clone();
    m.e[0][0]
        .scale(&QScalar::q())
        .add(&m.e[1][1].scale(&QScalar::q_pow(-1)))
        .scale(&k)
}

/// `(d, −q⁻¹b; −qc, a)`, without any determinant check.
pub fn antipode(g: &QMatrix) -> Result<QMatrix, AlgebraError> {
    let [a, b, c, d] = g.entries();
    QMatrix::new(
        g.preset.clone(),
        [
            [d.clone(), b.scale(&-QScalar::q_pow(-1))],
            [c.scale(&-QScalar::q()), a.clone()],
        ],
    )
}

/// Inverse of a unimodular matrix: `(d, −q⁻¹b; −qc, a)`, checked on both sides.
pub fn mat_inv_sl(g: &QMatrix) -> Result<QMatrix, AlgebraError> {
    let det = det_q(g)?;
    if det != NCPoly::one() {
        return Err(AlgebraError::NotUnimodular(print(&g.preset.sig, &det)));
    }
    let inv = antipode(g)?;
    if !mat_mul(g, &inv)?.is_identity() || !mat_mul(&inv, g)?.is_identity() {
        return Err(AlgebraError::Other("g·S(g) ≠ 1 although det_q g = 1".into()));
    }
    Ok(inv)
}

/// `ω = g⁻¹ dg`.
pub fn maurer_cartan(g: &QMatrix) -> Result<QMatrix, AlgebraError> {
    mat_mul(&mat_inv_sl(g)?, &g.ext_d()?)
}

/// `dω + ω∧ω = 0`, entry by entry.
pub fn mc_check(name: &str, reference: &str, g: &QMatrix) -> Vec<Entry> {
    let run = || -> Result<QMatrix, AlgebraError> {
        let w = maurer_cartan(g)?;
        w.ext_d()?.add(&mat_mul(&w, &w)?)
    };
    match run() {
        Err(e) => vec![Entry::error(format!("{name}: Maurer-Cartan"), reference, e)],
        Ok(m) => [(0, 0), (0, 1), (1, 0), (1, 1)]
            .into_iter()
            .map(|(i, j)| {
                Entry::zero(
                    format!("{name}: (dw + w^w)[{}{}] = 0", i + 1, j + 1),
                    reference,
                    &g.preset.sig,
                    m.get(i, j),
                )
            })
            .collect(),
    }
}

// ---- the Gauss parametrization -------------------------------------------

/// `g = (1, φ₋; 0, 1)(1, 0; φ₊, 1)(ρ, 0; 0, ρ⁻¹)` as three factors.
pub fn gauss_factors(preset: Arc<Preset>) -> Result<[QMatrix; 3], AlgebraError> {
    Ok([
        QMatrix::parse(preset.clone(), ["1", "fm", "0", "1"])?,
        QMatrix::parse(preset.clone(), ["1", "0", "fp", "1"])?,
        QMatrix::parse(preset, ["rho", "0", "0", "rho^-1"])?,
    ])
}

/// The Gauss element of SL_q(2,R), multiplied out.
pub fn gauss_g(preset: Arc<Preset>) -> Result<QMatrix, AlgebraError> {
    let [a, b, c] = gauss_factors(preset)?;
    mat_mul(&mat_mul(&a, &b)?, &c)
}

/// The lower-triangular element `(x, 0; y, x⁻¹)` of the quantum plane.
pub fn plane_g(preset: Arc<Preset>) -> Result<QMatrix, AlgebraError> {
    QMatrix::parse(preset, ["x", "0", "y", "x^-1"])
}

/// Maurer–Cartan forms of the Gauss element in terms of differentials.
pub const GAUSS_OMEGA: [&str; 3] = [
    "rho^-1*d_rho + fp*d_fm",
    "q*rho^-2*d_fm",
    "q^-1*rho^2*d_fp - q^5*fp^2*rho^2*d_fm",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Basis {
    /// Differentials `d_x` → left-invariant forms `w_k`.
    ToOmega,
    /// Forms `w_k` → differentials.
    ToD,
}

/// Rewrites between the differential basis (`SLq2R_gauss`) and the form basis
/// (`SLq2R_forms`); parameters map to themselves.
pub fn form_basis_convert(p: &NCPoly, direction: Basis) -> Result<NCPoly, AlgebraError> {
    let gauss = presets::get("SLq2R_gauss").map_err(|e| AlgebraError::Other(e.to_string()))?;
    let forms = presets::get("SLq2R_forms").map_err(|e| AlgebraError::Other(e.to_string()))?;
    match direction {
        Basis::ToOmega => {
            let map = |g: GenId| -> Option<NCPoly> {
                let name = gauss.sig.name(g);
                match name.strip_prefix("d_") {
                    Some(x) => forms.differential(forms.id(x).ok()?).cloned(),
                    None => Some(forms.g(name)),
                }
            };
            gauss.substitute(p, &map, &forms)
        }
        Basis::ToD => {
            let omega: Vec<NCPoly> = GAUSS_OMEGA
                .iter()
                .map(|t| parse(t, &gauss).map_err(|e| AlgebraError::Other(e.to_string())))
                .collect::<Result<_, _>>()?;
            let map = |g: GenId| -> Option<NCPoly> {
                match forms.sig.name(g) {
                    "w1" => Some(omega[0].clone()),
                    "w2" => Some(omega[1].clone()),
                    "w3" => Some(omega[2].clone()),
                    name => Some(gauss.g(name)),
                }
            };
            forms.substitute(p, &map, &gauss)
        }
    }
}

/// Right coefficients of the 1-forms `forms` in a normal-ordered 1-form `p`
/// (forms sit to the right of parameters in normal order).
pub fn right_coefficients(preset: &Preset, p: &NCPoly, forms: &[GenId]) -> Result<Vec<NCPoly>, AlgebraError> {
    let mut out = vec![NCPoly::zero(); forms.len()];
    for (w, c) in p.terms() {
        let runs = w.runs();
        let Some(&(last, 1)) = runs.last() else {
            return Err(AlgebraError::Grading(format!("term `{}` is not a 1-form", preset.sig.word_text(w))));
        };
        let k = forms
            .iter()
            .position(|&f| f == last)
            .ok_or_else(|| AlgebraError::Grading(format!("term `{}` does not end in a basis form", preset.sig.word_text(w))))?;
        let head = Word::from_runs(&runs[..runs.len() - 1]);
        if preset.degree(&head) != 0 {
            return Err(AlgebraError::Grading(format!("term `{}` is not a 1-form", preset.sig.word_text(w))));
        }
        out[k].add_term(head, c.clone());
    }
    Ok(out)
}

/// `(f∇̂₁, f∇₂, f∇₃)` for a function `f` of the Gauss parameters, from
/// `df = (f∇_k) ω^k` with the forms moved to the right.
pub fn mc_gradient(f: &NCPoly) -> Result<[NCPoly; 3], AlgebraError> {
    let gauss = presets::get("SLq2R_gauss").map_err(|e| AlgebraError::Other(e.to_string()))?;
    let forms = presets::get("SLq2R_forms").map_err(|e| AlgebraError::Other(e.to_string()))?;
    let df = form_basis_convert(&gauss.ext_d(f)?, Basis::ToOmega)?;
    let ids = [forms.id("w1")?, forms.id("w2")?, forms.id("w3")?];
    let v = right_coefficients(&forms, &df, &ids)?;
    Ok([v[0].clone(), v[1].clone(), v[2].clone()])
}

// ---- vector fields as right-acting operators -------------------------------

/// Which group the vector fields live on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VfGroup {
    /// `SLq2R_forms`: `nab1` (the hatted field), `nab2`, `nab3` on ρ, φ₋, φ₊.
    SlR,
    /// `SLq2_forms`: `nab1..nab3` on a, b, c, d with `ad − qbc = 1`.
    Sl,
    /// `GLq2_matched`: `nab1..nab4` on a, b, c, d.
    Gl,
}

/// Left vector fields acting from the right: `f(XY) = (fX)Y`, a parameter
/// `x` acting as `f ↦ f·x`.
pub struct VectorFields {
    pub group: VfGroup,
    pub functions: Arc<Preset>,
    /// Operator signature: the parameters plus `nab1..nabN`.
    pub ops: Signature,
    nabs: Vec<GenId>,
    forms: Vec<GenId>,
}

impl VectorFields {
    pub fn new(group: VfGroup) -> Result<Self, AlgebraError> {
        let (name, n_nab) = match group {
            VfGroup::SlR => ("SLq2R_forms", 3),
            VfGroup::Sl => ("SLq2_forms", 3),
            VfGroup::Gl => ("GLq2_matched", 4),
        };
        let functions = presets::get(name).map_err(|e| AlgebraError::Other(e.to_string()))?;
        Self::with_preset(group, functions, n_nab)
    }

    /// Same, over an explicitly supplied (e.g. specialized) function preset.
    pub fn with_preset(group: VfGroup, functions: Arc<Preset>, n_nab: usize) -> Result<Self, AlgebraError> {
        let mut ops = Signature::default();
        let mut nabs = Vec::new();
        for k in 1..=n_nab {
            nabs.push(ops.add(&format!("nab{k}"), 0, false));
        }
        for g in &functions.sig.gens {
            if g.degree == 0 {
                ops.add(&g.name, 0, g.invertible);
            }
        }
        let form_names: &[&str] = match group {
            VfGroup::Gl => &["wb1", "wb4", "w2", "w3"],
            _ => &["w1", "w2", "w3"],
        };
        let forms = form_names.iter().map(|f| functions.id(f)).collect::<Result<_, _>>()?;
        Ok(VectorFields { group, functions, ops, nabs, forms })
    }

    /// `(f∇₁, …)`; for the GL group the barred components are converted back
    /// to `∇₁ = (2q²F̄₁ + F̄₄)/(1+q²)` and `∇₄ = (2F̄₁ − F̄₄)/(1+q²)`.
    pub fn gradient(&self, f: &NCPoly) -> Result<Vec<NCPoly>, AlgebraError> {
        let df = self.functions.ext_d(f)?;
        let v = right_coefficients(&self.functions, &df, &self.forms)?;
        if self.group != VfGroup::Gl {
            return Ok(v);
        }
        let s = (&QScalar::one() + &QScalar::q_pow(2)).inv()?;
        let two = QScalar::int(2);
        let n1 = v[0].scale(&(&two * &QScalar::q_pow(2))).add(&v[1]).scale(&s);
        let n4 = v[0].scale(&two).sub(&v[1]).scale(&s);
        Ok(vec![n1, v[2].clone(), v[3].clone(), n4])
    }

    /// Applies an operator polynomial (parsed over [`VectorFields::ops`]) to `f`.
    pub fn act(&self, op: &NCPoly, f: &NCPoly) -> Result<NCPoly, AlgebraError> {
        let mut out = NCPoly::zero();
        for (w, c) in op.terms() {
            let mut cur = f.clone();
            'word: for &(g, e) in w.runs() {
                for _ in 0..e.unsigned_abs() {
                    if cur.is_zero() {
                        break 'word;
                    }
                    cur = self.act_letter(g, e.signum(), &cur)?;
                }
            }
            out.add_assign(&cur.scale(c));
        }
        Ok(out)
    }

    fn act_letter(&self, g: GenId, sign: i32, f: &NCPoly) -> Result<NCPoly, AlgebraError> {
        if let Some(k) = self.nabs.iter().position(|&n| n == g) {
            return Ok(self.gradient(f)?.swap_remove(k));
        }
        let x = self.functions.id(self.ops.name(g))?;
        self.functions.mul(f, &NCPoly::word(Word::letter(x, sign)))
    }

    /// Normal-ordered monomials of total degree ≤ `k` in the parameters
    /// (invertible parameters also with negative powers).
    pub fn test_monomials(&self, k: usize) -> Result<Vec<NCPoly>, AlgebraError> {
        let params: Vec<(GenId, bool)> = self
            .functions
            .sig
            .gens
            .iter()
            .enumerate()
            .filter(|(_, g)| g.degree == 0 && g.name != "Dq")
            .map(|(i, g)| (i as GenId, g.invertible))
            .collect();
        let mut out: Vec<NCPoly> = Vec::new();
        let mut exps = vec![0i32; params.len()];
        fn rec(
            i: usize,
            left: i32,
            params: &[(GenId, bool)],
            exps: &mut Vec<i32>,
            out: &mut Vec<Vec<i32>>,
        ) {
            if i == params.len() {
                out.push(exps.clone());
                return;
            }
            let lo = if params[i].1 { -left } else { 0 };
            for e in lo..=left {
                exps[i] = e;
                rec(i + 1, left - e.abs(), params, exps, out);
            }
            exps[i] = 0;
        }
        let mut all = Vec::new();
        rec(0, k as i32, &params, &mut exps, &mut all);
        for ex in all {
            let mut w = Word::one();
            for (&(g, _), &e) in params.iter().zip(&ex) {
                if e != 0 {
                    w.push(g, e);
                }
            }
            let p = self.functions.normal_order(&NCPoly::word(w))?;
            if !p.is_zero() && !out.contains(&p) {
                out.push(p);
            }
        }
        Ok(out)
    }

    /// Checks the operator identity `lhs = rhs` on every test monomial of
    /// degree ≤ `max_degree`; the residual names the first failing function.
    pub fn check_identity(&self, lhs: &str, rhs: &str, max_degree: usize) -> Result<Option<String>, AlgebraError> {
        let p = |t: &str| parse_raw(t, &self.ops).map_err(|e| AlgebraError::Other(format!("`{t}`: {e}")));
        let op = p(lhs)?.sub(&p(rhs)?);
        for f in self.test_monomials(max_degree)? {
            let r = self.act(&op, &f)?;
            if !r.is_zero() {
                let sig = &self.functions.sig;
                return Ok(Some(format!("on f = {}: {}", print(sig, &f), print(sig, &r))));
            }
        }
        Ok(None)
    }
}

/// One vector-field identity, with the source's spelling and whether the
/// source's version is known to be off.
struct VfIdentity {
    name: &'static str,
    reference: &'static str,
    lhs: &'static str,
    rhs: &'static str,
    discrepancy: Option<&'static str>,
}

const SLR_VF: [VfIdentity; 4] = [
    VfIdentity {
        name: "q^2 nab1 nab3 - q^-2 nab3 nab1 = (q^2+1) nab3",
        reference: "SL_q(2,R) vector field algebra: q^2 nab1^ nab3 - q^-2 nab3 nab1^ = (q^2+1) nab3",
        lhs: "q^2*nab1*nab3 - q^-2*nab3*nab1",
        rhs: "(q^2+1)*nab3",
        discrepancy: None,
    },
    VfIdentity {
        name: "q^2 nab2 nab1 - q^-2 nab1 nab2 = (q^2+1) nab2",
        reference: "SL_q(2,R) vector field algebra: q^2 nab2 nab1^ - q^-2 nab1^ nab2 = (q^2+1) nab2",
        lhs: "q^2*nab2*nab1 - q^-2*nab1*nab2",
        rhs: "(q^2+1)*nab2",
        discrepancy: None,
    },
    VfIdentity {
        name: "nab3 nab2 - q^-2 nab2 nab3 = nab1 (as printed)",
        reference: "SL_q(2,R) vector field algebra: nab3 nab2 - (1/q^2) nab2 nab3 = nab1^",
        lhs: "nab3*nab2 - q^-2*nab2*nab3",
        rhs: "nab1",
        discrepancy: Some("the operator action gives nab3 nab2 - q^2 nab2 nab3 = nab1^, as in the SL_q(2) display"),
    },
    VfIdentity {
        name: "nab3 nab2 - q^2 nab2 nab3 = nab1 (corrected)",
        reference: "SL_q(2,R) vector field algebra, third relation with 1/q^2 -> q^2",
        lhs: "nab3*nab2 - q^2*nab2*nab3",
        rhs: "nab1",
        discrepancy: None,
    },
];

const SL_VF: [VfIdentity; 3] = [
    VfIdentity {
        name: "q^2 nab1 nab3 - q^-2 nab3 nab1 = (1+q^2) nab3",
        reference: "SL_q(2) vector field algebra: q^2 nab1 nab3 - q^-2 nab3 nab1 = (1+q^2) nab3",
        lhs: "q^2*nab1*nab3 - q^-2*nab3*nab1",
        rhs: "(1+q^2)*nab3",
        discrepancy: None,
    },
    VfIdentity {
        name: "q^2 nab2 nab1 - q^-2 nab1 nab2 = (1+q^2) nab2",
        reference: "SL_q(2) vector field algebra: q^2 nab2 nab1 - q^-2 nab1 nab2 = (1+q^2) nab2",
        lhs: "q^2*nab2*nab1 - q^-2*nab1*nab2",
        rhs: "(1+q^2)*nab2",
        discrepancy: None,
    },
    VfIdentity {
        name: "nab3 nab2 - q^2 nab2 nab3 = nab1",
        reference: "SL_q(2) vector field algebra: nab3 nab2 - q^2 nab2 nab3 = nab1",
        lhs: "nab3*nab2 - q^2*nab2*nab3",
        rhs: "nab1",
        discrepancy: None,
    },
];

const HAT: &str = "the relation holds with nab1^ = nab1 - q^2 nab4 and nab4^ = nab1 + nab4 (the barred-basis components)";

const GL_VF: [VfIdentity; 12] = [
    VfIdentity {
        name: "nab3 nab2 - q^2 nab2 nab3 = nab1 (as printed)",
        reference: "GL_q(2) vector field algebra: nab3 nab2 - q^2 nab2 nab3 = nab1",
        lhs: "nab3*nab2 - q^2*nab2*nab3",
        rhs: "nab1",
        discrepancy: Some(HAT),
    },
    VfIdentity {
        name: "nab3 nab2 - q^2 nab2 nab3 = nab1^ (reduced)",
        reference: "GL_q(2) vector field algebra, nab1 -> nab1^ = nab1 - q^2 nab4",
        lhs: "nab3*nab2 - q^2*nab2*nab3",
        rhs: "nab1 - q^2*nab4",
        discrepancy: None,
    },
    VfIdentity {
        name: "q^2 nab2 nab1 - q^-2 nab1 nab2 = (1+q^2) nab2 (as printed)",
        reference: "GL_q(2) vector field algebra: q^2 nab2 nab1 - q^-2 nab1 nab2 = (1+q^2) nab2",
        lhs: "q^2*nab2*nab1 - q^-2*nab1*nab2",
        rhs: "(1+q^2)*nab2",
        discrepancy: Some(HAT),
    },
    VfIdentity {
        name: "q^2 nab2 nab1^ - q^-2 nab1^ nab2 = (1+q^2) nab2 (reduced)",
        reference: "GL_q(2) vector field algebra, nab1 -> nab1^ = nab1 - q^2 nab4",
        lhs: "q^2*nab2*(nab1 - q^2*nab4) - q^-2*(nab1 - q^2*nab4)*nab2",
        rhs: "(1+q^2)*nab2",
        discrepancy: None,
    },
    VfIdentity {
        name: "q^2 nab1 nab3 - q^-2 nab3 nab1 = (1+q^2) nab3 (as printed)",
        reference: "GL_q(2) vector field algebra: q^2 nab1 nab3 - q^-2 nab3 nab1 = (1+q^2) nab3",
        lhs: "q^2*nab1*nab3 - q^-2*nab3*nab1",
        rhs: "(1+q^2)*nab3",
        discrepancy: Some(HAT),
    },
    VfIdentity {
        name: "q^2 nab1^ nab3 - q^-2 nab3 nab1^ = (1+q^2) nab3 (reduced)",
        reference: "GL_q(2) vector field algebra, nab1 -> nab1^ = nab1 - q^2 nab4",
        lhs: "q^2*(nab1 - q^2*nab4)*nab3 - q^-2*nab3*(nab1 - q^2*nab4)",
        rhs: "(1+q^2)*nab3",
        discrepancy: None,
    },
    VfIdentity {
        name: "[nab4, nab1] = 0",
        reference: "GL_q(2) vector field algebra: [nab4, nab_k] = 0",
        lhs: "nab4*nab1 - nab1*nab4",
        rhs: "0",
        discrepancy: None,
    },
    VfIdentity {
        name: "[nab4, nab2] = 0 (as printed)",
        reference: "GL_q(2) vector field algebra: [nab4, nab_k] = 0",
        lhs: "nab4*nab2 - nab2*nab4",
        rhs: "0",
        discrepancy: Some(HAT),
    },
    VfIdentity {
        name: "[nab4, nab3] = 0 (as printed)",
        reference: "GL_q(2) vector field algebra: [nab4, nab_k] = 0",
        lhs: "nab4*nab3 - nab3*nab4",
        rhs: "0",
        discrepancy: Some(HAT),
    },
    VfIdentity {
        name: "[nab4^, nab1] = 0 (reduced)",
        reference: "GL_q(2) vector field algebra, nab4 -> nab4^ = nab1 + nab4",
        lhs: "(nab1 + nab4)*nab1 - nab1*(nab1 + nab4)",
        rhs: "0",
        discrepancy: None,
    },
    VfIdentity {
        name: "[nab4^, nab2] = 0 (reduced)",
        reference: "GL_q(2) vector field algebra, nab4 -> nab4^ = nab1 + nab4",
        lhs: "(nab1 + nab4)*nab2 - nab2*(nab1 + nab4)",
        rhs: "0",
        discrepancy: None,
    },
    VfIdentity {
        name: "[nab4^, nab3] = 0 (reduced)",
        reference: "GL_q(2) vector field algebra, nab4 -> nab4^ = nab1 + nab4",
        lhs: "(nab1 + nab4)*nab3 - nab3*(nab1 + nab4)",
        rhs: "0",
        discrepancy: None,
    },
];

/// Acts with both sides of each vector-field relation on every test monomial
/// of degree ≤ `max_degree`.
pub fn verify_vf_algebra(group: VfGroup, max_degree: usize) -> Vec<Entry> {
    let (label, table): (&str, &[VfIdentity]) = match group {
        VfGroup::SlR => ("SLq2R", &SLR_VF),
        VfGroup::Sl => ("SLq2", &SL_VF),
        VfGroup::Gl => ("GLq2", &GL_VF),
    };
    let vf = match VectorFields::new(group) {
        Ok(v) => v,
        Err(e) => return vec![Entry::error(format!("{label}: vector fields"), "left vector fields", e)],
    };
    table
        .iter()
        .map(|id| {
            let name = format!("{label}: {}", id.name);
            let e = match vf.check_identity(id.lhs, id.rhs, max_degree) {
                Ok(None) => Entry::pass(name, id.reference),
                Ok(Some(r)) => Entry::fail(name, id.reference, r),
                Err(err) => Entry::error(name, id.reference, err),
            };
            match id.discrepancy {
                Some(why) => e.expect_discrepancy(why),
                None => e,
            }
        })
        .collect()
}

/// The inhomogeneous terms `φ₋∇₂ = ∇₂φ₋ + q⁻¹ρ²` and `φ₊∇₃ = ∇₃φ₊ + qρ⁻²`
/// read off as gradients of the coordinate functions.
pub fn gradient_entries() -> Vec<Entry> {
    let gauss = match presets::get("SLq2R_gauss") {
        Ok(p) => p,
        Err(e) => return vec![Entry::error("mc_gradient", "left vector fields", e)],
    };
    let forms = presets::get("SLq2R_forms").expect("catalogue preset");
    let cases: [(&str, [&str; 3]); 3] = [
        ("rho", ["rho", "-fp*rho^3", "0"]),
        ("fm", ["0", "q^-1*rho^2", "0"]),
        ("fp", ["0", "q*fp^2*rho^2", "q*rho^-2"]),
    ];
    let mut out = Vec::new();
    for (x, expected) in cases {
        let name = format!("gradient of {x}: ({}, {}, {})", expected[0], expected[1], expected[2]);
        let reference = "vector fields on parameters: phi- nab2 = nab2 phi- + (1/q) rho^2, phi+ nab3 = nab3 phi+ + q rho^-2, ...";
        let res = mc_gradient(&gauss.g(x)).and_then(|got| {
            let mut diff = NCPoly::zero();
            for (g, e) in got.iter().zip(expected) {
                let e = parse(e, &forms).map_err(|e| AlgebraError::Other(e.to_string()))?;
                diff.add_assign(&g.sub(&e));
            }
            Ok(diff)
        });
        out.push(match res {
            Ok(d) => Entry::zero(name, reference, &forms.sig, &d),
            Err(e) => Entry::error(name, reference, e),
        });
    }
    out
}
