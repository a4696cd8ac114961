//! The compiled-in preset catalogue.
//!
//! Every rule is stored as the relation text it was transcribed from together
//! with a citation label; `qcalc dump preset NAME` prints the table for audit.
//! Generator order follows the convention: parameters, then `tau`, then
//! differentials in parameter order, then 1-forms, then `R`-parameters, dotted
//! symbols and derivative symbols.

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use crate::algebra::{Preset, PresetBuilder};
use crate::error::{AlgebraError, LoadError};

const GL_RELS: [&str; 6] = [
    "a*b = q*b*a",
    "b*d = q*d*b",
    "b*c = c*b",
    "a*c = q*c*a",
    "c*d = q*d*c",
    "a*d = d*a + (q - q^-1)*b*c",
];
const GL_CITE: &str = "GL_q(2) relations: ab = qba, ..., ad - da = (q - 1/q)bc";

/// Form–parameter relations of the three-dimensional calculus, written for
/// generators named `a b c d`.
const SL_FORM_PARAM: [&str; 12] = [
    "w1*a = q^-2*a*w1",
    "w2*a = q^-1*a*w2",
    "w3*a = q^-1*a*w3",
    "w1*d = q^2*d*w1",
    "w2*d = q*d*w2",
    "w3*d = q*d*w3",
    "w1*c = q^-2*c*w1",
    "w2*c = q^-1*c*w2",
    "w3*c = q^-1*c*w3",
    "w1*b = q^2*b*w1",
    "w2*b = q*b*w2",
    "w3*b = q*b*w3",
];
const SL_FORM_FORM: [&str; 3] = ["w1*w2 + q^4*w2*w1 = 0", "w1*w3 + q^-4*w3*w1 = 0", "w2*w3 + q^-2*w3*w2 = 0"];
const SL_CITE: &str = "SL_q(2) calculus: w1 a = q^-2 a w1, ... (with the a<->c, d<->b completion)";
const SL_FF_CITE: &str = "SL_q(2) form algebra: w1 w2 = -q^4 w2 w1, ...";

/// Structure equations dω = −ω∧ω of the three-dimensional calculus.
const SL_DW: [(&str, &str); 3] = [("w1", "-w2*w3"), ("w2", "-(w1*w2 - q^2*w2*w1)"), ("w3", "-(w3*w1 - q^2*w1*w3)")];

/// Parameter–differential relations of the Gauss-decomposed SL_q(2,R).
const GAUSS_D1: [&str; 4] = [
    "d_rho*rho = q^-2*rho*d_rho",
    "d_fp*fp = q^-2*fp*d_fp + (q^4-1)*fp^3*d_fm",
    "d_fm*fm = q^2*fm*d_fm",
    "d_rho*fm = q*fm*d_rho",
];
const GAUSS_D2: [&str; 3] = ["d_fm*fp = q^2*fp*d_fm", "d_fp*fm = q^-2*fm*d_fp", "d_fm*rho = q^-1*rho*d_fm"];
const GAUSS_DD2: [&str; 2] = ["d_rho*d_fm = -q*d_fm*d_rho", "d_fm*d_fp = -q^2*d_fp*d_fm"];
const GAUSS_D3: [&str; 2] = [
    "d_fp*rho = q^-1*rho*d_fp - q*(q^2-1)*fp^2*rho*d_fm",
    "d_rho*fp = q*fp*d_rho - q^2*(q^2-1)*fp^2*rho*d_fm",
];
/// The two-form relation with the sign of the last term fixed: the printed
/// sign is incompatible with the Maurer–Cartan forms (see the `gauss` suite).
const GAUSS_DD3: &str = "d_rho*d_fp + q*d_fp*d_rho + q^3*(q^2-1)*fp^2*d_fm*d_rho + (q^4-1)/q^3*fp*rho*d_fm*d_fp = 0";
const GAUSS_PARAMS: [&str; 3] = ["rho*fm = q*fm*rho", "rho*fp = q*fp*rho", "fm*fp = q^2*fp*fm"];

const R_PARAMS: [&str; 3] = ["rho*R1 = q^2*R1*rho", "rho*R2 = q*R2*rho", "rho*R3 = q*R3*rho"];
const R_R: [&str; 3] = ["R1*R2 = q^4*R2*R1", "R3*R1 = q^4*R1*R3", "R3*R2 = q^2*R2*R3"];

/// Names of every preset, sorted.
pub fn names() -> Vec<&'static str> {
    catalogue().keys().copied().collect()
}

/// Looks up a preset by name.
pub fn get(name: &str) -> Result<Arc<Preset>, LoadError> {
    match catalogue().get(name) {
        Some(Ok(p)) => Ok(p.clone()),
        Some(Err(msg)) => Err(LoadError::Malformed {
            name: name.into(),
            msg: msg.clone(),
        }),
        None => Err(LoadError::UnknownPreset(name.into())),
    }
}

/// [`get`] for derivation code, where a missing preset is an internal error.
pub(crate) fn load(name: &str) -> Result<Arc<Preset>, AlgebraError> {
    get(name).map_err(|e| AlgebraError::Other(e.to_string()))
}

type Entry = Result<Arc<Preset>, String>;
type Builder = fn() -> Result<Preset, AlgebraError>;

fn catalogue() -> &'static BTreeMap<&'static str, Entry> {
    static CAT: OnceLock<BTreeMap<&'static str, Entry>> = OnceLock::new();
    CAT.get_or_init(|| {
        let builders: [(&'static str, Builder); 24] = [
            ("GLq2", gl_q2),
            ("GLq2_matched", gl_q2_matched),
            ("GLq2_d", gl_q2_d),
            ("SLq2_forms", sl_q2_forms),
            ("SLq2R_gauss", slr_gauss),
            ("SLq2R_forms", slr_forms),
            ("SLq2R_vf", slr_vf),
            ("SLq2R_var", slr_var),
            ("SLq2R_delta", slr_delta),
            ("SLq2R_sigma", slr_sigma),
            ("Cq_plane", cq_plane),
            ("Cq_gauss", cq_gauss),
            ("Cq_sigma1d", cq_sigma1d),
            ("Cq_series", cq_series),
            ("BL_forms", bl_forms),
            ("BU_forms", bu_forms),
            ("BL2_forms", bl2_forms),
            ("BU2_forms", bu2_forms),
            ("Tq_forms", tq_forms),
            ("Uq1_forms", uq1_forms),
            ("SUq2_forms", suq2_forms),
            ("Uq2_star", uq2_star),
            ("Z_minus", z_minus),
            ("Z_plus", z_plus),
        ];
        builders
            .into_iter()
            .map(|(n, f)| (n, f().map(Arc::new).map_err(|e| e.to_string())))
            .collect()
    })
}

fn gl_q2() -> Result<Preset, AlgebraError> {
    PresetBuilder::new("GLq2")
        .describe("GL_q(2) matrix elements with an invertible central determinant symbol Dq")
        .params(&["a", "b", "c", "d"])
        .inv_param("Dq")
        .alias("Dqi", "Dq", -1)
        .rels(&GL_RELS, GL_CITE)
        .central("Dq", "determinant is central")
        .build()
}

/// ω¹ and ω⁴ in the barred basis ω̄¹ = wb1, ω̄⁴ = wb4 of the matched calculus.
const W1: &str = "(wb1/2 + wb4)";
const W4: &str = "(wb1/2 - q^2*wb4)";

fn gl_matched_forms(b: PresetBuilder, with: &[&str]) -> PresetBuilder {
    // form–parameter table for whichever of a, b, c, d are present
    let table: [(&str, &str, &str); 12] = [
        ("wb4", "a", "q^-2"),
        ("wb4", "d", "q^2"),
        ("wb4", "c", "q^-2"),
        ("wb4", "b", "q^2"),
        ("w2", "a", "q^-1"),
        ("w2", "d", "q"),
        ("w2", "c", "q^-1"),
        ("w2", "b", "q"),
        ("w3", "a", "q^-1"),
        ("w3", "d", "q"),
        ("w3", "c", "q^-1"),
        ("w3", "b", "q"),
    ];
    let mut b = b.commute("wb1", with, "matched calculus: the trace form commutes with the matrix elements");
    for (f, p, c) in table {
        if with.contains(&p) && b_has(&b, f) {
            b = b.rel(&format!("{f}*{p} = {c}*{p}*{f}"), "matched calculus: w4bar a = q^-2 a w4bar, w2 a = q^-1 a w2, ...");
        }
    }
    b
}

fn b_has(b: &PresetBuilder, name: &str) -> bool {
    b.has_generator(name)
}

fn gl_q2_matched() -> Result<Preset, AlgebraError> {
    let b = PresetBuilder::new("GLq2_matched")
        .describe("matched left-covariant calculus on GL_q(2) in the barred form basis (wb1 = trace form)")
        .params(&["a", "b", "c", "d"])
        .inv_param("Dq")
        .alias("Dqi", "Dq", -1)
        .forms(&["wb1", "wb4", "w2", "w3"])
        .rels(&GL_RELS, GL_CITE)
        .central("Dq", "determinant is central, also with the 1-forms");
    let b = gl_matched_forms(b, &["a", "b", "c", "d"]);
    let ff = [
        "wb1*w2 + w2*wb1 = 0",
        "wb1*w3 + w3*wb1 = 0",
        "q^2*w2*wb4 + q^-2*wb4*w2 = 0",
        "q^2*wb4*w3 + q^-2*w3*wb4 = 0",
        "wb1*wb4 + wb4*wb1 = 0",
        "w2*w3 + q^-2*w3*w2 = 0",
    ];
    let dw1 = format!("-({W1}*{W1} + w2*w3)");
    let dw2 = format!("-({W1}*w2 + w2*{W4})");
    let dw3 = format!("-(w3*{W1} + {W4}*w3)");
    let dw4 = format!("-(w3*w2 + {W4}*{W4})");
    b.rels(&ff, "matched calculus form algebra: w1bar w2 = -w2 w1bar, ...")
        .d("a", &format!("a*{W1} + b*w3"))
        .d("b", &format!("a*w2 + b*{W4}"))
        .d("c", &format!("c*{W1} + d*w3"))
        .d("d", &format!("c*w2 + d*{W4}"))
        .d("Dq", "Dq*wb1")
        .d("wb1", &format!("2/(1+q^2)*(q^2*{dw1} + {dw4})"))
        .d("wb4", &format!("({dw1} - {dw4})/(1+q^2)"))
        .d("w2", &dw2)
        .d("w3", &dw3)
        .note("w1 = wb1/2 + wb4 and w4 = wb1/2 - q^2 wb4 (alpha, beta at their matched values)")
        .build()
}

/// The parameter–differential relations with the Maurer–Cartan trace `tau`.
pub const GL_D_BLOCK1: [&str; 8] = [
    "da*a = q^-2*a*da + (q^2-1)/(2*q^2)*a^2*tau",
    "dc*c = q^-2*c*dc + (q^2-1)/(2*q^2)*c^2*tau",
    "da*c = q^-1*c*da + (q^2-1)/(2*q^2)*a*c*tau",
    "dc*a = q^-1*a*dc + (q^-2 - 1)*c*da + (q^2-1)/(2*q^2)*c*a*tau",
    "db*b = q^2*b*db + (1-q^2)/2*b^2*tau",
    "dd*d = q^2*d*dd + (1-q^2)/2*d^2*tau",
    "db*d = q*d*db + (q^2-1)*b*dd + (1-q^2)/2*b*d*tau",
    "dd*b = q*b*dd + (1-q^2)/2*d*b*tau",
];
pub const GL_D_BLOCK2: [&str; 8] = [
    "da*b = q*b*da + (q^2-1)/q^2*Dqi*a*b*(q*c*db - a*dd) + (q^2-1)/(2*q^2)*a*b*tau",
    "da*d = d*da + (q-q^-1)*b*dc + (q^2-1)*Dqi*a*d*(d*da - q^-1*b*dc) - (q^2-1)/2*a*d*tau",
    "dc*b = b*dc + (q^2-1)*Dqi*c*b*(d*da - q^-1*b*dc) - (q^2-1)/2*c*b*tau",
    "dc*d = q*d*dc + (q^2-1)*Dqi*c*d*(d*da - q^-1*b*dc) - (q^2-1)/2*c*d*tau",
    "db*a = q^-1*a*db + (q^2-1)/q^2*Dqi*b*a*(q*c*db - a*dd) + (q^2-1)/(2*q^2)*b*a*tau",
    "db*c = c*db + (q^2-1)*Dqi*b*c*(d*da - q^-1*b*dc) - (q^2-1)/2*b*c*tau",
    "dd*a = a*dd - (q-q^-1)*c*db + (q^2-1)*Dqi*d*a*(d*da - q^-1*b*dc) - (q^2-1)/2*d*a*tau",
    "dd*c = q^-1*c*dd + (q^2-1)*Dqi*d*c*(d*da - q^-1*b*dc) - (q^2-1)/2*d*c*tau",
];

fn gl_q2_d() -> Result<Preset, AlgebraError> {
    PresetBuilder::new("GLq2_d")
        .describe("GL_q(2) parameters with their differentials and tau = Tr_q(omega); relations among 1-forms are left unspecified")
        .params(&["a", "b", "c", "d"])
        .inv_param("Dq")
        .alias("Dqi", "Dq", -1)
        .forms(&["tau", "da", "db", "dc", "dd"])
        .rels(&GL_RELS, GL_CITE)
        .central("Dq", "determinant is central")
        .commute("tau", &["a", "b", "c", "d"], "the trace form commutes with the matrix elements")
        .rels(&GL_D_BLOCK1, "parameter-differential relations, first block: da a = q^-2 a da + ...")
        .rels(&GL_D_BLOCK2, "parameter-differential relations, second block: da b = q b da + ...")
        .d("a", "da")
        .d("b", "db")
        .d("c", "dc")
        .d("d", "dd")
        .d("Dq", "Dq*tau")
        .allow_gaps()
        .build()
}

fn sl_q2_forms() -> Result<Preset, AlgebraError> {
    let mut b = PresetBuilder::new("SLq2_forms")
        .describe("three-dimensional left-covariant calculus on SL_q(2)")
        .params(&["a", "b", "c", "d"])
        .forms(&["w1", "w2", "w3"])
        .rels(&GL_RELS, GL_CITE)
        .side_relation("a", "d", "1 + q*b*c", "unimodularity: ad - qbc = 1")
        .rels(&SL_FORM_PARAM, SL_CITE)
        .rels(&SL_FORM_FORM, SL_FF_CITE)
        .d("a", "a*w1 + b*w3")
        .d("b", "a*w2 - q^2*b*w1")
        .d("c", "c*w1 + d*w3")
        .d("d", "c*w2 - q^2*d*w1");
    for (g, img) in SL_DW {
        b = b.d(g, img);
    }
    b.build()
}

fn slr_gauss() -> Result<Preset, AlgebraError> {
    PresetBuilder::new("SLq2R_gauss")
        .describe("Gauss parameters rho, phi- (fm), phi+ (fp) of SL_q(2,R) and their differentials")
        .inv_param("rho")
        .params(&["fm", "fp"])
        .forms(&["d_rho", "d_fm", "d_fp"])
        .rels(&GAUSS_PARAMS, "Gauss parameters: rho phi- = q phi- rho, ...")
        .rels(&GAUSS_D1, "Gauss calculus, diagonal block: d_rho rho = q^-2 rho d_rho, ...")
        .rels(&GAUSS_D2, "Gauss calculus, mixed block: d_fm fp = q^2 fp d_fm, ...")
        .rels(&GAUSS_DD2, "Gauss calculus, differentials: d_rho d_fm = -q d_fm d_rho, ...")
        .rels(&GAUSS_D3, "Gauss calculus, inhomogeneous block: d_fp rho = q^-1 rho d_fp - ...")
        .rel(GAUSS_DD3, "Gauss calculus, differentials: d_rho d_fp + q d_fp d_rho + ... = 0 (sign of the last term corrected)")
        .d("rho", "d_rho")
        .d("fm", "d_fm")
        .d("fp", "d_fp")
        .d("d_rho", "0")
        .d("d_fm", "0")
        .d("d_fp", "0")
        .build()
}

fn slr_forms() -> Result<Preset, AlgebraError> {
    let mut b = PresetBuilder::new("SLq2R_forms")
        .describe("Gauss parameters with the left-invariant forms w1, w2, w3")
        .inv_param("rho")
        .params(&["fm", "fp"])
        .forms(&["w1", "w2", "w3"])
        .rels(&GAUSS_PARAMS, "Gauss parameters: rho phi- = q phi- rho, ...")
        .rels(
            &["w1*rho = q^-2*rho*w1", "w2*rho = q^-1*rho*w2", "w3*rho = q^-1*rho*w3"],
            "forms on the Gauss parameters: w1 rho = q^-2 rho w1, ...",
        )
        .commute("fm", &["w1", "w2", "w3"], "forms commute with phi-")
        .commute("fp", &["w1", "w2", "w3"], "forms commute with phi+")
        .rels(&SL_FORM_FORM, SL_FF_CITE)
        .d("rho", "rho*w1 - fp*rho^3*w2")
        .d("fm", "q^-1*rho^2*w2")
        .d("fp", "q*rho^-2*w3 + q*fp^2*rho^2*w2");
    for (g, img) in SL_DW {
        b = b.d(g, img);
    }
    b.note("differentials obtained by inverting the Maurer-Cartan forms of the Gauss element")
        .build()
}

fn slr_vf() -> Result<Preset, AlgebraError> {
    PresetBuilder::new("SLq2R_vf")
        .describe("right-acting left vector fields nab1 (hatted), nab2, nab3 on SL_q(2,R) with the R-parameters")
        .params(&["nab1", "nab2", "nab3"])
        .inv_param("rho")
        .params(&["fm", "fp", "R1", "R2", "R3"])
        .rels(&GAUSS_PARAMS, "Gauss parameters: rho phi- = q phi- rho, ...")
        .rels(
            &[
                "rho*nab1 = q^-2*nab1*rho + rho",
                "rho*nab2 = q^-1*nab2*rho - fp*rho^3",
                "fm*nab2 = nab2*fm + q^-1*rho^2",
                "fp*nab2 = nab2*fp + q*fp^2*rho^2",
                "rho*nab3 = q^-1*nab3*rho",
                "fm*nab3 = nab3*fm",
                "fp*nab3 = nab3*fp + q*rho^-2",
            ],
            "vector fields on parameters: rho nab1 = q^-2 nab1 rho + rho, ...",
        )
        .commute("nab1", &["fm", "fp"], "nab1 commutes with phi-, phi+")
        .rels(
            &[
                "q^2*nab1*nab3 - q^-2*nab3*nab1 = (q^2+1)*nab3",
                "q^2*nab2*nab1 - q^-2*nab1*nab2 = (q^2+1)*nab2",
                "nab3*nab2 - q^2*nab2*nab3 = nab1",
            ],
            "vector field algebra: q^2 nab1 nab3 - q^-2 nab3 nab1 = (q^2+1) nab3, ... (third relation with q^2, fixed by the operator action)",
        )
        .rels(&R_PARAMS, "R-parameters: rho R1 = q^2 R1 rho, ...")
        .commute("fm", &["R1", "R2", "R3"], "R-parameters commute with phi-")
        .commute("fp", &["R1", "R2", "R3"], "R-parameters commute with phi+")
        .rels(
            &[
                "R1*nab2 = q^-4*nab2*R1",
                "R2*nab1 = q^4*nab1*R2 + q^2*(q^4-1)*R2",
                "R1*nab3 = q^4*nab3*R1",
                "R3*nab1 = q^-4*nab1*R3 + (q^4-1)/q^4*R3",
                "R3*nab2 = nab2*R3",
                "R2*nab3 = nab3*R2",
            ],
            "vector fields on R-parameters: R1 nab2 = q^-4 nab2 R1, ...",
        )
        .rels(&R_R, "R-parameter algebra: R1 R2 = q^4 R2 R1, ...")
        .operator_algebra()
        .allow_gaps()
        .note("products are compositions of right-acting operators: f(XY) = (fX)Y")
        .build()
}

fn slr_var() -> Result<Preset, AlgebraError> {
    PresetBuilder::new("SLq2R_var")
        .describe("R-parameters of the variational calculus with time derivatives (suffix _t)")
        .inv_param("rho")
        .params(&["fm", "fp", "R1", "R2", "R3", "rho_t", "fm_t", "fp_t", "R1_t", "R2_t", "R3_t"])
        .rels(&GAUSS_PARAMS, "Gauss parameters: rho phi- = q phi- rho, ...")
        .rels(&R_PARAMS, "R-parameters: rho R1 = q^2 R1 rho, ...")
        .commute("fm", &["R1", "R2", "R3"], "R-parameters commute with phi-")
        .commute("fp", &["R1", "R2", "R3"], "R-parameters commute with phi+")
        .rels(&R_R, "R-parameter algebra: R1 R2 = q^4 R2 R1, ...")
        .rels(
            &[
                "rho_t*R1 = q^2*R1*rho_t",
                "rho_t*R1_t = q^2*R1_t*rho_t",
                "rho*R1_t = R1_t*rho",
                "rho_t*R2 = q*R2*rho_t",
                "rho_t*R2_t = q*R2_t*rho_t",
                "rho*R2_t = q*R2_t*rho",
                "rho_t*R3 = q*R3*rho_t",
                "rho_t*R3_t = q*R3_t*rho_t",
                "rho*R3_t = q*R3_t*rho",
            ],
            "dotted relations: rho_t R1 = q^2 R1 rho_t, ...",
        )
        .commute("fm_t", &["R1_t", "R2_t", "R3_t"], "dotted relations: phi-_t commutes with R_t")
        .commute("fp_t", &["R1_t", "R2_t", "R3_t"], "dotted relations: phi+_t commutes with R_t")
        .allow_gaps()
        .build()
}

fn slr_delta() -> Result<Preset, AlgebraError> {
    PresetBuilder::new("SLq2R_delta")
        .describe("Gauss parameters with opaque variation symbols del_x standing for x delta")
        .inv_param("rho")
        .params(&["fm", "fp", "del_rho", "del_fm", "del_fp"])
        .rels(&GAUSS_PARAMS, "Gauss parameters: rho phi- = q phi- rho, ...")
        .allow_gaps()
        .note("del_x is realized by the transformation table in the R-parameter preset")
        .build()
}

fn slr_sigma() -> Result<Preset, AlgebraError> {
    let mut b = PresetBuilder::new("SLq2R_sigma")
        .describe("Gauss parameters with world-sheet derivative symbols p0_x, p1_x of each parameter x")
        .inv_param("rho")
        .params(&["fm", "fp", "p0_rho", "p0_fm", "p0_fp", "p1_rho", "p1_fm", "p1_fp"])
        .rels(&GAUSS_PARAMS, "Gauss parameters: rho phi- = q phi- rho, ...");
    let one_forms: Vec<&str> = GAUSS_D1.iter().chain(&GAUSS_D2).chain(&GAUSS_D3).copied().collect();
    for mu in ["p0_", "p1_"] {
        for r in &one_forms {
            b = b.rel(&r.replace("d_", mu), "Gauss calculus with d replaced by a world-sheet derivative");
        }
    }
    b.frozen(&["p0_rho", "p0_fm", "p0_fp", "p1_rho", "p1_fm", "p1_fp"])
        .note("derivative symbols are mutually opaque")
        .build()
}

fn cq_plane() -> Result<Preset, AlgebraError> {
    PresetBuilder::new("Cq_plane")
        .describe("quantum plane C_q(2|0) with its differential calculus")
        .inv_param("x")
        .params(&["y"])
        .forms(&["dx", "dy"])
        .rel("x*y = q*y*x", "quantum plane: xy = qyx")
        .rels(
            &[
                "dy*y = q^-2*y*dy",
                "dx*x = q^-2*x*dx",
                "dx*y = q^-1*y*dx",
                "dy*x = q^-1*x*dy - (q^2-1)/q^2*y*dx",
            ],
            "quantum plane calculus: dy y = q^-2 y dy, ...",
        )
        .rel("dy*dx = -q*dx*dy", "quantum plane calculus: dx dy = -q^-1 dy dx")
        .d("x", "dx")
        .d("y", "dy")
        .d("dx", "0")
        .d("dy", "0")
        .build()
}

fn cq_gauss() -> Result<Preset, AlgebraError> {
    PresetBuilder::new("Cq_gauss")
        .describe("Gauss parameters rho, phi+ of the C_q(2|0) coset and their differentials")
        .inv_param("rho")
        .params(&["fp"])
        .forms(&["d_rho", "d_fp"])
        .rel("rho*fp = q*fp*rho", "coset parameters: rho phi+ = q phi+ rho")
        .rels(
            &[
                "d_rho*rho = q^-2*rho*d_rho",
                "d_fp*fp = q^-2*fp*d_fp",
                "d_rho*fp = q*fp*d_rho",
                "d_fp*rho = q^-1*rho*d_fp",
                "d_rho*d_fp + q*d_fp*d_rho = 0",
            ],
            "coset calculus: d_rho rho = q^-2 rho d_rho, ...",
        )
        .d("rho", "d_rho")
        .d("fp", "d_fp")
        .d("d_rho", "0")
        .d("d_fp", "0")
        .build()
}

fn cq_sigma1d() -> Result<Preset, AlgebraError> {
    PresetBuilder::new("Cq_sigma1d")
        .describe("one-dimensional C_q(2|0) model: rho, phi+ with time derivatives")
        .inv_param("rho")
        .params(&["fp", "rho_t", "fp_t", "rho_tt"])
        .rel("rho*fp = q*fp*rho", "coset parameters: rho phi+ = q phi+ rho")
        .rels(
            &[
                "rho_t*rho = q^-2*rho*rho_t",
                "rho_t*fp = q*fp*rho_t",
                "fp_t*fp = q^-2*fp*fp_t",
                "fp_t*rho = q^-1*rho*fp_t",
            ],
            "coset calculus with d replaced by the time derivative",
        )
        .frozen(&["rho_t", "fp_t"])
        .d("rho", "rho_t")
        .d("fp", "fp_t")
        .d("rho_t", "rho_tt")
        .degree_preserving_d()
        .allow_gaps()
        .build()
}

fn cq_series() -> Result<Preset, AlgebraError> {
    PresetBuilder::new("Cq_series")
        .describe("coefficients of the series solution of the C_q(2|0) model")
        .inv_param("alpha")
        .params(&["beta"])
        .rel("alpha*beta = q^2*beta*alpha", "series coefficients: alpha beta = q^2 beta alpha")
        .build()
}

fn bl_forms() -> Result<Preset, AlgebraError> {
    PresetBuilder::new("BL_forms")
        .describe("lower Borel subgroup of SL_q(2): a = x, c = y, d = x^-1 with forms w1, w3")
        .inv_param("x")
        .params(&["y"])
        .forms(&["w1", "w3"])
        .rel("x*y = q*y*x", "lower Borel: xy = qyx")
        .rels(
            &["w1*x = q^-2*x*w1", "w3*x = q^-1*x*w3", "w1*y = q^-2*y*w1", "w3*y = q^-1*y*w3"],
            SL_CITE,
        )
        .rel("w1*w3 + q^-4*w3*w1 = 0", SL_FF_CITE)
        .d("x", "x*w1")
        .d("y", "y*w1 + x^-1*w3")
        .d("w1", "0")
        .d("w3", "-(w3*w1 - q^2*w1*w3)")
        .build()
}

fn bu_forms() -> Result<Preset, AlgebraError> {
    PresetBuilder::new("BU_forms")
        .describe("upper Borel subgroup of SL_q(2): a = x^-1, b = y, d = x with forms w1, w2")
        .params(&["y"])
        .inv_param("x")
        .forms(&["w1", "w2"])
        .rel("x*y = q^-1*y*x", "upper Borel: x^-1 y = q y x^-1")
        .rels(
            &["w1*x = q^2*x*w1", "w2*x = q*x*w2", "w1*y = q^2*y*w1", "w2*y = q*y*w2"],
            SL_CITE,
        )
        .rel("w1*w2 + q^4*w2*w1 = 0", SL_FF_CITE)
        .d("x", "-q^2*x*w1")
        .d("y", "x^-1*w2 - q^2*y*w1")
        .d("w1", "0")
        .d("w2", "-(w1*w2 - q^2*w2*w1)")
        .build()
}

fn bl2_forms() -> Result<Preset, AlgebraError> {
    let b = PresetBuilder::new("BL2_forms")
        .describe("lower Borel subgroup of GL_q(2) with the matched calculus (b = 0, w2 = 0)")
        .params(&["a", "c", "d"])
        .inv_param("Dq")
        .forms(&["wb1", "wb4", "w3"])
        .rels(&["a*c = q*c*a", "c*d = q*d*c", "a*d = d*a"], GL_CITE)
        .central("Dq", "determinant is central");
    gl_matched_forms(b, &["a", "c", "d"])
        .rels(
            &["wb1*w3 + w3*wb1 = 0", "q^2*wb4*w3 + q^-2*w3*wb4 = 0", "wb1*wb4 + wb4*wb1 = 0"],
            "matched calculus form algebra: w1bar w2 = -w2 w1bar, ...",
        )
        .d("a", &format!("a*{W1}"))
        .d("c", &format!("c*{W1} + d*w3"))
        .d("d", &format!("d*{W4}"))
        .d("Dq", "Dq*wb1")
        .d("wb1", "0")
        .d("wb4", "0")
        .d("w3", &format!("-(w3*{W1} + {W4}*w3)"))
        .build()
}

fn bu2_forms() -> Result<Preset, AlgebraError> {
    let b = PresetBuilder::new("BU2_forms")
        .describe("upper Borel subgroup of GL_q(2) with the matched calculus (c = 0, w3 = 0)")
        .params(&["a", "b", "d"])
        .inv_param("Dq")
        .forms(&["wb1", "wb4", "w2"])
        .rels(&["a*b = q*b*a", "b*d = q*d*b", "a*d = d*a"], GL_CITE)
        .central("Dq", "determinant is central");
    gl_matched_forms(b, &["a", "b", "d"])
        .rels(
            &["wb1*w2 + w2*wb1 = 0", "q^2*w2*wb4 + q^-2*wb4*w2 = 0", "wb1*wb4 + wb4*wb1 = 0"],
            "matched calculus form algebra: w1bar w2 = -w2 w1bar, ...",
        )
        .d("a", &format!("a*{W1}"))
        .d("b", &format!("a*w2 + b*{W4}"))
        .d("d", &format!("d*{W4}"))
        .d("Dq", "Dq*wb1")
        .d("wb1", "0")
        .d("wb4", "0")
        .d("w2", &format!("-({W1}*w2 + w2*{W4})"))
        .build()
}

fn tq_forms() -> Result<Preset, AlgebraError> {
    let b = PresetBuilder::new("Tq_forms")
        .describe("diagonal torus of GL_q(2) with the matched calculus")
        .params(&["a", "d"])
        .inv_param("Dq")
        .forms(&["wb1", "wb4"])
        .rel("a*d = d*a", GL_CITE)
        .central("Dq", "determinant is central");
    gl_matched_forms(b, &["a", "d"])
        .rel("wb1*wb4 + wb4*wb1 = 0", "matched calculus form algebra: w1bar w4bar = -w4bar w1bar")
        .d("a", &format!("a*{W1}"))
        .d("d", &format!("d*{W4}"))
        .d("Dq", "Dq*wb1")
        .d("wb1", "0")
        .d("wb4", "0")
        .build()
}

fn uq1_forms() -> Result<Preset, AlgebraError> {
    PresetBuilder::new("Uq1_forms")
        .describe("diagonal subgroup of SL_q(2): d = a^-1")
        .inv_param("a")
        .forms(&["w1"])
        .rel("w1*a = q^-2*a*w1", SL_CITE)
        .d("a", "a*w1")
        .d("w1", "0")
        .build()
}

fn suq2_forms() -> Result<Preset, AlgebraError> {
    let param_rels = [
        "a*c = q*c*a",
        "a*cs = q*cs*a",
        "c*cs = cs*c",
        "cs*as = q*as*cs",
        "c*as = q*as*c",
        "a*as = as*a - (q^2-1)*cs*c",
    ];
    let forms: Vec<String> = SL_FORM_PARAM
        .iter()
        .map(|r| r.replace("*d", "*as").replace("*b", "*cs").replace("d*", "as*").replace("b*", "cs*"))
        .collect();
    let forms: Vec<&str> = forms.iter().map(String::as_str).collect();
    let mut b = PresetBuilder::new("SUq2_forms")
        .describe("SU_q(2): b = -q c*, d = a* (cs = c*, as = a*) with the three-dimensional calculus")
        .params(&["a", "cs", "c", "as"])
        .forms(&["w1", "w2", "w3"])
        .rels(&param_rels, "unitary form: g = (a, -q c*; c, a*)")
        .side_relation("a", "as", "1 - q^2*cs*c", "unitarity: a a* + q^2 c c* = 1")
        .rels(&forms, SL_CITE)
        .rels(&SL_FORM_FORM, SL_FF_CITE)
        .d("a", "a*w1 - q*cs*w3")
        .d("cs", "-q^-1*a*w2 - q^2*cs*w1")
        .d("c", "c*w1 + as*w3")
        .d("as", "c*w2 - q^2*as*w1");
    for (g, img) in SL_DW {
        b = b.d(g, img);
    }
    b.note("star: a* = as, c* = cs, w1* = -w1, w2* = -w3, w3* = -w2, q* = q").build()
}

fn uq2_star() -> Result<Preset, AlgebraError> {
    PresetBuilder::new("Uq2_star")
        .describe("U_q(2): b = -q Dq c*, d = Dq a* with Dq Dq* = 1")
        .params(&["a", "cs", "c", "as"])
        .inv_param("Dq")
        .alias("Dqi", "Dq", -1)
        .rels(
            &[
                "a*c = q*c*a",
                "a*cs = q*cs*a",
                "c*cs = cs*c",
                "cs*as = q*as*cs",
                "c*as = q*as*c",
                "a*as = as*a - (q^2-1)*cs*c",
            ],
            "unitary form: g = (a, -q Dq c*; c, Dq a*)",
        )
        .central("Dq", "determinant is central")
        .side_relation("a", "as", "1 - q^2*cs*c", "unitarity: a a* + q^2 c c* = 1")
        .note("star: a* = as, c* = cs, Dq* = Dq^-1, q* = q")
        .build()
}

fn z_minus() -> Result<Preset, AlgebraError> {
    PresetBuilder::new("Z_minus")
        .describe("coset algebra with c central")
        .params(&["a", "b", "c", "d"])
        .rels(&["a*b = q*b*a", "b*d = q*d*b", "a*d = d*a + (q - q^-1)*b*c"], GL_CITE)
        .central("c", "matrix elements a, b, d commute with c")
        .build()
}

fn z_plus() -> Result<Preset, AlgebraError> {
    PresetBuilder::new("Z_plus")
        .describe("coset algebra with b central")
        .params(&["a", "b", "c", "d"])
        .rels(&["a*c = q*c*a", "c*d = q*d*c", "a*d = d*a + (q - q^-1)*b*c"], GL_CITE)
        .central("b", "matrix elements a, c, d commute with b")
        .build()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_preset_builds() {
        for n in names() {
            get(n).unwrap_or_else(|e| panic!("{e}"));
        }
        assert!(matches!(get("nope"), Err(LoadError::UnknownPreset(_))));
    }
}
