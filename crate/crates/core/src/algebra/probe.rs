//! Confluence probe: overlap ambiguities and random words normalized under
//! different reduction strategies must agree.

use rand::Rng;

use super::poly::NCPoly;
use super::preset::{Preset, Strategy};
use super::word::{GenId, Word};
use crate::error::AlgebraError;
use crate::scalars::QScalar;

/// A disagreement found by [`confluence_probe`].
#[derive(Clone, Debug)]
pub struct Ambiguity {
    pub word: String,
    pub difference: NCPoly,
}

/// Normalizes every overlap `u·v·w` (`u ≥ v ≥ w`, not all equal) plus
/// `samples` random words of length `len` with the leftmost, rightmost and a
/// seeded random strategy. Words hitting unspecified pairs are skipped.
pub fn confluence_probe(preset: &Preset, samples: usize, len: usize, seed: u64) -> Result<Vec<Ambiguity>, AlgebraError> {
    let n = preset.n() as GenId;
    let mut words = Vec::new();
    for u in 0..n {
        for v in 0..=u {
            for w in 0..=v {
                if u != w {
                    words.push(Word::from_runs(&[(u, 1), (v, 1), (w, 1)]));
                }
            }
        }
    }
    let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(seed);
    for _ in 0..samples {
        words.push(random_word(preset, &mut rng, len));
    }
    let mut out = Vec::new();
    for (i, w) in words.iter().enumerate() {
        let p = NCPoly::word(w.clone());
        let left = match preset.normal_order_with(&p, Strategy::Leftmost) {
            Ok(x) => x,
            Err(AlgebraError::RuleGap { .. }) | Err(AlgebraError::UnsupportedInverse { .. }) => continue,
            Err(e) => return Err(e),
        };
        for s in [Strategy::Rightmost, Strategy::Random(seed ^ i as u64)] {
            let other = match preset.normal_order_with(&p, s) {
                Ok(x) => x,
                Err(AlgebraError::RuleGap { .. }) | Err(AlgebraError::UnsupportedInverse { .. }) => break,
                Err(e) => return Err(e),
            };
            let diff = left.sub(&other);
            if !diff.is_zero() {
                out.push(Ambiguity {
                    word: preset.sig.word_text(w),
                    difference: diff,
                });
                break;
            }
        }
    }
    Ok(out)
}

/// A random word; invertible generators may appear with exponent −1.
pub fn random_word(preset: &Preset, rng: &mut impl Rng, len: usize) -> Word {
    let n = preset.n() as GenId;
    let mut w = Word::one();
    for _ in 0..len {
        let g = rng.gen_range(0..n);
        let e = if preset.sig.gen(g).invertible && rng.gen_bool(0.3) { -1 } else { 1 };
        w.push(g, e);
    }
    w
}

/// A random combination of `terms` random words with small integer coefficients.
pub fn random_poly(preset: &Preset, rng: &mut impl Rng, terms: usize, len: usize) -> NCPoly {
    let mut p = NCPoly::zero();
    for _ in 0..terms {
        let l = rng.gen_range(0..=len);
        let c = rng.gen_range(-3i64..=3);
        let k = rng.gen_range(-2i64..=2);
        let coef = &QScalar::int(c) * &QScalar::q_pow(k);
        p.add_term(random_word(preset, rng, l), coef);
    }
    p
}
