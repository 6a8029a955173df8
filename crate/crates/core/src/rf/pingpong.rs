//! Exhaustive check that alternating words in `z = x y⁻¹` and
//! `z′ = x^m z x^{-m}` stay away from the identity.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::word::{Alphabet, Word};

use super::{TriangleRep, FAIL_TOL};

#[derive(Debug, Clone)]
pub struct PingPongReport {
    pub max_syllables: usize,
    pub words_tested: usize,
    pub min_distance: f64,
    pub failures: Vec<Word>,
    /// Every word tested with its projective distance from the identity.
    pub samples: Vec<(Word, f64)>,
}

impl PingPongReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_csv(&self) -> String {
        let alpha = Alphabet::new(&["x", "y"]);
        let mut out = String::from("word,length,distance\n");
        for (w, d) in &self.samples {
            writeln!(out, "{},{},{d:.6e}", alpha.format(w), w.len()).unwrap();
        }
        out
    }
}

/// The word `s₁ s₂ … s_k` with syllables alternating between powers of
/// `z` and `z′`; `first_is_z` picks the first factor. Exponents must be
/// non-zero modulo `p`.
pub fn alternating_word(m: u32, p: u32, first_is_z: bool, exponents: &[u32]) -> Result<Word> {
    let z = Word::from_signed(&[1, -2]);
    let xm = Word::power_of(1, i64::from(m));
    let mut out = Word::empty();
    for (i, &e) in exponents.iter().enumerate() {
        if e % p == 0 {
            return Err(Error::Parameter(format!(
                "syllable exponent {e} is divisible by {p}"
            )));
        }
        let s = z.pow(i64::from(e));
        let is_z = (i % 2 == 0) == first_is_z;
        out = out.concat(&if is_z {
            s
        } else {
            xm.concat(&s).concat(&xm.inverse())
        });
    }
    Ok(out)
}

/// Every alternating word with at most `max_syllables` syllables and
/// exponents in `1..p`.
pub fn ping_pong_check(
    rep: &TriangleRep,
    m: u32,
    p: u32,
    max_syllables: usize,
) -> Result<PingPongReport> {
    if p < 2 {
        return Err(Error::Parameter(format!("p must be ≥ 2, got {p}")));
    }
    let mut samples = Vec::new();
    let mut exps = Vec::new();
    for k in 1..=max_syllables {
        exps.clear();
        exps.resize(k, 1u32);
        loop {
            for first_is_z in [true, false] {
                let w = alternating_word(m, p, first_is_z, &exps)?;
                let d = rep.distance(&w)?;
                samples.push((w, d));
            }
            // odometer over exponent tuples
            let mut i = 0;
            while i < k && exps[i] == p - 1 {
                exps[i] = 1;
                i += 1;
            }
            if i == k {
                break;
            }
            exps[i] += 1;
        }
    }
    let failures = samples
        .iter()
        .filter(|(_, d)| !(*d > FAIL_TOL))
        .map(|(w, _)| w.clone())
        .collect();
    let min_distance = samples
        .iter()
        .map(|(_, d)| *d)
        .fold(f64::INFINITY, f64::min);
    Ok(PingPongReport {
        max_syllables,
        words_tested: samples.len(),
        min_distance,
        failures,
        samples,
    })
}
