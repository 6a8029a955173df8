//! Finite presentations, the Artin presentations used throughout, and
//! abelianization by Smith normal form.
//!
//! Text format:
//!
//! ```text
//! gens b x y
//! rel b.x^2.b^-1.x^-2
//! ```

mod snf;

use std::fmt;
use std::fmt::Write as _;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

pub use snf::{smith_normal_form, IntegerMatrix, SmithForm};

use crate::error::{Error, Result};
use crate::splitting::SplittingData;
use crate::word::{Alphabet, Letter, Word};

/// A Coxeter-style edge label: a finite integer ≥ 2 or ∞.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    Finite(u32),
    Infinite,
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Finite(k) => write!(f, "{k}"),
            Label::Infinite => write!(f, "inf"),
        }
    }
}

impl std::str::FromStr for Label {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "inf" | "infinity" | "∞" => Ok(Label::Infinite),
            _ => s
                .parse()
                .map(Label::Finite)
                .map_err(|_| Error::Parameter(format!("bad label `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    generator_names: Vec<String>,
    relators: Vec<Word>,
}

impl Presentation {
    /// Relators are stored cyclically reduced; trivial ones are dropped.
    pub fn new<S: AsRef<str>>(generator_names: &[S], relators: Vec<Word>) -> Result<Self> {
        let names: Vec<String> = generator_names
            .iter()
            .map(|s| s.as_ref().to_string())
            .collect();
        let rank = names.len() as u32;
        let mut rels = Vec::with_capacity(relators.len());
        for r in relators {
            r.check_rank(rank)?;
            let r = r.cyclically_reduced();
            if !r.is_empty() {
                rels.push(r);
            }
        }
        Ok(Presentation {
            generator_names: names,
            relators: rels,
        })
    }

    pub fn generator_names(&self) -> &[String] {
        &self.generator_names
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn rank(&self) -> u32 {
        self.generator_names.len() as u32
    }

    pub fn alphabet(&self) -> Alphabet {
        Alphabet::new(&self.generator_names)
    }

    /// Rows are relators, columns generators.
    pub fn relation_matrix(&self) -> IntegerMatrix {
        let cols = self.generator_names.len();
        let rows: Vec<Vec<i64>> = self
            .relators
            .iter()
            .map(|r| r.exponent_sums(self.rank()))
            .collect();
        if rows.is_empty() {
            IntegerMatrix::zeros(0, cols)
        } else {
            IntegerMatrix::from_rows(&rows).expect("rows have one entry per generator")
        }
    }

    pub fn to_text(&self) -> String {
        let alphabet = self.alphabet();
        let mut out = format!("gens {}\n", self.generator_names.join(" "));
        for r in &self.relators {
            writeln!(out, "rel {}", alphabet.format(r)).unwrap();
        }
        out
    }

    pub fn from_text(input: &str) -> Result<Self> {
        let mut names: Option<Vec<String>> = None;
        let mut rels = Vec::new();
        for (i, line) in input.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |message: String| Error::Parse {
                line: i + 1,
                message,
            };
            if let Some(rest) = line.strip_prefix("gens") {
                if names.is_some() {
                    return Err(err("duplicate `gens` line".into()));
                }
                names = Some(rest.split_whitespace().map(str::to_string).collect());
            } else if let Some(rest) = line.strip_prefix("rel ") {
                let alphabet = Alphabet::new(
                    names
                        .as_ref()
                        .ok_or_else(|| err("`rel` before `gens`".into()))?,
                );
                rels.push(alphabet.parse(rest).map_err(|e| err(e.to_string()))?);
            } else {
                return Err(err(format!("unrecognised line `{line}`")));
            }
        }
        let names = names.ok_or(Error::Parse {
            line: 1,
            message: "missing `gens` line".into(),
        })?;
        Presentation::new(&names, rels)
    }
}

/// Isomorphism type of a finitely generated abelian group,
/// `ℤ^free_rank ⊕ ℤ/t₁ ⊕ … ⊕ ℤ/t_k` with `t₁ | t₂ | …`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianInvariants {
    pub free_rank: usize,
    pub torsion: Vec<BigUint>,
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.free_rank > 0 {
            parts.push(format!("Z^{}", self.free_rank));
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

pub fn abelianization(p: &Presentation) -> AbelianInvariants {
    let snf = smith_normal_form(&p.relation_matrix());
    let torsion = snf
        .diagonal
        .iter()
        .filter(|d| !d.is_one())
        .map(|d| d.magnitude().clone())
        .collect();
    AbelianInvariants {
        free_rank: p.generator_names.len() - snf.rank(),
        torsion,
    }
}

/// The alternating word `uvuv…` with `k` letters.
pub fn alternating(u: Letter, v: Letter, k: u32) -> Word {
    (0..k).map(|i| if i % 2 == 0 { u } else { v }).collect()
}

/// `(u,v)_K (v,u)_K⁻¹`
pub fn artin_relator(u: Letter, v: Letter, k: u32) -> Word {
    alternating(u, v, k).concat(&alternating(v, u, k).inverse())
}

fn check_label(l: Label) -> Result<()> {
    match l {
        Label::Finite(k) if k < 2 => Err(Error::Parameter(format!("label {k} is below 2"))),
        _ => Ok(()),
    }
}

/// `⟨a,b,c | (a,b)_M = (b,a)_M, (b,c)_N = (c,b)_N, (c,a)_P = (a,c)_P⟩`,
/// skipping relators for infinite labels.
pub fn artin_standard(m: Label, n: Label, p: Label) -> Result<Presentation> {
    for l in [m, n, p] {
        check_label(l)?;
    }
    let (a, b, c) = (Letter::pos(1), Letter::pos(2), Letter::pos(3));
    let rels = [(a, b, m), (b, c, n), (c, a, p)]
        .into_iter()
        .filter_map(|(u, v, l)| match l {
            Label::Finite(k) => Some(artin_relator(u, v, k)),
            Label::Infinite => None,
        })
        .collect();
    Presentation::new(&["a", "b", "c"], rels)
}

/// The dihedral Artin group `⟨a,b | (a,b)_M = (b,a)_M⟩`.
pub fn artin_dihedral(m: u32) -> Result<Presentation> {
    check_label(Label::Finite(m))?;
    Presentation::new(
        &["a", "b"],
        vec![artin_relator(Letter::pos(1), Letter::pos(2), m)],
    )
}

/// `r_M(b, g)`: `b g^m b⁻¹ g^{-m}` for `M = 2m`, `b g^m b g^{-(m+1)}` for
/// `M = 2m+1`. Generator indices refer to the caller's alphabet.
pub fn r_relator(big_m: u32, b: u32, g: u32) -> Word {
    let m = i64::from(big_m / 2);
    let bw = Word::power_of(b, 1);
    let gm = Word::power_of(g, m);
    if big_m % 2 == 0 {
        bw.concat(&gm).concat(&bw.inverse()).concat(&gm.inverse())
    } else {
        bw.concat(&gm)
            .concat(&bw)
            .concat(&Word::power_of(g, -(m + 1)))
    }
}

/// `b x⁻¹ y b⁻¹ (y x⁻¹)⁻¹` in the alphabet `b, x, y`.
pub fn commutation_relator() -> Word {
    Word::from_signed(&[1, -2, 3, -1, 2, -3])
}

/// The star presentation `⟨b,x,y | r_M(b,x), r_N(b,y), b x⁻¹ y b⁻¹ = y x⁻¹⟩`
/// of `Art_{2MN}`. Labels below 3 need `allow_small`.
pub fn artin_star(m: u32, n: u32, allow_small: bool) -> Result<Presentation> {
    let floor = if allow_small { 2 } else { 3 };
    for k in [m, n] {
        if k < floor {
            return Err(Error::Parameter(format!(
                "star presentation needs labels ≥ {floor}, got {k}"
            )));
        }
    }
    Presentation::new(
        &["b", "x", "y"],
        vec![
            r_relator(m, 1, 2),
            r_relator(n, 1, 3),
            commutation_relator(),
        ],
    )
}

/// The star presentation with the commutation relator skipped: `Art_{MN∞}`.
pub fn artin_star_infty(m: u32, n: u32) -> Result<Presentation> {
    for k in [m, n] {
        check_label(Label::Finite(k))?;
    }
    Presentation::new(
        &["b", "x", "y"],
        vec![r_relator(m, 1, 2), r_relator(n, 1, 3)],
    )
}

/// Images of `b, x, y` in the alphabet `a, b, c` under `x = ab`, `y = cb`.
pub fn star_to_standard_substitution() -> [Word; 3] {
    [
        Word::from_signed(&[2]),
        Word::from_signed(&[1, 2]),
        Word::from_signed(&[3, 2]),
    ]
}

/// Rewrites the star relators of `Art_{2MN}` over `a, b, c`.
pub fn star_relators_in_standard(star: &Presentation) -> Vec<Word> {
    let images = star_to_standard_substitution();
    star.relators()
        .iter()
        .map(|r| r.substitute(&images))
        .collect()
}

/// True iff the exponent-sum vector of every word lies in the integer row
/// span of the relation matrix of `p`: the words die in the abelianization.
pub fn vanish_in_abelianization(p: &Presentation, words: &[Word]) -> bool {
    let base = p.relation_matrix();
    let rank_before = smith_normal_form(&base);
    let mut rows: Vec<Vec<i64>> = (0..base.rows())
        .map(|r| {
            (0..base.cols())
                .map(|c| base.get(r, c).to_i64().expect("small exponent sums"))
                .collect()
        })
        .collect();
    for w in words {
        rows.push(w.exponent_sums(p.rank()));
    }
    let extended = IntegerMatrix::from_rows(&rows).expect("rows have one entry per generator");
    // same lattice iff same rank and same product of invariant factors
    let after = smith_normal_form(&extended);
    rank_before.diagonal == after.diagonal
}

/// `⟨A, t | t⁻¹ u t = β(u)⟩` for HNN data, or the amalgam presentation on the
/// generators of both factors with one relator per basis element of `C`.
pub fn presentation_of_splitting(s: &SplittingData) -> Result<Presentation> {
    match s {
        SplittingData::Hnn(h) => {
            let k = h.a_names.len() as u32;
            let t = Word::power_of(k + 1, 1);
            let rels = h
                .edge_words
                .iter()
                .zip(&h.beta_images)
                .map(|(u, bu)| u.conjugate_by(&t).concat(&bu.inverse()))
                .collect();
            let mut names = h.a_names.clone();
            names.push(h.stable_letter.clone());
            Presentation::new(&names, rels)
        }
        SplittingData::Amalgam(a) => {
            let shift = a.a_names.len() as u32;
            let shifted: Vec<Word> = (1..=a.b_names.len() as u32)
                .map(|g| Word::power_of(g + shift, 1))
                .collect();
            let rels = a
                .c_in_a
                .iter()
                .zip(&a.c_in_b)
                .map(|(ia, ib)| ia.concat(&ib.substitute(&shifted).inverse()))
                .collect();
            let mut names = a.a_names.clone();
            names.extend(a.b_names.iter().cloned());
            Presentation::new(&names, rels)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inv(free_rank: usize, torsion: &[u32]) -> AbelianInvariants {
        AbelianInvariants {
            free_rank,
            torsion: torsion.iter().map(|&t| BigUint::from(t)).collect(),
        }
    }

    fn f(k: u32) -> Label {
        Label::Finite(k)
    }

    #[test]
    fn standard_relator_lengths() {
        let p = artin_standard(f(2), f(4), f(4)).unwrap();
        let lens: Vec<usize> = p.relators().iter().map(Word::len).collect();
        assert_eq!(lens, vec![4, 8, 8]);
        let alpha = p.alphabet();
        assert_eq!(alpha.format(&p.relators()[0]), "a.b.a^-1.b^-1");
    }

    #[test]
    fn infinite_labels_drop_relators() {
        let p = artin_standard(Label::Infinite, Label::Infinite, Label::Infinite).unwrap();
        assert!(p.relators().is_empty());
        assert_eq!(abelianization(&p), inv(3, &[]));
        assert!(artin_standard(f(1), f(3), f(3)).is_err());
    }

    #[test]
    fn right_angled_abelianization() {
        assert_eq!(
            abelianization(&artin_standard(f(2), f(2), f(2)).unwrap()),
            inv(3, &[])
        );
    }

    #[test]
    fn standard_abelianizations_by_parity() {
        // an odd label identifies its two generators
        let ab = |m, n| abelianization(&artin_standard(f(2), f(m), f(n)).unwrap());
        assert_eq!(ab(4, 4), inv(3, &[]));
        assert_eq!(ab(5, 4), inv(2, &[]));
        assert_eq!(ab(5, 5), inv(1, &[]));
    }

    #[test]
    fn star_presentation_relators() {
        let p = artin_star(4, 4, false).unwrap();
        let a = p.alphabet();
        let rels: Vec<String> = p.relators().iter().map(|r| a.format(r)).collect();
        assert_eq!(
            rels,
            vec!["b.x^2.b^-1.x^-2", "b.y^2.b^-1.y^-2", "b.x^-1.y.b^-1.x.y^-1"]
        );
        let odd = artin_star(5, 4, false).unwrap();
        assert_eq!(odd.alphabet().format(&odd.relators()[0]), "b.x^2.b.x^-3");
        assert!(artin_star(2, 4, false).is_err());
        assert!(artin_star(2, 4, true).is_ok());
    }

    #[test]
    fn star_matches_standard_in_abelianization() {
        for m in 3..=9 {
            for n in 3..=9 {
                let star = artin_star(m, n, false).unwrap();
                let std = artin_standard(f(2), f(m), f(n)).unwrap();
                assert_eq!(abelianization(&star), abelianization(&std), "({m},{n})");
                // the substituted star relators die in the paper's labelling
                let paper = artin_standard(f(m), f(n), f(2)).unwrap();
                assert!(vanish_in_abelianization(
                    &paper,
                    &star_relators_in_standard(&star)
                ));
            }
        }
    }

    #[test]
    fn vanishing_detects_non_consequences() {
        let p = artin_standard(f(2), f(2), f(2)).unwrap();
        assert!(!vanish_in_abelianization(&p, &[Word::from_signed(&[1])]));
        let q = Presentation::new(&["a"], vec![Word::power_of(1, 4)]).unwrap();
        assert!(vanish_in_abelianization(&q, &[Word::power_of(1, 8)]));
        assert!(!vanish_in_abelianization(&q, &[Word::power_of(1, 2)]));
    }

    #[test]
    fn torsion_appears() {
        let p = Presentation::new(
            &["a", "b"],
            vec![Word::power_of(1, 2), Word::power_of(2, 3)],
        )
        .unwrap();
        assert_eq!(abelianization(&p), inv(0, &[6]));
        assert_eq!(abelianization(&p).to_string(), "Z/6");
    }

    #[test]
    fn free_group_has_free_abelianization() {
        let p = Presentation::new(&["a", "b", "c", "d"], vec![]).unwrap();
        assert_eq!(abelianization(&p), inv(4, &[]));
    }

    #[test]
    fn text_roundtrip() {
        let p = artin_star(5, 6, false).unwrap();
        let text = p.to_text();
        assert!(text.starts_with("gens b x y\nrel "));
        assert_eq!(Presentation::from_text(&text).unwrap(), p);
        assert!(Presentation::from_text("rel x").is_err());
        assert!(Presentation::from_text("gens x\nrel z").is_err());
    }

    #[test]
    fn relators_are_cyclically_reduced() {
        let p = Presentation::new(&["a", "b"], vec![Word::from_signed(&[2, 1, 1, -2])]).unwrap();
        assert_eq!(p.relators()[0], Word::power_of(1, 2));
    }
}
