//! Splittings of `Art_{2MN}`, `Art_{MN∞}` and the dihedral Artin groups as
//! HNN extensions or amalgams of finite rank free groups.

mod edge_space;
mod verify;

pub use edge_space::{build_edge_space, Cell, EdgeSpaceData, B_MINUS, B_PLUS};
pub use verify::{
    verify_dihedral, verify_grid, verify_splitting, Check, CheckStatus, GridEntry,
    VerificationReport,
};

use std::fmt;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::presentation::Label;
use crate::subgroup::SubgroupGraph;
use crate::word::{Alphabet, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    BothEven,
    MOdd,
    NOdd,
    BothOdd,
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::BothEven => "both-even",
            Parity::MOdd => "M-odd",
            Parity::NOdd => "N-odd",
            Parity::BothOdd => "both-odd",
        })
    }
}

/// Labels `M`, `N` of `Art_{2MN}` (or of `Art_{MN∞}` when `third` is ∞).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ArtinParams {
    big_m: u32,
    big_n: u32,
    third: Label,
    allow_small: bool,
}

impl ArtinParams {
    /// `Art_{2MN}` with `M, N ≥ 4`.
    pub fn new(big_m: u32, big_n: u32) -> Result<Self> {
        Self::build(big_m, big_n, Label::Finite(2), false)
    }

    /// `Art_{2MN}` with `M, N ≥ 3`, for exploration below the theorems' range.
    pub fn new_unchecked(big_m: u32, big_n: u32) -> Result<Self> {
        Self::build(big_m, big_n, Label::Finite(2), true)
    }

    /// `Art_{MN∞}` with `M, N ≥ 3`.
    pub fn new_infty(big_m: u32, big_n: u32) -> Result<Self> {
        Self::build(big_m, big_n, Label::Infinite, true)
    }

    fn build(big_m: u32, big_n: u32, third: Label, allow_small: bool) -> Result<Self> {
        let floor = if allow_small { 3 } else { 4 };
        for k in [big_m, big_n] {
            if k < floor {
                return Err(Error::Parameter(format!(
                    "label {k} is below {floor}{}",
                    if allow_small {
                        ""
                    } else {
                        " (use the override to explore M, N = 3)"
                    }
                )));
            }
        }
        Ok(ArtinParams {
            big_m,
            big_n,
            third,
            allow_small,
        })
    }

    pub fn big_m(&self) -> u32 {
        self.big_m
    }

    pub fn big_n(&self) -> u32 {
        self.big_n
    }

    /// `⌊M/2⌋`
    pub fn m(&self) -> u32 {
        self.big_m / 2
    }

    /// `⌊N/2⌋`
    pub fn n(&self) -> u32 {
        self.big_n / 2
    }

    pub fn third(&self) -> Label {
        self.third
    }

    pub fn is_infty(&self) -> bool {
        self.third == Label::Infinite
    }

    pub fn allow_small(&self) -> bool {
        self.allow_small
    }

    pub fn parity(&self) -> Parity {
        match (self.big_m % 2 == 1, self.big_n % 2 == 1) {
            (false, false) => Parity::BothEven,
            (true, false) => Parity::MOdd,
            (false, true) => Parity::NOdd,
            (true, true) => Parity::BothOdd,
        }
    }
}

impl fmt::Display for ArtinParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.third {
            Label::Infinite => write!(f, "Art_{{{},{},inf}}", self.big_m, self.big_n),
            Label::Finite(p) => write!(f, "Art_{{{},{},{}}}", p, self.big_m, self.big_n),
        }
    }
}

/// `A *_{B,β}`: `t⁻¹ u t = β(u)` for `u` in a basis of `B ≤ A`.
#[derive(Debug, Clone)]
pub struct HnnSplitting {
    pub a_names: Vec<String>,
    /// Basis of `B`, in the letters of `A`.
    pub edge_words: Vec<Word>,
    pub beta_images: Vec<Word>,
    pub stable_letter: String,
    pub edge_space: Option<EdgeSpaceData>,
}

/// `A *_C B`, with `C` given by a basis and its images in both factors.
#[derive(Debug, Clone)]
pub struct AmalgamSplitting {
    pub a_names: Vec<String>,
    pub b_names: Vec<String>,
    pub c_in_a: Vec<Word>,
    /// In the letters of `B` (1-based over `b_names`).
    pub c_in_b: Vec<Word>,
    pub edge_space: Option<EdgeSpaceData>,
}

#[derive(Debug, Clone)]
pub enum SplittingData {
    Hnn(HnnSplitting),
    Amalgam(AmalgamSplitting),
}

impl SplittingData {
    pub fn is_hnn(&self) -> bool {
        matches!(self, SplittingData::Hnn(_))
    }

    pub fn edge_space(&self) -> Option<&EdgeSpaceData> {
        match self {
            SplittingData::Hnn(h) => h.edge_space.as_ref(),
            SplittingData::Amalgam(a) => a.edge_space.as_ref(),
        }
    }

    pub fn a_alphabet(&self) -> Alphabet {
        match self {
            SplittingData::Hnn(h) => Alphabet::new(&h.a_names),
            SplittingData::Amalgam(a) => Alphabet::new(&a.a_names),
        }
    }

    pub fn vertex_a(&self) -> SubgroupGraph {
        SubgroupGraph::full(self.a_alphabet().rank())
    }

    /// The edge group as a subgroup of `A`: `B` for HNN data, `ι_A(C)` for
    /// amalgams.
    pub fn edge_subgroup(&self) -> Result<SubgroupGraph> {
        let k = self.a_alphabet().rank();
        match self {
            SplittingData::Hnn(h) => SubgroupGraph::from_words(&h.edge_words, k),
            SplittingData::Amalgam(a) => SubgroupGraph::from_words(&a.c_in_a, k),
        }
    }

    /// `(rank A, rank B)` for HNN data, `(rank A, rank B, rank C)` for amalgams.
    pub fn ranks(&self) -> Result<Vec<usize>> {
        let a = self.a_alphabet().rank() as usize;
        Ok(match self {
            SplittingData::Hnn(_) => vec![a, self.edge_subgroup()?.rank()],
            SplittingData::Amalgam(am) => {
                vec![a, am.b_names.len(), self.edge_subgroup()?.rank()]
            }
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let fmt_list = |alpha: &Alphabet, ws: &[Word]| {
            ws.iter()
                .map(|w| alpha.format(w))
                .collect::<Vec<_>>()
                .join(", ")
        };
        match self {
            SplittingData::Hnn(h) => {
                let alpha = Alphabet::new(&h.a_names);
                writeln!(out, "variant hnn").unwrap();
                writeln!(out, "A = <{}>", h.a_names.join(", ")).unwrap();
                writeln!(out, "B = <{}>", fmt_list(&alpha, &h.edge_words)).unwrap();
                writeln!(out, "beta(B) = <{}>", fmt_list(&alpha, &h.beta_images)).unwrap();
                for (u, b) in h.edge_words.iter().zip(&h.beta_images) {
                    writeln!(out, "beta: {} -> {}", alpha.format(u), alpha.format(b)).unwrap();
                }
                writeln!(out, "stable letter {}", h.stable_letter).unwrap();
            }
            SplittingData::Amalgam(a) => {
                let alpha_a = Alphabet::new(&a.a_names);
                let alpha_b = Alphabet::new(&a.b_names);
                writeln!(out, "variant amalgam").unwrap();
                writeln!(out, "A = <{}>", a.a_names.join(", ")).unwrap();
                writeln!(out, "B = <{}>", a.b_names.join(", ")).unwrap();
                for (ia, ib) in a.c_in_a.iter().zip(&a.c_in_b) {
                    writeln!(out, "C: {} = {}", alpha_a.format(ia), alpha_b.format(ib)).unwrap();
                }
            }
        }
        if let Ok(r) = self.ranks() {
            let r: Vec<String> = r.iter().map(usize::to_string).collect();
            writeln!(out, "ranks ({})", r.join(",")).unwrap();
        }
        out
    }
}

fn names(ns: &[&str]) -> Vec<String> {
    ns.iter().map(|s| s.to_string()).collect()
}

/// The splitting of `Art_{2MN}` (or `Art_{MN∞}`): HNN over `B ≤ ⟨x, y⟩` when
/// both labels are even, otherwise an amalgam `A *_C B` along `X_C`.
pub fn split(params: &ArtinParams) -> Result<SplittingData> {
    let es = build_edge_space(params)?;
    if params.parity() == Parity::BothEven {
        let mut cells = vec![Cell::X, Cell::Y];
        if !params.is_infty() {
            cells.push(Cell::Commutation);
        }
        let loops = |v| -> Vec<Word> {
            cells
                .iter()
                .map(|&c| es.loop_word(c, v).expect("even cells have loops").clone())
                .collect()
        };
        let (edge_words, beta_images) = (loops(B_PLUS), loops(B_MINUS));
        return Ok(SplittingData::Hnn(HnnSplitting {
            a_names: names(&["x", "y"]),
            edge_words,
            beta_images,
            stable_letter: "t".into(),
            edge_space: Some(es),
        }));
    }
    let (c_in_b, c_in_a): (Vec<Word>, Vec<Word>) = es.c_basis().into_iter().unzip();
    let b_names = es
        .cells
        .iter()
        .map(|c| c.circle_name().to_string())
        .collect();
    Ok(SplittingData::Amalgam(AmalgamSplitting {
        a_names: names(&["x", "y"]),
        b_names,
        c_in_a,
        c_in_b,
        edge_space: Some(es),
    }))
}

/// `Art_{MN∞}`.
pub fn split_infty(big_m: u32, big_n: u32) -> Result<SplittingData> {
    split(&ArtinParams::new_infty(big_m, big_n)?)
}

/// The dihedral Artin group `Art_M`: `⟨x⟩ *_{⟨x^m⟩}` for `M = 2m`, and
/// `⟨x⟩ *_{x^M = y²} ⟨y⟩` for odd `M`.
pub fn split_dihedral(big_m: u32) -> Result<SplittingData> {
    if big_m < 2 {
        return Err(Error::Parameter(format!(
            "dihedral label {big_m} is below 2"
        )));
    }
    if big_m % 2 == 0 {
        let xm = Word::power_of(1, i64::from(big_m / 2));
        Ok(SplittingData::Hnn(HnnSplitting {
            a_names: names(&["x"]),
            edge_words: vec![xm.clone()],
            beta_images: vec![xm],
            stable_letter: "t".into(),
            edge_space: None,
        }))
    } else {
        Ok(SplittingData::Amalgam(AmalgamSplitting {
            a_names: names(&["x"]),
            b_names: names(&["y"]),
            c_in_a: vec![Word::power_of(1, i64::from(big_m))],
            c_in_b: vec![Word::power_of(1, 2)],
            edge_space: None,
        }))
    }
}
