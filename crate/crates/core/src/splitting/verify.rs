//! Side-condition checks for splitting data, reported line by line.

use std::fmt;
use std::fmt::Write as _;

use crate::error::Result;
use crate::graph::check_cover;
use crate::presentation::{
    abelianization, artin_dihedral, artin_standard, artin_star, artin_star_infty,
    presentation_of_splitting, Label,
};
use crate::subgroup::SubgroupGraph;

use super::{split, ArtinParams, Parity, SplittingData};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail,
    NotApplicable,
}

impl fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "fail",
            CheckStatus::NotApplicable => "n/a",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub status: CheckStatus,
    pub evidence: String,
}

impl Check {
    fn new(name: &'static str, ok: bool, evidence: String) -> Self {
        Check {
            name,
            status: if ok {
                CheckStatus::Pass
            } else {
                CheckStatus::Fail
            },
            evidence,
        }
    }

    fn na(name: &'static str, evidence: &str) -> Self {
        Check {
            name,
            status: CheckStatus::NotApplicable,
            evidence: evidence.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != CheckStatus::Fail)
    }

    pub fn pass_count(&self) -> usize {
        self.checks
            .iter()
            .filter(|c| c.status == CheckStatus::Pass)
            .count()
    }

    pub fn applicable_count(&self) -> usize {
        self.checks
            .iter()
            .filter(|c| c.status != CheckStatus::NotApplicable)
            .count()
    }

    pub fn status(&self, name: &str) -> Option<CheckStatus> {
        self.checks
            .iter()
            .find(|c| c.name == name)
            .map(|c| c.status)
    }

    /// `CHECK` lines followed by the `RESULT pass/applicable` footer.
    pub fn to_text(&self) -> String {
        let mut out = self.check_lines();
        writeln!(
            out,
            "RESULT {}/{}",
            self.pass_count(),
            self.applicable_count()
        )
        .unwrap();
        out
    }

    pub fn check_lines(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            writeln!(out, "CHECK {} {} {}", c.name, c.status, c.evidence).unwrap();
        }
        out
    }
}

fn rank_of(words: &[crate::word::Word], k: u32) -> Result<usize> {
    Ok(SubgroupGraph::from_words(words, k)?.rank())
}

/// Edge-group images fold without losing rank: `π₁`-injectivity.
fn injectivity_check(s: &SplittingData) -> Result<Check> {
    let k = s.a_alphabet().rank();
    let mut ok = true;
    let mut ev = Vec::new();
    match s {
        SplittingData::Hnn(h) => {
            let rb = rank_of(&h.edge_words, k)?;
            let rbb = rank_of(&h.beta_images, k)?;
            ok &= rb == h.edge_words.len() && rbb == h.beta_images.len();
            ev.push(format!("rank(B)={rb}/{}", h.edge_words.len()));
            ev.push(format!("rank(beta(B))={rbb}/{}", h.beta_images.len()));
        }
        SplittingData::Amalgam(a) => {
            let rc = rank_of(&a.c_in_a, k)?;
            let rcb = rank_of(&a.c_in_b, a.b_names.len() as u32)?;
            ok &= rc == a.c_in_a.len() && rcb == a.c_in_b.len();
            ev.push(format!("rank(C in A)={rc}/{}", a.c_in_a.len()));
            ev.push(format!("rank(C in B)={rcb}/{}", a.c_in_b.len()));
        }
    }
    if let Some(es) = s.edge_space() {
        let he = es.folding.is_homotopy_equivalence();
        let imm = es.folded().is_immersion();
        ok &= he && imm;
        ev.push(format!(
            "fold_steps={} rank_loss={} immersion={imm}",
            es.folding.trace.len(),
            !he
        ));
    }
    Ok(Check::new("pi1-injective", ok, ev.join(" ")))
}

fn ranks_check(s: &SplittingData, expected: &[usize]) -> Result<Check> {
    let got = s.ranks()?;
    let fmt = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
    Ok(Check::new(
        "ranks",
        got == expected,
        format!("got=({}) expected=({})", fmt(&got), fmt(expected)),
    ))
}

fn cover_check(s: &SplittingData) -> Check {
    match s.edge_space() {
        Some(es) => {
            let r = check_cover(&es.to_xb);
            let rank = if es.is_connected() {
                es.folded().rank().ok()
            } else {
                None
            };
            let mut ev = format!(
                "cover={} degree={}",
                r.is_cover,
                r.degree.map_or("none".into(), |d| d.to_string())
            );
            if let Some(rank) = rank {
                write!(
                    ev,
                    " rank(X_C)={} rank(folded)={rank}",
                    es.x_c.rank().unwrap_or(0)
                )
                .unwrap();
            }
            Check::new("double-cover", r.degree == Some(2), ev)
        }
        None => Check::na("double-cover", "no edge space"),
    }
}

fn conjugate_check(s: &SplittingData) -> Result<Check> {
    match s {
        SplittingData::Hnn(h) => {
            let k = s.a_alphabet().rank();
            let b = SubgroupGraph::from_words(&h.edge_words, k)?;
            let bb = SubgroupGraph::from_words(&h.beta_images, k)?;
            let same = b.conjugacy_form() == bb.conjugacy_form();
            Ok(Check::new(
                "conjugate-edge-groups",
                same,
                format!(
                    "X_B^- and X_B^+ {} (unbased, {} and {} vertices)",
                    if same { "isomorphic" } else { "differ" },
                    bb.core().vertex_count(),
                    b.core().vertex_count()
                ),
            ))
        }
        SplittingData::Amalgam(_) => Ok(Check::na("conjugate-edge-groups", "amalgam")),
    }
}

fn abelianization_check(s: &SplittingData, params: &ArtinParams) -> Result<Check> {
    let split_ab = abelianization(&presentation_of_splitting(s)?);
    let (std, star) = if params.is_infty() {
        (
            artin_standard(
                Label::Finite(params.big_m()),
                Label::Finite(params.big_n()),
                Label::Infinite,
            )?,
            artin_star_infty(params.big_m(), params.big_n())?,
        )
    } else {
        (
            artin_standard(
                Label::Finite(2),
                Label::Finite(params.big_m()),
                Label::Finite(params.big_n()),
            )?,
            artin_star(params.big_m(), params.big_n(), params.allow_small())?,
        )
    };
    let std_ab = abelianization(&std);
    let star_ab = abelianization(&star);
    Ok(Check::new(
        "abelianization",
        split_ab == std_ab && star_ab == std_ab,
        format!("splitting={split_ab} standard={std_ab} star={star_ab}"),
    ))
}

/// Runs the checks for a splitting of `Art_{2MN}` or `Art_{MN∞}`.
pub fn verify_splitting(s: &SplittingData, params: &ArtinParams) -> Result<VerificationReport> {
    let expected: Vec<usize> = match (s.is_hnn(), params.is_infty()) {
        (true, false) => vec![2, 3],
        (true, true) => vec![2, 2],
        (false, false) => vec![2, 3, 5],
        (false, true) => vec![2, 2, 3],
    };
    let wants_hnn = params.parity() == Parity::BothEven;
    let mut checks = vec![
        Check::new(
            "variant",
            s.is_hnn() == wants_hnn,
            format!(
                "{} for {} labels",
                if s.is_hnn() { "hnn" } else { "amalgam" },
                params.parity()
            ),
        ),
        injectivity_check(s)?,
        ranks_check(s, &expected)?,
        cover_check(s),
        conjugate_check(s)?,
        abelianization_check(s, params)?,
    ];
    if !wants_hnn {
        if let Some(c) = checks
            .iter_mut()
            .find(|c| c.name == "conjugate-edge-groups")
        {
            *c = Check::na("conjugate-edge-groups", "not both even");
        }
    }
    Ok(VerificationReport { checks })
}

/// Checks for the dihedral splittings: injectivity and abelianization.
pub fn verify_dihedral(s: &SplittingData, big_m: u32) -> Result<VerificationReport> {
    let split_ab = abelianization(&presentation_of_splitting(s)?);
    let std_ab = abelianization(&artin_dihedral(big_m)?);
    Ok(VerificationReport {
        checks: vec![
            injectivity_check(s)?,
            Check::new(
                "abelianization",
                split_ab == std_ab,
                format!("splitting={split_ab} standard={std_ab}"),
            ),
        ],
    })
}

#[derive(Debug, Clone)]
pub struct GridEntry {
    pub big_m: u32,
    pub big_n: u32,
    pub report: VerificationReport,
}

/// `verify_splitting(split(M, N))` for `lo ≤ M, N ≤ hi`, in row-major order.
pub fn verify_grid(lo: u32, hi: u32, allow_small: bool) -> Result<Vec<GridEntry>> {
    let mut out = Vec::new();
    for big_m in lo..=hi {
        for big_n in lo..=hi {
            let params = if allow_small {
                ArtinParams::new_unchecked(big_m, big_n)?
            } else {
                ArtinParams::new(big_m, big_n)?
            };
            let s = split(&params)?;
            out.push(GridEntry {
                big_m,
                big_n,
                report: verify_splitting(&s, &params)?,
            });
        }
    }
    Ok(out)
}
