use std::fmt::Write as _;

use artinfold::fiber::{conjugate_intersections, fiber_product_dot, product_graph};
use artinfold::graph::{export_graph, ExportFormat};
use artinfold::presentation::{
    abelianization, artin_standard, artin_star, artin_star_infty, presentation_of_splitting, Label,
    Presentation,
};
use artinfold::rf::{check_quotient_conditions, ping_pong_check, quotient_for, triangle_rep};
use artinfold::splitting::{
    split, split_dihedral, split_infty, verify_dihedral, verify_grid, verify_splitting,
    ArtinParams, Parity, SplittingData,
};
use artinfold::subgroup::SubgroupGraph;
use artinfold::word::{Alphabet, Word};
use artinfold::Error;

use crate::{Cli, Command, ExportObject, Format, Labels, Outcome, Preset};

pub enum CliError {
    Usage(String),
    Failed(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Parameter(_)
            | Error::Parse { .. }
            | Error::WordTooLong { .. }
            | Error::GeneratorOutOfRange { .. } => CliError::Usage(e.to_string()),
            _ => CliError::Failed(e.to_string()),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn usage<T>(msg: impl Into<String>) -> CliResult<T> {
    Err(CliError::Usage(msg.into()))
}

fn xy() -> Alphabet {
    Alphabet::new(&["x", "y"])
}

pub fn dispatch(cli: &Cli) -> CliResult<Outcome> {
    let o = &cli.output;
    if !(o.tol > 0.0) {
        return usage(format!("--tol must be positive, got {}", o.tol));
    }
    match &cli.command {
        Command::Split { labels, dihedral } => {
            cmd_split(labels, *dihedral, o.format, o.override_range)
        }
        Command::Verify { labels, grid } => {
            cmd_verify(labels, grid.as_deref(), o.format, o.override_range)
        }
        Command::Intersect {
            preset,
            m,
            n,
            odd,
            both_odd,
            words,
        } => {
            let h = intersect_subgroup(
                *preset,
                *m,
                *n,
                *odd,
                *both_odd,
                words.as_deref(),
                o.override_range,
            )?;
            cmd_intersect(&h, o.format)
        }
        Command::Abelianize {
            labels,
            preset,
            input,
        } => cmd_abelianize(labels, *preset, input.as_deref(), o.override_range),
        Command::Rf {
            labels,
            p,
            syllables,
        } => cmd_rf(labels, *p, *syllables, o.tol, o.format, o.override_range),
        Command::Export { labels, object } => {
            cmd_export(labels, *object, o.format, o.override_range)
        }
    }
}

fn artin_params(labels: &Labels, override_range: bool) -> CliResult<ArtinParams> {
    let (Some(m), Some(n)) = (labels.m, labels.n) else {
        return usage("--m and --n are required");
    };
    Ok(match labels.third {
        Label::Infinite => ArtinParams::new_infty(m, n)?,
        Label::Finite(2) if override_range => ArtinParams::new_unchecked(m, n)?,
        Label::Finite(2) => ArtinParams::new(m, n)?,
        Label::Finite(k) => return usage(format!("third label must be 2 or inf, got {k}")),
    })
}

fn split_for(params: &ArtinParams) -> CliResult<SplittingData> {
    Ok(if params.is_infty() {
        split_infty(params.big_m(), params.big_n())?
    } else {
        split(params)?
    })
}

fn text_only(format: Option<Format>, allowed: &[Format]) -> CliResult<Format> {
    let f = format.unwrap_or(allowed[0]);
    if allowed.contains(&f) {
        Ok(f)
    } else {
        usage(format!("format {f:?} is not available for this command").to_lowercase())
    }
}

fn cmd_split(
    labels: &Labels,
    dihedral: bool,
    format: Option<Format>,
    over: bool,
) -> CliResult<Outcome> {
    let format = text_only(format, &[Format::Text, Format::Dot])?;
    let (title, s) = if dihedral {
        let Some(m) = labels.m else {
            return usage("--m is required");
        };
        (
            format!("dihedral Artin group of label {m}"),
            split_dihedral(m)?,
        )
    } else {
        let params = artin_params(labels, over)?;
        (params.to_string(), split_for(&params)?)
    };
    let text = match format {
        Format::Dot => match s.edge_space() {
            Some(es) => export_graph(es.folded(), "X_C_folded", ExportFormat::Dot),
            None => return usage("this splitting has no edge space to draw"),
        },
        _ => format!("# {title}\n{}", s.to_text()),
    };
    Ok(Outcome { text, passed: true })
}

fn parse_grid(spec: &str) -> CliResult<(u32, u32)> {
    let parsed = spec
        .split_once(':')
        .and_then(|(a, b)| Some((a.trim().parse().ok()?, b.trim().parse().ok()?)));
    match parsed {
        Some((a, b)) if a <= b => Ok((a, b)),
        _ => usage(format!("--grid expects A:B with A ≤ B, got `{spec}`")),
    }
}

fn cmd_verify(
    labels: &Labels,
    grid: Option<&str>,
    format: Option<Format>,
    over: bool,
) -> CliResult<Outcome> {
    let format = text_only(format, &[Format::Text, Format::Csv])?;
    let Some(grid) = grid else {
        if labels.third == Label::Finite(2) && labels.n.is_none() {
            if let Some(m) = labels.m {
                let r = verify_dihedral(&split_dihedral(m)?, m)?;
                return Ok(Outcome {
                    text: format!("# dihedral Artin group of label {m}\n{}", r.to_text()),
                    passed: r.passed(),
                });
            }
        }
        let params = artin_params(labels, over)?;
        let r = verify_splitting(&split_for(&params)?, &params)?;
        let text = match format {
            Format::Csv => format!(
                "M,N,passed,pass_count,applicable\n{},{},{},{},{}\n",
                params.big_m(),
                params.big_n(),
                r.passed(),
                r.pass_count(),
                r.applicable_count()
            ),
            _ => format!("# {params}\n{}", r.to_text()),
        };
        return Ok(Outcome {
            text,
            passed: r.passed(),
        });
    };
    let (lo, hi) = parse_grid(grid)?;
    let entries = verify_grid(lo, hi, over)?;
    let passed = entries.iter().filter(|e| e.report.passed()).count();
    let mut text = String::new();
    match format {
        Format::Csv => {
            text.push_str("M,N,variant,passed,pass_count,applicable\n");
            for e in &entries {
                let variant = if (e.big_m % 2, e.big_n % 2) == (0, 0) {
                    "hnn"
                } else {
                    "amalgam"
                };
                writeln!(
                    text,
                    "{},{},{variant},{},{},{}",
                    e.big_m,
                    e.big_n,
                    e.report.passed(),
                    e.report.pass_count(),
                    e.report.applicable_count()
                )
                .unwrap();
            }
        }
        _ => {
            for e in &entries {
                writeln!(text, "# Art_{{2,{},{}}}", e.big_m, e.big_n).unwrap();
                text.push_str(&e.report.to_text());
            }
            writeln!(text, "GRID {lo}:{hi} passed {passed}/{}", entries.len()).unwrap();
        }
    }
    Ok(Outcome {
        text,
        passed: passed == entries.len(),
    })
}

fn intersect_subgroup(
    preset: Option<Preset>,
    m: Option<u32>,
    n: Option<u32>,
    odd: bool,
    both_odd: bool,
    words: Option<&str>,
    over: bool,
) -> CliResult<SubgroupGraph> {
    match (preset, words) {
        (Some(_), Some(_)) => usage("give either --preset or --words"),
        (None, None) => usage("intersect needs --preset or --words"),
        (None, Some(ws)) => {
            let gens = ws
                .split(',')
                .map(|w| xy().parse(w.trim()))
                .collect::<Result<Vec<Word>, _>>()?;
            Ok(SubgroupGraph::from_words(&gens, 2)?)
        }
        (Some(preset), None) => {
            let (Some(m), Some(n)) = (m, n) else {
                return usage("presets need the half-labels --m and --n");
            };
            let (big_m, big_n) = match preset {
                Preset::ArtinC if both_odd => (2 * m + 1, 2 * n + 1),
                Preset::ArtinC if odd => (2 * m + 1, 2 * n),
                Preset::ArtinC => {
                    return usage(
                        "artin-C needs --odd or --both-odd; with both labels even use artin-B",
                    )
                }
                Preset::ArtinB if odd || both_odd => {
                    return usage("artin-B is the edge group of the both-even splitting")
                }
                Preset::ArtinB => (2 * m, 2 * n),
                _ => return usage("intersect takes the subgroup presets artin-C or artin-B"),
            };
            let params = if over {
                ArtinParams::new_unchecked(big_m, big_n)?
            } else {
                ArtinParams::new(big_m, big_n)?
            };
            Ok(split(&params)?.edge_subgroup()?)
        }
    }
}

fn cmd_intersect(h: &SubgroupGraph, format: Option<Format>) -> CliResult<Outcome> {
    let format = text_only(format, &[Format::Text, Format::Csv, Format::Dot])?;
    if format == Format::Dot {
        return Ok(Outcome {
            text: fiber_product_dot(h, h, "fiber_product")?,
            passed: true,
        });
    }
    let report = conjugate_intersections(h)?;
    let passed = report.entries.iter().all(|e| e.verified);
    let alpha = xy();
    let text = match format {
        Format::Csv => {
            let mut t = String::from("rank,multiplicity,verified,basis\n");
            for e in &report.entries {
                let basis: Vec<String> = e.basis.iter().map(|w| alpha.format(w)).collect();
                writeln!(
                    t,
                    "{},{},{},{}",
                    e.rank,
                    e.multiplicity,
                    e.verified,
                    basis.join(";")
                )
                .unwrap();
            }
            t
        }
        _ => {
            let basis: Vec<String> = h.basis().iter().map(|w| alpha.format(w)).collect();
            format!(
                "# H = <{}> rank {}\n{}",
                basis.join(", "),
                h.rank(),
                report.to_text(&alpha)
            )
        }
    };
    Ok(Outcome { text, passed })
}

fn cmd_abelianize(
    labels: &Labels,
    preset: Option<Preset>,
    input: Option<&std::path::Path>,
    over: bool,
) -> CliResult<Outcome> {
    if let Some(path) = input {
        let src = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
        let p = Presentation::from_text(&src)?;
        return Ok(Outcome {
            text: format!("H1 {}\n", abelianization(&p)),
            passed: true,
        });
    }
    let params = artin_params(labels, over)?;
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
    let splitting = presentation_of_splitting(&split_for(&params)?)?;
    let all = [
        (Preset::Standard, "standard", std),
        (Preset::StarPresentation, "star-presentation", star),
        (Preset::Splitting, "splitting", splitting),
    ];
    let mut text = format!("# {params}\n");
    let chosen: Vec<_> = match preset {
        None => all.iter().collect(),
        Some(Preset::ArtinB | Preset::ArtinC) => {
            return usage("abelianize takes standard, star-presentation or splitting")
        }
        Some(p) => all.iter().filter(|(q, _, _)| *q == p).collect(),
    };
    let mut invariants = Vec::new();
    for (_, name, pres) in chosen {
        let inv = abelianization(pres);
        writeln!(
            text,
            "{name}: {} generators, {} relators, H1 {inv}",
            pres.rank(),
            pres.relators().len()
        )
        .unwrap();
        invariants.push(inv);
    }
    let passed = invariants.windows(2).all(|w| w[0] == w[1]);
    if preset.is_none() {
        writeln!(text, "RESULT {}", if passed { "agree" } else { "disagree" }).unwrap();
    }
    Ok(Outcome { text, passed })
}

fn cmd_rf(
    labels: &Labels,
    p: Option<u32>,
    syllables: usize,
    tol: f64,
    format: Option<Format>,
    over: bool,
) -> CliResult<Outcome> {
    let format = text_only(format, &[Format::Text, Format::Csv])?;
    let params = artin_params(labels, over)?;
    let p = p.unwrap_or(if params.parity() == Parity::BothEven {
        7
    } else {
        6
    });
    let report = check_quotient_conditions(&params, p, tol)?;
    let ping = if params.parity() == Parity::MOdd {
        let rep = triangle_rep(quotient_for(&params, p)?, tol)?;
        Some(ping_pong_check(&rep, params.m(), p, syllables)?)
    } else {
        None
    };
    let passed = report.passed() && ping.as_ref().map_or(true, |r| r.passed());
    if format == Format::Csv {
        return match ping {
            Some(r) => Ok(Outcome {
                text: r.to_csv(),
                passed,
            }),
            None => usage("the ping-pong enumeration runs for M odd and N even"),
        };
    }
    let mut text = report.to_text();
    match &ping {
        Some(r) => writeln!(
            text,
            "PINGPONG {} syllables<={} words={} min_distance={:.3e} failures={}",
            if r.passed() { "pass" } else { "fail" },
            r.max_syllables,
            r.words_tested,
            r.min_distance,
            r.failures.len()
        )
        .unwrap(),
        None => writeln!(text, "PINGPONG n/a runs for M odd and N even").unwrap(),
    }
    writeln!(text, "RESULT {}", if passed { "pass" } else { "fail" }).unwrap();
    Ok(Outcome { text, passed })
}

fn cmd_export(
    labels: &Labels,
    object: ExportObject,
    format: Option<Format>,
    over: bool,
) -> CliResult<Outcome> {
    let format = match text_only(format, &[Format::Text, Format::Dot])? {
        Format::Dot => ExportFormat::Dot,
        _ => ExportFormat::Text,
    };
    let params = artin_params(labels, over)?;
    let s = split_for(&params)?;
    let es = s
        .edge_space()
        .ok_or_else(|| CliError::Failed("splitting has no edge space".into()))?;
    let text = match object {
        ExportObject::Xc => export_graph(&es.x_c, "X_C", format),
        ExportObject::XcFolded => export_graph(es.folded(), "X_C_folded", format),
        ExportObject::EdgeGroup => export_graph(s.edge_subgroup()?.core(), "edge_group", format),
        ExportObject::Fiber => {
            let h = s.edge_subgroup()?;
            match format {
                ExportFormat::Dot => fiber_product_dot(&h, &h, "fiber_product")?,
                ExportFormat::Text => {
                    export_graph(&product_graph(h.core(), h.core())?, "fiber_product", format)
                }
            }
        }
    };
    Ok(Outcome { text, passed: true })
}
