use std::fmt::Write;
use std::path::{Path, PathBuf};

use cohere_core::coherence::check_coherence;
use cohere_core::constituents::build_constituents;
use cohere_core::entailment::{class_k, classify, p_consistent, p_entails, EntailmentMode, Trichotomy};
use cohere_core::quasiconj::{bounds_two, gn_includes, normalize, quasi_conjunction_of};
use cohere_core::{ConditionalEvent, KnowledgeBase, Limits, Outcome, Vocabulary};

use crate::cli::{Cli, Command};
use crate::kbfile::{parse_kb, KbError, KbFile};
use crate::number::{parse_list, parse_rational, BadNumber};
use crate::report::{
    one_based, render_constituents, render_trace, set, strings, trace_steps, Bounds, Certificate,
    Constituent, QuasiConjunction, Report,
};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{}: {source}", path.display())]
    Kb { path: PathBuf, source: KbError },
    #[error(transparent)]
    Core(#[from] cohere_core::Error),
    #[error(transparent)]
    Number(#[from] BadNumber),
    #[error("{0}")]
    Usage(String),
}

/// A verdict: exit status 0 or 1 and the rendered report.
#[derive(Debug)]
pub struct Output {
    pub code: u8,
    pub text: String,
}

fn load(path: &Path) -> Result<KbFile, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_kb(&text).map_err(|source| CliError::Kb {
        path: path.to_path_buf(),
        source,
    })
}

fn resolve_query(file: &KbFile, text: &str) -> Result<ConditionalEvent, CliError> {
    if text.contains('|') {
        return file
            .kb
            .vocab()
            .parse_conditional(text)
            .map_err(|e| CliError::Usage(format!("query `{text}`: {e}")));
    }
    file.query(text.trim())
        .cloned()
        .ok_or_else(|| CliError::Usage(format!("no query named `{}` in the file", text.trim())))
}

fn parse_indices(text: &str, len: usize) -> Result<Vec<usize>, CliError> {
    let mut out = Vec::new();
    for part in text.split(',') {
        let i: usize = part
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("`{part}` is not an index")))?;
        if i == 0 || i > len {
            return Err(CliError::Usage(format!("index {i} is outside 1..={len}")));
        }
        out.push(i - 1);
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

fn limits(cli: &Cli) -> Limits {
    let d = Limits::DEFAULT;
    Limits {
        max_atoms: cli.guard_atoms.unwrap_or(d.max_atoms),
        max_subset_family: cli.guard_subsets.unwrap_or(d.max_subset_family),
        ..d
    }
}

fn finish(cli: &Cli, code: bool, report: Report, text: String) -> Output {
    let text = if cli.json {
        let mut s = serde_json::to_string_pretty(&report).expect("reports serialize");
        s.push('\n');
        s
    } else {
        text
    };
    Output {
        code: if code { 0 } else { 1 },
        text,
    }
}

fn listing(kb: &KnowledgeBase, indices: &[usize]) -> String {
    let v = kb.vocab();
    let mut out = String::new();
    for &i in indices {
        writeln!(out, "  {:>2}  {}", i + 1, kb.get(i).unwrap().display(v)).unwrap();
    }
    out
}

pub fn run(cli: &Cli) -> Result<Output, CliError> {
    let limits = limits(cli);
    match &cli.command {
        Command::CheckCoherence { kbfile, assessment } => {
            let file = load(kbfile)?;
            let p = parse_list(assessment)?;
            let verdict = check_coherence(&file.kb, &p, &limits)?;
            let v = file.kb.vocab();
            let mut text = format!(
                "{}\n",
                if verdict.coherent { "coherent" } else { "incoherent" }
            );
            let certificate = verdict.certificate.as_ref().map(|c| Certificate {
                members: one_based(&c.members),
                assessment: strings(&c.assessment),
            });
            if let Some(c) = &certificate {
                writeln!(
                    text,
                    "no solution for members {} at ({})",
                    set(&c.members),
                    c.assessment.join(", ")
                )
                .unwrap();
            }
            let trace = cli.trace.then(|| trace_steps(&verdict.trace, v));
            if let Some(steps) = &trace {
                render_trace(&mut text, steps);
            }
            let report = Report {
                command: "check-coherence",
                verdict: Some(if verdict.coherent { "coherent" } else { "incoherent" }.into()),
                certificate,
                trace,
                ..Report::default()
            };
            Ok(finish(cli, verdict.coherent, report, text))
        }

        Command::PConsistent { kbfile } => {
            let file = load(kbfile)?;
            let ok = p_consistent(&file.kb, &limits)?;
            let word = if ok { "p-consistent" } else { "not p-consistent" };
            let mut text = format!("{word}\n");
            let mut report = Report {
                command: "p-consistent",
                verdict: Some(word.into()),
                ..Report::default()
            };
            if cli.trace {
                let ones = vec![cohere_core::ratlp::rational(1, 1); file.kb.len()];
                let verdict = check_coherence(&file.kb, &ones, &limits)?;
                let steps = trace_steps(&verdict.trace, file.kb.vocab());
                render_trace(&mut text, &steps);
                report.trace = Some(steps);
            }
            Ok(finish(cli, ok, report, text))
        }

        Command::PEntails { kbfile, query } => {
            let file = load(kbfile)?;
            let q = resolve_query(&file, query)?;
            let verdict = p_entails(&file.kb, &q, &limits)?;
            let v = file.kb.vocab();
            let word = if verdict.entails { "entails" } else { "does not entail" };
            let mode = match verdict.mode {
                EntailmentMode::ViaSubsetSystem => "subset-system",
                EntailmentMode::TriviallyByAntecedent => "antecedent-implies-consequent",
            };
            let mut text = format!("{word} {}\nmode: {mode}\n", q.display(v));
            if let Some(s) = &verdict.s_star {
                writeln!(text, "S* = {}", set(&one_based(s))).unwrap();
                text.push_str(&listing(&file.kb, s));
            }
            let trace = cli.trace.then(|| trace_steps(&verdict.trace, v));
            if let Some(steps) = &trace {
                writeln!(text, "member {} is the query", file.kb.len() + 1).unwrap();
                render_trace(&mut text, steps);
            }
            let report = Report {
                command: "p-entails",
                verdict: Some(word.into()),
                mode: Some(mode.into()),
                s_star: Some(verdict.s_star.as_deref().map(one_based).unwrap_or_default()),
                query_slot: trace.as_ref().map(|_| file.kb.len() + 1),
                trace,
                ..Report::default()
            };
            Ok(finish(cli, verdict.entails, report, text))
        }

        Command::ClassK { kbfile, query } => {
            let file = load(kbfile)?;
            let q = resolve_query(&file, query)?;
            let k = class_k(&file.kb, &q, &limits)?;
            let members: Vec<Vec<usize>> = k.members.iter().map(|s| one_based(s)).collect();
            let mut text = format!("K has {} member(s)\n", members.len());
            for s in &members {
                writeln!(text, "  {}", set(s)).unwrap();
            }
            if let Some(g) = &k.greatest {
                writeln!(text, "greatest = {}", set(&one_based(g))).unwrap();
            }
            let nonempty = !members.is_empty();
            let report = Report {
                command: "class-k",
                verdict: Some(if nonempty { "nonempty" } else { "empty" }.into()),
                greatest: Some(k.greatest.as_deref().map(one_based).unwrap_or_default()),
                k_members: Some(members),
                ..Report::default()
            };
            Ok(finish(cli, nonempty, report, text))
        }

        Command::Classify { kbfile, query } => {
            let file = load(kbfile)?;
            let q = resolve_query(&file, query)?;
            let case = classify(&file.kb, &q, &limits)?;
            let (label, meaning) = match case {
                Trichotomy::A1Entails => ("A1", "(1, ..., 1, z) is coherent only for z = 1: the family entails the query"),
                Trichotomy::A2Interval => ("A2", "(1, ..., 1, z) is coherent for every z in [0, 1]"),
                Trichotomy::A3NegationEntails => ("A3", "(1, ..., 1, z) is coherent only for z = 0: the family entails the negated query"),
            };
            let report = Report {
                command: "classify",
                verdict: Some(label.into()),
                ..Report::default()
            };
            Ok(finish(cli, true, report, format!("{label}\n{meaning}\n")))
        }

        Command::Qc { kbfile, subset } => {
            let file = load(kbfile)?;
            let n = file.kb.len();
            let indices = match subset {
                Some(s) => parse_indices(s, n)?,
                None => (0..n).collect(),
            };
            let v = file.kb.vocab();
            let qc = quasi_conjunction_of(&file.kb, &indices)?;
            let raw = qc.display(v).to_string();
            let normalized = normalize(&qc, v).display(v).to_string();
            let text = format!(
                "C({}) = {raw}\nnormalized: {normalized}\n",
                set(&one_based(&indices))
            );
            let report = Report {
                command: "qc",
                quasi_conjunction: Some(QuasiConjunction {
                    subset: one_based(&indices),
                    raw,
                    normalized,
                }),
                ..Report::default()
            };
            Ok(finish(cli, true, report, text))
        }

        Command::Includes { first, second, atoms } => {
            let names: Vec<&str> = atoms
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .collect();
            let v = Vocabulary::new(names)?;
            v.check_guard(limits.max_atoms)?;
            let a = v.parse_conditional(first)?;
            let b = v.parse_conditional(second)?;
            let yes = gn_includes(&a, &b, &v);
            let word = if yes { "included" } else { "not included" };
            let report = Report {
                command: "includes",
                verdict: Some(word.into()),
                ..Report::default()
            };
            Ok(finish(cli, yes, report, format!("{word}\n")))
        }

        Command::Bounds { x, y } => {
            let bp = bounds_two(&parse_rational(x)?, &parse_rational(y)?)?;
            let assumption = "A, H, B, K logically independent";
            let text = format!("l = {}\nu = {}\nassuming {assumption}\n", bp.lower, bp.upper);
            let report = Report {
                command: "bounds",
                bounds: Some(Bounds {
                    l: bp.lower.to_string(),
                    u: bp.upper.to_string(),
                    assumption,
                }),
                ..Report::default()
            };
            Ok(finish(cli, true, report, text))
        }

        Command::Constituents { kbfile, assessment } => {
            let file = load(kbfile)?;
            let table = build_constituents(&file.kb, &limits)?;
            let v = file.kb.vocab();
            let p = assessment.as_deref().map(parse_list).transpose()?;
            if let Some(p) = &p {
                if p.len() != file.kb.len() {
                    return Err(cohere_core::Error::DimensionMismatch {
                        expected: file.kb.len(),
                        got: p.len(),
                    }
                    .into());
                }
            }
            let rows: Vec<Constituent> = table
                .constituents()
                .iter()
                .map(|c| Constituent {
                    outcomes: crate::report::outcome_string(c.outcomes()),
                    event: table.describe(c).display(v).to_string(),
                    q: c.outcomes()
                        .iter()
                        .enumerate()
                        .map(|(j, o)| match (o, &p) {
                            (Outcome::True, _) => "1".into(),
                            (Outcome::False, _) => "0".into(),
                            (Outcome::Void, Some(p)) => p[j].to_string(),
                            (Outcome::Void, None) => format!("p{}", j + 1),
                        })
                        .collect(),
                })
                .collect();
            let c0 = table.c0().map(|c| table.describe(c).display(v).to_string());
            let mut text = format!("m = {}\n", rows.len());
            render_constituents(&mut text, c0.as_deref(), &rows);
            let report = Report {
                command: "constituents",
                c0: Some(c0),
                constituents: Some(rows),
                ..Report::default()
            };
            Ok(finish(cli, true, report, text))
        }
    }
}
