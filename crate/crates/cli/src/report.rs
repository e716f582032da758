//! JSON report shapes and the shared text rendering of coherence traces.
//!
//! Indices in reports are 1-based.

use std::fmt::Write;

use cohere_core::coherence::Iteration;
use cohere_core::{Outcome, Rational, Vocabulary};
use serde::Serialize;

#[derive(Debug, Default, Serialize)]
pub struct Report {
    pub command: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mode: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s_star: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k_members: Option<Vec<Vec<usize>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub greatest: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quasi_conjunction: Option<QuasiConjunction>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bounds: Option<Bounds>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c0: Option<Option<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub constituents: Option<Vec<Constituent>>,
    /// Position of the query in traced families that append it.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub query_slot: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<Vec<TraceStep>>,
}

#[derive(Debug, Serialize)]
pub struct Certificate {
    pub members: Vec<usize>,
    pub assessment: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct QuasiConjunction {
    pub subset: Vec<usize>,
    pub raw: String,
    pub normalized: String,
}

#[derive(Debug, Serialize)]
pub struct Bounds {
    pub l: String,
    pub u: String,
    pub assumption: &'static str,
}

#[derive(Debug, Serialize)]
pub struct Constituent {
    pub outcomes: String,
    pub event: String,
    pub q: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct TraceStep {
    pub members: Vec<usize>,
    pub c0: Option<String>,
    pub constituents: Vec<Constituent>,
    pub feasible: bool,
    pub witness: Option<Vec<String>>,
    pub i0: Option<Vec<usize>>,
}

pub fn one_based(indices: &[usize]) -> Vec<usize> {
    indices.iter().map(|i| i + 1).collect()
}

pub fn strings(values: &[Rational]) -> Vec<String> {
    values.iter().map(ToString::to_string).collect()
}

pub fn outcome_string(outcomes: &[Outcome]) -> String {
    outcomes.iter().map(|o| o.symbol()).collect()
}

pub fn set(indices: &[usize]) -> String {
    let items: Vec<String> = indices.iter().map(ToString::to_string).collect();
    format!("{{{}}}", items.join(", "))
}

pub fn trace_steps(trace: &[Iteration], vocab: &Vocabulary) -> Vec<TraceStep> {
    trace
        .iter()
        .map(|it| TraceStep {
            members: one_based(&it.members),
            c0: it.table.c0().map(|c| it.table.describe(c).display(vocab).to_string()),
            constituents: it
                .table
                .constituents()
                .iter()
                .zip(&it.points.rows)
                .map(|(c, q)| Constituent {
                    outcomes: outcome_string(c.outcomes()),
                    event: it.table.describe(c).display(vocab).to_string(),
                    q: strings(q),
                })
                .collect(),
            feasible: it.feasible,
            witness: it.witness.as_deref().map(strings),
            i0: it.i0.as_deref().map(one_based),
        })
        .collect()
}

pub fn render_constituents(out: &mut String, c0: Option<&str>, rows: &[Constituent]) {
    match c0 {
        Some(e) => writeln!(out, "  C0  {e}").unwrap(),
        None => writeln!(out, "  C0  (empty)").unwrap(),
    }
    let width = rows.iter().map(|c| c.event.chars().count()).max().unwrap_or(0);
    for (h, c) in rows.iter().enumerate() {
        writeln!(
            out,
            "  C{:<3} {}  {:<width$}  Q = ({})",
            h + 1,
            c.outcomes,
            c.event,
            c.q.join(", ")
        )
        .unwrap();
    }
}

pub fn render_trace(out: &mut String, steps: &[TraceStep]) {
    for (k, step) in steps.iter().enumerate() {
        writeln!(out, "iteration {}: members {}", k + 1, set(&step.members)).unwrap();
        render_constituents(out, step.c0.as_deref(), &step.constituents);
        match (&step.witness, &step.i0) {
            (Some(w), Some(i0)) => {
                writeln!(out, "  system solvable, witness ({})", w.join(", ")).unwrap();
                writeln!(out, "  I0 = {}", set(i0)).unwrap();
            }
            _ => writeln!(out, "  system unsolvable").unwrap(),
        }
    }
}
