//! Output records and their text, JSON-lines and CSV renderings.
//!
//! JSON keys are emitted in declaration order, so parsing a line and
//! serializing it again reproduces the same bytes.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;

use crate::apery::{apery_set, pseudo_frobenius, symmetry_class_with, SymmetryClass};
use crate::bounds::{BoundReport, WitnessKind, WitnessPartition};
use crate::enumerate::{CrosscheckReport, MinSlack, SweepSummary};
use crate::error::Result;
use crate::semigroup::{Invariants, Semigroup};

pub const SCHEMA_VERSION: &str = "1";
pub const CSV_HEADER: [&str; 6] = ["bound_id", "lhs", "rhs", "slack", "holds", "gens"];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(format!(
                "unknown format '{other}' (expected text, json or csv)"
            )),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct OutputRecord<T> {
    pub schema_version: &'static str,
    pub command: String,
    pub payload: T,
}

impl<T: Serialize> OutputRecord<T> {
    pub fn new(command: &str, payload: T) -> Self {
        OutputRecord {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            payload,
        }
    }

    /// One JSON line, newline-terminated.
    pub fn to_json_line(&self) -> String {
        let mut line = serde_json::to_string(self).expect("records serialize");
        line.push('\n');
        line
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct InfoPayload {
    pub gens: Vec<i64>,
    pub invariants: Invariants,
    pub type_t: i64,
    pub pseudo_frobenius: Vec<i64>,
    pub f2: Option<i64>,
    pub apery: Vec<i64>,
    pub symmetry_class: SymmetryClass,
}

impl InfoPayload {
    pub fn new(s: &Semigroup) -> Result<Self> {
        let pf = pseudo_frobenius(s)?;
        let class = symmetry_class_with(s, &pf)?;
        Ok(InfoPayload {
            gens: s.gens().to_vec(),
            invariants: s.invariants(),
            type_t: pf.type_t,
            pseudo_frobenius: pf.elements,
            f2: pf.f2,
            apery: apery_set(s, s.multiplicity())?.elements,
            symmetry_class: class,
        })
    }

    pub fn to_text(&self) -> String {
        let inv = &self.invariants;
        format!(
            "{}  g1={} e={} F={} genus={} n={} q={} t={} PF={} Ap={} class={:?}\n",
            angle(&self.gens),
            inv.multiplicity,
            inv.embedding_dim,
            inv.frobenius,
            inv.genus,
            inv.small_count,
            inv.q,
            self.type_t,
            braces(&self.pseudo_frobenius),
            braces(&self.apery),
            self.symmetry_class
        )
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckPayload {
    pub gens: Vec<i64>,
    pub reports: Vec<BoundReport>,
}

impl CheckPayload {
    pub fn to_text(&self) -> String {
        let rows: Vec<[String; 6]> = self
            .reports
            .iter()
            .map(|r| {
                [
                    r.bound_id.to_string(),
                    r.lhs.to_string(),
                    r.rhs.to_string(),
                    r.slack.to_string(),
                    if r.holds { "yes" } else { "NO" }.to_string(),
                    format!("{:?}", r.scope),
                ]
            })
            .collect();
        let mut out = format!("{}\n", angle(&self.gens));
        out.push_str(&table(
            &["bound", "lhs", "rhs", "slack", "holds", "scope"],
            &rows,
        ));
        out
    }

    pub fn to_csv(&self) -> String {
        csv_rows(self.reports.iter().map(|r| {
            [
                r.bound_id.to_string(),
                r.lhs.to_string(),
                r.rhs.to_string(),
                r.slack.to_string(),
                r.holds.to_string(),
                join(&self.gens),
            ]
        }))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct WitnessPayload {
    pub gens: Vec<i64>,
    pub witness: WitnessPartition,
}

impl WitnessPayload {
    pub fn to_text(&self) -> String {
        let w = &self.witness;
        let kind = match w.kind {
            WitnessKind::AperyPhi => "apery",
            WitnessKind::PfPhi => "pf",
        };
        let mut out = format!("{} witness {kind}\n", angle(&self.gens));
        if w.kind == WitnessKind::PfPhi {
            let _ = writeln!(out, "excluded {}", braces(&w.excluded));
        }
        if w.blocks.is_empty() {
            out.push_str("(empty partition)\n");
        }
        for b in &w.blocks {
            let pairs: Vec<String> = b.pairs.iter().map(|(s, g)| format!("({s},{g})")).collect();
            let _ = writeln!(out, "{} → [{}]", b.source, pairs.join(","));
        }
        let _ = writeln!(out, "{} ≤ {} ≤ {}", w.lower, w.total, w.upper);
        out
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepPayload {
    pub summary: SweepSummary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub crosscheck: Option<CrosscheckReport>,
}

impl SweepPayload {
    pub fn to_text(&self) -> String {
        let s = &self.summary;
        let mut out = String::new();
        let _ = writeln!(out, "max genus        {}", s.max_genus);
        let _ = writeln!(out, "counts           {:?}", s.counts);
        let _ = writeln!(out, "checked          {}", s.checked);
        let _ = writeln!(out, "almost-symmetric {}", s.almost_symmetric);
        let _ = writeln!(out, "symmetric        {}", s.symmetric);
        let _ = writeln!(out, "pseudo-symmetric {}", s.pseudo_symmetric);
        let _ = writeln!(
            out,
            "2n+t=F+2 only    {}{}",
            s.identity_not_almost_symmetric,
            s.identity_not_almost_symmetric_example
                .as_ref()
                .map(|g| format!(" (e.g. {})", angle(g)))
                .unwrap_or_default()
        );
        let _ = writeln!(out, "corollary chain  {}", s.corollary_chain_checked);
        let _ = writeln!(out, "witnesses        {}", s.witnesses_checked);
        out.push('\n');
        out.push_str(&min_slack_table(&s.min_slack));
        out.push('\n');
        let _ = writeln!(out, "violations       {}", s.violations.len());
        for v in &s.violations {
            let _ = writeln!(
                out,
                "  genus {} {} {}: {}",
                v.genus,
                angle(&v.gens),
                v.check,
                v.detail
            );
        }
        if let Some(c) = &self.crosscheck {
            out.push('\n');
            out.push_str(&crosscheck_text(c));
        }
        out
    }

    pub fn to_csv(&self) -> String {
        min_slack_csv(&self.summary.min_slack)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ExtremalPayload {
    pub max_genus: u32,
    pub checked: u64,
    pub min_slack: Vec<MinSlack>,
    pub violations: usize,
}

impl ExtremalPayload {
    pub fn new(s: &SweepSummary) -> Self {
        ExtremalPayload {
            max_genus: s.max_genus,
            checked: s.checked,
            min_slack: s.min_slack.clone(),
            violations: s.violations.len(),
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "max genus {}, {} semigroups checked, {} violations\n",
            self.max_genus, self.checked, self.violations
        );
        out.push_str(&min_slack_table(&self.min_slack));
        for m in &self.min_slack {
            let list: Vec<String> = m.attainers.iter().map(|g| angle(g)).collect();
            let _ = writeln!(out, "{} slack {}: {}", m.bound_id, m.slack, list.join(" "));
        }
        out
    }

    pub fn to_csv(&self) -> String {
        min_slack_csv(&self.min_slack)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CountPayload {
    pub max_genus: u32,
    pub counts: Vec<u64>,
    pub total: u64,
}

impl CountPayload {
    pub fn to_text(&self) -> String {
        let rows: Vec<[String; 2]> = self
            .counts
            .iter()
            .enumerate()
            .map(|(g, c)| [g.to_string(), c.to_string()])
            .collect();
        let mut out = table(&["genus", "count"], &rows);
        let _ = writeln!(out, "total {}", self.total);
        out
    }
}

fn min_slack_table(entries: &[MinSlack]) -> String {
    let rows: Vec<[String; 6]> = entries
        .iter()
        .map(|m| {
            [
                m.bound_id.to_string(),
                m.slack.to_string(),
                m.lhs.to_string(),
                m.rhs.to_string(),
                m.attained_by.to_string(),
                angle(m.gens()),
            ]
        })
        .collect();
    table(
        &["bound", "min slack", "lhs", "rhs", "attained by", "least"],
        &rows,
    )
}

fn min_slack_csv(entries: &[MinSlack]) -> String {
    csv_rows(entries.iter().map(|m| {
        [
            m.bound_id.to_string(),
            m.lhs.to_string(),
            m.rhs.to_string(),
            m.slack.to_string(),
            m.holds.to_string(),
            join(m.gens()),
        ]
    }))
}

fn crosscheck_text(c: &CrosscheckReport) -> String {
    let rows: Vec<[String; 4]> = c
        .per_genus
        .iter()
        .map(|g| {
            [
                g.genus.to_string(),
                g.tree.to_string(),
                g.oracle.to_string(),
                if g.equal { "yes" } else { "NO" }.to_string(),
            ]
        })
        .collect();
    let mut out = table(&["genus", "tree", "oracle", "equal"], &rows);
    let _ = writeln!(
        out,
        "oracle crosscheck {}",
        if c.equal { "passed" } else { "FAILED" }
    );
    out
}

fn csv_rows<I: IntoIterator<Item = [String; 6]>>(rows: I) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER).expect("in-memory write");
    for row in rows {
        w.write_record(&row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
}

/// Left-aligned first column, right-aligned numbers.
fn table<const N: usize>(header: &[&str; N], rows: &[[String; N]]) -> String {
    let mut widths = header.map(str::len);
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    let mut line = |cells: Vec<&str>| {
        let parts: Vec<String> = cells
            .iter()
            .zip(widths)
            .enumerate()
            .map(|(i, (c, w))| {
                if i == 0 {
                    format!("{c:<w$}")
                } else {
                    format!("{c:>w$}")
                }
            })
            .collect();
        out.push_str(parts.join("  ").trim_end());
        out.push('\n');
    };
    line(header.to_vec());
    for row in rows {
        line(row.iter().map(String::as_str).collect());
    }
    out
}

fn join(xs: &[i64]) -> String {
    xs.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
}

pub fn angle(xs: &[i64]) -> String {
    format!("<{}>", join(xs))
}

fn braces(xs: &[i64]) -> String {
    format!("{{{}}}", join(xs))
}
