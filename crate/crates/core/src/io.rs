//! CSV and JSON file formats.
//!
//! Writers produce byte-identical output for identical inputs. Readers parse
//! the same formats back and validate every field, so they are safe to point
//! at untrusted files.

use std::io::{Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::engine::Trace;
use crate::error::{Error, Result};
use crate::hardness::HardnessReport;
use crate::lab::{mean_se, Aggregate, AggregateRow, ConfigEcho};
use crate::model::{GapTable, Instance, SafetyPartition, Solution, SolutionClass};

pub const TRACE_HEADER: [&str; 8] = [
    "run_id",
    "t",
    "phase",
    "subsolution",
    "reward",
    "pseudo_regret_cum",
    "realized_regret_cum",
    "unsafe",
];
pub const AGGREGATE_HEADER: [&str; 4] = ["t", "mean_regret", "se_regret", "violation_fraction"];
pub const HARDNESS_HEADER: [&str; 3] = ["r_prime", "H", "T_prime_r"];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceCsvRow {
    pub run_id: u64,
    pub t: u64,
    pub phase: u64,
    /// 1-based items joined by `;`.
    pub subsolution: String,
    pub reward: f64,
    pub pseudo_regret_cum: f64,
    pub realized_regret_cum: f64,
    #[serde(rename = "unsafe")]
    pub unsafe_pull: u8,
}

impl TraceCsvRow {
    pub fn solution(&self) -> Result<Solution> {
        Solution::decode(&self.subsolution)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HardnessCsvRow {
    pub r_prime: usize,
    #[serde(rename = "H")]
    pub h: f64,
    #[serde(rename = "T_prime_r")]
    pub t_prime_r: f64,
}

fn check_header(rdr: &mut csv::Reader<impl Read>, want: &[&str]) -> Result<()> {
    let got = rdr.headers()?;
    if got.iter().ne(want.iter().copied()) {
        return Err(Error::Parse(format!(
            "expected header {:?}, found {:?}",
            want.join(","),
            got
        )));
    }
    Ok(())
}

fn writer<W: Write>(w: W) -> csv::Writer<W> {
    csv::WriterBuilder::new().has_headers(true).from_writer(w)
}

/// Writes every step of every trace, in the order given.
pub fn write_trace_csv<W: Write>(w: W, traces: &[Trace]) -> Result<()> {
    let mut wr = csv::WriterBuilder::new().has_headers(false).from_writer(w);
    wr.write_record(TRACE_HEADER)?;
    for tr in traces {
        for s in &tr.steps {
            wr.serialize(TraceCsvRow {
                run_id: tr.run_id,
                t: s.t,
                phase: s.phase,
                subsolution: s.subsolution.encode(),
                reward: s.reward,
                pseudo_regret_cum: s.pseudo_regret_cum,
                realized_regret_cum: s.realized_regret_cum,
                unsafe_pull: s.unsafe_pull as u8,
            })?;
        }
    }
    wr.flush()?;
    Ok(())
}

pub fn read_trace_csv<R: Read>(r: R) -> Result<Vec<TraceCsvRow>> {
    let mut rdr = csv::ReaderBuilder::new().has_headers(true).from_reader(r);
    check_header(&mut rdr, &TRACE_HEADER)?;
    let mut out = Vec::new();
    for row in rdr.deserialize() {
        let row: TraceCsvRow = row?;
        if row.unsafe_pull > 1 {
            return Err(Error::Parse(format!(
                "unsafe flag must be 0 or 1, got {}",
                row.unsafe_pull
            )));
        }
        if row.solution()?.is_empty() {
            return Err(Error::Parse(format!("empty sub-solution at t = {}", row.t)));
        }
        out.push(row);
    }
    Ok(out)
}

pub fn write_aggregate_csv<W: Write>(w: W, agg: &Aggregate) -> Result<()> {
    let mut wr = csv::WriterBuilder::new().has_headers(false).from_writer(w);
    wr.write_record(AGGREGATE_HEADER)?;
    for row in agg.rows() {
        wr.serialize(row)?;
    }
    wr.flush()?;
    Ok(())
}

pub fn read_aggregate_csv<R: Read>(r: R) -> Result<Vec<AggregateRow>> {
    let mut rdr = csv::ReaderBuilder::new().has_headers(true).from_reader(r);
    check_header(&mut rdr, &AGGREGATE_HEADER)?;
    rdr.deserialize().map(|r| r.map_err(Error::from)).collect()
}

pub fn hardness_rows(report: &HardnessReport) -> Vec<HardnessCsvRow> {
    report
        .rows
        .iter()
        .map(|r| HardnessCsvRow {
            r_prime: r.r_prime,
            h: r.h,
            t_prime_r: r.t_prime,
        })
        .collect()
}

pub fn write_hardness_csv<W: Write>(w: W, report: &HardnessReport) -> Result<()> {
    let mut wr = csv::WriterBuilder::new().has_headers(false).from_writer(w);
    wr.write_record(HARDNESS_HEADER)?;
    for row in hardness_rows(report) {
        wr.serialize(row)?;
    }
    wr.flush()?;
    Ok(())
}

pub fn read_hardness_csv<R: Read>(r: R) -> Result<Vec<HardnessCsvRow>> {
    let mut rdr = csv::ReaderBuilder::new().has_headers(true).from_reader(r);
    check_header(&mut rdr, &HARDNESS_HEADER)?;
    rdr.deserialize().map(|r| r.map_err(Error::from)).collect()
}

pub fn read_hardness_report(text: &str) -> Result<HardnessReport> {
    let rep: HardnessReport = serde_json::from_str(text)?;
    if rep.rows.len() != rep.big_q || rep.rows.iter().enumerate().any(|(i, r)| r.r_prime != i + 1) {
        return Err(Error::Parse(
            "hardness rows must cover r' = 1..Q in order".into(),
        ));
    }
    Ok(rep)
}

/// One solution per row with its class, moments and gaps.
pub fn write_solution_gaps_csv<W: Write>(
    w: W,
    inst: &Instance,
    part: &SafetyPartition,
    gaps: &GapTable,
) -> Result<()> {
    #[derive(Serialize)]
    struct Row<'a> {
        solution: String,
        class: &'a str,
        mean: f64,
        variance: f64,
        mean_gap: f64,
        var_gap: f64,
    }
    let mut wr = writer(w);
    for (k, s) in inst.family().members().iter().enumerate() {
        let (mean, variance) = inst.solution_moments(s)?;
        wr.serialize(Row {
            solution: s.encode(),
            class: class_name(part.class_of(k)),
            mean,
            variance,
            mean_gap: gaps.solutions[k].mean_gap,
            var_gap: gaps.solutions[k].var_gap,
        })?;
    }
    wr.flush()?;
    Ok(())
}

/// One item per row; empty cells mark gaps over empty sets.
pub fn write_item_gaps_csv<W: Write>(w: W, gaps: &GapTable) -> Result<()> {
    let mut wr = writer(w);
    wr.write_record([
        "item",
        "safe_suboptimal_min",
        "unsafe_suboptimal_min",
        "tension",
        "risky_var_min",
        "psi",
        "psi_prime",
        "phi",
    ])?;
    let cell = |v: Option<f64>| v.map_or_else(String::new, |x| x.to_string());
    for (i, g) in gaps.items.iter().enumerate() {
        wr.write_record([
            (i + 1).to_string(),
            cell(g.safe_suboptimal_min),
            cell(g.unsafe_suboptimal_min),
            cell(g.tension),
            cell(g.risky_var_min),
            cell(g.psi),
            cell(g.psi_prime),
            cell(g.phi),
        ])?;
    }
    wr.flush()?;
    Ok(())
}

pub fn class_name(c: SolutionClass) -> &'static str {
    match c {
        SolutionClass::Optimal => "optimal",
        SolutionClass::SafeSuboptimal => "safe_suboptimal",
        SolutionClass::Risky => "risky",
        SolutionClass::UnsafeSuboptimal => "unsafe_suboptimal",
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MeanSe {
    pub mean: f64,
    pub se: f64,
}

/// The `summary.json` document written by a simulation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimulationSummary {
    pub config: ConfigEcho,
    pub runs: usize,
    pub any_violation_rate: f64,
    pub any_violation_se: f64,
    pub final_pseudo_regret: MeanSe,
    pub final_realized_regret: MeanSe,
    pub total_unsafe_pulls: u64,
    pub mean_safeness_regret: f64,
    pub mean_suboptimality_regret: f64,
    pub mean_split_phases: f64,
    pub warnings: Vec<String>,
}

impl SimulationSummary {
    pub fn new(
        config: ConfigEcho,
        traces: &[Trace],
        agg: &Aggregate,
        warnings: Vec<String>,
    ) -> Self {
        let pseudo: Vec<f64> = traces.iter().map(|t| t.summary.pseudo_regret).collect();
        let realized: Vec<f64> = traces.iter().map(|t| t.summary.realized_regret).collect();
        let (pm, ps) = mean_se(&pseudo);
        let (rm, rs) = mean_se(&realized);
        SimulationSummary {
            config,
            runs: traces.len(),
            any_violation_rate: agg.any_violation_rate,
            any_violation_se: agg.any_violation_se,
            final_pseudo_regret: MeanSe { mean: pm, se: ps },
            final_realized_regret: MeanSe { mean: rm, se: rs },
            total_unsafe_pulls: traces.iter().map(|t| t.summary.unsafe_pulls).sum(),
            mean_safeness_regret: agg.mean_safeness_regret,
            mean_suboptimality_regret: agg.mean_suboptimality_regret,
            mean_split_phases: agg.mean_split_phases,
            warnings,
        }
    }
}

pub fn read_summary(text: &str) -> Result<SimulationSummary> {
    Ok(serde_json::from_str(text)?)
}

/// Pretty JSON with a trailing newline.
pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    std::fs::write(path, text)?;
    Ok(())
}

pub fn create(path: &Path) -> Result<std::io::BufWriter<std::fs::File>> {
    Ok(std::io::BufWriter::new(std::fs::File::create(path)?))
}
