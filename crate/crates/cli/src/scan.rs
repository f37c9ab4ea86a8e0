use std::io::Write;

use anyhow::{bail, Result};
use axkatz::bounds::{main_bound, BoundReport, Target, TargetSpec};
use axkatz::partitions::Partition;
use serde::Serialize;

use crate::parse;

/// Fixed CSV columns of a scan.
pub const COLUMNS: [&str; 8] = ["p", "alpha", "targets", "A", "B", "Abreve", "case", "bound"];

/// Cartesian grid of primes, partitions and target lists.
pub struct ScanGrid {
    pub primes: Vec<u64>,
    pub partitions: Vec<Partition>,
    pub targets: Vec<Vec<Target>>,
}

#[derive(Serialize)]
pub struct ScanRow {
    pub p: u64,
    pub alpha: String,
    pub targets: String,
    #[serde(rename = "A")]
    pub a: String,
    #[serde(rename = "B")]
    pub b: String,
    #[serde(rename = "Abreve")]
    pub a_breve: String,
    pub case: String,
    pub bound: u64,
}

impl ScanRow {
    fn new(report: &BoundReport) -> Self {
        let alpha: Vec<String> = report
            .alpha_partition
            .parts()
            .iter()
            .map(u32::to_string)
            .collect();
        let targets: Vec<String> = report.targets.iter().map(Target::to_string).collect();
        ScanRow {
            p: report.p,
            alpha: alpha.join(","),
            targets: targets.join(","),
            a: report.a_measure.to_string(),
            b: report.b_measure.to_string(),
            a_breve: report.a_breve.to_string(),
            case: serde_json::to_value(report.case)
                .ok()
                .and_then(|v| v.as_str().map(str::to_owned))
                .unwrap_or_default(),
            bound: report.bound,
        }
    }

    fn fields(&self) -> [String; 8] {
        [
            self.p.to_string(),
            self.alpha.clone(),
            self.targets.clone(),
            self.a.clone(),
            self.b.clone(),
            self.a_breve.clone(),
            self.case.clone(),
            self.bound.to_string(),
        ]
    }
}

impl ScanGrid {
    pub fn new(
        primes: Vec<u64>,
        max_alpha: u32,
        max_parts: usize,
        targets: &[String],
        max_beta: u32,
        max_d: u64,
        limit: u64,
    ) -> Result<Self> {
        let partitions = parse::partitions_up_to(max_alpha, max_parts);
        let targets: Vec<Vec<Target>> = if targets.is_empty() {
            (1..=max_beta)
                .flat_map(|beta| (1..=max_d).map(move |d| vec![Target { beta, d }]))
                .collect()
        } else {
            targets.iter().map(|t| parse::targets(t)).collect::<Result<_>>()?
        };
        let size = (primes.len() as u64)
            .saturating_mul(partitions.len() as u64)
            .saturating_mul(targets.len() as u64);
        if size == 0 {
            bail!("the scan grid is empty");
        }
        if size > limit {
            bail!("the scan grid has {size} points, above the limit {limit}");
        }
        Ok(ScanGrid {
            primes,
            partitions,
            targets,
        })
    }

    pub fn rows(&self) -> Result<Vec<ScanRow>> {
        let mut rows = Vec::new();
        for &p in &self.primes {
            for alpha in &self.partitions {
                for t in &self.targets {
                    let spec = TargetSpec::new(p, t.clone())?;
                    rows.push(ScanRow::new(&main_bound(p, alpha, &spec)?));
                }
            }
        }
        Ok(rows)
    }
}

pub fn write_csv(rows: &[ScanRow], out: impl Write) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(COLUMNS)?;
    for r in rows {
        w.write_record(r.fields())?;
    }
    w.flush()?;
    Ok(())
}
