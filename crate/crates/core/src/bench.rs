//! Delay measurements in work units (node expansions plus candidates).

use std::fmt::Write as _;

use thiserror::Error;

use crate::cdom::{enumerate_mcds, CdomError};
use crate::extensions::{domination_stream, DominationOracle, ExtensionError, NeighborhoodMode};
use crate::model::Graph;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BenchError {
    #[error(transparent)]
    Extension(#[from] ExtensionError),
    #[error(transparent)]
    Cdom(#[from] CdomError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Problem {
    Mds,
    Tds,
    Cds,
}

impl Problem {
    pub fn label(self) -> &'static str {
        match self {
            Problem::Mds => "mds",
            Problem::Tds => "tds",
            Problem::Cds => "cds",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DelayRow {
    pub family: String,
    pub problem: Problem,
    pub n: usize,
    pub solutions: usize,
    /// Enumeration stopped at the solution limit.
    pub truncated: bool,
    pub max_delay: u64,
    pub mean_delay: f64,
    pub max_pool: usize,
    pub pool_bound: usize,
    /// Cumulative work at each emission (kept for `cds`).
    pub work_per_solution: Vec<u64>,
}

impl DelayRow {
    pub fn delay_over_n4(&self) -> f64 {
        self.max_delay as f64 / (self.n as f64).powi(4)
    }
}

/// Runs one enumeration and records its gaps. `limit` caps the number of
/// solutions taken; the gap after the last taken solution is not counted when
/// the run is truncated.
pub fn measure(family: &str, g: &Graph, problem: Problem, limit: Option<usize>) -> Result<DelayRow, BenchError> {
    let n = g.len();
    let cap = limit.unwrap_or(usize::MAX);
    let mut gaps: Vec<u64> = Vec::new();
    let mut cumulative: Vec<u64> = Vec::new();
    let mut max_pool = 0;
    let mut truncated = false;
    match problem {
        Problem::Mds | Problem::Tds => {
            let mode = if problem == Problem::Mds {
                NeighborhoodMode::Closed
            } else {
                NeighborhoodMode::Open
            };
            let mut stream = domination_stream(g, mode, DominationOracle::new(g, mode))?;
            let mut last = 0u64;
            loop {
                if gaps.len() >= cap {
                    truncated = true;
                    break;
                }
                match stream.next() {
                    Some(item) => {
                        item.map_err(ExtensionError::from)?;
                        let work = stream.stats().work() as u64;
                        gaps.push(work - last);
                        cumulative.push(work);
                        last = work;
                    }
                    None => {
                        gaps.push(stream.stats().work() as u64 - last);
                        break;
                    }
                }
            }
            max_pool = stream.stats().max_pool;
        }
        Problem::Cds => {
            let stream = enumerate_mcds(g)?;
            let mut last = 0u64;
            for t in stream {
                if cumulative.len() >= cap {
                    truncated = true;
                    break;
                }
                gaps.push(t.work - last);
                cumulative.push(t.work);
                last = t.work;
            }
        }
    }
    let solutions = cumulative.len();
    let max_delay = gaps.iter().copied().max().unwrap_or(0);
    let mean_delay = if gaps.is_empty() {
        0.0
    } else {
        gaps.iter().sum::<u64>() as f64 / gaps.len() as f64
    };
    Ok(DelayRow {
        family: family.to_owned(),
        problem,
        n,
        solutions,
        truncated,
        max_delay,
        mean_delay,
        max_pool,
        pool_bound: n * n + n + 2,
        work_per_solution: if problem == Problem::Cds { cumulative } else { Vec::new() },
    })
}

pub const CSV_HEADER: &str = "family,problem,n,solutions,truncated,max_delay,mean_delay,max_pool,pool_bound,delay_over_n4,work_per_solution";

pub fn to_csv(rows: &[DelayRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        let works: Vec<String> = r.work_per_solution.iter().map(u64::to_string).collect();
        writeln!(
            out,
            "{},{},{},{},{},{},{:.3},{},{},{:.6e},{}",
            r.family,
            r.problem.label(),
            r.n,
            r.solutions,
            r.truncated,
            r.max_delay,
            r.mean_delay,
            r.max_pool,
            r.pool_bound,
            r.delay_over_n4(),
            works.join(";")
        )
        .expect("writing to a String");
    }
    out
}
