//! Property suites over a corpus, single queries, and reports.

mod query;
mod report;
mod suites;

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use crate::corpus::Corpus;
use crate::error::{Error, Result};

pub use query::{parse_generator_list, query, QueryOutcome};
pub use report::{emit_report, render_all, Case, Outcome, Report, Totals};
pub use suites::FACTORISATION_BUDGET;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SuiteId {
    Lemma1_1,
    Lemma1_2,
    Lemma1_3Fwd,
    Lemma1_4,
    Lemma1_5,
    Lemma2_1,
    Lemma2_2,
    Lemma2_3,
    Lemma2_4,
    ExamplesPaper,
    Theorem3_1,
    Theorem3_2,
    Theorem3_3,
    Theorem3_4,
    OracleEquiv,
    Lemma3_1,
    Lemma3_2,
}

impl SuiteId {
    pub const ALL: [SuiteId; 17] = [
        SuiteId::Lemma1_1,
        SuiteId::Lemma1_2,
        SuiteId::Lemma1_3Fwd,
        SuiteId::Lemma1_4,
        SuiteId::Lemma1_5,
        SuiteId::Lemma2_1,
        SuiteId::Lemma2_2,
        SuiteId::Lemma2_3,
        SuiteId::Lemma2_4,
        SuiteId::ExamplesPaper,
        SuiteId::Theorem3_1,
        SuiteId::Theorem3_2,
        SuiteId::Theorem3_3,
        SuiteId::Theorem3_4,
        SuiteId::OracleEquiv,
        SuiteId::Lemma3_1,
        SuiteId::Lemma3_2,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            SuiteId::Lemma1_1 => "LEMMA_1_1",
            SuiteId::Lemma1_2 => "LEMMA_1_2",
            SuiteId::Lemma1_3Fwd => "LEMMA_1_3_FWD",
            SuiteId::Lemma1_4 => "LEMMA_1_4",
            SuiteId::Lemma1_5 => "LEMMA_1_5",
            SuiteId::Lemma2_1 => "LEMMA_2_1",
            SuiteId::Lemma2_2 => "LEMMA_2_2",
            SuiteId::Lemma2_3 => "LEMMA_2_3",
            SuiteId::Lemma2_4 => "LEMMA_2_4",
            SuiteId::ExamplesPaper => "EXAMPLES_PAPER",
            SuiteId::Theorem3_1 => "THEOREM_3_1",
            SuiteId::Theorem3_2 => "THEOREM_3_2",
            SuiteId::Theorem3_3 => "THEOREM_3_3",
            SuiteId::Theorem3_4 => "THEOREM_3_4",
            SuiteId::OracleEquiv => "ORACLE_EQUIV",
            SuiteId::Lemma3_1 => "LEMMA_3_1",
            SuiteId::Lemma3_2 => "LEMMA_3_2",
        }
    }
}

impl fmt::Display for SuiteId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SuiteId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm = s.trim().to_ascii_uppercase().replace('-', "_");
        SuiteId::ALL
            .into_iter()
            .find(|id| id.as_str() == norm)
            .ok_or_else(|| Error::argument(format!("unknown suite {s:?}")))
    }
}

/// Parses `all` or a single suite id.
pub fn parse_suite_selection(s: &str) -> Result<Vec<SuiteId>> {
    if s.trim().eq_ignore_ascii_case("all") {
        Ok(SuiteId::ALL.to_vec())
    } else {
        Ok(vec![s.parse()?])
    }
}

/// Runs one suite. Cases come out in corpus order regardless of how many
/// worker threads are used.
pub fn run_suite(id: SuiteId, corpus: &Corpus, t_values: &[u32]) -> Result<Report> {
    if corpus.is_empty() {
        return Err(Error::argument("corpus is empty"));
    }
    if t_values.is_empty() || t_values.iter().any(|&t| !(1..=6).contains(&t)) {
        return Err(Error::argument(
            "t values must be a nonempty subset of 1..=6",
        ));
    }
    let mut ts = t_values.to_vec();
    ts.sort_unstable();
    ts.dedup();
    let start = Instant::now();
    let cases = suites::run(id, corpus, &ts);
    Ok(Report {
        suite: id,
        cases,
        wall: start.elapsed(),
    })
}

/// Runs several suites on a pool of `jobs` threads (0 means the default).
pub fn verify(
    ids: &[SuiteId],
    corpus: &Corpus,
    t_values: &[u32],
    jobs: usize,
) -> Result<Vec<Report>> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::argument(format!("thread pool: {e}")))?;
    pool.install(|| {
        ids.iter()
            .map(|&id| run_suite(id, corpus, t_values))
            .collect()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for id in SuiteId::ALL {
            assert_eq!(id.as_str().parse::<SuiteId>().unwrap(), id);
        }
        assert_eq!("lemma-2-1".parse::<SuiteId>().unwrap(), SuiteId::Lemma2_1);
        assert!("LEMMA_9_9".parse::<SuiteId>().is_err());
        assert_eq!(parse_suite_selection("all").unwrap().len(), 17);
    }
}
