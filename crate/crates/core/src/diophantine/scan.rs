//! Exploratory comparison, for four or more space dimensions and one time
//! dimension, of bounded solvability against the sum-of-squares predicate
//! that characterizes the lower-dimensional cases.

use rayon::prelude::*;

use super::lattice::{norm_sqr, Signature};
use super::search::shared_table;
use super::squares::is_sum_of_squares;
use super::{DiophantineError, LatticeFrequency};

/// Per-frequency outcome of the scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScanOutcome {
    /// Predicate true and a bounded witness exists.
    AgreeSolvable,
    /// Predicate false and no bounded witness.
    AgreeUnsolvable,
    /// Predicate false but a bounded witness exists.
    Disagree,
    /// Predicate true but no witness within the bound.
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanReport {
    pub n1: usize,
    pub freq_box: i64,
    pub dir_bound: u32,
    /// Frequencies with `|t| ≤ |k|` that were examined.
    pub examined: usize,
    /// Frequencies skipped because `|t| > |k|`.
    pub excluded: usize,
    pub agree_solvable: usize,
    pub agree_unsolvable: usize,
    pub disagree: Vec<LatticeFrequency>,
    pub unknown: Vec<LatticeFrequency>,
}

impl ScanReport {
    pub fn agree(&self) -> usize {
        self.agree_solvable + self.agree_unsolvable
    }
}

/// The predicate "`|k|² − t²` is a sum of `n₁ − 1` integer squares".
pub fn squares_predicate(freq: &LatticeFrequency) -> bool {
    let d = norm_sqr(freq.k()) - norm_sqr(freq.p());
    d >= 0 && is_sum_of_squares(d as u64, freq.signature().n1 - 1)
}

/// Scans every frequency of signature `(n₁, 1)` in the box `max |entry| ≤
/// freq_box` that satisfies `|t| ≤ |k|`, comparing bounded solvability
/// (witness max-norm `≤ dir_bound`) with [`squares_predicate`].
///
/// The report only counts evidence; a `Disagree` entry would refute the
/// predicate, while `Unknown` entries are inconclusive.
pub fn conjecture_scan(
    n1: usize,
    freq_box: i64,
    dir_bound: u32,
) -> Result<ScanReport, DiophantineError> {
    if n1 < 4 {
        return Err(DiophantineError::ScanDimension(n1));
    }
    if freq_box < 1 || dir_bound < 1 {
        return Err(DiophantineError::InvalidBound);
    }
    let signature = Signature::new(n1, 1)?;
    let table = shared_table(signature, dir_bound);

    let candidates: Vec<LatticeFrequency> = LatticeFrequency::in_box(signature, freq_box).collect();
    let total = candidates.len();
    let outcomes: Vec<(LatticeFrequency, ScanOutcome)> = candidates
        .into_par_iter()
        .filter(|f| norm_sqr(f.p()) <= norm_sqr(f.k()))
        .map(|f| {
            let predicate = squares_predicate(&f);
            let solvable = table.first_witness(&f).is_some();
            let outcome = match (predicate, solvable) {
                (true, true) => ScanOutcome::AgreeSolvable,
                (false, false) => ScanOutcome::AgreeUnsolvable,
                (false, true) => ScanOutcome::Disagree,
                (true, false) => ScanOutcome::Unknown,
            };
            (f, outcome)
        })
        .collect();

    let mut report = ScanReport {
        n1,
        freq_box,
        dir_bound,
        examined: outcomes.len(),
        excluded: total - outcomes.len(),
        agree_solvable: 0,
        agree_unsolvable: 0,
        disagree: Vec::new(),
        unknown: Vec::new(),
    };
    for (f, outcome) in outcomes {
        match outcome {
            ScanOutcome::AgreeSolvable => report.agree_solvable += 1,
            ScanOutcome::AgreeUnsolvable => report.agree_unsolvable += 1,
            ScanOutcome::Disagree => report.disagree.push(f),
            ScanOutcome::Unknown => report.unknown.push(f),
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_small_dimension() {
        assert_eq!(
            conjecture_scan(3, 2, 5),
            Err(DiophantineError::ScanDimension(3))
        );
        assert_eq!(
            conjecture_scan(4, 0, 5),
            Err(DiophantineError::InvalidBound)
        );
    }

    #[test]
    fn tiny_scan_is_consistent() {
        let report = conjecture_scan(4, 1, 6).unwrap();
        assert_eq!(report.examined + report.excluded, 3usize.pow(5));
        assert_eq!(
            report.agree() + report.disagree.len() + report.unknown.len(),
            report.examined
        );
        assert!(report.disagree.is_empty());
    }
}
