//! Per-row and per-order counts of good involutions of the nontrivial
//! linear quandles, with CSV rendering.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use num_bigint::BigUint;

use crate::closed_forms::{
    a202828, reference_count, reference_total, SequenceReport, SequenceSource,
};
use crate::constructors::linear_context;
use crate::error::{Error, Result};
use crate::group::gcd;
use crate::involution::{enumerate_theorem, EnumOptions, Method};

#[derive(Debug, Clone, Copy)]
pub struct TableConfig {
    pub max_n: usize,
    pub workers: usize,
    /// Per-row search budget; `None` means unlimited.
    pub time_budget: Option<Duration>,
}

impl TableConfig {
    pub fn new(max_n: usize) -> Self {
        TableConfig {
            max_n,
            workers: 1,
            time_budget: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RowOutcome {
    Counted { count: BigUint, method: Method },
    /// The search ran out of budget and no closed form applies.
    Unfinished,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableRow {
    pub n: usize,
    /// Canonical residue in `0..n`.
    pub k: usize,
    pub outcome: RowOutcome,
}

impl TableRow {
    pub fn count(&self) -> Option<&BigUint> {
        match &self.outcome {
            RowOutcome::Counted { count, .. } => Some(count),
            RowOutcome::Unfinished => None,
        }
    }

    pub fn method(&self) -> Option<Method> {
        match &self.outcome {
            RowOutcome::Counted { method, .. } => Some(*method),
            RowOutcome::Unfinished => None,
        }
    }

    /// `k` as an integer in `(-n/2, n)`, with `n - 1` shown as `-1`.
    pub fn signed_k(&self) -> i64 {
        if self.k + 1 == self.n {
            -1
        } else {
            self.k as i64
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearTable {
    /// Rows with a nonzero (or unknown) count, `k = -1` first within each
    /// order, then ascending `k`.
    pub rows: Vec<TableRow>,
    /// `(n, total)`; `None` when some row of that order is unfinished.
    pub totals: Vec<(usize, Option<BigUint>)>,
}

/// Nontrivial units of `Z/nZ` in table order: `n - 1` first, then the rest
/// ascending.
pub fn nontrivial_units(n: usize) -> Vec<usize> {
    if n < 3 {
        return Vec::new();
    }
    let mut units = vec![n - 1];
    units.extend((2..n - 1).filter(|&k| gcd(n, k) == 1));
    units
}

/// Whether `Λ(n, k)` is `Λ(4m, 2m+1)` for some `m`; returns `m`.
pub fn closed_form_index(n: usize, k: usize) -> Option<u64> {
    (n.is_multiple_of(4) && k == n / 2 + 1).then_some((n / 4) as u64)
}

/// Counts one row by the parametrized search, falling back to the closed
/// form when the budget runs out and one applies.
pub fn count_row(n: usize, k: usize, config: &TableConfig) -> Result<TableRow> {
    let ctx = linear_context(n, k as i64)?;
    let opts = EnumOptions::count_only()
        .with_workers(config.workers)
        .with_deadline(config.time_budget.map(|b| Instant::now() + b));
    let outcome = match enumerate_theorem(&ctx, &opts) {
        Ok(set) => RowOutcome::Counted {
            count: BigUint::from(set.count),
            method: Method::Theorem,
        },
        Err(Error::BudgetExceeded { .. }) => match closed_form_index(n, k) {
            Some(m) => RowOutcome::Counted {
                count: a202828(m),
                method: Method::ClosedForm,
            },
            None => RowOutcome::Unfinished,
        },
        Err(e) => return Err(e),
    };
    Ok(TableRow { n, k, outcome })
}

pub fn linear_table(config: &TableConfig) -> Result<LinearTable> {
    if config.max_n < 3 {
        return Err(Error::Domain("tables start at order 3".into()));
    }
    let mut rows = Vec::new();
    let mut totals = Vec::new();
    for n in 3..=config.max_n {
        let mut total = Some(BigUint::default());
        for k in nontrivial_units(n) {
            let row = count_row(n, k, config)?;
            match row.count() {
                Some(c) if *c == BigUint::default() => continue,
                Some(c) => {
                    if let Some(t) = total.as_mut() {
                        *t += c;
                    }
                }
                None => total = None,
            }
            rows.push(row);
        }
        totals.push((n, total));
    }
    Ok(LinearTable { rows, totals })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowMismatch {
    pub n: usize,
    pub k: usize,
    pub expected: Option<u64>,
    pub found: Option<BigUint>,
}

impl LinearTable {
    /// `n,k,count,method,note`; the note marks `k = -1`.
    pub fn rows_csv(&self) -> String {
        let mut out = String::from("n,k,count,method,note\n");
        for row in &self.rows {
            let count = row.count().map(ToString::to_string).unwrap_or_default();
            let method = row.method().map_or("unfinished", Method::as_str);
            let note = if row.signed_k() == -1 { "k=-1" } else { "" };
            let _ = writeln!(out, "{},{},{},{},{}", row.n, row.k, count, method, note);
        }
        out
    }

    /// `n,total`.
    pub fn totals_csv(&self) -> String {
        let mut out = String::from("n,total\n");
        for (n, total) in &self.totals {
            let total = total.as_ref().map(ToString::to_string).unwrap_or_default();
            let _ = writeln!(out, "{n},{total}");
        }
        out
    }

    pub fn row(&self, n: usize, k: usize) -> Option<&TableRow> {
        self.rows.iter().find(|r| r.n == n && r.k == k)
    }

    pub fn total(&self, n: usize) -> Option<&BigUint> {
        self.totals
            .iter()
            .find(|(m, _)| *m == n)
            .and_then(|(_, t)| t.as_ref())
    }

    /// Rows that differ from the reference counts, including reference rows
    /// missing here. Orders above the reference range are skipped.
    pub fn row_mismatches(&self) -> Vec<RowMismatch> {
        let mut out = Vec::new();
        let max_n = self.totals.last().map_or(0, |t| t.0);
        for row in &self.rows {
            if row.n > 29 {
                continue;
            }
            let expected = reference_count(row.n, row.k);
            if expected.map(BigUint::from).as_ref() != row.count() {
                out.push(RowMismatch {
                    n: row.n,
                    k: row.k,
                    expected,
                    found: row.count().cloned(),
                });
            }
        }
        for &(n, k, c) in crate::closed_forms::REFERENCE_LINEAR_COUNTS {
            let k = k.rem_euclid(n as i64) as usize;
            if n <= max_n && self.row(n, k).is_none() {
                out.push(RowMismatch {
                    n,
                    k,
                    expected: Some(c),
                    found: None,
                });
            }
        }
        out
    }

    /// Per-order totals as a sequence, with mismatches against the
    /// reference totals.
    pub fn totals_report(&self) -> SequenceReport {
        let mut terms = Vec::new();
        let mut mismatches = Vec::new();
        for (n, total) in &self.totals {
            let n64 = *n as u64;
            match total {
                Some(t) => {
                    if reference_total(*n).is_some_and(|r| BigUint::from(r) != *t) {
                        mismatches.push(n64);
                    }
                    terms.push((n64, t.clone()));
                }
                None => mismatches.push(n64),
            }
        }
        SequenceReport {
            name: "linear quandle totals".into(),
            terms,
            source: SequenceSource::Enumeration,
            mismatches,
        }
    }
}
