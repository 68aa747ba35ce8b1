//! Verification experiments: the exact series against the predicted main
//! term, Horn-vector convergence and dominance of the chosen base point.
//!
//! All comparisons of exact and predicted values happen in log space, since
//! coefficients at `k = 100` easily reach hundreds of digits.

use alloc::vec::Vec;
use core::cmp::Ordering;

use num_traits::{Signed, ToPrimitive, Zero};

use crate::asym::{evaluate_log_term, Analysis, AsymptoticTerm};
use crate::fan::{classify, compare_objective, saddle_point, ConeKind, DirVector, Fan, Location};
use crate::model::{GFModel, Rational};
use crate::series::{expand, log_value, to_f64, CoeffTable, SignedLog};
use crate::{Error, Result};

/// Default `k` values for convergence experiments.
pub const DEFAULT_K_LADDER: [u64; 4] = [10, 20, 50, 100];

/// Errors below this are treated as converged when judging the trend; it is
/// the resolution of the log-space ratio.
pub const NOISE_FLOOR: f64 = 1e-11;

#[derive(Clone, Debug, PartialEq)]
pub struct ConvergenceRow {
    pub k: u64,
    pub exact: SignedLog,
    pub predicted: SignedLog,
    /// `f(kp, kq) / main term`.
    pub ratio: f64,
}

impl ConvergenceRow {
    pub fn error(&self) -> f64 {
        (self.ratio - 1.0).abs()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConvergenceTable {
    pub term: AsymptoticTerm,
    pub rows: Vec<ConvergenceRow>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerificationReport {
    pub direction: DirVector,
    pub regime: ConeKind,
    pub rows: Vec<ConvergenceRow>,
    pub final_error: f64,
    pub trend_monotone: bool,
    pub pass: bool,
    pub tolerance: f64,
}

fn as_u64(v: &num_bigint::BigInt) -> Result<u64> {
    v.to_u64().ok_or(Error::DirectionTooLarge)
}

fn step(dir: &DirVector) -> Result<(usize, usize)> {
    Ok((as_u64(dir.p())? as usize, as_u64(dir.q())? as usize))
}

/// Exact versus predicted values along the diagonal, one row per `k`.
/// Every `k` must be at least 1.
pub fn convergence_table(model: &GFModel, dir: &DirVector, ks: &[u64]) -> Result<ConvergenceTable> {
    let analysis = Analysis::new(model.clone())?;
    let term = analysis.main_term(dir)?;
    let (p, q) = step(&term.direction)?;
    let kmax = ks.iter().copied().max().unwrap_or(0) as usize;
    let table = expand(model, kmax * p, kmax * q);
    let rows = convergence_rows(&table, &term, ks)?;
    Ok(ConvergenceTable { term, rows })
}

/// Rows for an already expanded table; `table` must reach `(kmax p, kmax q)`.
pub fn convergence_rows(table: &CoeffTable, term: &AsymptoticTerm, ks: &[u64]) -> Result<Vec<ConvergenceRow>> {
    let (p, q) = step(&term.direction)?;
    Ok(ks
        .iter()
        .map(|&k| {
            let ku = k as usize;
            let exact = log_value(table.get(ku * p, ku * q));
            let predicted = evaluate_log_term(term, k);
            let ratio = if exact.sign == 0 {
                0.0
            } else {
                f64::from(exact.sign * predicted.sign) * libm::exp(exact.ln_abs - predicted.ln_abs)
            };
            ConvergenceRow { k, exact, predicted, ratio }
        })
        .collect())
}

/// Passes iff the last error is within `tol` and errors do not increase over
/// the last half of the rows (at least two rows).
pub fn check_convergence(table: &ConvergenceTable, tol: f64) -> Result<VerificationReport> {
    let rows = &table.rows;
    if rows.len() < 3 {
        return Err(Error::TooFewRows);
    }
    let tail = rows.len().div_ceil(2).max(2);
    let trend_monotone = rows[rows.len() - tail..]
        .windows(2)
        .all(|w| w[1].error() <= w[0].error() || w[1].error() <= NOISE_FLOOR);
    let final_error = rows.last().map(ConvergenceRow::error).unwrap_or(f64::INFINITY);
    Ok(VerificationReport {
        direction: table.term.direction.clone(),
        regime: table.term.kind,
        rows: rows.clone(),
        final_error,
        trend_monotone,
        pass: final_error <= tol && trend_monotone,
        tolerance: tol,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct HornRow {
    pub k: u64,
    /// `(f(x+1, y) / f(x, y), f(x, y+1) / f(x, y))` at `x = kp, y = kq`.
    pub empirical: (Rational, Rational),
    /// `(1/z^, 1/w^)`.
    pub limit: (Rational, Rational),
    /// Largest relative deviation of the two components.
    pub error: f64,
}

/// Empirical Horn vectors along the diagonal against their limit.
///
/// Fails with [`Error::ZeroCoefficient`] when `f(x, y)` or one of its forward
/// neighbours vanishes, as happens for factors with mixed-sign coefficients.
pub fn horn_table(model: &GFModel, dir: &DirVector, ks: &[u64]) -> Result<Vec<HornRow>> {
    let dir = DirVector::new(dir.p().clone(), dir.q().clone())?;
    let (p, q) = step(&dir)?;
    let kmax = ks.iter().copied().max().unwrap_or(0) as usize;
    let table = expand(model, kmax * p + 1, kmax * q + 1);

    let mut empirical = Vec::with_capacity(ks.len());
    for &k in ks {
        let (x, y) = (k as usize * p, k as usize * q);
        for (cx, cy) in [(x, y), (x + 1, y), (x, y + 1)] {
            if table.get(cx, cy).is_zero() {
                return Err(Error::ZeroCoefficient { x: cx as u64, y: cy as u64 });
            }
        }
        let f0 = table.get(x, y);
        empirical.push((k, (table.get(x + 1, y) / f0, table.get(x, y + 1) / f0)));
    }

    let analysis = Analysis::new(model.clone())?;
    let limit = analysis.horn_limit(&dir)?;
    let rel = |e: &Rational, l: &Rational| to_f64(&((e - l) / l).abs());
    Ok(empirical
        .into_iter()
        .map(|(k, emp)| {
            let error = rel(&emp.0, &limit.0).max(rel(&emp.1, &limit.1));
            HornRow { k, empirical: emp, limit: limit.clone(), error }
        })
        .collect())
}

/// `true` iff `dir` is interior to a cone and its base point
///
/// - strictly beats every other fan vertex (feasible points of `M`), and
/// - is strictly beaten by the unconstrained tangency point of every other
///   line, i.e. `z_i^p w_i^q < z_j^p w_j^q`.
///
/// Together these say the base point is the unique maximiser of `z^p w^q`
/// over `M` and that no other line's tangency point is feasible.
pub fn dominance_check(model: &GFModel, fan: &Fan, dir: &DirVector) -> bool {
    let Location::Interior(k) = classify(fan, dir) else {
        return false;
    };
    let cone = &fan.cones[k];
    let base = match cone.kind {
        ConeKind::Saddle(i) => saddle_point(model, i, dir),
        ConeKind::Vertex(..) => cone.base.clone(),
    };
    let vertices_lose = fan
        .cones
        .iter()
        .filter(|c| matches!(c.kind, ConeKind::Vertex(..)) && c.kind != cone.kind)
        .all(|c| compare_objective(&base, &c.base, dir) == Ok(Ordering::Greater));
    let saddles_win = (0..model.m())
        .filter(|&j| cone.kind != ConeKind::Saddle(j))
        .all(|j| {
            let s = saddle_point(model, j, dir);
            compare_objective(&s, &base, dir) == Ok(Ordering::Greater)
        });
    vertices_lose && saddles_win
}
