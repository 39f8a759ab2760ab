//! Bounds traced over a range of Y budgets, with CSV output.
//!
//! Columns: `Y,gl,lb,ub,gap,k_star,alpha_1..alpha_C,p_1..p_C`, then a
//! `lower_K<k>,upper_K<k>` pair per requested `k`. Vectors are in the caller's
//! contest order. Reals are written with 9 significant digits.

use std::io::{Read, Write};

use rayon::prelude::*;

use crate::bounds::bounds_report;
use crate::error::{invalid, LottoError, Result};
use crate::instance::GameInstance;
use crate::multi::{optimize_lower_k, optimize_upper_k};

/// `lo, lo + step, ...` up to `hi` inclusive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct YRange {
    pub lo: f64,
    pub hi: f64,
    pub step: f64,
}

impl YRange {
    pub fn new(lo: f64, hi: f64, step: f64) -> Result<Self> {
        if !(lo.is_finite() && lo > 0.0) {
            return Err(invalid(format!("range start must be positive, got {lo}")));
        }
        if !(step.is_finite() && step > 0.0) {
            return Err(invalid(format!("range step must be positive, got {step}")));
        }
        if !(hi.is_finite() && hi >= lo) {
            return Err(invalid(format!("range end {hi} is below start {lo}")));
        }
        Ok(Self { lo, hi, step })
    }

    pub fn values(&self) -> Vec<f64> {
        let n = ((self.hi - self.lo) / self.step + 1e-9).floor() as usize;
        // multiply rather than accumulate to avoid drift
        (0..=n).map(|i| self.lo + i as f64 * self.step).collect()
    }
}

impl std::str::FromStr for YRange {
    type Err = LottoError;

    /// Parses `lo:hi:step`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(invalid(format!("expected lo:hi:step, got {s:?}")));
        }
        let num = |t: &str| t.trim().parse::<f64>().map_err(|_| invalid(format!("not a number: {t:?}")));
        Self::new(num(parts[0])?, num(parts[1])?, num(parts[2])?)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct KColumns {
    pub k: usize,
    pub lower: f64,
    pub upper: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub y: f64,
    pub gl: f64,
    pub lb: f64,
    pub ub: f64,
    pub gap: f64,
    pub k_star: usize,
    pub alpha_star: Vec<f64>,
    pub p_star: Vec<f64>,
    pub multi: Vec<KColumns>,
}

impl SweepRow {
    /// Checks `gl <= lb <= ub` and `gap = ub - lb` to within `tol`.
    pub fn check(&self, tol: f64) -> Result<()> {
        if self.lb > self.ub + tol || self.lb < self.gl - tol || (self.gap - (self.ub - self.lb)).abs() > tol {
            return Err(LottoError::Internal(format!(
                "row at Y={} violates gl <= lb <= ub: gl={} lb={} ub={} gap={}",
                self.y, self.gl, self.lb, self.ub, self.gap
            )));
        }
        Ok(())
    }
}

/// One row per Y in `range`; rows are computed in parallel and returned in Y order.
pub fn sweep(inst: &GameInstance, range: YRange, ks: &[usize], restarts: usize, seed: u64) -> Result<Vec<SweepRow>> {
    range
        .values()
        .into_par_iter()
        .map(|y| {
            let g = inst.with_budgets(inst.x(), y)?;
            let r = bounds_report(&g)?;
            let multi = ks
                .iter()
                .map(|&k| {
                    Ok(KColumns {
                        k,
                        lower: optimize_lower_k(&g, k, restarts, seed)?.value,
                        upper: optimize_upper_k(&g, k, restarts, seed)?.value,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(SweepRow {
                y,
                gl: r.gl,
                lb: r.lb,
                ub: r.ub,
                gap: r.gap,
                k_star: r.k_star,
                alpha_star: r.alpha_star,
                p_star: r.p_star,
                multi,
            })
        })
        .collect()
}

/// Shortest decimal that round-trips the value rounded to 9 significant digits.
pub fn format_sig9(x: f64) -> String {
    let rounded: f64 = format!("{x:.8e}").parse().expect("formatted float parses");
    rounded.to_string()
}

fn csv_err(e: csv::Error) -> LottoError {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => io.into(),
        other => invalid(format!("csv: {other:?}")),
    }
}

pub fn write_csv<W: Write>(rows: &[SweepRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let c = rows.first().map_or(0, |r| r.alpha_star.len());
    let mut header: Vec<String> = ["Y", "gl", "lb", "ub", "gap", "k_star"].iter().map(|s| s.to_string()).collect();
    header.extend((1..=c).map(|i| format!("alpha_{i}")));
    header.extend((1..=c).map(|i| format!("p_{i}")));
    if let Some(first) = rows.first() {
        for m in &first.multi {
            header.push(format!("lower_K{}", m.k));
            header.push(format!("upper_K{}", m.k));
        }
    }
    w.write_record(&header).map_err(csv_err)?;
    for r in rows {
        let mut rec: Vec<String> = [r.y, r.gl, r.lb, r.ub, r.gap].iter().map(|&x| format_sig9(x)).collect();
        rec.push(r.k_star.to_string());
        rec.extend(r.alpha_star.iter().chain(&r.p_star).map(|&x| format_sig9(x)));
        for m in &r.multi {
            rec.push(format_sig9(m.lower));
            rec.push(format_sig9(m.upper));
        }
        w.write_record(&rec).map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

/// Parses a file produced by [`write_csv`].
pub fn read_csv<R: Read>(input: R) -> Result<Vec<SweepRow>> {
    let mut rdr = csv::Reader::from_reader(input);
    let header: Vec<String> = rdr.headers().map_err(csv_err)?.iter().map(str::to_string).collect();
    let fixed = ["Y", "gl", "lb", "ub", "gap", "k_star"];
    if header.len() < fixed.len() || header[..fixed.len()] != fixed {
        return Err(invalid("csv header must start with Y,gl,lb,ub,gap,k_star"));
    }
    let c = header.iter().filter(|h| h.starts_with("alpha_")).count();
    let ks = header[fixed.len() + 2 * c..]
        .chunks(2)
        .map(|pair| {
            pair[0]
                .strip_prefix("lower_K")
                .and_then(|k| k.parse::<usize>().ok())
                .filter(|_| pair.len() == 2)
                .ok_or_else(|| invalid(format!("unexpected csv columns {pair:?}")))
        })
        .collect::<Result<Vec<usize>>>()?;
    let mut rows = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(csv_err)?;
        let num = |i: usize| -> Result<f64> {
            rec.get(i)
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| invalid(format!("bad number in column {}", header[i])))
        };
        let k_star = rec.get(5).and_then(|s| s.parse().ok()).ok_or_else(|| invalid("bad k_star"))?;
        let base = fixed.len();
        rows.push(SweepRow {
            y: num(0)?,
            gl: num(1)?,
            lb: num(2)?,
            ub: num(3)?,
            gap: num(4)?,
            k_star,
            alpha_star: (base..base + c).map(num).collect::<Result<_>>()?,
            p_star: (base + c..base + 2 * c).map(num).collect::<Result<_>>()?,
            multi: ks
                .iter()
                .enumerate()
                .map(|(i, &k)| {
                    let at = base + 2 * c + 2 * i;
                    Ok(KColumns { k, lower: num(at)?, upper: num(at + 1)? })
                })
                .collect::<Result<_>>()?,
        });
    }
    Ok(rows)
}
