//! Plain-text integral tables and cutoff filtering.
//!
//! Lines hold `p q value` or `p q r s value` with 1-based spin-orbital indices;
//! `#` starts a comment and `orbitals N` fixes the register size (otherwise the
//! largest index is used).

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const HERMITIAN_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OneBody {
    pub p: usize,
    pub q: usize,
    pub value: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TwoBody {
    pub idx: [usize; 4],
    pub value: f64,
}

/// Coefficients of `Σ h_pq a_p† a_q + Σ h_pqrs a_p† a_q† a_r a_s` in atomic units, 0-based.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct IntegralTable {
    pub n_orbitals: usize,
    pub one_body: Vec<OneBody>,
    pub two_body: Vec<TwoBody>,
}

impl IntegralTable {
    pub fn len(&self) -> usize {
        self.one_body.len() + self.two_body.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Count of entries with `|value| > threshold`.
    pub fn count_above(&self, threshold: f64) -> usize {
        self.one_body.iter().filter(|e| e.value.abs() > threshold).count()
            + self.two_body.iter().filter(|e| e.value.abs() > threshold).count()
    }

    /// Reject indices outside the register and a non-hermitian one-body block.
    pub fn validate(&self) -> Result<()> {
        let m = self.n_orbitals;
        let bad = self
            .one_body
            .iter()
            .flat_map(|e| [e.p, e.q])
            .chain(self.two_body.iter().flat_map(|e| e.idx))
            .find(|&i| i >= m);
        if let Some(i) = bad {
            return Err(Error::IndexOutOfRange(format!("orbital {} of {m}", i + 1)));
        }
        for a in &self.one_body {
            if let Some(b) = self.one_body.iter().find(|b| b.p == a.q && b.q == a.p) {
                if (a.value - b.value).abs() > HERMITIAN_TOL {
                    return Err(Error::NonHermitian { p: a.p + 1, q: a.q + 1, forward: a.value, backward: b.value });
                }
            }
        }
        Ok(())
    }

    /// Render in the file format read by `parse_integrals`.
    pub fn to_text(&self) -> String {
        let mut out = format!("orbitals {}\n", self.n_orbitals);
        for e in &self.one_body {
            out += &format!("{} {} {:.17e}\n", e.p + 1, e.q + 1, e.value);
        }
        for e in &self.two_body {
            let [p, q, r, s] = e.idx.map(|i| i + 1);
            out += &format!("{p} {q} {r} {s} {:.17e}\n", e.value);
        }
        out
    }
}

pub fn parse_integrals(text: &str) -> Result<IntegralTable> {
    let mut t = IntegralTable::default();
    let mut declared = None;
    let mut largest = 0;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let err = |message: String| Error::Parse { line: line_no, message };
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields[0].eq_ignore_ascii_case("orbitals") {
            let [_, n] = fields[..] else { return Err(err("expected `orbitals N`".into())) };
            declared = Some(n.parse::<usize>().map_err(|e| err(format!("orbital count {n:?}: {e}")))?);
            continue;
        }
        let (idx, value) = match fields.len() {
            3 | 5 => fields.split_at(fields.len() - 1),
            n => return Err(err(format!("expected 3 or 5 fields, found {n}"))),
        };
        let value: f64 = value[0].parse().map_err(|e| err(format!("value {:?}: {e}", value[0])))?;
        if !value.is_finite() {
            return Err(err(format!("value {value} is not finite")));
        }
        let idx = idx
            .iter()
            .map(|f| match f.parse::<usize>() {
                Ok(0) => Err(err("indices are 1-based".into())),
                Ok(v) => Ok(v - 1),
                Err(e) => Err(err(format!("index {f:?}: {e}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        largest = largest.max(idx.iter().max().map_or(0, |m| m + 1));
        match idx[..] {
            [p, q] => t.one_body.push(OneBody { p, q, value }),
            [p, q, r, s] => t.two_body.push(TwoBody { idx: [p, q, r, s], value }),
            _ => unreachable!("field count checked above"),
        }
    }
    t.n_orbitals = declared.unwrap_or(largest);
    t.validate()?;
    Ok(t)
}

pub fn load_integrals(path: impl AsRef<Path>) -> Result<IntegralTable> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_integrals(&text)
}

/// Retained-entry counts over a ladder of thresholds.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CutoffReport {
    pub threshold: f64,
    pub retained: usize,
    pub dropped: usize,
    /// `(threshold, retained)` at each decade from `10^0` down to `10^-12`.
    pub curve: Vec<(f64, usize)>,
}

/// Keep entries with `|value| > threshold`.
pub fn apply_cutoff(t: &IntegralTable, threshold: f64) -> Result<(IntegralTable, CutoffReport)> {
    if !(threshold >= 0.0) {
        return Err(Error::InvalidArgument(format!("threshold must be non-negative, got {threshold}")));
    }
    let kept = IntegralTable {
        n_orbitals: t.n_orbitals,
        one_body: t.one_body.iter().copied().filter(|e| e.value.abs() > threshold).collect(),
        two_body: t.two_body.iter().copied().filter(|e| e.value.abs() > threshold).collect(),
    };
    let curve = (0..=12).map(|d| {
        let th = 10f64.powi(-d);
        (th, t.count_above(th))
    });
    let report = CutoffReport {
        threshold,
        retained: kept.len(),
        dropped: t.len() - kept.len(),
        curve: curve.collect(),
    };
    Ok((kept, report))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_file() {
        let t = parse_integrals("").unwrap();
        assert!(t.is_empty());
        assert_eq!(t.n_orbitals, 0);
    }

    #[test]
    fn toy_file() {
        let t = parse_integrals("# toy\n1 2 0.5\n").unwrap();
        assert_eq!(t.one_body, vec![OneBody { p: 0, q: 1, value: 0.5 }]);
        assert_eq!(t.n_orbitals, 2);
    }

    #[test]
    fn malformed_lines_report_position() {
        assert!(matches!(parse_integrals("1 1 0.1\n1 2 x\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_integrals("1 2 3 0.1\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_integrals("0 1 0.1\n"), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn hermiticity_and_range() {
        assert!(matches!(parse_integrals("1 2 0.5\n2 1 0.4\n"), Err(Error::NonHermitian { p: 1, q: 2, .. })));
        assert!(parse_integrals("1 2 0.5\n2 1 0.5\n").is_ok());
        assert!(matches!(parse_integrals("orbitals 2\n1 3 0.5\n"), Err(Error::IndexOutOfRange(_))));
    }

    #[test]
    fn round_trips_through_text() {
        let t = parse_integrals("orbitals 4\n1 2 0.25\n1 2 3 4 -1e-3\n").unwrap();
        assert_eq!(parse_integrals(&t.to_text()).unwrap(), t);
    }

    #[test]
    fn cutoff_extremes() {
        let t = parse_integrals("1 1 1e-11\n1 2 0.5\n2 1 0.5\n1 2 2 1 1e-5\n").unwrap();
        assert_eq!(apply_cutoff(&t, 0.0).unwrap().0, t);
        assert!(apply_cutoff(&t, f64::INFINITY).unwrap().0.is_empty());
        let (kept, report) = apply_cutoff(&t, 1e-4).unwrap();
        assert_eq!((kept.len(), report.dropped), (2, 2));
        assert!(apply_cutoff(&t, 1e-4).unwrap().1.retained <= apply_cutoff(&t, 1e-10).unwrap().1.retained);
    }
}
