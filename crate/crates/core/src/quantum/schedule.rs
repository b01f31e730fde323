//! Annealing schedules `A(s)`, `B(s)` and the inverse temperature.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Planck constant in J s.
pub const PLANCK: f64 = 6.62607015e-34;
/// Boltzmann constant in J/K.
pub const BOLTZMANN: f64 = 1.380649e-23;
pub const DEFAULT_BETA: f64 = 4.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScheduleKind {
    /// `A(s) = 1 - s`, `B(s) = s`.
    LinearDimensionless,
    /// Piecewise-linear interpolation of `(s, A, B)` rows.
    Tabulated,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Schedule {
    pub kind: ScheduleKind,
    /// Rows `(s, A, B)`, strictly increasing in `s`. Empty for the linear kind.
    pub table: Vec<(f64, f64, f64)>,
    pub beta: f64,
}

/// `A(s) = 1 - s`, `B(s) = s` at `beta = 4`.
pub fn default_schedule() -> Schedule {
    Schedule {
        kind: ScheduleKind::LinearDimensionless,
        table: Vec::new(),
        beta: DEFAULT_BETA,
    }
}

/// Inverse temperature in 1/GHz for a temperature in millikelvin, for
/// schedules tabulated as `E/h` in GHz: `h * 1e9 / (k_B T)`.
pub fn beta_per_ghz(millikelvin: f64) -> f64 {
    PLANCK * 1e9 / (BOLTZMANN * millikelvin * 1e-3)
}

/// Reads a CSV with header `s,A,B`. The result uses [`DEFAULT_BETA`].
pub fn load_schedule(text: &str) -> Result<Schedule> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let header: Vec<String> = reader.headers()?.iter().map(str::to_string).collect();
    if header != ["s", "A", "B"] {
        return Err(Error::parse(
            1,
            format!("expected header `s,A,B`, found `{}`", header.join(",")),
        ));
    }
    let mut table = Vec::new();
    for (k, record) in reader.records().enumerate() {
        let line = k + 2;
        let record = record?;
        if record.len() != 3 {
            return Err(Error::parse(line, "expected three columns"));
        }
        let mut row = [0.0; 3];
        for (slot, field) in row.iter_mut().zip(record.iter()) {
            *slot = field
                .parse()
                .map_err(|_| Error::parse(line, format!("`{field}` is not a number")))?;
        }
        table.push((row[0], row[1], row[2]));
    }
    Schedule::tabulated(table, DEFAULT_BETA)
}

impl Schedule {
    /// Validated tabulated schedule. Errors carry the 1-based CSV line of
    /// the offending row (the header is line 1).
    pub fn tabulated(table: Vec<(f64, f64, f64)>, beta: f64) -> Result<Self> {
        if table.len() < 2 {
            return Err(Error::parse(1, "a schedule table needs at least two rows"));
        }
        for (k, &(s, a, b)) in table.iter().enumerate() {
            let line = k + 2;
            if !(0.0..=1.0).contains(&s) {
                return Err(Error::parse(line, format!("s = {s} outside [0, 1]")));
            }
            if a < 0.0 || b < 0.0 || !a.is_finite() || !b.is_finite() {
                return Err(Error::parse(
                    line,
                    "A and B must be finite and non-negative",
                ));
            }
            if k > 0 {
                let (s0, a0, b0) = table[k - 1];
                if s <= s0 {
                    return Err(Error::parse(line, "s must be strictly increasing"));
                }
                if a > a0 || b < b0 {
                    return Err(Error::parse(
                        line,
                        "A must not increase and B must not decrease",
                    ));
                }
            }
        }
        Schedule {
            kind: ScheduleKind::Tabulated,
            table,
            beta,
        }
        .with_beta(beta)
    }

    pub fn with_beta(mut self, beta: f64) -> Result<Self> {
        if !(beta.is_finite() && beta >= 0.0) {
            return Err(Error::invalid(format!(
                "beta must be finite and non-negative, got {beta}"
            )));
        }
        self.beta = beta;
        Ok(self)
    }

    /// `(A(s), B(s))`. Tabulated schedules do not extrapolate.
    pub fn coefficients(&self, s: f64) -> Result<(f64, f64)> {
        match self.kind {
            ScheduleKind::LinearDimensionless => {
                if !(0.0..=1.0).contains(&s) {
                    return Err(Error::ScheduleRange(s));
                }
                Ok((1.0 - s, s))
            }
            ScheduleKind::Tabulated => {
                let first = self.table[0].0;
                let last = self.table[self.table.len() - 1].0;
                if !(first..=last).contains(&s) {
                    return Err(Error::ScheduleRange(s));
                }
                let k = self
                    .table
                    .partition_point(|row| row.0 <= s)
                    .clamp(1, self.table.len() - 1);
                let (s0, a0, b0) = self.table[k - 1];
                let (s1, a1, b1) = self.table[k];
                let t = (s - s0) / (s1 - s0);
                Ok((a0 + t * (a1 - a0), b0 + t * (b1 - b0)))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_endpoints() {
        let s = default_schedule();
        assert_eq!(s.coefficients(0.0).unwrap(), (1.0, 0.0));
        assert_eq!(s.coefficients(1.0).unwrap(), (0.0, 1.0));
        assert!(s.coefficients(1.5).is_err());
        assert_eq!(s.beta, 4.0);
    }

    #[test]
    fn twelve_millikelvin_is_about_four_per_ghz() {
        let beta = beta_per_ghz(12.0);
        assert!((beta - 3.9993).abs() < 1e-4, "{beta}");
    }

    #[test]
    fn two_row_table_reproduces_the_linear_schedule() {
        let t = load_schedule("s,A,B\n0,1,0\n1,0,1\n").unwrap();
        let lin = default_schedule();
        for k in 0..=20 {
            let s = k as f64 / 20.0;
            let (a, b) = t.coefficients(s).unwrap();
            let (a2, b2) = lin.coefficients(s).unwrap();
            assert!((a - a2).abs() < 1e-15 && (b - b2).abs() < 1e-15);
        }
    }

    #[test]
    fn no_extrapolation() {
        let t = load_schedule("s,A,B\n0.2,1,0\n0.8,0,1\n").unwrap();
        assert!(matches!(t.coefficients(0.1), Err(Error::ScheduleRange(_))));
        assert!(t.coefficients(0.2).is_ok());
    }

    #[test]
    fn interpolates_between_neighbors() {
        let rows: String = (0..100)
            .map(|k| {
                let s = k as f64 / 99.0;
                format!("{s},{},{}\n", 5.0 * (1.0 - s).powi(2), 4.0 * s * s)
            })
            .collect();
        let t = load_schedule(&format!("s,A,B\n{rows}")).unwrap();
        let (a, b) = t.coefficients(0.5).unwrap();
        // 0.5 falls between rows 49 and 50.
        let (s0, s1): (f64, f64) = (49.0 / 99.0, 50.0 / 99.0);
        let w = (0.5 - s0) / (s1 - s0);
        let expect_a = 5.0 * ((1.0 - s0).powi(2) * (1.0 - w) + (1.0 - s1).powi(2) * w);
        let expect_b = 4.0 * (s0 * s0 * (1.0 - w) + s1 * s1 * w);
        assert!((a - expect_a).abs() < 1e-12 && (b - expect_b).abs() < 1e-12);
        assert!(a > 5.0 * (1.0 - s1).powi(2) && a < 5.0 * (1.0 - s0).powi(2));
    }

    #[test]
    fn rejects_bad_tables() {
        assert!(matches!(
            load_schedule("s,A,B\n0,1,0\n0,0,1\n"),
            Err(Error::Parse { line: 3, .. })
        ));
        assert!(matches!(
            load_schedule("s,A,B\n0,-1,0\n1,0,1\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(load_schedule("s,B,A\n0,1,0\n1,0,1\n").is_err());
        assert!(load_schedule("s,A,B\n0,1,0\n1,x,1\n").is_err());
    }
}
