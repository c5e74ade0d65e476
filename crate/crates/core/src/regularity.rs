//! Degree-sequence statistics and finite-size diagnostics for the regularity
//! conditions under which the mixing profiles are expected.
//!
//! The asymptotic conditions (`Θ(n)`, `ℓ^{o(1)}`, `ω(·)`) cannot be decided
//! at a single size. They are reported as raw ratios with a warn flag; only
//! the parity and degree-floor conditions are hard pass/fail checks.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::halfedge::{DegreeMode, DegreeSequence};

/// Neumaier compensated sum.
#[derive(Debug, Default, Clone, Copy)]
pub(crate) struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    pub(crate) fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub(crate) fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DegreeStatistics {
    /// Mean forward degree of a uniform half-edge.
    pub nu: f64,
    /// Mean of `log deg(x)` over half-edges.
    pub lambda1: f64,
    /// Second central absolute moment of `log deg(x)`.
    pub lambda2: f64,
    /// Third central absolute moment of `log deg(x)`.
    pub lambda3: f64,
    pub d_max: u32,
    /// `1 / lambda1`; `None` when `lambda1 == 0` and the λ-fields carry no
    /// information.
    pub c_stat: Option<f64>,
}

impl DegreeStatistics {
    pub fn lambda_valid(&self) -> bool {
        self.c_stat.is_some()
    }
}

/// Computes the statistics by grouping half-edges per vertex.
pub fn degree_statistics(ds: &DegreeSequence) -> DegreeStatistics {
    let ell = ds.ell() as f64;
    let mut fwd = CompensatedSum::default();
    let mut log_sum = CompensatedSum::default();
    for &d in ds.degrees() {
        let d = d as f64;
        fwd.add(d * (d - 1.0));
        log_sum.add(d * (d - 1.0).ln());
    }
    let lambda1 = log_sum.value() / ell;
    let mut m2 = CompensatedSum::default();
    let mut m3 = CompensatedSum::default();
    for &d in ds.degrees() {
        let dev = ((d as f64) - 1.0).ln() - lambda1;
        m2.add(d as f64 * dev * dev);
        m3.add(d as f64 * dev.abs().powi(3));
    }
    DegreeStatistics {
        nu: fwd.value() / ell,
        lambda1,
        lambda2: m2.value() / ell,
        lambda3: m3.value() / ell,
        d_max: ds.d_max(),
        c_stat: (lambda1 > 0.0).then(|| 1.0 / lambda1),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Warn,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConditionEntry {
    pub condition: &'static str,
    /// The raw statistic the status is based on.
    pub value: f64,
    pub status: Status,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegularityReport {
    pub mode: DegreeMode,
    pub n: usize,
    pub ell: usize,
    pub statistics: DegreeStatistics,
    pub entries: Vec<ConditionEntry>,
}

impl RegularityReport {
    pub fn entry(&self, condition: &str) -> Option<&ConditionEntry> {
        self.entries.iter().find(|e| e.condition == condition)
    }

    /// True when no exact condition failed (warnings allowed).
    pub fn exact_checks_pass(&self) -> bool {
        self.entries.iter().all(|e| e.status != Status::Fail)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "mode={:?} n={} ell={} nu={:.6} lambda1={:.6} lambda2={:.6} lambda3={:.6} d_max={} c_stat={}\n",
            self.mode,
            self.n,
            self.ell,
            self.statistics.nu,
            self.statistics.lambda1,
            self.statistics.lambda2,
            self.statistics.lambda3,
            self.statistics.d_max,
            self.statistics
                .c_stat
                .map_or_else(|| "undefined".to_string(), |c| format!("{c:.6}")),
        );
        for e in &self.entries {
            let status = match e.status {
                Status::Pass => "pass",
                Status::Warn => "warn",
                Status::Fail => "FAIL",
            };
            out.push_str(&format!(
                "{:<4} {:<5} {:>14.6}  {}\n",
                e.condition, status, e.value, e.note
            ));
        }
        out
    }
}

/// Evaluates finite-size proxies of the regularity conditions.
///
/// Warn thresholds: `ℓ/n` above `log ℓ`, `ν` above `log ℓ`,
/// `log d_max / log ℓ` at or above `1/2`, and for the two (R2*) ratios a
/// value below the comparison quantity `(log log ℓ)² / log ℓ` resp.
/// `1/√(log ℓ)`.
pub fn check_conditions(ds: &DegreeSequence, mode: DegreeMode) -> RegularityReport {
    let stats = degree_statistics(ds);
    let n = ds.n();
    let ell = ds.ell();
    let log_ell = (ell as f64).ln();
    let mut entries = Vec::with_capacity(6);

    let ratio = ell as f64 / n as f64;
    let (status, note) = if ell % 2 != 0 {
        (Status::Fail, "ell is odd".to_string())
    } else if ratio > log_ell {
        (Status::Warn, format!("ell/n = {ratio:.4} exceeds log ell = {log_ell:.4}"))
    } else {
        (Status::Pass, format!("ell even; ell/n = {ratio:.4}"))
    };
    entries.push(ConditionEntry {
        condition: "R1",
        value: ratio,
        status,
        note,
    });

    let (status, note) = if stats.nu > log_ell {
        (Status::Warn, format!("nu = {:.4} exceeds log ell", stats.nu))
    } else {
        (Status::Pass, format!("nu = {:.4}", stats.nu))
    };
    entries.push(ConditionEntry {
        condition: "R2",
        value: stats.nu,
        status,
        note,
    });

    let d_min = ds.degrees().iter().copied().min().unwrap_or(0);
    entries.push(floor_entry("R3", d_min, 2));

    if mode == DegreeMode::RStar {
        let exponent = if ell > 1 {
            (stats.d_max as f64).ln() / log_ell
        } else {
            0.0
        };
        let (status, note) = if exponent >= 0.5 {
            (
                Status::Warn,
                format!("log d_max / log ell = {exponent:.4} >= 0.5"),
            )
        } else {
            (Status::Pass, format!("log d_max / log ell = {exponent:.4}"))
        };
        entries.push(ConditionEntry {
            condition: "R1*",
            value: exponent,
            status,
            note,
        });
        entries.push(r2_star_entry(&stats, log_ell));
        entries.push(floor_entry("R3*", d_min, 3));
    }

    RegularityReport {
        mode,
        n,
        ell,
        statistics: stats,
        entries,
    }
}

fn floor_entry(condition: &'static str, d_min: u32, floor: u32) -> ConditionEntry {
    let ok = d_min >= floor;
    ConditionEntry {
        condition,
        value: d_min as f64,
        status: if ok { Status::Pass } else { Status::Fail },
        note: if ok {
            format!("min degree {d_min} >= {floor}")
        } else {
            format!("min degree {d_min} < {floor}")
        },
    }
}

fn r2_star_entry(stats: &DegreeStatistics, log_ell: f64) -> ConditionEntry {
    if stats.lambda2 == 0.0 {
        return ConditionEntry {
            condition: "R2*",
            value: 0.0,
            status: Status::Warn,
            note: "λ₂ = 0: condition fails for regular sequences".into(),
        };
    }
    if !stats.lambda_valid() {
        return ConditionEntry {
            condition: "R2*",
            value: f64::NAN,
            status: Status::Warn,
            note: "λ₁ = 0: λ-statistics undefined".into(),
        };
    }
    let first = stats.lambda2 / stats.lambda1.powi(3);
    let first_ref = log_ell.ln().powi(2) / log_ell;
    let second = stats.lambda2.powf(1.5) / (stats.lambda3 * stats.lambda1.sqrt());
    let second_ref = 1.0 / log_ell.sqrt();
    let ok = first >= first_ref && second >= second_ref;
    ConditionEntry {
        condition: "R2*",
        value: first,
        status: if ok { Status::Pass } else { Status::Warn },
        note: format!(
            "λ₂/λ₁³ = {first:.4} vs {first_ref:.4}; λ₂^1.5/(λ₃√λ₁) = {second:.4} vs {second_ref:.4}"
        ),
    }
}

/// Which of the three mixing profiles applies for `β = lim α_n (log n)²`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    Supercritical,
    Critical,
    Subcritical,
}

impl Regime {
    pub fn name(self) -> &'static str {
        match self {
            Regime::Supercritical => "supercritical",
            Regime::Critical => "critical",
            Regime::Subcritical => "subcritical",
        }
    }
}

impl std::str::FromStr for Regime {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "supercritical" | "super" => Ok(Regime::Supercritical),
            "critical" | "crit" => Ok(Regime::Critical),
            "subcritical" | "sub" => Ok(Regime::Subcritical),
            other => Err(Error::InvalidParameter(format!("unknown regime {other:?}"))),
        }
    }
}

/// `∞` → supercritical, `(0, ∞)` → critical, `0` → subcritical.
pub fn classify_regime(beta: f64) -> Result<Regime> {
    if beta.is_nan() || beta < 0.0 {
        return Err(Error::InvalidParameter(format!(
            "beta must be in [0, inf], got {beta}"
        )));
    }
    Ok(if beta.is_infinite() {
        Regime::Supercritical
    } else if beta > 0.0 {
        Regime::Critical
    } else {
        Regime::Subcritical
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ds(degrees: Vec<u32>, mode: DegreeMode) -> DegreeSequence {
        DegreeSequence::new(degrees, mode).unwrap()
    }

    #[test]
    fn three_regular_statistics() {
        let s = degree_statistics(&ds(vec![3; 10], DegreeMode::RStar));
        assert_eq!(s.nu, 2.0);
        assert!((s.lambda1 - 2f64.ln()).abs() < 1e-15);
        assert_eq!(s.lambda2, 0.0);
        assert_eq!(s.lambda3, 0.0);
        assert!((s.c_stat.unwrap() - 1.0 / 2f64.ln()).abs() < 1e-12);
        assert!((s.c_stat.unwrap() - 1.4427).abs() < 1e-4);
    }

    #[test]
    fn bivalued_statistics() {
        let mut degrees = vec![3; 50];
        degrees.extend(vec![4; 50]);
        let s = degree_statistics(&ds(degrees, DegreeMode::RStar));
        let expected = (3.0 * 2f64.ln() + 4.0 * 3f64.ln()) / 7.0;
        assert!((s.lambda1 - expected).abs() < 1e-14);
        assert!((s.lambda1 - 0.924842).abs() < 1e-6);
        assert!((s.c_stat.unwrap() - 1.0813).abs() < 1e-4);
    }

    #[test]
    fn two_regular_has_no_c_stat() {
        let s = degree_statistics(&ds(vec![2, 2, 2, 2], DegreeMode::R));
        assert_eq!(s.lambda1, 0.0);
        assert!(!s.lambda_valid());
        assert_eq!(s.nu, 1.0);
    }

    #[test]
    fn floor_checks_follow_mode() {
        let d = ds(vec![2, 2, 2, 2], DegreeMode::R);
        let r = check_conditions(&d, DegreeMode::R);
        assert_eq!(r.entries.len(), 3);
        assert_eq!(r.entry("R3").unwrap().status, Status::Pass);
        let r = check_conditions(&d, DegreeMode::RStar);
        assert_eq!(r.entries.len(), 6);
        assert_eq!(r.entry("R3*").unwrap().status, Status::Fail);
        assert!(!r.exact_checks_pass());
    }

    #[test]
    fn regular_sequence_warns_on_r2_star() {
        let r = check_conditions(&ds(vec![3; 100], DegreeMode::RStar), DegreeMode::RStar);
        let e = r.entry("R2*").unwrap();
        assert_eq!(e.status, Status::Warn);
        assert_eq!(e.note, "λ₂ = 0: condition fails for regular sequences");
    }

    #[test]
    fn mixed_small_sequence_passes_exact_checks() {
        let r = check_conditions(&ds(vec![3, 3, 4, 4], DegreeMode::RStar), DegreeMode::RStar);
        assert!(r.exact_checks_pass());
        for c in ["R3", "R3*"] {
            assert_eq!(r.entry(c).unwrap().status, Status::Pass, "{c}");
        }
        // ell / n = 3.5 exceeds log 14
        assert_eq!(r.entry("R1").unwrap().status, Status::Warn);
        assert!(r.to_text().contains("R2*"));
    }

    #[test]
    fn regime_classification() {
        assert_eq!(classify_regime(f64::INFINITY).unwrap(), Regime::Supercritical);
        assert_eq!(classify_regime(2.0).unwrap(), Regime::Critical);
        assert_eq!(classify_regime(0.0).unwrap(), Regime::Subcritical);
        assert!(classify_regime(-1.0).is_err());
        assert!(classify_regime(f64::NAN).is_err());
    }

    #[test]
    fn compensated_sum_beats_naive() {
        let mut s = CompensatedSum::default();
        s.add(1.0);
        for _ in 0..10 {
            s.add(1e-16);
        }
        assert_eq!(s.value(), 1.0 + 1e-15);
    }
}
