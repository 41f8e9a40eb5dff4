//! Spherical periods `4π(ℤ + λℤ)` of the twisted area form on S²×S².

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum Lambda {
    Rational { p: i64, q: i64 },
    Real(f64),
}

impl Lambda {
    pub fn value(self) -> f64 {
        match self {
            Lambda::Rational { p, q } => p as f64 / q as f64,
            Lambda::Real(x) => x,
        }
    }
}

impl FromStr for Lambda {
    type Err = String;

    /// Accepts `p/q`, an integer, `sqrt2` or a decimal.
    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        if let Some((p, q)) = s.split_once('/') {
            let p: i64 = p
                .trim()
                .parse()
                .map_err(|_| format!("bad numerator in {s}"))?;
            let q: i64 = q
                .trim()
                .parse()
                .map_err(|_| format!("bad denominator in {s}"))?;
            if q == 0 {
                return Err("zero denominator".into());
            }
            return Ok(Lambda::Rational { p, q });
        }
        if let Ok(p) = s.parse::<i64>() {
            return Ok(Lambda::Rational { p, q: 1 });
        }
        if s == "sqrt2" {
            return Ok(Lambda::Real(2f64.sqrt()));
        }
        s.parse::<f64>()
            .map(Lambda::Real)
            .map_err(|_| format!("cannot read lambda from {s}"))
    }
}

impl fmt::Display for Lambda {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Lambda::Rational { p, q } => write!(f, "{p}/{q}"),
            Lambda::Real(x) => write!(f, "{x}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PeriodLattice {
    pub lambda: Lambda,
    pub base: f64,
    /// For rational λ: the generator as `numerator·π/denominator`.
    pub generator_over_pi: Option<(i64, i64)>,
    pub generator: Option<f64>,
    /// For real λ: the smallest positive `4π|m + λn|`, `|m|, |n| ≤ N`.
    pub min_gap: Option<f64>,
    pub search_bound: Option<u64>,
    pub non_discreteness_evidence: bool,
}

/// Rational λ gives the exact generator `4π·gcd(p, q)/q`; otherwise the
/// smallest positive period with coefficients up to `n_max` is reported,
/// flagged when it drops below `threshold`.
pub fn monodromy_lattice(lambda: Lambda, n_max: u64, threshold: f64) -> PeriodLattice {
    let base = 4.0 * PI;
    match lambda {
        Lambda::Rational { p, q } => {
            let (p, q) = if q < 0 { (-p, -q) } else { (p, q) };
            let d = p.gcd(&q);
            let (num, den) = (4 * d, q);
            let g = num.gcd(&den);
            let (num, den) = (num / g, den / g);
            PeriodLattice {
                lambda: Lambda::Rational { p, q },
                base,
                generator_over_pi: Some((num, den)),
                generator: Some(PI * num as f64 / den as f64),
                min_gap: None,
                search_bound: None,
                non_discreteness_evidence: false,
            }
        }
        Lambda::Real(l) => {
            let mut best = 1.0f64;
            let bound = n_max as f64;
            for n in 1..=n_max {
                let ln = l * n as f64;
                let m = ln.round();
                if m.abs() <= bound {
                    let v = (ln - m).abs();
                    if v > 0.0 && v < best {
                        best = v;
                    }
                }
            }
            let gap = base * best;
            PeriodLattice {
                lambda,
                base,
                generator_over_pi: None,
                generator: None,
                min_gap: Some(gap),
                search_bound: Some(n_max),
                non_discreteness_evidence: gap < threshold,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_generators() {
        let l = monodromy_lattice(Lambda::Rational { p: 1, q: 2 }, 0, 0.0);
        assert_eq!(l.generator_over_pi, Some((2, 1)));
        let l = monodromy_lattice(Lambda::Rational { p: 3, q: 7 }, 0, 0.0);
        assert_eq!(l.generator_over_pi, Some((4, 7)));
        let l = monodromy_lattice(Lambda::Rational { p: 0, q: 1 }, 0, 0.0);
        assert_eq!(l.generator_over_pi, Some((4, 1)));
        let l = monodromy_lattice(Lambda::Rational { p: 2, q: -4 }, 0, 0.0);
        assert_eq!(l.generator_over_pi, Some((2, 1)));
    }

    /// Best approximations of √2 come from the Pell convergents.
    #[test]
    fn sqrt2_matches_convergents() {
        let l = monodromy_lattice(Lambda::Real(2f64.sqrt()), 10_000, 4.0 * PI * 1e-3);
        let (mut p, mut q) = (1i64, 1i64);
        while p + 2 * q <= 10_000 {
            (p, q) = (p + 2 * q, p + q);
        }
        let oracle = 4.0 * PI * ((q as f64) * 2f64.sqrt() - p as f64).abs();
        let gap = l.min_gap.unwrap();
        assert!((gap - oracle).abs() < 1e-12, "{gap} vs {oracle}");
        assert!(gap < 4.0 * PI * 1e-3);
        assert!(l.non_discreteness_evidence);
        assert!((gap - 7.74e-4).abs() < 1e-5, "{gap}");
    }

    #[test]
    fn parses() {
        assert_eq!(
            "3/7".parse::<Lambda>().unwrap(),
            Lambda::Rational { p: 3, q: 7 }
        );
        assert_eq!(
            "2".parse::<Lambda>().unwrap(),
            Lambda::Rational { p: 2, q: 1 }
        );
        assert_eq!(
            "sqrt2".parse::<Lambda>().unwrap(),
            Lambda::Real(2f64.sqrt())
        );
        assert!("1/0".parse::<Lambda>().is_err());
    }
}
