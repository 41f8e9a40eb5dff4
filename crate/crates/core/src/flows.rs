//! The ladder local group: a thickened ladder in the plane whose group
//! law is generated by two bi-invariant fields, `X` (sped up slightly on
//! the rungs) and `Y = ∂y`. Because `X` and `Y` are bi-invariant,
//! multiplying by a generator on either side flows along its field for
//! time 1/20; a bracketing only fixes the order of those flows.

use serde::Serialize;
use thiserror::Error;

pub const LETTER_TIME: f64 = 1.0 / 20.0;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FlowError {
    #[error("flow left the ladder region at ({0}, {1})")]
    LeftRegion(f64, f64),
    #[error("product undefined at letter {step}: flow left the region at ({x}, {y})")]
    UndefinedProduct { step: usize, x: f64, y: f64 },
    #[error("calibration did not converge for rung {0}")]
    Calibration(i64),
    #[error("inside-out evaluation needs an even word")]
    OddWord,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LadderConfig {
    /// Thickening radius around the ladder.
    pub radius: f64,
    /// RK4 step size.
    pub step: f64,
    /// Target for the calibration residual.
    pub calibration_tol: f64,
}

impl Default for LadderConfig {
    fn default() -> Self {
        LadderConfig {
            radius: 0.1,
            step: 1e-4,
            calibration_tol: 1e-8,
        }
    }
}

impl LadderConfig {
    /// Distance below `radius` to the rails `x = 0`, `x = 1` or a rung.
    pub fn contains(&self, x: f64, y: f64) -> bool {
        let k = y.round();
        let dx = if x < 0.0 {
            -x
        } else if x > 1.0 {
            x - 1.0
        } else {
            0.0
        };
        let rung = dx.hypot(y - k);
        x.abs().min((x - 1.0).abs()).min(rung) < self.radius
    }
}

/// The bump `exp(1 − 1/(1 − s²))`, `s = 6(x − 1/2)`, supported in
/// `(1/3, 2/3)` with peak 1.
pub fn bump(x: f64) -> f64 {
    let s = (x - 0.5) * 6.0;
    if s.abs() >= 1.0 {
        0.0
    } else {
        (1.0 - 1.0 / (1.0 - s * s)).exp()
    }
}

/// `f_n = 1 + c_n·bump` for every rung; `c_n = 0` for `n ≤ 0`.
#[derive(Debug, Clone, Serialize)]
pub struct CalibratedField {
    pub config: LadderConfig,
    /// `(n, c_n, residual)` for each calibrated rung.
    pub rungs: Vec<(i64, f64, f64)>,
}

fn rk4(
    p: (f64, f64),
    t: f64,
    h: f64,
    field: impl Fn(f64, f64) -> (f64, f64),
    cfg: &LadderConfig,
) -> Result<(f64, f64), FlowError> {
    let steps = (t.abs() / h).ceil().max(1.0) as usize;
    let dt = t / steps as f64;
    let (mut x, mut y) = p;
    for _ in 0..steps {
        let k1 = field(x, y);
        let k2 = field(x + 0.5 * dt * k1.0, y + 0.5 * dt * k1.1);
        let k3 = field(x + 0.5 * dt * k2.0, y + 0.5 * dt * k2.1);
        let k4 = field(x + dt * k3.0, y + dt * k3.1);
        x += dt / 6.0 * (k1.0 + 2.0 * k2.0 + 2.0 * k3.0 + k4.0);
        y += dt / 6.0 * (k1.1 + 2.0 * k2.1 + 2.0 * k3.1 + k4.1);
        if !cfg.contains(x, y) {
            return Err(FlowError::LeftRegion(x, y));
        }
    }
    Ok((x, y))
}

/// Time-0.8 image of 1/10 under `(1 + c·bump)∂x`.
fn shoot(c: f64, cfg: &LadderConfig) -> f64 {
    let open = LadderConfig {
        radius: f64::INFINITY,
        ..*cfg
    };
    rk4(
        (0.1, 0.0),
        0.8,
        cfg.step,
        |x, _| (1.0 + c * bump(x), 0.0),
        &open,
    )
    .expect("unbounded region")
    .0
}

impl CalibratedField {
    /// Calibrates rungs `1..=n_max` by bisection on the bump amplitude.
    pub fn calibrate(n_max: i64, config: LadderConfig) -> Result<Self, FlowError> {
        let mut rungs = Vec::new();
        for n in 1..=n_max {
            let target = 0.9 + 1.0 / (100.0 * n as f64);
            let (mut lo, mut hi) = (0.0, 1.0);
            while shoot(hi, &config) < target {
                hi *= 2.0;
                if hi > 1e6 {
                    return Err(FlowError::Calibration(n));
                }
            }
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if shoot(mid, &config) < target {
                    lo = mid;
                } else {
                    hi = mid;
                }
                if hi - lo < 1e-15 {
                    break;
                }
            }
            let c = 0.5 * (lo + hi);
            let residual = (shoot(c, &config) - target).abs();
            if residual >= config.calibration_tol {
                return Err(FlowError::Calibration(n));
            }
            rungs.push((n, c, residual));
        }
        Ok(CalibratedField { config, rungs })
    }

    pub fn amplitude(&self, n: i64) -> f64 {
        self.rungs.iter().find(|r| r.0 == n).map_or(0.0, |r| r.1)
    }

    /// The field `X` at a point.
    pub fn x_field(&self, x: f64, y: f64) -> f64 {
        let n = y.round();
        if (0.1..=0.9).contains(&x) && (y - n).abs() < 0.1 {
            1.0 + self.amplitude(n as i64) * bump(x)
        } else {
            1.0
        }
    }

    /// Flows along `±X` or `±Y` for time `t`.
    pub fn flow(&self, p: (f64, f64), letter: Letter, t: f64) -> Result<(f64, f64), FlowError> {
        let sign = letter.sign();
        if letter.is_vertical() {
            rk4(p, t, self.config.step, |_, _| (0.0, sign), &self.config)
        } else {
            rk4(
                p,
                t,
                self.config.step,
                |x, y| (sign * self.x_field(x, y), 0.0),
                &self.config,
            )
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Letter {
    A,
    B,
    AInv,
    BInv,
}

impl Letter {
    fn sign(self) -> f64 {
        match self {
            Letter::A | Letter::B => 1.0,
            Letter::AInv | Letter::BInv => -1.0,
        }
    }

    fn is_vertical(self) -> bool {
        matches!(self, Letter::B | Letter::BInv)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Strategy {
    /// Innermost pair first, then alternately right and left.
    InsideOut,
    /// The second half left to right, then the first half right to left.
    LeftToRightSplit,
}

/// `a^−20 b^−20n b^20n a^20`; for `n < 0` the `b` blocks swap letters.
pub fn ladder_word(n: i64) -> Vec<Letter> {
    let k = (20 * n.unsigned_abs()) as usize;
    let (down, up) = if n >= 0 {
        (Letter::BInv, Letter::B)
    } else {
        (Letter::B, Letter::BInv)
    };
    let mut w = vec![Letter::AInv; 20];
    w.extend(std::iter::repeat(down).take(k));
    w.extend(std::iter::repeat(up).take(k));
    w.extend(std::iter::repeat(Letter::A).take(20));
    w
}

#[derive(Debug, Clone, Serialize)]
pub struct Evaluation {
    pub strategy: Strategy,
    /// Letter positions in the order their flows were applied.
    pub order: Vec<usize>,
    /// The point after each flow.
    pub points: Vec<(f64, f64)>,
    pub result: (f64, f64),
}

pub fn eval_word(
    field: &CalibratedField,
    word: &[Letter],
    strategy: Strategy,
) -> Result<Evaluation, FlowError> {
    let m = word.len();
    let order: Vec<usize> = match strategy {
        Strategy::InsideOut => {
            if m % 2 == 1 {
                return Err(FlowError::OddWord);
            }
            let h = m / 2;
            (0..h).flat_map(|k| [h + k, h - 1 - k]).collect()
        }
        Strategy::LeftToRightSplit => (m / 2..m).chain((0..m / 2).rev()).collect(),
    };
    let mut p = (0.0, 0.0);
    let mut points = Vec::with_capacity(m);
    for (step, &i) in order.iter().enumerate() {
        p = field.flow(p, word[i], LETTER_TIME).map_err(|e| match e {
            FlowError::LeftRegion(x, y) => FlowError::UndefinedProduct { step, x, y },
            other => other,
        })?;
        points.push(p);
    }
    Ok(Evaluation {
        strategy,
        order,
        points,
        result: p,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct AssociatorWitness {
    pub n: i64,
    pub config: LadderConfig,
    pub amplitude: f64,
    pub calibration_residual: f64,
    pub expected: (f64, f64),
    pub inside_out: Evaluation,
    pub split: Evaluation,
    /// The split value; the inside-out value is the unit.
    pub witness: (f64, f64),
}

/// The associator on rung `n`; rungs `n ≤ 0` are unperturbed controls.
pub fn associator_witness(n: i64, config: LadderConfig) -> Result<AssociatorWitness, FlowError> {
    let field = CalibratedField::calibrate(n.max(0), config)?;
    let word = ladder_word(n);
    let inside_out = eval_word(&field, &word, Strategy::InsideOut)?;
    let split = eval_word(&field, &word, Strategy::LeftToRightSplit)?;
    let (amplitude, residual) = field
        .rungs
        .iter()
        .find(|r| r.0 == n)
        .map_or((0.0, 0.0), |r| (r.1, r.2));
    let expected = if n > 0 {
        (1.0 / (100.0 * n as f64), 0.0)
    } else {
        (0.0, 0.0)
    };
    Ok(AssociatorWitness {
        n,
        config,
        amplitude,
        calibration_residual: residual,
        expected,
        witness: split.result,
        inside_out,
        split,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(p: (f64, f64), q: (f64, f64), tol: f64) -> bool {
        (p.0 - q.0).abs() < tol && (p.1 - q.1).abs() < tol
    }

    #[test]
    fn region() {
        let c = LadderConfig::default();
        assert!(c.contains(0.0, 5.3));
        assert!(c.contains(0.5, 2.05));
        assert!(!c.contains(0.5, 2.5));
        assert!(c.contains(1.05, 0.5));
        assert!(!c.contains(1.2, 0.5));
        assert!(c.contains(-0.05, -0.05));
    }

    #[test]
    fn straight_flows() {
        let f = CalibratedField::calibrate(0, LadderConfig::default()).unwrap();
        assert!(close(
            f.flow((0.0, 0.0), Letter::B, 1.0).unwrap(),
            (0.0, 1.0),
            1e-12
        ));
        assert!(close(
            f.flow((0.0, 0.0), Letter::A, 0.05).unwrap(),
            (0.05, 0.0),
            1e-12
        ));
        assert!(matches!(
            f.flow((0.5, 0.0), Letter::B, 0.5),
            Err(FlowError::LeftRegion(..))
        ));
    }

    #[test]
    fn calibration_hits_target() {
        let f = CalibratedField::calibrate(2, LadderConfig::default()).unwrap();
        for n in 1..=2 {
            let p = f.flow((0.1, n as f64), Letter::A, 0.8).unwrap();
            assert!((p.0 - (0.9 + 0.01 / n as f64)).abs() < 1e-6);
            assert!(f.rungs[n as usize - 1].2 < 1e-8);
        }
        assert!(f.amplitude(1) > f.amplitude(2));
    }

    #[test]
    fn witnesses_shrink() {
        let mut last = f64::INFINITY;
        for n in [1, 2, 4] {
            let w = associator_witness(n, LadderConfig::default()).unwrap();
            assert!(close(w.inside_out.result, (0.0, 0.0), 1e-6));
            assert!(close(w.witness, w.expected, 1e-4), "{:?}", w.witness);
            assert!(w.witness.0 < last);
            last = w.witness.0;
        }
    }

    #[test]
    fn controls_close() {
        for n in [0, -1] {
            let w = associator_witness(n, LadderConfig::default()).unwrap();
            assert!(close(w.witness, (0.0, 0.0), 1e-6));
            assert!(close(w.inside_out.result, (0.0, 0.0), 1e-6));
        }
    }

    /// With the field fixed, halving the step shrinks the change about 16-fold.
    #[test]
    fn fourth_order() {
        let fine = CalibratedField::calibrate(1, LadderConfig::default()).unwrap();
        let at = |h: f64| {
            let f = CalibratedField {
                config: LadderConfig {
                    step: h,
                    ..fine.config
                },
                rungs: fine.rungs.clone(),
            };
            eval_word(&f, &ladder_word(1), Strategy::LeftToRightSplit)
                .unwrap()
                .result
                .0
        };
        let (a, b, c) = (at(0.05 / 16.0), at(0.05 / 32.0), at(0.05 / 64.0));
        let ratio = (c - b).abs() / (b - a).abs();
        assert!(ratio < 1.0 / 16.0, "{ratio}");
    }

    #[test]
    fn word_shape() {
        let w = ladder_word(1);
        assert_eq!(w.len(), 80);
        assert_eq!(w[20], Letter::BInv);
        assert_eq!(w[79], Letter::A);
        assert_eq!(ladder_word(-1)[20], Letter::B);
        let f = CalibratedField::calibrate(0, LadderConfig::default()).unwrap();
        assert_eq!(
            eval_word(&f, &w[..3], Strategy::InsideOut).unwrap_err(),
            FlowError::OddWord
        );
    }
}
