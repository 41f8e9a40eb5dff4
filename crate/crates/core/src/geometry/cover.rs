//! The universal cover of the plane minus a small disk, as a local group.
//!
//! Sheets are indexed by the signed number of crossings of a fixed ray
//! from the disk centre. A product `g·h` with `h` over the base ball moves
//! along the segment from `g` to `g + h`; with only `g` over the ball, the
//! segment runs from `h` instead. When both lie over the ball the first
//! rule wins.

use std::f64::consts::PI;

use serde::Serialize;
use thiserror::Error;

use super::V2;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CoverConfig {
    pub center: V2,
    pub radius: f64,
    pub ball: f64,
    pub ray_angle: f64,
}

impl Default for CoverConfig {
    fn default() -> Self {
        CoverConfig {
            center: V2(1.0, 0.0),
            radius: 0.05,
            ball: 0.75,
            ray_angle: -PI / 4.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CoverPoint {
    pub p: V2,
    pub w: i64,
}

impl CoverPoint {
    pub fn origin() -> Self {
        CoverPoint {
            p: V2(0.0, 0.0),
            w: 0,
        }
    }
}

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
pub enum CoverError {
    #[error("point lies in the removed disk")]
    InsideDisk,
    #[error("neither factor lies over the base ball")]
    NotInBall,
    #[error("segment meets the removed disk")]
    SegmentHitsDisk,
}

impl CoverConfig {
    pub fn in_ball(&self, g: &CoverPoint) -> bool {
        g.w == 0 && g.p.norm() < self.ball
    }

    fn ray(&self) -> V2 {
        V2(self.ray_angle.cos(), self.ray_angle.sin())
    }

    /// Whether the closed segment comes within `radius` of the centre.
    pub fn segment_hits_disk(&self, a: V2, b: V2) -> bool {
        let d = b - a;
        let len2 = d.dot(d);
        let t = if len2 == 0.0 {
            0.0
        } else {
            ((self.center - a).dot(d) / len2).clamp(0.0, 1.0)
        };
        (a + d * t - self.center).norm() <= self.radius
    }

    /// Signed crossings of the ray by the directed segment, counterclockwise
    /// positive; endpoints on the ray count on the nonnegative side.
    pub fn crossings(&self, a: V2, b: V2) -> i64 {
        let r = self.ray();
        let side = |p: V2| r.cross(p - self.center);
        let (sa, sb) = (side(a), side(b));
        let up = sa < 0.0 && sb >= 0.0;
        let down = sa >= 0.0 && sb < 0.0;
        if !up && !down {
            return 0;
        }
        let s = sa / (sa - sb);
        let hit = a + (b - a) * s;
        if (hit - self.center).dot(r) <= 0.0 {
            return 0;
        }
        if up {
            1
        } else {
            -1
        }
    }

    fn lift(&self, start: &CoverPoint, step: V2) -> Result<CoverPoint, CoverError> {
        let end = start.p + step;
        if self.segment_hits_disk(start.p, end) {
            return Err(CoverError::SegmentHitsDisk);
        }
        Ok(CoverPoint {
            p: end,
            w: start.w + self.crossings(start.p, end),
        })
    }
}

pub fn cover_mult(
    cfg: &CoverConfig,
    g: &CoverPoint,
    h: &CoverPoint,
) -> Result<CoverPoint, CoverError> {
    if (g.p - cfg.center).norm() <= cfg.radius || (h.p - cfg.center).norm() <= cfg.radius {
        return Err(CoverError::InsideDisk);
    }
    if cfg.in_ball(h) {
        cfg.lift(g, h.p)
    } else if cfg.in_ball(g) {
        cfg.lift(h, g.p)
    } else {
        Err(CoverError::NotInBall)
    }
}

/// Only elements over the base ball are invertible.
pub fn cover_inv(cfg: &CoverConfig, g: &CoverPoint) -> Option<CoverPoint> {
    cfg.in_ball(g).then_some(CoverPoint { p: -g.p, w: 0 })
}

#[derive(Debug, Clone, Serialize)]
pub struct CoverWitness {
    pub config: CoverConfig,
    pub a: CoverPoint,
    pub b: CoverPoint,
    pub c: CoverPoint,
    pub ab: CoverPoint,
    pub bc: CoverPoint,
    /// `(ab)c`
    pub left: CoverPoint,
    /// `a(bc)`
    pub right: CoverPoint,
    pub same_point: bool,
    pub winding_difference: i64,
}

/// Three elements over the ball whose two products pass on either side of
/// the disk.
pub fn cover_witness(cfg: &CoverConfig) -> Result<CoverWitness, CoverError> {
    let pt = |x, y| CoverPoint { p: V2(x, y), w: 0 };
    let (a, b, c) = (pt(0.0, 0.4), pt(0.6, 0.0), pt(0.6, -0.4));
    let ab = cover_mult(cfg, &a, &b)?;
    let bc = cover_mult(cfg, &b, &c)?;
    let left = cover_mult(cfg, &ab, &c)?;
    let right = cover_mult(cfg, &a, &bc)?;
    Ok(CoverWitness {
        config: *cfg,
        a,
        b,
        c,
        ab,
        bc,
        left,
        right,
        same_point: (left.p - right.p).norm() < 1e-12,
        winding_difference: left.w - right.w,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn origin_is_neutral() {
        let cfg = CoverConfig::default();
        let g = CoverPoint {
            p: V2(1.3, 0.2),
            w: 2,
        };
        assert_eq!(cover_mult(&cfg, &g, &CoverPoint::origin()).unwrap(), g);
        assert_eq!(cover_mult(&cfg, &CoverPoint::origin(), &g).unwrap(), g);
    }

    #[test]
    fn small_vectors_add() {
        let cfg = CoverConfig::default();
        let g = CoverPoint {
            p: V2(-0.2, 0.1),
            w: 0,
        };
        let h = CoverPoint {
            p: V2(0.1, 0.3),
            w: 0,
        };
        let p = cover_mult(&cfg, &g, &h).unwrap();
        assert!((p.p - V2(-0.1, 0.4)).norm() < 1e-15);
        assert_eq!(p.w, 0);
    }

    #[test]
    fn blocked_segment() {
        let cfg = CoverConfig::default();
        let g = CoverPoint {
            p: V2(0.7, 0.0),
            w: 0,
        };
        let h = CoverPoint {
            p: V2(0.6, 0.0),
            w: 0,
        };
        assert_eq!(cover_mult(&cfg, &g, &h), Err(CoverError::SegmentHitsDisk));
        let far = CoverPoint {
            p: V2(3.0, 0.0),
            w: 0,
        };
        assert_eq!(cover_mult(&cfg, &far, &far), Err(CoverError::NotInBall));
    }

    #[test]
    fn witness_changes_sheet() {
        let w = cover_witness(&CoverConfig::default()).unwrap();
        assert!(w.same_point);
        assert_eq!(w.winding_difference.abs(), 1);
        assert!((w.left.p - V2(1.2, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn full_turn_counts_once() {
        let cfg = CoverConfig::default();
        let square = [
            V2(0.5, 0.5),
            V2(1.5, 0.5),
            V2(1.5, -0.5),
            V2(0.5, -0.5),
            V2(0.5, 0.5),
        ];
        let total: i64 = square.windows(2).map(|s| cfg.crossings(s[0], s[1])).sum();
        assert_eq!(total, -1);
    }

    proptest! {
        /// Moving interior points without touching the disk keeps the sheets.
        #[test]
        fn winding_is_stable_under_perturbation(dx in -0.015f64..0.015, dy in -0.015f64..0.015) {
            let cfg = CoverConfig::default();
            let pt = |x: f64, y: f64| CoverPoint { p: V2(x, y), w: 0 };
            let (a, b, c) = (pt(0.0 + dx, 0.4 + dy), pt(0.6 + dy, 0.0 + dx), pt(0.6 - dx, -0.4 + dy));
            let l = cover_mult(&cfg, &cover_mult(&cfg, &a, &b).unwrap(), &c).unwrap();
            let r = cover_mult(&cfg, &a, &cover_mult(&cfg, &b, &c).unwrap()).unwrap();
            prop_assert_eq!(l.w - r.w, cover_witness(&cfg).unwrap().winding_difference);
        }
    }
}
