//! Area groupoids over S² and S²×S².
//!
//! An arrow `(y, x, a)` runs from `x` to `y`; `(z, y, a)·(y, x, a′)` is
//! `(z, x, a + a′ + A(Δxyz))` when `x + z ≠ 0` and the area lies in the
//! open window `(−π, π)`.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{GeometryError, UnitVector3};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerances {
    /// Maximal distance between `h.y` and `g.x` for composable arrows.
    pub composable: f64,
    /// `x·y < −1 + antipodal` counts as antipodal.
    pub antipodal: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            composable: 1e-9,
            antipodal: 1e-9,
        }
    }
}

/// Signed area of the spherical triangle, in `(−2π, 2π]`.
pub fn signed_triangle_area(
    x: UnitVector3,
    y: UnitVector3,
    z: UnitVector3,
) -> Result<f64, GeometryError> {
    let tol = Tolerances::default().antipodal;
    if x.antipodal_to(y, tol) || y.antipodal_to(z, tol) || z.antipodal_to(x, tol) {
        return Err(GeometryError::DegenerateTriangle);
    }
    let triple: f64 = x.0.iter().zip(y.cross(z)).map(|(a, b)| a * b).sum();
    let den = 1.0 + x.dot(y) + y.dot(z) + z.dot(x);
    Ok(2.0 * triple.atan2(den))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SphereArrow {
    pub y: UnitVector3,
    pub x: UnitVector3,
    pub a: f64,
}

impl SphereArrow {
    pub fn unit(x: UnitVector3) -> Self {
        SphereArrow { y: x, x, a: 0.0 }
    }

    pub fn inverse(&self) -> Self {
        SphereArrow {
            y: self.x,
            x: self.y,
            a: -self.a,
        }
    }
}

/// `None` when `x + z = 0` or the triangle leaves the window.
pub fn mult_sphere(
    g: &SphereArrow,
    h: &SphereArrow,
    tol: Tolerances,
) -> Result<Option<SphereArrow>, GeometryError> {
    if g.x.dist(h.y) > tol.composable {
        return Err(GeometryError::NotComposable);
    }
    let (z, y, x) = (g.y, g.x, h.x);
    if x.antipodal_to(z, tol.antipodal) {
        return Ok(None);
    }
    let area = match signed_triangle_area(x, y, z) {
        Ok(a) => a,
        Err(_) => return Ok(None),
    };
    if area <= -PI || area >= PI {
        return Ok(None);
    }
    Ok(Some(SphereArrow {
        y: z,
        x,
        a: g.a + h.a + area,
    }))
}

/// Regular tetrahedron vertices, inscribed in the unit sphere.
pub fn tetrahedron_vertices() -> [UnitVector3; 4] {
    [
        (1.0, 1.0, 1.0),
        (1.0, -1.0, -1.0),
        (-1.0, 1.0, -1.0),
        (-1.0, -1.0, 1.0),
    ]
    .map(|(a, b, c)| UnitVector3::new(a, b, c).expect("nonzero"))
}

/// `x₁ … x₇`: the vertices walked in order, with the projected edge
/// midpoints in between.
pub fn tetrahedron_points() -> [UnitVector3; 7] {
    let v = tetrahedron_vertices();
    let m = |i: usize, j: usize| v[i].midpoint(v[j]).expect("vertices are not antipodal");
    [v[0], m(0, 1), v[1], m(1, 2), v[2], m(2, 3), v[3]]
}

#[derive(Debug, Clone, Serialize)]
pub struct TetraWitness {
    pub points: [UnitVector3; 7],
    /// `F(E((D(CB))A))`
    pub left: f64,
    /// `((F((ED)C))B)A`
    pub right: f64,
    pub difference: f64,
}

pub fn tetrahedron_witness() -> TetraWitness {
    let x = tetrahedron_points();
    let arrow = |j: usize| SphereArrow {
        y: x[j + 1],
        x: x[j],
        a: 0.0,
    };
    let [a, b, c, d, e, f] = [0, 1, 2, 3, 4, 5].map(arrow);
    let tol = Tolerances::default();
    let m = |g: SphereArrow, h: SphereArrow| {
        mult_sphere(&g, &h, tol)
            .expect("composable by construction")
            .expect("inside the window")
    };
    let left = m(f, m(e, m(m(d, m(c, b)), a)));
    let right = m(m(m(f, m(m(e, d), c)), b), a);
    TetraWitness {
        points: x,
        left: left.a,
        right: right.a,
        difference: left.a - right.a,
    }
}

/// An arrow of the product groupoid over S²×S² with twist `λ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LambdaArrow {
    pub y: UnitVector3,
    pub yp: UnitVector3,
    pub x: UnitVector3,
    pub xp: UnitVector3,
    pub a: f64,
}

impl LambdaArrow {
    pub fn unit(x: UnitVector3, xp: UnitVector3) -> Self {
        LambdaArrow {
            y: x,
            yp: xp,
            x,
            xp,
            a: 0.0,
        }
    }
}

/// Half-width of the window on the second triangle: `π/|λ|` capped at
/// `π`, so that the quadrangle argument applies to both factors. `None`
/// when `λ = 0` (no condition).
pub fn second_window(lambda: f64) -> Option<f64> {
    (lambda != 0.0).then(|| PI / lambda.abs().max(1.0))
}

/// `a₁ + a₂ + A(Δxyz) + λ·A(Δx′y′z′)`, with the second area confined to
/// [`second_window`].
pub fn mult_lambda(
    g: &LambdaArrow,
    h: &LambdaArrow,
    lambda: f64,
    tol: Tolerances,
) -> Result<Option<LambdaArrow>, GeometryError> {
    mult_lambda_windowed(g, h, lambda, second_window(lambda), tol)
}

/// As [`mult_lambda`] with an explicit half-width for the second window.
pub fn mult_lambda_windowed(
    g: &LambdaArrow,
    h: &LambdaArrow,
    lambda: f64,
    window: Option<f64>,
    tol: Tolerances,
) -> Result<Option<LambdaArrow>, GeometryError> {
    if g.x.dist(h.y) > tol.composable || g.xp.dist(h.yp) > tol.composable {
        return Err(GeometryError::NotComposable);
    }
    if h.x.antipodal_to(g.y, tol.antipodal) || h.xp.antipodal_to(g.yp, tol.antipodal) {
        return Ok(None);
    }
    let (Ok(first), Ok(second)) = (
        signed_triangle_area(h.x, g.x, g.y),
        signed_triangle_area(h.xp, g.xp, g.yp),
    ) else {
        return Ok(None);
    };
    if first <= -PI || first >= PI {
        return Ok(None);
    }
    if window.is_some_and(|w| second.abs() >= w) {
        return Ok(None);
    }
    Ok(Some(LambdaArrow {
        y: g.y,
        yp: g.yp,
        x: h.x,
        xp: h.xp,
        a: g.a + h.a + first + lambda * second,
    }))
}

pub fn random_unit(rng: &mut impl Rng) -> UnitVector3 {
    let z: f64 = rng.gen_range(-1.0..1.0);
    let phi: f64 = rng.gen_range(0.0..2.0 * PI);
    let r = (1.0 - z * z).sqrt();
    UnitVector3::new(r * phi.cos(), r * phi.sin(), z).expect("on the sphere")
}

#[derive(Debug, Clone, Serialize)]
pub struct QuadReport {
    pub lambda: Option<f64>,
    pub window: Option<f64>,
    pub seed: u64,
    pub attempts: usize,
    /// Largest defect of the quadrangle identity mod 4π over all samples.
    pub max_mod_defect: f64,
    pub admissible: usize,
    /// Largest |(gh)k − g(hk)| over admissible triples.
    pub max_exact_defect: f64,
    pub passed: bool,
}

fn reduce_4pi(v: f64) -> f64 {
    let r = v.rem_euclid(4.0 * PI);
    if r > 2.0 * PI {
        r - 4.0 * PI
    } else {
        r
    }
}

/// Samples random triples until `target` admissible ones (all four
/// products defined) are found, checking both bracketings agree. With
/// `lambda = None` the plain groupoid over S² is used.
pub fn quad_check(target: usize, seed: u64, lambda: Option<f64>, tol: f64) -> QuadReport {
    quad_check_windowed(target, seed, lambda, lambda.and_then(second_window), tol)
}

pub fn quad_check_windowed(
    target: usize,
    seed: u64,
    lambda: Option<f64>,
    window: Option<f64>,
    tol: f64,
) -> QuadReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let t = Tolerances::default();
    let mut rep = QuadReport {
        lambda,
        window: if lambda.is_some() { window } else { Some(PI) },
        seed,
        attempts: 0,
        max_mod_defect: 0.0,
        admissible: 0,
        max_exact_defect: 0.0,
        passed: true,
    };
    let max_attempts = target.saturating_mul(100).max(1000);
    while rep.admissible < target && rep.attempts < max_attempts {
        rep.attempts += 1;
        let [w, x, y, z] = [0; 4].map(|_| random_unit(&mut rng));
        let [wp, xp, yp, zp] = [0; 4].map(|_| random_unit(&mut rng));
        let area = |p, q, r| signed_triangle_area(p, q, r).ok();
        if let (Some(a1), Some(a2), Some(a3), Some(a4)) =
            (area(x, y, z), area(w, x, z), area(w, x, y), area(w, y, z))
        {
            rep.max_mod_defect = rep.max_mod_defect.max(reduce_4pi(a1 + a2 - a3 - a4).abs());
        }
        let [a1, a2, a3] = [0; 3].map(|_| rng.gen_range(-1.0..1.0));
        let (l, r) = match lambda {
            None => {
                let g = SphereArrow { y: z, x: y, a: a1 };
                let h = SphereArrow { y, x, a: a2 };
                let k = SphereArrow { y: x, x: w, a: a3 };
                let m = |p: &SphereArrow, q: &SphereArrow| mult_sphere(p, q, t).ok().flatten();
                let (Some(gh), Some(hk)) = (m(&g, &h), m(&h, &k)) else {
                    continue;
                };
                let (Some(l), Some(r)) = (m(&gh, &k), m(&g, &hk)) else {
                    continue;
                };
                (l.a, r.a)
            }
            Some(lam) => {
                let g = LambdaArrow {
                    y: z,
                    yp: zp,
                    x: y,
                    xp: yp,
                    a: a1,
                };
                let h = LambdaArrow {
                    y,
                    yp,
                    x,
                    xp,
                    a: a2,
                };
                let k = LambdaArrow {
                    y: x,
                    yp: xp,
                    x: w,
                    xp: wp,
                    a: a3,
                };
                let m = |p: &LambdaArrow, q: &LambdaArrow| {
                    mult_lambda_windowed(p, q, lam, window, t).ok().flatten()
                };
                let (Some(gh), Some(hk)) = (m(&g, &h), m(&h, &k)) else {
                    continue;
                };
                let (Some(l), Some(r)) = (m(&gh, &k), m(&g, &hk)) else {
                    continue;
                };
                (l.a, r.a)
            }
        };
        rep.admissible += 1;
        rep.max_exact_defect = rep.max_exact_defect.max((l - r).abs());
    }
    rep.passed = rep.admissible == target && rep.max_exact_defect < tol && rep.max_mod_defect < tol;
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn e(i: usize) -> UnitVector3 {
        let mut v = [0.0; 3];
        v[i] = 1.0;
        UnitVector3(v)
    }

    #[test]
    fn octant() {
        assert!((signed_triangle_area(e(0), e(1), e(2)).unwrap() - PI / 2.0).abs() < 1e-12);
        assert!((signed_triangle_area(e(1), e(0), e(2)).unwrap() + PI / 2.0).abs() < 1e-12);
        assert_eq!(signed_triangle_area(e(0), e(0), e(1)).unwrap(), 0.0);
        let minus = UnitVector3([-1.0, 0.0, 0.0]);
        assert_eq!(
            signed_triangle_area(e(0), minus, e(1)),
            Err(GeometryError::DegenerateTriangle)
        );
    }

    #[test]
    fn units_are_identities() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let t = Tolerances::default();
        for _ in 0..100 {
            let (x, y) = (random_unit(&mut rng), random_unit(&mut rng));
            if x.antipodal_to(y, 1e-6) {
                continue;
            }
            let g = SphereArrow { y, x, a: 0.3 };
            for p in [
                mult_sphere(&g, &SphereArrow::unit(x), t),
                mult_sphere(&SphereArrow::unit(y), &g, t),
            ] {
                let p = p.unwrap().unwrap();
                assert!((p.a - g.a).abs() < 1e-12 && p.x == x && p.y == y);
            }
            let back = mult_sphere(&g.inverse(), &g, t).unwrap().unwrap();
            assert!(back.a.abs() < 1e-12 && back.x == x && back.y == x);
        }
    }

    #[test]
    fn not_composable() {
        let g = SphereArrow {
            y: e(1),
            x: e(0),
            a: 0.0,
        };
        assert_eq!(
            mult_sphere(&g, &g, Tolerances::default()),
            Err(GeometryError::NotComposable)
        );
    }

    #[test]
    fn tetrahedron() {
        let w = tetrahedron_witness();
        assert!((w.left - 2.0 * PI).abs() < 1e-9, "{}", w.left);
        assert!((w.right + 2.0 * PI).abs() < 1e-9, "{}", w.right);
        assert!((w.difference - 4.0 * PI).abs() < 1e-9);
    }

    #[test]
    fn lambda_zero_reduces() {
        let t = Tolerances::default();
        let (x, y, z) = (e(0), e(1), e(2));
        let g = LambdaArrow {
            y: z,
            yp: x,
            x: y,
            xp: x,
            a: 0.0,
        };
        let h = LambdaArrow {
            y,
            yp: x,
            x,
            xp: x,
            a: 0.0,
        };
        let p = mult_lambda(&g, &h, 0.0, t).unwrap().unwrap();
        let q = mult_sphere(
            &SphereArrow { y: z, x: y, a: 0.0 },
            &SphereArrow { y, x, a: 0.0 },
            t,
        )
        .unwrap()
        .unwrap();
        assert!((p.a - q.a).abs() < 1e-15);
        let u = LambdaArrow::unit(x, x);
        let k = LambdaArrow {
            y: e(1),
            yp: e(2),
            x,
            xp: x,
            a: 1.0,
        };
        assert_eq!(mult_lambda(&k, &u, 2.0, t).unwrap(), Some(k));
    }

    #[test]
    fn quadrangle_identity() {
        for lambda in [None, Some(0.0), Some(0.5), Some(2f64.sqrt())] {
            let r = quad_check(10_000, 7, lambda, 1e-9);
            assert!(r.passed, "{r:?}");
        }
    }

    #[test]
    fn wide_second_window_breaks_associativity() {
        let r = quad_check_windowed(2_000, 7, Some(0.5), Some(2.0 * PI), 1e-9);
        assert!(!r.passed);
        assert!((r.max_exact_defect - 2.0 * PI).abs() < 1e-6);
    }

    proptest! {
        #[test]
        fn area_is_antisymmetric(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (x, y, z) = (random_unit(&mut rng), random_unit(&mut rng), random_unit(&mut rng));
            if let (Ok(a), Ok(b)) = (signed_triangle_area(x, y, z), signed_triangle_area(y, x, z)) {
                prop_assert!(reduce_4pi(a + b).abs() < 1e-12);
                prop_assert!(a > -2.0 * PI && a <= 2.0 * PI);
            }
        }

        #[test]
        fn products_respect_endpoints(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (x, y, z) = (random_unit(&mut rng), random_unit(&mut rng), random_unit(&mut rng));
            let g = SphereArrow { y: z, x: y, a: 0.1 };
            let h = SphereArrow { y, x, a: -0.2 };
            if let Some(p) = mult_sphere(&g, &h, Tolerances::default()).unwrap() {
                prop_assert_eq!(p.x, x);
                prop_assert_eq!(p.y, z);
            }
        }
    }
}
