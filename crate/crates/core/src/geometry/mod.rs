//! Continuum examples: area groupoids over spheres, their period lattice,
//! the punctured-plane cover, and exports of finite samples to tables.

pub mod cover;
pub mod export;
pub mod lattice;
pub mod sphere;

use std::ops::{Add, Mul, Neg, Sub};

use serde::Serialize;
use thiserror::Error;

pub use cover::{
    cover_inv, cover_mult, cover_witness, CoverConfig, CoverError, CoverPoint, CoverWitness,
};
pub use export::{export_cover_grid, export_sphere, export_tetrahedron, Export};
pub use lattice::{monodromy_lattice, Lambda, PeriodLattice};
pub use sphere::{
    mult_lambda, mult_lambda_windowed, mult_sphere, quad_check, quad_check_windowed, second_window,
    signed_triangle_area, tetrahedron_points, tetrahedron_witness, LambdaArrow, QuadReport,
    SphereArrow, TetraWitness, Tolerances,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeometryError {
    #[error("zero vector cannot be normalized")]
    ZeroVector,
    #[error("antipodal pair in triangle")]
    DegenerateTriangle,
    #[error("arrows are not composable")]
    NotComposable,
}

/// A point of the unit sphere.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct UnitVector3(pub [f64; 3]);

impl UnitVector3 {
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self, GeometryError> {
        let n = (x * x + y * y + z * z).sqrt();
        if n < 1e-300 {
            return Err(GeometryError::ZeroVector);
        }
        Ok(UnitVector3([x / n, y / n, z / n]))
    }

    pub fn dot(self, o: Self) -> f64 {
        self.0.iter().zip(o.0).map(|(a, b)| a * b).sum()
    }

    pub fn cross(self, o: Self) -> [f64; 3] {
        let [a, b, c] = self.0;
        let [d, e, f] = o.0;
        [b * f - c * e, c * d - a * f, a * e - b * d]
    }

    pub fn dist(self, o: Self) -> f64 {
        self.0
            .iter()
            .zip(o.0)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
    }

    /// Radial projection of the midpoint.
    pub fn midpoint(self, o: Self) -> Result<Self, GeometryError> {
        UnitVector3::new(self.0[0] + o.0[0], self.0[1] + o.0[1], self.0[2] + o.0[2])
    }

    pub fn antipodal_to(self, o: Self, tol: f64) -> bool {
        self.dot(o) < -1.0 + tol
    }
}

/// A plane vector, for the cover example.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct V2(pub f64, pub f64);

impl V2 {
    pub fn norm(self) -> f64 {
        self.0.hypot(self.1)
    }

    pub fn cross(self, o: V2) -> f64 {
        self.0 * o.1 - self.1 * o.0
    }

    pub fn dot(self, o: V2) -> f64 {
        self.0 * o.0 + self.1 * o.1
    }
}

impl Add for V2 {
    type Output = V2;
    fn add(self, o: V2) -> V2 {
        V2(self.0 + o.0, self.1 + o.1)
    }
}

impl Sub for V2 {
    type Output = V2;
    fn sub(self, o: V2) -> V2 {
        V2(self.0 - o.0, self.1 - o.1)
    }
}

impl Neg for V2 {
    type Output = V2;
    fn neg(self) -> V2 {
        V2(-self.0, -self.1)
    }
}

impl Mul<f64> for V2 {
    type Output = V2;
    fn mul(self, s: f64) -> V2 {
        V2(self.0 * s, self.1 * s)
    }
}
