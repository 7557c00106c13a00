//! Numerical verification of the explicit Lagrangian fibrations on two
//! hard-coded model spaces:
//!
//! * `CnMinusD`: complex affine n-space minus the divisor `w = -1`, where
//!   `w = z_1 ... z_n`, with the log fibration
//!   `piG = (log|w+1|, mu)` and its argument twin `piH = (arg(w+1), mu)`;
//!   `mu` is the anti-diagonal torus moment map
//!   `(|z_i|^2/2 - |z_n|^2/2)_{i<n}`.
//! * `MilnorFiber`: the conic surface `{y z = prod (x - r_j)}` in complex
//!   3-space with `piA = (log|x|, |y|^2/2 - |z|^2/2)` and its twin
//!   `piL = (arg x, |y|^2/2 - |z|^2/2)`.
//!
//! All routines are generic over the real scalar (any [`Real`], i.e. an IEEE
//! float); the ambient symplectic form is the standard constant form.

pub mod group;
pub mod linalg;
pub mod sample;
pub mod twin;

pub use group::{group_invariance_check, singular_rays, GroupInvarianceReport, RaysReport};
pub use sample::{lagrangian_residual, sample_fiber, tangent_frame, LagrangianReport, TangentFrame};
pub use twin::{commuting_diagram_check, twin_intersection, TwinReport};

use std::fmt::{Debug, Display};

use num_complex::Complex;
use num_traits::{Float, FromPrimitive};
use thiserror::Error;

/// Real scalar for the numerical routines (instantiate with `f32`/`f64`).
pub trait Real: Float + FromPrimitive + Debug + Display + Default + Send + Sync + 'static {}
impl<T: Float + FromPrimitive + Debug + Display + Default + Send + Sync + 'static> Real for T {}

/// Convert an `f64` constant into the generic scalar.
pub fn c<F: Real>(x: f64) -> F {
    F::from_f64(x).expect("representable constant")
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FibError {
    #[error("base point lies on a wall or the declared discriminant")]
    BaseOnWall,
    #[error("projection failed for {failed} of {total} seeds (limit 10%)")]
    ProjectionFailure { failed: usize, total: usize },
    #[error("rank-deficient Jacobian: fiber is near-singular")]
    RankDeficient,
    #[error("model space roots must be distinct")]
    DegenerateRoots,
    #[error("fibration {0:?} is not defined on this model space")]
    WrongFibration(FibrationKind),
    #[error("invalid parameters: {0}")]
    BadParams(String),
}

/// A point of the ambient complex affine space.
pub type Point<F> = Vec<Complex<F>>;

/// The two hard-coded model spaces.
#[derive(Debug, Clone, PartialEq)]
pub enum ModelSpace<F: Real> {
    /// Complex n-space minus `{z_1...z_n = -1}`.
    CnMinusD { n: usize },
    /// `{(x,y,z) : y z = prod_j (x - r_j)}` with distinct roots.
    MilnorFiber { roots: Vec<Complex<F>> },
}

impl<F: Real> ModelSpace<F> {
    pub fn cn(n: usize) -> Self {
        assert!(n >= 2);
        ModelSpace::CnMinusD { n }
    }

    /// Milnor-fiber model with roots of unity `e^{2 pi i j / p}`, j=1..p.
    pub fn milnor_unity(p: usize) -> Self {
        let tau = c::<F>(std::f64::consts::TAU);
        let roots = (1..=p)
            .map(|j| {
                Complex::from_polar(F::one(), tau * c::<F>(j as f64) / c::<F>(p as f64))
            })
            .collect();
        ModelSpace::MilnorFiber { roots }
    }

    pub fn milnor(roots: Vec<Complex<F>>) -> Result<Self, FibError> {
        for (i, r) in roots.iter().enumerate() {
            for s in &roots[..i] {
                if (*r - *s).norm() < c(1e-9) {
                    return Err(FibError::DegenerateRoots);
                }
            }
        }
        Ok(ModelSpace::MilnorFiber { roots })
    }

    /// Number of ambient complex coordinates.
    pub fn ambient_dim(&self) -> usize {
        match self {
            ModelSpace::CnMinusD { n } => *n,
            ModelSpace::MilnorFiber { .. } => 3,
        }
    }

    /// `prod_j (x - r_j)` for the Milnor model.
    pub fn milnor_rhs(&self, x: Complex<F>) -> Complex<F> {
        match self {
            ModelSpace::MilnorFiber { roots } => roots
                .iter()
                .fold(Complex::new(F::one(), F::zero()), |acc, r| acc * (x - *r)),
            _ => panic!("not a Milnor model"),
        }
    }

    /// Real-valued defining constraints (empty for the open toric model).
    pub fn defining(&self, pt: &Point<F>) -> Vec<F> {
        match self {
            ModelSpace::CnMinusD { .. } => Vec::new(),
            ModelSpace::MilnorFiber { .. } => {
                let (x, y, z) = (pt[0], pt[1], pt[2]);
                let d = y * z - self.milnor_rhs(x);
                vec![d.re, d.im]
            }
        }
    }

    /// Max absolute defining-equation residual.
    pub fn defining_residual(&self, pt: &Point<F>) -> F {
        self.defining(pt)
            .into_iter()
            .fold(F::zero(), |a, b| a.max(b.abs()))
    }

    /// Real dimension of the model space.
    pub fn real_dim(&self) -> usize {
        2 * self.ambient_dim() - self.defining(&vec![Complex::new(F::one(), F::zero()); self.ambient_dim()]).len()
    }
}

/// The four fibration formulas.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FibrationKind {
    /// `(log|w+1|, mu)` on the toric model.
    PiG,
    /// `(arg(w+1), mu)` on the toric model.
    PiH,
    /// `(log|x|, |y|^2/2 - |z|^2/2)` on the Milnor model.
    PiA,
    /// `(arg x, |y|^2/2 - |z|^2/2)` on the Milnor model.
    PiL,
}

impl FibrationKind {
    pub fn parse(s: &str) -> Option<Self> {
        match s.to_ascii_lowercase().as_str() {
            "pig" => Some(Self::PiG),
            "pih" => Some(Self::PiH),
            "pia" => Some(Self::PiA),
            "pil" => Some(Self::PiL),
            _ => None,
        }
    }

    pub fn defined_on<F: Real>(&self, space: &ModelSpace<F>) -> bool {
        matches!(
            (self, space),
            (Self::PiG | Self::PiH, ModelSpace::CnMinusD { .. })
                | (Self::PiA | Self::PiL, ModelSpace::MilnorFiber { .. })
        )
    }

    /// Number of base coordinates.
    pub fn base_dim<F: Real>(&self, space: &ModelSpace<F>) -> usize {
        match space {
            ModelSpace::CnMinusD { n } => *n,
            ModelSpace::MilnorFiber { .. } => 2,
        }
    }

    /// Real dimension of a regular fiber.
    pub fn fiber_dim<F: Real>(&self, space: &ModelSpace<F>) -> usize {
        space.real_dim() - self.base_dim(space)
    }

    /// Which base components are angular (compared modulo 2 pi).
    pub fn angular(&self, base_dim: usize) -> Vec<bool> {
        let mut a = vec![false; base_dim];
        if matches!(self, Self::PiH | Self::PiL) {
            a[0] = true;
        }
        a
    }

    /// Evaluate the fibration at an ambient point.
    pub fn eval<F: Real>(&self, space: &ModelSpace<F>, pt: &Point<F>) -> Vec<F> {
        match (self, space) {
            (Self::PiG | Self::PiH, ModelSpace::CnMinusD { n }) => {
                let w = pt
                    .iter()
                    .fold(Complex::new(F::one(), F::zero()), |acc, z| acc * *z);
                let w1 = w + Complex::new(F::one(), F::zero());
                let first = if matches!(self, Self::PiG) {
                    w1.norm().ln()
                } else {
                    w1.arg()
                };
                let half = c::<F>(0.5);
                let mut out = vec![first];
                let last = pt[n - 1].norm_sqr() * half;
                for z in &pt[..n - 1] {
                    out.push(z.norm_sqr() * half - last);
                }
                out
            }
            (Self::PiA | Self::PiL, ModelSpace::MilnorFiber { .. }) => {
                let x = pt[0];
                let first = if matches!(self, Self::PiA) {
                    x.norm().ln()
                } else {
                    x.arg()
                };
                let half = c::<F>(0.5);
                vec![first, pt[1].norm_sqr() * half - pt[2].norm_sqr() * half]
            }
            _ => panic!("fibration not defined on this space"),
        }
    }

    /// True when the base point avoids the declared walls/discriminant.
    pub fn regular_base<F: Real>(&self, space: &ModelSpace<F>, b: &[F]) -> bool {
        let tol = c::<F>(1e-9);
        match (self, space) {
            // Wall {b_1 = 0}: the fibers through w = 0.
            (Self::PiG, ModelSpace::CnMinusD { .. }) => b[0].abs() > tol,
            // Fibers through w = 0 sit over arg(w+1) = 0; the divisor limit
            // sits at arg(w+1) = pi.
            (Self::PiH, ModelSpace::CnMinusD { .. }) => {
                b[0].abs() > tol && (b[0].abs() - c::<F>(std::f64::consts::PI)).abs() > tol
            }
            (Self::PiA, ModelSpace::MilnorFiber { roots }) => {
                // Singular fibers: lambda = 0 and |x| equal to some |r_j|.
                b[1].abs() > tol
                    || roots.iter().all(|r| (r.norm().ln() - b[0]).abs() > tol)
            }
            (Self::PiL, ModelSpace::MilnorFiber { roots }) => {
                b[1].abs() > tol
                    || roots
                        .iter()
                        .all(|r| wrap_angle(r.arg() - b[0]).abs() > tol)
            }
            _ => false,
        }
    }
}

/// Wrap an angle into (-pi, pi].
pub fn wrap_angle<F: Real>(mut a: F) -> F {
    let pi = c::<F>(std::f64::consts::PI);
    let tau = c::<F>(std::f64::consts::TAU);
    while a > pi {
        a = a - tau;
    }
    while a <= -pi {
        a = a + tau;
    }
    a
}

/// Flatten complex coordinates into interleaved real coordinates.
pub fn to_real<F: Real>(pt: &Point<F>) -> Vec<F> {
    pt.iter().flat_map(|z| [z.re, z.im]).collect()
}

/// Inverse of [`to_real`].
pub fn from_real<F: Real>(v: &[F]) -> Point<F> {
    v.chunks(2).map(|c| Complex::new(c[0], c[1])).collect()
}

/// The standard symplectic form `sum dx_i ^ dy_i` on interleaved real
/// coordinates.
pub fn omega<F: Real>(u: &[F], v: &[F]) -> F {
    u.chunks(2)
        .zip(v.chunks(2))
        .fold(F::zero(), |acc, (a, b)| acc + a[0] * b[1] - a[1] * b[0])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fibration_formulas_on_known_points() {
        let space = ModelSpace::<f64>::cn(3);
        // z = (1, 1, 1): w = 1, |w+1| = 2, mu = 0.
        let pt = vec![Complex::new(1.0, 0.0); 3];
        let g = FibrationKind::PiG.eval(&space, &pt);
        assert!((g[0] - 2f64.ln()).abs() < 1e-15);
        assert!(g[1].abs() < 1e-15 && g[2].abs() < 1e-15);
        let h = FibrationKind::PiH.eval(&space, &pt);
        assert_eq!(h[0], 0.0);
    }

    #[test]
    fn milnor_defining_residual() {
        let space = ModelSpace::<f64>::milnor_unity(2);
        // x = 0: rhs = (0-1)(0+1) = -1... roots are -1, 1: rhs = -(0-1)(0+1)?
        let rhs = space.milnor_rhs(Complex::new(0.0, 0.0));
        assert!((rhs.re - (-1.0)).abs() < 1e-14);
        let pt = vec![
            Complex::new(0.0, 0.0),
            Complex::new(1.0, 0.0),
            Complex::new(-1.0, 0.0),
        ];
        assert!(space.defining_residual(&pt) < 1e-14);
    }

    #[test]
    fn omega_antisymmetry() {
        let u = vec![1.0, 2.0, 3.0, 4.0];
        let v = vec![-1.0, 0.5, 2.0, -3.0];
        assert_eq!(omega(&u, &u), 0.0);
        assert_eq!(omega(&u, &v), -omega(&v, &u));
    }

    #[test]
    fn wall_detection() {
        let space = ModelSpace::<f64>::cn(3);
        assert!(!FibrationKind::PiG.regular_base(&space, &[0.0, 0.3, 0.1]));
        assert!(FibrationKind::PiG.regular_base(&space, &[0.5, 0.3, 0.1]));
        let milnor = ModelSpace::<f64>::milnor_unity(2);
        // lambda = 0 with |x| = 1 hits the discriminant.
        assert!(!FibrationKind::PiA.regular_base(&milnor, &[0.0, 0.0]));
        assert!(FibrationKind::PiA.regular_base(&milnor, &[0.0, 0.4]));
        assert!(FibrationKind::PiA.regular_base(&milnor, &[0.7, 0.0]));
    }

    #[test]
    fn generic_scalar_instantiates_with_f32() {
        let space = ModelSpace::<f32>::cn(2);
        let pt = vec![Complex::new(1.0f32, 0.0), Complex::new(1.0, 0.0)];
        let g = FibrationKind::PiG.eval(&space, &pt);
        assert!((g[0] - 2f32.ln()).abs() < 1e-6);
    }
}
