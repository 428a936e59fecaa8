//! 2×2 real matrices, SL2R and its Lie algebra, and the two signature (2,2)
//! inner products on R⁴.

use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Membership tolerance for det = 1 and trace = 0.
pub const TOL_POINT: f64 = 1e-9;

/// Row-major 2×2 matrix, identified with (a11, a12, a21, a22) ∈ R⁴.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Mat2 {
    pub a11: f64,
    pub a12: f64,
    pub a21: f64,
    pub a22: f64,
}

impl Mat2 {
    pub const ZERO: Mat2 = Mat2::new(0.0, 0.0, 0.0, 0.0);
    pub const IDENTITY: Mat2 = Mat2::new(1.0, 0.0, 0.0, 1.0);

    pub const fn new(a11: f64, a12: f64, a21: f64, a22: f64) -> Self {
        Mat2 { a11, a12, a21, a22 }
    }

    pub fn diag(a: f64, b: f64) -> Self {
        Mat2::new(a, 0.0, 0.0, b)
    }

    pub fn from_coords(x: [f64; 4]) -> Self {
        Mat2::new(x[0], x[1], x[2], x[3])
    }

    pub fn coords(&self) -> [f64; 4] {
        [self.a11, self.a12, self.a21, self.a22]
    }

    pub fn det(&self) -> f64 {
        self.a11 * self.a22 - self.a12 * self.a21
    }

    pub fn trace(&self) -> f64 {
        self.a11 + self.a22
    }

    pub fn adjugate(&self) -> Mat2 {
        Mat2::new(self.a22, -self.a12, -self.a21, self.a11)
    }

    pub fn transpose(&self) -> Mat2 {
        Mat2::new(self.a11, self.a21, self.a12, self.a22)
    }

    pub fn inverse(&self) -> Option<Mat2> {
        let d = self.det();
        if d == 0.0 || !d.is_finite() {
            None
        } else {
            Some(self.adjugate() * (1.0 / d))
        }
    }

    /// Inverse of a matrix known to be (close to) unimodular.
    pub fn inverse_unimodular(&self) -> Mat2 {
        self.adjugate() * (1.0 / self.det())
    }

    pub fn is_finite(&self) -> bool {
        self.coords().iter().all(|v| v.is_finite())
    }

    pub fn max_abs(&self) -> f64 {
        self.coords().iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn commutator(&self, other: &Mat2) -> Mat2 {
        *self * *other - *other * *self
    }

    /// Traceless part.
    pub fn traceless(&self) -> Mat2 {
        let h = 0.5 * self.trace();
        *self - Mat2::IDENTITY * h
    }

    /// Matrix exponential in closed form: for traceless N, N² = −det(N)·Id.
    pub fn exp(&self) -> Mat2 {
        let h = 0.5 * self.trace();
        let n = self.traceless();
        let d = -n.det();
        let (c, s) = if d.abs() < 1e-8 {
            (1.0 + d / 2.0 + d * d / 24.0, 1.0 + d / 6.0 + d * d / 120.0)
        } else if d > 0.0 {
            let w = d.sqrt();
            (w.cosh(), w.sinh() / w)
        } else {
            let w = (-d).sqrt();
            (w.cos(), w.sin() / w)
        };
        (Mat2::IDENTITY * c + n * s) * h.exp()
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, o: Mat2) -> Mat2 {
        Mat2::new(self.a11 + o.a11, self.a12 + o.a12, self.a21 + o.a21, self.a22 + o.a22)
    }
}

impl Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, o: Mat2) -> Mat2 {
        Mat2::new(self.a11 - o.a11, self.a12 - o.a12, self.a21 - o.a21, self.a22 - o.a22)
    }
}

impl AddAssign for Mat2 {
    fn add_assign(&mut self, o: Mat2) {
        *self = *self + o;
    }
}

impl SubAssign for Mat2 {
    fn sub_assign(&mut self, o: Mat2) {
        *self = *self - o;
    }
}

impl Neg for Mat2 {
    type Output = Mat2;
    fn neg(self) -> Mat2 {
        self * -1.0
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, o: Mat2) -> Mat2 {
        Mat2::new(
            self.a11 * o.a11 + self.a12 * o.a21,
            self.a11 * o.a12 + self.a12 * o.a22,
            self.a21 * o.a11 + self.a22 * o.a21,
            self.a21 * o.a12 + self.a22 * o.a22,
        )
    }
}

impl Mul<f64> for Mat2 {
    type Output = Mat2;
    fn mul(self, s: f64) -> Mat2 {
        Mat2::new(self.a11 * s, self.a12 * s, self.a21 * s, self.a22 * s)
    }
}

impl Mul<Mat2> for f64 {
    type Output = Mat2;
    fn mul(self, m: Mat2) -> Mat2 {
        m * self
    }
}

/// A point of SL2R.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Sl2Elem(Mat2);

impl Sl2Elem {
    pub fn new(m: Mat2) -> Result<Self> {
        if !m.is_finite() {
            return Err(Error::InvalidInput("non-finite matrix entry".into()));
        }
        let d = m.det();
        if (d - 1.0).abs() > TOL_POINT {
            return Err(Error::InvalidGroupElement(d));
        }
        Ok(Sl2Elem(m))
    }

    pub fn identity() -> Self {
        Sl2Elem(Mat2::IDENTITY)
    }

    pub fn mat(&self) -> Mat2 {
        self.0
    }
}

/// An element of sl2R (traceless).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Sl2Alg(Mat2);

impl Sl2Alg {
    pub fn new(m: Mat2) -> Result<Self> {
        if !m.is_finite() {
            return Err(Error::InvalidInput("non-finite matrix entry".into()));
        }
        if m.trace().abs() > TOL_POINT {
            return Err(Error::InvalidInput(format!("trace {} is not zero", m.trace())));
        }
        Ok(Sl2Alg(m))
    }

    pub fn mat(&self) -> Mat2 {
        self.0
    }
}

/// Split quaternion basis of sl2R.
pub const SPLIT_I: Mat2 = Mat2::new(1.0, 0.0, 0.0, -1.0);
pub const SPLIT_J: Mat2 = Mat2::new(0.0, 1.0, 1.0, 0.0);
pub const SPLIT_K: Mat2 = Mat2::new(0.0, 1.0, -1.0, 0.0);
/// Upper nilpotent generator.
pub const NILPOTENT: Mat2 = Mat2::new(0.0, 1.0, 0.0, 0.0);

#[derive(Clone, Copy, Debug)]
pub struct SplitQuaternions {
    pub i: Sl2Alg,
    pub j: Sl2Alg,
    pub k: Sl2Alg,
}

impl SplitQuaternions {
    pub fn standard() -> Self {
        SplitQuaternions { i: Sl2Alg(SPLIT_I), j: Sl2Alg(SPLIT_J), k: Sl2Alg(SPLIT_K) }
    }

    pub fn basis(&self) -> [Mat2; 3] {
        [self.i.mat(), self.j.mat(), self.k.mat()]
    }
}

pub fn adjugate(m: &Mat2) -> Mat2 {
    m.adjugate()
}

/// ⟨a,b⟩ = −½·tr(adj(a)·b); ⟨a,a⟩ = −det(a).
pub fn minkowski_inner(a: &Mat2, b: &Mat2) -> f64 {
    -0.5 * (a.a22 * b.a11 - a.a12 * b.a21 - a.a21 * b.a12 + a.a11 * b.a22)
}

/// ⟨x,y⟩* = ½(x₁y₄ + x₂y₃ + x₃y₂ + x₄y₁).
pub fn star_inner(x: &[f64; 4], y: &[f64; 4]) -> f64 {
    0.5 * (x[0] * y[3] + x[1] * y[2] + x[2] * y[1] + x[3] * y[0])
}

/// α×β = ½(αβ − βα).
pub fn cross(a: &Mat2, b: &Mat2) -> Mat2 {
    a.commutator(b) * 0.5
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn adjugate_examples() {
        assert_eq!(adjugate(&Mat2::new(1.0, 2.0, 0.0, 1.0)), Mat2::new(1.0, -2.0, 0.0, 1.0));
        assert_eq!(adjugate(&Mat2::IDENTITY), Mat2::IDENTITY);
        assert_eq!(adjugate(&SPLIT_K), Mat2::new(0.0, -1.0, 1.0, 0.0));
        let m = Mat2::new(0.3, -1.2, 2.5, 0.7);
        let p = adjugate(&m) * m;
        assert!((p - Mat2::IDENTITY * m.det()).max_abs() < 1e-15);
    }

    #[test]
    fn minkowski_examples() {
        assert_eq!(minkowski_inner(&Mat2::IDENTITY, &Mat2::IDENTITY), -1.0);
        assert_eq!(minkowski_inner(&SPLIT_I, &SPLIT_I), 1.0);
        assert_eq!(minkowski_inner(&SPLIT_J, &SPLIT_J), 1.0);
        assert_eq!(minkowski_inner(&SPLIT_K, &SPLIT_K), -1.0);
        let b = [SPLIT_I, SPLIT_J, SPLIT_K];
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    assert_eq!(minkowski_inner(&b[i], &b[j]), 0.0);
                }
            }
        }
    }

    #[test]
    fn minkowski_coordinate_form() {
        let x = [0.4, -1.1, 2.0, 0.3];
        let y = [1.5, 0.2, -0.7, 0.9];
        let coord = -0.5 * (x[0] * y[3] - x[1] * y[2] - x[2] * y[1] + x[3] * y[0]);
        let v = minkowski_inner(&Mat2::from_coords(x), &Mat2::from_coords(y));
        assert!((v - coord).abs() < 1e-15);
    }

    #[test]
    fn star_examples() {
        assert_eq!(star_inner(&[1.0, 0.0, 0.0, -1.0], &[1.0, 0.0, 0.0, -1.0]), -1.0);
        assert_eq!(star_inner(&[1.0, 0.0, 0.0, 0.0], &[0.0, 0.0, 0.0, 1.0]), 0.5);
        assert_eq!(star_inner(&[0.0, 1.0, 0.0, 0.0], &[0.0, 1.0, 0.0, 0.0]), 0.0);
    }

    #[test]
    fn cross_examples() {
        assert_eq!(cross(&SPLIT_I, &SPLIT_J), SPLIT_K);
        assert_eq!(cross(&SPLIT_J, &SPLIT_K), -SPLIT_I);
        assert_eq!(cross(&SPLIT_K, &SPLIT_K), Mat2::ZERO);
    }

    #[test]
    fn exp_matches_series() {
        for m in [SPLIT_I * 0.7, SPLIT_K * 1.3, NILPOTENT * 2.0, Mat2::new(0.2, 0.5, -0.3, -0.2)] {
            let mut term = Mat2::IDENTITY;
            let mut sum = Mat2::IDENTITY;
            for n in 1..40 {
                term = term * m * (1.0 / n as f64);
                sum += term;
            }
            assert!((m.exp() - sum).max_abs() < 1e-13);
            assert!((m.exp().det() - 1.0).abs() < 1e-13);
        }
    }

    #[test]
    fn membership() {
        assert!(Sl2Elem::new(Mat2::new(2.0, 0.0, 0.0, 0.5)).is_ok());
        assert!(matches!(Sl2Elem::new(Mat2::diag(2.0, 2.0)), Err(Error::InvalidGroupElement(_))));
        assert!(Sl2Alg::new(SPLIT_K).is_ok());
        assert!(Sl2Alg::new(Mat2::IDENTITY).is_err());
        assert!(Sl2Elem::new(Mat2::new(f64::NAN, 0.0, 0.0, 1.0)).is_err());
        let q = SplitQuaternions::standard();
        assert_eq!(q.basis(), [SPLIT_I, SPLIT_J, SPLIT_K]);
    }
}
