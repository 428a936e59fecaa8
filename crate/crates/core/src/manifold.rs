//! SL2R × SL2R with the product metric ⟨,⟩, the nearly Kähler metric g and the
//! structures J, P, Q, G.
//!
//! Tangent vectors at (A,B) are (Aα, Bβ) with α, β ∈ sl2R. All structures are
//! left-invariant, so the pointwise algebra in [`lie`] acts on the pair (α,β)
//! alone; [`NKVector`] carries the base point and checks it.

use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::algebra::{minkowski_inner, Mat2, Sl2Elem, TOL_POINT};
use crate::error::{Error, Result};

/// A pair of 2×2 matrices with componentwise linear structure. Used for
/// Lie-algebra pairs (α,β) and for ambient R⁸ vectors alike.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Pair {
    pub a: Mat2,
    pub b: Mat2,
}

impl Pair {
    pub const ZERO: Pair = Pair { a: Mat2::ZERO, b: Mat2::ZERO };

    pub const fn new(a: Mat2, b: Mat2) -> Self {
        Pair { a, b }
    }

    pub fn max_abs(&self) -> f64 {
        self.a.max_abs().max(self.b.max_abs())
    }

    pub fn coords(&self) -> [f64; 8] {
        let (x, y) = (self.a.coords(), self.b.coords());
        [x[0], x[1], x[2], x[3], y[0], y[1], y[2], y[3]]
    }

    pub fn from_coords(c: &[f64; 8]) -> Self {
        Pair::new(Mat2::new(c[0], c[1], c[2], c[3]), Mat2::new(c[4], c[5], c[6], c[7]))
    }

    pub fn is_finite(&self) -> bool {
        self.a.is_finite() && self.b.is_finite()
    }
}

impl Add for Pair {
    type Output = Pair;
    fn add(self, o: Pair) -> Pair {
        Pair::new(self.a + o.a, self.b + o.b)
    }
}

impl Sub for Pair {
    type Output = Pair;
    fn sub(self, o: Pair) -> Pair {
        Pair::new(self.a - o.a, self.b - o.b)
    }
}

impl Neg for Pair {
    type Output = Pair;
    fn neg(self) -> Pair {
        Pair::new(-self.a, -self.b)
    }
}

impl Mul<f64> for Pair {
    type Output = Pair;
    fn mul(self, s: f64) -> Pair {
        Pair::new(self.a * s, self.b * s)
    }
}

impl Mul<Pair> for f64 {
    type Output = Pair;
    fn mul(self, p: Pair) -> Pair {
        p * self
    }
}

/// Pointwise tensor algebra on left-trivialized tangent vectors (α,β).
pub mod lie {
    use super::Pair;
    use crate::algebra::{cross, minkowski_inner};

    const INV_SQRT3: f64 = 0.577_350_269_189_625_8;

    pub fn j(z: &Pair) -> Pair {
        Pair::new((z.a - z.b * 2.0) * INV_SQRT3, (z.a * 2.0 - z.b) * INV_SQRT3)
    }

    pub fn p(z: &Pair) -> Pair {
        Pair::new(z.b, z.a)
    }

    pub fn q(z: &Pair) -> Pair {
        Pair::new(-z.a, z.b)
    }

    pub fn product_inner(z: &Pair, w: &Pair) -> f64 {
        minkowski_inner(&z.a, &w.a) + minkowski_inner(&z.b, &w.b)
    }

    /// g(Z,W) = (2/3)⟨Z,W⟩ − (1/3)⟨PZ,W⟩.
    pub fn metric(z: &Pair, w: &Pair) -> f64 {
        (2.0 / 3.0) * product_inner(z, w) - (1.0 / 3.0) * product_inner(&p(z), w)
    }

    /// g(Z,W) = ¼(⟨Z,W⟩ + ⟨JZ,JW⟩).
    pub fn metric_quarter(z: &Pair, w: &Pair) -> f64 {
        0.25 * (product_inner(z, w) + product_inner(&j(z), &j(w)))
    }

    pub fn tensor_g(x: &Pair, y: &Pair) -> Pair {
        let (al, be, ga, de) = (&x.a, &x.b, &y.a, &y.b);
        let c = 2.0 / (3.0 * 3f64.sqrt());
        let ag = cross(al, ga);
        let ad = cross(al, de);
        let gb = cross(ga, be);
        let bd = cross(be, de);
        Pair::new((-ag - ad + gb + bd * 2.0) * c, (-(ag * 2.0) + ad - gb + bd) * c)
    }

    /// R(X,Y)Z from the closed form in g, J and P.
    pub fn curvature(x: &Pair, y: &Pair, z: &Pair) -> Pair {
        let g = metric;
        let (jx, jy, jz) = (j(x), j(y), j(z));
        let (px, py) = (p(x), p(y));
        let (jpx, jpy) = (j(&px), j(&py));
        let a = (*x * g(y, z) - *y * g(x, z)) * (-5.0 / 6.0);
        let b = (jx * g(&jy, z) - jy * g(&jx, z) - jz * (2.0 * g(&jx, y))) * (-1.0 / 6.0);
        let c = (px * g(&py, z) - py * g(&px, z) + jpx * g(&jpy, z) - jpy * g(&jpx, z))
            * (-2.0 / 3.0);
        a + b + c
    }

    /// R(X,Y,Z,W) := g(R(X,Y)Z, W).
    pub fn curvature4(x: &Pair, y: &Pair, z: &Pair, w: &Pair) -> f64 {
        metric(&curvature(x, y, z), w)
    }

    /// (∇_X G)(Y,Z) = −(2/3)(g(X,Z)JY − g(X,Y)JZ − g(JY,Z)X).
    pub fn nabla_g(x: &Pair, y: &Pair, z: &Pair) -> Pair {
        let g = metric;
        (j(y) * g(x, z) - j(z) * g(x, y) - *x * g(&j(y), z)) * (-2.0 / 3.0)
    }

    /// Levi-Civita connection of the product metric on left-invariant fields.
    pub fn euclidean_gamma(z: &Pair, w: &Pair) -> Pair {
        Pair::new(cross(&z.a, &w.a), cross(&z.b, &w.b))
    }

    /// ½(JG(Z,PW) + JG(W,PZ)), the difference ∇ᴱ − ∇.
    pub fn connection_difference(z: &Pair, w: &Pair) -> Pair {
        (j(&tensor_g(z, &p(w))) + j(&tensor_g(w, &p(z)))) * 0.5
    }

    /// Nearly Kähler Levi-Civita connection on left-invariant fields.
    pub fn gamma(z: &Pair, w: &Pair) -> Pair {
        euclidean_gamma(z, w) - connection_difference(z, w)
    }

    /// Lie bracket of left-invariant fields.
    pub fn bracket(z: &Pair, w: &Pair) -> Pair {
        Pair::new(z.a.commutator(&w.a), z.b.commutator(&w.b))
    }

    /// (∇_X P)Y for Y extended left-invariantly.
    pub fn nabla_p(x: &Pair, y: &Pair) -> Pair {
        gamma(x, &p(y)) - p(&gamma(x, y))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct NKPoint {
    pub a: Mat2,
    pub b: Mat2,
}

impl NKPoint {
    pub fn new(a: Mat2, b: Mat2) -> Result<Self> {
        let a = Sl2Elem::new(a)?.mat();
        let b = Sl2Elem::new(b)?.mat();
        Ok(NKPoint { a, b })
    }

    pub fn identity() -> Self {
        NKPoint { a: Mat2::IDENTITY, b: Mat2::IDENTITY }
    }

    pub fn pair(&self) -> Pair {
        Pair::new(self.a, self.b)
    }

    pub fn distance(&self, o: &NKPoint) -> f64 {
        (self.a - o.a).max_abs().max((self.b - o.b).max_abs())
    }
}

/// Tangent vector (Aα, Bβ) at base (A,B).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct NKVector {
    pub base: NKPoint,
    pub alpha: Mat2,
    pub beta: Mat2,
}

impl NKVector {
    pub fn new(base: NKPoint, alpha: Mat2, beta: Mat2) -> Result<Self> {
        let t = alpha.trace().abs().max(beta.trace().abs());
        if t > TOL_POINT {
            return Err(Error::NotTangent(format!("trace {t:.3e} of Lie component")));
        }
        Ok(NKVector { base, alpha, beta })
    }

    pub fn from_lie(base: NKPoint, z: Pair) -> Self {
        NKVector { base, alpha: z.a, beta: z.b }
    }

    pub fn lie(&self) -> Pair {
        Pair::new(self.alpha, self.beta)
    }

    fn same(&self, z: Pair) -> NKVector {
        NKVector::from_lie(self.base, z)
    }
}

fn check_base(z: &NKVector, w: &NKVector) -> Result<()> {
    let d = z.base.distance(&w.base);
    if d > TOL_POINT {
        Err(Error::BaseMismatch(d))
    } else {
        Ok(())
    }
}

pub fn product_inner(z: &NKVector, w: &NKVector) -> Result<f64> {
    check_base(z, w)?;
    Ok(lie::product_inner(&z.lie(), &w.lie()))
}

pub fn apply_j(z: &NKVector) -> NKVector {
    z.same(lie::j(&z.lie()))
}

pub fn apply_p(z: &NKVector) -> NKVector {
    z.same(lie::p(&z.lie()))
}

pub fn apply_q(z: &NKVector) -> NKVector {
    z.same(lie::q(&z.lie()))
}

pub fn nk_metric(z: &NKVector, w: &NKVector) -> Result<f64> {
    check_base(z, w)?;
    Ok(lie::metric(&z.lie(), &w.lie()))
}

/// The ¼(⟨,⟩ + ⟨J,J⟩) form of g, kept as a cross-check.
pub fn nk_metric_quarter(z: &NKVector, w: &NKVector) -> Result<f64> {
    check_base(z, w)?;
    Ok(lie::metric_quarter(&z.lie(), &w.lie()))
}

pub fn tensor_g(x: &NKVector, y: &NKVector) -> Result<NKVector> {
    check_base(x, y)?;
    Ok(x.same(lie::tensor_g(&x.lie(), &y.lie())))
}

pub fn curvature_r(x: &NKVector, y: &NKVector, z: &NKVector) -> Result<NKVector> {
    check_base(x, y)?;
    check_base(x, z)?;
    Ok(x.same(lie::curvature(&x.lie(), &y.lie(), &z.lie())))
}

pub fn nabla_g(w: &NKVector, x: &NKVector, y: &NKVector) -> Result<NKVector> {
    check_base(w, x)?;
    check_base(w, y)?;
    Ok(w.same(lie::nabla_g(&w.lie(), &x.lie(), &y.lie())))
}

/// The isometries ℱ₁ (factor swap) and ℱ_ABC: (p,q) ↦ (ApC, BqC).
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Isometry {
    Swap,
    Translate { a: Mat2, b: Mat2, c: Mat2 },
}

impl Isometry {
    pub fn translate(a: Mat2, b: Mat2, c: Mat2) -> Result<Self> {
        for m in [a, b, c] {
            Sl2Elem::new(m)?;
        }
        Ok(Isometry::Translate { a, b, c })
    }

    pub fn map_point(&self, p: &NKPoint) -> NKPoint {
        match *self {
            Isometry::Swap => NKPoint { a: p.b, b: p.a },
            Isometry::Translate { a, b, c } => NKPoint { a: a * p.a * c, b: b * p.b * c },
        }
    }

    /// Differential in left trivialization: ApαC = (ApC)(C⁻¹αC).
    pub fn differential(&self, z: &Pair) -> Pair {
        match *self {
            Isometry::Swap => Pair::new(z.b, z.a),
            Isometry::Translate { c, .. } => {
                let ci = c.inverse_unimodular();
                Pair::new(ci * z.a * c, ci * z.b * c)
            }
        }
    }

    pub fn apply(&self, p: &NKPoint, z: Option<&NKVector>) -> (NKPoint, Option<NKVector>) {
        let q = self.map_point(p);
        (q, z.map(|v| NKVector::from_lie(q, self.differential(&v.lie()))))
    }
}

/// The two linear isometries R⁴₂ → R^{2×2} onto SL2R.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Chart {
    /// Domain form −x₁y₁ − x₂y₂ + x₃y₃ + x₄y₄.
    F1,
    /// Domain form ⟨,⟩*.
    F2,
}

pub fn h31_inner(chart: Chart, x: &[f64; 4], y: &[f64; 4]) -> f64 {
    match chart {
        Chart::F1 => -x[0] * y[0] - x[1] * y[1] + x[2] * y[2] + x[3] * y[3],
        Chart::F2 => crate::algebra::star_inner(x, y),
    }
}

/// The linear map of the chart, valid for points and tangent vectors alike.
pub fn h31_linear(chart: Chart, x: &[f64; 4]) -> Mat2 {
    match chart {
        Chart::F1 => Mat2::new(x[0] - x[2], x[3] - x[1], x[3] + x[1], x[0] + x[2]),
        Chart::F2 => Mat2::new(x[0], x[1], x[2], -x[3]),
    }
}

pub fn h31_chart(x: &[f64; 4], chart: Chart) -> Result<Sl2Elem> {
    let n = h31_inner(chart, x, x);
    if (n + 1.0).abs() > TOL_POINT {
        return Err(Error::NotOnHyperquadric(n));
    }
    Sl2Elem::new(h31_linear(chart, x))
}

/// Ambient R⁸ = R^{2×2} × R^{2×2} coordinates of a tangent vector.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AmbientVec8 {
    pub u: [f64; 4],
    pub v: [f64; 4],
}

pub fn to_ambient(z: &NKVector) -> AmbientVec8 {
    AmbientVec8 { u: (z.base.a * z.alpha).coords(), v: (z.base.b * z.beta).coords() }
}

pub fn from_ambient(w: &AmbientVec8, base: &NKPoint) -> Result<NKVector> {
    let alpha = base.a.inverse_unimodular() * Mat2::from_coords(w.u);
    let beta = base.b.inverse_unimodular() * Mat2::from_coords(w.v);
    // ⟨Aα, A⟩ = −½ tr α, so tangency is tracelessness
    let scale = 1.0 + alpha.max_abs().max(beta.max_abs());
    let t = alpha.trace().abs().max(beta.trace().abs());
    if t > TOL_POINT * scale {
        return Err(Error::NotTangent(format!("normal component {t:.3e}")));
    }
    Ok(NKVector { base: *base, alpha, beta })
}

/// Tangency of an ambient vector at a point of one factor.
pub fn factor_tangency(point: &Mat2, v: &Mat2) -> f64 {
    minkowski_inner(point, v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{SPLIT_I, SPLIT_J, SPLIT_K};

    fn at_id(a: Mat2, b: Mat2) -> NKVector {
        NKVector::new(NKPoint::identity(), a, b).unwrap()
    }

    #[test]
    fn product_inner_examples() {
        let z = at_id(SPLIT_I, Mat2::ZERO);
        assert_eq!(product_inner(&z, &z).unwrap(), 1.0);
        let z = at_id(SPLIT_K, SPLIT_K);
        assert_eq!(product_inner(&z, &z).unwrap(), -2.0);
        let z = at_id(SPLIT_I, SPLIT_J);
        let w = at_id(SPLIT_J, SPLIT_I);
        assert_eq!(product_inner(&z, &w).unwrap(), 0.0);
    }

    #[test]
    fn base_mismatch() {
        let z = at_id(SPLIT_I, Mat2::ZERO);
        let other = NKPoint::new(Mat2::diag(2.0, 0.5), Mat2::IDENTITY).unwrap();
        let w = NKVector::new(other, SPLIT_I, Mat2::ZERO).unwrap();
        assert!(matches!(nk_metric(&z, &w), Err(Error::BaseMismatch(_))));
        assert!(matches!(tensor_g(&z, &w), Err(Error::BaseMismatch(_))));
    }

    #[test]
    fn structure_examples() {
        let s3 = 3f64.sqrt();
        let z = apply_j(&at_id(SPLIT_I, Mat2::ZERO));
        assert!((z.alpha - SPLIT_I * (1.0 / s3)).max_abs() < 1e-15);
        assert!((z.beta - SPLIT_I * (2.0 / s3)).max_abs() < 1e-15);
        let z = apply_j(&at_id(SPLIT_I, SPLIT_I));
        assert!((z.alpha + SPLIT_I * (1.0 / s3)).max_abs() < 1e-15);
        assert!((z.beta - SPLIT_I * (1.0 / s3)).max_abs() < 1e-15);
        let z = apply_p(&at_id(SPLIT_I, SPLIT_J));
        assert_eq!((z.alpha, z.beta), (SPLIT_J, SPLIT_I));
        let z = apply_q(&at_id(SPLIT_I, SPLIT_J));
        assert_eq!((z.alpha, z.beta), (-SPLIT_I, SPLIT_J));
    }

    #[test]
    fn metric_examples() {
        let z = at_id(SPLIT_I, Mat2::ZERO);
        assert!((nk_metric(&z, &z).unwrap() - 2.0 / 3.0).abs() < 1e-15);
        let z = at_id(SPLIT_I, SPLIT_I);
        assert!((nk_metric(&z, &z).unwrap() - 2.0 / 3.0).abs() < 1e-15);
        assert!((nk_metric_quarter(&z, &z).unwrap() - 2.0 / 3.0).abs() < 1e-15);
        // tangent of the main_thm1 surface is null
        let n = Mat2::new(0.0, 2.0, 0.0, 0.0);
        let z = at_id(n, Mat2::ZERO);
        assert_eq!(nk_metric(&z, &z).unwrap(), 0.0);
    }

    #[test]
    fn g_example() {
        let x = at_id(SPLIT_I, Mat2::ZERO);
        let y = at_id(SPLIT_J, Mat2::ZERO);
        let c = 2.0 / (3.0 * 3f64.sqrt());
        let g = tensor_g(&x, &y).unwrap();
        assert!((g.alpha + SPLIT_K * c).max_abs() < 1e-15);
        assert!((g.beta + SPLIT_K * (2.0 * c)).max_abs() < 1e-15);
        assert_eq!(tensor_g(&x, &x).unwrap().lie().max_abs(), 0.0);
    }

    #[test]
    fn nabla_g_term_by_term() {
        let x = Pair::new(SPLIT_I, Mat2::ZERO);
        let y = Pair::new(SPLIT_J, Mat2::ZERO);
        let w = Pair::new(SPLIT_K * 0.3 + SPLIT_I, SPLIT_J * -0.8);
        let g = lie::metric;
        let direct = (lie::j(&x) * g(&w, &y) - lie::j(&y) * g(&w, &x) - w * g(&lie::j(&x), &y))
            * (-2.0 / 3.0);
        assert!((lie::nabla_g(&w, &x, &y) - direct).max_abs() < 1e-15);
        let xx = lie::nabla_g(&x, &x, &x);
        assert!(xx.max_abs() < 1e-15);
    }

    #[test]
    fn charts() {
        assert_eq!(h31_chart(&[1.0, 0.0, 0.0, 0.0], Chart::F1).unwrap().mat(), Mat2::IDENTITY);
        assert_eq!(h31_chart(&[1.0, 0.0, 0.0, -1.0], Chart::F2).unwrap().mat(), Mat2::IDENTITY);
        assert!(matches!(
            h31_chart(&[1.0, 1.0, 0.0, 0.0], Chart::F1),
            Err(Error::NotOnHyperquadric(_))
        ));
    }

    #[test]
    fn ambient_examples() {
        let z = at_id(SPLIT_I, Mat2::ZERO);
        let w = to_ambient(&z);
        assert_eq!(w, AmbientVec8 { u: [1.0, 0.0, 0.0, -1.0], v: [0.0; 4] });
        let back = from_ambient(&w, &NKPoint::identity()).unwrap();
        assert_eq!(back, z);
        let bad = AmbientVec8 { u: [1.0, 0.0, 0.0, 0.0], v: [0.0; 4] };
        assert!(matches!(from_ambient(&bad, &NKPoint::identity()), Err(Error::NotTangent(_))));
    }

    #[test]
    fn swap_and_identity_translate() {
        let m = Mat2::new(2.0, 1.0, 1.0, 1.0);
        let p = NKPoint::new(Mat2::IDENTITY, m).unwrap();
        assert_eq!(Isometry::Swap.map_point(&p), NKPoint { a: m, b: Mat2::IDENTITY });
        let t = Isometry::translate(Mat2::IDENTITY, Mat2::IDENTITY, Mat2::IDENTITY).unwrap();
        assert_eq!(t.map_point(&p), p);
        assert!(Isometry::translate(Mat2::diag(2.0, 2.0), Mat2::IDENTITY, Mat2::IDENTITY).is_err());
    }
}
