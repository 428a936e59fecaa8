//! Finite-difference jets of immersions and the connections, normals and shape
//! operators built from them.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{minkowski_inner, Mat2};
use crate::error::{Error, Result};
use crate::manifold::{lie, NKPoint, NKVector, Pair};

/// Default central-difference step.
pub const FD_STEP: f64 = 1e-5;
/// Step for nested (second covariant derivative) stencils.
pub const NESTED_STEP: f64 = 1e-4;
/// Residual budget for single-level finite differences.
pub const FD_TOL: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Target {
    Factor,
    Product,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Rect {
    pub x0: f64,
    pub x1: f64,
    pub y0: f64,
    pub y1: f64,
}

impl Rect {
    pub fn square(half: f64) -> Self {
        Rect { x0: -half, x1: half, y0: -half, y1: half }
    }

    pub fn contains(&self, x: f64, y: f64) -> bool {
        x >= self.x0 && x <= self.x1 && y >= self.y0 && y <= self.y1
    }

    /// Row-major grid of `nx × ny` nodes, inset from the boundary.
    pub fn grid(&self, nx: usize, ny: usize, inset: f64) -> Vec<(f64, f64)> {
        let lin = |a: f64, b: f64, n: usize, i: usize| {
            if n == 1 {
                0.5 * (a + b)
            } else {
                a + (b - a) * i as f64 / (n - 1) as f64
            }
        };
        let (x0, x1) = (self.x0 + inset, self.x1 - inset);
        let (y0, y1) = (self.y0 + inset, self.y1 - inset);
        let mut out = Vec::with_capacity(nx * ny);
        for j in 0..ny {
            for i in 0..nx {
                out.push((lin(x0, x1, nx, i), lin(y0, y1, ny, j)));
            }
        }
        out
    }
}

pub type SurfaceFn = Arc<dyn Fn(f64, f64) -> Pair + Send + Sync>;

/// A parametrized surface in SL2R (second component fixed at Id) or in
/// SL2R × SL2R.
#[derive(Clone)]
pub struct SurfaceMap {
    pub name: String,
    pub target: Target,
    pub domain: Rect,
    f: SurfaceFn,
}

impl fmt::Debug for SurfaceMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SurfaceMap")
            .field("name", &self.name)
            .field("target", &self.target)
            .field("domain", &self.domain)
            .finish()
    }
}

impl SurfaceMap {
    pub fn product<F>(name: &str, domain: Rect, f: F) -> Self
    where
        F: Fn(f64, f64) -> (Mat2, Mat2) + Send + Sync + 'static,
    {
        SurfaceMap {
            name: name.to_string(),
            target: Target::Product,
            domain,
            f: Arc::new(move |x, y| {
                let (a, b) = f(x, y);
                Pair::new(a, b)
            }),
        }
    }

    pub fn factor<F>(name: &str, domain: Rect, f: F) -> Self
    where
        F: Fn(f64, f64) -> Mat2 + Send + Sync + 'static,
    {
        SurfaceMap {
            name: name.to_string(),
            target: Target::Factor,
            domain,
            f: Arc::new(move |x, y| Pair::new(f(x, y), Mat2::IDENTITY)),
        }
    }

    pub fn eval(&self, x: f64, y: f64) -> Pair {
        (self.f)(x, y)
    }

    pub fn point(&self, x: f64, y: f64) -> Result<NKPoint> {
        let p = self.eval(x, y);
        NKPoint::new(p.a, p.b)
    }

    /// One factor of a product surface as a surface in SL2R.
    pub fn component(&self, k: usize) -> SurfaceMap {
        let f = self.f.clone();
        let name = format!("{}[{}]", self.name, if k == 0 { "p" } else { "q" });
        SurfaceMap::factor(&name, self.domain, move |x, y| {
            let p = f(x, y);
            if k == 0 {
                p.a
            } else {
                p.b
            }
        })
    }

    /// Same map precomposed with a linear change of coordinates.
    pub fn reparametrize(&self, m: [[f64; 2]; 2], domain: Rect) -> SurfaceMap {
        let f = self.f.clone();
        SurfaceMap {
            name: self.name.clone(),
            target: self.target,
            domain,
            f: Arc::new(move |u, v| f(m[0][0] * u + m[0][1] * v, m[1][0] * u + m[1][1] * v)),
        }
    }

    fn check_stencil(&self, x: f64, y: f64, r: f64) -> Result<()> {
        for (a, b) in [(x - r, y - r), (x + r, y + r)] {
            if !self.domain.contains(a, b) || !a.is_finite() || !b.is_finite() {
                return Err(Error::OutOfDomain(a, b));
            }
        }
        Ok(())
    }

    /// Largest |det − 1| of either component over the given nodes.
    pub fn det_deviation(&self, nodes: &[(f64, f64)]) -> f64 {
        nodes.iter().fold(0.0, |m, &(x, y)| {
            let p = self.eval(x, y);
            m.max((p.a.det() - 1.0).abs()).max((p.b.det() - 1.0).abs())
        })
    }
}

/// Point and ambient first and second derivatives.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Jet2 {
    pub point: Pair,
    pub fx: Pair,
    pub fy: Pair,
    pub fxx: Pair,
    pub fxy: Pair,
    pub fyy: Pair,
}

impl Jet2 {
    pub fn first(&self, i: usize) -> Pair {
        if i == 0 {
            self.fx
        } else {
            self.fy
        }
    }

    pub fn second(&self, i: usize, j: usize) -> Pair {
        match (i, j) {
            (0, 0) => self.fxx,
            (1, 1) => self.fyy,
            _ => self.fxy,
        }
    }

    /// F⁻¹·F_i per factor.
    pub fn lie_first(&self, i: usize) -> Pair {
        to_lie(&self.point, &self.first(i))
    }

    pub fn base(&self) -> NKPoint {
        NKPoint { a: self.point.a, b: self.point.b }
    }
}

/// Left-trivialize an ambient vector at `p`.
pub fn to_lie(p: &Pair, v: &Pair) -> Pair {
    Pair::new(p.a.inverse_unimodular() * v.a, p.b.inverse_unimodular() * v.b)
}

/// Inverse of [`to_lie`].
pub fn from_lie(p: &Pair, z: &Pair) -> Pair {
    Pair::new(p.a * z.a, p.b * z.b)
}

pub fn jet(s: &SurfaceMap, x: f64, y: f64, h: f64) -> Result<Jet2> {
    if !(h > 0.0) {
        return Err(Error::InvalidInput(format!("step {h} must be positive")));
    }
    s.check_stencil(x, y, h)?;
    let f = |a, b| s.eval(a, b);
    let c = f(x, y);
    let (xp, xm, yp, ym) = (f(x + h, y), f(x - h, y), f(x, y + h), f(x, y - h));
    let d1 = 0.5 / h;
    let d2 = 1.0 / (h * h);
    let cross = (f(x + h, y + h) - f(x + h, y - h) - f(x - h, y + h) + f(x - h, y - h))
        * (0.25 * d2);
    Ok(Jet2 {
        point: c,
        fx: (xp - xm) * d1,
        fy: (yp - ym) * d1,
        fxx: (xp - c * 2.0 + xm) * d2,
        fxy: cross,
        fyy: (yp - c * 2.0 + ym) * d2,
    })
}

/// First derivatives only: (point, F_x, F_y).
pub fn first_jet(s: &SurfaceMap, x: f64, y: f64, h: f64) -> Result<(Pair, Pair, Pair)> {
    s.check_stencil(x, y, h)?;
    let d1 = 0.5 / h;
    let fx = (s.eval(x + h, y) - s.eval(x - h, y)) * d1;
    let fy = (s.eval(x, y + h) - s.eval(x, y - h)) * d1;
    Ok((s.eval(x, y), fx, fy))
}

/// Coefficients of a tangent field over {∂x, ∂y}.
pub type Coeffs<'a> = &'a (dyn Fn(f64, f64) -> [f64; 2] + Sync);

pub fn coordinate_field(i: usize) -> impl Fn(f64, f64) -> [f64; 2] + Sync {
    move |_, _| if i == 0 { [1.0, 0.0] } else { [0.0, 1.0] }
}

/// V, W and D_V W in ambient coordinates.
fn ambient_derivative(
    s: &SurfaceMap,
    v: Coeffs,
    w: Coeffs,
    x: f64,
    y: f64,
    h: f64,
) -> Result<(Jet2, Pair, Pair, Pair)> {
    let j = jet(s, x, y, h)?;
    let vc = v(x, y);
    let wc = w(x, y);
    let d1 = 0.5 / h;
    let dw = [
        {
            let (p, m) = (w(x + h, y), w(x - h, y));
            [(p[0] - m[0]) * d1, (p[1] - m[1]) * d1]
        },
        {
            let (p, m) = (w(x, y + h), w(x, y - h));
            [(p[0] - m[0]) * d1, (p[1] - m[1]) * d1]
        },
    ];
    let vv = j.fx * vc[0] + j.fy * vc[1];
    let ww = j.fx * wc[0] + j.fy * wc[1];
    let mut d = Pair::ZERO;
    for i in 0..2 {
        d = d + (j.fx * dw[i][0] + j.fy * dw[i][1]) * vc[i];
        for k in 0..2 {
            d = d + j.second(i, k) * (vc[i] * wc[k]);
        }
    }
    Ok((j, vv, ww, d))
}

/// ∇^{SL2R}_V W = D_V W − ⟨V,W⟩p on a factor surface.
pub fn sl2_connection(s: &SurfaceMap, v: Coeffs, w: Coeffs, x: f64, y: f64, h: f64) -> Result<Mat2> {
    let (j, vv, ww, d) = ambient_derivative(s, v, w, x, y, h)?;
    Ok(d.a - j.point.a * minkowski_inner(&vv.a, &ww.a))
}

/// Convert an ambient derivative D_V W at `p` into the nearly Kähler ∇_V W,
/// through the product connection ∇ᴱ.
fn ambient_to_nk(p: &Pair, vv: &Pair, ww: &Pair, d: &Pair) -> Result<Pair> {
    let s1 = minkowski_inner(&vv.a, &ww.a) + minkowski_inner(&vv.b, &ww.b);
    let s2 = -minkowski_inner(&vv.a, &ww.a) + minkowski_inner(&vv.b, &ww.b);
    let e = *d - *p * (0.5 * s1) - Pair::new(-p.a, p.b) * (0.5 * s2);
    let el = to_lie(p, &e);
    let t = el.a.trace().abs().max(el.b.trace().abs());
    if t > 100.0 * FD_TOL * (1.0 + el.max_abs()) {
        return Err(Error::NotTangent(format!("D_V W has normal residue {t:.3e}")));
    }
    let el = Pair::new(el.a.traceless(), el.b.traceless());
    let (vl, wl) = (to_lie(p, vv), to_lie(p, ww));
    Ok(el - lie::connection_difference(&vl, &wl))
}

/// Nearly Kähler ∇_V W for tangent fields given by coefficients.
pub fn nk_connection(
    s: &SurfaceMap,
    v: Coeffs,
    w: Coeffs,
    x: f64,
    y: f64,
    h: f64,
) -> Result<NKVector> {
    let (j, vv, ww, d) = ambient_derivative(s, v, w, x, y, h)?;
    Ok(NKVector::from_lie(j.base(), ambient_to_nk(&j.point, &vv, &ww, &d)?))
}

/// Nearly Kähler ∇_V Y for a field Y along the surface, given in left
/// trivialization (not necessarily tangent to the surface).
pub fn nk_covariant(
    s: &SurfaceMap,
    v: [f64; 2],
    field: &dyn Fn(f64, f64) -> Result<Pair>,
    x: f64,
    y: f64,
    h: f64,
) -> Result<Pair> {
    let (p, fx, fy) = first_jet(s, x, y, h)?;
    let amb = |a: f64, b: f64| -> Result<Pair> { Ok(from_lie(&s.eval(a, b), &field(a, b)?)) };
    let d1 = 0.5 / h;
    let dx = (amb(x + h, y)? - amb(x - h, y)?) * d1;
    let dy = (amb(x, y + h)? - amb(x, y - h)?) * d1;
    let d = dx * v[0] + dy * v[1];
    let vv = fx * v[0] + fy * v[1];
    let ww = amb(x, y)?;
    ambient_to_nk(&p, &vv, &ww, &d)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TypeLabel {
    I,
    II,
    IV,
}

impl fmt::Display for TypeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TypeLabel::I => "I",
            TypeLabel::II => "II",
            TypeLabel::IV => "IV",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ShapeData {
    /// Column i holds the coefficients of A(∂_i) over {F_x, F_y}.
    pub weingarten: [[f64; 2]; 2],
    pub gram: [[f64; 2]; 2],
    /// (re, im) pairs.
    pub eigenvalues: [(f64, f64); 2],
    pub type_label: TypeLabel,
    pub normal: Mat2,
}

/// Rank threshold relative to the largest singular value of a symmetric 2×2.
pub fn tol_rank_2x2(m: &[[f64; 2]; 2]) -> f64 {
    let tr = m[0][0] + m[1][1];
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    let disc = (0.25 * tr * tr - det).max(0.0).sqrt();
    let smax = (0.5 * tr).abs() + disc;
    1e-7 * (smax + 1.0)
}

/// Lower an R⁴ vector with the Minkowski form ⟨,⟩ on matrices.
fn lower(x: &[f64; 4]) -> [f64; 4] {
    [-0.5 * x[3], 0.5 * x[2], 0.5 * x[1], -0.5 * x[0]]
}

fn det3(m: [[f64; 3]; 3]) -> f64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// Unit normal in SL2R to the plane span{fx, fy} at p, signed by `reference`
/// when given, else with its first non-negligible coordinate positive.
pub fn normal_from_frame(p: &Mat2, fx: &Mat2, fy: &Mat2, reference: Option<&Mat2>) -> Result<Mat2> {
    let gram = [
        [minkowski_inner(fx, fx), minkowski_inner(fx, fy)],
        [minkowski_inner(fy, fx), minkowski_inner(fy, fy)],
    ];
    let gdet = gram[0][0] * gram[1][1] - gram[0][1] * gram[1][0];
    if gdet.abs() < tol_rank_2x2(&gram) {
        return Err(Error::DegenerateInducedMetric(gdet.abs()));
    }
    let rows = [lower(&p.coords()), lower(&fx.coords()), lower(&fy.coords())];
    let mut nu = [0.0; 4];
    for (i, n) in nu.iter_mut().enumerate() {
        let mut m = [[0.0; 3]; 3];
        for (r, row) in rows.iter().enumerate() {
            let mut c = 0;
            for (k, val) in row.iter().enumerate() {
                if k != i {
                    m[r][c] = *val;
                    c += 1;
                }
            }
        }
        *n = if i % 2 == 0 { det3(m) } else { -det3(m) };
    }
    let nu = Mat2::from_coords(nu);
    let n2 = minkowski_inner(&nu, &nu);
    if !(n2 > 0.0) {
        return Err(Error::DegenerateInducedMetric(gdet.abs()));
    }
    let nu = nu * (1.0 / n2.sqrt());
    let sign = match reference {
        Some(r) => {
            if minkowski_inner(&nu, r) < 0.0 {
                -1.0
            } else {
                1.0
            }
        }
        None => {
            let c = nu.coords();
            let first = c.iter().find(|v| v.abs() > 1e-12).copied().unwrap_or(1.0);
            first.signum()
        }
    };
    Ok(nu * sign)
}

pub fn unit_normal(s: &SurfaceMap, x: f64, y: f64, h: f64, reference: Option<&Mat2>) -> Result<Mat2> {
    let (p, fx, fy) = first_jet(s, x, y, h)?;
    normal_from_frame(&p.a, &fx.a, &fy.a, reference)
}

fn eig2(w: &[[f64; 2]; 2]) -> [(f64, f64); 2] {
    let tr = w[0][0] + w[1][1];
    let det = w[0][0] * w[1][1] - w[0][1] * w[1][0];
    let disc = tr * tr - 4.0 * det;
    if disc >= 0.0 {
        let r = disc.sqrt();
        [(0.5 * (tr - r), 0.0), (0.5 * (tr + r), 0.0)]
    } else {
        let r = (-disc).sqrt();
        [(0.5 * tr, -0.5 * r), (0.5 * tr, 0.5 * r)]
    }
}

/// Canonical-form type of a self-adjoint operator on a Lorentzian plane.
pub fn classify_operator(w: &[[f64; 2]; 2], gram: &[[f64; 2]; 2], tol: Option<f64>) -> Result<TypeLabel> {
    let gdet = gram[0][0] * gram[1][1] - gram[0][1] * gram[1][0];
    if !(gdet < 0.0) {
        return Err(Error::InvalidInput("gram matrix is not indefinite".into()));
    }
    let mut gw = [[0.0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            gw[i][j] = gram[i][0] * w[0][j] + gram[i][1] * w[1][j];
        }
    }
    let scale = gw.iter().flatten().fold(0.0f64, |m, v| m.max(v.abs()));
    let asym = (gw[0][1] - gw[1][0]).abs();
    if asym > 1e-6 * (1.0 + scale) {
        return Err(Error::NotSelfAdjoint(asym));
    }
    let tr = w[0][0] + w[1][1];
    let det = w[0][0] * w[1][1] - w[0][1] * w[1][0];
    let tol = tol.unwrap_or(1e-6 * (1.0 + tr.abs() + det.abs()));
    let disc = tr * tr - 4.0 * det;
    Ok(if disc > tol {
        TypeLabel::I
    } else if disc < -tol {
        TypeLabel::IV
    } else {
        let h = 0.5 * tr;
        let off = (w[0][0] - h).abs().max((w[1][1] - h).abs()).max(w[0][1].abs()).max(w[1][0].abs());
        if off > tol {
            TypeLabel::II
        } else {
            TypeLabel::I
        }
    })
}

/// Weingarten operator A_ν X = −(D_X ν)ᵀ of a factor surface, solved in the
/// coordinate frame through the Gram system.
pub fn shape_operator(s: &SurfaceMap, x: f64, y: f64, h: f64, reference: Option<&Mat2>) -> Result<ShapeData> {
    s.check_stencil(x, y, 2.0 * h)?;
    let (p, fx, fy) = first_jet(s, x, y, h)?;
    let (p, fx, fy) = (p.a, fx.a, fy.a);
    let nu = normal_from_frame(&p, &fx, &fy, reference)?;
    let aligned = |a: f64, b: f64| -> Result<Mat2> {
        let n = unit_normal(s, a, b, h, None)?;
        Ok(if minkowski_inner(&n, &nu) < 0.0 { -n } else { n })
    };
    let d1 = 0.5 / h;
    let dnu = [
        (aligned(x + h, y)? - aligned(x - h, y)?) * d1,
        (aligned(x, y + h)? - aligned(x, y - h)?) * d1,
    ];
    let f = [fx, fy];
    let gram = [
        [minkowski_inner(&fx, &fx), minkowski_inner(&fx, &fy)],
        [minkowski_inner(&fy, &fx), minkowski_inner(&fy, &fy)],
    ];
    let mut b = [[0.0; 2]; 2];
    for k in 0..2 {
        for i in 0..2 {
            b[k][i] = -minkowski_inner(&dnu[i], &f[k]);
        }
    }
    let gdet = gram[0][0] * gram[1][1] - gram[0][1] * gram[1][0];
    let inv = [[gram[1][1] / gdet, -gram[0][1] / gdet], [-gram[1][0] / gdet, gram[0][0] / gdet]];
    let mut w = [[0.0; 2]; 2];
    for r in 0..2 {
        for c in 0..2 {
            w[r][c] = inv[r][0] * b[0][c] + inv[r][1] * b[1][c];
        }
    }
    let label = classify_operator(&w, &gram, None)?;
    Ok(ShapeData { weingarten: w, gram, eigenvalues: eig2(&w), type_label: label, normal: nu })
}

/// ⟨H,H⟩ with H = ½·tr(A_ν)·ν.
pub fn mean_curvature_sq(s: &SurfaceMap, x: f64, y: f64, h: f64) -> Result<f64> {
    let sd = shape_operator(s, x, y, h, None)?;
    let tr = sd.weingarten[0][0] + sd.weingarten[1][1];
    Ok(0.25 * tr * tr)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CommutatorReport {
    /// max-norm of (∇_X∇_Y − ∇_Y∇_X)Z − R(X,Y)Z over Z ∈ {∂x, ∂y}.
    pub residual: f64,
    /// max-norm of the closed-form R(X,Y)Z.
    pub scale: f64,
}

/// Compare the nested finite-difference curvature of coordinate fields with
/// the closed form.
pub fn curvature_commutator(s: &SurfaceMap, x: f64, y: f64, h: f64) -> Result<CommutatorReport> {
    s.check_stencil(x, y, 3.0 * h)?;
    let (p, fx, fy) = first_jet(s, x, y, h)?;
    let (xl, yl) = (to_lie(&p, &fx), to_lie(&p, &fy));
    let ex = coordinate_field(0);
    let ey = coordinate_field(1);
    let mut residual = 0.0f64;
    let mut scale = 0.0f64;
    for (zi, zl) in [(0usize, xl), (1, yl)] {
        let ez = coordinate_field(zi);
        let nyz = |a: f64, b: f64| nk_connection(s, &ey, &ez, a, b, h).map(|v| v.lie());
        let nxz = |a: f64, b: f64| nk_connection(s, &ex, &ez, a, b, h).map(|v| v.lie());
        let xy = nk_covariant(s, [1.0, 0.0], &nyz, x, y, h)?;
        let yx = nk_covariant(s, [0.0, 1.0], &nxz, x, y, h)?;
        let closed = lie::curvature(&xl, &yl, &zl);
        residual = residual.max((xy - yx - closed).max_abs());
        scale = scale.max(closed.max_abs());
    }
    Ok(CommutatorReport { residual, scale })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{SPLIT_I, SPLIT_K};

    fn plane() -> SurfaceMap {
        SurfaceMap::product("main", Rect::square(1.0), |s, t| {
            (Mat2::new(1.0, 2.0 * s, 0.0, 1.0), Mat2::new(1.0, 2.0 * t, 0.0, 1.0))
        })
    }

    #[test]
    fn jet_of_affine_surface() {
        let j = jet(&plane(), 0.0, 0.0, FD_STEP).unwrap();
        assert!((j.fx.a - Mat2::new(0.0, 2.0, 0.0, 0.0)).max_abs() < 1e-9);
        assert!(j.fx.b.max_abs() < 1e-9);
        assert!(j.fxx.max_abs() < 1e-4);
        assert!(matches!(jet(&plane(), 1.0, 0.0, FD_STEP), Err(Error::OutOfDomain(..))));
    }

    #[test]
    fn one_parameter_subgroup_is_geodesic() {
        let a0 = Mat2::new(2.0, 1.0, 1.0, 1.0);
        let s = SurfaceMap::factor("sub", Rect::square(1.0), move |x, y| {
            a0 * (SPLIT_K * x).exp() * (SPLIT_I * y).exp()
        });
        let ex = coordinate_field(0);
        let n = sl2_connection(&s, &ex, &ex, 0.1, 0.0, FD_STEP).unwrap();
        assert!(n.max_abs() < 1e-5, "{n:?}");
    }

    #[test]
    fn classify_examples() {
        let g = [[-1.0, 0.0], [0.0, 1.0]];
        assert_eq!(classify_operator(&[[2.0, 0.0], [0.0, 1.0]], &g, None).unwrap(), TypeLabel::I);
        let null = [[0.0, 1.0], [1.0, 0.0]];
        assert_eq!(classify_operator(&[[0.5, 0.0], [1.0, 0.5]], &null, None).unwrap(), TypeLabel::II);
        assert_eq!(classify_operator(&[[0.5, -2.0], [2.0, 0.5]], &g, None).unwrap(), TypeLabel::IV);
        assert_eq!(classify_operator(&[[0.5, 0.0], [0.0, 0.5]], &g, None).unwrap(), TypeLabel::I);
        assert!(matches!(
            classify_operator(&[[0.5, 1.0], [1.0, 0.5]], &g, None),
            Err(Error::NotSelfAdjoint(_))
        ));
    }

    #[test]
    fn grid_is_row_major_and_inset() {
        let g = Rect::square(1.0).grid(3, 2, 0.5);
        assert_eq!(g.len(), 6);
        assert_eq!(g[0], (-0.5, -0.5));
        assert_eq!(g[1], (0.0, -0.5));
        assert_eq!(g[5], (0.5, 0.5));
    }
}
