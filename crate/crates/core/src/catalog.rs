//! Explicit immersions: the isoparametric factor surfaces, the composite
//! almost complex surfaces built from them, and the angle bookkeeping that
//! selects between them.

use std::f64::consts::{FRAC_PI_3, FRAC_PI_4, PI, TAU};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::algebra::{minkowski_inner, Mat2, SPLIT_I, SPLIT_K};
use crate::calculus::{Rect, SurfaceMap, TypeLabel};
use crate::error::{Error, Result};
use crate::manifold::{h31_linear, Chart};

const SQRT3: f64 = 1.732_050_807_568_877_2;
/// Distance to a type boundary below which an angle counts as on it.
pub const BOUNDARY_TOL: f64 = 1e-9;

pub fn reduce_angle(phi: f64) -> f64 {
    let r = phi.rem_euclid(TAU);
    if TAU - r < BOUNDARY_TOL {
        0.0
    } else {
        r
    }
}

fn near(a: f64, b: f64) -> bool {
    let d = (reduce_angle(a) - reduce_angle(b)).abs();
    d.min(TAU - d) < BOUNDARY_TOL
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AngleParams {
    pub phi: f64,
    pub psi: f64,
    pub xi: f64,
    pub r: f64,
    #[serde(rename = "R")]
    pub big_r: f64,
}

/// Null-frame scale: r⁴(1+2cos a)² = 3, or 3r⁴ = (1−2cos a)² on the exceptional branch.
fn null_scale(a: f64) -> f64 {
    let k = 1.0 + 2.0 * a.cos();
    if k.abs() > BOUNDARY_TOL {
        (3.0 / (k * k)).powf(0.25)
    } else {
        let m = 1.0 - 2.0 * a.cos();
        (m * m / 3.0).powf(0.25)
    }
}

pub fn angle_params(phi: f64) -> AngleParams {
    let phi = reduce_angle(phi);
    let psi = phi + FRAC_PI_3;
    let xi = phi - FRAC_PI_3;
    AngleParams { phi, psi, xi, r: null_scale(psi), big_r: null_scale(xi) }
}

/// Type of the factor with angle `a` (ψ for p, ξ for q): sign of 2cos2a + 1.
pub fn factor_type(a: f64) -> TypeLabel {
    let t = 2.0 * (2.0 * a).cos() + 1.0;
    if t.abs() <= BOUNDARY_TOL {
        TypeLabel::II
    } else if t < 0.0 {
        TypeLabel::I
    } else {
        TypeLabel::IV
    }
}

pub fn type_table(phi: f64) -> (TypeLabel, TypeLabel) {
    let a = angle_params(phi);
    (factor_type(a.psi), factor_type(a.xi))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum IIVariant {
    #[serde(rename = "II_a")]
    A,
    #[serde(rename = "II_b")]
    B,
    #[serde(rename = "II_c")]
    C,
    #[serde(rename = "II_d")]
    D,
}

impl fmt::Display for IIVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IIVariant::A => "II_a",
            IIVariant::B => "II_b",
            IIVariant::C => "II_c",
            IIVariant::D => "II_d",
        })
    }
}

/// Variant of a type II factor, by its angle mod 2π.
pub fn type_ii_variant(a: f64) -> Option<IIVariant> {
    [
        (FRAC_PI_3, IIVariant::A),
        (2.0 * FRAC_PI_3, IIVariant::B),
        (4.0 * FRAC_PI_3, IIVariant::C),
        (5.0 * FRAC_PI_3, IIVariant::D),
    ]
    .into_iter()
    .find(|(t, _)| near(a, *t))
    .map(|(_, v)| v)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum FactorParams {
    II { variant: IIVariant },
    /// Both roots of 3(1+λ²)² = 16λ²sin²a, λ₊λ₋ = 1.
    I { lambda_plus: f64, lambda_minus: f64 },
    /// Nonnegative root of 3tanh²(2α) = 4sin²a.
    IV { param: f64 },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CongruencySolution {
    pub phi: f64,
    pub p: FactorParams,
    pub q: FactorParams,
    pub notes: Vec<String>,
}

pub const CONGRUENCY_NOTE: &str = "type-I congruency uses 3(1+l^2)^2 = 16 l^2 sin^2; \
the form 3(1+l^2)^2 = l^2 sin^2 has no real root on the type-I range";

pub fn solve_type_i(a: f64) -> Result<(f64, f64)> {
    let s = a.sin().abs();
    let disc = 4.0 * s * s - 3.0;
    if !(disc > 0.0) {
        return Err(Error::NoRealSolution(format!("type I needs 4sin² > 3, got {:.6}", 4.0 * s * s)));
    }
    let r = disc.sqrt();
    Ok(((2.0 * s + r) / SQRT3, (2.0 * s - r) / SQRT3))
}

pub fn solve_type_iv(a: f64) -> Result<f64> {
    let x = 2.0 * a.sin().abs() / SQRT3;
    if !(x < 1.0) {
        return Err(Error::NoRealSolution(format!("type IV needs 2|sin|/√3 < 1, got {x:.6}")));
    }
    Ok(0.5 * x.atanh())
}

/// Discriminant in λ² of the uncorrected congruency 3(1+λ²)² = λ²sin²a.
pub fn literal_type_i_discriminant(a: f64) -> f64 {
    // 3μ² + (6 − sin²)μ + 3 = 0
    let s2 = a.sin().powi(2);
    (6.0 - s2).powi(2) - 36.0
}

fn factor_params(a: f64) -> Result<FactorParams> {
    Ok(match factor_type(a) {
        TypeLabel::II => FactorParams::II {
            variant: type_ii_variant(a)
                .ok_or_else(|| Error::NoRealSolution(format!("no type II variant at {a}")))?,
        },
        TypeLabel::I => {
            let (lambda_plus, lambda_minus) = solve_type_i(a)?;
            FactorParams::I { lambda_plus, lambda_minus }
        }
        TypeLabel::IV => FactorParams::IV { param: solve_type_iv(a)? },
    })
}

pub fn solve_congruency(phi: f64) -> Result<CongruencySolution> {
    let ap = angle_params(phi);
    let p = factor_params(ap.psi)?;
    let q = factor_params(ap.xi)?;
    let mut notes = Vec::new();
    if matches!(p, FactorParams::I { .. }) || matches!(q, FactorParams::I { .. }) {
        notes.push(CONGRUENCY_NOTE.to_string());
    }
    Ok(CongruencySolution { phi: ap.phi, p, q, notes })
}

// ---------------------------------------------------------------------------
// factor charts

/// Point of H³₁ for the type Ia factor, |λ| < 1.
pub fn h31_ia(s: f64, t: f64, lambda: f64) -> [f64; 4] {
    let c = 1.0 / (1.0 - lambda * lambda).sqrt();
    let d = lambda.abs() * c;
    [c * s.cos(), c * s.sin(), d * t.cos(), d * t.sin()]
}

/// Point of H³₁ for the type Ib factor, |λ| > 1.
pub fn h31_ib(s: f64, t: f64, lambda: f64) -> [f64; 4] {
    let c = 1.0 / (lambda * lambda - 1.0).sqrt();
    let d = lambda.abs() * c;
    [c * s.sinh(), d * t.cosh(), c * s.cosh(), d * t.sinh()]
}

/// Point of H³₁ for the type IV factor.
pub fn h31_iv(s: f64, t: f64, alpha: f64) -> [f64; 4] {
    let (ss, cs) = s.sin_cos();
    let (ch, sh) = (t.cosh(), t.sinh());
    let (ca, sa) = (alpha.cosh(), alpha.sinh());
    [
        ss * ch * ca + cs * sh * sa,
        cs * ch * ca - ss * sh * sa,
        ss * sh * ca + cs * ch * sa,
        cs * sh * ca - ss * ch * sa,
    ]
}

pub fn chart_ia(s: f64, t: f64, lambda: f64) -> Mat2 {
    h31_linear(Chart::F1, &h31_ia(s, t, lambda))
}

pub fn chart_ib(s: f64, t: f64, lambda: f64) -> Mat2 {
    h31_linear(Chart::F1, &h31_ib(s, t, lambda))
}

pub fn chart_iv(s: f64, t: f64, alpha: f64) -> Mat2 {
    h31_linear(Chart::F1, &h31_iv(s, t, alpha))
}

pub fn chart_iia(u: f64, v: f64) -> Mat2 {
    let (e, ei) = (u.exp(), (-u).exp());
    Mat2::new(0.5 * (1.0 - u + 2.0 * v) * e, -0.5 * (1.0 + u - 2.0 * v) * ei, e, ei)
}

pub fn chart_iib(u: f64, v: f64) -> Mat2 {
    chart_iia(v, u)
}

pub fn chart_iid(u: f64, v: f64) -> Mat2 {
    let (su, cu) = u.sin_cos();
    let w = u + 2.0 * v;
    Mat2::new(0.5 * (-su + w * cu), 0.5 * (cu + w * su), -2.0 * cu, -2.0 * su)
}

pub fn chart_iic(u: f64, v: f64) -> Mat2 {
    chart_iid(v, u)
}

pub fn chart_ii(variant: IIVariant, u: f64, v: f64) -> Mat2 {
    match variant {
        IIVariant::A => chart_iia(u, v),
        IIVariant::B => chart_iib(u, v),
        IIVariant::C => chart_iic(u, v),
        IIVariant::D => chart_iid(u, v),
    }
}

/// Type IV factor at α = 0 in closed form.
fn iv0(s: f64, t: f64) -> Mat2 {
    let (ss, cs) = s.sin_cos();
    let (em, ep) = ((-t).exp(), t.exp());
    Mat2::new(em * ss, -em * cs, ep * cs, ep * ss)
}

type M22 = [[f64; 2]; 2];

fn apply(m: &M22, x: f64, y: f64) -> (f64, f64) {
    (m[0][0] * x + m[0][1] * y, m[1][0] * x + m[1][1] * y)
}

fn inv22(m: &M22) -> M22 {
    let d = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    [[m[1][1] / d, -m[0][1] / d], [-m[1][0] / d, m[0][0] / d]]
}

/// (s,t) in terms of null coordinates (u,v) on the type Ia/Ib factors.
pub fn null_matrix_i(lambda: f64) -> M22 {
    let l2 = lambda * lambda;
    let r = (l2 / (1.0 - l2).powi(2)).powf(0.25);
    let k = (1.0 - l2).abs().sqrt();
    let kk = ((1.0 - l2).abs() / l2).sqrt();
    [[-r * k, k / (2.0 * r)], [r * kk, kk / (2.0 * r)]]
}

/// (s,t) in terms of null coordinates (u,v) on the type IV factor.
pub fn null_matrix_iv(alpha: f64) -> M22 {
    let c2 = (2.0 * alpha).cosh();
    let r = (c2 * c2 * (-4.0 * alpha).exp() / 4.0).powf(0.25);
    let th = (2.0 * alpha).tanh();
    let se = 1.0 / c2;
    [[-(r + r * th), (1.0 - th) / (2.0 * r)], [r * se, se / (2.0 * r)]]
}

// ---------------------------------------------------------------------------
// orbit alignment for composites with type I / IV factors
//
// Each factor chart is written as e^{xL}·M·e^{yR} with (x,y) = T(s,t). The
// composite is almost complex when the factors' right generators agree up to
// sign and the left generators, conjugated to the identity, line up.

#[derive(Clone, Copy, Debug)]
struct OrbitForm {
    l: Mat2,
    m: Mat2,
    r: Mat2,
    t: M22,
}

fn orbit_ia(lambda: f64) -> OrbitForm {
    let c = 1.0 / (1.0 - lambda * lambda).sqrt();
    let d = lambda.abs() * c;
    OrbitForm { l: -SPLIT_K, m: Mat2::IDENTITY * c - SPLIT_I * d, r: -SPLIT_K, t: [[0.5, -0.5], [0.5, 0.5]] }
}

fn orbit_ib(lambda: f64) -> OrbitForm {
    let c = 1.0 / (lambda * lambda - 1.0).sqrt();
    let d = lambda.abs() * c;
    OrbitForm { l: SPLIT_I, m: -(SPLIT_I * c) - SPLIT_K * d, r: SPLIT_I, t: [[-0.5, -0.5], [-0.5, 0.5]] }
}

fn orbit_iv(alpha: f64) -> OrbitForm {
    OrbitForm {
        l: -SPLIT_I,
        m: -(SPLIT_K * alpha.cosh()) - SPLIT_I * alpha.sinh(),
        r: SPLIT_K,
        t: [[0.0, 1.0], [1.0, 0.0]],
    }
}

/// Orbit form of the transposed type IV chart.
fn orbit_iv_t(alpha: f64) -> OrbitForm {
    OrbitForm {
        l: -SPLIT_K,
        m: (-(SPLIT_K * alpha.cosh()) - SPLIT_I * alpha.sinh()).transpose(),
        r: -SPLIT_I,
        t: [[1.0, 0.0], [0.0, 1.0]],
    }
}

#[derive(Clone, Copy, Debug)]
struct Alignment {
    sign: f64,
    theta: f64,
    k: [f64; 2],
}

fn align(p: &OrbitForm, q: &OrbitForm, theta: f64) -> Result<Alignment> {
    let c = p.r;
    let sign = if (q.r - c).max_abs() < 1e-12 {
        1.0
    } else if (q.r + c).max_abs() < 1e-12 {
        -1.0
    } else {
        return Err(Error::InadmissibleParams("factor right generators differ".into()));
    };
    let a = p.m.inverse_unimodular() * p.l * p.m;
    let mq = q.m * (q.r * theta).exp();
    let b = mq.inverse_unimodular() * q.l * mq;
    let cc = minkowski_inner(&c, &c);
    let a1 = minkowski_inner(&a, &c) / cc;
    let e = a - c * a1;
    let a2 = 1.0;
    let b1 = minkowski_inner(&b, &c) / cc;
    let bp = b - c * b1;
    let b2 = minkowski_inner(&bp, &e) / minkowski_inner(&e, &e);
    let cop = (bp - e * b2).max_abs();
    if cop > 1e-9 {
        return Err(Error::InadmissibleParams(format!("factor orbits are not coplanar ({cop:.3e})")));
    }
    let (ra, rb) = (a1 / a2, b1 / b2);
    Ok(Alignment { sign, theta, k: [a2 / b2, -1.0 / ((rb - ra) * b2)] })
}

type ChartFn = Box<dyn Fn(f64, f64) -> Mat2 + Send + Sync>;

/// Composite (p(s,t), q(s̃,t̃)) with (s,t) = L(u,v) and (s̃,t̃) fixed by the
/// orbit alignment of the substitution forms.
fn orbit_composite(
    name: &str,
    p_sub: OrbitForm,
    q_sub: OrbitForm,
    theta: f64,
    lnull: M22,
    p_chart: ChartFn,
    q_chart: ChartFn,
    swap: bool,
) -> Result<SurfaceMap> {
    let al = align(&p_sub, &q_sub, theta)?;
    let tp = p_sub.t;
    let tq = inv22(&q_sub.t);
    Ok(SurfaceMap::product(name, Rect::square(1.0), move |u, v| {
        let (s, t) = apply(&lnull, u, v);
        let (x, y) = apply(&tp, s, t);
        let xt = al.k[0] * x + al.k[1] * y;
        let yt = al.sign * y + al.theta;
        let (st, tt) = apply(&tq, xt, yt);
        let (a, b) = (p_chart(s, t), q_chart(st, tt));
        if swap {
            (b, a)
        } else {
            (a, b)
        }
    }))
}

// ---------------------------------------------------------------------------
// entries

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CatalogName {
    #[serde(rename = "main_thm1")]
    MainThm1,
    #[serde(rename = "II_IIa")]
    IIIIa,
    #[serde(rename = "II_IV_a")]
    IIIVa,
    #[serde(rename = "II_IV_b")]
    IIIVb,
    #[serde(rename = "II_IV_c")]
    IIIVc,
    #[serde(rename = "II_IV_d")]
    IIIVd,
    #[serde(rename = "I_IV_a")]
    IIVa,
    #[serde(rename = "I_IV_b")]
    IIVb,
    #[serde(rename = "IV_IV")]
    IVIV,
    #[serde(rename = "iso_I_a")]
    IsoIa,
    #[serde(rename = "iso_I_b")]
    IsoIb,
    #[serde(rename = "iso_II_a")]
    IsoIIa,
    #[serde(rename = "iso_II_b")]
    IsoIIb,
    #[serde(rename = "iso_II_c")]
    IsoIIc,
    #[serde(rename = "iso_II_d")]
    IsoIId,
    #[serde(rename = "iso_IV")]
    IsoIV,
}

impl CatalogName {
    pub const ALL: [CatalogName; 16] = [
        CatalogName::MainThm1,
        CatalogName::IIIIa,
        CatalogName::IIIVa,
        CatalogName::IIIVb,
        CatalogName::IIIVc,
        CatalogName::IIIVd,
        CatalogName::IIVa,
        CatalogName::IIVb,
        CatalogName::IVIV,
        CatalogName::IsoIa,
        CatalogName::IsoIb,
        CatalogName::IsoIIa,
        CatalogName::IsoIIb,
        CatalogName::IsoIIc,
        CatalogName::IsoIId,
        CatalogName::IsoIV,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            CatalogName::MainThm1 => "main_thm1",
            CatalogName::IIIIa => "II_IIa",
            CatalogName::IIIVa => "II_IV_a",
            CatalogName::IIIVb => "II_IV_b",
            CatalogName::IIIVc => "II_IV_c",
            CatalogName::IIIVd => "II_IV_d",
            CatalogName::IIVa => "I_IV_a",
            CatalogName::IIVb => "I_IV_b",
            CatalogName::IVIV => "IV_IV",
            CatalogName::IsoIa => "iso_I_a",
            CatalogName::IsoIb => "iso_I_b",
            CatalogName::IsoIIa => "iso_II_a",
            CatalogName::IsoIIb => "iso_II_b",
            CatalogName::IsoIIc => "iso_II_c",
            CatalogName::IsoIId => "iso_II_d",
            CatalogName::IsoIV => "iso_IV",
        }
    }

    /// Composite surfaces with P not preserving the tangent bundle.
    pub fn is_composite(&self) -> bool {
        matches!(
            self,
            CatalogName::IIIIa
                | CatalogName::IIIVa
                | CatalogName::IIIVb
                | CatalogName::IIIVc
                | CatalogName::IIIVd
                | CatalogName::IIVa
                | CatalogName::IIVb
                | CatalogName::IVIV
        )
    }

    pub fn is_factor(&self) -> bool {
        !self.is_composite() && *self != CatalogName::MainThm1
    }
}

impl fmt::Display for CatalogName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CatalogName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CatalogName::ALL
            .into_iter()
            .find(|n| n.as_str() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown catalog entry '{s}'")))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Params {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub phi: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta: Option<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Expected {
    /// rank of TΣ ⊕ PTΣ for product entries
    pub dim_d: Option<usize>,
    pub phi: Option<f64>,
    pub types: Option<(TypeLabel, TypeLabel)>,
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: CatalogName,
    pub params: Params,
    pub surface: SurfaceMap,
    pub expected: Expected,
    pub notes: Vec<String>,
}

/// Fixed angle of the II_IIa and II_IV entries.
fn fixed_phi(name: CatalogName) -> Option<f64> {
    match name {
        CatalogName::IIIVb => Some(FRAC_PI_3),
        CatalogName::IIIVa => Some(2.0 * FRAC_PI_3),
        CatalogName::IIIVd => Some(4.0 * FRAC_PI_3),
        CatalogName::IIIVc => Some(5.0 * FRAC_PI_3),
        _ => None,
    }
}

fn in_open(phi: f64, lo: f64, hi: f64) -> bool {
    phi > lo + BOUNDARY_TOL && phi < hi - BOUNDARY_TOL
}

/// Catalog entry realizing angle φ, if it has one.
pub fn select_entry(phi: f64) -> Option<CatalogName> {
    let phi = reduce_angle(phi);
    if near(phi, 0.0) || near(phi, PI) {
        return Some(CatalogName::IIIIa);
    }
    for n in [CatalogName::IIIVb, CatalogName::IIIVa, CatalogName::IIIVd, CatalogName::IIIVc] {
        if near(phi, fixed_phi(n).unwrap()) {
            return Some(n);
        }
    }
    let t = FRAC_PI_3;
    if in_open(phi, 0.0, t) || in_open(phi, 2.0 * t, PI) {
        Some(CatalogName::IIVb)
    } else if in_open(phi, PI, 4.0 * t) || in_open(phi, 5.0 * t, TAU) {
        Some(CatalogName::IIVa)
    } else {
        Some(CatalogName::IVIV)
    }
}

fn inadmissible(msg: String) -> Error {
    Error::InadmissibleParams(msg)
}

fn require_phi_in(name: CatalogName, phi: f64, ranges: &[(f64, f64)]) -> Result<()> {
    if ranges.iter().any(|&(a, b)| in_open(phi, a, b)) {
        Ok(())
    } else {
        Err(inadmissible(format!("{name} is not defined at phi = {phi}")))
    }
}

fn sign(x: f64) -> f64 {
    if x < 0.0 {
        -1.0
    } else {
        1.0
    }
}

const MISMATCH_NOTE: &str = "parameters differ from the congruency solution at this phi";

fn check_congruent(got: f64, want: f64, notes: &mut Vec<String>) {
    if (got - want).abs() > 1e-9 * (1.0 + want.abs()) && !notes.iter().any(|n| n == MISMATCH_NOTE) {
        notes.push(MISMATCH_NOTE.to_string());
    }
}

/// Composite with a type I factor (λ) and a type IV factor (β).
fn i_iv(name: CatalogName, params: &Params) -> Result<CatalogEntry> {
    let t = FRAC_PI_3;
    let (default_phi, ranges, b_branch) = match name {
        CatalogName::IIVb => (PI / 6.0, [(0.0, t), (2.0 * t, PI)], true),
        _ => (7.0 * PI / 6.0, [(PI, 4.0 * t), (5.0 * t, TAU)], false),
    };
    let phi = reduce_angle(params.phi.unwrap_or(default_phi));
    require_phi_in(name, phi, &ranges)?;
    // the construction lives on the first interval; the second is its swap
    let swap = !in_open(phi, ranges[0].0, ranges[0].1);
    let phi0 = if !swap {
        phi
    } else if b_branch {
        PI - phi
    } else {
        3.0 * PI - phi
    };
    let ap = angle_params(phi0);
    let (lp, lm) = solve_type_i(ap.psi)?;
    let beta_c = solve_type_iv(ap.xi)?;
    let lam_c = if b_branch { lp } else { lm };
    let lambda = params.lambda.unwrap_or(lam_c);
    let beta = params.beta.unwrap_or(beta_c);
    let mut notes = vec![CONGRUENCY_NOTE.to_string()];
    check_congruent(lambda, lam_c, &mut notes);
    check_congruent(beta, beta_c, &mut notes);
    let label = name.as_str();
    let surface = if b_branch {
        if !(lambda.abs() > 1.0) {
            return Err(inadmissible(format!("{label} needs |lambda| > 1, got {lambda}")));
        }
        let beta_sub = 0.5 * (2.0 * ap.xi.sin() / SQRT3).atanh();
        let bc = -beta;
        orbit_composite(
            label,
            orbit_ib(lam_c),
            orbit_iv_t(beta_sub),
            0.0,
            null_matrix_i(lam_c),
            Box::new(move |s, t| chart_ib(s, t, lambda)),
            Box::new(move |s, t| chart_iv(s, t, bc).transpose()),
            swap,
        )?
    } else {
        if !(lambda.abs() < 1.0) || lambda == 0.0 {
            return Err(inadmissible(format!("{label} needs 0 < |lambda| < 1, got {lambda}")));
        }
        let beta_sub = -0.5 * (2.0 * ap.xi.sin() / SQRT3).atanh();
        let bc = -beta;
        orbit_composite(
            label,
            orbit_ia(lam_c),
            orbit_iv(beta_sub),
            -FRAC_PI_4,
            null_matrix_i(lam_c),
            Box::new(move |s, t| chart_ia(s, t, lambda)),
            Box::new(move |s, t| chart_iv(s, t, bc)),
            swap,
        )?
    };
    let types = type_table(phi);
    Ok(CatalogEntry {
        name,
        params: Params { phi: Some(phi), lambda: Some(lambda), alpha: None, beta: Some(beta) },
        surface,
        expected: Expected { dim_d: Some(4), phi: Some(phi), types: Some(types) },
        notes,
    })
}

fn iv_iv(params: &Params) -> Result<CatalogEntry> {
    let name = CatalogName::IVIV;
    let t = FRAC_PI_3;
    let phi = reduce_angle(params.phi.unwrap_or(PI / 2.0));
    require_phi_in(name, phi, &[(t, 2.0 * t), (4.0 * t, 5.0 * t)])?;
    let ap = angle_params(phi);
    let alpha_c = solve_type_iv(ap.psi)?;
    let beta_c = solve_type_iv(ap.xi)?;
    let alpha = params.alpha.unwrap_or(alpha_c);
    let beta = params.beta.unwrap_or(beta_c);
    let mut notes = Vec::new();
    check_congruent(alpha, alpha_c, &mut notes);
    check_congruent(beta, beta_c, &mut notes);
    let a_sub = -0.5 * (2.0 * ap.psi.sin() / SQRT3).atanh();
    let b_sub = 0.5 * (2.0 * ap.xi.sin() / SQRT3).atanh();
    let ac = -sign(ap.psi.sin()) * alpha;
    let bc = sign(ap.xi.sin()) * beta;
    let transposed = in_open(phi, t, 2.0 * t);
    let surface = if transposed {
        orbit_composite(
            name.as_str(),
            orbit_iv_t(a_sub),
            orbit_iv_t(b_sub),
            0.0,
            null_matrix_iv(a_sub),
            Box::new(move |s, t| chart_iv(s, t, ac).transpose()),
            Box::new(move |s, t| chart_iv(s, t, bc).transpose()),
            false,
        )?
    } else {
        orbit_composite(
            name.as_str(),
            orbit_iv(a_sub),
            orbit_iv(b_sub),
            0.0,
            null_matrix_iv(a_sub),
            Box::new(move |s, t| chart_iv(s, t, ac)),
            Box::new(move |s, t| chart_iv(s, t, bc)),
            false,
        )?
    };
    Ok(CatalogEntry {
        name,
        params: Params { phi: Some(phi), lambda: None, alpha: Some(alpha), beta: Some(beta) },
        surface,
        expected: Expected { dim_d: Some(4), phi: Some(phi), types: Some((TypeLabel::IV, TypeLabel::IV)) },
        notes,
    })
}

/// Left factor making the transposed type II_a chart pass through [[½,−½],[1,1]].
fn ii_iia_left() -> Mat2 {
    let m0 = chart_iia(0.0, 0.0);
    m0 * m0.inverse_unimodular().transpose()
}

fn ii_iia(params: &Params) -> Result<CatalogEntry> {
    let phi = reduce_angle(params.phi.unwrap_or(0.0));
    let swap = if near(phi, 0.0) {
        false
    } else if near(phi, PI) {
        true
    } else {
        return Err(inadmissible(format!("II_IIa needs phi in {{0, pi}}, got {phi}")));
    };
    let a = ii_iia_left();
    let c = Mat2::diag(2f64.sqrt(), 1.0 / 2f64.sqrt());
    let surface = SurfaceMap::product("II_IIa", Rect::square(1.0), move |u, v| {
        let p = a * chart_iia(u, v).transpose();
        let q = chart_iid(-0.5 * u - v, 0.75 * u - 0.5 * v).transpose() * c;
        if swap {
            (q, p)
        } else {
            (p, q)
        }
    });
    Ok(CatalogEntry {
        name: CatalogName::IIIIa,
        params: Params { phi: Some(phi), ..Params::default() },
        surface,
        expected: Expected { dim_d: Some(4), phi: Some(phi), types: Some((TypeLabel::II, TypeLabel::II)) },
        notes: Vec::new(),
    })
}

fn ii_iv(name: CatalogName, params: &Params) -> Result<CatalogEntry> {
    let phi = fixed_phi(name).unwrap();
    if let Some(given) = params.phi {
        if !near(given, phi) {
            return Err(inadmissible(format!("{name} exists only at phi = {phi}, got {given}")));
        }
    }
    let q4 = FRAC_PI_4;
    let f: Box<dyn Fn(f64, f64) -> (Mat2, Mat2) + Send + Sync> = match name {
        CatalogName::IIIVb => Box::new(|u, v| (chart_iib(u, v), iv0(-u - 0.5 * v, -v).transpose())),
        CatalogName::IIIVa => Box::new(|u, v| (iv0(-0.5 * u - v, -u).transpose(), chart_iia(u, v))),
        CatalogName::IIIVd => Box::new(move |u, v| (chart_iid(u, v), iv0(u - q4, 0.5 * u - v))),
        _ => Box::new(move |u, v| (iv0(v - q4, 0.5 * v - u), chart_iic(u, v))),
    };
    let surface = SurfaceMap::product(name.as_str(), Rect::square(1.0), f);
    Ok(CatalogEntry {
        name,
        params: Params { phi: Some(phi), ..Params::default() },
        surface,
        expected: Expected { dim_d: Some(4), phi: Some(phi), types: Some(type_table(phi)) },
        notes: Vec::new(),
    })
}

fn factor_entry(name: CatalogName, params: &Params) -> Result<CatalogEntry> {
    let label = name.as_str();
    let domain = Rect::square(1.0);
    let mut used = Params::default();
    let (surface, label_type) = match name {
        CatalogName::IsoIa => {
            let l = params.lambda.unwrap_or(1.0 / SQRT3);
            if !(l * l < 1.0) || l == 0.0 {
                return Err(inadmissible(format!("iso_I_a needs 0 < lambda^2 < 1, got {l}")));
            }
            used.lambda = Some(l);
            (SurfaceMap::factor(label, domain, move |s, t| chart_ia(s, t, l)), TypeLabel::I)
        }
        CatalogName::IsoIb => {
            let l = params.lambda.unwrap_or(SQRT3);
            if !(l * l > 1.0) {
                return Err(inadmissible(format!("iso_I_b needs lambda^2 > 1, got {l}")));
            }
            used.lambda = Some(l);
            (SurfaceMap::factor(label, domain, move |s, t| chart_ib(s, t, l)), TypeLabel::I)
        }
        CatalogName::IsoIV => {
            let a = params.alpha.unwrap_or(0.0);
            if !a.is_finite() {
                return Err(inadmissible(format!("iso_IV needs finite alpha, got {a}")));
            }
            used.alpha = Some(a);
            (SurfaceMap::factor(label, domain, move |s, t| chart_iv(s, t, a)), TypeLabel::IV)
        }
        _ => {
            let v = match name {
                CatalogName::IsoIIa => IIVariant::A,
                CatalogName::IsoIIb => IIVariant::B,
                CatalogName::IsoIIc => IIVariant::C,
                _ => IIVariant::D,
            };
            (SurfaceMap::factor(label, domain, move |x, y| chart_ii(v, x, y)), TypeLabel::II)
        }
    };
    Ok(CatalogEntry {
        name,
        params: used,
        surface,
        expected: Expected { dim_d: None, phi: None, types: Some((label_type, label_type)) },
        notes: Vec::new(),
    })
}

pub fn catalog_entry(name: CatalogName, params: &Params) -> Result<CatalogEntry> {
    for v in [params.phi, params.lambda, params.alpha, params.beta].into_iter().flatten() {
        if !v.is_finite() {
            return Err(inadmissible(format!("non-finite parameter {v}")));
        }
    }
    match name {
        CatalogName::MainThm1 => Ok(CatalogEntry {
            name,
            params: Params::default(),
            surface: SurfaceMap::product("main_thm1", Rect::square(1.0), |s, t| {
                (Mat2::new(1.0, 2.0 * s, 0.0, 1.0), Mat2::new(1.0, 2.0 * t, 0.0, 1.0))
            }),
            expected: Expected { dim_d: Some(2), phi: None, types: None },
            notes: Vec::new(),
        }),
        CatalogName::IIIIa => ii_iia(params),
        CatalogName::IIIVa | CatalogName::IIIVb | CatalogName::IIIVc | CatalogName::IIIVd => ii_iv(name, params),
        CatalogName::IIVa | CatalogName::IIVb => i_iv(name, params),
        CatalogName::IVIV => iv_iv(params),
        _ => factor_entry(name, params),
    }
}

pub fn make_surface(name: CatalogName, params: &Params) -> Result<SurfaceMap> {
    Ok(catalog_entry(name, params)?.surface)
}

// ---------------------------------------------------------------------------
// null coordinates

/// Change of null coordinates from p to q, as a linear map.
pub fn null_coord_matrix(params: &AngleParams) -> M22 {
    let (r, rr) = (params.r, params.big_r);
    [[-r / (2.0 * rr), -SQRT3 / (2.0 * r * rr)], [SQRT3 * r * rr / 2.0, -rr / (2.0 * r)]]
}

pub fn null_coord_transform(params: &AngleParams, uv: (f64, f64)) -> (f64, f64) {
    apply(&null_coord_matrix(params), uv.0, uv.1)
}

/// Rows give ∂u, ∂v over {dp(X), dp(JX)}.
pub fn null_frame_p(r: f64) -> M22 {
    let (a, b) = (-5.0 * PI / 12.0, PI / 12.0);
    [[r * a.cos(), r * a.sin()], [b.cos() / r, b.sin() / r]]
}

/// Rows give ∂ũ, ∂ṽ over {dq(X), dq(JX)}.
pub fn null_frame_q(big_r: f64) -> M22 {
    let (a, b) = (11.0 * PI / 12.0, -7.0 * PI / 12.0);
    [[big_r * a.cos(), big_r * a.sin()], [b.cos() / big_r, b.sin() / big_r]]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::manifold::h31_inner;

    #[test]
    fn angle_examples() {
        let a = angle_params(0.0);
        assert!((a.psi - FRAC_PI_3).abs() < 1e-15 && (a.xi + FRAC_PI_3).abs() < 1e-15);
        assert!((a.r.powi(4) - 0.75).abs() < 1e-12);
        assert!((a.big_r.powi(4) - 0.75).abs() < 1e-12);
        let a = angle_params(FRAC_PI_3);
        assert!((a.r.powi(4) - 4.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn table_examples() {
        assert_eq!(type_table(0.0), (TypeLabel::II, TypeLabel::II));
        assert_eq!(type_table(PI / 6.0), (TypeLabel::I, TypeLabel::IV));
        assert_eq!(type_table(PI / 2.0), (TypeLabel::IV, TypeLabel::IV));
    }

    #[test]
    fn congruency_examples() {
        let s = solve_congruency(PI / 6.0).unwrap();
        match s.p {
            FactorParams::I { lambda_plus, lambda_minus } => {
                assert!((lambda_plus - SQRT3).abs() < 1e-12);
                assert!((lambda_minus - 1.0 / SQRT3).abs() < 1e-12);
            }
            _ => panic!("{s:?}"),
        }
        match s.q {
            FactorParams::IV { param } => assert!((param - 0.329_239).abs() < 1e-6),
            _ => panic!("{s:?}"),
        }
        let s = solve_congruency(0.0).unwrap();
        assert_eq!(s.p, FactorParams::II { variant: IIVariant::A });
        assert_eq!(s.q, FactorParams::II { variant: IIVariant::D });
        let s = solve_congruency(PI).unwrap();
        assert_eq!(s.p, FactorParams::II { variant: IIVariant::C });
        assert_eq!(s.q, FactorParams::II { variant: IIVariant::B });
        assert!(literal_type_i_discriminant(FRAC_PI_3) < 0.0);
    }

    #[test]
    fn surface_examples() {
        let p = Params::default();
        let s = make_surface(CatalogName::MainThm1, &p).unwrap().eval(1.0, 2.0);
        assert_eq!(s.a, Mat2::new(1.0, 2.0, 0.0, 1.0));
        assert_eq!(s.b, Mat2::new(1.0, 4.0, 0.0, 1.0));
        let s = make_surface(CatalogName::IIIIa, &p).unwrap().eval(0.0, 0.0);
        assert!((s.a - Mat2::new(0.5, -0.5, 1.0, 1.0)).max_abs() < 1e-14);
        let s = make_surface(CatalogName::IsoIV, &p).unwrap().eval(PI / 2.0, 0.0);
        assert!((s.a - Mat2::IDENTITY).max_abs() < 1e-15);
    }

    #[test]
    fn charts_are_unimodular() {
        for (s, t) in [(0.3, -0.2), (-0.9, 0.7)] {
            for d in [chart_ia(s, t, 0.5), chart_ib(s, t, 1.7), chart_iv(s, t, 0.4)] {
                assert!((d.det() - 1.0).abs() < 1e-12);
            }
            for v in [IIVariant::A, IIVariant::B, IIVariant::C, IIVariant::D] {
                assert!((chart_ii(v, s, t).det() - 1.0).abs() < 1e-12);
            }
            assert!((chart_iv(s, t, 0.0) - iv0(s, t)).max_abs() < 1e-14);
            let x = h31_iv(s, t, 0.3);
            assert!((h31_inner(Chart::F1, &x, &x) + 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn null_transform_examples() {
        let a = AngleParams { phi: 0.0, psi: 0.0, xi: 0.0, r: 1.3, big_r: 1.3 };
        assert_eq!(null_coord_transform(&a, (0.0, 0.0)), (0.0, 0.0));
        let (u, v) = null_coord_transform(&a, (1.0, 0.0));
        assert!((u + 0.5).abs() < 1e-15 && (v - SQRT3 * 1.69 / 2.0).abs() < 1e-12);
        let m = null_coord_matrix(&AngleParams { r: 0.7, big_r: 2.1, ..a });
        assert!((m[0][0] * m[1][1] - m[0][1] * m[1][0] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn names_round_trip() {
        for n in CatalogName::ALL {
            assert_eq!(n.as_str().parse::<CatalogName>().unwrap(), n);
        }
        assert!("II_IIb".parse::<CatalogName>().is_err());
    }

    #[test]
    fn selection() {
        assert_eq!(select_entry(0.0), Some(CatalogName::IIIIa));
        assert_eq!(select_entry(PI), Some(CatalogName::IIIIa));
        assert_eq!(select_entry(FRAC_PI_3), Some(CatalogName::IIIVb));
        assert_eq!(select_entry(PI / 6.0), Some(CatalogName::IIVb));
        assert_eq!(select_entry(7.0 * PI / 6.0), Some(CatalogName::IIVa));
        assert_eq!(select_entry(PI / 2.0), Some(CatalogName::IVIV));
    }
}
