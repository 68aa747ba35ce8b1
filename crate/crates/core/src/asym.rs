//! Leading asymptotic term of `f(kp, kq)` as `k -> infinity`:
//!
//! ```text
//! f(kp, kq) ~ C(p, q; k) * P(z^, w^) / (z^^(kp+1) * w^^(kq+1))
//! ```
//!
//! - Saddle cone `K_i`: `(z^, w^)` is the tangency point on line `i` and
//!   `C(p, q; k) = c_i / sqrt(k)`.
//! - Vertex cone `Omega_ij`: `(z^, w^) = (z_ij, w_ij)` and
//!   `C = A_ij / |Delta_ij|`, independent of `k`.
//!
//! The saddle constant for a pair of lines is
//!
//! ```text
//! c_ij = (1/sqrt(2 pi)) * sqrt(p/(p+q)) * sqrt(q) / |p b_i (a_j - a_i) + q a_i (b_j - b_i)|
//! ```
//!
//! and `c_i = sum_j A_ij * c_ij`. This agrees with the smooth-point formula
//! `c_i = sqrt(pq / (2 pi (p+q)^3)) / (a_i b_i prod_{l != i} Q_l(z_i, w_i))`.

use core::f64::consts::PI;
use core::fmt;

use num_traits::{Signed, ToPrimitive, Zero};

use crate::fan::{self, classify, saddle_point, ConeKind, DirVector, Fan, Location, Point2Q, Polygon};
use crate::model::{GFModel, Rational};
use crate::parfrac::{self, PairConstants};
use crate::series::{log_value, to_f64, SignedLog};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct AsymptoticTerm {
    pub kind: ConeKind,
    /// `(z^, w^)`.
    pub base: Point2Q,
    /// `C`, excluding `P(z^, w^)` and the `1/sqrt(k)` factor.
    pub constant: f64,
    /// `C` as an exact rational when it is one (vertex regime).
    pub exact_constant: Option<Rational>,
    pub has_sqrtk: bool,
    /// `P(z^, w^)`.
    pub numerator_value: Rational,
    /// Primitive direction; `k` counts steps along it.
    pub direction: DirVector,
}

impl AsymptoticTerm {
    /// Sign of the whole main term.
    pub fn sign(&self) -> i8 {
        let c = if self.constant < 0.0 { -1 } else { 1 };
        let p = if self.numerator_value.is_negative() { -1 } else { 1 };
        c * p
    }

    /// `C * P(z^, w^)` as a float.
    pub fn prefactor(&self) -> f64 {
        self.constant * to_f64(&self.numerator_value)
    }
}

impl fmt::Display for AsymptoticTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sqrt = if self.has_sqrtk { "/sqrt(k)" } else { "" };
        write!(
            f,
            "{}: C{sqrt} * P({}, {}) / (({})^(k*{}+1) * ({})^(k*{}+1))",
            self.kind, self.base.z, self.base.w, self.base.z, self.direction.p(), self.base.w, self.direction.q()
        )
    }
}

fn dir_f64(dir: &DirVector) -> (f64, f64) {
    (
        dir.p().to_f64().unwrap_or(f64::INFINITY),
        dir.q().to_f64().unwrap_or(f64::INFINITY),
    )
}

/// `p b_i (a_i - a_j) + q a_i (b_i - b_j)`, which equals
/// `(p+q) a_i b_i Q_j(z_i, w_i)`.
fn pair_denominator(model: &GFModel, i: usize, j: usize, dir: &DirVector) -> Rational {
    let (fi, fj) = (model.factor(i), model.factor(j));
    dir.p_rat() * &fi.b * (&fi.a - &fj.a) + dir.q_rat() * &fi.a * (&fi.b - &fj.b)
}

/// `sqrt(pq / (2 pi (p+q)))`, the common irrational factor of every pair
/// constant.
fn saddle_prefactor(dir: &DirVector) -> f64 {
    let (p, q) = dir_f64(dir);
    libm::sqrt(p * q / (2.0 * PI * (p + q)))
}

/// Magnitude of the saddle constant of line `i` within the pair `{i, j}`.
pub fn pair_saddle_constant(model: &GFModel, i: usize, j: usize, dir: &DirVector) -> Result<f64> {
    let den = pair_denominator(model, i, j, dir);
    if den.is_zero() {
        return Err(Error::DegenerateDenominator(i, j));
    }
    let (p, q) = dir_f64(dir);
    Ok(libm::sqrt(p / (p + q)) * libm::sqrt(q) / (libm::sqrt(2.0 * PI) * to_f64(&den.abs())))
}

/// `c_i = sum_{j != i} A_ij * c_ij`, with each `c_ij` signed by
/// `Q_j(z_i, w_i)`. The sum is formed exactly before the single irrational
/// factor is applied. For one factor the closed form
/// `sqrt(pq / (2 pi (p+q)^3)) / (a b)` is used.
pub fn saddle_constant(model: &GFModel, constants: &PairConstants, i: usize, dir: &DirVector) -> Result<f64> {
    let f = model.factor(i);
    if model.m() == 1 {
        let (p, q) = dir_f64(dir);
        let s = p + q;
        return Ok(libm::sqrt(p * q / (2.0 * PI * s * s * s)) / to_f64(&(&f.a * &f.b)));
    }
    let mut sum = Rational::zero();
    for j in (0..model.m()).filter(|&j| j != i) {
        let den = pair_denominator(model, i, j, dir);
        if den.is_zero() {
            return Err(Error::DegenerateDenominator(i, j));
        }
        let a = constants.get(i, j).ok_or(Error::TooFewFactors)?;
        sum += a / den;
    }
    if sum.is_zero() {
        return Err(Error::DegenerateConstant(i));
    }
    Ok(saddle_prefactor(dir) * to_f64(&sum))
}

/// `A_ij / |Delta_ij|`.
pub fn vertex_constant(model: &GFModel, constants: &PairConstants, i: usize, j: usize) -> Result<Rational> {
    let det = model.delta(i, j);
    if det.is_zero() {
        return Err(Error::ParallelLines(i, j));
    }
    let a = constants.get(i, j).ok_or(Error::TooFewFactors)?;
    Ok(a / det.abs())
}

/// Base point `(z^, w^)` of the cone containing `dir` in its interior.
pub fn base_point(model: &GFModel, fan: &Fan, dir: &DirVector) -> Result<(ConeKind, Point2Q)> {
    match classify(fan, dir) {
        Location::OnAxis => Err(Error::AxisDirection),
        Location::BoundaryRay(..) => Err(Error::BoundaryDirection),
        Location::Interior(k) => {
            let cone = &fan.cones[k];
            let base = match cone.kind {
                ConeKind::Saddle(i) => saddle_point(model, i, dir),
                ConeKind::Vertex(..) => cone.base.clone(),
            };
            Ok((cone.kind, base))
        }
    }
}

/// Leading term for the direction `dir` (reduced to primitive form).
pub fn main_term(model: &GFModel, fan: &Fan, constants: &PairConstants, dir: &DirVector) -> Result<AsymptoticTerm> {
    let dir = DirVector::new(dir.p().clone(), dir.q().clone())?;
    let (kind, base) = base_point(model, fan, &dir)?;
    let numerator_value = model.numerator().eval(&base.z, &base.w);
    if numerator_value.is_zero() {
        return Err(Error::DegenerateNumerator);
    }
    let (constant, exact_constant, has_sqrtk) = match kind {
        ConeKind::Saddle(i) => (saddle_constant(model, constants, i, &dir)?, None, true),
        ConeKind::Vertex(i, j) => {
            let c = vertex_constant(model, constants, i, j)?;
            (to_f64(&c), Some(c), false)
        }
    };
    Ok(AsymptoticTerm { kind, base, constant, exact_constant, has_sqrtk, numerator_value, direction: dir })
}

/// Sign and log-magnitude of the main term at step `k >= 1`.
pub fn evaluate_log_term(term: &AsymptoticTerm, k: u64) -> SignedLog {
    let ln_c = match &term.exact_constant {
        Some(c) => log_value(c).ln_abs,
        None => libm::log(term.constant.abs()),
    };
    let kf = k as f64;
    let (p, q) = dir_f64(&term.direction);
    let mut ln = ln_c + log_value(&term.numerator_value).ln_abs;
    if term.has_sqrtk {
        ln -= 0.5 * libm::log(kf);
    }
    ln -= (kf * p + 1.0) * log_value(&term.base.z).ln_abs;
    ln -= (kf * q + 1.0) * log_value(&term.base.w).ln_abs;
    SignedLog { sign: term.sign(), ln_abs: ln }
}

/// Limit `(1/z^, 1/w^)` of the Horn vector along the diagonal.
pub fn horn_limit(model: &GFModel, fan: &Fan, dir: &DirVector) -> Result<(Rational, Rational)> {
    let (_, base) = base_point(model, fan, dir)?;
    Ok((base.z.recip(), base.w.recip()))
}

/// Everything direction-independent, computed once per model.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub model: GFModel,
    pub polygon: Polygon,
    pub fan: Fan,
    pub constants: PairConstants,
}

impl Analysis {
    /// Requires positive coefficients; lines must be in general position for
    /// `m >= 2`.
    pub fn new(model: GFModel) -> Result<Self> {
        let polygon = fan::build_polygon(&model)?;
        let fan = fan::fan_from_polygon(&model, &polygon)?;
        let constants = if model.m() >= 2 {
            parfrac::decompose(&model)?
        } else {
            PairConstants::new()
        };
        Ok(Self { model, polygon, fan, constants })
    }

    pub fn main_term(&self, dir: &DirVector) -> Result<AsymptoticTerm> {
        main_term(&self.model, &self.fan, &self.constants, dir)
    }

    pub fn horn_limit(&self, dir: &DirVector) -> Result<(Rational, Rational)> {
        horn_limit(&self.model, &self.fan, dir)
    }
}

/// Direct smooth-point form of the saddle constant, used as a cross-check.
pub fn saddle_constant_direct(model: &GFModel, i: usize, dir: &DirVector) -> f64 {
    let f = model.factor(i);
    let s = saddle_point(model, i, dir);
    let rest = model.q_product_except(&[i], &s);
    let (p, q) = dir_f64(dir);
    let t = p + q;
    libm::sqrt(p * q / (2.0 * PI * t * t * t)) / to_f64(&(&f.a * &f.b * rest))
}
