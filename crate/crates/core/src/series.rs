//! Exact Taylor coefficients of `P / prod Q_i`.
//!
//! Two routes are provided: [`expand`] solves `Q F = P` term by term, and
//! [`convolve_singles`] convolves the closed-form series of the individual
//! factors. They share no code beyond the input model and serve as oracles
//! for each other.
//!
//! Both routes work on integers internally: if `d` is the lcm of all
//! denominators of the `a_i, b_i` and `e` the lcm of the denominators of `P`,
//! then `e * d^(x+y) * f(x, y)` is an integer.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::model::{GFModel, Poly2, Rational};

/// Dense table of exact coefficients `f(x, y)` for `0 <= x <= xmax`,
/// `0 <= y <= ymax`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoeffTable {
    xmax: usize,
    ymax: usize,
    values: Vec<Rational>,
}

impl CoeffTable {
    pub fn xmax(&self) -> usize {
        self.xmax
    }

    pub fn ymax(&self) -> usize {
        self.ymax
    }

    /// Panics if `(x, y)` is outside the rectangle.
    pub fn get(&self, x: usize, y: usize) -> &Rational {
        assert!(x <= self.xmax && y <= self.ymax, "({x}, {y}) outside table");
        &self.values[x * (self.ymax + 1) + y]
    }

    /// Entries in row-major order as `(x, y, f(x, y))`.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &Rational)> + '_ {
        let stride = self.ymax + 1;
        self.values
            .iter()
            .enumerate()
            .map(move |(n, v)| (n / stride, n % stride, v))
    }

    fn from_scaled(xmax: usize, ymax: usize, scaled: Vec<BigInt>, d: &BigInt, e: &BigInt) -> Self {
        let dpow = int_powers(d, xmax + ymax);
        let values = scaled
            .into_iter()
            .enumerate()
            .map(|(n, g)| {
                let (x, y) = (n / (ymax + 1), n % (ymax + 1));
                Rational::new(g, e * &dpow[x + y])
            })
            .collect();
        Self { xmax, ymax, values }
    }
}

/// `prod_i (1 - a_i z - b_i w)` expanded exactly.
pub fn expanded_denominator(model: &GFModel) -> Poly2 {
    model
        .factors()
        .iter()
        .fold(Poly2::one(), |acc, f| &acc * &f.as_poly())
}

/// Coefficients on the rectangle `[0, xmax] x [0, ymax]` via the recurrence
/// `f(x, y) = P_xy - sum_{(s,t) != (0,0)} q_st f(x - s, y - t)`.
pub fn expand(model: &GFModel, xmax: usize, ymax: usize) -> CoeffTable {
    let d = factor_denominator_lcm(model);
    let e = numerator_denominator_lcm(model.numerator());
    let dpow = int_powers(&d, xmax + ymax);

    // q_st * d^(s+t), integers; the constant term 1 is dropped.
    let q: Vec<(usize, usize, BigInt)> = expanded_denominator(model)
        .terms()
        .filter(|&((s, t), _)| (s, t) != (0, 0))
        .map(|((s, t), c)| {
            let (s, t) = (s as usize, t as usize);
            let scaled = c * Rational::from_integer(dpow_get(&dpow, &d, s + t));
            debug_assert!(scaled.is_integer());
            (s, t, scaled.to_integer())
        })
        .collect();

    let stride = ymax + 1;
    let mut g = vec![BigInt::zero(); (xmax + 1) * stride];
    for x in 0..=xmax {
        for y in 0..=ymax {
            let mut acc = match model.numerator().coeff(x as u32, y as u32) {
                Some(c) => {
                    let scaled = c * Rational::from_integer(&e * &dpow[x + y]);
                    debug_assert!(scaled.is_integer());
                    scaled.to_integer()
                }
                None => BigInt::zero(),
            };
            for (s, t, c) in &q {
                if *s <= x && *t <= y {
                    acc -= c * &g[(x - s) * stride + (y - t)];
                }
            }
            g[x * stride + y] = acc;
        }
    }
    CoeffTable::from_scaled(xmax, ymax, g, &d, &e)
}

/// The single coefficient `f(x, y)`.
pub fn coeff(model: &GFModel, x: usize, y: usize) -> Rational {
    expand(model, x, y).get(x, y).clone()
}

/// Independent oracle: the product of the single-factor series
/// `C(x+y, x) a^x b^y`, followed by the shift `sum d_ab g(x - a, y - b)` for
/// the numerator.
pub fn convolve_singles(model: &GFModel, xmax: usize, ymax: usize) -> CoeffTable {
    let d = factor_denominator_lcm(model);
    let e = numerator_denominator_lcm(model.numerator());
    let stride = ymax + 1;

    let fact = factorials(xmax + ymax);
    let single = |a: &Rational, b: &Rational| -> Vec<BigInt> {
        let ad = (a * Rational::from_integer(d.clone())).to_integer();
        let bd = (b * Rational::from_integer(d.clone())).to_integer();
        let apow = int_powers(&ad, xmax);
        let bpow = int_powers(&bd, ymax);
        let mut t = Vec::with_capacity((xmax + 1) * stride);
        for x in 0..=xmax {
            for y in 0..=ymax {
                let binom = &fact[x + y] / (&fact[x] * &fact[y]);
                t.push(BigInt::from(binom) * &apow[x] * &bpow[y]);
            }
        }
        t
    };

    let mut h: Option<Vec<BigInt>> = None;
    for f in model.factors() {
        let s = single(&f.a, &f.b);
        h = Some(match h {
            None => s,
            Some(prev) => convolve(&prev, &s, xmax, ymax),
        });
    }
    let h = h.expect("model has at least one factor");

    let dpow = int_powers(&d, xmax + ymax);
    let mut out = vec![BigInt::zero(); (xmax + 1) * stride];
    for ((alpha, beta), c) in model.numerator().terms() {
        let (alpha, beta) = (alpha as usize, beta as usize);
        if alpha > xmax || beta > ymax {
            continue;
        }
        let w = (c * Rational::from_integer(&e * &dpow[alpha + beta])).to_integer();
        for x in alpha..=xmax {
            for y in beta..=ymax {
                out[x * stride + y] += &w * &h[(x - alpha) * stride + (y - beta)];
            }
        }
    }
    CoeffTable::from_scaled(xmax, ymax, out, &d, &e)
}

fn convolve(u: &[BigInt], v: &[BigInt], xmax: usize, ymax: usize) -> Vec<BigInt> {
    let stride = ymax + 1;
    let mut out = vec![BigInt::zero(); (xmax + 1) * stride];
    for x in 0..=xmax {
        for y in 0..=ymax {
            let mut acc = BigInt::zero();
            for s in 0..=x {
                for t in 0..=y {
                    acc += &u[s * stride + t] * &v[(x - s) * stride + (y - t)];
                }
            }
            out[x * stride + y] = acc;
        }
    }
    out
}

fn factorials(n: usize) -> Vec<BigUint> {
    let mut v = Vec::with_capacity(n + 1);
    v.push(BigUint::one());
    for i in 1..=n {
        let next = &v[i - 1] * BigUint::from(i);
        v.push(next);
    }
    v
}

fn factor_denominator_lcm(model: &GFModel) -> BigInt {
    model
        .factors()
        .iter()
        .flat_map(|f| [f.a.denom(), f.b.denom()])
        .fold(BigInt::one(), |acc, den| acc.lcm(den))
}

fn numerator_denominator_lcm(p: &Poly2) -> BigInt {
    p.terms().fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()))
}

fn int_powers(base: &BigInt, n: usize) -> Vec<BigInt> {
    let mut v = Vec::with_capacity(n + 1);
    v.push(BigInt::one());
    for i in 0..n {
        let next = &v[i] * base;
        v.push(next);
    }
    v
}

fn dpow_get(dpow: &[BigInt], d: &BigInt, n: usize) -> BigInt {
    dpow.get(n).cloned().unwrap_or_else(|| num_traits::pow(d.clone(), n))
}

/// Sign and natural log of the magnitude of a (possibly huge) value.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SignedLog {
    /// -1, 0 or +1.
    pub sign: i8,
    /// `ln |r|`; `-inf` for zero.
    pub ln_abs: f64,
}

impl SignedLog {
    pub fn zero() -> Self {
        Self { sign: 0, ln_abs: f64::NEG_INFINITY }
    }
}

/// Overflow-free `ln |r|` together with the sign of `r`.
///
/// Magnitudes are split into a 64-bit mantissa and a binary exponent, so the
/// relative error stays near machine precision whatever the bit length.
/// Values close to 1 go through `ln1p` of the exact difference.
pub fn log_value(r: &Rational) -> SignedLog {
    let sign = match r.numer().sign() {
        Sign::NoSign => return SignedLog::zero(),
        Sign::Minus => -1,
        Sign::Plus => 1,
    };
    let n = r.numer().magnitude();
    let d = r.denom().magnitude();
    let near_one = {
        let (nb, db) = (n.bits(), d.bits());
        nb + 1 >= db && db + 1 >= nb
    };
    let ln_abs = if near_one {
        let diff = Rational::new(BigInt::from(n.clone()) - BigInt::from(d.clone()), r.denom().clone());
        if diff.abs() < Rational::new(BigInt::one(), BigInt::from(2)) {
            libm::log1p(to_f64(&diff))
        } else {
            ln_ratio(n, d)
        }
    } else {
        ln_ratio(n, d)
    };
    SignedLog { sign, ln_abs }
}

fn ln_ratio(n: &BigUint, d: &BigUint) -> f64 {
    let (mant, exp) = scaled_ratio(n, d);
    // Fold the mantissa into [1, 2) so the exponent term carries no cancellation.
    let e = libm::ilogb(mant);
    libm::log(libm::scalbn(mant, -e)) + (exp + i64::from(e)) as f64 * core::f64::consts::LN_2
}

/// `n / d = mant * 2^exp` with `mant` in roughly `[2^63, 2^65)`.
fn scaled_ratio(n: &BigUint, d: &BigUint) -> (f64, i64) {
    let shift = 64 + d.bits() as i64 - n.bits() as i64;
    let q = if shift >= 0 {
        (n << shift as usize) / d
    } else {
        n / (d << (-shift) as usize)
    };
    (q.to_f64().unwrap_or(f64::INFINITY), -shift)
}

/// Nearest `f64` to an exact rational (saturating to infinity or zero).
pub fn to_f64(r: &Rational) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    let (mant, exp) = scaled_ratio(r.numer().magnitude(), r.denom().magnitude());
    let exp = exp.clamp(i32::MIN as i64 / 2, i32::MAX as i64 / 2) as i32;
    let v = libm::scalbn(mant, exp);
    if r.is_negative() { -v } else { v }
}
