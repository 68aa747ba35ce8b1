//! Domain types: exact rationals, bivariate polynomials, linear factors and
//! the generating-function model, plus validation of its hypotheses.

use alloc::collections::BTreeMap;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use crate::fan::{self, Point2Q};
use crate::{Error, Result};

/// Exact rational number in lowest terms with a positive denominator.
pub type Rational = num_rational::BigRational;

/// Parses `"±num/den"` or `"±num"`. The denominator must be a positive
/// decimal integer.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let bad = || Error::BadRational(text.to_string());
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (text, None),
    };
    let digits = num.strip_prefix(['+', '-']).unwrap_or(num);
    if digits.is_empty() || !digits.bytes().all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let numer: BigInt = num.parse().map_err(|_| bad())?;
    let denom = match den {
        None => BigInt::one(),
        Some(d) => {
            if d.is_empty() || !d.bytes().all(|c| c.is_ascii_digit()) {
                return Err(bad());
            }
            let d: BigUint = d.parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            BigInt::from(d)
        }
    };
    Ok(Rational::new(numer, denom))
}

/// Shorthand for building small rationals in code and tests.
pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Bivariate polynomial with exact coefficients, keyed by `(z_exp, w_exp)`.
/// Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Poly2 {
    terms: BTreeMap<(u32, u32), Rational>,
}

impl Poly2 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(0, 0, c)
    }

    pub fn monomial(z_exp: u32, w_exp: u32, c: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term(z_exp, w_exp, c);
        p
    }

    /// Sums the given terms; repeated exponents accumulate.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = ((u32, u32), Rational)>,
    {
        let mut p = Self::zero();
        for ((zx, wx), c) in terms {
            p.add_term(zx, wx, c);
        }
        p
    }

    pub fn add_term(&mut self, z_exp: u32, w_exp: u32, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry((z_exp, w_exp)).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&(z_exp, w_exp));
        }
    }

    pub fn coeff(&self, z_exp: u32, w_exp: u32) -> Option<&Rational> {
        self.terms.get(&(z_exp, w_exp))
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &Rational)> + '_ {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.coeff(0, 0).is_some_and(|c| c.is_one())
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(a, b)| a + b).max()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(&e, v)| (e, v * c)).collect(),
        }
    }

    pub fn eval(&self, z: &Rational, w: &Rational) -> Rational {
        let zmax = self.terms.keys().map(|e| e.0).max().unwrap_or(0);
        let wmax = self.terms.keys().map(|e| e.1).max().unwrap_or(0);
        let zp = powers(z, zmax);
        let wp = powers(w, wmax);
        self.terms
            .iter()
            .fold(Rational::zero(), |acc, (&(a, b), c)| acc + c * &zp[a as usize] * &wp[b as usize])
    }

    /// Univariate polynomial (coefficients by ascending degree, trailing zeros
    /// trimmed) obtained by restricting `self` to the line `a z + b w = 1`.
    pub fn restrict_to_line(&self, factor: &LinearFactor) -> Vec<Rational> {
        let mut out: Vec<Rational> = Vec::new();
        if !factor.b.is_zero() {
            // z = t, w = 1/b - (a/b) t
            let lin = [factor.b.recip(), -(&factor.a / &factor.b)];
            for ((zx, wx), c) in self.terms() {
                let mut term = vec![Rational::zero(); zx as usize];
                term.push(c.clone());
                for _ in 0..wx {
                    term = upoly_mul(&term, &lin);
                }
                upoly_add_assign(&mut out, &term);
            }
        } else {
            // z = 1/a, w = t
            let z = factor.a.recip();
            let zmax = self.terms.keys().map(|e| e.0).max().unwrap_or(0);
            let zp = powers(&z, zmax);
            for ((zx, wx), c) in self.terms() {
                let mut term = vec![Rational::zero(); wx as usize];
                term.push(c * &zp[zx as usize]);
                upoly_add_assign(&mut out, &term);
            }
        }
        while out.last().is_some_and(Zero::is_zero) {
            out.pop();
        }
        out
    }
}

fn powers(x: &Rational, n: u32) -> Vec<Rational> {
    let mut v = Vec::with_capacity(n as usize + 1);
    v.push(Rational::one());
    for i in 0..n as usize {
        let next = &v[i] * x;
        v.push(next);
    }
    v
}

fn upoly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn upoly_add_assign(acc: &mut Vec<Rational>, term: &[Rational]) {
    if acc.len() < term.len() {
        acc.resize(term.len(), Rational::zero());
    }
    for (slot, t) in acc.iter_mut().zip(term) {
        *slot += t;
    }
}

impl Add for &Poly2 {
    type Output = Poly2;
    fn add(self, rhs: &Poly2) -> Poly2 {
        let mut out = self.clone();
        for ((a, b), c) in rhs.terms() {
            out.add_term(a, b, c.clone());
        }
        out
    }
}

impl Sub for &Poly2 {
    type Output = Poly2;
    fn sub(self, rhs: &Poly2) -> Poly2 {
        self + &(-rhs)
    }
}

impl Neg for &Poly2 {
    type Output = Poly2;
    fn neg(self) -> Poly2 {
        Poly2 {
            terms: self.terms.iter().map(|(&e, c)| (e, -c)).collect(),
        }
    }
}

impl Mul for &Poly2 {
    type Output = Poly2;
    fn mul(self, rhs: &Poly2) -> Poly2 {
        let mut out = Poly2::zero();
        for ((a1, b1), c1) in self.terms() {
            for ((a2, b2), c2) in rhs.terms() {
                out.add_term(a1 + a2, b1 + b2, c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut keys: Vec<_> = self.terms.keys().copied().collect();
        keys.sort_by_key(|&(a, b)| (a + b, core::cmp::Reverse(a)));
        for (n, (a, b)) in keys.into_iter().enumerate() {
            let c = &self.terms[&(a, b)];
            let mag = c.abs();
            match (n, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let monomial = match (a, b) {
                (0, 0) => None,
                _ => Some(MonomialFmt(a, b)),
            };
            match monomial {
                None => write!(f, "{mag}")?,
                Some(m) if mag.is_one() => write!(f, "{m}")?,
                Some(m) => write!(f, "{mag}*{m}")?,
            }
        }
        Ok(())
    }
}

struct MonomialFmt(u32, u32);

impl fmt::Display for MonomialFmt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let part = |f: &mut fmt::Formatter<'_>, v: &str, e: u32| match e {
            0 => Ok(()),
            1 => f.write_str(v),
            _ => write!(f, "{v}^{e}"),
        };
        part(f, "z", self.0)?;
        if self.0 > 0 && self.1 > 0 {
            f.write_str("*")?;
        }
        part(f, "w", self.1)
    }
}

/// The factor `Q = 1 - a z - b w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearFactor {
    pub a: Rational,
    pub b: Rational,
}

impl LinearFactor {
    pub fn new(a: Rational, b: Rational) -> Self {
        Self { a, b }
    }

    pub fn eval(&self, z: &Rational, w: &Rational) -> Rational {
        Rational::one() - &self.a * z - &self.b * w
    }

    pub fn eval_at(&self, pt: &Point2Q) -> Rational {
        self.eval(&pt.z, &pt.w)
    }

    pub fn as_poly(&self) -> Poly2 {
        Poly2::from_terms([
            ((0, 0), Rational::one()),
            ((1, 0), -self.a.clone()),
            ((0, 1), -self.b.clone()),
        ])
    }
}

/// `F = P / prod_i Q_i` with at least one factor and `P != 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GFModel {
    numerator: Poly2,
    factors: Vec<LinearFactor>,
}

impl GFModel {
    pub fn new(numerator: Poly2, factors: Vec<LinearFactor>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::EmptyFactors);
        }
        if let Some(i) = factors.iter().position(|f| f.a.is_zero() && f.b.is_zero()) {
            return Err(Error::ZeroFactor(i));
        }
        if numerator.is_zero() {
            return Err(Error::ZeroNumerator);
        }
        Ok(Self { numerator, factors })
    }

    /// Model with `P = 1`.
    pub fn unit(factors: Vec<LinearFactor>) -> Result<Self> {
        Self::new(Poly2::one(), factors)
    }

    /// Convenience constructor from `(a, b)` pairs, with `P = 1`.
    pub fn from_pairs<I>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Rational, Rational)>,
    {
        Self::unit(pairs.into_iter().map(|(a, b)| LinearFactor::new(a, b)).collect())
    }

    pub fn numerator(&self) -> &Poly2 {
        &self.numerator
    }

    pub fn factors(&self) -> &[LinearFactor] {
        &self.factors
    }

    pub fn factor(&self, i: usize) -> &LinearFactor {
        &self.factors[i]
    }

    /// Number of linear factors.
    pub fn m(&self) -> usize {
        self.factors.len()
    }

    pub fn with_numerator(&self, numerator: Poly2) -> Result<Self> {
        Self::new(numerator, self.factors.clone())
    }

    /// The model `1 / prod_{i in indices} Q_i`.
    pub fn sub_model(&self, indices: &[usize]) -> Result<Self> {
        Self::unit(indices.iter().map(|&i| self.factors[i].clone()).collect())
    }

    pub fn check_index(&self, i: usize) -> Result<()> {
        if i < self.m() {
            Ok(())
        } else {
            Err(Error::FactorIndex { index: i, count: self.m() })
        }
    }

    /// `Delta_ij = a_i b_j - a_j b_i`.
    pub fn delta(&self, i: usize, j: usize) -> Rational {
        let (fi, fj) = (&self.factors[i], &self.factors[j]);
        &fi.a * &fj.b - &fj.a * &fi.b
    }

    /// Determinant of the matrix with rows `(1,1,1)`, `(a_i,a_j,a_l)`,
    /// `(b_i,b_j,b_l)`.
    pub fn delta3(&self, i: usize, j: usize, l: usize) -> Rational {
        // Cofactor expansion along the first row.
        self.delta(j, l) - self.delta(i, l) + self.delta(i, j)
    }

    /// Product of all `Q_l` except the listed ones, evaluated at a point.
    pub fn q_product_except(&self, skip: &[usize], pt: &Point2Q) -> Rational {
        self.factors
            .iter()
            .enumerate()
            .filter(|(l, _)| !skip.contains(l))
            .fold(Rational::one(), |acc, (_, f)| acc * f.eval_at(pt))
    }
}

/// Outcome of checking the hypotheses under which the main-term formulas hold.
///
/// Factor indices are zero-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    /// Condition (I). Always holds for a [`GFModel`], whose factors are linear
    /// by construction.
    pub linear: bool,
    /// Condition (II), failure by parallel lines (`Delta_ij = 0`).
    pub parallel_pairs: Vec<(usize, usize)>,
    /// Condition (II), failure by three concurrent lines (`Delta3 = 0`).
    pub concurrent_triples: Vec<(usize, usize, usize)>,
    /// Condition (III): factors with `a <= 0` or `b <= 0`.
    pub nonpositive: Vec<usize>,
    /// Factors dividing `P` (the fraction is reducible).
    pub divides_numerator: Vec<usize>,
    /// Polygon vertices off the axes where `P` vanishes. `None` when the
    /// polygon could not be built because (II) or (III) failed.
    pub numerator_zero_vertices: Option<Vec<Point2Q>>,
}

impl ValidationReport {
    pub fn general_position(&self) -> bool {
        self.parallel_pairs.is_empty() && self.concurrent_triples.is_empty()
    }

    pub fn positive(&self) -> bool {
        self.nonpositive.is_empty()
    }

    pub fn irreducible(&self) -> bool {
        self.divides_numerator.is_empty()
    }

    pub fn numerator_nonzero_at_vertices(&self) -> bool {
        self.numerator_zero_vertices.as_ref().is_some_and(Vec::is_empty)
    }

    pub fn all_pass(&self) -> bool {
        self.linear
            && self.general_position()
            && self.positive()
            && self.irreducible()
            && self.numerator_nonzero_at_vertices()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let flag = |ok: bool| if ok { "pass" } else { "FAIL" };
        writeln!(f, "condition (I)   linear factors:        {}", flag(self.linear))?;
        write!(f, "condition (II)  general position:      {}", flag(self.general_position()))?;
        for (i, j) in &self.parallel_pairs {
            write!(f, " parallel({},{})", i + 1, j + 1)?;
        }
        for (i, j, l) in &self.concurrent_triples {
            write!(f, " concurrent({},{},{})", i + 1, j + 1, l + 1)?;
        }
        writeln!(f)?;
        write!(f, "condition (III) positive coefficients: {}", flag(self.positive()))?;
        for i in &self.nonpositive {
            write!(f, " factor {}", i + 1)?;
        }
        writeln!(f)?;
        write!(f, "P/Q irreducible:                       {}", flag(self.irreducible()))?;
        for i in &self.divides_numerator {
            write!(f, " Q_{} divides P", i + 1)?;
        }
        writeln!(f)?;
        write!(f, "P nonzero at polygon vertices:         ")?;
        match &self.numerator_zero_vertices {
            None => write!(f, "skipped (polygon unavailable)")?,
            Some(v) if v.is_empty() => write!(f, "pass")?,
            Some(v) => {
                write!(f, "FAIL")?;
                for pt in v {
                    write!(f, " ({}, {})", pt.z, pt.w)?;
                }
            }
        }
        writeln!(f)
    }
}

/// Checks conditions (I)-(III), irreducibility of `P/Q` and the numerator
/// condition at polygon vertices. Never fails; all findings are report
/// entries.
pub fn validate(model: &GFModel) -> ValidationReport {
    let m = model.m();
    let mut report = ValidationReport {
        linear: true,
        parallel_pairs: Vec::new(),
        concurrent_triples: Vec::new(),
        nonpositive: Vec::new(),
        divides_numerator: Vec::new(),
        numerator_zero_vertices: None,
    };
    for i in 0..m {
        for j in i + 1..m {
            if model.delta(i, j).is_zero() {
                report.parallel_pairs.push((i, j));
            }
            for l in j + 1..m {
                if model.delta3(i, j, l).is_zero() {
                    report.concurrent_triples.push((i, j, l));
                }
            }
        }
    }
    for (i, f) in model.factors().iter().enumerate() {
        if !f.a.is_positive() || !f.b.is_positive() {
            report.nonpositive.push(i);
        }
        if model.numerator().restrict_to_line(f).is_empty() {
            report.divides_numerator.push(i);
        }
    }
    if report.general_position() && report.positive() {
        if let Ok(polygon) = fan::build_polygon(model) {
            let zeros = polygon
                .vertices
                .iter()
                .filter(|v| v.z.is_positive() && v.w.is_positive())
                .filter(|v| model.numerator().eval(&v.z, &v.w).is_zero())
                .cloned()
                .collect();
            report.numerator_zero_vertices = Some(zeros);
        }
    }
    report
}
