//! Partial fractions `1 / prod_i Q_i = sum_{i<j} A_ij / (Q_i Q_j)` for lines
//! in general position.
//!
//! [`decompose`] runs two independent computations and insists that they
//! agree exactly:
//!
//! - recursive elimination: repeatedly split `1/(Q_i Q_j Q_l)` with the
//!   identity `A_ij Q_l + A_jl Q_i + A_li Q_j = 1`;
//! - the closed form `A_ij = 1 / prod_{l != i,j} Q_l(z_ij, w_ij)`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::fan::intersect;
use crate::model::{GFModel, Poly2, Rational};
use crate::{Error, Result};

/// `A_ij` keyed by the unordered pair, stored as `(min, max)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PairConstants {
    map: BTreeMap<(usize, usize), Rational>,
}

impl PairConstants {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, i: usize, j: usize, value: Rational) {
        self.map.insert(key(i, j), value);
    }

    /// `A_ij`; symmetric in its arguments.
    pub fn get(&self, i: usize, j: usize) -> Option<&Rational> {
        self.map.get(&key(i, j))
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize), &Rational)> + '_ {
        self.map.iter().map(|(&k, v)| (k, v))
    }
}

fn key(i: usize, j: usize) -> (usize, usize) {
    (i.min(j), i.max(j))
}

fn det3(m: &[[Rational; 3]; 3]) -> Rational {
    &m[0][0] * (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1])
        - &m[0][1] * (&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0])
        + &m[0][2] * (&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0])
}

/// Solves `A_ij Q_l + A_jl Q_i + A_li Q_j = 1` coefficientwise and returns
/// `(A_ij, A_jl, A_li)`.
pub fn triple_constants(model: &GFModel, i: usize, j: usize, l: usize) -> Result<(Rational, Rational, Rational)> {
    let (fi, fj, fl) = (model.factor(i), model.factor(j), model.factor(l));
    // Unknown order (A_ij, A_jl, A_li) multiplies (Q_l, Q_i, Q_j); rows match
    // the constant, z and w coefficients.
    let one = Rational::one();
    let matrix = [
        [one.clone(), one.clone(), one],
        [fl.a.clone(), fi.a.clone(), fj.a.clone()],
        [fl.b.clone(), fi.b.clone(), fj.b.clone()],
    ];
    let rhs = [Rational::one(), Rational::zero(), Rational::zero()];
    let det = det3(&matrix);
    if det.is_zero() {
        return Err(Error::ConcurrentTriple(i, j, l));
    }
    let solve = |col: usize| {
        let mut m = matrix.clone();
        for row in 0..3 {
            m[row][col] = rhs[row].clone();
        }
        det3(&m) / &det
    };
    Ok((solve(0), solve(1), solve(2)))
}

/// Both routes, cross-checked. Requires `m >= 2`.
pub fn decompose(model: &GFModel) -> Result<PairConstants> {
    let recursive = decompose_recursive(model)?;
    let closed = decompose_closed_form(model)?;
    if recursive != closed {
        return Err(Error::DecompositionMismatch);
    }
    Ok(recursive)
}

/// Recursive elimination: a term `c / prod_{S} Q` with `|S| >= 3` is split on
/// its three smallest indices until only pairs remain. Equal index sets are
/// merged, so the work stays polynomial in practice.
pub fn decompose_recursive(model: &GFModel) -> Result<PairConstants> {
    let m = model.m();
    if m < 2 {
        return Err(Error::TooFewFactors);
    }
    let mut pending: BTreeMap<Vec<usize>, Rational> = BTreeMap::new();
    pending.insert((0..m).collect(), Rational::one());
    let mut cache: BTreeMap<(usize, usize, usize), (Rational, Rational, Rational)> = BTreeMap::new();
    let mut out = PairConstants::new();

    // Largest sets first; the keys produced by a split are always smaller.
    while let Some(set) = pending.keys().max_by_key(|s| s.len()).cloned() {
        let c = pending.remove(&set).expect("key present");
        if set.len() == 2 {
            let slot = out.map.entry((set[0], set[1])).or_insert_with(Rational::zero);
            *slot += c;
            continue;
        }
        let (i, j, l) = (set[0], set[1], set[2]);
        let consts = match cache.get(&(i, j, l)) {
            Some(v) => v.clone(),
            None => {
                let v = triple_constants(model, i, j, l)?;
                cache.insert((i, j, l), v.clone());
                v
            }
        };
        let (a_ij, a_jl, a_li) = consts;
        for (drop, factor) in [(l, a_ij), (i, a_jl), (j, a_li)] {
            if factor.is_zero() {
                continue;
            }
            let sub: Vec<usize> = set.iter().copied().filter(|&x| x != drop).collect();
            let slot = pending.entry(sub).or_insert_with(Rational::zero);
            *slot += &c * factor;
        }
    }
    // Pairs whose constant cancelled to zero still belong to the result.
    for i in 0..m {
        for j in i + 1..m {
            out.map.entry((i, j)).or_insert_with(Rational::zero);
        }
    }
    Ok(out)
}

/// `A_ij = 1 / prod_{l != i,j} Q_l(z_ij, w_ij)`.
pub fn decompose_closed_form(model: &GFModel) -> Result<PairConstants> {
    let m = model.m();
    if m < 2 {
        return Err(Error::TooFewFactors);
    }
    let mut out = PairConstants::new();
    for i in 0..m {
        for j in i + 1..m {
            let pt = intersect(model, i, j)?;
            let prod = model.q_product_except(&[i, j], &pt);
            if prod.is_zero() {
                let l = (0..m)
                    .find(|&l| l != i && l != j && model.factor(l).eval_at(&pt).is_zero())
                    .expect("some factor vanishes");
                let mut t = [i, j, l];
                t.sort_unstable();
                return Err(Error::ConcurrentTriple(t[0], t[1], t[2]));
            }
            out.insert(i, j, prod.recip());
        }
    }
    Ok(out)
}

/// Exact check of `sum_{i<j} A_ij prod_{l != i,j} Q_l == 1`. Missing pairs
/// count as zero.
pub fn verify_decomposition(model: &GFModel, constants: &PairConstants) -> bool {
    let m = model.m();
    let polys: Vec<Poly2> = model.factors().iter().map(|f| f.as_poly()).collect();
    let mut total = Poly2::zero();
    for i in 0..m {
        for j in i + 1..m {
            let Some(a) = constants.get(i, j) else { continue };
            let prod = (0..m)
                .filter(|&l| l != i && l != j)
                .fold(Poly2::one(), |acc, l| &acc * &polys[l]);
            total = &total + &prod.scale(a);
        }
    }
    total.is_one()
}
