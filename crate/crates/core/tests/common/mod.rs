#![allow(dead_code)]

use diagasym::fan::DirVector;
use diagasym::model::{rat, validate, Poly2};
use diagasym::GFModel;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn coin() -> GFModel {
    GFModel::from_pairs([(rat(1, 3), rat(2, 3)), (rat(2, 3), rat(1, 3))]).unwrap()
}

pub fn three_line() -> GFModel {
    GFModel::from_pairs([(rat(1, 1), rat(1, 1)), (rat(2, 1), rat(1, 1)), (rat(1, 1), rat(2, 1))]).unwrap()
}

pub fn single() -> GFModel {
    GFModel::from_pairs([(rat(1, 1), rat(1, 1))]).unwrap()
}

pub fn counterexample() -> GFModel {
    GFModel::from_pairs([(rat(1, 1), rat(1, 1)), (rat(-1, 1), rat(1, 1))]).unwrap()
}

pub fn dir(p: i64, q: i64) -> DirVector {
    DirVector::new(p, q).unwrap()
}

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

fn small_fraction(rng: &mut StdRng) -> diagasym::Rational {
    rat(rng.random_range(1..=6), rng.random_range(1..=6))
}

/// Positive factors `n/d` with `n, d` in `1..=6`, in general position, with
/// `P = 1`.
pub fn random_model(rng: &mut StdRng, m: usize) -> GFModel {
    loop {
        let pairs: Vec<_> = (0..m).map(|_| (small_fraction(rng), small_fraction(rng))).collect();
        let model = GFModel::from_pairs(pairs).unwrap();
        if validate(&model).general_position() {
            return model;
        }
    }
}

/// Random numerator with small integer coefficients and degree at most 2.
pub fn random_numerator(rng: &mut StdRng) -> Poly2 {
    loop {
        let mut p = Poly2::zero();
        for (zx, wx) in [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)] {
            if rng.random_bool(0.5) {
                p.add_term(zx, wx, rat(rng.random_range(-3..=3), 1));
            }
        }
        if !p.is_zero() {
            return p;
        }
    }
}

pub fn random_direction(rng: &mut StdRng, max: i64) -> DirVector {
    dir(rng.random_range(1..=max), rng.random_range(1..=max))
}
