mod common;

use common::*;
use diagasym::asym::{saddle_constant, saddle_constant_direct, Analysis};
use diagasym::fan::{
    argmax_oracle, build_fan, build_polygon, classify, in_closure, saddle_point, ConeKind, DirVector, Location,
};
use diagasym::harness::{check_convergence, convergence_table, dominance_check, horn_table};
use diagasym::model::{parse_rational, rat, LinearFactor, Poly2};
use diagasym::parfrac::{decompose, verify_decomposition};
use diagasym::series::{convolve_singles, expand};
use diagasym::{Error, GFModel, Rational};
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn small_rat() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=12).prop_map(|(n, d)| rat(n, d))
}

fn pos_rat() -> impl Strategy<Value = Rational> {
    (1i64..=8, 1i64..=8).prop_map(|(n, d)| rat(n, d))
}

fn factors(max: usize) -> impl Strategy<Value = Vec<(Rational, Rational)>> {
    prop::collection::vec((small_rat(), small_rat()), 3..=max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn delta_is_antisymmetric(pairs in factors(4)) {
        prop_assume!(pairs.iter().all(|(a, b)| !a.is_zero() || !b.is_zero()));
        let m = GFModel::from_pairs(pairs).unwrap();
        for i in 0..m.m() {
            prop_assert!(m.delta(i, i).is_zero());
            for j in 0..m.m() {
                prop_assert_eq!(m.delta(i, j), -m.delta(j, i));
            }
        }
        let d = m.delta3(0, 1, 2);
        prop_assert_eq!(m.delta3(1, 2, 0), d.clone());
        prop_assert_eq!(m.delta3(1, 0, 2), -d);
    }

    #[test]
    fn rationals_round_trip(r in small_rat()) {
        prop_assert_eq!(parse_rational(&r.to_string()).unwrap(), r);
    }

    #[test]
    fn expansion_is_linear_in_numerator(a1 in pos_rat(), b1 in pos_rat(), a2 in pos_rat(), b2 in pos_rat(),
                                        c1 in small_rat(), c2 in small_rat()) {
        let base = GFModel::from_pairs([(a1, b1), (a2, b2)]).unwrap();
        let p1 = Poly2::from_terms([((0, 0), rat(1, 1)), ((1, 0), c1)]);
        let p2 = Poly2::from_terms([((0, 1), c2), ((1, 1), rat(2, 1))]);
        let sum = &p1 + &p2;
        let t1 = expand(&base.with_numerator(p1).unwrap(), 6, 6);
        let t2 = expand(&base.with_numerator(p2).unwrap(), 6, 6);
        let ts = expand(&base.with_numerator(sum).unwrap(), 6, 6);
        for (x, y, v) in ts.iter() {
            prop_assert_eq!(v, &(t1.get(x, y) + t2.get(x, y)));
        }
    }

    #[test]
    fn product_restricts_to_zero_on_its_line(a in pos_rat(), b in pos_rat(), c in small_rat()) {
        let f = LinearFactor::new(a, b);
        let p = &f.as_poly() * &Poly2::from_terms([((0, 0), rat(1, 1)), ((1, 1), c)]);
        prop_assert!(p.restrict_to_line(&f).is_empty());
    }
}

#[test]
fn expansion_matches_convolution_with_numerators() {
    let mut rng = rng(11);
    for m in 1..=4 {
        for _ in 0..3 {
            let model = random_model(&mut rng, m).with_numerator(random_numerator(&mut rng)).unwrap();
            assert_eq!(expand(&model, 12, 9), convolve_singles(&model, 12, 9));
        }
    }
}

#[test]
fn positive_models_have_positive_coefficients() {
    let mut rng = rng(12);
    for m in 1..=5 {
        let model = random_model(&mut rng, m);
        assert!(expand(&model, 15, 15).iter().all(|(_, _, v)| v.is_positive()));
    }
}

#[test]
fn counterexample_odd_columns_vanish() {
    let t = expand(&counterexample(), 30, 30);
    for x in (1..=30).step_by(2) {
        for y in 0..=30 - x {
            assert!(t.get(x, y).is_zero(), "f({x},{y})");
        }
    }
}

#[test]
fn random_decompositions_are_exact() {
    let mut rng = rng(13);
    for m in 2..=6 {
        let model = random_model(&mut rng, m);
        let c = decompose(&model).unwrap();
        assert_eq!(c.len(), m * (m - 1) / 2);
        assert!(verify_decomposition(&model, &c));
    }
}

#[test]
fn polygon_vertices_are_feasible_and_slopes_increase() {
    let mut rng = rng(14);
    for m in 1..=6 {
        let model = random_model(&mut rng, m);
        let poly = build_polygon(&model).unwrap();
        assert!(poly.vertices.iter().all(|v| in_closure(&model, v)));
        let slopes: Vec<Rational> = poly
            .edge_lines
            .iter()
            .map(|&i| &model.factor(i).a / &model.factor(i).b)
            .collect();
        assert!(slopes.windows(2).all(|w| w[0] > w[1]) || slopes.windows(2).all(|w| w[0] < w[1]));
    }
}

#[test]
fn fan_sweeps_the_quadrant() {
    let mut rng = rng(15);
    for m in 1..=6 {
        let model = random_model(&mut rng, m);
        let fan = build_fan(&model).unwrap();
        let cones = &fan.cones;
        assert_eq!(cones.first().unwrap().generators[0], dir(0, 1));
        assert_eq!(cones.last().unwrap().generators[1], dir(1, 0));
        for w in cones.windows(2) {
            assert_eq!(w[0].generators[1], w[1].generators[0]);
        }
        for c in cones {
            let [g1, g2] = &c.generators;
            assert!(g1.cross(g2).is_negative(), "{}: clockwise sweep", c.kind);
        }
        let kinds: Vec<bool> = cones.iter().map(|c| matches!(c.kind, ConeKind::Saddle(_))).collect();
        assert!(kinds.iter().step_by(2).all(|&s| s));
        assert!(kinds.iter().skip(1).step_by(2).all(|&s| !s));
    }
}

#[test]
fn classification_agrees_with_argmax_on_generators_and_samples() {
    let mut rng = rng(16);
    for m in 1..=5 {
        let model = random_model(&mut rng, m);
        let fan = build_fan(&model).unwrap();
        let mut dirs: Vec<DirVector> = fan
            .cones
            .iter()
            .flat_map(|c| c.generators.clone())
            .filter(DirVector::is_strictly_positive)
            .collect();
        dirs.extend((0..50).map(|_| random_direction(&mut rng, 40)));
        for d in dirs {
            let oracle = argmax_oracle(&model, &d).unwrap();
            match classify(&fan, &d) {
                Location::Interior(k) => assert_eq!(oracle.witnesses, vec![fan.cones[k].kind], "{d}"),
                Location::BoundaryRay(k, l) => {
                    let mut kinds = vec![fan.cones[k].kind, fan.cones[l].kind];
                    kinds.sort();
                    assert_eq!(oracle.witnesses, kinds, "{d}");
                }
                Location::OnAxis => panic!("positive direction {d} on axis"),
            }
        }
    }
}

#[test]
fn saddle_points_lie_on_their_lines_and_edges() {
    let mut rng = rng(17);
    for m in 1..=5 {
        let model = random_model(&mut rng, m);
        let fan = build_fan(&model).unwrap();
        for _ in 0..30 {
            let d = random_direction(&mut rng, 30);
            for i in 0..m {
                assert!(model.factor(i).eval_at(&saddle_point(&model, i, &d)).is_zero());
            }
            if let Location::Interior(k) = classify(&fan, &d) {
                if let ConeKind::Saddle(i) = fan.cones[k].kind {
                    assert!(in_closure(&model, &saddle_point(&model, i, &d)));
                }
            }
        }
    }
}

#[test]
fn saddle_constant_routes_agree() {
    let mut rng = rng(18);
    for m in 2..=6 {
        let model = random_model(&mut rng, m);
        let analysis = Analysis::new(model.clone()).unwrap();
        for _ in 0..20 {
            let d = random_direction(&mut rng, 25);
            let Location::Interior(k) = classify(&analysis.fan, &d) else { continue };
            let ConeKind::Saddle(i) = analysis.fan.cones[k].kind else { continue };
            let summed = saddle_constant(&model, &analysis.constants, i, &d).unwrap();
            let direct = saddle_constant_direct(&model, i, &d);
            assert!(((summed - direct) / direct).abs() < 1e-12, "{summed} vs {direct}");
        }
    }
}

#[test]
fn main_terms_are_positive_for_unit_numerator() {
    let mut rng = rng(19);
    for m in 1..=6 {
        let analysis = Analysis::new(random_model(&mut rng, m)).unwrap();
        for _ in 0..30 {
            let d = random_direction(&mut rng, 30);
            match analysis.main_term(&d) {
                Ok(t) => {
                    assert_eq!(t.sign(), 1);
                    assert!(t.constant > 0.0);
                }
                Err(e) => assert_eq!(e, Error::BoundaryDirection),
            }
        }
    }
}

#[test]
fn regime_matches_oracle() {
    let mut rng = rng(20);
    for m in 1..=5 {
        let model = random_model(&mut rng, m);
        let analysis = Analysis::new(model.clone()).unwrap();
        for _ in 0..30 {
            let d = random_direction(&mut rng, 30);
            let oracle = argmax_oracle(&model, &d).unwrap();
            match analysis.main_term(&d) {
                Ok(t) => {
                    assert_eq!(vec![t.kind], oracle.witnesses);
                    assert_eq!(t.base, oracle.point);
                }
                Err(_) => assert!(oracle.is_tie()),
            }
        }
    }
}

#[test]
fn dominance_holds_inside_cones_only() {
    let mut rng = rng(21);
    for m in 1..=5 {
        let model = random_model(&mut rng, m);
        let fan = build_fan(&model).unwrap();
        for _ in 0..40 {
            let d = random_direction(&mut rng, 40);
            let interior = matches!(classify(&fan, &d), Location::Interior(_));
            assert_eq!(dominance_check(&model, &fan, &d), interior, "{d}");
        }
        for c in &fan.cones {
            for g in c.generators.iter().filter(|g| g.is_strictly_positive()) {
                assert!(!dominance_check(&model, &fan, g));
            }
        }
    }
}

#[test]
fn scaling_direction_changes_nothing() {
    let analysis = Analysis::new(three_line()).unwrap();
    for (p, q) in [(1, 1), (1, 5), (5, 1), (2, 3)] {
        let a = analysis.main_term(&dir(p, q)).unwrap();
        let b = analysis.main_term(&dir(2 * p, 2 * q)).unwrap();
        assert_eq!(a, b);
        assert_eq!(analysis.horn_limit(&dir(p, q)), analysis.horn_limit(&dir(3 * p, 3 * q)));
    }
}

#[test]
fn horn_errors_decrease_on_fixtures() {
    for (model, d) in [(coin(), dir(1, 4)), (coin(), dir(4, 1)), (three_line(), dir(1, 1)), (single(), dir(1, 1))] {
        let rows = horn_table(&model, &d, &[20, 40, 60]).unwrap();
        for w in rows.windows(2) {
            assert!(w[1].error <= w[0].error, "{d}: {} then {}", w[0].error, w[1].error);
        }
    }
}

#[test]
fn convergence_with_nontrivial_numerator() {
    let p = Poly2::from_terms([((0, 0), rat(1, 1)), ((1, 0), rat(1, 1)), ((1, 1), rat(-1, 2))]);
    let model = coin().with_numerator(p).unwrap();
    let table = convergence_table(&model, &dir(1, 1), &[10, 20, 50, 100]).unwrap();
    assert_eq!(table.term.numerator_value, rat(3, 2));
    assert!(check_convergence(&table, 0.01).unwrap().pass);
}

#[test]
fn vanishing_numerator_is_reported() {
    let p = Poly2::from_terms([((1, 0), rat(1, 1)), ((0, 1), rat(-1, 1))]);
    let model = coin().with_numerator(p).unwrap();
    assert_eq!(convergence_table(&model, &dir(1, 1), &[10]).unwrap_err(), Error::DegenerateNumerator);
}
