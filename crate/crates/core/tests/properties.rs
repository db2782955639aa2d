mod common;

use std::sync::OnceLock;

use fibonav::atlas::Atlas;
use fibonav::index::{nearest_linear, NeighborIndex};
use fibonav::navigator::{best_in_orbit, Dictionary, Navigator};
use fibonav::symmetry::G_ORDER;
use fibonav::{BraidLetter, BraidWord, SymmetryGroup, SymmetryOp, UnitQuaternion};
use proptest::prelude::*;

fn group() -> &'static SymmetryGroup {
    &Atlas::shared().group
}

fn small_dictionary() -> &'static Dictionary {
    static D: OnceLock<Dictionary> = OnceLock::new();
    D.get_or_init(|| Dictionary::build(group(), 8).unwrap())
}

fn unit() -> impl Strategy<Value = UnitQuaternion> {
    prop::array::uniform4(-1.0f64..1.0)
        .prop_filter("away from zero", |a| {
            a.iter().map(|x| x * x).sum::<f64>() > 1e-3
        })
        .prop_map(|[w, x, y, z]| UnitQuaternion::new_normalize(w, x, y, z))
}

fn op() -> impl Strategy<Value = SymmetryOp> {
    (0..G_ORDER).prop_map(|i| group().op_at(i))
}

fn word(max: usize) -> impl Strategy<Value = BraidWord> {
    prop::collection::vec((1u8..=2, any::<bool>()), 0..max).prop_map(|v| {
        BraidWord::from_letters(v.into_iter().map(|(g, s)| BraidLetter::new(g, s)).collect())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn reduce_lands_in_the_orthoscheme(q in unit()) {
        let g = group();
        let (op, q0) = g.reduce(q);
        prop_assert!(g.orthoscheme().contains(q0));
        prop_assert!(g.apply(op, q0).distance(q) < 1e-12);
        let (_, e0) = g.reduce_exhaustive(q);
        prop_assert!(q0.distance(e0) < 1e-12);
    }

    #[test]
    fn compose_and_inverse_act_correctly(a in op(), b in op(), q in unit()) {
        let g = group();
        let lhs = g.apply(g.compose(a, b), q);
        let rhs = g.apply(a, g.apply(b, q));
        prop_assert!(lhs.distance(rhs) < 1e-12);
        prop_assert!(g.apply(g.inverse(a), g.apply(a, q)).distance(q) < 1e-12);
    }

    #[test]
    fn op_action_matches_oracle(a in op(), q in unit()) {
        let y = group().y();
        let (l, r) = (y.get(a.l as usize).to_array(), y.get(a.r as usize).to_array());
        let c = if a.conjugate { common::qconj(q.to_array()) } else { q.to_array() };
        let want = common::qmul(common::qmul(l, c), r);
        let got = group().apply(a, q).to_array();
        let d = (0..4).map(|i| (got[i] - want[i]).abs()).fold(0.0, f64::max);
        prop_assert!(d < 1e-12);
    }

    #[test]
    fn braid_for_op_error_is_bounded(a in op(), w in word(12)) {
        let atlas = Atlas::shared();
        let core = w.evaluate_quat();
        let braid = atlas.braid_for_op(a, &w);
        let exact = atlas.group.apply(a, core);
        let err = braid.evaluate_quat().distance(exact);
        prop_assert!(err <= 2.0 * atlas.ytilde.max_err() + 1e-12, "err {}", err);
        // the word really is the left part, the core and the right part
        let oracle = common::dist(&common::eval(&braid.to_text()), &common::from_quat(exact.to_array()));
        prop_assert!((oracle - err).abs() < 1e-12);
    }

    #[test]
    fn word_inverse_and_concat(a in word(10), b in word(10)) {
        let ab = a.concat(&b).evaluate_quat();
        prop_assert!(ab.distance(b.evaluate_quat() * a.evaluate_quat()) < 1e-12);
        prop_assert!((a.invert().evaluate_quat() * a.evaluate_quat()).distance(UnitQuaternion::IDENTITY) < 1e-12);
    }

    #[test]
    fn index_agrees_with_linear_scan(q in unit(), seed in 0u64..1000) {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let pts: Vec<UnitQuaternion> = (0..300).map(|_| fibonav::quat::uniform_unit(&mut rng)).collect();
        let idx = NeighborIndex::new(&pts, 0.1);
        prop_assert_eq!(idx.nearest(q), nearest_linear(&pts, q));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn compile_is_no_worse_than_the_nearest_image(q in unit()) {
        let atlas = Atlas::shared();
        let dict = small_dictionary();
        let nav = Navigator::new(atlas, Some(dict.clone()), Vec::new()).unwrap();
        let (_, _, bare) = best_in_orbit(&atlas.group, q, &dict.points()).unwrap();
        let r = nav.compile(q, 0.0).unwrap();
        prop_assert!(r.err <= bare + 2.0 * atlas.ytilde.max_err() + 1e-12, "{} vs {}", r.err, bare);
        prop_assert!((r.word.evaluate_quat().distance(q) - r.err).abs() < 1e-14);
    }
}
