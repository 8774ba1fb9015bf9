use std::sync::{Arc, OnceLock};

use proptest::prelude::*;

use quartic_points::ellcurve::{ec_add, ec_mul, ec_neg, ec_torsion, CurveSpec, TorsionTable};
use quartic_points::mordell::{compute, verify_bielliptic, Gamma2Report};
use quartic_points::numberfield::{nf_is_square, nf_roots, nf_sqrt, preset, FieldElement, KPoly, NumberField, SquareResult};

const FIELDS: [&str; 7] = ["Q", "Qi", "Qsqrt2", "Qzeta8", "Qalpha", "cubic-1", "quartic-2"];

fn fields() -> &'static [Arc<NumberField>] {
    static CELL: OnceLock<Vec<Arc<NumberField>>> = OnceLock::new();
    CELL.get_or_init(|| FIELDS.iter().map(|l| preset(l).unwrap()).collect())
}

fn element(k: &Arc<NumberField>, c: &[i64]) -> FieldElement {
    FieldElement::from_ints(k, &c[..k.degree()])
}

fn coeffs() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-9i64..=9, 4).prop_filter("nonzero", |c| c.iter().any(|&x| x != 0))
}

fn torsion(label: &str) -> &'static (TorsionTable, TorsionTable) {
    static CELL: OnceLock<Vec<(TorsionTable, TorsionTable)>> = OnceLock::new();
    let all = CELL.get_or_init(|| {
        ["Qzeta8", "Qalpha"]
            .iter()
            .map(|l| {
                let k = preset(l).unwrap();
                (ec_torsion(&CurveSpec::e1(&k)).unwrap(), ec_torsion(&CurveSpec::e2(&k)).unwrap())
            })
            .collect()
    });
    &all[if label == "Qzeta8" { 0 } else { 1 }]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn squares_are_recognised(i in 0usize..FIELDS.len(), c in coeffs()) {
        let k = &fields()[i];
        let a = element(k, &c);
        prop_assume!(!a.is_zero());
        match nf_is_square(&a.square()).unwrap() {
            SquareResult::Square(r) => prop_assert!(r == a || r == -&a),
            other => prop_assert!(false, "{other:?}"),
        }
    }

    #[test]
    fn square_test_agrees_with_roots(i in 0usize..FIELDS.len(), c in coeffs()) {
        let k = &fields()[i];
        let d = element(k, &c);
        prop_assume!(!d.is_zero());
        let x2 = KPoly::new(k, vec![-&d, FieldElement::zero(k), FieldElement::one(k)]);
        let roots = nf_roots(&x2).unwrap();
        match nf_sqrt(&d).unwrap() {
            Some(r) => {
                prop_assert_eq!(r.square(), d);
                prop_assert_eq!(roots.len(), 2);
            }
            None => prop_assert!(roots.is_empty()),
        }
    }

    #[test]
    fn roots_of_split_cubics(i in 0usize..FIELDS.len(), a in coeffs(), b in coeffs(), c in coeffs()) {
        let k = &fields()[i];
        let one = FieldElement::one(k);
        let mut want: Vec<FieldElement> = [a, b, c].iter().map(|v| element(k, v)).collect();
        let f = want
            .iter()
            .fold(KPoly::new(k, vec![one.clone()]), |acc, r| &acc * &KPoly::new(k, vec![-r, one.clone()]));
        want.sort();
        want.dedup();
        let mut got = nf_roots(&f).unwrap();
        got.sort();
        prop_assert_eq!(got, want);
    }

    #[test]
    fn torsion_points_add_within_group(zeta in any::<bool>(), e1 in any::<bool>(), i in 0usize..64, j in 0usize..64, n in 0u64..40) {
        let (t1, t2) = torsion(if zeta { "Qzeta8" } else { "Qalpha" });
        let t = if e1 { t1 } else { t2 };
        let (p, q) = (&t.points[i % t.points.len()], &t.points[j % t.points.len()]);
        let c = &t.curve;
        let s = ec_add(c, p, q);
        prop_assert!(c.contains(&s));
        prop_assert!(t.points.contains(&s));
        prop_assert_eq!(ec_add(c, &s, &ec_neg(q)), p.clone());
        prop_assert!(ec_mul(c, p, t.order()).is_infinity());
        prop_assert_eq!(ec_mul(c, p, n + 1), ec_add(c, &ec_mul(c, p, n), p));
    }
}

fn reports() -> &'static [Gamma2Report] {
    static CELL: OnceLock<Vec<Gamma2Report>> = OnceLock::new();
    CELL.get_or_init(|| ["Q", "Qi", "Qsqrt2", "Qalpha"].iter().map(|l| compute(&preset(l).unwrap()).unwrap()).collect())
}

#[test]
fn conjugates_and_sign_swaps_stay_on_the_curve() {
    for r in reports() {
        for (p, _) in &r.expanded {
            assert!(p.conj().on_curve());
            for q in p.sign_swaps() {
                assert!(q.on_curve() && verify_bielliptic(&q).unwrap(), "{q}");
            }
        }
    }
}

#[test]
fn count_breakdown_is_consistent() {
    for r in reports() {
        assert_eq!(r.gamma2_count, r.trivial_affine + r.trivial_infinity + r.expanded.len());
        assert_eq!(r.expanded.len() % 8, 0, "orbits have size 8 or 16");
        assert!(r.s0.iter().all(|x| x.primitive && !x.trivial));
    }
}
