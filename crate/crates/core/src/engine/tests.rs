use super::*;
use crate::partitions::{enumerate_partitions, Partition};

fn poly(c: &[i64]) -> QPolynomial {
    QPolynomial::from_ints(c)
}

fn rf(num: &[i64], den: &[i64]) -> QRationalFunction {
    QRationalFunction::new(poly(num), poly(den)).unwrap()
}

fn bound(v: &[u32]) -> SeriesBound {
    SeriesBound::new(DimVector::new(v.to_vec()))
}

fn dv(v: &[u32]) -> DimVector {
    DimVector::new(v.to_vec())
}

fn tuple(parts: &[&[u32]]) -> PartitionTuple {
    PartitionTuple::new(parts.iter().map(|p| Partition::new(p.to_vec())).collect())
}

fn reverse_kronecker() -> Quiver {
    Quiver::new(vec![vec![0, 1], vec![1, 0]]).unwrap()
}

#[test]
fn hua_term_examples() {
    let j = Quiver::jordan(1);
    let t = hua_term(&j, &RProvider::LoopNilpotent(1), &tuple(&[&[1]])).unwrap();
    assert_eq!(t, rf(&[1], &[-1, 1]));
    let k = Quiver::kronecker(1);
    assert!(hua_term(&k, &RProvider::KroneckerNilpotent(1), &PartitionTuple::empty(2)).unwrap().is_one());
}

#[test]
fn hua_denominator_matches_inverted_b() {
    // q^{⟨λ,λ⟩} b_λ(1/q) evaluated at q = 3 against a direct rational evaluation
    for w in 0..=6 {
        for lambda in enumerate_partitions(w) {
            let pi = PartitionTuple::new(vec![lambda.clone()]);
            let k = inner_product(&lambda, &lambda) as i32;
            let third = BigRational::new(1.into(), 3.into());
            let direct = b_poly(&lambda).eval(&third) * BigRational::from_integer(BigInt::from(3).pow(k as u32));
            assert_eq!(hua_denominator(&pi).eval_int(3), direct, "{lambda}");
        }
    }
}

#[test]
fn no_relations_matches_closed_form() {
    for (q, b) in [(Quiver::jordan(1), bound(&[6])), (reverse_kronecker(), bound(&[3, 3])), (Quiver::kronecker(2), bound(&[2, 3]))] {
        for alpha in b.monomials() {
            for pi in enumerate_tuples(&alpha) {
                assert_eq!(hua_term(&q, &RProvider::NoRelations, &pi).unwrap(), case1_term(&q, &pi), "{pi}");
            }
        }
        assert_eq!(build_p(&q, &RProvider::NoRelations, &b).unwrap(), build_p_case1(&q, &b).unwrap());
    }
    let three = Quiver::new(vec![vec![0, 1, 0], vec![0, 0, 1], vec![1, 0, 1]]).unwrap();
    let b = bound(&[2, 1, 2]);
    assert_eq!(build_p(&three, &RProvider::NoRelations, &b).unwrap(), build_p_case1(&three, &b).unwrap());
}

#[test]
fn build_p_examples() {
    let p = build_p(&Quiver::jordan(1), &RProvider::LoopNilpotent(1), &bound(&[3])).unwrap();
    assert!(p.constant_term().is_one());
    assert_eq!(p.coefficient(&dv(&[1])).unwrap(), rf(&[1], &[-1, 1]));
    let p = build_p(&Quiver::kronecker(1), &RProvider::KroneckerNilpotent(1), &bound(&[1, 1])).unwrap();
    assert_eq!(p.coefficient(&dv(&[1, 1])).unwrap(), rf(&[-1, 2], &[1, -2, 1]));
}

#[test]
fn build_p_reports_table_gaps() {
    let mut t = BTreeMap::new();
    t.insert(dv(&[1, 0]), poly(&[1]));
    let err = build_p(&Quiver::kronecker(1), &RProvider::Table(t), &bound(&[1, 1])).unwrap_err();
    match err {
        EngineError::ProviderGap(v) => assert_eq!(v, vec![dv(&[0, 1]), dv(&[1, 1])]),
        other => panic!("unexpected {other}"),
    }
}

#[test]
fn table_provider_reproduces_builtin() {
    let q = Quiver::kronecker(1);
    let b = bound(&[2, 2]);
    let table = RProvider::KroneckerNilpotent(1).table_for(&q, &b).unwrap();
    let via_table = build_p(&q, &RProvider::Table(table), &b).unwrap();
    assert_eq!(via_table, build_p(&q, &RProvider::KroneckerNilpotent(1), &b).unwrap());
}

#[test]
fn compute_h_examples() {
    let p = build_p(&Quiver::jordan(1), &RProvider::LoopNilpotent(1), &bound(&[2])).unwrap();
    let h = compute_h(&p).unwrap();
    assert_eq!(h[&dv(&[1])], rf(&[1], &[-1, 1]));
    assert!(!h.contains_key(&dv(&[0])));

    // second-order log term by hand: H(1,1) = P(1,1) - P(1,0) P(0,1)
    let p = build_p(&Quiver::kronecker(1), &RProvider::KroneckerNilpotent(1), &bound(&[1, 1])).unwrap();
    let h = compute_h(&p).unwrap();
    let c = |a: &[u32]| p.coefficient(&dv(a)).unwrap();
    assert_eq!(h[&dv(&[1, 1])], &c(&[1, 1]) - &(&c(&[1, 0]) * &c(&[0, 1])));
    assert_eq!(h[&dv(&[1, 1])], rf(&[2], &[-1, 1]));
}

#[test]
fn compute_a_examples() {
    let p = build_p(&Quiver::jordan(1), &RProvider::LoopNilpotent(1), &bound(&[2])).unwrap();
    let h = compute_h(&p).unwrap();
    assert!(compute_a(&h, &dv(&[1])).unwrap().is_one());
    let a = compute_a_table(&h).unwrap();
    assert!(compute_i(&a, &dv(&[2])).unwrap().is_one());

    let p = build_p(&Quiver::kronecker(1), &RProvider::KroneckerNilpotent(1), &bound(&[1, 1])).unwrap();
    let h = compute_h(&p).unwrap();
    assert_eq!(compute_a(&h, &dv(&[1, 1])).unwrap(), poly(&[2]));
    assert!(compute_a(&h, &dv(&[1, 0])).unwrap().is_one());
    assert!(matches!(compute_a(&h, &dv(&[2, 2])), Err(EngineError::Missing { .. })));
}

#[test]
fn compute_a_rejects_non_polynomial() {
    let mut h = BTreeMap::new();
    h.insert(dv(&[1]), rf(&[1], &[-1, 0, 1]));
    assert!(matches!(compute_a(&h, &dv(&[1])), Err(EngineError::NotPolynomial { .. })));
}

#[test]
fn compute_i_single_divisor_is_a() {
    let mut a = BTreeMap::new();
    a.insert(dv(&[2, 1]), poly(&[3, 0, 1]));
    assert_eq!(compute_i(&a, &dv(&[2, 1])).unwrap(), poly(&[3, 0, 1]));
}

const PARTITION_COUNTS: [i64; 7] = [1, 1, 2, 3, 5, 7, 11];

#[test]
fn jordan_nilpotent_pipeline() {
    let c = Computation::run(&Quiver::jordan(1), &RProvider::LoopNilpotent(1), &bound(&[6])).unwrap();
    for n in 1..=6u32 {
        let alpha = dv(&[n]);
        assert!(c.a[&alpha].is_one(), "A({n}) = {}", c.a[&alpha]);
        assert!(c.i[&alpha].is_one(), "I({n}) = {}", c.i[&alpha]);
        assert_eq!(c.m_burnside[&alpha], poly(&[PARTITION_COUNTS[n as usize]]));
    }
    assert!(c.routes_agree());
    assert!(c.weyl_kac_ok());
    assert!(c.failed_checks().is_empty());
}

#[test]
fn affine_a1_pipeline() {
    let b = bound(&[4, 4]);
    let c = Computation::run(&Quiver::kronecker(1), &RProvider::KroneckerNilpotent(1), &b).unwrap();
    for res in c.results() {
        let [m, n] = res.alpha.components() else { unreachable!() };
        let expected = match m.abs_diff(*n) {
            0 => 2,
            1 => 1,
            _ => 0,
        };
        assert_eq!(res.a, poly(&[expected]), "{}", res.alpha);
        assert!(res.degree_ok && res.nonneg_ok);
    }
    assert!(c.routes_agree());
    assert!(c.weyl_kac_ok());
    assert_eq!(product_log_from_t(&affine_a1_t(&b), &b), c.p.log().unwrap());
}

#[test]
fn builtin_providers_give_integer_a() {
    let runs = [
        (Quiver::jordan(2), RProvider::LoopNilpotent(2), bound(&[6])),
        (Quiver::jordan(1), RProvider::NoRelations, bound(&[6])),
        (Quiver::kronecker(2), RProvider::KroneckerNilpotent(2), bound(&[3, 3])),
        (reverse_kronecker(), RProvider::NoRelations, bound(&[3, 3])),
    ];
    for (q, p, b) in runs {
        let c = Computation::run(&q, &p, &b).unwrap();
        for res in c.results() {
            assert!(res.a.integer_coefficients().is_some(), "{} {}", res.alpha, res.a);
            assert!(res.degree_ok, "{} {}", res.alpha, res.a);
        }
        assert!(c.routes_agree());
        assert!(c.weyl_kac_ok());
    }
}

#[test]
fn no_relation_values() {
    // Jordan quiver without relations: one absolutely indecomposable class
    // per eigenvalue in each dimension
    let c = Computation::run(&Quiver::jordan(1), &RProvider::NoRelations, &bound(&[4])).unwrap();
    for n in 1..=4 {
        assert_eq!(c.a[&dv(&[n])], poly(&[0, 1]));
    }
    let c = Computation::run(&reverse_kronecker(), &RProvider::NoRelations, &bound(&[1, 1])).unwrap();
    assert_eq!(c.a[&dv(&[1, 1])], poly(&[1, 1]));
}

#[test]
fn burnside_small_coefficients() {
    let m = compute_m_burnside(&Quiver::jordan(1), &RProvider::LoopNilpotent(1), &bound(&[4])).unwrap();
    assert!(m.constant_term().is_one());
    assert!(m.coefficient(&dv(&[1])).unwrap().is_one());
    assert_eq!(m.coefficient(&dv(&[2])).unwrap(), QRationalFunction::from_int(2));
    let mut i = BTreeMap::new();
    i.insert(dv(&[1]), poly(&[1]));
    for n in 2..=4 {
        i.insert(dv(&[n]), QPolynomial::zero());
    }
    let geo = compute_m_krullschmidt(&i, &bound(&[4])).unwrap();
    for n in 0..=4 {
        assert!(geo.coefficient(&dv(&[n])).unwrap().is_one());
    }
}

#[test]
fn mobius_roundtrip() {
    let c = Computation::run(&Quiver::kronecker(2), &RProvider::KroneckerNilpotent(2), &bound(&[2, 2])).unwrap();
    let rebuilt: BTreeMap<DimVector, QRationalFunction> =
        c.a.keys().map(|beta| (beta.clone(), h_from_a(beta, |a| c.a.get(a).cloned()).unwrap())).collect();
    assert_eq!(rebuilt, c.h);
    assert_eq!(compute_a_table(&rebuilt).unwrap(), c.a);
}

#[test]
fn euler_form_examples() {
    assert_eq!(euler_form(&Quiver::jordan(1), &dv(&[1]), &dv(&[1])), 0);
    assert_eq!(euler_form(&reverse_kronecker(), &dv(&[1, 1]), &dv(&[1, 1])), 0);
    let arrowless = Quiver::new(vec![vec![0, 0], vec![0, 0]]).unwrap();
    assert_eq!(euler_form(&arrowless, &dv(&[2, 3]), &dv(&[4, 5])), 23);
    assert_eq!(euler_form(&Quiver::kronecker(1), &dv(&[3, 1]), &dv(&[3, 1])), 4);
}

#[test]
fn check_result_examples() {
    let j = Quiver::jordan(1);
    let r = check_result(KacResult::new(dv(&[2]), poly(&[1]), poly(&[1]), poly(&[2])), &j);
    assert!(r.degree_ok && r.nonneg_ok);
    assert_eq!(r.t_coeffs, vec![BigInt::from(1)]);
    let r = check_result(KacResult::new(dv(&[1, 1]), poly(&[2]), poly(&[2]), poly(&[4])), &Quiver::kronecker(1));
    assert!(r.degree_ok && r.nonneg_ok);
    let r = check_result(KacResult::new(dv(&[1]), poly(&[1, -1]), poly(&[1]), poly(&[1])), &j);
    assert!(r.degree_ok && !r.nonneg_ok);
    let r = check_result(KacResult::new(dv(&[1]), poly(&[0, 0, 1]), poly(&[1]), poly(&[1])), &j);
    assert!(!r.degree_ok);
    let half = QPolynomial::constant(BigRational::new(1.into(), 2.into()));
    let r = check_result(KacResult::new(dv(&[1]), half, poly(&[1]), poly(&[1])), &j);
    assert!(!r.nonneg_ok && r.t_coeffs.is_empty());
}

#[test]
fn weyl_kac_flags_tampered_a() {
    let q = Quiver::kronecker(1);
    let b = bound(&[2, 2]);
    let c = Computation::run(&q, &RProvider::KroneckerNilpotent(1), &b).unwrap();
    let mut a = c.a.clone();
    a.insert(dv(&[1, 1]), poly(&[2, 1]));
    let flags = verify_weyl_kac(&q, &c.h, &a, &b);
    assert!(!flags[&dv(&[1, 1])]);
    assert!(!flags[&dv(&[2, 2])]);
    assert!(flags[&dv(&[1, 0])]);
}

#[test]
fn provider_quiver_mismatch() {
    let err = build_p(&Quiver::jordan(1), &RProvider::LoopNilpotent(2), &bound(&[2])).unwrap_err();
    assert!(matches!(err, EngineError::ProviderMismatch(_)));
    let err = build_p(&Quiver::jordan(1), &RProvider::NoRelations, &bound(&[2, 2])).unwrap_err();
    assert!(matches!(err, EngineError::DimensionMismatch { .. }));
}
