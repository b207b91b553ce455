use super::fixtures::*;
use super::*;
use crate::ratmap::parse_map;
use crate::valfield::{MixedConfig, MixedScalar, ValuedField};

fn cfg(p: u64, e: u32) -> MixedConfig {
    MixedConfig::new(p, e).unwrap()
}

fn map(c: MixedConfig, s: &str) -> HomogeneousPair<MixedScalar> {
    parse_map(s, &c).unwrap()
}

fn pt(c: MixedConfig, s: &str) -> TypeIIPoint<MixedScalar> {
    TypeIIPoint::parse(&c, s).unwrap()
}

#[test]
fn classification_examples() {
    let c = cfg(3, 2);
    assert_eq!(classify_reduction(&map(c, "z^2")).unwrap(), Classification::TwoToOne);
    assert_eq!(classify_reduction(&loxodromic_example().map().unwrap()).unwrap(), Classification::BijectiveCyclic(2));
    assert_eq!(classify_reduction(&parabolic_example().map().unwrap()).unwrap(), Classification::BijectiveCyclic(2));
    assert_eq!(classify_reduction(&acyclic_example()).unwrap(), Classification::BijectiveAcyclic);
    assert_eq!(classify_reduction(&map(c, "3*z^2")).unwrap(), Classification::TwoToOne);
    assert_eq!(classify_reduction(&map(c, "(z^2 + 3)/(3*z)")).unwrap(), Classification::ConstantImage);
}

#[test]
fn normal_forms_match_the_parsed_maps() {
    let lox = loxodromic_example();
    assert_eq!(lox.validate().unwrap(), 2);
    assert!(lox.map().unwrap().projectively_equal(&parse_map("-z*(z-10)/(z-4)", &cfg(3, 2)).unwrap()));
    let para = parabolic_example();
    assert_eq!(para.validate().unwrap(), 2);
    assert!(para.map().unwrap().projectively_equal(&parse_map("(z-2)*(z-1)/z", &cfg(2, 2)).unwrap()));
    let NormalFormSpec::Loxodromic { a, b, .. } = lox else { unreachable!() };
    let bad = NormalFormSpec::Loxodromic { omega: MixedScalar::from_q(&cfg(3, 2), &crate::arith::field::q_int(1)), a, b };
    assert!(bad.validate().is_err());
}

#[test]
fn retraction_examples() {
    let lox = loxodromic_example();
    let found = ramification_retraction(&lox.map().unwrap()).unwrap();
    assert!(found.is(&pt(cfg(3, 2), "4@-1/2")), "{}", found.point);
    assert!(found.same_as(&lox.critical_disk().unwrap()));
    let para = parabolic_example();
    let found = ramification_retraction(&para.map().unwrap()).unwrap();
    assert!(found.is(&pt(cfg(2, 2), "0@-1/2")), "{}", found.point);
    assert!(found.same_as(&para.critical_disk().unwrap()));
    let c = cfg(5, 1);
    assert!(ramification_retraction(&map(c, "z^2")).unwrap().is(&TypeIIPoint::gauss(&c)));
}

#[test]
fn depth_sequences() {
    for spec in [loxodromic_example(), parabolic_example()] {
        let s = abc_sequences(&spec.map().unwrap(), 4).unwrap();
        assert!(s.bounds_hold(), "{:?}", s.violations);
        assert!(s.recursions_hold(), "{:?}", s.recursion_violations);
        assert_eq!((s.a[0], s.b[0]), (1, 0));
        assert_eq!(s.a[2] + s.b[2] + s.c[2] + s.point_mass[2], 8);
        assert!(s.c[1] <= s.a[1] && s.a[1] <= 1 && 2 * s.b[1] < 3);
        assert_eq!(s.a, [1, 1, 3, 5]);
        assert_eq!(s.b, [0, 0, 2, 2]);
        assert_eq!(s.c, s.a);
        assert_eq!(s.stated_mismatches(), [2, 4]);
        assert_eq!(s.two_a_plus_b_delta, [0, -2, 0, -4]);
    }
}

#[test]
fn closed_form_values() {
    assert_eq!(sequences::closed_form(2, 2), crate::arith::field::q_frac(5, 2));
    assert_eq!(sequences::closed_form(1, 2), crate::arith::field::q_int(1));
}

fn read_point<K: ValuedField>(cfg: &K::Config, p: &JPoint) -> Lifted<K> {
    let k = p.e / K::ramification(cfg);
    let point = TypeIIPoint::parse(&K::ramify_config(cfg, k), &format!("{}@{}", p.center, p.t)).unwrap();
    Lifted { point, ramification: k }
}

fn assert_loci<K: ValuedField>(cfg: &K::Config, report: &TheoremReport, expected: &[&str]) {
    assert!(report.passed(), "{:?}", report.failures);
    assert_eq!(report.per_j.len(), expected.len());
    for (row, want) in report.per_j.iter().zip(expected) {
        let LocusJson::Point(p) = &row.locus else { panic!("j = {}: segment locus", row.j) };
        let want = Lifted { point: TypeIIPoint::parse(cfg, want).unwrap(), ramification: 1 };
        assert!(read_point::<K>(cfg, p).same_as(&want), "j = {}: {p:?} vs {}", row.j, want.point);
    }
}

#[test]
fn verify_examples() {
    let opts = VerifyOptions::default();
    let c5 = cfg(5, 1);
    let sq = verify_theorem(&map(c5, "z^2"), &opts).unwrap();
    assert_loci::<MixedScalar>(&c5, &sq, &["0@0"; 4]);
    let lox = verify_theorem(&loxodromic_example().map().unwrap(), &opts).unwrap();
    assert_loci::<MixedScalar>(&cfg(3, 2), &lox, &["0@0", "4@-1/2", "4@-1/2", "4@-1/2"]);
    assert_eq!(lox.period, Some(2));
    assert!(lox.sequences.as_ref().unwrap().bounds_hold());
    let para = verify_theorem(&parabolic_example().map().unwrap(), &opts).unwrap();
    assert_loci::<MixedScalar>(&cfg(2, 2), &para, &["0@0", "0@-1/2", "0@-1/2", "0@-1/2"]);
    assert!(para.per_j.iter().all(|r| r.millis.is_none()));
}

#[test]
fn verify_acyclic() {
    let m = acyclic_example();
    let rep = verify_theorem(&m, &VerifyOptions::default()).unwrap();
    assert_eq!(rep.classification, Classification::BijectiveAcyclic);
    assert_loci::<crate::valfield::LaurentScalar>(m.config(), &rep, &["0@0"; 4]);
}
