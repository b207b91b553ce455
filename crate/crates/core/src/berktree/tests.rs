use super::*;
use crate::arith::field::q_frac;
use crate::arith::Fp;
use crate::ratmap::{parse_map, reduce_map, Divided, ProjPoint};
use crate::valfield::{parse_scalar, ClosedPoint, MixedConfig, MixedScalar, ResiduePoint};

type P = TypeIIPoint<MixedScalar>;

fn cfg(p: u64, e: u32) -> MixedConfig {
    MixedConfig::new(p, e).unwrap()
}

fn pt(c: MixedConfig, s: &str) -> P {
    TypeIIPoint::parse(&c, s).unwrap()
}

fn k(c: MixedConfig, s: &str) -> MixedScalar {
    parse_scalar(&c, s).unwrap()
}

#[test]
fn rho_examples() {
    let c = cfg(3, 2);
    let g = P::gauss(&c);
    assert_eq!(rho(&g, &pt(c, "0@-1")), q_int(1));
    assert_eq!(rho(&pt(c, "0@-1/2"), &pt(c, "1@-1/2")), q_int(1));
    assert_eq!(rho(&g, &g), q_int(0));
}

#[test]
fn wedge_examples() {
    let c = cfg(3, 1);
    let g = P::gauss(&c);
    assert_eq!(wedge(&pt(c, "0@-1"), &pt(c, "1@-1"), &g), g);
    let x = pt(c, "2@-3");
    assert_eq!(wedge(&x, &x, &g), x);
    assert_eq!(wedge(&pt(c, "0@-2"), &pt(c, "0@-1"), &g), pt(c, "0@-1"));
}

#[test]
fn direction_examples() {
    let c = cfg(3, 2);
    let g = P::gauss(&c);
    let zero = direction_to_classical(&g, &ProjPoint::Finite(k(c, "0")));
    assert_eq!(zero.tag(), &ClosedPoint::Rational(ResiduePoint::Finite(Fp::new(0, 3))));
    let d = direction_of(&g, &pt(c, "4@-1/2")).unwrap();
    assert_eq!(d.tag(), &ClosedPoint::Rational(ResiduePoint::Finite(Fp::new(1, 3))));
    assert!(direction_to_classical(&g, &ProjPoint::Infinity).is_up());
    assert_eq!(direction_of(&g, &g), Err(Error::SamePoint));
    assert!(direction_of(&pt(c, "0@-1"), &g).unwrap().is_up());
}

#[test]
fn directions_survive_rebasing() {
    let c = cfg(3, 1);
    let x = pt(c, "0@-1");
    let y = pt(c, "3@-1");
    assert_eq!(x, y);
    let target = pt(c, "6@-2");
    let dx = direction_of(&x, &target).unwrap();
    let dy = direction_of(&y, &target).unwrap();
    assert_ne!(dx.tag(), dy.tag());
    assert_eq!(dx, dy);
}

#[test]
fn point_along_examples() {
    let c = cfg(3, 2);
    let seg = Segment::new(P::gauss(&c), pt(c, "0@-1"));
    assert_eq!(seg.point_along(&q_int(1)).unwrap(), pt(c, "0@-1"));
    assert_eq!(seg.point_along(&q_frac(1, 2)).unwrap(), pt(c, "0@-1/2"));
    assert!(matches!(seg.point_along(&q_int(2)), Err(Error::OutOfRange(_))));
    let c1 = cfg(3, 1);
    let seg = Segment::new(P::gauss(&c1), pt(c1, "0@-1"));
    assert!(matches!(seg.point_along(&q_frac(1, 2)), Err(Error::EnlargeE(_))));
    // through a join: 0@-1 to 1@-1 passes the Gauss point
    let seg = Segment::new(pt(c, "0@-1"), pt(c, "1@-1"));
    assert_eq!(seg.length(), q_int(2));
    assert_eq!(seg.point_along(&q_int(1)).unwrap(), P::gauss(&c));
    assert_eq!(seg.point_along(&q_frac(3, 2)).unwrap(), pt(c, "1@-1/2"));
}

#[test]
fn mobius_examples() {
    let c = cfg(3, 2);
    let scale = Mobius::affine(k(c, "1/3"), k(c, "0")).unwrap();
    assert_eq!(apply_mobius_point(&scale, &P::gauss(&c)).unwrap(), pt(c, "0@1"));
    let inv = Mobius::inversion(&c);
    assert_eq!(apply_mobius_point(&inv, &pt(c, "0@-1")).unwrap(), pt(c, "0@1"));
    let shift = Mobius::affine(k(c, "1"), k(c, "4")).unwrap();
    assert_eq!(apply_mobius_point(&shift, &pt(c, "0@-1/2")).unwrap(), pt(c, "4@-1/2"));
    assert_eq!(pt(c, "inf@-1"), pt(c, "0@1"));
}

#[test]
fn mobius_agrees_with_degree_one_image() {
    let c = cfg(5, 2);
    let g = Mobius::new(k(c, "2"), k(c, "pi"), k(c, "5"), k(c, "3 + pi")).unwrap();
    let m = HomogeneousPair::from_coeffs(vec![g.b.clone(), g.a.clone()], vec![g.d.clone(), g.c.clone()], c).unwrap();
    for s in ["0@0", "0@-1", "1@-1/2", "3@2", "1/5@-3", "-3/5@-1"] {
        let x = pt(c, s);
        assert_eq!(apply_mobius_point(&g, &x).unwrap(), image_point(&m, &x).unwrap(), "at {s}");
    }
}

#[test]
fn image_point_examples() {
    let c = cfg(2, 2);
    let g = P::gauss(&c);
    let sq = parse_map::<MixedScalar>("z^2", &c).unwrap();
    assert_eq!(image_point(&sq, &g).unwrap(), g);
    let psq = parse_map::<MixedScalar>("2*z^2", &c).unwrap();
    assert_eq!(image_point(&psq, &g).unwrap(), pt(c, "0@-1"));
    let par = parse_map::<MixedScalar>("(z-2)*(z-1)/z", &c).unwrap();
    let par2 = par.iterate(2, 64).unwrap();
    let xi_m = pt(c, "0@-1/2");
    assert_eq!(image_point(&par2, &xi_m).unwrap(), xi_m);
}

#[test]
fn gauss_fixed_iff_nonconstant_reduction() {
    let c = cfg(3, 1);
    for s in ["z^2", "3*z^2", "-z*(z-10)/(z-4)", "(z^2 + 3)/(3*z)", "z^3/3 + 1", "(z-1)^2/(z+1)"] {
        let m = parse_map::<MixedScalar>(s, &c).unwrap();
        let fixed = image_point(&m, &P::gauss(&c)).unwrap().is_gauss();
        let nonconstant = matches!(reduce_map(&m).unwrap().divided, Divided::NonConstant { .. });
        assert_eq!(fixed, nonconstant, "{s}");
    }
}
