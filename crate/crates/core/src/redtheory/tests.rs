use super::*;
use crate::arith::Fp;
use crate::berktree::direction_to_classical;
use crate::ratmap::{parse_map, ProjPoint};
use crate::valfield::{MixedConfig, MixedScalar};

type P = TypeIIPoint<MixedScalar>;
type M = HomogeneousPair<MixedScalar>;

fn cfg(p: u64, e: u32) -> MixedConfig {
    MixedConfig::new(p, e).unwrap()
}

fn map(c: MixedConfig, s: &str) -> M {
    parse_map(s, &c).unwrap()
}

fn pt(c: MixedConfig, s: &str) -> P {
    TypeIIPoint::parse(&c, s).unwrap()
}

fn fin(v: i64, p: u64) -> ClosedPoint<Fp> {
    ClosedPoint::Rational(ResiduePoint::Finite(Fp::new(v as i128, p)))
}

fn inf() -> ClosedPoint<Fp> {
    ClosedPoint::Rational(ResiduePoint::Infinity)
}

const LOX: &str = "-z*(z-10)/(z-4)";

#[test]
fn intrinsic_reduction_examples() {
    let c = cfg(3, 2);
    let g = P::gauss(&c);
    match intrinsic_reduction(&map(c, "z^2"), &g).unwrap() {
        IntrinsicReduction::Fixed { map, .. } => assert_eq!(map.degree(), 2),
        r => panic!("{r:?}"),
    }
    match intrinsic_reduction(&map(c, "3*z^2"), &g).unwrap() {
        IntrinsicReduction::NonFixed { direction, .. } => assert_eq!(direction.tag(), &fin(0, 3)),
        r => panic!("{r:?}"),
    }
    match intrinsic_reduction(&map(c, LOX), &g).unwrap() {
        IntrinsicReduction::Fixed { map, .. } => {
            assert_eq!(map.degree(), 1);
            assert_eq!(map.apply(&ResiduePoint::Finite(Fp::new(1, 3))), ResiduePoint::Finite(Fp::new(2, 3)));
        }
        r => panic!("{r:?}"),
    }
}

#[test]
fn depth_profile_examples() {
    let c = cfg(3, 2);
    let g = P::gauss(&c);
    let sq = depth_profile(&map(c, "z^2"), &g).unwrap();
    assert!(sq.depths.is_empty());
    assert_eq!(sq.point_mass, 2);
    let psq = depth_profile(&map(c, "3*z^2"), &g).unwrap();
    assert_eq!(psq.depths, vec![(inf(), 2)]);
    assert_eq!(psq.point_mass, 0);
    let lox = depth_profile(&map(c, LOX), &g).unwrap();
    assert_eq!(lox.depths, vec![(fin(1, 3), 1)]);
    assert_eq!(lox.point_mass, 1);
}

#[test]
fn tangent_image_examples() {
    let c = cfg(3, 2);
    let g = P::gauss(&c);
    let zero = Direction::rational(g.clone(), ResiduePoint::Finite(Fp::new(0, 3)));
    let one = Direction::rational(g.clone(), ResiduePoint::Finite(Fp::new(1, 3)));
    let up = Direction::up(g.clone());
    for (m, v, want_base, want_tag) in [
        (map(c, "z^2"), zero.clone(), g.clone(), fin(0, 3)),
        (map(c, LOX), one.clone(), g.clone(), fin(2, 3)),
        (map(c, "3*z^2"), up.clone(), pt(c, "0@-1"), inf()),
    ] {
        let exact = tangent_image(&m, &g, &v).unwrap();
        assert_eq!(exact.base(), &want_base);
        assert_eq!(exact.tag(), &want_tag);
        let probed = tangent_image_probe(&m, &g, &v).unwrap();
        assert_eq!(probed, exact);
    }
    // the direction at 0@-1 containing the Gauss point is the upward one
    assert!(direction_of(&pt(c, "0@-1"), &g).unwrap().is_up());
}

#[test]
fn probe_agrees_with_exact_tangent_map() {
    let c = cfg(3, 2);
    let maps = [LOX, "z^2", "(z^2 + 3)/(3*z)", "(z-1)^2/(z+1)", "z^3/3 + 1", "(z - 2)*(z - 1)/z"];
    let points = ["0@0", "4@-1/2", "1@-1", "0@1", "2@-3/2"];
    for m in maps {
        let m = map(c, m);
        for x in points {
            let x = pt(c, x);
            for r in [0, 1, 2] {
                let v = Direction::rational(x.clone(), ResiduePoint::Finite(Fp::new(r, 3)));
                assert_eq!(tangent_image(&m, &x, &v).unwrap(), tangent_image_probe(&m, &x, &v).unwrap(), "{m} at {x}");
            }
            let up = Direction::up(x.clone());
            assert_eq!(tangent_image(&m, &x, &up).unwrap(), tangent_image_probe(&m, &x, &up).unwrap(), "{m} at {x} up");
        }
    }
}

#[test]
fn local_degree_examples() {
    let c = cfg(3, 2);
    assert_eq!(local_degree(&map(c, "z^2"), &P::gauss(&c)).unwrap(), 2);
    assert_eq!(local_degree(&map(c, LOX), &P::gauss(&c)).unwrap(), 1);
    assert_eq!(local_degree(&map(c, LOX), &pt(c, "4@-1/2")).unwrap(), 2);
}

#[test]
fn directional_degree_examples() {
    let c = cfg(3, 2);
    let g = P::gauss(&c);
    let sq = directional_surplus_degrees(&map(c, "z^2"), &g).unwrap();
    assert!(sq.directions.is_empty());
    let up = Frames::new(&map(c, "z^2"), &g).unwrap();
    let zero = fin(0, 3);
    assert_eq!(multiplicity_in(&fiber_form(&up.tangent.divided, &up.push(&zero).unwrap()), &zero), 2);

    let psq = directional_surplus_degrees(&map(c, "3*z^2"), &g).unwrap();
    let e = psq.at(&inf()).unwrap();
    assert_eq!((e.multiplicity, e.surplus, e.depth), (2, 0, 2));
    assert!(e.covers_base);

    let lox = directional_surplus_degrees(&map(c, LOX), &g).unwrap();
    let e = lox.at(&fin(1, 3)).unwrap();
    assert_eq!((e.multiplicity, e.surplus, e.depth), (1, 1, 1));
}

#[test]
fn semistability_examples() {
    let c = cfg(3, 2);
    let g = P::gauss(&c);
    assert_eq!(semistability_check(&map(c, "z^2"), &g).unwrap(), Semistability::Stable);
    assert_eq!(semistability_check(&map(c, "3*z^2"), &g).unwrap(), Semistability::Unstable);
    assert_eq!(semistability_check(&map(c, LOX), &g).unwrap(), Semistability::Stable);
}

#[test]
fn classify_depth_thresholds() {
    assert_eq!(classify_depths(3, &[(2, false)]), Semistability::SemistableNotStable);
    assert_eq!(classify_depths(3, &[(1, true)]), Semistability::SemistableNotStable);
    assert_eq!(classify_depths(4, &[(2, false)]), Semistability::Stable);
    assert_eq!(classify_depths(4, &[(2, true)]), Semistability::Unstable);
    assert_eq!(classify_depths(2, &[(1, true)]), Semistability::Unstable);
}

#[test]
fn depth_matches_preimage_count_for_scaled_square() {
    // preimages of the Gauss point under 3 z^2 form the point 0@1/2, which
    // lies in the upward direction with full mass 2
    let c = cfg(3, 2);
    let m = map(c, "3*z^2");
    let pre = pt(c, "0@1/2");
    assert_eq!(crate::berktree::image_point(&m, &pre).unwrap(), P::gauss(&c));
    assert_eq!(local_degree(&m, &pre).unwrap(), 2);
    let dir = direction_to_classical(&P::gauss(&c), &ProjPoint::Infinity);
    assert_eq!(depth_profile(&m, &P::gauss(&c)).unwrap().depth(dir.tag()), 2);
}
