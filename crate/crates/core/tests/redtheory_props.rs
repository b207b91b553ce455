use berkred::arith::field::q_frac;
use berkred::arith::{Fp, Q};
use berkred::berktree::{image_point, Direction, TypeIIPoint};
use berkred::ratmap::HomogeneousPair;
use berkred::redtheory::{directional_surplus_degrees, fiber_form, local_degree, multiplicity_in, tangent_image, tangent_image_probe, Frames};
use berkred::valfield::{ClosedPoint, MixedConfig, MixedScalar, ResiduePoint, ValuedField};
use proptest::prelude::*;

const P: u64 = 3;

fn scalar(cfg: MixedConfig) -> impl Strategy<Value = MixedScalar> {
    (-4i64..5, -1i32..3).prop_map(move |(n, k)| {
        let q = if k >= 0 { q_frac(n * 3i64.pow(k as u32), 1) } else { q_frac(n, 3i64.pow((-k) as u32)) };
        MixedScalar::from_q(&cfg, &q)
    })
}

fn map(cfg: MixedConfig) -> impl Strategy<Value = HomogeneousPair<MixedScalar>> {
    (2usize..4).prop_flat_map(move |d| {
        let side = move || prop::collection::vec(scalar(cfg), d + 1);
        (side(), side()).prop_filter_map("degenerate", move |(f, g)| HomogeneousPair::from_coeffs(f, g, cfg).ok())
    })
}

fn point(cfg: MixedConfig) -> impl Strategy<Value = TypeIIPoint<MixedScalar>> {
    let e = cfg.e as i64;
    (scalar(cfg), -3 * e..3 * e).prop_map(move |(c, t)| TypeIIPoint::new(c, q_frac(t, e)).unwrap())
}

fn setup() -> impl Strategy<Value = (HomogeneousPair<MixedScalar>, TypeIIPoint<MixedScalar>)> {
    (1u32..3).prop_flat_map(|e| {
        let cfg = MixedConfig::new(P, e).unwrap();
        (map(cfg), point(cfg))
    })
}

fn lcm_upto(d: usize) -> u32 {
    (1..=d as u32).fold(1, |a, b| a * b / num::integer::gcd(a, b))
}

fn rational_tags() -> Vec<ClosedPoint<Fp>> {
    let mut v: Vec<_> = (0..P as i128).map(|r| ClosedPoint::Rational(ResiduePoint::Finite(Fp::new(r, P)))).collect();
    v.push(ClosedPoint::Rational(ResiduePoint::Infinity));
    v
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 96, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn preimage_mass_is_conserved((m, x) in setup()) {
        let data = directional_surplus_degrees(&m, &x).unwrap();
        let d = m.degree();
        let mass: usize = data.directions.iter().map(|e| e.depth * e.tag.degree()).sum::<usize>() + data.point_mass;
        prop_assert_eq!(mass, d);
        let surplus: usize = data.directions.iter().map(|e| e.surplus * e.tag.degree()).sum();
        prop_assert_eq!(surplus + data.local_degree, d);
        prop_assert!(data.local_degree >= 1 && data.local_degree <= d);
    }

    #[test]
    fn probe_matches_exact_tangent_map((m, x) in setup(), r in 0usize..4) {
        let v = Direction::new(x.clone(), rational_tags()[r].clone());
        prop_assert_eq!(tangent_image(&m, &x, &v).unwrap(), tangent_image_probe(&m, &x, &v).unwrap());
    }

    #[test]
    fn multiplicity_is_local_degree_along_the_germ((m, x) in setup(), r in 0usize..4) {
        let tag = rational_tags()[r].clone();
        let fr = Frames::new(&m, &x).unwrap();
        let mult = multiplicity_in(&fiber_form(&fr.tangent.divided, &fr.push(&tag).unwrap()), &tag);
        if let Some(e) = directional_surplus_degrees(&m, &x).unwrap().at(&tag) {
            prop_assert_eq!(e.multiplicity, mult);
        }
        let k = 2 * lcm_upto(m.degree());
        let e = x.config().e;
        let (mr, xr) = (m.ramify(k), x.ramify(k));
        let h = Q::new(1.into(), (k * e).into());
        let near = Direction::new(xr, tag).step(&h).unwrap();
        prop_assert_eq!(local_degree(&mr, &near).unwrap(), mult);
        if mult == 1 {
            let img = image_point(&mr, &near).unwrap();
            prop_assert_eq!(berkred::berktree::rho(&img, &image_point(&mr, &x.ramify(k)).unwrap()), h);
        }
    }
}
