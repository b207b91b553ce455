use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use berkred::arith::field::{q_frac, q_int};
use berkred::arith::{Fp, Q};
use berkred::berktree::{apply_mobius_point, image_point, rho, Direction, Segment, TypeIIPoint};
use berkred::harness::fixtures::{acyclic_example, loxodromic_example, parabolic_example, NormalFormSpec};
use berkred::harness::{abc_sequences, analyze_reduction, verify_theorem, Classification, Lifted, VerifyOptions, ORBIT_CAP};
use berkred::hypres::{hypres_eval, min_locus, ord_res_at, slope_at, Locus};
use berkred::ratmap::{parse_map, HomogeneousPair, Mobius};
use berkred::redtheory::{depth_profile, directional_surplus_degrees, tangent_image, tangent_image_probe};
use berkred::valfield::{MixedConfig, MixedScalar, ResiduePoint, ValuedField};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type M = HomogeneousPair<MixedScalar>;
type P = TypeIIPoint<MixedScalar>;
type Check = Result<(), String>;

fn cfg(p: u64, e: u32) -> MixedConfig {
    MixedConfig::new(p, e).unwrap()
}

fn map(c: MixedConfig, s: &str) -> M {
    parse_map(s, &c).unwrap()
}

fn pt(c: MixedConfig, s: &str) -> P {
    TypeIIPoint::parse(&c, s).unwrap()
}

fn expect_eq<T: PartialEq + std::fmt::Display>(what: &str, got: T, want: T) -> Check {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got}, expected {want}"))
    }
}

fn ramified_map<K: ValuedField>(m: &HomogeneousPair<K>, r: u32) -> HomogeneousPair<K> {
    if r == 1 {
        m.clone()
    } else {
        m.ramify(r)
    }
}

fn ramified_mobius(g: &Mobius<MixedScalar>, r: u32) -> Mobius<MixedScalar> {
    Mobius::new(g.a.ramify(r), g.b.ramify(r), g.c.ramify(r), g.d.ramify(r)).unwrap()
}

/// Checks that the minimum locus of `m` is the single point `want`.
fn locus_is<K: ValuedField>(what: &str, m: &HomogeneousPair<K>, want: &TypeIIPoint<K>) -> Check {
    let found = min_locus(m).map_err(|e| format!("{what}: {e}"))?;
    let Locus::Point(x) = &found.locus else { return Err(format!("{what}: locus {} is a segment", found.locus)) };
    let got = Lifted { point: x.clone(), ramification: found.ramification };
    if got.same_as(&Lifted { point: want.clone(), ramification: 1 }) {
        Ok(())
    } else {
        Err(format!("{what}: locus {x} (ramification {}), expected {want}", found.ramification))
    }
}

fn good_reduction() -> Check {
    let c = cfg(5, 1);
    let (m, g) = (map(c, "z^2"), TypeIIPoint::gauss(&c));
    expect_eq("ordRes at the Gauss point", ord_res_at(&m, &g).map_err(|e| e.to_string())?, q_int(0))?;
    expect_eq("hypRes at the Gauss point", hypres_eval(&m, &g).map_err(|e| e.to_string())?, q_int(0))?;
    locus_is("z^2", &m, &g)
}

fn ord_res_ray() -> Check {
    let c = cfg(5, 1);
    let m = map(c, "5*z^2");
    for (t, want) in [(-1, 4), (0, 2), (1, 0), (2, 2)] {
        let x = TypeIIPoint::new(MixedScalar::from_q(&c, &q_int(0)), q_int(t)).unwrap();
        expect_eq(&format!("ordRes at 0@{t}"), ord_res_at(&m, &x).map_err(|e| e.to_string())?, q_int(want))?;
    }
    locus_is("5z^2", &m, &pt(c, "0@1"))
}

fn hypres_spots() -> Check {
    let c = cfg(5, 2);
    expect_eq("hypRes of 5z^2 at 0@1", hypres_eval(&map(c, "5*z^2"), &pt(c, "0@1")).map_err(|e| e.to_string())?, q_frac(-1, 2))?;
    let sq = map(c, "z^2");
    for t in [q_int(1), q_int(-1), q_frac(1, 2), q_frac(-1, 2)] {
        let x = TypeIIPoint::new(MixedScalar::from_q(&c, &q_int(0)), t.clone()).unwrap();
        let want = num::Signed::abs(&t) / q_int(2);
        expect_eq(&format!("hypRes of z^2 at {x}"), hypres_eval(&sq, &x).map_err(|e| e.to_string())?, want)?;
    }
    Ok(())
}

fn cyclic_fixture(spec: NormalFormSpec<MixedScalar>, c: MixedConfig, moved: &str) -> Check {
    let m = spec.map().map_err(|e| e.to_string())?;
    let an = analyze_reduction(&m, ORBIT_CAP).map_err(|e| e.to_string())?;
    if an.classification != Classification::BijectiveCyclic(2) {
        return Err(format!("classification {}", an.classification));
    }
    let expected = [TypeIIPoint::gauss(&c), pt(c, moved), pt(c, moved), pt(c, moved)];
    for (j, want) in (1..=4).zip(&expected) {
        let mj = if j == 1 { m.clone() } else { m.iterate(j, 64).map_err(|e| e.to_string())? };
        locus_is(&format!("j = {j}"), &mj, want)?;
    }
    let report = verify_theorem(&m, &VerifyOptions::default()).map_err(|e| e.to_string())?;
    if !report.passed() {
        return Err(format!("verification failures: {:?}", report.failures));
    }
    Ok(())
}

fn acyclic_fixture() -> Check {
    let m = acyclic_example();
    let an = analyze_reduction(&m, ORBIT_CAP).map_err(|e| e.to_string())?;
    if an.classification != Classification::BijectiveAcyclic {
        return Err(format!("classification {}", an.classification));
    }
    let g = TypeIIPoint::gauss(m.config());
    for j in 1..=4 {
        let mj = if j == 1 { m.clone() } else { m.iterate(j, 64).map_err(|e| e.to_string())? };
        locus_is(&format!("j = {j}"), &mj, &g)?;
    }
    Ok(())
}

fn random_scalar(rng: &mut ChaCha8Rng, c: MixedConfig) -> MixedScalar {
    let p = c.p as i64;
    let n = rng.gen_range(-5i64..=5);
    let q = match rng.gen_range(-1i32..=2) {
        -1 => q_frac(n, p),
        k => q_int(n * p.pow(k as u32)),
    };
    MixedScalar::from_q(&c, &q)
}

fn random_quadratic(rng: &mut ChaCha8Rng, c: MixedConfig) -> M {
    loop {
        let f: Vec<_> = (0..3).map(|_| random_scalar(rng, c)).collect();
        let g: Vec<_> = (0..3).map(|_| random_scalar(rng, c)).collect();
        if let Ok(m) = HomogeneousPair::from_coeffs(f, g, c) {
            if m.degree() == 2 {
                return m;
            }
        }
    }
}

fn random_point(rng: &mut ChaCha8Rng, c: MixedConfig) -> P {
    let e = c.e as i64;
    TypeIIPoint::new(random_scalar(rng, c), q_frac(rng.gen_range(-3 * e..=3 * e), e)).unwrap()
}

fn random_mobius(rng: &mut ChaCha8Rng, c: MixedConfig) -> Mobius<MixedScalar> {
    loop {
        let [a, b, cc, d] = [(); 4].map(|_| random_scalar(rng, c));
        if let Ok(g) = Mobius::new(a, b, cc, d) {
            return g;
        }
    }
}

/// The rational directions at `x`: every residue and the one toward infinity.
fn rational_directions(x: &P) -> Vec<Direction<MixedScalar>> {
    let p = x.config().p;
    let mut out: Vec<_> = (0..p as i128).map(|r| Direction::rational(x.clone(), ResiduePoint::Finite(Fp::new(r, p)))).collect();
    out.push(Direction::up(x.clone()));
    out
}

fn bookkeeping_at(m: &M, x: &P) -> Check {
    let d = m.degree();
    let prof = depth_profile(m, x).map_err(|e| e.to_string())?;
    let mass: usize = prof.depths.iter().map(|(u, k)| u.degree() * k).sum::<usize>() + prof.point_mass;
    if mass != d {
        return Err(format!("depths and point mass sum to {mass}"));
    }
    let data = directional_surplus_degrees(m, x).map_err(|e| e.to_string())?;
    let surplus: usize = data.directions.iter().map(|e| e.surplus * e.tag.degree()).sum();
    if surplus + data.local_degree != d {
        return Err(format!("surplus {surplus} + local degree {} differs from {d}", data.local_degree));
    }
    for e in &data.directions {
        let back = if e.covers_base { e.multiplicity } else { 0 };
        if e.depth != e.surplus + back {
            return Err(format!("direction {}: depth {} but surplus {} and multiplicity {}", e.tag, e.depth, e.surplus, e.multiplicity));
        }
    }
    for v in rational_directions(x) {
        let exact = tangent_image(m, x, &v).map_err(|e| format!("tangent map toward {v}: {e}"))?;
        let probe = tangent_image_probe(m, x, &v).map_err(|e| format!("probe toward {v}: {e}"))?;
        if exact != probe {
            return Err(format!("toward {v}: tangent map gives {exact}, probe gives {probe}"));
        }
    }
    Ok(())
}

fn bookkeeping() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut failures = Vec::new();
    for i in 0..100 {
        let p = [2, 3, 5][i % 3];
        let c = cfg(p, rng.gen_range(1..=2));
        let m = random_quadratic(&mut rng, c);
        for _ in 0..3 {
            let x = random_point(&mut rng, c);
            if let Err(e) = bookkeeping_at(&m, &x) {
                failures.push(format!("{m} over p = {p} at {x}: {e}"));
            }
        }
    }
    match failures.as_slice() {
        [] => Ok(()),
        _ => Err(failures.join("\n")),
    }
}

/// `(h(x + step) - h(x)) / step` along `v`, for `step = 1 / (e k)`.
fn difference(m: &M, v: &Direction<MixedScalar>, k: u32) -> Result<Q, String> {
    let step = q_frac(1, (v.base().config().e * k) as i64);
    let (mk, vk) = (ramified_map(m, k), Direction::new(v.base().ramify(k), v.tag().clone()));
    let moved = vk.step(&step).map_err(|e| e.to_string())?;
    let h = |x: &P| hypres_eval(&mk, x).map_err(|e| e.to_string());
    Ok((h(&moved)? - h(vk.base())?) / step)
}

fn slope_certification() -> Check {
    let lox = loxodromic_example().map().map_err(|e| e.to_string())?;
    let para = parabolic_example().map().map_err(|e| e.to_string())?;
    let (c3, c2) = (cfg(3, 2), cfg(2, 2));
    let cases = [(&lox, pt(c3, "0@0")), (&lox, pt(c3, "4@-1/2")), (&para, pt(c2, "0@0")), (&para, pt(c2, "0@-1/2"))];
    let mut tested = 0;
    for (m, x) in &cases {
        for v in rational_directions(x) {
            let s = slope_at(m, x, &v).map_err(|e| format!("{v}: {e}"))?;
            let (coarse, fine) = (difference(m, &v, 2)?, difference(m, &v, 4)?);
            if coarse != fine {
                return Err(format!("{v}: finite differences {coarse} and {fine} did not stabilize"));
            }
            expect_eq(&format!("slope toward {v}"), s, fine)?;
            tested += 1;
        }
    }
    if tested < 12 {
        return Err(format!("only {tested} directions"));
    }
    Ok(())
}

fn equivariance() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let lox = loxodromic_example().map().map_err(|e| e.to_string())?;
    let para = parabolic_example().map().map_err(|e| e.to_string())?;
    let maps = [
        (lox.clone(), cfg(3, 2)),
        (lox.iterate(2, 64).map_err(|e| e.to_string())?, cfg(3, 2)),
        (para.clone(), cfg(2, 2)),
        (para.iterate(2, 64).map_err(|e| e.to_string())?, cfg(2, 2)),
        (map(cfg(5, 1), "5*z^2"), cfg(5, 1)),
    ];
    for i in 0..20 {
        let (m, c) = &maps[i % maps.len()];
        let g = random_mobius(&mut rng, *c);
        let found = min_locus(m).map_err(|e| format!("{m}: {e}"))?;
        let conj = min_locus(&m.conjugate(&g)).map_err(|e| format!("{m} conjugated by {g:?}: {e}"))?;
        let (Locus::Point(x), Locus::Point(y)) = (&found.locus, &conj.locus) else {
            return Err(format!("{m}: segment locus"));
        };
        let r = num::integer::lcm(found.ramification, conj.ramification);
        let moved = apply_mobius_point(&ramified_mobius(&g, r).adjugate(), &Lifted { point: x.clone(), ramification: found.ramification }.to(r))
            .map_err(|e| e.to_string())?;
        let other = Lifted { point: y.clone(), ramification: conj.ramification }.to(r);
        if moved != other {
            return Err(format!("map {i}: transported locus {moved}, conjugate locus {other}"));
        }
    }
    Ok(())
}

fn isometry_and_bounds() -> Check {
    let spec = loxodromic_example();
    let xi_m = spec.critical_disk().map_err(|e| e.to_string())?;
    let k = 4 * xi_m.ramification;
    let m = ramified_map(&spec.map().map_err(|e| e.to_string())?, k);
    let seg = Segment::new(TypeIIPoint::gauss(m.config()), xi_m.to(k));
    let len = seg.length();
    let at = |i: i64| seg.point_along(&(len.clone() * q_frac(i, 4))).map_err(|e| e.to_string());
    for (i, j) in [(0, 4), (1, 3), (0, 2), (2, 4), (1, 4)] {
        let (x, y) = (at(i)?, at(j)?);
        let (fx, fy) = (image_point(&m, &x).map_err(|e| e.to_string())?, image_point(&m, &y).map_err(|e| e.to_string())?);
        expect_eq(&format!("distance of images of {x} and {y}"), rho(&fx, &fy), rho(&x, &y))?;
    }
    for spec in [loxodromic_example(), parabolic_example()] {
        let s = abc_sequences(&spec.map().map_err(|e| e.to_string())?, 4).map_err(|e| e.to_string())?;
        if !s.bounds_hold() {
            return Err(format!("depth bounds: {:?}", s.violations));
        }
    }
    Ok(())
}

fn run(n: usize, name: &str, limit: Duration, f: fn() -> Check) -> bool {
    let start = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
    let elapsed = start.elapsed();
    let outcome = outcome.and_then(|()| match elapsed > limit {
        true => Err(format!("took {elapsed:.2?}, limit {limit:.0?}")),
        false => Ok(()),
    });
    let verdict = if outcome.is_ok() { "PASS" } else { "FAIL" };
    println!("criterion {n:>2}: {verdict}  {name} ({elapsed:.2?})");
    if let Err(e) = &outcome {
        for line in e.lines() {
            println!("    {line}");
        }
    }
    outcome.is_ok()
}

#[test]
fn acceptance() {
    let minute = Duration::from_secs(60);
    let unbounded = Duration::MAX;
    let criteria: [(&str, Duration, fn() -> Check); 10] = [
        ("good reduction baseline", Duration::from_secs(1), good_reduction),
        ("ordRes along the ray of 5z^2", Duration::from_secs(5), ord_res_ray),
        ("hypRes spot values", unbounded, hypres_spots),
        ("loxodromic fixture", 5 * minute, || cyclic_fixture(loxodromic_example(), cfg(3, 2), "4@-1/2")),
        ("parabolic fixture", 5 * minute, || cyclic_fixture(parabolic_example(), cfg(2, 2), "0@-1/2")),
        ("acyclic fixture", 5 * minute, acyclic_fixture),
        ("bookkeeping on random quadratics", unbounded, bookkeeping),
        ("slopes against finite differences", unbounded, slope_certification),
        ("equivariance under random Mobius maps", unbounded, equivariance),
        ("isometry and depth bounds", unbounded, isometry_and_bounds),
    ];
    let passed: Vec<bool> = criteria.iter().enumerate().map(|(i, (name, limit, f))| run(i + 1, name, *limit, *f)).collect();
    let failed: Vec<usize> = passed.iter().enumerate().filter(|(_, ok)| !**ok).map(|(i, _)| i + 1).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
