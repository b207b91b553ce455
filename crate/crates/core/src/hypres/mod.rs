//! ordRes and hypRes on the tree, directional slopes, and exact
//! minimization by slope descent.

use std::fmt;

use num::{Integer, ToPrimitive};
use serde::Serialize;

use crate::arith::field::q_int;
use crate::arith::Q;
use crate::berktree::{direction_of, direction_to_classical, image_point, rho, wedge, Segment, TypeIIPoint};
use crate::error::{Error, Result};
use crate::par::{self, Strategy};
use crate::ratmap::{HomogeneousPair, ProjPoint};
use crate::redtheory::{profile_from, recentering, Frames};
use crate::valfield::{ClosedPoint, ResiduePoint, ValuedField};


/// Largest extra ramification any single evaluation may introduce.
pub const MAX_RAMIFICATION: u32 = 2520;

/// Extra ramification the minimum search may introduce for degree `d`.
pub fn locus_ramification_budget(d: usize) -> u32 {
    4 * (d as u32 - 1)
}

/// Maximum number of descent steps in [`min_locus`].
pub const DESCENT_CAP: usize = 256;

/// Lattice refinements tried when locating pullback jumps, as ramification
/// factors.
const LEVELS: [u32; 8] = [1, 2, 6, 12, 60, 420, 840, 2520];

/// Doublings allowed while bracketing a breakpoint along a ray.
const RAY_DOUBLINGS: u32 = 40;

pub(crate) fn nonlinear<K: ValuedField>(m: &HomogeneousPair<K>) -> Result<usize> {
    match m.degree() {
        d if d > 1 => Ok(d),
        d => Err(Error::Precondition(format!("needs degree > 1, got {d}"))),
    }
}

pub(crate) fn ramified<K: ValuedField>(m: &HomogeneousPair<K>, k: u32) -> HomogeneousPair<K> {
    if k == 1 {
        m.clone()
    } else {
        m.ramify(k)
    }
}

pub(crate) fn ramified_point<K: ValuedField>(x: &TypeIIPoint<K>, k: u32) -> TypeIIPoint<K> {
    if k == 1 {
        x.clone()
    } else {
        x.ramify(k)
    }
}

/// Smallest `k` with `q` in `(1/(e k)) Z`.
fn needed_ramification(q: &Q, e: u32) -> Result<u32> {
    let den = (q * Q::from_integer(e.into())).denom().clone();
    match den.to_u32() {
        Some(k) if k <= MAX_RAMIFICATION => Ok(k),
        _ => Err(Error::EnlargeE(q.to_string())),
    }
}

/// `v(Res)` of a normalized lift of `φ` in the frame of `x`.
pub fn ord_res_at<K: ValuedField>(m: &HomogeneousPair<K>, x: &TypeIIPoint<K>) -> Result<Q> {
    if m.degree() < 1 {
        return Err(Error::DegreeZero);
    }
    Ok(m.conjugate(&recentering(x)).ord_res())
}

/// The hyperbolic resultant function, normalized to vanish at the Gauss point.
pub fn hypres_eval<K: ValuedField>(m: &HomogeneousPair<K>, x: &TypeIIPoint<K>) -> Result<Q> {
    let d = nonlinear(m)?;
    let g = TypeIIPoint::gauss(m.config());
    let len = rho(&g, x);
    if len == q_int(0) {
        return Ok(q_int(0));
    }
    let y = image_point(m, x)?;
    let fold = rho(x, &wedge(&y, x, &g));
    let moment: Q = Walk::new(m, x, d).jumps()?.into_iter().map(|(c, j)| c * q_int(j as i64)).sum();
    Ok(len / q_int(2) + (fold - moment) / q_int(d as i64 - 1))
}

/// Retraction of `φ^* δ_{ξ_g}` onto `[ξ_g, x]`, parametrized by distance
/// from the Gauss point.
struct Walk<'a, K: ValuedField> {
    m: &'a HomogeneousPair<K>,
    x: &'a TypeIIPoint<K>,
    d: usize,
    e: u32,
    len: Q,
}

impl<'a, K: ValuedField> Walk<'a, K> {
    fn new(m: &'a HomogeneousPair<K>, x: &'a TypeIIPoint<K>, d: usize) -> Self {
        let e = K::ramification(m.config());
        let len = rho(&TypeIIPoint::gauss(m.config()), x);
        Walk { m, x, d, e, len }
    }

    /// Frames at the point at distance `c`, with the Gauss point and `x`
    /// in the same (possibly ramified) field.
    fn at(&self, c: &Q) -> Result<(Frames<K>, TypeIIPoint<K>, TypeIIPoint<K>)> {
        let k = needed_ramification(c, self.e)?;
        let m = ramified(self.m, k);
        let x = ramified_point(self.x, k);
        let g = TypeIIPoint::gauss(m.config());
        let p = Segment::new(g.clone(), x.clone()).point_along(c)?;
        Ok((Frames::new(&m, &p)?, g, x))
    }

    /// Mass retracting strictly beyond distance `c`.
    fn beyond(&self, c: &Q) -> Result<usize> {
        if *c == self.len {
            return Ok(0);
        }
        let (fr, g, x) = self.at(c)?;
        let toward = direction_of(&fr.x, &x)?;
        fr.pullback_mass(toward.tag(), &g)
    }

    /// Mass retracting exactly to distance `c > 0`.
    fn jump_at(&self, c: &Q) -> Result<usize> {
        let (fr, g, x) = self.at(c)?;
        let back = fr.pullback_mass(direction_of(&fr.x, &g)?.tag(), &g)?;
        let forward = if *c == self.len { 0 } else { fr.pullback_mass(direction_of(&fr.x, &x)?.tag(), &g)? };
        self.d.checked_sub(back + forward).ok_or_else(|| Error::Inconsistent(format!("pullback mass exceeds degree at distance {c}")))
    }

    fn jumps(&self) -> Result<Vec<(Q, usize)>> {
        let mut out = Vec::new();
        let m0 = self.beyond(&q_int(0))?;
        self.split(q_int(0), self.len.clone(), m0, 0, 0, &mut out)?;
        let total: usize = out.iter().map(|(_, j)| j).sum();
        if total != m0 {
            return Err(Error::Inconsistent(format!("jumps sum to {total}, expected {m0}")));
        }
        Ok(out)
    }

    /// Jumps in `(a, b]`, given the masses beyond `a` and beyond `b`,
    /// searching the lattice `(1/(e LEVELS[level])) Z`.
    fn split(&self, a: Q, b: Q, ma: usize, mb: usize, level: usize, out: &mut Vec<(Q, usize)>) -> Result<()> {
        if ma == mb {
            return Ok(());
        }
        if ma < mb {
            return Err(Error::Inconsistent(format!("retracted mass increases between {a} and {b}")));
        }
        let n = num::BigInt::from(self.e) * LEVELS[level];
        let lo = (&a * Q::from_integer(n.clone())).floor().to_integer() + 1;
        let hi = (&b * Q::from_integer(n.clone())).floor().to_integer();
        if hi >= lo {
            let c = Q::new((&lo + &hi).div_floor(&2.into()), n.clone());
            if c != b {
                let mc = self.beyond(&c)?;
                self.split(a, c.clone(), ma, mc, level, out)?;
                return self.split(c, b, mc, mb, level, out);
            }
            let j = self.jump_at(&b)?;
            if j == ma - mb {
                out.push((b, j));
                return Ok(());
            }
            if j > ma - mb {
                return Err(Error::Inconsistent(format!("jump {j} at {b} exceeds the bracketed mass {}", ma - mb)));
            }
        }
        if level + 1 == LEVELS.len() {
            return Err(Error::EnlargeE(format!("pullback jump in ({a}, {b}]")));
        }
        self.split(a, b, ma, mb, level + 1, out)
    }
}

/// Derivative of hypRes at `x` in the direction tagged `tag`.
fn slope_in<K: ValuedField>(d: usize, fr: &Frames<K>, tag: &ClosedPoint<K::Residue>) -> Result<Q> {
    let dep = profile_from(&fr.x, &fr.own)?.depth(tag);
    let twice = if fr.is_fixed_direction(tag)? { d - 1 } else { d + 1 };
    Ok(crate::arith::field::q_frac(twice as i64 - 2 * dep as i64, 2 * (d as i64 - 1)))
}

/// Directional derivative of hypRes at `x` along `v`.
pub fn slope_at<K: ValuedField>(m: &HomogeneousPair<K>, x: &TypeIIPoint<K>, v: &crate::berktree::Direction<K>) -> Result<Q> {
    let d = nonlinear(m)?;
    let v = v.rebase(x)?;
    slope_in(d, &Frames::new(m, x)?, v.tag())
}

/// Slopes in every direction with positive depth; all other directions
/// have slope at least `1/2`.
pub fn depth_slopes<K: ValuedField>(m: &HomogeneousPair<K>, x: &TypeIIPoint<K>) -> Result<Vec<(ClosedPoint<K::Residue>, Q)>> {
    let d = nonlinear(m)?;
    let fr = Frames::new(m, x)?;
    slopes_of(d, &fr)
}

fn slopes_of<K: ValuedField>(d: usize, fr: &Frames<K>) -> Result<Vec<(ClosedPoint<K::Residue>, Q)>> {
    let profile = profile_from(&fr.x, &fr.own)?;
    profile.depths.iter().map(|(u, _)| Ok((u.clone(), slope_in(d, fr, u)?))).collect()
}

/// The geodesic ray from `base` toward a classical point.
#[derive(Clone, Debug)]
pub(crate) struct Ray<K: ValuedField> {
    pub(crate) base: TypeIIPoint<K>,
    pub(crate) end: ProjPoint<K>,
}

impl<K: ValuedField> Ray<K> {
    pub(crate) fn new(base: &TypeIIPoint<K>, tag: &ClosedPoint<K::Residue>) -> Result<Self> {
        let end = match tag {
            ClosedPoint::Rational(ResiduePoint::Infinity) => ProjPoint::Infinity,
            ClosedPoint::Rational(ResiduePoint::Finite(r)) => ProjPoint::Finite(base.center().add(&base.scale().mul(&K::lift(&base.config(), r)))),
            ClosedPoint::Orbit(f) => return Err(Error::IrrationalDirection(f.to_string_var("X"))),
        };
        Ok(Ray { base: base.clone(), end })
    }

    pub(crate) fn ramify(&self, k: u32) -> Self {
        let end = match &self.end {
            ProjPoint::Finite(a) if k > 1 => ProjPoint::Finite(a.ramify(k)),
            other => other.clone(),
        };
        Ray { base: ramified_point(&self.base, k), end }
    }

    pub(crate) fn point(&self, s: &Q) -> Result<TypeIIPoint<K>> {
        match &self.end {
            ProjPoint::Infinity => TypeIIPoint::new(self.base.center().clone(), self.base.t() + s),
            ProjPoint::Finite(a) => TypeIIPoint::new(a.clone(), self.base.t() - s),
        }
    }
}

/// Which slope change ends a ray search.
#[derive(Clone, Copy)]
enum Stop {
    /// Descent: stop where the forward slope becomes nonnegative.
    Bottom,
    /// Flat extension: stop where the forward slope becomes positive.
    FlatEnd,
}

/// Forward and backward slopes at distance `s` along `ray`.
fn ray_slopes<K: ValuedField>(d: usize, m: &HomogeneousPair<K>, ray: &Ray<K>, s: &Q) -> Result<(Q, Q)> {
    let p = ray.point(s)?;
    let fr = Frames::new(m, &p)?;
    let forward = slope_in(d, &fr, direction_to_classical(&p, &ray.end).tag())?;
    let backward = slope_in(d, &fr, direction_of(&p, &ray.base)?.tag())?;
    Ok((forward, backward))
}

/// First breakpoint along `ray` of the requested kind, with the extra
/// ramification needed to represent it.
fn ray_breakpoint<K: ValuedField>(d: usize, m: &HomogeneousPair<K>, ray: &Ray<K>, stop: Stop, budget: u32) -> Result<(Q, u32)> {
    let zero = q_int(0);
    ray_search(m, ray, budget, |mk, rk, s| {
        let (forward, backward) = ray_slopes(d, mk, rk, s)?;
        Ok(match stop {
            Stop::Bottom => (forward >= zero, backward > zero),
            Stop::FlatEnd => (forward > zero, backward == zero),
        })
    })
}

/// First lattice point along `ray` where `probe` reports a hit, searched by
/// doubling then bisection on the lattice `(1/(e k)) Z` for `k = 1..=budget`.
/// `probe(m, ray, s)` returns `(hit, certified)`; the hit is accepted only
/// when certified, meaning the change happens exactly there, and otherwise
/// the lattice is refined. Returns the distance and the ramification needed
/// to represent it.
pub(crate) fn ray_search<K, F>(m: &HomogeneousPair<K>, ray: &Ray<K>, budget: u32, probe: F) -> Result<(Q, u32)>
where
    K: ValuedField,
    F: Fn(&HomogeneousPair<K>, &Ray<K>, &Q) -> Result<(bool, bool)>,
{
    let e = K::ramification(m.config());
    for k in 1..=budget {
        let (mk, rk) = (ramified(m, k), ray.ramify(k));
        let step = Q::new(1.into(), (e * k).into());
        let at = |i: u64| probe(&mk, &rk, &(&step * Q::from_integer(i.into())));
        let mut hi = 1u64;
        let mut doublings = 0;
        let mut found = at(hi)?;
        while !found.0 {
            doublings += 1;
            if doublings > RAY_DOUBLINGS {
                return Err(Error::IterationCap(format!("no breakpoint along the ray from {}", ray.base)));
            }
            hi *= 2;
            found = at(hi)?;
        }
        let mut lo = hi / 2;
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            let f = at(mid)?;
            if f.0 {
                hi = mid;
                found = f;
            } else {
                lo = mid;
            }
        }
        if found.1 {
            let s = step * Q::from_integer(hi.into());
            let need = needed_ramification(&s, e)?;
            return Ok((s, need));
        }
    }
    Err(Error::EnlargeE(format!("breakpoint along the ray from {} is off every searched lattice", ray.base)))
}

/// The minimum locus of hypRes: a single point, or for odd degree possibly
/// a segment of minimizers.
#[derive(Clone, Debug, PartialEq)]
pub enum Locus<K: ValuedField> {
    Point(TypeIIPoint<K>),
    Segment(Segment<K>),
}

impl<K: ValuedField> Locus<K> {
    pub fn contains(&self, p: &TypeIIPoint<K>) -> bool {
        match self {
            Locus::Point(x) => x == p,
            Locus::Segment(s) => s.contains(p),
        }
    }

    pub fn as_point(&self) -> Option<&TypeIIPoint<K>> {
        match self {
            Locus::Point(x) => Some(x),
            Locus::Segment(_) => None,
        }
    }

    /// A point of the locus.
    pub fn representative(&self) -> &TypeIIPoint<K> {
        match self {
            Locus::Point(x) => x,
            Locus::Segment(s) => &s.start,
        }
    }
}

impl<K: ValuedField> fmt::Display for Locus<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Locus::Point(x) => write!(f, "{x}"),
            Locus::Segment(s) => write!(f, "[{}, {}]", s.start, s.end),
        }
    }
}

/// Output of [`min_locus`]. Points live in the input field ramified by
/// `ramification`.
#[derive(Clone, Debug)]
pub struct MinLocus<K: ValuedField> {
    pub locus: Locus<K>,
    pub ramification: u32,
    pub steps: usize,
}

impl<K: ValuedField> MinLocus<K> {
    /// Whether the locus contains `p`, given in the input field.
    pub fn contains(&self, p: &TypeIIPoint<K>) -> bool {
        self.locus.contains(&ramified_point(p, self.ramification))
    }

    /// Whether the locus is exactly the single point `p` of the input field.
    pub fn is_point(&self, p: &TypeIIPoint<K>) -> bool {
        self.locus.as_point() == Some(&ramified_point(p, self.ramification))
    }
}

/// Descent state: the map in the current working field and a point of it.
struct Descent<K: ValuedField> {
    d: usize,
    m: HomogeneousPair<K>,
    r: u32,
}

impl<K: ValuedField> Descent<K> {
    fn advance(&mut self, x: &TypeIIPoint<K>, tag: &ClosedPoint<K::Residue>, stop: Stop) -> Result<TypeIIPoint<K>> {
        let ray = Ray::new(x, tag)?;
        let budget = locus_ramification_budget(self.d) / self.r;
        let (s, k) = ray_breakpoint(self.d, &self.m, &ray, stop, budget)?;
        if k > 1 {
            self.m = self.m.ramify(k);
            self.r *= k;
        }
        ray.ramify(k).point(&s)
    }

    fn zero_slopes(&self, x: &TypeIIPoint<K>, except: Option<&TypeIIPoint<K>>) -> Result<Vec<ClosedPoint<K::Residue>>> {
        let fr = Frames::new(&self.m, x)?;
        let skip = except.map(|o| direction_of(x, o)).transpose()?;
        Ok(slopes_of(self.d, &fr)?.into_iter().filter(|(u, s)| *s == q_int(0) && skip.as_ref().map_or(true, |v| v.tag() != u)).map(|(u, _)| u).collect())
    }

    /// Farthest point reached by following zero-slope directions from `x`,
    /// never turning back toward `from`.
    fn extend(&mut self, x: TypeIIPoint<K>, tag: ClosedPoint<K::Residue>) -> Result<TypeIIPoint<K>> {
        let (mut from, mut tag) = (x, tag);
        for _ in 0..DESCENT_CAP {
            let next = self.advance(&from, &tag, Stop::FlatEnd)?;
            let from_r = ramified_point(&from, K::ramification(&next.config()) / K::ramification(&from.config()));
            match self.zero_slopes(&next, Some(&from_r))?.into_iter().next() {
                None => return Ok(next),
                Some(u) => {
                    from = next;
                    tag = u;
                }
            }
        }
        Err(Error::IterationCap("flat extension of the minimum locus".into()))
    }
}

/// Exact minimization of hypRes by descent along negative slopes.
pub fn min_locus<K: ValuedField>(m: &HomogeneousPair<K>) -> Result<MinLocus<K>> {
    let d = nonlinear(m)?;
    let mut st = Descent { d, m: m.clone(), r: 1 };
    let mut x = TypeIIPoint::gauss(m.config());
    for steps in 0..DESCENT_CAP {
        let fr = Frames::new(&st.m, &x)?;
        let slopes = slopes_of(d, &fr)?;
        let down = slopes.iter().filter(|(_, s)| *s < q_int(0)).min_by(|a, b| a.1.cmp(&b.1));
        if let Some((tag, _)) = down {
            x = st.advance(&x, tag, Stop::Bottom)?;
            continue;
        }
        let flat: Vec<_> = slopes.into_iter().filter(|(_, s)| *s == q_int(0)).map(|(u, _)| u).collect();
        let locus = match flat.len() {
            0 => Locus::Point(x),
            1 | 2 => {
                let mut ends = Vec::new();
                for u in flat {
                    ends.push(st.extend(x.clone(), u)?);
                }
                let target = K::ramification(m.config()) * st.r;
                let lift = |p: &TypeIIPoint<K>| ramified_point(p, target / K::ramification(&p.config()));
                match ends.as_slice() {
                    [a] => Locus::Segment(Segment::new(lift(&x), lift(a))),
                    [a, b] => Locus::Segment(Segment::new(lift(a), lift(b))),
                    _ => unreachable!(),
                }
            }
            n => return Err(Error::Inconsistent(format!("{n} flat directions at {x}; the minimum locus branches"))),
        };
        return Ok(MinLocus { locus, ramification: st.r, steps });
    }
    Err(Error::IterationCap(format!("slope descent did not terminate within {DESCENT_CAP} steps")))
}

/// One sample of the resultant functions along a segment.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProfileRow {
    /// Radius exponent of the sampled point.
    pub t: String,
    pub ord_res: String,
    pub hyp_res: String,
}

/// ordRes and hypRes at `samples` equally spaced points of `seg`.
pub fn profile_along<K: ValuedField>(m: &HomogeneousPair<K>, seg: &Segment<K>, samples: usize, strategy: Strategy) -> Result<Vec<ProfileRow>> {
    nonlinear(m)?;
    if samples == 0 {
        return Ok(Vec::new());
    }
    let len = seg.length();
    let e = K::ramification(m.config());
    let dists: Vec<Q> = (0..samples).map(|i| if samples == 1 { q_int(0) } else { &len * Q::new((i as i64).into(), (samples as i64 - 1).into()) }).collect();
    par::try_map(strategy, &dists, |s| {
        let k = needed_ramification(s, e)?;
        let mk = ramified(m, k);
        let p = Segment::new(ramified_point(&seg.start, k), ramified_point(&seg.end, k)).point_along(s)?;
        Ok(ProfileRow {
            t: crate::arith::field::fmt_q(p.t()),
            ord_res: crate::arith::field::fmt_q(&ord_res_at(&mk, &p)?),
            hyp_res: crate::arith::field::fmt_q(&hypres_eval(&mk, &p)?),
        })
    })
}
