use serde::Serialize;

use crate::arith::field::{fmt_q, q_frac, q_int};
use crate::arith::Q;
use crate::berktree::direction_of;
use crate::error::{Error, Result};
use crate::par::{self, Strategy};
use crate::ratmap::DEFAULT_DEGREE_CAP;
use crate::redtheory::{depth_profile, factor_form, fiber_form, Frames};
use crate::valfield::{ClosedPoint, ValuedField};

use super::{analyze_reduction, retraction_from, Classification, ReductionAnalysis, ORBIT_CAP};

/// Depths of `φ^j` at `ξ1` binned into the distinguished direction `w1`
/// (`a`), the direction back toward `ξ_φ` (`c`) and all others (`b`,
/// weighted by orbit size). Index `j - 1` holds iterate `j`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DepthSequences {
    pub period: usize,
    pub degrees: Vec<u64>,
    pub a: Vec<i64>,
    pub b: Vec<i64>,
    pub c: Vec<i64>,
    pub point_mass: Vec<i64>,
    /// The recursions with the fixed-point mass `2^(j/p)` of `φ^(j-1)` at
    /// `φ(ξ1)` subtracted whenever `p | j`, and `A_0 = B_0 = 0`.
    pub a_recursion: Vec<i64>,
    pub b_recursion: Vec<i64>,
    pub c_recursion: Vec<i64>,
    /// The recursions in the form that only accounts for that mass at
    /// `j = p`, through `A_0 = 1`; logged, not asserted.
    pub a_stated: Vec<i64>,
    pub b_stated: Vec<i64>,
    /// Measured `2A_j + B_j - 2^j`; logged, not asserted.
    pub two_a_plus_b_delta: Vec<i64>,
    /// Measured `A_j + B_j` minus the closed geometric sum; logged, not asserted.
    pub closed_form_delta: Vec<String>,
    /// Failed bounds and mass checks, with witnesses.
    pub violations: Vec<String>,
    /// Iterates where the corrected recursions disagree with the measurement.
    pub recursion_violations: Vec<String>,
}

impl DepthSequences {
    pub fn bounds_hold(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn recursions_hold(&self) -> bool {
        self.recursion_violations.is_empty()
    }

    /// Iterates `j` where the stated recursions disagree with the measurement.
    pub fn stated_mismatches(&self) -> Vec<usize> {
        (0..self.a.len()).filter(|&i| self.a[i] != self.a_stated[i] || self.b[i] != self.b_stated[i]).map(|i| i + 1).collect()
    }
}

/// `(2^j / 2) (1 - 2^(-(floor(j/p) + 1) p)) / (1 - 2^(-p))`.
pub(crate) fn closed_form(j: usize, p: usize) -> Q {
    let two = |k: i64| if k >= 0 { q_int(1 << k) } else { q_frac(1, 1 << -k) };
    let n = ((j / p + 1) * p) as i64;
    two(j as i64 - 1) * (q_int(1) - two(-n)) / (q_int(1) - two(-(p as i64)))
}

struct Directions<R: crate::valfield::ResidueField> {
    toward_min: ClosedPoint<R>,
    w1: ClosedPoint<R>,
}

fn directions<K: ValuedField>(an: &ReductionAnalysis<K>, xi1: &super::Lifted<K>) -> Result<Directions<K::Residue>> {
    let m = crate::hypres::ramified(&an.map, xi1.ramification / an.xi_phi.ramification);
    let xi_phi = an.xi_phi.to(xi1.ramification);
    let x = &xi1.point;
    let fr = Frames::new(&m, x)?;
    let toward_min = direction_of(x, &xi_phi)?.tag().clone();
    let target = direction_of(&fr.y, &xi_phi)?.tag().clone();
    let fiber = factor_form(&fiber_form(&fr.tangent.divided, &target))?;
    let others: Vec<_> = fiber.into_iter().filter(|(u, _)| *u != toward_min).collect();
    match others.as_slice() {
        [(w1, 1)] => Ok(Directions { toward_min, w1: w1.clone() }),
        _ => Err(Error::Inconsistent(format!("no unique preimage of {target} besides {toward_min} at {x}"))),
    }
}

/// Measures `A_j, B_j, C_j` for `j = 1..=iterations` at `ξ1 = ξ0`.
pub fn abc_sequences<K: ValuedField>(m: &crate::ratmap::HomogeneousPair<K>, iterations: usize) -> Result<DepthSequences> {
    let an = analyze_reduction(m, ORBIT_CAP)?;
    sequences_from(&an, &retraction_from(&an)?, iterations, Strategy::default())
}

pub(crate) fn sequences_from<K: ValuedField>(
    an: &ReductionAnalysis<K>,
    xi1: &super::Lifted<K>,
    iterations: usize,
    strategy: Strategy,
) -> Result<DepthSequences> {
    let Classification::BijectiveCyclic(p) = an.classification else {
        return Err(Error::Precondition(format!("depth sequences need a cyclic reduction, got {}", an.classification)));
    };
    let dirs = directions(an, xi1)?;
    let m = crate::hypres::ramified(&an.map, xi1.ramification / an.xi_phi.ramification);
    let js: Vec<usize> = (1..=iterations).collect();
    let rows = par::try_map(strategy, &js, |&j| {
        let prof = depth_profile(&m.iterate(j, DEFAULT_DEGREE_CAP.max(1 << j))?, &xi1.point)?;
        let a = prof.depth(&dirs.w1) as i64;
        let c = prof.depth(&dirs.toward_min) as i64;
        let b: usize = prof.depths.iter().filter(|(u, _)| *u != dirs.w1 && *u != dirs.toward_min).map(|(u, k)| u.degree() * k).sum();
        Ok::<_, Error>((a, b as i64, c, prof.point_mass as i64))
    })?;
    let mut s = DepthSequences {
        period: p,
        degrees: js.iter().map(|&j| 1u64 << j).collect(),
        a: rows.iter().map(|r| r.0).collect(),
        b: rows.iter().map(|r| r.1).collect(),
        c: rows.iter().map(|r| r.2).collect(),
        point_mass: rows.iter().map(|r| r.3).collect(),
        a_recursion: Vec::new(),
        b_recursion: Vec::new(),
        c_recursion: Vec::new(),
        a_stated: Vec::new(),
        b_stated: Vec::new(),
        two_a_plus_b_delta: Vec::new(),
        closed_form_delta: Vec::new(),
        violations: Vec::new(),
        recursion_violations: Vec::new(),
    };
    let earlier = |s: &DepthSequences, i: i64, at_zero: i64| match i {
        0 => at_zero,
        i if i < 0 => 0,
        i => s.a[i as usize - 1] + s.b[i as usize - 1],
    };
    for &j in &js {
        let (i, deg) = (j - 1, 1i64 << j);
        let back = j as i64 - p as i64;
        let fixed_mass = if j % p == 0 { 1i64 << (j / p) } else { 0 };
        let prev = earlier(&s, back, 0);
        let a = deg / 2 - prev - fixed_mass / 2;
        let b = 2 * prev;
        s.a_recursion.push(a);
        s.b_recursion.push(b);
        s.c_recursion.push(deg - a - b - fixed_mass);
        let stated = earlier(&s, back, 1);
        s.a_stated.push(deg / 2 - stated);
        s.b_stated.push(2 * stated);
        s.two_a_plus_b_delta.push(2 * s.a[i] + s.b[i] - deg);
        s.closed_form_delta.push(fmt_q(&(q_int(s.a[i] + s.b[i]) - closed_form(j, p))));
        let (ma, mb, mc, pm) = (s.a[i], s.b[i], s.c[i], s.point_mass[i]);
        if (ma, mb, mc) != (a, b, deg - a - b - fixed_mass) {
            let c = deg - a - b - fixed_mass;
            s.recursion_violations.push(format!("j = {j}: recursions give A = {a}, B = {b}, C = {c}; measured {ma}, {mb}, {mc}"));
        }
        let mut fail = |what: String| s.violations.push(format!("j = {j}: {what} (A = {ma}, B = {mb}, C = {mc}, point mass {pm})"));
        if ma + mb + mc + pm != deg {
            fail(format!("total mass differs from {deg}"));
        }
        if pm != fixed_mass {
            fail(format!("point mass differs from {fixed_mass}"));
        }
        if j >= p {
            if mc > ma {
                fail("C > A".into());
            }
            if 2 * ma > deg - 2 {
                fail(format!("A > ({deg} - 2)/2"));
            }
            if 2 * mb >= deg - 1 {
                fail(format!("B >= ({deg} - 1)/2"));
            }
        }
    }
    Ok(s)
}
