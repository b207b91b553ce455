use std::time::Instant;

use serde::Serialize;

use crate::arith::field::fmt_q;
use crate::berktree::TypeIIPoint;
use crate::error::{Error, Result};
use crate::hypres::{min_locus, ramified, Locus};
use crate::par::{self, Strategy};
use crate::ratmap::{HomogeneousPair, DEFAULT_DEGREE_CAP};
use crate::redtheory::{depth_profile, semistability_check, DepthEntry, Semistability};
use crate::valfield::{FieldDescriptor, ValuedField};

use super::sequences::sequences_from;
use super::{analyze_reduction, lcm, retraction_from, Classification, DepthSequences, Lifted, ORBIT_CAP};

pub const DEFAULT_ITERATIONS: usize = 4;

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    pub iterations: usize,
    pub degree_cap: usize,
    pub orbit_cap: usize,
    pub strategy: Strategy,
    /// Record wall-clock time per iterate; off by default so that reports
    /// are reproducible byte for byte.
    pub timing: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { iterations: DEFAULT_ITERATIONS, degree_cap: DEFAULT_DEGREE_CAP, orbit_cap: ORBIT_CAP, strategy: Strategy::default(), timing: false }
    }
}

/// A point as exact text: the center in the field ramified by `e`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct JPoint {
    pub center: String,
    pub t: String,
    pub e: u32,
}

impl JPoint {
    pub fn of<K: ValuedField>(p: &TypeIIPoint<K>) -> Self {
        JPoint { center: p.center().to_string(), t: fmt_q(p.t()), e: K::ramification(&p.config()) }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum LocusJson {
    Point(JPoint),
    Segment { start: JPoint, end: JPoint },
}

impl LocusJson {
    pub fn of<K: ValuedField>(l: &Locus<K>) -> Self {
        match l {
            Locus::Point(p) => LocusJson::Point(JPoint::of(p)),
            Locus::Segment(s) => LocusJson::Segment { start: JPoint::of(&s.start), end: JPoint::of(&s.end) },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PerIterate {
    pub j: usize,
    pub locus: LocusJson,
    pub expected: Option<JPoint>,
    pub semistability: Semistability,
    pub depths: Vec<DepthEntry>,
    pub millis: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TheoremReport {
    pub field: FieldDescriptor,
    pub map: String,
    pub classification: Classification,
    pub period: Option<usize>,
    pub xi_phi: JPoint,
    pub xi_0: Option<JPoint>,
    pub xi_1: Option<JPoint>,
    pub per_j: Vec<PerIterate>,
    pub sequences: Option<DepthSequences>,
    pub diagnostics: Vec<String>,
    /// Every disagreement with the theorem, with witness data.
    pub failures: Vec<String>,
}

impl TheoremReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

struct Measured<K: ValuedField> {
    locus: Locus<K>,
    ramification: u32,
    semistability: Semistability,
    depths: Vec<DepthEntry>,
    millis: Option<u64>,
}

fn measure<K: ValuedField>(m: &HomogeneousPair<K>, j: usize, opts: &VerifyOptions) -> Result<Measured<K>> {
    let start = Instant::now();
    let it = m.iterate(j, opts.degree_cap)?;
    let found = min_locus(&it)?;
    let itr = ramified(&it, found.ramification);
    let at = found.locus.representative();
    let semistability = semistability_check(&itr, at)?;
    let depths = depth_profile(&itr, at)?.to_entries();
    let millis = opts.timing.then(|| start.elapsed().as_millis() as u64);
    Ok(Measured { locus: found.locus, ramification: found.ramification, semistability, depths, millis })
}

/// Checks the predicted minimum loci of `φ^j` for `j = 1..=iterations`.
/// Iterates are processed in parallel; the report is assembled in order.
pub fn verify_theorem<K: ValuedField>(m: &HomogeneousPair<K>, opts: &VerifyOptions) -> Result<TheoremReport> {
    let top = 2usize.checked_pow(opts.iterations as u32).unwrap_or(usize::MAX);
    if top > opts.degree_cap {
        return Err(Error::DegreeCap { degree: top, cap: opts.degree_cap });
    }
    let an = analyze_reduction(m, opts.orbit_cap)?;
    let mut diagnostics: Vec<String> = an.diagnostic.iter().cloned().collect();
    let xi_0 = if an.classification.is_bijective() {
        match retraction_from(&an) {
            Ok(x) => Some(x),
            Err(e) => {
                diagnostics.push(format!("ramification retraction: {e}"));
                None
            }
        }
    } else {
        None
    };
    let mut failures = Vec::new();
    let expected = |j: usize| -> Option<&Lifted<K>> {
        match an.classification {
            Classification::BijectiveCyclic(p) if j >= p => xi_0.as_ref(),
            Classification::Unknown => None,
            _ => Some(&an.xi_phi),
        }
    };
    let js: Vec<usize> = (1..=opts.iterations).collect();
    let measured = par::try_map(opts.strategy, &js, |&j| measure(m, j, opts))?;
    let mut per_j = Vec::new();
    for (j, got) in js.into_iter().zip(measured) {
        let want = expected(j);
        match (want, &got.locus) {
            (None, _) => failures.push(format!("j = {j}: no prediction for classification {}", an.classification)),
            (Some(w), Locus::Point(p)) => {
                let found = Lifted { point: p.clone(), ramification: got.ramification };
                if !found.same_as(w) {
                    let r = lcm(found.ramification, w.ramification);
                    failures.push(format!("j = {j}: minimum at {} but predicted {} (both over e x {r})", found.to(r), w.to(r)));
                }
            }
            (Some(w), l) => failures.push(format!("j = {j}: minimum locus {l} is not the predicted point {}", w.point)),
        }
        if got.semistability == Semistability::Unstable {
            failures.push(format!("j = {j}: unstable at the minimum {}", got.locus));
        }
        per_j.push(PerIterate {
            j,
            locus: LocusJson::of(&got.locus),
            expected: want.map(|w| JPoint::of(&w.point)),
            semistability: got.semistability,
            depths: got.depths,
            millis: got.millis,
        });
    }
    let sequences = match (&an.classification, &xi_0) {
        (Classification::BijectiveCyclic(_), Some(x)) => Some(sequences_from(&an, x, opts.iterations, opts.strategy)?),
        _ => None,
    };
    Ok(TheoremReport {
        field: K::descriptor(m.config()),
        map: m.to_string(),
        classification: an.classification,
        period: an.classification.period(),
        xi_phi: JPoint::of(&an.xi_phi.point),
        xi_0: xi_0.as_ref().map(|x| JPoint::of(&x.point)),
        xi_1: xi_0.as_ref().filter(|_| an.classification.period().is_some()).map(|x| JPoint::of(&x.point)),
        per_j,
        sequences,
        diagnostics,
        failures,
    })
}
