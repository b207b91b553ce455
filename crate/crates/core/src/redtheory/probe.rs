use crate::arith::Q;
use crate::berktree::{direction_of, image_point, Direction, TypeIIPoint};
use crate::error::{Error, Result};
use crate::ratmap::HomogeneousPair;
use crate::valfield::ValuedField;

/// Maximum number of step halvings for [`tangent_image_probe`].
pub const PROBE_HALVINGS: u32 = 8;

/// `φ_{*,x} v` by probing: step into `v` by `h`, push the probe forward and
/// read off its direction at `φ(x)`; `h` is halved (enlarging the
/// ramification index to keep the probe representable) until two
/// consecutive probes agree.
pub fn tangent_image_probe<K: ValuedField>(m: &HomogeneousPair<K>, x: &TypeIIPoint<K>, v: &Direction<K>) -> Result<Direction<K>> {
    let y = image_point(m, x)?;
    let y = if y == *x { x.clone() } else { y };
    let v = v.rebase(x)?;
    let mut prev = None;
    for k in 0..=PROBE_HALVINGS {
        let r = 1u32 << k;
        let (mr, xr, yr) = if r == 1 { (m.clone(), x.clone(), y.clone()) } else { (m.ramify(r), x.ramify(r), y.ramify(r)) };
        let h = Q::new(1.into(), r.into());
        let probe = Direction::new(xr, v.tag().clone()).step(&h)?;
        let image = image_point(&mr, &probe)?;
        let tag = match direction_of(&yr, &image) {
            Ok(d) => d.tag().clone(),
            Err(Error::SamePoint) => {
                prev = None;
                continue;
            }
            Err(e) => return Err(e),
        };
        if prev.as_ref() == Some(&tag) {
            return Ok(Direction::new(y, tag));
        }
        prev = Some(tag);
    }
    Err(Error::IterationCap(format!("tangent probe at {x} toward {v} did not stabilize after {PROBE_HALVINGS} halvings")))
}
