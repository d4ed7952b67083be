//! Enumeration of Hurwitz elements by reduced norm, and the unit and prime
//! transversals the main builder draws its generators from.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use num::BigInt;

use crate::error::{Error, Result};
use crate::parallel::{map_range, Parallelism};
use crate::quaternion::{canonical_class, is_prime, HurwitzElement, ProjectiveClass};

/// Representatives of projective classes of a fixed reduced norm.
///
/// For norm 1 these are the twelve classes of the unit group modulo sign,
/// identity first. For an odd prime `p` there is one member per right orbit
/// of the unit group on the elements of norm `p`, `p + 1` in total.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transversal {
    pub norm: u64,
    pub members: Vec<ProjectiveClass>,
}

impl Transversal {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn position(&self, c: &ProjectiveClass) -> Option<usize> {
        self.members.iter().position(|m| m == c)
    }
}

/// All `(w, x, y, z)` with `w² + x² + y² + z² = 4n` and equal parities, in
/// ascending lexicographic order.
pub fn elements_of_norm(n: u64) -> Vec<HurwitzElement> {
    elements_of_norm_with(n, Parallelism::default())
}

pub fn elements_of_norm_with(n: u64, mode: Parallelism) -> Vec<HurwitzElement> {
    let target = 4 * n as i64;
    let bound = isqrt(target);
    let width = (2 * bound + 1) as usize;
    let per_w = map_range(width, mode, |i| {
        let w = i as i64 - bound;
        let mut found = Vec::new();
        let rest_w = target - w * w;
        let bx = isqrt(rest_w);
        for x in -bx..=bx {
            let rest_x = rest_w - x * x;
            let by = isqrt(rest_x);
            for y in -by..=by {
                let rest_y = rest_x - y * y;
                let z = isqrt(rest_y);
                if z * z != rest_y {
                    continue;
                }
                let zs: &[i64] = if z == 0 { &[0] } else { &[-z, z] };
                for &z in zs {
                    if let Ok(e) = HurwitzElement::from_doubled(w, x, y, z) {
                        found.push(e);
                    }
                }
            }
        }
        found
    });
    let mut all: Vec<HurwitzElement> = per_w.into_iter().flatten().collect();
    all.sort();
    all
}

fn isqrt(n: i64) -> i64 {
    if n <= 0 {
        return 0;
    }
    let mut r = (n as f64).sqrt() as i64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// The 24 units of the Hurwitz order.
pub fn units() -> &'static [HurwitzElement] {
    static UNITS: OnceLock<Vec<HurwitzElement>> = OnceLock::new();
    UNITS.get_or_init(|| elements_of_norm_with(1, Parallelism::Sequential))
}

/// The twelve projective unit classes, identity at index 0 and the rest in
/// ascending order of their representatives.
pub fn unit_transversal() -> &'static Transversal {
    static UNIT_CLASSES: OnceLock<Transversal> = OnceLock::new();
    UNIT_CLASSES.get_or_init(|| {
        let identity = ProjectiveClass::identity();
        let others: BTreeSet<ProjectiveClass> =
            units().iter().map(|u| canonical_class(u).expect("units are nonzero")).filter(|c| *c != identity).collect();
        let mut members = vec![identity];
        members.extend(others);
        Transversal { norm: 1, members }
    })
}

/// One representative per right orbit `t·O*` of elements of norm `p`.
///
/// Each member is the lexicographically largest element of its orbit, which
/// is automatically sign-canonical; members are listed in ascending order.
pub fn prime_transversal(p: u64) -> Result<Transversal> {
    if p == 2 {
        return Err(Error::EvenPrime(p));
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let keys: BTreeSet<HurwitzElement> = elements_of_norm(p).iter().map(right_orbit_key).collect();
    let members = keys.into_iter().map(|k| canonical_class(&k).expect("nonzero")).collect();
    Ok(Transversal { norm: p, members })
}

/// The largest element of the right unit orbit of `t`.
pub fn right_orbit_key(t: &HurwitzElement) -> HurwitzElement {
    units().iter().map(|u| t * u).max().expect("unit group is nonempty")
}

/// Index of the projective class of `a` in [`unit_transversal`], if `a` is a
/// rational multiple of a unit.
pub fn locate_unit_class(a: &HurwitzElement) -> Option<usize> {
    let c = canonical_class(a).ok()?;
    if c.reduced_norm() != BigInt::from(1) {
        return None;
    }
    unit_transversal().position(&c)
}
