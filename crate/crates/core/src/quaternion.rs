//! Exact arithmetic in the Hurwitz order and its projective classes.
//!
//! Elements are stored in *doubled* coordinates: the tuple `(w, x, y, z)`
//! stands for `(w + x·I + y·J + z·IJ) / 2`. An integer tuple is a Hurwitz
//! element exactly when all four coordinates share a parity, so every value
//! here is integral and no rational arithmetic is needed on the hot paths.

use std::fmt;
use std::ops::{Mul, Neg};

use num::bigint::Sign;
use num::integer::Integer;
use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::{Error, Result};

/// An element of the Hurwitz order in doubled coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HurwitzElement {
    coords: [BigInt; 4],
}

impl HurwitzElement {
    /// Builds `(w + x·I + y·J + z·IJ) / 2`, rejecting tuples of mixed parity.
    pub fn from_doubled<T: Into<BigInt>>(w: T, x: T, y: T, z: T) -> Result<Self> {
        Self::from_array([w.into(), x.into(), y.into(), z.into()])
    }

    pub fn from_array(coords: [BigInt; 4]) -> Result<Self> {
        let parity = coords[0].is_odd();
        if coords.iter().any(|c| c.is_odd() != parity) {
            return Err(Error::ParityMismatch(join(&coords)));
        }
        Ok(Self { coords })
    }

    /// Builds `a + b·I + c·J + d·IJ` from ordinary integer coordinates.
    pub fn from_integral<T: Into<BigInt>>(a: T, b: T, c: T, d: T) -> Self {
        let two = BigInt::from(2);
        Self { coords: [a.into() * &two, b.into() * &two, c.into() * &two, d.into() * &two] }
    }

    pub fn from_scalar<T: Into<BigInt>>(n: T) -> Self {
        Self::from_integral(n.into(), BigInt::zero(), BigInt::zero(), BigInt::zero())
    }

    pub fn one() -> Self {
        Self::from_scalar(1)
    }

    pub fn i() -> Self {
        Self::from_integral(0, 1, 0, 0)
    }

    pub fn j() -> Self {
        Self::from_integral(0, 0, 1, 0)
    }

    pub fn ij() -> Self {
        Self::from_integral(0, 0, 0, 1)
    }

    /// `(1 + I + J + IJ) / 2`, the half-integral basis element.
    pub fn omega() -> Self {
        Self { coords: [BigInt::one(), BigInt::one(), BigInt::one(), BigInt::one()] }
    }

    pub fn coords(&self) -> &[BigInt; 4] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// True when the element is a rational scalar (no I, J, IJ part).
    pub fn is_scalar(&self) -> bool {
        self.coords[1..].iter().all(Zero::is_zero)
    }

    pub fn conjugate(&self) -> Self {
        let [w, x, y, z] = &self.coords;
        Self { coords: [w.clone(), -x, -y, -z] }
    }

    /// `(w² + x² + y² + z²) / 4`.
    pub fn reduced_norm(&self) -> BigInt {
        let sum: BigInt = self.coords.iter().map(|c| c * c).sum();
        sum >> 2
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self { coords: self.coords.clone().map(|c| c * k) }
    }

    /// Splits a nonzero element as `scale · primitive` where `primitive` is
    /// the sign-canonical primitive representative of its projective class.
    pub fn primitive_decomposition(&self) -> Result<(BigRational, HurwitzElement)> {
        if self.is_zero() {
            return Err(Error::ZeroElement);
        }
        let g = self.coords.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let mut reduced = self.coords.clone().map(|c| c / &g);
        // Scale in doubled coordinates; the element itself is scale/2.
        let mut numer = g;
        let mut denom = BigInt::one();
        let parity = reduced[0].is_odd();
        if reduced.iter().any(|c| c.is_odd() != parity) {
            reduced = reduced.map(|c| c * 2);
            denom = BigInt::from(2);
        }
        if leading_sign(&reduced) == Sign::Minus {
            reduced = reduced.map(|c| -c);
            numer = -numer;
        }
        Ok((BigRational::new(numer, denom), HurwitzElement { coords: reduced }))
    }
}

fn leading_sign(coords: &[BigInt; 4]) -> Sign {
    coords.iter().map(BigInt::sign).find(|s| *s != Sign::NoSign).unwrap_or(Sign::NoSign)
}

fn join(coords: &[BigInt; 4]) -> String {
    coords.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

impl Mul for &HurwitzElement {
    type Output = HurwitzElement;

    fn mul(self, rhs: &HurwitzElement) -> HurwitzElement {
        let [a1, b1, c1, d1] = &self.coords;
        let [a2, b2, c2, d2] = &rhs.coords;
        let raw = [
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        ];
        // (A/2)(B/2) = (A*B)/4, i.e. doubled coordinates (A*B)/2; the Hurwitz
        // order is closed under multiplication so the halving is exact.
        debug_assert!(raw.iter().all(BigInt::is_even));
        HurwitzElement { coords: raw.map(|c| c >> 1) }
    }
}

impl Mul for HurwitzElement {
    type Output = HurwitzElement;

    fn mul(self, rhs: HurwitzElement) -> HurwitzElement {
        &self * &rhs
    }
}

impl Neg for &HurwitzElement {
    type Output = HurwitzElement;

    fn neg(self) -> HurwitzElement {
        HurwitzElement { coords: self.coords.clone().map(|c| -c) }
    }
}

impl fmt::Display for HurwitzElement {
    /// Renders in the doubled-coordinate form `(w, x, y, z)/2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})/2", join(&self.coords))
    }
}

/// An element of H*/Q*, identified by its primitive sign-canonical
/// representative.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjectiveClass {
    rep: HurwitzElement,
}

impl ProjectiveClass {
    pub fn identity() -> Self {
        Self { rep: HurwitzElement::from_doubled(2, 0, 0, 0).expect("valid") }
    }

    pub fn rep(&self) -> &HurwitzElement {
        &self.rep
    }

    pub fn into_rep(self) -> HurwitzElement {
        self.rep
    }

    pub fn is_identity(&self) -> bool {
        self.rep.is_scalar()
    }

    pub fn reduced_norm(&self) -> BigInt {
        self.rep.reduced_norm()
    }

    pub fn inverse(&self) -> Self {
        // Conjugation preserves primitivity; only the sign may need fixing.
        canonical_class(&self.rep.conjugate()).expect("nonzero")
    }

    pub fn mul(&self, other: &ProjectiveClass) -> ProjectiveClass {
        canonical_class(&(&self.rep * &other.rep)).expect("H is a division algebra")
    }
}

impl fmt::Display for ProjectiveClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.rep)
    }
}

/// Returns the projective class of a nonzero element.
pub fn canonical_class(a: &HurwitzElement) -> Result<ProjectiveClass> {
    let (_, rep) = a.primitive_decomposition()?;
    Ok(ProjectiveClass { rep })
}

/// A finite set of odd primes, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct SPrimeSet {
    primes: Vec<u64>,
}

impl SPrimeSet {
    pub fn new(primes: impl IntoIterator<Item = u64>) -> Result<Self> {
        let mut primes: Vec<u64> = primes.into_iter().collect();
        for &p in &primes {
            if p == 2 {
                return Err(Error::EvenPrime(p));
            }
            if !is_prime(p) {
                return Err(Error::NotPrime(p));
            }
        }
        primes.sort_unstable();
        if let Some(w) = primes.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicatePrime(w[0]));
        }
        Ok(Self { primes })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    pub fn contains(&self, p: u64) -> bool {
        self.primes.binary_search(&p).is_ok()
    }

    /// Product of the primes (1 for the empty set).
    pub fn m(&self) -> BigInt {
        self.primes.iter().map(|&p| BigInt::from(p)).product()
    }

    /// True when every prime factor of `n` lies in the set. `n` must be nonzero.
    pub fn is_smooth(&self, n: &BigInt) -> bool {
        let mut n = n.abs();
        if n.is_zero() {
            return false;
        }
        for &p in &self.primes {
            let p = BigInt::from(p);
            while (&n % &p).is_zero() {
                n /= &p;
            }
        }
        n.is_one()
    }
}

impl fmt::Display for SPrimeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.primes.iter().map(u64::to_string).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Whether the class lies in the projective S-unit group, i.e. whether its
/// primitive representative has S-smooth reduced norm.
pub fn class_in_projective_sunits(c: &ProjectiveClass, s: &SPrimeSet) -> bool {
    s.is_smooth(&c.reduced_norm())
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn h(w: i64, x: i64, y: i64, z: i64) -> HurwitzElement {
        HurwitzElement::from_doubled(w, x, y, z).unwrap()
    }

    #[test]
    fn multiplication_table() {
        assert_eq!(&HurwitzElement::i() * &HurwitzElement::j(), h(0, 0, 0, 2));
        assert_eq!(&HurwitzElement::j() * &HurwitzElement::i(), h(0, 0, 0, -2));
        assert_eq!(&HurwitzElement::i() * &HurwitzElement::i(), h(-2, 0, 0, 0));
        let w = HurwitzElement::omega();
        assert_eq!(&(&w * &w) * &w, h(-2, 0, 0, 0));
    }

    #[test]
    fn conjugates_and_norms() {
        assert_eq!(HurwitzElement::from_integral(1, 1, 0, 0).conjugate(), HurwitzElement::from_integral(1, -1, 0, 0));
        assert_eq!(HurwitzElement::omega().conjugate(), h(1, -1, -1, -1));
        let a = h(-1, 1, -1, -3);
        assert_eq!(&a * &a.conjugate(), HurwitzElement::from_scalar(3));
        assert_eq!(HurwitzElement::from_integral(1, 1, 0, 0).reduced_norm(), 2.into());
        assert_eq!(HurwitzElement::omega().reduced_norm(), 1.into());
        assert_eq!(HurwitzElement::from_integral(-1, -1, -1, -5).reduced_norm(), 28.into());
    }

    #[test]
    fn parity_is_enforced() {
        assert!(matches!(HurwitzElement::from_doubled(1, 0, 0, 0), Err(Error::ParityMismatch(_))));
    }

    #[test]
    fn canonical_classes() {
        let a = HurwitzElement::from_integral(-1, 1, -1, -3);
        let c = canonical_class(&a).unwrap();
        assert_eq!(c.rep(), &h(1, -1, 1, 3));
        assert_eq!(c.reduced_norm(), 3.into());

        let three = HurwitzElement::from_scalar(3);
        assert_eq!(canonical_class(&three).unwrap(), ProjectiveClass::identity());

        let b = HurwitzElement::from_integral(-9, -7, -1, 7);
        assert_eq!(canonical_class(&b).unwrap().reduced_norm(), 45.into());

        // Mixed parity after dividing out the gcd: doubled coordinates stay even.
        let c = canonical_class(&HurwitzElement::from_integral(0, 0, -1, -2)).unwrap();
        assert_eq!(c.rep(), &h(0, 0, 2, 4));
        assert_eq!(c.reduced_norm(), 5.into());

        assert_eq!(canonical_class(&HurwitzElement::from_scalar(0)), Err(Error::ZeroElement));
    }

    #[test]
    fn sunit_membership() {
        let s = SPrimeSet::new([3, 5]).unwrap();
        let a = canonical_class(&h(-1, 1, -1, -3)).unwrap();
        let b = canonical_class(&h(-9, -7, -1, 7)).unwrap();
        let c = canonical_class(&HurwitzElement::from_integral(1, 1, 0, 0)).unwrap();
        assert!(class_in_projective_sunits(&a, &s));
        assert!(class_in_projective_sunits(&b, &s));
        assert!(!class_in_projective_sunits(&c, &s));
    }

    #[test]
    fn prime_sets() {
        assert_eq!(SPrimeSet::new([2, 3]), Err(Error::EvenPrime(2)));
        assert_eq!(SPrimeSet::new([9]), Err(Error::NotPrime(9)));
        assert_eq!(SPrimeSet::new([3, 3]), Err(Error::DuplicatePrime(3)));
        let s = SPrimeSet::new([7, 3, 5]).unwrap();
        assert_eq!(s.primes(), &[3, 5, 7]);
        assert_eq!(s.m(), 105.into());
        assert_eq!(SPrimeSet::empty().m(), 1.into());
    }

    fn element() -> impl Strategy<Value = HurwitzElement> {
        (any::<bool>(), -25i64..=25, -25i64..=25, -25i64..=25, -25i64..=25).prop_map(|(odd, w, x, y, z)| {
            let f = |v: i64| 2 * v + odd as i64;
            h(f(w), f(x), f(y), f(z))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(10_000))]
        #[test]
        fn norm_is_multiplicative(a in element(), b in element()) {
            let ab = &a * &b;
            prop_assert_eq!(ab.reduced_norm(), a.reduced_norm() * b.reduced_norm());
            // Parity closure: the product is a valid Hurwitz element.
            prop_assert!(HurwitzElement::from_array(ab.coords().clone()).is_ok());
        }
    }

    proptest! {
        #[test]
        fn conjugation_is_an_involution(a in element()) {
            prop_assert_eq!(a.conjugate().conjugate(), a.clone());
            prop_assert_eq!(a.conjugate().reduced_norm(), a.reduced_norm());
            prop_assert_eq!(&a * &a.conjugate(), HurwitzElement::from_scalar(a.reduced_norm()));
        }

        #[test]
        fn classes_ignore_rational_scalars(a in element(), n in prop::sample::select(vec![2i64, 3, 6, -1, -5])) {
            prop_assume!(!a.is_zero());
            let c = canonical_class(&a).unwrap();
            prop_assert_eq!(canonical_class(&a.scale(&n.into())).unwrap(), c.clone());
            prop_assert_eq!(canonical_class(c.rep()).unwrap(), c);
        }

        #[test]
        fn decomposition_reassembles(a in element()) {
            prop_assume!(!a.is_zero());
            let (scale, prim) = a.primitive_decomposition().unwrap();
            // a = scale · prim, compared after clearing the denominator.
            let lhs = a.scale(scale.denom());
            let rhs = prim.scale(scale.numer());
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn multiplication_is_associative() {
        let a = h(1, -1, 3, 5);
        let b = h(2, 0, -4, 6);
        let c = HurwitzElement::omega();
        assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }
}
