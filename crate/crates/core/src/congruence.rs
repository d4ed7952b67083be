//! Splittings of the quaternion algebra at odd primes and the reduction
//! maps they induce.
//!
//! For an odd prime `p` pick `a, b` with `a² + b² + 1 ≡ 0 (mod p^k)`. Then
//! `I ↦ [[a, b], [b, −a]]` and `J ↦ [[0, 1], [−1, 0]]` extend to a ring map
//! from the Hurwitz order onto 2×2 matrices over `Z/p^k`.

use std::fmt;

use num::integer::Integer;
use num::BigInt;

use crate::analysis::closure_order;
use crate::error::{Error, Result};
use crate::presentation::Presentation;
use crate::quaternion::{is_prime, HurwitzElement, ProjectiveClass};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SplittingData {
    pub p: u64,
    pub k: u32,
    pub modulus: u64,
    pub a: u64,
    pub b: u64,
}

impl SplittingData {
    /// Lifts a solution of `a² + b² + 1 ≡ 0 (mod p)` to precision `p^k`.
    pub fn lifted(p: u64, k: u32, a: u64, b: u64) -> Result<Self> {
        check_odd_prime(p)?;
        let modulus = p.checked_pow(k).ok_or(Error::ModulusTooLarge { p, k })?;
        if k == 0 || !(mul_mod(a, a, p) + mul_mod(b, b, p) + 1).is_multiple_of(p) {
            return Err(Error::Parse(format!("({a}, {b}) does not split at {p}")));
        }
        let (mut a, mut b) = (a % p, b % p);
        let mut m = p;
        for _ in 1..k {
            m *= p;
            let f = (mul_mod(a, a, m) + mul_mod(b, b, m) + 1) % m;
            // One of a, b is a unit mod p: a ≡ b ≡ 0 would give 1 ≡ 0.
            if b % p != 0 {
                let step = mul_mod(f, inv_mod(2 * b % m, m).expect("unit"), m);
                b = (b + m - step) % m;
            } else {
                let step = mul_mod(f, inv_mod(2 * a % m, m).expect("unit"), m);
                a = (a + m - step) % m;
            }
        }
        Ok(Self { p, k, modulus, a, b })
    }

    pub fn holds(&self) -> bool {
        let m = self.modulus;
        (mul_mod(self.a, self.a, m) + mul_mod(self.b, self.b, m) + 1).is_multiple_of(m)
    }

    /// The same splitting at precision `p`.
    pub fn at_prime(&self) -> SplittingData {
        SplittingData { p: self.p, k: 1, modulus: self.p, a: self.a % self.p, b: self.b % self.p }
    }
}

fn check_odd_prime(p: u64) -> Result<()> {
    if p == 2 {
        return Err(Error::InvalidPrime(2));
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(())
}

/// First `(a, b)` in lexicographic order with `a² + b² + 1 ≡ 0 (mod p)`,
/// lifted to `p^k`.
pub fn find_splitting(p: u64, k: u32) -> Result<SplittingData> {
    check_odd_prime(p)?;
    for a in 0..p {
        for b in 0..p {
            if (mul_mod(a, a, p) + mul_mod(b, b, p) + 1).is_multiple_of(p) {
                return SplittingData::lifted(p, k, a, b);
            }
        }
    }
    unreachable!("every odd prime is a sum a² + b² + 1 modulo p")
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let e = (a as i128).extended_gcd(&(m as i128));
    (e.gcd == 1).then(|| e.x.rem_euclid(m as i128) as u64)
}

/// A 2×2 matrix over `Z/m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ResidueMatrix {
    entries: [[u64; 2]; 2],
    modulus: u64,
}

impl ResidueMatrix {
    pub fn new(entries: [[i64; 2]; 2], modulus: u64) -> Self {
        let r = |v: i64| v.rem_euclid(modulus as i64) as u64;
        Self { entries: [[r(entries[0][0]), r(entries[0][1])], [r(entries[1][0]), r(entries[1][1])]], modulus }
    }

    pub fn identity(modulus: u64) -> Self {
        Self::new([[1, 0], [0, 1]], modulus)
    }

    pub fn entries(&self) -> [[u64; 2]; 2] {
        self.entries
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn mul(&self, rhs: &ResidueMatrix) -> ResidueMatrix {
        debug_assert_eq!(self.modulus, rhs.modulus);
        let m = self.modulus;
        let e = &self.entries;
        let f = &rhs.entries;
        let dot = |i: usize, j: usize| (mul_mod(e[i][0], f[0][j], m) + mul_mod(e[i][1], f[1][j], m)) % m;
        ResidueMatrix { entries: [[dot(0, 0), dot(0, 1)], [dot(1, 0), dot(1, 1)]], modulus: m }
    }

    pub fn add(&self, rhs: &ResidueMatrix) -> ResidueMatrix {
        let m = self.modulus;
        let mut entries = self.entries;
        for (row, other) in entries.iter_mut().zip(rhs.entries.iter()) {
            for (x, y) in row.iter_mut().zip(other.iter()) {
                *x = (*x + y) % m;
            }
        }
        ResidueMatrix { entries, modulus: m }
    }

    pub fn det(&self) -> u64 {
        let m = self.modulus;
        let [[a, b], [c, d]] = self.entries;
        (mul_mod(a, d, m) + m - mul_mod(b, c, m)) % m
    }

    /// `adj(M)`, so that `M · adj(M) = det(M) · 1`.
    pub fn adjugate(&self) -> ResidueMatrix {
        let m = self.modulus;
        let [[a, b], [c, d]] = self.entries;
        ResidueMatrix { entries: [[d, (m - b) % m], [(m - c) % m, a]], modulus: m }
    }

    pub fn is_scalar(&self) -> bool {
        let [[a, b], [c, d]] = self.entries;
        b == 0 && c == 0 && a == d
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(|&x| x == 0)
    }

    pub fn is_invertible(&self) -> bool {
        self.det().gcd(&self.modulus) == 1
    }

    /// Reduction to a modulus dividing the current one.
    pub fn reduce(&self, modulus: u64) -> ResidueMatrix {
        assert_eq!(self.modulus % modulus, 0, "{modulus} does not divide {}", self.modulus);
        let mut entries = self.entries;
        for x in entries.iter_mut().flatten() {
            *x %= modulus;
        }
        ResidueMatrix { entries, modulus }
    }

    /// Representative of the class modulo unit scalars: the first unit entry
    /// in row-major order is scaled to 1. Returns `self` if no entry is a unit.
    pub fn projective_normal_form(&self) -> ResidueMatrix {
        let m = self.modulus;
        let Some(inv) = self.entries.iter().flatten().find_map(|&x| inv_mod(x, m)) else {
            return *self;
        };
        let mut entries = self.entries;
        for x in entries.iter_mut().flatten() {
            *x = mul_mod(*x, inv, m);
        }
        ResidueMatrix { entries, modulus: m }
    }
}

impl fmt::Display for ResidueMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [[a, b], [c, d]] = self.entries;
        write!(f, "[[{a}, {b}], [{c}, {d}]] mod {}", self.modulus)
    }
}

/// The image of a Hurwitz element under the splitting.
pub fn rho(x: &HurwitzElement, s: &SplittingData) -> ResidueMatrix {
    let m = s.modulus;
    let big_m = BigInt::from(m);
    let [w, x1, y, z] = x.coords().clone().map(|c| u64::try_from(c.mod_floor(&big_m)).expect("reduced below modulus"));
    let (a, b) = (s.a, s.b);
    let neg = |v: u64| (m - v % m) % m;
    let e00 = (w + mul_mod(x1, a, m) + neg(mul_mod(z, b, m))) % m;
    let e01 = (mul_mod(x1, b, m) + y + mul_mod(z, a, m)) % m;
    let e10 = (mul_mod(x1, b, m) + neg(y) + mul_mod(z, a, m)) % m;
    let e11 = (w + neg(mul_mod(x1, a, m)) + mul_mod(z, b, m)) % m;
    // Doubled coordinates: divide by 2, which is a unit for odd p.
    let half = m.div_ceil(2);
    ResidueMatrix {
        entries: [[mul_mod(e00, half, m), mul_mod(e01, half, m)], [mul_mod(e10, half, m), mul_mod(e11, half, m)]],
        modulus: m,
    }
}

/// A point of the projective line over `F_p`, normalised to `(1 : t)` or
/// `(0 : 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NeighborLabel {
    pub p: u64,
    pub line: [u64; 2],
}

impl fmt::Display for NeighborLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} : {})", self.line[0], self.line[1])
    }
}

/// Which neighbour of the base vertex the class of norm `p` moves it to,
/// read off as the column space of its image mod `p`.
pub fn neighbor_label(c: &ProjectiveClass, s: &SplittingData) -> Result<NeighborLabel> {
    let p = s.p;
    let norm = c.reduced_norm();
    let mismatch = || Error::NormMismatch { norm: norm.to_string(), p };
    if norm != BigInt::from(p) {
        return Err(mismatch());
    }
    let m = rho(c.rep(), &s.at_prime());
    let [[a, b], [c_, d]] = m.entries();
    let (u, v) = if a != 0 || c_ != 0 { (a, c_) } else { (b, d) };
    if u == 0 && v == 0 {
        return Err(mismatch());
    }
    let line = if u != 0 { [1, mul_mod(v, inv_mod(u, p).expect("p prime"), p)] } else { [0, 1] };
    Ok(NeighborLabel { p, line })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CongruenceReport {
    pub splitting: SplittingData,
    pub generator_images: Vec<ResidueMatrix>,
    /// Whether each relator maps to a scalar matrix mod `q^r`.
    pub relator_scalar: Vec<bool>,
    /// Order of the image of the generators in `PGL₂(F_q)`.
    pub image_order: usize,
}

impl CongruenceReport {
    pub fn all_relators_scalar(&self) -> bool {
        self.relator_scalar.iter().all(|&s| s)
    }
}

/// Maps a presentation through the reduction at `q^r` for a prime `q`
/// outside `S`, checks the relators, and measures the projective image mod `q`.
pub fn congruence_image(p: &Presentation, q: u64, r: u32, cap: usize) -> Result<CongruenceReport> {
    check_odd_prime(q)?;
    if p.s_set.contains(q) {
        return Err(Error::PrimeInS(q));
    }
    p.check_indices()?;
    let splitting = find_splitting(q, r)?;
    let generator_images: Vec<ResidueMatrix> = p.generators.iter().map(|g| rho(g.witness.rep(), &splitting)).collect();
    let inverses: Vec<ResidueMatrix> = generator_images.iter().map(ResidueMatrix::adjugate).collect();
    let relator_scalar = p
        .relators
        .iter()
        .map(|w| {
            w.letters()
                .iter()
                .fold(ResidueMatrix::identity(splitting.modulus), |acc, l| {
                    let g = if l.inverse { &inverses } else { &generator_images };
                    acc.mul(&g[l.generator])
                })
                .is_scalar()
        })
        .collect();
    let mod_q: Vec<ResidueMatrix> = generator_images.iter().map(|m| m.reduce(q)).collect();
    let image_order = closure_order(&mod_q, true, cap)?;
    Ok(CongruenceReport { splitting, generator_images, relator_scalar, image_order })
}
