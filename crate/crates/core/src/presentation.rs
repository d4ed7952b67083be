//! Presentations with quaternion witnesses, and their soundness check.

use std::fmt;
use std::str::FromStr;

use num::{BigRational, One};

use crate::error::{Error, Result};
use crate::parallel::{map_slice, Parallelism};
use crate::quaternion::{class_in_projective_sunits, HurwitzElement, ProjectiveClass, SPrimeSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GeneratorKind {
    /// A non-identity projective unit.
    Unit,
    /// A member of the transversal for the prime.
    Prime(u64),
    /// A class of the given reduced norm (oracle builder).
    Divisor(u64),
    /// A generator with no structural role (fixtures, imported files).
    Free,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GeneratorId {
    pub kind: GeneratorKind,
    pub index: usize,
}

impl GeneratorId {
    pub fn unit(index: usize) -> Self {
        Self { kind: GeneratorKind::Unit, index }
    }

    pub fn prime(p: u64, index: usize) -> Self {
        Self { kind: GeneratorKind::Prime(p), index }
    }

    pub fn divisor(d: u64, index: usize) -> Self {
        Self { kind: GeneratorKind::Divisor(d), index }
    }

    pub fn free(index: usize) -> Self {
        Self { kind: GeneratorKind::Free, index }
    }
}

impl fmt::Display for GeneratorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            GeneratorKind::Unit => write!(f, "unit:{}", self.index),
            GeneratorKind::Prime(p) => write!(f, "prime:{p}:{}", self.index),
            GeneratorKind::Divisor(d) => write!(f, "divisor:{d}:{}", self.index),
            GeneratorKind::Free => write!(f, "free:{}", self.index),
        }
    }
}

impl FromStr for GeneratorId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad generator id {s:?}"));
        let num = |t: &str| t.parse::<u64>().map_err(|_| bad());
        let parts: Vec<&str> = s.split(':').collect();
        let id = match parts.as_slice() {
            ["unit", i] => GeneratorId::unit(num(i)? as usize),
            ["prime", p, i] => GeneratorId::prime(num(p)?, num(i)? as usize),
            ["divisor", d, i] => GeneratorId::divisor(num(d)?, num(i)? as usize),
            ["free", i] => GeneratorId::free(num(i)? as usize),
            _ => return Err(bad()),
        };
        Ok(id)
    }
}

/// A generator (by position in the presentation) raised to ±1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: usize) -> Self {
        Self { generator, inverse: false }
    }

    pub fn inv(generator: usize) -> Self {
        Self { generator, inverse: true }
    }

    pub fn inverted(self) -> Self {
        Self { generator: self.generator, inverse: !self.inverse }
    }

    pub fn cancels(self, other: Letter) -> bool {
        self.generator == other.generator && self.inverse != other.inverse
    }

    /// 1-based index, negated for inverse letters.
    pub fn signed(self) -> i64 {
        let i = self.generator as i64 + 1;
        if self.inverse {
            -i
        } else {
            i
        }
    }

    pub fn from_signed(v: i64) -> Result<Self> {
        if v == 0 {
            return Err(Error::Parse("generator index 0 in relator".into()));
        }
        Ok(Self { generator: (v.unsigned_abs() - 1) as usize, inverse: v < 0 })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Self(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverted()).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn from_signed(v: &[i64]) -> Result<Self> {
        v.iter().map(|&x| Letter::from_signed(x)).collect::<Result<_>>().map(Word)
    }

    pub fn to_signed(&self) -> Vec<i64> {
        self.0.iter().map(|l| l.signed()).collect()
    }

    /// Exponent sum of each generator, for `count` generators.
    pub fn exponent_sums(&self, count: usize) -> Vec<i64> {
        let mut sums = vec![0; count];
        for l in &self.0 {
            sums[l.generator] += if l.inverse { -1 } else { 1 };
        }
        sums
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub id: GeneratorId,
    pub label: String,
    pub witness: ProjectiveClass,
}

/// The four relation families of the main builder.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RelationType {
    /// Products inside the projective unit group.
    UnitProduct,
    /// Pairs of same-prime generators whose product is `p` times a unit.
    PrimePair,
    /// Swapping generators of two different primes.
    PrimeSwap,
    /// Moving a unit across a prime generator.
    UnitSwap,
}

impl fmt::Display for RelationType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = match self {
            RelationType::UnitProduct => 1,
            RelationType::PrimePair => 2,
            RelationType::PrimeSwap => 3,
            RelationType::UnitSwap => 4,
        };
        write!(f, "type {n}")
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RelationCounts {
    pub type1: usize,
    pub type2: usize,
    pub type3: usize,
    pub type4: usize,
}

impl RelationCounts {
    pub fn total(&self) -> usize {
        self.type1 + self.type2 + self.type3 + self.type4
    }
}

impl fmt::Display for RelationCounts {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Type 1+2: {}\nType 3: {}\nType 4: {}", self.type1 + self.type2, self.type3, self.type4)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    Main(RelationCounts),
    Oracle { triples: usize },
    Fixture { name: String },
    Imported,
    Simplified { source: Box<Provenance>, moves: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub s_set: SPrimeSet,
    pub generators: Vec<Generator>,
    pub relators: Vec<Word>,
    pub provenance: Provenance,
}

impl Presentation {
    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    pub fn witnesses(&self) -> Vec<&ProjectiveClass> {
        self.generators.iter().map(|g| &g.witness).collect()
    }

    /// Checks that every letter refers to an existing generator.
    pub fn check_indices(&self) -> Result<()> {
        let count = self.generators.len();
        for w in &self.relators {
            if let Some(l) = w.0.iter().find(|l| l.generator >= count) {
                return Err(Error::GeneratorOutOfRange { index: l.generator, count });
            }
        }
        Ok(())
    }
}

/// Multiplies out a word in the witnesses.
///
/// Returns `(scale, rep)` with product = `scale · rep` and `rep` the
/// primitive sign-canonical representative. Inverse letters contribute
/// `conj(w) / Nm(w)`. The running product is reduced to its primitive part
/// after every letter so intermediate sizes stay bounded.
pub fn evaluate_word(word: &Word, witnesses: &[&ProjectiveClass]) -> Result<(BigRational, HurwitzElement)> {
    let mut scale = BigRational::one();
    let mut current = HurwitzElement::one();
    for l in word.letters() {
        let w = witnesses
            .get(l.generator)
            .ok_or(Error::GeneratorOutOfRange { index: l.generator, count: witnesses.len() })?;
        let factor = if l.inverse {
            scale /= BigRational::from_integer(w.reduced_norm());
            w.rep().conjugate()
        } else {
            w.rep().clone()
        };
        let (s, prim) = (&current * &factor).primitive_decomposition()?;
        scale *= s;
        current = prim;
    }
    Ok((scale, current))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelatorCheck {
    /// The rational scalar the relator evaluates to, if it is one.
    pub scalar: Option<BigRational>,
    /// Projective class of the evaluated product.
    pub class: ProjectiveClass,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub relators: Vec<RelatorCheck>,
    /// Indices of generators whose witness is not an S-unit class.
    pub non_sunit_witnesses: Vec<usize>,
    /// Set when a relator refers to a missing generator.
    pub malformed: Option<String>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.malformed.is_none()
            && self.non_sunit_witnesses.is_empty()
            && self.relators.iter().all(|r| r.scalar.is_some())
    }

    pub fn failing_relators(&self) -> Vec<usize> {
        self.relators.iter().enumerate().filter(|(_, r)| r.scalar.is_none()).map(|(i, _)| i).collect()
    }
}

pub fn verify_presentation(p: &Presentation) -> VerificationReport {
    verify_presentation_with(p, Parallelism::default())
}

pub fn verify_presentation_with(p: &Presentation, mode: Parallelism) -> VerificationReport {
    let non_sunit_witnesses = p
        .generators
        .iter()
        .enumerate()
        .filter(|(_, g)| !class_in_projective_sunits(&g.witness, &p.s_set))
        .map(|(i, _)| i)
        .collect();
    if let Err(e) = p.check_indices() {
        return VerificationReport { relators: Vec::new(), non_sunit_witnesses, malformed: Some(e.to_string()) };
    }
    let witnesses = p.witnesses();
    let relators = map_slice(&p.relators, mode, |w| {
        let (scale, rep) = evaluate_word(w, &witnesses).expect("indices checked");
        let class = ProjectiveClass::identity();
        if rep.is_scalar() {
            // rep is then the canonical identity (2,0,0,0)/2 = 1.
            RelatorCheck { scalar: Some(scale), class }
        } else {
            RelatorCheck { scalar: None, class: crate::quaternion::canonical_class(&rep).expect("nonzero") }
        }
    });
    VerificationReport { relators, non_sunit_witnesses, malformed: None }
}
