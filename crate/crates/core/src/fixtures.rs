//! Published presentations of `Γ̄_S` for six small sets `S`.
//!
//! Generators are stored as doubled coordinates of their integral
//! representatives. Relators are written in the usual notation
//! (`b^-1 a^2`, `(a b)^3`) and parsed on load. Commutators have been
//! expanded as `(x, y) = x⁻¹ y⁻¹ x y`; the opposite convention
//! `x y x⁻¹ y⁻¹` is a conjugate of this one, so the choice changes neither
//! witness evaluation nor the abelianization.

use crate::error::{Error, Result};
use crate::presentation::{Generator, GeneratorId, Letter, Presentation, Provenance, Word};
use crate::quaternion::{canonical_class, HurwitzElement, SPrimeSet};

#[derive(Clone, Debug)]
pub struct FixtureEntry {
    pub name: &'static str,
    pub primes: &'static [u64],
    /// Label and doubled coordinates of the integral representative.
    pub generators: &'static [(&'static str, [i64; 4])],
    pub relators: &'static [&'static str],
    pub note: &'static str,
}

static FIXTURES: &[FixtureEntry] = &[
    FixtureEntry {
        name: "s3_5",
        primes: &[3, 5],
        generators: &[("a", [-2, 2, -2, -6]), ("b", [-18, -14, -2, 14])],
        relators: &[
            "(b^-1 a^-1 b a^-1)^3",
            "(b^-1 a^-2 b a^-1 b^-1 a^-1)^2",
            "(a^-1 b^-1 a^-1 b^-1 a^-1 b a^-1)^2",
            "b^-1 a b a b^-1 a^-1 b^2 a b^-1 a b a^2 b^-1 a b a b^-1 a^2 b a^2 b^-1 a^-1 b a^-2 b^-1 a^-2",
            "(b a^2 b^-1 a b a^-1 b)^2",
            "b^-1 a^3 b a^2 b^-1 a b^-1 a^-2 b a^-1 b^-1 a",
            "b^-2 a^-1 b a^-1 b^-1 a b a^2 b^-2 a^-2 b a^-1",
            "a b^-1 a^2 b a^-1 b^-1 a^-2 b a^-2 b^-1 a b a",
        ],
        note: "as tabulated",
    },
    FixtureEntry {
        name: "s3_7",
        primes: &[3, 7],
        generators: &[("a", [-2, 2, -2, -6]), ("b", [-2, -2, -2, -10])],
        relators: &[
            "b a b a^-2 b a b^-1 a^-1 b^-1 a^2 b^-1 a^-1",
            "a^3 b a^-2 b a b a^2 b^-1 a^-1 b^-3 a^-1 b^-1",
            "b a b^-1 a^-1 b^-1 a^-1 b a b^2 a b^2 a^-2 b a b",
            "(a^2 b^-1 a^-1 b^-2 a^-1 b^-1 a)^2",
            "a b^3 a b^3 a b a^-2 b a^3 b a^-2 b",
            "b^-2 a b^2 a b a^-2 b^3 a b a^-2 b^2 a^2 b^-1 a^-1 b^-2 a^-1 b^-2 a^-1",
        ],
        note: "as tabulated",
    },
    FixtureEntry {
        name: "s3_11",
        primes: &[3, 11],
        generators: &[
            ("a", [2, 2, -2, -2]),
            ("b", [-2, -2, -2, -6]),
            ("c", [-2, 2, 0, -6]),
        ],
        relators: &[
            "a^3",
            "(b^-1 c a^-1)^2",
            "(b^-1 a b a^-1)^2",
            "(c^-1 b a^-1 b)^2",
            "b a^-1 b^-2 a c^-1 a b^-1 c^-1",
            "c^-1 a b^-1 c^-1 a c b^-1 a^-1 c^-1",
            "(b^2 a^-1 b^-1 a^-1)^2",
            "(b a b^-1 a^-1 c^-1)^2",
        ],
        note: "r3 = (b, a^-1)^2 expanded as x^-1 y^-1 x y; r5 is typeset with an unbraced exponent b^-2, read as b^-2",
    },
    FixtureEntry {
        name: "s5_7",
        primes: &[5, 7],
        generators: &[
            ("a", [2, -2, 2, -2]),
            ("b", [0, 0, -2, -4]),
            ("c", [-2, 2, 2, -10]),
        ],
        relators: &[
            "b^2",
            "a^3",
            "(c^-1 a b)^2",
            "(a^-1 c a c^-1)^2",
            "(b c a^-1 c^-1 a)^2",
            "(c a^-1 c^-1 a^-1)^3",
            "c a c^-1 a b c a c^-1 a^-1 c^-1 a^-1 b a c a",
            "c^-1 a^-1 b a c^2 a c^-1 a^-1 b a c a c^-1 a",
        ],
        note: "r4 = (a, c^-1)^2 expanded as x^-1 y^-1 x y",
    },
    FixtureEntry {
        name: "s3_5_7",
        primes: &[3, 5, 7],
        generators: &[
            ("a", [2, 2, -2, -2]),
            ("b", [-2, -2, -2, -6]),
            ("c", [0, -2, 0, -4]),
            ("d", [-2, -2, -2, -10]),
        ],
        relators: &[
            "c^2",
            "a^3",
            "b^-1 d a d^-1 b a^-1",
            "b d c d^-1 b^-1 c",
            "c a^-1 d^-1 c a d",
            "(d a^-1 d^-1 a)^2",
            "(d b a^-1 d)^2",
            "(c a^-1 b^2)^2",
            "(d a b a^-1)^2",
            "b^-1 d c a d^-1 b^-1 a c a^-1",
            "c a^-1 b^-1 a^-1 c d a^-1 d^-1 b^-1 a",
            "b a d a d^-1 a b^2 a b^-1 a",
            "d^-1 b^-1 a^-1 b d^-1 b^2 a d a d^-1",
            "(a^-1 d a^-1 d^-1)^3",
            "d^2 a d^-1 a b d^-1 a^-1 d a^-1 d^-1 b^-1",
            "d^-1 a^-1 b^-1 a c b^-1 a d^-1 a c a^-1 d a^-1 d^-1",
            "c d a^-1 d^-1 a^-1 d^-1 a^-1 b^-1 a c b^-1 d^-1 a d a d^-1",
            "(d a^-1 d a^-1 d^-1 a^-1 c a^-1)^2",
        ],
        note: "r6 = (d^-1, a)^2 expanded as x^-1 y^-1 x y",
    },
    FixtureEntry {
        name: "s3_5_11",
        primes: &[3, 5, 11],
        generators: &[
            ("a", [-2, -2, -2, -6]),
            ("b", [-2, 0, 0, -4]),
            ("c", [-2, 0, 2, -6]),
        ],
        relators: &[
            "b^2 c b a^-1 c^-2 b^-1 a c^-1",
            "(b^-1 c^-1 b^-1 a c^-1 a^-1)^2",
            "b c b a b a^-1 b^-1 c^-1 b^-1 a c^-1 b^-1 c a^-1",
            "b a c^-1 b^-1 a c^-1 a^2 b^-1 c^-1 b^-1 a c^-1 a",
            "b^-2 a^-1 b^-1 c^-1 b^-1 c^-1 b^-1 a c^-1 a b a^-1 b^-1 c^-1 b^-1",
            "b a c^-1 b^-1 a c^-1 a b^-1 c a^-1 c a^-1 b c a^-1 c^-1",
            "c a^-1 b c b^-1 a^-1 b^-1 c b^-1 c^-1 b^-1 a c^-1 a b c",
            "c b^2 a c^-1 b^-1 a c^-1 a c a^-1 b c b a^-1 c a^-1 b",
            "a^-1 c^-1 a^-1 c a^-1 b c b^-1 a c^-1 b a b^-1 c^-1 b^-2 a c",
            "c^2 a^-1 b c b a^-2 c^-2 b^-1 a^2 b^-1 c^-1 b^-1 a b",
            "c^-1 a^-1 b^2 c b a^-1 b^-1 a^-1 b^-1 a b^2 a c^-1 b^-1 a c^-1",
            "b c a c^-1 b^-1 a c^-1 a c^-2 b^-1 a^-1 c a^-1 b c a^-1 c",
            "(b^2 c a^-1 b c b^2 a)^2",
            "a^-2 c a^-2 c a^-1 b c a^-1 c a^-2 b a b c^-1 b^-1 a c^-1",
            "b a b^2 a c^-1 b^-2 a b^-1 a^-1 b^-2 a^-3 b^-1 c^-1 b^-1 a",
            "a c b c b a^-1 c^-1 b^-1 c^-1 b^-1 a c^-1 b c b a b^-1 a^-1 b^-2 a^-1 b^-1",
            "b a b^2 a b a c^-1 a b a b c^-1 b^-1 a c^-1 b a^-1 b c b a",
            "b^2 c a^-1 b c a^-1 c b a^-1 c^-1 a^-1 c a^-1 b c b a^-1 b a^-1 b a",
            "b^-2 c^-1 b^-1 a c^-1 a b^-1 a b^-1 a^-1 b^-2 a^-1 b c b^-1 a^-1 c a^-1 b^-1 a",
            "(b a c^-1 a^-1 c a^-1 b c b^2 a)^2",
            "(c^-1 a^-2 c a^-1 b c b c^-1 b^-1 a c^-1 a^-1)^2",
            "a^-1 b c b a c^-1 b^-1 a c^-1 a^3 c a^-1 b c b^-1 a^-1 b^-1 c a^-1 b c a^-1 b^-1 c b^-2 c^-1 b^-1 a c^-1 b^-2 a^-1 c b c",
        ],
        note: "r22 spans two printed lines, joined",
    },
];

pub fn fixtures() -> &'static [FixtureEntry] {
    FIXTURES
}

pub fn fixture_names() -> Vec<&'static str> {
    FIXTURES.iter().map(|f| f.name).collect()
}

/// Loads a fixture by name, e.g. `"s3_5"`.
pub fn fixture(name: &str) -> Result<Presentation> {
    FIXTURES.iter().find(|f| f.name == name).ok_or_else(|| Error::UnknownFixture(name.to_string()))?.presentation()
}

impl FixtureEntry {
    pub fn presentation(&self) -> Result<Presentation> {
        let s_set = SPrimeSet::new(self.primes.iter().copied())?;
        let generators = self
            .generators
            .iter()
            .enumerate()
            .map(|(i, (label, c))| {
                let e = HurwitzElement::from_doubled(c[0], c[1], c[2], c[3])?;
                Ok(Generator { id: GeneratorId::free(i), label: label.to_string(), witness: canonical_class(&e)? })
            })
            .collect::<Result<Vec<_>>>()?;
        let labels: Vec<&str> = self.generators.iter().map(|(l, _)| *l).collect();
        let relators = self.relators.iter().map(|r| parse_word(r, &labels)).collect::<Result<Vec<_>>>()?;
        Ok(Presentation {
            s_set,
            generators,
            relators,
            provenance: Provenance::Fixture { name: self.name.to_string() },
        })
    }
}

/// Parses a word such as `(b^-1 a^2 b)^3 a^-1` over single-token labels.
pub fn parse_word(text: &str, labels: &[&str]) -> Result<Word> {
    let mut parser = WordParser { text: text.as_bytes(), pos: 0, labels };
    let letters = parser.sequence()?;
    parser.skip_space();
    if parser.pos != parser.text.len() {
        return Err(parser.error("unexpected character"));
    }
    Ok(Word(letters))
}

struct WordParser<'a> {
    text: &'a [u8],
    pos: usize,
    labels: &'a [&'a str],
}

impl WordParser<'_> {
    fn error(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at byte {} of {:?}", self.pos, String::from_utf8_lossy(self.text)))
    }

    fn skip_space(&mut self) {
        while self.text.get(self.pos).is_some_and(|c| c.is_ascii_whitespace() || *c == b'*') {
            self.pos += 1;
        }
    }

    fn sequence(&mut self) -> Result<Vec<Letter>> {
        let mut out = Vec::new();
        loop {
            self.skip_space();
            match self.text.get(self.pos) {
                None | Some(b')') => return Ok(out),
                Some(b'(') => {
                    self.pos += 1;
                    let inner = self.sequence()?;
                    if self.text.get(self.pos) != Some(&b')') {
                        return Err(self.error("unclosed parenthesis"));
                    }
                    self.pos += 1;
                    let e = self.exponent()?;
                    out.extend(power(&inner, e));
                }
                Some(c) if c.is_ascii_alphabetic() => {
                    let start = self.pos;
                    while self.text.get(self.pos).is_some_and(|c| c.is_ascii_alphanumeric() || *c == b'_') {
                        self.pos += 1;
                    }
                    let name = std::str::from_utf8(&self.text[start..self.pos]).expect("ascii");
                    let g = self
                        .labels
                        .iter()
                        .position(|l| *l == name)
                        .ok_or_else(|| self.error(&format!("unknown generator {name:?}")))?;
                    let e = self.exponent()?;
                    out.extend(power(&[Letter::new(g)], e));
                }
                Some(_) => return Err(self.error("unexpected character")),
            }
        }
    }

    fn exponent(&mut self) -> Result<i64> {
        if self.text.get(self.pos) != Some(&b'^') {
            return Ok(1);
        }
        self.pos += 1;
        let braced = self.text.get(self.pos) == Some(&b'{');
        if braced {
            self.pos += 1;
        }
        let start = self.pos;
        if self.text.get(self.pos) == Some(&b'-') {
            self.pos += 1;
        }
        while self.text.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        let e = std::str::from_utf8(&self.text[start..self.pos])
            .expect("ascii")
            .parse::<i64>()
            .map_err(|_| self.error("bad exponent"))?;
        if braced {
            if self.text.get(self.pos) != Some(&b'}') {
                return Err(self.error("unclosed exponent"));
            }
            self.pos += 1;
        }
        Ok(e)
    }
}

fn power(letters: &[Letter], e: i64) -> Vec<Letter> {
    let base: Vec<Letter> = if e < 0 { letters.iter().rev().map(|l| l.inverted()).collect() } else { letters.to_vec() };
    base.iter().copied().cycle().take(base.len() * e.unsigned_abs() as usize).collect()
}
