//! Serialization of presentations: JSON, and GAP and Magma scripts.

use std::fmt::Write as _;
use std::str::FromStr;

use num::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::Number;

use crate::error::{Error, Result};
use crate::presentation::{Generator, GeneratorId, Presentation, Provenance, Word};
use crate::quaternion::{canonical_class, HurwitzElement, SPrimeSet};

pub const JSON_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Gap,
    Magma,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(Format::Json),
            "gap" => Ok(Format::Gap),
            "magma" => Ok(Format::Magma),
            other => Err(Error::Parse(format!("unknown format {other:?}"))),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonPresentation {
    version: u32,
    primes: Vec<u64>,
    generators: Vec<JsonGenerator>,
    relators: Vec<Vec<i64>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonGenerator {
    id: String,
    label: String,
    coords: [Number; 4],
}

pub fn export(p: &Presentation, format: Format) -> String {
    match format {
        Format::Json => to_json(p),
        Format::Gap => to_gap(p),
        Format::Magma => to_magma(p),
    }
}

pub fn to_json(p: &Presentation) -> String {
    let doc = JsonPresentation {
        version: JSON_VERSION,
        primes: p.s_set.primes().to_vec(),
        generators: p
            .generators
            .iter()
            .map(|g| JsonGenerator {
                id: g.id.to_string(),
                label: g.label.clone(),
                coords: g
                    .witness
                    .rep()
                    .coords()
                    .clone()
                    .map(|c| Number::from_str(&c.to_string()).expect("integer literal")),
            })
            .collect(),
        relators: p.relators.iter().map(Word::to_signed).collect(),
    };
    let mut out = serde_json::to_string_pretty(&doc).expect("serializable");
    out.push('\n');
    out
}

/// Parses the JSON schema written by [`to_json`]. Witnesses are
/// canonicalized; the result carries `Provenance::Imported`.
pub fn parse_json(text: &str) -> Result<Presentation> {
    let doc: JsonPresentation = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    if doc.version != JSON_VERSION {
        return Err(Error::Parse(format!("unsupported version {}", doc.version)));
    }
    let s_set = SPrimeSet::new(doc.primes)?;
    let generators = doc
        .generators
        .into_iter()
        .map(|g| {
            let coords = g.coords.each_ref().map(|n| {
                BigInt::from_str(&n.to_string()).map_err(|_| Error::Parse(format!("non-integer coordinate {n}")))
            });
            let [w, x, y, z] = coords;
            let e = HurwitzElement::from_array([w?, x?, y?, z?])?;
            Ok(Generator { id: GeneratorId::from_str(&g.id)?, label: g.label, witness: canonical_class(&e)? })
        })
        .collect::<Result<Vec<_>>>()?;
    let relators = doc.relators.iter().map(|r| Word::from_signed(r)).collect::<Result<Vec<_>>>()?;
    let p = Presentation { s_set, generators, relators, provenance: Provenance::Imported };
    p.check_indices()?;
    Ok(p)
}

/// Writes `word` with runs of equal letters collapsed to powers.
fn power_runs(word: &Word, mut letter: impl FnMut(usize) -> String, one: &str) -> String {
    let signed = word.to_signed();
    if signed.is_empty() {
        return one.to_string();
    }
    let mut parts = Vec::new();
    let mut i = 0;
    while i < signed.len() {
        let v = signed[i];
        let mut j = i;
        while j < signed.len() && signed[j] == v {
            j += 1;
        }
        let e = (j - i) as i64 * v.signum();
        let base = letter(v.unsigned_abs() as usize);
        parts.push(if e == 1 { base } else { format!("{base}^{e}") });
        i = j;
    }
    parts.join("*")
}

pub fn to_magma(p: &Presentation) -> String {
    let rels: Vec<String> = p.relators.iter().map(|r| power_runs(r, |g| format!("t[{g}]"), "Id(F)")).collect();
    format!(
        "F<[t]>:=FreeGroup({});\nFP:=quo<F|[{}]>;\nR:=ReduceGenerators(FP);\nprint R;\n",
        p.generator_count(),
        rels.join(",")
    )
}

pub fn to_gap(p: &Presentation) -> String {
    let mut out = String::new();
    let names: Vec<String> = p.generators.iter().map(|g| format!("{:?}", g.label)).collect();
    if names.is_empty() {
        out.push_str("F := FreeGroup(0);\n");
    } else {
        let _ = writeln!(out, "F := FreeGroup({});", names.join(", "));
    }
    let rels: Vec<String> = p.relators.iter().map(|r| power_runs(r, |g| format!("F.{g}"), "One(F)")).collect();
    let _ = writeln!(out, "G := F / [{}];", rels.join(", "));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builder::build_main;
    use crate::fixtures::{fixture, fixture_names};
    use crate::presentation::verify_presentation;

    fn cube() -> Presentation {
        Presentation {
            s_set: SPrimeSet::empty(),
            generators: vec![Generator {
                id: GeneratorId::free(0),
                label: "a".into(),
                witness: canonical_class(&HurwitzElement::omega()).unwrap(),
            }],
            relators: vec![Word::from_signed(&[1, 1, 1]).unwrap()],
            provenance: Provenance::Imported,
        }
    }

    #[test]
    fn magma_layout() {
        let text = to_magma(&cube());
        assert_eq!(text, "F<[t]>:=FreeGroup(1);\nFP:=quo<F|[t[1]^3]>;\nR:=ReduceGenerators(FP);\nprint R;\n");
        let p = build_main(&SPrimeSet::new([3, 5]).unwrap()).unwrap();
        assert!(to_magma(&p).starts_with("F<[t]>:=FreeGroup(21);\n"));
    }

    #[test]
    fn power_runs_mixed_signs() {
        let w = Word::from_signed(&[1, 1, -2, -2, -2, 1, 2]).unwrap();
        assert_eq!(power_runs(&w, |g| format!("t[{g}]"), "1"), "t[1]^2*t[2]^-3*t[1]*t[2]");
    }

    #[test]
    fn gap_layout() {
        assert_eq!(to_gap(&cube()), "F := FreeGroup(\"a\");\nG := F / [F.1^3];\n");
    }

    #[test]
    fn json_round_trip_is_byte_identical() {
        for name in fixture_names() {
            let p = fixture(name).unwrap();
            let text = to_json(&p);
            let q = parse_json(&text).unwrap();
            assert_eq!(to_json(&q), text, "{name}");
            assert_eq!(q.relators, p.relators);
            assert!(verify_presentation(&q).passed());
        }
        let p = build_main(&SPrimeSet::new([3]).unwrap()).unwrap();
        let q = parse_json(&to_json(&p)).unwrap();
        assert_eq!(q.generators, p.generators);
    }

    #[test]
    fn json_shape() {
        let v: serde_json::Value = serde_json::from_str(&to_json(&cube())).unwrap();
        assert_eq!(v["version"], 1);
        assert_eq!(v["generators"][0]["id"], "free:0");
        assert_eq!(v["generators"][0]["coords"], serde_json::json!([1, 1, 1, 1]));
        assert_eq!(v["relators"], serde_json::json!([[1, 1, 1]]));
    }

    #[test]
    fn json_rejects_bad_input() {
        let good = to_json(&cube());
        assert!(parse_json(&good.replace("\"version\": 1", "\"version\": 2")).is_err());
        assert!(
            parse_json(&good.replace("[\n      1,\n      1,\n      1\n    ]", "[\n      1,\n      4\n    ]")).is_err()
        );
        assert!(parse_json("{").is_err());
        let mixed = good.replacen("\n        1,\n", "\n        2,\n", 1);
        assert!(matches!(parse_json(&mixed), Err(Error::ParityMismatch(_))));
    }

    #[test]
    fn format_names() {
        assert_eq!("MAGMA".parse::<Format>().unwrap(), Format::Magma);
        assert!("tex".parse::<Format>().is_err());
    }
}
