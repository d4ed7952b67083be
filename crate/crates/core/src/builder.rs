//! Construction of presentations of the projective S-unit group.
//!
//! [`build_main`] emits the compact presentation generated by the non-trivial
//! projective units together with one element per tree neighbour at each
//! prime, related by four families of relations. [`build_oracle`] emits the
//! much larger presentation whose generators are all classes of norm
//! dividing `m_S` and whose relations are all products that stay in that
//! set; it exists to cross-check the main builder.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::norms::{elements_of_norm, prime_transversal, unit_transversal, Transversal};
use crate::parallel::{map_range, Parallelism};
use crate::presentation::{
    Generator, GeneratorId, Letter, Presentation, Provenance, RelationCounts, RelationType, Word,
};
use crate::quaternion::{canonical_class, ProjectiveClass, SPrimeSet};

/// Generator cap for [`build_oracle`] when none is given.
pub const DEFAULT_ORACLE_CAP: usize = 5_000;

/// Number of non-identity projective units, i.e. of unit generators.
pub const UNIT_GENERATORS: usize = 11;

pub fn build_main(s: &SPrimeSet) -> Result<Presentation> {
    build_main_with(s, Parallelism::default())
}

pub fn build_main_with(s: &SPrimeSet, mode: Parallelism) -> Result<Presentation> {
    if s.is_empty() {
        return Err(Error::NoOddPrimes);
    }
    let units = unit_transversal();
    let transversals: Vec<Transversal> = s.primes().iter().map(|&p| prime_transversal(p)).collect::<Result<_>>()?;

    let mut generators: Vec<Generator> = (1..units.len())
        .map(|i| Generator { id: GeneratorId::unit(i), label: format!("u{i}"), witness: units.members[i].clone() })
        .collect();
    let mut offsets = Vec::with_capacity(transversals.len());
    for t in &transversals {
        offsets.push(generators.len());
        generators.extend(t.members.iter().enumerate().map(|(j, c)| Generator {
            id: GeneratorId::prime(t.norm, j),
            label: format!("x{}_{j}", t.norm),
            witness: c.clone(),
        }));
    }

    let unit_index: HashMap<&ProjectiveClass, usize> = units.members.iter().enumerate().map(|(i, c)| (c, i)).collect();
    // Unit transversal index 1..=11 sits at generator position index - 1.
    let unit_letter = |i: usize| Letter::new(i - 1);
    let prime_letter = |k: usize, j: usize| Letter::new(offsets[k] + j);

    let mut relators = Vec::new();
    let mut counts = RelationCounts::default();

    // Type 1: products inside the unit classes.
    for a in 1..units.len() {
        for b in 1..units.len() {
            let prod = units.members[a].mul(&units.members[b]);
            let nu = *unit_index.get(&prod).ok_or_else(|| Error::MatchNotFound {
                kind: RelationType::UnitProduct,
                operands: format!("u{a}, u{b}"),
            })?;
            let mut w = vec![unit_letter(a), unit_letter(b)];
            if nu != 0 {
                w.push(unit_letter(nu).inverted());
            }
            relators.push(Word(w));
            counts.type1 += 1;
        }
    }

    // Type 2: σ·τ = p·(unit) within one prime.
    for (k, t) in transversals.iter().enumerate() {
        let n = t.len();
        let found = map_range(n * n, mode, |idx| {
            let (i, j) = (idx / n, idx % n);
            let prod = t.members[i].mul(&t.members[j]);
            unit_index.get(&prod).map(|&nu| {
                let mut w = vec![prime_letter(k, i), prime_letter(k, j)];
                if nu != 0 {
                    w.push(unit_letter(nu).inverted());
                }
                Word(w)
            })
        });
        for w in found.into_iter().flatten() {
            relators.push(w);
            counts.type2 += 1;
        }
    }

    // Type 3: σ·τ = ν·α·β for σ, β at the larger prime and τ, α at the smaller.
    for (kq, tq) in transversals.iter().enumerate() {
        for (kp, tp) in transversals.iter().enumerate().skip(kq + 1) {
            let mut table: HashMap<ProjectiveClass, (usize, usize, usize)> = HashMap::new();
            for (nu, unit) in units.members.iter().enumerate() {
                for (alpha, a) in tq.members.iter().enumerate() {
                    for (beta, b) in tp.members.iter().enumerate() {
                        let c = unit.mul(a).mul(b);
                        if table.insert(c, (nu, alpha, beta)).is_some() {
                            return Err(Error::MatchNotFound {
                                kind: RelationType::PrimeSwap,
                                operands: format!("duplicate product for primes {}, {}", tq.norm, tp.norm),
                            });
                        }
                    }
                }
            }
            let (nq, np) = (tq.len(), tp.len());
            let matched = map_range(nq * np, mode, |idx| {
                let (tau, sigma) = (idx / np, idx % np);
                let prod = tp.members[sigma].mul(&tq.members[tau]);
                table
                    .get(&prod)
                    .map(|&(nu, alpha, beta)| {
                        let mut w = vec![
                            prime_letter(kp, sigma),
                            prime_letter(kq, tau),
                            prime_letter(kp, beta).inverted(),
                            prime_letter(kq, alpha).inverted(),
                        ];
                        if nu != 0 {
                            w.push(unit_letter(nu).inverted());
                        }
                        Word(w)
                    })
                    .ok_or((sigma, tau))
            });
            for m in matched {
                let w = m.map_err(|(sigma, tau)| Error::MatchNotFound {
                    kind: RelationType::PrimeSwap,
                    operands: format!("x{}_{sigma}, x{}_{tau}", tp.norm, tq.norm),
                })?;
                relators.push(w);
                counts.type3 += 1;
            }
        }
    }

    // Type 4: ν·σ = τ·μ, μ ranging over all unit classes including 1.
    for (k, t) in transversals.iter().enumerate() {
        let mut table: HashMap<ProjectiveClass, (usize, usize)> = HashMap::new();
        for (tau, tc) in t.members.iter().enumerate() {
            for (mu, uc) in units.members.iter().enumerate() {
                table.insert(tc.mul(uc), (tau, mu));
            }
        }
        let nu_count = units.len() - 1;
        let matched = map_range(t.len() * nu_count, mode, |idx| {
            let (sigma, nu) = (idx / nu_count, idx % nu_count + 1);
            let prod = units.members[nu].mul(&t.members[sigma]);
            table
                .get(&prod)
                .map(|&(tau, mu)| {
                    let mut w = vec![unit_letter(nu), prime_letter(k, sigma)];
                    if mu != 0 {
                        w.push(unit_letter(mu).inverted());
                    }
                    w.push(prime_letter(k, tau).inverted());
                    Word(w)
                })
                .ok_or((nu, sigma))
        });
        for m in matched {
            let w = m.map_err(|(nu, sigma)| Error::MatchNotFound {
                kind: RelationType::UnitSwap,
                operands: format!("u{nu}, x{}_{sigma}", t.norm),
            })?;
            relators.push(w);
            counts.type4 += 1;
        }
    }

    Ok(Presentation { s_set: s.clone(), generators, relators, provenance: Provenance::Main(counts) })
}

pub fn build_oracle(s: &SPrimeSet) -> Result<Presentation> {
    build_oracle_with(s, DEFAULT_ORACLE_CAP, Parallelism::default())
}

/// Presentation on every projective class of norm dividing `m_S`.
///
/// One relator `a_σ a_τ a_ν⁻¹` is emitted for every ordered pair of
/// non-identity generators whose product class `ν` is again a generator, and
/// `a_σ a_τ` when the product is the identity.
pub fn build_oracle_with(s: &SPrimeSet, cap: usize, mode: Parallelism) -> Result<Presentation> {
    if s.is_empty() {
        return Err(Error::NoOddPrimes);
    }
    let mut divisors: Vec<u64> = vec![1];
    for &p in s.primes() {
        let more: Vec<u64> = divisors.iter().map(|d| d * p).collect();
        divisors.extend(more);
    }
    divisors.sort_unstable();

    // 12·σ(d) classes per divisor; check the cap before enumerating.
    let expected: u64 = divisors.iter().map(|&d| 12 * (1..=d).filter(|e| d % e == 0).sum::<u64>()).sum::<u64>() - 1;
    if expected as usize > cap {
        return Err(Error::SizeLimitExceeded { found: expected as usize, cap });
    }

    let mut generators = Vec::new();
    for &d in &divisors {
        let mut classes: Vec<ProjectiveClass> = elements_of_norm(d)
            .iter()
            .map(|e| canonical_class(e).expect("nonzero"))
            .filter(|c| !c.is_identity())
            .collect();
        classes.sort();
        classes.dedup();
        generators.extend(classes.into_iter().enumerate().map(|(j, c)| Generator {
            id: GeneratorId::divisor(d, j),
            label: format!("n{d}_{j}"),
            witness: c,
        }));
    }
    let index: HashMap<&ProjectiveClass, usize> = generators.iter().enumerate().map(|(i, g)| (&g.witness, i)).collect();

    let n = generators.len();
    let rows = map_range(n, mode, |i| {
        let mut out = Vec::new();
        for j in 0..n {
            let prod = generators[i].witness.mul(&generators[j].witness);
            if prod.is_identity() {
                out.push(Word(vec![Letter::new(i), Letter::new(j)]));
            } else if let Some(&k) = index.get(&prod) {
                out.push(Word(vec![Letter::new(i), Letter::new(j), Letter::inv(k)]));
            }
        }
        out
    });
    let relators: Vec<Word> = rows.into_iter().flatten().collect();
    Ok(Presentation {
        s_set: s.clone(),
        provenance: Provenance::Oracle { triples: relators.len() },
        generators,
        relators,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::verify_presentation;
    use crate::quaternion::HurwitzElement;

    fn set(p: &[u64]) -> SPrimeSet {
        SPrimeSet::new(p.iter().copied()).unwrap()
    }

    fn counts(p: &Presentation) -> RelationCounts {
        match &p.provenance {
            Provenance::Main(c) => *c,
            other => panic!("unexpected provenance {other:?}"),
        }
    }

    #[test]
    fn main_counts_for_3_5() {
        let p = build_main(&set(&[3, 5])).unwrap();
        assert_eq!(p.generator_count(), 21);
        let c = counts(&p);
        assert_eq!((c.type1, c.type2, c.type3, c.type4), (121, 10, 24, 110));
        assert_eq!(p.relators.len(), 265);
        assert!(verify_presentation(&p).passed());
    }

    #[test]
    fn main_counts_small_sets() {
        let p = build_main(&set(&[3])).unwrap();
        assert_eq!(p.generator_count(), 15);
        assert_eq!(counts(&p).type3, 0);

        let p = build_main(&set(&[3, 5, 7])).unwrap();
        assert_eq!(p.generator_count(), 29);
        assert_eq!(counts(&p).type3, 4 * 6 + 4 * 8 + 6 * 8);
    }

    #[test]
    fn empty_set_rejected() {
        assert_eq!(build_main(&SPrimeSet::empty()), Err(Error::NoOddPrimes));
        assert_eq!(build_oracle(&SPrimeSet::empty()), Err(Error::NoOddPrimes));
    }

    #[test]
    fn type_two_pairs_form_an_involution() {
        for p in [3u64, 5, 7, 11] {
            let t = prime_transversal(p).unwrap();
            let partner: Vec<usize> = t
                .members
                .iter()
                .map(|s| {
                    let hits: Vec<usize> =
                        (0..t.len()).filter(|&j| s.mul(&t.members[j]).reduced_norm() == 1.into()).collect();
                    assert_eq!(hits.len(), 1, "p = {p}");
                    hits[0]
                })
                .collect();
            for (i, &j) in partner.iter().enumerate() {
                assert_eq!(partner[j], i);
            }
        }
    }

    #[test]
    fn unit_swaps_are_unique_and_exact_up_to_sign() {
        let units = unit_transversal();
        let t = prime_transversal(5).unwrap();
        for nu in &units.members[1..] {
            for sigma in &t.members {
                let lhs = nu.rep() * sigma.rep();
                let hits: Vec<(usize, usize)> = (0..t.len())
                    .flat_map(|tau| (0..units.len()).map(move |mu| (tau, mu)))
                    .filter(|&(tau, mu)| canonical_class(&lhs).unwrap() == t.members[tau].mul(&units.members[mu]))
                    .collect();
                assert_eq!(hits.len(), 1);
                // Equal norms: the classes agree only if the products agree up to sign.
                let (tau, mu) = hits[0];
                let rhs: HurwitzElement = t.members[tau].rep() * units.members[mu].rep();
                assert!(lhs == rhs || lhs == -&rhs);
            }
        }
    }

    #[test]
    fn oracle_sizes() {
        let p = build_oracle(&set(&[3])).unwrap();
        assert_eq!(p.generator_count(), 59);
        assert!(verify_presentation(&p).passed());

        let p = build_oracle_with(&set(&[3, 5]), 10_000, Parallelism::default()).unwrap();
        assert_eq!(p.generator_count(), 419);

        assert!(matches!(
            build_oracle_with(&set(&[3, 5]), 100, Parallelism::default()),
            Err(Error::SizeLimitExceeded { found: 419, cap: 100 })
        ));
    }

    #[test]
    fn builders_are_deterministic() {
        let s = set(&[3, 7]);
        let a = build_main_with(&s, Parallelism::Sequential).unwrap();
        let b = build_main_with(&s, Parallelism::Parallel).unwrap();
        assert_eq!(a, b);
        let a = build_oracle_with(&set(&[3]), 100, Parallelism::Sequential).unwrap();
        let b = build_oracle_with(&set(&[3]), 100, Parallelism::Parallel).unwrap();
        assert_eq!(a, b);
    }
}
