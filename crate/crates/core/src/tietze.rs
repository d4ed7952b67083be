//! Tietze simplification of presentations.
//!
//! Every move keeps the quaternion witnesses valid: eliminated generators
//! lose their witness, the others keep theirs, and relators are only ever
//! replaced by consequences of the remaining ones.

use std::collections::{HashMap, HashSet};

use crate::presentation::{Generator, Letter, Presentation, Provenance, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SimplifyBudget {
    /// Maximum number of substring-rewriting sweeps over the relators.
    pub max_passes: usize,
    /// Maximum total relator growth allowed for a single elimination.
    pub max_relator_growth: usize,
    /// Longest defining word accepted when eliminating a generator; also
    /// bounds the relators used for substring rewriting.
    pub max_eliminated_word_length: usize,
}

impl Default for SimplifyBudget {
    fn default() -> Self {
        SimplifyBudget { max_passes: 64, max_relator_growth: 2000, max_eliminated_word_length: 24 }
    }
}

impl SimplifyBudget {
    fn sanitized(self) -> Self {
        SimplifyBudget {
            max_passes: self.max_passes.max(1),
            max_relator_growth: self.max_relator_growth.max(1),
            max_eliminated_word_length: self.max_eliminated_word_length.max(1),
        }
    }
}

/// Removes adjacent cancelling pairs, then cancelling pairs across the ends.
pub fn free_and_cyclic_reduce(w: &Word) -> Word {
    let mut stack: Vec<Letter> = Vec::with_capacity(w.len());
    for &l in w.letters() {
        match stack.last() {
            Some(&top) if top.cancels(l) => {
                stack.pop();
            }
            _ => stack.push(l),
        }
    }
    let (mut lo, mut hi) = (0, stack.len());
    while hi - lo >= 2 && stack[lo].cancels(stack[hi - 1]) {
        lo += 1;
        hi -= 1;
    }
    Word(stack[lo..hi].to_vec())
}

/// Lexicographically least rotation of `w` or its inverse, as signed indices.
fn canonical_key(w: &Word) -> Vec<i64> {
    let fwd = w.to_signed();
    let bwd = w.inverse().to_signed();
    let n = fwd.len();
    let mut best: Option<Vec<i64>> = None;
    for base in [&fwd, &bwd] {
        for r in 0..n.max(1) {
            let cand: Vec<i64> = base[r..].iter().chain(&base[..r]).copied().collect();
            if best.as_ref().is_none_or(|b| cand < *b) {
                best = Some(cand);
            }
        }
    }
    best.unwrap_or_default()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Move {
    /// Relators reduced; empty and duplicate relators dropped.
    Normalize { removed: usize },
    /// `generator` was expressed through the other letters of `relator` and removed.
    Eliminate { generator: usize, relator: usize },
    /// A long segment of `relator` was replaced using a short relator.
    Rewrite { relator: usize },
}

/// Applies Tietze moves one at a time.
pub struct Simplifier {
    source: Provenance,
    s_set: crate::quaternion::SPrimeSet,
    generators: Vec<Generator>,
    relators: Vec<Word>,
    budget: SimplifyBudget,
    moves: usize,
    passes: usize,
    cursor: usize,
    dirty: bool,
    needs_normalize: bool,
}

impl Simplifier {
    pub fn new(p: Presentation, budget: SimplifyBudget) -> Self {
        Simplifier {
            source: p.provenance,
            s_set: p.s_set,
            generators: p.generators,
            relators: p.relators,
            budget: budget.sanitized(),
            moves: 0,
            passes: 0,
            cursor: 0,
            dirty: false,
            needs_normalize: true,
        }
    }

    pub fn moves(&self) -> usize {
        self.moves
    }

    /// Snapshot of the current state.
    pub fn presentation(&self) -> Presentation {
        Presentation {
            s_set: self.s_set.clone(),
            generators: self.generators.clone(),
            relators: self.relators.clone(),
            provenance: Provenance::Simplified { source: Box::new(self.source.clone()), moves: self.moves },
        }
    }

    pub fn finish(self) -> Presentation {
        Presentation {
            s_set: self.s_set,
            generators: self.generators,
            relators: self.relators,
            provenance: Provenance::Simplified { source: Box::new(self.source), moves: self.moves },
        }
    }

    /// Performs one move, or returns `None` at a fixpoint or when the budget is spent.
    pub fn step(&mut self) -> Option<Move> {
        let m = self.next_move();
        if m.is_some() {
            self.moves += 1;
        }
        m
    }

    fn next_move(&mut self) -> Option<Move> {
        if self.needs_normalize {
            self.needs_normalize = false;
            if let Some(removed) = self.normalize() {
                return Some(Move::Normalize { removed });
            }
        }
        if let Some(m) = self.eliminate() {
            self.needs_normalize = true;
            self.dirty = true;
            return Some(m);
        }
        while self.passes < self.budget.max_passes {
            while self.cursor < self.relators.len() {
                let i = self.cursor;
                self.cursor += 1;
                if self.rewrite(i) {
                    self.dirty = true;
                    self.needs_normalize = true;
                    return Some(Move::Rewrite { relator: i });
                }
            }
            self.passes += 1;
            self.cursor = 0;
            if !self.dirty {
                return None;
            }
            self.dirty = false;
            if let Some(m) = self.eliminate() {
                self.needs_normalize = true;
                self.dirty = true;
                return Some(m);
            }
        }
        None
    }

    /// Reduces every relator and drops empty or duplicate ones, keeping
    /// first occurrences in order. Returns `None` if nothing changed.
    fn normalize(&mut self) -> Option<usize> {
        let mut changed = false;
        let mut seen = HashSet::new();
        let before = self.relators.len();
        let mut kept = Vec::with_capacity(before);
        for (i, r) in self.relators.drain(..).enumerate() {
            let red = free_and_cyclic_reduce(&r);
            changed |= red.len() != r.len();
            if red.is_empty() || !seen.insert(canonical_key(&red)) {
                if i < self.cursor {
                    self.cursor -= 1;
                }
                continue;
            }
            kept.push(red);
        }
        self.relators = kept;
        let removed = before - self.relators.len();
        (changed || removed > 0).then_some(removed)
    }

    fn eliminate(&mut self) -> Option<Move> {
        let n = self.generators.len();
        let mut total_occ = vec![0usize; n];
        let mut per_relator: Vec<HashMap<usize, usize>> = Vec::with_capacity(self.relators.len());
        for r in &self.relators {
            let mut occ = HashMap::new();
            for l in r.letters() {
                *occ.entry(l.generator).or_insert(0) += 1;
                total_occ[l.generator] += 1;
            }
            per_relator.push(occ);
        }
        let mut candidates: Vec<(usize, usize, usize)> = Vec::new();
        for (ri, occ) in per_relator.iter().enumerate() {
            let len = self.relators[ri].len();
            if len == 0 || len - 1 > self.budget.max_eliminated_word_length {
                continue;
            }
            for (&g, &c) in occ {
                if c == 1 {
                    candidates.push((len, g, ri));
                }
            }
        }
        candidates.sort_unstable();
        let (len, g, ri) = candidates.into_iter().find(|&(len, g, _)| {
            let growth = (total_occ[g] - 1) * len.saturating_sub(2);
            growth <= self.budget.max_relator_growth
        })?;
        let _ = len;

        let r = self.relators.remove(ri);
        let pos = r.letters().iter().position(|l| l.generator == g).expect("occurs once");
        let rotated: Vec<Letter> = r.letters()[pos + 1..].iter().chain(&r.letters()[..pos]).copied().collect();
        // r ~ g^e w, so g = w^-1 when e = +1 and g = w when e = -1.
        let rest = Word(rotated);
        let image = if r.letters()[pos].inverse { rest } else { rest.inverse() };
        let reindex =
            |l: Letter| Letter { generator: if l.generator > g { l.generator - 1 } else { l.generator }, ..l };
        let image: Vec<Letter> = image.letters().iter().map(|&l| reindex(l)).collect();
        let image_inv: Vec<Letter> = image.iter().rev().map(|l| l.inverted()).collect();
        for w in &mut self.relators {
            let mut out = Vec::with_capacity(w.len());
            for &l in w.letters() {
                if l.generator == g {
                    out.extend_from_slice(if l.inverse { &image_inv } else { &image });
                } else {
                    out.push(reindex(l));
                }
            }
            *w = free_and_cyclic_reduce(&Word(out));
        }
        self.generators.remove(g);
        if ri < self.cursor {
            self.cursor -= 1;
        }
        Some(Move::Eliminate { generator: g, relator: ri })
    }

    /// Replaces, in relator `i`, any cyclic segment that covers more than
    /// half of a rotation of a short relator (or its inverse) by the inverse
    /// of the remaining part. Returns whether the relator changed.
    fn rewrite(&mut self, i: usize) -> bool {
        let limit = self.budget.max_eliminated_word_length;
        let mut rotations: HashMap<i64, Vec<Vec<Letter>>> = HashMap::new();
        for (j, r) in self.relators.iter().enumerate() {
            if j == i || r.is_empty() || r.len() > limit {
                continue;
            }
            for base in [r.clone(), r.inverse()] {
                let l = base.letters();
                for s in 0..l.len() {
                    let rot: Vec<Letter> = l[s..].iter().chain(&l[..s]).copied().collect();
                    rotations.entry(rot[0].signed()).or_default().push(rot);
                }
            }
        }
        if rotations.is_empty() {
            return false;
        }
        let mut word = self.relators[i].clone();
        let mut changed = false;
        'outer: loop {
            let letters = word.letters();
            let n = letters.len();
            for p in 0..n {
                let Some(rots) = rotations.get(&letters[p].signed()) else { continue };
                for rot in rots {
                    let big = rot.len();
                    let mut k = 0;
                    while k < big && k < n && rot[k] == letters[(p + k) % n] {
                        k += 1;
                    }
                    if 2 * k <= big {
                        continue;
                    }
                    let mut out: Vec<Letter> = rot[k..].iter().rev().map(|l| l.inverted()).collect();
                    out.extend((k..n).map(|t| letters[(p + t) % n]));
                    word = free_and_cyclic_reduce(&Word(out));
                    changed = true;
                    continue 'outer;
                }
            }
            break;
        }
        if changed {
            self.relators[i] = word;
        }
        changed
    }
}

/// Simplifies `p` by Tietze moves until a fixpoint or the budget is spent.
pub fn simplify(p: &Presentation, budget: SimplifyBudget) -> Presentation {
    let mut s = Simplifier::new(p.clone(), budget);
    while s.step().is_some() {}
    s.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::abelianization;
    use crate::builder::build_main;
    use crate::fixtures::{fixture, parse_word};
    use crate::presentation::{verify_presentation, GeneratorId};
    use crate::quaternion::{canonical_class, HurwitzElement, SPrimeSet};
    use proptest::prelude::*;

    fn w(v: &[i64]) -> Word {
        Word::from_signed(v).unwrap()
    }

    #[test]
    fn reduction_examples() {
        assert_eq!(free_and_cyclic_reduce(&w(&[1, -1, 2])), w(&[2]));
        assert_eq!(free_and_cyclic_reduce(&w(&[1, 2, -1])), w(&[2]));
        assert_eq!(free_and_cyclic_reduce(&w(&[])), w(&[]));
        assert_eq!(free_and_cyclic_reduce(&w(&[1, 2, -2, -1])), w(&[]));
        assert_eq!(free_and_cyclic_reduce(&w(&[1, 2, 1])), w(&[1, 2, 1]));
    }

    #[test]
    fn canonical_key_identifies_conjugates_and_inverses() {
        let a = canonical_key(&w(&[1, 2, -1, 3]));
        assert_eq!(a, canonical_key(&w(&[2, -1, 3, 1])));
        assert_eq!(a, canonical_key(&w(&[-3, 1, -2, -1])));
        assert_ne!(a, canonical_key(&w(&[1, 2, 1, 3])));
    }

    fn toy(relators: &[&str]) -> Presentation {
        // a = omega, so a^3 = -1; b = 1.
        let one = canonical_class(&HurwitzElement::one()).unwrap();
        let a = canonical_class(&HurwitzElement::from_doubled(1, 1, 1, 1).unwrap()).unwrap();
        let labels = ["a", "b"];
        Presentation {
            s_set: SPrimeSet::new([3]).unwrap(),
            generators: vec![
                Generator { id: GeneratorId::free(0), label: "a".into(), witness: a },
                Generator { id: GeneratorId::free(1), label: "b".into(), witness: one },
            ],
            relators: relators.iter().map(|r| parse_word(r, &labels).unwrap()).collect(),
            provenance: Provenance::Imported,
        }
    }

    #[test]
    fn eliminates_trivial_generator() {
        let p = toy(&["b", "a^3"]);
        assert!(verify_presentation(&p).passed());
        let q = simplify(&p, SimplifyBudget::default());
        assert_eq!(q.generator_count(), 1);
        assert_eq!(q.generators[0].label, "a");
        assert_eq!(q.relators, vec![w(&[1, 1, 1])]);
        assert!(verify_presentation(&q).passed());
    }

    #[test]
    fn drops_duplicate_conjugate_relators() {
        let p = toy(&["a^3", "a^-3", "b a^3 b^-1", "b^2", "b"]);
        let q = simplify(&p, SimplifyBudget::default());
        assert_eq!(q.generator_count(), 1);
        assert_eq!(q.relators.len(), 1);
    }

    #[test]
    fn fixture_keeps_two_generators() {
        let p = fixture("s3_5").unwrap();
        let q = simplify(&p, SimplifyBudget::default());
        assert_eq!(q.generator_count(), 2);
        assert!(verify_presentation(&q).passed());
        assert_eq!(abelianization(&p), abelianization(&q));
    }

    #[test]
    fn main_presentation_shrinks_soundly() {
        let p = build_main(&SPrimeSet::new([3, 5]).unwrap()).unwrap();
        let mut s = Simplifier::new(p.clone(), SimplifyBudget::default());
        while let Some(m) = s.step() {
            let snap = s.presentation();
            let report = verify_presentation(&snap);
            assert!(report.passed(), "after {m:?}: {:?}", report.failing_relators());
            assert!(snap.generator_count() <= p.generator_count());
        }
        let q = s.finish();
        assert!(q.generator_count() <= 21);
        assert_eq!(abelianization(&p), abelianization(&q));
        assert!(matches!(q.provenance, Provenance::Simplified { .. }));
    }

    #[test]
    fn zero_budget_is_clamped() {
        let p = toy(&["b", "a^3"]);
        let b = SimplifyBudget { max_passes: 0, max_relator_growth: 0, max_eliminated_word_length: 0 };
        let q = simplify(&p, b);
        assert!(q.generator_count() <= 2);
        assert!(verify_presentation(&q).passed());
    }

    proptest! {
        #[test]
        fn reduce_is_idempotent_and_preserves_exponent_sums(v in prop::collection::vec(prop::sample::select(vec![-3i64, -2, -1, 1, 2, 3]), 0..30)) {
            let word = w(&v);
            let r = free_and_cyclic_reduce(&word);
            prop_assert_eq!(free_and_cyclic_reduce(&r), r.clone());
            prop_assert_eq!(r.exponent_sums(3), word.exponent_sums(3));
            let l = r.letters();
            for pair in l.windows(2) {
                prop_assert!(!pair[0].cancels(pair[1]));
            }
            if l.len() >= 2 {
                prop_assert!(!l[0].cancels(l[l.len() - 1]));
            }
        }
    }
}
