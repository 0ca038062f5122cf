//! Combinatorial layer for the closed and once-punctured surface groups:
//! free/Dehn word reduction, element enumeration, conjugacy canonical forms,
//! and the assignment of certified matrices to words.
//!
//! Letters are signed 1-based indices: `2i-1` is a_i, `2i` is b_i, negation
//! is inversion. The closed relator is the standard product of commutators;
//! its length 4p makes the presentation C'(1/6) for p >= 2, so Dehn's
//! algorithm decides the word problem and Dehn-reduced words are geodesic.

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::exact::{NumField, Polygon};
use crate::geom::{MapClass, MobiusMap, PREC_CAP};
use crate::scalar::NumError;

pub type Letter = i16;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WordError {
    #[error("unknown generator token `{0}`")]
    BadToken(String),
    #[error("generator index {0} out of range for genus {1}")]
    OutOfRange(u32, u32),
    #[error("identity word has no conjugacy class")]
    IdentityWord,
}

#[derive(Debug, Error)]
pub enum BuildError {
    #[error("genus must be at least 2, got {0}")]
    GenusTooSmall(u32),
    #[error("construction validation failed: {0}")]
    Validation(String),
    #[error(transparent)]
    Num(#[from] NumError),
}

/// Freely reduced word over the surface-group generators.
///
/// The free reduction happens on construction; all other invariants
/// (Dehn-reduced form, alphabet bounds) are enforced by the operations
/// that need them.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupWord {
    letters: Vec<Letter>,
}

pub fn free_reduce(letters: &[Letter]) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::with_capacity(letters.len());
    for &l in letters {
        debug_assert!(l != 0);
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

impl GroupWord {
    pub fn new(letters: Vec<Letter>) -> Self {
        GroupWord {
            letters: free_reduce(&letters),
        }
    }

    pub fn empty() -> Self {
        GroupWord {
            letters: Vec::new(),
        }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        GroupWord {
            letters: self.letters.iter().rev().map(|&l| -l).collect(),
        }
    }

    pub fn concat(&self, other: &GroupWord) -> Self {
        let mut v = self.letters.clone();
        v.extend_from_slice(&other.letters);
        GroupWord::new(v)
    }

    pub fn conjugate_by(&self, h: &GroupWord) -> Self {
        h.concat(self).concat(&h.inverse())
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut v = Vec::with_capacity(self.letters.len() * k as usize);
        for _ in 0..k {
            v.extend_from_slice(&self.letters);
        }
        GroupWord::new(v)
    }

    /// Parses `a1 b1 A1 B1` tokens (capital = inverse), validating the
    /// generator index against the genus.
    pub fn parse(text: &str, genus: u32) -> Result<Self, WordError> {
        let mut letters = Vec::new();
        for tok in text.split_whitespace() {
            let mut ch = tok.chars();
            let head = ch.next().ok_or_else(|| WordError::BadToken(tok.into()))?;
            let idx: u32 = ch
                .as_str()
                .parse()
                .map_err(|_| WordError::BadToken(tok.into()))?;
            if idx == 0 || idx > genus {
                return Err(WordError::OutOfRange(idx, genus));
            }
            let base = match head {
                'a' | 'A' => 2 * idx as Letter - 1,
                'b' | 'B' => 2 * idx as Letter,
                _ => return Err(WordError::BadToken(tok.into())),
            };
            letters.push(if head.is_uppercase() { -base } else { base });
        }
        Ok(GroupWord::new(letters))
    }

    /// Letter order used for canonical forms: a1 < A1 < b1 < B1 < a2 < ...
    fn letter_key(l: Letter) -> u32 {
        2 * l.unsigned_abs() as u32 + u32::from(l < 0)
    }

    fn seq_key(seq: &[Letter]) -> Vec<u32> {
        seq.iter().map(|&l| Self::letter_key(l)).collect()
    }

    /// Total-order key: length first, then the canonical letter order.
    pub fn key(&self) -> (usize, Vec<u32>) {
        (self.letters.len(), Self::seq_key(&self.letters))
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, &l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            let idx = (l.unsigned_abs() + 1) / 2;
            let name = match (l.abs() % 2 == 1, l > 0) {
                (true, true) => 'a',
                (true, false) => 'A',
                (false, true) => 'b',
                (false, false) => 'B',
            };
            write!(f, "{name}{idx}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupKind {
    Closed,
    Punctured,
}

/// Conjugacy class data: canonical cyclic representative, primitive root,
/// and the power with root^power = representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyClass {
    pub representative: GroupWord,
    pub root: GroupWord,
    pub power: u32,
}

/// A surface group with its Fuchsian matrix assignment.
///
/// Closed kind: cocompact side pairings of the regular 4p-gon, relator
/// exactly the identity matrix. Punctured kind: the same combinatorics over
/// the regular ideal 4p-gon; the group is free and the relator is parabolic
/// (the puncture loop).
pub struct SurfaceGroup {
    pub genus: u32,
    pub kind: GroupKind,
    ctx: Arc<NumField>,
    gens: Vec<MobiusMap>,
    relator: GroupWord,
    /// All rotations of the relator and of its inverse, for Dehn matching.
    relator_cycles: Vec<Vec<Letter>>,
}

pub fn build_group(genus: u32, kind: GroupKind) -> Result<SurfaceGroup, BuildError> {
    if genus < 2 {
        return Err(BuildError::GenusTooSmall(genus));
    }
    let ctx = NumField::new(genus);
    let poly = match kind {
        GroupKind::Closed => Polygon::Compact,
        GroupKind::Punctured => Polygon::Ideal,
    };
    let mats = ctx.letter_matrices(poly);
    let gens: Vec<MobiusMap> = mats
        .into_iter()
        .enumerate()
        .map(|(i, m)| MobiusMap::new(m, vec![i as Letter + 1]))
        .collect();

    let mut rel = Vec::new();
    for i in 1..=genus as Letter {
        rel.extend_from_slice(&[2 * i - 1, 2 * i, -(2 * i - 1), -(2 * i)]);
    }
    let relator = GroupWord::new(rel);

    let mut relator_cycles = Vec::new();
    for base in [relator.clone(), relator.inverse()] {
        let n = base.len();
        for k in 0..n {
            let mut rot = base.letters()[k..].to_vec();
            rot.extend_from_slice(&base.letters()[..k]);
            relator_cycles.push(rot);
        }
    }
    // Half-prefix uniqueness keeps the swap step in `canonical_word`
    // unambiguous.
    debug_assert_eq!(
        relator_cycles
            .iter()
            .map(|c| c[..c.len() / 2].to_vec())
            .collect::<HashSet<_>>()
            .len(),
        relator_cycles.len()
    );

    let grp = SurfaceGroup {
        genus,
        kind,
        ctx,
        gens,
        relator,
        relator_cycles,
    };

    let rm = grp.matrix(&grp.relator);
    match kind {
        GroupKind::Closed => {
            // The vertex cycle of the compact polygon closes exactly; any
            // failure is a transcription bug, not a precision issue.
            if !rm.mat.is_identity() && !rm.mat.is_neg_identity() {
                return Err(BuildError::Validation(
                    "closed relator matrix is not plus or minus identity".into(),
                ));
            }
            for g in &grp.gens {
                if g.classify(PREC_CAP)? != MapClass::Hyperbolic {
                    return Err(BuildError::Validation(
                        "closed generator is not hyperbolic".into(),
                    ));
                }
            }
        }
        GroupKind::Punctured => {
            if rm.classify(PREC_CAP)? != MapClass::Parabolic {
                return Err(BuildError::Validation(
                    "punctured relator is not parabolic".into(),
                ));
            }
        }
    }
    Ok(grp)
}

impl SurfaceGroup {
    pub fn ctx(&self) -> &Arc<NumField> {
        &self.ctx
    }

    pub fn relator(&self) -> &GroupWord {
        &self.relator
    }

    pub fn generator_count(&self) -> u32 {
        2 * self.genus
    }

    pub fn generator(&self, l: Letter) -> MobiusMap {
        assert!(l != 0 && l.unsigned_abs() as u32 <= 2 * self.genus);
        let base = &self.gens[(l.unsigned_abs() - 1) as usize];
        if l > 0 {
            base.clone()
        } else {
            base.inverse()
        }
    }

    /// Interval-certified matrix of a word; the symbolic recipe is the word
    /// itself, so any precision can be re-derived.
    pub fn matrix(&self, w: &GroupWord) -> MobiusMap {
        let mut m = MobiusMap::identity(&self.ctx);
        for &l in w.letters() {
            m = m.compose(&self.generator(l));
        }
        m
    }

    /// Dehn's algorithm: repeatedly replace any subword longer than half a
    /// relator cycle by the inverse of the complement. Punctured groups are
    /// free, so reduction degenerates to free reduction.
    pub fn dehn_reduce(&self, w: &GroupWord) -> GroupWord {
        let mut cur = w.letters().to_vec();
        if self.kind == GroupKind::Punctured {
            return GroupWord::new(cur);
        }
        let rl = self.relator.len();
        let half = rl / 2;
        'outer: loop {
            cur = free_reduce(&cur);
            for m in ((half + 1)..=rl.min(cur.len())).rev() {
                for start in 0..=(cur.len() - m) {
                    let piece = &cur[start..start + m];
                    for cyc in &self.relator_cycles {
                        if &cyc[..m] == piece {
                            // piece * tail is a relator cycle, so piece
                            // equals tail^-1 in G, which is shorter.
                            let tail: Vec<Letter> =
                                cyc[m..].iter().rev().map(|&l| -l).collect();
                            let mut next = cur[..start].to_vec();
                            next.extend_from_slice(&tail);
                            next.extend_from_slice(&cur[start + m..]);
                            cur = next;
                            continue 'outer;
                        }
                    }
                }
            }
            return GroupWord {
                letters: cur,
            };
        }
    }

    /// Word-problem equality.
    pub fn equal(&self, w1: &GroupWord, w2: &GroupWord) -> bool {
        self.dehn_reduce(&w1.concat(&w2.inverse())).is_empty()
    }

    fn alphabet(&self) -> Vec<Letter> {
        (1..=2 * self.genus as Letter)
            .flat_map(|k| [k, -k])
            .collect()
    }

    /// All freely reduced words of length at most `maxlen`, by length then
    /// letter order. Equal group elements are not deduplicated; callers
    /// that canonicalize downstream (coset keys) want exactly this.
    pub fn free_ball(&self, maxlen: usize) -> Vec<GroupWord> {
        let alphabet = self.alphabet();
        let mut out = vec![GroupWord::empty()];
        let mut layer: Vec<Vec<Letter>> = vec![Vec::new()];
        for _ in 0..maxlen {
            let mut next: Vec<Vec<Letter>> = Vec::new();
            for w in &layer {
                for &l in &alphabet {
                    if w.last() != Some(&-l) {
                        let mut cand = w.clone();
                        cand.push(l);
                        next.push(cand);
                    }
                }
            }
            next.sort_by_key(|w| GroupWord::seq_key(w));
            out.extend(next.iter().map(|w| GroupWord {
                letters: w.clone(),
            }));
            layer = next;
        }
        out
    }

    /// Canonical spelling of the element of `w`: the least geodesic word
    /// under the letter-order key. Geodesic spellings of one element are
    /// connected by exact-half relator swaps (a swap replaces half a relator
    /// cycle by the inverted complement, preserving length), so the swap
    /// closure of any one geodesic spelling contains them all.
    pub fn canonical_word(&self, w: &GroupWord) -> GroupWord {
        let red = self.dehn_reduce(w);
        if self.kind == GroupKind::Punctured {
            return red;
        }
        let half = self.relator.len() / 2;
        let mut seen: HashSet<Vec<Letter>> = HashSet::new();
        let mut queue = vec![red.letters().to_vec()];
        seen.insert(queue[0].clone());
        while let Some(cur) = queue.pop() {
            if cur.len() < half {
                continue;
            }
            for start in 0..=(cur.len() - half) {
                let piece = &cur[start..start + half];
                for cyc in &self.relator_cycles {
                    if &cyc[..half] == piece {
                        let mut next = cur[..start].to_vec();
                        next.extend(cyc[half..].iter().rev().map(|&l| -l));
                        next.extend_from_slice(&cur[start + half..]);
                        // A seam cancellation would shorten a geodesic.
                        debug_assert_eq!(free_reduce(&next).len(), next.len());
                        if seen.insert(next.clone()) {
                            queue.push(next);
                        }
                    }
                }
            }
        }
        let best = seen
            .into_iter()
            .min_by_key(|w| GroupWord::seq_key(w))
            .unwrap();
        GroupWord {
            letters: best,
        }
    }

    /// One element per canonical spelling, reduced length at most `maxlen`,
    /// ordered by length then by letter order. Prefixes of canonical words
    /// are canonical (a swap in a prefix improves the whole word), so
    /// extending kept words letter by letter reaches every element.
    pub fn enumerate(&self, maxlen: usize) -> Vec<GroupWord> {
        let alphabet = self.alphabet();
        let mut out = vec![GroupWord::empty()];
        let mut layer: Vec<Vec<Letter>> = vec![Vec::new()];
        for len in 1..=maxlen {
            let mut kept: Vec<Vec<Letter>> = Vec::new();
            for w in &layer {
                for &l in &alphabet {
                    if w.last() == Some(&-l) {
                        continue;
                    }
                    let mut cand = w.clone();
                    cand.push(l);
                    if self.kind == GroupKind::Closed {
                        let gw = GroupWord {
                            letters: cand.clone(),
                        };
                        if self.dehn_reduce(&gw).len() != len
                            || self.canonical_word(&gw).letters() != &cand[..]
                        {
                            continue;
                        }
                    }
                    kept.push(cand);
                }
            }
            kept.sort_by_key(|w| GroupWord::seq_key(w));
            out.extend(kept.iter().map(|w| GroupWord {
                letters: w.clone(),
            }));
            layer = kept;
        }
        out
    }

    /// Canonical conjugacy data of a nontrivial word.
    pub fn conjugacy_class(&self, w: &GroupWord) -> Result<ConjugacyClass, WordError> {
        let mut cur = self.dehn_reduce(w).letters().to_vec();
        loop {
            cur = free_reduce(&cur);
            if cur.len() >= 2 && cur.first() == cur.last().map(|&l| -l).as_ref() {
                cur = cur[1..cur.len() - 1].to_vec();
            } else {
                break;
            }
        }
        if cur.is_empty() {
            return Err(WordError::IdentityWord);
        }
        let n = cur.len();
        // Primitive root: least rotation period of the cyclic word.
        let mut power = 1u32;
        let mut root_len = n;
        for p in 1..n {
            if n % p == 0 && cur.iter().cycle().skip(p).take(n).eq(cur.iter()) {
                root_len = p;
                power = (n / p) as u32;
                break;
            }
        }
        let root_raw = cur[..root_len].to_vec();
        let representative = Self::least_rotation(&cur);
        let root = Self::least_rotation(&root_raw);
        let rep_word = GroupWord {
            letters: representative,
        };
        let root_word = GroupWord {
            letters: root,
        };
        debug_assert!(self.equal(
            &root_word.pow(power),
            &rep_word
        ) || power == 1);
        Ok(ConjugacyClass {
            representative: rep_word,
            root: root_word,
            power,
        })
    }

    /// Lexicographically least rotation among the word and its inverse.
    fn least_rotation(cyc: &[Letter]) -> Vec<Letter> {
        let inv: Vec<Letter> = cyc.iter().rev().map(|&l| -l).collect();
        let mut best: Option<Vec<Letter>> = None;
        for base in [cyc, &inv[..]] {
            for k in 0..base.len() {
                let mut rot = base[k..].to_vec();
                rot.extend_from_slice(&base[..k]);
                if best
                    .as_ref()
                    .is_none_or(|b| GroupWord::seq_key(&rot) < GroupWord::seq_key(b))
                {
                    best = Some(rot);
                }
            }
        }
        best.unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn closed2() -> SurfaceGroup {
        build_group(2, GroupKind::Closed).unwrap()
    }

    #[test]
    fn parse_and_format_roundtrip() {
        let w = GroupWord::parse("a1 b1 A1 B2 a2", 2).unwrap();
        assert_eq!(w.letters(), &[1, 2, -1, -4, 3]);
        assert_eq!(w.to_string(), "a1 b1 A1 B2 a2");
    }

    #[test]
    fn parse_rejects_bad_tokens() {
        assert!(GroupWord::parse("c1", 2).is_err());
        assert!(GroupWord::parse("a3", 2).is_err());
        assert!(GroupWord::parse("a0", 2).is_err());
        assert!(GroupWord::parse("a", 2).is_err());
    }

    #[test]
    fn genus_one_rejected() {
        assert!(matches!(
            build_group(1, GroupKind::Closed),
            Err(BuildError::GenusTooSmall(1))
        ));
    }

    #[test]
    fn closed_relator_is_identity() {
        let g = closed2();
        let rm = g.matrix(g.relator());
        assert!(rm.mat.is_identity() || rm.mat.is_neg_identity());
    }

    #[test]
    fn punctured_relator_is_parabolic() {
        let g = build_group(2, GroupKind::Punctured).unwrap();
        let rm = g.matrix(g.relator());
        assert_eq!(rm.classify(PREC_CAP).unwrap(), MapClass::Parabolic);
    }

    #[test]
    fn dehn_kills_relator_and_free_pairs() {
        let g = closed2();
        assert!(g.dehn_reduce(&GroupWord::new(vec![1, -1])).is_empty());
        assert!(g.dehn_reduce(g.relator()).is_empty());
        let conj = g.relator().conjugate_by(&GroupWord::new(vec![2, 3]));
        assert!(g.dehn_reduce(&conj).is_empty());
    }

    #[test]
    fn half_relator_identity() {
        // First half of the relator equals the inverted second half in G.
        let g = closed2();
        let u = GroupWord::new(vec![1, 2, -1, -2]);
        let v = GroupWord::new(vec![3, 4, -3, -4]).inverse();
        assert!(g.equal(&u, &v));
        assert_ne!(u, v);
    }

    #[test]
    fn dehn_matrix_cross_check() {
        let g = closed2();
        let w = GroupWord::new(vec![1, 2, 3, 4, -1, -2, -3, -4, 1, 2, -1, 4]);
        let d = g.dehn_reduce(&w);
        assert!(d.len() <= w.len());
        assert!(g.matrix(&w).mat.equals(&g.matrix(&d).mat));
    }

    #[test]
    fn enumerate_ball_counts() {
        let g = closed2();
        assert_eq!(g.enumerate(0).len(), 1);
        assert_eq!(g.enumerate(1).len(), 9);
        assert_eq!(g.enumerate(2).len(), 65);
        assert_eq!(g.enumerate(3).len(), 457);
    }

    #[test]
    fn conjugacy_basics() {
        let g = closed2();
        let c = g
            .conjugacy_class(&GroupWord::parse("a1", 2).unwrap())
            .unwrap();
        assert_eq!(c.root.to_string(), "a1");
        assert_eq!(c.power, 1);

        let c2 = g
            .conjugacy_class(&GroupWord::parse("a1 a1", 2).unwrap())
            .unwrap();
        assert_eq!(c2.root.to_string(), "a1");
        assert_eq!(c2.power, 2);

        let w = GroupWord::parse("B1 a1 b1", 2).unwrap();
        let c3 = g.conjugacy_class(&w).unwrap();
        assert_eq!(c3.representative.to_string(), "a1");

        let conj = GroupWord::parse("a1 b1", 2)
            .unwrap()
            .conjugate_by(&GroupWord::parse("B1", 2).unwrap());
        let c4 = g.conjugacy_class(&conj).unwrap();
        assert_eq!(
            c4.representative,
            g.conjugacy_class(&GroupWord::parse("a1 b1", 2).unwrap())
                .unwrap()
                .representative
        );
    }

    #[test]
    fn identity_word_has_no_class() {
        let g = closed2();
        assert_eq!(
            g.conjugacy_class(&GroupWord::empty()),
            Err(WordError::IdentityWord)
        );
    }
}
