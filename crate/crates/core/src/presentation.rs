//! Free-group words, finite presentations and Tietze simplification.

use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::snf::{abelian_invariants, AbelianInvariants};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter {
    pub gen: usize,
    pub inv: bool,
}

impl Letter {
    pub fn new(gen: usize, inv: bool) -> Self {
        Letter { gen, inv }
    }

    pub fn inverse(self) -> Self {
        Letter { gen: self.gen, inv: !self.inv }
    }

    fn cancels(self, other: Letter) -> bool {
        self.gen == other.gen && self.inv != other.inv
    }
}

/// A freely reduced word.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

/// Free reduction of a letter sequence.
pub fn free_reduce(letters: &[Letter]) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::with_capacity(letters.len());
    for &l in letters {
        match out.last() {
            Some(&last) if last.cancels(l) => {
                out.pop();
            }
            _ => out.push(l),
        }
    }
    out
}

impl Word {
    pub fn new(letters: impl IntoIterator<Item = Letter>) -> Self {
        let raw: Vec<Letter> = letters.into_iter().collect();
        Word(free_reduce(&raw))
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn gen(g: usize) -> Self {
        Word(vec![Letter::new(g, false)])
    }

    /// From signed 1-based integers: 3 is the third generator, -3 its inverse.
    pub fn from_signed(ints: &[i64]) -> Result<Self> {
        ints.iter()
            .map(|&x| {
                if x == 0 {
                    Err(Error::Parse("generator index 0 in signed word".into()))
                } else {
                    Ok(Letter::new(x.unsigned_abs() as usize - 1, x < 0))
                }
            })
            .collect::<Result<Vec<_>>>()
            .map(Word::new)
    }

    /// Parses `a b^-1 c` against a name table; `1` is the empty word.
    pub fn parse(text: &str, names: &[String]) -> Result<Self> {
        let mut letters = Vec::new();
        for tok in text.split_whitespace() {
            if tok == "1" {
                continue;
            }
            let (name, inv) = match tok.strip_suffix("^-1") {
                Some(base) => (base, true),
                None => (tok, false),
            };
            let g = names
                .iter()
                .position(|n| n == name)
                .ok_or_else(|| Error::Parse(format!("unknown generator `{name}` in word")))?;
            letters.push(Letter::new(g, inv));
        }
        Ok(Word::new(letters))
    }

    pub fn to_signed(&self) -> Vec<i64> {
        self.0.iter().map(|l| if l.inv { -(l.gen as i64 + 1) } else { l.gen as i64 + 1 }).collect()
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
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn mul(&self, other: &Word) -> Word {
        let mut out = self.0.clone();
        for &l in &other.0 {
            match out.last() {
                Some(&last) if last.cancels(l) => {
                    out.pop();
                }
                _ => out.push(l),
            }
        }
        Word(out)
    }

    pub fn product<'a>(words: impl IntoIterator<Item = &'a Word>) -> Word {
        words.into_iter().fold(Word::empty(), |acc, w| acc.mul(w))
    }

    /// Strips inverse pairs from the two ends.
    pub fn cyclic_reduce(&self) -> Word {
        let w = &self.0;
        let (mut i, mut j) = (0, w.len());
        while j >= i + 2 && w[i].cancels(w[j - 1]) {
            i += 1;
            j -= 1;
        }
        Word(w[i..j].to_vec())
    }

    pub fn rotate(&self, k: usize) -> Word {
        let mut v = self.0.clone();
        if !v.is_empty() {
            let k = k % v.len();
            v.rotate_left(k);
        }
        Word::new(v)
    }

    /// Least rotation of the cyclic reduction of this word or its inverse.
    pub fn canonical_cyclic(&self) -> Word {
        let base = self.cyclic_reduce();
        let inv = base.inverse();
        let mut best: Option<Vec<Letter>> = None;
        for w in [&base, &inv] {
            for k in 0..w.len().max(1) {
                let mut v = w.0.clone();
                if !v.is_empty() {
                    v.rotate_left(k);
                }
                if best.as_ref().is_none_or(|b| v < *b) {
                    best = Some(v);
                }
            }
        }
        Word(best.unwrap_or_default())
    }

    /// Equal as cyclic words up to inversion.
    pub fn cyclically_equivalent(&self, other: &Word) -> bool {
        self.canonical_cyclic() == other.canonical_cyclic()
    }

    pub fn substitute(&self, f: &impl Fn(usize) -> Word) -> Word {
        let mut out = Word::empty();
        for l in &self.0 {
            let w = f(l.gen);
            out = out.mul(&if l.inv { w.inverse() } else { w });
        }
        out
    }

    pub fn occurrences(&self, g: usize) -> usize {
        self.0.iter().filter(|l| l.gen == g).count()
    }

    pub fn exponent_sums(&self, gens: usize) -> Vec<i64> {
        let mut v = vec![0i64; gens];
        for l in &self.0 {
            v[l.gen] += if l.inv { -1 } else { 1 };
        }
        v
    }

    pub fn generators(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().map(|l| l.gen)
    }

    pub fn display(&self, names: &[String]) -> String {
        if self.0.is_empty() {
            return "1".into();
        }
        self.0
            .iter()
            .map(|l| if l.inv { format!("{}^-1", names[l.gen]) } else { names[l.gen].clone() })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..=self.0.iter().map(|l| l.gen).max().unwrap_or(0)).map(|i| format!("g{i}")).collect();
        write!(f, "{}", self.display(&names))
    }
}

/// Generators (by name) and relators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub names: Vec<String>,
    pub relators: Vec<Word>,
}

#[derive(Serialize, Deserialize)]
struct PresentationJson {
    generators: Vec<String>,
    relators: Vec<Vec<i64>>,
}

/// Kill/identify request for [`quotient_and_identify`].
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct QuotientSpec {
    #[serde(default)]
    pub kill: Vec<String>,
    #[serde(default)]
    pub identify: Vec<[String; 2]>,
}

impl Presentation {
    /// Relators are cyclically reduced; trivial ones are kept out.
    pub fn new(names: Vec<String>, relators: Vec<Word>) -> Self {
        let relators = relators.into_iter().map(|r| r.cyclic_reduce()).filter(|r| !r.is_empty()).collect();
        Presentation { names, relators }
    }

    pub fn free(names: Vec<String>) -> Self {
        Presentation { names, relators: Vec::new() }
    }

    pub fn generator_count(&self) -> usize {
        self.names.len()
    }

    pub fn relator_count(&self) -> usize {
        self.relators.len()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn abelianization(&self) -> AbelianInvariants {
        let rows: Vec<Vec<i64>> = self.relators.iter().map(|r| r.exponent_sums(self.names.len())).collect();
        abelian_invariants(&rows, self.names.len())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(PresentationJson {
            generators: self.names.clone(),
            relators: self.relators.iter().map(Word::to_signed).collect(),
        })
        .expect("serializable")
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let raw: PresentationJson = serde_json::from_str(text)?;
        let relators = raw
            .relators
            .iter()
            .map(|r| {
                let w = Word::from_signed(r)?;
                if w.generators().any(|g| g >= raw.generators.len()) {
                    return Err(Error::Parse("relator uses an undeclared generator".into()));
                }
                Ok(w)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Presentation::new(raw.generators, relators))
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("< {} |", self.names.join(", "));
        let rels: Vec<String> = self.relators.iter().map(|r| r.display(&self.names)).collect();
        if !rels.is_empty() {
            s.push(' ');
            s.push_str(&rels.join(", "));
        }
        s.push_str(" >");
        s
    }
}

/// Knobs for [`tietze_simplify_with`].
#[derive(Clone, Debug)]
pub struct TietzeOptions {
    pub budget: u64,
    /// Per-generator weight; low weights are eliminated first.
    pub keep: Option<Vec<i64>>,
    /// Substitutions may grow the longest relator by at most this factor.
    pub growth_cap: usize,
}

impl Default for TietzeOptions {
    fn default() -> Self {
        TietzeOptions { budget: crate::budget("TIETZE", 100_000), keep: None, growth_cap: 64 }
    }
}

/// Result of Tietze simplification.
#[derive(Clone, Debug)]
pub struct Simplified {
    pub presentation: Presentation,
    /// Each input generator written in the output generators.
    pub expressions: Vec<Word>,
    pub steps: u64,
    pub exhausted: bool,
}

pub fn tietze_simplify(p: &Presentation, budget: u64) -> Simplified {
    tietze_simplify_with(p, &TietzeOptions { budget, ..Default::default() })
}

pub fn tietze_simplify_with(p: &Presentation, opts: &TietzeOptions) -> Simplified {
    let ng = p.names.len();
    let keep = opts.keep.clone().unwrap_or_else(|| vec![0; ng]);
    let mut alive = vec![true; ng];
    let mut expr: Vec<Word> = (0..ng).map(Word::gen).collect();
    let mut rels: Vec<Word> = p.relators.clone();
    let mut steps = 0u64;
    let mut exhausted = false;
    loop {
        normalize(&mut rels);
        if steps >= opts.budget {
            exhausted = true;
            break;
        }
        steps += 1;
        if eliminate_one(&mut rels, &mut alive, &mut expr, &keep, opts.growth_cap) {
            continue;
        }
        if shorten_one(&mut rels) {
            continue;
        }
        break;
    }
    // Renumber surviving generators.
    let mut map = vec![usize::MAX; ng];
    let mut names = Vec::new();
    for g in 0..ng {
        if alive[g] {
            map[g] = names.len();
            names.push(p.names[g].clone());
        }
    }
    let rename = |w: &Word| Word::new(w.letters().iter().map(|l| Letter::new(map[l.gen], l.inv)));
    Simplified {
        presentation: Presentation::new(names, rels.iter().map(rename).collect()),
        expressions: expr.iter().map(rename).collect(),
        steps,
        exhausted,
    }
}

fn normalize(rels: &mut Vec<Word>) {
    let mut seen = HashSet::new();
    let old = std::mem::take(rels);
    for r in old {
        let r = r.cyclic_reduce();
        if r.is_empty() {
            continue;
        }
        if seen.insert(r.canonical_cyclic()) {
            rels.push(r);
        }
    }
}

/// Eliminates one generator that occurs exactly once in some relator.
fn eliminate_one(rels: &mut Vec<Word>, alive: &mut [bool], expr: &mut [Word], keep: &[i64], cap: usize) -> bool {
    let max_before = rels.iter().map(Word::len).max().unwrap_or(1).max(1);
    let mut order: Vec<usize> = (0..alive.len()).filter(|g| alive[*g]).collect();
    order.sort_by_key(|g| (keep[*g], *g));
    for g in order {
        let mut holders: Vec<usize> = (0..rels.len()).filter(|i| rels[*i].occurrences(g) == 1).collect();
        holders.sort_by_key(|i| (rels[*i].len(), *i));
        for ri in holders {
            let r = rels[ri].letters();
            let pos = r.iter().position(|l| l.gen == g).unwrap();
            let before = Word::new(r[..pos].iter().copied());
            let after = Word::new(r[pos + 1..].iter().copied());
            // before · g^ε · after = 1
            let value = if r[pos].inv { after.mul(&before) } else { before.inverse().mul(&after.inverse()) };
            let sub = |x: usize| if x == g { value.clone() } else { Word::gen(x) };
            let new_rels: Vec<Word> =
                rels.iter().enumerate().filter(|(i, _)| *i != ri).map(|(_, w)| w.substitute(&sub).cyclic_reduce()).collect();
            if new_rels.iter().map(Word::len).max().unwrap_or(0) > cap * max_before {
                continue;
            }
            *rels = new_rels;
            for e in expr.iter_mut() {
                if e.occurrences(g) > 0 {
                    *e = e.substitute(&sub);
                }
            }
            alive[g] = false;
            return true;
        }
    }
    false
}

/// Replaces a long piece of one relator by the short complement of another.
fn shorten_one(rels: &mut [Word]) -> bool {
    for j in 0..rels.len() {
        let m = rels[j].len();
        if m == 0 {
            continue;
        }
        for i in 0..rels.len() {
            if i == j || rels[i].len() < m / 2 + 1 {
                continue;
            }
            let target = rels[i].letters().to_vec();
            let tl = target.len();
            for src in [rels[j].clone(), rels[j].inverse()] {
                for k in 0..m {
                    let mut s = src.letters().to_vec();
                    s.rotate_left(k);
                    for len in (m / 2 + 1..=m.min(tl)).rev() {
                        if 2 * len <= m {
                            break;
                        }
                        let (u, v) = s.split_at(len);
                        if let Some(p) = (0..tl).find(|&p| (0..len).all(|q| target[(p + q) % tl] == u[q])) {
                            let mut rest: Vec<Letter> = (0..tl - len).map(|q| target[(p + len + q) % tl]).collect();
                            let replacement: Vec<Letter> = v.iter().rev().map(|l| l.inverse()).collect();
                            let mut new = replacement;
                            new.append(&mut rest);
                            let new = Word::new(new).cyclic_reduce();
                            if new.len() < tl {
                                rels[i] = new;
                                return true;
                            }
                        }
                    }
                }
            }
        }
    }
    false
}

/// Kills and identifies generators (by name), then simplifies.
pub fn quotient_and_identify(p: &Presentation, spec: &QuotientSpec, opts: &TietzeOptions) -> Result<Simplified> {
    let raw = quotient_raw(p, spec)?;
    Ok(tietze_simplify_with(&raw.0, opts))
}

/// Kill/identify without simplification; also returns where each input generator went.
pub fn quotient_raw(p: &Presentation, spec: &QuotientSpec) -> Result<(Presentation, Vec<Word>)> {
    let idx = |n: &str| p.index_of(n).ok_or_else(|| Error::Invalid(format!("unknown generator `{n}`")));
    let ng = p.generator_count();
    let mut parent: Vec<usize> = (0..ng).collect();
    fn root(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        parent[x] = r;
        r
    }
    for [a, b] in &spec.identify {
        let (a, b) = (idx(a)?, idx(b)?);
        let (ra, rb) = (root(&mut parent, a), root(&mut parent, b));
        if ra != rb {
            parent[ra.max(rb)] = ra.min(rb);
        }
    }
    let mut killed = HashSet::new();
    for k in &spec.kill {
        let g = idx(k)?;
        killed.insert(root(&mut parent, g));
    }
    let mut new_index: HashMap<usize, usize> = HashMap::new();
    let mut names = Vec::new();
    for g in 0..ng {
        let r = root(&mut parent, g);
        if r == g && !killed.contains(&r) {
            new_index.insert(g, names.len());
            names.push(p.names[g].clone());
        }
    }
    let image: Vec<Word> = (0..ng)
        .map(|g| {
            let r = root(&mut parent, g);
            if killed.contains(&r) {
                Word::empty()
            } else {
                Word::gen(new_index[&r])
            }
        })
        .collect();
    let relators = p.relators.iter().map(|w| w.substitute(&|g| image[g].clone())).collect();
    Ok((Presentation::new(names, relators), image))
}

/// How [`certify_trivial`] established that a word dies in the group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Certificate {
    /// Freely (hence cyclically) trivial.
    Free,
    /// A cyclic permutation of this relator or its inverse.
    Relator(usize),
    /// Reduced to the empty word by this many relator substitutions.
    Derived(usize),
    /// The search ran out of budget; nothing is claimed.
    Unknown,
}

impl Certificate {
    pub fn is_trivial(self) -> bool {
        !matches!(self, Certificate::Unknown)
    }
}

/// Searches for a proof that `w` is trivial modulo `relators`.
///
/// Works on cyclic words, which is enough since a word is trivial iff its conjugates are.
/// Each step replaces a cyclic subword `u` by `v⁻¹` where `u v` is a rotation of a relator
/// or its inverse; the search is best-first on length and may grow a word by at most
/// `slack` letters over the input. A negative answer is never given.
pub fn certify_trivial(w: &Word, relators: &[Word], budget: u64, slack: usize) -> Certificate {
    let start = w.cyclic_reduce();
    if start.is_empty() {
        return Certificate::Free;
    }
    let key = start.canonical_cyclic();
    if let Some(i) = relators.iter().position(|r| r.canonical_cyclic() == key) {
        return Certificate::Relator(i);
    }
    let mut cycles: Vec<Vec<Letter>> = Vec::new();
    for r in relators.iter().map(Word::cyclic_reduce).filter(|r| !r.is_empty()) {
        for base in [r.clone(), r.inverse()] {
            for k in 0..base.len() {
                let mut v = base.0.clone();
                v.rotate_left(k);
                cycles.push(v);
            }
        }
    }
    let limit = start.len() + slack;
    let mut seen: HashSet<Word> = HashSet::from([key.clone()]);
    let mut heap = std::collections::BinaryHeap::new();
    heap.push(std::cmp::Reverse((start.len(), 0usize, start.0.clone())));
    let mut spent = 0u64;
    while let Some(std::cmp::Reverse((_, depth, cur))) = heap.pop() {
        let n = cur.len();
        for rot in 0..n {
            let mut c = cur.clone();
            c.rotate_left(rot);
            for rel in &cycles {
                let m = rel.iter().zip(&c).take_while(|(a, b)| a == b).count();
                // Keep the substitution from lengthening by more than two letters.
                if m == 0 || 2 * m + 2 < rel.len() {
                    continue;
                }
                spent += 1;
                if spent > budget {
                    return Certificate::Unknown;
                }
                let mut next: Vec<Letter> = rel[m..].iter().rev().map(|l| l.inverse()).collect();
                next.extend_from_slice(&c[m..]);
                let next = Word::new(next).cyclic_reduce();
                if next.is_empty() {
                    return Certificate::Derived(depth + 1);
                }
                if next.len() > limit {
                    continue;
                }
                if seen.insert(next.canonical_cyclic()) {
                    heap.push(std::cmp::Reverse((next.len(), depth + 1, next.0)));
                }
            }
        }
    }
    Certificate::Unknown
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(ints: &[i64]) -> Word {
        Word::from_signed(ints).unwrap()
    }

    #[test]
    fn free_reduction_examples() {
        assert!(w(&[1, -1]).is_empty());
        assert!(w(&[]).is_empty());
        assert_eq!(w(&[1, 2, -2, 1]), w(&[1, 1]));
    }

    #[test]
    fn cyclic_forms() {
        assert_eq!(w(&[2, 1, 3, -2]).cyclic_reduce(), w(&[1, 3]));
        assert!(w(&[1, 2, 3]).cyclically_equivalent(&w(&[3, 1, 2])));
        assert!(w(&[1, 2, 3]).cyclically_equivalent(&w(&[-2, -1, -3])));
        assert!(!w(&[1, 2, 3]).cyclically_equivalent(&w(&[1, 3, 2])));
    }

    #[test]
    fn kill_relator_generator() {
        let p = Presentation::new(vec!["a".into(), "b".into()], vec![w(&[2])]);
        let s = tietze_simplify(&p, 100);
        assert_eq!(s.presentation.names, vec!["a".to_string()]);
        assert_eq!(s.presentation.relator_count(), 0);
    }

    #[test]
    fn free_presentation_is_fixed() {
        let p = Presentation::free(vec!["a".into(), "b".into()]);
        let s = tietze_simplify(&p, 100);
        assert_eq!(s.presentation, p);
    }

    #[test]
    fn cyclic_group_survives() {
        let p = Presentation::new(vec!["a".into()], vec![w(&[1, 1, 1])]);
        let s = tietze_simplify(&p, 100);
        assert_eq!(s.presentation.relator_count(), 1);
        assert_eq!(s.presentation.abelianization().torsion, vec!["3".to_string()]);
    }

    #[test]
    fn expressions_track_eliminations() {
        // a c b^-1 = 1: a goes first and is rewritten as b c^-1.
        let p = Presentation::new(vec!["a".into(), "b".into(), "c".into()], vec![w(&[1, 3, -2])]);
        let s = tietze_simplify(&p, 100);
        assert_eq!(s.presentation.names, vec!["b".to_string(), "c".to_string()]);
        assert_eq!(s.expressions[0], w(&[1, -2]));
        assert_eq!(s.expressions[1], w(&[1]));
    }

    #[test]
    fn quotient_kills_and_merges() {
        let p = Presentation::new(vec!["a".into(), "b".into(), "c".into()], vec![w(&[1, 2, -1, -2])]);
        let spec = QuotientSpec { kill: vec!["c".into()], identify: vec![["a".into(), "b".into()]] };
        let s = quotient_and_identify(&p, &spec, &TietzeOptions::default()).unwrap();
        assert_eq!(s.presentation.generator_count(), 1);
        assert_eq!(s.presentation.relator_count(), 0);
        let bad = QuotientSpec { kill: vec!["z".into()], identify: vec![] };
        assert!(quotient_and_identify(&p, &bad, &TietzeOptions::default()).is_err());
    }

    #[test]
    fn shortening_uses_overlap() {
        // r1 = a b c, r2 = a b c d e: r2 shrinks to d e, then both go.
        let p = Presentation::new(
            vec!["a".into(), "b".into(), "c".into(), "d".into(), "e".into()],
            vec![w(&[1, 2, 3]), w(&[1, 2, 3, 4, 5])],
        );
        let before = p.abelianization();
        let s = tietze_simplify(&p, 100);
        assert_eq!(s.presentation.abelianization(), before);
        assert_eq!(s.presentation.relator_count(), 0);
    }

    #[test]
    fn json_round_trip() {
        let p = Presentation::new(vec!["x".into(), "y".into()], vec![w(&[1, 2, -1, -2])]);
        let back = Presentation::from_json_str(&p.to_json().to_string()).unwrap();
        assert_eq!(back, p);
        assert_eq!(p.to_text(), "< x, y | x y x^-1 y^-1 >");
    }

    #[test]
    fn certifies_consequences() {
        let comm = w(&[1, 2, -1, -2]);
        assert_eq!(certify_trivial(&w(&[1, -1]), &[], 100, 0), Certificate::Free);
        assert_eq!(certify_trivial(&w(&[2, 1, -2, -1]), &[comm.clone()], 100, 0), Certificate::Relator(0));
        // a² b a⁻² b⁻¹ follows from [a, b] = 1
        assert!(certify_trivial(&w(&[1, 1, 2, -1, -1, -2]), &[comm.clone()], 10_000, 2).is_trivial());
        // a b alone is not a consequence; the search gives up rather than lying
        assert_eq!(certify_trivial(&w(&[1, 2]), &[comm], 10_000, 2), Certificate::Unknown);
    }

    proptest! {
        #[test]
        fn free_reduce_idempotent(v in proptest::collection::vec((0usize..3, any::<bool>()), 0..30)) {
            let letters: Vec<Letter> = v.into_iter().map(|(g, i)| Letter::new(g, i)).collect();
            let once = free_reduce(&letters);
            prop_assert_eq!(free_reduce(&once), once.clone());
            prop_assert!(once.len() <= letters.len());
        }

        #[test]
        fn inverse_cancels(v in proptest::collection::vec((0usize..4, any::<bool>()), 0..30)) {
            let word = Word::new(v.into_iter().map(|(g, i)| Letter::new(g, i)));
            prop_assert!(word.mul(&word.inverse()).is_empty());
        }
    }
}
