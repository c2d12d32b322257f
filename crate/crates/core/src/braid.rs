//! Artin braid words: handle reduction for the word problem, permutation images and
//! the two-generator form.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::presentation::{Letter, Word};

/// A word in σ_1, …, σ_{n−1}; letters are signed indices, `-2` meaning σ_2⁻¹.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BraidWord {
    pub strands: usize,
    pub letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self> {
        if let Some(bad) = letters.iter().find(|l| **l == 0 || l.unsigned_abs() as usize >= strands) {
            return Err(Error::Invalid(format!("braid letter {bad} out of range for {strands} strands")));
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn inverse(&self) -> Self {
        BraidWord { strands: self.strands, letters: self.letters.iter().rev().map(|l| -l).collect() }
    }

    pub fn mul(&self, other: &BraidWord) -> Self {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        BraidWord { strands: self.strands.max(other.strands), letters }
    }

    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(|l| l.signum() as i64).sum()
    }
}

impl std::fmt::Display for BraidWord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> =
            self.letters.iter().map(|l| if *l > 0 { format!("s{l}") } else { format!("s{}^-1", -l) }).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Image in the symmetric group: `perm[k]` is where strand k ends.
pub fn permutation_image(w: &BraidWord) -> Vec<usize> {
    let mut at: Vec<usize> = (0..w.strands).collect();
    for l in &w.letters {
        let i = l.unsigned_abs() as usize - 1;
        at.swap(i, i + 1);
    }
    let mut perm = vec![0; w.strands];
    for (pos, strand) in at.iter().enumerate() {
        perm[*strand] = pos;
    }
    perm
}

/// Outcome of the word problem.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Trivial,
    NonTrivial,
    /// The step cap was reached before the word became handle free.
    Undecided,
}

fn free_reduce(letters: &mut Vec<i32>) {
    let mut out: Vec<i32> = Vec::with_capacity(letters.len());
    for &l in letters.iter() {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    *letters = out;
}

/// Leftmost-ending handle `σ_i^e … σ_i^{−e}` with only letters of index above i inside.
fn first_handle(w: &[i32]) -> Option<(usize, usize)> {
    // For each index, position of the latest letter with no smaller-or-equal index after it.
    let top = w.iter().map(|l| l.unsigned_abs()).max()? as usize;
    let mut open: Vec<Option<usize>> = vec![None; top + 1];
    for (r, &l) in w.iter().enumerate() {
        let i = l.unsigned_abs() as usize;
        if let Some(p) = open[i] {
            if w[p] == -l {
                return Some((p, r));
            }
        }
        open[i] = Some(r);
        for slot in open.iter_mut().skip(i + 1) {
            *slot = None;
        }
    }
    None
}

/// Runs handle reduction until no handle remains or `cap` reductions were spent.
pub fn handle_reduce(w: &BraidWord, cap: u64) -> (BraidWord, bool) {
    let mut letters = w.letters.clone();
    free_reduce(&mut letters);
    let mut spent = 0u64;
    while let Some((p, r)) = first_handle(&letters) {
        if spent >= cap {
            return (BraidWord { strands: w.strands, letters }, false);
        }
        spent += 1;
        let e = letters[p].signum();
        let i = letters[p].abs();
        let mut middle = Vec::with_capacity(r - p);
        for &l in &letters[p + 1..r] {
            if l.abs() == i + 1 {
                middle.extend_from_slice(&[-e * (i + 1), l.signum() * i, e * (i + 1)]);
            } else {
                middle.push(l);
            }
        }
        let mut next = letters[..p].to_vec();
        next.extend(middle);
        next.extend_from_slice(&letters[r + 1..]);
        free_reduce(&mut next);
        letters = next;
    }
    (BraidWord { strands: w.strands, letters }, true)
}

/// Decides triviality; cheap invariants first, then handle reduction.
pub fn word_problem(w: &BraidWord) -> Verdict {
    if w.exponent_sum() != 0 || permutation_image(w).iter().enumerate().any(|(k, p)| k != *p) {
        return Verdict::NonTrivial;
    }
    let cap = crate::budget("HANDLE", 10_000_000);
    match handle_reduce(w, cap) {
        (r, true) if r.letters.is_empty() => Verdict::Trivial,
        (_, true) => Verdict::NonTrivial,
        (_, false) => Verdict::Undecided,
    }
}

/// True iff `w` is the identity braid. Panics never; undecided words are an error.
pub fn is_trivial_braid(w: &BraidWord) -> Result<bool> {
    match word_problem(w) {
        Verdict::Trivial => Ok(true),
        Verdict::NonTrivial => Ok(false),
        Verdict::Undecided => Err(Error::Budget(crate::budget("HANDLE", 10_000_000))),
    }
}

/// Rewrites over {σ_1 = generator 0, δ = σ_1⋯σ_{n−1} = generator 1} using σ_{i+1} = δ^i σ_1 δ^{−i}.
pub fn artin_two_generator_rewrite(w: &BraidWord) -> Word {
    let letters = w.letters.iter().flat_map(|l| {
        let i = l.unsigned_abs() as usize - 1;
        let d = |inv| Letter { gen: 1, inv };
        std::iter::repeat_n(d(false), i)
            .chain(std::iter::once(Letter { gen: 0, inv: *l < 0 }))
            .chain(std::iter::repeat_n(d(true), i))
            .collect::<Vec<_>>()
    });
    Word::new(letters)
}

/// Expands a word over {σ_1, δ} back into Artin letters.
pub fn expand_two_generator(w: &Word, strands: usize) -> BraidWord {
    let delta: Vec<i32> = (1..strands as i32).collect();
    let mut letters = Vec::new();
    for l in w.letters() {
        match (l.gen, l.inv) {
            (0, inv) => letters.push(if inv { -1 } else { 1 }),
            (_, false) => letters.extend_from_slice(&delta),
            (_, true) => letters.extend(delta.iter().rev().map(|x| -x)),
        }
    }
    BraidWord { strands, letters }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn b(n: usize, l: &[i32]) -> BraidWord {
        BraidWord::new(n, l.to_vec()).unwrap()
    }

    #[test]
    fn braid_relation_is_trivial() {
        assert!(is_trivial_braid(&b(3, &[1, 2, 1, -2, -1, -2])).unwrap());
        assert!(is_trivial_braid(&b(4, &[1, 3, -1, -3])).unwrap());
        assert!(is_trivial_braid(&b(3, &[])).unwrap());
    }

    #[test]
    fn nontrivial_words() {
        assert!(!is_trivial_braid(&b(2, &[1, 1])).unwrap());
        assert!(!is_trivial_braid(&b(3, &[1, 2, -1, -2])).unwrap());
        // pure braid with zero exponent sum: the commutator of σ_1² and σ_2²
        assert!(!is_trivial_braid(&b(3, &[1, 1, 2, 2, -1, -1, -2, -2])).unwrap());
    }

    #[test]
    fn handle_step_matches_braid_relation() {
        let (r, done) = handle_reduce(&b(3, &[1, 2, -1]), 10);
        assert!(done);
        assert_eq!(r.letters, vec![-2, 1, 2]);
    }

    #[test]
    fn permutations() {
        assert_eq!(permutation_image(&b(2, &[])), vec![0, 1]);
        assert_eq!(permutation_image(&b(2, &[1])), vec![1, 0]);
        let p = permutation_image(&b(3, &[1, 2]));
        assert!(p.iter().enumerate().all(|(k, x)| k != *x));
    }

    #[test]
    fn two_generator_form() {
        let w = artin_two_generator_rewrite(&b(3, &[2]));
        assert_eq!(w.to_signed(), vec![2, 1, -2]);
        assert_eq!(artin_two_generator_rewrite(&b(3, &[1])).to_signed(), vec![1]);
    }

    #[test]
    fn two_generator_relations_hold() {
        // σ_1 δ σ_1 δ⁻¹ σ_1 = δ σ_1 δ⁻¹ σ_1 δ σ_1 δ⁻¹ and σ_1 commutes with δ^i σ_1 δ^{−i} for i ≥ 2
        for n in 3..=6 {
            let rel = Word::from_signed(&[1, 2, 1, -2, 1, 2, -1, -2, -1, 2, -1, -2]).unwrap();
            assert!(is_trivial_braid(&expand_two_generator(&rel, n)).unwrap());
            for i in 2..n - 1 {
                let conj: Vec<i64> = std::iter::repeat_n(2, i).chain([1]).chain(std::iter::repeat_n(-2, i)).collect();
                let c = Word::from_signed(&conj).unwrap();
                let comm = Word::gen(0).mul(&c).mul(&Word::gen(0).inverse()).mul(&c.inverse());
                assert!(is_trivial_braid(&expand_two_generator(&comm, n)).unwrap());
            }
        }
    }

    proptest! {
        #[test]
        fn word_times_inverse(n in 2usize..=5, raw in proptest::collection::vec((1i32..5, any::<bool>()), 0..24)) {
            let letters: Vec<i32> = raw.iter().map(|(i, s)| { let i = (i - 1) % (n as i32 - 1) + 1; if *s { i } else { -i } }).collect();
            let w = BraidWord::new(n, letters).unwrap();
            prop_assert!(is_trivial_braid(&w.mul(&w.inverse())).unwrap());
            let back = expand_two_generator(&artin_two_generator_rewrite(&w), n);
            prop_assert!(is_trivial_braid(&w.mul(&back.inverse())).unwrap());
        }
    }
}
