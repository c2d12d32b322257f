//! Reproduction of the bundled three-particle presentation of the four-edge theta graph.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::fixtures::{load, tree_options};
use crate::geometric::{critical_to_geometric, display_letters, normalize};
use crate::morse::{generator_weights, MorseComplex};
use crate::presentation::{tietze_simplify_with, Presentation, Simplified, TietzeOptions, Word};
use crate::reference::{
    theta4_names, THETA4_DICTIONARY, THETA4_GENERATORS, THETA4_REDUCED_GENERATORS, THETA4_REDUCED_RELATOR,
    THETA4_RELATORS,
};
use crate::theta::{pseudo_braid_check, PseudoBraidReport};
use crate::tree::{build_rooted_spanning_tree, Label, RootedSpanningTree};

pub const FIXTURE: &str = "theta4_appendix";
pub const PARTICLES: usize = 3;
/// Label of the essential vertex nearest the root in the bundled tree.
pub const NEAR_VERTEX: Label = 2;

pub fn tree() -> Result<RootedSpanningTree> {
    let f = load(FIXTURE)?;
    build_rooted_spanning_tree(&f.graph, &tree_options(&f).particles(PARTICLES))
}

/// Outcome of every comparison against the reference data.
#[derive(Clone, Debug, Serialize)]
pub struct AppendixReport {
    pub generators: usize,
    pub relators: usize,
    /// Reference generators with no critical cell of the same notation.
    pub unmatched_generators: Vec<String>,
    /// Reference 2-cells with no critical cell on the same edges and vertex.
    pub unmatched_relators: Vec<String>,
    /// Matched 2-cells whose boundary word differs after relabeling.
    pub differing_words: Vec<String>,
    pub reduced_generators: usize,
    pub reduced_relators: usize,
    /// Survivors of simplification, in reference names.
    pub survivors: Vec<String>,
    pub relator: String,
    pub relator_matches: bool,
    /// Reference dictionary entries whose cell reads differently.
    pub dictionary_mismatches: Vec<String>,
}

impl AppendixReport {
    pub fn passes(&self) -> bool {
        let mut survivors = self.survivors.clone();
        let mut expected: Vec<String> = THETA4_REDUCED_GENERATORS.iter().map(|s| s.to_string()).collect();
        survivors.sort();
        expected.sort();
        self.generators == THETA4_GENERATORS.len()
            && self.relators == THETA4_RELATORS.len()
            && self.unmatched_generators.is_empty()
            && self.unmatched_relators.is_empty()
            && self.differing_words.is_empty()
            && self.reduced_generators == 6
            && self.reduced_relators == 1
            && survivors == expected
            && self.relator_matches
            && self.dictionary_mismatches.is_empty()
    }

    pub fn summary(&self) -> String {
        format!(
            "{} generators, {} relators, reduced {}/{}",
            self.generators, self.relators, self.reduced_generators, self.reduced_relators
        )
    }
}

/// Cell notation as a sorted part list, shifting the vertex entry of a 2-cell by `shift`.
fn notation_key(s: &str, shift: i64) -> Result<Vec<String>> {
    let inner = s.strip_prefix('{').and_then(|r| r.strip_suffix('}')).ok_or_else(|| Error::Parse(s.into()))?;
    let mut parts: Vec<String> = inner
        .split(',')
        .map(|p| match p.parse::<i64>() {
            Ok(v) => Ok((v + shift).to_string()),
            Err(_) if p.starts_with('e') => Ok(p.to_string()),
            Err(_) => Err(Error::Parse(s.into())),
        })
        .collect::<Result<_>>()?;
    parts.sort();
    Ok(parts)
}

/// Simplification keeping loop cells and low cells, as used for the one-relator form.
pub fn simplify(mc: &mut MorseComplex<'_>) -> Result<(Presentation, Simplified)> {
    let cells = mc.critical_1_cells().to_vec();
    let names: Vec<String> = cells.iter().map(|c| c.notation(mc.tree())).collect();
    let p = Presentation::new(names, mc.relators()?);
    let opts = TietzeOptions { keep: Some(generator_weights(mc.tree(), &cells)), ..Default::default() };
    let s = tietze_simplify_with(&p, &opts);
    Ok((p, s))
}

pub fn verify_appendix(exec: Exec) -> Result<AppendixReport> {
    let t = tree()?;
    let mut mc = MorseComplex::with(&t, PARTICLES, exec)?;
    let ours: Vec<String> = mc.critical_1_cells().iter().map(|c| c.notation(&t)).collect();
    let twos: Vec<Vec<String>> =
        mc.critical_2_cells().iter().map(|c| notation_key(&c.notation(&t), 0)).collect::<Result<_>>()?;
    let relators = mc.relators()?;

    // reference index -> our index
    let mut to_ours = vec![None; THETA4_GENERATORS.len()];
    let mut unmatched_generators = Vec::new();
    for (i, g) in THETA4_GENERATORS.iter().enumerate() {
        match ours.iter().position(|o| o == g) {
            Some(j) => to_ours[i] = Some(j),
            None => unmatched_generators.push(format!("g{i} {g}")),
        }
    }
    let to_ref: HashMap<usize, usize> = to_ours.iter().enumerate().filter_map(|(i, j)| j.map(|j| (j, i))).collect();
    let ref_names = theta4_names();
    let relabel = |w: &Word| -> Option<Word> {
        let letters: Option<Vec<_>> = w
            .letters()
            .iter()
            .map(|l| to_ref.get(&l.gen).map(|g| crate::presentation::Letter::new(*g, l.inv)))
            .collect();
        letters.map(Word::new)
    };

    let mut unmatched_relators = Vec::new();
    let mut differing_words = Vec::new();
    for (key, word) in THETA4_RELATORS {
        let k = notation_key(key, -1)?;
        let Some(j) = twos.iter().position(|c| *c == k) else {
            unmatched_relators.push(key.to_string());
            continue;
        };
        let expected = Word::parse(word, &ref_names)?;
        if relabel(&relators[j]).as_ref() != Some(&expected) {
            differing_words.push(key.to_string());
        }
    }

    let (_, simplified) = simplify(&mut mc)?;
    let reduced = &simplified.presentation;
    let survivors: Vec<String> = reduced
        .names
        .iter()
        .map(|n| ours.iter().position(|o| o == n).and_then(|j| to_ref.get(&j)).map_or(n.clone(), |g| format!("g{g}")))
        .collect();
    let relator_word = reduced.relators.first().cloned().unwrap_or_default();
    let relator = relator_word.display(&survivors);
    let expected = Word::parse(THETA4_REDUCED_RELATOR, &ref_names)?;
    let relator_matches = reduced.relators.len() == 1 && {
        let back: Option<Vec<usize>> = survivors.iter().map(|s| ref_names.iter().position(|r| r == s)).collect();
        back.is_some_and(|back| relator_word.substitute(&|g| Word::gen(back[g])).cyclically_equivalent(&expected))
    };

    let mut dictionary_mismatches = Vec::new();
    for (g, meaning) in THETA4_DICTIONARY {
        let i: usize = g[1..].parse().map_err(|_| Error::Parse(g.into()))?;
        let Some(j) = to_ours[i] else {
            dictionary_mismatches.push(format!("{g}: no cell"));
            continue;
        };
        let read = display_letters(&critical_to_geometric(&t, &mc.critical_1_cells()[j])?);
        if read != meaning {
            dictionary_mismatches.push(format!("{g}: {read}"));
        }
    }

    Ok(AppendixReport {
        generators: ours.len(),
        relators: relators.len(),
        unmatched_generators,
        unmatched_relators,
        differing_words,
        reduced_generators: reduced.generator_count(),
        reduced_relators: reduced.relator_count(),
        survivors,
        relator,
        relator_matches,
        dictionary_mismatches,
    })
}

/// Kills the one-particle loops in the one-relator form and compares the relator with
/// the pseudo-braid word at the near vertex.
pub fn theta4_pseudo_braid(exec: Exec) -> Result<PseudoBraidReport> {
    let t = tree()?;
    let mut mc = MorseComplex::with(&t, PARTICLES, exec)?;
    let (_, simplified) = simplify(&mut mc)?;
    let reduced = simplified.presentation;
    let cells: HashMap<String, usize> =
        mc.critical_1_cells().iter().enumerate().map(|(i, c)| (c.notation(&t), i)).collect();
    // Each survivor reads as one geometric letter; rename it and absorb its sign.
    let mut names = Vec::new();
    let mut images = Vec::new();
    for n in &reduced.names {
        let cell = &mc.critical_1_cells()[cells[n]];
        let letters: Vec<_> = critical_to_geometric(&t, cell)?.into_iter().filter_map(normalize).collect();
        let [letter] = &letters[..] else {
            return Err(Error::Invalid(format!("{n} is not a single geometric letter")));
        };
        let name = letter.kind.to_string();
        let index = names.iter().position(|x| *x == name).unwrap_or_else(|| {
            names.push(name);
            names.len() - 1
        });
        let w = Word::gen(index);
        images.push(if letter.inv { w.inverse() } else { w });
    }
    let relators = reduced.relators.iter().map(|r| r.substitute(&|g| images[g].clone())).collect();
    pseudo_braid_check(&Presentation::new(names, relators), NEAR_VERTEX)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn notation_keys_shift_the_vertex() {
        assert_eq!(notation_key("{e0^14,e2^7,6}", -1).unwrap(), notation_key("{e2^7,5,e0^14}", 0).unwrap());
        assert!(notation_key("{e0^14,x}", 0).is_err());
    }

    #[test]
    fn reproduces_reference() {
        let r = verify_appendix(Exec::default()).unwrap();
        assert!(r.passes(), "{r:#?}");
        assert_eq!(r.summary(), "25 generators, 21 relators, reduced 6/1");
    }

    #[test]
    fn loops_killed_give_pseudo_braid() {
        let r = theta4_pseudo_braid(Exec::default()).unwrap();
        assert!(r.matches, "{r:#?}");
    }
}
