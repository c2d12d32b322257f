//! Discrete gradient on the configuration complex, principal reduction and the Morse presentation.

use std::collections::{HashMap, HashSet};

use serde::Serialize;

use crate::dconfig::{boundary_word, check_closed, enumerate_cells_with, invert_steps, Cell, Member, Step};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::presentation::{Letter, Presentation, Word};
use crate::tree::{Label, RootedSpanningTree};

/// Role of a cell in the matching.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CellClass {
    Critical,
    /// Matched with the given cell one dimension up.
    Redundant(Cell),
    /// Matched with the given cell one dimension down.
    Collapsible(Cell),
}

impl CellClass {
    pub fn is_critical(&self) -> bool {
        matches!(self, CellClass::Critical)
    }
}

/// Vertex `v` of `c` cannot move toward the root.
pub fn is_blocked(c: &Cell, t: &RootedSpanningTree, v: Label) -> bool {
    match t.parent(v) {
        None => true,
        Some(p) => c.covers(t, p),
    }
}

/// Tree edge with no member vertex sitting on an earlier branch at τ(e).
pub fn is_order_respecting(c: &Cell, t: &RootedSpanningTree, e: usize) -> bool {
    let le = t.edge(e);
    le.in_tree && !c.vertices().any(|u| t.parent(u) == Some(le.tau) && u < le.iota)
}

pub fn lowest_unblocked(c: &Cell, t: &RootedSpanningTree) -> Option<Label> {
    c.vertices().find(|v| !is_blocked(c, t, *v))
}

fn is_critical(c: &Cell, t: &RootedSpanningTree) -> bool {
    c.vertices().all(|v| is_blocked(c, t, v)) && !c.edges().any(|e| is_order_respecting(c, t, e))
}

/// Lower cell matched with `c`, if `c` is collapsible.
fn collapses_onto(c: &Cell, t: &RootedSpanningTree) -> Result<Option<Cell>> {
    for e in c.edges() {
        let le = t.edge(e);
        if !le.in_tree {
            continue;
        }
        let lower = c.replace(Member::Edge(e as u32), Member::Vertex(le.iota));
        if lowest_unblocked(&lower, t) == Some(le.iota) && matches!(classify_cell(&lower, t)?, CellClass::Redundant(_)) {
            return Ok(Some(lower));
        }
    }
    Ok(None)
}

pub fn classify_cell(c: &Cell, t: &RootedSpanningTree) -> Result<CellClass> {
    c.validate(t)?;
    if is_critical(c, t) {
        return Ok(CellClass::Critical);
    }
    if let Some(lower) = collapses_onto(c, t)? {
        return Ok(CellClass::Collapsible(lower));
    }
    let v = lowest_unblocked(c, t)
        .ok_or_else(|| Error::InvalidCell(format!("{} is neither critical, collapsible nor redundant", c.dump(t))))?;
    let e = t.parent_edge(v).expect("unblocked vertex has a parent");
    Ok(CellClass::Redundant(c.replace(Member::Vertex(v), Member::Edge(e as u32))))
}

/// F applied once to a redundant 1-cell: the word w⁻¹ where ∂W(c) reads c·w.
fn principal_step(c: &Cell, upper: &Cell, t: &RootedSpanningTree) -> Result<Vec<Step>> {
    let bw = boundary_word(upper, t)?;
    let i = bw.iter().position(|s| &s.cell == c).ok_or_else(|| Error::InvalidCell("matched face missing".into()))?;
    let mut r = bw.clone();
    r.rotate_left(i);
    if r[0].inv {
        r = invert_steps(&r);
        let last = r.len() - 1;
        r.rotate_left(last);
    }
    Ok(invert_steps(&r[1..]))
}

/// Counts per dimension.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ClassCounts {
    pub critical: usize,
    pub redundant: usize,
    pub collapsible: usize,
}

/// Critical cells and the reduction machinery for one tree and particle count.
pub struct MorseComplex<'t> {
    tree: &'t RootedSpanningTree,
    n: usize,
    critical1: Vec<Cell>,
    critical2: Vec<Cell>,
    index: HashMap<Cell, usize>,
    memo: HashMap<Cell, Word>,
    budget: u64,
    spent: u64,
}

impl<'t> MorseComplex<'t> {
    pub fn new(t: &'t RootedSpanningTree, n: usize) -> Result<Self> {
        Self::with(t, n, Exec::default())
    }

    pub fn with(t: &'t RootedSpanningTree, n: usize, exec: Exec) -> Result<Self> {
        let critical_of = |d: usize| -> Result<Vec<Cell>> {
            let cells = enumerate_cells_with(t, n, Some(d), exec)?;
            let flags = exec.map(&cells, |c| classify_cell(c, t).map(|k| k.is_critical()));
            let mut out = Vec::new();
            for (c, f) in cells.into_iter().zip(flags) {
                if f? {
                    out.push(c);
                }
            }
            Ok(out)
        };
        let critical1 = critical_of(1)?;
        let critical2 = critical_of(2)?;
        let index = critical1.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect();
        Ok(MorseComplex {
            tree: t,
            n,
            critical1,
            critical2,
            index,
            memo: HashMap::new(),
            budget: crate::budget("REDUCE", 1_000_000),
            spent: 0,
        })
    }

    pub fn tree(&self) -> &'t RootedSpanningTree {
        self.tree
    }

    pub fn particles(&self) -> usize {
        self.n
    }

    pub fn critical_1_cells(&self) -> &[Cell] {
        &self.critical1
    }

    pub fn critical_2_cells(&self) -> &[Cell] {
        &self.critical2
    }

    pub fn generator_of(&self, c: &Cell) -> Option<usize> {
        self.index.get(c).copied()
    }

    /// F^∞ of a single 1-cell traversed forward.
    pub fn reduce_cell(&mut self, c: &Cell) -> Result<Word> {
        if let Some(w) = self.memo.get(c) {
            return Ok(w.clone());
        }
        struct Frame {
            cell: Cell,
            pending: Vec<Step>,
            pos: usize,
            acc: Word,
        }
        let t = self.tree;
        let mut on_stack: HashSet<Cell> = HashSet::new();
        let mut stack: Vec<Frame> = Vec::new();
        // Resolves a cell immediately when possible; otherwise returns its F-word.
        let open = |cell: &Cell, memo: &mut HashMap<Cell, Word>, index: &HashMap<Cell, usize>| -> Result<Option<Vec<Step>>> {
            match classify_cell(cell, t)? {
                CellClass::Critical => {
                    memo.insert(cell.clone(), Word::gen(index[cell]));
                    Ok(None)
                }
                CellClass::Collapsible(_) => {
                    memo.insert(cell.clone(), Word::empty());
                    Ok(None)
                }
                CellClass::Redundant(up) => Ok(Some(principal_step(cell, &up, t)?)),
            }
        };
        if let Some(p) = open(c, &mut self.memo, &self.index)? {
            on_stack.insert(c.clone());
            stack.push(Frame { cell: c.clone(), pending: p, pos: 0, acc: Word::empty() });
        }
        while let Some(top) = stack.last_mut() {
            if top.pos == top.pending.len() {
                let done = stack.pop().unwrap();
                on_stack.remove(&done.cell);
                self.memo.insert(done.cell, done.acc);
                continue;
            }
            let s = top.pending[top.pos].clone();
            if let Some(w) = self.memo.get(&s.cell) {
                let w = if s.inv { w.inverse() } else { w.clone() };
                top.acc = top.acc.mul(&w);
                top.pos += 1;
                continue;
            }
            self.spent += 1;
            if self.spent > self.budget {
                return Err(Error::Budget(self.budget));
            }
            if on_stack.contains(&s.cell) {
                return Err(Error::Invalid(format!("principal reduction cycles at {}", s.cell.dump(t))));
            }
            if let Some(p) = open(&s.cell, &mut self.memo, &self.index)? {
                on_stack.insert(s.cell.clone());
                stack.push(Frame { cell: s.cell, pending: p, pos: 0, acc: Word::empty() });
            }
        }
        Ok(self.memo[c].clone())
    }

    /// F^∞ of an arbitrary edge path (no closure check).
    pub fn reduce_path(&mut self, word: &[Step]) -> Result<Word> {
        let mut out = Word::empty();
        for s in word {
            if s.cell.dim() != 1 {
                return Err(Error::InvalidCell("path letters must be 1-cells".into()));
            }
            let w = self.reduce_cell(&s.cell)?;
            out = out.mul(&if s.inv { w.inverse() } else { w });
        }
        Ok(out)
    }

    /// F^∞ of a loop at the base configuration.
    pub fn reduce_to_critical(&mut self, word: &[Step]) -> Result<Word> {
        check_closed(word, &Cell::base(self.n), self.tree)?;
        self.reduce_path(word)
    }

    /// Relators in critical-2-cell order.
    pub fn relators(&mut self) -> Result<Vec<Word>> {
        let cells = self.critical2.clone();
        cells.iter().map(|c| self.reduce_path(&boundary_word(c, self.tree)?)).collect()
    }

    /// Critical 1-cell word as steps.
    pub fn realize(&self, w: &Word) -> Vec<Step> {
        w.letters().iter().map(|l| Step { cell: self.critical1[l.gen].clone(), inv: l.inv }).collect()
    }
}

/// Generators, relators and basepoint read off the critical cells.
#[derive(Clone, Debug)]
pub struct MorsePresentation {
    pub generators: Vec<Cell>,
    pub names: Vec<String>,
    /// Freely reduced, one per critical 2-cell (trivial ones kept).
    pub relators: Vec<Word>,
    pub relator_cells: Vec<Cell>,
    pub basepoint: Cell,
}

impl MorsePresentation {
    pub fn presentation(&self) -> Presentation {
        Presentation::new(self.names.clone(), self.relators.clone())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "generators": self.names,
            "relators": self.relators.iter().map(Word::to_signed).collect::<Vec<_>>(),
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (i, name) in self.names.iter().enumerate() {
            out.push_str(&format!("g{i} = {name}\n"));
        }
        let short: Vec<String> = (0..self.names.len()).map(|i| format!("g{i}")).collect();
        for r in &self.relators {
            out.push_str(&r.display(&short));
            out.push('\n');
        }
        out
    }
}

pub fn morse_presentation(t: &RootedSpanningTree, n: usize) -> Result<MorsePresentation> {
    morse_presentation_with(t, n, Exec::default())
}

pub fn morse_presentation_with(t: &RootedSpanningTree, n: usize, exec: Exec) -> Result<MorsePresentation> {
    let mut mc = MorseComplex::with(t, n, exec)?;
    let relators = mc.relators()?;
    Ok(MorsePresentation {
        names: mc.critical1.iter().map(|c| c.notation(t)).collect(),
        generators: mc.critical1.clone(),
        relators,
        relator_cells: mc.critical2.clone(),
        basepoint: Cell::base(n),
    })
}

/// Classification counts for dimensions 0..=max_dim.
pub fn class_counts(t: &RootedSpanningTree, n: usize, max_dim: usize, exec: Exec) -> Result<Vec<ClassCounts>> {
    (0..=max_dim)
        .map(|d| {
            let cells = enumerate_cells_with(t, n, Some(d), exec)?;
            let classes = exec.map(&cells, |c| classify_cell(c, t));
            let mut k = ClassCounts::default();
            for c in classes {
                match c? {
                    CellClass::Critical => k.critical += 1,
                    CellClass::Redundant(_) => k.redundant += 1,
                    CellClass::Collapsible(_) => k.collapsible += 1,
                }
            }
            Ok(k)
        })
        .collect()
}

/// Tietze keep-weights for critical 1-cells: loop cells highest, then cells whose other
/// particles rest at the root, nearer essential vertices first.
pub fn generator_weights(t: &RootedSpanningTree, cells: &[Cell]) -> Vec<i64> {
    cells
        .iter()
        .map(|c| {
            let e = t.edge(c.edges().next().expect("1-cell"));
            if !e.in_tree {
                return 10_000;
            }
            let vs: Vec<Label> = c.vertices().collect();
            let stacked = vs.iter().enumerate().take_while(|(i, v)| **v == *i as Label).count() as i64;
            100 * stacked - t.depth(e.tau) as i64
        })
        .collect()
}

/// Turns a letter list into steps through a generator table.
pub fn word_of_letters(letters: &[Letter], gens: &[Cell]) -> Vec<Step> {
    letters.iter().map(|l| Step { cell: gens[l.gen].clone(), inv: l.inv }).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build, VertexId};
    use crate::tree::{build_rooted_spanning_tree, TreeOptions};

    fn star(k: usize) -> RootedSpanningTree {
        let g = build::star(k);
        build_rooted_spanning_tree(&g, &TreeOptions { root: Some(VertexId(1)), ..Default::default() }).unwrap()
    }

    #[test]
    fn base_cell_is_critical() {
        let t = star(3);
        assert_eq!(classify_cell(&Cell::base(2), &t).unwrap(), CellClass::Critical);
        assert_eq!(classify_cell(&Cell::base(3), &t).unwrap(), CellClass::Critical);
    }

    #[test]
    fn star_two_particles_one_generator() {
        let t = star(3);
        let p = morse_presentation(&t, 2).unwrap();
        assert_eq!(p.generators.len(), 1);
        assert!(p.relators.is_empty());
    }

    #[test]
    fn matching_is_a_bijection() {
        let g = build::theta(3);
        let t = build_rooted_spanning_tree(&g, &TreeOptions::default().particles(2)).unwrap();
        let counts = class_counts(&t, 2, 2, Exec::Sequential).unwrap();
        assert_eq!(counts[0].critical, 1);
        assert_eq!(counts[0].collapsible, 0);
        assert_eq!(counts[0].redundant, counts[1].collapsible);
        assert_eq!(counts[1].redundant, counts[2].collapsible);
        assert_eq!(counts[2].redundant, 0);
    }

    #[test]
    fn single_cells_reduce_as_expected() {
        let t = star(3);
        let mut mc = MorseComplex::new(&t, 2).unwrap();
        let g0 = mc.critical_1_cells()[0].clone();
        assert_eq!(mc.reduce_cell(&g0).unwrap(), Word::gen(0));
        let cells = enumerate_cells_with(&t, 2, Some(1), Exec::Sequential).unwrap();
        for c in cells {
            if let CellClass::Collapsible(_) = classify_cell(&c, &t).unwrap() {
                let w = vec![Step { cell: c.clone(), inv: false }, Step { cell: c.clone(), inv: true }];
                assert!(mc.reduce_path(&w).unwrap().is_empty());
                assert!(mc.reduce_cell(&c).unwrap().is_empty());
            }
        }
    }

    #[test]
    fn reduction_is_idempotent_on_critical_words() {
        let g = build::theta(3);
        let t = build_rooted_spanning_tree(&g, &TreeOptions::default().particles(2)).unwrap();
        let mut mc = MorseComplex::new(&t, 2).unwrap();
        for r in mc.relators().unwrap() {
            let again = mc.reduce_path(&mc.realize(&r)).unwrap();
            assert_eq!(again, r);
        }
    }

    #[test]
    fn non_closed_words_rejected() {
        let t = star(3);
        let mut mc = MorseComplex::new(&t, 2).unwrap();
        let c = mc.critical_1_cells()[0].clone();
        assert!(mc.reduce_to_critical(&[Step { cell: c, inv: false }]).is_err());
    }
}
