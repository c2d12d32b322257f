//! Particle moves written out as 1-cell words: Y-exchanges at essential vertices,
//! one-particle loops through deleted edges and the circular move.
//!
//! All moves start and end at the base configuration `{0, …, n−1}` stacked on the
//! root chain. A move at a star first sends the top particle of the stack down to a
//! leaf (parking at the far end of the leaf so later arrivals can follow), and the
//! return trip takes the leaf's shallowest particle back to the top of the stack.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::Serialize;

use crate::dconfig::{free_reduce_steps, invert_steps, Cell, Member, Step};
use crate::error::{Error, Result};
use crate::morse::{classify_cell, CellClass, MorseComplex};
use crate::presentation::{certify_trivial, Certificate, Letter, Presentation, Word};
use crate::tree::{Label, RootedSpanningTree};

/// Leaves of an essential vertex: leaf 0 points at the root, the rest follow child labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StarEmbedding {
    pub center: Label,
    /// Labelled edge index of each leaf.
    pub leaves: Vec<usize>,
}

impl StarEmbedding {
    pub fn at(t: &RootedSpanningTree, v: Label) -> Result<Self> {
        if !t.is_essential(v) {
            return Err(Error::Invalid(format!("vertex {v} is not essential")));
        }
        if v == 0 {
            return Err(Error::Invalid("the root cannot be a star center".into()));
        }
        let leaves = (0..=t.children(v).len()).map(|d| t.direction_edge(v, d).unwrap()).collect();
        Ok(StarEmbedding { center: v, leaves })
    }

    pub fn valence(&self) -> usize {
        self.leaves.len()
    }
}

/// The kinds of geometric generator.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum GeneratorKind {
    /// σ_i at `vertex`; `leaves` has length i + 1.
    YExchange { vertex: Label, leaves: Vec<usize> },
    /// The top particle runs once around the loop of a deleted edge.
    OneParticle { deleted: usize },
    /// The bottom particle runs around the base loop while the others wait on leaf `stick`.
    BaseLoop { vertex: Label, stick: usize },
    /// The top particle runs around the base loop and comes back under the others.
    Circular,
}

impl GeneratorKind {
    pub fn y(vertex: Label, leaves: &[usize]) -> Self {
        GeneratorKind::YExchange { vertex, leaves: leaves.to_vec() }
    }

    /// Braid index i of σ_i; 1 for everything else.
    pub fn index(&self) -> usize {
        match self {
            GeneratorKind::YExchange { leaves, .. } => leaves.len() - 1,
            _ => 1,
        }
    }

    pub fn is_loop(&self) -> bool {
        matches!(self, GeneratorKind::OneParticle { .. } | GeneratorKind::BaseLoop { .. })
    }
}

impl fmt::Display for GeneratorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneratorKind::YExchange { vertex, leaves } => {
                write!(f, "sigma{}[{};{}]", leaves.len() - 1, vertex, leaves.iter().join(","))
            }
            GeneratorKind::OneParticle { deleted } => write!(f, "gamma{deleted}"),
            GeneratorKind::BaseLoop { vertex, stick } => write!(f, "gamma0[{vertex};{stick}]"),
            GeneratorKind::Circular => write!(f, "delta"),
        }
    }
}

impl FromStr for GeneratorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad generator name `{s}`"));
        if s == "delta" {
            return Ok(GeneratorKind::Circular);
        }
        let bracket = |rest: &str| -> Result<(Label, Vec<usize>)> {
            let inner = rest.strip_prefix('[').and_then(|r| r.strip_suffix(']')).ok_or_else(bad)?;
            let (v, list) = inner.split_once(';').ok_or_else(bad)?;
            let v = v.trim().parse().map_err(|_| bad())?;
            let list = list.split(',').map(|x| x.trim().parse().map_err(|_| bad())).collect::<Result<_>>()?;
            Ok((v, list))
        };
        if let Some(rest) = s.strip_prefix("sigma") {
            let cut = rest.find('[').ok_or_else(bad)?;
            let i: usize = rest[..cut].parse().map_err(|_| bad())?;
            let (vertex, leaves) = bracket(&rest[cut..])?;
            if leaves.len() != i + 1 {
                return Err(bad());
            }
            return Ok(GeneratorKind::YExchange { vertex, leaves });
        }
        if let Some(rest) = s.strip_prefix("gamma") {
            if let Some(b) = rest.strip_prefix('0').filter(|b| b.starts_with('[')) {
                let (vertex, l) = bracket(b)?;
                let [stick] = l[..] else { return Err(bad()) };
                return Ok(GeneratorKind::BaseLoop { vertex, stick });
            }
            return Ok(GeneratorKind::OneParticle { deleted: rest.parse().map_err(|_| bad())? });
        }
        Err(bad())
    }
}

/// A generator together with its loop of 1-cells at the base configuration.
#[derive(Clone, Debug)]
pub struct GeometricGenerator {
    pub kind: GeneratorKind,
    pub steps: Vec<Step>,
}

/// Signed geometric generator.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct GeomLetter {
    pub kind: GeneratorKind,
    pub inv: bool,
}

impl GeomLetter {
    pub fn new(kind: GeneratorKind) -> Self {
        GeomLetter { kind, inv: false }
    }

    pub fn inverse(&self) -> Self {
        GeomLetter { kind: self.kind.clone(), inv: !self.inv }
    }
}

pub fn display_letters(w: &[GeomLetter]) -> String {
    if w.is_empty() {
        return "1".into();
    }
    w.iter().map(|l| if l.inv { format!("{}^-1", l.kind) } else { l.kind.to_string() }).join(" ")
}

/// Particles on vertices; every hop emits the 1-cell it crosses.
struct Mover<'t> {
    t: &'t RootedSpanningTree,
    occupied: BTreeSet<Label>,
    steps: Vec<Step>,
}

impl<'t> Mover<'t> {
    fn new(t: &'t RootedSpanningTree, n: usize) -> Self {
        Mover { t, occupied: (0..n as Label).collect(), steps: Vec::new() }
    }

    fn hop(&mut self, x: Label, y: Label) -> Result<()> {
        let e = self.t.edge_between(x, y).ok_or_else(|| Error::Invalid(format!("{x} and {y} are not adjacent")))?;
        if !self.occupied.contains(&x) || self.occupied.contains(&y) {
            return Err(Error::Invalid(format!("cannot move a particle from {x} to {y}")));
        }
        self.occupied.remove(&x);
        let cell = Cell::new(self.occupied.iter().map(|v| Member::Vertex(*v)).chain([Member::Edge(e as u32)]));
        self.steps.push(Step { cell, inv: x < y });
        self.occupied.insert(y);
        Ok(())
    }

    fn travel(&mut self, from: Label, to: Label) -> Result<()> {
        for w in self.t.tree_path_vertices(from, to).windows(2) {
            self.hop(w[0], w[1])?;
        }
        Ok(())
    }

    fn finish(self) -> Vec<Step> {
        free_reduce_steps(&self.steps)
    }
}

/// Star bookkeeping: how many particles remain on the root chain and how many sit on each leaf.
struct Star<'m, 't> {
    mover: &'m mut Mover<'t>,
    slots: Vec<Vec<Label>>,
    parked: Vec<usize>,
    stack: usize,
}

impl<'m, 't> Star<'m, 't> {
    fn new(mover: &'m mut Mover<'t>, v: Label, n: usize) -> Result<Self> {
        let t = mover.t;
        let star = StarEmbedding::at(t, v)?;
        let depth = n.saturating_sub(1).max(1);
        let slots: Vec<Vec<Label>> = std::iter::once(Vec::new())
            .chain(t.children(v).iter().map(|c| t.first_child_chain(*c, depth)))
            .collect();
        if slots.iter().skip(1).any(|s| s.len() < depth) {
            return Err(Error::InsufficientSubdivision { n, reason: format!("a leaf at {v} is shorter than {depth}") });
        }
        if t.depth(v) + 1 < n as u32 {
            return Err(Error::InsufficientSubdivision { n, reason: format!("vertex {v} is too close to the root") });
        }
        let stack = mover.occupied.len();
        Ok(Star { mover, parked: vec![0; star.valence()], slots, stack })
    }

    fn check_leaf(&self, a: usize) -> Result<()> {
        if a == 0 || a >= self.slots.len() {
            return Err(Error::Invalid(format!("leaf {a} out of range 1..{}", self.slots.len())));
        }
        Ok(())
    }

    /// β^a: top particle of the stack to leaf `a`.
    fn push(&mut self, a: usize) -> Result<()> {
        self.check_leaf(a)?;
        let depth = self.slots[a].len();
        if self.stack == 0 || self.parked[a] == depth {
            return Err(Error::Invalid(format!("no room to move onto leaf {a}")));
        }
        let to = self.slots[a][depth - 1 - self.parked[a]];
        self.mover.travel(self.stack as Label - 1, to)?;
        self.stack -= 1;
        self.parked[a] += 1;
        Ok(())
    }

    /// β^{−a}: shallowest particle of leaf `a` back onto the stack.
    fn pop(&mut self, a: usize) -> Result<()> {
        self.check_leaf(a)?;
        if self.parked[a] == 0 {
            return Err(Error::Invalid(format!("leaf {a} is empty")));
        }
        let depth = self.slots[a].len();
        let from = self.slots[a][depth - self.parked[a]];
        self.mover.travel(from, self.stack as Label)?;
        self.stack += 1;
        self.parked[a] -= 1;
        Ok(())
    }
}

fn loop_vertices(t: &RootedSpanningTree) -> Result<(Label, Vec<Label>)> {
    if !t.has_base_edge() {
        return Err(Error::Invalid("no deleted edge at the root".into()));
    }
    let e0 = t.edge(t.edge_of_host(t.deleted_edges()[0]));
    Ok((e0.iota, t.tree_path_vertices(0, e0.iota)))
}

/// The 1-cell loop realizing one generator for `n` particles.
pub fn generator_steps(t: &RootedSpanningTree, n: usize, kind: &GeneratorKind) -> Result<Vec<Step>> {
    let mut m = Mover::new(t, n);
    match kind {
        GeneratorKind::YExchange { vertex, leaves } => {
            if leaves.len() < 2 || leaves.len() > n {
                return Err(Error::Invalid(format!("{kind} needs between 2 and {n} leaves")));
            }
            let mut s = Star::new(&mut m, *vertex, n)?;
            let (prefix, pair) = leaves.split_at(leaves.len() - 2);
            for a in prefix {
                s.push(*a)?;
            }
            s.push(pair[0])?;
            s.push(pair[1])?;
            s.pop(pair[0])?;
            s.pop(pair[1])?;
            for a in prefix.iter().rev() {
                s.pop(*a)?;
            }
        }
        GeneratorKind::OneParticle { deleted } => {
            let host = *t.deleted_edges().get(*deleted).ok_or_else(|| Error::Invalid(format!("no deleted edge {deleted}")))?;
            if *deleted == 0 && t.has_base_edge() {
                return Err(Error::Invalid("the base loop needs a parking vertex".into()));
            }
            let e = *t.edge(t.edge_of_host(host));
            let top = n as Label - 1;
            m.travel(top, e.iota)?;
            m.hop(e.iota, e.tau)?;
            m.travel(e.tau, top)?;
        }
        GeneratorKind::BaseLoop { vertex, stick } => {
            let (iota, path) = loop_vertices(t)?;
            if !path.contains(vertex) {
                return Err(Error::Invalid(format!("vertex {vertex} is not on the base loop")));
            }
            let mut s = Star::new(&mut m, *vertex, n)?;
            for _ in 1..n {
                s.push(*stick)?;
            }
            s.mover.travel(0, iota)?;
            s.mover.hop(iota, 0)?;
            for _ in 1..n {
                s.pop(*stick)?;
            }
        }
        GeneratorKind::Circular => {
            let (iota, _) = loop_vertices(t)?;
            m.travel(n as Label - 1, iota)?;
            for k in (0..n as Label - 1).rev() {
                m.hop(k, k + 1)?;
            }
            m.hop(iota, 0)?;
        }
    }
    Ok(m.finish())
}

/// Every base-loop move: a vertex on the base loop and a direction leaving it.
pub fn base_loop_kinds(t: &RootedSpanningTree) -> Vec<GeneratorKind> {
    let Ok((_, path)) = loop_vertices(t) else { return Vec::new() };
    let on_loop: HashSet<Label> = path.iter().copied().collect();
    path.iter()
        .filter(|v| t.is_essential(**v))
        .flat_map(|v| {
            let on_loop = &on_loop;
            t.children(*v)
                .iter()
                .enumerate()
                .filter(move |(_, c)| !on_loop.contains(c))
                .map(move |(i, _)| GeneratorKind::BaseLoop { vertex: *v, stick: i + 1 })
        })
        .collect()
}

pub fn geometric_generator(t: &RootedSpanningTree, n: usize, kind: GeneratorKind) -> Result<GeometricGenerator> {
    let steps = generator_steps(t, n, &kind)?;
    Ok(GeometricGenerator { kind, steps })
}

/// σ_i^{v;a} with i = a.len() − 1.
pub fn star_generator_word(t: &RootedSpanningTree, v: Label, leaves: &[usize], n: usize) -> Result<GeometricGenerator> {
    geometric_generator(t, n, GeneratorKind::y(v, leaves))
}

/// One generator per deleted edge: δ for the edge at the root, γ_j for the rest.
pub fn loop_and_circular_words(t: &RootedSpanningTree, n: usize) -> Result<Vec<GeometricGenerator>> {
    (0..t.deleted_edges().len())
        .map(|j| {
            let kind = if j == 0 && t.has_base_edge() { GeneratorKind::Circular } else { GeneratorKind::OneParticle { deleted: j } };
            geometric_generator(t, n, kind)
        })
        .collect()
}

/// Concatenated, freely reduced 1-cell loop of a geometric word.
pub fn realize(t: &RootedSpanningTree, n: usize, word: &[GeomLetter]) -> Result<Vec<Step>> {
    let mut cache: HashMap<&GeneratorKind, Vec<Step>> = HashMap::new();
    let mut out = Vec::new();
    for l in word {
        if !cache.contains_key(&l.kind) {
            cache.insert(&l.kind, generator_steps(t, n, &l.kind)?);
        }
        let steps = &cache[&l.kind];
        if l.inv {
            out.extend(invert_steps(steps));
        } else {
            out.extend(steps.iter().cloned());
        }
    }
    Ok(free_reduce_steps(&out))
}

/// The inverse-free leaf sequence b̄: leaf k−1 repeated b_{k−1} times, down to leaf 1.
fn bar(counts: &[usize]) -> Vec<usize> {
    (1..counts.len()).rev().flat_map(|j| std::iter::repeat_n(j, counts[j])).collect()
}

/// A geometric word whose loop reduces to the given critical 1-cell.
pub fn critical_to_geometric(t: &RootedSpanningTree, c: &Cell) -> Result<Vec<GeomLetter>> {
    if c.dim() != 1 || classify_cell(c, t)? != CellClass::Critical {
        return Err(Error::InvalidCell(format!("{} is not a critical 1-cell", c.dump(t))));
    }
    let ei = c.edges().next().unwrap();
    let e = *t.edge(ei);
    if !e.in_tree {
        let j = t.deleted_edges().iter().position(|h| *h == e.host).unwrap();
        let kind = if j == 0 && t.has_base_edge() { GeneratorKind::Circular } else { GeneratorKind::OneParticle { deleted: j } };
        return Ok(vec![GeomLetter::new(kind)]);
    }
    let v = e.tau;
    let i = t.direction(v, ei).unwrap();
    let mut counts = vec![0usize; t.children(v).len() + 1];
    for u in c.vertices() {
        if let Some(j) = t.children(v).iter().position(|ch| t.in_subtree(u, *ch)) {
            counts[j + 1] += 1;
        }
    }
    let mut high = counts.clone();
    let mut low = counts;
    high[1..i].fill(0);
    low[i..].fill(0);
    let parked = bar(&high);
    let passing = bar(&low);
    let word = (0..passing.len())
        .map(|s| {
            let mut leaves = parked.clone();
            leaves.extend_from_slice(&passing[..s]);
            leaves.push(i);
            leaves.push(passing[s]);
            GeomLetter::new(GeneratorKind::YExchange { vertex: v, leaves })
        })
        .collect();
    Ok(word)
}

/// One row of the critical-cell dictionary.
#[derive(Clone, Debug, Serialize)]
pub struct DictionaryEntry {
    pub name: String,
    pub cell: String,
    pub word: String,
    /// Whether the word reduces back to exactly this cell.
    pub round_trip: bool,
}

/// Geometric word for every critical 1-cell, with the reduction check.
pub fn dictionary(mc: &mut MorseComplex<'_>) -> Result<Vec<DictionaryEntry>> {
    let t = mc.tree();
    let n = mc.particles();
    let cells = mc.critical_1_cells().to_vec();
    let mut out = Vec::with_capacity(cells.len());
    for (g, c) in cells.iter().enumerate() {
        let word = critical_to_geometric(t, c)?;
        let back = mc.reduce_to_critical(&realize(t, n, &word)?)?;
        out.push(DictionaryEntry {
            name: format!("g{g}"),
            cell: c.notation(t),
            word: display_letters(&word),
            round_trip: back == Word::gen(g),
        });
    }
    Ok(out)
}

/// Relators written over geometric generators.
#[derive(Clone, Debug, Default)]
pub struct GeometricRelators {
    pub generators: Vec<GeneratorKind>,
    pub relators: Vec<Word>,
}

impl GeometricRelators {
    fn letter(&mut self, kind: GeneratorKind, inv: bool) -> Letter {
        let gen = match self.generators.iter().position(|k| *k == kind) {
            Some(i) => i,
            None => {
                self.generators.push(kind);
                self.generators.len() - 1
            }
        };
        Letter { gen, inv }
    }

    /// Adds `lhs · rhs⁻¹`, dropping it when it freely cancels.
    pub fn push_relation(&mut self, lhs: &[GeomLetter], rhs: &[GeomLetter]) {
        let letters: Vec<Letter> = lhs
            .iter()
            .cloned()
            .chain(rhs.iter().rev().map(GeomLetter::inverse))
            .filter_map(normalize)
            .map(|l| self.letter(l.kind, l.inv))
            .collect();
        let w = Word::new(letters).cyclic_reduce();
        if !w.is_empty() {
            self.relators.push(w);
        }
    }

    pub fn names(&self) -> Vec<String> {
        self.generators.iter().map(|k| k.to_string()).collect()
    }

    pub fn presentation(&self) -> Presentation {
        Presentation::new(self.names(), self.relators.clone())
    }

    pub fn letters(&self, w: &Word) -> Vec<GeomLetter> {
        w.letters().iter().map(|l| GeomLetter { kind: self.generators[l.gen].clone(), inv: l.inv }).collect()
    }

    /// Reduced critical word of each relator's loop.
    pub fn reductions(&self, mc: &mut MorseComplex<'_>) -> Result<Vec<Word>> {
        let t = mc.tree();
        let n = mc.particles();
        self.relators.iter().map(|r| mc.reduce_to_critical(&realize(t, n, &self.letters(r))?)).collect()
    }
}

/// Writes σ^{…,b,a} with b > a as the inverse of σ^{…,a,b}; σ^{…,a,a} is trivial.
pub fn normalize(l: GeomLetter) -> Option<GeomLetter> {
    match l.kind {
        GeneratorKind::YExchange { vertex, mut leaves } => {
            let m = leaves.len();
            match leaves[m - 2].cmp(&leaves[m - 1]) {
                std::cmp::Ordering::Equal => None,
                std::cmp::Ordering::Less => Some(GeomLetter { kind: GeneratorKind::YExchange { vertex, leaves }, inv: l.inv }),
                std::cmp::Ordering::Greater => {
                    leaves.swap(m - 2, m - 1);
                    Some(GeomLetter { kind: GeneratorKind::YExchange { vertex, leaves }, inv: !l.inv })
                }
            }
        }
        _ => Some(l),
    }
}

fn sigma(v: Label, leaves: Vec<usize>, inv: bool) -> GeomLetter {
    GeomLetter { kind: GeneratorKind::YExchange { vertex: v, leaves }, inv }
}

/// The abstract star group on leaves 1..k−1: every σ_i with its pseudo-commutative
/// and pseudo-braid relators, trivial instances skipped.
pub fn star_relations(n: usize, k: usize) -> GeometricRelators {
    let mut out = GeometricRelators::default();
    let seqs = |len: usize| (0..len).map(|_| 1..k).multi_cartesian_product();
    for i in 1..n {
        for a in seqs(i + 1).filter(|a| a[i - 1] < a[i]) {
            out.letter(GeneratorKind::y(0, &a), false);
        }
    }
    // σ_j^{a_1..a_{j+1}} σ_i^{a_1..a_{i+1}} = σ_i^{a_1..a_{i+1}} σ_j^{a with a_i, a_{i+1} swapped}
    for j in 1..n {
        for i in 1..j.saturating_sub(1) {
            for a in seqs(j + 1) {
                if a[i - 1] == a[i] || a[j - 1] == a[j] {
                    continue;
                }
                let mut swapped = a.clone();
                swapped.swap(i - 1, i);
                let si = || sigma(0, a[..=i].to_vec(), false);
                out.push_relation(&[sigma(0, a.clone(), false), si()], &[si(), sigma(0, swapped, false)]);
            }
        }
    }
    for i in 1..n.saturating_sub(1) {
        for a in seqs(i + 2) {
            let (x, y, z) = (a[i - 1], a[i], a[i + 1]);
            if x == y || y == z || x == z {
                continue;
            }
            let p = &a[..i - 1];
            let with = |tail: &[usize]| [p, tail].concat();
            let lhs = [
                sigma(0, with(&[x, y, z]), false),
                sigma(0, with(&[x, z]), false),
                sigma(0, with(&[z, x, y]), false),
            ];
            let rhs = [
                sigma(0, with(&[x, y]), false),
                sigma(0, with(&[y, x, z]), false),
                sigma(0, with(&[y, z]), false),
            ];
            out.push_relation(&lhs, &rhs);
        }
    }
    out
}

/// Closed-form rank of the free group B_n(S_k).
pub fn star_rank(n: usize, k: usize) -> usize {
    let binom = |a: usize, b: usize| -> i128 {
        if b > a {
            return 0;
        }
        (0..b).fold(1i128, |acc, j| acc * (a - j) as i128 / (j + 1) as i128)
    };
    let (n, k) = (n as i128, k as i128);
    let r = (k - 2) * binom((n + k - 2) as usize, (n - 1) as usize) - binom((n + k - 2) as usize, n as usize) + 1;
    r as usize
}

/// Relations at a vertex `v` on the base loop: the base loop as a product of Y-exchanges
/// and δ, and δ-conjugation raising the braid index.
pub fn lollipop_relations(t: &RootedSpanningTree, v: Label, n: usize) -> Result<GeometricRelators> {
    let (_, path) = loop_vertices(t)?;
    let at = path.iter().position(|x| *x == v).ok_or_else(|| Error::Invalid(format!("vertex {v} is not on the base loop")))?;
    if !t.is_essential(v) || at + 1 >= path.len() {
        return Err(Error::Invalid(format!("vertex {v} has no edge off the base loop")));
    }
    let along = t.direction(v, t.edge_between(v, path[at + 1]).unwrap()).unwrap();
    let stick = (1..=t.children(v).len()).find(|d| *d != along).ok_or_else(|| Error::Invalid("no stick".into()))?;
    let delta = GeomLetter::new(GeneratorKind::Circular);
    let mut out = GeometricRelators::default();
    let mut rhs: Vec<GeomLetter> = (1..n)
        .rev()
        .map(|i| {
            let mut leaves = vec![stick; i];
            leaves.push(along);
            sigma(v, leaves, false)
        })
        .collect();
    rhs.push(delta.clone());
    out.push_relation(&[GeomLetter::new(GeneratorKind::BaseLoop { vertex: v, stick })], &rhs);
    for i in 1..n.saturating_sub(1) {
        for a in (0..=i).map(|_| [along, stick]).multi_cartesian_product() {
            if a[i - 1] == a[i] {
                continue;
            }
            let lifted = [&[along][..], &a].concat();
            out.push_relation(&[sigma(v, lifted, false)], &[delta.clone(), sigma(v, a, false), delta.inverse()]);
        }
    }
    Ok(out)
}

/// How a σ_i was rewritten one index lower.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum ReductionCase {
    /// Conjugation by loops through deleted edges followed by δ.
    Circular,
    /// Conjugation by a one-particle loop and a ladder of exchanges at `meet`.
    Ladder { meet: Label },
}

/// Outcome of comparing a generator with its rewriting.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ReductionCheck {
    /// Both loops reduce to the same critical word.
    Exact,
    /// The critical words differ by a consequence of the Morse relators.
    Certified(Certificate),
    Failed,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReductionEntry {
    pub generator: String,
    pub case: ReductionCase,
    pub word: String,
    pub check: ReductionCheck,
}

/// Rewrites σ_i (i ≥ 2) as words in σ_1's, one-particle loops and δ on a 2-connected host.
pub struct TwoConnectedReduction<'t> {
    t: &'t RootedSpanningTree,
    memo: HashMap<GeneratorKind, (Vec<GeomLetter>, Option<ReductionCase>)>,
}

impl<'t> TwoConnectedReduction<'t> {
    pub fn new(t: &'t RootedSpanningTree) -> Result<Self> {
        if t.host().topological_connectivity().value < 2 {
            return Err(Error::Invalid("host is not 2-connected".into()));
        }
        if !t.has_base_edge() {
            return Err(Error::Invalid("no deleted edge at the root".into()));
        }
        Ok(TwoConnectedReduction { t, memo: HashMap::new() })
    }

    /// Loop word of a host path: one γ_j^{±1} per deleted edge crossed, in order.
    fn crossings(&self, path: &[Label]) -> Vec<GeomLetter> {
        let t = self.t;
        path.windows(2)
            .filter_map(|w| {
                let e = *t.edge(t.edge_between(w[0], w[1]).unwrap());
                if e.in_tree {
                    return None;
                }
                let j = t.deleted_edges().iter().position(|h| *h == e.host).unwrap();
                Some(GeomLetter { kind: GeneratorKind::OneParticle { deleted: j }, inv: w[0] != e.iota })
            })
            .collect()
    }

    /// Shortest host path from `from` avoiding `v` until it first meets the tree path [*, v].
    fn escape(&self, v: Label, from: Label) -> Option<Vec<Label>> {
        let t = self.t;
        let spine: BTreeSet<Label> = t.tree_path_vertices(0, v).into_iter().filter(|x| *x != v).collect();
        let mut prev: HashMap<Label, Label> = HashMap::new();
        let mut queue = VecDeque::from([from]);
        prev.insert(from, from);
        while let Some(x) = queue.pop_front() {
            if spine.contains(&x) {
                let mut path = vec![x];
                while *path.last().unwrap() != from {
                    path.push(prev[path.last().unwrap()]);
                }
                path.reverse();
                return Some(path);
            }
            for &e in t.incident(x) {
                let le = t.edge(e);
                let y = if le.iota == x { le.tau } else { le.iota };
                if y != v && !prev.contains_key(&y) {
                    prev.insert(y, x);
                    queue.push_back(y);
                }
            }
        }
        None
    }

    /// σ_i^{v;a} as a word whose only exchanges are σ_1's.
    pub fn rewrite(&mut self, v: Label, leaves: &[usize]) -> Result<Vec<GeomLetter>> {
        Ok(self.rewrite_with_case(v, leaves)?.0)
    }

    fn rewrite_with_case(&mut self, v: Label, leaves: &[usize]) -> Result<(Vec<GeomLetter>, Option<ReductionCase>)> {
        let kind = GeneratorKind::y(v, leaves);
        if let Some(hit) = self.memo.get(&kind) {
            return Ok(hit.clone());
        }
        let m = leaves.len();
        if m <= 2 || leaves[m - 2] == leaves[m - 1] {
            let word = if m >= 2 && leaves[m - 2] == leaves[m - 1] { vec![] } else { vec![GeomLetter::new(kind.clone())] };
            self.memo.insert(kind, (word.clone(), None));
            return Ok((word, None));
        }
        let t = self.t;
        let start = *t
            .children(v)
            .get(leaves[0].wrapping_sub(1))
            .ok_or_else(|| Error::Invalid(format!("leaf {} out of range at {v}", leaves[0])))?;
        let path = self
            .escape(v, start)
            .ok_or_else(|| Error::Invalid(format!("no path around vertex {v}: host is not 2-connected")))?;
        let meet = *path.last().unwrap();
        let inner = self.rewrite(v, &leaves[1..])?;
        let (conj, case) = if meet == 0 {
            let mut c = self.crossings(&path[..path.len() - 1]);
            c.push(GeomLetter::new(GeneratorKind::Circular));
            (c, ReductionCase::Circular)
        } else {
            let before = path[path.len() - 2];
            let toward_v = t.tree_path_vertices(meet, v)[1];
            let a = t.direction(meet, t.edge_between(meet, toward_v).unwrap()).unwrap();
            let b = t
                .direction(meet, t.edge_between(meet, before).unwrap())
                .ok_or_else(|| Error::Invalid(format!("path meets {meet} through a deleted edge")))?;
            let mut c = self.crossings(&path);
            for k in 1..m {
                let mut ladder = vec![a; k - 1];
                ladder.extend([b, a]);
                c.extend(self.rewrite(meet, &ladder)?);
            }
            (c, ReductionCase::Ladder { meet })
        };
        let mut word = conj.clone();
        word.extend(inner);
        word.extend(conj.iter().rev().map(GeomLetter::inverse));
        let out = (word, Some(case));
        self.memo.insert(kind, out.clone());
        Ok(out)
    }
}

/// Rewriting table for every σ_i with i ≥ 2 used by the critical-cell dictionary,
/// each checked against the Morse reduction.
pub fn reduce_generators_2connected(mc: &mut MorseComplex<'_>, budget: u64) -> Result<Vec<ReductionEntry>> {
    let t = mc.tree();
    let n = mc.particles();
    let mut sigmas: BTreeSet<GeneratorKind> = BTreeSet::new();
    for c in mc.critical_1_cells().to_vec() {
        for l in critical_to_geometric(t, &c)?.into_iter().filter_map(normalize) {
            if l.kind.index() >= 2 && matches!(l.kind, GeneratorKind::YExchange { .. }) {
                sigmas.insert(l.kind);
            }
        }
    }
    let mut red = TwoConnectedReduction::new(t)?;
    let relators = mc.relators()?;
    let mut out = Vec::new();
    for kind in sigmas {
        let GeneratorKind::YExchange { vertex, leaves } = &kind else { unreachable!() };
        let (word, case) = red.rewrite_with_case(*vertex, leaves)?;
        let lhs = mc.reduce_to_critical(&realize(t, n, &[GeomLetter::new(kind.clone())])?)?;
        let rhs = mc.reduce_to_critical(&realize(t, n, &word)?)?;
        let check = if lhs == rhs {
            ReductionCheck::Exact
        } else {
            match certify_trivial(&lhs.mul(&rhs.inverse()), &relators, budget, 4) {
                Certificate::Unknown => ReductionCheck::Failed,
                c => ReductionCheck::Certified(c),
            }
        };
        out.push(ReductionEntry {
            generator: kind.to_string(),
            case: case.expect("index at least two"),
            word: display_letters(&word.into_iter().filter_map(normalize).collect::<Vec<_>>()),
            check,
        });
    }
    Ok(out)
}

/// The Morse presentation rewritten over geometric generators.
#[derive(Clone, Debug)]
pub struct GeometricPresentation {
    pub kinds: Vec<GeneratorKind>,
    pub presentation: Presentation,
    /// Each critical 1-cell as a word over `kinds`.
    pub images: Vec<Word>,
}

impl GeometricPresentation {
    pub fn index_of(&self, kind: &GeneratorKind) -> Option<usize> {
        self.kinds.iter().position(|k| k == kind)
    }
}

/// Generators: every (normalized) geometric letter used by the dictionary. Relators: the
/// Morse relators with each critical cell replaced by its dictionary word, plus
/// `s⁻¹ · φ(F^∞(s))` for each letter `s`, where φ is that replacement.
pub fn geometric_presentation(mc: &mut MorseComplex<'_>) -> Result<GeometricPresentation> {
    let t = mc.tree();
    let n = mc.particles();
    let cells = mc.critical_1_cells().to_vec();
    let mut table = GeometricRelators::default();
    let mut images = Vec::with_capacity(cells.len());
    for (g, c) in cells.iter().enumerate() {
        let word = critical_to_geometric(t, c)?;
        if mc.reduce_to_critical(&realize(t, n, &word)?)? != Word::gen(g) {
            return Err(Error::Invalid(format!("dictionary word for {} does not reduce back", c.notation(t))));
        }
        let letters: Vec<Letter> = word.into_iter().filter_map(normalize).map(|l| table.letter(l.kind, l.inv)).collect();
        images.push(Word::new(letters));
    }
    let phi = |w: &Word| w.substitute(&|g| images[g].clone());
    let mut relators: Vec<Word> = mc.relators()?.iter().map(phi).collect();
    for (s, kind) in table.generators.clone().into_iter().enumerate() {
        let back = mc.reduce_to_critical(&generator_steps(t, n, &kind)?)?;
        relators.push(Word::gen(s).inverse().mul(&phi(&back)));
    }
    Ok(GeometricPresentation {
        presentation: Presentation::new(table.names(), relators),
        kinds: table.generators,
        images,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{load, tree_options};
    use crate::tree::build_rooted_spanning_tree;

    fn tree(name: &str, n: usize) -> RootedSpanningTree {
        let f = load(name).unwrap();
        build_rooted_spanning_tree(&f.graph, &tree_options(&f).particles(n)).unwrap()
    }

    #[test]
    fn normalize_flips_descending_pairs() {
        let y = |l: &[usize]| GeomLetter::new(GeneratorKind::y(3, l));
        assert_eq!(normalize(y(&[2, 2])), None);
        assert_eq!(normalize(y(&[1, 2])), Some(y(&[1, 2])));
        assert_eq!(normalize(y(&[3, 2, 1])), Some(y(&[3, 1, 2]).inverse()));
        let d = GeomLetter::new(GeneratorKind::Circular);
        assert_eq!(normalize(d.clone()), Some(d));
    }

    #[test]
    fn names_round_trip() {
        for k in [
            GeneratorKind::y(4, &[2, 1, 3]),
            GeneratorKind::OneParticle { deleted: 2 },
            GeneratorKind::BaseLoop { vertex: 5, stick: 1 },
            GeneratorKind::Circular,
        ] {
            assert_eq!(k.to_string().parse::<GeneratorKind>().unwrap(), k);
        }
        assert!("sigma2[1;1,2]".parse::<GeneratorKind>().is_err());
        assert!("tau".parse::<GeneratorKind>().is_err());
    }

    #[test]
    fn equal_leaves_give_a_trivial_loop() {
        let t = tree("star3", 3);
        let v = t.essential_vertices()[0];
        let steps = generator_steps(&t, 3, &GeneratorKind::y(v, &[2, 2])).unwrap();
        let mut mc = MorseComplex::new(&t, 3).unwrap();
        assert!(mc.reduce_to_critical(&steps).unwrap().is_empty());
    }

    #[test]
    fn star_generator_count_matches_closed_form() {
        for (name, k) in [("star3", 3), ("star4", 4)] {
            for n in 2..=3 {
                let t = tree(name, n);
                let mc = MorseComplex::new(&t, n).unwrap();
                assert_eq!(mc.critical_1_cells().len(), star_rank(n, k), "{name} n={n}");
            }
        }
        assert_eq!(star_rank(2, 3), 1);
    }

    #[test]
    fn dictionary_round_trips() {
        for name in ["star4", "theta3", "vartheta3", "lollipop", "theta4_appendix", "k4"] {
            for n in 2..=3 {
                let t = tree(name, n);
                let mut mc = MorseComplex::new(&t, n).unwrap();
                for row in dictionary(&mut mc).unwrap() {
                    assert!(row.round_trip, "{name} n={n} {} {}", row.cell, row.word);
                }
            }
        }
    }

    #[test]
    fn loops_are_single_letters() {
        let t = tree("theta4_appendix", 3);
        let words = loop_and_circular_words(&t, 3).unwrap();
        assert_eq!(words.len(), 3);
        assert_eq!(words[0].kind, GeneratorKind::Circular);
        let mut mc = MorseComplex::new(&t, 3).unwrap();
        for w in &words {
            let c = mc.reduce_to_critical(&w.steps).unwrap();
            assert_eq!(c.len(), 1, "{}", w.kind);
        }
    }

    #[test]
    fn lollipop_relations_hold() {
        let t = tree("lollipop", 3);
        let mut mc = MorseComplex::new(&t, 3).unwrap();
        let morse = mc.relators().unwrap();
        let v = t.essential_vertices().into_iter().find(|v| lollipop_relations(&t, *v, 3).is_ok()).unwrap();
        let rel = lollipop_relations(&t, v, 3).unwrap();
        assert!(!rel.relators.is_empty());
        for w in rel.reductions(&mut mc).unwrap() {
            assert!(certify_trivial(&w, &morse, 100_000, 4).is_trivial(), "{}", w.display(&[]));
        }
    }

    #[test]
    fn geometric_presentation_keeps_the_abelianization() {
        for name in ["theta3", "k4"] {
            let t = tree(name, 3);
            let mut mc = MorseComplex::new(&t, 3).unwrap();
            let morse = Presentation::new(
                (0..mc.critical_1_cells().len()).map(|i| format!("g{i}")).collect(),
                mc.relators().unwrap(),
            );
            let gp = geometric_presentation(&mut mc).unwrap();
            assert_eq!(gp.presentation.abelianization(), morse.abelianization(), "{name}");
        }
    }

    #[test]
    fn higher_exchanges_reduce_on_two_connected_graphs() {
        let t = tree("theta3", 3);
        let mut mc = MorseComplex::new(&t, 3).unwrap();
        let rows = reduce_generators_2connected(&mut mc, 200_000).unwrap();
        assert!(!rows.is_empty());
        assert!(rows.iter().all(|r| r.check != ReductionCheck::Failed), "{rows:?}");
        assert!(TwoConnectedReduction::new(&tree("lollipop", 3)).is_err());
    }
}
