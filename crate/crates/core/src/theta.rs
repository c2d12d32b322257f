//! Theta-relatedness of exchange triples, facial cycles, and the one-particle quotient
//! of a planar graph braid group checked against the Artin braid group.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use serde::Serialize;

use crate::braid::{word_problem, BraidWord, Verdict};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::fixtures::is_plane;
use crate::geometric::{
    base_loop_kinds, generator_steps, geometric_presentation, realize, GeneratorKind, GeomLetter, GeometricPresentation,
};
use crate::graph::{EdgeId, Graph, VertexId};
use crate::morse::MorseComplex;
use crate::presentation::{
    certify_trivial, quotient_raw, tietze_simplify, Certificate, Letter, Presentation, QuotientSpec, Word,
};
use crate::snf::AbelianInvariants;
use crate::tree::{Label, RootedSpanningTree};

/// An essential vertex with two of its child directions, `a < b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Triple {
    pub vertex: Label,
    pub a: usize,
    pub b: usize,
}

impl Triple {
    pub fn new(t: &RootedSpanningTree, vertex: Label, a: usize, b: usize) -> Result<Self> {
        let k = t.children(vertex).len();
        if !t.is_essential(vertex) || vertex == 0 || a == 0 || a >= b || b > k {
            return Err(Error::Invalid(format!("({vertex};{a},{b}) is not a triple")));
        }
        Ok(Triple { vertex, a, b })
    }

    /// The Y-exchange σ_1^{vertex;a,b}.
    pub fn exchange(&self) -> GeneratorKind {
        GeneratorKind::y(self.vertex, &[self.a, self.b])
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({};{},{})", self.vertex, self.a, self.b)
    }
}

/// Every triple of the tree, by vertex then directions.
pub fn triples(t: &RootedSpanningTree) -> Vec<Triple> {
    let mut out = Vec::new();
    for v in t.essential_vertices().into_iter().filter(|v| *v != 0) {
        let k = t.children(v).len();
        for a in 1..=k {
            for b in a + 1..=k {
                out.push(Triple { vertex: v, a, b });
            }
        }
    }
    out
}

/// Whether a simple cycle bounds a face. Needs a plane, 3-connected graph; the answer
/// (the cycle does not separate the graph) is cross-checked against the face walks.
pub fn is_facial_cycle(g: &Graph, cycle: &[EdgeId]) -> Result<bool> {
    if !is_plane(g)? {
        return Err(Error::Invalid("rotation system is not a plane embedding".into()));
    }
    if g.topological_connectivity().value < 3 {
        return Err(Error::Invalid("facial cycles are only characterized on 3-connected graphs".into()));
    }
    let vertices = cycle_vertices(g, cycle)?;
    let removed: HashSet<VertexId> = vertices.iter().copied().collect();
    let nonseparating = g.component_sizes(&removed).len() <= 1;
    let faces = g.faces()?;
    let wanted: HashSet<EdgeId> = cycle.iter().copied().collect();
    let is_face = (0..faces.len()).any(|f| {
        let fe = faces.face_edges(f);
        fe.len() == wanted.len() && fe.iter().all(|e| wanted.contains(e))
    });
    if is_face != nonseparating {
        return Err(Error::Invalid("face walks disagree with the separation test".into()));
    }
    Ok(nonseparating)
}

/// Vertices of a simple cycle given by its edges, or an error when the edges are not one.
fn cycle_vertices(g: &Graph, cycle: &[EdgeId]) -> Result<Vec<VertexId>> {
    let bad = || Error::Invalid("edges do not form a simple cycle".into());
    if cycle.is_empty() || cycle.iter().collect::<HashSet<_>>().len() != cycle.len() {
        return Err(bad());
    }
    let mut degree: BTreeMap<VertexId, usize> = BTreeMap::new();
    for e in cycle {
        for v in g.edge(*e).ends {
            *degree.entry(v).or_default() += 1;
        }
    }
    if degree.values().any(|d| *d != 2) || degree.len() != cycle.len() {
        return Err(bad());
    }
    // One closed walk through all edges.
    let mut at = g.edge(cycle[0]).ends[1];
    let mut used = vec![false; cycle.len()];
    used[0] = true;
    let mut order = vec![g.edge(cycle[0]).ends[0], at];
    for _ in 1..cycle.len() {
        let next = (0..cycle.len()).find(|i| !used[*i] && g.edge(cycle[*i]).ends.contains(&at)).ok_or_else(bad)?;
        used[next] = true;
        at = g.edge(cycle[next]).other(at);
        order.push(at);
    }
    if order.first() != order.last() {
        return Err(bad());
    }
    order.pop();
    Ok(order)
}

/// Which template graph the embedding realizes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Template {
    /// Theta graph: two deleted edges, the lower one being the base edge at the root.
    Theta,
    /// Theta graph with an arm: the lower deleted edge leaves from a side branch at `hub`.
    VarTheta,
}

/// A side branch at an ancestor: vertex, direction toward the near vertex, other direction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Hub {
    pub vertex: Label,
    pub toward: usize,
    pub side: usize,
}

/// Witness that two triples are related.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ThetaEmbedding {
    pub template: Template,
    /// Image of the template vertex nearer the root.
    pub near: Triple,
    pub far: Triple,
    /// Direction at `near` of the arc leading to the upper linking path.
    pub arc: usize,
    /// Direction at `near` of the chord toward `far`.
    pub chord: usize,
    /// Directions at `far` toward the upper and the lower linking path.
    pub upper: usize,
    pub lower: usize,
    /// Image of the upper non-tree template edge, from the arc side to `far`'s side.
    pub upper_path: Vec<Label>,
    /// Image of the lower one, from `far`'s side to the hub side or the base edge.
    pub lower_path: Vec<Label>,
    /// Deleted edge crossed by each linking path, when there is exactly one.
    pub upper_edge: Option<usize>,
    pub lower_edge: Option<usize>,
    pub hub: Option<Hub>,
    /// True when the template is used in its mirror orientation.
    pub mirrored: bool,
}

impl ThetaEmbedding {
    /// Each linking path crosses a single deleted edge and otherwise stays in the tree.
    pub fn is_simple(&self) -> bool {
        self.upper_edge.is_some() && self.lower_edge.is_some()
    }
}

/// Outcome of a relatedness search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Search {
    Found(ThetaEmbedding),
    /// Every candidate was examined.
    ProvenNone,
    /// The step budget ran out first.
    NotFound,
}

struct Finder<'t> {
    t: &'t RootedSpanningTree,
    adjacency: Vec<Vec<Label>>,
    spent: u64,
    cap: u64,
}

impl<'t> Finder<'t> {
    fn new(t: &'t RootedSpanningTree) -> Self {
        let adjacency = (0..t.vertex_count() as Label)
            .map(|v| {
                t.incident(v)
                    .iter()
                    .map(|i| {
                        let e = t.edge(*i);
                        if e.iota == v { e.tau } else { e.iota }
                    })
                    .collect()
            })
            .collect();
        Finder { t, adjacency, spent: 0, cap: crate::budget("THETA", 200_000) }
    }

    fn child(&self, v: Label, d: usize) -> Label {
        self.t.children(v)[d - 1]
    }

    fn exhausted(&self) -> bool {
        self.spent > self.cap
    }

    /// BFS path from `s` to `goal` through unblocked vertices.
    fn bfs(&mut self, s: Label, goal: Label, blocked: &[bool]) -> Option<Vec<Label>> {
        if s == goal {
            return Some(vec![s]);
        }
        let mut prev = vec![Label::MAX; blocked.len()];
        prev[s as usize] = s;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            self.spent += 1;
            for &w in &self.adjacency[v as usize] {
                if prev[w as usize] != Label::MAX || (blocked[w as usize] && w != goal) {
                    continue;
                }
                prev[w as usize] = v;
                if w == goal {
                    let mut path = vec![w];
                    let mut at = w;
                    while at != s {
                        at = prev[at as usize];
                        path.push(at);
                    }
                    path.reverse();
                    return Some(path);
                }
                queue.push_back(w);
            }
        }
        None
    }

    /// Two vertex-disjoint paths `s1 → t1` and `s2 → t2` whose inner vertices avoid
    /// `blocked`. The first path is enumerated depth first; the second found by BFS.
    fn linkage(&mut self, blocked: &mut [bool], first: (Label, Label), second: (Label, Label)) -> Option<(Vec<Label>, Vec<Label>)> {
        let mut path = vec![first.0];
        self.extend(blocked, &mut path, first.1, second)
    }

    fn extend(&mut self, blocked: &mut [bool], path: &mut Vec<Label>, goal: Label, second: (Label, Label)) -> Option<(Vec<Label>, Vec<Label>)> {
        if self.exhausted() {
            return None;
        }
        let last = *path.last().unwrap();
        let other = self.bfs(second.0, second.1, blocked)?;
        if last == goal {
            return Some((path.clone(), other));
        }
        self.bfs(last, goal, blocked)?;
        for w in self.adjacency[last as usize].clone() {
            if blocked[w as usize] && w != goal {
                continue;
            }
            blocked[w as usize] = true;
            path.push(w);
            let found = self.extend(blocked, path, goal, second);
            path.pop();
            blocked[w as usize] = w == goal;
            if found.is_some() {
                return found;
            }
        }
        None
    }

    /// The single deleted edge along a path, if exactly one is crossed.
    fn crossing(&self, path: &[Label]) -> Option<usize> {
        let t = self.t;
        let crossed: Vec<usize> = path
            .windows(2)
            .filter_map(|w| t.edge_between(w[0], w[1]))
            .filter(|e| !t.edge(*e).in_tree)
            .collect();
        match crossed.as_slice() {
            [e] => t.deleted_edges().iter().position(|h| t.edge_of_host(*h) == *e),
            _ => None,
        }
    }

    /// Embeddings with `near` in the role of the template vertex next to the root.
    fn oriented(&mut self, near: Triple, far: Triple) -> Option<ThetaEmbedding> {
        let t = self.t;
        let (p, q) = (near.vertex, far.vertex);
        for mirrored in [false, true] {
            let (arc, chord) = if mirrored { (near.b, near.a) } else { (near.a, near.b) };
            let (upper, lower) = if mirrored { (far.b, far.a) } else { (far.a, far.b) };
            if p == q || !t.in_subtree(q, self.child(p, chord)) {
                continue;
            }
            // Tree part of the image: root to `near`, chord to `far`, and first edges out.
            let mut blocked = vec![false; t.vertex_count()];
            let spine: Vec<Label> = t.tree_path_vertices(0, p).into_iter().chain(t.tree_path_vertices(p, q)).collect();
            let ends = [self.child(p, arc), self.child(q, upper), self.child(q, lower)];
            for v in spine.iter().chain(&ends) {
                blocked[*v as usize] = true;
            }
            let base = |upper_path: Vec<Label>, lower_path: Vec<Label>, finder: &Self| ThetaEmbedding {
                template: Template::Theta,
                near,
                far,
                arc,
                chord,
                upper,
                lower,
                upper_edge: finder.crossing(&upper_path),
                lower_edge: finder.crossing(&lower_path),
                upper_path,
                lower_path,
                hub: None,
                mirrored,
            };
            if t.has_base_edge() {
                let anchor = t.edge(t.edge_of_host(t.deleted_edges()[0])).iota;
                if !blocked[anchor as usize] || anchor == ends[2] {
                    let mut b = blocked.clone();
                    b[anchor as usize] = true;
                    if let Some((up, mut down)) = self.linkage(&mut b, (ends[0], ends[1]), (ends[2], anchor)) {
                        down.push(0);
                        return Some(base(up, down, self));
                    }
                }
            }
            // Arm: a side branch at an essential proper ancestor of `near`.
            let path = t.tree_path_vertices(0, p);
            for w in path.windows(2) {
                let (z, next) = (w[0], w[1]);
                if !t.is_essential(z) {
                    continue;
                }
                let toward = t.direction(z, t.edge_between(z, next).unwrap()).unwrap();
                for side in 1..=t.children(z).len() {
                    if side == toward || (side > toward) == mirrored {
                        continue;
                    }
                    let hub_end = self.child(z, side);
                    let mut b = blocked.clone();
                    b[hub_end as usize] = true;
                    if let Some((up, down)) = self.linkage(&mut b, (ends[0], ends[1]), (ends[2], hub_end)) {
                        return Some(ThetaEmbedding {
                            template: Template::VarTheta,
                            hub: Some(Hub { vertex: z, toward, side }),
                            ..base(up, down, self)
                        });
                    }
                }
            }
        }
        None
    }

    fn search(&mut self, p: Triple, q: Triple) -> Search {
        if let Some(e) = self.oriented(p, q).or_else(|| self.oriented(q, p)) {
            return Search::Found(e);
        }
        if self.exhausted() {
            Search::NotFound
        } else {
            Search::ProvenNone
        }
    }
}

/// Searches for a theta or arm-theta embedding relating two triples. The template tree
/// goes to tree paths; each non-tree template edge goes to a path avoiding the rest of
/// the image. Absence is proven when the search finishes within budget.
pub fn theta_related(t: &RootedSpanningTree, p: Triple, q: Triple) -> Search {
    Finder::new(t).search(p, q)
}

/// Equivalence classes of triples under the closure of relatedness.
#[derive(Clone, Debug, Serialize)]
pub struct ThetaClasses {
    pub classes: Vec<Vec<Triple>>,
    /// One witness per related pair that merged two classes.
    pub witnesses: Vec<ThetaEmbedding>,
    /// Pairs whose search hit the budget.
    pub inconclusive: usize,
}

pub fn theta_classes(t: &RootedSpanningTree, exec: Exec) -> ThetaClasses {
    let all = triples(t);
    let pairs: Vec<(usize, usize)> = (0..all.len()).flat_map(|i| (i + 1..all.len()).map(move |j| (i, j))).collect();
    let results = exec.map(&pairs, |(i, j)| theta_related(t, all[*i], all[*j]));
    let mut parent: Vec<usize> = (0..all.len()).collect();
    fn root(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    let mut witnesses = Vec::new();
    let mut inconclusive = 0;
    for ((i, j), r) in pairs.iter().zip(results) {
        match r {
            Search::Found(e) => {
                let (a, b) = (root(&mut parent, *i), root(&mut parent, *j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                    witnesses.push(e);
                }
            }
            Search::NotFound => inconclusive += 1,
            Search::ProvenNone => {}
        }
    }
    let mut groups: BTreeMap<usize, Vec<Triple>> = BTreeMap::new();
    for (i, tr) in all.iter().enumerate() {
        groups.entry(root(&mut parent, i)).or_default().push(*tr);
    }
    ThetaClasses { classes: groups.into_values().collect(), witnesses, inconclusive }
}

fn letter(kind: GeneratorKind, inv: bool) -> GeomLetter {
    GeomLetter { kind, inv }
}

fn loop_letter(t: &RootedSpanningTree, j: usize) -> GeneratorKind {
    if j == 0 && t.has_base_edge() {
        GeneratorKind::Circular
    } else {
        GeneratorKind::OneParticle { deleted: j }
    }
}

/// The template relation carried through an embedding, as `lhs = rhs` over host generators.
/// Loop orientations inside the arm-theta template are not fixed; `signs` picks them.
/// Only witnesses whose linking paths each cross one deleted edge carry a relation in
/// single loop letters; others give `None`.
pub fn embedded_relation(t: &RootedSpanningTree, e: &ThetaEmbedding, signs: [bool; 2]) -> Option<(Vec<GeomLetter>, Vec<GeomLetter>)> {
    let y = |v: Label, a: usize, b: usize, inv: bool| letter(GeneratorKind::y(v, &[a, b]), inv);
    let (p, q) = (e.near.vertex, e.far.vertex);
    let (upper_edge, lower_edge) = (e.upper_edge?, e.lower_edge?);
    let upper_iota = t.edge(t.edge_of_host(t.deleted_edges()[upper_edge])).iota;
    // The template loop runs out along the chord and back over the upper edge.
    let gamma = letter(loop_letter(t, upper_edge), !t.in_subtree(upper_iota, t.children(p)[e.chord - 1]) ^ signs[0]);
    Some(match e.template {
        Template::Theta => {
            let delta = letter(GeneratorKind::Circular, false);
            (
                vec![delta.clone(), gamma.clone(), delta.inverse()],
                vec![y(q, e.lower, e.upper, false), gamma, y(p, e.arc, e.chord, false)],
            )
        }
        Template::VarTheta => {
            let hub = e.hub.expect("arm-theta witness has a hub");
            let right = letter(loop_letter(t, lower_edge), signs[1]);
            let left = gamma;
            (
                vec![y(q, e.upper, e.lower, false)],
                vec![
                    left.clone(),
                    y(p, e.arc, e.chord, false),
                    right.clone(),
                    y(hub.vertex, hub.side, hub.toward, false),
                    left.inverse(),
                    y(hub.vertex, hub.toward, hub.side, false),
                    right,
                ],
            )
        }
    })
}

/// How a relation between geometric words was confirmed.
#[derive(Clone, Debug, Serialize)]
pub struct RelationCheck {
    pub lhs: String,
    pub rhs: String,
    /// Both sides reduce to the same critical word.
    pub exact: bool,
    /// Otherwise, how `lhs · rhs⁻¹` was shown trivial (or `Unknown`).
    pub certificate: Certificate,
    pub signs: [bool; 2],
}

/// Reduces both sides and compares them, falling back to a relator certificate.
pub fn check_relation(mc: &mut MorseComplex<'_>, relators: &[Word], lhs: &[GeomLetter], rhs: &[GeomLetter], budget: u64) -> Result<(Word, Word, bool, Certificate)> {
    let t = mc.tree();
    let n = mc.particles();
    let l = mc.reduce_to_critical(&realize(t, n, lhs)?)?;
    let r = mc.reduce_to_critical(&realize(t, n, rhs)?)?;
    if l == r {
        return Ok((l, r, true, Certificate::Free));
    }
    let c = certify_trivial(&l.mul(&r.inverse()), relators, budget, 4);
    Ok((l, r, false, c))
}

/// Replays the template relation of a witness and checks it in the host group.
/// `None` when the witness does not carry a relation in single loop letters.
pub fn replay(mc: &mut MorseComplex<'_>, relators: &[Word], e: &ThetaEmbedding, budget: u64) -> Result<Option<RelationCheck>> {
    let names: Vec<String> = (0..mc.critical_1_cells().len()).map(|i| format!("g{i}")).collect();
    let choices: &[[bool; 2]] = match e.template {
        Template::Theta => &[[false, false], [true, false]],
        Template::VarTheta => &[[false, false], [true, false], [false, true], [true, true]],
    };
    let mut last = None;
    for signs in choices {
        let Some((lhs, rhs)) = embedded_relation(mc.tree(), e, *signs) else { return Ok(None) };
        let (l, r, exact, certificate) = check_relation(mc, relators, &lhs, &rhs, budget)?;
        let check = RelationCheck { lhs: l.display(&names), rhs: r.display(&names), exact, certificate, signs: *signs };
        if exact || certificate.is_trivial() {
            return Ok(Some(check));
        }
        last = Some(check);
    }
    Ok(last)
}

/// The geometric presentation with every loop generator killed.
pub struct LoopQuotient {
    pub geometric: GeometricPresentation,
    pub presentation: Presentation,
    /// Image of each geometric generator.
    pub image: Vec<Word>,
}

impl LoopQuotient {
    pub fn new(mc: &mut MorseComplex<'_>) -> Result<Self> {
        Self::with_identifications(mc, Vec::new())
    }

    /// Also identifies the named generators pairwise.
    pub fn with_identifications(mc: &mut MorseComplex<'_>, identify: Vec<[String; 2]>) -> Result<Self> {
        let geometric = geometric_presentation(mc)?;
        let t = mc.tree();
        // Base-loop moves are one-particle moves even when no generator names them.
        let mut relators = geometric.presentation.relators.clone();
        for kind in base_loop_kinds(t) {
            let critical = mc.reduce_to_critical(&generator_steps(t, mc.particles(), &kind)?)?;
            relators.push(critical.substitute(&|g| geometric.images[g].clone()));
        }
        let extended = Presentation::new(geometric.presentation.names.clone(), relators);
        let kill = geometric.kinds.iter().filter(|k| k.is_loop()).map(|k| k.to_string()).collect();
        let (presentation, image) = quotient_raw(&extended, &QuotientSpec { kill, identify })?;
        Ok(LoopQuotient { geometric, presentation, image })
    }

    /// A geometric word pushed into the quotient.
    pub fn word(&self, mc: &mut MorseComplex<'_>, letters: &[GeomLetter]) -> Result<Word> {
        let t = mc.tree();
        let critical = mc.reduce_to_critical(&realize(t, mc.particles(), letters)?)?;
        let geometric = critical.substitute(&|g| self.geometric.images[g].clone());
        Ok(geometric.substitute(&|g| self.image[g].clone()))
    }

    /// Shows that the Y-exchanges of two triples coincide once loops are killed.
    pub fn identification(&self, mc: &mut MorseComplex<'_>, p: Triple, q: Triple, budget: u64) -> Result<Certificate> {
        let x = self.word(mc, &[GeomLetter::new(p.exchange())])?;
        let y = self.word(mc, &[GeomLetter::new(q.exchange())])?;
        Ok(certify_trivial(&x.mul(&y.inverse()), &self.presentation.relators, budget, 6))
    }
}

/// Verification of one witness.
#[derive(Clone, Debug, Serialize)]
pub struct WitnessCheck {
    pub witness: ThetaEmbedding,
    pub replay: Option<RelationCheck>,
    /// How the two Y-exchanges were shown equal modulo loops.
    pub identified: Certificate,
}

impl WitnessCheck {
    pub fn holds(&self) -> bool {
        self.identified.is_trivial() || self.replay.as_ref().is_some_and(|r| r.exact || r.certificate.is_trivial())
    }
}

/// Replays and certifies every witness of a class computation.
pub fn check_witnesses(mc: &mut MorseComplex<'_>, witnesses: &[ThetaEmbedding]) -> Result<Vec<WitnessCheck>> {
    let budget = crate::budget("CERTIFY", 200_000);
    let relators = mc.relators()?;
    let lq = LoopQuotient::new(mc)?;
    let mut out = Vec::with_capacity(witnesses.len());
    for w in witnesses {
        let replay = replay(mc, &relators, w, budget)?;
        let identified = lq.identification(mc, w.near, w.far, budget)?;
        out.push(WitnessCheck { witness: w.clone(), replay, identified });
    }
    Ok(out)
}

/// The theta-graph relation on the bundled three-edge theta graph, replayed through the
/// identity embedding and checked both exactly and modulo the Morse relators.
pub fn theta3_relation(n: usize, exec: Exec) -> Result<RelationCheck> {
    let f = crate::fixtures::load("theta3")?;
    let t = crate::tree::build_rooted_spanning_tree(&f.graph, &crate::fixtures::tree_options(&f).particles(n))?;
    let all = triples(&t);
    let [p, q] = all[..] else {
        return Err(Error::Invalid("expected two triples on the theta graph".into()));
    };
    let Search::Found(e) = theta_related(&t, p, q) else {
        return Err(Error::Invalid("identity embedding not found".into()));
    };
    let mut mc = MorseComplex::with(&t, n, exec)?;
    let relators = mc.relators()?;
    replay(&mut mc, &relators, &e, crate::budget("CERTIFY", 200_000))?
        .ok_or_else(|| Error::Invalid("identity embedding is not simple".into()))
}

/// Verdict on one relator of the quotient.
#[derive(Clone, Debug, Serialize)]
pub struct RelatorVerdict {
    pub name: String,
    pub word: String,
    pub braid_image: Vec<i32>,
    pub trivial: bool,
    pub verdict: Verdict,
}

/// Report of the one-particle quotient against the Artin braid group.
#[derive(Clone, Debug, Serialize)]
pub struct QuotientReport {
    pub particles: usize,
    pub classes: Vec<Vec<String>>,
    pub killed: Vec<String>,
    pub generators: Vec<String>,
    pub relators: Vec<RelatorVerdict>,
    pub abelianization: AbelianInvariants,
    pub simplified: String,
}

impl QuotientReport {
    pub fn all_trivial(&self) -> bool {
        self.relators.iter().all(|r| r.trivial)
    }

    pub fn abelianization_is_z(&self) -> bool {
        self.abelianization.free_rank == 1 && self.abelianization.torsion.is_empty()
    }
}

/// Artin image: σ_i^{v;a} ↦ σ_i, δ ↦ σ_1⁻¹⋯σ_{n−1}⁻¹ (the circular move passes under the
/// parked particles, so the base-loop relators force this sign).
fn braid_image(kind: &GeneratorKind, inv: bool, n: usize) -> Result<Vec<i32>> {
    let mut w: Vec<i32> = match kind {
        GeneratorKind::YExchange { leaves, .. } => vec![leaves.len() as i32 - 1],
        GeneratorKind::Circular => (1..n as i32).map(|i| -i).collect(),
        other => return Err(Error::Invalid(format!("{other} has no braid image"))),
    };
    if inv {
        w = w.into_iter().rev().map(|x| -x).collect();
    }
    Ok(w)
}

/// Kills the one-particle loops, identifies Y-exchanges of related triples, and sends the
/// survivors to the braid group; every relator image is decided by handle reduction.
pub fn verify_planar_quotient(t: &RootedSpanningTree, n: usize, exec: Exec) -> Result<QuotientReport> {
    if !is_plane(t.host())? {
        return Err(Error::Invalid("rotation system is not a plane embedding".into()));
    }
    let mut mc = MorseComplex::with(t, n, exec)?;
    let classes = theta_classes(t, exec);
    let names = geometric_presentation(&mut mc)?.presentation.names;
    let mut identify = Vec::new();
    for class in &classes.classes {
        let present: Vec<String> =
            class.iter().map(|tr| tr.exchange().to_string()).filter(|s| names.contains(s)).collect();
        for pair in present.windows(2) {
            identify.push([pair[0].clone(), pair[1].clone()]);
        }
    }
    let lq = LoopQuotient::with_identifications(&mut mc, identify)?;
    let killed: Vec<String> = lq.geometric.kinds.iter().filter(|k| k.is_loop()).map(|k| k.to_string()).collect();
    let quotient = lq.presentation;
    let kinds: Vec<GeneratorKind> = quotient.names.iter().map(|s| s.parse()).collect::<Result<_>>()?;
    let verdicts = exec.map(&quotient.relators, |r| -> Result<RelatorVerdict> {
        let mut letters = Vec::new();
        for l in r.letters() {
            letters.extend(braid_image(&kinds[l.gen], l.inv, n)?);
        }
        let bw = BraidWord::new(n, letters)?;
        let verdict = word_problem(&bw);
        Ok(RelatorVerdict {
            name: String::new(),
            word: r.display(&quotient.names),
            trivial: verdict == Verdict::Trivial,
            verdict,
            braid_image: bw.letters,
        })
    });
    let mut relators = Vec::with_capacity(verdicts.len());
    for (i, v) in verdicts.into_iter().enumerate() {
        relators.push(RelatorVerdict { name: format!("r{i}"), ..v? });
    }
    let simplified = tietze_simplify(&quotient, crate::budget("TIETZE", 100_000)).presentation;
    Ok(QuotientReport {
        particles: n,
        classes: classes.classes.iter().map(|c| c.iter().map(Triple::to_string).collect()).collect(),
        killed,
        generators: quotient.names.clone(),
        relators,
        abelianization: quotient.abelianization(),
        simplified: simplified.to_text(),
    })
}

/// The pseudo-braid word `σ_1^{12} σ_2^{13} σ_1^{23} (σ_2^{23} σ_1^{13} σ_2^{12})⁻¹` at `v`
/// with σ_2^{ab} = δ σ_1^{ab} δ⁻¹, over generator names.
pub fn pseudo_braid_word(v: Label) -> (Vec<String>, Word) {
    let names: Vec<String> = [[1, 2], [1, 3], [2, 3]]
        .iter()
        .map(|p| GeneratorKind::y(v, p).to_string())
        .chain(["delta".to_string()])
        .collect();
    let s1 = |k: usize| Word::gen(k);
    let s2 = |k: usize| Word::gen(3).mul(&Word::gen(k)).mul(&Word::gen(3).inverse());
    let lhs = Word::product(&[s1(0), s2(1), s1(2)]);
    let rhs = Word::product(&[s2(2), s1(1), s2(0)]);
    (names, lhs.mul(&rhs.inverse()))
}

/// The one-relator quotient by one-particle loops, compared with the pseudo-braid word.
#[derive(Clone, Debug, Serialize)]
pub struct PseudoBraidReport {
    pub presentation: String,
    pub relator: String,
    pub expected: String,
    pub matches: bool,
}

/// Takes a simplified presentation whose generators are single geometric letters
/// (named as such), kills the loop generators and compares the surviving relator with
/// the pseudo-braid word at `v` up to rotation and inversion.
pub fn pseudo_braid_check(p: &Presentation, v: Label) -> Result<PseudoBraidReport> {
    let kinds: Vec<GeneratorKind> = p.names.iter().map(|s| s.parse()).collect::<Result<_>>()?;
    let kill: Vec<String> = kinds.iter().filter(|k| k.is_loop()).map(|k| k.to_string()).collect();
    let (q, _) = quotient_raw(p, &QuotientSpec { kill, identify: vec![] })?;
    let (names, expected) = pseudo_braid_word(v);
    let canon = |w: &Word, from: &[String]| -> Option<Word> {
        let map: Option<Vec<usize>> = from.iter().map(|s| names.iter().position(|x| x == s)).collect();
        let map = map?;
        Some(Word::new(w.letters().iter().map(|l| Letter::new(map[l.gen], l.inv))).canonical_cyclic())
    };
    let relator = q.relators.first().cloned().unwrap_or_default();
    let matches = q.relators.len() == 1 && canon(&relator, &q.names) == Some(expected.canonical_cyclic());
    Ok(PseudoBraidReport {
        presentation: q.to_text(),
        relator: relator.display(&q.names),
        expected: expected.display(&names),
        matches,
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
    fn faces_of_k4_are_facial() {
        let g = load("k4").unwrap().graph;
        let faces = g.faces().unwrap();
        for f in 0..faces.len() {
            assert!(is_facial_cycle(&g, &faces.face_edges(f)).unwrap());
        }
    }

    #[test]
    fn wheel_rim_is_facial() {
        let g = load("w4").unwrap().graph;
        let rim: Vec<EdgeId> = g.edge_ids().filter(|e| g.edge(*e).ends.iter().all(|v| g.vertex_name(*v) != "h")).collect();
        assert_eq!(rim.len(), 4);
        assert!(is_facial_cycle(&g, &rim).unwrap());
    }

    #[test]
    fn octahedron_equator_separates() {
        let g = load("octahedron").unwrap().graph;
        let names = ["o1", "o2", "i2", "i0"];
        let ids: Vec<VertexId> = names.iter().map(|n| g.vertex_by_name(n).unwrap()).collect();
        let equator: Vec<EdgeId> = (0..4)
            .map(|i| {
                let (a, b) = (ids[i], ids[(i + 1) % 4]);
                g.edge_ids().find(|e| {
                    let ends = g.edge(*e).ends;
                    (ends[0] == a && ends[1] == b) || (ends[0] == b && ends[1] == a)
                }).unwrap()
            })
            .collect();
        assert!(!is_facial_cycle(&g, &equator).unwrap());
    }

    #[test]
    fn facial_check_refuses_low_connectivity() {
        let g = load("theta3").unwrap().graph;
        let faces = g.faces().unwrap();
        assert!(is_facial_cycle(&g, &faces.face_edges(0)).is_err());
        let k4 = load("k4").unwrap().graph;
        let first = k4.edge_ids().next().unwrap();
        assert!(is_facial_cycle(&k4, &[first]).is_err());
    }

    #[test]
    fn theta_graph_relates_its_two_vertices() {
        let t = tree("theta3", 2);
        let all = triples(&t);
        assert_eq!(all.len(), 2);
        match theta_related(&t, all[0], all[1]) {
            Search::Found(e) => {
                assert_eq!(e.template, Template::Theta);
                assert!(!e.mirrored);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn arm_theta_uses_the_hub() {
        let t = tree("vartheta3", 2);
        let f = load("vartheta3").unwrap();
        let label = |n: &str| t.label(f.graph.vertex_by_name(n).unwrap());
        let (v, w) = (label("v"), label("w"));
        let p = triples(&t).into_iter().find(|x| x.vertex == v).unwrap();
        let q = triples(&t).into_iter().find(|x| x.vertex == w).unwrap();
        match theta_related(&t, p, q) {
            Search::Found(e) => {
                assert_eq!(e.template, Template::VarTheta);
                assert_eq!(e.hub.unwrap().vertex, label("z"));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn stars_have_no_relations() {
        let t = tree("star4", 2);
        let all = triples(&t);
        assert_eq!(all.len(), 3);
        assert_eq!(theta_related(&t, all[0], all[1]), Search::ProvenNone);
        assert_eq!(theta_classes(&t, Exec::Sequential).classes.len(), 3);
    }

    #[test]
    fn theta_relation_holds_modulo_one_relator() {
        for n in 2..=3 {
            let r = theta3_relation(n, Exec::Sequential).unwrap();
            assert!(!r.exact);
            assert!(matches!(r.certificate, Certificate::Relator(_)), "{r:?}");
        }
    }

    #[test]
    fn planar_quotient_is_the_braid_group() {
        let t = tree("k4", 2);
        let r = verify_planar_quotient(&t, 2, Exec::Sequential).unwrap();
        assert_eq!(r.classes.len(), 1);
        assert!(r.all_trivial());
        assert!(r.abelianization_is_z());
    }

    #[test]
    fn witnesses_identify_exchanges() {
        let t = tree("w4", 2);
        let c = theta_classes(&t, Exec::Sequential);
        let mut mc = MorseComplex::new(&t, 2).unwrap();
        let checks = check_witnesses(&mut mc, &c.witnesses).unwrap();
        assert!(!checks.is_empty());
        assert!(checks.iter().all(WitnessCheck::holds));
    }

    #[test]
    fn pseudo_braid_word_shape() {
        let (names, w) = pseudo_braid_word(2);
        assert_eq!(names.len(), 4);
        assert_eq!(w.len(), 12);
    }
}
