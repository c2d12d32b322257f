//! Oracles and seeded property suites shared by the integration tests and the acceptance run.
#![allow(dead_code)]

use std::collections::HashMap;

use graph_braid::braid::{word_problem, BraidWord, Verdict};
use graph_braid::dconfig::{Cell, Member, Step};
use graph_braid::exec::Exec;
use graph_braid::fixtures;
use graph_braid::geometric::{geometric_presentation, realize, GeomLetter};
use graph_braid::graph::{Graph, VertexId};
use graph_braid::dconfig::enumerate_cells_with;
use graph_braid::morse::{classify_cell, CellClass, MorseComplex};
use graph_braid::presentation::{
    quotient_and_identify, quotient_raw, tietze_simplify, Letter, Presentation, QuotientSpec, TietzeOptions, Word,
};
use graph_braid::tree::{build_rooted_spanning_tree, RootedSpanningTree};
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Check = Result<(), String>;

/// Seed for the randomized suites; `GBG_TEST_SEED` overrides it.
pub fn seed() -> u64 {
    std::env::var("GBG_TEST_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(0x5eed)
}

pub fn rng(salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed() ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

pub fn tree(name: &str, n: usize) -> RootedSpanningTree {
    let f = fixtures::load(name).unwrap();
    build_rooted_spanning_tree(&f.graph, &fixtures::tree_options(&f).particles(n)).unwrap()
}

/// Bundled graphs that carry a rooted tree (the cycle has no essential vertex).
pub fn tree_fixtures() -> Vec<&'static str> {
    fixtures::names().filter(|n| *n != "cycle5").collect()
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Free rank of the braid group of a star with `k` arms and `n` particles.
pub fn star_rank(n: usize, k: usize) -> usize {
    (k - 2) * binomial(n + k - 2, n - 1) + 1 - binomial(n + k - 2, n)
}

/// A cell of the unordered discrete configuration space, straight from the graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Slot {
    Vertex(usize),
    Edge(usize),
}

fn closure(g: &Graph, s: &Slot) -> Vec<usize> {
    match s {
        Slot::Vertex(v) => vec![*v],
        Slot::Edge(e) => {
            let edge = g.edge(graph_braid::graph::EdgeId(*e));
            vec![edge.ends[0].0, edge.ends[1].0]
        }
    }
}

/// Cells of the configuration complex by dimension, enumerated over all subsets.
struct BruteComplex {
    cells: Vec<Vec<Vec<Slot>>>,
}

impl BruteComplex {
    fn new(g: &Graph, n: usize) -> Self {
        let slots: Vec<Slot> = (0..g.vertex_count())
            .map(Slot::Vertex)
            .chain((0..g.edge_count()).map(Slot::Edge))
            .collect();
        let mut cells = vec![Vec::new(); n + 1];
        let mut pick = Vec::new();
        fn rec(g: &Graph, slots: &[Slot], from: usize, n: usize, pick: &mut Vec<Slot>, out: &mut Vec<Vec<Vec<Slot>>>) {
            if pick.len() == n {
                let mut seen: Vec<usize> = pick.iter().flat_map(|s| closure(g, s)).collect();
                let total = seen.len();
                seen.sort();
                seen.dedup();
                if seen.len() == total {
                    let d = pick.iter().filter(|s| matches!(s, Slot::Edge(_))).count();
                    out[d].push(pick.clone());
                }
                return;
            }
            for i in from..slots.len() {
                pick.push(slots[i].clone());
                rec(g, slots, i + 1, n, pick, out);
                pick.pop();
            }
        }
        rec(g, &slots, 0, n, &mut pick, &mut cells);
        BruteComplex { cells }
    }

    fn counts(&self) -> Vec<usize> {
        self.cells.iter().map(Vec::len).collect()
    }

    /// π₁ of the 2-skeleton: generators are the 1-cells off a BFS spanning tree,
    /// relators the boundaries of the squares.
    fn fundamental_group(&self, g: &Graph) -> Presentation {
        let zero: HashMap<Vec<Slot>, usize> =
            self.cells[0].iter().enumerate().map(|(i, c)| (c.clone(), i)).collect();
        let one: HashMap<Vec<Slot>, usize> =
            self.cells.get(1).map_or_else(HashMap::new, |cs| cs.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect());
        let replaced = |c: &[Slot], old: &Slot, new: Slot| {
            let mut v: Vec<Slot> = c.iter().filter(|s| *s != old).cloned().collect();
            v.push(new);
            v.sort();
            v
        };
        // endpoints of each 1-cell: edge traversed from ends[0] to ends[1]
        let ends: Vec<(usize, usize)> = self.cells.get(1).map_or_else(Vec::new, |cs| {
            cs.iter()
                .map(|c| {
                    let e = c.iter().find(|s| matches!(s, Slot::Edge(_))).unwrap();
                    let [a, b] = closure(g, e)[..] else { unreachable!() };
                    (zero[&replaced(c, e, Slot::Vertex(a))], zero[&replaced(c, e, Slot::Vertex(b))])
                })
                .collect()
        });
        let mut adj = vec![Vec::new(); zero.len()];
        for (i, (a, b)) in ends.iter().enumerate() {
            adj[*a].push((i, *b));
            adj[*b].push((i, *a));
        }
        let mut in_tree = vec![false; ends.len()];
        let mut seen = vec![false; zero.len()];
        for start in 0..zero.len() {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut queue = std::collections::VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for &(e, w) in &adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        in_tree[e] = true;
                        queue.push_back(w);
                    }
                }
            }
        }
        let mut gen_of = vec![None; ends.len()];
        let mut names = Vec::new();
        for (i, t) in in_tree.iter().enumerate() {
            if !t {
                gen_of[i] = Some(names.len());
                names.push(format!("x{i}"));
            }
        }
        let letter = |c: Vec<Slot>, inv: bool| -> Option<Letter> { gen_of[one[&c]].map(|g| Letter::new(g, inv)) };
        let mut relators = Vec::new();
        for sq in self.cells.get(2).into_iter().flatten() {
            let es: Vec<&Slot> = sq.iter().filter(|s| matches!(s, Slot::Edge(_))).collect();
            let [a1, b1] = closure(g, es[0])[..] else { unreachable!() };
            let [a2, b2] = closure(g, es[1])[..] else { unreachable!() };
            // (a1,a2) → (b1,a2) → (b1,b2) → (a1,b2) → (a1,a2)
            let word = [
                letter(replaced(sq, es[1], Slot::Vertex(a2)), false),
                letter(replaced(sq, es[0], Slot::Vertex(b1)), false),
                letter(replaced(sq, es[1], Slot::Vertex(b2)), true),
                letter(replaced(sq, es[0], Slot::Vertex(a1)), true),
            ];
            relators.push(Word::new(word.into_iter().flatten()));
        }
        Presentation::new(names, relators)
    }
}

/// Cell counts of the configuration space of two particles on a three-arm star.
pub fn hexagon_counts() -> Vec<usize> {
    let g = graph_braid::graph::build::star(3);
    BruteComplex::new(&g, 2).counts()
}

/// Abelianizations of the brute-force π₁ and of the Morse presentation.
pub fn abelianizations(t: &RootedSpanningTree, n: usize) -> (String, String) {
    let brute = BruteComplex::new(t.host(), n).fundamental_group(t.host());
    let morse = graph_braid::morse::morse_presentation(t, n).unwrap().presentation();
    (brute.abelianization().to_string(), morse.abelianization().to_string())
}

pub fn star_tree(k: usize, n: usize) -> RootedSpanningTree {
    let g = graph_braid::graph::build::star(k);
    let opts = graph_braid::tree::TreeOptions { root: Some(VertexId(1)), ..Default::default() }.particles(n);
    build_rooted_spanning_tree(&g, &opts).unwrap()
}

/// Every redundant cell's partner is collapsible back onto it, and vice versa.
pub fn matching_is_bijective(t: &RootedSpanningTree, n: usize) -> Check {
    let mut redundant = [0usize; 3];
    let mut collapsible = [0usize; 3];
    let mut critical0 = 0;
    for d in 0..=2 {
        for c in enumerate_cells_with(t, n, Some(d), Exec::default()).map_err(|e| e.to_string())? {
            match classify_cell(&c, t).map_err(|e| e.to_string())? {
                CellClass::Critical => critical0 += usize::from(d == 0),
                CellClass::Redundant(up) => {
                    redundant[d] += 1;
                    if classify_cell(&up, t).map_err(|e| e.to_string())? != CellClass::Collapsible(c.clone()) {
                        return Err(format!("{} is not matched back", up.dump(t)));
                    }
                }
                CellClass::Collapsible(down) => {
                    collapsible[d] += 1;
                    if classify_cell(&down, t).map_err(|e| e.to_string())? != CellClass::Redundant(c.clone()) {
                        return Err(format!("{} is not matched back", down.dump(t)));
                    }
                }
            }
        }
    }
    if critical0 != 1 || collapsible[0] != 0 || redundant[0] != collapsible[1] || redundant[1] != collapsible[2] {
        return Err(format!("critical0={critical0} redundant={redundant:?} collapsible={collapsible:?}"));
    }
    Ok(())
}

/// A 1-cell leaving the 0-cell `c`, if any particle can move.
fn random_step(t: &RootedSpanningTree, c: &Cell, rng: &mut impl Rng) -> Option<Step> {
    let mut options = Vec::new();
    for v in c.vertices() {
        for &e in t.incident(v) {
            let cell = c.replace(Member::Vertex(v), Member::Edge(e as u32));
            if cell.validate(t).is_ok() {
                options.push(Step { cell, inv: t.edge(e).iota != v });
            }
        }
    }
    options.choose(rng).cloned()
}

/// A random loop at the base: realized generator loops joined by out-and-back excursions.
pub fn random_loop(t: &RootedSpanningTree, n: usize, letters: &[GeomLetter], rng: &mut impl Rng) -> Vec<Step> {
    let mut steps = Vec::new();
    for _ in 0..rng.random_range(1..=4) {
        let mut l = letters.choose(rng).expect("generators").clone();
        if rng.random_bool(0.5) {
            l = l.inverse();
        }
        steps.extend(realize(t, n, &[l]).unwrap());
        let mut at = Cell::base(n);
        let mut out = Vec::new();
        for _ in 0..rng.random_range(0..6) {
            let Some(s) = random_step(t, &at, rng) else { break };
            at = s.endpoints(t).1;
            out.push(s);
        }
        let back: Vec<Step> = out.iter().rev().map(Step::inverse).collect();
        steps.extend(out);
        steps.extend(back);
    }
    steps
}

/// F^∞ of a random loop is a fixed point of F^∞.
pub fn reduction_is_idempotent(name: &str, n: usize, loops: usize) -> Check {
    let t = tree(name, n);
    let mut mc = MorseComplex::new(&t, n).map_err(|e| e.to_string())?;
    let kinds = geometric_presentation(&mut mc).map_err(|e| e.to_string())?.kinds;
    let letters: Vec<GeomLetter> = kinds.into_iter().map(GeomLetter::new).collect();
    let mut rng = rng(name.bytes().map(u64::from).sum::<u64>() + n as u64);
    for i in 0..loops {
        let path = random_loop(&t, n, &letters, &mut rng);
        let once = mc.reduce_to_critical(&path).map_err(|e| format!("loop {i}: {e}"))?;
        // a critical word is its own F^∞ image, letter by letter
        let twice = mc.reduce_path(&mc.realize(&once)).map_err(|e| e.to_string())?;
        if once != twice {
            return Err(format!("{name} n={n} loop {i}: {once:?} then {twice:?}"));
        }
    }
    Ok(())
}

fn random_word(gens: usize, max_len: usize, rng: &mut impl Rng) -> Word {
    let len = rng.random_range(0..=max_len);
    Word::new((0..len).map(|_| Letter::new(rng.random_range(0..gens), rng.random_bool(0.5))))
}

pub fn random_presentation(rng: &mut impl Rng) -> Presentation {
    let gens = rng.random_range(1..=6);
    let rels = rng.random_range(0..=5);
    let names = (0..gens).map(|i| format!("a{i}")).collect();
    Presentation::new(names, (0..rels).map(|_| random_word(gens, 8, rng)).collect())
}

/// Tietze moves and kill/identify quotients keep the abelianization.
pub fn tietze_preserves_abelianization(count: usize) -> Check {
    let mut rng = rng(1);
    for i in 0..count {
        let p = random_presentation(&mut rng);
        let before = p.abelianization();
        let after = tietze_simplify(&p, 10_000).presentation.abelianization();
        if before != after {
            return Err(format!("presentation {i}: {} became {}", before, after));
        }
        let mut spec = QuotientSpec::default();
        for name in &p.names {
            match rng.random_range(0..4) {
                0 => spec.kill.push(name.clone()),
                1 => spec.identify.push([name.clone(), p.names.choose(&mut rng).unwrap().clone()]),
                _ => {}
            }
        }
        let raw = quotient_raw(&p, &spec).map_err(|e| e.to_string())?.0.abelianization();
        let simplified =
            quotient_and_identify(&p, &spec, &TietzeOptions::default()).map_err(|e| e.to_string())?.presentation;
        if raw != simplified.abelianization() {
            return Err(format!("quotient {i}: {} became {}", raw, simplified.abelianization()));
        }
    }
    Ok(())
}

/// w·w⁻¹ is the trivial braid.
pub fn braid_inverse_is_trivial(count: usize) -> Check {
    let mut rng = rng(2);
    for i in 0..count {
        let strands = rng.random_range(2..=5);
        let len = rng.random_range(0..=16);
        let letters: Vec<i32> = (0..len)
            .map(|_| {
                let g = rng.random_range(1..strands as i32);
                if rng.random_bool(0.5) {
                    -g
                } else {
                    g
                }
            })
            .collect();
        let w = BraidWord::new(strands, letters).map_err(|e| e.to_string())?;
        let verdict = word_problem(&w.mul(&w.inverse()));
        if verdict != Verdict::Trivial {
            return Err(format!("word {i} {w:?}: {verdict:?}"));
        }
    }
    Ok(())
}
