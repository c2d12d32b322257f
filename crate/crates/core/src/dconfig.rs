//! Cells of the discrete configuration space and their boundaries.

use std::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::tree::{Label, RootedSpanningTree};

/// A closed cell of the host: a vertex label or a labelled edge index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Member {
    Vertex(Label),
    Edge(u32),
}

/// A cube of the configuration complex: n pairwise closure-disjoint members, sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell(SmallVec<[Member; 6]>);

impl Cell {
    /// Sorts members; does not check disjointness (see [`Cell::validate`]).
    pub fn new(members: impl IntoIterator<Item = Member>) -> Self {
        let mut m: SmallVec<[Member; 6]> = members.into_iter().collect();
        m.sort_unstable();
        Cell(m)
    }

    pub fn from_vertices(labels: impl IntoIterator<Item = Label>) -> Self {
        Cell::new(labels.into_iter().map(Member::Vertex))
    }

    /// The base configuration {0, …, n−1}.
    pub fn base(n: usize) -> Self {
        Cell::from_vertices(0..n as Label)
    }

    pub fn members(&self) -> &[Member] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.len()
    }

    pub fn dim(&self) -> usize {
        self.0.iter().filter(|m| matches!(m, Member::Edge(_))).count()
    }

    pub fn vertices(&self) -> impl Iterator<Item = Label> + '_ {
        self.0.iter().filter_map(|m| match m {
            Member::Vertex(v) => Some(*v),
            Member::Edge(_) => None,
        })
    }

    pub fn edges(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().filter_map(|m| match m {
            Member::Edge(e) => Some(*e as usize),
            Member::Vertex(_) => None,
        })
    }

    pub fn contains(&self, m: Member) -> bool {
        self.0.binary_search(&m).is_ok()
    }

    /// Replaces one member by another.
    pub fn replace(&self, old: Member, new: Member) -> Cell {
        Cell::new(self.0.iter().map(|m| if *m == old { new } else { *m }))
    }

    /// Whether some member's closure contains vertex `v`.
    pub fn covers(&self, t: &RootedSpanningTree, v: Label) -> bool {
        self.0.iter().any(|m| match m {
            Member::Vertex(x) => *x == v,
            Member::Edge(e) => {
                let e = t.edge(*e as usize);
                e.iota == v || e.tau == v
            }
        })
    }

    /// Checks member ranges and closure disjointness.
    pub fn validate(&self, t: &RootedSpanningTree) -> Result<()> {
        let mut used = vec![false; t.vertex_count()];
        for m in &self.0 {
            let touched: SmallVec<[Label; 2]> = match m {
                Member::Vertex(v) => {
                    if *v as usize >= t.vertex_count() {
                        return Err(Error::InvalidCell(format!("vertex {v} out of range")));
                    }
                    SmallVec::from_slice(&[*v])
                }
                Member::Edge(e) => {
                    if *e as usize >= t.edges().len() {
                        return Err(Error::InvalidCell(format!("edge {e} out of range")));
                    }
                    let e = t.edge(*e as usize);
                    SmallVec::from_slice(&[e.iota, e.tau])
                }
            };
            for v in touched {
                if std::mem::replace(&mut used[v as usize], true) {
                    return Err(Error::InvalidCell(format!("closures meet at vertex {v}")));
                }
            }
        }
        Ok(())
    }

    /// Dump form: members comma-separated, edges as "ι-τ".
    pub fn dump(&self, t: &RootedSpanningTree) -> String {
        self.0
            .iter()
            .map(|m| match m {
                Member::Vertex(v) => v.to_string(),
                Member::Edge(e) => {
                    let e = t.edge(*e as usize);
                    format!("{}-{}", e.iota, e.tau)
                }
            })
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Notation with edges first, written e_τ^ι, e.g. `{e2^7,3,8}`.
    pub fn notation(&self, t: &RootedSpanningTree) -> String {
        let mut parts: Vec<String> = self
            .edges()
            .map(|e| {
                let e = t.edge(e);
                format!("e{}^{}", e.tau, e.iota)
            })
            .collect();
        parts.extend(self.vertices().map(|v| v.to_string()));
        format!("{{{}}}", parts.join(","))
    }

    /// Parses the dump form back into a cell.
    pub fn parse_dump(text: &str, t: &RootedSpanningTree) -> Result<Cell> {
        let mut members = Vec::new();
        for part in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            if let Some((a, b)) = part.split_once('-') {
                let a: Label = a.parse().map_err(|_| Error::Parse(format!("bad edge `{part}`")))?;
                let b: Label = b.parse().map_err(|_| Error::Parse(format!("bad edge `{part}`")))?;
                let e = t.edge_between(a, b).ok_or_else(|| Error::InvalidCell(format!("no edge {part}")))?;
                members.push(Member::Edge(e as u32));
            } else {
                let v: Label = part.parse().map_err(|_| Error::Parse(format!("bad vertex `{part}`")))?;
                members.push(Member::Vertex(v));
            }
        }
        let c = Cell::new(members);
        c.validate(t)?;
        Ok(c)
    }
}

/// A signed 1-cell: `inv == false` moves the particle from ι(e) to τ(e).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Step {
    pub cell: Cell,
    pub inv: bool,
}

impl Step {
    pub fn inverse(&self) -> Step {
        Step { cell: self.cell.clone(), inv: !self.inv }
    }

    /// Start and end 0-cells.
    pub fn endpoints(&self, t: &RootedSpanningTree) -> (Cell, Cell) {
        let e = self.cell.edges().next().expect("1-cell");
        let le = t.edge(e);
        let top = self.cell.replace(Member::Edge(e as u32), Member::Vertex(le.iota));
        let bottom = self.cell.replace(Member::Edge(e as u32), Member::Vertex(le.tau));
        if self.inv {
            (bottom, top)
        } else {
            (top, bottom)
        }
    }
}

/// Appends a step, cancelling against the last one when inverse.
pub fn push_reduced(word: &mut Vec<Step>, s: Step) {
    if let Some(last) = word.last() {
        if last.cell == s.cell && last.inv != s.inv {
            word.pop();
            return;
        }
    }
    word.push(s);
}

pub fn free_reduce_steps(word: &[Step]) -> Vec<Step> {
    let mut out = Vec::with_capacity(word.len());
    for s in word {
        push_reduced(&mut out, s.clone());
    }
    out
}

pub fn invert_steps(word: &[Step]) -> Vec<Step> {
    word.iter().rev().map(Step::inverse).collect()
}

/// Checks that consecutive steps telescope and the loop closes at `base`.
pub fn check_closed(word: &[Step], base: &Cell, t: &RootedSpanningTree) -> Result<()> {
    let mut at = base.clone();
    for (i, s) in word.iter().enumerate() {
        if s.cell.dim() != 1 {
            return Err(Error::NotClosed(format!("letter {i} is not a 1-cell")));
        }
        let (from, to) = s.endpoints(t);
        if from != at {
            return Err(Error::NotClosed(format!("letter {i} starts at {} not {}", from.dump(t), at.dump(t))));
        }
        at = to;
    }
    if &at != base {
        return Err(Error::NotClosed(format!("ends at {}", at.dump(t))));
    }
    Ok(())
}

impl fmt::Display for Member {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Member::Vertex(v) => write!(f, "v{v}"),
            Member::Edge(e) => write!(f, "e#{e}"),
        }
    }
}

/// Refuses hosts that are not sufficiently subdivided for `n` particles.
pub fn check_sufficient(t: &RootedSpanningTree, n: usize) -> Result<()> {
    let plan = crate::tree::sufficiency_plan(t.host(), n)?;
    if !plan.is_empty() {
        return Err(Error::InsufficientSubdivision { n, reason: "run ensure_sufficient_subdivision first".into() });
    }
    Ok(())
}

/// All cells of D_n, optionally of one dimension, in canonical order.
pub fn enumerate_cells(t: &RootedSpanningTree, n: usize, dim: Option<usize>) -> Result<Vec<Cell>> {
    enumerate_cells_with(t, n, dim, Exec::default())
}

pub fn enumerate_cells_with(t: &RootedSpanningTree, n: usize, dim: Option<usize>, exec: Exec) -> Result<Vec<Cell>> {
    if n >= 2 {
        check_sufficient(t, n)?;
    }
    let nv = t.vertex_count();
    let atoms: Vec<Member> =
        (0..nv as Label).map(Member::Vertex).chain((0..t.edges().len() as u32).map(Member::Edge)).collect();
    let closure: Vec<SmallVec<[Label; 2]>> = atoms
        .iter()
        .map(|m| match m {
            Member::Vertex(v) => SmallVec::from_slice(&[*v]),
            Member::Edge(e) => {
                let e = t.edge(*e as usize);
                SmallVec::from_slice(&[e.iota, e.tau])
            }
        })
        .collect();
    let is_edge: Vec<bool> = atoms.iter().map(|m| matches!(m, Member::Edge(_))).collect();
    let ctx = Enum { atoms: &atoms, closure: &closure, is_edge: &is_edge, n, dim };
    let out = exec.flat_map_range(atoms.len(), |first| {
        let mut used = vec![false; nv];
        let mut chosen = Vec::with_capacity(n);
        let mut out = Vec::new();
        if ctx.try_take(first, &mut used) {
            chosen.push(first);
            ctx.extend(first + 1, &mut chosen, &mut used, &mut out);
        }
        out
    });
    Ok(out)
}

struct Enum<'a> {
    atoms: &'a [Member],
    closure: &'a [SmallVec<[Label; 2]>],
    is_edge: &'a [bool],
    n: usize,
    dim: Option<usize>,
}

impl Enum<'_> {
    fn try_take(&self, a: usize, used: &mut [bool]) -> bool {
        if self.closure[a].iter().any(|v| used[*v as usize]) {
            return false;
        }
        for v in &self.closure[a] {
            used[*v as usize] = true;
        }
        true
    }

    fn release(&self, a: usize, used: &mut [bool]) {
        for v in &self.closure[a] {
            used[*v as usize] = false;
        }
    }

    fn extend(&self, from: usize, chosen: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Cell>) {
        let edges = chosen.iter().filter(|a| self.is_edge[**a]).count();
        if let Some(d) = self.dim {
            if edges > d || edges + (self.n - chosen.len()) < d {
                return;
            }
        }
        if chosen.len() == self.n {
            out.push(Cell(chosen.iter().map(|a| self.atoms[*a]).collect()));
            return;
        }
        for a in from..self.atoms.len() {
            if self.try_take(a, used) {
                chosen.push(a);
                self.extend(a + 1, chosen, used, out);
                chosen.pop();
                self.release(a, used);
            }
        }
    }
}

/// The four faces of a square, edges e₁ < e₂:
/// `a` moves e₁ with e₂ at ι, `b` moves e₂ with e₁ at τ, `c` moves e₁ with e₂ at τ, `d` moves e₂ with e₁ at ι.
pub struct SquareFaces {
    pub a: Cell,
    pub b: Cell,
    pub c: Cell,
    pub d: Cell,
}

pub fn square_faces(c: &Cell, t: &RootedSpanningTree) -> Result<SquareFaces> {
    let edges: Vec<usize> = c.edges().collect();
    if edges.len() != 2 {
        return Err(Error::InvalidCell(format!("boundary word needs a 2-cell, got dimension {}", edges.len())));
    }
    let (e1, e2) = (edges[0], edges[1]);
    let (l1, l2) = (t.edge(e1), t.edge(e2));
    let at = |e: usize, v: Label| c.replace(Member::Edge(e as u32), Member::Vertex(v));
    Ok(SquareFaces { a: at(e2, l2.iota), b: at(e1, l1.tau), c: at(e2, l2.tau), d: at(e1, l1.iota) })
}

/// Boundary loop of a square: c · b⁻¹ · a⁻¹ · d, starting at the corner with e₁ at ι and e₂ at τ
/// and moving e₁ first.
pub fn boundary_word(c: &Cell, t: &RootedSpanningTree) -> Result<Vec<Step>> {
    let f = square_faces(c, t)?;
    Ok(vec![
        Step { cell: f.c, inv: false },
        Step { cell: f.b, inv: true },
        Step { cell: f.a, inv: true },
        Step { cell: f.d, inv: false },
    ])
}
