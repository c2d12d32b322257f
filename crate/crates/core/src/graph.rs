//! Topological graphs carrying a clockwise rotation system.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct VertexId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EdgeId(pub usize);

/// One end of an edge; `side` 0 sits at `ends[0]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfEdge {
    pub edge: EdgeId,
    pub side: u8,
}

impl HalfEdge {
    pub fn new(edge: EdgeId, side: u8) -> Self {
        HalfEdge { edge, side }
    }

    pub fn twin(self) -> Self {
        HalfEdge { edge: self.edge, side: 1 - self.side }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub ends: [VertexId; 2],
    pub name: String,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.ends[0] == self.ends[1]
    }

    pub fn other(&self, v: VertexId) -> VertexId {
        if self.ends[0] == v {
            self.ends[1]
        } else {
            self.ends[0]
        }
    }
}

/// Result of splitting one edge in place.
#[derive(Clone, Copy, Debug)]
pub struct Split {
    pub vertex: VertexId,
    /// Keeps the old id, runs from `ends[0]` to the new vertex.
    pub first: EdgeId,
    /// Fresh edge from the new vertex to the old `ends[1]`.
    pub second: EdgeId,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    names: Vec<String>,
    edges: Vec<Edge>,
    rotation: Vec<Vec<HalfEdge>>,
    root: Option<VertexId>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Connectivity {
    pub value: usize,
    pub connected: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceDecomposition {
    /// Closed walks of directed half-edges (each starting at its `ends[side]`).
    pub faces: Vec<Vec<HalfEdge>>,
    pub unbounded: usize,
}

impl FaceDecomposition {
    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    /// Edge ids on the boundary of a face, in walk order.
    pub fn face_edges(&self, face: usize) -> Vec<EdgeId> {
        self.faces[face].iter().map(|h| h.edge).collect()
    }
}

impl Default for Graph {
    fn default() -> Self {
        Self::new()
    }
}

impl Graph {
    pub fn new() -> Self {
        Graph { names: Vec::new(), edges: Vec::new(), rotation: Vec::new(), root: None }
    }

    pub fn add_vertex(&mut self, name: impl Into<String>) -> VertexId {
        self.names.push(name.into());
        self.rotation.push(Vec::new());
        VertexId(self.names.len() - 1)
    }

    /// Adds an edge and appends its half-edges to the end of each endpoint's rotation.
    pub fn add_edge(&mut self, a: VertexId, b: VertexId, name: impl Into<String>) -> EdgeId {
        let id = EdgeId(self.edges.len());
        self.edges.push(Edge { ends: [a, b], name: name.into() });
        self.rotation[a.0].push(HalfEdge::new(id, 0));
        self.rotation[b.0].push(HalfEdge::new(id, 1));
        id
    }

    /// Replaces the clockwise order at `v`; must be a permutation of its half-edges.
    pub fn set_rotation(&mut self, v: VertexId, order: Vec<HalfEdge>) -> Result<()> {
        let mut current = self.rotation[v.0].clone();
        let mut given = order.clone();
        current.sort();
        given.sort();
        if current != given {
            return Err(Error::Rotation(format!("rotation at `{}` does not list its half-edges", self.names[v.0])));
        }
        self.rotation[v.0] = order;
        Ok(())
    }

    pub fn set_root(&mut self, root: Option<VertexId>) {
        self.root = root;
    }

    pub fn root(&self) -> Option<VertexId> {
        self.root
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        (0..self.names.len()).map(VertexId)
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> {
        (0..self.edges.len()).map(EdgeId)
    }

    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e.0]
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.names[v.0]
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<VertexId> {
        self.names.iter().position(|n| n == name).map(VertexId)
    }

    pub fn edge_by_name(&self, name: &str) -> Option<EdgeId> {
        self.edges.iter().position(|e| e.name == name).map(EdgeId)
    }

    pub fn rotation(&self, v: VertexId) -> &[HalfEdge] {
        &self.rotation[v.0]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.rotation[v.0].len()
    }

    pub fn is_essential(&self, v: VertexId) -> bool {
        self.degree(v) >= 3
    }

    pub fn origin(&self, h: HalfEdge) -> VertexId {
        self.edges[h.edge.0].ends[h.side as usize]
    }

    pub fn head(&self, h: HalfEdge) -> VertexId {
        self.edges[h.edge.0].ends[1 - h.side as usize]
    }

    /// Neighbours of `v` in rotation order (repeated for multi-edges).
    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = (EdgeId, VertexId)> + '_ {
        self.rotation[v.0].iter().map(move |h| (h.edge, self.head(*h)))
    }

    pub fn is_connected(&self) -> bool {
        if self.names.is_empty() {
            return true;
        }
        self.component_sizes(&HashSet::new()).len() == 1
    }

    /// Sizes of connected components after removing `removed` vertices.
    pub fn component_sizes(&self, removed: &HashSet<VertexId>) -> Vec<usize> {
        let mut seen = vec![false; self.names.len()];
        let mut sizes = Vec::new();
        for s in self.vertices() {
            if seen[s.0] || removed.contains(&s) {
                continue;
            }
            seen[s.0] = true;
            let mut queue = VecDeque::from([s]);
            let mut size = 0;
            while let Some(v) = queue.pop_front() {
                size += 1;
                for (_, w) in self.neighbors(v) {
                    if !seen[w.0] && !removed.contains(&w) {
                        seen[w.0] = true;
                        queue.push_back(w);
                    }
                }
            }
            sizes.push(size);
        }
        sizes
    }

    fn fresh_vertex_name(&self, base: &str) -> String {
        let taken: HashSet<&str> = self.names.iter().map(String::as_str).collect();
        (1..).map(|k| format!("{base}.{k}")).find(|c| !taken.contains(c.as_str())).unwrap()
    }

    fn fresh_edge_name(&self, base: &str) -> String {
        let taken: HashSet<&str> = self.edges.iter().map(|e| e.name.as_str()).collect();
        (1..).map(|k| format!("{base}.{k}")).find(|c| !taken.contains(c.as_str())).unwrap()
    }

    /// Splits `e` at a fresh bivalent vertex, in place.
    pub fn split_edge(&mut self, e: EdgeId) -> Split {
        let [_, b] = self.edges[e.0].ends;
        let vname = self.fresh_vertex_name(&format!("{}~", self.edges[e.0].name));
        let ename = self.fresh_edge_name(&self.edges[e.0].name);
        let x = VertexId(self.names.len());
        self.names.push(vname);
        let second = EdgeId(self.edges.len());
        self.edges.push(Edge { ends: [x, b], name: ename });
        self.edges[e.0].ends[1] = x;
        for h in self.rotation[b.0].iter_mut() {
            if *h == HalfEdge::new(e, 1) {
                *h = HalfEdge::new(second, 1);
            }
        }
        self.rotation.push(vec![HalfEdge::new(e, 1), HalfEdge::new(second, 0)]);
        Split { vertex: x, first: e, second }
    }

    /// Splits `e` by `times` fresh bivalent vertices.
    pub fn subdivide(&self, e: EdgeId, times: usize) -> Result<Graph> {
        if e.0 >= self.edges.len() {
            return Err(Error::UnknownEdge(format!("#{}", e.0)));
        }
        if times == 0 {
            return Err(Error::Invalid("subdivision count must be positive".into()));
        }
        let mut g = self.clone();
        let mut target = e;
        for _ in 0..times {
            target = g.split_edge(target).second;
        }
        Ok(g)
    }

    /// Removes a bivalent vertex, merging its two edges. Loops at `v` are left alone.
    pub fn smooth(&self, v: VertexId) -> Result<Graph> {
        let mut g = self.clone();
        let mut alive_v = vec![true; g.names.len()];
        let mut alive_e = vec![true; g.edges.len()];
        if !g.smooth_in_place(v, &mut alive_v, &mut alive_e) {
            return Err(Error::Invalid(format!("vertex `{}` cannot be smoothed", self.names[v.0])));
        }
        Ok(g.compact(&alive_v, &alive_e))
    }

    fn smooth_in_place(&mut self, v: VertexId, alive_v: &mut [bool], alive_e: &mut [bool]) -> bool {
        let rot = &self.rotation[v.0];
        if rot.len() != 2 || rot[0].edge == rot[1].edge {
            return false;
        }
        let (h1, h2) = (rot[0], rot[1]);
        let far1 = h1.twin();
        let far2 = h2.twin();
        let b = self.origin(far2);
        // h1's edge now reaches b through the slot far2 occupied.
        self.edges[h1.edge.0].ends[h1.side as usize] = b;
        for h in self.rotation[b.0].iter_mut() {
            if *h == far2 {
                *h = h1;
            }
        }
        let _ = far1;
        alive_e[h2.edge.0] = false;
        alive_v[v.0] = false;
        self.rotation[v.0].clear();
        true
    }

    /// Keeps only live vertices and edges, renumbering densely.
    fn compact(&self, alive_v: &[bool], alive_e: &[bool]) -> Graph {
        let mut vmap = vec![usize::MAX; self.names.len()];
        let mut emap = vec![usize::MAX; self.edges.len()];
        let mut g = Graph::new();
        for v in self.vertices() {
            if alive_v[v.0] {
                vmap[v.0] = g.names.len();
                g.names.push(self.names[v.0].clone());
                g.rotation.push(Vec::new());
            }
        }
        for e in self.edge_ids() {
            if alive_e[e.0] {
                emap[e.0] = g.edges.len();
                let old = &self.edges[e.0];
                g.edges.push(Edge {
                    ends: [VertexId(vmap[old.ends[0].0]), VertexId(vmap[old.ends[1].0])],
                    name: old.name.clone(),
                });
            }
        }
        for v in self.vertices() {
            if alive_v[v.0] {
                g.rotation[vmap[v.0]] =
                    self.rotation[v.0].iter().map(|h| HalfEdge::new(EdgeId(emap[h.edge.0]), h.side)).collect();
            }
        }
        g.root = self.root.filter(|r| alive_v[r.0]).map(|r| VertexId(vmap[r.0]));
        g
    }

    /// Smooths bivalent vertices until none is left (a lone cycle keeps one vertex with a loop).
    pub fn smooth_all(&self) -> Graph {
        let mut g = self.clone();
        let mut alive_v = vec![true; g.names.len()];
        let mut alive_e = vec![true; g.edges.len()];
        loop {
            let mut changed = false;
            for v in 0..g.names.len() {
                if alive_v[v] && g.smooth_in_place(VertexId(v), &mut alive_v, &mut alive_e) {
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        g.compact(&alive_v, &alive_e)
    }

    /// Smallest simple graph homeomorphic to `self`.
    pub fn minimal_simplicial_representative(&self) -> Result<Graph> {
        if !self.is_connected() {
            return Err(Error::Disconnected);
        }
        let mut g = self.smooth_all();
        let loops: Vec<EdgeId> = g.edge_ids().filter(|e| g.edge(*e).is_loop()).collect();
        for e in loops {
            let s = g.split_edge(e);
            g.split_edge(s.second);
        }
        let mut bundles: BTreeMap<(usize, usize), Vec<EdgeId>> = BTreeMap::new();
        for e in g.edge_ids() {
            let [a, b] = g.edge(e).ends;
            bundles.entry((a.0.min(b.0), a.0.max(b.0))).or_default().push(e);
        }
        for (_, bundle) in bundles {
            for &e in &bundle[1..] {
                g.split_edge(e);
            }
        }
        Ok(g)
    }

    pub fn first_betti(&self) -> Result<usize> {
        if !self.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(self.edges.len() + 1 - self.names.len())
    }

    /// Vertex connectivity of the minimal simplicial representative.
    pub fn topological_connectivity(&self) -> Connectivity {
        if !self.is_connected() {
            return Connectivity { value: 0, connected: false };
        }
        let g = self.minimal_simplicial_representative().expect("connected");
        let n = g.vertex_count();
        if n <= 1 {
            return Connectivity { value: 1, connected: true };
        }
        let adj: Vec<Vec<usize>> = g
            .vertices()
            .map(|v| {
                let mut ns: Vec<usize> = g.neighbors(v).map(|(_, w)| w.0).collect();
                ns.sort_unstable();
                ns.dedup();
                ns
            })
            .collect();
        let mut best = usize::MAX;
        for s in 0..n {
            for t in s + 1..n {
                best = best.min(local_connectivity(&adj, s, t));
            }
        }
        Connectivity { value: best, connected: true }
    }

    /// Faces by next-half-edge traversal; the longest walk is taken as unbounded.
    pub fn faces(&self) -> Result<FaceDecomposition> {
        self.check_rotation()?;
        let mut position: HashMap<HalfEdge, usize> = HashMap::new();
        for v in self.vertices() {
            for (i, h) in self.rotation[v.0].iter().enumerate() {
                position.insert(*h, i);
            }
        }
        let mut seen: HashSet<HalfEdge> = HashSet::new();
        let mut faces = Vec::new();
        for e in self.edge_ids() {
            for side in 0..2u8 {
                let start = HalfEdge::new(e, side);
                if seen.contains(&start) {
                    continue;
                }
                let mut walk = Vec::new();
                let mut h = start;
                loop {
                    if !seen.insert(h) {
                        if h == start {
                            break;
                        }
                        return Err(Error::Rotation("face walk does not close".into()));
                    }
                    walk.push(h);
                    let arrive = h.twin();
                    let w = self.origin(arrive);
                    let rot = &self.rotation[w.0];
                    h = rot[(position[&arrive] + 1) % rot.len()];
                }
                faces.push(walk);
            }
        }
        let unbounded = faces
            .iter()
            .enumerate()
            .max_by(|(i, a), (j, b)| a.len().cmp(&b.len()).then(j.cmp(i)))
            .map(|(i, _)| i)
            .unwrap_or(0);
        Ok(FaceDecomposition { faces, unbounded })
    }

    fn check_rotation(&self) -> Result<()> {
        let mut count: HashMap<HalfEdge, usize> = HashMap::new();
        for v in self.vertices() {
            for h in &self.rotation[v.0] {
                if self.origin(*h) != v {
                    return Err(Error::Rotation(format!("half-edge of `{}` listed at `{}`", self.edges[h.edge.0].name, self.names[v.0])));
                }
                *count.entry(*h).or_default() += 1;
            }
        }
        for e in self.edge_ids() {
            for side in 0..2 {
                if count.get(&HalfEdge::new(e, side)) != Some(&1) {
                    return Err(Error::Rotation(format!("edge `{}` not listed exactly once per end", self.edges[e.0].name)));
                }
            }
        }
        Ok(())
    }

    /// Sanity check of structural invariants.
    pub fn validate(&self) -> Result<()> {
        let mut names = HashSet::new();
        for n in &self.names {
            if !names.insert(n) {
                return Err(Error::DuplicateVertex(n.clone()));
            }
        }
        for e in &self.edges {
            for v in e.ends {
                if v.0 >= self.names.len() {
                    return Err(Error::UnknownVertex(format!("#{}", v.0)));
                }
            }
        }
        self.check_rotation()
    }

    // ---- JSON ----

    pub fn from_json_str(text: &str) -> Result<Graph> {
        Ok(GraphFile::parse(text)?.graph)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let edges: Vec<serde_json::Value> = self
            .edges
            .iter()
            .map(|e| serde_json::json!([self.names[e.ends[0].0], self.names[e.ends[1].0], e.name]))
            .collect();
        let rotation: BTreeMap<&str, Vec<&str>> = self
            .vertices()
            .map(|v| (self.names[v.0].as_str(), self.rotation[v.0].iter().map(|h| self.edges[h.edge.0].name.as_str()).collect()))
            .collect();
        let mut out = serde_json::json!({ "vertices": self.names, "edges": edges, "rotation": rotation });
        if let Some(r) = self.root {
            out["root"] = serde_json::json!(self.names[r.0]);
        }
        out
    }
}

/// Max number of internally vertex-disjoint s–t paths in a simple graph.
fn local_connectivity(adj: &[Vec<usize>], s: usize, t: usize) -> usize {
    // Split v into v_in = 2v and v_out = 2v + 1 joined by a unit arc.
    let n = adj.len();
    let mut cap: HashMap<(usize, usize), i32> = HashMap::new();
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); 2 * n];
    let mut arc = |cap: &mut HashMap<(usize, usize), i32>, a: usize, b: usize, c: i32| {
        if !cap.contains_key(&(a, b)) {
            out[a].push(b);
            out[b].push(a);
            cap.entry((b, a)).or_insert(0);
        }
        *cap.entry((a, b)).or_insert(0) += c;
    };
    let big = n as i32 + 1;
    for v in 0..n {
        let c = if v == s || v == t { big } else { 1 };
        arc(&mut cap, 2 * v, 2 * v + 1, c);
        for &w in &adj[v] {
            arc(&mut cap, 2 * v + 1, 2 * w, 1);
        }
    }
    let (source, sink) = (2 * s + 1, 2 * t);
    let mut flow = 0;
    loop {
        let mut prev = vec![usize::MAX; 2 * n];
        prev[source] = source;
        let mut queue = VecDeque::from([source]);
        while let Some(x) = queue.pop_front() {
            if x == sink {
                break;
            }
            for &y in &out[x] {
                if prev[y] == usize::MAX && cap[&(x, y)] > 0 {
                    prev[y] = x;
                    queue.push_back(y);
                }
            }
        }
        if prev[sink] == usize::MAX {
            return flow;
        }
        let mut y = sink;
        while y != source {
            let x = prev[y];
            *cap.get_mut(&(x, y)).unwrap() -= 1;
            *cap.get_mut(&(y, x)).unwrap() += 1;
            y = x;
        }
        flow += 1;
    }
}

/// Optional hints for spanning tree construction carried by graph files.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TreeHints {
    pub root: Option<VertexId>,
    /// Edges that must stay outside the tree; the one at the root becomes the first.
    pub deleted: Vec<EdgeId>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphFileRaw {
    vertices: Vec<String>,
    edges: Vec<Vec<String>>,
    #[serde(default)]
    rotation: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    root: Option<String>,
    #[serde(default)]
    deleted_edges: Option<Vec<String>>,
}

/// A graph file: the graph plus optional tree hints.
#[derive(Clone, Debug)]
pub struct GraphFile {
    pub graph: Graph,
    pub hints: TreeHints,
}

impl GraphFile {
    pub fn parse(text: &str) -> Result<GraphFile> {
        let raw: GraphFileRaw = serde_json::from_str(text)?;
        let mut g = Graph::new();
        let mut index = HashMap::new();
        for name in &raw.vertices {
            if index.insert(name.clone(), g.add_vertex(name.clone())).is_some() {
                return Err(Error::DuplicateVertex(name.clone()));
            }
        }
        let mut edge_names = HashSet::new();
        for (i, parts) in raw.edges.iter().enumerate() {
            if parts.len() < 2 || parts.len() > 3 {
                return Err(Error::Parse(format!("edge entry {i} must be [a, b] or [a, b, name]")));
            }
            let a = *index.get(&parts[0]).ok_or_else(|| Error::UnknownVertex(parts[0].clone()))?;
            let b = *index.get(&parts[1]).ok_or_else(|| Error::UnknownVertex(parts[1].clone()))?;
            let name = parts.get(2).cloned().unwrap_or_else(|| format!("e{i}"));
            if !edge_names.insert(name.clone()) {
                return Err(Error::DuplicateEdge(name));
            }
            g.add_edge(a, b, name);
        }
        for (vname, order) in &raw.rotation {
            let v = *index.get(vname).ok_or_else(|| Error::UnknownVertex(vname.clone()))?;
            let mut used: HashSet<HalfEdge> = HashSet::new();
            let mut halves = Vec::new();
            for ename in order {
                let e = g.edge_by_name(ename).ok_or_else(|| Error::UnknownEdge(ename.clone()))?;
                let side = (0..2u8)
                    .find(|s| g.edge(e).ends[*s as usize] == v && !used.contains(&HalfEdge::new(e, *s)))
                    .ok_or_else(|| Error::Rotation(format!("edge `{ename}` listed too often at `{vname}`")))?;
                used.insert(HalfEdge::new(e, side));
                halves.push(HalfEdge::new(e, side));
            }
            g.set_rotation(v, halves)?;
        }
        let root = match &raw.root {
            Some(r) => Some(*index.get(r).ok_or_else(|| Error::UnknownVertex(r.clone()))?),
            None => None,
        };
        g.set_root(root);
        let deleted = raw
            .deleted_edges
            .unwrap_or_default()
            .iter()
            .map(|n| g.edge_by_name(n).ok_or_else(|| Error::UnknownEdge(n.clone())))
            .collect::<Result<Vec<_>>>()?;
        g.validate()?;
        Ok(GraphFile { graph: g, hints: TreeHints { root, deleted } })
    }
}

/// Small constructors used by tests, benches and the CLI.
pub mod build {
    use super::*;

    /// Star with `k` unit arms; arm leaves come clockwise around the centre.
    pub fn star(k: usize) -> Graph {
        let mut g = Graph::new();
        let c = g.add_vertex("c");
        for i in 0..k {
            let l = g.add_vertex(format!("l{i}"));
            g.add_edge(c, l, format!("a{i}"));
        }
        g
    }

    /// Cycle on `k` vertices.
    pub fn cycle(k: usize) -> Graph {
        let mut g = Graph::new();
        let vs: Vec<VertexId> = (0..k).map(|i| g.add_vertex(format!("x{i}"))).collect();
        for i in 0..k {
            g.add_edge(vs[i], vs[(i + 1) % k], format!("c{i}"));
        }
        g
    }

    /// Path on `k` vertices.
    pub fn path(k: usize) -> Graph {
        let mut g = Graph::new();
        let vs: Vec<VertexId> = (0..k).map(|i| g.add_vertex(format!("x{i}"))).collect();
        for i in 1..k {
            g.add_edge(vs[i - 1], vs[i], format!("p{i}"));
        }
        g
    }

    /// Two vertices joined by `k` parallel edges.
    pub fn theta(k: usize) -> Graph {
        let mut g = Graph::new();
        let a = g.add_vertex("a");
        let b = g.add_vertex("b");
        for i in 0..k {
            g.add_edge(a, b, format!("t{i}"));
        }
        let rev: Vec<HalfEdge> = g.rotation(b).iter().rev().copied().collect();
        g.set_rotation(b, rev).expect("same half-edges");
        g
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subdivide_edge_once() {
        let g = build::path(2);
        let h = g.subdivide(EdgeId(0), 1).unwrap();
        assert_eq!(h.vertex_count(), 3);
        assert_eq!(h.edge_count(), 2);
        assert_eq!(h.degree(VertexId(2)), 2);
    }

    #[test]
    fn subdividing_loop_twice_gives_triangle() {
        let mut g = Graph::new();
        let v = g.add_vertex("v");
        g.add_edge(v, v, "loop");
        let h = g.subdivide(EdgeId(0), 2).unwrap();
        assert_eq!(h.vertex_count(), 3);
        assert!(h.edge_ids().all(|e| !h.edge(e).is_loop()));
        assert!(h.vertices().all(|v| h.degree(v) == 2));
        assert!(h.is_connected());
    }

    #[test]
    fn subdivide_then_smooth_restores() {
        let g = build::star(3);
        let h = g.subdivide(EdgeId(1), 1).unwrap();
        let back = h.smooth(VertexId(4)).unwrap();
        assert_eq!(back.vertex_count(), g.vertex_count());
        assert_eq!(back.edge_count(), g.edge_count());
        let mut d1: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
        let mut d2: Vec<usize> = back.vertices().map(|v| back.degree(v)).collect();
        d1.sort();
        d2.sort();
        assert_eq!(d1, d2);
    }

    #[test]
    fn unknown_edge_rejected() {
        assert!(matches!(build::path(2).subdivide(EdgeId(7), 1), Err(Error::UnknownEdge(_))));
    }

    #[test]
    fn circle_minimalizes_to_triangle() {
        let g = build::cycle(4);
        let m = g.minimal_simplicial_representative().unwrap();
        assert_eq!((m.vertex_count(), m.edge_count()), (3, 3));
    }

    #[test]
    fn doubled_edge_keeps_one_and_splits_other() {
        // Two trivalent vertices joined twice, each with a pendant leaf.
        let mut g = Graph::new();
        let a = g.add_vertex("a");
        let b = g.add_vertex("b");
        let la = g.add_vertex("la");
        let lb = g.add_vertex("lb");
        g.add_edge(a, b, "x");
        g.add_edge(a, b, "y");
        g.add_edge(a, la, "p");
        g.add_edge(b, lb, "q");
        let m = g.minimal_simplicial_representative().unwrap();
        assert_eq!((m.vertex_count(), m.edge_count()), (5, 5));
        let a = m.vertex_by_name("a").unwrap();
        let b = m.vertex_by_name("b").unwrap();
        let direct = m.neighbors(a).filter(|(_, w)| *w == b).count();
        assert_eq!(direct, 1);
    }

    #[test]
    fn simple_graph_without_bivalent_is_fixed() {
        let g = build::star(4);
        let m = g.minimal_simplicial_representative().unwrap();
        assert_eq!(m, g);
    }

    #[test]
    fn connectivity_examples() {
        assert_eq!(build::star(4).topological_connectivity().value, 1);
        assert_eq!(build::theta(3).topological_connectivity().value, 2);
        assert_eq!(build::cycle(5).topological_connectivity().value, 2);
        let mut single = Graph::new();
        single.add_vertex("v");
        assert_eq!(single.topological_connectivity().value, 1);
        let mut two = Graph::new();
        two.add_vertex("a");
        two.add_vertex("b");
        assert_eq!(two.topological_connectivity(), Connectivity { value: 0, connected: false });
    }

    #[test]
    fn connectivity_survives_subdivision() {
        let g = build::theta(4);
        let h = g.subdivide(EdgeId(2), 3).unwrap();
        assert_eq!(g.topological_connectivity(), h.topological_connectivity());
    }

    #[test]
    fn betti_numbers() {
        assert_eq!(build::path(5).first_betti().unwrap(), 0);
        assert_eq!(build::cycle(5).first_betti().unwrap(), 1);
        assert_eq!(build::theta(4).first_betti().unwrap(), 3);
        let h = build::theta(4).subdivide(EdgeId(0), 2).unwrap();
        assert_eq!(h.first_betti().unwrap(), 3);
    }

    #[test]
    fn face_counts() {
        let tri = build::cycle(3);
        assert_eq!(tri.faces().unwrap().len(), 2);
        let th = build::theta(3);
        assert_eq!(th.faces().unwrap().len(), th.first_betti().unwrap() + 1);
        let f = th.faces().unwrap();
        let total: usize = f.faces.iter().map(Vec::len).sum();
        assert_eq!(total, 2 * th.edge_count());
    }

    #[test]
    fn bad_rotation_detected() {
        let mut g = build::path(3);
        let v = VertexId(1);
        let h = g.rotation(v)[0];
        assert!(g.set_rotation(v, vec![h, h]).is_err());
    }

    #[test]
    fn json_round_trip() {
        let g = build::theta(3);
        let text = g.to_json().to_string();
        let back = Graph::from_json_str(&text).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn json_rejects_unknown_vertex() {
        let text = r#"{"vertices":["a"],"edges":[["a","b"]]}"#;
        assert!(matches!(Graph::from_json_str(text), Err(Error::UnknownVertex(_))));
    }
}
