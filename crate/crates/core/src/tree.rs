//! Rooted spanning trees, ribbon labels and the label-space view of the host.

use std::collections::{BinaryHeap, HashMap, HashSet, VecDeque};
use std::cmp::Reverse;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, HalfEdge, TreeHints, VertexId};

/// Vertex label: position in ribbon order, root is 0.
pub type Label = u32;

/// An edge of the host seen through labels. `iota > tau`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LabeledEdge {
    pub iota: Label,
    pub tau: Label,
    pub in_tree: bool,
    #[serde(skip)]
    pub host: EdgeId,
}

/// Preferences for [`build_rooted_spanning_tree`].
#[derive(Clone, Debug, Default)]
pub struct TreeOptions {
    pub root: Option<VertexId>,
    /// Edges to keep out of the tree.
    pub deleted: Vec<EdgeId>,
    /// Bounded face whose boundary should lie in the tree (planar mode).
    pub base_face: Option<usize>,
    /// When set, subdivide so the host is sufficient for this many particles.
    pub particles: Option<usize>,
}

impl TreeOptions {
    pub fn from_hints(hints: &TreeHints) -> Self {
        TreeOptions { root: hints.root, deleted: hints.deleted.clone(), ..Default::default() }
    }

    pub fn particles(mut self, n: usize) -> Self {
        self.particles = Some(n);
        self
    }
}

#[derive(Clone, Debug)]
pub struct RootedSpanningTree {
    host: Graph,
    in_tree: Vec<bool>,
    root: VertexId,
    label: Vec<Label>,
    vertex_at: Vec<VertexId>,
    deleted: Vec<EdgeId>,
    has_base_edge: bool,
    parent: Vec<Option<Label>>,
    parent_edge: Vec<Option<usize>>,
    children: Vec<Vec<Label>>,
    depth: Vec<u32>,
    edges: Vec<LabeledEdge>,
    edge_index: HashMap<(Label, Label), usize>,
    incident: Vec<Vec<usize>>,
}

/// Subdivision plan making `g` sufficient for `n` particles: (edge, extra vertices).
pub fn sufficiency_plan(g: &Graph, n: usize) -> Result<Vec<(EdgeId, usize)>> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if !g.vertices().any(|v| g.is_essential(v)) {
        return Err(Error::NoEssentialVertex);
    }
    let branches = branches(g);
    let min_len = n.saturating_sub(1).max(1);
    let min_cycle = (n + 1).max(3);
    let mut length: Vec<usize> = branches.iter().map(|b| b.edges.len()).collect();
    for (i, b) in branches.iter().enumerate() {
        if b.ends[0] != b.ends[1] {
            length[i] = length[i].max(min_len);
        }
    }
    while let Some(cycle) = shortest_cycle(&branches, &length, g.vertex_count()) {
        let total: usize = cycle.iter().map(|&b| length[b]).sum();
        if total >= min_cycle {
            break;
        }
        let &grow = cycle.iter().min_by_key(|&&b| (length[b], b)).unwrap();
        length[grow] += 1;
    }
    let mut plan = Vec::new();
    for (i, b) in branches.iter().enumerate() {
        let extra = length[i] - b.edges.len();
        if extra > 0 {
            plan.push((b.edges[b.edges.len() / 2], extra));
        }
    }
    let added: usize = plan.iter().map(|p| p.1).sum();
    if g.vertex_count() + added < n {
        return Err(Error::InsufficientSubdivision { n, reason: "fewer vertices than particles".into() });
    }
    Ok(plan)
}

/// Subdivides so every path between distinct non-bivalent vertices has length ≥ n−1
/// and every cycle has length ≥ n+1. Idempotent.
pub fn ensure_sufficient_subdivision(g: &Graph, n: usize) -> Result<Graph> {
    if n < 2 {
        return Err(Error::Invalid("sufficiency needs at least two particles".into()));
    }
    let mut h = g.clone();
    for (e, times) in sufficiency_plan(g, n)? {
        let mut target = e;
        for _ in 0..times {
            target = h.split_edge(target).second;
        }
    }
    Ok(h)
}

/// Maximal paths whose interior vertices are bivalent.
struct Branch {
    ends: [VertexId; 2],
    edges: Vec<EdgeId>,
}

fn branches(g: &Graph) -> Vec<Branch> {
    let mut seen: HashSet<EdgeId> = HashSet::new();
    let mut out = Vec::new();
    for u in g.vertices().filter(|v| g.degree(*v) != 2) {
        for &h in g.rotation(u) {
            if seen.contains(&h.edge) {
                continue;
            }
            let mut edges = vec![h.edge];
            seen.insert(h.edge);
            let mut cur = h;
            let mut at = g.head(cur);
            while g.degree(at) == 2 {
                let next = g.rotation(at).iter().copied().find(|x| *x != cur.twin()).unwrap();
                if !seen.insert(next.edge) {
                    break;
                }
                edges.push(next.edge);
                cur = next;
                at = g.head(cur);
            }
            out.push(Branch { ends: [u, at], edges });
        }
    }
    out
}

/// Branch indices of a shortest cycle in the weighted branch multigraph.
fn shortest_cycle(branches: &[Branch], length: &[usize], nv: usize) -> Option<Vec<usize>> {
    let mut best: Option<(usize, Vec<usize>)> = None;
    for (i, b) in branches.iter().enumerate() {
        let cand = if b.ends[0] == b.ends[1] {
            Some((length[i], vec![i]))
        } else {
            // Dijkstra from ends[0] to ends[1] avoiding branch i.
            let mut dist = vec![usize::MAX; nv];
            let mut via: Vec<Option<(usize, usize)>> = vec![None; nv];
            let mut heap = BinaryHeap::new();
            dist[b.ends[0].0] = 0;
            heap.push(Reverse((0usize, b.ends[0].0)));
            while let Some(Reverse((d, x))) = heap.pop() {
                if d > dist[x] {
                    continue;
                }
                for (j, c) in branches.iter().enumerate() {
                    if j == i || c.ends[0] == c.ends[1] {
                        continue;
                    }
                    for s in 0..2 {
                        if c.ends[s].0 == x {
                            let y = c.ends[1 - s].0;
                            let nd = d + length[j];
                            if nd < dist[y] {
                                dist[y] = nd;
                                via[y] = Some((j, x));
                                heap.push(Reverse((nd, y)));
                            }
                        }
                    }
                }
            }
            let t = b.ends[1].0;
            (dist[t] != usize::MAX).then(|| {
                let mut path = vec![i];
                let mut y = t;
                while let Some((j, x)) = via[y] {
                    path.push(j);
                    y = x;
                }
                (dist[t] + length[i], path)
            })
        };
        if let Some((len, path)) = cand {
            if best.as_ref().is_none_or(|(l, _)| len < *l) {
                best = Some((len, path));
            }
        }
    }
    best.map(|(_, p)| p)
}

fn is_bridge(g: &Graph, e: EdgeId) -> bool {
    let [a, b] = g.edge(e).ends;
    if a == b {
        return false;
    }
    let mut seen = vec![false; g.vertex_count()];
    seen[a.0] = true;
    let mut queue = VecDeque::from([a]);
    while let Some(v) = queue.pop_front() {
        for (f, w) in g.neighbors(v) {
            if f != e && !seen[w.0] {
                seen[w.0] = true;
                queue.push_back(w);
            }
        }
    }
    !seen[b.0]
}

/// Working state of the builder: a host plus per-edge tree flags.
struct Draft {
    g: Graph,
    in_tree: Vec<bool>,
    root: VertexId,
}

impl Draft {
    /// Splits `e`, putting the deleted piece away from `keep_tree_at` when it is deleted.
    fn split(&mut self, e: EdgeId, deleted_near_end: usize) -> crate::graph::Split {
        let was_tree = self.in_tree[e.0];
        let s = self.g.split_edge(e);
        self.in_tree.push(was_tree);
        if !was_tree {
            // first = ends[0]..x, second = x..ends[1]
            let (del, tree) = if deleted_near_end == 0 { (s.first, s.second) } else { (s.second, s.first) };
            self.in_tree[del.0] = false;
            self.in_tree[tree.0] = true;
        }
        s
    }

    fn deleted_near(&self, e: EdgeId) -> usize {
        // Keep the deleted piece at the root, otherwise at the far end.
        if self.g.edge(e).ends[0] == self.root {
            0
        } else {
            1
        }
    }
}

/// Builds a rooted spanning tree honouring `opts`; subdivides as needed.
pub fn build_rooted_spanning_tree(g: &Graph, opts: &TreeOptions) -> Result<RootedSpanningTree> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if g.vertex_count() < 2 {
        return Err(Error::InvalidRoot("graph needs at least one edge".into()));
    }
    let mut g = g.clone();
    let mut forced_tree: HashSet<EdgeId> = HashSet::new();
    let mut forced_deleted: HashSet<EdgeId> = opts.deleted.iter().copied().collect();
    let root;
    if let Some(face) = opts.base_face {
        let faces = g.faces()?;
        if face >= faces.len() || face == faces.unbounded {
            return Err(Error::Invalid("base face must be a bounded face".into()));
        }
        let outer: HashSet<EdgeId> = faces.face_edges(faces.unbounded).into_iter().collect();
        let walk = faces.faces[face].clone();
        let shared = walk
            .iter()
            .position(|h| outer.contains(&h.edge))
            .ok_or_else(|| Error::Invalid("base face shares no edge with the unbounded face".into()))?;
        let h = walk[shared];
        for other in &walk {
            if other.edge != h.edge {
                forced_tree.insert(other.edge);
            }
        }
        // a -(tree)- root -(deleted)- y -(tree)- b along the shared edge
        let s1 = g.split_edge(h.edge);
        let s2 = g.split_edge(s1.second);
        let (a_side, b_side) = if h.side == 0 { (s1.first, s2.second) } else { (s2.second, s1.first) };
        forced_tree.insert(a_side);
        forced_tree.insert(b_side);
        forced_deleted.insert(s2.first);
        root = if h.side == 0 { s1.vertex } else { s2.vertex };
    } else {
        let hint = opts
            .root
            .or(g.root())
            .or_else(|| g.vertices().find(|v| g.degree(*v) == 1))
            .unwrap_or(VertexId(0));
        let rot = g.rotation(hint).to_vec();
        if rot.len() == 1 {
            root = hint;
        } else {
            if rot.len() == 2 && rot[0].edge == rot[1].edge {
                return Err(Error::InvalidRoot("root sits on a loop edge".into()));
            }
            let candidates: Vec<EdgeId> = rot
                .iter()
                .map(|h| h.edge)
                .filter(|e| !g.edge(*e).is_loop() && !is_bridge(&g, *e))
                .collect();
            let chosen = candidates
                .iter()
                .copied()
                .find(|e| forced_deleted.contains(e))
                .or_else(|| candidates.first().copied())
                .ok_or_else(|| Error::InvalidRoot(format!("`{}` lies on no cycle and is not a leaf", g.vertex_name(hint))))?;
            if rot.len() == 2 {
                root = hint;
                forced_deleted.insert(chosen);
                let other = rot.iter().map(|h| h.edge).find(|e| *e != chosen).unwrap();
                forced_tree.insert(other);
            } else {
                let near_hint = g.edge(chosen).ends[0] == hint;
                let s = g.split_edge(chosen);
                root = s.vertex;
                let (to_hint, away) = if near_hint { (s.first, s.second) } else { (s.second, s.first) };
                forced_tree.insert(to_hint);
                forced_deleted.insert(away);
            }
        }
    }
    for e in &forced_deleted {
        if forced_tree.contains(e) {
            return Err(Error::Invalid(format!("edge `{}` both forced and excluded", g.edge(*e).name)));
        }
    }

    // Breadth-first spanning tree, forced edges first.
    let nv = g.vertex_count();
    let mut uf: Vec<usize> = (0..nv).collect();
    fn find(uf: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while uf[r] != r {
            r = uf[r];
        }
        let mut y = x;
        while uf[y] != r {
            let next = uf[y];
            uf[y] = r;
            y = next;
        }
        r
    }
    let mut in_tree = vec![false; g.edge_count()];
    let mut forced_sorted: Vec<EdgeId> = forced_tree.iter().copied().collect();
    forced_sorted.sort();
    for e in forced_sorted {
        let [a, b] = g.edge(e).ends;
        let (ra, rb) = (find(&mut uf, a.0), find(&mut uf, b.0));
        if ra == rb {
            return Err(Error::Invalid("forced tree edges contain a cycle".into()));
        }
        uf[ra] = rb;
        in_tree[e.0] = true;
    }
    let mut visited = vec![false; nv];
    visited[root.0] = true;
    let mut queue = VecDeque::from([root]);
    while let Some(v) = queue.pop_front() {
        for &h in g.rotation(v) {
            let e = h.edge;
            let w = g.head(h);
            if in_tree[e.0] {
                if !visited[w.0] {
                    visited[w.0] = true;
                    queue.push_back(w);
                }
                continue;
            }
            if forced_deleted.contains(&e) || g.edge(e).is_loop() {
                continue;
            }
            let (rv, rw) = (find(&mut uf, v.0), find(&mut uf, w.0));
            if rv != rw {
                uf[rv] = rw;
                in_tree[e.0] = true;
                if !visited[w.0] {
                    visited[w.0] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    if visited.iter().any(|v| !v) {
        return Err(Error::Invalid("excluded edges disconnect the spanning tree".into()));
    }
    let tree_deg = |g: &Graph, in_tree: &[bool], v: VertexId| g.rotation(v).iter().filter(|h| in_tree[h.edge.0]).count();
    if tree_deg(&g, &in_tree, root) != 1 {
        return Err(Error::InvalidRoot("root is not univalent in the tree".into()));
    }

    let mut d = Draft { g, in_tree, root };
    // Deleted edges need bivalent endpoints.
    let deleted_now: Vec<EdgeId> = d.g.edge_ids().filter(|e| !d.in_tree[e.0]).collect();
    for e in deleted_now {
        let mut current = e;
        if d.g.degree(d.g.edge(current).ends[0]) != 2 {
            current = d.split(current, 1).second;
        }
        if d.g.degree(d.g.edge(current).ends[1]) != 2 {
            current = d.split(current, 0).first;
        }
        let _ = current;
    }

    if let Some(n) = opts.particles {
        for (e, times) in sufficiency_plan(&d.g, n)? {
            let mut target = e;
            for _ in 0..times {
                // Prefer splitting a tree piece so deleted pieces stay short.
                let near = d.deleted_near(target);
                let s = d.split(target, near);
                target = if d.in_tree[s.second.0] { s.second } else { s.first };
            }
        }
    }

    let mut t = RootedSpanningTree::assemble(d.g.clone(), d.in_tree.clone(), d.root);
    if let Some(n) = opts.particles {
        // Stack room between the root and the first essential vertex, and parking room on each branch.
        loop {
            let mut fixed = false;
            let first = t.first_essential_depth();
            if let Some(depth) = first {
                if (depth as usize) < n - 1 {
                    let root_edge = t.host.rotation(t.root).iter().map(|h| h.edge).find(|e| t.in_tree[e.0]).unwrap();
                    d.g = t.host.clone();
                    d.in_tree = t.in_tree.clone();
                    d.split(root_edge, 0);
                    fixed = true;
                }
            }
            if !fixed {
                'outer: for v in 0..t.vertex_count() as Label {
                    if !t.is_essential(v) {
                        continue;
                    }
                    for &c in &t.children[v as usize] {
                        let chain = t.first_child_chain(c, n - 1);
                        if chain.len() < n - 1 {
                            let last = *chain.last().unwrap();
                            let e = t.edges[t.parent_edge[last as usize].unwrap()].host;
                            d.g = t.host.clone();
                            d.in_tree = t.in_tree.clone();
                            d.split(e, 0);
                            fixed = true;
                            break 'outer;
                        }
                    }
                }
            }
            if !fixed {
                break;
            }
            t = RootedSpanningTree::assemble(d.g.clone(), d.in_tree.clone(), d.root);
        }
    }
    t.check()?;
    Ok(t)
}

impl RootedSpanningTree {
    fn assemble(host: Graph, in_tree: Vec<bool>, root: VertexId) -> Self {
        let nv = host.vertex_count();
        let mut label = vec![Label::MAX; nv];
        let mut vertex_at = Vec::with_capacity(nv);
        // Ribbon walk: depth first, children clockwise after the parent edge.
        let root_half = host.rotation(root).iter().copied().find(|h| in_tree[h.edge.0]).unwrap();
        label[root.0] = 0;
        vertex_at.push(root);
        let mut stack: Vec<HalfEdge> = vec![root_half];
        while let Some(h) = stack.pop() {
            let v = host.head(h);
            if label[v.0] != Label::MAX {
                continue;
            }
            label[v.0] = vertex_at.len() as Label;
            vertex_at.push(v);
            let rot = host.rotation(v);
            let arrive = h.twin();
            let at = rot.iter().position(|x| *x == arrive).unwrap();
            let kids: Vec<HalfEdge> =
                (1..rot.len()).map(|i| rot[(at + i) % rot.len()]).filter(|x| in_tree[x.edge.0]).collect();
            for k in kids.into_iter().rev() {
                stack.push(k);
            }
        }
        let mut edges: Vec<LabeledEdge> = host
            .edge_ids()
            .map(|e| {
                let [a, b] = host.edge(e).ends;
                let (la, lb) = (label[a.0], label[b.0]);
                LabeledEdge { iota: la.max(lb), tau: la.min(lb), in_tree: in_tree[e.0], host: e }
            })
            .collect();
        edges.sort_by_key(|e| (e.tau, e.iota, e.host));
        let mut edge_index = HashMap::new();
        let mut incident = vec![Vec::new(); nv];
        let mut parent = vec![None; nv];
        let mut parent_edge = vec![None; nv];
        let mut children = vec![Vec::new(); nv];
        for (i, e) in edges.iter().enumerate() {
            edge_index.entry((e.tau, e.iota)).or_insert(i);
            incident[e.tau as usize].push(i);
            incident[e.iota as usize].push(i);
            if e.in_tree {
                parent[e.iota as usize] = Some(e.tau);
                parent_edge[e.iota as usize] = Some(i);
                children[e.tau as usize].push(e.iota);
            }
        }
        let mut depth = vec![0u32; nv];
        for l in 1..nv {
            depth[l] = depth[parent[l].unwrap() as usize] + 1;
        }
        let mut deleted: Vec<EdgeId> = host.edge_ids().filter(|e| !in_tree[e.0]).collect();
        let at_root = |e: &EdgeId| host.edge(*e).ends.contains(&root);
        let root_deleted = deleted.iter().any(at_root);
        // The edge at the root first, then by the label of ι.
        deleted.sort_by_key(|e| {
            let [a, b] = host.edge(*e).ends;
            (!at_root(e), label[a.0].max(label[b.0]))
        });
        RootedSpanningTree {
            has_base_edge: root_deleted,
            host,
            in_tree,
            root,
            label,
            vertex_at,
            deleted,
            parent,
            parent_edge,
            children,
            depth,
            edges,
            edge_index,
            incident,
        }
    }

    fn check(&self) -> Result<()> {
        let tree_count = self.in_tree.iter().filter(|x| **x).count();
        if tree_count + 1 != self.host.vertex_count() {
            return Err(Error::Invalid("tree edge count mismatch".into()));
        }
        for e in &self.deleted {
            for v in self.host.edge(*e).ends {
                if self.host.degree(v) != 2 {
                    return Err(Error::Invalid("deleted edge touches a non-bivalent vertex".into()));
                }
            }
        }
        if self.edge_index.len() != self.edges.len() {
            return Err(Error::Invalid("host is not simple after subdivision".into()));
        }
        Ok(())
    }

    /// Depth of the first vertex of valence ≥ 3 on the walk from the root.
    fn first_essential_depth(&self) -> Option<u32> {
        let mut v: Label = 0;
        loop {
            if self.is_essential(v) {
                return Some(self.depth[v as usize]);
            }
            match self.children[v as usize].as_slice() {
                [c] => v = *c,
                _ => return None,
            }
        }
    }

    pub fn host(&self) -> &Graph {
        &self.host
    }

    pub fn root(&self) -> VertexId {
        self.root
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_at.len()
    }

    pub fn label(&self, v: VertexId) -> Label {
        self.label[v.0]
    }

    pub fn vertex(&self, l: Label) -> VertexId {
        self.vertex_at[l as usize]
    }

    pub fn is_tree_edge(&self, e: EdgeId) -> bool {
        self.in_tree[e.0]
    }

    /// Deleted edges, the one at the root first.
    pub fn deleted_edges(&self) -> &[EdgeId] {
        &self.deleted
    }

    /// Whether a deleted edge is incident to the root.
    pub fn has_base_edge(&self) -> bool {
        self.has_base_edge
    }

    pub fn edges(&self) -> &[LabeledEdge] {
        &self.edges
    }

    pub fn edge(&self, i: usize) -> &LabeledEdge {
        &self.edges[i]
    }

    /// Index of the labelled edge joining two labels, if any.
    pub fn edge_between(&self, a: Label, b: Label) -> Option<usize> {
        self.edge_index.get(&(a.min(b), a.max(b))).copied()
    }

    pub fn edge_of_host(&self, e: EdgeId) -> usize {
        self.edges.iter().position(|x| x.host == e).unwrap()
    }

    /// Labelled edges at a vertex.
    pub fn incident(&self, v: Label) -> &[usize] {
        &self.incident[v as usize]
    }

    pub fn parent(&self, v: Label) -> Option<Label> {
        self.parent[v as usize]
    }

    /// Index of e(v), the tree edge from v toward the root.
    pub fn parent_edge(&self, v: Label) -> Option<usize> {
        self.parent_edge[v as usize]
    }

    /// Tree children in label order.
    pub fn children(&self, v: Label) -> &[Label] {
        &self.children[v as usize]
    }

    pub fn depth(&self, v: Label) -> u32 {
        self.depth[v as usize]
    }

    pub fn degree(&self, v: Label) -> usize {
        self.incident[v as usize].len()
    }

    pub fn is_essential(&self, v: Label) -> bool {
        self.degree(v) >= 3
    }

    pub fn essential_vertices(&self) -> Vec<Label> {
        (0..self.vertex_count() as Label).filter(|v| self.is_essential(*v)).collect()
    }

    /// Vertex labels on the tree path from `a` to `b`, inclusive.
    pub fn tree_path_vertices(&self, a: Label, b: Label) -> Vec<Label> {
        let (mut x, mut y) = (a, b);
        let mut left = vec![];
        let mut right = vec![];
        while self.depth[x as usize] > self.depth[y as usize] {
            left.push(x);
            x = self.parent[x as usize].unwrap();
        }
        while self.depth[y as usize] > self.depth[x as usize] {
            right.push(y);
            y = self.parent[y as usize].unwrap();
        }
        while x != y {
            left.push(x);
            right.push(y);
            x = self.parent[x as usize].unwrap();
            y = self.parent[y as usize].unwrap();
        }
        left.push(x);
        left.extend(right.into_iter().rev());
        left
    }

    /// Labelled edge indices on the tree path from `a` to `b`.
    pub fn tree_path(&self, a: Label, b: Label) -> Vec<usize> {
        self.tree_path_vertices(a, b).windows(2).map(|w| self.edge_between(w[0], w[1]).unwrap()).collect()
    }

    /// Lowest common ancestor.
    pub fn meet(&self, a: Label, b: Label) -> Label {
        let path = self.tree_path_vertices(a, b);
        *path.iter().min_by_key(|v| self.depth[**v as usize]).unwrap()
    }

    /// Whether `v` lies in the subtree hanging at `top`.
    pub fn in_subtree(&self, v: Label, top: Label) -> bool {
        let mut x = v;
        loop {
            if x == top {
                return true;
            }
            match self.parent[x as usize] {
                Some(p) => x = p,
                None => return false,
            }
        }
    }

    /// Up to `len` vertices starting at `start`, following first children.
    pub fn first_child_chain(&self, start: Label, len: usize) -> Vec<Label> {
        let mut chain = vec![start];
        while chain.len() < len {
            match self.children[*chain.last().unwrap() as usize].first() {
                Some(c) => chain.push(*c),
                None => break,
            }
        }
        chain
    }

    /// Direction index of edge `e` at vertex `v`: 0 toward the root, then children in label order.
    pub fn direction(&self, v: Label, e: usize) -> Option<usize> {
        let edge = &self.edges[e];
        let other = if edge.iota == v { edge.tau } else { edge.iota };
        if !edge.in_tree {
            return None;
        }
        if self.parent[v as usize] == Some(other) {
            return Some(0);
        }
        self.children[v as usize].iter().position(|c| *c == other).map(|i| i + 1)
    }

    /// Leaf edge e_d^v: d = 0 is e(v), d ≥ 1 the d-th child edge.
    pub fn direction_edge(&self, v: Label, d: usize) -> Option<usize> {
        if d == 0 {
            self.parent_edge[v as usize]
        } else {
            self.children[v as usize].get(d - 1).map(|c| self.parent_edge[*c as usize].unwrap())
        }
    }

    /// Tree export: tree edges, labels by vertex name, deleted edges.
    pub fn export(&self) -> serde_json::Value {
        let name = |e: EdgeId| self.host.edge(e).name.clone();
        let tree_edges: Vec<String> = self.host.edge_ids().filter(|e| self.in_tree[e.0]).map(name).collect();
        let labels: serde_json::Map<String, serde_json::Value> = self
            .host
            .vertices()
            .map(|v| (self.host.vertex_name(v).to_string(), serde_json::json!(self.label[v.0])))
            .collect();
        let deleted: Vec<String> = self.deleted.iter().map(|e| name(*e)).collect();
        serde_json::json!({ "tree_edges": tree_edges, "labels": labels, "deleted_edges": deleted })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build;

    #[test]
    fn path_labels_increase() {
        let g = build::path(5);
        let t = build_rooted_spanning_tree(&g, &TreeOptions { root: Some(VertexId(0)), ..Default::default() }).unwrap();
        for i in 0..5 {
            assert_eq!(t.label(VertexId(i)), i as Label);
        }
        assert!(t.deleted_edges().is_empty());
    }

    #[test]
    fn star_rooted_at_leaf() {
        let g = build::star(3);
        let t = build_rooted_spanning_tree(&g, &TreeOptions { root: Some(VertexId(1)), ..Default::default() }).unwrap();
        // root l0 = 0, centre = 1, then l1, l2 in clockwise order after the root arm
        assert_eq!(t.label(VertexId(1)), 0);
        assert_eq!(t.label(VertexId(0)), 1);
        assert_eq!(t.label(VertexId(2)), 2);
        assert_eq!(t.label(VertexId(3)), 3);
    }

    #[test]
    fn tree_graph_has_no_deleted_edges() {
        let g = build::star(4);
        let t = build_rooted_spanning_tree(&g, &TreeOptions::default()).unwrap();
        assert!(t.deleted_edges().is_empty());
        assert_eq!(t.vertex_count(), 5);
    }

    #[test]
    fn tree_paths() {
        let g = build::star(3);
        let t = build_rooted_spanning_tree(&g, &TreeOptions::default()).unwrap();
        assert!(t.tree_path(2, 2).is_empty());
        assert_eq!(t.tree_path(0, 1).len(), 1);
        assert_eq!(t.tree_path_vertices(2, 3), vec![2, 1, 3]);
    }

    #[test]
    fn theta_tree_invariants() {
        let g = build::theta(4);
        let t = build_rooted_spanning_tree(&g, &TreeOptions::default().particles(3)).unwrap();
        assert_eq!(t.deleted_edges().len(), 3);
        assert!(t.has_base_edge());
        for e in t.deleted_edges() {
            for v in t.host().edge(*e).ends {
                assert_eq!(t.host().degree(v), 2);
            }
        }
        for l in 1..t.vertex_count() as Label {
            assert!(t.parent(l).unwrap() < l);
        }
        let again = build_rooted_spanning_tree(&g, &TreeOptions::default().particles(3)).unwrap();
        assert_eq!(t.export(), again.export());
    }

    #[test]
    fn sufficiency_examples() {
        let s3 = build::star(3);
        assert_eq!(ensure_sufficient_subdivision(&s3, 2).unwrap(), s3);
        let th = build::theta(3);
        let h = ensure_sufficient_subdivision(&th, 2).unwrap();
        assert_eq!(h.vertex_count(), 4);
        let again = ensure_sufficient_subdivision(&h, 2).unwrap();
        assert_eq!(again, h);
        let h3 = ensure_sufficient_subdivision(&th, 3).unwrap();
        assert_eq!(ensure_sufficient_subdivision(&h3, 3).unwrap(), h3);
        assert!(matches!(ensure_sufficient_subdivision(&build::cycle(4), 2), Err(Error::NoEssentialVertex)));
    }

    #[test]
    fn disconnected_rejected() {
        let mut g = build::path(2);
        g.add_vertex("lonely");
        assert!(matches!(build_rooted_spanning_tree(&g, &TreeOptions::default()), Err(Error::Disconnected)));
    }

    #[test]
    fn root_on_path_interior_rejected() {
        let g = build::path(3);
        let r = build_rooted_spanning_tree(&g, &TreeOptions { root: Some(VertexId(1)), ..Default::default() });
        assert!(matches!(r, Err(Error::InvalidRoot(_))));
    }
}
