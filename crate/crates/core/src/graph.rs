//! Simple undirected graphs and the bridge analytics every cost formula is
//! built on: bridges, relevance, separation, bridgeless connected components
//! and the bridge tree.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Unordered vertex pair stored as `(min, max)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge(usize, usize);

impl Edge {
    /// Panics on a self-loop; use [`Edge::try_new`] for untrusted input.
    pub fn new(a: usize, b: usize) -> Edge {
        assert_ne!(a, b, "self-loop {a}");
        Edge(a.min(b), a.max(b))
    }

    pub fn try_new(a: usize, b: usize) -> Result<Edge> {
        if a == b {
            return Err(Error::InvalidGraph(format!("self-loop at vertex {a}")));
        }
        Ok(Edge::new(a, b))
    }

    pub fn lo(&self) -> usize {
        self.0
    }

    pub fn hi(&self) -> usize {
        self.1
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0 == v || self.1 == v
    }

    /// The endpoint that is not `v`.
    pub fn other(&self, v: usize) -> usize {
        if self.0 == v {
            self.1
        } else {
            self.0
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.0, self.1)
    }
}

impl Serialize for Edge {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.0, self.1].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Edge {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [a, b] = <[usize; 2]>::deserialize(d)?;
        Edge::try_new(a, b).map_err(serde::de::Error::custom)
    }
}

/// A simple undirected graph on vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    adj: Vec<Vec<(usize, usize)>>,
}

impl Graph {
    /// Validating constructor: rejects self-loops, out-of-range ids and
    /// repeated pairs.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Graph> {
        if n == 0 {
            return Err(Error::InvalidGraph("graph needs at least one vertex".into()));
        }
        let mut list = Vec::new();
        for (a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::UnknownVertex { vertex: a.max(b), n });
            }
            list.push(Edge::try_new(a, b)?);
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidGraph(format!("parallel edge {}", w[0])));
        }
        Ok(Graph::from_sorted(n, list))
    }

    /// Builds from edges already known to be valid; sorts and dedups.
    pub(crate) fn from_edges(n: usize, mut edges: Vec<Edge>) -> Graph {
        edges.sort_unstable();
        edges.dedup();
        debug_assert!(edges.iter().all(|e| e.1 < n));
        Graph::from_sorted(n, edges)
    }

    fn from_sorted(n: usize, edges: Vec<Edge>) -> Graph {
        let mut adj = vec![Vec::new(); n];
        for (i, e) in edges.iter().enumerate() {
            adj[e.0].push((e.1, i));
            adj[e.1].push((e.0, i));
        }
        Graph { n, edges, adj }
    }

    pub fn empty(n: usize) -> Graph {
        Graph::from_sorted(n, Vec::new())
    }

    pub fn path(n: usize) -> Graph {
        Graph::from_sorted(n, (1..n).map(|i| Edge(i - 1, i)).collect())
    }

    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3);
        Graph::from_edges(n, (0..n).map(|i| Edge::new(i, (i + 1) % n)).collect())
    }

    /// Star with center 0.
    pub fn star(n: usize) -> Graph {
        Graph::from_sorted(n, (1..n).map(|i| Edge(0, i)).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Edges in ascending `(lo, hi)` order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_index(&self, e: Edge) -> Option<usize> {
        self.edges.binary_search(&e).ok()
    }

    pub fn has_edge(&self, e: Edge) -> bool {
        self.edge_index(e).is_some()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().map(|&(w, _)| w)
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::UnknownVertex { vertex: v, n: self.n })
        }
    }

    pub fn check_edge(&self, e: Edge) -> Result<usize> {
        self.edge_index(e).ok_or(Error::UnknownEdge(e))
    }

    pub fn with_edge(&self, e: Edge) -> Graph {
        let mut edges = self.edges.clone();
        edges.push(e);
        Graph::from_edges(self.n, edges)
    }

    pub fn without_edges(&self, removed: &[Edge]) -> Graph {
        let edges = self.edges.iter().copied().filter(|e| !removed.contains(e)).collect();
        Graph::from_sorted(self.n, edges)
    }

    pub fn without_edge(&self, e: Edge) -> Graph {
        self.without_edges(&[e])
    }

    /// Absent vertex pairs in ascending order.
    pub fn non_edges(&self) -> Vec<Edge> {
        all_pairs(self.n).into_iter().filter(|e| !self.has_edge(*e)).collect()
    }

    /// Component id per vertex (ids assigned in order of smallest member) and
    /// the component count.
    pub fn components(&self) -> (Vec<usize>, usize) {
        let mut label = vec![usize::MAX; self.n];
        let mut count = 0;
        let mut stack = Vec::new();
        for s in 0..self.n {
            if label[s] != usize::MAX {
                continue;
            }
            label[s] = count;
            stack.push(s);
            while let Some(x) = stack.pop() {
                for &(y, _) in &self.adj[x] {
                    if label[y] == usize::MAX {
                        label[y] = count;
                        stack.push(y);
                    }
                }
            }
            count += 1;
        }
        (label, count)
    }

    pub fn is_connected(&self) -> bool {
        self.components().1 == 1
    }

    /// Lowpoint traversal; fails with `DisconnectedInput` on disconnected
    /// graphs.
    pub fn bridge_structure(&self) -> Result<BridgeStructure> {
        BridgeStructure::compute(self)
    }

    pub fn bridges(&self) -> Result<Vec<Edge>> {
        Ok(self.bridge_structure()?.bridges().collect())
    }

    pub fn nu(&self, e: Edge) -> Result<usize> {
        let idx = self.check_edge(e)?;
        Ok(self.bridge_structure()?.nu_at(idx))
    }

    pub fn sep(&self, e: Edge) -> Result<usize> {
        let idx = self.check_edge(e)?;
        Ok(self.bridge_structure()?.sep_at(idx))
    }

    pub fn rel(&self, e: Edge, v: usize) -> Result<usize> {
        let idx = self.check_edge(e)?;
        self.check_vertex(v)?;
        Ok(self.bridge_structure()?.rel_at(idx, v))
    }

    pub fn relevance_sum(&self, v: usize) -> Result<usize> {
        self.check_vertex(v)?;
        Ok(self.bridge_structure()?.relevance_sum(v))
    }

    pub fn bcc_partition(&self) -> Result<Vec<Vec<usize>>> {
        Ok(self.bridge_structure()?.bcc_partition(self))
    }

    pub fn bridge_tree(&self) -> Result<BridgeTree> {
        Ok(self.bridge_structure()?.bridge_tree(self))
    }

    /// True iff some cycle passes through both endpoints of `e` without
    /// using `e`, i.e. `g - e` has two internally vertex-disjoint paths
    /// between them.
    pub fn is_chord(&self, e: Edge) -> Result<bool> {
        self.check_edge(e)?;
        Ok(self.without_edge(e).disjoint_paths_at_least_two(e.0, e.1))
    }

    pub fn is_chord_free(&self) -> bool {
        self.edges.iter().all(|&e| !self.is_chord(e).unwrap_or(false))
    }

    /// Length of a shortest cycle, `None` for forests.
    pub fn girth(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        let mut dist = vec![usize::MAX; self.n];
        let mut via = vec![usize::MAX; self.n];
        let mut queue = VecDeque::new();
        for s in 0..self.n {
            dist.iter_mut().for_each(|d| *d = usize::MAX);
            via.iter_mut().for_each(|e| *e = usize::MAX);
            dist[s] = 0;
            queue.clear();
            queue.push_back(s);
            while let Some(x) = queue.pop_front() {
                for &(y, ei) in &self.adj[x] {
                    if ei == via[x] {
                        continue;
                    }
                    if dist[y] == usize::MAX {
                        dist[y] = dist[x] + 1;
                        via[y] = ei;
                        queue.push_back(y);
                    } else if via[y] != ei {
                        let len = dist[x] + dist[y] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }

    /// Menger check with unit vertex capacities on a split graph.
    fn disjoint_paths_at_least_two(&self, a: usize, b: usize) -> bool {
        let nodes = 2 * self.n;
        let mut cap = vec![vec![0u8; nodes]; nodes];
        for x in 0..self.n {
            cap[2 * x][2 * x + 1] = if x == a || x == b { 2 } else { 1 };
        }
        for e in &self.edges {
            cap[2 * e.0 + 1][2 * e.1] = 1;
            cap[2 * e.1 + 1][2 * e.0] = 1;
        }
        let (source, sink) = (2 * a + 1, 2 * b);
        let mut flow = 0;
        let mut prev = vec![usize::MAX; nodes];
        while flow < 2 {
            prev.iter_mut().for_each(|p| *p = usize::MAX);
            prev[source] = source;
            let mut queue = VecDeque::from([source]);
            while let Some(x) = queue.pop_front() {
                if x == sink {
                    break;
                }
                for y in 0..nodes {
                    if cap[x][y] > 0 && prev[y] == usize::MAX {
                        prev[y] = x;
                        queue.push_back(y);
                    }
                }
            }
            if prev[sink] == usize::MAX {
                return false;
            }
            let mut y = sink;
            while y != source {
                let x = prev[y];
                cap[x][y] -= 1;
                cap[y][x] += 1;
                y = x;
            }
            flow += 1;
        }
        true
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} [", self.n)?;
        for (i, e) in self.edges.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}-{}", e.0, e.1)?;
        }
        f.write_str("]")
    }
}

/// All `n choose 2` pairs in ascending order.
pub fn all_pairs(n: usize) -> Vec<Edge> {
    (0..n).flat_map(|a| (a + 1..n).map(move |b| Edge(a, b))).collect()
}

#[derive(Debug, Clone, Copy)]
struct BridgeSide {
    child: usize,
    child_size: usize,
}

/// Result of one lowpoint traversal of a connected graph. Answers bridge,
/// `rel`, `nu` and `sep` queries in constant time.
#[derive(Debug, Clone)]
pub struct BridgeStructure {
    n: usize,
    tin: Vec<usize>,
    tout: Vec<usize>,
    /// Per edge index, the DFS child side of the bridge.
    sides: Vec<Option<BridgeSide>>,
    edges: Vec<Edge>,
}

impl BridgeStructure {
    fn compute(g: &Graph) -> Result<BridgeStructure> {
        const NONE: usize = usize::MAX;
        let n = g.n;
        let mut tin = vec![NONE; n];
        let mut tout = vec![0; n];
        let mut low = vec![0; n];
        let mut size = vec![1usize; n];
        let mut sides = vec![None; g.m()];
        if n == 0 {
            return Ok(BridgeStructure { n, tin, tout, sides, edges: Vec::new() });
        }
        // (vertex, parent edge, parent vertex, next adjacency slot)
        let mut stack: Vec<(usize, usize, usize, usize)> = Vec::with_capacity(n);
        tin[0] = 0;
        low[0] = 0;
        let mut timer = 1;
        stack.push((0, NONE, NONE, 0));
        while let Some(top) = stack.last_mut() {
            let (v, parent_edge, parent, pos) = *top;
            if pos < g.adj[v].len() {
                top.3 += 1;
                let (w, ei) = g.adj[v][pos];
                if ei == parent_edge {
                    continue;
                }
                if tin[w] == NONE {
                    tin[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    stack.push((w, ei, v, 0));
                } else {
                    low[v] = low[v].min(tin[w]);
                }
            } else {
                stack.pop();
                tout[v] = timer;
                if parent != NONE {
                    low[parent] = low[parent].min(low[v]);
                    size[parent] += size[v];
                    if low[v] > tin[parent] {
                        sides[parent_edge] = Some(BridgeSide { child: v, child_size: size[v] });
                    }
                }
            }
        }
        if timer < n {
            return Err(Error::DisconnectedInput);
        }
        Ok(BridgeStructure { n, tin, tout, sides, edges: g.edges.clone() })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edge_at(&self, idx: usize) -> Edge {
        self.edges[idx]
    }

    pub fn index_of(&self, e: Edge) -> Option<usize> {
        self.edges.binary_search(&e).ok()
    }

    pub fn bridges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.edges.iter().zip(&self.sides).filter(|(_, s)| s.is_some()).map(|(e, _)| *e)
    }

    /// Edge indices of the bridges.
    pub fn bridge_indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.sides.iter().enumerate().filter(|(_, s)| s.is_some()).map(|(i, _)| i)
    }

    pub fn bridge_count(&self) -> usize {
        self.sides.iter().filter(|s| s.is_some()).count()
    }

    pub fn is_bridge_at(&self, idx: usize) -> bool {
        self.sides[idx].is_some()
    }

    fn in_subtree(&self, root: usize, v: usize) -> bool {
        self.tin[root] <= self.tin[v] && self.tin[v] < self.tout[root]
    }

    pub fn rel_at(&self, idx: usize, v: usize) -> usize {
        match self.sides[idx] {
            None => 0,
            Some(side) if self.in_subtree(side.child, v) => self.n - side.child_size,
            Some(side) => side.child_size,
        }
    }

    pub fn nu_at(&self, idx: usize) -> usize {
        self.sides[idx].map_or(0, |s| s.child_size.min(self.n - s.child_size))
    }

    pub fn sep_at(&self, idx: usize) -> usize {
        let nu = self.nu_at(idx);
        2 * nu * (self.n - nu)
    }

    pub fn relevance_sum(&self, v: usize) -> usize {
        (0..self.sides.len()).map(|i| self.rel_at(i, v)).sum()
    }

    /// Vertex labels of the bridgeless connected components, numbered by
    /// smallest member.
    pub fn bcc_labels(&self, g: &Graph) -> (Vec<usize>, usize) {
        let mut label = vec![usize::MAX; self.n];
        let mut count = 0;
        let mut stack = Vec::new();
        for s in 0..self.n {
            if label[s] != usize::MAX {
                continue;
            }
            label[s] = count;
            stack.push(s);
            while let Some(x) = stack.pop() {
                for &(y, ei) in &g.adj[x] {
                    if self.sides[ei].is_none() && label[y] == usize::MAX {
                        label[y] = count;
                        stack.push(y);
                    }
                }
            }
            count += 1;
        }
        (label, count)
    }

    pub fn bcc_partition(&self, g: &Graph) -> Vec<Vec<usize>> {
        let (label, count) = self.bcc_labels(g);
        let mut blocks = vec![Vec::new(); count];
        for (v, &l) in label.iter().enumerate() {
            blocks[l].push(v);
        }
        blocks
    }

    pub fn bridge_tree(&self, g: &Graph) -> BridgeTree {
        let (label, _) = self.bcc_labels(g);
        let nodes = self.bcc_partition(g);
        let tree_edges = self.bridges().map(|e| TreeEdge { a: label[e.0], b: label[e.1], bridge: e }).collect();
        BridgeTree { nodes, tree_edges }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TreeEdge {
    pub a: usize,
    pub b: usize,
    pub bridge: Edge,
}

/// Tree of bridgeless connected components; node weight is the component's
/// vertex count and tree edges are in bijection with the bridges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BridgeTree {
    pub nodes: Vec<Vec<usize>>,
    pub tree_edges: Vec<TreeEdge>,
}

impl BridgeTree {
    pub fn weights(&self) -> Vec<usize> {
        self.nodes.iter().map(Vec::len).collect()
    }

    /// Longest path in edges (unweighted).
    pub fn diameter(&self) -> usize {
        let count = self.nodes.len();
        let mut adj = vec![Vec::new(); count];
        for t in &self.tree_edges {
            adj[t.a].push(t.b);
            adj[t.b].push(t.a);
        }
        let farthest = |start: usize| {
            let mut dist = vec![usize::MAX; count];
            dist[start] = 0;
            let mut queue = VecDeque::from([start]);
            let mut last = (start, 0);
            while let Some(x) = queue.pop_front() {
                if dist[x] > last.1 {
                    last = (x, dist[x]);
                }
                for &y in &adj[x] {
                    if dist[y] == usize::MAX {
                        dist[y] = dist[x] + 1;
                        queue.push_back(y);
                    }
                }
            }
            last
        };
        let mut seen = vec![false; count];
        let mut best = 0;
        for s in 0..count {
            if seen[s] {
                continue;
            }
            let (far, _) = farthest(s);
            let (_, d) = farthest(far);
            best = best.max(d);
            let mut stack = vec![s];
            seen[s] = true;
            while let Some(x) = stack.pop() {
                for &y in &adj[x] {
                    if !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
        }
        best
    }
}

pub fn bridge_tree_diameter(bt: &BridgeTree) -> usize {
    bt.diameter()
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    edges: Vec<[usize; 2]>,
}

impl Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GraphJson { n: self.n, edges: self.edges.iter().map(|e| [e.0, e.1]).collect() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = GraphJson::deserialize(d)?;
        Graph::new(raw.n, raw.edges.into_iter().map(|[a, b]| (a, b))).map_err(serde::de::Error::custom)
    }
}

impl Graph {
    /// Text form: `n <count>` then one `e <u> <v>` line per edge.
    pub fn to_text(&self) -> String {
        let mut out = format!("n {}\n", self.n);
        for e in &self.edges {
            out.push_str(&format!("e {} {}\n", e.0, e.1));
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Graph> {
        let mut n = None;
        let mut edges = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = || Error::Parse(format!("line {}: {line:?}", lineno + 1));
            let fields: Vec<&str> = line.split_whitespace().collect();
            match fields.as_slice() {
                ["n", count] if n.is_none() => n = Some(count.parse().map_err(|_| bad())?),
                ["e", u, v] if n.is_some() => {
                    edges.push((u.parse().map_err(|_| bad())?, v.parse().map_err(|_| bad())?))
                }
                _ => return Err(bad()),
            }
        }
        Graph::new(n.ok_or_else(|| Error::Parse("missing `n` line".into()))?, edges)
    }

    /// Accepts either the JSON or the text form.
    pub fn parse_any(text: &str) -> Result<Graph> {
        if text.trim_start().starts_with('{') {
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
        } else {
            Graph::from_text(text)
        }
    }
}
