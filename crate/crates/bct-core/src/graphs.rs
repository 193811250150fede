//! Simple undirected graphs with exact automorphism and canonical-form
//! computation.
//!
//! Graphs are stored as sorted adjacency lists plus row bitsets. The
//! canonical-labelling engine uses individualization–refinement: colour
//! classes are refined to an equitable partition by iterated neighbour
//! counting, non-discrete partitions branch on a target cell, and leaves
//! are compared by their fully relabelled adjacency certificate. Certificate
//! collisions between leaves yield graph automorphisms, which both prune
//! the search (orbit pruning) and assemble generators of the full
//! automorphism group. The minimum certificate over all leaves is the
//! canonical form.

use crate::perm::{Perm, PermGroup};
use crate::{Error, Result};

/// A finite simple undirected graph on vertices `0..n`.
#[derive(Clone)]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<u32>>,
    bits: Vec<Vec<u64>>,
    words: usize,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("m", &self.edge_count())
            .finish()
    }
}

impl Graph {
    /// Builds a graph from an edge list; loops and duplicate edges are
    /// rejected.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let words = n.div_ceil(64);
        let mut bits = vec![vec![0u64; words]; n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidParameter(format!(
                    "edge ({u}, {v}) out of range for {n} vertices"
                )));
            }
            if u == v {
                return Err(Error::InvalidParameter(format!("loop at vertex {u}")));
            }
            if bits[u][v / 64] >> (v % 64) & 1 == 1 {
                return Err(Error::InvalidParameter(format!(
                    "duplicate edge ({u}, {v})"
                )));
            }
            bits[u][v / 64] |= 1 << (v % 64);
            bits[v][u / 64] |= 1 << (u % 64);
        }
        let adj = bits_to_adj(n, &bits);
        Ok(Graph {
            n,
            adj,
            bits,
            words,
        })
    }

    /// Number of vertices.
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// Number of undirected edges.
    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.len()).sum::<usize>() / 2
    }

    /// Sorted neighbours of `v`.
    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.bits[u][v / 64] >> (v % 64) & 1 == 1
    }

    /// All edges as ordered pairs `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for &v in &self.adj[u] {
                if (u as u32) < v {
                    out.push((u as u32, v));
                }
            }
        }
        out
    }

    /// Common valency if the graph is regular.
    pub fn regular_valency(&self) -> Option<usize> {
        let d = self.degree(0);
        if (1..self.n).all(|v| self.degree(v) == d) {
            Some(d)
        } else {
            None
        }
    }

    /// BFS distances from `root`; unreachable vertices get `usize::MAX`.
    pub fn bfs_distances(&self, root: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n];
        dist[root] = 0;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &v in &self.adj[u] {
                let v = v as usize;
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// Sizes of the BFS layers from `root`, out to the last non-empty one.
    pub fn distance_profile(&self, root: usize) -> Vec<usize> {
        let dist = self.bfs_distances(root);
        let max = dist.iter().filter(|&&d| d != usize::MAX).max().copied();
        let Some(max) = max else { return vec![] };
        let mut profile = vec![0usize; max + 1];
        for &d in &dist {
            if d != usize::MAX {
                profile[d] += 1;
            }
        }
        profile
    }

    pub fn is_connected(&self) -> bool {
        self.n > 0 && self.bfs_distances(0).iter().all(|&d| d != usize::MAX)
    }

    /// Greatest distance between two vertices, or `None` when the graph
    /// is empty or disconnected.
    pub fn diameter(&self) -> Option<usize> {
        if self.n == 0 {
            return None;
        }
        let mut diam = 0usize;
        for root in 0..self.n {
            for &d in &self.bfs_distances(root) {
                if d == usize::MAX {
                    return None;
                }
                diam = diam.max(d);
            }
        }
        Some(diam)
    }

    /// Two distinct vertices with identical open neighbourhoods, if any.
    /// Non-adjacent twins share all neighbours; adjacent twins would
    /// need self-loops, which simple graphs exclude, so only the
    /// non-adjacent case can occur.
    pub fn unworthy_pair(&self) -> Option<(usize, usize)> {
        let mut sorted: Vec<Vec<u32>> = self.adj.clone();
        for row in &mut sorted {
            row.sort_unstable();
        }
        let mut order: Vec<usize> = (0..self.n).collect();
        order.sort_unstable_by(|&a, &b| sorted[a].cmp(&sorted[b]).then(a.cmp(&b)));
        // Take the lexicographically least pair over all runs of equal
        // neighbourhoods.
        let mut best: Option<(usize, usize)> = None;
        let mut run_start = 0;
        for i in 1..=order.len() {
            if i == order.len() || sorted[order[i]] != sorted[order[run_start]] {
                if i - run_start >= 2 {
                    let pair = (order[run_start], order[run_start + 1]);
                    if best.is_none_or(|b| pair < b) {
                        best = Some(pair);
                    }
                }
                run_start = i;
            }
        }
        best
    }

    /// True when no two vertices share the same neighbourhood.
    pub fn is_worthy(&self) -> bool {
        self.unworthy_pair().is_none()
    }

    /// A proper 2-colouring if one exists (0/1 per vertex, component by
    /// component, colour 0 on the least vertex of each component).
    pub fn bipartition(&self) -> Option<Vec<u8>> {
        let mut colour = vec![u8::MAX; self.n];
        for start in 0..self.n {
            if colour[start] != u8::MAX {
                continue;
            }
            colour[start] = 0;
            let mut queue = std::collections::VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for &v in &self.adj[u] {
                    let v = v as usize;
                    if colour[v] == u8::MAX {
                        colour[v] = 1 - colour[u];
                        queue.push_back(v);
                    } else if colour[v] == colour[u] {
                        return None;
                    }
                }
            }
        }
        Some(colour)
    }

    /// Length of a shortest cycle, or `None` for forests.
    ///
    /// BFS from each root; a non-tree edge `(u, w)` scanned while `u` is
    /// being processed closes a cycle through the root of length
    /// `dist(u) + dist(w) + 1`. The minimum over all roots is exact.
    pub fn girth(&self) -> Option<usize> {
        let mut best = usize::MAX;
        for root in 0..self.n {
            let mut dist = vec![usize::MAX; self.n];
            let mut parent = vec![usize::MAX; self.n];
            dist[root] = 0;
            let mut queue = std::collections::VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                if 2 * dist[u] >= best {
                    break;
                }
                for &w in &self.adj[u] {
                    let w = w as usize;
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        queue.push_back(w);
                    } else if w != parent[u] && parent[w] != u {
                        best = best.min(dist[u] + dist[w] + 1);
                    }
                }
            }
        }
        if best == usize::MAX {
            None
        } else {
            Some(best)
        }
    }

    /// Number of cycles of the given length through the edge `(u, v)`.
    ///
    /// Counts simple paths from `u` to `v` of length `len - 1` avoiding
    /// the edge itself; each such cycle is traversed exactly once.
    pub fn cycles_through_edge(&self, u: usize, v: usize, len: usize) -> usize {
        if len < 3 || !self.has_edge(u, v) {
            return 0;
        }
        let dist_to_v = self.bfs_distances(v);
        let mut visited = vec![false; self.n];
        visited[u] = true;
        self.count_paths(u, v, len - 1, &dist_to_v, &mut visited)
    }

    fn count_paths(
        &self,
        cur: usize,
        target: usize,
        remaining: usize,
        dist_to_target: &[usize],
        visited: &mut [bool],
    ) -> usize {
        if remaining == 0 {
            return usize::from(cur == target);
        }
        let mut total = 0;
        for &w in &self.adj[cur] {
            let w = w as usize;
            if remaining == 1 {
                // Final step must land exactly on the target; skip the
                // direct u-v edge (handled by the caller's start).
                if w == target {
                    total += 1;
                }
                continue;
            }
            if visited[w] || w == target || dist_to_target[w] > remaining {
                continue;
            }
            visited[w] = true;
            total += self.count_paths(w, target, remaining - 1, dist_to_target, visited);
            visited[w] = false;
        }
        total
    }

    /// Number of directed 3-arcs `(v0, v1, v2, v3)` with consecutive
    /// vertices adjacent, `v0 != v2`, and `v1 != v3`.
    pub fn three_arc_count(&self) -> usize {
        let mut total = 0;
        for u in 0..self.n {
            for &v in &self.adj[u] {
                total += (self.degree(u) - 1) * (self.degree(v as usize) - 1);
            }
        }
        total
    }

    /// graph6 encoding (standard format, supporting orders up to 258047).
    pub fn to_graph6(&self) -> String {
        let mut bytes = Vec::new();
        let n = self.n;
        if n <= 62 {
            bytes.push(63 + n as u8);
        } else {
            bytes.push(126);
            bytes.push(63 + ((n >> 12) & 63) as u8);
            bytes.push(63 + ((n >> 6) & 63) as u8);
            bytes.push(63 + (n & 63) as u8);
        }
        let mut acc = 0u8;
        let mut nbits = 0;
        for j in 1..n {
            for i in 0..j {
                acc = (acc << 1) | u8::from(self.has_edge(i, j));
                nbits += 1;
                if nbits == 6 {
                    bytes.push(63 + acc);
                    acc = 0;
                    nbits = 0;
                }
            }
        }
        if nbits > 0 {
            bytes.push(63 + (acc << (6 - nbits)));
        }
        String::from_utf8(bytes).expect("graph6 bytes are printable ASCII")
    }

    /// Parses a graph6 string.
    pub fn from_graph6(s: &str) -> Result<Graph> {
        let bytes = s.trim().as_bytes();
        if bytes.is_empty() {
            return Err(Error::Parse("empty graph6 string".into()));
        }
        let (n, mut pos) = if bytes[0] == 126 {
            if bytes.len() >= 2 && bytes[1] == 126 {
                return Err(Error::Parse(
                    "graph6 orders above 258047 are not supported".into(),
                ));
            }
            if bytes.len() < 4 {
                return Err(Error::Parse("truncated graph6 header".into()));
            }
            let d: Vec<usize> = bytes[1..4]
                .iter()
                .map(|&b| (b as usize).wrapping_sub(63))
                .collect();
            if d.iter().any(|&x| x > 63) {
                return Err(Error::Parse("invalid graph6 header byte".into()));
            }
            ((d[0] << 12) | (d[1] << 6) | d[2], 4)
        } else {
            let n = (bytes[0] as usize).wrapping_sub(63);
            if n > 62 {
                return Err(Error::Parse("invalid graph6 header byte".into()));
            }
            (n, 1)
        };
        let nbits = n * (n - 1) / 2;
        let need = nbits.div_ceil(6);
        if bytes.len() < pos + need {
            return Err(Error::Parse(format!(
                "graph6 body too short: need {need} bytes, got {}",
                bytes.len() - pos
            )));
        }
        let mut edges = Vec::new();
        let mut bit_index = 0;
        'outer: for j in 1..n {
            for i in 0..j {
                let byte = bytes[pos + bit_index / 6] as usize;
                let b = byte.wrapping_sub(63);
                if b > 63 {
                    return Err(Error::Parse("invalid graph6 body byte".into()));
                }
                if b >> (5 - bit_index % 6) & 1 == 1 {
                    edges.push((i, j));
                }
                bit_index += 1;
                if bit_index == nbits {
                    break 'outer;
                }
            }
        }
        pos += need;
        if bytes.len() > pos {
            return Err(Error::Parse("trailing bytes after graph6 body".into()));
        }
        Graph::from_edges(n, &edges)
    }

    /// Automorphism group of the (uncoloured) graph.
    pub fn automorphism_group(&self) -> PermGroup {
        let res = self.canonicalize(None);
        PermGroup::from_generators(self.n, &res.generators)
    }

    /// Automorphism group respecting an initial colouring (images must
    /// preserve colours).
    pub fn automorphism_group_colored(&self, colors: &[u32]) -> PermGroup {
        let res = self.canonicalize(Some(colors));
        PermGroup::from_generators(self.n, &res.generators)
    }

    /// Canonical certificate: equal certificates characterise isomorphic
    /// graphs (with equal colourings, when given).
    pub fn canonical_cert(&self) -> Vec<u64> {
        self.canonicalize(None).cert
    }

    pub fn is_isomorphic(&self, other: &Graph) -> bool {
        self.n == other.n
            && self.edge_count() == other.edge_count()
            && self.canonical_cert() == other.canonical_cert()
    }

    /// Runs the individualization–refinement search.
    pub fn canonicalize(&self, colors: Option<&[u32]>) -> CanonicalResult {
        let initial = initial_partition(self.n, colors);
        let mut search = IrSearch::new(self, &initial);
        search.run(initial);
        let best = search.best.expect("search visits at least one leaf");
        CanonicalResult {
            cert: best.cert,
            canonical_labeling: best.labeling,
            generators: search.autos,
        }
    }
}

/// Output of the canonical-labelling search.
pub struct CanonicalResult {
    /// Colour-class sizes followed by the relabelled adjacency bits.
    pub cert: Vec<u64>,
    /// Maps each vertex to its canonical position.
    pub canonical_labeling: Perm,
    /// Generators of the (colour-preserving) automorphism group.
    pub generators: Vec<Perm>,
}

fn bits_to_adj(n: usize, bits: &[Vec<u64>]) -> Vec<Vec<u32>> {
    (0..n)
        .map(|u| {
            (0..n)
                .filter(|&v| bits[u][v / 64] >> (v % 64) & 1 == 1)
                .map(|v| v as u32)
                .collect()
        })
        .collect()
}

/// Ordered partition of the vertices into cells.
type Partition = Vec<Vec<u32>>;

fn initial_partition(n: usize, colors: Option<&[u32]>) -> Partition {
    match colors {
        None => {
            if n == 0 {
                vec![]
            } else {
                vec![(0..n as u32).collect()]
            }
        }
        Some(c) => {
            assert_eq!(c.len(), n, "colouring length must match vertex count");
            let mut values: Vec<u32> = c.to_vec();
            values.sort_unstable();
            values.dedup();
            values
                .iter()
                .map(|&val| {
                    (0..n as u32)
                        .filter(|&v| c[v as usize] == val)
                        .collect::<Vec<u32>>()
                })
                .collect()
        }
    }
}

struct Leaf {
    cert: Vec<u64>,
    /// Vertex -> canonical position.
    labeling: Perm,
}

struct IrSearch<'g> {
    graph: &'g Graph,
    /// Cell sizes of the initial partition, prefixed to every certificate.
    cert_prefix: Vec<u64>,
    first: Option<Leaf>,
    best: Option<Leaf>,
    autos: Vec<Perm>,
}

impl<'g> IrSearch<'g> {
    fn new(graph: &'g Graph, initial: &Partition) -> IrSearch<'g> {
        let mut cert_prefix = vec![graph.n as u64, initial.len() as u64];
        cert_prefix.extend(initial.iter().map(|c| c.len() as u64));
        IrSearch {
            graph,
            cert_prefix,
            first: None,
            best: None,
            autos: Vec::new(),
        }
    }

    fn run(&mut self, partition: Partition) {
        if self.graph.n == 0 {
            self.best = Some(Leaf {
                cert: self.cert_prefix.clone(),
                labeling: Perm::identity(0),
            });
            return;
        }
        let mut prefix = Vec::new();
        self.descend(partition, &mut prefix);
    }

    fn descend(&mut self, mut partition: Partition, prefix: &mut Vec<u32>) {
        refine(self.graph, &mut partition);
        let target = partition.iter().position(|c| c.len() > 1);
        let Some(target) = target else {
            self.record_leaf(&partition);
            return;
        };
        // Branch on each vertex of the target cell, skipping vertices
        // equivalent to an already-tried one under automorphisms (found
        // so far) that fix the individualized prefix pointwise.
        let cell = partition[target].clone();
        let mut tried: Vec<u32> = Vec::new();
        for &v in &cell {
            if self.orbit_blocked(&tried, v, prefix) {
                continue;
            }
            tried.push(v);
            let mut child = Vec::with_capacity(partition.len() + 1);
            for (ci, c) in partition.iter().enumerate() {
                if ci == target {
                    child.push(vec![v]);
                    child.push(c.iter().copied().filter(|&x| x != v).collect());
                } else {
                    child.push(c.clone());
                }
            }
            prefix.push(v);
            self.descend(child, prefix);
            prefix.pop();
        }
    }

    /// True if `v` lies in the orbit of an already-tried vertex under the
    /// subgroup of discovered automorphisms fixing `prefix` pointwise.
    fn orbit_blocked(&self, tried: &[u32], v: u32, prefix: &[u32]) -> bool {
        if tried.is_empty() || self.autos.is_empty() {
            return false;
        }
        let fixing: Vec<&Perm> = self
            .autos
            .iter()
            .filter(|a| prefix.iter().all(|&p| a.apply(p as usize) == p as usize))
            .collect();
        if fixing.is_empty() {
            return false;
        }
        // Union-find over the vertex set under the fixing generators.
        let n = self.graph.n;
        let mut uf: Vec<u32> = (0..n as u32).collect();
        fn find(uf: &mut [u32], x: u32) -> u32 {
            let mut r = x;
            while uf[r as usize] != r {
                r = uf[r as usize];
            }
            let mut c = x;
            while uf[c as usize] != r {
                let next = uf[c as usize];
                uf[c as usize] = r;
                c = next;
            }
            r
        }
        for a in &fixing {
            for x in 0..n as u32 {
                let y = a.apply(x as usize) as u32;
                let (rx, ry) = (find(&mut uf, x), find(&mut uf, y));
                if rx != ry {
                    uf[rx as usize] = ry;
                }
            }
        }
        let rv = find(&mut uf, v);
        tried.iter().any(|&t| find(&mut uf, t) == rv)
    }

    fn record_leaf(&mut self, partition: &Partition) {
        let n = self.graph.n;
        // labeling: vertex -> position.
        let mut labeling = vec![0u32; n];
        for (pos, cell) in partition.iter().enumerate() {
            debug_assert_eq!(cell.len(), 1);
            labeling[cell[0] as usize] = pos as u32;
        }
        let labeling = Perm::from_images(labeling).expect("discrete partition is a bijection");
        let cert = self.certificate(&labeling);
        if let Some(first) = &self.first {
            if first.cert == cert {
                let first_labeling = first.labeling.clone();
                self.add_auto(&first_labeling, &labeling);
            }
        } else {
            self.first = Some(Leaf {
                cert: cert.clone(),
                labeling: labeling.clone(),
            });
        }
        match &self.best {
            Some(best) if best.cert <= cert => {
                if best.cert == cert {
                    let best_labeling = best.labeling.clone();
                    self.add_auto(&best_labeling, &labeling);
                }
            }
            _ => self.best = Some(Leaf { cert, labeling }),
        }
    }

    /// Equal certificates for labellings `l1`, `l2` give the automorphism
    /// sending `u` to `l2^-1(l1(u))`.
    fn add_auto(&mut self, l1: &Perm, l2: &Perm) {
        let gamma = l1.compose(&l2.inverse());
        if gamma.is_identity() || self.autos.contains(&gamma) {
            return;
        }
        debug_assert!(is_graph_automorphism(self.graph, &gamma));
        self.autos.push(gamma);
    }

    fn certificate(&self, labeling: &Perm) -> Vec<u64> {
        let n = self.graph.n;
        // inverse: position -> vertex.
        let inv = labeling.inverse();
        let nbits = n * (n - 1) / 2;
        let mut cert = self.cert_prefix.clone();
        let base = cert.len();
        cert.resize(base + nbits.div_ceil(64).max(1), 0);
        let mut k = 0;
        for p in 0..n {
            let vp = inv.apply(p);
            for q in (p + 1)..n {
                if self.graph.has_edge(vp, inv.apply(q)) {
                    cert[base + k / 64] |= 1 << (k % 64);
                }
                k += 1;
            }
        }
        cert
    }
}

fn is_graph_automorphism(g: &Graph, p: &Perm) -> bool {
    (0..g.n).all(|u| {
        g.neighbors(u)
            .iter()
            .all(|&v| g.has_edge(p.apply(u), p.apply(v as usize)))
    })
}

/// Refines the ordered partition to equitability: repeatedly splits each
/// cell by the vector of neighbour counts into every current cell, until
/// stable. Split fragments are ordered by ascending count vector, which
/// keeps the procedure invariant under relabelling.
fn refine(g: &Graph, partition: &mut Partition) {
    let n = g.n;
    if n == 0 {
        return;
    }
    loop {
        let cells = partition.len();
        if cells == n {
            return;
        }
        // Neighbour counts of every vertex into every cell.
        let mut masks = vec![vec![0u64; g.words]; cells];
        for (ci, cell) in partition.iter().enumerate() {
            for &v in cell {
                masks[ci][v as usize / 64] |= 1 << (v % 64);
            }
        }
        let count = |v: u32, ci: usize| -> u32 {
            g.bits[v as usize]
                .iter()
                .zip(&masks[ci])
                .map(|(a, b)| (a & b).count_ones())
                .sum()
        };
        let mut next: Partition = Vec::with_capacity(cells);
        let mut split = false;
        for cell in partition.iter() {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<u32>, u32)> = cell
                .iter()
                .map(|&v| ((0..cells).map(|ci| count(v, ci)).collect(), v))
                .collect();
            keyed.sort_unstable();
            let mut fragment: Vec<u32> = vec![keyed[0].1];
            for w in keyed.windows(2) {
                if w[0].0 == w[1].0 {
                    fragment.push(w[1].1);
                } else {
                    next.push(std::mem::take(&mut fragment));
                    fragment.push(w[1].1);
                    split = true;
                }
            }
            next.push(fragment);
        }
        *partition = next;
        if !split {
            return;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    fn complete(n: usize) -> Graph {
        let mut edges = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                edges.push((i, j));
            }
        }
        Graph::from_edges(n, &edges).unwrap()
    }

    fn petersen() -> Graph {
        // Outer 5-cycle 0..5, inner pentagram 5..10, spokes i -- i+5.
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
            edges.push((i, i + 5));
        }
        Graph::from_edges(10, &edges).unwrap()
    }

    fn complete_bipartite(a: usize, b: usize) -> Graph {
        let mut edges = Vec::new();
        for i in 0..a {
            for j in 0..b {
                edges.push((i, a + j));
            }
        }
        Graph::from_edges(a + b, &edges).unwrap()
    }

    fn cube() -> Graph {
        let mut edges = Vec::new();
        for u in 0..8usize {
            for b in 0..3 {
                let v = u ^ (1 << b);
                if u < v {
                    edges.push((u, v));
                }
            }
        }
        Graph::from_edges(8, &edges).unwrap()
    }

    /// |Aut| by checking all n! permutations.
    fn brute_force_aut_order(g: &Graph) -> u128 {
        let n = g.vertex_count();
        let mut perm: Vec<u32> = (0..n as u32).collect();
        let mut count = 0u128;
        loop {
            let p = Perm::from_images(perm.clone()).unwrap();
            if is_graph_automorphism(g, &p) {
                count += 1;
            }
            if !next_permutation(&mut perm) {
                break;
            }
        }
        count
    }

    fn next_permutation(a: &mut [u32]) -> bool {
        let n = a.len();
        if n < 2 {
            return false;
        }
        let mut i = n - 1;
        while i > 0 && a[i - 1] >= a[i] {
            i -= 1;
        }
        if i == 0 {
            return false;
        }
        let mut j = n - 1;
        while a[j] <= a[i - 1] {
            j -= 1;
        }
        a.swap(i - 1, j);
        a[i..].reverse();
        true
    }

    #[test]
    fn construction_and_basics() {
        let g = cycle(6);
        assert_eq!(g.vertex_count(), 6);
        assert_eq!(g.edge_count(), 6);
        assert_eq!(g.regular_valency(), Some(2));
        assert!(g.is_connected());
        assert_eq!(g.girth(), Some(6));
        assert!(g.bipartition().is_some());
        assert!(Graph::from_edges(3, &[(0, 0)]).is_err());
        assert!(Graph::from_edges(3, &[(0, 1), (1, 0)]).is_err());
        assert!(Graph::from_edges(2, &[(0, 5)]).is_err());
    }

    #[test]
    fn girth_known_values() {
        assert_eq!(complete(4).girth(), Some(3));
        assert_eq!(cycle(5).girth(), Some(5));
        assert_eq!(petersen().girth(), Some(5));
        assert_eq!(complete_bipartite(3, 3).girth(), Some(4));
        assert_eq!(cube().girth(), Some(4));
        // A tree has no cycle.
        let path = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(path.girth(), None);
    }

    #[test]
    fn bipartition_and_odd_cycles() {
        assert!(cycle(7).bipartition().is_none());
        let parts = complete_bipartite(2, 3).bipartition().unwrap();
        assert_eq!(parts[..2], [0, 0]);
        assert_eq!(parts[2..], [1, 1, 1]);
        assert!(petersen().bipartition().is_none());
    }

    #[test]
    fn distance_profiles() {
        let g = petersen();
        assert_eq!(g.distance_profile(0), vec![1, 3, 6]);
        let q3 = cube();
        assert_eq!(q3.distance_profile(0), vec![1, 3, 3, 1]);
    }

    #[test]
    fn diameter_values() {
        let path = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(path.diameter(), Some(3));
        assert_eq!(complete(4).diameter(), Some(1));
        assert_eq!(petersen().diameter(), Some(2));
        assert_eq!(cube().diameter(), Some(3));
        let two_parts = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(two_parts.diameter(), None);
        assert_eq!(Graph::from_edges(0, &[]).unwrap().diameter(), None);
        assert_eq!(Graph::from_edges(1, &[]).unwrap().diameter(), Some(0));
    }

    #[test]
    fn worthiness() {
        // Antipodal vertices of the 4-cycle share both neighbours.
        assert_eq!(cycle(4).unworthy_pair(), Some((0, 2)));
        assert!(!complete_bipartite(2, 2).is_worthy());
        let path3 = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(path3.unworthy_pair(), Some((0, 2)));
        assert!(cycle(5).is_worthy());
        assert!(complete(4).is_worthy());
        assert!(petersen().is_worthy());
        assert!(cube().is_worthy());
        // Two isolated vertices share the empty neighbourhood.
        let iso = Graph::from_edges(4, &[(0, 1)]).unwrap();
        assert_eq!(iso.unworthy_pair(), Some((2, 3)));
    }

    #[test]
    fn graph6_round_trip_and_frozen_value() {
        // The 4-cycle labelled 0-1-2-3-0: upper-triangle bits in column
        // order are 101101 = 45, so the body byte is 63+45 = 'l'.
        let c4 = cycle(4);
        assert_eq!(c4.to_graph6(), "Cl");
        // "C]" is the same cycle under the crossed labelling 0-2-1-3-0.
        let crossed = Graph::from_graph6("C]").unwrap();
        assert_eq!(crossed.edges(), vec![(0, 2), (0, 3), (1, 2), (1, 3)]);
        assert!(crossed.is_isomorphic(&c4));
        for g in [cycle(6), petersen(), complete(5), complete_bipartite(3, 4)] {
            let s = g.to_graph6();
            let h = Graph::from_graph6(&s).unwrap();
            assert_eq!(h.vertex_count(), g.vertex_count());
            assert_eq!(h.edges(), g.edges());
        }
        // Long form for n > 62.
        let big = cycle(80);
        let s = big.to_graph6();
        assert!(s.starts_with('~'));
        let back = Graph::from_graph6(&s).unwrap();
        assert_eq!(back.edges(), big.edges());
        assert!(Graph::from_graph6("").is_err());
        assert!(Graph::from_graph6("C").is_err());
    }

    #[test]
    fn automorphism_groups_of_named_graphs() {
        assert_eq!(cycle(6).automorphism_group().order(), 12);
        assert_eq!(complete(4).automorphism_group().order(), 24);
        assert_eq!(petersen().automorphism_group().order(), 120);
        assert_eq!(complete_bipartite(3, 3).automorphism_group().order(), 72);
        assert_eq!(cube().automorphism_group().order(), 48);
        let path = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(path.automorphism_group().order(), 2);
    }

    #[test]
    fn automorphism_order_matches_brute_force_small() {
        let graphs: Vec<Graph> = vec![
            cycle(5),
            cycle(6),
            complete(4),
            complete_bipartite(2, 3),
            cube(),
            Graph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 3)])
                .unwrap(),
            Graph::from_edges(7, &[(0, 1), (0, 2), (0, 3), (3, 4), (4, 5), (5, 6), (6, 3)])
                .unwrap(),
            Graph::from_edges(5, &[]).unwrap(),
        ];
        for g in &graphs {
            assert_eq!(
                g.automorphism_group().order(),
                brute_force_aut_order(g),
                "mismatch on {g:?}"
            );
        }
    }

    #[test]
    fn automorphism_generators_pseudorandom_vs_brute_force() {
        use rand::prelude::*;
        use rand::rngs::StdRng;
        let mut rng = StdRng::seed_from_u64(0x5eed);
        for trial in 0..30 {
            let n = 7;
            let mut edges = Vec::new();
            for i in 0..n {
                for j in (i + 1)..n {
                    if rng.random_bool(0.4) {
                        edges.push((i, j));
                    }
                }
            }
            let g = Graph::from_edges(n, &edges).unwrap();
            assert_eq!(
                g.automorphism_group().order(),
                brute_force_aut_order(&g),
                "trial {trial} with edges {edges:?}"
            );
        }
    }

    #[test]
    fn canonical_cert_separates_isomorphism_classes() {
        // Two labelings of the same graph.
        let g1 = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        let g2 = Graph::from_edges(5, &[(2, 4), (4, 1), (1, 3), (3, 0), (0, 2)]).unwrap();
        assert!(g1.is_isomorphic(&g2));
        // Same degree sequence, different graphs: C6 vs 2 triangles.
        let c6 = cycle(6);
        let tri2 =
            Graph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
        assert!(!c6.is_isomorphic(&tri2));
        // The 4-regular circulants on 9 vertices with steps {1,2} and
        // {1,3} are not isomorphic.
        let circ = |steps: &[usize]| {
            let mut edges = Vec::new();
            for i in 0..9 {
                for &s in steps {
                    let j = (i + s) % 9;
                    edges.push((i.min(j), i.max(j)));
                }
            }
            edges.sort_unstable();
            edges.dedup();
            Graph::from_edges(9, &edges).unwrap()
        };
        assert!(!circ(&[1, 2]).is_isomorphic(&circ(&[1, 3])));
    }

    #[test]
    fn colored_automorphisms_respect_classes() {
        // C6 with vertices coloured by parity: rotations by even steps
        // and reflections fixing the classes: order 6.
        let g = cycle(6);
        let colors: Vec<u32> = (0..6).map(|v| (v % 2) as u32).collect();
        let a = g.automorphism_group_colored(&colors);
        assert_eq!(a.order(), 6);
        for p in a.generators() {
            for v in 0..6 {
                assert_eq!(colors[p.apply(v)], colors[v]);
            }
        }
        // All-distinct colours freeze everything.
        let frozen: Vec<u32> = (0..6).collect();
        assert_eq!(g.automorphism_group_colored(&frozen).order(), 1);
    }

    #[test]
    fn cycle_counts_through_edges() {
        let c6 = cycle(6);
        assert_eq!(c6.cycles_through_edge(0, 1, 6), 1);
        assert_eq!(c6.cycles_through_edge(0, 1, 5), 0);
        let k4 = complete(4);
        // Each edge of K4 lies on 2 triangles.
        assert_eq!(k4.cycles_through_edge(0, 1, 3), 2);
        // Petersen: each edge lies on 4 pentagons (12 pentagons * 5 edges
        // each / 15 edges).
        assert_eq!(petersen().cycles_through_edge(0, 1, 5), 4);
    }

    #[test]
    fn three_arc_counting() {
        // In C6 every arc extends uniquely: 12 arcs * 1 * 1.
        assert_eq!(cycle(6).three_arc_count(), 12);
        // Petersen: 30 arcs * 2 * 2.
        assert_eq!(petersen().three_arc_count(), 120);
    }

    #[test]
    fn empty_and_tiny_graphs() {
        let g0 = Graph::from_edges(0, &[]).unwrap();
        assert_eq!(g0.automorphism_group().order(), 1);
        assert!(!g0.is_connected());
        let g1 = Graph::from_edges(1, &[]).unwrap();
        assert!(g1.is_connected());
        assert_eq!(g1.automorphism_group().order(), 1);
        let g2 = Graph::from_edges(2, &[(0, 1)]).unwrap();
        assert_eq!(g2.automorphism_group().order(), 2);
        assert_eq!(g2.girth(), None);
    }
}
