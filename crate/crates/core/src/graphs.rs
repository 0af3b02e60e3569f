//! Simple undirected graphs, the named example graphs, graph products,
//! distance structure, and exact combinatorial oracles.

use std::collections::{BTreeSet, VecDeque};
use std::fmt::Write as _;

use crate::exact::IMat;
use num::BigInt;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("vertex index {0} out of range (n = {1})")]
    VertexOutOfRange(usize, usize),
    #[error("line {0}: {1}")]
    Parse(usize, String),
    #[error("unknown graph name '{0}'")]
    UnknownName(String),
    #[error("invalid parameters for '{0}': {1}")]
    BadParams(String, String),
}

/// Relationship between an ordered pair of vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RelKind {
    Equal,
    Adjacent,
    DistinctNonAdjacent,
}

/// Simple undirected graph with a dense 01 adjacency matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
    adj: Vec<Vec<u8>>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            edges: BTreeSet::new(),
            adj: vec![vec![0; n]; n],
        }
    }

    pub fn from_edges(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        if u >= self.n {
            return Err(GraphError::VertexOutOfRange(u, self.n));
        }
        if v >= self.n {
            return Err(GraphError::VertexOutOfRange(v, self.n));
        }
        assert_ne!(u, v, "self-loops are not representable");
        self.edges.insert((u.min(v), u.max(v)));
        self.adj[u][v] = 1;
        self.adj[v][u] = 1;
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u][v] == 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].iter().map(|&x| x as usize).sum()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v]
            .iter()
            .enumerate()
            .filter(|(_, &a)| a == 1)
            .map(|(u, _)| u)
    }

    /// Adjacency matrix as an exact integer matrix.
    pub fn adjacency(&self) -> IMat {
        IMat::from_fn(self.n, self.n, |i, j| BigInt::from(self.adj[i][j]))
    }

    pub fn adjacency_f64(&self) -> nalgebra::DMatrix<f64> {
        nalgebra::DMatrix::from_fn(self.n, self.n, |i, j| self.adj[i][j] as f64)
    }

    /// Combinatorial Laplacian D - A.
    pub fn laplacian(&self) -> IMat {
        IMat::from_fn(self.n, self.n, |i, j| {
            if i == j {
                BigInt::from(self.degree(i))
            } else {
                -BigInt::from(self.adj[i][j])
            }
        })
    }

    pub fn rel(&self, g: usize, g2: usize) -> Result<RelKind, GraphError> {
        if g >= self.n {
            return Err(GraphError::VertexOutOfRange(g, self.n));
        }
        if g2 >= self.n {
            return Err(GraphError::VertexOutOfRange(g2, self.n));
        }
        Ok(if g == g2 {
            RelKind::Equal
        } else if self.adj[g][g2] == 1 {
            RelKind::Adjacent
        } else {
            RelKind::DistinctNonAdjacent
        })
    }

    pub fn complement(&self) -> Graph {
        let mut g = Graph::empty(self.n);
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                if self.adj[u][v] == 0 {
                    g.add_edge(u, v).unwrap();
                }
            }
        }
        g
    }

    /// Disjoint union, vertices of `other` shifted by `self.n`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let mut g = Graph::empty(self.n + other.n);
        for (u, v) in self.edges() {
            g.add_edge(u, v).unwrap();
        }
        for (u, v) in other.edges() {
            g.add_edge(u + self.n, v + self.n).unwrap();
        }
        g
    }

    /// Relabels vertices by the permutation `perm` (vertex v becomes perm[v]).
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let mut g = Graph::empty(self.n);
        for (u, v) in self.edges() {
            g.add_edge(perm[u], perm[v]).unwrap();
        }
        g
    }

    /// BFS distances from `src`; `usize::MAX` marks unreachable vertices.
    pub fn bfs_distances(&self, src: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n];
        dist[src] = 0;
        let mut queue = VecDeque::from([src]);
        while let Some(u) = queue.pop_front() {
            for v in self.neighbors(u) {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    pub fn distance_matrix(&self) -> Vec<Vec<usize>> {
        (0..self.n).map(|v| self.bfs_distances(v)).collect()
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        self.bfs_distances(0).iter().all(|&d| d != usize::MAX)
    }

    pub fn component_count(&self) -> usize {
        let mut seen = vec![false; self.n];
        let mut count = 0;
        for s in 0..self.n {
            if !seen[s] {
                count += 1;
                for (v, &d) in self.bfs_distances(s).iter().enumerate() {
                    if d != usize::MAX {
                        seen[v] = true;
                    }
                }
            }
        }
        count
    }
}

/// Cartesian product: (g,h) ~ (g',h') iff (g = g' and h ~ h') or (g ~ g' and h = h').
/// Row-major vertex ordering g * |V_H| + h.
pub fn cartesian_product(g: &Graph, h: &Graph) -> Graph {
    let nh = h.n();
    let mut out = Graph::empty(g.n() * nh);
    for a in 0..g.n() {
        for b in 0..nh {
            for a2 in 0..g.n() {
                for b2 in 0..nh {
                    let u = a * nh + b;
                    let v = a2 * nh + b2;
                    if u >= v {
                        continue;
                    }
                    let adjacent = (a == a2 && h.has_edge(b, b2)) || (g.has_edge(a, a2) && b == b2);
                    if adjacent {
                        out.add_edge(u, v).unwrap();
                    }
                }
            }
        }
    }
    out
}

/// Isomorphism product G ⋄ H: (g,h) ~ (g',h') iff rel(g,g') != rel(h,h').
/// Row-major vertex ordering g * |V_H| + h.
pub fn isomorphism_product(g: &Graph, h: &Graph) -> Graph {
    let nh = h.n();
    let mut out = Graph::empty(g.n() * nh);
    for a in 0..g.n() {
        for b in 0..nh {
            for a2 in 0..g.n() {
                for b2 in 0..nh {
                    let u = a * nh + b;
                    let v = a2 * nh + b2;
                    if u >= v {
                        continue;
                    }
                    if g.rel(a, a2).unwrap() != h.rel(b, b2).unwrap() {
                        out.add_edge(u, v).unwrap();
                    }
                }
            }
        }
    }
    out
}

/// Distance matrices X^(0..e) where e is the largest finite eccentricity.
/// X^(0) = I; pairs at infinite distance are covered by no matrix.
pub fn distance_matrices(g: &Graph) -> Vec<IMat> {
    let n = g.n();
    let dist = g.distance_matrix();
    let max_fin = dist
        .iter()
        .flatten()
        .filter(|&&d| d != usize::MAX)
        .max()
        .copied()
        .unwrap_or(0);
    (0..=max_fin)
        .map(|ell| {
            IMat::from_fn(n, n, |i, j| {
                if dist[i][j] == ell {
                    BigInt::from(1)
                } else {
                    BigInt::from(0)
                }
            })
        })
        .collect()
}

/// Distance power: connects vertices at distance d in `g` for any d in `dists`.
pub fn dist_power(g: &Graph, dists: &BTreeSet<usize>) -> Graph {
    let dist = g.distance_matrix();
    let mut out = Graph::empty(g.n());
    for u in 0..g.n() {
        for v in (u + 1)..g.n() {
            if dist[u][v] != usize::MAX && dists.contains(&dist[u][v]) {
                out.add_edge(u, v).unwrap();
            }
        }
    }
    out
}

pub fn cycle(n: usize) -> Graph {
    let mut g = Graph::empty(n);
    if n >= 3 {
        for i in 0..n {
            g.add_edge(i, (i + 1) % n).unwrap();
        }
    } else if n == 2 {
        g.add_edge(0, 1).unwrap();
    }
    g
}

pub fn complete(n: usize) -> Graph {
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in (u + 1)..n {
            g.add_edge(u, v).unwrap();
        }
    }
    g
}

pub fn path(n: usize) -> Graph {
    let mut g = Graph::empty(n);
    for i in 1..n {
        g.add_edge(i - 1, i).unwrap();
    }
    g
}

/// 4-cube: binary strings of length 4, adjacent at Hamming distance 1.
pub fn hypercube4() -> Graph {
    let mut g = Graph::empty(16);
    for u in 0..16usize {
        for b in 0..4 {
            let v = u ^ (1 << b);
            if u < v {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    g
}

/// The Hoffman graph: the unique graph cospectral to the 4-cube.
///
/// Shipped as literal data (obtained by Godsil–McKay switching on the
/// 4-cube); its defining properties are asserted in the test suite.
pub fn hoffman() -> Graph {
    const EDGES: [(usize, usize); 32] = [
        (0, 1),
        (0, 7),
        (0, 11),
        (0, 13),
        (1, 3),
        (1, 5),
        (1, 9),
        (2, 5),
        (2, 6),
        (2, 9),
        (2, 10),
        (3, 4),
        (3, 8),
        (3, 13),
        (4, 6),
        (4, 9),
        (4, 12),
        (5, 8),
        (5, 11),
        (6, 7),
        (6, 14),
        (7, 9),
        (7, 15),
        (8, 10),
        (8, 12),
        (10, 11),
        (10, 14),
        (11, 15),
        (12, 13),
        (12, 14),
        (13, 15),
        (14, 15),
    ];
    Graph::from_edges(16, EDGES).unwrap()
}

/// Shrikhande graph: Cayley graph on Z4 x Z4 with connection set
/// {±(1,0), ±(0,1), ±(1,1)}.
pub fn shrikhande() -> Graph {
    let mut g = Graph::empty(16);
    let conn: [(usize, usize); 6] = [(1, 0), (3, 0), (0, 1), (0, 3), (1, 1), (3, 3)];
    for x in 0..4usize {
        for y in 0..4usize {
            for (dx, dy) in conn {
                let x2 = (x + dx) % 4;
                let y2 = (y + dy) % 4;
                let u = 4 * x + y;
                let v = 4 * x2 + y2;
                if u < v {
                    g.add_edge(u, v).unwrap();
                }
            }
        }
    }
    g
}

/// Rook's graph K4 □ K4.
pub fn rook4() -> Graph {
    cartesian_product(&complete(4), &complete(4))
}

/// Constructs a named graph. `params` usage:
/// - `cycle n`, `complete n`, `empty n`, `path n`
/// - `dist_power n d1 d2 ...`: distance-{d1,d2,...} graph of the cycle C_n
pub fn named_graph(name: &str, params: &[usize]) -> Result<Graph, GraphError> {
    let want = |k: usize| -> Result<(), GraphError> {
        if params.len() != k {
            Err(GraphError::BadParams(
                name.to_string(),
                format!("expected {} parameter(s), got {}", k, params.len()),
            ))
        } else {
            Ok(())
        }
    };
    match name {
        "q4" => {
            want(0)?;
            Ok(hypercube4())
        }
        "hoffman" => {
            want(0)?;
            Ok(hoffman())
        }
        "shrikhande" => {
            want(0)?;
            Ok(shrikhande())
        }
        "rook4" => {
            want(0)?;
            Ok(rook4())
        }
        "cycle" => {
            want(1)?;
            Ok(cycle(params[0]))
        }
        "complete" => {
            want(1)?;
            Ok(complete(params[0]))
        }
        "empty" => {
            want(1)?;
            Ok(Graph::empty(params[0]))
        }
        "path" => {
            want(1)?;
            Ok(path(params[0]))
        }
        "two_triangles" => {
            want(0)?;
            Ok(cycle(3).disjoint_union(&cycle(3)))
        }
        "dist_power" => {
            if params.len() < 2 {
                return Err(GraphError::BadParams(
                    name.to_string(),
                    "need cycle length and at least one distance".into(),
                ));
            }
            let base = cycle(params[0]);
            let dists: BTreeSet<usize> = params[1..].iter().copied().collect();
            Ok(dist_power(&base, &dists))
        }
        _ => Err(GraphError::UnknownName(name.to_string())),
    }
}

/// 1-dimensional WL (degree refinement) colors, shared palette over both
/// graphs. Returns (colors_g, colors_h) with colors comparable across inputs.
pub fn wl1_colors(g: &Graph, h: &Graph) -> (Vec<usize>, Vec<usize>) {
    use std::collections::BTreeMap;
    fn keys(graph: &Graph, colors: &[usize]) -> Vec<(usize, Vec<usize>)> {
        (0..graph.n())
            .map(|v| {
                let mut multiset: Vec<usize> = graph.neighbors(v).map(|u| colors[u]).collect();
                multiset.sort_unstable();
                (colors[v], multiset)
            })
            .collect()
    }
    let mut cg = vec![0usize; g.n()];
    let mut ch = vec![0usize; h.n()];
    loop {
        let kg = keys(g, &cg);
        let kh = keys(h, &ch);
        let mut palette: BTreeMap<&(usize, Vec<usize>), usize> = BTreeMap::new();
        for key in kg.iter().chain(kh.iter()) {
            let fresh = palette.len();
            palette.entry(key).or_insert(fresh);
        }
        let ng: Vec<usize> = kg.iter().map(|k| palette[k]).collect();
        let nh: Vec<usize> = kh.iter().map(|k| palette[k]).collect();
        if ng == cg && nh == ch {
            return (cg, ch);
        }
        cg = ng;
        ch = nh;
    }
}

/// Finds the lexicographically least isomorphism from `g` to `h`, if any.
///
/// Backtracking over vertex maps pruned by shared-palette 1-WL colors and
/// adjacency consistency with already-mapped vertices.
pub fn exact_isomorphism(g: &Graph, h: &Graph) -> Option<Vec<usize>> {
    if g.n() != h.n() || g.num_edges() != h.num_edges() {
        return None;
    }
    let n = g.n();
    if n == 0 {
        return Some(vec![]);
    }
    let (cg, ch) = wl1_colors(g, h);
    {
        let mut a = cg.clone();
        let mut b = ch.clone();
        a.sort_unstable();
        b.sort_unstable();
        if a != b {
            return None;
        }
    }
    let mut map = vec![usize::MAX; n]; // g -> h
    let mut used = vec![false; n];
    fn backtrack(
        g: &Graph,
        h: &Graph,
        cg: &[usize],
        ch: &[usize],
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
        v: usize,
    ) -> bool {
        let n = g.n();
        if v == n {
            return true;
        }
        'cand: for w in 0..n {
            if used[w] || cg[v] != ch[w] {
                continue;
            }
            for prev in 0..v {
                if g.has_edge(v, prev) != h.has_edge(w, map[prev]) {
                    continue 'cand;
                }
            }
            map[v] = w;
            used[w] = true;
            if backtrack(g, h, cg, ch, map, used, v + 1) {
                return true;
            }
            map[v] = usize::MAX;
            used[w] = false;
        }
        false
    }
    if backtrack(g, h, &cg, &ch, &mut map, &mut used, 0) {
        Some(map)
    } else {
        None
    }
}

/// Checks that `f` maps `g` isomorphically onto `h`.
pub fn is_isomorphism(g: &Graph, h: &Graph, f: &[usize]) -> bool {
    if g.n() != h.n() || f.len() != g.n() {
        return false;
    }
    let mut seen = vec![false; g.n()];
    for &w in f {
        if w >= g.n() || seen[w] {
            return false;
        }
        seen[w] = true;
    }
    for u in 0..g.n() {
        for v in 0..g.n() {
            if g.has_edge(u, v) != h.has_edge(f[u], f[v]) {
                return false;
            }
        }
    }
    true
}

/// True iff some k-subset of vertices is pairwise adjacent.
pub fn contains_clique(g: &Graph, k: usize) -> bool {
    assert!(k >= 1);
    if k == 1 {
        return g.n() >= 1;
    }
    let cands: Vec<usize> = (0..g.n()).filter(|&v| g.degree(v) >= k - 1).collect();
    fn extend(g: &Graph, cands: &[usize], start: usize, current: &mut Vec<usize>, k: usize) -> bool {
        if current.len() == k {
            return true;
        }
        for idx in start..cands.len() {
            if cands.len() - idx + current.len() < k {
                return false;
            }
            let v = cands[idx];
            if current.iter().all(|&u| g.has_edge(u, v)) {
                current.push(v);
                if extend(g, cands, idx + 1, current, k) {
                    return true;
                }
                current.pop();
            }
        }
        false
    }
    extend(g, &cands, 0, &mut Vec::new(), k)
}

/// Independence number via clique search on the complement. Exponential;
/// intended for small graphs only.
pub fn independence_number(g: &Graph) -> usize {
    let comp = g.complement();
    let mut best = 0;
    for k in 1..=g.n() {
        if contains_clique(&comp, k) {
            best = k;
        } else {
            break;
        }
    }
    best
}

/// Parses the edge-list format: first non-comment line "n m", then m lines
/// "u v" with 0 <= u < v < n. '#' starts a comment.
pub fn parse_graph(text: &str) -> Result<Graph, GraphError> {
    let mut header: Option<(usize, usize)> = None;
    let mut g = Graph::empty(0);
    let mut edges_seen = 0usize;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let lno = lineno + 1;
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(GraphError::Parse(
                lno,
                format!("expected two fields, got {}", fields.len()),
            ));
        }
        let a: usize = fields[0]
            .parse()
            .map_err(|_| GraphError::Parse(lno, format!("bad integer '{}'", fields[0])))?;
        let b: usize = fields[1]
            .parse()
            .map_err(|_| GraphError::Parse(lno, format!("bad integer '{}'", fields[1])))?;
        match header {
            None => {
                header = Some((a, b));
                g = Graph::empty(a);
            }
            Some((n, m)) => {
                if edges_seen == m {
                    return Err(GraphError::Parse(
                        lno,
                        format!("more than {} edge lines", m),
                    ));
                }
                if a == b {
                    return Err(GraphError::Parse(lno, format!("self-loop at vertex {}", a)));
                }
                if a >= b {
                    return Err(GraphError::Parse(
                        lno,
                        format!("edge {} {} not in u < v order", a, b),
                    ));
                }
                if b >= n {
                    return Err(GraphError::Parse(
                        lno,
                        format!("vertex {} out of range (n = {})", b, n),
                    ));
                }
                if g.has_edge(a, b) {
                    return Err(GraphError::Parse(lno, format!("duplicate edge {} {}", a, b)));
                }
                g.add_edge(a, b).unwrap();
                edges_seen += 1;
            }
        }
    }
    match header {
        None => Err(GraphError::Parse(0, "missing header line".into())),
        Some((_, m)) if edges_seen != m => Err(GraphError::Parse(
            0,
            format!("header declares {} edges, found {}", m, edges_seen),
        )),
        Some(_) => Ok(g),
    }
}

/// Serializes to the edge-list format with LF line endings.
pub fn serialize_graph(g: &Graph) -> String {
    let mut out = String::new();
    writeln!(out, "{} {}", g.n(), g.num_edges()).unwrap();
    for (u, v) in g.edges() {
        writeln!(out, "{} {}", u, v).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rel_on_c4() {
        let c4 = cycle(4);
        assert_eq!(c4.rel(0, 0).unwrap(), RelKind::Equal);
        assert_eq!(c4.rel(0, 1).unwrap(), RelKind::Adjacent);
        assert_eq!(c4.rel(0, 2).unwrap(), RelKind::DistinctNonAdjacent);
        assert!(c4.rel(0, 4).is_err());
    }

    #[test]
    fn complement_cases() {
        assert_eq!(complete(3).complement(), Graph::empty(3));
        let c5 = cycle(5);
        // C5 is self-complementary up to relabeling
        let f = exact_isomorphism(&c5, &c5.complement()).expect("C5 self-complementary");
        assert!(is_isomorphism(&c5, &c5.complement(), &f));
    }

    #[test]
    fn complement_involution_random() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let n = rng.gen_range(1..=8);
            let mut g = Graph::empty(n);
            for u in 0..n {
                for v in (u + 1)..n {
                    if rng.gen_bool(0.5) {
                        g.add_edge(u, v).unwrap();
                    }
                }
            }
            assert_eq!(g.complement().complement(), g);
        }
    }

    #[test]
    fn cartesian_product_cases() {
        let r = cartesian_product(&complete(4), &complete(4));
        assert_eq!(r.n(), 16);
        assert!((0..16).all(|v| r.degree(v) == 6));
        let c4 = cartesian_product(&complete(2), &complete(2));
        assert!(exact_isomorphism(&c4, &cycle(4)).is_some());
        let h = cycle(5);
        let unit = cartesian_product(&complete(1), &h);
        assert_eq!(unit, h);
    }

    #[test]
    fn isomorphism_product_cases() {
        let p = isomorphism_product(&complete(2), &complete(2));
        assert!(exact_isomorphism(&p, &cycle(4)).is_some());
        // edges exactly at rel mismatches, brute-force
        for (u, v) in [(0usize, 1usize), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)] {
            let (g1, h1) = (u / 2, u % 2);
            let (g2, h2) = (v / 2, v % 2);
            let k2 = complete(2);
            let mismatch = k2.rel(g1, g2).unwrap() != k2.rel(h1, h2).unwrap();
            assert_eq!(p.has_edge(u, v), mismatch);
        }
        let k1 = complete(1);
        assert_eq!(isomorphism_product(&k1, &k1).n(), 1);
    }

    #[test]
    fn product_commutes_up_to_swap() {
        let g = path(3);
        let h = cycle(4);
        let gh = isomorphism_product(&g, &h);
        let hg = isomorphism_product(&h, &g);
        // coordinate swap is an isomorphism
        let mut perm = vec![0usize; 12];
        for a in 0..3 {
            for b in 0..4 {
                perm[a * 4 + b] = b * 3 + a;
            }
        }
        assert!(is_isomorphism(&gh, &hg, &perm));
    }

    #[test]
    fn distance_matrices_cases() {
        let mats = distance_matrices(&complete(3));
        assert_eq!(mats.len(), 2);
        assert_eq!(mats[0], IMat::identity(3));
        let c5 = cycle(5);
        let m = distance_matrices(&c5);
        assert_eq!(m.len(), 3);
        assert_eq!(m[1], c5.adjacency());
        // partition property: sum = J
        let mut total = IMat::zeros(5, 5);
        for x in &m {
            total = total.add(x);
        }
        assert_eq!(total, IMat::ones(5, 5));
        // Schur orthogonality
        for i in 0..m.len() {
            for j in 0..m.len() {
                let s = m[i].schur(&m[j]);
                if i == j {
                    assert_eq!(s, m[i]);
                } else {
                    assert_eq!(s, IMat::zeros(5, 5));
                }
            }
        }
    }

    #[test]
    fn named_graphs() {
        let q4 = named_graph("q4", &[]).unwrap();
        assert_eq!((q4.n(), q4.num_edges()), (16, 32));
        assert!((0..16).all(|v| q4.degree(v) == 4));
        let sh = named_graph("shrikhande", &[]).unwrap();
        assert_eq!((sh.n(), sh.num_edges()), (16, 48));
        assert!((0..16).all(|v| sh.degree(v) == 6));
        let hof = named_graph("hoffman", &[]).unwrap();
        assert_eq!((hof.n(), hof.num_edges()), (16, 32));
        assert!(hof.is_connected());
        let dp = named_graph("dist_power", &[10, 1, 2]).unwrap();
        assert!((0..10).all(|v| dp.degree(v) == 4));
        assert!(named_graph("bogus", &[]).is_err());
        assert!(named_graph("cycle", &[]).is_err());
    }

    #[test]
    fn shrikhande_is_srg_16_6_2_2() {
        let g = shrikhande();
        for u in 0..16 {
            for v in (u + 1)..16 {
                let common = (0..16)
                    .filter(|&w| g.has_edge(u, w) && g.has_edge(v, w))
                    .count();
                assert_eq!(common, 2);
            }
        }
    }

    #[test]
    fn exact_isomorphism_cases() {
        let c6 = cycle(6);
        assert_eq!(exact_isomorphism(&c6, &c6).unwrap(), vec![0, 1, 2, 3, 4, 5]);
        let perm = [2usize, 4, 0, 5, 1, 3];
        let relabeled = c6.relabel(&perm);
        let f = exact_isomorphism(&c6, &relabeled).unwrap();
        assert!(is_isomorphism(&c6, &relabeled, &f));
        assert!(exact_isomorphism(&hypercube4(), &hoffman()).is_none());
    }

    #[test]
    fn clique_cases() {
        assert!(contains_clique(&rook4(), 4));
        assert!(!contains_clique(&shrikhande(), 4));
        assert!(contains_clique(&complete(5), 5));
        assert!(!contains_clique(&cycle(5), 3));
    }

    #[test]
    fn parse_and_serialize() {
        let g = parse_graph("3 2\n0 1\n1 2\n").unwrap();
        assert_eq!(g, path(3));
        assert!(matches!(
            parse_graph("2 1\n0 0"),
            Err(GraphError::Parse(2, _))
        ));
        assert!(parse_graph("2 2\n0 1\n0 1").is_err());
        assert!(parse_graph("2 1\n0 5").is_err());
        // round trip over named corpus
        for name in ["q4", "hoffman", "shrikhande", "rook4"] {
            let g = named_graph(name, &[]).unwrap();
            let text = serialize_graph(&g);
            assert_eq!(parse_graph(&text).unwrap(), g);
        }
        // comments tolerated
        let g = parse_graph("# comment\n3 1 # trailing\n0 2\n").unwrap();
        assert_eq!(g.num_edges(), 1);
    }

    #[test]
    fn independence_number_c5() {
        assert_eq!(independence_number(&cycle(5)), 2);
        assert_eq!(independence_number(&Graph::empty(5)), 5);
        assert_eq!(independence_number(&complete(5)), 1);
    }
}
