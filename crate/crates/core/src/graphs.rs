//! Simple graphs underlying maps, and recognition of `K_{m[n]}`.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::maps::AlgebraicMap;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("the map has a loop at vertex {0}")]
    Loop(usize),
    #[error("the map has {darts} darts but only {edges} distinct edges; the graph is not simple")]
    MultipleEdges { darts: usize, edges: usize },
}

/// A simple graph: vertices `0..n` and edges `(u, v)` with `u < v`, sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Loops are dropped and duplicates merged.
    pub fn new(vertex_count: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let set: BTreeSet<(usize, usize)> = edges
            .into_iter()
            .filter(|(u, v)| u != v)
            .map(|(u, v)| (u.min(v), u.max(v)))
            .inspect(|&(_, v)| assert!(v < vertex_count, "edge endpoint out of range"))
            .collect();
        Graph {
            vertex_count,
            edges: set.into_iter().collect(),
        }
    }

    /// `K_{m[n]}` with part `i` holding vertices `i n .. (i+1) n`.
    pub fn complete_multipartite(m: usize, n: usize) -> Self {
        let total = m * n;
        let edges = (0..total)
            .flat_map(|u| (u + 1..total).map(move |v| (u, v)))
            .filter(|&(u, v)| u / n != v / n);
        Graph::new(total, edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges
            .binary_search(&(u.min(v), u.max(v)))
            .is_ok()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertex_count];
        for &(u, v) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    /// Regular degree, if every vertex has the same one.
    pub fn regular_degree(&self) -> Option<usize> {
        let deg = self.degrees();
        let first = *deg.first()?;
        deg.iter().all(|&d| d == first).then_some(first)
    }

    /// One `u v` pair per line.
    pub fn edge_list_text(&self) -> String {
        let mut out = String::new();
        for (u, v) in &self.edges {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }
}

/// Vertices are `<a>`-cosets; each dart `g` joins `<a> g` to `<a> b g`.
pub fn underlying_graph(map: &AlgebraicMap) -> Result<Graph, GraphError> {
    let vertex = map.vertex_of_darts();
    let rev = map.left_action(map.b());
    let nv = vertex.iter().max().map_or(0, |&v| v + 1);
    let mut edges = BTreeSet::new();
    for (d, &u) in vertex.iter().enumerate() {
        let v = vertex[rev[d]];
        if u == v {
            return Err(GraphError::Loop(u));
        }
        edges.insert((u.min(v), u.max(v)));
    }
    if 2 * edges.len() != vertex.len() {
        return Err(GraphError::MultipleEdges {
            darts: vertex.len(),
            edges: edges.len(),
        });
    }
    Ok(Graph {
        vertex_count: nv,
        edges: edges.into_iter().collect(),
    })
}

/// Connected components of the complement, each a sorted vertex list,
/// ordered by least vertex.
fn complement_components(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.vertex_count;
    let mut comp = vec![usize::MAX; n];
    let mut out: Vec<Vec<usize>> = Vec::new();
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        let id = out.len();
        comp[s] = id;
        let mut members = vec![s];
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for (v, c) in comp.iter_mut().enumerate() {
                if v != u && *c == usize::MAX && !g.has_edge(u, v) {
                    *c = id;
                    members.push(v);
                    stack.push(v);
                }
            }
        }
        members.sort_unstable();
        out.push(members);
    }
    out
}

/// Sorted part sizes when `g` is complete multipartite (its complement is
/// a disjoint union of cliques).
pub fn multipartite_parts(g: &Graph) -> Option<Vec<usize>> {
    if g.vertex_count == 0 {
        return None;
    }
    let comps = complement_components(g);
    let independent = comps.iter().all(|c| {
        c.iter()
            .enumerate()
            .all(|(i, &u)| c[i + 1..].iter().all(|&v| !g.has_edge(u, v)))
    });
    if !independent {
        return None;
    }
    let mut sizes: Vec<usize> = comps.iter().map(Vec::len).collect();
    sizes.sort_unstable();
    Some(sizes)
}

/// `(m, n)` when `g` is `K_{m[n]}`.
pub fn complete_multipartite_shape(g: &Graph) -> Option<(usize, usize)> {
    let parts = multipartite_parts(g)?;
    let n = parts[0];
    parts.iter().all(|&s| s == n).then_some((parts.len(), n))
}

/// DOT text; vertices carry their part index when the graph is `K_{m[n]}`.
pub fn to_dot(g: &Graph) -> String {
    let mut out = String::from("graph G {\n");
    let part_of: Option<Vec<usize>> = complete_multipartite_shape(g).map(|_| {
        let mut part = vec![0; g.vertex_count];
        for (i, c) in complement_components(g).iter().enumerate() {
            for &v in c {
                part[v] = i;
            }
        }
        part
    });
    for v in 0..g.vertex_count {
        match &part_of {
            Some(part) => {
                let _ = writeln!(out, "  {v} [part={}];", part[v]);
            }
            None => {
                let _ = writeln!(out, "  {v};");
            }
        }
    }
    for (u, v) in &g.edges {
        let _ = writeln!(out, "  {u} -- {v};");
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{build_group, validate_params, RawParams};

    fn octahedron() -> Graph {
        Graph::complete_multipartite(3, 2)
    }

    #[test]
    fn shapes() {
        assert_eq!(complete_multipartite_shape(&octahedron()), Some((3, 2)));
        assert_eq!(
            complete_multipartite_shape(&Graph::complete_multipartite(4, 1)),
            Some((4, 1))
        );
        let path = Graph::new(3, [(0, 1), (1, 2)]);
        assert_eq!(complete_multipartite_shape(&path), None);
        assert_eq!(multipartite_parts(&path), Some(vec![1, 2]));
        let c5 = Graph::new(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]);
        assert_eq!(multipartite_parts(&c5), None);
    }

    #[test]
    fn shape_round_trip() {
        for m in 2..=6 {
            for n in 2..=6 {
                let g = Graph::complete_multipartite(m, n);
                assert_eq!(g.edge_count(), m * (m - 1) * n * n / 2);
                assert_eq!(complete_multipartite_shape(&g), Some((m, n)));
            }
        }
    }

    #[test]
    fn dot_output() {
        let k4 = Graph::complete_multipartite(4, 1);
        let dot = to_dot(&k4);
        assert_eq!(dot.lines().filter(|l| l.contains("--")).count(), 6);
        assert!(dot.contains("  0 -- 1;\n  0 -- 2;\n  0 -- 3;\n  1 -- 2;"));
        let oct = to_dot(&octahedron());
        assert_eq!(oct.lines().filter(|l| l.contains("part=")).count(), 6);
        assert_eq!(oct.lines().filter(|l| l.contains("--")).count(), 12);
        assert_eq!(to_dot(&Graph::new(0, [])), "graph G {\n}\n");
    }

    #[test]
    fn edge_list_sorted() {
        let g = Graph::new(3, [(2, 1), (1, 0), (0, 1)]);
        assert_eq!(g.edge_list_text(), "0 1\n1 2\n");
    }

    fn graph_of(json: &str) -> Graph {
        let p = validate_params(&RawParams::from_json(json).unwrap()).unwrap();
        let map = AlgebraicMap::from_family(&build_group(&p).unwrap()).unwrap();
        underlying_graph(&map).unwrap()
    }

    #[test]
    fn family_graphs() {
        let g = graph_of(r#"{"family":"M4","m":3,"n":2}"#);
        assert_eq!((g.vertex_count(), g.edge_count()), (6, 12));
        assert_eq!(complete_multipartite_shape(&g), Some((3, 2)));
        let g = graph_of(r#"{"family":"M3","n":3}"#);
        assert_eq!((g.vertex_count(), g.edge_count()), (9, 27));
        assert_eq!(complete_multipartite_shape(&g), Some((3, 3)));
        let g = graph_of(r#"{"family":"M1","p":5,"e":1}"#);
        assert_eq!((g.vertex_count(), g.edge_count()), (25, 250));
        assert_eq!(g.regular_degree(), Some(20));
        assert_eq!(complete_multipartite_shape(&g), Some((5, 5)));
    }
}
