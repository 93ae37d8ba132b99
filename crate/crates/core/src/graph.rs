//! The fixed-point graph of the split variety: vertices [ij] (a line index
//! and a hyperplane index), edges for the torus-stable curve families, with
//! character weights. The full variety X carries root-conic edges on top of
//! the two plane-curve families; its hyperplane section Y carries the plane
//! curves only.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{LinearForm, Polynomial};

pub const JSON_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Variety {
    X,
    Y,
}

impl Variety {
    /// dim X = 2n−3, dim Y = 2n−4.
    pub fn dim(self, n: usize) -> usize {
        match self {
            Variety::X => 2 * n - 3,
            Variety::Y => 2 * n - 4,
        }
    }
}

impl fmt::Display for Variety {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Variety::X => write!(f, "X"),
            Variety::Y => write!(f, "Y"),
        }
    }
}

/// A fixed point [ij]: the line spanned by e_i inside the hyperplane
/// complementary to e_j (i ≠ j).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vertex {
    pub i: usize,
    pub j: usize,
}

impl Vertex {
    pub fn new(i: usize, j: usize) -> Self {
        assert!(i != j, "vertex indices must differ");
        Vertex { i, j }
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}{}]", self.i, self.j)
    }
}

/// The three torus-stable curve families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EdgeKind {
    /// [ij] — [ji], weight α_{ij} at [ij]; only on X.
    RootConic,
    /// [ij] — [ik], weight α_{kj} at [ij] (line fixed, hyperplane moves).
    PlaneII,
    /// [ij] — [kj], weight α_{ik} at [ij] (hyperplane fixed, line moves).
    PlaneIII,
}

impl fmt::Display for EdgeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EdgeKind::RootConic => write!(f, "root-conic"),
            EdgeKind::PlaneII => write!(f, "plane-ii"),
            EdgeKind::PlaneIII => write!(f, "plane-iii"),
        }
    }
}

/// An edge stored once, with the lexicographically smaller endpoint first and
/// the weight recorded at that endpoint. The weight at the second endpoint is
/// the negative.
#[derive(Debug, Clone)]
pub struct Edge {
    pub first: Vertex,
    pub second: Vertex,
    pub kind: EdgeKind,
    pub weight: LinearForm,
}

impl Edge {
    /// Weight oriented at the given endpoint.
    pub fn weight_at(&self, v: Vertex) -> LinearForm {
        if v == self.first {
            self.weight.clone()
        } else {
            debug_assert_eq!(v, self.second);
            self.weight.negated()
        }
    }

    pub fn other_end(&self, v: Vertex) -> Vertex {
        if v == self.first {
            self.second
        } else {
            debug_assert_eq!(v, self.second);
            self.first
        }
    }
}

/// The fixed-point graph: all n(n−1) vertices [ij] plus the permitted edge
/// kinds, in deterministic lexicographic order. Immutable after construction.
#[derive(Debug)]
pub struct GkmGraph {
    n: usize,
    variety: Variety,
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    incident: Vec<Vec<usize>>, // vertex index -> edge indices
}

impl GkmGraph {
    /// Builds the graph for the given degree and variety. Requires n ≥ 3.
    pub fn build(n: usize, variety: Variety) -> Result<Arc<GkmGraph>> {
        if n < 3 {
            return Err(Error::invalid(format!("degree n must be at least 3, got {n}")));
        }
        let mut vertices = Vec::with_capacity(n * (n - 1));
        for i in 1..=n {
            for j in 1..=n {
                if i != j {
                    vertices.push(Vertex::new(i, j));
                }
            }
        }
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));

        let mut edges = Vec::new();
        if variety == Variety::X {
            // root conics [ij] — [ji], canonical first endpoint has i < j
            for i in 1..=n {
                for j in i + 1..=n {
                    edges.push(Edge {
                        first: Vertex::new(i, j),
                        second: Vertex::new(j, i),
                        kind: EdgeKind::RootConic,
                        weight: LinearForm::root(n, i, j),
                    });
                }
            }
        }
        // plane family II: [ij] — [ik] for j < k, weight α_{kj} at [ij]
        for i in 1..=n {
            for j in 1..=n {
                for k in j + 1..=n {
                    if i == j || i == k {
                        continue;
                    }
                    edges.push(Edge {
                        first: Vertex::new(i, j),
                        second: Vertex::new(i, k),
                        kind: EdgeKind::PlaneII,
                        weight: LinearForm::root(n, k, j),
                    });
                }
            }
        }
        // plane family III: [ij] — [kj] for i < k, weight α_{ik} at [ij]
        for j in 1..=n {
            for i in 1..=n {
                for k in i + 1..=n {
                    if j == i || j == k {
                        continue;
                    }
                    edges.push(Edge {
                        first: Vertex::new(i, j),
                        second: Vertex::new(k, j),
                        kind: EdgeKind::PlaneIII,
                        weight: LinearForm::root(n, i, k),
                    });
                }
            }
        }
        edges.sort_by_key(|e| (e.first, e.second, e.kind as u8));

        let mut g = GkmGraph {
            n,
            variety,
            vertices,
            edges,
            incident: Vec::new(),
        };
        let mut incident = vec![Vec::new(); g.vertices.len()];
        for (idx, e) in g.edges.iter().enumerate() {
            incident[g.vertex_index(e.first).unwrap()].push(idx);
            incident[g.vertex_index(e.second).unwrap()].push(idx);
        }
        g.incident = incident;
        Ok(Arc::new(g))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn variety(&self) -> Variety {
        self.variety
    }

    pub fn dim(&self) -> usize {
        self.variety.dim(self.n)
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_index(&self, v: Vertex) -> Result<usize> {
        self.vertices
            .binary_search(&v)
            .map_err(|_| Error::invalid(format!("vertex {v} not in graph")))
    }

    pub fn incident_edges(&self, v: Vertex) -> Result<impl Iterator<Item = &Edge>> {
        let idx = self.vertex_index(v)?;
        Ok(self.incident[idx].iter().map(move |&e| &self.edges[e]))
    }

    pub fn valency(&self, v: Vertex) -> Result<usize> {
        Ok(self.incident[self.vertex_index(v)?].len())
    }

    /// The equivariant Euler class at a fixed point: the product of the
    /// tangent-direction weights read off the incident edges.
    pub fn euler_class(&self, v: Vertex) -> Result<Polynomial> {
        let mut out = Polynomial::one(self.n);
        for e in self.incident_edges(v)? {
            out = &out * &e.weight_at(v).to_polynomial();
        }
        Ok(out)
    }

    /// DOT export: vertices labelled "ij", edges labelled by kind and weight.
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "graph gkm_{}_{} {{\n",
            self.variety.to_string().to_lowercase(),
            self.n
        ));
        for v in &self.vertices {
            out.push_str(&format!("    v{}_{} [label=\"{}{}\"];\n", v.i, v.j, v.i, v.j));
        }
        for e in &self.edges {
            out.push_str(&format!(
                "    v{}_{} -- v{}_{} [label=\"{}: {}\"];\n",
                e.first.i, e.first.j, e.second.i, e.second.j, e.kind, e.weight
            ));
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "schema_version": JSON_SCHEMA_VERSION,
            "n": self.n,
            "variety": self.variety,
            "vertices": self.vertices.iter().map(|v| format!("{}{}", v.i, v.j)).collect::<Vec<_>>(),
            "edges": self.edges.iter().map(|e| serde_json::json!({
                "first": format!("{}{}", e.first.i, e.first.j),
                "second": format!("{}{}", e.second.i, e.second.j),
                "kind": e.kind,
                "weight": e.weight.to_polynomial().to_string(),
            })).collect::<Vec<_>>(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::divides;

    #[test]
    fn rejects_small_degree() {
        assert!(GkmGraph::build(2, Variety::Y).is_err());
    }

    #[test]
    fn counts_n3() {
        let y = GkmGraph::build(3, Variety::Y).unwrap();
        assert_eq!(y.vertices().len(), 6);
        assert_eq!(y.edges().len(), 6);
        for &v in y.vertices() {
            assert_eq!(y.valency(v).unwrap(), 2);
        }
        let x = GkmGraph::build(3, Variety::X).unwrap();
        assert_eq!(x.edges().len(), 9);
        for &v in x.vertices() {
            assert_eq!(x.valency(v).unwrap(), 3); // = dim X
        }
    }

    #[test]
    fn counts_n5() {
        let y = GkmGraph::build(5, Variety::Y).unwrap();
        assert_eq!(y.vertices().len(), 20);
        for &v in y.vertices() {
            assert_eq!(y.valency(v).unwrap(), 6); // 2(n−2)
        }
        let x = GkmGraph::build(5, Variety::X).unwrap();
        for &v in x.vertices() {
            assert_eq!(x.valency(v).unwrap(), 7); // dim X = 2n−3
        }
    }

    #[test]
    fn y_is_x_minus_root_conics() {
        for n in 3..=6 {
            let x = GkmGraph::build(n, Variety::X).unwrap();
            let y = GkmGraph::build(n, Variety::Y).unwrap();
            assert_eq!(x.vertices(), y.vertices());
            assert!(y.edges().iter().all(|e| e.kind != EdgeKind::RootConic));
            let x_plane: Vec<_> = x
                .edges()
                .iter()
                .filter(|e| e.kind != EdgeKind::RootConic)
                .map(|e| (e.first, e.second, e.kind))
                .collect();
            let y_all: Vec<_> = y
                .edges()
                .iter()
                .map(|e| (e.first, e.second, e.kind))
                .collect();
            assert_eq!(x_plane, y_all);
        }
    }

    #[test]
    fn euler_class_examples() {
        let n = 3;
        let y = GkmGraph::build(n, Variety::Y).unwrap();
        let a13 = LinearForm::root(n, 1, 3).to_polynomial();
        let a32 = LinearForm::root(n, 3, 2).to_polynomial();
        assert_eq!(y.euler_class(Vertex::new(1, 2)).unwrap(), &a13 * &a32);

        let x = GkmGraph::build(n, Variety::X).unwrap();
        let a12 = LinearForm::root(n, 1, 2).to_polynomial();
        assert_eq!(
            x.euler_class(Vertex::new(1, 2)).unwrap(),
            &(&a12 * &a13) * &a32
        );
        assert!(x.euler_class(Vertex::new(1, 9)).is_err());
    }

    #[test]
    fn euler_class_degree_is_dim() {
        for n in [3usize, 5] {
            for variety in [Variety::X, Variety::Y] {
                let g = GkmGraph::build(n, variety).unwrap();
                for &v in g.vertices() {
                    assert_eq!(
                        g.euler_class(v).unwrap().degree().unwrap() as usize,
                        g.dim()
                    );
                }
            }
        }
    }

    #[test]
    fn edge_weights_match_euler_multiset() {
        // at [ij] the incident weights are exactly {α_{is}} ∪ {α_{sj}} (+ α_{ij} on X)
        let n = 4;
        for variety in [Variety::X, Variety::Y] {
            let g = GkmGraph::build(n, variety).unwrap();
            for &v in g.vertices() {
                let mut weights: Vec<LinearForm> = g
                    .incident_edges(v)
                    .unwrap()
                    .map(|e| e.weight_at(v))
                    .collect();
                let mut expected: Vec<LinearForm> = Vec::new();
                for s in 1..=n {
                    if s != v.i && s != v.j {
                        expected.push(LinearForm::root(n, v.i, s));
                        expected.push(LinearForm::root(n, s, v.j));
                    }
                }
                if variety == Variety::X {
                    expected.push(LinearForm::root(n, v.i, v.j));
                }
                let key = |l: &LinearForm| l.coeffs().to_vec();
                weights.sort_by_key(key);
                expected.sort_by_key(key);
                assert_eq!(weights, expected);
            }
        }
    }

    #[test]
    fn weights_at_a_vertex_pairwise_non_proportional() {
        for n in 3..=5 {
            let g = GkmGraph::build(n, Variety::X).unwrap();
            for &v in g.vertices() {
                let ws: Vec<_> = g
                    .incident_edges(v)
                    .unwrap()
                    .map(|e| e.weight_at(v).to_polynomial())
                    .collect();
                for a in 0..ws.len() {
                    for b in a + 1..ws.len() {
                        // proportional ⟺ each divides the other; roots are primitive
                        let la = &ws[a];
                        let lb = &ws[b];
                        assert!(la.div_exact(lb).is_none() || lb.div_exact(la).is_none());
                    }
                }
            }
        }
    }

    #[test]
    fn antisymmetry_of_recorded_weights() {
        let g = GkmGraph::build(4, Variety::X).unwrap();
        for e in g.edges() {
            let w1 = e.weight_at(e.first);
            let w2 = e.weight_at(e.second);
            assert_eq!(w1.negated(), w2);
            // recorded weight divides the difference test used downstream
            assert!(divides(&w1, &w1.to_polynomial()).unwrap());
        }
    }

    #[test]
    fn dot_and_json_exports() {
        let g = GkmGraph::build(3, Variety::Y).unwrap();
        let dot = g.to_dot();
        assert!(dot.starts_with("graph gkm_y_3 {"));
        assert_eq!(dot.matches(" -- ").count(), 6);
        assert!(dot.contains("label=\"12\""));
        let js = g.to_json();
        assert_eq!(js["n"], 3);
        assert_eq!(js["vertices"].as_array().unwrap().len(), 6);
        assert_eq!(js["edges"].as_array().unwrap().len(), 6);
        assert_eq!(js["schema_version"], 1);
    }
}
