//! Piecewise-polynomial equivariant Chow classes on a fixed-point graph:
//! GKM membership, the pointwise ring structure, and the localized Poincaré
//! pairing (the fixed-point sum of value products over Euler classes).

mod rank;

pub use rank::{
    certify_torsion_free, chow_ranks, chow_ranks_full, gkm_constraint_matrix,
    graded_gkm_rank, monomial_count, GradedRankTable, TorsionCertificate,
};

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::graph::{GkmGraph, Variety, Vertex};
use crate::poly::{div_exact_root, divides, Polynomial};

/// A homogeneous equivariant class: one polynomial per fixed point, every
/// value homogeneous of the stated degree (zero allowed anywhere).
#[derive(Debug, Clone)]
pub struct EquivariantClass {
    graph: Arc<GkmGraph>,
    degree: u32,
    values: Vec<Polynomial>,
}

impl PartialEq for EquivariantClass {
    fn eq(&self, other: &Self) -> bool {
        self.graph.n() == other.graph.n()
            && self.graph.variety() == other.graph.variety()
            && self.degree == other.degree
            && self.values == other.values
    }
}

impl Eq for EquivariantClass {}

impl EquivariantClass {
    pub fn new(graph: Arc<GkmGraph>, degree: u32, values: Vec<Polynomial>) -> Result<Self> {
        if values.len() != graph.vertices().len() {
            return Err(Error::invalid(format!(
                "expected {} vertex values, got {}",
                graph.vertices().len(),
                values.len()
            )));
        }
        for (v, p) in graph.vertices().iter().zip(&values) {
            if p.nvars() != graph.n() {
                return Err(Error::invalid(format!(
                    "value at {v} has {} variables, expected {}",
                    p.nvars(),
                    graph.n()
                )));
            }
            if !p.is_homogeneous(degree) {
                return Err(Error::invalid(format!(
                    "value at {v} is not homogeneous of degree {degree}"
                )));
            }
        }
        Ok(EquivariantClass {
            graph,
            degree,
            values,
        })
    }

    pub fn zero(graph: Arc<GkmGraph>, degree: u32) -> Self {
        let values = vec![Polynomial::zero(graph.n()); graph.vertices().len()];
        EquivariantClass {
            graph,
            degree,
            values,
        }
    }

    /// The constant class 1 in degree 0.
    pub fn one(graph: Arc<GkmGraph>) -> Self {
        let values = vec![Polynomial::one(graph.n()); graph.vertices().len()];
        EquivariantClass {
            graph,
            degree: 0,
            values,
        }
    }

    pub fn graph(&self) -> &Arc<GkmGraph> {
        &self.graph
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn values(&self) -> &[Polynomial] {
        &self.values
    }

    pub fn value_at(&self, v: Vertex) -> Result<&Polynomial> {
        Ok(&self.values[self.graph.vertex_index(v)?])
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|p| p.is_zero())
    }

    /// Support: vertices with non-zero value.
    pub fn support(&self) -> Vec<Vertex> {
        self.graph
            .vertices()
            .iter()
            .zip(&self.values)
            .filter(|(_, p)| !p.is_zero())
            .map(|(&v, _)| v)
            .collect()
    }

    fn check_same_graph(&self, other: &Self) -> Result<()> {
        if self.graph.n() != other.graph.n()
            || self.graph.variety() != other.graph.variety()
        {
            return Err(Error::invalid("classes live on different graphs"));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_graph(other)?;
        if self.degree != other.degree {
            return Err(Error::invalid(format!(
                "cannot add classes of degrees {} and {}",
                self.degree, other.degree
            )));
        }
        Ok(EquivariantClass {
            graph: self.graph.clone(),
            degree: self.degree,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&BigInt::from(-1)))
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        EquivariantClass {
            graph: self.graph.clone(),
            degree: self.degree,
            values: self.values.iter().map(|p| p.scale(k)).collect(),
        }
    }

    /// Vertex-wise product; degrees add.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_same_graph(other)?;
        Ok(EquivariantClass {
            graph: self.graph.clone(),
            degree: self.degree + other.degree,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a * b)
                .collect(),
        })
    }

    /// Multiplies every vertex value by a fixed polynomial (an element of the
    /// coefficient ring Sym T*), homogeneous of degree `d`.
    pub fn scale_poly(&self, p: &Polynomial, d: u32) -> Result<Self> {
        if !p.is_homogeneous(d) {
            return Err(Error::invalid("scaling polynomial has wrong degree"));
        }
        Ok(EquivariantClass {
            graph: self.graph.clone(),
            degree: self.degree + d,
            values: self.values.iter().map(|v| v * p).collect(),
        })
    }

    /// Reinterprets the same vertex values on another graph with the same n
    /// (the fixed-point sets of X and Y coincide).
    pub fn transfer(&self, graph: &Arc<GkmGraph>) -> Result<Self> {
        if graph.n() != self.graph.n() {
            return Err(Error::invalid("transfer requires matching degree n"));
        }
        EquivariantClass::new(graph.clone(), self.degree, self.values.clone())
    }

    /// Edge indices on which the GKM divisibility condition fails.
    pub fn gkm_violations(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (idx, e) in self.graph.edges().iter().enumerate() {
            let a = &self.values[self.graph.vertex_index(e.first).unwrap()];
            let b = &self.values[self.graph.vertex_index(e.second).unwrap()];
            let diff = a - b;
            if !divides(&e.weight, &diff).expect("edge weights are primitive") {
                out.push(idx);
            }
        }
        out
    }

    pub fn is_gkm(&self) -> bool {
        self.gkm_violations().is_empty()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "schema_version": crate::graph::JSON_SCHEMA_VERSION,
            "n": self.graph.n(),
            "variety": self.graph.variety(),
            "degree": self.degree,
            "values": self.graph.vertices().iter().zip(&self.values)
                .map(|(v, p)| (format!("{}{}", v.i, v.j), p.to_string()))
                .collect::<std::collections::BTreeMap<String, String>>(),
        })
    }
}

impl fmt::Display for EquivariantClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "degree-{} class on {}({})",
            self.degree,
            self.graph.variety(),
            self.graph.n()
        )?;
        for (v, p) in self.graph.vertices().iter().zip(&self.values) {
            if !p.is_zero() {
                writeln!(f, "  {v}: {p}")?;
            }
        }
        Ok(())
    }
}

/// Localization engine for a fixed graph: caches, per vertex, the sign and
/// complementary cofactor of the Euler class against the full product of
/// positive roots, so each pairing is one polynomial sum plus exact division.
#[derive(Debug)]
pub struct Localizer {
    graph: Arc<GkmGraph>,
    /// all pairs (a, b), a < b, defining the canonical forms t_a − t_b
    pairs: Vec<(usize, usize)>,
    /// per vertex: sign of the Euler class against canonical orientations
    signs: Vec<i8>,
    /// per vertex: product of the canonical forms NOT dividing the Euler class
    cofactors: Vec<Polynomial>,
}

impl Localizer {
    pub fn new(graph: &Arc<GkmGraph>) -> Self {
        let n = graph.n();
        let pairs: Vec<(usize, usize)> = (1..=n)
            .flat_map(|a| ((a + 1)..=n).map(move |b| (a, b)))
            .collect();
        let pair_index = |a: usize, b: usize| -> usize {
            pairs
                .binary_search(&(a.min(b), a.max(b)))
                .expect("pair exists")
        };
        let canonical: Vec<Polynomial> = pairs
            .iter()
            .map(|&(a, b)| crate::poly::LinearForm::root(n, a, b).to_polynomial())
            .collect();

        let mut signs = Vec::with_capacity(graph.vertices().len());
        let mut cofactors = Vec::with_capacity(graph.vertices().len());
        for &v in graph.vertices() {
            let mut sign = 1i8;
            let mut used = vec![false; pairs.len()];
            for e in graph.incident_edges(v).unwrap() {
                let w = e.weight_at(v);
                let (i, j) = w.as_root().expect("edge weights are root forms");
                if i > j {
                    sign = -sign;
                }
                let idx = pair_index(i, j);
                debug_assert!(!used[idx], "repeated tangent weight at {v}");
                used[idx] = true;
            }
            let mut cof = Polynomial::one(n);
            for (idx, poly) in canonical.iter().enumerate() {
                if !used[idx] {
                    cof = &cof * poly;
                }
            }
            signs.push(sign);
            cofactors.push(cof);
        }
        Localizer {
            graph: graph.clone(),
            pairs,
            signs,
            cofactors,
        }
    }

    pub fn graph(&self) -> &Arc<GkmGraph> {
        &self.graph
    }

    /// The localized Poincaré pairing Σ_v c1(v)·c2(v)/e(v), returned as a
    /// polynomial. A non-polynomial sum is an integrality violation.
    pub fn pairing(
        &self,
        c1: &EquivariantClass,
        c2: &EquivariantClass,
    ) -> Result<Polynomial> {
        let g = &self.graph;
        if c1.graph.n() != g.n()
            || c1.graph.variety() != g.variety()
            || c2.graph.n() != g.n()
            || c2.graph.variety() != g.variety()
        {
            return Err(Error::invalid("pairing requires classes on this graph"));
        }
        let n = g.n();
        let mut num = Polynomial::zero(n);
        for idx in 0..g.vertices().len() {
            let a = &c1.values[idx];
            if a.is_zero() {
                continue;
            }
            let b = &c2.values[idx];
            if b.is_zero() {
                continue;
            }
            let mut term = &(a * b) * &self.cofactors[idx];
            if self.signs[idx] < 0 {
                term = -&term;
            }
            num = &num + &term;
        }
        for &(a, b) in &self.pairs {
            match div_exact_root(&num, a, b) {
                Some(q) => num = q,
                None => {
                    return Err(Error::IntegralityViolation(format!(
                        "pairing sum is not divisible by t{a} - t{b}"
                    )))
                }
            }
        }
        // degree bookkeeping: non-zero results are homogeneous of
        // deg c1 + deg c2 − dim
        if !num.is_zero() {
            let expected = (c1.degree + c2.degree) as i64 - g.dim() as i64;
            if expected < 0 || !num.is_homogeneous(expected as u32) {
                return Err(Error::IntegralityViolation(
                    "pairing result has wrong degree".into(),
                ));
            }
        }
        Ok(num)
    }

    /// Pairing in complementary degrees, where the result is an integer.
    pub fn pairing_integer(
        &self,
        c1: &EquivariantClass,
        c2: &EquivariantClass,
    ) -> Result<BigInt> {
        if (c1.degree + c2.degree) as usize != self.graph.dim() {
            return Err(Error::invalid(
                "integer pairing requires complementary degrees",
            ));
        }
        let p = self.pairing(c1, c2)?;
        p.as_integer().ok_or_else(|| {
            Error::IntegralityViolation("degree-0 pairing is not constant".into())
        })
    }
}

/// Convenience: the integer pairing when both classes already live on the
/// same graph and degrees are complementary.
pub fn pairing_integer(c1: &EquivariantClass, c2: &EquivariantClass) -> Result<BigInt> {
    Localizer::new(c1.graph()).pairing_integer(c1, c2)
}

/// The variety a graph models, re-exported for signature clarity.
pub fn variety_of(c: &EquivariantClass) -> Variety {
    c.graph().variety()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{GkmGraph, Variety, Vertex};
    use crate::poly::{Polynomial, RationalFunction};

    /// Reference pairing through generic reduced rational arithmetic.
    fn pairing_rational_route(
        c1: &EquivariantClass,
        c2: &EquivariantClass,
    ) -> Option<Polynomial> {
        let g = c1.graph();
        let mut acc = RationalFunction::zero(g.n());
        for &v in g.vertices() {
            let a = c1.value_at(v).unwrap();
            let b = c2.value_at(v).unwrap();
            if a.is_zero() || b.is_zero() {
                continue;
            }
            let term =
                RationalFunction::new(a * b, g.euler_class(v).unwrap()).unwrap();
            acc = &acc + &term;
        }
        acc.as_polynomial().cloned()
    }

    #[test]
    fn constant_class_is_gkm() {
        for variety in [Variety::X, Variety::Y] {
            let g = GkmGraph::build(4, variety).unwrap();
            assert!(EquivariantClass::one(g).is_gkm());
        }
    }

    #[test]
    fn point_class_violates_named_edges() {
        // value t_1 at [12], 0 elsewhere, on the n=3 Y graph
        let g = GkmGraph::build(3, Variety::Y).unwrap();
        let mut values = vec![Polynomial::zero(3); 6];
        values[g.vertex_index(Vertex::new(1, 2)).unwrap()] = Polynomial::variable(3, 1);
        let c = EquivariantClass::new(g.clone(), 1, values).unwrap();
        let violations = c.gkm_violations();
        assert!(!violations.is_empty());
        // the edge [12]—[13] (weight α_32) is among them: α_32 ∤ t_1
        let bad = violations
            .iter()
            .map(|&i| &g.edges()[i])
            .any(|e| e.first == Vertex::new(1, 2) && e.second == Vertex::new(1, 3));
        assert!(bad);
    }

    #[test]
    fn rejects_inhomogeneous_values() {
        let g = GkmGraph::build(3, Variety::Y).unwrap();
        let mut values = vec![Polynomial::zero(3); 6];
        values[0] = &Polynomial::variable(3, 1) + &Polynomial::one(3);
        assert!(EquivariantClass::new(g, 1, values).is_err());
    }

    #[test]
    fn pairing_of_complementary_ones_vanishes_below_dim() {
        // deg 0 + deg 0 < dim: pairing must be 0
        let g = GkmGraph::build(3, Variety::Y).unwrap();
        let loc = Localizer::new(&g);
        let one = EquivariantClass::one(g.clone());
        let p = loc.pairing(&one, &one).unwrap();
        assert!(p.is_zero());
    }

    #[test]
    fn pairing_matches_rational_route() {
        // a hand-built GKM class on the n=3 hexagon: the lift (t_i − t_1)
        let g = GkmGraph::build(3, Variety::Y).unwrap();
        let n = 3;
        let values: Vec<Polynomial> = g
            .vertices()
            .iter()
            .map(|v| {
                &Polynomial::variable(n, v.i) - &Polynomial::variable(n, 1)
            })
            .collect();
        let h = EquivariantClass::new(g.clone(), 1, values).unwrap();
        assert!(h.is_gkm());
        let loc = Localizer::new(&g);
        let fast = loc.pairing(&h, &h).unwrap();
        let slow = pairing_rational_route(&h, &h).unwrap();
        assert_eq!(fast, slow);
        // ⟨h', h'⟩ on the del Pezzo hexagon is the constant 1
        assert_eq!(fast, Polynomial::one(3));
    }

    #[test]
    fn pairing_rejects_non_gkm_garbage() {
        let g = GkmGraph::build(3, Variety::Y).unwrap();
        let loc = Localizer::new(&g);
        let mut values = vec![Polynomial::zero(3); 6];
        values[0] = Polynomial::variable(3, 1).pow(2);
        let junk = EquivariantClass::new(g.clone(), 2, values).unwrap();
        assert!(matches!(
            loc.pairing(&junk, &junk),
            Err(Error::IntegralityViolation(_))
        ));
    }

    #[test]
    fn ring_operations_respect_degrees() {
        let g = GkmGraph::build(3, Variety::Y).unwrap();
        let one = EquivariantClass::one(g.clone());
        let c = one.scale(&3.into());
        assert_eq!(one.multiply(&c).unwrap(), c);
        assert!(one.add(&c).is_ok());
        let x_one = EquivariantClass::one(GkmGraph::build(3, Variety::X).unwrap());
        assert!(one.add(&x_one).is_err());
        let deg1 = EquivariantClass::zero(g.clone(), 1);
        assert!(one.add(&deg1).is_err());
        assert_eq!(one.multiply(&deg1).unwrap().degree(), 1);
        assert!(one.sub(&one).unwrap().is_zero());
    }

    #[test]
    fn euler_class_pairing_is_one_at_a_point() {
        // <pt, 1> = 1: the class supported at a single vertex with value the
        // Euler class pairs integrally with 1
        for variety in [Variety::X, Variety::Y] {
            let g = GkmGraph::build(4, variety).unwrap();
            let loc = Localizer::new(&g);
            let v0 = g.vertices()[5];
            let mut values = vec![Polynomial::zero(4); g.vertices().len()];
            values[g.vertex_index(v0).unwrap()] = g.euler_class(v0).unwrap();
            let pt = EquivariantClass::new(g.clone(), g.dim() as u32, values).unwrap();
            let one = EquivariantClass::one(g.clone());
            assert_eq!(
                loc.pairing_integer(&pt, &one).unwrap(),
                num_bigint::BigInt::from(1)
            );
        }
    }
}
