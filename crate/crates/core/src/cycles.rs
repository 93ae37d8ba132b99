//! The explicit equivariant cycles of the middle-degree story — the gamma
//! classes supported on single line-index stars, the degree-one lifts of the
//! two hyperplane classes — and the monodromy action on piecewise
//! polynomials.

use std::sync::Arc;


use crate::equivariant::EquivariantClass;
use crate::error::{Error, Result};
use crate::graph::{GkmGraph, Variety};
use crate::perm::Perm;
use crate::poly::{LinearForm, Polynomial};

/// An element of the monodromy group: a permutation constrained to the
/// cyclic subgroup generated by the long cycle η = (1 2 ... n).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonodromyElement {
    sigma: Perm,
}

impl MonodromyElement {
    /// η^k for the long cycle η.
    pub fn power_of_cycle(n: usize, k: usize) -> Result<Self> {
        if k >= n {
            return Err(Error::invalid(format!("exponent {k} out of range 0..{n}")));
        }
        Ok(MonodromyElement {
            sigma: Perm::long_cycle(n).pow(k),
        })
    }

    /// Accepts a permutation only if it lies in ⟨η⟩.
    pub fn from_perm(sigma: Perm) -> Result<Self> {
        let n = sigma.n();
        for k in 0..n {
            if Perm::long_cycle(n).pow(k) == sigma {
                return Ok(MonodromyElement { sigma });
            }
        }
        Err(Error::invalid(
            "permutation is not a power of the long cycle",
        ))
    }

    pub fn identity(n: usize) -> Self {
        MonodromyElement {
            sigma: Perm::identity(n),
        }
    }

    pub fn perm(&self) -> &Perm {
        &self.sigma
    }

    pub fn compose(&self, other: &MonodromyElement) -> MonodromyElement {
        MonodromyElement {
            sigma: self.sigma.then(&other.sigma),
        }
    }
}

/// The gamma class γ_ℓ on the Y graph: value δ_{i,ℓ}·∏_{s≠i,j} α_{is} at
/// [ij], homogeneous of degree n − 2, supported on the n − 1 vertices [ℓj].
pub fn gamma(graph: &Arc<GkmGraph>, ell: usize) -> Result<EquivariantClass> {
    let n = graph.n();
    if graph.variety() != Variety::Y {
        return Err(Error::invalid("gamma classes live on the Y graph"));
    }
    if ell < 1 || ell > n {
        return Err(Error::invalid(format!("index {ell} out of range 1..={n}")));
    }
    let values = graph
        .vertices()
        .iter()
        .map(|v| {
            if v.i != ell {
                return Polynomial::zero(n);
            }
            let mut p = Polynomial::one(n);
            for s in 1..=n {
                if s != v.i && s != v.j {
                    p = &p * &LinearForm::root(n, v.i, s).to_polynomial();
                }
            }
            p
        })
        .collect();
    EquivariantClass::new(graph.clone(), (n - 2) as u32, values)
}

/// The lift (t_i − t_1)_{[ij]} of the hyperplane class pulled back from the
/// Severi–Brauer base; a degree-1 class on either graph.
pub fn lift_h(graph: &Arc<GkmGraph>) -> EquivariantClass {
    let n = graph.n();
    let values = graph
        .vertices()
        .iter()
        .map(|v| &Polynomial::variable(n, v.i) - &Polynomial::variable(n, 1))
        .collect();
    EquivariantClass::new(graph.clone(), 1, values).expect("values are homogeneous")
}

/// The lift (α_{ij})_{[ij]} of the first Chern class ξ of the relative O(1)
/// (the divisor class cutting the hyperplane section).
pub fn lift_xi(graph: &Arc<GkmGraph>) -> EquivariantClass {
    let n = graph.n();
    let values = graph
        .vertices()
        .iter()
        .map(|v| LinearForm::root(n, v.i, v.j).to_polynomial())
        .collect();
    EquivariantClass::new(graph.clone(), 1, values).expect("values are homogeneous")
}

/// The monodromy action on piecewise polynomials: the value of the image at
/// [ij] is σ applied to the source value at [σ⁻¹(i) σ⁻¹(j)]. A degree- and
/// GKM-preserving ring automorphism.
pub fn act(m: &MonodromyElement, c: &EquivariantClass) -> Result<EquivariantClass> {
    let graph = c.graph();
    let n = graph.n();
    if m.sigma.n() != n {
        return Err(Error::invalid("monodromy element has mismatched degree"));
    }
    let inv = m.sigma.inverse();
    let values = graph
        .vertices()
        .iter()
        .map(|v| {
            let src = crate::graph::Vertex::new(inv.apply(v.i), inv.apply(v.j));
            c.value_at(src).unwrap().permute(&m.sigma)
        })
        .collect();
    EquivariantClass::new(graph.clone(), c.degree(), values)
}

/// Convenience: h'^a · ξ'^b as a class on the given graph.
pub fn monomial_lift(graph: &Arc<GkmGraph>, a: u32, b: u32) -> EquivariantClass {
    let mut out = EquivariantClass::one(graph.clone());
    let h = lift_h(graph);
    let xi = lift_xi(graph);
    for _ in 0..a {
        out = out.multiply(&h).unwrap();
    }
    for _ in 0..b {
        out = out.multiply(&xi).unwrap();
    }
    out
}
