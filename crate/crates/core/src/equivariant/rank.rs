//! Graded ranks of the fixed-point (GKM) module and the nonequivariant Chow
//! ranks recovered from them by Hilbert-series deconvolution.
//!
//! The divisibility condition along an edge with weight t_a − t_b is linear
//! on coefficient vectors: a degree-d tuple satisfies it iff every monomial
//! coefficient of (φ_v − φ_w)|_{t_a := t_b} vanishes. Ranks are computed in
//! the normalization t_n := 0, so values live in a polynomial ring whose
//! dimension matches the torus rank n − 1.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{GkmGraph, Variety};
use crate::linalg::{smith_invariants, SparseIntMat};

/// Number of degree-d monomials in `vars` variables, C(d + vars − 1, vars − 1).
pub fn monomial_count(vars: usize, d: usize) -> usize {
    if vars == 0 {
        return usize::from(d == 0);
    }
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for k in 1..vars {
        num *= (d + k) as u128;
        den *= k as u128;
    }
    (num / den) as usize
}

/// All degree-d exponent vectors in `vars` variables, lexicographic order.
fn monomials_of_degree(vars: usize, d: usize) -> Vec<Vec<u16>> {
    fn rec(vars: usize, d: usize, prefix: &mut Vec<u16>, out: &mut Vec<Vec<u16>>) {
        if vars == 1 {
            prefix.push(d as u16);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=d).rev() {
            prefix.push(e as u16);
            rec(vars - 1, d - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::with_capacity(monomial_count(vars, d));
    if vars == 0 {
        if d == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(vars, d, &mut Vec::new(), &mut out);
    out
}

/// Assembles the degree-d divisibility conditions of `graph` as an integer
/// matrix on the per-vertex coefficient vectors (t_n := 0 normalization).
pub fn gkm_constraint_matrix(graph: &GkmGraph, d: usize) -> SparseIntMat {
    let n = graph.n();
    let vars = n - 1;
    let monos = monomials_of_degree(vars, d);
    let mono_index: HashMap<Vec<u16>, usize> = monos
        .iter()
        .enumerate()
        .map(|(i, m)| (m.clone(), i))
        .collect();
    let block = monos.len();
    let ncols = graph.vertices().len() * block;
    let mut mat = SparseIntMat::new(ncols);

    for e in graph.edges() {
        let vi = graph.vertex_index(e.first).unwrap();
        let wi = graph.vertex_index(e.second).unwrap();
        let (a, b) = e.weight.as_root().expect("edge weights are root forms");
        // rows of this edge, keyed by the substituted monomial
        let mut rows: HashMap<Vec<u16>, Vec<(u32, i64)>> = HashMap::new();
        for (mi, m) in monos.iter().enumerate() {
            let key = if a == n {
                // weight −t_b after t_n := 0: condition is vanishing at t_b = 0
                if m[b - 1] != 0 {
                    continue;
                }
                m.clone()
            } else if b == n {
                // weight t_a: vanishing at t_a = 0
                if m[a - 1] != 0 {
                    continue;
                }
                m.clone()
            } else {
                let mut k = m.clone();
                k[b - 1] += k[a - 1];
                k[a - 1] = 0;
                k
            };
            let row = rows.entry(key).or_default();
            row.push(((vi * block + mi) as u32, 1));
            row.push(((wi * block + mi) as u32, -1));
        }
        for (_, entries) in rows {
            mat.push_row(entries);
        }
    }
    debug_assert!(mono_index.len() == block);
    mat
}

/// Rank of the group of degree-d GKM tuples: the kernel rank of the
/// divisibility-condition matrix over ℚ.
pub fn graded_gkm_rank(graph: &GkmGraph, d: usize) -> usize {
    gkm_constraint_matrix(graph, d).kernel_rank()
}

/// Per-degree ranks: the GKM module ranks g_m and the nonequivariant Chow
/// ranks b_m recovered by deconvolution against the Hilbert series of the
/// coefficient ring (h_k = number of degree-k monomials in n − 1 variables).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GradedRankTable {
    pub variety: Variety,
    pub n: usize,
    pub gkm_ranks: Vec<usize>,
    pub chow_ranks: Vec<usize>,
}

impl GradedRankTable {
    pub fn total_chow_rank(&self) -> usize {
        self.chow_ranks.iter().sum()
    }
}

impl std::fmt::Display for GradedRankTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(
            f,
            "graded ranks for {}({}), degrees 0..{}",
            self.variety,
            self.n,
            self.gkm_ranks.len() - 1
        )?;
        writeln!(f, "  degree:    {}", columns(0..self.gkm_ranks.len()))?;
        writeln!(f, "  gkm rank:  {}", columns(self.gkm_ranks.iter()))?;
        writeln!(f, "  chow rank: {}", columns(self.chow_ranks.iter()))?;
        write!(f, "  total chow rank: {}", self.total_chow_rank())
    }
}

fn columns<T: std::fmt::Display>(items: impl IntoIterator<Item = T>) -> String {
    items
        .into_iter()
        .map(|x| format!("{x:>4}"))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Computes GKM ranks in degrees 0..=up_to and deconvolves:
/// b_m = g_m − Σ_{k≥1} h_k·b_{m−k}. Negative b_m is a freeness violation.
pub fn chow_ranks(graph: &GkmGraph, up_to: usize) -> Result<GradedRankTable> {
    let n = graph.n();
    let mut gkm_ranks = Vec::with_capacity(up_to + 1);
    for d in 0..=up_to {
        gkm_ranks.push(graded_gkm_rank(graph, d));
    }
    let mut chow = Vec::with_capacity(up_to + 1);
    for m in 0..=up_to {
        let mut b = gkm_ranks[m] as i64;
        for k in 1..=m {
            b -= (monomial_count(n - 1, k) * chow[m - k]) as i64;
        }
        if b < 0 {
            return Err(Error::FreenessViolation { degree: m, rank: b });
        }
        chow.push(b as usize);
    }
    Ok(GradedRankTable {
        variety: graph.variety(),
        n,
        gkm_ranks,
        chow_ranks: chow,
    })
}

/// The full table up to the dimension of the variety, with the total-rank
/// consistency check (the fixed-point count n(n−1)).
pub fn chow_ranks_full(graph: &GkmGraph) -> Result<GradedRankTable> {
    let table = chow_ranks(graph, graph.dim())?;
    let expected = graph.n() * (graph.n() - 1);
    if table.total_chow_rank() != expected {
        return Err(Error::Verification(format!(
            "total chow rank {} differs from fixed-point count {expected}",
            table.total_chow_rank()
        )));
    }
    Ok(table)
}

/// Smith-normal-form certificate for one degree: the invariant factors of
/// the constraint matrix. All factors equal to 1 certifies that the degree-d
/// GKM conditions stay exact over every coefficient field.
#[derive(Debug, Clone, Serialize)]
pub struct TorsionCertificate {
    pub variety: Variety,
    pub n: usize,
    pub degree: usize,
    #[serde(serialize_with = "ser_bigints")]
    pub invariant_factors: Vec<BigInt>,
    pub torsion_free: bool,
}

fn ser_bigints<S: serde::Serializer>(
    v: &[BigInt],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::Serialize;
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .serialize(s)
}

pub fn certify_torsion_free(graph: &GkmGraph, d: usize) -> TorsionCertificate {
    let mat = gkm_constraint_matrix(graph, d);
    let invariant_factors = smith_invariants(&mat);
    let torsion_free = invariant_factors.iter().all(|f| f.is_one());
    TorsionCertificate {
        variety: graph.variety(),
        n: graph.n(),
        degree: d,
        invariant_factors,
        torsion_free,
    }
}
