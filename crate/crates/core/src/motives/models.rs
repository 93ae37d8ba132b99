//! Construction of the three Chow models.
//!
//! P and X are presented rings: CH(X) is the free module on h^a·ξ^b
//! (0 ≤ a ≤ n−1, 0 ≤ b ≤ n−2) with h^n = 0 and the rank-(n−1) bundle
//! relation ξ^{n−1} = Σ_{k≥1} (−1)^{k+1}·C(n,k)·h^k·ξ^{n−1−k}. Y is built
//! from localization data: bases are restricted monomials with ξ-exponent
//! at most n−3 plus the gamma classes in the middle degree, and every Gram
//! entry and multiplication constant is a fixed-point pairing.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_traits::ToPrimitive;

use super::{BasisLabel, ChowModel, ModelTag};
use crate::cycles::{gamma, lift_h, lift_xi};
use crate::equivariant::{EquivariantClass, Localizer};
use crate::error::{Error, Result};
use crate::graph::{GkmGraph, Variety};
use crate::linalg::Mat;

fn binom(n: usize, k: usize) -> i128 {
    if k > n {
        return 0;
    }
    let mut num: i128 = 1;
    let mut den: i128 = 1;
    for i in 0..k.min(n - k) {
        num *= (n - i) as i128;
        den *= (i + 1) as i128;
    }
    num / den
}

// ---------------------------------------------------------------------------
// The presented ring of X
// ---------------------------------------------------------------------------

/// An element of CH(X) in the monomial basis: (h-exp, ξ-exp) → coefficient.
type XElt = BTreeMap<(u32, u32), i128>;

fn xelt_add_term(e: &mut XElt, key: (u32, u32), coeff: i128) {
    let entry = e.entry(key).or_insert(0);
    *entry += coeff;
    if *entry == 0 {
        e.remove(&key);
    }
}

/// h^a·ξ^b reduced to the basis (h^n = 0 and the ξ^{n−1} relation).
fn x_reduce_monomial(n: usize, a: u32, b: u32) -> XElt {
    let mut out = XElt::new();
    if a as usize >= n {
        return out;
    }
    if b as usize <= n - 2 {
        out.insert((a, b), 1);
        return out;
    }
    // ξ^{n−1} = Σ_{k=1}^{n−1} (−1)^{k+1} C(n,k) h^k ξ^{n−1−k}
    for k in 1..=(n - 1) as u32 {
        let sign = if k % 2 == 1 { 1 } else { -1 };
        let c = sign * binom(n, k as usize);
        for (key, coeff) in x_reduce_monomial(n, a + k, b - k) {
            xelt_add_term(&mut out, key, c * coeff);
        }
    }
    out
}

fn x_mul_monomials(n: usize, m1: (u32, u32), m2: (u32, u32)) -> XElt {
    x_reduce_monomial(n, m1.0 + m2.0, m1.1 + m2.1)
}

/// Degree of a reduced element: the coefficient of the top cell h^{n−1}·ξ^{n−2}.
fn x_deg(n: usize, e: &XElt) -> i128 {
    e.get(&((n - 1) as u32, (n - 2) as u32)).copied().unwrap_or(0)
}

/// Intersection number deg_X(h^a·ξ^b) from the ring presentation.
pub fn presentation_deg_x(n: usize, a: u32, b: u32) -> i128 {
    x_deg(n, &x_reduce_monomial(n, a, b))
}

// ---------------------------------------------------------------------------
// The product-of-projective-spaces oracle
// ---------------------------------------------------------------------------

/// CH(ℙ^{n−1}×ℙ^{n−1}) = ℤ[h1,h2]/(h1^n, h2^n) as an n×n coefficient grid.
#[derive(Clone)]
struct PpElt {
    n: usize,
    grid: Vec<i128>,
}

impl PpElt {
    fn one(n: usize) -> Self {
        let mut grid = vec![0; n * n];
        grid[0] = 1;
        PpElt { n, grid }
    }

    fn mul_h(&self, which: usize) -> Self {
        let n = self.n;
        let mut grid = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                let v = self.grid[i * n + j];
                if v == 0 {
                    continue;
                }
                let (ni, nj) = if which == 1 { (i + 1, j) } else { (i, j + 1) };
                if ni < n && nj < n {
                    grid[ni * n + nj] += v;
                }
            }
        }
        PpElt { n, grid }
    }

    fn mul_sum(&self) -> Self {
        // multiply by h1 + h2
        let a = self.mul_h(1);
        let b = self.mul_h(2);
        let grid = a
            .grid
            .iter()
            .zip(&b.grid)
            .map(|(x, y)| x + y)
            .collect();
        PpElt { n: self.n, grid }
    }

    fn top(&self) -> i128 {
        self.grid[self.n * self.n - 1]
    }
}

/// The candidate identifications of ξ with divisor classes of the ambient
/// product of projective spaces.
const XI_CANDIDATES: [&str; 3] = ["h1+h2", "h1", "h2"];

fn oracle_deg_with(n: usize, a: u32, b: u32, candidate: &str) -> i128 {
    let mut e = PpElt::one(n);
    for _ in 0..a {
        e = e.mul_h(1);
    }
    for _ in 0..b {
        e = match candidate {
            "h1+h2" => e.mul_sum(),
            "h1" => e.mul_h(1),
            "h2" => e.mul_h(2),
            _ => unreachable!(),
        };
    }
    // cap with the divisor class of the flag hypersurface itself
    e.mul_sum().top()
}

/// Independent oracle for deg_X(h^a·ξ^b): compute h1^a·(h1+h2)^b·(h1+h2)
/// in the ambient product and read off the top coefficient.
pub fn oracle_deg_x(n: usize, a: u32, b: u32) -> i128 {
    oracle_deg_with(n, a, b, "h1+h2")
}

/// Which identification of ξ reconciles every top intersection number with
/// the ring presentation. Returns the list of candidates that work.
pub fn xi_identification(n: usize) -> Vec<&'static str> {
    XI_CANDIDATES
        .iter()
        .filter(|cand| {
            (0..=(2 * n - 3) as u32).all(|a| {
                let b = (2 * n - 3) as u32 - a;
                oracle_deg_with(n, a, b, cand) == presentation_deg_x(n, a, b)
            })
        })
        .copied()
        .collect()
}

// ---------------------------------------------------------------------------
// Model builders
// ---------------------------------------------------------------------------

/// CH(ℙ^{n−1}): one basis monomial h^m per degree.
pub fn model_p(n: usize) -> Result<ChowModel> {
    if n < 3 {
        return Err(Error::invalid("degree must be at least 3"));
    }
    let dim = n - 1;
    let bases: Vec<Vec<BasisLabel>> = (0..=dim)
        .map(|m| {
            vec![BasisLabel::Monomial {
                h: m as u32,
                xi: 0,
            }]
        })
        .collect();
    let grams = (0..=dim).map(|_| Mat::identity(1)).collect();
    let mult_h = (0..=dim)
        .map(|m| {
            if m < dim {
                Mat::identity(1)
            } else {
                Mat::zero(0, 1)
            }
        })
        .collect();
    ChowModel::assemble(ModelTag::P, n, dim, bases, grams, mult_h, None)
}

fn x_basis(n: usize, m: usize) -> Vec<BasisLabel> {
    let mut out = Vec::new();
    for a in 0..=m.min(n - 1) {
        let b = m - a;
        if b <= n - 2 {
            out.push(BasisLabel::Monomial {
                h: a as u32,
                xi: b as u32,
            });
        }
    }
    out
}

fn label_pow(l: &BasisLabel) -> (u32, u32) {
    match l {
        BasisLabel::Monomial { h, xi } => (*h, *xi),
        BasisLabel::Gamma(_) => panic!("gamma label outside Y middle degree"),
    }
}

/// Coordinates of a reduced ring element in the degree-m monomial basis.
fn x_coords(basis: &[BasisLabel], e: &XElt) -> Vec<i128> {
    let index: HashMap<(u32, u32), usize> = basis
        .iter()
        .enumerate()
        .map(|(i, l)| (label_pow(l), i))
        .collect();
    let mut out = vec![0; basis.len()];
    for (key, coeff) in e {
        let i = index[key];
        out[i] = *coeff;
    }
    out
}

/// CH(X) presented on the monomial lattice with the bundle relation; Gram
/// pairings and multiplication tables computed by normal-form reduction.
pub fn model_x(n: usize) -> Result<ChowModel> {
    if n < 3 {
        return Err(Error::invalid("degree must be at least 3"));
    }
    let dim = 2 * n - 3;
    let bases: Vec<Vec<BasisLabel>> = (0..=dim).map(|m| x_basis(n, m)).collect();
    let mut grams = Vec::with_capacity(dim + 1);
    for m in 0..=dim {
        let rows = &bases[m];
        let cols = &bases[dim - m];
        let mut g = Mat::zero(rows.len(), cols.len());
        for (i, bi) in rows.iter().enumerate() {
            for (j, bj) in cols.iter().enumerate() {
                let prod = x_mul_monomials(n, label_pow(bi), label_pow(bj));
                g[(i, j)] = x_deg(n, &prod);
            }
        }
        grams.push(g);
    }
    let mult_by = |da: u32, db: u32| -> Vec<Mat> {
        (0..=dim)
            .map(|m| {
                let src = &bases[m];
                if m + 1 > dim {
                    return Mat::zero(0, src.len());
                }
                let dst = &bases[m + 1];
                let mut b = Mat::zero(dst.len(), src.len());
                for (j, l) in src.iter().enumerate() {
                    let (a, x) = label_pow(l);
                    let red = x_reduce_monomial(n, a + da, x + db);
                    for (i, v) in x_coords(dst, &red).into_iter().enumerate() {
                        b[(i, j)] = v;
                    }
                }
                b
            })
            .collect()
    };
    let mult_h = mult_by(1, 0);
    let mult_xi = mult_by(0, 1);
    ChowModel::assemble(ModelTag::X, n, dim, bases, grams, mult_h, Some(mult_xi))
}

// ---------------------------------------------------------------------------
// The Y model, from localization
// ---------------------------------------------------------------------------

/// Localization context for Y: the graph, the pairing engine, and equivariant
/// lifts of every basis label.
pub struct YContext {
    pub graph: Arc<GkmGraph>,
    pub localizer: Localizer,
    lifts: HashMap<(usize, String), EquivariantClass>,
    h_lift: EquivariantClass,
    xi_lift: EquivariantClass,
}

impl YContext {
    pub fn new(n: usize) -> Result<YContext> {
        let graph = GkmGraph::build(n, Variety::Y)?;
        let localizer = Localizer::new(&graph);
        let h_lift = lift_h(&graph);
        let xi_lift = lift_xi(&graph);
        Ok(YContext {
            graph,
            localizer,
            lifts: HashMap::new(),
            h_lift,
            xi_lift,
        })
    }

    /// Equivariant lift of a basis label (h'^a·ξ'^b for monomials, the gamma
    /// class for middle labels). Lifts are memoized.
    pub fn lift(&mut self, label: &BasisLabel) -> Result<EquivariantClass> {
        let key = (self.graph.n(), format!("{label}"));
        if let Some(c) = self.lifts.get(&key) {
            return Ok(c.clone());
        }
        let class = match label {
            BasisLabel::Gamma(l) => gamma(&self.graph, *l)?,
            BasisLabel::Monomial { h, xi } => {
                let mut out = EquivariantClass::one(self.graph.clone());
                for _ in 0..*h {
                    out = out.multiply(&self.h_lift)?;
                }
                for _ in 0..*xi {
                    out = out.multiply(&self.xi_lift)?;
                }
                out
            }
        };
        self.lifts.insert(key, class.clone());
        Ok(class)
    }

    pub fn h_lift(&self) -> &EquivariantClass {
        &self.h_lift
    }

    pub fn xi_lift(&self) -> &EquivariantClass {
        &self.xi_lift
    }

    /// Integer pairing of two equivariant classes of complementary degrees.
    pub fn pair(&self, a: &EquivariantClass, b: &EquivariantClass) -> Result<i128> {
        let v = self.localizer.pairing_integer(a, b)?;
        v.to_i128()
            .ok_or_else(|| Error::invalid("pairing exceeds i128 range"))
    }

    /// Coordinates of a degree-m class in the degree-m basis of the model,
    /// via pairings against the complementary basis and the unimodular Gram.
    pub fn coords(
        &mut self,
        model: &ChowModel,
        class: &EquivariantClass,
        m: usize,
    ) -> Result<Vec<i128>> {
        let dual: Vec<EquivariantClass> = model
            .basis(model.dim - m)
            .iter()
            .map(|l| self.lift(l))
            .collect::<Result<_>>()?;
        let mut v = Mat::zero(dual.len(), 1);
        for (k, d) in dual.iter().enumerate() {
            v[(k, 0)] = self.pair(class, d)?;
        }
        // v = G^T c  ⇒  c = (G^T)^{-1} v
        let g = model.gram(m);
        let c = g.transpose().inverse_unimodular().mul(&v);
        Ok((0..c.nrows()).map(|i| c[(i, 0)]).collect())
    }
}

fn y_basis(n: usize, m: usize) -> Vec<BasisLabel> {
    let dim = 2 * n - 4;
    debug_assert!(m <= dim);
    let middle = n - 2;
    let mut out = Vec::new();
    if m == middle {
        for l in 1..=n {
            out.push(BasisLabel::Gamma(l));
        }
    }
    for a in 0..=m.min(n - 1) {
        let b = m - a;
        if b <= n - 3 && (m != middle || a >= 1) {
            out.push(BasisLabel::Monomial {
                h: a as u32,
                xi: b as u32,
            });
        }
    }
    out
}

/// CH(Y) from fixed-point data: restricted monomials with ξ-exponent at most
/// n−3 away from the middle, gammas plus the h-family in the middle, all
/// pairings computed by localization.
pub fn model_y(ctx: &mut YContext) -> Result<ChowModel> {
    let n = ctx.graph.n();
    let dim = 2 * n - 4;
    let bases: Vec<Vec<BasisLabel>> = (0..=dim).map(|m| y_basis(n, m)).collect();

    let mut grams = Vec::with_capacity(dim + 1);
    for m in 0..=dim {
        let rows: Vec<EquivariantClass> = bases[m]
            .iter()
            .map(|l| ctx.lift(l))
            .collect::<Result<_>>()?;
        let cols: Vec<EquivariantClass> = bases[dim - m]
            .iter()
            .map(|l| ctx.lift(l))
            .collect::<Result<_>>()?;
        let mut g = Mat::zero(rows.len(), cols.len());
        for (i, a) in rows.iter().enumerate() {
            for (j, b) in cols.iter().enumerate() {
                g[(i, j)] = ctx.pair(a, b)?;
            }
        }
        grams.push(g);
    }

    // a provisional model for coordinate extraction while building mults
    let provisional = ChowModel::assemble(
        ModelTag::Y,
        n,
        dim,
        bases.clone(),
        grams.clone(),
        (0..=dim)
            .map(|m| {
                Mat::zero(
                    if m < dim { bases[m + 1].len() } else { 0 },
                    bases[m].len(),
                )
            })
            .collect(),
        None,
    )?;

    let mut build_mult = |gen_is_h: bool| -> Result<Vec<Mat>> {
        let mut out = Vec::with_capacity(dim + 1);
        for m in 0..=dim {
            let src = &bases[m];
            if m == dim {
                out.push(Mat::zero(0, src.len()));
                continue;
            }
            let dst_len = bases[m + 1].len();
            let mut b = Mat::zero(dst_len, src.len());
            for (j, l) in src.iter().enumerate() {
                let lifted = ctx.lift(l)?;
                let gen = if gen_is_h {
                    ctx.h_lift.clone()
                } else {
                    ctx.xi_lift.clone()
                };
                let prod = lifted.multiply(&gen)?;
                let coords = ctx.coords(&provisional, &prod, m + 1)?;
                for (i, v) in coords.into_iter().enumerate() {
                    b[(i, j)] = v;
                }
            }
            out.push(b);
        }
        Ok(out)
    };
    let mult_h = build_mult(true)?;
    let mult_xi = build_mult(false)?;

    ChowModel::assemble(ModelTag::Y, n, dim, bases, grams, mult_h, Some(mult_xi))
}
