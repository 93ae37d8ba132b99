//! Split-level correspondence calculus: Chow groups of the projective space
//! P = ℙ^{n−1}, the full variety X, and the hyperplane section Y as graded
//! integer lattices with Gram pairings, and correspondences stored by their
//! graded action. Over the splitting field every variety involved is
//! cellular, so the action determines the cycle.

mod models;
mod report;
mod systems;

pub use models::{
    model_p, model_x, model_y, oracle_deg_x, presentation_deg_x, xi_identification,
    YContext,
};
pub use report::{decomposition_report, DecompositionReport, IdempotentSummary};
pub use systems::{
    artin_idempotent, manin_system, middle_basis_check, orthogonality_check,
    restricted_system, ArtinSystem, ManinSystem, MiddleBasisReport, RestrictedSystem,
};

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::Mat;

/// Which split variety a model describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ModelTag {
    /// ℙ^{n−1}, the split Severi–Brauer variety
    P,
    /// the full flag variety (dimension 2n−3)
    X,
    /// the hyperplane section (dimension 2n−4)
    Y,
}

impl fmt::Display for ModelTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelTag::P => write!(f, "P"),
            ModelTag::X => write!(f, "X"),
            ModelTag::Y => write!(f, "Y"),
        }
    }
}

/// A graded basis element: a monomial h^a·ξ^b in the two hyperplane classes,
/// or one of the middle-degree gamma classes of Y.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BasisLabel {
    Monomial { h: u32, xi: u32 },
    Gamma(usize),
}

impl BasisLabel {
    pub fn degree(&self, n: usize) -> usize {
        match self {
            BasisLabel::Monomial { h, xi } => (*h + *xi) as usize,
            BasisLabel::Gamma(_) => n - 2,
        }
    }
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisLabel::Monomial { h: 0, xi: 0 } => write!(f, "1"),
            BasisLabel::Monomial { h, xi } => {
                let mut parts = Vec::new();
                match h {
                    0 => {}
                    1 => parts.push("h".to_string()),
                    _ => parts.push(format!("h^{h}")),
                }
                match xi {
                    0 => {}
                    1 => parts.push("xi".to_string()),
                    _ => parts.push(format!("xi^{xi}")),
                }
                write!(f, "{}", parts.join("*"))
            }
            BasisLabel::Gamma(l) => write!(f, "gamma_{l}"),
        }
    }
}

/// A graded integer lattice with chosen bases, the Gram pairings between
/// complementary degrees, and multiplication tables for the two degree-one
/// generators. Poincaré duality at split level keeps every Gram unimodular.
#[derive(Debug, Clone)]
pub struct ChowModel {
    pub tag: ModelTag,
    pub n: usize,
    pub dim: usize,
    bases: Vec<Vec<BasisLabel>>,
    /// grams[m]: pairing CH^m × CH^{dim−m}, shape r_m × r_{dim−m}
    grams: Vec<Mat>,
    /// mult_h[m]: CH^m → CH^{m+1} as a matrix (rows index CH^{m+1})
    mult_h: Vec<Mat>,
    /// mult by ξ; absent for P (ξ lives on X and Y)
    mult_xi: Option<Vec<Mat>>,
}

impl ChowModel {
    pub(crate) fn assemble(
        tag: ModelTag,
        n: usize,
        dim: usize,
        bases: Vec<Vec<BasisLabel>>,
        grams: Vec<Mat>,
        mult_h: Vec<Mat>,
        mult_xi: Option<Vec<Mat>>,
    ) -> Result<Self> {
        let model = ChowModel {
            tag,
            n,
            dim,
            bases,
            grams,
            mult_h,
            mult_xi,
        };
        for m in 0..=dim {
            let g = &model.grams[m];
            if g.nrows() != model.rank(m as i64) || g.ncols() != model.rank((dim - m) as i64)
            {
                return Err(Error::Verification(format!(
                    "gram shape mismatch in degree {m} of {tag}"
                )));
            }
            if g.nrows() != g.ncols() {
                return Err(Error::Verification(format!(
                    "non-square gram in degree {m} of {tag}: duality rank mismatch"
                )));
            }
            if g.nrows() > 0 {
                let det = g.det();
                if det != 1.into() && det != (-1).into() {
                    return Err(Error::Verification(format!(
                        "gram between degrees {m} and {} of {tag} has determinant {det}, not ±1",
                        dim - m
                    )));
                }
            }
        }
        Ok(model)
    }

    pub fn basis(&self, m: usize) -> &[BasisLabel] {
        &self.bases[m]
    }

    /// Rank of CH^d, zero outside 0..=dim.
    pub fn rank(&self, d: i64) -> usize {
        if d < 0 || d > self.dim as i64 {
            0
        } else {
            self.bases[d as usize].len()
        }
    }

    pub fn rank_profile(&self) -> Vec<usize> {
        self.bases.iter().map(|b| b.len()).collect()
    }

    pub fn total_rank(&self) -> usize {
        self.bases.iter().map(|b| b.len()).sum()
    }

    /// Gram pairing matrix between CH^m and CH^{dim−m}.
    pub fn gram(&self, m: usize) -> &Mat {
        &self.grams[m]
    }

    /// Multiplication by h as a correspondence block in degree m.
    pub fn mult_h_block(&self, m: usize) -> &Mat {
        &self.mult_h[m]
    }

    pub fn mult_xi_block(&self, m: usize) -> Result<&Mat> {
        self.mult_xi
            .as_ref()
            .map(|v| &v[m])
            .ok_or_else(|| Error::invalid(format!("{} has no xi generator", self.tag)))
    }
}

/// A correspondence stored by its graded action: for each source degree m an
/// integer matrix CH^m(source) → CH^{m+shift}(target).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Correspondence {
    pub source: ModelTag,
    pub target: ModelTag,
    pub n: usize,
    pub shift: i32,
    blocks: Vec<Mat>,
}

impl Correspondence {
    pub fn new(
        source: &ChowModel,
        target: &ChowModel,
        shift: i32,
        blocks: Vec<Mat>,
    ) -> Result<Self> {
        if source.n != target.n {
            return Err(Error::invalid("correspondence between different degrees n"));
        }
        if blocks.len() != source.dim + 1 {
            return Err(Error::invalid("one block per source degree required"));
        }
        for (m, b) in blocks.iter().enumerate() {
            let rows = target.rank(m as i64 + shift as i64);
            let cols = source.rank(m as i64);
            if b.nrows() != rows || b.ncols() != cols {
                return Err(Error::invalid(format!(
                    "block {m} has shape {}x{}, expected {rows}x{cols}",
                    b.nrows(),
                    b.ncols()
                )));
            }
        }
        Ok(Correspondence {
            source: source.tag,
            target: target.tag,
            n: source.n,
            shift,
            blocks,
        })
    }

    pub fn zero(source: &ChowModel, target: &ChowModel, shift: i32) -> Self {
        let blocks = (0..=source.dim)
            .map(|m| {
                Mat::zero(
                    target.rank(m as i64 + shift as i64),
                    source.rank(m as i64),
                )
            })
            .collect();
        Correspondence {
            source: source.tag,
            target: target.tag,
            n: source.n,
            shift,
            blocks,
        }
    }

    pub fn identity(model: &ChowModel) -> Self {
        let blocks = (0..=model.dim)
            .map(|m| Mat::identity(model.rank(m as i64)))
            .collect();
        Correspondence {
            source: model.tag,
            target: model.tag,
            n: model.n,
            shift: 0,
            blocks,
        }
    }

    pub fn block(&self, m: usize) -> &Mat {
        &self.blocks[m]
    }

    /// self ∘ inner: apply `inner` first. Degrees passing outside the target
    /// range contribute zero.
    pub fn compose(&self, inner: &Correspondence, models: &ModelSet) -> Result<Correspondence> {
        if inner.target != self.source || inner.n != self.n {
            return Err(Error::invalid(format!(
                "cannot compose {}→{} after {}→{}",
                self.source, self.target, inner.source, inner.target
            )));
        }
        let src = models.get(inner.source);
        let mid = models.get(inner.target);
        let tgt = models.get(self.target);
        let shift = self.shift + inner.shift;
        let blocks = (0..=src.dim)
            .map(|m| {
                let mid_deg = m as i64 + inner.shift as i64;
                let out_rows = tgt.rank(m as i64 + shift as i64);
                let cols = src.rank(m as i64);
                if mid_deg < 0 || mid_deg > mid.dim as i64 {
                    return Mat::zero(out_rows, cols);
                }
                let outer = &self.blocks[mid_deg as usize];
                if outer.nrows() != out_rows {
                    // outer lands outside the target range
                    return Mat::zero(out_rows, cols);
                }
                outer.mul(&inner.blocks[m])
            })
            .collect();
        Ok(Correspondence {
            source: inner.source,
            target: self.target,
            n: self.n,
            shift,
            blocks,
        })
    }

    pub fn add(&self, other: &Correspondence) -> Result<Correspondence> {
        if (self.source, self.target, self.shift) != (other.source, other.target, other.shift)
        {
            return Err(Error::invalid("mismatched correspondences in sum"));
        }
        let blocks = self
            .blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| a.add(b))
            .collect();
        Ok(Correspondence {
            blocks,
            ..self.clone()
        })
    }

    pub fn sub(&self, other: &Correspondence) -> Result<Correspondence> {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, k: i128) -> Correspondence {
        Correspondence {
            blocks: self.blocks.iter().map(|b| b.scale(k)).collect(),
            ..self.clone()
        }
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(|b| b.is_zero())
    }

    /// Gram adjoint: the transposed correspondence, acting target → source
    /// with shift dim(source) + shift − dim(target).
    pub fn transpose(&self, models: &ModelSet) -> Correspondence {
        let src = models.get(self.source);
        let tgt = models.get(self.target);
        let t_shift = src.dim as i64 + self.shift as i64 - tgt.dim as i64;
        let blocks: Vec<Mat> = (0..=tgt.dim)
            .map(|mp| {
                let out_deg = mp as i64 + t_shift;
                let rows = src.rank(out_deg);
                let cols = tgt.rank(mp as i64);
                // the source degree pairing with the output
                let m = tgt.dim as i64 - mp as i64 - self.shift as i64;
                if rows == 0 || cols == 0 {
                    return Mat::zero(rows, cols);
                }
                if m < 0 || m > src.dim as i64 {
                    return Mat::zero(rows, cols);
                }
                let b = &self.blocks[m as usize];
                if b.nrows() == 0 || b.ncols() == 0 {
                    return Mat::zero(rows, cols);
                }
                // B^t = (G_src^T)^{-1} · B^T · G_tgt^T  on the right degrees
                let g_src = src.gram(out_deg as usize); // rows r_src(out) × r_src(m)
                let g_tgt = tgt.gram(mp); // r_tgt(mp) × r_tgt(m + shift)
                g_src
                    .transpose()
                    .inverse_unimodular()
                    .mul(&b.transpose())
                    .mul(&g_tgt.transpose())
            })
            .collect();
        let out = Correspondence {
            source: self.target,
            target: self.source,
            n: self.n,
            shift: t_shift as i32,
            blocks,
        };
        debug_assert!(adjoint_property_holds(self, &out, models));
        out
    }

    pub fn is_idempotent(&self, models: &ModelSet) -> bool {
        self.source == self.target
            && self.shift == 0
            && self
                .compose(self, models)
                .map(|sq| sq == *self)
                .unwrap_or(false)
    }

    /// Per-source-degree rank of the action (the image dimension).
    pub fn rank_profile(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.rank()).collect()
    }

    pub fn total_rank(&self) -> usize {
        self.rank_profile().iter().sum()
    }
}

/// Pairing ⟨c_* x, y⟩ n= ⟨x, c^t_* y⟩ checked over all basis vectors.
fn adjoint_property_holds(
    c: &Correspondence,
    ct: &Correspondence,
    models: &ModelSet,
) -> bool {
    let src = models.get(c.source);
    let tgt = models.get(c.target);
    for m in 0..=src.dim {
        let out_deg = m as i64 + c.shift as i64;
        if out_deg < 0 || out_deg > tgt.dim as i64 {
            continue;
        }
        let mp = tgt.dim as i64 - out_deg;
        debug_assert!(mp >= 0);
        let b = &c.blocks[m];
        let bt = &ct.blocks[mp as usize];
        // ⟨Bx, y⟩_tgt = x^T B^T G_tgt^{out_deg→mp... } y ; ⟨x, B^t y⟩_src
        let lhs = b.transpose().mul(tgt.gram(out_deg as usize));
        let rhs_gram = src.gram(m);
        let rhs = rhs_gram.mul(bt);
        if lhs != rhs {
            return false;
        }
    }
    true
}

/// The three models for one n, for composition bookkeeping.
#[derive(Debug)]
pub struct ModelSet {
    pub p: ChowModel,
    pub x: ChowModel,
    pub y: ChowModel,
}

impl ModelSet {
    pub fn get(&self, tag: ModelTag) -> &ChowModel {
        match tag {
            ModelTag::P => &self.p,
            ModelTag::X => &self.x,
            ModelTag::Y => &self.y,
        }
    }
}

/// One named check with its outcome.
#[derive(Debug, Clone, Serialize)]
pub struct Verdict {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Verdict {
    pub fn new(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        Verdict {
            name: name.into(),
            pass,
            detail: detail.into(),
        }
    }

    pub fn passing(name: impl Into<String>) -> Self {
        Verdict::new(name, true, "")
    }
}

pub fn all_pass(verdicts: &[Verdict]) -> bool {
    verdicts.iter().all(|v| v.pass)
}

/// Errors out on the first failing verdict, naming it.
pub fn require_all(verdicts: &[Verdict]) -> Result<()> {
    match verdicts.iter().find(|v| !v.pass) {
        None => Ok(()),
        Some(v) => Err(Error::Verification(format!("{}: {}", v.name, v.detail))),
    }
}
