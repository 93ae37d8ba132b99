//! The explicit splitting data of the cyclic algebra: the generator images
//! ρ(u) = diag(c, ζc, ..., ζ^{n−1}c) and ρ(v) = cyclic shift with b in the
//! corner, over the exact quotient ring ℤ[ζ, c, b]/(Φ_n(ζ)), together with
//! the inverse-free cocycle identities and the induced permutation of the
//! fixed points.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Vertex;
use crate::perm::Perm;
use crate::poly::{Monomial, Polynomial};

/// Variable layout of the coefficient ring: ζ, c (with cⁿ = a), b.
const ZETA: usize = 1;
const C: usize = 2;
const B: usize = 3;
const VAR_NAMES: [&str; 3] = ["zeta", "c", "b"];

/// Degree and formal constants of the cyclic algebra; the symbols ζ, c, b
/// live in the shared quotient ring, so the spec carries only n.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CyclicAlgebraSpec {
    n: usize,
}

impl CyclicAlgebraSpec {
    pub fn new(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::invalid(format!("degree must be at least 3, got {n}")));
        }
        Ok(CyclicAlgebraSpec { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }
}

/// Coefficients of the n-th cyclotomic polynomial, ascending, computed by
/// dividing xⁿ − 1 by the lower cyclotomic factors.
pub fn cyclotomic_polynomial(n: usize) -> Vec<BigInt> {
    assert!(n >= 1);
    // x^n - 1
    let mut num = vec![BigInt::zero(); n + 1];
    num[0] = -BigInt::one();
    num[n] = BigInt::one();
    for d in 1..n {
        if n % d == 0 {
            let phi_d = cyclotomic_polynomial(d);
            num = div_exact_univariate(&num, &phi_d);
        }
    }
    num
}

fn div_exact_univariate(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem: Vec<BigInt> = num.to_vec();
    let dd = den.len() - 1;
    assert!(den[dd].is_one(), "monic divisor expected");
    let nd = rem.len() - 1;
    assert!(nd >= dd);
    let mut quot = vec![BigInt::zero(); nd - dd + 1];
    for k in (0..=nd - dd).rev() {
        let coef = rem[k + dd].clone();
        quot[k] = coef.clone();
        if coef.is_zero() {
            continue;
        }
        for (i, dc) in den.iter().enumerate() {
            let v = &rem[k + i] - &coef * dc;
            rem[k + i] = v;
        }
    }
    assert!(rem.iter().all(|c| c.is_zero()), "division not exact");
    quot
}

/// The quotient ring ℤ[ζ, c, b]/(Φ_n(ζ)): elements are polynomials in three
/// variables kept with ζ-degree below deg Φ_n.
#[derive(Debug)]
pub struct CycRing {
    n: usize,
    /// Φ_n coefficients, ascending; degree = len − 1
    phi: Vec<BigInt>,
    /// ζ^k mod Φ_n for k ≥ deg Φ_n, grown on demand from this seed
    reductions: std::sync::Mutex<Vec<Vec<BigInt>>>,
}

impl CycRing {
    pub fn new(n: usize) -> Arc<CycRing> {
        Arc::new(CycRing {
            n,
            phi: cyclotomic_polynomial(n),
            reductions: std::sync::Mutex::new(Vec::new()),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn phi_degree(&self) -> usize {
        self.phi.len() - 1
    }

    /// ζ^e as a reduced coefficient vector of length deg Φ_n.
    fn zeta_power(&self, e: usize) -> Vec<BigInt> {
        let d = self.phi_degree();
        if e < d {
            let mut v = vec![BigInt::zero(); d];
            v[e] = BigInt::one();
            return v;
        }
        let mut cache = self.reductions.lock().unwrap();
        while cache.len() <= e - d {
            // ζ^(d + k): multiply previous entry by ζ and reduce once
            let prev: Vec<BigInt> = match cache.last() {
                Some(last) => last.clone(),
                None => {
                    // ζ^d = −(φ_0 + φ_1 ζ + ... + φ_{d−1} ζ^{d−1})
                    self.phi[..d].iter().map(|c| -c).collect()
                }
            };
            if !cache.is_empty() {
                let mut next = vec![BigInt::zero(); d];
                // shift up by one, fold the overflow back via ζ^d
                let top = prev[d - 1].clone();
                for i in (1..d).rev() {
                    next[i] = prev[i - 1].clone();
                }
                for (i, c) in self.phi[..d].iter().enumerate() {
                    let v = &next[i] - &top * c;
                    next[i] = v;
                }
                cache.push(next);
            } else {
                cache.push(prev);
            }
        }
        cache[e - d].clone()
    }

    /// Canonical form: every ζ-exponent reduced below deg Φ_n.
    pub fn reduce(&self, p: &Polynomial) -> Polynomial {
        let d = self.phi_degree();
        let mut out = Polynomial::zero(3);
        for (m, coeff) in p.terms() {
            let e = m.0[ZETA - 1] as usize;
            if e < d {
                out = &out + &Polynomial::from_terms(3, [(m.clone(), coeff.clone())]);
            } else {
                let red = self.zeta_power(e);
                for (k, rc) in red.iter().enumerate() {
                    if rc.is_zero() {
                        continue;
                    }
                    let mut exp = m.0.clone();
                    exp[ZETA - 1] = k as u16;
                    out = &out
                        + &Polynomial::from_terms(3, [(Monomial(exp), coeff * rc)]);
                }
            }
        }
        out
    }

    pub fn zero(&self) -> Polynomial {
        Polynomial::zero(3)
    }

    pub fn one(&self) -> Polynomial {
        Polynomial::one(3)
    }

    pub fn zeta(&self) -> Polynomial {
        Polynomial::variable(3, ZETA)
    }

    pub fn c(&self) -> Polynomial {
        Polynomial::variable(3, C)
    }

    pub fn b(&self) -> Polynomial {
        Polynomial::variable(3, B)
    }

    pub fn mul(&self, a: &Polynomial, b: &Polynomial) -> Polynomial {
        self.reduce(&(a * b))
    }

    pub fn pow(&self, a: &Polynomial, e: usize) -> Polynomial {
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.mul(&acc, a);
        }
        acc
    }
}

/// An n×n matrix over the cyclotomic quotient ring, entries in canonical
/// reduced form.
#[derive(Debug, Clone)]
pub struct CycMatrix {
    ring: Arc<CycRing>,
    entries: Vec<Polynomial>, // row-major n×n
}

impl PartialEq for CycMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.ring.n == other.ring.n && self.entries == other.entries
    }
}

impl CycMatrix {
    pub fn zero(ring: &Arc<CycRing>) -> Self {
        let n = ring.n;
        CycMatrix {
            ring: ring.clone(),
            entries: vec![Polynomial::zero(3); n * n],
        }
    }

    pub fn identity(ring: &Arc<CycRing>) -> Self {
        let mut m = CycMatrix::zero(ring);
        for i in 1..=ring.n {
            m.set(i, i, Polynomial::one(3));
        }
        m
    }

    pub fn n(&self) -> usize {
        self.ring.n
    }

    /// 1-indexed access.
    pub fn get(&self, row: usize, col: usize) -> &Polynomial {
        &self.entries[(row - 1) * self.ring.n + (col - 1)]
    }

    pub fn set(&mut self, row: usize, col: usize, value: Polynomial) {
        self.entries[(row - 1) * self.ring.n + (col - 1)] = self.ring.reduce(&value);
    }

    pub fn mul(&self, rhs: &CycMatrix) -> CycMatrix {
        assert_eq!(self.ring.n, rhs.ring.n);
        let n = self.ring.n;
        let mut out = CycMatrix::zero(&self.ring);
        for i in 1..=n {
            for j in 1..=n {
                let mut acc = Polynomial::zero(3);
                for k in 1..=n {
                    acc = &acc + &(self.get(i, k) * rhs.get(k, j));
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    pub fn scale(&self, s: &Polynomial) -> CycMatrix {
        let mut out = self.clone();
        for e in out.entries.iter_mut() {
            *e = self.ring.mul(e, s);
        }
        out
    }

    pub fn pow(&self, e: usize) -> CycMatrix {
        let mut acc = CycMatrix::identity(&self.ring);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }
}

impl fmt::Display for CycMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.ring.n;
        for i in 1..=n {
            let row: Vec<String> = (1..=n).map(|j| self.get(i, j).render(&VAR_NAMES)).collect();
            writeln!(f, "[ {} ]", row.join(", "))?;
        }
        Ok(())
    }
}

/// The generator images: ρ(u) diagonal with entries ζ^{i−1}·c, ρ(v) the
/// cyclic shift with 1 on the subdiagonal and b in the top-right corner.
pub fn build_generators(spec: CyclicAlgebraSpec) -> (Arc<CycRing>, CycMatrix, CycMatrix) {
    let n = spec.n();
    let ring = CycRing::new(n);
    let mut rho_u = CycMatrix::zero(&ring);
    for i in 1..=n {
        let entry = ring.mul(&ring.pow(&ring.zeta(), i - 1), &ring.c());
        rho_u.set(i, i, entry);
    }
    let mut rho_v = CycMatrix::zero(&ring);
    for i in 1..n {
        rho_v.set(i + 1, i, ring.one());
    }
    rho_v.set(1, n, ring.b());
    (ring, rho_u, rho_v)
}

/// One checked identity of the cocycle report.
#[derive(Debug, Clone, Serialize)]
pub struct CocycleIdentity {
    pub identity: String,
    pub k: usize,
    pub pass: bool,
}

/// Verdict list for the inverse-free generator identities
/// ζ^k·ρ(v)^k·ρ(u) = ρ(u)·ρ(v)^k and ρ(v)^k·ρ(v) = ρ(v)·ρ(v)^k, k = 0..n−1.
#[derive(Debug, Clone, Serialize)]
pub struct CocycleReport {
    pub n: usize,
    pub identities: Vec<CocycleIdentity>,
}

impl CocycleReport {
    pub fn all_pass(&self) -> bool {
        self.identities.iter().all(|i| i.pass)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "schema_version": crate::graph::JSON_SCHEMA_VERSION,
            "n": self.n,
            "all_pass": self.all_pass(),
            "identities": self.identities,
        })
    }
}

impl fmt::Display for CocycleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "cocycle identities for degree {}", self.n)?;
        for id in &self.identities {
            writeln!(
                f,
                "  [{}] k={}: {}",
                if id.pass { "pass" } else { "FAIL" },
                id.k,
                id.identity
            )?;
        }
        write!(f, "overall: {}", if self.all_pass() { "pass" } else { "FAIL" })
    }
}

/// Checks every generator identity as an exact matrix identity in the
/// quotient ring, avoiding inverses.
pub fn verify_cocycle(spec: CyclicAlgebraSpec) -> CocycleReport {
    let n = spec.n();
    let (ring, rho_u, rho_v) = build_generators(spec);
    let mut identities = Vec::new();
    for k in 0..n {
        let vk = rho_v.pow(k);
        let zeta_k = ring.pow(&ring.zeta(), k);
        let lhs = vk.mul(&rho_u).scale(&zeta_k);
        let rhs = rho_u.mul(&vk);
        identities.push(CocycleIdentity {
            identity: format!("zeta^{k}·rho_v^{k}·rho_u = rho_u·rho_v^{k}"),
            k,
            pass: lhs == rhs,
        });
        let lhs2 = vk.mul(&rho_v);
        let rhs2 = rho_v.mul(&vk);
        identities.push(CocycleIdentity {
            identity: format!("rho_v^{k}·rho_v = rho_v·rho_v^{k}"),
            k,
            pass: lhs2 == rhs2,
        });
    }
    CocycleReport { n, identities }
}

/// The permutation of the fixed points induced by the k-th power of the
/// cocycle: [ij] ↦ [η^k(i) η^k(j)] for the long cycle η.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedPointPermutation {
    n: usize,
    k: usize,
    sigma: Perm,
}

impl FixedPointPermutation {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn index_perm(&self) -> &Perm {
        &self.sigma
    }

    pub fn apply(&self, v: Vertex) -> Vertex {
        Vertex::new(self.sigma.apply(v.i), self.sigma.apply(v.j))
    }

    pub fn is_identity(&self) -> bool {
        self.sigma.is_identity()
    }

    pub fn compose(&self, other: &FixedPointPermutation) -> FixedPointPermutation {
        assert_eq!(self.n, other.n);
        FixedPointPermutation {
            n: self.n,
            k: (self.k + other.k) % self.n,
            sigma: self.sigma.then(&other.sigma),
        }
    }
}

pub fn fixed_point_permutation(n: usize, k: usize) -> Result<FixedPointPermutation> {
    if n < 3 {
        return Err(Error::invalid("degree must be at least 3"));
    }
    if k >= n {
        return Err(Error::invalid(format!("exponent {k} out of range 0..{n}")));
    }
    Ok(FixedPointPermutation {
        n,
        k,
        sigma: Perm::long_cycle(n).pow(k),
    })
}
