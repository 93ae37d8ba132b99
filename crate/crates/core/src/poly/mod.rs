//! Exact sparse multivariate polynomial arithmetic over the integers in
//! variables t_1, ..., t_n.
//!
//! Polynomials are stored as canonical term maps (monomial -> non-zero
//! coefficient) under the graded lexicographic order, so structural equality
//! is semantic equality. Coefficients are arbitrary-precision integers.

mod gcd;
mod rational;
mod text;

pub use gcd::gcd;
pub use rational::RationalFunction;
pub use text::parse_polynomial;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// An exponent vector of fixed length, ordered by graded lex (total degree
/// first, then lexicographic with t_1 heaviest).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u16>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i - 1] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    /// Componentwise division; `None` if any exponent would go negative.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut e = Vec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(&other.0) {
            if a < b {
                return None;
            }
            e.push(a - b);
        }
        Some(Monomial(e))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {
                // lexicographic with t_1 most significant
                for (a, b) in self.0.iter().zip(&other.0) {
                    match a.cmp(b) {
                        Ordering::Equal => continue,
                        // larger exponent on an earlier variable is larger
                        ord => return ord,
                    }
                }
                Ordering::Equal
            }
            ord => ord,
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A sparse multivariate polynomial over ℤ in canonical form: no stored
/// coefficient is zero, and equality of term maps is equality of polynomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Polynomial::constant(nvars, BigInt::one())
    }

    pub fn constant(nvars: usize, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(nvars), c);
        }
        Polynomial { nvars, terms }
    }

    /// The variable t_i (1-indexed).
    pub fn variable(nvars: usize, i: usize) -> Self {
        assert!(i >= 1 && i <= nvars, "variable index out of range");
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::var(nvars, i), BigInt::one());
        Polynomial { nvars, terms }
    }

    pub fn from_terms(
        nvars: usize,
        iter: impl IntoIterator<Item = (Monomial, BigInt)>,
    ) -> Self {
        let mut p = Polynomial::zero(nvars);
        for (m, c) in iter {
            assert_eq!(m.0.len(), nvars, "exponent vector length mismatch");
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn is_homogeneous(&self, d: u32) -> bool {
        self.terms.keys().all(|m| m.degree() == d)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    /// The constant term (zero if absent).
    pub fn constant_term(&self) -> BigInt {
        self.terms
            .get(&Monomial::one(self.nvars))
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    /// As an integer, if the polynomial is constant.
    pub fn as_integer(&self) -> Option<BigInt> {
        if self.is_constant() {
            Some(self.constant_term())
        } else {
            None
        }
    }

    /// Leading (grlex-largest) term.
    pub fn leading_term(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next_back()
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, k: &BigInt) -> Polynomial {
        if k.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c * k))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.nvars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// gcd of all coefficients (non-negative); zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Substitutes t_a := t_b (1-indexed, a ≠ b).
    pub fn subst_var_equal(&self, a: usize, b: usize) -> Polynomial {
        assert!(a != b);
        let mut out = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            e[b - 1] += e[a - 1];
            e[a - 1] = 0;
            out.add_term(Monomial(e), c.clone());
        }
        out
    }

    /// Substitutes t_a := 0.
    pub fn subst_var_zero(&self, a: usize) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            if m.0[a - 1] == 0 {
                out.add_term(m.clone(), c.clone());
            }
        }
        out
    }

    /// Applies the ring automorphism t_k ↦ t_{sigma(k)}.
    pub fn permute(&self, sigma: &crate::perm::Perm) -> Polynomial {
        assert_eq!(sigma.n(), self.nvars, "permutation size mismatch");
        let mut out = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut e = vec![0u16; self.nvars];
            for (k, &exp) in m.0.iter().enumerate() {
                e[sigma.apply(k + 1) - 1] = exp;
            }
            out.add_term(Monomial(e), c.clone());
        }
        out
    }

    /// Exact division; `None` when `divisor` does not divide `self` over ℤ.
    pub fn div_exact(&self, divisor: &Polynomial) -> Option<Polynomial> {
        assert_eq!(self.nvars, divisor.nvars);
        if divisor.is_zero() {
            return None;
        }
        let (dm, dc) = divisor.leading_term().unwrap();
        let dm = dm.clone();
        let dc = dc.clone();
        let mut rem = self.clone();
        let mut quot = Polynomial::zero(self.nvars);
        while let Some((lm, lc)) = rem.leading_term() {
            let qm = lm.div(&dm)?;
            let (qc, r) = lc.div_rem(&dc);
            if !r.is_zero() {
                return None;
            }
            let lm = lm.clone();
            let lc = lc.clone();
            quot.add_term(qm.clone(), qc.clone());
            // rem -= qc * qm * divisor
            for (m, c) in &divisor.terms {
                rem.add_term(qm.mul(m), -(&qc) * c);
            }
            // the leading term must have been cancelled
            debug_assert!(rem.terms.get(&lm).map_or(true, |c| *c != lc));
        }
        Some(quot)
    }

    /// Largest exponent of t_k appearing.
    pub fn degree_in(&self, k: usize) -> u16 {
        self.terms.keys().map(|m| m.0[k - 1]).max().unwrap_or(0)
    }

    /// Canonical text form with custom variable names.
    pub fn render(&self, names: &[&str]) -> String {
        assert_eq!(names.len(), self.nvars);
        text::render(self, Some(names))
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let (small, large) = if self.num_terms() <= rhs.num_terms() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut out = Polynomial::zero(self.nvars);
        for (m1, c1) in &small.terms {
            for (m2, c2) in &large.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", text::render(self, None))
    }
}

/// An integer linear form c_1 t_1 + ... + c_n t_n. The root forms
/// α_{ij} = t_i − t_j carry coefficient vector e_i − e_j.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinearForm {
    coeffs: Vec<i64>,
}

impl LinearForm {
    pub fn new(coeffs: Vec<i64>) -> Result<Self> {
        if coeffs.iter().all(|&c| c == 0) {
            return Err(Error::invalid("zero linear form"));
        }
        Ok(LinearForm { coeffs })
    }

    /// The root form α_{ij} = t_i − t_j (1-indexed, i ≠ j).
    pub fn root(nvars: usize, i: usize, j: usize) -> Self {
        assert!(i != j && i >= 1 && j >= 1 && i <= nvars && j <= nvars);
        let mut coeffs = vec![0i64; nvars];
        coeffs[i - 1] = 1;
        coeffs[j - 1] = -1;
        LinearForm { coeffs }
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn nvars(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_primitive(&self) -> bool {
        let mut g: i64 = 0;
        for &c in &self.coeffs {
            g = g.gcd(&c);
        }
        g == 1
    }

    /// Indices (i, j) such that `self` is ±(t_i − t_j), if it is a root form.
    pub fn as_root(&self) -> Option<(usize, usize)> {
        let mut pos = None;
        let mut neg = None;
        for (k, &c) in self.coeffs.iter().enumerate() {
            match c {
                0 => {}
                1 if pos.is_none() => pos = Some(k + 1),
                -1 if neg.is_none() => neg = Some(k + 1),
                _ => return None,
            }
        }
        match (pos, neg) {
            (Some(i), Some(j)) => Some((i, j)),
            _ => None,
        }
    }

    pub fn to_polynomial(&self) -> Polynomial {
        let n = self.coeffs.len();
        Polynomial::from_terms(
            n,
            self.coeffs.iter().enumerate().filter(|(_, &c)| c != 0).map(
                |(k, &c)| (Monomial::var(n, k + 1), BigInt::from(c)),
            ),
        )
    }

    pub fn negated(&self) -> LinearForm {
        LinearForm {
            coeffs: self.coeffs.iter().map(|&c| -c).collect(),
        }
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_polynomial())
    }
}

/// Tests whether the primitive linear form `alpha` divides `p`, equivalently
/// whether `p` vanishes identically on the hyperplane `alpha = 0`.
///
/// For a root form α_{ij} this is the substitution test t_i := t_j; the
/// general case substitutes the pivot variable and clears denominators.
pub fn divides(alpha: &LinearForm, p: &Polynomial) -> Result<bool> {
    assert_eq!(alpha.nvars(), p.nvars(), "variable count mismatch");
    if alpha.coeffs.iter().all(|&c| c == 0) {
        return Err(Error::invalid("zero linear form"));
    }
    if !alpha.is_primitive() {
        return Err(Error::invalid(
            "linear form must be primitive (content 1)",
        ));
    }
    if let Some((i, j)) = alpha.as_root() {
        return Ok(p.subst_var_equal(i, j).is_zero());
    }
    // general primitive form: substitute t_k := -(sum of the others)/c_k,
    // scaled by c_k^(D - e_k) per term so everything stays in ℤ
    let k = alpha.coeffs.iter().position(|&c| c != 0).unwrap() + 1;
    let ck = BigInt::from(alpha.coeffs[k - 1]);
    let nvars = p.nvars();
    let replacement = Polynomial::from_terms(
        nvars,
        alpha
            .coeffs
            .iter()
            .enumerate()
            .filter(|&(idx, &c)| idx != k - 1 && c != 0)
            .map(|(idx, &c)| (Monomial::var(nvars, idx + 1), BigInt::from(-c))),
    );
    let max_deg = p.degree_in(k) as u32;
    let mut powers = vec![Polynomial::one(nvars)];
    for e in 1..=max_deg {
        let prev = &powers[(e - 1) as usize];
        powers.push(prev * &replacement);
    }
    let mut acc = Polynomial::zero(nvars);
    for (m, c) in p.terms() {
        let e = m.0[k - 1] as u32;
        let mut rest = m.0.clone();
        rest[k - 1] = 0;
        let scale = c * ck.pow(max_deg - e);
        let term = powers[e as usize].scale(&scale);
        let shifted = Polynomial::from_terms(
            nvars,
            term.terms()
                .map(|(tm, tc)| (tm.mul(&Monomial(rest.clone())), tc.clone())),
        );
        acc = &acc + &shifted;
    }
    Ok(acc.is_zero())
}

/// Exact division of `p` by the root form (t_a − t_b), with remainder check.
/// Returns `None` when the form does not divide `p`.
pub fn div_exact_root(p: &Polynomial, a: usize, b: usize) -> Option<Polynomial> {
    let n = p.nvars();
    p.div_exact(&LinearForm::root(n, a, b).to_polynomial())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Perm;

    fn t(n: usize, i: usize) -> Polynomial {
        Polynomial::variable(n, i)
    }

    #[test]
    fn canonical_form_drops_zero_coefficients() {
        let p = &t(3, 1) - &t(3, 1);
        assert!(p.is_zero());
        assert_eq!(p.num_terms(), 0);
    }

    #[test]
    fn divides_examples() {
        let a12 = LinearForm::root(3, 1, 2);
        let p = &t(3, 1) - &t(3, 2);
        assert!(divides(&a12, &p).unwrap());
        let q = &t(3, 1) + &t(3, 2);
        assert!(!divides(&a12, &q).unwrap());
        // α_{23} | α_{12} − α_{13} = t_3 − t_2
        let a23 = LinearForm::root(3, 2, 3);
        let diff = &LinearForm::root(3, 1, 2).to_polynomial()
            - &LinearForm::root(3, 1, 3).to_polynomial();
        assert!(divides(&a23, &diff).unwrap());
    }

    #[test]
    fn divides_rejects_zero_form() {
        assert!(LinearForm::new(vec![0, 0]).is_err());
    }

    #[test]
    fn divides_general_primitive_form() {
        // 2t_1 - t_2 divides (2t_1 - t_2)(t_1 + 5t_3)
        let alpha = LinearForm::new(vec![2, -1, 0]).unwrap();
        let p = &alpha.to_polynomial() * &(&t(3, 1) + &t(3, 3).scale(&5.into()));
        assert!(divides(&alpha, &p).unwrap());
        assert!(!divides(&alpha, &(&p + &Polynomial::one(3))).unwrap());
    }

    #[test]
    fn divides_rejects_imprimitive_form() {
        let alpha = LinearForm::new(vec![2, -2, 0]).unwrap();
        assert!(divides(&alpha, &t(3, 1)).is_err());
    }

    #[test]
    fn permute_examples() {
        let n = 3;
        let p = &t(n, 1) * &(&t(n, 2) - &t(n, 3));
        assert_eq!(p.permute(&Perm::identity(n)), p);
        // (1 2 3): α_{12} ↦ α_{23}
        let sigma = Perm::long_cycle(3);
        let a12 = LinearForm::root(3, 1, 2).to_polynomial();
        let a23 = LinearForm::root(3, 2, 3).to_polynomial();
        assert_eq!(a12.permute(&sigma), a23);
        // inverse composition
        assert_eq!(p.permute(&sigma.inverse()).permute(&sigma), p);
    }

    #[test]
    fn div_exact_detects_failure() {
        let p = &t(2, 1) * &t(2, 1);
        let d = &t(2, 1) - &t(2, 2);
        assert!(p.div_exact(&d).is_none());
        let q = &p * &d;
        assert_eq!(q.div_exact(&d).unwrap(), p);
    }

    #[test]
    fn div_exact_root_divides_products() {
        let a = LinearForm::root(4, 2, 4).to_polynomial();
        let rest = &(&t(4, 1) + &t(4, 3)) * &(&t(4, 1) - &t(4, 4).scale(&3.into()));
        let p = &a * &rest;
        assert_eq!(div_exact_root(&p, 2, 4).unwrap(), rest);
        assert!(div_exact_root(&rest, 2, 4).is_none());
    }

    #[test]
    fn grlex_leading_term() {
        // t1^2*t2 > t3^3 in grlex? both degree 3, lex: t1 wins
        let p = &(&t(3, 1) * &t(3, 1)) * &t(3, 2);
        let q = &(&t(3, 3) * &t(3, 3)) * &t(3, 3);
        let s = &p + &q;
        let (lead, _) = s.leading_term().unwrap();
        assert_eq!(lead.0, vec![2, 1, 0]);
    }

    #[test]
    fn homogeneity_bookkeeping() {
        let p = &(&t(3, 1) * &t(3, 2)) - &(&t(3, 3) * &t(3, 3));
        assert!(p.is_homogeneous(2));
        assert!(!(&p + &Polynomial::one(3)).is_homogeneous(2));
        assert_eq!(Polynomial::zero(3).degree(), None);
    }
}
