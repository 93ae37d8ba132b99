//! Multivariate gcd over ℤ via integer content, recursive content /
//! primitive-part splitting, and a primitive pseudo-remainder sequence in the
//! chosen main variable.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;

use super::{Monomial, Polynomial};

/// Flips the sign so the grlex-leading coefficient is positive.
pub(crate) fn normalize_sign(p: &Polynomial) -> Polynomial {
    match p.leading_term() {
        Some((_, c)) if c.is_negative() => -p,
        _ => p.clone(),
    }
}

/// gcd of two polynomials over ℤ, sign-normalized (grlex-leading coefficient
/// positive). gcd(0, 0) = 0.
pub fn gcd(f: &Polynomial, g: &Polynomial) -> Polynomial {
    assert_eq!(f.nvars(), g.nvars(), "variable count mismatch");
    if f.is_zero() {
        return normalize_sign(g);
    }
    if g.is_zero() {
        return normalize_sign(f);
    }
    if f == g {
        return normalize_sign(f);
    }
    let main = match main_variable(f, g) {
        Some(v) => v,
        None => {
            // both constant
            return Polynomial::constant(f.nvars(), f.content().gcd(&g.content()));
        }
    };
    // split integer content up front to keep PRS coefficients small
    let icf = f.content();
    let icg = g.content();
    let f = f
        .div_exact(&Polynomial::constant(f.nvars(), icf.clone()))
        .unwrap();
    let g = g
        .div_exact(&Polynomial::constant(g.nvars(), icg.clone()))
        .unwrap();
    let ic = icf.gcd(&icg);

    let (cf, pf) = content_and_primitive(&f, main);
    let (cg, pg) = content_and_primitive(&g, main);
    let cont_gcd = gcd(&cf, &cg);

    let mut r0 = pf;
    let mut r1 = pg;
    if degree_in_main(&r0, main) < degree_in_main(&r1, main) {
        std::mem::swap(&mut r0, &mut r1);
    }
    while !r1.is_zero() {
        let r = pseudo_rem(&r0, &r1, main);
        r0 = r1;
        r1 = if r.is_zero() {
            r
        } else {
            content_and_primitive(&r, main).1
        };
    }
    let pp = content_and_primitive(&r0, main).1;
    let result = &(&cont_gcd * &pp)
        * &Polynomial::constant(cont_gcd.nvars(), ic);
    normalize_sign(&result)
}

/// Highest-index variable occurring in either polynomial.
fn main_variable(f: &Polynomial, g: &Polynomial) -> Option<usize> {
    (1..=f.nvars())
        .rev()
        .find(|&k| f.degree_in(k) > 0 || g.degree_in(k) > 0)
}

fn degree_in_main(p: &Polynomial, main: usize) -> i64 {
    if p.is_zero() {
        -1
    } else {
        p.degree_in(main) as i64
    }
}

/// Coefficients of `p` viewed as univariate in t_main (index = exponent);
/// entries are polynomials with t_main-degree 0.
fn main_coefficients(p: &Polynomial, main: usize) -> Vec<Polynomial> {
    let d = p.degree_in(main) as usize;
    let mut out = vec![Polynomial::zero(p.nvars()); d + 1];
    for (m, c) in p.terms() {
        let e = m.0[main - 1] as usize;
        let mut rest = m.0.clone();
        rest[main - 1] = 0;
        out[e].add_term(Monomial(rest), c.clone());
    }
    out
}

/// Content (gcd of t_main-coefficients) and primitive part w.r.t. t_main.
fn content_and_primitive(p: &Polynomial, main: usize) -> (Polynomial, Polynomial) {
    let coeffs = main_coefficients(p, main);
    let mut cont = Polynomial::zero(p.nvars());
    for c in coeffs.iter().filter(|c| !c.is_zero()) {
        cont = gcd(&cont, c);
        if cont.is_constant() && cont.content() == BigInt::from(1) {
            break;
        }
    }
    let pp = p.div_exact(&cont).expect("content divides");
    (cont, pp)
}

/// Pseudo-remainder of `a` by `b` in t_main: repeatedly kills the leading
/// t_main-coefficient after scaling by lc(b).
fn pseudo_rem(a: &Polynomial, b: &Polynomial, main: usize) -> Polynomial {
    let db = degree_in_main(b, main);
    debug_assert!(db >= 0);
    let b_coeffs = main_coefficients(b, main);
    let lcb = b_coeffs.last().unwrap().clone();
    let nvars = a.nvars();
    let mut r = a.clone();
    loop {
        let da = degree_in_main(&r, main);
        if r.is_zero() || da < db {
            return r;
        }
        let r_coeffs = main_coefficients(&r, main);
        let lcr = r_coeffs.last().unwrap().clone();
        // r := lc(b)·r − lc(r)·t_main^(da−db)·b
        let shift = (da - db) as u16;
        let mut shifted_b = Polynomial::zero(nvars);
        for (m, c) in b.terms() {
            let mut e = m.0.clone();
            e[main - 1] += shift;
            shifted_b.add_term(Monomial(e), c.clone());
        }
        r = &(&r * &lcb) - &(&shifted_b * &lcr);
        debug_assert!(degree_in_main(&r, main) < da);
    }
}

/// The reduced fraction num/den with den sign-normalized; used by rational
/// arithmetic. `den` must be non-zero.
pub(crate) fn reduce_fraction(num: &Polynomial, den: &Polynomial) -> (Polynomial, Polynomial) {
    debug_assert!(!den.is_zero());
    if num.is_zero() {
        return (Polynomial::zero(num.nvars()), Polynomial::one(den.nvars()));
    }
    let g = gcd(num, den);
    let mut n = num.div_exact(&g).expect("gcd divides numerator");
    let mut d = den.div_exact(&g).expect("gcd divides denominator");
    if d.leading_term().map_or(false, |(_, c)| c.is_negative()) {
        n = -&n;
        d = -&d;
    }
    (n, d)
}
