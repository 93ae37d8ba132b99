//! Canonical text rendering ("t1^2*t2 - 3*t3") and parsing, plus the JSON
//! term-map form. Both round-trip exactly.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Monomial, Polynomial};
use crate::error::{Error, Result};

/// Renders with the given variable names, or t1..tn when `names` is `None`.
/// Terms appear in descending graded-lex order.
pub fn render(p: &Polynomial, names: Option<&[&str]>) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let var_name = |k: usize| -> String {
        match names {
            Some(ns) => ns[k].to_string(),
            None => format!("t{}", k + 1),
        }
    };
    let mut out = String::new();
    for (idx, (m, c)) in p.terms.iter().rev().enumerate() {
        let neg = c.is_negative();
        let abs = c.abs();
        if idx == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mut factors: Vec<String> = Vec::new();
        if !abs.is_one() || m.degree() == 0 {
            factors.push(abs.to_string());
        }
        for (k, &e) in m.0.iter().enumerate() {
            match e {
                0 => {}
                1 => factors.push(var_name(k)),
                _ => factors.push(format!("{}^{}", var_name(k), e)),
            }
        }
        out.push_str(&factors.join("*"));
    }
    out
}

/// Parses the canonical text form back into a polynomial in `nvars` variables.
pub fn parse_polynomial(nvars: usize, input: &str) -> Result<Polynomial> {
    let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(Error::invalid("empty polynomial string"));
    }
    if s == "0" {
        return Ok(Polynomial::zero(nvars));
    }
    // split into signed terms at top-level +/-
    let bytes = s.as_bytes();
    let mut terms: Vec<(bool, &str)> = Vec::new();
    let mut start = 0usize;
    let mut sign_neg = false;
    let mut i = 0usize;
    if bytes[0] == b'+' || bytes[0] == b'-' {
        sign_neg = bytes[0] == b'-';
        start = 1;
        i = 1;
    }
    while i < bytes.len() {
        let c = bytes[i];
        if (c == b'+' || c == b'-') && bytes[i - 1] != b'^' {
            terms.push((sign_neg, &s[start..i]));
            sign_neg = c == b'-';
            start = i + 1;
        }
        i += 1;
    }
    terms.push((sign_neg, &s[start..]));

    let mut p = Polynomial::zero(nvars);
    for (neg, term) in terms {
        if term.is_empty() {
            return Err(Error::invalid("empty term in polynomial string"));
        }
        let mut coeff = BigInt::one();
        let mut exps = vec![0u16; nvars];
        for factor in term.split('*') {
            if factor.is_empty() {
                return Err(Error::invalid("empty factor in polynomial string"));
            }
            if let Some(rest) = factor.strip_prefix('t') {
                let (var_str, exp_str) = match rest.split_once('^') {
                    Some((v, e)) => (v, Some(e)),
                    None => (rest, None),
                };
                let var: usize = var_str
                    .parse()
                    .map_err(|_| Error::invalid(format!("bad variable '{factor}'")))?;
                if var == 0 || var > nvars {
                    return Err(Error::invalid(format!(
                        "variable t{var} out of range for {nvars} variables"
                    )));
                }
                let exp: u16 = match exp_str {
                    Some(e) => e
                        .parse()
                        .map_err(|_| Error::invalid(format!("bad exponent '{factor}'")))?,
                    None => 1,
                };
                exps[var - 1] = exps[var - 1]
                    .checked_add(exp)
                    .ok_or_else(|| Error::invalid("exponent overflow"))?;
            } else {
                let c = BigInt::from_str(factor)
                    .map_err(|_| Error::invalid(format!("bad coefficient '{factor}'")))?;
                coeff *= c;
            }
        }
        if neg {
            coeff = -coeff;
        }
        p.add_term(Monomial(exps), coeff);
    }
    Ok(p)
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    exp: Vec<u16>,
    coeff: String,
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    n: usize,
    terms: Vec<TermJson>,
}

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        PolyJson {
            n: self.nvars,
            terms: self
                .terms
                .iter()
                .rev()
                .map(|(m, c)| TermJson {
                    exp: m.0.clone(),
                    coeff: c.to_string(),
                })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = PolyJson::deserialize(deserializer)?;
        let mut p = Polynomial::zero(raw.n);
        for t in raw.terms {
            if t.exp.len() != raw.n {
                return Err(D::Error::custom("exponent vector length mismatch"));
            }
            let c = BigInt::from_str(&t.coeff).map_err(D::Error::custom)?;
            if c.is_zero() {
                return Err(D::Error::custom("zero coefficient in term map"));
            }
            p.add_term(Monomial(t.exp), c);
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_spec_shape() {
        let n = 3;
        let t1 = Polynomial::variable(n, 1);
        let t2 = Polynomial::variable(n, 2);
        let t3 = Polynomial::variable(n, 3);
        let p = &(&(&t1 * &t1) * &t2) - &t3.scale(&3.into());
        assert_eq!(p.to_string(), "t1^2*t2 - 3*t3");
    }

    #[test]
    fn parse_round_trips() {
        for s in [
            "t1^2*t2 - 3*t3",
            "0",
            "-7",
            "-t1 + t2",
            "t3^4 + 5*t1*t2*t3 - 2",
        ] {
            let p = parse_polynomial(3, s).unwrap();
            assert_eq!(p.to_string(), s);
            let q = parse_polynomial(3, &p.to_string()).unwrap();
            assert_eq!(p, q);
        }
    }

    #[test]
    fn json_round_trips() {
        let p = parse_polynomial(4, "2*t1^3 - t2*t4 + 11").unwrap();
        let js = serde_json::to_string(&p).unwrap();
        let q: Polynomial = serde_json::from_str(&js).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(parse_polynomial(3, "t4").is_err());
        assert!(parse_polynomial(3, "").is_err());
        assert!(parse_polynomial(3, "t1^").is_err());
        assert!(parse_polynomial(3, "**").is_err());
    }
}
