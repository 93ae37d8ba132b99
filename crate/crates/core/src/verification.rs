//! The union of every module's verification suite for one degree n, run as
//! named verdicts. The CLI `verify` command is a thin wrapper over this; its
//! exit status is 0 exactly when every verdict here passes.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::cocycle::{fixed_point_permutation, verify_cocycle, CyclicAlgebraSpec};
use crate::cycles::{act, gamma, monomial_lift, MonodromyElement};
use crate::equivariant::{chow_ranks_full, EquivariantClass, Localizer};
use crate::error::Result;
use crate::graph::{EdgeKind, GkmGraph, Variety};
use crate::motives::{
    decomposition_report, middle_basis_check, oracle_deg_x, presentation_deg_x,
    xi_identification, Verdict,
};
use crate::poly::{divides, LinearForm, Polynomial, RationalFunction};

/// The closed-form rank profile the decomposition predicts.
pub fn expected_chow_profile(n: usize, variety: Variety) -> Vec<usize> {
    let dim = variety.dim(n);
    (0..=dim)
        .map(|m| {
            let mirrored = m.min(dim - m);
            match variety {
                Variety::X => mirrored + 1,
                Variety::Y => {
                    if 2 * m == dim {
                        2 * n - 2
                    } else {
                        mirrored + 1
                    }
                }
            }
        })
        .collect()
}

fn graph_checks(n: usize) -> Result<Vec<Verdict>> {
    let x = GkmGraph::build(n, Variety::X)?;
    let y = GkmGraph::build(n, Variety::Y)?;
    let mut out = Vec::new();

    let ok = x
        .vertices()
        .iter()
        .all(|&v| x.valency(v).unwrap() == x.dim())
        && y.vertices()
            .iter()
            .all(|&v| y.valency(v).unwrap() == y.dim());
    out.push(Verdict::new(
        "graph: vertex valency equals the variety dimension",
        ok,
        "",
    ));

    let x_plane = x
        .edges()
        .iter()
        .filter(|e| e.kind != EdgeKind::RootConic)
        .count();
    out.push(Verdict::new(
        "graph: Y is X minus the root-conic edges",
        x.vertices() == y.vertices() && x_plane == y.edges().len(),
        "",
    ));

    let mut antisym = true;
    for e in x.edges() {
        if e.weight_at(e.second) != e.weight_at(e.first).negated() {
            antisym = false;
        }
    }
    out.push(Verdict::new(
        "graph: recorded edge weights are antisymmetric",
        antisym,
        "",
    ));

    let mut gkm_condition = true;
    for &v in x.vertices() {
        let ws: Vec<Polynomial> = x
            .incident_edges(v)
            .unwrap()
            .map(|e| e.weight_at(v).to_polynomial())
            .collect();
        for a in 0..ws.len() {
            for b in a + 1..ws.len() {
                if ws[a].div_exact(&ws[b]).is_some() && ws[b].div_exact(&ws[a]).is_some() {
                    gkm_condition = false;
                }
            }
        }
    }
    out.push(Verdict::new(
        "graph: tangent weights at each vertex are pairwise non-proportional",
        gkm_condition,
        "",
    ));

    let mut maps_edges = true;
    for k in 0..n {
        let p = fixed_point_permutation(n, k)?;
        for g in [&x, &y] {
            for e in g.edges() {
                let a = p.apply(e.first);
                let b = p.apply(e.second);
                let image = g.edges().iter().find(|e2| {
                    (e2.first == a && e2.second == b) || (e2.first == b && e2.second == a)
                });
                match image {
                    Some(e2) if e2.kind == e.kind => {}
                    _ => maps_edges = false,
                }
            }
        }
    }
    out.push(Verdict::new(
        "graph: the cocycle permutation maps edges to edges preserving kind",
        maps_edges,
        "",
    ));
    Ok(out)
}

fn cocycle_checks(n: usize) -> Result<Vec<Verdict>> {
    let report = verify_cocycle(CyclicAlgebraSpec::new(n)?);
    let mut out = vec![Verdict::new(
        format!("cocycle: all {} generator identities hold", report.identities.len()),
        report.all_pass(),
        report
            .identities
            .iter()
            .filter(|i| !i.pass)
            .map(|i| i.identity.clone())
            .collect::<Vec<_>>()
            .join("; "),
    )];

    let mut homo = true;
    for a in 0..n {
        for b in 0..n {
            let pa = fixed_point_permutation(n, a)?;
            let pb = fixed_point_permutation(n, b)?;
            if pa.compose(&pb) != fixed_point_permutation(n, (a + b) % n)? {
                homo = false;
            }
        }
    }
    let eta = fixed_point_permutation(n, 1)?;
    let mut pow = eta.clone();
    let mut order = 1;
    while !pow.is_identity() {
        pow = pow.compose(&eta);
        order += 1;
    }
    out.push(Verdict::new(
        "cocycle: fixed-point permutations form a cyclic group with generator of order n",
        homo && order == n,
        format!("order {order}"),
    ));
    Ok(out)
}

fn gamma_membership_checks(n: usize) -> Result<Vec<Verdict>> {
    let y = GkmGraph::build(n, Variety::Y)?;
    let mut ok = true;
    let mut detail = String::new();
    for ell in 1..=n {
        let g = gamma(&y, ell)?;
        if !g.is_gkm() {
            ok = false;
            detail = format!("gamma_{ell} violates edges");
        }
        if g.degree() as usize != n - 2 || g.support().len() != n - 1 {
            ok = false;
        }
    }
    Ok(vec![Verdict::new(
        "gamma: every gamma class satisfies the edge divisibility conditions",
        ok,
        detail,
    )])
}

fn monodromy_checks(n: usize) -> Result<Vec<Verdict>> {
    let y = GkmGraph::build(n, Variety::Y)?;
    let mut ok = true;
    for k in 0..n {
        let m = MonodromyElement::power_of_cycle(n, k)?;
        for ell in 1..=n {
            let image = act(&m, &gamma(&y, ell)?)?;
            let target = ((ell + k - 1) % n) + 1;
            if image != gamma(&y, target)? {
                ok = false;
            }
        }
    }
    Ok(vec![Verdict::new(
        "monodromy: act(η^k, γ_ℓ) = γ_{η^k(ℓ)} for all k, ℓ",
        ok,
        "",
    )])
}

/// The interpolation oracle: the middle self-pairing sum, viewed as a
/// rational function of t_ℓ, evaluates to (−1)^{n−2} at the n−1 points
/// t_ℓ := t_i.
pub fn lagrange_oracle(n: usize, ell: usize) -> Result<bool> {
    // (−1)^{n−2}
    let sign = if n % 2 == 0 { 1 } else { -1 };
    let expected = RationalFunction::from_polynomial(Polynomial::constant(n, sign));
    for i in (1..=n).filter(|&i| i != ell) {
        let mut sum = RationalFunction::zero(n);
        for j in (1..=n).filter(|&j| j != ell) {
            let mut num = Polynomial::one(n);
            let mut den = Polynomial::one(n);
            for s in (1..=n).filter(|&s| s != ell && s != j) {
                num = &num * &LinearForm::root(n, ell, s).to_polynomial();
                den = &den * &LinearForm::root(n, s, j).to_polynomial();
            }
            // evaluate the numerator at t_ℓ := t_i; the denominator is free of t_ℓ
            let num_eval = num.subst_var_equal(ell, i);
            sum = &sum + &RationalFunction::new(num_eval, den)?;
        }
        if sum != expected {
            return Ok(false);
        }
    }
    Ok(true)
}

fn gamma_pairing_checks(n: usize) -> Result<Vec<Verdict>> {
    let y = GkmGraph::build(n, Variety::Y)?;
    let loc = Localizer::new(&y);
    let sign = BigInt::from(if n % 2 == 0 { 1 } else { -1 });
    let gammas: Vec<EquivariantClass> =
        (1..=n).map(|l| gamma(&y, l)).collect::<Result<_>>()?;
    let mut ok = true;
    for (i, a) in gammas.iter().enumerate() {
        for (j, b) in gammas.iter().enumerate() {
            let v = loc.pairing_integer(a, b)?;
            let expected = if i == j { sign.clone() } else { BigInt::from(0) };
            if v != expected {
                ok = false;
            }
        }
    }
    let mut out = vec![Verdict::new(
        "pairing: ⟨γ_k, γ_ℓ⟩ = (−1)^{n−2}·δ_kℓ by localization",
        ok,
        "",
    )];

    let mut oracle_ok = true;
    for ell in 1..=n {
        if !lagrange_oracle(n, ell)? {
            oracle_ok = false;
        }
    }
    out.push(Verdict::new(
        "pairing: interpolation oracle confirms the gamma self-pairing",
        oracle_ok,
        "",
    ));
    Ok(out)
}

fn rank_checks(n: usize) -> Result<Vec<Verdict>> {
    let mut out = Vec::new();
    for variety in [Variety::X, Variety::Y] {
        let g = GkmGraph::build(n, variety)?;
        let table = chow_ranks_full(&g)?;
        let expected = expected_chow_profile(n, variety);
        out.push(Verdict::new(
            format!("ranks: chow profile of {variety} matches the decomposition"),
            table.chow_ranks == expected,
            format!("computed {:?}, expected {expected:?}", table.chow_ranks),
        ));
        out.push(Verdict::new(
            format!("ranks: total chow rank of {variety} is n(n−1)"),
            table.total_chow_rank() == n * (n - 1),
            format!("total {}", table.total_chow_rank()),
        ));
    }
    Ok(out)
}

fn dual_route_checks(n: usize) -> Result<Vec<Verdict>> {
    let x = GkmGraph::build(n, Variety::X)?;
    let loc = Localizer::new(&x);
    let one = EquivariantClass::one(x.clone());
    let top = 2 * n - 3;
    let mut ok = true;
    let mut detail = String::new();
    for a in 0..=top as u32 {
        let b = top as u32 - a;
        let via_loc = loc
            .pairing_integer(&monomial_lift(&x, a, b), &one)?
            .to_i128()
            .expect("intersection number fits i128");
        let via_ring = presentation_deg_x(n, a, b);
        let via_product = oracle_deg_x(n, a, b);
        if via_loc != via_ring || via_ring != via_product {
            ok = false;
            detail = format!(
                "deg(h^{a}·ξ^{b}): localization {via_loc}, presentation {via_ring}, product oracle {via_product}"
            );
        }
    }
    let mut out = vec![Verdict::new(
        "intersection numbers: localization, ring presentation, and product oracle agree",
        ok,
        detail,
    )];
    let idents = xi_identification(n);
    out.push(Verdict::new(
        "intersection numbers: ξ ↦ h1+h2 is the unique reconciling identification",
        idents == vec!["h1+h2"],
        format!("candidates {idents:?}"),
    ));
    Ok(out)
}

/// Small deterministic generator for the seeded spot checks (xorshift64*).
pub struct SpotRng(u64);

impl SpotRng {
    pub fn new(seed: u64) -> Self {
        SpotRng(seed | 1)
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        self.0 = x;
        x.wrapping_mul(0x2545F4914F6CDD1D)
    }

    /// uniform in 0..bound
    pub fn below(&mut self, bound: u64) -> u64 {
        self.next_u64() % bound
    }

    pub fn int_in(&mut self, lo: i64, hi: i64) -> i64 {
        lo + self.below((hi - lo + 1) as u64) as i64
    }
}

/// A random sparse polynomial for spot checks and randomized suites.
pub fn random_polynomial(rng: &mut SpotRng, nvars: usize, max_terms: u64, max_exp: u64) -> Polynomial {
    let terms = rng.below(max_terms + 1);
    let mut p = Polynomial::zero(nvars);
    for _ in 0..terms {
        let exps: Vec<u16> = (0..nvars).map(|_| rng.below(max_exp + 1) as u16).collect();
        let c = rng.int_in(-5, 5);
        p = &p
            + &Polynomial::from_terms(
                nvars,
                [(crate::poly::Monomial(exps), BigInt::from(c))],
            );
    }
    p
}

fn polynomial_kernel_checks() -> Vec<Verdict> {
    let mut rng = SpotRng::new(0x5eed);
    let nvars = 4;
    let random_poly =
        |rng: &mut SpotRng| -> Polynomial { random_polynomial(rng, nvars, 5, 2) };
    let mut ring_ok = true;
    let mut div_ok = true;
    for _ in 0..40 {
        let a = random_poly(&mut rng);
        let b = random_poly(&mut rng);
        let c = random_poly(&mut rng);
        if &(&a + &b) * &c != &(&a * &c) + &(&b * &c) {
            ring_ok = false;
        }
        if &(&a * &b) * &c != &a * &(&b * &c) {
            ring_ok = false;
        }
        if &a * &b != &b * &a {
            ring_ok = false;
        }
        let alpha = LinearForm::root(nvars, 1, 3);
        if !divides(&alpha, &(&a * &alpha.to_polynomial())).unwrap() {
            div_ok = false;
        }
    }
    vec![
        Verdict::new("polynomials: ring axioms on seeded random inputs", ring_ok, ""),
        Verdict::new(
            "polynomials: root forms divide their multiples",
            div_ok,
            "",
        ),
    ]
}

/// Every check of every module for one degree, in deterministic order.
/// `jobs` bounds the number of worker threads; output is identical for any
/// worker count.
pub fn verification_suite(n: usize, jobs: usize) -> Result<Vec<Verdict>> {
    type Task = Box<dyn FnOnce() -> Result<Vec<Verdict>> + Send>;
    let tasks: Vec<Task> = vec![
        Box::new(move || Ok(polynomial_kernel_checks())),
        Box::new(move || graph_checks(n)),
        Box::new(move || cocycle_checks(n)),
        Box::new(move || gamma_membership_checks(n)),
        Box::new(move || monodromy_checks(n)),
        Box::new(move || gamma_pairing_checks(n)),
        Box::new(move || Ok(middle_basis_check(n)?.verdicts)),
        Box::new(move || rank_checks(n)),
        Box::new(move || dual_route_checks(n)),
        Box::new(move || Ok(decomposition_report(n)?.verdicts)),
    ];
    let count = tasks.len();
    let jobs = jobs.max(1).min(count);

    if jobs == 1 {
        let mut out = Vec::new();
        for t in tasks {
            out.extend(t()?);
        }
        return Ok(out);
    }

    let slots: Vec<std::sync::Mutex<Option<Result<Vec<Verdict>>>>> =
        (0..count).map(|_| std::sync::Mutex::new(None)).collect();
    let queue: std::sync::Mutex<Vec<(usize, Task)>> =
        std::sync::Mutex::new(tasks.into_iter().enumerate().rev().collect());
    std::thread::scope(|scope| {
        for _ in 0..jobs {
            scope.spawn(|| loop {
                let job = queue.lock().unwrap().pop();
                match job {
                    Some((idx, task)) => {
                        let result = task();
                        *slots[idx].lock().unwrap() = Some(result);
                    }
                    None => break,
                }
            });
        }
    });
    let mut out = Vec::new();
    for slot in slots {
        out.extend(slot.into_inner().unwrap().expect("task ran")?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::motives::all_pass;

    #[test]
    fn expected_profiles_match_named_cases() {
        assert_eq!(expected_chow_profile(3, Variety::X), vec![1, 2, 2, 1]);
        assert_eq!(
            expected_chow_profile(5, Variety::X),
            vec![1, 2, 3, 4, 4, 3, 2, 1]
        );
        assert_eq!(expected_chow_profile(3, Variety::Y), vec![1, 4, 1]);
        assert_eq!(
            expected_chow_profile(5, Variety::Y),
            vec![1, 2, 3, 8, 3, 2, 1]
        );
    }

    #[test]
    fn lagrange_oracle_small() {
        for n in 3..=5 {
            for ell in 1..=n {
                assert!(lagrange_oracle(n, ell).unwrap(), "n={n} ell={ell}");
            }
        }
    }

    #[test]
    fn suite_passes_at_n3() {
        let verdicts = verification_suite(3, 1).unwrap();
        assert!(all_pass(&verdicts), "{verdicts:#?}");
    }

    #[test]
    fn suite_is_deterministic_across_job_counts() {
        let a = verification_suite(3, 1).unwrap();
        let b = verification_suite(3, 4).unwrap();
        let names_a: Vec<_> = a.iter().map(|v| (&v.name, v.pass)).collect();
        let names_b: Vec<_> = b.iter().map(|v| (&v.name, v.pass)).collect();
        assert_eq!(names_a, names_b);
    }

    #[test]
    fn suite_at_n4_fails_only_the_as_stated_gram() {
        let verdicts = verification_suite(4, 2).unwrap();
        let failing: Vec<_> = verdicts.iter().filter(|v| !v.pass).collect();
        assert_eq!(failing.len(), 1, "{failing:?}");
        assert!(failing[0].name.contains("as stated"));
    }
}
