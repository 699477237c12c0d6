//! The seeded property battery behind `verify`.
//!
//! Sample k of suite s draws from ChaCha8 seeded with `--seed` on stream
//! (s << 32) | k, so results do not depend on scheduling.

use grassmann::groups::{
    check_identity, decompose_gamma, decompose_layers, decompose_omega_gamma_linear, decompose_sigma_prime,
    decompose_unipotent, dim_by_coordinates, dim_formula, jacobian_preimage_mod_top, member, sample_case, DimTarget,
    FactoredAutomorphism, GroupId, IdentityTag,
};
use grassmann::linsolve::{solve_partial_system, solve_xi_system};
use grassmann::sample;
use grassmann::skewcalc::{identity_decomposition, skew_partial, taylor_reconstruct, TaylorMode};
use grassmann::{Coefficient, Endomorphism, Error, GrassmannElement, InverseStrategy, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

type Check = std::result::Result<(), String>;

struct Suite<C> {
    name: &'static str,
    min_n: usize,
    run: fn(usize, &mut ChaCha8Rng) -> Check,
    _field: std::marker::PhantomData<C>,
}

pub const SUITES: [&str; 10] =
    ["ring", "calculus", "solvers", "inverse", "chain-rule", "decompose", "preimage", "identities", "dims", "round-trip"];

fn suites<C: Coefficient>() -> Vec<Suite<C>> {
    let mk = |name, min_n, run| Suite { name, min_n, run, _field: std::marker::PhantomData };
    vec![
        mk("ring", 1, ring::<C> as fn(usize, &mut ChaCha8Rng) -> Check),
        mk("calculus", 1, calculus::<C>),
        mk("solvers", 1, solvers::<C>),
        mk("inverse", 1, inverse::<C>),
        mk("chain-rule", 1, chain_rule::<C>),
        mk("decompose", 4, decompose::<C>),
        mk("preimage", 1, preimage::<C>),
        mk("identities", 1, identities::<C>),
        mk("dims", 4, dims),
        mk("round-trip", 1, round_trip::<C>),
    ]
}

#[derive(Serialize, Debug)]
pub struct Failure {
    pub sample: usize,
    pub counterexample: String,
}

#[derive(Serialize, Debug)]
pub struct SuiteReport {
    pub suite: String,
    pub samples: usize,
    pub passed: usize,
    pub skipped: Option<String>,
    pub failures: Vec<Failure>,
}

#[derive(Serialize, Debug)]
pub struct VerifyReport {
    pub seed: u64,
    pub suites: Vec<SuiteReport>,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.suites.iter().all(|s| s.failures.is_empty())
    }

    pub fn table(&self) -> String {
        let mut out = format!("{:<12} {:>7} {:>7}  status\n", "suite", "samples", "passed");
        for s in &self.suites {
            let status = match (&s.skipped, s.failures.is_empty()) {
                (Some(why), _) => format!("skip ({why})"),
                (None, true) => "PASS".into(),
                (None, false) => "FAIL".into(),
            };
            out.push_str(&format!("{:<12} {:>7} {:>7}  {status}\n", s.suite, s.samples, s.passed));
        }
        for s in self.suites.iter().filter(|s| !s.failures.is_empty()) {
            for f in s.failures.iter().take(3) {
                out.push_str(&format!("counterexample {} #{}: {}\n", s.suite, f.sample, f.counterexample));
            }
        }
        out.push_str(if self.ok() { "all checks passed" } else { "some checks failed" });
        out
    }
}

pub fn run<C: Coefficient>(n: usize, seed: u64, selection: &str, samples: usize) -> Result<VerifyReport> {
    let all = suites::<C>();
    let wanted: Vec<&str> = if selection.trim() == "all" {
        SUITES.to_vec()
    } else {
        selection.split(',').map(str::trim).filter(|s| !s.is_empty()).collect()
    };
    if let Some(bad) = wanted.iter().find(|w| !SUITES.contains(w)) {
        return Err(Error::InvalidParameter(format!("unknown suite '{bad}'; choose from {}", SUITES.join(", "))));
    }
    let mut reports = Vec::new();
    for (index, suite) in all.iter().enumerate().filter(|(_, s)| wanted.contains(&s.name)) {
        if n < suite.min_n {
            reports.push(SuiteReport {
                suite: suite.name.into(),
                samples: 0,
                passed: 0,
                skipped: Some(format!("needs n ≥ {}", suite.min_n)),
                failures: Vec::new(),
            });
            continue;
        }
        let results: Vec<Check> = (0..samples)
            .into_par_iter()
            .map(|k| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(((index as u64) << 32) | k as u64);
                (suite.run)(n, &mut rng)
            })
            .collect();
        let failures: Vec<Failure> = results
            .into_iter()
            .enumerate()
            .filter_map(|(k, r)| r.err().map(|counterexample| Failure { sample: k, counterexample }))
            .collect();
        reports.push(SuiteReport {
            suite: suite.name.into(),
            samples,
            passed: samples - failures.len(),
            skipped: None,
            failures,
        });
    }
    Ok(VerifyReport { seed, suites: reports })
}

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn lib<T>(r: Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| format!("{}: {e}", e.condition()))
}

fn any<C: Coefficient>(n: usize, rng: &mut ChaCha8Rng) -> GrassmannElement<C> {
    GrassmannElement::random(n, rng, 0.3, |_| true)
}

fn ring<C: Coefficient>(n: usize, rng: &mut ChaCha8Rng) -> Check {
    let (a, b, c) = (any::<C>(n, rng), any::<C>(n, rng), any::<C>(n, rng));
    ensure!(&(&a * &b) * &c == &a * &(&b * &c), "(ab)c != a(bc) for a = {a}, b = {b}, c = {c}");
    ensure!(&a * &(&b + &c) == &(&a * &b) + &(&a * &c), "a(b + c) != ab + ac for a = {a}, b = {b}, c = {c}");
    ensure!((&a * &b).involution() == &a.involution() * &b.involution(), "involution is not multiplicative at {a}, {b}");
    let i = rng.gen_range(1..=n);
    let xi = GrassmannElement::<C>::generator(n, i);
    ensure!((&xi * &xi).is_zero(), "x{i}² != 0");
    ensure!(&xi * &a == &a.involution() * &xi, "x{i}a != āx{i} for a = {a}");
    Ok(())
}

fn calculus<C: Coefficient>(n: usize, rng: &mut ChaCha8Rng) -> Check {
    let (a, b) = (any::<C>(n, rng), any::<C>(n, rng));
    let d = |i: usize, e: &GrassmannElement<C>| skew_partial(i, e).expect("index in range");
    for i in 1..=n {
        ensure!(d(i, &(&a * &b)) == &(&d(i, &a) * &b) + &(&a.involution() * &d(i, &b)), "Leibniz fails for ∂{i} at {a}, {b}");
        for j in 1..=n {
            ensure!(d(i, &d(j, &a)) == -d(j, &d(i, &a)), "∂{i}∂{j} != −∂{j}∂{i} at {a}");
            let xj = GrassmannElement::generator(n, j);
            let anti = &d(i, &(&xj * &a)) + &(&xj * &d(i, &a));
            ensure!(anti == if i == j { a.clone() } else { GrassmannElement::zero(n) }, "∂{i}x{j} + x{j}∂{i} != δ at {a}");
        }
    }
    ensure!(taylor_reconstruct(&a, TaylorMode::AtZero) == a, "Taylor at zero fails for {a}");
    ensure!(taylor_reconstruct(&a, TaylorMode::Projected) == a, "projected Taylor fails for {a}");
    ensure!(identity_decomposition(&a) == a, "identity operator fails for {a}");
    Ok(())
}

fn solvers<C: Coefficient>(n: usize, rng: &mut ChaCha8Rng) -> Check {
    let a = any::<C>(n, rng);
    let u: Vec<_> = (1..=n).map(|i| &GrassmannElement::generator(n, i) * &a).collect();
    let sol = lib(solve_xi_system(&u))?.particular;
    ensure!((1..=n).all(|i| &GrassmannElement::generator(n, i) * &sol == u[i - 1]), "x-system solution fails for a = {a}");
    let v: Vec<_> = (1..=n).map(|i| skew_partial(i, &a).expect("index in range")).collect();
    let sol = lib(solve_partial_system(&v))?.particular;
    ensure!(&sol - &a == GrassmannElement::constant(n, sol.constant_term() - a.constant_term()), "∂-system solution fails for a = {a}");
    Ok(())
}

fn inverse<C: Coefficient>(n: usize, rng: &mut ChaCha8Rng) -> Check {
    let s: Endomorphism<C> = sample::gamma_gl(n, rng);
    let f = lib(s.inverse(InverseStrategy::Formula))?;
    let i = lib(s.inverse(InverseStrategy::Iteration))?;
    ensure!(f == i, "strategies disagree on {s}");
    ensure!(s.then_apply(&f).is_identity() && f.then_apply(&s).is_identity(), "not an inverse of {s}");
    let u: Endomorphism<C> = sample::full_group(n, rng);
    ensure!(u.then_apply(&lib(u.inv())?).is_identity(), "resubstitution fails on {u}");
    Ok(())
}

fn chain_rule<C: Coefficient>(n: usize, rng: &mut ChaCha8Rng) -> Check {
    let s: Endomorphism<C> = sample::gamma_gl(n, rng).then_apply(&sample::phi_element(n, 3, rng));
    let t: Endomorphism<C> = sample::gamma_gl(n, rng).then_apply(&sample::phi_element(n, 3, rng));
    let (js, jt) = (lib(s.jacobian())?.det, lib(t.jacobian())?.det);
    ensure!(lib(s.then_apply(&t).jacobian())?.det == &s.act(&jt) * &js, "J(στ) != σ(J(τ))J(σ) for σ = {s}, τ = {t}");
    let si = lib(s.inv())?;
    ensure!(lib(si.jacobian())?.det == si.act(&lib(js.invert_unit())?), "J(σ⁻¹) != σ⁻¹(J(σ)⁻¹) for σ = {s}");
    Ok(())
}

fn round_trip_factorization<C: Coefficient>(what: &str, s: &Endomorphism<C>, f: Result<FactoredAutomorphism<C>>) -> Check {
    ensure!(lib(lib(f)?.verify(s))?, "{what} factorization fails for {s}");
    Ok(())
}

fn decompose<C: Coefficient>(n: usize, rng: &mut ChaCha8Rng) -> Check {
    let s: Endomorphism<C> = sample::full_group(n, rng);
    round_trip_factorization("oga", &s, decompose_omega_gamma_linear(&s))?;
    let u: Endomorphism<C> = sample::unipotent(n, rng);
    round_trip_factorization("unipotent", &u, decompose_unipotent(&u))?;
    let g: Endomorphism<C> = sample::gamma_element(n, rng).then_apply(&sample::phi_element(n, 3, rng));
    round_trip_factorization("gamma", &g, decompose_gamma(&g))?;
    round_trip_factorization("layers", &g, decompose_layers(&g))?;
    let p: Endomorphism<C> = sample::sigma_prime_element(n, rng);
    round_trip_factorization("sigma-prime", &p, decompose_sigma_prime(&p))?;
    Ok(())
}

fn preimage<C: Coefficient>(n: usize, rng: &mut ChaCha8Rng) -> Check {
    let v = GrassmannElement::<C>::random(n, rng, 0.4, |m| m != 0 && m.count_ones() % 2 == 0);
    let u = &GrassmannElement::one(n) + &v;
    let pre = lib(jacobian_preimage_mod_top(&u))?;
    ensure!(lib(member(&pre.sigma, GroupId::Gamma))?, "preimage of {u} is not in Γ");
    let top = GrassmannElement::monomial(n, grassmann::algebra::monomial::full_mask(n), pre.forced_top.clone());
    ensure!(lib(pre.sigma.jacobian())?.det == &u - &top, "J(preimage) misses {u}");
    ensure!(n % 2 == 0 || pre.forced_top.is_zero(), "odd n = {n} forced a top coefficient for {u}");
    Ok(())
}

fn identities<C: Coefficient>(n: usize, rng: &mut ChaCha8Rng) -> Check {
    for tag in IdentityTag::ALL.into_iter().filter(|t| t.min_n() <= n) {
        let case = lib(sample_case::<C, _>(tag, n, rng))?;
        ensure!(lib(check_identity(&case))?, "({}) fails: {case:?}", tag.name());
    }
    Ok(())
}

fn dims(n: usize, _rng: &mut ChaCha8Rng) -> Check {
    for g in DimTarget::all_for(n) {
        let (f, c) = (lib(dim_formula(g, n))?, lib(dim_by_coordinates(g, n))?);
        ensure!(f == c, "{g} at n = {n}: formula {f}, coordinates {c}");
    }
    Ok(())
}

fn round_trip<C: Coefficient>(n: usize, rng: &mut ChaCha8Rng) -> Check {
    let a = any::<C>(n, rng);
    ensure!(lib(GrassmannElement::<C>::parse(n, &a.to_string()))? == a, "element {a} does not re-parse");
    let s: Endomorphism<C> = sample::full_group(n, rng);
    ensure!(lib(Endomorphism::<C>::parse(n, &s.to_string()))? == s, "endomorphism {s} does not re-parse");
    Ok(())
}
