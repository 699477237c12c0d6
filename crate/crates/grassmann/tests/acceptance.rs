//! The ten acceptance criteria, each run at its stated size and time budget.
//! Every criterion prints one PASS/FAIL line; the test fails if any criterion does.

use std::collections::HashSet;
use std::time::{Duration, Instant};

use grassmann::algebra::monomial::full_mask;
use grassmann::endo::{scaling, top_shift};
use grassmann::groups::{
    check_identity, decompose_gamma, decompose_layers, decompose_omega_gamma_linear, decompose_sigma_prime,
    decompose_unipotent, dim_by_coordinates, dim_formula, jacobian_preimage, jacobian_preimage_mod_top, member, pi_n,
    sample_case, DimTarget, FactoredAutomorphism, GroupId, IdentityTag,
};
use grassmann::linsolve::{solve_partial_system, solve_xi_system};
use grassmann::sample;
use grassmann::skewcalc::{identity_decomposition, skew_partial, taylor_reconstruct, TaylorMode};
use grassmann::{Coefficient, Endomorphism, Error, Fp, GrassmannElement, InverseStrategy, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn ok<T>(r: grassmann::Result<T>, what: &str) -> Result<T, String> {
    r.map_err(|e| format!("{what}: {e}"))
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn c1_dimension_tables() -> Outcome {
    let mut checked = 0;
    for n in 4..=10 {
        for g in DimTarget::all_for(n) {
            let f = ok(dim_formula(g, n), "formula")?;
            let c = ok(dim_by_coordinates(g, n), "coordinates")?;
            ensure!(f == c, "{g} at n = {n}: formula {f} vs coordinates {c}");
            checked += 1;
        }
    }
    let spots = [
        (DimTarget::Sigma, 4, 10),
        (DimTarget::Sigma, 5, 40),
        (DimTarget::Sigma, 6, 126),
        (DimTarget::Gamma, 5, 55),
        (DimTarget::SigmaPrime, 6, 60),
        (DimTarget::SigmaDoublePrime, 6, 81),
        (DimTarget::GammaModSigma, 5, 15),
        (DimTarget::GammaModSigma, 6, 30),
    ];
    for (g, n, v) in spots {
        let f = ok(dim_formula(g, n), "formula")?;
        ensure!(f == v, "{g} at n = {n}: {f} != {v}");
    }
    Ok(format!("{checked} table entries, {} spot values", spots.len()))
}

fn c2_consistency() -> Outcome {
    for n in 4..=10 {
        let d = |g| dim_formula(g, n).unwrap();
        ensure!(d(DimTarget::Sigma) == d(DimTarget::SigmaPrime) + d(DimTarget::FDoublePrime), "Σ = Σ′ + F″ fails at n = {n}");
        ensure!(d(DimTarget::Gamma) == d(DimTarget::Sigma) + (1u64 << (n - 1)) - pi_n(n), "Γ = Σ + 2^(n-1) − π fails at n = {n}");
        let c2 = (n * (n - 1) / 2) as u64;
        ensure!(d(DimTarget::SigmaDoublePrime) == d(DimTarget::Sigma) - (n as u64 - 3) * c2, "Σ″ fails at n = {n}");
    }
    Ok("n = 4..10".into())
}

fn inversion_agrees<C: Coefficient>(count: usize, seed: u64) -> Result<(), String> {
    let mut r = rng(seed);
    for k in 0..count {
        let s: Endomorphism<C> = sample::gamma_gl(5, &mut r);
        let a = ok(s.inverse(InverseStrategy::Formula), "formula")?;
        let b = ok(s.inverse(InverseStrategy::Iteration), "iteration")?;
        ensure!(a == b, "sample {k}: strategies disagree for {s}");
        ensure!(s.then_apply(&a).is_identity() && a.then_apply(&s).is_identity(), "sample {k}: not an inverse of {s}");
    }
    Ok(())
}

fn c3_inversion() -> Outcome {
    inversion_agrees::<Fp<7>>(200, 31)?;
    inversion_agrees::<Rational>(50, 32)?;
    Ok("200 over F7, 50 over Q at n = 5".into())
}

fn c4_chain_rule() -> Outcome {
    let mut r = rng(41);
    for n in [4, 5] {
        for k in 0..200 {
            let draw = |r: &mut ChaCha8Rng| -> Endomorphism<Fp<7>> {
                sample::gamma_gl(n, r).then_apply(&sample::phi_element(n, 3, r))
            };
            let s = draw(&mut r);
            let t = draw(&mut r);
            let js = ok(s.jacobian(), "J(σ)")?.det;
            let jt = ok(t.jacobian(), "J(τ)")?.det;
            let jst = ok(s.then_apply(&t).jacobian(), "J(στ)")?.det;
            ensure!(jst == &s.act(&jt) * &js, "n = {n}, pair {k}: J(στ) != σ(J(τ))J(σ)");
            let si = ok(s.inv(), "σ⁻¹")?;
            let jsi = ok(si.jacobian(), "J(σ⁻¹)")?.det;
            ensure!(jsi == si.act(&ok(js.invert_unit(), "J(σ)⁻¹")?), "n = {n}, pair {k}: J(σ⁻¹) != σ⁻¹(J(σ)⁻¹)");
        }
    }
    Ok("200 pairs at each of n = 4, 5".into())
}

type F = Fp<101>;

fn check_factorization(
    what: &str,
    s: &Endomorphism<F>,
    f: grassmann::Result<FactoredAutomorphism<F>>,
) -> Result<(), String> {
    let f = ok(f, what)?;
    ensure!(f.recompose() == *s, "{what}: recomposition differs for {s}");
    ensure!(ok(f.verify(s), what)?, "{what}: a factor fails its membership predicate for {s}");
    Ok(())
}

fn c5_factorizations() -> Outcome {
    let mut r = rng(51);
    for n in [5, 6] {
        for _ in 0..100 {
            let s: Endomorphism<F> = sample::full_group(n, &mut r);
            check_factorization("oga", &s, decompose_omega_gamma_linear(&s))?;
            let u: Endomorphism<F> = sample::unipotent(n, &mut r);
            check_factorization("unipotent", &u, decompose_unipotent(&u))?;
            let g: Endomorphism<F> = sample::gamma_element(n, &mut r).then_apply(&sample::phi_element(n, 3, &mut r));
            check_factorization("gamma", &g, decompose_gamma(&g))?;
            check_factorization("layers", &g, decompose_layers(&g))?;
            let sp: Endomorphism<F> = sample::sigma_prime_element(n, &mut r);
            check_factorization("sigma-prime", &sp, decompose_sigma_prime(&sp))?;
        }
    }
    Ok("5 algorithms x 100 inputs at each of n = 5, 6".into())
}

fn c6_three_generators() -> Outcome {
    type G = Endomorphism<Fp<3>>;
    let n = 3;
    let params: Vec<Vec<Fp<3>>> =
        (0..27i64).map(|code| (0..3).map(|k| Fp::<3>::new(code / 3i64.pow(k) % 3)).collect()).collect();
    let maps: Vec<G> = params.iter().map(|l| top_shift(n, l)).collect();
    for (l, g) in params.iter().zip(&maps) {
        ensure!(ok(member(g, GroupId::Gamma), "member")?, "{g} is not in Γ");
        for (m, h) in params.iter().zip(&maps) {
            let sum: Vec<_> = l.iter().zip(m).map(|(a, b)| *a + *b).collect();
            ensure!(g.then_apply(h) == top_shift(n, &sum), "Γ is not K³ under composition");
        }
    }
    let mut jacobians = HashSet::new();
    let mut sigma = 0;
    for g in &maps {
        let j = ok(g.jacobian(), "J")?.det;
        ensure!(j.is_even() && j.constant_term().is_one(), "J({g}) = {j} is not in E′₃");
        if j.is_one() {
            sigma += 1;
            ensure!(g.is_identity(), "{g} has J = 1");
        }
        jacobians.insert(j);
    }
    ensure!(sigma == 1, "|Σ| = {sigma}");
    let e3_size = 3usize.pow((0..8u32).filter(|m| m.count_ones() == 2).count() as u32);
    ensure!(jacobians.len() == e3_size, "J hits {} of the {e3_size} elements of E′₃", jacobians.len());
    Ok("Γ ≅ K³, Σ = {e}, J bijective onto 27 elements".into())
}

fn c7_surjectivity() -> Outcome {
    let mut r = rng(71);
    for k in 0..50 {
        let v = GrassmannElement::<Fp<5>>::random(5, &mut r, 0.4, |m| m != 0 && m.count_ones() % 2 == 0);
        let u = &GrassmannElement::one(5) + &v;
        let s = ok(jacobian_preimage(&u), "preimage")?;
        ensure!(ok(member(&s, GroupId::Gamma), "member")?, "target {k}: preimage not in Γ");
        ensure!(ok(s.jacobian(), "J")?.det == u, "target {k}: J(preimage) != {u}");
    }
    let top = GrassmannElement::<Fp<5>>::parse(4, "1 + x1x2x3x4").unwrap();
    ensure!(matches!(jacobian_preimage(&top), Err(Error::NoPreimage(_))), "1 + x1x2x3x4 was not refused");
    let mut hits_top_coset = 0;
    for k in 0..1000 {
        let g: Endomorphism<Fp<5>> = if k % 2 == 0 {
            sample::gamma_element(4, &mut r).then_apply(&sample::phi_element(4, 3, &mut r))
        } else {
            let g: Endomorphism<Fp<5>> = sample::gamma_element(4, &mut r).then_apply(&sample::phi_element(4, 3, &mut r));
            let psi = ok(jacobian_preimage_mod_top(&ok(g.jacobian(), "J")?.det), "preimage")?.sigma;
            ok(psi.inv(), "inverse")?.then_apply(&g)
        };
        let j = ok(g.jacobian(), "J")?.det;
        if !j.is_one() && (&j - &GrassmannElement::one(4)).terms().keys().all(|&m| m == full_mask(4)) {
            hits_top_coset += 1;
        }
    }
    ensure!(hits_top_coset == 0, "{hits_top_coset} samples reached 1 + K*·x1x2x3x4");
    Ok("50 preimages at n = 5 over F5, refusal and 1000 samples at n = 4".into())
}

fn c8_collapse() -> Outcome {
    let mut r = rng(81);
    for n in [4, 6] {
        let mut seen = 0;
        for k in 0..200 {
            let g: Endomorphism<F> = match k % 3 {
                0 => sample::gamma_element(n, &mut r),
                1 => {
                    let g: Endomorphism<F> = sample::gamma_element(n, &mut r).then_apply(&sample::phi_element(n, 3, &mut r));
                    let psi = ok(jacobian_preimage_mod_top(&ok(g.jacobian(), "J")?.det), "preimage")?.sigma;
                    ok(psi.inv(), "inverse")?.then_apply(&g)
                }
                _ => sample::phi_element(n, 3, &mut r),
            };
            let j = ok(g.jacobian(), "J")?;
            if j.valuation >= n {
                seen += 1;
                ensure!(j.det.is_one(), "n = {n}: valuation {} but J = {}", j.valuation, j.det);
            }
        }
        ensure!(seen >= 5, "n = {n}: only {seen} samples reached valuation ≥ n");
    }
    let mut witnesses = 0;
    for n in [5, 6, 7] {
        for s in 1..=(n - 1) / 2 {
            let mut a = vec![GrassmannElement::<Rational>::zero(n); n];
            a[n - 1] = GrassmannElement::monomial(n, full_mask(2 * s), Rational::one());
            let w = scaling(&a);
            let inside = ok(member(&w, GroupId::GammaAsc(2 * s)), "member")?;
            let above = ok(member(&w, GroupId::GammaAsc(2 * s + 2)), "member")?;
            ensure!(inside && !above, "n = {n}: witness fails to separate Γ_{} from Γ_{}", 2 * s, 2 * s + 2);
            ensure!(ok(member(&w, GroupId::PhiPrimeLayer(2 * s + 1)), "member")?, "n = {n}: witness not in Φ′");
            witnesses += 1;
        }
    }
    Ok(format!("collapse at n = 4, 6; {witnesses} separating witnesses at n = 5, 6, 7"))
}

fn c9_identities() -> Outcome {
    let mut r = rng(91);
    let mut cases = 0;
    for tag in IdentityTag::ALL {
        let lo = tag.min_n();
        for n in lo..=lo.max(8) {
            for _ in 0..2 {
                let case = ok(sample_case::<Rational, _>(tag, n, &mut r), tag.name())?;
                ensure!(ok(check_identity(&case), tag.name())?, "{} fails at n = {n}: {case:?}", tag.name());
                cases += 1;
            }
        }
    }
    Ok(format!("{} identities, {cases} cases", IdentityTag::ALL.len()))
}

type P = Fp<7>;
type E = GrassmannElement<P>;

fn rand_el(r: &mut ChaCha8Rng) -> E {
    E::random(6, r, 0.35, |_| true)
}

/// Solvability of a linear system `rows · a = rhs` over F7 by elimination.
fn consistent(mut rows: Vec<Vec<u32>>) -> bool {
    let cols = rows.first().map_or(0, |r| r.len() - 1);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
        rows.swap(rank, p);
        let inv = (1..7).find(|x| x * rows[rank][c] % 7 == 1).unwrap();
        for v in rows[rank].iter_mut() {
            *v = *v * inv % 7;
        }
        for i in 0..rows.len() {
            if i != rank && rows[i][c] != 0 {
                let f = rows[i][c];
                for k in 0..=cols {
                    rows[i][k] = (rows[i][k] + 7 * 7 - f * rows[rank][k] % 7) % 7;
                }
            }
        }
        rank += 1;
    }
    rows[rank..].iter().all(|row| row[cols] == 0)
}

/// Whether some a has op(i, a) = uᵢ for all i, decided by brute-force linear algebra.
fn has_solution(u: &[E], op: impl Fn(usize, &E) -> E) -> bool {
    let n = 6;
    let dim = 1usize << n;
    let images: Vec<Vec<E>> =
        (0..dim).map(|m| (1..=n).map(|i| op(i, &E::monomial(n, m as u32, P::one()))).collect()).collect();
    let mut rows = Vec::new();
    for i in 0..n {
        for target in 0..dim as u32 {
            let mut row: Vec<u32> = images.iter().map(|img| img[i].coeff(target).value()).collect();
            row.push(u[i].coeff(target).value());
            rows.push(row);
        }
    }
    consistent(rows)
}

fn c10_calculus() -> Outcome {
    let n = 6;
    let mut r = rng(101);
    let d = |i: usize, e: &E| skew_partial(i, e).unwrap();
    let (mut solvable, mut unsolvable) = (0, 0);
    for k in 0..200 {
        let a = rand_el(&mut r);
        let b = rand_el(&mut r);
        for i in 1..=n {
            let lhs = d(i, &(&a * &b));
            let rhs = &(&d(i, &a) * &b) + &(&a.involution() * &d(i, &b));
            ensure!(lhs == rhs, "case {k}: Leibniz fails for ∂{i}");
            ensure!(d(i, &d(i, &a)).is_zero(), "case {k}: ∂{i}² != 0");
            for j in 1..=n {
                ensure!(d(i, &d(j, &a)) == -d(j, &d(i, &a)), "case {k}: ∂{i}∂{j} != −∂{j}∂{i}");
                let xj = E::generator(n, j);
                let anti = &d(i, &(&xj * &a)) + &(&xj * &d(i, &a));
                let expected = if i == j { a.clone() } else { E::zero(n) };
                ensure!(anti == expected, "case {k}: ∂{i}x{j} + x{j}∂{i} != δ");
            }
        }
        ensure!(taylor_reconstruct(&a, TaylorMode::AtZero) == a, "case {k}: Taylor at zero");
        ensure!(taylor_reconstruct(&a, TaylorMode::Projected) == a, "case {k}: projected Taylor");
        ensure!(identity_decomposition(&a) == a, "case {k}: identity operator");

        for (label, op) in [("x", 0), ("∂", 1)] {
            let apply = |i: usize, e: &E| if op == 0 { &E::generator(n, i) * e } else { d(i, e) };
            let mut u: Vec<E> = (1..=n).map(|i| apply(i, &a)).collect();
            if k % 2 == 1 {
                // Half of the perturbations keep the per-equation shape condition, so the
                // compatibility condition is what has to catch them.
                let i = r.gen_range(1..=n);
                let mut m = r.gen_range(0..64u32);
                if r.gen_bool(0.5) {
                    m = if op == 0 { m | 1 << (i - 1) } else { m & !(1 << (i - 1)) };
                }
                u[i - 1] += &E::monomial(n, m, P::one());
            }
            let solved = if op == 0 { solve_xi_system(&u) } else { solve_partial_system(&u) };
            let expected = has_solution(&u, apply);
            match solved {
                Ok(fam) => {
                    ensure!(expected, "case {k}: {label}-solver accepted an inconsistent system");
                    for lambda in [P::zero(), P::new(3)] {
                        let sol = fam.instantiate(&lambda);
                        for i in 1..=n {
                            ensure!(apply(i, &sol) == u[i - 1], "case {k}: {label}-solution fails equation {i}");
                        }
                    }
                    if k % 2 == 0 {
                        let diff = &fam.particular - &a;
                        let free = fam.direction.clone();
                        let dm = *free.terms().keys().next().unwrap();
                        ensure!(diff == free.scale(&diff.coeff(dm)), "case {k}: {label}-solution differs by more than the free direction");
                    }
                    solvable += 1;
                }
                Err(Error::Solvability(_)) => {
                    ensure!(!expected, "case {k}: {label}-solver refused a consistent system");
                    unsolvable += 1;
                }
                Err(e) => return Err(format!("case {k}: {label}-solver error {e}")),
            }
        }
    }
    ensure!(unsolvable >= 20, "only {unsolvable} inconsistent systems were generated");
    Ok(format!("200 cases at n = 6; solvers: {solvable} solved, {unsolvable} refused, all matching elimination"))
}

#[test]
fn acceptance_criteria() {
    let criteria: [(&str, fn() -> Outcome, u64); 10] = [
        ("1 dimension tables", c1_dimension_tables, 1),
        ("2 consistency identities", c2_consistency, 1),
        ("3 inversion formula", c3_inversion, 30),
        ("4 chain rule", c4_chain_rule, 30),
        ("5 factorization round-trips", c5_factorizations, 120),
        ("6 n = 3 exhaustive over F3", c6_three_generators, 1),
        ("7 surjectivity dichotomy", c7_surjectivity, 60),
        ("8 even-n ascent collapse", c8_collapse, 60),
        ("9 identity battery", c9_identities, 60),
        ("10 calculus suite", c10_calculus, 30),
    ];
    let mut failed = Vec::new();
    for (name, run, budget) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let within = elapsed <= Duration::from_secs(budget);
        match (&outcome, within) {
            (Ok(detail), true) => println!("PASS  {name}: {detail} ({:.2?} ≤ {budget}s)", elapsed),
            (Ok(detail), false) => {
                println!("FAIL  {name}: {detail}, but took {:.2?} > {budget}s", elapsed);
                failed.push(name);
            }
            (Err(why), _) => {
                println!("FAIL  {name}: {why} ({:.2?})", elapsed);
                failed.push(name);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
