//! Acceptance suite: one line per criterion, non-zero exit if any fails.
//!
//! Each check compares the library against an independent oracle from
//! `itk-oracles` or against a construction whose answer is known.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use itk_core::cyclo::CyclotomicProduct;
use itk_core::lambda::{
    bezout_pm, cyclo_expand_poly, divide_by_phi, iota, iwasawa_invariants, omega_poly, phi,
    phi_poly, weierstrass_prepare,
};
use itk_core::module::{char_ideal, coinvariant_order, CoinvariantOrder};
use itk_core::rank::{
    fine_char_ideal, kurihara_pollack_check, pm_gcd_char, pm_multiplicities, s_from_e,
    PMMultiplicities,
};
use itk_core::{ElementaryModule, IntPoly, LambdaElement, PadicContext, RankProfile};
use itk_oracles as oracle;
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn cyclotomic_factorization() -> Check {
    let mut count = 0;
    for p in [3u64, 5] {
        let mut n = 0;
        while p.pow(n) <= 243 {
            let ours: Vec<IntPoly> = (0..=n).map(|m| phi_poly(p, m)).collect();
            let product = ours.iter().fold(IntPoly::one(), |acc, f| &acc * f);
            let expected = oracle::omega(p, n);
            ensure(product.coeffs() == expected.as_slice(), || format!("p={p} n={n}: product differs"))?;
            ensure(omega_poly(p, n).coeffs() == expected.as_slice(), || format!("p={p} n={n}: ω_n differs"))?;
            count += 1;
            n += 1;
        }
    }
    Ok(format!("{count} (p, n) pairs"))
}

fn random_element(rng: &mut ChaCha8Rng, ctx: &PadicContext, len: usize) -> LambdaElement {
    let modulus = 3u64.pow(20);
    LambdaElement::from_ints(ctx, (0..len).map(|_| BigInt::from(rng.gen_range(0..modulus))))
}

fn weierstrass() -> Check {
    let ctx = PadicContext::new(3, 20, 60).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    let mut max_lambda = 0;
    for i in 0..500 {
        let mu = rng.gen_range(0..=3);
        let f = random_element(&mut rng, &ctx, 60).scale_by_p_power(mu);
        let w = weierstrass_prepare(&f).map_err(|e| format!("element {i}: {e}"))?;
        ensure(w.mu == mu, || format!("element {i}: μ = {} expected {mu}", w.mu))?;
        ensure(w.distinguished.is_distinguished(&ctx), || format!("element {i}: P not distinguished"))?;
        ensure(w.unit.is_unit(), || format!("element {i}: u not a unit"))?;
        ensure(w.reconstruct().agrees_at(&f, 18), || format!("element {i}: p^μ·u·P differs mod p^18"))?;
        max_lambda = max_lambda.max(w.lambda());
    }
    for i in 0..200 {
        let (a, b) = (rng.gen_range(0..=3), rng.gen_range(0..=3));
        let f = random_element(&mut rng, &ctx, 60).scale_by_p_power(a);
        let g = random_element(&mut rng, &ctx, 60).scale_by_p_power(b);
        let (mf, lf) = iwasawa_invariants(&f).map_err(|e| e.to_string())?;
        let (mg, lg) = iwasawa_invariants(&g).map_err(|e| e.to_string())?;
        let prod = iwasawa_invariants(&(&f * &g)).map_err(|e| format!("product {i}: {e}"))?;
        ensure(prod == (mf + mg, lf + lg), || format!("product {i}: {prod:?} vs ({}, {})", mf + mg, lf + lg))?;
    }
    Ok(format!("500 reconstructions, 200 products, max λ = {max_lambda}"))
}

fn bezout() -> Check {
    let mut ms = Vec::new();
    for p in [3u64, 5] {
        let ctx = PadicContext::new(p, 40, 200).unwrap();
        for n in 1..=3 {
            let b = bezout_pm(n, &ctx).map_err(|e| format!("p={p} n={n}: {e}"))?;
            let minus = oracle::omega_parity(p, n, false);
            let plus = oracle::omega_parity(p, n, true);
            let lhs = oracle::add(&oracle::mul(b.a.coeffs(), &minus), &oracle::mul(b.b.coeffs(), &plus));
            let target = vec![BigInt::from(p).pow(b.m)];
            ensure(lhs == target, || format!("p={p} n={n}: A·ω̃⁻ + B·ω⁺ ≠ p^{}", b.m))?;
            let res = oracle::sylvester_resultant(&minus, &plus);
            let v = oracle::vp(&res, p);
            ensure(v == Some(b.m), || format!("p={p} n={n}: m = {} but v_p(Res) = {v:?}", b.m))?;
            ms.push(format!("{p}/{n}:{}", b.m));
        }
    }
    Ok(format!("m = {}", ms.join(" ")))
}

fn coinvariants() -> Check {
    let ctx = PadicContext::with_defaults(3).unwrap();
    let mut finite = 0;
    let mut infinite = 0;
    for c in 0..=4u32 {
        for n in 0..=4u32 {
            let ours = coinvariant_order(c, n, &ctx);
            let matrix = oracle::multiplication_matrix(&oracle::omega(3, n), &oracle::phi(3, c));
            if c <= n {
                ensure(ours == CoinvariantOrder::Infinite, || format!("c={c} n={n}: expected Infinite"))?;
                ensure(oracle::bareiss_det(matrix) == BigInt::from(0), || format!("c={c} n={n}: oracle matrix is nonsingular"))?;
                infinite += 1;
                continue;
            }
            let k = 200;
            let snf = oracle::smith_valuations_mod(&matrix, 3, k);
            ensure(snf.iter().all(|&v| v < k), || format!("c={c} n={n}: oracle SNF has a zero invariant factor"))?;
            let total: u32 = snf.iter().sum();
            let CoinvariantOrder::Finite { exponent, .. } = ours else {
                return Err(format!("c={c} n={n}: expected finite order"));
            };
            ensure(u64::from(total) == exponent, || format!("c={c} n={n}: 3^{exponent} vs SNF 3^{total}"))?;
            finite += 1;
        }
    }
    Ok(format!("{finite} finite pairs, {infinite} infinite"))
}

fn random_profiles() -> Vec<RankProfile> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0002);
    (0..1000)
        .map(|_| {
            let p = [3u64, 5, 7][rng.gen_range(0..3)];
            let len = rng.gen_range(1..=6);
            let e: Vec<i64> = (0..len).map(|_| rng.gen_range(0..=5)).collect();
            RankProfile::direct(p, &e).unwrap()
        })
        .collect()
}

fn fine_char_formula() -> Check {
    for (i, profile) in random_profiles().iter().enumerate() {
        let expected = CyclotomicProduct::from_exponents(
            profile.e.iter().enumerate().map(|(n, &e)| (n as u32, e.saturating_sub(1) as u32)),
        );
        let module = ElementaryModule::from_multiplicities(&s_from_e(profile));
        let from_module = char_ideal(&module).map_err(|e| e.to_string())?;
        ensure(from_module == expected, || format!("profile {i}: module char {from_module}"))?;
        let direct = fine_char_ideal(profile);
        ensure(direct == expected, || format!("profile {i}: fine_char_ideal {direct}"))?;
    }
    Ok("1000 profiles".into())
}

fn pm_gcd_invariance() -> Check {
    let mut resolutions = 0;
    for (i, profile) in random_profiles().iter().enumerate() {
        let mut pairs = vec![(0u32, profile.e[0] as u32)];
        for (n, &e) in profile.e.iter().enumerate().skip(1) {
            if e > 0 {
                pairs.push((n as u32, (e - 1) as u32));
            }
        }
        let expected = CyclotomicProduct::from_exponents(pairs);
        ensure(pm_gcd_char(profile) == expected, || format!("profile {i}: pm_gcd_char"))?;
        let r = pm_multiplicities(profile);
        let all = r.resolutions();
        ensure(all.len() == 1 << r.ambiguous_levels().len(), || format!("profile {i}: resolution count"))?;
        for (plus, minus) in all {
            let g = PMMultiplicities::char_of(&plus).gcd(&PMMultiplicities::char_of(&minus));
            ensure(g == expected, || format!("profile {i}: gcd {g} under {plus:?}/{minus:?}"))?;
            resolutions += 1;
        }
    }
    Ok(format!("1000 profiles, {resolutions} sign attributions"))
}

fn uniqueness() -> Check {
    for e in 0..=6u64 {
        let s = e.saturating_sub(1);
        let mut solutions = BTreeSet::new();
        for a in 0..=2 * e + 2 {
            for b in 0..=2 * e + 2 {
                if a + b == e + s && a.min(b) >= s {
                    solutions.insert((a.min(b), a.max(b)));
                }
            }
        }
        let r = pm_multiplicities(&RankProfile::direct(3, &[0, e as i64]).unwrap());
        let ours = (r.r_plus[1].min(r.r_minus[1]), r.r_plus[1].max(r.r_minus[1]));
        ensure(solutions.len() == 1, || format!("e={e}: {} unordered solutions", solutions.len()))?;
        ensure(solutions.contains(&ours), || format!("e={e}: enumeration {solutions:?} vs {ours:?}"))?;
    }
    Ok("e_n = 0..=6 each have exactly one solution".into())
}

fn iota_invariance() -> Check {
    let ctx = PadicContext::with_defaults(3).unwrap();
    for n in 0..=3 {
        let f = phi(n, &ctx).map_err(|e| e.to_string())?;
        let (q, divisible) = divide_by_phi(&iota(&f), n).map_err(|e| format!("n={n}: {e}"))?;
        ensure(divisible, || format!("n={n}: ι(Φ_n) not divisible by Φ_n"))?;
        ensure(q.is_unit(), || format!("n={n}: quotient not a unit"))?;
    }
    Ok("Φ_0..Φ_3".into())
}

fn random_unit(rng: &mut ChaCha8Rng) -> IntPoly {
    let mut c: Vec<i64> = (0..6).map(|_| rng.gen_range(-20..=20)).collect();
    c[0] = 3 * rng.gen_range(-5..=5) + rng.gen_range(1..=2);
    IntPoly::from_i64s(&c)
}

fn phis(exps: &[u32]) -> CyclotomicProduct {
    CyclotomicProduct::from_exponents(exps.iter().enumerate().map(|(n, &a)| (n as u32, a)))
}

fn kp_end_to_end() -> Check {
    let ctx = PadicContext::with_defaults(3).unwrap();
    let n_max = itk_core::rank::default_n_max(3, ctx.truncation());
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0003);
    // distinguished, not divisible by any Φ_n
    let stray = [IntPoly::from_i64s(&[3, 0, 1]), IntPoly::from_i64s(&[6, 3, 0, 1])];
    let lp = |c: &CyclotomicProduct, extra: &[IntPoly]| {
        let poly = extra.iter().fold(cyclo_expand_poly(c, 3), |acc, f| &acc * f);
        LambdaElement::from_poly_truncated(&ctx, &poly)
    };
    let (mut clean, mut corrupted) = (0, 0);
    for trial in 0..12 {
        let len = rng.gen_range(1..=n_max as usize + 1);
        // keep the top level light: its divisions have the least headroom
        let e: Vec<i64> = (0..len)
            .map(|n| if n == n_max as usize { rng.gen_range(0..=1) } else { rng.gen_range(0..=3) })
            .collect();
        let profile = RankProfile::direct(3, &e).unwrap();
        let prediction = pm_gcd_char(&profile);
        let mut plus_extra = vec![0u32; n_max as usize + 1];
        for (n, x) in plus_extra.iter_mut().enumerate() {
            if n < n_max as usize && rng.gen_bool(0.4) {
                *x = 1;
            }
        }
        let plus_c = prediction.mul(&phis(&plus_extra));
        let plus = lp(&plus_c, &[random_unit(&mut rng), stray[0].clone()]).scale_by_p_power(rng.gen_range(0..=1));
        let minus = lp(&prediction, &[random_unit(&mut rng), stray[1].clone()]);
        let report = kurihara_pollack_check(&plus, &minus, &profile, None)
            .map_err(|err| format!("trial {trial} e={e:?}: {err}"))?;
        ensure(report.all_match(), || format!("trial {trial} e={e:?}: mismatch at {:?}", report.mismatched_levels()))?;
        clean += 1;

        // drop one power of Φ_n from the minus side where the prediction has one
        let present: Vec<u32> = prediction.exponents().keys().copied().filter(|&n| n <= n_max).collect();
        let mut corrupt_at = BTreeSet::new();
        for &n in &present {
            if rng.gen_bool(0.5) {
                corrupt_at.insert(n);
            }
        }
        // and add a shared Φ_n where the prediction has none
        let absent: Vec<u32> = (0..n_max).filter(|n| prediction.exponent(*n) == 0).collect();
        let mut shared = vec![0u32; n_max as usize + 1];
        if let Some(&n) = absent.get(rng.gen_range(0..absent.len().max(1))) {
            if plus_extra[n as usize] == 0 {
                shared[n as usize] = 1;
                corrupt_at.insert(n);
            }
        }
        if corrupt_at.is_empty() {
            continue;
        }
        let dropped = CyclotomicProduct::from_exponents(
            corrupt_at.iter().filter(|n| prediction.exponent(**n) > 0).map(|&n| (n, 1)),
        );
        let minus_c = prediction.quotient(&dropped).unwrap().mul(&phis(&shared));
        let plus_c = plus_c.mul(&phis(&shared));
        let plus_bad = lp(&plus_c, &[random_unit(&mut rng), stray[0].clone()]);
        let minus_bad = lp(&minus_c, &[random_unit(&mut rng), stray[1].clone()]);
        let report = kurihara_pollack_check(&plus_bad, &minus_bad, &profile, None)
            .map_err(|err| format!("trial {trial} corrupted: {err}"))?;
        let got: BTreeSet<u32> = report.mismatched_levels().into_iter().collect();
        ensure(got == corrupt_at, || format!("trial {trial}: corrupted {corrupt_at:?}, reported {got:?}"))?;
        corrupted += 1;
    }
    Ok(format!("n_max = {n_max}, {clean} clean and {corrupted} corrupted inputs"))
}

fn determinism() -> Check {
    let mut runs = 0;
    for case in common::CASES {
        let golden = std::fs::read_to_string(common::golden_path(case))
            .map_err(|e| format!("{}: {e}", case.name))?;
        let job_counts: &[usize] = if case.args.contains(&"JOBS") { &[1, 2, 4, 8] } else { &[1] };
        for &jobs in job_counts {
            for _ in 0..2 {
                let got = common::run_case(case, jobs);
                ensure(got == golden, || format!("{} (jobs={jobs}) differs from golden file", case.name))?;
                runs += 1;
            }
        }
    }
    Ok(format!("{runs} runs over {} golden cases", common::CASES.len()))
}

fn main() {
    let criteria: [(&str, u64, fn() -> Check); 10] = [
        ("cyclotomic factorization", 1, cyclotomic_factorization),
        ("weierstrass preparation", 10, weierstrass),
        ("bezout identity", 5, bezout),
        ("coinvariant orders", 10, coinvariants),
        ("fine characteristic ideal formula", 1, fine_char_formula),
        ("plus/minus gcd invariance", 5, pm_gcd_invariance),
        ("multiplicity uniqueness", 1, uniqueness),
        ("iota invariance", 2, iota_invariance),
        ("L-function gcd comparison", 10, kp_end_to_end),
        ("cli determinism", 60, determinism),
    ];
    let mut failed = 0;
    for (name, limit, check) in criteria {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let in_time = elapsed < Duration::from_secs(limit);
        let (status, detail) = match (&result, in_time) {
            (Ok(d), true) => ("PASS", d.clone()),
            (Ok(d), false) => ("FAIL", format!("{d}; over the {limit} s limit")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!("{status}  {name:<36} {:>8.3} s (limit {limit} s)  {detail}", elapsed.as_secs_f64());
    }
    println!("{} of 10 criteria passed", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
