//! Acceptance suite: one line per criterion, nonzero exit if any fails.

use std::collections::BTreeSet;
use std::time::Instant;

use num_rational::Rational64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use frobvar::dpalg::{self, DPTensor};
use frobvar::field::Field;
use frobvar::linkage;
use frobvar::oracle::{self, NilpotentTuple};
use frobvar::rootsys::{cln_constant, restricted_weights};
use frobvar::varieties::{levi_conjugate, phi_lambda};
use frobvar::{Family, RootSystem, Weight};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond { Ok(()) } else { Err(msg()) }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn ac1_claim_grid() -> Outcome {
    let mut residual = 0;
    for p in [2, 3, 5, 7] {
        for r in [2, 3, 4] {
            let rep = dpalg::verify_claim(r, p).map_err(err)?;
            ensure(rep.pass, || format!("p={p} r={r}: {:?}", rep.counterexample))?;
            ensure(rep.linear_coefficients.iter().all(|&c| c == 1), || format!("p={p} r={r}: linear {:?}", rep.linear_coefficients))?;
            ensure(rep.min_residual_weight.is_none_or(|w| w >= 2), || format!("p={p} r={r}: light residual"))?;
            residual += rep.residual_terms;
        }
    }
    Ok(format!("12 cases, {residual} residual terms in total, all of weight ≥ 2"))
}

fn ac2_psi2_u1() -> Outcome {
    for p in [2, 3, 5, 7] {
        let got = dpalg::psi_diff(2, p, p).map_err(err)?;
        let cap = got.cap();
        let expected = DPTensor::basis(p, cap, &[p, 0]).map_err(err)?.add(&DPTensor::basis(p, cap, &[0, 1]).map_err(err)?);
        ensure(got == expected, || format!("p={p}: {got}"))?;
        ensure(got.render() == "u1⊗1 + 1⊗u0", || format!("p={p}: rendered {got}"))?;
    }
    Ok("u1⊗1 + 1⊗u0 for p ∈ {2,3,5,7}".into())
}

fn oracle_sweep(check: oracle::Check) -> Outcome {
    let mut total = 0;
    for p in [3, 5] {
        for r in [1, 2] {
            let rep = oracle::run_check(check, &Field::prime(p), r).map_err(err)?;
            ensure(rep.pass && rep.mismatches == 0, || format!("{}: {:?}", rep.summary(), rep.witnesses.first()))?;
            ensure(rep.comparisons > 0, || format!("p={p} r={r}: nothing compared"))?;
            total += rep.comparisons;
        }
    }
    Ok(format!("{total} comparisons, 0 mismatches"))
}

fn ac5_blocks() -> Outcome {
    let summary = oracle_sweep(oracle::Check::Block)?;
    let rs = RootSystem::new(Family::A, 1).map_err(err)?;
    for p in [3u64, 5] {
        for r in [1u32, 2] {
            let f = Field::prime(p);
            let st = Weight(vec![p.pow(r) as i64 - 1]);
            let class = linkage::block_class(&rs, &st, p, r).map_err(err)?;
            ensure(class.members == vec![st.clone()], || format!("p={p} r={r}: Steinberg block {:?}", class.members))?;
            let pts = oracle::support_points(&f, &oracle::sl2_simple(&rs, &st, p).map_err(err)?, r).map_err(err)?;
            ensure(pts == vec![NilpotentTuple::zero(2, r as usize)], || format!("p={p} r={r}: Steinberg support has {} points", pts.len()))?;
        }
    }
    Ok(format!("{summary}; Steinberg blocks are singletons supported at 0"))
}

fn ac6_m_agreement() -> Outcome {
    let mut count = 0;
    let mut cases: Vec<(RootSystem, u64, u32)> = Vec::new();
    for p in [3, 5, 7] {
        for r in [1, 2, 3] {
            cases.push((RootSystem::new(Family::A, 1).map_err(err)?, p, r));
        }
    }
    for r in [1, 2] {
        cases.push((RootSystem::new(Family::A, 2).map_err(err)?, 13, r));
    }
    for (rs, p, r) in &cases {
        for lambda in restricted_weights(rs.rank, *p, *r) {
            let j = linkage::jantzen_m(rs, &lambda, *p).map_err(err)?;
            let d = linkage::digit_m(rs, &lambda, *p, *r).map_err(err)?;
            ensure(j == d, || format!("{} p={p} r={r} λ={lambda}: jantzen {j}, digits {d}", rs.name()))?;
            count += 1;
        }
    }
    Ok(format!("{count} weights"))
}

fn random_restricted(rng: &mut ChaCha8Rng, rank: usize, p: u64, r: u32) -> Weight {
    let bound = p.pow(r) as i64;
    Weight((0..rank).map(|_| rng.gen_range(0..bound)).collect())
}

fn ac7_link_paths() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut linked = 0;
    for (family, rank, p) in [(Family::A, 1, 3), (Family::A, 1, 5), (Family::C, 2, 11)] {
        let rs = RootSystem::new(family, rank).map_err(err)?;
        for k in 0..1000 {
            let lambda = random_restricted(&mut rng, rank, p, 2);
            // every few pairs, pick μ from λ's dot orbit so that linked pairs occur
            let mu = if k % 4 == 0 {
                let orbit = rs.dot_orbit(&lambda).map_err(err)?;
                let v = &orbit[rng.gen_range(0..orbit.len())];
                let m = p.pow(2) as i64;
                Weight(v.0.iter().map(|x| x.rem_euclid(m)).collect())
            } else {
                random_restricted(&mut rng, rank, p, 2)
            };
            let a = linkage::same_block(&rs, &lambda, &mu, p, 2).map_err(err)?;
            let b = linkage::same_block_simplified(&rs, &lambda, &mu, p, 2).map_err(err)?;
            ensure(a == b, || format!("{} p={p}: λ={lambda} μ={mu}: full {a}, simplified {b}", rs.name()))?;
            linked += a as usize;
        }
    }
    Ok(format!("3000 pairs, {linked} linked, paths agree"))
}

fn ac8_levi() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut nontrivial = 0;
    for (family, rank) in [(Family::A, 2), (Family::A, 3), (Family::B, 3), (Family::C, 2), (Family::C, 3), (Family::D, 4)] {
        let rs = RootSystem::new(family, rank).map_err(err)?;
        let p = rs.smallest_admissible_prime();
        for _ in 0..100 {
            // half the coordinates sit on a p-wall so that Φ_λ is often nonempty
            let lambda = Weight(
                (0..rank)
                    .map(|_| {
                        let k = rng.gen_range(1..4) as i64;
                        if rng.gen_bool(0.5) { k * p as i64 - 1 } else { rng.gen_range(0..(p * p) as i64) }
                    })
                    .collect(),
            );
            let phi = phi_lambda(&rs, &lambda, p).map_err(err)?;
            let (w, levi) = levi_conjugate(&rs, &phi).map_err(err)?;
            let image: BTreeSet<usize> = phi.iter().map(|&k| rs.act_on_root(&w, k)).collect();
            ensure(image == rs.levi_roots(&levi), || format!("{} p={p} λ={lambda}: w={:?} I={levi:?}", rs.name(), w.word))?;
            nontrivial += !phi.is_empty() as usize;
        }
    }
    Ok(format!("600 weights, {nontrivial} with nonempty Φ_λ, all verified"))
}

fn ac9_constants() -> Outcome {
    let q = |n: i64, d: i64| Rational64::new(n, d);
    let table: [(Family, Vec<Rational64>); 4] = [
        (Family::A, vec![q(1, 1), q(9, 4), q(4, 1), q(25, 4), q(9, 1), q(49, 4), q(16, 1), q(81, 4)]),
        (Family::B, vec![q(1, 1), q(3, 1), q(6, 1), q(10, 1), q(15, 1), q(21, 1), q(28, 1), q(36, 1)]),
        (Family::C, vec![q(1, 2), q(2, 1), q(9, 2), q(8, 1), q(25, 2), q(18, 1), q(49, 2), q(32, 1)]),
        (Family::D, vec![q(0, 1), q(1, 1), q(3, 1), q(6, 1), q(10, 1), q(15, 1), q(21, 1), q(28, 1)]),
    ];
    let mut systems = 0;
    for (family, values) in &table {
        for (i, expected) in values.iter().enumerate() {
            let rank = i + 1;
            ensure(cln_constant(*family, rank) == *expected, || format!("c({family}{rank}) = {}", cln_constant(*family, rank)))?;
            // ranks below the type's minimum (B1, C1, D1, D2) are not root systems of that type
            if let Ok(rs) = RootSystem::new(*family, rank) {
                let h = rs.coxeter_number;
                let pairing = rs.pairing(&Weight::rho(rank), rs.highest_short_root);
                ensure(pairing == h - 1, || format!("{}: ⟨ρ, α_0^∨⟩ = {pairing}, h = {h}", rs.name()))?;
                ensure(rs.cln_constant == *expected, || format!("{}: stored c differs", rs.name()))?;
                systems += 1;
            }
        }
    }
    Ok(format!("32 table entries, ⟨ρ, α_0^∨⟩ = h-1 on {systems} root systems"))
}

fn ac10_friedlander() -> Outcome {
    let mut total = 0;
    for p in [3, 5] {
        let rep = oracle::friedlander_check(&Field::prime(p), 2).map_err(err)?;
        ensure(rep.pass && rep.comparisons > 0, || rep.summary())?;
        total += rep.comparisons;
    }
    Ok(format!("{total} (λ, β) pairs, d exp_β(u_1)^(p-1) = 0 on each"))
}

fn main() {
    let criteria: Vec<Criterion> = vec![
        ("AC1 divided-power claim for p ∈ {2,3,5,7}, r ∈ {2,3,4}", ac1_claim_grid),
        ("AC2 dψ_2(u_1) = u_1⊗1 + 1⊗u_0", ac2_psi2_u1),
        ("AC3 SL2 simple supports: oracle = descriptor", || oracle_sweep(oracle::Check::Simple)),
        ("AC4 SL2 summed action freeness = u_{r-1} freeness", || oracle_sweep(oracle::Check::Equal)),
        ("AC5 SL2 block supports: oracle union = descriptor", ac5_blocks),
        ("AC6 jantzen_m = digit_m", ac6_m_agreement),
        ("AC7 full and simplified linkage agree", ac7_link_paths),
        ("AC8 Levi conjugation w(Φ_λ) = ZI ∩ Φ", ac8_levi),
        ("AC9 constants c and ⟨ρ, α_0^∨⟩ = h-1", ac9_constants),
        ("AC10 d exp_β(u_1)^(p-1) vanishes on restricted simples", ac10_friedlander),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS  {name}: {detail} [{secs:.2}s]"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {name}: {detail} [{secs:.2}s]");
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
    println!("all 10 criteria passed");
}
