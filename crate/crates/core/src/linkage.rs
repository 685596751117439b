//! Blocks of `Dist(G_(r))` for `G = SL_n` or `Sp_2n`.
//!
//! `μ` lies in the block of `λ` iff `μ ∈ (W·λ + p^m ZΦ + p^r X(T)) ∩ X(T)_+`,
//! where `m` is the least integer with `p^m ∤ ⟨λ+ρ, α^∨⟩` for some root `α`.
//! Coset membership is decided exactly through the Smith normal form of the
//! root lattice inside `X(T)`.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{self, Smith};
use crate::rootsys::{restricted_weights, Family, RootSystem, Weight};

fn check_dominant(rs: &RootSystem, w: &Weight) -> Result<()> {
    rs.check_weight(w)?;
    if !w.is_dominant() {
        return Err(Error::NotDominant(w.clone()));
    }
    Ok(())
}

fn check_restricted(rs: &RootSystem, w: &Weight, p: u64, r: u32) -> Result<()> {
    rs.check_weight(w)?;
    if !w.is_restricted(p, r) {
        return Err(Error::NotRestricted { weight: w.clone(), p, r });
    }
    Ok(())
}

fn check_simply_connected(rs: &RootSystem) -> Result<()> {
    if !rs.family.is_simply_connected() {
        return Err(Error::Unsupported(format!(
            "block computations need SL_n or Sp_2n; type {} is realised by a non-simply-connected SO_n",
            rs.family
        )));
    }
    Ok(())
}

/// Least `m ≥ 1` such that some root `α` has `p^m ∤ ⟨λ+ρ, α^∨⟩`.
pub fn jantzen_m(rs: &RootSystem, lambda: &Weight, p: u64) -> Result<u32> {
    check_dominant(rs, lambda)?;
    let shifted = lambda.add(&Weight::rho(rs.rank));
    // the simple roots alone pair to λ_i + 1 ≥ 1, so the loop terminates
    let p = p as i64;
    let mut m = 1u32;
    let mut pm = p;
    loop {
        if (0..rs.roots.len()).any(|k| rs.pairing(&shifted, k) % pm != 0) {
            return Ok(m);
        }
        m += 1;
        pm *= p;
    }
}

/// Least `m ∈ [1, r]` whose digit `λ_{m-1}` differs from `(p-1)ρ`, or `r+1`
/// for the Steinberg weight `(p^r-1)ρ`.
pub fn digit_m(rs: &RootSystem, lambda: &Weight, p: u64, r: u32) -> Result<u32> {
    check_restricted(rs, lambda, p, r)?;
    let digits = rs.steinberg_digits(lambda, p, Some(r as usize))?;
    let top = Weight::rho(rs.rank).scale(p as i64 - 1);
    Ok(digits.iter().take(r as usize).position(|d| *d != top).map_or(r + 1, |i| i as u32 + 1))
}

/// Index of `ZΦ` in `X(T)`: `n` for `SL_n`, `2` for `Sp_2n`.
pub fn lattice_index(family: Family, rank: usize) -> Result<i64> {
    match family {
        Family::A => Ok(rank as i64 + 1),
        Family::C => Ok(2),
        _ => Err(Error::Unsupported(format!("lattice index is only used for SL_n and Sp_2n, not type {family}"))),
    }
}

/// Smith form of the root lattice (rows of the Cartan matrix).
pub fn root_lattice_smith(rs: &RootSystem) -> Smith {
    lattice::smith(&rs.cartan)
}

/// The full linkage condition with cosets of `p^m ZΦ + p^r X(T)`.
pub fn same_block(rs: &RootSystem, lambda: &Weight, mu: &Weight, p: u64, r: u32) -> Result<bool> {
    check_simply_connected(rs)?;
    check_dominant(rs, lambda)?;
    check_dominant(rs, mu)?;
    let m = jantzen_m(rs, lambda, p)?;
    let snf = root_lattice_smith(rs);
    same_block_with(rs, &snf, lambda, mu, p, r, m)
}

fn same_block_with(rs: &RootSystem, snf: &Smith, lambda: &Weight, mu: &Weight, p: u64, r: u32, m: u32) -> Result<bool> {
    let pr = (p as i64).pow(r);
    let pm = (p as i64).pow(m.min(r));
    for v in rs.dot_orbit(lambda)? {
        let d = mu.sub(&v);
        let hit = if m >= r {
            // p^m ZΦ ⊆ p^r X(T)
            d.0.iter().all(|x| x.rem_euclid(pr) == 0)
        } else {
            lattice::in_scaled_lattice_mod(snf, &d.0, pm, pr)
        };
        if hit {
            return Ok(true);
        }
    }
    Ok(false)
}

/// The simplified condition `μ ∈ W·λ + p^{min(m,r)} X(T)`, valid when
/// `p` does not divide [`lattice_index`].
pub fn same_block_simplified(rs: &RootSystem, lambda: &Weight, mu: &Weight, p: u64, r: u32) -> Result<bool> {
    check_simply_connected(rs)?;
    check_dominant(rs, lambda)?;
    check_dominant(rs, mu)?;
    let m = jantzen_m(rs, lambda, p)?;
    let pm = (p as i64).pow(m.min(r));
    Ok(rs
        .dot_orbit(lambda)?
        .iter()
        .any(|v| mu.sub(v).0.iter().all(|x| x.rem_euclid(pm) == 0)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockClass {
    pub base_weight: Weight,
    pub p: u64,
    pub r: u32,
    pub m: u32,
    /// Members inside `X_r(T)`, sorted lexicographically.
    pub members: Vec<Weight>,
}

impl BlockClass {
    pub fn contains(&self, mu: &Weight) -> bool {
        self.members.binary_search(mu).is_ok()
    }
}

/// All `μ ∈ X_r(T)` linked to `λ`.
pub fn block_class(rs: &RootSystem, lambda: &Weight, p: u64, r: u32) -> Result<BlockClass> {
    check_simply_connected(rs)?;
    check_restricted(rs, lambda, p, r)?;
    let m = jantzen_m(rs, lambda, p)?;
    let snf = root_lattice_smith(rs);
    let step = (p as i64).pow(m.min(r));
    let bound = (p as i64).pow(r);
    let per_coord = (bound / step) as usize;

    // every member is congruent to some w·λ modulo p^{min(m,r)} X(T)
    let mut members = BTreeSet::new();
    for v in rs.dot_orbit(lambda)? {
        let base: Vec<i64> = v.0.iter().map(|x| x.rem_euclid(step)).collect();
        let total = per_coord.pow(rs.rank as u32);
        for mut k in 0..total {
            let mut mu = base.clone();
            for x in mu.iter_mut() {
                *x += (k % per_coord) as i64 * step;
                k /= per_coord;
            }
            let mu = Weight(mu);
            if !members.contains(&mu) && same_block_with(rs, &snf, lambda, &mu, p, r, m)? {
                members.insert(mu);
            }
        }
    }
    Ok(BlockClass { base_weight: lambda.clone(), p, r, m, members: members.into_iter().collect() })
}

/// Partition of `X_r(T)` into blocks, each represented by its
/// lexicographically smallest member.
pub fn block_partition(rs: &RootSystem, p: u64, r: u32) -> Result<Vec<BlockClass>> {
    check_simply_connected(rs)?;
    let mut assigned = BTreeSet::new();
    let mut classes = Vec::new();
    for lambda in restricted_weights(rs.rank, p, r) {
        if assigned.contains(&lambda) {
            continue;
        }
        let class = block_class(rs, &lambda, p, r)?;
        assigned.extend(class.members.iter().cloned());
        classes.push(class);
    }
    Ok(classes)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a1() -> RootSystem {
        RootSystem::new(Family::A, 1).unwrap()
    }

    fn w(x: &[i64]) -> Weight {
        Weight(x.to_vec())
    }

    #[test]
    fn jantzen_m_examples() {
        for (f, l, p) in [(Family::A, 1, 3), (Family::A, 3, 5), (Family::C, 2, 5)] {
            let rs = RootSystem::new(f, l).unwrap();
            assert_eq!(jantzen_m(&rs, &Weight::zero(l), p).unwrap(), 1);
        }
        let rs = a1();
        for r in 1..4 {
            assert_eq!(jantzen_m(&rs, &w(&[3i64.pow(r) - 1]), 3).unwrap(), r + 1);
        }
        assert_eq!(jantzen_m(&rs, &w(&[14]), 5).unwrap(), 2);
    }

    #[test]
    fn digit_m_examples() {
        let rs = a1();
        assert_eq!(digit_m(&rs, &w(&[1]), 5, 2).unwrap(), 1);
        assert_eq!(digit_m(&rs, &w(&[24]), 5, 2).unwrap(), 3);
        assert_eq!(digit_m(&rs, &w(&[14]), 5, 2).unwrap(), 2);
        assert!(matches!(digit_m(&rs, &w(&[25]), 5, 2), Err(Error::NotRestricted { .. })));
    }

    #[test]
    fn same_block_examples() {
        let rs = a1();
        assert!(same_block(&rs, &w(&[3]), &w(&[3]), 5, 1).unwrap());
        assert!(same_block(&rs, &w(&[1]), &w(&[2]), 5, 1).unwrap());
        assert!(!same_block(&rs, &w(&[4]), &w(&[0]), 5, 1).unwrap());
    }

    #[test]
    fn so_groups_are_rejected() {
        let b3 = RootSystem::new(Family::B, 3).unwrap();
        let z = Weight::zero(3);
        assert!(matches!(same_block(&b3, &z, &z, 37, 1), Err(Error::Unsupported(_))));
        assert!(matches!(block_class(&b3, &z, 37, 1), Err(Error::Unsupported(_))));
        assert!(lattice_index(Family::D, 4).is_err());
    }

    #[test]
    fn lattice_index_examples() {
        assert_eq!(lattice_index(Family::A, 3).unwrap(), 4);
        assert_eq!(lattice_index(Family::C, 2).unwrap(), 2);
        assert_eq!(lattice_index(Family::A, 1).unwrap(), 2);
        // and it agrees with |det Cartan|
        for (f, l) in [(Family::A, 1), (Family::A, 4), (Family::C, 2), (Family::C, 3)] {
            let rs = RootSystem::new(f, l).unwrap();
            let d: i64 = root_lattice_smith(&rs).diagonal.iter().product();
            assert_eq!(d.abs(), lattice_index(f, l).unwrap());
        }
    }

    #[test]
    fn block_class_examples() {
        let rs = a1();
        assert_eq!(block_class(&rs, &w(&[1]), 5, 1).unwrap().members, vec![w(&[1]), w(&[2])]);
        assert_eq!(block_class(&rs, &w(&[4]), 5, 1).unwrap().members, vec![w(&[4])]);
        // p = 3, r = 2: λ_0 ∈ {0,1} with an arbitrary higher digit
        let c = block_class(&rs, &w(&[0]), 3, 2).unwrap();
        assert_eq!(c.m, 1);
        assert_eq!(c.members, [0, 1, 3, 4, 6, 7].iter().map(|&x| w(&[x])).collect::<Vec<_>>());
    }

    #[test]
    fn block_class_agrees_with_brute_force() {
        let rs = a1();
        for (p, r) in [(3, 1), (3, 2), (5, 1), (5, 2)] {
            let all: Vec<Weight> = restricted_weights(1, p, r).collect();
            for lam in &all {
                let brute: Vec<Weight> =
                    all.iter().filter(|mu| same_block(&rs, lam, mu, p, r).unwrap()).cloned().collect();
                assert_eq!(block_class(&rs, lam, p, r).unwrap().members, brute, "p={p} r={r} λ={lam}");
            }
        }
    }

    #[test]
    fn sl2_mod5_partition() {
        let classes = block_partition(&a1(), 5, 1).unwrap();
        let sets: Vec<Vec<i64>> = classes.iter().map(|c| c.members.iter().map(|m| m.0[0]).collect()).collect();
        assert_eq!(sets, vec![vec![0, 3], vec![1, 2], vec![4]]);
    }

    #[test]
    fn same_block_is_an_equivalence_on_xr() {
        let rs = a1();
        for (p, r) in [(3, 1), (3, 2), (5, 1), (5, 2)] {
            let all: Vec<Weight> = restricted_weights(1, p, r).collect();
            let rel: Vec<Vec<bool>> =
                all.iter().map(|a| all.iter().map(|b| same_block(&rs, a, b, p, r).unwrap()).collect()).collect();
            let n = all.len();
            for i in 0..n {
                assert!(rel[i][i]);
                for j in 0..n {
                    assert_eq!(rel[i][j], rel[j][i]);
                    for k in 0..n {
                        if rel[i][j] && rel[j][k] {
                            assert!(rel[i][k]);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn steinberg_is_alone() {
        for (f, l, p, r) in [(Family::A, 1, 3, 2), (Family::A, 2, 7, 1), (Family::C, 2, 11, 1)] {
            let rs = RootSystem::new(f, l).unwrap();
            let st = Weight::rho(l).scale((p as i64).pow(r) - 1);
            assert_eq!(block_class(&rs, &st, p, r).unwrap().members, vec![st]);
        }
    }
}
