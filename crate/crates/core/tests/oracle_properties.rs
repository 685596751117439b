use std::collections::HashMap;

use frobvar::field::Field;
use frobvar::matrix::Mat;
use frobvar::oracle::{enumerate_tuples, sl2_induced, sl2_simple, support_flags, u_coefficient_action, ModuleRep};
use frobvar::{Family, RootSystem, Weight};

fn a1() -> RootSystem {
    RootSystem::new(Family::A, 1).unwrap()
}

fn w(d: i64) -> Weight {
    Weight(vec![d])
}

#[test]
fn twisted_support_depends_on_one_coordinate() {
    let f = Field::prime(3);
    let r = 2;
    let tuples = enumerate_tuples(&f, r).unwrap();
    for d in 0..3 {
        for i in 0..r {
            let m = sl2_simple(&a1(), &w(d), 3).unwrap().twist(i);
            let flags = support_flags(&f, &m, &tuples).unwrap();
            let slot = (r - i - 1) as usize;
            let mut seen: HashMap<&Mat, bool> = HashMap::new();
            for (t, &flag) in tuples.iter().zip(&flags) {
                let prev = *seen.entry(&t.betas[slot]).or_insert(flag);
                assert_eq!(prev, flag, "L({d})^({i}) at {t}");
            }
        }
    }
}

#[test]
fn steinberg_factor_forces_zero_coordinate() {
    let f = Field::prime(3);
    let r = 2u32;
    let tuples = enumerate_tuples(&f, r).unwrap();
    let st = sl2_simple(&a1(), &w(2), 3).unwrap();
    let bases = [ModuleRep::trivial(), sl2_simple(&a1(), &w(1), 3).unwrap(), sl2_induced(&a1(), &w(4)).unwrap()];
    for base in &bases {
        for j in 0..r {
            let m = base.tensor(&st.twist(j));
            let flags = support_flags(&f, &m, &tuples).unwrap();
            for (t, &flag) in tuples.iter().zip(&flags) {
                if flag {
                    assert!(t.betas[(r - j - 1) as usize].is_zero(), "{m} at {t}");
                }
            }
        }
    }
}

#[test]
fn rank_profiles_are_monotone_and_end_at_zero() {
    for p in [3u64, 5] {
        let f = Field::prime(p);
        let tuples = enumerate_tuples(&f, 2).unwrap();
        let mods: Vec<ModuleRep> = (0..p as i64 * p as i64).step_by(3).map(|d| sl2_simple(&a1(), &w(d), p).unwrap()).collect();
        for m in &mods {
            for t in tuples.iter().step_by(7) {
                let u = u_coefficient_action(&f, m, t, 1).unwrap();
                assert!(u.pow(&f, p).is_zero());
                let prof = u.rank_profile(&f);
                assert!(prof.windows(2).all(|x| x[0] >= x[1]), "{m} at {t}: {prof:?}");
                assert_eq!(*prof.last().unwrap(), 0);
                assert!(prof.len() <= p as usize + 1);
            }
        }
    }
}

#[test]
fn single_slot_coefficient_matches_twisted_exponential() {
    // the tuple (0, β) acts through exp_β(s^p), so u_1 is the s^p
    // coefficient of the twisted single-factor exponential
    let f = Field::prime(3);
    let tuples = enumerate_tuples(&f, 2).unwrap();
    let m = sl2_simple(&a1(), &w(5), 3).unwrap();
    for t in tuples.iter().filter(|t| t.betas[0].is_zero()) {
        let single = frobvar::oracle::NilpotentTuple::new(&f, vec![t.betas[1].clone()]).unwrap();
        let g = m.evaluate(&f, &single.exp(&f, 3).frobenius_twist(&f, 1));
        assert_eq!(u_coefficient_action(&f, &m, t, 1).unwrap(), g.coefficient(3));
    }
}

#[test]
fn quadratic_extension_sweep_agrees() {
    let f = Field::new(3, 2);
    let rep = frobvar::oracle::verify_simple(&f, 1).unwrap();
    assert!(rep.pass, "{}", rep.summary());
    assert_eq!(rep.tuples, 81);
}
