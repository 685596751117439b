//! The minimal nilpotent orbit of `sl_3` has dimension 4: its `F_q`-points
//! are the rank-one square-zero matrices, `(q³-1)(q+1)` of them.

use frobvar::field::{Elem, Field};
use frobvar::matrix::Mat;
use frobvar::varieties::{membership_fp, orbit_dim};
use frobvar::{Family, G1Variety, RootSystem, TupleVariety};

fn all_matrices(f: &Field, n: usize) -> impl Iterator<Item = Mat> + '_ {
    let els = f.elements();
    let q = els.len();
    let total = q.pow((n * n) as u32);
    (0..total).map(move |mut k| {
        let data = (0..n * n)
            .map(|_| {
                let e = els[k % q];
                k /= q;
                e
            })
            .collect();
        Mat { rows: n, cols: n, data }
    })
}

fn minimal_orbit_count(f: &Field) -> usize {
    all_matrices(f, 3).filter(|m| m.rank(f) == 1 && m.mul(f, m).is_zero()).count()
}

#[test]
fn minimal_orbit_point_count() {
    let rs = RootSystem::new(Family::A, 2).unwrap();
    let v = G1Variety::OrbitClosure(vec![0]);
    assert_eq!(orbit_dim(&rs, &v), Some(4));
    for q in [3u64, 5] {
        let f = Field::prime(q);
        assert_eq!(minimal_orbit_count(&f) as u64, (q.pow(3) - 1) * (q + 1), "q = {q}");
    }
}

#[test]
fn orbit_closure_membership_counts() {
    let rs = RootSystem::new(Family::A, 2).unwrap();
    let f = Field::prime(3);
    let q = 3u64;
    let minimal = TupleVariety::new(vec![G1Variety::OrbitClosure(vec![0])]);
    let full = TupleVariety::new(vec![G1Variety::FullCone]);
    let zero = TupleVariety::new(vec![G1Variety::Zero]);
    let (mut n_min, mut n_nil, mut n_zero) = (0u64, 0u64, 0u64);
    for m in all_matrices(&f, 3) {
        if m.trace(&f) != Elem::ZERO || !m.pow(&f, 3).is_zero() {
            continue;
        }
        let t = [m];
        n_nil += membership_fp(&rs, &f, &full, &t).unwrap() as u64;
        n_min += membership_fp(&rs, &f, &minimal, &t).unwrap() as u64;
        n_zero += membership_fp(&rs, &f, &zero, &t).unwrap() as u64;
    }
    // the nilpotent cone of sl_n has q^{n²-n} points
    assert_eq!(n_nil, q.pow(6));
    assert_eq!(n_min, (q.pow(3) - 1) * (q + 1) + 1);
    assert_eq!(n_zero, 1);
}
