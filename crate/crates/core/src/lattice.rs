//! Exact linear algebra over `Z` and `Q` for small square systems: rational
//! solves and inverses, Smith normal form, and membership in lattices of the
//! form `a·L + b·Z^n`.

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{One, Zero};

pub type QMatrix = Vec<Vec<Rational64>>;

/// Gauss–Jordan inverse of a square rational matrix. `None` if singular.
pub fn inverse(a: &QMatrix) -> Option<QMatrix> {
    let n = a.len();
    let mut aug: Vec<Vec<Rational64>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational64::one() } else { Rational64::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !aug[r][col].is_zero())?;
        aug.swap(col, pivot);
        let inv = aug[col][col].recip();
        for v in aug[col].iter_mut() {
            *v *= inv;
        }
        for r in 0..n {
            if r != col && !aug[r][col].is_zero() {
                let f = aug[r][col];
                for c in 0..2 * n {
                    let sub = f * aug[col][c];
                    aug[r][c] -= sub;
                }
            }
        }
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Solves `a · x = b` for square nonsingular `a`.
pub fn solve(a: &QMatrix, b: &[Rational64]) -> Option<Vec<Rational64>> {
    let inv = inverse(a)?;
    Some(
        inv.iter()
            .map(|row| row.iter().zip(b).fold(Rational64::zero(), |acc, (x, y)| acc + x * y))
            .collect(),
    )
}

pub fn to_rational(a: &[Vec<i64>]) -> QMatrix {
    a.iter()
        .map(|r| r.iter().map(|&x| Rational64::from_integer(x)).collect())
        .collect()
}

/// Smith normal form `U·A·V = D` of an integer matrix. Only the diagonal and
/// the column transform `V` are kept, which is all that row-lattice
/// membership needs.
#[derive(Debug, Clone)]
pub struct Smith {
    pub diagonal: Vec<i64>,
    pub col_transform: Vec<Vec<i64>>,
}

pub fn smith(a: &[Vec<i64>]) -> Smith {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut m: Vec<Vec<i64>> = a.to_vec();
    let mut v: Vec<Vec<i64>> = (0..cols)
        .map(|i| (0..cols).map(|j| i64::from(i == j)).collect())
        .collect();

    let col_sub = |m: &mut Vec<Vec<i64>>, v: &mut Vec<Vec<i64>>, dst: usize, src: usize, q: i64| {
        for row in m.iter_mut() {
            row[dst] -= q * row[src];
        }
        for row in v.iter_mut() {
            row[dst] -= q * row[src];
        }
    };
    let col_swap = |m: &mut Vec<Vec<i64>>, v: &mut Vec<Vec<i64>>, a: usize, b: usize| {
        for row in m.iter_mut() {
            row.swap(a, b);
        }
        for row in v.iter_mut() {
            row.swap(a, b);
        }
    };

    let mut diagonal = Vec::new();
    for t in 0..rows.min(cols) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if m[i][j] != 0 && best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else { break };
            m.swap(t, bi);
            col_swap(&mut m, &mut v, t, bj);

            let piv = m[t][t];
            let mut dirty = false;
            for i in t + 1..rows {
                let q = Integer::div_floor(&m[i][t], &piv);
                if q != 0 {
                    for j in t..cols {
                        m[i][j] -= q * m[t][j];
                    }
                }
                dirty |= m[i][t] != 0;
            }
            for j in t + 1..cols {
                let q = Integer::div_floor(&m[t][j], &piv);
                if q != 0 {
                    col_sub(&mut m, &mut v, j, t, q);
                }
                dirty |= m[t][j] != 0;
            }
            if dirty {
                continue;
            }
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| m[i][j] % piv != 0));
            match bad {
                Some(i) => {
                    for j in t..cols {
                        m[t][j] += m[i][j];
                    }
                }
                None => break,
            }
        }
        if m[t][t] < 0 {
            for x in m[t].iter_mut() {
                *x = -*x;
            }
        }
        diagonal.push(m[t][t]);
    }
    Smith { diagonal, col_transform: v }
}

/// Decides `d ∈ L + modulus·Z^n` where `L` is the row lattice of `gens`
/// (given through its Smith form).
pub fn in_row_lattice_mod(snf: &Smith, d: &[i64], modulus: i64) -> bool {
    let n = snf.col_transform.len();
    (0..n).all(|j| {
        let e: i64 = (0..n).map(|i| d[i] * snf.col_transform[i][j]).sum();
        let dj = snf.diagonal.get(j).copied().unwrap_or(0);
        let g = dj.gcd(&modulus);
        e.rem_euclid(g) == 0
    })
}

/// Decides `d ∈ scale·L + modulus·Z^n` for `L` the row lattice of `gens`.
/// `scale` must divide `modulus`.
pub fn in_scaled_lattice_mod(snf: &Smith, d: &[i64], scale: i64, modulus: i64) -> bool {
    debug_assert_eq!(modulus % scale, 0);
    if d.iter().any(|x| x.rem_euclid(scale) != 0) {
        return false;
    }
    let reduced: Vec<i64> = d.iter().map(|x| x / scale).collect();
    in_row_lattice_mod(snf, &reduced, modulus / scale)
}
