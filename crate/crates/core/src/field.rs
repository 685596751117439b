//! The prime field `F_p` and its quadratic extension `F_{p²}`.
//!
//! Elements are pairs `a + bθ` with `θ² = t₀ + t₁θ`; in the prime field
//! `b` is always zero.

use serde::{Deserialize, Serialize};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Elem(pub u32, pub u32);

impl Elem {
    pub const ZERO: Elem = Elem(0, 0);
    pub const ONE: Elem = Elem(1, 0);
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Field {
    p: u32,
    degree: u32,
    /// `θ² = modulus.0 + modulus.1·θ`
    modulus: (u32, u32),
}

impl Field {
    pub fn prime(p: u64) -> Self {
        assert!(is_prime(p), "{p} is not prime");
        Field { p: p as u32, degree: 1, modulus: (0, 0) }
    }

    /// `F_{p^degree}` for `degree ∈ {1, 2}`.
    pub fn new(p: u64, degree: u32) -> Self {
        match degree {
            1 => Self::prime(p),
            2 => {
                let base = Self::prime(p);
                let p32 = p as u32;
                // x² - t₁x - t₀ irreducible ⇔ no root in F_p
                let modulus = (0..p32)
                    .flat_map(|t1| (1..p32).map(move |t0| (t0, t1)))
                    .find(|&(t0, t1)| {
                        (0..p32).all(|x| {
                            let v = (x as u64 * x as u64 + (p - t1 as u64) * x as u64 + (p - t0 as u64)) % p;
                            v != 0
                        })
                    })
                    .expect("an irreducible quadratic exists");
                Field { p: base.p, degree: 2, modulus }
            }
            d => panic!("unsupported extension degree {d}"),
        }
    }

    pub fn characteristic(&self) -> u64 {
        self.p as u64
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn order(&self) -> u64 {
        (self.p as u64).pow(self.degree)
    }

    pub fn from_int(&self, x: i64) -> Elem {
        Elem(x.rem_euclid(self.p as i64) as u32, 0)
    }

    /// All elements in a fixed order, zero first.
    pub fn elements(&self) -> Vec<Elem> {
        let b_range = if self.degree == 2 { self.p } else { 1 };
        (0..b_range).flat_map(|b| (0..self.p).map(move |a| Elem(a, b))).collect()
    }

    #[inline]
    pub fn add(&self, x: Elem, y: Elem) -> Elem {
        Elem((x.0 + y.0) % self.p, (x.1 + y.1) % self.p)
    }

    #[inline]
    pub fn neg(&self, x: Elem) -> Elem {
        Elem((self.p - x.0) % self.p, (self.p - x.1) % self.p)
    }

    #[inline]
    pub fn sub(&self, x: Elem, y: Elem) -> Elem {
        self.add(x, self.neg(y))
    }

    #[inline]
    pub fn mul(&self, x: Elem, y: Elem) -> Elem {
        let p = self.p as u64;
        if self.degree == 1 {
            return Elem(((x.0 as u64 * y.0 as u64) % p) as u32, 0);
        }
        let (a, b, c, d) = (x.0 as u64, x.1 as u64, y.0 as u64, y.1 as u64);
        let bd = b * d % p;
        let (t0, t1) = (self.modulus.0 as u64, self.modulus.1 as u64);
        let re = (a * c + bd * t0) % p;
        let im = (a * d + b * c + bd * t1) % p;
        Elem(re as u32, im as u32)
    }

    pub fn pow(&self, mut x: Elem, mut e: u64) -> Elem {
        let mut acc = Elem::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, x);
            }
            x = self.mul(x, x);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, x: Elem) -> Elem {
        assert!(x != Elem::ZERO, "inverse of zero");
        self.pow(x, self.order() - 2)
    }

    /// The absolute Frobenius `x ↦ x^p`.
    pub fn frobenius(&self, x: Elem) -> Elem {
        if self.degree == 1 { x } else { self.pow(x, self.p as u64) }
    }

    /// `1/m!` for `m < p`.
    pub fn inv_factorial(&self, m: u64) -> Elem {
        let f = (1..=m).fold(Elem::ONE, |acc, k| self.mul(acc, self.from_int(k as i64)));
        self.inv(f)
    }
}
