//! The divided-power algebra `Dist(G_a)` over `F_p` and its tensor powers.
//!
//! `Dist(G_a)` has basis `D(m) = (d/dt)^(m)`, with `D(i)·D(j) = C(i+j, i)·D(i+j)`,
//! coproduct `Δ'(D(n)) = Σ_{i+j=n} D(i) ⊗ D(j)` and Frobenius differential
//! `dF^i(D(m)) = D(m/p^i)` when `p^i | m`, zero otherwise. Writing
//! `u_j = D(p^j)`, a basis element `D(m)` is a scalar multiple of the
//! monomial `Π u_j^{m_j}` in its base-`p` digits.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// `C(n, k) mod p` by Lucas' theorem.
pub fn binomial_mod(mut n: u64, mut k: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    while n > 0 || k > 0 {
        let (ni, ki) = (n % p, k % p);
        if ki > ni {
            return 0;
        }
        // small binomial by the multiplicative formula mod p
        let mut num = 1u64;
        let mut den = 1u64;
        for t in 0..ki {
            num = num * ((ni - t) % p) % p;
            den = den * ((t + 1) % p) % p;
        }
        acc = acc * num % p * inv_mod(den, p) % p;
        n /= p;
        k /= p;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let mut r = 1u64;
    let mut b = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// Sum over slots of the base-`p` digit sums: the number of `u_j` factors
/// in the monomial expression of a pure tensor.
pub fn digit_weight(term: &[u64], p: u64) -> u64 {
    term.iter()
        .map(|&m| {
            let mut m = m;
            let mut s = 0;
            while m > 0 {
                s += m % p;
                m /= p;
            }
            s
        })
        .sum()
}

/// An element of `Dist(G_a)^{⊗r}` whose pure tensors have every slot degree
/// at most `cap`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DPTensor {
    p: u64,
    arity: usize,
    cap: u64,
    terms: BTreeMap<Vec<u64>, u64>,
}

impl DPTensor {
    pub fn zero(p: u64, arity: usize, cap: u64) -> Self {
        DPTensor { p, arity, cap, terms: BTreeMap::new() }
    }

    pub fn basis(p: u64, cap: u64, degrees: &[u64]) -> Result<Self> {
        let mut t = Self::zero(p, degrees.len(), cap);
        t.check_cap(degrees)?;
        t.terms.insert(degrees.to_vec(), 1);
        Ok(t)
    }

    pub fn one(p: u64, arity: usize, cap: u64) -> Self {
        let mut t = Self::zero(p, arity, cap);
        t.terms.insert(vec![0; arity], 1);
        t
    }

    /// `u_j = D(p^j)` in a single slot.
    pub fn u(p: u64, j: u32, cap: u64) -> Result<Self> {
        Self::basis(p, cap, &[p.pow(j)])
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn cap(&self) -> u64 {
        self.cap
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u64>, u64)> {
        self.terms.iter().map(|(k, &v)| (k, v))
    }

    pub fn coefficient(&self, term: &[u64]) -> u64 {
        self.terms.get(term).copied().unwrap_or(0)
    }

    fn check_cap(&self, term: &[u64]) -> Result<()> {
        if term.iter().any(|&m| m > self.cap) {
            return Err(Error::CapOverflow { cap: self.cap, term: format_term(term, self.p) });
        }
        Ok(())
    }

    fn accumulate(&mut self, term: Vec<u64>, c: u64) {
        let c = c % self.p;
        if c == 0 {
            return;
        }
        match self.terms.entry(term) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = (*o.get() + c) % self.p;
                if s == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &DPTensor) -> DPTensor {
        assert_eq!((self.p, self.arity), (other.p, other.arity));
        let mut out = self.clone();
        for (k, &v) in &other.terms {
            out.accumulate(k.clone(), v);
        }
        out
    }

    pub fn scale(&self, c: u64) -> DPTensor {
        let mut out = Self::zero(self.p, self.arity, self.cap);
        for (k, &v) in &self.terms {
            out.accumulate(k.clone(), v * (c % self.p));
        }
        out
    }

    /// Componentwise divided-power product, extended bilinearly.
    pub fn multiply(&self, other: &DPTensor) -> Result<DPTensor> {
        assert_eq!((self.p, self.arity), (other.p, other.arity), "arity or characteristic mismatch");
        let cap = self.cap.min(other.cap);
        let mut out = Self::zero(self.p, self.arity, cap);
        for (a, &ca) in &self.terms {
            for (b, &cb) in &other.terms {
                let sum: Vec<u64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                out.check_cap(&sum)?;
                let coeff = a.iter().zip(b).fold(ca * cb % self.p, |acc, (&x, &y)| acc * binomial_mod(x + y, x, self.p) % self.p);
                out.accumulate(sum, coeff);
            }
        }
        Ok(out)
    }

    /// Applies `Δ'` to slot `slot`, producing a tensor of arity one higher.
    pub fn comultiply(&self, slot: usize) -> DPTensor {
        assert!(slot < self.arity, "slot {slot} out of range");
        let mut out = Self::zero(self.p, self.arity + 1, self.cap);
        for (term, &c) in &self.terms {
            let n = term[slot];
            for i in 0..=n {
                let mut t = Vec::with_capacity(self.arity + 1);
                t.extend_from_slice(&term[..slot]);
                t.push(i);
                t.push(n - i);
                t.extend_from_slice(&term[slot + 1..]);
                out.accumulate(t, c);
            }
        }
        out
    }

    /// Applies `dF^i` to slot `slot`.
    pub fn frobenius_diff(&self, slot: usize, i: u32) -> DPTensor {
        let q = self.p.pow(i);
        let mut out = Self::zero(self.p, self.arity, self.cap);
        for (term, &c) in &self.terms {
            if term[slot] % q == 0 {
                let mut t = term.clone();
                t[slot] /= q;
                out.accumulate(t, c);
            }
        }
        out
    }

    /// Expands slot `slot` by `dψ_k`, where `dψ_1 = id`,
    /// `dψ_2 = (id ⊗ dF) ∘ Δ'` and `dψ_k = (id ⊗ dψ_{k-1}) ∘ dψ_2`.
    pub fn psi_expand(&self, slot: usize, k: usize) -> DPTensor {
        if k <= 1 {
            return self.clone();
        }
        self.comultiply(slot).frobenius_diff(slot + 1, 1).psi_expand(slot + 1, k - 1)
    }

    /// Stable text rendering, terms in descending order: `u1⊗1 + 1⊗u0`.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .rev()
            .map(|(t, &c)| {
                let body = format_term(t, self.p);
                if c == 1 { body } else { format!("{c}·{body}") }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Display for DPTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

fn format_basis(m: u64, p: u64) -> String {
    if m == 0 {
        return "1".into();
    }
    let mut j = 0;
    let mut q = 1;
    while q < m {
        q *= p;
        j += 1;
    }
    if q == m { format!("u{j}") } else { format!("D({m})") }
}

pub fn format_term(term: &[u64], p: u64) -> String {
    term.iter().map(|&m| format_basis(m, p)).collect::<Vec<_>>().join("⊗")
}

/// Default degree cap for expanding `u_{r-1}`.
pub fn default_cap(p: u64, r: u32) -> u64 {
    p.pow(r.saturating_sub(1)) + 1
}

/// `dψ_r(D(n))` in `Dist(G_a)^{⊗r}`.
pub fn psi_diff(r: u32, p: u64, n: u64) -> Result<DPTensor> {
    assert!(r >= 1);
    let cap = default_cap(p, r).max(n);
    Ok(DPTensor::basis(p, cap, &[n])?.psi_expand(0, r as usize))
}

#[derive(Debug, Clone, Serialize)]
pub struct ClaimReport {
    pub p: u64,
    pub r: u32,
    pub pass: bool,
    /// Coefficients of `u_{r-1}⊗1⊗⋯`, `1⊗u_{r-2}⊗⋯`, …, `1⊗⋯⊗u_0`.
    pub linear_coefficients: Vec<u64>,
    pub total_terms: usize,
    pub residual_terms: usize,
    pub min_residual_weight: Option<u64>,
    pub counterexample: Option<String>,
    #[serde(skip)]
    pub expansion: DPTensor,
}

/// Checks that `dψ_r(u_{r-1})` is the sum of the `r` linear terms
/// `1⊗⋯⊗u_{r-1-i}⊗⋯⊗1` (each with coefficient one) plus terms that are
/// products of at least two `p`-nilpotent generators.
pub fn verify_claim(r: u32, p: u64) -> Result<ClaimReport> {
    let n = p.pow(r - 1);
    let expansion = psi_diff(r, p, n)?;
    let linear: Vec<Vec<u64>> = (0..r as usize)
        .map(|i| {
            let mut t = vec![0; r as usize];
            t[i] = p.pow(r - 1 - i as u32);
            t
        })
        .collect();
    let linear_coefficients: Vec<u64> = linear.iter().map(|t| expansion.coefficient(t)).collect();
    let mut counterexample = None;
    if let Some(i) = linear_coefficients.iter().position(|&c| c != 1) {
        counterexample = Some(format!("linear term {} has coefficient {}", format_term(&linear[i], p), linear_coefficients[i]));
    }
    let mut residual_terms = 0;
    let mut min_residual_weight: Option<u64> = None;
    for (t, c) in expansion.terms() {
        if linear.contains(t) {
            continue;
        }
        residual_terms += 1;
        let wgt = digit_weight(t, p);
        min_residual_weight = Some(min_residual_weight.map_or(wgt, |m| m.min(wgt)));
        if wgt < 2 && counterexample.is_none() {
            counterexample = Some(format!("residual term {c}·{} has weight {wgt}", format_term(t, p)));
        }
    }
    Ok(ClaimReport {
        p,
        r,
        pass: counterexample.is_none(),
        linear_coefficients,
        total_terms: expansion.len(),
        residual_terms,
        min_residual_weight,
        counterexample,
        expansion,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lucas() {
        assert_eq!(binomial_mod(5, 1, 5), 0);
        assert_eq!(binomial_mod(2, 1, 3), 2);
        assert_eq!(binomial_mod(10, 3, 7), 120 % 7);
        assert_eq!(binomial_mod(9, 3, 3), 84 % 3);
        assert_eq!(binomial_mod(3, 5, 7), 0);
    }

    #[test]
    fn multiply_examples() {
        for p in [3, 5, 7] {
            let u0 = DPTensor::u(p, 0, 2 * p).unwrap();
            let sq = u0.multiply(&u0).unwrap();
            assert_eq!(sq, DPTensor::basis(p, 2 * p, &[2]).unwrap().scale(2));
            let mut pw = DPTensor::one(p, 1, 2 * p);
            for _ in 0..p {
                pw = pw.multiply(&u0).unwrap();
            }
            assert!(pw.is_zero(), "u0^{p} != 0");
            let a = DPTensor::basis(p, 2 * p, &[1]).unwrap();
            let b = DPTensor::basis(p, 2 * p, &[p - 1]).unwrap();
            assert!(a.multiply(&b).unwrap().is_zero());
        }
        // u0^2 = 0 in characteristic 2
        let u0 = DPTensor::u(2, 0, 4).unwrap();
        assert!(u0.multiply(&u0).unwrap().is_zero());
    }

    #[test]
    fn multiply_cap_overflow() {
        let a = DPTensor::basis(3, 4, &[3]).unwrap();
        let e = a.multiply(&a).unwrap_err();
        assert!(matches!(e, Error::CapOverflow { cap: 4, .. }));
        assert!(DPTensor::basis(3, 4, &[5]).is_err());
    }

    #[test]
    fn comultiply_examples() {
        let p = 5;
        let u0 = DPTensor::u(p, 0, 6).unwrap();
        assert_eq!(u0.comultiply(0).render(), "u0⊗1 + 1⊗u0");
        let d2 = DPTensor::basis(p, 6, &[2]).unwrap();
        assert_eq!(d2.comultiply(0).render(), "D(2)⊗1 + u0⊗u0 + 1⊗D(2)");
        assert_eq!(DPTensor::one(p, 1, 6).comultiply(0).render(), "1⊗1");
    }

    #[test]
    fn frobenius_examples() {
        for p in [2, 3, 5] {
            let cap = 3 * p;
            assert_eq!(DPTensor::u(p, 1, cap).unwrap().frobenius_diff(0, 1), DPTensor::u(p, 0, cap).unwrap());
            assert!(DPTensor::u(p, 0, cap).unwrap().frobenius_diff(0, 1).is_zero());
            assert_eq!(
                DPTensor::basis(p, cap, &[2 * p]).unwrap().frobenius_diff(0, 1),
                DPTensor::basis(p, cap, &[2]).unwrap()
            );
        }
    }

    #[test]
    fn psi_examples() {
        for p in [2, 3, 5, 7] {
            assert_eq!(psi_diff(1, p, 4).unwrap(), DPTensor::basis(p, 4.max(default_cap(p, 1)), &[4]).unwrap());
            assert_eq!(psi_diff(2, p, p).unwrap().render(), "u1⊗1 + 1⊗u0");
        }
        let x = psi_diff(2, 3, 9).unwrap();
        assert_eq!(x.coefficient(&[9, 0]), 1);
        assert_eq!(x.coefficient(&[0, 3]), 1);
        for (t, _) in x.terms() {
            if t != &vec![9, 0] && t != &vec![0, 3] {
                assert!(digit_weight(t, 3) >= 2, "{t:?}");
            }
        }
    }

    #[test]
    fn digit_weights() {
        assert_eq!(digit_weight(&[25, 0, 0], 5), 1);
        assert_eq!(digit_weight(&[2, 0], 5), 2);
        assert_eq!(digit_weight(&[1, 5], 5), 2);
    }

    #[test]
    fn digit_weight_matches_explicit_factorization() {
        // D(m) = u_0^{m_0} u_1^{m_1} / (m_0! m_1!) for m < p², so D(m) is a
        // product of m_0 + m_1 generators
        for p in [2u64, 3, 5, 7] {
            let cap = p * p;
            for m in 0..p * p {
                let (m0, m1) = (m % p, m / p);
                let mut prod = DPTensor::one(p, 1, cap);
                for _ in 0..m0 {
                    prod = prod.multiply(&DPTensor::u(p, 0, cap).unwrap()).unwrap();
                }
                for _ in 0..m1 {
                    prod = prod.multiply(&DPTensor::u(p, 1, cap).unwrap()).unwrap();
                }
                let fact = |k: u64| (1..=k).fold(1u64, |a, x| a * x % p);
                let expected = DPTensor::basis(p, cap, &[m]).unwrap().scale(fact(m0) * fact(m1));
                assert_eq!(prod, expected, "p={p} m={m}");
                assert_eq!(digit_weight(&[m], p), m0 + m1);
            }
        }
    }

    #[test]
    fn claim_small_cases() {
        let rep = verify_claim(1, 5).unwrap();
        assert!(rep.pass);
        assert_eq!(rep.residual_terms, 0);
        for p in [2, 3, 5, 7] {
            let rep = verify_claim(2, p).unwrap();
            assert!(rep.pass);
            assert_eq!(rep.residual_terms, 0);
        }
        let rep = verify_claim(3, 3).unwrap();
        assert!(rep.pass);
        assert!(rep.residual_terms > 0);
        assert_eq!(rep.expansion.render(), "u2⊗1⊗1 + D(6)⊗u0⊗1 + u1⊗D(2)⊗1 + 1⊗u1⊗1 + 1⊗1⊗u0");
    }

    #[test]
    fn coassociative() {
        for p in [2, 3, 5] {
            for n in 0..=12 {
                let x = DPTensor::basis(p, 12, &[n]).unwrap();
                assert_eq!(x.comultiply(0).comultiply(0), x.comultiply(0).comultiply(1));
            }
        }
    }

    #[test]
    fn frobenius_diff_composes() {
        for p in [2u64, 3, 5] {
            let cap = p.pow(3);
            for m in 0..=cap {
                let x = DPTensor::basis(p, cap, &[m]).unwrap();
                assert_eq!(x.frobenius_diff(0, 1).frobenius_diff(0, 1), x.frobenius_diff(0, 2));
            }
        }
    }

    #[test]
    fn generators_are_p_nilpotent() {
        for p in [2u64, 3, 5] {
            let cap = p.pow(3);
            for j in 0..3 {
                if p.pow(j + 1) > cap {
                    continue;
                }
                let u = DPTensor::u(p, j, cap).unwrap();
                let mut pw = DPTensor::one(p, 1, cap);
                for _ in 0..p {
                    pw = pw.multiply(&u).unwrap();
                }
                assert!(pw.is_zero());
            }
        }
    }
}
