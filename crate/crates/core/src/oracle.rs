//! Brute-force support computations for `SL_2` over `F_p` and `F_{p²}`.
//!
//! Modules are built as tensor products of Frobenius-twisted symmetric
//! powers of the natural representation and evaluated on one-parameter
//! subgroups `exp_β(s) = exp_{β_0}(s)·exp_{β_1}(s^p)⋯` as matrices over
//! `F[s]/(s^{D+1})` with `D = p^{r-1}`. The divided power `D(m)` acts by the
//! coefficient of `s^m`, and a `k[u]/(u^p)`-module is free iff every Jordan
//! block of `u` has size `p`.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::linkage;
use crate::matrix::{FpPolyMatrix, Mat};
use crate::rootsys::{restricted_weights, Family, RootSystem, Weight};
use crate::varieties::{block_variety, membership_fp, simple_variety, SimpleRegistry};

pub fn format_elem(x: Elem) -> String {
    if x.1 == 0 { x.0.to_string() } else { format!("{}+{}t", x.0, x.1) }
}

pub fn format_mat(m: &Mat) -> String {
    let rows: Vec<String> = (0..m.rows)
        .map(|i| format!("[{}]", (0..m.cols).map(|j| format_elem(m.get(i, j))).collect::<Vec<_>>().join(",")))
        .collect();
    format!("[{}]", rows.join(","))
}

/// A point `(β_0, …, β_{r-1})` of `C_r(N_p(sl_n))`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NilpotentTuple {
    pub betas: Vec<Mat>,
}

impl NilpotentTuple {
    /// Checks squareness, trace zero, `β^p = 0` and pairwise commutation.
    pub fn new(f: &Field, betas: Vec<Mat>) -> Result<Self> {
        let p = f.characteristic();
        for (i, b) in betas.iter().enumerate() {
            if !b.is_square() {
                return Err(Error::InvalidTuple(format!("β_{i} is {}×{}", b.rows, b.cols)));
            }
            if b.rows != betas[0].rows {
                return Err(Error::InvalidTuple(format!("β_{i} has size {}, β_0 has size {}", b.rows, betas[0].rows)));
            }
            if b.trace(f) != Elem::ZERO {
                return Err(Error::InvalidTuple(format!("β_{i} is not trace zero")));
            }
            if !b.pow(f, p).is_zero() {
                return Err(Error::InvalidTuple(format!("β_{i}^{p} ≠ 0")));
            }
        }
        for i in 0..betas.len() {
            for j in i + 1..betas.len() {
                if betas[i].mul(f, &betas[j]) != betas[j].mul(f, &betas[i]) {
                    return Err(Error::InvalidTuple(format!("β_{i} and β_{j} do not commute")));
                }
            }
        }
        Ok(NilpotentTuple { betas })
    }

    pub fn zero(n: usize, r: usize) -> Self {
        NilpotentTuple { betas: vec![Mat::zeros(n, n); r] }
    }

    pub fn r(&self) -> usize {
        self.betas.len()
    }

    pub fn is_zero(&self) -> bool {
        self.betas.iter().all(Mat::is_zero)
    }

    /// `exp_{β_0}(s)·exp_{β_1}(s^p)⋯exp_{β_{r-1}}(s^{p^{r-1}})` on the natural module.
    pub fn exp(&self, f: &Field, degree_cap: usize) -> FpPolyMatrix {
        let p = f.characteristic() as usize;
        let n = self.betas.first().map_or(0, |b| b.rows);
        self.betas.iter().enumerate().fold(FpPolyMatrix::identity(n, degree_cap), |acc, (i, b)| {
            acc.mul(f, &FpPolyMatrix::exp(f, b, p.pow(i as u32), degree_cap))
        })
    }
}

impl fmt::Display for NilpotentTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.betas.iter().map(format_mat).collect();
        write!(f, "({})", s.join(", "))
    }
}

/// One tensor factor `Sym^degree(V)^{(twist)}` of an `SL_2`-module.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SymFactor {
    pub degree: u64,
    pub twist: u32,
}

/// An `SL_2`-module given as `⊗ Sym^{d}(V)^{(i)}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ModuleRep {
    pub label: String,
    pub factors: Vec<SymFactor>,
}

impl ModuleRep {
    pub fn trivial() -> Self {
        ModuleRep { label: "L(0)".into(), factors: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.factors.iter().map(|x| x.degree as usize + 1).product()
    }

    pub fn tensor(&self, other: &ModuleRep) -> ModuleRep {
        let mut factors = self.factors.clone();
        factors.extend_from_slice(&other.factors);
        ModuleRep { label: format!("{} ⊗ {}", self.label, other.label), factors }
    }

    pub fn twist(&self, i: u32) -> ModuleRep {
        ModuleRep {
            label: format!("{}^({i})", self.label),
            factors: self.factors.iter().map(|x| SymFactor { degree: x.degree, twist: x.twist + i }).collect(),
        }
    }

    /// The representation matrix of a `2×2` group element with truncated
    /// polynomial entries.
    pub fn evaluate(&self, f: &Field, g: &FpPolyMatrix) -> FpPolyMatrix {
        assert_eq!(g.dim(), 2, "SL_2 modules take 2×2 arguments");
        self.factors.iter().fold(FpPolyMatrix::identity(1, g.degree_cap), |acc, x| {
            acc.kron(f, &sym_power(f, &g.frobenius_twist(f, x.twist), x.degree as usize))
        })
    }
}

impl fmt::Display for ModuleRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}

type Poly = Vec<Elem>;

fn poly_mul(f: &Field, a: &Poly, b: &Poly) -> Poly {
    let d = a.len();
    let mut out = vec![Elem::ZERO; d];
    for (i, &x) in a.iter().enumerate() {
        if x == Elem::ZERO {
            continue;
        }
        for (j, &y) in b.iter().enumerate().take(d - i) {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    out
}

fn poly_add(f: &Field, a: &Poly, b: &Poly) -> Poly {
    a.iter().zip(b).map(|(&x, &y)| f.add(x, y)).collect()
}

fn entry(g: &FpPolyMatrix, i: usize, j: usize) -> Poly {
    g.coeffs.iter().map(|m| m.get(i, j)).collect()
}

/// `Sym^d` of a `2×2` polynomial matrix on the basis `x^{d-k}y^k`, with
/// `x ↦ a x + c y`, `y ↦ b x + d y` for `g = [[a, b], [c, d]]`.
fn sym_power(f: &Field, g: &FpPolyMatrix, d: usize) -> FpPolyMatrix {
    let cap = g.degree_cap;
    let (a, b, c, dd) = (entry(g, 0, 0), entry(g, 0, 1), entry(g, 1, 0), entry(g, 1, 1));
    let mut one = vec![Elem::ZERO; cap + 1];
    one[0] = Elem::ONE;
    let zero = vec![Elem::ZERO; cap + 1];
    let mut out = FpPolyMatrix { degree_cap: cap, coeffs: vec![Mat::zeros(d + 1, d + 1); cap + 1] };
    for k in 0..=d {
        // form[j] is the coefficient of x^{deg-j} y^j
        let mut form: Vec<Poly> = vec![one.clone()];
        let mult = |form: &mut Vec<Poly>, u: &Poly, v: &Poly| {
            let mut next = vec![zero.clone(); form.len() + 1];
            for (j, coef) in form.iter().enumerate() {
                next[j] = poly_add(f, &next[j], &poly_mul(f, coef, u));
                next[j + 1] = poly_add(f, &next[j + 1], &poly_mul(f, coef, v));
            }
            *form = next;
        };
        for _ in 0..d - k {
            mult(&mut form, &a, &c);
        }
        for _ in 0..k {
            mult(&mut form, &b, &dd);
        }
        for (j, coef) in form.iter().enumerate() {
            for (deg, &x) in coef.iter().enumerate() {
                out.coeffs[deg].set(j, k, x);
            }
        }
    }
    out
}

fn check_sl2(rs: &RootSystem) -> Result<()> {
    if rs.family != Family::A || rs.rank != 1 {
        return Err(Error::Unsupported(format!("oracle modules exist only for SL_2, not {}", rs.name())));
    }
    Ok(())
}

/// `L(λ) = ⊗_i L(λ_i)^{(i)}` with `L(λ_i) = Sym^{λ_i}` for digits `λ_i < p`.
pub fn sl2_simple(rs: &RootSystem, lambda: &Weight, p: u64) -> Result<ModuleRep> {
    check_sl2(rs)?;
    let digits = rs.steinberg_digits(lambda, p, None)?;
    let factors = digits
        .iter()
        .enumerate()
        .filter(|(_, d)| d.0[0] > 0)
        .map(|(i, d)| SymFactor { degree: d.0[0] as u64, twist: i as u32 })
        .collect();
    Ok(ModuleRep { label: format!("L{lambda}"), factors })
}

/// `H^0(d) = Sym^d(V)`.
pub fn sl2_induced(rs: &RootSystem, lambda: &Weight) -> Result<ModuleRep> {
    check_sl2(rs)?;
    rs.check_weight(lambda)?;
    let d = lambda.0[0] as u64;
    let factors = if d == 0 { Vec::new() } else { vec![SymFactor { degree: d, twist: 0 }] };
    Ok(ModuleRep { label: format!("H0{lambda}"), factors })
}

fn degree_cap(p: u64, r: usize) -> usize {
    (p as usize).pow(r as u32 - 1)
}

/// `M(exp_β(s))` truncated at `s^{p^{r-1}}`.
pub fn one_param_action(f: &Field, m: &ModuleRep, t: &NilpotentTuple) -> FpPolyMatrix {
    let cap = degree_cap(f.characteristic(), t.r());
    m.evaluate(f, &t.exp(f, cap))
}

fn nilpotent_check(f: &Field, u: &Mat, what: &str) -> Result<()> {
    if !u.pow(f, f.characteristic()).is_zero() {
        return Err(Error::NotNilpotent(what.to_string()));
    }
    Ok(())
}

/// The action of `u_j = D(p^j)`: the coefficient of `s^{p^j}`.
pub fn u_coefficient_action(f: &Field, m: &ModuleRep, t: &NilpotentTuple, j: u32) -> Result<Mat> {
    if j as usize >= t.r() {
        return Err(Error::InvalidTuple(format!("j = {j} needs j < r = {}", t.r())));
    }
    let u = one_param_action(f, m, t).coefficient((f.characteristic() as usize).pow(j));
    nilpotent_check(f, &u, &format!("u_{j} on {m} at {t}"))?;
    Ok(u)
}

/// `Σ_i d exp_{β_i}(u_{r-1-i})`, each summand taken from the single-factor
/// subgroup `exp_{β_i}(s)`.
pub fn sum_action(f: &Field, m: &ModuleRep, t: &NilpotentTuple) -> Result<Mat> {
    let p = f.characteristic() as usize;
    let r = t.r();
    let cap = degree_cap(p as u64, r);
    let d = m.dim();
    let mut out = Mat::zeros(d, d);
    for (i, b) in t.betas.iter().enumerate() {
        let g = FpPolyMatrix::exp(f, b, 1, cap);
        out.add_assign(f, &m.evaluate(f, &g).coefficient(p.pow((r - 1 - i) as u32)));
    }
    nilpotent_check(f, &out, &format!("sum action on {m} at {t}"))?;
    Ok(out)
}

/// Freeness over `k[u]/(u^p)`: every Jordan block of `u` has size `p`.
pub fn is_free(f: &Field, u: &Mat) -> Result<bool> {
    let p = f.characteristic() as usize;
    nilpotent_check(f, u, "argument of is_free")?;
    let d = u.rows;
    if !d.is_multiple_of(p) || u.pow(f, p as u64 - 1).rank(f) != d / p {
        return Ok(false);
    }
    let mut pw = Mat::identity(d);
    for j in 0..=p {
        if pw.rank(f) != d * (p - j) / p {
            return Err(Error::NotNilpotent(format!("rank profile of a free module is inconsistent at j = {j}")));
        }
        pw = pw.mul(f, u);
    }
    Ok(true)
}

/// `N_p(sl_2)(F)`: trace-zero `2×2` matrices with `β² = 0`.
pub fn nilpotent_cone(f: &Field) -> Vec<Mat> {
    let els = f.elements();
    let mut out = Vec::new();
    for &a in &els {
        for &b in &els {
            for &c in &els {
                if f.add(f.mul(a, a), f.mul(b, c)) == Elem::ZERO {
                    out.push(Mat { rows: 2, cols: 2, data: vec![a, b, c, f.neg(a)] });
                }
            }
        }
    }
    out
}

/// All `r`-tuples of pairwise commuting elements of `N_p(sl_2)(F)`, in
/// lexicographic order of the cone enumeration.
pub fn enumerate_tuples(f: &Field, r: u32) -> Result<Vec<NilpotentTuple>> {
    let p = f.characteristic();
    if ![2, 3, 5, 7].contains(&p) || !(1..=3).contains(&r) {
        return Err(Error::Unsupported(format!("tuple enumeration needs p ∈ {{2,3,5,7}} and r ∈ {{1,2,3}}, got p = {p}, r = {r}")));
    }
    let cone = nilpotent_cone(f);
    let mut tuples: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..r {
        let mut next = Vec::new();
        for t in &tuples {
            for (k, b) in cone.iter().enumerate() {
                if t.iter().all(|&i| cone[i].mul(f, b) == b.mul(f, &cone[i])) {
                    let mut e = t.clone();
                    e.push(k);
                    next.push(e);
                }
            }
        }
        tuples = next;
    }
    Ok(tuples.into_iter().map(|t| NilpotentTuple { betas: t.into_iter().map(|i| cone[i].clone()).collect() }).collect())
}

/// Whether all nonzero entries of the tuple are scalar multiples of one
/// another.
pub fn on_common_line(f: &Field, t: &NilpotentTuple) -> bool {
    let Some(base) = t.betas.iter().find(|b| !b.is_zero()) else { return true };
    t.betas.iter().all(|b| f.elements().iter().any(|&c| base.scale(f, c) == *b))
}

/// Flags `t ∈ V_{G_(r)}(M)` for each tuple: `u_{r-1}` does not act freely.
pub fn support_flags(f: &Field, m: &ModuleRep, tuples: &[NilpotentTuple]) -> Result<Vec<bool>> {
    tuples
        .iter()
        .map(|t| {
            let j = t.r() as u32 - 1;
            Ok(!is_free(f, &u_coefficient_action(f, m, t, j)?)?)
        })
        .collect()
}

/// The `F`-points of `V_{G_(r)}(M)`.
pub fn support_points(f: &Field, m: &ModuleRep, r: u32) -> Result<Vec<NilpotentTuple>> {
    let tuples = enumerate_tuples(f, r)?;
    let flags = support_flags(f, m, &tuples)?;
    Ok(tuples.into_iter().zip(flags).filter(|(_, x)| *x).map(|(t, _)| t).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    Simple,
    Equal,
    Block,
    H0Remark,
    Friedlander,
}

impl Check {
    pub fn name(self) -> &'static str {
        match self {
            Check::Simple => "simple",
            Check::Equal => "equal",
            Check::Block => "block",
            Check::H0Remark => "h0-remark",
            Check::Friedlander => "friedlander",
        }
    }

    /// Whether disagreement counts as failure; the `H^0` comparison is
    /// exploratory only.
    pub fn asserts(self) -> bool {
        self != Check::H0Remark
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub subject: String,
    pub tuple: String,
    pub oracle: bool,
    pub expected: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleReport {
    pub check: Check,
    pub p: u64,
    pub r: u32,
    pub field_degree: u32,
    pub subjects: usize,
    pub tuples: usize,
    pub comparisons: usize,
    pub mismatches: usize,
    pub pass: bool,
    pub witnesses: Vec<Witness>,
}

impl OracleReport {
    fn new(check: Check, f: &Field, r: u32, subjects: usize, tuples: usize) -> Self {
        OracleReport {
            check,
            p: f.characteristic(),
            r,
            field_degree: f.degree(),
            subjects,
            tuples,
            comparisons: 0,
            mismatches: 0,
            pass: true,
            witnesses: Vec::new(),
        }
    }

    fn record(&mut self, subject: impl Fn() -> String, t: &NilpotentTuple, oracle: bool, expected: bool) {
        self.comparisons += 1;
        if oracle != expected {
            self.mismatches += 1;
            if self.check.asserts() {
                self.pass = false;
            }
            if self.witnesses.len() < WITNESS_LIMIT {
                self.witnesses.push(Witness { subject: subject(), tuple: t.to_string(), oracle, expected });
            }
        }
    }

    pub fn summary(&self) -> String {
        let verdict = match (self.check.asserts(), self.mismatches == 0) {
            (_, true) => "agree",
            (true, false) => "FAIL",
            (false, false) => "disagree",
        };
        format!(
            "{}: p={} r={} F_{}: {} subjects × {} tuples, {} comparisons, {} mismatches ({verdict})",
            self.check.name(),
            self.p,
            self.r,
            self.p.pow(self.field_degree),
            self.subjects,
            self.tuples,
            self.comparisons,
            self.mismatches
        )
    }
}

const WITNESS_LIMIT: usize = 20;

fn a1() -> RootSystem {
    RootSystem::new(Family::A, 1).expect("A1 exists")
}

/// Oracle support of `L(λ)` against the simple-module descriptor, for all
/// `λ ∈ X_r(T)`.
pub fn verify_simple(f: &Field, r: u32) -> Result<OracleReport> {
    let rs = a1();
    let p = f.characteristic();
    let tuples = enumerate_tuples(f, r)?;
    let weights: Vec<Weight> = restricted_weights(1, p, r).collect();
    let reg = SimpleRegistry::new();
    let mut rep = OracleReport::new(Check::Simple, f, r, weights.len(), tuples.len());
    for lambda in &weights {
        let m = sl2_simple(&rs, lambda, p)?;
        let desc = simple_variety(&rs, lambda, p, r, &reg)?;
        let flags = support_flags(f, &m, &tuples)?;
        for (t, &flag) in tuples.iter().zip(&flags) {
            let expected = membership_fp(&rs, f, &desc, &t.betas)?;
            rep.record(|| format!("L{lambda}: {desc}"), t, flag, expected);
        }
    }
    Ok(rep)
}

/// Freeness of the summed action against freeness of `u_{r-1}`.
pub fn verify_equal(f: &Field, r: u32) -> Result<OracleReport> {
    let rs = a1();
    let p = f.characteristic();
    let tuples = enumerate_tuples(f, r)?;
    let weights: Vec<Weight> = restricted_weights(1, p, r).collect();
    let mut rep = OracleReport::new(Check::Equal, f, r, weights.len(), tuples.len());
    for lambda in &weights {
        let m = sl2_simple(&rs, lambda, p)?;
        for t in &tuples {
            let sum = is_free(f, &sum_action(f, &m, t)?)?;
            let u = is_free(f, &u_coefficient_action(f, &m, t, r - 1)?)?;
            rep.record(|| format!("L{lambda}"), t, sum, u);
        }
    }
    Ok(rep)
}

/// Union of oracle supports over each block class against the block
/// descriptor.
pub fn verify_block(f: &Field, r: u32) -> Result<OracleReport> {
    let rs = a1();
    let p = f.characteristic();
    let tuples = enumerate_tuples(f, r)?;
    let classes = linkage::block_partition(&rs, p, r)?;
    let mut rep = OracleReport::new(Check::Block, f, r, classes.len(), tuples.len());
    for class in &classes {
        let mut union = vec![false; tuples.len()];
        for mu in &class.members {
            let flags = support_flags(f, &sl2_simple(&rs, mu, p)?, &tuples)?;
            for (u, x) in union.iter_mut().zip(flags) {
                *u |= x;
            }
        }
        let desc = block_variety(&rs, &class.base_weight, p, r)?;
        for (t, &flag) in tuples.iter().zip(&union) {
            let expected = membership_fp(&rs, f, &desc, &t.betas)?;
            rep.record(|| format!("block of {} (m = {}): {desc}", class.base_weight, class.m), t, flag, expected);
        }
    }
    Ok(rep)
}

/// Oracle support of `H^0(λ)` against the block descriptor of `λ`.
/// Disagreements are reported but do not fail the report.
pub fn h0_remark(f: &Field, r: u32) -> Result<OracleReport> {
    let rs = a1();
    let p = f.characteristic();
    let tuples = enumerate_tuples(f, r)?;
    let weights: Vec<Weight> = restricted_weights(1, p, r).collect();
    let mut rep = OracleReport::new(Check::H0Remark, f, r, weights.len(), tuples.len());
    for lambda in &weights {
        let flags = support_flags(f, &sl2_induced(&rs, lambda)?, &tuples)?;
        let desc = block_variety(&rs, lambda, p, r)?;
        for (t, &flag) in tuples.iter().zip(&flags) {
            let expected = membership_fp(&rs, f, &desc, &t.betas)?;
            rep.record(|| format!("H0{lambda}: {desc}"), t, flag, expected);
        }
    }
    Ok(rep)
}

/// For `λ ∈ X_1(T)`, every `β ∈ N_p(sl_2)(F)` and `1 ≤ m ≤ r-1`:
/// `d exp_β(u_m)^{p-1}` vanishes on `L(λ)`.
pub fn friedlander_check(f: &Field, r: u32) -> Result<OracleReport> {
    let rs = a1();
    let p = f.characteristic();
    let cone = nilpotent_cone(f);
    let weights: Vec<Weight> = restricted_weights(1, p, 1).collect();
    let mut rep = OracleReport::new(Check::Friedlander, f, r, weights.len(), cone.len());
    let cap = degree_cap(p, r as usize);
    for lambda in &weights {
        let m = sl2_simple(&rs, lambda, p)?;
        for b in &cone {
            let action = m.evaluate(f, &FpPolyMatrix::exp(f, b, 1, cap));
            for mm in 1..r {
                let u = action.coefficient((p as usize).pow(mm));
                let vanishes = u.pow(f, p - 1).is_zero();
                let t = NilpotentTuple { betas: vec![b.clone()] };
                rep.record(|| format!("L{lambda}, u_{mm}"), &t, vanishes, true);
            }
        }
    }
    Ok(rep)
}

pub fn run_check(check: Check, f: &Field, r: u32) -> Result<OracleReport> {
    match check {
        Check::Simple => verify_simple(f, r),
        Check::Equal => verify_equal(f, r),
        Check::Block => verify_block(f, r),
        Check::H0Remark => h0_remark(f, r),
        Check::Friedlander => friedlander_check(f, r),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(f: &Field) -> Mat {
        Mat::from_ints(f, &[vec![0, 1], vec![0, 0]])
    }

    fn w(d: i64) -> Weight {
        Weight(vec![d])
    }

    #[test]
    fn module_dimensions() {
        let rs = a1();
        assert_eq!(sl2_simple(&rs, &w(0), 5).unwrap().dim(), 1);
        assert_eq!(sl2_simple(&rs, &w(1), 5).unwrap().dim(), 2);
        for (l0, l1) in [(2, 3), (4, 4), (0, 1), (3, 0)] {
            assert_eq!(sl2_simple(&rs, &w(l0 + 5 * l1), 5).unwrap().dim(), ((l0 + 1) * (l1 + 1)) as usize);
        }
        assert_eq!(sl2_induced(&rs, &w(0)).unwrap().dim(), 1);
        assert_eq!(sl2_induced(&rs, &w(7)).unwrap().dim(), 8);
        assert_eq!(sl2_induced(&rs, &w(4)).unwrap().factors, sl2_simple(&rs, &w(4), 5).unwrap().factors);
        assert!(sl2_simple(&RootSystem::new(Family::A, 2).unwrap(), &Weight(vec![1, 0]), 7).is_err());
    }

    #[test]
    fn one_param_examples() {
        let f = Field::prime(5);
        let rs = a1();
        let l1 = sl2_simple(&rs, &w(1), 5).unwrap();
        let zero = NilpotentTuple::zero(2, 2);
        assert_eq!(one_param_action(&f, &l1, &zero), FpPolyMatrix::identity(2, 5));

        let t = NilpotentTuple::new(&f, vec![e(&f)]).unwrap();
        let g = one_param_action(&f, &l1, &t);
        assert_eq!(g.coefficient(0), Mat::identity(2));
        assert_eq!(g.coefficient(1), e(&f));

        let t = NilpotentTuple::new(&f, vec![Mat::zeros(2, 2), e(&f)]).unwrap();
        let g = one_param_action(&f, &l1, &t);
        assert_eq!(g.coefficient(5), e(&f));
        assert!(g.coefficient(1).is_zero());
        assert_eq!(u_coefficient_action(&f, &l1, &t, 1).unwrap(), e(&f));
    }

    #[test]
    fn tuple_validation() {
        let f = Field::prime(3);
        assert!(NilpotentTuple::new(&f, vec![Mat::identity(2)]).is_err());
        let h = Mat::from_ints(&f, &[vec![1, 0], vec![0, 2]]);
        assert!(NilpotentTuple::new(&f, vec![h]).is_err());
        let fm = Mat::from_ints(&f, &[vec![0, 0], vec![1, 0]]);
        let err = NilpotentTuple::new(&f, vec![e(&f), fm]).unwrap_err();
        assert!(err.to_string().contains("commute"));
    }

    #[test]
    fn freeness_examples() {
        let f = Field::prime(5);
        assert!(!is_free(&f, &Mat::zeros(5, 5)).unwrap());
        let mut j = Mat::zeros(5, 5);
        for i in 0..4 {
            j.set(i, i + 1, Elem::ONE);
        }
        assert!(is_free(&f, &j).unwrap());
        let mut j6 = Mat::zeros(6, 6);
        for i in 0..4 {
            j6.set(i, i + 1, Elem::ONE);
        }
        assert!(!is_free(&f, &j6).unwrap());
        let mut big = Mat::zeros(6, 6);
        for i in 0..5 {
            big.set(i, i + 1, Elem::ONE);
        }
        assert!(matches!(is_free(&f, &big), Err(Error::NotNilpotent(_))));
    }

    #[test]
    fn cone_counts() {
        assert_eq!(nilpotent_cone(&Field::prime(3)).len(), 9);
        assert_eq!(enumerate_tuples(&Field::prime(5), 1).unwrap().len(), 25);
        assert_eq!(nilpotent_cone(&Field::new(3, 2)).len(), 81);
        let f = Field::prime(3);
        let pairs = enumerate_tuples(&f, 2).unwrap();
        assert!(pairs.iter().all(|t| on_common_line(&f, t)));
        // 1 + (q+1)(q^r - 1) points on the union of lines
        assert_eq!(pairs.len(), 1 + 4 * 8);
        assert_eq!(enumerate_tuples(&Field::prime(5), 2).unwrap().len(), 1 + 6 * 24);
        assert!(enumerate_tuples(&Field::prime(11), 1).is_err());
        assert!(enumerate_tuples(&f, 4).is_err());
    }

    #[test]
    fn support_examples() {
        let f = Field::prime(3);
        let rs = a1();
        let all = enumerate_tuples(&f, 2).unwrap();
        let st = sl2_simple(&rs, &w(8), 3).unwrap();
        assert_eq!(support_points(&f, &st, 2).unwrap(), vec![NilpotentTuple::zero(2, 2)]);
        assert_eq!(support_points(&f, &ModuleRep::trivial(), 2).unwrap().len(), all.len());
        // L(2) is the Steinberg module of G_(1) at p = 3, so β_1 must vanish
        let pts = support_points(&f, &sl2_simple(&rs, &w(2), 3).unwrap(), 2).unwrap();
        assert_eq!(pts.len(), 9);
        assert!(pts.iter().all(|t| t.betas[1].is_zero()));
        // a digit below p-1 in the untwisted slot leaves the support full
        assert_eq!(support_points(&f, &sl2_simple(&rs, &w(1), 3).unwrap(), 2).unwrap().len(), all.len());
    }

    #[test]
    fn steinberg_u_action_rank() {
        let f = Field::prime(3);
        let rs = a1();
        let st = sl2_simple(&rs, &w(8), 3).unwrap();
        let t = NilpotentTuple::new(&f, vec![e(&f), e(&f).scale(&f, f.from_int(2))]).unwrap();
        let u = u_coefficient_action(&f, &st, &t, 1).unwrap();
        assert_eq!(u.rank(&f), 9 * 2 / 3);
        assert!(is_free(&f, &u).unwrap());
    }

    #[test]
    fn sum_action_single_term() {
        let f = Field::prime(5);
        let rs = a1();
        for t in enumerate_tuples(&f, 1).unwrap() {
            let m = sl2_simple(&rs, &w(3), 5).unwrap();
            assert_eq!(sum_action(&f, &m, &t).unwrap(), u_coefficient_action(&f, &m, &t, 0).unwrap());
        }
        let m = sl2_simple(&rs, &w(2 + 3 * 2), 3).unwrap();
        let f3 = Field::prime(3);
        for t in enumerate_tuples(&f3, 2).unwrap() {
            let a = is_free(&f3, &sum_action(&f3, &m, &t).unwrap()).unwrap();
            let b = is_free(&f3, &u_coefficient_action(&f3, &m, &t, 1).unwrap()).unwrap();
            assert_eq!(a, b, "{t}");
        }
    }

    #[test]
    fn representation_is_multiplicative() {
        let f = Field::prime(3);
        let rs = a1();
        let tuples = enumerate_tuples(&f, 2).unwrap();
        let m = sl2_simple(&rs, &w(5), 3).unwrap().tensor(&sl2_induced(&rs, &w(4)).unwrap());
        for (a, b) in tuples.iter().zip(tuples.iter().rev()).take(12) {
            let (ga, gb) = (a.exp(&f, 3), b.exp(&f, 3));
            let lhs = m.evaluate(&f, &ga.mul(&f, &gb));
            let rhs = m.evaluate(&f, &ga).mul(&f, &m.evaluate(&f, &gb));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn small_sweeps_pass() {
        let f = Field::prime(3);
        for check in [Check::Simple, Check::Equal, Check::Block, Check::Friedlander] {
            let rep = run_check(check, &f, 1).unwrap();
            assert!(rep.pass, "{}", rep.summary());
            assert_eq!(rep.mismatches, 0);
        }
    }
}
