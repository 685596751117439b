//! Root systems of the classical types and their weight lattices.
//!
//! Roots are built in the usual ε-coordinate model for each family and then
//! re-expressed over the simple roots and simple coroots; the ε-model stays
//! private. Weights are integer vectors in the fundamental-weight basis, so
//! that coordinate `i` of `λ` is `⟨λ, α_i^∨⟩`.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{self, QMatrix};

pub const DEFAULT_RANK_CAP: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
}

impl Family {
    /// `SL_n` and `Sp_2n` are simply connected; the `SO_n` realisations of
    /// types B and D are not.
    pub fn is_simply_connected(self) -> bool {
        matches!(self, Family::A | Family::C)
    }

    fn min_rank(self) -> usize {
        match self {
            Family::A => 1,
            Family::B | Family::C => 2,
            Family::D => 3,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
        };
        write!(f, "{c}")
    }
}

/// Parses a group or type name: `A3`, `C2`, `SL4` (A3), `Sp4` (C2),
/// `SO7` (B3), `SO8` (D4).
pub fn parse_group(name: &str) -> Result<(Family, usize)> {
    let bad = || Error::Parse(format!("unknown group name {name:?}"));
    let upper = name.trim().to_ascii_uppercase();
    let split = upper.find(|c: char| c.is_ascii_digit()).ok_or_else(bad)?;
    let (head, digits) = upper.split_at(split);
    let n: usize = digits.parse().map_err(|_| bad())?;
    let (family, rank) = match head {
        "A" => (Family::A, n),
        "B" => (Family::B, n),
        "C" => (Family::C, n),
        "D" => (Family::D, n),
        "SL" if n >= 2 => (Family::A, n - 1),
        "SP" if n >= 2 && n.is_multiple_of(2) => (Family::C, n / 2),
        "SO" if n >= 5 && !n.is_multiple_of(2) => (Family::B, (n - 1) / 2),
        "SO" if n >= 6 && n.is_multiple_of(2) => (Family::D, n / 2),
        _ => return Err(bad()),
    };
    Ok((family, rank))
}

/// An integral weight in fundamental-weight coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn new(coords: Vec<i64>) -> Self {
        Weight(coords)
    }

    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    pub fn rho(rank: usize) -> Self {
        Weight(vec![1; rank])
    }

    pub fn fundamental(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i] = 1;
        Weight(v)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&x| x >= 0)
    }

    /// Membership in `X_r(T)`: `0 ≤ λ_i < p^r` for all `i`.
    pub fn is_restricted(&self, p: u64, r: u32) -> bool {
        let bound = (p as i64).pow(r);
        self.0.iter().all(|&x| (0..bound).contains(&x))
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: i64) -> Weight {
        Weight(self.0.iter().map(|a| a * k).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl FromStr for Weight {
    type Err = Error;

    /// Accepts `4,7`, `(4,7)` or `[4, 7]`.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']);
        if inner.trim().is_empty() {
            return Err(Error::Parse(format!("empty weight {s:?}")));
        }
        inner
            .split(',')
            .map(|t| t.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad weight coordinate {t:?} in {s:?}"))))
            .collect::<Result<Vec<_>>>()
            .map(Weight)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Root {
    pub simple_root_coords: Vec<i64>,
    pub coroot_coords: Vec<i64>,
    pub positive: bool,
}

impl Root {
    pub fn height(&self) -> i64 {
        self.simple_root_coords.iter().sum()
    }
}

/// A word in the simple reflections, read as the composite
/// `s_{word[0]} ∘ s_{word[1]} ∘ ⋯`, so the last letter acts first.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeylElement {
    pub word: Vec<usize>,
}

impl WeylElement {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn simple(i: usize) -> Self {
        WeylElement { word: vec![i] }
    }

    /// `s_i ∘ self`.
    pub fn left_mul(&self, i: usize) -> Self {
        let mut word = Vec::with_capacity(self.word.len() + 1);
        word.push(i);
        word.extend_from_slice(&self.word);
        WeylElement { word }
    }
}

#[derive(Debug, Clone)]
pub struct RootSystem {
    pub family: Family,
    pub rank: usize,
    /// Positive roots first, ordered by height; `roots[i + N]` is `-roots[i]`.
    pub roots: Vec<Root>,
    /// `cartan[i][j] = ⟨α_i, α_j^∨⟩`; row `i` is `α_i` in fundamental coordinates.
    pub cartan: Vec<Vec<i64>>,
    pub inverse_cartan: QMatrix,
    pub highest_root: usize,
    pub highest_short_root: usize,
    pub coxeter_number: i64,
    pub cln_constant: Rational64,
    rank_cap: usize,
    reflections: Vec<Vec<usize>>,
    index: HashMap<Vec<i64>, usize>,
    gram: QMatrix,
    simple_norms: Vec<i64>,
}

fn eps(n: usize, terms: &[(usize, i64)]) -> Vec<i64> {
    let mut v = vec![0; n];
    for &(i, c) in terms {
        v[i] += c;
    }
    v
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Roots and simple roots in the ε-model.
fn epsilon_model(family: Family, l: usize) -> (Vec<Vec<i64>>, Vec<Vec<i64>>) {
    let mut roots = Vec::new();
    match family {
        Family::A => {
            let n = l + 1;
            for i in 0..n {
                for j in 0..n {
                    if i != j {
                        roots.push(eps(n, &[(i, 1), (j, -1)]));
                    }
                }
            }
            let simple = (0..l).map(|i| eps(n, &[(i, 1), (i + 1, -1)])).collect();
            (roots, simple)
        }
        Family::B | Family::C | Family::D => {
            let n = l;
            for i in 0..n {
                for j in i + 1..n {
                    for (si, sj) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                        roots.push(eps(n, &[(i, si), (j, sj)]));
                    }
                }
                match family {
                    Family::B => {
                        roots.push(eps(n, &[(i, 1)]));
                        roots.push(eps(n, &[(i, -1)]));
                    }
                    Family::C => {
                        roots.push(eps(n, &[(i, 2)]));
                        roots.push(eps(n, &[(i, -2)]));
                    }
                    _ => {}
                }
            }
            let mut simple: Vec<Vec<i64>> = (0..l - 1).map(|i| eps(n, &[(i, 1), (i + 1, -1)])).collect();
            simple.push(match family {
                Family::B => eps(n, &[(l - 1, 1)]),
                Family::C => eps(n, &[(l - 1, 2)]),
                _ => eps(n, &[(l - 2, 1), (l - 1, 1)]),
            });
            (roots, simple)
        }
    }
}

fn expected_root_count(family: Family, l: usize) -> usize {
    match family {
        Family::A => l * (l + 1),
        Family::B | Family::C => 2 * l * l,
        Family::D => 2 * l * (l - 1),
    }
}

/// The constant `c` entering the admissibility bound `p > h·c`.
pub fn cln_constant(family: Family, rank: usize) -> Rational64 {
    let l = rank as i64;
    match family {
        Family::A => Rational64::new((l + 1) * (l + 1), 4),
        Family::B => Rational64::new(l * (l + 1), 2),
        Family::C => Rational64::new(l * l, 2),
        Family::D => Rational64::new(l * (l - 1), 2),
    }
}

impl RootSystem {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        if rank < family.min_rank() {
            return Err(Error::RootSystem(format!(
                "type {family} requires rank >= {}, got {rank}",
                family.min_rank()
            )));
        }
        let (eps_roots, eps_simple) = epsilon_model(family, rank);
        assert_eq!(eps_roots.len(), expected_root_count(family, rank), "root count for {family}{rank}");

        let gram: QMatrix = eps_simple
            .iter()
            .map(|a| eps_simple.iter().map(|b| Rational64::from_integer(dot(a, b))).collect())
            .collect();
        let simple_norms: Vec<i64> = eps_simple.iter().map(|a| dot(a, a)).collect();

        let mut roots: Vec<(Root, i64)> = eps_roots
            .iter()
            .map(|alpha| {
                let rhs: Vec<Rational64> = eps_simple.iter().map(|s| Rational64::from_integer(dot(alpha, s))).collect();
                let c = lattice::solve(&gram, &rhs).expect("simple roots are independent");
                let simple: Vec<i64> = c.iter().map(|x| {
                    assert!(x.is_integer());
                    x.to_integer()
                }).collect();
                let norm = dot(alpha, alpha);
                // α^∨ = Σ c_i (|α_i|²/|α|²) α_i^∨
                let coroot: Vec<i64> = simple
                    .iter()
                    .zip(&simple_norms)
                    .map(|(&ci, &ni)| {
                        assert_eq!((ci * ni) % norm, 0);
                        ci * ni / norm
                    })
                    .collect();
                let positive = simple.iter().all(|&x| x >= 0);
                (Root { simple_root_coords: simple, coroot_coords: coroot, positive }, norm)
            })
            .collect();
        let mut pos: Vec<(Root, i64)> = roots.drain(..).filter(|(r, _)| r.positive).collect();
        pos.sort_by(|(a, _), (b, _)| a.height().cmp(&b.height()).then(b.simple_root_coords.cmp(&a.simple_root_coords)));
        let n_pos = pos.len();
        let norms: Vec<i64> = pos.iter().map(|(_, n)| *n).collect();
        let mut all: Vec<Root> = pos.into_iter().map(|(r, _)| r).collect();
        let negs: Vec<Root> = all
            .iter()
            .map(|r| Root {
                simple_root_coords: r.simple_root_coords.iter().map(|x| -x).collect(),
                coroot_coords: r.coroot_coords.iter().map(|x| -x).collect(),
                positive: false,
            })
            .collect();
        all.extend(negs);

        let cartan: Vec<Vec<i64>> = (0..rank)
            .map(|i| (0..rank).map(|j| 2 * dot(&eps_simple[i], &eps_simple[j]) / simple_norms[j]).collect())
            .collect();
        let inverse_cartan = lattice::inverse(&lattice::to_rational(&cartan)).expect("Cartan matrix is invertible");

        let index: HashMap<Vec<i64>, usize> =
            all.iter().enumerate().map(|(i, r)| (r.simple_root_coords.clone(), i)).collect();

        let highest_root = n_pos - 1;
        let short = *norms.iter().min().unwrap();
        let highest_short_root = (0..n_pos).rev().find(|&i| norms[i] == short).unwrap();
        let coxeter_number = (all.len() / rank) as i64;

        let mut rs = RootSystem {
            family,
            rank,
            roots: all,
            cartan,
            inverse_cartan,
            highest_root,
            highest_short_root,
            coxeter_number,
            cln_constant: cln_constant(family, rank),
            rank_cap: DEFAULT_RANK_CAP,
            reflections: Vec::new(),
            index,
            gram,
            simple_norms,
        };
        rs.reflections = (0..rank)
            .map(|i| {
                (0..rs.roots.len())
                    .map(|k| {
                        let a = &rs.roots[k].simple_root_coords;
                        let pairing: i64 = (0..rank).map(|j| a[j] * rs.cartan[j][i]).sum();
                        let mut img = a.clone();
                        img[i] -= pairing;
                        rs.index[&img]
                    })
                    .collect()
            })
            .collect();

        let rho = Weight::rho(rank);
        assert_eq!(rs.pairing(&rho, highest_short_root), coxeter_number - 1);
        Ok(rs)
    }

    pub fn from_name(name: &str) -> Result<Self> {
        let (family, rank) = parse_group(name)?;
        Self::new(family, rank)
    }

    pub fn with_rank_cap(mut self, cap: usize) -> Self {
        self.rank_cap = cap;
        self
    }

    pub fn rank_cap(&self) -> usize {
        self.rank_cap
    }

    pub fn name(&self) -> String {
        format!("{}{}", self.family, self.rank)
    }

    pub fn num_positive(&self) -> usize {
        self.roots.len() / 2
    }

    pub fn positive_roots(&self) -> impl Iterator<Item = (usize, &Root)> {
        self.roots.iter().enumerate().take(self.num_positive())
    }

    /// Index of the simple root `α_i`.
    pub fn simple_root(&self, i: usize) -> usize {
        let mut v = vec![0; self.rank];
        v[i] = 1;
        self.index[&v]
    }

    pub fn negate(&self, root: usize) -> usize {
        let n = self.num_positive();
        if root < n { root + n } else { root - n }
    }

    pub fn find_root(&self, simple_root_coords: &[i64]) -> Option<usize> {
        self.index.get(simple_root_coords).copied()
    }

    pub fn check_weight(&self, w: &Weight) -> Result<()> {
        if w.rank() != self.rank {
            return Err(Error::Arity { weight: w.clone(), got: w.rank(), rank: self.rank });
        }
        Ok(())
    }

    /// `⟨λ, α^∨⟩`.
    pub fn pairing(&self, lambda: &Weight, root: usize) -> i64 {
        dot(&self.roots[root].coroot_coords, &lambda.0)
    }

    /// The root as a weight in fundamental coordinates.
    pub fn root_weight(&self, root: usize) -> Weight {
        let c = &self.roots[root].simple_root_coords;
        Weight((0..self.rank).map(|i| (0..self.rank).map(|j| c[j] * self.cartan[j][i]).sum()).collect())
    }

    /// Linear action of the simple reflection `s_i`.
    pub fn reflect(&self, i: usize, lambda: &Weight) -> Weight {
        let k = lambda.0[i];
        Weight(lambda.0.iter().zip(&self.cartan[i]).map(|(x, a)| x - k * a).collect())
    }

    pub fn act(&self, w: &WeylElement, lambda: &Weight) -> Weight {
        w.word.iter().rev().fold(lambda.clone(), |acc, &i| self.reflect(i, &acc))
    }

    /// `w · λ = w(λ + ρ) − ρ`.
    pub fn dot_action(&self, w: &WeylElement, lambda: &Weight) -> Weight {
        let rho = Weight::rho(self.rank);
        self.act(w, &lambda.add(&rho)).sub(&rho)
    }

    /// Image of a root index under the simple reflection `s_i`.
    pub fn reflect_root(&self, i: usize, root: usize) -> usize {
        self.reflections[i][root]
    }

    pub fn act_on_root(&self, w: &WeylElement, root: usize) -> usize {
        w.word.iter().rev().fold(root, |acc, &i| self.reflections[i][acc])
    }

    fn check_cap(&self) -> Result<()> {
        if self.rank > self.rank_cap {
            return Err(Error::RankCap { rank: self.rank, cap: self.rank_cap });
        }
        Ok(())
    }

    /// `W`-orbit of `λ` under the linear action, sorted lexicographically.
    pub fn weyl_orbit(&self, lambda: &Weight) -> Result<Vec<Weight>> {
        self.check_cap()?;
        let mut seen = BTreeSet::new();
        let mut queue = VecDeque::from([lambda.clone()]);
        seen.insert(lambda.clone());
        while let Some(x) = queue.pop_front() {
            for i in 0..self.rank {
                let y = self.reflect(i, &x);
                if seen.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
        Ok(seen.into_iter().collect())
    }

    /// `W · λ` under the dot action, sorted lexicographically.
    pub fn dot_orbit(&self, lambda: &Weight) -> Result<Vec<Weight>> {
        let rho = Weight::rho(self.rank);
        let mut out: Vec<Weight> = self.weyl_orbit(&lambda.add(&rho))?.into_iter().map(|x| x.sub(&rho)).collect();
        out.sort();
        Ok(out)
    }

    pub fn weyl_group_order(&self) -> u128 {
        let l = self.rank as u128;
        let fact = |n: u128| (1..=n).product::<u128>();
        match self.family {
            Family::A => fact(l + 1),
            Family::B | Family::C => (1u128 << l) * fact(l),
            Family::D => (1u128 << (l - 1)) * fact(l),
        }
    }

    /// Roots of the standard Levi subsystem `ZI ∩ Φ`, as sorted indices.
    pub fn levi_roots(&self, levi: &[usize]) -> BTreeSet<usize> {
        self.roots
            .iter()
            .enumerate()
            .filter(|(_, r)| r.simple_root_coords.iter().enumerate().all(|(i, &c)| c == 0 || levi.contains(&i)))
            .map(|(k, _)| k)
            .collect()
    }

    /// `Σ_i Σ_j ⟨λ, α_i^∨⟩ b_ij` with `(b_ij)` the inverse Cartan matrix.
    pub fn inverse_cartan_weight_sum(&self, lambda: &Weight) -> Rational64 {
        let mut acc = Rational64::zero();
        for (i, &li) in lambda.0.iter().enumerate() {
            for j in 0..self.rank {
                acc += self.inverse_cartan[i][j] * li;
            }
        }
        acc
    }

    /// Expansion of `λ` over the simple roots, computed in the ε-model from
    /// the Gram matrix of the simple roots.
    pub fn simple_root_expansion(&self, lambda: &Weight) -> Vec<Rational64> {
        // ⟨λ, α_i^∨⟩ = 2(λ·α_i)/|α_i|², so (λ·α_i) = λ_i |α_i|² / 2.
        let rhs: Vec<Rational64> =
            lambda.0.iter().zip(&self.simple_norms).map(|(&l, &n)| Rational64::new(l * n, 2)).collect();
        lattice::solve(&self.gram, &rhs).expect("Gram matrix is nonsingular")
    }

    /// Base-`p` digits `λ = λ_0 + pλ_1 + ⋯ + p^qλ_q` with every `λ_i ∈ X_1(T)`.
    /// With `pad_to = Some(r)` the list is extended by zero weights to length
    /// at least `r`.
    pub fn steinberg_digits(&self, lambda: &Weight, p: u64, pad_to: Option<usize>) -> Result<Vec<Weight>> {
        self.check_weight(lambda)?;
        if !lambda.is_dominant() {
            return Err(Error::NotDominant(lambda.clone()));
        }
        let p = p as i64;
        let mut rest = lambda.0.clone();
        let mut digits = Vec::new();
        loop {
            digits.push(Weight(rest.iter().map(|x| x % p).collect()));
            rest.iter_mut().for_each(|x| *x /= p);
            if rest.iter().all(|&x| x == 0) {
                break;
            }
        }
        if let Some(r) = pad_to {
            while digits.len() < r {
                digits.push(Weight::zero(self.rank));
            }
        }
        Ok(digits)
    }

    pub fn gate_check(&self, p: u64) -> GateReport {
        let hc = self.cln_constant * self.coxeter_number;
        GateReport {
            p,
            coxeter_number: self.coxeter_number,
            cln_constant: self.cln_constant,
            threshold: hc,
            pass: Rational64::from_integer(p as i64) > hc,
        }
    }

    /// Smallest prime passing [`RootSystem::gate_check`].
    pub fn smallest_admissible_prime(&self) -> u64 {
        let hc = self.cln_constant * self.coxeter_number;
        let mut p = hc.floor().to_integer().max(1) as u64 + 1;
        while !crate::field::is_prime(p) || !(Rational64::from_integer(p as i64) > hc) {
            p += 1;
        }
        p
    }
}

/// All of `X_r(T)` in lexicographic order.
pub fn restricted_weights(rank: usize, p: u64, r: u32) -> impl Iterator<Item = Weight> {
    let bound = (p as i64).pow(r);
    let total = (bound as u128).pow(rank as u32);
    (0..total).map(move |mut k| {
        let mut v = vec![0i64; rank];
        for x in v.iter_mut().rev() {
            *x = (k % bound as u128) as i64;
            k /= bound as u128;
        }
        Weight(v)
    })
}

/// Inverse of [`RootSystem::steinberg_digits`].
pub fn recompose_digits(digits: &[Weight], p: u64) -> Weight {
    let rank = digits.first().map_or(0, |d| d.rank());
    let mut acc = Weight::zero(rank);
    let mut pow = 1i64;
    for d in digits {
        acc = acc.add(&d.scale(pow));
        pow *= p as i64;
    }
    acc
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GateReport {
    pub p: u64,
    pub coxeter_number: i64,
    #[serde(serialize_with = "ser_rational")]
    pub cln_constant: Rational64,
    #[serde(serialize_with = "ser_rational")]
    pub threshold: Rational64,
    pub pass: bool,
}

pub(crate) fn ser_rational<S: serde::Serializer>(q: &Rational64, s: S) -> std::result::Result<S::Ok, S::Error> {
    if q.is_integer() {
        s.serialize_str(&q.to_integer().to_string())
    } else {
        let (n, d) = (q.numer(), q.denom());
        let sign = if q.is_negative() { "-" } else { "" };
        s.serialize_str(&format!("{sign}{}/{}", n.abs(), d))
    }
}
