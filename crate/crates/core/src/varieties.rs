//! Symbolic support-variety descriptors.
//!
//! A [`G1Variety`] names a closed conical subvariety of the restricted
//! nullcone `N_p(g)`: the origin, the whole cone, the orbit closure `G·u_I`
//! for a standard Levi subset `I ⊆ Π`, or an unknown variety when no data is
//! available. A [`TupleVariety`] constrains each `β_i` of a commuting tuple
//! `(β_0, …, β_{r-1})` coordinatewise.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{self, Field};
use crate::linkage;
use crate::matrix::Mat;
use crate::rootsys::{parse_group, Family, RootSystem, Weight, WeylElement};

/// Support variety over the first Frobenius kernel.
///
/// Levi subsets are stored as sorted 0-based simple-root indices and
/// serialized 1-based (`"levi": [1]` is `{α_1}`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "G1Repr", try_from = "G1Repr")]
pub enum G1Variety {
    Zero,
    FullCone,
    OrbitClosure(Vec<usize>),
    Unknown,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum G1Repr {
    Zero,
    FullCone,
    OrbitClosure { levi: Vec<usize> },
    Unknown,
}

impl From<G1Variety> for G1Repr {
    fn from(v: G1Variety) -> Self {
        match v {
            G1Variety::Zero => G1Repr::Zero,
            G1Variety::FullCone => G1Repr::FullCone,
            G1Variety::OrbitClosure(levi) => G1Repr::OrbitClosure { levi: levi.iter().map(|i| i + 1).collect() },
            G1Variety::Unknown => G1Repr::Unknown,
        }
    }
}

impl TryFrom<G1Repr> for G1Variety {
    type Error = String;

    fn try_from(r: G1Repr) -> std::result::Result<Self, String> {
        Ok(match r {
            G1Repr::Zero => G1Variety::Zero,
            G1Repr::FullCone => G1Variety::FullCone,
            G1Repr::Unknown => G1Variety::Unknown,
            G1Repr::OrbitClosure { levi } => {
                if levi.contains(&0) {
                    return Err("levi indices are 1-based".into());
                }
                let mut v: Vec<usize> = levi.iter().map(|i| i - 1).collect();
                v.sort_unstable();
                v.dedup();
                G1Variety::OrbitClosure(v)
            }
        })
    }
}

impl G1Variety {
    /// `G·u_I`, normalised: `I = Π` is the origin and `I = ∅` the full cone.
    pub fn orbit_closure(rank: usize, levi: &[usize]) -> Self {
        let mut v = levi.to_vec();
        v.sort_unstable();
        v.dedup();
        if v.is_empty() {
            G1Variety::FullCone
        } else if v.len() == rank {
            G1Variety::Zero
        } else {
            G1Variety::OrbitClosure(v)
        }
    }

    /// Re-normalises a descriptor read from outside against a rank.
    pub fn normalized(self, rank: usize) -> Result<Self> {
        match self {
            G1Variety::OrbitClosure(levi) => {
                if let Some(&bad) = levi.iter().find(|&&i| i >= rank) {
                    return Err(Error::Parse(format!("levi index {} out of range for rank {rank}", bad + 1)));
                }
                Ok(Self::orbit_closure(rank, &levi))
            }
            other => Ok(other),
        }
    }

    /// Pointwise containment where it can be decided syntactically.
    pub fn contains(&self, other: &G1Variety) -> Option<bool> {
        use G1Variety::*;
        match (self, other) {
            (Unknown, _) | (_, Unknown) => None,
            (FullCone, _) | (_, Zero) => Some(true),
            (Zero, _) => Some(false),
            (OrbitClosure(a), OrbitClosure(b)) if a == b => Some(true),
            (OrbitClosure(_), FullCone) => Some(false),
            _ => None,
        }
    }

    /// Intersection where it can be expressed as a descriptor.
    pub fn intersect(&self, other: &G1Variety) -> G1Variety {
        match (self.contains(other), other.contains(self)) {
            (Some(true), _) => other.clone(),
            (_, Some(true)) => self.clone(),
            _ => G1Variety::Unknown,
        }
    }
}

impl fmt::Display for G1Variety {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            G1Variety::Zero => write!(f, "zero"),
            G1Variety::FullCone => write!(f, "full_cone"),
            G1Variety::Unknown => write!(f, "unknown"),
            G1Variety::OrbitClosure(l) => {
                let s: Vec<String> = l.iter().map(|i| format!("a{}", i + 1)).collect();
                write!(f, "orbit_closure{{{}}}", s.join(","))
            }
        }
    }
}

/// Support variety over `G_(r)`: coordinate `i` constrains `β_i`, always
/// inside the commuting variety `C_r(N_p(g))`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename = "tuple")]
pub struct TupleVariety {
    pub coords: Vec<G1Variety>,
}

impl TupleVariety {
    pub fn new(coords: Vec<G1Variety>) -> Self {
        TupleVariety { coords }
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn intersect(&self, other: &TupleVariety) -> TupleVariety {
        TupleVariety::new(self.coords.iter().zip(&other.coords).map(|(a, b)| a.intersect(b)).collect())
    }

    pub fn contains(&self, other: &TupleVariety) -> Option<bool> {
        let mut all = true;
        for (a, b) in self.coords.iter().zip(&other.coords) {
            all &= a.contains(b)?;
        }
        Some(all)
    }
}

impl fmt::Display for TupleVariety {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", s.join(", "))
    }
}

/// `V_{G_(1)}(L(λ))` for restricted `λ`, as supplied data.
///
/// Built in: the trivial module (full cone), the Steinberg module `(p-1)ρ`
/// (origin), and the complete table for `A_1`.
#[derive(Debug, Clone, Default)]
pub struct SimpleRegistry {
    entries: HashMap<(Family, usize, u64, Weight), G1Variety>,
}

pub fn registry_key(family: Family, rank: usize, p: u64, lambda: &Weight) -> String {
    format!("{family}{rank}|p={p}|{lambda}")
}

fn parse_registry_key(key: &str) -> Result<(Family, usize, u64, Weight)> {
    let bad = |msg: &str| Error::Registry { key: key.to_string(), msg: msg.to_string() };
    let parts: Vec<&str> = key.split('|').collect();
    let [group, p, lambda] = parts.as_slice() else {
        return Err(bad("expected <type><rank>|p=<prime>|(<weight>)"));
    };
    let (family, rank) = parse_group(group).map_err(|e| bad(&e.to_string()))?;
    let p: u64 = p.strip_prefix("p=").and_then(|s| s.parse().ok()).ok_or_else(|| bad("malformed p=<prime>"))?;
    let lambda: Weight = lambda.parse().map_err(|e: Error| bad(&e.to_string()))?;
    Ok((family, rank, p, lambda))
}

impl SimpleRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, family: Family, rank: usize, p: u64, lambda: Weight, v: G1Variety) -> Result<()> {
        let key = registry_key(family, rank, p, &lambda);
        let err = |msg: String| Error::Registry { key: key.clone(), msg };
        if !field::is_prime(p) {
            return Err(err(format!("{p} is not prime")));
        }
        if lambda.rank() != rank {
            return Err(err(format!("weight has {} coordinates, expected {rank}", lambda.rank())));
        }
        if !lambda.is_restricted(p, 1) {
            return Err(err("weight is not p-restricted".into()));
        }
        let v = v.normalized(rank).map_err(|e| err(e.to_string()))?;
        if lambda == Weight::rho(rank).scale(p as i64 - 1) && v != G1Variety::Zero {
            return Err(err("L((p-1)ρ) is projective over G_(1), so its variety must be zero".into()));
        }
        if lambda.is_zero() && v != G1Variety::FullCone {
            return Err(err("the trivial module has the full nullcone as support".into()));
        }
        self.entries.insert((family, rank, p, lambda), v);
        Ok(())
    }

    /// Parses the JSON map `{"A2|p=7|(1,0)": {"kind": "full_cone"}, …}`.
    pub fn from_json_str(text: &str) -> Result<Self> {
        let mut reg = Self::new();
        if text.trim().is_empty() {
            return Ok(reg);
        }
        let raw: BTreeMap<String, serde_json::Value> =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("registry: {e}")))?;
        for (key, value) in raw {
            let (family, rank, p, lambda) = parse_registry_key(&key)?;
            let v: G1Variety = serde_json::from_value(value)
                .map_err(|e| Error::Registry { key: key.clone(), msg: e.to_string() })?;
            reg.insert(family, rank, p, lambda, v)?;
        }
        Ok(reg)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let map: BTreeMap<String, &G1Variety> =
            self.entries.iter().map(|((f, l, p, w), v)| (registry_key(*f, *l, *p, w), v)).collect();
        serde_json::to_value(map).expect("registry serializes")
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn lookup(&self, rs: &RootSystem, p: u64, lambda: &Weight) -> G1Variety {
        if lambda.is_zero() {
            return G1Variety::FullCone;
        }
        if *lambda == Weight::rho(rs.rank).scale(p as i64 - 1) {
            return G1Variety::Zero;
        }
        if let Some(v) = self.entries.get(&(rs.family, rs.rank, p, lambda.clone())) {
            return v.clone();
        }
        if rs.family == Family::A && rs.rank == 1 && lambda.is_restricted(p, 1) {
            return G1Variety::FullCone;
        }
        G1Variety::Unknown
    }
}

/// `Φ_λ = {α : p | ⟨λ+ρ, α^∨⟩}` as sorted root indices.
pub fn phi_lambda(rs: &RootSystem, lambda: &Weight, p: u64) -> Result<BTreeSet<usize>> {
    rs.check_weight(lambda)?;
    let shifted = lambda.add(&Weight::rho(rs.rank));
    Ok((0..rs.roots.len()).filter(|&k| rs.pairing(&shifted, k) % p as i64 == 0).collect())
}

fn bitset(n: usize, s: impl IntoIterator<Item = usize>) -> Vec<u64> {
    let mut b = vec![0u64; n.div_ceil(64)];
    for k in s {
        b[k / 64] |= 1 << (k % 64);
    }
    b
}

fn bits(b: &[u64]) -> impl Iterator<Item = usize> + '_ {
    b.iter().enumerate().flat_map(|(w, &x)| (0..64).filter(move |i| x >> i & 1 == 1).map(move |i| w * 64 + i))
}

/// Finds `w ∈ W` and `I ⊆ Π` with `w(S) = ZI ∩ Φ`.
///
/// The whole `W`-orbit of `S` is searched and the lexicographically least
/// `I` is returned, so the answer depends only on the orbit of `S`.
pub fn levi_conjugate(rs: &RootSystem, set: &BTreeSet<usize>) -> Result<(WeylElement, Vec<usize>)> {
    if rs.rank > rs.rank_cap() {
        return Err(Error::RankCap { rank: rs.rank, cap: rs.rank_cap() });
    }
    let n = rs.roots.len();
    let simple: Vec<usize> = (0..rs.rank).map(|i| rs.simple_root(i)).collect();
    let start = bitset(n, set.iter().copied());
    let mut seen: HashMap<Vec<u64>, ()> = HashMap::from([(start.clone(), ())]);
    let mut queue = VecDeque::from([(start, WeylElement::identity())]);
    let mut best: Option<(Vec<usize>, WeylElement)> = None;
    while let Some((img, w)) = queue.pop_front() {
        let levi: Vec<usize> = (0..rs.rank).filter(|&i| img[simple[i] / 64] >> (simple[i] % 64) & 1 == 1).collect();
        if best.as_ref().is_none_or(|(b, _)| levi < *b) && bitset(n, rs.levi_roots(&levi)) == img {
            best = Some((levi, w.clone()));
        }
        for i in 0..rs.rank {
            let next = bitset(n, bits(&img).map(|k| rs.reflect_root(i, k)));
            if seen.insert(next.clone(), ()).is_none() {
                queue.push_back((next, w.left_mul(i)));
            }
        }
    }
    let describe = || {
        let s: Vec<String> = set.iter().map(|&k| format!("{:?}", rs.roots[k].simple_root_coords)).collect();
        format!("{{{}}}", s.join(", "))
    };
    let (levi, w) = best.ok_or_else(|| Error::LeviSearch(describe()))?;
    let image: BTreeSet<usize> = set.iter().map(|&k| rs.act_on_root(&w, k)).collect();
    if image != rs.levi_roots(&levi) {
        return Err(Error::LeviSearch(describe()));
    }
    Ok((w, levi))
}

/// `V_{G_(1)}(H^0(λ)) = G·u_I` with `w(Φ_λ) = ZI ∩ Φ`.
pub fn induced_variety(rs: &RootSystem, lambda: &Weight, p: u64) -> Result<G1Variety> {
    let phi = phi_lambda(rs, lambda, p)?;
    let (_, levi) = levi_conjugate(rs, &phi)?;
    Ok(G1Variety::orbit_closure(rs.rank, &levi))
}

/// Dimension of the descriptor: `2(|Φ⁺| − |Φ⁺ ∩ ZI|)` for `G·u_I`.
pub fn orbit_dim(rs: &RootSystem, v: &G1Variety) -> Option<usize> {
    match v {
        G1Variety::Zero => Some(0),
        G1Variety::FullCone => Some(rs.roots.len()),
        G1Variety::OrbitClosure(levi) => Some(rs.roots.len() - rs.levi_roots(levi).len()),
        G1Variety::Unknown => None,
    }
}

/// Coordinate `i` is `V_{G_(1)}(L(λ_{r-i-1}))` for the base-`p` digits of `λ`.
pub fn simple_variety(rs: &RootSystem, lambda: &Weight, p: u64, r: u32, reg: &SimpleRegistry) -> Result<TupleVariety> {
    let digits = rs.steinberg_digits(lambda, p, Some(r as usize))?;
    let r = r as usize;
    Ok(TupleVariety::new((0..r).map(|i| reg.lookup(rs, p, &digits[r - i - 1])).collect()))
}

/// Support variety of the block of `Dist(G_(r))` containing `L(λ)`:
/// with `m` from [`linkage::digit_m`], coordinates below `r-m` are
/// unconstrained, coordinate `r-m` lies in `V_{G_(1)}(H^0(λ_{m-1}))` and the
/// rest vanish. The Steinberg block (`m = r+1`) is the origin.
pub fn block_variety(rs: &RootSystem, lambda: &Weight, p: u64, r: u32) -> Result<TupleVariety> {
    if !rs.family.is_simply_connected() {
        return Err(Error::Unsupported(format!("block varieties need SL_n or Sp_2n, not type {}", rs.family)));
    }
    let m = linkage::digit_m(rs, lambda, p, r)?;
    let r = r as usize;
    let m = m as usize;
    if m == r + 1 {
        return Ok(TupleVariety::new(vec![G1Variety::Zero; r]));
    }
    let digits = rs.steinberg_digits(lambda, p, Some(r))?;
    let pivot = r - m;
    let at_pivot = induced_variety(rs, &digits[m - 1], p)?;
    Ok(TupleVariety::new(
        (0..r)
            .map(|i| match i.cmp(&pivot) {
                std::cmp::Ordering::Less => G1Variety::FullCone,
                std::cmp::Ordering::Equal => at_pivot.clone(),
                std::cmp::Ordering::Greater => G1Variety::Zero,
            })
            .collect(),
    ))
}

/// `Σ_i dim V_{G_(1)}(L(λ_i))` over the first `r` digits; `None` if any
/// term is unknown.
pub fn complexity_upper(rs: &RootSystem, lambda: &Weight, p: u64, r: u32, reg: &SimpleRegistry) -> Result<Option<usize>> {
    let tv = simple_variety(rs, lambda, p, r, reg)?;
    Ok(tv.coords.iter().map(|v| orbit_dim(rs, v)).sum())
}

/// Jordan type of the Richardson orbit of the parabolic with Levi `I` in
/// type `A_ℓ`: the conjugate of the Levi block sizes.
pub fn richardson_partition(rank: usize, levi: &[usize]) -> Vec<usize> {
    let mut blocks = vec![1usize];
    for i in 0..rank {
        if levi.contains(&i) {
            *blocks.last_mut().unwrap() += 1;
        } else {
            blocks.push(1);
        }
    }
    let largest = *blocks.iter().max().unwrap();
    (1..=largest).map(|k| blocks.iter().filter(|&&b| b >= k).count()).collect()
}

/// `rank(x^j)` for a nilpotent `x` of Jordan type `partition`.
pub fn partition_rank(partition: &[usize], j: usize) -> usize {
    partition.iter().map(|&k| k.saturating_sub(j)).sum()
}

/// Whether the `F_q`-point `(β_0, …, β_{r-1})` of `C_r(N_p(g))` lies in
/// the descriptor. Orbit closures are only decidable in type A, where
/// they are cut out by rank conditions on powers.
pub fn membership_fp(rs: &RootSystem, f: &Field, tv: &TupleVariety, tuple: &[Mat]) -> Result<bool> {
    if tv.len() != tuple.len() {
        return Err(Error::InvalidTuple(format!("descriptor has {} coordinates, tuple has {}", tv.len(), tuple.len())));
    }
    let mut inside = true;
    for (i, (v, beta)) in tv.coords.iter().zip(tuple).enumerate() {
        let ok = match v {
            G1Variety::Zero => beta.is_zero(),
            G1Variety::FullCone => true,
            G1Variety::Unknown => return Err(Error::Undecidable(format!("coordinate {i} is unknown"))),
            G1Variety::OrbitClosure(levi) => {
                if rs.family != Family::A {
                    return Err(Error::Undecidable(format!(
                        "orbit closure membership is only implemented in type A, not {}",
                        rs.family
                    )));
                }
                let part = richardson_partition(rs.rank, levi);
                let mut pw = beta.clone();
                let mut ok = true;
                for j in 1..=rs.rank + 1 {
                    if pw.rank(f) > partition_rank(&part, j) {
                        ok = false;
                        break;
                    }
                    pw = pw.mul(f, beta);
                }
                ok
            }
        };
        inside &= ok;
    }
    Ok(inside)
}
