//! Characters of the symplectic group Sp(2g) and their decomposition into
//! irreducibles, with Tate twists carried alongside.
//!
//! A character is a Laurent polynomial in `x_1..x_g`, stored fully expanded
//! as a map from exponent vectors to integer coefficients. Irreducible
//! characters are produced from dominant weight multiplicities computed with
//! Freudenthal's recursion and then expanded over Weyl group orbits.

pub mod cache;
pub mod expr;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default upper bound on the genus accepted by the character routines.
pub const DEFAULT_MAX_GENUS: usize = 8;

/// An irreducible `V_λ(r)`: partition `λ` with trailing zeros removed plus a
/// Tate twist `r`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct IrrepLabel {
    partition: Vec<u32>,
    twist: i32,
}

impl IrrepLabel {
    pub fn new(partition: impl Into<Vec<u32>>, twist: i32) -> Result<Self> {
        let mut partition = partition.into();
        if partition.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::NotAPartition(partition));
        }
        while partition.last() == Some(&0) {
            partition.pop();
        }
        Ok(IrrepLabel { partition, twist })
    }

    /// The standard module `H`, pure of weight -1.
    pub fn standard() -> Self {
        IrrepLabel {
            partition: vec![1],
            twist: 0,
        }
    }

    /// `Q(r)`.
    pub fn tate(twist: i32) -> Self {
        IrrepLabel {
            partition: Vec::new(),
            twist,
        }
    }

    pub fn partition(&self) -> &[u32] {
        &self.partition
    }

    pub fn twist(&self) -> i32 {
        self.twist
    }

    pub fn size(&self) -> u32 {
        self.partition.iter().sum()
    }

    pub fn fits_genus(&self, g: usize) -> bool {
        self.partition.len() <= g
    }
}

impl fmt::Display for IrrepLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.partition.iter().map(u32::to_string).collect();
        write!(f, "[{}]", parts.join(","))?;
        if self.twist != 0 {
            write!(f, "({})", self.twist)?;
        }
        Ok(())
    }
}

/// Weight of `V_λ(r)`: each box of `λ` contributes -1, the twist -2r.
pub fn weight_of(label: &IrrepLabel) -> i32 {
    -(label.size() as i32) - 2 * label.twist
}

/// A virtual Sp(2g) character, optionally tagged with a purity weight.
///
/// The weight is `None` once summands of different weights are mixed; such
/// characters still decompose, but constituents are then reported untwisted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Character {
    g: usize,
    terms: BTreeMap<Vec<i32>, i64>,
    weight: Option<i32>,
}

impl Character {
    pub fn zero(g: usize) -> Self {
        Character {
            g,
            terms: BTreeMap::new(),
            weight: None,
        }
    }

    pub fn trivial(g: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(vec![0; g], 1);
        Character {
            g,
            terms,
            weight: Some(0),
        }
    }

    /// The defining representation `H` of dimension `2g`.
    pub fn standard(g: usize) -> Self {
        let mut terms = BTreeMap::new();
        for i in 0..g {
            for s in [1, -1] {
                let mut e = vec![0; g];
                e[i] = s;
                terms.insert(e, 1);
            }
        }
        Character {
            g,
            terms,
            weight: Some(-1),
        }
    }

    pub fn from_terms(g: usize, terms: BTreeMap<Vec<i32>, i64>, weight: Option<i32>) -> Self {
        let terms = terms.into_iter().filter(|(_, c)| *c != 0).collect();
        Character { g, terms, weight }
    }

    pub fn genus(&self) -> usize {
        self.g
    }

    pub fn terms(&self) -> &BTreeMap<Vec<i32>, i64> {
        &self.terms
    }

    pub fn weight(&self) -> Option<i32> {
        self.weight
    }

    pub fn with_weight(mut self, weight: Option<i32>) -> Self {
        self.weight = weight;
        self
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Virtual dimension: the value at `x = (1, .., 1)`.
    pub fn dimension(&self) -> i64 {
        self.terms.values().sum()
    }

    pub fn coefficient(&self, exponent: &[i32]) -> i64 {
        self.terms.get(exponent).copied().unwrap_or(0)
    }

    fn check_genus(&self, other: &Self) -> Result<()> {
        if self.g != other.g {
            return Err(Error::GenusMismatch {
                left: self.g,
                right: other.g,
            });
        }
        Ok(())
    }

    fn sum_weight(&self, other: &Self) -> Option<i32> {
        // The zero character is neutral and should not erase the tag.
        match (self.is_zero(), other.is_zero()) {
            (true, _) => other.weight,
            (_, true) => self.weight,
            _ if self.weight == other.weight => self.weight,
            _ => None,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_genus(other)?;
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            *terms.entry(e.clone()).or_insert(0) += c;
        }
        Ok(Character::from_terms(self.g, terms, self.sum_weight(other)))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, k: i64) -> Self {
        let terms = self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect();
        Character::from_terms(self.g, terms, self.weight)
    }

    /// Character of the tensor product.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        self.check_genus(other)?;
        let mut terms: BTreeMap<Vec<i32>, i64> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<i32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                *terms.entry(e).or_insert(0) += c1 * c2;
            }
        }
        let weight = match (self.weight, other.weight) {
            (Some(a), Some(b)) => Some(a + b),
            _ => None,
        };
        Ok(Character::from_terms(self.g, terms, weight))
    }

    /// Adams operation: `x^e -> x^(k e)`.
    pub fn adams(&self, k: i32) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e.iter().map(|x| x * k).collect(), *c))
            .collect();
        Character {
            g: self.g,
            terms,
            weight: self.weight.map(|w| w * k),
        }
    }

    /// `V(r)`: same Sp-character, weight shifted by `-2r`.
    pub fn twist(&self, r: i32) -> Self {
        Character {
            g: self.g,
            terms: self.terms.clone(),
            weight: self.weight.map(|w| w - 2 * r),
        }
    }

    /// True when the term map is fixed by every signed permutation.
    pub fn is_weyl_symmetric(&self) -> bool {
        let g = self.g;
        self.terms.iter().all(|(e, c)| {
            let mut flipped = e.clone();
            if g > 0 {
                flipped[g - 1] = -flipped[g - 1];
            }
            let swaps_ok = (0..g.saturating_sub(1)).all(|i| {
                let mut s = e.clone();
                s.swap(i, i + 1);
                self.coefficient(&s) == *c
            });
            swaps_ok && self.coefficient(&flipped) == *c
        })
    }
}

/// `Λ^k` of a (virtual) character via the Newton identities on Adams operations.
pub fn exterior_power(c: &Character, k: usize) -> Character {
    let g = c.g;
    let mut e: Vec<Character> = vec![Character::trivial(g)];
    let adams: Vec<Character> = (1..=k).map(|i| c.adams(i as i32)).collect();
    for m in 1..=k {
        let mut acc = Character::zero(g);
        for i in 1..=m {
            let term = e[m - i].tensor(&adams[i - 1]).expect("same genus");
            let term = if i % 2 == 1 { term } else { term.scale(-1) };
            acc = acc.add(&term).expect("same genus");
        }
        let terms = acc
            .terms
            .into_iter()
            .map(|(exp, coeff)| {
                assert_eq!(coeff % m as i64, 0, "Newton identity must divide exactly");
                (exp, coeff / m as i64)
            })
            .collect();
        e.push(Character::from_terms(g, terms, None));
    }
    let weight = c.weight.map(|w| w * k as i32);
    e.pop().expect("nonempty").with_weight(weight)
}

/// Symmetric power `S^k` via the analogous Newton recursion.
pub fn symmetric_power(c: &Character, k: usize) -> Character {
    let g = c.g;
    let mut h: Vec<Character> = vec![Character::trivial(g)];
    let adams: Vec<Character> = (1..=k).map(|i| c.adams(i as i32)).collect();
    for m in 1..=k {
        let mut acc = Character::zero(g);
        for i in 1..=m {
            let term = h[m - i].tensor(&adams[i - 1]).expect("same genus");
            acc = acc.add(&term).expect("same genus");
        }
        let terms = acc
            .terms
            .into_iter()
            .map(|(exp, coeff)| {
                assert_eq!(coeff % m as i64, 0, "Newton identity must divide exactly");
                (exp, coeff / m as i64)
            })
            .collect();
        h.push(Character::from_terms(g, terms, None));
    }
    let weight = c.weight.map(|w| w * k as i32);
    h.pop().expect("nonempty").with_weight(weight)
}

fn check_partition(g: usize, partition: &[u32]) -> Result<Vec<u32>> {
    if g == 0 {
        return Err(Error::GenusTooSmall { g, min: 1 });
    }
    let label = IrrepLabel::new(partition.to_vec(), 0)?;
    if label.partition.len() > g {
        return Err(Error::PartitionTooLong {
            partition: partition.to_vec(),
            len: label.partition.len(),
            g,
        });
    }
    let mut p = label.partition;
    p.resize(g, 0);
    Ok(p)
}

type CharacterMemo = Mutex<HashMap<(usize, Vec<u32>), Arc<Character>>>;

fn memo() -> &'static CharacterMemo {
    static MEMO: OnceLock<CharacterMemo> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Irreducible character of `V_λ` for Sp(2g), tagged with weight `-|λ|`.
pub fn weyl_character(g: usize, partition: &[u32]) -> Result<Character> {
    let lambda = check_partition(g, partition)?;
    let key = (g, lambda.clone());
    if let Some(c) = memo().lock().expect("memo poisoned").get(&key) {
        return Ok((**c).clone());
    }
    let c = compute_weyl_character(g, &lambda);
    memo()
        .lock()
        .expect("memo poisoned")
        .insert(key, Arc::new(c.clone()));
    Ok(c)
}

/// Character of the irreducible named by `label`, twist included.
pub fn irrep_character(g: usize, label: &IrrepLabel) -> Result<Character> {
    Ok(weyl_character(g, &label.partition)?.twist(label.twist))
}

fn compute_weyl_character(g: usize, lambda: &[u32]) -> Character {
    let mults = dominant_multiplicities(g, lambda);
    let mut terms = BTreeMap::new();
    for (mu, m) in mults {
        for e in weyl_orbit(&mu) {
            terms.insert(e, m);
        }
    }
    let size: u32 = lambda.iter().sum();
    Character::from_terms(g, terms, Some(-(size as i32)))
}

fn inner(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Positive roots of type C_g in the orthonormal basis `ε_i`.
fn positive_roots(g: usize) -> Vec<Vec<i64>> {
    let mut roots = Vec::new();
    for i in 0..g {
        for j in i + 1..g {
            let mut minus = vec![0; g];
            minus[i] = 1;
            minus[j] = -1;
            roots.push(minus);
            let mut plus = vec![0; g];
            plus[i] = 1;
            plus[j] = 1;
            roots.push(plus);
        }
        let mut long = vec![0; g];
        long[i] = 2;
        roots.push(long);
    }
    roots
}

fn dominant_form(v: &[i64]) -> Vec<i64> {
    let mut d: Vec<i64> = v.iter().map(|x| x.abs()).collect();
    d.sort_unstable_by(|a, b| b.cmp(a));
    d
}

/// Dominant weights `μ ≤ λ` in the dominance order of C_g, with the height of `λ - μ`.
fn dominant_weights_below(lambda: &[u32]) -> Vec<(Vec<i64>, i64)> {
    let g = lambda.len();
    let total: i64 = lambda.iter().map(|&x| x as i64).sum();
    let top = lambda.first().copied().unwrap_or(0) as i64;
    let prefix: Vec<i64> = lambda
        .iter()
        .scan(0i64, |acc, &x| {
            *acc += x as i64;
            Some(*acc)
        })
        .collect();
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(g);
    fn rec(
        g: usize,
        max_part: i64,
        sum: i64,
        prefix: &[i64],
        total: i64,
        current: &mut Vec<i64>,
        out: &mut Vec<(Vec<i64>, i64)>,
    ) {
        if current.len() == g {
            if (total - sum) % 2 == 0 {
                // λ - μ = Σ c_i α_i with c_i the prefix differences (halved for the long root).
                let mut height = 0;
                let mut partial = 0;
                for i in 0..g {
                    partial += current[i];
                    let diff = prefix[i] - partial;
                    height += if i + 1 < g { diff } else { diff / 2 };
                }
                out.push((current.clone(), height));
            }
            return;
        }
        let i = current.len();
        for part in (0..=max_part).rev() {
            if sum + part > prefix[i] {
                continue;
            }
            current.push(part);
            rec(g, part, sum + part, prefix, total, current, out);
            current.pop();
        }
    }
    rec(g, top, 0, &prefix, total, &mut current, &mut out);
    out
}

/// Multiplicities of the dominant weights of `V_λ` via Freudenthal's formula.
fn dominant_multiplicities(g: usize, lambda: &[u32]) -> Vec<(Vec<i64>, i64)> {
    let rho: Vec<i64> = (1..=g as i64).rev().collect();
    let lam: Vec<i64> = lambda.iter().map(|&x| x as i64).collect();
    let top = lam.first().copied().unwrap_or(0);
    let lam_rho: Vec<i64> = lam.iter().zip(&rho).map(|(a, b)| a + b).collect();
    let norm_top = inner(&lam_rho, &lam_rho);
    let roots = positive_roots(g);

    let mut weights = dominant_weights_below(lambda);
    weights.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| b.0.cmp(&a.0)));

    let mut mult: HashMap<Vec<i64>, i64> = HashMap::new();
    let mut out = Vec::new();
    for (mu, height) in weights {
        let m = if height == 0 {
            1
        } else {
            let mut acc = 0i64;
            for alpha in &roots {
                let mut k = 1;
                loop {
                    let nu: Vec<i64> = mu.iter().zip(alpha).map(|(a, b)| a + k * b).collect();
                    if nu.iter().any(|x| x.abs() > top) {
                        break;
                    }
                    if let Some(m_nu) = mult.get(&dominant_form(&nu)) {
                        acc += m_nu * inner(&nu, alpha);
                    }
                    k += 1;
                }
            }
            let mu_rho: Vec<i64> = mu.iter().zip(&rho).map(|(a, b)| a + b).collect();
            let denom = norm_top - inner(&mu_rho, &mu_rho);
            assert!(
                denom > 0,
                "Freudenthal denominator must be positive below the top weight"
            );
            assert_eq!(
                (2 * acc) % denom,
                0,
                "Freudenthal recursion must divide exactly"
            );
            2 * acc / denom
        };
        if m != 0 {
            mult.insert(mu.clone(), m);
            out.push((mu, m));
        }
    }
    out
}

/// All signed permutations of a dominant weight, without repetition.
fn weyl_orbit(mu: &[i64]) -> Vec<Vec<i32>> {
    let mut perms: Vec<Vec<i64>> = Vec::new();
    let mut items: Vec<i64> = mu.to_vec();
    items.sort_unstable();
    loop {
        perms.push(items.clone());
        if !next_permutation(&mut items) {
            break;
        }
    }
    let mut out = Vec::new();
    for p in perms {
        let nonzero: Vec<usize> = (0..p.len()).filter(|&i| p[i] != 0).collect();
        for mask in 0u32..(1u32 << nonzero.len()) {
            let mut e: Vec<i32> = p.iter().map(|&x| x as i32).collect();
            for (bit, &idx) in nonzero.iter().enumerate() {
                if mask & (1 << bit) != 0 {
                    e[idx] = -e[idx];
                }
            }
            out.push(e);
        }
    }
    out
}

fn next_permutation(v: &mut [i64]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// A module given by multiplicities of twisted irreducibles.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightedModuleDescriptor {
    multiplicities: BTreeMap<IrrepLabel, u64>,
}

impl WeightedModuleDescriptor {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(label: IrrepLabel) -> Self {
        Self::default().with(label, 1)
    }

    /// Add `count` copies of `label`.
    pub fn with(mut self, label: IrrepLabel, count: u64) -> Self {
        if count > 0 {
            *self.multiplicities.entry(label).or_insert(0) += count;
        }
        self
    }

    pub fn multiplicity(&self, label: &IrrepLabel) -> u64 {
        self.multiplicities.get(label).copied().unwrap_or(0)
    }

    /// Multiplicity of a partition summed over all twists.
    pub fn partition_multiplicity(&self, partition: &[u32]) -> u64 {
        let label = IrrepLabel::new(partition.to_vec(), 0).expect("valid partition");
        self.multiplicities
            .iter()
            .filter(|(l, _)| l.partition == label.partition)
            .map(|(_, m)| *m)
            .sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&IrrepLabel, &u64)> {
        self.multiplicities.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.multiplicities.is_empty()
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (l, m) in &other.multiplicities {
            out = out.with(l.clone(), *m);
        }
        out
    }

    pub fn dimension(&self, g: usize) -> Result<u64> {
        let mut total = 0u64;
        for (l, m) in &self.multiplicities {
            total += weyl_character(g, &l.partition)?.dimension() as u64 * m;
        }
        Ok(total)
    }

    /// Distinct weights of the constituents, increasing.
    pub fn weights(&self) -> Vec<i32> {
        let mut w: Vec<i32> = self.multiplicities.keys().map(weight_of).collect();
        w.sort_unstable();
        w.dedup();
        w
    }

    /// Σ mult · character, the inverse of [`decompose`].
    pub fn reconstruct(&self, g: usize) -> Result<Character> {
        let mut acc = Character::zero(g);
        for (l, m) in &self.multiplicities {
            acc = acc.add(&irrep_character(g, l)?.scale(*m as i64))?;
        }
        let weights = self.weights();
        Ok(acc.with_weight(if weights.len() == 1 {
            Some(weights[0])
        } else {
            None
        }))
    }
}

impl fmt::Display for WeightedModuleDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.multiplicities.is_empty() {
            return write!(f, "{{}}");
        }
        let parts: Vec<String> = self
            .multiplicities
            .iter()
            .map(|(l, m)| format!("{l}: {m}"))
            .collect();
        write!(f, "{{ {} }}", parts.join(", "))
    }
}

fn lex_greatest_dominant(c: &Character) -> Option<(Vec<i32>, i64)> {
    c.terms
        .iter()
        .filter(|(e, _)| e.windows(2).all(|w| w[0] >= w[1]) && e.last().is_none_or(|x| *x >= 0))
        .max_by(|a, b| a.0.cmp(b.0))
        .map(|(e, c)| (e.clone(), *c))
}

fn constituent_twist(partition: &[u32], weight: Option<i32>) -> Result<i32> {
    let size: i32 = partition.iter().map(|&x| x as i32).sum();
    match weight {
        None => Ok(0),
        Some(w) => {
            let twice = -size - w;
            if twice % 2 != 0 {
                return Err(Error::WeightParity {
                    partition: partition.to_vec(),
                    weight: w,
                });
            }
            Ok(twice / 2)
        }
    }
}

/// Signed multiplicities of a virtual character.
pub fn decompose_virtual(g: usize, c: &Character) -> Result<BTreeMap<IrrepLabel, i64>> {
    if c.g != g {
        return Err(Error::GenusMismatch {
            left: g,
            right: c.g,
        });
    }
    let mut rest = c.clone();
    let mut out = BTreeMap::new();
    while let Some((top, m)) = lex_greatest_dominant(&rest) {
        let partition: Vec<u32> = top.iter().map(|&x| x as u32).collect();
        let chi = weyl_character(g, &partition)?;
        let twist = constituent_twist(&partition, c.weight)?;
        rest = rest.sub(&chi.scale(m))?;
        out.insert(IrrepLabel::new(partition, twist)?, m);
    }
    debug_assert!(
        rest.is_zero(),
        "a Weyl-symmetric character has a dominant term"
    );
    if !rest.is_zero() {
        return Err(Error::Inconsistent(
            "character is not Weyl symmetric".into(),
        ));
    }
    Ok(out)
}

/// Decompose a true character into irreducibles by repeatedly removing the
/// irreducible whose highest weight is the lexicographically greatest
/// dominant exponent present.
pub fn decompose(g: usize, c: &Character) -> Result<WeightedModuleDescriptor> {
    let signed = decompose_virtual(g, c)?;
    let mut out = WeightedModuleDescriptor::new();
    for (label, m) in signed {
        if m < 0 {
            return Err(Error::VirtualCharacter {
                label: label.to_string(),
                multiplicity: m,
            });
        }
        out = out.with(label, m as u64);
    }
    Ok(out)
}

/// Dimension of the space of equivariant maps `a -> b` (Schur's lemma).
pub fn hom_multiplicity(a: &WeightedModuleDescriptor, b: &WeightedModuleDescriptor) -> u64 {
    a.multiplicities
        .iter()
        .map(|(l, m)| m * b.multiplicity(l))
        .sum()
}

/// Weyl dimension formula for C_g: `Π_{α>0} (λ+ρ, α) / (ρ, α)`.
pub fn weyl_dimension(g: usize, partition: &[u32]) -> Result<u64> {
    let lambda = check_partition(g, partition)?;
    let rho: Vec<i64> = (1..=g as i64).rev().collect();
    let lr: Vec<i64> = lambda
        .iter()
        .zip(&rho)
        .map(|(&a, b)| a as i64 + b)
        .collect();
    let (mut num, mut den) = (1i128, 1i128);
    for alpha in positive_roots(g) {
        num *= inner(&lr, &alpha) as i128;
        den *= inner(&rho, &alpha) as i128;
    }
    Ok((num / den) as u64)
}

/// Character of `Λ^3_0 H = (Λ^3 H)(-1) / (H ∧ θ)`, pure of weight -1.
pub fn lambda3_0(g: usize) -> Character {
    let std = Character::standard(g);
    exterior_power(&std, 3)
        .sub(&std.twist(1))
        .expect("same genus")
        .twist(-1)
}

/// Character of `Λ^2_0 H = Λ^2 H / Q(1)`, pure of weight -2.
pub fn lambda2_0(g: usize) -> Character {
    let std = Character::standard(g);
    exterior_power(&std, 2)
        .sub(&Character::trivial(g).twist(1))
        .expect("same genus")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn binom(n: i64, k: i64) -> i64 {
        if k < 0 || k > n {
            return 0;
        }
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn standard_dimension() {
        let c = weyl_character(2, &[1]).unwrap();
        assert_eq!(c.dimension(), 4);
        assert_eq!(c, Character::standard(2));
    }

    #[test]
    fn dimensions_from_weyl_formula() {
        assert_eq!(weyl_character(3, &[1, 1, 1]).unwrap().dimension(), 14);
        assert_eq!(weyl_character(3, &[2, 2]).unwrap().dimension(), 90);
        assert_eq!(binom(6, 3) - 6, 14);
    }

    #[test]
    fn partition_too_long_rejected() {
        assert!(matches!(
            weyl_character(2, &[1, 1, 1]),
            Err(Error::PartitionTooLong { .. })
        ));
        assert!(weyl_character(2, &[1, 2]).is_err());
    }

    #[test]
    fn exterior_power_dimensions() {
        let std = Character::standard(3);
        let l0 = exterior_power(&std, 0);
        assert_eq!(l0, Character::trivial(3));
        assert_eq!(exterior_power(&std, 2).dimension(), 15);
        assert_eq!(exterior_power(&std, 3).dimension(), 20);
        assert_eq!(exterior_power(&std, 7).dimension(), 0);
    }

    #[test]
    fn decompositions() {
        let std = Character::standard(3);
        let l2 = decompose(3, &exterior_power(&std, 2)).unwrap();
        assert_eq!(
            l2,
            WeightedModuleDescriptor::new()
                .with(IrrepLabel::new(vec![1, 1], 0).unwrap(), 1)
                .with(IrrepLabel::tate(1), 1)
        );
        let l3 = decompose(3, &exterior_power(&std, 3)).unwrap();
        assert_eq!(
            l3,
            WeightedModuleDescriptor::new()
                .with(IrrepLabel::new(vec![1, 1, 1], 0).unwrap(), 1)
                .with(IrrepLabel::new(vec![1], 1).unwrap(), 1)
        );
        let std2 = Character::standard(2);
        let g2 = decompose(2, &exterior_power(&std2, 3)).unwrap();
        assert_eq!(g2.partition_multiplicity(&[1, 1, 1]), 0);
        assert_eq!(
            g2,
            WeightedModuleDescriptor::single(IrrepLabel::new(vec![1], 1).unwrap())
        );
    }

    #[test]
    fn virtual_input_signalled() {
        let g = 3;
        let c = Character::trivial(g).sub(&Character::standard(g)).unwrap();
        assert!(matches!(
            decompose(g, &c),
            Err(Error::VirtualCharacter { .. })
        ));
        let signed = decompose_virtual(g, &c).unwrap();
        assert_eq!(signed.len(), 2);
    }

    #[test]
    fn hom_counts() {
        for g in 3..=5 {
            let l3 = decompose(g, &lambda3_0(g)).unwrap();
            let h = decompose(g, &Character::standard(g)).unwrap();
            assert_eq!(hom_multiplicity(&l3, &h), 0);
            assert_eq!(hom_multiplicity(&h, &l3), 0);
            assert_eq!(hom_multiplicity(&l3, &l3), 1);
        }
    }

    #[test]
    fn bracket_target_multiplicity() {
        let hom = |g: usize| {
            let src = decompose(g, &exterior_power(&lambda3_0(g), 2)).unwrap();
            let dst = decompose(g, &lambda2_0(g)).unwrap();
            hom_multiplicity(&src, &dst)
        };
        assert_eq!(hom(3), 0);
        assert!(hom(4) >= 1);
    }

    #[test]
    fn weights() {
        assert_eq!(weight_of(&IrrepLabel::standard()), -1);
        assert_eq!(weight_of(&IrrepLabel::tate(1)), -2);
        assert_eq!(weight_of(&IrrepLabel::new(vec![1, 1, 1], -1).unwrap()), -1);
        let l3 = decompose(4, &lambda3_0(4)).unwrap();
        assert_eq!(
            l3,
            WeightedModuleDescriptor::single(IrrepLabel::new(vec![1, 1, 1], -1).unwrap())
        );
        let l2 = decompose(4, &lambda2_0(4)).unwrap();
        assert_eq!(
            l2,
            WeightedModuleDescriptor::single(IrrepLabel::new(vec![1, 1], 0).unwrap())
        );
    }

    #[test]
    fn labels_ignore_trailing_zeros() {
        assert_eq!(
            IrrepLabel::new(vec![2, 1, 0, 0], 1).unwrap(),
            IrrepLabel::new(vec![2, 1], 1).unwrap()
        );
        assert_ne!(
            IrrepLabel::new(vec![2, 1], 0).unwrap(),
            IrrepLabel::new(vec![2, 1], 1).unwrap()
        );
    }

    #[test]
    fn primitive_dimensions() {
        for g in 1..=6i64 {
            assert_eq!(lambda3_0(g as usize).dimension(), binom(2 * g, 3) - 2 * g);
            if g >= 2 {
                assert_eq!(lambda2_0(g as usize).dimension(), 2 * g * g - g - 1);
            }
        }
        assert_eq!(lambda3_0(2).dimension(), 0);
    }

    fn partition_strategy(g: usize) -> impl Strategy<Value = Vec<u32>> {
        proptest::collection::vec(0u32..4, g).prop_map(|mut p| {
            p.sort_unstable_by(|a, b| b.cmp(a));
            p
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]
        #[test]
        fn irreducibles_decompose_to_themselves(g in 1usize..4, seed in partition_strategy(3)) {
            let p: Vec<u32> = seed.into_iter().take(g).collect();
            let c = weyl_character(g, &p).unwrap();
            prop_assert!(c.is_weyl_symmetric());
            prop_assert_eq!(c.dimension() as u64, weyl_dimension(g, &p).unwrap());
            let d = decompose(g, &c).unwrap();
            let label = IrrepLabel::new(p.clone(), 0).unwrap();
            prop_assert_eq!(d, WeightedModuleDescriptor::single(label));
        }

        #[test]
        fn decompose_reconstruct_round_trip(g in 2usize..4, counts in proptest::collection::vec(0u64..3, 4)) {
            let labels = [vec![], vec![1], vec![1, 1], vec![2]];
            let mut desc = WeightedModuleDescriptor::new();
            for (p, m) in labels.iter().zip(&counts) {
                desc = desc.with(IrrepLabel::new(p.clone(), 0).unwrap(), *m);
            }
            let c = desc.reconstruct(g).unwrap().with_weight(None);
            prop_assert_eq!(decompose(g, &c).unwrap(), desc);
        }
    }
}
