//! Free graded Lie algebras on labeled symplectic generators.
//!
//! Elements are kept in the Lyndon basis: each Lyndon word stands for its
//! standard bracketing, and brackets of basis elements are rewritten back
//! into the basis with the usual Jacobi recursion.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{parse_fraction, Field};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Kind {
    A,
    B,
}

/// `a_k^{(i)}` or `b_k^{(i)}`: symplectic basis vector `k` of copy `i`.
///
/// Field order fixes the generator order: by copy, then index, then `a < b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SymplecticGenerator {
    pub copy: u32,
    pub index: u32,
    pub kind: Kind,
}

impl SymplecticGenerator {
    pub fn a(index: u32, copy: u32) -> Self {
        SymplecticGenerator {
            copy,
            index,
            kind: Kind::A,
        }
    }

    pub fn b(index: u32, copy: u32) -> Self {
        SymplecticGenerator {
            copy,
            index,
            kind: Kind::B,
        }
    }

    /// The same basis vector of `H` in another copy.
    pub fn in_copy(self, copy: u32) -> Self {
        SymplecticGenerator { copy, ..self }
    }

    /// Intersection number of the underlying vectors of `H`; copies are ignored.
    pub fn pairing(&self, other: &Self) -> i64 {
        if self.index != other.index {
            return 0;
        }
        match (self.kind, other.kind) {
            (Kind::A, Kind::B) => 1,
            (Kind::B, Kind::A) => -1,
            _ => 0,
        }
    }
}

impl fmt::Display for SymplecticGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = match self.kind {
            Kind::A => 'a',
            Kind::B => 'b',
        };
        write!(f, "{k}{}.{}", self.index, self.copy)
    }
}

impl FromStr for SymplecticGenerator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse {
            pos: 0,
            msg: format!("bad generator '{s}'"),
        };
        let s = s.trim();
        let kind = match s.chars().next() {
            Some('a') => Kind::A,
            Some('b') => Kind::B,
            _ => return Err(bad()),
        };
        let (index, copy) = s[1..].split_once('.').ok_or_else(bad)?;
        let index: u32 = index.parse().map_err(|_| bad())?;
        let copy: u32 = copy.parse().map_err(|_| bad())?;
        if index == 0 {
            return Err(bad());
        }
        Ok(SymplecticGenerator { copy, index, kind })
    }
}

/// All generators of `H^{⊕copies}` in generator order.
pub fn generators(g: usize, copies: &[u32]) -> Vec<SymplecticGenerator> {
    let mut copies = copies.to_vec();
    copies.sort_unstable();
    copies.dedup();
    let mut out = Vec::with_capacity(2 * g * copies.len());
    for &c in &copies {
        for k in 1..=g as u32 {
            out.push(SymplecticGenerator::a(k, c));
            out.push(SymplecticGenerator::b(k, c));
        }
    }
    out
}

pub fn is_lyndon<L: Ord>(word: &[L]) -> bool {
    let n = word.len();
    if n == 0 {
        return false;
    }
    (1..n).all(|i| {
        let rotated = word[i..].iter().chain(&word[..i]);
        word.iter().lt(rotated)
    })
}

/// A Lyndon word, standing for its standard (right-normed by factorization) bracketing.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LyndonMonomial {
    word: Vec<SymplecticGenerator>,
}

impl LyndonMonomial {
    pub fn new(word: Vec<SymplecticGenerator>) -> Option<Self> {
        is_lyndon(&word).then_some(LyndonMonomial { word })
    }

    pub fn letter(gen: SymplecticGenerator) -> Self {
        LyndonMonomial { word: vec![gen] }
    }

    pub fn word(&self) -> &[SymplecticGenerator] {
        &self.word
    }

    pub fn weight(&self) -> usize {
        self.word.len()
    }

    /// `w = u v` with `v` the longest proper Lyndon suffix.
    pub fn standard_factorization(&self) -> Option<(LyndonMonomial, LyndonMonomial)> {
        let w = &self.word;
        (1..w.len()).find(|&i| is_lyndon(&w[i..])).map(|i| {
            (
                LyndonMonomial {
                    word: w[..i].to_vec(),
                },
                LyndonMonomial {
                    word: w[i..].to_vec(),
                },
            )
        })
    }

    /// The bracketed form, e.g. `[a1.1,[a1.1,b1.1]]`.
    pub fn bracketed(&self) -> String {
        match self.standard_factorization() {
            None => self.word[0].to_string(),
            Some((u, v)) => format!("[{},{}]", u.bracketed(), v.bracketed()),
        }
    }
}

impl fmt::Display for LyndonMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letters: Vec<String> = self.word.iter().map(ToString::to_string).collect();
        write!(f, "[{}]", letters.join(","))
    }
}

/// Lyndon words of length exactly `len` over a sorted alphabet (Duval's algorithm).
pub fn lyndon_words<L: Clone>(alphabet: &[L], len: usize) -> Vec<Vec<L>> {
    let k = alphabet.len();
    let mut out = Vec::new();
    if k == 0 || len == 0 {
        return out;
    }
    let mut w: Vec<usize> = vec![0];
    loop {
        if w.len() == len {
            out.push(w.iter().map(|&i| alphabet[i].clone()).collect());
        }
        let m = w.len();
        while w.len() < len {
            let x = w[w.len() - m];
            w.push(x);
        }
        while w.last() == Some(&(k - 1)) {
            w.pop();
        }
        match w.last_mut() {
            None => break,
            Some(last) => *last += 1,
        }
    }
    out
}

/// The Lyndon basis of the weight-`w` layer of the free Lie algebra on `H^{⊕copies}`.
pub fn lyndon_basis(g: usize, copies: &[u32], w: usize) -> Vec<LyndonMonomial> {
    lyndon_words(&generators(g, copies), w)
        .into_iter()
        .map(|word| LyndonMonomial { word })
        .collect()
}

/// A finite linear combination of Lyndon monomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieElement<T> {
    terms: BTreeMap<LyndonMonomial, T>,
}

impl<T: Field> Default for LieElement<T> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<T: Field> LieElement<T> {
    pub fn zero() -> Self {
        LieElement {
            terms: BTreeMap::new(),
        }
    }

    pub fn generator(gen: SymplecticGenerator) -> Self {
        Self::monomial(LyndonMonomial::letter(gen), T::one())
    }

    pub fn monomial(m: LyndonMonomial, coeff: T) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(m, coeff);
        }
        LieElement { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (LyndonMonomial, T)>>(terms: I) -> Self {
        let mut out = Self::zero();
        for (m, c) in terms {
            out.add_term(m, c);
        }
        out
    }

    fn add_term(&mut self, m: LyndonMonomial, c: T) {
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&m) {
            Some(old) => old + c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(m, sum);
        }
    }

    pub fn terms(&self) -> &BTreeMap<LyndonMonomial, T> {
        &self.terms
    }

    pub fn coefficient(&self, m: &LyndonMonomial) -> T {
        self.terms.get(m).cloned().unwrap_or_else(T::zero)
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

    /// The common weight of all terms, or `None` for zero or mixed elements.
    pub fn weight(&self) -> Option<usize> {
        let mut weights = self.terms.keys().map(LyndonMonomial::weight);
        let first = weights.next()?;
        weights.all(|w| w == first).then_some(first)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.weight().is_some()
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn minus(&self, other: &Self) -> Self {
        self.plus(&other.scale(&-T::one()))
    }

    pub fn scale(&self, factor: &T) -> Self {
        if factor.is_zero() {
            return Self::zero();
        }
        LieElement {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.clone() * factor.clone()))
                .collect(),
        }
    }

    /// Generators occurring anywhere in the element.
    pub fn support(&self) -> impl Iterator<Item = &SymplecticGenerator> {
        self.terms.keys().flat_map(|m| m.word.iter())
    }

    /// Apply a linear substitution on generators and re-expand in the Lyndon basis.
    pub fn substitute<F>(&self, image: F, cutoff: usize) -> Self
    where
        F: Fn(&SymplecticGenerator) -> LieElement<T>,
    {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out = out.plus(&substitute_monomial(m, &image, cutoff).scale(c));
        }
        out
    }
}

fn substitute_monomial<T: Field, F>(m: &LyndonMonomial, image: &F, cutoff: usize) -> LieElement<T>
where
    F: Fn(&SymplecticGenerator) -> LieElement<T>,
{
    match m.standard_factorization() {
        None => image(&m.word[0]),
        Some((u, v)) => bracket(
            &substitute_monomial(&u, image, cutoff),
            &substitute_monomial(&v, image, cutoff),
            cutoff,
        ),
    }
}

impl<T: Field> fmt::Display for LieElement<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return writeln!(f, "0");
        }
        for (m, c) in &self.terms {
            writeln!(f, "{c} * {m}")?;
        }
        Ok(())
    }
}

impl<T: Field> FromStr for LieElement<T> {
    type Err = Error;

    /// Parse the line format written by `Display`: `coefficient * [gen,gen,...]`.
    fn from_str(s: &str) -> Result<Self> {
        let mut out = Self::zero();
        let mut offset = 0;
        for line in s.split_inclusive('\n') {
            let here = offset;
            offset += line.len();
            let line = line.trim();
            if line.is_empty() || line == "0" {
                continue;
            }
            let err = |msg: &str| Error::Parse {
                pos: here,
                msg: format!("{msg}: '{line}'"),
            };
            let (coeff, word) = line.split_once('*').ok_or_else(|| err("missing '*'"))?;
            let coeff: T = parse_fraction(coeff).ok_or_else(|| err("bad coefficient"))?;
            let word = word.trim();
            let inner = word
                .strip_prefix('[')
                .and_then(|w| w.strip_suffix(']'))
                .ok_or_else(|| err("word must be bracketed"))?;
            let letters = inner
                .split(',')
                .map(str::parse)
                .collect::<Result<Vec<SymplecticGenerator>>>()?;
            let m = LyndonMonomial::new(letters).ok_or_else(|| err("not a Lyndon word"))?;
            out.add_term(m, coeff);
        }
        Ok(out)
    }
}

/// `[P(u), P(v)]` for Lyndon words `u`, `v`, expanded in the Lyndon basis.
fn bracket_words<T: Field>(u: &LyndonMonomial, v: &LyndonMonomial) -> LieElement<T> {
    use std::cmp::Ordering;
    match u.cmp(v) {
        Ordering::Equal => LieElement::zero(),
        Ordering::Greater => bracket_words::<T>(v, u).scale(&-T::one()),
        Ordering::Less => {
            let concat = || {
                let mut word = u.word.clone();
                word.extend_from_slice(&v.word);
                LieElement::monomial(LyndonMonomial { word }, T::one())
            };
            match u.standard_factorization() {
                None => concat(),
                Some((_, ref u2)) if u2 >= v => concat(),
                Some((u1, u2)) => {
                    // [[u1,u2],v] = [u1,[u2,v]] - [u2,[u1,v]]
                    let mut out = LieElement::zero();
                    for (w, c) in bracket_words::<T>(&u2, v).terms {
                        out = out.plus(&bracket_words::<T>(&u1, &w).scale(&c));
                    }
                    for (w, c) in bracket_words::<T>(&u1, v).terms {
                        out = out.minus(&bracket_words::<T>(&u2, &w).scale(&c));
                    }
                    out
                }
            }
        }
    }
}

/// The Lie bracket, dropping every product whose weight exceeds `cutoff`.
pub fn bracket<T: Field>(x: &LieElement<T>, y: &LieElement<T>, cutoff: usize) -> LieElement<T> {
    let mut out = LieElement::zero();
    for (m1, c1) in &x.terms {
        for (m2, c2) in &y.terms {
            if m1.weight() + m2.weight() > cutoff {
                continue;
            }
            let coeff = c1.clone() * c2.clone();
            for (m, c) in bracket_words::<T>(m1, m2).terms {
                out.add_term(m, c * coeff.clone());
            }
        }
    }
    out
}

/// `Σ_k [a_k^{(i)}, b_k^{(j)}]` as a free element; `i == j` gives `Θ_i`.
fn theta_sum<T: Field>(g: usize, i: u32, j: u32) -> LieElement<T> {
    let mut out = LieElement::zero();
    for k in 1..=g as u32 {
        let a = LieElement::generator(SymplecticGenerator::a(k, i));
        let b = LieElement::generator(SymplecticGenerator::b(k, j));
        out = out.plus(&bracket(&a, &b, 2));
    }
    out
}

/// `Θ_i = Σ_k [a_k^{(i)}, b_k^{(i)}]`.
pub fn theta<T: Field>(g: usize, i: u32) -> LieElement<T> {
    theta_sum(g, i, i)
}

/// `Θ_{ij} = Σ_k [a_k^{(i)}, b_k^{(j)}]` for `i != j`.
pub fn theta_pair<T: Field>(g: usize, i: u32, j: u32) -> Result<LieElement<T>> {
    if i == j {
        return Err(Error::BadIndex { index: i });
    }
    Ok(theta_sum(g, i, j))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use proptest::prelude::*;

    type Q = BigRational;
    type E = LieElement<Q>;

    fn gen(s: &str) -> E {
        E::generator(s.parse().unwrap())
    }

    #[test]
    fn generator_order() {
        let gens = generators(2, &[1, 0]);
        let names: Vec<String> = gens.iter().map(ToString::to_string).collect();
        assert_eq!(
            names,
            ["a1.0", "b1.0", "a2.0", "b2.0", "a1.1", "b1.1", "a2.1", "b2.1"]
        );
    }

    #[test]
    fn pairing_table() {
        let a1 = SymplecticGenerator::a(1, 0);
        let b1 = SymplecticGenerator::b(1, 3);
        assert_eq!(a1.pairing(&b1), 1);
        assert_eq!(b1.pairing(&a1), -1);
        assert_eq!(a1.pairing(&SymplecticGenerator::b(2, 0)), 0);
        assert_eq!(a1.pairing(&a1), 0);
    }

    #[test]
    fn basis_counts_small() {
        assert_eq!(lyndon_basis(2, &[1], 1).len(), 4);
        assert_eq!(lyndon_basis(3, &[1, 2], 2).len(), 12 * 11 / 2);
        assert_eq!(lyndon_basis(1, &[1], 3).len(), 2);
    }

    #[test]
    fn self_bracket_vanishes() {
        let x = gen("a1.1").plus(&gen("b2.1").scale(&Q::from_int(3)));
        assert!(bracket(&x, &x, 3).is_zero());
    }

    #[test]
    fn simple_bracket() {
        let ab = bracket(&gen("a1.1"), &gen("b1.1"), 3);
        let m =
            LyndonMonomial::new(vec!["a1.1".parse().unwrap(), "b1.1".parse().unwrap()]).unwrap();
        assert_eq!(ab, E::monomial(m.clone(), Q::from_int(1)));
        let ba = bracket(&gen("b1.1"), &gen("a1.1"), 3);
        assert_eq!(ba, E::monomial(m, Q::from_int(-1)));
    }

    #[test]
    fn cutoff_drops_high_weight() {
        let ab = bracket(&gen("a1.1"), &gen("b1.1"), 3);
        assert!(bracket(&gen("a1.1"), &ab, 2).is_zero());
        assert_eq!(bracket(&gen("a1.1"), &ab, 3).weight(), Some(3));
    }

    #[test]
    fn theta_shapes() {
        let t: E = theta(1, 1);
        assert_eq!(t, bracket(&gen("a1.1"), &gen("b1.1"), 2));
        for g in 1..5 {
            assert_eq!(theta::<Q>(g, 2).len(), g);
        }
        let tp: E = theta_pair(2, 1, 2).unwrap();
        let expected =
            bracket(&gen("a1.1"), &gen("b1.2"), 2).plus(&bracket(&gen("a2.1"), &gen("b2.2"), 2));
        assert_eq!(tp, expected);
        assert_ne!(tp, theta_pair(2, 2, 1).unwrap());
        assert!(theta_pair::<Q>(2, 1, 1).is_err());
    }

    #[test]
    fn text_round_trip_example() {
        let x = bracket(&gen("a1.1"), &gen("b3.0"), 3).scale(&Q::from_fraction(-2, 7));
        let text = x.to_string();
        assert_eq!(text, "2/7 * [b3.0,a1.1]\n");
        assert_eq!(text.parse::<E>().unwrap(), x);
        assert_eq!("0".parse::<E>().unwrap(), E::zero());
        assert!("1 * [b1.1,a1.1]".parse::<E>().is_err());
    }

    #[test]
    fn bracketed_form() {
        let m = LyndonMonomial::new(vec![
            "a1.1".parse().unwrap(),
            "a1.1".parse().unwrap(),
            "b1.1".parse().unwrap(),
        ])
        .unwrap();
        assert_eq!(m.bracketed(), "[a1.1,[a1.1,b1.1]]");
    }

    fn element(max_weight: usize) -> impl Strategy<Value = E> {
        let gens = generators(2, &[0, 1]);
        proptest::collection::vec(
            (
                0..gens.len(),
                0..gens.len(),
                0..gens.len(),
                1..=max_weight,
                -3i64..4,
            ),
            1..4,
        )
        .prop_map(move |parts| {
            let mut out = E::zero();
            for (i, j, k, w, c) in parts {
                let mut x = E::generator(gens[i]);
                if w >= 2 {
                    x = bracket(&x, &E::generator(gens[j]), 4);
                }
                if w >= 3 {
                    x = bracket(&E::generator(gens[k]), &x, 4);
                }
                out = out.plus(&x.scale(&Q::from_int(c)));
            }
            out
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn antisymmetry(x in element(2), y in element(2)) {
            prop_assert_eq!(bracket(&x, &y, 4), bracket(&y, &x, 4).scale(&Q::from_int(-1)));
        }

        #[test]
        fn bilinearity(x in element(2), y in element(2), z in element(1), c in -4i64..5) {
            let c = Q::from_int(c);
            let lhs = bracket(&x.plus(&y.scale(&c)), &z, 4);
            let rhs = bracket(&x, &z, 4).plus(&bracket(&y, &z, 4).scale(&c));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn jacobi(x in element(2), y in element(1), z in element(1)) {
            let cyc = bracket(&x, &bracket(&y, &z, 4), 4)
                .plus(&bracket(&y, &bracket(&z, &x, 4), 4))
                .plus(&bracket(&z, &bracket(&x, &y, 4), 4));
            prop_assert!(cyc.is_zero());
        }

        #[test]
        fn text_round_trip(x in element(3)) {
            prop_assert_eq!(x.to_string().parse::<E>().unwrap(), x);
        }
    }
}
