//! Truncated graded Lie algebras given by generators and relations.
//!
//! A [`PresentedGradedLie`] is the quotient of the free Lie algebra on some
//! explicit symplectic copies `H_i` by the Lie ideal generated by a list of
//! homogeneous relations, truncated above a cutoff weight. Each weight layer
//! keeps the relation span in echelon form; the free (non-pivot) Lyndon
//! monomials form the quotient basis and reduction against the echelon rows
//! is the normal-form map.
//!
//! Weights are counted by bracket length: layer `w` is `Gr^W_{-w}`.
//!
//! Abstract generator slots (such as `Λ³₀H`) only contribute to dimension
//! bookkeeping; their brackets are not modelled here.

use std::collections::HashMap;
use std::fmt::{self, Write as _};

use crate::characters::{
    decompose, exterior_power, lambda2_0, lambda3_0, weyl_character, Character, IrrepLabel,
    WeightedModuleDescriptor,
};
use crate::error::{Error, Result};
use crate::free_lie::{
    bracket, generators, lyndon_basis, theta, theta_pair, LieElement, LyndonMonomial,
    SymplecticGenerator,
};
use crate::linalg::{inverse, EchelonBasis, SparseMatrix, SparseVec};
use crate::scalar::Field;

pub const DEFAULT_CUTOFF: usize = 3;

/// A weight-1 generator slot known only through its isomorphism type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbstractSlot {
    pub name: String,
    pub label: IrrepLabel,
    pub dimension: u64,
}

/// An isotypic component removed from weight 2, with the rank of its projector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RemovedComponent {
    pub label: IrrepLabel,
    pub projector_rank: u64,
}

#[derive(Clone, Debug)]
struct WeightLayer<T> {
    basis: Vec<LyndonMonomial>,
    index: HashMap<LyndonMonomial, usize>,
    relations: EchelonBasis<T>,
    quotient_columns: Vec<usize>,
    quotient_position: Vec<Option<usize>>,
}

impl<T: Field> WeightLayer<T> {
    fn new(basis: Vec<LyndonMonomial>) -> Self {
        let index = basis
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, m)| (m, i))
            .collect();
        let n = basis.len();
        WeightLayer {
            basis,
            index,
            relations: EchelonBasis::new(n),
            quotient_columns: Vec::new(),
            quotient_position: Vec::new(),
        }
    }

    fn vector(&self, e: &LieElement<T>) -> SparseVec<T> {
        SparseVec::from_pairs(e.terms().iter().map(|(m, c)| (self.index[m], c.clone())))
    }

    fn element(&self, v: &SparseVec<T>) -> LieElement<T> {
        LieElement::from_terms(v.iter().map(|(i, c)| (self.basis[*i].clone(), c.clone())))
    }

    fn finish(&mut self) {
        self.quotient_columns = self.relations.free_columns();
        self.quotient_position = vec![None; self.basis.len()];
        for (pos, &c) in self.quotient_columns.iter().enumerate() {
            self.quotient_position[c] = Some(pos);
        }
    }
}

/// A residue class in one weight layer, in coordinates of the quotient basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuotientElement<T> {
    pub weight: usize,
    pub coords: Vec<T>,
}

impl<T: Field> QuotientElement<T> {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(T::is_zero)
    }

    pub fn plus(&self, other: &Self) -> Self {
        assert_eq!(
            self.weight, other.weight,
            "adding classes of different weight"
        );
        QuotientElement {
            weight: self.weight,
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }

    pub fn scale(&self, c: &T) -> Self {
        QuotientElement {
            weight: self.weight,
            coords: self.coords.iter().map(|a| a.clone() * c.clone()).collect(),
        }
    }

    pub fn minus(&self, other: &Self) -> Self {
        self.plus(&other.scale(&-T::one()))
    }
}

/// A linear functional on one weight layer of a quotient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Functional<T> {
    pub weight: usize,
    pub coeffs: Vec<T>,
}

impl<T: Field> Functional<T> {
    pub fn apply(&self, x: &QuotientElement<T>) -> T {
        assert_eq!(
            self.weight, x.weight,
            "functional applied at the wrong weight"
        );
        self.coeffs
            .iter()
            .zip(&x.coords)
            .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
    }
}

/// Decomposition of the weight-2 layer into its `Q(1)` lines (one per copy
/// pair carrying a nonzero `Θ_{ij}`) and the complementary nontrivial part.
#[derive(Clone, Debug)]
pub struct TrivialSplit<T> {
    /// Copy pairs `(i, j)`, `i < j`, whose line is present.
    pub pairs: Vec<(u32, u32)>,
    /// Class of `Θ_{ij}` projected to the invariants, per present pair.
    pub line_classes: Vec<QuotientElement<T>>,
    /// Dimension of the nontrivial complement.
    pub complement_dim: usize,
    functionals: Vec<Functional<T>>,
    complement_functionals: Vec<Functional<T>>,
}

impl<T: Field> TrivialSplit<T> {
    pub fn q_multiplicity(&self) -> usize {
        self.pairs.len()
    }

    /// Coefficients of `x` on the present lines, in `pairs` order.
    pub fn line_coordinates(&self, x: &QuotientElement<T>) -> Vec<T> {
        self.functionals.iter().map(|f| f.apply(x)).collect()
    }

    /// Coordinates of `x` on the nontrivial complement.
    pub fn complement_coordinates(&self, x: &QuotientElement<T>) -> Vec<T> {
        self.complement_functionals
            .iter()
            .map(|f| f.apply(x))
            .collect()
    }

    pub fn functional(&self, i: u32, j: u32) -> Option<&Functional<T>> {
        self.pairs
            .iter()
            .position(|&p| p == (i, j))
            .map(|k| &self.functionals[k])
    }
}

#[derive(Clone, Debug)]
pub struct PresentedGradedLie<T> {
    name: String,
    g: usize,
    copies: Vec<u32>,
    abstract_slots: Vec<AbstractSlot>,
    relations: Vec<LieElement<T>>,
    removed: Vec<RemovedComponent>,
    cutoff: usize,
    layers: Vec<WeightLayer<T>>,
}

impl<T: Field> PresentedGradedLie<T> {
    /// Quotient of the free Lie algebra on the given copies by the ideal
    /// generated by `relations`, truncated above `cutoff`.
    pub fn new(
        name: impl Into<String>,
        g: usize,
        copies: Vec<u32>,
        abstract_slots: Vec<AbstractSlot>,
        relations: Vec<LieElement<T>>,
        cutoff: usize,
    ) -> Result<Self> {
        let mut copies = copies;
        copies.sort_unstable();
        copies.dedup();
        let gens = generators(g, &copies);
        for r in &relations {
            if !r.is_homogeneous() {
                return Err(Error::NotHomogeneous);
            }
            if let Some(bad) = r.support().find(|x| !owns(g, &copies, x)) {
                return Err(Error::ForeignGenerator(bad.to_string()));
            }
        }
        let mut layers: Vec<WeightLayer<T>> = Vec::with_capacity(cutoff);
        for w in 1..=cutoff {
            let mut layer = WeightLayer::new(lyndon_basis(g, &copies, w));
            for r in relations.iter().filter(|r| r.weight() == Some(w)) {
                let v = layer.vector(r);
                layer.relations.insert(&v);
            }
            if w >= 2 {
                let prev = &layers[w - 2];
                let prev_rows: Vec<LieElement<T>> = prev
                    .relations
                    .rows()
                    .iter()
                    .map(|row| prev.element(row))
                    .collect();
                for x in &gens {
                    let x = LieElement::generator(*x);
                    for r in &prev_rows {
                        let v = layer.vector(&bracket(&x, r, w));
                        layer.relations.insert(&v);
                    }
                }
            }
            layer.finish();
            layers.push(layer);
        }
        Ok(PresentedGradedLie {
            name: name.into(),
            g,
            copies,
            abstract_slots,
            relations,
            removed: Vec::new(),
            cutoff,
            layers,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn genus(&self) -> usize {
        self.g
    }

    pub fn copies(&self) -> &[u32] {
        &self.copies
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn abstract_slots(&self) -> &[AbstractSlot] {
        &self.abstract_slots
    }

    pub fn relations(&self) -> &[LieElement<T>] {
        &self.relations
    }

    pub fn removed_components(&self) -> &[RemovedComponent] {
        &self.removed
    }

    fn layer(&self, w: usize) -> Result<&WeightLayer<T>> {
        if w == 0 || w > self.cutoff {
            return Err(Error::AboveCutoff {
                weight: w,
                cutoff: self.cutoff,
            });
        }
        Ok(&self.layers[w - 1])
    }

    /// Dimension of the free layer on the explicit copies.
    pub fn free_dim(&self, w: usize) -> usize {
        self.layer(w).map_or(0, |l| l.basis.len())
    }

    /// Rank of the relation ideal in weight `w`.
    pub fn relation_rank(&self, w: usize) -> usize {
        self.layer(w).map_or(0, |l| l.relations.rank())
    }

    /// Quotient dimension spanned by the explicit copies.
    pub fn explicit_dim(&self, w: usize) -> usize {
        self.layer(w).map_or(0, |l| l.quotient_columns.len())
    }

    /// Full dimension, including abstract slots in weight 1.
    pub fn dimension(&self, w: usize) -> u64 {
        let slots: u64 = if w == 1 {
            self.abstract_slots.iter().map(|s| s.dimension).sum()
        } else {
            0
        };
        self.explicit_dim(w) as u64 + slots
    }

    /// Lyndon monomials whose classes form the quotient basis in weight `w`.
    pub fn quotient_basis(&self, w: usize) -> Vec<LyndonMonomial> {
        self.layer(w)
            .map(|l| {
                l.quotient_columns
                    .iter()
                    .map(|&c| l.basis[c].clone())
                    .collect()
            })
            .unwrap_or_default()
    }

    fn check_explicit(&self, e: &LieElement<T>) -> Result<()> {
        if let Some(bad) = e.support().find(|x| !owns(self.g, &self.copies, x)) {
            return Err(Error::ForeignGenerator(bad.to_string()));
        }
        Ok(())
    }

    /// Residue class of a homogeneous nonzero element.
    pub fn normal_form(&self, e: &LieElement<T>) -> Result<QuotientElement<T>> {
        let w = e.weight().ok_or(Error::NotHomogeneous)?;
        self.normal_form_in(e, w)
    }

    /// Residue class of `e` read in weight `w`; accepts the zero element.
    pub fn normal_form_in(&self, e: &LieElement<T>, w: usize) -> Result<QuotientElement<T>> {
        if !e.is_zero() && e.weight() != Some(w) {
            return Err(Error::NotHomogeneous);
        }
        self.check_explicit(e)?;
        let layer = self.layer(w)?;
        let reduced = layer.relations.reduce(&layer.vector(e));
        let mut coords = vec![T::zero(); layer.quotient_columns.len()];
        for (c, x) in reduced.iter() {
            let pos = layer.quotient_position[*c].expect("reduced vectors live on free columns");
            coords[pos] = x.clone();
        }
        Ok(QuotientElement { weight: w, coords })
    }

    /// The canonical representative of a class.
    pub fn lift(&self, q: &QuotientElement<T>) -> Result<LieElement<T>> {
        let layer = self.layer(q.weight)?;
        Ok(LieElement::from_terms(
            layer
                .quotient_columns
                .iter()
                .zip(&q.coords)
                .map(|(&c, x)| (layer.basis[c].clone(), x.clone())),
        ))
    }

    /// Split weight 2 into the `Q(1)` lines spanned by `Θ_{ij}` classes and
    /// the nontrivial complement.
    ///
    /// Invariants of the free weight-2 layer are spanned by `Θ_i` and
    /// `Θ_{ij} + Θ_{ji}`; the kernel of the pairwise contractions is the
    /// equivariant complement. Both are pushed into the quotient.
    pub fn trivial_split(&self) -> Result<TrivialSplit<T>> {
        let dim = self.explicit_dim(2);
        let half = T::from_fraction(1, 2);

        let mut pairs = Vec::new();
        let mut line_classes = Vec::new();
        let mut span = EchelonBasis::new(dim);
        for (ai, &a) in self.copies.iter().enumerate() {
            for &b in &self.copies[ai + 1..] {
                let inv = theta_pair::<T>(self.g, a, b)?.plus(&theta_pair(self.g, b, a)?);
                let class = self.normal_form_in(&inv.scale(&half), 2)?;
                if class.is_zero() {
                    continue;
                }
                if !span.insert(&SparseVec::from_dense(&class.coords)) {
                    return Err(Error::Inconsistent(format!(
                        "Q(1) lines are dependent at the pair ({a},{b}) in {}",
                        self.name
                    )));
                }
                pairs.push((a, b));
                line_classes.push(class);
            }
        }
        for &a in &self.copies {
            let class = self.normal_form_in(&theta(self.g, a), 2)?;
            if !span.contains(&SparseVec::from_dense(&class.coords)) {
                return Err(Error::Inconsistent(format!(
                    "the class of Θ_{a} is not in the span of the pair lines in {}",
                    self.name
                )));
            }
        }

        let mut complement = EchelonBasis::new(dim);
        let mut complement_vectors = Vec::new();
        for e in contraction_kernel::<T>(self.g, &self.copies) {
            let class = self.normal_form_in(&e, 2)?;
            let v = SparseVec::from_dense(&class.coords);
            if complement.insert(&v) {
                complement_vectors.push(class.coords);
            }
        }
        let complement_dim = complement.rank();
        if pairs.len() + complement_dim != dim {
            return Err(Error::Inconsistent(format!(
                "weight 2 of {} has dimension {dim} but splits as {} + {complement_dim}",
                self.name,
                pairs.len()
            )));
        }

        // Row t of B holds basis vector t; column t of B^{-1} is its dual functional.
        let rows: Vec<Vec<T>> = line_classes
            .iter()
            .map(|c| c.coords.clone())
            .chain(complement_vectors)
            .collect();
        let b = SparseMatrix::from_dense(&rows)?;
        let inv = inverse(&b)?
            .ok_or_else(|| Error::Inconsistent("weight-2 split is not a basis".into()))?;
        let mut all: Vec<Functional<T>> = (0..dim)
            .map(|t| Functional {
                weight: 2,
                coeffs: (0..dim).map(|r| inv.get(r, t)).collect(),
            })
            .collect();
        let complement_functionals = all.split_off(pairs.len());
        Ok(TrivialSplit {
            pairs,
            line_classes,
            complement_dim,
            functionals: all,
            complement_functionals,
        })
    }

    /// The equivariant projection onto `Q(1)_{ij}` normalized by `q_{ij}(Θ_{ij}) = 1`.
    pub fn q_projection(&self, i: u32, j: u32) -> Result<Functional<T>> {
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        for idx in [i, j] {
            if !self.copies.contains(&idx) {
                return Err(Error::BadIndex { index: idx });
            }
        }
        let split = self.trivial_split()?;
        split
            .functional(i, j)
            .cloned()
            .ok_or(Error::SummandAbsent { i, j })
    }

    /// Human-readable summary with a stable line order.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "algebra {}", self.name);
        let _ = writeln!(s, "genus {}", self.g);
        let _ = writeln!(s, "cutoff {}", self.cutoff);
        for slot in &self.abstract_slots {
            let _ = writeln!(
                s,
                "slot {} {} dim {} (abstract)",
                slot.name, slot.label, slot.dimension
            );
        }
        for c in &self.copies {
            let _ = writeln!(s, "slot H_{c} [1] dim {}", 2 * self.g);
        }
        let _ = writeln!(s, "relations {}", self.relations.len());
        for r in &self.removed {
            let _ = writeln!(s, "removed {} projector-rank {}", r.label, r.projector_rank);
        }
        for w in 1..=self.cutoff {
            let _ = writeln!(
                s,
                "weight -{w} dim {} explicit {} free {} relation-rank {}",
                self.dimension(w),
                self.explicit_dim(w),
                self.free_dim(w),
                self.relation_rank(w)
            );
            let labels: Vec<String> = self
                .quotient_basis(w)
                .iter()
                .map(ToString::to_string)
                .collect();
            let _ = writeln!(s, "  basis {}", labels.join(" "));
        }
        s
    }
}

impl<T: Field> fmt::Display for PresentedGradedLie<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.dump())
    }
}

fn owns(g: usize, copies: &[u32], x: &SymplecticGenerator) -> bool {
    x.index >= 1 && x.index as usize <= g && copies.binary_search(&x.copy).is_ok()
}

/// Free weight-2 elements spanning the kernel of all pairwise contractions.
fn contraction_kernel<T: Field>(g: usize, copies: &[u32]) -> Vec<LieElement<T>> {
    let gen = |x: SymplecticGenerator| LieElement::<T>::generator(x);
    let br = |x: SymplecticGenerator, y: SymplecticGenerator| bracket(&gen(x), &gen(y), 2);
    let mut out = Vec::new();
    for (pi, &i) in copies.iter().enumerate() {
        for &j in &copies[pi..] {
            let hi = generators(g, &[i]);
            let hj = generators(g, &[j]);
            for x in &hi {
                for y in &hj {
                    if x.pairing(y) == 0 && (i < j || x < y) {
                        out.push(br(*x, *y));
                    }
                }
            }
            let ab = |k: u32| br(SymplecticGenerator::a(k, i), SymplecticGenerator::b(k, j));
            for k in 2..=g as u32 {
                out.push(ab(k).minus(&ab(1)));
            }
            if i < j {
                for k in 1..=g as u32 {
                    out.push(ab(k).plus(&br(
                        SymplecticGenerator::b(k, i),
                        SymplecticGenerator::a(k, j),
                    )));
                }
            }
        }
    }
    out
}

/// The three relation families of the pure braid presentation, on the given
/// copies, instantiated on all pairs of symplectic basis vectors (instances
/// that vanish identically in the free algebra are skipped):
///
/// * `[u^(i), v^(j)] - [u^(j), v^(i)]`,
/// * `[u^(i), v^(j)] - ((u, v) / g) Θ_{ij}` for `i != j`,
/// * `Θ_i + (1/g) Σ_{j != i} Θ_{ij}`.
pub fn configuration_relations<T: Field>(g: usize, copies: &[u32]) -> Vec<LieElement<T>> {
    let basis = generators(g, &[0]);
    let inv_g = T::from_fraction(1, g as i64);
    let lift = |x: &SymplecticGenerator, c: u32| LieElement::<T>::generator(x.in_copy(c));
    let mut out = Vec::new();
    for (pi, &i) in copies.iter().enumerate() {
        for &j in &copies[pi + 1..] {
            for u in &basis {
                for v in &basis {
                    let r = bracket(&lift(u, i), &lift(v, j), 2).minus(&bracket(
                        &lift(u, j),
                        &lift(v, i),
                        2,
                    ));
                    if !r.is_zero() {
                        out.push(r);
                    }
                }
            }
        }
    }
    for &i in copies {
        for &j in copies.iter().filter(|&&j| j != i) {
            let theta_ij = theta_pair::<T>(g, i, j).expect("distinct copies");
            for u in &basis {
                for v in &basis {
                    let c = T::from_int(u.pairing(v)) * inv_g.clone();
                    let r = bracket(&lift(u, i), &lift(v, j), 2).minus(&theta_ij.scale(&c));
                    if !r.is_zero() {
                        out.push(r);
                    }
                }
            }
        }
    }
    for &i in copies {
        let mut r = theta::<T>(g, i);
        for &j in copies.iter().filter(|&&j| j != i) {
            r = r.plus(&theta_pair(g, i, j).expect("distinct copies").scale(&inv_g));
        }
        out.push(r);
    }
    out
}

/// Free Lie algebra on `H^{⊕copies}` truncated at `cutoff`.
pub fn build_free<T: Field>(
    g: usize,
    copies: &[u32],
    cutoff: usize,
) -> Result<PresentedGradedLie<T>> {
    PresentedGradedLie::new(
        format!("L(g={g})"),
        g,
        copies.to_vec(),
        Vec::new(),
        Vec::new(),
        cutoff,
    )
}

/// `Gr p = L(H) / (θ)` on the single copy `H_0`.
pub fn build_gr_p<T: Field>(g: usize, cutoff: usize) -> Result<PresentedGradedLie<T>> {
    if g < 2 {
        return Err(Error::GenusTooSmall { g, min: 2 });
    }
    PresentedGradedLie::new(
        format!("Gr p (g={g})"),
        g,
        vec![0],
        Vec::new(),
        vec![theta(g, 0)],
        cutoff,
    )
}

/// `Gr p_{g,n}` on copies `H_1..H_n`.
pub fn build_gr_p_gn<T: Field>(g: usize, n: usize, cutoff: usize) -> Result<PresentedGradedLie<T>> {
    if g < 1 {
        return Err(Error::GenusTooSmall { g, min: 1 });
    }
    let copies: Vec<u32> = (1..=n as u32).collect();
    let rels = configuration_relations(g, &copies);
    PresentedGradedLie::new(
        format!("Gr p(g={g},n={n})"),
        g,
        copies,
        Vec::new(),
        rels,
        cutoff,
    )
}

fn lambda3_slot(g: usize) -> Result<AbstractSlot> {
    let desc = decompose(g, &lambda3_0(g))?;
    let label = IrrepLabel::new(vec![1, 1, 1], -1)?;
    if desc != WeightedModuleDescriptor::single(label.clone()) {
        return Err(Error::Inconsistent(format!(
            "Λ³₀H is not irreducible at genus {g}: {desc}"
        )));
    }
    Ok(AbstractSlot {
        name: "Λ³₀H".into(),
        label,
        dimension: desc.dimension(g)?,
    })
}

/// Rank of the `V_[2+2]` isotypic projector on the free bracket layer of `k` copies.
fn v22_projector_rank(g: usize, k: usize) -> Result<u64> {
    if g < 2 || k == 0 {
        return Ok(0);
    }
    let sum = Character::standard(g).scale(k as i64);
    let layer = exterior_power(&sum, 2);
    let mult = decompose(g, &layer)?.partition_multiplicity(&[2, 2]);
    Ok(mult * weyl_character(g, &[2, 2])?.dimension() as u64)
}

fn two_step<T: Field>(
    name: String,
    g: usize,
    copies: Vec<u32>,
    mut relations: Vec<LieElement<T>>,
    extra: Vec<LieElement<T>>,
) -> Result<PresentedGradedLie<T>> {
    if g < 3 {
        return Err(Error::GenusTooSmall { g, min: 3 });
    }
    relations.extend(extra);
    let rank = v22_projector_rank(g, copies.len())?;
    if rank != 0 {
        // The explicit bracket layer would need an explicit isotypic projector here.
        return Err(Error::Inconsistent(format!(
            "V[2,2] occurs in the explicit layer of {name}"
        )));
    }
    let slot = lambda3_slot(g)?;
    let mut alg = PresentedGradedLie::new(name, g, copies, vec![slot], relations, 2)?;
    alg.removed.push(RemovedComponent {
        label: IrrepLabel::new(vec![2, 2], -1)?,
        projector_rank: rank,
    });
    Ok(alg)
}

/// `d_{g,n}`: weight 1 is `Λ³₀H ⊕ H_1 ⊕ .. ⊕ H_n`, two-step nilpotent.
pub fn build_d<T: Field>(g: usize, n: usize) -> Result<PresentedGradedLie<T>> {
    let copies: Vec<u32> = (1..=n as u32).collect();
    build_d_on(g, &copies)
}

/// `d_{g,k}` on an explicit list of `k` copy labels.
pub fn build_d_on<T: Field>(g: usize, copies: &[u32]) -> Result<PresentedGradedLie<T>> {
    let rels = configuration_relations(g, copies);
    let labels: Vec<String> = copies.iter().map(ToString::to_string).collect();
    let name = if copies.iter().copied().eq(1..=copies.len() as u32) {
        format!("d(g={g},n={})", copies.len())
    } else {
        format!("d(g={g},copies={})", labels.join(","))
    };
    two_step(name, g, copies.to_vec(), rels, Vec::new())
}

/// `d_{C_{g,n}}`: copies `H_0..H_n`, with the fibre copy `H_0` bracketing
/// trivially into the `Q(1)` part (`Θ_{0j} = 0` for `j >= 1`).
pub fn build_d_c<T: Field>(g: usize, n: usize) -> Result<PresentedGradedLie<T>> {
    let copies: Vec<u32> = (0..=n as u32).collect();
    let rels = configuration_relations(g, &copies);
    let extra = (1..=n as u32)
        .map(|j| theta_pair(g, 0, j))
        .collect::<Result<Vec<_>>>()?;
    two_step(format!("dC(g={g},n={n})"), g, copies, rels, extra)
}

/// Expected `Gr^W_{-2}` of `d_{g,n}` (or `d_{C_{g,n}}` with `fibre = true`):
/// one `Λ²₀H` per explicit copy plus `Q(1)^{C(n,2)}`.
pub fn expected_weight2_descriptor(n: usize, fibre: bool) -> WeightedModuleDescriptor {
    let copies = n as u64 + u64::from(fibre);
    let pairs = (n * n.saturating_sub(1) / 2) as u64;
    WeightedModuleDescriptor::new()
        .with(IrrepLabel::new(vec![1, 1], 0).expect("partition"), copies)
        .with(IrrepLabel::tate(1), pairs)
}

/// Expected `Gr^W_{-1}`: `Λ³₀H ⊕ H^{⊕copies}`.
pub fn expected_weight1_descriptor(n: usize, fibre: bool) -> WeightedModuleDescriptor {
    WeightedModuleDescriptor::new()
        .with(IrrepLabel::new(vec![1, 1, 1], -1).expect("partition"), 1)
        .with(IrrepLabel::standard(), n as u64 + u64::from(fibre))
}

/// Character of the weight-2 layer `⊕ Λ²₀H_j ⊕ Q(1)^m` read off a split.
pub fn weight2_descriptor<T: Field>(
    alg: &PresentedGradedLie<T>,
) -> Result<WeightedModuleDescriptor> {
    let split = alg.trivial_split()?;
    let l2 = lambda2_0(alg.genus()).dimension() as usize;
    if l2 == 0 || split.complement_dim % l2 != 0 {
        return Err(Error::Inconsistent(format!(
            "complement of dimension {} is not a sum of Λ²₀H",
            split.complement_dim
        )));
    }
    Ok(WeightedModuleDescriptor::new()
        .with(
            IrrepLabel::new(vec![1, 1], 0)?,
            (split.complement_dim / l2) as u64,
        )
        .with(IrrepLabel::tate(1), split.q_multiplicity() as u64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::free_lie::SymplecticGenerator as G;
    use num_rational::BigRational;

    type Q = BigRational;

    fn gen(x: G) -> LieElement<Q> {
        LieElement::generator(x)
    }

    #[test]
    fn gr_p_dimensions() {
        let p = build_gr_p::<Q>(2, 2).unwrap();
        assert_eq!(p.explicit_dim(1), 4);
        assert_eq!(p.explicit_dim(2), 5);
        let p3 = build_gr_p::<Q>(3, 2).unwrap();
        assert_eq!(p3.explicit_dim(2), 14);
        assert!(p3.normal_form(&theta(3, 0)).unwrap().is_zero());
    }

    #[test]
    fn gr_p_rejects_genus_one() {
        assert!(matches!(
            build_gr_p::<Q>(1, 2),
            Err(Error::GenusTooSmall { .. })
        ));
    }

    #[test]
    fn single_copy_matches_gr_p() {
        for g in 2..=3 {
            let a = build_gr_p_gn::<Q>(g, 1, 3).unwrap();
            let b = build_gr_p::<Q>(g, 3).unwrap();
            for w in 1..=3 {
                assert_eq!(a.explicit_dim(w), b.explicit_dim(w), "g={g} w={w}");
            }
        }
    }

    #[test]
    fn normal_form_rejects_bad_input() {
        let p = build_gr_p_gn::<Q>(2, 2, 2).unwrap();
        let mixed = gen(G::a(1, 1)).plus(&bracket(&gen(G::a(1, 1)), &gen(G::b(1, 2)), 2));
        assert!(matches!(p.normal_form(&mixed), Err(Error::NotHomogeneous)));
        assert!(matches!(
            p.normal_form(&gen(G::a(1, 5))),
            Err(Error::ForeignGenerator(_))
        ));
        assert!(matches!(
            p.normal_form(&gen(G::a(3, 1))),
            Err(Error::ForeignGenerator(_))
        ));
        let deep = bracket(
            &gen(G::a(1, 1)),
            &bracket(&gen(G::a(1, 1)), &gen(G::b(1, 2)), 3),
            3,
        );
        assert!(matches!(
            p.normal_form(&deep),
            Err(Error::AboveCutoff { .. })
        ));
    }

    #[test]
    fn lift_is_a_section_of_normal_form() {
        let p = build_gr_p_gn::<Q>(2, 2, 2).unwrap();
        let x = bracket(&gen(G::a(1, 1)), &gen(G::b(1, 2)), 2);
        let q = p.normal_form(&x).unwrap();
        let back = p.normal_form(&p.lift(&q).unwrap()).unwrap();
        assert_eq!(q, back);
    }

    #[test]
    fn d_rejects_small_genus() {
        assert!(matches!(
            build_d::<Q>(2, 1),
            Err(Error::GenusTooSmall { .. })
        ));
        assert!(build_d_c::<Q>(2, 1).is_err());
    }

    #[test]
    fn d_weight_one_includes_abstract_slot() {
        let d = build_d::<Q>(4, 2).unwrap();
        assert_eq!(d.dimension(1), 48 + 16);
        assert_eq!(d.removed_components()[0].projector_rank, 0);
    }

    #[test]
    fn d_g1_has_no_trivial_summand() {
        let d = build_d::<Q>(4, 1).unwrap();
        let split = d.trivial_split().unwrap();
        assert_eq!(split.q_multiplicity(), 0);
        assert!(d.normal_form(&theta(4, 1)).unwrap().is_zero());
        assert!(matches!(
            d.q_projection(1, 1),
            Err(Error::SummandAbsent { .. })
        ));
    }

    #[test]
    fn q_projection_values() {
        let g = 4;
        let d = build_d::<Q>(g, 3).unwrap();
        let q12 = d.q_projection(1, 2).unwrap();
        let nf = |e: &LieElement<Q>| d.normal_form(e).unwrap();
        assert_eq!(
            q12.apply(&nf(&theta_pair(g, 1, 2).unwrap())),
            Q::from_int(1)
        );
        assert_eq!(
            q12.apply(&nf(&theta_pair(g, 2, 1).unwrap())),
            Q::from_int(1)
        );
        assert_eq!(
            q12.apply(&nf(&theta_pair(g, 2, 3).unwrap())),
            Q::from_int(0)
        );
        assert_eq!(q12.apply(&nf(&theta(g, 1))), Q::from_fraction(-1, g as i64));
        assert_eq!(q12.apply(&nf(&theta(g, 3))), Q::from_int(0));
    }

    #[test]
    fn d_c_kills_fibre_pairs() {
        let d = build_d_c::<Q>(4, 2).unwrap();
        assert!(matches!(
            d.q_projection(0, 1),
            Err(Error::SummandAbsent { i: 0, j: 1 })
        ));
        assert!(d.q_projection(1, 2).is_ok());
        assert!(d.normal_form(&theta(4, 0)).unwrap().is_zero());
    }

    #[test]
    fn dump_is_stable() {
        let d = build_d::<Q>(3, 1).unwrap();
        let text = d.dump();
        assert_eq!(text, build_d::<Q>(3, 1).unwrap().dump());
        assert!(text.starts_with(
            "algebra d(g=3,n=1)\ngenus 3\ncutoff 2\nslot Λ³₀H [1,1,1](-1) dim 14 (abstract)\n"
        ));
        assert!(text.contains("weight -2 dim 14 explicit 14"));
    }
}
