//! Equivariant graded Lie sections of the projections `γ_n` and `γ_n^o`.
//!
//! A candidate section `s` is fixed on weight 1 by Schur's lemma: identity on
//! `Λ³₀H`, `u^(j) ↦ u^(j) + c_j u^(0)` on the explicit copies. On weight 2 a Lie
//! section must send a bracket to the bracket of images, which can be
//! evaluated in two ways for every `Θ`-element of the source:
//!
//! * directly, as `Σ_k [s(a_k^(i)), s(b_k^(j))]` reduced in the domain;
//! * through the source normal form, whose `Q(1)` lines are mapped by
//!   bracket expansion and whose `Λ²₀H` part is invisible to every
//!   `Q(1)` projection because `Hom(Λ²₀H, Q(1)) = 0`.
//!
//! A nonzero difference on some `q_{kl}` is a certificate that no Lie
//! section restricts to the candidate on weight 1.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::characters::{
    decompose, exterior_power, hom_multiplicity, lambda2_0, lambda3_0, Character, IrrepLabel,
    WeightedModuleDescriptor,
};
use crate::error::{Error, Result};
use crate::free_lie::{bracket, generators, theta, theta_pair, LieElement, SymplecticGenerator};
use crate::presentation::{
    build_d, build_d_c, build_d_on, expected_weight2_descriptor, weight2_descriptor,
    PresentedGradedLie, QuotientElement, TrivialSplit,
};
use crate::scalar::Field;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MapKind {
    /// `γ_n : d_{C_{g,n}} → d_{g,n}`.
    #[serde(rename = "gamma")]
    Gamma,
    /// `γ_n^o : d_{g,n+1} → d_{g,n}`.
    #[serde(rename = "gamma-o")]
    GammaO,
}

impl fmt::Display for MapKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MapKind::Gamma => "gamma",
            MapKind::GammaO => "gamma-o",
        })
    }
}

/// One of the two projections, dropping the copy `H_0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ProjectionMap {
    pub kind: MapKind,
    pub g: usize,
    pub n: usize,
}

impl ProjectionMap {
    pub fn gamma(g: usize, n: usize) -> Self {
        ProjectionMap {
            kind: MapKind::Gamma,
            g,
            n,
        }
    }

    pub fn gamma_o(g: usize, n: usize) -> Self {
        ProjectionMap {
            kind: MapKind::GammaO,
            g,
            n,
        }
    }

    /// The algebra the map starts from; it carries copies `0..=n`.
    pub fn domain<T: Field>(&self) -> Result<PresentedGradedLie<T>> {
        match self.kind {
            MapKind::Gamma => build_d_c(self.g, self.n),
            MapKind::GammaO => build_d_on(self.g, &(0..=self.n as u32).collect::<Vec<_>>()),
        }
    }

    /// `d_{g,n}` on copies `1..=n`.
    pub fn codomain<T: Field>(&self) -> Result<PresentedGradedLie<T>> {
        build_d(self.g, self.n)
    }

    /// Image of an explicit element: generators of `H_0` go to zero.
    pub fn project<T: Field>(&self, e: &LieElement<T>) -> LieElement<T> {
        let cutoff = e.weight().unwrap_or(1).max(1);
        e.substitute(
            |x| {
                if x.copy == 0 {
                    LieElement::zero()
                } else {
                    LieElement::generator(*x)
                }
            },
            cutoff,
        )
    }
}

impl fmt::Display for ProjectionMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (g, n) = (self.g, self.n);
        match self.kind {
            MapKind::Gamma => write!(f, "gamma_{n}: dC(g={g},n={n}) -> d(g={g},n={n})"),
            MapKind::GammaO => write!(f, "gamma_{n}^o: d(g={g},n={}) -> d(g={g},n={n})", n + 1),
        }
    }
}

/// An equivariance fact `dim Hom(source, target) = multiplicity` computed from characters.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HomFact {
    pub g: usize,
    pub source: String,
    pub target: String,
    pub multiplicity: u64,
}

impl fmt::Display for HomFact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "dim Hom({}, {}) = {} at g={}",
            self.source, self.target, self.multiplicity, self.g
        )
    }
}

fn hom_fact(g: usize, source: &str, a: &Character, target: &str, b: &Character) -> Result<HomFact> {
    let multiplicity = hom_multiplicity(&decompose(g, a)?, &decompose(g, b)?);
    Ok(HomFact {
        g,
        source: source.into(),
        target: target.into(),
        multiplicity,
    })
}

/// `Hom(Λ²₀H, Q(1))`, which lets every `q_{kl}` ignore the `Λ²₀H` part.
pub fn q_kill_fact(g: usize) -> Result<HomFact> {
    hom_fact(
        g,
        "Λ²₀H",
        &lambda2_0(g),
        "Q(1)",
        &Character::trivial(g).twist(1),
    )
}

/// `Hom(Λ²Λ³₀H, Λ²₀H)`, nonzero exactly when the bracket on `Λ³₀H` reaches `Λ²₀H`.
pub fn bracket_fact(g: usize) -> Result<HomFact> {
    hom_fact(
        g,
        "Λ²Λ³₀H",
        &exterior_power(&lambda3_0(g), 2),
        "Λ²₀H",
        &lambda2_0(g),
    )
}

fn weight1_facts(g: usize) -> Result<Vec<HomFact>> {
    let l3 = lambda3_0(g);
    let h = Character::standard(g).with_weight(Some(-1));
    Ok(vec![
        hom_fact(g, "Λ³₀H", &l3, "Λ³₀H", &l3)?,
        hom_fact(g, "Λ³₀H", &l3, "H", &h)?,
        hom_fact(g, "H", &h, "Λ³₀H", &l3)?,
        hom_fact(g, "H", &h, "H", &h)?,
    ])
}

/// Formal unknowns of the weight-2 lift: one per equivariant map between a
/// source and a domain isotypic component.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Deg2Parameter {
    pub label: IrrepLabel,
    pub source_multiplicity: u64,
    pub domain_multiplicity: u64,
    pub count: u64,
}

fn deg2_parameters(
    source: &WeightedModuleDescriptor,
    domain: &WeightedModuleDescriptor,
) -> Vec<Deg2Parameter> {
    source
        .iter()
        .filter_map(|(label, &m)| {
            let d = domain.multiplicity(label);
            (m * d > 0).then(|| Deg2Parameter {
                label: label.clone(),
                source_multiplicity: m,
                domain_multiplicity: d,
                count: m * d,
            })
        })
        .collect()
}

/// The weight-1 block structure allowed by equivariance and the section condition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateFamily {
    pub map: ProjectionMap,
    /// Number of free scalars `c_1..c_n` (blocks `H_j → H_0`).
    pub free_parameters: usize,
    /// Scalar on `Λ³₀H → Λ³₀H`, forced by `γ ∘ s = id`.
    pub lambda_block: i64,
    pub weight1_facts: Vec<HomFact>,
    pub deg2: Vec<Deg2Parameter>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionCandidate<T> {
    pub map: ProjectionMap,
    pub c: Vec<T>,
    pub lambda_block: T,
    pub deg2: Vec<Deg2Parameter>,
}

impl<T: Field> SectionCandidate<T> {
    /// Image of a generator of the codomain.
    pub fn image(&self, x: SymplecticGenerator) -> LieElement<T> {
        let mut e = LieElement::generator(x);
        if x.copy >= 1 {
            let c = &self.c[x.copy as usize - 1];
            if !c.is_zero() {
                e = e.plus(&LieElement::generator(x.in_copy(0)).scale(c));
            }
        }
        e
    }

    /// `Σ_k [s(a_k^(i)), s(b_k^(j))]`, the bracket expansion of `s(Θ_{ij})`.
    pub fn theta_image(&self, i: u32, j: u32) -> LieElement<T> {
        let mut out = LieElement::zero();
        for k in 1..=self.map.g as u32 {
            let a = self.image(SymplecticGenerator::a(k, i));
            let b = self.image(SymplecticGenerator::b(k, j));
            out = out.plus(&bracket(&a, &b, 2));
        }
        out
    }

    pub fn c_string(&self) -> Vec<String> {
        self.c.iter().map(ToString::to_string).collect()
    }
}

/// Parameter family of weight-1 lifts for `map`.
pub fn candidate_space(map: ProjectionMap) -> Result<CandidateFamily> {
    if map.g < 3 {
        return Err(Error::GenusTooSmall { g: map.g, min: 3 });
    }
    let facts = weight1_facts(map.g)?;
    if facts[1].multiplicity != 0
        || facts[2].multiplicity != 0
        || facts[0].multiplicity != 1
        || facts[3].multiplicity != 1
    {
        return Err(Error::Inconsistent(format!(
            "unexpected weight-1 blocks at g={}",
            map.g
        )));
    }
    let domain_desc = match map.kind {
        MapKind::Gamma => expected_weight2_descriptor(map.n, true),
        MapKind::GammaO => expected_weight2_descriptor(map.n + 1, false),
    };
    let source_desc = expected_weight2_descriptor(map.n, false);
    Ok(CandidateFamily {
        map,
        free_parameters: map.n,
        lambda_block: 1,
        weight1_facts: facts,
        deg2: deg2_parameters(&source_desc, &domain_desc),
    })
}

/// The candidate with `c = (c_1, .., c_n)`.
pub fn candidate<T: Field>(map: ProjectionMap, c: Vec<T>) -> Result<SectionCandidate<T>> {
    let family = candidate_space(map)?;
    if c.len() != map.n {
        return Err(Error::BadIndex {
            index: c.len() as u32,
        });
    }
    Ok(SectionCandidate {
        map,
        c,
        lambda_block: T::one(),
        deg2: family.deg2,
    })
}

/// `s_j`, the candidate with `c = e_j`.
pub fn tautological_section<T: Field>(map: ProjectionMap, j: usize) -> Result<SectionCandidate<T>> {
    if j == 0 || j > map.n {
        return Err(Error::BadIndex { index: j as u32 });
    }
    let c = (1..=map.n)
        .map(|i| if i == j { T::one() } else { T::zero() })
        .collect();
    candidate(map, c)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    #[serde(rename = "consistent")]
    Consistent,
    #[serde(rename = "contradiction")]
    Contradiction,
}

/// Two evaluations of `q_{kl} ∘ s` on one `Θ`-element of the source.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObstructionCertificate<T> {
    pub map: ProjectionMap,
    pub c: Vec<T>,
    /// Source pair `(i, j)`, `i <= j`; the element is `Θ_i` when `i == j`, else `Θ_{ij}`.
    pub source_pair: (u32, u32),
    /// Domain line `(k, l)` of the projection `q_{kl}`.
    pub projection: (u32, u32),
    pub lhs: T,
    pub rhs: T,
    pub residual: T,
    pub verdict: Verdict,
    pub evidence: Vec<HomFact>,
    pub notes: Vec<String>,
}

impl<T: Field> ObstructionCertificate<T> {
    pub fn element(&self) -> String {
        let (i, j) = self.source_pair;
        if i == j {
            format!("Θ_{i}")
        } else {
            format!("Θ_{i}{j}")
        }
    }

    pub fn projection_label(&self) -> String {
        format!("q_{}{}", self.projection.0, self.projection.1)
    }

    pub fn record(&self) -> CertificateRecord {
        CertificateRecord {
            map: self.map.kind,
            g: self.map.g,
            n: self.map.n,
            candidate: self.c.iter().map(ToString::to_string).collect(),
            element: self.element(),
            projection: self.projection_label(),
            lhs: self.lhs.to_string(),
            rhs: self.rhs.to_string(),
            residual: self.residual.to_string(),
            verdict: self.verdict,
            evidence: self.evidence.iter().map(ToString::to_string).collect(),
            notes: self.notes.clone(),
        }
    }
}

/// Serializable form of a certificate; scalars are exact fraction strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateRecord {
    pub map: MapKind,
    pub g: usize,
    pub n: usize,
    pub candidate: Vec<String>,
    pub element: String,
    pub projection: String,
    pub lhs: String,
    pub rhs: String,
    pub residual: String,
    pub verdict: Verdict,
    pub evidence: Vec<String>,
    pub notes: Vec<String>,
}

pub const PINNING_NOTE: &str = "weight -1 candidates pinned to c = e_i by composing with d(g,n+1) -> dC(g,n) and the classification of sections of gamma_n";
pub const RELATION_NOTE: &str =
    "rhs via the source normal form; Λ²₀H part dropped since its Hom into Q(1) is zero";

/// Domain and codomain of a map with their weight-2 splittings, reused across candidates.
pub struct SectionSolver<T> {
    pub map: ProjectionMap,
    pub domain: PresentedGradedLie<T>,
    pub codomain: PresentedGradedLie<T>,
    domain_split: TrivialSplit<T>,
    codomain_split: TrivialSplit<T>,
    kill: HomFact,
}

impl<T: Field> SectionSolver<T> {
    pub fn new(map: ProjectionMap) -> Result<Self> {
        let domain = map.domain()?;
        let codomain = map.codomain()?;
        let domain_split = domain.trivial_split()?;
        let codomain_split = codomain.trivial_split()?;
        let kill = q_kill_fact(map.g)?;
        if kill.multiplicity != 0 {
            return Err(Error::Inconsistent(format!(
                "{kill}: q-functionals do not kill Λ²₀H"
            )));
        }
        Ok(SectionSolver {
            map,
            domain,
            codomain,
            domain_split,
            codomain_split,
            kill,
        })
    }

    pub fn domain_lines(&self) -> &[(u32, u32)] {
        &self.domain_split.pairs
    }

    fn class(&self, e: &LieElement<T>) -> Result<QuotientElement<T>> {
        self.domain.normal_form_in(e, 2)
    }

    /// Every determined `Θ`-constraint: one certificate per source pair `i <= j`
    /// and per `Q(1)` line of the domain.
    pub fn theta_constraints(
        &self,
        cand: &SectionCandidate<T>,
    ) -> Result<Vec<ObstructionCertificate<T>>> {
        if cand.map != self.map {
            return Err(Error::Inconsistent(format!(
                "candidate for {} given to {}",
                cand.map, self.map
            )));
        }
        let g = self.map.g;
        let half = T::from_fraction(1, 2);
        // Bracket images of the source lines L_ab = (Θ_ab + Θ_ba) / 2, as domain line coordinates.
        let mut line_images = Vec::with_capacity(self.codomain_split.pairs.len());
        for &(a, b) in &self.codomain_split.pairs {
            let e = cand
                .theta_image(a, b)
                .plus(&cand.theta_image(b, a))
                .scale(&half);
            line_images.push(self.domain_split.line_coordinates(&self.class(&e)?));
        }
        let mut out = Vec::new();
        for i in 1..=self.map.n as u32 {
            for j in i..=self.map.n as u32 {
                let source = if i == j {
                    theta::<T>(g, i)
                } else {
                    theta_pair(g, i, j)?
                };
                let mu = self
                    .codomain_split
                    .line_coordinates(&self.codomain.normal_form_in(&source, 2)?);
                let lhs = self
                    .domain_split
                    .line_coordinates(&self.class(&cand.theta_image(i, j))?);
                for (t, &projection) in self.domain_split.pairs.iter().enumerate() {
                    let rhs = mu
                        .iter()
                        .zip(&line_images)
                        .fold(T::zero(), |acc, (m, img)| acc + m.clone() * img[t].clone());
                    let residual = lhs[t].clone() - rhs.clone();
                    let verdict = if residual.is_zero() {
                        Verdict::Consistent
                    } else {
                        Verdict::Contradiction
                    };
                    out.push(ObstructionCertificate {
                        map: self.map,
                        c: cand.c.clone(),
                        source_pair: (i, j),
                        projection,
                        lhs: lhs[t].clone(),
                        rhs,
                        residual,
                        verdict,
                        evidence: vec![self.kill.clone()],
                        notes: vec![RELATION_NOTE.to_string()],
                    });
                }
            }
        }
        Ok(out)
    }
}

/// All determined `Θ`-constraints for one candidate.
pub fn theta_constraints<T: Field>(
    cand: &SectionCandidate<T>,
) -> Result<Vec<ObstructionCertificate<T>>> {
    SectionSolver::new(cand.map)?.theta_constraints(cand)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Existence {
    #[serde(rename = "no-section")]
    NoSection,
    #[serde(rename = "inconclusive")]
    Inconclusive,
}

impl fmt::Display for Existence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Existence::NoSection => "NO-SECTION",
            Existence::Inconclusive => "inconclusive",
        })
    }
}

/// Evidence for `n = 0`, where there are no candidates to refute: a section of
/// `γ_0^o` would give a section of `γ_0` through `d_{g,1} ≅ d_{C_g}`, and `γ_0`
/// has none.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoutedArgument {
    /// Weight-1 and weight-2 descriptors of `d_{g,1}` and `d_{C_{g,0}}` agree.
    pub isomorphic: bool,
    pub weight2_dims: (usize, usize),
    /// Tautological sections of `γ_0`.
    pub tautological_candidates: usize,
    /// Explicit weight-2 dimension of `d_{g,0}`.
    pub codomain_weight2_dim: usize,
    pub bracket: HomFact,
}

impl RoutedArgument {
    pub fn holds(&self) -> bool {
        self.isomorphic && self.tautological_candidates == 0 && self.bracket.multiplicity >= 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExistenceReport<T> {
    pub map: ProjectionMap,
    pub verdict: Existence,
    /// Candidates examined (the pinned `e_i`).
    pub candidates: Vec<Vec<T>>,
    /// One contradiction per candidate, the first in constraint order.
    pub certificates: Vec<ObstructionCertificate<T>>,
    /// Total determined constraints evaluated.
    pub constraints_checked: usize,
    pub routed: Option<RoutedArgument>,
    pub evidence: Vec<HomFact>,
    pub notes: Vec<String>,
}

fn routed_argument<T: Field>(g: usize) -> Result<RoutedArgument> {
    let d1: PresentedGradedLie<T> = build_d_on(g, &[0])?;
    let dc: PresentedGradedLie<T> = build_d_c(g, 0)?;
    let d0: PresentedGradedLie<T> = build_d(g, 0)?;
    let isomorphic = d1.dimension(1) == dc.dimension(1)
        && weight2_descriptor(&d1)? == weight2_descriptor(&dc)?
        && d1.explicit_dim(2) == dc.explicit_dim(2);
    Ok(RoutedArgument {
        isomorphic,
        weight2_dims: (d1.explicit_dim(2), dc.explicit_dim(2)),
        tautological_candidates: 0,
        codomain_weight2_dim: d0.explicit_dim(2),
        bracket: bracket_fact(g)?,
    })
}

/// Decide whether `γ_n^o` admits an equivariant graded Lie section.
///
/// For `g >= 4` the answer is definitive; at `g = 3` the candidate pinning is
/// not available and the report is inconclusive, with certificates attached
/// for information.
pub fn exists_section<T: Field>(g: usize, n: usize) -> Result<ExistenceReport<T>> {
    let map = ProjectionMap::gamma_o(g, n);
    candidate_space(map)?;
    let bracket = bracket_fact(g)?;
    let mut report = ExistenceReport {
        map,
        verdict: Existence::Inconclusive,
        candidates: Vec::new(),
        certificates: Vec::new(),
        constraints_checked: 0,
        routed: None,
        evidence: vec![bracket.clone()],
        notes: vec![PINNING_NOTE.to_string()],
    };
    if n == 0 {
        let routed = routed_argument::<T>(g)?;
        if g >= 4 && routed.holds() {
            report.verdict = Existence::NoSection;
        }
        report
            .notes
            .push("n = 0: routed through d(g,1) ≅ dC(g,0); gamma_0 has no section".into());
        report.routed = Some(routed);
        return Ok(report);
    }
    let solver = SectionSolver::<T>::new(map)?;
    let mut refuted = 0;
    for i in 1..=n {
        let cand = tautological_section::<T>(map, i)?;
        let certs = solver.theta_constraints(&cand)?;
        report.constraints_checked += certs.len();
        if let Some(bad) = certs
            .into_iter()
            .find(|c| c.verdict == Verdict::Contradiction)
        {
            report.certificates.push(bad);
            refuted += 1;
        }
        report.candidates.push(cand.c);
    }
    if g >= 4 && bracket.multiplicity >= 1 && refuted == n {
        report.verdict = Existence::NoSection;
    }
    if g < 4 {
        report.notes.push(format!(
            "g = {g}: {bracket}; the weight -1 pinning is unavailable"
        ));
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TautologicalCheck<T> {
    pub j: usize,
    pub c: Vec<T>,
    pub certificates: Vec<ObstructionCertificate<T>>,
}

impl<T: Field> TautologicalCheck<T> {
    pub fn consistent(&self) -> bool {
        self.certificates.iter().all(|c| c.residual.is_zero())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TautologicalReport<T> {
    pub map: ProjectionMap,
    pub checks: Vec<TautologicalCheck<T>>,
    pub notes: Vec<String>,
}

impl<T: Field> TautologicalReport<T> {
    pub fn consistent(&self) -> bool {
        self.checks.iter().all(TautologicalCheck::consistent)
    }
}

pub const EXHAUSTIVE_NOTE: &str = "exhaustiveness of the n tautological sections is conditional on the Λ³₀H bracket constants, which are not modelled";

/// Run every `Θ`-constraint on each tautological section of `γ_n`.
pub fn verify_taut_sections<T: Field>(g: usize, n: usize) -> Result<TautologicalReport<T>> {
    let map = ProjectionMap::gamma(g, n);
    candidate_space(map)?;
    let mut checks = Vec::with_capacity(n);
    if n > 0 {
        let solver = SectionSolver::<T>::new(map)?;
        for j in 1..=n {
            let cand = tautological_section::<T>(map, j)?;
            let certificates = solver.theta_constraints(&cand)?;
            checks.push(TautologicalCheck {
                j,
                c: cand.c,
                certificates,
            });
        }
    }
    Ok(TautologicalReport {
        map,
        checks,
        notes: vec![EXHAUSTIVE_NOTE.to_string()],
    })
}

/// Generators of the codomain, for weight-1 checks of `γ ∘ s`.
pub fn codomain_generators(map: ProjectionMap) -> Vec<SymplecticGenerator> {
    generators(map.g, &(1..=map.n as u32).collect::<Vec<_>>())
}
