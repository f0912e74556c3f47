//! The gyrogroup `(G, ⊙)` with `a ⊙ b = a²·b·a⁻¹`, gyrations computed from
//! the gyrator identity, and an exhaustive axiom verifier for arbitrary
//! tables.

use std::borrow::Cow;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::Group;
use crate::predicates::PredicateResult;
use crate::table::{ElementId, OpTable, Permutation};

/// Above this order gyrations are recomputed on demand instead of being
/// stored as an `n × n` table of permutations.
pub const DEFAULT_GYRATION_TABLE_LIMIT: usize = 512;

/// The `⊙` table of a group: `a ⊙ b = a·a·b·a⁻¹`.
pub fn associated_gyro(g: &Group) -> OpTable {
    let t = OpTable::from_fn(g.order(), |a, b| g.product(&[a, a, b, g.inv(a)]))
        .expect("products stay in the carrier");
    match g.table().names() {
        Some(names) => t.with_names(names.to_vec()).expect("names already validated"),
        None => t,
    }
}

/// The map `c ↦ (a⊙b)′ ⊙ (a ⊙ (b ⊙ c))`.
///
/// `identity` and `inverses` must be a two-sided identity and two-sided
/// inverses of `t`; this is checked first.
pub fn gyration(
    t: &OpTable,
    identity: ElementId,
    inverses: &[ElementId],
    a: ElementId,
    b: ElementId,
) -> Result<Permutation> {
    let n = t.size();
    if identity >= n || (0..n).any(|x| t.op(identity, x) != x || t.op(x, identity) != x) {
        return Err(Error::PreconditionFailed(format!(
            "{identity} is not a two-sided identity"
        )));
    }
    if inverses.len() != n
        || (0..n).any(|x| {
            inverses[x] >= n
                || t.op(inverses[x], x) != identity
                || t.op(x, inverses[x]) != identity
        })
    {
        return Err(Error::PreconditionFailed("inverse array is not two-sided".into()));
    }
    if a >= n || b >= n {
        return Err(Error::SizeMismatch(format!("gyr[{a},{b}] on a table of size {n}")));
    }
    Permutation::from_images(gyration_images(t, inverses, a, b))
        .map_err(|_| Error::NotBijective(a, b))
}

fn gyration_images(t: &OpTable, inverses: &[ElementId], a: ElementId, b: ElementId) -> Vec<ElementId> {
    let ab_inv = inverses[t.op(a, b)];
    (0..t.size()).map(|c| t.op(ab_inv, t.op(a, t.op(b, c)))).collect()
}

fn is_bijection(images: &[ElementId]) -> bool {
    let mut seen = vec![false; images.len()];
    images.iter().all(|&x| !std::mem::replace(&mut seen[x], true))
}

/// The checks performed by [`verify_gyrogroup`], in evaluation order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    /// Some `e` with `e ⊙ a = a` for all `a`.
    LeftIdentity,
    /// The left identity is unique.
    UniqueIdentity,
    /// The left identity is also a right identity.
    TwoSidedIdentity,
    /// Every `a` has some `a′` with `a′ ⊙ a = e`.
    LeftInverse,
    /// Left inverses are unique.
    UniqueInverse,
    /// `a ⊙ a′ = e`.
    TwoSidedInverse,
    /// Each gyrator-identity map is a bijection.
    GyrationBijective,
    /// Each gyrator-identity map preserves `⊙`.
    GyrationAutomorphism,
    /// `a ⊙ (b ⊙ c) = (a ⊙ b) ⊙ gyr[a,b](c)`.
    LeftGyroassociative,
    /// `gyr[a ⊙ b, b] = gyr[a, b]`.
    LeftLoop,
}

impl Axiom {
    pub const ALL: [Axiom; 10] = [
        Axiom::LeftIdentity,
        Axiom::UniqueIdentity,
        Axiom::TwoSidedIdentity,
        Axiom::LeftInverse,
        Axiom::UniqueInverse,
        Axiom::TwoSidedInverse,
        Axiom::GyrationBijective,
        Axiom::GyrationAutomorphism,
        Axiom::LeftGyroassociative,
        Axiom::LeftLoop,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Axiom::LeftIdentity => "left_identity",
            Axiom::UniqueIdentity => "unique_identity",
            Axiom::TwoSidedIdentity => "two_sided_identity",
            Axiom::LeftInverse => "left_inverse",
            Axiom::UniqueInverse => "unique_inverse",
            Axiom::TwoSidedInverse => "two_sided_inverse",
            Axiom::GyrationBijective => "gyration_bijective",
            Axiom::GyrationAutomorphism => "gyration_automorphism",
            Axiom::LeftGyroassociative => "left_gyroassociative",
            Axiom::LeftLoop => "left_loop",
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// First violation found for one axiom.
///
/// Witness layout: `[]` for a missing identity, `[e1, e2]` for two left
/// identities, `[a]` for per-element checks, `[a, b]` for bijectivity and the
/// loop property, `[a, b, c]` for gyroassociativity and `[a, b, c, d]` for
/// `gyr[a,b](c ⊙ d) != gyr[a,b](c) ⊙ gyr[a,b](d)`. Where an axiom needs a
/// second element to exhibit the failure (two left inverses), it is appended.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomFailure {
    pub axiom: Axiom,
    pub witness: Vec<ElementId>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub passed: bool,
    pub failures: Vec<AxiomFailure>,
    /// Axioms that could not be evaluated because an earlier one failed
    /// (gyrations need an identity and inverses).
    pub unchecked: Vec<Axiom>,
    pub identity: Option<ElementId>,
    pub inverses: Option<Vec<ElementId>>,
    /// Number of pairs `(a, b)` whose gyration is not the identity map.
    pub nontrivial_gyrations: Option<usize>,
}

impl AxiomReport {
    pub fn failure(&self, axiom: Axiom) -> Option<&AxiomFailure> {
        self.failures.iter().find(|f| f.axiom == axiom)
    }

    pub fn summary(&self) -> String {
        if self.passed {
            return "all axioms hold".into();
        }
        let parts: Vec<String> = self
            .failures
            .iter()
            .map(|f| format!("{} fails at {:?}", f.axiom, f.witness))
            .collect();
        parts.join("; ")
    }
}

#[derive(Default)]
struct PairFindings {
    non_bijective: bool,
    automorphism: Option<(ElementId, ElementId)>,
    gyroassoc: Option<ElementId>,
    nontrivial: bool,
}

/// Exhaustively checks the gyrogroup axioms on `t`.
///
/// Order: identity, inverses, gyration bijectivity, gyration automorphism-hood,
/// left gyroassociativity, left loop property. Each axiom records its
/// lexicographically least witness; the scan over pairs runs in parallel but
/// the reduction is order-preserving, so witnesses do not depend on the
/// thread count.
pub fn verify_gyrogroup(t: &OpTable) -> AxiomReport {
    let n = t.size();
    let mut failures = Vec::new();
    let mut fail = |axiom, witness| failures.push(AxiomFailure { axiom, witness });
    let gyration_axioms = [
        Axiom::GyrationBijective,
        Axiom::GyrationAutomorphism,
        Axiom::LeftGyroassociative,
        Axiom::LeftLoop,
    ];

    let left_ids: Vec<ElementId> = (0..n).filter(|&e| (0..n).all(|a| t.op(e, a) == a)).collect();
    let Some(&e) = left_ids.first() else {
        fail(Axiom::LeftIdentity, vec![]);
        let mut unchecked = vec![
            Axiom::UniqueIdentity,
            Axiom::TwoSidedIdentity,
            Axiom::LeftInverse,
            Axiom::UniqueInverse,
            Axiom::TwoSidedInverse,
        ];
        unchecked.extend(gyration_axioms);
        return AxiomReport {
            passed: false,
            failures,
            unchecked,
            identity: None,
            inverses: None,
            nontrivial_gyrations: None,
        };
    };
    if left_ids.len() > 1 {
        fail(Axiom::UniqueIdentity, vec![left_ids[0], left_ids[1]]);
    }
    if let Some(a) = (0..n).find(|&a| t.op(a, e) != a) {
        fail(Axiom::TwoSidedIdentity, vec![a]);
    }

    let mut inverses = Vec::with_capacity(n);
    let mut missing = None;
    let mut duplicate = None;
    let mut one_sided = None;
    for a in 0..n {
        let mut lefts = (0..n).filter(|&x| t.op(x, a) == e);
        match lefts.next() {
            None => {
                missing.get_or_insert(a);
                inverses.push(usize::MAX);
            }
            Some(x) => {
                if let Some(y) = lefts.next() {
                    duplicate.get_or_insert(vec![a, x, y]);
                }
                if t.op(a, x) != e {
                    one_sided.get_or_insert(a);
                }
                inverses.push(x);
            }
        }
    }
    if let Some(a) = missing {
        fail(Axiom::LeftInverse, vec![a]);
    }
    if let Some(w) = duplicate {
        fail(Axiom::UniqueInverse, w);
    }
    if let Some(a) = one_sided {
        fail(Axiom::TwoSidedInverse, vec![a]);
    }
    if missing.is_some() {
        return AxiomReport {
            passed: false,
            failures,
            unchecked: gyration_axioms.to_vec(),
            identity: Some(e),
            inverses: None,
            nontrivial_gyrations: None,
        };
    }

    let findings: Vec<PairFindings> = (0..n * n)
        .into_par_iter()
        .map(|ab| {
            let (a, b) = (ab / n, ab % n);
            let g = gyration_images(t, &inverses, a, b);
            let mut out = PairFindings {
                non_bijective: !is_bijection(&g),
                nontrivial: g.iter().enumerate().any(|(i, &x)| i != x),
                ..Default::default()
            };
            if out.nontrivial {
                'auto: for c in 0..n {
                    for d in 0..n {
                        if g[t.op(c, d)] != t.op(g[c], g[d]) {
                            out.automorphism = Some((c, d));
                            break 'auto;
                        }
                    }
                }
            }
            let ab_op = t.op(a, b);
            out.gyroassoc = (0..n).find(|&c| t.op(a, t.op(b, c)) != t.op(ab_op, g[c]));
            out
        })
        .collect();

    let pair = |i: usize| (i / n, i % n);
    if let Some(i) = findings.iter().position(|f| f.non_bijective) {
        let (a, b) = pair(i);
        fail(Axiom::GyrationBijective, vec![a, b]);
    }
    if let Some((i, (c, d))) = findings.iter().enumerate().find_map(|(i, f)| f.automorphism.map(|w| (i, w))) {
        let (a, b) = pair(i);
        fail(Axiom::GyrationAutomorphism, vec![a, b, c, d]);
    }
    if let Some((i, c)) = findings.iter().enumerate().find_map(|(i, f)| f.gyroassoc.map(|c| (i, c))) {
        let (a, b) = pair(i);
        fail(Axiom::LeftGyroassociative, vec![a, b, c]);
    }
    let loop_violation = (0..n * n).into_par_iter().find_first(|&ab| {
        let (a, b) = (ab / n, ab % n);
        let ab_op = t.op(a, b);
        gyration_images(t, &inverses, ab_op, b) != gyration_images(t, &inverses, a, b)
    });
    if let Some(i) = loop_violation {
        let (a, b) = pair(i);
        fail(Axiom::LeftLoop, vec![a, b]);
    }

    let nontrivial = findings.iter().filter(|f| f.nontrivial).count();
    AxiomReport {
        passed: failures.is_empty(),
        failures,
        unchecked: Vec::new(),
        identity: Some(e),
        inverses: Some(inverses),
        nontrivial_gyrations: Some(nontrivial),
    }
}

#[derive(Debug, Clone)]
enum Gyrations {
    Table(Vec<Permutation>),
    OnDemand,
}

/// A verified gyrogroup with its gyrations.
#[derive(Debug, Clone)]
pub struct Gyrogroup {
    op: OpTable,
    identity: ElementId,
    inverses: Vec<ElementId>,
    gyr: Gyrations,
}

impl Gyrogroup {
    /// Verifies `t` and materializes it. Gyrations are tabulated when the
    /// order is at most `table_limit`.
    pub fn from_table(t: OpTable, table_limit: usize) -> Result<Gyrogroup> {
        let report = verify_gyrogroup(&t);
        if !report.passed {
            return Err(Error::NotAGyrogroup(Box::new(report)));
        }
        let identity = report.identity.expect("passed report has an identity");
        let inverses = report.inverses.expect("passed report has inverses");
        let n = t.size();
        let gyr = if n <= table_limit {
            Gyrations::Table(
                (0..n * n)
                    .into_par_iter()
                    .map(|ab| {
                        Permutation::from_images_unchecked(gyration_images(&t, &inverses, ab / n, ab % n))
                    })
                    .collect(),
            )
        } else {
            Gyrations::OnDemand
        };
        Ok(Gyrogroup { op: t, identity, inverses, gyr })
    }

    pub fn order(&self) -> usize {
        self.op.size()
    }

    pub fn table(&self) -> &OpTable {
        &self.op
    }

    pub fn identity(&self) -> ElementId {
        self.identity
    }

    pub fn inverses(&self) -> &[ElementId] {
        &self.inverses
    }

    #[inline]
    pub fn op(&self, a: ElementId, b: ElementId) -> ElementId {
        self.op.op(a, b)
    }

    #[inline]
    pub fn inv(&self, a: ElementId) -> ElementId {
        self.inverses[a]
    }

    pub fn gyrations_tabulated(&self) -> bool {
        matches!(self.gyr, Gyrations::Table(_))
    }

    /// `gyr[a, b]` as a permutation.
    pub fn gyr(&self, a: ElementId, b: ElementId) -> Cow<'_, Permutation> {
        match &self.gyr {
            Gyrations::Table(perms) => Cow::Borrowed(&perms[a * self.order() + b]),
            Gyrations::OnDemand => Cow::Owned(Permutation::from_images_unchecked(gyration_images(
                &self.op,
                &self.inverses,
                a,
                b,
            ))),
        }
    }

    /// `gyr[a, b](c)`.
    pub fn gyr_apply(&self, a: ElementId, b: ElementId, c: ElementId) -> ElementId {
        match &self.gyr {
            Gyrations::Table(perms) => perms[a * self.order() + b].apply(c),
            Gyrations::OnDemand => {
                let ab_inv = self.inv(self.op(a, b));
                self.op(ab_inv, self.op(a, self.op(b, c)))
            }
        }
    }

    pub fn has_nontrivial_gyration(&self) -> bool {
        let n = self.order();
        (0..n).any(|a| (0..n).any(|b| !self.gyr(a, b).is_identity()))
    }
}

/// The gyrogroup associated to `g`, with gyrations tabulated up to
/// [`DEFAULT_GYRATION_TABLE_LIMIT`].
pub fn build_gyrogroup(g: &Group) -> Result<Gyrogroup> {
    build_gyrogroup_with_limit(g, DEFAULT_GYRATION_TABLE_LIMIT)
}

pub fn build_gyrogroup_with_limit(g: &Group, table_limit: usize) -> Result<Gyrogroup> {
    let gyro = Gyrogroup::from_table(associated_gyro(g), table_limit)?;
    debug_assert_eq!(gyro.identity(), g.identity());
    debug_assert_eq!(gyro.inverses(), g.inverses());
    Ok(gyro)
}

/// `a ⊙ b = gyr[a, b](b ⊙ a)` for all `a, b`.
pub fn is_gyrocommutative(g: &Gyrogroup) -> PredicateResult {
    let n = g.order();
    let witness = (0..n * n)
        .into_par_iter()
        .find_first(|&ab| {
            let (a, b) = (ab / n, ab % n);
            g.op(a, b) != g.gyr_apply(a, b, g.op(b, a))
        })
        .map(|ab| vec![ab / n, ab % n]);
    PredicateResult::from_witness(witness)
}

/// `gyr[a, b] = φ_{[a, b⁻¹]}` for all `a, b`, comparing gyrations of `gyro`
/// with conjugations in `g`.
pub fn check_gyr_formula(g: &Group, gyro: &Gyrogroup) -> Result<PredicateResult> {
    if g.order() != gyro.order() {
        return Err(Error::SizeMismatch(format!(
            "group of order {} vs gyrogroup of order {}",
            g.order(),
            gyro.order()
        )));
    }
    let n = g.order();
    let witness = (0..n * n)
        .into_par_iter()
        .find_first(|&ab| {
            let (a, b) = (ab / n, ab % n);
            *gyro.gyr(a, b) != g.conjugation_aut(g.commutator(a, g.inv(b)))
        })
        .map(|ab| vec![ab / n, ab % n]);
    Ok(PredicateResult::from_witness(witness))
}
