//! Executable checks pairing each structural criterion with an exhaustive
//! brute-force computation on the associated gyrogroup.
//!
//! Every check produces a [`TheoremReport`]. `predicate` is the
//! group-theoretic side, `brute_force` the side computed on `(G, ⊙)` (or the
//! expected/observed pair for checks without a criterion), and `agreement`
//! is true when the two sides coincide and every auxiliary assertion of the
//! check holds.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::catalog::{build_preset, Preset};
use crate::error::{Error, Result};
use crate::group::Group;
use crate::gyro::{associated_gyro, build_gyrogroup, check_gyr_formula, is_gyrocommutative, verify_gyrogroup};
use crate::iso::{
    enumerate_automorphisms_capped, find_isomorphism_capped, is_homomorphism, Morphism, SearchLimits,
    SearchStats,
};
use crate::predicates::{cubes_central, is_2_engel, is_central_by_2_engel, PredicateResult};
use crate::table::{ElementId, OpTable};

/// A named group under test.
#[derive(Debug, Clone)]
pub struct Subject {
    pub name: String,
    pub group: Group,
}

impl Subject {
    pub fn new(name: impl Into<String>, group: Group) -> Self {
        Subject { name: name.into(), group }
    }

    pub fn from_preset(p: &Preset) -> Result<Self> {
        Ok(Subject { name: p.to_string(), group: build_preset(p)? })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TheoremTag {
    Theorem1,
    Theorem2,
    Theorem3,
    ProofIdentities,
    Corollary4,
    AutContainment,
    Functor,
    GyrFormula,
    Exploration,
    Input,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    /// Which check the elements violate.
    pub check: String,
    /// Element names where available, ids otherwise.
    pub elements: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReportError {
    pub kind: String,
    pub message: String,
}

impl From<&Error> for ReportError {
    fn from(e: &Error) -> Self {
        ReportError { kind: e.kind().to_string(), message: e.to_string() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TheoremReport {
    pub theorem: TheoremTag,
    pub subjects: Vec<String>,
    pub hypothesis: bool,
    pub predicate: Option<bool>,
    pub brute_force: Option<bool>,
    pub agreement: Option<bool>,
    pub witnesses: Vec<Witness>,
    pub details: BTreeMap<String, Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stats: Option<SearchStats>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ReportError>,
}

impl TheoremReport {
    fn new(theorem: TheoremTag, subjects: &[&Subject]) -> Self {
        TheoremReport {
            theorem,
            subjects: subjects.iter().map(|s| s.name.clone()).collect(),
            hypothesis: true,
            predicate: None,
            brute_force: None,
            agreement: None,
            witnesses: Vec::new(),
            details: BTreeMap::new(),
            stats: None,
            error: None,
        }
    }

    /// A report standing in for a check that could not run. An unmet
    /// hypothesis is not an error: it clears `hypothesis` and is explained in
    /// `details.hypothesis_failure`.
    pub fn failed(theorem: TheoremTag, subjects: Vec<String>, err: &Error) -> Self {
        let mut rep = TheoremReport {
            theorem,
            subjects,
            hypothesis: true,
            predicate: None,
            brute_force: None,
            agreement: None,
            witnesses: Vec::new(),
            details: BTreeMap::new(),
            stats: None,
            error: None,
        };
        match err {
            Error::HypothesisFailed(why) => {
                rep.hypothesis = false;
                rep.detail("hypothesis_failure", why.as_str());
            }
            other => rep.error = Some(other.into()),
        }
        rep
    }

    fn sides(&mut self, predicate: bool, brute_force: bool, auxiliary: bool) {
        self.predicate = Some(predicate);
        self.brute_force = Some(brute_force);
        self.agreement = Some(predicate == brute_force && auxiliary);
    }

    fn detail(&mut self, key: &str, value: impl Into<Value>) {
        self.details.insert(key.to_string(), value.into());
    }

    fn witness(&mut self, check: impl Into<String>, table: &OpTable, ids: &[ElementId]) {
        self.witnesses.push(Witness {
            check: check.into(),
            elements: ids.iter().map(|&x| table.label(x)).collect(),
        });
    }

    fn predicate_witness(&mut self, check: &str, table: &OpTable, r: &PredicateResult) {
        if let Some(w) = r.witness() {
            self.witness(check, table, w);
        }
    }

    fn add_stats(&mut self, s: &SearchStats) {
        self.stats.get_or_insert_with(SearchStats::default).merge(s);
    }

    /// True when the check ran and nothing disagreed.
    pub fn is_ok(&self) -> bool {
        self.error.is_none() && self.agreement != Some(false)
    }
}

fn require_central_by_2_engel(s: &Subject) -> Result<()> {
    let r = is_central_by_2_engel(&s.group);
    if r.holds() {
        Ok(())
    } else {
        Err(Error::HypothesisFailed(format!("{} is not central by a 2-Engel group", s.name)))
    }
}

fn require_order_coprime_to_3(s: &Subject) -> Result<()> {
    if s.group.order().is_multiple_of(3) {
        Err(Error::HypothesisFailed(format!("3 divides |{}| = {}", s.name, s.group.order())))
    } else {
        Ok(())
    }
}

/// Central-by-2-Engel versus "the `⊙` table passes every gyrogroup axiom".
pub fn check_theorem1(s: &Subject) -> TheoremReport {
    let g = &s.group;
    let mut rep = TheoremReport::new(TheoremTag::Theorem1, &[s]);
    let pred = is_central_by_2_engel(g);
    let gyro = associated_gyro(g);
    let axioms = verify_gyrogroup(&gyro);
    rep.predicate_witness("central_by_2_engel", g.table(), &pred);
    for f in &axioms.failures {
        rep.witness(format!("gyrogroup:{}", f.axiom), g.table(), &f.witness);
    }
    rep.sides(pred.holds(), axioms.passed, true);
    rep.detail("order", g.order());
    rep.detail("abelian", g.is_abelian());
    rep.detail("two_engel", is_2_engel(g).holds());
    rep.detail("gyro_associative", gyro.is_associative());
    rep.detail("nontrivial_gyrations", json!(axioms.nontrivial_gyrations));
    rep
}

/// Cubes-central versus gyrocommutativity, with the `Inn(G)` exponent
/// cross-check folded into `agreement`.
pub fn check_theorem2(s: &Subject) -> Result<TheoremReport> {
    require_central_by_2_engel(s)?;
    let g = &s.group;
    let gyro = build_gyrogroup(g).map_err(|e| {
        Error::HypothesisFailed(format!("{}: associated gyrogroup fails verification ({e})", s.name))
    })?;
    let mut rep = TheoremReport::new(TheoremTag::Theorem2, &[s]);
    let pred = cubes_central(g);
    let brute = is_gyrocommutative(&gyro);
    let inn = g.inner_group();
    let inn_exp = inn.exponent();
    let exp_divides_3 = inn_exp == 1 || inn_exp == 3;
    rep.predicate_witness("cubes_central", g.table(), &pred);
    rep.predicate_witness("gyrocommutative", g.table(), &brute);
    rep.sides(pred.holds(), brute.holds(), exp_divides_3 == pred.holds());
    rep.detail("order", g.order());
    rep.detail("commutative", g.is_abelian());
    rep.detail("center_order", g.center().len());
    rep.detail("inner_order", inn.order());
    rep.detail("inner_exponent", inn_exp);
    rep.detail("inner_exponent_divides_3", exp_divides_3);
    if inn_exp == 1 {
        rep.detail(
            "note",
            "Inn(G) is trivial (exponent 1, not 3): gyrocommutativity follows the b^3 in Z(G) reading",
        );
    }
    Ok(rep)
}

/// `gyr[a, b] = φ_{[a, b⁻¹]}` over all pairs, plus whether any gyration is
/// nontrivial.
pub fn check_gyr_identity(s: &Subject) -> Result<TheoremReport> {
    require_central_by_2_engel(s)?;
    let g = &s.group;
    let gyro = build_gyrogroup(g)?;
    let mut rep = TheoremReport::new(TheoremTag::GyrFormula, &[s]);
    let formula = check_gyr_formula(g, &gyro)?;
    rep.predicate_witness("gyr_equals_conjugation", g.table(), &formula);
    rep.sides(true, formula.holds(), true);
    rep.detail("nontrivial_gyration", gyro.has_nontrivial_gyration());
    Ok(rep)
}

fn group_iso_pair(
    s1: &Subject,
    s2: &Subject,
    limits: &SearchLimits,
    rep: &mut TheoremReport,
) -> Result<(Option<Morphism>, Option<Morphism>)> {
    let (group_iso, st1) = find_isomorphism_capped(s1.group.table(), s2.group.table(), limits)?;
    let gyro1 = associated_gyro(&s1.group);
    let gyro2 = associated_gyro(&s2.group);
    let (gyro_iso, st2) = find_isomorphism_capped(&gyro1, &gyro2, limits)?;
    rep.add_stats(&st1);
    rep.add_stats(&st2);
    rep.detail("group_isomorphic", group_iso.is_some());
    rep.detail("gyro_isomorphic", gyro_iso.is_some());
    if let Some(f) = &group_iso {
        rep.detail("group_iso", f.images().to_vec());
    }
    if let Some(f) = &gyro_iso {
        rep.detail("gyro_iso", f.images().to_vec());
    }
    Ok((group_iso, gyro_iso))
}

/// Runs the proof-identity and homomorphism checks on a found gyro
/// isomorphism; returns whether all passed.
fn audit_gyro_iso(f: &Morphism, s1: &Subject, s2: &Subject, rep: &mut TheoremReport) -> Result<bool> {
    let hom = is_homomorphism(f, s1.group.table(), s2.group.table())?;
    rep.detail("gyro_iso_is_group_hom", hom.holds());
    rep.predicate_witness("gyro_iso_is_group_hom", s1.group.table(), &hom);
    let ids = check_proof_identities(f, s1, s2)?;
    let ok = ids.agreement == Some(true);
    rep.detail("proof_identities", ok);
    rep.witnesses.extend(ids.witnesses);
    Ok(ok)
}

/// For `3 ∤ |G1|`: group isomorphism exists iff gyro isomorphism exists;
/// a found gyro isomorphism must be a group isomorphism and satisfy the
/// proof identities, and a found group isomorphism must preserve `⊙`.
pub fn check_theorem3(s1: &Subject, s2: &Subject, limits: &SearchLimits) -> Result<TheoremReport> {
    require_order_coprime_to_3(s1)?;
    require_central_by_2_engel(s1)?;
    require_central_by_2_engel(s2)?;
    let mut rep = TheoremReport::new(TheoremTag::Theorem3, &[s1, s2]);
    let (group_iso, gyro_iso) = group_iso_pair(s1, s2, limits, &mut rep)?;
    let mut aux = true;
    if let Some(f) = &gyro_iso {
        aux &= audit_gyro_iso(f, s1, s2, &mut rep)?;
    }
    if let Some(f) = &group_iso {
        let gyro_hom = is_homomorphism(f, &associated_gyro(&s1.group), &associated_gyro(&s2.group))?;
        rep.detail("group_iso_is_gyro_hom", gyro_hom.holds());
        rep.predicate_witness("group_iso_is_gyro_hom", s1.group.table(), &gyro_hom);
        aux &= gyro_hom.holds();
    }
    rep.sides(group_iso.is_some(), gyro_iso.is_some(), aux);
    Ok(rep)
}

/// The same searches as [`check_theorem3`] without the `3 ∤ |G1|`
/// hypothesis. Nothing is asserted: `agreement` stays unset.
pub fn explore_isomorphism(s1: &Subject, s2: &Subject, limits: &SearchLimits) -> Result<TheoremReport> {
    require_central_by_2_engel(s1)?;
    require_central_by_2_engel(s2)?;
    let mut rep = TheoremReport::new(TheoremTag::Exploration, &[s1, s2]);
    rep.hypothesis = !s1.group.order().is_multiple_of(3);
    let (group_iso, gyro_iso) = group_iso_pair(s1, s2, limits, &mut rep)?;
    if let Some(f) = &gyro_iso {
        audit_gyro_iso(f, s1, s2, &mut rep)?;
    }
    rep.predicate = Some(group_iso.is_some());
    rep.brute_force = Some(gyro_iso.is_some());
    Ok(rep)
}

/// Checks, for a bijective `f` preserving `⊙`, the intermediate identities
/// `f(e₁) = e₂`, `f(a²) = f(a)²`, `f(a⁻¹) = f(a)⁻¹`, `f(aba) = f(a)f(b)f(a)`,
/// `f(a³b) = f(a)³f(b)` and `f(a³) = f(a)³`. None of them needs `3 ∤ |G|`.
pub fn check_proof_identities(f: &Morphism, s1: &Subject, s2: &Subject) -> Result<TheoremReport> {
    let (g1, g2) = (&s1.group, &s2.group);
    if f.domain_size() != g1.order() || f.codomain_size() != g2.order() || !f.is_bijective() {
        return Err(Error::PreconditionFailed("map is not a bijection between the carriers".into()));
    }
    if !is_homomorphism(f, &associated_gyro(g1), &associated_gyro(g2))?.holds() {
        return Err(Error::PreconditionFailed("map does not preserve a ⊙ b = a²ba⁻¹".into()));
    }
    let mut rep = TheoremReport::new(TheoremTag::ProofIdentities, &[s1, s2]);
    let fa = |a| f.apply(a);
    let first_a = |bad: &dyn Fn(ElementId) -> bool| g1.elements().find(|&a| bad(a)).map(|a| vec![a]);
    let first_ab = |bad: &dyn Fn(ElementId, ElementId) -> bool| {
        g1.elements()
            .flat_map(|a| g1.elements().map(move |b| (a, b)))
            .find(|&(a, b)| bad(a, b))
            .map(|(a, b)| vec![a, b])
    };
    let checks: [(&str, Option<Vec<ElementId>>); 6] = [
        ("identity", (fa(g1.identity()) != g2.identity()).then(Vec::new)),
        ("square", first_a(&|a| fa(g1.mul(a, a)) != g2.mul(fa(a), fa(a)))),
        ("inverse", first_a(&|a| fa(g1.inv(a)) != g2.inv(fa(a)))),
        ("aba", first_ab(&|a, b| fa(g1.product(&[a, b, a])) != g2.product(&[fa(a), fa(b), fa(a)]))),
        ("cube_times", first_ab(&|a, b| fa(g1.mul(g1.power(a, 3), b)) != g2.mul(g2.power(fa(a), 3), fa(b)))),
        ("cube", first_a(&|a| fa(g1.power(a, 3)) != g2.power(fa(a), 3))),
    ];
    let mut all = true;
    for (name, witness) in checks {
        rep.detail(name, witness.is_none());
        if let Some(w) = witness {
            all = false;
            rep.witness(format!("proof_identity:{name}"), g1.table(), &w);
        }
    }
    rep.sides(true, all, true);
    Ok(rep)
}

type MapSet = BTreeSet<Vec<ElementId>>;

fn aut_sets(s: &Subject, limits: &SearchLimits, rep: &mut TheoremReport) -> Result<(MapSet, MapSet)> {
    let (group_auts, st1) = enumerate_automorphisms_capped(s.group.table(), limits)?;
    let (gyro_auts, st2) = enumerate_automorphisms_capped(&associated_gyro(&s.group), limits)?;
    rep.add_stats(&st1);
    rep.add_stats(&st2);
    let a: BTreeSet<_> = group_auts.iter().map(|m| m.images().to_vec()).collect();
    let b: BTreeSet<_> = gyro_auts.iter().map(|m| m.images().to_vec()).collect();
    rep.detail("group_automorphisms", a.len());
    rep.detail("gyro_automorphisms", b.len());
    rep.detail("group_aut_subset_of_gyro_aut", a.is_subset(&b));
    if let Some(f) = a.difference(&b).next() {
        rep.detail("group_aut_not_gyro_aut", f.clone());
    }
    if let Some(f) = b.difference(&a).next() {
        rep.detail("gyro_aut_not_group_aut", f.clone());
    }
    Ok((a, b))
}

/// For `3 ∤ |G|`: `Aut(G, ·) = Aut(G, ⊙)` as sets of maps.
pub fn check_corollary4(s: &Subject, limits: &SearchLimits) -> Result<TheoremReport> {
    require_central_by_2_engel(s)?;
    require_order_coprime_to_3(s)?;
    let mut rep = TheoremReport::new(TheoremTag::Corollary4, &[s]);
    let (a, b) = aut_sets(s, limits, &mut rep)?;
    rep.sides(true, a == b, true);
    Ok(rep)
}

/// `Aut(G, ·) ⊆ Aut(G, ⊙)`, which needs no divisibility hypothesis.
/// Equality is recorded in `details` but not asserted.
pub fn check_aut_containment(s: &Subject, limits: &SearchLimits) -> Result<TheoremReport> {
    require_central_by_2_engel(s)?;
    let mut rep = TheoremReport::new(TheoremTag::AutContainment, &[s]);
    let (a, b) = aut_sets(s, limits, &mut rep)?;
    rep.detail("equal", a == b);
    rep.sides(true, a.is_subset(&b), true);
    Ok(rep)
}

/// Every group homomorphism preserves `⊙` under the same map.
pub fn check_functor(f: &Morphism, s1: &Subject, s2: &Subject) -> Result<TheoremReport> {
    if !is_homomorphism(f, s1.group.table(), s2.group.table())?.holds() {
        return Err(Error::PreconditionFailed("map is not a group homomorphism".into()));
    }
    require_central_by_2_engel(s1)?;
    require_central_by_2_engel(s2)?;
    let mut rep = TheoremReport::new(TheoremTag::Functor, &[s1, s2]);
    let gyro_hom = is_homomorphism(f, &associated_gyro(&s1.group), &associated_gyro(&s2.group))?;
    rep.predicate_witness("gyro_hom", s1.group.table(), &gyro_hom);
    rep.sides(true, gyro_hom.holds(), true);
    Ok(rep)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScreenOptions {
    pub limits: SearchLimits,
    /// Search pairs whose order is divisible by 3 and report without
    /// asserting.
    pub explore: bool,
}

impl Default for ScreenOptions {
    fn default() -> Self {
        ScreenOptions { limits: SearchLimits::default(), explore: true }
    }
}

enum Task<'s> {
    Theorem2(&'s Subject),
    GyrFormula(&'s Subject),
    Corollary4(&'s Subject),
    AutContainment(&'s Subject),
    Theorem3(&'s Subject, &'s Subject),
    Explore(&'s Subject, &'s Subject),
}

impl Task<'_> {
    fn run(&self, limits: &SearchLimits) -> TheoremReport {
        let (tag, subjects, result) = match *self {
            Task::Theorem2(s) => (TheoremTag::Theorem2, vec![s], check_theorem2(s)),
            Task::GyrFormula(s) => (TheoremTag::GyrFormula, vec![s], check_gyr_identity(s)),
            Task::Corollary4(s) => (TheoremTag::Corollary4, vec![s], check_corollary4(s, limits)),
            Task::AutContainment(s) => {
                (TheoremTag::AutContainment, vec![s], check_aut_containment(s, limits))
            }
            Task::Theorem3(a, b) => (TheoremTag::Theorem3, vec![a, b], check_theorem3(a, b, limits)),
            Task::Explore(a, b) => (TheoremTag::Exploration, vec![a, b], explore_isomorphism(a, b, limits)),
        };
        result.unwrap_or_else(|e| {
            TheoremReport::failed(tag, subjects.iter().map(|s| s.name.clone()).collect(), &e)
        })
    }
}

/// Runs every applicable check over `subjects`.
///
/// Output order: per subject the gyrogroup criterion, the gyrocommutativity
/// criterion, the gyration formula and the automorphism check (equality when
/// `3 ∤ |G|`, containment otherwise); then per pair `i < j` of equal order
/// the isomorphism transfer check, or an
/// exploration record when 3 divides the order. Failures are recorded in the
/// reports and never abort the batch. Checks run on the current rayon pool;
/// the output does not depend on its size.
pub fn screen(subjects: &[Subject], options: &ScreenOptions) -> Vec<TheoremReport> {
    let theorem1: Vec<TheoremReport> = subjects.par_iter().map(check_theorem1).collect();
    let eligible: Vec<bool> = theorem1.iter().map(|r| r.predicate == Some(true)).collect();

    let mut per_subject: Vec<Vec<Task>> = Vec::with_capacity(subjects.len());
    for (s, &ok) in subjects.iter().zip(&eligible) {
        let mut tasks = vec![Task::Theorem2(s)];
        if ok {
            tasks.push(Task::GyrFormula(s));
            if s.group.order() % 3 == 0 {
                tasks.push(Task::AutContainment(s));
            } else {
                tasks.push(Task::Corollary4(s));
            }
        }
        per_subject.push(tasks);
    }
    let mut pair_tasks = Vec::new();
    for i in 0..subjects.len() {
        for j in i + 1..subjects.len() {
            let (a, b) = (&subjects[i], &subjects[j]);
            if !(eligible[i] && eligible[j]) || a.group.order() != b.group.order() {
                continue;
            }
            if a.group.order() % 3 != 0 {
                pair_tasks.push(Task::Theorem3(a, b));
            } else if options.explore {
                pair_tasks.push(Task::Explore(a, b));
            }
        }
    }

    let limits = options.limits;
    let subject_reports: Vec<Vec<TheoremReport>> = per_subject
        .par_iter()
        .map(|tasks| tasks.par_iter().map(|t| t.run(&limits)).collect())
        .collect();
    let pair_reports: Vec<TheoremReport> = pair_tasks.par_iter().map(|t| t.run(&limits)).collect();

    let mut out = Vec::new();
    for (t1, rest) in theorem1.into_iter().zip(subject_reports) {
        out.push(t1);
        out.extend(rest);
    }
    out.extend(pair_reports);
    out
}
