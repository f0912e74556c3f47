//! Backtracking isomorphism and automorphism search over finite magmas.
//!
//! Elements of the domain are assigned in index order with candidate images
//! in increasing order, so the first isomorphism found is the
//! lexicographically least one. Pruning comes from per-element signatures
//! (invariant under relabeling) and from closing every partial map under
//! products: once `a` and `b` are mapped, `a ∘ b` is forced.

use std::collections::HashSet;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::predicates::PredicateResult;
use crate::table::{ElementId, OpTable};

pub const DEFAULT_ISO_MAX_ORDER: usize = 128;
pub const DEFAULT_AUT_MAX_ORDER: usize = 64;

/// A map between carriers, `map[a]` being the image of `a`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Morphism {
    map: Vec<ElementId>,
    codomain_size: usize,
}

impl Morphism {
    pub fn new(map: Vec<ElementId>, codomain_size: usize) -> Result<Self> {
        if let Some(&x) = map.iter().find(|&&x| x >= codomain_size) {
            return Err(Error::SizeMismatch(format!(
                "image {x} outside codomain of size {codomain_size}"
            )));
        }
        Ok(Morphism { map, codomain_size })
    }

    pub fn identity(n: usize) -> Self {
        Morphism { map: (0..n).collect(), codomain_size: n }
    }

    #[inline]
    pub fn apply(&self, a: ElementId) -> ElementId {
        self.map[a]
    }

    pub fn images(&self) -> &[ElementId] {
        &self.map
    }

    pub fn domain_size(&self) -> usize {
        self.map.len()
    }

    pub fn codomain_size(&self) -> usize {
        self.codomain_size
    }

    pub fn is_bijective(&self) -> bool {
        if self.map.len() != self.codomain_size {
            return false;
        }
        let mut seen = vec![false; self.codomain_size];
        self.map.iter().all(|&x| !std::mem::replace(&mut seen[x], true))
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Morphism) -> Result<Morphism> {
        if other.codomain_size != self.domain_size() {
            return Err(Error::SizeMismatch("composition of incompatible morphisms".into()));
        }
        Ok(Morphism {
            map: other.map.iter().map(|&x| self.map[x]).collect(),
            codomain_size: self.codomain_size,
        })
    }

    pub fn inverse(&self) -> Option<Morphism> {
        if !self.is_bijective() {
            return None;
        }
        let mut map = vec![0; self.map.len()];
        for (a, &x) in self.map.iter().enumerate() {
            map[x] = a;
        }
        Some(Morphism { map, codomain_size: self.map.len() })
    }
}

/// `f(a ∘ b) = f(a) ∘ f(b)` for all `a, b`; the witness is the least
/// violating pair.
pub fn is_homomorphism(f: &Morphism, a: &OpTable, b: &OpTable) -> Result<PredicateResult> {
    if f.domain_size() != a.size() || f.codomain_size() != b.size() {
        return Err(Error::SizeMismatch(format!(
            "morphism {} -> {} applied to tables of sizes {} and {}",
            f.domain_size(),
            f.codomain_size(),
            a.size(),
            b.size()
        )));
    }
    let n = a.size();
    for x in 0..n {
        for y in 0..n {
            if f.apply(a.op(x, y)) != b.op(f.apply(x), f.apply(y)) {
                return Ok(PredicateResult::fail(vec![x, y]));
            }
        }
    }
    Ok(PredicateResult::pass())
}

/// Relabeling-invariant data about one element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ElementSignature {
    /// Pre-period of the sequence `a, a∘a, a∘(a∘a), ...`.
    pub power_tail: usize,
    /// Period of the same sequence; the order of `a` in a group.
    pub power_period: usize,
    pub commuting: usize,
    pub left_fixed: usize,
    pub right_fixed: usize,
    pub idempotent: bool,
    pub square_roots: usize,
}

/// Per-element signatures plus their sorted multiset.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Fingerprint {
    pub elements: Vec<ElementSignature>,
    pub multiset: Vec<ElementSignature>,
}

impl Fingerprint {
    pub fn of(t: &OpTable) -> Fingerprint {
        let n = t.size();
        let mut square_roots = vec![0; n];
        for x in 0..n {
            square_roots[t.op(x, x)] += 1;
        }
        let elements: Vec<ElementSignature> = (0..n)
            .map(|a| {
                let (power_tail, power_period) = left_power_cycle(t, a);
                ElementSignature {
                    power_tail,
                    power_period,
                    commuting: (0..n).filter(|&b| t.op(a, b) == t.op(b, a)).count(),
                    left_fixed: (0..n).filter(|&b| t.op(a, b) == b).count(),
                    right_fixed: (0..n).filter(|&b| t.op(b, a) == b).count(),
                    idempotent: t.op(a, a) == a,
                    square_roots: square_roots[a],
                }
            })
            .collect();
        let mut multiset = elements.clone();
        multiset.sort_unstable();
        Fingerprint { elements, multiset }
    }

    /// Whether two tables could be isomorphic as far as signatures tell.
    pub fn compatible(&self, other: &Fingerprint) -> bool {
        self.multiset == other.multiset
    }
}

fn left_power_cycle(t: &OpTable, a: ElementId) -> (usize, usize) {
    let mut first_seen = vec![usize::MAX; t.size()];
    let mut x = a;
    let mut k = 0;
    while first_seen[x] == usize::MAX {
        first_seen[x] = k;
        x = t.op(a, x);
        k += 1;
    }
    (first_seen[x], k - first_seen[x])
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    /// Candidate assignments tried.
    pub nodes: u64,
    /// Candidate assignments rejected by propagation.
    pub prunes: u64,
    /// Wall time; excluded from serialized output so reports stay
    /// reproducible.
    #[serde(skip)]
    pub elapsed: Duration,
}

impl SearchStats {
    pub fn merge(&mut self, other: &SearchStats) {
        self.nodes += other.nodes;
        self.prunes += other.prunes;
        self.elapsed += other.elapsed;
    }
}

/// Order caps for the search; `CapExceeded` is returned above them.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchLimits {
    pub iso_max_order: usize,
    pub aut_max_order: usize,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits { iso_max_order: DEFAULT_ISO_MAX_ORDER, aut_max_order: DEFAULT_AUT_MAX_ORDER }
    }
}

const UNSET: ElementId = usize::MAX;

struct Search<'t> {
    dom: &'t OpTable,
    cod: &'t OpTable,
    dom_sig: Vec<ElementSignature>,
    cod_sig: Vec<ElementSignature>,
    map: Vec<ElementId>,
    used: Vec<bool>,
    assigned: Vec<ElementId>,
    stats: SearchStats,
}

impl<'t> Search<'t> {
    /// `None` when the fingerprints already rule out an isomorphism.
    fn new(dom: &'t OpTable, cod: &'t OpTable) -> Option<Self> {
        if dom.size() != cod.size() {
            return None;
        }
        let fd = Fingerprint::of(dom);
        let fc = Fingerprint::of(cod);
        if !fd.compatible(&fc) {
            return None;
        }
        let n = dom.size();
        Some(Search {
            dom,
            cod,
            dom_sig: fd.elements,
            cod_sig: fc.elements,
            map: vec![UNSET; n],
            used: vec![false; n],
            assigned: Vec::with_capacity(n),
            stats: SearchStats::default(),
        })
    }

    /// Assigns `x ↦ y` and everything it forces. On failure the state is
    /// left dirty; callers roll back with [`Search::undo`].
    fn extend(&mut self, x: ElementId, y: ElementId) -> bool {
        let mut pending = vec![(x, y)];
        while let Some((u, v)) = pending.pop() {
            let current = self.map[u];
            if current != UNSET {
                if current != v {
                    return false;
                }
                continue;
            }
            if self.used[v] || self.dom_sig[u] != self.cod_sig[v] {
                return false;
            }
            self.map[u] = v;
            self.used[v] = true;
            self.assigned.push(u);
            for i in 0..self.assigned.len() {
                let z = self.assigned[i];
                let w = self.map[z];
                pending.push((self.dom.op(u, z), self.cod.op(v, w)));
                pending.push((self.dom.op(z, u), self.cod.op(w, v)));
            }
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        while self.assigned.len() > mark {
            let u = self.assigned.pop().unwrap();
            self.used[self.map[u]] = false;
            self.map[u] = UNSET;
        }
    }

    /// Forces identity ↦ identity when both tables have one. Returns false
    /// when no isomorphism can exist.
    fn seed(&mut self) -> bool {
        match (self.dom.two_sided_identity(), self.cod.two_sided_identity()) {
            (Some(e1), Some(e2)) => self.extend(e1, e2),
            (None, None) => true,
            _ => false,
        }
    }

    /// Depth-first search; `visit` returns false to stop. Returns false if
    /// stopped.
    fn run(&mut self, visit: &mut dyn FnMut(&[ElementId]) -> bool) -> bool {
        let Some(next) = self.map.iter().position(|&x| x == UNSET) else {
            return visit(&self.map);
        };
        let n = self.cod.size();
        for y in 0..n {
            if self.used[y] || self.dom_sig[next] != self.cod_sig[y] {
                continue;
            }
            self.stats.nodes += 1;
            let mark = self.assigned.len();
            if self.extend(next, y) {
                if !self.run(visit) {
                    self.undo(mark);
                    return false;
                }
            } else {
                self.stats.prunes += 1;
            }
            self.undo(mark);
        }
        true
    }
}

fn check_cap(n: usize, cap: usize) -> Result<()> {
    if n > cap {
        Err(Error::CapExceeded { what: "search order", size: n, cap })
    } else {
        Ok(())
    }
}

/// The lexicographically least isomorphism `a → b`, if any.
pub fn find_isomorphism(a: &OpTable, b: &OpTable) -> (Option<Morphism>, SearchStats) {
    let start = Instant::now();
    let mut found = None;
    let mut stats = SearchStats::default();
    if let Some(mut search) = Search::new(a, b) {
        if search.seed() {
            search.run(&mut |map| {
                found = Some(Morphism { map: map.to_vec(), codomain_size: b.size() });
                false
            });
        }
        stats = search.stats;
    }
    stats.elapsed = start.elapsed();
    (found, stats)
}

/// [`find_isomorphism`] refusing tables above `limits.iso_max_order`.
pub fn find_isomorphism_capped(
    a: &OpTable,
    b: &OpTable,
    limits: &SearchLimits,
) -> Result<(Option<Morphism>, SearchStats)> {
    check_cap(a.size().max(b.size()), limits.iso_max_order)?;
    Ok(find_isomorphism(a, b))
}

/// All automorphisms of `a` in lexicographic order.
pub fn enumerate_automorphisms(a: &OpTable) -> (Vec<Morphism>, SearchStats) {
    let start = Instant::now();
    let mut found = Vec::new();
    let mut search = Search::new(a, a).expect("a table is compatible with itself");
    if search.seed() {
        search.run(&mut |map| {
            found.push(Morphism { map: map.to_vec(), codomain_size: a.size() });
            true
        });
    }
    let mut stats = search.stats;
    stats.elapsed = start.elapsed();
    (found, stats)
}

/// [`enumerate_automorphisms`] refusing tables above `limits.aut_max_order`.
pub fn enumerate_automorphisms_capped(
    a: &OpTable,
    limits: &SearchLimits,
) -> Result<(Vec<Morphism>, SearchStats)> {
    check_cap(a.size(), limits.aut_max_order)?;
    Ok(enumerate_automorphisms(a))
}

/// Whether a set of permutations of `{0..n-1}` is closed under composition
/// and inverses and contains the identity.
pub fn forms_group(maps: &[Morphism], n: usize) -> bool {
    let set: HashSet<&[ElementId]> = maps.iter().map(|m| m.images()).collect();
    let id = Morphism::identity(n);
    set.contains(id.images())
        && maps.iter().all(|f| {
            f.is_bijective()
                && f.inverse().is_some_and(|g| set.contains(g.images()))
                && maps.iter().all(|g| f.compose(g).is_ok_and(|fg| set.contains(fg.images())))
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::table::Permutation;

    fn cyclic(n: usize) -> OpTable {
        OpTable::from_fn(n, |a, b| (a + b) % n).unwrap()
    }

    fn klein() -> OpTable {
        OpTable::from_fn(4, |a, b| a ^ b).unwrap()
    }

    #[test]
    fn homomorphism_examples() {
        let z4 = cyclic(4);
        let z2 = cyclic(2);
        assert!(is_homomorphism(&Morphism::identity(4), &z4, &z4).unwrap().holds());
        let quotient = Morphism::new(vec![0, 1, 0, 1], 2).unwrap();
        assert!(is_homomorphism(&quotient, &z4, &z2).unwrap().holds());
        let shift = Morphism::new(vec![1, 2, 3, 0], 4).unwrap();
        let r = is_homomorphism(&shift, &z4, &z4).unwrap();
        assert_eq!(r.witness(), Some(&[0, 0][..]));
        assert!(is_homomorphism(&quotient, &z4, &z4).is_err());
        assert!(Morphism::new(vec![0, 2], 2).is_err());
    }

    #[test]
    fn z4_is_not_klein() {
        let (found, _) = find_isomorphism(&cyclic(4), &klein());
        assert!(found.is_none());
    }

    #[test]
    fn relabeled_z6() {
        let z6 = cyclic(6);
        let p = Permutation::from_images(vec![3, 5, 0, 4, 1, 2]).unwrap();
        let r = z6.relabel(&p).unwrap();
        let (found, stats) = find_isomorphism(&z6, &r);
        let f = found.unwrap();
        assert!(is_homomorphism(&f, &z6, &r).unwrap().holds());
        assert!(stats.nodes > 0);
        // p⁻¹ ∘ f is an automorphism of Z6
        let back = Morphism::new(p.inverse().into_images(), 6).unwrap();
        let aut = back.compose(&f).unwrap();
        assert!(is_homomorphism(&aut, &z6, &z6).unwrap().holds());
        assert!(aut.is_bijective());
    }

    #[test]
    fn lexicographically_least() {
        // automorphisms of Z5: x ↦ kx, least is k = 1
        let z5 = cyclic(5);
        let (found, _) = find_isomorphism(&z5, &z5);
        assert_eq!(found.unwrap().images(), &[0, 1, 2, 3, 4]);
        let (auts, _) = enumerate_automorphisms(&z5);
        let images: Vec<&[usize]> = auts.iter().map(|m| m.images()).collect();
        assert_eq!(images, vec![&[0, 1, 2, 3, 4][..], &[0, 2, 4, 1, 3], &[0, 3, 1, 4, 2], &[0, 4, 3, 2, 1]]);
    }

    #[test]
    fn automorphism_counts() {
        assert_eq!(enumerate_automorphisms(&cyclic(2)).0, vec![Morphism::identity(2)]);
        assert_eq!(enumerate_automorphisms(&cyclic(5)).0.len(), 4);
        let (auts, _) = enumerate_automorphisms(&klein());
        assert_eq!(auts.len(), 6);
        assert!(forms_group(&auts, 4));
    }

    #[test]
    fn magmas_without_identity() {
        // left projection a∘b = a: every bijection is an automorphism
        let proj = OpTable::from_fn(3, |a, _| a).unwrap();
        assert_eq!(enumerate_automorphisms(&proj).0.len(), 6);
        let right = OpTable::from_fn(3, |_, b| b).unwrap();
        assert!(find_isomorphism(&proj, &right).0.is_none());
    }

    #[test]
    fn caps() {
        let limits = SearchLimits { iso_max_order: 4, aut_max_order: 4 };
        assert!(matches!(
            find_isomorphism_capped(&cyclic(5), &cyclic(5), &limits),
            Err(Error::CapExceeded { .. })
        ));
        assert!(enumerate_automorphisms_capped(&cyclic(4), &limits).is_ok());
    }

    #[test]
    fn fingerprint_invariance() {
        let t = OpTable::from_fn(6, |a, b| (a + 2 * b) % 6).unwrap();
        let p = Permutation::from_images(vec![2, 4, 0, 1, 5, 3]).unwrap();
        assert_eq!(Fingerprint::of(&t).multiset, Fingerprint::of(&t.relabel(&p).unwrap()).multiset);
    }
}
