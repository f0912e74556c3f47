//! Finite groups over integer element ids.

use std::collections::{HashMap, VecDeque};

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::table::{ElementId, OpTable, Permutation};

/// A validated finite group. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Group {
    op: OpTable,
    identity: ElementId,
    inverses: Vec<ElementId>,
}

/// Checks the group axioms on `t` and locates the identity and inverses.
///
/// The identity need not be element 0. Identity and inverses are checked
/// before associativity, which is the naive `O(n³)` scan with early exit.
pub fn validate_group(t: OpTable) -> Result<Group> {
    let n = t.size();
    let identity = t.two_sided_identity().ok_or(Error::NoIdentity)?;
    let mut inverses = Vec::with_capacity(n);
    for a in 0..n {
        let inv = (0..n)
            .find(|&x| t.op(x, a) == identity && t.op(a, x) == identity)
            .ok_or(Error::NoInverse(a))?;
        inverses.push(inv);
    }
    if let Some((a, b, c)) = t.associativity_witness() {
        return Err(Error::NotAssociative { a, b, c });
    }
    if !t.is_latin_square() {
        // unreachable for a genuine group
        return Err(Error::MalformedTable("group table is not a Latin square".into()));
    }
    Ok(Group { op: t, identity, inverses })
}

impl Group {
    #[inline]
    pub fn order(&self) -> usize {
        self.op.size()
    }

    #[inline]
    pub fn identity(&self) -> ElementId {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: ElementId, b: ElementId) -> ElementId {
        self.op.op(a, b)
    }

    #[inline]
    pub fn inv(&self, a: ElementId) -> ElementId {
        self.inverses[a]
    }

    pub fn inverses(&self) -> &[ElementId] {
        &self.inverses
    }

    pub fn table(&self) -> &OpTable {
        &self.op
    }

    pub fn into_table(self) -> OpTable {
        self.op
    }

    pub fn elements(&self) -> std::ops::Range<ElementId> {
        0..self.order()
    }

    pub fn label(&self, a: ElementId) -> String {
        self.op.label(a)
    }

    pub fn is_abelian(&self) -> bool {
        self.op.is_commutative()
    }

    /// Product of a sequence of elements, left to right.
    pub fn product(&self, xs: &[ElementId]) -> ElementId {
        xs.iter().fold(self.identity, |acc, &x| self.mul(acc, x))
    }

    /// The same group with elements renamed along `perm`.
    pub fn relabel(&self, perm: &Permutation) -> Result<Group> {
        let op = self.op.relabel(perm)?;
        let mut inverses = vec![0; self.order()];
        for a in self.elements() {
            inverses[perm.apply(a)] = perm.apply(self.inv(a));
        }
        Ok(Group { op, identity: perm.apply(self.identity), inverses })
    }

    pub fn is_central(&self, z: ElementId) -> bool {
        self.elements().all(|a| self.mul(z, a) == self.mul(a, z))
    }

    /// `Z(G)` in increasing id order.
    pub fn center(&self) -> Vec<ElementId> {
        self.elements().filter(|&z| self.is_central(z)).collect()
    }

    /// Membership mask of the center, indexed by element id.
    pub fn center_mask(&self) -> Vec<bool> {
        self.elements().map(|z| self.is_central(z)).collect()
    }

    /// `[a, b] = a·b·a⁻¹·b⁻¹`.
    pub fn commutator(&self, a: ElementId, b: ElementId) -> ElementId {
        self.product(&[a, b, self.inv(a), self.inv(b)])
    }

    pub fn element_order(&self, a: ElementId) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// `a^k` for any integer `k`, by repeated squaring.
    pub fn power(&self, a: ElementId, k: i64) -> ElementId {
        let mut base = if k < 0 { self.inv(a) } else { a };
        let mut e = k.unsigned_abs();
        let mut acc = self.identity;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// `φ_g : c ↦ g·c·g⁻¹`.
    pub fn conjugation_aut(&self, g: ElementId) -> Permutation {
        let g_inv = self.inv(g);
        Permutation::from_images_unchecked(
            self.elements().map(|c| self.mul(self.mul(g, c), g_inv)).collect(),
        )
    }

    /// `Inn(G)` as a group of order `|G| / |Z(G)|`.
    ///
    /// Element 0 is the identity automorphism; the others follow in increasing
    /// order of the least inducing element. Names are `conj(g)`.
    pub fn inner_group(&self) -> Group {
        let mut perms: Vec<Permutation> = vec![Permutation::identity(self.order())];
        let mut inducers = vec![self.identity];
        let mut index: HashMap<Permutation, ElementId> = HashMap::new();
        index.insert(perms[0].clone(), 0);
        // the element inducing each discovered permutation, per group element
        let mut class_of = vec![0; self.order()];
        for g in self.elements() {
            let phi = self.conjugation_aut(g);
            let id = *index.entry(phi.clone()).or_insert_with(|| {
                perms.push(phi);
                inducers.push(g);
                perms.len() - 1
            });
            class_of[g] = id;
        }
        // φ_g ∘ φ_h = φ_{gh}
        let m = perms.len();
        let table = OpTable::from_fn(m, |i, j| class_of[self.mul(inducers[i], inducers[j])])
            .expect("inner automorphism table is closed");
        let names = inducers.iter().map(|&g| format!("conj({})", self.label(g))).collect();
        let table = table.with_names(names).expect("labels of a valid table compose into valid names");
        let inverses = inducers.iter().map(|&g| class_of[self.inv(g)]).collect();
        Group { op: table, identity: 0, inverses }
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> usize {
        self.elements().map(|a| self.element_order(a)).fold(1, |acc, o| acc.lcm(&o))
    }

    /// Whether `f` is a group homomorphism from `self` to `other`.
    pub fn is_homomorphism_to(&self, other: &Group, f: &[ElementId]) -> bool {
        f.len() == self.order()
            && f.iter().all(|&x| x < other.order())
            && self.elements().all(|a| {
                self.elements().all(|b| f[self.mul(a, b)] == other.mul(f[a], f[b]))
            })
    }
}

/// Materializes the subgroup of `Sym(m)` generated by `gens`.
///
/// Elements are numbered in breadth-first discovery order from the identity,
/// with each discovered element `x` extended by `x·g` for the generators `g`
/// in the given order (product `(x·g)(i) = x(g(i))`). Names are cycle
/// notation. An empty generator list yields the trivial group.
pub fn closure_from_permutations(gens: &[Permutation], cap: usize) -> Result<Group> {
    if cap == 0 {
        return Err(Error::PreconditionFailed("closure cap must be at least 1".into()));
    }
    let m = gens.first().map_or(0, Permutation::len);
    if let Some(g) = gens.iter().find(|g| g.len() != m) {
        return Err(Error::InvalidPermutation(format!(
            "generators act on different point counts ({m} and {})",
            g.len()
        )));
    }
    let mut elems = vec![Permutation::identity(m)];
    let mut index: HashMap<Permutation, ElementId> = HashMap::new();
    index.insert(elems[0].clone(), 0);
    let mut queue = VecDeque::from([0]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = elems[x].compose(g);
            if !index.contains_key(&y) {
                if elems.len() == cap {
                    return Err(Error::CapExceeded { what: "closure", size: elems.len() + 1, cap });
                }
                index.insert(y.clone(), elems.len());
                queue.push_back(elems.len());
                elems.push(y);
            }
        }
    }
    let n = elems.len();
    let table = OpTable::from_fn(n, |a, b| index[&elems[a].compose(&elems[b])])?;
    let names = elems.iter().map(|p| if p.is_identity() { "e".to_string() } else { p.cycle_string() });
    validate_group(table.with_names(names.collect())?)
}
