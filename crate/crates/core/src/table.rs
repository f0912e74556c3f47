//! Finite binary operations stored as Cayley tables, and permutations of
//! their carriers.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Index of an element in a carrier `{0, .., n-1}`.
pub type ElementId = usize;

/// A finite magma on `{0, .., n-1}`: `table[a * n + b] = a ∘ b`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OpTable {
    n: usize,
    cells: Vec<ElementId>,
    names: Option<Vec<String>>,
}

impl OpTable {
    /// Builds a table from rows, checking that it is square and closed.
    pub fn from_rows(rows: Vec<Vec<ElementId>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::MalformedTable("table must have at least one element".into()));
        }
        let mut cells = Vec::with_capacity(n * n);
        for (a, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(Error::MalformedTable(format!(
                    "row {a} has {} entries, expected {n}",
                    row.len()
                )));
            }
            cells.extend(row);
        }
        Self::from_cells(n, cells)
    }

    /// Builds a table from a flat row-major cell array.
    pub fn from_cells(n: usize, cells: Vec<ElementId>) -> Result<Self> {
        if n == 0 {
            return Err(Error::MalformedTable("table must have at least one element".into()));
        }
        if cells.len() != n * n {
            return Err(Error::MalformedTable(format!(
                "expected {} cells, found {}",
                n * n,
                cells.len()
            )));
        }
        if let Some(pos) = cells.iter().position(|&x| x >= n) {
            return Err(Error::MalformedTable(format!(
                "entry {} at row {}, column {} is out of range for n = {n}",
                cells[pos],
                pos / n,
                pos % n
            )));
        }
        Ok(OpTable { n, cells, names: None })
    }

    /// Builds a table from a closure `a, b -> a ∘ b`.
    pub fn from_fn(n: usize, mut op: impl FnMut(ElementId, ElementId) -> ElementId) -> Result<Self> {
        let mut cells = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                cells.push(op(a, b));
            }
        }
        Self::from_cells(n, cells)
    }

    /// Attaches display names. Names must be non-empty, free of commas and
    /// line breaks, and carry no surrounding whitespace, so that the text
    /// format round-trips them.
    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.n {
            return Err(Error::MalformedTable(format!(
                "{} names given for {} elements",
                names.len(),
                self.n
            )));
        }
        for name in &names {
            if name.is_empty()
                || name.contains([',', '\n', '\r'])
                || name.trim() != name
            {
                return Err(Error::MalformedTable(format!("invalid element name {name:?}")));
            }
        }
        self.names = Some(names);
        Ok(self)
    }

    pub fn without_names(mut self) -> Self {
        self.names = None;
        self
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn op(&self, a: ElementId, b: ElementId) -> ElementId {
        self.cells[a * self.n + b]
    }

    pub fn row(&self, a: ElementId) -> &[ElementId] {
        &self.cells[a * self.n..(a + 1) * self.n]
    }

    pub fn cells(&self) -> &[ElementId] {
        &self.cells
    }

    pub fn rows(&self) -> impl Iterator<Item = &[ElementId]> {
        self.cells.chunks(self.n)
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    /// Display label of an element: its name if present, its index otherwise.
    pub fn label(&self, a: ElementId) -> String {
        match &self.names {
            Some(names) => names[a].clone(),
            None => a.to_string(),
        }
    }

    /// The opposite operation `a ∘' b = b ∘ a`.
    pub fn transpose(&self) -> OpTable {
        let n = self.n;
        let mut cells = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                cells[b * n + a] = self.op(a, b);
            }
        }
        OpTable { n, cells, names: self.names.clone() }
    }

    /// Relabels the carrier along `perm`: the returned table satisfies
    /// `perm(a) ∘' perm(b) = perm(a ∘ b)`, so `perm` is an isomorphism from
    /// `self` onto it.
    pub fn relabel(&self, perm: &Permutation) -> Result<OpTable> {
        if perm.len() != self.n {
            return Err(Error::SizeMismatch(format!(
                "permutation on {} points cannot relabel a table of size {}",
                perm.len(),
                self.n
            )));
        }
        let n = self.n;
        let mut cells = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                cells[perm.apply(a) * n + perm.apply(b)] = perm.apply(self.op(a, b));
            }
        }
        let names = self.names.as_ref().map(|names| {
            let mut out = vec![String::new(); n];
            for (a, name) in names.iter().enumerate() {
                out[perm.apply(a)] = name.clone();
            }
            out
        });
        Ok(OpTable { n, cells, names })
    }

    /// Elements `e` with `e ∘ a = a ∘ e = a` for every `a`.
    pub fn two_sided_identity(&self) -> Option<ElementId> {
        (0..self.n).find(|&e| (0..self.n).all(|a| self.op(e, a) == a && self.op(a, e) == a))
    }

    /// Whether every row and every column is a permutation of the carrier.
    pub fn is_latin_square(&self) -> bool {
        let n = self.n;
        let mut seen = vec![usize::MAX; n];
        for a in 0..n {
            for b in 0..n {
                let x = self.op(a, b);
                if seen[x] == a {
                    return false;
                }
                seen[x] = a;
            }
        }
        seen.fill(usize::MAX);
        for b in 0..n {
            for a in 0..n {
                let x = self.op(a, b);
                if seen[x] == b {
                    return false;
                }
                seen[x] = b;
            }
        }
        true
    }

    pub fn is_associative(&self) -> bool {
        self.associativity_witness().is_none()
    }

    /// Lexicographically least `(a, b, c)` with `(a∘b)∘c != a∘(b∘c)`.
    pub fn associativity_witness(&self) -> Option<(ElementId, ElementId, ElementId)> {
        let n = self.n;
        for a in 0..n {
            for b in 0..n {
                let ab = self.op(a, b);
                for c in 0..n {
                    if self.op(ab, c) != self.op(a, self.op(b, c)) {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.n).all(|a| (a + 1..self.n).all(|b| self.op(a, b) == self.op(b, a)))
    }
}

/// A bijection of `{0, .., m-1}`, stored as its image array.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<ElementId>", into = "Vec<ElementId>")]
pub struct Permutation {
    image: Vec<ElementId>,
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(&self.image, f)
    }
}

impl Permutation {
    pub fn identity(m: usize) -> Self {
        Permutation { image: (0..m).collect() }
    }

    pub fn from_images(image: Vec<ElementId>) -> Result<Self> {
        let m = image.len();
        let mut seen = vec![false; m];
        for &x in &image {
            if x >= m {
                return Err(Error::InvalidPermutation(format!(
                    "image {x} out of range for {m} points"
                )));
            }
            if std::mem::replace(&mut seen[x], true) {
                return Err(Error::InvalidPermutation(format!("image {x} repeated")));
            }
        }
        Ok(Permutation { image })
    }

    /// Callers guarantee bijectivity.
    pub(crate) fn from_images_unchecked(image: Vec<ElementId>) -> Self {
        debug_assert!(Permutation::from_images(image.clone()).is_ok());
        Permutation { image }
    }

    #[inline]
    pub fn apply(&self, x: ElementId) -> ElementId {
        self.image[x]
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    pub fn images(&self) -> &[ElementId] {
        &self.image
    }

    pub fn into_images(self) -> Vec<ElementId> {
        self.image
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.len(), other.len(), "composing permutations of different degree");
        Permutation { image: other.image.iter().map(|&x| self.image[x]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut image = vec![0; self.len()];
        for (i, &x) in self.image.iter().enumerate() {
            image[x] = i;
        }
        Permutation { image }
    }

    /// Cycle notation with fixed points omitted; `()` for the identity.
    pub fn cycle_string(&self) -> String {
        let mut seen = vec![false; self.len()];
        let mut out = String::new();
        for start in 0..self.len() {
            if seen[start] || self.image[start] == start {
                continue;
            }
            out.push('(');
            let mut x = start;
            let mut first = true;
            while !seen[x] {
                seen[x] = true;
                if !first {
                    out.push(' ');
                }
                out.push_str(&x.to_string());
                first = false;
                x = self.image[x];
            }
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }
}

impl TryFrom<Vec<ElementId>> for Permutation {
    type Error = Error;

    fn try_from(image: Vec<ElementId>) -> Result<Self> {
        Permutation::from_images(image)
    }
}

impl From<Permutation> for Vec<ElementId> {
    fn from(p: Permutation) -> Self {
        p.image
    }
}
