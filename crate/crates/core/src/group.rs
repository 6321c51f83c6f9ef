//! Finite groups with two interchangeable backends.
//!
//! Elements are indexed `0..order` with index 0 the identity. Groups built from
//! permutation generators number their elements in breadth-first discovery
//! order (generators applied on the right, in input order), so every index, and
//! therefore every witness, is reproducible.
//!
//! Groups of order at most [`CAYLEY_THRESHOLD`] carry a full multiplication
//! table; larger ones keep only the permutation images plus an index keyed on
//! the full image array.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::perm::Perm;

/// Largest order for which a Cayley table is materialized.
pub const CAYLEY_THRESHOLD: usize = 2048;

/// Default hard cap on closure enumeration.
pub const DEFAULT_CLOSURE_CAP: usize = 2_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("generator {index} is not a bijection of 1..={degree}")]
    NonBijectiveGenerator { index: usize, degree: usize },
    #[error("expected group order {expected}, generators produce {actual}")]
    OrderMismatch { expected: usize, actual: usize },
    #[error("closure exceeded the cap of {cap} elements")]
    ClosureLimitExceeded { cap: usize },
    #[error("element index {index} out of range for a group of order {order}")]
    IndexOutOfRange { index: usize, order: usize },
    #[error("element set is not a subgroup")]
    NotASubgroup,
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("element {0} is not central")]
    NotCentral(usize),
    #[error("operation needs a Cayley-table group")]
    NeedsCayleyTable,
    #[error("group of order {0} exceeds the size cap")]
    SizeCap(usize),
    #[error("bad permutation {0}")]
    BadPermutation(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Backend {
    CayleyTable,
    Permutation,
}

/// Permutation generators on `{1..degree}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorSpec {
    pub degree: usize,
    pub generators: Vec<Perm>,
}

impl GeneratorSpec {
    pub fn new(degree: usize, generators: Vec<Perm>) -> Self {
        GeneratorSpec { degree, generators }
    }

    /// Generators written in cycle notation.
    pub fn from_cycles(degree: usize, cycles: &[&str]) -> Result<Self, GroupError> {
        let generators = cycles
            .iter()
            .map(|c| Perm::parse_cycles(c, degree))
            .collect::<Result<_, _>>()?;
        Ok(GeneratorSpec { degree, generators })
    }

    fn validate(&self) -> Result<(), GroupError> {
        if self.degree == 0 {
            return Err(GroupError::BadPermutation("degree must be at least 1".into()));
        }
        for (index, g) in self.generators.iter().enumerate() {
            if g.degree() != self.degree || Perm::from_images(g.images().to_vec()).is_none() {
                return Err(GroupError::NonBijectiveGenerator {
                    index,
                    degree: self.degree,
                });
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy)]
pub struct ClosureOptions {
    pub cayley_threshold: usize,
    pub cap: usize,
}

impl Default for ClosureOptions {
    fn default() -> Self {
        ClosureOptions {
            cayley_threshold: CAYLEY_THRESHOLD,
            cap: DEFAULT_CLOSURE_CAP,
        }
    }
}

#[derive(Debug, Clone)]
pub(crate) struct PermData {
    degree: usize,
    images: Vec<u32>,
    index: HashMap<Box<[u32]>, u32>,
}

impl PermData {
    pub(crate) fn from_elements(degree: usize, elements: Vec<Vec<u32>>) -> Self {
        let mut images = Vec::with_capacity(elements.len() * degree);
        let mut index = HashMap::with_capacity(elements.len());
        for (i, e) in elements.into_iter().enumerate() {
            images.extend_from_slice(&e);
            index.insert(e.into_boxed_slice(), i as u32);
        }
        PermData { degree, images, index }
    }

    #[inline]
    fn row(&self, g: usize) -> &[u32] {
        &self.images[g * self.degree..(g + 1) * self.degree]
    }

    fn lookup(&self, images: &[u32]) -> Option<usize> {
        self.index.get(images).map(|&i| i as usize)
    }

    fn compose(&self, g: usize, h: usize, buf: &mut Vec<u32>) {
        let (gi, hi) = (self.row(g), self.row(h));
        buf.clear();
        buf.extend(hi.iter().map(|&x| gi[x as usize]));
    }
}

/// A finite group; immutable once built.
#[derive(Debug, Clone)]
pub struct Group {
    order: usize,
    table: Option<Vec<u32>>,
    perms: Option<PermData>,
    inverse: Vec<u32>,
}

/// Result of the upper-central-series computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Nilpotency {
    Class(usize),
    NotNilpotent,
}

impl Group {
    /// Closure of permutation generators under composition.
    pub fn from_generators(spec: &GeneratorSpec, order_hint: Option<usize>) -> Result<Group, GroupError> {
        Self::from_generators_with(spec, order_hint, ClosureOptions::default())
    }

    pub fn from_generators_with(
        spec: &GeneratorSpec,
        order_hint: Option<usize>,
        options: ClosureOptions,
    ) -> Result<Group, GroupError> {
        spec.validate()?;
        let d = spec.degree;
        let gens: Vec<&[u32]> = spec.generators.iter().map(|g| g.images()).collect();
        let mut elements: Vec<u32> = (0..d as u32).collect();
        let mut index: HashMap<Box<[u32]>, u32> = HashMap::new();
        index.insert(elements.clone().into_boxed_slice(), 0);
        // right_mul[k][i] = index of element_i * gen_k
        let mut right_mul: Vec<Vec<u32>> = vec![Vec::new(); gens.len()];
        let mut parent: Vec<(u32, u32)> = vec![(0, 0)];
        let mut buf = vec![0u32; d];
        let mut next = 0usize;
        while next < index.len() {
            for (k, gen) in gens.iter().enumerate() {
                let cur = &elements[next * d..(next + 1) * d];
                for (x, slot) in buf.iter_mut().enumerate() {
                    *slot = cur[gen[x] as usize];
                }
                let id = match index.get(buf.as_slice()) {
                    Some(&id) => id,
                    None => {
                        let id = index.len() as u32;
                        if index.len() >= options.cap {
                            return Err(GroupError::ClosureLimitExceeded { cap: options.cap });
                        }
                        index.insert(buf.clone().into_boxed_slice(), id);
                        elements.extend_from_slice(&buf);
                        parent.push((next as u32, k as u32));
                        id
                    }
                };
                right_mul[k].push(id);
            }
            next += 1;
        }
        let order = index.len();
        if let Some(expected) = order_hint {
            if expected != order {
                return Err(GroupError::OrderMismatch {
                    expected,
                    actual: order,
                });
            }
        }
        let perms = PermData {
            degree: d,
            images: elements,
            index,
        };
        let table = (order <= options.cayley_threshold).then(|| {
            let mut table = vec![0u32; order * order];
            for i in 0..order {
                let row = &mut table[i * order..(i + 1) * order];
                row[0] = i as u32;
                for j in 1..order {
                    let (p, k) = parent[j];
                    row[j] = right_mul[k as usize][row[p as usize] as usize];
                }
            }
            table
        });
        Ok(Self::assemble(order, table, Some(perms)))
    }

    /// Wraps a multiplication table (row-major, `table[g*n+h] = g*h`).
    /// Callers guarantee index 0 is the identity and the table is a group.
    pub(crate) fn from_table(order: usize, table: Vec<u32>) -> Group {
        debug_assert_eq!(table.len(), order * order);
        Self::assemble(order, Some(table), None)
    }

    pub(crate) fn from_parts(order: usize, table: Option<Vec<u32>>, perms: Option<PermData>) -> Group {
        Self::assemble(order, table, perms)
    }

    fn assemble(order: usize, table: Option<Vec<u32>>, perms: Option<PermData>) -> Group {
        let inverse = match (&table, &perms) {
            (Some(t), _) => (0..order)
                .map(|i| {
                    t[i * order..(i + 1) * order]
                        .iter()
                        .position(|&x| x == 0)
                        .expect("every element of a group table has an inverse") as u32
                })
                .collect(),
            (None, Some(p)) => (0..order)
                .map(|i| {
                    let inv = Perm::from_images_unchecked(p.row(i).to_vec()).inverse();
                    p.lookup(inv.images()).expect("inverse lies in the group") as u32
                })
                .collect(),
            (None, None) => unreachable!("a group needs a table or permutations"),
        };
        Group {
            order,
            table,
            perms,
            inverse,
        }
    }

    /// Converts a permutation-only group into one with a Cayley table.
    pub fn to_cayley(&self) -> Result<Group, GroupError> {
        if self.table.is_some() {
            return Ok(self.clone());
        }
        if self.order > CAYLEY_THRESHOLD {
            return Err(GroupError::SizeCap(self.order));
        }
        let p = self.perms.as_ref().expect("permutation backend");
        let n = self.order;
        let mut table = vec![0u32; n * n];
        let mut buf = Vec::with_capacity(p.degree);
        for g in 0..n {
            for h in 0..n {
                p.compose(g, h, &mut buf);
                table[g * n + h] = p.lookup(&buf).expect("closed under products") as u32;
            }
        }
        Ok(Group {
            order: n,
            table: Some(table),
            perms: self.perms.clone(),
            inverse: self.inverse.clone(),
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn backend(&self) -> Backend {
        if self.table.is_some() {
            Backend::CayleyTable
        } else {
            Backend::Permutation
        }
    }

    pub fn identity(&self) -> usize {
        0
    }

    /// Degree of the permutation representation, when one is attached.
    pub fn degree(&self) -> Option<usize> {
        self.perms.as_ref().map(|p| p.degree)
    }

    pub(crate) fn perm_data(&self) -> Option<&PermData> {
        self.perms.as_ref()
    }

    fn check(&self, g: usize) -> Result<(), GroupError> {
        if g < self.order {
            Ok(())
        } else {
            Err(GroupError::IndexOutOfRange {
                index: g,
                order: self.order,
            })
        }
    }

    pub fn multiply(&self, g: usize, h: usize) -> Result<usize, GroupError> {
        self.check(g)?;
        self.check(h)?;
        Ok(self.mul(g, h))
    }

    /// Unchecked product; indices must be valid.
    #[inline]
    pub fn mul(&self, g: usize, h: usize) -> usize {
        if let Some(t) = &self.table {
            return t[g * self.order + h] as usize;
        }
        let p = self.perms.as_ref().expect("permutation backend");
        let mut buf = Vec::with_capacity(p.degree);
        p.compose(g, h, &mut buf);
        p.lookup(&buf).expect("closed under products")
    }

    #[inline]
    pub fn inv(&self, g: usize) -> usize {
        self.inverse[g] as usize
    }

    pub fn inverse(&self, g: usize) -> Result<usize, GroupError> {
        self.check(g)?;
        Ok(self.inv(g))
    }

    pub fn pow(&self, g: usize, mut k: u64) -> usize {
        let mut acc = 0;
        let mut base = g;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    pub fn element_order(&self, g: usize) -> Result<usize, GroupError> {
        self.check(g)?;
        Ok(self.order_of(g))
    }

    pub(crate) fn order_of(&self, g: usize) -> usize {
        let mut k = 1;
        let mut x = g;
        while x != 0 {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    pub fn commutes(&self, g: usize, h: usize) -> Result<bool, GroupError> {
        self.check(g)?;
        self.check(h)?;
        Ok(self.commute(g, h))
    }

    /// Unchecked commutation test. The permutation backend compares the two
    /// compositions point by point and stops at the first difference.
    #[inline]
    pub fn commute(&self, g: usize, h: usize) -> bool {
        if let Some(t) = &self.table {
            let n = self.order;
            return t[g * n + h] == t[h * n + g];
        }
        let p = self.perms.as_ref().expect("permutation backend");
        let (gi, hi) = (p.row(g), p.row(h));
        hi.iter()
            .zip(gi.iter())
            .all(|(&hx, &gx)| gi[hx as usize] == hi[gx as usize])
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|g| (g + 1..self.order).all(|h| self.commute(g, h)))
    }

    pub fn center(&self) -> ElementSet {
        let elems = (0..self.order)
            .filter(|&g| (0..self.order).all(|h| self.commute(g, h)))
            .collect();
        ElementSet::from_sorted_unchecked(self.order, elems)
    }

    pub fn centralizer(&self, g: usize) -> Result<ElementSet, GroupError> {
        self.check(g)?;
        Ok(self.centralizer_of(g))
    }

    pub(crate) fn centralizer_of(&self, g: usize) -> ElementSet {
        let elems = (0..self.order).filter(|&h| self.commute(g, h)).collect();
        ElementSet::from_sorted_unchecked(self.order, elems)
    }

    /// The smallest subgroup containing `seed`.
    pub fn subgroup_closure(&self, seed: &ElementSet) -> Result<ElementSet, GroupError> {
        for &s in seed.as_slice() {
            self.check(s)?;
        }
        Ok(self.closure_of(seed.as_slice()))
    }

    /// Seeds already inside the current subgroup are skipped, so only a
    /// chain of at most `log2 |G|` generators is ever multiplied through.
    pub(crate) fn closure_of(&self, seed: &[usize]) -> ElementSet {
        let mut gens: Vec<usize> = Vec::new();
        let mut member = vec![false; self.order];
        member[0] = true;
        let mut found = vec![0usize];
        for &s in seed {
            if member[s] {
                continue;
            }
            gens.push(s);
            let mut next = 0;
            while next < found.len() {
                let x = found[next];
                for &g in &gens {
                    let y = self.mul(x, g);
                    if !member[y] {
                        member[y] = true;
                        found.push(y);
                    }
                }
                next += 1;
            }
        }
        assert_eq!(
            self.order % found.len(),
            0,
            "subgroup order must divide the group order"
        );
        found.sort_unstable();
        ElementSet::from_sorted_unchecked(self.order, found)
    }

    /// True when the set contains the identity and is closed under products.
    pub fn is_subgroup(&self, set: &ElementSet) -> bool {
        if !set.contains(0) {
            return false;
        }
        let s = set.as_slice();
        s.iter().all(|&a| s.iter().all(|&b| set.contains(self.mul(a, b))))
    }

    pub fn is_normal(&self, set: &ElementSet) -> bool {
        (0..self.order).all(|g| {
            let gi = self.inv(g);
            set.iter().all(|n| set.contains(self.mul(self.mul(g, n), gi)))
        })
    }

    /// The quotient by a normal subgroup, on left cosets. Cosets are ordered by
    /// their least element, which is also the coset representative.
    pub fn quotient(&self, normal: &ElementSet) -> Result<Quotient, GroupError> {
        let table = self.table.as_ref().ok_or(GroupError::NeedsCayleyTable)?;
        if normal.group_order() != self.order || !self.is_subgroup(normal) {
            return Err(GroupError::NotASubgroup);
        }
        if !self.is_normal(normal) {
            return Err(GroupError::NotNormal);
        }
        let n = self.order;
        let mut coset = vec![u32::MAX; n];
        let mut reps = Vec::with_capacity(n / normal.len());
        for g in 0..n {
            if coset[g] != u32::MAX {
                continue;
            }
            let id = reps.len() as u32;
            reps.push(g);
            for k in normal.iter() {
                coset[table[g * n + k] as usize] = id;
            }
        }
        let m = reps.len();
        let mut qt = vec![0u32; m * m];
        for (i, &a) in reps.iter().enumerate() {
            for (j, &b) in reps.iter().enumerate() {
                qt[i * m + j] = coset[table[a * n + b] as usize];
            }
        }
        Ok(Quotient {
            group: Group::from_table(m, qt),
            coset_of: coset,
            representatives: reps,
        })
    }

    /// Upper central series length. `Z_{i+1}` is computed as the preimage of
    /// the centre of `G/Z_i`: the elements whose commutators with every
    /// element of `G` land in `Z_i`.
    pub fn nilpotency_class(&self) -> Nilpotency {
        let n = self.order;
        let mut current = vec![false; n];
        current[0] = true;
        let mut size = 1;
        let mut class = 0;
        while size < n {
            let next: Vec<bool> = (0..n)
                .map(|g| {
                    current[g]
                        || (0..n).all(|x| {
                            let gx = self.mul(g, x);
                            let xg = self.mul(x, g);
                            current[self.mul(gx, self.inv(xg))]
                        })
                })
                .collect();
            let next_size = next.iter().filter(|&&b| b).count();
            if next_size == size {
                return Nilpotency::NotNilpotent;
            }
            current = next;
            size = next_size;
            class += 1;
        }
        Nilpotency::Class(class)
    }

    /// Looks up an element by its permutation, if a permutation
    /// representation is attached.
    pub fn element_of(&self, perm: &Perm) -> Option<usize> {
        let p = self.perms.as_ref()?;
        if perm.degree() != p.degree {
            return None;
        }
        p.lookup(perm.images())
    }

    /// Element given in cycle notation over the attached degree.
    pub fn element_from_cycles(&self, cycles: &str) -> Result<usize, GroupError> {
        let degree = self.degree().ok_or(GroupError::NeedsCayleyTable)?;
        let perm = Perm::parse_cycles(cycles, degree)?;
        self.element_of(&perm)
            .ok_or_else(|| GroupError::BadPermutation(format!("{cycles} is not in the group")))
    }

    pub fn perm_of(&self, g: usize) -> Option<Perm> {
        let p = self.perms.as_ref()?;
        (g < self.order).then(|| Perm::from_images_unchecked(p.row(g).to_vec()))
    }

    /// Human-readable element name: cycle notation when available.
    pub fn label(&self, g: usize) -> String {
        match self.perm_of(g) {
            Some(p) => p.to_cycles(),
            None => format!("g{g}"),
        }
    }

    /// Checks identity, inverse and associativity axioms. Associativity is
    /// exhaustive up to `exhaustive_limit` and sampled otherwise.
    pub fn verify_axioms(&self, exhaustive_limit: usize, samples: usize, seed: u64) -> Result<(), AxiomViolation> {
        let n = self.order;
        for g in 0..n {
            if self.mul(0, g) != g || self.mul(g, 0) != g {
                return Err(AxiomViolation::Identity(g));
            }
            if self.mul(g, self.inv(g)) != 0 || self.mul(self.inv(g), g) != 0 {
                return Err(AxiomViolation::Inverse(g));
            }
        }
        let assoc = |a: usize, b: usize, c: usize| {
            if self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c)) {
                Ok(())
            } else {
                Err(AxiomViolation::Associativity(a, b, c))
            }
        };
        if n <= exhaustive_limit {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        assoc(a, b, c)?;
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..samples {
                assoc(rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n))?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum AxiomViolation {
    #[error("index 0 is not a two-sided identity for {0}")]
    Identity(usize),
    #[error("inverse table wrong for {0}")]
    Inverse(usize),
    #[error("({0}*{1})*{2} != {0}*({1}*{2})")]
    Associativity(usize, usize, usize),
}

/// A quotient group together with the coset map.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub group: Group,
    /// Quotient index of the coset containing each element of the parent.
    pub coset_of: Vec<u32>,
    /// Least element of each coset, in quotient index order.
    pub representatives: Vec<usize>,
}

/// A set of elements of one group, kept sorted and duplicate-free.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ElementSet {
    group_order: usize,
    elements: Vec<usize>,
}

impl ElementSet {
    pub fn new(group_order: usize, mut elements: Vec<usize>) -> Result<Self, GroupError> {
        elements.sort_unstable();
        elements.dedup();
        if let Some(&last) = elements.last() {
            if last >= group_order {
                return Err(GroupError::IndexOutOfRange {
                    index: last,
                    order: group_order,
                });
            }
        }
        Ok(ElementSet { group_order, elements })
    }

    pub(crate) fn from_sorted_unchecked(group_order: usize, elements: Vec<usize>) -> Self {
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        ElementSet { group_order, elements }
    }

    pub fn whole(group_order: usize) -> Self {
        ElementSet {
            group_order,
            elements: (0..group_order).collect(),
        }
    }

    pub fn group_order(&self) -> usize {
        self.group_order
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.elements.binary_search(&g).is_ok()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.elements
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.elements.iter().copied()
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.iter().all(|g| other.contains(g))
    }

    pub fn intersection(&self, other: &ElementSet) -> ElementSet {
        let elems = self.iter().filter(|&g| other.contains(g)).collect();
        ElementSet::from_sorted_unchecked(self.group_order, elems)
    }

    /// Elements of the group not in this set.
    pub fn complement(&self) -> ElementSet {
        let elems = (0..self.group_order).filter(|&g| !self.contains(g)).collect();
        ElementSet::from_sorted_unchecked(self.group_order, elems)
    }
}
