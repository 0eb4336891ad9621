//! Concrete finite groups given by generating permutations.
//!
//! Elements are enumerated breadth-first from the identity, so identifiers
//! follow shortlex order of their words in the generators and the identity is
//! always `0`. The enumeration also records the right Cayley graph, which
//! turns multiplication into a walk along the word of the right factor.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::sync::OnceLock;

use thiserror::Error;

use crate::enumerate::EnumerationError;
use crate::perm::Permutation;
use crate::words::{Letter, Word};

pub type ElemId = u32;
pub type ElementSet = BTreeSet<ElemId>;

pub const IDENTITY: ElemId = 0;
pub const DEFAULT_ELEMENT_CEILING: usize = 1 << 14;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("group has more than {ceiling} elements (element ceiling)")]
    ElementCeiling { ceiling: usize },
    #[error("subgroups belong to different parent groups")]
    ParentMismatch,
    #[error("group of order {order} is not a 2-group")]
    NotA2Group { order: usize },
    #[error("generator permutations must share one degree")]
    DegreeMismatch,
    #[error(transparent)]
    Enumeration(#[from] EnumerationError),
}

enum KeyIndex {
    Point(Vec<u32>),
    Images(HashMap<Vec<u32>, ElemId>),
}

struct ElementTable {
    /// Generator indices of the shortlex word of each element.
    word_letters: Vec<u16>,
    word_start: Vec<u32>,
    /// `right[e * gens + k]` is `e * g_k`.
    right: Vec<ElemId>,
    /// `right_inv[e * gens + k]` is `e * g_k^-1`.
    right_inv: Vec<ElemId>,
    index: KeyIndex,
}

impl ElementTable {
    fn len(&self) -> usize {
        self.word_start.len()
    }

    fn word(&self, id: ElemId) -> &[u16] {
        let start = self.word_start[id as usize] as usize;
        let end = self
            .word_start
            .get(id as usize + 1)
            .map(|&e| e as usize)
            .unwrap_or(self.word_letters.len());
        &self.word_letters[start..end]
    }
}

/// A permutation group with lazily enumerated elements.
pub struct PermGroup {
    degree: usize,
    names: Vec<String>,
    generators: Vec<Permutation>,
    /// Points whose images determine an element.
    base: Vec<u32>,
    ceiling: usize,
    table: OnceLock<ElementTable>,
}

impl std::fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PermGroup")
            .field("degree", &self.degree)
            .field("generators", &self.names)
            .field("order", &self.table.get().map(|t| t.len()))
            .finish()
    }
}

impl PermGroup {
    /// A group acting on `degree` points. Elements are identified by their
    /// full image vectors.
    pub fn new(
        degree: usize,
        names: Vec<String>,
        generators: Vec<Permutation>,
        ceiling: usize,
    ) -> Result<Self, GroupError> {
        let base = (0..degree as u32).collect();
        Self::with_base(degree, names, generators, base, ceiling)
    }

    /// A group known to act regularly, so the image of point 0 identifies an
    /// element. Used for regular representations from coset tables.
    pub fn regular(
        degree: usize,
        names: Vec<String>,
        generators: Vec<Permutation>,
        ceiling: usize,
    ) -> Result<Self, GroupError> {
        if degree > ceiling {
            return Err(GroupError::ElementCeiling { ceiling });
        }
        Self::with_base(degree, names, generators, vec![0], ceiling)
    }

    fn with_base(
        degree: usize,
        mut names: Vec<String>,
        generators: Vec<Permutation>,
        base: Vec<u32>,
        ceiling: usize,
    ) -> Result<Self, GroupError> {
        if generators.iter().any(|g| g.degree() != degree) || degree == 0 {
            return Err(GroupError::DegreeMismatch);
        }
        for i in names.len()..generators.len() {
            names.push(format!("g{i}"));
        }
        names.truncate(generators.len());
        Ok(PermGroup {
            degree,
            names,
            generators,
            base,
            ceiling,
            table: OnceLock::new(),
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generator_names(&self) -> &[String] {
        &self.names
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    pub fn ceiling(&self) -> usize {
        self.ceiling
    }

    fn key(&self, perm_images: impl Fn(u32) -> u32) -> Vec<u32> {
        self.base.iter().map(|&b| perm_images(b)).collect()
    }

    fn build_table(&self) -> Result<ElementTable, GroupError> {
        let gens = self.generators.len();
        let base_len = self.base.len();
        let mut keys: Vec<u32> = self.base.clone();
        let mut index = if base_len == 1 {
            let mut v = vec![u32::MAX; self.degree];
            v[self.base[0] as usize] = IDENTITY;
            KeyIndex::Point(v)
        } else {
            let mut m = HashMap::new();
            m.insert(self.base.clone(), IDENTITY);
            KeyIndex::Images(m)
        };
        let mut word_letters: Vec<u16> = Vec::new();
        let mut word_start: Vec<u32> = vec![0];
        let mut right: Vec<ElemId> = Vec::new();
        let mut queue = VecDeque::from([IDENTITY]);
        let mut count = 1usize;
        let mut next_key = vec![0u32; base_len];
        while let Some(e) = queue.pop_front() {
            for (k, g) in self.generators.iter().enumerate() {
                let cur = &keys[e as usize * base_len..(e as usize + 1) * base_len];
                for (slot, &p) in next_key.iter_mut().zip(cur) {
                    *slot = g.apply(p);
                }
                let found = match &index {
                    KeyIndex::Point(v) => {
                        let id = v[next_key[0] as usize];
                        (id != u32::MAX).then_some(id)
                    }
                    KeyIndex::Images(m) => m.get(&next_key).copied(),
                };
                let id = match found {
                    Some(id) => id,
                    None => {
                        if count >= self.ceiling {
                            return Err(GroupError::ElementCeiling {
                                ceiling: self.ceiling,
                            });
                        }
                        let id = count as ElemId;
                        count += 1;
                        match &mut index {
                            KeyIndex::Point(v) => v[next_key[0] as usize] = id,
                            KeyIndex::Images(m) => {
                                m.insert(next_key.clone(), id);
                            }
                        }
                        keys.extend_from_slice(&next_key);
                        let start = word_start[e as usize] as usize;
                        let end = word_start
                            .get(e as usize + 1)
                            .map(|&x| x as usize)
                            .unwrap_or(word_letters.len());
                        // parent words are complete before children are created
                        let parent: Vec<u16> = word_letters[start..end].to_vec();
                        word_start.push(word_letters.len() as u32);
                        word_letters.extend(parent);
                        word_letters.push(k as u16);
                        queue.push_back(id);
                        id
                    }
                };
                right.push(id);
            }
        }
        debug_assert_eq!(word_start.len(), count);
        let mut right_inv = vec![u32::MAX; right.len()];
        for e in 0..count {
            for k in 0..gens {
                let target = right[e * gens + k] as usize;
                right_inv[target * gens + k] = e as ElemId;
            }
        }
        Ok(ElementTable {
            word_letters,
            word_start,
            right,
            right_inv,
            index,
        })
    }

    fn table(&self) -> &ElementTable {
        self.table
            .get()
            .expect("element table requested before enumerate()")
    }

    /// Enumerates all elements (once). Fails if the group is larger than the
    /// element ceiling.
    pub fn enumerate(&self) -> Result<usize, GroupError> {
        if let Some(t) = self.table.get() {
            return Ok(t.len());
        }
        let built = self.build_table()?;
        Ok(self.table.get_or_init(|| built).len())
    }

    /// Group order; requires [`PermGroup::enumerate`] to have succeeded.
    pub fn order(&self) -> usize {
        self.table().len()
    }

    pub fn elements(&self) -> impl Iterator<Item = ElemId> {
        0..self.order() as ElemId
    }

    pub fn generator(&self, k: usize) -> ElemId {
        self.table().right[k]
    }

    pub fn generator_ids(&self) -> Vec<ElemId> {
        (0..self.generator_count())
            .map(|k| self.generator(k))
            .collect()
    }

    pub fn mul_gen(&self, e: ElemId, k: usize) -> ElemId {
        self.table().right[e as usize * self.generators.len() + k]
    }

    pub fn mul_letter(&self, e: ElemId, letter: Letter) -> ElemId {
        let t = self.table();
        let slot = e as usize * self.generators.len() + letter.generator();
        if letter.is_inverse() {
            t.right_inv[slot]
        } else {
            t.right[slot]
        }
    }

    pub fn mul(&self, a: ElemId, b: ElemId) -> ElemId {
        let t = self.table();
        let gens = self.generators.len();
        t.word(b)
            .iter()
            .fold(a, |x, &k| t.right[x as usize * gens + k as usize])
    }

    pub fn inverse(&self, a: ElemId) -> ElemId {
        let t = self.table();
        let gens = self.generators.len();
        t.word(a).iter().rev().fold(IDENTITY, |x, &k| {
            t.right_inv[x as usize * gens + k as usize]
        })
    }

    pub fn pow(&self, a: ElemId, e: i64) -> ElemId {
        let base = if e < 0 { self.inverse(a) } else { a };
        (0..e.unsigned_abs()).fold(IDENTITY, |x, _| self.mul(x, base))
    }

    /// `b^-1 a b`.
    pub fn conjugate(&self, a: ElemId, b: ElemId) -> ElemId {
        self.mul(self.mul(self.inverse(b), a), b)
    }

    /// `a^-1 b^-1 a b`.
    pub fn commutator(&self, a: ElemId, b: ElemId) -> ElemId {
        let ab = self.mul(a, b);
        let ba = self.mul(b, a);
        self.mul(self.inverse(ba), ab)
    }

    pub fn element_order(&self, a: ElemId) -> u64 {
        let mut x = a;
        let mut k = 1;
        while x != IDENTITY {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Evaluates a word in the group's generators.
    pub fn evaluate(&self, word: &Word) -> ElemId {
        word.letters()
            .iter()
            .fold(IDENTITY, |x, &l| self.mul_letter(x, l))
    }

    /// Shortlex-least word for `a` in the group's generators.
    pub fn word_of(&self, a: ElemId) -> Word {
        Word::from_gens(
            &self
                .table()
                .word(a)
                .iter()
                .map(|&k| k as usize)
                .collect::<Vec<_>>(),
        )
    }

    pub fn render(&self, a: ElemId) -> String {
        self.word_of(a).render(&self.names)
    }

    pub fn permutation_of(&self, a: ElemId) -> Permutation {
        self.table()
            .word(a)
            .iter()
            .fold(Permutation::identity(self.degree), |p, &k| {
                p.compose(&self.generators[k as usize])
            })
    }

    /// Identifier of a permutation, if it lies in the group.
    pub fn id_of(&self, p: &Permutation) -> Option<ElemId> {
        if p.degree() != self.degree {
            return None;
        }
        let key = self.key(|b| p.apply(b));
        let id = match &self.table().index {
            KeyIndex::Point(v) => {
                let id = v[key[0] as usize];
                (id != u32::MAX).then_some(id)?
            }
            KeyIndex::Images(m) => *m.get(&key)?,
        };
        // the base only pins down elements of this group; confirm membership
        (self.permutation_of(id) == *p).then_some(id)
    }

    pub fn whole(&self) -> Subgroup<'_> {
        closure(self, &self.generator_ids())
    }

    pub fn trivial(&self) -> Subgroup<'_> {
        closure(self, &[])
    }

    /// `|G|` is a power of two. By Cauchy this is the same as every element
    /// order being a power of two.
    pub fn is_2_group(&self) -> bool {
        self.order().is_power_of_two()
    }

    /// Greedily drops generators (last first) while the rest still generate
    /// the whole group.
    pub fn greedy_minimal_generating_subset(&self, gens: &[ElemId]) -> Vec<ElemId> {
        let target = self.order();
        let mut current: Vec<ElemId> = gens.to_vec();
        let mut i = current.len();
        while i > 0 {
            i -= 1;
            let mut trial = current.clone();
            trial.remove(i);
            if closure(self, &trial).order() == target {
                current = trial;
            }
        }
        current
    }
}

/// A subgroup of a [`PermGroup`], with its member set materialized.
#[derive(Clone)]
pub struct Subgroup<'g> {
    parent: &'g PermGroup,
    members: Vec<ElemId>,
    mask: Vec<bool>,
    generators: Vec<ElemId>,
}

impl std::fmt::Debug for Subgroup<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Subgroup")
            .field("order", &self.members.len())
            .field("generators", &self.generators)
            .finish()
    }
}

impl PartialEq for Subgroup<'_> {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.parent, other.parent) && self.mask == other.mask
    }
}

impl<'g> Subgroup<'g> {
    pub fn parent(&self) -> &'g PermGroup {
        self.parent
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    /// Members in closure order.
    pub fn members(&self) -> &[ElemId] {
        &self.members
    }

    pub fn generators(&self) -> &[ElemId] {
        &self.generators
    }

    pub fn contains(&self, e: ElemId) -> bool {
        self.mask[e as usize]
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn member_set(&self) -> ElementSet {
        self.members.iter().copied().collect()
    }

    pub fn is_subset_of(&self, other: &Subgroup<'_>) -> bool {
        self.members.iter().all(|&m| other.contains(m))
    }

    /// The set `g^-1 S g`.
    pub fn conjugate_set(&self, g: ElemId) -> ElementSet {
        self.members
            .iter()
            .map(|&m| self.parent.conjugate(m, g))
            .collect()
    }
}

fn same_parent(a: &Subgroup<'_>, b: &Subgroup<'_>) -> Result<(), GroupError> {
    if std::ptr::eq(a.parent, b.parent) {
        Ok(())
    } else {
        Err(GroupError::ParentMismatch)
    }
}

/// The subgroup generated by `gens`, by breadth-first product closure. Only
/// generators that enlarge the current subgroup are kept.
pub fn closure<'g>(parent: &'g PermGroup, gens: &[ElemId]) -> Subgroup<'g> {
    let order = parent.order();
    let mut mask = vec![false; order];
    mask[IDENTITY as usize] = true;
    let mut members = vec![IDENTITY];
    let mut effective: Vec<ElemId> = Vec::new();
    for &g in gens {
        if mask[g as usize] {
            continue;
        }
        effective.push(g);
        let old = members.len();
        for i in 0..old {
            let x = parent.mul(members[i], g);
            if !mask[x as usize] {
                mask[x as usize] = true;
                members.push(x);
            }
        }
        let mut i = old;
        while i < members.len() {
            let m = members[i];
            for &h in &effective {
                let x = parent.mul(m, h);
                if !mask[x as usize] {
                    mask[x as usize] = true;
                    members.push(x);
                }
            }
            i += 1;
        }
        assert!(
            order.is_multiple_of(members.len()),
            "subgroup order {} does not divide {order}",
            members.len()
        );
    }
    Subgroup {
        parent,
        members,
        mask,
        generators: gens.to_vec(),
    }
}

pub fn subgroup_intersection<'g>(
    a: &Subgroup<'g>,
    b: &Subgroup<'g>,
) -> Result<Subgroup<'g>, GroupError> {
    same_parent(a, b)?;
    let mut mask = vec![false; a.mask.len()];
    let members: Vec<ElemId> = a
        .members
        .iter()
        .copied()
        .filter(|&m| b.contains(m))
        .collect();
    for &m in &members {
        mask[m as usize] = true;
    }
    Ok(Subgroup {
        parent: a.parent,
        generators: members.clone(),
        members,
        mask,
    })
}

/// `s^g ∈ S` for every generator `s` of `S` and every generator `g` of the parent.
pub fn is_normal(s: &Subgroup<'_>) -> bool {
    let parent = s.parent;
    s.generators.iter().all(|&x| {
        parent
            .generator_ids()
            .into_iter()
            .all(|g| s.contains(parent.conjugate(x, g)))
    })
}

/// Every generator of `a` commutes with every generator of `b`.
pub fn commute_check(a: &Subgroup<'_>, b: &Subgroup<'_>) -> Result<bool, GroupError> {
    same_parent(a, b)?;
    let g = a.parent;
    Ok(a.generators
        .iter()
        .all(|&x| b.generators.iter().all(|&y| g.mul(x, y) == g.mul(y, x))))
}

/// `{xy : x ∈ a, y ∈ b}`.
pub fn product_set(a: &Subgroup<'_>, b: &Subgroup<'_>) -> Result<ElementSet, GroupError> {
    same_parent(a, b)?;
    let g = a.parent;
    Ok(a.members
        .iter()
        .flat_map(|&x| b.members.iter().map(move |&y| g.mul(x, y)))
        .collect())
}

/// Frattini subgroup (generated by squares, valid for 2-groups) and the rank
/// `log2 |G : Φ(G)|`.
pub fn frattini_rank(g: &PermGroup) -> Result<(Subgroup<'_>, u32), GroupError> {
    if !g.is_2_group() {
        return Err(GroupError::NotA2Group { order: g.order() });
    }
    let squares: Vec<ElemId> = g.elements().map(|x| g.mul(x, x)).collect();
    let phi = closure(g, &squares);
    let index = g.order() / phi.order();
    Ok((phi, index.trailing_zeros()))
}

/// The parts pairwise commute, each meets the product of the others
/// trivially, and the product set has size `∏ |parts|`.
pub fn direct_product_witness(parts: &[Subgroup<'_>]) -> Result<bool, GroupError> {
    let Some(first) = parts.first() else {
        return Ok(true);
    };
    for p in parts {
        same_parent(first, p)?;
    }
    let g = first.parent;
    for (i, a) in parts.iter().enumerate() {
        for b in &parts[i + 1..] {
            if !commute_check(a, b)? {
                return Ok(false);
            }
        }
    }
    for (i, a) in parts.iter().enumerate() {
        let others: Vec<ElemId> = parts
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .flat_map(|(_, p)| p.generators.iter().copied())
            .collect();
        let rest = closure(g, &others);
        if !subgroup_intersection(a, &rest)?.is_trivial() {
            return Ok(false);
        }
    }
    let mut product: ElementSet = [IDENTITY].into_iter().collect();
    for p in parts {
        product = product
            .iter()
            .flat_map(|&x| p.members.iter().map(move |&y| g.mul(x, y)))
            .collect();
    }
    let expected: usize = parts.iter().map(Subgroup::order).product();
    Ok(product.len() == expected)
}
