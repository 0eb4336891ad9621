//! Groups with distinguished involutions: intersection property, string
//! property, Tits conditions and the quotient criterion.

use std::collections::VecDeque;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::enumerate::regular_representation;
use crate::group::{
    closure, product_set, subgroup_intersection, ElemId, ElementSet, GroupError, PermGroup,
    Subgroup, IDENTITY,
};
use crate::presentation::Presentation;
use crate::words::Word;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CGroupError {
    #[error("distinguished generator {index} has order {order}, not 2")]
    NotInvolution { index: usize, order: u64 },
    #[error(
        "distinguished generators generate a subgroup of order {got}, group has order {order}"
    )]
    DoesNotGenerate { got: usize, order: usize },
    #[error("operation needs rank {expected}, got rank {got}")]
    Rank { expected: &'static str, got: usize },
    #[error("Tits conditions (1) and (2) disagree: (1) {first}, (2) {second}")]
    TitsDisagreement { first: bool, second: bool },
    #[error("relator {relator} does not map to the identity")]
    NotAHomomorphism { relator: String },
    #[error("{0} images given for {1} generators")]
    ImageCount(usize, usize),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// A finite group together with an ordered list of generating involutions.
pub struct GeneratedGroup {
    group: PermGroup,
    involutions: Vec<ElemId>,
    names: Vec<String>,
    words: OnceLock<Vec<Word>>,
}

impl std::fmt::Debug for GeneratedGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GeneratedGroup")
            .field("order", &self.group.order())
            .field("involutions", &self.involutions)
            .finish()
    }
}

impl GeneratedGroup {
    /// Checks that every distinguished element has order exactly 2 and that
    /// together they generate `group`.
    pub fn new(group: PermGroup, involutions: Vec<ElemId>) -> Result<Self, CGroupError> {
        group.enumerate()?;
        for (index, &x) in involutions.iter().enumerate() {
            let order = group.element_order(x);
            if order != 2 {
                return Err(CGroupError::NotInvolution { index, order });
            }
        }
        let got = closure(&group, &involutions).order();
        if got != group.order() {
            return Err(CGroupError::DoesNotGenerate {
                got,
                order: group.order(),
            });
        }
        let names = if involutions == group.generator_ids() {
            group.generator_names().to_vec()
        } else {
            (0..involutions.len()).map(|i| format!("r{i}")).collect()
        };
        Ok(GeneratedGroup {
            group,
            involutions,
            names,
            words: OnceLock::new(),
        })
    }

    /// The regular representation of `p`, distinguished generators being the
    /// presentation's generators.
    pub fn from_presentation(
        p: &Presentation,
        capacity: usize,
        ceiling: usize,
    ) -> Result<Self, CGroupError> {
        let group = regular_representation(p, capacity, ceiling)?;
        let gens = group.generator_ids();
        GeneratedGroup::new(group, gens)
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn involutions(&self) -> &[ElemId] {
        &self.involutions
    }

    pub fn rho(&self, i: usize) -> ElemId {
        self.involutions[i]
    }

    pub fn rank(&self) -> usize {
        self.involutions.len()
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// `ρ_{i1} ρ_{i2} ...`.
    pub fn product(&self, indices: &[usize]) -> ElemId {
        indices
            .iter()
            .fold(IDENTITY, |x, &i| self.group.mul(x, self.involutions[i]))
    }

    /// Evaluates a word whose letters index the distinguished generators.
    pub fn evaluate(&self, word: &Word) -> ElemId {
        word.letters().iter().fold(IDENTITY, |x, l| {
            let r = self.involutions[l.generator()];
            let r = if l.is_inverse() {
                self.group.inverse(r)
            } else {
                r
            };
            self.group.mul(x, r)
        })
    }

    /// `G_I = ⟨ρ_i : i ∈ I⟩`.
    pub fn sub(&self, indices: &[usize]) -> Subgroup<'_> {
        let gens: Vec<ElemId> = indices.iter().map(|&i| self.involutions[i]).collect();
        closure(&self.group, &gens)
    }

    /// `G_i = ⟨ρ_j : j ≠ i⟩`.
    pub fn maximal_parabolic(&self, i: usize) -> Subgroup<'_> {
        let others: Vec<usize> = (0..self.rank()).filter(|&j| j != i).collect();
        self.sub(&others)
    }

    fn shortest_words(&self) -> &[Word] {
        self.words.get_or_init(|| {
            let g = &self.group;
            let mut words: Vec<Option<Word>> = vec![None; g.order()];
            words[IDENTITY as usize] = Some(Word::empty());
            let mut queue = VecDeque::from([IDENTITY]);
            while let Some(x) = queue.pop_front() {
                for (i, &r) in self.involutions.iter().enumerate() {
                    let y = g.mul(x, r);
                    if words[y as usize].is_none() {
                        let mut w = words[x as usize].clone().unwrap_or_default();
                        w = Word::from_letters(
                            w.letters()
                                .iter()
                                .copied()
                                .chain(Word::from_gens(&[i]).letters().iter().copied())
                                .collect(),
                        );
                        words[y as usize] = Some(w);
                        queue.push_back(y);
                    }
                }
            }
            words.into_iter().map(Option::unwrap_or_default).collect()
        })
    }

    /// Shortlex-least word for `x` in the distinguished generators.
    pub fn word_of(&self, x: ElemId) -> Word {
        if self.involutions == self.group.generator_ids() {
            self.group.word_of(x)
        } else {
            self.shortest_words()[x as usize].clone()
        }
    }

    pub fn render(&self, x: ElemId) -> String {
        self.word_of(x).render(&self.names)
    }

    pub fn render_set(&self, set: &ElementSet) -> Vec<String> {
        let mut words: Vec<(Word, ElemId)> = set.iter().map(|&x| (self.word_of(x), x)).collect();
        words.sort_by(|a, b| {
            a.0.len()
                .cmp(&b.0.len())
                .then_with(|| a.0.letters().cmp(b.0.letters()))
        });
        words
            .into_iter()
            .map(|(w, _)| w.render(&self.names))
            .collect()
    }

    /// An element of `set` with the shortest word, for witness reporting.
    pub fn shortest_in<'a>(&self, set: impl IntoIterator<Item = &'a ElemId>) -> Option<ElemId> {
        set.into_iter().copied().min_by(|&a, &b| {
            let (wa, wb) = (self.word_of(a), self.word_of(b));
            wa.len()
                .cmp(&wb.len())
                .then_with(|| wa.letters().cmp(wb.letters()))
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntersectionFailure {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
    pub witness: ElemId,
    pub witness_word: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CGroupReport {
    pub is_c_group: bool,
    pub failures: Vec<IntersectionFailure>,
    /// `(i, j, o(ρ_i ρ_j))` for `i < j`.
    pub pair_orders: Vec<(usize, usize, u64)>,
    pub is_string: bool,
}

fn mask_indices(mask: usize, rank: usize) -> Vec<usize> {
    (0..rank).filter(|i| mask & (1 << i) != 0).collect()
}

/// Checks `G_I ∩ G_J = G_{I∩J}` over all pairs of index subsets.
pub fn check_intersection_property(g: &GeneratedGroup) -> Result<CGroupReport, CGroupError> {
    let r = g.rank();
    if r > 4 {
        return Err(CGroupError::Rank {
            expected: "at most 4",
            got: r,
        });
    }
    let subs: Vec<Subgroup<'_>> = (0..1usize << r)
        .map(|mask| g.sub(&mask_indices(mask, r)))
        .collect();
    let mut failures = Vec::new();
    for i in 0..subs.len() {
        for j in i + 1..subs.len() {
            if i & j == i || i & j == j {
                continue;
            }
            let meet = subgroup_intersection(&subs[i], &subs[j])?;
            let expected = &subs[i & j];
            if meet.order() != expected.order() {
                let extra: Vec<ElemId> = meet
                    .members()
                    .iter()
                    .copied()
                    .filter(|&x| !expected.contains(x))
                    .collect();
                let witness = g.shortest_in(&extra).expect("strictly larger intersection");
                failures.push(IntersectionFailure {
                    left: mask_indices(i, r),
                    right: mask_indices(j, r),
                    witness,
                    witness_word: g.render(witness),
                });
            }
        }
    }
    let mut pair_orders = Vec::new();
    for i in 0..r {
        for j in i + 1..r {
            pair_orders.push((i, j, g.group().element_order(g.product(&[i, j]))));
        }
    }
    Ok(CGroupReport {
        is_c_group: failures.is_empty(),
        failures,
        pair_orders,
        is_string: check_string_property(g),
    })
}

/// `(ρ_i ρ_j)^2 = 1` whenever `|i - j| > 1`.
pub fn check_string_property(g: &GeneratedGroup) -> bool {
    string_property_for(g, &(0..g.rank()).collect::<Vec<_>>())
}

fn string_property_for(g: &GeneratedGroup, order: &[usize]) -> bool {
    let grp = g.group();
    (0..order.len()).all(|i| {
        (i + 2..order.len()).all(|j| {
            let x = g.product(&[order[i], order[j]]);
            grp.mul(x, x) == IDENTITY
        })
    })
}

/// Every ordering of the distinguished generators with the string property,
/// in lexicographic order.
pub fn string_orderings(g: &GeneratedGroup) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..g.rank()).collect();
    permutations(&mut current, 0, &mut |p| {
        if string_property_for(g, p) {
            out.push(p.to_vec());
        }
    });
    out.sort();
    out
}

fn permutations(items: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == items.len() {
        visit(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permutations(items, k + 1, visit);
        items.swap(k, i);
    }
}

/// `(o(ρ0ρ1), o(ρ1ρ2), o(ρ0ρ2))`.
pub fn type_orders(g: &GeneratedGroup) -> Result<[u64; 3], CGroupError> {
    require_rank3(g)?;
    let o = |a, b| g.group().element_order(g.product(&[a, b]));
    Ok([o(0, 1), o(1, 2), o(0, 2)])
}

fn require_rank3(g: &GeneratedGroup) -> Result<(), CGroupError> {
    if g.rank() != 3 {
        return Err(CGroupError::Rank {
            expected: "3",
            got: g.rank(),
        });
    }
    Ok(())
}

fn intersect(a: &ElementSet, b: &ElementSet) -> ElementSet {
    a.intersection(b).copied().collect()
}

fn set_product(grp: &PermGroup, a: &ElementSet, b: &ElementSet) -> ElementSet {
    a.iter()
        .flat_map(|&x| b.iter().map(move |&y| grp.mul(x, y)))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TitsReport {
    pub holds: bool,
    /// `(G0 ∩ G1)(G0 ∩ G2)`.
    pub lhs: ElementSet,
    /// `G1 G2 ∩ G0`.
    pub rhs: ElementSet,
}

/// Evaluates condition (1) `G0G1 ∩ G0G2 = G0(G1 ∩ G2)` and condition (2)
/// `(G0 ∩ G1)(G0 ∩ G2) = G1G2 ∩ G0` as element sets. They are equivalent, so
/// disagreement is an error. Reports the sides of (2).
pub fn tits_condition(g: &GeneratedGroup) -> Result<TitsReport, CGroupError> {
    require_rank3(g)?;
    let grp = g.group();
    let g0 = g.maximal_parabolic(0);
    let g1 = g.maximal_parabolic(1);
    let g2 = g.maximal_parabolic(2);

    let first_lhs = intersect(&product_set(&g0, &g1)?, &product_set(&g0, &g2)?);
    let g12 = subgroup_intersection(&g1, &g2)?;
    let first_rhs = product_set(&g0, &g12)?;
    let first = first_lhs == first_rhs;

    let g01 = subgroup_intersection(&g0, &g1)?.member_set();
    let g02 = subgroup_intersection(&g0, &g2)?.member_set();
    let lhs = set_product(grp, &g01, &g02);
    let rhs: ElementSet = product_set(&g1, &g2)?
        .into_iter()
        .filter(|&x| g0.contains(x))
        .collect();
    let second = lhs == rhs;

    if first != second {
        return Err(CGroupError::TitsDisagreement { first, second });
    }
    Ok(TitsReport {
        holds: second,
        lhs,
        rhs,
    })
}

/// The rank-3 flag-transitivity criterion `G1G0 ∩ G2G0 = (G1 ∩ G2)G0`,
/// evaluated directly.
pub fn buekenhout_hermand_rank3(g: &GeneratedGroup) -> Result<bool, CGroupError> {
    require_rank3(g)?;
    let g0 = g.maximal_parabolic(0);
    let g1 = g.maximal_parabolic(1);
    let g2 = g.maximal_parabolic(2);
    let lhs = intersect(&product_set(&g1, &g0)?, &product_set(&g2, &g0)?);
    let rhs = product_set(&subgroup_intersection(&g1, &g2)?, &g0)?;
    Ok(lhs == rhs)
}

/// Flag-transitivity of the rank-3 coset geometry; this is the Tits
/// condition. The direct criterion is evaluated alongside and must agree.
pub fn flag_transitivity_rank3(g: &GeneratedGroup) -> Result<bool, CGroupError> {
    let tits = tits_condition(g)?;
    let direct = buekenhout_hermand_rank3(g)?;
    if direct != tits.holds {
        return Err(CGroupError::TitsDisagreement {
            first: direct,
            second: tits.holds,
        });
    }
    Ok(tits.holds)
}

/// Evaluates `word` with generator `k` replaced by `images[k]`.
pub fn evaluate_in(target: &PermGroup, images: &[ElemId], word: &Word) -> ElemId {
    word.letters().iter().fold(IDENTITY, |x, l| {
        let y = images[l.generator()];
        let y = if l.is_inverse() { target.inverse(y) } else { y };
        target.mul(x, y)
    })
}

/// The map `ρ_j ↦ images[j]` from the group of `source_presentation` into
/// `target`: checks that it is a homomorphism, then whether it is injective
/// on `⟨ρ0, ρ1⟩` or on `⟨ρ1, ρ2⟩`.
pub fn quotient_criterion(
    source_presentation: &Presentation,
    source: &GeneratedGroup,
    target: &PermGroup,
    images: &[ElemId],
) -> Result<bool, CGroupError> {
    require_rank3(source)?;
    if images.len() != 3 || source_presentation.generator_count() != 3 {
        return Err(CGroupError::ImageCount(images.len(), 3));
    }
    target.enumerate()?;
    for rel in &source_presentation.relators {
        if evaluate_in(target, images, rel) != IDENTITY {
            return Err(CGroupError::NotAHomomorphism {
                relator: rel.render(&source_presentation.generator_names),
            });
        }
    }
    let injective_on = |a: usize, b: usize| {
        closure(target, &[images[a], images[b]]).order() == source.sub(&[a, b]).order()
    };
    Ok(injective_on(0, 1) || injective_on(1, 2))
}
