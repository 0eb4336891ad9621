//! Todd–Coxeter coset enumeration, HLT strategy.
//!
//! Relators are scanned from every live coset in definition order, filling
//! gaps by new definitions; coincidences are merged immediately through a
//! union-find forest. The table is compacted at the end, keeping the
//! definition order, so the numbering is reproducible.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::group::{GroupError, PermGroup};
use crate::perm::Permutation;
use crate::presentation::Presentation;
use crate::words::{Letter, Word};

pub const DEFAULT_CAPACITY: usize = 1 << 20;

const NONE: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerationError {
    #[error("coset enumeration did not close within {capacity} cosets")]
    CapacityExceeded { capacity: usize },
    #[error("word refers to generator {generator}, presentation has {count}")]
    UnknownGenerator { generator: usize, count: usize },
    #[error("capacity must be positive")]
    ZeroCapacity,
}

/// A closed, compacted coset table. Coset 0 is the subgroup coset.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CosetTable {
    degree: usize,
    columns: usize,
    /// Row-major: `action[coset * columns + letter.column()]`.
    action: Vec<u32>,
    subgroup_words: Vec<Word>,
    /// Cosets defined during the run, including ones later merged away.
    total_defined: usize,
}

impl CosetTable {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generator_count(&self) -> usize {
        self.columns / 2
    }

    pub fn subgroup_words(&self) -> &[Word] {
        &self.subgroup_words
    }

    pub fn total_defined(&self) -> usize {
        self.total_defined
    }

    pub fn act(&self, coset: usize, letter: Letter) -> usize {
        self.action[coset * self.columns + letter.column()] as usize
    }

    /// Coset reached by reading `word` from `coset`.
    pub fn trace(&self, coset: usize, word: &Word) -> usize {
        word.letters().iter().fold(coset, |c, &l| self.act(c, l))
    }

    /// The permutation induced on cosets by a letter.
    pub fn permutation(&self, letter: Letter) -> Permutation {
        Permutation::from_images(
            (0..self.degree)
                .map(|c| self.act(c, letter) as u32)
                .collect(),
        )
        .expect("closed coset table columns are bijections")
    }

    /// Full post-hoc check of the closure invariants: every entry defined,
    /// inverse columns mutually inverse, every relator closes at every coset,
    /// every subgroup word closes at coset 0.
    pub fn verify(&self, relators: &[Word]) -> Result<(), String> {
        for c in 0..self.degree {
            for col in 0..self.columns {
                let d = self.action[c * self.columns + col];
                if d == NONE || d as usize >= self.degree {
                    return Err(format!("entry ({c}, {col}) undefined"));
                }
                let back = self.action[d as usize * self.columns + (col ^ 1)];
                if back as usize != c {
                    return Err(format!(
                        "columns {col} and {} not inverse at coset {c}",
                        col ^ 1
                    ));
                }
            }
            for (i, r) in relators.iter().enumerate() {
                if self.trace(c, r) != c {
                    return Err(format!("relator {i} does not close at coset {c}"));
                }
            }
        }
        for (i, h) in self.subgroup_words.iter().enumerate() {
            if self.trace(0, h) != 0 {
                return Err(format!("subgroup generator {i} does not fix coset 0"));
            }
        }
        Ok(())
    }
}

struct Enumerator {
    columns: usize,
    capacity: usize,
    table: Vec<u32>,
    /// Union-find parent; `parent[c] == c` iff `c` is live.
    parent: Vec<u32>,
    queue: Vec<u32>,
}

impl Enumerator {
    fn new(columns: usize, capacity: usize) -> Self {
        let mut e = Enumerator {
            columns,
            capacity,
            table: Vec::new(),
            parent: Vec::new(),
            queue: Vec::new(),
        };
        e.new_coset();
        e
    }

    fn len(&self) -> usize {
        self.parent.len()
    }

    fn get(&self, c: u32, col: usize) -> u32 {
        self.table[c as usize * self.columns + col]
    }

    fn set(&mut self, c: u32, col: usize, d: u32) {
        self.table[c as usize * self.columns + col] = d;
    }

    fn is_live(&self, c: u32) -> bool {
        self.parent[c as usize] == c
    }

    fn new_coset(&mut self) -> u32 {
        let c = self.parent.len() as u32;
        self.parent.push(c);
        self.table.extend(std::iter::repeat_n(NONE, self.columns));
        c
    }

    fn define(&mut self, c: u32, col: usize) -> Result<u32, EnumerationError> {
        if self.len() >= self.capacity {
            return Err(EnumerationError::CapacityExceeded {
                capacity: self.capacity,
            });
        }
        let d = self.new_coset();
        self.set(c, col, d);
        self.set(d, col ^ 1, c);
        Ok(d)
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut root = c;
        while self.parent[root as usize] != root {
            root = self.parent[root as usize];
        }
        let mut cur = c;
        while self.parent[cur as usize] != root {
            let next = self.parent[cur as usize];
            self.parent[cur as usize] = root;
            cur = next;
        }
        root
    }

    fn merge(&mut self, a: u32, b: u32) {
        let ra = self.rep(a);
        let rb = self.rep(b);
        if ra != rb {
            let (keep, drop) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[drop as usize] = keep;
            self.queue.push(drop);
        }
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.queue.clear();
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let dead = self.queue[i];
            i += 1;
            for col in 0..self.columns {
                let d = self.get(dead, col);
                if d == NONE {
                    continue;
                }
                self.set(d, col ^ 1, NONE);
                let mu = self.rep(dead);
                let nu = self.rep(d);
                let mu_x = self.get(mu, col);
                if mu_x != NONE {
                    self.merge(nu, mu_x);
                } else {
                    let nu_inv = self.get(nu, col ^ 1);
                    if nu_inv != NONE {
                        self.merge(mu, nu_inv);
                    } else {
                        self.set(mu, col, nu);
                        self.set(nu, col ^ 1, mu);
                    }
                }
            }
        }
    }

    /// Scans `word` at `start`, defining new cosets to complete the scan.
    fn scan_and_fill(&mut self, start: u32, word: &[Letter]) -> Result<(), EnumerationError> {
        if word.is_empty() {
            return Ok(());
        }
        let mut f = start;
        let mut b = start;
        let mut i = 0usize;
        let mut j = word.len() - 1;
        loop {
            while i <= j {
                let next = self.get(f, word[i].column());
                if next == NONE {
                    break;
                }
                f = next;
                i += 1;
            }
            if i > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i {
                let prev = self.get(b, word[j].inverse().column());
                if prev == NONE {
                    break;
                }
                b = prev;
                if j == 0 {
                    // i == 0 here too; the backward scan consumed everything
                    self.coincidence(f, b);
                    return Ok(());
                }
                j -= 1;
            }
            if j < i {
                self.coincidence(f, b);
                return Ok(());
            }
            if i == j {
                let col = word[i].column();
                self.set(f, col, b);
                self.set(b, col ^ 1, f);
                return Ok(());
            }
            self.define(f, word[i].column())?;
        }
    }
}

fn check_generators(words: &[Word], count: usize) -> Result<(), EnumerationError> {
    for w in words {
        if let Some(g) = w.max_generator() {
            if g >= count {
                return Err(EnumerationError::UnknownGenerator {
                    generator: g,
                    count,
                });
            }
        }
    }
    Ok(())
}

/// Enumerates the cosets of `⟨subgroup⟩` in the group given by `p`.
pub fn enumerate_cosets(
    p: &Presentation,
    subgroup: &[Word],
    capacity: usize,
) -> Result<CosetTable, EnumerationError> {
    if capacity == 0 {
        return Err(EnumerationError::ZeroCapacity);
    }
    let gens = p.generator_count();
    check_generators(&p.relators, gens)?;
    check_generators(subgroup, gens)?;
    let columns = 2 * gens;
    let relators: Vec<&[Letter]> = p
        .relators
        .iter()
        .filter(|r| !r.is_empty())
        .map(|r| r.letters())
        .collect();

    let mut e = Enumerator::new(columns, capacity);
    for h in subgroup {
        e.scan_and_fill(0, h.letters())?;
    }

    let mut current = 0u32;
    while (current as usize) < e.len() {
        for r in &relators {
            if !e.is_live(current) {
                break;
            }
            e.scan_and_fill(current, r)?;
        }
        if e.is_live(current) {
            for col in 0..columns {
                if e.get(current, col) == NONE {
                    e.define(current, col)?;
                }
            }
        }
        current += 1;
    }

    // compaction in definition order
    let total = e.len();
    let mut new_index = vec![NONE; total];
    let mut live = Vec::new();
    for c in 0..total as u32 {
        if e.is_live(c) {
            new_index[c as usize] = live.len() as u32;
            live.push(c);
        }
    }
    let mut action = Vec::with_capacity(live.len() * columns);
    for &c in &live {
        for col in 0..columns {
            let d = e.get(c, col);
            debug_assert!(d != NONE);
            action.push(new_index[d as usize]);
        }
    }
    Ok(CosetTable {
        degree: live.len(),
        columns,
        action,
        subgroup_words: subgroup.to_vec(),
        total_defined: total,
    })
}

/// `|G|`, via the coset table of the trivial subgroup.
pub fn group_order(p: &Presentation, capacity: usize) -> Result<usize, EnumerationError> {
    Ok(enumerate_cosets(p, &[], capacity)?.degree())
}

/// The regular representation: the action of the generators on the cosets
/// of the trivial subgroup. Element identifiers are assigned by the group.
pub fn regular_representation(
    p: &Presentation,
    capacity: usize,
    ceiling: usize,
) -> Result<PermGroup, GroupError> {
    let table = enumerate_cosets(p, &[], capacity)?;
    if table.degree() > ceiling {
        return Err(GroupError::ElementCeiling { ceiling });
    }
    let gens = (0..p.generator_count())
        .map(|k| table.permutation(Letter::gen(k)))
        .collect();
    let group = PermGroup::regular(table.degree(), p.generator_names.clone(), gens, ceiling)?;
    group.enumerate()?;
    Ok(group)
}
