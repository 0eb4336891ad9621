//! Oracles and fixtures shared by the integration tests.
#![allow(dead_code)]

use std::cmp::Ordering;
use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hypertope::cgroup::GeneratedGroup;
use hypertope::presentation::{m_presentation, theorem_presentation};
use hypertope::{build_paper_presentation, Family, Presentation, TheoremParams, Word};

/// Letters are `2*gen + inv`, the same packing as the library's.
type Str = Vec<u32>;

fn shortlex(a: &[u32], b: &[u32]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

struct Rewriting {
    rules: Vec<(Str, Str)>,
}

impl Rewriting {
    fn reduce(&self, w: &[u32]) -> Str {
        let mut input: Vec<u32> = w.iter().rev().copied().collect();
        let mut out: Str = Vec::with_capacity(w.len());
        while let Some(x) = input.pop() {
            out.push(x);
            if let Some((lhs, rhs)) = self.rules.iter().find(|(lhs, _)| out.ends_with(lhs)) {
                out.truncate(out.len() - lhs.len());
                input.extend(rhs.iter().rev());
            }
        }
        out
    }

    fn is_irreducible(&self, w: &[u32]) -> bool {
        // callers only extend irreducible words, so suffixes suffice
        !self.rules.iter().any(|(lhs, _)| w.ends_with(lhs))
    }

    fn orient(a: Str, b: Str) -> Option<(Str, Str)> {
        match shortlex(&a, &b) {
            Ordering::Equal => None,
            Ordering::Greater => Some((a, b)),
            Ordering::Less => Some((b, a)),
        }
    }

    fn interreduce(&mut self) {
        loop {
            let mut changed = false;
            let mut i = 0;
            while i < self.rules.len() {
                let (lhs, rhs) = self.rules[i].clone();
                let others = Rewriting {
                    rules: self
                        .rules
                        .iter()
                        .enumerate()
                        .filter(|&(j, _)| j != i)
                        .map(|(_, r)| r.clone())
                        .collect(),
                };
                let l = others.reduce(&lhs);
                if l != lhs {
                    self.rules.remove(i);
                    let r = self.reduce(&rhs);
                    let l = self.reduce(&l);
                    if let Some(rule) = Self::orient(l, r) {
                        self.rules.push(rule);
                    }
                    changed = true;
                    continue;
                }
                let r = self.reduce(&rhs);
                if r != rhs {
                    self.rules[i].1 = r;
                    changed = true;
                }
                i += 1;
            }
            if !changed {
                return;
            }
        }
    }

    fn critical_pairs(&self) -> Vec<(Str, Str)> {
        let mut out = Vec::new();
        for (l1, r1) in &self.rules {
            for (l2, r2) in &self.rules {
                for k in 1..l1.len().min(l2.len()) {
                    if l1[l1.len() - k..] != l2[..k] {
                        continue;
                    }
                    let mut a = r1.clone();
                    a.extend_from_slice(&l2[k..]);
                    let mut b = l1[..l1.len() - k].to_vec();
                    b.extend_from_slice(r2);
                    let (a, b) = (self.reduce(&a), self.reduce(&b));
                    if let Some(rule) = Self::orient(a, b) {
                        if !out.contains(&rule) {
                            out.push(rule);
                        }
                    }
                }
            }
        }
        out
    }
}

/// Group order by shortlex Knuth–Bendix completion and a count of the
/// irreducible words. `None` if completion or counting exceeds the limits.
pub fn knuth_bendix_order(p: &Presentation, max_rules: usize, max_order: usize) -> Option<usize> {
    let gens = p.generator_count() as u32;
    let mut rules = Vec::new();
    for g in 0..gens {
        rules.push((vec![2 * g, 2 * g + 1], vec![]));
        rules.push((vec![2 * g + 1, 2 * g], vec![]));
    }
    for r in &p.relators {
        let w: Str = r.letters().iter().map(|l| l.column() as u32).collect();
        if !w.is_empty() {
            rules.push((w, vec![]));
        }
    }
    let mut rw = Rewriting { rules };
    rw.interreduce();
    loop {
        let pairs = rw.critical_pairs();
        if pairs.is_empty() {
            break;
        }
        for (l, r) in pairs {
            let (l, r) = (rw.reduce(&l), rw.reduce(&r));
            if let Some(rule) = Rewriting::orient(l, r) {
                rw.rules.push(rule);
            }
        }
        rw.interreduce();
        if rw.rules.len() > max_rules {
            return None;
        }
    }
    let mut frontier: Vec<Str> = vec![vec![]];
    let mut count = 1;
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for w in &frontier {
            for x in 0..2 * gens {
                let mut v = w.clone();
                v.push(x);
                if rw.is_irreducible(&v) {
                    next.push(v);
                }
            }
        }
        count += next.len();
        if count > max_order {
            return None;
        }
        frontier = next;
    }
    Some(count)
}

pub fn pres(gens: &[&str], rels: &[&str]) -> Presentation {
    Presentation::from_exprs(gens, rels).unwrap()
}

fn coxeter3(a: u32, b: u32, c: u32) -> Presentation {
    let r01 = format!("(r0 r1)^{a}");
    let r12 = format!("(r1 r2)^{b}");
    let r02 = format!("(r0 r2)^{c}");
    pres(
        &["r0", "r1", "r2"],
        &["r0^2", "r1^2", "r2^2", &r01, &r12, &r02],
    )
}

fn small(kind: Family, key: &str, v: i64) -> Presentation {
    let params: BTreeMap<String, i64> = [(key.to_string(), v)].into_iter().collect();
    build_paper_presentation(kind, &params).unwrap()
}

/// Presentations with orders known from standard group theory.
pub fn catalogue() -> Vec<(&'static str, Presentation, usize)> {
    let t = |n, s, t, l| TheoremParams::new(n, s, t, l);
    vec![
        ("C2", pres(&["a"], &["a^2"]), 2),
        ("C7", pres(&["a"], &["a^7"]), 7),
        ("C15", pres(&["a", "b"], &["a^3", "b^5", "[a,b]"]), 15),
        (
            "C2 via ab = 1",
            pres(&["a", "b"], &["a^2", "b^2", "a b"]),
            2,
        ),
        ("D8", pres(&["a", "b"], &["a^2", "b^2", "(a b)^4"]), 8),
        ("D12", pres(&["a", "b"], &["a^2", "b^2", "(a b)^6"]), 12),
        (
            "Q8",
            pres(&["i", "j"], &["i^4", "i^2 j^-2", "j^-1 i j i"]),
            8,
        ),
        ("M16", pres(&["a", "b"], &["a^8", "b^2", "b a b a^-5"]), 16),
        ("A4", pres(&["a", "b"], &["a^2", "b^3", "(a b)^3"]), 12),
        ("S4", pres(&["a", "b"], &["a^2", "b^3", "(a b)^4"]), 24),
        ("A5", pres(&["a", "b"], &["a^2", "b^3", "(a b)^5"]), 60),
        (
            "binary tetrahedral",
            pres(&["a", "b", "c"], &["a^2 b^-3", "b^3 c^-3", "a b c a^-2"]),
            24,
        ),
        ("C2^3", coxeter3(2, 2, 2), 8),
        ("Coxeter A3", coxeter3(3, 3, 2), 24),
        ("Coxeter B3", coxeter3(4, 3, 2), 48),
        ("Coxeter H3", coxeter3(5, 3, 2), 120),
        ("M1 b=2", m_presentation(Family::M1, 2).unwrap(), 64),
        ("M1 b=3", m_presentation(Family::M1, 3).unwrap(), 144),
        ("M1 b=4", m_presentation(Family::M1, 4).unwrap(), 256),
        ("M1 b=5", m_presentation(Family::M1, 5).unwrap(), 400),
        ("M2 b=2", m_presentation(Family::M2, 2).unwrap(), 32),
        ("M2 b=3", m_presentation(Family::M2, 3).unwrap(), 72),
        ("M2 b=5", m_presentation(Family::M2, 5).unwrap(), 200),
        ("L1 s=3", small(Family::L1, "s", 3), 16),
        ("L2 t=2", small(Family::L2, "t", 2), 8),
        ("L3 l=4", small(Family::L3, "l", 4), 32),
        (
            "G/K (10,2,2,2)",
            theorem_presentation(Family::G3, &t(10, 2, 2, 2)).unwrap(),
            512,
        ),
        (
            "G/K (10,2,2,3)",
            theorem_presentation(Family::G3, &t(10, 2, 2, 3)).unwrap(),
            256,
        ),
        (
            "G/AC (10,2,2,2)",
            theorem_presentation(Family::G2, &t(10, 2, 2, 2)).unwrap(),
            512,
        ),
    ]
}

/// Rank-3 groups generated by three involutions: a random Coxeter-type
/// presentation with one extra random relator, kept when it enumerates to
/// order in `4..=max_order` and the generators stay distinct involutions.
pub fn random_rank3_groups(
    seed: u64,
    count: usize,
    max_order: usize,
) -> Vec<(Presentation, GeneratedGroup)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let exps = [2, 3, 4, 4, 6, 8];
    let mut attempts = 0;
    while out.len() < count && attempts < 50 * count {
        attempts += 1;
        let mut rels: Vec<String> = vec!["r0^2".into(), "r1^2".into(), "r2^2".into()];
        for (i, j) in [(0, 1), (1, 2), (0, 2)] {
            rels.push(format!(
                "(r{i} r{j})^{}",
                exps[rng.gen_range(0..exps.len())]
            ));
        }
        let len = rng.gen_range(3..7);
        let mut word = Vec::new();
        let mut last = 3;
        for _ in 0..len {
            let mut g = rng.gen_range(0..3);
            while g == last {
                g = rng.gen_range(0..3);
            }
            word.push(format!("r{g}"));
            last = g;
        }
        rels.push(format!("({})^{}", word.join(" "), rng.gen_range(1..7)));
        let rels: Vec<&str> = rels.iter().map(String::as_str).collect();
        let p = pres(&["r0", "r1", "r2"], &rels);
        let Ok(g) = GeneratedGroup::from_presentation(&p, 20_000, max_order) else {
            continue;
        };
        let ids = g.involutions();
        if g.order() < 4 || ids[0] == ids[1] || ids[1] == ids[2] || ids[0] == ids[2] {
            continue;
        }
        out.push((p, g));
    }
    out
}

/// Evaluates a word as a permutation product, independently of the
/// element table.
pub fn word_permutation(g: &GeneratedGroup, w: &Word) -> hypertope::Permutation {
    let grp = g.group();
    let mut acc = hypertope::Permutation::identity(grp.degree());
    for l in w.letters() {
        let gen = &grp.generators()[l.generator()];
        let step = if l.is_inverse() {
            gen.inverse()
        } else {
            gen.clone()
        };
        acc = acc.compose(&step);
    }
    acc
}
