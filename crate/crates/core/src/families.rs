//! End-to-end checks for the M1/M2 groups and the `G(n, s, t, l)` family.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cgroup::{
    check_intersection_property, quotient_criterion, string_orderings, tits_condition, type_orders,
    CGroupError, CGroupReport, GeneratedGroup,
};
use crate::enumerate::DEFAULT_CAPACITY;
use crate::geometry::{hypertope_verdict, GeometryError, HypertopeVerdict};
use crate::group::{
    closure, commute_check, direct_product_witness, frattini_rank, is_normal, product_set,
    subgroup_intersection, ElemId, ElementSet, GroupError, Subgroup, DEFAULT_ELEMENT_CEILING,
    IDENTITY,
};
use crate::presentation::{
    m_presentation, theorem_presentation, Family, ParamError, Parity, Presentation, TheoremParams,
};
use crate::report::{timed, Stage, StageLog};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error(transparent)]
    Param(#[from] ParamError),
    #[error("group of order {needed} exceeds the element ceiling {ceiling}")]
    TooLarge { needed: u128, ceiling: usize },
    #[error("presentation has {0} generators, need 3")]
    GeneratorCount(usize),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    CGroup(#[from] CGroupError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// Resource limits and pipeline switches.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PipelineConfig {
    pub capacity: usize,
    pub ceiling: usize,
    /// Also check the quotient chain `G → G/C → G/AC → G/K` and the
    /// decomposition witnesses on `G/K`.
    pub deep: bool,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            capacity: DEFAULT_CAPACITY,
            ceiling: DEFAULT_ELEMENT_CEILING,
            deep: false,
        }
    }
}

fn generated(p: &Presentation, cfg: &PipelineConfig) -> Result<GeneratedGroup, FamilyError> {
    Ok(GeneratedGroup::from_presentation(
        p,
        cfg.capacity,
        cfg.ceiling,
    )?)
}

fn check_ceiling(needed: u128, cfg: &PipelineConfig) -> Result<(), FamilyError> {
    if needed > cfg.ceiling as u128 {
        return Err(FamilyError::TooLarge {
            needed,
            ceiling: cfg.ceiling,
        });
    }
    Ok(())
}

fn compare<T: PartialEq + std::fmt::Display>(name: &str, what: &str, got: T, want: T) -> Stage {
    if got == want {
        Stage::passed(name)
    } else {
        Stage::failed(name, format!("{what} = {got}, expected {want}"))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Prop23Report {
    pub b: i64,
    pub m1_order: usize,
    pub m2_order: usize,
    /// `o(ρ2ρ1ρ0)` in M1.
    pub m1_rho210_order: u64,
    /// `o(ρ1ρ2ρ1ρ0)` in M2.
    pub m2_rho1210_order: u64,
    pub stages: Vec<Stage>,
    pub pass: bool,
}

/// Orders of M1 and M2 and the orders of `ρ2ρ1ρ0` and `ρ1ρ2ρ1ρ0`.
pub fn verify_prop23(b: i64, cfg: &PipelineConfig) -> Result<Prop23Report, FamilyError> {
    let p1 = m_presentation(Family::M1, b)?;
    let p2 = m_presentation(Family::M2, b)?;
    check_ceiling(16 * (b as u128) * (b as u128), cfg)?;
    let mut log = StageLog::default();
    let (m1, ms) = timed(|| generated(&p1, cfg));
    let m1 = m1?;
    log.push(
        compare("m1_order", "|M1|", m1.order(), 16 * (b * b) as usize),
        ms,
    );
    let (m2, ms) = timed(|| generated(&p2, cfg));
    let m2 = m2?;
    log.push(
        compare("m2_order", "|M2|", m2.order(), 8 * (b * b) as usize),
        ms,
    );
    let o1 = m1.group().element_order(m1.product(&[2, 1, 0]));
    let o2 = m2.group().element_order(m2.product(&[1, 2, 1, 0]));
    log.push(
        compare("m1_element_order", "o(r2*r1*r0)", o1, 2 * b as u64),
        0.0,
    );
    log.push(
        compare("m2_element_order", "o(r1*r2*r1*r0)", o2, b as u64),
        0.0,
    );
    Ok(Prop23Report {
        b,
        m1_order: m1.order(),
        m2_order: m2.order(),
        m1_rho210_order: o1,
        m2_rho1210_order: o2,
        pass: log.all_pass(),
        stages: log.stages,
    })
}

fn sets_equal(name: &str, what: &str, a: &ElementSet, b: &ElementSet, g: &GeneratedGroup) -> Stage {
    if a == b {
        return Stage::passed(name);
    }
    let diff: Vec<ElemId> = a.symmetric_difference(b).copied().collect();
    let w = g
        .shortest_in(&diff)
        .map(|x| g.render(x))
        .unwrap_or_default();
    Stage::failed(name, format!("{what}: {w} lies in exactly one side"))
}

fn dihedral_stage(
    name: &str,
    s: &Subgroup<'_>,
    product: ElemId,
    b: i64,
    g: &GeneratedGroup,
) -> Stage {
    let o = g.group().element_order(product);
    if o != b as u64 {
        return Stage::failed(
            name,
            format!("o({}) = {o}, expected {b}", g.render(product)),
        );
    }
    compare(name, "order", s.order(), 2 * b as usize)
}

fn trivial_stage(name: &str, s: &Subgroup<'_>, g: &GeneratedGroup) -> Stage {
    let nontrivial: Vec<ElemId> = s
        .members()
        .iter()
        .copied()
        .filter(|&x| x != IDENTITY)
        .collect();
    match g.shortest_in(&nontrivial) {
        None => Stage::passed(name),
        Some(x) => Stage::failed(name, format!("{} in the intersection", g.render(x))),
    }
}

/// Checks `G = (X × Y) ⋊ H` for commuting dihedral `X`, `Y` of order `2b`
/// and a complement `H`.
fn decomposition_stages(
    g: &GeneratedGroup,
    b: i64,
    (x, x_prod): (&Subgroup<'_>, ElemId),
    (y, y_prod): (&Subgroup<'_>, ElemId),
    h: &Subgroup<'_>,
    names: [&str; 2],
) -> Result<Vec<Stage>, FamilyError> {
    let grp = g.group();
    let [xn, yn] = names;
    let mut out = vec![
        dihedral_stage(&format!("{xn}_dihedral"), x, x_prod, b, g),
        dihedral_stage(&format!("{yn}_dihedral"), y, y_prod, b, g),
    ];
    out.push(if commute_check(x, y)? {
        Stage::passed("commute")
    } else {
        Stage::failed("commute", format!("[{xn},{yn}] ≠ 1"))
    });
    out.push(trivial_stage(
        "intersection_trivial",
        &subgroup_intersection(x, y)?,
        g,
    ));
    let mut xy_gens = x.generators().to_vec();
    xy_gens.extend_from_slice(y.generators());
    let xy = closure(grp, &xy_gens);
    out.push(if is_normal(&xy) {
        Stage::passed("product_normal")
    } else {
        Stage::failed("product_normal", format!("{xn}{yn} is not normal"))
    });
    out.push(trivial_stage(
        "complement_trivial",
        &subgroup_intersection(&xy, h)?,
        g,
    ));
    let covered = product_set(&xy, h)?.len();
    out.push(compare("product_covers", "|XY·H|", covered, g.order()));
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Lemma31Report {
    pub b: i64,
    pub m1: Vec<Stage>,
    pub m2: Vec<Stage>,
    pub pass: bool,
}

/// `A = ⟨ρ1^ρ0, ρ1^ρ2⟩`, `B = ⟨ρ1, ρ1^(ρ0ρ2)⟩`, complement `⟨ρ0, ρ2⟩`,
/// swapped by conjugation with `ρ0` and with `ρ2`.
pub fn m1_witnesses(g: &GeneratedGroup, b: i64) -> Result<Vec<Stage>, FamilyError> {
    let grp = g.group();
    let (r0, r1, r2) = (g.rho(0), g.rho(1), g.rho(2));
    let a1 = grp.conjugate(r1, r0);
    let a2 = grp.conjugate(r1, r2);
    let b2 = grp.conjugate(r1, g.product(&[0, 2]));
    let a = closure(grp, &[a1, a2]);
    let bb = closure(grp, &[r1, b2]);
    let h = g.sub(&[0, 2]);
    let mut out = decomposition_stages(
        g,
        b,
        (&a, grp.mul(a2, a1)),
        (&bb, grp.mul(r1, b2)),
        &h,
        ["A", "B"],
    )?;
    let (am, bm) = (a.member_set(), bb.member_set());
    out.push(sets_equal(
        "A^r0 = B",
        "A^r0 vs B",
        &a.conjugate_set(r0),
        &bm,
        g,
    ));
    out.push(sets_equal(
        "B^r0 = A",
        "B^r0 vs A",
        &bb.conjugate_set(r0),
        &am,
        g,
    ));
    out.push(sets_equal(
        "A^r2 = B",
        "A^r2 vs B",
        &a.conjugate_set(r2),
        &bm,
        g,
    ));
    out.push(sets_equal(
        "B^r2 = A",
        "B^r2 vs A",
        &bb.conjugate_set(r2),
        &am,
        g,
    ));
    Ok(out)
}

/// `C = ⟨ρ0, ρ2^ρ1⟩`, `D = ⟨ρ0^ρ1, ρ2⟩`, complement `⟨ρ1⟩` swapping them.
pub fn m2_witnesses(g: &GeneratedGroup, b: i64) -> Result<Vec<Stage>, FamilyError> {
    let grp = g.group();
    let (r0, r1, r2) = (g.rho(0), g.rho(1), g.rho(2));
    let c2 = grp.conjugate(r2, r1);
    let d1 = grp.conjugate(r0, r1);
    let c = closure(grp, &[r0, c2]);
    let d = closure(grp, &[d1, r2]);
    let h = g.sub(&[1]);
    let mut out = decomposition_stages(
        g,
        b,
        (&c, grp.mul(c2, r0)),
        (&d, grp.mul(r2, d1)),
        &h,
        ["C", "D"],
    )?;
    let (cm, dm) = (c.member_set(), d.member_set());
    out.push(sets_equal(
        "C^r1 = D",
        "C^r1 vs D",
        &c.conjugate_set(r1),
        &dm,
        g,
    ));
    out.push(sets_equal(
        "D^r1 = C",
        "D^r1 vs C",
        &d.conjugate_set(r1),
        &cm,
        g,
    ));
    Ok(out)
}

pub fn verify_lemma31(b: i64, cfg: &PipelineConfig) -> Result<Lemma31Report, FamilyError> {
    check_ceiling(16 * (b as u128) * (b as u128), cfg)?;
    let m1 = generated(&m_presentation(Family::M1, b)?, cfg)?;
    let m2 = generated(&m_presentation(Family::M2, b)?, cfg)?;
    let s1 = m1_witnesses(&m1, b)?;
    let s2 = m2_witnesses(&m2, b)?;
    let pass = s1.iter().chain(&s2).all(|s| s.pass);
    Ok(Lemma31Report {
        b,
        m1: s1,
        m2: s2,
        pass,
    })
}

pub const THEOREM_STAGES: [&str; 9] = [
    "order",
    "type",
    "normality",
    "k_structure",
    "quotient_order",
    "c_group",
    "rank",
    "tits",
    "geometry",
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub params: TheoremParams,
    pub parity: Parity,
    pub stages: Vec<Stage>,
    pub pass: bool,
    pub group_order: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub type_orders: Option<[u64; 3]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k_order: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quotient_order: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rank: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tits_set: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chambers: Option<usize>,
    pub verdict: String,
}

impl TheoremReport {
    pub fn stage(&self, name: &str) -> Option<&Stage> {
        self.stages.iter().find(|s| s.name == name)
    }
}

/// `G3 = G/K` is `M2(2^((k+2)/2))` for even `k` and `M1(2^((k+1)/2))` for odd
/// `k`, on the same generators.
pub fn quotient_m_family(p: &TheoremParams) -> (Family, i64) {
    let k = p.excess();
    match p.parity() {
        Parity::Even => (Family::M2, 1 << ((k + 2) / 2)),
        Parity::Odd => (Family::M1, 1 << k.div_ceil(2)),
    }
}

/// Runs the stages in order and stops at the first failure.
pub fn verify_theorem32(
    p: &TheoremParams,
    cfg: &PipelineConfig,
) -> Result<TheoremReport, FamilyError> {
    p.validate()?;
    check_ceiling(1u128 << p.n, cfg)?;
    let pres = theorem_presentation(Family::G, p)?;
    let mut log = StageLog::default();
    let mut report = TheoremReport {
        params: *p,
        parity: p.parity(),
        stages: Vec::new(),
        pass: false,
        group_order: 0,
        type_orders: None,
        k_order: None,
        quotient_order: None,
        rank: None,
        tits_set: None,
        chambers: None,
        verdict: String::new(),
    };
    let finish = |mut report: TheoremReport, log: StageLog| {
        report.pass = log.all_pass();
        report.verdict = match log.first_failure() {
            None => format!(
                "PASS: regular hypertope of type ({},{},{}) with {} chambers",
                1u64 << p.s,
                1u64 << p.t,
                1u64 << p.l,
                report.chambers.unwrap_or(0)
            ),
            Some(s) => format!("FAIL at {}", s.name),
        };
        report.stages = log.stages;
        Ok(report)
    };

    let (g, ms) = timed(|| generated(&pres, cfg));
    let g = g?;
    let grp = g.group();
    report.group_order = g.order();
    if !log.push(compare("order", "|G|", g.order(), 1usize << p.n), ms) {
        return finish(report, log);
    }

    let (orders, ms) = timed(|| type_orders(&g));
    let orders = orders?;
    report.type_orders = Some(orders);
    let want = [1u64 << p.s, 1u64 << p.t, 1u64 << p.l];
    let stage = if orders == want {
        Stage::passed("type")
    } else {
        Stage::failed("type", format!("type {orders:?}, expected {want:?}"))
    };
    if !log.push(stage, ms) {
        return finish(report, log);
    }

    let ((a, bb, c), ms) = timed(|| {
        let a = closure(grp, &[grp.pow(g.product(&[0, 1]), 4)]);
        let bb = closure(grp, &[grp.pow(g.product(&[1, 2]), 4)]);
        let c = closure(grp, &[grp.pow(g.product(&[0, 2]), 2)]);
        (a, bb, c)
    });
    let stage = match [("A", &a), ("B", &bb), ("C", &c)]
        .into_iter()
        .find(|(_, s)| !is_normal(s))
    {
        None => Stage::passed("normality"),
        Some((name, _)) => Stage::failed("normality", format!("{name} is not normal")),
    };
    if !log.push(stage, ms) {
        return finish(report, log);
    }

    let (k_stage, ms) = timed(|| -> Result<(Stage, usize), FamilyError> {
        let want = [1usize << (p.s - 2), 1 << (p.t - 2), 1 << (p.l - 1)];
        let got = [a.order(), bb.order(), c.order()];
        if got != want {
            return Ok((
                Stage::failed(
                    "k_structure",
                    format!("|A|,|B|,|C| = {got:?}, expected {want:?}"),
                ),
                0,
            ));
        }
        if !direct_product_witness(&[a.clone(), bb.clone(), c.clone()])? {
            return Ok((Stage::failed("k_structure", "A×B×C is not direct"), 0));
        }
        let mut gens = a.generators().to_vec();
        gens.extend_from_slice(bb.generators());
        gens.extend_from_slice(c.generators());
        let k = closure(grp, &gens);
        Ok((
            compare(
                "k_structure",
                "|K|",
                k.order(),
                1usize << (p.s + p.t + p.l - 5),
            ),
            k.order(),
        ))
    });
    let (stage, k_order) = k_stage?;
    if stage.pass {
        report.k_order = Some(k_order);
    }
    if !log.push(stage, ms) {
        return finish(report, log);
    }

    let q = g.order() / k_order;
    report.quotient_order = Some(q);
    let stage = compare("quotient_order", "|G/K|", q, 1usize << (p.excess() + 5));
    if !log.push(stage, 0.0) {
        return finish(report, log);
    }

    let (cg, ms) = timed(|| check_intersection_property(&g));
    let cg = cg?;
    let stage = match cg.failures.first() {
        None => Stage::passed("c_group"),
        Some(f) => Stage::failed(
            "c_group",
            format!("{} in G_{:?} ∩ G_{:?}", f.witness_word, f.left, f.right),
        ),
    };
    if !log.push(stage, ms) {
        return finish(report, log);
    }

    let (fr, ms) = timed(|| frattini_rank(grp));
    let (_, d) = fr?;
    report.rank = Some(d);
    if !log.push(compare("rank", "d(G)", d, 3), ms) {
        return finish(report, log);
    }

    let (tits, ms) = timed(|| tits_condition(&g));
    let tits = tits?;
    let expected: ElementSet = [IDENTITY, g.rho(1), g.rho(2), g.product(&[2, 1])]
        .into_iter()
        .collect();
    report.tits_set = Some(g.render_set(&tits.rhs));
    let stage = if !tits.holds {
        sets_equal(
            "tits",
            "(G0∩G1)(G0∩G2) vs G1G2∩G0",
            &tits.lhs,
            &tits.rhs,
            &g,
        )
    } else {
        sets_equal(
            "tits",
            "G1G2∩G0 vs {1, r1, r2, r2*r1}",
            &tits.rhs,
            &expected,
            &g,
        )
    };
    if !log.push(stage, ms) {
        return finish(report, log);
    }

    let (v, ms) = timed(|| hypertope_verdict(&g));
    let v = v?;
    report.chambers = v.chambers;
    let stage = geometry_stage(&v, want, 1usize << p.n);
    if !log.push(stage, ms) {
        return finish(report, log);
    }

    if cfg.deep {
        let (stages, ms) = timed(|| deep_stages(p, &pres, &g, cfg));
        for s in stages? {
            if !log.push(s, ms) {
                break;
            }
        }
    }
    finish(report, log)
}

fn geometry_stage(v: &HypertopeVerdict, want_type: [u64; 3], want_chambers: usize) -> Stage {
    if let Some(f) = v.first_failure() {
        return Stage::failed(
            "geometry",
            format!("{}: {}", f.name, f.witness.clone().unwrap_or_default()),
        );
    }
    if v.type_orders != Some(want_type) {
        return Stage::failed("geometry", format!("type {:?}", v.type_orders));
    }
    compare(
        "geometry",
        "chambers",
        v.chambers.unwrap_or(0),
        want_chambers,
    )
}

/// `G → G1 → G2 → G3` are homomorphisms injective on `⟨ρ0,ρ1⟩` or
/// `⟨ρ1,ρ2⟩`, and `G3` carries the M1/M2 decomposition.
fn deep_stages(
    p: &TheoremParams,
    pres: &Presentation,
    g: &GeneratedGroup,
    cfg: &PipelineConfig,
) -> Result<Vec<Stage>, FamilyError> {
    let mut out = Vec::new();
    let chain = [Family::G1, Family::G2, Family::G3];
    let mut source_pres = pres.clone();
    let mut groups: Vec<GeneratedGroup> = Vec::new();
    for kind in chain {
        let target_pres = theorem_presentation(kind, p)?;
        let target = generated(&target_pres, cfg)?;
        let source = groups.last().unwrap_or(g);
        let name = format!("quotient_{:?}", kind).to_lowercase();
        let stage =
            match quotient_criterion(&source_pres, source, target.group(), target.involutions()) {
                Ok(true) => Stage::passed(name),
                Ok(false) => Stage::failed(name, "not injective on ⟨r0,r1⟩ or ⟨r1,r2⟩"),
                Err(CGroupError::NotAHomomorphism { relator }) => {
                    Stage::failed(name, format!("{relator} does not vanish"))
                }
                Err(e) => return Err(e.into()),
            };
        let ok = stage.pass;
        out.push(stage);
        if !ok {
            return Ok(out);
        }
        source_pres = target_pres;
        groups.push(target);
    }
    let g3 = groups.last().expect("chain has three steps");
    let (family, b) = quotient_m_family(p);
    let want = match family {
        Family::M1 => 16 * b * b,
        _ => 8 * b * b,
    } as usize;
    out.push(compare("g3_order", "|G/K|", g3.order(), want));
    let witnesses = match family {
        Family::M1 => m1_witnesses(g3, b)?,
        _ => m2_witnesses(g3, b)?,
    };
    let failed = witnesses.iter().find(|s| !s.pass).cloned();
    out.push(match failed {
        None => Stage::passed("g3_decomposition"),
        Some(s) => Stage::failed(
            "g3_decomposition",
            format!("{}: {}", s.name, s.witness.unwrap_or_default()),
        ),
    });
    Ok(out)
}

/// Every admissible `(n, s, t, l)` in the given inclusive ranges, in
/// lexicographic order, and the number of inadmissible tuples skipped.
pub fn admissible_tuples(
    n: (u32, u32),
    s: (u32, u32),
    t: (u32, u32),
    l: (u32, u32),
) -> (Vec<TheoremParams>, usize) {
    let mut out = Vec::new();
    let mut skipped = 0;
    for n in n.0..=n.1 {
        for s in s.0..=s.1 {
            for t in t.0..=t.1 {
                for l in l.0..=l.1 {
                    let p = TheoremParams::new(n, s, t, l);
                    if p.validate().is_ok() {
                        out.push(p);
                    } else {
                        skipped += 1;
                    }
                }
            }
        }
    }
    (out, skipped)
}

/// Runs the tuples in parallel; results come back in input order.
pub fn sweep(
    tuples: &[TheoremParams],
    cfg: &PipelineConfig,
) -> Vec<Result<TheoremReport, FamilyError>> {
    tuples
        .par_iter()
        .map(|p| verify_theorem32(p, cfg))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub order: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected_order: Option<usize>,
    pub stages: Vec<Stage>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub type_orders: Option<[u64; 3]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c_group: Option<CGroupReport>,
    pub string_orderings: Vec<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tits_lhs: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tits_rhs: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hypertope: Option<HypertopeVerdict>,
    pub verdict: String,
}

/// The whole pipeline on an arbitrary three-generator presentation. A
/// `param: order = N` entry sets an expected order that is checked first.
pub fn analyze_presentation(
    p: &Presentation,
    cfg: &PipelineConfig,
) -> Result<AnalysisReport, FamilyError> {
    if p.generator_count() != 3 {
        return Err(FamilyError::GeneratorCount(p.generator_count()));
    }
    let grp = crate::enumerate::regular_representation(p, cfg.capacity, cfg.ceiling)?;
    let mut log = StageLog::default();
    let mut report = AnalysisReport {
        order: grp.order(),
        expected_order: p.param("order").map(|o| o as usize),
        stages: Vec::new(),
        type_orders: None,
        c_group: None,
        string_orderings: Vec::new(),
        tits_lhs: None,
        tits_rhs: None,
        hypertope: None,
        verdict: String::new(),
    };
    let finish = |mut report: AnalysisReport, log: StageLog| {
        report.verdict = match (log.first_failure(), &report.hypertope) {
            (None, Some(h)) => h.verdict.clone(),
            (Some(s), _) => format!("not a regular hypertope: {} failed", s.name),
            (None, None) => "not a regular hypertope".into(),
        };
        report.stages = log.stages;
        Ok(report)
    };

    if let Some(want) = report.expected_order {
        if !log.push(compare("order", "|G|", grp.order(), want), 0.0) {
            return finish(report, log);
        }
    }

    let gens = grp.generator_ids();
    let g = match GeneratedGroup::new(grp, gens) {
        Ok(g) => g,
        Err(e @ (CGroupError::NotInvolution { .. } | CGroupError::DoesNotGenerate { .. })) => {
            log.push(Stage::failed("involutions", e.to_string()), 0.0);
            return finish(report, log);
        }
        Err(e) => return Err(e.into()),
    };
    log.push(Stage::passed("involutions"), 0.0);
    report.type_orders = Some(type_orders(&g)?);
    report.string_orderings = string_orderings(&g);
    let cg = check_intersection_property(&g)?;
    report.c_group = Some(cg);
    let tits = tits_condition(&g)?;
    report.tits_lhs = Some(g.render_set(&tits.lhs));
    report.tits_rhs = Some(g.render_set(&tits.rhs));
    let v = hypertope_verdict(&g)?;
    for s in &v.stages {
        log.stages.push(s.clone());
    }
    report.hypertope = Some(v);
    finish(report, log)
}
