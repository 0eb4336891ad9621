//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any
//! failure.

mod support;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hypertope::cgroup::{
    check_intersection_property, flag_transitivity_rank3, tits_condition, GeneratedGroup,
};
use hypertope::families::{
    admissible_tuples, analyze_presentation, sweep, verify_lemma31, verify_prop23,
    verify_theorem32, PipelineConfig,
};
use hypertope::geometry::{
    build_geometry, hypertope_verdict, is_chamber_transitive, is_flag_transitive, CosetGeometry,
};
use hypertope::group::IDENTITY;
use hypertope::presentation::{m_presentation, theorem_presentation};
use hypertope::{group_order, parse_word, ElementSet, Family, TheoremParams};

use support::{catalogue, knuth_bendix_order, pres, random_rank3_groups, word_permutation};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn cfg() -> PipelineConfig {
    PipelineConfig::default()
}

fn m_family_orders() -> Outcome {
    let start = Instant::now();
    for (b, m1, m2) in [(2, 64, 32), (3, 144, 72), (4, 256, 128), (5, 400, 200)] {
        let r = verify_prop23(b, &cfg()).map_err(|e| e.to_string())?;
        ensure(r.m1_order == m1 && r.m2_order == m2, || {
            format!("b={b}: |M1|={} |M2|={}", r.m1_order, r.m2_order)
        })?;
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 5.0, || format!("took {secs:.2} s"))?;
    Ok(format!("|M1|=16b², |M2|=8b² for b=2..5 in {secs:.3} s"))
}

fn m_family_element_orders() -> Outcome {
    for b in 2..=4 {
        let r = verify_prop23(b, &cfg()).map_err(|e| e.to_string())?;
        ensure(r.m1_rho210_order == 2 * b as u64, || {
            format!("b={b}: o(r2 r1 r0) = {}", r.m1_rho210_order)
        })?;
        ensure(r.m2_rho1210_order == b as u64, || {
            format!("b={b}: o(r1 r2 r1 r0) = {}", r.m2_rho1210_order)
        })?;
    }
    Ok("o(ρ2ρ1ρ0)=2b in M1, o(ρ1ρ2ρ1ρ0)=b in M2 for b=2..4".into())
}

fn decomposition_witnesses() -> Outcome {
    let mut checks = 0;
    for b in 2..=4 {
        let r = verify_lemma31(b, &cfg()).map_err(|e| e.to_string())?;
        for s in r.m1.iter().chain(&r.m2) {
            ensure(s.pass, || {
                format!("b={b}: {} failed: {:?}", s.name, s.witness)
            })?;
            checks += 1;
        }
        for name in [
            "commute",
            "intersection_trivial",
            "complement_trivial",
            "product_covers",
        ] {
            ensure(
                r.m1.iter().any(|s| s.name == name) && r.m2.iter().any(|s| s.name == name),
                || format!("missing check {name}"),
            )?;
        }
        ensure(r.m1.iter().any(|s| s.name == "A^r0 = B"), || {
            "missing swap check".into()
        })?;
        ensure(r.m2.iter().any(|s| s.name == "C^r1 = D"), || {
            "missing swap check".into()
        })?;
    }
    Ok(format!("{checks} witness checks for b=2..4"))
}

fn theorem_sweep() -> Outcome {
    let (tuples, _) = admissible_tuples((10, 12), (2, 4), (2, 4), (1, 3));
    let reports = sweep(&tuples, &cfg());
    let mut parities = BTreeSet::new();
    let mut slowest = 0.0f64;
    for (p, r) in tuples.iter().zip(reports) {
        let r = r.map_err(|e| format!("{p}: {e}"))?;
        ensure(r.pass && r.stages.len() == 9, || {
            format!("{p}: {}", r.verdict)
        })?;
        let ms: f64 = r.stages.iter().filter_map(|s| s.elapsed_ms).sum();
        slowest = slowest.max(ms);
        ensure(ms < 60_000.0, || format!("{p}: {ms} ms"))?;
        let (s, t, l) = (p.s, p.t, p.l);
        ensure(r.group_order == 1 << p.n, || {
            format!("{p}: |G| = {}", r.group_order)
        })?;
        ensure(r.k_order == Some(1 << (s + t + l - 5)), || {
            format!("{p}: |K| = {:?}", r.k_order)
        })?;
        ensure(r.quotient_order == Some(1 << (p.n - s - t - l + 5)), || {
            format!("{p}: |G/K| = {:?}", r.quotient_order)
        })?;
        ensure(r.chambers == Some(1 << p.n), || {
            format!("{p}: chambers {:?}", r.chambers)
        })?;
        ensure(r.type_orders == Some([1 << s, 1 << t, 1 << l]), || {
            format!("{p}: type {:?}", r.type_orders)
        })?;
        ensure(r.rank == Some(3), || format!("{p}: d(G) = {:?}", r.rank))?;
        parities.insert(format!("{:?}", r.parity));
    }
    ensure(parities.len() == 2, || {
        format!("parities covered: {parities:?}")
    })?;
    Ok(format!(
        "{} tuples, both parity branches, slowest {:.1} ms",
        tuples.len(),
        slowest
    ))
}

fn tits_set() -> Outcome {
    let p = TheoremParams::new(10, 2, 2, 2);
    let g = GeneratedGroup::from_presentation(
        &theorem_presentation(Family::G, &p).unwrap(),
        1 << 20,
        1 << 14,
    )
    .map_err(|e| e.to_string())?;
    let t = tits_condition(&g).map_err(|e| e.to_string())?;
    let expected: ElementSet = [IDENTITY, g.rho(1), g.rho(2), g.product(&[2, 1])]
        .into_iter()
        .collect();
    ensure(t.lhs == expected && t.rhs == expected, || {
        format!(
            "lhs {:?} rhs {:?}",
            g.render_set(&t.lhs),
            g.render_set(&t.rhs)
        )
    })?;
    for &e in &t.rhs {
        let via_words = word_permutation(&g, &g.word_of(e));
        ensure(g.group().permutation_of(e) == via_words, || {
            "word evaluation disagrees".into()
        })?;
    }
    let words = g.render_set(&t.rhs);
    ensure(words == ["1", "r1", "r2", "r2*r1"], || format!("{words:?}"))?;
    let r = verify_theorem32(&p, &cfg()).map_err(|e| e.to_string())?;
    ensure(r.tits_set.as_deref() == Some(&words[..]), || {
        format!("{:?}", r.tits_set)
    })?;
    Ok(format!("both sides = {{{}}}", words.join(", ")))
}

fn oracle_equivalence() -> Outcome {
    let mut compared = 0;
    for (name, p, known) in catalogue() {
        if known > 512 {
            continue;
        }
        let tc = group_order(&p, 1 << 20).map_err(|e| format!("{name}: {e}"))?;
        let kb = knuth_bendix_order(&p, 4000, 4096);
        ensure(kb == Some(tc), || {
            format!("{name}: enumeration {tc}, rewriting {kb:?}")
        })?;
        ensure(tc == known, || format!("{name}: {tc}, expected {known}"))?;
        compared += 1;
    }
    ensure(compared >= 20, || format!("only {compared} presentations"))?;
    Ok(format!("{compared} presentations agree with Knuth–Bendix"))
}

fn rank3_test_groups() -> Vec<(String, GeneratedGroup)> {
    let mut out: Vec<(String, GeneratedGroup)> = Vec::new();
    for (name, p, known) in catalogue() {
        if known <= 512 && p.generator_count() == 3 && name != "binary tetrahedral" {
            if let Ok(g) = GeneratedGroup::from_presentation(&p, 1 << 20, 512) {
                out.push((name.to_string(), g));
            }
        }
    }
    for (k, (_, g)) in random_rank3_groups(7, 40, 512).into_iter().enumerate() {
        out.push((format!("random #{k}"), g));
    }
    let broken = pres(
        &["a", "b", "c"],
        &["a^2", "b^2", "c^2", "(a b)^2", "c^-1 a b"],
    );
    out.push((
        "redundant involution".into(),
        GeneratedGroup::from_presentation(&broken, 1000, 1000).unwrap(),
    ));
    out
}

fn property_suites() -> Outcome {
    // (a) commutator expansion identities
    let groups = [
        m_presentation(Family::M1, 3).unwrap(),
        theorem_presentation(Family::G, &TheoremParams::new(10, 2, 2, 2)).unwrap(),
        pres(&["a", "b"], &["a^2", "b^3", "(a b)^5"]),
        pres(&["i", "j"], &["i^4", "i^2 j^-2", "j^-1 i j i"]),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut triples = 0;
    for p in &groups {
        let grp =
            hypertope::regular_representation(p, 1 << 20, 1 << 14).map_err(|e| e.to_string())?;
        let n = grp.order() as u32;
        for _ in 0..300 {
            let (x, y, z) = (
                rng.gen_range(0..n),
                rng.gen_range(0..n),
                rng.gen_range(0..n),
            );
            let c = |a, b| grp.commutator(a, b);
            let lhs = c(grp.mul(x, y), z);
            let rhs = grp.mul(grp.conjugate(c(x, z), y), c(y, z));
            ensure(lhs == rhs, || {
                format!("[xy,z] identity fails at {x},{y},{z}")
            })?;
            let lhs = c(x, grp.mul(y, z));
            let rhs = grp.mul(c(x, z), grp.conjugate(c(x, y), z));
            ensure(lhs == rhs, || {
                format!("[x,yz] identity fails at {x},{y},{z}")
            })?;
            // the same commutator through raw permutations
            let (px, py) = (grp.permutation_of(x), grp.permutation_of(y));
            let pc = px
                .inverse()
                .compose(&py.inverse())
                .compose(&px)
                .compose(&py);
            ensure(grp.permutation_of(c(x, y)) == pc, || {
                "commutator disagrees with permutations".into()
            })?;
            triples += 1;
        }
    }
    ensure(triples >= 1000, || format!("{triples} triples"))?;

    // (b)-(d) on every rank-3 group of order ≤ 2^9
    let mut geometries = 0;
    let mut non_transitive = 0;
    for (name, g) in rank3_test_groups() {
        let tits = flag_transitivity_rank3(&g).map_err(|e| format!("{name}: {e}"))?;
        let geom = build_geometry(&g).map_err(|e| format!("{name}: {e}"))?;
        let orbits = geom.flag_orbits();
        let chamber = is_chamber_transitive(&orbits);
        let flag = is_flag_transitive(&orbits);
        ensure(chamber == flag, || {
            format!("{name}: chamber {chamber}, flag {flag}")
        })?;
        ensure(tits == flag, || {
            format!("{name}: Tits {tits}, orbit count {flag}")
        })?;
        let bad = geom.incidence_discrepancies();
        ensure(bad == 0, || {
            format!("{name}: {bad} incidence discrepancies")
        })?;
        geometries += 1;
        non_transitive += (!flag) as usize;
    }
    ensure(geometries >= 20, || format!("{geometries} geometries"))?;
    Ok(format!(
        "{triples} commutator triples; {geometries} geometries ({non_transitive} not flag-transitive), zero discrepancies"
    ))
}

fn negative_controls() -> Outcome {
    // redundant generator: rejected by the intersection property
    let redundant = pres(
        &["a", "b", "c"],
        &["a^2", "b^2", "c^2", "(a b)^2", "c^-1 a b"],
    );
    let g = GeneratedGroup::from_presentation(&redundant, 1000, 1000).map_err(|e| e.to_string())?;
    let v = hypertope_verdict(&g).map_err(|e| e.to_string())?;
    let f = v.first_failure().ok_or("redundant generator accepted")?;
    ensure(
        f.name == "intersection_property" && f.witness.is_some(),
        || format!("{f:?}"),
    )?;
    let rep = check_intersection_property(&g).map_err(|e| e.to_string())?;
    ensure(!rep.failures.is_empty(), || "no failure witness".into())?;

    // collapsed order: an extra relator against the expected 2^10
    let mut p = theorem_presentation(Family::G, &TheoremParams::new(10, 2, 2, 2)).unwrap();
    p.add_relator(parse_word("(r0 r1)^2", &p.generator_names).unwrap());
    p.params.insert("order".into(), 1024);
    let r = analyze_presentation(&p, &cfg()).map_err(|e| e.to_string())?;
    let f = &r.stages[0];
    ensure(f.name == "order" && !f.pass && f.witness.is_some(), || {
        format!("{f:?}")
    })?;
    ensure(r.order < 1024, || format!("order {}", r.order))?;

    // non-minimal G_0: the whole group
    let g = GeneratedGroup::from_presentation(
        &theorem_presentation(Family::G, &TheoremParams::new(10, 2, 2, 2)).unwrap(),
        1 << 20,
        1 << 14,
    )
    .map_err(|e| e.to_string())?;
    let subs = vec![
        g.group().whole(),
        g.maximal_parabolic(1),
        g.maximal_parabolic(2),
    ];
    let geom = CosetGeometry::from_subgroups(&g, subs).map_err(|e| e.to_string())?;
    let (flag, size) = geom
        .incidence()
        .thinness_witness()
        .ok_or("non-minimal G_0 is thin")?;
    ensure(size != 2, || format!("residue of {flag:?} has {size}"))?;

    // two copies of a hypertope side by side: disconnected
    let good = build_geometry(&g).map_err(|e| e.to_string())?;
    ensure(good.incidence().is_residually_connected(), || {
        "base geometry disconnected".into()
    })?;
    let twice = good.incidence().disjoint_union(good.incidence());
    ensure(twice.residual_connectedness_witness().is_some(), || {
        "disjoint union connected".into()
    })?;

    Ok(format!(
        "redundant generator → intersection_property, collapsed order {} → order, non-minimal G_0 → thin (residue size {size}), disjoint union → residually_connected",
        r.order
    ))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("M1/M2 orders", m_family_orders),
        ("M1/M2 element orders", m_family_element_orders),
        ("M1/M2 decomposition witnesses", decomposition_witnesses),
        ("G(n,s,t,l) pipeline over 10 ≤ n ≤ 12", theorem_sweep),
        ("Tits set {1, ρ1, ρ2, ρ2ρ1}", tits_set),
        ("enumeration vs rewriting oracle", oracle_equivalence),
        ("property suites", property_suites),
        ("negative controls", negative_controls),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("PASS [{}] {name}: {detail}", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL [{}] {name}: {why}", k + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
