mod support;

use proptest::prelude::*;

use hypertope::cgroup::{flag_transitivity_rank3, type_orders, GeneratedGroup};
use hypertope::families::{analyze_presentation, verify_theorem32, PipelineConfig};
use hypertope::group::frattini_rank;
use hypertope::presentation::{m_presentation, theorem_presentation};
use hypertope::{
    enumerate_cosets, group_order, parse_word, regular_representation, Family, Letter,
    Presentation, TheoremParams, Word,
};

use support::{catalogue, random_rank3_groups};

/// Homomorphisms to C2 are parity vectors on the generators under which every
/// relator has even weight; there are 2^d of them.
fn parity_rank(p: &Presentation) -> u32 {
    let n = p.generator_count();
    let count = (0u32..1 << n)
        .filter(|mask| {
            p.relators.iter().all(|r| {
                r.letters()
                    .iter()
                    .filter(|l| mask >> l.generator() & 1 == 1)
                    .count()
                    % 2
                    == 0
            })
        })
        .count();
    count.trailing_zeros()
}

#[test]
fn frattini_rank_matches_parity_oracle() {
    let mut checked = 0;
    for (name, p, known) in catalogue() {
        if !known.is_power_of_two() {
            continue;
        }
        let g = regular_representation(&p, 1 << 20, 1 << 14).unwrap();
        let (_, d) = frattini_rank(&g).unwrap();
        assert_eq!(d, parity_rank(&p), "{name}");
        checked += 1;
    }
    for (n, s, t, l) in [(10, 2, 2, 2), (11, 3, 2, 2), (12, 2, 3, 4)] {
        let p = theorem_presentation(Family::G, &TheoremParams::new(n, s, t, l)).unwrap();
        let g = regular_representation(&p, 1 << 20, 1 << 14).unwrap();
        assert_eq!(frattini_rank(&g).unwrap().1, 3);
        assert_eq!(parity_rank(&p), 3);
        checked += 1;
    }
    assert!(checked >= 10);
}

#[test]
fn tits_condition_on_random_groups_agrees_with_orbit_count() {
    for (p, g) in random_rank3_groups(99, 25, 512) {
        let by_tits = flag_transitivity_rank3(&g).unwrap();
        let geom = hypertope::geometry::build_geometry(&g).unwrap();
        let orbits = geom.flag_orbits();
        assert_eq!(
            by_tits,
            hypertope::geometry::is_flag_transitive(&orbits),
            "{:?}",
            p.render_relators()
        );
    }
}

#[test]
fn type_orders_follow_parameters() {
    let cfg = PipelineConfig::default();
    let r = verify_theorem32(&TheoremParams::new(12, 3, 2, 4), &cfg).unwrap();
    assert!(r.pass);
    assert_eq!(r.type_orders, Some([8, 4, 16]));

    let r = verify_theorem32(&TheoremParams::new(13, 4, 3, 2), &cfg).unwrap();
    assert!(r.pass);
    assert_eq!(r.chambers, Some(8192));

    let p = theorem_presentation(Family::G, &TheoremParams::new(11, 2, 2, 3)).unwrap();
    let g = GeneratedGroup::from_presentation(&p, 1 << 20, 1 << 14).unwrap();
    assert!(flag_transitivity_rank3(&g).unwrap());
    assert_eq!(type_orders(&g).unwrap(), [4, 4, 8]);
}

#[test]
fn analyze_matches_theorem_pipeline() {
    let params = TheoremParams::new(12, 3, 3, 3);
    let text = theorem_presentation(Family::G, &params).unwrap().to_text();
    let p = Presentation::from_text(&text).unwrap();
    let r = analyze_presentation(&p, &PipelineConfig::default()).unwrap();
    assert_eq!(r.order, 4096);
    assert!(
        r.hypertope.as_ref().unwrap().is_regular_hypertope,
        "{}",
        r.verdict
    );
    assert_eq!(r.hypertope.unwrap().chambers, Some(4096));
}

#[test]
fn m_families_are_c_groups_of_expected_type() {
    for b in 2..=4i64 {
        let g1 = GeneratedGroup::from_presentation(
            &m_presentation(Family::M1, b).unwrap(),
            1 << 20,
            1 << 14,
        )
        .unwrap();
        assert_eq!(type_orders(&g1).unwrap(), [4, 4, 2]);
        let g2 = GeneratedGroup::from_presentation(
            &m_presentation(Family::M2, b).unwrap(),
            1 << 20,
            1 << 14,
        )
        .unwrap();
        assert_eq!(type_orders(&g2).unwrap(), [4, 4, 2]);
    }
}

fn word_strategy(gens: usize, max_len: usize) -> impl Strategy<Value = Word> {
    proptest::collection::vec((0..gens, any::<bool>()), 0..max_len).prop_map(|v| {
        Word::from_letters(
            v.into_iter()
                .map(|(g, inv)| if inv { Letter::inv(g) } else { Letter::gen(g) })
                .collect(),
        )
    })
}

fn m1_b3() -> GeneratedGroup {
    GeneratedGroup::from_presentation(&m_presentation(Family::M1, 3).unwrap(), 1 << 20, 1 << 14)
        .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn evaluation_is_a_homomorphism(u in word_strategy(3, 20), v in word_strategy(3, 20)) {
        let g = m1_b3();
        let grp = g.group();
        prop_assert_eq!(grp.evaluate(&u.concat(&v)), grp.mul(grp.evaluate(&u), grp.evaluate(&v)));
        prop_assert_eq!(grp.evaluate(&u.inverse()), grp.inverse(grp.evaluate(&u)));
    }

    #[test]
    fn word_of_round_trips(w in word_strategy(3, 24)) {
        let g = m1_b3();
        let e = g.evaluate(&w);
        prop_assert_eq!(g.evaluate(&g.word_of(e)), e);
    }

    #[test]
    fn rendered_words_parse_back(w in word_strategy(3, 16)) {
        let names: Vec<String> = ["r0", "r1", "r2"].iter().map(|s| s.to_string()).collect();
        let text = w.render(&names);
        let back = parse_word(&text, &names).unwrap();
        prop_assert_eq!(hypertope::free_reduce(&back), hypertope::free_reduce(&w));
    }

    #[test]
    fn index_is_multiplicative(gens in proptest::collection::vec(0usize..3, 1..3)) {
        let p = m_presentation(Family::M2, 3).unwrap();
        let order = group_order(&p, 1 << 20).unwrap();
        let words: Vec<Word> = gens.iter().map(|&k| Word::from_gens(&[k])).collect();
        let index = enumerate_cosets(&p, &words, 1 << 20).unwrap().degree();
        let g = GeneratedGroup::from_presentation(&p, 1 << 20, 1 << 14).unwrap();
        let h = g.sub(&gens);
        prop_assert_eq!(index * h.order(), order);
    }
}
