use serde::Deserialize;
use stylemeter::annotate::annotate_text;
use stylemeter::surface::{
    entropy, hapax_ratio, length_profile, pos_ratios, readability, readability_counts,
    scores_from_counts, ReadabilityCounts, ReadabilityScores, SCORE_NAMES,
};

#[derive(Deserialize)]
struct Fixture {
    texts: Vec<Case>,
}

#[derive(Deserialize)]
struct Case {
    text: String,
    counts: ReadabilityCounts,
    scores: ReadabilityScores,
}

fn fixture() -> Fixture {
    serde_json::from_str(include_str!("fixtures/readability_textstat.json")).unwrap()
}

#[test]
fn formulas_match_reference_on_pinned_counts() {
    for case in fixture().texts {
        let ours = scores_from_counts(&case.counts).unwrap();
        for (name, (a, b)) in SCORE_NAMES
            .iter()
            .zip(ours.values().into_iter().zip(case.scores.values()))
        {
            assert!(
                (a - b).abs() < 1e-6,
                "{name}: {a} vs {b} on {:?}",
                case.text
            );
        }
    }
}

#[test]
fn scores_match_reference_end_to_end() {
    let cases = fixture().texts;
    let mut exact_words = 0;
    let mut max_gap = [0.0f64; 7];
    for case in &cases {
        let doc = annotate_text("r", &case.text);
        let c = readability_counts(&doc);
        assert_eq!(c.characters, case.counts.characters, "{:?}", case.text);
        assert_eq!(c.letters, case.counts.letters, "{:?}", case.text);
        assert_eq!(c.sentences, case.counts.sentences, "{:?}", case.text);
        exact_words += usize::from(c.words == case.counts.words);
        let ours = readability(&doc).unwrap().values();
        for (k, (a, b)) in ours.iter().zip(case.scores.values()).enumerate() {
            max_gap[k] = max_gap[k].max((a - b).abs());
        }
    }
    assert_eq!(exact_words, cases.len());
    println!("max |ours - reference| per score: {max_gap:?}");
    for (name, gap) in SCORE_NAMES.iter().zip(max_gap) {
        assert!(gap < 1e-6, "{name} drifts by {gap}");
    }
}

mod properties {
    use super::*;
    use proptest::prelude::*;

    const WORDS: &[&str] = &[
        "cat", "dog", "river", "happy", "the", "a", "banana", "quickly", "went", "home", "is",
    ];

    fn text() -> impl Strategy<Value = String> {
        prop::collection::vec(
            prop::collection::vec(prop::sample::select(WORDS), 3..10),
            1..5,
        )
        .prop_map(|sents| {
            sents
                .into_iter()
                .map(|s| format!("{}.", s.join(" ")))
                .collect::<Vec<_>>()
                .join(" ")
        })
    }

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() <= 1e-9 * (1.0 + a.abs())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn doubling_keeps_ratios(t in text()) {
            let doc = annotate_text("d", &t);
            let mut twice = doc.clone();
            twice.sentences.extend(doc.sentences.iter().cloned());
            prop_assert_eq!(pos_ratios(&doc), pos_ratios(&twice));
            prop_assert!(close(entropy(&doc), entropy(&twice)));
            prop_assert_eq!(hapax_ratio(&twice), 0.0);
            prop_assert_eq!(length_profile(&doc).lexicon, length_profile(&twice).lexicon);
            let (a, b) = (readability(&doc).unwrap(), readability(&twice).unwrap());
            for (x, y) in a.values().into_iter().zip(b.values()) {
                // linsear reads only the first 100 words, so it may differ once the doubled text passes 100
                if twice.token_count() <= 100 || !close(x, a.linsear) {
                    prop_assert!(close(x, y) || x == a.linsear, "{} vs {}", x, y);
                }
            }
        }

        #[test]
        fn syllables_move_scores(words in 1usize..40, sentences in 1usize..5, syl in 1usize..200, extra in 1usize..50) {
            let base = ReadabilityCounts { words, sentences, syllables: syl, characters: 5 * words, letters: 4 * words, ..Default::default() };
            let more = ReadabilityCounts { syllables: syl + extra, ..base };
            let (a, b) = (scores_from_counts(&base).unwrap(), scores_from_counts(&more).unwrap());
            prop_assert!(b.flesch_reading_ease < a.flesch_reading_ease);
            prop_assert!(b.flesch_kincaid > a.flesch_kincaid);
        }

        #[test]
        fn bounds(t in text()) {
            let doc = annotate_text("d", &t);
            let p = length_profile(&doc);
            prop_assert!(p.monosyllables + p.polysyllables <= p.words);
            prop_assert!(p.letters <= p.characters);
            prop_assert!(pos_ratios(&doc).iter().sum::<f64>() <= 1.0 + 1e-12);
            let h = hapax_ratio(&doc);
            prop_assert!((0.0..=1.0).contains(&h));
        }
    }
}
