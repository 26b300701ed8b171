//! Randomized properties of the automaton model and the BDF format.

use proptest::prelude::*;

use crareach::corpus::random_standardized;
use crareach::{parse_dfa, serialize_dfa, BinaryDfa, Letter, StateSet, Word};

fn arb_dfa(max_n: usize) -> impl Strategy<Value = BinaryDfa> {
    (1..=max_n).prop_flat_map(|n| {
        (
            prop::collection::vec(0..n, n),
            prop::collection::vec(0..n, n),
        )
            .prop_map(|(a, b)| BinaryDfa::new(a, b).unwrap())
    })
}

fn arb_word(max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(prop::bool::ANY, 0..=max_len).prop_map(|bits| {
        Word::from_letters(
            bits.into_iter()
                .map(|x| if x { Letter::B } else { Letter::A })
                .collect(),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn bdf_round_trip(dfa in arb_dfa(40)) {
        let text = serialize_dfa(&dfa);
        let back = parse_dfa(&text).unwrap();
        prop_assert_eq!(back.delta(Letter::A), dfa.delta(Letter::A));
        prop_assert_eq!(back.delta(Letter::B), dfa.delta(Letter::B));
        prop_assert_eq!(serialize_dfa(&back), text);
    }

    #[test]
    fn summary_fold_matches_composition(dfa in arb_dfa(16), w in arb_word(30)) {
        prop_assert_eq!(dfa.summarize_word(&w), dfa.summarize_word_folded(&w));
    }

    #[test]
    fn defect_never_drops(dfa in arb_dfa(16), w in arb_word(30)) {
        let mut s = crareach::WordSummary::identity(dfa.n());
        for &c in w.letters() {
            let t = dfa.step_summary(&s, c);
            prop_assert!(t.defect() >= s.defect());
            prop_assert!(t.dupl.len() <= t.excl.len());
            s = t;
        }
        prop_assert_eq!(s.excl.complement(), dfa.image(&w));
    }

    #[test]
    fn word_notation_round_trips(w in arb_word(60)) {
        let back: Word = w.to_string().parse().unwrap();
        prop_assert_eq!(back, w);
    }
}

#[test]
fn appending_b_translates_summaries() {
    for seed in 0..200u64 {
        let s = random_standardized(3 + (seed as usize) % 20, seed).unwrap();
        let dfa = s.dfa();
        let w = Word::from_letters(
            (0..15)
                .map(|i| {
                    if (seed >> (i % 64)) & 1 == 1 || i % 3 == 0 {
                        Letter::A
                    } else {
                        Letter::B
                    }
                })
                .collect(),
        );
        let before = dfa.summarize_word(&w);
        let mut wb = w.clone();
        wb.push(Letter::B);
        let after = dfa.summarize_word(&wb);
        assert_eq!(after.excl, before.excl.shift(1));
        assert_eq!(after.dupl, before.dupl.shift(1));
    }
}

#[test]
fn parse_reads_files_with_comments() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("x.bdf");
    std::fs::write(
        &path,
        "# demo\n\nn 3   # three states\na: 1 1 2\n\nb: 1 2 0\n",
    )
    .unwrap();
    let dfa = parse_dfa(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(dfa.delta(Letter::A), &[1, 1, 2]);
    assert_eq!(serialize_dfa(&dfa), "n 3\na: 1 1 2\nb: 1 2 0\n");
    let image = dfa.image(&"a".parse().unwrap());
    assert_eq!(image, StateSet::from_states(3, [1, 2]));
}
