//! Scrambled copies of the presets keep their verdicts once standardized.

use crareach::corpus::{preset, random_standardized, scramble, PRESET_NAMES};
use crareach::{classify, decide, standardize, BinaryDfa, Letter, Shape, StateSet};

#[test]
fn scrambled_presets_keep_verdicts() {
    for name in PRESET_NAMES {
        let p = preset(name).unwrap();
        let expected = decide(&p.dfa);
        for seed in 0..500 {
            let s = scramble(&p.dfa, seed);
            let v = decide(&s);
            assert_eq!(
                v.completely_reachable, expected.completely_reachable,
                "{name} seed {seed}"
            );
            assert_eq!(
                v.invariant_divisor, expected.invariant_divisor,
                "{name} seed {seed}"
            );
            if let Ok(sdfa) = standardize(&s) {
                let n = sdfa.n();
                let rest: Vec<usize> = (1..n).map(|q| sdfa.a(q)).collect();
                let mut sorted = rest.clone();
                sorted.sort_unstable();
                assert_eq!(sorted, (1..n).collect::<Vec<_>>());
                // standardized words act on the scrambled automaton as claimed
                let w = "ab^3ab".parse().unwrap();
                let img = sdfa.dfa().image(&w);
                let orig = s.image(&sdfa.to_original_word(&w));
                assert_eq!(sdfa.to_original_set(&img), orig, "{name} seed {seed}");
            }
        }
    }
}

#[test]
fn e12_multiplied_by_five() {
    let e12 = preset("e12prime").unwrap().dfa;
    let a = e12.delta(Letter::A);
    // rename q -> 5q; the old +1 becomes +5 in the new names
    let mut na = vec![0; 12];
    let mut nb = vec![0; 12];
    for q in 0..12 {
        na[5 * q % 12] = 5 * a[q] % 12;
        nb[5 * q % 12] = 5 * (q + 1) % 12;
    }
    let renamed = BinaryDfa::new(na, nb).unwrap();
    assert_eq!(classify(&renamed).verdict, Shape::Standardizable);
    let s = standardize(&renamed).unwrap();
    assert!(decide(&renamed).completely_reachable);
    assert_eq!(
        s.dfa().delta(Letter::B),
        (0..12).map(|q| (q + 1) % 12).collect::<Vec<_>>()
    );
}

#[test]
fn idempotent_on_standardized_input() {
    for seed in 0..200u64 {
        let s = random_standardized(3 + (seed as usize) % 50, seed).unwrap();
        let again = standardize(s.dfa()).unwrap();
        assert_eq!(again.a_row(), s.a_row());
        assert!(again.relabeling().iter().enumerate().all(|(i, &j)| i == j));
        assert_eq!((again.shift(), again.letters_swapped()), (0, false));
        let all = StateSet::full(s.n());
        assert_eq!(again.to_original_set(&all), all);
    }
}

#[test]
fn renamed_flip_flops() {
    for (a, b) in [([0, 0], [1, 1]), ([1, 1], [0, 0])] {
        let d = BinaryDfa::new(a.to_vec(), b.to_vec()).unwrap();
        assert_eq!(classify(&d).verdict, Shape::FlipFlop);
    }
    // identity plus one constant is not the flip-flop
    let d = BinaryDfa::new(vec![0, 1], vec![1, 1]).unwrap();
    assert_ne!(classify(&d).verdict, Shape::FlipFlop);
}
