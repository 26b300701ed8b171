//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails. Run with `cargo test -p crareach --test acceptance`.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crareach::arith::subgroup_generator;
use crareach::corpus::{preset, random_standardized, random_standardized_with, scramble};
use crareach::oracle::{enumerate_reachable, enumerate_standardized, witness_word};
use crareach::sweep::{check, sample_standardized, Check, SweepOptions};
use crareach::{
    compute_chain, coset_structure_check, decide, difference_set, standardize,
    synthesize_witness_constructive, ChainConfig, ChainOutcome, Letter, StandardizedDfa, StateSet,
    Word, WordSummary,
};

struct Outcome {
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome {
            failures: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn expect(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.failures.push(what.into());
        }
    }

    fn note(&mut self, what: impl Into<String>) {
        self.notes.push(what.into());
    }
}

fn set(n: usize, xs: &[usize]) -> StateSet {
    StateSet::from_states(n, xs.iter().copied())
}

fn word(s: &str) -> Word {
    s.parse().expect("valid word")
}

fn std_preset(name: &str) -> StandardizedDfa {
    standardize(&preset(name).unwrap().dfa).unwrap()
}

fn criterion_1(o: &mut Outcome) {
    let start = Instant::now();
    let p = preset("e12prime").unwrap();
    let s = standardize(&p.dfa).unwrap();
    let ana = difference_set(&s);
    o.expect(ana.d1 == set(12, &[4, 6, 10]), format!("D_1 = {}", ana.d1));
    o.expect(ana.h1_gen == 2, format!("H_1 = <{}>", ana.h1_gen));
    let sccs = ana.sccs();
    o.expect(
        sccs == vec![set(12, &[0, 2, 4, 6, 8, 10]), set(12, &[1, 3, 5, 7, 9, 11])],
        format!("SCCs {sccs:?}"),
    );
    let sum = p.dfa.summarize_word(&word("ab^3a"));
    o.expect(
        sum.excl == set(12, &[0, 8]),
        format!("excl(ab^3a) = {}", sum.excl),
    );
    o.expect(sum.dupl.contains(1), format!("dupl(ab^3a) = {}", sum.dupl));
    let v = decide(&p.dfa);
    o.expect(
        v.to_string() == "COMPLETELY_REACHABLE",
        format!("verdict {v}"),
    );
    let chain = compute_chain(&s, &ChainConfig::default()).unwrap();
    o.expect(
        chain.outcome == ChainOutcome::ReachedFullGroup(2),
        format!("{:?}", chain.outcome),
    );
    let t = start.elapsed();
    o.expect(t < Duration::from_secs(1), format!("took {t:?}"));
}

fn criterion_2(o: &mut Outcome) {
    let p = preset("e48").unwrap();
    let s = standardize(&p.dfa).unwrap();
    o.expect(
        (s.r(), s.dupl_a()) == (24, 18),
        format!("r = {}, dupl(a) = {}", s.r(), s.dupl_a()),
    );
    let ana = difference_set(&s);
    o.expect(
        ana.d1 == set(48, &[18, 24, 42]),
        format!("D_1 = {}", ana.d1),
    );
    o.expect(ana.h1_gen == 6, format!("H_1 = <{}>", ana.h1_gen));

    let start = Instant::now();
    let chain = compute_chain(&s, &ChainConfig::default()).unwrap();
    let t = start.elapsed();
    let gens: Vec<usize> = chain.levels.iter().map(|l| l.hk_gen).collect();
    o.expect(
        gens == vec![6, 2, 1],
        format!("H-chain generators {gens:?}"),
    );
    o.expect(
        chain.outcome == ChainOutcome::ReachedFullGroup(3),
        format!("{:?}", chain.outcome),
    );
    o.expect(chain.level(2).is_some_and(|l| l.dk.contains(2)), "2 in D_2");
    o.expect(
        chain.level(3).is_some_and(|l| l.dk.contains(13)),
        "13 in D_3",
    );
    o.expect(t <= Duration::from_secs(60), format!("chain took {t:?}"));

    let sum = p.dfa.summarize_word(&word("ab^32a"));
    o.expect(
        sum == WordSummary {
            excl: set(48, &[0, 30]),
            dupl: set(48, &[2, 18]),
        },
        format!("summary(ab^32a) = ({}, {})", sum.excl, sum.dupl),
    );
    // the stated summary, checked on the word exactly as written
    let literal = p.dfa.summarize_word(&word("ab^24ab^12ab^8"));
    o.expect(
        literal.excl == set(48, &[0, 8, 20]) && literal.dupl.contains(13),
        format!(
            "summary(ab^24ab^12ab^8) = ({}, {}), expected excl {{0, 8, 20}} with 13 in dupl",
            literal.excl, literal.dupl
        ),
    );
    let completed = p.dfa.summarize_word(&word("ab^24ab^12ab^8a"));
    o.note(format!(
        "ab^24ab^12ab^8a has excl {} and dupl {}",
        completed.excl, completed.dupl
    ));
    o.expect(decide(&p.dfa).completely_reachable, "verdict");
    o.note(format!(
        "chain {:.3} s, {} search nodes at k=3",
        t.as_secs_f64(),
        chain.levels[2].pairs_visited
    ));
}

/// Per-pair disagreement counts over a family of automata.
#[derive(Default)]
struct Tally {
    automata: usize,
    reachable: usize,
    chain_vs_decider: usize,
    oracle_vs_decider: usize,
    remark9_vs_full: usize,
    reachable_disconnected: usize,
}

impl Tally {
    fn add(&mut self, c: &Check) {
        self.automata += 1;
        self.reachable += c.decider as usize;
        self.chain_vs_decider += c.chain.is_some_and(|x| x != c.decider) as usize;
        self.oracle_vs_decider += c.oracle.is_some_and(|x| x != c.decider) as usize;
        self.remark9_vs_full += (c.decider != c.decider_full) as usize;
        self.reachable_disconnected += (c.decider && c.h1_gen != 1) as usize;
    }
}

fn criterion_3(o: &mut Outcome, tally: &mut Tally) {
    let opts = SweepOptions::default();
    let start = Instant::now();
    for n in 3..=8 {
        for s in enumerate_standardized(n).unwrap() {
            tally.add(&check(&s, &opts).unwrap());
        }
    }
    let t = start.elapsed();
    o.expect(
        tally.automata == 40_318,
        format!("{} automata", tally.automata),
    );
    o.expect(
        tally.chain_vs_decider == 0,
        format!("{} chain disagreements", tally.chain_vs_decider),
    );
    o.expect(
        tally.oracle_vs_decider == 0,
        format!("{} oracle disagreements", tally.oracle_vs_decider),
    );
    o.expect(t <= Duration::from_secs(600), format!("took {t:?}"));
    o.note(format!(
        "{} automata, {} completely reachable, {:.2} s on one thread",
        tally.automata,
        tally.reachable,
        t.as_secs_f64()
    ));
}

fn criterion_4(o: &mut Outcome, tally: &mut Tally) {
    let opts = SweepOptions {
        chain: None,
        ..SweepOptions::default()
    };
    let start = Instant::now();
    for n in 9..=14 {
        for s in sample_standardized(n, 10_000, 9).unwrap() {
            tally.add(&check(&s, &opts).unwrap());
        }
    }
    o.expect(
        tally.automata == 60_000,
        format!("{} automata", tally.automata),
    );
    o.expect(
        tally.oracle_vs_decider == 0,
        format!("{} oracle disagreements", tally.oracle_vs_decider),
    );
    o.note(format!(
        "{} automata, {} completely reachable, {:.2} s",
        tally.automata,
        tally.reachable,
        start.elapsed().as_secs_f64()
    ));
}

fn criterion_5(o: &mut Outcome, exhaustive: &Tally) {
    o.expect(
        exhaustive.reachable_disconnected == 0,
        format!(
            "{} completely reachable automata with n <= 8 have disconnected Γ_1",
            exhaustive.reachable_disconnected
        ),
    );
    let s = std_preset("e12prime");
    let ana = difference_set(&s);
    o.expect(decide(s.dfa()).completely_reachable, "e12prime verdict");
    o.expect(
        !ana.strongly_connected,
        "e12prime Γ_1 should be disconnected",
    );
}

fn corollary_holds(s: &StandardizedDfa, oracle: bool) -> bool {
    let reachable = decide(s.dfa()).completely_reachable;
    let connected = difference_set(s).h1_gen == 1;
    let oracle_ok = !oracle || enumerate_reachable(s.dfa(), 22).unwrap().complete == reachable;
    oracle_ok && reachable == connected
}

fn criterion_6(o: &mut Outcome) {
    let mut checked = 0;
    for n in [4, 6, 9] {
        let bad = enumerate_standardized(n)
            .unwrap()
            .filter(|s| !corollary_holds(s, true))
            .count();
        checked += crareach::oracle::count_standardized(n);
        o.expect(bad == 0, format!("{bad} counterexamples at n = {n}"));
    }
    for n in [10, 14, 15] {
        let bad = sample_standardized(n, 10_000, 6)
            .unwrap()
            .iter()
            .filter(|s| !corollary_holds(s, false))
            .count();
        checked += 10_000;
        o.expect(bad == 0, format!("{bad} counterexamples at n = {n}"));
    }
    o.note(format!("{checked} automata"));
}

fn criterion_7(o: &mut Outcome) {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut bad = 0usize;
    for i in 0..1000 {
        let n = rng.gen_range(3..=64);
        let s = random_standardized_with(n, &mut rng).unwrap();
        let ana = difference_set(&s);
        let r = s.r();
        let d10 = ana.d1_zero();
        let h1 = StateSet::from_states(n, (0..n).step_by(ana.h1_gen));
        let r_group = StateSet::from_states(n, (0..n).step_by(subgroup_generator(n, [r])));
        let closed = ana
            .d1
            .iter()
            .all(|d| ana.d1.contains(s.a(d)) && ana.d1.contains(s.a((d + r) % n)));
        let k = rng.gen_range(1..n);
        let translation = (0..n)
            .all(|q| (0..n).all(|p| ana.is_edge(q, p) == ana.is_edge((q + k) % n, (p + k) % n)));

        let len = rng.gen_range(0..=40);
        let w = Word::from_letters(
            (0..len)
                .map(|_| {
                    if rng.gen_bool(0.5) {
                        Letter::A
                    } else {
                        Letter::B
                    }
                })
                .collect(),
        );
        let direct = s.dfa().summarize_word(&w);
        let mut folded = WordSummary::identity(n);
        let mut monotone = true;
        for &c in w.letters() {
            let next = s.dfa().step_summary(&folded, c);
            monotone &= next.defect() >= folded.defect() && next.dupl.len() <= next.excl.len();
            folded = next;
        }
        let checks = [
            ("coset structure", coset_structure_check(&s, &ana)),
            ("<r> in D_1^0", r_group.is_subset(&d10)),
            ("D_1^0 in H_1", d10.is_subset(&h1)),
            ("closure", closed),
            ("translation", translation),
            ("summary coherence", direct == folded),
            ("defect and |dupl| <= |excl|", monotone),
        ];
        for (name, ok) in checks {
            if !ok {
                bad += 1;
                o.expect(
                    false,
                    format!("#{i} (n = {n}, a = {:?}): {name}", s.a_row()),
                );
            }
        }
    }
    o.note(format!("1000 automata and words, {bad} failures"));
}

fn criterion_8(o: &mut Outcome) {
    let e12 = preset("e12prime").unwrap().dfa;
    let rep = enumerate_reachable(&e12, 22).unwrap();
    let mut replayed = 0;
    for m in 1u64..(1 << 12) {
        let target = StateSet::from_mask(12, m);
        match witness_word(&rep, &target) {
            Ok(w) if e12.image(&w) == target => replayed += 1,
            Ok(w) => o.expect(false, format!("oracle witness {w} misses {target}")),
            Err(e) => o.expect(false, format!("{target}: {e}")),
        }
    }
    o.expect(
        replayed == 4095,
        format!("{replayed} oracle witnesses replayed"),
    );

    let s = standardize(&e12).unwrap();
    let chain = compute_chain(&s, &ChainConfig::default()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut constructive = 0;
    let mut total_len = 0;
    for _ in 0..100 {
        let target = StateSet::from_mask(12, rng.gen_range(1u64..1 << 12));
        match synthesize_witness_constructive(&s, &chain, &target) {
            Ok(w) if e12.image(&s.to_original_word(&w)) == target => {
                constructive += 1;
                total_len += w.len();
            }
            Ok(w) => o.expect(false, format!("constructive witness {w} misses {target}")),
            Err(e) => o.expect(false, format!("{target}: {e}")),
        }
    }
    o.expect(
        constructive == 100,
        format!("{constructive} constructive witnesses replayed"),
    );
    o.note(format!(
        "4095 oracle + 100 constructive witnesses, mean constructive length {:.1}",
        total_len as f64 / 100.0
    ));
}

fn criterion_9(o: &mut Outcome) {
    let n = 1_000_000;
    let (mut worst_decide, mut worst_std) = (Duration::ZERO, Duration::ZERO);
    for seed in 0..3 {
        let s = random_standardized(n, seed).unwrap();
        let scrambled = scramble(s.dfa(), seed);

        let t = Instant::now();
        let v = decide(s.dfa());
        worst_decide = worst_decide.max(t.elapsed());

        let t = Instant::now();
        let back = standardize(&scrambled).unwrap();
        worst_std = worst_std.max(t.elapsed());

        let t = Instant::now();
        let v2 = decide(&scrambled);
        worst_decide = worst_decide.max(t.elapsed());
        o.expect(
            v.completely_reachable == v2.completely_reachable,
            format!("seed {seed}: scrambled verdict differs"),
        );
        o.expect(back.n() == n, "standardized size");
    }
    o.expect(
        worst_decide < Duration::from_secs(1),
        format!("decide took {worst_decide:?}"),
    );
    o.expect(
        worst_std < Duration::from_secs(1),
        format!("standardize took {worst_std:?}"),
    );
    o.note(format!(
        "n = 10^6: decide {:.3} s, standardize {:.3} s (worst of 3)",
        worst_decide.as_secs_f64(),
        worst_std.as_secs_f64()
    ));
}

fn criterion_10(o: &mut Outcome, exhaustive: &Tally, sampled: &Tally) {
    let bad = exhaustive.remark9_vs_full + sampled.remark9_vs_full;
    o.expect(
        bad == 0,
        format!("{bad} disagreements between restricted and full divisor search"),
    );
    o.note(format!(
        "{} automata",
        exhaustive.automata + sampled.automata
    ));
}

fn main() {
    let titles = [
        "golden E'_12 facts",
        "golden E_48 facts",
        "exhaustive equivalence sweep, n = 3..8",
        "sampled equivalence, n = 9..14",
        "minimum size of a reachable automaton with disconnected Γ_1",
        "two-prime corollary",
        "structural properties",
        "witness soundness",
        "performance at n = 10^6",
        "restricted divisor search agreement",
    ];
    let mut exhaustive = Tally::default();
    let mut sampled = Tally::default();
    let mut passed = 0;
    for (i, title) in titles.iter().enumerate() {
        let mut o = Outcome::new();
        let start = Instant::now();
        match i + 1 {
            1 => criterion_1(&mut o),
            2 => criterion_2(&mut o),
            // plain loop on the main thread, no worker pool
            3 => criterion_3(&mut o, &mut exhaustive),
            4 => criterion_4(&mut o, &mut sampled),
            5 => criterion_5(&mut o, &exhaustive),
            6 => criterion_6(&mut o),
            7 => criterion_7(&mut o),
            8 => criterion_8(&mut o),
            9 => criterion_9(&mut o),
            _ => criterion_10(&mut o, &exhaustive, &sampled),
        }
        let status = if o.failures.is_empty() {
            "PASS"
        } else {
            "FAIL"
        };
        passed += o.failures.is_empty() as usize;
        println!(
            "criterion {:>2}: {status}  {title} ({:.2} s){}",
            i + 1,
            start.elapsed().as_secs_f64(),
            if o.notes.is_empty() {
                String::new()
            } else {
                format!("; {}", o.notes.join("; "))
            }
        );
        for f in &o.failures {
            println!("    failed: {f}");
        }
    }
    println!("acceptance: {passed}/{} criteria passed", titles.len());
    if passed != titles.len() {
        std::process::exit(1);
    }
}
