//! Named automata with known properties, and seeded random generators.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dfa::BinaryDfa;
use crate::error::{Error, Result};
use crate::standardize::StandardizedDfa;

pub const PRESET_NAMES: [&str; 4] = ["flipflop", "e12prime", "e48", "e4inv"];

/// Facts the golden tests hold each preset to.
#[derive(Debug, Clone)]
pub struct Expected {
    pub completely_reachable: bool,
    /// `r` and `dupl(a)` of the standardized form.
    pub r_and_dupl: Option<(usize, usize)>,
    pub d1: Option<Vec<usize>>,
    /// Generators of `H_1, H_2, …` up to the terminating level.
    pub h_chain: Vec<usize>,
    pub note: &'static str,
}

#[derive(Debug, Clone)]
pub struct Preset {
    pub name: &'static str,
    pub dfa: BinaryDfa,
    pub expected: Expected,
}

fn e48_row() -> Vec<usize> {
    let mut a: Vec<usize> = (0..48).collect();
    for (q, p) in [
        (0, 18),
        (24, 18),
        (13, 14),
        (14, 13),
        (18, 24),
        (30, 32),
        (32, 30),
    ] {
        a[q] = p;
    }
    a
}

pub fn preset(name: &str) -> Result<Preset> {
    let cyclic = |a: Vec<usize>| BinaryDfa::with_cyclic_b(a).expect("preset rows are valid");
    let p = match name {
        "flipflop" => Preset {
            name: "flipflop",
            dfa: BinaryDfa::new(vec![0, 0], vec![1, 1]).expect("valid"),
            expected: Expected {
                completely_reachable: true,
                r_and_dupl: None,
                d1: None,
                h_chain: vec![],
                note: "two constant letters; the only completely reachable binary automaton without a cyclic letter",
            },
        },
        "e12prime" => Preset {
            name: "e12prime",
            dfa: cyclic(vec![10, 1, 2, 8, 4, 5, 10, 9, 3, 7, 6, 11]),
            expected: Expected {
                completely_reachable: true,
                r_and_dupl: Some((6, 10)),
                d1: Some(vec![4, 6, 10]),
                h_chain: vec![2, 1],
                note: "12 states, completely reachable with a disconnected Rystsov graph",
            },
        },
        "e48" => Preset {
            name: "e48",
            dfa: cyclic(e48_row()),
            expected: Expected {
                completely_reachable: true,
                r_and_dupl: Some((24, 18)),
                d1: Some(vec![18, 24, 42]),
                h_chain: vec![6, 2, 1],
                note: "48 states, the subgroup chain needs three levels",
            },
        },
        "e4inv" => Preset {
            name: "e4inv",
            dfa: cyclic(vec![2, 1, 2, 3]),
            expected: Expected {
                completely_reachable: false,
                r_and_dupl: Some((2, 2)),
                d1: Some(vec![2]),
                h_chain: vec![2, 2],
                note: "{0, 2} is a-invariant",
            },
        },
        other => {
            return Err(Error::InvalidArgument(format!(
                "unknown preset `{other}` (known: {})",
                PRESET_NAMES.join(", ")
            )))
        }
    };
    Ok(p)
}

/// Uniform over the `(n−1)·(n−1)!` standardized automata with `n` states.
pub fn random_standardized_with<R: Rng>(n: usize, rng: &mut R) -> Result<StandardizedDfa> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!(
            "random standardized automata need n >= 3, got {n}"
        )));
    }
    let r = rng.gen_range(1..n);
    let mut perm: Vec<usize> = (1..n).collect();
    perm.shuffle(rng);
    let mut a = Vec::with_capacity(n);
    a.push(perm[r - 1]);
    a.extend_from_slice(&perm);
    StandardizedDfa::from_a_row(a)
}

pub fn random_standardized(n: usize, seed: u64) -> Result<StandardizedDfa> {
    random_standardized_with(n, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// Both rows drawn uniformly from all maps `Z_n → Z_n`.
pub fn random_binary_dfa(n: usize, seed: u64) -> Result<BinaryDfa> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut row = || (0..n).map(|_| rng.gen_range(0..n)).collect::<Vec<_>>();
    let a = row();
    let b = row();
    BinaryDfa::new(a, b)
}

/// Renames states by a seeded random permutation, optionally swaps the two
/// letters, and optionally replaces the defect letter `a` by `b^k a`. The
/// result has the same complete-reachability status as the input.
pub fn scramble(dfa: &BinaryDfa, seed: u64) -> BinaryDfa {
    use crate::dfa::Letter;
    let n = dfa.n();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(&mut rng);
    let mut inv = vec![0; n];
    for (q, &p) in perm.iter().enumerate() {
        inv[p] = q;
    }
    // b^k a generates the same monoid only when b is a permutation
    let k = if dfa.letter_defect(Letter::B) == 0 {
        rng.gen_range(0..n)
    } else {
        0
    };
    let bk = row_power(dfa.delta(Letter::B), k);
    let a: Vec<usize> = (0..n).map(|q| dfa.step(bk[q], Letter::A)).collect();
    let b = dfa.delta(Letter::B);
    let rename = |row: &[usize]| (0..n).map(|p| perm[row[inv[p]]]).collect::<Vec<_>>();
    let (ra, rb) = (rename(&a), rename(b));
    if rng.gen_bool(0.5) {
        BinaryDfa::new(rb, ra).expect("valid rows")
    } else {
        BinaryDfa::new(ra, rb).expect("valid rows")
    }
}

/// The map `row^k` by repeated squaring.
fn row_power(row: &[usize], mut k: usize) -> Vec<usize> {
    let mut acc: Vec<usize> = (0..row.len()).collect();
    let mut base = row.to_vec();
    while k > 0 {
        if k & 1 == 1 {
            acc = acc.iter().map(|&q| base[q]).collect();
        }
        base = base.iter().map(|&q| base[q]).collect();
        k >>= 1;
    }
    acc
}
