//! Subgroups of `(Z_n, +)`.
//!
//! Every subgroup of `Z_n` is `⟨d⟩` for a unique divisor `d` of `n`, so a
//! subgroup is carried around as that generator: `⟨n⟩ = {0}`, `⟨1⟩ = Z_n`,
//! and `⟨d⟩ ⊆ ⟨e⟩` iff `e | d`.

use num_integer::Integer;

pub fn gcd(a: usize, b: usize) -> usize {
    a.gcd(&b)
}

/// Canonical generator of the subgroup generated by `elems` in `Z_n`.
pub fn subgroup_generator<I: IntoIterator<Item = usize>>(n: usize, elems: I) -> usize {
    elems.into_iter().fold(n, gcd)
}

/// Divisors `d` of `n` with `1 < d < n`, ascending, found by trial division up
/// to `√n`.
pub fn nontrivial_divisors(n: usize) -> Vec<usize> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// `q ∈ ⟨g⟩` in `Z_n`, with `g | n`.
#[inline]
pub fn in_subgroup(q: usize, g: usize) -> bool {
    q.is_multiple_of(g)
}

/// Prime factors counted with multiplicity.
pub fn omega(mut n: usize) -> usize {
    let mut count = 0;
    let mut p = 2;
    while p * p <= n {
        while n.is_multiple_of(p) {
            n /= p;
            count += 1;
        }
        p += 1;
    }
    if n > 1 {
        count += 1;
    }
    count
}
