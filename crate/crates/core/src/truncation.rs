//! Truncation between windows, sufficient window sizes and the shift by
//! `p·1`.
//!
//! Truncating to `n` keeps a weight iff every positive position past `n`
//! carries its tail value (`k` super, `1 - k` reductive), and kills it
//! otherwise; expansions are truncated termwise.

use crate::atypicality::{j_atypicality, super_atypicality, unmatched_negatives};
use crate::expansion::Expansion;
use crate::weight::{Flavor, Weight};

/// The least `n` at which a profinite weight is faithfully represented by its
/// first `n` positive entries: super, the prefix plus every position matched
/// by a negative entry (so `#f^{(n)} = #f`); reductive, the least `n` past the
/// prefix with `⋇f^{(n)} = ⋇f`. Finite weights return their length.
pub fn sufficient_n(f: &Weight) -> usize {
    if !f.tail {
        return f.len();
    }
    match f.flavor {
        Flavor::Super => {
            let reach = f.neg.iter().copied().max().unwrap_or(0).max(0) as usize;
            let n = f.len().max(reach);
            debug_assert_eq!(super_atypicality(&f.finite_window(n)), super_atypicality(f));
            n
        }
        Flavor::Reductive => {
            let want = unmatched_negatives(f);
            (f.len()..)
                .find(|&n| j_atypicality(&f.finite_window(n)) == want)
                .expect("⋇ stabilizes")
        }
    }
}

/// `f^{(n)}`, or `None` if some position past `n` is off its tail value.
pub fn trunc_weight(f: &Weight, n: usize) -> Option<Weight> {
    if f.len() <= n {
        return if f.tail {
            Some(f.finite_window(n))
        } else if f.len() == n {
            Some(f.clone())
        } else {
            None
        };
    }
    let keeps = f.pos[n..]
        .iter()
        .enumerate()
        .all(|(k, &v)| v == f.flavor.tail_value((n + k + 1) as i64));
    if !keeps {
        return None;
    }
    if f.tail {
        // A normalized prefix ends off its tail value.
        return None;
    }
    Some(Weight::finite(f.flavor, f.neg.clone(), f.pos[..n].to_vec()))
}

/// Termwise truncation of an expansion.
pub fn trunc_expansion(x: &Expansion, n: usize) -> Expansion {
    x.map_weights(|w| trunc_weight(w, n))
}

/// `f - p·1`.
pub fn shift_weight(f: &Weight, p: i64) -> Weight {
    f.shifted(p)
}

/// The least `p >= 0` with `(f - p·1)(n) <= n`, which makes the tail
/// extension of a finite super weight dominant.
pub fn min_shift(f: &Weight) -> i64 {
    match f.pos.last() {
        Some(&v) => (v - f.len() as i64).max(0),
        None => 0,
    }
}

/// The profinite weight whose window `f.len()` is the finite super weight
/// `f`; requires `f(n) <= n`.
pub fn tail_extension(f: &Weight) -> Weight {
    debug_assert!(!f.tail && min_shift(f) == 0);
    Weight::profinite(f.flavor, f.neg.clone(), f.pos.clone())
}
