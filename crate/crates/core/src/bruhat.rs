//! Bruhat orders on dominant weights, decided by breadth-first search from
//! the larger weight.
//!
//! Reductive: simple moves `(h·τ_ij)⁺` with `h(i) > h(j)`, `h(i)` not a
//! positive value and `h(j)` not a negative value. Super: moves
//! `(h - r(d_i - d_j))⁺`, lowering a matched pair `h(i) = h(j)` by `r >= 1`.
//! Both kinds of move lower the sorted negative block entrywise; simple moves
//! raise the sorted positive block and super moves lower it. Those monotone
//! bounds against the target prune the search.

use std::collections::{HashSet, VecDeque};

use crate::atypicality::super_pairs;
use crate::error::{Error, Result};
use crate::weight::{eps_weight, Flavor, Weight};

/// Default cap on the number of visited weights.
pub const DEFAULT_BUDGET: usize = 200_000;

/// `f ≤ g` (reductive) or `f ≼ g` (super).
pub fn bruhat_leq(f: &Weight, g: &Weight) -> Result<bool> {
    bruhat_leq_budget(f, g, DEFAULT_BUDGET)
}

pub fn bruhat_leq_budget(f: &Weight, g: &Weight, budget: usize) -> Result<bool> {
    if f.flavor != g.flavor || f.m() != g.m() || f.tail != g.tail || (!f.tail && f.len() != g.len()) {
        return Err(Error::Invalid(format!("{f} and {g} live in different windows")));
    }
    f.require_dominant()?;
    g.require_dominant()?;
    if f == g {
        return Ok(true);
    }
    if eps_weight(f) != eps_weight(g) {
        return Ok(false);
    }
    let mut seen: HashSet<Weight> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(g.clone());
    queue.push_back(g.clone());
    while let Some(h) = queue.pop_front() {
        let next = match f.flavor {
            Flavor::Reductive => simple_moves(&h, f),
            Flavor::Super => super_moves(&h, f),
        };
        for k in next {
            if k == *f {
                return Ok(true);
            }
            if seen.insert(k.clone()) {
                if seen.len() > budget {
                    return Err(Error::WindowExhausted(format!(
                        "Bruhat search from {g} visited more than {budget} weights"
                    )));
                }
                queue.push_back(k);
            }
        }
    }
    Ok(false)
}

/// Sorted blocks of `h` and `f` over a common number of positive positions.
fn aligned(h: &Weight, f: &Weight) -> (Vec<i64>, Vec<i64>) {
    let n = h.len().max(f.len());
    (h.materialized(n).pos, f.materialized(n).pos)
}

/// Whether `h` can still reach `f`: sorted negative entries only decrease;
/// sorted positive entries only increase (`rising`) or only decrease.
fn within_bounds(h: &Weight, f: &Weight, rising: bool) -> bool {
    if h.neg.iter().zip(&f.neg).any(|(a, b)| a < b) {
        return false;
    }
    let (hp, fp) = aligned(h, f);
    hp.iter().zip(&fp).all(|(a, b)| if rising { a <= b } else { a >= b })
}

fn simple_moves(h: &Weight, f: &Weight) -> Vec<Weight> {
    let lowest = *f.neg.last().expect("non-empty negative block");
    let reach = if h.tail { (1 - lowest).max(0) as usize } else { 0 };
    let hm = h.materialized(h.len().max(f.len()).max(reach));
    let m = hm.m() as i64;
    let mut out = Vec::new();
    for (a, &vi) in hm.neg.iter().enumerate() {
        if hm.pos_contains(vi) {
            continue;
        }
        for (b, &vj) in hm.pos.iter().enumerate() {
            if vj >= vi || vj < lowest || hm.neg_contains(vj) {
                continue;
            }
            let mut k = hm.clone();
            k.set(a as i64 - m, vj);
            k.set(b as i64 + 1, vi);
            if let Some(k) = k.dominant() {
                if within_bounds(&k, f, true) {
                    out.push(k);
                }
            }
        }
    }
    out
}

fn super_moves(h: &Weight, f: &Weight) -> Vec<Weight> {
    let lowest = *f.neg.last().expect("non-empty negative block");
    let reach = h.neg.iter().copied().max().unwrap_or(0).max(0) as usize;
    let hm = if h.tail {
        h.materialized(h.len().max(reach))
    } else {
        h.clone()
    };
    let mut out = Vec::new();
    for (i, j) in super_pairs(&hm) {
        let v = hm.get(i);
        for r in 1..=(v - lowest) {
            let mut k = hm.clone();
            k.set(i, v - r);
            k.set(j, v - r);
            if let Some(k) = k.dominant() {
                if within_bounds(&k, f, false) {
                    out.push(k);
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weight::w;
    use proptest::prelude::*;
    use Flavor::*;

    /// Closure of the elementary ↓ moves on finite super weights: lower a
    /// matched pair by one, or swap two entries of a block out of order.
    fn raw_super_leq(f: &Weight, g: &Weight) -> bool {
        let floor = f.neg.iter().chain(&f.pos).copied().min().unwrap();
        let target_sum = f.neg_sum();
        let mut seen = HashSet::new();
        let mut queue = VecDeque::from([g.clone()]);
        seen.insert(g.clone());
        while let Some(h) = queue.pop_front() {
            if h == *f {
                return true;
            }
            let mut next = Vec::new();
            let m = h.m() as i64;
            for a in 0..h.m() {
                for b in 0..h.len() {
                    if h.neg[a] == h.pos[b] {
                        let mut k = h.clone();
                        k.set(a as i64 - m, h.neg[a] - 1);
                        k.set(b as i64 + 1, h.pos[b] - 1);
                        next.push(k);
                    }
                }
                for b in a + 1..h.m() {
                    if h.neg[a] > h.neg[b] {
                        let mut k = h.clone();
                        k.neg.swap(a, b);
                        next.push(k);
                    }
                }
            }
            for a in 0..h.len() {
                for b in a + 1..h.len() {
                    if h.pos[a] < h.pos[b] {
                        let mut k = h.clone();
                        k.pos.swap(a, b);
                        next.push(k);
                    }
                }
            }
            for k in next {
                let low = k.neg.iter().chain(&k.pos).any(|&v| v < floor);
                if !low && k.neg_sum() >= target_sum && seen.insert(k.clone()) {
                    queue.push_back(k);
                }
            }
        }
        false
    }

    #[test]
    fn examples() {
        let f = w("2,1,0|3,0,-2", Reductive);
        assert!(bruhat_leq(&f, &f).unwrap());
        assert!(bruhat_leq(&w("2,0,-2|3,1,0", Reductive), &f).unwrap());
        assert!(!bruhat_leq(&f, &w("2,0,-2|3,1,0", Reductive)).unwrap());
        assert!(bruhat_leq(&w("0|0,2", Super), &w("1|1,2", Super)).unwrap());
        assert!(!bruhat_leq(&w("1|1,2", Super), &w("0|0,2", Super)).unwrap());
        let u = w("0,-1,-3,-4|-2,-1,0,*", Super);
        assert!(bruhat_leq(&w("-3,-4,-5,-6|-6,-5,-2,*", Super), &u).unwrap());
        assert!(bruhat_leq(&w("1,0|-2", Reductive), &w("1,0|-2", Reductive)).unwrap());
        assert!(bruhat_leq(&w("1|0", Reductive), &w("1|0,-1", Reductive)).is_err());
    }

    fn small_super_weights(m: usize, n: usize, lo: i64, hi: i64) -> Vec<Weight> {
        let blocks = |k: usize| -> Vec<Vec<i64>> {
            let mut out = vec![vec![]];
            for _ in 0..k {
                out = out
                    .into_iter()
                    .flat_map(|b: Vec<i64>| {
                        let start = b.last().map_or(lo, |l| l + 1);
                        (start..=hi).map(move |v| {
                            let mut c = b.clone();
                            c.push(v);
                            c
                        })
                    })
                    .collect();
            }
            out
        };
        let mut ws = Vec::new();
        for neg in blocks(m) {
            for pos in blocks(n) {
                ws.push(Weight::finite(Super, neg.iter().rev().copied().collect(), pos));
            }
        }
        ws
    }

    #[test]
    fn super_moves_match_elementary_moves() {
        for (m, n) in [(1, 2), (2, 1), (2, 2)] {
            let ws = small_super_weights(m, n, -2, 2);
            for f in &ws {
                for g in &ws {
                    if eps_weight(f) == eps_weight(g) {
                        assert_eq!(bruhat_leq(f, g).unwrap(), raw_super_leq(f, g), "{f} vs {g}");
                    }
                }
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1500))]
        #[test]
        fn reductive_order_is_antisymmetric(
            a in prop::collection::btree_set(-3i64..=3, 2),
            b in prop::collection::btree_set(-3i64..=3, 2),
            perm in prop::collection::vec(0usize..4, 4),
        ) {
            // Two dominant weights with the same values.
            let vals: Vec<i64> = a.iter().chain(b.iter()).copied().collect();
            let mut v2 = vals.clone();
            for (k, p) in perm.iter().enumerate() {
                v2.swap(k, *p);
            }
            let mk = |v: &[i64]| Weight::finite(Reductive, v[..2].to_vec(), v[2..].to_vec()).dominant();
            if let (Some(f), Some(g)) = (mk(&vals), mk(&v2)) {
                let fg = bruhat_leq(&f, &g).unwrap();
                let gf = bruhat_leq(&g, &f).unwrap();
                prop_assert!(!(fg && gf) || f == g);
            }
        }
    }
}
