//! Degrees of atypicality: `#f` for super weights, the pair sets `Σ⁺_f`,
//! `Σ⁻_f` and `⋇f = |Σ⁺_f|` for reductive weights, and the Jantzen
//! irreducibility predicate.
//!
//! `Σ⁺_f` is assembled by distance: at distance `k` every eligible pair
//! `(i|j)` with `f(i) - f(j) = k` that shares no index with a pair placed at a
//! smaller distance is added. Eligibility of `(i|j)` means `f(i)` is not a
//! positive-side value and `f(j)` is not a negative-side value. For
//! profinite weights the tail is materialized far enough that every
//! eligible negative entry meets its partner (see [`sigma_window`]).

use std::collections::BTreeSet;
use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::weight::{Flavor, HighestWeight, Weight};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PairKind {
    Positive,
    Negative,
}

/// A set of pairs `(i|j)` with `i < 0 < j`, sorted by `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PairSet {
    pub kind: PairKind,
    pub pairs: Vec<(i64, i64)>,
}

impl PairSet {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// The partner `j` of `i`, if `i` occurs.
    pub fn partner(&self, i: i64) -> Option<i64> {
        self.pairs.iter().find(|p| p.0 == i).map(|p| p.1)
    }

    pub fn to_json(&self) -> Value {
        json!(self.pairs.iter().map(|&(i, j)| json!([i, j])).collect::<Vec<_>>())
    }
}

impl fmt::Display for PairSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.pairs.iter().map(|(i, j)| format!("({i}|{j})")).collect();
        write!(f, "{{{}}}", items.join(","))
    }
}

/// Atypical pairs `(i|j)` of a super weight, `f(i) = f(j)`, ordered by `i`
/// ascending; `j` may lie in the tail.
pub fn super_pairs(f: &Weight) -> Vec<(i64, i64)> {
    debug_assert_eq!(f.flavor, Flavor::Super);
    let m = f.m() as i64;
    (0..f.m())
        .filter_map(|k| {
            let i = k as i64 - m;
            f.pos_position(f.neg[k]).map(|j| (i, j))
        })
        .collect()
}

/// `#f`: the number of values shared by the two blocks, tail included.
pub fn super_atypicality(f: &Weight) -> usize {
    super_pairs(f).len()
}

/// Number of positive positions to materialize so that `Σ⁺` of a profinite
/// reductive weight is complete: every value below the smallest stored value
/// is a tail value that is not a negative entry, so `m` further tail entries
/// close every open negative entry.
pub fn sigma_window(f: &Weight) -> usize {
    if !f.tail {
        return f.len();
    }
    let lo = f
        .neg
        .iter()
        .chain(f.pos.iter())
        .copied()
        .min()
        .unwrap_or(0)
        .min(-(f.len() as i64));
    let reach = f.m() as i64 + 2 - lo;
    f.len().max(reach as usize)
}

fn sigma(f: &Weight, kind: PairKind) -> PairSet {
    debug_assert_eq!(f.flavor, Flavor::Reductive);
    let g = match kind {
        PairKind::Positive => f.materialized(sigma_window(f)),
        // Partners of a negative pair exceed an eligible value, so they lie in
        // the stored prefix.
        PairKind::Negative => f.clone(),
    };
    let m = g.m() as i64;
    let mut cands: Vec<(i64, i64, i64)> = Vec::new();
    for (a, &vi) in g.neg.iter().enumerate() {
        if g.pos_contains(vi) {
            continue;
        }
        for (b, &vj) in g.pos.iter().enumerate() {
            if g.neg_contains(vj) {
                continue;
            }
            let d = match kind {
                PairKind::Positive => vi - vj,
                PairKind::Negative => vj - vi,
            };
            if d > 0 {
                cands.push((d, a as i64 - m, b as i64 + 1));
            }
        }
    }
    cands.sort_unstable();
    let mut used_i = BTreeSet::new();
    let mut used_j = BTreeSet::new();
    let mut pairs = Vec::new();
    let mut start = 0;
    while start < cands.len() {
        let d = cands[start].0;
        let end = start + cands[start..].iter().take_while(|c| c.0 == d).count();
        let level: Vec<(i64, i64)> = cands[start..end]
            .iter()
            .filter(|c| !used_i.contains(&c.1) && !used_j.contains(&c.2))
            .map(|c| (c.1, c.2))
            .collect();
        for &(i, j) in &level {
            debug_assert!(used_i.insert(i) && used_j.insert(j), "pairs at one distance overlap");
            used_i.insert(i);
            used_j.insert(j);
        }
        pairs.extend(level);
        start = end;
    }
    pairs.sort_unstable();
    PairSet { kind, pairs }
}

/// `Σ⁺_f` of a reductive weight conjugate to a dominant one.
pub fn sigma_plus(f: &Weight) -> PairSet {
    sigma(f, PairKind::Positive)
}

/// `Σ⁻_f` of a reductive weight conjugate to a dominant one.
pub fn sigma_minus(f: &Weight) -> PairSet {
    sigma(f, PairKind::Negative)
}

/// `⋇f = |Σ⁺_f|`.
pub fn j_atypicality(f: &Weight) -> usize {
    sigma_plus(f).len()
}

/// Negative entries whose value is not a positive-side value.
pub fn unmatched_negatives(f: &Weight) -> usize {
    f.neg.iter().filter(|&&v| !f.pos_contains(v)).count()
}

/// Whether the generalized Verma module of the reductive highest weight `λ`
/// is irreducible. Finite `n`: no `i < 0 < j` with `f(i) > f(j)`, `f(i)` not
/// a positive value and `f(j)` not a negative value. Infinite: every
/// negative-side value is a positive-side value.
pub fn jantzen_irreducible(lambda: &HighestWeight) -> Result<bool> {
    if lambda.flavor != Flavor::Reductive {
        return Err(Error::Invalid(
            "the Jantzen criterion is stated for reductive weights".into(),
        ));
    }
    let f = lambda.to_f()?;
    if f.tail {
        return Ok(unmatched_negatives(&f) == 0);
    }
    Ok(!f
        .neg
        .iter()
        .any(|&vi| !f.pos_contains(vi) && f.pos.iter().any(|&vj| vi > vj && !f.neg_contains(vj))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weight::w;
    use proptest::prelude::*;
    use Flavor::*;

    /// Distance recursion read literally: at each k, the eligible pairs at
    /// distance k disjoint from every earlier level.
    fn sigma_literal(f: &Weight, window: usize) -> Vec<(i64, i64)> {
        let g = f.materialized(window);
        let m = g.m() as i64;
        let a: Vec<(i64, i64, i64)> = (0..g.m())
            .flat_map(|x| (0..g.len()).map(move |y| (x, y)))
            .filter_map(|(x, y)| {
                let (vi, vj) = (g.neg[x], g.pos[y]);
                (vi > vj && !g.pos_contains(vi) && !g.neg_contains(vj)).then_some((vi - vj, x as i64 - m, y as i64 + 1))
            })
            .collect();
        let mut placed: Vec<(i64, i64)> = Vec::new();
        for k in 1..=a.iter().map(|t| t.0).max().unwrap_or(0) {
            let level: Vec<(i64, i64)> = a
                .iter()
                .filter(|t| t.0 == k)
                .filter(|t| placed.iter().all(|p| p.0 != t.1 && p.1 != t.2))
                .map(|t| (t.1, t.2))
                .collect();
            placed.extend(level);
        }
        placed.sort_unstable();
        placed
    }

    #[test]
    fn super_examples() {
        assert_eq!(super_atypicality(&w("0,-1,-3,-4|-2,-1,0", Super)), 2);
        assert_eq!(super_atypicality(&w("0,-2|-2,0,3,4,*", Super)), 2);
        assert_eq!(super_atypicality(&w("5,4|1,2", Super)), 0);
        assert_eq!(super_pairs(&w("0,-1,-3,-4|-2,-1,0,*", Super)), vec![(-4, 3), (-3, 2)]);
        // A negative entry meeting the tail.
        assert_eq!(super_pairs(&w("7,-1|*", Super)), vec![(-2, 7)]);
    }

    #[test]
    fn sigma_examples() {
        let f = w("2,1,0|3,0,-2", Reductive);
        assert_eq!(sigma_plus(&f).pairs, vec![(-2, 3)]);
        assert_eq!(j_atypicality(&f), 1);
        assert_eq!(j_atypicality(&w("0,-1,-3,-4|3,2,1", Reductive)), 0);
        let fn_ = w("0,-1,-3,-4|3,2,1,-3,-4,-5,-6,*", Reductive);
        assert_eq!(j_atypicality(&fn_), 2);
        assert_eq!(
            sigma_minus(&w("-2,-4|2,1,0,-1,-3,-5,*", Reductive)).pairs,
            vec![(-2, 4), (-1, 5)]
        );
        assert!(sigma_plus(&w("1,0|3,2", Reductive)).is_empty());
    }

    #[test]
    fn sigma_minus_mirrors_sigma_plus() {
        let f = w("2,1,0|3,0,-2", Reductive);
        let (m, n) = (f.m() as i64, f.len() as i64);
        let mirrored: BTreeSet<(i64, i64)> = sigma_plus(&f)
            .pairs
            .iter()
            .map(|&(i, j)| (-m - i - 1, n - j + 1))
            .collect();
        let minus: BTreeSet<(i64, i64)> = sigma_minus(&f.neg_w0()).pairs.into_iter().collect();
        assert_eq!(minus, mirrored);
    }

    #[test]
    fn jantzen_examples() {
        let reducible = HighestWeight::from_f(&w("3|1,0,-2,*", Reductive));
        assert!(!jantzen_irreducible(&reducible).unwrap());
        // λ = 0 in the profinite setting: f(-1) = 1 is not a positive value.
        let zero = HighestWeight::new(Reductive, vec![0], vec![], true);
        assert!(!jantzen_irreducible(&zero).unwrap());
        assert_eq!(j_atypicality(&zero.to_f().unwrap()), 1);
        let typical = HighestWeight::from_f(&w("1,0|3,2", Reductive));
        assert!(jantzen_irreducible(&typical).unwrap());
    }

    fn arb_red(tail: bool) -> impl Strategy<Value = Weight> {
        (
            prop::collection::btree_set(-6i64..=6, 1..4),
            prop::collection::btree_set(-6i64..=6, 0..6),
        )
            .prop_map(move |(n, p)| {
                Weight::new(
                    Reductive,
                    n.into_iter().rev().collect(),
                    p.into_iter().rev().collect(),
                    tail,
                )
            })
            .prop_filter("dominant", |f| f.is_dominant())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(2000))]
        #[test]
        fn sigma_matches_literal_recursion(f in arb_red(false)) {
            prop_assert_eq!(sigma_plus(&f).pairs, sigma_literal(&f, f.len()));
        }

        #[test]
        fn profinite_sigma_is_stable(f in arb_red(true)) {
            let s = sigma_plus(&f);
            let wide = sigma_literal(&f, sigma_window(&f) + 7);
            prop_assert_eq!(&s.pairs, &wide);
            prop_assert_eq!(s.len(), unmatched_negatives(&f));
            prop_assert!(s.len() <= f.m());
        }

        #[test]
        fn pairs_are_disjoint(f in arb_red(false)) {
            for s in [sigma_plus(&f), sigma_minus(&f)] {
                let is: BTreeSet<_> = s.pairs.iter().map(|p| p.0).collect();
                let js: BTreeSet<_> = s.pairs.iter().map(|p| p.1).collect();
                prop_assert_eq!(is.len(), s.len());
                prop_assert_eq!(js.len(), s.len());
            }
            prop_assert!(j_atypicality(&f) <= f.m().min(f.len()));
        }
    }
}
