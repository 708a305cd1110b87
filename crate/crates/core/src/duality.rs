//! The super duality map `♮` and the checks that it matches the reductive and
//! super combinatorics.
//!
//! `♮` keeps the negative block of the highest weight and conjugates the
//! partition on the positive side. On labels: the positive values of a
//! profinite reductive weight are the vertical labels `λ_i - i + 1` of that
//! partition, the positive values of its image are the horizontal labels
//! `i - λ'_i`, and the two label sets partition `ℤ`.

use std::collections::BTreeSet;

use serde_json::{json, Value};

use crate::atypicality::{super_atypicality, unmatched_negatives};
use crate::bases::{red_candidates, red_canonical, red_kl_l, super_candidates, super_canonical, super_kl_l, Window};
use crate::bruhat::bruhat_leq;
use crate::error::{Error, Result};
use crate::weight::{Flavor, HighestWeight, Weight};

/// A partition; parts weakly decreasing and positive.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<i64>);

impl Partition {
    pub fn new(mut parts: Vec<i64>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) || parts.iter().any(|&p| p < 0) {
            return Err(Error::Invalid(format!("{parts:?} is not a partition")));
        }
        Ok(Partition(parts))
    }

    pub fn parts(&self) -> &[i64] {
        &self.0
    }

    /// `λ_i`, zero past the last part (1-based).
    pub fn part(&self, i: usize) -> i64 {
        self.0.get(i - 1).copied().unwrap_or(0)
    }

    pub fn size(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn length(&self) -> usize {
        self.0.len()
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.0.first().copied().unwrap_or(0);
        Partition(
            (1..=width)
                .map(|c| self.0.iter().filter(|&&p| p >= c).count() as i64)
                .collect(),
        )
    }

    /// `{λ_i - i + 1 : 1 <= i <= count}`.
    pub fn v_labels(&self, count: usize) -> Vec<i64> {
        (1..=count).map(|i| self.part(i) - i as i64 + 1).collect()
    }

    /// `{i - λ'_i : 1 <= i <= count}`.
    pub fn h_labels(&self, count: usize) -> Vec<i64> {
        let c = self.conjugate();
        (1..=count).map(|i| i as i64 - c.part(i)).collect()
    }

    /// All partitions with at most `rows` parts, each at most `cols`.
    pub fn in_box(rows: usize, cols: i64) -> Vec<Partition> {
        let mut out = vec![Vec::new()];
        for _ in 0..rows {
            let mut next = Vec::new();
            for p in &out {
                let cap = p.last().copied().unwrap_or(cols);
                for v in 0..=cap {
                    let mut q = p.clone();
                    q.push(v);
                    next.push(q);
                }
            }
            out = next;
        }
        let set: BTreeSet<Partition> = out
            .into_iter()
            .map(|p| Partition::new(p).expect("weakly decreasing"))
            .collect();
        set.into_iter().collect()
    }
}

fn require_profinite(f: &Weight, flavor: Flavor) -> Result<()> {
    if f.flavor != flavor || !f.tail {
        return Err(Error::Invalid(format!(
            "♮ acts on profinite {} weights, got {f}",
            flavor.name()
        )));
    }
    f.require_dominant()
}

fn conjugate_side(f: &Weight, to: Flavor) -> Result<Weight> {
    let lambda = HighestWeight::from_f(f);
    let conj = Partition::new(lambda.pos.clone())?.conjugate();
    HighestWeight::new(to, lambda.neg, conj.0, true).to_f()
}

/// `f ↦ f♮`, reductive to super.
pub fn natural_map(f: &Weight) -> Result<Weight> {
    require_profinite(f, Flavor::Reductive)?;
    conjugate_side(f, Flavor::Super)
}

/// `f♮ ↦ f`, super to reductive.
pub fn natural_inv(f: &Weight) -> Result<Weight> {
    require_profinite(f, Flavor::Super)?;
    conjugate_side(f, Flavor::Reductive)
}

/// `f♮` from labels: its positive values enumerate, increasingly, the
/// integers that are not positive values of `f`.
pub fn natural_via_labels(f: &Weight) -> Result<Weight> {
    require_profinite(f, Flavor::Reductive)?;
    let p = f.len() as i64;
    // Values <= -p all lie in the reductive tail; past the top of the prefix
    // the complement is consecutive and meets the super tail.
    let top = f.pos.first().copied().unwrap_or(0).max(0) + p + 2;
    let taken: BTreeSet<i64> = f.pos.iter().copied().collect();
    let pos: Vec<i64> = (1 - p..=top).filter(|v| !taken.contains(v)).collect();
    debug_assert_eq!(pos.last(), Some(&(pos.len() as i64)));
    Ok(Weight::profinite(Flavor::Super, f.neg.clone(), pos))
}

/// `⋇f == #f♮`.
pub fn verify_atypicality_match(f: &Weight) -> Result<bool> {
    Ok(unmatched_negatives(f) == super_atypicality(&natural_map(f)?))
}

/// `g ≤ f` (reductive) iff `g♮ ≼ f♮` (super).
pub fn verify_bruhat_match(f: &Weight, g: &Weight) -> Result<bool> {
    let red = bruhat_leq(g, f)?;
    let sup = bruhat_leq(&natural_map(g)?, &natural_map(f)?)?;
    Ok(red == sup)
}

/// Outcome of comparing the Kazhdan–Lusztig data of `f` and `f♮`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KlReport {
    pub weight: Weight,
    pub mismatches: Vec<String>,
}

impl KlReport {
    pub fn matched(&self) -> bool {
        self.mismatches.is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "weight": self.weight.to_json(),
            "matched": self.matched(),
            "mismatches": self.mismatches,
        })
    }
}

/// Compares `⋇f` with `#f♮`, `𝒰_f` with `U_{f♮}` termwise through `♮`, and,
/// when `dual` is given, `𝔩_{g,f}` with `ℓ_{g♮,f♮}` on the candidates of both
/// sides within that window.
pub fn verify_kl_match(f: &Weight, dual: Option<Window>) -> Result<KlReport> {
    let fs = natural_map(f)?;
    let mut mismatches = Vec::new();
    let (a, b) = (unmatched_negatives(f), super_atypicality(&fs));
    if a != b {
        mismatches.push(format!("J-atypicality {a} but atypicality of {fs} is {b}"));
    }
    let red = red_canonical(f)?;
    let sup = super_canonical(&fs)?;
    let mapped = red.map_weights(|g| natural_map(g).ok());
    if mapped.len() != red.len() {
        mismatches.push(format!("♮ failed on a term of 𝒰_{f}"));
    }
    if mapped != sup {
        mismatches.push(format!("𝒰_{f} maps to {mapped}, but U_{fs} = {sup}"));
    }
    if let Some(window) = dual {
        let mut targets: BTreeSet<Weight> = red_candidates(f, window).into_iter().collect();
        for g in super_candidates(&fs, window) {
            targets.insert(natural_inv(&g)?);
        }
        for g in targets {
            let gs = natural_map(&g)?;
            let (x, y) = (red_kl_l(&g, f)?, super_kl_l(&gs, &fs)?);
            if x != y {
                mismatches.push(format!("𝔩 at {g} is {x}, ℓ at {gs} is {y}"));
            }
        }
    }
    Ok(KlReport {
        weight: f.clone(),
        mismatches,
    })
}

/// Profinite reductive dominant weights with `m` negative entries and every
/// non-tail entry in `[lo, hi]`, prefixes of length at most `max_prefix`.
pub fn profinite_reductive_sweep(m: usize, lo: i64, hi: i64, max_prefix: usize) -> Vec<Weight> {
    let negs = decreasing_runs(m, lo, hi);
    let mut out = BTreeSet::new();
    for p in 0..=max_prefix {
        for pos in decreasing_runs(p, lo, hi) {
            for neg in &negs {
                let f = Weight::profinite(Flavor::Reductive, neg.clone(), pos.clone());
                // Normalization shortens prefixes that end on the tail.
                if f.is_dominant() && f.len() == p {
                    out.insert(f);
                }
            }
        }
    }
    out.into_iter().collect()
}

/// Strictly decreasing sequences of length `k` with entries in `[lo, hi]`.
pub fn decreasing_runs(k: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|r: Vec<i64>| {
                let top = r.last().map_or(hi, |l| l - 1);
                (lo..=top).rev().map(move |v| {
                    let mut s = r.clone();
                    s.push(v);
                    s
                })
            })
            .collect();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bases::red_kl_l;
    use crate::ops::{red_theta, super_theta, Composite};
    use crate::truncation::trunc_expansion;
    use crate::weight::w;
    use crate::LaurentPoly;
    use proptest::prelude::*;
    use Flavor::*;

    #[test]
    fn partitions() {
        let l = Partition::new(vec![5, 3, 2, 2]).unwrap();
        assert_eq!(l.conjugate().parts(), &[4, 4, 2, 1, 1]);
        assert_eq!(Partition::default().conjugate(), Partition::default());
        assert_eq!(l.v_labels(6), vec![5, 2, 0, -1, -4, -5]);
        assert_eq!(l.h_labels(7), vec![-3, -2, 1, 3, 4, 6, 7]);
        assert_eq!(Partition::default().v_labels(3), vec![0, -1, -2]);
        assert_eq!(Partition::default().h_labels(3), vec![1, 2, 3]);
        assert_eq!(Partition::in_box(4, 2).len(), 15);
        assert!(Partition::new(vec![1, 2]).is_err());
    }

    #[test]
    fn natural_examples() {
        let f = w("0,-1,-3,-4|3,2,1,-3,-4,-5,-6,*", Reductive);
        let fs = w("0,-1,-3,-4|-2,-1,0,*", Super);
        assert_eq!(natural_map(&f).unwrap(), fs);
        assert_eq!(natural_inv(&fs).unwrap(), f);
        assert_eq!(
            natural_map(&w("3|1,0,-2,*", Reductive)).unwrap(),
            w("3|-1,2,3,*", Super)
        );
        assert_eq!(natural_map(&w("1|*", Reductive)).unwrap(), w("1|*", Super));
        assert!(verify_atypicality_match(&f).unwrap());
        assert!(natural_map(&w("1|0", Reductive)).is_err());
    }

    #[test]
    fn golden_kl_match() {
        let f = w("0,-1,-3,-4|3,2,1,-3,-4,-5,-6,*", Reductive);
        assert!(verify_kl_match(&f, None).unwrap().matched());
        let f = w("0,-2|2,1,-1,-3,*", Reductive);
        let g = w("-2,-4|2,1,0,-1,-3,-5,*", Reductive);
        let (fs, gs) = (natural_map(&f).unwrap(), natural_map(&g).unwrap());
        assert_eq!(fs, w("0,-2|-2,0,*", Super));
        assert_eq!(gs, w("-2,-4|-4,-2,*", Super));
        let l = red_kl_l(&g, &f).unwrap();
        assert_eq!(l, super_kl_l(&gs, &fs).unwrap());
        assert_eq!(l.subst_neg_inv(), LaurentPoly::from_pairs([(2, 1), (4, 1)]));
        let report = verify_kl_match(&f, Some(Window { slack: 3 })).unwrap();
        assert!(report.matched(), "{:?}", report.mismatches);
    }

    #[test]
    fn finite_windows_do_not_correspond() {
        let f = w("0,-1,-3,-4|3,2,1,-3,-4,-5,-6,*", Reductive);
        let fs = natural_map(&f).unwrap();
        assert_eq!(trunc_expansion(&red_canonical(&f).unwrap(), 3).len(), 1);
        assert_eq!(trunc_expansion(&super_canonical(&fs).unwrap(), 3).len(), 4);
    }

    #[test]
    fn bruhat_examples() {
        let f = w("0,-1,-3,-4|3,2,1,-3,-4,-5,-6,*", Reductive);
        assert!(verify_bruhat_match(&f, &f).unwrap());
        let g = red_theta(&f, &[1, 0, 0, 0], Composite::L).unwrap();
        assert!(verify_bruhat_match(&f, &g).unwrap());
        assert!(verify_bruhat_match(&g, &f).unwrap());
    }

    #[test]
    fn index_sets_correspond() {
        for f in profinite_reductive_sweep(2, -2, 2, 3) {
            let fs = natural_map(&f).unwrap();
            let m = f.m();
            let k = super_atypicality(&fs);
            let mut red: Vec<(Weight, u32)> = (0u32..1 << m)
                .filter_map(|mask| {
                    let theta: Vec<u32> = (0..m).map(|b| mask >> b & 1).collect();
                    red_theta(&f, &theta, Composite::L).map(|g| (natural_map(&g).unwrap(), mask.count_ones()))
                })
                .collect();
            let mut sup: Vec<(Weight, u32)> = (0u32..1 << k)
                .map(|mask| {
                    let theta: Vec<u32> = (0..k).map(|b| mask >> b & 1).collect();
                    (
                        super_theta(&fs, &theta, Composite::L).unwrap().unwrap(),
                        mask.count_ones(),
                    )
                })
                .collect();
            red.sort();
            sup.sort();
            assert_eq!(red, sup, "{f}");
        }
    }

    fn arb_profinite() -> impl Strategy<Value = Weight> {
        (
            prop::collection::btree_set(-6i64..=6, 1..4),
            prop::collection::btree_set(-6i64..=6, 0..6),
        )
            .prop_map(|(n, p)| {
                Weight::profinite(Reductive, n.into_iter().rev().collect(), p.into_iter().rev().collect())
            })
            .prop_filter("dominant", |f| f.is_dominant())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn natural_routes_agree(f in arb_profinite()) {
            let fs = natural_map(&f).unwrap();
            prop_assert_eq!(&natural_via_labels(&f).unwrap(), &fs);
            prop_assert_eq!(&natural_inv(&fs).unwrap(), &f);
            prop_assert!(verify_atypicality_match(&f).unwrap());
        }

        #[test]
        fn labels_partition_the_integers(parts in prop::collection::vec(0i64..7, 0..6)) {
            let mut parts = parts;
            parts.sort_unstable_by(|a, b| b.cmp(a));
            let l = Partition::new(parts).unwrap();
            prop_assert_eq!(l.conjugate().conjugate(), l.clone());
            let count = 20;
            let v: BTreeSet<i64> = l.v_labels(count).into_iter().collect();
            let h: BTreeSet<i64> = l.h_labels(count).into_iter().collect();
            prop_assert!(v.is_disjoint(&h));
            for x in -8..=8 {
                prop_assert!(v.contains(&x) || h.contains(&x), "{} missing", x);
            }
        }

        #[test]
        fn kl_data_match(f in arb_profinite()) {
            let report = verify_kl_match(&f, None).unwrap();
            prop_assert!(report.matched(), "{:?}", report.mismatches);
        }
    }
}
