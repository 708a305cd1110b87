//! Weight-moving operators.
//!
//! Super side: `L_{i,j}` lowers the matched entries `f(i) = f(j)` by the
//! least `a >= 1` keeping the weight conjugate-dominant, subject to the same
//! requirement for every inner image `L_{k,l}(f)` (`i < k < 0 < l < j`)
//! shifted by the same amount; `R_{i,j}` raises by the least admissible `b`
//! with the outer pairs (`k < i`, `l > j`) in the nested clause.
//!
//! Reductive side: `𝕃_i` / `ℝ_i` swap `f(i)` with the value at its partner in
//! `Σ⁺_f` / `Σ⁻_f`, recomputed on the current (unsorted) weight.
//!
//! Composites fix the pair positions on the starting dominant weight, apply
//! the factors to unsorted intermediates and sort once at the end.

use std::collections::HashMap;

use crate::atypicality::{sigma_minus, sigma_plus, super_pairs};
use crate::error::{Error, Result};
use crate::expansion::Expansion;
use crate::poly::LaurentPoly;
use crate::truncation::sufficient_n;
use crate::weight::{Flavor, Weight};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Dir {
    Lower,
    Raise,
}

fn super_move(f: &Weight, i: i64, j: i64, dir: Dir, memo: &mut HashMap<(i64, i64), Weight>) -> Result<Weight> {
    if let Some(r) = memo.get(&(i, j)) {
        return Ok(r.clone());
    }
    let v = f.get(i);
    if v != f.get(j) || i >= 0 || j <= 0 {
        return Err(Error::Invalid(format!("({i}|{j}) is not an atypical pair of {f}")));
    }
    let related: Vec<(i64, i64)> = super_pairs(f)
        .into_iter()
        .filter(|&(k, l)| match dir {
            Dir::Lower => i < k && l < j,
            Dir::Raise => k < i && l > j,
        })
        .collect();
    let mut images = Vec::with_capacity(related.len());
    for (k, l) in related {
        images.push(super_move(f, k, l, dir, memo)?);
    }
    let values = || {
        images
            .iter()
            .chain(std::iter::once(f))
            .flat_map(|h| h.neg.iter().chain(h.pos.iter()).copied())
    };
    let cap = match dir {
        Dir::Lower => v - values().min().unwrap_or(v) + 2,
        Dir::Raise => values().max().unwrap_or(v) - v + 2,
    };
    let moved = |h: &Weight, a: i64| {
        let d = if dir == Dir::Lower { -a } else { a };
        let mut g = h.clone();
        g.set(i, h.get(i) + d);
        g.set(j, h.get(j) + d);
        g
    };
    for a in 1..=cap {
        let g = moved(f, a);
        if g.is_conj_dominant() && images.iter().all(|h| moved(h, a).is_conj_dominant()) {
            memo.insert((i, j), g.clone());
            return Ok(g);
        }
    }
    Err(Error::WindowExhausted(format!(
        "no admissible shift for ({i}|{j}) on {f}"
    )))
}

/// Materializes enough of a profinite super weight that every atypical
/// partner lies in the stored prefix.
fn prepared(f: &Weight) -> Weight {
    let reach = f.neg.iter().copied().max().unwrap_or(0).max(0) as usize;
    if f.tail {
        f.materialized(f.len().max(reach))
    } else {
        f.clone()
    }
}

/// `L_{i,j}(f)`, unsorted.
pub fn super_l(f: &Weight, i: i64, j: i64) -> Result<Weight> {
    super_move(&prepared(f), i, j, Dir::Lower, &mut HashMap::new())
}

/// `R_{i,j}(f)` for a finite weight, unsorted.
pub fn super_r(f: &Weight, i: i64, j: i64) -> Result<Weight> {
    if f.tail {
        return Err(Error::Invalid("single R moves act on finite windows".into()));
    }
    super_move(f, i, j, Dir::Raise, &mut HashMap::new())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Composite {
    /// Pair 1 (outermost) first.
    L,
    /// Pair `k` (innermost) first.
    LPrime,
    /// Pair `k` first.
    R,
    /// Pair 1 first.
    RPrime,
}

impl Composite {
    fn lowers(self) -> bool {
        matches!(self, Composite::L | Composite::LPrime)
    }

    fn outer_first(self) -> bool {
        matches!(self, Composite::L | Composite::RPrime)
    }
}

fn super_theta_finite(f: &Weight, theta: &[u32], kind: Composite) -> Result<Weight> {
    let pairs = super_pairs(f);
    if pairs.len() != theta.len() {
        return Err(Error::Invalid(format!(
            "θ has {} entries but {f} has atypicality {}",
            theta.len(),
            pairs.len()
        )));
    }
    let order: Vec<usize> = if kind.outer_first() {
        (0..pairs.len()).collect()
    } else {
        (0..pairs.len()).rev().collect()
    };
    let dir = if kind.lowers() { Dir::Lower } else { Dir::Raise };
    let mut cur = f.clone();
    for l in order {
        let (i, j) = pairs[l];
        for _ in 0..theta[l] {
            cur = super_move(&cur, i, j, dir, &mut HashMap::new())?;
        }
    }
    cur.dominant()
        .ok_or_else(|| Error::Invariant(format!("composite left the conjugate-dominant set: {cur}")))
}

/// A super composite `(X_θ(f))⁺` of a dominant weight. Lowering composites
/// of profinite weights use the tail directly; raising composites are
/// evaluated on finite windows until the result is stable, and `None` means
/// no profinite weight restricts to the windowed results.
pub fn super_theta(f: &Weight, theta: &[u32], kind: Composite) -> Result<Option<Weight>> {
    f.require_dominant()?;
    if kind.lowers() {
        return super_theta_finite(&prepared(f), theta, kind).map(Some);
    }
    if !f.tail {
        return super_theta_finite(f, theta, kind).map(Some);
    }
    let n0 = sufficient_n(f);
    let span = f.neg.iter().chain(f.pos.iter()).map(|v| v.abs()).max().unwrap_or(0) as usize;
    let budget = n0 + span + 2 * f.m() + 2 * theta.iter().sum::<u32>() as usize + 8;
    let mut prev: Option<Weight> = None;
    for n in n0..=budget {
        let r = super_theta_finite(&f.finite_window(n), theta, kind)?;
        let extends = r.pos.iter().all(|&v| v <= n as i64);
        if let Some(p) = prev.take() {
            if extends && r == p.finite_window(n) {
                return Ok(Some(p));
            }
        }
        if extends {
            prev = Some(Weight::profinite(Flavor::Super, r.neg.clone(), r.pos.clone()));
        }
    }
    Ok(None)
}

/// `𝕃_i(f)`: `f·τ_{ij}` for the partner `(i|j) ∈ Σ⁺_f`, unsorted.
pub fn red_l(f: &Weight, i: i64) -> Option<Weight> {
    let j = sigma_plus(f).partner(i)?;
    Some(swap(f, i, j))
}

/// `ℝ_i(f)`: `f·τ_{ij}` for the partner `(i|j) ∈ Σ⁻_f`, unsorted.
pub fn red_r(f: &Weight, i: i64) -> Option<Weight> {
    let j = sigma_minus(f).partner(i)?;
    Some(swap(f, i, j))
}

fn swap(f: &Weight, i: i64, j: i64) -> Weight {
    let mut g = f.clone();
    let (a, b) = (f.get(i), f.get(j));
    g.set(i, b);
    g.set(j, a);
    g
}

/// Reductive composites, `θ = (θ_{-m}, ..., θ_{-1})`. `𝕃_θ` and `ℝ'_θ`
/// start at `-m`; `𝕃'_θ` and `ℝ_θ` start at `-1`. `None` if a factor with
/// positive exponent is undefined.
pub fn red_theta(f: &Weight, theta: &[u32], kind: Composite) -> Option<Weight> {
    let m = f.m();
    assert_eq!(theta.len(), m, "θ must have one entry per negative position");
    let from_left = matches!(kind, Composite::L | Composite::RPrime);
    let order: Vec<usize> = if from_left {
        (0..m).collect()
    } else {
        (0..m).rev().collect()
    };
    let mut cur = f.clone();
    for k in order {
        let i = k as i64 - m as i64;
        for _ in 0..theta[k] {
            cur = if kind.lowers() {
                red_l(&cur, i)?
            } else {
                red_r(&cur, i)?
            };
        }
    }
    cur.dominant()
}

/// `f_Σ`: swap across every pair of `Σ ⊆ Σ⁺_f` at once, then sort.
pub fn f_sigma(f: &Weight, sigma: &[(i64, i64)]) -> Result<Weight> {
    let all = sigma_plus(f);
    let mut g = f.clone();
    for &(i, j) in sigma {
        if all.partner(i) != Some(j) {
            return Err(Error::Invalid(format!("({i}|{j}) is not in Σ⁺ of {f}")));
        }
        let (a, b) = (f.get(i), f.get(j));
        g.set(i, b);
        g.set(j, a);
    }
    g.dominant()
        .ok_or_else(|| Error::Invalid(format!("repeated index in {sigma:?}")))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Chevalley {
    E(i64),
    F(i64),
}

/// Replaces `from` by `to` in the negative block, if `from` occurs and `to`
/// does not.
fn swap_neg(f: &Weight, from: i64, to: i64) -> Option<Weight> {
    let i = f.neg_position(from)?;
    if f.neg_contains(to) {
        return None;
    }
    let mut g = f.clone();
    g.set(i, to);
    g.dominant()
}

fn swap_pos(f: &Weight, from: i64, to: i64) -> Option<Weight> {
    let j = f.pos_position(from)?;
    if f.pos_contains(to) {
        return None;
    }
    let mut g = f.clone();
    g.set(j, to);
    g.dominant()
}

fn indicator(b: bool) -> i64 {
    b as i64
}

/// `E_a 𝒦_f = 𝒦_{(f<0 | ẽ f>0)} + q^{[a+1 ∈ f>0] - [a ∈ f>0]} 𝒦_{(ẽ f<0 | f>0)}`.
pub fn chevalley_e(a: i64, f: &Weight) -> Expansion {
    let mut out = Expansion::new();
    if let Some(g) = swap_pos(f, a + 1, a) {
        out.add(g, LaurentPoly::one());
    }
    if let Some(g) = swap_neg(f, a + 1, a) {
        let e = indicator(f.pos_contains(a + 1)) - indicator(f.pos_contains(a));
        out.add(g, LaurentPoly::q_pow(e));
    }
    out
}

/// `F_a 𝒦_f = 𝒦_{(f̃<0 | f>0)} + q^{[a ∈ f<0] - [a+1 ∈ f<0]} 𝒦_{(f<0 | f̃>0)}`,
/// where `~` replaces `a` by `a+1`.
pub fn chevalley_f(a: i64, f: &Weight) -> Expansion {
    let mut out = Expansion::new();
    if let Some(g) = swap_neg(f, a, a + 1) {
        out.add(g, LaurentPoly::one());
    }
    if let Some(g) = swap_pos(f, a, a + 1) {
        let e = indicator(f.neg_contains(a)) - indicator(f.neg_contains(a + 1));
        out.add(g, LaurentPoly::q_pow(e));
    }
    out
}

/// Applies a generator to every term of an expansion.
pub fn apply_chevalley(x: Chevalley, e: &Expansion) -> Expansion {
    let mut out = Expansion::new();
    for (w, p) in e.iter() {
        let img = match x {
            Chevalley::E(a) => chevalley_e(a, w),
            Chevalley::F(a) => chevalley_f(a, w),
        };
        out.add_scaled(&img, p);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weight::{eps_weight, w};
    use proptest::prelude::*;
    use Flavor::*;

    #[test]
    fn super_l_golden() {
        let f = w("0,-1,-3,-4|-2,-1,0,*", Super);
        let l43 = super_l(&f, -4, 3).unwrap().dominant().unwrap();
        assert_eq!(l43, w("-1,-3,-4,-6|-6,-2,-1,*", Super));
        let l32 = super_l(&f, -3, 2).unwrap().dominant().unwrap();
        assert_eq!(l32, w("0,-3,-4,-5|-5,-2,0,*", Super));
        let both = super_theta(&f, &[1, 1], Composite::L).unwrap().unwrap();
        assert_eq!(both, w("-3,-4,-5,-6|-6,-5,-2,*", Super));
        assert_eq!(super_theta(&f, &[0, 0], Composite::L).unwrap().unwrap(), f);
    }

    #[test]
    fn super_r_golden() {
        let g = w("-2,-4|-4,-2,*", Super);
        let f = w("0,-2|-2,0,*", Super);
        assert_eq!(super_theta(&g, &[0, 2], Composite::RPrime).unwrap(), Some(f.clone()));
        assert_eq!(super_theta(&g, &[2, 2], Composite::RPrime).unwrap(), Some(f.clone()));
        assert_eq!(
            super_theta(&g, &[2, 2], Composite::R).unwrap(),
            Some(w("1,0|0,1,*", Super))
        );
        assert!(super_pairs(&w("5,4|1,2", Super)).is_empty());
    }

    #[test]
    fn lowering_is_stable_under_truncation() {
        // f = (f^(3), 4, 5, ...) with the same atypicality as f^(3).
        let f = w("0,-1,-3,-4|-2,-1,0,*", Super);
        let fin = f.finite_window(3);
        for theta in [[1, 0], [0, 1], [1, 1], [2, 1], [0, 3]] {
            let a = super_theta(&f, &theta, Composite::L).unwrap().unwrap();
            let b = super_theta(&fin, &theta, Composite::L).unwrap().unwrap();
            assert_eq!(a.finite_window(3), b, "θ = {theta:?}");
        }
    }

    #[test]
    fn reductive_golden() {
        let f = w("2,1,0|3,0,-2", Reductive);
        let raw = red_l(&f, -2).unwrap();
        assert_eq!(raw, w("2,-2,0|3,0,1", Reductive));
        assert_eq!(raw.dominant().unwrap(), w("2,0,-2|3,1,0", Reductive));
        assert_eq!(red_l(&f, -1), None);
        assert_eq!(
            red_theta(&f, &[0, 1, 0], Composite::L).unwrap(),
            w("2,0,-2|3,1,0", Reductive)
        );
        assert_eq!(red_theta(&f, &[0, 0, 0], Composite::L).unwrap(), f);
        assert_eq!(f_sigma(&f, &[(-2, 3)]).unwrap(), w("2,0,-2|3,1,0", Reductive));
        assert_eq!(f_sigma(&f, &[]).unwrap(), f);
        assert!(f_sigma(&f, &[(-1, 2)]).is_err());

        let g = w("-2,-4|2,1,0,-1,-3,-5,*", Reductive);
        let fn_ = w("0,-2|2,1,-1,-3,*", Reductive);
        assert_eq!(red_theta(&g, &[0, 2], Composite::RPrime).unwrap(), fn_);
        assert_eq!(red_theta(&g, &[0, 2], Composite::R).unwrap(), fn_);
    }

    #[test]
    fn full_swap_matches_l_theta() {
        let f = w("0,-1,-3,-4|3,2,1,-3,-4,-5,-6,*", Reductive);
        let sp = sigma_plus(&f);
        assert_eq!(sp.len(), 2);
        let full = f_sigma(&f, &sp.pairs).unwrap();
        let mut theta = vec![0; 4];
        for &(i, _) in &sp.pairs {
            theta[(i + 4) as usize] = 1;
        }
        assert_eq!(red_theta(&f, &theta, Composite::L).unwrap(), full);
    }

    #[test]
    fn chevalley_golden() {
        let h = w("2,1,-2|3,1,-2", Reductive);
        let x = chevalley_f(-2, &h);
        let want: Expansion = [
            (w("2,1,-1|3,1,-2", Reductive), LaurentPoly::one()),
            (w("2,1,-2|3,1,-1", Reductive), LaurentPoly::q_pow(1)),
        ]
        .into_iter()
        .collect();
        assert_eq!(x, want);
        let mut e = Expansion::single(h);
        for g in [Chevalley::F(-2), Chevalley::F(-1), Chevalley::E(0)] {
            e = apply_chevalley(g, &e);
        }
        let want: Expansion = [
            (w("2,1,0|3,0,-2", Reductive), LaurentPoly::one()),
            (w("2,0,-2|3,1,0", Reductive), LaurentPoly::q_pow(1)),
        ]
        .into_iter()
        .collect();
        assert_eq!(e, want);
        assert!(chevalley_f(10, &w("2,1|0", Reductive)).is_empty());
    }

    fn arb_red() -> impl Strategy<Value = Weight> {
        (
            prop::collection::btree_set(-5i64..=5, 1..4),
            prop::collection::btree_set(-5i64..=5, 0..5),
            any::<bool>(),
        )
            .prop_map(|(n, p, t)| {
                Weight::new(
                    Reductive,
                    n.into_iter().rev().collect(),
                    p.into_iter().rev().collect(),
                    t,
                )
            })
            .prop_filter("dominant", |f| f.is_dominant())
    }

    fn arb_super() -> impl Strategy<Value = Weight> {
        (
            prop::collection::btree_set(-5i64..=5, 1..4),
            prop::collection::btree_set(-5i64..=5, 0..5),
            any::<bool>(),
        )
            .prop_map(|(n, p, t)| Weight::new(Super, n.into_iter().rev().collect(), p.into_iter().collect(), t))
            .prop_filter("dominant", |f| f.is_dominant())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn lowering_and_raising_are_mirror_images(
            f in arb_red().prop_filter("finite", |f| !f.tail),
            theta in prop::collection::vec(0u32..3, 3),
        ) {
            let m = f.m();
            let theta = &theta[..m];
            let phi: Vec<u32> = theta.iter().rev().copied().collect();
            let dual = f.neg_w0();
            for (lk, rk) in [(Composite::L, Composite::R), (Composite::LPrime, Composite::RPrime)] {
                let lhs = red_theta(&dual, theta, lk).map(|g| g.neg_w0());
                prop_assert_eq!(lhs, red_theta(&f, &phi, rk));
            }
            for k in 0..m {
                if let Some(g) = red_l(&f, k as i64 - m as i64) {
                    prop_assert_eq!(eps_weight(&g), eps_weight(&f));
                }
            }
        }

        #[test]
        fn super_moves_shift_matched_entries(f in arb_super()) {
            let pairs = super_pairs(&f);
            for &(i, j) in &pairs {
                let g = super_l(&f, i, j).unwrap();
                let a = f.get(i) - g.get(i);
                prop_assert!(a >= 1);
                prop_assert_eq!(f.get(j) - g.get(j), a);
                prop_assert_eq!(eps_weight(&g.dominant().unwrap()), eps_weight(&f));
                if !f.tail {
                    let h = super_r(&f, i, j).unwrap();
                    let b = h.get(i) - f.get(i);
                    prop_assert!(b >= 1);
                    prop_assert_eq!(h.get(j) - f.get(j), b);
                }
            }
        }

        #[test]
        fn raising_is_window_stable(f in arb_super()) {
            let k = super_pairs(&f).len();
            if f.tail && k > 0 {
                let theta = vec![1; k];
                if let Some(r) = super_theta(&f, &theta, Composite::R).unwrap() {
                    let n = sufficient_n(&f).max(sufficient_n(&r)) + 3;
                    let a = super_theta(&f.finite_window(n), &theta, Composite::R).unwrap().unwrap();
                    prop_assert_eq!(a, r.finite_window(n));
                }
            }
        }
    }
}
