//! Transition data between the monomial, canonical and dual canonical bases.
//!
//! Canonical bases have closed formulas: `𝒰_f` sums `q^{|Σ|} 𝒦_{f_Σ}` over
//! subsets of `Σ⁺_f`, and `U_f` sums `q^{|θ|} K_{L_θ(f)}` over
//! `θ ∈ {0,1}^{#f}`. Their inverses and the dual canonical bases are sums
//! over `θ ∈ ℕ^k`; these are exposed per target coefficient, which is a
//! finite sum, or as expansions bounded by a value window below `f`.

use std::collections::BTreeSet;

use serde_json::{json, Value};

use crate::atypicality::{sigma_plus, super_pairs};
use crate::error::{Error, Result};
use crate::expansion::Expansion;
use crate::ops::{apply_chevalley, f_sigma, red_l, red_r, red_theta, super_theta, Chevalley, Composite};
use crate::poly::LaurentPoly;
use crate::truncation::{min_shift, sufficient_n, tail_extension, trunc_expansion};
use crate::weight::{Flavor, Weight};

/// Value window for expansions that are infinite sums: terms are kept when
/// their moved values lie at most `slack` below the lowest value they
/// replace.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Window {
    pub slack: i64,
}

impl Default for Window {
    fn default() -> Self {
        Window { slack: 6 }
    }
}

impl Window {
    pub fn to_json(self) -> Value {
        json!({ "slack": self.slack })
    }
}

const PROCEDURE_STEPS: usize = 10_000;

fn check(f: &Weight, flavor: Flavor) -> Result<()> {
    if f.flavor != flavor {
        return Err(Error::Invalid(format!("expected a {} weight, got {f}", flavor.name())));
    }
    f.require_dominant()
}

/// `k`-element subsets of `items`, each in input order.
fn combinations(items: &[i64], k: usize) -> Vec<Vec<i64>> {
    fn go(items: &[i64], k: usize, start: usize, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for t in start..items.len() {
            if items.len() - t < k - cur.len() {
                break;
            }
            cur.push(items[t]);
            go(items, k, t + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(items, k, 0, &mut Vec::new(), &mut out);
    out
}

// ---------------------------------------------------------------- reductive

/// `𝒰_f = Σ_{Σ ⊆ Σ⁺_f} q^{|Σ|} 𝒦_{f_Σ}`.
pub fn red_canonical(f: &Weight) -> Result<Expansion> {
    check(f, Flavor::Reductive)?;
    let sp = sigma_plus(f);
    let mut out = Expansion::new();
    for mask in 0u32..(1 << sp.len()) {
        let subset: Vec<(i64, i64)> = (0..sp.len())
            .filter(|b| mask >> b & 1 == 1)
            .map(|b| sp.pairs[b])
            .collect();
        out.add(f_sigma(f, &subset)?, LaurentPoly::q_pow(subset.len() as i64));
    }
    Ok(out)
}

/// `𝒰_f = Σ_{θ ∈ {0,1}^m} q^{|θ|} 𝒦_{𝕃_θ(f)}`, undefined composites dropped.
pub fn red_canonical_via_theta(f: &Weight) -> Result<Expansion> {
    check(f, Flavor::Reductive)?;
    let m = f.m();
    let mut out = Expansion::new();
    for mask in 0u32..(1 << m) {
        let theta: Vec<u32> = (0..m).map(|b| mask >> b & 1).collect();
        if let Some(g) = red_theta(f, &theta, Composite::L) {
            out.add(g, LaurentPoly::q_pow(mask.count_ones() as i64));
        }
    }
    Ok(out)
}

/// The Procedure: peel off Chevalley generators until the weight is
/// J-typical, recording the word. Returns the word (first recorded first)
/// and the J-typical end point.
pub fn procedure_word(f: &Weight) -> Result<(Vec<Chevalley>, Weight)> {
    check(f, Flavor::Reductive)?;
    if f.tail {
        return Err(Error::Invalid("the Procedure runs on finite windows".into()));
    }
    let mut h = f.clone();
    let mut word = Vec::new();
    for _ in 0..PROCEDURE_STEPS {
        let sp = sigma_plus(&h);
        let Some(i) = sp.pairs.iter().map(|p| p.0).max() else {
            return Ok((word, h));
        };
        let v = h.get(i);
        if i == -1 || v - 1 != h.get(i + 1) {
            word.push(Chevalley::F(v - 1));
            h.set(i, v - 1);
        } else {
            let s = h
                .pos_position(h.get(i + 1))
                .ok_or_else(|| Error::Invariant(format!("no positive entry {} in {h}", v - 1)))?;
            word.push(Chevalley::E(v - 1));
            h.set(s, h.get(s) + 1);
        }
        if !h.is_dominant() {
            return Err(Error::Invariant(format!("Procedure left the dominant set at {h}")));
        }
    }
    Err(Error::Invariant(format!("Procedure did not terminate on {f}")))
}

/// `𝒰_f` from the Procedure and the Chevalley action; profinite weights are
/// computed at their sufficient window and the tails restored.
pub fn red_canonical_procedure(f: &Weight) -> Result<Expansion> {
    check(f, Flavor::Reductive)?;
    if f.tail {
        let n = sufficient_n(f);
        let fin = red_canonical_procedure(&f.finite_window(n))?;
        let mut out = Expansion::new();
        for (w, p) in fin.iter() {
            let lifted = Weight::profinite(Flavor::Reductive, w.neg.clone(), w.pos.clone());
            if !lifted.is_dominant() {
                return Err(Error::Invariant(format!("{w} does not extend by the tail")));
            }
            out.add(lifted, p.clone());
        }
        return Ok(out);
    }
    let (word, h) = procedure_word(f)?;
    let mut e = Expansion::single(h);
    for x in word.iter().rev() {
        e = apply_chevalley(*x, &e);
    }
    Ok(e)
}

/// Depth-first enumeration of `θ ∈ ℕ^m` with a reductive composite reaching
/// `target`; `step` is `red_l` or `red_r`, `order` the positions in order of
/// application, and `alive` the monotone pruning test.
/// Fixed data of one θ-search: target, move order, move, pruning test, sign.
type SearchCtx<'a> = (
    &'a Weight,
    &'a [i64],
    fn(&Weight, i64) -> Option<Weight>,
    &'a dyn Fn(&Weight) -> bool,
    i64,
);

fn red_theta_search(
    start: &Weight,
    target: &Weight,
    order: &[i64],
    step: fn(&Weight, i64) -> Option<Weight>,
    alive: &dyn Fn(&Weight) -> bool,
    sign: i64,
) -> LaurentPoly {
    fn go(cur: &Weight, depth: usize, norm: i64, ctx: SearchCtx<'_>, acc: &mut LaurentPoly) {
        let (target, order, step, alive, sign) = ctx;
        if depth == order.len() {
            if cur.dominant().as_ref() == Some(target) {
                *acc += LaurentPoly::neg_q_pow(sign * norm);
            }
            return;
        }
        go(cur, depth + 1, norm, ctx, acc);
        let mut next = cur.clone();
        let mut t = 0;
        while let Some(n) = step(&next, order[depth]) {
            if !alive(&n) {
                break;
            }
            next = n;
            t += 1;
            go(&next, depth + 1, norm + t, ctx, acc);
        }
    }
    let mut acc = LaurentPoly::zero();
    go(start, 0, 0, (target, order, step, alive, sign), &mut acc);
    acc
}

/// Coefficient of `𝒰_g` in `𝒦_f`: `Σ (-q)^{|θ|}` over `θ` with `𝕃'_θ(f) = g`.
pub fn red_k_in_u(f: &Weight, g: &Weight) -> Result<LaurentPoly> {
    check(f, Flavor::Reductive)?;
    check(g, Flavor::Reductive)?;
    let m = f.m() as i64;
    let order: Vec<i64> = (1..=m).map(|k| -k).collect();
    let floor = g.neg_sum();
    Ok(red_theta_search(f, g, &order, red_l, &|h| h.neg_sum() >= floor, 1))
}

/// `𝔩_{g,f}`: coefficient of `𝒦_g` in `ℒ_f`, `Σ (-q)^{-|θ|}` over `θ` with
/// `ℝ'_θ(g) = f`.
pub fn red_kl_l(g: &Weight, f: &Weight) -> Result<LaurentPoly> {
    check(f, Flavor::Reductive)?;
    check(g, Flavor::Reductive)?;
    let m = f.m() as i64;
    let order: Vec<i64> = (-m..0).collect();
    let ceiling = f.neg_sum();
    Ok(red_theta_search(g, f, &order, red_r, &|h| h.neg_sum() <= ceiling, -1))
}

/// Dominant reductive weights that can lie below `f` in the Bruhat order
/// with moved values at least `min(f^{<0}) - slack`: same values, the values
/// shared by both blocks kept in both, lower negative sum.
pub fn red_candidates(f: &Weight, window: Window) -> Vec<Weight> {
    let lo = f.neg.iter().copied().min().unwrap_or(0) - window.slack;
    let fm = if f.tail {
        f.materialized(f.len().max((1 - lo).max(0) as usize))
    } else {
        f.clone()
    };
    let shared: Vec<i64> = fm.neg.iter().copied().filter(|v| fm.pos_contains(*v)).collect();
    let mut singles: Vec<i64> = fm
        .neg
        .iter()
        .chain(fm.pos.iter())
        .copied()
        .filter(|v| !shared.contains(v) && (!f.tail || *v >= lo))
        .collect();
    singles.sort_unstable_by(|a, b| b.cmp(a));
    let all: Vec<i64> = fm.neg.iter().chain(fm.pos.iter()).copied().collect();
    let mut out = Vec::new();
    for pick in combinations(&singles, fm.m() - shared.len()) {
        let mut neg: Vec<i64> = shared.iter().chain(pick.iter()).copied().collect();
        neg.sort_unstable_by(|a, b| b.cmp(a));
        if neg.iter().sum::<i64>() > f.neg_sum() {
            continue;
        }
        let mut pos = all.clone();
        for v in &neg {
            let at = pos.iter().position(|x| x == v).expect("value present");
            pos.remove(at);
        }
        pos.sort_unstable_by(|a, b| b.cmp(a));
        let g = Weight::new(Flavor::Reductive, neg, pos, f.tail);
        if g.is_dominant() {
            out.push(g);
        }
    }
    out
}

/// `ℒ_f = Σ_g 𝔩_{g,f} 𝒦_g` over the candidates in the window.
pub fn red_dual_canonical(f: &Weight, window: Window) -> Result<Expansion> {
    check(f, Flavor::Reductive)?;
    let mut out = Expansion::new();
    for g in red_candidates(f, window) {
        out.add(g.clone(), red_kl_l(&g, f)?);
    }
    Ok(out)
}

/// `𝒦_f = Σ q^{-|θ|} ℒ_g` over `g` with `ℝ_θ(g) = f`, `θ ∈ {0,1}^m`, in the
/// window.
pub fn red_k_in_l(f: &Weight, window: Window) -> Result<Expansion> {
    check(f, Flavor::Reductive)?;
    let m = f.m();
    let mut out = Expansion::new();
    for g in red_candidates(f, window) {
        for mask in 0u32..(1 << m) {
            let theta: Vec<u32> = (0..m).map(|b| mask >> b & 1).collect();
            if red_theta(&g, &theta, Composite::R).as_ref() == Some(f) {
                out.add(g.clone(), LaurentPoly::q_pow(-(mask.count_ones() as i64)));
            }
        }
    }
    Ok(out)
}

// -------------------------------------------------------------------- super

/// `U_f = Σ_{θ ∈ {0,1}^{#f}} q^{|θ|} K_{L_θ(f)}` evaluated on `f` as given
/// (profinite weights with their tail, finite weights in their window).
pub fn super_canonical_direct(f: &Weight) -> Result<Expansion> {
    check(f, Flavor::Super)?;
    let k = super_pairs(f).len();
    let mut out = Expansion::new();
    for mask in 0u32..(1 << k) {
        let theta: Vec<u32> = (0..k).map(|b| mask >> b & 1).collect();
        let g = super_theta(f, &theta, Composite::L)?.expect("lowering composites are defined");
        out.add(g, LaurentPoly::q_pow(mask.count_ones() as i64));
    }
    Ok(out)
}

/// Serves a finite super request through the profinite space: shift into
/// the cone `f(n) <= n`, extend by the tail, compute, truncate, shift back.
fn via_profinite(f: &Weight, compute: impl Fn(&Weight) -> Result<Expansion>) -> Result<Expansion> {
    let p = min_shift(f);
    let ext = tail_extension(&f.shifted(p));
    let x = compute(&ext)?;
    Ok(trunc_expansion(&x, f.len()).map_weights(|w| Some(w.shifted(-p))))
}

/// `U_f`; finite weights go through the profinite space.
pub fn super_canonical(f: &Weight) -> Result<Expansion> {
    check(f, Flavor::Super)?;
    if f.tail {
        super_canonical_direct(f)
    } else {
        via_profinite(f, super_canonical_direct)
    }
}

/// Coefficient of `U_g` in `K_f`: `Σ (-q)^{|θ|}` over `θ ∈ ℕ^{#f}` with
/// `L'_θ(f) = g`.
pub fn super_k_in_u(f: &Weight, g: &Weight) -> Result<LaurentPoly> {
    check(f, Flavor::Super)?;
    check(g, Flavor::Super)?;
    let k = super_pairs(f).len();
    let floor = g.neg_sum();
    let mut acc = LaurentPoly::zero();
    let mut theta = vec![0u32; k];
    // Pair k is applied first, so a prefix of the search fixes θ_k, θ_{k-1}, ...
    fn go(f: &Weight, g: &Weight, theta: &mut Vec<u32>, slot: usize, floor: i64, acc: &mut LaurentPoly) -> Result<()> {
        if slot == 0 {
            let r = super_theta(f, theta, Composite::LPrime)?.expect("lowering composites are defined");
            if &r == g {
                *acc += LaurentPoly::neg_q_pow(theta.iter().sum::<u32>() as i64);
            }
            return Ok(());
        }
        let l = slot - 1;
        loop {
            go(f, g, theta, l, floor, acc)?;
            theta[l] += 1;
            let probe = super_theta(f, theta, Composite::LPrime)?.expect("defined");
            if probe.neg_sum() < floor {
                theta[l] = 0;
                return Ok(());
            }
        }
    }
    go(f, g, &mut theta, k, floor, &mut acc)?;
    Ok(acc)
}

/// The finite window on which raising composites of `g` and `f` are
/// compared.
fn common_window(g: &Weight, f: &Weight) -> usize {
    sufficient_n(g).max(sufficient_n(f))
}

fn window_of(w: &Weight, n: usize) -> Weight {
    if w.tail {
        w.finite_window(n)
    } else {
        w.clone()
    }
}

/// `ℓ_{g,f}`: coefficient of `K_g` in `L_f`, `Σ (-q)^{-|θ|}` over `θ` with
/// `R'_θ(g) = f`, evaluated on a common finite window.
pub fn super_kl_l(g: &Weight, f: &Weight) -> Result<LaurentPoly> {
    check(f, Flavor::Super)?;
    check(g, Flavor::Super)?;
    if g.tail != f.tail || (!f.tail && f.len() != g.len()) {
        return Err(Error::Invalid(format!("{g} and {f} live in different windows")));
    }
    let n = common_window(g, f);
    let (gw, fw) = (window_of(g, n), window_of(f, n));
    let k = super_pairs(&gw).len();
    if k != super_pairs(&fw).len() {
        return Ok(LaurentPoly::zero());
    }
    let ceiling = fw.neg_sum();
    let mut acc = LaurentPoly::zero();
    let mut theta = vec![0u32; k];
    // Pair 1 is applied first: fix θ_1, θ_2, ... in turn.
    fn go(
        gw: &Weight,
        fw: &Weight,
        theta: &mut Vec<u32>,
        slot: usize,
        ceiling: i64,
        acc: &mut LaurentPoly,
    ) -> Result<()> {
        let k = theta.len();
        if slot == k {
            let r = super_theta(gw, theta, Composite::RPrime)?.expect("finite raising is defined");
            if &r == fw {
                *acc += LaurentPoly::neg_q_pow(-(theta.iter().sum::<u32>() as i64));
            }
            return Ok(());
        }
        loop {
            go(gw, fw, theta, slot + 1, ceiling, acc)?;
            theta[slot] += 1;
            let mut probe = theta.clone();
            probe[slot + 1..].iter_mut().for_each(|t| *t = 0);
            let r = super_theta(gw, &probe, Composite::RPrime)?.expect("defined");
            if r.neg_sum() > ceiling {
                theta[slot] = 0;
                return Ok(());
            }
        }
    }
    go(&gw, &fw, &mut theta, 0, ceiling, &mut acc)?;
    Ok(acc)
}

/// Dominant super weights `g ≼ f` within the window: typical entries of `f`
/// kept, common values replaced by lower common values at least
/// `min(common) - slack` and entrywise below the sorted common values of
/// `f`.
pub fn super_candidates(f: &Weight, window: Window) -> Vec<Weight> {
    let n = sufficient_n(f);
    let fw = window_of(f, n);
    let common: Vec<i64> = fw.neg.iter().copied().filter(|v| fw.pos.contains(v)).collect();
    let typ_neg: Vec<i64> = fw.neg.iter().copied().filter(|v| !common.contains(v)).collect();
    let typ_pos: Vec<i64> = fw.pos.iter().copied().filter(|v| !common.contains(v)).collect();
    let Some(&hi) = common.first() else {
        return vec![f.clone()];
    };
    let lo = common.last().copied().unwrap_or(hi) - window.slack;
    let blocked: BTreeSet<i64> = typ_neg.iter().chain(typ_pos.iter()).copied().collect();
    let pool: Vec<i64> = (lo..=hi).rev().filter(|v| !blocked.contains(v)).collect();
    let mut out = Vec::new();
    for pick in combinations(&pool, common.len()) {
        // Both lists are descending; lowering never raises an order statistic.
        if pick.iter().zip(&common).any(|(a, b)| a > b) {
            continue;
        }
        let mut neg: Vec<i64> = typ_neg.iter().chain(pick.iter()).copied().collect();
        neg.sort_unstable_by(|a, b| b.cmp(a));
        let mut pos: Vec<i64> = typ_pos.iter().chain(pick.iter()).copied().collect();
        pos.sort_unstable();
        out.push(Weight::new(Flavor::Super, neg, pos, f.tail));
    }
    out
}

fn super_dual_direct(f: &Weight, window: Window) -> Result<Expansion> {
    let mut out = Expansion::new();
    for g in super_candidates(f, window) {
        out.add(g.clone(), super_kl_l(&g, f)?);
    }
    Ok(out)
}

/// `L_f = Σ_g ℓ_{g,f} K_g` over the candidates in the window; finite weights
/// go through the profinite space.
pub fn super_dual_canonical(f: &Weight, window: Window) -> Result<Expansion> {
    check(f, Flavor::Super)?;
    if f.tail {
        super_dual_direct(f, window)
    } else {
        via_profinite(f, |g| super_dual_direct(g, window))
    }
}

/// `L_f` computed with finite-window semantics throughout.
pub fn super_dual_canonical_finite(f: &Weight, window: Window) -> Result<Expansion> {
    check(f, Flavor::Super)?;
    super_dual_direct(f, window)
}

/// `K_f = Σ_g q^{-|θ_g|} L_g` over `g` with `R_{θ_g}(g) = f`,
/// `θ_g ∈ {0,1}^{#f}`. A second such `θ` for one `g` is an invariant
/// violation.
pub fn super_k_in_l(f: &Weight, window: Window) -> Result<Expansion> {
    check(f, Flavor::Super)?;
    let mut out = Expansion::new();
    for g in super_candidates(f, window) {
        let n = common_window(&g, f);
        let (gw, fw) = (window_of(&g, n), window_of(f, n));
        let k = super_pairs(&gw).len();
        let mut hits = Vec::new();
        for mask in 0u32..(1 << k) {
            let theta: Vec<u32> = (0..k).map(|b| mask >> b & 1).collect();
            if super_theta(&gw, &theta, Composite::R)?.as_ref() == Some(&fw) {
                hits.push(mask.count_ones() as i64);
            }
        }
        if hits.len() > 1 {
            return Err(Error::Invariant(format!(
                "{} choices of θ carry {g} to {f}",
                hits.len()
            )));
        }
        if let Some(&h) = hits.first() {
            out.add(g, LaurentPoly::q_pow(-h));
        }
    }
    Ok(out)
}

// ------------------------------------------------------------------ shared

/// `u_{g,f}` / `𝔲_{g,f}`: coefficient of the monomial vector of `g` in the
/// canonical basis vector of `f`.
pub fn kl_u(g: &Weight, f: &Weight) -> Result<LaurentPoly> {
    let x = match f.flavor {
        Flavor::Super => super_canonical(f)?,
        Flavor::Reductive => red_canonical(f)?,
    };
    Ok(x.coeff(g))
}

/// `ℓ_{g,f}` / `𝔩_{g,f}`: coefficient of the monomial vector of `g` in the
/// dual canonical basis vector of `f`.
pub fn kl_l(g: &Weight, f: &Weight) -> Result<LaurentPoly> {
    match f.flavor {
        Flavor::Super => {
            if f.tail {
                super_kl_l(g, f)
            } else {
                let p = min_shift(f);
                let (gs, fs) = (g.shifted(p), f.shifted(p));
                super_kl_l(&tail_extension_or_self(&gs, f.len()), &tail_extension(&fs))
            }
        }
        Flavor::Reductive => red_kl_l(g, f),
    }
}

/// The tail extension of a finite super weight shifted into the cone, or
/// the weight itself when it leaves the cone (its coefficient is then 0).
fn tail_extension_or_self(g: &Weight, n: usize) -> Weight {
    if g.pos.last().is_none_or(|&v| v <= n as i64) {
        tail_extension(g)
    } else {
        g.clone()
    }
}
