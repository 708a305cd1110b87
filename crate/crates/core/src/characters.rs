//! Characters: Schur and hook Schur polynomials, `ω₊`, and irreducible
//! characters assembled from dual canonical coefficients at `q = 1`.
//!
//! A character in infinitely many positive variables is held as a
//! [`SchurForm`]: a finite sum `Σ_ρ P_ρ(x₋) s_ρ(x₊)` with every `|ρ|` at most a
//! degree bound. Products with `∏(1 - x_i^{-1}x_j)^{-1}` and
//! `∏(1 + x_i^{-1}x_j)` expand by the Cauchy identities into Pieri steps, so
//! `ω₊` (`s_ρ ↦ s_{ρ'}`) acts before the specialization `x_{n+1} = x_{n+2} =
//! ⋯ = 0`. Coefficients of degree at most the bound are exact.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::bases::{red_candidates, red_kl_l, super_candidates, super_kl_l, Window};
use crate::duality::Partition;
use crate::error::{Error, Result};
use crate::weight::{Flavor, HighestWeight, Weight};

/// An exact Laurent polynomial in `vars` variables.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SymPoly {
    pub vars: usize,
    pub terms: BTreeMap<Vec<i64>, BigInt>,
}

impl SymPoly {
    pub fn zero(vars: usize) -> Self {
        SymPoly {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(vars: usize) -> Self {
        Self::monomial(vec![0; vars], BigInt::one())
    }

    pub fn monomial(exps: Vec<i64>, c: BigInt) -> Self {
        let mut p = Self::zero(exps.len());
        p.add_term(exps, c);
        p
    }

    /// `x_k` (0-based).
    pub fn var(vars: usize, k: usize) -> Self {
        let mut e = vec![0; vars];
        e[k] = 1;
        Self::monomial(e, BigInt::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, exps: Vec<i64>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(exps.clone()).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&exps);
        }
    }

    pub fn add(&self, other: &SymPoly) -> SymPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &BigInt) -> SymPoly {
        let mut out = Self::zero(self.vars);
        for (e, d) in &self.terms {
            out.add_term(e.clone(), d * c);
        }
        out
    }

    pub fn mul(&self, other: &SymPoly) -> SymPoly {
        let mut out = Self::zero(self.vars);
        for (a, c) in &self.terms {
            for (b, d) in &other.terms {
                let e = a.iter().zip(b).map(|(x, y)| x + y).collect();
                out.add_term(e, c * d);
            }
        }
        out
    }

    /// Places the variables of `self` at `offset..` in a ring of `vars`
    /// variables.
    pub fn embed(&self, vars: usize, offset: usize) -> SymPoly {
        let mut out = Self::zero(vars);
        for (e, c) in &self.terms {
            let mut f = vec![0; vars];
            f[offset..offset + e.len()].copy_from_slice(e);
            out.add_term(f, c.clone());
        }
        out
    }

    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(e, c)| json!({ "exponents": e, "coeff": c.to_string() }))
                .collect(),
        )
    }
}

impl fmt::Display for SymPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}*x^{e:?}")?;
        }
        Ok(())
    }
}

/// `h_r(x_1, …, x_k)`.
pub fn complete_homogeneous(r: i64, k: usize) -> SymPoly {
    let mut out = SymPoly::zero(k);
    if r < 0 {
        return out;
    }
    fn go(r: i64, k: usize, cur: &mut Vec<i64>, out: &mut SymPoly) {
        if cur.len() + 1 == k {
            cur.push(r);
            out.add_term(cur.clone(), BigInt::one());
            cur.pop();
            return;
        }
        for a in 0..=r {
            cur.push(a);
            go(r - a, k, cur, out);
            cur.pop();
        }
    }
    if k == 0 {
        if r == 0 {
            out.add_term(vec![], BigInt::one());
        }
        return out;
    }
    go(r, k, &mut Vec::new(), &mut out);
    out
}

/// `s_ν(x_1, …, x_k)` for a weakly decreasing `ν` of length at most `k`
/// (negative parts allowed), by Jacobi–Trudi.
pub fn schur(nu: &[i64], k: usize) -> Result<SymPoly> {
    if nu.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::Invalid(format!("{nu:?} is not weakly decreasing")));
    }
    if nu.len() > k {
        // Padding with zeros only makes sense for nonnegative tails.
        if nu[k..].iter().any(|&p| p != 0) {
            return Ok(SymPoly::zero(k));
        }
        return schur(&nu[..k], k);
    }
    let mut parts = nu.to_vec();
    parts.resize(k, 0);
    let shift = parts.last().copied().unwrap_or(0).min(0);
    let det = jacobi_trudi(&parts.iter().map(|p| p - shift).collect::<Vec<_>>(), k);
    Ok(det.mul(&SymPoly::monomial(vec![shift; k], BigInt::one())))
}

fn jacobi_trudi(lambda: &[i64], k: usize) -> SymPoly {
    let l: Vec<i64> = lambda.iter().copied().filter(|&p| p > 0).collect();
    let size = l.len();
    let entry = |i: usize, j: usize| complete_homogeneous(l[i] - i as i64 + j as i64, k);
    // Laplace expansion over the rows, columns taken from a shrinking set.
    fn det(row: usize, cols: &mut Vec<usize>, entry: &dyn Fn(usize, usize) -> SymPoly, k: usize) -> SymPoly {
        if cols.is_empty() {
            return SymPoly::one(k);
        }
        let mut out = SymPoly::zero(k);
        for t in 0..cols.len() {
            let c = cols.remove(t);
            let e = entry(row, c);
            if !e.is_zero() {
                let minor = det(row + 1, cols, entry, k);
                let sign = if t % 2 == 0 { BigInt::one() } else { -BigInt::one() };
                out = out.add(&e.mul(&minor).scale(&sign));
            }
            cols.insert(t, c);
        }
        out
    }
    det(0, &mut (0..size).collect(), &entry, k)
}

/// Hook Schur polynomial `hs_λ(x_1..x_m; y_1..y_n)` by enumeration of
/// `(m|n)`-semistandard fillings: letters `x_1 < ⋯ < x_m < y_1 < ⋯ < y_n`,
/// `x`-letters weakly increasing along rows and strictly down columns,
/// `y`-letters strictly along rows and weakly down columns. Variables are
/// ordered `x_1..x_m, y_1..y_n`.
pub fn hook_schur(lambda: &Partition, m: usize, n: usize) -> SymPoly {
    let cells: Vec<(usize, usize)> = lambda
        .parts()
        .iter()
        .enumerate()
        .flat_map(|(r, &len)| (0..len as usize).map(move |c| (r, c)))
        .collect();
    let mut out = SymPoly::zero(m + n);
    let mut fill: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    fn go(
        cells: &[(usize, usize)],
        at: usize,
        m: usize,
        n: usize,
        fill: &mut BTreeMap<(usize, usize), usize>,
        out: &mut SymPoly,
    ) {
        if at == cells.len() {
            let mut e = vec![0; m + n];
            for &v in fill.values() {
                e[v] += 1;
            }
            out.add_term(e, BigInt::one());
            return;
        }
        let (r, c) = cells[at];
        for v in 0..m + n {
            let even = v < m;
            if c > 0 {
                let left = fill[&(r, c - 1)];
                if left > v || (left == v && !even) {
                    continue;
                }
            }
            if r > 0 {
                let up = fill[&(r - 1, c)];
                if up > v || (up == v && even) {
                    continue;
                }
            }
            fill.insert((r, c), v);
            go(cells, at + 1, m, n, fill, out);
            fill.remove(&(r, c));
        }
    }
    go(&cells, 0, m, n, &mut fill, &mut out);
    out
}

/// `ν ⊇ ρ` with `ν/ρ` a horizontal strip of `k` boxes.
fn horizontal_strips(rho: &[i64], k: i64) -> Vec<Vec<i64>> {
    let rows = rho.len() + 1;
    let mut out = Vec::new();
    fn go(rho: &[i64], rows: usize, i: usize, left: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if i == rows {
            if left == 0 {
                let mut v = cur.clone();
                while v.last() == Some(&0) {
                    v.pop();
                }
                out.push(v);
            }
            return;
        }
        let base = rho.get(i).copied().unwrap_or(0);
        let cap = if i == 0 {
            base + left
        } else {
            rho[i - 1].min(base + left)
        };
        for v in base..=cap {
            cur.push(v);
            go(rho, rows, i + 1, left - (v - base), cur, out);
            cur.pop();
        }
    }
    go(rho, rows, 0, k, &mut Vec::new(), &mut out);
    out
}

fn conjugate_parts(p: &[i64]) -> Vec<i64> {
    Partition::new(p.to_vec())
        .expect("partition")
        .conjugate()
        .parts()
        .to_vec()
}

/// `Σ_ρ P_ρ(x₋) s_ρ(x₊)` over partitions with `|ρ| <= bound`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchurForm {
    pub m: usize,
    pub bound: i64,
    pub terms: BTreeMap<Vec<i64>, SymPoly>,
}

impl SchurForm {
    pub fn zero(m: usize, bound: i64) -> Self {
        SchurForm {
            m,
            bound,
            terms: BTreeMap::new(),
        }
    }

    /// `P(x₋) s_ρ(x₊)`.
    pub fn term(p: SymPoly, rho: Vec<i64>, bound: i64) -> Self {
        let mut out = Self::zero(p.vars, bound);
        out.add(rho, p);
        out
    }

    fn add(&mut self, rho: Vec<i64>, p: SymPoly) {
        if rho.iter().sum::<i64>() > self.bound || p.is_zero() {
            return;
        }
        let slot = self.terms.entry(rho.clone()).or_insert_with(|| SymPoly::zero(self.m));
        *slot = slot.add(&p);
        if slot.is_zero() {
            self.terms.remove(&rho);
        }
    }

    pub fn plus(&self, other: &SchurForm) -> SchurForm {
        let mut out = self.clone();
        for (rho, p) in &other.terms {
            out.add(rho.clone(), p.clone());
        }
        out
    }

    /// Multiplication by `Σ_k c_k x_i^{-k} h_k(x₊)` (`vertical = false`) or
    /// with `e_k` (`vertical = true`), `c_k = 1`.
    fn mul_cauchy(&self, i: usize, vertical: bool) -> SchurForm {
        let mut out = Self::zero(self.m, self.bound);
        for (rho, p) in &self.terms {
            let room = self.bound - rho.iter().sum::<i64>();
            for k in 0..=room {
                let mut e = vec![0; self.m];
                e[i] = -k;
                let scaled = p.mul(&SymPoly::monomial(e, BigInt::one()));
                let nus = if vertical {
                    horizontal_strips(&conjugate_parts(rho), k)
                        .into_iter()
                        .map(|nu| conjugate_parts(&nu))
                        .collect()
                } else {
                    horizontal_strips(rho, k)
                };
                for nu in nus {
                    out.add(nu, scaled.clone());
                }
            }
        }
        out
    }

    /// Times `∏_{i<0<j} (1 - x_i^{-1}x_j)^{-1}`.
    pub fn times_reductive_kernel(&self) -> SchurForm {
        (0..self.m).fold(self.clone(), |acc, i| acc.mul_cauchy(i, false))
    }

    /// Times `∏_{i<0<j} (1 + x_i^{-1}x_j)`.
    pub fn times_super_kernel(&self) -> SchurForm {
        (0..self.m).fold(self.clone(), |acc, i| acc.mul_cauchy(i, true))
    }

    /// `ω₊`: `s_ρ(x₊) ↦ s_{ρ'}(x₊)`.
    pub fn omega_plus(&self) -> SchurForm {
        let mut out = Self::zero(self.m, self.bound);
        for (rho, p) in &self.terms {
            out.add(conjugate_parts(rho), p.clone());
        }
        out
    }

    /// Sets `x_{n+1} = x_{n+2} = ⋯ = 0`; variables `x_{-m}..x_{-1}, x_1..x_n`.
    pub fn specialize(&self, n: usize) -> Result<SymPoly> {
        let vars = self.m + n;
        let mut out = SymPoly::zero(vars);
        for (rho, p) in &self.terms {
            let s = schur(rho, n)?;
            out = out.add(&p.embed(vars, 0).mul(&s.embed(vars, self.m)));
        }
        Ok(out)
    }
}

fn check_highest(lambda: &HighestWeight, flavor: Flavor) -> Result<Weight> {
    if lambda.flavor != flavor || !lambda.infinite {
        return Err(Error::Invalid(format!(
            "expected an infinite {} highest weight",
            flavor.name()
        )));
    }
    lambda.to_f()
}

/// Degree bound large enough for every coefficient of degree at most
/// `bound` in the positive variables.
fn window_for(bound: i64) -> Window {
    Window { slack: bound.max(0) }
}

fn form_of(
    f: &Weight,
    coeff: &dyn Fn(&Weight) -> Result<BigInt>,
    candidates: Vec<Weight>,
    bound: i64,
) -> Result<SchurForm> {
    let m = f.m();
    let mut out = SchurForm::zero(m, bound);
    for g in candidates {
        let c = coeff(&g)?;
        if c.is_zero() {
            continue;
        }
        let mu = HighestWeight::from_f(&g);
        if mu.pos.iter().sum::<i64>() > bound {
            continue;
        }
        let neg = schur(&mu.neg, m)?.scale(&c);
        out = out.plus(&SchurForm::term(neg, mu.pos.clone(), bound));
    }
    Ok(out)
}

/// `ch L(λ) = Σ_μ ℓ_{μ,λ}(1) s_{μ^{<0}}(x₋) s_{μ^{>0}}(x₊) ∏(1 + x_i^{-1}x_j)`,
/// exact in positive degree at most `bound`.
pub fn super_character_form(lambda: &HighestWeight, bound: i64) -> Result<SchurForm> {
    let f = check_highest(lambda, Flavor::Super)?;
    let base = form_of(
        &f,
        &|g| Ok(super_kl_l(g, &f)?.eval_one()),
        super_candidates(&f, window_for(bound)),
        bound,
    )?;
    Ok(base.times_super_kernel())
}

/// `ch 𝓛(λ) = Σ_μ 𝔩_{μ,λ}(1) s_{μ^{<0}}(x₋) s_{μ^{>0}}(x₊) ∏(1 - x_i^{-1}x_j)^{-1}`,
/// exact in positive degree at most `bound`.
pub fn reductive_character_form(lambda: &HighestWeight, bound: i64) -> Result<SchurForm> {
    let f = check_highest(lambda, Flavor::Reductive)?;
    let base = form_of(
        &f,
        &|g| Ok(red_kl_l(g, &f)?.eval_one()),
        red_candidates(&f, window_for(bound)),
        bound,
    )?;
    Ok(base.times_reductive_kernel())
}

/// `ch L_n(λ)` in `x_{-m}..x_{-1}, x_1..x_n`.
pub fn char_super_irreducible(lambda: &HighestWeight, n: usize, bound: i64) -> Result<SymPoly> {
    super_character_form(lambda, bound)?.specialize(n)
}

/// `ch 𝓛_n(λ)` in `x_{-m}..x_{-1}, x_1..x_n`.
pub fn char_reductive_irreducible(lambda: &HighestWeight, n: usize, bound: i64) -> Result<SymPoly> {
    reductive_character_form(lambda, bound)?.specialize(n)
}

/// The highest weight of `♮`: negative block kept, positive partition
/// conjugated, flavor switched.
pub fn natural_highest(lambda: &HighestWeight) -> Result<HighestWeight> {
    let to = match lambda.flavor {
        Flavor::Super => Flavor::Reductive,
        Flavor::Reductive => Flavor::Super,
    };
    let conj = Partition::new(lambda.pos.clone())?.conjugate();
    Ok(HighestWeight::new(to, lambda.neg.clone(), conj.parts().to_vec(), true))
}

/// The reductive highest weight of a partition with `m` negative entries.
pub fn partition_highest(lambda: &Partition, m: usize) -> HighestWeight {
    let neg = (1..=m).map(|i| lambda.part(i)).collect();
    let pos = lambda.parts().iter().skip(m).copied().collect();
    HighestWeight::new(Flavor::Reductive, neg, pos, true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(pairs: &[(&[i64], i64)]) -> SymPoly {
        let mut out = SymPoly::zero(pairs[0].0.len());
        for (e, c) in pairs {
            out.add_term(e.to_vec(), BigInt::from(*c));
        }
        out
    }

    /// `s_λ(x_1..x_k)` by semistandard tableaux.
    fn schur_ssyt(lambda: &Partition, k: usize) -> SymPoly {
        hook_schur(lambda, k, 0)
    }

    #[test]
    fn schur_examples() {
        assert_eq!(schur(&[1], 2).unwrap(), p(&[(&[1, 0], 1), (&[0, 1], 1)]));
        assert_eq!(schur(&[1, 1], 2).unwrap(), p(&[(&[1, 1], 1)]));
        assert_eq!(
            schur(&[1, -1], 2).unwrap(),
            p(&[(&[1, -1], 1), (&[0, 0], 1), (&[-1, 1], 1)])
        );
        assert_eq!(schur(&[1, 1, 1], 2).unwrap(), SymPoly::zero(2));
        assert_eq!(schur(&[], 0).unwrap(), SymPoly::one(0));
    }

    #[test]
    fn omega_examples() {
        // h_2 = s_(2) and e_2 = s_(1,1).
        let h2 = SchurForm::term(SymPoly::one(0), vec![2], 4);
        assert_eq!(h2.omega_plus(), SchurForm::term(SymPoly::one(0), vec![1, 1], 4));
        let neg = schur(&[2, 1], 2).unwrap();
        let fixed = SchurForm::term(neg.clone(), vec![], 4);
        assert_eq!(fixed.omega_plus(), fixed);
        for parts in [vec![2, 1], vec![3, 1, 1], vec![2, 2]] {
            let l = Partition::new(parts.clone()).unwrap();
            let form = SchurForm::term(SymPoly::one(0), parts, 6).omega_plus();
            assert_eq!(form.specialize(3).unwrap(), schur_ssyt(&l.conjugate(), 3));
        }
    }

    #[test]
    fn character_examples() {
        let l = HighestWeight::new(Flavor::Super, vec![1], vec![1], true);
        let ch = char_super_irreducible(&l, 1, 3).unwrap();
        assert_eq!(ch, p(&[(&[1, 1], 1), (&[0, 2], 1)]));
        let zero = HighestWeight::new(Flavor::Super, vec![0, 0], vec![], true);
        assert_eq!(char_super_irreducible(&zero, 2, 3).unwrap(), SymPoly::one(4));
        let zero = HighestWeight::new(Flavor::Reductive, vec![0], vec![], true);
        assert_eq!(char_reductive_irreducible(&zero, 2, 3).unwrap(), SymPoly::one(3));
    }

    #[test]
    fn polynomial_reductive_characters_are_schur() {
        for parts in [vec![1], vec![2, 1], vec![1, 1, 1], vec![2, 2, 1]] {
            let l = Partition::new(parts.clone()).unwrap();
            let hw = partition_highest(&l, 2);
            let ch = char_reductive_irreducible(&hw, 2, l.size()).unwrap();
            assert_eq!(ch, schur(&parts, 4).unwrap(), "{parts:?}");
        }
    }

    #[test]
    fn hook_schur_from_duality() {
        for l in Partition::in_box(4, 2) {
            let hw = partition_highest(&l, 2);
            let sup = natural_highest(&hw).unwrap();
            let ch = char_super_irreducible(&sup, 2, l.size() + 1).unwrap();
            assert_eq!(ch, hook_schur(&l, 2, 2), "{:?}", l.parts());
            assert!(ch.has_nonnegative_coeffs());
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]
        #[test]
        fn jacobi_trudi_matches_tableaux(parts in prop::collection::vec(0i64..4, 0..4), k in 1usize..4) {
            let mut parts = parts;
            parts.sort_unstable_by(|a, b| b.cmp(a));
            let l = Partition::new(parts.clone()).unwrap();
            prop_assert_eq!(schur(&parts, k).unwrap(), schur_ssyt(&l, k));
        }

        #[test]
        fn duality_of_characters(
            neg in prop::collection::vec(-2i64..3, 2),
            pos in prop::collection::vec(0i64..3, 0..3),
        ) {
            let mut neg = neg;
            neg.sort_unstable_by(|a, b| b.cmp(a));
            let mut pos = pos;
            pos.sort_unstable_by(|a, b| b.cmp(a));
            let bound = 4;
            let red = HighestWeight::new(Flavor::Reductive, neg.clone(), pos.clone(), true);
            let sup = natural_highest(&red).unwrap();
            for n in 1..=2 {
                let a = super_character_form(&sup, bound).unwrap().specialize(n).unwrap();
                let b = reductive_character_form(&red, bound).unwrap().omega_plus().specialize(n).unwrap();
                prop_assert_eq!(&a, &b);
                let c = reductive_character_form(&red, bound).unwrap().specialize(n).unwrap();
                let d = super_character_form(&sup, bound).unwrap().omega_plus().specialize(n).unwrap();
                prop_assert_eq!(&c, &d);
            }
        }
    }
}
