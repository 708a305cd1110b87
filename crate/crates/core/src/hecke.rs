//! Tensor-space Kazhdan–Lusztig bases, an independent route to the reductive
//! canonical basis.
//!
//! `𝕋^{m+n}` has basis `𝒱_g`, `g` a function on the `m+n` positions, with the
//! right action `𝒱_g H_p = 𝒱_{g·s_p}` if `g(p) < g(p+1)`, `q^{-1}𝒱_g` if
//! equal, and `𝒱_{g·s_p} - (q - q^{-1})𝒱_g` if `g(p) > g(p+1)`. The bar map
//! fixes anti-dominant `𝒱_g` and is compatible with the action, so
//! `bar(𝒱_g) = bar(𝒱_{g·s_p}) H_p^{-1}` at any descent `p` of `g`. The
//! canonical bases `𝒯` (coefficients in `qℤ[q]`) and `ℒ` (in `q^{-1}ℤ[q^{-1}]`)
//! of one orbit follow by a triangular solve against the bar matrix; their
//! coefficients are the parabolic polynomials `m_{y,x}` and `m̃_{y,x}` of the
//! stabilizer of the anti-dominant point. `𝒰_f` is the image of `𝒯_{f·w₀}`
//! under the quotient map onto `𝓔^{m+n}`.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::expansion::Expansion;
use crate::poly::LaurentPoly;
use crate::weight::{dominant_rep, Flavor, Weight};

/// Default cap on `m + n` for the oracle.
pub const ORACLE_BUDGET: usize = 6;

// ------------------------------------------------------------- Hecke algebra

/// A permutation of `0..len` in one-line notation.
pub type Perm = Vec<u8>;

/// Inversion count.
pub fn perm_length(x: &[u8]) -> usize {
    (0..x.len())
        .map(|a| (a + 1..x.len()).filter(|&b| x[a] > x[b]).count())
        .sum()
}

/// A reduced word `x = s_{i_1} ⋯ s_{i_r}`, generator `p` swapping `p, p+1`.
pub fn reduced_word(x: &[u8]) -> Vec<usize> {
    let mut x = x.to_vec();
    let mut word = Vec::new();
    while let Some(p) = (0..x.len().saturating_sub(1)).find(|&p| x[p] > x[p + 1]) {
        x.swap(p, p + 1);
        word.push(p);
    }
    word.reverse();
    word
}

/// An element `Σ c_x H_x` of the Hecke algebra of `S_len`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeckeElement {
    pub len: usize,
    pub terms: BTreeMap<Perm, LaurentPoly>,
}

impl HeckeElement {
    pub fn zero(len: usize) -> Self {
        HeckeElement {
            len,
            terms: BTreeMap::new(),
        }
    }

    pub fn basis(x: Perm) -> Self {
        let len = x.len();
        HeckeElement {
            len,
            terms: BTreeMap::from([(x, LaurentPoly::one())]),
        }
    }

    pub fn identity(len: usize) -> Self {
        Self::basis((0..len as u8).collect())
    }

    fn add(&mut self, x: Perm, c: LaurentPoly) {
        let slot = self.terms.entry(x.clone()).or_insert_with(LaurentPoly::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&x);
        }
    }

    pub fn scaled(&self, c: &LaurentPoly) -> Self {
        let mut out = Self::zero(self.len);
        for (x, p) in &self.terms {
            out.add(x.clone(), p * c);
        }
        out
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (x, p) in &other.terms {
            out.add(x.clone(), p.clone());
        }
        out
    }

    /// Right multiplication by `H_p`.
    pub fn mul_gen(&self, p: usize) -> Self {
        let mut out = Self::zero(self.len);
        let v = LaurentPoly::q_pow(-1) - LaurentPoly::q_pow(1);
        for (x, c) in &self.terms {
            let mut y = x.clone();
            y.swap(p, p + 1);
            if x[p] < x[p + 1] {
                out.add(y, c.clone());
            } else {
                out.add(y, c.clone());
                out.add(x.clone(), c * &v);
            }
        }
        out
    }

    /// Right multiplication by `H_p^{-1} = H_p + (q - q^{-1})`.
    pub fn mul_gen_inv(&self, p: usize) -> Self {
        let v = LaurentPoly::q_pow(1) - LaurentPoly::q_pow(-1);
        self.mul_gen(p).plus(&self.scaled(&v))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.len);
        for (y, c) in &other.terms {
            let mut part = self.clone();
            for p in reduced_word(y) {
                part = part.mul_gen(p);
            }
            out = out.plus(&part.scaled(c));
        }
        out
    }

    /// `bar(Σ c_x H_x) = Σ bar(c_x) H_{x^{-1}}^{-1}`.
    pub fn bar(&self) -> Self {
        let mut out = Self::zero(self.len);
        for (x, c) in &self.terms {
            let mut part = Self::identity(self.len);
            for p in reduced_word(x) {
                part = part.mul_gen_inv(p);
            }
            out = out.plus(&part.scaled(&c.bar()));
        }
        out
    }
}

// -------------------------------------------------------------- tensor space

/// A vector of `𝕋^{m+n}`: values at positions `-m..-1, 1..n` in order.
pub type Tensor = BTreeMap<Vec<i64>, LaurentPoly>;

fn tensor_add(t: &mut Tensor, g: Vec<i64>, c: LaurentPoly) {
    if c.is_zero() {
        return;
    }
    let slot = t.entry(g.clone()).or_insert_with(LaurentPoly::zero);
    *slot += c;
    if slot.is_zero() {
        t.remove(&g);
    }
}

/// `t · H_p`.
pub fn tensor_mul_gen(t: &Tensor, p: usize) -> Tensor {
    let mut out = Tensor::new();
    let v = LaurentPoly::q_pow(1) - LaurentPoly::q_pow(-1);
    for (g, c) in t {
        let mut h = g.clone();
        h.swap(p, p + 1);
        match g[p].cmp(&g[p + 1]) {
            std::cmp::Ordering::Less => tensor_add(&mut out, h, c.clone()),
            std::cmp::Ordering::Equal => tensor_add(&mut out, h, c * &LaurentPoly::q_pow(-1)),
            std::cmp::Ordering::Greater => {
                tensor_add(&mut out, h, c.clone());
                tensor_add(&mut out, g.clone(), -(c * &v));
            }
        }
    }
    out
}

/// `t · H`.
pub fn tensor_act(t: &Tensor, h: &HeckeElement) -> Tensor {
    let mut out = Tensor::new();
    for (x, c) in &h.terms {
        let mut part = t.clone();
        for p in reduced_word(x) {
            part = tensor_mul_gen(&part, p);
        }
        for (g, d) in part {
            tensor_add(&mut out, g, d * c);
        }
    }
    out
}

fn tensor_mul_gen_inv(t: &Tensor, p: usize) -> Tensor {
    let mut out = tensor_mul_gen(t, p);
    let v = LaurentPoly::q_pow(1) - LaurentPoly::q_pow(-1);
    for (g, c) in t {
        tensor_add(&mut out, g.clone(), c * &v);
    }
    out
}

fn inversions(g: &[i64]) -> usize {
    (0..g.len())
        .map(|a| (a + 1..g.len()).filter(|&b| g[a] > g[b]).count())
        .sum()
}

/// Which canonical basis of an orbit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// `𝒯`, off-leading coefficients in `qℤ[q]`.
    T,
    /// `ℒ`, off-leading coefficients in `q^{-1}ℤ[q^{-1}]`.
    L,
}

/// One `S_{m+n}`-orbit of `𝕋^{m+n}` with its bar matrix.
pub struct Orbit {
    /// Orbit elements by increasing length.
    pub elems: Vec<Vec<i64>>,
    index: HashMap<Vec<i64>, usize>,
    bar: Vec<Tensor>,
}

impl Orbit {
    /// The orbit of `g`.
    pub fn of(g: &[i64]) -> Orbit {
        let mut base = g.to_vec();
        base.sort_unstable();
        let mut elems = vec![base.clone()];
        // Lexicographic successors enumerate distinct arrangements.
        let mut cur = base;
        while next_permutation(&mut cur) {
            elems.push(cur.clone());
        }
        elems.sort_by_key(|e| inversions(e));
        let index: HashMap<Vec<i64>, usize> = elems.iter().enumerate().map(|(k, e)| (e.clone(), k)).collect();
        let mut bar: Vec<Tensor> = Vec::with_capacity(elems.len());
        for e in &elems {
            let t = match (0..e.len().saturating_sub(1)).find(|&p| e[p] > e[p + 1]) {
                None => Tensor::from([(e.clone(), LaurentPoly::one())]),
                Some(p) => {
                    let mut lower = e.clone();
                    lower.swap(p, p + 1);
                    tensor_mul_gen_inv(&bar[index[&lower]], p)
                }
            };
            bar.push(t);
        }
        Orbit { elems, index, bar }
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    /// `bar(𝒱_g)`.
    pub fn bar_of(&self, g: &[i64]) -> &Tensor {
        &self.bar[self.index[g]]
    }

    /// Anti-linear bar map on vectors supported on the orbit.
    pub fn bar(&self, t: &Tensor) -> Tensor {
        let mut out = Tensor::new();
        for (g, c) in t {
            for (h, d) in self.bar_of(g) {
                tensor_add(&mut out, h.clone(), c.bar() * d);
            }
        }
        out
    }

    /// `𝒯_g` or `ℒ_g`: the bar-invariant vector `𝒱_g + Σ_{h<g} c_h 𝒱_h` with
    /// every `c_h` in `qℤ[q]` (resp. `q^{-1}ℤ[q^{-1}]`).
    pub fn canonical(&self, g: &[i64], family: Family) -> Result<Tensor> {
        let top = self.index[g];
        let mut coeff: BTreeMap<usize, LaurentPoly> = BTreeMap::from([(top, LaurentPoly::one())]);
        // Length strictly increases along the order, so every `h > k` with a
        // contribution has been fixed before `k`.
        for k in (0..top).rev() {
            let key = &self.elems[k];
            let mut s = LaurentPoly::zero();
            for (&h, c) in coeff.iter() {
                if let Some(r) = self.bar[h].get(key) {
                    s += c.bar() * r;
                }
            }
            if s.is_zero() {
                continue;
            }
            let c = match family {
                Family::T => s.positive_part(),
                Family::L => s.negative_part(),
            };
            if c.clone() - c.bar() != s {
                return Err(Error::Invariant(format!("bar defect at {key:?} is not anti-symmetric")));
            }
            coeff.insert(k, c);
        }
        Ok(coeff.into_iter().map(|(k, c)| (self.elems[k].clone(), c)).collect())
    }
}

fn next_permutation(v: &mut [i64]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len())
        .rev()
        .find(|&j| v[j] > v[i - 1])
        .expect("pivot has a successor");
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Parabolic Kazhdan–Lusztig polynomials of the stabilizer of an
/// anti-dominant `f`, indexed by the weights `f·x`, `x ∈ S^f`:
/// `result[f·x][f·y] = m_{y,x}` (family `T`) or `m̃_{y,x}` (family `L`).
pub fn parabolic_kl(f: &[i64], family: Family) -> Result<BTreeMap<Vec<i64>, Tensor>> {
    if f.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::Invalid(format!("{f:?} is not anti-dominant")));
    }
    let orbit = Orbit::of(f);
    orbit
        .elems
        .iter()
        .map(|x| Ok((x.clone(), orbit.canonical(x, family)?)))
        .collect()
}

/// Quotient map `𝕋^{m+n} → 𝓔^{m+n}`: `𝒱_g ↦ (-q^{-1})^k 𝒦_{g⁺}`, zero when
/// a block repeats a value.
pub fn project_h0(t: &Tensor, m: usize) -> Expansion {
    let mut out = Expansion::new();
    for (g, c) in t {
        let raw = Weight::finite(Flavor::Reductive, g[..m].to_vec(), g[m..].to_vec());
        if let Some(s) = dominant_rep(&raw) {
            out.add(s.weight, c * &LaurentPoly::monomial(s.sign, s.qpower));
        }
    }
    out
}

/// `f·w₀`: each block reversed.
pub fn times_w0(f: &Weight) -> Vec<i64> {
    f.neg.iter().rev().chain(f.pos.iter().rev()).copied().collect()
}

/// `𝒰_f` as the image of `𝒯_{f·w₀}`, normalized so `𝒦_f` has coefficient 1.
pub fn oracle_canonical(f: &Weight) -> Result<Expansion> {
    oracle_canonical_budget(f, ORACLE_BUDGET)
}

pub fn oracle_canonical_budget(f: &Weight, budget: usize) -> Result<Expansion> {
    if f.flavor != Flavor::Reductive || f.tail {
        return Err(Error::Invalid(format!(
            "the oracle takes finite reductive weights, got {f}"
        )));
    }
    f.require_dominant()?;
    let size = f.m() + f.len();
    if size > budget {
        return Err(Error::Budget {
            got: size,
            limit: budget,
        });
    }
    let g = times_w0(f);
    let orbit = Orbit::of(&g);
    let t = orbit.canonical(&g, Family::T)?;
    let image = project_h0(&t, f.m());
    let lead = image.coeff(f);
    let Some((c, e)) = lead.as_monomial() else {
        return Err(Error::Invariant(format!(
            "leading coefficient {lead} of the image is not a monomial"
        )));
    };
    let unit = LaurentPoly::monomial(c.clone(), 0);
    if !(unit.is_one() || (-unit).is_one()) {
        return Err(Error::Invariant(format!("leading coefficient {lead} is not a unit")));
    }
    let inv = LaurentPoly::monomial(c.clone(), -e);
    Ok(image.iter().map(|(w, p)| (w.clone(), p * &inv)).collect())
}

/// Tensor-space `𝔩_{g,f}` for dominant `f, g` in one orbit.
pub fn tensor_l(g: &Weight, f: &Weight) -> Result<LaurentPoly> {
    let fv: Vec<i64> = f.neg.iter().chain(&f.pos).copied().collect();
    let gv: Vec<i64> = g.neg.iter().chain(&g.pos).copied().collect();
    let mut a = fv.clone();
    let mut b = gv.clone();
    a.sort_unstable();
    b.sort_unstable();
    if a != b {
        return Ok(LaurentPoly::zero());
    }
    let orbit = Orbit::of(&fv);
    Ok(orbit
        .canonical(&fv, Family::L)?
        .get(&gv)
        .cloned()
        .unwrap_or_else(LaurentPoly::zero))
}
