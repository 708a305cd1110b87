//! Weights of the two Fock spaces: sequences `f` indexed by `-m..-1` (the
//! negative block) and `1..n` (the positive block).
//!
//! A weight is either finite (`n` explicit) or profinite, in which case only a
//! prefix of the positive block is stored and every later position follows
//! the standard tail: `f(j) = j` for super weights and `f(j) = 1 - j` for
//! reductive weights. Profinite prefixes are kept normalized (no trailing
//! entry equal to its tail value).
//!
//! Dominance conventions: the negative block is strictly decreasing in both
//! flavors; the positive block is strictly increasing (super) or strictly
//! decreasing (reductive). Intermediate results of the weight-moving
//! operators are only conjugate to dominant weights and use the same type.

use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Flavor {
    /// `gl(m|n)`: positive block increasing, tail `f(j) = j`.
    Super,
    /// `gl(m+n)`: positive block decreasing, tail `f(j) = 1 - j`.
    Reductive,
}

impl Flavor {
    pub fn name(self) -> &'static str {
        match self {
            Flavor::Super => "super",
            Flavor::Reductive => "reductive",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "super" => Ok(Flavor::Super),
            "reductive" => Ok(Flavor::Reductive),
            _ => Err(Error::Parse(format!("unknown flavor `{s}`"))),
        }
    }

    /// Value of the standard tail at positive position `j >= 1`.
    pub fn tail_value(self, j: i64) -> i64 {
        match self {
            Flavor::Super => j,
            Flavor::Reductive => 1 - j,
        }
    }
}

/// Multiplicities of the `ε_a`; for profinite weights the contribution of the
/// standard tail over all positive positions is subtracted.
pub type EpsWeight = BTreeMap<i64, i64>;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight {
    pub flavor: Flavor,
    /// `f(-m), ..., f(-1)`.
    pub neg: Vec<i64>,
    /// `f(1), ..., f(len)`.
    pub pos: Vec<i64>,
    /// Whether positions past `pos.len()` follow the standard tail.
    pub tail: bool,
}

impl Weight {
    /// Builds a weight, normalizing the tail of profinite input.
    pub fn new(flavor: Flavor, neg: Vec<i64>, pos: Vec<i64>, tail: bool) -> Self {
        let mut w = Self { flavor, neg, pos, tail };
        w.normalize();
        w
    }

    pub fn finite(flavor: Flavor, neg: Vec<i64>, pos: Vec<i64>) -> Self {
        Self::new(flavor, neg, pos, false)
    }

    pub fn profinite(flavor: Flavor, neg: Vec<i64>, prefix: Vec<i64>) -> Self {
        Self::new(flavor, neg, prefix, true)
    }

    pub fn m(&self) -> usize {
        self.neg.len()
    }

    /// Number of stored positive entries (`n` for finite weights).
    pub fn len(&self) -> usize {
        self.pos.len()
    }

    pub fn is_empty(&self) -> bool {
        self.neg.is_empty() && self.pos.is_empty()
    }

    /// `f(idx)` for `idx` in `-m..-1` or `idx >= 1`.
    pub fn get(&self, idx: i64) -> i64 {
        if idx < 0 {
            self.neg[(self.neg.len() as i64 + idx) as usize]
        } else {
            assert!(idx >= 1, "position 0 does not exist");
            match self.pos.get(idx as usize - 1) {
                Some(v) => *v,
                None => {
                    assert!(self.tail, "position {idx} outside finite weight");
                    self.flavor.tail_value(idx)
                }
            }
        }
    }

    /// Sets `f(idx)`, materializing tail positions as needed.
    pub fn set(&mut self, idx: i64, v: i64) {
        if idx < 0 {
            let m = self.neg.len() as i64;
            self.neg[(m + idx) as usize] = v;
        } else {
            self.materialize(idx as usize);
            self.pos[idx as usize - 1] = v;
        }
    }

    /// Extends the stored prefix with tail values up to length `n`.
    pub fn materialize(&mut self, n: usize) {
        if n > self.pos.len() {
            assert!(self.tail, "cannot extend a finite weight");
            for j in self.pos.len() + 1..=n {
                self.pos.push(self.flavor.tail_value(j as i64));
            }
        }
    }

    pub fn materialized(&self, n: usize) -> Self {
        let mut w = self.clone();
        w.materialize(n);
        w
    }

    /// Drops trailing prefix entries that agree with the tail.
    pub fn normalize(&mut self) {
        if self.tail {
            while let Some(&v) = self.pos.last() {
                if v == self.flavor.tail_value(self.pos.len() as i64) {
                    self.pos.pop();
                } else {
                    break;
                }
            }
        }
    }

    /// Whether `v` lies in the tail region not covered by the stored prefix.
    fn in_tail_region(&self, v: i64) -> bool {
        let n = self.pos.len() as i64;
        self.tail
            && match self.flavor {
                Flavor::Super => v > n,
                Flavor::Reductive => v <= -n,
            }
    }

    pub fn neg_contains(&self, v: i64) -> bool {
        self.neg.contains(&v)
    }

    /// Membership among the positive-side values, tail included.
    pub fn pos_contains(&self, v: i64) -> bool {
        self.pos.contains(&v) || self.in_tail_region(v)
    }

    /// Position `j > 0` with `f(j) = v`, tail included.
    pub fn pos_position(&self, v: i64) -> Option<i64> {
        if let Some(k) = self.pos.iter().position(|&x| x == v) {
            return Some(k as i64 + 1);
        }
        if self.in_tail_region(v) {
            return Some(match self.flavor {
                Flavor::Super => v,
                Flavor::Reductive => 1 - v,
            });
        }
        None
    }

    pub fn neg_position(&self, v: i64) -> Option<i64> {
        let m = self.neg.len() as i64;
        self.neg.iter().position(|&x| x == v).map(|k| k as i64 - m)
    }

    pub fn neg_sum(&self) -> i64 {
        self.neg.iter().sum()
    }

    /// Dominant: both blocks strictly monotone in the flavor's direction and
    /// a prefix compatible with the tail.
    pub fn is_dominant(&self) -> bool {
        let neg_ok = self.neg.windows(2).all(|w| w[0] > w[1]);
        let pos_ok = match self.flavor {
            Flavor::Super => self.pos.windows(2).all(|w| w[0] < w[1]),
            Flavor::Reductive => self.pos.windows(2).all(|w| w[0] > w[1]),
        };
        neg_ok && pos_ok && self.pos.iter().all(|&v| !self.in_tail_region(v))
    }

    /// Conjugate to a dominant weight: no repeated value inside a block.
    pub fn is_conj_dominant(&self) -> bool {
        distinct(&self.neg) && distinct(&self.pos) && self.pos.iter().all(|&v| !self.in_tail_region(v))
    }

    /// The dominant conjugate `f^+`, or `None` when a block repeats a value.
    pub fn dominant(&self) -> Option<Weight> {
        if !self.is_conj_dominant() {
            return None;
        }
        let mut neg = self.neg.clone();
        neg.sort_unstable_by(|a, b| b.cmp(a));
        let mut pos = self.pos.clone();
        match self.flavor {
            Flavor::Super => pos.sort_unstable(),
            Flavor::Reductive => pos.sort_unstable_by(|a, b| b.cmp(a)),
        }
        Some(Weight::new(self.flavor, neg, pos, self.tail))
    }

    /// Rejects non-dominant weights with a diagnostic.
    pub fn require_dominant(&self) -> Result<()> {
        if self.neg.is_empty() {
            return Err(Error::Invalid("negative block must be non-empty".into()));
        }
        if self.is_dominant() {
            Ok(())
        } else {
            Err(Error::Invalid(format!(
                "{} weight {self} is not dominant",
                self.flavor.name()
            )))
        }
    }

    /// Entrywise shift `f - p` on both blocks (the shift by `p·1`).
    pub fn shifted(&self, p: i64) -> Weight {
        assert!(!self.tail, "shift applies to finite weights");
        Weight::finite(
            self.flavor,
            self.neg.iter().map(|v| v - p).collect(),
            self.pos.iter().map(|v| v - p).collect(),
        )
    }

    /// `-f·w0` for a finite weight: negate and reverse each block.
    pub fn neg_w0(&self) -> Weight {
        assert!(!self.tail, "-f·w0 needs a finite weight");
        Weight::finite(
            self.flavor,
            self.neg.iter().rev().map(|v| -v).collect(),
            self.pos.iter().rev().map(|v| -v).collect(),
        )
    }

    /// The finite weight formed by the first `n` positive entries of a
    /// profinite weight (`n` at least the prefix length); finite weights are
    /// returned unchanged.
    pub fn finite_window(&self, n: usize) -> Weight {
        if !self.tail {
            return self.clone();
        }
        assert!(n >= self.pos.len(), "window {n} shorter than the prefix of {self}");
        let mut w = self.materialized(n);
        w.tail = false;
        w
    }

    /// Parses `a,b,...|c,d,...` with an optional trailing `*` marking the
    /// standard tail.
    pub fn parse(text: &str, flavor: Flavor) -> Result<Weight> {
        let text = text.replace('\u{2212}', "-");
        let (neg_s, pos_s) = text
            .split_once('|')
            .ok_or_else(|| Error::Parse(format!("missing `|` in `{text}`")))?;
        if pos_s.contains('|') {
            return Err(Error::Parse(format!("more than one `|` in `{text}`")));
        }
        let neg = parse_list(neg_s)?;
        let mut items: Vec<&str> = pos_s.split(',').map(str::trim).collect();
        if items.len() == 1 && items[0].is_empty() {
            items.clear();
        }
        let tail = items.last() == Some(&"*");
        if tail {
            items.pop();
        }
        let pos = items.iter().map(|s| parse_int(s)).collect::<Result<Vec<_>>>()?;
        Ok(Weight::new(flavor, neg, pos, tail))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "m": self.m(),
            "flavor": self.flavor.name(),
            "neg": self.neg,
            "pos": self.pos,
            "tail": self.tail,
        })
    }

    pub fn from_json(v: &Value) -> Result<Weight> {
        let bad = || Error::Parse(format!("malformed weight JSON {v}"));
        let flavor = Flavor::parse(v["flavor"].as_str().ok_or_else(bad)?)?;
        let ints = |k: &str| -> Result<Vec<i64>> {
            v[k].as_array()
                .ok_or_else(bad)?
                .iter()
                .map(|x| x.as_i64().ok_or_else(bad))
                .collect()
        };
        let w = Weight::new(flavor, ints("neg")?, ints("pos")?, v["tail"].as_bool().ok_or_else(bad)?);
        if v["m"].as_u64() != Some(w.m() as u64) {
            return Err(bad());
        }
        Ok(w)
    }
}

fn distinct(v: &[i64]) -> bool {
    let mut s = v.to_vec();
    s.sort_unstable();
    s.windows(2).all(|w| w[0] != w[1])
}

fn parse_int(s: &str) -> Result<i64> {
    s.trim().parse().map_err(|_| Error::Parse(format!("bad integer `{s}`")))
}

fn parse_list(s: &str) -> Result<Vec<i64>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(parse_int).collect()
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[i64]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        write!(f, "{}|{}", join(&self.neg), join(&self.pos))?;
        if self.tail {
            if self.pos.is_empty() {
                write!(f, "*")?;
            } else {
                write!(f, ",*")?;
            }
        }
        Ok(())
    }
}

/// Result of straightening a raw weight into its dominant representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Straightened {
    pub weight: Weight,
    /// `(-1)^k` for `k` the number of adjacent swaps.
    pub sign: i64,
    /// `-k`.
    pub qpower: i64,
}

/// Straightens a raw weight: `None` (the zero vector) if a block repeats a
/// value, else the dominant conjugate with scalar `(-q^-1)^k`, `k` the length
/// of the minimal block permutation sorting `raw`.
pub fn dominant_rep(raw: &Weight) -> Option<Straightened> {
    let weight = raw.dominant()?;
    let desc_inv = |v: &[i64]| -> i64 {
        let mut k = 0;
        for a in 0..v.len() {
            for b in a + 1..v.len() {
                if v[a] < v[b] {
                    k += 1;
                }
            }
        }
        k
    };
    let asc_inv = |v: &[i64]| -> i64 {
        let mut k = 0;
        for a in 0..v.len() {
            for b in a + 1..v.len() {
                if v[a] > v[b] {
                    k += 1;
                }
            }
        }
        k
    };
    let k = desc_inv(&raw.neg)
        + match raw.flavor {
            Flavor::Super => asc_inv(&raw.pos),
            Flavor::Reductive => desc_inv(&raw.pos),
        };
    Some(Straightened {
        weight,
        sign: if k % 2 == 0 { 1 } else { -1 },
        qpower: -k,
    })
}

/// The ε-weight of `f`; profinite weights are measured against the tail.
pub fn eps_weight(f: &Weight) -> EpsWeight {
    let mut e = EpsWeight::new();
    let mut bump = |a: i64, d: i64| {
        let x = e.entry(a).or_insert(0);
        *x += d;
    };
    let pos_sign = match f.flavor {
        Flavor::Super => -1,
        Flavor::Reductive => 1,
    };
    for &v in &f.neg {
        bump(v, 1);
    }
    for (k, &v) in f.pos.iter().enumerate() {
        bump(v, pos_sign);
        if f.tail {
            bump(f.flavor.tail_value(k as i64 + 1), -pos_sign);
        }
    }
    e.retain(|_, x| *x != 0);
    e
}

/// A highest weight `λ`, indexed like weights. For `infinite` weights `pos`
/// is the finite support of the positive-side partition.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HighestWeight {
    pub flavor: Flavor,
    pub neg: Vec<i64>,
    pub pos: Vec<i64>,
    pub infinite: bool,
}

impl HighestWeight {
    pub fn new(flavor: Flavor, neg: Vec<i64>, mut pos: Vec<i64>, infinite: bool) -> Self {
        if infinite {
            while pos.last() == Some(&0) {
                pos.pop();
            }
        }
        Self {
            flavor,
            neg,
            pos,
            infinite,
        }
    }

    pub fn is_dominant(&self) -> bool {
        self.neg.windows(2).all(|w| w[0] >= w[1])
            && self.pos.windows(2).all(|w| w[0] >= w[1])
            && (!self.infinite || self.pos.iter().all(|&x| x >= 0))
    }

    /// `f_λ`: super `f(i) = λ_i - i`, `f(j) = j - λ_j`; reductive
    /// `f(i) = λ_i - i`, `f(j) = λ_j + 1 - j`.
    pub fn to_f(&self) -> Result<Weight> {
        if !self.is_dominant() || self.neg.is_empty() {
            return Err(Error::Invalid(format!("highest weight {self:?} is not dominant")));
        }
        let m = self.neg.len() as i64;
        let neg = self.neg.iter().enumerate().map(|(k, l)| l - (k as i64 - m)).collect();
        let pos = self
            .pos
            .iter()
            .enumerate()
            .map(|(k, l)| {
                let j = k as i64 + 1;
                match self.flavor {
                    Flavor::Super => j - l,
                    Flavor::Reductive => l + 1 - j,
                }
            })
            .collect();
        Ok(Weight::new(self.flavor, neg, pos, self.infinite))
    }

    /// Inverse of [`HighestWeight::to_f`].
    pub fn from_f(f: &Weight) -> HighestWeight {
        let m = f.m() as i64;
        let neg = f.neg.iter().enumerate().map(|(k, v)| v + (k as i64 - m)).collect();
        let pos = f
            .pos
            .iter()
            .enumerate()
            .map(|(k, v)| {
                let j = k as i64 + 1;
                match f.flavor {
                    Flavor::Super => j - v,
                    Flavor::Reductive => v - 1 + j,
                }
            })
            .collect();
        HighestWeight::new(f.flavor, neg, pos, f.tail)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "flavor": self.flavor.name(),
            "neg": self.neg,
            "pos": self.pos,
            "infinite": self.infinite,
        })
    }
}

#[cfg(test)]
pub(crate) fn w(s: &str, flavor: Flavor) -> Weight {
    Weight::parse(s, flavor).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use Flavor::*;

    #[test]
    fn parse_and_normalize() {
        let f = w("0,-2|-2,0,3,4,*", Super);
        assert_eq!(f.pos, vec![-2, 0]);
        assert!(f.tail && f.is_dominant());
        assert_eq!(f.get(5), 5);
        assert_eq!(f.to_string(), "0,-2|-2,0,*");
        let g = w("3|1,0,-2,-3,*", Reductive);
        assert_eq!(g.pos, vec![1, 0]);
        assert_eq!(g.get(4), -3);
        assert_eq!(w("1|*", Super).to_string(), "1|*");
        assert!(Weight::parse("1,2", Super).is_err());
        assert!(Weight::parse("1|x", Super).is_err());
        assert_eq!(Weight::from_json(&f.to_json()).unwrap(), f);
    }

    #[test]
    fn bijection_examples() {
        let l0 = HighestWeight::new(Super, vec![0], vec![], true);
        assert_eq!(l0.to_f().unwrap(), w("1|*", Super));
        assert_eq!(w("1|1,2,*", Super), w("1|*", Super));
        let r0 = HighestWeight::new(Reductive, vec![0], vec![], true);
        assert_eq!(r0.to_f().unwrap(), w("1|*", Reductive));
        assert_eq!(w("1|*", Reductive).get(1), 0);
        let r = HighestWeight::new(Reductive, vec![2], vec![1, 1, 0], true);
        assert_eq!(r.to_f().unwrap(), w("3|1,0,-2,*", Reductive));
        assert_eq!(HighestWeight::from_f(&w("3|1,0,-2,*", Reductive)), r);
        assert_eq!(HighestWeight::from_f(&w("1|*", Super)), l0);
        assert!(HighestWeight::new(Super, vec![0, 1], vec![], true).to_f().is_err());
    }

    #[test]
    fn straightening_examples() {
        let s = dominant_rep(&w("0,2|-1,3", Reductive)).unwrap();
        assert_eq!(s.weight, w("2,0|3,-1", Reductive));
        assert_eq!((s.sign, s.qpower), (1, -2));
        assert!(dominant_rep(&w("2,2|1", Reductive)).is_none());
        let f = w("2,1,0|3,0,-2", Reductive);
        let s = dominant_rep(&f).unwrap();
        assert_eq!((s.weight, s.sign, s.qpower), (f, 1, 0));
    }

    #[test]
    fn eps_examples() {
        let e = eps_weight(&w("2,0|3,-1", Reductive));
        assert_eq!(e, [(2, 1), (0, 1), (3, 1), (-1, 1)].into_iter().collect());
        // Against the vacuum tail the single negative entry survives.
        assert_eq!(eps_weight(&w("1|1,2,*", Super)), [(1, 1)].into_iter().collect());
        assert_eq!(
            eps_weight(&w("2,0|3,-1", Reductive)),
            eps_weight(&w("0,2|-1,3", Reductive))
        );
    }

    fn arb_hw(flavor: Flavor) -> impl Strategy<Value = HighestWeight> {
        (
            prop::collection::vec(-6i64..=6, 1..4),
            prop::collection::vec(0i64..=6, 0..6),
        )
            .prop_map(move |(mut n, mut p)| {
                n.sort_unstable_by(|a, b| b.cmp(a));
                p.sort_unstable_by(|a, b| b.cmp(a));
                HighestWeight::new(flavor, n, p, true)
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn bijections_round_trip(l in arb_hw(Super), r in arb_hw(Reductive)) {
            for lam in [l, r] {
                let f = lam.to_f().unwrap();
                prop_assert!(f.is_dominant());
                prop_assert_eq!(HighestWeight::from_f(&f), lam);
                let text = f.to_string();
                prop_assert_eq!(Weight::parse(&text, f.flavor).unwrap(), f);
            }
        }

        #[test]
        fn straightening_scalar_shape(
            neg in prop::collection::vec(-4i64..=4, 1..4),
            pos in prop::collection::vec(-4i64..=4, 0..4),
        ) {
            let raw = Weight::finite(Reductive, neg, pos);
            if let Some(s) = dominant_rep(&raw) {
                prop_assert!(s.qpower <= 0);
                prop_assert_eq!(s.sign, if s.qpower % 2 == 0 { 1 } else { -1 });
                prop_assert_eq!(eps_weight(&s.weight), eps_weight(&raw));
                let again = dominant_rep(&s.weight).unwrap();
                prop_assert_eq!((again.weight, again.sign, again.qpower), (s.weight, 1, 0));
            }
        }
    }
}
