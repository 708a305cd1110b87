//! Finite formal sums of dominant weights with Laurent polynomial
//! coefficients.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Value};

use crate::poly::LaurentPoly;
use crate::weight::{eps_weight, Weight};

/// Which basis element an expansion describes and in which basis it is
/// written.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Basis {
    /// Canonical basis (`U_f`, `𝒰_f`).
    U,
    /// Dual canonical basis (`L_f`, `ℒ_f`).
    L,
    /// Monomial basis (`K_f`, `𝒦_f`).
    K,
}

impl Basis {
    pub fn name(self) -> &'static str {
        match self {
            Basis::U => "U",
            Basis::L => "L",
            Basis::K => "K",
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Expansion {
    terms: BTreeMap<Weight, LaurentPoly>,
}

impl Expansion {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(w: Weight) -> Self {
        let mut e = Self::new();
        e.add(w, LaurentPoly::one());
        e
    }

    /// Adds `p·w`, dropping the term if it cancels.
    pub fn add(&mut self, w: Weight, p: LaurentPoly) {
        if p.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            Entry::Vacant(v) => {
                v.insert(p);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += p;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Adds `scale · other`.
    pub fn add_scaled(&mut self, other: &Expansion, scale: &LaurentPoly) {
        for (w, p) in &other.terms {
            self.add(w.clone(), p * scale);
        }
    }

    pub fn coeff(&self, w: &Weight) -> LaurentPoly {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> &BTreeMap<Weight, LaurentPoly> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Weight, &LaurentPoly)> {
        self.terms.iter()
    }

    /// Applies `g` to every weight, dropping terms mapped to `None` and
    /// merging terms mapped to the same weight.
    pub fn map_weights(&self, mut g: impl FnMut(&Weight) -> Option<Weight>) -> Expansion {
        let mut out = Expansion::new();
        for (w, p) in &self.terms {
            if let Some(v) = g(w) {
                out.add(v, p.clone());
            }
        }
        out
    }

    /// Whether all terms share the ε-weight of `f`.
    pub fn eps_constant(&self, f: &Weight) -> bool {
        let e = eps_weight(f);
        self.terms.keys().all(|w| eps_weight(w) == e)
    }

    pub fn terms_json(&self) -> Value {
        json!(self
            .terms
            .iter()
            .map(|(w, p)| json!({ "weight": w.to_json(), "poly": p.to_json() }))
            .collect::<Vec<_>>())
    }

    /// `{"index", "basis", "terms", "window"}`.
    pub fn to_json(&self, index: &Weight, basis: Basis, window: Value) -> Value {
        json!({
            "index": index.to_json(),
            "basis": basis.name(),
            "terms": self.terms_json(),
            "window": window,
        })
    }
}

impl FromIterator<(Weight, LaurentPoly)> for Expansion {
    fn from_iter<I: IntoIterator<Item = (Weight, LaurentPoly)>>(iter: I) -> Self {
        let mut e = Expansion::new();
        for (w, p) in iter {
            e.add(w, p);
        }
        e
    }
}

impl fmt::Display for Expansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(w, p)| format!("({p}) [{w}]")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weight::{w, Flavor};

    #[test]
    fn cancellation_drops_terms() {
        let a = w("1|0", Flavor::Reductive);
        let mut e = Expansion::single(a.clone());
        e.add(a.clone(), -LaurentPoly::one());
        assert!(e.is_empty());
        e.add(a.clone(), LaurentPoly::q_pow(1));
        assert_eq!(e.coeff(&a), LaurentPoly::q_pow(1));
        assert_eq!(e.to_string(), "(q) [1|0]");
    }
}
