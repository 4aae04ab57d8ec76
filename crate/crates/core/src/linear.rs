//! Sparse integer combinations over an ordered key set.

use std::collections::btree_map::{self, Entry};
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// A finite `Z`-linear combination of keys. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lin<K: Ord> {
    terms: BTreeMap<K, BigInt>,
}

impl<K: Ord> Default for Lin<K> {
    fn default() -> Self {
        Lin { terms: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> Lin<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(key: K) -> Self {
        let mut l = Self::zero();
        l.terms.insert(key, BigInt::one());
        l
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, key: &K) -> BigInt {
        self.terms.get(key).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> btree_map::Iter<'_, K, BigInt> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.terms.keys()
    }

    pub fn add_term(&mut self, key: K, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// `self += c * other`
    pub fn add_scaled(&mut self, other: &Lin<K>, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        for (k, v) in &other.terms {
            self.add_term(k.clone(), &(v * c));
        }
    }

    pub fn add_assign(&mut self, other: &Lin<K>) {
        self.add_scaled(other, &BigInt::one());
    }

    pub fn sub_assign(&mut self, other: &Lin<K>) {
        self.add_scaled(other, &-BigInt::one());
    }

    pub fn scaled(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Lin {
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        Lin {
            terms: self.terms.iter().map(|(k, v)| (k.clone(), -v)).collect(),
        }
    }

    /// Keep only the terms satisfying `keep`.
    pub fn filtered(&self, mut keep: impl FnMut(&K) -> bool) -> Self {
        Lin {
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| keep(k))
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
        }
    }

    pub fn map_keys<K2: Ord + Clone>(&self, mut f: impl FnMut(&K) -> K2) -> Lin<K2> {
        let mut out = Lin::zero();
        for (k, v) in &self.terms {
            out.add_term(f(k), v);
        }
        out
    }
}

impl<K: Ord + Clone> FromIterator<(K, BigInt)> for Lin<K> {
    fn from_iter<I: IntoIterator<Item = (K, BigInt)>>(iter: I) -> Self {
        let mut l = Lin::zero();
        for (k, c) in iter {
            l.add_term(k, &c);
        }
        l
    }
}

impl<'a, K: Ord> IntoIterator for &'a Lin<K> {
    type Item = (&'a K, &'a BigInt);
    type IntoIter = btree_map::Iter<'a, K, BigInt>;
    fn into_iter(self) -> Self::IntoIter {
        self.terms.iter()
    }
}

/// JSON number when the value fits in an `i64`, decimal string otherwise.
pub fn int_json(v: &BigInt) -> serde_json::Value {
    use num_traits::ToPrimitive;
    match v.to_i64() {
        Some(i) => serde_json::Value::from(i),
        None => serde_json::Value::String(v.to_string()),
    }
}
