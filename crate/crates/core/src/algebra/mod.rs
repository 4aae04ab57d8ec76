//! Layered graded Lie algebras.
//!
//! An [`AlgebraSpec`] is an iterated semidirect product
//! `L[V_top] ⋊ (… ⋊ (L[V_1] ⋊ L[V_0]))` of free Lie algebras over `Z`. Layer 0
//! is the outermost quotient and the last layer is the innermost ideal. Inside
//! a layer the algebra is free; a generator `g` of layer `i` acts on a generator
//! `b` of layer `j > i` through a weight-2 entry of the action table, and that
//! action is extended to all basis elements as a derivation in the target and
//! as a Lie homomorphism in the actor.
//!
//! All computation uses bracket weight `q` (the component `gr_q`); doubling
//! to the even grading `2q` changes no signs, so it is never materialised.

mod consistency;
mod families;
mod parse;

use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::RwLock;

use num_bigint::BigInt;
use num_traits::One;
use serde_json::{json, Value};

use crate::error::{invalid, LieError, Result};
use crate::linear::{int_json, Lin};
use crate::lyndon::{bracket_lin, bracket_words, lyndon_words, split_unchecked, witt_dimension, Letter, LyndonWord};

pub use consistency::{ConsistencyOptions, ConsistencyReport, JacobiViolation};
pub use families::{braid_names, mccool_central_names, monomial_delta_names};

/// Generator reference: (layer, letter inside the layer).
pub type GenRef = (usize, Letter);

/// Which construction produced a spec.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    McCoolPlus { n: usize },
    DrinfeldKohno { n: usize },
    MonomialOrbit { r: usize, n: usize },
    SurfaceOrbit { m: usize, n: usize },
    Poison,
    Free { k: usize },
    Abelian { k: usize },
    Product(Box<Family>, Box<Family>),
    Pullback { r: usize, n: usize },
    Custom(String),
}

impl Family {
    pub fn name(&self) -> &str {
        match self {
            Family::McCoolPlus { .. } => "mccool_plus",
            Family::DrinfeldKohno { .. } => "drinfeld_kohno",
            Family::MonomialOrbit { .. } => "monomial_orbit",
            Family::SurfaceOrbit { .. } => "surface_orbit",
            Family::Poison => "poison_model",
            Family::Free { .. } => "free",
            Family::Abelian { .. } => "abelian",
            Family::Product(..) => "product",
            Family::Pullback { .. } => "pullback",
            Family::Custom(_) => "custom",
        }
    }

    pub fn params(&self) -> Value {
        match self {
            Family::McCoolPlus { n } | Family::DrinfeldKohno { n } => json!({ "n": n }),
            Family::MonomialOrbit { r, n } | Family::Pullback { r, n } => json!({ "r": r, "n": n }),
            Family::SurfaceOrbit { m, n } => json!({ "m": m, "n": n }),
            Family::Free { k } | Family::Abelian { k } => json!({ "k": k }),
            Family::Poison => json!({}),
            Family::Product(a, b) => json!({
                "left": { "family": a.name(), "params": a.params() },
                "right": { "family": b.name(), "params": b.params() },
            }),
            Family::Custom(label) => json!({ "label": label }),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::McCoolPlus { n } => write!(f, "mccool_plus({n})"),
            Family::DrinfeldKohno { n } => write!(f, "drinfeld_kohno({n})"),
            Family::MonomialOrbit { r, n } => write!(f, "monomial_orbit({r},{n})"),
            Family::SurfaceOrbit { m, n } => write!(f, "surface_orbit({m},{n})"),
            Family::Poison => write!(f, "poison_model"),
            Family::Free { k } => write!(f, "free({k})"),
            Family::Abelian { k } => write!(f, "abelian({k})"),
            Family::Product(a, b) => write!(f, "product({a},{b})"),
            Family::Pullback { r, n } => write!(f, "pullback({r},{n})"),
            Family::Custom(label) => write!(f, "custom({label})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LayerSpec {
    pub id: usize,
    pub generators: Vec<String>,
}

/// A basis element of one layer: the Lyndon bracket `λ(word)` over that
/// layer's generators.
///
/// Ordered by (weight, layer, dictionary order of the word).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BasisKey {
    pub layer: usize,
    pub word: LyndonWord,
}

impl BasisKey {
    pub fn new(layer: usize, word: LyndonWord) -> Self {
        BasisKey { layer, word }
    }

    pub fn weight(&self) -> usize {
        self.word.weight()
    }
}

impl Ord for BasisKey {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.weight()
            .cmp(&other.weight())
            .then(self.layer.cmp(&other.layer))
            .then_with(|| self.word.lex_cmp(&other.word))
    }
}

impl PartialOrd for BasisKey {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// An element of an [`AlgebraSpec`], meaningful through `truncation`.
#[derive(Clone, Debug)]
pub struct LieElement {
    algebra: u64,
    terms: Lin<BasisKey>,
    truncation: usize,
}

impl PartialEq for LieElement {
    fn eq(&self, other: &Self) -> bool {
        self.algebra == other.algebra && self.terms == other.terms
    }
}

impl Eq for LieElement {}

impl LieElement {
    pub fn terms(&self) -> &Lin<BasisKey> {
        &self.terms
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn coeff(&self, key: &BasisKey) -> BigInt {
        self.terms.coeff(key)
    }

    fn check_same(&self, other: &LieElement) -> Result<()> {
        if self.algebra != other.algebra {
            return Err(LieError::DomainMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &LieElement) -> Result<LieElement> {
        self.check_same(other)?;
        let mut t = self.terms.clone();
        t.add_assign(&other.terms);
        Ok(self.with_terms(t, self.truncation.min(other.truncation)))
    }

    pub fn sub(&self, other: &LieElement) -> Result<LieElement> {
        self.add(&other.neg())
    }

    pub fn scaled(&self, c: &BigInt) -> LieElement {
        self.with_terms(self.terms.scaled(c), self.truncation)
    }

    pub fn neg(&self) -> LieElement {
        self.with_terms(self.terms.neg(), self.truncation)
    }

    /// Homogeneous component of weight `w`.
    pub fn component(&self, w: usize) -> LieElement {
        self.with_terms(self.terms.filtered(|k| k.weight() == w), self.truncation)
    }

    fn with_terms(&self, terms: Lin<BasisKey>, truncation: usize) -> LieElement {
        LieElement {
            algebra: self.algebra,
            terms: terms.filtered(|k| k.weight() <= truncation),
            truncation,
        }
    }
}

type ActKey = (BasisKey, BasisKey);

/// Memo of `act*(actor, target)`; shared by readers, never part of equality.
#[derive(Default)]
struct ActCache(RwLock<HashMap<ActKey, Lin<LyndonWord>>>);

impl Clone for ActCache {
    fn clone(&self) -> Self {
        ActCache::default()
    }
}

impl fmt::Debug for ActCache {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("ActCache")
    }
}

/// A layered Lie algebra together with its generator-level action table.
#[derive(Clone, Debug)]
pub struct AlgebraSpec {
    family: Family,
    layers: Vec<LayerSpec>,
    index: HashMap<String, GenRef>,
    action: BTreeMap<(GenRef, GenRef), Lin<LyndonWord>>,
    fingerprint: u64,
    cache: ActCache,
}

impl PartialEq for AlgebraSpec {
    fn eq(&self, other: &Self) -> bool {
        self.layers == other.layers && self.action == other.action
    }
}

/// Incremental construction of an [`AlgebraSpec`].
#[derive(Clone, Debug)]
pub struct SpecBuilder {
    family: Family,
    layers: Vec<Vec<String>>,
    index: HashMap<String, GenRef>,
    action: BTreeMap<(GenRef, GenRef), Lin<LyndonWord>>,
}

impl SpecBuilder {
    pub fn new(family: Family) -> Self {
        SpecBuilder { family, layers: Vec::new(), index: HashMap::new(), action: BTreeMap::new() }
    }

    /// Append a new innermost layer; returns its id.
    pub fn layer<S: Into<String>>(&mut self, names: impl IntoIterator<Item = S>) -> Result<usize> {
        let id = self.layers.len();
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(invalid("a layer needs at least one generator"));
        }
        if names.len() > Letter::MAX as usize {
            return Err(invalid("layer too large"));
        }
        for (i, n) in names.iter().enumerate() {
            if self.index.insert(n.clone(), (id, i as Letter)).is_some() {
                return Err(LieError::DuplicateGenerator(n.clone()));
            }
        }
        self.layers.push(names);
        Ok(id)
    }

    pub fn gen(&self, name: &str) -> Result<GenRef> {
        self.index.get(name).copied().ok_or_else(|| LieError::UnknownGenerator(name.to_string()))
    }

    /// `[a, b]` for two generators of the same layer, as a combination of that
    /// layer's Lyndon words.
    pub fn br(&self, a: &str, b: &str) -> Result<Lin<LyndonWord>> {
        let (la, xa) = self.gen(a)?;
        let (lb, xb) = self.gen(b)?;
        if la != lb {
            return Err(invalid(format!("{a} and {b} lie in different layers")));
        }
        Ok(bracket_words(&LyndonWord::letter(xa), &LyndonWord::letter(xb)))
    }

    /// Set `[actor, target]`; the value lives in the target's layer at weight 2.
    pub fn set_action(&mut self, actor: &str, target: &str, value: Lin<LyndonWord>) -> Result<()> {
        let a = self.gen(actor)?;
        let t = self.gen(target)?;
        if a.0 >= t.0 {
            return Err(invalid(format!("actor {actor} must lie in a lower layer than {target}")));
        }
        let rank = self.layers[t.0].len();
        for w in value.keys() {
            if w.weight() != 2 || w.letters().iter().any(|&x| x as usize >= rank) {
                return Err(invalid(format!("action value for ({actor}, {target}) must be weight 2 in the target layer")));
            }
        }
        if value.is_zero() {
            self.action.remove(&(a, t));
        } else {
            self.action.insert((a, t), value);
        }
        Ok(())
    }

    pub fn build(self) -> Result<AlgebraSpec> {
        if self.layers.is_empty() {
            return Err(invalid("an algebra needs at least one layer"));
        }
        let layers: Vec<LayerSpec> = self
            .layers
            .into_iter()
            .enumerate()
            .map(|(id, generators)| LayerSpec { id, generators })
            .collect();
        let mut spec = AlgebraSpec {
            family: self.family,
            layers,
            index: self.index,
            action: self.action,
            fingerprint: 0,
            cache: ActCache::default(),
        };
        spec.fingerprint = spec.compute_fingerprint();
        Ok(spec)
    }
}

impl AlgebraSpec {
    fn compute_fingerprint(&self) -> u64 {
        let mut h = DefaultHasher::new();
        for l in &self.layers {
            l.generators.hash(&mut h);
        }
        self.action.hash(&mut h);
        h.finish()
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn layers(&self) -> &[LayerSpec] {
        &self.layers
    }

    pub fn num_layers(&self) -> usize {
        self.layers.len()
    }

    pub fn top_layer(&self) -> usize {
        self.layers.len() - 1
    }

    pub fn layer_rank(&self, layer: usize) -> usize {
        self.layers[layer].generators.len()
    }

    /// All generator names, layer by layer.
    pub fn generators(&self) -> Vec<String> {
        self.layers.iter().flat_map(|l| l.generators.iter().cloned()).collect()
    }

    pub fn layer_generators(&self, layer: usize) -> &[String] {
        &self.layers[layer].generators
    }

    pub fn gen_ref(&self, name: &str) -> Result<GenRef> {
        self.index.get(name).copied().ok_or_else(|| LieError::UnknownGenerator(name.to_string()))
    }

    pub fn gen_name(&self, g: GenRef) -> &str {
        &self.layers[g.0].generators[g.1 as usize]
    }

    /// Nonzero action entries, in table order.
    pub fn action_entries(&self) -> impl Iterator<Item = (GenRef, GenRef, &Lin<LyndonWord>)> {
        self.action.iter().map(|((a, t), v)| (*a, *t, v))
    }

    /// Copy of this spec with one action entry replaced (a zero value removes
    /// the entry). The copy is tagged as a custom family.
    pub fn with_action(&self, actor: &str, target: &str, value: &LieElement) -> Result<AlgebraSpec> {
        self.check(value)?;
        let t = self.gen_ref(target)?;
        if value.terms.keys().any(|k| k.layer != t.0) {
            return Err(invalid("action value must lie in the target layer"));
        }
        let mut b = SpecBuilder::new(Family::Custom(format!("modified {}", self.family)));
        for l in &self.layers {
            b.layer(l.generators.iter().cloned())?;
        }
        b.action = self.action.clone();
        b.set_action(actor, target, value.terms.map_keys(|k| k.word.clone()))?;
        b.build()
    }

    fn check(&self, x: &LieElement) -> Result<()> {
        if x.algebra != self.fingerprint {
            return Err(LieError::DomainMismatch);
        }
        Ok(())
    }

    pub fn zero(&self, truncation: usize) -> LieElement {
        LieElement { algebra: self.fingerprint, terms: Lin::zero(), truncation }
    }

    pub fn generator(&self, name: &str, truncation: usize) -> Result<LieElement> {
        let (layer, a) = self.gen_ref(name)?;
        Ok(self.basis_element(&BasisKey::new(layer, LyndonWord::letter(a)), truncation))
    }

    pub fn basis_element(&self, key: &BasisKey, truncation: usize) -> LieElement {
        self.element(Lin::basis(key.clone()), truncation)
    }

    /// Element from raw terms. Keys must be valid for this algebra.
    pub fn element(&self, terms: Lin<BasisKey>, truncation: usize) -> LieElement {
        debug_assert!(terms.keys().all(|k| k.layer < self.layers.len()
            && k.word.letters().iter().all(|&a| (a as usize) < self.layer_rank(k.layer))));
        LieElement { algebra: self.fingerprint, terms: terms.filtered(|k| k.weight() <= truncation), truncation }
    }

    /// Checked version of [`AlgebraSpec::element`].
    pub fn try_element(&self, terms: Lin<BasisKey>, truncation: usize) -> Result<LieElement> {
        for k in terms.keys() {
            if k.layer >= self.layers.len() {
                return Err(LieError::DomainMismatch);
            }
            LyndonWord::new(k.word.letters().to_vec(), self.layer_rank(k.layer)).map_err(|_| LieError::DomainMismatch)?;
        }
        Ok(self.element(terms, truncation))
    }

    /// Sum of the named generators with coefficient 1 each.
    pub fn sum_of<S: AsRef<str>>(&self, names: &[S], truncation: usize) -> Result<LieElement> {
        let mut t = Lin::zero();
        for n in names {
            let (layer, a) = self.gen_ref(n.as_ref())?;
            t.add_term(BasisKey::new(layer, LyndonWord::letter(a)), &BigInt::one());
        }
        Ok(self.element(t, truncation))
    }

    /// Basis of the weight-`w` component: layer by layer, Lyndon words in
    /// dictionary order.
    pub fn weight_basis(&self, w: usize) -> Vec<BasisKey> {
        if w == 0 {
            return Vec::new();
        }
        let mut out = Vec::new();
        for l in &self.layers {
            for word in lyndon_words(l.generators.len(), w).expect("ranks and weight are positive") {
                out.push(BasisKey::new(l.id, word));
            }
        }
        out
    }

    /// `Σ_k witt_dimension(rank_k, w)`.
    pub fn weight_dimension(&self, w: usize) -> Result<u128> {
        let mut total = 0;
        for l in &self.layers {
            total += witt_dimension(l.generators.len(), w)?;
        }
        Ok(total)
    }

    /// Per-layer dimensions at weight `w`.
    pub fn layer_dimensions(&self, w: usize) -> Result<Vec<u128>> {
        self.layers.iter().map(|l| witt_dimension(l.generators.len(), w)).collect()
    }

    /// Coordinates of the weight-`w` component of `x` in [`Self::weight_basis`].
    pub fn coordinates(&self, x: &LieElement, w: usize) -> Result<Vec<BigInt>> {
        self.check(x)?;
        let basis = self.weight_basis(w);
        let mut out = vec![BigInt::default(); basis.len()];
        for (k, c) in x.terms.iter().filter(|(k, _)| k.weight() == w) {
            let i = basis.binary_search(k).map_err(|_| LieError::DomainMismatch)?;
            out[i] = c.clone();
        }
        Ok(out)
    }

    /// Element with the given weight-`w` coordinates.
    pub fn from_coordinates(&self, coords: &[BigInt], w: usize, truncation: usize) -> Result<LieElement> {
        let basis = self.weight_basis(w);
        if coords.len() != basis.len() {
            return Err(LieError::DimensionMismatch(coords.len(), basis.len()));
        }
        Ok(self.element(basis.into_iter().zip(coords.iter().cloned()).collect(), truncation))
    }

    /// Bracket form of a basis element, e.g. `[B[1,3],B[2,3]]`.
    pub fn key_name(&self, key: &BasisKey) -> String {
        let names = &self.layers[key.layer].generators;
        key.word.bracket_form(&|a| names[a as usize].clone())
    }

    /// Human-readable element, e.g. `-1*[B[1,3],B[2,3]] + 2*B[1,2]`.
    pub fn format_element(&self, x: &LieElement) -> String {
        if x.is_zero() {
            return "0".into();
        }
        x.terms
            .iter()
            .map(|(k, c)| format!("{}*{}", c, self.key_name(k)))
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// `[x, y]`, dropping terms above `truncation`.
    pub fn bracket(&self, x: &LieElement, y: &LieElement, truncation: usize) -> Result<LieElement> {
        self.check(x)?;
        self.check(y)?;
        let mut out = Lin::zero();
        for (k1, c1) in &x.terms {
            for (k2, c2) in &y.terms {
                if k1.weight() + k2.weight() > truncation {
                    continue;
                }
                let (layer, part) = self.bracket_keys(k1, k2);
                let c = c1 * c2;
                for (w, d) in &part {
                    out.add_term(BasisKey::new(layer, w.clone()), &(d * &c));
                }
            }
        }
        Ok(LieElement { algebra: self.fingerprint, terms: out, truncation })
    }

    /// `[λ(k1), λ(k2)]` without truncation, as (layer, combination).
    pub(crate) fn bracket_keys(&self, k1: &BasisKey, k2: &BasisKey) -> (usize, Lin<LyndonWord>) {
        use std::cmp::Ordering::*;
        match k1.layer.cmp(&k2.layer) {
            Equal => (k1.layer, bracket_words(&k1.word, &k2.word)),
            Less => (k2.layer, self.act(k1, k2)),
            Greater => (k1.layer, self.act(k2, k1).neg()),
        }
    }

    /// `act*(actor, target)` for `actor.layer < target.layer`; the result lies
    /// in the target layer.
    fn act(&self, actor: &BasisKey, target: &BasisKey) -> Lin<LyndonWord> {
        debug_assert!(actor.layer < target.layer);
        let key = (actor.clone(), target.clone());
        if let Some(hit) = self.cache.0.read().unwrap().get(&key) {
            return hit.clone();
        }
        let result = match split_unchecked(&actor.word) {
            None => {
                let g = (actor.layer, actor.word.letters()[0]);
                match split_unchecked(&target.word) {
                    None => self
                        .action
                        .get(&(g, (target.layer, target.word.letters()[0])))
                        .cloned()
                        .unwrap_or_default(),
                    Some((v1, v2)) => {
                        // derivation rule: g.[v1,v2] = [g.v1, v2] + [v1, g.v2]
                        let a1 = self.act(actor, &BasisKey::new(target.layer, v1.clone()));
                        let a2 = self.act(actor, &BasisKey::new(target.layer, v2.clone()));
                        let mut out = bracket_lin(&a1, &Lin::basis(v2), usize::MAX);
                        out.add_assign(&bracket_lin(&Lin::basis(v1), &a2, usize::MAX));
                        out
                    }
                }
            }
            Some((u1, u2)) => {
                // [u1,u2].y = u1.(u2.y) - u2.(u1.y)
                let k1 = BasisKey::new(actor.layer, u1);
                let k2 = BasisKey::new(actor.layer, u2);
                let mut out = self.act_lin(&k1, target.layer, &self.act(&k2, target));
                out.sub_assign(&self.act_lin(&k2, target.layer, &self.act(&k1, target)));
                out
            }
        };
        self.cache.0.write().unwrap().insert(key, result.clone());
        result
    }

    fn act_lin(&self, actor: &BasisKey, layer: usize, x: &Lin<LyndonWord>) -> Lin<LyndonWord> {
        let mut out = Lin::zero();
        for (w, c) in x {
            out.add_scaled(&self.act(actor, &BasisKey::new(layer, w.clone())), c);
        }
        out
    }

    /// Versioned JSON description: family, parameters, layers and the
    /// nonzero action entries.
    pub fn to_json(&self) -> Value {
        let layers: Vec<Value> = self
            .layers
            .iter()
            .map(|l| json!({ "id": l.id, "generators": l.generators }))
            .collect();
        let action: Vec<Value> = self
            .action
            .iter()
            .map(|((a, t), v)| {
                let names = &self.layers[t.0].generators;
                let value: Vec<Value> = v
                    .iter()
                    .map(|(w, c)| {
                        let word: Vec<&str> = w.letters().iter().map(|&x| names[x as usize].as_str()).collect();
                        json!([int_json(c), [t.0, word]])
                    })
                    .collect();
                json!({ "actor": self.gen_name(*a), "target": self.gen_name(*t), "value": value })
            })
            .collect();
        json!({
            "schema_version": 1,
            "family": self.family.name(),
            "params": self.family.params(),
            "layers": layers,
            "action": action,
        })
    }
}

#[cfg(test)]
mod tests;
