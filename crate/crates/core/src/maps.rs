//! Lie homomorphisms given by weight-1 generator images.
//!
//! A basis element `λ(w)` maps to the nested bracket of generator images along
//! the standard factorization of `w`. Injectivity is certified one weight at a
//! time; since a graded map is injective through weight `W` exactly when each
//! homogeneous component `1..=W` is, per-weight rank checks suffice.

use std::collections::{HashMap, HashSet};
use std::sync::{Arc, RwLock};

use serde_json::{json, Map, Value};

use crate::algebra::{AlgebraSpec, BasisKey, Family, LieElement, SpecBuilder};
use crate::arrangements::induced_generator_images;
use crate::error::{invalid, LieError, Result};
use crate::intlin::{rank_sparse, SparseRow};
use crate::linear::Lin;
use crate::lyndon::{split_unchecked, LyndonWord};

/// Homomorphism `domain → codomain` defined on generators.
#[derive(Debug)]
pub struct LieMap {
    domain: Arc<AlgebraSpec>,
    codomain: Arc<AlgebraSpec>,
    /// Indexed by (layer, letter) of the domain.
    images: Vec<Vec<Lin<BasisKey>>>,
    cache: RwLock<HashMap<BasisKey, Lin<BasisKey>>>,
}

impl Clone for LieMap {
    fn clone(&self) -> Self {
        LieMap {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            images: self.images.clone(),
            cache: RwLock::new(HashMap::new()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomReport {
    pub max_weight: usize,
    pub pairs_checked: usize,
    /// Domain basis pairs `(x, y)` with `f[x,y] ≠ [fx, fy]`.
    pub failures: Vec<[String; 2]>,
}

impl HomReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "max_weight": self.max_weight,
            "pairs_checked": self.pairs_checked,
            "passed": self.passed(),
            "failures": self.failures,
        })
    }
}

impl LieMap {
    /// `images` must name every domain generator exactly once; each image is a
    /// weight-1 element of the codomain.
    pub fn new(domain: Arc<AlgebraSpec>, codomain: Arc<AlgebraSpec>, images: Vec<(String, LieElement)>) -> Result<Self> {
        let mut table: Vec<Vec<Option<Lin<BasisKey>>>> =
            domain.layers().iter().map(|l| vec![None; l.generators.len()]).collect();
        for (name, img) in images {
            let (layer, a) = domain.gen_ref(&name)?;
            if codomain.zero(1).add(&img).is_err() {
                return Err(LieError::DomainMismatch);
            }
            if img.terms().keys().any(|k| k.weight() != 1) {
                return Err(invalid(format!("image of {name} is not of weight 1")));
            }
            let slot = &mut table[layer][a as usize];
            if slot.is_some() {
                return Err(LieError::DuplicateGenerator(name));
            }
            *slot = Some(img.terms().clone());
        }
        let mut images = Vec::new();
        for (layer, row) in table.into_iter().enumerate() {
            let mut out = Vec::new();
            for (a, img) in row.into_iter().enumerate() {
                match img {
                    Some(t) => out.push(t),
                    None => {
                        return Err(invalid(format!("no image for {}", domain.gen_name((layer, a as u16)))));
                    }
                }
            }
            images.push(out);
        }
        Ok(LieMap { domain, codomain, images, cache: RwLock::new(HashMap::new()) })
    }

    /// Build from textual images parsed in the codomain.
    pub fn from_strings(domain: Arc<AlgebraSpec>, codomain: Arc<AlgebraSpec>, images: &[(&str, &str)]) -> Result<Self> {
        let parsed = images
            .iter()
            .map(|(g, e)| Ok((g.to_string(), codomain.parse_element(e, 1)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(domain, codomain, parsed)
    }

    /// Identity map of a spec.
    pub fn identity(spec: Arc<AlgebraSpec>) -> Result<Self> {
        let images = spec
            .generators()
            .into_iter()
            .map(|g| {
                let e = spec.generator(&g, 1)?;
                Ok((g, e))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(spec.clone(), spec, images)
    }

    pub fn domain(&self) -> &Arc<AlgebraSpec> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<AlgebraSpec> {
        &self.codomain
    }

    fn image_of_key(&self, key: &BasisKey) -> Lin<BasisKey> {
        if let Some(hit) = self.cache.read().unwrap().get(key) {
            return hit.clone();
        }
        let result = match split_unchecked(&key.word) {
            None => self.images[key.layer][key.word.letters()[0] as usize].clone(),
            Some((u, v)) => {
                let w = key.weight();
                let fu = self.codomain.element(self.image_of_key(&BasisKey::new(key.layer, u)), w);
                let fv = self.codomain.element(self.image_of_key(&BasisKey::new(key.layer, v)), w);
                self.codomain.bracket(&fu, &fv, w).expect("same codomain").terms().clone()
            }
        };
        self.cache.write().unwrap().insert(key.clone(), result.clone());
        result
    }

    /// `f(x)`, truncated.
    pub fn apply(&self, x: &LieElement, truncation: usize) -> Result<LieElement> {
        self.domain.zero(truncation).add(x).map_err(|_| LieError::DomainMismatch)?;
        let mut out = Lin::zero();
        for (k, c) in x.terms() {
            if k.weight() <= truncation {
                out.add_scaled(&self.image_of_key(k), c);
            }
        }
        Ok(self.codomain.element(out, truncation))
    }

    /// Check `f[x,y] = [fx, fy]` on domain basis pairs of total weight
    /// at most `max_weight`.
    pub fn verify_hom(&self, max_weight: usize) -> Result<HomReport> {
        if max_weight < 2 {
            return Err(invalid("verify_hom needs max_weight >= 2"));
        }
        let keys: Vec<BasisKey> = (1..max_weight).flat_map(|w| self.domain.weight_basis(w)).collect();
        let mut report = HomReport { max_weight, pairs_checked: 0, failures: Vec::new() };
        for (i, a) in keys.iter().enumerate() {
            for b in &keys[i + 1..] {
                let w = a.weight() + b.weight();
                if w > max_weight {
                    break;
                }
                report.pairs_checked += 1;
                let x = self.domain.basis_element(a, w);
                let y = self.domain.basis_element(b, w);
                let lhs = self.apply(&self.domain.bracket(&x, &y, w)?, w)?;
                let rhs = self.codomain.bracket(&self.apply(&x, w)?, &self.apply(&y, w)?, w)?;
                if lhs != rhs {
                    report.failures.push([self.domain.key_name(a), self.domain.key_name(b)]);
                }
            }
        }
        Ok(report)
    }

    /// Rows: images of `weight_basis(domain, w)` in codomain coordinates.
    pub fn matrix_rows(&self, w: usize) -> Vec<SparseRow> {
        let target = self.codomain.weight_basis(w);
        let index: HashMap<&BasisKey, usize> = target.iter().enumerate().map(|(i, k)| (k, i)).collect();
        self.domain
            .weight_basis(w)
            .iter()
            .map(|k| {
                let mut row: SparseRow = self.image_of_key(k).iter().map(|(t, c)| (index[t], c.clone())).collect();
                row.sort_by_key(|e| e.0);
                row
            })
            .collect()
    }

    /// The weight-`w` component is injective (its matrix has full row rank,
    /// so the integer kernel is zero).
    pub fn injectivity_rank_check(&self, w: usize) -> bool {
        let rows = self.matrix_rows(w);
        rank_sparse(&rows, self.codomain.weight_basis(w).len()) == rows.len()
    }

    pub fn to_json(&self) -> Value {
        let mut images = Map::new();
        for (layer, row) in self.images.iter().enumerate() {
            for (a, img) in row.iter().enumerate() {
                let e = self.codomain.element(img.clone(), 1);
                images.insert(self.domain.gen_name((layer, a as u16)).to_string(), json!(self.codomain.format_element(&e)));
            }
        }
        json!({
            "domain": self.domain.family().to_string(),
            "codomain": self.codomain.family().to_string(),
            "images": images,
        })
    }
}

/// `monomial_orbit(r, n)` extended by a free top layer `B[1,L], …, B[ℓ,L]`
/// (`ℓ = rn + 1`, `L = ℓ + 1`) on which a lower generator `u` acts as
/// `ad(f(u))` inside `drinfeld_kohno(L)`, with `f` the induced map of the
/// arrangement embedding.
pub fn pullback_algebra(r: usize, n: usize) -> Result<AlgebraSpec> {
    if r < 1 || n < 1 {
        return Err(invalid("pullback_algebra needs r >= 1 and n >= 1"));
    }
    let base = AlgebraSpec::monomial_orbit(r, n)?;
    let ell = r * n + 1;
    let big = ell + 1;
    let f = induced_generator_images(r, n)?;
    let dk = AlgebraSpec::drinfeld_kohno(big)?;
    let mut s = SpecBuilder::new(Family::Pullback { r, n });
    for l in base.layers() {
        s.layer(l.generators.iter().cloned())?;
    }
    for (g, t, v) in base.action_entries() {
        s.set_action(base.gen_name(g), base.gen_name(t), v.clone())?;
    }
    let top: Vec<String> = (1..=ell).map(|k| format!("B[{k},{big}]")).collect();
    s.layer(top.iter().cloned())?;
    let dk_top = dk.top_layer();
    for u in base.generators() {
        let fu = f.apply(&base.generator(&u, 1)?, 1)?;
        // f(u) lives in drinfeld_kohno(ℓ), whose generators keep their names in drinfeld_kohno(ℓ+1).
        let mut fu_big = dk.zero(2);
        for (k, c) in fu.terms() {
            fu_big = fu_big.add(&dk.generator(&f.codomain().key_name(k), 2)?.scaled(c))?;
        }
        for b in &top {
            let v = dk.bracket(&fu_big, &dk.generator(b, 2)?, 2)?;
            debug_assert!(v.terms().keys().all(|k| k.layer == dk_top));
            let value: Lin<LyndonWord> = v.terms().map_keys(|k| k.word.clone());
            s.set_action(&u, b, value)?;
        }
    }
    s.build()
}

/// Frozen generator dictionary `pullback_algebra(r, n) → monomial_orbit(r, n+1)`.
///
/// Lower layers match by name. On the top layer the braid generator
/// `B[k,L]` records the fiber hyperplane `z = c_k`, where `c_k` is the k-th
/// coordinate of the embedding `(0, x_1, ζx_1, …, ζ^{r-1}x_1, x_2, …)`:
/// `k = 1` is `z = 0`, i.e. `Z[n+1]`, and `k = 2 + (i-1)r + e` is
/// `z = ζ^e x_i`, i.e. `x_i = ζ^{-e} x_{n+1}`, which is `B[i,n+1;p]` with
/// `p ≡ -e (mod r)`.
pub fn pullback_dictionary(r: usize, n: usize) -> Result<Vec<(String, String)>> {
    if r < 1 || n < 1 {
        return Err(invalid("pullback_dictionary needs r >= 1 and n >= 1"));
    }
    let base = AlgebraSpec::monomial_orbit(r, n)?;
    let ell = r * n + 1;
    let big = ell + 1;
    let mut out: Vec<(String, String)> = base.generators().into_iter().map(|g| (g.clone(), g)).collect();
    out.push((format!("B[1,{big}]"), format!("Z[{}]", n + 1)));
    for i in 1..=n {
        for e in 0..r {
            let k = 2 + (i - 1) * r + e;
            let p = r - e;
            out.push((format!("B[{k},{big}]"), format!("B[{i},{};{p}]", n + 1)));
        }
    }
    Ok(out)
}

fn dictionary_map(a: &Arc<AlgebraSpec>, b: &Arc<AlgebraSpec>, pairs: &[(String, String)]) -> Result<LieMap> {
    let images = pairs
        .iter()
        .map(|(x, y)| Ok((x.clone(), b.generator(y, 1)?)))
        .collect::<Result<Vec<_>>>()?;
    LieMap::new(a.clone(), b.clone(), images)
}

/// Brackets of `a` and `b` agree under a generator bijection through
/// `max_weight` (checked as homomorphisms in both directions).
pub fn algebras_equal(a: &AlgebraSpec, b: &AlgebraSpec, dictionary: &[(String, String)], max_weight: usize) -> Result<bool> {
    let left: HashSet<&str> = dictionary.iter().map(|p| p.0.as_str()).collect();
    let right: HashSet<&str> = dictionary.iter().map(|p| p.1.as_str()).collect();
    let ga = a.generators();
    let gb = b.generators();
    if left.len() != dictionary.len() || right.len() != dictionary.len() || ga.len() != dictionary.len() || gb.len() != dictionary.len() {
        return Err(LieError::NotBijective(format!(
            "{} pairs for {} and {} generators",
            dictionary.len(),
            ga.len(),
            gb.len()
        )));
    }
    if let Some(g) = ga.iter().find(|g| !left.contains(g.as_str())) {
        return Err(LieError::NotBijective(format!("{g} is not mapped")));
    }
    if let Some(g) = gb.iter().find(|g| !right.contains(g.as_str())) {
        return Err(LieError::NotBijective(format!("{g} is not hit")));
    }
    let a = Arc::new(a.clone());
    let b = Arc::new(b.clone());
    let reversed: Vec<(String, String)> = dictionary.iter().map(|(x, y)| (y.clone(), x.clone())).collect();
    let forward = dictionary_map(&a, &b, dictionary)?;
    let backward = dictionary_map(&b, &a, &reversed)?;
    Ok(forward.verify_hom(max_weight)?.passed() && backward.verify_hom(max_weight)?.passed())
}

/// Model of `gr(j)` for the inclusion `F_3 → H`: `a1, a2 ↦ 0`, `a3 ↦ a3`.
pub fn poison_j_map() -> Result<LieMap> {
    let dom = Arc::new(AlgebraSpec::free_named(vec!["a1".into(), "a2".into(), "a3".into()])?);
    let cod = Arc::new(AlgebraSpec::poison_model()?);
    LieMap::from_strings(dom, cod, &[("a1", "0"), ("a2", "0"), ("a3", "a3")])
}

/// Model of `gr(p × α)`: `phi_i ↦ phi_i + e_i`, `a3 ↦ e3` into
/// `L[phi1, phi2] × Z^3`.
pub fn poison_p_alpha_map() -> Result<LieMap> {
    let dom = Arc::new(AlgebraSpec::poison_model()?);
    let f2 = AlgebraSpec::free_named(vec!["phi1".into(), "phi2".into()])?;
    let cod = Arc::new(AlgebraSpec::product(&f2, &AlgebraSpec::abelian(3)?)?);
    LieMap::from_strings(dom, cod, &[("phi1", "phi1 + e1"), ("phi2", "phi2 + e2"), ("a3", "e3")])
}

/// `Σ` of all generators with coefficient one, as an element of `spec`.
pub fn generator_sum(spec: &AlgebraSpec, truncation: usize) -> Result<LieElement> {
    spec.sum_of(&spec.generators(), truncation)
}
