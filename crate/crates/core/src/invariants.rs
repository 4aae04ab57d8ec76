//! Centralizers and centers, weight by weight.
//!
//! For a weight `w` the unknown is `X = Σ c_e e` over `weight_basis(w)`. Each
//! basis element contributes the row `([e, g])_{g ∈ S}` written in
//! `weight_basis(w + 1)`, and the centralizer is the left kernel of those rows.
//! Vanishing against weight-1 generators implies vanishing against the
//! subalgebra they generate, so `S` = the generators of a layer gives the
//! centralizer of that whole free layer.

use std::collections::HashMap;

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::algebra::{AlgebraSpec, BasisKey, LieElement};
use crate::error::{invalid, Result};
use crate::intlin::{lattice_equal, left_kernel, Lattice, SparseRow};
use crate::linear::int_json;

/// Centralizer lattice in one weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightLattice {
    pub w: usize,
    pub basis: Vec<BasisKey>,
    pub lattice: Lattice,
}

/// Per-weight centralizer lattices in coordinates of `weight_basis(w)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralizerProfile {
    pub algebra: String,
    pub generators: Vec<String>,
    pub weights: Vec<WeightLattice>,
}

impl CentralizerProfile {
    pub fn lattice(&self, w: usize) -> Option<&Lattice> {
        self.weights.iter().find(|x| x.w == w).map(|x| &x.lattice)
    }

    pub fn rank(&self, w: usize) -> usize {
        self.lattice(w).map_or(0, Lattice::rank)
    }

    /// Zero in every weight except possibly weight 1.
    pub fn concentrated_in_weight_one(&self) -> bool {
        self.weights.iter().all(|x| x.w == 1 || x.lattice.is_zero())
    }

    /// Lattice rank 0 or 1 in every weight.
    pub fn is_cyclic(&self) -> bool {
        self.weights.iter().all(|x| x.lattice.rank() <= 1)
    }

    /// Basis rows of the weight-`w` lattice as elements of `spec`.
    pub fn elements(&self, spec: &AlgebraSpec, w: usize) -> Result<Vec<LieElement>> {
        let Some(lat) = self.lattice(w) else {
            return Ok(Vec::new());
        };
        lat.basis().row_vecs().iter().map(|row| spec.from_coordinates(row, w, w)).collect()
    }

    pub fn to_json(&self, spec: &AlgebraSpec) -> Value {
        let weights: Vec<Value> = self
            .weights
            .iter()
            .map(|x| {
                let basis: Vec<String> = x.basis.iter().map(|k| spec.key_name(k)).collect();
                let lattice: Vec<Vec<Value>> =
                    x.lattice.basis().row_vecs().iter().map(|r| r.iter().map(int_json).collect()).collect();
                json!({ "w": x.w, "rank": x.lattice.rank(), "basis": basis, "lattice": lattice })
            })
            .collect();
        json!({
            "schema_version": 1,
            "algebra": self.algebra,
            "generators": self.generators,
            "weights": weights,
        })
    }
}

/// Centralizer of the subalgebra generated by the weight-1 generators `s`.
pub fn centralizer_profile<S: AsRef<str>>(spec: &AlgebraSpec, s: &[S], max_weight: usize) -> Result<CentralizerProfile> {
    if s.is_empty() {
        return Err(invalid("centralizer needs at least one generator"));
    }
    if max_weight < 1 {
        return Err(invalid("max_weight must be at least 1"));
    }
    let gens: Vec<BasisKey> = s
        .iter()
        .map(|n| {
            let (layer, a) = spec.gen_ref(n.as_ref())?;
            Ok(BasisKey::new(layer, crate::lyndon::LyndonWord::letter(a)))
        })
        .collect::<Result<_>>()?;
    let mut weights = Vec::new();
    for w in 1..=max_weight {
        let basis = spec.weight_basis(w);
        let target = spec.weight_basis(w + 1);
        let index: HashMap<&BasisKey, usize> = target.iter().enumerate().map(|(i, k)| (k, i)).collect();
        let block = target.len();
        let rows: Vec<SparseRow> = basis
            .iter()
            .map(|e| {
                let mut row = Vec::new();
                for (gi, g) in gens.iter().enumerate() {
                    let (layer, value) = spec.bracket_keys(e, g);
                    let mut part: Vec<(usize, BigInt)> = value
                        .iter()
                        .map(|(word, c)| (gi * block + index[&BasisKey::new(layer, word.clone())], c.clone()))
                        .collect();
                    part.sort_by_key(|t| t.0);
                    row.extend(part);
                }
                row
            })
            .collect();
        let lattice = left_kernel(&rows, block * gens.len());
        weights.push(WeightLattice { w, basis, lattice });
    }
    Ok(CentralizerProfile {
        algebra: spec.family().to_string(),
        generators: s.iter().map(|x| x.as_ref().to_string()).collect(),
        weights,
    })
}

/// Center: the centralizer of all weight-1 generators.
pub fn center_profile(spec: &AlgebraSpec, max_weight: usize) -> Result<CentralizerProfile> {
    centralizer_profile(spec, &spec.generators(), max_weight)
}

/// Per-weight comparison of the center with the centralizer of an ideal.
#[derive(Clone, Debug)]
pub struct AdKernelReport {
    pub center: CentralizerProfile,
    pub centralizer: CentralizerProfile,
    pub equal_by_weight: Vec<bool>,
}

impl AdKernelReport {
    pub fn equal(&self) -> bool {
        self.equal_by_weight.iter().all(|&b| b)
    }

    pub fn to_json(&self, spec: &AlgebraSpec) -> Value {
        json!({
            "schema_version": 1,
            "algebra": self.center.algebra,
            "ideal": self.centralizer.generators,
            "equal": self.equal(),
            "equal_by_weight": self.equal_by_weight,
            "center": self.center.to_json(spec)["weights"],
            "centralizer": self.centralizer.to_json(spec)["weights"],
        })
    }
}

pub fn adkernel_report<S: AsRef<str>>(spec: &AlgebraSpec, ideal: &[S], max_weight: usize) -> Result<AdKernelReport> {
    let center = center_profile(spec, max_weight)?;
    let centralizer = centralizer_profile(spec, ideal, max_weight)?;
    let equal_by_weight = center
        .weights
        .iter()
        .zip(&centralizer.weights)
        .map(|(a, b)| lattice_equal(&a.lattice, &b.lattice))
        .collect::<Result<_>>()?;
    Ok(AdKernelReport { center, centralizer, equal_by_weight })
}

/// True iff `ker(ad) = ker(ad|ideal)` in every weight through `max_weight`.
pub fn adkernel_compare<S: AsRef<str>>(spec: &AlgebraSpec, ideal: &[S], max_weight: usize) -> Result<bool> {
    Ok(adkernel_report(spec, ideal, max_weight)?.equal())
}

/// A label `τ ∈ Z/m` with `τ ∉ {τ_t}` and `τ − σ_k ∉ {τ_t}` for all lower
/// labels `σ_k` and top labels `τ_t`, if one exists.
pub fn fresh_label(m: usize, lower: &[i64], top: &[i64]) -> Option<i64> {
    let mi = m as i64;
    (0..mi).find(|&tau| {
        top.iter().all(|&t| (tau - t).rem_euclid(mi) != 0)
            && lower.iter().all(|&s| top.iter().all(|&t| (tau - s - t).rem_euclid(mi) != 0))
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreshLabelReport {
    pub m: usize,
    pub trials: usize,
    pub nonzero: usize,
    /// Formatted elements whose bracket with `B[1,3;τ]` vanished.
    pub failures: Vec<String>,
}

impl FreshLabelReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.nonzero == self.trials
    }
}

/// Random nonzero weight-1 elements `x` of `surface_orbit(m, 3)` whose labels
/// admit a fresh `τ`; checks `[x, B[1,3;τ]] ≠ 0` for each.
pub fn fresh_label_trials(m: usize, trials: usize, seed: u64) -> Result<FreshLabelReport> {
    let spec = AlgebraSpec::surface_orbit(m, 3)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let lower: Vec<String> = spec.layer_generators(0).to_vec();
    let top: Vec<String> = spec.layer_generators(1).to_vec();
    let label = |name: &str| -> i64 { name[name.find(';').unwrap() + 1..name.len() - 1].parse().unwrap() };
    let mut report = FreshLabelReport { m, trials, nonzero: 0, failures: Vec::new() };
    let mut done = 0;
    while done < trials {
        let nl = rng.gen_range(0..=2.min(lower.len()));
        let nt = rng.gen_range(0..=2);
        if nl + nt == 0 {
            continue;
        }
        let picked_lower: Vec<&String> = lower.choose_multiple(&mut rng, nl).collect();
        let picked_top: Vec<&String> = top.choose_multiple(&mut rng, nt).collect();
        let sig: Vec<i64> = picked_lower.iter().map(|n| label(n)).collect();
        let taus: Vec<i64> = picked_top.iter().map(|n| label(n)).collect();
        let Some(tau) = fresh_label(m, &sig, &taus) else {
            continue;
        };
        let mut x = spec.zero(2);
        for name in picked_lower.iter().chain(&picked_top) {
            let mut c: i64 = rng.gen_range(1..=5);
            if rng.gen_bool(0.5) {
                c = -c;
            }
            x = x.add(&spec.generator(name, 2)?.scaled(&BigInt::from(c)))?;
        }
        let y = spec.generator(&format!("B[1,3;{tau}]"), 2)?;
        if spec.bracket(&x, &y, 2)?.is_zero() {
            report.failures.push(spec.format_element(&x));
        } else {
            report.nonzero += 1;
        }
        done += 1;
    }
    Ok(report)
}
