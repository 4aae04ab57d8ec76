//! Antisymmetry and Jacobi checks on basis elements.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::{AlgebraSpec, BasisKey};
use crate::error::{invalid, Result};

/// How many triples may be checked exhaustively before switching to sampling.
#[derive(Clone, Copy, Debug)]
pub struct ConsistencyOptions {
    pub exhaustive_limit: usize,
    pub samples: usize,
    pub seed: u64,
}

impl Default for ConsistencyOptions {
    fn default() -> Self {
        ConsistencyOptions { exhaustive_limit: 200_000, samples: 20_000, seed: 0x5eed }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiViolation {
    pub triple: [String; 3],
    /// `[a,[b,c]] + [b,[c,a]] + [c,[a,b]]`, formatted.
    pub residual: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConsistencyReport {
    pub max_weight: usize,
    pub exhaustive: bool,
    pub pairs_checked: usize,
    pub triples_checked: usize,
    pub antisymmetry_violations: Vec<[String; 2]>,
    pub jacobi_violations: Vec<JacobiViolation>,
}

impl ConsistencyReport {
    pub fn passed(&self) -> bool {
        self.antisymmetry_violations.is_empty() && self.jacobi_violations.is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "max_weight": self.max_weight,
            "exhaustive": self.exhaustive,
            "pairs_checked": self.pairs_checked,
            "triples_checked": self.triples_checked,
            "passed": self.passed(),
            "antisymmetry_violations": self.antisymmetry_violations,
            "jacobi_violations": self.jacobi_violations.iter().map(|v| json!({
                "triple": v.triple,
                "residual": v.residual,
            })).collect::<Vec<_>>(),
        })
    }
}

impl AlgebraSpec {
    /// Check antisymmetry on all basis pairs and Jacobi on basis triples
    /// `a ≤ b ≤ c` of total weight at most `max_weight`. Small instances are
    /// checked exhaustively, larger ones on a seeded random sample.
    pub fn validate_consistency(&self, max_weight: usize) -> Result<ConsistencyReport> {
        self.validate_consistency_with(max_weight, ConsistencyOptions::default())
    }

    pub fn validate_consistency_with(&self, max_weight: usize, opts: ConsistencyOptions) -> Result<ConsistencyReport> {
        if max_weight < 3 {
            return Err(invalid("validate_consistency needs max_weight >= 3"));
        }
        let keys: Vec<BasisKey> = (1..=max_weight - 1).flat_map(|w| self.weight_basis(w)).collect();
        let mut report = ConsistencyReport {
            max_weight,
            exhaustive: true,
            pairs_checked: 0,
            triples_checked: 0,
            antisymmetry_violations: Vec::new(),
            jacobi_violations: Vec::new(),
        };

        for (i, a) in keys.iter().enumerate() {
            for b in &keys[i..] {
                if a.weight() + b.weight() > max_weight {
                    break;
                }
                report.pairs_checked += 1;
                let (l1, x) = self.bracket_keys(a, b);
                let (l2, y) = self.bracket_keys(b, a);
                let mut s = y;
                s.add_assign(&x);
                if l1 != l2 || !s.is_zero() {
                    report.antisymmetry_violations.push([self.key_name(a), self.key_name(b)]);
                }
            }
        }

        let triple_keys: Vec<&BasisKey> = keys.iter().filter(|k| k.weight() + 2 <= max_weight).collect();
        let total = count_triples(&triple_keys, max_weight, opts.exhaustive_limit);
        if total <= opts.exhaustive_limit {
            for (i, a) in triple_keys.iter().enumerate() {
                for (j, b) in triple_keys.iter().enumerate().skip(i) {
                    if a.weight() + b.weight() + 1 > max_weight {
                        break;
                    }
                    for c in &triple_keys[j..] {
                        if a.weight() + b.weight() + c.weight() > max_weight {
                            break;
                        }
                        self.check_jacobi(a, b, c, max_weight, &mut report)?;
                    }
                }
            }
        } else {
            report.exhaustive = false;
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
            let n = triple_keys.len();
            let mut done = 0;
            let mut attempts = 0usize;
            while done < opts.samples && attempts < opts.samples * 1000 {
                attempts += 1;
                let mut t = [rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n)];
                t.sort_unstable();
                let (a, b, c) = (triple_keys[t[0]], triple_keys[t[1]], triple_keys[t[2]]);
                if a.weight() + b.weight() + c.weight() > max_weight {
                    continue;
                }
                self.check_jacobi(a, b, c, max_weight, &mut report)?;
                done += 1;
            }
        }
        Ok(report)
    }

    fn check_jacobi(
        &self,
        a: &BasisKey,
        b: &BasisKey,
        c: &BasisKey,
        truncation: usize,
        report: &mut ConsistencyReport,
    ) -> Result<()> {
        report.triples_checked += 1;
        let x = self.basis_element(a, truncation);
        let y = self.basis_element(b, truncation);
        let z = self.basis_element(c, truncation);
        let t1 = self.bracket(&x, &self.bracket(&y, &z, truncation)?, truncation)?;
        let t2 = self.bracket(&y, &self.bracket(&z, &x, truncation)?, truncation)?;
        let t3 = self.bracket(&z, &self.bracket(&x, &y, truncation)?, truncation)?;
        let s = t1.add(&t2)?.add(&t3)?;
        if !s.is_zero() {
            report.jacobi_violations.push(JacobiViolation {
                triple: [self.key_name(a), self.key_name(b), self.key_name(c)],
                residual: self.format_element(&s),
            });
        }
        Ok(())
    }
}

/// Number of sorted triples within the weight bound, stopping once `cap` is exceeded.
fn count_triples(keys: &[&BasisKey], max_weight: usize, cap: usize) -> usize {
    let mut total = 0usize;
    for (i, a) in keys.iter().enumerate() {
        for (j, b) in keys.iter().enumerate().skip(i) {
            let wab = a.weight() + b.weight();
            if wab + 1 > max_weight {
                break;
            }
            total += keys[j..].iter().take_while(|c| wab + c.weight() <= max_weight).count();
            if total > cap {
                return total;
            }
        }
    }
    total
}
