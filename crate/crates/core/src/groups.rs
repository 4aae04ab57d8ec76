//! Group-level oracles: reduced words in free groups, endomorphisms of `F_n`
//! given by generator images, the basis-conjugating automorphisms `β_{i,j}`,
//! and normal forms in the poison group `H = F_3 ⋊ F_2`.

use std::fmt;

use serde_json::{json, Value};

use crate::error::{invalid, LieError, Result};

/// A freely reduced word; letters are `(generator, ±1)` with 0-based generators.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FreeWord {
    letters: Vec<(usize, i8)>,
}

impl FreeWord {
    pub fn identity() -> Self {
        FreeWord::default()
    }

    pub fn gen(g: usize) -> Self {
        FreeWord { letters: vec![(g, 1)] }
    }

    pub fn gen_inv(g: usize) -> Self {
        FreeWord { letters: vec![(g, -1)] }
    }

    /// Reduce an arbitrary letter sequence.
    pub fn from_letters(letters: impl IntoIterator<Item = (usize, i8)>) -> Result<Self> {
        let mut w = FreeWord::identity();
        for (g, e) in letters {
            if e != 1 && e != -1 {
                return Err(invalid("exponents must be ±1"));
            }
            w.push(g, e);
        }
        Ok(w)
    }

    fn push(&mut self, g: usize, e: i8) {
        if self.letters.last() == Some(&(g, -e)) {
            self.letters.pop();
        } else {
            self.letters.push((g, e));
        }
    }

    pub fn letters(&self) -> &[(usize, i8)] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn mul(&self, other: &FreeWord) -> FreeWord {
        let mut w = self.clone();
        for &(g, e) in &other.letters {
            w.push(g, e);
        }
        w
    }

    pub fn inverse(&self) -> FreeWord {
        FreeWord { letters: self.letters.iter().rev().map(|&(g, e)| (g, -e)).collect() }
    }

    pub fn pow(&self, k: i64) -> FreeWord {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        (0..k.unsigned_abs()).fold(FreeWord::identity(), |acc, _| acc.mul(&base))
    }

    /// `a⁻¹ b⁻¹ a b`
    pub fn commutator(a: &FreeWord, b: &FreeWord) -> FreeWord {
        a.inverse().mul(&b.inverse()).mul(a).mul(b)
    }

    /// Exponent sum of generator `g`.
    pub fn exponent_sum(&self, g: usize) -> i64 {
        self.letters.iter().filter(|l| l.0 == g).map(|l| l.1 as i64).sum()
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.letters.iter().map(|l| l.0).max()
    }

    /// Render with generator names, e.g. `a3 a1 a3^-1`.
    pub fn format(&self, names: &[&str]) -> String {
        self.letters
            .iter()
            .map(|&(g, e)| {
                let n = names.get(g).map(|s| s.to_string()).unwrap_or_else(|| format!("x{}", g + 1));
                if e == 1 {
                    n
                } else {
                    format!("{n}^-1")
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Parse whitespace-separated letters `name` or `name^-1` (also `name^1`).
    pub fn parse(text: &str, names: &[&str]) -> Result<FreeWord> {
        let mut w = FreeWord::identity();
        for tok in text.split_whitespace() {
            let (name, e) = match tok.split_once('^') {
                None => (tok, 1),
                Some((n, "-1")) => (n, -1),
                Some((n, "1")) => (n, 1),
                Some(_) => return Err(LieError::Parse(format!("bad exponent in `{tok}`"))),
            };
            let g = names
                .iter()
                .position(|&n| n == name)
                .ok_or_else(|| LieError::UnknownGenerator(name.to_string()))?;
            w.push(g, e);
        }
        Ok(w)
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format(&[]))
    }
}

/// Endomorphism of `F_n` given by the images of `x_1, …, x_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Endomorphism {
    images: Vec<FreeWord>,
}

impl Endomorphism {
    pub fn identity(n: usize) -> Self {
        Endomorphism { images: (0..n).map(FreeWord::gen).collect() }
    }

    pub fn new(images: Vec<FreeWord>) -> Result<Self> {
        let n = images.len();
        if images.iter().any(|w| w.max_generator().is_some_and(|g| g >= n)) {
            return Err(invalid("image uses a generator outside the rank"));
        }
        Ok(Endomorphism { images })
    }

    pub fn rank(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[FreeWord] {
        &self.images
    }

    pub fn apply(&self, w: &FreeWord) -> FreeWord {
        let mut out = FreeWord::identity();
        for &(g, e) in &w.letters {
            let img = &self.images[g];
            out = if e == 1 { out.mul(img) } else { out.mul(&img.inverse()) };
        }
        out
    }

    /// `(self ∘ other)(x) = self(other(x))`.
    pub fn compose(&self, other: &Endomorphism) -> Endomorphism {
        Endomorphism { images: other.images.iter().map(|w| self.apply(w)).collect() }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(g, w)| w.letters == [(g, 1)])
    }
}

/// `β_{i,j}`: `x_j ↦ x_i⁻¹ x_j x_i`, other generators fixed (1-based indices).
pub fn mccool_automorphism(n: usize, i: usize, j: usize) -> Result<Endomorphism> {
    conjugation(n, i, j, 1)
}

/// Inverse of `β_{i,j}`: `x_j ↦ x_i x_j x_i⁻¹`.
pub fn mccool_automorphism_inverse(n: usize, i: usize, j: usize) -> Result<Endomorphism> {
    conjugation(n, i, j, -1)
}

fn conjugation(n: usize, i: usize, j: usize, e: i8) -> Result<Endomorphism> {
    if i == 0 || j == 0 || i > n || j > n {
        return Err(invalid(format!("indices ({i},{j}) out of range 1..={n}")));
    }
    if i == j {
        return Err(invalid("β_{i,j} needs i != j"));
    }
    let mut images: Vec<FreeWord> = (0..n).map(FreeWord::gen).collect();
    images[j - 1] = FreeWord::from_letters([(i - 1, -e), (j - 1, 1), (i - 1, e)])?;
    Ok(Endomorphism { images })
}

/// Commutator `a⁻¹ b⁻¹ a b` of automorphisms, given the inverses.
fn aut_commutator(a: &Endomorphism, a_inv: &Endomorphism, b: &Endomorphism, b_inv: &Endomorphism) -> Endomorphism {
    a_inv.compose(b_inv).compose(a).compose(b)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct McCoolReport {
    pub n: usize,
    pub relations_checked: usize,
    /// Human-readable labels of failing relations.
    pub failures: Vec<String>,
    pub witness_is_identity: bool,
}

impl McCoolReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && !self.witness_is_identity
    }

    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "relations_checked": self.relations_checked,
            "failures": self.failures,
            "witness_is_identity": self.witness_is_identity,
            "passed": self.passed(),
        })
    }
}

/// Check McCool's relations among the `β_{i,j}` for all distinct index tuples:
///
/// * `[β_{i,j}, β_{k,l}] = 1` for `i, j, k, l` distinct,
/// * `[β_{i,j}, β_{i,k}] = 1`,
/// * `[β_{j,k}, β_{i,j}β_{i,k}] = 1`,
///
/// and evaluate the witness `[β_{1,3}, β_{1,2}β_{2,3}]`, which is not a relation.
pub fn verify_mccool_relations(n: usize) -> Result<McCoolReport> {
    if n < 3 {
        return Err(invalid("verify_mccool_relations needs n >= 3"));
    }
    let mut beta = vec![vec![None; n + 1]; n + 1];
    let mut beta_inv = vec![vec![None; n + 1]; n + 1];
    for i in 1..=n {
        for j in 1..=n {
            if i != j {
                beta[i][j] = Some(mccool_automorphism(n, i, j)?);
                beta_inv[i][j] = Some(mccool_automorphism_inverse(n, i, j)?);
            }
        }
    }
    let b = |i: usize, j: usize| beta[i][j].as_ref().unwrap();
    let bi = |i: usize, j: usize| beta_inv[i][j].as_ref().unwrap();
    let mut report = McCoolReport { n, relations_checked: 0, failures: Vec::new(), witness_is_identity: false };
    let mut check = |label: String, e: Endomorphism| {
        report.relations_checked += 1;
        if !e.is_identity() {
            report.failures.push(label);
        }
    };
    for i in 1..=n {
        for j in 1..=n {
            if i == j {
                continue;
            }
            for k in 1..=n {
                if k == i || k == j {
                    continue;
                }
                check(format!("[b{i}{j},b{i}{k}]"), aut_commutator(b(i, j), bi(i, j), b(i, k), bi(i, k)));
                let p = b(i, j).compose(b(i, k));
                let p_inv = bi(i, k).compose(bi(i, j));
                check(format!("[b{j}{k},b{i}{j}b{i}{k}]"), aut_commutator(b(j, k), bi(j, k), &p, &p_inv));
                for l in 1..=n {
                    if l == i || l == j || l == k {
                        continue;
                    }
                    check(format!("[b{i}{j},b{k}{l}]"), aut_commutator(b(i, j), bi(i, j), b(k, l), bi(k, l)));
                }
            }
        }
    }
    let p = b(1, 2).compose(b(2, 3));
    let p_inv = bi(2, 3).compose(bi(1, 2));
    report.witness_is_identity = aut_commutator(b(1, 3), bi(1, 3), &p, &p_inv).is_identity();
    Ok(report)
}

/// Generator names of the poison group: `a1, a2, a3` in `F_3`, `phi1, phi2` in `F_2`.
pub const POISON_A: [&str; 3] = ["a1", "a2", "a3"];
pub const POISON_PHI: [&str; 2] = ["phi1", "phi2"];

/// Normal form `w·v` with `w ∈ F_3 = ⟨a1,a2,a3⟩`, `v ∈ F_2 = ⟨phi1,phi2⟩`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PoisonElement {
    pub w: FreeWord,
    pub v: FreeWord,
}

/// `ρ(phi_i^e)`: `a3 ↦ a3 a_i^e`, `a1, a2` fixed.
fn rho_letter(i: usize, e: i8) -> Endomorphism {
    let mut images: Vec<FreeWord> = (0..3).map(FreeWord::gen).collect();
    images[2] = FreeWord::from_letters([(2, 1), (i, e)]).expect("±1 exponent");
    Endomorphism { images }
}

/// `ρ(v)` as a composite of letter automorphisms along `v`.
fn rho(v: &FreeWord) -> Endomorphism {
    let mut acc = Endomorphism::identity(3);
    for &(i, e) in v.letters() {
        acc = acc.compose(&rho_letter(i, e));
    }
    acc
}

impl PoisonElement {
    pub fn identity() -> Self {
        PoisonElement::default()
    }

    pub fn new(w: FreeWord, v: FreeWord) -> Result<Self> {
        if w.max_generator().is_some_and(|g| g >= 3) || v.max_generator().is_some_and(|g| g >= 2) {
            return Err(invalid("generator out of range for F_3 ⋊ F_2"));
        }
        Ok(PoisonElement { w, v })
    }

    pub fn a(i: usize) -> Self {
        PoisonElement { w: FreeWord::gen(i - 1), v: FreeWord::identity() }
    }

    pub fn phi(i: usize) -> Self {
        PoisonElement { w: FreeWord::identity(), v: FreeWord::gen(i - 1) }
    }

    /// `(w1, v1)(w2, v2) = (w1 ρ(v1)(w2), v1 v2)`.
    pub fn multiply(&self, other: &PoisonElement) -> PoisonElement {
        PoisonElement { w: self.w.mul(&rho(&self.v).apply(&other.w)), v: self.v.mul(&other.v) }
    }

    pub fn inverse(&self) -> PoisonElement {
        let v_inv = self.v.inverse();
        PoisonElement { w: rho(&v_inv).apply(&self.w.inverse()), v: v_inv }
    }

    pub fn is_identity(&self) -> bool {
        self.w.is_identity() && self.v.is_identity()
    }

    /// `g h g⁻¹ h⁻¹`
    pub fn commutator(g: &PoisonElement, h: &PoisonElement) -> PoisonElement {
        g.multiply(h).multiply(&g.inverse()).multiply(&h.inverse())
    }

    /// Parse `"<w> | <v>"`; either side may be empty. A string without `|`
    /// is read as a product of letters from both alphabets.
    pub fn parse(text: &str) -> Result<PoisonElement> {
        if let Some((w, v)) = text.split_once('|') {
            return PoisonElement::new(FreeWord::parse(w, &POISON_A)?, FreeWord::parse(v, &POISON_PHI)?);
        }
        let mut acc = PoisonElement::identity();
        for tok in text.split_whitespace() {
            let x = match FreeWord::parse(tok, &POISON_A) {
                Ok(w) => PoisonElement { w, v: FreeWord::identity() },
                Err(_) => PoisonElement { w: FreeWord::identity(), v: FreeWord::parse(tok, &POISON_PHI)? },
            };
            acc = acc.multiply(&x);
        }
        Ok(acc)
    }
}

impl fmt::Display for PoisonElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.w.format(&POISON_A), self.v.format(&POISON_PHI))
    }
}

/// `p × α`: the projection to `F_2` and the abelianization
/// `(Σφ1 in v, Σφ2 in v, Σa3 in w)`.
pub fn poison_p_alpha(g: &PoisonElement) -> (FreeWord, [i64; 3]) {
    (g.v.clone(), [g.v.exponent_sum(0), g.v.exponent_sum(1), g.w.exponent_sum(2)])
}
