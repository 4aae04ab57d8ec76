//! The monomial arrangement and its embedding into the braid arrangement.
//!
//! `g_n(x_1, …, x_n) = (0, x_1, ζx_1, …, ζ^{r-1}x_1, x_2, …, ζ^{r-1}x_n)`
//! has `ℓ_n = rn + 1` coordinates. Coordinates are kept symbolic as
//! `ζ^e x_i` with `e mod r`, so incidence of a hyperplane `H` in a braid
//! hyperplane `H_{a,b} = {y_a = y_b}` is decided by substituting the defining
//! equation of `H` and comparing exponent/variable pairs.
//!
//! The fibration check works over `Q(ζ_r)` and only needs exact equality,
//! so it is generic over [`FormField`].

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use indexmap::IndexMap;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::algebra::AlgebraSpec;
use crate::error::{invalid, LieError, Result};
use crate::maps::LieMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum HyperplaneKind {
    /// `x_i = 0`
    Coordinate(usize),
    /// `x_i = ζ^p x_j`, `i < j`, `p ∈ 1..=r`
    Difference(usize, usize, usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonomialHyperplane {
    pub kind: HyperplaneKind,
    pub r: usize,
}

impl MonomialHyperplane {
    pub fn coordinate(i: usize, r: usize) -> Self {
        MonomialHyperplane { kind: HyperplaneKind::Coordinate(i), r }
    }

    pub fn difference(i: usize, j: usize, p: usize, r: usize) -> Self {
        MonomialHyperplane { kind: HyperplaneKind::Difference(i, j, p), r }
    }

    /// `H_i` or `H_{i,j}^{(p)}`.
    pub fn label(&self) -> String {
        match self.kind {
            HyperplaneKind::Coordinate(i) => format!("H_{i}"),
            HyperplaneKind::Difference(i, j, p) => format!("H_{{{i},{j}}}^{{({p})}}"),
        }
    }

    /// The matching generator of `monomial_orbit`: `Z[i]` or `B[i,j;p]`.
    pub fn generator(&self) -> String {
        match self.kind {
            HyperplaneKind::Coordinate(i) => format!("Z[{i}]"),
            HyperplaneKind::Difference(i, j, p) => format!("B[{i},{j};{p}]"),
        }
    }

    fn substitute(&self, c: SymbolicCoordinate, last: usize) -> SymbolicCoordinate {
        use SymbolicCoordinate::*;
        let c = match c {
            LastVar => Monomial(0, last),
            other => other,
        };
        match (self.kind, c) {
            (HyperplaneKind::Coordinate(i), Monomial(_, v)) if v == i => Zero,
            (HyperplaneKind::Difference(i, j, p), Monomial(e, v)) if v == i => Monomial((e + p) % self.r, j),
            (_, other) => other,
        }
    }
}

impl fmt::Display for MonomialHyperplane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// Hyperplanes of the monomial arrangement in `C^n`, in the order
/// `H_1, …, H_n`, then `H_{i,j}^{(p)}` by `(j, i, p)`; this matches the
/// generator order of `monomial_orbit(r, n)`.
pub fn monomial_hyperplanes(r: usize, n: usize) -> Vec<MonomialHyperplane> {
    let mut out: Vec<MonomialHyperplane> = (1..=n).map(|i| MonomialHyperplane::coordinate(i, r)).collect();
    for j in 2..=n {
        for i in 1..j {
            out.extend((1..=r).map(|p| MonomialHyperplane::difference(i, j, p, r)));
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SymbolicCoordinate {
    Zero,
    /// `ζ^e x_i`, `e` reduced mod `r`.
    Monomial(usize, usize),
    /// The fiber coordinate `z`.
    LastVar,
}

/// Coordinates `y_1, …, y_{ℓ_n}` of `g_n`.
pub fn embedding_coordinates(r: usize, n: usize) -> Vec<SymbolicCoordinate> {
    let mut out = vec![SymbolicCoordinate::Zero];
    for i in 1..=n {
        out.extend((0..r).map(|e| SymbolicCoordinate::Monomial(e, i)));
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncidenceReport {
    pub r: usize,
    pub n: usize,
    pub ell: usize,
    /// Source hyperplane and the braid hyperplanes `(a, b)`, `a < b`, containing its image.
    pub sets: Vec<(MonomialHyperplane, BTreeSet<(usize, usize)>)>,
    pub is_partition: bool,
    pub total: usize,
}

impl IncidenceReport {
    pub fn sizes(&self) -> IndexMap<String, usize> {
        self.sets.iter().map(|(h, s)| (h.label(), s.len())).collect()
    }

    pub fn to_json(&self) -> Value {
        let sets: IndexMap<String, Vec<String>> = self
            .sets
            .iter()
            .map(|(h, s)| (h.label(), s.iter().map(|(a, b)| format!("H_{{{a},{b}}}")).collect()))
            .collect();
        json!({
            "schema_version": 1,
            "r": self.r,
            "n": self.n,
            "ell": self.ell,
            "total": self.total,
            "is_partition": self.is_partition,
            "sizes": self.sizes(),
            "sets": sets,
        })
    }
}

/// `S_H = {H_{a,b} : g_n(H) ⊂ H_{a,b}}` for every hyperplane `H` of the
/// monomial arrangement.
pub fn incidence_sets(r: usize, n: usize) -> Result<IncidenceReport> {
    if r < 1 || n < 1 {
        return Err(invalid("incidence_sets needs r >= 1 and n >= 1"));
    }
    let coords = embedding_coordinates(r, n);
    let ell = coords.len();
    let mut sets = Vec::new();
    for h in monomial_hyperplanes(r, n) {
        let image: Vec<SymbolicCoordinate> = coords.iter().map(|&c| h.substitute(c, n + 1)).collect();
        let mut s = BTreeSet::new();
        for a in 0..ell {
            for b in a + 1..ell {
                if image[a] == image[b] {
                    s.insert((a + 1, b + 1));
                }
            }
        }
        sets.push((h, s));
    }
    let total: usize = sets.iter().map(|(_, s)| s.len()).sum();
    let union: BTreeSet<&(usize, usize)> = sets.iter().flat_map(|(_, s)| s.iter()).collect();
    let is_partition = union.len() == total && total == ell * (ell - 1) / 2;
    Ok(IncidenceReport { r, n, ell, sets, is_partition, total })
}

/// The incidence sets are disjoint and cover all `C(ℓ_n, 2)` braid hyperplanes.
pub fn verify_partition(r: usize, n: usize) -> Result<bool> {
    Ok(incidence_sets(r, n)?.is_partition)
}

/// `gr(g_n)`: `monomial_orbit(r, n) → drinfeld_kohno(ℓ_n)`, sending the
/// generator of `H` to `Σ_{H_{a,b} ∈ S_H} B[a,b]`.
pub fn induced_generator_images(r: usize, n: usize) -> Result<LieMap> {
    let report = incidence_sets(r, n)?;
    let dom = Arc::new(AlgebraSpec::monomial_orbit(r, n)?);
    let cod = Arc::new(AlgebraSpec::drinfeld_kohno(report.ell)?);
    let images = report
        .sets
        .iter()
        .map(|(h, s)| {
            let names: Vec<String> = s.iter().map(|(a, b)| format!("B[{a},{b}]")).collect();
            Ok((h.generator(), cod.sum_of(&names, 1)?))
        })
        .collect::<Result<Vec<_>>>()?;
    LieMap::new(dom, cod, images)
}

/// For each hyperplane of `monomial_orbit(r, n+1)` involving `x_{n+1}`, the
/// unique coordinate `k` of `g_n` with `z = y_k` on it (`z = x_{n+1}`).
/// This is the symbolic source of the pullback dictionary.
pub fn fiber_incidence(r: usize, n: usize) -> Result<Vec<(MonomialHyperplane, usize)>> {
    if r < 1 || n < 1 {
        return Err(invalid("fiber_incidence needs r >= 1 and n >= 1"));
    }
    let coords = embedding_coordinates(r, n);
    let last = n + 1;
    let fiber: Vec<MonomialHyperplane> =
        monomial_hyperplanes(r, last).into_iter().filter(|h| match h.kind {
            HyperplaneKind::Coordinate(i) => i == last,
            HyperplaneKind::Difference(_, j, _) => j == last,
        }).collect();
    let mut out = Vec::new();
    for h in fiber {
        let z = h.substitute(SymbolicCoordinate::LastVar, last);
        let hits: Vec<usize> = coords
            .iter()
            .enumerate()
            .filter(|(_, &c)| h.substitute(c, last) == z)
            .map(|(k, _)| k + 1)
            .collect();
        match hits.as_slice() {
            [k] => out.push((h, *k)),
            _ => return Err(invalid(format!("{} meets the fiber in {} coordinates", h.label(), hits.len()))),
        }
    }
    Ok(out)
}

/// Exact coefficient field for affine forms.
pub trait FormField: Clone + PartialEq + fmt::Debug {
    fn zero_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
}

impl FormField for BigRational {
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
}

/// Integer polynomial, lowest degree first.
type Poly = Vec<BigInt>;

fn trim(mut p: Poly) -> Poly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

/// Exact division by a monic polynomial.
fn div_monic(num: &Poly, den: &Poly) -> Poly {
    let mut rem = num.clone();
    let d = den.len() - 1;
    if rem.len() <= d {
        return Vec::new();
    }
    let mut q = vec![BigInt::zero(); rem.len() - d];
    for i in (0..q.len()).rev() {
        let c = rem[i + d].clone();
        if !c.is_zero() {
            for (k, dk) in den.iter().enumerate() {
                rem[i + k] -= &c * dk;
            }
        }
        q[i] = c;
    }
    trim(q)
}

/// The r-th cyclotomic polynomial.
pub fn cyclotomic_polynomial(r: usize) -> Vec<BigInt> {
    let mut p: Poly = vec![BigInt::zero(); r + 1];
    p[0] = -BigInt::one();
    p[r] = BigInt::one();
    for d in 1..r {
        if r % d == 0 {
            p = div_monic(&p, &cyclotomic_polynomial(d));
        }
    }
    p
}

/// Element of `Q(ζ_r) = Q[t]/Φ_r(t)`, stored reduced (degree < deg Φ_r).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cyclotomic {
    modulus: Arc<Vec<BigInt>>,
    coeffs: Vec<BigRational>,
}

impl Cyclotomic {
    fn reduce(modulus: Arc<Vec<BigInt>>, mut c: Vec<BigRational>) -> Self {
        let d = modulus.len() - 1;
        for i in (d..c.len()).rev() {
            let lead = c[i].clone();
            if !Zero::is_zero(&lead) {
                for (k, mk) in modulus.iter().enumerate() {
                    c[i - d + k] -= &lead * BigRational::from_integer(mk.clone());
                }
            }
        }
        c.truncate(d);
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        Cyclotomic { modulus, coeffs: c }
    }

    /// `ζ_r^e`.
    pub fn zeta_pow(r: usize, e: i64) -> Self {
        let e = e.rem_euclid(r as i64) as usize;
        let mut c = vec![BigRational::zero(); e + 1];
        c[e] = BigRational::one();
        Self::reduce(Arc::new(cyclotomic_polynomial(r)), c)
    }

    pub fn rational(r: usize, q: BigRational) -> Self {
        Self::reduce(Arc::new(cyclotomic_polynomial(r)), vec![q])
    }
}

/// Written as a polynomial in `z = ζ_r`, e.g. `-1 - z`.
impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.coeffs.iter().enumerate() {
            if Zero::is_zero(c) {
                continue;
            }
            let neg = c < &BigRational::zero();
            let abs = if neg { -c } else { c.clone() };
            match (first, neg) {
                (true, true) => write!(f, "-")?,
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
                (true, false) => {}
            }
            let unit = abs == BigRational::one();
            match e {
                0 => write!(f, "{abs}")?,
                _ if unit => write!(f, "z")?,
                _ => write!(f, "{abs}*z")?,
            }
            if e > 1 {
                write!(f, "^{e}")?;
            }
            first = false;
        }
        Ok(())
    }
}

impl FormField for Cyclotomic {
    fn zero_like(&self) -> Self {
        Cyclotomic { modulus: self.modulus.clone(), coeffs: Vec::new() }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero);
                let b = other.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero);
                a + b
            })
            .collect();
        Self::reduce(self.modulus.clone(), c)
    }
    fn sub(&self, other: &Self) -> Self {
        let neg = Cyclotomic { modulus: other.modulus.clone(), coeffs: other.coeffs.iter().map(|c| -c).collect() };
        self.add(&neg)
    }
    fn mul(&self, other: &Self) -> Self {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return self.zero_like();
        }
        let mut c = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Self::reduce(self.modulus.clone(), c)
    }
}

/// `c_1 x_1 + … + c_n x_n + c_0`.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineForm<F> {
    pub linear: Vec<F>,
    pub constant: F,
}

impl<F: FormField> AffineForm<F> {
    pub fn new(linear: Vec<F>, constant: F) -> Self {
        AffineForm { linear, constant }
    }

    fn entries(&self) -> impl Iterator<Item = &F> {
        self.linear.iter().chain(std::iter::once(&self.constant))
    }

    pub fn is_zero(&self) -> bool {
        self.entries().all(FormField::is_zero)
    }

    pub fn is_constant(&self) -> bool {
        self.linear.iter().all(FormField::is_zero)
    }

    fn sub(&self, other: &Self) -> Result<Self> {
        if self.linear.len() != other.linear.len() {
            return Err(LieError::DimensionMismatch(self.linear.len(), other.linear.len()));
        }
        Ok(AffineForm {
            linear: self.linear.iter().zip(&other.linear).map(|(a, b)| a.sub(b)).collect(),
            constant: self.constant.sub(&other.constant),
        })
    }

    /// Proportional as vectors (all 2×2 minors vanish).
    fn proportional(&self, other: &Self) -> bool {
        let a: Vec<&F> = self.entries().collect();
        let b: Vec<&F> = other.entries().collect();
        a.len() == b.len()
            && (0..a.len()).all(|i| (i + 1..a.len()).all(|j| a[i].mul(b[j]).sub(&a[j].mul(b[i])).is_zero()))
    }
}

/// A candidate root map `φ(x, z) = Π (z - g_k(x))` over a base arrangement.
#[derive(Clone, Debug, PartialEq)]
pub struct RootMapInput<F> {
    pub base_forms: Vec<AffineForm<F>>,
    pub fiber_factors: Vec<AffineForm<F>>,
}

/// Roots of the root map stay distinct off the base arrangement: every
/// difference `g_j - g_k` is a nonzero constant or a nonzero multiple of a
/// base form.
pub fn slf_check<F: FormField>(input: &RootMapInput<F>) -> Result<bool> {
    if input.base_forms.iter().any(AffineForm::is_zero) {
        return Err(LieError::ZeroForm);
    }
    let g = &input.fiber_factors;
    for j in 0..g.len() {
        for k in j + 1..g.len() {
            let d = g[j].sub(&g[k])?;
            if d.is_zero() {
                return Ok(false);
            }
            if d.is_constant() {
                continue;
            }
            let mut hit = false;
            for b in &input.base_forms {
                if b.linear.len() != d.linear.len() {
                    return Err(LieError::DimensionMismatch(b.linear.len(), d.linear.len()));
                }
                if d.proportional(b) {
                    hit = true;
                    break;
                }
            }
            if !hit {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The fibration `monomial(r, n+1) → monomial(r, n)` over `Q(ζ_r)`:
/// base forms `x_i` and `x_i - ζ^p x_j`; fiber factors `0` and `ζ^a x_i`.
pub fn monomial_root_map(r: usize, n: usize) -> Result<RootMapInput<Cyclotomic>> {
    if r < 1 || n < 1 {
        return Err(invalid("monomial_root_map needs r >= 1 and n >= 1"));
    }
    let zero = Cyclotomic::rational(r, BigRational::zero());
    let one = Cyclotomic::zeta_pow(r, 0);
    let unit = |i: usize, c: Cyclotomic| {
        let mut v = vec![zero.clone(); n];
        v[i - 1] = c;
        v
    };
    let mut base_forms = Vec::new();
    for i in 1..=n {
        base_forms.push(AffineForm::new(unit(i, one.clone()), zero.clone()));
    }
    for j in 2..=n {
        for i in 1..j {
            for p in 0..r as i64 {
                let mut v = unit(i, one.clone());
                v[j - 1] = zero.sub(&Cyclotomic::zeta_pow(r, p));
                base_forms.push(AffineForm::new(v, zero.clone()));
            }
        }
    }
    let mut fiber_factors = vec![AffineForm::new(vec![zero.clone(); n], zero.clone())];
    for i in 1..=n {
        for a in 0..r as i64 {
            fiber_factors.push(AffineForm::new(unit(i, Cyclotomic::zeta_pow(r, a)), zero.clone()));
        }
    }
    Ok(RootMapInput { base_forms, fiber_factors })
}

/// Rational affine form from integer coefficients (last entry is the constant).
pub fn rational_form(coeffs: &[i64]) -> AffineForm<BigRational> {
    let q = |c: &i64| BigRational::from_integer(BigInt::from(*c));
    let (constant, linear) = coeffs.split_last().expect("at least a constant");
    AffineForm::new(linear.iter().map(q).collect(), q(constant))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_incidences() {
        let r = incidence_sets(1, 1).unwrap();
        assert_eq!(r.ell, 2);
        assert_eq!(r.sets[0].1, BTreeSet::from([(1, 2)]));
        assert!(r.is_partition);

        let r = incidence_sets(2, 2).unwrap();
        assert_eq!(r.total, 10);
        assert_eq!(r.sizes().values().copied().collect::<Vec<_>>(), [3, 3, 2, 2]);
        assert_eq!(r.sizes().keys().cloned().collect::<Vec<_>>(), ["H_1", "H_2", "H_{1,2}^{(1)}", "H_{1,2}^{(2)}"]);

        let r = incidence_sets(3, 2).unwrap();
        assert_eq!(r.sizes().values().copied().collect::<Vec<_>>(), [6, 6, 3, 3, 3]);
        assert_eq!(r.total, 21);
    }

    #[test]
    fn partitions() {
        for r in 1..=3 {
            for n in 1..=3 {
                assert!(verify_partition(r, n).unwrap(), "({r},{n})");
            }
        }
    }

    #[test]
    fn images_r1_n2() {
        let f = induced_generator_images(1, 2).unwrap();
        let d = f.domain().clone();
        let c = f.codomain().clone();
        for (g, img) in [("Z[1]", "B[1,2]"), ("Z[2]", "B[1,3]"), ("B[1,2;1]", "B[2,3]")] {
            assert_eq!(f.apply(&d.generator(g, 1).unwrap(), 1).unwrap(), c.parse_element(img, 1).unwrap());
        }
        let f = induced_generator_images(2, 2).unwrap();
        let z1 = f.apply(&f.domain().generator("Z[1]", 1).unwrap(), 1).unwrap();
        assert_eq!(z1, f.codomain().parse_element("B[1,2]+B[1,3]+B[2,3]", 1).unwrap());
    }

    #[test]
    fn cyclotomics() {
        assert_eq!(cyclotomic_polynomial(1), [-1, 1].map(BigInt::from));
        assert_eq!(cyclotomic_polynomial(3), [1, 1, 1].map(BigInt::from));
        assert_eq!(cyclotomic_polynomial(4), [1, 0, 1].map(BigInt::from));
        assert_eq!(cyclotomic_polynomial(6), [1, -1, 1].map(BigInt::from));
        let z = Cyclotomic::zeta_pow(3, 1);
        let z3 = z.mul(&z).mul(&z);
        assert_eq!(z3, Cyclotomic::zeta_pow(3, 0));
        assert!(!z.sub(&Cyclotomic::zeta_pow(3, 2)).is_zero());
    }

    #[test]
    fn slf_examples() {
        let x = rational_form(&[1, 0]);
        let input = RootMapInput { base_forms: vec![x.clone()], fiber_factors: vec![x.clone(), rational_form(&[-1, 0])] };
        assert!(slf_check(&input).unwrap());
        let input = RootMapInput { base_forms: vec![], fiber_factors: vec![rational_form(&[0, 0]), x.clone()] };
        assert!(!slf_check(&input).unwrap());
        let input = RootMapInput { base_forms: vec![x.clone()], fiber_factors: vec![x.clone(), rational_form(&[1, 1])] };
        assert!(slf_check(&input).unwrap());
        let input = RootMapInput { base_forms: vec![rational_form(&[0, 0])], fiber_factors: vec![x] };
        assert_eq!(slf_check(&input), Err(LieError::ZeroForm));
    }

    #[test]
    fn monomial_fibrations() {
        for r in 1..=3 {
            for n in 1..=3 {
                assert!(slf_check(&monomial_root_map(r, n).unwrap()).unwrap(), "({r},{n})");
            }
        }
    }

    #[test]
    fn fiber_coordinates() {
        let f = fiber_incidence(1, 2).unwrap();
        let got: Vec<(String, usize)> = f.iter().map(|(h, k)| (h.generator(), *k)).collect();
        assert_eq!(got, [("Z[3]".to_string(), 1), ("B[1,3;1]".into(), 2), ("B[2,3;1]".into(), 3)]);
    }
}
