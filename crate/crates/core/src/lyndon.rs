//! Free Lie algebras over `Z` in the Lyndon basis.
//!
//! A Lyndon word `w` stands for the basis element `λ(w)`, the iterated bracket
//! obtained from the right standard factorization `w = u·v` (with `v` the
//! longest proper Lyndon suffix): `λ(w) = [λ(u), λ(v)]`, `λ(a) = a` for letters.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;

use crate::error::{invalid, LieError, Result};
use crate::linear::Lin;

/// Generator index inside one alphabet (declaration order is the letter order).
pub type Letter = u16;

/// A Lyndon word over `0..alphabet_size`.
///
/// The `Ord` impl is graded-lexicographic (shorter words first, then
/// dictionary order), which is the order used for every basis listing. Use
/// [`LyndonWord::lex_cmp`] for the plain dictionary order the rewriting
/// algorithm needs.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LyndonWord {
    letters: Vec<Letter>,
}

impl LyndonWord {
    /// Checked constructor.
    pub fn new(letters: Vec<Letter>, alphabet_size: usize) -> Result<Self> {
        if letters.is_empty() || letters.iter().any(|&a| a as usize >= alphabet_size) || !is_lyndon(&letters) {
            return Err(LieError::NotLyndon(letters, alphabet_size));
        }
        Ok(LyndonWord { letters })
    }

    pub fn letter(a: Letter) -> Self {
        LyndonWord { letters: vec![a] }
    }

    pub(crate) fn from_letters_unchecked(letters: Vec<Letter>) -> Self {
        debug_assert!(is_lyndon(&letters), "{letters:?} is not Lyndon");
        LyndonWord { letters }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn weight(&self) -> usize {
        self.letters.len()
    }

    pub fn lex_cmp(&self, other: &Self) -> Ordering {
        self.letters.cmp(&other.letters)
    }

    /// Render with a naming function for letters, e.g. `[x,[x,y]]`.
    pub fn bracket_form(&self, name: &dyn Fn(Letter) -> String) -> String {
        match standard_split(&self.letters) {
            None => name(self.letters[0]),
            Some(i) => {
                let u = LyndonWord { letters: self.letters[..i].to_vec() };
                let v = LyndonWord { letters: self.letters[i..].to_vec() };
                format!("[{},{}]", u.bracket_form(name), v.bracket_form(name))
            }
        }
    }
}

impl Ord for LyndonWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.letters
            .len()
            .cmp(&other.letters.len())
            .then_with(|| self.letters.cmp(&other.letters))
    }
}

impl PartialOrd for LyndonWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for LyndonWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.bracket_form(&|a| letter_name(a));
        f.write_str(&s)
    }
}

/// Default letter names: x, y, z, w, then `g<i>`.
fn letter_name(a: Letter) -> String {
    match a {
        0 => "x".into(),
        1 => "y".into(),
        2 => "z".into(),
        3 => "w".into(),
        _ => format!("g{a}"),
    }
}

/// A word is Lyndon iff it is nonempty and strictly smaller than each of its
/// proper suffixes.
pub fn is_lyndon(w: &[Letter]) -> bool {
    !w.is_empty() && (1..w.len()).all(|i| w < &w[i..])
}

/// Split point of the right standard factorization, `None` for letters.
fn standard_split(w: &[Letter]) -> Option<usize> {
    (1..w.len()).find(|&i| is_lyndon(&w[i..]))
}

/// All Lyndon words of length `weight` over `alphabet_size` letters, in
/// dictionary order.
pub fn lyndon_words(alphabet_size: usize, weight: usize) -> Result<Vec<LyndonWord>> {
    if alphabet_size == 0 || weight == 0 {
        return Err(invalid("alphabet size and weight must be positive"));
    }
    if alphabet_size > Letter::MAX as usize {
        return Err(invalid("alphabet too large"));
    }
    let k = alphabet_size as i64;
    let mut out = Vec::new();
    // Duval's generation of Lyndon words of length <= weight.
    let mut w: Vec<i64> = vec![-1];
    while !w.is_empty() {
        *w.last_mut().unwrap() += 1;
        let m = w.len();
        if m == weight {
            out.push(LyndonWord { letters: w.iter().map(|&a| a as Letter).collect() });
        }
        while w.len() < weight {
            let c = w[w.len() - m];
            w.push(c);
        }
        while w.last() == Some(&(k - 1)) {
            w.pop();
        }
    }
    Ok(out)
}

fn mobius(mut n: u64) -> i128 {
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// Rank of the weight-`weight` component of the free Lie algebra on
/// `alphabet_size` generators: `(1/q) Σ_{d|q} μ(d) k^{q/d}`.
pub fn witt_dimension(alphabet_size: usize, weight: usize) -> Result<u128> {
    if alphabet_size == 0 || weight == 0 {
        return Err(invalid("alphabet size and weight must be positive"));
    }
    let k = alphabet_size as i128;
    let q = weight as u64;
    let mut sum: i128 = 0;
    for d in (1..=q).filter(|d| q % d == 0) {
        let mu = mobius(d);
        if mu == 0 {
            continue;
        }
        let p = k
            .checked_pow((q / d) as u32)
            .ok_or_else(|| invalid("Witt dimension overflows 128 bits"))?;
        sum += mu * p;
    }
    Ok((sum / q as i128) as u128)
}

/// Right standard factorization `w = u·v`, `v` the longest proper Lyndon suffix.
pub fn standard_factorization(w: &LyndonWord) -> Result<(LyndonWord, LyndonWord)> {
    let i = standard_split(&w.letters).ok_or_else(|| invalid("letters have no standard factorization"))?;
    Ok((
        LyndonWord { letters: w.letters[..i].to_vec() },
        LyndonWord { letters: w.letters[i..].to_vec() },
    ))
}

pub(crate) fn split_unchecked(w: &LyndonWord) -> Option<(LyndonWord, LyndonWord)> {
    standard_split(&w.letters).map(|i| {
        (
            LyndonWord { letters: w.letters[..i].to_vec() },
            LyndonWord { letters: w.letters[i..].to_vec() },
        )
    })
}

type BracketCache = RwLock<HashMap<(LyndonWord, LyndonWord), Lin<LyndonWord>>>;

fn cache() -> &'static BracketCache {
    static CACHE: OnceLock<BracketCache> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// `[λ(u), λ(v)]` in the Lyndon basis, without truncation.
pub(crate) fn bracket_words(u: &LyndonWord, v: &LyndonWord) -> Lin<LyndonWord> {
    match u.lex_cmp(v) {
        Ordering::Equal => Lin::zero(),
        Ordering::Greater => bracket_words(v, u).neg(),
        Ordering::Less => {
            let key = (u.clone(), v.clone());
            if let Some(hit) = cache().read().unwrap().get(&key) {
                return hit.clone();
            }
            let result = bracket_ordered(u, v);
            cache().write().unwrap().insert(key, result.clone());
            result
        }
    }
}

// u < v, both Lyndon. uv is Lyndon; it is the basis word for [λu, λv] exactly
// when u is a letter or the right factor of u is >= v. Otherwise rewrite
// [[u1,u2],v] = [u1,[u2,v]] - [u2,[u1,v]].
fn bracket_ordered(u: &LyndonWord, v: &LyndonWord) -> Lin<LyndonWord> {
    match split_unchecked(u) {
        Some((u1, u2)) if u2.lex_cmp(v) == Ordering::Less => {
            let mut out = bracket_word_lin(&u1, &bracket_words(&u2, v));
            out.sub_assign(&bracket_word_lin(&u2, &bracket_words(&u1, v)));
            out
        }
        _ => {
            let mut letters = u.letters.clone();
            letters.extend_from_slice(&v.letters);
            Lin::basis(LyndonWord::from_letters_unchecked(letters))
        }
    }
}

fn bracket_word_lin(u: &LyndonWord, x: &Lin<LyndonWord>) -> Lin<LyndonWord> {
    let mut out = Lin::zero();
    for (w, c) in x {
        out.add_scaled(&bracket_words(u, w), c);
    }
    out
}

/// Bilinear bracket of two combinations, dropping everything above `truncation`.
pub(crate) fn bracket_lin(x: &Lin<LyndonWord>, y: &Lin<LyndonWord>, truncation: usize) -> Lin<LyndonWord> {
    let mut out = Lin::zero();
    for (u, a) in x {
        for (v, b) in y {
            if u.weight() + v.weight() > truncation {
                continue;
            }
            out.add_scaled(&bracket_words(u, v), &(a * b));
        }
    }
    out
}

/// An element of the free Lie algebra, meaningful through `truncation`.
///
/// Equality compares terms only.
#[derive(Clone, Debug)]
pub struct FreeLieElement {
    terms: Lin<LyndonWord>,
    truncation: usize,
}

impl PartialEq for FreeLieElement {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl Eq for FreeLieElement {}

impl FreeLieElement {
    pub fn zero(truncation: usize) -> Self {
        FreeLieElement { terms: Lin::zero(), truncation }
    }

    pub fn from_word(w: LyndonWord, truncation: usize) -> Self {
        Self::from_terms(Lin::basis(w), truncation)
    }

    pub fn generator(a: Letter, truncation: usize) -> Self {
        Self::from_word(LyndonWord::letter(a), truncation)
    }

    /// Terms above `truncation` are discarded.
    pub fn from_terms(terms: Lin<LyndonWord>, truncation: usize) -> Self {
        FreeLieElement { terms: terms.filtered(|w| w.weight() <= truncation), truncation }
    }

    pub fn terms(&self) -> &Lin<LyndonWord> {
        &self.terms
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn coeff(&self, w: &LyndonWord) -> BigInt {
        self.terms.coeff(w)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut t = self.terms.clone();
        t.add_assign(&other.terms);
        Self::from_terms(t, self.truncation.min(other.truncation))
    }

    pub fn scaled(&self, c: &BigInt) -> Self {
        FreeLieElement { terms: self.terms.scaled(c), truncation: self.truncation }
    }
}

/// Lie bracket in canonical form; terms of weight above `truncation` are dropped.
pub fn free_bracket(x: &FreeLieElement, y: &FreeLieElement, truncation: usize) -> FreeLieElement {
    FreeLieElement { terms: bracket_lin(&x.terms, &y.terms, truncation), truncation }
}

/// Polynomial in the free associative ring on the alphabet.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct AssocPoly {
    pub terms: Lin<Vec<Letter>>,
}

impl AssocPoly {
    pub fn mul(&self, other: &AssocPoly) -> AssocPoly {
        let mut out = Lin::zero();
        for (a, c) in &self.terms {
            for (b, d) in &other.terms {
                let mut w = a.clone();
                w.extend_from_slice(b);
                out.add_term(w, &(c * d));
            }
        }
        AssocPoly { terms: out }
    }

    /// `xy - yx`
    pub fn commutator(&self, other: &AssocPoly) -> AssocPoly {
        let mut t = self.mul(other).terms;
        t.sub_assign(&other.mul(self).terms);
        AssocPoly { terms: t }
    }
}

fn expand_word(w: &LyndonWord) -> AssocPoly {
    match split_unchecked(w) {
        None => AssocPoly { terms: Lin::basis(w.letters.clone()) },
        Some((u, v)) => expand_word(&u).commutator(&expand_word(&v)),
    }
}

/// Image in the free associative ring (the universal enveloping algebra).
pub fn expand(x: &FreeLieElement) -> AssocPoly {
    let mut out = Lin::zero();
    for (w, c) in x.terms() {
        out.add_scaled(&expand_word(w).terms, c);
    }
    AssocPoly { terms: out }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &[Letter]) -> LyndonWord {
        LyndonWord::from_letters_unchecked(s.to_vec())
    }

    #[test]
    fn lyndon_words_small() {
        assert_eq!(lyndon_words(2, 1).unwrap(), vec![w(&[0]), w(&[1])]);
        assert_eq!(lyndon_words(2, 3).unwrap(), vec![w(&[0, 0, 1]), w(&[0, 1, 1])]);
        assert_eq!(
            lyndon_words(2, 4).unwrap(),
            vec![w(&[0, 0, 0, 1]), w(&[0, 0, 1, 1]), w(&[0, 1, 1, 1])]
        );
        assert!(lyndon_words(1, 2).unwrap().is_empty());
        assert!(lyndon_words(0, 2).is_err());
        assert!(lyndon_words(2, 0).is_err());
    }

    #[test]
    fn witt_values() {
        assert_eq!(witt_dimension(2, 1).unwrap(), 2);
        assert_eq!(witt_dimension(3, 3).unwrap(), 8);
        assert_eq!(witt_dimension(2, 6).unwrap(), 9);
        assert_eq!(witt_dimension(1, 1).unwrap(), 1);
        assert_eq!(witt_dimension(1, 5).unwrap(), 0);
        assert!(witt_dimension(0, 3).is_err());
    }

    #[test]
    fn factorizations() {
        assert_eq!(standard_factorization(&w(&[0, 1])).unwrap(), (w(&[0]), w(&[1])));
        assert_eq!(standard_factorization(&w(&[0, 0, 1])).unwrap(), (w(&[0]), w(&[0, 1])));
        assert_eq!(standard_factorization(&w(&[0, 1, 1])).unwrap(), (w(&[0, 1]), w(&[1])));
        // aabab -> (aab, ab)
        assert_eq!(standard_factorization(&w(&[0, 0, 1, 0, 1])).unwrap(), (w(&[0, 0, 1]), w(&[0, 1])));
        assert!(standard_factorization(&w(&[1])).is_err());
    }

    #[test]
    fn new_rejects_non_lyndon() {
        assert!(LyndonWord::new(vec![1, 0], 2).is_err());
        assert!(LyndonWord::new(vec![0, 0], 2).is_err());
        assert!(LyndonWord::new(vec![0, 2], 2).is_err());
        assert!(LyndonWord::new(vec![], 2).is_err());
        assert!(LyndonWord::new(vec![0, 1], 2).is_ok());
    }

    #[test]
    fn basic_brackets() {
        let x = FreeLieElement::generator(0, 5);
        let y = FreeLieElement::generator(1, 5);
        assert!(free_bracket(&x, &x, 5).is_zero());
        assert_eq!(free_bracket(&x, &y, 5), FreeLieElement::from_word(w(&[0, 1]), 5));
        let xy = FreeLieElement::from_word(w(&[0, 1]), 5);
        assert_eq!(free_bracket(&x, &xy, 5), FreeLieElement::from_word(w(&[0, 0, 1]), 5));
        assert_eq!(
            free_bracket(&xy, &x, 5),
            FreeLieElement::from_word(w(&[0, 0, 1]), 5).scaled(&BigInt::from(-1))
        );
        assert!(free_bracket(&x, &xy, 2).is_zero());
    }

    #[test]
    fn expansion() {
        let e = expand(&FreeLieElement::from_word(w(&[0, 0, 1]), 3));
        let expected: Lin<Vec<Letter>> = [
            (vec![0, 0, 1], BigInt::from(1)),
            (vec![0, 1, 0], BigInt::from(-2)),
            (vec![1, 0, 0], BigInt::from(1)),
        ]
        .into_iter()
        .collect();
        assert_eq!(e.terms, expected);
    }

    #[test]
    fn display_uses_bracket_form() {
        assert_eq!(w(&[0, 0, 1]).to_string(), "[x,[x,y]]");
        assert_eq!(w(&[0, 1, 1]).to_string(), "[[x,y],y]");
    }
}
