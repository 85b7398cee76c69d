//! Skew cyclic codes `C = (g(x))` of even length over R_{k,s}.
//!
//! A codeword is `c(x) = sum_{i<t} beta_i x^i g(x)` with `t = n - deg g`.
//! When `g` is theta-palindromic of odd degree, or palindromic of even
//! degree, the word `c'(x) = sum_i theta(beta_i) x^{t-1-i} g(x)` is also in
//! `C` and its DNA image is the reverse of the DNA image of `c`; that is
//! what [`SkewCyclicCode::reverse_codeword`] builds and
//! [`verify_reversible`] checks.
//!
//! Messages are enumerated as mixed-radix counters: `beta_0` is the least
//! significant digit and each digit runs over [`RingContext::element_at`]
//! order, so index ranges partition the code deterministically.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::dna::{DnaCodebook, DnaError, DnaString};
use crate::ring::{RingContext, RingElement};
use crate::skewpoly::{SkewError, SkewPoly, SkewPolyRing};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodeError {
    #[error("code length n = {0} must be even")]
    OddLength(usize),
    #[error("generator degree {degree} must satisfy 1 <= deg g < n = {n}")]
    DegreeOutOfRange { degree: usize, n: usize },
    #[error("generator is not a right divisor of x^{0} - 1")]
    NotRightDivisor(usize),
    #[error("expected {expected} message symbols, got {got}")]
    MessageLength { expected: usize, got: usize },
    #[error("expected a word of length {expected}, got {got}")]
    WordLength { expected: usize, got: usize },
    #[error("code has {} codewords, more than the cap of {cap}", .size.map_or("too many".to_string(), |s| s.to_string()))]
    CapExceeded { size: Option<u128>, cap: u128 },
    #[error("search needs {} candidates, more than the budget of {budget}", .candidates.map_or("too many".to_string(), |c| c.to_string()))]
    BudgetExceeded { candidates: Option<u128>, budget: u128 },
    #[error("minimum distance needs at least two codewords")]
    TooFewWords,
    #[error(transparent)]
    Skew(#[from] SkewError),
    #[error(transparent)]
    Dna(#[from] DnaError),
}

/// Which reversibility theorem, if any, the generator satisfies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SymmetryClass {
    ThetaPalindromicOdd,
    PalindromicEven,
    None,
}

impl fmt::Display for SymmetryClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::ThetaPalindromicOdd => "theta-palindromic-odd-degree",
            Self::PalindromicEven => "palindromic-even-degree",
            Self::None => "none",
        })
    }
}

/// A word of length `n`, optionally tagged with the message that encodes it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Codeword {
    pub word: Vec<RingElement>,
    pub message: Option<Vec<RingElement>>,
}

impl Codeword {
    pub fn from_word(word: Vec<RingElement>) -> Self {
        Self { word, message: None }
    }
}

/// `C = (g(x))`, validated.
#[derive(Debug, Clone)]
pub struct SkewCyclicCode {
    ring: Arc<RingContext>,
    n: usize,
    g: SkewPoly,
    g_theta: Vec<RingElement>,
    symmetry: SymmetryClass,
}

impl SkewCyclicCode {
    /// Validates `n` even, `g` monic with `1 <= deg g < n`, and `g` a right
    /// divisor of `x^n - 1`, then classifies the symmetry of `g`.
    pub fn new(ring: Arc<RingContext>, g: SkewPoly, n: usize) -> Result<Self, CodeError> {
        if !n.is_multiple_of(2) {
            return Err(CodeError::OddLength(n));
        }
        let p = SkewPolyRing::new(&ring);
        p.check_monic(&g)?;
        let degree = g.degree().unwrap_or(0);
        if degree == 0 || degree >= n {
            return Err(CodeError::DegreeOutOfRange { degree, n });
        }
        if !p.right_divides_xn_minus_1(&g, n)? {
            return Err(CodeError::NotRightDivisor(n));
        }
        let symmetry = classify(&p, &g)?;
        let g_theta = g.coeffs().iter().map(|c| ring.theta(c)).collect();
        Ok(Self { ring, n, g, g_theta, symmetry })
    }

    pub fn ring(&self) -> &RingContext {
        &self.ring
    }

    pub fn ring_arc(&self) -> &Arc<RingContext> {
        &self.ring
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generator(&self) -> &SkewPoly {
        &self.g
    }

    /// Message dimension `t = n - deg g`.
    pub fn t(&self) -> usize {
        self.n - self.g.degree().expect("generator is nonzero")
    }

    pub fn symmetry(&self) -> SymmetryClass {
        self.symmetry
    }

    /// `|C| = |R|^t = 4^e`; returns `e`.
    pub fn cardinality_log4(&self) -> u64 {
        self.t() as u64 * self.ring.cardinality_log4()
    }

    /// `|C|` when it fits in a `u128`.
    pub fn size(&self) -> Option<u128> {
        let bits = 2 * self.cardinality_log4();
        (bits < 128).then(|| 1u128 << bits)
    }

    /// `c(x) = sum_i beta_i x^i g(x)`.
    pub fn encode(&self, msg: &[RingElement]) -> Result<Codeword, CodeError> {
        if msg.len() != self.t() {
            return Err(CodeError::MessageLength { expected: self.t(), got: msg.len() });
        }
        let r = &*self.ring;
        let mut word = vec![r.zero(); self.n];
        for (i, beta) in msg.iter().enumerate() {
            if beta.is_zero() {
                continue;
            }
            let src = if i % 2 == 0 { self.g.coeffs() } else { &self.g_theta[..] };
            for (j, gj) in src.iter().enumerate() {
                r.add_assign(&mut word[i + j], &r.mul(beta, gj));
            }
        }
        Ok(Codeword { word, message: Some(msg.to_vec()) })
    }

    /// The word `c'` built from `theta(beta_i)` placed at `x^{t-1-i}`.
    pub fn reverse_codeword(&self, msg: &[RingElement]) -> Result<Codeword, CodeError> {
        if msg.len() != self.t() {
            return Err(CodeError::MessageLength { expected: self.t(), got: msg.len() });
        }
        let flipped: Vec<RingElement> = msg.iter().rev().map(|b| self.ring.theta(b)).collect();
        self.encode(&flipped)
    }

    /// Membership by right remainder modulo `g`.
    pub fn contains(&self, word: &[RingElement]) -> Result<bool, CodeError> {
        if word.len() != self.n {
            return Err(CodeError::WordLength { expected: self.n, got: word.len() });
        }
        let p = SkewPolyRing::new(&self.ring);
        let f = p.poly(word.to_vec())?;
        Ok(p.right_rem(&f, &self.g)?.is_zero())
    }

    /// `(theta(c_{n-1}), theta(c_0), ..., theta(c_{n-2}))`, i.e. `x c(x)`
    /// modulo `x^n - 1`.
    pub fn skew_shift(&self, word: &[RingElement]) -> Vec<RingElement> {
        skew_shift(&self.ring, word)
    }

    /// Message number `index` in mixed-radix order.
    pub fn message_at(&self, mut index: u128) -> Vec<RingElement> {
        let radix = self.ring.size();
        (0..self.t())
            .map(|_| match radix {
                Some(q) => {
                    let d = index % q;
                    index /= q;
                    self.ring.element_at(d)
                }
                None => {
                    let d = index;
                    index = 0;
                    self.ring.element_at(d)
                }
            })
            .collect()
    }

    /// Every codeword, each once, in message-index order. Fails if `|C|`
    /// exceeds `cap`.
    pub fn codewords(&self, cap: u128) -> Result<impl Iterator<Item = Codeword> + '_, CodeError> {
        let size = self.size();
        match size {
            Some(sz) if sz <= cap => Ok(self.codewords_in(0..sz)),
            _ => Err(CodeError::CapExceeded { size, cap }),
        }
    }

    /// Codewords for a range of message indices.
    pub fn codewords_in(&self, range: std::ops::Range<u128>) -> impl Iterator<Item = Codeword> + '_ {
        range.map(move |i| self.encode(&self.message_at(i)).expect("message has length t"))
    }

    /// `count` codewords of uniformly random messages from a seeded ChaCha8 stream.
    pub fn sample(&self, count: usize, seed: u64) -> impl Iterator<Item = Codeword> + '_ {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..count).map(move |_| {
            let msg: Vec<RingElement> = (0..self.t()).map(|_| self.ring.random(&mut rng)).collect();
            self.encode(&msg).expect("message has length t")
        })
    }
}

fn classify(p: &SkewPolyRing<'_>, g: &SkewPoly) -> Result<SymmetryClass, SkewError> {
    let odd = g.degree().unwrap_or(0) % 2 == 1;
    Ok(if odd && p.is_theta_palindromic(g)? {
        SymmetryClass::ThetaPalindromicOdd
    } else if !odd && p.is_palindromic(g)? {
        SymmetryClass::PalindromicEven
    } else {
        SymmetryClass::None
    })
}

/// The skew cyclic shift `sigma`.
pub fn skew_shift(ring: &RingContext, word: &[RingElement]) -> Vec<RingElement> {
    let n = word.len();
    (0..n).map(|i| ring.theta(&word[(i + n - 1) % n])).collect()
}

// ---------------------------------------------------------------------------
// Reversibility

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerifyMode {
    /// Enumerate all of `C` (up to `cap` words) and test that its DNA image
    /// is closed under string reversal.
    Exhaustive { cap: u128 },
    /// For `trials` random messages, test that `c'` is in `C` and that
    /// `dna(c') = reverse(dna(c))`.
    Sampled { trials: usize, seed: u64 },
}

impl fmt::Display for VerifyMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Exhaustive { .. } => f.write_str("exhaustive"),
            Self::Sampled { seed, .. } => write!(f, "sampled(seed={seed})"),
        }
    }
}

/// A codeword whose DNA reverse was not found.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub message: Vec<RingElement>,
    pub dna: DnaString,
    /// Sampled mode: the DNA of `c'`; exhaustive mode: the missing reverse.
    pub other: DnaString,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReversibilityReport {
    pub mode: VerifyMode,
    pub checked: u64,
    pub passed: bool,
    pub counterexample: Option<Counterexample>,
}

pub fn verify_reversible(
    code: &SkewCyclicCode,
    book: &DnaCodebook,
    mode: VerifyMode,
) -> Result<ReversibilityReport, CodeError> {
    let ring = code.ring();
    match mode {
        VerifyMode::Exhaustive { cap } => {
            let mut words: Vec<(u128, DnaString)> = Vec::new();
            for (i, cw) in code.codewords(cap)?.enumerate() {
                words.push((i as u128, book.encode_word(ring, &cw.word)?));
            }
            let set: HashSet<&DnaString> = words.iter().map(|(_, d)| d).collect();
            let missing = words.iter().find(|(_, d)| !set.contains(&d.reverse()));
            let counterexample = missing.map(|(i, d)| Counterexample {
                message: code.message_at(*i),
                dna: d.clone(),
                other: d.reverse(),
                reason: "reverse of this codeword's DNA is not in the code".into(),
            });
            Ok(ReversibilityReport {
                mode,
                checked: words.len() as u64,
                passed: counterexample.is_none(),
                counterexample,
            })
        }
        VerifyMode::Sampled { trials, seed } => {
            let mut checked = 0;
            let mut counterexample = None;
            for cw in code.sample(trials, seed) {
                checked += 1;
                let msg = cw.message.clone().expect("sampled words carry messages");
                let rev = code.reverse_codeword(&msg)?;
                let d = book.encode_word(ring, &cw.word)?;
                let dr = book.encode_word(ring, &rev.word)?;
                let reason = if !code.contains(&rev.word)? {
                    Some("reverse codeword is not in the code")
                } else if dr != d.reverse() {
                    Some("DNA of the reverse codeword is not the reversed DNA")
                } else {
                    None
                };
                if let Some(reason) = reason {
                    counterexample = Some(Counterexample { message: msg, dna: d, other: dr, reason: reason.into() });
                    break;
                }
            }
            Ok(ReversibilityReport { mode, checked, passed: counterexample.is_none(), counterexample })
        }
    }
}

// ---------------------------------------------------------------------------
// Divisor search

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Symmetry {
    Palindromic,
    ThetaPalindromic,
    Any,
}

impl FromStr for Symmetry {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "palindromic" => Ok(Self::Palindromic),
            "theta-palindromic" => Ok(Self::ThetaPalindromic),
            "any" => Ok(Self::Any),
            _ => Err(format!("unknown symmetry `{s}` (expected palindromic, theta-palindromic or any)")),
        }
    }
}

impl fmt::Display for Symmetry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Palindromic => "palindromic",
            Self::ThetaPalindromic => "theta-palindromic",
            Self::Any => "any",
        })
    }
}

/// Every ring element in [`RingContext::element_at`] order, if there are at
/// most `limit` of them.
pub fn all_ring_elements(ring: &RingContext, limit: u128) -> Option<Vec<RingElement>> {
    let size = ring.size().filter(|&s| s <= limit)?;
    Some((0..size).map(|i| ring.element_at(i)).collect())
}

/// The field constants `0, 1, b, ..., b^{order-1}` as ring elements.
pub fn field_constants(ring: &RingContext) -> Vec<RingElement> {
    ring.field().elements().map(|c| ring.constant(c)).collect()
}

/// Monic right divisors of `x^n - 1` of the given degree and symmetry whose
/// free coefficients come from `coeff_set`.
///
/// Monicity fixes the leading coefficient, and both symmetries then fix the
/// constant term to 1 and tie `a_{d-i}` to `a_i` (or `theta(a_i)`), leaving
/// `a_1, ..., a_{d/2}` free; `Any` leaves `a_0, ..., a_{d-1}` free.
/// Candidates run in lexicographic order of the free slots, lowest degree
/// most significant, `coeff_set` in its given order.
pub fn search_divisors(
    ring: &RingContext,
    n: usize,
    degree: usize,
    symmetry: Symmetry,
    coeff_set: &[RingElement],
    budget: u128,
) -> Result<Vec<SkewPoly>, CodeError> {
    if !n.is_multiple_of(2) {
        return Err(CodeError::OddLength(n));
    }
    if degree == 0 || degree >= n {
        return Err(CodeError::DegreeOutOfRange { degree, n });
    }
    let free: Vec<usize> = match symmetry {
        Symmetry::Any => (0..degree).collect(),
        Symmetry::Palindromic | Symmetry::ThetaPalindromic => (1..=degree / 2).collect(),
    };
    let base = coeff_set.len() as u128;
    let candidates = (0..free.len()).try_fold(1u128, |acc, _| acc.checked_mul(base));
    match candidates {
        Some(c) if c <= budget => {}
        _ => return Err(CodeError::BudgetExceeded { candidates, budget }),
    }
    let p = SkewPolyRing::new(ring);
    let target = p.x_n_minus_1(n);
    let mut found = Vec::new();
    let mut digits = vec![0usize; free.len()];
    if free.is_empty() || !coeff_set.is_empty() {
        loop {
            let mut coeffs = vec![ring.zero(); degree + 1];
            coeffs[degree] = ring.one();
            if symmetry != Symmetry::Any {
                coeffs[0] = ring.one();
            }
            let mut admissible = true;
            for (&slot, &d) in free.iter().zip(&digits) {
                let a = &coeff_set[d];
                coeffs[slot] = a.clone();
                match symmetry {
                    Symmetry::Any => {}
                    Symmetry::Palindromic => coeffs[degree - slot] = a.clone(),
                    Symmetry::ThetaPalindromic => {
                        let ta = ring.theta(a);
                        if slot == degree - slot && ta != *a {
                            admissible = false;
                        }
                        coeffs[degree - slot] = ta;
                    }
                }
            }
            if admissible {
                let g = SkewPoly::from_vec(coeffs);
                if p.right_rem(&target, &g)?.is_zero() {
                    found.push(g);
                }
            }
            // odometer: last slot varies fastest
            let mut pos = digits.len();
            loop {
                if pos == 0 {
                    return Ok(found);
                }
                pos -= 1;
                digits[pos] += 1;
                if digits[pos] < coeff_set.len() {
                    break;
                }
                digits[pos] = 0;
            }
        }
    }
    Ok(found)
}

// ---------------------------------------------------------------------------
// Distance

/// Minimum Hamming distance over all pairs of distinct strings.
pub fn min_pairwise_distance(words: &[DnaString]) -> Result<usize, CodeError> {
    let distinct: Vec<&DnaString> = {
        let mut seen = HashSet::new();
        words.iter().filter(|w| seen.insert(*w)).collect()
    };
    if distinct.len() < 2 {
        return Err(CodeError::TooFewWords);
    }
    let mut best = usize::MAX;
    for (i, a) in distinct.iter().enumerate() {
        for b in &distinct[i + 1..] {
            let d = a.hamming(b).expect("codewords share a length");
            best = best.min(d);
        }
    }
    Ok(best)
}

/// Minimum pairwise DNA Hamming distance of the whole code, by enumeration.
pub fn dna_min_distance(code: &SkewCyclicCode, book: &DnaCodebook, cap: u128) -> Result<usize, CodeError> {
    let words =
        code.codewords(cap)?.map(|cw| book.encode_word(code.ring(), &cw.word)).collect::<Result<Vec<_>, _>>()?;
    min_pairwise_distance(&words)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dna::CodebookSource;
    use crate::gf::FieldContext;

    fn ring11() -> Arc<RingContext> {
        Arc::new(RingContext::new(Arc::new(FieldContext::new(1).unwrap()), 1).unwrap())
    }

    fn poly(r: &RingContext, coeffs: Vec<RingElement>) -> SkewPoly {
        SkewPolyRing::new(r).poly(coeffs).unwrap()
    }

    fn x_plus_1_code() -> SkewCyclicCode {
        let r = ring11();
        let g = poly(&r, vec![r.one(), r.one()]);
        SkewCyclicCode::new(r, g, 2).unwrap()
    }

    fn pal_code() -> SkewCyclicCode {
        let r = ring11();
        let g = poly(&r, vec![r.one(), r.variable(1).unwrap(), r.one()]);
        SkewCyclicCode::new(r, g, 4).unwrap()
    }

    #[test]
    fn build_examples() {
        let c = pal_code();
        assert_eq!(c.t(), 2);
        assert_eq!(c.symmetry(), SymmetryClass::PalindromicEven);
        assert_eq!(c.size(), Some(65536));

        let r = ring11();
        let b = r.constant(r.field().generator());
        let g = poly(&r, vec![b, r.one()]);
        assert_eq!(SkewCyclicCode::new(r.clone(), g, 2).unwrap_err(), CodeError::NotRightDivisor(2));
        let g = poly(&r, vec![r.one(), r.one()]);
        assert_eq!(SkewCyclicCode::new(r.clone(), g.clone(), 3).unwrap_err(), CodeError::OddLength(3));
        let g3 = poly(&r, vec![r.one(), r.constant(r.field().exp(2))]);
        assert!(matches!(
            SkewCyclicCode::new(r.clone(), g3, 2),
            Err(CodeError::Skew(SkewError::NotMonic { unit: true }))
        ));
        assert_eq!(x_plus_1_code().symmetry(), SymmetryClass::ThetaPalindromicOdd);
    }

    #[test]
    fn encode_examples() {
        let c = x_plus_1_code();
        let r = c.ring();
        let beta = r.constant(r.field().exp(6));
        assert_eq!(c.encode(std::slice::from_ref(&beta)).unwrap().word, vec![beta.clone(), beta]);
        assert!(c.encode(&[r.zero()]).unwrap().word.iter().all(|e| e.is_zero()));
        let pc = pal_code();
        let e0 = pc.encode(&[pc.ring().one(), pc.ring().zero()]).unwrap();
        let mut g = pc.generator().coeffs().to_vec();
        g.resize(4, pc.ring().zero());
        assert_eq!(e0.word, g);
        assert!(matches!(c.encode(&[]), Err(CodeError::MessageLength { expected: 1, got: 0 })));
    }

    #[test]
    fn contains_examples() {
        let c = x_plus_1_code();
        let r = c.ring();
        let b = r.constant(r.field().generator());
        assert!(!c.contains(&[r.one(), b]).unwrap());
        assert!(c.contains(&[r.one(), r.one()]).unwrap());
        assert!(matches!(c.contains(&[r.one()]), Err(CodeError::WordLength { .. })));
    }

    #[test]
    fn shift_examples() {
        let c = pal_code();
        let r = c.ring();
        let w: Vec<RingElement> = (0..4).map(|i| r.element_at(17 * i + 3)).collect();
        let mut s = w.clone();
        for _ in 0..4 {
            s = c.skew_shift(&s);
        }
        assert_eq!(s, w);
        let two = vec![r.element_at(5), r.element_at(77)];
        assert_eq!(skew_shift(r, &two), vec![r.theta(&two[1]), r.theta(&two[0])]);
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(x_plus_1_code().codewords(1 << 20).unwrap().count(), 256);
        let pc = pal_code();
        assert!(matches!(pc.codewords(10), Err(CodeError::CapExceeded { size: Some(65536), cap: 10 })));
    }

    #[test]
    fn reverse_codeword_involution() {
        let c = pal_code();
        for cw in c.sample(50, 7) {
            let msg = cw.message.unwrap();
            let once = c.reverse_codeword(&msg).unwrap();
            let twice = c.reverse_codeword(once.message.as_ref().unwrap()).unwrap();
            assert_eq!(twice.word, cw.word);
        }
        let zero = vec![c.ring().zero(); 2];
        assert!(c.reverse_codeword(&zero).unwrap().word.iter().all(|e| e.is_zero()));
    }

    #[test]
    fn x_plus_1_code_is_reversible() {
        let c = x_plus_1_code();
        let book = DnaCodebook::build(c.ring().field(), CodebookSource::EmbeddedReference).unwrap();
        let rep = verify_reversible(&c, &book, VerifyMode::Exhaustive { cap: 1 << 20 }).unwrap();
        assert!(rep.passed);
        assert_eq!(rep.checked, 256);
    }

    #[test]
    fn search_examples() {
        let r = ring11();
        let all = all_ring_elements(&r, 1 << 20).unwrap();
        let found = search_divisors(&r, 4, 2, Symmetry::Palindromic, &all, 1 << 20).unwrap();
        assert_eq!(found.len(), 31);
        let consts = field_constants(&r);
        let found = search_divisors(&r, 2, 1, Symmetry::ThetaPalindromic, &consts, 100).unwrap();
        assert_eq!(found, vec![poly(&r, vec![r.one(), r.one()])]);
        assert!(search_divisors(&r, 4, 2, Symmetry::Palindromic, &[], 100).unwrap().is_empty());
        assert!(matches!(search_divisors(&r, 4, 3, Symmetry::Any, &all, 1000), Err(CodeError::BudgetExceeded { .. })));
        assert_eq!(search_divisors(&r, 5, 1, Symmetry::Any, &all, 1000).unwrap_err(), CodeError::OddLength(5));
    }

    #[test]
    fn min_distance_needs_two_words() {
        let w: DnaString = "ACGT".parse().unwrap();
        assert_eq!(min_pairwise_distance(std::slice::from_ref(&w)).unwrap_err(), CodeError::TooFewWords);
        assert_eq!(min_pairwise_distance(&[w.clone(), w.clone()]).unwrap_err(), CodeError::TooFewWords);
        let v: DnaString = "ACCA".parse().unwrap();
        assert_eq!(min_pairwise_distance(&[w, v]).unwrap(), 2);
    }
}
