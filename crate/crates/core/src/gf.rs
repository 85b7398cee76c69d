//! Arithmetic in the binary extension field GF(2^{4k}) = F_{4^{2k}}.
//!
//! Elements are packed bit vectors (bit `j` is the coefficient of `y^j`)
//! reduced modulo a primitive polynomial of degree `4k`. The residue class
//! of `y` is the primitive element, written `b` in text.
//!
//! For `k <= 2` the context precomputes exp/log tables and multiplies via
//! logarithms. For `k >= 3` multiplication is carry-less multiply then
//! reduce, and the log table is only built the first time a discrete log is
//! requested.

use std::fmt;
use std::sync::OnceLock;

use thiserror::Error;

/// Largest supported `k`; elements must fit in 16 bits.
pub const MAX_K: u32 = 4;

/// Field construction and element errors.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("k = {0} is outside the supported range 1..={MAX_K}")]
    UnsupportedK(u32),
    #[error("modulus {modulus:#x} has degree {got}, expected {expected}")]
    WrongDegree { modulus: u32, expected: u32, got: u32 },
    #[error("modulus {0:#x} is reducible over GF(2)")]
    Reducible(u32),
    #[error("modulus {0:#x} is irreducible but not primitive")]
    NotPrimitive(u32),
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("discrete logarithm of zero is undefined")]
    ZeroLog,
    #[error("{bits:#x} is not a reduced element of GF(2^{degree})")]
    NotReduced { bits: u32, degree: u32 },
    #[error("cannot parse `{0}` as a field element (expected 0, 1, b or b^<int>)")]
    ParseElement(String),
    #[error("cannot parse `{0}` as a binary polynomial")]
    ParsePoly(String),
}

/// An element of GF(2^{4k}) as a reduced bit vector.
///
/// Values carry no reference to their field; pairing an element with the
/// wrong [`FieldContext`] is a logic error that debug builds catch.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FieldElement(u16);

impl FieldElement {
    pub const ZERO: Self = Self(0);
    pub const ONE: Self = Self(1);

    #[inline]
    pub fn bits(self) -> u16 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Unchecked constructor for callers that guarantee reduction.
    #[inline]
    pub(crate) fn from_raw(bits: u16) -> Self {
        Self(bits)
    }
}

struct Tables {
    /// `exp[i] = b^i` for `i` in `0..2*order`, doubled so products index
    /// without a modulo.
    exp: Vec<u16>,
    /// `log[a]` for nonzero `a`; `log[0]` is unused.
    log: Vec<u32>,
}

impl Tables {
    fn build(degree: u32, modulus: u32) -> Self {
        let size = 1usize << degree;
        let order = size - 1;
        let mut exp = vec![0u16; 2 * order];
        let mut log = vec![0u32; size];
        let mut x: u32 = 1;
        for i in 0..order {
            exp[i] = x as u16;
            exp[i + order] = x as u16;
            log[x as usize] = i as u32;
            x <<= 1;
            if x & (1 << degree) != 0 {
                x ^= modulus;
            }
        }
        Self { exp, log }
    }
}

/// The field F_{4^{2k}} together with its modulus and lookup tables.
pub struct FieldContext {
    k: u32,
    degree: u32,
    modulus: u32,
    order: u32,
    tables: OnceLock<Tables>,
}

impl fmt::Debug for FieldContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldContext")
            .field("k", &self.k)
            .field("modulus", &format_bit_poly(self.modulus, 'y'))
            .finish()
    }
}

impl PartialEq for FieldContext {
    fn eq(&self, other: &Self) -> bool {
        self.k == other.k && self.modulus == other.modulus
    }
}

impl Eq for FieldContext {}

/// Built-in primitive modulus for each supported `k`.
pub fn default_modulus(k: u32) -> Result<u32, FieldError> {
    match k {
        1 => Ok(0x13),    // y^4 + y + 1
        2 => Ok(0x11d),   // y^8 + y^4 + y^3 + y^2 + 1
        3 => Ok(0x1053),  // y^12 + y^6 + y^4 + y + 1
        4 => Ok(0x1002d), // y^16 + y^5 + y^3 + y^2 + 1
        _ => Err(FieldError::UnsupportedK(k)),
    }
}

impl FieldContext {
    /// Builds GF(2^{4k}) with the default primitive modulus.
    pub fn new(k: u32) -> Result<Self, FieldError> {
        Self::with_modulus(k, default_modulus(k)?)
    }

    /// Builds GF(2^{4k}) with an explicit modulus, given as a bit mask
    /// including the leading term.
    pub fn with_modulus(k: u32, modulus: u32) -> Result<Self, FieldError> {
        if k == 0 || k > MAX_K {
            return Err(FieldError::UnsupportedK(k));
        }
        let degree = 4 * k;
        let got = bit_degree(modulus as u64).unwrap_or(0);
        if got != degree {
            return Err(FieldError::WrongDegree { modulus, expected: degree, got });
        }
        if !is_irreducible(modulus as u64) {
            return Err(FieldError::Reducible(modulus));
        }
        if !is_primitive(modulus as u64) {
            return Err(FieldError::NotPrimitive(modulus));
        }
        let ctx = Self { k, degree, modulus, order: (1u32 << degree) - 1, tables: OnceLock::new() };
        if k <= 2 {
            ctx.tables();
        }
        Ok(ctx)
    }

    fn tables(&self) -> &Tables {
        self.tables.get_or_init(|| Tables::build(self.degree, self.modulus))
    }

    #[inline]
    fn has_tables(&self) -> bool {
        self.k <= 2
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// Extension degree over GF(2), i.e. `4k`.
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    /// Number of field elements, `2^{4k}`.
    pub fn size(&self) -> usize {
        1usize << self.degree
    }

    /// Multiplicative group order, `2^{4k} - 1`.
    pub fn order(&self) -> u32 {
        self.order
    }

    /// Checked conversion from raw bits.
    pub fn element(&self, bits: u32) -> Result<FieldElement, FieldError> {
        if bits >> self.degree != 0 {
            return Err(FieldError::NotReduced { bits, degree: self.degree });
        }
        Ok(FieldElement(bits as u16))
    }

    /// The primitive element `b` (residue class of `y`).
    pub fn generator(&self) -> FieldElement {
        FieldElement(2)
    }

    #[inline]
    fn check(&self, a: FieldElement) {
        debug_assert!((a.0 as u32) >> self.degree == 0, "element {:#x} does not belong to GF(2^{})", a.0, self.degree);
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.check(a);
        self.check(b);
        FieldElement(a.0 ^ b.0)
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.check(a);
        self.check(b);
        if a.0 == 0 || b.0 == 0 {
            return FieldElement::ZERO;
        }
        if self.has_tables() {
            let t = self.tables();
            let i = t.log[a.0 as usize] + t.log[b.0 as usize];
            FieldElement(t.exp[i as usize])
        } else {
            FieldElement(mul_mod(a.0 as u64, b.0 as u64, self.modulus as u64) as u16)
        }
    }

    #[inline]
    pub fn square(&self, a: FieldElement) -> FieldElement {
        self.mul(a, a)
    }

    pub fn pow(&self, a: FieldElement, mut e: u64) -> FieldElement {
        let mut base = a;
        let mut acc = FieldElement::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.square(base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement, FieldError> {
        if a.is_zero() {
            return Err(FieldError::ZeroInverse);
        }
        let l = self.log(a)?;
        Ok(self.exp(-(l as i64)))
    }

    /// `b^i`, with `i` reduced modulo the group order (negative `i` allowed).
    pub fn exp(&self, i: i64) -> FieldElement {
        let e = i.rem_euclid(self.order as i64) as u32;
        if self.has_tables() {
            FieldElement(self.tables().exp[e as usize])
        } else {
            self.pow(self.generator(), e as u64)
        }
    }

    /// Discrete logarithm to base `b`, in `0..order`.
    pub fn log(&self, a: FieldElement) -> Result<u32, FieldError> {
        self.check(a);
        if a.is_zero() {
            return Err(FieldError::ZeroLog);
        }
        Ok(self.tables().log[a.0 as usize])
    }

    /// The order-2 automorphism `a -> a^{4^k}`, computed as `2k` squarings.
    pub fn theta(&self, a: FieldElement) -> FieldElement {
        let mut x = a;
        for _ in 0..2 * self.k {
            x = self.square(x);
        }
        x
    }

    /// Every field element in discrete-log order with zero first:
    /// `0, 1, b, b^2, ..., b^{order-1}`.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        std::iter::once(FieldElement::ZERO).chain((0..self.order).map(|i| self.exp(i as i64)))
    }

    /// Position of `a` in [`elements`](Self::elements) order.
    pub fn index_of(&self, a: FieldElement) -> usize {
        match self.log(a) {
            Ok(l) => l as usize + 1,
            Err(_) => 0,
        }
    }

    /// Inverse of [`index_of`](Self::index_of).
    pub fn element_at(&self, index: usize) -> FieldElement {
        if index == 0 {
            FieldElement::ZERO
        } else {
            self.exp(index as i64 - 1)
        }
    }

    /// Renders `a` as `0`, `1`, `b` or `b^i`.
    pub fn format(&self, a: FieldElement) -> String {
        match self.log(a) {
            Err(_) => "0".to_string(),
            Ok(0) => "1".to_string(),
            Ok(1) => "b".to_string(),
            Ok(i) => format!("b^{i}"),
        }
    }

    /// Parses `0`, `1`, `b` or `b^<int>`; whitespace is ignored.
    pub fn parse(&self, text: &str) -> Result<FieldElement, FieldError> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let err = || FieldError::ParseElement(text.to_string());
        match s.as_str() {
            "0" => Ok(FieldElement::ZERO),
            "1" => Ok(FieldElement::ONE),
            "b" => Ok(self.generator()),
            _ => {
                let e = s.strip_prefix("b^").ok_or_else(err)?;
                let i: u64 = e.parse().map_err(|_| err())?;
                Ok(self.exp((i % self.order as u64) as i64))
            }
        }
    }
}

/// Every primitive polynomial of degree `4k`, ascending as integers.
pub fn primitive_moduli(k: u32) -> Result<Vec<u32>, FieldError> {
    if k == 0 || k > MAX_K {
        return Err(FieldError::UnsupportedK(k));
    }
    let d = 4 * k;
    Ok(((1u32 << d) + 1..(1u32 << (d + 1)))
        .step_by(2)
        .filter(|&m| is_irreducible(m as u64) && is_primitive(m as u64))
        .collect())
}

// ---------------------------------------------------------------------------
// GF(2)[y] helpers on u64 bit masks.

fn bit_degree(p: u64) -> Option<u32> {
    (p != 0).then(|| 63 - p.leading_zeros())
}

fn clmul(a: u64, b: u64) -> u64 {
    let mut r = 0;
    let mut b = b;
    let mut i = 0;
    while b != 0 {
        if b & 1 == 1 {
            r ^= a << i;
        }
        b >>= 1;
        i += 1;
    }
    r
}

fn poly_rem(mut a: u64, m: u64) -> u64 {
    let dm = bit_degree(m).expect("zero modulus");
    while let Some(da) = bit_degree(a) {
        if da < dm {
            break;
        }
        a ^= m << (da - dm);
    }
    a
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    poly_rem(clmul(a, b), m)
}

fn pow_mod(base: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1;
    let mut b = poly_rem(base, m);
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    acc
}

/// Trial division by every polynomial of degree `1..=deg/2`.
pub fn is_irreducible(p: u64) -> bool {
    let Some(d) = bit_degree(p) else {
        return false;
    };
    if d == 0 {
        return false;
    }
    for dq in 1..=d / 2 {
        for q in (1u64 << dq)..(1u64 << (dq + 1)) {
            if poly_rem(p, q) == 0 {
                return false;
            }
        }
    }
    true
}

/// True iff `y` has multiplicative order exactly `2^deg - 1` modulo `p`.
/// Callers check irreducibility separately.
pub fn is_primitive(p: u64) -> bool {
    let Some(d) = bit_degree(p) else {
        return false;
    };
    if d == 0 {
        return false;
    }
    let n = (1u64 << d) - 1;
    if pow_mod(2, n, p) != 1 {
        return false;
    }
    prime_factors(n).into_iter().all(|q| pow_mod(2, n / q, p) != 1)
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut q = 2;
    while q * q <= n {
        if n.is_multiple_of(q) {
            out.push(q);
            while n.is_multiple_of(q) {
                n /= q;
            }
        }
        q += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Renders a bit polynomial in `var`, highest degree first (`y^4 + y + 1`).
pub fn format_bit_poly(p: u32, var: char) -> String {
    if p == 0 {
        return "0".into();
    }
    let terms: Vec<String> = (0..32)
        .rev()
        .filter(|i| p >> i & 1 == 1)
        .map(|i| match i {
            0 => "1".to_string(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        })
        .collect();
    terms.join(" + ")
}

/// Parses `y^4 + y + 1`, a hex mask `0x13`, or a binary mask `0b10011`.
pub fn parse_bit_poly(text: &str) -> Result<u32, FieldError> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let err = || FieldError::ParsePoly(text.to_string());
    if let Some(h) = s.strip_prefix("0x") {
        return u32::from_str_radix(h, 16).map_err(|_| err());
    }
    if let Some(b) = s.strip_prefix("0b") {
        return u32::from_str_radix(b, 2).map_err(|_| err());
    }
    if s.is_empty() {
        return Err(err());
    }
    let mut p = 0u32;
    for term in s.split('+') {
        let e = match term {
            "1" => 0,
            t if t.len() == 1 && t.chars().all(|c| c.is_ascii_alphabetic()) => 1,
            t => {
                let mut it = t.splitn(2, '^');
                let var = it.next().unwrap_or("");
                if var.len() != 1 || !var.chars().all(|c| c.is_ascii_alphabetic()) {
                    return Err(err());
                }
                it.next().ok_or_else(err)?.parse::<u32>().map_err(|_| err())?
            }
        };
        if e >= 32 || p >> e & 1 == 1 {
            return Err(err());
        }
        p |= 1 << e;
    }
    Ok(p)
}
