//! The ring R_{k,s} = F_{4^{2k}}[u_1, ..., u_s] / <u_i^2 - u_i>.
//!
//! Elements are stored in CRT coordinates: `alpha = sum_i alpha_i I_i` over
//! the orthogonal idempotents `I_i`, so addition, multiplication and the
//! automorphism are all componentwise (up to a coordinate reversal for
//! theta). The monomial basis `U_0, ..., U_{2^s-1}` only appears at the
//! conversion boundary ([`RingContext::from_monomial`] /
//! [`RingContext::to_monomial`]).
//!
//! Monomials are ordered in blocks of increasing degree; inside a block
//! exponent tuples are in descending lexicographic order, so for `s = 3`
//! the table is `1, u1, u2, u3, u1u2, u1u3, u2u3, u1u2u3`. The tuple `T_i`
//! of monomial `U_i` also indexes the idempotent
//! `I_i = prod_e theta^{r_e}(u_e)`, where `theta(u_e) = u_e + 1`.

use std::sync::Arc;

use rand::Rng;
use thiserror::Error;

use crate::gf::{FieldContext, FieldElement};

/// Largest supported number of variables.
pub const MAX_S: u32 = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("s = {0} is outside the supported range 1..={MAX_S}")]
    UnsupportedS(u32),
    #[error("index {index} out of range for {len} idempotents")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("expected {expected} coordinates, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("variable u{index} is undefined when s = {s}")]
    UndefinedVariable { index: usize, s: u32 },
    #[error("component {index} = {bits:#x} is not a reduced field element")]
    NotReduced { index: usize, bits: u16 },
}

/// A ring element as its `2^s` CRT coordinates `(alpha_0, ..., alpha_{2^s-1})`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RingElement(Vec<FieldElement>);

impl RingElement {
    pub fn components(&self) -> &[FieldElement] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }

    pub fn into_components(self) -> Vec<FieldElement> {
        self.0
    }
}

/// Tables and transforms for one `(field, s)` pair.
pub struct RingContext {
    field: Arc<FieldContext>,
    s: u32,
    /// `tuples[i]` has bit `e` set iff `r_{e+1} = 1` in `T_i`.
    tuples: Vec<u32>,
    /// `alpha_i = sum_{j in forward[i]} b_j`, i.e. `T_i . T_j = 0`.
    forward: Vec<Vec<u16>>,
    /// `b_i = sum_{j in inverse[i]} alpha_j`, i.e. `T_i | T_j = (1, ..., 1)`.
    inverse: Vec<Vec<u16>>,
}

impl std::fmt::Debug for RingContext {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("RingContext").field("field", &self.field).field("s", &self.s).finish()
    }
}

impl PartialEq for RingContext {
    fn eq(&self, other: &Self) -> bool {
        self.s == other.s && self.field == other.field
    }
}

impl Eq for RingContext {}

/// Monomial exponent masks ordered by degree, each degree block in
/// descending lexicographic order of `(r_1, ..., r_s)`.
fn ordered_tuples(s: u32) -> Vec<u32> {
    // lex key puts r_1 in the most significant position
    let lex_key = |mask: u32| (0..s).fold(0u32, |acc, e| acc | ((mask >> e) & 1) << (s - 1 - e));
    let mut all: Vec<u32> = (0..1u32 << s).collect();
    all.sort_by(|&a, &b| a.count_ones().cmp(&b.count_ones()).then_with(|| lex_key(b).cmp(&lex_key(a))));
    all
}

impl RingContext {
    pub fn new(field: Arc<FieldContext>, s: u32) -> Result<Self, RingError> {
        if s == 0 || s > MAX_S {
            return Err(RingError::UnsupportedS(s));
        }
        let tuples = ordered_tuples(s);
        let full = (1u32 << s) - 1;
        let rows = |pred: &dyn Fn(u32, u32) -> bool| -> Vec<Vec<u16>> {
            tuples
                .iter()
                .map(|&ti| tuples.iter().enumerate().filter(|&(_, &tj)| pred(ti, tj)).map(|(j, _)| j as u16).collect())
                .collect()
        };
        let forward = rows(&|ti, tj| ti & tj == 0);
        let inverse = rows(&|ti, tj| ti | tj == full);
        Ok(Self { field, s, tuples, forward, inverse })
    }

    pub fn field(&self) -> &FieldContext {
        &self.field
    }

    pub fn field_arc(&self) -> &Arc<FieldContext> {
        &self.field
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    /// Number of CRT coordinates, `2^s`.
    pub fn width(&self) -> usize {
        self.tuples.len()
    }

    /// `|R_{k,s}| = 4^e`; returns `e = 2^{s+1} k`.
    pub fn cardinality_log4(&self) -> u64 {
        (1u64 << (self.s + 1)) * self.field.k() as u64
    }

    /// `T_i` as a 0/1 vector `(r_1, ..., r_s)`.
    pub fn tuple(&self, i: usize) -> Vec<u8> {
        let m = self.tuples[i];
        (0..self.s).map(|e| (m >> e & 1) as u8).collect()
    }

    pub fn tuple_mask(&self, i: usize) -> u32 {
        self.tuples[i]
    }

    pub fn tuple_table(&self) -> Vec<Vec<u8>> {
        (0..self.width()).map(|i| self.tuple(i)).collect()
    }

    /// `U_i` in expression syntax: `1`, `u1`, `u1*u3`, ...
    pub fn monomial_name(&self, i: usize) -> String {
        let m = self.tuples[i];
        if m == 0 {
            return "1".into();
        }
        (0..self.s).filter(|e| m >> e & 1 == 1).map(|e| format!("u{}", e + 1)).collect::<Vec<_>>().join("*")
    }

    /// The CRT transform as a 0/1 matrix: `M[i][j] = 1` iff `T_i . T_j = 0`.
    pub fn crt_matrix(&self) -> Vec<Vec<u8>> {
        Self::dense(&self.forward, self.width())
    }

    /// Inverse of [`crt_matrix`](Self::crt_matrix) over GF(2).
    pub fn crt_inverse_matrix(&self) -> Vec<Vec<u8>> {
        Self::dense(&self.inverse, self.width())
    }

    fn dense(rows: &[Vec<u16>], n: usize) -> Vec<Vec<u8>> {
        rows.iter()
            .map(|r| {
                let mut row = vec![0u8; n];
                for &j in r {
                    row[j as usize] = 1;
                }
                row
            })
            .collect()
    }

    // -- construction -------------------------------------------------------

    pub fn zero(&self) -> RingElement {
        RingElement(vec![FieldElement::ZERO; self.width()])
    }

    pub fn one(&self) -> RingElement {
        self.constant(FieldElement::ONE)
    }

    /// The image of a field constant (every coordinate equal to `c`).
    pub fn constant(&self, c: FieldElement) -> RingElement {
        RingElement(vec![c; self.width()])
    }

    /// The variable `u_e` for `e` in `1..=s`. Its coordinate `i` is
    /// `1 - r_e` where `T_i = (r_1, ..., r_s)`.
    pub fn variable(&self, e: usize) -> Result<RingElement, RingError> {
        if e == 0 || e > self.s as usize {
            return Err(RingError::UndefinedVariable { index: e, s: self.s });
        }
        let bit = e - 1;
        Ok(RingElement(
            self.tuples
                .iter()
                .map(|&t| if t >> bit & 1 == 0 { FieldElement::ONE } else { FieldElement::ZERO })
                .collect(),
        ))
    }

    /// The idempotent `I_i`: the unit vector at coordinate `i`.
    pub fn idempotent(&self, i: usize) -> Result<RingElement, RingError> {
        if i >= self.width() {
            return Err(RingError::IndexOutOfRange { index: i, len: self.width() });
        }
        let mut v = self.zero();
        v.0[i] = FieldElement::ONE;
        Ok(v)
    }

    /// Product form of `I_i`, e.g. `(u_1+1)u_2u_3`.
    pub fn render_idempotent(&self, i: usize) -> Result<String, RingError> {
        if i >= self.width() {
            return Err(RingError::IndexOutOfRange { index: i, len: self.width() });
        }
        let t = self.tuples[i];
        Ok((0..self.s)
            .map(|e| if t >> e & 1 == 1 { format!("(u_{}+1)", e + 1) } else { format!("u_{}", e + 1) })
            .collect())
    }

    /// Validates arity and reduction of CRT coordinates.
    pub fn ungray(&self, coords: Vec<FieldElement>) -> Result<RingElement, RingError> {
        self.check_coords(&coords)?;
        Ok(RingElement(coords))
    }

    fn check_coords(&self, coords: &[FieldElement]) -> Result<(), RingError> {
        if coords.len() != self.width() {
            return Err(RingError::LengthMismatch { expected: self.width(), got: coords.len() });
        }
        let degree = self.field.degree();
        if let Some((index, c)) = coords.iter().enumerate().find(|(_, c)| (c.bits() as u32) >> degree != 0) {
            return Err(RingError::NotReduced { index, bits: c.bits() });
        }
        Ok(())
    }

    /// Checks that `a` has this context's arity and reduced coordinates.
    pub fn check(&self, a: &RingElement) -> Result<(), RingError> {
        self.check_coords(&a.0)
    }

    /// The Gray image `(alpha_0, ..., alpha_{2^s-1})`.
    pub fn gray(&self, a: &RingElement) -> Vec<FieldElement> {
        a.0.clone()
    }

    /// Monomial coefficients `b_j` (of `U_j`) to CRT coordinates:
    /// `alpha_i = sum of b_j over j with T_i . T_j = 0`.
    pub fn from_monomial(&self, b: &[FieldElement]) -> Result<RingElement, RingError> {
        self.check_coords(b)?;
        Ok(RingElement(self.apply(&self.forward, b)))
    }

    pub fn to_monomial(&self, a: &RingElement) -> Vec<FieldElement> {
        self.assert_arity(a);
        self.apply(&self.inverse, &a.0)
    }

    fn apply(&self, rows: &[Vec<u16>], v: &[FieldElement]) -> Vec<FieldElement> {
        rows.iter().map(|r| r.iter().fold(FieldElement::ZERO, |acc, &j| self.field.add(acc, v[j as usize]))).collect()
    }

    // -- arithmetic ---------------------------------------------------------

    #[inline]
    fn assert_arity(&self, a: &RingElement) {
        assert_eq!(a.0.len(), self.width(), "ring element from a different context");
    }

    pub fn add(&self, a: &RingElement, b: &RingElement) -> RingElement {
        self.assert_arity(a);
        self.assert_arity(b);
        RingElement(a.0.iter().zip(&b.0).map(|(&x, &y)| self.field.add(x, y)).collect())
    }

    pub fn add_assign(&self, a: &mut RingElement, b: &RingElement) {
        self.assert_arity(a);
        self.assert_arity(b);
        for (x, &y) in a.0.iter_mut().zip(&b.0) {
            *x = self.field.add(*x, y);
        }
    }

    pub fn mul(&self, a: &RingElement, b: &RingElement) -> RingElement {
        self.assert_arity(a);
        self.assert_arity(b);
        RingElement(a.0.iter().zip(&b.0).map(|(&x, &y)| self.field.mul(x, y)).collect())
    }

    /// Scales every coordinate by a field constant.
    pub fn scale(&self, c: FieldElement, a: &RingElement) -> RingElement {
        RingElement(a.0.iter().map(|&x| self.field.mul(c, x)).collect())
    }

    /// The automorphism theta (`a -> a^{4^k}` on constants, `u_i -> u_i + 1`):
    /// coordinate `i` of the result is `theta(alpha_{2^s-1-i})`.
    pub fn theta(&self, a: &RingElement) -> RingElement {
        self.assert_arity(a);
        RingElement(a.0.iter().rev().map(|&x| self.field.theta(x)).collect())
    }

    /// `theta^i` with the exponent reduced mod 2.
    pub fn theta_pow(&self, a: &RingElement, i: usize) -> RingElement {
        if i.is_multiple_of(2) {
            a.clone()
        } else {
            self.theta(a)
        }
    }

    pub fn is_unit(&self, a: &RingElement) -> bool {
        a.0.iter().all(|c| !c.is_zero())
    }

    pub fn is_one(&self, a: &RingElement) -> bool {
        a.0.iter().all(|&c| c == FieldElement::ONE)
    }

    // -- enumeration --------------------------------------------------------

    /// Number of ring elements if it fits in a `u128`.
    pub fn size(&self) -> Option<u128> {
        let bits = self.field.degree() as u64 * self.width() as u64;
        (bits < 128).then(|| 1u128 << bits)
    }

    /// Element number `index` in CRT-radix order: coordinate 0 is the least
    /// significant digit, each digit in [`FieldContext::elements`] order.
    pub fn element_at(&self, mut index: u128) -> RingElement {
        let q = self.field.size() as u128;
        RingElement(
            (0..self.width())
                .map(|_| {
                    let d = (index % q) as usize;
                    index /= q;
                    self.field.element_at(d)
                })
                .collect(),
        )
    }

    pub fn index_of(&self, a: &RingElement) -> u128 {
        let q = self.field.size() as u128;
        a.0.iter().rev().fold(0u128, |acc, &c| acc * q + self.field.index_of(c) as u128)
    }

    /// Uniformly random element.
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> RingElement {
        let size = self.field.size() as u32;
        RingElement((0..self.width()).map(|_| FieldElement::from_raw(rng.gen_range(0..size) as u16)).collect())
    }

    // -- text ---------------------------------------------------------------

    /// Monomial-basis rendering in expression syntax, e.g.
    /// `b^7 + b*u2 + b*u3`. Terms follow the monomial table order.
    pub fn format(&self, a: &RingElement) -> String {
        let b = self.to_monomial(a);
        let terms: Vec<String> = b
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, &c)| {
                if j == 0 {
                    self.field.format(c)
                } else if c == FieldElement::ONE {
                    self.monomial_name(j)
                } else {
                    format!("{}*{}", self.field.format(c), self.monomial_name(j))
                }
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }

    /// CRT literal rendering, `crt(a0, a1, ...)`.
    pub fn format_crt(&self, a: &RingElement) -> String {
        let parts: Vec<String> = a.0.iter().map(|&c| self.field.format(c)).collect();
        format!("crt({})", parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(k: u32, s: u32) -> RingContext {
        RingContext::new(Arc::new(FieldContext::new(k).unwrap()), s).unwrap()
    }

    #[test]
    fn tuple_table_s3() {
        let r = ring(1, 3);
        let expected: Vec<Vec<u8>> = vec![
            vec![0, 0, 0],
            vec![1, 0, 0],
            vec![0, 1, 0],
            vec![0, 0, 1],
            vec![1, 1, 0],
            vec![1, 0, 1],
            vec![0, 1, 1],
            vec![1, 1, 1],
        ];
        assert_eq!(r.tuple_table(), expected);
        let names: Vec<String> = (0..8).map(|i| r.monomial_name(i)).collect();
        assert_eq!(names, ["1", "u1", "u2", "u3", "u1*u2", "u1*u3", "u2*u3", "u1*u2*u3"]);
        assert_eq!(r.cardinality_log4(), 16);
    }

    #[test]
    fn tuple_table_s1() {
        assert_eq!(ring(1, 1).tuple_table(), vec![vec![0], vec![1]]);
    }

    #[test]
    fn complementary_tuples() {
        for s in 1..=MAX_S {
            let r = ring(1, s);
            let n = r.width();
            let full = (1u32 << s) - 1;
            for i in 0..n {
                assert_eq!(r.tuple_mask(i) ^ r.tuple_mask(n - 1 - i), full, "s={s} i={i}");
            }
        }
    }

    #[test]
    fn s_out_of_range() {
        let f = Arc::new(FieldContext::new(1).unwrap());
        assert_eq!(RingContext::new(f.clone(), 0).unwrap_err(), RingError::UnsupportedS(0));
        assert_eq!(RingContext::new(f, 9).unwrap_err(), RingError::UnsupportedS(9));
    }

    #[test]
    fn idempotent_rendering() {
        let r = ring(1, 3);
        assert_eq!(r.render_idempotent(1).unwrap(), "(u_1+1)u_2u_3");
        assert_eq!(r.render_idempotent(7).unwrap(), "(u_1+1)(u_2+1)(u_3+1)");
        assert_eq!(ring(1, 1).render_idempotent(0).unwrap(), "u_1");
        assert!(r.idempotent(8).is_err());
    }

    #[test]
    fn idempotent_product_form_matches_crt() {
        // I_i = prod theta^{r_e}(u_e), built by ring arithmetic
        let r = ring(1, 4);
        for i in 0..r.width() {
            let t = r.tuple(i);
            let mut p = r.one();
            for (e, &re) in t.iter().enumerate() {
                let u = r.variable(e + 1).unwrap();
                let f = if re == 1 { r.theta(&u) } else { u };
                p = r.mul(&p, &f);
            }
            assert_eq!(p, r.idempotent(i).unwrap());
        }
    }

    #[test]
    fn add_mul_examples() {
        let r = ring(1, 1);
        let i0 = r.idempotent(0).unwrap();
        let i1 = r.idempotent(1).unwrap();
        assert_eq!(r.add(&i0, &i1), r.one());
        let u = r.variable(1).unwrap();
        let u1 = r.add(&u, &r.one());
        assert_eq!(r.mul(&u, &u1), r.zero());
        assert_eq!(r.add(&u, &u), r.zero());
        assert_eq!(r.add(&u, &r.zero()), u);
    }

    #[test]
    fn theta_on_variable() {
        let r = ring(1, 1);
        let u = r.variable(1).unwrap();
        assert_eq!(r.theta(&u), r.add(&u, &r.one()));
    }

    #[test]
    fn monomial_s1() {
        let r = ring(1, 1);
        let f = r.field();
        let (b0, b1) = (f.exp(3), f.exp(9));
        let a = r.from_monomial(&[b0, b1]).unwrap();
        assert_eq!(a.components(), &[f.add(b0, b1), b0]);
        assert_eq!(r.to_monomial(&a), vec![b0, b1]);
        assert_eq!(r.to_monomial(&r.idempotent(0).unwrap()), vec![FieldElement::ZERO, FieldElement::ONE]);
    }

    #[test]
    fn monomial_identity_and_zero() {
        let r = ring(1, 3);
        let mut b = vec![FieldElement::ZERO; 8];
        assert_eq!(r.from_monomial(&b).unwrap(), r.zero());
        b[0] = FieldElement::ONE;
        assert_eq!(r.from_monomial(&b).unwrap(), r.one());
        assert!(matches!(r.from_monomial(&b[..3]), Err(RingError::LengthMismatch { expected: 8, got: 3 })));
    }

    #[test]
    fn crt_matrix_inverse() {
        for s in 1..=5 {
            let r = ring(1, s);
            let m = r.crt_matrix();
            let mi = r.crt_inverse_matrix();
            let n = r.width();
            for i in 0..n {
                for j in 0..n {
                    let v = (0..n).fold(0u8, |acc, l| acc ^ (m[i][l] & mi[l][j]));
                    assert_eq!(v, (i == j) as u8);
                }
            }
        }
    }

    #[test]
    fn unit_test_examples() {
        let r = ring(1, 1);
        assert!(r.is_unit(&r.one()));
        assert!(!r.is_unit(&r.variable(1).unwrap()));
        assert!(!r.is_unit(&r.zero()));
    }

    #[test]
    fn element_index_roundtrip() {
        let r = ring(1, 1);
        for i in [0u128, 1, 17, 255] {
            assert_eq!(r.index_of(&r.element_at(i)), i);
        }
        assert_eq!(r.element_at(0), r.zero());
        assert_eq!(r.size(), Some(256));
    }

    #[test]
    fn format_examples() {
        let r = ring(1, 3);
        let f = r.field();
        let a = r.add(
            &r.constant(f.exp(7)),
            &r.scale(f.generator(), &r.add(&r.variable(2).unwrap(), &r.variable(3).unwrap())),
        );
        assert_eq!(r.format(&a), "b^7 + b*u2 + b*u3");
        assert_eq!(r.format(&r.zero()), "0");
        assert_eq!(r.format_crt(&r.idempotent(0).unwrap()), "crt(1, 0, 0, 0, 0, 0, 0, 0)");
    }

    #[test]
    fn ungray_validates() {
        let r = ring(1, 1);
        assert!(r.ungray(vec![FieldElement::ONE]).is_err());
        let bad = vec![FieldElement::ONE, FieldElement::from_raw(0x10)];
        assert!(matches!(r.ungray(bad), Err(RingError::NotReduced { index: 1, .. })));
    }
}
