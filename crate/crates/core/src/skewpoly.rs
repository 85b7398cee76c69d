//! The skew polynomial ring R_{k,s}[x; theta], where `x a = theta(a) x`.
//!
//! A [`SkewPoly`] is a plain coefficient vector (index `i` multiplies
//! `x^i`, no trailing zeros). Arithmetic needs the coefficient ring, so it
//! lives on the borrowed view [`SkewPolyRing`].

use thiserror::Error;

use crate::ring::{RingContext, RingElement, RingError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SkewError {
    #[error("divisor must be monic (leading coefficient is {})", if *.unit { "a unit other than 1" } else { "not a unit" })]
    NotMonic { unit: bool },
    #[error("division by the zero polynomial")]
    ZeroDivisor,
    #[error("operation is undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("code length n = {0} must be even")]
    OddLength(usize),
    #[error("divisor degree {degree} must satisfy 1 <= deg < n = {n}")]
    DegreeOutOfRange { degree: usize, n: usize },
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// A polynomial `c_0 + c_1 x + ... + c_d x^d` over R_{k,s}.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SkewPoly {
    coeffs: Vec<RingElement>,
}

impl SkewPoly {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    /// Builds from low-to-high coefficients, dropping trailing zeros.
    /// Arity is not checked here; see [`SkewPolyRing::poly`].
    pub(crate) fn from_vec(mut coeffs: Vec<RingElement>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[RingElement] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Option<&RingElement> {
        self.coeffs.get(i)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&RingElement> {
        self.coeffs.last()
    }
}

/// Skew polynomial arithmetic over a borrowed [`RingContext`].
#[derive(Clone, Copy)]
pub struct SkewPolyRing<'a> {
    ring: &'a RingContext,
}

impl<'a> SkewPolyRing<'a> {
    pub fn new(ring: &'a RingContext) -> Self {
        Self { ring }
    }

    pub fn ring(&self) -> &'a RingContext {
        self.ring
    }

    /// Checked constructor from low-to-high coefficients.
    pub fn poly(&self, coeffs: Vec<RingElement>) -> Result<SkewPoly, SkewError> {
        for c in &coeffs {
            self.ring.check(c)?;
        }
        Ok(SkewPoly::from_vec(coeffs))
    }

    pub fn one(&self) -> SkewPoly {
        SkewPoly::from_vec(vec![self.ring.one()])
    }

    /// `c x^d`.
    pub fn monomial(&self, c: RingElement, d: usize) -> SkewPoly {
        let mut v = vec![self.ring.zero(); d];
        v.push(c);
        SkewPoly::from_vec(v)
    }

    /// `x^n - 1` (equal to `x^n + 1` in characteristic 2).
    pub fn x_n_minus_1(&self, n: usize) -> SkewPoly {
        let mut v = vec![self.ring.zero(); n + 1];
        v[0] = self.ring.one();
        v[n] = self.ring.one();
        SkewPoly::from_vec(v)
    }

    pub fn add(&self, f: &SkewPoly, g: &SkewPoly) -> SkewPoly {
        let (long, short) = if f.coeffs.len() >= g.coeffs.len() { (f, g) } else { (g, f) };
        let mut v = long.coeffs.clone();
        for (a, b) in v.iter_mut().zip(&short.coeffs) {
            self.ring.add_assign(a, b);
        }
        SkewPoly::from_vec(v)
    }

    /// Non-commutative product: `(a x^i)(b x^j) = a theta^i(b) x^{i+j}`.
    pub fn mul(&self, f: &SkewPoly, g: &SkewPoly) -> SkewPoly {
        if f.is_zero() || g.is_zero() {
            return SkewPoly::zero();
        }
        let r = self.ring;
        let g_theta: Vec<RingElement> = g.coeffs.iter().map(|c| r.theta(c)).collect();
        let mut out = vec![r.zero(); f.coeffs.len() + g.coeffs.len() - 1];
        for (i, a) in f.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let src = if i % 2 == 0 { &g.coeffs } else { &g_theta };
            for (j, b) in src.iter().enumerate() {
                r.add_assign(&mut out[i + j], &r.mul(a, b));
            }
        }
        SkewPoly::from_vec(out)
    }

    /// Left scalar multiple `c f`.
    pub fn scale_left(&self, c: &RingElement, f: &SkewPoly) -> SkewPoly {
        SkewPoly::from_vec(f.coeffs.iter().map(|a| self.ring.mul(c, a)).collect())
    }

    /// Coefficientwise theta.
    pub fn apply_theta(&self, f: &SkewPoly) -> SkewPoly {
        SkewPoly::from_vec(f.coeffs.iter().map(|c| self.ring.theta(c)).collect())
    }

    /// Ok when the leading coefficient is exactly 1.
    pub fn check_monic(&self, g: &SkewPoly) -> Result<(), SkewError> {
        let lead = g.leading().ok_or(SkewError::ZeroDivisor)?;
        if self.ring.is_one(lead) {
            Ok(())
        } else {
            Err(SkewError::NotMonic { unit: self.ring.is_unit(lead) })
        }
    }

    /// Right division by a monic `g`: returns `(q, r)` with `f = q g + r`
    /// and `deg r < deg g`.
    pub fn right_divmod(&self, f: &SkewPoly, g: &SkewPoly) -> Result<(SkewPoly, SkewPoly), SkewError> {
        self.check_monic(g)?;
        let dg = g.coeffs.len() - 1;
        if f.coeffs.len() <= dg {
            return Ok((SkewPoly::zero(), f.clone()));
        }
        let r = self.ring;
        let g_theta: Vec<RingElement> = g.coeffs.iter().map(|c| r.theta(c)).collect();
        let mut rem = f.coeffs.clone();
        let span = f.coeffs.len() - dg;
        let mut q = vec![r.zero(); span];
        for d in (0..span).rev() {
            let c = rem[d + dg].clone();
            if c.is_zero() {
                continue;
            }
            // (c x^d) g = sum_j c theta^d(g_j) x^{d+j}; the top term cancels c
            let src = if d % 2 == 0 { &g.coeffs } else { &g_theta };
            for (j, gj) in src.iter().enumerate() {
                r.add_assign(&mut rem[d + j], &r.mul(&c, gj));
            }
            q[d] = c;
        }
        rem.truncate(dg);
        Ok((SkewPoly::from_vec(q), SkewPoly::from_vec(rem)))
    }

    /// Remainder of right division by a monic `g`.
    pub fn right_rem(&self, f: &SkewPoly, g: &SkewPoly) -> Result<SkewPoly, SkewError> {
        self.right_divmod(f, g).map(|(_, r)| r)
    }

    /// Whether the monic `g` right-divides `x^n - 1`, for even `n` and
    /// `1 <= deg g < n`.
    pub fn right_divides_xn_minus_1(&self, g: &SkewPoly, n: usize) -> Result<bool, SkewError> {
        if !n.is_multiple_of(2) {
            return Err(SkewError::OddLength(n));
        }
        self.check_monic(g)?;
        let degree = g.degree().unwrap_or(0);
        if degree == 0 || degree >= n {
            return Err(SkewError::DegreeOutOfRange { degree, n });
        }
        Ok(self.right_rem(&self.x_n_minus_1(n), g)?.is_zero())
    }

    /// `a_i = a_{t-i}` for all `i`.
    pub fn is_palindromic(&self, f: &SkewPoly) -> Result<bool, SkewError> {
        let t = f.degree().ok_or(SkewError::ZeroPolynomial)?;
        Ok((0..=t / 2).all(|i| f.coeffs[i] == f.coeffs[t - i]))
    }

    /// `a_i = theta(a_{t-i})` for all `i`.
    pub fn is_theta_palindromic(&self, f: &SkewPoly) -> Result<bool, SkewError> {
        let t = f.degree().ok_or(SkewError::ZeroPolynomial)?;
        Ok((0..=t).all(|i| f.coeffs[i] == self.ring.theta(&f.coeffs[t - i])))
    }

    /// Lowest degree first, e.g. `1 + (b^7 + b*u2)*x + x^3`.
    pub fn format(&self, f: &SkewPoly) -> String {
        if f.is_zero() {
            return "0".into();
        }
        let terms: Vec<String> = f
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                let xpow = match i {
                    0 => String::new(),
                    1 => "x".into(),
                    _ => format!("x^{i}"),
                };
                if self.ring.is_one(c) {
                    return if i == 0 { "1".into() } else { xpow };
                }
                let mut coef = self.ring.format(c);
                if coef.contains(' ') {
                    coef = format!("({coef})");
                }
                if i == 0 {
                    coef
                } else {
                    format!("{coef}*{xpow}")
                }
            })
            .collect();
        terms.join(" + ")
    }

    /// List form `poly[c0; c1; ...]`.
    pub fn format_list(&self, f: &SkewPoly) -> String {
        let parts: Vec<String> = f.coeffs.iter().map(|c| self.ring.format(c)).collect();
        format!("poly[{}]", parts.join("; "))
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::gf::FieldContext;

    fn ring(k: u32, s: u32) -> RingContext {
        RingContext::new(Arc::new(FieldContext::new(k).unwrap()), s).unwrap()
    }

    fn c(r: &RingContext, i: i64) -> RingElement {
        r.constant(r.field().exp(i))
    }

    #[test]
    fn x_plus_one_squared() {
        let r = ring(1, 1);
        let p = SkewPolyRing::new(&r);
        let f = p.poly(vec![r.one(), r.one()]).unwrap();
        assert_eq!(p.mul(&f, &f), p.x_n_minus_1(2));
        assert_eq!(p.mul(&f, &p.one()), f);
        assert_eq!(p.mul(&p.one(), &f), f);
        let (q, rem) = p.right_divmod(&p.x_n_minus_1(2), &f).unwrap();
        assert_eq!(q, f);
        assert!(rem.is_zero());
        assert!(p.right_divides_xn_minus_1(&f, 2).unwrap());
    }

    #[test]
    fn x_plus_beta_is_not_a_divisor() {
        let r = ring(1, 1);
        let p = SkewPolyRing::new(&r);
        let g = p.poly(vec![c(&r, 1), r.one()]).unwrap();
        assert!(!p.right_divides_xn_minus_1(&g, 2).unwrap());
        assert!(!p.is_palindromic(&g).unwrap());
    }

    #[test]
    fn non_commutativity() {
        let r = ring(1, 1);
        let p = SkewPolyRing::new(&r);
        let x = p.monomial(r.one(), 1);
        let a = p.poly(vec![c(&r, 1)]).unwrap();
        assert_ne!(p.mul(&x, &a), p.mul(&a, &x));
        assert_eq!(p.mul(&x, &a), p.monomial(c(&r, 4), 1));
    }

    #[test]
    fn divisor_errors() {
        let r = ring(1, 1);
        let p = SkewPolyRing::new(&r);
        let f = p.x_n_minus_1(4);
        let unit_lead = p.poly(vec![r.one(), c(&r, 3)]).unwrap();
        assert_eq!(p.right_divmod(&f, &unit_lead).unwrap_err(), SkewError::NotMonic { unit: true });
        let zd_lead = p.poly(vec![r.one(), r.variable(1).unwrap()]).unwrap();
        assert_eq!(p.right_divmod(&f, &zd_lead).unwrap_err(), SkewError::NotMonic { unit: false });
        assert_eq!(p.right_divmod(&f, &SkewPoly::zero()).unwrap_err(), SkewError::ZeroDivisor);
        let g = p.poly(vec![r.one(), r.one()]).unwrap();
        assert_eq!(p.right_divides_xn_minus_1(&g, 3).unwrap_err(), SkewError::OddLength(3));
        assert!(matches!(
            p.right_divides_xn_minus_1(&p.one(), 2),
            Err(SkewError::DegreeOutOfRange { degree: 0, n: 2 })
        ));
        assert!(matches!(
            p.right_divides_xn_minus_1(&p.x_n_minus_1(2), 2),
            Err(SkewError::DegreeOutOfRange { degree: 2, n: 2 })
        ));
    }

    #[test]
    fn palindromes() {
        let r = ring(1, 1);
        let p = SkewPolyRing::new(&r);
        let u = r.variable(1).unwrap();
        let f = p.poly(vec![r.one(), u.clone(), r.one()]).unwrap();
        assert!(p.is_palindromic(&f).unwrap());
        let xp1 = p.poly(vec![r.one(), r.one()]).unwrap();
        assert!(p.is_theta_palindromic(&xp1).unwrap());
        let b = c(&r, 1);
        let h = p.poly(vec![r.one(), b.clone(), b, r.one()]).unwrap();
        assert!(!p.is_theta_palindromic(&h).unwrap());
        assert!(p.is_palindromic(&h).unwrap());
        assert_eq!(p.is_palindromic(&SkewPoly::zero()).unwrap_err(), SkewError::ZeroPolynomial);
        assert_eq!(p.is_theta_palindromic(&SkewPoly::zero()).unwrap_err(), SkewError::ZeroPolynomial);
    }

    #[test]
    fn apply_theta_examples() {
        let r = ring(1, 1);
        let p = SkewPolyRing::new(&r);
        let u = r.variable(1).unwrap();
        let f = p.poly(vec![u.clone(), r.one()]).unwrap();
        let expected = p.poly(vec![r.add(&u, &r.one()), r.one()]).unwrap();
        assert_eq!(p.apply_theta(&f), expected);
        assert_eq!(p.apply_theta(&p.apply_theta(&f)), f);
        assert_eq!(p.apply_theta(&p.one()), p.one());
    }

    #[test]
    fn format_layout() {
        let r = ring(1, 3);
        let p = SkewPolyRing::new(&r);
        let f = r.field();
        let u23 = r.add(&r.variable(2).unwrap(), &r.variable(3).unwrap());
        let d = r.add(&r.scale(f.generator(), &u23), &c(&r, 7));
        let g = p.poly(vec![r.one(), d.clone(), c(&r, 2), r.one()]).unwrap();
        assert_eq!(p.format(&g), "1 + (b^7 + b*u2 + b*u3)*x + b^2*x^2 + x^3");
        assert_eq!(p.format(&SkewPoly::zero()), "0");
        assert_eq!(p.format_list(&p.poly(vec![r.one(), r.zero()]).unwrap()), "poly[1]");
    }

    #[test]
    fn trailing_zeros_dropped() {
        let r = ring(1, 1);
        let p = SkewPolyRing::new(&r);
        let f = p.poly(vec![r.one(), r.zero(), r.zero()]).unwrap();
        assert_eq!(f.degree(), Some(0));
        assert_eq!(p.poly(vec![r.zero()]).unwrap().degree(), None);
    }
}
