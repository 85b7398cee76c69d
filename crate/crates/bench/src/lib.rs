//! Shared fixtures for the criterion benches.

use std::sync::Arc;

use revdna_core::{parse_poly_expr, FieldContext, RingContext, SkewCyclicCode};

pub fn ring(k: u32, s: u32) -> Arc<RingContext> {
    Arc::new(RingContext::new(Arc::new(FieldContext::new(k).unwrap()), s).unwrap())
}

/// The length-6 theta-palindromic code over R_{1,3}.
pub fn r13_code() -> SkewCyclicCode {
    let r = ring(1, 3);
    let g = parse_poly_expr("1 + (b^7 + b*(u2+u3))*x + (b^13 + b^4*(u2+u3))*x^2 + x^3", &r).unwrap();
    SkewCyclicCode::new(r, g, 6).unwrap()
}

/// The length-4 palindromic code over R_{1,1} with 65536 words.
pub fn r11_code() -> SkewCyclicCode {
    let r = ring(1, 1);
    let g = parse_poly_expr("x^2 + u1*x + 1", &r).unwrap();
    SkewCyclicCode::new(r, g, 4).unwrap()
}
