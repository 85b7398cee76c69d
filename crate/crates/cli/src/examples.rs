//! Built-in worked examples over R_{1,3}.

use std::sync::Arc;

use anyhow::Result;
use clap::ValueEnum;
use revdna_core::{
    parse_poly_expr, parse_ring_expr, CodebookSource, DnaCodebook, FieldContext, RingContext, SkewPolyRing,
};

use crate::report::Report;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Example {
    Ex1,
    Ex2,
    Ex3,
    Ex4,
    Ex5,
}

impl Example {
    pub fn label(self) -> &'static str {
        match self {
            Example::Ex1 => "ex1",
            Example::Ex2 => "ex2",
            Example::Ex3 => "ex3",
            Example::Ex4 => "ex4",
            Example::Ex5 => "ex5",
        }
    }
}

const TUPLES: [&str; 8] = ["000", "100", "010", "001", "110", "101", "011", "111"];

const IDEMPOTENTS: [&str; 8] = [
    "u_1u_2u_3",
    "(u_1+1)u_2u_3",
    "u_1(u_2+1)u_3",
    "u_1u_2(u_3+1)",
    "(u_1+1)(u_2+1)u_3",
    "(u_1+1)u_2(u_3+1)",
    "u_1(u_2+1)(u_3+1)",
    "(u_1+1)(u_2+1)(u_3+1)",
];

pub const EX3_ALPHA: &str = "crt(b^2, b, b^5, b^3, 1, 0, b^7, 1)";
pub const EX4_H: &str = "1 + (b*(u2+u3) + b^7)*x + (b*(u2+u3) + b^7)*x^2 + x^3";
pub const EX4_G: &str = "1 + (b^7 + b*(u2+u3))*x + (b^13 + b^4*(u2+u3))*x^2 + x^3";
pub const EX5_H: &str = "1 + (b^14 + u1 + u2)*x + x^2";
pub const EX5_G: &str = "1 + (b^14 + u1 + u2)*x + (b^14 + u1 + u2)*x^3 + x^4";

/// Runs one example under `modulus`. With `gating == false` the outcome is
/// recorded as informational only.
pub fn run(ex: Example, modulus: u32, gating: bool, report: &mut Report) -> Result<bool> {
    let ring = RingContext::new(Arc::new(FieldContext::with_modulus(1, modulus)?), 3)?;
    let tag = format!("{}[{modulus:#x}]", ex.label());
    let mut results: Vec<(String, bool, String)> = Vec::new();
    match ex {
        Example::Ex1 => {
            for (i, want) in TUPLES.iter().enumerate() {
                let got: String = ring.tuple(i).iter().map(|b| char::from(b'0' + b)).collect();
                results.push((format!("T_{i} = {want}"), got == *want, if got == *want { String::new() } else { got }));
            }
        }
        Example::Ex2 => {
            for (i, want) in IDEMPOTENTS.iter().enumerate() {
                let got = ring.render_idempotent(i)?;
                let ok = got == *want;
                results.push((format!("I_{i} = {want}"), ok, if ok { String::new() } else { got }));
            }
        }
        Example::Ex3 => {
            let book = DnaCodebook::build(ring.field(), CodebookSource::EmbeddedReference)?;
            let alpha = parse_ring_expr(EX3_ALPHA, &ring)?;
            let d = book.encode_element(&ring, &alpha)?;
            let dt = book.encode_element(&ring, &ring.theta(&alpha))?;
            results.push(("phi(alpha) = GCATCCAGTTAAGTTT".into(), d.as_str() == "GCATCCAGTTAAGTTT", d.to_string()));
            results.push((
                "phi(theta(alpha)) = TTTGAATTGACCTACG".into(),
                dt.as_str() == "TTTGAATTGACCTACG",
                dt.to_string(),
            ));
            results.push(("strings are reverses".into(), dt == d.reverse(), String::new()));
        }
        Example::Ex4 => {
            let p = SkewPolyRing::new(&ring);
            let h = parse_poly_expr(EX4_H, &ring)?;
            let g = parse_poly_expr(EX4_G, &ring)?;
            let prod = p.mul(&h, &g);
            let ok = prod == p.x_n_minus_1(6);
            results.push(("h*g = x^6 - 1".into(), ok, if ok { String::new() } else { p.format(&prod) }));
            results.push(("g theta-palindromic".into(), p.is_theta_palindromic(&g)?, String::new()));
            results.push(("deg g = 3".into(), g.degree() == Some(3), String::new()));
        }
        Example::Ex5 => {
            let p = SkewPolyRing::new(&ring);
            let h = parse_poly_expr(EX5_H, &ring)?;
            let g = parse_poly_expr(EX5_G, &ring)?;
            let prod = p.mul(&h, &g);
            let holds = prod == p.x_n_minus_1(6);
            report.info(&tag, "h*g", p.format(&prod));
            report.info(&tag, "h*g = x^6 - 1", if holds { "holds" } else { "does not hold" });
            return Ok(holds);
        }
    }
    let all = results.iter().all(|(_, ok, _)| *ok);
    for (name, ok, detail) in results {
        if gating {
            report.push(&tag, name, ok, detail);
        } else {
            let status = if ok { "holds" } else { "fails" };
            let detail = if detail.is_empty() { status.to_string() } else { format!("{status}: {detail}") };
            report.info(&tag, name, detail);
        }
    }
    Ok(all)
}
