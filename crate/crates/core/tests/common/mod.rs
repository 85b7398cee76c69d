//! Independent reference arithmetic for cross-checking the library.
//!
//! Nothing here calls into `revdna_core`. Field elements are multiplied by
//! shift-and-add with per-step reduction, ring elements live in the
//! monomial basis (coefficient per subset of variables), theta is applied
//! by substituting `u_e -> u_e + 1` and raising constants to `4^k` by
//! repeated multiplication, and skew products apply theta `i` times
//! without reducing `i` mod 2.

#![allow(dead_code)]

#[derive(Clone, Copy, Debug)]
pub struct OField {
    pub k: u32,
    pub degree: u32,
    pub modulus: u32,
}

impl OField {
    pub fn new(k: u32, modulus: u32) -> Self {
        Self { k, degree: 4 * k, modulus }
    }

    pub fn size(&self) -> u32 {
        1 << self.degree
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        let mut acc = 0u32;
        let mut a = a;
        let mut b = b;
        while b != 0 {
            if b & 1 == 1 {
                acc ^= a;
            }
            b >>= 1;
            a <<= 1;
            if a >> self.degree & 1 == 1 {
                a ^= self.modulus;
            }
        }
        acc
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        let mut acc = 1;
        for _ in 0..e {
            acc = self.mul(acc, a);
        }
        acc
    }

    /// `b^e` for the generator `b = y`.
    pub fn beta(&self, e: u64) -> u32 {
        self.pow(2, e % ((1u64 << self.degree) - 1))
    }

    pub fn theta(&self, a: u32) -> u32 {
        self.pow(a, 4u64.pow(self.k))
    }
}

/// Ring elements as `2^s` coefficients indexed by variable subset
/// (bit `e` of the index means `u_{e+1}` divides the monomial).
#[derive(Clone, Copy, Debug)]
pub struct ORing {
    pub f: OField,
    pub s: u32,
}

pub type OElem = Vec<u32>;

impl ORing {
    pub fn new(f: OField, s: u32) -> Self {
        Self { f, s }
    }

    pub fn width(&self) -> usize {
        1 << self.s
    }

    pub fn zero(&self) -> OElem {
        vec![0; self.width()]
    }

    pub fn constant(&self, c: u32) -> OElem {
        let mut v = self.zero();
        v[0] = c;
        v
    }

    pub fn one(&self) -> OElem {
        self.constant(1)
    }

    /// `u_e` for `e` in `1..=s`.
    pub fn var(&self, e: usize) -> OElem {
        let mut v = self.zero();
        v[1 << (e - 1)] = 1;
        v
    }

    pub fn add(&self, a: &OElem, b: &OElem) -> OElem {
        a.iter().zip(b).map(|(x, y)| x ^ y).collect()
    }

    pub fn mul(&self, a: &OElem, b: &OElem) -> OElem {
        let mut out = self.zero();
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                if y != 0 {
                    out[i | j] ^= self.f.mul(x, y);
                }
            }
        }
        out
    }

    pub fn theta(&self, a: &OElem) -> OElem {
        let mut out = self.zero();
        for (m, &c) in a.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let tc = self.f.theta(c);
            // prod_{e in m} (u_e + 1) = sum over subsets of m
            let mut sub = m;
            loop {
                out[sub] ^= tc;
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & m;
            }
        }
        out
    }

    /// Evaluates at the point `u_e = point_e`.
    pub fn eval(&self, a: &OElem, point: &[u8]) -> u32 {
        let mask: usize = point.iter().enumerate().map(|(e, &p)| (p as usize) << e).sum();
        a.iter().enumerate().filter(|&(m, _)| m & !mask == 0).fold(0, |acc, (_, &c)| acc ^ c)
    }

    /// Exponent tuples in block order: weight ascending, and within a
    /// weight the variable-index combinations in lexicographic order
    /// (`u1u2, u1u3, u2u3`), which is descending lex on the 0/1 tuples.
    pub fn tuple_list(&self) -> Vec<Vec<u8>> {
        let s = self.s as usize;
        let mut out = Vec::new();
        for w in 0..=s {
            let mut combo: Vec<usize> = (0..w).collect();
            loop {
                let mut t = vec![0u8; s];
                for &c in &combo {
                    t[c] = 1;
                }
                out.push(t);
                // next combination
                let mut i = w;
                let mut advanced = false;
                while i > 0 {
                    i -= 1;
                    if combo[i] < s - w + i {
                        combo[i] += 1;
                        for j in i + 1..w {
                            combo[j] = combo[j - 1] + 1;
                        }
                        advanced = true;
                        break;
                    }
                }
                if !advanced {
                    break;
                }
            }
        }
        out
    }

    /// CRT coordinates: coordinate `i` is the value at `u_e = 1 - r_e`
    /// with `T_i = (r_1, ..., r_s)`.
    pub fn crt_of(&self, a: &OElem) -> Vec<u32> {
        self.tuple_list()
            .iter()
            .map(|t| {
                let point: Vec<u8> = t.iter().map(|&r| 1 - r).collect();
                self.eval(a, &point)
            })
            .collect()
    }

    /// Builds an element from coefficients listed in tuple-table order.
    pub fn elem_from_table(&self, b: &[u32]) -> OElem {
        let mut out = self.zero();
        for (t, &c) in self.tuple_list().iter().zip(b) {
            let m: usize = t.iter().enumerate().map(|(e, &r)| (r as usize) << e).sum();
            out[m] ^= c;
        }
        out
    }

    /// `I_i = prod_e theta^{r_e}(u_e)` in the monomial basis.
    pub fn idempotent(&self, t: &[u8]) -> OElem {
        let mut p = self.one();
        for (e, &r) in t.iter().enumerate() {
            let u = self.var(e + 1);
            let f = if r == 1 { self.theta(&u) } else { u };
            p = self.mul(&p, &f);
        }
        p
    }
}

/// Skew polynomials as coefficient vectors, low degree first.
pub fn skew_mul(r: &ORing, f: &[OElem], g: &[OElem]) -> Vec<OElem> {
    let mut out = vec![r.zero(); f.len() + g.len() - 1];
    for (i, a) in f.iter().enumerate() {
        for (j, b) in g.iter().enumerate() {
            let mut tb = b.clone();
            for _ in 0..i {
                tb = r.theta(&tb);
            }
            out[i + j] = r.add(&out[i + j], &r.mul(a, &tb));
        }
    }
    out
}

/// Remainder of right division by a monic `g`.
pub fn skew_right_rem(r: &ORing, f: &[OElem], g: &[OElem]) -> Vec<OElem> {
    let dg = g.len() - 1;
    let mut rem: Vec<OElem> = f.to_vec();
    while rem.len() > dg {
        let top = rem.len() - 1;
        let c = rem[top].clone();
        if c.iter().any(|&x| x != 0) {
            let d = top - dg;
            // subtract (c x^d) g
            let mut term = vec![r.zero(); d];
            term.push(c);
            let prod = skew_mul(r, &term, g);
            for (i, p) in prod.iter().enumerate() {
                rem[i] = r.add(&rem[i], p);
            }
        }
        rem.pop();
    }
    rem
}

/// Tiny deterministic generator (SplitMix64) so the oracle needs no crates.
pub struct SplitMix(pub u64);

impl SplitMix {
    pub fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    pub fn below(&mut self, n: u64) -> u64 {
        self.next() % n
    }
}
