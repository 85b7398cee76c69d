//! DNA strings and the field-to-DNA codebook.
//!
//! A [`DnaCodebook`] is a bijection between F_{4^{2k}} and DNA 2k-mers with
//! the reverse-pairing law `tau(theta(a)) = reverse(tau(a))`. Extending it
//! coordinatewise over the Gray image turns ring elements into
//! `2^{s+1}k`-mers and codewords into `n 2^{s+1}k`-mers, and under that map
//! `theta` on a ring element is exactly string reversal.

use std::fmt;
use std::io::{self, Write};
use std::str::FromStr;

use thiserror::Error;

use crate::gf::{FieldContext, FieldElement};
use crate::ring::{RingContext, RingElement};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DnaError {
    #[error("invalid base {found:?} at position {pos}")]
    InvalidBase { found: char, pos: usize },
    #[error("expected a DNA string of length {expected}, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("the embedded reference codebook exists only for k = 1 (got k = {0})")]
    NoReference(u32),
    #[error("expected a tuple of {expected} field elements, got {got}")]
    TupleLength { expected: usize, got: usize },
    #[error("codebook is for k = {book}, ring is over k = {ring}")]
    ContextMismatch { book: u32, ring: u32 },
}

const ALPHABET: [u8; 4] = *b"ACGT";

fn base_code(b: u8) -> Option<u32> {
    match b {
        b'A' => Some(0),
        b'C' => Some(1),
        b'G' => Some(2),
        b'T' => Some(3),
        _ => None,
    }
}

/// A string over `{A, C, G, T}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct DnaString(Vec<u8>);

impl DnaString {
    pub fn new() -> Self {
        Self(Vec::new())
    }

    pub fn with_capacity(n: usize) -> Self {
        Self(Vec::with_capacity(n))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn as_str(&self) -> &str {
        std::str::from_utf8(&self.0).expect("alphabet is ASCII")
    }

    pub fn extend(&mut self, other: &DnaString) {
        self.0.extend_from_slice(&other.0);
    }

    /// Index reversal.
    pub fn reverse(&self) -> DnaString {
        DnaString(self.0.iter().rev().copied().collect())
    }

    /// Watson-Crick complement, base by base (A<->T, C<->G).
    pub fn complement(&self) -> DnaString {
        DnaString(
            self.0
                .iter()
                .map(|&b| match b {
                    b'A' => b'T',
                    b'T' => b'A',
                    b'C' => b'G',
                    _ => b'C',
                })
                .collect(),
        )
    }

    pub fn is_palindrome(&self) -> bool {
        self.0.iter().eq(self.0.iter().rev())
    }

    /// Number of differing positions; `None` if the lengths differ.
    pub fn hamming(&self, other: &DnaString) -> Option<usize> {
        (self.len() == other.len()).then(|| self.0.iter().zip(&other.0).filter(|(a, b)| a != b).count())
    }

    fn push_code(&mut self, code: u32, len: usize) {
        for i in (0..len).rev() {
            self.0.push(ALPHABET[(code >> (2 * i) & 3) as usize]);
        }
    }

    fn from_code(code: u32, len: usize) -> Self {
        let mut s = Self::with_capacity(len);
        s.push_code(code, len);
        s
    }

    /// Base-4 value of the string, first base most significant.
    fn code(&self) -> u32 {
        self.0.iter().fold(0, |acc, &b| acc << 2 | base_code(b).expect("validated"))
    }
}

impl FromStr for DnaString {
    type Err = DnaError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut v = Vec::with_capacity(s.len());
        for (pos, ch) in s.chars().enumerate() {
            let up = ch.to_ascii_uppercase();
            if !matches!(up, 'A' | 'C' | 'G' | 'T') {
                return Err(DnaError::InvalidBase { found: ch, pos });
            }
            v.push(up as u8);
        }
        Ok(Self(v))
    }
}

impl fmt::Display for DnaString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// String reversal.
pub fn dna_reverse(d: &DnaString) -> DnaString {
    d.reverse()
}

/// Watson-Crick complement.
pub fn wcc_complement(d: &DnaString) -> DnaString {
    d.complement()
}

/// How a codebook is populated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CodebookSource {
    /// Deterministic orbit matching, available for every `k`.
    Generated,
    /// The fixed table for F_16 whose entries reproduce the worked example.
    EmbeddedReference,
}

impl FromStr for CodebookSource {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "generated" => Ok(Self::Generated),
            "reference" | "embedded-reference" => Ok(Self::EmbeddedReference),
            _ => Err(format!("unknown codebook source `{s}` (expected generated or reference)")),
        }
    }
}

/// `(discrete log, 2-mer)` pairs for F_16; `None` is the zero element.
const REFERENCE_K1: [(Option<u32>, &str); 16] = [
    (None, "AA"),
    (Some(0), "TT"),
    (Some(1), "AT"),
    (Some(2), "GC"),
    (Some(3), "AG"),
    (Some(4), "TA"),
    (Some(5), "CC"),
    (Some(6), "AC"),
    (Some(7), "GT"),
    (Some(8), "CG"),
    (Some(9), "CA"),
    (Some(10), "GG"),
    (Some(11), "TC"),
    (Some(12), "GA"),
    (Some(13), "TG"),
    (Some(14), "CT"),
];

/// The map tau between F_{4^{2k}} and DNA 2k-mers.
#[derive(Debug, Clone)]
pub struct DnaCodebook {
    k: u32,
    source: CodebookSource,
    /// 2k-mer code (base-4, first base most significant) per element bits.
    forward: Vec<u32>,
    /// Element bits per 2k-mer code.
    backward: Vec<u16>,
}

impl DnaCodebook {
    pub fn build(field: &FieldContext, source: CodebookSource) -> Result<Self, DnaError> {
        let k = field.k();
        let forward = match source {
            CodebookSource::Generated => Self::orbit_matching(field),
            CodebookSource::EmbeddedReference => {
                if k != 1 {
                    return Err(DnaError::NoReference(k));
                }
                let mut fwd = vec![0u32; 16];
                for (log, kmer) in REFERENCE_K1 {
                    let a = log.map_or(FieldElement::ZERO, |l| field.exp(l as i64));
                    fwd[a.bits() as usize] = kmer.parse::<DnaString>().expect("static table").code();
                }
                fwd
            }
        };
        let mut backward = vec![0u16; forward.len()];
        for (bits, &code) in forward.iter().enumerate() {
            backward[code as usize] = bits as u16;
        }
        Ok(Self { k, source, forward, backward })
    }

    /// Walks elements as `0, b^0, b^1, ...`. A theta-fixed element takes the
    /// next unused palindromic 2k-mer; any other unassigned element takes
    /// the next unused non-palindromic 2k-mer and its theta image gets the
    /// reverse. Both scans are in A<C<G<T lexicographic order.
    fn orbit_matching(field: &FieldContext) -> Vec<u32> {
        let len = 2 * field.k() as usize;
        let total = field.size();
        let kmers: Vec<DnaString> = (0..total as u32).map(|c| DnaString::from_code(c, len)).collect();
        let (palindromes, others): (Vec<u32>, Vec<u32>) =
            (0..total as u32).partition(|&c| kmers[c as usize].is_palindrome());
        let mut used = vec![false; total];
        let mut forward = vec![u32::MAX; total];
        let mut pal = palindromes.into_iter();
        let mut other = others.into_iter();
        for a in field.elements() {
            if forward[a.bits() as usize] != u32::MAX {
                continue;
            }
            let t = field.theta(a);
            if t == a {
                let c = pal.next().expect("4^k palindromes for 4^k fixed elements");
                used[c as usize] = true;
                forward[a.bits() as usize] = c;
            } else {
                let c = other.by_ref().find(|&c| !used[c as usize]).expect("enough non-palindromes");
                let r = kmers[c as usize].reverse().code();
                used[c as usize] = true;
                used[r as usize] = true;
                forward[a.bits() as usize] = c;
                forward[t.bits() as usize] = r;
            }
        }
        forward
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn source(&self) -> CodebookSource {
        self.source
    }

    /// Length of each image, `2k`.
    pub fn kmer_len(&self) -> usize {
        2 * self.k as usize
    }

    pub fn tau(&self, a: FieldElement) -> DnaString {
        DnaString::from_code(self.forward[a.bits() as usize], self.kmer_len())
    }

    pub fn tau_inv(&self, d: &DnaString) -> Result<FieldElement, DnaError> {
        if d.len() != self.kmer_len() {
            return Err(DnaError::WrongLength { expected: self.kmer_len(), got: d.len() });
        }
        Ok(FieldElement::from_raw(self.backward[d.code() as usize]))
    }

    fn check_ring(&self, ring: &RingContext) -> Result<(), DnaError> {
        if ring.field().k() != self.k {
            return Err(DnaError::ContextMismatch { book: self.k, ring: ring.field().k() });
        }
        Ok(())
    }

    fn push_element(&self, out: &mut DnaString, a: FieldElement) {
        out.push_code(self.forward[a.bits() as usize], self.kmer_len());
    }

    /// tau applied to each coordinate of a Gray tuple, concatenated.
    pub fn encode_gray_tuple(&self, ring: &RingContext, tuple: &[FieldElement]) -> Result<DnaString, DnaError> {
        self.check_ring(ring)?;
        if tuple.len() != ring.width() {
            return Err(DnaError::TupleLength { expected: ring.width(), got: tuple.len() });
        }
        let mut out = DnaString::with_capacity(tuple.len() * self.kmer_len());
        for &a in tuple {
            self.push_element(&mut out, a);
        }
        Ok(out)
    }

    /// The `2^{s+1}k`-mer of one ring element.
    pub fn encode_element(&self, ring: &RingContext, a: &RingElement) -> Result<DnaString, DnaError> {
        self.encode_gray_tuple(ring, &ring.gray(a))
    }

    /// Concatenated DNA image of a word of ring elements.
    pub fn encode_word(&self, ring: &RingContext, word: &[RingElement]) -> Result<DnaString, DnaError> {
        self.check_ring(ring)?;
        let mut out = DnaString::with_capacity(word.len() * ring.width() * self.kmer_len());
        for c in word {
            if c.components().len() != ring.width() {
                return Err(DnaError::TupleLength { expected: ring.width(), got: c.components().len() });
            }
            for &a in c.components() {
                self.push_element(&mut out, a);
            }
        }
        Ok(out)
    }

    /// Inverse of [`encode_word`](Self::encode_word).
    pub fn decode_word(&self, ring: &RingContext, d: &DnaString) -> Result<Vec<RingElement>, DnaError> {
        self.check_ring(ring)?;
        let per = ring.width() * self.kmer_len();
        if !d.len().is_multiple_of(per) {
            return Err(DnaError::WrongLength { expected: per * (d.len() / per + 1), got: d.len() });
        }
        d.as_bytes()
            .chunks(per)
            .map(|chunk| {
                let coords = chunk
                    .chunks(self.kmer_len())
                    .map(|kmer| self.tau_inv(&DnaString(kmer.to_vec())))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(ring.ungray(coords).expect("codebook images are reduced"))
            })
            .collect()
    }

    /// Two-column dump `element<TAB>kmer`, zero first then `b^0, b^1, ...`.
    pub fn dump(&self, field: &FieldContext) -> String {
        let mut s = String::new();
        for a in field.elements() {
            s.push_str(&field.format(a));
            s.push('\t');
            s.push_str(self.tau(a).as_str());
            s.push('\n');
        }
        s
    }
}

/// One FASTA record.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FastaRecord {
    pub header: String,
    pub sequence: DnaString,
}

/// Writes `>header` then the sequence on a single line.
pub fn write_fasta_record<W: Write>(w: &mut W, rec: &FastaRecord) -> io::Result<()> {
    writeln!(w, ">{}", rec.header)?;
    w.write_all(rec.sequence.as_bytes())?;
    w.write_all(b"\n")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(s: &str) -> DnaString {
        s.parse().unwrap()
    }

    #[test]
    fn string_utilities() {
        assert_eq!(dna_reverse(&d("ATTC")), d("CTTA"));
        assert_eq!(wcc_complement(&d("ACGT")), d("TGCA"));
        let x = d("GATTACA");
        assert_eq!(x.reverse().reverse(), x);
        assert_eq!(x.complement().complement(), x);
        assert!(d("ACCA").is_palindrome());
        assert_eq!(d("ACGT").hamming(&d("ACCA")), Some(2));
        assert_eq!(d("ACGT").hamming(&d("AC")), None);
        assert_eq!("ACXT".parse::<DnaString>().unwrap_err(), DnaError::InvalidBase { found: 'X', pos: 2 });
    }

    fn check_laws(f: &FieldContext, book: &DnaCodebook) {
        let mut seen = std::collections::HashSet::new();
        for a in f.elements() {
            let t = book.tau(a);
            assert_eq!(t.len(), 2 * f.k() as usize);
            assert!(seen.insert(t.clone()), "duplicate image {t}");
            assert_eq!(book.tau(f.theta(a)), t.reverse());
            assert_eq!(book.tau_inv(&t).unwrap(), a);
            assert_eq!(f.theta(a) == a, t.is_palindrome());
        }
        assert_eq!(seen.len(), f.size());
    }

    #[test]
    fn generated_codebooks_obey_laws() {
        for k in 1..=2 {
            let f = FieldContext::new(k).unwrap();
            let book = DnaCodebook::build(&f, CodebookSource::Generated).unwrap();
            check_laws(&f, &book);
        }
    }

    #[test]
    fn generated_k1_first_entries() {
        let f = FieldContext::new(1).unwrap();
        let book = DnaCodebook::build(&f, CodebookSource::Generated).unwrap();
        // fixed elements 0, 1 take AA, CC; b takes AC and b^4 its reverse
        assert_eq!(book.tau(FieldElement::ZERO), d("AA"));
        assert_eq!(book.tau(FieldElement::ONE), d("CC"));
        assert_eq!(book.tau(f.generator()), d("AC"));
        assert_eq!(book.tau(f.exp(4)), d("CA"));
    }

    #[test]
    fn reference_codebook() {
        let f = FieldContext::new(1).unwrap();
        let book = DnaCodebook::build(&f, CodebookSource::EmbeddedReference).unwrap();
        check_laws(&f, &book);
        let expect = [
            (None, "AA"),
            (Some(0), "TT"),
            (Some(1), "AT"),
            (Some(2), "GC"),
            (Some(3), "AG"),
            (Some(5), "CC"),
            (Some(7), "GT"),
            (Some(4), "TA"),
            (Some(8), "CG"),
            (Some(12), "GA"),
            (Some(13), "TG"),
        ];
        for (log, kmer) in expect {
            let a = log.map_or(FieldElement::ZERO, |l| f.exp(l));
            assert_eq!(book.tau(a), d(kmer));
        }
        let k2 = FieldContext::new(2).unwrap();
        assert_eq!(DnaCodebook::build(&k2, CodebookSource::EmbeddedReference).unwrap_err(), DnaError::NoReference(2));
    }

    #[test]
    fn tau_inv_length() {
        let f = FieldContext::new(1).unwrap();
        let book = DnaCodebook::build(&f, CodebookSource::Generated).unwrap();
        assert_eq!(book.tau_inv(&d("ACG")).unwrap_err(), DnaError::WrongLength { expected: 2, got: 3 });
    }

    #[test]
    fn dump_layout() {
        let f = FieldContext::new(1).unwrap();
        let book = DnaCodebook::build(&f, CodebookSource::EmbeddedReference).unwrap();
        let dump = book.dump(&f);
        let lines: Vec<&str> = dump.lines().collect();
        assert_eq!(lines.len(), 16);
        assert_eq!(lines[0], "0\tAA");
        assert_eq!(lines[1], "1\tTT");
        assert_eq!(lines[2], "b\tAT");
        assert_eq!(lines[15], "b^14\tCT");
    }

    #[test]
    fn fasta_record() {
        let mut out = Vec::new();
        let rec = FastaRecord { header: "cw0 msg=[0]".into(), sequence: d("AATT") };
        write_fasta_record(&mut out, &rec).unwrap();
        assert_eq!(String::from_utf8(out).unwrap(), ">cw0 msg=[0]\nAATT\n");
    }
}
