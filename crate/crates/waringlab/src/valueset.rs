//! Bit-indexed membership sets over F_p (indices 0..p-1) and over F_{p^2}
//! (canonical index a + b*p), with the word-parallel shifted-OR sumset
//! kernel used by the Waring solver.
//!
//! Layout: one p-bit row for F_p; p rows of p bits for F_{p^2} (row = theta
//! coefficient b, column = a). Bits past the row length are kept zero.

use crate::error::{Error, Result};

/// The additive group a set lives in, keyed by the prime p.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ambient {
    Fp(u64),
    Fp2(u64),
}

impl Ambient {
    pub fn p(&self) -> u64 {
        match *self {
            Ambient::Fp(p) | Ambient::Fp2(p) => p,
        }
    }

    pub fn size(&self) -> u64 {
        match *self {
            Ambient::Fp(p) => p,
            Ambient::Fp2(p) => p * p,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Ambient::Fp(_) => "fp",
            Ambient::Fp2(_) => "fp2",
        }
    }

    /// Componentwise addition of canonical indices.
    pub fn add_indices(&self, i: u64, j: u64) -> u64 {
        match *self {
            Ambient::Fp(p) => (i + j) % p,
            Ambient::Fp2(p) => {
                let a = (i % p + j % p) % p;
                let b = (i / p + j / p) % p;
                a + b * p
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValueSet {
    ambient: Ambient,
    rows: usize,
    row_words: usize,
    bits: Vec<u64>,
    card: u64,
}

fn words_for(bits: u64) -> usize {
    ((bits + 63) / 64) as usize
}

impl ValueSet {
    pub fn empty(ambient: Ambient) -> ValueSet {
        let p = ambient.p();
        let rows = match ambient {
            Ambient::Fp(_) => 1,
            Ambient::Fp2(_) => p as usize,
        };
        let row_words = words_for(p);
        ValueSet { ambient, rows, row_words, bits: vec![0; rows * row_words], card: 0 }
    }

    pub fn from_indices<I: IntoIterator<Item = u64>>(ambient: Ambient, idxs: I) -> ValueSet {
        let mut s = ValueSet::empty(ambient);
        for i in idxs {
            s.insert(i);
        }
        s
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn card(&self) -> u64 {
        self.card
    }

    pub fn is_full(&self) -> bool {
        self.card == self.ambient.size()
    }

    fn locate(&self, idx: u64) -> (usize, usize, u64) {
        let p = self.ambient.p();
        debug_assert!(idx < self.ambient.size());
        let (row, col) = match self.ambient {
            Ambient::Fp(_) => (0u64, idx),
            Ambient::Fp2(_) => (idx / p, idx % p),
        };
        let word = row as usize * self.row_words + (col / 64) as usize;
        (word, (col % 64) as usize, 1u64 << (col % 64))
    }

    /// Returns true if the index was newly inserted.
    pub fn insert(&mut self, idx: u64) -> bool {
        let (w, _, mask) = self.locate(idx);
        if self.bits[w] & mask == 0 {
            self.bits[w] |= mask;
            self.card += 1;
            true
        } else {
            false
        }
    }

    pub fn contains(&self, idx: u64) -> bool {
        let (w, _, mask) = self.locate(idx);
        self.bits[w] & mask != 0
    }

    pub fn iter_indices(&self) -> impl Iterator<Item = u64> + '_ {
        let p = self.ambient.p();
        let row_words = self.row_words;
        self.bits.iter().enumerate().flat_map(move |(wi, &w)| {
            let row = (wi / row_words) as u64;
            let base_col = ((wi % row_words) * 64) as u64;
            let mut bits = w;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let t = bits.trailing_zeros() as u64;
                bits &= bits - 1;
                Some(row * p + base_col + t)
            })
        })
    }

    pub fn is_subset_of(&self, other: &ValueSet) -> bool {
        self.ambient == other.ambient
            && self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }

    fn recount(&mut self) {
        self.card = self.bits.iter().map(|w| w.count_ones() as u64).sum();
    }

    /// {x + y : x in self, y in other} in the ambient additive group.
    pub fn sumset(&self, other: &ValueSet) -> Result<ValueSet> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch {
                left: format!("{:?}", self.ambient),
                right: format!("{:?}", other.ambient),
            });
        }
        let p = self.ambient.p() as usize;
        let mut out = ValueSet::empty(self.ambient);
        // Doubled rows: each p-bit row concatenated with itself, so a cyclic
        // rotation becomes a single contiguous window read.
        let dbl_words = 2 * self.row_words + 1;
        let mut dbl = vec![0u64; self.rows * dbl_words];
        for r in 0..self.rows {
            let src = &self.bits[r * self.row_words..(r + 1) * self.row_words];
            let dst = &mut dbl[r * dbl_words..(r + 1) * dbl_words];
            dst[..self.row_words].copy_from_slice(src);
            or_shifted(src, p, dst);
        }
        match self.ambient {
            Ambient::Fp(_) => {
                for a in other.iter_indices() {
                    or_window(&dbl, (p - a as usize) % p, &mut out.bits, self.row_words);
                }
            }
            Ambient::Fp2(_) => {
                for idx in other.iter_indices() {
                    let (a2, b2) = ((idx % p as u64) as usize, (idx / p as u64) as usize);
                    let off = (p - a2) % p;
                    for r in 0..p {
                        let dr = (r + b2) % p;
                        let src = &dbl[r * dbl_words..(r + 1) * dbl_words];
                        let dst =
                            &mut out.bits[dr * self.row_words..(dr + 1) * self.row_words];
                        or_window(src, off, dst, self.row_words);
                    }
                }
            }
        }
        // Mask padding bits that the window reads may have dragged in.
        let tail = p % 64;
        if tail != 0 {
            let mask = (1u64 << tail) - 1;
            for r in 0..out.rows {
                out.bits[(r + 1) * out.row_words - 1] &= mask;
            }
        }
        out.recount();
        Ok(out)
    }

    /// Serialized form for harness caching: a header line
    /// `ambient_size=<n>;card=<c>` followed by the membership bits in
    /// canonical index order, packed LSB-first into bytes and hex encoded.
    pub fn serialize(&self) -> String {
        let n = self.ambient.size();
        let mut bytes = vec![0u8; ((n + 7) / 8) as usize];
        for idx in self.iter_indices() {
            bytes[(idx / 8) as usize] |= 1 << (idx % 8);
        }
        let mut out = format!("ambient_size={};card={}\n", n, self.card);
        for b in bytes {
            out.push_str(&format!("{:02x}", b));
        }
        out
    }

    pub fn deserialize(text: &str, ambient: Ambient) -> Result<ValueSet> {
        let mut lines = text.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::InvalidInput("empty value-set text".into()))?;
        let bad = |m: &str| Error::InvalidInput(format!("value-set header: {m}"));
        let mut size = None;
        let mut card = None;
        for part in header.split(';') {
            match part.split_once('=') {
                Some(("ambient_size", v)) => size = v.parse::<u64>().ok(),
                Some(("card", v)) => card = v.parse::<u64>().ok(),
                _ => return Err(bad(part)),
            }
        }
        let (size, card) = (size.ok_or_else(|| bad("missing ambient_size"))?,
                            card.ok_or_else(|| bad("missing card"))?);
        if size != ambient.size() {
            return Err(bad(&format!("size {size} != ambient size {}", ambient.size())));
        }
        let hex: String = lines.collect();
        let mut s = ValueSet::empty(ambient);
        for (bi, chunk) in hex.as_bytes().chunks(2).enumerate() {
            let byte = u8::from_str_radix(std::str::from_utf8(chunk).unwrap_or("zz"), 16)
                .map_err(|_| Error::InvalidInput("bad hex in value-set body".into()))?;
            for bit in 0..8 {
                let idx = (bi * 8 + bit) as u64;
                if byte & (1 << bit) != 0 && idx < size {
                    s.insert(idx);
                }
            }
        }
        if s.card != card {
            return Err(bad(&format!("card {} != declared {card}", s.card)));
        }
        Ok(s)
    }
}

/// OR `src` (an nbits-long bit string) into `dst` at bit offset nbits,
/// producing the doubled buffer.
fn or_shifted(src: &[u64], nbits: usize, dst: &mut [u64]) {
    let q = nbits / 64;
    let r = nbits % 64;
    for (i, &w) in src.iter().enumerate() {
        dst[q + i] |= w << r;
        if r > 0 {
            dst[q + i + 1] |= w >> (64 - r);
        }
    }
}

/// OR the 64*out_words-bit window of `dbl` starting at bit `off` into `dst`.
fn or_window(dbl: &[u64], off: usize, dst: &mut [u64], out_words: usize) {
    let q = off / 64;
    let r = off % 64;
    for i in 0..out_words {
        let lo = dbl[q + i] >> r;
        let hi = if r > 0 { dbl[q + i + 1] << (64 - r) } else { 0 };
        dst[i] |= lo | hi;
    }
}
