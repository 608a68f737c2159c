//! Finite sequences of naturals and their integer codes.
//!
//! Codes use the recursive Cantor scheme `code(⟨⟩) = 0`,
//! `code(σ⌢a) = 1 + pair(code(σ), a)` with `pair(x, y) = (x+y)(x+y+1)/2 + y`.
//! The scheme is a bijection between sequences and naturals. Codes of short
//! sequences fit in a `u64`; [`encode_big`] and [`decode_big`] cover the
//! nested tuple codes that do not.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite sequence of naturals. Ordered lexicographically, so a prefix
/// sorts before its extensions.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FinSeq(Vec<u64>);

/// The integer code of a [`FinSeq`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SeqCode(pub u64);

impl FinSeq {
    pub fn new(entries: Vec<u64>) -> Self {
        FinSeq(entries)
    }

    pub fn empty() -> Self {
        FinSeq(Vec::new())
    }

    pub fn entries(&self) -> &[u64] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<u64> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn last(&self) -> Option<u64> {
        self.0.last().copied()
    }

    /// `σ⌢j`
    pub fn child(&self, j: u64) -> FinSeq {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.extend_from_slice(&self.0);
        v.push(j);
        FinSeq(v)
    }

    /// The immediate prefix, or `None` for the empty sequence.
    pub fn parent(&self) -> Option<FinSeq> {
        if self.0.is_empty() {
            None
        } else {
            Some(FinSeq(self.0[..self.0.len() - 1].to_vec()))
        }
    }

    /// The first `n` entries. `n` must not exceed the length.
    pub fn prefix(&self, n: usize) -> FinSeq {
        FinSeq(self.0[..n].to_vec())
    }

    /// Proper prefixes, shortest first.
    pub fn proper_prefixes(&self) -> impl Iterator<Item = FinSeq> + '_ {
        (0..self.0.len()).map(move |n| self.prefix(n))
    }
}

impl From<Vec<u64>> for FinSeq {
    fn from(v: Vec<u64>) -> Self {
        FinSeq(v)
    }
}

impl<const N: usize> From<[u64; N]> for FinSeq {
    fn from(v: [u64; N]) -> Self {
        FinSeq(v.to_vec())
    }
}

impl fmt::Display for FinSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for FinSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for FinSeq {
    type Err = Error;

    /// Parses `[1,3,5]`; whitespace around entries is ignored.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| Error::rejected(format!("expected [..] sequence, got {s:?}")))?;
        if inner.trim().is_empty() {
            return Ok(FinSeq::empty());
        }
        inner
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u64>()
                    .map_err(|e| Error::rejected(format!("bad entry {t:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(FinSeq)
    }
}

fn pair_u128(x: u128, y: u128) -> Option<u128> {
    let s = x.checked_add(y)?;
    let t = s.checked_mul(s.checked_add(1)?)? / 2;
    t.checked_add(y)
}

fn unpair_u128(z: u128) -> (u128, u128) {
    // w = floor((sqrt(8z+1) - 1) / 2); z < 2^64 so 8z+1 fits.
    let w = ((8 * z + 1).isqrt() - 1) / 2;
    let t = w * (w + 1) / 2;
    let y = z - t;
    (w - y, y)
}

/// Code of a sequence. Fails with [`Error::Overflow`] when the code does not
/// fit in 64 bits.
pub fn encode(seq: &FinSeq) -> Result<SeqCode> {
    let mut code: u128 = 0;
    for &a in seq.entries() {
        code = pair_u128(code, a as u128)
            .and_then(|p| p.checked_add(1))
            .filter(|&c| c <= u64::MAX as u128)
            .ok_or(Error::Overflow)?;
    }
    Ok(SeqCode(code as u64))
}

/// Inverse of [`encode`].
pub fn decode(code: SeqCode) -> FinSeq {
    let mut out = Vec::new();
    let mut n = code.0 as u128;
    while n > 0 {
        let (rest, last) = unpair_u128(n - 1);
        out.push(last as u64);
        n = rest;
    }
    out.reverse();
    FinSeq(out)
}

fn pair_big(x: &BigUint, y: &BigUint) -> BigUint {
    let s = x + y;
    let t = (&s * (&s + 1u32)) >> 1;
    t + y
}

fn unpair_big(z: &BigUint) -> (BigUint, BigUint) {
    let disc: BigUint = (z << 3u32) + 1u32;
    let w: BigUint = (disc.sqrt() - 1u32) >> 1u32;
    let t = (&w * (&w + 1u32)) >> 1;
    let y = z - t;
    (w - &y, y)
}

/// Arbitrary-precision code of a sequence whose entries are themselves
/// arbitrary-precision naturals. Agrees with [`encode`] wherever both apply.
pub fn encode_big<'a, I>(entries: I) -> BigUint
where
    I: IntoIterator<Item = &'a BigUint>,
{
    let mut code = BigUint::zero();
    for a in entries {
        code = pair_big(&code, a) + 1u32;
    }
    code
}

/// Inverse of [`encode_big`].
pub fn decode_big(code: &BigUint) -> Vec<BigUint> {
    let mut out = Vec::new();
    let mut n = code.clone();
    while !n.is_zero() {
        let (rest, last) = unpair_big(&(n - BigUint::one()));
        out.push(last);
        n = rest;
    }
    out.reverse();
    out
}

/// Arbitrary-precision code of a `u64` sequence.
pub fn encode_seq_big(seq: &FinSeq) -> BigUint {
    let entries: Vec<BigUint> = seq.entries().iter().map(|&a| BigUint::from(a)).collect();
    encode_big(&entries)
}

/// `σ + 1`: every entry incremented.
///
/// Panics if an entry equals `u64::MAX`.
pub fn shift_up(seq: &FinSeq) -> FinSeq {
    FinSeq(
        seq.entries()
            .iter()
            .map(|&x| x.checked_add(1).expect("sequence entry overflow in shift_up"))
            .collect(),
    )
}

/// `σ ∸ 1`: every entry decremented, truncating at zero.
pub fn shift_down(seq: &FinSeq) -> FinSeq {
    FinSeq(seq.entries().iter().map(|&x| x.saturating_sub(1)).collect())
}

/// `σ * τ = ⟨σ(0), τ(0), …, σ(n), τ(n)⟩`. Both inputs must have equal length.
pub fn interleave(sigma: &FinSeq, tau: &FinSeq) -> Result<FinSeq> {
    if sigma.len() != tau.len() {
        return Err(Error::rejected(format!(
            "interleave needs equal lengths, got {} and {}",
            sigma.len(),
            tau.len()
        )));
    }
    Ok(FinSeq(
        sigma
            .entries()
            .iter()
            .zip(tau.entries())
            .flat_map(|(&a, &b)| [a, b])
            .collect(),
    ))
}

/// Whether `sigma` is a (not necessarily proper) prefix of `tau`.
pub fn is_prefix(sigma: &FinSeq, tau: &FinSeq) -> bool {
    sigma.len() <= tau.len() && tau.entries()[..sigma.len()] == *sigma.entries()
}

/// Neither sequence is a prefix of the other.
pub fn incompatible(a: &FinSeq, b: &FinSeq) -> bool {
    !is_prefix(a, b) && !is_prefix(b, a)
}
