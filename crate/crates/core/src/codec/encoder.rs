use crate::construction::PolarCodeSpec;
use crate::error::{Error, Result};

use super::BitVector;

/// Reverses the low `n` bits of `i`.
#[inline]
pub fn bit_reverse(i: usize, n: u32) -> usize {
    if n == 0 {
        0
    } else {
        i.reverse_bits() >> (usize::BITS - n)
    }
}

/// In-place Kronecker butterfly `x = v G_N` over GF(2). Self-inverse.
pub fn polar_transform(bits: &mut [u8]) {
    let len = bits.len();
    debug_assert!(len.is_power_of_two());
    let mut half = 1;
    while half < len {
        for block in bits.chunks_exact_mut(2 * half) {
            let (lo, hi) = block.split_at_mut(half);
            for (a, b) in lo.iter_mut().zip(hi.iter()) {
                *a ^= *b;
            }
        }
        half *= 2;
    }
}

/// Encodes `message` (one bit per information position, ascending index
/// order) into a codeword.
pub fn encode(code: &PolarCodeSpec, message: &[u8]) -> Result<BitVector> {
    if message.len() != code.k() {
        return Err(Error::DimensionMismatch {
            expected: code.k(),
            got: message.len(),
        });
    }
    let n = code.n();
    let mut x = vec![0u8; code.len()];
    for (&pos, &bit) in code.info_set().iter().zip(message) {
        x[bit_reverse(pos, n)] = bit & 1;
    }
    polar_transform(&mut x);
    Ok(x)
}
