use crate::construction::PolarCodeSpec;
use crate::error::{Error, Result};

use super::encoder::bit_reverse;
use super::llr::{boxplus, Llr};
use super::BitVector;

/// Result of one SC pass.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScOutput {
    /// Decided information bits in ascending position order.
    pub message: BitVector,
    /// All decided input bits, indexed like the information set.
    pub u_hat: BitVector,
}

/// Successive-cancellation decoder with an `O(N)` workspace reused across
/// blocks.
///
/// Node buffers of size `s` live at `[s, 2s)` of the LLR and partial-sum
/// workspaces; only one node per size is active along the recursion path.
#[derive(Debug, Clone)]
pub struct ScDecoder {
    n: u32,
    /// `frozen[j]` for `v`-order position `j`.
    frozen: Vec<bool>,
    info_set: Vec<usize>,
    llr: Vec<Llr>,
    sums: Vec<u8>,
    /// Leaf LLR of each input bit, `u` order.
    leaf: Vec<Llr>,
    u_hat: Vec<u8>,
    #[cfg(debug_assertions)]
    stage_ops: Vec<usize>,
}

impl ScDecoder {
    pub fn new(code: &PolarCodeSpec) -> Self {
        let n = code.n();
        let len = code.len();
        let mask = code.info_mask();
        let frozen = (0..len).map(|j| !mask[bit_reverse(j, n)]).collect();
        ScDecoder {
            n,
            frozen,
            info_set: code.info_set().to_vec(),
            llr: vec![0.0; 2 * len],
            sums: vec![0; 2 * len],
            leaf: vec![0.0; len],
            u_hat: vec![0; len],
            #[cfg(debug_assertions)]
            stage_ops: vec![0; n as usize + 1],
        }
    }

    /// Decoder that treats every position as frozen to 0, so each bit
    /// channel sees correct previous decisions on all-zero transmissions.
    pub fn genie(n: u32) -> Self {
        let len = 1usize << n;
        ScDecoder {
            n,
            frozen: vec![true; len],
            info_set: Vec::new(),
            llr: vec![0.0; 2 * len],
            sums: vec![0; 2 * len],
            leaf: vec![0.0; len],
            u_hat: vec![0; len],
            #[cfg(debug_assertions)]
            stage_ops: vec![0; n as usize + 1],
        }
    }

    pub fn len(&self) -> usize {
        1 << self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Leaf LLRs of the last pass, indexed by input bit.
    pub fn leaf_llrs(&self) -> &[Llr] {
        &self.leaf
    }

    /// Runs SC on `channel` and returns the decisions.
    pub fn decode(&mut self, channel: &[Llr]) -> Result<ScOutput> {
        self.run(channel)?;
        let message = self.info_set.iter().map(|&i| self.u_hat[i]).collect();
        Ok(ScOutput {
            message,
            u_hat: self.u_hat.clone(),
        })
    }

    /// Runs SC without collecting outputs; results are read through
    /// [`leaf_llrs`](Self::leaf_llrs) and [`decided_bits`](Self::decided_bits).
    pub fn run(&mut self, channel: &[Llr]) -> Result<()> {
        let len = self.len();
        if channel.len() != len {
            return Err(Error::DimensionMismatch {
                expected: len,
                got: channel.len(),
            });
        }
        debug_assert!(channel.iter().all(|l| !l.is_nan()));
        self.llr[len..].copy_from_slice(channel);
        #[cfg(debug_assertions)]
        self.stage_ops.iter_mut().for_each(|c| *c = 0);
        self.node(len, 0);
        #[cfg(debug_assertions)]
        for (stage, &ops) in self.stage_ops.iter().enumerate().skip(1) {
            debug_assert_eq!(ops, len, "stage {stage} consumed {ops} LLRs");
        }
        Ok(())
    }

    /// Input-bit decisions of the last pass.
    pub fn decided_bits(&self) -> &[u8] {
        &self.u_hat
    }

    fn node(&mut self, size: usize, v_offset: usize) {
        if size == 1 {
            let l = self.llr[1];
            let u = bit_reverse(v_offset, self.n);
            self.leaf[u] = l;
            let bit = if self.frozen[v_offset] { 0 } else { (l < 0.0) as u8 };
            self.u_hat[u] = bit;
            self.sums[1] = bit;
            return;
        }
        let half = size / 2;
        {
            let (lower, upper) = self.llr.split_at_mut(size);
            let (a, b) = upper[..size].split_at(half);
            for ((out, &x), &y) in lower[half..].iter_mut().zip(a).zip(b) {
                *out = boxplus(x, y);
            }
        }
        self.count(size, half);
        self.node(half, v_offset);

        // park the left child's partial sums in this node's first half
        self.sums.copy_within(half..size, size);
        {
            let (lower, upper) = self.llr.split_at_mut(size);
            let (a, b) = upper[..size].split_at(half);
            let left = &self.sums[size..size + half];
            for (((out, &x), &y), &s) in lower[half..].iter_mut().zip(a).zip(b).zip(left) {
                *out = if s == 0 { y + x } else { y - x };
            }
        }
        self.count(size, half);
        self.node(half, v_offset + half);

        let (lower, upper) = self.sums.split_at_mut(size);
        let right = &lower[half..size];
        let (first, second) = upper[..size].split_at_mut(half);
        for ((f, s), &r) in first.iter_mut().zip(second.iter_mut()).zip(right) {
            *f ^= r;
            *s = r;
        }
    }

    #[inline]
    fn count(&mut self, _size: usize, _ops: usize) {
        #[cfg(debug_assertions)]
        {
            let stage = _size.trailing_zeros() as usize;
            self.stage_ops[stage] += _ops;
        }
    }
}
