use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SignatureError {
    #[error("duplicate block name {0}")]
    DuplicateBlock(String),
    #[error("unknown block {0}")]
    UnknownBlock(String),
    #[error("block {0} cannot share the frame of {1}: dimensions differ")]
    FrameMismatch(String, String),
    #[error("invalid block name {0}")]
    BadName(String),
    #[error("radial base for block {0} has no variables")]
    EmptyRadialBase(String),
    #[error("too many fermionic variables or generators (limit 64)")]
    TooLarge,
}

/// A set of Clifford-Weyl generators: m orthogonal ones and n symplectic pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Frame {
    pub m: usize,
    pub n: usize,
    pub orth_offset: usize,
    pub pair_offset: usize,
}

/// A supervector block with m bosonic and 2n fermionic variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub name: String,
    pub m: usize,
    pub n: usize,
    pub frame: usize,
    pub bos_offset: usize,
    pub ferm_offset: usize,
}

impl Block {
    /// Superdimension M = m - 2n.
    pub fn super_dim(&self) -> i64 {
        self.m as i64 - 2 * self.n as i64
    }

    pub fn bos_range(&self) -> std::ops::Range<usize> {
        self.bos_offset..self.bos_offset + self.m
    }

    pub fn ferm_range(&self) -> std::ops::Range<usize> {
        self.ferm_offset..self.ferm_offset + 2 * self.n
    }

    pub fn ferm_mask(&self) -> u64 {
        let mut mask = 0u64;
        for k in self.ferm_range() {
            mask |= 1 << k;
        }
        mask
    }
}

/// The radial base R^2 = (x0^2 if with_x0) + sum of squares of the bosonic variables of a block.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RadialSpec {
    pub block: BlockId,
    pub with_x0: bool,
}

pub type BlockId = usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Signature {
    blocks: Vec<Block>,
    frames: Vec<Frame>,
    n_bos: usize,
    n_ferm: usize,
    n_orth: usize,
    n_pairs: usize,
    radial: Option<RadialSpec>,
}

pub type Sig = Arc<Signature>;

impl Signature {
    pub fn builder() -> SignatureBuilder {
        SignatureBuilder::default()
    }

    /// A single block named `x`.
    pub fn single(m: usize, n: usize) -> Sig {
        Self::builder().block("x", m, n).build().expect("valid signature")
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn frames(&self) -> &[Frame] {
        &self.frames
    }

    pub fn block(&self, id: BlockId) -> &Block {
        &self.blocks[id]
    }

    pub fn frame_of(&self, id: BlockId) -> &Frame {
        &self.frames[self.blocks[id].frame]
    }

    pub fn block_id(&self, name: &str) -> Result<BlockId, SignatureError> {
        self.blocks.iter().position(|b| b.name == name).ok_or_else(|| SignatureError::UnknownBlock(name.to_string()))
    }

    pub fn n_bos(&self) -> usize {
        self.n_bos
    }

    pub fn n_ferm(&self) -> usize {
        self.n_ferm
    }

    pub fn n_orth(&self) -> usize {
        self.n_orth
    }

    pub fn n_pairs(&self) -> usize {
        self.n_pairs
    }

    pub fn radial(&self) -> Option<RadialSpec> {
        self.radial
    }

    /// Owner block of a bosonic variable.
    pub fn bos_owner(&self, v: usize) -> (BlockId, usize) {
        for (i, b) in self.blocks.iter().enumerate() {
            if b.bos_range().contains(&v) {
                return (i, v - b.bos_offset);
            }
        }
        panic!("bosonic variable {v} out of range")
    }

    pub fn ferm_owner(&self, v: usize) -> (BlockId, usize) {
        for (i, b) in self.blocks.iter().enumerate() {
            if b.ferm_range().contains(&v) {
                return (i, v - b.ferm_offset);
            }
        }
        panic!("fermionic variable {v} out of range")
    }

    /// Same signature with a different radial base.
    pub fn with_radial(&self, block: BlockId, with_x0: bool) -> Result<Sig, SignatureError> {
        let b = &self.blocks[block];
        if b.m == 0 && !with_x0 {
            return Err(SignatureError::EmptyRadialBase(b.name.clone()));
        }
        let mut s = self.clone();
        s.radial = Some(RadialSpec { block, with_x0 });
        Ok(Arc::new(s))
    }
}

#[derive(Default)]
pub struct SignatureBuilder {
    entries: Vec<(String, usize, usize, Option<String>)>,
    radial: Option<(String, bool)>,
}

impl SignatureBuilder {
    /// A block with its own Clifford-Weyl frame.
    pub fn block(mut self, name: &str, m: usize, n: usize) -> Self {
        self.entries.push((name.to_string(), m, n, None));
        self
    }

    /// A block whose Clifford-Weyl generators are those of `frame_of`.
    pub fn block_sharing(mut self, name: &str, frame_of: &str) -> Self {
        self.entries.push((name.to_string(), 0, 0, Some(frame_of.to_string())));
        self
    }

    pub fn radial(mut self, block: &str, with_x0: bool) -> Self {
        self.radial = Some((block.to_string(), with_x0));
        self
    }

    pub fn build(self) -> Result<Sig, SignatureError> {
        let mut sig = Signature {
            blocks: Vec::new(),
            frames: Vec::new(),
            n_bos: 0,
            n_ferm: 0,
            n_orth: 0,
            n_pairs: 0,
            radial: None,
        };
        for (name, m, n, share) in self.entries {
            if name.is_empty()
                || !name.chars().all(|c| c.is_ascii_lowercase())
                || name == "e"
                || name == "eg"
                || name.ends_with('g')
            {
                return Err(SignatureError::BadName(name));
            }
            if sig.blocks.iter().any(|b| b.name == name) {
                return Err(SignatureError::DuplicateBlock(name));
            }
            let (m, n, frame) = match share {
                None => {
                    sig.frames.push(Frame { m, n, orth_offset: sig.n_orth, pair_offset: sig.n_pairs });
                    sig.n_orth += m;
                    sig.n_pairs += n;
                    (m, n, sig.frames.len() - 1)
                }
                Some(other) => {
                    let b = sig
                        .blocks
                        .iter()
                        .find(|b| b.name == other)
                        .ok_or_else(|| SignatureError::UnknownBlock(other.clone()))?;
                    (b.m, b.n, b.frame)
                }
            };
            let f = &sig.frames[frame];
            if f.m != m || f.n != n {
                return Err(SignatureError::FrameMismatch(name, String::new()));
            }
            sig.blocks.push(Block { name, m, n, frame, bos_offset: sig.n_bos, ferm_offset: sig.n_ferm });
            sig.n_bos += m;
            sig.n_ferm += 2 * n;
        }
        if sig.n_ferm > 64 || sig.n_orth > 64 {
            return Err(SignatureError::TooLarge);
        }
        if let Some((name, with_x0)) = self.radial {
            let id = sig.block_id(&name)?;
            if sig.blocks[id].m == 0 && !with_x0 {
                return Err(SignatureError::EmptyRadialBase(name));
            }
            sig.radial = Some(RadialSpec { block: id, with_x0 });
        }
        Ok(Arc::new(sig))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn offsets_and_shared_frames() {
        let s = Signature::builder().block("x", 2, 1).block_sharing("w", "x").block("y", 1, 2).build().unwrap();
        assert_eq!(s.frames().len(), 2);
        let w = s.block(s.block_id("w").unwrap());
        assert_eq!((w.bos_offset, w.ferm_offset, w.frame), (2, 2, 0));
        let y = s.block(s.block_id("y").unwrap());
        assert_eq!((y.bos_offset, y.ferm_offset, y.frame), (4, 4, 1));
        assert_eq!(s.frame_of(2).orth_offset, 2);
        assert_eq!(s.n_pairs(), 3);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(Signature::builder().block("x", 1, 0).block("x", 1, 0).build().is_err());
        assert!(Signature::builder().block_sharing("w", "x").build().is_err());
        assert!(Signature::builder().block("x", 0, 1).radial("x", false).build().is_err());
        assert!(Signature::builder().block("xg", 1, 0).build().is_err());
    }
}
