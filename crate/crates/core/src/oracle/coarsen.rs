//! Enumeration of the coarsenings `Π↑` of a base partition.

use crate::error::{Error, Result};
use crate::instance::Partition;

/// Largest base partition whose coarsenings are enumerated (Bell(9) = 21147).
pub const MAX_BLOCKS: usize = 9;

/// All set partitions of `0..k` as restricted growth strings, in
/// lexicographic order. Each item is a label per element; labels are
/// `0..groups`.
#[derive(Debug, Clone)]
pub struct SetPartitions {
    labels: Vec<usize>,
    /// `prefix_max[i]` is the largest label among `labels[..=i]`.
    prefix_max: Vec<usize>,
    started: bool,
    done: bool,
}

impl SetPartitions {
    pub fn new(k: usize) -> Self {
        SetPartitions {
            labels: vec![0; k],
            prefix_max: vec![0; k],
            started: false,
            done: false,
        }
    }
}

impl Iterator for SetPartitions {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(self.labels.clone());
        }
        let k = self.labels.len();
        let Some(i) = (1..k).rev().find(|&i| self.labels[i] <= self.prefix_max[i - 1]) else {
            self.done = true;
            return None;
        };
        self.labels[i] += 1;
        self.prefix_max[i] = self.prefix_max[i - 1].max(self.labels[i]);
        for j in i + 1..k {
            self.labels[j] = 0;
            self.prefix_max[j] = self.prefix_max[i];
        }
        Some(self.labels.clone())
    }
}

/// Number of groups in a restricted growth string.
pub fn group_count(labels: &[usize]) -> usize {
    labels.iter().max().map_or(0, |m| m + 1)
}

/// Merges the blocks of `base` according to `labels`.
pub fn coarsen(base: &Partition, labels: &[usize]) -> Partition {
    let mut blocks = vec![Vec::new(); group_count(labels)];
    for (block, &g) in base.blocks().iter().zip(labels) {
        blocks[g].extend_from_slice(block);
    }
    Partition::from_blocks(blocks).expect("merging blocks keeps a partition")
}

/// Every partition obtained by merging blocks of `base`, each exactly once.
/// The single-block partition comes first and `base` itself last.
pub fn enumerate_coarsenings(base: &Partition) -> Result<impl Iterator<Item = Partition> + '_> {
    if base.len() > MAX_BLOCKS {
        return Err(Error::TooManyBlocks {
            blocks: base.len(),
            cap: MAX_BLOCKS,
        });
    }
    Ok(SetPartitions::new(base.len()).map(move |labels| coarsen(base, &labels)))
}
