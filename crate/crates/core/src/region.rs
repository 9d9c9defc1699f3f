use std::fmt;
use std::ops::Range;

use crate::error::{Error, Result};

/// A set of lattice sites, possibly a union of disjoint contiguous blocks.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Region {
    indices: Vec<usize>,
}

impl Region {
    /// Indices must be strictly increasing.
    pub fn new(indices: Vec<usize>) -> Result<Self> {
        if let Some(w) = indices.windows(2).find(|w| w[0] >= w[1]) {
            return Err(Error::InvalidRegion(format!(
                "indices must be strictly increasing ({} then {})",
                w[0], w[1]
            )));
        }
        Ok(Region { indices })
    }

    /// Sorts and de-duplicates arbitrary input.
    pub fn from_unsorted(mut indices: Vec<usize>) -> Self {
        indices.sort_unstable();
        indices.dedup();
        Region { indices }
    }

    /// `len` consecutive sites starting at `start`.
    pub fn interval(start: usize, len: usize) -> Self {
        Region {
            indices: (start..start + len).collect(),
        }
    }

    pub fn all(n_sites: usize) -> Self {
        Self::interval(0, n_sites)
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn contains(&self, site: usize) -> bool {
        self.indices.binary_search(&site).is_ok()
    }

    /// Maximal runs of consecutive indices.
    pub fn blocks(&self) -> Vec<Range<usize>> {
        let mut blocks = Vec::new();
        let mut iter = self.indices.iter().copied();
        let Some(first) = iter.next() else {
            return blocks;
        };
        let (mut start, mut end) = (first, first + 1);
        for i in iter {
            if i == end {
                end += 1;
            } else {
                blocks.push(start..end);
                start = i;
                end = i + 1;
            }
        }
        blocks.push(start..end);
        blocks
    }

    /// Positions `(k, k+1)` within the region whose sites are lattice neighbours
    /// inside one block.
    pub fn intra_block_bonds(&self) -> Vec<(usize, usize)> {
        self.indices
            .windows(2)
            .enumerate()
            .filter(|(_, w)| w[1] == w[0] + 1)
            .map(|(k, _)| (k, k + 1))
            .collect()
    }

    pub fn overlap(&self, other: &Region) -> Option<usize> {
        self.indices.iter().copied().find(|&i| other.contains(i))
    }

    pub fn union(&self, other: &Region) -> Region {
        let mut v = self.indices.clone();
        v.extend_from_slice(&other.indices);
        Region::from_unsorted(v)
    }

    /// Sites of `0..n_sites` not in this region.
    pub fn complement(&self, n_sites: usize) -> Region {
        Region {
            indices: (0..n_sites).filter(|&i| !self.contains(i)).collect(),
        }
    }

    pub fn is_within(&self, n_sites: usize) -> bool {
        self.indices.last().is_none_or(|&i| i < n_sites)
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .blocks()
            .iter()
            .map(|b| {
                if b.len() == 1 {
                    format!("{}", b.start)
                } else {
                    format!("{}..{}", b.start, b.end)
                }
            })
            .collect();
        write!(f, "{{{}}}", parts.join(" ∪ "))
    }
}
