//! Set partitions and noncrossing partitions of `{1..k}`.
//!
//! Everything here is brute force over restricted-growth strings (RGS): a
//! partition of `{1..k}` is encoded as labels `a_1..a_k` with `a_1 = 0` and
//! `a_{i+1} <= 1 + max(a_1..a_i)`. These counts serve as the oracle for the
//! closed forms used elsewhere in the crate.

use crate::algebra::{binomial, factorial};
use crate::error::{Error, Result};
use crate::Flavor;
use num_bigint::BigInt;
use rayon::prelude::*;
use std::collections::BTreeMap;

/// Default enumeration cap; Bell(15) is past desk scale.
pub const DEFAULT_MAX_GROUND_SIZE: usize = 14;

/// A partition of `{1..size}` in canonical form: elements sorted inside each
/// block, blocks sorted by their minimum.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Partition {
    size: usize,
    blocks: Vec<Vec<usize>>,
}

impl Partition {
    pub fn new(size: usize, mut blocks: Vec<Vec<usize>>) -> Result<Self> {
        if size == 0 {
            return Err(Error::InvalidArgument("ground size must be at least 1".into()));
        }
        let mut seen = vec![false; size + 1];
        for block in &mut blocks {
            if block.is_empty() {
                return Err(Error::InvalidArgument("empty block".into()));
            }
            block.sort_unstable();
            for &e in block.iter() {
                if e == 0 || e > size || seen[e] {
                    return Err(Error::InvalidArgument(format!(
                        "element {e} is out of range or repeated"
                    )));
                }
                seen[e] = true;
            }
        }
        if seen[1..].iter().any(|s| !s) {
            return Err(Error::InvalidArgument("blocks do not cover the ground set".into()));
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        Ok(Partition { size, blocks })
    }

    /// Decodes a restricted-growth string (labels start at 0).
    pub fn from_rgs(labels: &[u8]) -> Self {
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for (i, &l) in labels.iter().enumerate() {
            let l = l as usize;
            if l == blocks.len() {
                blocks.push(Vec::new());
            }
            blocks[l].push(i + 1);
        }
        Partition {
            size: labels.len(),
            blocks,
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(Vec::len).collect()
    }

    fn labels(&self) -> Vec<u8> {
        let mut labels = vec![0u8; self.size];
        for (b, block) in self.blocks.iter().enumerate() {
            for &e in block {
                labels[e - 1] = b as u8;
            }
        }
        labels
    }

    /// Image under `i -> i + 1 (mod size)`, re-canonicalized.
    pub fn rotate(&self) -> Self {
        let blocks = self
            .blocks
            .iter()
            .map(|b| b.iter().map(|&e| e % self.size + 1).collect())
            .collect();
        Partition::new(self.size, blocks).expect("rotation preserves validity")
    }

    pub fn is_noncrossing(&self) -> bool {
        is_noncrossing(self)
    }
}

/// True iff there are no `a < b < c < d` with `a, c` in one block and `b, d`
/// in another.
pub fn is_noncrossing(p: &Partition) -> bool {
    rgs_is_noncrossing(&p.labels())
}

/// Stack test on labels: a block may only reappear when every block opened
/// after it has already been closed.
pub(crate) fn rgs_is_noncrossing(labels: &[u8]) -> bool {
    let mut last = [0usize; 256];
    for (i, &l) in labels.iter().enumerate() {
        last[l as usize] = i;
    }
    let mut seen = [false; 256];
    let mut stack: Vec<u8> = Vec::with_capacity(labels.len());
    for (i, &l) in labels.iter().enumerate() {
        let li = l as usize;
        if seen[li] {
            if stack.last() != Some(&l) {
                return false;
            }
            if i == last[li] {
                stack.pop();
            }
        } else {
            seen[li] = true;
            if i != last[li] {
                stack.push(l);
            }
        }
    }
    true
}

/// Lazy stream of the partitions of `{1..k}` in RGS lexicographic order.
pub struct Partitions {
    labels: Vec<u8>,
    /// `maxes[i]` = max(labels[0..=i])
    maxes: Vec<u8>,
    noncrossing_only: bool,
    done: bool,
}

impl Partitions {
    fn advance(&mut self) -> bool {
        let k = self.labels.len();
        for i in (1..k).rev() {
            if self.labels[i] <= self.maxes[i - 1] {
                self.labels[i] += 1;
                self.maxes[i] = self.maxes[i - 1].max(self.labels[i]);
                for j in i + 1..k {
                    self.labels[j] = 0;
                    self.maxes[j] = self.maxes[i];
                }
                return true;
            }
        }
        false
    }
}

impl Iterator for Partitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        while !self.done {
            let current = Partition::from_rgs(&self.labels);
            let keep = !self.noncrossing_only || rgs_is_noncrossing(&self.labels);
            if !self.advance() {
                self.done = true;
            }
            if keep {
                return Some(current);
            }
        }
        None
    }
}

fn check_ground_size(k: usize, cap: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::InvalidArgument("ground size must be at least 1".into()));
    }
    if k > cap {
        return Err(Error::SizeLimit {
            requested: k,
            limit: cap,
        });
    }
    Ok(())
}

/// Every partition of `{1..k}` (or only the noncrossing ones) exactly once.
pub fn enumerate_partitions(k: usize, noncrossing_only: bool, cap: usize) -> Result<Partitions> {
    check_ground_size(k, cap.min(255))?;
    Ok(Partitions {
        labels: vec![0; k],
        maxes: vec![0; k],
        noncrossing_only,
        done: false,
    })
}

/// Pruning limits for the depth-first RGS walk.
#[derive(Clone, Copy)]
struct Limits {
    max_block: u8,
    max_blocks: u8,
}

struct Walk {
    labels: Vec<u8>,
    sizes: Vec<u8>,
}

impl Walk {
    fn extend<F: FnMut(&[u8], &[u8])>(&mut self, limits: Limits, depth: usize, leaf: &mut F) {
        if self.labels.len() == depth {
            leaf(&self.labels, &self.sizes);
            return;
        }
        let open = self.sizes.len();
        for l in 0..=open {
            if l == open {
                if open as u8 >= limits.max_blocks {
                    break;
                }
                self.sizes.push(0);
            }
            if self.sizes[l] < limits.max_block {
                self.sizes[l] += 1;
                self.labels.push(l as u8);
                self.extend(limits, depth, leaf);
                self.labels.pop();
                self.sizes[l] -= 1;
            }
            if l == open {
                self.sizes.pop();
            }
        }
    }
}

/// Walks every RGS of length `k` admissible under `limits`, splitting the
/// search on a short prefix and folding per-prefix accumulators in parallel.
/// The result is independent of how the work is split.
fn parallel_walk<T, I, V, M>(k: usize, limits: Limits, init: I, visit: V, merge: M) -> T
where
    T: Send,
    I: Fn() -> T + Sync + Send,
    V: Fn(&mut T, &[u8], &[u8]) + Sync + Send,
    M: Fn(T, T) -> T + Sync + Send,
{
    let split = k.min(6);
    let mut prefixes = Vec::new();
    Walk {
        labels: Vec::with_capacity(k),
        sizes: Vec::new(),
    }
    .extend(limits, split, &mut |l, s| prefixes.push((l.to_vec(), s.to_vec())));
    prefixes
        .into_par_iter()
        .map(|(labels, sizes)| {
            let mut acc = init();
            let mut walk = Walk { labels, sizes };
            walk.extend(limits, k, &mut |l, s| visit(&mut acc, l, s));
            acc
        })
        .reduce(&init, &merge)
}

/// Number of partitions of `{1..k}` (or noncrossing ones) for each block-size
/// type, keyed by the block sizes sorted in decreasing order.
pub fn block_type_census(k: usize, noncrossing_only: bool, cap: usize) -> Result<BTreeMap<Vec<usize>, u64>> {
    check_ground_size(k, cap.min(255))?;
    let limits = Limits {
        max_block: k as u8,
        max_blocks: k as u8,
    };
    Ok(parallel_walk(
        k,
        limits,
        BTreeMap::new,
        |acc: &mut BTreeMap<Vec<usize>, u64>, labels, sizes| {
            if noncrossing_only && !rgs_is_noncrossing(labels) {
                return;
            }
            let mut key: Vec<usize> = sizes.iter().map(|&s| s as usize).collect();
            key.sort_unstable_by(|a, b| b.cmp(a));
            *acc.entry(key).or_insert(0) += 1;
        },
        |mut a, b| {
            for (key, n) in b {
                *a.entry(key).or_insert(0) += n;
            }
            a
        },
    ))
}

/// One distinguished block of size `n` plus `k` pair blocks, on `n + 2k` points.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BlockProfile {
    pub n: usize,
    pub k: usize,
}

impl BlockProfile {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("distinguished block size must be at least 1".into()));
        }
        Ok(BlockProfile { n, k })
    }

    pub fn ground_size(&self) -> usize {
        self.n + 2 * self.k
    }
}

/// Brute-force count of the partitions matching `profile`.
///
/// The count is over (partition, distinguished block) incidences: a partition
/// is counted once for every block of size `n` it has whose complement is all
/// pairs. This only matters for `n = 2`, where every block is a candidate.
/// The classical flavor multiplies by `(n-1)!`.
pub fn count_profile(profile: BlockProfile, flavor: Flavor, cap: usize) -> Result<BigInt> {
    let BlockProfile { n, k } = profile;
    if n == 0 {
        return Err(Error::InvalidArgument("distinguished block size must be at least 1".into()));
    }
    let ground = profile.ground_size();
    check_ground_size(ground, cap.min(255))?;
    let limits = Limits {
        max_block: n.max(2) as u8,
        max_blocks: (k + 1) as u8,
    };
    let noncrossing = flavor == Flavor::Free;
    let incidences = parallel_walk(
        ground,
        limits,
        || 0u64,
        |acc, labels, sizes| {
            if sizes.len() != k + 1 {
                return;
            }
            let distinguished = sizes.iter().filter(|&&s| s as usize == n).count();
            let pairs = sizes.iter().filter(|&&s| s == 2).count();
            let matches = if n == 2 { pairs == k + 1 } else { distinguished == 1 && pairs == k };
            if matches && (!noncrossing || rgs_is_noncrossing(labels)) {
                *acc += distinguished as u64;
            }
        },
        |a, b| a + b,
    );
    let count = BigInt::from(incidences);
    Ok(match flavor {
        Flavor::Free => count,
        Flavor::Classical => count * factorial(n as u64 - 1),
    })
}

/// Noncrossing partitions of `n + 2k` points with one `n`-block and `k` pairs:
/// `C(n+2k, k)`.
pub fn kreweras_count(n: usize, k: usize) -> BigInt {
    binomial((n + 2 * k) as u64, k as u64)
}

/// `(n+2k)! / (n·k!·2^k)`: `(n-1)!` times the number of all partitions of
/// `n + 2k` points into one `n`-block and `k` pairs.
pub fn classical_profile_count(n: usize, k: usize) -> BigInt {
    factorial((n + 2 * k) as u64) / (BigInt::from(n) * factorial(k as u64) * (BigInt::from(1) << k))
}

/// Closed form of [`count_profile`].
pub fn profile_closed_form(profile: BlockProfile, flavor: Flavor) -> BigInt {
    match flavor {
        Flavor::Free => kreweras_count(profile.n, profile.k),
        Flavor::Classical => classical_profile_count(profile.n, profile.k),
    }
}
