//! Canonical set partitions of `[1, 2k]`, the refinement lattice, Möbius
//! values, concatenation, and enumeration.
//!
//! Vertices `1..=k` form the bottom row and `k+1..=2k` the top row. A
//! partition is stored in *standard labeling*: blocks are numbered in order
//! of their smallest element (block 1 contains vertex 1, block 2 the
//! smallest vertex outside block 1, and so on), and the label sequence —
//! block index of vertex 1, 2, …, 2k, zero-based — is then a restricted
//! growth string. Two values are equal exactly when their label sequences
//! are equal, so the representation is canonical.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::PaError;

/// A set partition of `[1, 2k]` in canonical restricted-growth form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SetPartition {
    k: usize,
    labels: Vec<u32>,
}

impl PartialOrd for SetPartition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SetPartition {
    /// Lexicographic on `(k, labels)` — the canonical order used everywhere
    /// (enumeration, term maps, JSON output).
    fn cmp(&self, other: &Self) -> Ordering {
        self.k
            .cmp(&other.k)
            .then_with(|| self.labels.cmp(&other.labels))
    }
}

/// Result of concatenating π1 over π2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConcatResult {
    /// Whether the bottom-row restriction of π1 equals the top-row
    /// restriction of π2 (shifted down by k) — "exactly matches in the
    /// middle".
    pub matches: bool,
    /// The set partition π1 ∗ π2.
    pub product: SetPartition,
    /// Number of connected components deleted from the middle row — the
    /// exponent of ξ in the diagram product.
    pub removed: usize,
    /// Blocks of π1 lying entirely in its top row (vertex lists, ascending).
    /// These survive unchanged as blocks of the product.
    pub top_only_blocks: Vec<Vec<usize>>,
    /// Blocks of π2 lying entirely in its bottom row (vertex lists,
    /// ascending). These survive unchanged as blocks of the product.
    pub bottom_only_blocks: Vec<Vec<usize>>,
}

/// Algebra level: integer k, or the half-integer k + 1/2.
///
/// A `Half(k)` element is stored as a partition with parameter `k + 1` whose
/// labels place vertices `k+1` and `2(k+1)` in the same block.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Level {
    Integer(usize),
    Half(usize),
}

impl Level {
    /// The partition parameter used for storage: `k` for `Integer(k)`,
    /// `k + 1` for `Half(k)`.
    pub fn storage_k(self) -> usize {
        match self {
            Level::Integer(k) => k,
            Level::Half(k) => k + 1,
        }
    }

    pub fn is_half(self) -> bool {
        matches!(self, Level::Half(_))
    }

    /// Validates the level parameter: integer levels require `k ≥ 1`;
    /// half levels allow `k ≥ 0` (level 1/2 is the smallest).
    pub fn validate(self) -> Result<(), PaError> {
        match self {
            Level::Integer(0) => Err(PaError::domain("integer level requires k >= 1")),
            _ => Ok(()),
        }
    }

    /// Whether `pi` is a basis partition at this level.
    pub fn contains(self, pi: &SetPartition) -> bool {
        let kk = self.storage_k();
        if pi.k() != kk {
            return false;
        }
        match self {
            Level::Integer(_) => true,
            Level::Half(_) => pi.label_of(kk) == pi.label_of(2 * kk),
        }
    }

    /// The number of basis partitions at this level: Bell(2k) for
    /// `Integer(k)`, Bell(2k+1) for `Half(k)`.
    pub fn dimension(self) -> BigInt {
        match self {
            Level::Integer(k) => bell(2 * k),
            Level::Half(k) => bell(2 * k + 1),
        }
    }
}

impl fmt::Display for Level {
    /// `"3"` for `Integer(3)`, `"5/2"` for `Half(2)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Level::Integer(k) => write!(f, "{k}"),
            Level::Half(k) => write!(f, "{}/2", 2 * k + 1),
        }
    }
}

impl FromStr for Level {
    type Err = PaError;

    fn from_str(s: &str) -> Result<Self, PaError> {
        let s = s.trim();
        let bad = || PaError::BadLevel(s.to_string());
        let level = match s.split_once('/') {
            None => Level::Integer(s.parse().map_err(|_| bad())?),
            Some((num, den)) => {
                let num: usize = num.trim().parse().map_err(|_| bad())?;
                if den.trim() != "2" || num % 2 == 0 {
                    return Err(bad());
                }
                Level::Half(num / 2)
            }
        };
        level.validate().map_err(|_| bad())?;
        Ok(level)
    }
}

impl Serialize for Level {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Level {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(DeError::custom)
    }
}

impl SetPartition {
    /// Builds the canonical partition of `[1, 2k]` from a list of blocks.
    ///
    /// The blocks must be disjoint, nonempty, and cover `[1, 2k]` exactly;
    /// block order and within-block order are irrelevant.
    pub fn from_blocks(k: usize, blocks: &[Vec<usize>]) -> Result<Self, PaError> {
        let n = 2 * k;
        let mut block_of = vec![usize::MAX; n + 1];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(bad_partition(blocks, "empty block"));
            }
            for &v in block {
                if v == 0 || v > n {
                    return Err(bad_partition(
                        blocks,
                        format!("vertex {v} outside [1, {n}]"),
                    ));
                }
                if block_of[v] != usize::MAX {
                    return Err(bad_partition(blocks, format!("vertex {v} repeated")));
                }
                block_of[v] = b;
            }
        }
        if let Some(v) = (1..=n).find(|&v| block_of[v] == usize::MAX) {
            return Err(bad_partition(blocks, format!("vertex {v} missing")));
        }
        // standard labeling: relabel blocks by order of first appearance
        let mut relabel = vec![u32::MAX; blocks.len()];
        let mut next = 0u32;
        let mut labels = Vec::with_capacity(n);
        for v in 1..=n {
            let b = block_of[v];
            if relabel[b] == u32::MAX {
                relabel[b] = next;
                next += 1;
            }
            labels.push(relabel[b]);
        }
        Ok(SetPartition { k, labels })
    }

    /// Builds a partition directly from a restricted-growth label sequence
    /// of length `2k` (zero-based block indices in first-appearance order).
    pub fn from_labels(k: usize, labels: Vec<u32>) -> Result<Self, PaError> {
        if labels.len() != 2 * k {
            return Err(PaError::domain(format!(
                "label sequence has length {}, expected {}",
                labels.len(),
                2 * k
            )));
        }
        let mut max_seen: i64 = -1;
        for &l in &labels {
            if i64::from(l) > max_seen + 1 {
                return Err(PaError::domain(
                    "label sequence violates restricted growth".to_string(),
                ));
            }
            max_seen = max_seen.max(i64::from(l));
        }
        Ok(SetPartition { k, labels })
    }

    /// The identity partition `{1, k+1 | 2, k+2 | … | k, 2k}`.
    pub fn identity(k: usize) -> Self {
        let mut labels = Vec::with_capacity(2 * k);
        for _ in 0..2 {
            labels.extend(0..k as u32);
        }
        SetPartition { k, labels }
    }

    /// The partition of `[1, 2k]` into singletons.
    pub fn singletons(k: usize) -> Self {
        SetPartition {
            k,
            labels: (0..2 * k as u32).collect(),
        }
    }

    /// The permutation partition `{i, k + σ(i)}` for a permutation σ of
    /// `[1, k]` given in one-line notation (`sigma[i-1] = σ(i)`).
    pub fn permutation(k: usize, sigma: &[usize]) -> Result<Self, PaError> {
        check_permutation(sigma, k)?;
        let blocks: Vec<Vec<usize>> = (1..=k).map(|i| vec![i, k + sigma[i - 1]]).collect();
        SetPartition::from_blocks(k, &blocks)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of vertices, `2k`.
    pub fn size(&self) -> usize {
        2 * self.k
    }

    /// The zero-based block label of vertex `v` (1-based).
    pub fn label_of(&self, v: usize) -> u32 {
        self.labels[v - 1]
    }

    /// The label sequence (restricted growth string).
    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    /// Number of blocks, `|π|`.
    pub fn num_blocks(&self) -> usize {
        self.labels.iter().copied().max().map_or(0, |m| m as usize + 1)
    }

    /// Blocks as ascending vertex lists, in standard-label order.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.num_blocks()];
        for (i, &l) in self.labels.iter().enumerate() {
            out[l as usize].push(i + 1);
        }
        out
    }

    /// True iff every block of `self` is contained in a block of `rho`.
    pub fn refines(&self, rho: &SetPartition) -> Result<bool, PaError> {
        if self.k != rho.k {
            return Err(PaError::LevelMismatch(
                self.k.to_string(),
                rho.k.to_string(),
            ));
        }
        let mut image = vec![u32::MAX; self.num_blocks()];
        for (i, &l) in self.labels.iter().enumerate() {
            let target = rho.labels[i];
            if image[l as usize] == u32::MAX {
                image[l as usize] = target;
            } else if image[l as usize] != target {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// All coarsenings ϱ ⪰ π, in canonical (lexicographic label) order.
    /// Their number is Bell(|π|).
    pub fn coarsenings(&self) -> Vec<SetPartition> {
        let m = self.num_blocks();
        let mut out = Vec::new();
        let mut g = vec![0u32; m];
        loop {
            let labels: Vec<u32> = self.labels.iter().map(|&l| g[l as usize]).collect();
            out.push(SetPartition {
                k: self.k,
                labels,
            });
            if !next_rgs(&mut g) {
                break;
            }
        }
        // composing with the lexicographic restricted-growth enumeration
        // already yields lexicographic output; sort defensively anyway
        out.sort();
        out
    }

    /// The Möbius value μ(π, ϱ) of the partition lattice: over each block of
    /// ϱ that is a union of b blocks of π, a factor (−1)^(b−1) (b−1)!.
    pub fn mobius(&self, rho: &SetPartition) -> Result<BigInt, PaError> {
        if !self.refines(rho)? {
            return Err(PaError::domain(
                "mobius requires the first argument to refine the second",
            ));
        }
        let mut counted = vec![false; self.num_blocks()];
        let mut union_count = vec![0usize; rho.num_blocks()];
        for (i, &l) in self.labels.iter().enumerate() {
            if !counted[l as usize] {
                counted[l as usize] = true;
                union_count[rho.labels[i] as usize] += 1;
            }
        }
        let mut acc = BigInt::one();
        for b in union_count {
            let mut factor = crate::scalar::factorial(b - 1);
            if (b - 1) % 2 == 1 {
                factor = -factor;
            }
            acc *= factor;
        }
        Ok(acc)
    }

    /// The number of blocks meeting both rows.
    pub fn propagating_number(&self) -> usize {
        let k = self.k;
        let nb = self.num_blocks();
        let mut bottom = vec![false; nb];
        let mut top = vec![false; nb];
        for v in 1..=k {
            bottom[self.label_of(v) as usize] = true;
        }
        for v in k + 1..=2 * k {
            top[self.label_of(v) as usize] = true;
        }
        (0..nb).filter(|&b| bottom[b] && top[b]).count()
    }

    /// Restriction of π to its bottom row as a partition of `[1, k]`
    /// (canonical labels).
    fn bottom_restriction_labels(&self) -> Vec<u32> {
        canonical_relabel(&self.labels[..self.k])
    }

    /// Restriction of π to its top row, shifted down to `[1, k]`.
    fn top_restriction_labels(&self) -> Vec<u32> {
        canonical_relabel(&self.labels[self.k..])
    }

    /// Concatenates `self` (above) with `other` (below): identifies the
    /// bottom row of `self` with the top row of `other`, deletes connected
    /// components lying wholly in the middle, and reports the bookkeeping
    /// needed by both multiplication rules.
    pub fn concat(&self, other: &SetPartition) -> Result<ConcatResult, PaError> {
        if self.k != other.k {
            return Err(PaError::LevelMismatch(
                self.k.to_string(),
                other.k.to_string(),
            ));
        }
        let k = self.k;
        // slots: 0..k bottom of the result (other's bottom row),
        //        k..2k the identified middle row,
        //        2k..3k top of the result (self's top row)
        let mut dsu = Dsu::new(3 * k);
        let self_slot = |v: usize| if v <= k { k + (v - 1) } else { 2 * k + (v - k - 1) };
        let other_slot = |v: usize| if v <= k { v - 1 } else { k + (v - k - 1) };
        let join = |slots: &mut Dsu, mapped: Vec<usize>| {
            for w in mapped.windows(2) {
                slots.union(w[0], w[1]);
            }
        };
        for block in self.blocks() {
            join(&mut dsu, block.iter().map(|&v| self_slot(v)).collect());
        }
        for block in other.blocks() {
            join(&mut dsu, block.iter().map(|&v| other_slot(v)).collect());
        }
        // classify components
        let mut comp_has_exterior = BTreeMap::new();
        for slot in 0..3 * k {
            let root = dsu.find(slot);
            let entry = comp_has_exterior.entry(root).or_insert(false);
            if slot < k || slot >= 2 * k {
                *entry = true;
            }
        }
        let removed = comp_has_exterior.values().filter(|&&ext| !ext).count();
        // result partition on the exterior slots
        let mut blocks_map: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for v in 1..=2 * k {
            let slot = if v <= k { v - 1 } else { 2 * k + (v - k - 1) };
            blocks_map.entry(dsu.find(slot)).or_default().push(v);
        }
        let blocks: Vec<Vec<usize>> = blocks_map.into_values().collect();
        let product = SetPartition::from_blocks(k, &blocks)?;
        let matches = self.bottom_restriction_labels() == other.top_restriction_labels();
        let top_only_blocks = self
            .blocks()
            .into_iter()
            .filter(|b| b.iter().all(|&v| v > k))
            .collect();
        let bottom_only_blocks = other
            .blocks()
            .into_iter()
            .filter(|b| b.iter().all(|&v| v <= k))
            .collect();
        Ok(ConcatResult {
            matches,
            product,
            removed,
            top_only_blocks,
            bottom_only_blocks,
        })
    }

    /// Relabels bottom vertex `i` to `sigma_bottom(i)` and top vertex `k+i`
    /// to `k + sigma_top(i)`, then re-canonicalizes. Both permutations are
    /// one-line arrays over `[1, k]`.
    pub fn permute(
        &self,
        sigma_top: &[usize],
        sigma_bottom: &[usize],
    ) -> Result<SetPartition, PaError> {
        let k = self.k;
        check_permutation(sigma_top, k)?;
        check_permutation(sigma_bottom, k)?;
        let blocks: Vec<Vec<usize>> = self
            .blocks()
            .into_iter()
            .map(|block| {
                block
                    .into_iter()
                    .map(|v| {
                        if v <= k {
                            sigma_bottom[v - 1]
                        } else {
                            k + sigma_top[v - k - 1]
                        }
                    })
                    .collect()
            })
            .collect();
        SetPartition::from_blocks(k, &blocks)
    }

    /// The coarsening obtained by merging the listed pairs of blocks
    /// (given by their standard labels) and re-canonicalizing.
    pub fn merge_blocks(&self, pairs: &[(u32, u32)]) -> SetPartition {
        let mut dsu = Dsu::new(self.num_blocks());
        for &(a, b) in pairs {
            dsu.union(a as usize, b as usize);
        }
        let merged: Vec<u32> = self
            .labels
            .iter()
            .map(|&l| dsu.find(l as usize) as u32)
            .collect();
        SetPartition {
            k: self.k,
            labels: canonical_relabel(&merged),
        }
    }

    /// Rook partitions: all blocks of size ≤ 2, and every 2-block crosses
    /// rows. Equivalently pn(π) + |π| = 2k.
    pub fn is_rook(&self) -> bool {
        self.blocks().iter().all(|b| match b.len() {
            1 => true,
            2 => b[0] <= self.k && b[1] > self.k,
            _ => false,
        })
    }

    /// Permutation partitions: k blocks of size 2, each crossing rows.
    pub fn is_permutation(&self) -> bool {
        self.num_blocks() == self.k && self.is_rook()
    }
}

fn bad_partition(blocks: &[Vec<usize>], reason: impl Into<String>) -> PaError {
    let rendered: Vec<String> = blocks
        .iter()
        .map(|b| {
            b.iter()
                .map(usize::to_string)
                .collect::<Vec<_>>()
                .join(",")
        })
        .collect();
    PaError::BadPartition {
        input: rendered.join("|"),
        reason: reason.into(),
    }
}

pub(crate) fn check_permutation(sigma: &[usize], k: usize) -> Result<(), PaError> {
    if sigma.len() != k {
        return Err(PaError::domain(format!(
            "permutation has length {}, expected {k}",
            sigma.len()
        )));
    }
    let mut seen = vec![false; k + 1];
    for &s in sigma {
        if s == 0 || s > k || seen[s] {
            return Err(PaError::domain("input is not a permutation"));
        }
        seen[s] = true;
    }
    Ok(())
}

/// Canonical restricted-growth relabeling of an arbitrary label slice.
fn canonical_relabel(labels: &[u32]) -> Vec<u32> {
    let mut map = BTreeMap::new();
    let mut next = 0u32;
    labels
        .iter()
        .map(|&l| {
            *map.entry(l).or_insert_with(|| {
                let v = next;
                next += 1;
                v
            })
        })
        .collect()
}

/// Advances a restricted-growth string to its lexicographic successor;
/// returns false after the last one (all strings of the given length are
/// visited starting from all zeros).
fn next_rgs(g: &mut [u32]) -> bool {
    let m = g.len();
    for i in (1..m).rev() {
        let max_prefix = g[..i].iter().copied().max().unwrap_or(0);
        if g[i] <= max_prefix {
            g[i] += 1;
            for x in &mut g[i + 1..] {
                *x = 0;
            }
            return true;
        }
    }
    false
}

/// All basis partitions at the level, in canonical order.
///
/// `Integer(k)` yields all Bell(2k) partitions of `[1, 2k]`; `Half(k)`
/// yields the Bell(2k+1) partitions of `[1, 2(k+1)]` whose blocks join
/// vertices `k+1` and `2(k+1)`.
pub fn enumerate(level: Level) -> Vec<SetPartition> {
    let kk = level.storage_k();
    let m = 2 * kk;
    if m == 0 {
        return vec![];
    }
    let mut out = Vec::new();
    let mut g = vec![0u32; m];
    loop {
        let keep = match level {
            Level::Integer(_) => true,
            Level::Half(_) => g[kk - 1] == g[m - 1],
        };
        if keep {
            out.push(SetPartition {
                k: kk,
                labels: g.clone(),
            });
        }
        if !next_rgs(&mut g) {
            break;
        }
    }
    out
}

/// The Bell number B(m), via the Bell triangle.
pub fn bell(m: usize) -> BigInt {
    let mut row = vec![BigInt::one()];
    for _ in 0..m {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(row.last().unwrap().clone());
        for v in &row {
            let last: BigInt = next.last().unwrap() + v;
            next.push(last);
        }
        row = next;
    }
    row[0].clone()
}

/// Stirling numbers of the second kind S(m, j).
pub fn stirling2(m: usize, j: usize) -> BigInt {
    if j > m {
        return BigInt::zero();
    }
    if m == 0 {
        return BigInt::one(); // S(0,0)
    }
    if j == 0 {
        return BigInt::zero();
    }
    // S(m, j) = j S(m−1, j) + S(m−1, j−1)
    let mut prev = vec![BigInt::zero(); m + 1];
    prev[0] = BigInt::one();
    for row in 1..=m {
        let mut cur = vec![BigInt::zero(); m + 1];
        for col in 1..=row {
            cur[col] = BigInt::from(col) * &prev[col] + &prev[col - 1];
        }
        prev = cur;
    }
    prev[j].clone()
}

/// Number of partitions of an m-element set with at most `n` blocks:
/// Σ_{j ≤ n} S(m, j).
pub fn count_partitions_max_blocks(m: usize, n: usize) -> BigInt {
    (0..=n.min(m)).map(|j| stirling2(m, j)).sum()
}

/// Minimal union–find over `0..len`.
struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn new(len: usize) -> Self {
        Dsu {
            parent: (0..len).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

impl fmt::Display for SetPartition {
    /// Blocks joined by `|`, vertices comma-separated, canonical order,
    /// e.g. `1,4|2|3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rendered: Vec<String> = self
            .blocks()
            .iter()
            .map(|b| {
                b.iter()
                    .map(usize::to_string)
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect();
        write!(f, "{}", rendered.join("|"))
    }
}

impl fmt::Debug for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{self}}}")
    }
}

impl FromStr for SetPartition {
    type Err = PaError;

    /// Parses the block grammar `1,4|2|3` (whitespace ignored; block and
    /// vertex order free). The parameter k is inferred from the largest
    /// vertex, which must be even and fully covered.
    fn from_str(s: &str) -> Result<Self, PaError> {
        let bad = |reason: &str| PaError::BadPartition {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let mut blocks = Vec::new();
        let mut max_v = 0usize;
        for chunk in s.split('|') {
            let mut block = Vec::new();
            for item in chunk.split(',') {
                let item = item.trim();
                if item.is_empty() {
                    return Err(bad("empty vertex entry"));
                }
                let v: usize = item.parse().map_err(|_| bad("vertex is not a number"))?;
                max_v = max_v.max(v);
                block.push(v);
            }
            blocks.push(block);
        }
        if max_v == 0 || max_v % 2 != 0 {
            return Err(bad("largest vertex must be a positive even number 2k"));
        }
        SetPartition::from_blocks(max_v / 2, &blocks)
    }
}

impl Serialize for SetPartition {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for SetPartition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(DeError::custom)
    }
}
