//! The tensor-space representation Φ_{k,n}: P_k(n) → End(M_n^⊗k), its
//! half-integer analogue, kernels, ranks, and commutant checks.
//!
//! M_n is the n-dimensional permutation module with basis u_1, …, u_n, and
//! M_n^⊗k has basis {u_r = u_{r_1} ⊗ ⋯ ⊗ u_{r_k} | r ∈ [1,n]^k}.  Matrices
//! follow the matrix-unit convention E_r^{r′} u_t = δ_{r,t} u_{r′}: the
//! column index is the bottom-row tuple r (input), the row index is the
//! top-row tuple r′ (output).
//!
//! On the orbit basis, Φ_{k,n}(x_π) is the 0/1 matrix with an entry at
//! (r′, r) exactly when the combined tuple (r | r′) is constant on the blocks
//! of π and takes distinct values on distinct blocks; on the diagram basis
//! the distinctness requirement is dropped.  In particular Φ_{k,n}(x_π) = 0
//! whenever π has more than n blocks, and those x_π span the kernel.

use std::collections::BTreeMap;
use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::de::Error as DeError;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::algebra::{AlgebraElement, Basis, Coeff, XiSpec};
use crate::report::VerificationReport;
use crate::scalar::Scalar;
use crate::setpart::{check_permutation, enumerate, Level, SetPartition};
use crate::PaError;

/// A sparse matrix acting on M_n^⊗k, indexed by tuples in [1,n]^k.
///
/// Tuples are stored as mixed-radix codes in [0, n^k) with the first tuple
/// coordinate most significant, so code order equals lexicographic tuple
/// order.  No zero entries are stored.
#[derive(Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    n: usize,
    k: usize,
    entries: BTreeMap<(usize, usize), Scalar>,
}

/// Encodes a tuple in [1,n]^k as a mixed-radix code in [0, n^k).
pub fn encode_tuple(n: usize, k: usize, tuple: &[usize]) -> Result<usize, PaError> {
    if tuple.len() != k {
        return Err(PaError::domain(format!(
            "tuple has length {}, expected {k}",
            tuple.len()
        )));
    }
    let mut code = 0usize;
    for &t in tuple {
        if t == 0 || t > n {
            return Err(PaError::domain(format!(
                "tuple entry {t} is outside [1, {n}]"
            )));
        }
        code = code * n + (t - 1);
    }
    Ok(code)
}

/// Decodes a mixed-radix code back into a tuple in [1,n]^k.
pub fn decode_tuple(n: usize, k: usize, mut code: usize) -> Vec<usize> {
    let mut tuple = vec![1usize; k];
    for i in (0..k).rev() {
        tuple[i] = code % n + 1;
        code /= n;
    }
    tuple
}

impl SparseMatrix {
    /// The zero matrix on M_n^⊗k.
    pub fn new(n: usize, k: usize) -> Result<Self, PaError> {
        if n == 0 {
            return Err(PaError::domain("matrix dimension parameter n must be >= 1"));
        }
        Ok(SparseMatrix {
            n,
            k,
            entries: BTreeMap::new(),
        })
    }

    /// The identity on M_n^⊗k.
    pub fn identity(n: usize, k: usize) -> Result<Self, PaError> {
        let mut m = SparseMatrix::new(n, k)?;
        for code in 0..m.dim() {
            m.entries.insert((code, code), Scalar::one());
        }
        Ok(m)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Side length n^k.
    pub fn dim(&self) -> usize {
        self.n.pow(self.k as u32)
    }

    /// Number of stored (nonzero) entries.
    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// The entry at (row, col) codes; zero if absent.
    pub fn get(&self, row: usize, col: usize) -> Scalar {
        self.entries
            .get(&(row, col))
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }

    /// Iterates entries in (row, col) code order.
    pub fn iter(&self) -> impl Iterator<Item = (&(usize, usize), &Scalar)> {
        self.entries.iter()
    }

    /// Adds `val` into the entry at (row, col), pruning a resulting zero.
    pub fn add_to(&mut self, row: usize, col: usize, val: &Scalar) {
        if val.is_zero() {
            return;
        }
        let dim = self.dim();
        debug_assert!(row < dim && col < dim);
        let slot = self.entries.entry((row, col)).or_insert_with(Scalar::zero);
        *slot = slot.clone() + val.clone();
        if slot.is_zero() {
            self.entries.remove(&(row, col));
        }
    }

    fn check_shape(&self, other: &SparseMatrix) -> Result<(), PaError> {
        if self.n != other.n || self.k != other.k {
            return Err(PaError::domain(format!(
                "matrix shape mismatch: (n={}, k={}) vs (n={}, k={})",
                self.n, self.k, other.n, other.k
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &SparseMatrix) -> Result<SparseMatrix, PaError> {
        self.check_shape(other)?;
        let mut out = self.clone();
        for (&(r, c), v) in &other.entries {
            out.add_to(r, c, v);
        }
        Ok(out)
    }

    pub fn scale(&self, s: &Scalar) -> SparseMatrix {
        let mut out = SparseMatrix {
            n: self.n,
            k: self.k,
            entries: BTreeMap::new(),
        };
        if s.is_zero() {
            return out;
        }
        for (&key, v) in &self.entries {
            out.entries.insert(key, v.clone() * s.clone());
        }
        out
    }

    /// Matrix product; (AB)(r′, r) = Σ_q A(r′, q) B(q, r).
    pub fn mul(&self, other: &SparseMatrix) -> Result<SparseMatrix, PaError> {
        self.check_shape(other)?;
        // index the right factor by its row code
        let mut by_row: BTreeMap<usize, Vec<(usize, &Scalar)>> = BTreeMap::new();
        for (&(q, c), v) in &other.entries {
            by_row.entry(q).or_default().push((c, v));
        }
        let mut out = SparseMatrix::new(self.n, self.k)?;
        for (&(r, q), a) in &self.entries {
            if let Some(row) = by_row.get(&q) {
                for &(c, b) in row {
                    out.add_to(r, c, &(a.clone() * b.clone()));
                }
            }
        }
        Ok(out)
    }
}

impl fmt::Debug for SparseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SparseMatrix(n={}, k={}, nnz={})", self.n, self.k, self.nnz())
    }
}

/// Dense grid for side length n^k ≤ 64; sparse entry listing otherwise.
impl fmt::Display for SparseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dim = self.dim();
        if dim <= 64 {
            // column widths for alignment
            let cells: Vec<Vec<String>> = (0..dim)
                .map(|r| (0..dim).map(|c| self.get(r, c).to_string()).collect())
                .collect();
            let mut widths = vec![1usize; dim];
            for row in &cells {
                for (c, cell) in row.iter().enumerate() {
                    widths[c] = widths[c].max(cell.len());
                }
            }
            for (i, row) in cells.iter().enumerate() {
                if i > 0 {
                    writeln!(f)?;
                }
                for (c, cell) in row.iter().enumerate() {
                    if c > 0 {
                        write!(f, " ")?;
                    }
                    write!(f, "{cell:>width$}", width = widths[c])?;
                }
            }
            Ok(())
        } else {
            write!(f, "{} x {} matrix, {} nonzero entries", dim, dim, self.nnz())?;
            for (&(r, c), v) in &self.entries {
                let rt = decode_tuple(self.n, self.k, r);
                let ct = decode_tuple(self.n, self.k, c);
                write!(f, "\n  ({rt:?}, {ct:?}) = {v}")?;
            }
            Ok(())
        }
    }
}

#[derive(Serialize, Deserialize)]
struct EntryJson {
    row: Vec<usize>,
    col: Vec<usize>,
    coeff: String,
}

impl Serialize for SparseMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let entries: Vec<EntryJson> = self
            .entries
            .iter()
            .map(|(&(r, c), v)| EntryJson {
                row: decode_tuple(self.n, self.k, r),
                col: decode_tuple(self.n, self.k, c),
                coeff: v.to_string(),
            })
            .collect();
        let mut st = serializer.serialize_struct("SparseMatrix", 3)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("k", &self.k)?;
        st.serialize_field("entries", &entries)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for SparseMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            n: usize,
            k: usize,
            entries: Vec<EntryJson>,
        }
        let raw = Raw::deserialize(deserializer)?;
        let mut m = SparseMatrix::new(raw.n, raw.k).map_err(DeError::custom)?;
        for e in raw.entries {
            let r = encode_tuple(raw.n, raw.k, &e.row).map_err(DeError::custom)?;
            let c = encode_tuple(raw.n, raw.k, &e.col).map_err(DeError::custom)?;
            let v: Scalar = e.coeff.parse().map_err(DeError::custom)?;
            if v.is_zero() {
                return Err(DeError::custom("explicit zero entry in matrix payload"));
            }
            if m.entries.insert((r, c), v).is_some() {
                return Err(DeError::custom(format!(
                    "duplicate entry at ({:?}, {:?})",
                    e.row, e.col
                )));
            }
        }
        Ok(m)
    }
}

/// Enumerates all assignments of values in [1,n] to the blocks of π —
/// injective or arbitrary — and hands each induced (row, col) code pair to
/// the sink.  Vertex v ≤ k contributes coordinate v of the column tuple,
/// vertex k + v coordinate v of the row tuple.
fn for_each_assignment(
    pi: &SetPartition,
    n: usize,
    injective: bool,
    sink: &mut impl FnMut(usize, usize),
) {
    let k = pi.k();
    let b = pi.num_blocks();
    if injective && b > n {
        return;
    }
    let mut values = vec![0usize; b]; // value assigned to each block label
    let mut used = vec![false; n + 1];
    fn rec(
        depth: usize,
        b: usize,
        n: usize,
        injective: bool,
        values: &mut Vec<usize>,
        used: &mut Vec<bool>,
        pi: &SetPartition,
        k: usize,
        sink: &mut impl FnMut(usize, usize),
    ) {
        if depth == b {
            let mut col = 0usize;
            let mut row = 0usize;
            for v in 1..=k {
                col = col * n + (values[pi.label_of(v) as usize] - 1);
                row = row * n + (values[pi.label_of(k + v) as usize] - 1);
            }
            sink(row, col);
            return;
        }
        for val in 1..=n {
            if injective && used[val] {
                continue;
            }
            values[depth] = val;
            used[val] = true;
            rec(depth + 1, b, n, injective, values, used, pi, k, sink);
            used[val] = false;
        }
    }
    rec(0, b, n, injective, &mut values, &mut used, pi, k, sink);
}

/// Φ_{k,n}(x_π) for the orbit basis element: 0/1 matrix with entries at the
/// tuples whose equality pattern is exactly π.  The zero matrix when π has
/// more than n blocks; otherwise (n)_{|π|} entries.
pub fn phi_orbit(pi: &SetPartition, n: usize) -> Result<SparseMatrix, PaError> {
    let mut m = SparseMatrix::new(n, pi.k())?;
    for_each_assignment(pi, n, true, &mut |row, col| {
        m.entries.insert((row, col), Scalar::one());
    });
    Ok(m)
}

/// Φ_{k,n}(d_π) for the diagram basis element: entries at the tuples that are
/// constant on the blocks of π (equal values on distinct blocks allowed);
/// n^{|π|} entries.
pub fn phi_diagram(pi: &SetPartition, n: usize) -> Result<SparseMatrix, PaError> {
    let mut m = SparseMatrix::new(n, pi.k())?;
    for_each_assignment(pi, n, false, &mut |row, col| {
        m.entries.insert((row, col), Scalar::one());
    });
    Ok(m)
}

fn check_xi_matches(a: &AlgebraElement, n: usize) -> Result<(), PaError> {
    match a.xi() {
        XiSpec::Numeric(s) if *s == Scalar::from(n as i64) => Ok(()),
        other => Err(PaError::XiMismatch(
            other.label(),
            format!("representation parameter n = {n}"),
        )),
    }
}

/// Φ_{k,n} (integer level) or its half-integer analogue (half level), as the
/// linear extension over the element's terms.  Requires numeric mode with
/// ξ = n.
pub fn phi(a: &AlgebraElement, n: usize) -> Result<SparseMatrix, PaError> {
    match a.level() {
        Level::Integer(k) => {
            check_xi_matches(a, n)?;
            let mut acc = SparseMatrix::new(n, k)?;
            for (pi, coeff) in a.terms() {
                let c = match coeff {
                    Coeff::Num(s) => s.clone(),
                    Coeff::Sym(_) => {
                        return Err(PaError::domain(
                            "the representation requires numeric coefficients",
                        ))
                    }
                };
                let m = match a.basis() {
                    Basis::Orbit => phi_orbit(pi, n)?,
                    Basis::Diagram => phi_diagram(pi, n)?,
                };
                acc = acc.add(&m.scale(&c))?;
            }
            Ok(acc)
        }
        Level::Half(_) => phi_half(a, n),
    }
}

/// Φ_{k+1/2,n} on an element at Half(k): the matrix of Φ_{k+1,n} on the
/// embedded element, restricted to tuples whose last coordinate equals n and
/// reindexed to [1,n]^k (the identification M_n^⊗k ≅ M_n^⊗k ⊗ u_n).
pub fn phi_half(a: &AlgebraElement, n: usize) -> Result<SparseMatrix, PaError> {
    let k = match a.level() {
        Level::Half(k) => k,
        Level::Integer(_) => {
            return Err(PaError::domain(
                "phi_half expects a half-integer level (use phi for integer levels)",
            ))
        }
    };
    check_xi_matches(a, n)?;
    let embedded = crate::algebra::embed_half(a)?;
    let full = phi(&embedded, n)?;
    // keep rows/columns whose last (least significant) coordinate is n
    let mut m = SparseMatrix::new(n, k)?;
    for (&(r, c), v) in &full.entries {
        if r % n == n - 1 && c % n == n - 1 {
            m.entries.insert((r / n, c / n), v.clone());
        }
    }
    Ok(m)
}

/// The permutation matrix of the diagonal S_n-action on [1,n]^k:
/// σ·u_r = u_{σ(r)} coordinatewise.  `sigma` is one-line notation,
/// `sigma[i-1] = σ(i)`.
pub fn perm_matrix(sigma: &[usize], n: usize, k: usize) -> Result<SparseMatrix, PaError> {
    check_permutation(sigma, n)?;
    let mut m = SparseMatrix::new(n, k)?;
    for col in 0..m.dim() {
        let tuple = decode_tuple(n, k, col);
        let image: Vec<usize> = tuple.iter().map(|&t| sigma[t - 1]).collect();
        let row = encode_tuple(n, k, &image)?;
        m.entries.insert((row, col), Scalar::one());
    }
    Ok(m)
}

/// The orbit basis elements x_π with more than n blocks at the given level;
/// they span ker Φ.  Empty exactly when the representation is faithful
/// (n ≥ 2k at Integer(k), n ≥ 2k + 1 at Half(k)).
pub fn kernel_basis(level: Level, n: usize) -> Vec<AlgebraElement> {
    enumerate(level)
        .into_iter()
        .filter(|pi| pi.num_blocks() > n)
        .map(|pi| {
            AlgebraElement::basis_element(
                level,
                Basis::Orbit,
                XiSpec::Numeric(Scalar::from(n as i64)),
                pi,
            )
            .expect("enumerated partitions are valid at their level")
        })
        .collect()
}

/// Number of partitions at the level with at most n blocks — the dimension
/// of the image of Φ (the centralizer of S_n, resp. S_{n−1}, on M_n^⊗k when
/// the span statement applies).
pub fn centralizer_dim(level: Level, n: usize) -> usize {
    enumerate(level)
        .into_iter()
        .filter(|pi| pi.num_blocks() <= n)
        .count()
}

/// Rank over the rationals of {Φ(x_π) | π at the level, |π| ≤ n}, computed
/// by exact Gaussian elimination on the flattened matrices.
pub fn image_rank(level: Level, n: usize) -> Result<usize, PaError> {
    let mut rows: Vec<BTreeMap<(usize, usize), Scalar>> = Vec::new();
    for pi in enumerate(level) {
        if pi.num_blocks() > n {
            continue;
        }
        let x = AlgebraElement::basis_element(
            level,
            Basis::Orbit,
            XiSpec::Numeric(Scalar::from(n as i64)),
            pi,
        )?;
        let m = phi(&x, n)?;
        if !m.is_zero() {
            rows.push(m.entries);
        }
    }
    Ok(rank_of_sparse_rows(rows))
}

/// Incremental exact elimination; within each reduced row the pivot is the
/// position carrying the smallest-magnitude nonzero value (ties broken by
/// position), which curbs coefficient growth.
pub(crate) fn rank_of_sparse_rows<K: Ord + Clone>(
    rows: Vec<BTreeMap<K, Scalar>>,
) -> usize {
    let mut pivots: Vec<(K, BTreeMap<K, Scalar>)> = Vec::new();
    for mut row in rows {
        for (key, pivot_row) in &pivots {
            if let Some(coeff) = row.get(key).cloned() {
                if coeff.is_zero() {
                    continue;
                }
                // row -= coeff * pivot_row  (pivot rows are normalized)
                for (k2, v) in pivot_row {
                    let delta = coeff.clone() * v.clone();
                    let slot = row.entry(k2.clone()).or_insert_with(Scalar::zero);
                    *slot = slot.clone() - delta;
                    if slot.is_zero() {
                        row.remove(k2);
                    }
                }
            }
        }
        row.retain(|_, v| !v.is_zero());
        if row.is_empty() {
            continue;
        }
        let pivot_key = row
            .iter()
            .min_by(|(ka, va), (kb, vb)| va.abs().cmp(&vb.abs()).then_with(|| ka.cmp(kb)))
            .map(|(k2, _)| k2.clone())
            .expect("nonempty row");
        let pivot_val = row[&pivot_key].clone();
        let inv = pivot_val.recip().expect("pivot is nonzero");
        let normalized: BTreeMap<K, Scalar> = row
            .into_iter()
            .map(|(k2, v)| (k2, v * inv.clone()))
            .collect();
        pivots.push((pivot_key, normalized));
    }
    pivots.len()
}

/// Verifies that Φ(x_π) commutes with the permutation action for every basis
/// partition π at the level: all of S_n (fixing n in the half-integer case)
/// when `trials` covers the group, otherwise `trials` seeded random draws.
pub fn commutant_check(level: Level, n: usize, trials: usize) -> Result<VerificationReport, PaError> {
    commutant_check_impl(level, n, trials, false)
}

pub(crate) fn commutant_check_impl(
    level: Level,
    n: usize,
    trials: usize,
    corrupt: bool,
) -> Result<VerificationReport, PaError> {
    let k_eff = match level {
        Level::Integer(k) => k,
        Level::Half(k) => k,
    };
    // the half-integer algebra centralizes the subgroup fixing the letter n
    let moved = match level {
        Level::Integer(_) => n,
        Level::Half(_) => n.saturating_sub(1),
    };
    let mut matrices: Vec<(String, SparseMatrix)> = Vec::new();
    for pi in enumerate(level) {
        let x = AlgebraElement::basis_element(
            level,
            Basis::Orbit,
            XiSpec::Numeric(Scalar::from(n as i64)),
            pi.clone(),
        )?;
        matrices.push((pi.to_string(), phi(&x, n)?));
    }
    if corrupt {
        if let Some((_, m)) = matrices.iter_mut().find(|(_, m)| !m.is_zero()) {
            m.add_to(0, 0, &Scalar::one());
        }
    }
    let sigmas = sample_permutations(moved, n, trials);
    let mut report = VerificationReport::new();
    for sigma in &sigmas {
        let p = perm_matrix(sigma, n, k_eff)?;
        let mut all_commute = true;
        for (_, m) in &matrices {
            if m.mul(&p)? != p.mul(m)? {
                all_commute = false;
                break;
            }
        }
        report.check(
            &format!("phi(x_pi) commutes with sigma = {sigma:?} for all pi"),
            all_commute,
        );
    }
    Ok(report)
}

/// Permutations of [1,n] moving only the first `moved` letters: the whole
/// subgroup when `trials` covers it, otherwise `trials` fixed-seed draws,
/// de-duplicated in draw order.
fn sample_permutations(moved: usize, n: usize, trials: usize) -> Vec<Vec<usize>> {
    let group_order: usize = (1..=moved.max(1)).product();
    let extend = |head: Vec<usize>| -> Vec<usize> {
        let mut sigma = head;
        for i in moved + 1..=n {
            sigma.push(i);
        }
        sigma
    };
    if trials >= group_order {
        let mut all = Vec::with_capacity(group_order);
        let mut head: Vec<usize> = (1..=moved).collect();
        // Heap's algorithm, iterative
        let mut c = vec![0usize; moved];
        all.push(extend(head.clone()));
        let mut i = 0;
        while i < moved {
            if c[i] < i {
                if i % 2 == 0 {
                    head.swap(0, i);
                } else {
                    head.swap(c[i], i);
                }
                all.push(extend(head.clone()));
                c[i] += 1;
                i = 0;
            } else {
                c[i] = 0;
                i += 1;
            }
        }
        all
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_cafe);
        let mut seen = std::collections::BTreeSet::new();
        let mut out = Vec::new();
        let mut head: Vec<usize> = (1..=moved).collect();
        while out.len() < trials {
            head.shuffle(&mut rng);
            if seen.insert(head.clone()) {
                out.push(extend(head.clone()));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{identity, mul_diagram, to_orbit};
    use crate::scalar::falling_factorial_int;
    use crate::setpart::bell;
    use num_bigint::BigInt;
    use rand::Rng;

    fn sp(s: &str) -> SetPartition {
        s.parse().unwrap()
    }

    fn d(k: usize, s: &str, n: usize) -> AlgebraElement {
        AlgebraElement::basis_element(
            Level::Integer(k),
            Basis::Diagram,
            XiSpec::Numeric(Scalar::from(n as i64)),
            sp(s),
        )
        .unwrap()
    }

    fn x(k: usize, s: &str, n: usize) -> AlgebraElement {
        AlgebraElement::basis_element(
            Level::Integer(k),
            Basis::Orbit,
            XiSpec::Numeric(Scalar::from(n as i64)),
            sp(s),
        )
        .unwrap()
    }

    #[test]
    fn tuple_codes_round_trip_in_lex_order() {
        let n = 3usize;
        let k = 2usize;
        let mut prev = None;
        let mut tuples: Vec<Vec<usize>> = Vec::new();
        for code in 0..n.pow(k as u32) {
            let t = decode_tuple(n, k, code);
            assert_eq!(encode_tuple(n, k, &t).unwrap(), code);
            tuples.push(t.clone());
            if let Some(p) = prev {
                assert!(p < t, "codes must follow lexicographic tuple order");
            }
            prev = Some(t);
        }
        assert_eq!(tuples[0], vec![1, 1]);
        assert_eq!(tuples[8], vec![3, 3]);
        assert!(encode_tuple(3, 2, &[1]).is_err());
        assert!(encode_tuple(3, 2, &[1, 4]).is_err());
        assert!(encode_tuple(3, 2, &[0, 1]).is_err());
        // k = 0: the single empty tuple
        assert_eq!(encode_tuple(3, 0, &[]).unwrap(), 0);
        assert_eq!(decode_tuple(3, 0, 0), Vec::<usize>::new());
    }

    #[test]
    fn phi_orbit_examples() {
        // π = {1|2} at k = 1, n = 3: distinct values for the two blocks,
        // all six off-diagonal positions
        let m = phi_orbit(&sp("1|2"), 3).unwrap();
        assert_eq!(m.nnz(), 6);
        for (&(r, c), v) in m.iter() {
            assert_ne!(r, c);
            assert!(v.is_one());
        }
        // π = {1,2}: r1 = r1′ forced, diagonal
        let m = phi_orbit(&sp("1,2"), 3).unwrap();
        assert_eq!(m.nnz(), 3);
        for (&(r, c), _) in m.iter() {
            assert_eq!(r, c);
        }
        // four blocks but only three letters → zero matrix
        let m = phi_orbit(&sp("1|2|3|4"), 3).unwrap();
        assert!(m.is_zero());
    }

    #[test]
    fn phi_diagram_examples() {
        let m = phi_diagram(&SetPartition::identity(2), 3).unwrap();
        assert_eq!(m, SparseMatrix::identity(3, 2).unwrap());
        let m = phi_diagram(&sp("1,2"), 2).unwrap();
        assert_eq!(m.nnz(), 2);
        for (&(r, c), _) in m.iter() {
            assert_eq!(r, c);
        }
    }

    #[test]
    fn diagram_matrix_is_sum_of_orbit_matrices_over_coarsenings() {
        for n in 2..=4 {
            for pi in enumerate(Level::Integer(2)) {
                let lhs = phi_diagram(&pi, n).unwrap();
                let mut rhs = SparseMatrix::new(n, 2).unwrap();
                for rho in pi.coarsenings() {
                    rhs = rhs.add(&phi_orbit(&rho, n).unwrap()).unwrap();
                }
                assert_eq!(lhs, rhs, "pi = {pi}, n = {n}");
            }
        }
    }

    #[test]
    fn nonzero_count_laws() {
        for n in 2..=4usize {
            for k in 1..=3usize {
                for pi in enumerate(Level::Integer(k)) {
                    let b = pi.num_blocks();
                    let orbit_nnz = phi_orbit(&pi, n).unwrap().nnz();
                    let expected = falling_factorial_int(n as i64, b);
                    assert_eq!(
                        BigInt::from(orbit_nnz),
                        expected.max(BigInt::from(0)),
                        "orbit nnz for pi = {pi}, n = {n}"
                    );
                    let diag_nnz = phi_diagram(&pi, n).unwrap().nnz();
                    assert_eq!(diag_nnz, n.pow(b as u32), "diagram nnz for pi = {pi}, n = {n}");
                }
            }
        }
    }

    #[test]
    fn orbit_entries_have_equality_pattern_pi() {
        let n = 3;
        for pi in enumerate(Level::Integer(2)) {
            let m = phi_orbit(&pi, n).unwrap();
            for (&(r, c), _) in m.iter() {
                let rt = decode_tuple(n, 2, r);
                let ct = decode_tuple(n, 2, c);
                // combined tuple (col | row) ordered as vertices 1..2k
                let combined: Vec<usize> = ct.iter().chain(rt.iter()).copied().collect();
                // equality pattern as a set partition of the vertex set
                let mut blocks: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
                for (v, &val) in combined.iter().enumerate() {
                    blocks.entry(val).or_default().push(v + 1);
                }
                let pattern = SetPartition::from_blocks(
                    2,
                    &blocks.values().cloned().collect::<Vec<_>>(),
                )
                .unwrap();
                assert_eq!(pattern, pi);
            }
        }
    }

    #[test]
    fn phi_is_a_homomorphism_on_all_pairs_k2_n3() {
        let n = 3;
        let parts = enumerate(Level::Integer(2));
        let mats: Vec<SparseMatrix> = parts
            .iter()
            .map(|p| phi(&d(2, &p.to_string(), n), n).unwrap())
            .collect();
        for (i, a) in parts.iter().enumerate() {
            for (j, b) in parts.iter().enumerate() {
                let prod = mul_diagram(&d(2, &a.to_string(), n), &d(2, &b.to_string(), n)).unwrap();
                let lhs = phi(&prod, n).unwrap();
                let rhs = mats[i].mul(&mats[j]).unwrap();
                assert_eq!(lhs, rhs, "a = {a}, b = {b}");
            }
        }
    }

    #[test]
    fn phi_identity_and_kernel_element() {
        let n = 3;
        let id = identity(Level::Integer(2), XiSpec::Numeric(Scalar::from(3)));
        assert_eq!(phi(&id, n).unwrap(), SparseMatrix::identity(3, 2).unwrap());
        // orbit basis identity expansion also maps to the identity matrix
        let id_orbit = to_orbit(&id).unwrap();
        assert_eq!(phi(&id_orbit, n).unwrap(), SparseMatrix::identity(3, 2).unwrap());
        // the all-singleton orbit element spans ker Φ_{2,3}
        let z = phi(&x(2, "1|2|3|4", n), n).unwrap();
        assert!(z.is_zero());
    }

    #[test]
    fn phi_rejects_mismatched_parameter() {
        let a = d(2, "1,3|2,4", 3);
        assert!(matches!(phi(&a, 4), Err(PaError::XiMismatch(_, _))));
        let sym = AlgebraElement::basis_element(
            Level::Integer(2),
            Basis::Diagram,
            XiSpec::Symbolic,
            sp("1,3|2,4"),
        )
        .unwrap();
        assert!(matches!(phi(&sym, 3), Err(PaError::XiMismatch(_, _))));
    }

    #[test]
    fn phi_half_identity_and_homomorphism() {
        let n = 2;
        let idh = identity(Level::Half(1), XiSpec::Numeric(Scalar::from(2)));
        assert_eq!(phi_half(&idh, n).unwrap(), SparseMatrix::identity(2, 1).unwrap());
        // phi() dispatches half levels to phi_half
        assert_eq!(phi(&idh, n).unwrap(), SparseMatrix::identity(2, 1).unwrap());

        // homomorphism on all pairs at Half(1), n = 3 (25 pairs)
        let n = 3;
        let parts = enumerate(Level::Half(1));
        assert_eq!(parts.len(), 5);
        for a in &parts {
            for b in &parts {
                let ea = AlgebraElement::basis_element(
                    Level::Half(1),
                    Basis::Diagram,
                    XiSpec::Numeric(Scalar::from(3)),
                    a.clone(),
                )
                .unwrap();
                let eb = AlgebraElement::basis_element(
                    Level::Half(1),
                    Basis::Diagram,
                    XiSpec::Numeric(Scalar::from(3)),
                    b.clone(),
                )
                .unwrap();
                let lhs = phi_half(&ea.mul(&eb).unwrap(), n).unwrap();
                let rhs = phi_half(&ea, n)
                    .unwrap()
                    .mul(&phi_half(&eb, n).unwrap())
                    .unwrap();
                assert_eq!(lhs, rhs, "a = {a}, b = {b}");
            }
        }
    }

    #[test]
    fn kernel_basis_examples() {
        let ker = kernel_basis(Level::Integer(2), 3);
        assert_eq!(ker.len(), 1);
        assert!(ker[0].coeff_of(&sp("1|2|3|4")).is_some());
        assert!(kernel_basis(Level::Integer(2), 4).is_empty());
        assert_eq!(kernel_basis(Level::Integer(3), 3).len(), 81);
        // half level: Π_5 has 52 partitions on 5 effective points; those with
        // more than 2 blocks number 52 − 1 − 15 = 36
        assert_eq!(u64::try_from(bell(5)).unwrap(), 52);
        assert_eq!(kernel_basis(Level::Half(2), 2).len(), 36);
        // every kernel element maps to zero
        for e in kernel_basis(Level::Integer(2), 3) {
            assert!(phi(&e, 3).unwrap().is_zero());
        }
        for e in kernel_basis(Level::Half(2), 2).into_iter().take(6) {
            assert!(phi(&e, 2).unwrap().is_zero());
        }
    }

    #[test]
    fn perm_matrix_examples() {
        assert_eq!(
            perm_matrix(&[1, 2, 3], 3, 2).unwrap(),
            SparseMatrix::identity(3, 2).unwrap()
        );
        let swap = perm_matrix(&[2, 1], 2, 1).unwrap();
        assert_eq!(swap.get(0, 1), Scalar::one());
        assert_eq!(swap.get(1, 0), Scalar::one());
        assert_eq!(swap.nnz(), 2);
        assert!(perm_matrix(&[1, 1], 2, 1).is_err());

        // action property on random pairs at n = 4, k = 2
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10 {
            let mut s: Vec<usize> = (1..=4).collect();
            let mut t: Vec<usize> = (1..=4).collect();
            s.shuffle(&mut rng);
            t.shuffle(&mut rng);
            let st: Vec<usize> = (1..=4).map(|i| s[t[i - 1] - 1]).collect();
            assert_eq!(
                perm_matrix(&st, 4, 2).unwrap(),
                perm_matrix(&s, 4, 2)
                    .unwrap()
                    .mul(&perm_matrix(&t, 4, 2).unwrap())
                    .unwrap()
            );
        }
    }

    #[test]
    fn commutant_checks_pass_and_detect_corruption() {
        let r = commutant_check(Level::Integer(2), 3, 6).unwrap();
        assert!(r.pass(), "{r}");
        assert_eq!(r.len(), 6);
        let r = commutant_check(Level::Integer(1), 2, 2).unwrap();
        assert!(r.pass(), "{r}");
        // the half-integer image centralizes the subgroup fixing n
        let r = commutant_check(Level::Half(1), 3, 2).unwrap();
        assert!(r.pass(), "{r}");
        let bad = commutant_check_impl(Level::Integer(2), 3, 6, true).unwrap();
        assert!(!bad.pass());
    }

    #[test]
    fn sampled_permutations_are_deduplicated_and_reproducible() {
        let a = sample_permutations(4, 4, 5);
        let b = sample_permutations(4, 4, 5);
        assert_eq!(a, b);
        assert_eq!(a.len(), 5);
        let set: std::collections::BTreeSet<_> = a.iter().collect();
        assert_eq!(set.len(), 5);
        let all = sample_permutations(3, 4, 100);
        assert_eq!(all.len(), 6);
        for sigma in &all {
            assert_eq!(sigma[3], 4, "letter 4 must stay fixed");
        }
    }

    #[test]
    fn ranks_match_partition_counts() {
        assert_eq!(centralizer_dim(Level::Integer(2), 2), 8);
        assert_eq!(centralizer_dim(Level::Integer(2), 3), 14);
        assert_eq!(centralizer_dim(Level::Integer(2), 4), 15);
        assert_eq!(centralizer_dim(Level::Integer(3), 3), 122);
        assert_eq!(image_rank(Level::Integer(2), 2).unwrap(), 8);
        assert_eq!(image_rank(Level::Integer(2), 3).unwrap(), 14);
        assert_eq!(image_rank(Level::Integer(2), 4).unwrap(), 15);
    }

    #[test]
    fn rank_elimination_handles_dependent_rows() {
        let row = |pairs: &[((usize, usize), i64)]| -> BTreeMap<(usize, usize), Scalar> {
            pairs
                .iter()
                .map(|&(k2, v)| (k2, Scalar::from(v)))
                .collect()
        };
        let r1 = row(&[((0, 0), 1), ((0, 1), 2)]);
        let r2 = row(&[((0, 1), 1), ((1, 0), 3)]);
        let sum = row(&[((0, 0), 1), ((0, 1), 3), ((1, 0), 3)]);
        let scaled = row(&[((0, 0), 5), ((0, 1), 10)]);
        assert_eq!(rank_of_sparse_rows(vec![r1.clone(), r2.clone(), sum, scaled]), 2);
        assert_eq!(rank_of_sparse_rows(Vec::<BTreeMap<(usize, usize), Scalar>>::new()), 0);
    }

    #[test]
    fn matrix_arithmetic_and_shape_checks() {
        let a = phi_diagram(&sp("1,3|2,4"), 2).unwrap();
        let b = phi_diagram(&sp("1,4|2,3"), 2).unwrap();
        // s² = identity under Φ
        assert_eq!(b.mul(&b).unwrap(), a);
        let sum = a.add(&b).unwrap();
        assert_eq!(sum.get(0, 0), Scalar::from(2));
        let zero = a.add(&a.scale(&Scalar::from(-1))).unwrap();
        assert!(zero.is_zero());
        let wrong = SparseMatrix::new(3, 2).unwrap();
        assert!(a.mul(&wrong).is_err());
        assert!(a.add(&wrong).is_err());
        assert!(SparseMatrix::new(0, 1).is_err());
    }

    #[test]
    fn matrix_json_round_trip_and_validation() {
        let m = phi_orbit(&sp("1|2"), 2).unwrap();
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(
            s,
            r#"{"n":2,"k":1,"entries":[{"row":[1],"col":[2],"coeff":"1"},{"row":[2],"col":[1],"coeff":"1"}]}"#
        );
        let back: SparseMatrix = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);
        // byte stability
        assert_eq!(serde_json::to_string(&back).unwrap(), s);

        let dup = r#"{"n":2,"k":1,"entries":[{"row":[1],"col":[2],"coeff":"1"},{"row":[1],"col":[2],"coeff":"2"}]}"#;
        assert!(serde_json::from_str::<SparseMatrix>(dup).is_err());
        let zero = r#"{"n":2,"k":1,"entries":[{"row":[1],"col":[2],"coeff":"0"}]}"#;
        assert!(serde_json::from_str::<SparseMatrix>(zero).is_err());
        let range = r#"{"n":2,"k":1,"entries":[{"row":[3],"col":[2],"coeff":"1"}]}"#;
        assert!(serde_json::from_str::<SparseMatrix>(range).is_err());
    }

    #[test]
    fn display_grid_is_aligned() {
        let m = phi_diagram(&sp("1,2"), 2).unwrap();
        assert_eq!(m.to_string(), "1 0\n0 1");
        let scaled = m.scale(&Scalar::new(BigInt::from(1), BigInt::from(2)).unwrap());
        assert_eq!(scaled.to_string(), "1/2   0\n  0 1/2");
    }

    #[test]
    fn random_k3_homomorphism_spot_checks() {
        let parts = enumerate(Level::Integer(3));
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..40 {
            let n = rng.gen_range(3..=4);
            let a = &parts[rng.gen_range(0..parts.len())];
            let b = &parts[rng.gen_range(0..parts.len())];
            let ea = d(3, &a.to_string(), n);
            let eb = d(3, &b.to_string(), n);
            let lhs = phi(&ea.mul(&eb).unwrap(), n).unwrap();
            let rhs = phi(&ea, n).unwrap().mul(&phi(&eb, n).unwrap()).unwrap();
            assert_eq!(lhs, rhs, "a = {a}, b = {b}, n = {n}");
        }
    }
}
