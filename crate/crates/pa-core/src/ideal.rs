//! Two-sided ideal closures inside the partition algebra by exact linear
//! algebra, and verification that the kernel of the tensor-space
//! representation is principal: generated by the essential idempotent when
//! the level is large relative to n, and by the padded element
//! `e_{n,n} ⊗ |^{⊗(k−n)}` when k ≥ n.
//!
//! The ambient space is the span of the diagram basis at a fixed level;
//! subspaces are kept in reduced row-echelon form over the canonical
//! enumeration order, so subspace equality is literal row equality.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde_json::json;

use crate::algebra::{
    juxtapose, mul_diagram, restrict_to_half, to_diagram, AlgebraElement, Basis, Coeff, XiSpec,
};
use crate::idempotent::essential_idempotent;
use crate::report::VerificationReport;
use crate::scalar::Scalar;
use crate::schurweyl::{centralizer_dim, phi};
use crate::setpart::{enumerate, Level, SetPartition};
use crate::PaError;

/// Default ceiling on the ambient dimension of a closure computation.
/// Levels whose diagram basis is larger require an explicit override.
pub const CLOSURE_DIMENSION_GUARD: u128 = 5000;

/// Options for [`ideal_closure_with`].
#[derive(Clone, Copy, Debug, Default)]
pub struct ClosureOptions {
    /// Allow ambient dimensions beyond [`CLOSURE_DIMENSION_GUARD`].
    pub override_size_guard: bool,
}

// -------------------------------------------------------------------------
// Reduced row-echelon subspace bases
// -------------------------------------------------------------------------

/// A subspace of the diagram-basis span at a fixed level, held in reduced
/// row-echelon form over the canonical enumeration order of partitions.
///
/// Rows have strictly increasing pivot columns, pivots normalized to 1 and
/// cleared from every other row, so two `SubspaceBasis` values describe the
/// same subspace exactly when their rows coincide.
#[derive(Clone, Debug)]
pub struct SubspaceBasis {
    level: Level,
    n: Scalar,
    order: Vec<SetPartition>,
    index: BTreeMap<SetPartition, usize>,
    rows: Vec<BTreeMap<usize, Scalar>>,
    pivots: Vec<usize>,
}

impl PartialEq for SubspaceBasis {
    fn eq(&self, other: &Self) -> bool {
        self.level == other.level && self.n == other.n && self.rows == other.rows
    }
}

impl SubspaceBasis {
    /// The zero subspace at the given level, inside the algebra at ξ = n.
    pub fn new(level: Level, n: Scalar) -> Result<Self, PaError> {
        level.validate()?;
        let order = enumerate(level);
        let index = order
            .iter()
            .enumerate()
            .map(|(i, pi)| (pi.clone(), i))
            .collect();
        Ok(SubspaceBasis {
            level,
            n,
            order,
            index,
            rows: Vec::new(),
            pivots: Vec::new(),
        })
    }

    pub fn level(&self) -> Level {
        self.level
    }

    pub fn n(&self) -> &Scalar {
        &self.n
    }

    /// Dimension of the spanned subspace.
    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Dimension of the ambient diagram-basis span.
    pub fn ambient_dim(&self) -> usize {
        self.order.len()
    }

    /// The coordinate vector of an element over the canonical diagram order.
    fn coordinates(&self, a: &AlgebraElement) -> Result<BTreeMap<usize, Scalar>, PaError> {
        if a.level() != self.level {
            return Err(PaError::LevelMismatch(
                format!("{:?}", a.level()),
                format!("{:?}", self.level),
            ));
        }
        let d;
        let a = if a.basis() == Basis::Diagram {
            a
        } else {
            d = to_diagram(a)?;
            &d
        };
        let mut v = BTreeMap::new();
        for (pi, c) in a.terms() {
            let Coeff::Num(s) = c else {
                return Err(PaError::domain(
                    "subspace coordinates require numeric coefficients",
                ));
            };
            if s.is_zero() {
                continue;
            }
            let col = *self.index.get(pi).expect("partition is at this level");
            v.insert(col, s.clone());
        }
        Ok(v)
    }

    /// Subtracts `c` times `row` from `v`, dropping entries that cancel.
    fn subtract_multiple(v: &mut BTreeMap<usize, Scalar>, c: &Scalar, row: &BTreeMap<usize, Scalar>) {
        for (col, rc) in row {
            let cur = v.remove(col).unwrap_or_else(Scalar::zero);
            let new = cur - c * rc;
            if !new.is_zero() {
                v.insert(*col, new);
            }
        }
    }

    /// Reduces `v` against the rows by walking its support in column order.
    ///
    /// Rows are in reduced echelon form: a row's support starts at its pivot
    /// and meets no other pivot column, so subtracting the row hit at column
    /// `c` introduces entries only in non-pivot columns to the right of `c`.
    /// Each pivot of the original support is therefore cancelled exactly
    /// once, and the sweep touches only the rows it actually hits.
    fn reduce(&self, v: &mut BTreeMap<usize, Scalar>) {
        let mut cursor = 0usize;
        while let Some((&col, _)) = v.range(cursor..).next() {
            if let Ok(i) = self.pivots.binary_search(&col) {
                let c = v[&col].clone();
                Self::subtract_multiple(v, &c, &self.rows[i]);
            }
            cursor = col + 1;
        }
    }

    /// Adds the element's reduced residue as a new row if independent.
    /// Returns whether the dimension grew.
    pub fn insert(&mut self, a: &AlgebraElement) -> Result<bool, PaError> {
        let mut v = self.coordinates(a)?;
        self.reduce(&mut v);
        let Some((&pivot, lead)) = v.iter().next() else {
            return Ok(false);
        };
        let inv = lead.clone().recip()?;
        let new_row: BTreeMap<usize, Scalar> = v
            .iter()
            .map(|(col, c)| (*col, c * &inv))
            .collect();
        // Clear the new pivot column from every existing row.
        for row in &mut self.rows {
            if let Some(c) = row.get(&pivot).cloned() {
                Self::subtract_multiple(row, &c, &new_row);
            }
        }
        let pos = self.pivots.partition_point(|&p| p < pivot);
        self.pivots.insert(pos, pivot);
        self.rows.insert(pos, new_row);
        Ok(true)
    }

    /// Whether the element lies in the spanned subspace.
    pub fn contains(&self, a: &AlgebraElement) -> Result<bool, PaError> {
        let mut v = self.coordinates(a)?;
        self.reduce(&mut v);
        Ok(v.is_empty())
    }

    /// The i-th basis row as a diagram-basis element.
    pub fn row_element(&self, i: usize) -> Result<AlgebraElement, PaError> {
        let mut out = AlgebraElement::zero(
            self.level,
            Basis::Diagram,
            XiSpec::Numeric(self.n.clone()),
        );
        for (col, c) in &self.rows[i] {
            out.add_term(self.order[*col].clone(), Coeff::Num(c.clone()))?;
        }
        Ok(out)
    }
}

// -------------------------------------------------------------------------
// Ideal closure
// -------------------------------------------------------------------------

/// The result of a closure computation: the spanned subspace and the
/// dimension recorded after each multiplication round (the first entry is
/// the dimension of the generators' span).
#[derive(Clone, Debug)]
pub struct ClosureRun {
    pub basis: SubspaceBasis,
    pub rounds: Vec<usize>,
}

/// The smallest subspace containing the generators and closed under left
/// and right multiplication by every diagram basis element of the level.
///
/// Fixed-point iteration: each round multiplies the elements that were new
/// in the previous round by every basis diagram (all left products in
/// canonical order, then all right products) and row-reduces the results;
/// a round that adds no dimension terminates the loop.  Products of older
/// vectors are already in the span by induction, so the limit is the full
/// two-sided ideal.
pub fn ideal_closure_with(
    generators: &[AlgebraElement],
    level: Level,
    n: &Scalar,
    opts: &ClosureOptions,
) -> Result<ClosureRun, PaError> {
    level.validate()?;
    let ambient = level.dimension();
    if ambient > BigInt::from(CLOSURE_DIMENSION_GUARD) && !opts.override_size_guard {
        return Err(PaError::SizeGuard {
            actual: ambient.to_u128().unwrap_or(u128::MAX),
            limit: CLOSURE_DIMENSION_GUARD,
        });
    }
    let mut basis = SubspaceBasis::new(level, n.clone())?;
    let mut frontier: Vec<AlgebraElement> = Vec::new();
    for g in generators {
        let d = if g.basis() == Basis::Diagram {
            g.clone()
        } else {
            to_diagram(g)?
        };
        if basis.insert(&d)? {
            frontier.push(d);
        }
    }
    let mut rounds = vec![basis.dim()];
    let spec = XiSpec::Numeric(n.clone());
    let parts = enumerate(level);
    let diagrams: Vec<AlgebraElement> = parts
        .into_iter()
        .map(|pi| AlgebraElement::basis_element(level, Basis::Diagram, spec.clone(), pi))
        .collect::<Result<_, _>>()?;
    while !frontier.is_empty() {
        let mut next = Vec::new();
        // Left sweep then right sweep, diagrams in canonical order.  The
        // products of a sweep depend only on the frontier, so they may be
        // computed in parallel (chunked to bound memory); insertion into the
        // row basis stays sequential in the same order, which keeps the run
        // identical to a serial one.
        for left_sweep in [true, false] {
            let total = diagrams.len() * frontier.len();
            const CHUNK: usize = 2048;
            let mut start = 0usize;
            while start < total {
                let end = usize::min(start + CHUNK, total);
                let products: Vec<AlgebraElement> = (start..end)
                    .into_par_iter()
                    .map(|idx| {
                        let d = &diagrams[idx / frontier.len()];
                        let a = &frontier[idx % frontier.len()];
                        if left_sweep {
                            mul_diagram(d, a)
                        } else {
                            mul_diagram(a, d)
                        }
                    })
                    .collect::<Result<_, _>>()?;
                for p in products {
                    if basis.insert(&p)? {
                        next.push(p);
                    }
                }
                start = end;
            }
        }
        rounds.push(basis.dim());
        frontier = next;
    }
    Ok(ClosureRun { basis, rounds })
}

/// [`ideal_closure_with`] under default options.
pub fn ideal_closure(
    generators: &[AlgebraElement],
    level: Level,
    n: &Scalar,
) -> Result<SubspaceBasis, PaError> {
    Ok(ideal_closure_with(generators, level, n, &ClosureOptions::default())?.basis)
}

/// The span of the diagram basis elements with propagating number at most
/// `ell` — a two-sided ideal of the algebra at any parameter.
pub fn propagating_ideal(level: Level, ell: usize, n: &Scalar) -> Result<SubspaceBasis, PaError> {
    level.validate()?;
    if ell > level.storage_k() {
        return Err(PaError::domain(format!(
            "propagating bound {ell} exceeds the level",
        )));
    }
    let mut basis = SubspaceBasis::new(level, n.clone())?;
    let spec = XiSpec::Numeric(n.clone());
    for pi in enumerate(level) {
        if pi.propagating_number() <= ell {
            let d = AlgebraElement::basis_element(level, Basis::Diagram, spec.clone(), pi)?;
            basis.insert(&d)?;
        }
    }
    Ok(basis)
}

// -------------------------------------------------------------------------
// Verification
// -------------------------------------------------------------------------

/// Dimension of the kernel of the representation at this level:
/// ambient dimension minus the centralizer dimension.
fn kernel_dim(level: Level, n: usize) -> usize {
    let ambient = level
        .dimension()
        .to_usize()
        .expect("guarded levels fit in usize");
    ambient - centralizer_dim(level, n)
}

/// Shared tail of the generation checks: closure dimension must equal the
/// kernel dimension, and every closure row must map to zero.
fn check_generates_kernel(
    rep: &mut VerificationReport,
    what: &str,
    run: &ClosureRun,
    level: Level,
    n: usize,
) -> Result<(), PaError> {
    let kd = kernel_dim(level, n);
    rep.check_recording(
        format!("{what}: closure dimension equals kernel dimension"),
        run.basis.dim() == kd,
        json!({
            "rounds": run.rounds,
            "dim": run.basis.dim(),
            "kernel_dim": kd,
        }),
    );
    let mut vanish = true;
    for i in 0..run.basis.dim() {
        if !phi(&run.basis.row_element(i)?, n)?.is_zero() {
            vanish = false;
            break;
        }
    }
    rep.check(
        format!("{what}: every closure vector vanishes under the representation"),
        vanish,
    );
    Ok(())
}

/// Checks that the essential idempotent generates the kernel of the
/// representation as a two-sided ideal (defined when the essential
/// idempotent itself is, i.e. the level exceeds n in the diagram sense).
pub fn verify_kernel_generation(level: Level, n: usize) -> Result<VerificationReport, PaError> {
    let e = essential_idempotent(level, n)?;
    let run = ideal_closure_with(
        &[e],
        level,
        &Scalar::from(n as i64),
        &ClosureOptions::default(),
    )?;
    let mut rep = VerificationReport::new();
    check_generates_kernel(&mut rep, "<e>", &run, level, n)?;
    Ok(rep)
}

/// Checks that the padded idempotent `e_{n,n} ⊗ |^{⊗(k−n)}` (diagram
/// strands) generates the kernel when k ≥ n.  At a half level the padded
/// element keeps its last strand vertical, so it lives in the half algebra;
/// this case additionally requires n > 1.
pub fn verify_enn_generation(level: Level, n: usize) -> Result<VerificationReport, PaError> {
    level.validate()?;
    let m = level.storage_k();
    let ok = match level {
        Level::Integer(k) => n >= 1 && k >= n,
        Level::Half(_) => n > 1 && m > n,
    };
    if !ok {
        return Err(PaError::domain(format!(
            "padded-idempotent generation needs k >= n (and n > 1 at half levels), got level {level:?}, n = {n}"
        )));
    }
    let e_nn = essential_idempotent(Level::Integer(n), n)?;
    let mut g = juxtapose(&e_nn, m - n, Basis::Diagram)?;
    if level.is_half() {
        g = restrict_to_half(&g)?;
    }
    let run = ideal_closure_with(
        &[g],
        level,
        &Scalar::from(n as i64),
        &ClosureOptions::default(),
    )?;
    let mut rep = VerificationReport::new();
    check_generates_kernel(&mut rep, "<e padded>", &run, level, n)?;
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{identity, mul_orbit, to_orbit};
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn sp(s: &str) -> SetPartition {
        s.parse().unwrap()
    }

    fn diagram_term(level: Level, n: i64, pi: &str) -> AlgebraElement {
        AlgebraElement::basis_element(
            level,
            Basis::Diagram,
            XiSpec::Numeric(Scalar::from(n)),
            sp(pi),
        )
        .unwrap()
    }

    #[test]
    fn subspace_basis_reduction() {
        let level = Level::Integer(2);
        let n = Scalar::from(3);
        let mut b = SubspaceBasis::new(level, n.clone()).unwrap();
        assert_eq!(b.dim(), 0);
        assert_eq!(b.ambient_dim(), 15);

        let d1 = diagram_term(level, 3, "1,2|3|4");
        let d2 = diagram_term(level, 3, "1|2|3,4");
        let sum = d1.add(&d2).unwrap();
        assert!(b.insert(&d1).unwrap());
        assert!(b.insert(&sum).unwrap());
        // The sum row was reduced: the span contains d2 alone.
        assert!(!b.insert(&d2).unwrap());
        assert!(b.contains(&d2).unwrap());
        assert!(b
            .contains(&d1.scale_scalar(&Scalar::from(-7)).unwrap())
            .unwrap());
        assert!(!b.contains(&diagram_term(level, 3, "1,2,3,4")).unwrap());
        assert_eq!(b.dim(), 2);

        // Canonical form: insertion order does not matter.
        let mut b2 = SubspaceBasis::new(level, n).unwrap();
        b2.insert(&sum).unwrap();
        b2.insert(&d2.scale_scalar(&Scalar::from(5)).unwrap()).unwrap();
        assert_eq!(b, b2);

        // Orbit-basis input is converted before coordinatization.
        let x = to_orbit(&d1).unwrap();
        let x_back = to_diagram(&x).unwrap();
        assert!(b.contains(&x_back).unwrap());
    }

    #[test]
    fn row_elements_reproduce_span() {
        let level = Level::Integer(2);
        let mut b = SubspaceBasis::new(level, Scalar::from(3)).unwrap();
        let v = diagram_term(level, 3, "1,3|2,4")
            .add(&diagram_term(level, 3, "1,2,3,4").scale_scalar(&Scalar::from(2)).unwrap())
            .unwrap();
        b.insert(&v).unwrap();
        let row = b.row_element(0).unwrap();
        assert!(b.contains(&row).unwrap());
        assert_eq!(row.num_terms(), 2);
    }

    #[test]
    fn closure_of_identity_is_everything() {
        let level = Level::Integer(2);
        let run = ideal_closure_with(
            &[identity(level, XiSpec::Numeric(Scalar::from(3)))],
            level,
            &Scalar::from(3),
            &ClosureOptions::default(),
        )
        .unwrap();
        assert_eq!(run.basis.dim(), 15);
        assert_eq!(run.rounds.first(), Some(&1));
        assert_eq!(run.rounds.last(), Some(&15));
    }

    #[test]
    fn closure_of_e23_is_one_dimensional() {
        let e = essential_idempotent(Level::Integer(2), 3).unwrap();
        let run = ideal_closure_with(
            &[e.clone()],
            Level::Integer(2),
            &Scalar::from(3),
            &ClosureOptions::default(),
        )
        .unwrap();
        assert_eq!(run.basis.dim(), 1);
        assert!(run.basis.contains(&e).unwrap());
    }

    #[test]
    fn closure_rounds_are_monotone_and_short() {
        for (level, n) in [
            (Level::Integer(2), 2usize),
            (Level::Integer(2), 3),
            (Level::Integer(3), 3),
            (Level::Integer(3), 4),
            (Level::Half(2), 3),
        ] {
            let e = essential_idempotent(level, n).unwrap();
            let run =
                ideal_closure_with(&[e], level, &Scalar::from(n as i64), &ClosureOptions::default())
                    .unwrap();
            assert!(
                run.rounds.windows(2).all(|w| w[0] <= w[1]),
                "rounds not monotone at {level:?}, n={n}: {:?}",
                run.rounds
            );
            assert!(
                run.rounds.len() <= 10,
                "too many rounds at {level:?}, n={n}: {:?}",
                run.rounds
            );
        }
    }

    #[test]
    fn size_guard_rejects_large_levels() {
        let e = essential_idempotent(Level::Integer(5), 9).unwrap();
        match ideal_closure(&[e], Level::Integer(5), &Scalar::from(9)) {
            Err(PaError::SizeGuard { actual, limit: 5000 }) => assert_eq!(actual, 115975),
            other => panic!("expected size guard, got {other:?}"),
        }
    }

    #[test]
    fn verify_kernel_generation_integer_levels() {
        let cases = [
            (Level::Integer(2), 2usize, 7usize),
            (Level::Integer(2), 3, 1),
            (Level::Integer(3), 4, 16),
        ];
        for (level, n, dim) in cases {
            let rep = verify_kernel_generation(level, n).unwrap();
            assert!(rep.pass(), "({level:?},{n}):\n{rep}");
            let e = essential_idempotent(level, n).unwrap();
            let b = ideal_closure(&[e], level, &Scalar::from(n as i64)).unwrap();
            assert_eq!(b.dim(), dim, "dimension at ({level:?},{n})");
        }
    }

    #[test]
    fn verify_kernel_generation_k3_n3() {
        let rep = verify_kernel_generation(Level::Integer(3), 3).unwrap();
        assert!(rep.pass(), "(3,3):\n{rep}");
        let e = essential_idempotent(Level::Integer(3), 3).unwrap();
        let b = ideal_closure(&[e], Level::Integer(3), &Scalar::from(3)).unwrap();
        assert_eq!(b.dim(), 81);
    }

    #[test]
    fn verify_kernel_generation_half_levels() {
        // Half(2) at n = 3: ambient 52, centralizer 41, kernel 11.
        let rep = verify_kernel_generation(Level::Half(2), 3).unwrap();
        assert!(rep.pass(), "Half(2), n=3:\n{rep}");
        let e = essential_idempotent(Level::Half(2), 3).unwrap();
        let b = ideal_closure(&[e], Level::Half(2), &Scalar::from(3)).unwrap();
        assert_eq!(b.dim(), 11);

        let rep = verify_kernel_generation(Level::Half(2), 2).unwrap();
        assert!(rep.pass(), "Half(2), n=2:\n{rep}");
    }

    #[test]
    fn verify_enn_generation_examples() {
        // Zero padding strands: the same generator as the kernel check.
        let rep = verify_enn_generation(Level::Integer(2), 2).unwrap();
        assert!(rep.pass(), "(2,2):\n{rep}");
        let e22 = essential_idempotent(Level::Integer(2), 2).unwrap();
        let g = juxtapose(&e22, 0, Basis::Diagram).unwrap();
        let b = ideal_closure(&[g], Level::Integer(2), &Scalar::from(2)).unwrap();
        assert_eq!(b.dim(), 7);

        let rep = verify_enn_generation(Level::Integer(3), 3).unwrap();
        assert!(rep.pass(), "(3,3):\n{rep}");

        assert!(verify_enn_generation(Level::Integer(2), 3).is_err());
        assert!(verify_enn_generation(Level::Half(2), 1).is_err());
    }

    #[test]
    fn verify_enn_generation_k3_n2() {
        let rep = verify_enn_generation(Level::Integer(3), 2).unwrap();
        assert!(rep.pass(), "(3,2):\n{rep}");
        let e22 = essential_idempotent(Level::Integer(2), 2).unwrap();
        let g = juxtapose(&e22, 1, Basis::Diagram).unwrap();
        let b = ideal_closure(&[g], Level::Integer(3), &Scalar::from(2)).unwrap();
        assert_eq!(b.dim(), 171);
    }

    #[test]
    fn verify_enn_generation_half() {
        // Half(2), n = 2: e_{2,2} ⊗ | restricted to the half algebra.
        let rep = verify_enn_generation(Level::Half(2), 2).unwrap();
        assert!(rep.pass(), "Half(2), n=2:\n{rep}");
    }

    #[test]
    fn propagating_ideal_dimensions_and_closure() {
        let level = Level::Integer(2);
        let n = Scalar::from(3);
        assert_eq!(propagating_ideal(level, 1, &n).unwrap().dim(), 13);
        assert_eq!(propagating_ideal(level, 2, &n).unwrap().dim(), 15);
        assert!(propagating_ideal(level, 3, &n).is_err());

        let spec = XiSpec::Numeric(n.clone());
        for ell in 0..=2 {
            let j = propagating_ideal(level, ell, &n).unwrap();
            for pi in enumerate(level) {
                if pi.propagating_number() > ell {
                    continue;
                }
                let d = AlgebraElement::basis_element(level, Basis::Diagram, spec.clone(), pi)
                    .unwrap();
                for rho in enumerate(level) {
                    let b =
                        AlgebraElement::basis_element(level, Basis::Diagram, spec.clone(), rho)
                            .unwrap();
                    assert!(j.contains(&mul_diagram(&b, &d).unwrap()).unwrap());
                    assert!(j.contains(&mul_diagram(&d, &b).unwrap()).unwrap());
                }
            }
        }
    }

    #[test]
    fn closure_invariant_under_permutation_conjugation() {
        // σ'·e·σ generates the same ideal as e, for seeded random σ', σ.
        let level = Level::Integer(2);
        let n = 2usize;
        let e = to_diagram(&essential_idempotent(level, n).unwrap()).unwrap();
        let reference = ideal_closure(&[e.clone()], level, &Scalar::from(n as i64)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0x1dea);
        let spec = XiSpec::Numeric(Scalar::from(n as i64));
        for _ in 0..5 {
            let mut s1 = vec![1, 2];
            let mut s2 = vec![1, 2];
            s1.shuffle(&mut rng);
            s2.shuffle(&mut rng);
            let p1 = AlgebraElement::basis_element(
                level,
                Basis::Diagram,
                spec.clone(),
                SetPartition::permutation(2, &s1).unwrap(),
            )
            .unwrap();
            let p2 = AlgebraElement::basis_element(
                level,
                Basis::Diagram,
                spec.clone(),
                SetPartition::permutation(2, &s2).unwrap(),
            )
            .unwrap();
            let conj = mul_diagram(&mul_diagram(&p1, &e).unwrap(), &p2).unwrap();
            let b = ideal_closure(&[conj], level, &Scalar::from(n as i64)).unwrap();
            assert_eq!(b, reference, "conjugated closure differs for {s1:?}, {s2:?}");
        }
    }

    #[test]
    fn smaller_padded_idempotent_generates_a_different_ideal() {
        // At (k, n, l) = (3, 3, 2): e_{2,3} ⊗ | does not span the kernel.
        let level = Level::Integer(3);
        let n = 3usize;
        let e23 = essential_idempotent(Level::Integer(2), 3).unwrap();
        let g = juxtapose(&e23, 1, Basis::Diagram).unwrap();
        let b = ideal_closure(&[g], level, &Scalar::from(n as i64)).unwrap();
        let kd = kernel_dim(level, n);
        assert_eq!(kd, 81);
        assert_ne!(b.dim(), kd, "padded smaller idempotent unexpectedly spans the kernel");
        // It is still contained in the kernel: every row maps to zero.
        for i in 0..b.dim() {
            assert!(phi(&b.row_element(i).unwrap(), n).unwrap().is_zero());
        }
    }

    #[test]
    fn closure_is_an_ideal() {
        // The fixed point is closed under multiplication by every diagram.
        let level = Level::Integer(2);
        let n = 2usize;
        let e = essential_idempotent(level, n).unwrap();
        let b = ideal_closure(&[e], level, &Scalar::from(n as i64)).unwrap();
        let spec = XiSpec::Numeric(Scalar::from(n as i64));
        for i in 0..b.dim() {
            let row = b.row_element(i).unwrap();
            for pi in enumerate(level) {
                let d = AlgebraElement::basis_element(level, Basis::Diagram, spec.clone(), pi)
                    .unwrap();
                assert!(b.contains(&mul_diagram(&d, &row).unwrap()).unwrap());
                assert!(b.contains(&mul_diagram(&row, &d).unwrap()).unwrap());
            }
        }
    }

    #[test]
    fn closure_agrees_between_bases() {
        // Generating from the orbit form of e gives the same subspace.
        let level = Level::Integer(2);
        let e = essential_idempotent(level, 3).unwrap();
        let via_orbit = ideal_closure(&[e.clone()], level, &Scalar::from(3)).unwrap();
        let via_diagram =
            ideal_closure(&[to_diagram(&e).unwrap()], level, &Scalar::from(3)).unwrap();
        assert_eq!(via_orbit, via_diagram);
        // And the closure absorbs orbit products too.
        let x = mul_orbit(&e, &e).unwrap();
        assert!(via_orbit.contains(&x).unwrap());
    }
}
