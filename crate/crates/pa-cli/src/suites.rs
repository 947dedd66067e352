//! Aggregated verification batteries for `pa verify all`.
//!
//! The quick profile runs the small-level suites in a few seconds; the full
//! profile runs the complete documented battery (a few minutes, dominated by
//! the ideal closures and the representation sample).  Every entry condenses
//! one suite or one identity into a single pass/fail line; the individual
//! `pa verify` verbs expose the full per-check reports.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use pa_core::algebra::{
    check_presentation, mul_diagram, mul_orbit, to_diagram, to_orbit, AlgebraElement, Basis,
    Coeff, XiSpec,
};
use pa_core::ideal::{verify_enn_generation, verify_kernel_generation};
use pa_core::idempotent::{
    c_const, epsilon_image, essential_idempotent, verify_noncentrality, verify_square_identity,
    verify_steps, verify_xief, xi, xi_diagram_coefficients, xi_half,
};
use pa_core::report::VerificationReport;
use pa_core::scalar::{factorial, Scalar, SymScalar};
use pa_core::schurweyl::{commutant_check, image_rank, kernel_basis, phi, phi_half};
use pa_core::setpart::{enumerate, Level, SetPartition};
use pa_core::PaError;

pub fn quick() -> Result<VerificationReport, PaError> {
    let mut rep = VerificationReport::new();
    presentation_suite(&mut rep, &[2])?;
    basis_change_suite(&mut rep, 2, &[2])?;
    orbit_product_suite(&mut rep, 0)?;
    representation_suite(&mut rep, false)?;
    kernel_dim_suite(&mut rep, &[(Level::Integer(2), 3, 1)])?;
    essential_suite(&mut rep, 2, false)?;
    principal_suite(&mut rep, false)?;
    central_suite(&mut rep, 2, 2, &[(2usize, 5usize)])?;
    projector_suite(&mut rep, &[(1, 2), (1, 3)], &[(1, 3)])?;
    square_suite(&mut rep, 2, 1)?;
    centrality_suite(&mut rep, &[(2, 2), (2, 3)])?;
    Ok(rep)
}

pub fn full() -> Result<VerificationReport, PaError> {
    let mut rep = VerificationReport::new();
    presentation_suite(&mut rep, &[2, 3, 4])?;
    basis_change_suite(&mut rep, 3, &[2, 3])?;
    orbit_product_suite(&mut rep, 512)?;
    representation_suite(&mut rep, true)?;
    kernel_dim_suite(
        &mut rep,
        &[
            (Level::Integer(2), 3, 1),
            (Level::Integer(3), 3, 81),
            (Level::Integer(3), 4, 16),
        ],
    )?;
    essential_suite(&mut rep, 4, true)?;
    principal_suite(&mut rep, true)?;
    central_suite(&mut rep, 3, 4, &[(2, 5), (3, 7)])?;
    projector_suite(
        &mut rep,
        &[(1, 2), (1, 3), (2, 4), (2, 5), (3, 6)],
        &[(1, 3), (1, 4), (2, 5)],
    )?;
    square_suite(&mut rep, 3, 2)?;
    centrality_suite(&mut rep, &[(5, 7), (5, 8), (5, 9), (2, 3), (3, 5)])?;
    Ok(rep)
}

// -------------------------------------------------------------------------
// Individual suites
// -------------------------------------------------------------------------

fn presentation_suite(rep: &mut VerificationReport, ks: &[usize]) -> Result<(), PaError> {
    for &k in ks {
        for xi_val in [2i64, 3, 5, 7] {
            let sub = check_presentation(k, &Scalar::from(xi_val))?;
            rep.check(format!("presentation: k={k}, xi={xi_val}"), sub.pass());
        }
    }
    Ok(())
}

fn basis_change_suite(
    rep: &mut VerificationReport,
    kmax: usize,
    mobius_ks: &[usize],
) -> Result<(), PaError> {
    for k in 1..=kmax {
        let level = Level::Integer(k);
        let mut ok = true;
        for pi in enumerate(level) {
            let d = AlgebraElement::basis_element(level, Basis::Diagram, XiSpec::Symbolic, pi)?;
            if to_diagram(&to_orbit(&d)?)? != d {
                ok = false;
                break;
            }
        }
        rep.check(format!("basis-change: round trip at level {k}"), ok);
    }
    for &k in mobius_ks {
        let parts = enumerate(Level::Integer(k));
        let mut ok = true;
        'outer: for pi in &parts {
            for rho in pi.coarsenings() {
                let mut total = BigInt::zero();
                for tau in pi.coarsenings() {
                    if tau.refines(&rho)? {
                        total += tau.mobius(&rho)?;
                    }
                }
                let expected = if *pi == rho {
                    BigInt::one()
                } else {
                    BigInt::zero()
                };
                if total != expected {
                    ok = false;
                    break 'outer;
                }
            }
        }
        rep.check(
            format!("basis-change: zeta and moebius invert on {} points", 2 * k),
            ok,
        );
    }
    Ok(())
}

fn sym_poly(coeffs: &[i64]) -> Coeff {
    Coeff::Sym(SymScalar::from_coeffs(
        coeffs.iter().map(|&c| Scalar::from(c)).collect(),
    ))
}

fn orbit_symbolic(k: usize, pi: &str) -> Result<AlgebraElement, PaError> {
    AlgebraElement::basis_element(Level::Integer(k), Basis::Orbit, XiSpec::Symbolic, pi.parse()?)
}

fn orbit_product_suite(rep: &mut VerificationReport, k3_pairs: usize) -> Result<(), PaError> {
    // Conjugation: the orbit product agrees with the diagram product
    // transported through the basis change, with xi symbolic, on all pairs
    // at level 2.
    let parts2 = enumerate(Level::Integer(2));
    let mut ok = true;
    'outer: for a in &parts2 {
        for b in &parts2 {
            let xa = AlgebraElement::basis_element(
                Level::Integer(2),
                Basis::Orbit,
                XiSpec::Symbolic,
                a.clone(),
            )?;
            let xb = AlgebraElement::basis_element(
                Level::Integer(2),
                Basis::Orbit,
                XiSpec::Symbolic,
                b.clone(),
            )?;
            let direct = mul_orbit(&xa, &xb)?;
            let routed = to_orbit(&mul_diagram(&to_diagram(&xa)?, &to_diagram(&xb)?)?)?;
            if direct != routed {
                ok = false;
                break 'outer;
            }
        }
    }
    rep.check("orbit-product: conjugation identity on all level-2 pairs", ok);

    if k3_pairs > 0 {
        let parts3 = enumerate(Level::Integer(3));
        let mut rng = ChaCha8Rng::seed_from_u64(0x0437);
        let mut ok = true;
        'outer3: for xi_val in [2i64, 3, 5, 7] {
            let spec = XiSpec::Numeric(Scalar::from(xi_val));
            for _ in 0..k3_pairs / 4 {
                let a = &parts3[rng.gen_range(0..parts3.len())];
                let b = &parts3[rng.gen_range(0..parts3.len())];
                let xa = AlgebraElement::basis_element(
                    Level::Integer(3),
                    Basis::Orbit,
                    spec.clone(),
                    a.clone(),
                )?;
                let xb = AlgebraElement::basis_element(
                    Level::Integer(3),
                    Basis::Orbit,
                    spec.clone(),
                    b.clone(),
                )?;
                let direct = mul_orbit(&xa, &xb)?;
                let routed = to_orbit(&mul_diagram(&to_diagram(&xa)?, &to_diagram(&xb)?)?)?;
                if direct != routed {
                    ok = false;
                    break 'outer3;
                }
            }
        }
        rep.check(
            format!("orbit-product: conjugation identity on {k3_pairs} sampled level-3 pairs"),
            ok,
        );
    }

    // The displayed products, with xi symbolic.
    let a = orbit_symbolic(3, "1,2,3|4,5,6")?;
    let sq = mul_orbit(&a, &a)?;
    let display1 = sq.num_terms() == 2
        && sq.coeff_of(&"1,2,3|4,5,6".parse::<SetPartition>()?) == Some(&sym_poly(&[-2, 1]))
        && sq.coeff_of(&"1,2,3,4,5,6".parse::<SetPartition>()?) == Some(&sym_poly(&[-1, 1]));
    rep.check("orbit-product: displayed square of a two-block element", display1);

    let a = orbit_symbolic(4, "1|2,8|3,4|5|6,7")?;
    let b = orbit_symbolic(4, "1,3|2,6|4|5|7,8")?;
    let prod = mul_orbit(&a, &b)?;
    let mut display2 = prod.num_terms() == 7
        && prod.coeff_of(&"1,3|2,8|4|5|6,7".parse::<SetPartition>()?)
            == Some(&sym_poly(&[30, -11, 1]));
    for rho in [
        "1,3,5|2,8|4|6,7",
        "1,3|2,8|4,5|6,7",
        "1,3,6,7|2,8|4|5",
        "1,3|2,8|4,6,7|5",
    ] {
        display2 &=
            prod.coeff_of(&rho.parse::<SetPartition>()?) == Some(&sym_poly(&[20, -9, 1]));
    }
    for rho in ["1,3,5|2,8|4,6,7", "1,3,6,7|2,8|4,5"] {
        display2 &=
            prod.coeff_of(&rho.parse::<SetPartition>()?) == Some(&sym_poly(&[12, -7, 1]));
    }
    rep.check("orbit-product: displayed product with merged coarsenings", display2);

    let a = orbit_symbolic(4, "1,5|2,6|3,8|4|7")?;
    let b = orbit_symbolic(4, "1,7|2,5|3|4|6|8")?;
    let prod = mul_orbit(&a, &b)?;
    let display3 = prod.num_terms() == 3
        && prod.coeff_of(&"1,8|2,5|3|4|6|7".parse::<SetPartition>()?)
            == Some(&sym_poly(&[-6, 1]))
        && prod.coeff_of(&"1,8|2,5|3,7|4|6".parse::<SetPartition>()?)
            == Some(&sym_poly(&[-5, 1]))
        && prod.coeff_of(&"1,8|2,5|3|4,7|6".parse::<SetPartition>()?)
            == Some(&sym_poly(&[-5, 1]));
    rep.check("orbit-product: displayed matching sum", display3);

    let a = orbit_symbolic(6, "1|2,3,7|4,5|6,9,11|8,10|12")?;
    let b = orbit_symbolic(6, "1,3|2,7|4,5,6,12|8,9|10|11")?;
    let zero = mul_orbit(&a, &b)?.is_zero();
    let a = orbit_symbolic(6, "1|2,7|3,8|4,12|5,10|6|9,11")?;
    let b = orbit_symbolic(6, "1,8|2,7|3,11|4,9|5,12|6,10")?;
    let prod = mul_orbit(&a, &b)?;
    let display4 = zero
        && prod.num_terms() == 1
        && prod.coeff_of(&"1,7|2|3,10|4,8|5|6,12|9,11".parse::<SetPartition>()?)
            == Some(&sym_poly(&[1]));
    rep.check(
        "orbit-product: displayed middle mismatch and exact match",
        display4,
    );
    Ok(())
}

fn representation_suite(rep: &mut VerificationReport, full: bool) -> Result<(), PaError> {
    // Homomorphism on all level-2 pairs.
    let parts2 = enumerate(Level::Integer(2));
    let ns2: &[usize] = if full { &[2, 3, 4, 5] } else { &[2, 3] };
    for &n in ns2 {
        let spec = XiSpec::Numeric(Scalar::from(n as i64));
        let mut ok = true;
        'outer: for a in &parts2 {
            for b in &parts2 {
                let da = AlgebraElement::basis_element(
                    Level::Integer(2),
                    Basis::Diagram,
                    spec.clone(),
                    a.clone(),
                )?;
                let db = AlgebraElement::basis_element(
                    Level::Integer(2),
                    Basis::Diagram,
                    spec.clone(),
                    b.clone(),
                )?;
                let lhs = phi(&mul_diagram(&da, &db)?, n)?;
                let rhs = phi(&da, n)?.mul(&phi(&db, n)?)?;
                if lhs != rhs {
                    ok = false;
                    break 'outer;
                }
            }
        }
        rep.check(
            format!("representation: homomorphism on all level-2 pairs at n={n}"),
            ok,
        );
    }

    if full {
        // 300 sampled pairs at level 3.
        let parts3 = enumerate(Level::Integer(3));
        let mut rng = ChaCha8Rng::seed_from_u64(0x5c0e9);
        let mut ok = true;
        'outer3: for n in [3usize, 4, 5, 6] {
            let spec = XiSpec::Numeric(Scalar::from(n as i64));
            for _ in 0..75 {
                let a = &parts3[rng.gen_range(0..parts3.len())];
                let b = &parts3[rng.gen_range(0..parts3.len())];
                let da = AlgebraElement::basis_element(
                    Level::Integer(3),
                    Basis::Diagram,
                    spec.clone(),
                    a.clone(),
                )?;
                let db = AlgebraElement::basis_element(
                    Level::Integer(3),
                    Basis::Diagram,
                    spec.clone(),
                    b.clone(),
                )?;
                let lhs = phi(&mul_diagram(&da, &db)?, n)?;
                let rhs = phi(&da, n)?.mul(&phi(&db, n)?)?;
                if lhs != rhs {
                    ok = false;
                    break 'outer3;
                }
            }
        }
        rep.check(
            "representation: homomorphism on 300 sampled level-3 pairs",
            ok,
        );
    }

    // Commutant and rank checks.
    let commutant_cases: &[(Level, usize)] = if full {
        &[
            (Level::Integer(2), 2),
            (Level::Integer(2), 3),
            (Level::Integer(2), 4),
            (Level::Integer(3), 3),
        ]
    } else {
        &[(Level::Integer(2), 3)]
    };
    for &(level, n) in commutant_cases {
        let sub = commutant_check(level, n, 2)?;
        rep.check(
            format!("representation: commutant check at level {level}, n={n}"),
            sub.pass(),
        );
    }
    let rank_cases: &[(Level, usize, usize)] = if full {
        &[
            (Level::Integer(2), 2, 8),
            (Level::Integer(2), 3, 14),
            (Level::Integer(2), 4, 15),
            (Level::Integer(3), 3, 122),
        ]
    } else {
        &[(Level::Integer(2), 2, 8), (Level::Integer(2), 3, 14)]
    };
    for &(level, n, expected) in rank_cases {
        let rank = image_rank(level, n)?;
        let dim = pa_core::schurweyl::centralizer_dim(level, n);
        rep.check(
            format!("representation: image rank {expected} at level {level}, n={n}"),
            rank == expected && dim == expected,
        );
    }
    Ok(())
}

fn kernel_dim_suite(
    rep: &mut VerificationReport,
    cases: &[(Level, usize, usize)],
) -> Result<(), PaError> {
    for &(level, n, expected) in cases {
        let size = kernel_basis(level, n).len();
        rep.check(
            format!("kernel-dims: {expected} at level {level}, n={n}"),
            size == expected,
        );
    }
    Ok(())
}

fn essential_suite(
    rep: &mut VerificationReport,
    kmax: usize,
    include_5_6: bool,
) -> Result<(), PaError> {
    for k in 1..=kmax {
        let mut ok = true;
        for n in 1..2 * k {
            let e = essential_idempotent(Level::Integer(k), n)?;
            let c = c_const(k, n)?;
            if mul_orbit(&e, &e)? != e.scale_scalar(&c)? {
                ok = false;
                break;
            }
        }
        rep.check(
            format!("essential-idempotents: e^2 = c e for all n at level {k}"),
            ok,
        );
    }
    if include_5_6 {
        let e = essential_idempotent(Level::Integer(5), 6)?;
        let ok = c_const(5, 6)? == Scalar::from(2)
            && mul_orbit(&e, &e)? == e.scale_scalar(&Scalar::from(2))?;
        rep.check("essential-idempotents: c = 2 at level 5, n=6", ok);
    }
    Ok(())
}

/// Extracts the recorded closure dimension from a generation report.
fn recorded_dim(rep: &VerificationReport) -> Option<u64> {
    rep.entries.iter().find_map(|e| {
        e.witness
            .as_ref()
            .and_then(|w| w.get("dim"))
            .and_then(|d| d.as_u64())
    })
}

fn principal_suite(rep: &mut VerificationReport, full: bool) -> Result<(), PaError> {
    let kernel_cases: &[(Level, usize, Option<u64>)] = if full {
        &[
            (Level::Integer(2), 2, Some(7)),
            (Level::Integer(2), 3, Some(1)),
            (Level::Integer(3), 3, Some(81)),
            (Level::Integer(3), 4, Some(16)),
            (Level::Half(2), 2, None),
            (Level::Half(2), 3, Some(11)),
        ]
    } else {
        &[
            (Level::Integer(2), 2, Some(7)),
            (Level::Integer(2), 3, Some(1)),
        ]
    };
    for &(level, n, dim) in kernel_cases {
        let sub = verify_kernel_generation(level, n)?;
        let mut ok = sub.pass();
        if let Some(d) = dim {
            ok &= recorded_dim(&sub) == Some(d);
        }
        rep.check(
            format!("principal-generation: kernel ideal at level {level}, n={n}"),
            ok,
        );
    }
    let enn_cases: &[(Level, usize, u64)] = if full {
        &[
            (Level::Integer(2), 2, 7),
            (Level::Integer(3), 2, 171),
            (Level::Integer(3), 3, 81),
        ]
    } else {
        &[(Level::Integer(2), 2, 7)]
    };
    for &(level, n, dim) in enn_cases {
        let sub = verify_enn_generation(level, n)?;
        let ok = sub.pass() && recorded_dim(&sub) == Some(dim);
        rep.check(
            format!("principal-generation: padded idempotent at level {level}, n={n} (dim {dim})"),
            ok,
        );
    }
    Ok(())
}

fn central_suite(
    rep: &mut VerificationReport,
    steps_kmax: usize,
    xief_kmax: usize,
    coeff_cases: &[(usize, usize)],
) -> Result<(), PaError> {
    for k in 1..=steps_kmax {
        for n in 2 * k - 1..=2 * k + 3 {
            let sub = verify_steps(k, n)?;
            rep.check(
                format!("central-idempotents: absorption and idempotency at k={k}, n={n}"),
                sub.pass(),
            );
        }
    }
    for &(k, n) in coeff_cases {
        let coeffs = xi_diagram_coefficients(k, n)?;
        let expected = Scalar::one() / Scalar::from_bigint(factorial(k));
        let mut perms = 0usize;
        let mut ok = true;
        for (pi, c) in &coeffs {
            if pi.is_permutation() {
                perms += 1;
                ok &= c == &expected;
            }
        }
        ok &= perms == (1..=k).product::<usize>();
        rep.check(
            format!("central-idempotents: permutation diagram coefficient 1/{k}! at (k,n)=({k},{n})"),
            ok,
        );
    }
    for k in 1..=xief_kmax {
        let sub = verify_xief(k)?;
        rep.check(
            format!("central-idempotents: boundary collapse at k={k}"),
            sub.pass(),
        );
    }
    Ok(())
}

fn projector_suite(
    rep: &mut VerificationReport,
    integer_cases: &[(usize, usize)],
    half_cases: &[(usize, usize)],
) -> Result<(), PaError> {
    for &(k, n) in integer_cases {
        let lhs = phi(&xi(k, n)?, n)?;
        let rhs = epsilon_image(n, k, Level::Integer(k), false)?;
        rep.check(
            format!("projector: representation image equals the group projector at (k,n)=({k},{n})"),
            lhs == rhs,
        );
    }
    for &(k, n) in half_cases {
        let lhs = phi_half(&xi_half(k, n)?, n)?;
        let rhs = epsilon_image(n, k, Level::Half(k), true)?;
        rep.check(
            format!("projector: half-level image equals the group projector at (k,n)=({k},{n})"),
            lhs == rhs,
        );
    }
    Ok(())
}

fn square_suite(rep: &mut VerificationReport, nmax: usize, ellmax: usize) -> Result<(), PaError> {
    for n in 1..=nmax {
        for ell in 0..=ellmax {
            let sub = verify_square_identity(n, ell)?;
            rep.check(format!("square: padded square at n={n}, strands={ell}"), sub.pass());
        }
    }
    Ok(())
}

fn centrality_suite(rep: &mut VerificationReport, cases: &[(usize, usize)]) -> Result<(), PaError> {
    for &(k, n) in cases {
        let sub = verify_noncentrality(k, n)?;
        let mut ok = sub.pass();
        if n == 2 * k - 1 && 2 * k <= 8 {
            // The centrality scan must actually have run at small levels.
            ok &= sub.entries.iter().any(|e| e.check.starts_with("central:"));
        }
        rep.check(format!("centrality: witness products at (k,n)=({k},{n})"), ok);
    }
    Ok(())
}
