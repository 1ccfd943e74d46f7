//! Property suites for the algebraic invariants: ring laws of the
//! exponential polynomials, derivation rules, extraction linearity and
//! reconstruction, exact matrix inversion, quantum-product laws, sign
//! rules and series round trips.

use donaldson::exppoly::{
    ExpElement, GaussRat, LinForm, Matrix, QuadForm, Var,
};
use donaldson::quantum::{qmul, qpair, RingClass};
use donaldson::series::{
    change_w, dd_eval, k3_two_blowups, Alpha, BasicClass, StructureSeries,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn vars() -> [Var; 3] {
    [Var::new("s"), Var::new("t"), Var::new("u")]
}

fn arb_gauss() -> impl Strategy<Value = GaussRat> {
    (-12i64..=12, 1i64..=6, -12i64..=12, 1i64..=6).prop_map(|(a, b, c, d)| {
        GaussRat::ratio(a, b) + GaussRat::i() * GaussRat::ratio(c, d)
    })
}

fn arb_quadform() -> impl Strategy<Value = QuadForm> {
    let lin = proptest::collection::vec((0usize..3, -3i64..=3), 0..3);
    let quad = proptest::collection::vec((0usize..3, 0usize..3, -2i64..=2), 0..2);
    (lin, quad).prop_map(|(lin, quad)| {
        let vs = vars();
        let mut q = QuadForm::zero();
        for (v, c) in lin {
            q.add_lin(vs[v].clone(), &GaussRat::from_int(c));
        }
        for (a, b, c) in quad {
            q.add_quad(vs[a].clone(), vs[b].clone(), &GaussRat::from_int(c));
        }
        q
    })
}

fn arb_element() -> impl Strategy<Value = ExpElement> {
    let term = (
        arb_gauss(),
        proptest::collection::vec((0usize..3, 1u32..=2), 0..3),
        arb_quadform(),
    );
    proptest::collection::vec(term, 0..4).prop_map(|terms| {
        let vs = vars();
        let mut acc = ExpElement::zero();
        for (coeff, mono, quad) in terms {
            let mut m = donaldson::exppoly::Mono::new();
            for (v, k) in mono {
                *m.entry(vs[v].clone()).or_insert(0) += k;
            }
            acc = acc + ExpElement::from_term(coeff, m, quad);
        }
        acc
    })
}

fn arb_ring_class() -> impl Strategy<Value = RingClass<GaussRat>> {
    [arb_gauss(), arb_gauss(), arb_gauss(), arb_gauss()]
        .prop_map(|[a, b, c, d]| RingClass::new([a, b, c, d]))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn exppoly_ring_laws(a in arb_element(), b in arb_element(), c in arb_element()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &ExpElement::zero(), a.clone());
        prop_assert_eq!(&a * &ExpElement::one(), a.clone());
        prop_assert_eq!(&a - &a, ExpElement::zero());
    }

    #[test]
    fn derivation_rules(a in arb_element(), b in arb_element()) {
        let s = Var::new("s");
        // derivation commutes with addition
        prop_assert_eq!((&a + &b).derive(&s), a.derive(&s) + b.derive(&s));
        // product rule
        prop_assert_eq!(
            (&a * &b).derive(&s),
            a.derive(&s) * &b + &a * b.derive(&s)
        );
    }

    #[test]
    fn extraction_is_linear_and_reconstructs(a in arb_element(), b in arb_element()) {
        let s = Var::new("s");
        // reject elements with s^2 exponents for this invariant
        let Ok(pairs_a) = a.occurring_extractions(&s) else { return Ok(()); };
        let Ok(pairs_b) = b.occurring_extractions(&s) else { return Ok(()); };
        // linearity on a shared extraction slot
        for (k, freq) in pairs_a.iter().chain(pairs_b.iter()) {
            let lhs = (&a + &b).extract(&s, *k, freq).unwrap();
            let rhs = a.extract(&s, *k, freq).unwrap() + b.extract(&s, *k, freq).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
        // reconstruction
        let mut back = ExpElement::zero();
        for (k, freq) in pairs_a {
            back = back
                + a.extract(&s, k, &freq).unwrap() * ExpElement::basis_term(&s, k, &freq);
        }
        prop_assert_eq!(back, a);
    }

    #[test]
    fn quantum_product_laws(a in arb_ring_class(), b in arb_ring_class(), c in arb_ring_class()) {
        prop_assert_eq!(qmul(&a, &b), qmul(&b, &a));
        prop_assert_eq!(qmul(&qmul(&a, &b), &c), qmul(&a, &qmul(&b, &c)));
        prop_assert_eq!(qmul(&RingClass::one(), &a), a.clone());
        // Frobenius identity on random classes
        prop_assert_eq!(qpair(&qmul(&a, &b), &c), qpair(&a, &qmul(&b, &c)));
    }

    #[test]
    fn quantum_product_laws_over_elements(a in arb_element(), b in arb_element()) {
        // spot-check associativity with exponential-polynomial
        // coefficients on classes built from two generators
        let za = RingClass::new([a.clone(), b.clone(), ExpElement::one(), ExpElement::zero()]);
        let zb = RingClass::new([b.clone(), ExpElement::zero(), a.clone(), ExpElement::one()]);
        let zc = RingClass::new([ExpElement::one(), a, ExpElement::zero(), b]);
        prop_assert_eq!(qmul(&za, &zb), qmul(&zb, &za));
        prop_assert_eq!(qmul(&qmul(&za, &zb), &zc), qmul(&za, &qmul(&zb, &zc)));
    }
}

// ---------------------------------------------------------------------
// Structure-series properties on the fixture lattice
// ---------------------------------------------------------------------

/// Random characteristic classes on the fixture lattice with
/// `|K.sigma| <= 2` and `K.sigma` even.
fn random_series(rng: &mut ChaCha8Rng, max_classes: usize) -> StructureSeries {
    let owner = k3_two_blowups().owner;
    let mut classes = Vec::new();
    let count = rng.gen_range(1..=max_classes);
    while classes.len() < count {
        let a = 2 * rng.gen_range(-1i64..=1);
        let d = 2 * rng.gen_range(-1i64..=1);
        let b = 2 * rng.gen_range(-2i64..=1) + 1;
        let c = 2 * rng.gen_range(-2i64..=1) + 1;
        let k = vec![a, b, c, d];
        let ks = owner.lattice.pair(&k, &owner.sigma);
        if ks.abs() > 2 {
            continue;
        }
        let coeff = GaussRat::ratio(rng.gen_range(-8i64..=8), rng.gen_range(1i64..=4));
        if coeff.is_zero() {
            continue;
        }
        classes.push(BasicClass { vector: k, coeff });
    }
    StructureSeries { owner, classes }
}

fn random_w(rng: &mut ChaCha8Rng, series: &StructureSeries) -> Vec<i64> {
    loop {
        let w: Vec<i64> = (0..4).map(|_| rng.gen_range(-2i64..=2)).collect();
        if series
            .owner
            .lattice
            .pair(&w, &series.owner.sigma)
            .rem_euclid(2)
            == 1
        {
            return w;
        }
    }
}

#[test]
fn random_series_validate() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for _ in 0..100 {
        let series = random_series(&mut rng, 4);
        let report = donaldson::series::validate(&series.owner, Some(&series));
        assert!(report.is_valid(), "{report}");
    }
}

#[test]
fn change_w_is_an_involution_on_random_series() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for _ in 0..120 {
        let series = random_series(&mut rng, 4);
        let w_new = random_w(&mut rng, &series);
        let there = change_w(&series, &w_new).unwrap();
        let back = change_w(&there, &series.owner.w).unwrap();
        assert_eq!(back.classes, series.classes);
    }
}

#[test]
fn dd_eval_is_linear_in_the_coefficient_list() {
    let mut rng = ChaCha8Rng::seed_from_u64(43);
    let t = Var::new("t");
    for _ in 0..100 {
        let series = random_series(&mut rng, 5);
        let alpha = Alpha::single(t.clone(), &series.owner.sigma);
        let (head, tail) = series.classes.split_at(series.classes.len() / 2);
        let part = |classes: &[BasicClass]| StructureSeries {
            owner: series.owner.clone(),
            classes: classes.to_vec(),
        };
        let whole = dd_eval(&series, &alpha);
        let sum = dd_eval(&part(head), &alpha) + dd_eval(&part(tail), &alpha);
        assert_eq!(whole, sum);
        // scaling every coefficient scales the value
        let mut scaled = series.clone();
        for bc in &mut scaled.classes {
            bc.coeff = bc.coeff.scale_int(3);
        }
        assert_eq!(
            dd_eval(&scaled, &alpha),
            whole.scale(&GaussRat::from_int(3))
        );
    }
}

#[test]
fn combined_series_round_trip_recovers_the_closed_series() {
    // Separating Gaussian frequencies from real ones in the combined
    // series and undoing the unit recovers the closed series exactly.
    let mut rng = ChaCha8Rng::seed_from_u64(44);
    let names = ["t0", "t1", "t2", "t3"];
    for _ in 0..100 {
        let series = random_series(&mut rng, 4);
        let dx = donaldson::series::dx_from_dd(&series).unwrap();
        let mut alpha = Alpha::new();
        for (k, name) in names.iter().enumerate() {
            let mut basis = vec![0i64; 4];
            basis[k] = 1;
            alpha.push_int(Var::new(name), &basis);
        }
        let combined = dx.eval(&alpha);
        let mut real_part = ExpElement::zero();
        let mut gauss_part = ExpElement::zero();
        for (coeff, mono, quad) in combined.terms() {
            let term = ExpElement::from_term(coeff.clone(), mono.clone(), quad.clone());
            if quad.lin_terms().any(|(_, c)| c.has_imag()) {
                gauss_part = gauss_part + term;
            } else {
                real_part = real_part + term;
            }
        }
        let d0 = series.owner.d0().unwrap();
        let undone = gauss_part
            .scale(&GaussRat::i_pow(d0))
            .scale_all_vars(&-GaussRat::i());
        let recovered = real_part + undone;
        assert_eq!(recovered, dd_eval(&series, &alpha));
    }
}

#[test]
fn adjunction_bounds_surface_frequencies_on_random_series() {
    let mut rng = ChaCha8Rng::seed_from_u64(45);
    let t = Var::new("t");
    for _ in 0..100 {
        let series = random_series(&mut rng, 4);
        let alpha = Alpha::single(t.clone(), &series.owner.sigma);
        let e = dd_eval(&series, &alpha);
        for (_, freq) in e.occurring_extractions(&t).unwrap() {
            assert!(freq.coeffs.is_empty());
            let c = freq.constant;
            assert!(
                c == GaussRat::from_int(2)
                    || c == GaussRat::from_int(-2)
                    || c == GaussRat::zero(),
                "frequency {c} out of the adjunction range"
            );
        }
    }
}

#[test]
fn exact_inverse_round_trip_on_100_random_matrices() {
    let mut rng = ChaCha8Rng::seed_from_u64(46);
    let mut done = 0;
    while done < 100 {
        let n = rng.gen_range(2usize..=4);
        let mut m = Matrix::<GaussRat>::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                m[(r, c)] = GaussRat::ratio(rng.gen_range(-5i64..=5), rng.gen_range(1i64..=3));
            }
        }
        if m.det().is_zero() {
            continue;
        }
        done += 1;
        let inv = m.inverse().unwrap();
        assert_eq!(m.matmul(&inv), Matrix::identity(n));
        assert_eq!(inv.matmul(&m), Matrix::identity(n));
    }
}

#[test]
fn glued_coefficients_are_bilinear_on_random_series() {
    use donaldson::fibersum::{sum_rules, GlueInput};
    let mut rng = ChaCha8Rng::seed_from_u64(47);
    for _ in 0..40 {
        let side1 = random_series(&mut rng, 3);
        let side2 = random_series(&mut rng, 3);
        let lambda = GaussRat::ratio(rng.gen_range(1i64..=5), 1);
        let mut scaled = side1.clone();
        for bc in &mut scaled.classes {
            bc.coeff = &bc.coeff * &lambda;
        }
        let base = sum_rules(&GlueInput::new(side1, side2.clone()).unwrap()).unwrap();
        let scaled = sum_rules(&GlueInput::new(scaled, side2).unwrap()).unwrap();
        for (a, b) in base.rules.iter().zip(&scaled.rules) {
            assert_eq!(&a.claimed_sum * &lambda, b.claimed_sum.clone());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn canonical_text_round_trips(a in arb_element()) {
        let text = a.to_string();
        let back: ExpElement = text.parse().unwrap();
        prop_assert_eq!(back, a);
    }
}

#[test]
fn constant_matrix_inversion_through_elements() {
    use donaldson::exppoly::mat_inv;
    let m = Matrix::from_int_rows(&[
        &[0, 0, 0, 4],
        &[0, 0, 4, 0],
        &[0, 4, 0, 64],
        &[4, 0, 64, 0],
    ])
    .lift();
    let inv = mat_inv(&m).unwrap();
    assert_eq!(inv.matmul(&m), Matrix::<GaussRat>::identity(4).lift());
    // non-constant entries are rejected
    let mut bad = Matrix::<GaussRat>::identity(2).lift();
    bad[(0, 1)] = ExpElement::var(Var::new("s"));
    assert!(mat_inv(&bad).is_err());
    // singular constants are rejected
    let zero = Matrix::<GaussRat>::zeros(2, 2).lift();
    assert!(mat_inv(&zero).is_err());
}

#[test]
fn extraction_frequency_forms_are_consistent() {
    // extraction against a linear-form frequency with a variable part
    let s = Var::new("s");
    let t = Var::new("t");
    let mut q = QuadForm::zero();
    q.add_quad(s.clone(), t.clone(), &GaussRat::from_int(3));
    q.add_lin(s.clone(), &GaussRat::from_int(2));
    let e = ExpElement::exponential(q) * ExpElement::var(s.clone());
    let mut freq = LinForm::constant(GaussRat::from_int(2));
    freq.add_term(t.clone(), &GaussRat::from_int(3));
    assert_eq!(e.extract(&s, 1, &freq).unwrap(), ExpElement::one());
    assert_eq!(e.extract(&s, 0, &freq).unwrap(), ExpElement::zero());
}
