//! The relative-invariant pairing pipeline for splitting a 4-manifold
//! along a genus-2 surface times a circle: relative vectors, the
//! pairing matrix `B(s)`, the coefficient matrix `A_psi`, the universal
//! matrix `U`, and the cap (disc-bundle) computations that normalize
//! everything.
//!
//! Conventions. Relative vectors hold dual-basis components, so two of
//! them pair through the dual pairing `(1/4) M'`; inserting `exp(s *
//! mu_sigma)` between them gives `B(s) = (1/4) M' * mult(exp(s
//! mu_sigma))`. Coefficient vectors decompose a series against the
//! function basis `(e^{2s} e^{ts}, e^{-2s} e^{ts}, e^{ts}, s e^{ts})`.
//! `A_psi` is normalized so that `(e^{2s}, e^{-2s}, 1, s) A_psi phi =
//! phi^T B(s) psi` holds identically, and `U(a)` so that `A_a^T U A_a =
//! (1/4) M'` holds whenever `A_a` is invertible.

use crate::exppoly::{ExpElement, ExpMatrix, GaussRat, Matrix, QuadForm, Var};
use crate::quantum::{dual_pairing_matrix, exp_mu_sigma, mult_matrix, qpair, RingClass};
use crate::series::StructureSeries;
use crate::Error;

/// Dual-basis components of a relative invariant: four exponential
/// polynomials in the time variable of the chosen cross-neck class.
#[derive(Clone, PartialEq, Debug)]
pub struct RelVector {
    pub comps: [ExpElement; 4],
}

impl RelVector {
    pub fn zero() -> Self {
        RelVector {
            comps: [
                ExpElement::zero(),
                ExpElement::zero(),
                ExpElement::zero(),
                ExpElement::zero(),
            ],
        }
    }

    /// The cap normalization vector: dual coordinates of the ring unit,
    /// `(0, 0, 0, 4)`.
    pub fn cap_unit() -> Self {
        RelVector {
            comps: [
                ExpElement::zero(),
                ExpElement::zero(),
                ExpElement::zero(),
                ExpElement::from_int(4),
            ],
        }
    }

    /// Dual coordinates of a constant ring class: component `m` is the
    /// pairing with `h^m`.
    pub fn from_ring_class(z: &RingClass<GaussRat>) -> Self {
        let comps: Vec<ExpElement> = (0..4)
            .map(|m| ExpElement::from_gauss(qpair(z, &RingClass::h_power(m))))
            .collect();
        RelVector {
            comps: comps.try_into().expect("four components"),
        }
    }

    pub fn from_consts(c: [GaussRat; 4]) -> Self {
        RelVector {
            comps: c.map(ExpElement::from_gauss),
        }
    }

    /// Simple-type owners produce vectors with `comps[3] = 16 comps[1]`.
    pub fn satisfies_simple_type_relation(&self) -> bool {
        self.comps[3] == self.comps[1].scale(&GaussRat::from_int(16))
    }
}

/// Components of a series against the basis
/// `(e^{2s} e^{ts}, e^{-2s} e^{ts}, e^{ts}, s e^{ts})`; simple-type
/// owners have a vanishing fourth component.
#[derive(Clone, PartialEq, Debug)]
pub struct CoefVector {
    pub comps: [ExpElement; 4],
}

/// Sector sums of a simple-type structure series against a normalized
/// square-zero class `dbar` meeting the surface once: the components
/// are the sums of `a_i e^{t K_i.dbar}` over `K.S = 2, -2, 0` and a
/// zero fourth component.
pub fn v_vector(series: &StructureSeries, dbar: &[i64], t: &Var) -> Result<CoefVector, Error> {
    let owner = &series.owner;
    if !owner.simple_type {
        return Err(Error::NotSimpleType);
    }
    if dbar.len() != owner.lattice.rank() {
        return Err(Error::Validation("dbar has the wrong length".into()));
    }
    let dbar_sq = owner.lattice.pair(dbar, dbar);
    if dbar_sq != 0 {
        return Err(Error::NotNormalized(format!("dbar^2 = {dbar_sq}, expected 0")));
    }
    if owner.lattice.pair(dbar, &owner.sigma) != 1 {
        return Err(Error::NotNormalized("dbar.sigma must be 1".into()));
    }
    let mut comps = [
        ExpElement::zero(),
        ExpElement::zero(),
        ExpElement::zero(),
        ExpElement::zero(),
    ];
    for bc in &series.classes {
        let ks = owner.lattice.pair(&bc.vector, &owner.sigma);
        let slot = match ks {
            2 => 0,
            -2 => 1,
            0 => 2,
            other => {
                return Err(Error::Validation(format!(
                    "basic class with K.sigma = {other} on a genus-2 descriptor"
                )))
            }
        };
        let freq = owner.lattice.pair(&bc.vector, dbar);
        let term = ExpElement::exponential(QuadForm::linear(
            t.clone(),
            GaussRat::from_int(freq),
        ))
        .scale(&bc.coeff);
        comps[slot] = &comps[slot] + term;
    }
    Ok(CoefVector { comps })
}

/// Dual-basis components of the relative invariant read from the
/// closed-manifold series: component `l` is the sector-sum value of the
/// combined series on `2^l S^l * S^extra_sigma x^extra_x * e^{t dbar}`,
/// where each surface insertion contributes its frequency `K.S` (or
/// `i K.S` in the Gaussian sector) and each point insertion contributes
/// a factor 2 with a sign flip of the Gaussian sector.
pub fn relative_from_closed(
    series: &StructureSeries,
    dbar: &[i64],
    extra_sigma: u32,
    extra_x: u32,
    t: &Var,
) -> Result<RelVector, Error> {
    let owner = &series.owner;
    if dbar.len() != owner.lattice.rank() {
        return Err(Error::Validation("dbar has the wrong length".into()));
    }
    let dbar_sq = owner.lattice.pair(dbar, dbar);
    if dbar_sq != 0 {
        return Err(Error::NotNormalized(format!("dbar^2 = {dbar_sq}, expected 0")));
    }
    let unit = owner.i_pow_minus_d0()?;
    let two_pow_b = GaussRat::pow2(extra_x as i64);
    let x_sign = if extra_x.is_multiple_of(2) {
        GaussRat::one()
    } else {
        -GaussRat::one()
    };
    let mut comps = Vec::with_capacity(4);
    for l in 0..4u32 {
        let power = l + extra_sigma;
        let mut acc = ExpElement::zero();
        for bc in &series.classes {
            let ks = owner.lattice.pair(&bc.vector, &owner.sigma);
            let kd = owner.lattice.pair(&bc.vector, dbar);
            match ks.rem_euclid(4) {
                2 => {
                    let freq =
                        QuadForm::linear(t.clone(), GaussRat::from_int(kd));
                    let weight = GaussRat::from_int(ks).pow(power);
                    acc = acc
                        + ExpElement::exponential(freq)
                            .scale(&(&bc.coeff * &weight * &two_pow_b));
                }
                0 => {
                    let freq = QuadForm::linear(
                        t.clone(),
                        GaussRat::i().scale_int(kd),
                    );
                    let weight = (GaussRat::i().scale_int(ks)).pow(power);
                    let coeff = &bc.coeff * &unit * &weight * &two_pow_b * &x_sign;
                    acc = acc + ExpElement::exponential(freq).scale(&coeff);
                }
                other => {
                    return Err(Error::Validation(format!(
                        "basic class with odd K.sigma = {other} (mod 4)"
                    )))
                }
            }
        }
        comps.push(acc.scale(&GaussRat::pow2(l as i64)));
    }
    Ok(RelVector {
        comps: comps.try_into().expect("four components"),
    })
}

/// The pairing-with-exponential matrix
/// `B(s) = (1/4) M' * mult(exp(s mu_sigma))`:
///
/// ```text
/// (1/4) [ 0    -16   0               1                   ]
///       [ -16  -8s   1               s/2                 ]
///       [ 0    1     (sinh 2s)/4     (cosh 2s - 1)/16    ]
///       [ 1    s/2   (cosh 2s - 1)/16 (sinh 2s - 2s)/64  ]
/// ```
pub fn b_matrix(s: &Var) -> ExpMatrix {
    dual_pairing_matrix()
        .lift()
        .matmul(&mult_matrix(&exp_mu_sigma(s)))
}

/// Pairing of two relative vectors with `exp(s mu_sigma)` inserted and
/// the cross-term exponential: `e^{ts} phi^T B(s) psi`. Passing `None`
/// for the time variable omits the cross factor (no cross-neck class
/// was inserted, as in the product-of-caps value).
pub fn pair_relative(
    phi: &RelVector,
    psi: &RelVector,
    s: &Var,
    t: Option<&Var>,
) -> ExpElement {
    pair_relative_general(phi, psi, s, t, 1)
}

/// The same pairing for a cross-neck class meeting the surface
/// `sigma_dot_d` times: the cross factor becomes `e^{n ts}`. Only the
/// unit case is exercised by the conformance suite.
pub fn pair_relative_general(
    phi: &RelVector,
    psi: &RelVector,
    s: &Var,
    t: Option<&Var>,
    sigma_dot_d: i64,
) -> ExpElement {
    let core = b_matrix(s).bilinear(&phi.comps, &psi.comps);
    match t {
        None => core,
        Some(t) => {
            let mut q = QuadForm::zero();
            q.add_quad(s.clone(), t.clone(), &GaussRat::from_int(sigma_dot_d));
            ExpElement::exponential(q) * core
        }
    }
}

/// Pairing of two relative vectors with nothing inserted:
/// `phi^T (1/4) M' psi`.
pub fn pair_dual(phi: &RelVector, psi: &RelVector) -> ExpElement {
    dual_pairing_matrix()
        .lift()
        .bilinear(&phi.comps, &psi.comps)
}

fn lincomb(parts: &[(GaussRat, &ExpElement)]) -> ExpElement {
    let mut acc = ExpElement::zero();
    for (c, e) in parts {
        acc = acc + e.scale(c);
    }
    acc
}

/// The coefficient matrix `A_psi`: decomposing `phi^T B(s) psi` against
/// `(e^{2s}, e^{-2s}, 1, s)` gives the coefficient vector `A_psi phi`.
/// Rows are indexed by the function basis, columns by `phi`.
pub fn a_matrix(psi: &[ExpElement; 4]) -> ExpMatrix {
    let r = GaussRat::ratio;
    let z = ExpElement::zero();
    let rows = vec![
        vec![
            z.clone(),
            z.clone(),
            lincomb(&[(r(1, 32), &psi[2]), (r(1, 128), &psi[3])]),
            lincomb(&[(r(1, 128), &psi[2]), (r(1, 512), &psi[3])]),
        ],
        vec![
            z.clone(),
            z.clone(),
            lincomb(&[(r(-1, 32), &psi[2]), (r(1, 128), &psi[3])]),
            lincomb(&[(r(1, 128), &psi[2]), (r(-1, 512), &psi[3])]),
        ],
        vec![
            lincomb(&[(r(-4, 1), &psi[1]), (r(1, 4), &psi[3])]),
            lincomb(&[(r(-4, 1), &psi[0]), (r(1, 4), &psi[2])]),
            lincomb(&[(r(1, 4), &psi[1]), (r(-1, 64), &psi[3])]),
            lincomb(&[(r(1, 4), &psi[0]), (r(-1, 64), &psi[2])]),
        ],
        vec![
            z.clone(),
            lincomb(&[(r(-2, 1), &psi[1]), (r(1, 8), &psi[3])]),
            z.clone(),
            lincomb(&[(r(1, 8), &psi[1]), (r(-1, 128), &psi[3])]),
        ],
    ];
    Matrix::from_rows(rows)
}

/// `A_a` for constant cap components.
pub fn a_matrix_const(a: &[GaussRat; 4]) -> Matrix<GaussRat> {
    let lifted: [ExpElement; 4] = a.clone().map(ExpElement::from_gauss);
    a_matrix(&lifted).to_const().expect("constant by construction")
}

/// The three linear factors controlling invertibility of `A_a`:
/// `a3 + 4 a2`, `a3 - 4 a2`, `a3 - 16 a1`. The determinant of `A_a`
/// vanishes exactly when one of them does.
pub fn cap_factors(a: &[GaussRat; 4]) -> [GaussRat; 3] {
    let four_a2 = a[2].scale_int(4);
    [
        &a[3] + &four_a2,
        &a[3] - &four_a2,
        &a[3] - &a[1].scale_int(16),
    ]
}

/// The universal pairing matrix `U(a) = (A_a^{-1})^T (1/4) M' A_a^{-1}`
/// in closed form. With `P = a3 + 4a2`, `Q = a3 - 4a2`, `R = a3 - 16a1`
/// and `S = a2 - 16a0`:
///
/// ```text
/// [ 512/P^2   0          0         0         ]
/// [ 0         -512/Q^2   0         0         ]
/// [ 0         0          0         -128/R^2  ]
/// [ 0         0          -128/R^2  512 S/R^3 ]
/// ```
///
/// Fails with `SingularCap` when `P Q R = 0`, which is exactly the
/// degeneracy locus of `A_a`.
pub fn u_matrix(a: &[GaussRat; 4]) -> Result<Matrix<GaussRat>, Error> {
    let [p, q, r] = cap_factors(a);
    for (factor, name) in [(&p, "a3 + 4*a2"), (&q, "a3 - 4*a2"), (&r, "a3 - 16*a1")] {
        if factor.is_zero() {
            return Err(Error::SingularCap(format!("{name} = 0")));
        }
    }
    let s = &a[2] - &a[0].scale_int(16);
    let mut u = Matrix::<GaussRat>::zeros(4, 4);
    u[(0, 0)] = &GaussRat::from_int(512) * &(&p * &p).inverse()?;
    u[(1, 1)] = -&(&GaussRat::from_int(512) * &(&q * &q).inverse()?);
    let off = -&(&GaussRat::from_int(128) * &(&r * &r).inverse()?);
    u[(2, 3)] = off.clone();
    u[(3, 2)] = off;
    u[(3, 3)] = &(&GaussRat::from_int(512) * &s) * &(&r * &r * &r).inverse()?;
    Ok(u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exppoly::{cosh_int, exp_int, sinh_int};
    use crate::series::k3_two_blowups;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn s() -> Var {
        Var::new("s")
    }

    fn t() -> Var {
        Var::new("t")
    }

    /// The reference form of `B`, built entry by entry without the ring.
    fn reference_b(s: &Var) -> ExpMatrix {
        let r = GaussRat::ratio;
        let sv = ExpElement::var(s.clone());
        let sinh = sinh_int(s, 2);
        let cosh = cosh_int(s, 2);
        let c = (cosh.clone() - ExpElement::one()).scale(&r(1, 16));
        let d = (sinh.clone() - sv.scale(&GaussRat::from_int(2))).scale(&r(1, 64));
        Matrix::from_rows(vec![
            vec![
                ExpElement::zero(),
                ExpElement::from_int(-16),
                ExpElement::zero(),
                ExpElement::one(),
            ],
            vec![
                ExpElement::from_int(-16),
                sv.scale(&GaussRat::from_int(-8)),
                ExpElement::one(),
                sv.scale(&r(1, 2)),
            ],
            vec![
                ExpElement::zero(),
                ExpElement::one(),
                sinh.scale(&r(1, 4)),
                c.clone(),
            ],
            vec![ExpElement::one(), sv.scale(&r(1, 2)), c, d],
        ])
        .scale(&ExpElement::ratio(1, 4))
    }

    #[test]
    fn b_matrix_matches_reference_form() {
        assert_eq!(b_matrix(&s()), reference_b(&s()));
        // spot entries: (1,1) = -2s, (2,2) = sinh(2s)/16
        let b = b_matrix(&s());
        assert_eq!(
            b[(1, 1)],
            ExpElement::var(s()).scale(&GaussRat::from_int(-2))
        );
        assert_eq!(b[(2, 2)], sinh_int(&s(), 2).scale(&GaussRat::ratio(1, 16)));
        // at s = 0 it degenerates to the dual pairing
        assert_eq!(b.subst_zero(&s()), dual_pairing_matrix().lift());
    }

    #[test]
    fn cap_cap_pairing_is_the_product_of_discs_value() {
        let cap = RelVector::cap_unit();
        let got = pair_relative(&cap, &cap, &s(), None);
        let expect = (sinh_int(&s(), 2)
            - ExpElement::var(s()).scale(&GaussRat::from_int(2)))
        .scale(&GaussRat::ratio(1, 16));
        assert_eq!(got, expect);
        assert_eq!(
            got.to_string(),
            "(1/32)*exp(2*s) - (1/32)*exp(-2*s) - (1/8)*s"
        );
        // with the time variable, the same value is prefixed by e^{ts}
        let with_t = pair_relative(&cap, &cap, &s(), Some(&t()));
        assert_eq!(with_t.subst_zero(&t()), got);
        // zero vector pairs to zero
        assert!(pair_relative(&RelVector::zero(), &cap, &s(), None).is_zero());
    }

    #[test]
    fn relative_vector_of_fixture() {
        let series = k3_two_blowups();
        let phi = relative_from_closed(&series, &[0, 0, 0, 1], 1, 0, &t()).unwrap();
        assert_eq!(
            phi.comps,
            [
                ExpElement::one(),
                ExpElement::zero(),
                ExpElement::from_int(16),
                ExpElement::zero()
            ]
        );
        assert!(phi.satisfies_simple_type_relation());
        // zero series gives the zero vector
        let empty = StructureSeries {
            owner: series.owner.clone(),
            classes: vec![],
        };
        let z = relative_from_closed(&empty, &[0, 0, 0, 1], 0, 0, &t()).unwrap();
        assert_eq!(z, RelVector::zero());
    }

    #[test]
    fn relative_vector_simple_type_relation_with_frequencies() {
        // dbar with nonzero pairings against the basic classes
        let series = k3_two_blowups();
        let dbar = [1, -2, 0, 1];
        assert_eq!(series.owner.lattice.pair(&dbar, &dbar), 0);
        assert_eq!(series.owner.lattice.pair(&dbar, &series.owner.sigma), 1);
        let phi = relative_from_closed(&series, &dbar, 0, 0, &t()).unwrap();
        assert!(phi.satisfies_simple_type_relation());
        assert_eq!(
            phi.comps[1],
            exp_int(&t(), 2) + exp_int(&t(), -2)
        );
    }

    #[test]
    fn point_insertion_oracle_discriminates_mu_x() {
        // Phi for S-insertion against the cap decorated with the point
        // class: the pairing at s = 0 must give D(S x) = 2, and only
        // the adopted mu_x produces it.
        let series = k3_two_blowups();
        let phi = relative_from_closed(&series, &[0, 0, 0, 1], 1, 0, &t()).unwrap();
        let candidates: [(RingClass<GaussRat>, GaussRat); 3] = [
            (crate::quantum::mu_x(), GaussRat::from_int(2)),
            // opposite sign: -h^2/4 + 2
            (
                RingClass::new([
                    GaussRat::from_int(2),
                    GaussRat::zero(),
                    GaussRat::ratio(-1, 4),
                    GaussRat::zero(),
                ]),
                GaussRat::from_int(-2),
            ),
            // -4h^2 + 2
            (
                RingClass::new([
                    GaussRat::from_int(2),
                    GaussRat::zero(),
                    GaussRat::from_int(-4),
                    GaussRat::zero(),
                ]),
                GaussRat::from_int(-62),
            ),
        ];
        for (cls, expected) in &candidates {
            let psi = RelVector::from_ring_class(cls);
            let got = pair_dual(&phi, &psi);
            assert_eq!(got, ExpElement::from_gauss(expected.clone()));
        }
        // the full s-dependent pairing agrees with the series route
        let psi = RelVector::from_ring_class(&crate::quantum::mu_x());
        let paired = pair_relative(&phi, &psi, &s(), None);
        let dx = crate::series::dx_from_dd(&series).unwrap();
        let alpha = crate::series::Alpha::single(s(), &series.owner.sigma);
        assert_eq!(paired, dx.eval_insertions(&alpha, 1, 1));
    }

    #[test]
    fn v_vector_of_fixture() {
        let series = k3_two_blowups();
        let v = v_vector(&series, &[0, 0, 0, 1], &t()).unwrap();
        assert_eq!(v.comps[0].subst_zero(&t()), ExpElement::ratio(1, 4));
        assert_eq!(v.comps[1].subst_zero(&t()), ExpElement::ratio(-1, 4));
        assert!(v.comps[2].is_zero());
        assert!(v.comps[3].is_zero());
        // a dbar pairing 2 against the positive-sector class shifts the
        // frequency: first component (1/4) e^{2t}
        let v = v_vector(&series, &[1, -2, 0, 1], &t()).unwrap();
        assert_eq!(v.comps[0], exp_int(&t(), 2).scale(&GaussRat::ratio(1, 4)));
        // empty series gives all-zero components
        let empty = StructureSeries {
            owner: series.owner.clone(),
            classes: vec![],
        };
        let v = v_vector(&empty, &[0, 0, 0, 1], &t()).unwrap();
        assert!(v.comps.iter().all(|c| c.is_zero()));
        // non-normalized dbar is rejected
        assert!(matches!(
            v_vector(&series, &[1, 0, 0, 0], &t()),
            Err(Error::NotNormalized(_))
        ));
    }

    fn random_gauss(rng: &mut ChaCha8Rng) -> GaussRat {
        GaussRat::ratio(rng.gen_range(-8i64..=8), rng.gen_range(1i64..=4))
    }

    #[test]
    fn a_matrix_defining_identity_on_random_specializations() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let sv = s();
        let basis = [
            exp_int(&sv, 2),
            exp_int(&sv, -2),
            ExpElement::one(),
            ExpElement::var(sv.clone()),
        ];
        for _ in 0..20 {
            let phi: [ExpElement; 4] =
                std::array::from_fn(|_| ExpElement::from_gauss(random_gauss(&mut rng)));
            let psi: [ExpElement; 4] =
                std::array::from_fn(|_| ExpElement::from_gauss(random_gauss(&mut rng)));
            let a = a_matrix(&psi);
            let coef = a.mul_col_vec(&phi);
            let mut lhs = ExpElement::zero();
            for (b, c) in basis.iter().zip(&coef) {
                lhs = lhs + b * c;
            }
            let rhs = b_matrix(&sv).bilinear(&phi, &psi);
            assert_eq!(lhs, rhs);
        }
        // psi = 0 gives the zero matrix
        let zero = a_matrix(&std::array::from_fn(|_| ExpElement::zero()));
        assert!((0..4).all(|r| (0..4).all(|c| zero[(r, c)].is_zero())));
    }

    #[test]
    fn a_matrix_entry_in_symbolic_components() {
        // entry (0, 2) is psi2/32 + psi3/128, i.e. (4 psi3 + 16 psi2)/512
        let psi: [ExpElement; 4] = std::array::from_fn(|k| {
            ExpElement::var(Var::new(&format!("p{k}")))
        });
        let a = a_matrix(&psi);
        let expect = psi[2].scale(&GaussRat::ratio(1, 32))
            + psi[3].scale(&GaussRat::ratio(1, 128));
        assert_eq!(a[(0, 2)], expect);
    }

    fn random_admissible(rng: &mut ChaCha8Rng) -> [GaussRat; 4] {
        loop {
            let a: [GaussRat; 4] = std::array::from_fn(|_| random_gauss(rng));
            if cap_factors(&a).iter().all(|f| !f.is_zero()) {
                return a;
            }
        }
    }

    #[test]
    fn u_matrix_conjugation_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let a = random_admissible(&mut rng);
            let u = u_matrix(&a).unwrap();
            let am = a_matrix_const(&a);
            let got = am.transpose().matmul(&u).matmul(&am);
            assert_eq!(got, dual_pairing_matrix());
            // agreement with the inverse-based route
            let inv = am.inverse().unwrap();
            let direct = inv
                .transpose()
                .matmul(&dual_pairing_matrix())
                .matmul(&inv);
            assert_eq!(u, direct);
        }
    }

    #[test]
    fn u_matrix_singular_locus() {
        // a3 = 4 a2 is rejected
        let a = [
            GaussRat::zero(),
            GaussRat::zero(),
            GaussRat::one(),
            GaussRat::from_int(4),
        ];
        assert!(matches!(u_matrix(&a), Err(Error::SingularCap(_))));
        assert!(a_matrix_const(&a).det().is_zero());
        // straddle each factor: on the locus the determinant vanishes,
        // off it it does not
        let mk = |a0: i64, a1: i64, a2: i64, a3: i64| {
            [
                GaussRat::from_int(a0),
                GaussRat::from_int(a1),
                GaussRat::from_int(a2),
                GaussRat::from_int(a3),
            ]
        };
        for (on, off) in [
            (mk(1, 2, 1, 4), mk(1, 2, 1, 5)),    // a3 = 4 a2
            (mk(1, 2, -1, 4), mk(1, 2, -1, 3)),  // a3 = -4 a2
            (mk(1, 1, 3, 16), mk(1, 1, 3, 17)),  // a3 = 16 a1
        ] {
            assert!(a_matrix_const(&on).det().is_zero());
            assert!(!a_matrix_const(&off).det().is_zero());
            assert!(u_matrix(&on).is_err());
            assert!(u_matrix(&off).is_ok());
        }
    }

    #[test]
    fn simple_type_kills_the_s_row() {
        // For a simple-type side (comps[3] = 16 comps[1] on one factor,
        // zero fourth coefficient on the other), the s-coefficient of
        // the paired series vanishes.
        let series = k3_two_blowups();
        let phi = relative_from_closed(&series, &[1, -2, 0, 1], 0, 0, &t()).unwrap();
        let psi = relative_from_closed(&series, &[0, 0, 0, 1], 0, 0, &t()).unwrap();
        let paired = pair_relative(&phi, &psi, &s(), Some(&t()));
        let sv = s();
        for (k, freq) in paired.occurring_extractions(&sv).unwrap() {
            if k >= 1 {
                assert!(
                    paired.extract(&sv, k, &freq).unwrap().is_zero(),
                    "nonzero s-polynomial part at power {k}"
                );
            }
        }
    }
}
