//! Built-in conformance suite: every pinned matrix, closed form and
//! coefficient the library is built around, checked exactly. The CLI
//! `verify` command runs these; the acceptance test suite drives the
//! same registry.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exppoly::{
    cosh_int, exp_int, sinh_int, ExpElement, GaussRat, LinForm, Matrix, QuadForm, Var,
};
use crate::fibersum::{
    glue_h2, glue_with_d, kappa_construct, predict_coefficient, sector_coefficient, sum_rules,
    CoefficientRoute, GlueInput, PredictStatus, RuleCase,
};
use crate::pairing::{
    a_matrix, a_matrix_const, b_matrix, cap_factors, pair_dual, pair_relative,
    relative_from_closed, u_matrix, v_vector, RelVector,
};
use crate::quantum::{
    dual_pairing_matrix, exp_mu_sigma, exp_mu_sigma_of, mu_class, mu_sigma, mu_x, mult_matrix,
    pairing_matrix, qmul, qpair, Basis, RingClass,
};
use crate::series::{
    dx_from_dd, k3_two_blowups, simple_type_shape, topology_compose, Alpha,
};

/// Check sections, matching the CLI `--section` flag.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Section {
    Ring,
    Matrices,
    Cap,
    Gluing,
    Witten,
}

impl Section {
    pub fn as_str(&self) -> &'static str {
        match self {
            Section::Ring => "ring",
            Section::Matrices => "matrices",
            Section::Cap => "cap",
            Section::Gluing => "gluing",
            Section::Witten => "witten",
        }
    }

    pub fn parse(name: &str) -> Option<Option<Section>> {
        match name {
            "all" => Some(None),
            "ring" => Some(Some(Section::Ring)),
            "matrices" => Some(Some(Section::Matrices)),
            "cap" => Some(Some(Section::Cap)),
            "gluing" => Some(Some(Section::Gluing)),
            "witten" => Some(Some(Section::Witten)),
            _ => None,
        }
    }
}

/// One executable conformance check.
pub struct Check {
    pub section: Section,
    pub name: &'static str,
    pub run: Box<dyn Fn() -> Result<(), String> + Send + Sync>,
}

/// Outcome of one check.
#[derive(Clone, Debug)]
pub struct CheckResult {
    pub section: Section,
    pub name: &'static str,
    pub error: Option<String>,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.error.is_none()
    }
}

/// Options threaded through the registry; the point-class override is
/// a test hook letting callers inject an alternative `mu(x)` into the
/// cap pipeline check to confirm the check discriminates.
#[derive(Default)]
pub struct VerifyOptions {
    pub mu_x_override: Option<RingClass<GaussRat>>,
}

fn ensure(cond: bool, msg: &str) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.to_string())
    }
}

fn ensure_eq<T: PartialEq + std::fmt::Debug>(got: &T, expect: &T, what: &str) -> Result<(), String> {
    if got == expect {
        Ok(())
    } else {
        Err(format!("{what}: got {got:?}, expected {expect:?}"))
    }
}

fn sv() -> Var {
    Var::new("s")
}

fn tv() -> Var {
    Var::new("t")
}

fn twin_input() -> Result<GlueInput, String> {
    GlueInput::new(k3_two_blowups(), k3_two_blowups()).map_err(|e| e.to_string())
}

fn random_gauss(rng: &mut ChaCha8Rng) -> GaussRat {
    GaussRat::ratio(rng.gen_range(-8i64..=8), rng.gen_range(1i64..=4))
}

/// The value the cap pipeline assigns to one surface and one point
/// insertion on the twice-blown-up K3: the dual-component vector of
/// the surface-decorated relative invariant paired against the cap
/// decorated with the given point-class image. The correct image gives
/// exactly 2.
pub fn cap_point_insertion_value(mu_point: &RingClass<GaussRat>) -> Result<GaussRat, String> {
    let series = k3_two_blowups();
    let phi = relative_from_closed(&series, &[0, 0, 0, 1], 1, 0, &tv())
        .map_err(|e| e.to_string())?;
    let psi = RelVector::from_ring_class(mu_point);
    pair_dual(&phi, &psi)
        .constant_value()
        .ok_or_else(|| "pairing is not constant".to_string())
}

/// Builds the full check registry.
pub fn checks(opts: &VerifyOptions) -> Vec<Check> {
    let mut list: Vec<Check> = Vec::new();
    let mut add = |section: Section,
                   name: &'static str,
                   run: Box<dyn Fn() -> Result<(), String> + Send + Sync>| {
        list.push(Check { section, name, run });
    };

    // ---- ring ----------------------------------------------------

    add(
        Section::Ring,
        "pairing-matrix",
        Box::new(|| {
            let m = pairing_matrix();
            let expect = Matrix::from_int_rows(&[
                &[0, 0, 0, 4],
                &[0, 0, 4, 0],
                &[0, 4, 0, 64],
                &[4, 0, 64, 0],
            ]);
            ensure_eq(&(m == expect), &true, "pairing matrix")?;
            for i in 0..4 {
                for j in 0..4 {
                    let got = qpair(
                        &RingClass::<GaussRat>::h_power(i),
                        &RingClass::h_power(j),
                    );
                    ensure_eq(&got, &m[(i, j)], "pairing of basis classes")?;
                }
            }
            Ok(())
        }),
    );

    add(
        Section::Ring,
        "dual-pairing-matrix",
        Box::new(|| {
            let inv = pairing_matrix()
                .inverse()
                .map_err(|e| e.to_string())?;
            ensure_eq(&(inv == dual_pairing_matrix()), &true, "inverse pairing")?;
            let expect = Matrix::from_int_rows(&[
                &[0, -16, 0, 1],
                &[-16, 0, 1, 0],
                &[0, 1, 0, 0],
                &[1, 0, 0, 0],
            ])
            .scale(&GaussRat::ratio(1, 4));
            ensure(inv == expect, "dual pairing matrix entries")
        }),
    );

    add(
        Section::Ring,
        "product-relations",
        Box::new(|| {
            type Q = RingClass<GaussRat>;
            let h = Q::h_power(1);
            let hh = qmul(&h, &h);
            ensure_eq(
                &hh.to_basis(Basis::Geometric),
                &[
                    GaussRat::from_int(4),
                    GaussRat::zero(),
                    GaussRat::from_int(4),
                    GaussRat::zero(),
                ],
                "h*h in the geometric basis",
            )?;
            let h2 = Q::h_power(2);
            ensure_eq(
                &qmul(&h2, &h2),
                &h2.scale(&GaussRat::from_int(16)),
                "reduction of h^4",
            )?;
            let h3 = qmul(&hh, &h);
            ensure_eq(
                &h3.to_basis(Basis::Geometric),
                &[
                    GaussRat::zero(),
                    GaussRat::from_int(12),
                    GaussRat::zero(),
                    GaussRat::from_int(4),
                ],
                "h*h*h in the geometric basis",
            )
        }),
    );

    add(
        Section::Ring,
        "frobenius-identity",
        Box::new(|| {
            for i in 0..4 {
                for j in 0..4 {
                    for k in 0..4 {
                        let a = RingClass::<GaussRat>::h_power(i);
                        let b = RingClass::h_power(j);
                        let c = RingClass::h_power(k);
                        if qpair(&qmul(&a, &b), &c) != qpair(&a, &qmul(&b, &c)) {
                            return Err(format!("failed on basis triple ({i},{j},{k})"));
                        }
                    }
                }
            }
            Ok(())
        }),
    );

    add(
        Section::Ring,
        "point-class-square",
        Box::new(|| {
            type Q = RingClass<GaussRat>;
            let mx: Q = mu_x();
            ensure_eq(
                &qmul(&mx, &mx),
                &Q::one().scale(&GaussRat::from_int(4)),
                "mu(x)^2",
            )?;
            let two = Q::one().scale(&GaussRat::from_int(2));
            ensure(
                qmul(&mx.sub(&two), &mx.add(&two)).is_zero(),
                "(mu(x)-2)(mu(x)+2)",
            )?;
            ensure_eq(&mu_class::<GaussRat>(1, 0), &mu_sigma(), "mu(surface)")?;
            ensure_eq(
                &mu_class::<GaussRat>(0, 2),
                &Q::one().scale(&GaussRat::from_int(4)),
                "mu(x)^2 through mu_class",
            )
        }),
    );

    // ---- matrices ------------------------------------------------

    add(
        Section::Matrices,
        "exponential-closed-form",
        Box::new(|| {
            let s = sv();
            let e = exp_mu_sigma(&s);
            let half_s = ExpElement::var(s.clone()).scale(&GaussRat::ratio(1, 2));
            let c2 = (cosh_int(&s, 2) - ExpElement::one()).scale(&GaussRat::ratio(1, 16));
            let c3 = (sinh_int(&s, 2)
                - ExpElement::var(s.clone()).scale(&GaussRat::from_int(2)))
            .scale(&GaussRat::ratio(1, 64));
            ensure_eq(
                e.coords(),
                &[ExpElement::one(), half_s, c2, c3],
                "closed form of exp(s mu_sigma)",
            )?;
            ensure_eq(
                &e.subst_zero(&s),
                &RingClass::one(),
                "value at s = 0",
            )
        }),
    );

    add(
        Section::Matrices,
        "exponential-derivative",
        Box::new(|| {
            let s = sv();
            let e = exp_mu_sigma(&s);
            ensure_eq(
                &e.derive(&s),
                &qmul(&mu_sigma::<GaussRat>().lift(), &e),
                "d/ds of the exponential",
            )
        }),
    );

    add(
        Section::Matrices,
        "exponential-taylor-order-12",
        Box::new(|| {
            let s = sv();
            let e = exp_mu_sigma(&s);
            let ms = mu_sigma::<GaussRat>().lift();
            let svar = ExpElement::var(s.clone());
            let mut truncated = RingClass::<ExpElement>::zero();
            let mut power = RingClass::<ExpElement>::one();
            for n in 0..=12u32 {
                let coeff = GaussRat::from_rational(crate::exppoly::factorial(n))
                    .inverse()
                    .map_err(|e| e.to_string())?;
                truncated = truncated.add(&power.scale(&svar.pow(n).scale(&coeff)));
                power = qmul(&power, &ms);
            }
            for k in 0..=12u32 {
                for idx in 0..4 {
                    if e.coord(idx).taylor_coefficient(&s, k)
                        != truncated.coord(idx).taylor_coefficient(&s, k)
                    {
                        return Err(format!(
                            "series mismatch at order {k}, coordinate {idx}"
                        ));
                    }
                }
            }
            Ok(())
        }),
    );

    add(
        Section::Matrices,
        "exponential-homomorphism",
        Box::new(|| {
            let s = sv();
            let u = Var::new("u");
            let mut l = LinForm::var(s.clone(), GaussRat::one());
            l.add_term(u.clone(), &GaussRat::one());
            let esu = exp_mu_sigma_of(&l).map_err(|e| e.to_string())?;
            ensure_eq(
                &qmul(&exp_mu_sigma(&s), &exp_mu_sigma(&u)),
                &esu,
                "E(s) * E(u) = E(s+u)",
            )
        }),
    );

    add(
        Section::Matrices,
        "multiplication-matrix",
        Box::new(|| {
            let s = sv();
            let m = mult_matrix(&exp_mu_sigma(&s));
            ensure_eq(
                &m[(3, 2)],
                &sinh_int(&s, 2).scale(&GaussRat::from_int(4)),
                "entry (3,2)",
            )?;
            ensure_eq(&m[(2, 2)], &cosh_int(&s, 2), "entry (2,2)")?;
            ensure_eq(
                &(mult_matrix(&RingClass::<GaussRat>::one()) == Matrix::identity(4)),
                &true,
                "matrix of the unit",
            )?;
            let mh = mult_matrix(&RingClass::<GaussRat>::h_power(1));
            let mh2 = mh.matmul(&mh);
            ensure_eq(
                &(mh2.matmul(&mh2) == mh2.scale(&GaussRat::from_int(16))),
                &true,
                "reduction relation on the multiplication matrix",
            )
        }),
    );

    add(
        Section::Matrices,
        "b-matrix",
        Box::new(|| {
            let s = sv();
            let b = b_matrix(&s);
            let r = GaussRat::ratio;
            let svar = ExpElement::var(s.clone());
            let sinh = sinh_int(&s, 2);
            let cosh = cosh_int(&s, 2);
            let c = (cosh - ExpElement::one()).scale(&r(1, 16));
            let d = (sinh.clone() - svar.scale(&GaussRat::from_int(2))).scale(&r(1, 64));
            let expected = Matrix::from_rows(vec![
                vec![
                    ExpElement::zero(),
                    ExpElement::from_int(-16),
                    ExpElement::zero(),
                    ExpElement::one(),
                ],
                vec![
                    ExpElement::from_int(-16),
                    svar.scale(&GaussRat::from_int(-8)),
                    ExpElement::one(),
                    svar.scale(&r(1, 2)),
                ],
                vec![
                    ExpElement::zero(),
                    ExpElement::one(),
                    sinh.scale(&r(1, 4)),
                    c.clone(),
                ],
                vec![ExpElement::one(), svar.scale(&r(1, 2)), c, d],
            ])
            .scale(&ExpElement::ratio(1, 4));
            ensure(b == expected, "pairing matrix with exponential insertion")?;
            ensure(
                b.subst_zero(&s) == dual_pairing_matrix().lift(),
                "value at s = 0",
            )
        }),
    );

    add(
        Section::Matrices,
        "a-matrix-identity",
        Box::new(|| {
            let mut rng = ChaCha8Rng::seed_from_u64(2024);
            let s = sv();
            let basis = [
                exp_int(&s, 2),
                exp_int(&s, -2),
                ExpElement::one(),
                ExpElement::var(s.clone()),
            ];
            for trial in 0..20 {
                let phi: [ExpElement; 4] =
                    std::array::from_fn(|_| ExpElement::from_gauss(random_gauss(&mut rng)));
                let psi: [ExpElement; 4] =
                    std::array::from_fn(|_| ExpElement::from_gauss(random_gauss(&mut rng)));
                let coef = a_matrix(&psi).mul_col_vec(&phi);
                let mut lhs = ExpElement::zero();
                for (b, c) in basis.iter().zip(&coef) {
                    lhs = lhs + b * c;
                }
                let rhs = b_matrix(&s).bilinear(&phi, &psi);
                if lhs != rhs {
                    return Err(format!("decomposition identity failed on trial {trial}"));
                }
            }
            Ok(())
        }),
    );

    add(
        Section::Matrices,
        "u-matrix-conjugation",
        Box::new(|| {
            let mut rng = ChaCha8Rng::seed_from_u64(2025);
            let mut done = 0;
            while done < 20 {
                let a: [GaussRat; 4] = std::array::from_fn(|_| random_gauss(&mut rng));
                if cap_factors(&a).iter().any(|f| f.is_zero()) {
                    continue;
                }
                done += 1;
                let u = u_matrix(&a).map_err(|e| e.to_string())?;
                let am = a_matrix_const(&a);
                if am.transpose().matmul(&u).matmul(&am) != dual_pairing_matrix() {
                    return Err(format!("conjugation identity failed at {a:?}"));
                }
            }
            Ok(())
        }),
    );

    add(
        Section::Matrices,
        "cap-singular-locus",
        Box::new(|| {
            let mk = |a: [i64; 4]| a.map(GaussRat::from_int);
            for (on, off) in [
                (mk([1, 2, 1, 4]), mk([1, 2, 1, 5])),
                (mk([1, 2, -1, 4]), mk([1, 2, -1, 3])),
                (mk([1, 1, 3, 16]), mk([1, 1, 3, 17])),
            ] {
                ensure(
                    a_matrix_const(&on).det().is_zero(),
                    "determinant vanishes on the locus",
                )?;
                ensure(
                    !a_matrix_const(&off).det().is_zero(),
                    "determinant nonzero off the locus",
                )?;
                ensure(u_matrix(&on).is_err(), "singular parameters are rejected")?;
                ensure(u_matrix(&off).is_ok(), "regular parameters are accepted")?;
            }
            Ok(())
        }),
    );

    // ---- cap -----------------------------------------------------

    add(
        Section::Cap,
        "product-of-discs",
        Box::new(|| {
            let s = sv();
            let cap = RelVector::cap_unit();
            let got = pair_relative(&cap, &cap, &s, None);
            let expect = (sinh_int(&s, 2)
                - ExpElement::var(s.clone()).scale(&GaussRat::from_int(2)))
            .scale(&GaussRat::ratio(1, 16));
            ensure_eq(&got, &expect, "cap-cap pairing")?;
            ensure_eq(
                &got.to_string(),
                &"(1/32)*exp(2*s) - (1/32)*exp(-2*s) - (1/8)*s".to_string(),
                "canonical rendering",
            )?;
            ensure(
                !simple_type_shape(&got, &s).map_err(|e| e.to_string())?,
                "the product of discs is not of simple-type shape",
            )
        }),
    );

    add(
        Section::Cap,
        "surface-powers",
        Box::new(|| {
            let series = k3_two_blowups();
            let s = sv();
            let alpha = Alpha::single(s.clone(), &series.owner.sigma);
            let dx = dx_from_dd(&series).map_err(|e| e.to_string())?;
            ensure_eq(
                &dx.eval(&alpha),
                &sinh_int(&s, 2).scale(&GaussRat::ratio(1, 2)),
                "combined series on the surface direction",
            )?;
            let dw = dx.dw_eval(&alpha);
            let fact = |n: u32| GaussRat::from_rational(crate::exppoly::factorial(n));
            for (n, expect) in [(3u32, 4i64), (7, 64)] {
                let got = dw.taylor_coefficient(&s, n).scale(&fact(n));
                ensure_eq(
                    &got,
                    &ExpElement::from_int(expect),
                    "surface-power value",
                )?;
            }
            Ok(())
        }),
    );

    add(
        Section::Cap,
        "scale-equation",
        Box::new(|| {
            // ratio of consecutive known surface powers fixes the
            // surface image: a^4 * 16^2 = ratio forces a = 1/2
            let series = k3_two_blowups();
            let s = sv();
            let alpha = Alpha::single(s.clone(), &series.owner.sigma);
            let dx = dx_from_dd(&series).map_err(|e| e.to_string())?;
            let dw = dx.dw_eval(&alpha);
            let fact = |n: u32| GaussRat::from_rational(crate::exppoly::factorial(n));
            let v3 = dw.taylor_coefficient(&s, 3).scale(&fact(3));
            let v7 = dw.taylor_coefficient(&s, 7).scale(&fact(7));
            let (Some(v3), Some(v7)) = (v3.constant_value(), v7.constant_value()) else {
                return Err("surface powers are not constants".into());
            };
            let ratio = &v7 * &v3.inverse().map_err(|e| e.to_string())?;
            ensure_eq(&ratio, &GaussRat::from_int(16), "power ratio")?;
            let a = GaussRat::ratio(1, 2);
            ensure_eq(
                &(a.pow(4) * GaussRat::from_int(256)),
                &ratio,
                "a = 1/2 solves the scale equation",
            )?;
            // no other rational +-1/2^k solves it
            for k in 0..6 {
                for sign in [1i64, -1] {
                    let cand = GaussRat::ratio(sign, 1 << k);
                    if cand == a {
                        continue;
                    }
                    if cand.pow(4) * GaussRat::from_int(256) == ratio && cand != -&a {
                        return Err(format!("spurious solution {cand}"));
                    }
                }
            }
            ensure_eq(
                &mu_sigma::<GaussRat>().coords()[1],
                &GaussRat::ratio(1, 2),
                "adopted surface image",
            )
        }),
    );

    {
        let mu_override = opts.mu_x_override.clone();
        add(
            Section::Cap,
            "point-insertion",
            Box::new(move || {
                let adopted = mu_override.clone().unwrap_or_else(mu_x);
                let got = cap_point_insertion_value(&adopted)?;
                ensure_eq(&got, &GaussRat::from_int(2), "point-insertion value")?;
                // the check discriminates: both rival images fail
                let opposite = RingClass::new([
                    GaussRat::from_int(2),
                    GaussRat::zero(),
                    GaussRat::ratio(-1, 4),
                    GaussRat::zero(),
                ]);
                let scaled = RingClass::new([
                    GaussRat::from_int(2),
                    GaussRat::zero(),
                    GaussRat::from_int(-4),
                    GaussRat::zero(),
                ]);
                for rival in [opposite, scaled] {
                    if cap_point_insertion_value(&rival)? == GaussRat::from_int(2) {
                        return Err("rival point-class image passes the oracle".into());
                    }
                }
                // series route agrees with the pairing route
                let series = k3_two_blowups();
                let dx = dx_from_dd(&series).map_err(|e| e.to_string())?;
                ensure_eq(
                    &dx.eval_insertions(&Alpha::new(), 1, 1),
                    &ExpElement::from_int(2),
                    "series-route value of one surface and one point insertion",
                )
            }),
        );
    }

    add(
        Section::Cap,
        "relative-vector",
        Box::new(|| {
            let series = k3_two_blowups();
            let t = tv();
            let phi = relative_from_closed(&series, &[0, 0, 0, 1], 1, 0, &t)
                .map_err(|e| e.to_string())?;
            ensure_eq(
                &phi.comps,
                &[
                    ExpElement::one(),
                    ExpElement::zero(),
                    ExpElement::from_int(16),
                    ExpElement::zero(),
                ],
                "surface-decorated relative vector",
            )?;
            ensure(
                phi.satisfies_simple_type_relation(),
                "fourth component is 16 times the second",
            )?;
            let plain = relative_from_closed(&series, &[1, -2, 0, 1], 0, 0, &t)
                .map_err(|e| e.to_string())?;
            ensure(
                plain.satisfies_simple_type_relation(),
                "relation with nonzero cross-neck frequencies",
            )
        }),
    );

    // ---- gluing --------------------------------------------------

    add(
        Section::Gluing,
        "sector-coefficients",
        Box::new(|| {
            for ks in [-2i64, 0, 2] {
                for ls in [-2i64, 0, 2] {
                    let direct = sector_coefficient(ks, ls, CoefficientRoute::Theorem);
                    let contracted =
                        sector_coefficient(ks, ls, CoefficientRoute::Contraction);
                    if direct != contracted {
                        return Err(format!(
                            "routes disagree on sector ({ks}, {ls}): {direct} vs {contracted}"
                        ));
                    }
                }
            }
            ensure_eq(
                &sector_coefficient(2, 2, CoefficientRoute::Theorem),
                &GaussRat::from_int(32),
                "positive sector",
            )?;
            ensure_eq(
                &sector_coefficient(-2, -2, CoefficientRoute::Theorem),
                &GaussRat::from_int(-32),
                "negative sector",
            )?;
            ensure_eq(
                &sector_coefficient(0, 0, CoefficientRoute::Theorem),
                &GaussRat::zero(),
                "zero sector",
            )
        }),
    );

    add(
        Section::Gluing,
        "cross-neck-series",
        Box::new(|| {
            let input = twin_input()?;
            let t = tv();
            let s = sv();
            let got = glue_with_d(&input, &t, None).map_err(|e| e.to_string())?;
            let expect = exp_int(&t, 2).scale(&GaussRat::from_int(2))
                - exp_int(&t, -2).scale(&GaussRat::from_int(2));
            ensure_eq(&got, &expect, "cross-neck series")?;
            let full = glue_with_d(&input, &t, Some(&s)).map_err(|e| e.to_string())?;
            let mut pos = QuadForm::zero();
            pos.add_quad(s.clone(), t.clone(), &GaussRat::one());
            let mut neg = pos.clone();
            pos.add_lin(s.clone(), &GaussRat::from_int(2));
            pos.add_lin(t.clone(), &GaussRat::from_int(2));
            neg.add_lin(s.clone(), &GaussRat::from_int(-2));
            neg.add_lin(t.clone(), &GaussRat::from_int(-2));
            let expect = ExpElement::exponential(pos).scale(&GaussRat::from_int(2))
                - ExpElement::exponential(neg).scale(&GaussRat::from_int(2));
            ensure_eq(&full, &expect, "series with the surface direction")?;
            ensure_eq(
                &full.swap_vars(&s, &t),
                &full,
                "symmetry under exchanging the formal directions",
            )?;
            // setting t = 0 reproduces the away-from-neck sector sums
            let away = glue_h2(&input, &Alpha::new(), &Alpha::new())
                .map_err(|e| e.to_string())?;
            ensure_eq(&got.subst_zero(&t), &away, "value at t = 0")
        }),
    );

    add(
        Section::Gluing,
        "vector-contraction",
        Box::new(|| {
            let input = twin_input()?;
            let t = tv();
            let (d1, d2) = (
                input.dbar1.clone().ok_or("missing dbar1")?,
                input.dbar2.clone().ok_or("missing dbar2")?,
            );
            let v1 = v_vector(&input.side1, &d1, &t).map_err(|e| e.to_string())?;
            let v2 = v_vector(&input.side2, &d2, &t).map_err(|e| e.to_string())?;
            let contracted = exp_int(&t, 2).scale(&GaussRat::from_int(32))
                * (&v1.comps[0] * &v2.comps[0])
                - exp_int(&t, -2).scale(&GaussRat::from_int(32))
                    * (&v1.comps[1] * &v2.comps[1]);
            let direct = glue_with_d(&input, &t, None).map_err(|e| e.to_string())?;
            ensure_eq(&direct, &contracted, "diagonal contraction")?;
            ensure_eq(
                &v1.comps[0].subst_zero(&t),
                &ExpElement::ratio(1, 4),
                "positive sector sum at t = 0",
            )?;
            ensure(v1.comps[3].is_zero(), "vanishing fourth component")
        }),
    );

    add(
        Section::Gluing,
        "sum-rules",
        Box::new(|| {
            let report = sum_rules(&twin_input()?).map_err(|e| e.to_string())?;
            let nonzero: Vec<_> = report
                .rules
                .iter()
                .filter(|r| !r.claimed_sum.is_zero())
                .collect();
            ensure_eq(&nonzero.len(), &2usize, "number of nonzero rules")?;
            let sums: Vec<GaussRat> =
                nonzero.iter().map(|r| r.claimed_sum.clone()).collect();
            ensure(
                sums.contains(&GaussRat::from_int(2))
                    && sums.contains(&GaussRat::from_int(-2)),
                "claimed sums are +-2",
            )?;
            ensure(
                report
                    .rules
                    .iter()
                    .any(|r| r.case == RuleCase::ZeroSector && r.claimed_sum.is_zero()),
                "zero-sector rules claim zero",
            )?;
            let input = twin_input()?;
            let plus = kappa_construct(&input, &[0, 1, 1, 0], &[0, 1, 1, 0])
                .map_err(|e| e.to_string())?;
            ensure_eq(&plus.kappa_dot_d, &Some(2), "pairing against the cross-neck class")?;
            ensure_eq(&plus.kappa_sq, &4, "square of the glued class")?;
            ensure_eq(&plus.coefficient, &GaussRat::from_int(2), "coefficient")?;
            let report = sum_rules(&twin_input()?.with_one_to_one())
                .map_err(|e| e.to_string())?;
            for rule in report.rules.iter().filter(|r| !r.claimed_sum.is_zero()) {
                ensure_eq(&rule.kappas.len(), &1usize, "unique class per nonzero fiber")?;
            }
            ensure_eq(
                &report.no_zero_sector_basics,
                &Some(true),
                "no basic classes along the surface-trivial sector",
            )
        }),
    );

    add(
        Section::Gluing,
        "simple-type-shape",
        Box::new(|| {
            let input = twin_input()?;
            let t = tv();
            let s = sv();
            let glued = glue_with_d(&input, &t, Some(&s)).map_err(|e| e.to_string())?;
            ensure(
                simple_type_shape(&glued, &s).map_err(|e| e.to_string())?,
                "glued series has no polynomial surface dependence",
            )?;
            for (_, freq) in glued
                .occurring_extractions(&s)
                .map_err(|e| e.to_string())?
            {
                let c = &freq.constant;
                if *c != GaussRat::from_int(2) && *c != GaussRat::from_int(-2) {
                    return Err(format!("unexpected surface frequency {c}"));
                }
            }
            Ok(())
        }),
    );

    // ---- witten --------------------------------------------------

    add(
        Section::Witten,
        "exponent-shift",
        Box::new(|| {
            let m = k3_two_blowups().owner;
            let topo = topology_compose(&m, &m).map_err(|e| e.to_string())?;
            let side = 2 + (7 * m.euler + 11 * m.signature) / 4;
            let sum = 2 + (7 * topo.euler + 11 * topo.signature) / 4;
            let ratio = GaussRat::pow2(sum)
                * GaussRat::pow2(side)
                    .inverse()
                    .map_err(|e| e.to_string())?
                    .pow(2);
            ensure_eq(&ratio, &GaussRat::from_int(32), "coefficient ratio")?;
            // the shift is topology-independent: synthetic sides
            for (chi1, sig1, chi2, sig2) in
                [(12i64, -8i64, 12i64, -8i64), (24, -16, 44, -28), (8, -4, 36, -24)]
            {
                let e1 = 4 * 2 + 7 * chi1 + 11 * sig1;
                let e2 = 4 * 2 + 7 * chi2 + 11 * sig2;
                let ex = 4 * 2 + 7 * (chi1 + chi2 + 4) + 11 * (sig1 + sig2);
                if (e1 % 4, e2 % 4) != (0, 0) {
                    return Err("synthetic topology is not admissible".into());
                }
                // in quarters: ex/4 = e1/4 + e2/4 + 5
                if ex - e1 - e2 != 20 {
                    return Err("exponent shift is not 5".into());
                }
            }
            Ok(())
        }),
    );

    add(
        Section::Witten,
        "coefficient-prediction",
        Box::new(|| {
            for g in 2..=6i64 {
                let (c, status) = predict_coefficient(g).map_err(|e| e.to_string())?;
                let expect = BigInt::from(1) << (7 * g - 9) as usize;
                ensure_eq(&c, &expect, "predicted magnitude")?;
                let want = if g == 2 {
                    PredictStatus::Theorem
                } else {
                    PredictStatus::Conjecture
                };
                ensure_eq(&status, &want, "proof status")?;
            }
            ensure(predict_coefficient(1).is_err(), "genus below 2 is rejected")
        }),
    );

    add(
        Section::Witten,
        "fixture-coefficient",
        Box::new(|| {
            let series = k3_two_blowups();
            let got = crate::series::witten_coefficient(
                &series.owner,
                &[0, -1, 1, 0],
                &GaussRat::one(),
            )
            .map_err(|e| e.to_string())?;
            ensure_eq(&got, &GaussRat::ratio(1, 4), "coefficient of the fixture")?;
            let topo =
                topology_compose(&series.owner, &series.owner).map_err(|e| e.to_string())?;
            ensure_eq(&topo.d0_parity, &1, "degree-offset parity of the sum")?;
            ensure_eq(
                &(topo.euler, topo.signature, topo.b_plus),
                &(56, -36, 9),
                "composed topology",
            )
        }),
    );

    list
}

/// Runs the registry, optionally restricted to one section.
pub fn run_checks(section: Option<Section>, opts: &VerifyOptions) -> Vec<CheckResult> {
    checks(opts)
        .into_iter()
        .filter(|c| section.is_none_or(|s| s == c.section))
        .map(|c| CheckResult {
            section: c.section,
            name: c.name,
            error: (c.run)().err(),
        })
        .collect()
}
