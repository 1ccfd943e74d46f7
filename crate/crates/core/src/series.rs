//! Kronheimer-Mrowka structure series and the manifold data they live
//! on: intersection lattices, descriptors, validation, evaluation of
//! the series on formal classes, and the related coefficient rules.
//!
//! A structure series holds the finitely many basic classes `K_i` and
//! coefficients `a_i` of a simple-type 4-manifold, representing
//! `DD^w(a) = e^{Q(a)/2} sum_i a_i e^{K_i . a}`. The combined series
//! `D = D^w + D^{w+S}` is recovered from it exactly, including the
//! `i^{-d0}` unit and the Gaussian frequencies `i K` of the sectors
//! with `K.S = 0 (mod 4)`.

use std::collections::BTreeSet;
use std::fmt;

use crate::exppoly::{ExpElement, GaussRat, LinForm, QuadForm, Var};
use crate::Error;

/// An integral lattice: a free abelian group of finite rank with a
/// symmetric pairing given by an integer matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Lattice {
    rank: usize,
    form: Vec<Vec<i64>>,
}

impl Lattice {
    pub fn new(form: Vec<Vec<i64>>) -> Result<Self, Error> {
        let rank = form.len();
        if rank == 0 {
            return Err(Error::Validation("empty intersection form".into()));
        }
        if form.iter().any(|row| row.len() != rank) {
            return Err(Error::Validation("intersection form is not square".into()));
        }
        for (r, row) in form.iter().enumerate() {
            for (c, entry) in row.iter().enumerate() {
                if *entry != form[c][r] {
                    return Err(Error::Validation("intersection form is not symmetric".into()));
                }
            }
        }
        Ok(Lattice { rank, form })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn form(&self) -> &Vec<Vec<i64>> {
        &self.form
    }

    /// Integer pairing `u . v` through the form.
    pub fn pair(&self, u: &[i64], v: &[i64]) -> i64 {
        assert_eq!(u.len(), self.rank);
        assert_eq!(v.len(), self.rank);
        let mut acc: i128 = 0;
        for (ur, row) in u.iter().zip(&self.form) {
            for (vc, entry) in v.iter().zip(row) {
                acc += *ur as i128 * *entry as i128 * *vc as i128;
            }
        }
        i64::try_from(acc).expect("pairing overflow")
    }

    /// Pairing of Gaussian-rational vectors.
    pub fn pair_gauss(&self, u: &[GaussRat], v: &[GaussRat]) -> GaussRat {
        assert_eq!(u.len(), self.rank);
        assert_eq!(v.len(), self.rank);
        let mut acc = GaussRat::zero();
        for (ur, row) in u.iter().zip(&self.form) {
            for (vc, entry) in v.iter().zip(row) {
                if *entry == 0 {
                    continue;
                }
                acc = acc + (ur * vc).scale_int(*entry);
            }
        }
        acc
    }

    /// Pairing of an integer vector against a Gaussian-rational vector.
    pub fn pair_mixed(&self, u: &[i64], v: &[GaussRat]) -> GaussRat {
        let u: Vec<GaussRat> = u.iter().map(|&n| GaussRat::from_int(n)).collect();
        self.pair_gauss(&u, v)
    }
}

/// A 4-manifold described by the sublattice of its second cohomology
/// that the computation touches, together with the distinguished
/// classes and topological numbers the series formulas need.
#[derive(Clone, PartialEq, Debug)]
pub struct ManifoldDescriptor {
    pub name: String,
    pub lattice: Lattice,
    pub sigma: Vec<i64>,
    pub w: Vec<i64>,
    pub dbar: Option<Vec<i64>>,
    pub b_plus: i64,
    pub b1: i64,
    pub euler: i64,
    pub signature: i64,
    pub genus: i64,
    pub simple_type: bool,
}

impl ManifoldDescriptor {
    /// Degree offset `d0 = -w^2 - (3/2)(1 + b+)`; integral for every
    /// suitable manifold with `b1 = 0`.
    pub fn d0(&self) -> Result<i64, Error> {
        let w2 = self.lattice.pair(&self.w, &self.w);
        let three_halves = 3 * (1 + self.b_plus);
        if three_halves % 2 != 0 {
            return Err(Error::BadTopology);
        }
        Ok(-w2 - three_halves / 2)
    }

    /// The unit `i^{-d0}` combining the two sub-series.
    pub fn i_pow_minus_d0(&self) -> Result<GaussRat, Error> {
        Ok(GaussRat::i_pow(-self.d0()?))
    }
}

/// One basic class with its coefficient.
#[derive(Clone, PartialEq, Debug)]
pub struct BasicClass {
    pub vector: Vec<i64>,
    pub coeff: GaussRat,
}

/// The structure series of a simple-type manifold: the finite list of
/// (basic class, coefficient) pairs.
#[derive(Clone, PartialEq, Debug)]
pub struct StructureSeries {
    pub owner: ManifoldDescriptor,
    pub classes: Vec<BasicClass>,
}

/// A formal linear combination of lattice vectors with one formal
/// variable per summand, e.g. `s*sigma + t*dbar`. Vector entries are
/// Gaussian rationals so that the `i*alpha` substitutions of the
/// combined-series rules stay inside the type.
#[derive(Clone, PartialEq, Debug, Default)]
pub struct Alpha {
    pub terms: Vec<(Var, Vec<GaussRat>)>,
}

impl Alpha {
    pub fn new() -> Self {
        Alpha { terms: Vec::new() }
    }

    pub fn push(&mut self, var: Var, vector: Vec<GaussRat>) {
        self.terms.push((var, vector));
    }

    pub fn push_int(&mut self, var: Var, vector: &[i64]) {
        self.terms
            .push((var, vector.iter().map(|&n| GaussRat::from_int(n)).collect()));
    }

    pub fn single(var: Var, vector: &[i64]) -> Self {
        let mut a = Alpha::new();
        a.push_int(var, vector);
        a
    }

    /// Scales every vector by a Gaussian rational (e.g. by `i`).
    pub fn scale(&self, c: &GaussRat) -> Self {
        Alpha {
            terms: self
                .terms
                .iter()
                .map(|(v, vec)| (v.clone(), vec.iter().map(|x| x * c).collect()))
                .collect(),
        }
    }

    /// `Q(alpha)/2` as a quadratic form in the formal variables.
    pub fn half_q(&self, lattice: &Lattice) -> QuadForm {
        let mut q = QuadForm::zero();
        for (k, (v1, vec1)) in self.terms.iter().enumerate() {
            for (j, (v2, vec2)) in self.terms.iter().enumerate().skip(k) {
                let p = lattice.pair_gauss(vec1, vec2);
                if j == k {
                    // the self-pairing enters Q/2 with weight 1/2
                    q.add_quad(v1.clone(), v2.clone(), &(p * GaussRat::ratio(1, 2)));
                } else {
                    q.add_quad(v1.clone(), v2.clone(), &p);
                }
            }
        }
        q
    }

    /// `K . alpha` as a linear form in the formal variables.
    pub fn pair_class(&self, lattice: &Lattice, class: &[i64]) -> LinForm {
        let mut l = LinForm::zero();
        for (v, vec) in &self.terms {
            l.add_term(v.clone(), &lattice.pair_mixed(class, vec));
        }
        l
    }
}

/// A human-readable invariant violation.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Violation {
    pub rule: &'static str,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.rule, self.detail)
    }
}

/// Validation output: empty means every invariant holds.
#[derive(Clone, Default, Debug)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    fn add(&mut self, rule: &'static str, detail: impl Into<String>) {
        self.violations.push(Violation {
            rule,
            detail: detail.into(),
        });
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "valid");
        }
        for (k, v) in self.violations.iter().enumerate() {
            if k > 0 {
                writeln!(f)?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Checks every descriptor invariant and, when a series is given, every
/// series invariant. Violations are collected, not short-circuited.
pub fn validate(m: &ManifoldDescriptor, series: Option<&StructureSeries>) -> ValidationReport {
    let mut report = ValidationReport::default();
    let rank = m.lattice.rank();
    let mut vec_ok = true;
    for (name, v) in [("sigma", &m.sigma), ("w", &m.w)] {
        if v.len() != rank {
            report.add("vector length", format!("`{name}` has length {} but the lattice has rank {rank}", v.len()));
            vec_ok = false;
        }
    }
    if let Some(d) = &m.dbar {
        if d.len() != rank {
            report.add("vector length", format!("`dbar` has length {} but the lattice has rank {rank}", d.len()));
            vec_ok = false;
        }
    }
    if !vec_ok {
        return report;
    }
    let sigma_sq = m.lattice.pair(&m.sigma, &m.sigma);
    if sigma_sq != 0 {
        report.add("sigma self-intersection", format!("sigma^2 = {sigma_sq}, expected 0"));
    }
    let w_sigma = m.lattice.pair(&m.w, &m.sigma);
    if w_sigma.rem_euclid(2) != 1 {
        report.add("w parity", format!("w.sigma = {w_sigma} is even, expected odd"));
    }
    if m.b1 != 0 {
        report.add("first Betti number", format!("b1 = {}, expected 0", m.b1));
    }
    if (m.b_plus - m.b1).rem_euclid(2) != 1 || m.b_plus <= 1 {
        report.add(
            "suitability",
            format!("need b+ - b1 odd and b+ > 1, got b+ = {}, b1 = {}", m.b_plus, m.b1),
        );
    }
    if 3 * (1 + m.b_plus) % 2 != 0 {
        report.add("degree offset", "d0 is not an integer".to_string());
    }
    if m.genus < 2 {
        report.add("genus", format!("genus {} < 2", m.genus));
    }
    if let Some(s) = series {
        for (k, bc) in s.classes.iter().enumerate() {
            if bc.vector.len() != rank {
                report.add("vector length", format!("basic class #{k} has wrong length"));
                continue;
            }
            // characteristic-vector test against the (reduced) lattice;
            // a necessary but partial check, since the descriptor only
            // carries the sublattice the computation touches.
            for b in 0..rank {
                let mut basis = vec![0i64; rank];
                basis[b] = 1;
                let kv = m.lattice.pair(&bc.vector, &basis);
                let vv = m.lattice.pair(&basis, &basis);
                if (kv - vv).rem_euclid(2) != 0 {
                    report.add(
                        "characteristic",
                        format!("basic class #{k} has K.v = {kv} with v^2 = {vv} on basis vector {b}"),
                    );
                }
            }
            let ks = m.lattice.pair(&bc.vector, &m.sigma);
            if ks.rem_euclid(2) != 0 || ks.abs() > 2 * m.genus - 2 {
                report.add(
                    "adjunction/parity",
                    format!("K.sigma = {ks} violates |K.sigma| <= {} and evenness", 2 * m.genus - 2),
                );
            }
        }
    }
    report
}

/// Evaluates the structure series on a formal class:
/// `e^{Q(alpha)/2} sum_i a_i e^{K_i . alpha}`.
pub fn dd_eval(series: &StructureSeries, alpha: &Alpha) -> ExpElement {
    let lattice = &series.owner.lattice;
    let half_q = alpha.half_q(lattice);
    let mut out = ExpElement::zero();
    for bc in &series.classes {
        let freq = alpha.pair_class(lattice, &bc.vector);
        let mut expo = half_q.clone();
        for (v, c) in &freq.coeffs {
            expo.add_lin(v.clone(), c);
        }
        out = out + ExpElement::exponential(expo).scale(&bc.coeff);
    }
    out
}

/// Sector of a basic class by `K.sigma mod 4`: the two sub-series
/// transform differently under `w -> w + sigma`.
fn sector_mod4(series: &StructureSeries, bc: &BasicClass) -> i64 {
    series
        .owner
        .lattice
        .pair(&bc.vector, &series.owner.sigma)
        .rem_euclid(4)
}

/// The combined series `D = D^w + D^{w+S}` derived from the structure
/// series, evaluated on formal classes with optional surface and point
/// insertions. Construct with [`dx_from_dd`].
pub struct CombinedSeries<'a> {
    series: &'a StructureSeries,
    unit: GaussRat,
}

/// Builds the combined-series evaluator; fails only when the degree
/// offset is not integral.
pub fn dx_from_dd(series: &StructureSeries) -> Result<CombinedSeries<'_>, Error> {
    Ok(CombinedSeries {
        series,
        unit: series.owner.i_pow_minus_d0()?,
    })
}

impl CombinedSeries<'_> {
    /// `D(e^alpha)`: the sector with `K.S = 2 (mod 4)` contributes
    /// `e^{Q/2} a_i e^{K.alpha}`; the sector with `K.S = 0 (mod 4)`
    /// contributes `i^{-d0} e^{-Q/2} a_i e^{i K.alpha}` (the closed
    /// series evaluated at `i*alpha`).
    pub fn eval(&self, alpha: &Alpha) -> ExpElement {
        self.eval_insertions(alpha, 0, 0)
    }

    /// `D(S^a x^b e^alpha)`. Each surface insertion multiplies a term
    /// by its frequency derivative (`K.S + S.alpha` in the real sector,
    /// `i K.S - S.alpha` in the Gaussian sector); each point insertion
    /// doubles the term and flips the sign of the Gaussian sector.
    pub fn eval_insertions(&self, alpha: &Alpha, sigma_power: u32, x_power: u32) -> ExpElement {
        let owner = &self.series.owner;
        let lattice = &owner.lattice;
        let half_q = alpha.half_q(lattice);
        let sigma_alpha = {
            // S.alpha as an element (a linear polynomial in the variables)
            let l = alpha.pair_class(lattice, &owner.sigma);
            let mut e = ExpElement::from_gauss(l.constant.clone());
            for (v, c) in &l.coeffs {
                e = e + ExpElement::var(v.clone()).scale(c);
            }
            e
        };
        let two_pow_b = GaussRat::pow2(x_power as i64);
        let x_sign = if x_power.is_multiple_of(2) {
            GaussRat::one()
        } else {
            -GaussRat::one()
        };
        let mut out = ExpElement::zero();
        for bc in &self.series.classes {
            let ks = lattice.pair(&bc.vector, &owner.sigma);
            let freq = alpha.pair_class(lattice, &bc.vector);
            match sector_mod4(self.series, bc) {
                2 => {
                    let mut expo = half_q.clone();
                    for (v, c) in &freq.coeffs {
                        expo.add_lin(v.clone(), c);
                    }
                    let factor = (&sigma_alpha + ExpElement::from_int(ks)).pow(sigma_power);
                    out = out
                        + (ExpElement::exponential(expo) * factor)
                            .scale(&(&bc.coeff * &two_pow_b));
                }
                0 => {
                    let mut expo = half_q.scale(&-GaussRat::one());
                    for (v, c) in &freq.coeffs {
                        expo.add_lin(v.clone(), &(c * &GaussRat::i()));
                    }
                    let iks = ExpElement::from_gauss(GaussRat::i().scale_int(ks));
                    let factor = (iks - &sigma_alpha).pow(sigma_power);
                    let coeff = &bc.coeff * &self.unit * &two_pow_b * &x_sign;
                    out = out + (ExpElement::exponential(expo) * factor).scale(&coeff);
                }
                other => {
                    // odd K.sigma never passes validation; evaluating such
                    // a series is a programming error, not an input error
                    panic!("basic class with odd K.sigma = {other} (mod 4)");
                }
            }
        }
        out
    }

    /// `D^w(e^alpha)` alone: the projection of the closed series onto
    /// degrees congruent to `d0 (mod 4)`, i.e.
    /// `(DD(alpha) + i^{-d0} DD(i*alpha)) / 2`.
    pub fn dw_eval(&self, alpha: &Alpha) -> ExpElement {
        let dd = dd_eval(self.series, alpha);
        let dd_i = dd_eval(self.series, &alpha.scale(&GaussRat::i()));
        (dd + dd_i.scale(&self.unit)).scale(&GaussRat::ratio(1, 2))
    }
}

/// Re-signs the coefficients for a different `w`:
/// `a_{i,new} = (-1)^{((K.w' + w'^2) - (K.w + w^2))/2} a_i`.
/// Fails with `NonIntegralSign` when an exponent is not an integer and
/// with a validation error when `w'.sigma` is even.
pub fn change_w(series: &StructureSeries, w_new: &[i64]) -> Result<StructureSeries, Error> {
    let owner = &series.owner;
    let lattice = &owner.lattice;
    if w_new.len() != lattice.rank() {
        return Err(Error::Validation("w has the wrong length".into()));
    }
    if lattice.pair(w_new, &owner.sigma).rem_euclid(2) != 1 {
        return Err(Error::Validation("w.sigma must be odd".into()));
    }
    let w_old_sq = lattice.pair(&owner.w, &owner.w);
    let w_new_sq = lattice.pair(w_new, w_new);
    let mut classes = Vec::with_capacity(series.classes.len());
    for bc in &series.classes {
        let old_exp = lattice.pair(&bc.vector, &owner.w) + w_old_sq;
        let new_exp = lattice.pair(&bc.vector, w_new) + w_new_sq;
        let diff = new_exp - old_exp;
        if diff % 2 != 0 {
            return Err(Error::NonIntegralSign);
        }
        let coeff = if (diff / 2) % 2 == 0 {
            bc.coeff.clone()
        } else {
            -&bc.coeff
        };
        classes.push(BasicClass {
            vector: bc.vector.clone(),
            coeff,
        });
    }
    let mut owner = owner.clone();
    owner.w = w_new.to_vec();
    Ok(StructureSeries { owner, classes })
}

/// The conjectural coefficient of a basic class from its
/// Seiberg-Witten value:
/// `(-1)^{(K.w + w^2)/2} * 2^{2 + (7 chi + 11 sigma)/4} * sw`.
pub fn witten_coefficient(
    m: &ManifoldDescriptor,
    class: &[i64],
    sw: &GaussRat,
) -> Result<GaussRat, Error> {
    let seven_eleven = 7 * m.euler + 11 * m.signature;
    if seven_eleven % 4 != 0 {
        return Err(Error::BadTopology);
    }
    let sign_exp = m.lattice.pair(class, &m.w) + m.lattice.pair(&m.w, &m.w);
    if sign_exp % 2 != 0 {
        return Err(Error::NonIntegralSign);
    }
    let sign = if (sign_exp / 2) % 2 == 0 {
        GaussRat::one()
    } else {
        -GaussRat::one()
    };
    Ok(&sign * &GaussRat::pow2(2 + seven_eleven / 4) * sw)
}

/// Topological numbers of the fiber sum along genus-`g` surfaces.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ComposedTopology {
    pub euler: i64,
    pub signature: i64,
    pub b_plus: i64,
    /// `d0(X) mod 2`, defined for genus 2.
    pub d0_parity: i64,
}

/// `chi = chi1 + chi2 + 4g - 4`, `sigma = sigma1 + sigma2`,
/// `b+ = b+_1 + b+_2 + 2g - 1`; for `g = 2` also
/// `d0 = d0_1 + d0_2 + 1 (mod 2)`.
pub fn topology_compose(
    m1: &ManifoldDescriptor,
    m2: &ManifoldDescriptor,
) -> Result<ComposedTopology, Error> {
    if m1.genus != m2.genus {
        return Err(Error::GenusMismatch);
    }
    let g = m1.genus;
    let d0_parity = if g == 2 {
        (m1.d0()? + m2.d0()? + 1).rem_euclid(2)
    } else {
        0
    };
    Ok(ComposedTopology {
        euler: m1.euler + m2.euler + 4 * g - 4,
        signature: m1.signature + m2.signature,
        b_plus: m1.b_plus + m2.b_plus + 2 * g - 1,
        d0_parity,
    })
}

/// True when the element has no polynomial dependence on `var`: every
/// occurrence of `var` sits inside an exponential. Simple-type series
/// have this shape; the `s`-linear term of the product-of-discs value
/// is the standard counterexample.
pub fn simple_type_shape(e: &ExpElement, var: &Var) -> Result<bool, Error> {
    for (k, _) in e.occurring_extractions(var)? {
        if k >= 1 {
            let full: BTreeSet<_> = e
                .occurring_extractions(var)?
                .into_iter()
                .filter(|(p, _)| *p >= 1)
                .collect();
            for (p, freq) in full {
                if !e.extract(var, p, &freq)?.is_zero() {
                    return Ok(false);
                }
            }
            return Ok(true);
        }
    }
    Ok(true)
}

/// The standard test fixture: a K3 surface blown up twice, described
/// on the rank-4 sublattice spanned by a tight genus-2 surface `S`
/// (`S^2 = 2`), the two exceptional spheres, and a square-zero class
/// meeting `S` once. The surface class is `S - E1 - E2`, `w = E1`, and
/// the four basic classes are `+-E1 +- E2` with coefficients `+-1/4`
/// (the expansion of `e^{Q/2} cosh E2 sinh E1`).
pub fn k3_two_blowups() -> StructureSeries {
    let lattice = Lattice::new(vec![
        vec![2, 0, 0, 1],
        vec![0, -1, 0, 0],
        vec![0, 0, -1, 0],
        vec![1, 0, 0, 0],
    ])
    .expect("fixture lattice");
    let owner = ManifoldDescriptor {
        name: "k3-blown-up-twice".into(),
        lattice,
        sigma: vec![1, -1, -1, 0],
        w: vec![0, 1, 0, 0],
        dbar: Some(vec![0, 0, 0, 1]),
        b_plus: 3,
        b1: 0,
        euler: 26,
        signature: -18,
        genus: 2,
        simple_type: true,
    };
    let quarter = GaussRat::ratio(1, 4);
    let classes = vec![
        BasicClass {
            vector: vec![0, 1, 1, 0],
            coeff: quarter.clone(),
        },
        BasicClass {
            vector: vec![0, 1, -1, 0],
            coeff: quarter.clone(),
        },
        BasicClass {
            vector: vec![0, -1, 1, 0],
            coeff: -&quarter,
        },
        BasicClass {
            vector: vec![0, -1, -1, 0],
            coeff: -&quarter,
        },
    ];
    StructureSeries { owner, classes }
}
