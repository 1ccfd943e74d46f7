//! The gluing engine: basic classes and coefficient sum rules of the
//! fiber sum of two simple-type 4-manifolds along embedded genus-2
//! surfaces of square zero.
//!
//! Coefficients of the glued series are `+32 a_i b_j` on the sector
//! `K.S = L.S = 2`, `-32 a_i b_j` on `K.S = L.S = -2`, and zero
//! otherwise; the same numbers arise from contracting the surface
//! powers of both sides through the dual pairing, and both routes are
//! exposed. Glued basic classes are reported as fiber data (image in
//! the sigma-quotients, pairing against the cross-neck class, square)
//! rather than as vectors in a constructed second cohomology, which the
//! cohomology sequence of the fiber sum leaves ambiguous up to
//! one-cycle corrections.

use num_bigint::BigInt;
use num_traits::One;

use crate::exppoly::{ExpElement, GaussRat, Var};
use crate::quantum::dual_pairing_matrix;
use crate::series::{
    topology_compose, validate, Alpha, ComposedTopology, StructureSeries,
};
use crate::Error;

/// The two sides of a fiber sum, validated and with the cross-neck
/// classes normalized to square zero by surface shifts.
#[derive(Clone, Debug)]
pub struct GlueInput {
    pub side1: StructureSeries,
    pub side2: StructureSeries,
    /// Normalized representative of the first cross-neck half, if the
    /// descriptor provided one.
    pub dbar1: Option<Vec<i64>>,
    pub dbar2: Option<Vec<i64>>,
    /// Corollary mode: every 1-cycle of the surface bounds a
    /// (-1)-disc on both sides, making basic classes of the sum
    /// correspond one-to-one to contributing pairs.
    pub one_to_one: bool,
}

/// Shifts `dbar` by multiples of `sigma` so its square becomes `target`
/// (`dbar.sigma = 1` makes every even adjustment reachable).
fn sigma_shift(series: &StructureSeries, dbar: &[i64], target: i64) -> Vec<i64> {
    let lattice = &series.owner.lattice;
    let sq = lattice.pair(dbar, dbar);
    debug_assert_eq!((sq - target).rem_euclid(2), 0);
    let shift = (target - sq) / 2;
    dbar.iter()
        .zip(&series.owner.sigma)
        .map(|(d, s)| d + shift * s)
        .collect()
}

impl GlueInput {
    /// Validates both sides (descriptors, series invariants, genus 2,
    /// simple type) and normalizes the cross-neck halves so that
    /// `dbar1^2 + dbar2^2 = 0`, preferring `dbar1^2 = dbar2^2 = 0` and
    /// falling back to `(-1, 1)` when both squares are odd.
    pub fn new(side1: StructureSeries, side2: StructureSeries) -> Result<Self, Error> {
        for side in [&side1, &side2] {
            let report = validate(&side.owner, Some(side));
            if !report.is_valid() {
                return Err(Error::Validation(format!(
                    "side `{}`: {report}",
                    side.owner.name
                )));
            }
            if !side.owner.simple_type {
                return Err(Error::NotSimpleType);
            }
        }
        if side1.owner.genus != side2.owner.genus {
            return Err(Error::GenusMismatch);
        }
        if side1.owner.genus != 2 {
            return Err(Error::GenusUnsupported);
        }
        let mut dbar1 = side1.owner.dbar.clone();
        let mut dbar2 = side2.owner.dbar.clone();
        if let (Some(d1), Some(d2)) = (&dbar1, &dbar2) {
            for (side, d) in [(&side1, d1), (&side2, d2)] {
                if side.owner.lattice.pair(d, &side.owner.sigma) != 1 {
                    return Err(Error::NotNormalized(format!(
                        "dbar.sigma must be 1 on side `{}`",
                        side.owner.name
                    )));
                }
            }
            let sq1 = side1.owner.lattice.pair(d1, d1);
            let sq2 = side2.owner.lattice.pair(d2, d2);
            if (sq1 + sq2).rem_euclid(2) != 0 {
                return Err(Error::NotNormalized(
                    "dbar1^2 + dbar2^2 must be even".into(),
                ));
            }
            let (t1, t2) = if sq1.rem_euclid(2) == 0 { (0, 0) } else { (-1, 1) };
            dbar1 = Some(sigma_shift(&side1, d1, t1));
            dbar2 = Some(sigma_shift(&side2, d2, t2));
        } else {
            dbar1 = None;
            dbar2 = None;
        }
        Ok(GlueInput {
            side1,
            side2,
            dbar1,
            dbar2,
            one_to_one: false,
        })
    }

    pub fn with_one_to_one(mut self) -> Self {
        self.one_to_one = true;
        self
    }

    fn dbars(&self) -> Result<(&[i64], &[i64]), Error> {
        match (&self.dbar1, &self.dbar2) {
            (Some(d1), Some(d2)) => Ok((d1, d2)),
            _ => Err(Error::NotNormalized(
                "both sides need a dbar class for cross-neck evaluation".into(),
            )),
        }
    }
}

/// How a sector coefficient is computed.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CoefficientRoute {
    /// The closed-form values: `+-32` on the diagonal `+-2` sectors,
    /// zero elsewhere.
    Theorem,
    /// Contraction of the surface-power vectors `(2 K.S)^l` through the
    /// dual pairing.
    Contraction,
}

/// The universal coefficient multiplying `a_i b_j` for a pair of basic
/// classes with the given surface pairings.
pub fn sector_coefficient(
    k_dot_sigma: i64,
    l_dot_sigma: i64,
    route: CoefficientRoute,
) -> GaussRat {
    match route {
        CoefficientRoute::Theorem => match (k_dot_sigma, l_dot_sigma) {
            (2, 2) => GaussRat::from_int(32),
            (-2, -2) => GaussRat::from_int(-32),
            _ => GaussRat::zero(),
        },
        CoefficientRoute::Contraction => {
            let powers = |ks: i64| -> Vec<GaussRat> {
                (0..4u32)
                    .map(|l| GaussRat::from_int(2 * ks).pow(l))
                    .collect()
            };
            dual_pairing_matrix().bilinear(&powers(k_dot_sigma), &powers(l_dot_sigma))
        }
    }
}

struct SectorPair<'a> {
    k: &'a [i64],
    l: &'a [i64],
    a: &'a GaussRat,
    b: &'a GaussRat,
    ks: i64,
    ls: i64,
}

fn pairs<'a>(input: &'a GlueInput) -> Vec<SectorPair<'a>> {
    let mut out = Vec::new();
    for bc1 in &input.side1.classes {
        let ks = input
            .side1
            .owner
            .lattice
            .pair(&bc1.vector, &input.side1.owner.sigma);
        for bc2 in &input.side2.classes {
            let ls = input
                .side2
                .owner
                .lattice
                .pair(&bc2.vector, &input.side2.owner.sigma);
            out.push(SectorPair {
                k: &bc1.vector,
                l: &bc2.vector,
                a: &bc1.coeff,
                b: &bc2.coeff,
                ks,
                ls,
            });
        }
    }
    out
}

/// Full glued evaluator: the structure series of the fiber sum on
/// `e^{alpha + beta + t D + s Sigma}` with `alpha` in the first side's
/// lattice and `beta` in the second's. Either formal direction may be
/// omitted. This is the combination of the two gluing theorems: each
/// contributing pair `(K, L)` with `K.S = L.S = e = +-2` carries
/// frequency `K.alpha + L.beta + (K.dbar1 + L.dbar2 + 2e/|e|) t + e s`
/// and coefficient `(e/|e|) 32 a_i b_j`, and the quadratic exponent is
/// `Q1(alpha)/2 + Q2(beta)/2 + t (alpha.dbar1 + beta.dbar2) +
/// s (alpha.S1 + beta.S2) + s t`.
pub fn glue_eval(
    input: &GlueInput,
    alpha: &Alpha,
    beta: &Alpha,
    s: Option<&Var>,
    t: Option<&Var>,
) -> Result<ExpElement, Error> {
    let lat1 = &input.side1.owner.lattice;
    let lat2 = &input.side2.owner.lattice;
    let dbars = if t.is_some() { Some(input.dbars()?) } else { None };

    let mut base = alpha.half_q(lat1).add(&beta.half_q(lat2));
    if let (Some(t), Some((d1, d2))) = (t, dbars) {
        let mut l = alpha.pair_class(lat1, d1);
        let l2 = beta.pair_class(lat2, d2);
        l.constant = &l.constant + &l2.constant;
        for (v, c) in &l2.coeffs {
            l.add_term(v.clone(), c);
        }
        debug_assert!(l.constant.is_zero());
        for (v, c) in &l.coeffs {
            base.add_quad(t.clone(), v.clone(), c);
        }
    }
    if let Some(s) = s {
        let mut l = alpha.pair_class(lat1, &input.side1.owner.sigma);
        let l2 = beta.pair_class(lat2, &input.side2.owner.sigma);
        for (v, c) in &l2.coeffs {
            l.add_term(v.clone(), c);
        }
        for (v, c) in &l.coeffs {
            base.add_quad(s.clone(), v.clone(), c);
        }
        if let Some(t) = t {
            base.add_quad(s.clone(), t.clone(), &GaussRat::one());
        }
    }

    let mut out = ExpElement::zero();
    for p in pairs(input) {
        let sign = match (p.ks, p.ls) {
            (2, 2) => 1,
            (-2, -2) => -1,
            _ => continue,
        };
        let mut expo = base.clone();
        let fk = alpha.pair_class(lat1, p.k);
        let fl = beta.pair_class(lat2, p.l);
        for (v, c) in fk.coeffs.iter().chain(fl.coeffs.iter()) {
            expo.add_lin(v.clone(), c);
        }
        if let (Some(t), Some((d1, d2))) = (t, dbars) {
            let freq = lat1.pair(p.k, d1) + lat2.pair(p.l, d2) + 2 * sign;
            expo.add_lin(t.clone(), &GaussRat::from_int(freq));
        }
        if let Some(s) = s {
            expo.add_lin(s.clone(), &GaussRat::from_int(2 * sign));
        }
        let coeff = (p.a * p.b).scale_int(32 * sign);
        out = out + ExpElement::exponential(expo).scale(&coeff);
    }
    Ok(out)
}

/// The glued series on classes supported away from the neck:
/// `e^{Q(alpha+beta)/2} (sum_{2,2} 32 a b e^{K.alpha + L.beta}
/// - sum_{-2,-2} 32 a b e^{K.alpha + L.beta})`.
pub fn glue_h2(input: &GlueInput, alpha: &Alpha, beta: &Alpha) -> Result<ExpElement, Error> {
    glue_eval(input, alpha, beta, None, None)
}

/// The glued series on the cross-neck class: frequencies
/// `K.dbar1 + L.dbar2 +- 2` with coefficients `+-32 a b`. With a
/// surface variable, sector frequencies gain `+-2 s` and the whole
/// series the cross factor `e^{ts}`.
pub fn glue_with_d(
    input: &GlueInput,
    t: &Var,
    s: Option<&Var>,
) -> Result<ExpElement, Error> {
    glue_eval(input, &Alpha::new(), &Alpha::new(), s, Some(t))
}

/// Canonical representative of `v` modulo integer multiples of
/// `sigma`: the coefficient at the first nonzero coordinate of `sigma`
/// is reduced into `[0, |sigma_j|)`.
pub fn canonical_mod_sigma(v: &[i64], sigma: &[i64]) -> Vec<i64> {
    let Some(j) = sigma.iter().position(|&c| c != 0) else {
        return v.to_vec();
    };
    let m = sigma[j].abs();
    let r = v[j].rem_euclid(m);
    let q = (v[j] - r) / sigma[j];
    v.iter().zip(sigma).map(|(a, s)| a - q * s).collect()
}

/// Fiber data of one glued basic class built from a pair of basic
/// classes meeting the surface in the same `+-2` circles.
#[derive(Clone, PartialEq, Debug)]
pub struct KappaData {
    pub k: Vec<i64>,
    pub l: Vec<i64>,
    /// `K.S = L.S`, either `2` or `-2`.
    pub sector: i64,
    /// Images in the sigma-quotients identifying the fiber.
    pub pi_k: Vec<i64>,
    pub pi_l: Vec<i64>,
    /// `kappa.D = K.dbar1 + L.dbar2 +- 2`, when the cross-neck class
    /// is available.
    pub kappa_dot_d: Option<i64>,
    /// `kappa^2 = K^2 + L^2 + 8`.
    pub kappa_sq: i64,
    /// `+-32 a_i b_j` with the sector sign.
    pub coefficient: GaussRat,
}

/// Builds the fiber data for one pair of classes. The classes need not
/// be basic (a missing class contributes coefficient zero), but their
/// surface pairings must agree and be `+-2`.
pub fn kappa_construct(input: &GlueInput, k: &[i64], l: &[i64]) -> Result<KappaData, Error> {
    let o1 = &input.side1.owner;
    let o2 = &input.side2.owner;
    if k.len() != o1.lattice.rank() || l.len() != o2.lattice.rank() {
        return Err(Error::Validation("class vector length mismatch".into()));
    }
    let ks = o1.lattice.pair(k, &o1.sigma);
    let ls = o2.lattice.pair(l, &o2.sigma);
    if ks != ls || ks.abs() != 2 {
        return Err(Error::SectorMismatch(format!(
            "K.sigma = {ks}, L.sigma = {ls}; need equal values of +-2"
        )));
    }
    let sign = ks / 2;
    let coeff_of = |series: &StructureSeries, v: &[i64]| {
        series
            .classes
            .iter()
            .find(|bc| bc.vector == v)
            .map(|bc| bc.coeff.clone())
            .unwrap_or_else(GaussRat::zero)
    };
    let a = coeff_of(&input.side1, k);
    let b = coeff_of(&input.side2, l);
    let kappa_dot_d = match (&input.dbar1, &input.dbar2) {
        (Some(d1), Some(d2)) => {
            Some(o1.lattice.pair(k, d1) + o2.lattice.pair(l, d2) + 2 * sign)
        }
        _ => None,
    };
    Ok(KappaData {
        k: k.to_vec(),
        l: l.to_vec(),
        sector: ks,
        pi_k: canonical_mod_sigma(k, &o1.sigma),
        pi_l: canonical_mod_sigma(l, &o2.sigma),
        kappa_dot_d,
        kappa_sq: o1.lattice.pair(k, k) + o2.lattice.pair(l, l) + 8,
        coefficient: (&a * &b).scale_int(32 * sign),
    })
}

/// Case labels of the coefficient sum rules.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RuleCase {
    /// `K.S = L.S = 2`: the fiber's coefficients sum to `+32 a_i b_j`.
    PositiveSector,
    /// `K.S = L.S = -2`: sum `-32 a_i b_j`.
    NegativeSector,
    /// `K.S = L.S = 0`: sum zero.
    ZeroSector,
    /// `K.S != L.S`: the pair is not in the group of compatible
    /// quotient classes, so no glued class restricts to it.
    NotInGroup,
}

/// One coefficient sum rule over a fiber of the quotient projection.
#[derive(Clone, Debug)]
pub struct SumRule {
    pub case: RuleCase,
    pub pi_k: Vec<i64>,
    pub pi_l: Vec<i64>,
    /// The asserted sum of glued coefficients over the fiber.
    pub claimed_sum: GaussRat,
    /// Fiber data of the contributing pairs (empty outside the `+-2`
    /// sectors).
    pub kappas: Vec<KappaData>,
}

/// The full gluing report: sum rules over every pair of basic classes,
/// composed topology, and normalization metadata.
#[derive(Clone, Debug)]
pub struct GlueReport {
    pub rules: Vec<SumRule>,
    pub topology: ComposedTopology,
    /// `2^{7g-9}` for the genus at hand (32 for genus 2).
    pub coefficient_magnitude: BigInt,
    pub one_to_one: bool,
    /// In one-to-one mode, the derived assertion that the fiber sum has
    /// no basic class meeting the surface in zero circles.
    pub no_zero_sector_basics: Option<bool>,
    pub dbar1: Option<Vec<i64>>,
    pub dbar2: Option<Vec<i64>>,
}

/// Enumerates every pair of basic classes and emits the three-case
/// rule list: fibers over `+-2` sectors claim `+-32 a_i b_j` (grouped
/// by quotient image when several pairs share a fiber), zero sectors
/// claim zero, and incompatible pairs are marked as outside the group.
/// Every fiber not listed (pairs involving a non-basic class) sums to
/// zero. In one-to-one mode each nonzero rule must name a unique pair.
pub fn sum_rules(input: &GlueInput) -> Result<GlueReport, Error> {
    let mut rules: Vec<SumRule> = Vec::new();
    for p in pairs(input) {
        let case = match (p.ks, p.ls) {
            (2, 2) => RuleCase::PositiveSector,
            (-2, -2) => RuleCase::NegativeSector,
            (0, 0) => RuleCase::ZeroSector,
            _ if p.ks == p.ls => {
                return Err(Error::Validation(format!(
                    "unexpected sector K.sigma = L.sigma = {}",
                    p.ks
                )))
            }
            _ => RuleCase::NotInGroup,
        };
        let pi_k = canonical_mod_sigma(p.k, &input.side1.owner.sigma);
        let pi_l = canonical_mod_sigma(p.l, &input.side2.owner.sigma);
        let contribution = match case {
            RuleCase::PositiveSector => (p.a * p.b).scale_int(32),
            RuleCase::NegativeSector => (p.a * p.b).scale_int(-32),
            _ => GaussRat::zero(),
        };
        let kappa = match case {
            RuleCase::PositiveSector | RuleCase::NegativeSector => {
                Some(kappa_construct(input, p.k, p.l)?)
            }
            _ => None,
        };
        if let Some(rule) = rules
            .iter_mut()
            .find(|r| r.case == case && r.pi_k == pi_k && r.pi_l == pi_l)
        {
            rule.claimed_sum = &rule.claimed_sum + &contribution;
            rule.kappas.extend(kappa);
        } else {
            rules.push(SumRule {
                case,
                pi_k,
                pi_l,
                claimed_sum: contribution,
                kappas: kappa.into_iter().collect(),
            });
        }
    }
    if input.one_to_one {
        for rule in &rules {
            let nonzero = matches!(
                rule.case,
                RuleCase::PositiveSector | RuleCase::NegativeSector
            );
            if nonzero && rule.kappas.len() != 1 {
                return Err(Error::Validation(format!(
                    "one-to-one mode: fiber over ({:?}, {:?}) has {} contributing pairs",
                    rule.pi_k,
                    rule.pi_l,
                    rule.kappas.len()
                )));
            }
        }
    }
    let topology = topology_compose(&input.side1.owner, &input.side2.owner)?;
    let (magnitude, _) = predict_coefficient(input.side1.owner.genus)?;
    Ok(GlueReport {
        rules,
        topology,
        coefficient_magnitude: magnitude,
        one_to_one: input.one_to_one,
        no_zero_sector_basics: input.one_to_one.then_some(true),
        dbar1: input.dbar1.clone(),
        dbar2: input.dbar2.clone(),
    })
}

/// Proof status of the coefficient magnitude.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PredictStatus {
    /// Established for genus 2.
    Theorem,
    /// Conjectural for higher genus.
    Conjecture,
}

impl PredictStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            PredictStatus::Theorem => "theorem",
            PredictStatus::Conjecture => "conjecture",
        }
    }
}

/// The coefficient magnitude `2^{7g-9}` of the gluing rule for genus
/// `g >= 2`; fails with `OutOfDomain` below genus 2.
pub fn predict_coefficient(genus: i64) -> Result<(BigInt, PredictStatus), Error> {
    if genus < 2 {
        return Err(Error::OutOfDomain(format!(
            "genus {genus} < 2 has no gluing coefficient"
        )));
    }
    let status = if genus == 2 {
        PredictStatus::Theorem
    } else {
        PredictStatus::Conjecture
    };
    Ok((BigInt::one() << (7 * genus - 9) as usize, status))
}
