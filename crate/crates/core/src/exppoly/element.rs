//! Exponential polynomials: finite sums of terms
//! `c * (monomial in formal variables) * exp(Q)` where `c` is a Gaussian
//! rational and `Q` is a quadratic polynomial with zero constant term.
//!
//! This class of expressions is closed under addition, multiplication
//! and differentiation, and large enough to hold every series value the
//! library produces (`e^{Q(a)/2}`, `sinh 2s`, `s*e^{ts}`, Gaussian
//! frequencies `e^{iK.a}`, ...). Everything is exact; there is no
//! floating point anywhere.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;

use super::gauss::GaussRat;
use crate::Error;

/// A formal variable, ordered by name. The names `exp` and `i` are
/// reserved by the text grammar.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Var(String);

impl Var {
    pub fn new(name: &str) -> Self {
        assert!(
            name != "exp" && name != "i",
            "`{name}` is reserved by the expression grammar"
        );
        Var(name.to_string())
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl From<&str> for Var {
    fn from(s: &str) -> Self {
        Var::new(s)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A linear form `c + sum k_v * v` with Gaussian-rational coefficients.
/// Used as the frequency argument of coefficient extraction and as the
/// derivative of a quadratic exponent.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Default)]
pub struct LinForm {
    pub constant: GaussRat,
    pub coeffs: BTreeMap<Var, GaussRat>,
}

impl LinForm {
    pub fn zero() -> Self {
        LinForm {
            constant: GaussRat::zero(),
            coeffs: BTreeMap::new(),
        }
    }

    pub fn constant(c: GaussRat) -> Self {
        LinForm {
            constant: c,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn var(v: Var, coeff: GaussRat) -> Self {
        let mut coeffs = BTreeMap::new();
        if !coeff.is_zero() {
            coeffs.insert(v, coeff);
        }
        LinForm {
            constant: GaussRat::zero(),
            coeffs,
        }
    }

    pub fn add_term(&mut self, v: Var, coeff: &GaussRat) {
        let entry = self.coeffs.entry(v.clone()).or_insert_with(GaussRat::zero);
        *entry = &*entry + coeff;
        if entry.is_zero() {
            self.coeffs.remove(&v);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.coeffs.is_empty()
    }

    /// `self * var` as a quadratic form (the cross terms `k_u * u * var`
    /// plus the linear term `c * var`).
    pub fn times_var(&self, var: &Var) -> QuadForm {
        let mut q = QuadForm::zero();
        q.add_lin(var.clone(), &self.constant);
        for (u, k) in &self.coeffs {
            q.add_quad(var.clone(), u.clone(), k);
        }
        q
    }
}

fn pair_key(a: Var, b: Var) -> (Var, Var) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// A quadratic polynomial with zero constant term: the only shape an
/// exponent is allowed to take. Keys of `quad` are ordered pairs
/// (v, w) with v <= w; (v, v) is the coefficient of `v^2`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Default)]
pub struct QuadForm {
    quad: BTreeMap<(Var, Var), GaussRat>,
    lin: BTreeMap<Var, GaussRat>,
}

impl QuadForm {
    pub fn zero() -> Self {
        QuadForm::default()
    }

    pub fn is_zero(&self) -> bool {
        self.quad.is_empty() && self.lin.is_empty()
    }

    pub fn linear(v: Var, coeff: GaussRat) -> Self {
        let mut q = QuadForm::zero();
        q.add_lin(v, &coeff);
        q
    }

    pub fn add_lin(&mut self, v: Var, coeff: &GaussRat) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.lin.entry(v.clone()).or_insert_with(GaussRat::zero);
        *entry = &*entry + coeff;
        if entry.is_zero() {
            self.lin.remove(&v);
        }
    }

    pub fn add_quad(&mut self, a: Var, b: Var, coeff: &GaussRat) {
        if coeff.is_zero() {
            return;
        }
        let key = pair_key(a, b);
        let entry = self.quad.entry(key.clone()).or_insert_with(GaussRat::zero);
        *entry = &*entry + coeff;
        if entry.is_zero() {
            self.quad.remove(&key);
        }
    }

    /// Iterates the linear entries.
    pub fn lin_terms(&self) -> impl Iterator<Item = (&Var, &GaussRat)> {
        self.lin.iter()
    }

    /// Iterates the quadratic entries, keyed by ordered variable pairs.
    pub fn quad_terms(&self) -> impl Iterator<Item = (&(Var, Var), &GaussRat)> {
        self.quad.iter()
    }

    /// True if any coefficient has a nonzero imaginary part.
    pub fn has_imaginary_coeff(&self) -> bool {
        self.lin.values().chain(self.quad.values()).any(|c| c.has_imag())
    }

    pub fn lin_coeff(&self, v: &Var) -> GaussRat {
        self.lin.get(v).cloned().unwrap_or_else(GaussRat::zero)
    }

    pub fn quad_coeff(&self, a: &Var, b: &Var) -> GaussRat {
        self.quad
            .get(&pair_key(a.clone(), b.clone()))
            .cloned()
            .unwrap_or_else(GaussRat::zero)
    }

    pub fn add(&self, other: &QuadForm) -> QuadForm {
        let mut out = self.clone();
        for ((a, b), c) in &other.quad {
            out.add_quad(a.clone(), b.clone(), c);
        }
        for (v, c) in &other.lin {
            out.add_lin(v.clone(), c);
        }
        out
    }

    pub fn scale(&self, c: &GaussRat) -> QuadForm {
        if c.is_zero() {
            return QuadForm::zero();
        }
        QuadForm {
            quad: self.quad.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
            lin: self.lin.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    /// Formal partial derivative with respect to `var`: a linear form.
    pub fn derivative(&self, var: &Var) -> LinForm {
        let mut d = LinForm::constant(self.lin_coeff(var));
        for ((a, b), c) in &self.quad {
            if a == b {
                if a == var {
                    d.add_term(a.clone(), &(c + c));
                }
            } else if a == var {
                d.add_term(b.clone(), c);
            } else if b == var {
                d.add_term(a.clone(), c);
            }
        }
        d
    }

    /// True if the exponent contains `var^2`.
    pub fn has_square(&self, var: &Var) -> bool {
        self.quad.contains_key(&(var.clone(), var.clone()))
    }

    /// Removes every monomial mentioning `var` (substitution var -> 0).
    fn without_var(&self, var: &Var) -> QuadForm {
        QuadForm {
            quad: self
                .quad
                .iter()
                .filter(|((a, b), _)| a != var && b != var)
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
            lin: self
                .lin
                .iter()
                .filter(|(v, _)| *v != var)
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
        }
    }

    /// Substitution `var -> c * var`.
    fn scale_var(&self, var: &Var, c: &GaussRat) -> QuadForm {
        let mut out = QuadForm::zero();
        for ((a, b), k) in &self.quad {
            let factor = match (a == var, b == var) {
                (true, true) => c * c,
                (true, false) | (false, true) => c.clone(),
                (false, false) => GaussRat::one(),
            };
            out.add_quad(a.clone(), b.clone(), &(k * &factor));
        }
        for (v, k) in &self.lin {
            let factor = if v == var { c.clone() } else { GaussRat::one() };
            out.add_lin(v.clone(), &(k * &factor));
        }
        out
    }

    fn rename_var(&self, from: &Var, to: &Var) -> QuadForm {
        let r = |v: &Var| if v == from { to.clone() } else { v.clone() };
        let mut out = QuadForm::zero();
        for ((a, b), k) in &self.quad {
            out.add_quad(r(a), r(b), k);
        }
        for (v, k) in &self.lin {
            out.add_lin(r(v), k);
        }
        out
    }
}

/// Monomial: variable -> positive exponent.
pub type Mono = BTreeMap<Var, u32>;

/// Internal term key; the coefficient lives in the map value.
pub type TermKey = (QuadForm, Mono);

/// An exponential polynomial in normal form: no two terms share the
/// same (exponent, monomial) key and no coefficient is zero. Structural
/// equality of normal forms is exact mathematical equality.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct ExpElement {
    terms: BTreeMap<TermKey, GaussRat>,
}

impl ExpElement {
    pub fn zero() -> Self {
        ExpElement::default()
    }

    pub fn one() -> Self {
        Self::from_gauss(GaussRat::one())
    }

    pub fn from_gauss(c: GaussRat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((QuadForm::zero(), Mono::new()), c);
        }
        ExpElement { terms }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_gauss(GaussRat::from_int(n))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Self::from_gauss(GaussRat::ratio(num, den))
    }

    pub fn var(v: Var) -> Self {
        let mut mono = Mono::new();
        mono.insert(v, 1);
        let mut terms = BTreeMap::new();
        terms.insert((QuadForm::zero(), mono), GaussRat::one());
        ExpElement { terms }
    }

    /// `exp(q)` for a quadratic form with zero constant term.
    pub fn exponential(q: QuadForm) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert((q, Mono::new()), GaussRat::one());
        ExpElement { terms }
    }

    /// `exp(l)` where `l` must have zero constant part; a nonzero
    /// constant in an exponent has no representation here.
    pub fn exp_linear(l: &LinForm) -> Result<Self, Error> {
        if !l.constant.is_zero() {
            return Err(Error::Parse(
                "constant term in an exponent is not representable".into(),
            ));
        }
        let mut q = QuadForm::zero();
        for (v, c) in &l.coeffs {
            q.add_lin(v.clone(), c);
        }
        Ok(Self::exponential(q))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Iterate over terms as (coefficient, monomial, exponent).
    pub fn terms(&self) -> impl Iterator<Item = (&GaussRat, &Mono, &QuadForm)> {
        self.terms.iter().map(|((q, m), c)| (c, m, q))
    }

    fn insert_term(&mut self, key: TermKey, coeff: GaussRat) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(key.clone()).or_insert_with(GaussRat::zero);
        *entry = &*entry + &coeff;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn scale(&self, c: &GaussRat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        ExpElement {
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.clone(), v * c))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Formal derivative: product rule over monomial and exponent.
    pub fn derive(&self, var: &Var) -> Self {
        let mut out = Self::zero();
        for ((q, m), c) in &self.terms {
            // power rule on the monomial
            if let Some(&k) = m.get(var) {
                let mut m2 = m.clone();
                if k == 1 {
                    m2.remove(var);
                } else {
                    m2.insert(var.clone(), k - 1);
                }
                out.insert_term((q.clone(), m2), c.scale_int(k as i64));
            }
            // chain rule on the exponent
            let d = q.derivative(var);
            if !d.constant.is_zero() {
                out.insert_term((q.clone(), m.clone()), c * &d.constant);
            }
            for (u, k) in &d.coeffs {
                let mut m2 = m.clone();
                *m2.entry(u.clone()).or_insert(0) += 1;
                out.insert_term((q.clone(), m2), c * k);
            }
        }
        out
    }

    /// Substitution `var -> 0`: terms containing `var` in the monomial
    /// vanish; exponent entries mentioning `var` are dropped.
    pub fn subst_zero(&self, var: &Var) -> Self {
        let mut out = Self::zero();
        for ((q, m), c) in &self.terms {
            if m.contains_key(var) {
                continue;
            }
            out.insert_term((q.without_var(var), m.clone()), c.clone());
        }
        out
    }

    /// Substitution `var -> c * var` (exact for any Gaussian rational c).
    pub fn scale_var(&self, var: &Var, c: &GaussRat) -> Self {
        let mut out = Self::zero();
        for ((q, m), coeff) in &self.terms {
            let k = m.get(var).copied().unwrap_or(0);
            let mut new_coeff = coeff * &c.pow(k);
            let mut m2 = m.clone();
            if c.is_zero() && k > 0 {
                new_coeff = GaussRat::zero();
                m2.remove(var);
            }
            out.insert_term((q.scale_var(var, c), m2), new_coeff);
        }
        out
    }

    /// Substitution `from -> to` on variable names. `to` must not occur.
    pub fn rename_var(&self, from: &Var, to: &Var) -> Self {
        let mut out = Self::zero();
        for ((q, m), c) in &self.terms {
            let m2: Mono = m
                .iter()
                .map(|(v, k)| (if v == from { to.clone() } else { v.clone() }, *k))
                .collect();
            out.insert_term((q.rename_var(from, to), m2), c.clone());
        }
        out
    }

    /// Exchanges two variables everywhere.
    pub fn swap_vars(&self, a: &Var, b: &Var) -> Self {
        let tmp = Var::new("__swap_tmp");
        self.rename_var(a, &tmp).rename_var(b, a).rename_var(&tmp, b)
    }

    /// Scales every variable by `c` at once (e.g. `a -> i*a`).
    pub fn scale_all_vars(&self, c: &GaussRat) -> Self {
        let vars: BTreeSet<Var> = self.variables();
        let mut out = self.clone();
        for v in vars {
            out = out.scale_var(&v, c);
        }
        out
    }

    pub fn variables(&self) -> BTreeSet<Var> {
        let mut vars = BTreeSet::new();
        for (q, m) in self.terms.keys() {
            vars.extend(m.keys().cloned());
            vars.extend(q.lin.keys().cloned());
            for (a, b) in q.quad.keys() {
                vars.insert(a.clone());
                vars.insert(b.clone());
            }
        }
        vars
    }

    /// The coefficient of `var^k * exp(freq * var)`, with every other
    /// occurrence of the remaining variables left intact. Summing
    /// `extract(...) * var^k * exp(freq*var)` over all occurring pairs
    /// (k, freq) reconstructs the element exactly.
    ///
    /// Fails with `QuadraticInVar` if any exponent contains `var^2`.
    pub fn extract(&self, var: &Var, k: u32, freq: &LinForm) -> Result<Self, Error> {
        let mut out = Self::zero();
        for ((q, m), c) in &self.terms {
            if q.has_square(var) {
                return Err(Error::QuadraticInVar(var.name().to_string()));
            }
            if m.get(var).copied().unwrap_or(0) != k {
                continue;
            }
            if &q.derivative(var) != freq {
                continue;
            }
            let mut m2 = m.clone();
            m2.remove(var);
            out.insert_term((q.without_var(var), m2), c.clone());
        }
        Ok(out)
    }

    /// Every (monomial power, frequency) pair in `var` occurring in the
    /// element. Fails with `QuadraticInVar` if an exponent has `var^2`.
    pub fn occurring_extractions(&self, var: &Var) -> Result<BTreeSet<(u32, LinForm)>, Error> {
        let mut set = BTreeSet::new();
        for (q, m) in self.terms.keys() {
            if q.has_square(var) {
                return Err(Error::QuadraticInVar(var.name().to_string()));
            }
            set.insert((m.get(var).copied().unwrap_or(0), q.derivative(var)));
        }
        Ok(set)
    }

    /// Exact Taylor coefficient of `var^k` at `var = 0` (an element in
    /// the remaining variables): k-fold derivative over k!.
    pub fn taylor_coefficient(&self, var: &Var, k: u32) -> Self {
        let mut e = self.clone();
        for _ in 0..k {
            e = e.derive(var);
        }
        let mut fact = GaussRat::one();
        for j in 2..=k as i64 {
            fact = fact.scale_int(j);
        }
        e.subst_zero(var)
            .scale(&fact.inverse().expect("factorial is nonzero"))
    }

    /// If the element is a constant, returns it.
    pub fn constant_value(&self) -> Option<GaussRat> {
        if self.terms.is_empty() {
            return Some(GaussRat::zero());
        }
        if self.terms.len() == 1 {
            let ((q, m), c) = self.terms.iter().next().unwrap();
            if q.is_zero() && m.is_empty() {
                return Some(c.clone());
            }
        }
        None
    }

    /// Builds a single term `coeff * mono * exp(expo)`.
    pub fn from_term(coeff: GaussRat, mono: Mono, expo: QuadForm) -> Self {
        let mut e = Self::zero();
        e.insert_term((expo, mono), coeff);
        e
    }

    /// Builds `c * var^k * exp(freq * var)`-shaped basis element used by
    /// the extraction reconstruction identity.
    pub fn basis_term(var: &Var, k: u32, freq: &LinForm) -> Self {
        let mut mono = Mono::new();
        if k > 0 {
            mono.insert(var.clone(), k);
        }
        let mut terms = BTreeMap::new();
        terms.insert((freq.times_var(var), mono), GaussRat::one());
        ExpElement { terms }
    }
}

impl Add<&ExpElement> for &ExpElement {
    type Output = ExpElement;
    fn add(self, rhs: &ExpElement) -> ExpElement {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.insert_term(k.clone(), c.clone());
        }
        out
    }
}

impl Sub<&ExpElement> for &ExpElement {
    type Output = ExpElement;
    fn sub(self, rhs: &ExpElement) -> ExpElement {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.insert_term(k.clone(), -c);
        }
        out
    }
}

impl Mul<&ExpElement> for &ExpElement {
    type Output = ExpElement;
    fn mul(self, rhs: &ExpElement) -> ExpElement {
        let mut out = ExpElement::zero();
        for ((q1, m1), c1) in &self.terms {
            for ((q2, m2), c2) in &rhs.terms {
                let mut mono = m1.clone();
                for (v, k) in m2 {
                    *mono.entry(v.clone()).or_insert(0) += k;
                }
                out.insert_term((q1.add(q2), mono), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &ExpElement {
    type Output = ExpElement;
    fn neg(self) -> ExpElement {
        ExpElement {
            terms: self.terms.iter().map(|(k, c)| (k.clone(), -c)).collect(),
        }
    }
}

macro_rules! forward_elem_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for ExpElement {
            type Output = ExpElement;
            fn $method(self, rhs: ExpElement) -> ExpElement {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&ExpElement> for ExpElement {
            type Output = ExpElement;
            fn $method(self, rhs: &ExpElement) -> ExpElement {
                (&self).$method(rhs)
            }
        }
        impl $trait<ExpElement> for &ExpElement {
            type Output = ExpElement;
            fn $method(self, rhs: ExpElement) -> ExpElement {
                self.$method(&rhs)
            }
        }
    };
}

forward_elem_binop!(Add, add);
forward_elem_binop!(Sub, sub);
forward_elem_binop!(Mul, mul);

impl Neg for ExpElement {
    type Output = ExpElement;
    fn neg(self) -> ExpElement {
        -&self
    }
}

// ---------------------------------------------------------------------
// Canonical rendering. The grammar is:
//
//   element := '0' | ['-'] term ((' + ' | ' - ') term)*
//   term    := coeff | [coeff '*'] factors
//   factors := factor ('*' factor)*
//   factor  := var ['^' uint] | 'exp' '(' poly ')'
//   poly    := ['-'] pterm ((' + ' | ' - ') pterm)*
//   pterm   := [pcoeff '*'] var ['^2'] ['*' var]
//   coeff   := uint | '(' gauss ')'        (negatives via the sign slot)
//   pcoeff  := uint | '(' gauss ')'
//
// where gauss is the `GaussRat` display form. Terms are printed in
// descending (exponent, monomial) order, which puts exp(2*s) before
// exp(-2*s) before polynomial terms. Parsing of the same grammar lives
// in `parse.rs`.
// ---------------------------------------------------------------------

fn fmt_coeff(c: &GaussRat, out: &mut String) {
    if c.is_plain() {
        out.push_str(&c.to_string());
    } else {
        out.push('(');
        out.push_str(&c.to_string());
        out.push(')');
    }
}

fn fmt_quadform(q: &QuadForm, out: &mut String) {
    let mut first = true;
    let push = |coeff: &GaussRat, body: String, out: &mut String, first: &mut bool| {
        let (neg, mag) = if coeff.is_leading_negative() {
            (true, -coeff)
        } else {
            (false, coeff.clone())
        };
        if *first {
            if neg {
                out.push('-');
            }
            *first = false;
        } else if neg {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        if !mag.is_one() {
            fmt_coeff(&mag, out);
            out.push('*');
        }
        out.push_str(&body);
    };
    for (v, c) in &q.lin {
        push(c, v.to_string(), out, &mut first);
    }
    for ((a, b), c) in &q.quad {
        let body = if a == b {
            format!("{a}^2")
        } else {
            format!("{a}*{b}")
        };
        push(c, body, out, &mut first);
    }
}

impl fmt::Display for ExpElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut out = String::new();
        let mut first = true;
        for ((q, m), c) in self.terms.iter().rev() {
            let (neg, mag) = if c.is_leading_negative() {
                (true, -c)
            } else {
                (false, c.clone())
            };
            if first {
                if neg {
                    out.push('-');
                }
                first = false;
            } else if neg {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let mut factors: Vec<String> = Vec::new();
            for (v, k) in m {
                if *k == 1 {
                    factors.push(v.to_string());
                } else {
                    factors.push(format!("{v}^{k}"));
                }
            }
            if !q.is_zero() {
                let mut inner = String::new();
                fmt_quadform(q, &mut inner);
                factors.push(format!("exp({inner})"));
            }
            if factors.is_empty() {
                // standalone constants need no parentheses unless they
                // mix real and imaginary parts
                if mag.is_mixed() {
                    fmt_coeff(&mag, &mut out);
                } else {
                    out.push_str(&mag.to_string());
                }
            } else {
                if !mag.is_one() {
                    fmt_coeff(&mag, &mut out);
                    out.push('*');
                }
                out.push_str(&factors.join("*"));
            }
        }
        write!(f, "{out}")
    }
}

impl fmt::Debug for ExpElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Convenience: `exp(c * v)` with an integer frequency.
pub fn exp_int(v: &Var, c: i64) -> ExpElement {
    ExpElement::exponential(QuadForm::linear(v.clone(), GaussRat::from_int(c)))
}

/// `cosh(c*v)` expanded as `(exp(cv) + exp(-cv))/2`.
pub fn cosh_int(v: &Var, c: i64) -> ExpElement {
    (exp_int(v, c) + exp_int(v, -c)).scale(&GaussRat::ratio(1, 2))
}

/// `sinh(c*v)` expanded as `(exp(cv) - exp(-cv))/2`.
pub fn sinh_int(v: &Var, c: i64) -> ExpElement {
    (exp_int(v, c) - exp_int(v, -c)).scale(&GaussRat::ratio(1, 2))
}

/// Exact factorial as a rational (helper for series comparisons).
pub fn factorial(n: u32) -> BigRational {
    let mut f = BigRational::from_integer(1.into());
    for k in 2..=n as i64 {
        f *= BigRational::from_integer(k.into());
    }
    f
}
