//! The even part of the quantum cohomology of the moduli space of
//! odd-determinant rank-2 stable bundles over a genus-2 surface, as a
//! 4-dimensional Frobenius algebra over an exact coefficient ring.
//!
//! The power basis is `e_i = h^i`, `0 <= i <= 3`. Products reduce by
//! the relation `h^4 = 16 h^2`; the intersection pairing on the basis
//! is `4 * [[0,0,0,1],[0,0,1,0],[0,1,0,16],[1,0,16,0]]`. The mu-map
//! sends the surface class to `h/2` and the point class to
//! `h^2/4 - 2`, which squares to 4 as simple type requires.

use crate::exppoly::{ExpElement, GaussRat, LinForm, Matrix, QuadForm, Scalar, Var};
use crate::Error;

/// An element of the ring in power-basis coordinates `(c0..c3)` with
/// `z = c0 + c1 h + c2 h^2 + c3 h^3`, over any exact coefficient ring.
#[derive(Clone, PartialEq, Debug)]
pub struct RingClass<R: Scalar> {
    coords: [R; 4],
}

/// Coordinates may be expressed in either generator system.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Basis {
    /// `1, h, h^2, h^3`
    Power,
    /// `1, h, l, p` with `h^2 = 4l + 4` and `h^3 = 4p + 12h`.
    Geometric,
}

impl<R: Scalar> RingClass<R> {
    pub fn new(coords: [R; 4]) -> Self {
        RingClass { coords }
    }

    pub fn zero() -> Self {
        RingClass {
            coords: [R::zero(), R::zero(), R::zero(), R::zero()],
        }
    }

    pub fn one() -> Self {
        let mut z = Self::zero();
        z.coords[0] = R::one();
        z
    }

    /// The generator `h^k` for `k <= 3`.
    pub fn h_power(k: usize) -> Self {
        assert!(k < 4);
        let mut z = Self::zero();
        z.coords[k] = R::one();
        z
    }

    pub fn coords(&self) -> &[R; 4] {
        &self.coords
    }

    pub fn coord(&self, k: usize) -> &R {
        &self.coords[k]
    }

    pub fn scale(&self, c: &R) -> Self {
        RingClass {
            coords: [
                self.coords[0].mul(c),
                self.coords[1].mul(c),
                self.coords[2].mul(c),
                self.coords[3].mul(c),
            ],
        }
    }

    pub fn scale_gauss(&self, c: &GaussRat) -> Self {
        self.scale(&R::from_gauss(c.clone()))
    }

    pub fn add(&self, rhs: &Self) -> Self {
        RingClass {
            coords: [
                self.coords[0].add(&rhs.coords[0]),
                self.coords[1].add(&rhs.coords[1]),
                self.coords[2].add(&rhs.coords[2]),
                self.coords[3].add(&rhs.coords[3]),
            ],
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        RingClass {
            coords: [
                self.coords[0].sub(&rhs.coords[0]),
                self.coords[1].sub(&rhs.coords[1]),
                self.coords[2].sub(&rhs.coords[2]),
                self.coords[3].sub(&rhs.coords[3]),
            ],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    /// Converts power coordinates to the requested basis.
    pub fn to_basis(&self, basis: Basis) -> [R; 4] {
        match basis {
            Basis::Power => self.coords.clone(),
            Basis::Geometric => {
                let four = R::from_gauss(GaussRat::from_int(4));
                let twelve = R::from_gauss(GaussRat::from_int(12));
                let [c0, c1, c2, c3] = self.coords.clone();
                [
                    c0.add(&four.mul(&c2)),
                    c1.add(&twelve.mul(&c3)),
                    four.mul(&c2),
                    four.mul(&c3),
                ]
            }
        }
    }

    /// Builds a class from coordinates in the given basis.
    pub fn from_basis(coords: [R; 4], basis: Basis) -> Self {
        match basis {
            Basis::Power => RingClass { coords },
            Basis::Geometric => {
                let quarter = R::from_gauss(GaussRat::ratio(1, 4));
                let three = R::from_gauss(GaussRat::from_int(3));
                let [g0, g1, g2, g3] = coords;
                RingClass {
                    coords: [
                        g0.sub(&g2),
                        g1.sub(&three.mul(&g3)),
                        quarter.mul(&g2),
                        quarter.mul(&g3),
                    ],
                }
            }
        }
    }
}

/// Quantum product. Commutative, associative and unital; powers of `h`
/// past 3 reduce through `h^4 = 16 h^2` (hence `h^5 = 16 h^3` and
/// `h^6 = 256 h^2`).
pub fn qmul<R: Scalar>(a: &RingClass<R>, b: &RingClass<R>) -> RingClass<R> {
    let mut conv = vec![R::zero(); 7];
    for i in 0..4 {
        for j in 0..4 {
            conv[i + j] = conv[i + j].add(&a.coords[i].mul(&b.coords[j]));
        }
    }
    let c16 = R::from_gauss(GaussRat::from_int(16));
    let c256 = R::from_gauss(GaussRat::from_int(256));
    RingClass {
        coords: [
            conv[0].clone(),
            conv[1].clone(),
            conv[2].add(&c16.mul(&conv[4])).add(&c256.mul(&conv[6])),
            conv[3].add(&c16.mul(&conv[5])),
        ],
    }
}

/// The intersection pairing on the power basis: `4 * M` with
/// `M = [[0,0,0,1],[0,0,1,0],[0,1,0,16],[1,0,16,0]]`.
pub fn pairing_matrix() -> Matrix<GaussRat> {
    Matrix::from_int_rows(&[
        &[0, 0, 0, 4],
        &[0, 0, 4, 0],
        &[0, 4, 0, 64],
        &[4, 0, 64, 0],
    ])
}

/// The pairing of the dual basis: the exact inverse of `pairing_matrix`,
/// `(1/4) * [[0,-16,0,1],[-16,0,1,0],[0,1,0,0],[1,0,0,0]]`.
pub fn dual_pairing_matrix() -> Matrix<GaussRat> {
    Matrix::from_int_rows(&[
        &[0, -16, 0, 1],
        &[-16, 0, 1, 0],
        &[0, 1, 0, 0],
        &[1, 0, 0, 0],
    ])
    .scale(&GaussRat::ratio(1, 4))
}

/// Symmetric bilinear intersection form; Frobenius for `qmul`.
pub fn qpair<R: Scalar>(a: &RingClass<R>, b: &RingClass<R>) -> R {
    let m = pairing_matrix();
    let mut acc = R::zero();
    for i in 0..4 {
        for j in 0..4 {
            if m[(i, j)].is_zero() {
                continue;
            }
            let w = R::from_gauss(m[(i, j)].clone());
            acc = acc.add(&a.coords[i].mul(&b.coords[j]).mul(&w));
        }
    }
    acc
}

/// Image of the surface class: `h/2`.
pub fn mu_sigma<R: Scalar>() -> RingClass<R> {
    RingClass::new([
        R::zero(),
        R::from_gauss(GaussRat::ratio(1, 2)),
        R::zero(),
        R::zero(),
    ])
}

/// Image of the point class: `h^2/4 - 2`. Squares to 4 exactly, so
/// `(mu_x - 2)(mu_x + 2) = 0`.
pub fn mu_x<R: Scalar>() -> RingClass<R> {
    RingClass::new([
        R::from_gauss(GaussRat::from_int(-2)),
        R::zero(),
        R::from_gauss(GaussRat::ratio(1, 4)),
        R::zero(),
    ])
}

/// `mu(surface)^a * mu(point)^b`.
pub fn mu_class<R: Scalar>(a: u32, b: u32) -> RingClass<R> {
    let mut acc = RingClass::one();
    let ms = mu_sigma();
    let mx = mu_x();
    for _ in 0..a {
        acc = qmul(&acc, &ms);
    }
    for _ in 0..b {
        acc = qmul(&acc, &mx);
    }
    acc
}

/// `exp(L * mu_sigma)` for a linear form `L` in formal variables with
/// rational coefficients and no constant part:
/// `(1, L/2, (cosh 2L - 1)/16, (sinh 2L - 2L)/64)` with the hyperbolic
/// functions expanded as exponentials. Satisfies
/// `d/dv E = coeff(v) * mu_sigma * E` for every variable of `L`, and
/// `E(L) * E(L') = E(L + L')`.
pub fn exp_mu_sigma_of(l: &LinForm) -> Result<RingClass<ExpElement>, Error> {
    if !l.constant.is_zero() {
        return Err(Error::Parse("exponent must have no constant part".into()));
    }
    let mut two_l = QuadForm::zero();
    let mut lin = ExpElement::zero();
    for (v, c) in &l.coeffs {
        two_l.add_lin(v.clone(), &(c + c));
        lin = lin + ExpElement::var(v.clone()).scale(c);
    }
    let e_pos = ExpElement::exponential(two_l.clone());
    let e_neg = ExpElement::exponential(two_l.scale(&-GaussRat::one()));
    let half = GaussRat::ratio(1, 2);
    let cosh = (&e_pos + &e_neg).scale(&half);
    let sinh = (&e_pos - &e_neg).scale(&half);
    Ok(RingClass::new([
        ExpElement::one(),
        lin.scale(&half),
        (cosh - ExpElement::one()).scale(&GaussRat::ratio(1, 16)),
        (sinh - lin.scale(&GaussRat::from_int(2))).scale(&GaussRat::ratio(1, 64)),
    ]))
}

/// `exp(s * mu_sigma)` in one formal variable.
pub fn exp_mu_sigma(s: &Var) -> RingClass<ExpElement> {
    exp_mu_sigma_of(&LinForm::var(s.clone(), GaussRat::one())).expect("no constant part")
}

/// Multiplication matrix of `z` on the power basis: entry `(i, j)` is
/// the coefficient of `h^j` in `z * h^i`.
pub fn mult_matrix<R: Scalar>(z: &RingClass<R>) -> Matrix<R> {
    let mut m = Matrix::zeros(4, 4);
    for i in 0..4 {
        let row = qmul(z, &RingClass::h_power(i));
        for j in 0..4 {
            m[(i, j)] = row.coords[j].clone();
        }
    }
    m
}

impl RingClass<GaussRat> {
    /// Lifts constant coordinates into the exponential-polynomial ring.
    pub fn lift(&self) -> RingClass<ExpElement> {
        RingClass::new([
            ExpElement::from_gauss(self.coords[0].clone()),
            ExpElement::from_gauss(self.coords[1].clone()),
            ExpElement::from_gauss(self.coords[2].clone()),
            ExpElement::from_gauss(self.coords[3].clone()),
        ])
    }
}

impl RingClass<ExpElement> {
    /// Coordinate-wise formal derivative.
    pub fn derive(&self, var: &Var) -> Self {
        RingClass::new([
            self.coords[0].derive(var),
            self.coords[1].derive(var),
            self.coords[2].derive(var),
            self.coords[3].derive(var),
        ])
    }

    /// Coordinate-wise substitution of zero for a variable.
    pub fn subst_zero(&self, var: &Var) -> Self {
        RingClass::new([
            self.coords[0].subst_zero(var),
            self.coords[1].subst_zero(var),
            self.coords[2].subst_zero(var),
            self.coords[3].subst_zero(var),
        ])
    }
}
