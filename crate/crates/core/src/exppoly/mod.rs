//! Exact-arithmetic kernel: Gaussian rationals, exponential polynomials
//! with quadratic exponents, and exact matrices over both.

mod element;
mod gauss;
mod matrix;
mod parse;

pub use element::{
    cosh_int, exp_int, factorial, sinh_int, ExpElement, LinForm, Mono, QuadForm, Var,
};
pub use gauss::GaussRat;
pub use matrix::{mat_inv, ExpMatrix, Matrix, Scalar};
pub use parse::{parse_element, parse_linform};

#[cfg(test)]
mod tests {
    use super::*;

    fn s() -> Var {
        Var::new("s")
    }

    fn t() -> Var {
        Var::new("t")
    }

    #[test]
    fn exponents_cancel() {
        // (s*e^{2s}) * e^{-2s} = s
        let lhs = ExpElement::var(s()) * exp_int(&s(), 2) * exp_int(&s(), -2);
        assert_eq!(lhs, ExpElement::var(s()));
    }

    #[test]
    fn derive_cross_term() {
        // d/ds e^{ts} = t * e^{ts}
        let mut q = QuadForm::zero();
        q.add_quad(s(), t(), &GaussRat::one());
        let e = ExpElement::exponential(q);
        assert_eq!(e.derive(&s()), ExpElement::var(t()) * &e);
    }

    #[test]
    fn hyperbolic_pythagoras() {
        // cosh^2 - sinh^2 = 1
        let c = cosh_int(&s(), 2);
        let sh = sinh_int(&s(), 2);
        assert_eq!(&c * &c - &sh * &sh, ExpElement::one());
    }

    #[test]
    fn extraction_from_cap_series() {
        // a = (1/32)e^{2s} - (1/32)e^{-2s} - s/8
        let a = exp_int(&s(), 2).scale(&GaussRat::ratio(1, 32))
            - exp_int(&s(), -2).scale(&GaussRat::ratio(1, 32))
            - ExpElement::var(s()).scale(&GaussRat::ratio(1, 8));
        let got = a.extract(&s(), 1, &LinForm::zero()).unwrap();
        assert_eq!(got, ExpElement::ratio(-1, 8));
        let got = a
            .extract(&s(), 0, &LinForm::constant(GaussRat::from_int(2)))
            .unwrap();
        assert_eq!(got, ExpElement::ratio(1, 32));
        assert_eq!(
            ExpElement::zero().extract(&s(), 0, &LinForm::zero()).unwrap(),
            ExpElement::zero()
        );
    }

    #[test]
    fn extraction_rejects_squares() {
        let mut q = QuadForm::zero();
        q.add_quad(s(), s(), &GaussRat::one());
        let e = ExpElement::exponential(q);
        assert!(e.extract(&s(), 0, &LinForm::zero()).is_err());
    }

    #[test]
    fn extraction_reconstructs() {
        // s*e^{ts} + 2*e^{2s} + t^2 reconstructs from its extractions.
        let mut q = QuadForm::zero();
        q.add_quad(s(), t(), &GaussRat::one());
        let mut t2 = QuadForm::zero();
        t2.add_quad(t(), t(), &GaussRat::one());
        let e = ExpElement::var(s()) * ExpElement::exponential(q)
            + exp_int(&s(), 2).scale(&GaussRat::from_int(2))
            + ExpElement::exponential(t2);
        let mut back = ExpElement::zero();
        for (k, freq) in e.occurring_extractions(&s()).unwrap() {
            let part = e.extract(&s(), k, &freq).unwrap();
            back = back + part * ExpElement::basis_term(&s(), k, &freq);
        }
        assert_eq!(back, e);
    }

    #[test]
    fn mat_inv_pairing_example() {
        // inverse of 4*[[0,0,0,1],[0,0,1,0],[0,1,0,16],[1,0,16,0]]
        let m = Matrix::from_int_rows(&[
            &[0, 0, 0, 4],
            &[0, 0, 4, 0],
            &[0, 4, 0, 64],
            &[4, 0, 64, 0],
        ]);
        let expected = Matrix::from_int_rows(&[
            &[0, -16, 0, 1],
            &[-16, 0, 1, 0],
            &[0, 1, 0, 0],
            &[1, 0, 0, 0],
        ])
        .scale(&GaussRat::ratio(1, 4));
        assert_eq!(m.inverse().unwrap(), expected);
        let id = Matrix::<GaussRat>::identity(4);
        assert_eq!(id.inverse().unwrap(), id);
        let zero = Matrix::<GaussRat>::zeros(2, 2);
        assert!(matches!(zero.inverse(), Err(crate::Error::SingularMatrix)));
    }

    #[test]
    fn canonical_rendering() {
        let e = exp_int(&s(), 2).scale(&GaussRat::ratio(1, 32))
            - exp_int(&s(), -2).scale(&GaussRat::ratio(1, 32))
            - ExpElement::var(s()).scale(&GaussRat::ratio(1, 8));
        assert_eq!(
            e.to_string(),
            "(1/32)*exp(2*s) - (1/32)*exp(-2*s) - (1/8)*s"
        );
        assert_eq!(ExpElement::zero().to_string(), "0");
        let parsed: ExpElement = e.to_string().parse().unwrap();
        assert_eq!(parsed, e);
    }

    #[test]
    fn parse_gaussian_frequencies() {
        let e: ExpElement = "(1/2+3/4*i)*exp((2*i)*t) - i*t^2".parse().unwrap();
        let back: ExpElement = e.to_string().parse().unwrap();
        assert_eq!(back, e);
    }

    #[test]
    fn taylor_matches_series() {
        // e^{2s}: Taylor coefficient of s^k is 2^k/k!.
        let e = exp_int(&s(), 2);
        for k in 0..6u32 {
            let expect = GaussRat::pow2(k as i64)
                * GaussRat::from_rational(factorial(k)).inverse().unwrap();
            assert_eq!(
                e.taylor_coefficient(&s(), k),
                ExpElement::from_gauss(expect)
            );
        }
    }

    #[test]
    fn swap_and_scale_vars() {
        let mut q = QuadForm::zero();
        q.add_quad(s(), t(), &GaussRat::one());
        q.add_lin(s(), &GaussRat::from_int(2));
        let e = ExpElement::exponential(q) * ExpElement::var(s());
        let swapped = e.swap_vars(&s(), &t());
        let mut q2 = QuadForm::zero();
        q2.add_quad(s(), t(), &GaussRat::one());
        q2.add_lin(t(), &GaussRat::from_int(2));
        assert_eq!(swapped, ExpElement::exponential(q2) * ExpElement::var(t()));
        // s -> i*s turns e^{2s} into e^{2is} and s into i*s
        let g = exp_int(&s(), 2).scale_var(&s(), &GaussRat::i());
        let mut qi = QuadForm::zero();
        qi.add_lin(s(), &(GaussRat::i() * GaussRat::from_int(2)));
        assert_eq!(g, ExpElement::exponential(qi));
    }
}
