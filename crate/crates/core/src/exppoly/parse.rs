//! Parser for the canonical expression grammar printed by
//! `ExpElement::to_string`. Used for test fixtures and CLI round trips.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::element::{ExpElement, LinForm, QuadForm, Var};
use super::gauss::GaussRat;
use crate::Error;

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Num(BigRational),
    Gauss(GaussRat),
    Ident(String),
    Star,
    Caret,
    Plus,
    Minus,
    LParen,
    RParen,
}

fn err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn tokenize(input: &str) -> Result<Vec<Token>, Error> {
    let mut tokens = Vec::new();
    let chars: Vec<char> = input.chars().collect();
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        match c {
            ' ' | '\t' | '\n' => k += 1,
            '*' => {
                tokens.push(Token::Star);
                k += 1;
            }
            '^' => {
                tokens.push(Token::Caret);
                k += 1;
            }
            '+' => {
                tokens.push(Token::Plus);
                k += 1;
            }
            '-' => {
                tokens.push(Token::Minus);
                k += 1;
            }
            '(' => {
                // Either `exp(` handled by the grammar, or a
                // parenthesized Gaussian literal. `exp` was consumed as
                // an ident, so here we distinguish a gauss literal by
                // looking at the previous token.
                if matches!(tokens.last(), Some(Token::Ident(s)) if s == "exp") {
                    tokens.push(Token::LParen);
                    k += 1;
                } else {
                    let close = chars[k..]
                        .iter()
                        .position(|&c| c == ')')
                        .ok_or_else(|| err("unbalanced parenthesis"))?;
                    let inner: String = chars[k + 1..k + close].iter().collect();
                    tokens.push(Token::Gauss(inner.parse()?));
                    k += close + 1;
                }
            }
            ')' => {
                tokens.push(Token::RParen);
                k += 1;
            }
            '0'..='9' => {
                let start = k;
                while k < chars.len() && chars[k].is_ascii_digit() {
                    k += 1;
                }
                let num: BigInt = chars[start..k]
                    .iter()
                    .collect::<String>()
                    .parse()
                    .map_err(|_| err("bad integer"))?;
                // optional /denominator
                if k < chars.len() && chars[k] == '/' {
                    k += 1;
                    let dstart = k;
                    while k < chars.len() && chars[k].is_ascii_digit() {
                        k += 1;
                    }
                    if dstart == k {
                        return Err(err("missing denominator"));
                    }
                    let den: BigInt = chars[dstart..k]
                        .iter()
                        .collect::<String>()
                        .parse()
                        .map_err(|_| err("bad denominator"))?;
                    if den.is_zero() {
                        return Err(err("zero denominator"));
                    }
                    tokens.push(Token::Num(BigRational::new(num, den)));
                } else {
                    tokens.push(Token::Num(BigRational::from_integer(num)));
                }
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = k;
                while k < chars.len() && (chars[k].is_ascii_alphanumeric() || chars[k] == '_') {
                    k += 1;
                }
                tokens.push(Token::Ident(chars[start..k].iter().collect()));
            }
            other => return Err(err(format!("unexpected character `{other}`"))),
        }
    }
    Ok(tokens)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, t: Token) -> Result<(), Error> {
        match self.next() {
            Some(got) if got == t => Ok(()),
            got => Err(err(format!("expected {t:?}, got {got:?}"))),
        }
    }

    /// element := ['-'] term (('+'|'-') term)*
    fn element(&mut self) -> Result<ExpElement, Error> {
        let mut neg = false;
        if matches!(self.peek(), Some(Token::Minus)) {
            self.next();
            neg = true;
        }
        let mut acc = self.term()?;
        if neg {
            acc = -acc;
        }
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.next();
                    let t = self.term()?;
                    acc = acc + t;
                }
                Some(Token::Minus) => {
                    self.next();
                    let t = self.term()?;
                    acc = acc - t;
                }
                None => break,
                other => return Err(err(format!("unexpected token {other:?}"))),
            }
        }
        Ok(acc)
    }

    /// term := factor ('*' factor)*
    fn term(&mut self) -> Result<ExpElement, Error> {
        let mut acc = self.factor()?;
        while matches!(self.peek(), Some(Token::Star)) {
            self.next();
            let f = self.factor()?;
            acc = acc * f;
        }
        Ok(acc)
    }

    /// factor := number | gauss | 'i' | var ['^' uint] | 'exp' '(' poly ')'
    fn factor(&mut self) -> Result<ExpElement, Error> {
        match self.next() {
            Some(Token::Num(r)) => Ok(ExpElement::from_gauss(GaussRat::from_rational(r))),
            Some(Token::Gauss(g)) => Ok(ExpElement::from_gauss(g)),
            Some(Token::Ident(name)) if name == "i" => {
                Ok(ExpElement::from_gauss(GaussRat::i()))
            }
            Some(Token::Ident(name)) if name == "exp" => {
                self.expect(Token::LParen)?;
                let q = self.quad_poly()?;
                self.expect(Token::RParen)?;
                Ok(ExpElement::exponential(q))
            }
            Some(Token::Ident(name)) => {
                let v = Var::new(&name);
                if matches!(self.peek(), Some(Token::Caret)) {
                    self.next();
                    match self.next() {
                        Some(Token::Num(r)) if r.denom() == &BigInt::from(1) && r >= BigRational::zero() => {
                            let k: u32 = r
                                .numer()
                                .try_into()
                                .map_err(|_| err("exponent too large"))?;
                            Ok(ExpElement::var(v).pow(k))
                        }
                        got => Err(err(format!("expected exponent, got {got:?}"))),
                    }
                } else {
                    Ok(ExpElement::var(v))
                }
            }
            got => Err(err(format!("expected factor, got {got:?}"))),
        }
    }

    /// poly := ['-'] pterm (('+'|'-') pterm)* — at most quadratic with
    /// no constant part, collected into a QuadForm.
    fn quad_poly(&mut self) -> Result<QuadForm, Error> {
        let mut q = QuadForm::zero();
        let mut sign = GaussRat::one();
        if matches!(self.peek(), Some(Token::Minus)) {
            self.next();
            sign = -sign;
        }
        loop {
            self.pterm(&mut q, &sign)?;
            match self.peek() {
                Some(Token::Plus) => {
                    self.next();
                    sign = GaussRat::one();
                }
                Some(Token::Minus) => {
                    self.next();
                    sign = -GaussRat::one();
                }
                _ => break,
            }
        }
        Ok(q)
    }

    /// pterm := pfactor ('*' pfactor)*, a product of coefficients and
    /// at most two variable occurrences.
    fn pterm(&mut self, q: &mut QuadForm, sign: &GaussRat) -> Result<(), Error> {
        let mut coeff = sign.clone();
        let mut vars: Vec<Var> = Vec::new();
        loop {
            match self.next() {
                Some(Token::Num(r)) => coeff = &coeff * &GaussRat::from_rational(r),
                Some(Token::Gauss(g)) => coeff = &coeff * &g,
                Some(Token::Ident(name)) if name == "i" => coeff = &coeff * &GaussRat::i(),
                Some(Token::Ident(name)) => {
                    let v = Var::new(&name);
                    if matches!(self.peek(), Some(Token::Caret)) {
                        self.next();
                        match self.next() {
                            Some(Token::Num(r)) if r == BigRational::from_integer(2.into()) => {
                                vars.push(v.clone());
                                vars.push(v);
                            }
                            got => {
                                return Err(err(format!(
                                    "exponent inside exp() must be 2, got {got:?}"
                                )))
                            }
                        }
                    } else {
                        vars.push(v);
                    }
                }
                got => return Err(err(format!("bad exponent term at {got:?}"))),
            }
            if matches!(self.peek(), Some(Token::Star)) {
                self.next();
            } else {
                break;
            }
        }
        match vars.len() {
            0 => {
                if !coeff.is_zero() {
                    return Err(err("constant term inside exp() is not allowed"));
                }
            }
            1 => q.add_lin(vars.pop().unwrap(), &coeff),
            2 => {
                let b = vars.pop().unwrap();
                let a = vars.pop().unwrap();
                q.add_quad(a, b, &coeff);
            }
            n => return Err(err(format!("exponent term of degree {n} (max 2)"))),
        }
        Ok(())
    }
}

/// Parses the canonical grammar. Inverse of `ExpElement::to_string` on
/// normal forms; also tolerates extra whitespace and non-canonical but
/// unambiguous input such as `1/2*s`.
pub fn parse_element(input: &str) -> Result<ExpElement, Error> {
    let tokens = tokenize(input)?;
    if tokens.is_empty() {
        return Err(err("empty expression"));
    }
    let mut p = Parser { tokens, pos: 0 };
    let e = p.element()?;
    if p.pos != p.tokens.len() {
        return Err(err("trailing input"));
    }
    Ok(e)
}

/// Parses a linear-form frequency such as `2`, `0`, `3/2 + 2*t` for use
/// with `ExpElement::extract`.
pub fn parse_linform(input: &str) -> Result<LinForm, Error> {
    let e = parse_element(input)?;
    let mut lf = LinForm::zero();
    for (c, mono, q) in e.terms() {
        if !q.is_zero() {
            return Err(err("frequency must be polynomial"));
        }
        match mono.len() {
            0 => lf.constant = &lf.constant + c,
            1 => {
                let (v, k) = mono.iter().next().unwrap();
                if *k != 1 {
                    return Err(err("frequency must be linear"));
                }
                lf.add_term(v.clone(), c);
            }
            _ => return Err(err("frequency must be linear")),
        }
    }
    Ok(lf)
}

impl std::str::FromStr for ExpElement {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        parse_element(s)
    }
}
