//! The text grammar for polynomials: terms joined by `+`/`-`, integer or
//! `p/q` coefficients, variables `x0..xN` (dual ring `X1..Xn`), and `^` for
//! exponents, e.g. `12*x0^2*x1^2` or `X1^3-2*X2`.

use std::fmt;
use std::str::FromStr;

use crate::error::Error;
use crate::poly::{Monomial, Polynomial};
use crate::scalar::Scalar;

/// How variables are written: the letter case and the index of the first
/// variable. The primal ring is `x0, x1, ...`; the dual ring used for gap
/// systems is `X1, ..., Xn`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct VarStyle {
    pub upper: bool,
    pub base: u32,
}

impl VarStyle {
    /// `x0`-based primal variables.
    pub const LOWER0: VarStyle = VarStyle { upper: false, base: 0 };
    /// `X1`-based dual variables.
    pub const UPPER1: VarStyle = VarStyle { upper: true, base: 1 };

    fn name(&self, idx: usize) -> String {
        let letter = if self.upper { 'X' } else { 'x' };
        format!("{letter}{}", idx as u32 + self.base)
    }
}

#[derive(Debug, PartialEq)]
enum Token {
    Number(String),
    Var(u32),
    Star,
    Caret,
    Plus,
    Minus,
}

fn tokenize(input: &str) -> Result<Vec<Token>, Error> {
    let mut tokens = Vec::new();
    let mut chars = input.char_indices().peekable();
    while let Some(&(pos, ch)) = chars.peek() {
        match ch {
            c if c.is_whitespace() => {
                chars.next();
            }
            '*' => {
                chars.next();
                tokens.push(Token::Star);
            }
            '^' => {
                chars.next();
                tokens.push(Token::Caret);
            }
            '+' => {
                chars.next();
                tokens.push(Token::Plus);
            }
            '-' => {
                chars.next();
                tokens.push(Token::Minus);
            }
            '0'..='9' => {
                let mut text = String::new();
                let mut seen_slash = false;
                while let Some(&(_, c)) = chars.peek() {
                    if c.is_ascii_digit() {
                        text.push(c);
                        chars.next();
                    } else if c == '/' && !seen_slash {
                        seen_slash = true;
                        text.push(c);
                        chars.next();
                    } else {
                        break;
                    }
                }
                if text.ends_with('/') {
                    return Err(Error::Parse(format!(
                        "incomplete fraction at byte {pos}: `{text}`"
                    )));
                }
                if let Some(slash) = text.find('/') {
                    if text[slash + 1..].chars().all(|c| c == '0') {
                        return Err(Error::Parse(format!("zero denominator in `{text}`")));
                    }
                }
                tokens.push(Token::Number(text));
            }
            'x' | 'X' => {
                chars.next();
                let mut digits = String::new();
                while let Some(&(_, c)) = chars.peek() {
                    if c.is_ascii_digit() {
                        digits.push(c);
                        chars.next();
                    } else {
                        break;
                    }
                }
                if digits.is_empty() {
                    return Err(Error::Parse(format!(
                        "variable `{ch}` at byte {pos} needs an index, e.g. {ch}0"
                    )));
                }
                let idx: u32 = digits
                    .parse()
                    .map_err(|_| Error::Parse(format!("variable index `{digits}` too large")))?;
                tokens.push(Token::Var(idx));
            }
            _ => {
                return Err(Error::Parse(format!(
                    "unexpected character `{ch}` at byte {pos}"
                )));
            }
        }
    }
    Ok(tokens)
}

/// Parses a polynomial.
///
/// Variable indices are interpreted relative to `style.base`; letter case is
/// accepted either way. With `nvars = Some(n)` out-of-range variables are an
/// error, otherwise the variable count is inferred from the largest index.
pub fn parse_poly<T>(
    input: &str,
    style: VarStyle,
    nvars: Option<usize>,
) -> Result<Polynomial<T>, Error>
where
    T: Scalar + FromStr,
{
    let tokens = tokenize(input)?;
    if tokens.is_empty() {
        return Err(Error::Parse("empty input".into()));
    }

    // Each term is a product of factors; resolve variable counts afterwards.
    struct RawTerm<T> {
        coeff: T,
        exps: Vec<(usize, u32)>,
    }
    let mut terms: Vec<RawTerm<T>> = Vec::new();
    let mut max_var: Option<usize> = None;

    let mut i = 0;
    let mut negative = false;
    // optional leading sign
    match tokens.first() {
        Some(Token::Minus) => {
            negative = true;
            i = 1;
        }
        Some(Token::Plus) => {
            i = 1;
        }
        _ => {}
    }
    loop {
        // one term: factor ('*' factor)*
        let mut coeff = if negative { T::zero() - T::one() } else { T::one() };
        let mut exps: Vec<(usize, u32)> = Vec::new();
        let mut expect_factor = true;
        loop {
            match tokens.get(i) {
                Some(Token::Number(text)) if expect_factor => {
                    let v = T::from_str(text)
                        .map_err(|_| Error::Parse(format!("bad coefficient `{text}`")))?;
                    coeff = coeff * v;
                    i += 1;
                    expect_factor = false;
                }
                Some(Token::Var(raw)) if expect_factor => {
                    if *raw < style.base {
                        return Err(Error::Parse(format!(
                            "variable index {raw} is below the first variable {}",
                            style.name(0)
                        )));
                    }
                    let idx = (raw - style.base) as usize;
                    i += 1;
                    let mut e = 1u32;
                    if tokens.get(i) == Some(&Token::Caret) {
                        i += 1;
                        match tokens.get(i) {
                            Some(Token::Number(text)) if !text.contains('/') => {
                                e = text.parse().map_err(|_| {
                                    Error::Parse(format!("bad exponent `{text}`"))
                                })?;
                                i += 1;
                            }
                            _ => {
                                return Err(Error::Parse(
                                    "`^` must be followed by a nonnegative integer".into(),
                                ));
                            }
                        }
                    }
                    max_var = Some(max_var.map_or(idx, |m| m.max(idx)));
                    exps.push((idx, e));
                    expect_factor = false;
                }
                Some(Token::Star) if !expect_factor => {
                    i += 1;
                    expect_factor = true;
                }
                Some(tok) if expect_factor => {
                    return Err(Error::Parse(format!("expected a factor, found {tok:?}")));
                }
                _ => break,
            }
        }
        if expect_factor {
            return Err(Error::Parse("expected a term".into()));
        }
        terms.push(RawTerm { coeff, exps });
        match tokens.get(i) {
            None => break,
            Some(Token::Plus) => {
                negative = false;
                i += 1;
            }
            Some(Token::Minus) => {
                negative = true;
                i += 1;
            }
            Some(tok) => {
                return Err(Error::Parse(format!(
                    "expected `+` or `-` between terms, found {tok:?}"
                )));
            }
        }
    }

    let needed = max_var.map_or(0, |m| m + 1);
    let n = match nvars {
        Some(n) => {
            if needed > n {
                return Err(Error::Parse(format!(
                    "variable {} is out of range: this context has {n} variable(s)",
                    style.name(needed - 1)
                )));
            }
            n
        }
        None => needed,
    };
    let mut p = Polynomial::zero(n);
    for t in terms {
        let mut exps = vec![0u32; n];
        for (idx, e) in t.exps {
            exps[idx] += e;
        }
        p.add_term(exps, t.coeff);
    }
    Ok(p)
}

/// Renders a polynomial deterministically: terms in graded-lexicographic
/// order, highest first.
pub fn poly_to_string<T: Scalar>(p: &Polynomial<T>, style: VarStyle) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (e, c) in p.terms().collect::<Vec<_>>().into_iter().rev() {
        let negative = c.is_negative();
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let mag = c.abs();
        let mut factors: Vec<String> = Vec::new();
        if !mag.is_one() || e.degree() == 0 {
            factors.push(format!("{mag}"));
        }
        for (i, &x) in e.as_slice().iter().enumerate() {
            match x {
                0 => {}
                1 => factors.push(style.name(i)),
                _ => factors.push(format!("{}^{x}", style.name(i))),
            }
        }
        out.push_str(&factors.join("*"));
    }
    out
}

/// Renders a monomial without a coefficient, e.g. `x0^2*x1^2`.
pub fn monomial_to_string(m: &Monomial) -> String {
    let style = VarStyle::LOWER0;
    m.exponents()
        .iter()
        .enumerate()
        .map(|(i, &e)| {
            if e == 1 {
                style.name(i)
            } else {
                format!("{}^{e}", style.name(i))
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

/// Parses a monomial: a single term, coefficient one, every variable
/// `x0..xN` present with exponent at least one.
pub fn parse_monomial(input: &str) -> Result<Monomial, Error> {
    let p: Polynomial<crate::Q> = parse_poly(input, VarStyle::LOWER0, None)?;
    Monomial::from_polynomial(&p)
}

impl<T: Scalar> fmt::Display for Polynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&poly_to_string(self, VarStyle::LOWER0))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&monomial_to_string(self))
    }
}

impl<T: Scalar> fmt::Display for crate::poly::LinearForm<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&poly_to_string(&self.as_polynomial(), VarStyle::LOWER0))
    }
}
