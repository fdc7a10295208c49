//! Dense univariate polynomials and exact real root counting.

use crate::error::Error;
use crate::poly::Polynomial;
use crate::scalar::Scalar;

/// Dense univariate polynomial; `coeffs[k]` multiplies `t^k`, the leading
/// coefficient is nonzero, and the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Debug)]
pub struct UniPoly<T: Scalar> {
    coeffs: Vec<T>,
}

impl<T: Scalar> UniPoly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        UniPoly { coeffs: vec![T::one()] }
    }

    /// `(t - r_1) ... (t - r_k)`, expanded.
    pub fn from_roots(roots: &[T]) -> Self {
        let mut coeffs = vec![T::one()];
        for r in roots {
            coeffs.push(T::zero());
            for k in (0..coeffs.len()).rev() {
                let lower = if k > 0 { coeffs[k - 1].clone() } else { T::zero() };
                coeffs[k] = lower - r.clone() * coeffs[k].clone();
            }
        }
        UniPoly::new(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// Coefficient of `t^k` (zero if absent).
    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    pub fn leading_coeff(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &T) -> T {
        let mut acc = T::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c.clone() * T::from_usize(k).expect("degree embeds into scalar"))
            .collect();
        UniPoly::new(coeffs)
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].clone() + a.clone() * b.clone();
            }
        }
        UniPoly::new(coeffs)
    }

    /// Remainder of `self` divided by `rhs`. Panics if `rhs` is zero.
    pub fn rem(&self, rhs: &Self) -> Self {
        assert!(!rhs.is_zero(), "division by the zero polynomial");
        let mut r = self.coeffs.clone();
        let d = rhs.coeffs.len() - 1;
        let lc = rhs.coeffs.last().expect("nonzero divisor");
        while r.len() > d {
            let q = r.last().expect("nonempty").clone() / lc.clone();
            let shift = r.len() - 1 - d;
            if !q.is_zero() {
                for (k, c) in rhs.coeffs.iter().enumerate() {
                    r[shift + k] = r[shift + k].clone() - q.clone() * c.clone();
                }
            }
            r.pop();
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        UniPoly { coeffs: r }
    }

    /// Divides by the absolute value of the leading coefficient.
    ///
    /// Positive scaling keeps every sign evaluation intact while stopping
    /// coefficient growth along remainder sequences.
    fn sign_normalized(&self) -> Self {
        match self.leading_coeff() {
            None => Self::zero(),
            Some(lc) => {
                let s = lc.abs();
                UniPoly {
                    coeffs: self.coeffs.iter().map(|c| c.clone() / s.clone()).collect(),
                }
            }
        }
    }

    /// Number of distinct real roots, by a Sturm sequence evaluated at
    /// minus and plus infinity. Exact for exact scalars; repeated roots are
    /// counted once, and the input does not need to be squarefree.
    ///
    /// Panics on the zero polynomial, whose root set is not finite.
    pub fn sturm_count(&self) -> usize {
        assert!(
            !self.is_zero(),
            "the zero polynomial does not have finitely many roots"
        );
        if self.degree() == Some(0) {
            return 0;
        }
        let mut chain = vec![self.sign_normalized(), self.derivative().sign_normalized()];
        loop {
            let k = chain.len();
            if chain[k - 1].is_zero() {
                chain.pop();
                break;
            }
            let r = chain[k - 2].rem(&chain[k - 1]);
            chain.push(r.sign_normalized().neg());
        }
        let vars_at = |at_minus: bool| {
            let mut count = 0usize;
            let mut last: Option<bool> = None; // sign recorded as "is negative"
            for p in &chain {
                let lc = p.leading_coeff().expect("chain elements are nonzero");
                let deg = p.degree().expect("chain elements are nonzero");
                let mut negative = lc.is_negative();
                if at_minus && deg % 2 == 1 {
                    negative = !negative;
                }
                if let Some(prev) = last {
                    if prev != negative {
                        count += 1;
                    }
                }
                last = Some(negative);
            }
            count
        };
        let (at_minus, at_plus) = (vars_at(true), vars_at(false));
        at_minus
            .checked_sub(at_plus)
            .expect("sign variations cannot increase from -inf to +inf")
    }

    fn neg(&self) -> Self {
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| T::zero() - c.clone()).collect(),
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        match a.leading_coeff() {
            None => a,
            Some(lc) => {
                let lc = lc.clone();
                UniPoly {
                    coeffs: a.coeffs.iter().map(|c| c.clone() / lc.clone()).collect(),
                }
            }
        }
    }

    /// True when the polynomial has no repeated complex root.
    pub fn is_squarefree(&self) -> bool {
        !self.is_zero() && self.gcd(&self.derivative()).degree() == Some(0)
    }

    /// Reads a univariate polynomial out of a multivariate one that only
    /// uses variable `var`.
    pub fn from_multivariate(p: &Polynomial<T>, var: usize) -> Result<Self, Error> {
        let mut coeffs = Vec::new();
        for (e, c) in p.terms() {
            for (i, &x) in e.as_slice().iter().enumerate() {
                if i != var && x != 0 {
                    return Err(Error::Invalid(format!(
                        "polynomial is not univariate in variable {var}"
                    )));
                }
            }
            let k = e.as_slice()[var] as usize;
            if coeffs.len() <= k {
                coeffs.resize(k + 1, T::zero());
            }
            coeffs[k] = c.clone();
        }
        Ok(UniPoly::new(coeffs))
    }

    /// Embeds into a multivariate polynomial in `nvars` variables, using
    /// variable `var`.
    pub fn to_multivariate(&self, nvars: usize, var: usize) -> Polynomial<T> {
        assert!(var < nvars, "variable index out of range");
        let mut p = Polynomial::zero(nvars);
        for (k, c) in self.coeffs.iter().enumerate() {
            let mut exps = vec![0; nvars];
            exps[var] = k as u32;
            p.add_term(exps, c.clone());
        }
        p
    }
}

/// Elementary symmetric polynomial `e_k` of the given values.
///
/// `e_0 = 1`; panics if `k` exceeds the number of values.
pub fn elementary_symmetric<T: Scalar>(values: &[T], k: usize) -> T {
    assert!(
        k <= values.len(),
        "e_{k} of {} values is undefined",
        values.len()
    );
    let mut e = vec![T::zero(); k + 1];
    e[0] = T::one();
    for v in values {
        for j in (1..=k).rev() {
            let up = e[j - 1].clone() * v.clone();
            e[j] = e[j].clone() + up;
        }
    }
    e.swap_remove(k)
}
