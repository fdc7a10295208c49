//! Sparse multivariate polynomials over an exact scalar.
//!
//! Terms are kept in a map ordered graded-lexicographically, so iteration,
//! printing and serialization are deterministic. The zero coefficient is
//! never stored.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::Error;
use crate::scalar::{binomial_triangle, Scalar};

/// Exponent vector of one term; the key type of [`Polynomial`].
///
/// Ordered by total degree first, then lexicographically, so map iteration
/// enumerates terms from low to high degree.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ExpVec(Vec<u32>);

impl ExpVec {
    pub fn new(exps: Vec<u32>) -> Self {
        ExpVec(exps)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    /// Componentwise `self <= other`.
    pub fn divides(&self, other: &ExpVec) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Componentwise sum.
    pub fn plus(&self, other: &ExpVec) -> ExpVec {
        ExpVec(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for ExpVec {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for ExpVec {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial with a fixed number of variables.
#[derive(Clone, PartialEq, Debug)]
pub struct Polynomial<T: Scalar> {
    nvars: usize,
    terms: BTreeMap<ExpVec, T>,
}

impl<T: Scalar> Polynomial<T> {
    pub fn zero(nvars: usize) -> Self {
        Polynomial { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: T) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    /// The variable `x_idx` as a polynomial.
    pub fn variable(nvars: usize, idx: usize) -> Self {
        assert!(idx < nvars, "variable index {idx} out of range for {nvars} variables");
        let mut exps = vec![0; nvars];
        exps[idx] = 1;
        let mut p = Self::zero(nvars);
        p.add_term(exps, T::one());
        p
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, summing
    /// duplicates. Panics if an exponent vector has the wrong length.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, T)>,
    {
        let mut p = Self::zero(nvars);
        for (exps, c) in terms {
            p.add_term(exps, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(ExpVec::degree).max()
    }

    /// Terms in graded-lexicographic order, lowest first.
    pub fn terms(&self) -> impl Iterator<Item = (&ExpVec, &T)> {
        self.terms.iter()
    }

    /// Coefficient of the given exponent vector (zero if absent).
    pub fn coeff(&self, exps: &[u32]) -> T {
        assert_eq!(exps.len(), self.nvars, "exponent vector length mismatch");
        self.terms
            .get(&ExpVec(exps.to_vec()))
            .cloned()
            .unwrap_or_else(T::zero)
    }

    /// Adds `c * x^exps` in place, dropping the term if it cancels.
    pub fn add_term(&mut self, exps: Vec<u32>, c: T) {
        assert_eq!(exps.len(), self.nvars, "exponent vector length mismatch");
        if c.is_zero() {
            return;
        }
        let key = ExpVec(exps);
        match self.terms.get_mut(&key) {
            Some(existing) => {
                *existing = existing.clone() + c;
                if existing.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    pub fn scale(&self, c: &T) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, t)| (e.clone(), t.clone() * c.clone()))
                .collect(),
        }
    }

    /// `self^k` by repeated multiplication.
    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::constant(self.nvars, T::one());
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Renames variables: new variable `perm[i]` receives old variable `i`.
    ///
    /// `perm` must be a permutation of `0..nvars`.
    pub fn permute_vars(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.nvars, "permutation length mismatch");
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut exps = vec![0; self.nvars];
            for (i, &x) in e.as_slice().iter().enumerate() {
                exps[perm[i]] = x;
            }
            out.add_term(exps, c.clone());
        }
        out
    }
}

impl<T: Scalar + Eq> Eq for Polynomial<T> {}

fn check_same_vars<T: Scalar>(a: &Polynomial<T>, b: &Polynomial<T>) {
    assert_eq!(
        a.nvars, b.nvars,
        "polynomials have different variable counts ({} vs {})",
        a.nvars, b.nvars
    );
}

impl<T: Scalar> Add for &Polynomial<T> {
    type Output = Polynomial<T>;
    fn add(self, rhs: Self) -> Polynomial<T> {
        check_same_vars(self, rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.as_slice().to_vec(), c.clone());
        }
        out
    }
}

impl<T: Scalar> Sub for &Polynomial<T> {
    type Output = Polynomial<T>;
    fn sub(self, rhs: Self) -> Polynomial<T> {
        check_same_vars(self, rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.as_slice().to_vec(), c.clone().neg());
        }
        out
    }
}

impl<T: Scalar> Neg for &Polynomial<T> {
    type Output = Polynomial<T>;
    fn neg(self) -> Polynomial<T> {
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), c.clone().neg()))
                .collect(),
        }
    }
}

impl<T: Scalar> Mul for &Polynomial<T> {
    type Output = Polynomial<T>;
    fn mul(self, rhs: Self) -> Polynomial<T> {
        check_same_vars(self, rhs);
        let mut out = Polynomial::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(ea.plus(eb).0, ca.clone() * cb.clone());
            }
        }
        out
    }
}

/// Applies the differential operator `op` to `f`.
///
/// Each operator term `X^b` acts as the iterated partial derivative
/// `d^|b| / dx^b`, with no extra normalization: `X1^2` applied to `x1^3`
/// gives `6*x1`. Panics if the variable counts differ.
pub fn apply_diff<T: Scalar>(op: &Polynomial<T>, f: &Polynomial<T>) -> Polynomial<T> {
    check_same_vars(op, f);
    let mut out = Polynomial::zero(f.nvars);
    for (b, cop) in &op.terms {
        for (a, cf) in &f.terms {
            if !b.divides(a) {
                continue;
            }
            // falling factorial per variable: a_i (a_i - 1) ... (a_i - b_i + 1)
            let mut c = cop.clone() * cf.clone();
            let mut exps = Vec::with_capacity(f.nvars);
            for (&ai, &bi) in a.as_slice().iter().zip(b.as_slice()) {
                for k in 0..bi {
                    c = c * T::from_u32(ai - k).expect("exponent embeds into scalar");
                }
                exps.push(ai - bi);
            }
            out.add_term(exps, c);
        }
    }
    out
}

/// A monomial `x0^a0 * ... * xn^an` with every exponent at least one.
///
/// Exponents are kept in the order the user gave them; [`Monomial::canonical`]
/// exposes the sorted view (non-decreasing exponents) together with the
/// permutation needed to report results in the original variable order.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    /// At least two variables, every exponent at least one.
    pub fn new(exps: Vec<u32>) -> Result<Self, Error> {
        if exps.len() < 2 {
            return Err(Error::InvalidMonomial(
                "a monomial needs at least two variables (the rank of a pure power is 1)".into(),
            ));
        }
        if exps.iter().any(|&e| e == 0) {
            return Err(Error::InvalidMonomial(
                "every variable must appear with exponent at least 1; drop unused variables".into(),
            ));
        }
        Ok(Monomial { exps })
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn min_exponent(&self) -> u32 {
        *self.exps.iter().min().expect("monomial is nonempty")
    }

    /// Sorted exponents and the permutation back to user order.
    ///
    /// Returns `(sorted, perm)` where `sorted` is non-decreasing and
    /// `perm[k]` is the original index of canonical position `k`. The sort is
    /// stable, so equal exponents keep their original relative order.
    pub fn canonical(&self) -> (Vec<u32>, Vec<usize>) {
        let mut idx: Vec<usize> = (0..self.exps.len()).collect();
        idx.sort_by_key(|&i| self.exps[i]);
        let sorted = idx.iter().map(|&i| self.exps[i]).collect();
        (sorted, idx)
    }

    pub fn as_polynomial<T: Scalar>(&self) -> Polynomial<T> {
        let mut p = Polynomial::zero(self.exps.len());
        p.add_term(self.exps.clone(), T::one());
        p
    }

    /// Extracts the monomial from a polynomial that is a single term with
    /// coefficient one.
    pub fn from_polynomial<T: Scalar>(p: &Polynomial<T>) -> Result<Self, Error> {
        if p.num_terms() != 1 {
            return Err(Error::InvalidMonomial(format!(
                "expected a single term, found {}",
                p.num_terms()
            )));
        }
        let (e, c) = p.terms().next().expect("one term");
        if !c.is_one() {
            return Err(Error::InvalidMonomial(format!(
                "expected coefficient 1, found {c}"
            )));
        }
        Monomial::new(e.as_slice().to_vec())
    }
}

/// A nonzero linear form `c0*x0 + ... + cn*xn`.
#[derive(Clone, PartialEq, Debug)]
pub struct LinearForm<T: Scalar> {
    coeffs: Vec<T>,
}

impl<T: Scalar> LinearForm<T> {
    pub fn new(coeffs: Vec<T>) -> Result<Self, Error> {
        if coeffs.iter().all(|c| c.is_zero()) {
            return Err(Error::Invalid("linear form must be nonzero".into()));
        }
        Ok(LinearForm { coeffs })
    }

    pub fn nvars(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn as_polynomial(&self) -> Polynomial<T> {
        let n = self.coeffs.len();
        let mut p = Polynomial::zero(n);
        for (i, c) in self.coeffs.iter().enumerate() {
            let mut exps = vec![0; n];
            exps[i] = 1;
            p.add_term(exps, c.clone());
        }
        p
    }

    /// `self^d` by direct multinomial expansion with exact coefficients.
    pub fn power(&self, d: u32) -> Polynomial<T> {
        let n = self.coeffs.len();
        let tri = binomial_triangle::<T>(d);
        let mut out = Polynomial::zero(n);
        let mut exps = vec![0u32; n];
        // Distribute the degree over the variables left to right; the
        // accumulated coefficient is the product of binomials C(remaining, k)
        // times the matching powers of the form's coefficients.
        fn rec<T: Scalar>(
            coeffs: &[T],
            tri: &[Vec<T>],
            exps: &mut Vec<u32>,
            var: usize,
            remaining: u32,
            acc: T,
            out: &mut Polynomial<T>,
        ) {
            if var + 1 == coeffs.len() {
                if coeffs[var].is_zero() && remaining > 0 {
                    return;
                }
                let mut c = acc;
                for _ in 0..remaining {
                    c = c * coeffs[var].clone();
                }
                exps[var] = remaining;
                out.add_term(exps.clone(), c);
                exps[var] = 0;
                return;
            }
            let top = if coeffs[var].is_zero() { 0 } else { remaining };
            let mut powed = acc.clone();
            for k in 0..=top {
                let c = powed.clone() * tri[remaining as usize][k as usize].clone();
                exps[var] = k;
                rec(coeffs, tri, exps, var + 1, remaining - k, c, out);
                if k < top {
                    powed = powed * coeffs[var].clone();
                }
            }
            exps[var] = 0;
        }
        rec(&self.coeffs, &tri, &mut exps, 0, d, T::one(), &mut out);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;
    use crate::Q;

    fn q(n: i64) -> Q {
        int(n)
    }

    fn p(nvars: usize, terms: &[(&[u32], i64)]) -> Polynomial<Q> {
        Polynomial::from_terms(
            nvars,
            terms.iter().map(|(e, c)| (e.to_vec(), q(*c))),
        )
    }

    #[test]
    fn graded_lex_order() {
        let a = ExpVec::new(vec![0, 2]);
        let b = ExpVec::new(vec![1, 1]);
        let c = ExpVec::new(vec![2, 0]);
        let d = ExpVec::new(vec![1, 0]);
        assert!(d < a && a < b && b < c);
    }

    #[test]
    fn add_cancels_terms() {
        let f = p(2, &[(&[2, 2], 12), (&[4, 0], 1)]);
        let g = p(2, &[(&[4, 0], -1)]);
        assert_eq!(&f + &g, p(2, &[(&[2, 2], 12)]));
        let h = &f + &f.clone().terms().fold(Polynomial::zero(2), |mut acc, (e, c)| {
            acc.add_term(e.as_slice().to_vec(), -c.clone());
            acc
        });
        assert!(h.is_zero());
    }

    #[test]
    fn mul_matches_hand_expansion() {
        // (x0 + x1)(x0 - x1) = x0^2 - x1^2
        let f = p(2, &[(&[1, 0], 1), (&[0, 1], 1)]);
        let g = p(2, &[(&[1, 0], 1), (&[0, 1], -1)]);
        assert_eq!(&f * &g, p(2, &[(&[2, 0], 1), (&[0, 2], -1)]));
    }

    #[test]
    fn mul_by_zero() {
        let f = p(2, &[(&[1, 1], 3)]);
        assert!((&f * &Polynomial::zero(2)).is_zero());
    }

    #[test]
    #[should_panic(expected = "different variable counts")]
    fn mismatched_vars_panic() {
        let f = p(2, &[(&[1, 0], 1)]);
        let g = p(3, &[(&[1, 0, 0], 1)]);
        let _ = &f + &g;
    }

    #[test]
    fn diff_plain_derivative() {
        // X1^2 applied to x1^3 is 6 x1 (no apolar normalization)
        let op = p(2, &[(&[0, 2], 1)]);
        let f = p(2, &[(&[0, 3], 1)]);
        assert_eq!(apply_diff(&op, &f), p(2, &[(&[0, 1], 6)]));
    }

    #[test]
    fn diff_kills_high_exponent() {
        // X0^3 applied to x0^2 x1^5 is 0
        let op = p(2, &[(&[3, 0], 1)]);
        let f = p(2, &[(&[2, 5], 1)]);
        assert!(apply_diff(&op, &f).is_zero());
    }

    #[test]
    fn diff_multi_term() {
        // (X0 X1) applied to x0^2 x1^2 + x0 x1 -> 4 x0 x1 + 1
        let op = p(2, &[(&[1, 1], 1)]);
        let f = p(2, &[(&[2, 2], 1), (&[1, 1], 1)]);
        assert_eq!(apply_diff(&op, &f), p(2, &[(&[1, 1], 4), (&[0, 0], 1)]));
    }

    #[test]
    fn power_binary_square() {
        let l = LinearForm::new(vec![q(1), q(1)]).unwrap();
        assert_eq!(
            l.power(2),
            p(2, &[(&[2, 0], 1), (&[1, 1], 2), (&[0, 2], 1)])
        );
    }

    #[test]
    fn power_matches_repeated_multiplication() {
        let l = LinearForm::new(vec![q(2), q(-3), q(5)]).unwrap();
        let lp = l.as_polynomial();
        for d in 0..=6 {
            assert_eq!(l.power(d), lp.pow(d), "degree {d}");
        }
    }

    #[test]
    fn power_with_zero_coordinate() {
        let l = LinearForm::new(vec![q(1), q(0)]).unwrap();
        assert_eq!(l.power(4), p(2, &[(&[4, 0], 1)]));
    }

    #[test]
    fn monomial_validation() {
        assert!(Monomial::new(vec![2, 0, 1]).is_err());
        assert!(Monomial::new(vec![3]).is_err());
        let m = Monomial::new(vec![3, 1, 2]).unwrap();
        assert_eq!(m.degree(), 6);
        assert_eq!(m.min_exponent(), 1);
    }

    #[test]
    fn canonical_sorts_stably() {
        let m = Monomial::new(vec![3, 1, 2, 1]).unwrap();
        let (sorted, perm) = m.canonical();
        assert_eq!(sorted, vec![1, 1, 2, 3]);
        assert_eq!(perm, vec![1, 3, 2, 0]);
    }

    #[test]
    fn permute_vars_round_trip() {
        let f = p(3, &[(&[2, 1, 0], 5), (&[0, 0, 3], -1)]);
        let perm = [2, 0, 1];
        let g = f.permute_vars(&perm);
        assert_eq!(g.coeff(&[1, 0, 2]), q(5));
        let mut inv = [0usize; 3];
        for (i, &t) in perm.iter().enumerate() {
            inv[t] = i;
        }
        assert_eq!(g.permute_vars(&inv), f);
    }
}
