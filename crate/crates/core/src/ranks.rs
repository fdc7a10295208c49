//! Closed-form rank values and bounds for monomials.
//!
//! All functions sort the exponent vector internally, so they are invariant
//! under permuting the variables.

use std::fmt;

use serde_json::{json, Value};

use crate::poly::Monomial;
use crate::text::monomial_to_string;

/// Which constructor produced a bound (and, for `decompose_real`, which
/// point-set family backs the decomposition).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Method {
    /// Two variables: a0 + a1 terms, and that value is the exact real rank.
    Binary,
    /// Least exponent 1: the grid meets the complex rank, so the real and
    /// complex ranks agree.
    A0Eq1,
    /// All exponents 2: the closed-form identity with (3^(n+1) - 1)/2 terms.
    Squares,
    /// The general product grid with prod_{i>=1} (a0 + ai) points.
    GeneralGrid,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Binary => "binary",
            Method::A0Eq1 => "a0eq1",
            Method::Squares => "squares",
            Method::GeneralGrid => "general-grid",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn sorted_exps(m: &Monomial) -> Vec<u32> {
    let (sorted, _) = m.canonical();
    sorted
}

fn checked_product(factors: impl IntoIterator<Item = u64>) -> u64 {
    let mut acc: u128 = 1;
    for f in factors {
        acc = acc.checked_mul(u128::from(f)).expect("rank exceeds u128");
    }
    u64::try_from(acc).expect("rank exceeds u64")
}

/// The complex Waring rank: with exponents sorted so a0 is least,
/// `(1/(a0+1)) * prod (ai+1)`. The product is always divisible by a0+1.
pub fn complex_rank(m: &Monomial) -> u64 {
    let a = sorted_exps(m);
    let product = checked_product(a.iter().map(|&e| u64::from(e) + 1));
    let a0_plus_1 = u64::from(a[0]) + 1;
    assert_eq!(product % a0_plus_1, 0, "least-exponent factor must divide the product");
    product / a0_plus_1
}

/// The smallest applicable upper bound for the real rank, with its method.
///
/// Candidates: a0+a1 for binary monomials (exact); the complex rank when
/// a0 = 1 (exact); (3^(n+1)-1)/2 when every exponent is 2; and the product
/// grid bound prod_{i>=1} (a0+ai) always. Ties keep the earlier candidate in
/// that order.
pub fn real_rank_upper(m: &Monomial) -> (u64, Method) {
    let a = sorted_exps(m);
    let mut best: Option<(u64, Method)> = None;
    let mut offer = |value: u64, method: Method| {
        if best.map_or(true, |(v, _)| value < v) {
            best = Some((value, method));
        }
    };
    if a.len() == 2 {
        offer(u64::from(a[0]) + u64::from(a[1]), Method::Binary);
    }
    if a[0] == 1 {
        offer(complex_rank(m), Method::A0Eq1);
    }
    if a.iter().all(|&e| e == 2) {
        let pow = checked_product(std::iter::repeat(3).take(a.len()));
        offer((pow - 1) / 2, Method::Squares);
    }
    offer(
        checked_product(a[1..].iter().map(|&e| u64::from(e) + u64::from(a[0]))),
        Method::GeneralGrid,
    );
    best.expect("the grid bound always applies")
}

/// The exact real rank where known: a0+a1 in two variables, the complex rank
/// when a0 = 1, unknown otherwise.
pub fn real_rank_exact(m: &Monomial) -> Option<u64> {
    let a = sorted_exps(m);
    if a.len() == 2 {
        Some(u64::from(a[0]) + u64::from(a[1]))
    } else if a[0] == 1 {
        Some(complex_rank(m))
    } else {
        None
    }
}

/// Whether the real and complex ranks agree: exactly when the least exponent
/// is 1.
pub fn real_equals_complex(m: &Monomial) -> bool {
    sorted_exps(m)[0] == 1
}

/// A lower bound for the real rank: the complex rank when a0 = 1, the known
/// exact value in two variables, the literature constant 11 for the square
/// of the three-variable product, and strictness (complex rank + 1) for the
/// remaining a0 >= 2 cases.
pub fn real_rank_lower(m: &Monomial) -> u64 {
    let a = sorted_exps(m);
    if a[0] == 1 {
        return complex_rank(m);
    }
    if a == [2, 2, 2] {
        // known sharper bound from the literature, not computed here
        return 11;
    }
    if a.len() == 2 {
        return u64::from(a[0]) + u64::from(a[1]);
    }
    complex_rank(m) + 1
}

/// Everything the rank functions know about one monomial.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RankReport {
    pub monomial: Monomial,
    pub complex_rank: u64,
    pub real_lower: u64,
    pub real_upper: u64,
    pub real_exact: Option<u64>,
    /// true iff the real and complex ranks are equal (least exponent 1)
    pub equality: bool,
    pub method: Method,
}

/// Assembles a [`RankReport`], asserting its internal ordering invariants.
pub fn rank_report(m: &Monomial) -> RankReport {
    let complex_rank = complex_rank(m);
    let real_lower = real_rank_lower(m);
    let (real_upper, method) = real_rank_upper(m);
    let real_exact = real_rank_exact(m);
    assert!(complex_rank <= real_lower && real_lower <= real_upper);
    if let Some(e) = real_exact {
        assert!(real_lower <= e && e <= real_upper);
    }
    RankReport {
        monomial: m.clone(),
        complex_rank,
        real_lower,
        real_upper,
        real_exact,
        equality: real_equals_complex(m),
        method,
    }
}

impl RankReport {
    pub fn to_json(&self) -> Value {
        json!({
            "monomial": monomial_to_string(&self.monomial),
            "complex_rank": self.complex_rank,
            "real_lower": self.real_lower,
            "real_upper": self.real_upper,
            "real_exact": self.real_exact,
            "equality": self.equality,
            "method": self.method.name(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(exps: &[u32]) -> Monomial {
        Monomial::new(exps.to_vec()).unwrap()
    }

    #[test]
    fn complex_rank_examples() {
        assert_eq!(complex_rank(&mono(&[2, 2, 2])), 9);
        assert_eq!(complex_rank(&mono(&[1, 1])), 2);
        assert_eq!(complex_rank(&mono(&[2, 3, 4])), 20);
        assert_eq!(complex_rank(&mono(&[1, 3, 3])), 16);
    }

    #[test]
    fn upper_bound_picks_the_smallest_method() {
        assert_eq!(real_rank_upper(&mono(&[2, 2])), (4, Method::Binary));
        assert_eq!(real_rank_upper(&mono(&[2, 2, 2])), (13, Method::Squares));
        assert_eq!(real_rank_upper(&mono(&[1, 1, 1])), (4, Method::A0Eq1));
        // binary ties the grid at 5 and wins
        assert_eq!(real_rank_upper(&mono(&[2, 3])), (5, Method::Binary));
        assert_eq!(real_rank_upper(&mono(&[2, 3, 4])), (30, Method::GeneralGrid));
        // all-squares bound 40 beats the grid 4*4*4 = 64 at four variables
        assert_eq!(real_rank_upper(&mono(&[2, 2, 2, 2])), (40, Method::Squares));
    }

    #[test]
    fn exact_real_ranks() {
        assert_eq!(real_rank_exact(&mono(&[3, 5])), Some(8));
        assert_eq!(real_rank_exact(&mono(&[1, 3, 3])), Some(16));
        assert_eq!(real_rank_exact(&mono(&[2, 2, 2])), None);
    }

    #[test]
    fn equality_characterization() {
        assert!(real_equals_complex(&mono(&[1, 9])));
        assert!(!real_equals_complex(&mono(&[2, 2])));
        assert!(!real_equals_complex(&mono(&[2, 2, 2])));
    }

    #[test]
    fn lower_bounds() {
        assert_eq!(real_rank_lower(&mono(&[2, 2, 2])), 11);
        assert_eq!(real_rank_lower(&mono(&[2, 3])), 5);
        assert_eq!(real_rank_lower(&mono(&[1, 1, 1])), 4);
        assert_eq!(real_rank_lower(&mono(&[2, 2, 2, 2])), 28);
    }

    #[test]
    fn report_for_the_square_product() {
        let r = rank_report(&mono(&[2, 2, 2]));
        assert_eq!(r.complex_rank, 9);
        assert_eq!(r.real_lower, 11);
        assert_eq!(r.real_upper, 13);
        assert_eq!(r.real_exact, None);
        assert!(!r.equality);
        assert_eq!(r.method, Method::Squares);
        let v = r.to_json();
        assert_eq!(v["complex_rank"], 9);
        assert_eq!(v["real_exact"], Value::Null);
        assert_eq!(v["method"], "squares");
    }

    #[test]
    fn rank_functions_are_permutation_invariant() {
        let a = mono(&[4, 1, 3]);
        let b = mono(&[1, 3, 4]);
        assert_eq!(complex_rank(&a), complex_rank(&b));
        assert_eq!(real_rank_upper(&a), real_rank_upper(&b));
        assert_eq!(real_rank_lower(&a), real_rank_lower(&b));
        assert_eq!(real_rank_exact(&a), real_rank_exact(&b));
    }

    #[test]
    fn report_invariants_hold_on_a_sweep() {
        for exps in [
            vec![1, 1],
            vec![2, 2],
            vec![3, 4],
            vec![1, 2, 3],
            vec![2, 2, 2],
            vec![2, 3, 3],
            vec![4, 4, 4, 4],
        ] {
            let r = rank_report(&mono(&exps));
            assert!(r.complex_rank <= r.real_lower);
            assert!(r.real_lower <= r.real_upper);
            assert!(r.real_upper >= r.complex_rank);
        }
    }
}
