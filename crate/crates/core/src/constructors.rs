//! Explicit apolar point sets and the decompositions they support.
//!
//! Every grid-backed decomposition here is produced by per-axis moment
//! interpolation: for each non-minimal variable the weights solve an
//! (m+1) x m moment system over that axis's value set, and the product of
//! axis weights (divided by one multinomial) gives the coefficient of each
//! grid point. The system is consistent exactly because the value sets are
//! built with the required vanishing elementary symmetric function, and the
//! solution is unique with all weights nonzero, so the promised term count
//! is always achieved.

use crate::apolarity::{Decomposition, DecompositionTerm, PointSet, ProjectivePoint};
use crate::error::Error;
use crate::linalg::{solve_linear, LinearSolution, Matrix};
use crate::poly::Monomial;
use crate::ranks::{real_rank_upper, Method};
use crate::scalar::{factorial, int, Scalar};
use crate::unipoly::elementary_symmetric;

/// The roots of a degree a0+ai univariate polynomial that is real-rooted,
/// squarefree, and missing its degree-ai coefficient (e_{a0} of the roots
/// vanishes).
#[derive(Clone, PartialEq, Debug)]
pub struct GappedRootSet<T: Scalar> {
    a0: u32,
    ai: u32,
    roots: Vec<T>,
}

impl<T: Scalar> GappedRootSet<T> {
    pub fn a0(&self) -> u32 {
        self.a0
    }

    pub fn ai(&self) -> u32 {
        self.ai
    }

    pub fn roots(&self) -> &[T] {
        &self.roots
    }
}

/// The fixed seed sequence 1, 2, -1, 3, -2, 4, -3, ...
fn seed_value<T: Scalar>(j: usize) -> T {
    if j == 0 {
        T::one()
    } else if j % 2 == 1 {
        int((j as i64 + 3) / 2)
    } else {
        int(-(j as i64 / 2))
    }
}

/// Builds a0+ai distinct rationals whose a0-th elementary symmetric function
/// vanishes: the first a0+ai-1 values come from the fixed seed sequence and
/// the last solves the linear condition. If the linear condition degenerates
/// or the solved root collides with a seed value, the largest seed value is
/// bumped by one and the solve retried.
pub fn gapped_roots<T: Scalar>(a0: u32, ai: u32) -> GappedRootSet<T> {
    assert!(a0 >= 1 && a0 <= ai, "need 1 <= a0 <= ai, got ({a0}, {ai})");
    let d = (a0 + ai) as usize;
    let mut seed: Vec<T> = (0..d - 1).map(seed_value).collect();
    for _attempt in 0..10_000 {
        let top = elementary_symmetric(&seed, a0 as usize);
        let next = elementary_symmetric(&seed, a0 as usize - 1);
        if !next.is_zero() {
            let last = -top / next;
            if !seed.contains(&last) {
                let mut roots = seed;
                roots.push(last);
                assert!(
                    elementary_symmetric(&roots, a0 as usize).is_zero(),
                    "gapped root construction lost the vanishing condition"
                );
                return GappedRootSet { a0, ai, roots };
            }
        }
        let largest = (0..seed.len())
            .max_by(|&i, &j| seed[i].partial_cmp(&seed[j]).expect("rationals are ordered"))
            .expect("seed is nonempty");
        seed[largest] = seed[largest].clone() + T::one();
    }
    panic!("gapped root construction did not converge for ({a0}, {ai})");
}

/// Distinct rationals with zero sum: {0, +-1, ..., +-m} for odd counts,
/// {+-1, ..., +-m} for even counts.
fn symmetric_values<T: Scalar>(count: usize) -> Vec<T> {
    assert!(count >= 1);
    let mut values = Vec::with_capacity(count);
    if count % 2 == 1 {
        values.push(T::zero());
    }
    let mut k = 1i64;
    while values.len() < count {
        values.push(int(k));
        values.push(int(-k));
        k += 1;
    }
    values
}

/// d! / (parts_0! * ... * parts_n!), computed in T.
fn multinomial<T: Scalar>(d: u32, parts: &[u32]) -> T {
    assert_eq!(parts.iter().sum::<u32>(), d);
    let mut result: T = factorial(d);
    for &p in parts {
        result = result / factorial::<T>(p);
    }
    result
}

/// Solves the per-axis moment system: weights w over `values` with
/// sum w_j values_j^k = 0 for k in 0..=len except `target`, and = 1 at
/// k = target. Consistency is exactly the vanishing-e condition the value
/// sets are built with, so failure here is a defect, not an input error.
fn axis_weights<T: Scalar>(values: &[T], target: u32) -> Vec<T> {
    let m = values.len();
    assert!((target as usize) < m + 1);
    let mut a = Matrix::zero(m + 1, m);
    let mut b = vec![T::zero(); m + 1];
    for j in 0..m {
        let mut power = T::one();
        for k in 0..=m {
            a.set(k, j, power.clone());
            if k < m {
                power = power * values[j].clone();
            }
        }
    }
    b[target as usize] = T::one();
    match solve_linear(&a, &b) {
        LinearSolution::Solution { values: w, nullity } => {
            assert_eq!(nullity, 0, "moment system must be determined");
            assert!(
                w.iter().all(|c| !c.is_zero()),
                "moment weights must all be nonzero"
            );
            w
        }
        LinearSolution::Inconsistent => {
            panic!("moment system inconsistent: value set lacks the vanishing condition")
        }
    }
}

/// Exponents sorted non-decreasing plus the permutation back to the
/// monomial's own variable order (position k of the sorted vector came from
/// original variable perm[k]).
fn canonical_axes(m: &Monomial) -> (Vec<u32>, Vec<usize>) {
    m.canonical()
}

/// All tuples over the given per-axis index ranges, first axis slowest.
fn cartesian_indices(sizes: &[usize]) -> Vec<Vec<usize>> {
    let total: usize = sizes.iter().product();
    let mut tuples = Vec::with_capacity(total);
    let mut current = vec![0usize; sizes.len()];
    loop {
        tuples.push(current.clone());
        let mut axis = sizes.len();
        loop {
            if axis == 0 {
                return tuples;
            }
            axis -= 1;
            current[axis] += 1;
            if current[axis] < sizes[axis] {
                break;
            }
            current[axis] = 0;
        }
    }
}

/// Coordinates in sorted-axis order back to the monomial's variable order.
fn unpermute<T: Scalar>(sorted_coords: &[T], perm: &[usize]) -> Vec<T> {
    let mut out = vec![T::zero(); sorted_coords.len()];
    for (k, c) in sorted_coords.iter().enumerate() {
        out[perm[k]] = c.clone();
    }
    out
}

fn grid_points<T: Scalar>(m: &Monomial, value_sets: &[Vec<T>]) -> PointSet<T> {
    let (_, perm) = canonical_axes(m);
    let sizes: Vec<usize> = value_sets.iter().map(Vec::len).collect();
    let mut points = Vec::new();
    for tuple in cartesian_indices(&sizes) {
        let mut sorted_coords = vec![T::one()];
        for (axis, &j) in tuple.iter().enumerate() {
            sorted_coords.push(value_sets[axis][j].clone());
        }
        points.push(
            ProjectivePoint::new(unpermute(&sorted_coords, &perm))
                .expect("grid point has a unit coordinate"),
        );
    }
    PointSet::new(points).expect("grid points are pairwise distinct")
}

/// The structured grid decomposition: per-axis weights, coefficients by
/// product, coordinates restored to the monomial's variable order, terms in
/// the canonical point order.
fn grid_decomposition<T: Scalar>(m: &Monomial, value_sets: &[Vec<T>]) -> Decomposition<T> {
    let (a, perm) = canonical_axes(m);
    let d = m.degree();
    let weights: Vec<Vec<T>> =
        value_sets.iter().zip(&a[1..]).map(|(v, &ai)| axis_weights(v, ai)).collect();
    let denom: T = multinomial(d, &a);
    let sizes: Vec<usize> = value_sets.iter().map(Vec::len).collect();
    let mut terms = Vec::new();
    for tuple in cartesian_indices(&sizes) {
        let mut sorted_coords = vec![T::one()];
        let mut c = T::one() / denom.clone();
        for (axis, &j) in tuple.iter().enumerate() {
            sorted_coords.push(value_sets[axis][j].clone());
            c = c * weights[axis][j].clone();
        }
        let coords = unpermute(&sorted_coords, &perm);
        let point = ProjectivePoint::new(coords.clone()).expect("grid point has a unit coordinate");
        // the point canonicalizes its coordinates by the first nonzero entry
        // s; compensate with s^d so the term's value is unchanged
        let s = coords.iter().find(|x| !x.is_zero()).expect("unit coordinate").clone();
        let mut scale = T::one();
        for _ in 0..d {
            scale = scale * s.clone();
        }
        terms.push(DecompositionTerm { coeff: c * scale, form: point.as_linear_form() });
    }
    terms.sort_by(|x, y| {
        x.form
            .coeffs()
            .partial_cmp(y.form.coeffs())
            .expect("rationals are ordered")
    });
    Decomposition::new(m.clone(), terms).expect("grid weights are nonzero")
}

fn gapped_value_sets<T: Scalar>(a: &[u32]) -> Vec<Vec<T>> {
    a[1..].iter().map(|&ai| gapped_roots::<T>(a[0], ai).roots).collect()
}

fn symmetric_value_sets<T: Scalar>(a: &[u32]) -> Vec<Vec<T>> {
    a[1..].iter().map(|&ai| symmetric_values(ai as usize + 1)).collect()
}

/// The product grid of prod_{i>=1} (a0+ai) points [1 : p_1 : ... : p_n]
/// (indices in sorted-exponent order, coordinates returned in the monomial's
/// own variable order), each axis drawing from [`gapped_roots`].
pub fn upper_bound_points<T: Scalar>(m: &Monomial) -> PointSet<T> {
    let (a, _) = canonical_axes(m);
    grid_points(m, &gapped_value_sets::<T>(&a))
}

/// The minimal grid for least exponent 1: prod_{i>=1} (ai+1) points whose
/// axis values are distinct and sum to zero.
pub fn min_points_a0_eq_1<T: Scalar>(m: &Monomial) -> Result<PointSet<T>, Error> {
    let (a, _) = canonical_axes(m);
    if a[0] != 1 {
        return Err(Error::Precondition(format!(
            "least exponent must be 1, got {}",
            a[0]
        )));
    }
    Ok(grid_points(m, &symmetric_value_sets::<T>(&a)))
}

/// Like [`min_points_a0_eq_1`] but with caller-chosen axis value sets, one
/// per non-minimal variable in sorted-exponent order; each must hold ai+1
/// distinct values summing to zero.
pub fn min_points_a0_eq_1_with_values<T: Scalar>(
    m: &Monomial,
    value_sets: &[Vec<T>],
) -> Result<PointSet<T>, Error> {
    let (a, _) = canonical_axes(m);
    if a[0] != 1 {
        return Err(Error::Precondition(format!(
            "least exponent must be 1, got {}",
            a[0]
        )));
    }
    validate_value_sets(&a, value_sets)?;
    Ok(grid_points(m, value_sets))
}

fn validate_value_sets<T: Scalar>(a: &[u32], value_sets: &[Vec<T>]) -> Result<(), Error> {
    if value_sets.len() != a.len() - 1 {
        return Err(Error::Invalid(format!(
            "need {} value sets, got {}",
            a.len() - 1,
            value_sets.len()
        )));
    }
    for (v, &ai) in value_sets.iter().zip(&a[1..]) {
        if v.len() != ai as usize + 1 {
            return Err(Error::Invalid(format!(
                "axis with exponent {ai} needs {} values, got {}",
                ai + 1,
                v.len()
            )));
        }
        for (i, x) in v.iter().enumerate() {
            if v[..i].contains(x) {
                return Err(Error::Invalid("axis values must be distinct".into()));
            }
        }
        let sum = v.iter().cloned().fold(T::zero(), |s, x| s + x);
        if !sum.is_zero() {
            return Err(Error::Invalid("axis values must sum to zero".into()));
        }
    }
    Ok(())
}

/// The closed-form decomposition of x_0^2 ... x_n^2 into (3^(n+1)-1)/2
/// powers: one term per sign vector in {0,+-1}^(n+1) with first nonzero
/// entry 1, with coefficient (-2)^(n+1-z) * 2/(2n+2)! where z counts the
/// nonzero entries. Verified by expansion before returning.
pub fn squares_decomposition<T: Scalar>(n: usize) -> Decomposition<T> {
    assert!(n >= 1);
    let nvars = n + 1;
    let target = Monomial::new(vec![2; nvars]).expect("valid all-squares monomial");
    let d = 2 * (n as u32 + 1);
    let base: T = int::<T>(2) / factorial::<T>(d);
    let mut terms = Vec::new();
    let mut vector = vec![0i8; nvars];
    loop {
        if let Some(first) = vector.iter().position(|&v| v != 0) {
            if vector[first] == 1 {
                let nonzero = vector.iter().filter(|&&v| v != 0).count();
                let mut coeff = base.clone();
                for _ in 0..(nvars - nonzero) {
                    coeff = coeff * int::<T>(-2);
                }
                let coords: Vec<T> = vector.iter().map(|&v| int(i64::from(v))).collect();
                let point = ProjectivePoint::new(coords).expect("nonzero sign vector");
                terms.push(DecompositionTerm { coeff, form: point.as_linear_form() });
            }
        }
        // next vector over {0, 1, -1} in a fixed odometer order
        let mut axis = nvars;
        loop {
            if axis == 0 {
                terms.sort_by(|x, y| {
                    x.form
                        .coeffs()
                        .partial_cmp(y.form.coeffs())
                        .expect("rationals are ordered")
                });
                let dec = Decomposition::new(target, terms).expect("coefficients are nonzero");
                assert!(dec.verify(), "all-squares identity failed to expand");
                return dec;
            }
            axis -= 1;
            vector[axis] = match vector[axis] {
                0 => 1,
                1 => -1,
                _ => {
                    vector[axis] = 0;
                    continue;
                }
            };
            break;
        }
    }
}

/// Builds a verified real power-sum decomposition of the monomial, using the
/// smallest applicable constructor: the full binary interpolation in two
/// variables, the minimal symmetric grid when the least exponent is 1, the
/// all-squares closed form when it beats the grid, and the gapped product
/// grid otherwise. The result always reaches the promised size.
pub fn decompose_real<T: Scalar>(m: &Monomial) -> Decomposition<T> {
    let (promised, method) = real_rank_upper(m);
    let (a, _) = canonical_axes(m);
    let dec = match method {
        Method::Binary | Method::GeneralGrid => grid_decomposition(m, &gapped_value_sets::<T>(&a)),
        Method::A0Eq1 => grid_decomposition(m, &symmetric_value_sets::<T>(&a)),
        Method::Squares => squares_decomposition(m.nvars() - 1),
    };
    assert_eq!(dec.size() as u64, promised, "decomposition missed its promised size");
    assert!(dec.verify(), "constructed decomposition failed verification");
    dec
}
