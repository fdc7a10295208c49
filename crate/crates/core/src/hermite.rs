//! Finite quotient algebras for gap-shaped complete intersections, their
//! trace bilinear forms, and exact real/complex solution counts.
//!
//! A gap system consists of generators G_i = X_i^(a_i+1) + F_i with
//! deg F_i <= a_i - gap. The pure powers are pairwise coprime leading terms
//! under any degree-compatible order, so reduction is a plain terminating
//! rewrite and no Groebner machinery is needed: the quotient algebra has the
//! monomials below the pure powers as a basis, of dimension prod (a_i+1).

use std::collections::HashMap;
use std::sync::Mutex;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Error;
use crate::linalg::{Matrix, SymmetricMatrix};
use crate::poly::{ExpVec, Polynomial};
use crate::scalar::Scalar;
use crate::Q;

/// Generators X_i^(a_i+1) + F_i with deg F_i <= a_i - gap. Variables are
/// X_1..X_n, stored at indices 0..n-1. The engine accepts any gap >= 0; the
/// obstruction check requires gap >= 2.
#[derive(Clone, PartialEq, Debug)]
pub struct GapSystem<T: Scalar> {
    exps: Vec<u32>,
    gap: u32,
    tails: Vec<Polynomial<T>>,
}

impl<T: Scalar> GapSystem<T> {
    /// `exps` holds a_1..a_n (each >= 1); `tails` the F_i as polynomials in
    /// n variables; each nonzero F_i must have total degree <= a_i - gap.
    pub fn new(exps: Vec<u32>, gap: u32, tails: Vec<Polynomial<T>>) -> Result<Self, Error> {
        let n = exps.len();
        if n == 0 {
            return Err(Error::Invalid("gap system needs at least one variable".into()));
        }
        if exps.iter().any(|&a| a == 0) {
            return Err(Error::Invalid("exponents a_i must be at least 1".into()));
        }
        if tails.len() != n {
            return Err(Error::Invalid(format!(
                "{n} exponents but {} tail polynomials",
                tails.len()
            )));
        }
        for (i, f) in tails.iter().enumerate() {
            if f.nvars() != n {
                return Err(Error::Invalid(format!(
                    "tail {} has {} variables, system has {n}",
                    i + 1,
                    f.nvars()
                )));
            }
            if let Some(deg) = f.total_degree() {
                if exps[i] < gap || deg > exps[i] - gap {
                    return Err(Error::Invalid(format!(
                        "tail of generator {} has degree {deg}, limit is a_{} - gap = {} - {gap}",
                        i + 1,
                        i + 1,
                        exps[i]
                    )));
                }
            }
        }
        Ok(GapSystem { exps, gap, tails })
    }

    /// Splits full generators into pure power plus tail: each gens[i] must
    /// contain X_(i+1)^(a_i+1) with coefficient exactly 1.
    pub fn from_generators(
        gens: &[Polynomial<T>],
        exps: &[u32],
        gap: u32,
    ) -> Result<Self, Error> {
        let n = exps.len();
        if gens.len() != n {
            return Err(Error::Invalid(format!(
                "{n} exponents but {} generators",
                gens.len()
            )));
        }
        let mut tails = Vec::with_capacity(n);
        for (i, g) in gens.iter().enumerate() {
            if g.nvars() != n {
                return Err(Error::Invalid(format!(
                    "generator {} has {} variables, system has {n}",
                    i + 1,
                    g.nvars()
                )));
            }
            let mut lead = vec![0u32; n];
            lead[i] = exps[i] + 1;
            if g.coeff(&lead) != T::one() {
                return Err(Error::Invalid(format!(
                    "generator {} must contain X{}^{} with coefficient 1",
                    i + 1,
                    i + 1,
                    exps[i] + 1
                )));
            }
            let pure = Polynomial::from_terms(n, [(lead, T::one())]);
            tails.push(g - &pure);
        }
        GapSystem::new(exps.to_vec(), gap, tails)
    }

    pub fn n(&self) -> usize {
        self.exps.len()
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn gap(&self) -> u32 {
        self.gap
    }

    pub fn tails(&self) -> &[Polynomial<T>] {
        &self.tails
    }

    /// The full generator X_(i+1)^(a_i+1) + F_i (index i is 0-based).
    pub fn generator(&self, i: usize) -> Polynomial<T> {
        let mut lead = vec![0u32; self.n()];
        lead[i] = self.exps[i] + 1;
        &Polynomial::from_terms(self.n(), [(lead, T::one())]) + &self.tails[i]
    }

    /// prod (a_i+1), the vector-space dimension of the quotient.
    pub fn dimension(&self) -> usize {
        self.exps.iter().map(|&a| a as usize + 1).product()
    }
}

/// The quotient algebra of a gap system, with the below-the-powers monomial
/// basis in graded-lex order and memoized normal forms.
pub struct QuotientAlgebra<T: Scalar> {
    system: GapSystem<T>,
    basis: Vec<ExpVec>,
    index: HashMap<ExpVec, usize>,
    nf_memo: Mutex<HashMap<ExpVec, Polynomial<T>>>,
    trace_memo: Mutex<HashMap<ExpVec, T>>,
}

impl<T: Scalar> QuotientAlgebra<T> {
    pub fn new(system: GapSystem<T>) -> Self {
        let mut basis = Vec::with_capacity(system.dimension());
        let mut current = vec![0u32; system.n()];
        'enumerate: loop {
            basis.push(ExpVec::new(current.clone()));
            let mut axis = system.n();
            loop {
                if axis == 0 {
                    break 'enumerate;
                }
                axis -= 1;
                current[axis] += 1;
                if current[axis] <= system.exps()[axis] {
                    break;
                }
                current[axis] = 0;
            }
        }
        basis.sort();
        assert_eq!(basis.len(), system.dimension());
        let index = basis.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        QuotientAlgebra {
            system,
            basis,
            index,
            nf_memo: Mutex::new(HashMap::new()),
            trace_memo: Mutex::new(HashMap::new()),
        }
    }

    pub fn system(&self) -> &GapSystem<T> {
        &self.system
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Basis exponent vectors in graded-lex order.
    pub fn basis(&self) -> &[ExpVec] {
        &self.basis
    }

    fn basis_poly(&self, i: usize) -> Polynomial<T> {
        Polynomial::from_terms(self.system.n(), [(self.basis[i].as_slice().to_vec(), T::one())])
    }

    fn nf_monomial(&self, e: &ExpVec) -> Polynomial<T> {
        if let Some(hit) = self.nf_memo.lock().unwrap().get(e) {
            return hit.clone();
        }
        let n = self.system.n();
        let exps = e.as_slice();
        let result = match (0..n).find(|&i| exps[i] > self.system.exps()[i]) {
            None => Polynomial::from_terms(n, [(exps.to_vec(), T::one())]),
            Some(i) => {
                // X^e = X_(i+1)^(a_i+1) * X^rest == -F_i * X^rest; every term
                // of the product drops in total degree by at least gap+1, so
                // the recursion terminates
                let mut rest = exps.to_vec();
                rest[i] -= self.system.exps()[i] + 1;
                let shifted =
                    &self.system.tails()[i] * &Polynomial::from_terms(n, [(rest, T::one())]);
                let mut acc = Polynomial::zero(n);
                for (k, c) in shifted.terms() {
                    let reduced = self.nf_monomial(k).scale(c);
                    acc = &acc - &reduced;
                }
                acc
            }
        };
        self.nf_memo.lock().unwrap().insert(e.clone(), result.clone());
        result
    }

    /// The unique representative supported on the monomial basis.
    pub fn normal_form(&self, f: &Polynomial<T>) -> Polynomial<T> {
        assert_eq!(f.nvars(), self.system.n(), "polynomial lives in the wrong ring");
        let mut acc = Polynomial::zero(self.system.n());
        for (k, c) in f.terms() {
            acc = &acc + &self.nf_monomial(k).scale(c);
        }
        acc
    }

    /// The matrix of multiplication by f in the monomial basis: column c is
    /// the normal form of f * basis[c] expanded over the basis.
    pub fn mult_matrix(&self, f: &Polynomial<T>) -> Matrix<T> {
        let dim = self.dim();
        let nf_f = self.normal_form(f);
        let mut m = Matrix::zero(dim, dim);
        for c in 0..dim {
            let product = &nf_f * &self.basis_poly(c);
            let col = self.normal_form(&product);
            for (k, v) in col.terms() {
                let r = *self.index.get(k).expect("normal form stays inside the basis");
                m.set(r, c, v.clone());
            }
        }
        m
    }

    /// Trace of multiplication by the monomial X^e.
    fn trace_of_monomial(&self, e: &ExpVec) -> T {
        if let Some(hit) = self.trace_memo.lock().unwrap().get(e) {
            return hit.clone();
        }
        let mut trace = T::zero();
        for b in &self.basis {
            let product = e.plus(b);
            trace = trace + self.nf_monomial(&product).coeff(b.as_slice());
        }
        self.trace_memo.lock().unwrap().insert(e.clone(), trace.clone());
        trace
    }

    /// The trace bilinear form: entry (i, j) is the trace of multiplication
    /// by X^(basis_i + basis_j).
    pub fn trace_form(&self) -> SymmetricMatrix<T> {
        let dim = self.dim();
        let mut m = Matrix::zero(dim, dim);
        for i in 0..dim {
            for j in i..dim {
                let t = self.trace_of_monomial(&self.basis[i].plus(&self.basis[j]));
                m.set(i, j, t.clone());
                m.set(j, i, t);
            }
        }
        SymmetricMatrix::new(m)
    }
}

/// The inertia of a symmetric matrix: counts of positive, negative, and zero
/// eigenvalues.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Inertia {
    pub plus: usize,
    pub minus: usize,
    pub zero: usize,
}

fn descartes_positive_roots<T: Scalar>(coeffs: &[T]) -> usize {
    let mut variations = 0;
    let mut last_negative: Option<bool> = None;
    for c in coeffs.iter().filter(|c| !c.is_zero()) {
        let negative = c.is_negative();
        if last_negative.is_some_and(|l| l != negative) {
            variations += 1;
        }
        last_negative = Some(negative);
    }
    variations
}

/// Exact inertia of a symmetric rational matrix: the characteristic
/// polynomial has only real roots, so Descartes' rule of signs counts the
/// positive eigenvalues exactly, and the rank supplies the zero count.
///
/// Inertia is invariant under scaling by a positive constant, so the matrix
/// is first multiplied by a common denominator of its entries: the sign
/// pattern of the characteristic polynomial and the rank are unchanged, and
/// the recurrence then runs on denominator-free values.
pub fn signature<T: Scalar>(b: &SymmetricMatrix<T>) -> Inertia {
    let dim = b.dim();
    let entries: Vec<T> = (0..dim)
        .flat_map(|r| (0..dim).map(move |c| b.get(r, c).clone()))
        .collect();
    let scale = T::common_denominator(&entries);
    let mut m = Matrix::zero(dim, dim);
    for r in 0..dim {
        for c in 0..dim {
            m.set(r, c, b.get(r, c).clone() * scale.clone());
        }
    }
    let charpoly = m.charpoly();
    let plus = descartes_positive_roots(charpoly.coeffs());
    let rank = m.rank();
    assert!(plus <= rank, "positive count cannot exceed the rank");
    let minus = rank - plus;
    // cross-check: Descartes on p(-t) must see the same negative count
    let reflected: Vec<T> = charpoly
        .coeffs()
        .iter()
        .enumerate()
        .map(|(k, c)| if k % 2 == 1 { -c.clone() } else { c.clone() })
        .collect();
    assert_eq!(
        descartes_positive_roots(&reflected),
        minus,
        "inertia cross-check failed"
    );
    Inertia { plus, minus, zero: dim - rank }
}

/// Hermite counts for a gap system: (number of real points, number of
/// distinct complex points) of its zero set. For non-radical systems the
/// counts are of the distinct points of the support.
pub fn count_real_points<T: Scalar>(sys: &GapSystem<T>) -> (usize, usize) {
    counts_of(&QuotientAlgebra::new(sys.clone()))
}

fn counts_of<T: Scalar>(algebra: &QuotientAlgebra<T>) -> (usize, usize) {
    let inertia = signature(&algebra.trace_form());
    (inertia.plus - inertia.minus, inertia.plus + inertia.minus)
}

/// Verifies the gap obstruction on a system with gap >= 2: the trace of
/// multiplication by X1^2 vanishes (so the trace form cannot be definite)
/// and the system has strictly fewer than prod (a_i+1) real solutions.
/// Both facts are theorems for this shape, so a failure is reported as an
/// internal defect rather than a result.
pub fn check_gap_obstruction<T: Scalar>(sys: &GapSystem<T>) -> Result<bool, Error> {
    if sys.gap() < 2 {
        return Err(Error::Precondition(format!(
            "gap obstruction needs gap >= 2, got {}",
            sys.gap()
        )));
    }
    if let Some(&low) = sys.exps().iter().find(|&&a| a < sys.gap()) {
        return Err(Error::Precondition(format!(
            "gap obstruction needs gap <= every exponent, got exponent {low} below gap {}",
            sys.gap()
        )));
    }
    let algebra = QuotientAlgebra::new(sys.clone());
    let mut x1_squared = vec![0u32; sys.n()];
    x1_squared[0] = 2;
    let diag_trace = algebra.trace_of_monomial(&ExpVec::new(x1_squared));
    if !diag_trace.is_zero() {
        return Err(Error::InternalDefect(format!(
            "trace of multiplication by X1^2 should vanish, got {diag_trace}"
        )));
    }
    let (real, _) = counts_of(&algebra);
    if real >= sys.dimension() {
        return Err(Error::InternalDefect(format!(
            "gap system claims {real} real points with dimension {}",
            sys.dimension()
        )));
    }
    Ok(true)
}

/// Deterministic pseudo-random gap systems for stress tests: n in 1..=3,
/// gap in 2..=3, a_i in gap..=3, tail coefficients with numerators in
/// [-5, 5] and denominators in 1..=3.
pub fn random_gap_systems(seed: u64, count: usize) -> Vec<GapSystem<Q>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut systems = Vec::with_capacity(count);
    while systems.len() < count {
        let n = rng.gen_range(1..=3usize);
        let gap = rng.gen_range(2..=3u32);
        let exps: Vec<u32> = (0..n).map(|_| rng.gen_range(gap..=3)).collect();
        let mut tails = Vec::with_capacity(n);
        for &a in &exps {
            let bound = a - gap;
            let mut tail = Polynomial::zero(n);
            for mono in monomials_up_to_degree(n, bound) {
                let num = rng.gen_range(-5i64..=5);
                let den = rng.gen_range(1i64..=3);
                if num != 0 {
                    tail.add_term(mono.clone(), Q::new(num.into(), den.into()));
                }
            }
            tails.push(tail);
        }
        systems.push(GapSystem::new(exps, gap, tails).expect("generated system is valid"));
    }
    systems
}

fn monomials_up_to_degree(n: usize, bound: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![0u32; n]];
    for _ in 0..bound {
        let mut next = Vec::new();
        for m in &out {
            for i in 0..n {
                let mut bumped = m.clone();
                bumped[i] += 1;
                if !next.contains(&bumped) {
                    next.push(bumped);
                }
            }
        }
        for b in next {
            if !out.contains(&b) {
                out.push(b);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;
    use crate::text::{parse_poly, VarStyle};
    use num_traits::Zero;

    fn q(n: i64) -> Q {
        int(n)
    }

    fn sys_poly(text: &str, n: usize) -> Polynomial<Q> {
        parse_poly(text, VarStyle::UPPER1, Some(n)).unwrap()
    }

    fn univariate(gen_tail: &str, a: u32, gap: u32) -> GapSystem<Q> {
        GapSystem::new(vec![a], gap, vec![sys_poly(gen_tail, 1)]).unwrap()
    }

    #[test]
    fn constructor_enforces_degree_bounds() {
        // X1^3 - X1 claimed as a gap-2 system: tail degree 1 > a_1 - gap = 0
        let err = GapSystem::new(vec![2], 2, vec![sys_poly("-X1", 1)]);
        assert!(matches!(err, Err(Error::Invalid(_))));
        // the same tail is fine at gap 1
        assert!(GapSystem::new(vec![2], 1, vec![sys_poly("-X1", 1)]).is_ok());
    }

    #[test]
    fn from_generators_splits_tails() {
        let gens = [sys_poly("X1^3 + 1", 2), sys_poly("X2^3 + 2", 2)];
        let sys = GapSystem::from_generators(&gens, &[2, 2], 2).unwrap();
        assert_eq!(sys.tails()[0], sys_poly("1", 2));
        assert_eq!(sys.tails()[1], sys_poly("2", 2));
        assert_eq!(sys.generator(0), gens[0]);
        assert_eq!(sys.dimension(), 9);

        let missing_power = [sys_poly("X1^2 + 1", 1)];
        assert!(GapSystem::from_generators(&missing_power, &[2], 2).is_err());
        let non_monic = [sys_poly("2*X1^3 + 1", 1)];
        assert!(GapSystem::from_generators(&non_monic, &[2], 2).is_err());
    }

    #[test]
    fn normal_form_rewrites() {
        let alg = QuotientAlgebra::new(univariate("1", 2, 2)); // X1^3 + 1
        assert_eq!(alg.normal_form(&sys_poly("X1^3", 1)), sys_poly("-1", 1));
        assert_eq!(alg.normal_form(&sys_poly("X1^4", 1)), sys_poly("-X1", 1));

        let alg = QuotientAlgebra::new(univariate("-X1", 2, 1)); // X1^3 - X1
        assert_eq!(alg.normal_form(&sys_poly("X1^5", 1)), sys_poly("X1", 1));
    }

    #[test]
    fn normal_form_is_idempotent_and_basis_supported() {
        let sys = GapSystem::new(
            vec![3, 3],
            2,
            vec![sys_poly("1 - X2", 2), sys_poly("X1 + 1/2", 2)],
        )
        .unwrap();
        let alg = QuotientAlgebra::new(sys);
        let f = sys_poly("X1^5*X2^2 + 3*X1*X2^4 - 2", 2);
        let nf = alg.normal_form(&f);
        assert_eq!(alg.normal_form(&nf), nf);
        for (k, _) in nf.terms() {
            assert!(alg.basis().contains(k));
        }
    }

    #[test]
    fn basis_is_graded_lex_and_complete() {
        let sys =
            GapSystem::new(vec![1, 2], 1, vec![Polynomial::<Q>::zero(2), Polynomial::zero(2)])
                .unwrap();
        let alg = QuotientAlgebra::new(sys);
        let listed: Vec<&[u32]> = alg.basis().iter().map(ExpVec::as_slice).collect();
        assert_eq!(
            listed,
            vec![
                &[0, 0][..],
                &[0, 1],
                &[1, 0],
                &[0, 2],
                &[1, 1],
                &[1, 2]
            ]
        );
    }

    #[test]
    fn mult_matrix_examples() {
        // unit of the algebra
        let alg = QuotientAlgebra::new(univariate("1", 2, 2));
        assert_eq!(alg.mult_matrix(&sys_poly("1", 1)), Matrix::identity(3));

        // G1 = X1^2 - 1 in basis (1, X1): swap matrix
        let alg = QuotientAlgebra::new(univariate("-1", 1, 1));
        let m = alg.mult_matrix(&sys_poly("X1", 1));
        assert_eq!(m, Matrix::from_rows(vec![vec![q(0), q(1)], vec![q(1), q(0)]]));
    }

    #[test]
    fn squared_variable_has_zero_diagonal_in_gap_systems() {
        let sys = GapSystem::new(
            vec![3, 3],
            2,
            vec![sys_poly("X2 - 1", 2), sys_poly("1/3*X1 + 2", 2)],
        )
        .unwrap();
        let alg = QuotientAlgebra::new(sys);
        let m = alg.mult_matrix(&sys_poly("X1^2", 2));
        for i in 0..alg.dim() {
            assert!(m.get(i, i).is_zero(), "diagonal entry {i} is nonzero");
        }
    }

    #[test]
    fn trace_form_frozen_examples() {
        let alg = QuotientAlgebra::new(univariate("-1", 1, 1)); // X1^2 - 1
        let b = alg.trace_form();
        assert_eq!(b.as_matrix(), &Matrix::from_rows(vec![vec![q(2), q(0)], vec![q(0), q(2)]]));

        let alg = QuotientAlgebra::new(univariate("1", 1, 1)); // X1^2 + 1
        let b = alg.trace_form();
        assert_eq!(b.as_matrix(), &Matrix::from_rows(vec![vec![q(2), q(0)], vec![q(0), q(-2)]]));
    }

    #[test]
    fn signature_examples() {
        let id = SymmetricMatrix::new(Matrix::<Q>::identity(3));
        assert_eq!(signature(&id), Inertia { plus: 3, minus: 0, zero: 0 });

        let diag = SymmetricMatrix::new(Matrix::from_rows(vec![
            vec![q(2), q(0)],
            vec![q(0), q(-2)],
        ]));
        assert_eq!(signature(&diag), Inertia { plus: 1, minus: 1, zero: 0 });

        let rank_one = SymmetricMatrix::new(Matrix::from_rows(vec![
            vec![q(1), q(1)],
            vec![q(1), q(1)],
        ]));
        assert_eq!(signature(&rank_one), Inertia { plus: 1, minus: 0, zero: 1 });
    }

    #[test]
    fn three_real_roots_give_positive_definite_form() {
        // X1^3 - X1 has roots -1, 0, 1
        let sys = univariate("-X1", 2, 1);
        let alg = QuotientAlgebra::new(sys.clone());
        let inertia = signature(&alg.trace_form());
        assert_eq!(inertia, Inertia { plus: 3, minus: 0, zero: 0 });
        assert_eq!(count_real_points(&sys), (3, 3));
    }

    #[test]
    fn count_examples() {
        assert_eq!(count_real_points(&univariate("1", 1, 1)), (0, 2)); // X1^2 + 1
        let pair = GapSystem::new(
            vec![2, 2],
            2,
            vec![sys_poly("1", 2), sys_poly("2", 2)],
        )
        .unwrap();
        assert_eq!(count_real_points(&pair), (1, 9));
    }

    #[test]
    fn obstruction_examples() {
        let cubes = GapSystem::new(
            vec![2, 2],
            2,
            vec![sys_poly("1", 2), sys_poly("1", 2)],
        )
        .unwrap();
        assert_eq!(check_gap_obstruction(&cubes), Ok(true));

        let quartics = GapSystem::new(
            vec![3, 3],
            2,
            vec![sys_poly("X1", 2), sys_poly("1", 2)],
        )
        .unwrap();
        assert_eq!(check_gap_obstruction(&quartics), Ok(true));
        assert_eq!(count_real_points(&quartics), (0, 16));

        let low_gap = univariate("-X1", 2, 1);
        assert!(matches!(check_gap_obstruction(&low_gap), Err(Error::Precondition(_))));
    }

    #[test]
    fn multiplication_is_a_homomorphism() {
        let sys = GapSystem::new(
            vec![2, 2],
            2,
            vec![sys_poly("1/2", 2), sys_poly("-3", 2)],
        )
        .unwrap();
        let alg = QuotientAlgebra::new(sys);
        let f = sys_poly("X1 + 2*X2", 2);
        let g = sys_poly("X1*X2 - 1", 2);
        let product = alg.mult_matrix(&(&f * &g));
        assert_eq!(product, alg.mult_matrix(&f).matmul(&alg.mult_matrix(&g)));
    }

    #[test]
    fn random_systems_are_reproducible() {
        let a = random_gap_systems(7, 5);
        let b = random_gap_systems(7, 5);
        assert_eq!(a, b);
        assert_eq!(a.len(), 5);
        for sys in &a {
            assert!(sys.gap() >= 2);
            assert!(sys.exps().iter().all(|&e| e >= sys.gap() && e <= 3));
        }
        assert_ne!(random_gap_systems(8, 5), a);
    }
}
