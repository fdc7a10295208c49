//! Apolarity: the dual ring acts on forms by differentiation, and power-sum
//! decompositions supported on a finite point set are found by exact linear
//! solving against the coefficients of the target.

use std::cmp::Ordering;
use std::str::FromStr;

use serde_json::{json, Value};

use crate::error::Error;
use crate::linalg::{solve_linear, LinearSolution, Matrix};
use crate::poly::{apply_diff, LinearForm, Monomial, Polynomial};
use crate::scalar::Scalar;
use crate::text::{monomial_to_string, parse_monomial};

/// Membership of a dual polynomial in the apolar ideal of the monomial:
/// true exactly when applying `op` as a differential operator kills `m`.
pub fn perp_membership<T: Scalar>(m: &Monomial, op: &Polynomial<T>) -> bool {
    apply_diff(op, &m.as_polynomial()).is_zero()
}

/// A point of projective space with exact coordinates, scaled so that the
/// first nonzero coordinate is one.
#[derive(Clone, PartialEq, Debug)]
pub struct ProjectivePoint<T: Scalar> {
    coords: Vec<T>,
}

impl<T: Scalar> ProjectivePoint<T> {
    /// Canonicalizes the representative; at least one coordinate must be
    /// nonzero.
    pub fn new(coords: Vec<T>) -> Result<Self, Error> {
        let Some(first) = coords.iter().find(|c| !c.is_zero()) else {
            return Err(Error::Invalid("projective point must be nonzero".into()));
        };
        let s = first.clone();
        Ok(ProjectivePoint {
            coords: coords.into_iter().map(|c| c / s.clone()).collect(),
        })
    }

    pub fn nvars(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[T] {
        &self.coords
    }

    /// The linear form with these coordinates as coefficients.
    pub fn as_linear_form(&self) -> LinearForm<T> {
        LinearForm::new(self.coords.clone()).expect("point is nonzero")
    }

    fn cmp_coords(&self, other: &Self) -> Ordering {
        for (a, b) in self.coords.iter().zip(&other.coords) {
            match a.partial_cmp(b) {
                Some(Ordering::Equal) => continue,
                Some(ord) => return ord,
                None => panic!("scalar comparison failed"),
            }
        }
        self.coords.len().cmp(&other.coords.len())
    }
}

/// A finite set of distinct projective points, kept sorted by coordinates so
/// iteration order is canonical regardless of insertion order.
#[derive(Clone, PartialEq, Debug)]
pub struct PointSet<T: Scalar> {
    points: Vec<ProjectivePoint<T>>,
}

impl<T: Scalar> PointSet<T> {
    /// Sorts and rejects duplicates (after canonicalization).
    pub fn new(points: Vec<ProjectivePoint<T>>) -> Result<Self, Error> {
        let nvars = points.first().map(ProjectivePoint::nvars);
        if points.iter().any(|p| Some(p.nvars()) != nvars) {
            return Err(Error::Invalid("points live in different spaces".into()));
        }
        let mut points = points;
        points.sort_by(|a, b| a.cmp_coords(b));
        if points.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Invalid("duplicate point in point set".into()));
        }
        Ok(PointSet { points })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &ProjectivePoint<T>> {
        self.points.iter()
    }

    pub fn points(&self) -> &[ProjectivePoint<T>] {
        &self.points
    }
}

/// One summand of a power-sum decomposition: `coeff * form^degree`.
#[derive(Clone, PartialEq, Debug)]
pub struct DecompositionTerm<T: Scalar> {
    pub coeff: T,
    pub form: LinearForm<T>,
}

/// A power-sum decomposition of a monomial: `target = sum of coeff * form^d`
/// with `d` the degree of the target. Coefficients are nonzero, so the number
/// of terms is the size of the certificate.
#[derive(Clone, PartialEq, Debug)]
pub struct Decomposition<T: Scalar> {
    target: Monomial,
    terms: Vec<DecompositionTerm<T>>,
}

impl<T: Scalar> Decomposition<T> {
    /// Coefficients must be nonzero and forms must match the target's
    /// variable count.
    pub fn new(target: Monomial, terms: Vec<DecompositionTerm<T>>) -> Result<Self, Error> {
        for t in &terms {
            if t.coeff.is_zero() {
                return Err(Error::Invalid("decomposition term with zero coefficient".into()));
            }
            if t.form.nvars() != target.nvars() {
                return Err(Error::Invalid(
                    "decomposition form has the wrong number of variables".into(),
                ));
            }
        }
        Ok(Decomposition { target, terms })
    }

    pub fn target(&self) -> &Monomial {
        &self.target
    }

    pub fn degree(&self) -> u32 {
        self.target.degree()
    }

    pub fn size(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> &[DecompositionTerm<T>] {
        &self.terms
    }

    /// Scales every coefficient by a nonzero constant (useful for comparing
    /// against integer identities).
    pub fn scale(&self, c: &T) -> Self {
        assert!(!c.is_zero(), "scaling a decomposition by zero");
        Decomposition {
            target: self.target.clone(),
            terms: self
                .terms
                .iter()
                .map(|t| DecompositionTerm { coeff: t.coeff.clone() * c.clone(), form: t.form.clone() })
                .collect(),
        }
    }

    /// The expanded polynomial `sum of coeff * form^d`.
    pub fn expand(&self) -> Polynomial<T> {
        let d = self.degree();
        let mut acc = Polynomial::zero(self.target.nvars());
        for t in &self.terms {
            acc = &acc + &t.form.power(d).scale(&t.coeff);
        }
        acc
    }

    /// Certifies the decomposition by full symbolic expansion: exact equality
    /// with the target monomial.
    pub fn verify(&self) -> bool {
        self.expand() == self.target.as_polynomial()
    }
}

/// Diagnostics accompanying a successful [`solve_decomposition`].
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct SolveDiagnostics {
    /// Indices (into the canonical point order) whose coefficient came out
    /// zero and were therefore dropped from the decomposition.
    pub dropped_points: Vec<usize>,
    /// Dimension of the solution space of the linear system; nonzero means
    /// the system was underdetermined and free variables were set to zero.
    pub solution_space_dim: usize,
}

/// Finds a power-sum decomposition of `m` supported on `points`, by solving
/// the exact linear system that matches every degree-`d` coefficient.
///
/// Unknowns are ordered by the canonical point order of the set; when the
/// system is underdetermined, free variables are set to zero, and points
/// whose coefficient vanishes are dropped (see [`SolveDiagnostics`]).
pub fn solve_decomposition<T: Scalar>(
    m: &Monomial,
    points: &PointSet<T>,
) -> Result<(Decomposition<T>, SolveDiagnostics), Error> {
    if points.is_empty() {
        return Err(Error::NoSolution("empty point set".into()));
    }
    let nvars = points.points()[0].nvars();
    if nvars != m.nvars() {
        return Err(Error::Invalid(format!(
            "points have {nvars} coordinates but the monomial has {} variables",
            m.nvars()
        )));
    }
    let d = m.degree();

    // Column p holds the coefficients of (point_p . x)^d; rows run over all
    // degree-d exponent vectors that occur, in graded-lex order. Exponents
    // appearing in no power are still constraints only if the target uses
    // them; the target is a monomial of degree d, and every power expansion
    // is supported on degree-d exponents, so collecting exponents from the
    // expansions and the target covers every nontrivial equation.
    let expansions: Vec<Polynomial<T>> = points
        .iter()
        .map(|p| p.as_linear_form().power(d))
        .collect();
    let mut exponents: std::collections::BTreeSet<crate::poly::ExpVec> = expansions
        .iter()
        .flat_map(|e| e.terms().map(|(k, _)| k.clone()))
        .collect();
    let target = m.as_polynomial::<T>();
    exponents.extend(target.terms().map(|(k, _)| k.clone()));

    let rows: Vec<crate::poly::ExpVec> = exponents.into_iter().collect();
    let mut a = Matrix::zero(rows.len(), points.len());
    let mut b = Vec::with_capacity(rows.len());
    for (ri, e) in rows.iter().enumerate() {
        for (ci, exp) in expansions.iter().enumerate() {
            a.set(ri, ci, exp.coeff(e.as_slice()));
        }
        b.push(target.coeff(e.as_slice()));
    }

    match solve_linear(&a, &b) {
        LinearSolution::Inconsistent => Err(Error::NoSolution(format!(
            "{} is not a combination of degree-{d} powers of the {} given points",
            monomial_to_string(m),
            points.len()
        ))),
        LinearSolution::Solution { values, nullity } => {
            let mut terms = Vec::new();
            let mut dropped = Vec::new();
            for (i, (c, p)) in values.into_iter().zip(points.iter()).enumerate() {
                if c.is_zero() {
                    dropped.push(i);
                } else {
                    terms.push(DecompositionTerm { coeff: c, form: p.as_linear_form() });
                }
            }
            let dec = Decomposition::new(m.clone(), terms)?;
            Ok((
                dec,
                SolveDiagnostics { dropped_points: dropped, solution_space_dim: nullity },
            ))
        }
    }
}

/// Serializes a decomposition. Rationals are rendered as exact strings.
pub fn decomposition_to_json<T: Scalar>(dec: &Decomposition<T>) -> Value {
    json!({
        "target": monomial_to_string(dec.target()),
        "degree": dec.degree(),
        "terms": dec
            .terms()
            .iter()
            .map(|t| {
                json!({
                    "coeff": t.coeff.to_string(),
                    "form": t.form.coeffs().iter().map(T::to_string).collect::<Vec<_>>(),
                })
            })
            .collect::<Vec<_>>(),
    })
}

/// Parses a decomposition produced by [`decomposition_to_json`] (extra keys
/// such as `method` and `size` are ignored).
pub fn decomposition_from_json<T>(value: &Value) -> Result<Decomposition<T>, Error>
where
    T: Scalar + FromStr,
{
    let obj = value
        .as_object()
        .ok_or_else(|| Error::Parse("decomposition must be a JSON object".into()))?;
    let target_text = obj
        .get("target")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::Parse("missing string field `target`".into()))?;
    let target = parse_monomial(target_text)?;
    if let Some(deg) = obj.get("degree") {
        if deg.as_u64() != Some(u64::from(target.degree())) {
            return Err(Error::Parse(format!(
                "declared degree {deg} does not match the target degree {}",
                target.degree()
            )));
        }
    }
    let terms_json = obj
        .get("terms")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("missing array field `terms`".into()))?;
    let mut terms = Vec::with_capacity(terms_json.len());
    for t in terms_json {
        let coeff_text = t
            .get("coeff")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::Parse("term is missing string field `coeff`".into()))?;
        let coeff = T::from_str(coeff_text)
            .map_err(|_| Error::Parse(format!("bad rational `{coeff_text}`")))?;
        let form_json = t
            .get("form")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("term is missing array field `form`".into()))?;
        let mut coords = Vec::with_capacity(form_json.len());
        for c in form_json {
            let text = c
                .as_str()
                .ok_or_else(|| Error::Parse("form coordinates must be strings".into()))?;
            coords.push(
                T::from_str(text).map_err(|_| Error::Parse(format!("bad rational `{text}`")))?,
            );
        }
        terms.push(DecompositionTerm { coeff, form: LinearForm::new(coords)? });
    }
    Decomposition::new(target, terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;
    use crate::text::parse_poly;
    use crate::text::VarStyle;
    use crate::Q;

    fn q(n: i64) -> Q {
        int(n)
    }

    fn qr(n: i64, d: i64) -> Q {
        Q::new(n.into(), d.into())
    }

    fn mono(exps: &[u32]) -> Monomial {
        Monomial::new(exps.to_vec()).unwrap()
    }

    fn point(coords: &[i64]) -> ProjectivePoint<Q> {
        ProjectivePoint::new(coords.iter().map(|&c| q(c)).collect()).unwrap()
    }

    #[test]
    fn perp_contains_high_powers() {
        // X_i^{a_i+1} always annihilates
        let m = mono(&[2, 3]);
        let x0_cubed = parse_poly::<Q>("X0^3", VarStyle { upper: true, base: 0 }, Some(2)).unwrap();
        assert!(perp_membership(&m, &x0_cubed));
        let x1_4 = parse_poly::<Q>("X1^4", VarStyle { upper: true, base: 0 }, Some(2)).unwrap();
        assert!(perp_membership(&m, &x1_4));
    }

    #[test]
    fn perp_excludes_surviving_operators() {
        // X^b survives exactly when b <= a componentwise
        let m = mono(&[2, 3]);
        for b0 in 0..=3u32 {
            for b1 in 0..=4u32 {
                if (b0, b1) == (0, 0) {
                    continue;
                }
                let op = Polynomial::from_terms(2, [(vec![b0, b1], q(1))]);
                let inside = b0 > 2 || b1 > 3;
                assert_eq!(perp_membership(&m, &op), inside, "b = ({b0}, {b1})");
            }
        }
    }

    #[test]
    fn perp_of_binary_root_product() {
        // prod (X1 - r X0) over the gapped roots of x0^2 x1^2 annihilates it
        let m = mono(&[2, 2]);
        let roots = [q(1), q(2), q(-1), qr(1, 2)];
        let mut g = Polynomial::constant(2, q(1));
        for r in roots {
            let factor =
                Polynomial::from_terms(2, [(vec![0, 1], q(1)), (vec![1, 0], -r.clone())]);
            g = &g * &factor;
        }
        assert!(perp_membership(&m, &g));
    }

    #[test]
    fn projective_point_canonicalizes() {
        let p = ProjectivePoint::new(vec![q(0), q(3), q(-6)]).unwrap();
        assert_eq!(p.coords(), &[q(0), q(1), q(-2)]);
        assert_eq!(point(&[2, 4]), point(&[1, 2]));
        assert!(ProjectivePoint::<Q>::new(vec![q(0), q(0)]).is_err());
    }

    #[test]
    fn point_set_sorts_and_rejects_duplicates() {
        let set = PointSet::new(vec![point(&[1, 2]), point(&[1, -1])]).unwrap();
        assert_eq!(set.points()[0], point(&[1, -1]));
        assert!(PointSet::new(vec![point(&[1, 2]), point(&[2, 4])]).is_err());
    }

    #[test]
    fn solve_binary_product_example() {
        // x0*x1 = (1/4)(x0+x1)^2 - (1/4)(x0-x1)^2
        let m = mono(&[1, 1]);
        let set = PointSet::new(vec![point(&[1, 1]), point(&[1, -1])]).unwrap();
        let (dec, diag) = solve_decomposition(&m, &set).unwrap();
        assert_eq!(diag, SolveDiagnostics::default());
        assert_eq!(dec.size(), 2);
        let coeffs: Vec<(Vec<Q>, Q)> = dec
            .terms()
            .iter()
            .map(|t| (t.form.coeffs().to_vec(), t.coeff.clone()))
            .collect();
        assert!(coeffs.contains(&(vec![q(1), q(1)], qr(1, 4))));
        assert!(coeffs.contains(&(vec![q(1), q(-1)], qr(-1, 4))));
        assert!(dec.verify());
    }

    #[test]
    fn solve_quartic_grid_is_unique_and_nonzero() {
        let m = mono(&[2, 2]);
        let set = PointSet::new(vec![
            point(&[1, 1]),
            point(&[1, -1]),
            point(&[1, 2]),
            ProjectivePoint::new(vec![q(1), qr(1, 2)]).unwrap(),
        ])
        .unwrap();
        let (dec, diag) = solve_decomposition(&m, &set).unwrap();
        assert_eq!(dec.size(), 4);
        assert_eq!(diag.solution_space_dim, 0);
        assert!(diag.dropped_points.is_empty());
        assert!(dec.verify());
    }

    #[test]
    fn solve_reports_no_solution() {
        // five coefficient equations, two unknowns: inconsistent
        let m = mono(&[2, 2]);
        let set = PointSet::new(vec![point(&[1, 1]), point(&[1, -1])]).unwrap();
        match solve_decomposition(&m, &set) {
            Err(Error::NoSolution(_)) => {}
            other => panic!("expected NoSolution, got {other:?}"),
        }
    }

    #[test]
    fn solver_is_insensitive_to_point_order() {
        let m = mono(&[2, 2]);
        let pts = vec![
            point(&[1, 1]),
            point(&[1, -1]),
            point(&[1, 2]),
            ProjectivePoint::new(vec![q(1), qr(1, 2)]).unwrap(),
        ];
        let mut reversed = pts.clone();
        reversed.reverse();
        let a = solve_decomposition(&m, &PointSet::new(pts).unwrap()).unwrap();
        let b = solve_decomposition(&m, &PointSet::new(reversed).unwrap()).unwrap();
        assert_eq!(a.0, b.0);
    }

    #[test]
    fn verify_the_quartic_identity() {
        // 12 x0^2 x1^2 = (x0+x1)^4 + (x0-x1)^4 - 2 x0^4 - 2 x1^4
        let target = mono(&[2, 2]);
        let form = |a: i64, b: i64| LinearForm::new(vec![q(a), q(b)]).unwrap();
        let dec = Decomposition::new(
            target,
            vec![
                DecompositionTerm { coeff: qr(1, 12), form: form(1, 1) },
                DecompositionTerm { coeff: qr(1, 12), form: form(1, -1) },
                DecompositionTerm { coeff: qr(-1, 6), form: form(1, 0) },
                DecompositionTerm { coeff: qr(-1, 6), form: form(0, 1) },
            ],
        )
        .unwrap();
        assert!(dec.verify());
        // perturb one coefficient: must fail
        let bad = Decomposition::new(
            dec.target().clone(),
            dec.terms()
                .iter()
                .enumerate()
                .map(|(i, t)| DecompositionTerm {
                    coeff: if i == 0 { t.coeff.clone() + q(1) } else { t.coeff.clone() },
                    form: t.form.clone(),
                })
                .collect(),
        )
        .unwrap();
        assert!(!bad.verify());
    }

    #[test]
    fn json_round_trip() {
        let m = mono(&[1, 1]);
        let set = PointSet::new(vec![point(&[1, 1]), point(&[1, -1])]).unwrap();
        let (dec, _) = solve_decomposition(&m, &set).unwrap();
        let value = decomposition_to_json(&dec);
        assert_eq!(value["target"], "x0*x1");
        assert_eq!(value["degree"], 2);
        assert_eq!(value["terms"][0]["coeff"], "-1/4");
        let back: Decomposition<Q> = decomposition_from_json(&value).unwrap();
        assert_eq!(back, dec);
    }

    #[test]
    fn json_rejects_malformed_input() {
        let bad = json!({"target": "x0*x1", "terms": [{"coeff": "1/3", "form": ["1", "bogus"]}]});
        assert!(decomposition_from_json::<Q>(&bad).is_err());
        let wrong_degree =
            json!({"target": "x0*x1", "degree": 5, "terms": []});
        assert!(decomposition_from_json::<Q>(&wrong_degree).is_err());
    }
}
