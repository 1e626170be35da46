//! Finite-dimensional associative algebras given by structure constants,
//! and their Jacobson radical over characteristic zero.
//!
//! The radical is the kernel of the trace bilinear form
//! `(x, y) ↦ trace(L_x · L_y)` of left multiplications; over a field of
//! characteristic 0 this kernel is exactly J(A). The computed ideal is
//! verified nilpotent before it is returned, so a non-associative or
//! otherwise broken multiplication table cannot silently produce garbage.

use crate::error::Error;
use crate::field::{Field, Scalar};
use crate::linalg::{
    kernel, rref_in_place, vec_is_zero, EchelonBasis, LinearMap, VectorSpace,
};

/// A finite-dimensional algebra: a based vector space, a bilinear
/// multiplication given on basis pairs, and a unit element.
#[derive(Debug, Clone)]
pub struct FiniteAlgebra {
    pub space: VectorSpace,
    /// `mult[i][j]` = coordinates of (basis i) · (basis j).
    pub mult: Vec<Vec<Vec<Scalar>>>,
    /// Coordinates of the unit element.
    pub unit: Vec<Scalar>,
}

impl FiniteAlgebra {
    pub fn new(
        space: VectorSpace,
        mult: Vec<Vec<Vec<Scalar>>>,
        unit: Vec<Scalar>,
    ) -> Result<FiniteAlgebra, Error> {
        let n = space.dim();
        if mult.len() != n || mult.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch(
                "multiplication table shape does not match dimension".into(),
            ));
        }
        for row in &mult {
            for entry in row {
                if entry.len() != n {
                    return Err(Error::DimensionMismatch(
                        "structure constant vector has wrong length".into(),
                    ));
                }
            }
        }
        if unit.len() != n {
            return Err(Error::DimensionMismatch("unit vector has wrong length".into()));
        }
        Ok(FiniteAlgebra { space, mult, unit })
    }

    pub fn field(&self) -> Field {
        self.space.field
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// Product of two elements given in coordinates.
    pub fn multiply(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let n = self.dim();
        let mut out = self.space.zero_vec();
        for i in 0..n {
            if a[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if b[j].is_zero() {
                    continue;
                }
                let c = &a[i] * &b[j];
                for k in 0..n {
                    let t = &c * &self.mult[i][j][k];
                    out[k] = &out[k] + &t;
                }
            }
        }
        out
    }

    /// Matrix of left multiplication by `a`.
    pub fn left_mult_matrix(&self, a: &[Scalar]) -> LinearMap {
        let n = self.dim();
        let mut m = LinearMap::zero(self.space.clone(), self.space.clone());
        for j in 0..n {
            let col = self.multiply(a, &self.space.basis_vec(j));
            for i in 0..n {
                m.entries[i][j] = col[i].clone();
            }
        }
        m
    }

    /// Checks associativity on all basis triples and the unit laws on all
    /// basis elements. Returns the list of violations (empty = pass).
    pub fn check(&self) -> Vec<String> {
        let n = self.dim();
        let mut failures = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let ei = self.space.basis_vec(i);
                    let ej = self.space.basis_vec(j);
                    let ek = self.space.basis_vec(k);
                    let lhs = self.multiply(&self.multiply(&ei, &ej), &ek);
                    let rhs = self.multiply(&ei, &self.multiply(&ej, &ek));
                    if lhs != rhs {
                        failures.push(format!(
                            "associativity fails on basis triple ({}, {}, {})",
                            self.space.labels[i], self.space.labels[j], self.space.labels[k]
                        ));
                    }
                }
            }
        }
        for i in 0..n {
            let e = self.space.basis_vec(i);
            if self.multiply(&self.unit, &e) != e {
                failures.push(format!("left unit law fails on {}", self.space.labels[i]));
            }
            if self.multiply(&e, &self.unit) != e {
                failures.push(format!("right unit law fails on {}", self.space.labels[i]));
            }
        }
        failures
    }

    /// Quotient algebra A / I for a two-sided ideal given by spanning
    /// vectors. The ideal property is not checked here.
    pub fn quotient_by_ideal(&self, ideal: &[Vec<Scalar>]) -> FiniteAlgebra {
        let q = crate::linalg::quotient_by_subspace(&self.space, ideal);
        let n = q.space.dim();
        let mut mult = vec![vec![Vec::new(); n]; n];
        for i in 0..n {
            let a = q.section.apply(&q.space.basis_vec(i));
            for j in 0..n {
                let b = q.section.apply(&q.space.basis_vec(j));
                mult[i][j] = q.projection.apply(&self.multiply(&a, &b));
            }
        }
        let unit = q.projection.apply(&self.unit);
        FiniteAlgebra { space: q.space, mult, unit }
    }
}

/// Basis of the Jacobson radical `J(A)`, canonical echelon form.
///
/// Restricted to characteristic 0, where the trace-form kernel equals the
/// radical. The output is verified nilpotent; failure of that verification
/// signals a broken algebra and is reported as an internal-consistency
/// error rather than returned.
pub fn jacobson_radical(a: &FiniteAlgebra) -> Result<Vec<Vec<Scalar>>, Error> {
    if !a.field().characteristic_zero() {
        return Err(Error::UnsupportedField(format!(
            "jacobson_radical requires characteristic 0, got {}",
            a.field()
        )));
    }
    let n = a.dim();
    if n == 0 {
        return Ok(Vec::new());
    }
    // Gram matrix of (x, y) -> trace(L_x L_y) on the basis.
    let left: Vec<LinearMap> = (0..n)
        .map(|i| a.left_mult_matrix(&a.space.basis_vec(i)))
        .collect();
    let mut gram = LinearMap::zero(a.space.clone(), a.space.clone());
    for i in 0..n {
        for j in 0..n {
            let prod = left[i].compose(&left[j]);
            let mut tr = a.field().zero();
            for k in 0..n {
                tr = &tr + &prod.entries[k][k];
            }
            gram.entries[i][j] = tr;
        }
    }
    let radical = kernel(&gram);

    // nilpotency: J, J^2, ... must reach zero within dim(A) steps
    let mut power: Vec<Vec<Scalar>> = radical.clone();
    let mut steps = 0usize;
    while !power.is_empty() {
        steps += 1;
        if steps > n {
            return Err(Error::InternalConsistency(
                "trace-form kernel is not nilpotent; multiplication table is not a valid algebra"
                    .into(),
            ));
        }
        let mut next = Vec::new();
        for x in &power {
            for y in &radical {
                let p = a.multiply(x, y);
                if !vec_is_zero(&p) {
                    next.push(p);
                }
            }
        }
        rref_in_place(&mut next);
        power = next;
    }
    Ok(radical)
}

/// Checks that `ideal` (echelon basis vectors in A) is a two-sided ideal:
/// closed under multiplication by every basis element on both sides.
pub fn is_two_sided_ideal(a: &FiniteAlgebra, ideal: &[Vec<Scalar>]) -> bool {
    let basis = EchelonBasis::span(a.field(), a.dim(), ideal);
    for x in ideal {
        for i in 0..a.dim() {
            let e = a.space.basis_vec(i);
            if !basis.contains(&a.multiply(&e, x)) || !basis.contains(&a.multiply(x, &e)) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rationals
    }

    fn sc(v: i64) -> Scalar {
        q().from_i64(v)
    }

    /// The ground field K as a 1-dimensional algebra.
    fn ground_field() -> FiniteAlgebra {
        let space = VectorSpace::new(q(), vec!["1".into()]).unwrap();
        FiniteAlgebra::new(space, vec![vec![vec![sc(1)]]], vec![sc(1)]).unwrap()
    }

    /// Lower-triangular 2x2 matrices over Q, basis {E11, E21, E22}.
    fn lower_triangular() -> FiniteAlgebra {
        let space =
            VectorSpace::new(q(), vec!["E11".into(), "E21".into(), "E22".into()]).unwrap();
        let z = || vec![sc(0), sc(0), sc(0)];
        let e = |i: usize| {
            let mut v = z();
            v[i] = sc(1);
            v
        };
        // E_ab E_cd = delta_bc E_ad
        let mut mult = vec![vec![z(); 3]; 3];
        mult[0][0] = e(0); // E11 E11 = E11
        mult[1][0] = e(1); // E21 E11 = E21
        mult[2][1] = e(1); // E22 E21 = E21
        mult[2][2] = e(2); // E22 E22 = E22
        let unit = vec![sc(1), sc(0), sc(1)]; // E11 + E22
        FiniteAlgebra::new(space, mult, unit).unwrap()
    }

    /// K[x]/(x^2), basis {1, x}.
    fn dual_numbers() -> FiniteAlgebra {
        let space = VectorSpace::new(q(), vec!["1".into(), "x".into()]).unwrap();
        let mult = vec![
            vec![vec![sc(1), sc(0)], vec![sc(0), sc(1)]],
            vec![vec![sc(0), sc(1)], vec![sc(0), sc(0)]],
        ];
        FiniteAlgebra::new(space, mult, vec![sc(1), sc(0)]).unwrap()
    }

    /// Brute-force oracle for small algebras: largest nilpotent ideal among
    /// spans of subsets of a candidate generating set scanned over integer
    /// coordinate vectors. Only practical in very small dimension.
    fn brute_force_radical_dim(a: &FiniteAlgebra) -> usize {
        // enumerate all elements with coordinates in {-1,0,1}, keep the
        // nilpotent ones that generate a nilpotent two-sided ideal
        let n = a.dim();
        let mut candidates: Vec<Vec<Scalar>> = Vec::new();
        let total = 3usize.pow(n as u32);
        'outer: for code in 0..total {
            let mut c = code;
            let mut v = Vec::with_capacity(n);
            for _ in 0..n {
                v.push(sc((c % 3) as i64 - 1));
                c /= 3;
            }
            if vec_is_zero(&v) {
                continue;
            }
            // x nilpotent?
            let mut p = v.clone();
            for _ in 0..n {
                p = a.multiply(&p, &v);
            }
            if !vec_is_zero(&p) {
                continue 'outer;
            }
            candidates.push(v);
        }
        // the radical contains every nilpotent element of a commutative
        // algebra; in general take the span of candidates closed under the
        // ideal property and nilpotency of the whole span
        let mut best = 0;
        let m = candidates.len();
        for mask in 0..(1usize << m.min(12)) {
            let chosen: Vec<Vec<Scalar>> = (0..m.min(12))
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| candidates[i].clone())
                .collect();
            if chosen.is_empty() {
                continue;
            }
            let span = EchelonBasis::span(a.field(), n, &chosen);
            if !is_two_sided_ideal(a, &span.rows) {
                continue;
            }
            // nilpotent span?
            let mut power = span.rows.clone();
            let mut nilpotent = false;
            for _ in 0..=n {
                if power.is_empty() {
                    nilpotent = true;
                    break;
                }
                let mut next = Vec::new();
                for x in &power {
                    for y in &span.rows {
                        let p = a.multiply(x, y);
                        if !vec_is_zero(&p) {
                            next.push(p);
                        }
                    }
                }
                rref_in_place(&mut next);
                power = next;
            }
            if nilpotent {
                best = best.max(span.dim());
            }
        }
        best
    }

    #[test]
    fn radical_of_field_is_zero() {
        assert!(jacobson_radical(&ground_field()).unwrap().is_empty());
    }

    #[test]
    fn radical_of_lower_triangular() {
        let a = lower_triangular();
        assert!(a.check().is_empty());
        let rad = jacobson_radical(&a).unwrap();
        assert_eq!(rad.len(), 1);
        // spanned by E21
        assert_eq!(rad[0], vec![sc(0), sc(1), sc(0)]);
        // brute-force nilpotent-ideal enumeration agrees
        assert_eq!(brute_force_radical_dim(&a), 1);
    }

    #[test]
    fn radical_of_dual_numbers() {
        let a = dual_numbers();
        assert!(a.check().is_empty());
        let rad = jacobson_radical(&a).unwrap();
        assert_eq!(rad.len(), 1);
        assert_eq!(rad[0], vec![sc(0), sc(1)]);
        // x is nilpotent: x^2 = 0
        let x = vec![sc(0), sc(1)];
        assert!(vec_is_zero(&a.multiply(&x, &x)));
    }

    #[test]
    fn radical_rejects_positive_characteristic() {
        let f5 = Field::Prime(5);
        let space = VectorSpace::new(f5, vec!["1".into()]).unwrap();
        let a = FiniteAlgebra::new(space, vec![vec![vec![f5.one()]]], vec![f5.one()]).unwrap();
        assert!(matches!(jacobson_radical(&a), Err(Error::UnsupportedField(_))));
    }

    #[test]
    fn radical_is_ideal_and_quotient_is_semisimple() {
        for a in [ground_field(), lower_triangular(), dual_numbers()] {
            let rad = jacobson_radical(&a).unwrap();
            assert!(is_two_sided_ideal(&a, &rad));
            let quot = a.quotient_by_ideal(&rad);
            assert!(quot.check().is_empty());
            assert!(jacobson_radical(&quot).unwrap().is_empty());
        }
    }
}
