//! Dense exact linear algebra: labeled vector spaces, linear maps, reduced
//! echelon forms, solving, kernels and cokernels.
//!
//! All bases produced here are canonical: subspaces are always presented by
//! the reduced row echelon basis of their span (ties broken by pivot
//! position), so equal subspaces have bit-identical representations. This is
//! what makes every downstream equality check exact and reproducible.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::Error;
use crate::field::{Field, Scalar};

/// A finite-dimensional K-vector space with an ordered, labeled basis.
///
/// Dimension zero is legal and common (empty Hom-spaces).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VectorSpace {
    pub field: Field,
    pub labels: Vec<String>,
}

impl VectorSpace {
    pub fn new(field: Field, labels: Vec<String>) -> Result<VectorSpace, Error> {
        let mut seen = BTreeSet::new();
        for l in &labels {
            if !seen.insert(l.clone()) {
                return Err(Error::InvalidInput(format!("duplicate basis label: {}", l)));
            }
        }
        Ok(VectorSpace { field, labels })
    }

    pub fn zero(field: Field) -> VectorSpace {
        VectorSpace { field, labels: Vec::new() }
    }

    /// Space with labels `prefix0, prefix1, ...`.
    pub fn numbered(field: Field, prefix: &str, dim: usize) -> VectorSpace {
        VectorSpace {
            field,
            labels: (0..dim).map(|i| format!("{}{}", prefix, i)).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    /// The dual space, with the canonical coordinate dual basis.
    pub fn dual(&self) -> VectorSpace {
        VectorSpace {
            field: self.field,
            labels: self.labels.iter().map(|l| format!("{}*", l)).collect(),
        }
    }

    pub fn zero_vec(&self) -> Vec<Scalar> {
        vec![self.field.zero(); self.dim()]
    }

    pub fn basis_vec(&self, i: usize) -> Vec<Scalar> {
        let mut v = self.zero_vec();
        v[i] = self.field.one();
        v
    }
}

pub fn vec_add(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_scale(c: &Scalar, a: &[Scalar]) -> Vec<Scalar> {
    a.iter().map(|x| c * x).collect()
}

pub fn vec_is_zero(a: &[Scalar]) -> bool {
    a.iter().all(|x| x.is_zero())
}

/// A linear map stored as a dense `codomain.dim × domain.dim` matrix acting
/// on coordinate columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearMap {
    pub domain: VectorSpace,
    pub codomain: VectorSpace,
    /// `entries[row][col]`, row indexed by codomain basis, col by domain basis.
    pub entries: Vec<Vec<Scalar>>,
}

impl LinearMap {
    pub fn new(
        domain: VectorSpace,
        codomain: VectorSpace,
        entries: Vec<Vec<Scalar>>,
    ) -> Result<LinearMap, Error> {
        if entries.len() != codomain.dim() {
            return Err(Error::DimensionMismatch(format!(
                "expected {} rows, got {}",
                codomain.dim(),
                entries.len()
            )));
        }
        for row in &entries {
            if row.len() != domain.dim() {
                return Err(Error::DimensionMismatch(format!(
                    "expected {} columns, got {}",
                    domain.dim(),
                    row.len()
                )));
            }
            for e in row {
                if e.field() != domain.field {
                    return Err(Error::FieldMismatch {
                        expected: domain.field.to_string(),
                        found: e.field().to_string(),
                    });
                }
            }
        }
        if domain.field != codomain.field {
            return Err(Error::FieldMismatch {
                expected: domain.field.to_string(),
                found: codomain.field.to_string(),
            });
        }
        Ok(LinearMap { domain, codomain, entries })
    }

    pub fn zero(domain: VectorSpace, codomain: VectorSpace) -> LinearMap {
        let z = domain.field.zero();
        let entries = vec![vec![z; domain.dim()]; codomain.dim()];
        LinearMap { domain, codomain, entries }
    }

    pub fn identity(space: &VectorSpace) -> LinearMap {
        let mut m = LinearMap::zero(space.clone(), space.clone());
        for i in 0..space.dim() {
            m.entries[i][i] = space.field.one();
        }
        m
    }

    pub fn field(&self) -> Field {
        self.domain.field
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.domain.dim(), "vector/domain dimension mismatch");
        let mut out = self.codomain.zero_vec();
        for (i, row) in self.entries.iter().enumerate() {
            let mut acc = self.field().zero();
            for (a, x) in row.iter().zip(v) {
                if !a.is_zero() && !x.is_zero() {
                    acc = &acc + &(a * x);
                }
            }
            out[i] = acc;
        }
        out
    }

    /// `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &LinearMap) -> LinearMap {
        assert_eq!(
            other.codomain.dim(),
            self.domain.dim(),
            "composition dimension mismatch"
        );
        let mut out = LinearMap::zero(other.domain.clone(), self.codomain.clone());
        for i in 0..self.codomain.dim() {
            for j in 0..other.domain.dim() {
                let mut acc = self.field().zero();
                for k in 0..self.domain.dim() {
                    let a = &self.entries[i][k];
                    let b = &other.entries[k][j];
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                out.entries[i][j] = acc;
            }
        }
        out
    }

    pub fn add(&self, other: &LinearMap) -> LinearMap {
        assert_eq!(self.domain.dim(), other.domain.dim());
        assert_eq!(self.codomain.dim(), other.codomain.dim());
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(r, s)| vec_add(r, s))
            .collect();
        LinearMap {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            entries,
        }
    }

    pub fn sub(&self, other: &LinearMap) -> LinearMap {
        assert_eq!(self.domain.dim(), other.domain.dim());
        assert_eq!(self.codomain.dim(), other.codomain.dim());
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(r, s)| vec_sub(r, s))
            .collect();
        LinearMap {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            entries,
        }
    }

    pub fn scale(&self, c: &Scalar) -> LinearMap {
        LinearMap {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            entries: self.entries.iter().map(|r| vec_scale(c, r)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|r| vec_is_zero(r))
    }

    /// The transpose, as a map between the canonical dual spaces.
    pub fn transpose(&self) -> LinearMap {
        let mut out = LinearMap::zero(self.codomain.dual(), self.domain.dual());
        for i in 0..self.codomain.dim() {
            for j in 0..self.domain.dim() {
                out.entries[j][i] = self.entries[i][j].clone();
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        let mut rows = self.entries.clone();
        rref_in_place(&mut rows).len()
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.codomain.dim()
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.domain.dim()
    }

    /// Columns as vectors in the codomain; the image is their span.
    pub fn columns(&self) -> Vec<Vec<Scalar>> {
        (0..self.domain.dim())
            .map(|j| (0..self.codomain.dim()).map(|i| self.entries[i][j].clone()).collect())
            .collect()
    }

    pub fn is_invertible(&self) -> bool {
        self.domain.dim() == self.codomain.dim() && self.rank() == self.domain.dim()
    }

    /// Inverse of a square invertible map; `None` when singular.
    pub fn inverse(&self) -> Option<LinearMap> {
        if self.domain.dim() != self.codomain.dim() {
            return None;
        }
        let n = self.domain.dim();
        let field = self.field();
        // Gauss-Jordan on [A | I]
        let mut aug: Vec<Vec<Scalar>> = self
            .entries
            .iter()
            .enumerate()
            .map(|(i, row)| {
                let mut r = row.clone();
                for k in 0..n {
                    r.push(if k == i { field.one() } else { field.zero() });
                }
                r
            })
            .collect();
        let pivots = rref_in_place(&mut aug);
        if pivots.len() != n || pivots.iter().any(|&c| c >= n) {
            return None;
        }
        let entries = (0..n)
            .map(|i| aug[i][n..].to_vec())
            .collect();
        Some(LinearMap {
            domain: self.codomain.clone(),
            codomain: self.domain.clone(),
            entries,
        })
    }
}

impl fmt::Display for LinearMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[{} -> {}]", self.domain.dim(), self.codomain.dim())?;
        for row in &self.entries {
            let cells: Vec<String> = row.iter().map(|s| s.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// Reduces `rows` to reduced row echelon form in place. Returns the pivot
/// column of each nonzero row; zero rows are moved to the bottom and
/// truncated away.
pub fn rref_in_place(rows: &mut Vec<Vec<Scalar>>) -> Vec<usize> {
    let nrows = rows.len();
    if nrows == 0 {
        return Vec::new();
    }
    let ncols = rows[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r >= nrows {
            break;
        }
        let mut pivot_row = None;
        for i in r..nrows {
            if !rows[i][c].is_zero() {
                pivot_row = Some(i);
                break;
            }
        }
        let Some(pr) = pivot_row else { continue };
        rows.swap(r, pr);
        let inv = rows[r][c].inv();
        for j in c..ncols {
            rows[r][j] = &rows[r][j] * &inv;
        }
        for i in 0..nrows {
            if i != r && !rows[i][c].is_zero() {
                let factor = rows[i][c].clone();
                for j in c..ncols {
                    let s = &factor * &rows[r][j];
                    rows[i][j] = &rows[i][j] - &s;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(pivots.len());
    pivots
}

/// A subspace presented by its canonical reduced-echelon basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EchelonBasis {
    pub field: Field,
    pub ambient_dim: usize,
    pub rows: Vec<Vec<Scalar>>,
    pub pivots: Vec<usize>,
}

impl EchelonBasis {
    /// The canonical basis of the span of `vectors` inside K^ambient_dim.
    pub fn span(field: Field, ambient_dim: usize, vectors: &[Vec<Scalar>]) -> EchelonBasis {
        let mut rows: Vec<Vec<Scalar>> = vectors
            .iter()
            .filter(|v| !vec_is_zero(v))
            .cloned()
            .collect();
        for v in &rows {
            assert_eq!(v.len(), ambient_dim, "span vector has wrong length");
        }
        let pivots = rref_in_place(&mut rows);
        EchelonBasis { field, ambient_dim, rows, pivots }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Canonical residue of `v` modulo this subspace: the unique
    /// representative with zeros at all pivot coordinates.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut out = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !out[p].is_zero() {
                let factor = out[p].clone();
                for j in 0..self.ambient_dim {
                    let s = &factor * &row[j];
                    out[j] = &out[j] - &s;
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        vec_is_zero(&self.reduce(v))
    }

    /// Whether the two subspaces are equal (mutual containment; since both
    /// bases are canonical this is just row equality).
    pub fn same_subspace(&self, other: &EchelonBasis) -> bool {
        self.ambient_dim == other.ambient_dim && self.rows == other.rows
    }

    /// Coordinates of `v` in this basis, if `v` lies in the span.
    pub fn coords_of(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        if !self.contains(v) {
            return None;
        }
        // RREF rows have 1 at their own pivot, 0 at the others.
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    /// Linear combination with the given coordinates.
    pub fn combine(&self, coords: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(coords.len(), self.dim());
        let mut out = vec![self.field.zero(); self.ambient_dim];
        for (c, row) in coords.iter().zip(&self.rows) {
            if !c.is_zero() {
                for j in 0..self.ambient_dim {
                    let s = c * &row[j];
                    out[j] = &out[j] + &s;
                }
            }
        }
        out
    }
}

/// Solves `A·x = b` exactly. Returns the deterministic solution with all
/// free variables set to zero, or `None` when the system is inconsistent.
pub fn solve_linear(a: &LinearMap, b: &[Scalar]) -> Result<Option<Vec<Scalar>>, Error> {
    if b.len() != a.codomain.dim() {
        return Err(Error::DimensionMismatch(format!(
            "rhs has length {}, codomain has dimension {}",
            b.len(),
            a.codomain.dim()
        )));
    }
    let n = a.domain.dim();
    let mut aug: Vec<Vec<Scalar>> = a
        .entries
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref_in_place(&mut aug);
    if pivots.contains(&n) {
        return Ok(None); // pivot in the augmented column: inconsistent
    }
    let mut x = vec![a.field().zero(); n];
    for (row, &p) in aug.iter().zip(&pivots) {
        x[p] = row[n].clone();
    }
    Ok(Some(x))
}

/// Canonical kernel basis of `a`, in reduced echelon form.
pub fn kernel(a: &LinearMap) -> Vec<Vec<Scalar>> {
    let n = a.domain.dim();
    let field = a.field();
    let mut rows = a.entries.clone();
    let pivots = rref_in_place(&mut rows);
    let pivot_set: BTreeSet<usize> = pivots.iter().copied().collect();
    let mut vectors = Vec::new();
    for free in (0..n).filter(|c| !pivot_set.contains(c)) {
        let mut v = vec![field.zero(); n];
        v[free] = field.one();
        for (row, &p) in rows.iter().zip(&pivots) {
            v[p] = -&row[free];
        }
        vectors.push(v);
    }
    EchelonBasis::span(field, n, &vectors).rows
}

/// The cokernel `codomain / im(a)` with its canonical projection and a
/// canonical section (splitting of the projection as plain linear maps).
#[derive(Debug, Clone)]
pub struct Cokernel {
    pub space: VectorSpace,
    pub projection: LinearMap,
    pub section: LinearMap,
}

/// Quotient of the codomain of `a` by the image of `a`.
///
/// Representatives are canonical: the basis of the quotient corresponds to
/// the non-pivot coordinates of the echelonized image, and the projection
/// sends `v` to the non-pivot coordinates of its canonical residue.
pub fn cokernel(a: &LinearMap) -> Cokernel {
    quotient_by_subspace(&a.codomain, &a.columns())
}

/// Quotient of `ambient` by the span of `subspace_vectors`.
pub fn quotient_by_subspace(ambient: &VectorSpace, subspace_vectors: &[Vec<Scalar>]) -> Cokernel {
    let field = ambient.field;
    let n = ambient.dim();
    let image = EchelonBasis::span(field, n, subspace_vectors);
    let pivot_set: BTreeSet<usize> = image.pivots.iter().copied().collect();
    let coset_coords: Vec<usize> = (0..n).filter(|c| !pivot_set.contains(c)).collect();
    let labels = coset_coords.iter().map(|&c| ambient.labels[c].clone()).collect();
    let space = VectorSpace { field, labels };
    // projection row q of coordinate c: residue of e_c at coset coordinate q
    let mut projection = LinearMap::zero(ambient.clone(), space.clone());
    for c in 0..n {
        let residue = image.reduce(&ambient.basis_vec(c));
        for (q, &cc) in coset_coords.iter().enumerate() {
            projection.entries[q][c] = residue[cc].clone();
        }
    }
    let mut section = LinearMap::zero(space.clone(), ambient.clone());
    for (q, &cc) in coset_coords.iter().enumerate() {
        section.entries[cc][q] = field.one();
    }
    Cokernel { space, projection, section }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rationals
    }

    fn qmap(rows: &[&[i64]], dom: usize) -> LinearMap {
        let domain = VectorSpace::numbered(q(), "x", dom);
        let codomain = VectorSpace::numbered(q(), "y", rows.len());
        let entries = rows
            .iter()
            .map(|r| r.iter().map(|&v| q().from_i64(v)).collect())
            .collect();
        LinearMap::new(domain, codomain, entries).unwrap()
    }

    fn ivec(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| q().from_i64(x)).collect()
    }

    #[test]
    fn solve_identity() {
        let a = qmap(&[&[1, 0], &[0, 1]], 2);
        let x = solve_linear(&a, &ivec(&[1, 2])).unwrap().unwrap();
        assert_eq!(x, ivec(&[1, 2]));
    }

    #[test]
    fn solve_inconsistent() {
        let a = qmap(&[&[0, 0], &[0, 0]], 2);
        assert!(solve_linear(&a, &ivec(&[1, 0])).unwrap().is_none());
    }

    #[test]
    fn solve_f5_matches_brute_force() {
        let f5 = Field::Prime(5);
        let domain = VectorSpace::numbered(f5, "x", 1);
        let codomain = VectorSpace::numbered(f5, "y", 1);
        let a = LinearMap::new(domain, codomain, vec![vec![f5.from_i64(2)]]).unwrap();
        let b = vec![f5.from_i64(3)];
        // oracle: try all 5 field elements
        let mut expected = None;
        for v in 0..5 {
            let x = f5.from_i64(v);
            if a.apply(&[x.clone()]) == b {
                expected = Some(x);
                break;
            }
        }
        let expected = expected.unwrap();
        assert_eq!(expected, f5.from_i64(4));
        let x = solve_linear(&a, &b).unwrap().unwrap();
        assert_eq!(x, vec![expected]);
    }

    #[test]
    fn solve_rhs_dimension_mismatch() {
        let a = qmap(&[&[1, 0]], 2);
        assert!(matches!(
            solve_linear(&a, &ivec(&[1, 2])),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn kernel_identity_empty() {
        assert!(kernel(&qmap(&[&[1, 0], &[0, 1]], 2)).is_empty());
    }

    #[test]
    fn kernel_zero_map() {
        let k = kernel(&qmap(&[&[0, 0, 0]], 3));
        assert_eq!(k.len(), 3);
    }

    #[test]
    fn kernel_canonical_form() {
        // hand Gaussian elimination: x0 + x1 = 0 => x0 = -x1; echelonized
        // basis of the kernel is the single row (1, -1)
        let k = kernel(&qmap(&[&[1, 1]], 2));
        assert_eq!(k, vec![ivec(&[1, -1])]);
    }

    #[test]
    fn cokernel_of_surjection_is_zero() {
        let c = cokernel(&qmap(&[&[1, 2], &[0, 1]], 2));
        assert_eq!(c.space.dim(), 0);
    }

    #[test]
    fn cokernel_of_empty_domain_is_identity() {
        let c = cokernel(&qmap(&[&[], &[]], 0));
        assert_eq!(c.space.dim(), 2);
        assert_eq!(c.projection.entries, LinearMap::identity(&c.projection.domain).entries);
    }

    #[test]
    fn cokernel_rank_nullity() {
        // [[1],[1]]: Q -> Q^2, rank 1, cokernel dim 2 - 1 = 1
        let a = qmap(&[&[1], &[1]], 1);
        let c = cokernel(&a);
        assert_eq!(c.space.dim(), 1);
        assert!(c.projection.compose(&a).is_zero());
        assert!(c.projection.is_surjective());
        // section splits the projection
        assert_eq!(
            c.projection.compose(&c.section).entries,
            LinearMap::identity(&c.space).entries
        );
    }

    #[test]
    fn echelon_coords_round_trip() {
        let basis = EchelonBasis::span(
            q(),
            3,
            &[ivec(&[1, 2, 0]), ivec(&[0, 1, 1]), ivec(&[1, 3, 1])],
        );
        assert_eq!(basis.dim(), 2);
        let v = ivec(&[2, 5, 1]);
        let coords = basis.coords_of(&v).unwrap();
        assert_eq!(basis.combine(&coords), v);
        assert!(basis.coords_of(&ivec(&[1, 1, -1])).is_some());
        assert!(basis.coords_of(&ivec(&[1, 0, 0])).is_none());
    }

    #[test]
    fn inverse_round_trip() {
        let a = qmap(&[&[2, 1], &[1, 1]], 2);
        let inv = a.inverse().unwrap();
        assert_eq!(
            a.compose(&inv).entries,
            LinearMap::identity(&a.codomain).entries
        );
        assert_eq!(
            inv.compose(&a).entries,
            LinearMap::identity(&a.domain).entries
        );
        assert!(qmap(&[&[1, 1], &[1, 1]], 2).inverse().is_none());
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        prop_compose! {
            fn arb_matrix()(entries in proptest::collection::vec(
                proptest::collection::vec(-4i64..=4, 1..5),
                1..5,
            )) -> Vec<Vec<i64>> {
                let cols = entries[0].len();
                entries.into_iter().map(|mut r| { r.resize(cols, 0); r }).collect()
            }
        }

        proptest! {
            #[test]
            fn rank_nullity(m in arb_matrix()) {
                let rows: Vec<&[i64]> = m.iter().map(|r| r.as_slice()).collect();
                let a = qmap(&rows, m[0].len());
                let k = kernel(&a);
                prop_assert_eq!(k.len() + a.rank(), a.domain.dim());
            }

            #[test]
            fn cokernel_kills_image(m in arb_matrix()) {
                let rows: Vec<&[i64]> = m.iter().map(|r| r.as_slice()).collect();
                let a = qmap(&rows, m[0].len());
                let c = cokernel(&a);
                prop_assert!(c.projection.compose(&a).is_zero());
                prop_assert!(c.projection.is_surjective());
                prop_assert_eq!(c.space.dim() + a.rank(), a.codomain.dim());
            }
        }
    }
}
