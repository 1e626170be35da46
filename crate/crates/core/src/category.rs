//! Finite K-linear categories given by structure constants.
//!
//! A [`LinearCategory`] stores an ordered object list, one labeled Hom-space
//! per object pair, a bilinear composition table on basis elements, and the
//! identity element of every endomorphism space. Compositions of arbitrary
//! elements are derived bilinearly from the table.
//!
//! This module also provides the categorical plumbing the rest of the crate
//! is built on: exhaustive axiom checking, additive closure (formal finite
//! coproducts, including the empty sum as a zero object), endomorphism
//! algebras, the categorical radical, opposite categories and full
//! subcategories.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::{jacobson_radical, FiniteAlgebra};
use crate::error::Error;
use crate::field::{Field, Scalar};
use crate::linalg::{EchelonBasis, LinearMap, VectorSpace};

/// Structure constants of one composition map: `table[g][f]` is the
/// coordinate vector of g∘f.
pub type CompTable = Vec<Vec<Vec<Scalar>>>;

/// A finite K-linear category.
#[derive(Debug, Clone)]
pub struct LinearCategory {
    pub field: Field,
    pub objects: Vec<String>,
    hom: BTreeMap<(usize, usize), VectorSpace>,
    /// `comp[(x,y,z)][g][f]` = coordinates of g∘f in Hom(x,z), for basis
    /// g of Hom(y,z) and basis f of Hom(x,y). Triples with an empty table
    /// are omitted (all compositions zero or spaces trivial).
    comp: BTreeMap<(usize, usize, usize), CompTable>,
    /// `id[x]` = coordinates of the identity in Hom(x,x).
    id: Vec<Vec<Scalar>>,
}

impl LinearCategory {
    pub fn new(
        field: Field,
        objects: Vec<String>,
        hom: BTreeMap<(usize, usize), VectorSpace>,
        comp: BTreeMap<(usize, usize, usize), CompTable>,
        id: Vec<Vec<Scalar>>,
    ) -> Result<LinearCategory, Error> {
        let n = objects.len();
        {
            let mut seen = std::collections::BTreeSet::new();
            for o in &objects {
                if !seen.insert(o) {
                    return Err(Error::InvalidInput(format!("duplicate object name: {}", o)));
                }
            }
        }
        if id.len() != n {
            return Err(Error::DimensionMismatch("one identity per object required".into()));
        }
        let cat = LinearCategory { field, objects, hom, comp, id };
        for x in 0..n {
            if cat.id[x].len() != cat.hom_space(x, x).dim() {
                return Err(Error::DimensionMismatch(format!(
                    "identity of {} has wrong length",
                    cat.objects[x]
                )));
            }
        }
        for (&(x, y, z), table) in &cat.comp {
            if x >= n || y >= n || z >= n {
                return Err(Error::UnknownObject("composition table index out of range".into()));
            }
            let (dg, df, dr) = (
                cat.hom_space(y, z).dim(),
                cat.hom_space(x, y).dim(),
                cat.hom_space(x, z).dim(),
            );
            if table.len() != dg
                || table.iter().any(|row| row.len() != df)
                || table.iter().flatten().any(|v| v.len() != dr)
            {
                return Err(Error::DimensionMismatch(format!(
                    "composition table for ({},{},{}) has wrong shape",
                    cat.objects[x], cat.objects[y], cat.objects[z]
                )));
            }
        }
        Ok(cat)
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn object_index(&self, name: &str) -> Result<usize, Error> {
        self.objects
            .iter()
            .position(|o| o == name)
            .ok_or_else(|| Error::UnknownObject(name.to_string()))
    }

    /// The Hom-space from object `x` to object `y` (zero space if absent).
    pub fn hom_space(&self, x: usize, y: usize) -> VectorSpace {
        self.hom
            .get(&(x, y))
            .cloned()
            .unwrap_or_else(|| VectorSpace::zero(self.field))
    }

    pub fn hom_dim(&self, x: usize, y: usize) -> usize {
        self.hom.get(&(x, y)).map_or(0, |s| s.dim())
    }

    pub fn identity(&self, x: usize) -> &[Scalar] {
        &self.id[x]
    }

    /// Bilinear composition: `g ∘ f` for g: y→z and f: x→y in coordinates.
    pub fn compose(&self, x: usize, y: usize, z: usize, g: &[Scalar], f: &[Scalar]) -> Vec<Scalar> {
        let out_dim = self.hom_dim(x, z);
        let mut out = vec![self.field.zero(); out_dim];
        let Some(table) = self.comp.get(&(x, y, z)) else {
            return out;
        };
        for (gi, gc) in g.iter().enumerate() {
            if gc.is_zero() {
                continue;
            }
            for (fi, fc) in f.iter().enumerate() {
                if fc.is_zero() {
                    continue;
                }
                let c = gc * fc;
                for k in 0..out_dim {
                    let t = &c * &table[gi][fi][k];
                    out[k] = &out[k] + &t;
                }
            }
        }
        out
    }

    /// Structure-constant row of `g_i ∘ f_j` for basis indices, without
    /// allocating; `None` means the composite is zero.
    pub fn compose_basis(
        &self,
        x: usize,
        y: usize,
        z: usize,
        g: usize,
        f: usize,
    ) -> Option<&[Scalar]> {
        self.comp.get(&(x, y, z)).map(|t| t[g][f].as_slice())
    }

    /// Matrix of post-composition `g ∘ (—)` : Hom(x,y) → Hom(x,z).
    pub fn postcompose_matrix(&self, x: usize, y: usize, z: usize, g: &[Scalar]) -> LinearMap {
        let domain = self.hom_space(x, y);
        let codomain = self.hom_space(x, z);
        let mut m = LinearMap::zero(domain.clone(), codomain);
        for j in 0..domain.dim() {
            let col = self.compose(x, y, z, g, &domain.basis_vec(j));
            for i in 0..col.len() {
                m.entries[i][j] = col[i].clone();
            }
        }
        m
    }

    /// Matrix of pre-composition `(—) ∘ f` : Hom(y,z) → Hom(x,z).
    pub fn precompose_matrix(&self, x: usize, y: usize, z: usize, f: &[Scalar]) -> LinearMap {
        let domain = self.hom_space(y, z);
        let codomain = self.hom_space(x, z);
        let mut m = LinearMap::zero(domain.clone(), codomain);
        for j in 0..domain.dim() {
            let col = self.compose(x, y, z, &domain.basis_vec(j), f);
            for i in 0..col.len() {
                m.entries[i][j] = col[i].clone();
            }
        }
        m
    }

    /// Raw composition tables (used by serialization).
    pub fn comp_tables(&self) -> &BTreeMap<(usize, usize, usize), CompTable> {
        &self.comp
    }

    pub fn hom_spaces(&self) -> &BTreeMap<(usize, usize), VectorSpace> {
        &self.hom
    }

    /// The opposite category: Homᵒᵖ(x,y) = Hom(y,x), composition reversed.
    /// Basis labels are reused unchanged.
    pub fn opposite(&self) -> LinearCategory {
        let mut hom = BTreeMap::new();
        for (&(x, y), space) in &self.hom {
            hom.insert((y, x), space.clone());
        }
        let mut comp = BTreeMap::new();
        for (&(x, y, z), table) in &self.comp {
            // base: g∘f for f: x→y, g: y→z. In Cᵒᵖ this is the composite
            // fᵒᵖ∘gᵒᵖ for gᵒᵖ: z→y, fᵒᵖ: y→x, stored at (z,y,x) as
            // table_op[f][g].
            let dg = table.len();
            let df = table.first().map_or(0, |r| r.len());
            if dg == 0 || df == 0 {
                continue;
            }
            let table_op: Vec<Vec<Vec<Scalar>>> = (0..df)
                .map(|fi| (0..dg).map(|gi| table[gi][fi].clone()).collect())
                .collect();
            comp.insert((z, y, x), table_op);
        }
        LinearCategory {
            field: self.field,
            objects: self.objects.clone(),
            hom,
            comp,
            id: self.id.clone(),
        }
    }

    /// Full subcategory on the named objects (in the given order).
    pub fn full_subcategory(&self, names: &[String]) -> Result<LinearCategory, Error> {
        let idx: Vec<usize> = names
            .iter()
            .map(|n| self.object_index(n))
            .collect::<Result<_, _>>()?;
        let mut hom = BTreeMap::new();
        for (a, &xa) in idx.iter().enumerate() {
            for (b, &xb) in idx.iter().enumerate() {
                let s = self.hom_space(xa, xb);
                if s.dim() > 0 {
                    hom.insert((a, b), s);
                }
            }
        }
        let mut comp = BTreeMap::new();
        for (a, &xa) in idx.iter().enumerate() {
            for (b, &xb) in idx.iter().enumerate() {
                for (c, &xc) in idx.iter().enumerate() {
                    if let Some(t) = self.comp.get(&(xa, xb, xc)) {
                        if !t.is_empty() && !t[0].is_empty() {
                            comp.insert((a, b, c), t.clone());
                        }
                    }
                }
            }
        }
        let id = idx.iter().map(|&x| self.id[x].clone()).collect();
        LinearCategory::new(self.field, names.to_vec(), hom, comp, id)
    }
}

/// A formal finite coproduct of objects of an underlying category.
/// The empty sum is the zero object. Summand order is significant: it fixes
/// the block layout of Hom-spaces between sums.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FormalSumObject {
    pub summands: Vec<String>,
}

impl FormalSumObject {
    pub fn new(summands: Vec<String>) -> FormalSumObject {
        FormalSumObject { summands }
    }

    pub fn singleton(name: &str) -> FormalSumObject {
        FormalSumObject { summands: vec![name.to_string()] }
    }

    pub fn zero() -> FormalSumObject {
        FormalSumObject { summands: Vec::new() }
    }

    /// Canonical sorted copy, used where summand order is irrelevant.
    pub fn canonical(&self) -> FormalSumObject {
        let mut s = self.summands.clone();
        s.sort();
        FormalSumObject { summands: s }
    }

    pub fn name(&self) -> String {
        if self.summands.is_empty() {
            "0".to_string()
        } else {
            self.summands.join("⊕")
        }
    }
}

impl fmt::Display for FormalSumObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// An additive closure: the category of the given formal sums, with block
/// Hom-spaces and block-matrix composition. Retains the block layout so
/// callers can address components.
#[derive(Debug, Clone)]
pub struct AdditiveClosure {
    pub cat: LinearCategory,
    pub base_objects: Vec<String>,
    pub sums: Vec<FormalSumObject>,
    /// `summand_index[i]` = base-category object index of each summand of
    /// sum `i`.
    pub summand_indices: Vec<Vec<usize>>,
}

impl AdditiveClosure {
    /// Offset and length of the block Hom(summand si of sum a, summand tj
    /// of sum b) inside the basis of Hom(a, b).
    pub fn block_range(
        &self,
        base: &LinearCategory,
        a: usize,
        b: usize,
        si: usize,
        tj: usize,
    ) -> std::ops::Range<usize> {
        block_range_for(base, &self.summand_indices[a], &self.summand_indices[b], si, tj)
    }
}

fn block_range_for(
    base: &LinearCategory,
    src: &[usize],
    tgt: &[usize],
    si: usize,
    tj: usize,
) -> std::ops::Range<usize> {
    let mut offset = 0;
    for (s, &sx) in src.iter().enumerate() {
        for (t, &ty) in tgt.iter().enumerate() {
            let d = base.hom_dim(sx, ty);
            if s == si && t == tj {
                return offset..offset + d;
            }
            offset += d;
        }
    }
    offset..offset
}

/// Builds the additive closure of `base` on the given formal sums.
///
/// Hom(⊕ᵢXᵢ, ⊕ⱼYⱼ) is the direct sum of the component Hom(Xᵢ, Yⱼ) in
/// (source summand, target summand)-lexicographic order; composition is
/// block-matrix composition.
pub fn additive_closure(
    base: &LinearCategory,
    sums: &[FormalSumObject],
) -> Result<AdditiveClosure, Error> {
    let summand_indices: Vec<Vec<usize>> = sums
        .iter()
        .map(|s| s.summands.iter().map(|n| base.object_index(n)).collect::<Result<_, _>>())
        .collect::<Result<_, _>>()?;
    let names: Vec<String> = sums.iter().map(|s| s.name()).collect();
    {
        let mut seen = std::collections::BTreeSet::new();
        for n in &names {
            if !seen.insert(n.clone()) {
                return Err(Error::InvalidInput(format!(
                    "duplicate formal sum object: {}",
                    n
                )));
            }
        }
    }
    let n = sums.len();
    let mut hom = BTreeMap::new();
    for a in 0..n {
        for b in 0..n {
            let mut labels = Vec::new();
            for (si, &sx) in summand_indices[a].iter().enumerate() {
                for (tj, &ty) in summand_indices[b].iter().enumerate() {
                    for l in &base.hom_space(sx, ty).labels {
                        labels.push(format!("[{}>{}]{}", si, tj, l));
                    }
                }
            }
            if !labels.is_empty() {
                hom.insert((a, b), VectorSpace::new(base.field, labels)?);
            }
        }
    }

    // composition tables: block-matrix composition
    let mut comp = BTreeMap::new();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let df = hom.get(&(a, b)).map_or(0, |s| s.dim());
                let dg = hom.get(&(b, c)).map_or(0, |s| s.dim());
                let dr = hom.get(&(a, c)).map_or(0, |s| s.dim());
                if df == 0 || dg == 0 || dr == 0 {
                    continue;
                }
                let mut table = vec![vec![vec![base.field.zero(); dr]; df]; dg];
                // basis g lives in block (sb -> sc), basis f in (sa -> sb);
                // composite nonzero only when the middle summands agree.
                for (sb, &yb) in summand_indices[b].iter().enumerate() {
                    for (sc, &zc) in summand_indices[c].iter().enumerate() {
                        let g_range =
                            block_range_for(base, &summand_indices[b], &summand_indices[c], sb, sc);
                        for (sa, &xa) in summand_indices[a].iter().enumerate() {
                            let f_range = block_range_for(
                                base,
                                &summand_indices[a],
                                &summand_indices[b],
                                sa,
                                sb,
                            );
                            let r_range = block_range_for(
                                base,
                                &summand_indices[a],
                                &summand_indices[c],
                                sa,
                                sc,
                            );
                            let gspace = base.hom_space(yb, zc);
                            let fspace = base.hom_space(xa, yb);
                            for (gi, gofs) in g_range.clone().enumerate() {
                                for (fi, fofs) in f_range.clone().enumerate() {
                                    let res = base.compose(
                                        xa,
                                        yb,
                                        zc,
                                        &gspace.basis_vec(gi),
                                        &fspace.basis_vec(fi),
                                    );
                                    for (k, rofs) in r_range.clone().enumerate() {
                                        table[gofs][fofs][rofs] = res[k].clone();
                                    }
                                }
                            }
                        }
                    }
                }
                comp.insert((a, b, c), table);
            }
        }
    }

    // identities: diagonal blocks
    let mut id = Vec::with_capacity(n);
    for a in 0..n {
        let dim = hom.get(&(a, a)).map_or(0, |s| s.dim());
        let mut v = vec![base.field.zero(); dim];
        for (si, &x) in summand_indices[a].iter().enumerate() {
            let range = block_range_for(base, &summand_indices[a], &summand_indices[a], si, si);
            let idx = base.identity(x);
            for (k, ofs) in range.enumerate() {
                v[ofs] = idx[k].clone();
            }
        }
        id.push(v);
    }

    let cat = LinearCategory::new(base.field, names, hom, comp, id)?;
    Ok(AdditiveClosure { cat, base_objects: base.objects.clone(), sums: sums.to_vec(), summand_indices })
}

/// One failed axiom instance, named by the basis elements involved.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub enum AxiomFailure {
    Associativity {
        objects: (String, String, String, String),
        basis: (String, String, String),
    },
    LeftIdentity { object_pair: (String, String), basis: String },
    RightIdentity { object_pair: (String, String), basis: String },
    IdentityNotIdempotent { object: String },
}

impl fmt::Display for AxiomFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomFailure::Associativity { objects, basis } => write!(
                f,
                "associativity fails on ({}→{}→{}→{}) with basis ({}, {}, {})",
                objects.0, objects.1, objects.2, objects.3, basis.0, basis.1, basis.2
            ),
            AxiomFailure::LeftIdentity { object_pair, basis } => write!(
                f,
                "left identity law fails on {}→{} at basis {}",
                object_pair.0, object_pair.1, basis
            ),
            AxiomFailure::RightIdentity { object_pair, basis } => write!(
                f,
                "right identity law fails on {}→{} at basis {}",
                object_pair.0, object_pair.1, basis
            ),
            AxiomFailure::IdentityNotIdempotent { object } => {
                write!(f, "identity of {} is not idempotent", object)
            }
        }
    }
}

/// Result of an exhaustive axioms check; empty failure list means pass.
#[derive(Debug, Clone, Default)]
pub struct AxiomReport {
    pub failures: Vec<AxiomFailure>,
}

impl AxiomReport {
    pub fn is_pass(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Exhaustively checks associativity on all basis triples and the identity
/// laws on all basis elements.
pub fn check_category_axioms(cat: &LinearCategory) -> AxiomReport {
    let n = cat.object_count();
    let mut failures = Vec::new();
    for w in 0..n {
        for x in 0..n {
            if cat.hom_dim(w, x) == 0 {
                continue;
            }
            for y in 0..n {
                if cat.hom_dim(x, y) == 0 {
                    continue;
                }
                for z in 0..n {
                    if cat.hom_dim(y, z) == 0 {
                        continue;
                    }
                    let fs = cat.hom_space(w, x);
                    let gs = cat.hom_space(x, y);
                    let hs = cat.hom_space(y, z);
                    for fi in 0..fs.dim() {
                        let f = fs.basis_vec(fi);
                        for gi in 0..gs.dim() {
                            let g = gs.basis_vec(gi);
                            let gf = cat.compose(w, x, y, &g, &f);
                            for hi in 0..hs.dim() {
                                let h = hs.basis_vec(hi);
                                let lhs = cat.compose(w, y, z, &h, &gf);
                                let hg = cat.compose(x, y, z, &h, &g);
                                let rhs = cat.compose(w, x, z, &hg, &f);
                                if lhs != rhs {
                                    failures.push(AxiomFailure::Associativity {
                                        objects: (
                                            cat.objects[w].clone(),
                                            cat.objects[x].clone(),
                                            cat.objects[y].clone(),
                                            cat.objects[z].clone(),
                                        ),
                                        basis: (
                                            fs.labels[fi].clone(),
                                            gs.labels[gi].clone(),
                                            hs.labels[hi].clone(),
                                        ),
                                    });
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            let space = cat.hom_space(x, y);
            for fi in 0..space.dim() {
                let f = space.basis_vec(fi);
                if cat.compose(x, y, y, cat.identity(y), &f) != f {
                    failures.push(AxiomFailure::LeftIdentity {
                        object_pair: (cat.objects[x].clone(), cat.objects[y].clone()),
                        basis: space.labels[fi].clone(),
                    });
                }
                if cat.compose(x, x, y, &f, cat.identity(x)) != f {
                    failures.push(AxiomFailure::RightIdentity {
                        object_pair: (cat.objects[x].clone(), cat.objects[y].clone()),
                        basis: space.labels[fi].clone(),
                    });
                }
            }
        }
    }
    AxiomReport { failures }
}

/// The endomorphism algebra of a single object.
pub fn end_algebra(cat: &LinearCategory, x: usize) -> FiniteAlgebra {
    let space = cat.hom_space(x, x);
    let dim = space.dim();
    let mut mult = vec![vec![Vec::new(); dim]; dim];
    for i in 0..dim {
        for j in 0..dim {
            mult[i][j] = cat.compose(x, x, x, &space.basis_vec(i), &space.basis_vec(j));
        }
    }
    let unit = cat.identity(x).to_vec();
    FiniteAlgebra { space, mult, unit }
}

/// The endomorphism algebra of a formal sum, built through the additive
/// closure.
pub fn end_algebra_of_sum(
    cat: &LinearCategory,
    sum: &FormalSumObject,
) -> Result<FiniteAlgebra, Error> {
    let closure = additive_closure(cat, std::slice::from_ref(sum))?;
    Ok(end_algebra(&closure.cat, 0))
}

/// The categorical radical rad(X, Y) ⊆ Hom(X, Y), computed as the block of
/// the Jacobson radical of End(X ⊕ Y): for j ∈ J(End(X⊕Y)), the component
/// e_Y ∘ j ∘ e_X lies in J and in the (X→Y) block, and those components
/// span exactly rad(X, Y).
pub fn radical_subspace(
    cat: &LinearCategory,
    x: usize,
    y: usize,
) -> Result<EchelonBasis, Error> {
    let sum = FormalSumObject::new(vec![cat.objects[x].clone(), cat.objects[y].clone()]);
    let closure = additive_closure(cat, &[sum])?;
    let alg = end_algebra(&closure.cat, 0);
    let rad = jacobson_radical(&alg)?;
    let block = closure.block_range(cat, 0, 0, 0, 1);
    let target_dim = cat.hom_dim(x, y);
    debug_assert_eq!(block.len(), target_dim);
    let vectors: Vec<Vec<Scalar>> = rad
        .iter()
        .map(|j| block.clone().map(|c| j[c].clone()).collect())
        .collect();
    Ok(EchelonBasis::span(cat.field, target_dim, &vectors))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// A2 path category built by hand: objects t, u; Hom(t,u) = <a>.
    pub(crate) fn a2_by_hand() -> LinearCategory {
        let field = Field::Rationals;
        let one = || field.one();
        let mut hom = BTreeMap::new();
        hom.insert((0, 0), VectorSpace::new(field, vec!["id_t".into()]).unwrap());
        hom.insert((1, 1), VectorSpace::new(field, vec!["id_u".into()]).unwrap());
        hom.insert((0, 1), VectorSpace::new(field, vec!["a".into()]).unwrap());
        let mut comp = BTreeMap::new();
        comp.insert((0, 0, 0), vec![vec![vec![one()]]]);
        comp.insert((1, 1, 1), vec![vec![vec![one()]]]);
        comp.insert((0, 0, 1), vec![vec![vec![one()]]]); // a ∘ id_t = a
        comp.insert((0, 1, 1), vec![vec![vec![one()]]]); // id_u ∘ a = a
        let id = vec![vec![one()], vec![one()]];
        LinearCategory::new(field, vec!["t".into(), "u".into()], hom, comp, id).unwrap()
    }

    #[test]
    fn a2_passes_axioms() {
        assert!(check_category_axioms(&a2_by_hand()).is_pass());
    }

    #[test]
    fn corrupted_structure_constant_fails_axioms() {
        let mut cat = a2_by_hand();
        // break the left identity law: id_u ∘ a = 2a
        let two = cat.field.from_i64(2);
        cat.comp.insert((0, 1, 1), vec![vec![vec![two]]]);
        let report = check_category_axioms(&cat);
        assert!(!report.is_pass());
        assert!(report
            .failures
            .iter()
            .any(|f| matches!(f, AxiomFailure::LeftIdentity { .. })));
    }

    #[test]
    fn corrupted_composite_breaks_associativity_exactly_once() {
        // A4 chain 1→2→3→4: rescaling only b∘a makes (c∘b)∘a ≠ c∘(b∘a)
        // on exactly the one basis triple (a, b, c)
        let q = crate::quiver::parse_quiver(
            "field Q\nvertex 1\nvertex 2\nvertex 3\nvertex 4\narrow a : 1 -> 2\narrow b : 2 -> 3\narrow c : 3 -> 4\n",
        )
        .unwrap();
        let mut cat = crate::quiver::path_category(&q).unwrap();
        let two = cat.field.from_i64(2);
        cat.comp.insert((0, 1, 2), vec![vec![vec![two]]]);
        let report = check_category_axioms(&cat);
        let assoc: Vec<_> = report
            .failures
            .iter()
            .filter(|f| matches!(f, AxiomFailure::Associativity { .. }))
            .collect();
        assert_eq!(assoc.len(), 1);
        match assoc[0] {
            AxiomFailure::Associativity { basis, .. } => {
                assert_eq!(basis, &("a".to_string(), "b".to_string(), "c".to_string()));
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn additive_closure_singletons_copy_category() {
        let cat = a2_by_hand();
        let sums = vec![FormalSumObject::singleton("t"), FormalSumObject::singleton("u")];
        let closure = additive_closure(&cat, &sums).unwrap();
        assert!(check_category_axioms(&closure.cat).is_pass());
        assert_eq!(closure.cat.hom_dim(0, 1), 1);
        assert_eq!(closure.cat.hom_dim(1, 0), 0);
    }

    #[test]
    fn additive_closure_doubles() {
        let cat = a2_by_hand();
        // t ⊕ t has End of dim 4 (2x2 matrices over End(t) = K)
        let closure = additive_closure(
            &cat,
            &[FormalSumObject::new(vec!["t".into(), "t".into()])],
        )
        .unwrap();
        assert_eq!(closure.cat.hom_dim(0, 0), 4);
        assert!(check_category_axioms(&closure.cat).is_pass());
        let alg = end_algebra(&closure.cat, 0);
        assert!(alg.check().is_empty());
    }

    #[test]
    fn additive_closure_block_hom_count() {
        let cat = a2_by_hand();
        // Hom(t ⊕ u, u) has dim 1 + 1 = 2
        let closure = additive_closure(
            &cat,
            &[
                FormalSumObject::new(vec!["t".into(), "u".into()]),
                FormalSumObject::singleton("u"),
            ],
        )
        .unwrap();
        assert_eq!(closure.cat.hom_dim(0, 1), 2);
    }

    #[test]
    fn additive_closure_is_idempotent_on_objects() {
        // closing the closure with singleton sums reproduces the same
        // Hom dimensions and composition tables under the canonical
        // relabeling
        let cat = a2_by_hand();
        let first = additive_closure(
            &cat,
            &[
                FormalSumObject::new(vec!["t".into(), "u".into()]),
                FormalSumObject::singleton("u"),
            ],
        )
        .unwrap();
        let names: Vec<FormalSumObject> = first
            .cat
            .objects
            .iter()
            .map(|n| FormalSumObject::singleton(n))
            .collect();
        let second = additive_closure(&first.cat, &names).unwrap();
        for x in 0..first.cat.object_count() {
            for y in 0..first.cat.object_count() {
                assert_eq!(first.cat.hom_dim(x, y), second.cat.hom_dim(x, y));
            }
        }
        for (key, table) in first.cat.comp_tables() {
            let second_table = &second.cat.comp_tables()[key];
            assert_eq!(table, second_table);
        }
        assert!(check_category_axioms(&second.cat).is_pass());
    }

    #[test]
    fn zero_object_in_closure() {
        let cat = a2_by_hand();
        let closure = additive_closure(
            &cat,
            &[FormalSumObject::zero(), FormalSumObject::singleton("t")],
        )
        .unwrap();
        assert_eq!(closure.cat.hom_dim(0, 0), 0);
        assert_eq!(closure.cat.hom_dim(0, 1), 0);
        assert_eq!(closure.cat.hom_dim(1, 0), 0);
        assert!(check_category_axioms(&closure.cat).is_pass());
    }

    #[test]
    fn end_algebras_of_a2() {
        let cat = a2_by_hand();
        let end_t = end_algebra(&cat, 0);
        assert_eq!(end_t.dim(), 1);
        // End(t ⊕ u) is 3-dimensional, isomorphic to lower-triangular 2x2
        let alg = end_algebra_of_sum(&cat, &FormalSumObject::new(vec!["t".into(), "u".into()]))
            .unwrap();
        assert_eq!(alg.dim(), 3);
        assert!(alg.check().is_empty());
        let rad = jacobson_radical(&alg).unwrap();
        assert_eq!(rad.len(), 1);
    }

    #[test]
    fn radical_of_a2() {
        let cat = a2_by_hand();
        // rad(t,t) = 0: End(t) = K is semisimple
        assert_eq!(radical_subspace(&cat, 0, 0).unwrap().dim(), 0);
        // rad(t,u) = all of Hom(t,u): J of lower-triangular 2x2 is the
        // strictly lower part
        assert_eq!(radical_subspace(&cat, 0, 1).unwrap().dim(), 1);
        // rad(u,t) = 0 since Hom(u,t) = 0
        assert_eq!(radical_subspace(&cat, 1, 0).unwrap().dim(), 0);
    }

    #[test]
    fn radical_definitional_test() {
        // for r in rad(X,Y) and any g in Hom(Y,X): 1_X - g∘r invertible
        let cat = a2_by_hand();
        for x in 0..2 {
            for y in 0..2 {
                let rad = radical_subspace(&cat, x, y).unwrap();
                let back = cat.hom_space(y, x);
                for r in &rad.rows {
                    for gi in 0..back.dim() {
                        let g = back.basis_vec(gi);
                        let gr = cat.compose(x, y, x, &g, r);
                        let m = crate::linalg::vec_sub(cat.identity(x), &gr);
                        let left = end_algebra(&cat, x).left_mult_matrix(&m);
                        assert!(left.is_invertible());
                    }
                }
            }
        }
    }

    #[test]
    fn opposite_involution() {
        let cat = a2_by_hand();
        let op = cat.opposite();
        assert!(check_category_axioms(&op).is_pass());
        assert_eq!(op.hom_dim(1, 0), 1);
        assert_eq!(op.hom_dim(0, 1), 0);
        let opop = op.opposite();
        assert_eq!(opop.hom_dim(0, 1), cat.hom_dim(0, 1));
        assert_eq!(opop.comp_tables(), cat.comp_tables());
    }

    #[test]
    fn full_subcategory_restricts() {
        let cat = a2_by_hand();
        let sub = cat.full_subcategory(&["u".into()]).unwrap();
        assert_eq!(sub.object_count(), 1);
        assert_eq!(sub.hom_dim(0, 0), 1);
        assert!(check_category_axioms(&sub).is_pass());
        assert!(cat.full_subcategory(&["nope".into()]).is_err());
    }
}
