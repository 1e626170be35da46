//! Finite modules over a K-linear category: K-linear functors into
//! finite-dimensional vector spaces.
//!
//! A module is given by one space per object and one matrix per basis
//! morphism; actions of arbitrary morphisms are derived bilinearly, and
//! functoriality is a checkable property, not an assumption.
//!
//! `hom_modules` solves the naturality system
//! `N(a) ∘ η_X = η_Y ∘ M(a)` for every basis morphism `a: X → Y` as one
//! exact linear system and returns the canonical echelon basis of natural
//! transformations, ordered by object then matrix entry. Everything
//! downstream (the functors 𝔾 and 𝔽, adjunctions, duality checks) rides on
//! this solver.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::Rng;

use crate::category::LinearCategory;
use crate::error::Error;
use crate::field::Scalar;
use crate::linalg::{
    cokernel, kernel, vec_is_zero, EchelonBasis, LinearMap, VectorSpace,
};

/// A K-linear functor from `base` to finite-dimensional vector spaces.
#[derive(Debug, Clone)]
pub struct FiniteModule {
    pub base: Arc<LinearCategory>,
    pub value: Vec<VectorSpace>,
    /// `action[(x, y, k)]`: the matrix of the k-th basis morphism of
    /// Hom(x, y). Missing entries are zero maps.
    action: BTreeMap<(usize, usize, usize), LinearMap>,
}

impl FiniteModule {
    pub fn new(
        base: Arc<LinearCategory>,
        value: Vec<VectorSpace>,
        action: BTreeMap<(usize, usize, usize), LinearMap>,
    ) -> Result<FiniteModule, Error> {
        if value.len() != base.object_count() {
            return Err(Error::InvalidModule(
                "one value space per object required".into(),
            ));
        }
        for (&(x, y, k), m) in &action {
            if x >= value.len() || y >= value.len() || k >= base.hom_dim(x, y) {
                return Err(Error::InvalidModule(format!(
                    "action key ({}, {}, {}) out of range",
                    x, y, k
                )));
            }
            if m.domain.dim() != value[x].dim() || m.codomain.dim() != value[y].dim() {
                return Err(Error::InvalidModule(format!(
                    "action matrix for basis {} of Hom({}, {}) has wrong shape",
                    base.hom_space(x, y).labels[k],
                    base.objects[x],
                    base.objects[y]
                )));
            }
        }
        Ok(FiniteModule { base, value, action })
    }

    pub fn zero(base: Arc<LinearCategory>) -> FiniteModule {
        let field = base.field;
        let value = vec![VectorSpace::zero(field); base.object_count()];
        FiniteModule { base, value, action: BTreeMap::new() }
    }

    /// The representable module Hom(x, —).
    pub fn representable(base: Arc<LinearCategory>, x: usize) -> FiniteModule {
        let mut action = BTreeMap::new();
        for y in 0..base.object_count() {
            for z in 0..base.object_count() {
                let space = base.hom_space(y, z);
                for k in 0..space.dim() {
                    let m = base.postcompose_matrix(x, y, z, &space.basis_vec(k));
                    if !m.is_zero() {
                        action.insert((y, z, k), m);
                    }
                }
            }
        }
        let value = (0..base.object_count()).map(|y| base.hom_space(x, y)).collect();
        FiniteModule { base, value, action }
    }

    pub fn dim_at(&self, x: usize) -> usize {
        self.value[x].dim()
    }

    pub fn total_dim(&self) -> usize {
        self.value.iter().map(|v| v.dim()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    /// Matrix of the k-th basis morphism of Hom(x, y).
    pub fn action_basis(&self, x: usize, y: usize, k: usize) -> LinearMap {
        self.action.get(&(x, y, k)).cloned().unwrap_or_else(|| {
            LinearMap::zero(self.value[x].clone(), self.value[y].clone())
        })
    }

    /// Matrix of an arbitrary morphism given in coordinates.
    pub fn action_of(&self, x: usize, y: usize, coords: &[Scalar]) -> LinearMap {
        let mut out = LinearMap::zero(self.value[x].clone(), self.value[y].clone());
        for (k, c) in coords.iter().enumerate() {
            if !c.is_zero() {
                out = out.add(&self.action_basis(x, y, k).scale(c));
            }
        }
        out
    }

    pub fn action_entries(&self) -> &BTreeMap<(usize, usize, usize), LinearMap> {
        &self.action
    }

    /// Fills in the action of identity basis morphisms as identity
    /// matrices where absent. Only applies when the identity element of an
    /// object is a single basis vector (as in path categories); lets
    /// callers specify a module by its arrow actions alone.
    pub fn fill_identity_actions(&mut self) {
        for x in 0..self.base.object_count() {
            let id = self.base.identity(x);
            let nonzero: Vec<usize> = id
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, _)| k)
                .collect();
            if let [k] = nonzero[..] {
                if id[k].is_one() && !self.action.contains_key(&(x, x, k)) {
                    self.action
                        .insert((x, x, k), LinearMap::identity(&self.value[x]));
                }
            }
        }
    }

    /// Exhaustive functoriality check: identities act as identities and
    /// the action respects composition on all basis pairs. Returns the
    /// violations (empty = functorial).
    pub fn check_functorial(&self) -> Vec<String> {
        let cat = &self.base;
        let n = cat.object_count();
        let mut failures = Vec::new();
        for x in 0..n {
            let idm = self.action_of(x, x, cat.identity(x));
            if idm.entries != LinearMap::identity(&self.value[x]).entries {
                failures.push(format!("identity of {} does not act as identity", cat.objects[x]));
            }
        }
        for x in 0..n {
            for y in 0..n {
                let fs = cat.hom_space(x, y);
                if fs.dim() == 0 {
                    continue;
                }
                for z in 0..n {
                    let gs = cat.hom_space(y, z);
                    if gs.dim() == 0 {
                        continue;
                    }
                    for fk in 0..fs.dim() {
                        for gk in 0..gs.dim() {
                            let composite =
                                cat.compose(x, y, z, &gs.basis_vec(gk), &fs.basis_vec(fk));
                            let lhs = self.action_of(x, z, &composite);
                            let rhs = self
                                .action_basis(y, z, gk)
                                .compose(&self.action_basis(x, y, fk));
                            if lhs.entries != rhs.entries {
                                failures.push(format!(
                                    "action not multiplicative on {} ∘ {} ({}→{}→{})",
                                    gs.labels[gk],
                                    fs.labels[fk],
                                    cat.objects[x],
                                    cat.objects[y],
                                    cat.objects[z]
                                ));
                            }
                        }
                    }
                }
            }
        }
        failures
    }
}

/// A natural transformation between two modules over the same base,
/// stored as one component map per object.
#[derive(Debug, Clone, PartialEq)]
pub struct NatTransform {
    pub components: Vec<LinearMap>,
}

impl NatTransform {
    pub fn identity(m: &FiniteModule) -> NatTransform {
        NatTransform {
            components: m.value.iter().map(LinearMap::identity).collect(),
        }
    }

    pub fn zero(source: &FiniteModule, target: &FiniteModule) -> NatTransform {
        NatTransform {
            components: source
                .value
                .iter()
                .zip(&target.value)
                .map(|(s, t)| LinearMap::zero(s.clone(), t.clone()))
                .collect(),
        }
    }

    /// `self ∘ other` componentwise.
    pub fn compose(&self, other: &NatTransform) -> NatTransform {
        NatTransform {
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a.compose(b))
                .collect(),
        }
    }

    pub fn add(&self, other: &NatTransform) -> NatTransform {
        NatTransform {
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> NatTransform {
        NatTransform {
            components: self.components.iter().map(|m| m.scale(c)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|m| m.is_zero())
    }

    pub fn is_objectwise_surjective(&self) -> bool {
        self.components.iter().all(|m| m.is_surjective())
    }

    pub fn is_objectwise_iso(&self) -> bool {
        self.components.iter().all(|m| m.is_invertible())
    }

    /// Naturality violations of `self` viewed as a map `source → target`.
    pub fn check_natural(&self, source: &FiniteModule, target: &FiniteModule) -> Vec<String> {
        let cat = &source.base;
        let mut failures = Vec::new();
        for x in 0..cat.object_count() {
            for y in 0..cat.object_count() {
                let space = cat.hom_space(x, y);
                for k in 0..space.dim() {
                    let lhs = target.action_basis(x, y, k).compose(&self.components[x]);
                    let rhs = self.components[y].compose(&source.action_basis(x, y, k));
                    if lhs.entries != rhs.entries {
                        failures.push(format!(
                            "naturality fails at basis {} of Hom({}, {})",
                            space.labels[k], cat.objects[x], cat.objects[y]
                        ));
                    }
                }
            }
        }
        failures
    }

    /// Flattens to a vector in the unknown layout used by `hom_modules`.
    fn to_vec(&self) -> Vec<Scalar> {
        let mut v = Vec::new();
        for m in &self.components {
            for row in &m.entries {
                v.extend(row.iter().cloned());
            }
        }
        v
    }

    fn from_vec(source: &FiniteModule, target: &FiniteModule, v: &[Scalar]) -> NatTransform {
        let mut components = Vec::new();
        let mut pos = 0;
        for x in 0..source.value.len() {
            let rows = target.value[x].dim();
            let cols = source.value[x].dim();
            let mut m = LinearMap::zero(source.value[x].clone(), target.value[x].clone());
            for r in 0..rows {
                for c in 0..cols {
                    m.entries[r][c] = v[pos].clone();
                    pos += 1;
                }
            }
            components.push(m);
        }
        NatTransform { components }
    }
}

/// The solved Hom-space between two modules: a canonical basis of natural
/// transformations plus the echelon data needed to express arbitrary
/// natural transformations in that basis.
#[derive(Debug, Clone)]
pub struct HomSolution {
    pub space: VectorSpace,
    pub basis: Vec<NatTransform>,
    echelon: EchelonBasis,
}

impl HomSolution {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of a natural transformation in the solved basis.
    pub fn coords_of(&self, nat: &NatTransform) -> Option<Vec<Scalar>> {
        self.echelon.coords_of(&nat.to_vec())
    }

    /// The transformation with the given coordinates.
    pub fn combine(
        &self,
        source: &FiniteModule,
        target: &FiniteModule,
        coords: &[Scalar],
    ) -> NatTransform {
        let v = self.echelon.combine(coords);
        NatTransform::from_vec(source, target, &v)
    }
}

/// Solves for all natural transformations `a → b`.
pub fn hom_modules(a: &FiniteModule, b: &FiniteModule) -> Result<HomSolution, Error> {
    if !Arc::ptr_eq(&a.base, &b.base) && a.base.objects != b.base.objects {
        return Err(Error::InvalidInput(
            "hom_modules requires modules over the same base category".into(),
        ));
    }
    let cat = &a.base;
    let field = cat.field;
    let n = cat.object_count();
    // unknown layout: for each object x, the entries of η_x row-major
    let mut offsets = Vec::with_capacity(n);
    let mut total = 0usize;
    for x in 0..n {
        offsets.push(total);
        total += b.value[x].dim() * a.value[x].dim();
    }
    let entry_index = |x: usize, r: usize, c: usize| offsets[x] + r * a.value[x].dim() + c;

    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for x in 0..n {
        for y in 0..n {
            let space = cat.hom_space(x, y);
            for k in 0..space.dim() {
                let am = a.action_basis(x, y, k);
                let bm = b.action_basis(x, y, k);
                // B(m) η_x - η_y A(m) = 0, entry (r, c): r over b.value[y], c over a.value[x]
                for r in 0..b.value[y].dim() {
                    for c in 0..a.value[x].dim() {
                        let mut row = vec![field.zero(); total];
                        for s in 0..b.value[x].dim() {
                            let coeff = &bm.entries[r][s];
                            if !coeff.is_zero() {
                                let idx = entry_index(x, s, c);
                                row[idx] = &row[idx] + coeff;
                            }
                        }
                        for s in 0..a.value[y].dim() {
                            let coeff = &am.entries[s][c];
                            if !coeff.is_zero() {
                                let idx = entry_index(y, r, s);
                                row[idx] = &row[idx] - coeff;
                            }
                        }
                        if !vec_is_zero(&row) {
                            rows.push(row);
                        }
                    }
                }
            }
        }
    }

    let system = LinearMap::new(
        VectorSpace::numbered(field, "v", total),
        VectorSpace::numbered(field, "e", rows.len()),
        rows,
    )?;
    let sol = kernel(&system);
    let echelon = EchelonBasis::span(field, total, &sol);
    let basis: Vec<NatTransform> = echelon
        .rows
        .iter()
        .map(|v| NatTransform::from_vec(a, b, v))
        .collect();
    let space = VectorSpace::numbered(field, "nat", basis.len());
    Ok(HomSolution { space, basis, echelon })
}

/// A direct sum of modules, with the block layout retained.
#[derive(Debug, Clone)]
pub struct ModuleSum {
    pub module: FiniteModule,
    /// `ranges[i][x]` = coordinate range of summand i inside value(x).
    pub ranges: Vec<Vec<std::ops::Range<usize>>>,
}

impl ModuleSum {
    pub fn inclusion(&self, summands: &[FiniteModule], i: usize) -> NatTransform {
        let components = (0..self.module.value.len())
            .map(|x| {
                let mut m = LinearMap::zero(
                    summands[i].value[x].clone(),
                    self.module.value[x].clone(),
                );
                for (local, global) in self.ranges[i][x].clone().enumerate() {
                    m.entries[global][local] = self.module.base.field.one();
                }
                m
            })
            .collect();
        NatTransform { components }
    }

    pub fn projection(&self, summands: &[FiniteModule], i: usize) -> NatTransform {
        let components = (0..self.module.value.len())
            .map(|x| {
                let mut m = LinearMap::zero(
                    self.module.value[x].clone(),
                    summands[i].value[x].clone(),
                );
                for (local, global) in self.ranges[i][x].clone().enumerate() {
                    m.entries[local][global] = self.module.base.field.one();
                }
                m
            })
            .collect();
        NatTransform { components }
    }
}

/// Direct sum with block-diagonal action. Labels are prefixed `s{i}.`.
pub fn direct_sum(base: Arc<LinearCategory>, summands: &[FiniteModule]) -> ModuleSum {
    let field = base.field;
    let n = base.object_count();
    let mut value = Vec::with_capacity(n);
    let mut ranges = vec![Vec::with_capacity(n); summands.len()];
    for x in 0..n {
        let mut labels = Vec::new();
        for (i, m) in summands.iter().enumerate() {
            let start = labels.len();
            for l in &m.value[x].labels {
                labels.push(format!("s{}.{}", i, l));
            }
            ranges[i].push(start..labels.len());
        }
        value.push(VectorSpace { field, labels });
    }
    let mut action = BTreeMap::new();
    for x in 0..n {
        for y in 0..n {
            for k in 0..base.hom_dim(x, y) {
                let mut m = LinearMap::zero(value[x].clone(), value[y].clone());
                let mut nonzero = false;
                for (i, s) in summands.iter().enumerate() {
                    let block = s.action_basis(x, y, k);
                    if block.is_zero() {
                        continue;
                    }
                    nonzero = true;
                    for (r, gr) in ranges[i][y].clone().enumerate() {
                        for (c, gc) in ranges[i][x].clone().enumerate() {
                            m.entries[gr][gc] = block.entries[r][c].clone();
                        }
                    }
                }
                if nonzero {
                    action.insert((x, y, k), m);
                }
            }
        }
    }
    ModuleSum {
        module: FiniteModule { base, value, action },
        ranges,
    }
}

/// Kernel of a natural transformation, with its inclusion. The kernel basis
/// at each object is canonical (echelon) and labelled `k0, k1, ...`.
pub fn kernel_module(
    source: &FiniteModule,
    nat: &NatTransform,
) -> (FiniteModule, NatTransform) {
    let base = Arc::clone(&source.base);
    let field = base.field;
    let n = base.object_count();
    let mut bases = Vec::with_capacity(n);
    let mut value = Vec::with_capacity(n);
    for x in 0..n {
        let k = kernel(&nat.components[x]);
        let eb = EchelonBasis::span(field, source.value[x].dim(), &k);
        value.push(VectorSpace::numbered(field, "k", eb.dim()));
        bases.push(eb);
    }
    let mut action = BTreeMap::new();
    for x in 0..n {
        for y in 0..n {
            for k in 0..base.hom_dim(x, y) {
                let am = source.action_basis(x, y, k);
                let mut m = LinearMap::zero(value[x].clone(), value[y].clone());
                let mut nonzero = false;
                for (j, kv) in bases[x].rows.iter().enumerate() {
                    let image = am.apply(kv);
                    let coords = bases[y]
                        .coords_of(&image)
                        .expect("naturality: action must preserve kernels");
                    for (i, c) in coords.iter().enumerate() {
                        if !c.is_zero() {
                            nonzero = true;
                        }
                        m.entries[i][j] = c.clone();
                    }
                }
                if nonzero {
                    action.insert((x, y, k), m);
                }
            }
        }
    }
    let module = FiniteModule { base, value, action };
    let inclusion = NatTransform {
        components: (0..n)
            .map(|x| {
                let mut m = LinearMap::zero(module.value[x].clone(), source.value[x].clone());
                for (j, kv) in bases[x].rows.iter().enumerate() {
                    for (i, c) in kv.iter().enumerate() {
                        m.entries[i][j] = c.clone();
                    }
                }
                m
            })
            .collect(),
    };
    (module, inclusion)
}

/// Cokernel of a natural transformation, with its projection and the
/// canonical objectwise section of the projection.
pub fn cokernel_module(
    target: &FiniteModule,
    nat: &NatTransform,
) -> (FiniteModule, NatTransform, Vec<LinearMap>) {
    let base = Arc::clone(&target.base);
    let n = base.object_count();
    let cokers: Vec<_> = (0..n).map(|x| cokernel(&nat.components[x])).collect();
    let value: Vec<VectorSpace> = cokers.iter().map(|c| c.space.clone()).collect();
    let mut action = BTreeMap::new();
    for x in 0..n {
        for y in 0..n {
            for k in 0..base.hom_dim(x, y) {
                let am = target.action_basis(x, y, k);
                let m = cokers[y].projection.compose(&am).compose(&cokers[x].section);
                if !m.is_zero() {
                    action.insert((x, y, k), m);
                }
            }
        }
    }
    let module = FiniteModule { base, value, action };
    let projection = NatTransform {
        components: cokers.iter().map(|c| c.projection.clone()).collect(),
    };
    let sections = cokers.into_iter().map(|c| c.section).collect();
    (module, projection, sections)
}

/// A finitely presented module delivered with its presentation
/// `⊕ᵢ Hom(p1ᵢ, −) → ⊕ⱼ Hom(p0ⱼ, −) → A → 0`.
#[derive(Debug, Clone)]
pub struct PresentedModule {
    pub module: FiniteModule,
    pub p1_objects: Vec<usize>,
    pub p0_objects: Vec<usize>,
    /// `d[j][i]` ∈ Hom(p0ⱼ, p1ᵢ): the matrix of the map P1 → P0; the
    /// component Hom(p1ᵢ, −) → Hom(p0ⱼ, −) is precomposition with it.
    pub d: Vec<Vec<Vec<Scalar>>>,
    /// `epi[j]` ∈ A(p0ⱼ): Yoneda element describing the epi P0 → A.
    pub epi: Vec<Vec<Scalar>>,
}

/// Builds the morphism `⊕ᵢ Hom(p1ᵢ, −) → ⊕ⱼ Hom(p0ⱼ, −)` from a Yoneda
/// matrix `d[j][i] ∈ Hom(p0ⱼ, p1ᵢ)`, together with the two sums.
pub fn presentation_map(
    base: &Arc<LinearCategory>,
    p1_objects: &[usize],
    p0_objects: &[usize],
    d: &[Vec<Vec<Scalar>>],
) -> (ModuleSum, ModuleSum, NatTransform) {
    let p1_mods: Vec<FiniteModule> = p1_objects
        .iter()
        .map(|&t| FiniteModule::representable(Arc::clone(base), t))
        .collect();
    let p0_mods: Vec<FiniteModule> = p0_objects
        .iter()
        .map(|&t| FiniteModule::representable(Arc::clone(base), t))
        .collect();
    let p1 = direct_sum(Arc::clone(base), &p1_mods);
    let p0 = direct_sum(Arc::clone(base), &p0_mods);
    let mut nat = NatTransform::zero(&p1.module, &p0.module);
    for (j, row) in d.iter().enumerate() {
        for (i, mji) in row.iter().enumerate() {
            if vec_is_zero(mji) {
                continue;
            }
            // precomposition Hom(p1_i, w) -> Hom(p0_j, w) at every object w
            for w in 0..base.object_count() {
                let pre = base.precompose_matrix(p0_objects[j], p1_objects[i], w, mji);
                for (r, gr) in p0.ranges[j][w].clone().enumerate() {
                    for (c, gc) in p1.ranges[i][w].clone().enumerate() {
                        nat.components[w].entries[gr][gc] =
                            &nat.components[w].entries[gr][gc] + &pre.entries[r][c];
                    }
                }
            }
        }
    }
    (p1, p0, nat)
}

/// The natural transformation `Hom(x, −) → A` classified by `a ∈ A(x)`
/// (Yoneda): at each object w, `t ↦ A(t)(a)`.
pub fn yoneda_morphism(a_module: &FiniteModule, x: usize, a: &[Scalar]) -> NatTransform {
    let base = &a_module.base;
    let components = (0..base.object_count())
        .map(|w| {
            let hom = base.hom_space(x, w);
            let mut m = LinearMap::zero(hom.clone(), a_module.value[w].clone());
            for t in 0..hom.dim() {
                let col = a_module.action_of(x, w, &hom.basis_vec(t)).apply(a);
                for (r, cv) in col.iter().enumerate() {
                    m.entries[r][t] = cv.clone();
                }
            }
            m
        })
        .collect();
    NatTransform { components }
}

/// Seeded random finitely presented module: the cokernel of a random map
/// between random finite sums of representables. Always functorial by
/// construction, and carries its presentation.
pub fn random_presented_module<R: Rng>(
    base: &Arc<LinearCategory>,
    rng: &mut R,
    max_summands: usize,
) -> PresentedModule {
    let n = base.object_count();
    let field = base.field;
    let k0 = rng.gen_range(1..=max_summands);
    let k1 = rng.gen_range(0..=max_summands);
    let p0_objects: Vec<usize> = (0..k0).map(|_| rng.gen_range(0..n)).collect();
    let p1_objects: Vec<usize> = (0..k1).map(|_| rng.gen_range(0..n)).collect();
    let d: Vec<Vec<Vec<Scalar>>> = p0_objects
        .iter()
        .map(|&t0| {
            p1_objects
                .iter()
                .map(|&t1| {
                    let dim = base.hom_dim(t0, t1);
                    (0..dim).map(|_| field.from_i64(rng.gen_range(-2..=2))).collect()
                })
                .collect()
        })
        .collect();
    let (p1, p0, nat) = presentation_map(base, &p1_objects, &p0_objects, &d);
    let (module, projection, _sections) = cokernel_module(&p0.module, &nat);
    // epi elements: images of the Yoneda units of each P0 summand
    let epi = p0_objects
        .iter()
        .enumerate()
        .map(|(j, &t0)| {
            let mut unit = p0.module.value[t0].zero_vec();
            let id = base.identity(t0);
            for (local, global) in p0.ranges[j][t0].clone().enumerate() {
                unit[global] = id[local].clone();
            }
            projection.components[t0].apply(&unit)
        })
        .collect();
    let _ = p1;
    PresentedModule { module, p1_objects, p0_objects, d, epi }
}

/// Seeded random module generated at a single object: the cokernel of a
/// random map into Hom(t0, −). Its presentation epi is one representable,
/// as the epi constructions of the comma category require.
pub fn random_cyclic_presented_module<R: Rng>(
    base: &Arc<LinearCategory>,
    rng: &mut R,
    t0: usize,
    max_rels: usize,
) -> PresentedModule {
    let n = base.object_count();
    let field = base.field;
    let k1 = rng.gen_range(0..=max_rels);
    let p0_objects = vec![t0];
    let p1_objects: Vec<usize> = (0..k1).map(|_| rng.gen_range(0..n)).collect();
    let d: Vec<Vec<Vec<Scalar>>> = p0_objects
        .iter()
        .map(|&a| {
            p1_objects
                .iter()
                .map(|&b| {
                    let dim = base.hom_dim(a, b);
                    (0..dim).map(|_| field.from_i64(rng.gen_range(-2..=2))).collect()
                })
                .collect()
        })
        .collect();
    let (_, p0, nat) = presentation_map(base, &p1_objects, &p0_objects, &d);
    let (module, projection, _) = cokernel_module(&p0.module, &nat);
    let epi = vec![{
        let mut unit = p0.module.value[t0].zero_vec();
        let id = base.identity(t0);
        for (local, global) in p0.ranges[0][t0].clone().enumerate() {
            unit[global] = id[local].clone();
        }
        projection.components[t0].apply(&unit)
    }];
    PresentedModule { module, p1_objects, p0_objects, d, epi }
}

/// Builds the full subcategory of the module category spanned by the given
/// modules: objects are the module names, Hom-spaces are the solved bases
/// of natural transformations, composition is induced.
pub fn module_subcategory(
    names: &[String],
    modules: &[FiniteModule],
) -> Result<(LinearCategory, BTreeMap<(usize, usize), HomSolution>), Error> {
    if names.len() != modules.len() {
        return Err(Error::InvalidInput("one name per module required".into()));
    }
    let field = modules[0].base.field;
    let n = modules.len();
    let mut solutions = BTreeMap::new();
    let mut hom = BTreeMap::new();
    for i in 0..n {
        for j in 0..n {
            let sol = hom_modules(&modules[i], &modules[j])?;
            if sol.dim() > 0 {
                hom.insert((i, j), sol.space.clone());
            }
            solutions.insert((i, j), sol);
        }
    }
    let mut comp = BTreeMap::new();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let df = solutions[&(x, y)].dim();
                let dg = solutions[&(y, z)].dim();
                let dr = solutions[&(x, z)].dim();
                if df == 0 || dg == 0 || dr == 0 {
                    continue;
                }
                let mut table = vec![vec![vec![field.zero(); dr]; df]; dg];
                for gi in 0..dg {
                    for fi in 0..df {
                        let composite = solutions[&(y, z)].basis[gi]
                            .compose(&solutions[&(x, y)].basis[fi]);
                        let coords = solutions[&(x, z)]
                            .coords_of(&composite)
                            .ok_or_else(|| {
                                Error::InternalConsistency(
                                    "composite of natural transformations is not natural".into(),
                                )
                            })?;
                        table[gi][fi] = coords;
                    }
                }
                comp.insert((x, y, z), table);
            }
        }
    }
    let mut id = Vec::with_capacity(n);
    for x in 0..n {
        let idnat = NatTransform::identity(&modules[x]);
        let coords = solutions[&(x, x)].coords_of(&idnat).ok_or_else(|| {
            Error::InternalConsistency("identity transformation not in solved Hom".into())
        })?;
        id.push(coords);
    }
    let cat = LinearCategory::new(field, names.to_vec(), hom, comp, id)?;
    Ok((cat, solutions))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::quiver::{parse_quiver, path_category, A2_PRESENTATION};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn a2() -> Arc<LinearCategory> {
        Arc::new(path_category(&parse_quiver(A2_PRESENTATION).unwrap()).unwrap())
    }

    fn a3() -> Arc<LinearCategory> {
        let text = "field Q\nvertex 1\nvertex 2\nvertex 3\narrow a : 1 -> 2\narrow b : 2 -> 3\n";
        Arc::new(path_category(&parse_quiver(text).unwrap()).unwrap())
    }

    #[test]
    fn representables_are_functorial() {
        let cat = a3();
        for x in 0..3 {
            let m = FiniteModule::representable(Arc::clone(&cat), x);
            assert!(m.check_functorial().is_empty());
        }
    }

    #[test]
    fn yoneda_dimension() {
        // Hom(Hom(x,−), A) ≅ A(x)
        let cat = a3();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..5 {
            let a = random_presented_module(&cat, &mut rng, 2);
            for x in 0..3 {
                let rep = FiniteModule::representable(Arc::clone(&cat), x);
                let sol = hom_modules(&rep, &a.module).unwrap();
                assert_eq!(sol.dim(), a.module.dim_at(x), "Yoneda at object {}", x);
                // the bijection is evaluation at the identity
                for nat in &sol.basis {
                    let val = nat.components[x].apply(cat.identity(x));
                    let back = yoneda_morphism(&a.module, x, &val);
                    assert_eq!(&back, nat);
                }
            }
        }
    }

    #[test]
    fn hom_contains_identity() {
        let cat = a2();
        let m = FiniteModule::representable(Arc::clone(&cat), 0);
        let sol = hom_modules(&m, &m).unwrap();
        assert!(sol.dim() >= 1);
        assert!(sol.coords_of(&NatTransform::identity(&m)).is_some());
    }

    #[test]
    fn no_maps_between_a2_simples() {
        let cat = a2();
        // S1: K at t, S2: K at u, arrow acts as 0
        let field = Field::Rationals;
        let mut s1 = FiniteModule::new(
            Arc::clone(&cat),
            vec![
                VectorSpace::numbered(field, "x", 1),
                VectorSpace::zero(field),
            ],
            BTreeMap::new(),
        )
        .unwrap();
        s1.fill_identity_actions();
        let mut s2 = FiniteModule::new(
            Arc::clone(&cat),
            vec![
                VectorSpace::zero(field),
                VectorSpace::numbered(field, "y", 1),
            ],
            BTreeMap::new(),
        )
        .unwrap();
        s2.fill_identity_actions();
        assert!(s1.check_functorial().is_empty());
        assert!(s2.check_functorial().is_empty());
        assert_eq!(hom_modules(&s1, &s2).unwrap().dim(), 0);
        assert_eq!(hom_modules(&s2, &s1).unwrap().dim(), 0);
        assert_eq!(hom_modules(&s1, &s1).unwrap().dim(), 1);
    }

    #[test]
    fn random_modules_are_functorial_with_exact_presentations() {
        let cat = a3();
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..10 {
            let pm = random_presented_module(&cat, &mut rng, 2);
            assert!(pm.module.check_functorial().is_empty());
            // presentation data is consistent: epi elements live in A(p0_j)
            for (j, e) in pm.epi.iter().enumerate() {
                assert_eq!(e.len(), pm.module.dim_at(pm.p0_objects[j]));
            }
        }
    }

    #[test]
    fn kernel_and_cokernel_of_identity_and_zero() {
        let cat = a3();
        let m = FiniteModule::representable(Arc::clone(&cat), 0);
        let idn = NatTransform::identity(&m);
        let (k, _) = kernel_module(&m, &idn);
        assert!(k.is_zero());
        let (c, _, _) = cokernel_module(&m, &idn);
        assert!(c.is_zero());

        let z = NatTransform::zero(&m, &m);
        let (k, inc) = kernel_module(&m, &z);
        assert_eq!(k.total_dim(), m.total_dim());
        assert!(k.check_functorial().is_empty());
        assert!(inc.check_natural(&k, &m).is_empty());
        let (c, proj, _) = cokernel_module(&m, &z);
        assert_eq!(c.total_dim(), m.total_dim());
        assert!(proj.check_natural(&m, &c).is_empty());
    }

    #[test]
    fn module_subcategory_of_representables() {
        let cat = a2();
        let mods = vec![
            FiniteModule::representable(Arc::clone(&cat), 0),
            FiniteModule::representable(Arc::clone(&cat), 1),
        ];
        let (sub, _) = module_subcategory(&["P_t".into(), "P_u".into()], &mods).unwrap();
        // Hom(P_t, P_u) = Hom_C(u, t) = 0; Hom(P_u, P_t) = Hom_C(t, u) = K
        assert_eq!(sub.hom_dim(0, 1), 0);
        assert_eq!(sub.hom_dim(1, 0), 1);
        assert!(crate::category::check_category_axioms(&sub).is_pass());
    }
}
