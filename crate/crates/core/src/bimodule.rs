//! Bimodules M over 𝒰 ⊗ 𝒯ᵒᵖ: one space M(U, T) per object pair, a left
//! 𝒰-action and a right 𝒯-action given on basis morphisms.
//!
//! The left action realizes `u • m = M(u ⊗ 1_T)(m)` and the right action
//! `m • t = M(1_U ⊗ tᵒᵖ)(m)`. Functoriality of both actions and their
//! commutation `M(u⊗1)∘M(1⊗tᵒᵖ) = M(1⊗tᵒᵖ)∘M(u⊗1)` are verified, not
//! assumed; actions are supplied on basis morphisms only and extended
//! bilinearly.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::Rng;

use crate::category::LinearCategory;
use crate::error::Error;
use crate::field::{Field, Scalar};
use crate::linalg::{LinearMap, VectorSpace};
use crate::module::{direct_sum, hom_modules, FiniteModule, NatTransform};

/// A bimodule over `u_cat ⊗ t_catᵒᵖ`.
#[derive(Debug, Clone)]
pub struct Bimodule {
    pub t_cat: Arc<LinearCategory>,
    pub u_cat: Arc<LinearCategory>,
    space: BTreeMap<(usize, usize), VectorSpace>,
    /// `(u_from, u_to, k, t)` ↦ M(u_from, t) → M(u_to, t), the action of
    /// the k-th basis morphism of Hom_𝒰(u_from, u_to).
    left: BTreeMap<(usize, usize, usize, usize), LinearMap>,
    /// `(t_from, t_to, k, u)` ↦ M(u, t_to) → M(u, t_from), the action of
    /// the k-th basis morphism of Hom_𝒯(t_from, t_to).
    right: BTreeMap<(usize, usize, usize, usize), LinearMap>,
}

impl Bimodule {
    pub fn new(
        t_cat: Arc<LinearCategory>,
        u_cat: Arc<LinearCategory>,
        space: BTreeMap<(usize, usize), VectorSpace>,
        left: BTreeMap<(usize, usize, usize, usize), LinearMap>,
        right: BTreeMap<(usize, usize, usize, usize), LinearMap>,
    ) -> Result<Bimodule, Error> {
        if t_cat.field != u_cat.field {
            return Err(Error::FieldMismatch {
                expected: t_cat.field.to_string(),
                found: u_cat.field.to_string(),
            });
        }
        let m = Bimodule { t_cat, u_cat, space, left, right };
        for (&(uf, ut, k, t), map) in &m.left {
            if k >= m.u_cat.hom_dim(uf, ut) {
                return Err(Error::InvalidBimodule(format!(
                    "left action key refers to missing basis morphism {} of Hom({}, {})",
                    k, m.u_cat.objects[uf], m.u_cat.objects[ut]
                )));
            }
            if map.domain.dim() != m.dim(uf, t) || map.codomain.dim() != m.dim(ut, t) {
                return Err(Error::InvalidBimodule(
                    "left action matrix shape mismatch".into(),
                ));
            }
        }
        for (&(tf, tt, k, u), map) in &m.right {
            if k >= m.t_cat.hom_dim(tf, tt) {
                return Err(Error::InvalidBimodule(format!(
                    "right action key refers to missing basis morphism {} of Hom({}, {})",
                    k, m.t_cat.objects[tf], m.t_cat.objects[tt]
                )));
            }
            if map.domain.dim() != m.dim(u, tt) || map.codomain.dim() != m.dim(u, tf) {
                return Err(Error::InvalidBimodule(
                    "right action matrix shape mismatch".into(),
                ));
            }
        }
        Ok(m)
    }

    pub fn field(&self) -> Field {
        self.t_cat.field
    }

    pub fn space(&self, u: usize, t: usize) -> VectorSpace {
        self.space
            .get(&(u, t))
            .cloned()
            .unwrap_or_else(|| VectorSpace::zero(self.field()))
    }

    pub fn dim(&self, u: usize, t: usize) -> usize {
        self.space.get(&(u, t)).map_or(0, |s| s.dim())
    }

    pub fn spaces(&self) -> &BTreeMap<(usize, usize), VectorSpace> {
        &self.space
    }

    pub fn left_entries(&self) -> &BTreeMap<(usize, usize, usize, usize), LinearMap> {
        &self.left
    }

    pub fn right_entries(&self) -> &BTreeMap<(usize, usize, usize, usize), LinearMap> {
        &self.right
    }

    fn left_basis(&self, uf: usize, ut: usize, k: usize, t: usize) -> LinearMap {
        self.left.get(&(uf, ut, k, t)).cloned().unwrap_or_else(|| {
            LinearMap::zero(self.space(uf, t), self.space(ut, t))
        })
    }

    fn right_basis(&self, tf: usize, tt: usize, k: usize, u: usize) -> LinearMap {
        self.right.get(&(tf, tt, k, u)).cloned().unwrap_or_else(|| {
            LinearMap::zero(self.space(u, tt), self.space(u, tf))
        })
    }

    /// Action matrix of a basis morphism of 𝒰, if nonzero.
    pub fn left_basis_ref(&self, uf: usize, ut: usize, k: usize, t: usize) -> Option<&LinearMap> {
        self.left.get(&(uf, ut, k, t))
    }

    /// Action matrix of a basis morphism of 𝒯, if nonzero.
    pub fn right_basis_ref(&self, tf: usize, tt: usize, k: usize, u: usize) -> Option<&LinearMap> {
        self.right.get(&(tf, tt, k, u))
    }

    /// Matrix of `u • (—)` for `u: uf → ut` in coordinates, at fixed t.
    pub fn left_action(&self, uf: usize, ut: usize, u: &[Scalar], t: usize) -> LinearMap {
        let mut out = LinearMap::zero(self.space(uf, t), self.space(ut, t));
        for (k, c) in u.iter().enumerate() {
            if !c.is_zero() {
                out = out.add(&self.left_basis(uf, ut, k, t).scale(c));
            }
        }
        out
    }

    /// Matrix of `(—) • t` for `t: tf → tt` in coordinates, at fixed u:
    /// maps M(u, tt) → M(u, tf).
    pub fn right_action(&self, tf: usize, tt: usize, t: &[Scalar], u: usize) -> LinearMap {
        let mut out = LinearMap::zero(self.space(u, tt), self.space(u, tf));
        for (k, c) in t.iter().enumerate() {
            if !c.is_zero() {
                out = out.add(&self.right_basis(tf, tt, k, u).scale(c));
            }
        }
        out
    }

    /// The opposite view M̄ ∈ Mod(𝒯ᵒᵖ ⊗ 𝒰) with M̄(T, U) = M(U, T) and the
    /// two actions exchanged. Applying it twice restores the original.
    pub fn opposite(&self) -> Bimodule {
        let t_op = Arc::new(self.t_cat.opposite());
        let u_op = Arc::new(self.u_cat.opposite());
        let mut space = BTreeMap::new();
        for (&(u, t), s) in &self.space {
            space.insert((t, u), s.clone());
        }
        // left action of tᵒᵖ: T → T₂ in 𝒯ᵒᵖ (= t: T₂ → T in 𝒯) is the
        // original right action; right action of uᵒᵖ: U → U₂ in 𝒰ᵒᵖ
        // (= u: U₂ → U) is the original left action.
        let mut left = BTreeMap::new();
        for (&(tf, tt, k, u), map) in &self.right {
            left.insert((tt, tf, k, u), map.clone());
        }
        let mut right = BTreeMap::new();
        for (&(uf, ut, k, t), map) in &self.left {
            right.insert((ut, uf, k, t), map.clone());
        }
        Bimodule { t_cat: u_op, u_cat: t_op, space, left, right }
    }

    /// The 𝒰-module M_T = M(—, T) with arrows acting by the left action.
    pub fn mt_module(&self, t: usize) -> FiniteModule {
        let u_cat = Arc::clone(&self.u_cat);
        let value: Vec<VectorSpace> =
            (0..u_cat.object_count()).map(|u| self.space(u, t)).collect();
        let mut action = BTreeMap::new();
        for uf in 0..u_cat.object_count() {
            for ut in 0..u_cat.object_count() {
                for k in 0..u_cat.hom_dim(uf, ut) {
                    let m = self.left_basis(uf, ut, k, t);
                    if !m.is_zero() {
                        action.insert((uf, ut, k), m);
                    }
                }
            }
        }
        FiniteModule::new(u_cat, value, action).expect("mt_module shape")
    }

    /// The 𝒯ᵒᵖ-module M_U = M(U, —) with arrows acting by the right
    /// action. The base is `t_cat.opposite()`.
    pub fn mu_module(&self, u: usize) -> FiniteModule {
        let base = Arc::new(self.t_cat.opposite());
        let value: Vec<VectorSpace> =
            (0..base.object_count()).map(|t| self.space(u, t)).collect();
        let mut action = BTreeMap::new();
        // basis morphism of Hom_op(tt, tf) = Hom(tf, tt): acts M(u,tt) -> M(u,tf)
        for tf in 0..base.object_count() {
            for tt in 0..base.object_count() {
                for k in 0..self.t_cat.hom_dim(tf, tt) {
                    let m = self.right_basis(tf, tt, k, u);
                    if !m.is_zero() {
                        action.insert((tt, tf, k), m);
                    }
                }
            }
        }
        FiniteModule::new(base, value, action).expect("mu_module shape")
    }

    /// The natural transformation `t̄: M_{tt} → M_{tf}` of 𝒰-modules
    /// induced by `t: tf → tt` (components are the right action).
    pub fn t_bar(&self, tf: usize, tt: usize, t: &[Scalar]) -> NatTransform {
        let components = (0..self.u_cat.object_count())
            .map(|u| self.right_action(tf, tt, t, u))
            .collect();
        NatTransform { components }
    }

    /// Full functoriality + commutation check. Empty report = valid.
    pub fn check(&self) -> Vec<String> {
        let mut failures = Vec::new();
        let tn = self.t_cat.object_count();
        let un = self.u_cat.object_count();

        // identities act as identities
        for t in 0..tn {
            for u in 0..un {
                let lid = self.left_action(u, u, self.u_cat.identity(u), t);
                if lid.entries != LinearMap::identity(&self.space(u, t)).entries {
                    failures.push(format!(
                        "left action of id_{} is not the identity on M({}, {})",
                        self.u_cat.objects[u], self.u_cat.objects[u], self.t_cat.objects[t]
                    ));
                }
                let rid = self.right_action(t, t, self.t_cat.identity(t), u);
                if rid.entries != LinearMap::identity(&self.space(u, t)).entries {
                    failures.push(format!(
                        "right action of id_{} is not the identity on M({}, {})",
                        self.t_cat.objects[t], self.u_cat.objects[u], self.t_cat.objects[t]
                    ));
                }
            }
        }

        // left action respects composition in 𝒰
        for u0 in 0..un {
            for u1 in 0..un {
                for u2 in 0..un {
                    let f = self.u_cat.hom_space(u0, u1);
                    let g = self.u_cat.hom_space(u1, u2);
                    for fk in 0..f.dim() {
                        for gk in 0..g.dim() {
                            let comp =
                                self.u_cat.compose(u0, u1, u2, &g.basis_vec(gk), &f.basis_vec(fk));
                            for t in 0..tn {
                                let lhs = self.left_action(u0, u2, &comp, t);
                                let rhs = self
                                    .left_basis(u1, u2, gk, t)
                                    .compose(&self.left_basis(u0, u1, fk, t));
                                if lhs.entries != rhs.entries {
                                    failures.push(format!(
                                        "left action not functorial on {} ∘ {} at T = {}",
                                        g.labels[gk], f.labels[fk], self.t_cat.objects[t]
                                    ));
                                }
                            }
                        }
                    }
                }
            }
        }

        // right action is contravariantly functorial in 𝒯
        for t0 in 0..tn {
            for t1 in 0..tn {
                for t2 in 0..tn {
                    let f = self.t_cat.hom_space(t0, t1);
                    let g = self.t_cat.hom_space(t1, t2);
                    for fk in 0..f.dim() {
                        for gk in 0..g.dim() {
                            let comp =
                                self.t_cat.compose(t0, t1, t2, &g.basis_vec(gk), &f.basis_vec(fk));
                            for u in 0..un {
                                let lhs = self.right_action(t0, t2, &comp, u);
                                let rhs = self
                                    .right_basis(t0, t1, fk, u)
                                    .compose(&self.right_basis(t1, t2, gk, u));
                                if lhs.entries != rhs.entries {
                                    failures.push(format!(
                                        "right action not functorial on {} ∘ {} at U = {}",
                                        g.labels[gk], f.labels[fk], self.u_cat.objects[u]
                                    ));
                                }
                            }
                        }
                    }
                }
            }
        }

        // the two actions commute: M(u⊗1)∘M(1⊗tᵒᵖ) = M(1⊗tᵒᵖ)∘M(u⊗1)
        for uf in 0..un {
            for ut in 0..un {
                let us = self.u_cat.hom_space(uf, ut);
                for uk in 0..us.dim() {
                    for tf in 0..tn {
                        for tt in 0..tn {
                            let ts = self.t_cat.hom_space(tf, tt);
                            for tk in 0..ts.dim() {
                                let lhs = self
                                    .left_basis(uf, ut, uk, tf)
                                    .compose(&self.right_basis(tf, tt, tk, uf));
                                let rhs = self
                                    .right_basis(tf, tt, tk, ut)
                                    .compose(&self.left_basis(uf, ut, uk, tt));
                                if lhs.entries != rhs.entries {
                                    failures.push(format!(
                                        "actions of {} and {} do not commute",
                                        us.labels[uk], ts.labels[tk]
                                    ));
                                }
                            }
                        }
                    }
                }
            }
        }
        failures
    }
}

/// The Hom-bimodule of an ambient category over a (U, T) object partition:
/// M(U, T) := Hom_C(T, U), with post-composition as the left action and
/// pre-composition as the right action. `t_cat`/`u_cat` are the full
/// subcategories on the two lists. The lists must be disjoint.
pub fn bimodule_from_hom(
    cat: &LinearCategory,
    u_objs: &[String],
    t_objs: &[String],
) -> Result<Bimodule, Error> {
    for u in u_objs {
        if t_objs.contains(u) {
            return Err(Error::InvalidInput(format!(
                "object {} appears in both partitions",
                u
            )));
        }
    }
    hom_bimodule_on(cat, u_objs, t_objs)
}

/// Hom-bimodule over the full duplicated object set: 𝒯 = 𝒰 = C and
/// M(U, T) = Hom_C(T, U).
pub fn hom_bimodule_full(cat: &LinearCategory) -> Result<Bimodule, Error> {
    hom_bimodule_on(cat, &cat.objects, &cat.objects)
}

fn hom_bimodule_on(
    cat: &LinearCategory,
    u_objs: &[String],
    t_objs: &[String],
) -> Result<Bimodule, Error> {
    let t_idx: Vec<usize> = t_objs
        .iter()
        .map(|n| cat.object_index(n))
        .collect::<Result<_, _>>()?;
    let u_idx: Vec<usize> = u_objs
        .iter()
        .map(|n| cat.object_index(n))
        .collect::<Result<_, _>>()?;
    let t_cat = Arc::new(cat.full_subcategory(t_objs)?);
    let u_cat = Arc::new(cat.full_subcategory(u_objs)?);
    let mut space = BTreeMap::new();
    for (u, &cu) in u_idx.iter().enumerate() {
        for (t, &ct) in t_idx.iter().enumerate() {
            let s = cat.hom_space(ct, cu);
            if s.dim() > 0 {
                space.insert((u, t), s);
            }
        }
    }
    let mut left = BTreeMap::new();
    for (uf, &cuf) in u_idx.iter().enumerate() {
        for (ut, &cut) in u_idx.iter().enumerate() {
            for k in 0..cat.hom_dim(cuf, cut) {
                let g = cat.hom_space(cuf, cut).basis_vec(k);
                for (t, &ct) in t_idx.iter().enumerate() {
                    let m = cat.postcompose_matrix(ct, cuf, cut, &g);
                    if !m.is_zero() {
                        left.insert((uf, ut, k, t), m);
                    }
                }
            }
        }
    }
    let mut right = BTreeMap::new();
    for (tf, &ctf) in t_idx.iter().enumerate() {
        for (tt, &ctt) in t_idx.iter().enumerate() {
            for k in 0..cat.hom_dim(ctf, ctt) {
                let f = cat.hom_space(ctf, ctt).basis_vec(k);
                for (u, &cu) in u_idx.iter().enumerate() {
                    let m = cat.precompose_matrix(ctf, ctt, cu, &f);
                    if !m.is_zero() {
                        right.insert((tf, tt, k, u), m);
                    }
                }
            }
        }
    }
    Bimodule::new(t_cat, u_cat, space, left, right)
}

/// Extends a bimodule to additive closures of its two categories:
/// M⁺(⊕ᵢUᵢ, ⊕ⱼTⱼ) is the block sum of the M(Uᵢ, Tⱼ), with blockwise
/// actions. Block order is (U-summand, T-summand) lexicographic and labels
/// carry the `[i;j]` prefix.
pub fn closure_bimodule(
    m: &Bimodule,
    t_closure: &crate::category::AdditiveClosure,
    u_closure: &crate::category::AdditiveClosure,
) -> Result<Bimodule, Error> {
    let field = m.field();
    let t_cat = Arc::new(t_closure.cat.clone());
    let u_cat = Arc::new(u_closure.cat.clone());
    let un = u_cat.object_count();
    let tn = t_cat.object_count();

    let block_range = |u_sum: usize, t_sum: usize, ui: usize, tj: usize| -> std::ops::Range<usize> {
        let mut offset = 0;
        for (i, &cu) in u_closure.summand_indices[u_sum].iter().enumerate() {
            for (j, &ct) in t_closure.summand_indices[t_sum].iter().enumerate() {
                let d = m.dim(cu, ct);
                if i == ui && j == tj {
                    return offset..offset + d;
                }
                offset += d;
            }
        }
        offset..offset
    };

    let mut space = BTreeMap::new();
    for a in 0..un {
        for b in 0..tn {
            let mut labels = Vec::new();
            for (i, &cu) in u_closure.summand_indices[a].iter().enumerate() {
                for (j, &ct) in t_closure.summand_indices[b].iter().enumerate() {
                    for l in &m.space(cu, ct).labels {
                        labels.push(format!("[{};{}]{}", i, j, l));
                    }
                }
            }
            if !labels.is_empty() {
                space.insert((a, b), VectorSpace::new(field, labels)?);
            }
        }
    }
    let space_of = |a: usize, b: usize| {
        space
            .get(&(a, b))
            .cloned()
            .unwrap_or_else(|| VectorSpace::zero(field))
    };

    // left action of a closure basis morphism `[p>q]g` of Hom(a, a')
    let mut left = BTreeMap::new();
    for a in 0..un {
        for a2 in 0..un {
            let mut k = 0usize;
            for (p, &cup) in u_closure.summand_indices[a].iter().enumerate() {
                for (q, &cuq) in u_closure.summand_indices[a2].iter().enumerate() {
                    let base_dim = m.u_cat.hom_dim(cup, cuq);
                    for bk in 0..base_dim {
                        for b in 0..tn {
                            let mut map = LinearMap::zero(space_of(a, b), space_of(a2, b));
                            let mut nonzero = false;
                            for (j, &ct) in t_closure.summand_indices[b].iter().enumerate() {
                                let block = m.left_basis(cup, cuq, bk, ct);
                                if block.is_zero() {
                                    continue;
                                }
                                nonzero = true;
                                let src = block_range(a, b, p, j);
                                let dst = block_range(a2, b, q, j);
                                for (r, gr) in dst.enumerate() {
                                    for (c, gc) in src.clone().enumerate() {
                                        map.entries[gr][gc] = block.entries[r][c].clone();
                                    }
                                }
                            }
                            if nonzero {
                                left.insert((a, a2, k, b), map);
                            }
                        }
                        k += 1;
                    }
                }
            }
        }
    }
    // right action of a closure basis morphism `[p>q]h` of Hom_T(b, b2)
    let mut right = BTreeMap::new();
    for b in 0..tn {
        for b2 in 0..tn {
            let mut k = 0usize;
            for (p, &ctp) in t_closure.summand_indices[b].iter().enumerate() {
                for (q, &ctq) in t_closure.summand_indices[b2].iter().enumerate() {
                    let base_dim = m.t_cat.hom_dim(ctp, ctq);
                    for bk in 0..base_dim {
                        for a in 0..un {
                            let mut map = LinearMap::zero(space_of(a, b2), space_of(a, b));
                            let mut nonzero = false;
                            for (i, &cu) in u_closure.summand_indices[a].iter().enumerate() {
                                let block = m.right_basis(ctp, ctq, bk, cu);
                                if block.is_zero() {
                                    continue;
                                }
                                nonzero = true;
                                let src = block_range(a, b2, i, q);
                                let dst = block_range(a, b, i, p);
                                for (r, gr) in dst.enumerate() {
                                    for (c, gc) in src.clone().enumerate() {
                                        map.entries[gr][gc] = block.entries[r][c].clone();
                                    }
                                }
                            }
                            if nonzero {
                                right.insert((b, b2, k, a), map);
                            }
                        }
                        k += 1;
                    }
                }
            }
        }
    }
    Bimodule::new(t_cat, u_cat, space, left, right)
}

/// The zero bimodule between two categories.
pub fn zero_bimodule(t_cat: Arc<LinearCategory>, u_cat: Arc<LinearCategory>) -> Bimodule {
    Bimodule {
        t_cat,
        u_cat,
        space: BTreeMap::new(),
        left: BTreeMap::new(),
        right: BTreeMap::new(),
    }
}

/// A seeded random bimodule: random spaces with actions of composites
/// derived from random generator images would not be functorial in
/// general, so this builds M as a finite direct sum of "rank one"
/// Hom-pairings Hom_𝒰(U₀,—) ⊗ Hom_𝒯(—,T₀), which is always a valid
/// bimodule.
pub fn random_bimodule<R: Rng>(
    t_cat: &Arc<LinearCategory>,
    u_cat: &Arc<LinearCategory>,
    rng: &mut R,
    summands: usize,
) -> Bimodule {
    let field = t_cat.field;
    let picks: Vec<(usize, usize)> = (0..summands)
        .map(|_| {
            (
                rng.gen_range(0..u_cat.object_count()),
                rng.gen_range(0..t_cat.object_count()),
            )
        })
        .collect();
    let mut space = BTreeMap::new();
    for u in 0..u_cat.object_count() {
        for t in 0..t_cat.object_count() {
            let mut labels = Vec::new();
            for (i, &(u0, t0)) in picks.iter().enumerate() {
                for lu in &u_cat.hom_space(u0, u).labels {
                    for lt in &t_cat.hom_space(t, t0).labels {
                        labels.push(format!("r{}.{}⊗{}", i, lu, lt));
                    }
                }
            }
            if !labels.is_empty() {
                space.insert((u, t), VectorSpace { field, labels });
            }
        }
    }
    let bm_space = |u: usize, t: usize| -> usize {
        space.get(&(u, t)).map_or(0, |s: &VectorSpace| s.dim())
    };
    let mut left = BTreeMap::new();
    let mut right = BTreeMap::new();
    for uf in 0..u_cat.object_count() {
        for ut in 0..u_cat.object_count() {
            for k in 0..u_cat.hom_dim(uf, ut) {
                let g = u_cat.hom_space(uf, ut).basis_vec(k);
                for t in 0..t_cat.object_count() {
                    if bm_space(uf, t) == 0 && bm_space(ut, t) == 0 {
                        continue;
                    }
                    // blockwise: on summand i, post-compose the U-leg
                    let mut m = LinearMap::zero(
                        space.get(&(uf, t)).cloned().unwrap_or_else(|| VectorSpace::zero(field)),
                        space.get(&(ut, t)).cloned().unwrap_or_else(|| VectorSpace::zero(field)),
                    );
                    let mut row0 = 0;
                    let mut col0 = 0;
                    for &(u0, t0) in &picks {
                        let post = u_cat.postcompose_matrix(u0, uf, ut, &g);
                        let tdim = t_cat.hom_dim(t, t0);
                        for r in 0..post.codomain.dim() {
                            for c in 0..post.domain.dim() {
                                if post.entries[r][c].is_zero() {
                                    continue;
                                }
                                for x in 0..tdim {
                                    m.entries[row0 + r * tdim + x][col0 + c * tdim + x] =
                                        post.entries[r][c].clone();
                                }
                            }
                        }
                        row0 += post.codomain.dim() * tdim;
                        col0 += post.domain.dim() * tdim;
                    }
                    if !m.is_zero() {
                        left.insert((uf, ut, k, t), m);
                    }
                }
            }
        }
    }
    for tf in 0..t_cat.object_count() {
        for tt in 0..t_cat.object_count() {
            for k in 0..t_cat.hom_dim(tf, tt) {
                let f = t_cat.hom_space(tf, tt).basis_vec(k);
                for u in 0..u_cat.object_count() {
                    if bm_space(u, tt) == 0 && bm_space(u, tf) == 0 {
                        continue;
                    }
                    let mut m = LinearMap::zero(
                        space.get(&(u, tt)).cloned().unwrap_or_else(|| VectorSpace::zero(field)),
                        space.get(&(u, tf)).cloned().unwrap_or_else(|| VectorSpace::zero(field)),
                    );
                    let mut row0 = 0;
                    let mut col0 = 0;
                    for &(u0, t0) in &picks {
                        let udim = u_cat.hom_dim(u0, u);
                        // pre-compose the T-leg: Hom(tt, t0) -> Hom(tf, t0)
                        let pre = t_cat.precompose_matrix(tf, tt, t0, &f);
                        for x in 0..udim {
                            for r in 0..pre.codomain.dim() {
                                for c in 0..pre.domain.dim() {
                                    if pre.entries[r][c].is_zero() {
                                        continue;
                                    }
                                    m.entries[row0 + x * pre.codomain.dim() + r]
                                        [col0 + x * pre.domain.dim() + c] =
                                        pre.entries[r][c].clone();
                                }
                            }
                        }
                        row0 += udim * pre.codomain.dim();
                        col0 += udim * pre.domain.dim();
                    }
                    if !m.is_zero() {
                        right.insert((tf, tt, k, u), m);
                    }
                }
            }
        }
    }
    Bimodule { t_cat: Arc::clone(t_cat), u_cat: Arc::clone(u_cat), space, left, right }
}

/// Data of the standard 2-term complex computing Ext¹ between two
/// representations of an acyclic relation-free quiver:
/// `⊕ᵥ Hom_K(X_v, Y_v) → ⊕_{a: i→j} Hom_K(X_i, Y_j)`,
/// `(f_v) ↦ (f_j X_a − Y_a f_i)_a`.
struct Ext1Complex {
    map: LinearMap,
    /// coordinate layout of the codomain: ranges per arrow
    arrow_ranges: Vec<std::ops::Range<usize>>,
}

fn ext1_complex(
    quiver_arrows: &[(usize, usize, usize)], // (arrow basis id in cat, source, target) unused id
    x: &FiniteModule,
    y: &FiniteModule,
    arrow_actions_x: &[LinearMap],
    arrow_actions_y: &[LinearMap],
) -> Ext1Complex {
    let field = x.base.field;
    let nv = x.value.len();
    // domain: ⊕_v Hom_K(X_v, Y_v), row-major entries
    let mut dom_dims = Vec::with_capacity(nv);
    let mut dom_total = 0usize;
    for v in 0..nv {
        dom_dims.push(dom_total);
        dom_total += y.value[v].dim() * x.value[v].dim();
    }
    let mut cod_total = 0usize;
    let mut arrow_ranges = Vec::with_capacity(quiver_arrows.len());
    for (a, &(_, i, j)) in quiver_arrows.iter().enumerate() {
        let d = y.value[j].dim() * x.value[i].dim();
        arrow_ranges.push(cod_total..cod_total + d);
        let _ = a;
        cod_total += d;
    }
    let mut map = LinearMap::zero(
        VectorSpace::numbered(field, "f", dom_total),
        VectorSpace::numbered(field, "c", cod_total),
    );
    for (a, &(_, i, j)) in quiver_arrows.iter().enumerate() {
        let xa = &arrow_actions_x[a]; // X_i -> X_j
        let ya = &arrow_actions_y[a]; // Y_i -> Y_j
        let rows = y.value[j].dim();
        let cols = x.value[i].dim();
        let base_row = arrow_ranges[a].start;
        // contribution of f_j: (f_j ∘ X_a) entry (r, c) = Σ_s f_j[r][s] Xa[s][c]
        for r in 0..rows {
            for c in 0..cols {
                let out_row = base_row + r * cols + c;
                for s in 0..x.value[j].dim() {
                    let coeff = &xa.entries[s][c];
                    if !coeff.is_zero() {
                        let col = dom_dims[j] + r * x.value[j].dim() + s;
                        map.entries[out_row][col] = &map.entries[out_row][col] + coeff;
                    }
                }
                // minus (Y_a ∘ f_i) entry (r, c) = Σ_s Ya[r][s] f_i[s][c]
                for s in 0..y.value[i].dim() {
                    let coeff = &ya.entries[r][s];
                    if !coeff.is_zero() {
                        let col = dom_dims[i] + s * x.value[i].dim() + c;
                        map.entries[out_row][col] = &map.entries[out_row][col] - coeff;
                    }
                }
            }
        }
    }
    Ext1Complex { map, arrow_ranges }
}

/// The Êxt¹ bimodule over the full subcategory of representations spanned
/// by `reps` (of an acyclic, relation-free quiver): M(U, T) = Ext¹(T, U),
/// with actions induced by composing cocycles with module morphisms.
///
/// Returns the representation category (twice, as 𝒯 and 𝒰 roles are the
/// same category) and the bimodule.
pub fn bimodule_ext1(
    q: &crate::quiver::QuiverPresentation,
    path_cat: &Arc<LinearCategory>,
    rep_names: &[String],
    reps: &[FiniteModule],
) -> Result<(Arc<LinearCategory>, Bimodule), Error> {
    if !q.relations.is_empty() {
        return Err(Error::InvalidInput(
            "ext1 bimodule requires a relation-free quiver".into(),
        ));
    }
    if q.has_oriented_cycle() {
        return Err(Error::InvalidInput("ext1 bimodule requires an acyclic quiver".into()));
    }
    for m in reps {
        let bad = m.check_functorial();
        if !bad.is_empty() {
            return Err(Error::InvalidModule(bad.join("; ")));
        }
    }
    let field = path_cat.field;
    let (rep_cat, solutions) = crate::module::module_subcategory(rep_names, reps)?;
    let rep_cat = Arc::new(rep_cat);

    // arrows as (basis index in Hom(source, target), source, target)
    let arrows: Vec<(usize, usize, usize)> = q
        .arrows
        .iter()
        .map(|a| {
            let name = &a.name;
            let k = path_cat
                .hom_space(a.source, a.target)
                .labels
                .iter()
                .position(|l| l == name)
                .expect("arrow is a basis path");
            (k, a.source, a.target)
        })
        .collect();
    let arrow_acts = |m: &FiniteModule| -> Vec<LinearMap> {
        arrows
            .iter()
            .map(|&(k, i, j)| m.action_basis(i, j, k))
            .collect()
    };

    let n = reps.len();
    let mut space = BTreeMap::new();
    let mut complexes: BTreeMap<(usize, usize), (Ext1Complex, crate::linalg::Cokernel)> =
        BTreeMap::new();
    for u in 0..n {
        for t in 0..n {
            // M(U, T) = Ext¹(T, U): complex for (X = reps[t], Y = reps[u])
            let cx = ext1_complex(
                &arrows,
                &reps[t],
                &reps[u],
                &arrow_acts(&reps[t]),
                &arrow_acts(&reps[u]),
            );
            let coker = crate::linalg::cokernel(&cx.map);
            if coker.space.dim() > 0 {
                let labels = (0..coker.space.dim())
                    .map(|i| format!("e{}", i))
                    .collect();
                space.insert((u, t), VectorSpace { field, labels });
            }
            complexes.insert((u, t), (cx, coker));
        }
    }

    // actions: lift a class to a cocycle, compose with the natural
    // transformation componentwise, project back
    let mut left = BTreeMap::new();
    for uf in 0..n {
        for ut in 0..n {
            let sol = &solutions[&(uf, ut)];
            for k in 0..sol.dim() {
                let eta = &sol.basis[k];
                for t in 0..n {
                    let (cx_f, coker_f) = &complexes[&(uf, t)];
                    let (cx_t, coker_t) = &complexes[&(ut, t)];
                    let df = coker_f.space.dim();
                    let dt = coker_t.space.dim();
                    if df == 0 || dt == 0 {
                        continue;
                    }
                    let mut m = LinearMap::zero(
                        self_space(&space, field, uf, t),
                        self_space(&space, field, ut, t),
                    );
                    for b in 0..df {
                        let cocycle = coker_f.section.apply(&coker_f.space.basis_vec(b));
                        // post-compose each arrow component with η
                        let mut pushed = vec![field.zero(); cx_t.map.codomain.dim()];
                        for (a, &(_, i, j)) in arrows.iter().enumerate() {
                            let src_range = cx_f.arrow_ranges[a].clone();
                            let rows_f = reps[uf].value[j].dim();
                            let cols = reps[t].value[i].dim();
                            // entry (r, c) of component a
                            let comp_entry = |r: usize, c: usize| {
                                cocycle[src_range.start + r * cols + c].clone()
                            };
                            let eta_j = &eta.components[j]; // reps[uf](j) -> reps[ut](j)
                            let rows_t = reps[ut].value[j].dim();
                            let dst_range = cx_t.arrow_ranges[a].clone();
                            for r2 in 0..rows_t {
                                for c in 0..cols {
                                    let mut acc = field.zero();
                                    for r in 0..rows_f {
                                        let e = &eta_j.entries[r2][r];
                                        if !e.is_zero() {
                                            let v = comp_entry(r, c);
                                            acc = &acc + &(e * &v);
                                        }
                                    }
                                    pushed[dst_range.start + r2 * cols + c] = acc;
                                }
                            }
                        }
                        let class = coker_t.projection.apply(&pushed);
                        for (i, cval) in class.iter().enumerate() {
                            m.entries[i][b] = cval.clone();
                        }
                    }
                    if !m.is_zero() {
                        left.insert((uf, ut, k, t), m);
                    }
                }
            }
        }
    }
    let mut right = BTreeMap::new();
    for tf in 0..n {
        for tt in 0..n {
            let sol = &solutions[&(tf, tt)];
            for k in 0..sol.dim() {
                let tau = &sol.basis[k]; // reps[tf] -> reps[tt]
                for u in 0..n {
                    let (cx_f, coker_f) = &complexes[&(u, tt)];
                    let (cx_t, coker_t) = &complexes[&(u, tf)];
                    let df = coker_f.space.dim();
                    let dt = coker_t.space.dim();
                    if df == 0 || dt == 0 {
                        continue;
                    }
                    let mut m = LinearMap::zero(
                        self_space(&space, field, u, tt),
                        self_space(&space, field, u, tf),
                    );
                    for b in 0..df {
                        let cocycle = coker_f.section.apply(&coker_f.space.basis_vec(b));
                        // pre-compose each arrow component with τ
                        let mut pulled = vec![field.zero(); cx_t.map.codomain.dim()];
                        for (a, &(_, i, j)) in arrows.iter().enumerate() {
                            let src_range = cx_f.arrow_ranges[a].clone();
                            let rows = reps[u].value[j].dim();
                            let cols_f = reps[tt].value[i].dim();
                            let comp_entry = |r: usize, c: usize| {
                                cocycle[src_range.start + r * cols_f + c].clone()
                            };
                            let tau_i = &tau.components[i]; // reps[tf](i) -> reps[tt](i)
                            let cols_t = reps[tf].value[i].dim();
                            let dst_range = cx_t.arrow_ranges[a].clone();
                            for r in 0..rows {
                                for c2 in 0..cols_t {
                                    let mut acc = field.zero();
                                    for c in 0..cols_f {
                                        let e = &tau_i.entries[c][c2];
                                        if !e.is_zero() {
                                            let v = comp_entry(r, c);
                                            acc = &acc + &(&v * e);
                                        }
                                    }
                                    pulled[dst_range.start + r * cols_t + c2] = acc;
                                }
                            }
                        }
                        let class = coker_t.projection.apply(&pulled);
                        for (i, cval) in class.iter().enumerate() {
                            m.entries[i][b] = cval.clone();
                        }
                    }
                    if !m.is_zero() {
                        right.insert((tf, tt, k, u), m);
                    }
                }
            }
        }
    }

    let bimod = Bimodule {
        t_cat: Arc::clone(&rep_cat),
        u_cat: Arc::clone(&rep_cat),
        space,
        left,
        right,
    };
    Ok((rep_cat, bimod))
}

fn self_space(
    space: &BTreeMap<(usize, usize), VectorSpace>,
    field: Field,
    u: usize,
    t: usize,
) -> VectorSpace {
    space
        .get(&(u, t))
        .cloned()
        .unwrap_or_else(|| VectorSpace::zero(field))
}

/// Independent Euler-characteristic oracle for Ext¹ dimensions over an
/// acyclic relation-free quiver: from the standard projective resolution
/// `0 → ⊕_{a:i→j} P(j)^{dim Y_i} → ⊕_v P(v)^{dim Y_v} → Y → 0`,
/// `dim Ext¹(Y, X) = dim Hom(P1, X) − dim Hom(P0, X) + dim Hom(Y, X)`.
pub fn ext1_dim_oracle(
    q: &crate::quiver::QuiverPresentation,
    path_cat: &Arc<LinearCategory>,
    y: &FiniteModule,
    x: &FiniteModule,
) -> Result<usize, Error> {
    let mut p0_parts: Vec<FiniteModule> = Vec::new();
    for v in 0..q.vertices.len() {
        for _ in 0..y.value[v].dim() {
            p0_parts.push(FiniteModule::representable(Arc::clone(path_cat), v));
        }
    }
    let mut p1_parts: Vec<FiniteModule> = Vec::new();
    for a in &q.arrows {
        for _ in 0..y.value[a.source].dim() {
            p1_parts.push(FiniteModule::representable(Arc::clone(path_cat), a.target));
        }
    }
    let p0 = direct_sum(Arc::clone(path_cat), &p0_parts);
    let p1 = direct_sum(Arc::clone(path_cat), &p1_parts);
    let h_p1 = hom_modules(&p1.module, x)?.dim();
    let h_p0 = hom_modules(&p0.module, x)?.dim();
    let h_y = hom_modules(y, x)?.dim();
    Ok(h_p1 + h_y - h_p0)
}
