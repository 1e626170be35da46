//! The triangular matrix category Λ = [𝒯 0; M 𝒰].
//!
//! Objects are pairs (T, U); Hom((T,U), (T',U')) is the block space
//! Hom_𝒯(T,T') ⊕ M(U',T) ⊕ Hom_𝒰(U,U') with composition
//!
//! ```text
//! (t₂, m₂, u₂) ∘ (t₁, m₁, u₁) = (t₂t₁, m₂•t₁ + u₂•m₁, u₂u₁)
//! ```
//!
//! and identity (1_T, 0, 1_U). Basis labels carry the block prefixes
//! `t:`, `m:`, `u:`, which are part of the serialization contract. The
//! radical of Λ is the block [rad_𝒯 0; M rad_𝒰]; the opposite category is
//! isomorphic to Λ̄ = [𝒰ᵒᵖ 0; M̄ 𝒯ᵒᵖ] via the block-swap functor 𝕋; and
//! idempotents split whenever they split componentwise, with the kernel
//! witness [μ 0; −(m•μ) ν].

use std::collections::BTreeMap;
use std::ops::Range;
use std::sync::Arc;

use crate::bimodule::Bimodule;
use crate::category::{check_category_axioms, LinearCategory};
use crate::error::Error;
use crate::field::{Field, Scalar};
use crate::linalg::{vec_is_zero, vec_sub, EchelonBasis, LinearMap, VectorSpace};

/// Λ together with its block structure and back-references.
#[derive(Debug, Clone)]
pub struct LambdaCategory {
    pub cat: Arc<LinearCategory>,
    pub t_cat: Arc<LinearCategory>,
    pub u_cat: Arc<LinearCategory>,
    pub bimodule: Arc<Bimodule>,
    /// `pairs[i]` = (index in t_cat, index in u_cat) of Λ object i.
    pub pairs: Vec<(usize, usize)>,
}

impl LambdaCategory {
    pub fn field(&self) -> Field {
        self.cat.field
    }

    pub fn object_count(&self) -> usize {
        self.pairs.len()
    }

    pub fn pair_index(&self, t: usize, u: usize) -> usize {
        t * self.u_cat.object_count() + u
    }

    pub fn object_name(&self, i: usize) -> &str {
        &self.cat.objects[i]
    }

    /// The (t, m, u) block coordinate ranges of Hom(from, to).
    pub fn block_ranges(&self, from: usize, to: usize) -> (Range<usize>, Range<usize>, Range<usize>) {
        let (t0, u0) = self.pairs[from];
        let (t1, u1) = self.pairs[to];
        let dt = self.t_cat.hom_dim(t0, t1);
        let dm = self.bimodule.dim(u1, t0);
        let du = self.u_cat.hom_dim(u0, u1);
        (0..dt, dt..dt + dm, dt + dm..dt + dm + du)
    }

    /// Assembles a morphism from block coordinates.
    pub fn morphism(
        &self,
        from: usize,
        to: usize,
        t: &[Scalar],
        m: &[Scalar],
        u: &[Scalar],
    ) -> Vec<Scalar> {
        let (rt, rm, ru) = self.block_ranges(from, to);
        assert_eq!(t.len(), rt.len());
        assert_eq!(m.len(), rm.len());
        assert_eq!(u.len(), ru.len());
        let mut v = Vec::with_capacity(rt.len() + rm.len() + ru.len());
        v.extend_from_slice(t);
        v.extend_from_slice(m);
        v.extend_from_slice(u);
        v
    }

    /// Splits a morphism into its (t, m, u) block coordinates.
    pub fn split(&self, from: usize, to: usize, v: &[Scalar]) -> (Vec<Scalar>, Vec<Scalar>, Vec<Scalar>) {
        let (rt, rm, ru) = self.block_ranges(from, to);
        (
            v[rt].to_vec(),
            v[rm].to_vec(),
            v[ru].to_vec(),
        )
    }
}

/// Builds Λ from 𝒯, 𝒰 and a bimodule. The bimodule is validated first.
pub fn build_lambda(
    t_cat: Arc<LinearCategory>,
    u_cat: Arc<LinearCategory>,
    bimodule: Arc<Bimodule>,
) -> Result<LambdaCategory, Error> {
    let failures = bimodule.check();
    if !failures.is_empty() {
        return Err(Error::InvalidBimodule(failures.join("; ")));
    }
    build_lambda_unchecked(t_cat, u_cat, bimodule)
}

/// Same construction without re-validating the bimodule (used internally
/// when the bimodule was just checked, and by negative-control tooling
/// that wants to observe a broken Λ downstream).
pub fn build_lambda_unchecked(
    t_cat: Arc<LinearCategory>,
    u_cat: Arc<LinearCategory>,
    bimodule: Arc<Bimodule>,
) -> Result<LambdaCategory, Error> {
    let field = t_cat.field;
    let tn = t_cat.object_count();
    let un = u_cat.object_count();
    let mut pairs = Vec::with_capacity(tn * un);
    let mut names = Vec::with_capacity(tn * un);
    for t in 0..tn {
        for u in 0..un {
            pairs.push((t, u));
            names.push(format!("({},{})", t_cat.objects[t], u_cat.objects[u]));
        }
    }
    let n = pairs.len();

    let mut hom = BTreeMap::new();
    for (i, &(t0, u0)) in pairs.iter().enumerate() {
        for (j, &(t1, u1)) in pairs.iter().enumerate() {
            let mut labels = Vec::new();
            for l in &t_cat.hom_space(t0, t1).labels {
                labels.push(format!("t:{}", l));
            }
            for l in &bimodule.space(u1, t0).labels {
                labels.push(format!("m:{}", l));
            }
            for l in &u_cat.hom_space(u0, u1).labels {
                labels.push(format!("u:{}", l));
            }
            if !labels.is_empty() {
                hom.insert((i, j), VectorSpace::new(field, labels)?);
            }
        }
    }

    let dims: Vec<usize> = (0..n * n)
        .map(|k| hom.get(&(k / n, k % n)).map_or(0, |s| s.dim()))
        .collect();
    let dim_of = |i: usize, j: usize| dims[i * n + j];
    let ranges = |i: usize, j: usize| -> (Range<usize>, Range<usize>, Range<usize>) {
        let (t0, u0) = pairs[i];
        let (t1, u1) = pairs[j];
        let dt = t_cat.hom_dim(t0, t1);
        let dm = bimodule.dim(u1, t0);
        let du = u_cat.hom_dim(u0, u1);
        (0..dt, dt..dt + dm, dt + dm..dt + dm + du)
    };

    let mut comp = BTreeMap::new();
    for x in 0..n {
        for y in 0..n {
            let df = dim_of(x, y);
            if df == 0 {
                continue;
            }
            let (f_t, f_m, f_u) = ranges(x, y);
            for z in 0..n {
                let dg = dim_of(y, z);
                let dr = dim_of(x, z);
                if dg == 0 || dr == 0 {
                    continue;
                }
                let (xt, xu) = pairs[x];
                let (yt, yu) = pairs[y];
                let (zt, zu) = pairs[z];
                let (f_t, f_m, f_u) = (f_t.clone(), f_m.clone(), f_u.clone());
                let (g_t, g_m, g_u) = ranges(y, z);
                let (r_t, r_m, r_u) = ranges(x, z);
                let mut table = vec![vec![vec![field.zero(); dr]; df]; dg];

                // t ∘ t → t
                for (gi, gofs) in g_t.clone().enumerate() {
                    for (fi, fofs) in f_t.clone().enumerate() {
                        if let Some(res) = t_cat.compose_basis(xt, yt, zt, gi, fi) {
                            for (k, rofs) in r_t.clone().enumerate() {
                                table[gofs][fofs][rofs] = res[k].clone();
                            }
                        }
                    }
                }
                // m ∘ t → m : m₂ • t₁ via the right action
                if !g_m.is_empty() {
                    for (fi, fofs) in f_t.clone().enumerate() {
                        if let Some(act) = bimodule.right_basis_ref(xt, yt, fi, zu) {
                            for (gi, gofs) in g_m.clone().enumerate() {
                                for (k, rofs) in r_m.clone().enumerate() {
                                    table[gofs][fofs][rofs] = act.entries[k][gi].clone();
                                }
                            }
                        }
                    }
                }
                // u ∘ m → m : u₂ • m₁ via the left action
                if !f_m.is_empty() {
                    for (gi, gofs) in g_u.clone().enumerate() {
                        if let Some(act) = bimodule.left_basis_ref(yu, zu, gi, xt) {
                            for (fi, fofs) in f_m.clone().enumerate() {
                                for (k, rofs) in r_m.clone().enumerate() {
                                    table[gofs][fofs][rofs] = act.entries[k][fi].clone();
                                }
                            }
                        }
                    }
                }
                // u ∘ u → u
                for (gi, gofs) in g_u.clone().enumerate() {
                    for (fi, fofs) in f_u.clone().enumerate() {
                        if let Some(res) = u_cat.compose_basis(xu, yu, zu, gi, fi) {
                            for (k, rofs) in r_u.clone().enumerate() {
                                table[gofs][fofs][rofs] = res[k].clone();
                            }
                        }
                    }
                }
                comp.insert((x, y, z), table);
            }
        }
    }

    let mut id = Vec::with_capacity(n);
    for (i, &(t, u)) in pairs.iter().enumerate() {
        let dim = dim_of(i, i);
        let mut v = vec![field.zero(); dim];
        let (rt, _, ru) = ranges(i, i);
        for (k, ofs) in rt.enumerate() {
            v[ofs] = t_cat.identity(t)[k].clone();
        }
        for (k, ofs) in ru.enumerate() {
            v[ofs] = u_cat.identity(u)[k].clone();
        }
        id.push(v);
    }

    let cat = Arc::new(LinearCategory::new(field, names, hom, comp, id)?);
    Ok(LambdaCategory { cat, t_cat, u_cat, bimodule, pairs })
}

/// The radical block rad_𝒯(T,T') ⊕ M(U',T) ⊕ rad_𝒰(U,U') of
/// Hom_Λ((T,U), (T',U')), as a canonical echelon basis.
pub fn lambda_radical(
    lambda: &LambdaCategory,
    from: usize,
    to: usize,
) -> Result<EchelonBasis, Error> {
    let (t0, u0) = lambda.pairs[from];
    let (t1, u1) = lambda.pairs[to];
    let field = lambda.field();
    let dim = lambda.cat.hom_dim(from, to);
    let (rt, rm, ru) = lambda.block_ranges(from, to);
    let mut vectors = Vec::new();
    let rad_t = crate::category::radical_subspace(&lambda.t_cat, t0, t1)?;
    for row in &rad_t.rows {
        let mut v = vec![field.zero(); dim];
        for (k, ofs) in rt.clone().enumerate() {
            v[ofs] = row[k].clone();
        }
        vectors.push(v);
    }
    for ofs in rm {
        let mut v = vec![field.zero(); dim];
        v[ofs] = field.one();
        vectors.push(v);
    }
    let rad_u = crate::category::radical_subspace(&lambda.u_cat, u0, u1)?;
    for row in &rad_u.rows {
        let mut v = vec![field.zero(); dim];
        for (k, ofs) in ru.clone().enumerate() {
            v[ofs] = row[k].clone();
        }
        vectors.push(v);
    }
    Ok(EchelonBasis::span(field, dim, &vectors))
}

/// The opposite isomorphism 𝕋: Λᵒᵖ → Λ̄ = [𝒰ᵒᵖ 0; M̄ 𝒯ᵒᵖ], as the opposite
/// category, the functor table, and the verification outcome.
#[derive(Debug, Clone)]
pub struct OppositeIso {
    pub lambda_bar: LambdaCategory,
    /// Λ object i ↦ Λ̄ object index.
    pub object_map: Vec<usize>,
    /// For each Λ hom pair (from, to) with nonzero dim: the matrix taking
    /// Hom_Λ(from, to) coordinates to Hom_Λ̄(obj(to), obj(from)) coordinates.
    pub morphism_maps: BTreeMap<(usize, usize), LinearMap>,
}

pub fn opposite_iso(lambda: &LambdaCategory) -> Result<OppositeIso, Error> {
    let m_bar = Arc::new(lambda.bimodule.opposite());
    let lambda_bar = build_lambda_unchecked(
        Arc::clone(&m_bar.t_cat),
        Arc::clone(&m_bar.u_cat),
        Arc::clone(&m_bar),
    )?;
    // Λ object (t, u) ↦ Λ̄ object (u-major in 𝒰ᵒᵖ, t)
    let object_map: Vec<usize> = lambda
        .pairs
        .iter()
        .map(|&(t, u)| lambda_bar.pair_index(u, t))
        .collect();
    let mut morphism_maps = BTreeMap::new();
    for from in 0..lambda.object_count() {
        for to in 0..lambda.object_count() {
            let dim = lambda.cat.hom_dim(from, to);
            if dim == 0 {
                continue;
            }
            let (bf, bt) = (object_map[to], object_map[from]);
            let (rt, rm, ru) = lambda.block_ranges(from, to);
            let (bt_r, bm_r, bu_r) = lambda_bar.block_ranges(bf, bt);
            // t-block ↦ ū-block, m ↦ m̄, u ↦ t̄-block; all identity on
            // coordinates (the underlying spaces coincide)
            debug_assert_eq!(rt.len(), bu_r.len());
            debug_assert_eq!(rm.len(), bm_r.len());
            debug_assert_eq!(ru.len(), bt_r.len());
            let mut map = LinearMap::zero(
                lambda.cat.hom_space(from, to),
                lambda_bar.cat.hom_space(bf, bt),
            );
            for (k, src) in rt.enumerate() {
                map.entries[bu_r.start + k][src] = lambda.field().one();
            }
            for (k, src) in rm.enumerate() {
                map.entries[bm_r.start + k][src] = lambda.field().one();
            }
            for (k, src) in ru.enumerate() {
                map.entries[bt_r.start + k][src] = lambda.field().one();
            }
            morphism_maps.insert((from, to), map);
        }
    }
    let iso = OppositeIso { lambda_bar, object_map, morphism_maps };
    let failures = verify_opposite_iso(lambda, &iso);
    if !failures.is_empty() {
        return Err(Error::InternalConsistency(format!(
            "opposite isomorphism failed verification: {}",
            failures[0]
        )));
    }
    Ok(iso)
}

/// Checks that 𝕋 is a contravariant functor: bijective on every Hom and
/// 𝕋(g∘f) = 𝕋(f) ∘ 𝕋(g) on all basis pairs; identities map to identities.
pub fn verify_opposite_iso(lambda: &LambdaCategory, iso: &OppositeIso) -> Vec<String> {
    let mut failures = Vec::new();
    let n = lambda.object_count();
    let bar = &iso.lambda_bar;
    for from in 0..n {
        for to in 0..n {
            if let Some(map) = iso.morphism_maps.get(&(from, to)) {
                if !map.is_invertible() {
                    failures.push(format!(
                        "T is not bijective on Hom({}, {})",
                        lambda.object_name(from),
                        lambda.object_name(to)
                    ));
                }
            } else if lambda.cat.hom_dim(from, to)
                != bar.cat.hom_dim(iso.object_map[to], iso.object_map[from])
            {
                failures.push(format!(
                    "Hom dimension mismatch at ({}, {})",
                    lambda.object_name(from),
                    lambda.object_name(to)
                ));
            }
        }
    }
    for x in 0..n {
        let id_t = lambda.cat.identity(x);
        if let Some(map) = iso.morphism_maps.get(&(x, x)) {
            let mapped = map.apply(id_t);
            if mapped != bar.cat.identity(iso.object_map[x]) {
                failures.push(format!(
                    "T does not preserve the identity of {}",
                    lambda.object_name(x)
                ));
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            let fdim = lambda.cat.hom_dim(x, y);
            if fdim == 0 {
                continue;
            }
            for z in 0..n {
                let gdim = lambda.cat.hom_dim(y, z);
                if gdim == 0 {
                    continue;
                }
                let fspace = lambda.cat.hom_space(x, y);
                let gspace = lambda.cat.hom_space(y, z);
                for fi in 0..fdim {
                    for gi in 0..gdim {
                        let f = fspace.basis_vec(fi);
                        let g = gspace.basis_vec(gi);
                        let gf = lambda.cat.compose(x, y, z, &g, &f);
                        // Hom(x, z) may be the zero space, with no map entry
                        let lhs = match iso.morphism_maps.get(&(x, z)) {
                            Some(map) => map.apply(&gf),
                            None => Vec::new(),
                        };
                        // T(f) ∘ T(g) in Λ̄: T(g): obj(z)→obj(y), T(f): obj(y)→obj(x)
                        let tf = iso.morphism_maps[&(x, y)].apply(&f);
                        let tg = iso.morphism_maps[&(y, z)].apply(&g);
                        let rhs = bar.cat.compose(
                            iso.object_map[z],
                            iso.object_map[y],
                            iso.object_map[x],
                            &tf,
                            &tg,
                        );
                        if lhs != rhs {
                            failures.push(format!(
                                "T(g∘f) ≠ T(f)∘T(g) at basis ({}, {}) of ({}→{}→{})",
                                fspace.labels[fi],
                                gspace.labels[gi],
                                lambda.object_name(x),
                                lambda.object_name(y),
                                lambda.object_name(z)
                            ));
                        }
                    }
                }
            }
        }
    }
    failures
}

/// Splitting data for one component idempotent e on an object X of a base
/// category: a kernel object with section μ: ker → X and retraction
/// π: X → ker satisfying π∘μ = id and μ∘π = id_X − e.
#[derive(Debug, Clone)]
pub struct ComponentSplitting {
    pub kernel_object: usize,
    pub section: Vec<Scalar>,
    pub retraction: Vec<Scalar>,
}

/// The verified kernel witness of an idempotent of Λ.
#[derive(Debug, Clone)]
pub struct SplitWitness {
    pub kernel_pair: usize,
    pub kernel_morphism: Vec<Scalar>,
}

/// Verifies that an idempotent e = (t, m, u) on Λ object `x` splits, given
/// component splitting data for t in 𝒯 and u in 𝒰. Constructs the kernel
/// inclusion [μ 0; −(m•μ) ν] and checks the universal property of the
/// kernel against every Hom-space of Λ.
pub fn verify_idempotent_split(
    lambda: &LambdaCategory,
    x: usize,
    e: &[Scalar],
    t_split: &ComponentSplitting,
    u_split: &ComponentSplitting,
) -> Result<SplitWitness, Error> {
    let cat = &lambda.cat;
    let ee = cat.compose(x, x, x, e, e);
    if ee != e {
        return Err(Error::NotIdempotent(format!(
            "e∘e ≠ e on {}",
            lambda.object_name(x)
        )));
    }
    let (tx, ux) = lambda.pairs[x];
    let (t, m, u) = lambda.split(x, x, e);

    // validate the component splittings
    let t_cat = &lambda.t_cat;
    let u_cat = &lambda.u_cat;
    let lk = t_split.kernel_object;
    let uk = u_split.kernel_object;
    {
        let pi_mu = t_cat.compose(lk, tx, lk, &t_split.retraction, &t_split.section);
        if pi_mu != t_cat.identity(lk) {
            return Err(Error::BadSplitData("π∘μ ≠ id on the 𝒯 side".into()));
        }
        let mu_pi = t_cat.compose(tx, lk, tx, &t_split.section, &t_split.retraction);
        let expect = vec_sub(t_cat.identity(tx), &t);
        if mu_pi != expect {
            return Err(Error::BadSplitData("μ∘π ≠ 1_T − t".into()));
        }
        let p_nu = u_cat.compose(uk, ux, uk, &u_split.retraction, &u_split.section);
        if p_nu != u_cat.identity(uk) {
            return Err(Error::BadSplitData("p∘ν ≠ id on the 𝒰 side".into()));
        }
        let nu_p = u_cat.compose(ux, uk, ux, &u_split.section, &u_split.retraction);
        let expect = vec_sub(u_cat.identity(ux), &u);
        if nu_p != expect {
            return Err(Error::BadSplitData("ν∘p ≠ 1_U − u".into()));
        }
    }

    let kernel_pair = lambda.pair_index(lk, uk);
    // kernel morphism [μ 0; −(m•μ) ν]: (L, K) → (T, U)
    let m_mu = lambda
        .bimodule
        .right_action(lk, tx, &t_split.section, ux)
        .apply(&m);
    let neg_m_mu: Vec<Scalar> = m_mu.iter().map(|c| -c).collect();
    let k_mor = lambda.morphism(kernel_pair, x, &t_split.section, &neg_m_mu, &u_split.section);

    // e ∘ k = 0
    let ek = cat.compose(kernel_pair, x, x, e, &k_mor);
    if !vec_is_zero(&ek) {
        return Err(Error::InternalConsistency(
            "kernel witness does not satisfy e∘k = 0".into(),
        ));
    }

    // universal property at every object: k∘(−) maps Hom(W, ker) exactly
    // onto the annihilator of e, injectively; the factorization of an
    // annihilated morphism [α 0; n β] is built explicitly as
    // [α′ 0; p•n β′] with μα′ = α, νβ′ = β
    for w in 0..lambda.object_count() {
        let (wt, wu) = lambda.pairs[w];
        let dom = cat.hom_space(w, kernel_pair);
        let tgt = cat.hom_space(w, x);
        let mut k_post = LinearMap::zero(dom.clone(), tgt.clone());
        for j in 0..dom.dim() {
            let col = cat.compose(w, kernel_pair, x, &k_mor, &dom.basis_vec(j));
            for (i, c) in col.iter().enumerate() {
                k_post.entries[i][j] = c.clone();
            }
        }
        if !k_post.is_injective() {
            return Err(Error::InternalConsistency(format!(
                "kernel witness not monic against Hom from {}",
                lambda.object_name(w)
            )));
        }
        let mut e_post = LinearMap::zero(tgt.clone(), tgt.clone());
        for j in 0..tgt.dim() {
            let col = cat.compose(w, x, x, e, &tgt.basis_vec(j));
            for (i, c) in col.iter().enumerate() {
                e_post.entries[i][j] = c.clone();
            }
        }
        let annihilator = crate::linalg::kernel(&e_post);
        let ann_basis = EchelonBasis::span(lambda.field(), tgt.dim(), &annihilator);
        let image = EchelonBasis::span(lambda.field(), tgt.dim(), &k_post.columns());
        if !image.same_subspace(&ann_basis) {
            return Err(Error::InternalConsistency(format!(
                "kernel witness image ≠ annihilator of e at {}",
                lambda.object_name(w)
            )));
        }
        for g in &ann_basis.rows {
            let (alpha, n_part, beta) = lambda.split(w, x, g);
            // α′ with μ∘α′ = α and β′ with ν∘β′ = β
            let mu_post = lambda.t_cat.postcompose_matrix(wt, lk, tx, &t_split.section);
            let alpha_prime = crate::linalg::solve_linear(&mu_post, &alpha)?.ok_or_else(|| {
                Error::InternalConsistency("α does not factor through μ".into())
            })?;
            let nu_post = lambda.u_cat.postcompose_matrix(wu, uk, ux, &u_split.section);
            let beta_prime = crate::linalg::solve_linear(&nu_post, &beta)?.ok_or_else(|| {
                Error::InternalConsistency("β does not factor through ν".into())
            })?;
            // m′ := p • n
            let m_prime = lambda
                .bimodule
                .left_action(ux, uk, &u_split.retraction, wt)
                .apply(&n_part);
            let h = lambda.morphism(w, kernel_pair, &alpha_prime, &m_prime, &beta_prime);
            let kh = cat.compose(w, kernel_pair, x, &k_mor, &h);
            if &kh[..] != g.as_slice() {
                return Err(Error::InternalConsistency(format!(
                    "explicit factorization fails at {}",
                    lambda.object_name(w)
                )));
            }
        }
    }

    Ok(SplitWitness { kernel_pair, kernel_morphism: k_mor })
}

/// Convenience: checks Λ's category axioms exhaustively.
pub fn lambda_axioms(lambda: &LambdaCategory) -> crate::category::AxiomReport {
    check_category_axioms(&lambda.cat)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bimodule::{bimodule_from_hom, zero_bimodule};
    use crate::category::{additive_closure, radical_subspace, FormalSumObject};
    use crate::quiver::{parse_quiver, path_category, A2_PRESENTATION};

    /// The A2 fixture: 𝒯 = {t}, 𝒰 = {u}, M(u,t) = K via Hom.
    pub(crate) fn a2_lambda() -> LambdaCategory {
        let cat = Arc::new(path_category(&parse_quiver(A2_PRESENTATION).unwrap()).unwrap());
        let m = Arc::new(bimodule_from_hom(&cat, &["u".into()], &["t".into()]).unwrap());
        build_lambda(Arc::clone(&m.t_cat), Arc::clone(&m.u_cat), m).unwrap()
    }

    #[test]
    fn a2_lambda_axioms_and_end_dim() {
        let lambda = a2_lambda();
        assert!(lambda_axioms(&lambda).is_pass());
        // End((t,u)) = End(t) ⊕ M(u,t) ⊕ End(u) has dim 3
        assert_eq!(lambda.cat.hom_dim(0, 0), 3);
    }

    #[test]
    fn composition_matches_lower_triangular_matrices() {
        // Λ of the A2 fixture on one object behaves like lower-triangular
        // 2x2 matrices: (t₂,m₂,u₂)∘(t₁,m₁,u₁) = (t₂t₁, m₂t₁+u₂m₁, u₂u₁)
        let lambda = a2_lambda();
        let f = lambda.field();
        let g = lambda.morphism(0, 0, &[f.from_i64(2)], &[f.from_i64(3)], &[f.from_i64(5)]);
        let x = lambda.morphism(0, 0, &[f.from_i64(7)], &[f.from_i64(11)], &[f.from_i64(13)]);
        let gx = lambda.cat.compose(0, 0, 0, &g, &x);
        // oracle: [2 0; 3 5] · [7 0; 11 13] = [14 0; 3·7+5·11 5·13]
        assert_eq!(
            gx,
            lambda.morphism(
                0,
                0,
                &[f.from_i64(14)],
                &[f.from_i64(76)],
                &[f.from_i64(65)]
            )
        );
        // identity law on an arbitrary element
        let id = lambda.cat.identity(0).to_vec();
        assert_eq!(lambda.cat.compose(0, 0, 0, &id, &x), x);
        assert_eq!(lambda.cat.compose(0, 0, 0, &x, &id), x);
    }

    #[test]
    fn zero_bimodule_gives_product_category() {
        let cat = Arc::new(path_category(&parse_quiver(A2_PRESENTATION).unwrap()).unwrap());
        let t_cat = Arc::new(cat.full_subcategory(&["t".into()]).unwrap());
        let u_cat = Arc::new(cat.full_subcategory(&["u".into()]).unwrap());
        let m = Arc::new(zero_bimodule(Arc::clone(&t_cat), Arc::clone(&u_cat)));
        let lambda = build_lambda(t_cat, u_cat, m).unwrap();
        assert!(lambda_axioms(&lambda).is_pass());
        // End((t,u)) = End(t) ⊕ 0 ⊕ End(u)
        assert_eq!(lambda.cat.hom_dim(0, 0), 2);
        // semisimple components with M = 0: the radical vanishes
        assert_eq!(lambda_radical(&lambda, 0, 0).unwrap().dim(), 0);
    }

    #[test]
    fn hom_blocks_sum_to_recorded_dimension() {
        let lambda = a3_lambda();
        for x in 0..lambda.object_count() {
            for y in 0..lambda.object_count() {
                let (rt, rm, ru) = lambda.block_ranges(x, y);
                assert_eq!(rt.len() + rm.len() + ru.len(), lambda.cat.hom_dim(x, y));
            }
        }
    }

    #[test]
    fn a2_radical_formula_matches_end_algebra_route() {
        let lambda = a2_lambda();
        let blocks = lambda_radical(&lambda, 0, 0).unwrap();
        assert_eq!(blocks.dim(), 1); // exactly the M block
        let direct = radical_subspace(&lambda.cat, 0, 0).unwrap();
        assert!(blocks.same_subspace(&direct));
    }

    /// Λ over the additive closures of A3's 𝒯 = add{1,2}, 𝒰 = add{3}.
    fn a3_lambda() -> LambdaCategory {
        let text = "field Q\nvertex 1\nvertex 2\nvertex 3\narrow a : 1 -> 2\narrow b : 2 -> 3\n";
        let cat = Arc::new(path_category(&parse_quiver(text).unwrap()).unwrap());
        let m = Arc::new(
            bimodule_from_hom(&cat, &["3".into()], &["1".into(), "2".into()]).unwrap(),
        );
        build_lambda(Arc::clone(&m.t_cat), Arc::clone(&m.u_cat), m).unwrap()
    }

    #[test]
    fn a3_lambda_radical_dims() {
        let lambda = a3_lambda();
        assert!(lambda_axioms(&lambda).is_pass());
        // rad((1,3),(2,3)) = Hom_𝒯(1,2) ⊕ M(3,1) ⊕ rad End(3) = 1 + 1 + 0
        let from = lambda.pair_index(0, 0);
        let to = lambda.pair_index(1, 0);
        let rad = lambda_radical(&lambda, from, to).unwrap();
        assert_eq!(rad.dim(), 2);
        let direct = radical_subspace(&lambda.cat, from, to).unwrap();
        assert!(rad.same_subspace(&direct));
    }

    /// Λ over a truncated loop: 𝒯 = {p}, 𝒰 = {v} with End(v) = K[x]/(x²),
    /// M(v, p) spanned by {m, x*m}. The u-side endomorphism algebra is
    /// local non-semisimple, so the radical block formula gets a nonzero
    /// rad_𝒰 contribution.
    fn loop_lambda() -> LambdaCategory {
        let text = "\
field Q
vertex p
vertex v
arrow m : p -> v
arrow x : v -> v
relation 1 x*x
maxlen 3
";
        let q = parse_quiver(text).unwrap();
        let cat = Arc::new(path_category(&q).unwrap());
        let bm = Arc::new(bimodule_from_hom(&cat, &["v".into()], &["p".into()]).unwrap());
        build_lambda(Arc::clone(&bm.t_cat), Arc::clone(&bm.u_cat), bm).unwrap()
    }

    #[test]
    fn radical_with_nonsemisimple_component() {
        let lambda = loop_lambda();
        assert!(lambda_axioms(&lambda).is_pass());
        assert_eq!(lambda.bimodule.dim(0, 0), 2); // {m, x*m}
        // rad End((p,v)) = rad End(p) ⊕ M(v,p) ⊕ rad End(v) = 0 + 2 + 1
        let rad = lambda_radical(&lambda, 0, 0).unwrap();
        assert_eq!(rad.dim(), 3);
        let direct = radical_subspace(&lambda.cat, 0, 0).unwrap();
        assert!(rad.same_subspace(&direct));
        // the opposite isomorphism survives the nilpotent loop
        let iso = opposite_iso(&lambda).unwrap();
        assert!(lambda_axioms(&iso.lambda_bar).is_pass());
    }

    #[test]
    fn equivalence_and_duality_over_nonsemisimple_component() {
        use rand::SeedableRng;
        let lambda = loop_lambda();
        let iso = opposite_iso(&lambda).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(53);
        for _ in 0..5 {
            let (tr, _) =
                crate::comma::random_triple(&lambda.bimodule, &mut rng, 2).unwrap();
            assert!(tr.check().is_empty());
            let c = crate::comma::module_from_triple(&tr, &lambda).unwrap();
            let back = crate::comma::triple_from_module(&c, &lambda).unwrap();
            for u in 0..tr.b.value.len() {
                assert_eq!(back.triple.b.dim_at(u), tr.b.dim_at(u));
            }
            let w = crate::duality::nu_square_check_with(&tr, &lambda, &iso).unwrap();
            assert!(w.is_pass(), "{:?}", w.failures);
        }
        crate::comma::projective_triple(&lambda, 0, 0).unwrap();
    }

    #[test]
    fn opposite_iso_verifies() {
        for lambda in [a2_lambda(), a3_lambda()] {
            let iso = opposite_iso(&lambda).unwrap();
            assert!(lambda_axioms(&iso.lambda_bar).is_pass());
            // hom dims mirror
            for i in 0..lambda.object_count() {
                for j in 0..lambda.object_count() {
                    assert_eq!(
                        lambda.cat.hom_dim(i, j),
                        iso.lambda_bar
                            .cat
                            .hom_dim(iso.object_map[j], iso.object_map[i])
                    );
                }
            }
        }
    }

    #[test]
    fn opposite_iso_maps_m_identically() {
        let lambda = a2_lambda();
        let iso = opposite_iso(&lambda).unwrap();
        // basis m of M(u, t) maps to the same m viewed in M̄(t, u)
        let (_, rm, _) = lambda.block_ranges(0, 0);
        let v = lambda.cat.hom_space(0, 0).basis_vec(rm.start);
        let mapped = iso.morphism_maps[&(0, 0)].apply(&v);
        let (_, bm, _) = iso.lambda_bar.block_ranges(0, 0);
        assert_eq!(mapped[bm.start], lambda.field().one());
    }

    /// Λ over closures including zero objects, for idempotent splitting.
    fn a2_lambda_with_zeros() -> LambdaCategory {
        let cat = Arc::new(path_category(&parse_quiver(A2_PRESENTATION).unwrap()).unwrap());
        let t_base = cat.full_subcategory(&["t".into()]).unwrap();
        let u_base = cat.full_subcategory(&["u".into()]).unwrap();
        let t_cl = additive_closure(
            &t_base,
            &[FormalSumObject::zero(), FormalSumObject::singleton("t")],
        )
        .unwrap();
        let u_cl = additive_closure(
            &u_base,
            &[FormalSumObject::zero(), FormalSumObject::singleton("u")],
        )
        .unwrap();
        let t_cat = Arc::new(t_cl.cat);
        let u_cat = Arc::new(u_cl.cat);
        // bimodule: M(u-sum, t-sum) = block of Hom_C(t, u); only the
        // (singleton, singleton) block is nonzero and 1-dimensional
        let mut space = BTreeMap::new();
        space.insert(
            (1usize, 1usize),
            VectorSpace::new(cat.field, vec!["a".into()]).unwrap(),
        );
        let mut left = BTreeMap::new();
        left.insert(
            (1usize, 1usize, 0usize, 1usize),
            LinearMap::identity(&space[&(1, 1)]),
        );
        let mut right = BTreeMap::new();
        right.insert(
            (1usize, 1usize, 0usize, 1usize),
            LinearMap::identity(&space[&(1, 1)]),
        );
        let m = Arc::new(
            Bimodule::new(Arc::clone(&t_cat), Arc::clone(&u_cat), space, left, right).unwrap(),
        );
        build_lambda(t_cat, u_cat, m).unwrap()
    }

    #[test]
    fn idempotent_splitting_witnesses() {
        let lambda = a2_lambda_with_zeros();
        assert!(lambda_axioms(&lambda).is_pass());
        let x = lambda.pair_index(1, 1); // the (t, u) object
        let f = lambda.field();

        // e = identity: kernel is the zero pair
        let e = lambda.cat.identity(x).to_vec();
        let t_split = ComponentSplitting {
            kernel_object: 0,
            section: vec![],
            retraction: vec![],
        };
        let u_split = ComponentSplitting {
            kernel_object: 0,
            section: vec![],
            retraction: vec![],
        };
        let w = verify_idempotent_split(&lambda, x, &e, &t_split, &u_split).unwrap();
        assert_eq!(w.kernel_pair, lambda.pair_index(0, 0));

        // e = 0: kernel is the whole object, witness the identity
        let e = vec![f.zero(); lambda.cat.hom_dim(x, x)];
        let t_split = ComponentSplitting {
            kernel_object: 1,
            section: vec![f.one()],
            retraction: vec![f.one()],
        };
        let u_split = ComponentSplitting {
            kernel_object: 1,
            section: vec![f.one()],
            retraction: vec![f.one()],
        };
        let w = verify_idempotent_split(&lambda, x, &e, &t_split, &u_split).unwrap();
        assert_eq!(w.kernel_pair, x);
        assert_eq!(w.kernel_morphism, lambda.cat.identity(x).to_vec());

        // e = (0, 0, 1_u): kernel is (t, 0)
        let e = lambda.morphism(x, x, &[f.zero()], &[f.zero()], &[f.one()]);
        let t_split = ComponentSplitting {
            kernel_object: 1,
            section: vec![f.one()],
            retraction: vec![f.one()],
        };
        let u_split = ComponentSplitting {
            kernel_object: 0,
            section: vec![],
            retraction: vec![],
        };
        let w = verify_idempotent_split(&lambda, x, &e, &t_split, &u_split).unwrap();
        assert_eq!(w.kernel_pair, lambda.pair_index(1, 0));

        // non-idempotent input is rejected
        let bad = lambda.morphism(x, x, &[f.from_i64(2)], &[f.zero()], &[f.zero()]);
        assert!(matches!(
            verify_idempotent_split(&lambda, x, &bad, &t_split, &u_split),
            Err(Error::NotIdempotent(_))
        ));
    }

    #[test]
    fn finite_coproducts_dimension_count() {
        // Hom((T⊕T', U⊕U'), Z) ≅ Hom((T,U), Z) ⊕ Hom((T',U'), Z)
        let lambda = a3_lambda();
        // build the closure of Λ itself on sums of pair objects
        let names: Vec<String> = lambda.cat.objects.clone();
        let sum = FormalSumObject::new(vec![names[0].clone(), names[1].clone()]);
        let closure = additive_closure(
            &lambda.cat,
            &[
                sum,
                FormalSumObject::singleton(&names[0]),
                FormalSumObject::singleton(&names[1]),
            ],
        )
        .unwrap();
        for z in 0..3 {
            assert_eq!(
                closure.cat.hom_dim(0, z),
                closure.cat.hom_dim(1, z) + closure.cat.hom_dim(2, z)
            );
        }
        assert!(check_category_axioms(&closure.cat).is_pass());
    }
}
