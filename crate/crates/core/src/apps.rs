//! Quiver applications of triangular matrix categories: splitting torsion
//! pairs, one-point extensions, and the Hom / Ext¹ matrix categories.
//!
//! A splitting torsion pair (𝒰, 𝒯) of a category C (no nonzero morphisms
//! from 𝒰 into 𝒯) yields an equivalence C ≅ [𝒯 0; Ĥom 𝒰]: each object
//! lands in the pair with a zero slot, f ↦ [f₁₁ 0; f₂₁ f₂₂]. The one-point
//! extension of a quiver algebra at a source vertex i is the special case
//! 𝒯 = {i} (End(i) = K), 𝒰 = everything else.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::bimodule::{bimodule_from_hom, closure_bimodule, hom_bimodule_full};
use crate::category::{additive_closure, FormalSumObject, LinearCategory};
use crate::error::Error;
use crate::field::Scalar;
use crate::linalg::LinearMap;
use crate::module::FiniteModule;
use crate::quiver::{parse_quiver, path_category, QuiverPresentation};
use crate::trimat::{build_lambda, LambdaCategory};

/// A splitting torsion pair: a partition of the objects of `cat` with no
/// nonzero morphisms from the 𝒰 part into the 𝒯 part.
#[derive(Debug, Clone)]
pub struct TorsionPairSpec {
    pub cat: Arc<LinearCategory>,
    pub u_objs: Vec<String>,
    pub t_objs: Vec<String>,
}

impl TorsionPairSpec {
    /// Validates the partition and the vanishing condition
    /// Hom(X, Y) = 0 for X ∈ 𝒰, Y ∈ 𝒯. Reports a witness morphism on
    /// violation.
    pub fn validate(&self) -> Result<(), Error> {
        let n = self.cat.object_count();
        let mut seen = vec![false; n];
        for name in self.u_objs.iter().chain(&self.t_objs) {
            let i = self.cat.object_index(name)?;
            if seen[i] {
                return Err(Error::InvalidInput(format!(
                    "object {} appears twice in the partition",
                    name
                )));
            }
            seen[i] = true;
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::InvalidInput(
                "partition does not cover all objects".into(),
            ));
        }
        for u in &self.u_objs {
            let ui = self.cat.object_index(u)?;
            for t in &self.t_objs {
                let ti = self.cat.object_index(t)?;
                let space = self.cat.hom_space(ui, ti);
                if space.dim() > 0 {
                    return Err(Error::TorsionPairViolation {
                        witness: format!("{}: {} → {}", space.labels[0], u, t),
                    });
                }
            }
        }
        Ok(())
    }
}

/// The verified equivalence H: C ≅ [𝒯 0; Ĥom 𝒰].
#[derive(Debug, Clone)]
pub struct SplittingEquivalence {
    pub lambda: LambdaCategory,
    /// C object index ↦ Λ object index.
    pub object_map: Vec<usize>,
    /// H on each Hom-space of C with nonzero dimension.
    pub hom_maps: BTreeMap<(usize, usize), LinearMap>,
}

/// Builds Λ from the Hom-bimodule of the partition and the functor table
/// of H, then verifies that H is a dimension-exact linear bijection on
/// every Hom-space and preserves identities and composition on all basis
/// pairs.
pub fn splitting_equivalence(spec: &TorsionPairSpec) -> Result<SplittingEquivalence, Error> {
    spec.validate()?;
    let cat = &spec.cat;
    let m = bimodule_from_hom(cat, &spec.u_objs, &spec.t_objs)?;

    // close both sides up with a zero object so every C object appears as
    // a pair with an empty slot
    let mut t_sums = vec![FormalSumObject::zero()];
    t_sums.extend(spec.t_objs.iter().map(|n| FormalSumObject::singleton(n)));
    let mut u_sums = vec![FormalSumObject::zero()];
    u_sums.extend(spec.u_objs.iter().map(|n| FormalSumObject::singleton(n)));
    let t_closure = additive_closure(&m.t_cat, &t_sums)?;
    let u_closure = additive_closure(&m.u_cat, &u_sums)?;
    let m_plus = Arc::new(closure_bimodule(&m, &t_closure, &u_closure)?);
    let lambda = build_lambda(
        Arc::clone(&m_plus.t_cat),
        Arc::clone(&m_plus.u_cat),
        m_plus,
    )?;

    // object map: t-object k ↦ ([k], 0), u-object k ↦ (0, [k])
    let mut object_map = vec![0usize; cat.object_count()];
    for (k, name) in spec.t_objs.iter().enumerate() {
        object_map[cat.object_index(name)?] = lambda.pair_index(k + 1, 0);
    }
    for (k, name) in spec.u_objs.iter().enumerate() {
        object_map[cat.object_index(name)?] = lambda.pair_index(0, k + 1);
    }

    // H on morphisms: each basis morphism lands in the matching block
    let side = |x: usize| -> (bool, usize) {
        let name = &cat.objects[x];
        if let Some(k) = spec.t_objs.iter().position(|n| n == name) {
            (true, k + 1)
        } else {
            let k = spec.u_objs.iter().position(|n| n == name).unwrap();
            (false, k + 1)
        }
    };
    let mut hom_maps = BTreeMap::new();
    for x in 0..cat.object_count() {
        for y in 0..cat.object_count() {
            let dim = cat.hom_dim(x, y);
            if dim == 0 {
                continue;
            }
            let (px, py) = (object_map[x], object_map[y]);
            let target = lambda.cat.hom_space(px, py);
            if target.dim() != dim {
                return Err(Error::InternalConsistency(format!(
                    "Hom dimension mismatch under H at ({}, {})",
                    cat.objects[x], cat.objects[y]
                )));
            }
            let (rt, rm, ru) = lambda.block_ranges(px, py);
            let offset = match (side(x).0, side(y).0) {
                (true, true) => rt.start,
                (true, false) => rm.start,
                (false, false) => ru.start,
                (false, true) => unreachable!("torsion condition was validated"),
            };
            let mut map = LinearMap::zero(cat.hom_space(x, y), target);
            for k in 0..dim {
                map.entries[offset + k][k] = cat.field.one();
            }
            hom_maps.insert((x, y), map);
        }
    }

    let eq = SplittingEquivalence { lambda, object_map, hom_maps };
    let failures = verify_equivalence(cat, &eq);
    if !failures.is_empty() {
        return Err(Error::InternalConsistency(failures[0].clone()));
    }
    Ok(eq)
}

/// Checks that H is bijective on every Hom and preserves identities and
/// composition on all basis pairs.
pub fn verify_equivalence(cat: &LinearCategory, eq: &SplittingEquivalence) -> Vec<String> {
    let mut failures = Vec::new();
    let n = cat.object_count();
    for x in 0..n {
        for y in 0..n {
            let dim = cat.hom_dim(x, y);
            let target_dim = eq
                .lambda
                .cat
                .hom_dim(eq.object_map[x], eq.object_map[y]);
            if dim != target_dim {
                failures.push(format!(
                    "dim Hom({}, {}) = {} but dim Hom(H−, H−) = {}",
                    cat.objects[x], cat.objects[y], dim, target_dim
                ));
                continue;
            }
            if let Some(map) = eq.hom_maps.get(&(x, y)) {
                if !map.is_invertible() {
                    failures.push(format!(
                        "H is not bijective on Hom({}, {})",
                        cat.objects[x], cat.objects[y]
                    ));
                }
            }
        }
    }
    for x in 0..n {
        if let Some(map) = eq.hom_maps.get(&(x, x)) {
            let hid = map.apply(cat.identity(x));
            if hid != eq.lambda.cat.identity(eq.object_map[x]) {
                failures.push(format!("H does not preserve the identity of {}", cat.objects[x]));
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            if cat.hom_dim(x, y) == 0 {
                continue;
            }
            for z in 0..n {
                if cat.hom_dim(y, z) == 0 {
                    continue;
                }
                let fs = cat.hom_space(x, y);
                let gs = cat.hom_space(y, z);
                for fi in 0..fs.dim() {
                    for gi in 0..gs.dim() {
                        let f = fs.basis_vec(fi);
                        let g = gs.basis_vec(gi);
                        let gf = cat.compose(x, y, z, &g, &f);
                        let lhs = match eq.hom_maps.get(&(x, z)) {
                            Some(mp) => mp.apply(&gf),
                            None => Vec::new(),
                        };
                        let hf = eq.hom_maps[&(x, y)].apply(&f);
                        let hg = eq.hom_maps[&(y, z)].apply(&g);
                        let rhs = eq.lambda.cat.compose(
                            eq.object_map[x],
                            eq.object_map[y],
                            eq.object_map[z],
                            &hg,
                            &hf,
                        );
                        if lhs != rhs {
                            failures.push(format!(
                                "H(g∘f) ≠ H(g)∘H(f) at basis ({}, {}) of ({}→{}→{})",
                                fs.labels[fi],
                                gs.labels[gi],
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

/// A one-point extension at a source vertex: Λ = [K 0; Hom(i, −) Λ'] with
/// Λ' the path category of the quiver minus the vertex.
#[derive(Debug, Clone)]
pub struct OnePointExtension {
    pub equivalence: SplittingEquivalence,
    pub q_prime: QuiverPresentation,
    /// dim M(u, •) = dim Hom(i, u) for each remaining vertex, in Q' order.
    pub m_dims: Vec<usize>,
}

pub fn one_point_extension(
    q: &QuiverPresentation,
    source: &str,
) -> Result<OnePointExtension, Error> {
    let i = q.vertex_index(source)?;
    if q.arrows.iter().any(|a| a.target == i) {
        return Err(Error::NotASource(source.to_string()));
    }
    let cat = Arc::new(path_category(q)?);
    let u_objs: Vec<String> = q
        .vertices
        .iter()
        .filter(|v| v.as_str() != source)
        .cloned()
        .collect();
    let spec = TorsionPairSpec {
        cat: Arc::clone(&cat),
        u_objs: u_objs.clone(),
        t_objs: vec![source.to_string()],
    };
    let equivalence = splitting_equivalence(&spec)?;

    // End(i) must be the ground field
    {
        let ti = cat.object_index(source)?;
        if cat.hom_dim(ti, ti) != 1 {
            return Err(Error::InternalConsistency(format!(
                "End({}) is not one-dimensional",
                source
            )));
        }
    }

    // Q' = Q minus the vertex, relations restricted to those not starting
    // at i; its path category must coincide with the full subcategory of
    // KQ/I on the remaining vertices
    let q_prime = restrict_quiver(q, i)?;
    let prime_cat = path_category(&q_prime)?;
    let sub = cat.full_subcategory(&u_objs)?;
    for x in 0..u_objs.len() {
        for y in 0..u_objs.len() {
            if prime_cat.hom_dim(x, y) != sub.hom_dim(x, y)
                || prime_cat.hom_space(x, y).labels != sub.hom_space(x, y).labels
            {
                return Err(Error::InternalConsistency(format!(
                    "KQ' differs from the restriction at Hom({}, {})",
                    u_objs[x], u_objs[y]
                )));
            }
        }
    }
    if prime_cat.comp_tables() != sub.comp_tables() {
        return Err(Error::InternalConsistency(
            "KQ' composition differs from the restriction".into(),
        ));
    }

    let ii = cat.object_index(source)?;
    let m_dims = u_objs
        .iter()
        .map(|u| cat.hom_dim(ii, cat.object_index(u).unwrap()))
        .collect();
    Ok(OnePointExtension { equivalence, q_prime, m_dims })
}

fn restrict_quiver(q: &QuiverPresentation, removed: usize) -> Result<QuiverPresentation, Error> {
    let vertices: Vec<String> = q
        .vertices
        .iter()
        .enumerate()
        .filter(|(k, _)| *k != removed)
        .map(|(_, v)| v.clone())
        .collect();
    let mut text = format!("field {}\nmaxlen {}\n", q.field, q.max_path_length);
    for v in &vertices {
        text.push_str(&format!("vertex {}\n", v));
    }
    for a in &q.arrows {
        if a.source != removed && a.target != removed {
            text.push_str(&format!(
                "arrow {} : {} -> {}\n",
                a.name, q.vertices[a.source], q.vertices[a.target]
            ));
        }
    }
    for rel in &q.relations {
        let src = q.arrows[rel.terms[0].1[0]].source;
        if src == removed {
            continue;
        }
        let terms: Vec<String> = rel
            .terms
            .iter()
            .map(|(c, path)| {
                let path_str = path
                    .iter()
                    .rev()
                    .map(|&a| q.arrows[a].name.clone())
                    .collect::<Vec<_>>()
                    .join("*");
                format!("{} {}", c, path_str)
            })
            .collect();
        text.push_str(&format!("relation {}\n", terms.join(" + ")));
    }
    parse_quiver(&text)
}

/// The Hom matrix category [C 0; Ĥom C] over the duplicated object set.
pub fn hom_matrix_category(cat: &LinearCategory) -> Result<LambdaCategory, Error> {
    let m = Arc::new(hom_bimodule_full(cat)?);
    build_lambda(Arc::clone(&m.t_cat), Arc::clone(&m.u_cat), m)
}

/// The Ext¹ matrix category [𝒞 0; Êxt¹ 𝒞] over the subcategory of
/// representations spanned by `reps` of an acyclic relation-free quiver.
pub fn ext1_matrix_category(
    q: &QuiverPresentation,
    path_cat: &Arc<LinearCategory>,
    rep_names: &[String],
    reps: &[FiniteModule],
) -> Result<LambdaCategory, Error> {
    let (_, m) = crate::bimodule::bimodule_ext1(q, path_cat, rep_names, reps)?;
    let m = Arc::new(m);
    build_lambda(Arc::clone(&m.t_cat), Arc::clone(&m.u_cat), m)
}

/// Restriction of a Λ built by `hom_matrix_category` to its 𝒯-diagonal:
/// the pair objects (X, X₀) with the t-blocks recover C exactly.
pub fn hom_matrix_t_diagonal(lambda: &LambdaCategory) -> Result<LinearCategory, Error> {
    // pairs (t, 0): full subcategory on the t-block coordinates
    let t_cat = &lambda.t_cat;
    // project the t-blocks: the composition of t-blocks stays in t-blocks
    let mut hom = BTreeMap::new();
    let mut comp: BTreeMap<(usize, usize, usize), Vec<Vec<Vec<Scalar>>>> = BTreeMap::new();
    let mut id = Vec::new();
    let n = t_cat.object_count();
    for x in 0..n {
        for y in 0..n {
            let space = t_cat.hom_space(x, y);
            if space.dim() > 0 {
                hom.insert((x, y), space);
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let px = lambda.pair_index(x, 0);
                let py = lambda.pair_index(y, 0);
                let pz = lambda.pair_index(z, 0);
                let df = t_cat.hom_dim(x, y);
                let dg = t_cat.hom_dim(y, z);
                let dr = t_cat.hom_dim(x, z);
                if df == 0 || dg == 0 || dr == 0 {
                    continue;
                }
                let (f_t, _, _) = lambda.block_ranges(px, py);
                let (g_t, _, _) = lambda.block_ranges(py, pz);
                let (r_t, _, _) = lambda.block_ranges(px, pz);
                let mut table = vec![vec![vec![t_cat.field.zero(); dr]; df]; dg];
                for (gi, gofs) in g_t.clone().enumerate() {
                    for (fi, fofs) in f_t.clone().enumerate() {
                        let g = lambda.cat.hom_space(py, pz).basis_vec(gofs);
                        let f = lambda.cat.hom_space(px, py).basis_vec(fofs);
                        let res = lambda.cat.compose(px, py, pz, &g, &f);
                        for (k, rofs) in r_t.clone().enumerate() {
                            table[gi][fi][k] = res[rofs].clone();
                        }
                    }
                }
                comp.insert((x, y, z), table);
            }
        }
    }
    for x in 0..n {
        let px = lambda.pair_index(x, 0);
        let idv = lambda.cat.identity(px);
        let (rt, _, _) = lambda.block_ranges(px, px);
        id.push(idv[rt].to_vec());
    }
    LinearCategory::new(t_cat.field, t_cat.objects.clone(), hom, comp, id)
}

/// A doubly-infinite ladder quiver truncated to the finite window
/// {u_i, t_i : |i| ≤ n}, with arrows t_i → u_i, t_i → t_{i+1}, and
/// t_i → u_{i+1}. Hom-spaces near the boundary are those of the window,
/// not of the infinite quiver; pick n large enough for the objects you
/// care about.
pub fn window_presentation(n: usize) -> String {
    let name = |prefix: &str, i: i64| {
        if i < 0 {
            format!("{}m{}", prefix, -i)
        } else {
            format!("{}{}", prefix, i)
        }
    };
    let n = n as i64;
    let mut text = String::from("field Q\n");
    text.push_str(&format!("maxlen {}\n", 2 * n + 2));
    for i in -n..=n {
        text.push_str(&format!("vertex {}\n", name("t", i)));
    }
    for i in -n..=n {
        text.push_str(&format!("vertex {}\n", name("u", i)));
    }
    for i in -n..=n {
        text.push_str(&format!(
            "arrow {} : {} -> {}\n",
            name("v", i),
            name("t", i),
            name("u", i)
        ));
    }
    for i in -n..n {
        text.push_str(&format!(
            "arrow {} : {} -> {}\n",
            name("h", i),
            name("t", i),
            name("t", i + 1)
        ));
        text.push_str(&format!(
            "arrow {} : {} -> {}\n",
            name("d", i),
            name("t", i),
            name("u", i + 1)
        ));
    }
    text
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::check_category_axioms;
    use crate::quiver::A2_PRESENTATION;

    fn a2_cat() -> Arc<LinearCategory> {
        Arc::new(path_category(&parse_quiver(A2_PRESENTATION).unwrap()).unwrap())
    }

    #[test]
    fn a2_torsion_pair() {
        let cat = a2_cat();
        let spec = TorsionPairSpec {
            cat: Arc::clone(&cat),
            u_objs: vec!["u".into()],
            t_objs: vec!["t".into()],
        };
        let eq = splitting_equivalence(&spec).unwrap();
        // H bijects Hom(t, u) (dim 1) onto the m-block
        let (t, u) = (0, 1);
        let map = &eq.hom_maps[&(t, u)];
        let (_, rm, _) = eq
            .lambda
            .block_ranges(eq.object_map[t], eq.object_map[u]);
        assert_eq!(map.entries[rm.start][0], cat.field.one());
        assert!(check_category_axioms(&eq.lambda.cat).is_pass());
    }

    #[test]
    fn torsion_pair_violation_reports_witness() {
        let cat = a2_cat();
        // wrong orientation: u-part {t} has the arrow a: t → u into the
        // t-part {u}
        let spec = TorsionPairSpec {
            cat,
            u_objs: vec!["t".into()],
            t_objs: vec!["u".into()],
        };
        match splitting_equivalence(&spec) {
            Err(Error::TorsionPairViolation { witness }) => {
                assert!(witness.contains('a'), "witness: {}", witness);
            }
            other => panic!("expected torsion violation, got {:?}", other.map(|_| ())),
        }
    }

    #[test]
    fn a3_sink_torsion_pair() {
        let text = "field Q\nvertex 1\nvertex 2\nvertex 3\narrow a : 1 -> 2\narrow b : 2 -> 3\n";
        let q = parse_quiver(text).unwrap();
        let cat = Arc::new(path_category(&q).unwrap());
        let spec = TorsionPairSpec {
            cat: Arc::clone(&cat),
            u_objs: vec!["3".into()],
            t_objs: vec!["1".into(), "2".into()],
        };
        let eq = splitting_equivalence(&spec).unwrap();
        for x in 0..3 {
            for y in 0..3 {
                assert_eq!(
                    cat.hom_dim(x, y),
                    eq.lambda.cat.hom_dim(eq.object_map[x], eq.object_map[y])
                );
            }
        }
    }

    #[test]
    fn one_point_extension_a2() {
        let q = parse_quiver(A2_PRESENTATION).unwrap();
        let ext = one_point_extension(&q, "t").unwrap();
        assert_eq!(ext.m_dims, vec![1]);
        assert_eq!(ext.q_prime.vertices, vec!["u".to_string()]);
    }

    #[test]
    fn one_point_extension_a3() {
        let text = "field Q\nvertex 1\nvertex 2\nvertex 3\narrow a : 1 -> 2\narrow b : 2 -> 3\n";
        let q = parse_quiver(text).unwrap();
        let ext = one_point_extension(&q, "1").unwrap();
        // M(2,•) = Hom(1,2) dim 1; M(3,•) = Hom(1,3) dim 1
        assert_eq!(ext.m_dims, vec![1, 1]);
        // not a source: vertex 2 has an incoming arrow
        assert!(matches!(
            one_point_extension(&q, "2"),
            Err(Error::NotASource(_))
        ));
    }

    #[test]
    fn one_point_extension_with_relation() {
        let text = "field Q\nvertex 1\nvertex 2\nvertex 3\narrow a : 1 -> 2\narrow b : 2 -> 3\nrelation 1 b*a\n";
        let q = parse_quiver(text).unwrap();
        let ext = one_point_extension(&q, "1").unwrap();
        // the relation kills the long path: M(3,•) = 0
        assert_eq!(ext.m_dims, vec![1, 0]);
        // Q' keeps no relations (the only one started at 1)
        assert!(ext.q_prime.relations.is_empty());
    }

    #[test]
    fn hom_matrix_of_point() {
        // C = single object K: Λ is the lower-triangular 2x2 algebra seen
        // as a one-object-pair category with End of dim 3
        let text = "field Q\nvertex p\n";
        let cat = path_category(&parse_quiver(text).unwrap()).unwrap();
        let lambda = hom_matrix_category(&cat).unwrap();
        assert_eq!(lambda.object_count(), 1);
        assert_eq!(lambda.cat.hom_dim(0, 0), 3);
        assert!(check_category_axioms(&lambda.cat).is_pass());
    }

    #[test]
    fn hom_matrix_of_a2() {
        let cat = a2_cat();
        let lambda = hom_matrix_category(&cat).unwrap();
        assert_eq!(lambda.object_count(), 4);
        assert!(check_category_axioms(&lambda.cat).is_pass());
        // Hom((t,t),(u,u)) = Hom(t,u) ⊕ Ĥom(u,t) ⊕ Hom(t,u) = 1 + 1 + 1
        let from = lambda.pair_index(0, 0);
        let to = lambda.pair_index(1, 1);
        assert_eq!(lambda.cat.hom_dim(from, to), 3);
        // restricting to the 𝒯-diagonal recovers C exactly
        let diag = hom_matrix_t_diagonal(&lambda).unwrap();
        assert_eq!(diag.comp_tables(), cat.comp_tables());
        for x in 0..2 {
            for y in 0..2 {
                assert_eq!(diag.hom_dim(x, y), cat.hom_dim(x, y));
            }
        }
    }

    #[test]
    fn hom_matrix_of_discrete_category() {
        // two objects, no morphisms between them: only diagonal M blocks
        let text = "field Q\nvertex x\nvertex y\n";
        let cat = path_category(&parse_quiver(text).unwrap()).unwrap();
        let lambda = hom_matrix_category(&cat).unwrap();
        for from in 0..4 {
            for to in 0..4 {
                let (ft, fu) = lambda.pairs[from];
                let (tt, tu) = lambda.pairs[to];
                let expect = usize::from(ft == tt)
                    + usize::from(tu == ft)
                    + usize::from(fu == tu);
                assert_eq!(lambda.cat.hom_dim(from, to), expect);
            }
        }
    }

    #[test]
    fn ext1_matrix_on_a2_simples() {
        let q = parse_quiver(A2_PRESENTATION).unwrap();
        let cat = Arc::new(path_category(&q).unwrap());
        let field = cat.field;
        let mk_simple = |v: usize| {
            let mut value = vec![crate::linalg::VectorSpace::zero(field); 2];
            value[v] = crate::linalg::VectorSpace::numbered(field, "s", 1);
            let mut m = FiniteModule::new(Arc::clone(&cat), value, BTreeMap::new()).unwrap();
            m.fill_identity_actions();
            m
        };
        let names = vec!["S1".to_string(), "S2".to_string()];
        let lambda =
            ext1_matrix_category(&q, &cat, &names, &[mk_simple(0), mk_simple(1)]).unwrap();
        assert!(check_category_axioms(&lambda.cat).is_pass());
        // unique nonzero M block: M(S2-slot, S1-slot) of dim 1
        let mut nonzero = Vec::new();
        for u in 0..2 {
            for t in 0..2 {
                let d = lambda.bimodule.dim(u, t);
                if d > 0 {
                    nonzero.push((u, t, d));
                }
            }
        }
        assert_eq!(nonzero, vec![(1, 0, 1)]);
    }

    #[test]
    fn window_fixture_parses_and_splits() {
        let text = window_presentation(1);
        let q = parse_quiver(&text).unwrap();
        let cat = Arc::new(path_category(&q).unwrap());
        let u_objs: Vec<String> = q
            .vertices
            .iter()
            .filter(|v| v.starts_with('u'))
            .cloned()
            .collect();
        let t_objs: Vec<String> = q
            .vertices
            .iter()
            .filter(|v| v.starts_with('t'))
            .cloned()
            .collect();
        let spec = TorsionPairSpec { cat: Arc::clone(&cat), u_objs, t_objs };
        let eq = splitting_equivalence(&spec).unwrap();
        // Hom(t_i, u_j) has dim 2 for j > i, 1 for j = i
        let ti = cat.object_index("tm1").unwrap();
        let u0 = cat.object_index("u0").unwrap();
        let um1 = cat.object_index("um1").unwrap();
        assert_eq!(cat.hom_dim(ti, u0), 2);
        assert_eq!(cat.hom_dim(ti, um1), 1);
        assert_eq!(
            eq.lambda.cat.hom_dim(eq.object_map[ti], eq.object_map[u0]),
            2
        );
    }
}
