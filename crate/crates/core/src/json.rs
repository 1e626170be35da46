//! JSON serialization of categories, bimodules, Λ, modules, triples, and
//! witness reports.
//!
//! Scalars serialize as strings (`p/q` over ℚ with `q > 0` and `gcd = 1`,
//! plain integers when `q = 1`; decimal integers in `[0, p)` over F_p).
//! Matrices are sparse `(row, col, value)` triple lists; every collection
//! is emitted in a deterministic order, so identical inputs serialize to
//! byte-identical documents.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::bimodule::Bimodule;
use crate::category::LinearCategory;
use crate::comma::ModuleTriple;
use crate::error::Error;
use crate::field::{Field, Scalar};
use crate::linalg::{LinearMap, VectorSpace};
use crate::module::FiniteModule;
use crate::trimat::{build_lambda, build_lambda_unchecked, LambdaCategory};

pub const SCHEMA_VERSION: u32 = 1;

pub type SparseMatrix = Vec<(usize, usize, String)>;

fn matrix_to_sparse(m: &LinearMap) -> SparseMatrix {
    let mut out = Vec::new();
    for (r, row) in m.entries.iter().enumerate() {
        for (c, v) in row.iter().enumerate() {
            if !v.is_zero() {
                out.push((r, c, v.to_string()));
            }
        }
    }
    out
}

fn matrix_from_sparse(
    field: Field,
    domain: VectorSpace,
    codomain: VectorSpace,
    entries: &SparseMatrix,
) -> Result<LinearMap, Error> {
    let mut m = LinearMap::zero(domain, codomain);
    for (r, c, v) in entries {
        if *r >= m.codomain.dim() || *c >= m.domain.dim() {
            return Err(Error::InvalidInput(format!(
                "sparse entry ({}, {}) out of range",
                r, c
            )));
        }
        m.entries[*r][*c] = field.parse_scalar(v)?;
    }
    Ok(m)
}

fn coords_to_sparse(v: &[Scalar]) -> Vec<(usize, String)> {
    v.iter()
        .enumerate()
        .filter(|(_, s)| !s.is_zero())
        .map(|(i, s)| (i, s.to_string()))
        .collect()
}

fn coords_from_sparse(
    field: Field,
    dim: usize,
    entries: &[(usize, String)],
) -> Result<Vec<Scalar>, Error> {
    let mut out = vec![field.zero(); dim];
    for (i, v) in entries {
        if *i >= dim {
            return Err(Error::InvalidInput(format!("coordinate {} out of range", i)));
        }
        out[*i] = field.parse_scalar(v)?;
    }
    Ok(out)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HomJson {
    pub from: String,
    pub to: String,
    pub basis: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IdentityJson {
    pub object: String,
    pub coords: Vec<(usize, String)>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CompEntryJson {
    pub g: usize,
    pub f: usize,
    pub result: Vec<(usize, String)>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CompJson {
    pub from: String,
    pub via: String,
    pub to: String,
    pub entries: Vec<CompEntryJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CategoryJson {
    pub schema_version: u32,
    pub field: String,
    pub objects: Vec<String>,
    pub hom: Vec<HomJson>,
    pub identity: Vec<IdentityJson>,
    pub composition: Vec<CompJson>,
}

pub fn category_to_json(cat: &LinearCategory) -> CategoryJson {
    let mut hom = Vec::new();
    for (&(x, y), space) in cat.hom_spaces() {
        if space.dim() > 0 {
            hom.push(HomJson {
                from: cat.objects[x].clone(),
                to: cat.objects[y].clone(),
                basis: space.labels.clone(),
            });
        }
    }
    let identity = (0..cat.object_count())
        .map(|x| IdentityJson {
            object: cat.objects[x].clone(),
            coords: coords_to_sparse(cat.identity(x)),
        })
        .collect();
    let mut composition = Vec::new();
    for (&(x, y, z), table) in cat.comp_tables() {
        let mut entries = Vec::new();
        for (g, row) in table.iter().enumerate() {
            for (f, result) in row.iter().enumerate() {
                let sparse = coords_to_sparse(result);
                if !sparse.is_empty() {
                    entries.push(CompEntryJson { g, f, result: sparse });
                }
            }
        }
        if !entries.is_empty() {
            composition.push(CompJson {
                from: cat.objects[x].clone(),
                via: cat.objects[y].clone(),
                to: cat.objects[z].clone(),
                entries,
            });
        }
    }
    CategoryJson {
        schema_version: SCHEMA_VERSION,
        field: cat.field.to_string(),
        objects: cat.objects.clone(),
        hom,
        identity,
        composition,
    }
}

pub fn category_from_json(json: &CategoryJson) -> Result<LinearCategory, Error> {
    let field = Field::parse(&json.field)?;
    let objects = json.objects.clone();
    let index = |name: &str| -> Result<usize, Error> {
        objects
            .iter()
            .position(|o| o == name)
            .ok_or_else(|| Error::UnknownObject(name.to_string()))
    };
    let mut hom = BTreeMap::new();
    for h in &json.hom {
        let space = VectorSpace::new(field, h.basis.clone())?;
        hom.insert((index(&h.from)?, index(&h.to)?), space);
    }
    let dim_of = |x: usize, y: usize| hom.get(&(x, y)).map_or(0, |s: &VectorSpace| s.dim());
    let mut id = vec![Vec::new(); objects.len()];
    for i in &json.identity {
        let x = index(&i.object)?;
        id[x] = coords_from_sparse(field, dim_of(x, x), &i.coords)?;
    }
    for (x, v) in id.iter_mut().enumerate() {
        if v.is_empty() && dim_of(x, x) > 0 {
            return Err(Error::InvalidInput(format!(
                "missing identity for object {}",
                objects[x]
            )));
        }
    }
    let mut comp = BTreeMap::new();
    for c in &json.composition {
        let (x, y, z) = (index(&c.from)?, index(&c.via)?, index(&c.to)?);
        let (df, dg, dr) = (dim_of(x, y), dim_of(y, z), dim_of(x, z));
        let mut table = vec![vec![vec![field.zero(); dr]; df]; dg];
        for e in &c.entries {
            if e.g >= dg || e.f >= df {
                return Err(Error::InvalidInput("composition entry out of range".into()));
            }
            table[e.g][e.f] = coords_from_sparse(field, dr, &e.result)?;
        }
        comp.insert((x, y, z), table);
    }
    LinearCategory::new(field, objects, hom, comp, id)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BimoduleSpaceJson {
    pub u: String,
    pub t: String,
    pub basis: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BimoduleActionJson {
    pub from: String,
    pub to: String,
    /// basis label of the acting morphism
    pub morphism: String,
    /// the fixed object on the other side
    pub at: String,
    pub matrix: SparseMatrix,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BimoduleJson {
    pub spaces: Vec<BimoduleSpaceJson>,
    pub left: Vec<BimoduleActionJson>,
    pub right: Vec<BimoduleActionJson>,
}

pub fn bimodule_to_json(m: &Bimodule) -> BimoduleJson {
    let mut spaces = Vec::new();
    for (&(u, t), space) in m.spaces() {
        if space.dim() > 0 {
            spaces.push(BimoduleSpaceJson {
                u: m.u_cat.objects[u].clone(),
                t: m.t_cat.objects[t].clone(),
                basis: space.labels.clone(),
            });
        }
    }
    let left = m
        .left_entries()
        .iter()
        .map(|(&(uf, ut, k, t), map)| BimoduleActionJson {
            from: m.u_cat.objects[uf].clone(),
            to: m.u_cat.objects[ut].clone(),
            morphism: m.u_cat.hom_space(uf, ut).labels[k].clone(),
            at: m.t_cat.objects[t].clone(),
            matrix: matrix_to_sparse(map),
        })
        .collect();
    let right = m
        .right_entries()
        .iter()
        .map(|(&(tf, tt, k, u), map)| BimoduleActionJson {
            from: m.t_cat.objects[tf].clone(),
            to: m.t_cat.objects[tt].clone(),
            morphism: m.t_cat.hom_space(tf, tt).labels[k].clone(),
            at: m.u_cat.objects[u].clone(),
            matrix: matrix_to_sparse(map),
        })
        .collect();
    BimoduleJson { spaces, left, right }
}

pub fn bimodule_from_json(
    json: &BimoduleJson,
    t_cat: Arc<LinearCategory>,
    u_cat: Arc<LinearCategory>,
) -> Result<Bimodule, Error> {
    let field = t_cat.field;
    let mut space = BTreeMap::new();
    for s in &json.spaces {
        let u = u_cat.object_index(&s.u)?;
        let t = t_cat.object_index(&s.t)?;
        space.insert((u, t), VectorSpace::new(field, s.basis.clone())?);
    }
    let space_of = |u: usize, t: usize| -> VectorSpace {
        space
            .get(&(u, t))
            .cloned()
            .unwrap_or_else(|| VectorSpace::zero(field))
    };
    let mut left = BTreeMap::new();
    for a in &json.left {
        let uf = u_cat.object_index(&a.from)?;
        let ut = u_cat.object_index(&a.to)?;
        let t = t_cat.object_index(&a.at)?;
        let k = u_cat
            .hom_space(uf, ut)
            .labels
            .iter()
            .position(|l| l == &a.morphism)
            .ok_or_else(|| Error::UnknownObject(a.morphism.clone()))?;
        let map = matrix_from_sparse(field, space_of(uf, t), space_of(ut, t), &a.matrix)?;
        left.insert((uf, ut, k, t), map);
    }
    let mut right = BTreeMap::new();
    for a in &json.right {
        let tf = t_cat.object_index(&a.from)?;
        let tt = t_cat.object_index(&a.to)?;
        let u = u_cat.object_index(&a.at)?;
        let k = t_cat
            .hom_space(tf, tt)
            .labels
            .iter()
            .position(|l| l == &a.morphism)
            .ok_or_else(|| Error::UnknownObject(a.morphism.clone()))?;
        let map = matrix_from_sparse(field, space_of(u, tt), space_of(u, tf), &a.matrix)?;
        right.insert((tf, tt, k, u), map);
    }
    Bimodule::new(t_cat, u_cat, space, left, right)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PairJson {
    pub name: String,
    pub t: String,
    pub u: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LambdaJson {
    pub schema_version: u32,
    pub field: String,
    pub t_cat: CategoryJson,
    pub u_cat: CategoryJson,
    pub bimodule: BimoduleJson,
    /// block-structure descriptor: the pair objects in Λ order
    pub pairs: Vec<PairJson>,
}

pub fn lambda_to_json(lambda: &LambdaCategory) -> LambdaJson {
    LambdaJson {
        schema_version: SCHEMA_VERSION,
        field: lambda.field().to_string(),
        t_cat: category_to_json(&lambda.t_cat),
        u_cat: category_to_json(&lambda.u_cat),
        bimodule: bimodule_to_json(&lambda.bimodule),
        pairs: lambda
            .pairs
            .iter()
            .enumerate()
            .map(|(i, &(t, u))| PairJson {
                name: lambda.object_name(i).to_string(),
                t: lambda.t_cat.objects[t].clone(),
                u: lambda.u_cat.objects[u].clone(),
            })
            .collect(),
    }
}

/// Rebuilds Λ from JSON. With `validate`, the bimodule axioms are checked
/// and a broken bimodule is rejected; without, the Λ is built as-is so
/// that property suites can observe the breakage.
pub fn lambda_from_json(json: &LambdaJson, validate: bool) -> Result<LambdaCategory, Error> {
    let t_cat = Arc::new(category_from_json(&json.t_cat)?);
    let u_cat = Arc::new(category_from_json(&json.u_cat)?);
    let bimodule = Arc::new(bimodule_from_json(
        &json.bimodule,
        Arc::clone(&t_cat),
        Arc::clone(&u_cat),
    )?);
    let lambda = if validate {
        build_lambda(t_cat, u_cat, bimodule)?
    } else {
        build_lambda_unchecked(t_cat, u_cat, bimodule)?
    };
    if json.pairs.len() != lambda.object_count() {
        return Err(Error::InvalidInput("pair descriptor count mismatch".into()));
    }
    for (i, p) in json.pairs.iter().enumerate() {
        let (t, u) = lambda.pairs[i];
        if lambda.t_cat.objects[t] != p.t || lambda.u_cat.objects[u] != p.u {
            return Err(Error::InvalidInput(format!(
                "pair descriptor {} does not match the construction order",
                p.name
            )));
        }
    }
    Ok(lambda)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ModuleValueJson {
    pub object: String,
    pub basis: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ModuleActionJson {
    pub from: String,
    pub to: String,
    pub morphism: String,
    pub matrix: SparseMatrix,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ModuleJson {
    pub values: Vec<ModuleValueJson>,
    pub action: Vec<ModuleActionJson>,
}

pub fn module_to_json(m: &FiniteModule) -> ModuleJson {
    let values = (0..m.base.object_count())
        .map(|x| ModuleValueJson {
            object: m.base.objects[x].clone(),
            basis: m.value[x].labels.clone(),
        })
        .collect();
    let action = m
        .action_entries()
        .iter()
        .filter(|(_, map)| !map.is_zero())
        .map(|(&(x, y, k), map)| ModuleActionJson {
            from: m.base.objects[x].clone(),
            to: m.base.objects[y].clone(),
            morphism: m.base.hom_space(x, y).labels[k].clone(),
            matrix: matrix_to_sparse(map),
        })
        .collect();
    ModuleJson { values, action }
}

pub fn module_from_json(
    json: &ModuleJson,
    base: Arc<LinearCategory>,
) -> Result<FiniteModule, Error> {
    let field = base.field;
    let mut value = vec![VectorSpace::zero(field); base.object_count()];
    for v in &json.values {
        let x = base.object_index(&v.object)?;
        value[x] = VectorSpace::new(field, v.basis.clone())?;
    }
    let mut action = BTreeMap::new();
    for a in &json.action {
        let x = base.object_index(&a.from)?;
        let y = base.object_index(&a.to)?;
        let k = base
            .hom_space(x, y)
            .labels
            .iter()
            .position(|l| l == &a.morphism)
            .ok_or_else(|| Error::UnknownObject(a.morphism.clone()))?;
        let map = matrix_from_sparse(field, value[x].clone(), value[y].clone(), &a.matrix)?;
        action.insert((x, y, k), map);
    }
    let mut module = FiniteModule::new(base, value, action)?;
    module.fill_identity_actions();
    Ok(module)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TripleActionJson {
    pub u: String,
    pub t: String,
    pub morphism: String,
    pub matrix: SparseMatrix,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TripleJson {
    pub schema_version: u32,
    pub a: ModuleJson,
    pub b: ModuleJson,
    pub act: Vec<TripleActionJson>,
}

pub fn triple_to_json(tr: &ModuleTriple) -> TripleJson {
    let m = &tr.bimodule;
    let mut act = Vec::new();
    for (&(u, t), maps) in tr.act_entries() {
        let ms = m.space(u, t);
        for (k, map) in maps.iter().enumerate() {
            if !map.is_zero() {
                act.push(TripleActionJson {
                    u: m.u_cat.objects[u].clone(),
                    t: m.t_cat.objects[t].clone(),
                    morphism: ms.labels[k].clone(),
                    matrix: matrix_to_sparse(map),
                });
            }
        }
    }
    TripleJson {
        schema_version: SCHEMA_VERSION,
        a: module_to_json(&tr.a),
        b: module_to_json(&tr.b),
        act,
    }
}

pub fn triple_from_json(
    json: &TripleJson,
    bimodule: &Arc<Bimodule>,
) -> Result<ModuleTriple, Error> {
    let field = bimodule.field();
    let a = module_from_json(&json.a, Arc::clone(&bimodule.t_cat))?;
    let b = module_from_json(&json.b, Arc::clone(&bimodule.u_cat))?;
    let mut act: BTreeMap<(usize, usize), Vec<LinearMap>> = BTreeMap::new();
    for u in 0..bimodule.u_cat.object_count() {
        for t in 0..bimodule.t_cat.object_count() {
            let ms = bimodule.space(u, t);
            if ms.dim() > 0 {
                act.insert(
                    (u, t),
                    vec![LinearMap::zero(a.value[t].clone(), b.value[u].clone()); ms.dim()],
                );
            }
        }
    }
    for entry in &json.act {
        let u = bimodule.u_cat.object_index(&entry.u)?;
        let t = bimodule.t_cat.object_index(&entry.t)?;
        let ms = bimodule.space(u, t);
        let k = ms
            .labels
            .iter()
            .position(|l| l == &entry.morphism)
            .ok_or_else(|| Error::UnknownObject(entry.morphism.clone()))?;
        let map = matrix_from_sparse(field, a.value[t].clone(), b.value[u].clone(), &entry.matrix)?;
        act.get_mut(&(u, t)).expect("space exists")[k] = map;
    }
    ModuleTriple::new(Arc::clone(bimodule), a, b, act)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bimodule::bimodule_from_hom;
    use crate::quiver::{parse_quiver, path_category, A2_PRESENTATION};

    fn a3_lambda() -> LambdaCategory {
        let text = "field Q\nvertex 1\nvertex 2\nvertex 3\narrow a : 1 -> 2\narrow b : 2 -> 3\n";
        let cat = Arc::new(path_category(&parse_quiver(text).unwrap()).unwrap());
        let m = Arc::new(
            bimodule_from_hom(&cat, &["3".into()], &["1".into(), "2".into()]).unwrap(),
        );
        build_lambda(Arc::clone(&m.t_cat), Arc::clone(&m.u_cat), m).unwrap()
    }

    #[test]
    fn category_round_trip() {
        let cat = path_category(&parse_quiver(A2_PRESENTATION).unwrap()).unwrap();
        let json = category_to_json(&cat);
        let back = category_from_json(&json).unwrap();
        assert_eq!(back.objects, cat.objects);
        assert_eq!(back.comp_tables(), cat.comp_tables());
        assert_eq!(back.hom_spaces(), cat.hom_spaces());
        // serialization is deterministic
        let s1 = serde_json::to_string(&json).unwrap();
        let s2 = serde_json::to_string(&category_to_json(&back)).unwrap();
        assert_eq!(s1, s2);
    }

    #[test]
    fn lambda_round_trip() {
        let lambda = a3_lambda();
        let json = lambda_to_json(&lambda);
        let back = lambda_from_json(&json, true).unwrap();
        assert_eq!(back.cat.objects, lambda.cat.objects);
        assert_eq!(back.cat.comp_tables(), lambda.cat.comp_tables());
    }

    #[test]
    fn corrupted_lambda_loads_unvalidated() {
        let lambda = a3_lambda();
        let mut json = lambda_to_json(&lambda);
        // break a bimodule action matrix
        json.bimodule.left[0].matrix = vec![(0, 0, "7".to_string())];
        assert!(lambda_from_json(&json, true).is_err());
        let loose = lambda_from_json(&json, false).unwrap();
        assert!(!loose.bimodule.check().is_empty());
    }

    #[test]
    fn triple_round_trip() {
        let lambda = a3_lambda();
        let mut rng = {
            use rand::SeedableRng;
            rand_chacha::ChaCha8Rng::seed_from_u64(9)
        };
        let (tr, _) = crate::comma::random_triple(&lambda.bimodule, &mut rng, 2).unwrap();
        let json = triple_to_json(&tr);
        let back = triple_from_json(&json, &lambda.bimodule).unwrap();
        assert!(back.check().is_empty());
        for t in 0..tr.a.value.len() {
            assert_eq!(back.a.dim_at(t), tr.a.dim_at(t));
        }
        let s1 = serde_json::to_string(&json).unwrap();
        let s2 = serde_json::to_string(&triple_to_json(&back)).unwrap();
        assert_eq!(s1, s2);
    }
}
