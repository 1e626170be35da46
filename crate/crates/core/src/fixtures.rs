//! Named quiver fixtures and the Λ constructions over them used by the
//! property suites and the CLI.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::apps::{hom_matrix_category, window_presentation, TorsionPairSpec};
use crate::bimodule::bimodule_from_hom;
use crate::category::LinearCategory;
use crate::error::Error;
use crate::field::Field;
use crate::linalg::VectorSpace;
use crate::module::FiniteModule;
use crate::quiver::{parse_quiver, path_category, QuiverPresentation, A2_PRESENTATION};
use crate::trimat::{build_lambda, LambdaCategory};

pub const A3_PRESENTATION: &str = "\
field Q
vertex 1
vertex 2
vertex 3
arrow a : 1 -> 2
arrow b : 2 -> 3
";

pub const A3_REL_PRESENTATION: &str = "\
field Q
vertex 1
vertex 2
vertex 3
arrow a : 1 -> 2
arrow b : 2 -> 3
relation 1 b*a
";

pub const KRONECKER_PRESENTATION: &str = "\
field Q
vertex 1
vertex 2
arrow a : 1 -> 2
arrow b : 1 -> 2
";

/// The presentation text of a named fixture: `a2`, `a3`, `a3rel`,
/// `kronecker`, or `window<n>`.
pub fn presentation(name: &str) -> Result<String, Error> {
    match name {
        "a2" => Ok(A2_PRESENTATION.to_string()),
        "a3" => Ok(A3_PRESENTATION.to_string()),
        "a3rel" => Ok(A3_REL_PRESENTATION.to_string()),
        "kronecker" => Ok(KRONECKER_PRESENTATION.to_string()),
        other => {
            if let Some(n) = other.strip_prefix("window") {
                let n: usize = n
                    .parse()
                    .map_err(|_| Error::InvalidInput(format!("unknown fixture {}", other)))?;
                Ok(window_presentation(n))
            } else {
                Err(Error::InvalidInput(format!("unknown fixture {}", other)))
            }
        }
    }
}

/// Same presentation with the field line replaced.
pub fn presentation_over(name: &str, field: Field) -> Result<String, Error> {
    let text = presentation(name)?;
    let replaced: Vec<String> = text
        .lines()
        .map(|l| {
            if l.trim_start().starts_with("field") {
                format!("field {}", field)
            } else {
                l.to_string()
            }
        })
        .collect();
    Ok(replaced.join("\n") + "\n")
}

/// The object partition (u_objs, t_objs) of a fixture's torsion pair.
pub fn partition(name: &str, q: &QuiverPresentation) -> Result<(Vec<String>, Vec<String>), Error> {
    Ok(match name {
        "a2" => (vec!["u".into()], vec!["t".into()]),
        "a3" | "a3rel" => (vec!["3".into()], vec!["1".into(), "2".into()]),
        "kronecker" => (vec!["2".into()], vec!["1".into()]),
        other if other.starts_with("window") => {
            let u = q.vertices.iter().filter(|v| v.starts_with('u')).cloned().collect();
            let t = q.vertices.iter().filter(|v| v.starts_with('t')).cloned().collect();
            (u, t)
        }
        other => return Err(Error::InvalidInput(format!("unknown fixture {}", other))),
    })
}

/// A fixture Λ built from the Hom-bimodule of the partition (no additive
/// closure; objects are the plain pairs).
pub struct Fixture {
    pub name: String,
    pub quiver: QuiverPresentation,
    pub cat: Arc<LinearCategory>,
    pub lambda: LambdaCategory,
}

pub fn lambda_fixture(name: &str, field: Field) -> Result<Fixture, Error> {
    let text = presentation_over(name, field)?;
    let quiver = parse_quiver(&text)?;
    let cat = Arc::new(path_category(&quiver)?);
    let (u_objs, t_objs) = partition(name, &quiver)?;
    let m = Arc::new(bimodule_from_hom(&cat, &u_objs, &t_objs)?);
    let lambda = build_lambda(Arc::clone(&m.t_cat), Arc::clone(&m.u_cat), m)?;
    Ok(Fixture { name: name.to_string(), quiver, cat, lambda })
}

/// The torsion-pair spec of a fixture, for `splitting_equivalence`.
pub fn torsion_spec(name: &str, field: Field) -> Result<(QuiverPresentation, TorsionPairSpec), Error> {
    let text = presentation_over(name, field)?;
    let quiver = parse_quiver(&text)?;
    let cat = Arc::new(path_category(&quiver)?);
    let (u_objs, t_objs) = partition(name, &quiver)?;
    Ok((quiver, TorsionPairSpec { cat, u_objs, t_objs }))
}

/// The verified splitting equivalence of a fixture, cached per
/// (fixture, field): the window construction is moderately expensive and
/// several suites share it.
pub fn torsion_equivalence(
    name: &str,
    field: Field,
) -> Result<crate::apps::SplittingEquivalence, Error> {
    use std::sync::{Mutex, OnceLock};
    static CACHE: OnceLock<Mutex<BTreeMap<(String, String), crate::apps::SplittingEquivalence>>> =
        OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(BTreeMap::new()));
    let key = (name.to_string(), field.to_string());
    if let Some(eq) = cache.lock().unwrap().get(&key) {
        return Ok(eq.clone());
    }
    let (_, spec) = torsion_spec(name, field)?;
    let eq = crate::apps::splitting_equivalence(&spec)?;
    cache.lock().unwrap().insert(key, eq.clone());
    Ok(eq)
}

/// The hom-matrix Λ of a fixture's path category.
pub fn hom_matrix_fixture(name: &str, field: Field) -> Result<LambdaCategory, Error> {
    let text = presentation_over(name, field)?;
    let quiver = parse_quiver(&text)?;
    let cat = path_category(&quiver)?;
    hom_matrix_category(&cat)
}

/// The simple representation concentrated at one vertex.
pub fn simple_rep(cat: &Arc<LinearCategory>, vertex: usize) -> FiniteModule {
    let field = cat.field;
    let mut value = vec![VectorSpace::zero(field); cat.object_count()];
    value[vertex] = VectorSpace::numbered(field, "s", 1);
    let mut m = FiniteModule::new(Arc::clone(cat), value, BTreeMap::new())
        .expect("simple rep shape");
    m.fill_identity_actions();
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_fixture_lambdas_build() {
        for name in ["a2", "a3", "a3rel", "kronecker", "window1"] {
            let f = lambda_fixture(name, Field::Rationals).unwrap();
            assert!(f.lambda.object_count() > 0, "{}", name);
        }
        assert!(lambda_fixture("nope", Field::Rationals).is_err());
    }

    #[test]
    fn fixtures_over_prime_fields() {
        let f = lambda_fixture("a2", Field::Prime(7)).unwrap();
        assert_eq!(f.cat.field, Field::Prime(7));
    }
}
