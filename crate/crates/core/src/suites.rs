//! Named property suites: each suite instantiates a family of structural
//! theorems on the fixture corpus (and optionally on user-supplied inputs)
//! and reports one pass/fail entry per check, with a witness for every
//! failure. Identical configurations produce identical reports.

use std::collections::BTreeSet;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::apps::{one_point_extension, splitting_equivalence, TorsionPairSpec};
use crate::bimodule::{bimodule_ext1, ext1_dim_oracle};
use crate::category::{check_category_axioms, end_algebra, radical_subspace};
use crate::comma::{
    adjunction_iso, cover_epi, f_functor, f_on_morphism, g_functor, g_on_morphism,
    hom_triples, module_from_triple, projective_triple, random_triple, triple_from_module,
    triple_morphism_to_module_map, ModuleTriple,
};
use crate::duality::{
    double_dual_check, nu_square_check_with, theta_hat_involution_check,
};
use crate::error::Error;
use crate::field::Field;
use crate::fixtures::{
    hom_matrix_fixture, lambda_fixture, presentation_over, simple_rep, torsion_spec,
};
use crate::json::SCHEMA_VERSION;
use crate::linalg::{vec_sub, LinearMap, VectorSpace};
use crate::module::{
    hom_modules, random_cyclic_presented_module, random_presented_module, yoneda_morphism,
    FiniteModule, NatTransform, PresentedModule,
};
use crate::quiver::{parse_quiver, path_category};
use crate::trimat::{lambda_radical, opposite_iso, LambdaCategory};

pub const SUITE_NAMES: &[&str] = &[
    "axioms",
    "radical",
    "equivalence",
    "adjunction",
    "duality",
    "applications",
];

/// Deterministic run configuration: the same config yields a
/// byte-identical report.
#[derive(Debug, Clone, Copy)]
pub struct RunConfig {
    pub seed: u64,
    pub trials: usize,
    pub field: Field,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { seed: 42, trials: 100, field: Field::Rationals }
    }
}

/// Optional user inputs checked in place of (or in addition to) fixtures.
#[derive(Default)]
pub struct SuiteInputs {
    pub lambda: Option<LambdaCategory>,
    pub triple: Option<ModuleTriple>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckEntry {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub schema_version: u32,
    pub suite: String,
    pub field: String,
    pub seed: u64,
    pub trials: usize,
    pub passed: usize,
    pub failed: usize,
    pub entries: Vec<CheckEntry>,
}

impl SuiteReport {
    fn new(suite: &str, cfg: &RunConfig) -> SuiteReport {
        SuiteReport {
            schema_version: SCHEMA_VERSION,
            suite: suite.to_string(),
            field: cfg.field.to_string(),
            seed: cfg.seed,
            trials: cfg.trials,
            passed: 0,
            failed: 0,
            entries: Vec::new(),
        }
    }

    fn push(&mut self, name: impl Into<String>, failures: Vec<String>) {
        let pass = failures.is_empty();
        if pass {
            self.passed += 1;
        } else {
            self.failed += 1;
        }
        self.entries.push(CheckEntry {
            name: name.into(),
            pass,
            witness: failures.into_iter().next(),
        });
    }

    pub fn is_pass(&self) -> bool {
        self.failed == 0
    }
}

fn rng_for(seed: u64, tag: &str) -> ChaCha8Rng {
    // FNV-1a over the tag, mixed with the seed
    let mut h: u64 = 0xcbf29ce484222325;
    for b in tag.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    ChaCha8Rng::seed_from_u64(seed ^ h)
}

const SMALL_FIXTURES: &[&str] = &["a2", "a3", "kronecker"];

/// Runs one named suite.
pub fn run_suite(
    suite: &str,
    cfg: &RunConfig,
    inputs: &SuiteInputs,
) -> Result<SuiteReport, Error> {
    match suite {
        "axioms" => run_axioms(cfg, inputs),
        "radical" => run_radical(cfg, inputs),
        "equivalence" => run_equivalence(cfg, inputs),
        "adjunction" => run_adjunction(cfg),
        "duality" => run_duality(cfg),
        "applications" => run_applications(cfg),
        other => Err(Error::InvalidInput(format!("unknown suite {}", other))),
    }
}

/// Runs every suite in declaration order. Over a prime field the radical
/// suite (characteristic-0 only) is skipped rather than failing the run;
/// requesting it explicitly still errors.
pub fn run_all(cfg: &RunConfig, inputs: &SuiteInputs) -> Result<Vec<SuiteReport>, Error> {
    SUITE_NAMES
        .iter()
        .filter(|s| cfg.field.characteristic_zero() || **s != "radical")
        .map(|s| run_suite(s, cfg, inputs))
        .collect()
}

fn axiom_failures(lambda: &LambdaCategory) -> Vec<String> {
    check_category_axioms(&lambda.cat)
        .failures
        .iter()
        .map(|f| f.to_string())
        .collect()
}

fn run_axioms(cfg: &RunConfig, inputs: &SuiteInputs) -> Result<SuiteReport, Error> {
    let mut report = SuiteReport::new("axioms", cfg);
    if let Some(lambda) = &inputs.lambda {
        report.push("axioms/input/category", axiom_failures(lambda));
        report.push("axioms/input/bimodule", lambda.bimodule.check());
        return Ok(report);
    }
    for name in SMALL_FIXTURES {
        let f = lambda_fixture(name, cfg.field)?;
        report.push(format!("axioms/{}/category", name), axiom_failures(&f.lambda));
        report.push(format!("axioms/{}/bimodule", name), f.lambda.bimodule.check());
    }
    {
        let lambda = hom_matrix_fixture("a2", cfg.field)?;
        report.push("axioms/hom_matrix_a2/category", axiom_failures(&lambda));
        report.push("axioms/hom_matrix_a2/bimodule", lambda.bimodule.check());
    }
    // window fixture: seeded randomized triples
    {
        let eq = crate::fixtures::torsion_equivalence("window3", cfg.field)?;
        let lambda = &eq.lambda;
        let mut rng = rng_for(cfg.seed, "axioms/window3");
        let n = lambda.object_count();
        let mut failures = Vec::new();
        let mut checked = 0usize;
        let mut attempts = 0usize;
        while checked < cfg.trials.max(1) && attempts < cfg.trials * 50 {
            attempts += 1;
            let w = rng.gen_range(0..n);
            let x = rng.gen_range(0..n);
            let y = rng.gen_range(0..n);
            let z = rng.gen_range(0..n);
            let (d1, d2, d3) = (
                lambda.cat.hom_dim(w, x),
                lambda.cat.hom_dim(x, y),
                lambda.cat.hom_dim(y, z),
            );
            if d1 == 0 || d2 == 0 || d3 == 0 {
                continue;
            }
            let rand_elem = |rng: &mut ChaCha8Rng, d: usize| -> Vec<_> {
                (0..d).map(|_| cfg.field.from_i64(rng.gen_range(-3..=3))).collect()
            };
            let f = rand_elem(&mut rng, d1);
            let g = rand_elem(&mut rng, d2);
            let h = rand_elem(&mut rng, d3);
            let gf = lambda.cat.compose(w, x, y, &g, &f);
            let lhs = lambda.cat.compose(w, y, z, &h, &gf);
            let hg = lambda.cat.compose(x, y, z, &h, &g);
            let rhs = lambda.cat.compose(w, x, z, &hg, &f);
            if lhs != rhs {
                failures.push(format!(
                    "associativity fails on sampled triple #{} at ({},{},{},{})",
                    checked, w, x, y, z
                ));
            }
            // identity laws on the sampled f
            if lambda.cat.compose(w, x, x, lambda.cat.identity(x), &f) != f
                || lambda.cat.compose(w, w, x, &f, lambda.cat.identity(w)) != f
            {
                failures.push(format!("identity law fails on sampled morphism #{}", checked));
            }
            checked += 1;
        }
        if checked < cfg.trials.max(1) {
            failures.push("could not sample enough composable triples".into());
        }
        report.push(
            format!("axioms/window3/randomized({})", checked),
            failures,
        );
    }
    Ok(report)
}

fn radical_pair_failures(lambda: &LambdaCategory, x: usize, y: usize) -> Result<Vec<String>, Error> {
    let mut failures = Vec::new();
    let blocks = lambda_radical(lambda, x, y)?;
    let direct = radical_subspace(&lambda.cat, x, y)?;
    if !blocks.same_subspace(&direct) {
        failures.push(format!(
            "rad block formula ≠ End-algebra radical at ({}, {})",
            lambda.object_name(x),
            lambda.object_name(y)
        ));
    }
    // definitional test: 1_X − g∘r invertible for r in the radical and
    // every basis g of Hom(Y, X)
    let back = lambda.cat.hom_space(y, x);
    let end_x = end_algebra(&lambda.cat, x);
    for r in &blocks.rows {
        for gi in 0..back.dim() {
            let g = back.basis_vec(gi);
            let gr = lambda.cat.compose(x, y, x, &g, r);
            let m = vec_sub(lambda.cat.identity(x), &gr);
            if !end_x.left_mult_matrix(&m).is_invertible() {
                failures.push(format!(
                    "definitional test fails: 1 − {}∘r not invertible at ({}, {})",
                    back.labels[gi],
                    lambda.object_name(x),
                    lambda.object_name(y)
                ));
            }
        }
    }
    Ok(failures)
}

fn run_radical(cfg: &RunConfig, inputs: &SuiteInputs) -> Result<SuiteReport, Error> {
    if !cfg.field.characteristic_zero() {
        return Err(Error::UnsupportedField(format!(
            "the radical suite requires characteristic 0, got {}",
            cfg.field
        )));
    }
    let mut report = SuiteReport::new("radical", cfg);
    let mut lambdas: Vec<(String, LambdaCategory)> = Vec::new();
    if let Some(lambda) = &inputs.lambda {
        lambdas.push(("input".into(), lambda.clone()));
    } else {
        for name in SMALL_FIXTURES {
            lambdas.push((name.to_string(), lambda_fixture(name, cfg.field)?.lambda));
        }
        lambdas.push(("hom_matrix_a2".into(), hom_matrix_fixture("a2", cfg.field)?));
    }
    for (name, lambda) in &lambdas {
        let mut failures = Vec::new();
        let n = lambda.object_count();
        let mut rads = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                failures.extend(radical_pair_failures(lambda, x, y)?);
                rads.push(lambda_radical(lambda, x, y)?);
            }
        }
        // two-sided ideal: composites with arbitrary basis morphisms stay
        // inside the computed radical subspaces
        'ideal: for x in 0..n {
            for y in 0..n {
                for r in &rads[x * n + y].rows.clone() {
                    for z in 0..n {
                        let out = lambda.cat.hom_space(y, z);
                        for gi in 0..out.dim() {
                            let gr = lambda.cat.compose(x, y, z, &out.basis_vec(gi), r);
                            if !rads[x * n + z].contains(&gr) {
                                failures.push(format!(
                                    "g∘r escapes the radical at ({}, {}, {})",
                                    lambda.object_name(x),
                                    lambda.object_name(y),
                                    lambda.object_name(z)
                                ));
                                break 'ideal;
                            }
                        }
                    }
                    for w in 0..n {
                        let inc = lambda.cat.hom_space(w, x);
                        for hi in 0..inc.dim() {
                            let rh = lambda.cat.compose(w, x, y, r, &inc.basis_vec(hi));
                            if !rads[w * n + y].contains(&rh) {
                                failures.push(format!(
                                    "r∘h escapes the radical at ({}, {}, {})",
                                    lambda.object_name(w),
                                    lambda.object_name(x),
                                    lambda.object_name(y)
                                ));
                                break 'ideal;
                            }
                        }
                    }
                }
            }
        }
        report.push(format!("radical/{}/all-pairs", name), failures);
    }
    if inputs.lambda.is_none() {
        // window fixture: seeded sample of object pairs
        let eq = crate::fixtures::torsion_equivalence("window3", cfg.field)?;
        let lambda = &eq.lambda;
        let mut rng = rng_for(cfg.seed, "radical/window3");
        let n = lambda.object_count();
        let mut failures = Vec::new();
        let samples = cfg.trials.clamp(1, n * n);
        for _ in 0..samples {
            let x = rng.gen_range(0..n);
            let y = rng.gen_range(0..n);
            failures.extend(radical_pair_failures(lambda, x, y)?);
        }
        report.push(format!("radical/window3/sampled({})", samples), failures);
    }
    Ok(report)
}

fn roundtrip_failures(
    tr: &ModuleTriple,
    lambda: &LambdaCategory,
    tag: &str,
) -> Vec<String> {
    let mut failures = tr.check();
    if !failures.is_empty() {
        return failures
            .into_iter()
            .map(|f| format!("{}: generated triple invalid: {}", tag, f))
            .collect();
    }
    let c = match module_from_triple(tr, lambda) {
        Ok(c) => c,
        Err(e) => return vec![format!("{}: 𝔉 failed: {}", tag, e)],
    };
    let back = match triple_from_module(&c, lambda) {
        Ok(b) => b,
        Err(e) => return vec![format!("{}: extraction failed: {}", tag, e)],
    };
    for t in 0..tr.a.value.len() {
        if back.triple.a.dim_at(t) != tr.a.dim_at(t) {
            failures.push(format!("{}: A dimension changed at object {}", tag, t));
        }
    }
    for u in 0..tr.b.value.len() {
        if back.triple.b.dim_at(u) != tr.b.dim_at(u) {
            failures.push(format!("{}: B dimension changed at object {}", tag, u));
        }
    }
    if failures.is_empty() {
        for (&(x, y, k), m) in tr.a.action_entries() {
            if back.triple.a.action_basis(x, y, k).entries != m.entries {
                failures.push(format!("{}: A action matrix changed", tag));
                break;
            }
        }
        for (&(x, y, k), m) in tr.b.action_entries() {
            if back.triple.b.action_basis(x, y, k).entries != m.entries {
                failures.push(format!("{}: B action matrix changed", tag));
                break;
            }
        }
        'outer: for ((u, t), maps) in tr.act_entries() {
            for (k, m) in maps.iter().enumerate() {
                let mut coords = vec![lambda.field().zero(); maps.len()];
                coords[k] = lambda.field().one();
                if back.triple.act_of(*u, *t, &coords).entries != m.entries {
                    failures.push(format!("{}: action pairing changed", tag));
                    break 'outer;
                }
            }
        }
    }
    failures
}

fn run_equivalence(cfg: &RunConfig, inputs: &SuiteInputs) -> Result<SuiteReport, Error> {
    let mut report = SuiteReport::new("equivalence", cfg);
    if let (Some(lambda), Some(tr)) = (&inputs.lambda, &inputs.triple) {
        report.push("equivalence/input/triple-valid", tr.check());
        if tr.check().is_empty() {
            report.push(
                "equivalence/input/roundtrip",
                roundtrip_failures(tr, lambda, "input"),
            );
        }
        return Ok(report);
    }
    for name in SMALL_FIXTURES {
        let f = lambda_fixture(name, cfg.field)?;
        let lambda = &f.lambda;
        let mut rng = rng_for(cfg.seed, &format!("equivalence/{}", name));
        let mut failures = Vec::new();
        for i in 0..cfg.trials {
            let (tr, _) = random_triple(&lambda.bimodule, &mut rng, 2)?;
            failures.extend(roundtrip_failures(&tr, lambda, &format!("triple {}", i)));
            if !failures.is_empty() {
                break;
            }
        }
        report.push(
            format!("equivalence/{}/roundtrip({})", name, cfg.trials),
            failures,
        );

        // full faithfulness on seeded pairs
        let pairs = (cfg.trials / 10).max(1);
        let mut failures = Vec::new();
        for i in 0..pairs {
            let (tr1, _) = random_triple(&lambda.bimodule, &mut rng, 2)?;
            let (tr2, _) = random_triple(&lambda.bimodule, &mut rng, 2)?;
            let c1 = module_from_triple(&tr1, lambda)?;
            let c2 = module_from_triple(&tr2, lambda)?;
            let t_hom = hom_triples(&tr1, &tr2)?;
            let m_hom = hom_modules(&c1, &c2)?;
            if t_hom.dim() != m_hom.dim() {
                failures.push(format!(
                    "pair {}: dim Hom of triples {} ≠ dim Hom of images {}",
                    i,
                    t_hom.dim(),
                    m_hom.dim()
                ));
                continue;
            }
            if t_hom.dim() == 0 {
                continue;
            }
            let mut induced = LinearMap::zero(
                VectorSpace::numbered(cfg.field, "s", t_hom.dim()),
                m_hom.space.clone(),
            );
            for (j, tm) in t_hom.basis.iter().enumerate() {
                let nat = triple_morphism_to_module_map(tm, &tr1, &tr2, lambda, &c1, &c2);
                match m_hom.coords_of(&nat) {
                    Some(coords) => {
                        for (r, cv) in coords.iter().enumerate() {
                            induced.entries[r][j] = cv.clone();
                        }
                    }
                    None => failures.push(format!("pair {}: 𝔉 image not natural", i)),
                }
            }
            if !induced.is_invertible() {
                failures.push(format!("pair {}: induced map not invertible", i));
            }
        }
        report.push(
            format!("equivalence/{}/full-faithful({})", name, pairs),
            failures,
        );
    }
    Ok(report)
}

fn run_adjunction(cfg: &RunConfig) -> Result<SuiteReport, Error> {
    let mut report = run_adjunction_hom_part(cfg)?;
    let proj = run_adjunction_proj_part(cfg)?;
    report.passed += proj.passed;
    report.failed += proj.failed;
    report.entries.extend(proj.entries);
    Ok(report)
}

/// The Hom-side adjunction checks: dim equality with verified mutually
/// inverse maps, 𝔽 on representables, and the naturality squares.
pub fn run_adjunction_hom_part(cfg: &RunConfig) -> Result<SuiteReport, Error> {
    let mut report = SuiteReport::new("adjunction", cfg);
    for name in SMALL_FIXTURES {
        let f = lambda_fixture(name, cfg.field)?;
        let lambda = &f.lambda;
        let m = &lambda.bimodule;
        let mut rng = rng_for(cfg.seed, &format!("adjunction/{}", name));

        // dim equality + mutually inverse maps on seeded (A, B)
        let mut failures = Vec::new();
        for i in 0..cfg.trials {
            let a = random_presented_module(&m.t_cat, &mut rng, 2);
            let b = random_presented_module(&m.u_cat, &mut rng, 2);
            match adjunction_iso(m, &a, &b.module) {
                Ok(w) => {
                    if w.hom_fa_b.dim() != w.hom_a_gb.dim() {
                        failures.push(format!("instance {}: dimension mismatch", i));
                    }
                }
                Err(e) => failures.push(format!("instance {}: {}", i, e)),
            }
            if !failures.is_empty() {
                break;
            }
        }
        report.push(format!("adjunction/{}/iso({})", name, cfg.trials), failures);

        // 𝔽(Hom(T,−)) = M_T exactly
        let mut failures = Vec::new();
        for t in 0..m.t_cat.object_count() {
            let presented = PresentedModule {
                module: FiniteModule::representable(Arc::clone(&m.t_cat), t),
                p1_objects: vec![],
                p0_objects: vec![t],
                d: vec![vec![]],
                epi: vec![m.t_cat.identity(t).to_vec()],
            };
            let fa = f_functor(m, &presented)?;
            let mt = m.mt_module(t);
            if fa.module.value != mt.value || fa.module.action_entries() != mt.action_entries() {
                failures.push(format!("𝔽(Hom({},−)) ≠ M_T", m.t_cat.objects[t]));
            }
        }
        report.push(format!("adjunction/{}/f-representable", name), failures);

        // naturality in A and in B on seeded squares
        let squares = (cfg.trials / 5).max(1);
        let mut failures = Vec::new();
        for i in 0..squares {
            if let Err(e) = naturality_square(m, &mut rng) {
                failures.push(format!("square {}: {}", i, e));
                break;
            }
        }
        report.push(
            format!("adjunction/{}/naturality({})", name, squares),
            failures,
        );
    }
    Ok(report)
}

/// The projective-object checks: the projective triple with its verified
/// isomorphism for every Λ object, and the covering epimorphisms.
pub fn run_adjunction_proj_part(cfg: &RunConfig) -> Result<SuiteReport, Error> {
    let mut report = SuiteReport::new("adjunction", cfg);
    for name in SMALL_FIXTURES {
        let f = lambda_fixture(name, cfg.field)?;
        let lambda = &f.lambda;
        let m = &lambda.bimodule;
        let mut rng = rng_for(cfg.seed, &format!("adjunction-proj/{}", name));

        // projective triples for every Λ object
        let mut failures = Vec::new();
        for t in 0..m.t_cat.object_count() {
            for u in 0..m.u_cat.object_count() {
                if let Err(e) = projective_triple(lambda, t, u) {
                    failures.push(format!(
                        "projective at ({}, {}): {}",
                        m.t_cat.objects[t], m.u_cat.objects[u], e
                    ));
                }
            }
        }
        report.push(format!("adjunction/{}/projectives", name), failures);

        // cover epis on seeded cyclic triples
        let covers = (cfg.trials / 5).max(1);
        let mut failures = Vec::new();
        for i in 0..covers {
            if let Err(e) = cover_instance(lambda, &mut rng) {
                failures.push(format!("cover {}: {}", i, e));
                break;
            }
        }
        report.push(format!("adjunction/{}/cover-epi({})", name, covers), failures);
    }
    Ok(report)
}

/// One adjunction naturality instance: both squares, in A and in B.
fn naturality_square(
    m: &Arc<crate::bimodule::Bimodule>,
    rng: &mut ChaCha8Rng,
) -> Result<(), Error> {
    let a = random_presented_module(&m.t_cat, rng, 2);
    let a2 = random_presented_module(&m.t_cat, rng, 2);
    let b = random_presented_module(&m.u_cat, rng, 2);
    let b2 = random_presented_module(&m.u_cat, rng, 2);
    let gb = g_functor(m, &b.module)?;
    let gb2 = g_functor(m, &b2.module)?;
    let fa = f_functor(m, &a)?;
    let fa2 = f_functor(m, &a2)?;

    let w = adjunction_iso(m, &a, &b.module)?;
    // in B: φ_{A,B'} ∘ (β∘−) = (𝔾β∘−) ∘ φ_{A,B}
    {
        let beta_sol = hom_modules(&b.module, &b2.module)?;
        if beta_sol.dim() > 0 {
            let coords: Vec<_> = (0..beta_sol.dim())
                .map(|_| m.field().from_i64(rng.gen_range(-2..=2)))
                .collect();
            let beta = beta_sol.combine(&b.module, &b2.module, &coords);
            let w2 = adjunction_iso(m, &a, &b2.module)?;
            let g_beta = g_on_morphism(m, &gb, &gb2, &beta)?;
            for eta in &w.hom_fa_b.basis {
                // left-bottom: 𝔾β ∘ φ(η)
                let f_coords = w.forward.apply(&w.hom_fa_b.coords_of(eta).unwrap());
                let f_nat = w.hom_a_gb.combine(&a.module, &gb.module, &f_coords);
                let lhs = g_beta.compose(&f_nat);
                // top-right: φ(β ∘ η)
                let beta_eta = beta.compose(eta);
                let be_coords = w2.hom_fa_b.coords_of(&beta_eta).ok_or_else(|| {
                    Error::InternalConsistency("β∘η not in solved Hom".into())
                })?;
                let rhs_coords = w2.forward.apply(&be_coords);
                let rhs = w2.hom_a_gb.combine(&a.module, &gb2.module, &rhs_coords);
                if !nats_equal(&lhs, &rhs) {
                    return Err(Error::InternalConsistency(
                        "adjunction naturality in B fails".into(),
                    ));
                }
            }
        }
    }
    // in A: φ_{A,B}(η ∘ 𝔽α) = φ_{A',B}(η) ∘ α for α: A → A'
    {
        let alpha_sol = hom_modules(&a.module, &a2.module)?;
        if alpha_sol.dim() > 0 {
            let coords: Vec<_> = (0..alpha_sol.dim())
                .map(|_| m.field().from_i64(rng.gen_range(-2..=2)))
                .collect();
            let alpha = alpha_sol.combine(&a.module, &a2.module, &coords);
            let f_alpha = f_on_morphism(m, &a, &fa, &a2, &fa2, &alpha)?;
            let w2 = adjunction_iso(m, &a2, &b.module)?;
            for eta in &w2.hom_fa_b.basis {
                // η: 𝔽A' → B; η∘𝔽α: 𝔽A → B
                let eta_falpha = eta.compose(&f_alpha);
                let ef_coords = w.hom_fa_b.coords_of(&eta_falpha).ok_or_else(|| {
                    Error::InternalConsistency("η∘𝔽α not in solved Hom".into())
                })?;
                let lhs_coords = w.forward.apply(&ef_coords);
                let lhs = w.hom_a_gb.combine(&a.module, &gb.module, &lhs_coords);
                let rhs_f_coords = w2.forward.apply(&w2.hom_fa_b.coords_of(eta).unwrap());
                let rhs_f = w2.hom_a_gb.combine(&a2.module, &gb.module, &rhs_f_coords);
                let rhs = rhs_f.compose(&alpha);
                if !nats_equal(&lhs, &rhs) {
                    return Err(Error::InternalConsistency(
                        "adjunction naturality in A fails".into(),
                    ));
                }
            }
        }
    }
    Ok(())
}

fn nats_equal(a: &NatTransform, b: &NatTransform) -> bool {
    a.components.len() == b.components.len()
        && a.components
            .iter()
            .zip(&b.components)
            .all(|(x, y)| x.entries == y.entries)
}

/// One cover-epi instance on seeded cyclic modules.
fn cover_instance(lambda: &LambdaCategory, rng: &mut ChaCha8Rng) -> Result<(), Error> {
    let m = &lambda.bimodule;
    let t0 = rng.gen_range(0..m.t_cat.object_count());
    let u0 = rng.gen_range(0..m.u_cat.object_count());
    let a = random_cyclic_presented_module(&m.t_cat, rng, t0, 2);
    let b = random_cyclic_presented_module(&m.u_cat, rng, u0, 2);
    let gb = g_functor(m, &b.module)?;
    let sol = hom_modules(&a.module, &gb.module)?;
    let f = if sol.dim() == 0 {
        NatTransform::zero(&a.module, &gb.module)
    } else {
        let coords: Vec<_> = (0..sol.dim())
            .map(|_| m.field().from_i64(rng.gen_range(-2..=2)))
            .collect();
        sol.combine(&a.module, &gb.module, &coords)
    };
    let tr = crate::comma::triple_from_g_morphism(m, &a.module, &b.module, &gb, &f)?;
    let alpha = yoneda_morphism(&a.module, t0, &a.epi[0]);
    let beta = yoneda_morphism(&b.module, u0, &b.epi[0]);
    let (_, epi) = cover_epi(lambda, &tr, t0, u0, &alpha, &beta)?;
    if !epi.is_objectwise_surjective() {
        return Err(Error::InternalConsistency("cover epi not surjective".into()));
    }
    Ok(())
}

fn run_duality(cfg: &RunConfig) -> Result<SuiteReport, Error> {
    let mut report = SuiteReport::new("duality", cfg);
    let mut corpus: Vec<(String, LambdaCategory)> = SMALL_FIXTURES
        .iter()
        .map(|name| Ok((name.to_string(), lambda_fixture(name, cfg.field)?.lambda)))
        .collect::<Result<_, Error>>()?;
    // the Hom matrix category is part of the duality corpus
    corpus.push(("hom_matrix_a2".into(), hom_matrix_fixture("a2", cfg.field)?));
    for (name, lambda) in &corpus {
        let iso = opposite_iso(lambda)?;
        let mut rng = rng_for(cfg.seed, &format!("duality/{}", name));

        // ν on every projective triple
        let mut failures = Vec::new();
        for t in 0..lambda.t_cat.object_count() {
            for u in 0..lambda.u_cat.object_count() {
                let p = projective_triple(lambda, t, u)?;
                let w = nu_square_check_with(&p.triple, lambda, &iso)?;
                if !w.is_pass() {
                    failures.push(format!(
                        "projective ({}, {}): {}",
                        lambda.t_cat.objects[t],
                        lambda.u_cat.objects[u],
                        w.failures[0]
                    ));
                }
            }
        }
        report.push(format!("duality/{}/nu-projectives", name), failures);

        // ν on seeded triples
        let mut failures = Vec::new();
        for i in 0..cfg.trials {
            let (tr, _) = random_triple(&lambda.bimodule, &mut rng, 2)?;
            let w = nu_square_check_with(&tr, lambda, &iso)?;
            if !w.is_pass() {
                failures.push(format!("triple {}: {}", i, w.failures[0]));
                break;
            }
        }
        report.push(format!("duality/{}/nu-seeded({})", name, cfg.trials), failures);

        // double duals and the Θ̂ involution
        let extra = (cfg.trials / 5).max(1);
        let mut failures = Vec::new();
        for i in 0..extra {
            let (tr, _) = random_triple(&lambda.bimodule, &mut rng, 2)?;
            let c = module_from_triple(&tr, lambda)?;
            if let Err(e) = double_dual_check(&c) {
                failures.push(format!("double dual {}: {}", i, e));
            }
            if let Err(e) = theta_hat_involution_check(&tr) {
                failures.push(format!("involution {}: {}", i, e));
            }
        }
        report.push(format!("duality/{}/double-dual({})", name, extra), failures);
    }
    Ok(report)
}

fn run_applications(cfg: &RunConfig) -> Result<SuiteReport, Error> {
    let mut report = SuiteReport::new("applications", cfg);
    // splitting equivalences (H verified exhaustively inside)
    for name in ["a2", "a3", "window3"] {
        let (_, spec) = torsion_spec(name, cfg.field)?;
        let failures = match crate::fixtures::torsion_equivalence(name, cfg.field) {
            Ok(eq) => {
                let mut f = Vec::new();
                for x in 0..spec.cat.object_count() {
                    for y in 0..spec.cat.object_count() {
                        if spec.cat.hom_dim(x, y)
                            != eq.lambda.cat.hom_dim(eq.object_map[x], eq.object_map[y])
                        {
                            f.push(format!("Hom dim mismatch at ({}, {})", x, y));
                        }
                    }
                }
                f
            }
            Err(e) => vec![e.to_string()],
        };
        report.push(format!("applications/splitting/{}", name), failures);
    }
    // negative control: a violating partition must be rejected with a witness
    {
        let (_, spec) = torsion_spec("a2", cfg.field)?;
        let bad = TorsionPairSpec {
            cat: Arc::clone(&spec.cat),
            u_objs: spec.t_objs.clone(),
            t_objs: spec.u_objs.clone(),
        };
        let failures = match splitting_equivalence(&bad) {
            Err(Error::TorsionPairViolation { .. }) => Vec::new(),
            Err(e) => vec![format!("wrong error: {}", e)],
            Ok(_) => vec!["violating partition was accepted".into()],
        };
        report.push("applications/splitting/violation-detected", failures);
    }
    // one-point extensions over every source, with and without relations
    for name in ["a3", "a3rel"] {
        let text = presentation_over(name, cfg.field)?;
        let q = parse_quiver(&text)?;
        let cat = Arc::new(path_category(&q)?);
        let sources: Vec<String> = q
            .vertices
            .iter()
            .enumerate()
            .filter(|(i, _)| q.arrows.iter().all(|a| a.target != *i))
            .map(|(_, v)| v.clone())
            .collect();
        let mut failures = Vec::new();
        for s in &sources {
            match one_point_extension(&q, s) {
                Ok(ext) => {
                    // total Hom dimension of KQ/I is reconstructed exactly
                    let total_c: usize = (0..cat.object_count())
                        .flat_map(|x| (0..cat.object_count()).map(move |y| (x, y)))
                        .map(|(x, y)| cat.hom_dim(x, y))
                        .sum();
                    let eq = &ext.equivalence;
                    let total_l: usize = (0..cat.object_count())
                        .flat_map(|x| (0..cat.object_count()).map(move |y| (x, y)))
                        .map(|(x, y)| {
                            eq.lambda.cat.hom_dim(eq.object_map[x], eq.object_map[y])
                        })
                        .sum();
                    if total_c != total_l {
                        failures.push(format!(
                            "source {}: total Hom dim {} ≠ {}",
                            s, total_c, total_l
                        ));
                    }
                }
                Err(e) => failures.push(format!("source {}: {}", s, e)),
            }
        }
        report.push(format!("applications/one-point/{}", name), failures);
    }
    // Ext¹ matrix categories against the resolution oracle
    {
        let mut failures = Vec::new();
        for (name, expected_dim) in [("a2", 1usize), ("kronecker", 2usize)] {
            let text = presentation_over(name, cfg.field)?;
            let q = parse_quiver(&text)?;
            let cat = Arc::new(path_category(&q)?);
            let s1 = simple_rep(&cat, 0);
            let s2 = simple_rep(&cat, 1);
            let names = vec!["S1".to_string(), "S2".to_string()];
            let reps = [s1.clone(), s2.clone()];
            let (_, m) = bimodule_ext1(&q, &cat, &names, &reps)?;
            let mut nonzero = BTreeSet::new();
            for u in 0..2 {
                for t in 0..2 {
                    let d = m.dim(u, t);
                    let oracle = ext1_dim_oracle(&q, &cat, &reps[t], &reps[u])?;
                    if d != oracle {
                        failures.push(format!(
                            "{}: Ext dim {} ≠ oracle {} at (u={}, t={})",
                            name, d, oracle, u, t
                        ));
                    }
                    if d > 0 {
                        nonzero.insert((u, t, d));
                    }
                }
            }
            let expected: BTreeSet<_> = [(1usize, 0usize, expected_dim)].into_iter().collect();
            if nonzero != expected {
                failures.push(format!("{}: unexpected nonzero blocks {:?}", name, nonzero));
            }
            if !m.check().is_empty() {
                failures.push(format!("{}: Ext bimodule invalid", name));
            }
            // the Λ built on the Ext¹ bimodule satisfies the axioms
            let lambda =
                crate::apps::ext1_matrix_category(&q, &cat, &names, &reps)?;
            let axioms = check_category_axioms(&lambda.cat);
            if !axioms.is_pass() {
                failures.push(format!("{}: Ext¹ Λ fails axioms", name));
            }
        }
        report.push("applications/ext1/simples-vs-oracle", failures);
    }
    // the Hom matrix category restricted to its 𝒯-diagonal recovers C
    {
        let text = presentation_over("a2", cfg.field)?;
        let q = parse_quiver(&text)?;
        let cat = path_category(&q)?;
        let lambda = crate::apps::hom_matrix_category(&cat)?;
        let mut failures = Vec::new();
        match crate::apps::hom_matrix_t_diagonal(&lambda) {
            Ok(diag) => {
                if diag.comp_tables() != cat.comp_tables() {
                    failures.push("diagonal structure constants differ".into());
                }
                for x in 0..cat.object_count() {
                    for y in 0..cat.object_count() {
                        if diag.hom_dim(x, y) != cat.hom_dim(x, y) {
                            failures.push(format!("diagonal Hom dim differs at ({}, {})", x, y));
                        }
                    }
                }
            }
            Err(e) => failures.push(e.to_string()),
        }
        report.push("applications/hom-matrix/diagonal-recovery", failures);
    }
    // projectives have no Ext¹: the bimodule is zero
    {
        let text = presentation_over("a2", cfg.field)?;
        let q = parse_quiver(&text)?;
        let cat = Arc::new(path_category(&q)?);
        let p0 = FiniteModule::representable(Arc::clone(&cat), 0);
        let p1 = FiniteModule::representable(Arc::clone(&cat), 1);
        let names = vec!["P1".to_string(), "P2".to_string()];
        let (_, m) = bimodule_ext1(&q, &cat, &names, &[p0, p1])?;
        let mut failures = Vec::new();
        for u in 0..2 {
            for t in 0..2 {
                if m.dim(u, t) != 0 {
                    failures.push(format!("Ext¹ nonzero on projectives at ({}, {})", u, t));
                }
            }
        }
        report.push("applications/ext1/projectives-vanish", failures);
    }
    Ok(report)
}
