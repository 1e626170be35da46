//! Quivers with relations and their path categories.
//!
//! The presentation grammar is line-oriented, `#` starts a comment:
//!
//! ```text
//! field Q            # or: field F 7
//! vertex t
//! vertex u
//! arrow a : t -> u
//! relation 1 b*a + -1 d*c
//! maxlen 6
//! ```
//!
//! Paths compose right-to-left: `b*a` means "a first, then b". The path
//! category has the quiver vertices as objects and, as Hom(x, y), the
//! residue classes of paths x→y of length ≤ `maxlen` modulo the two-sided
//! ideal generated by the relations (extended by all prefix/suffix paths
//! within the truncation bound). Paths longer than the bound are zero by
//! fiat, which makes cyclic quivers Hom-finite; for the truncation to be
//! faithful on a cyclic quiver, every path of maximal length must already
//! lie in the relation ideal, and we reject the presentation otherwise.

use std::collections::BTreeMap;

use crate::category::LinearCategory;
use crate::error::Error;
use crate::field::{Field, Scalar};
use crate::linalg::{quotient_by_subspace, vec_is_zero, VectorSpace};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// One relation: a K-linear combination of parallel paths. Paths are stored
/// as arrow indices in application order (first applied first).
#[derive(Debug, Clone)]
pub struct Relation {
    pub terms: Vec<(Scalar, Vec<usize>)>,
    pub line: usize,
}

/// A validated quiver-with-relations presentation.
#[derive(Debug, Clone)]
pub struct QuiverPresentation {
    pub field: Field,
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
    pub relations: Vec<Relation>,
    pub max_path_length: usize,
}

impl QuiverPresentation {
    pub fn vertex_index(&self, name: &str) -> Result<usize, Error> {
        self.vertices
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::UnknownObject(name.to_string()))
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    fn path_endpoints(&self, path: &[usize]) -> (usize, usize) {
        let src = self.arrows[path[0]].source;
        let tgt = self.arrows[*path.last().unwrap()].target;
        (src, tgt)
    }

    pub fn has_oriented_cycle(&self) -> bool {
        // DFS three-color over the arrow graph
        let n = self.vertices.len();
        let mut adj = vec![Vec::new(); n];
        for a in &self.arrows {
            adj[a.source].push(a.target);
        }
        let mut state = vec![0u8; n]; // 0 unseen, 1 on stack, 2 done
        fn visit(v: usize, adj: &[Vec<usize>], state: &mut [u8]) -> bool {
            state[v] = 1;
            for &w in &adj[v] {
                match state[w] {
                    1 => return true,
                    0 => {
                        if visit(w, adj, state) {
                            return true;
                        }
                    }
                    _ => {}
                }
            }
            state[v] = 2;
            false
        }
        (0..n).any(|v| state[v] == 0 && visit(v, &adj, &mut state))
    }

    pub fn is_acyclic(&self) -> bool {
        !self.has_oriented_cycle()
    }

    /// Display form of a path: arrow names right-to-left joined by `*`;
    /// the trivial path at vertex v displays as `id_v`.
    pub fn path_name(&self, vertex: usize, path: &[usize]) -> String {
        if path.is_empty() {
            format!("id_{}", self.vertices[vertex])
        } else {
            path.iter()
                .rev()
                .map(|&a| self.arrows[a].name.clone())
                .collect::<Vec<_>>()
                .join("*")
        }
    }
}

fn parse_err(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, col, msg: msg.into() }
}

/// Parses a quiver presentation document. Declarations may appear in any
/// order: vertices are collected first, then arrows, then relations.
pub fn parse_quiver(text: &str) -> Result<QuiverPresentation, Error> {
    let mut field: Option<Field> = None;
    let mut vertices: Vec<String> = Vec::new();
    let mut arrows: Vec<Arrow> = Vec::new();
    let mut relation_lines: Vec<(usize, String)> = Vec::new();
    let mut arrow_lines: Vec<(usize, String)> = Vec::new();
    let mut maxlen: Option<usize> = None;

    for (lineno, raw) in text.lines().enumerate() {
        let line_no = lineno + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (keyword, rest) = match line.split_once(char::is_whitespace) {
            Some((k, r)) => (k, r.trim()),
            None => (line, ""),
        };
        match keyword {
            "field" => {
                let f = Field::parse(rest)
                    .map_err(|e| parse_err(line_no, 1, e.to_string()))?;
                if let Some(existing) = field {
                    if existing != f {
                        return Err(parse_err(line_no, 1, "conflicting field declarations"));
                    }
                }
                field = Some(f);
            }
            "vertex" => {
                let name = rest;
                if name.is_empty() || name.contains(char::is_whitespace) {
                    return Err(parse_err(line_no, 8, "expected a single vertex name"));
                }
                if vertices.iter().any(|v| v == name) {
                    return Err(parse_err(line_no, 8, format!("duplicate vertex {}", name)));
                }
                vertices.push(name.to_string());
            }
            "arrow" => arrow_lines.push((line_no, rest.to_string())),
            "relation" => relation_lines.push((line_no, rest.to_string())),
            "maxlen" => {
                let v: usize = rest
                    .parse()
                    .map_err(|_| parse_err(line_no, 8, "expected a positive integer"))?;
                if v == 0 {
                    return Err(parse_err(line_no, 8, "maxlen must be positive"));
                }
                maxlen = Some(v);
            }
            other => {
                return Err(parse_err(line_no, 1, format!("unknown declaration `{}`", other)));
            }
        }
    }

    for (line_no, rest) in arrow_lines {
        let (name, spec) = rest
            .split_once(':')
            .ok_or_else(|| parse_err(line_no, 7, "expected `name : src -> tgt`"))?;
        let name = name.trim();
        let (src, tgt) = spec
            .split_once("->")
            .ok_or_else(|| parse_err(line_no, 7, "expected `src -> tgt`"))?;
        let (src, tgt) = (src.trim(), tgt.trim());
        if name.is_empty() || name.contains('*') {
            return Err(parse_err(line_no, 7, "bad arrow name"));
        }
        if arrows.iter().any(|a| a.name == name) {
            return Err(parse_err(line_no, 7, format!("duplicate arrow {}", name)));
        }
        let source = vertices
            .iter()
            .position(|v| v == src)
            .ok_or_else(|| parse_err(line_no, 7, format!("unknown vertex {}", src)))?;
        let target = vertices
            .iter()
            .position(|v| v == tgt)
            .ok_or_else(|| parse_err(line_no, 7, format!("unknown vertex {}", tgt)))?;
        arrows.push(Arrow { name: name.to_string(), source, target });
    }

    let field = field.ok_or_else(|| parse_err(1, 1, "missing `field` declaration"))?;

    let proto = QuiverPresentation {
        field,
        vertices,
        arrows,
        relations: Vec::new(),
        max_path_length: 1,
    };

    let mut relations = Vec::new();
    let mut max_term_len = 0usize;
    for (line_no, body) in relation_lines {
        let mut terms = Vec::new();
        for term in body.split('+') {
            let term = term.trim();
            let (coeff_str, path_str) = term
                .rsplit_once(char::is_whitespace)
                .ok_or_else(|| parse_err(line_no, 10, "expected `<coeff> <path>`"))?;
            let coeff = field
                .parse_scalar(coeff_str.trim())
                .map_err(|e| parse_err(line_no, 10, e.to_string()))?;
            let mut ids: Vec<usize> = Vec::new();
            for name in path_str.trim().split('*').rev() {
                let name = name.trim();
                let id = proto
                    .arrow_index(name)
                    .ok_or_else(|| parse_err(line_no, 10, format!("unknown arrow {}", name)))?;
                ids.push(id);
            }
            if ids.len() < 2 {
                return Err(parse_err(
                    line_no,
                    10,
                    "relation terms must be paths of length at least 2",
                ));
            }
            // consecutive arrows must compose
            for w in ids.windows(2) {
                if proto.arrows[w[0]].target != proto.arrows[w[1]].source {
                    return Err(parse_err(
                        line_no,
                        10,
                        format!(
                            "arrows {} and {} do not compose",
                            proto.arrows[w[0]].name, proto.arrows[w[1]].name
                        ),
                    ));
                }
            }
            max_term_len = max_term_len.max(ids.len());
            terms.push((coeff, ids));
        }
        // all terms parallel
        let (s0, t0) = proto.path_endpoints(&terms[0].1);
        for (_, p) in &terms[1..] {
            if proto.path_endpoints(p) != (s0, t0) {
                return Err(parse_err(line_no, 10, "relation terms are not parallel"));
            }
        }
        relations.push(Relation { terms, line: line_no });
    }

    let default_len = proto.vertices.len().max(max_term_len).max(1);
    let max_path_length = maxlen.unwrap_or(default_len);
    if max_path_length < max_term_len {
        return Err(parse_err(
            1,
            1,
            format!(
                "maxlen {} is smaller than a relation term of length {}",
                max_path_length, max_term_len
            ),
        ));
    }

    Ok(QuiverPresentation {
        relations,
        max_path_length,
        ..proto
    })
}

/// All paths of length ≤ maxlen, grouped by (source, target) and sorted by
/// (length, arrow-name sequence).
fn enumerate_paths(q: &QuiverPresentation) -> BTreeMap<(usize, usize), Vec<Vec<usize>>> {
    let n = q.vertices.len();
    let mut by_pair: BTreeMap<(usize, usize), Vec<Vec<usize>>> = BTreeMap::new();
    for v in 0..n {
        by_pair.entry((v, v)).or_default().push(Vec::new());
    }
    // frontier of paths of the current length, grouped by target
    let mut frontier: Vec<(usize, usize, Vec<usize>)> =
        (0..n).map(|v| (v, v, Vec::new())).collect();
    for _len in 1..=q.max_path_length {
        let mut next = Vec::new();
        for (src, tgt, path) in &frontier {
            for (ai, arrow) in q.arrows.iter().enumerate() {
                if arrow.source == *tgt {
                    let mut p = path.clone();
                    p.push(ai);
                    by_pair.entry((*src, arrow.target)).or_default().push(p.clone());
                    next.push((*src, arrow.target, p));
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    for paths in by_pair.values_mut() {
        paths.sort_by(|a, b| {
            (a.len(), path_key(q, a)).cmp(&(b.len(), path_key(q, b)))
        });
    }
    by_pair
}

fn path_key(q: &QuiverPresentation, path: &[usize]) -> Vec<String> {
    path.iter().map(|&a| q.arrows[a].name.clone()).collect()
}

/// Builds the path category of a presentation as a [`LinearCategory`].
pub fn path_category(q: &QuiverPresentation) -> Result<LinearCategory, Error> {
    let n = q.vertices.len();
    let field = q.field;
    let paths = enumerate_paths(q);
    let index_of: BTreeMap<(usize, usize), BTreeMap<Vec<usize>, usize>> = paths
        .iter()
        .map(|(&k, v)| (k, v.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect()))
        .collect();

    // the relation ideal, spanned blockwise by all truncated extensions
    // q_path ∘ relation ∘ p_path
    let mut ideal: BTreeMap<(usize, usize), Vec<Vec<Scalar>>> = BTreeMap::new();
    for rel in &q.relations {
        let (rs, rt) = q.path_endpoints(&rel.terms[0].1);
        for ((ps, pt), pre_paths) in &paths {
            if *pt != rs {
                continue;
            }
            for ((qs, qt), post_paths) in &paths {
                if *qs != rt {
                    continue;
                }
                let block = (*ps, *qt);
                let block_paths = &paths[&block];
                let dim = block_paths.len();
                for pre in pre_paths {
                    for post in post_paths {
                        let mut vec = vec![field.zero(); dim];
                        let mut nonzero = false;
                        for (coeff, mid) in &rel.terms {
                            let total = pre.len() + mid.len() + post.len();
                            if total > q.max_path_length {
                                continue; // truncated to zero
                            }
                            let mut whole = pre.clone();
                            whole.extend_from_slice(mid);
                            whole.extend_from_slice(post);
                            let idx = index_of[&block][&whole];
                            vec[idx] = &vec[idx] + coeff;
                            nonzero = true;
                        }
                        if nonzero && !vec_is_zero(&vec) {
                            ideal.entry(block).or_default().push(vec);
                        }
                    }
                }
            }
        }
    }

    // quotient each block; keep the projection data for composition
    let cyclic = q.has_oriented_cycle();
    let mut hom = BTreeMap::new();
    let mut quotients = BTreeMap::new();
    for (&(x, y), block_paths) in &paths {
        let labels: Vec<String> = block_paths
            .iter()
            .map(|p| q.path_name(x, p))
            .collect();
        let ambient = VectorSpace::new(field, labels)?;
        let empty = Vec::new();
        let ideal_vecs = ideal.get(&(x, y)).unwrap_or(&empty);
        let quotient = quotient_by_subspace(&ambient, ideal_vecs);
        if cyclic {
            // the truncation is only faithful when every maximal-length
            // path is already zero in the quotient
            for (i, p) in block_paths.iter().enumerate() {
                if p.len() == q.max_path_length {
                    let class = quotient.projection.apply(&ambient.basis_vec(i));
                    if !vec_is_zero(&class) {
                        return Err(Error::NonAdmissible(format!(
                            "Hom({}, {}) does not stabilize below maxlen {}: path {} survives",
                            q.vertices[x],
                            q.vertices[y],
                            q.max_path_length,
                            q.path_name(x, p)
                        )));
                    }
                }
            }
        }
        if quotient.space.dim() > 0 {
            hom.insert((x, y), quotient.space.clone());
        }
        quotients.insert((x, y), (ambient, quotient));
    }

    // composition: concatenate representatives, reduce into the quotient
    let mut comp = BTreeMap::new();
    for x in 0..n {
        for y in 0..n {
            let Some((amb_xy, q_xy)) = quotients.get(&(x, y)) else { continue };
            if q_xy.space.dim() == 0 {
                continue;
            }
            for z in 0..n {
                let Some((_, q_yz)) = quotients.get(&(y, z)) else { continue };
                if q_yz.space.dim() == 0 {
                    continue;
                }
                let Some((amb_xz, q_xz)) = quotients.get(&(x, z)) else { continue };
                if q_xz.space.dim() == 0 {
                    continue;
                }
                let df = q_xy.space.dim();
                let dg = q_yz.space.dim();
                let dr = q_xz.space.dim();
                let mut table = vec![vec![vec![field.zero(); dr]; df]; dg];
                let f_reps: Vec<&Vec<usize>> = q_xy
                    .space
                    .labels
                    .iter()
                    .map(|l| rep_path(&paths[&(x, y)], amb_xy, l))
                    .collect();
                let g_reps: Vec<&Vec<usize>> = q_yz
                    .space
                    .labels
                    .iter()
                    .map(|l| rep_path(&paths[&(y, z)], &quotients[&(y, z)].0, l))
                    .collect();
                for (gi, gp) in g_reps.iter().enumerate() {
                    for (fi, fp) in f_reps.iter().enumerate() {
                        let total = fp.len() + gp.len();
                        if total > q.max_path_length {
                            continue; // zero
                        }
                        let mut whole = (*fp).clone();
                        whole.extend_from_slice(gp);
                        let idx = index_of[&(x, z)][&whole];
                        let class = q_xz.projection.apply(&amb_xz.basis_vec(idx));
                        table[gi][fi] = class;
                    }
                }
                comp.insert((x, y, z), table);
            }
        }
    }

    let id: Vec<Vec<Scalar>> = (0..n)
        .map(|v| {
            let (amb, quo) = &quotients[&(v, v)];
            let trivial = index_of[&(v, v)][&Vec::new()];
            quo.projection.apply(&amb.basis_vec(trivial))
        })
        .collect();

    LinearCategory::new(field, q.vertices.clone(), hom, comp, id)
}

fn rep_path<'a>(
    block_paths: &'a [Vec<usize>],
    ambient: &VectorSpace,
    label: &str,
) -> &'a Vec<usize> {
    let idx = ambient.labels.iter().position(|l| l == label).unwrap();
    &block_paths[idx]
}

/// Brute-force path counter between two vertices (test oracle for acyclic
/// relation-free quivers).
pub fn count_paths(q: &QuiverPresentation, from: usize, to: usize, max_len: usize) -> usize {
    fn dfs(q: &QuiverPresentation, at: usize, to: usize, left: usize) -> usize {
        let mut total = if at == to { 1 } else { 0 };
        if left == 0 {
            return total;
        }
        for a in &q.arrows {
            if a.source == at {
                total += dfs(q, a.target, to, left - 1);
            }
        }
        total
    }
    dfs(q, from, to, max_len)
}

pub const A2_PRESENTATION: &str = "\
field Q
vertex t
vertex u
arrow a : t -> u
";

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::check_category_axioms;

    const A3: &str = "\
field Q
vertex 1
vertex 2
vertex 3
arrow a : 1 -> 2
arrow b : 2 -> 3
";

    const A3_REL: &str = "\
field Q
vertex 1
vertex 2
vertex 3
arrow a : 1 -> 2
arrow b : 2 -> 3
relation 1 b*a
";

    #[test]
    fn parse_a2() {
        let q = parse_quiver(A2_PRESENTATION).unwrap();
        assert_eq!(q.vertices.len(), 2);
        assert_eq!(q.arrows.len(), 1);
        assert_eq!(q.field, Field::Rationals);
    }

    #[test]
    fn parse_relation_document() {
        let q = parse_quiver(A3_REL).unwrap();
        assert_eq!(q.relations.len(), 1);
        assert_eq!(q.relations[0].terms[0].1.len(), 2);
        // b*a means a first: stored application order is [a, b]
        assert_eq!(q.relations[0].terms[0].1, vec![0, 1]);
    }

    #[test]
    fn parse_errors_carry_positions() {
        let bad = "field Q\nvertex t\narrow a : t -> nowhere\n";
        match parse_quiver(bad) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("expected parse error, got {:?}", other),
        }
        assert!(matches!(
            parse_quiver("vertex t\n"),
            Err(Error::Parse { .. }) // missing field
        ));
        // non-parallel relation
        let bad2 = "field Q\nvertex 1\nvertex 2\nvertex 3\narrow a : 1 -> 2\narrow b : 2 -> 3\narrow c : 1 -> 3\nrelation 1 b*a + 1 c*b\n";
        assert!(parse_quiver(bad2).is_err());
    }

    #[test]
    fn whitespace_insensitive() {
        let q = parse_quiver("field Q\nvertex t\nvertex u\narrow a:t->u\n").unwrap();
        assert_eq!(q.arrows[0].name, "a");
    }

    #[test]
    fn a2_path_category() {
        let q = parse_quiver(A2_PRESENTATION).unwrap();
        let cat = path_category(&q).unwrap();
        let (t, u) = (0, 1);
        assert_eq!(cat.hom_dim(t, u), 1);
        assert_eq!(cat.hom_dim(u, t), 0);
        assert_eq!(cat.hom_dim(t, t), 1);
        assert_eq!(cat.hom_dim(u, u), 1);
        assert!(check_category_axioms(&cat).is_pass());
    }

    #[test]
    fn a3_long_path() {
        let q = parse_quiver(A3).unwrap();
        let cat = path_category(&q).unwrap();
        assert_eq!(cat.hom_dim(0, 2), 1);
        assert_eq!(cat.hom_space(0, 2).labels, vec!["b*a".to_string()]);
        // composition b ∘ a = b*a
        let ba = cat.compose(0, 1, 2, &cat.hom_space(1, 2).basis_vec(0), &cat.hom_space(0, 1).basis_vec(0));
        assert_eq!(ba, cat.hom_space(0, 2).basis_vec(0));
        assert!(check_category_axioms(&cat).is_pass());
    }

    #[test]
    fn a3_relation_kills_long_path() {
        let q = parse_quiver(A3_REL).unwrap();
        let cat = path_category(&q).unwrap();
        assert_eq!(cat.hom_dim(0, 2), 0);
        assert!(check_category_axioms(&cat).is_pass());
    }

    #[test]
    fn acyclic_dims_match_path_counts() {
        for text in [A2_PRESENTATION, A3] {
            let q = parse_quiver(text).unwrap();
            let cat = path_category(&q).unwrap();
            for x in 0..q.vertices.len() {
                for y in 0..q.vertices.len() {
                    let expected = count_paths(&q, x, y, q.max_path_length);
                    assert_eq!(cat.hom_dim(x, y), expected, "dims at ({},{})", x, y);
                }
            }
        }
    }

    #[test]
    fn relations_never_increase_dims() {
        let free = path_category(&parse_quiver(A3).unwrap()).unwrap();
        let rel = path_category(&parse_quiver(A3_REL).unwrap()).unwrap();
        for x in 0..3 {
            for y in 0..3 {
                assert!(rel.hom_dim(x, y) <= free.hom_dim(x, y));
            }
        }
    }

    #[test]
    fn loop_without_relations_is_rejected() {
        let text = "field Q\nvertex v\narrow x : v -> v\nmaxlen 3\n";
        let q = parse_quiver(text).unwrap();
        assert!(q.has_oriented_cycle());
        assert!(matches!(path_category(&q), Err(Error::NonAdmissible(_))));
    }

    #[test]
    fn truncated_polynomial_loop() {
        // K[x]/(x^2): loop with relation x*x
        let text = "field Q\nvertex v\narrow x : v -> v\nrelation 1 x*x\nmaxlen 3\n";
        let q = parse_quiver(text).unwrap();
        let cat = path_category(&q).unwrap();
        assert_eq!(cat.hom_dim(0, 0), 2);
        assert!(check_category_axioms(&cat).is_pass());
        // x ∘ x = 0 in the quotient
        let x_idx = cat.hom_space(0, 0).labels.iter().position(|l| l == "x").unwrap();
        let xv = cat.hom_space(0, 0).basis_vec(x_idx);
        assert!(vec_is_zero(&cat.compose(0, 0, 0, &xv, &xv)));
    }

    #[test]
    fn kronecker_two_arrows() {
        let text = "field Q\nvertex 1\nvertex 2\narrow a : 1 -> 2\narrow b : 1 -> 2\n";
        let q = parse_quiver(text).unwrap();
        let cat = path_category(&q).unwrap();
        assert_eq!(cat.hom_dim(0, 1), 2);
        assert!(check_category_axioms(&cat).is_pass());
    }

    #[test]
    fn commutative_square_relation() {
        // two paths 1→4 identified by the relation b*a − d*c
        let text = "\
field Q
vertex 1
vertex 2
vertex 3
vertex 4
arrow a : 1 -> 2
arrow b : 2 -> 4
arrow c : 1 -> 3
arrow d : 3 -> 4
relation 1 b*a + -1 d*c
";
        let q = parse_quiver(text).unwrap();
        let cat = path_category(&q).unwrap();
        assert_eq!(cat.hom_dim(0, 3), 1);
        assert!(check_category_axioms(&cat).is_pass());
        // b ∘ a and d ∘ c reduce to the same residue class
        let ba = cat.compose(0, 1, 3, &cat.hom_space(1, 3).basis_vec(0), &cat.hom_space(0, 1).basis_vec(0));
        let dc = cat.compose(0, 2, 3, &cat.hom_space(2, 3).basis_vec(0), &cat.hom_space(0, 2).basis_vec(0));
        assert_eq!(ba, dc);
        assert!(!crate::linalg::vec_is_zero(&ba));
        // without the relation the square has two independent long paths
        let free = parse_quiver(&text.replace("relation 1 b*a + -1 d*c\n", "")).unwrap();
        assert_eq!(path_category(&free).unwrap().hom_dim(0, 3), 2);
    }

    #[test]
    fn prime_field_path_category() {
        let text = "field F 5\nvertex t\nvertex u\narrow a : t -> u\n";
        let q = parse_quiver(text).unwrap();
        assert_eq!(q.field, Field::Prime(5));
        let cat = path_category(&q).unwrap();
        assert!(check_category_axioms(&cat).is_pass());
    }
}
