//! Quivers, seeds, mutation, mutation-class enumeration with canonical seed
//! equivalence, A/X-coordinates, the X̂ symbolic log-pair map, and the
//! Grassmannian quiver constructors.

use itertools::Itertools;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

use crate::exact::{LaurentPoly, Rational};
use crate::symbolic::{ivec, GeneratorRegistry, IntVec, SymbolicLogPair};
use crate::{Error, Result};

/// A finite quiver: skew-symmetric signed edge-count matrix plus a frozen
/// flag per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    pub eps: Vec<Vec<i64>>,
    pub frozen: Vec<bool>,
}

impl Quiver {
    pub fn new(eps: Vec<Vec<i64>>, frozen: Vec<bool>) -> Self {
        let m = frozen.len();
        assert_eq!(eps.len(), m);
        for (i, row) in eps.iter().enumerate() {
            assert_eq!(row.len(), m);
            assert_eq!(row[i], 0, "nonzero diagonal");
            for j in 0..m {
                assert_eq!(row[j], -eps[j][i], "eps not skew-symmetric");
            }
        }
        Quiver { eps, frozen }
    }

    pub fn size(&self) -> usize {
        self.frozen.len()
    }

    pub fn mutable_vertices(&self) -> Vec<usize> {
        (0..self.size()).filter(|&i| !self.frozen[i]).collect()
    }
}

/// A seed: a quiver together with per-vertex A-coordinate ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Seed {
    pub quiver: Quiver,
    pub coords: Vec<usize>,
}

/// Bijection between A-coordinate ids and canonical Laurent polynomials in
/// the initial cluster variables.
#[derive(Clone, Debug, Default)]
pub struct ACoordRegistry {
    polys: Vec<LaurentPoly>,
    index: HashMap<LaurentPoly, usize>,
}

impl ACoordRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn intern(&mut self, p: LaurentPoly) -> usize {
        if let Some(&i) = self.index.get(&p) {
            return i;
        }
        let i = self.polys.len();
        self.index.insert(p.clone(), i);
        self.polys.push(p);
        i
    }

    pub fn poly(&self, id: usize) -> &LaurentPoly {
        &self.polys[id]
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }
}

/// Mutate a seed at a mutable vertex k: standard quiver rule plus the
/// exchange relation computed by exact Laurent division.
pub fn mutate_seed(seed: &Seed, k: usize, registry: &mut ACoordRegistry) -> Result<Seed> {
    let m = seed.quiver.size();
    if seed.quiver.frozen[k] {
        return Err(Error::FrozenVertex(k));
    }
    let eps = &seed.quiver.eps;
    let mut ne = vec![vec![0i64; m]; m];
    for i in 0..m {
        for j in 0..m {
            ne[i][j] = if i == k || j == k {
                -eps[i][j]
            } else if eps[i][k] * eps[k][j] > 0 {
                eps[i][j] + eps[i][k].abs() * eps[k][j]
            } else {
                eps[i][j]
            };
        }
    }
    let nvars = registry.poly(seed.coords[0]).nvars();
    let mut pos = LaurentPoly::one(nvars);
    let mut neg = LaurentPoly::one(nvars);
    for j in 0..m {
        let e = eps[k][j];
        if e > 0 {
            for _ in 0..e {
                pos = pos.mul(registry.poly(seed.coords[j]));
            }
        } else if e < 0 {
            for _ in 0..(-e) {
                neg = neg.mul(registry.poly(seed.coords[j]));
            }
        }
    }
    let num = pos.add(&neg);
    let quotient = num.divide_exact(registry.poly(seed.coords[k]))?;
    let mut coords = seed.coords.clone();
    coords[k] = registry.intern(quotient);
    Ok(Seed { quiver: Quiver { eps: ne, frozen: seed.quiver.frozen.clone() }, coords })
}

/// Canonical form of a seed under simultaneous permutation of its mutable
/// vertices (frozen labels stay fixed): the minimum of (coords, eps) over all
/// admissible permutations. Distinct mutable coordinate ids admit a unique
/// sorting permutation, so the search only branches on ties.
/// Canonical key of a seed: coordinate ids and flattened eps after the
/// minimizing permutation.
type CanonKey = (Vec<usize>, Vec<i64>);

/// Canonical key plus the slot map achieving it: `map[slot] = original vertex`.
fn canonical_form_with_map(seed: &Seed) -> (CanonKey, Vec<usize>) {
    let mutable = seed.quiver.mutable_vertices();
    // group mutable positions by coordinate id to enumerate only tie-breaking perms
    let mut order: Vec<usize> = mutable.clone();
    order.sort_by_key(|&v| seed.coords[v]);
    let groups: Vec<Vec<usize>> = order
        .iter()
        .chunk_by(|&&v| seed.coords[v])
        .into_iter()
        .map(|(_, g)| g.copied().collect())
        .collect();
    let mut best: Option<(CanonKey, Vec<usize>)> = None;
    // iterate over products of within-group permutations
    fn rec(
        groups: &[Vec<usize>],
        gi: usize,
        assembled: &mut Vec<usize>,
        seed: &Seed,
        mutable: &[usize],
        best: &mut Option<(CanonKey, Vec<usize>)>,
    ) {
        if gi == groups.len() {
            // slot map: mutable slot t holds old vertex assembled[t]
            let m = seed.quiver.size();
            let mut map: Vec<usize> = (0..m).collect();
            for (t, &old) in assembled.iter().enumerate() {
                map[mutable[t]] = old;
            }
            let coords: Vec<usize> = (0..m).map(|i| seed.coords[map[i]]).collect();
            let mut eps = Vec::with_capacity(m * m);
            for i in 0..m {
                for j in 0..m {
                    eps.push(seed.quiver.eps[map[i]][map[j]]);
                }
            }
            let cand = (coords, eps);
            if best.is_none() || cand < best.as_ref().unwrap().0 {
                *best = Some((cand, map));
            }
            return;
        }
        for perm in groups[gi].iter().copied().permutations(groups[gi].len()) {
            let len = assembled.len();
            assembled.extend(perm);
            rec(groups, gi + 1, assembled, seed, mutable, best);
            assembled.truncate(len);
        }
    }
    rec(&groups, 0, &mut Vec::new(), seed, &mutable, &mut best);
    best.unwrap()
}


/// A mutable-vertex reference into an enumerated class.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MutationTriple {
    pub seed_index: usize,
    pub vertex: usize,
}

/// The result of a breadth-first mutation class enumeration.
pub struct MutationClass {
    pub seeds: Vec<Seed>,
    pub triples: Vec<MutationTriple>,
    pub registry: ACoordRegistry,
    /// transitions[(seed, vertex)] = (target seed index, vertex relabeling):
    /// vertex v of the raw mutated seed sits at position perm[v] of the stored
    /// target seed.
    pub transitions: HashMap<(usize, usize), (usize, Vec<usize>)>,
}

/// Breadth-first closure of the initial seed under mutation, identifying
/// seeds up to simultaneous reordering of mutable vertices.
pub fn mutation_class(initial: &Quiver, cap: usize) -> Result<MutationClass> {
    let m = initial.size();
    let mut registry = ACoordRegistry::new();
    let coords: Vec<usize> =
        (0..m).map(|i| registry.intern(LaurentPoly::var(i, m))).collect();
    let seed0 = Seed { quiver: initial.clone(), coords };
    let mut seen: HashMap<CanonKey, (usize, Vec<usize>)> = HashMap::new();
    let (key0, map0) = canonical_form_with_map(&seed0);
    seen.insert(key0, (0, map0));
    let mut seeds = vec![seed0];
    let mut triples = Vec::new();
    let mut transitions = HashMap::new();
    let mut i = 0;
    while i < seeds.len() {
        for k in seeds[i].quiver.mutable_vertices() {
            triples.push(MutationTriple { seed_index: i, vertex: k });
            let next = mutate_seed(&seeds[i].clone(), k, &mut registry)?;
            let (key, map_next) = canonical_form_with_map(&next);
            let (idx, map_stored) = match seen.get(&key) {
                Some((idx, map)) => (*idx, map.clone()),
                None => {
                    let idx = seeds.len();
                    if idx >= cap {
                        return Err(Error::CapExceeded { cap, found: idx + 1 });
                    }
                    seen.insert(key, (idx, map_next.clone()));
                    seeds.push(next);
                    (idx, map_next.clone())
                }
            };
            // vertex v of the raw mutated seed is at canonical slot s with
            // map_next[s] = v, and the stored seed holds map_stored[s] there
            let m = map_next.len();
            let mut perm = vec![0usize; m];
            for s in 0..m {
                perm[map_next[s]] = map_stored[s];
            }
            transitions.insert((i, k), (idx, perm));
        }
        i += 1;
    }
    Ok(MutationClass { seeds, triples, registry, transitions })
}

/// The X-coordinate of a triple: exponent vector over A-coordinate ids.
pub type XCoordinate = IntVec;

/// X-coordinate and symbolic log-pair of a mutation triple:
/// X = Π aⱼ^{ε_kj}, pair = (Σ ε_kj ãⱼ, ã_k + ã'_k + Σ_{ε_kj<0} ε_kj ãⱼ),
/// realized on Ĉ₋₊ via 1 + X = a_k a'_k Π_{ε_kj<0} aⱼ^{ε_kj}.
pub fn x_log_pair(
    class_seed: &Seed,
    vertex: usize,
    registry: &mut ACoordRegistry,
) -> Result<(XCoordinate, SymbolicLogPair)> {
    let m = class_seed.quiver.size();
    if class_seed.quiver.frozen[vertex] {
        return Err(Error::FrozenVertex(vertex));
    }
    let eps = &class_seed.quiver.eps;
    let u: IntVec = ivec((0..m).filter_map(|j| {
        let e = eps[vertex][j];
        (e != 0).then_some((class_seed.coords[j], e))
    }));
    let mutated = mutate_seed(class_seed, vertex, registry)?;
    let mut v_entries: Vec<(usize, i64)> = vec![
        (class_seed.coords[vertex], 1),
        (mutated.coords[vertex], 1),
    ];
    for j in 0..m {
        let e = eps[vertex][j];
        if e < 0 {
            v_entries.push((class_seed.coords[j], e));
        }
    }
    Ok((u.clone(), SymbolicLogPair::new(u, ivec(v_entries))))
}

// ---- Grassmannian constructors ----

/// The index set I_{i,j} of the initial Plücker labeling for Q_{p,q}.
pub fn grassmannian_index(p: usize, q: usize, i: usize, j: usize) -> Vec<usize> {
    let n = p + q;
    let mut out = Vec::new();
    if i <= j {
        out.extend((i + 1)..=p);
        out.extend((n + 1 - j)..=(n + i - j));
    } else {
        out.extend(1..=(i - j));
        out.extend((i + 1)..=p);
        out.extend((n + 1 - j)..=n);
    }
    out
}

/// The quiver Q_{p,q} with its initial Plücker labeling. Grid rows i = 1..p,
/// columns j = 1..q, plus the extra frozen vertex a_{1..p}; arrows run right,
/// down, and diagonally up-left, with a_{1..p} → (1,1). Frozen vertices:
/// the extra vertex, the right column and the bottom row.
pub fn grassmannian_seed(p: usize, q: usize) -> (Quiver, Vec<Vec<usize>>) {
    assert!(p >= 2 && q >= 2, "require p, q >= 2");
    let m = 1 + p * q;
    let idx = |i: usize, j: usize| 1 + (i - 1) * q + (j - 1);
    let mut frozen = vec![false; m];
    frozen[0] = true;
    for i in 1..=p {
        frozen[idx(i, q)] = true;
    }
    for j in 1..=q {
        frozen[idx(p, j)] = true;
    }
    let mut eps = vec![vec![0i64; m]; m];
    let mut arrow = |a: usize, b: usize| {
        eps[a][b] += 1;
        eps[b][a] -= 1;
    };
    for i in 1..=p {
        for j in 1..=q {
            let here = idx(i, j);
            if j < q && !(frozen[here] && frozen[idx(i, j + 1)]) {
                arrow(here, idx(i, j + 1));
            }
            if i < p && !(frozen[here] && frozen[idx(i + 1, j)]) {
                arrow(here, idx(i + 1, j));
            }
            if i > 1 && j > 1 && !(frozen[here] && frozen[idx(i - 1, j - 1)]) {
                arrow(here, idx(i - 1, j - 1));
            }
        }
    }
    arrow(0, idx(1, 1));
    let mut labels = vec![Vec::new(); m];
    labels[0] = (1..=p).collect();
    for i in 1..=p {
        for j in 1..=q {
            labels[idx(i, j)] = grassmannian_index(p, q, i, j);
        }
    }
    (Quiver::new(eps, frozen), labels)
}

/// Plücker coordinate: the p×p minor of the columns selected by I (1-based).
pub fn plucker_eval(matrix: &[Vec<Complex64>], index: &[usize]) -> Complex64 {
    let p = matrix.len();
    assert_eq!(index.len(), p);
    let mut sub: Vec<Vec<Complex64>> =
        (0..p).map(|r| index.iter().map(|&c| matrix[r][c - 1]).collect()).collect();
    // Gaussian elimination determinant for small p
    let mut det = Complex64::new(1.0, 0.0);
    for c in 0..p {
        let Some(pr) = (c..p).find(|&r| sub[r][c].norm() > 0.0) else {
            return Complex64::new(0.0, 0.0);
        };
        if pr != c {
            sub.swap(pr, c);
            det = -det;
        }
        det *= sub[c][c];
        for r in (c + 1)..p {
            let f = sub[r][c] / sub[c][c];
            for cc in c..p {
                let x = sub[c][cc];
                sub[r][cc] -= f * x;
            }
        }
    }
    det
}

/// Exact rational Plücker minor, for registry labeling.
pub fn plucker_eval_rational(matrix: &[Vec<Rational>], index: &[usize]) -> Rational {
    use num_traits::Zero;
    let p = matrix.len();
    assert_eq!(index.len(), p);
    // cofactor expansion; p ≤ 3 in all uses
    fn det(m: &[Vec<Rational>]) -> Rational {
        match m.len() {
            1 => m[0][0].clone(),
            2 => &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0],
            3 => {
                &m[0][0] * (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1])
                    - &m[0][1] * (&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0])
                    + &m[0][2] * (&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0])
            }
            _ => {
                let mut acc = Rational::zero();
                for c in 0..m.len() {
                    let minor: Vec<Vec<Rational>> = (1..m.len())
                        .map(|r| {
                            (0..m.len()).filter(|&cc| cc != c).map(|cc| m[r][cc].clone()).collect()
                        })
                        .collect();
                    let term = &m[0][c] * det(&minor);
                    if c % 2 == 0 {
                        acc += term;
                    } else {
                        acc -= term;
                    }
                }
                acc
            }
        }
    }
    let sub: Vec<Vec<Rational>> =
        (0..p).map(|r| index.iter().map(|&c| matrix[r][c - 1].clone()).collect()).collect();
    det(&sub)
}

fn cross3(u: [Complex64; 3], v: [Complex64; 3]) -> [Complex64; 3] {
    [
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    ]
}

fn det3(a: [Complex64; 3], b: [Complex64; 3], c: [Complex64; 3]) -> Complex64 {
    a[0] * (b[1] * c[2] - b[2] * c[1]) - b[0] * (a[1] * c[2] - a[2] * c[1])
        + c[0] * (a[1] * b[2] - a[2] * b[1])
}

/// The two non-Plücker A-coordinates of Gr(3,6):
/// y₁ = det(v₁×v₂, v₃×v₄, v₅×v₆), y₂ = det(v₂×v₃, v₄×v₅, v₆×v₁).
pub fn y_eval(matrix: &[Vec<Complex64>]) -> (Complex64, Complex64) {
    assert_eq!(matrix.len(), 3);
    assert_eq!(matrix[0].len(), 6);
    let col = |c: usize| [matrix[0][c], matrix[1][c], matrix[2][c]];
    let y1 = det3(cross3(col(0), col(1)), cross3(col(2), col(3)), cross3(col(4), col(5)));
    let y2 = det3(cross3(col(1), col(2)), cross3(col(3), col(4)), cross3(col(5), col(0)));
    (y1, y2)
}

fn cross3_rational(u: &[Rational; 3], v: &[Rational; 3]) -> [Rational; 3] {
    [
        &u[1] * &v[2] - &u[2] * &v[1],
        &u[2] * &v[0] - &u[0] * &v[2],
        &u[0] * &v[1] - &u[1] * &v[0],
    ]
}

pub fn y_eval_rational(matrix: &[Vec<Rational>]) -> (Rational, Rational) {
    let col = |c: usize| -> [Rational; 3] {
        [matrix[0][c].clone(), matrix[1][c].clone(), matrix[2][c].clone()]
    };
    let det = |a: [Rational; 3], b: [Rational; 3], c: [Rational; 3]| {
        &a[0] * (&b[1] * &c[2] - &b[2] * &c[1]) - &b[0] * (&a[1] * &c[2] - &a[2] * &c[1])
            + &c[0] * (&a[1] * &b[2] - &a[2] * &b[1])
    };
    let y1 = det(
        cross3_rational(&col(0), &col(1)),
        cross3_rational(&col(2), &col(3)),
        cross3_rational(&col(4), &col(5)),
    );
    let y2 = det(
        cross3_rational(&col(1), &col(2)),
        cross3_rational(&col(3), &col(4)),
        cross3_rational(&col(5), &col(0)),
    );
    (y1, y2)
}

/// Resolve each A-coordinate id of an enumerated Gr(3,6) class to its
/// semantic name ("aijk" or "y1"/"y2") by exact rational evaluation at a
/// fixed generic rational matrix.
pub fn identify_gr36_labels(class: &MutationClass) -> Result<Vec<String>> {
    if class.seeds[0].quiver.size() != 10 || class.registry.len() != 22 {
        return Err(Error::Degenerate("not a Gr(3,6) class".into()));
    }
    let (_, labels) = grassmannian_seed(3, 3);
    // a fixed rational matrix, generic for all 22 coordinates
    let entries: [[(i64, i64); 6]; 3] = [
        [(2, 1), (1, 3), (-3, 2), (1, 7), (4, 5), (-1, 2)],
        [(1, 2), (3, 1), (1, 5), (-2, 3), (1, 1), (2, 7)],
        [(-1, 3), (2, 5), (1, 1), (3, 4), (-1, 6), (1, 9)],
    ];
    let matrix: Vec<Vec<Rational>> =
        entries.iter().map(|row| row.iter().map(|&(a, b)| crate::exact::rat(a, b)).collect()).collect();
    let mut value_to_name: HashMap<String, String> = HashMap::new();
    let key = |r: &Rational| r.to_string();
    for a in 1..=6usize {
        for b in (a + 1)..=6 {
            for c in (b + 1)..=6 {
                let v = plucker_eval_rational(&matrix, &[a, b, c]);
                let name = format!("a{a}{b}{c}");
                if value_to_name.insert(key(&v), name.clone()).is_some() {
                    return Err(Error::Degenerate(format!("labeling collision at {name}")));
                }
            }
        }
    }
    let (y1, y2) = y_eval_rational(&matrix);
    value_to_name.insert(key(&y1), "y1".into());
    value_to_name.insert(key(&y2), "y2".into());
    // initial variables take the labeled minor values
    let init: Vec<Rational> = labels
        .iter()
        .map(|idx| plucker_eval_rational(&matrix, idx))
        .collect();
    let mut out = Vec::with_capacity(class.registry.len());
    for id in 0..class.registry.len() {
        let val = class.registry.poly(id).eval_rational(&init);
        let name = value_to_name
            .get(&key(&val))
            .ok_or_else(|| Error::Degenerate(format!("unidentified A-coordinate {id}")))?;
        out.push(name.clone());
    }
    Ok(out)
}

/// Generator registry for a class, using semantic Gr(3,6) names when they
/// resolve and positional names otherwise.
pub fn class_generator_registry(class: &MutationClass) -> GeneratorRegistry {
    match identify_gr36_labels(class) {
        Ok(names) => GeneratorRegistry::from_names(names),
        Err(_) => GeneratorRegistry::from_names(
            (0..class.registry.len()).map(|i| format!("g{i}")),
        ),
    }
}

// ---- JSON quiver DSL ----

#[derive(Serialize, Deserialize)]
struct VertexJson {
    name: String,
    frozen: bool,
}

#[derive(Serialize, Deserialize)]
struct QuiverJson {
    vertices: Vec<VertexJson>,
    edges: Vec<(usize, usize, i64)>,
}

/// Parse the quiver DSL: {vertices:[{name, frozen}], edges:[[i,j,mult]]}.
pub fn quiver_from_json(value: &serde_json::Value) -> Result<(Quiver, Vec<String>)> {
    let parsed: QuiverJson = serde_json::from_value(value.clone())
        .map_err(|e| Error::InvalidInput(format!("quiver JSON: {e}")))?;
    let m = parsed.vertices.len();
    let mut eps = vec![vec![0i64; m]; m];
    for &(i, j, mult) in &parsed.edges {
        if i >= m || j >= m || i == j {
            return Err(Error::InvalidInput(format!("bad edge ({i},{j})")));
        }
        eps[i][j] += mult;
        eps[j][i] -= mult;
    }
    let frozen = parsed.vertices.iter().map(|v| v.frozen).collect();
    let names = parsed.vertices.into_iter().map(|v| v.name).collect();
    Ok((Quiver::new(eps, frozen), names))
}

pub fn quiver_to_json(q: &Quiver, names: &[String]) -> serde_json::Value {
    let vertices: Vec<VertexJson> = names
        .iter()
        .zip(&q.frozen)
        .map(|(n, &f)| VertexJson { name: n.clone(), frozen: f })
        .collect();
    let mut edges = Vec::new();
    for i in 0..q.size() {
        for j in (i + 1)..q.size() {
            if q.eps[i][j] > 0 {
                edges.push((i, j, q.eps[i][j]));
            } else if q.eps[i][j] < 0 {
                edges.push((j, i, -q.eps[i][j]));
            }
        }
    }
    serde_json::to_value(QuiverJson { vertices, edges }).expect("serializable")
}

/// The 2-vertex A₂ quiver with a single arrow 1 → 2.
pub fn a2_quiver() -> Quiver {
    Quiver::new(vec![vec![0, 1], vec![-1, 0]], vec![false, false])
}
