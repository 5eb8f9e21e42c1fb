//! Relation discovery: the inversion-quotient basis X̂(Q₀, n) of a mutation
//! class, exact assembly of the w_n matrix, kernel computation, and matching
//! of discovered relations against the named ones.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use std::collections::{BTreeMap, HashMap, HashSet};

use crate::exact::{rational_nullspace, RatMatrix, Rational};
use crate::quiver::{x_log_pair, MutationClass};
use crate::symbolic::{w_pair, GeneratorRegistry, Monomial, RelationSum, SymbolicLogPair};
use crate::Result;

/// Canonical representatives of X̂(Mut(Q₀)) modulo (u,v) + (−1)ⁿ(−u,v−u).
pub struct XhatBasis {
    pub n: i32,
    pub registry: GeneratorRegistry,
    pub reps: Vec<SymbolicLogPair>,
    /// (rep index, orientation sign) for each distinct raw pair
    pub orientation: HashMap<SymbolicLogPair, (usize, i64)>,
}

impl XhatBasis {
    pub fn dimension(&self) -> usize {
        self.reps.len()
    }

    /// Locate a raw pair's representative and orientation.
    pub fn locate(&self, pair: &SymbolicLogPair) -> Option<(usize, i64)> {
        self.orientation.get(pair).copied()
    }
}

/// Collect the distinct symbolic log-pairs of all mutation triples and
/// deduplicate under the inversion identification.
pub fn xhat_basis(class: &MutationClass, n: i32, registry: GeneratorRegistry) -> Result<XhatBasis> {
    let mut reg = class.registry.clone();
    let mut raw_pairs: Vec<SymbolicLogPair> = Vec::new();
    let mut seen = HashSet::new();
    let mut pair_of_x: HashMap<crate::quiver::XCoordinate, SymbolicLogPair> = HashMap::new();
    for t in &class.triples {
        let (x, pair) = x_log_pair(&class.seeds[t.seed_index], t.vertex, &mut reg)?;
        // the pair map factors through X-coordinates on all targets here
        if let Some(prev) = pair_of_x.get(&x) {
            assert_eq!(prev, &pair, "X-coordinate fails to determine the log-pair");
        } else {
            pair_of_x.insert(x, pair.clone());
        }
        if seen.insert(pair.clone()) {
            raw_pairs.push(pair);
        }
    }
    let mut reps: Vec<SymbolicLogPair> = Vec::new();
    let mut rep_index: BTreeMap<SymbolicLogPair, usize> = BTreeMap::new();
    let mut orientation = HashMap::new();
    for pair in &raw_pairs {
        let (rep, sign) = pair.canonical(n);
        let idx = *rep_index.entry(rep.clone()).or_insert_with(|| {
            reps.push(rep.clone());
            reps.len() - 1
        });
        orientation.insert(pair.clone(), (idx, sign));
    }
    // deterministic order: sort reps, rebuild indices
    let mut order: Vec<usize> = (0..reps.len()).collect();
    order.sort_by(|&a, &b| reps[a].cmp(&reps[b]));
    let mut rank = vec![0usize; reps.len()];
    for (new, &old) in order.iter().enumerate() {
        rank[old] = new;
    }
    let sorted: Vec<SymbolicLogPair> = order.iter().map(|&i| reps[i].clone()).collect();
    for v in orientation.values_mut() {
        v.0 = rank[v.0];
    }
    Ok(XhatBasis { n, registry, reps: sorted, orientation })
}

/// The exact w_n matrix over an X̂ basis: rows indexed by (monomial, dã)
/// basis elements, columns by representatives.
pub fn w_matrix(basis: &XhatBasis) -> RatMatrix {
    let mut row_index: BTreeMap<(Monomial, usize), usize> = BTreeMap::new();
    let mut entries: Vec<((Monomial, usize), usize, BigInt)> = Vec::new();
    for (col, rep) in basis.reps.iter().enumerate() {
        for (key, c) in w_pair(basis.n, rep).coeffs {
            let next = row_index.len();
            row_index.entry(key.clone()).or_insert(next);
            entries.push((key, col, c));
        }
    }
    let mut m = RatMatrix::zero(row_index.len(), basis.reps.len());
    for (key, col, c) in entries {
        let r = row_index[&key];
        *m.at_mut(r, col) += Rational::from_integer(c);
    }
    m
}

/// Pairwise size reduction of an integer kernel basis toward
/// shortest-support representatives.
fn reduce_supports(basis: &mut [Vec<i64>]) {
    let support = |v: &[i64]| v.iter().filter(|&&x| x != 0).count();
    let mut changed = true;
    while changed {
        changed = false;
        for i in 0..basis.len() {
            for j in 0..basis.len() {
                if i == j {
                    continue;
                }
                for scale in [1i64, -1] {
                    let cand: Vec<i64> = basis[i]
                        .iter()
                        .zip(&basis[j])
                        .map(|(&a, &b)| a + scale * b)
                        .collect();
                    if support(&cand) < support(&basis[i]) && cand.iter().any(|&x| x != 0) {
                        basis[i] = cand;
                        changed = true;
                    }
                }
            }
        }
    }
}

/// A discovered kernel element as a relation sum (signs all (−1,1), the
/// quiver realization component).
pub fn kernel_vector_to_relation(basis: &XhatBasis, v: &[i64]) -> RelationSum {
    let mut alpha = RelationSum::new(basis.registry.clone());
    for (col, &c) in v.iter().enumerate() {
        if c != 0 {
            alpha.push(c, basis.reps[col].clone(), (-1, 1));
        }
    }
    alpha.canonicalize();
    alpha
}

pub struct DiscoveryResult {
    pub basis: XhatBasis,
    pub kernel_vectors: Vec<Vec<i64>>,
    pub relations: Vec<RelationSum>,
}

/// Kernel of w_n on X̂(Q₀, n): every output is a differential ℒ̂_n relation.
pub fn discover_kernel(
    class: &MutationClass,
    n: i32,
    registry: GeneratorRegistry,
) -> Result<DiscoveryResult> {
    let basis = xhat_basis(class, n, registry)?;
    let m = w_matrix(&basis);
    let null = rational_nullspace(&m);
    let mut kernel_vectors: Vec<Vec<i64>> = null
        .iter()
        .map(|v| v.iter().map(|x| x.to_integer().to_i64().expect("small entries")).collect())
        .collect();
    reduce_supports(&mut kernel_vectors);
    kernel_vectors.sort();
    let relations =
        kernel_vectors.iter().map(|v| kernel_vector_to_relation(&basis, v)).collect();
    Ok(DiscoveryResult { basis, kernel_vectors, relations })
}

/// Check that a 5-term kernel element is an instance of the non-alternating
/// five-term relation: after normalizing orientations so all coefficients are
/// +1 (trying both global signs), some cyclic ordering satisfies
/// vᵢ = uᵢ₋₁ + uᵢ₊₁.
pub fn is_nonalt_instance(alpha: &RelationSum) -> bool {
    if alpha.num_terms() != 5 {
        return false;
    }
    'outer: for global in [1i64, -1] {
        let mut pairs = Vec::new();
        for t in &alpha.terms {
            let c = t.coef * global;
            let pair = match c {
                1 => t.pair.clone(),
                -1 => t.pair.invert(),
                _ => continue 'outer,
            };
            pairs.push(pair);
        }
        // search cyclic orderings: fix pairs[0] first, permute the rest
        use itertools::Itertools;
        for perm in (1..5usize).permutations(4) {
            let order: Vec<usize> = std::iter::once(0).chain(perm).collect();
            let ok = (0..5).all(|i| {
                let prev = &pairs[order[(i + 4) % 5]].u;
                let next = &pairs[order[(i + 1) % 5]].u;
                pairs[order[i]].v == crate::symbolic::ivec_add(prev, next)
            });
            if ok {
                return true;
            }
        }
    }
    false
}

/// Normal form for relation comparison: canonicalize every term under the
/// inversion identification, merge, and fix the global sign by the first term.
fn normal_form(n: i32, alpha: &RelationSum) -> Vec<(i64, SymbolicLogPair)> {
    let mut map: BTreeMap<SymbolicLogPair, i64> = BTreeMap::new();
    for t in &alpha.terms {
        let (rep, sign) = t.pair.canonical(n);
        *map.entry(rep).or_insert(0) += t.coef * sign;
    }
    let mut terms: Vec<(i64, SymbolicLogPair)> =
        map.into_iter().filter(|(_, c)| *c != 0).map(|(p, c)| (c, p)).collect();
    terms.sort_by(|a, b| a.1.cmp(&b.1));
    if let Some(&(c0, _)) = terms.first() {
        if c0 < 0 {
            for (c, _) in terms.iter_mut() {
                *c = -*c;
            }
        }
    }
    terms
}

/// Match two weight-n relations up to the inversion identification and a
/// global sign, mapping generator names across registries.
pub fn relations_match(n: i32, a: &RelationSum, b: &RelationSum) -> bool {
    // remap b onto a's registry by generator name
    let mut remapped = RelationSum::new(a.registry.clone());
    for t in &b.terms {
        let map_vec = |v: &crate::symbolic::IntVec| -> Option<crate::symbolic::IntVec> {
            v.iter()
                .map(|(&i, &c)| a.registry.get(b.registry.name(i)).map(|j| (j, c)))
                .collect()
        };
        let (Some(u), Some(v)) = (map_vec(&t.pair.u), map_vec(&t.pair.v)) else {
            return false;
        };
        remapped.push(t.coef, SymbolicLogPair::new(u, v), (t.sign1, t.sign2));
    }
    normal_form(n, a) == normal_form(n, &remapped)
}

/// All pentagon (embedded-A₂) five-term kernel elements of a class at n = 2,
/// as coordinate vectors over the basis representatives.
pub fn a2_embedding_instances(class: &MutationClass, basis: &XhatBasis) -> Result<Vec<Vec<i64>>> {
    let mut reg = class.registry.clone();
    // pair lookup per (seed, vertex)
    let mut pair_of: HashMap<(usize, usize), SymbolicLogPair> = HashMap::new();
    for t in &class.triples {
        let (_, pair) = x_log_pair(&class.seeds[t.seed_index], t.vertex, &mut reg)?;
        pair_of.insert((t.seed_index, t.vertex), pair);
    }
    let mut instances: HashSet<Vec<i64>> = HashSet::new();
    for (si, seed) in class.seeds.iter().enumerate() {
        let mutable = seed.quiver.mutable_vertices();
        for &k in &mutable {
            for &k2 in &mutable {
                if k == k2 || seed.quiver.eps[k][k2] != 1 {
                    continue;
                }
                // pentagon walk: mutate alternately at the tracked pair
                let mut state = si;
                let mut pos = (k, k2);
                let mut terms: Vec<SymbolicLogPair> = Vec::new();
                let mut ok = true;
                for _ in 0..5 {
                    let (a, b) = pos;
                    match pair_of.get(&(state, a)) {
                        Some(p) => terms.push(p.clone()),
                        None => {
                            ok = false;
                            break;
                        }
                    }
                    let Some((next, perm)) = class.transitions.get(&(state, a)) else {
                        ok = false;
                        break;
                    };
                    state = *next;
                    pos = (perm[b], perm[a]);
                }
                if !ok || state != si || pos != (k, k2) {
                    continue;
                }
                // the five pairs as a coordinate vector over the basis
                let mut vec = vec![0i64; basis.dimension()];
                let mut located = true;
                for p in &terms {
                    match basis.locate(p) {
                        Some((idx, sign)) => vec[idx] += sign,
                        None => {
                            located = false;
                            break;
                        }
                    }
                }
                if !located || vec.iter().all(|&x| x == 0) {
                    continue;
                }
                // normalize sign by leading entry
                if vec.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0) {
                    vec.iter_mut().for_each(|x| *x = -*x);
                }
                instances.insert(vec);
            }
        }
    }
    let mut out: Vec<Vec<i64>> = instances.into_iter().collect();
    out.sort();
    Ok(out)
}

/// Exact rank of a set of integer vectors.
pub fn int_rank(vectors: &[Vec<i64>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let rows: Vec<Vec<Rational>> = vectors
        .iter()
        .map(|v| v.iter().map(|&x| Rational::from_integer(BigInt::from(x))).collect())
        .collect();
    RatMatrix::from_rows(rows).rank()
}

/// True iff span(sub) ⊆ span(full): stacking does not increase the rank.
pub fn spans_contained(sub: &[Vec<i64>], full: &[Vec<i64>]) -> bool {
    let base = int_rank(full);
    let mut all = full.to_vec();
    all.extend_from_slice(sub);
    int_rank(&all) == base
}

/// Instances of the 40-term relation inside a larger class (Gr(3,7)): for
/// every 4-subset of mutable vertices whose restricted mutation walk closes
/// into a finite sub-class, the w₃ kernel restricted to the pairs seen along
/// the walk is kept when it is 1-dimensional with 40-term support.
pub fn r40_embedding_instances(
    class: &MutationClass,
    basis: &XhatBasis,
    state_cap: usize,
) -> Result<Vec<Vec<i64>>> {
    let mut reg = class.registry.clone();
    let mut pair_of: HashMap<(usize, usize), SymbolicLogPair> = HashMap::new();
    for t in &class.triples {
        let (_, pair) = x_log_pair(&class.seeds[t.seed_index], t.vertex, &mut reg)?;
        pair_of.insert((t.seed_index, t.vertex), pair);
    }
    let mut covered: HashSet<(usize, Vec<usize>)> = HashSet::new();
    let mut instances: HashSet<Vec<i64>> = HashSet::new();
    for si in 0..class.seeds.len() {
        let mutable = class.seeds[si].quiver.mutable_vertices();
        use itertools::Itertools;
        for subset in mutable.iter().copied().combinations(4) {
            let mut key: Vec<usize> = subset.clone();
            key.sort_unstable();
            if covered.contains(&(si, key.clone())) {
                continue;
            }
            // BFS over (seed, ordered 4-tuple) states mutating only tracked slots
            let start = (si, subset.clone());
            let mut seen: HashSet<(usize, Vec<usize>)> = HashSet::new();
            seen.insert(start.clone());
            let mut frontier = vec![start];
            let mut cols: HashSet<usize> = HashSet::new();
            let mut overflow = false;
            'walk: while let Some((s, pos)) = frontier.pop() {
                for slot in 0..4 {
                    let v = pos[slot];
                    if let Some(p) = pair_of.get(&(s, v)) {
                        if let Some((idx, _)) = basis.locate(p) {
                            cols.insert(idx);
                        }
                    }
                    let Some((next, perm)) = class.transitions.get(&(s, v)) else {
                        continue;
                    };
                    let npos: Vec<usize> = pos.iter().map(|&x| perm[x]).collect();
                    let st = (*next, npos);
                    if seen.insert(st.clone()) {
                        if seen.len() > state_cap {
                            overflow = true;
                            break 'walk;
                        }
                        frontier.push(st);
                    }
                }
            }
            if overflow {
                continue;
            }
            for (s, pos) in &seen {
                let mut k: Vec<usize> = pos.clone();
                k.sort_unstable();
                covered.insert((*s, k));
            }
            // restricted kernel
            let cols: Vec<usize> = {
                let mut c: Vec<usize> = cols.into_iter().collect();
                c.sort_unstable();
                c
            };
            if cols.len() < 40 {
                continue;
            }
            let mut row_index: BTreeMap<(Monomial, usize), usize> = BTreeMap::new();
            let mut entries = Vec::new();
            for (local, &col) in cols.iter().enumerate() {
                for (key, c) in w_pair(basis.n, &basis.reps[col]).coeffs {
                    let next = row_index.len();
                    let r = *row_index.entry(key).or_insert(next);
                    entries.push((r, local, c));
                }
            }
            let mut m = RatMatrix::zero(row_index.len(), cols.len());
            for (r, c, val) in entries {
                *m.at_mut(r, c) += Rational::from_integer(val);
            }
            let null = rational_nullspace(&m);
            if null.len() != 1 {
                continue;
            }
            let v: Vec<i64> =
                null[0].iter().map(|x| x.to_integer().to_i64().expect("small")).collect();
            if v.iter().filter(|&&x| x != 0).count() != 40 {
                continue;
            }
            let mut full = vec![0i64; basis.dimension()];
            for (local, &col) in cols.iter().enumerate() {
                full[col] = v[local];
            }
            if full.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0) {
                full.iter_mut().for_each(|x| *x = -*x);
            }
            instances.insert(full);
        }
    }
    let mut out: Vec<Vec<i64>> = instances.into_iter().collect();
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::{a2_quiver, class_generator_registry, grassmannian_seed, mutation_class};
    use crate::symbolic::{build_named, is_differential_relation, RelationName};

    #[test]
    fn a2_xhat_dimension_five() {
        let class = mutation_class(&a2_quiver(), 100).unwrap();
        let reg = class_generator_registry(&class);
        let basis = xhat_basis(&class, 2, reg).unwrap();
        assert_eq!(basis.dimension(), 5);
    }

    #[test]
    fn gr25_discovery() {
        let (q, _) = grassmannian_seed(2, 3);
        let class = mutation_class(&q, 100).unwrap();
        let reg = class_generator_registry(&class);
        let result = discover_kernel(&class, 2, reg).unwrap();
        assert_eq!(result.basis.dimension(), 5);
        assert_eq!(result.relations.len(), 1);
        assert_eq!(result.relations[0].num_terms(), 5);
        assert!(is_differential_relation(2, &result.relations[0], false));
        assert!(is_nonalt_instance(&result.relations[0]));
    }

    #[test]
    fn a2_discovery_matches_nonalt() {
        let class = mutation_class(&a2_quiver(), 100).unwrap();
        let reg = class_generator_registry(&class);
        let result = discover_kernel(&class, 2, reg).unwrap();
        assert_eq!(result.relations.len(), 1);
        assert!(is_nonalt_instance(&result.relations[0]));
        // negative control: the lifted (alternating) five-term is not one
        assert!(!is_nonalt_instance(&build_named(RelationName::LiftedFt).alpha));
    }

    #[test]
    fn gr36_weight3_discovery_matches_r40() {
        let (q, _) = grassmannian_seed(3, 3);
        let class = mutation_class(&q, 1000).unwrap();
        let reg = class_generator_registry(&class);
        let result = discover_kernel(&class, 3, reg).unwrap();
        assert_eq!(result.basis.dimension(), 52);
        assert_eq!(result.relations.len(), 1);
        assert_eq!(result.relations[0].num_terms(), 40);
        let named = build_named(RelationName::R40);
        assert!(relations_match(3, &result.relations[0], &named.alpha));
    }

    #[test]
    fn gr36_weight2_kernel_spanned_by_pentagons() {
        let (q, _) = grassmannian_seed(3, 3);
        let class = mutation_class(&q, 1000).unwrap();
        let reg = class_generator_registry(&class);
        let result = discover_kernel(&class, 2, reg).unwrap();
        assert_eq!(result.basis.dimension(), 52);
        assert_eq!(result.kernel_vectors.len(), 25);
        let instances = a2_embedding_instances(&class, &result.basis).unwrap();
        // every instance is a 5-term kernel element of non-alternating shape
        for v in &instances {
            assert_eq!(v.iter().filter(|&&x| x != 0).count(), 5);
            let alpha = kernel_vector_to_relation(&result.basis, v);
            assert!(is_differential_relation(2, &alpha, false));
            assert!(is_nonalt_instance(&alpha));
        }
        // exact two-sided span containment: the instances generate the kernel
        assert_eq!(int_rank(&instances), 25);
        assert!(spans_contained(&instances, &result.kernel_vectors));
        assert!(spans_contained(&result.kernel_vectors, &instances));
    }

    #[test]
    fn gr36_weight4_kernel_reported() {
        // no new relations are expected from this method at weight 4; the
        // kernel dimension is recorded by the nullspace oracle rather than
        // pinned to a known count
        let (q, _) = grassmannian_seed(3, 3);
        let class = mutation_class(&q, 1000).unwrap();
        let reg = class_generator_registry(&class);
        let result = discover_kernel(&class, 4, reg).unwrap();
        assert_eq!(result.basis.dimension(), 52);
        for alpha in &result.relations {
            assert!(is_differential_relation(4, alpha, false));
        }
    }
}
