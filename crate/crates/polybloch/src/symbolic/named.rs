//! Builders for the named relations: the lifted five-term family, the two-
//! and three-term symmetry relations, the 22-term weight-3 relation, and the
//! 40-term Grassmannian relation.

use num_complex::Complex64;
use std::f64::consts::PI;

use super::{ivec, GeneratorRegistry, IntVec, RelationSum, SymbolicLogPair};
use crate::polylog::{LatticeModulus, ZETA3};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RelationName {
    LiftedFt,
    InvertedLiftedFt,
    NonaltLiftedFt,
    TwoTerm,
    ThreeTerm,
    NonaltFive,
    BadL4,
    Goncharov22,
    R40,
}

impl RelationName {
    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "lifted_ft" => Self::LiftedFt,
            "inverted_lifted_ft" => Self::InvertedLiftedFt,
            "nonalt_lifted_ft" => Self::NonaltLiftedFt,
            "two_term" => Self::TwoTerm,
            "three_term" => Self::ThreeTerm,
            "nonalt_five" => Self::NonaltFive,
            "bad_l4" => Self::BadL4,
            "goncharov22" => Self::Goncharov22,
            "r40" => Self::R40,
            _ => return None,
        })
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Self::LiftedFt => "lifted_ft",
            Self::InvertedLiftedFt => "inverted_lifted_ft",
            Self::NonaltLiftedFt => "nonalt_lifted_ft",
            Self::TwoTerm => "two_term",
            Self::ThreeTerm => "three_term",
            Self::NonaltFive => "nonalt_five",
            Self::BadL4 => "bad_l4",
            Self::Goncharov22 => "goncharov22",
            Self::R40 => "r40",
        }
    }

    pub const ALL: [RelationName; 9] = [
        Self::LiftedFt,
        Self::InvertedLiftedFt,
        Self::NonaltLiftedFt,
        Self::TwoTerm,
        Self::ThreeTerm,
        Self::NonaltFive,
        Self::BadL4,
        Self::Goncharov22,
        Self::R40,
    ];
}

/// What a relation's ℒ̂_n value should be across admissible realizations.
#[derive(Clone, Copy, Debug)]
pub enum Expected {
    /// A pinned constant modulo the given lattice.
    Constant { value: Complex64, modulus: LatticeModulus },
    /// Constant across realizations in one component; value not pinned.
    ConstantOnly,
}

#[derive(Clone, Debug)]
pub struct NamedRelation {
    pub name: RelationName,
    pub n: i32,
    pub alpha: RelationSum,
    pub expected: Expected,
}

fn pi_i_pow(n: u32) -> Complex64 {
    Complex64::new(0.0, PI).powu(n)
}

pub fn build_named(name: RelationName) -> NamedRelation {
    match name {
        RelationName::LiftedFt => lifted_ft(false),
        RelationName::InvertedLiftedFt => inverted_lifted_ft(),
        RelationName::NonaltLiftedFt => lifted_ft(true),
        RelationName::TwoTerm => two_term(),
        RelationName::ThreeTerm => three_term(),
        RelationName::NonaltFive => nonalt_five(),
        RelationName::BadL4 => bad_l4(),
        RelationName::Goncharov22 => goncharov22(),
        RelationName::R40 => r40(),
    }
}

fn small_registry(n: usize) -> GeneratorRegistry {
    GeneratorRegistry::from_names((1..=n).map(|i| format!("a{i}")))
}

fn v(entries: &[(usize, i64)]) -> IntVec {
    ivec(entries.iter().copied())
}

fn pair(u: &[(usize, i64)], w: &[(usize, i64)]) -> SymbolicLogPair {
    SymbolicLogPair::new(v(u), v(w))
}

/// The five pairs of the lifted five-term relation over ã₁..ã₅.
fn ft_pairs() -> [SymbolicLogPair; 5] {
    [
        pair(&[(0, 1)], &[(2, 1)]),
        pair(&[(1, 1)], &[(3, 1)]),
        pair(&[(1, 1), (0, -1)], &[(4, 1), (0, -1)]),
        pair(&[(1, 1), (2, 1), (0, -1), (3, -1)], &[(4, 1), (0, -1), (3, -1)]),
        pair(&[(2, 1), (3, -1)], &[(4, 1), (3, -1)]),
    ]
}

fn lifted_ft(non_alternating: bool) -> NamedRelation {
    let mut alpha = RelationSum::new(small_registry(5));
    let pairs = ft_pairs();
    for (i, p) in pairs.into_iter().enumerate() {
        let swap = non_alternating && (i == 1 || i == 3);
        let p = if swap { SymbolicLogPair::new(p.v.clone(), p.u.clone()) } else { p };
        let coef = if non_alternating || i % 2 == 0 { 1 } else { -1 };
        alpha.push(coef, p, (1, 1));
    }
    NamedRelation {
        name: if non_alternating { RelationName::NonaltLiftedFt } else { RelationName::LiftedFt },
        n: 2,
        alpha,
        expected: Expected::ConstantOnly,
    }
}

fn inverted_lifted_ft() -> NamedRelation {
    // apply [(u,v)] ↦ −[(v,u)] to the lifted five-term relation
    let mut alpha = RelationSum::new(small_registry(5));
    for (i, p) in ft_pairs().into_iter().enumerate() {
        let coef = if i % 2 == 0 { -1 } else { 1 };
        alpha.push(coef, SymbolicLogPair::new(p.v, p.u), (1, 1));
    }
    NamedRelation {
        name: RelationName::InvertedLiftedFt,
        n: 2,
        alpha,
        expected: Expected::ConstantOnly,
    }
}

fn two_term() -> NamedRelation {
    // [(ã₁,ã₂)] + [(−ã₁,ã₂−ã₁)] with sign determination ((−1,1),(−1,1)); the
    // even-n instance of the inversion relation, built here at n = 2
    let mut alpha = RelationSum::new(small_registry(2));
    alpha.push(1, pair(&[(0, 1)], &[(1, 1)]), (-1, 1));
    alpha.push(1, pair(&[(0, -1)], &[(1, 1), (0, -1)]), (-1, 1));
    NamedRelation {
        name: RelationName::TwoTerm,
        n: 2,
        alpha,
        expected: Expected::Constant {
            value: Complex64::new(-PI * PI / 6.0, 0.0),
            modulus: LatticeModulus::new(Complex64::new(-4.0 * PI * PI, 0.0)),
        },
    }
}

fn three_term() -> NamedRelation {
    // [(ã₁,ã₂)] + [(−ã₂,ã₁−ã₂)] + [(ã₂−ã₁,−ã₁)], cyclic signs ((1,1),(1,−1),(−1,1))
    let mut alpha = RelationSum::new(small_registry(2));
    alpha.push(1, pair(&[(0, 1)], &[(1, 1)]), (1, 1));
    alpha.push(1, pair(&[(1, -1)], &[(0, 1), (1, -1)]), (1, -1));
    alpha.push(1, pair(&[(1, 1), (0, -1)], &[(0, -1)]), (-1, 1));
    NamedRelation {
        name: RelationName::ThreeTerm,
        n: 3,
        alpha,
        expected: Expected::Constant {
            value: Complex64::new(ZETA3, 0.0),
            modulus: LatticeModulus::new(Complex64::new(0.0, 4.0 * PI.powi(3))),
        },
    }
}

fn nonalt_five() -> NamedRelation {
    // Σᵢ [(ãᵢ, ãᵢ₊₁ + ãᵢ₋₁)] cyclically over 5 generators, all signs (−1,1)
    let mut alpha = RelationSum::new(small_registry(5));
    for i in 0..5usize {
        alpha.push(1, pair(&[(i, 1)], &[((i + 1) % 5, 1), ((i + 4) % 5, 1)]), (-1, 1));
    }
    NamedRelation {
        name: RelationName::NonaltFive,
        n: 2,
        alpha,
        expected: Expected::Constant {
            value: Complex64::new(-PI * PI / 2.0, 0.0),
            modulus: LatticeModulus::new(Complex64::new(4.0 * PI * PI, 0.0)),
        },
    }
}

fn bad_l4() -> NamedRelation {
    // [(2ã₁+2ã₃, −ã₁+ã₂)] − 8[(ã₁+ã₃, −2ã₁+ã₂−ã₃)]
    let mut alpha = RelationSum::new(small_registry(3));
    alpha.push(1, pair(&[(0, 2), (2, 2)], &[(0, -1), (1, 1)]), (1, 1));
    alpha.push(-8, pair(&[(0, 1), (2, 1)], &[(0, -2), (1, 1), (2, -1)]), (1, 1));
    NamedRelation {
        name: RelationName::BadL4,
        n: 4,
        alpha,
        expected: Expected::ConstantOnly,
    }
}

fn goncharov22() -> NamedRelation {
    // generators: α₁..α₃, β₁..β₃, γ₁..γ₃, δ
    let names: Vec<String> = (1..=3)
        .map(|i| format!("alpha{i}"))
        .chain((1..=3).map(|i| format!("beta{i}")))
        .chain((1..=3).map(|i| format!("gamma{i}")))
        .chain(std::iter::once("delta".to_string()))
        .collect();
    let registry = GeneratorRegistry::from_names(names);
    let al = |i: usize| (i - 1) % 3;
    let be = |i: usize| 3 + (i - 1) % 3;
    let ga = |i: usize| 6 + (i - 1) % 3;
    let de = 9usize;
    let mut alpha = RelationSum::new(registry);
    for i in 1..=3usize {
        let im1 = if i == 1 { 3 } else { i - 1 };
        let ip1 = if i == 3 { 1 } else { i + 1 };
        // term (i,1): z = α_i, 1−z = γ_i
        alpha.push(1, pair(&[(al(i), 1)], &[(ga(i), 1)]), (1, 1));
        // (i,2): z = β_i, 1−z = α_i γ_{i−1}
        alpha.push(1, pair(&[(be(i), 1)], &[(al(i), 1), (ga(im1), 1)]), (1, 1));
        // (i,3): z = α_{i−1}/β_i, 1−z = γ_{i−1}γ_i/β_i
        alpha.push(
            -1,
            pair(&[(al(im1), 1), (be(i), -1)], &[(ga(im1), 1), (ga(i), 1), (be(i), -1)]),
            (1, 1),
        );
        // (i,4): z = β_i/(α_{i−1}α_i), 1−z = −γ_i/(α_{i−1}α_i)
        alpha.push(
            1,
            pair(
                &[(be(i), 1), (al(im1), -1), (al(i), -1)],
                &[(ga(i), 1), (al(im1), -1), (al(i), -1)],
            ),
            (1, -1),
        );
        // (i,5): z = α_i β_{i−1}/β_{i+1}, 1−z = γ_{i+1} β_i/β_{i+1}
        alpha.push(
            1,
            pair(
                &[(al(i), 1), (be(im1), 1), (be(ip1), -1)],
                &[(ga(ip1), 1), (be(i), 1), (be(ip1), -1)],
            ),
            (1, 1),
        );
        // (i,6): z = −β_i/(α_i β_{i−1}), 1+(−z)... realization −π(u)+π(v) = 1
        alpha.push(
            1,
            pair(&[(be(i), 1), (al(i), -1), (be(im1), -1)], &[(de, 1), (al(i), -1), (be(im1), -1)]),
            (-1, 1),
        );
        // (i,7): z = α_{i−1}α_i β_{i+1}/β_i, 1−z = δγ_i/β_i
        alpha.push(
            -1,
            pair(
                &[(al(im1), 1), (al(i), 1), (be(ip1), 1), (be(i), -1)],
                &[(de, 1), (ga(i), 1), (be(i), -1)],
            ),
            (1, 1),
        );
    }
    // term 22: z = −α₁α₂α₃, 1−z = δ
    alpha.push(1, pair(&[(al(1), 1), (al(2), 1), (al(3), 1)], &[(de, 1)]), (-1, 1));
    NamedRelation {
        name: RelationName::Goncharov22,
        n: 3,
        alpha,
        expected: Expected::Constant {
            value: Complex64::new(3.0 * ZETA3, 0.0),
            modulus: LatticeModulus::new(pi_i_pow(3) / 2.0),
        },
    }
}

// ---- the 40-term Grassmannian relation ----

/// The 22 A-coordinate labels of Gr(3,6): 20 Plücker triples plus y₁, y₂.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Gr36Label {
    Plucker([u8; 3]),
    Y(u8),
}

impl Gr36Label {
    pub fn name(&self) -> String {
        match self {
            Gr36Label::Plucker([a, b, c]) => format!("a{a}{b}{c}"),
            Gr36Label::Y(k) => format!("y{k}"),
        }
    }

    fn map_indices(&self, f: impl Fn(u8) -> u8, y_swap: bool) -> Gr36Label {
        match self {
            Gr36Label::Plucker(t) => {
                let mut m = [f(t[0]), f(t[1]), f(t[2])];
                m.sort_unstable();
                Gr36Label::Plucker(m)
            }
            Gr36Label::Y(k) => Gr36Label::Y(if y_swap { 3 - k } else { *k }),
        }
    }

    /// σ = (1,2,3,4,5,6) on column labels; swaps y₁ and y₂.
    pub fn sigma(&self) -> Gr36Label {
        self.map_indices(|i| i % 6 + 1, true)
    }

    /// τ = (1,6)(2,5)(3,4); fixes y₁ and y₂.
    pub fn tau(&self) -> Gr36Label {
        self.map_indices(|i| 7 - i, false)
    }
}

/// All 22 labels, Plücker triples in lexicographic order, then y₁, y₂.
pub fn gr36_labels() -> Vec<Gr36Label> {
    let mut out = Vec::with_capacity(22);
    for a in 1..=6u8 {
        for b in (a + 1)..=6 {
            for c in (b + 1)..=6 {
                out.push(Gr36Label::Plucker([a, b, c]));
            }
        }
    }
    out.push(Gr36Label::Y(1));
    out.push(Gr36Label::Y(2));
    out
}

/// Registry with the standard Gr(3,6) label names.
pub fn gr36_registry() -> GeneratorRegistry {
    GeneratorRegistry::from_names(gr36_labels().into_iter().map(|l| l.name()))
}

fn label_index(labels: &[Gr36Label], l: Gr36Label) -> usize {
    labels.iter().position(|&x| x == l).expect("label in table")
}

type LabelMap = Box<dyn Fn(Gr36Label) -> Gr36Label>;

fn apply_label_map(labels: &[Gr36Label], f: &LabelMap, w: &IntVec) -> IntVec {
    ivec(w.iter().map(|(&i, &c)| (label_index(labels, f(labels[i])), c)))
}

fn pair_p(labels: &[Gr36Label], u: &[(Gr36Label, i64)], w: &[(Gr36Label, i64)]) -> SymbolicLogPair {
    let conv = |xs: &[(Gr36Label, i64)]| ivec(xs.iter().map(|&(l, c)| (label_index(labels, l), c)));
    SymbolicLogPair::new(conv(u), conv(w))
}

fn p3(a: u8, b: u8, c: u8) -> Gr36Label {
    Gr36Label::Plucker([a, b, c])
}

/// η̃: the 20-term half of the 40-term relation, from the X̂ pairs of four
/// base X-coordinates alternated over dihedral subgroups.
pub fn eta_tilde() -> RelationSum {
    let labels = gr36_labels();
    let registry = gr36_registry();
    // base X̂ pairs: (log X, log of the monomial equal to 1 + X)
    // X = a156 a236 a345 / (a136 a235 a456); 1+X = a356 y2 / (a136 a235 a456)
    let base3 = pair_p(
        &labels,
        &[
            (p3(1, 5, 6), 1),
            (p3(2, 3, 6), 1),
            (p3(3, 4, 5), 1),
            (p3(1, 3, 6), -1),
            (p3(2, 3, 5), -1),
            (p3(4, 5, 6), -1),
        ],
        &[
            (p3(3, 5, 6), 1),
            (Gr36Label::Y(2), 1),
            (p3(1, 3, 6), -1),
            (p3(2, 3, 5), -1),
            (p3(4, 5, 6), -1),
        ],
    );
    // X = a126 a145 / (a124 a156); 1+X = a125 a146 / (a124 a156)
    let base2 = pair_p(
        &labels,
        &[(p3(1, 2, 6), 1), (p3(1, 4, 5), 1), (p3(1, 2, 4), -1), (p3(1, 5, 6), -1)],
        &[(p3(1, 2, 5), 1), (p3(1, 4, 6), 1), (p3(1, 2, 4), -1), (p3(1, 5, 6), -1)],
    );
    // X = a136 a145 / (a134 a156); 1+X = a135 a146 / (a134 a156)
    let base2p = pair_p(
        &labels,
        &[(p3(1, 3, 6), 1), (p3(1, 4, 5), 1), (p3(1, 3, 4), -1), (p3(1, 5, 6), -1)],
        &[(p3(1, 3, 5), 1), (p3(1, 4, 6), 1), (p3(1, 3, 4), -1), (p3(1, 5, 6), -1)],
    );
    // X = a136 a145 a235 / (a123 a156 a345); 1+X = a135 y2 / (a123 a156 a345)
    let base5 = pair_p(
        &labels,
        &[
            (p3(1, 3, 6), 1),
            (p3(1, 4, 5), 1),
            (p3(2, 3, 5), 1),
            (p3(1, 2, 3), -1),
            (p3(1, 5, 6), -1),
            (p3(3, 4, 5), -1),
        ],
        &[
            (p3(1, 3, 5), 1),
            (Gr36Label::Y(2), 1),
            (p3(1, 2, 3), -1),
            (p3(1, 5, 6), -1),
            (p3(3, 4, 5), -1),
        ],
    );
    let sigma2: LabelMap = Box::new(|l: Gr36Label| l.sigma().sigma());
    let sigma4: LabelMap = Box::new(|l: Gr36Label| l.sigma().sigma().sigma().sigma());
    let tau: LabelMap = Box::new(|l: Gr36Label| l.tau());
    let s2tau: LabelMap = Box::new(|l: Gr36Label| l.tau().sigma().sigma());
    let s4tau: LabelMap = Box::new(|l: Gr36Label| l.tau().sigma().sigma().sigma().sigma());
    let ident: LabelMap = Box::new(|l: Gr36Label| l);
    // Alt over ⟨σ²,τ⟩ (order 6; sgn σ² = +1, sgn τ = −1)
    let group6: Vec<(&LabelMap, i64)> =
        vec![(&ident, 1), (&sigma2, 1), (&sigma4, 1), (&tau, -1), (&s2tau, -1), (&s4tau, -1)];
    let mut alpha = RelationSum::new(registry);
    for (f, sgn) in &group6 {
        for (p, c) in [(&base3, 1i64), (&base2, -1), (&base2p, 1)] {
            alpha.push(
                sgn * c,
                SymbolicLogPair::new(
                    apply_label_map(&labels, f, &p.u),
                    apply_label_map(&labels, f, &p.v),
                ),
                (-1, 1),
            );
        }
    }
    // − Alt over ⟨τ⟩ of base5
    for (f, sgn) in [(&ident, 1i64), (&tau, -1)] {
        alpha.push(
            -sgn,
            SymbolicLogPair::new(
                apply_label_map(&labels, f, &base5.u),
                apply_label_map(&labels, f, &base5.v),
            ),
            (-1, 1),
        );
    }
    alpha.canonicalize();
    alpha
}

fn r40() -> NamedRelation {
    let labels = gr36_labels();
    let eta = eta_tilde();
    let sigma: LabelMap = Box::new(|l: Gr36Label| l.sigma());
    let mut alpha = eta.clone();
    for t in &eta.terms {
        alpha.push(
            t.coef,
            SymbolicLogPair::new(
                apply_label_map(&labels, &sigma, &t.pair.u),
                apply_label_map(&labels, &sigma, &t.pair.v),
            ),
            (t.sign1, t.sign2),
        );
    }
    alpha.canonicalize();
    NamedRelation {
        name: RelationName::R40,
        n: 3,
        alpha,
        expected: Expected::Constant {
            value: Complex64::new(0.0, 0.0),
            modulus: LatticeModulus::new(pi_i_pow(3) / 2.0),
        },
    }
}
