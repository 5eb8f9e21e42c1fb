//! Acceptance suite: every criterion runs at its stated tolerance and prints
//! one pass/fail line. Criterion 8 (Gr(3,7)) is opt-in via `--ignored`.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use std::time::Instant;

use polybloch::discovery::{
    discover_kernel, int_rank, is_nonalt_instance, r40_embedding_instances, relations_match,
    spans_contained,
};
use polybloch::exact::{bernoulli, binomial, rat, rat_int, rational_gcd, Rational};
use polybloch::polylog::{
    comparison_c, comparison_d, comparison_residual, cut_jump, delta_rational, gluing_shift,
    kappa, lhat_precursor, two_pi_i_pow_over_fact, ExtendedPoint, Interval, Side,
};
use polybloch::quiver::{
    a2_quiver, class_generator_registry, grassmannian_seed, mutation_class, x_log_pair,
};
use polybloch::realize::{flip_invariance_check, run_scenario, sample_realization, Scenario};
use polybloch::regulator::{
    boundary_squared_is_zero, chain_l3_g5_boundary, consistency_checks, f5_vs_g5,
    lhat3_f5_boundary, r3_lemma_check, GenericConfig,
};
use polybloch::symbolic::{
    build_named, ivec, is_differential_relation, w_form, w_pair, GeneratorRegistry, RelationName,
    RelationSum, SymbolicLogPair,
};

fn outcome(criterion: &str, pass: bool, detail: &str) -> bool {
    println!("{} criterion {}: {}", if pass { "PASS" } else { "FAIL" }, criterion, detail);
    pass
}

#[test]
fn criterion_1_quiver_counts() {
    let t0 = Instant::now();
    let a2 = mutation_class(&a2_quiver(), 100).unwrap();
    let (q25, _) = grassmannian_seed(2, 3);
    let c25 = mutation_class(&q25, 100).unwrap();
    let (q36, _) = grassmannian_seed(3, 3);
    let c36 = mutation_class(&q36, 1000).unwrap();
    let mut registry = c36.registry.clone();
    let mut xs = std::collections::BTreeSet::new();
    for t in &c36.triples {
        let (x, _) = x_log_pair(&c36.seeds[t.seed_index], t.vertex, &mut registry).unwrap();
        xs.insert(x);
    }
    // inversion/dihedral orbit sizes on the 52 inversion classes
    let labels = polybloch::symbolic::gr36_labels();
    let names = polybloch::quiver::identify_gr36_labels(&c36).unwrap();
    let to_label = |vec: &polybloch::symbolic::IntVec| -> BTreeMap<String, i64> {
        vec.iter().map(|(&i, &c)| (names[i].clone(), c)).collect()
    };
    let act = |f: &dyn Fn(polybloch::symbolic::Gr36Label) -> polybloch::symbolic::Gr36Label,
               v: &BTreeMap<String, i64>| {
        v.iter()
            .map(|(name, &c)| {
                let l = labels.iter().find(|l| l.name() == *name).unwrap();
                (f(*l).name(), c)
            })
            .collect::<BTreeMap<String, i64>>()
    };
    let inv = |v: &BTreeMap<String, i64>| {
        v.iter().map(|(k, &c)| (k.clone(), -c)).collect::<BTreeMap<String, i64>>()
    };
    let mut orbits: Vec<usize> = Vec::new();
    let mut seen: std::collections::BTreeSet<BTreeMap<String, i64>> = Default::default();
    let mut classes: std::collections::BTreeSet<BTreeMap<String, i64>> = Default::default();
    for x in &xs {
        let v = to_label(x);
        classes.insert(std::cmp::min(v.clone(), inv(&v)));
    }
    for x in &xs {
        let start = to_label(x);
        let key = std::cmp::min(start.clone(), inv(&start));
        if seen.contains(&key) {
            continue;
        }
        // orbit under sigma, tau on inversion classes
        let mut orbit = std::collections::BTreeSet::new();
        let mut frontier = vec![key.clone()];
        while let Some(v) = frontier.pop() {
            if !orbit.insert(v.clone()) {
                continue;
            }
            for f in [
                &(|l: polybloch::symbolic::Gr36Label| l.sigma())
                    as &dyn Fn(polybloch::symbolic::Gr36Label) -> polybloch::symbolic::Gr36Label,
                &(|l: polybloch::symbolic::Gr36Label| l.tau()),
            ] {
                let w = act(f, &v);
                frontier.push(std::cmp::min(w.clone(), inv(&w)));
            }
        }
        for v in &orbit {
            seen.insert(v.clone());
        }
        orbits.push(orbit.len());
    }
    orbits.sort_unstable();
    let elapsed = t0.elapsed();
    let pass = a2.seeds.len() == 5
        && c25.seeds.len() == 5
        && c36.seeds.len() == 50
        && c36.registry.len() == 22
        && xs.len() == 104
        && orbits == vec![4, 6, 6, 12, 12, 12]
        && elapsed.as_secs() < 10;
    assert!(outcome(
        "1",
        pass,
        &format!(
            "A2 {} seeds, Gr(2,5) {} seeds, Gr(3,6) {} seeds / {} A-coords / {} X-coords, \
             orbit sizes {:?}, {:.2?}",
            a2.seeds.len(),
            c25.seeds.len(),
            c36.seeds.len(),
            c36.registry.len(),
            xs.len(),
            orbits,
            elapsed
        )
    ));
}

#[test]
fn criterion_2_discovery() {
    let t0 = Instant::now();
    let (q25, _) = grassmannian_seed(2, 3);
    let c25 = mutation_class(&q25, 100).unwrap();
    let r25 = discover_kernel(&c25, 2, class_generator_registry(&c25)).unwrap();
    let gr25_ok = r25.basis.dimension() == 5
        && r25.relations.len() == 1
        && r25.relations[0].num_terms() == 5
        && is_nonalt_instance(&r25.relations[0]);
    let (q36, _) = grassmannian_seed(3, 3);
    let c36 = mutation_class(&q36, 1000).unwrap();
    let r36 = discover_kernel(&c36, 3, class_generator_registry(&c36)).unwrap();
    let named = build_named(RelationName::R40);
    let gr36_ok = r36.basis.dimension() == 52
        && r36.relations.len() == 1
        && r36.relations[0].num_terms() == 40
        && relations_match(3, &r36.relations[0], &named.alpha);
    let elapsed = t0.elapsed();
    let pass = gr25_ok && gr36_ok && elapsed.as_secs() < 60;
    assert!(outcome(
        "2",
        pass,
        &format!(
            "Gr(2,5): dim {} kernel {} nonalt {}; Gr(3,6): dim {} kernel {} r40-match {}; {:.2?}",
            r25.basis.dimension(),
            r25.relations.len(),
            gr25_ok,
            r36.basis.dimension(),
            r36.relations.len(),
            gr36_ok,
            elapsed
        )
    ));
}

#[test]
fn criterion_3_named_constants() {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut pass = true;
    let mut worst: (String, f64) = (String::new(), 0.0);
    for scenario in Scenario::ALL {
        if scenario == Scenario::LiftedFtConstancy {
            continue; // covered by criterion 6's property block
        }
        let report = run_scenario(scenario, 10, &mut rng).unwrap();
        pass &= report.pass && report.max_residual < 1e-7;
        if report.max_residual > worst.1 {
            worst = (report.scenario.clone(), report.max_residual);
        }
    }
    assert!(outcome(
        "3",
        pass,
        &format!("7 named constants at 10 realizations each; worst {} = {:.3e}", worst.0, worst.1)
    ));
}

#[test]
fn criterion_4_comparison_theorem() {
    let t0 = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst = 0.0f64;
    for n in 2..=5 {
        for &(s1, s2) in &[(1i8, 1i8), (1, -1), (-1, 1), (-1, -1)] {
            for _ in 0..50 {
                let z = loop {
                    let z = Complex64::new(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
                    if z.norm() > 0.1
                        && (z - Complex64::new(1.0, 0.0)).norm() > 0.1
                        && z.im.abs() > 0.05
                    {
                        break z;
                    }
                };
                let pt = ExtendedPoint::new(
                    s1,
                    s2,
                    z,
                    Side::None,
                    rng.gen_range(-2..3),
                    rng.gen_range(-2..3),
                )
                .unwrap();
                worst = worst.max(comparison_residual(n, &pt).unwrap());
            }
        }
    }
    // closed forms n = 2, 3, 4 coefficient-for-coefficient
    let closed = comparison_d(0, 0, 2) == rat(-1, 2)
        && comparison_c(0, 1, 3) == rat_int(1)
        && comparison_d(0, 1, 3) == rat(1, 6)
        && comparison_c(0, 1, 4) == rat_int(-1)
        && comparison_c(0, 2, 4) == rat(1, 2)
        && comparison_c(2, 0, 4) == rat(1, 6)
        && comparison_d(0, 2, 4) == rat(1, 24)
        && comparison_d(2, 0, 4) == rat(1, 24);
    let elapsed = t0.elapsed();
    let pass = worst < 1e-8 && closed && elapsed.as_secs() < 10;
    assert!(outcome(
        "4",
        pass,
        &format!(
            "residual < 1e-8 at 50 pts x 4 components x n=2..5 (worst {worst:.3e}), \
             closed forms {closed}, {elapsed:.2?}"
        )
    ));
}

#[test]
fn criterion_5_exact_identities() {
    // Bernoulli recurrence r ≤ 40
    let mut bern_ok = true;
    for r in 1..=40u64 {
        let mut acc = Rational::from_integer(0.into());
        for j in 0..=r {
            acc += Rational::from_integer(binomial(r + 1, j)) * bernoulli(j as u32);
        }
        bern_ok &= acc == Rational::from_integer(0.into());
    }
    // Beta lemma identities k ≤ 20 / odd l ≤ 21
    let beta = |r: u32| {
        bernoulli(r) * rat_int(2).pow(r as i32)
            / Rational::from_integer((1..=r as u64).map(num_bigint::BigInt::from).product::<num_bigint::BigInt>().max(1.into()))
    };
    let c = |i: u32| (rat_int(1) - rat(2, 1).pow(1 - i as i32)) * beta(i);
    let fact = |n: u32| {
        Rational::from_integer(
            (1..=n as u64).map(num_bigint::BigInt::from).product::<num_bigint::BigInt>().max(1.into()),
        )
    };
    let mut beta_ok = true;
    for k in 0..=20u32 {
        let mut acc = Rational::from_integer(0.into());
        for i in 0..=k {
            acc += c(i) / fact(k - i);
        }
        beta_ok &= acc == rat_int(if k % 2 == 0 { -1 } else { 1 }) * beta(k);
    }
    for l in (3..=21u32).step_by(2) {
        let mut acc = Rational::from_integer(0.into());
        for i in 0..l {
            acc += rat_int((l - 1 - i) as i64) / fact(l - i) * c(i);
        }
        beta_ok &= acc == -beta(l - 1);
    }
    // Binom lemma s, l ≤ 15
    let mut binom_ok = true;
    for s in 1..=15u64 {
        for l in 1..=15u64 {
            let mut acc = Rational::from_integer(0.into());
            for j in 0..=l {
                acc += rat_int(if j % 2 == 0 { 1 } else { -1 })
                    * Rational::from_integer(binomial(l, j))
                    / rat_int((s + l - j) as i64);
            }
            binom_ok &= acc
                == rat_int(if l % 2 == 0 { 1 } else { -1 })
                    / (rat_int(s as i64) * Rational::from_integer(binomial(l + s, l)));
        }
    }
    // κ_n gcd n ≤ 10
    let mut kappa_ok = true;
    for n in 2..=10 {
        let vals: Vec<Rational> =
            (-20..=20).map(|p| delta_rational(&(rat_int(p) + rat(1, 2)), n)).collect();
        kappa_ok &= rational_gcd(&vals) == kappa(n);
    }
    // Δ-table vs numeric cut limits, n ≤ 6, p,q ∈ [−3,3]
    let mut delta_ok = true;
    let mut worst = 0.0f64;
    let cases = [
        (Interval::NegAxis, -2.0),
        (Interval::UnitInterval, 0.4),
        (Interval::OneInf, 3.0),
    ];
    for n in 2..=6 {
        for &(s1, s2) in &[(1i8, 1i8), (1, -1), (-1, 1), (-1, -1)] {
            for p in -3..=3i64 {
                for q in -3..=3i64 {
                    for &(iv, x) in &cases {
                        let (dp, dq) = gluing_shift(iv, s1, s2);
                        let above =
                            ExtendedPoint::new(s1, s2, Complex64::new(x, 0.0), Side::Above, p, q)
                                .unwrap();
                        let below = ExtendedPoint::new(
                            s1,
                            s2,
                            Complex64::new(x, 0.0),
                            Side::Below,
                            p + dp,
                            q + dq,
                        )
                        .unwrap();
                        let diff = lhat_precursor(n, &above).unwrap()
                            - lhat_precursor(n, &below).unwrap();
                        use num_traits::ToPrimitive;
                        let expect = cut_jump(n, iv, s1, s2, p, q).to_f64().unwrap()
                            * two_pi_i_pow_over_fact(n);
                        let resid = (diff - expect).norm() / expect.norm().max(1.0);
                        worst = worst.max(resid);
                        delta_ok &= resid < 1e-7;
                    }
                }
            }
        }
    }
    let pass = bern_ok && beta_ok && binom_ok && kappa_ok && delta_ok;
    assert!(outcome(
        "5",
        pass,
        &format!(
            "bernoulli {bern_ok}, beta lemma {beta_ok}, binom lemma {binom_ok}, \
             kappa gcd {kappa_ok}, delta vs limits {delta_ok} (worst {worst:.3e})"
        )
    ));
}

#[test]
fn criterion_6_property_suites() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    // w_n antisymmetry under (u,v) ↦ (−u, v−u)
    let mut anti_ok = true;
    for n in 2..=6 {
        for _ in 0..20 {
            let u = ivec((0..4).map(|i| (i, rng.gen_range(-3..4))));
            let v = ivec((0..4).map(|i| (i, rng.gen_range(-3..4))));
            let p = SymbolicLogPair::new(u, v);
            let w1 = w_pair(n, &p.invert());
            let w2 = w_pair(n, &p);
            let scale: num_bigint::BigInt = (if n % 2 == 0 { -1 } else { 1 }).into();
            anti_ok &= w1.coeffs.len() == w2.coeffs.len()
                && w1.coeffs.iter().all(|(k, c)| w2.coeffs.get(k).map(|d| d * &scale) == Some(c.clone()));
        }
    }
    // DiffRelChar three-way equivalence on a 100-element corpus, n = 3, 4, 5
    let mut char_ok = true;
    for n in [3, 4, 5] {
        let mut kernel_hits = 0;
        for trial in 0..100 {
            let alpha = corpus_alpha(n, trial, &mut rng);
            let direct = w_form(n, &alpha).is_zero();
            // debug mode asserts the projection and symmetric-power routes agree
            char_ok &= is_differential_relation(n, &alpha, true) == direct;
            if direct {
                kernel_hits += 1;
            }
        }
        char_ok &= kernel_hits > 10;
    }
    // Lemma (LhatDifference) at 50 random triples per n ≤ 6 is asserted in
    // the polylog unit suite; flip invariance for the 22- and 40-term
    // relations over every generator:
    let (alpha22, r22) = sample_realization(RelationName::Goncharov22, &mut rng).unwrap();
    let dev22 = flip_invariance_check(3, &alpha22, &r22).unwrap();
    let (alpha40, r40) = sample_realization(RelationName::R40, &mut rng).unwrap();
    let dev40 = flip_invariance_check(3, &alpha40, &r40).unwrap();
    let flip_ok = dev22 < 1e-8 && dev40 < 1e-8;
    // constancy of ℒ̂₂ along a lifted five-term family
    let constancy = run_scenario(Scenario::LiftedFtConstancy, 5, &mut rng).unwrap();
    let pass = anti_ok && char_ok && flip_ok && constancy.pass;
    assert!(outcome(
        "6",
        pass,
        &format!(
            "antisymmetry {anti_ok}, three-way characterization {char_ok}, \
             flip deviation 22-term {dev22:.3e} / 40-term {dev40:.3e}, \
             family constancy {:.3e}",
            constancy.max_residual
        )
    ));
}

fn corpus_alpha(n: i32, trial: usize, rng: &mut ChaCha8Rng) -> RelationSum {
    let registry = GeneratorRegistry::from_names((1..=5).map(|i| format!("a{i}")));
    match trial % 4 {
        0 => {
            // inversion relation, possibly rescaled
            let mut a = RelationSum::new(registry);
            let scale = rng.gen_range(1..4);
            a.push(scale, SymbolicLogPair::new(ivec([(0, 1)]), ivec([(1, 1)])), (-1, 1));
            let sign = if n % 2 == 0 { 1 } else { -1 };
            a.push(
                sign * scale,
                SymbolicLogPair::new(ivec([(0, -1)]), ivec([(0, -1), (1, 1)])),
                (-1, 1),
            );
            a
        }
        1 => {
            // a named relation of the right weight, perturbed half the time
            let mut a = match n {
                3 => build_named(RelationName::ThreeTerm).alpha,
                4 => build_named(RelationName::BadL4).alpha,
                _ => {
                    let mut a = RelationSum::new(registry);
                    a.push(1, SymbolicLogPair::new(ivec([(0, 1)]), ivec([(1, 1)])), (-1, 1));
                    a.push(
                        -1,
                        SymbolicLogPair::new(ivec([(0, -1)]), ivec([(0, -1), (1, 1)])),
                        (-1, 1),
                    );
                    a
                }
            };
            if rng.gen_bool(0.5) && !a.terms.is_empty() {
                a.terms[0].coef += 1;
            }
            a
        }
        _ => {
            let mut a = RelationSum::new(registry);
            for _ in 0..rng.gen_range(1..5) {
                let u = ivec((0..4).map(|i| (i, rng.gen_range(-2..3))));
                let v = ivec((0..4).map(|i| (i, rng.gen_range(-2..3))));
                a.push(rng.gen_range(-2..3), SymbolicLogPair::new(u, v), (1, 1));
            }
            a.canonicalize();
            a
        }
    }
}

#[test]
fn criterion_7_regulator() {
    let t0 = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    // ∂∂ = 0 for k = 6, 7
    let mut dd_ok = true;
    for k in [6, 7] {
        let c = GenericConfig::random(k, &mut rng);
        dd_ok &= boundary_squared_is_zero(&c);
    }
    // L₂ on R₁, R₂ and the f₅/g₅ multiset match at 10 random configs
    let mut l2_ok = true;
    let mut multiset_ok = true;
    for _ in 0..10 {
        let c = GenericConfig::random(6, &mut rng);
        let rep = consistency_checks(&c).unwrap();
        l2_ok &= rep.l2_r1 < 1e-8 && rep.l2_r2 < 1e-8;
        multiset_ok &= rep.multiset_residual_r1 == 0 && rep.multiset_residual_r2 == 0;
        let (_, residual) = f5_vs_g5(&c).unwrap();
        multiset_ok &= residual == 0;
    }
    // L₂ on R_{1,i}, R_{2,i}
    let (r1, r2) = r3_lemma_check([
        Complex64::new(2.0, 0.0),
        Complex64::new(3.0, 0.0),
        Complex64::new(5.0, 0.0),
    ])
    .unwrap();
    l2_ok &= r1 < 1e-8 && r2 < 1e-8;
    // ℒ̂₃ ∘ f₅ ∘ ∂ ≡ 0 mod (πi)³/2 at 3 random 3×7 configs
    let mut f5del_ok = true;
    let mut worst = 0.0f64;
    for _ in 0..3 {
        let c7 = GenericConfig::random(7, &mut rng);
        let resid = lhat3_f5_boundary(&c7, &mut rng).unwrap();
        worst = worst.max(resid);
        f5del_ok &= resid < 1e-7;
        let chain = chain_l3_g5_boundary(&c7).unwrap();
        f5del_ok &= chain < 1e-7;
    }
    let elapsed = t0.elapsed();
    let pass = dd_ok && l2_ok && multiset_ok && f5del_ok && elapsed.as_secs() < 120;
    assert!(outcome(
        "7",
        pass,
        &format!(
            "dd {dd_ok}, L2 vanishing {l2_ok}, multiset matches {multiset_ok}, \
             f5-boundary residual {worst:.3e}, {elapsed:.2?}"
        )
    ));
}

#[test]
#[ignore = "extended: Gr(3,7) enumeration and kernel take minutes"]
fn criterion_8_gr37_extended() {
    let (q, _) = grassmannian_seed(3, 4);
    let class = mutation_class(&q, 10_000).unwrap();
    let result = discover_kernel(&class, 3, class_generator_registry(&class)).unwrap();
    let instances = r40_embedding_instances(&class, &result.basis, 3000).unwrap();
    let rank = int_rank(&instances);
    let spans = spans_contained(&result.kernel_vectors, &instances)
        && spans_contained(&instances, &result.kernel_vectors);
    let pass = result.relations.len() == 22 && rank == 22 && spans;
    assert!(outcome(
        "8",
        pass,
        &format!(
            "Gr(3,7): {} seeds, kernel dim {}, {} r40 instances of rank {rank}, spans kernel {spans}",
            class.seeds.len(),
            result.relations.len(),
            instances.len()
        )
    ));
}
