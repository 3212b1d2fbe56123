//! Property suites for the library's structural invariants, driven by
//! seeded random data and checked against definition-level oracles.

mod common;

use std::cmp::Ordering;

use num_bigint::BigInt;

use modgb::cones::{decompose_normal_forms, SplitPolicy};
use modgb::groebner::{
    initial_module, normal_form, reduce, reduced_groebner_basis, GroebnerBasis,
};
use modgb::hilbert::{hf_enumerate, hp_and_regularity, hs_from_cones, hs_regular_sequence};
use modgb::module::{FreeModuleSpec, ModuleMonomial};
use modgb::monomial::Monomial;
use modgb::rng::Rng;
use modgb::verify::{random_corpus, CorpusOptions};
use modgb::{FieldSpec, MonomialOrder, PositionStrategy, RingOrder};

fn random_mm(rng: &mut Rng, nvars: usize, rank: usize, dmax: u64) -> ModuleMonomial {
    let deg = rng.below(dmax + 1);
    let mut exps = vec![0u32; nvars];
    for _ in 0..deg {
        exps[rng.below(nvars as u64) as usize] += 1;
    }
    ModuleMonomial {
        mono: Monomial::from_exps(exps),
        pos: rng.below(rank as u64) as usize,
    }
}

fn all_orders(rank: usize) -> Vec<MonomialOrder> {
    let mut out = Vec::new();
    for ring in [RingOrder::Lex, RingOrder::GrLex, RingOrder::GrevLex] {
        for strategy in [PositionStrategy::Pot, PositionStrategy::Top] {
            out.push(MonomialOrder::new(ring, strategy, rank));
        }
    }
    out
}

#[test]
fn order_axioms_on_random_triples() {
    let spec = FreeModuleSpec::new(
        vec!["x".into(), "y".into(), "z".into()],
        vec![("e1".into(), 0), ("e2".into(), 1)],
        FieldSpec::Rationals,
    )
    .unwrap();
    let mut rng = Rng::new(31);
    for order in all_orders(2) {
        for _ in 0..400 {
            let a = random_mm(&mut rng, 3, 2, 5);
            let b = random_mm(&mut rng, 3, 2, 5);
            let c = random_mm(&mut rng, 3, 2, 5);
            let ab = order.compare(&spec, &a, &b).unwrap();
            let ba = order.compare(&spec, &b, &a).unwrap();
            // antisymmetry and totality
            assert_eq!(ab, ba.reverse());
            assert_eq!(ab == Ordering::Equal, a == b);
            // transitivity
            let bc = order.compare(&spec, &b, &c).unwrap();
            let ac = order.compare(&spec, &a, &c).unwrap();
            if ab == Ordering::Less && bc == Ordering::Less {
                assert_eq!(ac, Ordering::Less);
            }
            // multiplicative compatibility
            let w = random_mm(&mut rng, 3, 2, 4).mono;
            let aw = a.mul_mono(&w);
            let bw = b.mul_mono(&w);
            assert_eq!(order.compare(&spec, &aw, &bw).unwrap(), ab);
            // 1*e_j is minimal within its position
            let unit = ModuleMonomial::basis(3, a.pos);
            assert_ne!(
                order.compare(&spec, &unit, &a).unwrap(),
                Ordering::Greater,
                "basis monomial is minimal in its position"
            );
        }
    }
}

#[test]
fn grevlex_matches_key_oracle() {
    // independent characterization: grevlex compares (total degree,
    // then the reversed negated exponent vector) lexicographically
    let spec = FreeModuleSpec::new(
        vec!["x".into(), "y".into(), "z".into()],
        vec![("e1".into(), 0)],
        FieldSpec::Rationals,
    )
    .unwrap();
    let order = MonomialOrder::new(RingOrder::GrevLex, PositionStrategy::Pot, 1);
    let key = |m: &Monomial| {
        let mut k: Vec<i64> = vec![m.total_degree() as i64];
        for i in (0..3).rev() {
            k.push(-(m.exp(i) as i64));
        }
        k
    };
    let mut rng = Rng::new(32);
    for _ in 0..1000 {
        let a = random_mm(&mut rng, 3, 1, 6);
        let b = random_mm(&mut rng, 3, 1, 6);
        assert_eq!(
            order.compare(&spec, &a, &b).unwrap(),
            key(&a.mono).cmp(&key(&b.mono))
        );
    }
}

#[test]
fn canonical_form_idempotent_and_degree_shifts() {
    let corpus = random_corpus(&CorpusOptions {
        seed: 21,
        count: 20,
        field: FieldSpec::Rationals,
        ..Default::default()
    });
    let mut rng = Rng::new(22);
    for (_, problem) in &corpus {
        let fm = &problem.module;
        for g in &problem.gens {
            // renormalizing is the identity
            let again = fm.element_from_terms(g.terms().to_vec());
            assert_eq!(&again, g);
            // deg(x^a f) = |a| + deg f
            let a = random_mm(&mut rng, fm.spec.nvars(), 1, 3).mono;
            let shifted = fm.mono_mul(&a, g);
            assert_eq!(
                fm.degree(&shifted),
                fm.degree(g).map(|d| d + a.total_degree())
            );
        }
    }
}

#[test]
fn normal_form_unique_and_reduce_idempotent() {
    let corpus = random_corpus(&CorpusOptions {
        seed: 23,
        count: 15,
        field: FieldSpec::Prime(32003),
        graded_only: false,
        ..Default::default()
    });
    let mut rng = Rng::new(24);
    for (_, problem) in &corpus {
        let fm = &problem.module;
        let gb = reduced_groebner_basis(fm, &problem.gens);
        if gb.elements.is_empty() {
            continue;
        }
        // reduce is idempotent
        let again = reduce(fm, &gb);
        assert_eq!(again.elements, gb.elements);
        // reduced basis independent of generator order
        let mut shuffled = problem.gens.clone();
        for i in (1..shuffled.len()).rev() {
            let j = rng.below(i as u64 + 1) as usize;
            shuffled.swap(i, j);
        }
        let gb2 = reduced_groebner_basis(fm, &shuffled);
        assert_eq!(gb.elements, gb2.elements);
        // normal form of a random element is invariant under permuting G
        let f = fm.element_from_terms(
            (0..4)
                .map(|_| {
                    (
                        fm.spec.field().from_integer(&BigInt::from(
                            1 + rng.below(100) as i64,
                        )),
                        random_mm(&mut rng, fm.spec.nvars(), fm.spec.rank(), 4),
                    )
                })
                .collect(),
        );
        let nf1 = normal_form(fm, &f, &gb.elements);
        let mut perm = gb.elements.clone();
        perm.reverse();
        let nf2 = normal_form(fm, &f, &perm);
        assert_eq!(nf1, nf2);
        // f - nf(f) reduces to zero, and nf is irreducible
        assert!(normal_form(fm, &fm.sub(&f, &nf1), &gb.elements).is_zero());
        for (_, u) in nf1.terms() {
            assert!(gb
                .elements
                .iter()
                .all(|g| !g.leading_monomial().unwrap().divides(u)));
        }
    }
}

#[test]
fn macaulay_count_matches_rank_oracle() {
    // dimension of the degree-z component of F/M by linear algebra equals
    // the count of standard monomials of degree z
    let corpus = random_corpus(&CorpusOptions {
        seed: 25,
        count: 12,
        nmax: 3,
        mmax: 2,
        dmax: 3,
        field: FieldSpec::Rationals,
        graded_only: true,
    });
    for (name, problem) in &corpus {
        let fm = &problem.module;
        let gb = reduced_groebner_basis(fm, &problem.gens);
        let init = initial_module(fm, &gb);
        for z in 0..=6u64 {
            let total = common::module_monomials_of_degree(&fm.spec, z).len();
            let mdim = common::graded_component_dim(fm, &problem.gens, z);
            let standard = hf_enumerate(&fm.spec, &init, z) as usize;
            assert_eq!(
                total - mdim,
                standard,
                "{name}: Macaulay count at degree {z}"
            );
        }
    }
}

#[test]
fn regular_sequence_series_agrees_with_split_route() {
    // the closed regular-sequence series equals the cone-decomposition
    // series of the pure-power module with the same degrees
    for (n, degs, basis) in [
        (2usize, vec![2u64], vec![0u64]),
        (3, vec![2, 2], vec![0, 1]),
        (3, vec![1, 3], vec![0]),
        (4, vec![2], vec![0, 0]),
    ] {
        let m = basis.len();
        let vars = (0..n).map(|i| format!("x{}", i + 1)).collect();
        let spec = FreeModuleSpec::new(
            vars,
            basis
                .iter()
                .enumerate()
                .map(|(j, &d)| (format!("e{}", j + 1), d))
                .collect(),
            FieldSpec::Rationals,
        )
        .unwrap();
        let gens = (0..m).flat_map(|pos| {
            degs.iter().enumerate().map(move |(i, &d)| ModuleMonomial {
                mono: Monomial::var_pow(n, i, d as u32),
                pos,
            })
        });
        let msub = modgb::groebner::MonomialSubmodule::from_generators(m, gens);
        let q = decompose_normal_forms(&spec, &msub, SplitPolicy::AscendingVars).unwrap();
        let from_cones = hs_from_cones(&spec, &q);
        let (closed, _) = hs_regular_sequence(&degs, &basis, n).unwrap();
        assert_eq!(from_cones, closed, "n={n} degs={degs:?} basis={basis:?}");
    }
}

#[test]
fn hp_boundary_behaviour() {
    // HP agrees with the series from the regularity on and disagrees just
    // below it when the regularity is positive
    let mut rng = Rng::new(26);
    for _ in 0..25 {
        let n = 1 + rng.below(4) as usize;
        let k = rng.below(n as u64 + 1) as usize;
        let degs: Vec<u64> = (0..k).map(|_| 1 + rng.below(3)).collect();
        let basis: Vec<u64> = (0..1 + rng.below(2)).map(|_| rng.below(2)).collect();
        let (hs, _) = hs_regular_sequence(&degs, &basis, n).unwrap();
        if hs.is_zero_series() {
            continue;
        }
        let (hp, reg) = hp_and_regularity(&hs);
        for z in reg..=reg + 10 {
            assert_eq!(hp.evaluate(z as i64), hs.hf(z));
        }
        if reg > 0 {
            assert_ne!(hp.evaluate(reg as i64 - 1), hs.hf(reg - 1));
        }
    }
}

#[test]
fn printer_parser_roundtrip_on_random_problems() {
    for field in [FieldSpec::Rationals, FieldSpec::Prime(32003)] {
        let corpus = random_corpus(&CorpusOptions {
            seed: 27,
            count: 20,
            field,
            ..Default::default()
        });
        for (_, problem) in &corpus {
            let text = modgb::print(problem);
            let back = modgb::parse(&text).unwrap();
            assert_eq!(back.module.spec, problem.module.spec);
            assert_eq!(back.module.order, problem.module.order);
            assert_eq!(back.gens, problem.gens);
            // canonical text is a fixed point of print ∘ parse
            assert_eq!(modgb::print(&back), text);
        }
    }
}

#[test]
fn nf_of_generators_is_zero_over_buchberger_output() {
    let corpus = random_corpus(&CorpusOptions {
        seed: 28,
        count: 15,
        field: FieldSpec::Prime(32003),
        ..Default::default()
    });
    for (_, problem) in &corpus {
        let fm = &problem.module;
        let gb: GroebnerBasis = modgb::groebner::buchberger(fm, &problem.gens);
        for g in &problem.gens {
            assert!(normal_form(fm, g, &gb.elements).is_zero());
        }
        assert!(modgb::groebner::is_groebner_basis(fm, &gb.elements));
    }
}

#[test]
fn initial_module_generated_below_decomposition_degree() {
    // per position, every minimal generator of in(M) has degree at most
    // max(1 + deg(Q_j), deg(e_j))
    let corpus = random_corpus(&CorpusOptions {
        seed: 30,
        count: 15,
        field: FieldSpec::Prime(32003),
        ..Default::default()
    });
    for (name, problem) in &corpus {
        let fm = &problem.module;
        let gb = reduced_groebner_basis(fm, &problem.gens);
        let init = initial_module(fm, &gb);
        let n = fm.spec.nvars();
        let all: Vec<usize> = (0..n).collect();
        for pos in 0..fm.spec.rank() {
            if init.is_full_at(pos) || init.generators_at(pos).is_empty() {
                continue;
            }
            let e = ModuleMonomial::basis(n, pos);
            let (_, q) = modgb::cones::split(
                &e,
                &all,
                &init,
                init.generators_at(pos),
                SplitPolicy::AscendingVars,
            );
            let shift = fm.spec.basis_degree(pos);
            let deg_q = q.iter().map(|c| c.degree(&fm.spec)).max().unwrap();
            let bound = shift.max(1 + deg_q);
            for g in init.generators_at(pos) {
                assert!(
                    g.total_degree() + shift <= bound,
                    "{name}: generator degree exceeds 1 + deg(Q) at position {pos}"
                );
            }
        }
    }
}

#[test]
fn bounds_monotone_in_fitting_degrees() {
    use modgb::bounds::{bound_graded_fitting, bound_nongraded_fitting, BoundInputs};
    let inputs = |d1: u64, d2: u64, dmax: u64| BoundInputs {
        n: 3,
        m: 2,
        r: 1,
        dmax,
        gen_degrees: vec![dmax, dmax],
        l: 0,
        basis_degree_sum: 0,
        fitting_degrees: Some(vec![d1.max(d2), d1.min(d2)]),
    };
    for d1 in 1..=4u64 {
        for d2 in 1..=d1 {
            for dmax in 2..=4u64 {
                let base_g = bound_graded_fitting(&inputs(d1, d2, dmax)).unwrap().unwrap();
                let base_n = bound_nongraded_fitting(&inputs(d1, d2, dmax)).unwrap().unwrap();
                let up_g = bound_graded_fitting(&inputs(d1 + 1, d2, dmax)).unwrap().unwrap();
                let up_n = bound_nongraded_fitting(&inputs(d1, d2 + 1, dmax)).unwrap().unwrap();
                assert!(base_g <= up_g);
                assert!(base_n <= up_n);
                let up_d = bound_graded_fitting(&inputs(d1, d2, dmax + 1)).unwrap().unwrap();
                assert!(base_g <= up_d);
            }
        }
    }
}

#[test]
fn split_decomposition_covers_only_complement() {
    // relativity: no cone of the normal-form decomposition meets in(M)
    let corpus = random_corpus(&CorpusOptions {
        seed: 29,
        count: 10,
        field: FieldSpec::Prime(32003),
        ..Default::default()
    });
    for (_, problem) in &corpus {
        let fm = &problem.module;
        let gb = reduced_groebner_basis(fm, &problem.gens);
        let init = initial_module(fm, &gb);
        let q = decompose_normal_forms(&fm.spec, &init, SplitPolicy::AscendingVars).unwrap();
        for c in &q.cones {
            assert!(!init.contains(&c.pivot));
        }
        let top = q.degree(&fm.spec).unwrap_or(0) + 3;
        for z in 0..=top {
            for u in common::module_monomials_of_degree(&fm.spec, z) {
                let hits = q.cones.iter().filter(|c| c.contains(&u)).count();
                assert_eq!(hits, usize::from(!init.contains(&u)));
            }
        }
    }
}
