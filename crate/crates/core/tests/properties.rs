mod common;

use std::collections::BTreeSet;

use marked_polytopes::corpus::{pull_back, random_marked_poset, random_natural_labeling, random_unimodular_map, CorpusParams};
use marked_polytopes::ehrhart::{
    canonical_labeling, ehrhart_by_counting, ehrhart_formula_marked_order, ehrhart_formula_with_labeling,
};
use marked_polytopes::marked::{
    build_chain_hrep, build_chain_order_hrep, build_order_hrep, decomposed_membership, face_partition_of_point,
    is_face_partition, order_facets_combinatorial, order_vertices_combinatorial,
};
use marked_polytopes::polytope::{count_lattice_points, enumerate_vertices, irredundant};
use marked_polytopes::poset::linear_extensions;
use marked_polytopes::two_level::{is_two_level_direct, order_two_level_criterion};
use marked_polytopes::{rat, ChainOrderPartition, HRepresentation, LinearInequality, MarkedPoset, Poset, Rational};
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn small(seed: u64, max_unmarked: usize) -> MarkedPoset {
    let params = CorpusParams { max_unmarked, ..CorpusParams::default() };
    random_marked_poset(&mut ChaCha8Rng::seed_from_u64(seed), &params).unwrap()
}

fn random_poset(seed: u64, n: usize) -> Poset {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ids: Vec<String> = (0..n).map(|i| format!("e{i}")).collect();
    let mut rels = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(0.35) {
                rels.push((ids[i].clone(), ids[j].clone()));
            }
        }
    }
    Poset::from_relations(&ids, &rels).unwrap()
}

fn vertex_set(h: &HRepresentation) -> BTreeSet<Vec<Rational>> {
    enumerate_vertices(h).unwrap().vertices().iter().cloned().collect()
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

fn disjoint_union(a: &MarkedPoset, b: &MarkedPoset) -> MarkedPoset {
    let mut ids = Vec::new();
    let mut rels = Vec::new();
    let mut marks = Vec::new();
    for (tag, mp) in [("a", a), ("b", b)] {
        let p = mp.poset();
        let name = |i: usize| format!("{tag}.{}", p.id(i));
        ids.extend((0..p.len()).map(name));
        rels.extend(p.covers().iter().map(|&(x, y)| (name(x), name(y))));
        marks.extend(mp.marked().into_iter().map(|i| (name(i), mp.mark(i).unwrap().clone())));
    }
    MarkedPoset::new(Poset::new(&ids, &rels).unwrap(), &marks).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn poset_relation_is_a_partial_order(seed in any::<u64>(), n in 1usize..8) {
        let p = random_poset(seed, n);
        for a in 0..n {
            prop_assert!(p.leq(a, a));
            for b in 0..n {
                if a != b {
                    prop_assert!(!(p.leq(a, b) && p.leq(b, a)));
                }
                for c in 0..n {
                    if p.leq(a, b) && p.leq(b, c) {
                        prop_assert!(p.leq(a, c));
                    }
                }
            }
        }
        for &(x, y) in p.covers() {
            prop_assert!((0..n).all(|z| !(p.lt(x, z) && p.lt(z, y))));
        }
    }

    #[test]
    fn antichain_extensions(n in 0usize..6) {
        let ids: Vec<String> = (0..n).map(|i| format!("a{i}")).collect();
        let p = Poset::new(&ids, &[]).unwrap();
        prop_assert_eq!(linear_extensions(&p, None).unwrap().count(), factorial(n));
    }

    #[test]
    fn extensions_are_distinct_and_order_preserving(seed in any::<u64>(), n in 1usize..7) {
        let p = random_poset(seed, n);
        let mut seen = BTreeSet::new();
        for w in linear_extensions(&p, None).unwrap() {
            let pos: Vec<usize> = (0..n).map(|i| w.word.iter().position(|&x| x == i).unwrap()).collect();
            for a in 0..n {
                for b in 0..n {
                    if p.lt(a, b) {
                        prop_assert!(pos[a] < pos[b]);
                    }
                }
            }
            prop_assert!(seen.insert(w.word));
        }
    }

    #[test]
    fn augmenting_is_idempotent(seed in any::<u64>()) {
        let mp = small(seed, 4);
        let once = mp.augment_marked_order().unwrap();
        let again = MarkedPoset::from_marking(once.clone(), mp.marking().to_vec()).unwrap();
        prop_assert_eq!(again.augment_marked_order().unwrap(), once);
    }

    #[test]
    fn labelings_change_only_descents(seed in any::<u64>(), n in 1usize..7) {
        let p = random_poset(seed, n);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        let l = random_natural_labeling(&p, &mut rng);
        let plain: BTreeSet<Vec<usize>> = linear_extensions(&p, None).unwrap().map(|w| w.word).collect();
        let labeled: Vec<_> = linear_extensions(&p, Some(&l)).unwrap().collect();
        prop_assert_eq!(plain, labeled.iter().map(|w| w.word.clone()).collect::<BTreeSet<_>>());
        for w in &labeled {
            let mut d = 0;
            prop_assert_eq!(w.descent_prefix.len(), n);
            for i in 0..n {
                if i > 0 && l.label(w.word[i - 1]) > l.label(w.word[i]) {
                    d += 1;
                }
                prop_assert_eq!(w.descent_prefix[i], d);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn vertices_match_the_brute_force_oracle(seed in any::<u64>()) {
        let mp = small(seed, 4);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mask: u64 = rng.gen();
        let part = ChainOrderPartition::from_fn(&mp, |i| mask >> (i % 64) & 1 == 1);
        for h in [build_order_hrep(&mp).unwrap(), build_chain_hrep(&mp).unwrap(), build_chain_order_hrep(&mp, &part).unwrap()] {
            let v = vertex_set(&h);
            prop_assert_eq!(&v, &common::brute_vertices(&h));
            for p in &v {
                prop_assert!(h.contains(p));
            }
        }
    }

    #[test]
    fn counts_match_the_brute_force_oracle(seed in any::<u64>()) {
        let mp = small(seed, 4);
        for h in [build_order_hrep(&mp).unwrap(), build_chain_hrep(&mp).unwrap()] {
            prop_assert_eq!(count_lattice_points(&h, 0).unwrap(), 1);
            for n in 1..=2 {
                prop_assert_eq!(count_lattice_points(&h, n).unwrap(), u128::from(common::brute_count(&h, n as i64)));
            }
        }
    }

    #[test]
    fn irredundant_keeps_the_polytope(seed in any::<u64>()) {
        let mp = small(seed, 4);
        let h = build_chain_hrep(&mp).unwrap();
        let r = irredundant(&h).unwrap();
        prop_assert_eq!(vertex_set(&r), vertex_set(&h));
        prop_assert_eq!(irredundant(&r).unwrap().canonical(), r.canonical());
        let text = r.to_string();
        prop_assert_eq!(text.parse::<HRepresentation>().unwrap().canonical(), r.canonical());
    }

    #[test]
    fn ehrhart_polynomial_interpolates_counts(seed in any::<u64>()) {
        let mp = small(seed, 4);
        let h = build_order_hrep(&mp).unwrap();
        let e = ehrhart_by_counting(&h).unwrap();
        prop_assert_eq!(e.degree(), Some(h.dim()));
        prop_assert_eq!(e.eval_int(0), Rational::one());
        for n in 0..=(h.dim() as u64 + 2) {
            prop_assert_eq!(e.eval_int(n as i64), rat(count_lattice_points(&h, n).unwrap() as i64));
        }
    }

    #[test]
    fn combinatorial_descriptions_match(seed in any::<u64>()) {
        let mp = small(seed, 5);
        let h = build_order_hrep(&mp).unwrap();
        let comb: BTreeSet<_> = order_vertices_combinatorial(&mp).unwrap().vertices().iter().cloned().collect();
        prop_assert_eq!(comb, vertex_set(&h));
        let facets: BTreeSet<LinearInequality> = order_facets_combinatorial(&mp).unwrap().into_iter().collect();
        let oracle: BTreeSet<LinearInequality> = irredundant(&h).unwrap().inequalities().iter().cloned().collect();
        prop_assert_eq!(facets, oracle);
    }

    #[test]
    fn chain_polytope_contains_origin_with_coordinate_facets(seed in any::<u64>()) {
        let mp = small(seed, 5);
        let h = build_chain_hrep(&mp).unwrap();
        let d = h.dim();
        prop_assert!(vertex_set(&h).contains(&vec![Rational::zero(); d]));
        let facets: BTreeSet<LinearInequality> = irredundant(&h).unwrap().inequalities().iter().cloned().collect();
        for i in 0..d {
            let mut a = vec![0; d];
            a[i] = -1;
            prop_assert!(facets.contains(&LinearInequality::from_ints(&a, 0).unwrap()));
        }
    }

    #[test]
    fn chain_order_membership_decomposes(seed in any::<u64>()) {
        let mp = small(seed, 4);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mask: u64 = rng.gen();
        let part = ChainOrderPartition::from_fn(&mp, |i| mask >> (i % 64) & 1 == 1);
        let h = build_chain_order_hrep(&mp, &part).unwrap();
        for _ in 0..20 {
            let x: Vec<Rational> = (0..h.dim()).map(|_| Rational::new(rng.gen_range(-2..=10).into(), 2.into())).collect();
            prop_assert_eq!(decomposed_membership(&mp, &part, &x).unwrap(), h.contains(&x));
        }
    }

    #[test]
    fn disjoint_union_multiplies_ehrhart(a in any::<u64>(), b in any::<u64>()) {
        let (p, q) = (small(a, 2), small(b, 2));
        let u = disjoint_union(&p, &q);
        let ep = ehrhart_formula_marked_order(&p).unwrap();
        let eq = ehrhart_formula_marked_order(&q).unwrap();
        prop_assert_eq!(ehrhart_by_counting(&build_order_hrep(&u).unwrap()).unwrap(), &ep * &eq);
    }

    #[test]
    fn face_dimension_is_free_block_count(seed in any::<u64>()) {
        let mp = small(seed, 4);
        let h = build_order_hrep(&mp).unwrap();
        let v = enumerate_vertices(&h).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let chosen: Vec<&Vec<Rational>> = v.vertices().iter().filter(|_| rng.gen_bool(0.5)).collect();
        prop_assume!(!chosen.is_empty());
        let k = rat(chosen.len() as i64);
        let x: Vec<Rational> = (0..h.dim()).map(|i| chosen.iter().map(|p| p[i].clone()).sum::<Rational>() / &k).collect();
        let fp = face_partition_of_point(&mp, &x).unwrap();
        prop_assert!(is_face_partition(&mp, &fp).unwrap());
        let tight: Vec<&LinearInequality> = h.inequalities().iter().filter(|c| c.is_tight(&x)).collect();
        let face = marked_polytopes::VRepresentation::new(
            v.vertices().iter().filter(|p| tight.iter().all(|c| c.is_tight(p))).cloned(),
        );
        prop_assert_eq!(face.affine_dimension(), fp.free_count() as i64);
    }

    #[test]
    fn direct_test_is_unimodular_invariant(seed in any::<u64>()) {
        let mp = small(seed, 4);
        let h = build_order_hrep(&mp).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (u, t) = random_unimodular_map(h.dim(), &mut rng);
        let g = pull_back(&h, &u, &t).unwrap();
        prop_assert_eq!(is_two_level_direct(&g).unwrap().two_level, is_two_level_direct(&h).unwrap().two_level);
        prop_assert_eq!(count_lattice_points(&g, 2).unwrap(), count_lattice_points(&h, 2).unwrap());
    }

    #[test]
    fn formula_ignores_the_labeling(seed in any::<u64>()) {
        let mp = small(seed, 5);
        let (ext, canonical) = canonical_labeling(&mp).unwrap();
        let base = ehrhart_formula_with_labeling(&mp, &canonical).unwrap();
        prop_assert_eq!(&base, &ehrhart_formula_marked_order(&mp).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..3 {
            let l = random_natural_labeling(&ext, &mut rng);
            prop_assert_eq!(&ehrhart_formula_with_labeling(&mp, &l).unwrap(), &base);
        }
        prop_assert_eq!(base.degree(), Some(mp.unmarked().len()));
        prop_assert_eq!(base.eval_int(0), Rational::one());
    }

    #[test]
    fn order_and_chain_share_ehrhart(seed in any::<u64>()) {
        let mp = small(seed, 4);
        prop_assert_eq!(
            ehrhart_by_counting(&build_order_hrep(&mp).unwrap()).unwrap(),
            ehrhart_by_counting(&build_chain_hrep(&mp).unwrap()).unwrap()
        );
    }

    #[test]
    fn zero_one_marks_are_two_level(seed in any::<u64>(), n in 1usize..6) {
        let p = random_poset(seed, n);
        let mut ids: Vec<String> = p.ids().to_vec();
        let mut rels: Vec<(String, String)> = p.covers().iter().map(|&(a, b)| (p.id(a).to_string(), p.id(b).to_string())).collect();
        for i in 0..n {
            rels.push(("bot".into(), p.id(i).to_string()));
            rels.push((p.id(i).to_string(), "top".into()));
        }
        ids.push("bot".into());
        ids.push("top".into());
        let q = Poset::from_relations(&ids, &rels).unwrap();
        let mp = MarkedPoset::new(q, &[("bot", rat(0)), ("top", rat(1))]).unwrap();
        prop_assert!(order_two_level_criterion(&mp).unwrap());
        prop_assert!(is_two_level_direct(&build_order_hrep(&mp).unwrap()).unwrap().two_level);
        prop_assert!(is_two_level_direct(&build_chain_hrep(&mp).unwrap()).unwrap().two_level);
    }
}
