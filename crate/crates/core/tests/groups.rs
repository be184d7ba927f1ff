mod common;

use common::*;
use rand::Rng;

use lamplighter::finite_quotients::*;
use lamplighter::fp_poly::FpPoly;
use lamplighter::poly_matrix::PolyMatrix;
use lamplighter::rp_module::{finite_truncation, ModulePresentation};
use lamplighter::wreath::{cocycle_verify, hom_from_generator_images, Base, GeneratorImages, LamplighterSpec, WreathElement};

fn wreath_table(p: u64, n: usize, m: usize) -> FiniteGroupTable {
    let t = finite_truncation(&ModulePresentation::free(field(p), n), m).unwrap();
    build_group_table(&t, m, DEFAULT_ORDER_CAP).unwrap()
}

fn one_generator(p: u64, relator: &[i64]) -> ModulePresentation {
    let f = field(p);
    let rel = PolyMatrix::from_columns(f, 1, vec![vec![FpPoly::from_signed(f, relator)]]).unwrap();
    ModulePresentation::new(f, 1, rel).unwrap()
}

fn small_pool() -> Vec<FiniteGroupTable> {
    let c = FiniteGroupTable::cyclic;
    let mut pool = vec![
        FiniteGroupTable::trivial(),
        c(2),
        c(4),
        FiniteGroupTable::direct_product(&c(2), &c(2)),
        c(6),
        FiniteGroupTable::direct_product(&c(3), &c(2)),
        c(8),
        FiniteGroupTable::direct_product(&c(4), &c(2)),
        wreath_table(2, 1, 2),
        wreath_table(3, 1, 2),
        wreath_table(2, 1, 3),
        FiniteGroupTable::direct_product(&wreath_table(3, 1, 2), &c(1)),
        FiniteGroupTable::direct_product(&c(2), &c(12)),
    ];
    pool.push(FiniteGroupTable::direct_product(&c(2), &wreath_table(3, 1, 2)));
    pool
}

#[test]
fn wreath_tables_match_element_arithmetic() {
    for (p, m) in [(2u64, 2u64), (2, 3), (3, 2), (2, 4)] {
        let spec = LamplighterSpec::new(field(p), 1, Base::Cyclic(m)).unwrap();
        let gens = [WreathElement::delta(spec, 0, vec![1]).unwrap(), WreathElement::t(spec)];
        let mut elements = vec![WreathElement::identity(spec)];
        let mut i = 0;
        while i < elements.len() {
            for g in &gens {
                let y = elements[i].mul(g).unwrap();
                if !elements.contains(&y) {
                    elements.push(y);
                }
            }
            i += 1;
        }
        let index = |e: &WreathElement| elements.iter().position(|x| x == e).unwrap() as u32;
        let direct = FiniteGroupTable::from_fn(
            elements.len(),
            |a, b| index(&elements[a as usize].mul(&elements[b as usize]).unwrap()),
            None,
        )
        .unwrap();
        let table = wreath_table(p, 1, m as usize);
        assert_eq!(direct.order(), table.order());
        assert!(isomorphic(&direct, &table, DEFAULT_ORDER_CAP).unwrap());
    }
}

#[test]
fn normal_subgroups_match_all_subgroup_filter() {
    let mut groups = small_pool();
    groups.push(wreath_table(2, 2, 2));
    groups.push(wreath_table(2, 1, 4));
    groups.push(wreath_table(3, 1, 1));
    groups.push(FiniteGroupTable::direct_product(&FiniteGroupTable::cyclic(2), &wreath_table(2, 1, 3)));
    for g in groups.iter().filter(|g| g.order() <= 64) {
        let expected: Vec<Subset> = all_subgroups(g).into_iter().filter(|s| is_normal_brute(g, s)).collect();
        let mut got: Vec<Subset> = enumerate_normal_subgroups(g, DEFAULT_ORDER_CAP)
            .unwrap()
            .into_iter()
            .map(|n| n.elements)
            .collect();
        got.sort();
        assert_eq!(got, expected, "order {}", g.order());
    }
}

#[test]
fn isomorphism_is_an_equivalence() {
    let pool = small_pool();
    let mut r = rng(9);
    // relabelled copies
    let shuffled: Vec<FiniteGroupTable> = pool
        .iter()
        .map(|g| {
            let mut perm: Vec<u32> = g.elements().collect();
            for i in (1..perm.len()).rev() {
                perm.swap(i, r.random_range(0..=i));
            }
            let mut inv = vec![0; perm.len()];
            for (i, &j) in perm.iter().enumerate() {
                inv[j as usize] = i as u32;
            }
            FiniteGroupTable::from_fn(g.order(), |a, b| perm[g.mul(inv[a as usize], inv[b as usize]) as usize], None)
                .unwrap()
        })
        .collect();
    let iso = |a: &FiniteGroupTable, b: &FiniteGroupTable| isomorphic(a, b, DEFAULT_ORDER_CAP).unwrap();
    for (g, h) in pool.iter().zip(&shuffled) {
        assert!(iso(g, g));
        assert!(iso(g, h) && iso(h, g));
    }
    for a in &pool {
        for b in &pool {
            assert_eq!(iso(a, b), iso(b, a));
            for c in &pool {
                if iso(a, b) && iso(b, c) {
                    assert!(iso(a, c));
                }
            }
        }
    }
    // C6 = C3 x C2, while D4 and C4 x C2 share an order but differ
    assert!(iso(&pool[4], &pool[5]));
    assert!(!iso(&pool[7], &pool[8]));
}

fn assert_same_classes(found: &[FiniteGroupTable], qu: &QuSet) {
    let mut distinct: Vec<&FiniteGroupTable> = Vec::new();
    for g in found {
        if !distinct.iter().any(|h| isomorphic(g, h, DEFAULT_ORDER_CAP).unwrap()) {
            distinct.push(g);
        }
    }
    assert_eq!(distinct.len(), qu.len());
    for g in distinct {
        assert!(qu.contains(g), "missing class of order {}", g.order());
    }
}

#[test]
fn kernel_and_surjection_enumerations_agree() {
    let cases = [
        ModulePresentation::free(field(2), 1),
        one_generator(2, &[1, 1]),
        ModulePresentation::free(field(3), 1),
        one_generator(2, &[1, 1, 1]),
    ];
    for (i, p) in cases.iter().enumerate() {
        let bound = if i == 0 { 8 } else { 7 };
        let found = quotients_by_surjections(p, bound);
        let qu = truncated_qu(&QuSource::Presentation(p.clone()), bound, DEFAULT_ORDER_CAP).unwrap();
        assert_same_classes(&found, &qu);
    }
}

#[test]
fn qu_sets_are_monotone() {
    let sources: Vec<QuSource> = vec![
        LamplighterSpec::lamplighter(field(2), 1).unwrap().into(),
        LamplighterSpec::lamplighter(field(3), 2).unwrap().into(),
        QuSource::Presentation(one_generator(2, &[1, 1])),
    ];
    for s in &sources {
        let sets: Vec<QuSet> = (1..=9).map(|b| truncated_qu(s, b, DEFAULT_ORDER_CAP).unwrap()).collect();
        for w in sets.windows(2) {
            assert!(w[0].classes().all(|g| w[1].contains(g)));
            assert!(w[1].classes().filter(|g| g.order() <= w[0].bound()).count() == w[0].len());
        }
    }
}

#[test]
fn hom_surjectivity_matches_closure() {
    let mut r = rng(12);
    for case in 0..150 {
        let p = [2u64, 3][case % 2];
        let m = r.random_range(1..=4u64);
        let n = r.random_range(1..=2usize);
        let g = r.random_range(1..=2usize);
        let spec = LamplighterSpec::new(field(p), n, Base::Cyclic(m)).unwrap();
        let random_base = |r: &mut rand_chacha::ChaCha8Rng| {
            let lamps: Vec<(i64, Vec<i64>)> = (0..2)
                .map(|_| (r.random_range(0..m as i64), (0..n).map(|_| r.random_range(0..p as i64)).collect()))
                .collect();
            WreathElement::new(spec, lamps, 0).unwrap()
        };
        let module_gen_images: Vec<WreathElement> = (0..g).map(|_| random_base(&mut r)).collect();
        let t_image = random_base(&mut r).mul(&WreathElement::t(spec).pow(r.random_range(0..m as i64))).unwrap();
        let images = GeneratorImages {
            source: ModulePresentation::free(field(p), g),
            target: spec,
            module_gen_images: module_gen_images.clone(),
            t_image: t_image.clone(),
        };
        let hom = hom_from_generator_images(images).unwrap();
        let mut gens = module_gen_images;
        gens.push(t_image);
        let closure = wreath_closure(&gens) as u128;
        assert_eq!(hom.is_surjective(), closure == spec.order().unwrap(), "case {case}");
        cocycle_verify(&hom, 3 * m as i64).unwrap();
        if let Some(nh) = hom.normalized() {
            assert_eq!(nh.images().t_image.shift(), 1 % m as i64);
            cocycle_verify(&nh, 3 * m as i64).unwrap();
        }
    }
}
