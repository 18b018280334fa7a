//! Every emitted relation is the identity in the graph product, and every
//! rewritten generator equals the generator it rewrites.

use cartk::graphprod::GraphProduct;
use cartk::verify::{check_reduction, verify_presentation, DEFAULT_MAX_VERIFY_SIZE};
use cartk::{build_presentation, CycleChoice, FlagComplex, GroupSpec, RedTable, VertexSet};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn check_relations(k: &FlagComplex, spec: &GroupSpec, choice: CycleChoice) {
    let p = build_presentation(k, spec, choice).unwrap();
    let r = verify_presentation(k, spec, &p, DEFAULT_MAX_VERIFY_SIZE).unwrap();
    assert!(r.passed(), "{k:?} {spec}: {:?}", r.failures);
    assert_eq!(r.templates_skipped, 0);
}

fn check_generators(k: &FlagComplex, spec: &GroupSpec) {
    let product = GraphProduct::new(k, spec).unwrap();
    let mut table = RedTable::new(k);
    for bits in 1..1u64 << k.vertex_count() {
        let s = VertexSet::from_bits(bits);
        for i in s {
            let bad = check_reduction(&mut table, &product, i, s).unwrap();
            assert_eq!(bad, None, "{k:?}: L({i},{s})");
        }
    }
}

#[test]
fn all_graphs_up_to_four_vertices() {
    for m in 1..=4usize {
        for mask in 0..1u64 << (m * (m - 1) / 2) {
            let k = FlagComplex::from_pair_mask(m, mask).unwrap();
            for order in [2, 3] {
                let spec = GroupSpec::uniform(m, order);
                check_relations(&k, &spec, CycleChoice::Fundamental);
                check_generators(&k, &spec);
            }
        }
    }
}

#[test]
fn all_graphs_on_five_vertices_coxeter() {
    for mask in 0..1u64 << 10 {
        let k = FlagComplex::from_pair_mask(5, mask).unwrap();
        let spec = GroupSpec::uniform(5, 2);
        check_relations(&k, &spec, CycleChoice::Fundamental);
        check_relations(&k, &spec, CycleChoice::Pruned);
    }
}

#[test]
fn random_graphs_on_six_and_seven_vertices() {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for _ in 0..40 {
        let m = rng.gen_range(6..=7usize);
        let mask = rng.gen_range(0..1u64 << (m * (m - 1) / 2));
        let k = FlagComplex::from_pair_mask(m, mask).unwrap();
        let orders: Vec<u64> = (0..m).map(|_| rng.gen_range(2..=3)).collect();
        check_relations(&k, &GroupSpec::from_orders(&orders), CycleChoice::Fundamental);
    }
}

#[test]
fn non_abelian_vertex_groups() {
    let s3 = std::sync::Arc::new(cartk::TableGroup::s3());
    let spec = GroupSpec::new(vec![
        cartk::VertexGroup::Table(s3.clone()),
        cartk::VertexGroup::Cyclic(2),
        cartk::VertexGroup::Table(s3),
        cartk::VertexGroup::Cyclic(2),
    ]);
    let k = FlagComplex::cycle(4).unwrap();
    check_relations(&k, &spec, CycleChoice::Fundamental);
    check_generators(&k, &spec);
}
