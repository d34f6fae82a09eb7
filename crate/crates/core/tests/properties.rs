use std::sync::{Arc, OnceLock};

use braceblock::brace::{brace_relation_witness, compute_block, BraceBlock, CircleOp};
use braceblock::group::*;
use braceblock::nearring::{enumerate_abelian_maps, psi_n_binomial, psi_n_recursive, AbelianMap, PsiSequence};
use braceblock::ybe::{
    are_mutually_inverse, braid_witness, brace_solution, explicit_solution, nondegeneracy_witness,
    solution_from_text, solution_to_text, Variant,
};
use proptest::prelude::*;

struct Fixture {
    group: Arc<FiniteGroup>,
    maps: Vec<AbelianMap>,
}

fn fixtures() -> &'static [Fixture] {
    static CELL: OnceLock<Vec<Fixture>> = OnceLock::new();
    CELL.get_or_init(|| {
        let groups = vec![
            make_dihedral(4).unwrap(),
            make_dihedral(6).unwrap(),
            make_symmetric(4).unwrap(),
            make_affine(5).unwrap(),
            make_metacyclic(7, 3, 2).unwrap(),
            make_metacyclic(5, 4, 2).unwrap(),
            make_product(&make_dihedral(3).unwrap(), &make_cyclic(4).unwrap()).unwrap(),
            make_cyclic(12).unwrap(),
        ];
        groups
            .into_iter()
            .map(|g| {
                let group = Arc::new(g);
                let maps = enumerate_abelian_maps(&group);
                Fixture { group, maps }
            })
            .collect()
    })
}

fn blocks() -> &'static Vec<Vec<BraceBlock>> {
    static CELL: OnceLock<Vec<Vec<BraceBlock>>> = OnceLock::new();
    CELL.get_or_init(|| {
        fixtures()
            .iter()
            .map(|f| f.maps.iter().map(|m| compute_block(&f.group, m).unwrap()).collect())
            .collect()
    })
}

/// `(fixture index, map index)`.
fn seed() -> impl Strategy<Value = (usize, usize)> {
    (0..fixtures().len()).prop_flat_map(|i| (Just(i), 0..fixtures()[i].maps.len()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn psi_n_routes_agree((i, j) in seed(), n in 1usize..24) {
        let psi = &fixtures()[i].maps[j];
        prop_assert_eq!(psi_n_recursive(psi, n).unwrap(), psi_n_binomial(psi, n).unwrap());
    }

    #[test]
    fn psi_composition_multiplies_indices((i, j) in seed(), m in 0usize..6, n in 0usize..6) {
        let psi = &fixtures()[i].maps[j];
        let psi_m = PsiSequence::new(psi.clone()).psi(m).unwrap().clone();
        let lhs = PsiSequence::new(psi_m).psi(n).unwrap().clone();
        prop_assert_eq!(lhs, psi_n_recursive(psi, m * n).unwrap());
    }

    #[test]
    fn circle_ops_are_groups_in_the_block((i, j) in seed(), n in 0usize..30) {
        let f = &fixtures()[i];
        let psi_n = psi_n_recursive(&f.maps[j], n).unwrap();
        let op = CircleOp::from_psi(&f.group, psi_n, n).unwrap();
        prop_assert_eq!(&op.table, &blocks()[i][j].op(n).table);
    }

    #[test]
    fn brace_relation_holds_for_every_pair((i, j) in seed(), a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>()) {
        let block = &blocks()[i][j];
        let (m, n) = (a.index(block.len()), b.index(block.len()));
        prop_assert_eq!(brace_relation_witness(&block.op(m).table, &block.op(n).table), None);
    }

    #[test]
    fn brace_solutions_are_inverse_braided_and_match_closed_form(
        (i, j) in seed(),
        a in any::<prop::sample::Index>(),
        b in any::<prop::sample::Index>(),
    ) {
        let f = &fixtures()[i];
        let block = &blocks()[i][j];
        let (m, n) = (a.index(block.len()), b.index(block.len()));
        let brace = block.brace(m, n);
        let r = brace_solution(&brace, Variant::R).unwrap();
        let rp = brace_solution(&brace, Variant::RPrime).unwrap();
        prop_assert!(braid_witness(&r).is_none());
        prop_assert!(nondegeneracy_witness(&rp).is_none());
        prop_assert!(are_mutually_inverse(&r, &rp));
        prop_assert_eq!(r.involutive, block.op(m).is_abelian());
        prop_assert_eq!(explicit_solution(&f.group, &f.maps[j], m, n, Variant::R).unwrap(), r);
    }

    #[test]
    fn solution_text_round_trips((i, j) in seed(), prime in any::<bool>()) {
        let block = &blocks()[i][j];
        let n = block.len() - 1;
        let variant = if prime { Variant::RPrime } else { Variant::R };
        let s = brace_solution(&block.brace(0, n), variant).unwrap();
        let record = solution_from_text(&solution_to_text(&s, 0, n, variant)).unwrap();
        prop_assert_eq!((record.m, record.n, record.variant), (0, n, variant));
        prop_assert_eq!(record.to_solution().unwrap(), s);
    }

    #[test]
    fn relabeled_tables_are_isomorphic(i in 0usize..8, perm in any::<u64>()) {
        let t = fixtures()[i].group.table();
        let order = t.order();
        // a random relabeling that keeps the identity at 0
        let mut sigma: Vec<Elem> = (0..order).collect();
        let mut state = perm;
        for k in (2..order).rev() {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            sigma.swap(k, 1 + (state >> 33) as usize % k);
        }
        let mut inverse = vec![0; order];
        for (x, &y) in sigma.iter().enumerate() {
            inverse[y] = x;
        }
        let relabeled = Table::from_fn(order, |x, y| sigma[t.mul(inverse[x], inverse[y])]).unwrap();
        prop_assert!(is_isomorphism(&sigma, &[t], &[&relabeled]));
        let found = find_isomorphism(&[t], &[&relabeled]);
        prop_assert!(found.is_some());
        prop_assert!(is_isomorphism(&found.unwrap(), &[t], &[&relabeled]));
        prop_assert_eq!(t.abelian_invariants(), relabeled.abelian_invariants());
        prop_assert_eq!(t.center().len(), relabeled.center().len());
    }

    #[test]
    fn cayley_text_round_trips(a in 1usize..7, b in 3usize..6) {
        let g = make_product(&make_cyclic(a).unwrap(), &make_dihedral(b).unwrap()).unwrap();
        let back = from_cayley_text(&to_cayley_text(&g)).unwrap();
        prop_assert_eq!(back.table(), g.table());
        prop_assert_eq!(back.names(), g.names());
    }

    #[test]
    fn element_names_parse_back(i in 0usize..8, x in any::<prop::sample::Index>()) {
        let g = &fixtures()[i].group;
        let x = x.index(g.order());
        prop_assert_eq!(g.parse_elem(g.name(x)).unwrap(), x);
    }

    #[test]
    fn fixed_point_freeness_is_inherited((i, j) in seed(), n in 1usize..20) {
        let psi = &fixtures()[i].maps[j];
        let psi_n = psi_n_recursive(psi, n).unwrap();
        prop_assert_eq!(psi_n.is_fixed_point_free(), psi.is_fixed_point_free());
        prop_assert_eq!(psi.one_minus().is_bijective(), psi.is_fixed_point_free());
    }
}
