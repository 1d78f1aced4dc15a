use prinseries_core::cells::Perm;
use prinseries_core::cosets::{
    bruhat_decompose, count_s, orbit_decomposition, reduce_to_involution, s_map, symmetric_space_size,
    torus_conjugate, u_r_w_coverage, CosetModel, FiniteMatrix,
};
use prinseries_core::sampling::{random_borel, random_invertible, seeded_rng};

#[test]
fn s_map_lands_in_s() {
    let m = CosetModel::new(3).unwrap();
    let mut rng = seeded_rng(21);
    for _ in 0..100 {
        let g = random_invertible(&m, 3, &mut rng);
        assert!(s_map(&m, &g).unwrap().in_symmetric_space(&m));
    }
}

#[test]
fn count_matches_formula_for_n3_q5() {
    let m = CosetModel::new(5).unwrap();
    assert_eq!(count_s(&m, 3).unwrap(), symmetric_space_size(3, 5));
}

#[test]
fn orbit_theorem_n3_q3() {
    let m = CosetModel::new(3).unwrap();
    let t = orbit_decomposition(&m, 3, false).unwrap();
    assert_eq!(t.orbits.len(), Perm::involutions(3).len());
    assert_eq!(t.representatives(), Perm::involutions(3));
    assert_eq!(t.sizes_sum() as u128, symmetric_space_size(3, 3));
}

#[test]
fn reduction_agrees_with_orbit_table() {
    for (n, q) in [(2, 3), (2, 5), (3, 3)] {
        let m = CosetModel::new(q).unwrap();
        let t = orbit_decomposition(&m, n, true).unwrap();
        for (k, orbit) in t.orbits.iter().enumerate() {
            for s in orbit.members.as_ref().unwrap().iter().step_by(7) {
                let r = reduce_to_involution(&m, s).unwrap();
                assert_eq!(r.w, t.orbits[k].representative, "{s}");
            }
        }
    }
}

#[test]
fn random_reductions() {
    let mut rng = seeded_rng(22);
    for q in [3, 5] {
        let m = CosetModel::new(q).unwrap();
        let f = m.field();
        for n in 2..=4 {
            for _ in 0..100 {
                let s = s_map(&m, &random_invertible(&m, n, &mut rng)).unwrap();
                let r = reduce_to_involution(&m, &s).unwrap();
                assert!(r.w.is_involution());
                let pw = FiniteMatrix::permutation(&r.w);
                let back = r.y.mul(&pw, f).mul(&r.y.inverse(f).unwrap().sigma(&m), f);
                assert_eq!(back, s);
            }
        }
    }
}

#[test]
fn bruhat_cell_is_borel_invariant() {
    let mut rng = seeded_rng(23);
    let m = CosetModel::new(5).unwrap();
    let f = m.field();
    for n in 2..=4 {
        for _ in 0..100 {
            let g = random_invertible(&m, n, &mut rng);
            let w = bruhat_decompose(&m, &g).unwrap().w;
            let b1 = random_borel(&m, n, &mut rng);
            let b2 = random_borel(&m, n, &mut rng);
            let h = b1.mul(&g, f).mul(&b2, f);
            let d = bruhat_decompose(&m, &h).unwrap();
            assert_eq!(d.w, w);
            assert_eq!(d.product(&m), h);
        }
    }
}

#[test]
fn representatives_cover_every_orbit() {
    let m = CosetModel::new(3).unwrap();
    for n in 1..=3 {
        let t = orbit_decomposition(&m, n, false).unwrap();
        let cov = u_r_w_coverage(&m, &t).unwrap();
        assert!(cov.complete(), "n = {n}: {:?}", cov.covered);
    }
}

#[test]
fn torus_conjugation_exhaustive_q3() {
    let m = CosetModel::new(3).unwrap();
    let mut seen = std::collections::HashSet::new();
    for z in 1..m.field().order() {
        let (x, y) = torus_conjugate(&m, z).unwrap();
        assert!(seen.insert((x, y)));
    }
    // z ↦ (x, y) is injective onto pairs with x² − Δy² ≠ 0
    assert_eq!(seen.len(), 8);
}
