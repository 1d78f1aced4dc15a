use itertools::Itertools;
use prinseries_core::characters::{character_grid, Rational};
use prinseries_core::distinction::{
    brute_force_distinguished, is_distinguished, is_eta_distinguished, literal_pattern_check,
    sigma_selfdual, PrincipalSeriesDatum,
};
use prinseries_core::sampling::{random_tuple, seeded_rng};
use prinseries_core::{Extension, TameCharacter};
use rand::seq::SliceRandom;

fn extensions() -> Vec<Extension> {
    vec![
        Extension::unramified(3).unwrap(),
        Extension::unramified(5).unwrap(),
        Extension::ramified(3, 0).unwrap(),
        Extension::ramified(5, 1).unwrap(),
    ]
}

#[test]
fn counting_agrees_with_brute_force() {
    let mut rng = seeded_rng(11);
    for ext in extensions() {
        let mut hits = 0;
        for n in 2..=6 {
            for _ in 0..300 {
                let d = random_tuple(&ext, n, &mut rng).unwrap();
                let fast = is_distinguished(&d).unwrap();
                let slow = brute_force_distinguished(&d).unwrap();
                assert_eq!(fast.distinguished, slow.distinguished, "{ext}: {d}");
                if let Some(c) = &fast.certificate {
                    assert!(c.validate(&d));
                    hits += 1;
                }
                if let Some(c) = &slow.certificate {
                    assert!(c.validate(&d));
                }
            }
        }
        assert!(hits > 100, "{ext}: only {hits} distinguished samples");
    }
}

#[test]
fn verdict_is_permutation_invariant() {
    let mut rng = seeded_rng(12);
    for ext in extensions() {
        for n in 2..=6 {
            for _ in 0..100 {
                let d = random_tuple(&ext, n, &mut rng).unwrap();
                let v = is_distinguished(&d).unwrap().distinguished;
                let e = is_eta_distinguished(&d).unwrap().distinguished;
                let mut order: Vec<usize> = (0..n).collect();
                order.shuffle(&mut rng);
                let p = d.permuted(&order);
                assert_eq!(is_distinguished(&p).unwrap().distinguished, v);
                assert_eq!(is_eta_distinguished(&p).unwrap().distinguished, e);
            }
        }
    }
}

#[test]
fn literal_pattern_on_some_ordering_iff_distinguished() {
    let mut rng = seeded_rng(13);
    for ext in extensions() {
        for n in 2..=5 {
            for _ in 0..40 {
                let d = random_tuple(&ext, n, &mut rng).unwrap();
                let some = (0..n)
                    .permutations(n)
                    .any(|order| literal_pattern_check(&d.permuted(&order)).is_some());
                let verdict = is_distinguished(&d).unwrap();
                assert_eq!(some, verdict.distinguished, "{d}");
                if let Some(c) = verdict.certificate {
                    assert!(literal_pattern_check(&d.permuted(&c.ordering())).is_some());
                }
            }
        }
    }
}

#[test]
fn distinguished_implies_selfdual_exhaustive_n2() {
    // every pair of unitary characters with phases in (1/12)Z over unram(p=3)
    let ext = Extension::unramified(3).unwrap();
    let grid = character_grid(&ext, 12, &[Rational::from_integer(0)]);
    let mut checked = 0;
    let mut distinguished = 0;
    for a in &grid {
        for b in &grid {
            let Ok(d) = PrincipalSeriesDatum::new(vec![a.clone(), b.clone()]) else {
                continue;
            };
            if d.reducibility_witness().is_some() {
                continue;
            }
            checked += 1;
            if is_distinguished(&d).unwrap().distinguished {
                distinguished += 1;
                assert!(sigma_selfdual(&d), "{d}");
            }
        }
    }
    assert_eq!(checked, grid.len() * grid.len());
    assert!(distinguished > 0);
}

#[test]
fn distinguished_implies_selfdual_random() {
    let mut rng = seeded_rng(14);
    for ext in extensions() {
        for n in 2..=5 {
            for _ in 0..200 {
                let d = random_tuple(&ext, n, &mut rng).unwrap();
                if is_distinguished(&d).unwrap().distinguished {
                    assert!(sigma_selfdual(&d));
                }
            }
        }
    }
}

#[test]
fn mu_pairs_are_distinguished_everywhere_on_a_grid() {
    for ext in extensions() {
        let mags = [Rational::from_integer(0), Rational::new(1, 3)];
        for mu in character_grid(&ext, 4, &mags) {
            let pair = vec![mu.clone(), mu.inv_galois()];
            let Ok(d) = PrincipalSeriesDatum::new(pair) else { continue };
            if d.reducibility_witness().is_some() {
                continue;
            }
            assert!(is_distinguished(&d).unwrap().distinguished, "{d}");
        }
        let abs = PrincipalSeriesDatum::new(vec![TameCharacter::abs_k(&ext)]).unwrap();
        assert!(!is_distinguished(&abs).unwrap().distinguished);
    }
}
