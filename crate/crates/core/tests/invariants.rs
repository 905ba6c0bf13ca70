use std::sync::Arc;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use icat_core::cells::random_sset;
use icat_core::icat::{count_icat_maps, is_nerve_by_adjoint, nerve, FinCat, NerveVerdict};
use icat_core::sset::homology::{homology, AbGroup};
use icat_core::sset::kan::kan_probe;
use icat_core::sset::ops::product;
use icat_core::sset::{check_identities_exhaustive, validate, FinSSet};
use icat_core::sspace::{completeness_check, segal_map, validate_space};

/// Composable chains of length `m` in `c`, by brute force.
fn chains(c: &FinCat, m: usize) -> usize {
    let mut paths: Vec<usize> = (0..c.num_objects()).collect();
    let mut count = paths.len();
    for _ in 0..m {
        let mut next = Vec::new();
        for &end in &paths {
            for &(s, t) in c.arrows.iter() {
                if s == end {
                    next.push(t);
                }
            }
        }
        count = next.len();
        paths = next;
    }
    count
}

/// Functors by brute force over all object and arrow assignments.
fn functor_count(c: &FinCat, d: &FinCat) -> usize {
    let (no, na) = (c.num_objects(), c.num_arrows());
    let mut total = 0;
    let mut ob = vec![0; no];
    loop {
        let mut ar = vec![0; na];
        'arrows: loop {
            let ok = (0..na).all(|f| {
                let (s, t) = c.arrows[f];
                d.arrows[ar[f]] == (ob[s], ob[t])
            }) && (0..no).all(|x| ar[c.identities[x]] == d.identities[ob[x]])
                && c.comp.iter().all(|(&(f, g), &h)| d.comp.get(&(ar[f], ar[g])) == Some(&ar[h]));
            if ok {
                total += 1;
            }
            for i in 0..na {
                ar[i] += 1;
                if ar[i] < d.num_arrows() {
                    continue 'arrows;
                }
                ar[i] = 0;
            }
            break;
        }
        let mut i = 0;
        while i < no {
            ob[i] += 1;
            if ob[i] < d.num_objects() {
                break;
            }
            ob[i] = 0;
            i += 1;
        }
        if i == no {
            return total;
        }
    }
}

/// A poset on `n` objects with `i < j` only for `i < j`.
fn random_poset(n: usize, bits: u32) -> FinCat {
    let names: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
    let mut le = Vec::new();
    let mut k = 0;
    for i in 0..n {
        for j in i + 1..n {
            if bits >> k & 1 == 1 {
                le.push((i, j));
            }
            k += 1;
        }
    }
    FinCat::preorder(&names, &le)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn random_ssets_satisfy_the_identities(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_sset(&mut rng, 3, 7);
        prop_assert!(validate(&x).is_valid());
        prop_assert!(check_identities_exhaustive(&x, 3).is_valid());
    }

    #[test]
    fn euler_characteristic_matches_homology(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_sset(&mut rng, 3, 7);
        let h = homology(&x, 2).unwrap();
        let cells: i64 = (0..=2).map(|d| (-1i64).pow(d as u32) * x.num_cells(d) as i64).sum();
        let ranks: i64 = h.iter().enumerate().map(|(d, g)| (-1i64).pow(d as u32) * g.rank as i64).sum();
        prop_assert_eq!(cells, ranks);
    }

    #[test]
    fn nerves_of_posets(n in 1usize..=4, bits in any::<u32>()) {
        let c = random_poset(n, bits);
        let ic = c.to_icat(2);
        let x = nerve(&ic, 3);
        prop_assert!(validate_space(&x).is_valid());
        for m in 0..=3 {
            prop_assert_eq!(x.level(m).num_cells(0), chains(&c, m));
            prop_assert!(segal_map(&x, m).unwrap().is_iso());
        }
        prop_assert!(matches!(is_nerve_by_adjoint(&x, 1_000_000), NerveVerdict::Yes(_)));
        let cert = completeness_check(&x, 2, 1_000_000).unwrap();
        prop_assert_eq!(cert.summary().tier, "ISO");
    }

    #[test]
    fn internal_functors_are_functors(a in 1usize..=3, bits in any::<u32>(), which in 0usize..4) {
        let c = random_poset(a, bits);
        let d = [FinCat::chain(2), FinCat::chaotic(2), FinCat::cyclic_group(2), FinCat::discrete(2)][which].clone();
        let n = count_icat_maps(&c.to_icat(1), &d.to_icat(1), 1_000_000).unwrap();
        prop_assert_eq!(n as usize, functor_count(&c, &d));
    }
}

#[test]
fn homology_of_small_complexes() {
    let b = FinSSet::boundary(2, 3);
    assert_eq!(homology(&b, 2).unwrap(), vec![AbGroup::free(1), AbGroup::free(1), AbGroup::zero()]);
    for n in 0..=3 {
        let d = FinSSet::standard(n, 3);
        assert_eq!(homology(&d, 2).unwrap(), vec![AbGroup::free(1), AbGroup::zero(), AbGroup::zero()]);
    }
}

#[test]
fn square_product_cells() {
    let i = Arc::new(FinSSet::standard(1, 3));
    let p = product(&i, &i).unwrap();
    let cells: Vec<usize> = (0..=3).map(|d| p.obj.num_cells(d)).collect();
    assert_eq!(cells, vec![4, 5, 2, 0]);
}

#[test]
fn kan_probe_on_standard_examples() {
    assert!(kan_probe(&Arc::new(FinSSet::chaotic(&["a", "b", "c"], 3)), 3).passed());
    assert!(!kan_probe(&Arc::new(FinSSet::standard(1, 2)), 2).passed());
    assert!(!kan_probe(&Arc::new(FinSSet::horn(2, 0, 2)), 2).passed());
}
