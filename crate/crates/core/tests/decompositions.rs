mod common;

use std::collections::BTreeMap;

use kdecomp_core::assembler::{
    decompose_laurent, decompose_relative_vc, ft_oracle_compare, iterated_nk, kregular_check,
    verify_fold_counting, AssemblerError, Provenance,
};
use kdecomp_core::binomial;
use kdecomp_core::contracted::{
    expand_power, four_term_check, word_value, words, wang_pieces, Entry, Extension, FtBase,
    GradedSymbol, Letter, OpWord, RingTable,
};
use kdecomp_core::lattice::{
    canonical_primitive, complete_to_basis, enumerate_subgroups, fold_to_positive, SubgroupFilter,
};
use kdecomp_core::{FGAbelianGroup, Homomorphism};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn enumeration_matches_brute_force() {
    for n in 1..=4 {
        for h in 1..=3 {
            let all = enumerate_subgroups(n, h, SubgroupFilter::All);
            assert_eq!(all.len(), common::brute_force_subgroup_count(n, h as i64), "n={n} H={h}");
            assert!(all.windows(2).all(|w| w[0] < w[1]));
            assert!(all.iter().all(|c| c.max_norm() <= h));
        }
    }
}

#[test]
fn fold_fibers_have_size_two_to_the_n_minus_one() {
    for n in 2..=3 {
        for h in 1..=5 {
            let mut fibers: BTreeMap<Vec<i64>, usize> = BTreeMap::new();
            for c in enumerate_subgroups(n, h, SubgroupFilter::Nonzero) {
                let p = fold_to_positive(&c).unwrap();
                assert!(p.is_positive());
                *fibers.entry(p.coords().to_vec()).or_default() += 1;
            }
            assert_eq!(fibers.len(), enumerate_subgroups(n, h, SubgroupFilter::Positive).len());
            assert!(fibers.values().all(|&k| k == 1 << (n - 1)), "n={n} H={h}");
        }
    }
}

#[test]
fn word_value_is_permutation_invariant() {
    let alphabet = [Letter::I, Letter::NPlus, Letter::NMinus, Letter::L];
    for len in 0..=5 {
        for w in words(&alphabet, len) {
            let mut sorted = w.letters().to_vec();
            sorted.sort();
            let mut rev = w.letters().to_vec();
            rev.reverse();
            for q in [-1, 0, 2] {
                let v = word_value(&w, q);
                assert_eq!(v, word_value(&OpWord::new(sorted.clone()), q));
                assert_eq!(v, word_value(&OpWord::new(rev.clone()), q));
            }
        }
    }
}

#[test]
fn expansion_counts_are_binomial() {
    for n in 0..=8i64 {
        let p = expand_power(FtBase::Free, n).unwrap();
        assert_eq!(p.word_count(), 1 << n);
        let mut by_l = vec![0u64; n as usize + 1];
        for (w, m) in p.terms() {
            by_l[w.l_count()] += m;
        }
        for (i, &c) in by_l.iter().enumerate() {
            assert_eq!(c, binomial(n as u64, i as u64));
        }
        if n <= 5 {
            assert_eq!(expand_power(FtBase::Laurent, n).unwrap().word_count(), 4u64.pow(n as u32));
        }
    }
}

#[test]
fn four_term_on_random_tables() {
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    for _ in 0..20 {
        let t = common::random_concrete_table(&mut rng, 1);
        let r = four_term_check(1, &t).unwrap();
        assert!(r.passed(), "{:?}", r.failures());
    }
}

#[test]
fn wang_identity_pieces() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..10 {
        let (a, b) = (common::random_group(&mut rng, 2, 8), common::random_group(&mut rng, 2, 8));
        let alpha = BTreeMap::from([
            (1, Homomorphism::identity(&a.presentation())),
            (0, Homomorphism::identity(&b.presentation())),
        ]);
        let w = wang_pieces(&alpha, 1).unwrap();
        assert_eq!(w.cokernel, a);
        assert_eq!(w.kernel, b);
        assert_eq!(w.extension == Extension::Split, b.is_free());
    }
}

#[test]
fn laurent_k_part_is_height_independent() {
    for n in 1..=3 {
        let base = decompose_laurent(n, 0, &RingTable::symbolic(), 1).unwrap();
        for h in 2..=4 {
            let r = decompose_laurent(n, 0, &RingTable::symbolic(), h).unwrap();
            assert_eq!(r.k_multiplicities(), base.k_multiplicities());
            assert!(r.k_part().eq(base.k_part()));
            // ℤ¹ has a single infinite cyclic subgroup at every height.
            if n == 1 {
                assert_eq!(r.nil_part().count(), base.nil_part().count());
            } else {
                assert!(r.nil_part().count() > base.nil_part().count());
            }
        }
    }
}

#[test]
fn regular_tables_give_two_to_the_n_summands() {
    for n in 0..=8 {
        let r = decompose_laurent(n, 3, &RingTable::regular(), 5).unwrap();
        assert_eq!(r.summands.len(), 1 << n);
        assert!(r.exact && r.truncated_at.is_none());
    }
}

#[test]
fn provenance_words_and_bases() {
    let r = decompose_laurent(3, 0, &RingTable::symbolic(), 2).unwrap();
    assert!(r.provenance_is_complete());
    for s in r.nil_part() {
        let Provenance::Nil { subgroup, word, basis, .. } = &s.provenance else { unreachable!() };
        assert_eq!(word.degree(), 3);
        assert_eq!(word_value(word, 0), s.symbol);
        assert_eq!(basis.first_column(), subgroup.coords());
        assert_eq!(complete_to_basis(subgroup.coords()).unwrap(), *basis);
    }
}

#[test]
fn relative_report_counts_every_subgroup() {
    for n in 1..=3 {
        let r = decompose_relative_vc(n, 0, &RingTable::symbolic(), 2).unwrap();
        let per_c: u64 = (0..n as u64).map(|i| 2 * binomial(n as u64 - 1, i)).sum();
        let subgroups = enumerate_subgroups(n, 2, SubgroupFilter::All).len() as u64;
        assert_eq!(r.summands.len() as u64, per_c * subgroups);
    }
}

#[test]
fn conjecture_gating() {
    for n in 2..=4 {
        assert_eq!(
            iterated_nk(n, 0, &RingTable::symbolic(), false, 2).unwrap_err(),
            AssemblerError::ConjectureRequired(n)
        );
        assert_eq!(
            ft_oracle_compare(n, 0, &RingTable::symbolic(), false, 2).unwrap_err(),
            AssemblerError::ConjectureRequired(n)
        );
    }
    assert!(ft_oracle_compare(3, 0, &RingTable::regular(), false, 2).unwrap().passed());
}

#[test]
fn fold_counting_small_cases() {
    for n in 2..=3 {
        for h in 1..=5 {
            assert!(verify_fold_counting(n, -1, h).unwrap().passed);
        }
    }
}

#[test]
fn kregular_matches_hypothesis() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for _ in 0..50 {
        let t = common::mixed_table(&mut rng, 0);
        for n in 1..=4 {
            let v = kregular_check(n, 0, &t).unwrap();
            let window_zero = (0..n as i64).all(|i| t.nk_entry(-i).is_some_and(|e| e.is_zero()));
            assert_eq!(v.holds, window_zero);
            assert!(v.verdict_unconditional && v.trace_heuristic);
            if v.holds {
                assert!(v.trace.iter().all(|w| w.killed));
            }
        }
    }
}

fn entry() -> impl Strategy<Value = Entry> {
    prop_oneof![
        Just(Entry::Zero),
        Just(Entry::Symbol),
        (0usize..2, prop::collection::vec(2u64..6, 0..2))
            .prop_map(|(r, t)| Entry::Concrete(FGAbelianGroup::from_cyclic_orders(r, &t))),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn oracle_agrees_on_mixed_tables(
        ks in prop::collection::vec(entry(), 5),
        nks in prop::collection::vec(entry(), 5),
        n in 0usize..=3,
        h in 1u64..=3,
    ) {
        let mut t = RingTable::new("mixed").with_default(Entry::Symbol);
        for (j, (k, nk)) in ks.into_iter().zip(nks).enumerate() {
            t = t.with_k(-(j as i64), k).with_nk(-(j as i64), nk).unwrap();
        }
        let c = ft_oracle_compare(n, 0, &t, true, h).unwrap();
        prop_assert!(c.passed(), "{:?}", c.diff);
    }

    #[test]
    fn basis_completion_for_random_primitives(v in prop::collection::vec(-40i64..=40, 1..6)) {
        prop_assume!(v.iter().any(|&x| x != 0));
        let c = canonical_primitive(&v);
        let g = v.iter().fold(0i64, |g, &x| num_integer::gcd(g, x));
        prop_assert_eq!(c.is_ok(), true);
        if g == 1 {
            let b = complete_to_basis(&v).unwrap();
            prop_assert_eq!(b.first_column(), v);
            prop_assert!(b.matrix().is_unimodular());
        } else {
            prop_assert!(complete_to_basis(&v).is_err());
        }
    }

    #[test]
    fn iterated_nk_per_subgroup_counts(n in 2usize..=4, h in 1u64..=3) {
        let r = iterated_nk(n, 0, &RingTable::symbolic(), true, h).unwrap();
        for (c, m) in r.per_subgroup() {
            prop_assert!(c.is_positive());
            for i in 0..n as u64 {
                prop_assert_eq!(m[&GradedSymbol::nk(-(i as i64))], binomial(n as u64 - 1, i));
            }
        }
    }
}
