//! Property tests for the information measure: the decomposition identity,
//! non-negativity, support rules, and agreement with the brute-force oracle.

use citent_core::entropy::{
    align_support, expected_information, information_from_frequencies, joint_information,
    FrequencyVector, ProbArray,
};
use citent_core::synth::oracle_information;
use proptest::prelude::*;

type Freq = FrequencyVector<u32>;

fn freq_pair(max_support: usize) -> impl Strategy<Value = (Freq, Freq)> {
    (2..=max_support).prop_flat_map(|support| {
        (
            proptest::collection::vec(1u64..=1000, support),
            proptest::collection::vec(1u64..=1000, support),
        )
            .prop_map(|(p_counts, q_counts)| {
                let f_p = Freq::from_counts(p_counts.into_iter().enumerate().map(|(i, c)| (i as u32, c)));
                let f_q = Freq::from_counts(q_counts.into_iter().enumerate().map(|(i, c)| (i as u32, c)));
                (f_p, f_q)
            })
    })
}

/// Same, but the posterior may lose categories (zero counts allowed).
fn freq_pair_with_losses() -> impl Strategy<Value = (Freq, Freq)> {
    (2usize..=30).prop_flat_map(|support| {
        (
            proptest::collection::vec(1u64..=1000, support),
            proptest::collection::vec(0u64..=1000, support),
        )
            .prop_map(|(p_counts, q_counts)| {
                let f_p = Freq::from_counts(p_counts.into_iter().enumerate().map(|(i, c)| (i as u32, c)));
                let f_q = Freq::from_counts(
                    q_counts
                        .into_iter()
                        .enumerate()
                        .filter(|&(_, c)| c > 0)
                        .map(|(i, c)| (i as u32, c)),
                );
                (f_p, f_q)
            })
    })
}

/// Straight-line computation of I over the comparable support, sharing
/// nothing with the library path.
fn direct_bits(f_p: &Freq, f_q: &Freq) -> Option<f64> {
    let mut n_p = 0.0;
    let mut n_q = 0.0;
    let mut cells = Vec::new();
    for (category, p) in f_p.iter() {
        if p == 0 {
            continue;
        }
        let q = f_q.get(category);
        n_p += p as f64;
        n_q += q as f64;
        cells.push((p as f64, q as f64));
    }
    if cells.is_empty() || n_q == 0.0 {
        return None;
    }
    let mut bits = 0.0;
    for (p, q) in cells {
        if q > 0.0 {
            let pi = p / n_p;
            let qi = q / n_q;
            bits += qi * (qi / pi).log2();
        }
    }
    Some(bits)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn decomposition_matches_direct_summation((f_p, f_q) in freq_pair(50)) {
        let direct = direct_bits(&f_p, &f_q).unwrap();
        let result = information_from_frequencies(&f_p, &f_q).unwrap();
        prop_assert!((direct - result.i_bits).abs() < 1e-9,
            "direct {direct} vs decomposed {}", result.i_bits);
    }

    #[test]
    fn information_is_never_negative((f_p, f_q) in freq_pair_with_losses()) {
        if let Ok(result) = information_from_frequencies(&f_p, &f_q) {
            prop_assert!(result.i_bits >= -1e-12);
        }
    }

    #[test]
    fn decomposition_identity_with_losses((f_p, f_q) in freq_pair_with_losses()) {
        let direct = direct_bits(&f_p, &f_q);
        let result = information_from_frequencies(&f_p, &f_q);
        match (direct, result) {
            (Some(direct), Ok(result)) => {
                prop_assert!((direct - result.i_bits).abs() < 1e-9);
            }
            (None, Err(_)) => {}
            (d, r) => prop_assert!(false, "routes disagree on definedness: {d:?} vs {r:?}"),
        }
    }

    #[test]
    fn zero_posterior_category_acts_only_through_n_p((f_p, f_q) in freq_pair(30), extra in 1u64..=1000) {
        // add a category present a priori and vanished a posteriori
        let mut p_counts: Vec<(u32, u64)> = f_p.iter().map(|(c, n)| (*c, n)).collect();
        p_counts.push((u32::MAX, extra));
        let f_p_ext = Freq::from_counts(p_counts);

        let base = information_from_frequencies(&f_p, &f_q).unwrap();
        let extended = information_from_frequencies(&f_p_ext, &f_q).unwrap();
        // raw term and n_q untouched; only n_p grows
        prop_assert!((base.raw_term - extended.raw_term).abs() < 1e-12);
        prop_assert_eq!(base.n_q, extended.n_q);
        prop_assert_eq!(extended.n_p, base.n_p + extra);
        let expected = ((extended.n_p as f64).log2() - (extended.n_q as f64).log2())
            + extended.raw_term / extended.n_q as f64;
        prop_assert!((extended.i_bits - expected).abs() < 1e-12);
    }

    #[test]
    fn oracle_agrees_with_implementation((f_p, f_q) in freq_pair_with_losses()) {
        match (oracle_information(&f_p, &f_q), information_from_frequencies(&f_p, &f_q)) {
            (Ok(oracle), Ok(result)) => {
                prop_assert!((oracle - result.i_bits).abs() < 1e-9,
                    "oracle {oracle} vs impl {}", result.i_bits);
            }
            (Err(_), Err(_)) => {}
            (o, r) => prop_assert!(false, "oracle and implementation disagree: {o:?} vs {r:?}"),
        }
    }

    #[test]
    fn joint_is_permutation_invariant(
        values in proptest::collection::vec(1u64..=50, 6),
        scale in 1u64..=40,
    ) {
        // build two 2x3 arrays, then permute both identically
        let q_counts: Vec<u64> = values.iter().map(|v| v * scale % 97 + 1).collect();
        let total_p: u64 = values.iter().sum();
        let total_q: u64 = q_counts.iter().sum();
        let p: Vec<f64> = values.iter().map(|&v| v as f64 / total_p as f64).collect();
        let q: Vec<f64> = q_counts.iter().map(|&v| v as f64 / total_q as f64).collect();
        let base = joint_information(
            &ProbArray::new(vec![2, 3], p.clone()).unwrap(),
            &ProbArray::new(vec![2, 3], q.clone()).unwrap(),
        ).unwrap();

        let perm = [3usize, 0, 4, 1, 5, 2];
        let p_perm: Vec<f64> = perm.iter().map(|&i| p[i]).collect();
        let q_perm: Vec<f64> = perm.iter().map(|&i| q[i]).collect();
        let permuted = joint_information(
            &ProbArray::new(vec![3, 2], p_perm).unwrap(),
            &ProbArray::new(vec![3, 2], q_perm).unwrap(),
        ).unwrap();
        prop_assert!((base - permuted).abs() < 1e-12);
    }

    #[test]
    fn alignment_splits_mass_correctly((f_p, f_q) in freq_pair_with_losses()) {
        if let Ok(aligned) = align_support(&f_p, &f_q) {
            let support_q: u64 = aligned.f_q.iter().sum();
            let excluded_q: u64 = aligned.excluded_new.iter().map(|c| f_q.get(c)).sum();
            prop_assert_eq!(support_q + excluded_q, f_q.total());
            prop_assert_eq!(aligned.n_p, f_p.total());
            prop_assert!(aligned.f_p.iter().all(|&c| c > 0));
        }
    }
}

#[test]
fn negative_terms_occur_while_sums_stay_non_negative() {
    // sweep a deterministic corpus and demand at least one negative local
    // contribution under a non-negative aggregate
    let mut found_negative_term = false;
    for seed in 0u64..200 {
        let k = 2 + (seed % 7) as usize;
        let p_counts: Vec<u64> = (0..k).map(|i| 1 + (seed * 31 + i as u64 * 17) % 100).collect();
        let q_counts: Vec<u64> = (0..k).map(|i| 1 + (seed * 13 + i as u64 * 41) % 100).collect();
        let n_p: u64 = p_counts.iter().sum();
        let n_q: u64 = q_counts.iter().sum();
        let mut bits = 0.0;
        let mut has_negative = false;
        for (p, q) in p_counts.iter().zip(&q_counts) {
            let pi = *p as f64 / n_p as f64;
            let qi = *q as f64 / n_q as f64;
            let term = qi * (qi / pi).log2();
            if term < 0.0 {
                has_negative = true;
            }
            bits += term;
        }
        assert!(bits >= -1e-12, "aggregate went negative: {bits}");
        if has_negative && bits >= 0.0 {
            found_negative_term = true;
        }
    }
    assert!(found_negative_term);
}

#[test]
fn expected_information_rejects_unnormalized_input() {
    assert!(expected_information(&[0.4, 0.4], &[0.5, 0.5]).is_err());
    assert!(expected_information(&[0.5, 0.5], &[0.9, 0.3]).is_err());
}
