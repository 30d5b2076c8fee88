//! Environment-level invariants: threshold monotonicity, trace preservation,
//! loading sign invariance, and the synthetic structural-change scenario.

use citent_core::environment::{
    central_tendency, correlation_matrix, delineate, factor_solution, mds_embed,
    CorrelationMatrix, FactorSolution,
};
use citent_core::ingest::{
    align_years, drop_single_relations, Axis, CitationSnapshot, JournalId,
};
use citent_core::rankings::vector_change_ranking;
use citent_core::synth::{generate_pair, journal_name, score_detection, SynthConfig};
use proptest::prelude::*;

fn jid(index: u8) -> JournalId {
    JournalId::new(&format!("J{index:02}")).unwrap()
}

fn relations() -> impl Strategy<Value = Vec<(u8, u8, u64)>> {
    proptest::collection::vec(((0u8..12), (0u8..12), (1u64..=60)), 4..80)
}

proptest! {
    #[test]
    fn raising_the_threshold_never_adds_journals(
        triples in relations(),
        low in 1u32..40,
        spread in 1u32..40,
    ) {
        let snapshot = CitationSnapshot::from_relations(
            0,
            triples.iter().map(|&(a, b, c)| (jid(a), jid(b), c)),
        );
        let seed = jid(triples[0].0);
        let low_pct = low as f64;
        let high_pct = (low + spread).min(100) as f64;
        let loose = delineate(&snapshot, &seed, low_pct);
        let tight = delineate(&snapshot, &seed, high_pct);
        if let (Ok(loose), Ok(tight)) = (loose, tight) {
            for journal in &tight.journals {
                prop_assert!(loose.contains(journal), "{journal} appeared when tightening");
            }
        }
    }

    #[test]
    fn eigenvalue_sum_matches_dimension(triples in relations()) {
        let snapshot = CitationSnapshot::from_relations(
            0,
            triples.iter().map(|&(a, b, c)| (jid(a), jid(b), c)),
        );
        let seed = jid(triples[0].0);
        if let Ok(env) = delineate(&snapshot, &seed, 1.0) {
            if env.len() >= 2 {
                let corr = correlation_matrix(&env, Axis::Cited).unwrap();
                let solution = factor_solution(&corr);
                let trace: f64 = solution.eigenvalues.iter().sum();
                prop_assert!((trace - env.len() as f64).abs() < 1e-6,
                    "trace {trace} vs dim {}", env.len());
                for row in &solution.loadings {
                    for &loading in row {
                        prop_assert!(loading.abs() <= 1.0 + 1e-6, "loading {loading} out of range");
                    }
                }
            }
        }
    }
}

fn flip_columns(solution: &FactorSolution, mask: &[bool]) -> FactorSolution {
    let mut flipped = solution.clone();
    for row in flipped.loadings.iter_mut() {
        for (value, &flip) in row.iter_mut().zip(mask) {
            if flip {
                *value = -*value;
            }
        }
    }
    flipped
}

#[test]
fn central_tendency_ignores_column_signs() {
    let journals: Vec<JournalId> = (0..4).map(jid).collect();
    let values = vec![
        vec![1.0, 0.9, 0.1, 0.0],
        vec![0.9, 1.0, 0.0, 0.1],
        vec![0.1, 0.0, 1.0, 0.9],
        vec![0.0, 0.1, 0.9, 1.0],
    ];
    let corr = CorrelationMatrix::from_values(journals, values).unwrap();
    let solution = factor_solution(&corr);
    assert!(solution.retained >= 1);
    let flipped = flip_columns(&solution, &vec![true; solution.retained]);
    for factor in 0..solution.retained {
        assert_eq!(
            central_tendency(&solution, factor).unwrap(),
            central_tendency(&flipped, factor).unwrap()
        );
    }
}

#[test]
fn smacof_stress_is_monotone_on_random_correlations() {
    // a handful of deterministic pseudo-random correlation matrices
    let mut state = 12345u64;
    let mut next_unit = move || {
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        ((state >> 11) as f64) / ((1u64 << 53) as f64)
    };
    for n in [4usize, 6, 9] {
        let journals: Vec<JournalId> = (0..n as u8).map(jid).collect();
        let mut values = vec![vec![0.0; n]; n];
        for i in 0..n {
            values[i][i] = 1.0;
            for j in i + 1..n {
                let r = next_unit() * 1.6 - 0.6;
                values[i][j] = r;
                values[j][i] = r;
            }
        }
        let corr = CorrelationMatrix::from_values(journals, values).unwrap();
        let map = mds_embed(&corr).unwrap();
        for window in map.stress_trace.windows(2) {
            assert!(window[1] <= window[0] + 1e-15, "stress rose: {window:?}");
        }
        assert!(map.stress.is_finite());
    }
}

/// The emergent-cluster scenario seen through the environment machinery: the
/// branching journals top the change ranking, the posterior solution gains a
/// factor, and the seed swings from its old factor to the new one.
#[test]
fn emergent_cluster_shows_up_as_a_new_factor() {
    let config = SynthConfig::emergent_scenario();
    let (prior, posterior, truth) = generate_pair(&config).unwrap();
    let prior = drop_single_relations(&prior);
    let posterior = drop_single_relations(&posterior);

    let pair = align_years(prior.clone(), posterior.clone());
    let ranking = vector_change_ranking(&pair, Axis::Cited);
    let detection = score_detection(&ranking.entries, &truth, 10);
    assert_eq!(detection.recall, 1.0, "all affected journals in the top 10");

    let seed = truth.affected.keys().next().unwrap().clone();
    let old_companions: Vec<JournalId> = (5..10).map(|i| journal_name(i, 200)).collect();

    let solve = |snapshot: &CitationSnapshot| {
        let env = delineate(snapshot, &seed, 1.0).unwrap();
        let corr = correlation_matrix(&env, Axis::Cited).unwrap();
        factor_solution(&corr)
    };
    let before = solve(&prior);
    let after = solve(&posterior);
    assert_eq!(
        after.retained,
        before.retained + 1,
        "posterior gains exactly one factor"
    );

    let seed_pos = |solution: &FactorSolution| {
        solution.journals.iter().position(|j| j == &seed).unwrap()
    };
    // prior: the seed sits on its cluster's dominant factor
    let prior_dominant = (0..before.retained)
        .max_by(|&a, &b| {
            before.loadings[seed_pos(&before)][a]
                .abs()
                .total_cmp(&before.loadings[seed_pos(&before)][b].abs())
        })
        .unwrap();
    assert!(before.loadings[seed_pos(&before)][prior_dominant].abs() > 0.6);

    // posterior: locate the old cluster's factor through the stable companions
    let old_indices: Vec<usize> = old_companions
        .iter()
        .filter_map(|j| after.journals.iter().position(|x| x == j))
        .collect();
    assert!(!old_indices.is_empty());
    let old_factor = (0..after.retained)
        .max_by(|&a, &b| {
            let ma: f64 = old_indices.iter().map(|&i| after.loadings[i][a].abs()).sum();
            let mb: f64 = old_indices.iter().map(|&i| after.loadings[i][b].abs()).sum();
            ma.total_cmp(&mb)
        })
        .unwrap();
    let new_factor = (0..after.retained)
        .max_by(|&a, &b| {
            after.loadings[seed_pos(&after)][a]
                .abs()
                .total_cmp(&after.loadings[seed_pos(&after)][b].abs())
        })
        .unwrap();
    assert_ne!(old_factor, new_factor);
    let on_old = after.loadings[seed_pos(&after)][old_factor].abs();
    let on_new = after.loadings[seed_pos(&after)][new_factor].abs();
    assert!(on_old < 0.2, "seed still clings to its old factor: {on_old}");
    assert!(on_new > 0.6, "seed does not lead the new factor: {on_new}");
}
