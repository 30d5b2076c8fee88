//! Aggregation and rank-correlation invariants.

use citent_core::categories::{macro_journal_change, spearman_rho, CategoryScheme};
use citent_core::ingest::JournalId;
use citent_core::rankings::VectorChange;
use proptest::prelude::*;

fn jid(index: usize) -> JournalId {
    JournalId::new(&format!("J{index:03}")).unwrap()
}

fn changes(n: usize) -> impl Strategy<Value = Vec<VectorChange>> {
    proptest::collection::vec((0.0f64..4.0, 2usize..40), n..=n).prop_map(|rows| {
        rows.into_iter()
            .enumerate()
            .map(|(i, (i_bits, n_comparable))| VectorChange {
                journal: jid(i),
                i_bits,
                n_comparable,
            })
            .collect()
    })
}

proptest! {
    #[test]
    fn partition_scheme_preserves_total_change(
        results in changes(24),
        cut_a in 1usize..23,
        cut_b in 1usize..23,
    ) {
        // each journal in exactly one of three categories
        let (lo, hi) = (cut_a.min(cut_b), cut_a.max(cut_b).max(cut_a.min(cut_b) + 1));
        let scheme = CategoryScheme::from_assignments(results.iter().enumerate().map(|(i, c)| {
            let label = if i < lo { "A" } else if i < hi { "B" } else { "C" };
            (c.journal.clone(), label.to_string())
        }));
        let report = macro_journal_change(&results, &scheme);
        let by_category: f64 = report.changes.iter().map(|c| c.i_sum_bits).sum();
        let by_journal: f64 = results.iter().map(|c| c.i_bits).sum();
        prop_assert!((by_category - by_journal).abs() < 1e-9);
        prop_assert_eq!(report.unscored_members, 0);
        for change in &report.changes {
            prop_assert!((change.i_avg_bits * change.n_journals as f64 - change.i_sum_bits).abs() < 1e-9);
        }
    }

    #[test]
    fn multi_membership_weights_the_total(results in changes(12), memberships in proptest::collection::vec(1usize..=3, 12)) {
        let scheme = CategoryScheme::from_assignments(
            results
                .iter()
                .zip(&memberships)
                .flat_map(|(change, &m)| {
                    (0..m).map(move |k| (change.journal.clone(), format!("CAT{k}")))
                }),
        );
        let report = macro_journal_change(&results, &scheme);
        let by_category: f64 = report.changes.iter().map(|c| c.i_sum_bits).sum();
        let weighted: f64 = results
            .iter()
            .zip(&memberships)
            .map(|(change, &m)| change.i_bits * m as f64)
            .sum();
        prop_assert!((by_category - weighted).abs() < 1e-9);
    }

    #[test]
    fn spearman_is_invariant_under_monotone_transforms(
        xs in proptest::collection::vec(-50.0f64..50.0, 3..40),
        ys_seed in proptest::collection::vec(-50.0f64..50.0, 3..40),
    ) {
        let n = xs.len().min(ys_seed.len());
        let xs = &xs[..n];
        let ys = &ys_seed[..n];
        if let Ok(base) = spearman_rho(xs, ys) {
            // strictly monotone transform of x: exp(x/20); of y: y^3 + 2y
            let tx: Vec<f64> = xs.iter().map(|v| (v / 20.0).exp()).collect();
            let ty: Vec<f64> = ys.iter().map(|v| v * v * v + 2.0 * v).collect();
            let transformed = spearman_rho(&tx, &ty).unwrap();
            prop_assert!((base - transformed).abs() < 1e-9);
        }
    }
}

#[test]
fn size_driven_categories_correlate_with_size() {
    // 20 categories, sizes spread 5..500; member change values i.i.d. from a
    // deterministic stream. Aggregate change then tracks size.
    let sizes: Vec<usize> = (0..20)
        .map(|k| (5.0 * (100.0f64).powf(k as f64 / 19.0)).round() as usize)
        .collect();
    let mut assignments = Vec::new();
    let mut results = Vec::new();
    let mut journal = 0usize;
    let mut state = 0x9e3779b97f4a7c15u64;
    let mut next_unit = move || {
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        ((state >> 11) as f64) / ((1u64 << 53) as f64)
    };
    for (k, &size) in sizes.iter().enumerate() {
        for _ in 0..size {
            let id = JournalId::new(&format!("J{journal:04}")).unwrap();
            assignments.push((id.clone(), format!("CAT{k:02}")));
            results.push(VectorChange {
                journal: id,
                i_bits: 0.05 + next_unit(),
                n_comparable: 5,
            });
            journal += 1;
        }
    }
    let scheme = CategoryScheme::from_assignments(assignments);
    let report = macro_journal_change(&results, &scheme);
    assert_eq!(report.changes.len(), 20);

    let mut by_label: Vec<_> = report.changes.iter().collect();
    by_label.sort_by(|a, b| a.category.cmp(&b.category));
    let x: Vec<f64> = sizes.iter().map(|&s| s as f64).collect();
    let y: Vec<f64> = by_label.iter().map(|c| c.i_sum_bits).collect();
    let rho = spearman_rho(&x, &y).unwrap();
    assert!(rho > 0.9, "rho = {rho}");
}
