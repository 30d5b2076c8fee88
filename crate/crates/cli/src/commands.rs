//! Subcommand implementations.

use std::path::Path;

use citent_core::categories::{macro_journal_change, CategoryScheme};
use citent_core::environment::{
    correlation_matrix, delineate, factor_solution_with, mds_embed,
};
use citent_core::ingest::{
    align_years, apply_name_changes, drop_single_relations, parse_edge_list, parse_name_changes,
    AlignedPair, Axis, CitationSnapshot, JournalId,
};
use citent_core::rankings::{
    build_change_report, matrix_term_ranking, normalized_ranking, vector_change_ranking,
};
use citent_core::synth::{generate_pair, SynthConfig};
use serde_json::json;

use crate::manifest::RunManifest;
use crate::output::CliError;
use crate::render;
use crate::{CategoriesArgs, CommonInputs, DiffArgs, EnvArgs, PresetArg, SynthArgs};

pub fn stats(file: &Path) -> Result<(), CliError> {
    let text = crate::output::read_file(file)?;
    let snapshot = parse_edge_list(0, &text).map_err(|e| CliError::Parse {
        path: file.to_path_buf(),
        message: e.to_string(),
    })?;
    let stats = citent_core::ingest::summary_stats(&snapshot);
    let json = render::StatsJson::from(stats);
    println!("{}", serde_json::to_string_pretty(&json).expect("stats serialize"));
    Ok(())
}

/// Reads, optionally relabels, and optionally filters both years.
fn load_pair(
    inputs: &CommonInputs,
    manifest: &mut RunManifest,
) -> Result<(CitationSnapshot, CitationSnapshot), CliError> {
    let prior_text = manifest.record_input(&inputs.prior)?;
    let mut prior = parse_edge_list(0, &prior_text).map_err(|e| CliError::Parse {
        path: inputs.prior.clone(),
        message: e.to_string(),
    })?;
    let posterior_text = manifest.record_input(&inputs.posterior)?;
    let mut posterior = parse_edge_list(1, &posterior_text).map_err(|e| CliError::Parse {
        path: inputs.posterior.clone(),
        message: e.to_string(),
    })?;

    if let Some(changes_path) = &inputs.changes {
        let changes_text = manifest.record_input(changes_path)?;
        let changes = parse_name_changes(&changes_text).map_err(|e| CliError::Parse {
            path: changes_path.clone(),
            message: e.to_string(),
        })?;
        // renames carry old-year names forward onto the posterior's naming
        let (renamed, warnings) = apply_name_changes(&prior, &changes).map_err(CliError::data)?;
        prior = renamed;
        for warning in warnings {
            eprintln!("citent: warning: {warning}");
        }
    }
    if !inputs.keep_singles {
        prior = drop_single_relations(&prior);
        posterior = drop_single_relations(&posterior);
    }
    Ok((prior, posterior))
}

fn load_aligned(
    inputs: &CommonInputs,
    manifest: &mut RunManifest,
) -> Result<AlignedPair, CliError> {
    let (prior, posterior) = load_pair(inputs, manifest)?;
    Ok(align_years(prior, posterior))
}

pub fn diff(args: &DiffArgs, argv: &[String]) -> Result<(), CliError> {
    let axis: Axis = args.axis.into();
    let mut manifest = RunManifest::new(
        "diff",
        argv,
        json!({
            "axis": axis.as_str(),
            "keep_singles": args.inputs.keep_singles,
            "changes": args.inputs.changes.as_ref().map(|p| p.display().to_string()),
        }),
    );
    let pair = load_aligned(&args.inputs, &mut manifest)?;
    let report = build_change_report(&pair, axis).map_err(CliError::data)?;

    let stem = format!("diff_{}", axis.as_str());
    let out = &args.inputs.out;
    manifest.write_output(&out.join(format!("{stem}.json")), &render::diff_json(&report))?;
    manifest.write_output(&out.join(format!("{stem}.csv")), &render::diff_csv(&report))?;
    manifest.store(out, &stem)?;
    Ok(())
}

pub fn rank(args: &DiffArgs, argv: &[String]) -> Result<(), CliError> {
    let axis: Axis = args.axis.into();
    let mut manifest = RunManifest::new(
        "rank",
        argv,
        json!({
            "axis": axis.as_str(),
            "keep_singles": args.inputs.keep_singles,
            "changes": args.inputs.changes.as_ref().map(|p| p.display().to_string()),
        }),
    );
    let pair = load_aligned(&args.inputs, &mut manifest)?;
    let vectors = vector_change_ranking(&pair, axis);
    let normalized = normalized_ranking(&vectors.entries);
    let terms = matrix_term_ranking(&pair, axis);

    let stem = format!("rank_{}", axis.as_str());
    let out = &args.inputs.out;
    manifest.write_output(
        &out.join(format!("{stem}_vector.csv")),
        &render::vector_ranking_csv(&vectors.entries),
    )?;
    manifest.write_output(
        &out.join(format!("{stem}_i_per_log2n.csv")),
        &render::normalized_ranking_csv(&normalized.by_log2n),
    )?;
    manifest.write_output(
        &out.join(format!("{stem}_i_per_n.csv")),
        &render::normalized_ranking_csv(&normalized.by_n),
    )?;
    manifest.write_output(
        &out.join(format!("{stem}_matrix_term.csv")),
        &render::matrix_term_csv(&terms),
    )?;
    manifest.store(out, &stem)?;
    Ok(())
}

pub fn categories(args: &CategoriesArgs, argv: &[String]) -> Result<(), CliError> {
    let axis: Axis = args.axis.into();
    let mut manifest = RunManifest::new(
        "categories",
        argv,
        json!({
            "axis": axis.as_str(),
            "keep_singles": args.inputs.keep_singles,
            "scheme": args.scheme.display().to_string(),
        }),
    );
    let pair = load_aligned(&args.inputs, &mut manifest)?;
    let scheme_text = manifest.record_input(&args.scheme)?;
    let scheme = CategoryScheme::parse(&scheme_text).map_err(|e| CliError::Parse {
        path: args.scheme.clone(),
        message: e.to_string(),
    })?;
    let vectors = vector_change_ranking(&pair, axis);
    let report = macro_journal_change(&vectors.entries, &scheme);
    if report.unscored_members > 0 {
        eprintln!(
            "citent: note: {} scheme journal(s) had no vector change value and were skipped",
            report.unscored_members
        );
    }

    let stem = format!("categories_{}", axis.as_str());
    let out = &args.inputs.out;
    manifest.write_output(
        &out.join(format!("{stem}.csv")),
        &render::categories_csv(&report),
    )?;
    manifest.store(out, &stem)?;
    Ok(())
}

pub fn env(args: &EnvArgs, argv: &[String]) -> Result<(), CliError> {
    let axis: Axis = args.axis.into();
    let seed = JournalId::new(&args.seed).map_err(CliError::data)?;
    let mut manifest = RunManifest::new(
        "env",
        argv,
        json!({
            "axis": axis.as_str(),
            "seed": seed.as_str(),
            "threshold_pct": args.threshold,
            "zoom_pct": args.zoom,
            "rotate": !args.no_rotate,
            "keep_singles": args.inputs.keep_singles,
        }),
    );
    let (prior, posterior) = load_pair(&args.inputs, &mut manifest)?;
    let out = &args.inputs.out;

    let mut jobs = vec![
        ("env_prior", &prior, args.threshold),
        ("env_posterior", &posterior, args.threshold),
    ];
    if let Some(zoom_pct) = args.zoom {
        jobs.push(("env_prior_zoom", &prior, zoom_pct));
        jobs.push(("env_posterior_zoom", &posterior, zoom_pct));
    }
    for (stem, snapshot, threshold_pct) in jobs {
        let environment = delineate(snapshot, &seed, threshold_pct).map_err(CliError::data)?;
        let correlation = correlation_matrix(&environment, axis).map_err(CliError::data)?;
        let solution = factor_solution_with(&correlation, !args.no_rotate);
        let map = mds_embed(&correlation).map_err(CliError::data)?;

        manifest.write_output(
            &out.join(format!("{stem}_factors.csv")),
            &render::factors_csv(&solution),
        )?;
        manifest.write_output(&out.join(format!("{stem}_map.csv")), &render::map_csv(&solution, &map))?;
        manifest.write_output(
            &out.join(format!("{stem}_map.dot")),
            &render::map_dot(stem, &solution, &map),
        )?;
    }
    manifest.store(out, "env")?;
    Ok(())
}

pub fn synth(args: &SynthArgs, argv: &[String]) -> Result<(), CliError> {
    let mut manifest = RunManifest::new("synth", argv, json!({}));
    let cli_config: render::CliSynthConfig = match &args.config {
        Some(path) => {
            let text = manifest.record_input(path)?;
            serde_json::from_str(&text).map_err(|e| CliError::Parse {
                path: path.clone(),
                message: e.to_string(),
            })?
        }
        None => {
            let preset = match args.preset {
                PresetArg::Null => SynthConfig::null_scenario(),
                PresetArg::Emergent => SynthConfig::emergent_scenario(),
                PresetArg::Matthew => SynthConfig::preferential_scenario(),
            };
            (&preset).into()
        }
    };
    manifest.parameters = serde_json::to_value(&cli_config).expect("config serializes");

    let config: SynthConfig = (&cli_config).into();
    let (prior, posterior, truth) = generate_pair(&config).map_err(CliError::data)?;

    let out = &args.out;
    manifest.write_output(
        &out.join("prior.csv"),
        &citent_core::ingest::serialize_edge_list(&prior),
    )?;
    manifest.write_output(
        &out.join("posterior.csv"),
        &citent_core::ingest::serialize_edge_list(&posterior),
    )?;
    manifest.write_output(
        &out.join("truth.json"),
        &render::truth_json(&truth, &cli_config.events),
    )?;
    manifest.store(out, "synth")?;
    Ok(())
}
