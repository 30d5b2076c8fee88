//! Serialization of reports: JSON schemas, CSV tables, DOT maps.

use citent_core::categories::CategoryReport;
use citent_core::environment::{FactorSolution, MdsMap};
use citent_core::ingest::{escape_csv_field, SummaryStats};
use citent_core::rankings::{ChangeReport, MatrixTerm, NormalizedEntry, VectorChange};
use citent_core::synth::{EventKind, GroundTruth, SynthConfig, SynthEvent};
use serde::{Deserialize, Serialize};

#[derive(Debug, Serialize)]
pub struct StatsJson {
    pub journals: usize,
    pub relations: usize,
    pub total_citations: u64,
    pub relations_after_filter: usize,
    pub citations_after_filter: u64,
}

impl From<SummaryStats> for StatsJson {
    fn from(stats: SummaryStats) -> Self {
        StatsJson {
            journals: stats.journals,
            relations: stats.relations,
            total_citations: stats.total_citations,
            relations_after_filter: stats.relations_after_filter,
            citations_after_filter: stats.citations_after_filter,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct DiffJson {
    pub axis: String,
    pub file_i_bits: f64,
    pub file_i_millibits: f64,
    pub positive_contributors: usize,
    pub matched: usize,
    pub dropped: usize,
    pub added: usize,
    pub omitted_no_support: usize,
    pub entries: Vec<DiffEntryJson>,
}

#[derive(Debug, Serialize)]
pub struct DiffEntryJson {
    pub journal: String,
    pub delta_i_bits: Option<f64>,
    pub vector_i_bits: Option<f64>,
    pub n: Option<usize>,
    pub i_per_log2n: Option<f64>,
    pub i_per_n: Option<f64>,
    pub matrix_term: f64,
}

pub fn diff_json(report: &ChangeReport) -> String {
    let json = DiffJson {
        axis: report.axis.as_str().to_string(),
        file_i_bits: report.file_i_bits,
        file_i_millibits: report.file_i_millibits(),
        positive_contributors: report.positive_contributors,
        matched: report.matched,
        dropped: report.dropped,
        added: report.added,
        omitted_no_support: report.omitted_no_support,
        entries: report
            .entries
            .iter()
            .map(|entry| DiffEntryJson {
                journal: entry.journal.to_string(),
                delta_i_bits: entry.delta_i_bits,
                vector_i_bits: entry.vector_i_bits,
                n: entry.n_comparable,
                i_per_log2n: entry.i_per_log2n,
                i_per_n: entry.i_per_n,
                matrix_term: entry.matrix_term,
            })
            .collect(),
    };
    let mut body = serde_json::to_string_pretty(&json).expect("report serializes");
    body.push('\n');
    body
}

fn opt(value: Option<f64>) -> String {
    value.map(|v| v.to_string()).unwrap_or_default()
}

pub fn diff_csv(report: &ChangeReport) -> String {
    let mut out = String::from("journal,delta_i_bits,vector_i_bits,n,i_per_log2n,i_per_n,matrix_term\n");
    for entry in &report.entries {
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            escape_csv_field(entry.journal.as_str()),
            opt(entry.delta_i_bits),
            opt(entry.vector_i_bits),
            entry.n_comparable.map(|n| n.to_string()).unwrap_or_default(),
            opt(entry.i_per_log2n),
            opt(entry.i_per_n),
            entry.matrix_term,
        ));
    }
    out
}

pub fn vector_ranking_csv(entries: &[VectorChange]) -> String {
    let mut out = String::from("journal,i_bits,n\n");
    for entry in entries {
        out.push_str(&format!(
            "{},{},{}\n",
            escape_csv_field(entry.journal.as_str()),
            entry.i_bits,
            entry.n_comparable
        ));
    }
    out
}

pub fn normalized_ranking_csv(entries: &[NormalizedEntry]) -> String {
    let mut out = String::from("journal,i_bits,n,i_per_log2n,i_per_n\n");
    for entry in entries {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            escape_csv_field(entry.journal.as_str()),
            entry.i_bits,
            entry.n_comparable,
            entry.i_per_log2n,
            entry.i_per_n
        ));
    }
    out
}

pub fn matrix_term_csv(terms: &[MatrixTerm]) -> String {
    let mut out = String::from("journal,matrix_term\n");
    for entry in terms {
        out.push_str(&format!(
            "{},{}\n",
            escape_csv_field(entry.journal.as_str()),
            entry.term
        ));
    }
    out
}

pub fn categories_csv(report: &CategoryReport) -> String {
    let mut out = String::from("category,i_sum_bits,n_journals,i_avg_bits\n");
    for change in &report.changes {
        out.push_str(&format!(
            "{},{},{},{}\n",
            escape_csv_field(&change.category),
            change.i_sum_bits,
            change.n_journals,
            change.i_avg_bits
        ));
    }
    out
}

/// Loadings table: column header, then a row of explained-variance
/// percentages, then one row per journal.
pub fn factors_csv(solution: &FactorSolution) -> String {
    let mut out = String::from("journal");
    for factor in 0..solution.retained {
        out.push_str(&format!(",factor_{factor}"));
    }
    out.push('\n');
    out.push_str("explained_variance_pct");
    for pct in &solution.explained_variance_pct {
        out.push_str(&format!(",{pct}"));
    }
    out.push('\n');
    for (journal, row) in solution.journals.iter().zip(&solution.loadings) {
        out.push_str(&escape_csv_field(journal.as_str()));
        for value in row {
            out.push_str(&format!(",{value}"));
        }
        out.push('\n');
    }
    out
}

/// The factor a journal belongs to (argmax |loading|) and that loading.
fn dominant_factor(solution: &FactorSolution, row: usize) -> Option<(usize, f64)> {
    let loadings = &solution.loadings[row];
    (0..solution.retained)
        .max_by(|&a, &b| loadings[a].abs().total_cmp(&loadings[b].abs()))
        .map(|factor| (factor, loadings[factor]))
}

pub fn map_csv(solution: &FactorSolution, map: &MdsMap) -> String {
    let mut out = String::from("journal,x,y,factor,loading\n");
    for (row, journal) in solution.journals.iter().enumerate() {
        let [x, y] = map.coordinates[row];
        let (factor, loading) = match dominant_factor(solution, row) {
            Some((factor, loading)) => (factor.to_string(), loading.to_string()),
            None => (String::new(), String::new()),
        };
        out.push_str(&format!(
            "{},{x},{y},{factor},{loading}\n",
            escape_csv_field(journal.as_str())
        ));
    }
    out
}

fn dot_quote(id: &str) -> String {
    format!("\"{}\"", id.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Undirected DOT graph of the environment: nodes carry fixed 2-D positions
/// from the embedding and a fill color indexing their dominant factor.
pub fn map_dot(name: &str, solution: &FactorSolution, map: &MdsMap) -> String {
    let mut out = String::new();
    out.push_str(&format!("graph {name} {{\n"));
    out.push_str(&format!(
        "  // normalized stress {} after {} iterations\n",
        map.stress, map.iterations
    ));
    out.push_str("  node [shape=ellipse, style=filled, colorscheme=set312];\n");
    for (row, journal) in solution.journals.iter().enumerate() {
        let [x, y] = map.coordinates[row];
        let color = match dominant_factor(solution, row) {
            // set312 colors are indexed 1..=12
            Some((factor, _)) => format!(", fillcolor={}", factor % 12 + 1),
            None => String::from(", fillcolor=white"),
        };
        out.push_str(&format!(
            "  {} [pos=\"{x:.6},{y:.6}!\"{color}];\n",
            dot_quote(journal.as_str())
        ));
    }
    out.push_str("}\n");
    out
}

#[derive(Debug, Serialize)]
struct TruthJson<'a> {
    affected: Vec<TruthAffected>,
    events: &'a [CliSynthEvent],
    clusters: TruthClusters,
}

#[derive(Debug, Serialize)]
struct TruthAffected {
    journal: String,
    kind: &'static str,
}

#[derive(Debug, Serialize)]
struct TruthClusters {
    prior: std::collections::BTreeMap<String, usize>,
    posterior: std::collections::BTreeMap<String, usize>,
}

pub fn truth_json(truth: &GroundTruth, events: &[CliSynthEvent]) -> String {
    let json = TruthJson {
        affected: truth
            .affected
            .iter()
            .map(|(journal, kind)| TruthAffected {
                journal: journal.to_string(),
                kind: kind_name(*kind),
            })
            .collect(),
        events,
        clusters: TruthClusters {
            prior: truth
                .prior_clusters
                .iter()
                .map(|(j, c)| (j.to_string(), *c))
                .collect(),
            posterior: truth
                .posterior_clusters
                .iter()
                .map(|(j, c)| (j.to_string(), *c))
                .collect(),
        },
    };
    let mut body = serde_json::to_string_pretty(&json).expect("truth serializes");
    body.push('\n');
    body
}

fn kind_name(kind: EventKind) -> &'static str {
    kind.as_str()
}

/// JSON mirror of the generator configuration.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CliSynthConfig {
    pub n_journals: usize,
    pub n_clusters: usize,
    pub within_cluster_rate: f64,
    pub between_cluster_rate: f64,
    #[serde(default = "default_growth")]
    pub growth_factor: f64,
    #[serde(default)]
    pub events: Vec<CliSynthEvent>,
    pub rng_seed: u64,
}

fn default_growth() -> f64 {
    1.0
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CliSynthEvent {
    EmergentCluster { size: usize, strength: f64 },
    Merge { a: usize, b: usize },
    PreferentialGrowth { exponent: f64 },
}

impl From<&SynthEvent> for CliSynthEvent {
    fn from(event: &SynthEvent) -> Self {
        match *event {
            SynthEvent::EmergentCluster { size, strength } => {
                CliSynthEvent::EmergentCluster { size, strength }
            }
            SynthEvent::Merge { a, b } => CliSynthEvent::Merge { a, b },
            SynthEvent::PreferentialGrowth { exponent } => {
                CliSynthEvent::PreferentialGrowth { exponent }
            }
        }
    }
}

impl From<&CliSynthEvent> for SynthEvent {
    fn from(event: &CliSynthEvent) -> Self {
        match *event {
            CliSynthEvent::EmergentCluster { size, strength } => {
                SynthEvent::EmergentCluster { size, strength }
            }
            CliSynthEvent::Merge { a, b } => SynthEvent::Merge { a, b },
            CliSynthEvent::PreferentialGrowth { exponent } => {
                SynthEvent::PreferentialGrowth { exponent }
            }
        }
    }
}

impl From<&CliSynthConfig> for SynthConfig {
    fn from(config: &CliSynthConfig) -> Self {
        SynthConfig {
            n_journals: config.n_journals,
            n_clusters: config.n_clusters,
            within_cluster_rate: config.within_cluster_rate,
            between_cluster_rate: config.between_cluster_rate,
            growth_factor: config.growth_factor,
            events: config.events.iter().map(SynthEvent::from).collect(),
            rng_seed: config.rng_seed,
        }
    }
}

impl From<&SynthConfig> for CliSynthConfig {
    fn from(config: &SynthConfig) -> Self {
        CliSynthConfig {
            n_journals: config.n_journals,
            n_clusters: config.n_clusters,
            within_cluster_rate: config.within_cluster_rate,
            between_cluster_rate: config.between_cluster_rate,
            growth_factor: config.growth_factor,
            events: config.events.iter().map(CliSynthEvent::from).collect(),
            rng_seed: config.rng_seed,
        }
    }
}
