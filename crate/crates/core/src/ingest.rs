//! Snapshot ingestion: edge-list parsing, journal identity, name changes,
//! year alignment, single-relation filtering, marginals and summary counts.
//!
//! The on-disk snapshot format is a UTF-8 CSV with header `citing,cited,count`,
//! one relation per line, `#` comment lines, `,` as delimiter and `"` quoting
//! for fields containing commas. [`parse_edge_list`] and [`serialize_edge_list`]
//! round-trip this format exactly.

use alloc::borrow::ToOwned;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// Canonical journal identifier: uppercased, trimmed, internal whitespace
/// runs collapsed to a single space. Matching is exact byte equality after
/// canonicalization, mirroring how ISI journal abbreviations behave in
/// practice.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct JournalId(String);

impl JournalId {
    pub fn new(raw: &str) -> Result<Self, IngestError> {
        let canonical = canonicalize(raw);
        if canonical.is_empty() {
            return Err(IngestError::EmptyJournalId);
        }
        Ok(JournalId(canonical))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for JournalId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

fn canonicalize(raw: &str) -> String {
    let mut out = String::with_capacity(raw.len());
    let mut pending_space = false;
    for ch in raw.trim().chars() {
        if ch.is_whitespace() {
            pending_space = true;
            continue;
        }
        if pending_space && !out.is_empty() {
            out.push(' ');
        }
        pending_space = false;
        for up in ch.to_uppercase() {
            out.push(up);
        }
    }
    out
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum IngestError {
    #[error("journal id is empty after canonicalization")]
    EmptyJournalId,
    #[error("line {line}: expected 3 fields `citing,cited,count`, got {fields}")]
    MalformedLine { line: usize, fields: usize },
    #[error("line {line}: unterminated quoted field")]
    UnterminatedQuote { line: usize },
    #[error("line {line}: count `{value}` is not a positive integer")]
    InvalidCount { line: usize, value: String },
    #[error("line {line}: {source}")]
    BadJournalId { line: usize, source: alloc::boxed::Box<IngestError> },
    #[error("line {line}: unknown name-change kind `{value}` (expected rename, merge or split)")]
    UnknownChangeKind { line: usize, value: String },
    #[error("rename record maps `{id}` to itself")]
    SelfRename { id: JournalId },
    #[error("conflicting rename records for `{old}`")]
    ConflictingRename { old: JournalId },
    #[error("rename records form a cycle through `{id}`")]
    RenameCycle { id: JournalId },
}

/// One year of the aggregated citation network: a sparse cited × citing
/// count matrix plus the registry of journals seen on either axis.
///
/// Immutable after construction; every stored relation has count ≥ 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CitationSnapshot {
    year: i32,
    /// cited journal → (citing journal → count ≥ 1)
    rows: BTreeMap<JournalId, BTreeMap<JournalId, u64>>,
    registry: BTreeSet<JournalId>,
    citing_processed: BTreeSet<JournalId>,
    total_citations: u64,
    relation_count: usize,
}

impl CitationSnapshot {
    /// Builds a snapshot from `(cited, citing, count)` triples. Duplicate
    /// pairs are summed; zero counts are dropped.
    pub fn from_relations<I>(year: i32, relations: I) -> Self
    where
        I: IntoIterator<Item = (JournalId, JournalId, u64)>,
    {
        let mut rows: BTreeMap<JournalId, BTreeMap<JournalId, u64>> = BTreeMap::new();
        for (cited, citing, count) in relations {
            if count == 0 {
                continue;
            }
            *rows.entry(cited).or_default().entry(citing).or_insert(0) += count;
        }
        Self::from_rows(year, rows)
    }

    fn from_rows(year: i32, rows: BTreeMap<JournalId, BTreeMap<JournalId, u64>>) -> Self {
        let mut registry = BTreeSet::new();
        let mut citing_processed = BTreeSet::new();
        let mut total = 0u64;
        let mut relation_count = 0usize;
        for (cited, row) in &rows {
            registry.insert(cited.clone());
            for (citing, count) in row {
                registry.insert(citing.clone());
                citing_processed.insert(citing.clone());
                total += count;
                relation_count += 1;
            }
        }
        CitationSnapshot {
            year,
            rows,
            registry,
            citing_processed,
            total_citations: total,
            relation_count,
        }
    }

    pub fn year(&self) -> i32 {
        self.year
    }

    pub fn registry(&self) -> &BTreeSet<JournalId> {
        &self.registry
    }

    /// Journals that appear on the citing axis at least once. Journals cited
    /// but never citing stay in the registry and take part in cited-side
    /// analyses only.
    pub fn citing_processed(&self) -> &BTreeSet<JournalId> {
        &self.citing_processed
    }

    pub fn total_citations(&self) -> u64 {
        self.total_citations
    }

    pub fn relation_count(&self) -> usize {
        self.relation_count
    }

    pub fn count(&self, cited: &JournalId, citing: &JournalId) -> u64 {
        self.rows
            .get(cited)
            .and_then(|row| row.get(citing))
            .copied()
            .unwrap_or(0)
    }

    /// The citing → count row of one cited journal, if it has any relations.
    pub fn row(&self, cited: &JournalId) -> Option<&BTreeMap<JournalId, u64>> {
        self.rows.get(cited)
    }

    pub fn relations(&self) -> impl Iterator<Item = (&JournalId, &JournalId, u64)> {
        self.rows
            .iter()
            .flat_map(|(cited, row)| row.iter().map(move |(citing, c)| (cited, citing, *c)))
    }

    /// citing journal → (cited journal → count), built on demand.
    pub fn column_map(&self) -> BTreeMap<JournalId, BTreeMap<JournalId, u64>> {
        let mut cols: BTreeMap<JournalId, BTreeMap<JournalId, u64>> = BTreeMap::new();
        for (cited, citing, count) in self.relations() {
            cols.entry(citing.clone())
                .or_default()
                .insert(cited.clone(), count);
        }
        cols
    }

    /// Swaps the cited and citing axes.
    pub fn transposed(&self) -> CitationSnapshot {
        CitationSnapshot::from_rows(self.year, self.column_map())
    }
}

/// Parses the snapshot CSV format. A leading `citing,cited,count` header is
/// optional; duplicate relation lines are summed.
pub fn parse_edge_list(year: i32, text: &str) -> Result<CitationSnapshot, IngestError> {
    let mut relations: Vec<(JournalId, JournalId, u64)> = Vec::new();
    let mut seen_data = false;
    for (idx, raw_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw_line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields = split_csv_line(line, line_no)?;
        if !seen_data && is_header(&fields, &["citing", "cited", "count"]) {
            seen_data = true;
            continue;
        }
        seen_data = true;
        if fields.len() != 3 {
            return Err(IngestError::MalformedLine {
                line: line_no,
                fields: fields.len(),
            });
        }
        let citing = journal_at(&fields[0], line_no)?;
        let cited = journal_at(&fields[1], line_no)?;
        let count: u64 = fields[2]
            .trim()
            .parse()
            .map_err(|_| IngestError::InvalidCount {
                line: line_no,
                value: fields[2].clone(),
            })?;
        if count == 0 {
            return Err(IngestError::InvalidCount {
                line: line_no,
                value: fields[2].clone(),
            });
        }
        relations.push((cited, citing, count));
    }
    Ok(CitationSnapshot::from_relations(year, relations))
}

/// Renders a snapshot in the same CSV format `parse_edge_list` reads.
/// Output is deterministic: header first, then relations sorted by
/// (cited, citing).
pub fn serialize_edge_list(snapshot: &CitationSnapshot) -> String {
    let mut out = String::from("citing,cited,count\n");
    for (cited, citing, count) in snapshot.relations() {
        out.push_str(&escape_csv_field(citing.as_str()));
        out.push(',');
        out.push_str(&escape_csv_field(cited.as_str()));
        out.push(',');
        out.push_str(&alloc::format!("{count}"));
        out.push('\n');
    }
    out
}

fn journal_at(field: &str, line: usize) -> Result<JournalId, IngestError> {
    JournalId::new(field).map_err(|e| IngestError::BadJournalId {
        line,
        source: alloc::boxed::Box::new(e),
    })
}

fn is_header(fields: &[String], expected: &[&str]) -> bool {
    fields.len() == expected.len()
        && fields
            .iter()
            .zip(expected)
            .all(|(f, e)| f.trim().eq_ignore_ascii_case(e))
}

/// Splits one CSV line on `,` honoring `"` quoting; `""` inside a quoted
/// field is a literal quote.
pub fn split_csv_line(line: &str, line_no: usize) -> Result<Vec<String>, IngestError> {
    let mut fields = Vec::new();
    let mut field = String::new();
    let mut chars = line.chars().peekable();
    let mut in_quotes = false;
    loop {
        match chars.next() {
            None => {
                if in_quotes {
                    return Err(IngestError::UnterminatedQuote { line: line_no });
                }
                fields.push(field);
                return Ok(fields);
            }
            Some('"') if in_quotes => {
                if chars.peek() == Some(&'"') {
                    chars.next();
                    field.push('"');
                } else {
                    in_quotes = false;
                }
            }
            Some('"') if field.is_empty() => in_quotes = true,
            Some(',') if !in_quotes => {
                fields.push(core::mem::take(&mut field));
            }
            Some(ch) => field.push(ch),
        }
    }
}

/// Quotes a CSV field only when it needs it.
pub fn escape_csv_field(field: &str) -> String {
    if field.contains(',') || field.contains('"') {
        let mut out = String::with_capacity(field.len() + 2);
        out.push('"');
        for ch in field.chars() {
            if ch == '"' {
                out.push('"');
            }
            out.push(ch);
        }
        out.push('"');
        out
    } else {
        field.to_owned()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NameChangeKind {
    Rename,
    Merge,
    Split,
}

impl fmt::Display for NameChangeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            NameChangeKind::Rename => "rename",
            NameChangeKind::Merge => "merge",
            NameChangeKind::Split => "split",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NameChangeRecord {
    pub old_id: JournalId,
    pub new_id: JournalId,
    pub kind: NameChangeKind,
}

/// Parses the name-change CSV `old,new,kind`, kind ∈ {rename, merge, split}.
pub fn parse_name_changes(text: &str) -> Result<Vec<NameChangeRecord>, IngestError> {
    let mut records = Vec::new();
    let mut seen_data = false;
    for (idx, raw_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw_line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields = split_csv_line(line, line_no)?;
        if !seen_data && is_header(&fields, &["old", "new", "kind"]) {
            seen_data = true;
            continue;
        }
        seen_data = true;
        if fields.len() != 3 {
            return Err(IngestError::MalformedLine {
                line: line_no,
                fields: fields.len(),
            });
        }
        let old_id = journal_at(&fields[0], line_no)?;
        let new_id = journal_at(&fields[1], line_no)?;
        let kind = match fields[2].trim().to_ascii_lowercase().as_str() {
            "rename" => NameChangeKind::Rename,
            "merge" => NameChangeKind::Merge,
            "split" => NameChangeKind::Split,
            other => {
                return Err(IngestError::UnknownChangeKind {
                    line: line_no,
                    value: other.to_owned(),
                })
            }
        };
        if kind == NameChangeKind::Rename && old_id == new_id {
            return Err(IngestError::SelfRename { id: old_id });
        }
        records.push(NameChangeRecord {
            old_id,
            new_id,
            kind,
        });
    }
    Ok(records)
}

/// A merge or split record that was recorded but deliberately not applied.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkippedChange {
    pub record: NameChangeRecord,
}

impl fmt::Display for SkippedChange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} record `{}` -> `{}` not applied; cross-year identity kept as-is",
            self.record.kind, self.record.old_id, self.record.new_id
        )
    }
}

/// Applies rename records to both axes of a snapshot, merging counts when
/// the target id already exists. Chains (a→b, b→c) resolve transitively;
/// cycles are rejected. Merge and split records are skipped, one warning
/// each; controlling for them is out of scope, matching how the source
/// data's own turnover file is normally handled.
pub fn apply_name_changes(
    snapshot: &CitationSnapshot,
    changes: &[NameChangeRecord],
) -> Result<(CitationSnapshot, Vec<SkippedChange>), IngestError> {
    let mut warnings = Vec::new();
    let mut rename: BTreeMap<&JournalId, &JournalId> = BTreeMap::new();
    for record in changes {
        match record.kind {
            NameChangeKind::Rename => {
                if record.old_id == record.new_id {
                    return Err(IngestError::SelfRename {
                        id: record.old_id.clone(),
                    });
                }
                if let Some(existing) = rename.get(&record.old_id) {
                    if **existing != record.new_id {
                        return Err(IngestError::ConflictingRename {
                            old: record.old_id.clone(),
                        });
                    }
                } else {
                    rename.insert(&record.old_id, &record.new_id);
                }
            }
            NameChangeKind::Merge | NameChangeKind::Split => warnings.push(SkippedChange {
                record: record.clone(),
            }),
        }
    }

    // Resolve each old id to its terminal target, detecting cycles.
    let mut resolved: BTreeMap<JournalId, JournalId> = BTreeMap::new();
    for start in rename.keys() {
        let mut visited: BTreeSet<&JournalId> = BTreeSet::new();
        let mut current: &JournalId = start;
        while let Some(next) = rename.get(current) {
            if !visited.insert(current) {
                return Err(IngestError::RenameCycle {
                    id: (*start).clone(),
                });
            }
            current = next;
        }
        resolved.insert((*start).clone(), current.clone());
    }

    let relabel = |id: &JournalId| -> JournalId { resolved.get(id).cloned().unwrap_or_else(|| id.clone()) };
    let relations = snapshot
        .relations()
        .map(|(cited, citing, count)| (relabel(cited), relabel(citing), count));
    Ok((
        CitationSnapshot::from_relations(snapshot.year, relations),
        warnings,
    ))
}

/// Two aligned yearly snapshots with the matched/dropped/added partition of
/// their registries.
#[derive(Debug, Clone)]
pub struct AlignedPair {
    pub prior: CitationSnapshot,
    pub posterior: CitationSnapshot,
    pub matched: BTreeSet<JournalId>,
    pub dropped: BTreeSet<JournalId>,
    pub added: BTreeSet<JournalId>,
}

/// Partitions the registries of two snapshots. Name changes must already be
/// applied so that ids are comparable; relations involving unmatched
/// journals stay in the snapshots but are excluded from cross-year
/// comparison downstream.
pub fn align_years(prior: CitationSnapshot, posterior: CitationSnapshot) -> AlignedPair {
    let matched: BTreeSet<JournalId> = prior
        .registry
        .intersection(&posterior.registry)
        .cloned()
        .collect();
    let dropped: BTreeSet<JournalId> = prior
        .registry
        .difference(&posterior.registry)
        .cloned()
        .collect();
    let added: BTreeSet<JournalId> = posterior
        .registry
        .difference(&prior.registry)
        .cloned()
        .collect();
    AlignedPair {
        prior,
        posterior,
        matched,
        dropped,
        added,
    }
}

/// Removes every relation with count == 1. These are the relations the
/// source compiles under "all others" and leaves out of the analysis.
/// Journals left with no relations drop out of the registry; the operation
/// is idempotent.
pub fn drop_single_relations(snapshot: &CitationSnapshot) -> CitationSnapshot {
    let relations = snapshot
        .relations()
        .filter(|&(_, _, count)| count >= 2)
        .map(|(cited, citing, count)| (cited.clone(), citing.clone(), count));
    CitationSnapshot::from_relations(snapshot.year, relations)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    Cited,
    Citing,
}

impl Axis {
    pub fn as_str(&self) -> &'static str {
        match self {
            Axis::Cited => "cited",
            Axis::Citing => "citing",
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Total citations per journal along one axis: received (row sums) for
/// `Cited`, given (column sums) for `Citing`. Journals with zero totals are
/// absent from the map.
pub fn marginals(snapshot: &CitationSnapshot, axis: Axis) -> BTreeMap<JournalId, u64> {
    let mut totals: BTreeMap<JournalId, u64> = BTreeMap::new();
    for (cited, citing, count) in snapshot.relations() {
        let key = match axis {
            Axis::Cited => cited,
            Axis::Citing => citing,
        };
        *totals.entry(key.clone()).or_insert(0) += count;
    }
    totals
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SummaryStats {
    pub journals: usize,
    pub relations: usize,
    pub total_citations: u64,
    pub relations_after_filter: usize,
    pub citations_after_filter: u64,
}

pub fn summary_stats(snapshot: &CitationSnapshot) -> SummaryStats {
    let mut relations_after_filter = 0usize;
    let mut citations_after_filter = 0u64;
    for (_, _, count) in snapshot.relations() {
        if count >= 2 {
            relations_after_filter += 1;
            citations_after_filter += count;
        }
    }
    SummaryStats {
        journals: snapshot.registry.len(),
        relations: snapshot.relation_count,
        total_citations: snapshot.total_citations,
        relations_after_filter,
        citations_after_filter,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn jid(s: &str) -> JournalId {
        JournalId::new(s).unwrap()
    }

    #[test]
    fn canonicalization_uppercases_and_collapses_whitespace() {
        assert_eq!(jid("  restor   neurol\tneuros ").as_str(), "RESTOR NEUROL NEUROS");
        assert_eq!(jid("j appl phys"), jid("J  APPL  PHYS"));
    }

    #[test]
    fn empty_id_rejected() {
        assert_eq!(JournalId::new("   "), Err(IngestError::EmptyJournalId));
    }

    #[test]
    fn duplicate_lines_are_summed() {
        let snap = parse_edge_list(1999, "JA,JB,3\nJA,JB,2\n").unwrap();
        // column order is citing,cited,count: JB is cited by JA
        assert_eq!(snap.count(&jid("JB"), &jid("JA")), 5);
        assert_eq!(snap.relation_count(), 1);
        assert_eq!(snap.total_citations(), 5);
    }

    #[test]
    fn empty_input_gives_empty_snapshot() {
        let snap = parse_edge_list(1999, "").unwrap();
        assert_eq!(snap.registry().len(), 0);
        assert_eq!(snap.relation_count(), 0);
    }

    #[test]
    fn four_line_fixture_totals() {
        let text = "citing,cited,count\nJA,JB,1\nJB,JA,2\nJC,JA,3\nJA,JC,4\n";
        let snap = parse_edge_list(1999, text).unwrap();
        assert_eq!(snap.registry().len(), 3);
        assert_eq!(snap.relation_count(), 4);
        assert_eq!(snap.total_citations(), 10);
    }

    #[test]
    fn header_detected_case_insensitively() {
        let snap = parse_edge_list(0, "Citing,Cited,Count\nJA,JB,2\n").unwrap();
        assert_eq!(snap.total_citations(), 2);
    }

    #[test]
    fn malformed_line_reports_line_number() {
        let err = parse_edge_list(0, "JA,JB,2\nJA,JB\n").unwrap_err();
        assert_eq!(err, IngestError::MalformedLine { line: 2, fields: 2 });
    }

    #[test]
    fn zero_and_negative_counts_rejected() {
        assert!(matches!(
            parse_edge_list(0, "JA,JB,0\n"),
            Err(IngestError::InvalidCount { line: 1, .. })
        ));
        assert!(matches!(
            parse_edge_list(0, "JA,JB,-3\n"),
            Err(IngestError::InvalidCount { line: 1, .. })
        ));
    }

    #[test]
    fn quoted_fields_carry_commas() {
        let snap = parse_edge_list(0, "\"ACTA A, B\",JB,7\n").unwrap();
        assert_eq!(snap.count(&jid("JB"), &jid("ACTA A, B")), 7);
        let text = serialize_edge_list(&snap);
        assert!(text.contains("\"ACTA A, B\""));
        let back = parse_edge_list(0, &text).unwrap();
        assert_eq!(back, snap);
    }

    #[test]
    fn name_change_identity_and_rename() {
        let snap = parse_edge_list(0, "JB,JA,5\n").unwrap();
        let (unchanged, warnings) = apply_name_changes(&snap, &[]).unwrap();
        assert_eq!(unchanged, snap);
        assert!(warnings.is_empty());

        let changes = [NameChangeRecord {
            old_id: jid("JA"),
            new_id: jid("JC"),
            kind: NameChangeKind::Rename,
        }];
        let (renamed, warnings) = apply_name_changes(&snap, &changes).unwrap();
        assert!(warnings.is_empty());
        assert_eq!(renamed.count(&jid("JC"), &jid("JB")), 5);
        assert!(!renamed.registry().contains(&jid("JA")));
        assert_eq!(renamed.total_citations(), snap.total_citations());
    }

    #[test]
    fn rename_merges_into_existing_target() {
        let snap = parse_edge_list(0, "JB,JA,5\nJB,JC,2\n").unwrap();
        let changes = [NameChangeRecord {
            old_id: jid("JA"),
            new_id: jid("JC"),
            kind: NameChangeKind::Rename,
        }];
        let (renamed, _) = apply_name_changes(&snap, &changes).unwrap();
        assert_eq!(renamed.count(&jid("JC"), &jid("JB")), 7);
        assert_eq!(renamed.total_citations(), 7);
    }

    #[test]
    fn merge_records_warn_and_do_nothing() {
        let snap = parse_edge_list(0, "JB,JA,5\n").unwrap();
        let changes = [NameChangeRecord {
            old_id: jid("JA"),
            new_id: jid("JC"),
            kind: NameChangeKind::Merge,
        }];
        let (out, warnings) = apply_name_changes(&snap, &changes).unwrap();
        assert_eq!(out, snap);
        assert_eq!(warnings.len(), 1);
    }

    #[test]
    fn rename_cycle_rejected() {
        let snap = parse_edge_list(0, "JB,JA,5\n").unwrap();
        let changes = [
            NameChangeRecord {
                old_id: jid("JA"),
                new_id: jid("JB"),
                kind: NameChangeKind::Rename,
            },
            NameChangeRecord {
                old_id: jid("JB"),
                new_id: jid("JA"),
                kind: NameChangeKind::Rename,
            },
        ];
        assert!(matches!(
            apply_name_changes(&snap, &changes),
            Err(IngestError::RenameCycle { .. })
        ));
    }

    #[test]
    fn rename_chain_resolves_transitively() {
        let snap = parse_edge_list(0, "JX,JA,5\nJX,JB,1\n").unwrap();
        let changes = [
            NameChangeRecord {
                old_id: jid("JA"),
                new_id: jid("JB"),
                kind: NameChangeKind::Rename,
            },
            NameChangeRecord {
                old_id: jid("JB"),
                new_id: jid("JC"),
                kind: NameChangeKind::Rename,
            },
        ];
        let (out, _) = apply_name_changes(&snap, &changes).unwrap();
        assert_eq!(out.count(&jid("JC"), &jid("JX")), 6);
    }

    #[test]
    fn align_partitions_registries() {
        let prior = parse_edge_list(1998, "JB,JA,2\nJA,JB,2\n").unwrap();
        let posterior = parse_edge_list(1999, "JB,JA,2\nJA,JB,2\n").unwrap();
        let pair = align_years(prior, posterior);
        assert_eq!(pair.matched.len(), 2);
        assert!(pair.dropped.is_empty());
        assert!(pair.added.is_empty());

        let prior = parse_edge_list(1998, "JB,JA,2\nJA,JB,2\n").unwrap();
        let posterior = parse_edge_list(1999, "JC,JB,2\nJB,JC,2\n").unwrap();
        let pair = align_years(prior, posterior);
        assert_eq!(pair.matched, [jid("JB")].into_iter().collect());
        assert_eq!(pair.dropped, [jid("JA")].into_iter().collect());
        assert_eq!(pair.added, [jid("JC")].into_iter().collect());
    }

    #[test]
    fn rename_then_align_matches_everything() {
        let prior = parse_edge_list(1998, "JB,JA,2\nJA,JB,2\n").unwrap();
        let posterior = parse_edge_list(1999, "JC,JB,2\nJB,JC,2\n").unwrap();
        let changes = [NameChangeRecord {
            old_id: jid("JA"),
            new_id: jid("JC"),
            kind: NameChangeKind::Rename,
        }];
        let (prior, _) = apply_name_changes(&prior, &changes).unwrap();
        let pair = align_years(prior, posterior);
        assert_eq!(pair.matched.len(), 2);
        assert!(pair.dropped.is_empty());
        assert!(pair.added.is_empty());
    }

    #[test]
    fn single_relation_filter() {
        let snap = parse_edge_list(0, "JA,JB,1\nJB,JA,2\nJC,JB,1\nJC,JA,5\n").unwrap();
        let filtered = drop_single_relations(&snap);
        assert_eq!(filtered.relation_count(), 2);
        assert_eq!(filtered.total_citations(), 7);
        // idempotent
        assert_eq!(drop_single_relations(&filtered), filtered);
        // no-op when nothing qualifies
        let clean = parse_edge_list(0, "JA,JB,2\nJB,JA,5\n").unwrap();
        assert_eq!(drop_single_relations(&clean), clean);
        // empty stays empty
        let empty = parse_edge_list(0, "").unwrap();
        assert_eq!(drop_single_relations(&empty).relation_count(), 0);
    }

    #[test]
    fn marginals_match_hand_sums() {
        let snap = parse_edge_list(0, "JB,JA,7\n").unwrap();
        assert_eq!(marginals(&snap, Axis::Cited), [(jid("JA"), 7)].into_iter().collect());
        assert_eq!(marginals(&snap, Axis::Citing), [(jid("JB"), 7)].into_iter().collect());

        let sym = parse_edge_list(0, "JA,JA,1\nJA,JB,1\nJB,JA,1\nJB,JB,1\n").unwrap();
        let expected: BTreeMap<_, _> = [(jid("JA"), 2), (jid("JB"), 2)].into_iter().collect();
        assert_eq!(marginals(&sym, Axis::Cited), expected);
        assert_eq!(marginals(&sym, Axis::Citing), expected);

        let tri = parse_edge_list(0, "JA,JB,1\nJB,JA,2\nJC,JA,3\nJA,JC,4\n").unwrap();
        let cited: BTreeMap<_, _> = [(jid("JA"), 5), (jid("JB"), 1), (jid("JC"), 4)]
            .into_iter()
            .collect();
        let citing: BTreeMap<_, _> = [(jid("JA"), 5), (jid("JB"), 2), (jid("JC"), 3)]
            .into_iter()
            .collect();
        assert_eq!(marginals(&tri, Axis::Cited), cited);
        assert_eq!(marginals(&tri, Axis::Citing), citing);
    }

    #[test]
    fn summary_counts() {
        let empty = parse_edge_list(0, "").unwrap();
        let stats = summary_stats(&empty);
        assert_eq!(stats.journals, 0);
        assert_eq!(stats.total_citations, 0);

        let snap = parse_edge_list(0, "JA,JB,1\nJB,JA,2\nJC,JA,3\nJA,JC,4\n").unwrap();
        let stats = summary_stats(&snap);
        assert_eq!(stats.journals, 3);
        assert_eq!(stats.relations, 4);
        assert_eq!(stats.total_citations, 10);
        assert_eq!(stats.relations_after_filter, 3);
        assert_eq!(stats.citations_after_filter, 9);
    }

    #[test]
    fn cited_only_journals_stay_in_registry() {
        let snap = parse_edge_list(0, "JA,JX,3\n").unwrap();
        assert!(snap.registry().contains(&jid("JX")));
        assert!(!snap.citing_processed().contains(&jid("JX")));
        assert!(snap.citing_processed().contains(&jid("JA")));
    }

    #[test]
    fn name_change_file_parses() {
        let text = "old,new,kind\nJ OLD,J NEW,rename\nJA,JB,merge\n";
        let records = parse_name_changes(text).unwrap();
        assert_eq!(records.len(), 2);
        assert_eq!(records[0].kind, NameChangeKind::Rename);
        assert_eq!(records[1].kind, NameChangeKind::Merge);
        assert!(matches!(
            parse_name_changes("JA,JA,rename\n"),
            Err(IngestError::SelfRename { .. })
        ));
        assert!(matches!(
            parse_name_changes("JA,JB,fuse\n"),
            Err(IngestError::UnknownChangeKind { line: 1, .. })
        ));
    }
}
