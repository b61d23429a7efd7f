//! Local catalog of integer sequences in the bulk "stripped" dump format,
//! prefix matching of computed sequences against it (with a small shift
//! tolerance, since published offsets vary), and whole-grid scans that
//! label every cell of a parameter table with the sequence it hits.

use crate::paths::ColorScheme;
use crate::riordan::{motzkin_az, row_sums, triangle_from_az};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::io::BufRead;
use std::str::FromStr;
use thiserror::Error;

/// Minimum run of agreeing terms before a match is reported.
pub const DEFAULT_MIN_MATCH: usize = 7;
/// How many stored leading terms a match may skip.
pub const DEFAULT_MAX_SHIFT: usize = 2;

const INDEX_WINDOW: usize = 4;
const INDEXED_SHIFTS: usize = 2;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OeisError {
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("query has {got} terms but at least {min} are required")]
    TooShort { got: usize, min: usize },
    #[error("unknown scan table {0:?}")]
    UnknownTable(String),
    #[error("invalid sequence id {0:?}")]
    BadId(String),
    #[error(transparent)]
    Riordan(#[from] crate::riordan::RiordanError),
}

/// `A` followed by exactly six digits.
pub fn valid_id(id: &str) -> bool {
    id.len() == 7 && id.starts_with('A') && id[1..].bytes().all(|b| b.is_ascii_digit())
}

/// One catalog entry: an id and its stored leading terms.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SequenceRecord {
    id: String,
    #[serde(serialize_with = "terms_as_strings")]
    terms: Vec<BigInt>,
}

fn terms_as_strings<S: serde::Serializer>(terms: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(terms.iter().map(BigInt::to_string))
}

impl SequenceRecord {
    pub fn new(id: String, terms: Vec<BigInt>) -> Result<SequenceRecord, OeisError> {
        if !valid_id(&id) {
            return Err(OeisError::BadId(id));
        }
        if terms.is_empty() {
            return Err(OeisError::BadId(format!("{id} has no terms")));
        }
        Ok(SequenceRecord { id, terms })
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn terms(&self) -> &[BigInt] {
        &self.terms
    }
}

/// Immutable sequence catalog, indexed by id and by short term windows so
/// prefix queries only touch a handful of candidates.
#[derive(Debug, Default)]
pub struct SequenceDb {
    records: BTreeMap<String, SequenceRecord>,
    windows: HashMap<Vec<BigInt>, Vec<(String, usize)>>,
}

impl SequenceDb {
    pub fn from_records(records: Vec<SequenceRecord>) -> Result<SequenceDb, OeisError> {
        let mut db = SequenceDb::default();
        for record in records {
            db.insert(record)?;
        }
        Ok(db)
    }

    fn insert(&mut self, record: SequenceRecord) -> Result<(), OeisError> {
        if self.records.contains_key(&record.id) {
            return Err(OeisError::BadId(format!("duplicate id {}", record.id)));
        }
        for offset in 0..=INDEXED_SHIFTS {
            let Some(window) = record.terms.get(offset..offset + INDEX_WINDOW) else {
                break;
            };
            self.windows.entry(window.to_vec()).or_default().push((record.id.clone(), offset));
        }
        self.records.insert(record.id.clone(), record);
        Ok(())
    }

    pub fn get(&self, id: &str) -> Option<&SequenceRecord> {
        self.records.get(id)
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn ids(&self) -> impl Iterator<Item = &str> {
        self.records.keys().map(String::as_str)
    }
}

/// Parses the bulk dump format: one `Axxxxxx ,t1,t2,...,` line per
/// sequence; lines starting with `#` are comments.
pub fn load_stripped(source: impl BufRead) -> Result<SequenceDb, OeisError> {
    let mut db = SequenceDb::default();
    for (index, line) in source.lines().enumerate() {
        let number = index + 1;
        let parse = |reason: String| OeisError::Parse { line: number, reason };
        let line = line.map_err(|e| parse(format!("read failed: {e}")))?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (id, rest) = line
            .split_once(char::is_whitespace)
            .ok_or_else(|| parse("expected an id followed by terms".into()))?;
        if !valid_id(id) {
            return Err(parse(format!("invalid sequence id {id:?}")));
        }
        let terms =
            parse_term_list(rest).map_err(|reason| parse(format!("{reason} (sequence {id})")))?;
        let record =
            SequenceRecord::new(id.to_string(), terms).map_err(|e| parse(e.to_string()))?;
        db.insert(record).map_err(|e| parse(e.to_string()))?;
    }
    Ok(db)
}

fn parse_term_list(text: &str) -> Result<Vec<BigInt>, String> {
    let mut terms = Vec::new();
    for piece in text.trim().split(',') {
        let piece = piece.trim();
        if piece.is_empty() {
            continue;
        }
        terms.push(BigInt::from_str(piece).map_err(|_| format!("bad integer {piece:?}"))?);
    }
    if terms.is_empty() {
        return Err("no terms".into());
    }
    Ok(terms)
}

/// Parses the per-sequence b-file format: `n a(n)` pairs with consecutive
/// indices, comments starting with `#`.
pub fn load_bfile(id: &str, source: impl BufRead) -> Result<SequenceRecord, OeisError> {
    let mut terms = Vec::new();
    let mut next_index: Option<BigInt> = None;
    for (index, line) in source.lines().enumerate() {
        let number = index + 1;
        let parse = |reason: String| OeisError::Parse { line: number, reason };
        let line = line.map_err(|e| parse(format!("read failed: {e}")))?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (n, term) = line
            .split_once(char::is_whitespace)
            .ok_or_else(|| parse("expected `index term`".into()))?;
        let n = BigInt::from_str(n.trim()).map_err(|_| parse(format!("bad index {n:?}")))?;
        let term =
            BigInt::from_str(term.trim()).map_err(|_| parse(format!("bad integer {term:?}")))?;
        if let Some(expected) = &next_index {
            if n != *expected {
                return Err(parse(format!("expected index {expected}, found {n}")));
            }
        }
        next_index = Some(n + 1);
        terms.push(term);
    }
    SequenceRecord::new(id.to_string(), terms)
}

/// How a query lined up with a stored sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum MatchKind {
    /// The query agrees with the stored terms from the very first one.
    ExactPrefix,
    /// The query agrees after skipping `offset` stored leading terms.
    ShiftedPrefix { offset: usize },
}

impl MatchKind {
    pub fn offset(self) -> usize {
        match self {
            MatchKind::ExactPrefix => 0,
            MatchKind::ShiftedPrefix { offset } => offset,
        }
    }

    fn from_offset(offset: usize) -> MatchKind {
        if offset == 0 {
            MatchKind::ExactPrefix
        } else {
            MatchKind::ShiftedPrefix { offset }
        }
    }
}

/// One catalog sequence the query lined up with.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SequenceMatch {
    pub id: String,
    #[serde(flatten)]
    pub kind: MatchKind,
    /// How many consecutive terms agreed.
    pub matched_len: usize,
}

/// Every catalog sequence a query lined up with, smallest offset first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MatchReport {
    #[serde(serialize_with = "terms_as_strings")]
    pub query: Vec<BigInt>,
    pub min_len: usize,
    pub max_shift: usize,
    pub matches: Vec<SequenceMatch>,
}

impl MatchReport {
    /// The winning candidate: smallest offset, then smallest id.
    pub fn best(&self) -> Option<&SequenceMatch> {
        self.matches.first()
    }

    pub fn is_empty(&self) -> bool {
        self.matches.is_empty()
    }
}

/// Finds every stored sequence that contains `terms` as a run starting at
/// offset ≤ `max_shift`, requiring at least `min_len` agreeing terms.
pub fn match_sequence(
    db: &SequenceDb,
    terms: &[BigInt],
    min_len: usize,
    max_shift: usize,
) -> Result<MatchReport, OeisError> {
    if terms.len() < min_len || terms.is_empty() {
        return Err(OeisError::TooShort { got: terms.len(), min: min_len.max(1) });
    }
    let mut found: HashMap<String, (usize, usize)> = HashMap::new();
    let mut consider = |record: &SequenceRecord, offset: usize| {
        if let Some(matched_len) = verify(record, offset, terms, min_len) {
            found
                .entry(record.id.clone())
                .and_modify(|slot| {
                    if offset < slot.0 {
                        *slot = (offset, matched_len);
                    }
                })
                .or_insert((offset, matched_len));
        }
    };
    if terms.len() >= INDEX_WINDOW && max_shift <= INDEXED_SHIFTS {
        if let Some(candidates) = db.windows.get(&terms[..INDEX_WINDOW]) {
            for (id, offset) in candidates {
                if *offset <= max_shift {
                    consider(&db.records[id], *offset);
                }
            }
        }
    } else {
        for record in db.records.values() {
            for offset in 0..=max_shift {
                consider(record, offset);
            }
        }
    }
    let mut matches: Vec<SequenceMatch> = found
        .into_iter()
        .map(|(id, (offset, matched_len))| SequenceMatch {
            id,
            kind: MatchKind::from_offset(offset),
            matched_len,
        })
        .collect();
    matches.sort_by(|a, b| (a.kind.offset(), &a.id).cmp(&(b.kind.offset(), &b.id)));
    Ok(MatchReport { query: terms.to_vec(), min_len, max_shift, matches })
}

fn verify(
    record: &SequenceRecord,
    offset: usize,
    terms: &[BigInt],
    min_len: usize,
) -> Option<usize> {
    let window = record.terms.get(offset..)?;
    let common = window.len().min(terms.len());
    (common >= min_len && window[..common] == terms[..common]).then_some(common)
}

/// Which sequence a grid cell reads off its triangle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScanMode {
    /// Leftmost column of the triangle.
    ColumnZero,
    /// Row sums of the triangle.
    RowSums,
}

/// What the source table printed in a cell: an id (possibly starred to
/// mark a shifted match), a dash, or a closed formula.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "String", into = "String")]
pub enum PaperClaim {
    Dash,
    Id { id: String, starred: bool },
    Formula(String),
}

impl PaperClaim {
    pub fn parse(text: &str) -> PaperClaim {
        let text = text.trim();
        if text.is_empty() || text == "-" {
            return PaperClaim::Dash;
        }
        let (body, starred) = match text.strip_suffix('*') {
            Some(body) => (body, true),
            None => (text, false),
        };
        let looks_like_id = body.len() > 1
            && body.starts_with('A')
            && body[1..].bytes().all(|b| b.is_ascii_digit());
        if looks_like_id {
            PaperClaim::Id { id: body.to_string(), starred }
        } else {
            PaperClaim::Formula(text.to_string())
        }
    }
}

impl From<String> for PaperClaim {
    fn from(text: String) -> PaperClaim {
        PaperClaim::parse(&text)
    }
}

impl From<PaperClaim> for String {
    fn from(claim: PaperClaim) -> String {
        claim.to_string()
    }
}

impl fmt::Display for PaperClaim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PaperClaim::Dash => write!(f, "-"),
            PaperClaim::Id { id, starred: false } => write!(f, "{id}"),
            PaperClaim::Id { id, starred: true } => write!(f, "{id}*"),
            PaperClaim::Formula(text) => write!(f, "{text}"),
        }
    }
}

/// One cell of a scan grid: the color tuples it enumerates and what the
/// source table printed there.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellSpec {
    pub scheme: ColorScheme,
    pub claim: PaperClaim,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub label: String,
    pub cells: Vec<CellSpec>,
}

/// A full comparison grid: every cell names color tuples, and the scan
/// reads each cell's sequence and looks it up in the catalog.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableSpec {
    pub title: String,
    pub mode: ScanMode,
    pub col_labels: Vec<String>,
    pub rows: Vec<TableRow>,
}

/// How a scanned cell relates to what the source table printed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CellVerdict {
    /// The printed id is among the matches.
    Confirmed,
    /// The table printed a dash and nothing matched.
    ConfirmedDash,
    /// The table printed a formula and the catalog named the sequence.
    FormulaMatch,
    /// The table printed a formula and the catalog has no entry for it.
    FormulaDash,
    /// The table printed a dash but the catalog matched something.
    NewMatch,
    /// The printed id is malformed (not `A` + six digits); flagged, never
    /// silently normalized.
    Malformed,
    /// The printed id is absent from the catalog and nothing else matched.
    MissingFromCatalog,
    /// The scan contradicts the printed id.
    Conflict,
}

impl CellVerdict {
    /// True for the verdicts that contradict the source table.
    pub fn is_contradiction(self) -> bool {
        matches!(self, CellVerdict::NewMatch | CellVerdict::Conflict)
    }
}

/// Scan outcome for one cell.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CellReport {
    pub row: usize,
    pub col: usize,
    #[serde(serialize_with = "terms_as_strings")]
    pub terms: Vec<BigInt>,
    pub matches: Vec<SequenceMatch>,
    pub claim: PaperClaim,
    pub verdict: CellVerdict,
}

impl CellReport {
    /// The id to print in the grid: the best match, starred when shifted,
    /// or a dash.
    pub fn shown(&self) -> String {
        match self.matches.first() {
            Some(m) if m.kind.offset() > 0 => format!("{}*", m.id),
            Some(m) => m.id.clone(),
            None => "-".to_string(),
        }
    }

    fn decorated(&self) -> String {
        match self.verdict {
            CellVerdict::Malformed => format!("{} (malformed)", self.claim),
            CellVerdict::Conflict => format!("{} (expected {})", self.shown(), self.claim),
            CellVerdict::MissingFromCatalog => format!("- (no data for {})", self.claim),
            CellVerdict::NewMatch => format!("{} (unexpected)", self.shown()),
            _ => self.shown(),
        }
    }
}

/// A scanned grid: the spec plus one report per cell.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableScan {
    pub spec: TableSpec,
    pub cells: Vec<Vec<CellReport>>,
}

/// Runs every cell of `spec` through the triangle builder and the catalog.
pub fn scan_table(
    spec: &TableSpec,
    db: &SequenceDb,
    min_len: usize,
    max_shift: usize,
) -> Result<TableScan, OeisError> {
    let mut cells = Vec::with_capacity(spec.rows.len());
    for (row, table_row) in spec.rows.iter().enumerate() {
        let mut reports = Vec::with_capacity(table_row.cells.len());
        for (col, cell) in table_row.cells.iter().enumerate() {
            let terms = cell_terms(&cell.scheme, spec.mode, min_len)?;
            let report = match_sequence(db, &terms, min_len, max_shift)?;
            let verdict = judge(&cell.claim, &report, db);
            reports.push(CellReport {
                row,
                col,
                terms,
                matches: report.matches,
                claim: cell.claim.clone(),
                verdict,
            });
        }
        cells.push(reports);
    }
    Ok(TableScan { spec: spec.clone(), cells })
}

/// The sequence a single grid cell denotes: `len` leading terms of the
/// triangle's leftmost column or of its row sums.
pub fn cell_terms(
    scheme: &ColorScheme,
    mode: ScanMode,
    len: usize,
) -> Result<Vec<BigInt>, OeisError> {
    let az = motzkin_az(scheme);
    let triangle = triangle_from_az(&az, len)?;
    Ok(match mode {
        ScanMode::ColumnZero => triangle.column(0),
        ScanMode::RowSums => row_sums(&triangle),
    })
}

fn judge(claim: &PaperClaim, report: &MatchReport, db: &SequenceDb) -> CellVerdict {
    match claim {
        PaperClaim::Id { id, .. } if !valid_id(id) => CellVerdict::Malformed,
        PaperClaim::Id { id, .. } => {
            if report.matches.iter().any(|m| m.id == *id) {
                CellVerdict::Confirmed
            } else if db.get(id).is_some() || !report.is_empty() {
                CellVerdict::Conflict
            } else {
                CellVerdict::MissingFromCatalog
            }
        }
        PaperClaim::Dash => {
            if report.is_empty() {
                CellVerdict::ConfirmedDash
            } else {
                CellVerdict::NewMatch
            }
        }
        PaperClaim::Formula(_) => {
            if report.is_empty() {
                CellVerdict::FormulaDash
            } else {
                CellVerdict::FormulaMatch
            }
        }
    }
}

impl TableScan {
    /// Cells whose verdict contradicts the source table.
    pub fn contradictions(&self) -> Vec<&CellReport> {
        self.cells.iter().flatten().filter(|cell| cell.verdict.is_contradiction()).collect()
    }

    /// Cells flagged for attention without being contradictions.
    pub fn flagged(&self) -> Vec<&CellReport> {
        self.cells
            .iter()
            .flatten()
            .filter(|cell| {
                matches!(cell.verdict, CellVerdict::Malformed | CellVerdict::MissingFromCatalog)
            })
            .collect()
    }

    pub fn to_markdown(&self) -> String {
        let mut out = format!("## {}\n\n", self.spec.title);
        out.push_str("| |");
        for label in &self.spec.col_labels {
            out.push_str(&format!(" {label} |"));
        }
        out.push('\n');
        out.push_str(&"| --- ".repeat(self.spec.col_labels.len() + 1));
        out.push_str("|\n");
        for (row, reports) in self.cells.iter().enumerate() {
            out.push_str(&format!("| **{}** |", self.spec.rows[row].label));
            for report in reports {
                out.push_str(&format!(" {} |", report.decorated()));
            }
            out.push('\n');
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for label in &self.spec.col_labels {
            out.push(',');
            out.push_str(label);
        }
        out.push('\n');
        for (row, reports) in self.cells.iter().enumerate() {
            out.push_str(&self.spec.rows[row].label);
            for report in reports {
                out.push(',');
                out.push_str(&match report.verdict {
                    CellVerdict::Malformed => format!("malformed:{}", report.claim),
                    CellVerdict::Conflict => {
                        format!("conflict:{}:{}", report.shown(), report.claim)
                    }
                    _ => report.shown(),
                });
            }
            out.push('\n');
        }
        out
    }
}

fn order1(alpha: u64, beta: u64) -> ColorScheme {
    ColorScheme::new(vec![alpha], vec![beta]).expect("order-1 tuples are always valid")
}

fn order2(alpha: [u64; 2], beta: [u64; 2]) -> ColorScheme {
    ColorScheme::new(alpha.to_vec(), beta.to_vec()).expect("order-2 tuples are always valid")
}

fn square_grid_order1(title: &str, mode: ScanMode, claims: [[&str; 6]; 6]) -> TableSpec {
    TableSpec {
        title: title.to_string(),
        mode,
        col_labels: (0..6).map(|b| format!("beta={b}")).collect(),
        rows: (0..6u64)
            .map(|a| TableRow {
                label: format!("alpha={a}"),
                cells: (0..6u64)
                    .map(|b| CellSpec {
                        scheme: order1(a, b),
                        claim: PaperClaim::parse(claims[a as usize][b as usize]),
                    })
                    .collect(),
            })
            .collect(),
    }
}

/// The published comparison grids, keyed `table5` … `table8`. `table7`
/// expands to its two side-by-side sub-grids.
pub fn builtin_tables(name: &str) -> Result<Vec<TableSpec>, OeisError> {
    match name {
        "table5" => Ok(vec![square_grid_order1(
            "Order-1 colored Motzkin numbers (leftmost column)",
            ScanMode::ColumnZero,
            [
                ["A126120", "A005043", "A000957", "A1177641", "A185132", "-"],
                ["A001405", "A001006", "A000108", "A033321", "-", "-"],
                ["A054341", "A005773", "A000108*", "A007317", "A033543", "-"],
                ["A126931", "A059738", "A001700", "A002212", "A064613", "-"],
                ["-", "-", "A049027", "A026378", "A005572", "A104455"],
                ["-", "-", "A076025", "-", "A005573", "A182401"],
            ],
        )]),
        "table6" => Ok(vec![square_grid_order1(
            "Order-1 colored Motzkin triangles (row sums)",
            ScanMode::RowSums,
            [
                ["C(n, floor(n/2))", "A002426", "A026641", "A126952", "-", "-"],
                ["A000079", "A005773", "A000984", "A126568", "A227081", "-"],
                ["A127358", "A000244", "C(2n+1, n+1)", "A026375", "A133158", "-"],
                ["A127359", "A126932", "A000302", "A026378", "A081671", "-"],
                ["A127360", "-", "A141223", "-", "A005573", "A098409"],
                ["-", "-", "-", "-", "A000400", "A122898"],
            ],
        )]),
        "table7" => {
            let second_coord = |tail: u64, claims: [[&str; 3]; 3]| TableSpec {
                title: format!(
                    "Order-2 colored Motzkin numbers with second coordinates ({tail},{tail})"
                ),
                mode: ScanMode::ColumnZero,
                col_labels: (0..3).map(|b| format!("beta=({b},{tail})")).collect(),
                rows: (0..3u64)
                    .map(|a| TableRow {
                        label: format!("alpha=({a},{tail})"),
                        cells: (0..3u64)
                            .map(|b| CellSpec {
                                scheme: order2([a, tail], [b, tail]),
                                claim: PaperClaim::parse(claims[a as usize][b as usize]),
                            })
                            .collect(),
                    })
                    .collect(),
            };
            Ok(vec![
                second_coord(0, [["-", "-", "-"], ["A076227", "A071879", "-"], ["-", "-", "-"]]),
                second_coord(
                    1,
                    [
                        ["A001005", "-", "A303730"],
                        ["-", "A036765", "A049128"],
                        ["-", "A159772", "-"],
                    ],
                ),
            ])
        }
        "table8" => {
            let claims = [
                ["-", "A089354", "A023053", "-", "-"],
                ["-", "-", "A001764", "A121545", "-"],
                ["-", "-", "A098746", "A006013", "-"],
                ["-", "-", "-", "A001764*", "-"],
                ["-", "-", "-", "A047099", "-"],
            ];
            Ok(vec![TableSpec {
                title: "Order-2 colored Motzkin numbers with beta=(3,3)".to_string(),
                mode: ScanMode::ColumnZero,
                col_labels: (0..5).map(|a1| format!("alpha1={a1}")).collect(),
                rows: (0..5u64)
                    .map(|a0| TableRow {
                        label: format!("alpha0={a0}"),
                        cells: (0..5u64)
                            .map(|a1| CellSpec {
                                scheme: order2([a0, a1], [3, 3]),
                                claim: PaperClaim::parse(claims[a0 as usize][a1 as usize]),
                            })
                            .collect(),
                    })
                    .collect(),
            }])
        }
        other => Err(OeisError::UnknownTable(other.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Cursor;
    use std::path::PathBuf;

    fn ints(values: &[i64]) -> Vec<BigInt> {
        values.iter().map(|&v| BigInt::from(v)).collect()
    }

    pub(crate) fn fixture_path() -> PathBuf {
        PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures/oeis_stripped.txt")
    }

    pub(crate) fn fixture_db() -> SequenceDb {
        let file = std::fs::File::open(fixture_path()).expect("fixture present");
        load_stripped(std::io::BufReader::new(file)).expect("fixture parses")
    }

    #[test]
    fn stripped_lines_parse_with_trailing_commas_and_comments() {
        let input = "# comment\n\nA000108 ,1,1,2,5,14,\nA000045 ,0,1,1,2,\n";
        let db = load_stripped(Cursor::new(input)).unwrap();
        assert_eq!(db.len(), 2);
        let record = db.get("A000108").unwrap();
        assert_eq!(record.terms(), &ints(&[1, 1, 2, 5, 14])[..]);
        assert_eq!(db.ids().collect::<Vec<_>>(), ["A000045", "A000108"]);
    }

    #[test]
    fn comment_only_input_yields_an_empty_catalog() {
        let db = load_stripped(Cursor::new("# nothing here\n")).unwrap();
        assert!(db.is_empty());
    }

    #[test]
    fn stripped_parser_reports_line_numbers() {
        let seven_digits = load_stripped(Cursor::new("A000108 ,1,1,\nA1177641 ,1,2,\n"));
        assert_eq!(
            seven_digits.unwrap_err(),
            OeisError::Parse { line: 2, reason: "invalid sequence id \"A1177641\"".into() }
        );
        let junk = load_stripped(Cursor::new("A000108 ,1,x,\n"));
        assert!(matches!(junk.unwrap_err(), OeisError::Parse { line: 1, .. }));
        let missing = load_stripped(Cursor::new("A000108\n"));
        assert!(matches!(missing.unwrap_err(), OeisError::Parse { line: 1, .. }));
        let empty = load_stripped(Cursor::new("A000108 ,,\n"));
        assert!(matches!(empty.unwrap_err(), OeisError::Parse { line: 1, .. }));
        let duplicate = load_stripped(Cursor::new("A000108 ,1,\nA000108 ,1,\n"));
        assert!(matches!(duplicate.unwrap_err(), OeisError::Parse { line: 2, .. }));
    }

    #[test]
    fn bfiles_parse_and_require_consecutive_indices() {
        let record = load_bfile("A000108", Cursor::new("# b-file\n0 1\n1 1\n2 2\n3 5\n")).unwrap();
        assert_eq!(record.id(), "A000108");
        assert_eq!(record.terms(), &ints(&[1, 1, 2, 5])[..]);
        let offset_start = load_bfile("A000108", Cursor::new("1 1\n2 1\n")).unwrap();
        assert_eq!(offset_start.terms(), &ints(&[1, 1])[..]);
        let gap = load_bfile("A000108", Cursor::new("0 1\n2 2\n"));
        assert!(matches!(gap.unwrap_err(), OeisError::Parse { line: 2, .. }));
        let bad = load_bfile("A00", Cursor::new("0 1\n"));
        assert!(matches!(bad.unwrap_err(), OeisError::BadId(_)));
    }

    #[test]
    fn motzkin_terms_match_exactly() {
        let db = fixture_db();
        let report = match_sequence(&db, &ints(&[1, 1, 2, 4, 9, 21, 51]), 7, 2).unwrap();
        assert_eq!(report.matches.len(), 1);
        let best = report.best().unwrap();
        assert_eq!(best.id, "A001006");
        assert_eq!(best.kind, MatchKind::ExactPrefix);
        assert_eq!(best.matched_len, 7);
    }

    #[test]
    fn shifted_catalan_terms_match_with_offset_one() {
        let db = fixture_db();
        let report = match_sequence(&db, &ints(&[1, 2, 5, 14, 42, 132, 429]), 7, 2).unwrap();
        let best = report.best().unwrap();
        assert_eq!(best.id, "A000108");
        assert_eq!(best.kind, MatchKind::ShiftedPrefix { offset: 1 });
        // consistency: dropping the skipped stored terms gives an exact prefix
        for m in &report.matches {
            let stored = db.get(&m.id).unwrap().terms();
            let window = &stored[m.kind.offset()..];
            assert!(window[..m.matched_len] == report.query[..m.matched_len]);
        }
    }

    #[test]
    fn fine_numbers_match_the_fine_entry() {
        let db = fixture_db();
        let terms = cell_terms(&order1(0, 2), ScanMode::ColumnZero, 7).unwrap();
        assert_eq!(terms, ints(&[1, 0, 1, 2, 6, 18, 57]));
        let report = match_sequence(&db, &terms, 7, 2).unwrap();
        assert_eq!(report.best().unwrap().id, "A000957");
        assert_eq!(report.best().unwrap().kind, MatchKind::ShiftedPrefix { offset: 1 });
    }

    #[test]
    fn smallest_offset_wins_per_id_and_ordering_is_stable() {
        let records = vec![
            SequenceRecord::new("A999999".into(), ints(&[1, 1, 1, 1, 1, 1, 1, 1, 1])).unwrap(),
            SequenceRecord::new("A999998".into(), ints(&[5, 1, 1, 1, 1, 1, 1, 1, 1])).unwrap(),
        ];
        let db = SequenceDb::from_records(records).unwrap();
        let report = match_sequence(&db, &ints(&[1, 1, 1, 1, 1, 1, 1]), 7, 2).unwrap();
        let summary: Vec<(&str, usize)> =
            report.matches.iter().map(|m| (m.id.as_str(), m.kind.offset())).collect();
        assert_eq!(summary, [("A999999", 0), ("A999998", 1)]);
    }

    #[test]
    fn short_queries_are_rejected() {
        let db = fixture_db();
        let err = match_sequence(&db, &ints(&[1, 1, 2]), 7, 2).unwrap_err();
        assert_eq!(err, OeisError::TooShort { got: 3, min: 7 });
    }

    #[test]
    fn all_zero_query_matches_nothing() {
        let db = fixture_db();
        let report = match_sequence(&db, &ints(&[0; 7]), 7, 2).unwrap();
        assert!(report.is_empty());
    }

    #[test]
    fn matching_agrees_with_a_linear_scan_when_shift_exceeds_the_index() {
        let db = fixture_db();
        let terms = ints(&[2, 4, 8, 16, 32, 64, 128]);
        let report = match_sequence(&db, &terms, 7, 3).unwrap();
        let best = report.best().unwrap();
        assert_eq!((best.id.as_str(), best.kind.offset()), ("A000079", 1));
    }

    #[test]
    fn paper_claims_parse_into_the_three_shapes() {
        assert_eq!(PaperClaim::parse("-"), PaperClaim::Dash);
        assert_eq!(
            PaperClaim::parse("A000108*"),
            PaperClaim::Id { id: "A000108".into(), starred: true }
        );
        assert_eq!(
            PaperClaim::parse("A1177641"),
            PaperClaim::Id { id: "A1177641".into(), starred: false }
        );
        assert_eq!(
            PaperClaim::parse("C(n, floor(n/2))"),
            PaperClaim::Formula("C(n, floor(n/2))".into())
        );
        assert_eq!(PaperClaim::parse("A000108*").to_string(), "A000108*");
    }

    fn shown_grid(scan: &TableScan) -> Vec<Vec<String>> {
        scan.cells.iter().map(|row| row.iter().map(CellReport::decorated).collect()).collect()
    }

    #[test]
    fn order1_column_grid_reproduces_the_published_ids() {
        let db = fixture_db();
        let spec = &builtin_tables("table5").unwrap()[0];
        let scan = scan_table(spec, &db, 7, 2).unwrap();
        let expected = [
            ["A126120", "A005043", "A000957*", "A1177641 (malformed)", "A185132", "-"],
            ["A001405", "A001006", "A000108", "A033321", "-", "-"],
            ["A054341", "A005773*", "A000108*", "A007317", "A033543", "-"],
            ["A126931", "A059738", "A001700", "A002212*", "A064613", "-"],
            ["-", "-", "A049027", "A026378", "A005572", "A104455"],
            ["-", "-", "A076025", "-", "A005573", "A182401"],
        ];
        assert_eq!(shown_grid(&scan), expected.map(|row| row.map(String::from).to_vec()).to_vec());
        assert!(scan.contradictions().is_empty(), "{:?}", scan.contradictions());
        assert_eq!(scan.flagged().len(), 1);
        assert_eq!(scan.flagged()[0].verdict, CellVerdict::Malformed);
        // the starred cell really is a shifted match
        let starred = &scan.cells[2][2];
        assert_eq!(starred.matches[0].kind, MatchKind::ShiftedPrefix { offset: 1 });
    }

    #[test]
    fn order1_rowsum_grid_reproduces_the_published_ids() {
        let db = fixture_db();
        let spec = &builtin_tables("table6").unwrap()[0];
        let scan = scan_table(spec, &db, 7, 2).unwrap();
        let expected = [
            ["A001405", "A002426", "A026641", "A126952", "-", "-"],
            ["A000079", "A005773*", "A000984", "A126568", "A227081", "-"],
            ["A127358", "A000244", "A001700", "A026375", "A133158", "-"],
            ["A127359", "A126932", "A000302", "A026378", "A081671", "-"],
            ["A127360", "-", "A141223", "-", "A005573", "A098409"],
            ["-", "-", "-", "-", "A000400", "A122898"],
        ];
        assert_eq!(shown_grid(&scan), expected.map(|row| row.map(String::from).to_vec()).to_vec());
        assert!(scan.contradictions().is_empty(), "{:?}", scan.contradictions());
        // the two formula cells resolved to catalog entries
        assert_eq!(scan.cells[0][0].verdict, CellVerdict::FormulaMatch);
        assert_eq!(scan.cells[2][2].verdict, CellVerdict::FormulaMatch);
    }

    #[test]
    fn order2_grids_reproduce_the_published_ids() {
        let db = fixture_db();
        let specs = builtin_tables("table7").unwrap();
        assert_eq!(specs.len(), 2);
        let left = scan_table(&specs[0], &db, 7, 2).unwrap();
        assert_eq!(
            shown_grid(&left),
            [["-", "-", "-"], ["A076227", "A071879", "-"], ["-", "-", "-"]]
                .map(|row| row.map(String::from).to_vec())
                .to_vec()
        );
        assert!(left.contradictions().is_empty(), "{:?}", left.contradictions());
        let right = scan_table(&specs[1], &db, 7, 2).unwrap();
        assert_eq!(
            shown_grid(&right),
            [["A001005", "-", "A303730"], ["-", "A036765", "A049128"], ["-", "A159772", "-"]]
                .map(|row| row.map(String::from).to_vec())
                .to_vec()
        );
        assert!(right.contradictions().is_empty(), "{:?}", right.contradictions());
    }

    #[test]
    fn beta33_grid_reproduces_the_published_ids() {
        let db = fixture_db();
        let spec = &builtin_tables("table8").unwrap()[0];
        let scan = scan_table(spec, &db, 7, 2).unwrap();
        let expected = [
            ["-", "A089354", "A023053", "-", "-"],
            ["-", "-", "A001764", "A121545", "-"],
            ["-", "-", "A098746", "A006013", "-"],
            ["-", "-", "-", "A001764*", "-"],
            ["-", "-", "-", "A047099", "-"],
        ];
        assert_eq!(shown_grid(&scan), expected.map(|row| row.map(String::from).to_vec()).to_vec());
        assert!(scan.contradictions().is_empty(), "{:?}", scan.contradictions());
        let starred = &scan.cells[3][3];
        assert_eq!(starred.matches[0].kind, MatchKind::ShiftedPrefix { offset: 1 });
    }

    #[test]
    fn unknown_table_names_are_rejected() {
        assert_eq!(builtin_tables("table9").unwrap_err(), OeisError::UnknownTable("table9".into()));
    }

    #[test]
    fn renders_include_labels_ids_and_flags() {
        let db = fixture_db();
        let spec = &builtin_tables("table5").unwrap()[0];
        let scan = scan_table(spec, &db, 7, 2).unwrap();
        let markdown = scan.to_markdown();
        assert!(markdown.contains("| **alpha=1** | A001405 | A001006 |"));
        assert!(markdown.contains("A1177641 (malformed)"));
        assert!(markdown.contains("| --- "));
        let csv = scan.to_csv();
        assert!(csv.starts_with(",beta=0,beta=1"));
        assert!(csv.contains("alpha=1,A001405,A001006,A000108,A033321,-,-"));
        assert!(csv.contains("malformed:A1177641"));
    }

    #[test]
    fn table_specs_round_trip_through_json() {
        let spec = &builtin_tables("table8").unwrap()[0];
        let json = serde_json::to_string(spec).unwrap();
        let back: TableSpec = serde_json::from_str(&json).unwrap();
        assert_eq!(&back, spec);
    }
}
