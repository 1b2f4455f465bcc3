//! Election-cycle records: CSV parsing and rendering, the embedded reference
//! table of seventeen midterms (1946–2010), approval-group filtering, and
//! column summaries.

use std::collections::HashMap;

use crate::error::{Error, Result};

/// The exact CSV header line, required verbatim on input and emitted on output.
pub const CSV_HEADER: &str = "year,president,party,approval,seat_change";

/// The reference table embedded in the artifact, one row per midterm cycle.
const REFERENCE_CSV: &str = "year,president,party,approval,seat_change
1998,Clinton,Democrat,66,5
1986,Reagan,Republican,63,-5
2002,G. W. Bush,Republican,63,6
1954,Eisenhower,Republican,61,-4
1962,Kennedy,Democrat,61,-4
1970,Nixon,Republican,58,-12
1990,G. H. W. Bush,Republican,58,-8
1958,Eisenhower,Republican,57,-47
1974,Ford,Republican,54,-43
1978,Carter,Democrat,49,-11
1994,Clinton,Democrat,46,-53
2010,Obama,Democrat,45,-63
1966,Johnson,Democrat,44,-47
1982,Reagan,Republican,42,-28
1950,Truman,Democrat,39,-29
2006,G. W. Bush,Republican,38,-30
1946,Truman,Democrat,33,-55";

/// Which slice of the data a model is fit on, split on the 50% approval mark.
///
/// A record with approval exactly 50 belongs to neither subgroup.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ApprovalGroup {
    All,
    Above50,
    Below50,
}

impl ApprovalGroup {
    /// The three groups in reporting order.
    pub const EACH: [ApprovalGroup; 3] = [
        ApprovalGroup::All,
        ApprovalGroup::Above50,
        ApprovalGroup::Below50,
    ];

    /// Whether a record with this approval rating falls in the group.
    pub fn contains(self, approval: f64) -> bool {
        match self {
            ApprovalGroup::All => true,
            ApprovalGroup::Above50 => approval > 50.0,
            ApprovalGroup::Below50 => approval < 50.0,
        }
    }
}

impl std::fmt::Display for ApprovalGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            ApprovalGroup::All => "all",
            ApprovalGroup::Above50 => "above_50",
            ApprovalGroup::Below50 => "below_50",
        };
        f.write_str(name)
    }
}

impl std::str::FromStr for ApprovalGroup {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(ApprovalGroup::All),
            "above_50" => Ok(ApprovalGroup::Above50),
            "below_50" => Ok(ApprovalGroup::Below50),
            other => Err(Error::domain(format!(
                "unknown group {other:?}; expected all, above_50, or below_50"
            ))),
        }
    }
}

/// One midterm cycle: who held the White House, at what approval, and how
/// many House seats the president's party gained (positive) or lost
/// (negative).
#[derive(Debug, Clone, PartialEq)]
pub struct ElectionRecord {
    pub year: i32,
    pub president: String,
    pub party: String,
    /// Gallup approval percentage going into the midterm; the predictor x.
    pub approval: f64,
    /// Net seat change for the president's party; the response y.
    pub seat_change: i32,
}

impl ElectionRecord {
    pub fn new(
        year: i32,
        president: impl Into<String>,
        party: impl Into<String>,
        approval: f64,
        seat_change: i32,
    ) -> Result<Self> {
        if !(0.0..=100.0).contains(&approval) {
            return Err(Error::domain(format!(
                "approval {approval} outside [0, 100]"
            )));
        }
        Ok(ElectionRecord {
            year,
            president: president.into(),
            party: party.into(),
            approval,
            seat_change,
        })
    }
}

/// An ordered collection of records with unique years; the regression sample.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ElectionDataset {
    records: Vec<ElectionRecord>,
}

impl ElectionDataset {
    pub fn new() -> Self {
        ElectionDataset::default()
    }

    /// Builds a dataset from records, rejecting duplicate years.
    pub fn from_records(records: Vec<ElectionRecord>) -> Result<Self> {
        let mut ds = ElectionDataset::new();
        for rec in records {
            ds.push(rec)?;
        }
        Ok(ds)
    }

    /// Appends a record, rejecting a year already present.
    pub fn push(&mut self, rec: ElectionRecord) -> Result<()> {
        if self.records.iter().any(|r| r.year == rec.year) {
            return Err(Error::domain(format!("duplicate year {}", rec.year)));
        }
        self.records.push(rec);
        Ok(())
    }

    pub fn records(&self) -> &[ElectionRecord] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, ElectionRecord> {
        self.records.iter()
    }

    /// Approval column in record order.
    pub fn approvals(&self) -> Vec<f64> {
        self.records.iter().map(|r| r.approval).collect()
    }

    /// Seat-change column in record order, widened to real for regression.
    pub fn seat_changes(&self) -> Vec<f64> {
        self.records
            .iter()
            .map(|r| f64::from(r.seat_change))
            .collect()
    }

    /// (approval, seat_change) pairs in record order — the regression input.
    pub fn pairs(&self) -> Vec<(f64, f64)> {
        self.records
            .iter()
            .map(|r| (r.approval, f64::from(r.seat_change)))
            .collect()
    }
}

impl<'a> IntoIterator for &'a ElectionDataset {
    type Item = &'a ElectionRecord;
    type IntoIter = std::slice::Iter<'a, ElectionRecord>;

    fn into_iter(self) -> Self::IntoIter {
        self.records.iter()
    }
}

/// Parses CSV text (LF or CRLF) with the exact header
/// `year,president,party,approval,seat_change` into a validated dataset.
///
/// Every rejection names the offending 1-based line (the header is line 1):
/// wrong field count, non-numeric year/approval/seat_change, approval outside
/// [0, 100], or a duplicated year.
pub fn parse_dataset(csv_text: &str) -> Result<ElectionDataset> {
    let mut lines: Vec<&str> = csv_text
        .split('\n')
        .map(|l| l.strip_suffix('\r').unwrap_or(l))
        .collect();
    while lines.last() == Some(&"") {
        lines.pop();
    }

    let header = lines.first().copied().unwrap_or("");
    if header != CSV_HEADER {
        return Err(Error::BadHeader {
            expected: CSV_HEADER,
            found: header.to_string(),
        });
    }

    let mut records = Vec::new();
    let mut year_lines: HashMap<i32, usize> = HashMap::new();
    for (idx, raw) in lines.iter().enumerate().skip(1) {
        let line = idx + 1;
        let fields = split_fields(raw, line)?;
        if fields.len() != 5 {
            return Err(Error::WrongFieldCount {
                line,
                found: fields.len(),
            });
        }

        let year: i32 = fields[0].parse().map_err(|_| Error::InvalidField {
            line,
            field: "year",
            value: fields[0].clone(),
        })?;
        let approval: f64 = fields[3].parse().map_err(|_| Error::InvalidField {
            line,
            field: "approval",
            value: fields[3].clone(),
        })?;
        if !(0.0..=100.0).contains(&approval) {
            return Err(Error::ApprovalOutOfRange {
                line,
                value: approval,
            });
        }
        let seat_change: i32 = fields[4].parse().map_err(|_| Error::InvalidField {
            line,
            field: "seat_change",
            value: fields[4].clone(),
        })?;

        if let Some(&first_line) = year_lines.get(&year) {
            return Err(Error::DuplicateYear {
                line,
                year,
                first_line,
            });
        }
        year_lines.insert(year, line);

        records.push(ElectionRecord {
            year,
            president: fields[1].clone(),
            party: fields[2].clone(),
            approval,
            seat_change,
        });
    }

    Ok(ElectionDataset { records })
}

/// Splits one CSV line into fields. Fields are plain unless double-quoted;
/// inside quotes a comma is literal and `""` is an escaped quote.
fn split_fields(line: &str, line_no: usize) -> Result<Vec<String>> {
    let mut fields = Vec::new();
    let mut chars = line.chars().peekable();

    loop {
        let mut field = String::new();
        if chars.peek() == Some(&'"') {
            chars.next();
            loop {
                match chars.next() {
                    Some('"') if chars.peek() == Some(&'"') => {
                        chars.next();
                        field.push('"');
                    }
                    Some('"') => break,
                    Some(c) => field.push(c),
                    None => {
                        return Err(Error::InvalidField {
                            line: line_no,
                            field: "quoted field",
                            value: line.to_string(),
                        })
                    }
                }
            }
        } else {
            while let Some(&c) = chars.peek() {
                if c == ',' {
                    break;
                }
                chars.next();
                field.push(c);
            }
        }
        fields.push(field);

        match chars.next() {
            Some(',') => continue,
            None => break,
            Some(c) => {
                return Err(Error::InvalidField {
                    line: line_no,
                    field: "quoted field",
                    value: format!("unexpected {c:?} after closing quote"),
                })
            }
        }
    }

    Ok(fields)
}

/// Renders a dataset back to CSV: LF line endings, no trailing newline, and
/// fields quoted only when they contain a comma, quote, or newline.
/// `parse_dataset(render_csv(ds))` reproduces `ds` exactly.
pub fn render_csv(ds: &ElectionDataset) -> String {
    let mut out = String::from(CSV_HEADER);
    for rec in ds {
        out.push('\n');
        out.push_str(&format!(
            "{},{},{},{},{}",
            rec.year,
            escape_field(&rec.president),
            escape_field(&rec.party),
            rec.approval,
            rec.seat_change
        ));
    }
    out
}

fn escape_field(field: &str) -> String {
    if field.contains(',') || field.contains('"') || field.contains('\n') {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

/// The seventeen reference midterms (1946–2010), parsed from the embedded CSV.
pub fn reference_dataset() -> ElectionDataset {
    parse_dataset(REFERENCE_CSV).expect("embedded reference table is valid")
}

/// The embedded reference table as CSV text (what `reference_dataset` parses).
pub fn reference_csv() -> &'static str {
    REFERENCE_CSV
}

/// Keeps the records whose approval falls in `group`, preserving order.
/// `Above50` and `Below50` are strict, so approval exactly 50 survives
/// neither; compare group sizes against the full dataset to see how many
/// records sat on the boundary.
pub fn filter_by_approval(ds: &ElectionDataset, group: ApprovalGroup) -> ElectionDataset {
    ElectionDataset {
        records: ds
            .iter()
            .filter(|r| group.contains(r.approval))
            .cloned()
            .collect(),
    }
}

/// Checks the stricter plausibility rule for real midterm data: every year
/// must be an even integer at or after 1900. Errors name the record's
/// CSV-style line (header counted as line 1).
pub fn validate_strict(ds: &ElectionDataset) -> Result<()> {
    for (idx, rec) in ds.iter().enumerate() {
        if rec.year < 1900 || rec.year % 2 != 0 {
            return Err(Error::ImplausibleYear {
                line: idx + 2,
                year: rec.year,
            });
        }
    }
    Ok(())
}

/// Count, mean, and sample standard deviation of one column.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SummaryStats {
    pub n: usize,
    pub mean: f64,
    /// `None` when n < 2, where the sample deviation is undefined.
    pub sd: Option<f64>,
}

/// Mean and sample (n − 1) standard deviation of a series.
///
/// An empty series is an error; a singleton has a mean but no deviation. A
/// constant series reports sd exactly 0.
pub fn summarize(values: &[f64]) -> Result<SummaryStats> {
    if values.is_empty() {
        return Err(Error::EmptySeries);
    }
    let n = values.len();
    let mean = values.iter().sum::<f64>() / n as f64;
    let sd = if n < 2 {
        None
    } else if values.iter().all(|v| *v == values[0]) {
        Some(0.0)
    } else {
        let ss: f64 = values.iter().map(|v| (v - mean) * (v - mean)).sum();
        Some((ss / (n - 1) as f64).sqrt())
    };
    Ok(SummaryStats { n, mean, sd })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn parses_single_row() {
        let ds =
            parse_dataset("year,president,party,approval,seat_change\n1998,Clinton,Democrat,66,5")
                .unwrap();
        assert_eq!(ds.len(), 1);
        let rec = &ds.records()[0];
        assert_eq!(rec.year, 1998);
        assert_eq!(rec.president, "Clinton");
        assert_eq!(rec.party, "Democrat");
        assert_eq!(rec.approval, 66.0);
        assert_eq!(rec.seat_change, 5);
    }

    #[test]
    fn header_only_is_empty() {
        let ds = parse_dataset("year,president,party,approval,seat_change\n").unwrap();
        assert!(ds.is_empty());
    }

    #[test]
    fn rejects_bad_header() {
        let err = parse_dataset("YEAR,president,party,approval,seat_change\n").unwrap_err();
        assert!(matches!(err, Error::BadHeader { .. }), "{err}");
    }

    #[test]
    fn rejects_out_of_range_approval_naming_line() {
        let err =
            parse_dataset("year,president,party,approval,seat_change\n1998,Clinton,Democrat,105,5")
                .unwrap_err();
        match err {
            Error::ApprovalOutOfRange { line, value } => {
                assert_eq!(line, 2);
                assert_eq!(value, 105.0);
            }
            other => panic!("wrong error: {other}"),
        }
        let msg =
            parse_dataset("year,president,party,approval,seat_change\n1998,Clinton,Democrat,105,5")
                .unwrap_err()
                .to_string();
        assert!(msg.contains("line 2"), "{msg}");
        assert!(msg.contains("100"), "{msg}");
    }

    #[test]
    fn rejects_wrong_field_count() {
        let err = parse_dataset("year,president,party,approval,seat_change\n1998,Clinton,66,5")
            .unwrap_err();
        assert!(
            matches!(err, Error::WrongFieldCount { line: 2, found: 4 }),
            "{err}"
        );
    }

    #[test]
    fn rejects_non_numeric_fields() {
        for (row, field) in [
            ("199x,Clinton,Democrat,66,5", "year"),
            ("1998,Clinton,Democrat,high,5", "approval"),
            ("1998,Clinton,Democrat,66,up", "seat_change"),
            ("1998,Clinton,Democrat,66,5.5", "seat_change"),
        ] {
            let csv = format!("year,president,party,approval,seat_change\n{row}");
            let err = parse_dataset(&csv).unwrap_err();
            match err {
                Error::InvalidField { line, field: f, .. } => {
                    assert_eq!(line, 2);
                    assert_eq!(f, field);
                }
                other => panic!("row {row:?}: wrong error {other}"),
            }
        }
    }

    #[test]
    fn rejects_duplicate_year() {
        let err = parse_dataset(
            "year,president,party,approval,seat_change\n\
             1998,Clinton,Democrat,66,5\n\
             1998,Clinton,Democrat,60,1",
        )
        .unwrap_err();
        assert!(
            matches!(
                err,
                Error::DuplicateYear {
                    line: 3,
                    year: 1998,
                    first_line: 2
                }
            ),
            "{err}"
        );
    }

    #[test]
    fn accepts_crlf_and_trailing_newline() {
        let ds = parse_dataset(
            "year,president,party,approval,seat_change\r\n1998,Clinton,Democrat,66,5\r\n",
        )
        .unwrap();
        assert_eq!(ds.len(), 1);
    }

    #[test]
    fn reference_has_seventeen_rows() {
        let ds = reference_dataset();
        assert_eq!(ds.len(), 17);
        let by_year = |y: i32| ds.iter().find(|r| r.year == y).unwrap();
        let obama = by_year(2010);
        assert_eq!(obama.approval, 45.0);
        assert_eq!(obama.seat_change, -63);
        assert_eq!(by_year(2002).seat_change, 6);
        assert_eq!(by_year(2002).president, "G. W. Bush");
        validate_strict(&ds).unwrap();
    }

    #[test]
    fn filter_splits_reference_nine_eight() {
        let ds = reference_dataset();
        let above = filter_by_approval(&ds, ApprovalGroup::Above50);
        let below = filter_by_approval(&ds, ApprovalGroup::Below50);
        assert_eq!(above.len(), 9);
        assert_eq!(below.len(), 8);
        let above_years: Vec<i32> = above.iter().map(|r| r.year).collect();
        assert_eq!(
            above_years,
            [1998, 1986, 2002, 1954, 1962, 1970, 1990, 1958, 1974]
        );
        assert!(below.iter().all(|r| r.approval < 50.0));
        assert_eq!(
            filter_by_approval(&ds, ApprovalGroup::All).records(),
            ds.records()
        );
    }

    #[test]
    fn boundary_approval_joins_neither_group() {
        let ds = parse_dataset(
            "year,president,party,approval,seat_change\n2040,Nobody,Independent,50,0",
        )
        .unwrap();
        assert!(filter_by_approval(&ds, ApprovalGroup::Above50).is_empty());
        assert!(filter_by_approval(&ds, ApprovalGroup::Below50).is_empty());
        assert_eq!(filter_by_approval(&ds, ApprovalGroup::All).len(), 1);
    }

    #[test]
    fn summarize_reference_approval_column() {
        let stats = summarize(&reference_dataset().approvals()).unwrap();
        assert_eq!(stats.n, 17);
        assert_abs_diff_eq!(stats.mean, 51.58823529, epsilon = 1e-6);
        assert_abs_diff_eq!(stats.sd.unwrap(), 10.25340689, epsilon = 1e-6);
    }

    #[test]
    fn summarize_below_fifty_seats() {
        let below = filter_by_approval(&reference_dataset(), ApprovalGroup::Below50);
        let stats = summarize(&below.seat_changes()).unwrap();
        assert_abs_diff_eq!(stats.mean, -39.5, epsilon = 1e-9);
        assert_abs_diff_eq!(stats.sd.unwrap(), 17.63114128, epsilon = 1e-6);
    }

    #[test]
    fn summarize_edge_cases() {
        assert!(matches!(summarize(&[]), Err(Error::EmptySeries)));
        let single = summarize(&[4.5]).unwrap();
        assert_eq!(single.mean, 4.5);
        assert_eq!(single.sd, None);
        let constant = summarize(&[7.0, 7.0, 7.0]).unwrap();
        assert_eq!(constant.mean, 7.0);
        assert_eq!(constant.sd, Some(0.0));
        let tricky = summarize(&[0.1, 0.1, 0.1]).unwrap();
        assert_eq!(tricky.sd, Some(0.0));
    }

    #[test]
    fn render_round_trips_reference() {
        let ds = reference_dataset();
        let csv = render_csv(&ds);
        assert_eq!(parse_dataset(&csv).unwrap(), ds);
        assert_eq!(csv, reference_csv());
    }

    #[test]
    fn render_quotes_commas() {
        let ds = ElectionDataset::from_records(vec![ElectionRecord::new(
            2040,
            "Smith, Jr.",
            "Independent",
            50.5,
            0,
        )
        .unwrap()])
        .unwrap();
        let csv = render_csv(&ds);
        assert!(csv.contains("\"Smith, Jr.\""), "{csv}");
        assert_eq!(parse_dataset(&csv).unwrap(), ds);
    }

    #[test]
    fn strict_validation_flags_odd_or_early_years() {
        let odd =
            parse_dataset("year,president,party,approval,seat_change\n1947,Truman,Democrat,33,-55")
                .unwrap();
        let err = validate_strict(&odd).unwrap_err();
        assert!(
            matches!(
                err,
                Error::ImplausibleYear {
                    line: 2,
                    year: 1947
                }
            ),
            "{err}"
        );
        let early = parse_dataset(
            "year,president,party,approval,seat_change\n1898,McKinley,Republican,50,0",
        )
        .unwrap();
        assert!(validate_strict(&early).is_err());
    }

    #[test]
    fn group_parsing_and_display() {
        for g in ApprovalGroup::EACH {
            assert_eq!(g.to_string().parse::<ApprovalGroup>().unwrap(), g);
        }
        assert!("mid".parse::<ApprovalGroup>().is_err());
    }

    #[test]
    fn duplicate_year_rejected_on_push() {
        let rec = ElectionRecord::new(1998, "Clinton", "Democrat", 66.0, 5).unwrap();
        let mut ds = ElectionDataset::from_records(vec![rec.clone()]).unwrap();
        assert!(ds.push(rec).is_err());
    }
}
