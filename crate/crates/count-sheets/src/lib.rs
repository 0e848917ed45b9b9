//! Count sheets: a tiny line-oriented ledger format for additive dimension
//! counts, plus a parser, a canonical printer, and an auditor.
//!
//! Each stratum-dimension argument of the form "choose this (2), then that
//! (+1), then a fiber (+2), so the stratum has dimension at most 5" becomes
//! a *sheet*: a named list of signed integer contributions together with a
//! relation (`=` or `<=`) and a target. The auditor recomputes every sum and
//! checks the relation, so the arithmetic of each ledger is machine-checked
//! even though the geometry behind each line item is not.
//!
//! Grammar (line-oriented, whitespace-insensitive within lines, `#` starts
//! a comment running to end of line):
//!
//! ```text
//! file    := (sheet | comment | blank)*
//! sheet   := "sheet" NAME "expect" REL INT EOL line* "end" EOL
//! line    := ("add" | "sub") INT STRING ("ref" STRING)? EOL
//! REL     := "=" | "<="
//! NAME    := [A-Za-z0-9_-]+
//! INT     := decimal ≥ 0
//! STRING  := double-quoted, backslash escapes \" \\ \n \t
//! ```
//!
//! Parse errors carry a 1-based line and column. A sheet with no
//! contributions and a duplicated sheet name are errors at parse time;
//! failed relations are *report content*, never errors, so a single run
//! audits passing and failing sheets alike.
//!
//! [`bundled_sheets`] returns the ledgers shipped in
//! `assets/paper-sheets/*.sheet`, one per stratum dimension count in the
//! curve-family analysis; every bundled sheet passes and every contribution
//! cites a claim anchor in its `ref` field.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Parse failure with its 1-based source location.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }
}

/// The relation a sheet's total must satisfy against its target.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Relation {
    /// Total must equal the target.
    Equals,
    /// Total must not exceed the target (upper-bound ledgers).
    AtMost,
}

impl Relation {
    /// The surface syntax of the relation.
    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Equals => "=",
            Relation::AtMost => "<=",
        }
    }

    /// Whether `total REL target` holds.
    pub fn holds(self, total: i64, target: u32) -> bool {
        match self {
            Relation::Equals => total == i64::from(target),
            Relation::AtMost => total <= i64::from(target),
        }
    }
}

/// Whether a contribution is added or subtracted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Sign {
    Add,
    Sub,
}

impl Sign {
    /// The surface keyword of the sign.
    pub fn keyword(self) -> &'static str {
        match self {
            Sign::Add => "add",
            Sign::Sub => "sub",
        }
    }
}

/// One line item of a sheet: a signed amount with a description and an
/// optional claim anchor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Contribution {
    pub sign: Sign,
    pub amount: u32,
    pub description: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reference: Option<String>,
}

impl Contribution {
    /// The signed value this line contributes to the total.
    pub fn signed(&self) -> i64 {
        let amount = i64::from(self.amount);
        match self.sign {
            Sign::Add => amount,
            Sign::Sub => -amount,
        }
    }
}

/// A named additive count with a relation and target.
///
/// Invariants (enforced by the parser): the name matches `[A-Za-z0-9_-]+`
/// and there is at least one contribution.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountSheet {
    pub name: String,
    pub relation: Relation,
    pub target: u32,
    pub contributions: Vec<Contribution>,
}

impl CountSheet {
    /// The signed sum of all contributions.
    pub fn total(&self) -> i64 {
        self.contributions.iter().map(Contribution::signed).sum()
    }

    /// Whether the sheet's relation holds for its own total.
    pub fn passes(&self) -> bool {
        self.relation.holds(self.total(), self.target)
    }
}

impl std::fmt::Display for CountSheet {
    /// Canonical form: exactly what [`parse_sheets`] accepts, two-space
    /// indented contributions, minimal escapes.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(
            f,
            "sheet {} expect {} {}",
            self.name,
            self.relation.symbol(),
            self.target
        )?;
        for c in &self.contributions {
            write!(
                f,
                "  {} {} \"{}\"",
                c.sign.keyword(),
                c.amount,
                escape(&c.description)
            )?;
            if let Some(r) = &c.reference {
                write!(f, " ref \"{}\"", escape(r))?;
            }
            writeln!(f)?;
        }
        writeln!(f, "end")
    }
}

/// Render sheets in canonical form, separated by blank lines.
/// `parse_sheets(&print_sheets(&s))` reproduces `s` exactly.
pub fn print_sheets(sheets: &[CountSheet]) -> String {
    sheets
        .iter()
        .map(|s| s.to_string())
        .collect::<Vec<_>>()
        .join("\n")
}

fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for ch in s.chars() {
        match ch {
            '\\' => out.push_str("\\\\"),
            '"' => out.push_str("\\\""),
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            other => out.push(other),
        }
    }
    out
}

/// A token with its 1-based column.
#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    /// Bare word: keyword, name, relation symbol, or integer.
    Word(String),
    /// Double-quoted string, unescaped.
    Quoted(String),
}

impl Token {
    fn describe(&self) -> String {
        match self {
            Token::Word(w) => format!("`{w}`"),
            Token::Quoted(_) => "a quoted string".to_string(),
        }
    }
}

/// Split one line into tokens, honoring quotes and `#` comments.
fn tokenize(line_no: usize, line: &str) -> Result<Vec<(Token, usize)>, ParseError> {
    let mut tokens = Vec::new();
    let chars: Vec<char> = line.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let col = i + 1;
        let ch = chars[i];
        if ch.is_whitespace() {
            i += 1;
        } else if ch == '#' {
            break;
        } else if ch == '"' {
            let mut value = String::new();
            i += 1;
            loop {
                let Some(&c) = chars.get(i) else {
                    return Err(ParseError::new(line_no, col, "unterminated string"));
                };
                i += 1;
                match c {
                    '"' => break,
                    '\\' => {
                        let esc_col = i; // column of the backslash
                        let Some(&e) = chars.get(i) else {
                            return Err(ParseError::new(line_no, col, "unterminated string"));
                        };
                        i += 1;
                        value.push(match e {
                            '"' => '"',
                            '\\' => '\\',
                            'n' => '\n',
                            't' => '\t',
                            other => {
                                return Err(ParseError::new(
                                    line_no,
                                    esc_col,
                                    format!("unknown escape `\\{other}`"),
                                ))
                            }
                        });
                    }
                    other => value.push(other),
                }
            }
            tokens.push((Token::Quoted(value), col));
        } else {
            let start = i;
            while i < chars.len() {
                let c = chars[i];
                if c.is_whitespace() || c == '"' || c == '#' {
                    break;
                }
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            tokens.push((Token::Word(word), col));
        }
    }
    Ok(tokens)
}

fn is_valid_name(name: &str) -> bool {
    !name.is_empty()
        && name
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-')
}

/// Cursor over one line's tokens that produces located errors.
struct Line<'a> {
    line_no: usize,
    line_len: usize,
    tokens: &'a [(Token, usize)],
    pos: usize,
}

impl<'a> Line<'a> {
    fn next(&mut self, what: &str) -> Result<(&'a Token, usize), ParseError> {
        match self.tokens.get(self.pos) {
            Some((tok, col)) => {
                self.pos += 1;
                Ok((tok, *col))
            }
            None => Err(ParseError::new(
                self.line_no,
                self.line_len + 1,
                format!("expected {what}"),
            )),
        }
    }

    fn word(&mut self, what: &str) -> Result<(&'a str, usize), ParseError> {
        let (tok, col) = self.next(what)?;
        match tok {
            Token::Word(w) => Ok((w, col)),
            Token::Quoted(_) => Err(ParseError::new(
                self.line_no,
                col,
                format!("expected {what}, found a quoted string"),
            )),
        }
    }

    fn quoted(&mut self, what: &str) -> Result<(String, usize), ParseError> {
        let (tok, col) = self.next(what)?;
        match tok {
            Token::Quoted(s) => Ok((s.clone(), col)),
            Token::Word(w) => Err(ParseError::new(
                self.line_no,
                col,
                format!("expected {what}, found `{w}`"),
            )),
        }
    }

    fn integer(&mut self, what: &str) -> Result<(u32, usize), ParseError> {
        let (word, col) = self.word(what)?;
        match word.parse::<u32>() {
            Ok(n) => Ok((n, col)),
            Err(_) if !word.is_empty() && word.chars().all(|c| c.is_ascii_digit()) => Err(
                ParseError::new(self.line_no, col, format!("integer `{word}` is too large")),
            ),
            Err(_) => Err(ParseError::new(
                self.line_no,
                col,
                format!("expected {what}, found `{word}`"),
            )),
        }
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        match self.tokens.get(self.pos) {
            None => Ok(()),
            Some((tok, col)) => Err(ParseError::new(
                self.line_no,
                *col,
                format!("unexpected trailing {}", tok.describe()),
            )),
        }
    }
}

/// Parse a whole file of sheets.
///
/// Errors carry line/column; duplicate sheet names and sheets with no
/// contributions are rejected here so every [`CountSheet`] in the output
/// satisfies the type's invariants.
pub fn parse_sheets(input: &str) -> Result<Vec<CountSheet>, ParseError> {
    let mut sheets: Vec<CountSheet> = Vec::new();
    // The sheet currently being filled, with its header location for
    // missing-`end` reporting.
    let mut open: Option<(CountSheet, usize, usize)> = None;

    for (idx, raw) in input.lines().enumerate() {
        let line_no = idx + 1;
        let tokens = tokenize(line_no, raw)?;
        if tokens.is_empty() {
            continue;
        }
        let mut line = Line {
            line_no,
            line_len: raw.chars().count(),
            tokens: &tokens,
            pos: 0,
        };
        let (keyword, kw_col) = line.word("`sheet`, `add`, `sub`, or `end`")?;
        match (keyword, &mut open) {
            ("sheet", Some((sheet, ..))) => {
                return Err(ParseError::new(
                    line_no,
                    kw_col,
                    format!("sheet \"{}\" is missing `end`", sheet.name),
                ));
            }
            ("sheet", None) => {
                let (name, name_col) = line.word("a sheet name")?;
                if !is_valid_name(name) {
                    return Err(ParseError::new(
                        line_no,
                        name_col,
                        format!("invalid sheet name `{name}`"),
                    ));
                }
                if sheets.iter().any(|s| s.name == name) {
                    return Err(ParseError::new(
                        line_no,
                        name_col,
                        format!("duplicate sheet name \"{name}\""),
                    ));
                }
                let (expect, expect_col) = line.word("`expect`")?;
                if expect != "expect" {
                    return Err(ParseError::new(
                        line_no,
                        expect_col,
                        format!("expected `expect`, found `{expect}`"),
                    ));
                }
                let (rel, rel_col) = line.word("`=` or `<=`")?;
                let relation = match rel {
                    "=" => Relation::Equals,
                    "<=" => Relation::AtMost,
                    other => {
                        return Err(ParseError::new(
                            line_no,
                            rel_col,
                            format!("expected `=` or `<=`, found `{other}`"),
                        ))
                    }
                };
                let (target, _) = line.integer("a nonnegative target")?;
                line.finish()?;
                open = Some((
                    CountSheet {
                        name: name.to_string(),
                        relation,
                        target,
                        contributions: Vec::new(),
                    },
                    line_no,
                    kw_col,
                ));
            }
            (kw @ ("add" | "sub"), Some((sheet, ..))) => {
                let sign = if kw == "add" { Sign::Add } else { Sign::Sub };
                let (amount, _) = line.integer("a nonnegative amount")?;
                let (description, _) = line.quoted("a description string")?;
                let reference = if line.tokens.len() > line.pos {
                    let (word, col) = line.word("`ref`")?;
                    if word != "ref" {
                        return Err(ParseError::new(
                            line_no,
                            col,
                            format!("expected `ref`, found `{word}`"),
                        ));
                    }
                    let (anchor, _) = line.quoted("a reference string")?;
                    Some(anchor)
                } else {
                    None
                };
                line.finish()?;
                sheet.contributions.push(Contribution {
                    sign,
                    amount,
                    description,
                    reference,
                });
            }
            ("add" | "sub", None) => {
                return Err(ParseError::new(
                    line_no,
                    kw_col,
                    format!("`{keyword}` outside of a sheet"),
                ));
            }
            ("end", Some(..)) => {
                line.finish()?;
                let (sheet, ..) = open.take().expect("matched Some above");
                if sheet.contributions.is_empty() {
                    return Err(ParseError::new(
                        line_no,
                        kw_col,
                        format!("empty sheet \"{}\"", sheet.name),
                    ));
                }
                sheets.push(sheet);
            }
            ("end", None) => {
                return Err(ParseError::new(line_no, kw_col, "`end` outside of a sheet"));
            }
            (other, _) => {
                return Err(ParseError::new(
                    line_no,
                    kw_col,
                    format!("expected `sheet`, `add`, `sub`, or `end`, found `{other}`"),
                ));
            }
        }
    }

    if let Some((sheet, header_line, header_col)) = open {
        return Err(ParseError::new(
            header_line,
            header_col,
            format!("sheet \"{}\" is missing `end`", sheet.name),
        ));
    }
    Ok(sheets)
}

/// One audited sheet: its recomputed total against its declared relation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditEntry {
    pub name: String,
    pub total: i64,
    pub relation: Relation,
    pub target: u32,
    pub passed: bool,
}

/// Deterministic audit of a list of sheets, in input order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditReport {
    pub entries: Vec<AuditEntry>,
    pub passed: usize,
    pub failed: usize,
}

impl AuditReport {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }
}

impl std::fmt::Display for AuditReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name_width = self
            .entries
            .iter()
            .map(|e| e.name.len())
            .max()
            .unwrap_or(0)
            .max("sheet".len());
        writeln!(f, "{:<name_width$}  {:>6} {:>3} {:>6}  result", "sheet", "total", "", "target")?;
        for e in &self.entries {
            writeln!(
                f,
                "{:<name_width$}  {:>6} {:>3} {:>6}  {}",
                e.name,
                e.total,
                e.relation.symbol(),
                e.target,
                if e.passed { "pass" } else { "FAIL" }
            )?;
        }
        write!(f, "{} passed, {} failed", self.passed, self.failed)
    }
}

/// Recompute every sheet's total and check its relation. Failures are
/// entries in the report, not errors.
pub fn audit(sheets: &[CountSheet]) -> AuditReport {
    let entries: Vec<AuditEntry> = sheets
        .iter()
        .map(|s| {
            let total = s.total();
            AuditEntry {
                name: s.name.clone(),
                total,
                relation: s.relation,
                target: s.target,
                passed: s.relation.holds(total, s.target),
            }
        })
        .collect();
    let passed = entries.iter().filter(|e| e.passed).count();
    let failed = entries.len() - passed;
    AuditReport {
        entries,
        passed,
        failed,
    }
}

/// The sheet files shipped with the crate, as `(name, text)` pairs in
/// audit order. The texts are embedded at compile time from
/// `assets/paper-sheets/`.
pub const BUNDLED_SHEET_TEXTS: &[(&str, &str)] = &[
    ("conics", include_str!("../../../assets/paper-sheets/conics.sheet")),
    ("plane-cubics", include_str!("../../../assets/paper-sheets/plane-cubics.sheet")),
    ("twisted-cubics-J2", include_str!("../../../assets/paper-sheets/twisted-cubics-J2.sheet")),
    ("twisted-cubics-K", include_str!("../../../assets/paper-sheets/twisted-cubics-K.sheet")),
    ("twisted-cubics-J1", include_str!("../../../assets/paper-sheets/twisted-cubics-J1.sheet")),
    ("I41-bundle", include_str!("../../../assets/paper-sheets/I41-bundle.sheet")),
    ("quartic-elliptic", include_str!("../../../assets/paper-sheets/quartic-elliptic.sheet")),
    (
        "quartic-degenerate-incident",
        include_str!("../../../assets/paper-sheets/quartic-degenerate-incident.sheet"),
    ),
    (
        "quartic-degenerate-skew",
        include_str!("../../../assets/paper-sheets/quartic-degenerate-skew.sheet"),
    ),
    ("quartic-IP", include_str!("../../../assets/paper-sheets/quartic-IP.sheet")),
    ("quartic-I3", include_str!("../../../assets/paper-sheets/quartic-I3.sheet")),
    ("quartic-I2", include_str!("../../../assets/paper-sheets/quartic-I2.sheet")),
    ("quartic-I1", include_str!("../../../assets/paper-sheets/quartic-I1.sheet")),
    ("H1-tilde", include_str!("../../../assets/paper-sheets/H1-tilde.sheet")),
    ("H2-tilde", include_str!("../../../assets/paper-sheets/H2-tilde.sheet")),
    ("H3-tilde", include_str!("../../../assets/paper-sheets/H3-tilde.sheet")),
    ("H4-tilde", include_str!("../../../assets/paper-sheets/H4-tilde.sheet")),
    ("quintic-I1", include_str!("../../../assets/paper-sheets/quintic-I1.sheet")),
    ("quintic-I2", include_str!("../../../assets/paper-sheets/quintic-I2.sheet")),
    ("quintic-I3", include_str!("../../../assets/paper-sheets/quintic-I3.sheet")),
    ("quintic-I4", include_str!("../../../assets/paper-sheets/quintic-I4.sheet")),
    ("I5-quintic", include_str!("../../../assets/paper-sheets/I5-quintic.sheet")),
    ("quintic-I6", include_str!("../../../assets/paper-sheets/quintic-I6.sheet")),
    ("quintic-genus2", include_str!("../../../assets/paper-sheets/quintic-genus2.sheet")),
];

/// Parse the bundled ledger files. Each embedded file holds exactly one
/// sheet whose name matches the file stem; a malformed asset is a
/// programming error, so this panics rather than returning `Result`.
pub fn bundled_sheets() -> Vec<CountSheet> {
    BUNDLED_SHEET_TEXTS
        .iter()
        .map(|(name, text)| {
            let mut parsed = parse_sheets(text)
                .unwrap_or_else(|e| panic!("bundled sheet {name}: {e}"));
            assert_eq!(parsed.len(), 1, "bundled file {name} must hold one sheet");
            let sheet = parsed.pop().expect("length checked above");
            assert_eq!(&sheet.name, name, "bundled sheet name must match file stem");
            sheet
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_a_three_line_ledger() {
        let text = "sheet I1 expect = 8\n  add 6 \"dim Hdg(3,0)\"\n  add 2 \"two secant points on D_A x D_A\"\nend\n";
        let sheets = parse_sheets(text).unwrap();
        assert_eq!(sheets.len(), 1);
        let s = &sheets[0];
        assert_eq!(s.name, "I1");
        assert_eq!(s.relation, Relation::Equals);
        assert_eq!(s.target, 8);
        assert_eq!(s.total(), 8);
        assert!(s.passes());
        assert_eq!(s.contributions[0].description, "dim Hdg(3,0)");
        assert_eq!(s.contributions[1].reference, None);
    }

    #[test]
    fn subtraction_and_at_most() {
        let text = "sheet X expect <= 7\n  add 9 \"...\"\n  sub 2 \"...\"\nend\n";
        let sheets = parse_sheets(text).unwrap();
        assert_eq!(sheets[0].total(), 7);
        assert!(sheets[0].passes());
        // Strictly-below targets also pass under <=.
        let text = "sheet X expect <= 8\n  add 9 \"...\"\n  sub 2 \"...\"\nend\n";
        assert!(parse_sheets(text).unwrap()[0].passes());
    }

    #[test]
    fn empty_sheet_is_an_error() {
        let err = parse_sheets("sheet empty expect = 0\nend\n").unwrap_err();
        assert!(err.to_string().contains("empty sheet"), "{err}");
        assert_eq!(err.line, 2);
        assert_eq!(err.column, 1);
    }

    #[test]
    fn duplicate_sheet_name_is_an_error() {
        let text = "sheet A expect = 1\n add 1 \"x\"\nend\nsheet A expect = 2\n add 2 \"y\"\nend\n";
        let err = parse_sheets(text).unwrap_err();
        assert!(err.to_string().contains("duplicate sheet name"), "{err}");
        assert_eq!(err.line, 4);
    }

    #[test]
    fn located_syntax_errors() {
        // Bad relation token.
        let err = parse_sheets("sheet A expect == 7\n").unwrap_err();
        assert_eq!((err.line, err.column), (1, 16));
        assert!(err.message.contains("expected `=` or `<=`"), "{err}");
        // Negative amounts are not in the grammar.
        let err = parse_sheets("sheet A expect = 7\n  add -3 \"x\"\nend\n").unwrap_err();
        assert_eq!((err.line, err.column), (2, 7));
        // Unterminated string.
        let err = parse_sheets("sheet A expect = 7\n  add 3 \"x\nend\n").unwrap_err();
        assert_eq!(err.line, 2);
        assert!(err.message.contains("unterminated"), "{err}");
        // Missing end.
        let err = parse_sheets("sheet A expect = 7\n  add 7 \"x\"\n").unwrap_err();
        assert!(err.message.contains("missing `end`"), "{err}");
        // Stray directive outside a sheet.
        let err = parse_sheets("add 3 \"x\"\n").unwrap_err();
        assert!(err.message.contains("outside of a sheet"), "{err}");
        // Unknown escape, located at the backslash.
        let err = parse_sheets("sheet A expect = 7\n  add 7 \"a\\qb\"\nend\n").unwrap_err();
        assert!(err.message.contains("unknown escape"), "{err}");
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let text = "# ledger\n\nsheet A expect = 3 # header comment\n  add 3 \"uses # inside\" # trailing\nend\n";
        let sheets = parse_sheets(text).unwrap();
        assert_eq!(sheets[0].contributions[0].description, "uses # inside");
        assert!(sheets[0].passes());
    }

    #[test]
    fn print_then_parse_is_identity() {
        let sheets = vec![
            CountSheet {
                name: "A-1_b".into(),
                relation: Relation::AtMost,
                target: 7,
                contributions: vec![
                    Contribution {
                        sign: Sign::Add,
                        amount: 9,
                        description: "quote \" backslash \\ newline \n tab \t done".into(),
                        reference: Some("family.claim".into()),
                    },
                    Contribution {
                        sign: Sign::Sub,
                        amount: 2,
                        description: "plain".into(),
                        reference: None,
                    },
                ],
            },
            CountSheet {
                name: "B".into(),
                relation: Relation::Equals,
                target: 0,
                contributions: vec![Contribution {
                    sign: Sign::Sub,
                    amount: 0,
                    description: "# not a comment".into(),
                    reference: None,
                }],
            },
        ];
        let printed = print_sheets(&sheets);
        assert_eq!(parse_sheets(&printed).unwrap(), sheets);
    }

    #[test]
    fn audit_reports_failures_without_erroring() {
        let text = "sheet good expect = 2\n add 2 \"x\"\nend\nsheet bad expect = 11\n add 8 \"x\"\nend\n";
        let report = audit(&parse_sheets(text).unwrap());
        assert_eq!(report.passed, 1);
        assert_eq!(report.failed, 1);
        assert!(!report.all_passed());
        assert!(report.entries[0].passed);
        assert!(!report.entries[1].passed);
        let rendered = report.to_string();
        assert!(rendered.contains("FAIL"), "{rendered}");
        assert!(rendered.contains("1 passed, 1 failed"), "{rendered}");
    }

    #[test]
    fn bundled_ledgers_all_pass() {
        let sheets = bundled_sheets();
        assert!(sheets.len() >= 20, "have {}", sheets.len());
        let report = audit(&sheets);
        assert!(report.all_passed(), "{report}");
        for sheet in &sheets {
            for c in &sheet.contributions {
                let anchor = c.reference.as_deref().unwrap_or_else(|| {
                    panic!("sheet {} has a contribution without a ref", sheet.name)
                });
                assert!(!anchor.is_empty(), "sheet {} has an empty ref", sheet.name);
            }
        }
    }

    #[test]
    fn bundled_totals_of_record() {
        let sheets = bundled_sheets();
        let total =
            |name: &str| sheets.iter().find(|s| s.name == name).unwrap().total();
        assert_eq!(total("I41-bundle"), 9);
        assert_eq!(total("H2-tilde"), 10);
        assert_eq!(total("quintic-genus2"), 10);
        let i5 = sheets.iter().find(|s| s.name == "I5-quintic").unwrap();
        assert_eq!(i5.relation, Relation::AtMost);
        assert!(i5.total() <= i64::from(i5.target));
    }

    #[test]
    fn altering_a_target_flips_the_verdict() {
        // The quintic I4 ledger totals 8; demanding 11 must fail.
        let (_, text) = BUNDLED_SHEET_TEXTS
            .iter()
            .find(|(n, _)| *n == "quintic-I4")
            .unwrap();
        let mut sheet = parse_sheets(text).unwrap().pop().unwrap();
        assert_eq!(sheet.total(), 8);
        sheet.target = 11;
        sheet.relation = Relation::Equals;
        let report = audit(&[sheet]);
        assert_eq!(report.failed, 1);
    }

    #[test]
    fn bundled_round_trip() {
        let sheets = bundled_sheets();
        let printed = print_sheets(&sheets);
        assert_eq!(parse_sheets(&printed).unwrap(), sheets);
    }
}
