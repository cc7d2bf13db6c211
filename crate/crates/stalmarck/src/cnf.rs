//! CNF formulas: DIMACS parsing and writing, plus model evaluation.
//!
//! The parser is strict about structure (header first, every clause closed by
//! `0`) but tolerant about the clause count in the header, which benchmark
//! files frequently get wrong: a mismatch is reported as a warning, not an
//! error. Clause order and within-clause literal order are preserved exactly.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

/// A clause formula: clauses of nonzero signed variable indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CnfFormula {
    /// Declared variable count; every |literal| is ≤ this.
    pub num_vars: u32,
    /// Clauses in input order, literals in input order.
    pub clauses: Vec<Vec<i32>>,
}

/// A total assignment over some set of variables (1-based indices).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Assignment {
    values: BTreeMap<u32, bool>,
}

impl Assignment {
    pub fn new() -> Assignment {
        Assignment::default()
    }

    pub fn set(&mut self, var: u32, value: bool) {
        self.values.insert(var, value);
    }

    pub fn get(&self, var: u32) -> Option<bool> {
        self.values.get(&var).copied()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Pairs `(var, value)` in ascending variable order.
    pub fn iter(&self) -> impl Iterator<Item = (u32, bool)> + '_ {
        self.values.iter().map(|(&v, &b)| (v, b))
    }
}

impl FromIterator<(u32, bool)> for Assignment {
    fn from_iter<I: IntoIterator<Item = (u32, bool)>>(iter: I) -> Assignment {
        Assignment {
            values: iter.into_iter().collect(),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("missing 'p cnf <vars> <clauses>' header before first clause")]
    MissingHeader,
    #[error("line {line}: literal {literal} out of range (declared {num_vars} variables)")]
    LiteralOutOfRange {
        literal: i32,
        num_vars: u32,
        line: usize,
    },
    #[error("unexpected end of input inside a clause (missing terminating 0)")]
    UnterminatedClause,
    #[error("line {line}: expected an integer literal, found {token:?}")]
    MalformedToken { token: String, line: usize },
}

/// Non-fatal oddities found while parsing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseWarning {
    /// Header promised `declared` clauses but the body held `found`.
    ClauseCountMismatch { declared: usize, found: usize },
}

impl std::fmt::Display for ParseWarning {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ParseWarning::ClauseCountMismatch { declared, found } => write!(
                f,
                "header declares {declared} clauses but {found} were found"
            ),
        }
    }
}

/// A parsed DIMACS document: the formula plus any warnings.
#[derive(Debug, Clone, PartialEq)]
pub struct ParsedDimacs {
    pub formula: CnfFormula,
    pub warnings: Vec<ParseWarning>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EvalError {
    #[error("model assigns no value to variable {var}")]
    UnassignedVariable { var: u32 },
}

/// Parses DIMACS CNF text.
///
/// Comment lines (`c ...`) and blank lines are skipped anywhere, including
/// inside a clause that spans lines. Clauses end at `0`; a final clause left
/// open at end of input is an error. The header's variable count bounds the
/// literals; its clause count is advisory only.
pub fn parse_dimacs(input: &str) -> Result<ParsedDimacs, ParseError> {
    let mut num_vars: u32 = 0;
    let mut declared_clauses: usize = 0;
    let mut saw_header = false;

    let mut clauses: Vec<Vec<i32>> = Vec::new();
    let mut current: Vec<i32> = Vec::new();
    let mut in_clause = false;

    for (idx, raw_line) in input.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw_line.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if !saw_header {
            let mut parts = line.split_whitespace();
            if parts.next() != Some("p") {
                return Err(ParseError::MissingHeader);
            }
            if parts.next() != Some("cnf") {
                return Err(ParseError::MalformedToken {
                    token: line.to_string(),
                    line: line_no,
                });
            }
            let vars_tok = parts.next().unwrap_or("");
            let clauses_tok = parts.next().unwrap_or("");
            num_vars = vars_tok.parse().map_err(|_| ParseError::MalformedToken {
                token: vars_tok.to_string(),
                line: line_no,
            })?;
            declared_clauses = clauses_tok
                .parse()
                .map_err(|_| ParseError::MalformedToken {
                    token: clauses_tok.to_string(),
                    line: line_no,
                })?;
            if let Some(extra) = parts.next() {
                return Err(ParseError::MalformedToken {
                    token: extra.to_string(),
                    line: line_no,
                });
            }
            saw_header = true;
            continue;
        }
        for token in line.split_whitespace() {
            let lit: i32 = token.parse().map_err(|_| ParseError::MalformedToken {
                token: token.to_string(),
                line: line_no,
            })?;
            if lit == 0 {
                clauses.push(std::mem::take(&mut current));
                in_clause = false;
            } else {
                if lit.unsigned_abs() > num_vars {
                    return Err(ParseError::LiteralOutOfRange {
                        literal: lit,
                        num_vars,
                        line: line_no,
                    });
                }
                current.push(lit);
                in_clause = true;
            }
        }
    }

    if !saw_header {
        return Err(ParseError::MissingHeader);
    }
    if in_clause {
        return Err(ParseError::UnterminatedClause);
    }

    let mut warnings = Vec::new();
    if clauses.len() != declared_clauses {
        warnings.push(ParseWarning::ClauseCountMismatch {
            declared: declared_clauses,
            found: clauses.len(),
        });
    }

    Ok(ParsedDimacs {
        formula: CnfFormula { num_vars, clauses },
        warnings,
    })
}

/// Serializes a formula to DIMACS text; `parse_dimacs` inverts this exactly.
pub fn write_dimacs(cnf: &CnfFormula) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "p cnf {} {}", cnf.num_vars, cnf.clauses.len());
    for clause in &cnf.clauses {
        for lit in clause {
            let _ = write!(out, "{lit} ");
        }
        out.push_str("0\n");
    }
    out
}

/// True iff every clause contains a literal satisfied by `model`.
///
/// The model must cover every variable the formula mentions.
pub fn evaluate(cnf: &CnfFormula, model: &Assignment) -> Result<bool, EvalError> {
    for clause in &cnf.clauses {
        let mut satisfied = false;
        for &lit in clause {
            let var = lit.unsigned_abs();
            let value = model
                .get(var)
                .ok_or(EvalError::UnassignedVariable { var })?;
            if value == (lit > 0) {
                satisfied = true;
            }
        }
        if !satisfied {
            return Ok(false);
        }
    }
    Ok(true)
}
