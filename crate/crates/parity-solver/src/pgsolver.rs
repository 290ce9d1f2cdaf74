//! PGSolver text format: `parity <max-id>;` header followed by
//! `<id> <priority> <owner> <succ>,<succ>,... ("name")? ;` node statements.
//!
//! Input ids may be sparse and self-loops are allowed; parsing compacts ids
//! to dense indices (keeping the original id for emission) and subdivides
//! loops. Emission is canonical: header present, nodes sorted by external
//! id, successors ascending, LF line endings.

use std::fmt::Write as _;

use thiserror::Error;

use crate::game::{Game, NodeId, Owner, build_game, normalize_self_loops};
use crate::game::{NodeSpec, NormalizeReport};
use crate::node_set::NodeSet;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("{line}:{column}: expected {expected}")]
    Syntax { line: usize, column: usize, expected: String },
    #[error("{line}:{column}: unknown owner {value}, expected 0 or 1")]
    UnknownOwner { value: u64, line: usize, column: usize },
    #[error("line {line}: node {node} references undefined node {target}")]
    DanglingEdge { node: u64, target: u64, line: usize },
}

/// A game together with the external ids and optional names of its nodes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedGame {
    pub game: Game,
    /// External id of each dense node; injective, ascending for parsed games.
    pub original_ids: Vec<u64>,
    pub names: Vec<Option<String>>,
}

impl NamedGame {
    /// Wraps a game whose dense ids are also its external ids.
    pub fn from_game(game: Game) -> Self {
        let n = game.node_count();
        NamedGame {
            game,
            original_ids: (0..n as u64).collect(),
            names: vec![None; n],
        }
    }

    pub fn external_id(&self, v: NodeId) -> u64 {
        self.original_ids[v.index()]
    }

    /// External ids of a node set, ascending.
    pub fn external_ids(&self, set: &NodeSet) -> Vec<u64> {
        let mut ids: Vec<u64> = set.iter().map(|v| self.external_id(v)).collect();
        ids.sort_unstable();
        ids
    }
}

#[derive(Debug, Clone, PartialEq)]
enum TokenKind {
    Number(u64),
    Word(String),
    Quoted(String),
    Comma,
    Semi,
}

#[derive(Debug, Clone)]
struct Token {
    kind: TokenKind,
    line: usize,
    column: usize,
}

fn tokenize(text: &str) -> Result<Vec<Token>, ParseError> {
    let mut tokens = Vec::new();
    let mut line = 1usize;
    let mut column = 0usize;
    let mut chars = text.chars().peekable();
    while let Some(c) = chars.next() {
        column += 1;
        match c {
            '\n' => {
                line += 1;
                column = 0;
            }
            c if c.is_whitespace() => {}
            ',' => tokens.push(Token { kind: TokenKind::Comma, line, column }),
            ';' => tokens.push(Token { kind: TokenKind::Semi, line, column }),
            '"' => {
                let start = column;
                let mut name = String::new();
                loop {
                    match chars.next() {
                        Some('"') => {
                            column += 1;
                            break;
                        }
                        Some('\n') | None => {
                            return Err(ParseError::Syntax {
                                line,
                                column: start,
                                expected: "closing quote".into(),
                            });
                        }
                        Some(c) => {
                            column += 1;
                            name.push(c);
                        }
                    }
                }
                column += name.chars().count();
                tokens.push(Token { kind: TokenKind::Quoted(name), line, column: start });
            }
            c if c.is_ascii_digit() => {
                let start = column;
                let mut value = c.to_digit(10).unwrap() as u64;
                while let Some(d) = chars.peek().and_then(|c| c.to_digit(10)) {
                    chars.next();
                    column += 1;
                    value = value
                        .checked_mul(10)
                        .and_then(|v| v.checked_add(d as u64))
                        .ok_or(ParseError::Syntax {
                            line,
                            column: start,
                            expected: "number within 64 bits".into(),
                        })?;
                }
                tokens.push(Token { kind: TokenKind::Number(value), line, column: start });
            }
            c if c.is_alphabetic() => {
                let start = column;
                let mut word = String::from(c);
                while chars.peek().is_some_and(|c| c.is_alphanumeric() || *c == '_') {
                    word.push(chars.next().unwrap());
                    column += 1;
                }
                tokens.push(Token { kind: TokenKind::Word(word), line, column: start });
            }
            other => {
                return Err(ParseError::Syntax {
                    line,
                    column,
                    expected: format!("token, found {other:?}"),
                });
            }
        }
    }
    Ok(tokens)
}

struct Cursor {
    tokens: Vec<Token>,
    pos: usize,
    last_line: usize,
    last_column: usize,
}

impl Cursor {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        if let Some(t) = &t {
            self.last_line = t.line;
            self.last_column = t.column + 1;
            self.pos += 1;
        }
        t
    }

    fn err(&self, at: Option<&Token>, expected: &str) -> ParseError {
        match at {
            Some(t) => ParseError::Syntax {
                line: t.line,
                column: t.column,
                expected: expected.into(),
            },
            None => ParseError::Syntax {
                line: self.last_line,
                column: self.last_column,
                expected: expected.into(),
            },
        }
    }

    fn expect_number(&mut self, what: &str) -> Result<(u64, usize, usize), ParseError> {
        match self.next() {
            Some(Token { kind: TokenKind::Number(v), line, column }) => Ok((v, line, column)),
            other => Err(self.err(other.as_ref(), what)),
        }
    }

    fn expect_semi(&mut self) -> Result<(), ParseError> {
        match self.next() {
            Some(Token { kind: TokenKind::Semi, .. }) => Ok(()),
            other => Err(self.err(other.as_ref(), "';'")),
        }
    }
}

struct Statement {
    id: u64,
    priority: u32,
    owner: Owner,
    successors: Vec<(u64, usize)>,
    name: Option<String>,
    line: usize,
}

/// Parses PGSolver text into a validated, loop-free [`NamedGame`].
pub fn parse_pgsolver(text: &str) -> Result<NamedGame, ParseError> {
    let (named, _) = parse_pgsolver_report(text)?;
    Ok(named)
}

/// [`parse_pgsolver`] plus the normalization report (loop subdivisions and
/// dropped duplicate edges).
pub fn parse_pgsolver_report(text: &str) -> Result<(NamedGame, NormalizeReport), ParseError> {
    let mut cursor = Cursor { tokens: tokenize(text)?, pos: 0, last_line: 1, last_column: 1 };

    // Optional advisory header; actual ids win over the declared maximum.
    if let Some(Token { kind: TokenKind::Word(w), .. }) = cursor.peek() {
        if w == "parity" {
            cursor.next();
            cursor.expect_number("maximum node id")?;
            cursor.expect_semi()?;
        } else {
            let t = cursor.peek().cloned();
            return Err(cursor.err(t.as_ref(), "'parity' header or node statement"));
        }
    }

    let mut statements: Vec<Statement> = Vec::new();
    while cursor.peek().is_some() {
        let (id, line, _) = cursor.expect_number("node id")?;
        let (priority, pl, pc) = cursor.expect_number("priority")?;
        let priority = u32::try_from(priority).map_err(|_| ParseError::Syntax {
            line: pl,
            column: pc,
            expected: "priority within 32 bits".into(),
        })?;
        let (owner_value, ol, oc) = cursor.expect_number("owner")?;
        let owner = match owner_value {
            0 => Owner::Even,
            1 => Owner::Odd,
            value => return Err(ParseError::UnknownOwner { value, line: ol, column: oc }),
        };
        let mut successors = Vec::new();
        let (first, sl, _) = cursor.expect_number("successor id")?;
        successors.push((first, sl));
        while matches!(cursor.peek(), Some(Token { kind: TokenKind::Comma, .. })) {
            cursor.next();
            let (succ, sl, _) = cursor.expect_number("successor id")?;
            successors.push((succ, sl));
        }
        let name = if let Some(Token { kind: TokenKind::Quoted(_), .. }) = cursor.peek() {
            match cursor.next() {
                Some(Token { kind: TokenKind::Quoted(name), .. }) => Some(name),
                _ => unreachable!(),
            }
        } else {
            None
        };
        cursor.expect_semi()?;
        statements.push(Statement { id, priority, owner, successors, name, line });
    }

    // Compact sparse external ids to dense indices in ascending id order.
    let mut order: Vec<usize> = (0..statements.len()).collect();
    order.sort_by_key(|&i| statements[i].id);
    for pair in order.windows(2) {
        if statements[pair[0]].id == statements[pair[1]].id {
            let dup = &statements[pair[1].max(pair[0])];
            return Err(ParseError::Syntax {
                line: dup.line,
                column: 1,
                expected: format!("unique node id, {} is already defined", dup.id),
            });
        }
    }
    let dense_of = |ext: u64| order.binary_search_by_key(&ext, |&i| statements[i].id).ok();

    let mut specs = Vec::with_capacity(statements.len());
    let mut names = Vec::with_capacity(statements.len());
    let mut original_ids = Vec::with_capacity(statements.len());
    for &i in &order {
        let st = &statements[i];
        let mut succs = Vec::with_capacity(st.successors.len());
        for &(target, line) in &st.successors {
            let Some(dense) = dense_of(target) else {
                return Err(ParseError::DanglingEdge { node: st.id, target, line });
            };
            succs.push(dense as u32);
        }
        specs.push(NodeSpec::new(st.owner, st.priority, succs));
        names.push(st.name.clone());
        original_ids.push(st.id);
    }

    let (specs, report) = normalize_self_loops(&specs);
    let mut next_ext = original_ids.iter().max().map_or(0, |m| m + 1);
    for _ in original_ids.len()..specs.len() {
        original_ids.push(next_ext);
        names.push(None);
        next_ext += 1;
    }

    let game = build_game(&specs).expect("normalized specs are structurally valid");
    Ok((NamedGame { game, original_ids, names }, report))
}

/// Canonical emission; [`parse_pgsolver`] of the output reproduces the game
/// exactly, and emitting again is byte-identical.
pub fn emit_pgsolver(named: &NamedGame) -> String {
    let game = &named.game;
    let mut order: Vec<NodeId> = game.nodes().collect();
    order.sort_by_key(|&v| named.external_id(v));
    let max_id = order.last().map_or(0, |&v| named.external_id(v));

    let mut out = String::new();
    writeln!(out, "parity {max_id};").unwrap();
    for &v in &order {
        let mut succs: Vec<u64> =
            game.successors(v).iter().map(|&t| named.external_id(t)).collect();
        succs.sort_unstable();
        let succs =
            succs.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
        write!(
            out,
            "{} {} {} {}",
            named.external_id(v),
            game.priority(v),
            game.owner(v).index(),
            succs
        )
        .unwrap();
        if let Some(name) = &named.names[v.index()] {
            write!(out, " \"{name}\"").unwrap();
        }
        out.push_str(";\n");
    }
    out
}
