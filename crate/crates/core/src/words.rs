//! Words over abstract generators and the relator-expression grammar.
//!
//! Grammar (whitespace is insignificant except as a separator):
//!
//! ```text
//! expr    := factor ( ['*'] factor )*        juxtaposition or '*' is the product
//! factor  := primary ( '^' suffix )*         left associative
//! suffix  := ['-'] integer                   power, negative powers invert
//!          | primary                         conjugation x^y = y^-1 x y
//! primary := symbol | '1' | '(' expr ')' | '[' expr ( ',' expr )+ ']'
//! ```
//!
//! `[x, y]` expands to `x^-1 y^-1 x y`; longer brackets are left-normed, so
//! `[x, y, z] = [[x, y], z]`. Every parsed word is freely reduced.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A generator or its formal inverse, packed as `2 * generator + inverse`.
///
/// The packing doubles as the column index in a coset table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter(u32);

impl Letter {
    pub fn gen(generator: usize) -> Self {
        Letter((generator as u32) << 1)
    }

    pub fn inv(generator: usize) -> Self {
        Letter(((generator as u32) << 1) | 1)
    }

    pub fn from_column(column: usize) -> Self {
        Letter(column as u32)
    }

    pub fn generator(self) -> usize {
        (self.0 >> 1) as usize
    }

    pub fn is_inverse(self) -> bool {
        self.0 & 1 == 1
    }

    pub fn inverse(self) -> Self {
        Letter(self.0 ^ 1)
    }

    pub fn column(self) -> usize {
        self.0 as usize
    }
}

/// A word in the free group, stored flat.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    /// Word from generator indices, all positive.
    pub fn from_gens(gens: &[usize]) -> Self {
        Word(gens.iter().map(|&g| Letter::gen(g)).collect())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.0.iter().map(|l| l.generator()).max()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&other.0);
        free_reduce(&Word(letters))
    }

    pub fn pow(&self, exponent: i64) -> Word {
        let base = if exponent < 0 {
            self.inverse()
        } else {
            self.clone()
        };
        let mut letters = Vec::with_capacity(base.len() * exponent.unsigned_abs() as usize);
        for _ in 0..exponent.unsigned_abs() {
            letters.extend_from_slice(&base.0);
        }
        free_reduce(&Word(letters))
    }

    /// `self^-1 other^-1 self other`.
    pub fn commutator(&self, other: &Word) -> Word {
        let mut letters = self.inverse().0;
        letters.extend(other.inverse().0);
        letters.extend_from_slice(&self.0);
        letters.extend_from_slice(&other.0);
        free_reduce(&Word(letters))
    }

    /// `by^-1 self by`.
    pub fn conjugate(&self, by: &Word) -> Word {
        let mut letters = by.inverse().0;
        letters.extend_from_slice(&self.0);
        letters.extend_from_slice(&by.0);
        free_reduce(&Word(letters))
    }

    pub fn is_freely_reduced(&self) -> bool {
        self.0.windows(2).all(|w| w[0] != w[1].inverse())
    }

    /// Renders with the given generator names, e.g. `r0*r1^-1`. The empty
    /// word renders as `1`.
    pub fn render(&self, names: &[String]) -> String {
        if self.0.is_empty() {
            return "1".to_string();
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|l| {
                let name = names
                    .get(l.generator())
                    .cloned()
                    .unwrap_or_else(|| format!("g{}", l.generator()));
                if l.is_inverse() {
                    format!("{name}^-1")
                } else {
                    name
                }
            })
            .collect();
        parts.join("*")
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..=self.max_generator().unwrap_or(0))
            .map(|i| format!("g{i}"))
            .collect();
        f.write_str(&self.render(&names))
    }
}

/// Cancels adjacent `x x^-1` pairs until none remain.
pub fn free_reduce(word: &Word) -> Word {
    let mut out: Vec<Letter> = Vec::with_capacity(word.len());
    for &l in &word.0 {
        if out.last() == Some(&l.inverse()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    Word(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at column {column}: {message}")]
    Syntax { column: usize, message: String },
    #[error("unknown generator `{symbol}` at column {column}")]
    UnknownGenerator { column: usize, symbol: String },
}

impl ParseError {
    /// The error without its position.
    pub fn message(&self) -> String {
        match self {
            ParseError::Syntax { message, .. } => message.clone(),
            ParseError::UnknownGenerator { symbol, .. } => format!("unknown generator `{symbol}`"),
        }
    }

    /// 1-based column of the offending character.
    pub fn column(&self) -> usize {
        match self {
            ParseError::Syntax { column, .. } | ParseError::UnknownGenerator { column, .. } => {
                *column
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Symbol(String),
    Int(i64),
    Star,
    Caret,
    Minus,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
}

fn tokenize(text: &str) -> Result<Vec<(Token, usize)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let column = i + 1;
        let simple = match c {
            '*' => Some(Token::Star),
            '^' => Some(Token::Caret),
            '-' => Some(Token::Minus),
            '(' => Some(Token::LParen),
            ')' => Some(Token::RParen),
            '[' => Some(Token::LBracket),
            ']' => Some(Token::RBracket),
            ',' => Some(Token::Comma),
            _ => None,
        };
        if let Some(tok) = simple {
            tokens.push((tok, column));
            i += 1;
        } else if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            let value = digits.parse::<i64>().map_err(|_| ParseError::Syntax {
                column,
                message: format!("integer `{digits}` out of range"),
            })?;
            tokens.push((Token::Int(value), column));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            tokens.push((Token::Symbol(chars[start..i].iter().collect()), column));
        } else {
            return Err(ParseError::Syntax {
                column,
                message: format!("unexpected character `{c}`"),
            });
        }
    }
    Ok(tokens)
}

struct Parser<'a> {
    tokens: Vec<(Token, usize)>,
    pos: usize,
    end_column: usize,
    generators: &'a [String],
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(t, _)| t)
    }

    fn column(&self) -> usize {
        self.tokens
            .get(self.pos)
            .map(|(_, c)| *c)
            .unwrap_or(self.end_column)
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax {
            column: self.column(),
            message: message.into(),
        })
    }

    fn expect(&mut self, want: Token, what: &str) -> Result<(), ParseError> {
        if self.peek() == Some(&want) {
            self.pos += 1;
            Ok(())
        } else {
            self.error(format!("expected {what}"))
        }
    }

    fn starts_primary(&self) -> bool {
        matches!(
            self.peek(),
            Some(Token::Symbol(_))
                | Some(Token::Int(_))
                | Some(Token::LParen)
                | Some(Token::LBracket)
        )
    }

    fn expr(&mut self) -> Result<Word, ParseError> {
        let mut acc = self.factor()?;
        loop {
            if self.peek() == Some(&Token::Star) {
                self.pos += 1;
                let rhs = self.factor()?;
                acc = acc.concat(&rhs);
            } else if self.starts_primary() {
                let rhs = self.factor()?;
                acc = acc.concat(&rhs);
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<Word, ParseError> {
        let mut base = self.primary()?;
        while self.peek() == Some(&Token::Caret) {
            self.pos += 1;
            match self.peek() {
                Some(Token::Minus) => {
                    self.pos += 1;
                    match self.peek() {
                        Some(&Token::Int(k)) => {
                            self.pos += 1;
                            base = base.pow(-k);
                        }
                        _ => return self.error("expected integer after `^-`"),
                    }
                }
                Some(&Token::Int(k)) => {
                    self.pos += 1;
                    base = base.pow(k);
                }
                _ if self.starts_primary() => {
                    let by = self.primary()?;
                    base = base.conjugate(&by);
                }
                _ => return self.error("expected exponent or conjugating element after `^`"),
            }
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Word, ParseError> {
        let column = self.column();
        match self.peek().cloned() {
            Some(Token::Symbol(name)) => {
                self.pos += 1;
                match self.generators.iter().position(|g| *g == name) {
                    Some(index) => Ok(Word(vec![Letter::gen(index)])),
                    None => Err(ParseError::UnknownGenerator {
                        column,
                        symbol: name,
                    }),
                }
            }
            Some(Token::Int(1)) => {
                self.pos += 1;
                Ok(Word::empty())
            }
            Some(Token::Int(k)) => self.error(format!(
                "bare integer `{k}` (only `1` denotes the identity)"
            )),
            Some(Token::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(Token::RParen, "`)`")?;
                Ok(inner)
            }
            Some(Token::LBracket) => {
                self.pos += 1;
                let mut acc = self.expr()?;
                self.expect(Token::Comma, "`,` inside commutator")?;
                loop {
                    let next = self.expr()?;
                    acc = acc.commutator(&next);
                    if self.peek() == Some(&Token::Comma) {
                        self.pos += 1;
                    } else {
                        break;
                    }
                }
                self.expect(Token::RBracket, "`]`")?;
                Ok(acc)
            }
            Some(_) => self.error("expected generator, `1`, `(` or `[`"),
            None => self.error("unexpected end of expression"),
        }
    }
}

/// Parses a relator expression into a freely reduced word over `generators`.
pub fn parse_word(text: &str, generators: &[String]) -> Result<Word, ParseError> {
    let tokens = tokenize(text)?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        end_column: text.chars().count() + 1,
        generators,
    };
    let word = parser.expr()?;
    if parser.pos != parser.tokens.len() {
        return parser.error("trailing input");
    }
    Ok(word)
}
