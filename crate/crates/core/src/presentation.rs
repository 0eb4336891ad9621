//! Finite presentations, the paper families, and the line-based text format.
//!
//! Text format:
//!
//! ```text
//! # comment
//! gens: r0 r1 r2
//! rel: r0^2
//! rel: [(r0*r1)^2, r2]^4
//! param: n = 10
//! ```
//!
//! `gens:` must come before any `rel:` line. `param:` lines are optional and
//! carry named integers (used by `analyze` as expectations).

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::words::{free_reduce, parse_word, Letter, ParseError, Word};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    pub generator_names: Vec<String>,
    pub relators: Vec<Word>,
    pub params: BTreeMap<String, i64>,
}

impl Presentation {
    /// Builds a presentation, freely reducing every relator.
    pub fn new(generator_names: Vec<String>, relators: Vec<Word>) -> Self {
        let relators = relators.iter().map(free_reduce).collect();
        Presentation {
            generator_names,
            relators,
            params: BTreeMap::new(),
        }
    }

    /// Parses each relator expression with the grammar in [`crate::words`].
    pub fn from_exprs(generator_names: &[&str], relators: &[&str]) -> Result<Self, ParseError> {
        let names: Vec<String> = generator_names.iter().map(|s| s.to_string()).collect();
        let words = relators
            .iter()
            .map(|r| parse_word(r, &names))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Presentation::new(names, words))
    }

    pub fn with_params(mut self, params: &[(&str, i64)]) -> Self {
        for (k, v) in params {
            self.params.insert(k.to_string(), *v);
        }
        self
    }

    pub fn generator_count(&self) -> usize {
        self.generator_names.len()
    }

    pub fn param(&self, name: &str) -> Option<i64> {
        self.params.get(name).copied()
    }

    pub fn add_relator(&mut self, word: Word) {
        self.relators.push(free_reduce(&word));
    }

    pub fn render_relators(&self) -> Vec<String> {
        self.relators
            .iter()
            .map(|r| r.render(&self.generator_names))
            .collect()
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("gens: {}\n", self.generator_names.join(" "));
        for rel in self.render_relators() {
            out.push_str(&format!("rel: {rel}\n"));
        }
        for (k, v) in &self.params {
            out.push_str(&format!("param: {k} = {v}\n"));
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self, FormatError> {
        let mut names: Option<Vec<String>> = None;
        let mut relators = Vec::new();
        let mut params = BTreeMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("");
            if content.trim().is_empty() {
                continue;
            }
            let Some((key, rest)) = content.split_once(':') else {
                return Err(FormatError::Line {
                    line,
                    message: "expected `gens:`, `rel:` or `param:`".into(),
                });
            };
            // column of the first character after the colon
            let offset = key.chars().count() + 1;
            match key.trim() {
                "gens" => {
                    if names.is_some() {
                        return Err(FormatError::Line {
                            line,
                            message: "duplicate `gens:` line".into(),
                        });
                    }
                    let list: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
                    if list.is_empty() {
                        return Err(FormatError::Line {
                            line,
                            message: "no generators declared".into(),
                        });
                    }
                    for (i, g) in list.iter().enumerate() {
                        let valid = g
                            .chars()
                            .next()
                            .is_some_and(|c| c.is_alphabetic() || c == '_')
                            && g.chars().all(|c| c.is_alphanumeric() || c == '_');
                        if !valid || list[..i].contains(g) {
                            return Err(FormatError::Line {
                                line,
                                message: format!("invalid or duplicate generator name `{g}`"),
                            });
                        }
                    }
                    names = Some(list);
                }
                "rel" => {
                    let Some(gens) = names.as_ref() else {
                        return Err(FormatError::Line {
                            line,
                            message: "`rel:` before `gens:`".into(),
                        });
                    };
                    let word = parse_word(rest, gens).map_err(|source| FormatError::Relator {
                        line,
                        column: offset + source.column(),
                        source,
                    })?;
                    relators.push(word);
                }
                "param" => {
                    let parsed = rest.split_once('=').and_then(|(k, v)| {
                        let k = k.trim();
                        let v = i64::from_str(v.trim()).ok()?;
                        (!k.is_empty()).then(|| (k.to_string(), v))
                    });
                    match parsed {
                        Some((k, v)) => {
                            params.insert(k, v);
                        }
                        None => {
                            return Err(FormatError::Line {
                                line,
                                message: "expected `param: <name> = <integer>`".into(),
                            })
                        }
                    }
                }
                other => {
                    return Err(FormatError::Line {
                        line,
                        message: format!("unknown directive `{other}`"),
                    })
                }
            }
        }
        let names = names.ok_or(FormatError::MissingGenerators)?;
        let mut p = Presentation::new(names, relators);
        p.params = params;
        Ok(p)
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "< {} | {} >",
            self.generator_names.join(", "),
            self.render_relators().join(", ")
        )
    }
}

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Line { line: usize, message: String },
    #[error("line {line}, column {column}: {}", source.message())]
    Relator {
        line: usize,
        column: usize,
        source: ParseError,
    },
    #[error("missing `gens:` line")]
    MissingGenerators,
}

/// The presentation families used in the construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    M1,
    M2,
    L1,
    L2,
    L3,
    G,
    G1,
    G2,
    G3,
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "M1" => Family::M1,
            "M2" => Family::M2,
            "L1" => Family::L1,
            "L2" => Family::L2,
            "L3" => Family::L3,
            "G" => Family::G,
            "G1" => Family::G1,
            "G2" => Family::G2,
            "G3" => Family::G3,
            other => return Err(format!("unknown family `{other}`")),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParamError {
    #[error("missing parameter `{0}`")]
    Missing(&'static str),
    #[error("parameter constraint violated: {0}")]
    Constraint(String),
    #[error("parameter `{0}` too large")]
    TooLarge(&'static str),
}

/// Parameters of the main family: |G| = 2^n, type (2^s, 2^t, 2^l).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TheoremParams {
    pub n: u32,
    pub s: u32,
    pub t: u32,
    pub l: u32,
}

impl TheoremParams {
    pub fn new(n: u32, s: u32, t: u32, l: u32) -> Self {
        TheoremParams { n, s, t, l }
    }

    /// Checks `n >= 10`, `s, t >= 2`, `l >= 1`, `n >= s + t + l`, naming the
    /// first violated inequality.
    pub fn validate(&self) -> Result<(), ParamError> {
        if self.n < 10 {
            return Err(ParamError::Constraint(format!(
                "n ≥ 10 (got n = {})",
                self.n
            )));
        }
        if self.s < 2 {
            return Err(ParamError::Constraint(format!(
                "s ≥ 2 (got s = {})",
                self.s
            )));
        }
        if self.t < 2 {
            return Err(ParamError::Constraint(format!(
                "t ≥ 2 (got t = {})",
                self.t
            )));
        }
        if self.l < 1 {
            return Err(ParamError::Constraint(format!(
                "l ≥ 1 (got l = {})",
                self.l
            )));
        }
        if self.n < self.s + self.t + self.l {
            return Err(ParamError::Constraint(format!(
                "n ≥ s+t+l (got {} < {})",
                self.n,
                self.s + self.t + self.l
            )));
        }
        if self.n > 40 || self.s > 30 || self.t > 30 || self.l > 30 {
            return Err(ParamError::TooLarge("n"));
        }
        Ok(())
    }

    /// `n - s - t - l`.
    pub fn excess(&self) -> u32 {
        self.n - self.s - self.t - self.l
    }

    pub fn parity(&self) -> Parity {
        if self.excess().is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl fmt::Display for TheoremParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(n={}, s={}, t={}, l={})",
            self.n, self.s, self.t, self.l
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

fn rho_names() -> Vec<String> {
    vec!["r0".into(), "r1".into(), "r2".into()]
}

const R0: usize = 0;
const R1: usize = 1;
const R2: usize = 2;

fn g(i: usize) -> Word {
    Word::from_letters(vec![Letter::gen(i)])
}

fn prod(gens: &[usize]) -> Word {
    Word::from_gens(gens)
}

fn pow2(e: u32) -> i64 {
    1i64 << e
}

/// The relator shared by the whole G-family chain: the even/odd extra relator
/// `[(r0 r1)^2, r2]^(2^(k/2))` or `[(r0 r1)^2, (r1 r2)^2]^(2^((k-1)/2))`,
/// `k = n - s - t - l`.
pub fn parity_relator(p: &TheoremParams) -> Word {
    let k = p.excess();
    match p.parity() {
        Parity::Even => prod(&[R0, R1]).pow(2).commutator(&g(R2)).pow(pow2(k / 2)),
        Parity::Odd => prod(&[R0, R1])
            .pow(2)
            .commutator(&prod(&[R1, R2]).pow(2))
            .pow(pow2((k - 1) / 2)),
    }
}

fn involutions() -> Vec<Word> {
    vec![g(R0).pow(2), g(R1).pow(2), g(R2).pow(2)]
}

fn lookup(params: &BTreeMap<String, i64>, key: &'static str) -> Result<i64, ParamError> {
    params.get(key).copied().ok_or(ParamError::Missing(key))
}

fn theorem_params(params: &BTreeMap<String, i64>) -> Result<TheoremParams, ParamError> {
    let get = |k: &'static str| -> Result<u32, ParamError> {
        let v = lookup(params, k)?;
        u32::try_from(v)
            .map_err(|_| ParamError::Constraint(format!("{k} must be a positive integer")))
    };
    let p = TheoremParams::new(get("n")?, get("s")?, get("t")?, get("l")?);
    p.validate()?;
    Ok(p)
}

fn small_exponent(params: &BTreeMap<String, i64>, key: &'static str) -> Result<u32, ParamError> {
    let v = lookup(params, key)?;
    if v < 1 {
        return Err(ParamError::Constraint(format!(
            "{key} ≥ 1 (got {key} = {v})"
        )));
    }
    if v > 30 {
        return Err(ParamError::TooLarge(key));
    }
    Ok(v as u32)
}

/// Builds the presentation of `kind` exactly as written in the construction.
pub fn build_paper_presentation(
    kind: Family,
    params: &BTreeMap<String, i64>,
) -> Result<Presentation, ParamError> {
    let mut relators = Vec::new();
    let mut stored: Vec<(&str, i64)> = Vec::new();
    match kind {
        Family::M1 | Family::M2 => {
            let b = lookup(params, "b")?;
            if b < 2 {
                return Err(ParamError::Constraint(format!("b ≥ 2 (got b = {b})")));
            }
            if b > 1 << 20 {
                return Err(ParamError::TooLarge("b"));
            }
            relators.extend(involutions());
            relators.push(prod(&[R0, R1]).pow(4));
            relators.push(prod(&[R1, R2]).pow(4));
            relators.push(prod(&[R0, R2]).pow(2));
            if kind == Family::M1 {
                relators.push(prod(&[R2, R1, R0]).pow(2 * b));
            } else {
                relators.push(prod(&[R1, R2, R1, R0]).pow(b));
            }
            stored.push(("b", b));
        }
        Family::L1 => {
            let s = small_exponent(params, "s")?;
            relators.extend([
                g(R0).pow(2),
                g(R1).pow(2),
                g(R2),
                prod(&[R0, R1]).pow(pow2(s)),
            ]);
            stored.push(("s", s as i64));
        }
        Family::L2 => {
            let t = small_exponent(params, "t")?;
            relators.extend([
                g(R0),
                g(R1).pow(2),
                g(R2).pow(2),
                prod(&[R1, R2]).pow(pow2(t)),
            ]);
            stored.push(("t", t as i64));
        }
        Family::L3 => {
            let l = small_exponent(params, "l")?;
            relators.extend([
                g(R0).pow(2),
                g(R2).pow(2),
                g(R1),
                prod(&[R0, R2]).pow(pow2(l)),
            ]);
            stored.push(("l", l as i64));
        }
        Family::G | Family::G1 | Family::G2 | Family::G3 => {
            let p = theorem_params(params)?;
            relators.extend(involutions());
            let (e01, e02) = match kind {
                Family::G => (pow2(p.s), pow2(p.l)),
                Family::G1 => (pow2(p.s), 2),
                Family::G2 => (4, 2),
                _ => (4, 2),
            };
            let e12 = if kind == Family::G3 { 4 } else { pow2(p.t) };
            relators.push(prod(&[R0, R1]).pow(e01));
            relators.push(prod(&[R1, R2]).pow(e12));
            relators.push(prod(&[R0, R2]).pow(e02));
            if matches!(kind, Family::G | Family::G1) {
                relators.push(prod(&[R0, R1]).pow(4).commutator(&g(R2)));
            }
            if kind != Family::G3 {
                relators.push(g(R0).commutator(&prod(&[R1, R2]).pow(4)));
            }
            if kind == Family::G {
                relators.push(prod(&[R0, R2]).pow(2).commutator(&g(R1)));
            }
            relators.push(parity_relator(&p));
            stored.extend([
                ("n", p.n as i64),
                ("s", p.s as i64),
                ("t", p.t as i64),
                ("l", p.l as i64),
            ]);
        }
    }
    Ok(Presentation::new(rho_names(), relators).with_params(&stored))
}

/// Convenience wrapper for the main family.
pub fn theorem_presentation(kind: Family, p: &TheoremParams) -> Result<Presentation, ParamError> {
    let params: BTreeMap<String, i64> = [
        ("n".to_string(), p.n as i64),
        ("s".to_string(), p.s as i64),
        ("t".to_string(), p.t as i64),
        ("l".to_string(), p.l as i64),
    ]
    .into_iter()
    .collect();
    build_paper_presentation(kind, &params)
}

pub fn m_presentation(kind: Family, b: i64) -> Result<Presentation, ParamError> {
    let params: BTreeMap<String, i64> = [("b".to_string(), b)].into_iter().collect();
    build_paper_presentation(kind, &params)
}
