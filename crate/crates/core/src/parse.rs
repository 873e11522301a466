//! Text input: polynomial expressions, map documents, and field / truncation
//! descriptors.
//!
//! Expression grammar (whitespace is insignificant):
//!
//! ```text
//! expr   := ('+'|'-')? term (('+'|'-') term)*
//! term   := power ('*'? power)*
//! power  := atom ('^' integer)?
//! atom   := integer ('/' integer)? | var | 't' | '(' expr ')'
//! var    := 'x' index            (index in 1..=n)
//! ```
//!
//! `t` denotes the generator of an extension field. Integer and fraction
//! literals are reduced into the field as soon as they are read.
//!
//! A map document looks like
//!
//! ```text
//! # comments start with '#'
//! field: p=3
//! n: 2
//! point: 0, 0
//! x1 -> x1 + x2^2
//! x2 -> x2
//! ```
//!
//! Assignments may also be separated by `,` or `;` on one line. The `n:` and
//! `point:` headers are optional; `field:` may be supplied by the caller.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::field::{CoefficientField, Scalar};
use crate::poly::{PolyEndo, Polynomial};
use crate::trunc::TruncationSpec;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Var(usize),
    Gen,
    Unknown(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
    End,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn describe(tok: &Tok) -> String {
    match tok {
        Tok::Int(v) => format!("integer {v}"),
        Tok::Var(i) => format!("x{i}"),
        Tok::Gen => "t".into(),
        Tok::Unknown(s) => format!("'{s}'"),
        Tok::Plus => "'+'".into(),
        Tok::Minus => "'-'".into(),
        Tok::Star => "'*'".into(),
        Tok::Caret => "'^'".into(),
        Tok::Slash => "'/'".into(),
        Tok::LParen => "'('".into(),
        Tok::RParen => "')'".into(),
        Tok::End => "end of expression".into(),
    }
}

fn lex(text: &str, line: usize, col0: usize) -> Result<Vec<Token>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = col0 + i;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let single = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '^' => Some(Tok::Caret),
            '/' => Some(Tok::Slash),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(tok) = single {
            out.push(Token { tok, line, col });
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push(Token {
                tok: Tok::Int(s.parse().expect("digits")),
                line,
                col,
            });
            continue;
        }
        if c == 'x' && i + 1 < chars.len() && chars[i + 1].is_ascii_digit() {
            let start = i + 1;
            i += 1;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            let idx = s.parse::<usize>().unwrap_or(usize::MAX);
            out.push(Token {
                tok: Tok::Var(idx),
                line,
                col,
            });
            continue;
        }
        if c == 't' && !chars.get(i + 1).is_some_and(|n| n.is_alphanumeric() || *n == '_') {
            out.push(Token {
                tok: Tok::Gen,
                line,
                col,
            });
            i += 1;
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Token {
                tok: Tok::Unknown(chars[start..i].iter().collect()),
                line,
                col,
            });
            continue;
        }
        return Err(Error::Syntax {
            line,
            col,
            message: format!("unexpected character '{c}'"),
        });
    }
    out.push(Token {
        tok: Tok::End,
        line,
        col: col0 + chars.len(),
    });
    Ok(out)
}

/// How `t` is interpreted.
#[derive(Clone, Copy)]
enum GenMode {
    /// `t` is the extension field generator.
    FieldGenerator,
    /// `t` is the single polynomial variable (modulus descriptors).
    Variable,
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    field: &'a CoefficientField,
    nvars: usize,
    gen: GenMode,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn next(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn syntax(&self, tok: &Token, message: impl Into<String>) -> Error {
        Error::Syntax {
            line: tok.line,
            col: tok.col,
            message: message.into(),
        }
    }

    fn parse_all(&mut self) -> Result<Polynomial> {
        let p = self.expr()?;
        let t = self.peek().clone();
        if t.tok != Tok::End {
            return Err(self.syntax(&t, format!("unexpected {}", describe(&t.tok))));
        }
        Ok(p)
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let negate = match self.peek().tok {
            Tok::Minus => {
                self.next();
                true
            }
            Tok::Plus => {
                self.next();
                false
            }
            _ => false,
        };
        let mut acc = self.term()?;
        if negate {
            acc = -&acc;
        }
        loop {
            match self.peek().tok {
                Tok::Plus => {
                    self.next();
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.next();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn starts_factor(tok: &Tok) -> bool {
        matches!(
            tok,
            Tok::Int(_) | Tok::Var(_) | Tok::Gen | Tok::Unknown(_) | Tok::LParen
        )
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.power()?;
        loop {
            if self.peek().tok == Tok::Star {
                self.next();
                acc = &acc * &self.power()?;
            } else if Self::starts_factor(&self.peek().tok) {
                acc = &acc * &self.power()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.peek().tok != Tok::Caret {
            return Ok(base);
        }
        self.next();
        let t = self.next();
        match &t.tok {
            Tok::Int(v) => {
                let e = v
                    .to_u32()
                    .ok_or_else(|| self.syntax(&t, "exponent too large"))?;
                Ok(base.pow(e))
            }
            other => Err(self.syntax(
                &t,
                format!("expected non-negative integer exponent, found {}", describe(other)),
            )),
        }
    }

    fn atom(&mut self) -> Result<Polynomial> {
        let t = self.next();
        match &t.tok {
            Tok::Int(num) => {
                if self.peek().tok == Tok::Slash {
                    self.next();
                    let d = self.next();
                    let Tok::Int(den) = &d.tok else {
                        return Err(self.syntax(
                            &d,
                            format!("expected integer denominator, found {}", describe(&d.tok)),
                        ));
                    };
                    if den.is_zero() {
                        return Err(Error::CoefficientOutOfField {
                            value: format!("{num}/{den}"),
                            reason: "zero denominator".into(),
                        });
                    }
                    let elem = self.field.from_ratio(num, den).map_err(|_| {
                        Error::CoefficientOutOfField {
                            value: format!("{num}/{den}"),
                            reason: format!(
                                "denominator vanishes in {}",
                                self.field.descriptor()
                            ),
                        }
                    })?;
                    Ok(Polynomial::constant(self.nvars, &self.field.wrap(elem)))
                } else {
                    Ok(Polynomial::constant(
                        self.nvars,
                        &self.field.scalar_from_bigint(num),
                    ))
                }
            }
            Tok::Var(i) => {
                if *i == 0 || *i > self.nvars || matches!(self.gen, GenMode::Variable) {
                    return Err(Error::UnknownVariable {
                        name: format!("x{i}"),
                        line: t.line,
                        col: t.col,
                    });
                }
                Polynomial::var(self.field, self.nvars, i - 1)
            }
            Tok::Gen => match self.gen {
                GenMode::Variable => Polynomial::var(self.field, self.nvars, 0),
                GenMode::FieldGenerator => match self.field.generator() {
                    Some(g) => Ok(Polynomial::constant(self.nvars, &g)),
                    None => Err(Error::UnknownVariable {
                        name: "t".into(),
                        line: t.line,
                        col: t.col,
                    }),
                },
            },
            Tok::Unknown(name) => Err(Error::UnknownVariable {
                name: name.clone(),
                line: t.line,
                col: t.col,
            }),
            Tok::LParen => {
                let inner = self.expr()?;
                let close = self.next();
                if close.tok != Tok::RParen {
                    return Err(self.syntax(
                        &close,
                        format!("expected ')', found {}", describe(&close.tok)),
                    ));
                }
                Ok(inner)
            }
            other => Err(self.syntax(&t, format!("unexpected {}", describe(other)))),
        }
    }
}

fn parse_at(
    text: &str,
    field: &CoefficientField,
    nvars: usize,
    gen: GenMode,
    line: usize,
    col: usize,
) -> Result<Polynomial> {
    let tokens = lex(text, line, col)?;
    if tokens.len() == 1 {
        return Err(Error::Syntax {
            line,
            col,
            message: "empty expression".into(),
        });
    }
    Parser {
        tokens,
        pos: 0,
        field,
        nvars,
        gen,
    }
    .parse_all()
}

/// Parses a polynomial in `x1..x{nvars}` over `field`.
pub fn parse_polynomial(text: &str, field: &CoefficientField, nvars: usize) -> Result<Polynomial> {
    parse_at(text, field, nvars, GenMode::FieldGenerator, 1, 1)
}

/// Parses a constant expression (no `x` variables) into a scalar.
pub fn parse_scalar(text: &str, field: &CoefficientField) -> Result<Scalar> {
    Ok(parse_polynomial(text, field, 0)?.constant_term())
}

/// Parses a comma-separated point such as `1, 2` or `t, t+1`.
pub fn parse_point(text: &str, field: &CoefficientField, nvars: usize) -> Result<Vec<Scalar>> {
    let coords = text
        .split(',')
        .map(|c| parse_scalar(c, field))
        .collect::<Result<Vec<_>>>()?;
    if coords.len() != nvars {
        return Err(Error::ArityMismatch {
            expected: nvars,
            found: coords.len(),
        });
    }
    Ok(coords)
}

/// Parses `p=7`, `p=2;mod=t^2+t+1` or `rational`.
pub fn parse_field_descriptor(text: &str) -> Result<CoefficientField> {
    let text = text.trim();
    if matches!(text.to_ascii_lowercase().as_str(), "rational" | "q" | "qq") {
        return Ok(CoefficientField::rational());
    }
    let mut p: Option<u64> = None;
    let mut modulus: Option<&str> = None;
    for part in text.split(';') {
        let (key, value) = part
            .split_once('=')
            .ok_or_else(|| Error::InvalidDescriptor(format!("expected key=value in '{part}'")))?;
        match key.trim() {
            "p" => {
                p = Some(value.trim().parse().map_err(|_| {
                    Error::InvalidDescriptor(format!("bad characteristic '{}'", value.trim()))
                })?)
            }
            "mod" => modulus = Some(value),
            other => {
                return Err(Error::InvalidDescriptor(format!("unknown key '{other}'")));
            }
        }
    }
    let p = p.ok_or_else(|| Error::InvalidDescriptor("missing p=".into()))?;
    let prime = CoefficientField::prime(p)?;
    match modulus {
        None => Ok(prime),
        Some(m) => {
            let poly = parse_at(m, &prime, 1, GenMode::Variable, 1, 1)?;
            let degree = poly.total_degree().unwrap_or(0) as usize;
            let coeffs: Vec<u64> = (0..=degree)
                .map(|k| {
                    poly.coefficient(&[k as u32])
                        .to_residue()
                        .expect("prime field residue")
                })
                .collect();
            CoefficientField::extension(p, &coeffs)
        }
    }
}

/// Parses `frob:p=2,s=2,n=1,a=0` or `madic:N=4,n=2,a=0,0`.
///
/// `field` overrides the coefficient field (its characteristic must match
/// `p`); otherwise Frobenius descriptors use `F_p` and m-adic ones the
/// rationals. `a=` takes all remaining comma-separated values and defaults to
/// the origin.
pub fn parse_truncation_descriptor(
    text: &str,
    field: Option<&CoefficientField>,
) -> Result<TruncationSpec> {
    let text = text.trim();
    let (kind, rest) = text
        .split_once(':')
        .ok_or_else(|| Error::InvalidDescriptor(format!("expected 'frob:' or 'madic:' in '{text}'")))?;
    let mut p = None;
    let mut level = None;
    let mut order = None;
    let mut nvars = None;
    let mut point: Option<Vec<&str>> = None;
    let parts: Vec<&str> = rest.split(',').collect();
    let mut i = 0;
    let number = |v: &str| -> Result<u64> {
        v.trim()
            .parse()
            .map_err(|_| Error::InvalidDescriptor(format!("bad number '{}'", v.trim())))
    };
    while i < parts.len() {
        let (key, value) = parts[i]
            .split_once('=')
            .ok_or_else(|| Error::InvalidDescriptor(format!("expected key=value in '{}'", parts[i])))?;
        match key.trim() {
            "p" => p = Some(number(value)?),
            "s" => level = Some(number(value)?),
            "N" => order = Some(number(value)?),
            "n" => nvars = Some(number(value)? as usize),
            "a" => {
                let mut coords = vec![value];
                coords.extend(parts[i + 1..].iter().copied());
                point = Some(coords);
                break;
            }
            other => return Err(Error::InvalidDescriptor(format!("unknown key '{other}'"))),
        }
        i += 1;
    }
    let nvars = nvars.ok_or_else(|| Error::InvalidDescriptor("missing n=".into()))?;
    let field = match (field, kind.trim(), p) {
        (Some(f), _, Some(p)) if f.characteristic() != p => {
            return Err(Error::InvalidDescriptor(format!(
                "p={p} does not match field {}",
                f.descriptor()
            )))
        }
        (Some(f), _, _) => f.clone(),
        (None, "frob", Some(p)) => CoefficientField::prime(p)?,
        (None, "frob", None) => return Err(Error::InvalidDescriptor("missing p=".into())),
        (None, _, Some(p)) => CoefficientField::prime(p)?,
        (None, _, None) => CoefficientField::rational(),
    };
    let basepoint = match point {
        Some(coords) => parse_point(&coords.join(","), &field, nvars)?,
        None => vec![field.zero_scalar(); nvars],
    };
    match kind.trim() {
        "frob" => {
            let s = level.ok_or_else(|| Error::InvalidDescriptor("missing s=".into()))?;
            TruncationSpec::frobenius(&field, nvars, basepoint, s as u32)
        }
        "madic" => {
            let n = order.ok_or_else(|| Error::InvalidDescriptor("missing N=".into()))?;
            TruncationSpec::madic(&field, nvars, basepoint, n as u32)
        }
        other => Err(Error::InvalidDescriptor(format!("unknown truncation kind '{other}'"))),
    }
}

/// A parsed map file.
#[derive(Clone, Debug, PartialEq)]
pub struct MapDocument {
    pub field: CoefficientField,
    pub nvars: usize,
    pub map: PolyEndo,
    pub basepoint: Option<Vec<Scalar>>,
}

impl MapDocument {
    /// Canonical document text; parses back to an equal document.
    pub fn to_text(&self) -> String {
        let mut out = format!("field: {}\nn: {}\n", self.field.descriptor(), self.nvars);
        if let Some(a) = &self.basepoint {
            let coords: Vec<String> = a.iter().map(|c| c.to_string()).collect();
            out.push_str(&format!("point: {}\n", coords.join(", ")));
        }
        for (i, img) in self.map.images().iter().enumerate() {
            out.push_str(&format!("x{} -> {}\n", i + 1, img));
        }
        out
    }
}

struct Segment<'a> {
    text: &'a str,
    line: usize,
    col: usize,
}

/// Parses a map document. `default_field` is used when the document has no
/// `field:` header.
pub fn parse_map(text: &str, default_field: Option<&CoefficientField>) -> Result<MapDocument> {
    let mut field_header: Option<(String, usize)> = None;
    let mut n_header: Option<(usize, usize)> = None;
    let mut point_header: Option<Segment> = None;
    let mut assignments: Vec<(usize, Segment, usize)> = Vec::new();

    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        if !content.contains("->") {
            if let Some((key, value)) = content.split_once(':') {
                let value_col = key.chars().count() + 2;
                match key.trim().to_ascii_lowercase().as_str() {
                    "field" => field_header = Some((value.trim().to_string(), line)),
                    "n" => {
                        let n = value.trim().parse::<usize>().map_err(|_| Error::Syntax {
                            line,
                            col: value_col,
                            message: format!("bad variable count '{}'", value.trim()),
                        })?;
                        n_header = Some((n, line));
                    }
                    "point" => {
                        point_header = Some(Segment {
                            text: value,
                            line,
                            col: value_col,
                        })
                    }
                    other => {
                        return Err(Error::Syntax {
                            line,
                            col: 1,
                            message: format!("unknown header '{other}'"),
                        })
                    }
                }
                continue;
            }
            return Err(Error::Syntax {
                line,
                col: 1,
                message: "expected 'x<i> -> <expression>' or a header".into(),
            });
        }
        let mut col = 1;
        for piece in content.split([',', ';']) {
            let piece_col = col;
            col += piece.chars().count() + 1;
            if piece.trim().is_empty() {
                continue;
            }
            let Some((lhs, rhs)) = piece.split_once("->") else {
                return Err(Error::Syntax {
                    line,
                    col: piece_col,
                    message: "expected 'x<i> -> <expression>'".into(),
                });
            };
            let lhs_trim = lhs.trim();
            let lhs_col = piece_col + lhs.len() - lhs.trim_start().len();
            let index = lhs_trim
                .strip_prefix('x')
                .and_then(|d| d.parse::<usize>().ok())
                .filter(|&i| i > 0)
                .ok_or_else(|| Error::UnknownVariable {
                    name: lhs_trim.to_string(),
                    line,
                    col: lhs_col,
                })?;
            let rhs_col = piece_col + lhs.chars().count() + 2;
            assignments.push((
                index,
                Segment {
                    text: rhs,
                    line,
                    col: rhs_col,
                },
                lhs_col,
            ));
        }
    }

    let field = match field_header {
        Some((desc, line)) => parse_field_descriptor(&desc).map_err(|e| match e {
            Error::Syntax { col, message, .. } => Error::Syntax { line, col, message },
            other => other,
        })?,
        None => default_field
            .cloned()
            .ok_or_else(|| Error::InvalidDescriptor("no field given (use a 'field:' header or --field)".into()))?,
    };
    let nvars = match n_header {
        Some((n, _)) => n,
        None => assignments.iter().map(|(i, _, _)| *i).max().unwrap_or(0),
    };
    if nvars == 0 {
        return Err(Error::Syntax {
            line: n_header.map_or(1, |(_, l)| l),
            col: 1,
            message: "map has no variables".into(),
        });
    }
    let mut images: Vec<Option<Polynomial>> = vec![None; nvars];
    for (index, seg, lhs_col) in &assignments {
        if *index > nvars {
            return Err(Error::UnknownVariable {
                name: format!("x{index}"),
                line: seg.line,
                col: *lhs_col,
            });
        }
        if images[index - 1].is_some() {
            return Err(Error::Syntax {
                line: seg.line,
                col: *lhs_col,
                message: format!("duplicate assignment for x{index}"),
            });
        }
        images[index - 1] = Some(parse_at(
            seg.text,
            &field,
            nvars,
            GenMode::FieldGenerator,
            seg.line,
            seg.col,
        )?);
    }
    let images = images
        .into_iter()
        .enumerate()
        .map(|(i, img)| {
            img.ok_or_else(|| Error::Syntax {
                line: 1,
                col: 1,
                message: format!("missing assignment for x{}", i + 1),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let basepoint = point_header
        .map(|seg| {
            let coords = seg
                .text
                .split(',')
                .map(|c| {
                    parse_at(c, &field, 0, GenMode::FieldGenerator, seg.line, seg.col)
                        .map(|p| p.constant_term())
                })
                .collect::<Result<Vec<_>>>()?;
            if coords.len() != nvars {
                return Err(Error::ArityMismatch {
                    expected: nvars,
                    found: coords.len(),
                });
            }
            Ok(coords)
        })
        .transpose()?;
    Ok(MapDocument {
        field,
        nvars,
        map: PolyEndo::new(images)?,
        basepoint,
    })
}
