use std::collections::HashSet;

use num_bigint::BigInt;

use super::ast::Span;
use super::{AlgdefError, ErrorKind};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    LBrace,
    RBrace,
    LBrack,
    RBrack,
    Comma,
    Eq,
    Colon,
    End,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Int(n) => format!("number {n}"),
            Tok::Ident(s) => format!("'{s}'"),
            Tok::End => "end of statement".into(),
            other => format!("'{}'", match other {
                Tok::Plus => "+",
                Tok::Minus => "-",
                Tok::Star => "*",
                Tok::Slash => "/",
                Tok::Caret => "^",
                Tok::LParen => "(",
                Tok::RParen => ")",
                Tok::LBrace => "{",
                Tok::RBrace => "}",
                Tok::LBrack => "[",
                Tok::RBrack => "]",
                Tok::Comma => ",",
                Tok::Eq => "=",
                Tok::Colon => ":",
                _ => unreachable!(),
            }),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Token {
    pub tok: Tok,
    pub span: Span,
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

/// Tokenizes one logical statement. `pieces` are the physical source lines
/// making up the statement, each with its 1-based line number. Identifiers
/// absorb a trailing `+` or `-` when the result is a declared generator name.
pub fn tokenize(pieces: &[(usize, &str)], generators: &HashSet<String>) -> Result<Vec<Token>, AlgdefError> {
    let mut out = Vec::new();
    let mut last = Span::default();
    for &(line, text) in pieces {
        let chars: Vec<char> = text.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let span = Span { line, col: i + 1 };
            last = Span { line, col: chars.len() + 1 };
            if c.is_whitespace() {
                i += 1;
                continue;
            }
            if c.is_ascii_digit() {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                out.push(Token { tok: Tok::Int(digits.parse().expect("digits")), span });
                continue;
            }
            if is_ident_start(c) {
                let start = i;
                while i < chars.len() && is_ident_char(chars[i]) {
                    i += 1;
                }
                let mut name: String = chars[start..i].iter().collect();
                if i < chars.len() && (chars[i] == '+' || chars[i] == '-') {
                    let extended = format!("{name}{}", chars[i]);
                    if generators.contains(&extended) {
                        name = extended;
                        i += 1;
                    }
                }
                out.push(Token { tok: Tok::Ident(name), span });
                continue;
            }
            let tok = match c {
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                '*' => Tok::Star,
                '/' => Tok::Slash,
                '^' => Tok::Caret,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                '{' => Tok::LBrace,
                '}' => Tok::RBrace,
                '[' => Tok::LBrack,
                ']' => Tok::RBrack,
                ',' => Tok::Comma,
                '=' => Tok::Eq,
                ':' => Tok::Colon,
                other => {
                    return Err(AlgdefError::new(ErrorKind::Syntax(format!("unexpected character '{other}'")), span));
                }
            };
            out.push(Token { tok, span });
            i += 1;
        }
    }
    out.push(Token { tok: Tok::End, span: last });
    Ok(out)
}
