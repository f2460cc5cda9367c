//! Tokens of the session language, with 1-based line/column positions.

use std::fmt;

use num_bigint::BigInt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Word(String),
    Int(BigInt),
    Sym(char),
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Word(w) => write!(f, "{w}"),
            Tok::Int(k) => write!(f, "{k}"),
            Tok::Sym(c) => write!(f, "{c}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub column: usize,
    pub offset: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub tok: Tok,
    pub pos: Pos,
    /// Byte offset one past the token.
    pub end: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LexError {
    pub pos: Pos,
    pub found: String,
}

const SYMBOLS: &str = "()[],;=+-*/^";

pub fn lex(src: &str) -> Result<Vec<Token>, LexError> {
    let mut out = Vec::new();
    let mut line = 1;
    let mut col = 1;
    let mut chars = src.char_indices().peekable();
    while let Some(&(off, c)) = chars.peek() {
        let pos = Pos { line, column: col, offset: off };
        if c == '\n' {
            chars.next();
            line += 1;
            col = 1;
        } else if c.is_whitespace() {
            chars.next();
            col += 1;
        } else if c == '#' {
            while let Some(&(_, c)) = chars.peek() {
                if c == '\n' {
                    break;
                }
                chars.next();
                col += 1;
            }
        } else if c.is_ascii_digit() {
            let mut end = off;
            while let Some(&(o, c)) = chars.peek() {
                if !c.is_ascii_digit() {
                    break;
                }
                end = o + 1;
                chars.next();
                col += 1;
            }
            let k: BigInt = src[off..end].parse().expect("digits");
            out.push(Token { tok: Tok::Int(k), pos, end });
        } else if c.is_ascii_alphabetic() || c == '_' {
            let mut end = off;
            while let Some(&(o, c)) = chars.peek() {
                if !(c.is_ascii_alphanumeric() || c == '_') {
                    break;
                }
                end = o + 1;
                chars.next();
                col += 1;
            }
            out.push(Token { tok: Tok::Word(src[off..end].to_string()), pos, end });
        } else if SYMBOLS.contains(c) {
            chars.next();
            col += 1;
            out.push(Token { tok: Tok::Sym(c), pos, end: off + 1 });
        } else {
            return Err(LexError { pos, found: c.to_string() });
        }
    }
    Ok(out)
}
