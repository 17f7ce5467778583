//! Tokenizer for MiniC source text.

use crate::diag::Span;

#[derive(Clone, Debug, PartialEq)]
pub enum Tok {
    Ident(String),
    /// Integer literal with its `u`/`l` suffix flags.
    Int {
        value: u64,
        unsigned: bool,
        long: bool,
    },
    Float(f64),
    Char(i64),
    Str(Vec<u8>),
    Punct(&'static str),
    Eof,
}

#[derive(Clone, Debug)]
pub struct Token {
    pub tok: Tok,
    pub span: Span,
}

#[derive(Debug)]
pub struct LexError {
    pub span: Span,
    pub message: String,
}

// Longest first so that maximal munch works with a simple prefix scan.
const PUNCTS: &[&str] = &[
    "...", "<<=", ">>=", "->", "++", "--", "<<", ">>", "<=", ">=", "==", "!=", "&&", "||", "+=",
    "-=", "*=", "/=", "%=", "&=", "|=", "^=", "(", ")", "[", "]", "{", "}", ";", ",", ".", "+",
    "-", "*", "/", "%", "&", "|", "^", "!", "~", "<", ">", "=", "?", ":",
];

pub fn tokenize(src: &str, file: u16) -> Result<Vec<Token>, LexError> {
    Lexer {
        src: src.as_bytes(),
        pos: 0,
        line: 1,
        col: 1,
        file,
    }
    .run()
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
    line: u32,
    col: u32,
    file: u16,
}

impl Lexer<'_> {
    fn peek(&self, k: usize) -> u8 {
        self.src.get(self.pos + k).copied().unwrap_or(0)
    }

    fn bump(&mut self) -> u8 {
        let c = self.peek(0);
        self.pos += 1;
        if c == b'\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        c
    }

    fn span(&self) -> Span {
        Span::new(self.file, self.line, self.col)
    }

    fn err<T>(&self, span: Span, message: impl Into<String>) -> Result<T, LexError> {
        Err(LexError {
            span,
            message: message.into(),
        })
    }

    fn run(mut self) -> Result<Vec<Token>, LexError> {
        let mut out = Vec::new();
        loop {
            self.skip_trivia()?;
            let span = self.span();
            if self.pos >= self.src.len() {
                out.push(Token {
                    tok: Tok::Eof,
                    span,
                });
                return Ok(out);
            }
            let c = self.peek(0);
            let tok = if c.is_ascii_alphabetic() || c == b'_' {
                let start = self.pos;
                while self.peek(0).is_ascii_alphanumeric() || self.peek(0) == b'_' {
                    self.bump();
                }
                Tok::Ident(String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
            } else if c.is_ascii_digit() || (c == b'.' && self.peek(1).is_ascii_digit()) {
                self.number(span)?
            } else if c == b'\'' {
                self.bump();
                let v = self.escaped_char(span, b'\'')?;
                if self.bump() != b'\'' {
                    return self.err(span, "unterminated character literal");
                }
                Tok::Char(v as i8 as i64)
            } else if c == b'"' {
                self.bump();
                let mut bytes = Vec::new();
                loop {
                    match self.peek(0) {
                        b'"' => {
                            self.bump();
                            break;
                        }
                        0 | b'\n' => return self.err(span, "unterminated string literal"),
                        _ => bytes.push(self.escaped_char(span, b'"')?),
                    }
                }
                Tok::Str(bytes)
            } else {
                let rest = &self.src[self.pos..];
                let Some(p) = PUNCTS.iter().find(|p| rest.starts_with(p.as_bytes())) else {
                    return self.err(span, format!("unexpected character `{}`", c as char));
                };
                for _ in 0..p.len() {
                    self.bump();
                }
                Tok::Punct(p)
            };
            out.push(Token { tok, span });
        }
    }

    fn skip_trivia(&mut self) -> Result<(), LexError> {
        loop {
            match (self.peek(0), self.peek(1)) {
                (c, _) if c.is_ascii_whitespace() => {
                    self.bump();
                }
                (b'/', b'/') => {
                    while self.peek(0) != b'\n' && self.pos < self.src.len() {
                        self.bump();
                    }
                }
                (b'/', b'*') => {
                    let span = self.span();
                    self.bump();
                    self.bump();
                    while !(self.peek(0) == b'*' && self.peek(1) == b'/') {
                        if self.pos >= self.src.len() {
                            return self.err(span, "unterminated comment");
                        }
                        self.bump();
                    }
                    self.bump();
                    self.bump();
                }
                // `#include` lines are accepted and ignored; the prelude is
                // always in scope. Any other directive is an error.
                (b'#', _) if self.col == 1 || self.at_line_start() => {
                    let span = self.span();
                    let start = self.pos;
                    while self.peek(0) != b'\n' && self.pos < self.src.len() {
                        self.bump();
                    }
                    let line = String::from_utf8_lossy(&self.src[start..self.pos]);
                    let directive = line[1..].trim_start();
                    if !directive.starts_with("include") {
                        return self.err(
                            span,
                            format!("preprocessor directive `{}` is not supported", line.trim()),
                        );
                    }
                }
                _ => return Ok(()),
            }
        }
    }

    fn at_line_start(&self) -> bool {
        self.src[..self.pos]
            .iter()
            .rev()
            .take_while(|c| **c != b'\n')
            .all(|c| *c == b' ' || *c == b'\t')
    }

    fn escaped_char(&mut self, span: Span, quote: u8) -> Result<u8, LexError> {
        let c = self.bump();
        if c == 0 || c == b'\n' {
            return self.err(span, "unterminated literal");
        }
        if c == quote {
            return self.err(span, "empty character literal");
        }
        if c != b'\\' {
            return Ok(c);
        }
        let e = self.bump();
        Ok(match e {
            b'n' => b'\n',
            b't' => b'\t',
            b'r' => b'\r',
            b'a' => 7,
            b'b' => 8,
            b'f' => 12,
            b'v' => 11,
            b'\\' => b'\\',
            b'\'' => b'\'',
            b'"' => b'"',
            b'?' => b'?',
            b'x' => {
                let mut v: u32 = 0;
                let mut n = 0;
                while self.peek(0).is_ascii_hexdigit() {
                    v = v * 16 + (self.bump() as char).to_digit(16).unwrap_or(0);
                    n += 1;
                }
                if n == 0 {
                    return self.err(span, "\\x escape without digits");
                }
                v as u8
            }
            b'0'..=b'7' => {
                let mut v: u32 = (e - b'0') as u32;
                for _ in 0..2 {
                    if (b'0'..=b'7').contains(&self.peek(0)) {
                        v = v * 8 + (self.bump() - b'0') as u32;
                    }
                }
                v as u8
            }
            other => return self.err(span, format!("unknown escape `\\{}`", other as char)),
        })
    }

    fn number(&mut self, span: Span) -> Result<Tok, LexError> {
        let start = self.pos;
        if self.peek(0) == b'0' && matches!(self.peek(1), b'x' | b'X') {
            self.bump();
            self.bump();
            let digits_start = self.pos;
            while self.peek(0).is_ascii_hexdigit() {
                self.bump();
            }
            let text = std::str::from_utf8(&self.src[digits_start..self.pos]).unwrap_or("");
            let value =
                u64::from_str_radix(text, 16).or_else(|_| self.err(span, "invalid hex literal"))?;
            return self.int_suffix(span, value);
        }
        let mut is_float = false;
        while self.peek(0).is_ascii_digit() {
            self.bump();
        }
        if self.peek(0) == b'.' {
            is_float = true;
            self.bump();
            while self.peek(0).is_ascii_digit() {
                self.bump();
            }
        }
        if matches!(self.peek(0), b'e' | b'E') {
            is_float = true;
            self.bump();
            if matches!(self.peek(0), b'+' | b'-') {
                self.bump();
            }
            while self.peek(0).is_ascii_digit() {
                self.bump();
            }
        }
        let text = std::str::from_utf8(&self.src[start..self.pos])
            .unwrap_or("")
            .to_string();
        if is_float {
            if matches!(self.peek(0), b'f' | b'F' | b'l' | b'L') {
                self.bump();
            }
            let v = text
                .parse::<f64>()
                .or_else(|_| self.err(span, format!("invalid float literal `{text}`")))?;
            return Ok(Tok::Float(v));
        }
        let value = if text.len() > 1 && text.starts_with('0') {
            u64::from_str_radix(&text[1..], 8)
        } else {
            text.parse::<u64>()
        }
        .or_else(|_| self.err(span, format!("invalid integer literal `{text}`")))?;
        self.int_suffix(span, value)
    }

    fn int_suffix(&mut self, span: Span, value: u64) -> Result<Tok, LexError> {
        let (mut unsigned, mut long) = (false, false);
        loop {
            match self.peek(0) {
                b'u' | b'U' if !unsigned => unsigned = true,
                b'l' | b'L' => long = true,
                _ => break,
            }
            self.bump();
        }
        if self.peek(0).is_ascii_alphanumeric() {
            return self.err(span, "invalid suffix on integer literal");
        }
        Ok(Tok::Int {
            value,
            unsigned,
            long,
        })
    }
}
