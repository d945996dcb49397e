use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use super::{const_node, BinOp, Expr, Func, Node, Var};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TokenKind {
    Number,
    Ident,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
    End,
    /// Placeholder used in `expected` lists: any token that can start an
    /// expression.
    Expression,
}

impl fmt::Display for TokenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            TokenKind::Number => "number",
            TokenKind::Ident => "identifier",
            TokenKind::Plus => "'+'",
            TokenKind::Minus => "'-'",
            TokenKind::Star => "'*'",
            TokenKind::Slash => "'/'",
            TokenKind::Caret => "'^'",
            TokenKind::LParen => "'('",
            TokenKind::RParen => "')'",
            TokenKind::Comma => "','",
            TokenKind::End => "end of input",
            TokenKind::Expression => "expression",
        };
        f.write_str(s)
    }
}

/// Syntax error with the byte offset where it was detected.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("parse error at offset {offset}: {message}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
    pub expected: Vec<TokenKind>,
}

impl ParseError {
    fn new(offset: usize, message: impl Into<String>, expected: Vec<TokenKind>) -> Self {
        ParseError { offset, message: message.into(), expected }
    }

    /// Shifts the offset, for errors in a sub-slice of a larger input.
    pub fn offset_by(mut self, base: usize) -> Self {
        self.offset += base;
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok<'a> {
    Number(f64),
    Ident(&'a str),
    Sym(TokenKind),
}

#[derive(Debug, Clone)]
struct Token<'a> {
    tok: Tok<'a>,
    offset: usize,
}

impl Token<'_> {
    fn kind(&self) -> TokenKind {
        match self.tok {
            Tok::Number(_) => TokenKind::Number,
            Tok::Ident(_) => TokenKind::Ident,
            Tok::Sym(k) => k,
        }
    }
}

fn lex(text: &str) -> Result<Vec<Token<'_>>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let sym = match c {
            b'+' => Some(TokenKind::Plus),
            b'-' => Some(TokenKind::Minus),
            b'*' => Some(TokenKind::Star),
            b'/' => Some(TokenKind::Slash),
            b'^' => Some(TokenKind::Caret),
            b'(' => Some(TokenKind::LParen),
            b')' => Some(TokenKind::RParen),
            b',' => Some(TokenKind::Comma),
            _ => None,
        };
        if let Some(k) = sym {
            out.push(Token { tok: Tok::Sym(k), offset: start });
            i += 1;
        } else if c.is_ascii_digit() || c == b'.' {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            if i < bytes.len() && bytes[i] == b'.' {
                i += 1;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
            }
            if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                let mut j = i + 1;
                if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                    j += 1;
                }
                if j < bytes.len() && bytes[j].is_ascii_digit() {
                    while j < bytes.len() && bytes[j].is_ascii_digit() {
                        j += 1;
                    }
                    i = j;
                } else {
                    return Err(ParseError::new(
                        j.min(text.len()),
                        "malformed exponent in number",
                        vec![TokenKind::Number],
                    ));
                }
            }
            let lit = &text[start..i];
            let value: f64 = lit.parse().map_err(|_| {
                ParseError::new(start, format!("malformed number '{lit}'"), vec![TokenKind::Number])
            })?;
            out.push(Token { tok: Tok::Number(value), offset: start });
            // "2x" is implicit multiplication, which the language rejects.
            if i < bytes.len() && (bytes[i].is_ascii_alphabetic() || bytes[i] == b'_') {
                return Err(ParseError::new(
                    i,
                    "implicit multiplication is not supported; use '*'",
                    vec![TokenKind::Star],
                ));
            }
        } else if c.is_ascii_alphabetic() || c == b'_' {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push(Token { tok: Tok::Ident(&text[start..i]), offset: start });
        } else {
            let ch = text[start..].chars().next().unwrap_or('?');
            return Err(ParseError::new(
                start,
                format!("unexpected character '{ch}'"),
                vec![TokenKind::Expression],
            ));
        }
    }
    out.push(Token { tok: Tok::Sym(TokenKind::End), offset: text.len() });
    Ok(out)
}

struct Parser<'a, 'c> {
    tokens: Vec<Token<'a>>,
    pos: usize,
    constants: &'c HashMap<String, f64>,
}

impl<'a> Parser<'a, '_> {
    fn peek(&self) -> &Token<'a> {
        &self.tokens[self.pos]
    }

    fn bump(&mut self) -> Token<'a> {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, kind: TokenKind) -> Result<Token<'a>, ParseError> {
        let t = self.peek();
        if t.kind() == kind {
            Ok(self.bump())
        } else {
            Err(ParseError::new(
                t.offset,
                format!("expected {kind}, found {}", t.kind()),
                vec![kind],
            ))
        }
    }

    fn expr(&mut self) -> Result<Node, ParseError> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek().kind() {
                TokenKind::Plus => BinOp::Add,
                TokenKind::Minus => BinOp::Sub,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.term()?;
            lhs = Node::Binary(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn term(&mut self) -> Result<Node, ParseError> {
        let mut lhs = self.factor()?;
        loop {
            let op = match self.peek().kind() {
                TokenKind::Star => BinOp::Mul,
                TokenKind::Slash => BinOp::Div,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.factor()?;
            lhs = Node::Binary(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn factor(&mut self) -> Result<Node, ParseError> {
        if self.peek().kind() == TokenKind::Minus {
            self.bump();
            let inner = self.factor()?;
            return Ok(Node::Neg(Box::new(inner)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Node, ParseError> {
        let base = self.atom()?;
        if self.peek().kind() == TokenKind::Caret {
            self.bump();
            let exponent = self.factor()?;
            return Ok(Node::Binary(BinOp::Pow, Box::new(base), Box::new(exponent)));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Node, ParseError> {
        let t = self.bump();
        match t.tok {
            Tok::Number(c) => Ok(Node::Const(c)),
            Tok::Sym(TokenKind::LParen) => {
                let inner = self.expr()?;
                self.expect(TokenKind::RParen)?;
                Ok(inner)
            }
            Tok::Ident(name) => {
                if self.peek().kind() == TokenKind::LParen {
                    let Some(func) = Func::from_name(name) else {
                        return Err(ParseError::new(
                            t.offset,
                            format!("unknown function '{name}'"),
                            vec![TokenKind::Ident],
                        ));
                    };
                    self.bump();
                    let arg = self.expr()?;
                    if self.peek().kind() == TokenKind::Comma {
                        return Err(ParseError::new(
                            self.peek().offset,
                            format!("function '{name}' takes exactly one argument"),
                            vec![TokenKind::RParen],
                        ));
                    }
                    self.expect(TokenKind::RParen)?;
                    return Ok(Node::Call(func, Box::new(arg)));
                }
                if let Some(v) = Var::from_name(name) {
                    return Ok(Node::Var(v));
                }
                if let Some(&c) = self.constants.get(name) {
                    return Ok(const_node(c));
                }
                if name == "pi" {
                    return Ok(Node::Const(std::f64::consts::PI));
                }
                if Func::from_name(name).is_some() {
                    return Err(ParseError::new(
                        self.peek().offset,
                        format!("function '{name}' requires an argument"),
                        vec![TokenKind::LParen],
                    ));
                }
                Err(ParseError::new(
                    t.offset,
                    format!("unknown identifier '{name}'"),
                    vec![TokenKind::Ident],
                ))
            }
            Tok::Sym(kind) => Err(ParseError::new(
                t.offset,
                format!("expected expression, found {kind}"),
                vec![TokenKind::Expression],
            )),
        }
    }
}

/// Parses `text` into an expression tree.
pub fn parse(text: &str) -> Result<Expr, ParseError> {
    parse_with_constants(text, &HashMap::new())
}

/// Parses a comma-separated list of exactly `count` expressions, such as
/// `"1,0,sin(u)^2"`. Commas nested inside parentheses do not split.
pub fn parse_list(
    text: &str,
    count: usize,
    constants: &HashMap<String, f64>,
) -> Result<Vec<Expr>, ParseError> {
    let mut pieces = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in text.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                pieces.push((start, &text[start..i]));
                start = i + 1;
            }
            _ => {}
        }
    }
    pieces.push((start, &text[start..]));
    if pieces.len() != count {
        let offset = if pieces.len() > count { pieces[count].0 - 1 } else { text.len() };
        return Err(ParseError::new(
            offset,
            format!("expected {count} comma-separated expressions, found {}", pieces.len()),
            vec![if pieces.len() > count { TokenKind::End } else { TokenKind::Comma }],
        ));
    }
    pieces
        .into_iter()
        .map(|(base, piece)| parse_with_constants(piece, constants).map_err(|e| e.offset_by(base)))
        .collect()
}

/// Parses `text`, replacing identifiers found in `constants` by their
/// values. Constants may not shadow variable, function or `pi` names.
pub fn parse_with_constants(
    text: &str,
    constants: &HashMap<String, f64>,
) -> Result<Expr, ParseError> {
    for (name, value) in constants {
        if Var::from_name(name).is_some() || Func::from_name(name).is_some() || name == "pi" {
            return Err(ParseError::new(0, format!("constant '{name}' shadows a reserved name"), vec![]));
        }
        if !value.is_finite() {
            return Err(ParseError::new(0, format!("constant '{name}' is not finite"), vec![]));
        }
    }
    let tokens = lex(text)?;
    let mut parser = Parser { tokens, pos: 0, constants };
    let root = parser.expr()?;
    let end = parser.peek();
    if end.kind() != TokenKind::End {
        return Err(ParseError::new(
            end.offset,
            format!("unexpected {} after expression", end.kind()),
            vec![
                TokenKind::Plus,
                TokenKind::Minus,
                TokenKind::Star,
                TokenKind::Slash,
                TokenKind::Caret,
                TokenKind::End,
            ],
        ));
    }
    Ok(Expr { root })
}
